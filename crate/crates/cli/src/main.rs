//! Command-line front end: block summaries, support tau-tilting poset
//! enumeration with DOT/JSON output, semibrick listings, and the
//! quotient-reduction verification suite.

use std::process::ExitCode;
use std::sync::Arc;

use tautilt::algebra::{block_decompose, group_algebra};
use tautilt::artifact;
use tautilt::error::Error;
use tautilt::field::{splitting_degree_bound, Field};
use tautilt::group::{parse_group_spec, FiniteGroup, Subgroup};
use tautilt::module::{self, Module};
use tautilt::reduction::{
    asai_semibrick, enumerate_semibricks_bounded, left_finite_flag, verify_central_quotient,
    verify_hypercenter_iteration, verify_principal_block_quotient, VerificationReport,
};
use tautilt::tilting::{brute_force_stt_oracle, enumerate_stt, SttContext};

const USAGE: &str = "\
usage: tautilt <command> [options]

commands:
  blocks <group> --p <prime> [--r <deg>|auto] [--seed N] [--json PATH]
      block decomposition: dimensions, principal flag, local/simple class
  stt <group> --p <prime> [--r <deg>|auto] [--cap N] [--seed N]
      [--json PATH] [--dot PATH]
      enumerate the support tau-tilting poset with Asai semibricks
  semibricks <group> --p <prime> [--r <deg>|auto] [--cap N] [--seed N]
      [--json PATH]
      bounded semibrick enumeration with left-finiteness flags
  verify <mainthm|maincor|genmainthm|reduction-square> <group> --p <prime>
      [--r <deg>|auto] [--N <center-p-part|hypercenter-p-part|list:i,j,..>]
      [--cap N] [--seed N] [--json PATH]
      run the quotient-reduction verification batteries
  paper-examples [--seed N] [--json PATH]
      curated example suite: dihedral blocks, the D12 -> D6 reduction,
      the trivial-center sanity case, and the nilpotent family
  oracle-crosscheck <group> --p <prime> [--r <deg>|auto] [--seed N]
      [--json PATH]
      compare mutation enumeration against the brute-force oracle

group spec language: cyclic:6 | dihedral:6 | sym:4 | q8 |
  prod(sym:3,cyclic:3) | perm:[(1,2,3),(1,2)]

exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap";

struct Opts {
    group: Option<String>,
    p: Option<u64>,
    r: Option<String>,
    n_sel: String,
    cap: usize,
    seed: u64,
    json: Option<String>,
    dot: Option<String>,
}

fn parse_opts(args: &[String], want_group: bool) -> Result<Opts, String> {
    let mut opts = Opts {
        group: None,
        p: None,
        r: None,
        n_sel: "center-p-part".to_string(),
        cap: tautilt::tilting::NODE_CAP,
        seed: 0,
        json: None,
        dot: None,
    };
    let mut i = 0;
    while i < args.len() {
        let a = args[i].clone();
        let take = |i: &mut usize| -> Result<String, String> {
            *i += 1;
            args.get(*i)
                .cloned()
                .ok_or_else(|| format!("missing value after {a}"))
        };
        match args[i].as_str() {
            "--p" => opts.p = Some(take(&mut i)?.parse().map_err(|_| "bad --p".to_string())?),
            "--r" => opts.r = Some(take(&mut i)?),
            "--N" => opts.n_sel = take(&mut i)?,
            "--cap" => opts.cap = take(&mut i)?.parse().map_err(|_| "bad --cap".to_string())?,
            "--seed" => {
                opts.seed = take(&mut i)?
                    .parse()
                    .map_err(|_| "bad --seed".to_string())?
            }
            "--json" => opts.json = Some(take(&mut i)?),
            "--dot" => opts.dot = Some(take(&mut i)?),
            other if !other.starts_with("--") && opts.group.is_none() && want_group => {
                opts.group = Some(other.to_string());
            }
            other => return Err(format!("unrecognized argument {other}")),
        }
        i += 1;
    }
    if want_group && opts.group.is_none() {
        return Err("missing group spec".to_string());
    }
    Ok(opts)
}

fn build_field(opts: &Opts, g: &FiniteGroup) -> Result<Arc<Field>, Error> {
    let p = opts.p.expect("checked by caller");
    let r = match opts.r.as_deref() {
        None | Some("auto") => splitting_degree_bound(p, g.exponent()),
        Some(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad --r {s}")))?,
    };
    Ok(Arc::new(Field::with_default_poly(p, r)?))
}

fn pick_subgroup(g: &FiniteGroup, sel: &str, p: u64) -> Result<Subgroup, Error> {
    match sel {
        "center-p-part" => g.p_part_of_abelian(&g.center(), p),
        "hypercenter-p-part" => {
            let h = g.hypercenter()?;
            g.p_torsion_subgroup(&h, p)
        }
        s if s.starts_with("list:") => {
            let idx: Result<Vec<u32>, _> =
                s[5..].split(',').map(|t| t.trim().parse::<u32>()).collect();
            let idx = idx.map_err(|_| Error::Parse(format!("bad --N {s}")))?;
            Ok(g.generated_subgroup(&idx))
        }
        s => Err(Error::Parse(format!("unknown --N selector {s}"))),
    }
}

fn write_json(path: &Option<String>, value: &serde_json::Value) -> Result<(), Error> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(value).expect("serializes"))
            .map_err(|e| Error::Parse(format!("cannot write {p}: {e}")))?;
        println!("wrote {p}");
    }
    Ok(())
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Parse(_) => ExitCode::from(2),
        Error::ClosureCap { .. }
        | Error::NodeCap { .. }
        | Error::SearchOverflow(_)
        | Error::SplitBudget { .. } => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(cmd) = args.first() else {
        eprintln!("{USAGE}");
        return ExitCode::from(2);
    };
    let rest = &args[1..];
    let run = || -> Result<ExitCode, Error> {
        match cmd.as_str() {
            "blocks" => cmd_blocks(rest),
            "stt" => cmd_stt(rest),
            "semibricks" => cmd_semibricks(rest),
            "verify" => cmd_verify(rest),
            "paper-examples" => cmd_paper_examples(rest),
            "oracle-crosscheck" => cmd_oracle(rest),
            "--help" | "-h" | "help" => {
                println!("{USAGE}");
                Ok(ExitCode::SUCCESS)
            }
            other => Err(Error::Parse(format!("unknown command {other}"))),
        }
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Parse(_)) {
                eprintln!("\n{USAGE}");
            }
            exit_for(&e)
        }
    }
}

fn usage_err(msg: String) -> Error {
    Error::Parse(msg)
}

fn cmd_blocks(args: &[String]) -> Result<ExitCode, Error> {
    let opts = parse_opts(args, true).map_err(usage_err)?;
    if opts.p.is_none() {
        return Err(usage_err("blocks requires --p".into()));
    }
    let g = parse_group_spec(opts.group.as_deref().unwrap())?;
    let field = build_field(&opts, &g)?;
    let alg = group_algebra(&g, field.clone())?;
    let blocks = block_decompose(&alg)?;
    let mut rows = Vec::new();
    println!(
        "kG for |G| = {} over F_{}^{}: {} block(s)",
        g.order,
        field.p(),
        field.r(),
        blocks.len()
    );
    for (i, b) in blocks.iter().enumerate() {
        let principal = alg.augmentation(&b.idempotent) == 1;
        let j = module::radical_subspace(&b.algebra)?;
        let simples = module::simple_modules(&b.algebra)?;
        let class = if j.dim() == 0 {
            "simple"
        } else if simples.len() == 1 {
            "local"
        } else {
            "other"
        };
        println!(
            "  block {i}: dim {}{} [{}]",
            b.algebra.dim,
            if principal { ", principal" } else { "" },
            class
        );
        rows.push(serde_json::json!({
            "index": i,
            "dim": b.algebra.dim,
            "principal": principal,
            "class": class,
            "radical_dim": j.dim(),
            "block": artifact::block_json(b),
        }));
    }
    let desc = format!(
        "blocks {} --p {}",
        opts.group.as_deref().unwrap(),
        field.p()
    );
    let env = artifact::envelope(
        field.spec(),
        opts.seed,
        &desc,
        serde_json::json!({ "blocks": rows }),
    );
    write_json(&opts.json, &env)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_stt(args: &[String]) -> Result<ExitCode, Error> {
    let opts = parse_opts(args, true).map_err(usage_err)?;
    if opts.p.is_none() {
        return Err(usage_err("stt requires --p".into()));
    }
    let g = parse_group_spec(opts.group.as_deref().unwrap())?;
    let field = build_field(&opts, &g)?;
    let alg = group_algebra(&g, field.clone())?;
    let mut ctx = SttContext::new(alg, opts.seed)?;
    let poset = enumerate_stt(&mut ctx, opts.cap)?;
    println!(
        "{} node(s), complete = {}, cap_hit = {}",
        poset.nodes.len(),
        poset.complete,
        poset.cap_hit
    );
    let mut rng = ctx.rng.fork();
    let mut asai_list = Vec::new();
    for (i, n) in poset.nodes.iter().enumerate() {
        let m = ctx.module_of_classes(&n.pair.m_classes);
        let bricks = asai_semibrick(&m, &mut rng)?;
        let bdims: Vec<usize> = bricks.iter().map(|b| b.dim).collect();
        println!(
            "  node {i}: M dims {:?} | P dims {:?} | semibrick dims {:?}",
            n.m_dims, n.p_dims, bdims
        );
        asai_list.push(bdims);
    }
    let mut data = artifact::poset_json(&ctx, &poset);
    data["asai_semibrick_dims"] = serde_json::json!(asai_list);
    let desc = format!("stt {} --p {}", opts.group.as_deref().unwrap(), field.p());
    let env = artifact::envelope(field.spec(), opts.seed, &desc, data);
    write_json(&opts.json, &env)?;
    if let Some(path) = &opts.dot {
        std::fs::write(path, poset.to_dot())
            .map_err(|e| usage_err(format!("cannot write {path}: {e}")))?;
        println!("wrote {path}");
    }
    if poset.cap_hit {
        return Err(Error::NodeCap { cap: opts.cap });
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_semibricks(args: &[String]) -> Result<ExitCode, Error> {
    let opts = parse_opts(args, true).map_err(usage_err)?;
    if opts.p.is_none() {
        return Err(usage_err("semibricks requires --p".into()));
    }
    let g = parse_group_spec(opts.group.as_deref().unwrap())?;
    let field = build_field(&opts, &g)?;
    let alg = group_algebra(&g, field.clone())?;
    let mut ctx = SttContext::new(alg.clone(), opts.seed)?;
    let poset = enumerate_stt(&mut ctx, opts.cap)?;
    let (sbricks, bricks, full_space) = enumerate_semibricks_bounded(&alg)?;
    println!(
        "{} brick(s), {} semibrick(s) in the bounded search (full search space: {full_space})",
        bricks.len(),
        sbricks.len()
    );
    let mut rows = Vec::new();
    for idx in &sbricks {
        let mods: Vec<Module> = idx.iter().map(|&i| bricks[i].clone()).collect();
        let dims: Vec<usize> = mods.iter().map(|m| m.dim).collect();
        let lf = left_finite_flag(&mut ctx, &poset, &mods)?;
        println!("  semibrick dims {dims:?}: left_finite = {lf}");
        rows.push(serde_json::json!({"dims": dims, "left_finite": lf}));
    }
    let desc = format!(
        "semibricks {} --p {}",
        opts.group.as_deref().unwrap(),
        field.p()
    );
    let env = artifact::envelope(
        field.spec(),
        opts.seed,
        &desc,
        serde_json::json!({
            "semibricks": rows,
            "poset_nodes": poset.nodes.len(),
            "full_search_space": full_space,
        }),
    );
    write_json(&opts.json, &env)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &[String]) -> Result<ExitCode, Error> {
    let Some(which) = args.first().cloned() else {
        return Err(usage_err("verify requires a mode".into()));
    };
    let opts = parse_opts(&args[1..], true).map_err(usage_err)?;
    if opts.p.is_none() {
        return Err(usage_err("verify requires --p".into()));
    }
    let g = parse_group_spec(opts.group.as_deref().unwrap())?;
    let field = build_field(&opts, &g)?;
    let p = field.p();
    let report: VerificationReport = match which.as_str() {
        "mainthm" => {
            let n = pick_subgroup(&g, &opts.n_sel, p)?;
            verify_central_quotient(&g, &n, field.clone(), opts.seed, opts.cap)?
        }
        "maincor" => verify_hypercenter_iteration(&g, field.clone(), opts.seed, opts.cap)?,
        "genmainthm" => verify_principal_block_quotient(&g, field.clone(), opts.seed, opts.cap)?,
        "reduction-square" => {
            let n = pick_subgroup(&g, &opts.n_sel, p)?;
            let setup = tautilt::reduction::group_reduction_setup(&g, &n, field.clone())?;
            let started = std::time::Instant::now();
            let mut report = VerificationReport::new(
                format!("reduction square: |G| = {}, |N| = {}", g.order, n.order()),
                field.spec().clone(),
                opts.seed,
            );
            let mut env = tautilt::reduction::ReductionEnv::new(
                setup.algebra.clone(),
                setup.ideal.clone(),
                opts.seed,
            )?;
            tautilt::reduction::verify_reduction_square_into(&mut env, &mut report, "", opts.cap)?;
            report.finalize(started);
            report
        }
        other => return Err(usage_err(format!("unknown verify mode {other}"))),
    };
    for line in report.summary_lines() {
        println!("{line}");
    }
    println!(
        "{}: {} checks in {} ms",
        if report.all_passed() {
            "ALL PASS"
        } else {
            "FAILURES"
        },
        report.checks.len(),
        report.elapsed_ms
    );
    if let Some(path) = &opts.json {
        std::fs::write(path, report.to_json())
            .map_err(|e| usage_err(format!("cannot write {path}: {e}")))?;
        println!("wrote {path}");
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_oracle(args: &[String]) -> Result<ExitCode, Error> {
    let opts = parse_opts(args, true).map_err(usage_err)?;
    if opts.p.is_none() {
        return Err(usage_err("oracle-crosscheck requires --p".into()));
    }
    let g = parse_group_spec(opts.group.as_deref().unwrap())?;
    let field = build_field(&opts, &g)?;
    let alg = group_algebra(&g, field.clone())?;
    let mut ctx = SttContext::new(alg, opts.seed)?;
    let poset = enumerate_stt(&mut ctx, opts.cap)?;
    let oracle = brute_force_stt_oracle(&mut ctx)?;
    let mut enum_pairs: Vec<_> = poset.nodes.iter().map(|n| n.pair.clone()).collect();
    enum_pairs.sort();
    let agree = enum_pairs == oracle;
    println!(
        "enumeration: {} node(s); oracle: {} pair(s); agree = {agree}",
        enum_pairs.len(),
        oracle.len()
    );
    let desc = format!(
        "oracle-crosscheck {} --p {}",
        opts.group.as_deref().unwrap(),
        field.p()
    );
    let env = artifact::envelope(
        field.spec(),
        opts.seed,
        &desc,
        serde_json::json!({"enumerated": enum_pairs.len(), "oracle": oracle.len(), "agree": agree}),
    );
    write_json(&opts.json, &env)?;
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_paper_examples(args: &[String]) -> Result<ExitCode, Error> {
    let opts = parse_opts(args, false).map_err(usage_err)?;
    let seed = opts.seed;
    let mut all_pass = true;
    let mut sections = Vec::new();

    // dihedral family at p = 2: block structure of the order-2n dihedral
    // group algebra for odd n, raising the field degree when the prime
    // field does not split
    for n in [3usize, 5] {
        let g = tautilt::group::dihedral(n)?;
        let field = Arc::new(Field::with_default_poly(2, 1)?);
        let alg = group_algebra(&g, field.clone())?;
        let blocks = match block_decompose(&alg) {
            Ok(b) => b,
            Err(Error::NonSplit { suggested_r, .. }) => {
                let field = Arc::new(Field::with_default_poly(2, suggested_r)?);
                let alg = group_algebra(&g, field)?;
                block_decompose(&alg)?
            }
            Err(e) => return Err(e),
        };
        let dims: Vec<usize> = blocks.iter().map(|b| b.algebra.dim).collect();
        let mut expect = vec![2usize];
        expect.extend(std::iter::repeat_n(4, (n - 1) / 2));
        let mut got = dims.clone();
        got.sort_unstable();
        let ok = got == expect;
        all_pass &= ok;
        println!(
            "{} dihedral n={n} blocks: dims {:?} (expected {:?})",
            if ok { "PASS" } else { "FAIL" },
            dims,
            expect
        );
        sections.push(
            serde_json::json!({"name": format!("dihedral_blocks_n{n}"), "passed": ok, "dims": dims}),
        );
    }

    // the order-12 dihedral group reduces to the order-6 one
    {
        let g = tautilt::group::dihedral(6)?;
        let n = g.center();
        let field = Arc::new(Field::with_default_poly(2, 1)?);
        let report = verify_central_quotient(&g, &n, field, seed, opts.cap)?;
        let ok = report.all_passed();
        all_pass &= ok;
        println!(
            "{} dihedral order 12 -> order 6 central reduction ({} checks)",
            if ok { "PASS" } else { "FAIL" },
            report.checks.len()
        );
        sections.push(
            serde_json::json!({"name": "d12_to_d6", "passed": ok, "checks": report.checks.len()}),
        );
    }

    // trivial-center sanity case: sym:3 = SL2(F2); N = 1, identity map
    {
        let g = tautilt::group::symmetric(3)?;
        let n = g.trivial_subgroup();
        let field = Arc::new(Field::with_default_poly(2, 1)?);
        let report = verify_central_quotient(&g, &n, field, seed, opts.cap)?;
        let ok = report.all_passed();
        all_pass &= ok;
        println!(
            "{} trivial-center sanity (sym:3, N = 1) ({} checks)",
            if ok { "PASS" } else { "FAIL" },
            report.checks.len()
        );
        sections.push(serde_json::json!({"name": "sl2f2_sanity", "passed": ok}));
    }

    // nilpotent family at p = 2: everything reduces to the trivial group,
    // all support tau-tilting modules are projective
    for spec in ["prod(cyclic:2,cyclic:2)", "q8", "cyclic:4"] {
        let g = parse_group_spec(spec)?;
        let field = Arc::new(Field::with_default_poly(2, 1)?);
        let report = verify_hypercenter_iteration(&g, field.clone(), seed, opts.cap)?;
        let mut ok = report.all_passed();
        let alg = group_algebra(&g, field)?;
        let mut ctx = SttContext::new(alg, seed)?;
        let poset = enumerate_stt(&mut ctx, opts.cap)?;
        ok &= poset.nodes.len() == 2;
        for node in &poset.nodes {
            let m = ctx.module_of_classes(&node.pair.m_classes);
            if m.dim > 0 {
                ok &= module::is_projective(&m)?;
            }
        }
        all_pass &= ok;
        println!(
            "{} nilpotent family {spec}: chain to the trivial group, {} nodes, all projective",
            if ok { "PASS" } else { "FAIL" },
            poset.nodes.len()
        );
        sections.push(serde_json::json!({"name": format!("nilpotent_{spec}"), "passed": ok}));
    }

    let env = serde_json::json!({"seed": seed, "sections": sections, "all_passed": all_pass});
    write_json(&opts.json, &env)?;
    println!("{}", if all_pass { "ALL PASS" } else { "FAILURES" });
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
