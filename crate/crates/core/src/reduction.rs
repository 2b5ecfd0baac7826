//! Bricks, semibricks, the Asai quotient map, ideal-reduction contexts, and
//! the machine-checked verification battery for the quotient-reduction
//! statements: poset bijections M -> M/IM, semibrick lifting, commuting
//! squares, blockwise correspondences, and the group-theoretic chains.

use crate::algebra::{
    self, block_decompose, group_algebra, group_algebra_surjection, quotient_kernel_ideal,
    reduction_ideal_check, Algebra, AlgebraSurjection, Block, Ideal,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::group::{FiniteGroup, QuotientMap, Subgroup};
use crate::linalg::{Mat, Subspace};
use crate::module::{
    self, decompose, endomorphism_algebra, ext1, fac_membership, hom_space, inflate_module,
    min_proj_presentation, radical_subspace, reduce_module, Module,
};
use crate::rng::Rng;
use crate::tilting::{enumerate_stt, stt_geq, SttContext, SttPair, SttPoset};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

// ---------------------------------------------------------------------------
// bricks and semibricks

/// End(S) is 1-dimensional.
pub fn is_brick(s: &Module) -> Result<bool> {
    module::splitting_check(&s.algebra)?;
    if s.dim == 0 {
        return Ok(false);
    }
    Ok(module::hom_dim(s, s) == 1)
}

/// Pairwise Hom-orthogonal bricks.
pub fn is_semibrick(mods: &[Module]) -> Result<bool> {
    for (i, a) in mods.iter().enumerate() {
        if !is_brick(a)? {
            return Ok(false);
        }
        for (j, b) in mods.iter().enumerate() {
            if i != j && module::hom_dim(a, b) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Asai quotient: M / sum of images of radical endomorphisms. The
/// output is certified to be a semibrick.
pub fn asai_semibrick(m: &Module, rng: &mut Rng) -> Result<Vec<Module>> {
    if m.dim == 0 {
        return Ok(vec![]);
    }
    let f = &m.algebra.field;
    let homs = hom_space(m, m);
    let e_alg = endomorphism_algebra(m, &homs)?;
    let je = radical_subspace(&e_alg)?;
    // sum of images of a basis of J(End M)
    let mut rows = Vec::new();
    for i in 0..je.dim() {
        let coords = je.basis.row(i);
        let mut fm = Mat::zero(m.dim, m.dim);
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                fm = fm.add(f, &homs[k].scale(f, c));
            }
        }
        for c in 0..m.dim {
            rows.push(fm.col(c));
        }
    }
    let trace = Subspace::from_vectors(f, &rows, m.dim);
    let (quot, _) = m.quotient(&trace)?;
    if quot.dim == 0 {
        return Ok(vec![]);
    }
    let dec = decompose(&quot, rng)?;
    let mut bricks = Vec::new();
    for (summand, mult) in dec.summands {
        if mult != 1 {
            return Err(Error::Invariant(
                "Asai quotient has a repeated summand".into(),
            ));
        }
        bricks.push(summand);
    }
    if !is_semibrick(&bricks)? {
        return Err(Error::Invariant("Asai quotient is not a semibrick".into()));
    }
    Ok(bricks)
}

/// Multiset comparison of two semibricks by iso classes.
pub fn semibricks_isomorphic(a: &[Module], b: &[Module]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for s in a {
        let mut matched = false;
        for (j, t) in b.iter().enumerate() {
            if !used[j] && s.dim == t.dim && module::indec_isomorphic(s, t)?.is_some() {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounded exhaustive brick search: quotients of the sum of the PIMs (one
/// copy each) when that lattice is tractable, otherwise quotients of each
/// single PIM. Returns (bricks up to iso, search space was the full sum).
pub fn enumerate_bricks_bounded(alg: &Arc<Algebra>) -> Result<(Vec<Module>, bool)> {
    module::splitting_check(alg)?;
    let pims = module::pims(alg)?;
    let refs: Vec<&Module> = pims.iter().collect();
    let total = Module::direct_sum(&refs);
    let q = alg.field.q() as u64;
    let full_possible = q
        .checked_pow(total.dim as u32)
        .is_some_and(|t| t <= 1 << 20);
    let spaces: Vec<Module> = if full_possible {
        vec![total]
    } else {
        pims.clone()
    };
    let mut bricks: Vec<Module> = Vec::new();
    for space in &spaces {
        for sub in crate::tilting::all_submodules(space)? {
            let (quot, _) = space.quotient(&sub)?;
            if quot.dim == 0 || module::hom_dim(&quot, &quot) != 1 {
                continue;
            }
            let mut fresh = true;
            for known in &bricks {
                if known.dim == quot.dim && module::indec_isomorphic(known, &quot)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                bricks.push(quot);
            }
        }
    }
    bricks.sort_by_key(|b| (b.dim, b.content_hash()));
    Ok((bricks, full_possible))
}

/// All semibricks over the bounded brick set: Hom-orthogonal subsets,
/// including the empty one.
pub fn enumerate_semibricks_bounded(
    alg: &Arc<Algebra>,
) -> Result<(Vec<Vec<usize>>, Vec<Module>, bool)> {
    let (bricks, full) = enumerate_bricks_bounded(alg)?;
    let n = bricks.len();
    if n > 20 {
        return Err(Error::SearchOverflow(format!(
            "{n} bricks is too many to power-set"
        )));
    }
    // orthogonality table
    let mut orth = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            orth[i][j] = i == j || module::hom_dim(&bricks[i], &bricks[j]) == 0;
        }
    }
    let mut out = Vec::new();
    'subsets: for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if !orth[i][j] || !orth[j][i] {
                    continue 'subsets;
                }
            }
        }
        out.push(idx);
    }
    Ok((out, bricks, full))
}

// ---------------------------------------------------------------------------
// verification report

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub context: String,
    pub field: FieldSpec,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(context: String, field: FieldSpec, seed: u64) -> Self {
        VerificationReport {
            context,
            field,
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Record a result, turning errors into failed checks instead of
    /// aborting the remaining checks.
    pub fn record(&mut self, name: &str, res: Result<(bool, String)>) -> Option<()> {
        match res {
            Ok((passed, detail)) => {
                self.add(name, passed, detail);
                if passed {
                    Some(())
                } else {
                    None
                }
            }
            Err(e) => {
                self.add(name, false, format!("error: {e}"));
                None
            }
        }
    }

    pub fn finalize(&mut self, started: Instant) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.elapsed_ms = started.elapsed().as_millis();
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// reduction environments

/// A certified reduction datum: I inside (Z(A) cap J(A)) A with the
/// quotient algebra and enumeration contexts on both sides.
pub struct ReductionEnv {
    pub src: SttContext,
    pub dst: SttContext,
    pub ideal: Ideal,
    pub surj: AlgebraSurjection,
    pub witness_generators: Option<Vec<Vec<u32>>>,
}

impl ReductionEnv {
    pub fn new(algebra: Arc<Algebra>, ideal: Ideal, seed: u64) -> Result<ReductionEnv> {
        let witness = reduction_ideal_check(&algebra, &ideal)?;
        if !witness.contained {
            return Err(Error::Invariant(
                "ideal is not inside (Z cap J) * A; reduction does not apply".into(),
            ));
        }
        let (quot, surj) = algebra::quotient_algebra(&algebra, &ideal)?;
        let src = SttContext::new(algebra, seed)?;
        let dst = SttContext::new(quot, seed ^ 0x517)?;
        Ok(ReductionEnv {
            src,
            dst,
            ideal,
            surj,
            witness_generators: witness.generators,
        })
    }

    /// Reduce a validated pair: (M/IM, P/IP), revalidated over the quotient.
    pub fn reduce_pair(&mut self, pair: &SttPair) -> Result<SttPair> {
        let m = self.src.module_of_classes(&pair.m_classes);
        let p = self.src.module_of_pims(&pair.p_slots);
        let (mr, _) = reduce_module(&m, &self.ideal, &self.dst.algebra, &self.surj)?;
        let (pr, _) = reduce_module(&p, &self.ideal, &self.dst.algebra, &self.surj)?;
        let (reduced, _) = crate::tilting::validate_pair(&mut self.dst, &mr, &pr)?;
        Ok(reduced)
    }

    /// The reduced minimal presentation of M must be the minimal
    /// presentation of M/IM (slot multisets agree).
    pub fn presentation_preserved(&mut self, pair: &SttPair) -> Result<bool> {
        let m = self.src.module_of_classes(&pair.m_classes);
        let pres = min_proj_presentation(&m)?;
        let (mr, _) = reduce_module(&m, &self.ideal, &self.dst.algebra, &self.surj)?;
        let pres_r = min_proj_presentation(&mr)?;
        // PIMs correspond 1-1 under reduction (same simples); compare slot
        // multisets after matching reduced PIMs to quotient PIMs
        let mut src_pim_to_dst = Vec::new();
        for pim in self.src.pims.clone() {
            let (red, _) = reduce_module(&pim, &self.ideal, &self.dst.algebra, &self.surj)?;
            let mut found = None;
            for (j, qp) in self.dst.pims.iter().enumerate() {
                if red.dim == qp.dim && module::indec_isomorphic(&red, qp)?.is_some() {
                    found = Some(j);
                    break;
                }
            }
            src_pim_to_dst.push(
                found.ok_or_else(|| Error::Invariant("PIM does not reduce to a PIM".into()))?,
            );
        }
        let map_slots = |slots: &[usize]| -> Vec<usize> {
            let mut v: Vec<usize> = slots.iter().map(|&s| src_pim_to_dst[s]).collect();
            v.sort_unstable();
            v
        };
        let (p1_src, p0_src) = (map_slots(&pres.p1.slots), map_slots(&pres.p0.slots));
        let mut p1_dst = pres_r.p1.slots.clone();
        p1_dst.sort_unstable();
        let mut p0_dst = pres_r.p0.slots.clone();
        p0_dst.sort_unstable();
        Ok(p1_src == p1_dst && p0_src == p0_dst)
    }

    /// Inflate a semibrick over the quotient and recertify it over the
    /// source.
    pub fn lift_semibrick(&mut self, bricks: &[Module]) -> Result<Vec<Module>> {
        let lifted: Result<Vec<Module>> = bricks
            .iter()
            .map(|b| inflate_module(b, &self.src.algebra, &self.surj))
            .collect();
        let lifted = lifted?;
        if !is_semibrick(&lifted)? {
            return Err(Error::Invariant("lift is not a semibrick".into()));
        }
        Ok(lifted)
    }
}

/// Whether a semibrick appears (up to iso) among the Asai images of a
/// complete poset; identifies left-finiteness operationally.
pub fn left_finite_flag(ctx: &mut SttContext, poset: &SttPoset, bricks: &[Module]) -> Result<bool> {
    if !poset.complete {
        return Err(Error::IncompletePoset("left_finite_flag"));
    }
    let mut rng = ctx.rng.fork();
    for node in &poset.nodes {
        let m = ctx.module_of_classes(&node.pair.m_classes);
        let img = asai_semibrick(&m, &mut rng)?;
        if semibricks_isomorphic(&img, bricks)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// the reduction-square verification

/// Verify, for a certified reduction env: node bijection via M -> M/IM,
/// order isomorphism, semibrick lifting, commuting Asai squares, and the
/// proof-mirror invariants. Appends into `report` under the given name
/// prefix so blockwise runs can share one report.
pub fn verify_reduction_square_into(
    env: &mut ReductionEnv,
    report: &mut VerificationReport,
    prefix: &str,
    cap: usize,
) -> Result<()> {
    let src_poset = enumerate_stt(&mut env.src, cap)?;
    let dst_poset = enumerate_stt(&mut env.dst, cap)?;
    report.add(
        &format!("{prefix}enumeration_complete"),
        src_poset.complete && dst_poset.complete,
        format!(
            "source nodes = {}, quotient nodes = {}",
            src_poset.nodes.len(),
            dst_poset.nodes.len()
        ),
    );
    if !(src_poset.complete && dst_poset.complete) {
        return Ok(());
    }

    // node bijection via reduction
    let mut mapped: Vec<usize> = Vec::new();
    let mut ok_bijection = true;
    let mut detail = String::new();
    for node in &src_poset.nodes {
        match env.reduce_pair(&node.pair) {
            Ok(red) => match dst_poset.node_index(&red) {
                Some(i) => mapped.push(i),
                None => {
                    ok_bijection = false;
                    detail = format!("reduced pair {red:?} missing from quotient poset");
                    break;
                }
            },
            Err(e) => {
                ok_bijection = false;
                detail = format!("reduction failed: {e}");
                break;
            }
        }
    }
    if ok_bijection {
        let distinct: BTreeSet<usize> = mapped.iter().copied().collect();
        ok_bijection =
            distinct.len() == src_poset.nodes.len() && distinct.len() == dst_poset.nodes.len();
        if !ok_bijection {
            detail = format!(
                "map hits {} of {} quotient nodes from {} source nodes",
                distinct.len(),
                dst_poset.nodes.len(),
                src_poset.nodes.len()
            );
        } else {
            detail = format!("bijection on {} nodes", mapped.len());
        }
    }
    report.add(&format!("{prefix}poset_bijection"), ok_bijection, detail);
    if !ok_bijection {
        return Ok(());
    }

    // order isomorphism on all pairs of nodes
    let mut ok_order = true;
    'order: for (i, a) in src_poset.nodes.iter().enumerate() {
        for (j, b) in src_poset.nodes.iter().enumerate() {
            let lhs = stt_geq(&env.src, &a.pair, &b.pair);
            let rhs = stt_geq(
                &env.dst,
                &dst_poset.nodes[mapped[i]].pair,
                &dst_poset.nodes[mapped[j]].pair,
            );
            if lhs != rhs {
                ok_order = false;
                report.add(
                    &format!("{prefix}order_isomorphism"),
                    false,
                    format!("order disagrees between source nodes {i}, {j}"),
                );
                break 'order;
            }
        }
    }
    if ok_order {
        report.add(
            &format!("{prefix}order_isomorphism"),
            true,
            format!(
                "stt_geq agrees on all {} node pairs",
                src_poset.nodes.len() * src_poset.nodes.len()
            ),
        );
    }

    // minimal presentations are preserved
    let mut ok_pres = true;
    for node in &src_poset.nodes {
        if !env.presentation_preserved(&node.pair)? {
            ok_pres = false;
            break;
        }
    }
    report.add(
        &format!("{prefix}presentations_preserved"),
        ok_pres,
        "reduced minimal presentations remain minimal presentations",
    );

    // commuting Asai squares + semibrick lift per node
    let mut ok_square = true;
    let mut square_detail = String::from("all squares commute");
    for (i, node) in src_poset.nodes.iter().enumerate() {
        let m_src = env.src.module_of_classes(&node.pair.m_classes);
        let mut rng_a = env.src.rng.fork();
        let top_path = asai_semibrick(&m_src, &mut rng_a)?;
        let m_dst = env
            .dst
            .module_of_classes(&dst_poset.nodes[mapped[i]].pair.m_classes);
        let mut rng_b = env.dst.rng.fork();
        let bottom = asai_semibrick(&m_dst, &mut rng_b)?;
        let lifted = env.lift_semibrick(&bottom)?;
        if !semibricks_isomorphic(&top_path, &lifted)? {
            ok_square = false;
            square_detail = format!("Asai square fails at source node {i}");
            break;
        }
    }
    report.add(&format!("{prefix}asai_squares"), ok_square, square_detail);

    // proof-mirror invariants per node
    let mut ok_mirror = true;
    let mut mirror_detail = String::from("IM in Fac M; IM inside radical trace; phi onto with nilpotent kernel; Ext1(M, Fac M) = 0 on samples");
    for node in &src_poset.nodes {
        let m = env.src.module_of_classes(&node.pair.m_classes);
        if m.dim == 0 {
            continue;
        }
        if let Err(e) = proof_mirror_checks(env, &m) {
            ok_mirror = false;
            mirror_detail = format!("{e}");
            break;
        }
    }
    report.add(&format!("{prefix}proof_mirror"), ok_mirror, mirror_detail);
    Ok(())
}

/// The inequalities used inside the reduction proof, checked exactly:
/// IM lies in Fac M and inside the radical trace; End(M) -> End(M/IM) is
/// onto with nilpotent kernel; Ext^1(M, X) = 0 for sampled X in Fac M.
fn proof_mirror_checks(env: &mut ReductionEnv, m: &Module) -> Result<()> {
    let f = &env.src.algebra.field.clone();
    // IM as a subspace and as a module
    let mut rows = Vec::new();
    for i in 0..env.ideal.space.dim() {
        let am = m.act_mat(env.ideal.space.basis.row(i));
        for c in 0..m.dim {
            rows.push(am.col(c));
        }
    }
    let im_space = Subspace::from_vectors(f, &rows, m.dim);
    let im_mod = m.submodule(&im_space)?;
    if im_mod.dim > 0 && !fac_membership(&im_mod, m) {
        return Err(Error::Invariant("IM is not in Fac M".into()));
    }
    // IM inside the sum of images of radical endomorphisms
    let homs = hom_space(m, m);
    let e_alg = endomorphism_algebra(m, &homs)?;
    let je = radical_subspace(&e_alg)?;
    let mut trace_rows = Vec::new();
    for i in 0..je.dim() {
        let coords = je.basis.row(i);
        let mut fm = Mat::zero(m.dim, m.dim);
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                fm = fm.add(f, &homs[k].scale(f, c));
            }
        }
        for c in 0..m.dim {
            trace_rows.push(fm.col(c));
        }
    }
    let rad_trace = Subspace::from_vectors(f, &trace_rows, m.dim);
    if !rad_trace.contains(f, &im_space) {
        return Err(Error::Invariant(
            "IM is not inside the radical trace".into(),
        ));
    }
    // phi: End(M) -> End(M/IM) surjective with nilpotent kernel
    let (mbar, proj) = reduce_module(m, &env.ideal, &env.dst.algebra, &env.surj)?;
    let free = im_space.free_cols();
    let mut sect = Mat::zero(m.dim, mbar.dim);
    for (qi, &fc) in free.iter().enumerate() {
        sect.set(fc, qi, 1);
    }
    let end_bar = hom_space(&mbar, &mbar);
    let mut image_rows = Vec::new();
    for h in &homs {
        let phi_h = proj.mul(f, h).mul(f, &sect);
        image_rows.push(phi_h.data.clone());
    }
    let image_span = Subspace::from_vectors(f, &image_rows, mbar.dim * mbar.dim);
    let end_bar_span = Subspace::from_vectors(
        f,
        &end_bar.iter().map(|h| h.data.clone()).collect::<Vec<_>>(),
        mbar.dim * mbar.dim,
    );
    if image_span != end_bar_span {
        return Err(Error::Invariant(
            "End(M) -> End(M/IM) is not surjective".into(),
        ));
    }
    // kernel of phi: endomorphisms with image inside IM, to be shown
    // nilpotent
    let mut ker_homs = Vec::new();
    for h in &homs {
        let mut inside = true;
        for c in 0..m.dim {
            if !im_space.contains_vec(f, &h.col(c)) {
                inside = false;
                break;
            }
        }
        if inside {
            ker_homs.push(h.clone());
        }
    }
    // nilpotency of the kernel ideal: matrix products chain to zero
    let mut span: Vec<Mat> = ker_homs;
    let mut steps = 0usize;
    while !span.is_empty() {
        if steps > homs.len() + 1 {
            return Err(Error::Invariant("phi kernel is not nilpotent".into()));
        }
        let mut next_rows = Vec::new();
        for a in &span {
            for b in &span {
                let prod = a.mul(f, b);
                if !prod.is_zero() {
                    next_rows.push(prod.data.clone());
                }
            }
        }
        let next_span = Subspace::from_vectors(f, &next_rows, m.dim * m.dim);
        span = (0..next_span.dim())
            .map(|i| Mat {
                rows: m.dim,
                cols: m.dim,
                data: next_span.basis.row(i).to_vec(),
            })
            .collect();
        steps += 1;
    }
    // Ext^1(M, X) = 0 for sampled X in Fac M: X = M, top(M), and random
    // quotients of M + M
    let mut samples: Vec<Module> = vec![m.clone()];
    let (t, _) = m.top()?;
    if t.dim > 0 {
        samples.push(t);
    }
    let double = Module::direct_sum(&[m, m]);
    let mut rng = env.src.rng.fork();
    for _ in 0..2 {
        let v: Vec<u32> = (0..double.dim).map(|_| f.random(&mut rng)).collect();
        let sub = double.spin(&[v]);
        if sub.dim() == double.dim {
            continue;
        }
        let (x, _) = double.quotient(&sub)?;
        if x.dim > 0 && fac_membership(&x, m) {
            samples.push(x);
        }
    }
    for x in &samples {
        let (d, _) = ext1(m, x)?;
        if d != 0 {
            return Err(Error::Invariant(format!(
                "Ext1(M, X) = {d} != 0 for X in Fac M (dim X = {})",
                x.dim
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// block-level reduction

/// Blockwise data for a certified reduction: matched blocks with the
/// restricted surjections.
pub struct BlockReduction {
    pub src_blocks: Vec<Block>,
    pub dst_blocks: Vec<Block>,
    pub pairs: Vec<(usize, usize)>,
}

pub fn block_reduction(
    alg: &Arc<Algebra>,
    surj: &AlgebraSurjection,
    quot: &Arc<Algebra>,
) -> Result<BlockReduction> {
    let pairs = algebra::block_correspondence(alg, surj, quot)?;
    Ok(BlockReduction {
        src_blocks: block_decompose(alg)?,
        dst_blocks: block_decompose(quot)?,
        pairs,
    })
}

/// Restrict the surjection to corresponding blocks as a standalone algebra
/// surjection B -> B'.
pub fn restrict_surjection_to_block(
    alg: &Arc<Algebra>,
    surj: &AlgebraSurjection,
    b: &Block,
    b2: &Block,
) -> Result<AlgebraSurjection> {
    let f = &alg.field;
    let mut m = Mat::zero(b2.algebra.dim, b.algebra.dim);
    for j in 0..b.algebra.dim {
        let parent = b.embed.basis.row(j);
        let img = surj.apply(f, parent);
        let coords = b2
            .project(f, &img)
            .ok_or_else(|| Error::Invariant("block image escapes its partner block".into()))?;
        for (r, &c) in coords.iter().enumerate() {
            m.set(r, j, c);
        }
    }
    AlgebraSurjection::new(&b.algebra, &b2.algebra, m)
}

/// Blockwise verification: block bijection, principal-to-principal, poset
/// isomorphism and Asai squares per block, and the product structure of the
/// full poset.
pub fn verify_block_reduction_into(
    alg: &Arc<Algebra>,
    surj: &AlgebraSurjection,
    quot: &Arc<Algebra>,
    report: &mut VerificationReport,
    prefix: &str,
    seed: u64,
    cap: usize,
) -> Result<()> {
    let br = block_reduction(alg, surj, quot)?;
    report.add(
        &format!("{prefix}block_bijection"),
        true,
        format!(
            "{} blocks correspond one to one (dims {:?} -> {:?})",
            br.pairs.len(),
            br.src_blocks
                .iter()
                .map(|b| b.algebra.dim)
                .collect::<Vec<_>>(),
            br.dst_blocks
                .iter()
                .map(|b| b.algebra.dim)
                .collect::<Vec<_>>()
        ),
    );
    // principal maps to principal when both sides are group algebras
    if alg.tag == algebra::AlgebraTag::GroupAlgebra && quot.tag == algebra::AlgebraTag::GroupAlgebra
    {
        let mut ok = false;
        let mut detail = String::from("no principal block found");
        for (i, j) in &br.pairs {
            let src_principal = alg.augmentation(&br.src_blocks[*i].idempotent) == 1;
            let dst_principal = quot.augmentation(&br.dst_blocks[*j].idempotent) == 1;
            if src_principal {
                ok = dst_principal;
                detail = format!("principal block {i} maps to quotient block {j}");
                if !dst_principal {
                    detail = format!("principal block {i} maps to a non-principal block {j}");
                }
                break;
            }
        }
        report.add(&format!("{prefix}principal_to_principal"), ok, detail);
    }
    // per-block reduction squares
    let mut product_src = 1usize;
    let mut product_dst = 1usize;
    for (i, j) in &br.pairs {
        let b = &br.src_blocks[*i];
        let b2 = &br.dst_blocks[*j];
        let bsurj = restrict_surjection_to_block(alg, surj, b, b2)?;
        let ideal = Ideal::new(&b.algebra, bsurj.kernel.space.clone())?;
        let mut env = ReductionEnv::new(b.algebra.clone(), ideal, seed ^ ((*i as u64) << 8))?;
        let sub_prefix = format!("{prefix}block{i}_");
        verify_reduction_square_into(&mut env, report, &sub_prefix, cap)?;
        let sp = enumerate_stt(&mut env.src, cap)?;
        let dp = enumerate_stt(&mut env.dst, cap)?;
        product_src *= sp.nodes.len();
        product_dst *= dp.nodes.len();
    }
    // product structure cross-check
    let mut full_src = SttContext::new(alg.clone(), seed ^ 0xb10c)?;
    let full_poset = enumerate_stt(&mut full_src, cap)?;
    report.add(
        &format!("{prefix}product_structure"),
        full_poset.complete && full_poset.nodes.len() == product_src && product_src == product_dst,
        format!(
            "|stt(A)| = {}, product over blocks = {} (quotient product = {})",
            full_poset.nodes.len(),
            product_src,
            product_dst
        ),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// group-level reductions

pub struct GroupReductionSetup {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    pub quotient_group: FiniteGroup,
    pub qmap: QuotientMap,
    pub algebra: Arc<Algebra>,
    pub quotient_algebra: Arc<Algebra>,
    pub surj: AlgebraSurjection,
    pub ideal: Ideal,
}

/// Build kG -> k(G/N) with the kernel ideal, checking |G| - |G/N|.
pub fn group_reduction_setup(
    g: &FiniteGroup,
    n: &Subgroup,
    field: Arc<Field>,
) -> Result<GroupReductionSetup> {
    let (qg, qmap) = g.quotient_group(n)?;
    let alg = group_algebra(g, field.clone())?;
    let qalg = group_algebra(&qg, field)?;
    let surj = group_algebra_surjection(g, &qmap, &alg, &qalg)?;
    let ideal = quotient_kernel_ideal(g, n, &alg)?;
    if ideal.space != surj.kernel.space {
        return Err(Error::Invariant(
            "kernel of the surjection differs from {1-n} kG".into(),
        ));
    }
    Ok(GroupReductionSetup {
        group: g.clone(),
        subgroup: n.clone(),
        quotient_group: qg,
        qmap,
        algebra: alg,
        quotient_algebra: qalg,
        surj,
        ideal,
    })
}

/// The central quotient reduction: for a p-subgroup N of Z(G), the poset of
/// support tau-tilting modules over kG matches k(G/N) via M -> M/J(kN)M,
/// with semibrick lifting, commuting squares, and blockwise statements.
pub fn verify_central_quotient(
    g: &FiniteGroup,
    n: &Subgroup,
    field: Arc<Field>,
    seed: u64,
    cap: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        format!(
            "central quotient reduction: |G| = {}, |N| = {}",
            g.order,
            n.order()
        ),
        field.spec().clone(),
        seed,
    );
    // hypotheses
    let center = g.center();
    let central = n.elements.iter().all(|&x| center.contains(x));
    report.add(
        "00_N_central",
        central,
        format!("|Z(G)| = {}", center.order()),
    );
    let p = field.p();
    let mut o = n.order() as u64;
    while o % p == 0 {
        o /= p;
    }
    report.add(
        "01_N_is_p_group",
        o == 1,
        format!("|N| = {}, p = {p}", n.order()),
    );
    if !central || o != 1 {
        report.finalize(started);
        return Ok(report);
    }
    let setup = group_reduction_setup(g, n, field.clone())?;
    // kernel dimension law
    let expected = g.order - g.order / n.order();
    report.add(
        "02_kernel_dim_law",
        setup.ideal.dim() == expected,
        format!("dim Ker = {}, |G| - |G/N| = {expected}", setup.ideal.dim()),
    );
    // Ker = J(kN) kG: {1-n} spans the radical of kN and the products span
    // the kernel (already identified in the setup); also J(kN) sits inside
    // Z(kG) cap J(kG)
    let zj_ok = {
        let (_, z_space) = algebra::center_of(&setup.algebra)?;
        let j_space = radical_subspace(&setup.algebra)?;
        let f = &setup.algebra.field;
        let mut ok = true;
        for &x in &n.elements {
            if x == g.identity {
                continue;
            }
            let mut v = vec![0u32; g.order];
            v[g.identity as usize] = 1;
            v[x as usize] = f.sub(v[x as usize], 1);
            if !z_space.contains_vec(f, &v) || !j_space.contains_vec(f, &v) {
                ok = false;
                break;
            }
        }
        ok
    };
    report.add(
        "03_radical_kN_central_nilpotent",
        zj_ok,
        "basis {1-n} of J(kN) lies in Z(kG) cap J(kG)",
    );
    let env_check = reduction_ideal_check(&setup.algebra, &setup.ideal)?;
    report.add(
        "04_reduction_ideal_certified",
        env_check.contained && env_check.generators.is_some(),
        format!(
            "I inside (Z cap J) kG with {} central generators",
            env_check.generators.as_ref().map_or(0, |g| g.len())
        ),
    );
    // the reduction square at the algebra level
    let mut env = ReductionEnv::new(setup.algebra.clone(), setup.ideal.clone(), seed)?;
    verify_reduction_square_into(&mut env, &mut report, "10_", cap)?;
    // semibrick lift bijection through the bounded brick search
    let brick_res = (|| -> Result<(bool, String)> {
        let (src_bricks, src_full) = enumerate_bricks_bounded(&setup.algebra)?;
        let (dst_bricks, dst_full) = enumerate_bricks_bounded(&setup.quotient_algebra)?;
        // every source brick is annihilated by I
        let f = &setup.algebra.field;
        for s in &src_bricks {
            for i in 0..setup.ideal.space.dim() {
                let am = s.act_mat(setup.ideal.space.basis.row(i));
                if !am.is_zero() {
                    return Ok((false, "a brick is not annihilated by I".into()));
                }
            }
        }
        let _ = f;
        // inflation of quotient bricks gives bricks; counts match
        let mut lifted = Vec::new();
        for b in &dst_bricks {
            let l = inflate_module(b, &setup.algebra, &setup.surj)?;
            if !is_brick(&l)? {
                return Ok((false, "an inflated brick is not a brick".into()));
            }
            lifted.push(l);
        }
        let mut matched = 0usize;
        for l in &lifted {
            for s in &src_bricks {
                if l.dim == s.dim && module::indec_isomorphic(l, s)?.is_some() {
                    matched += 1;
                    break;
                }
            }
        }
        let ok = matched == lifted.len() && src_bricks.len() == dst_bricks.len();
        Ok((
            ok,
            format!(
                "bricks: {} over kG, {} over k(G/N), {} matched (search space full: {src_full}/{dst_full})",
                src_bricks.len(),
                dst_bricks.len(),
                matched
            ),
        ))
    })();
    report.record("20_semibrick_lift_bijection", brick_res);
    // blockwise statements
    verify_block_reduction_into(
        &setup.algebra,
        &setup.surj,
        &setup.quotient_algebra,
        &mut report,
        "30_",
        seed,
        cap,
    )?;
    report.finalize(started);
    Ok(report)
}

/// Iterate the central reduction along N cap Z_i up the upper central
/// series, for N the p-Sylow subgroup of the hypercenter. Each stage must
/// satisfy the central p-subgroup hypothesis; the composite reduction is
/// then compared node by node with the direct map M -> M/J(kN)M.
pub fn verify_hypercenter_iteration(
    g: &FiniteGroup,
    field: Arc<Field>,
    seed: u64,
    cap: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let p = field.p();
    let mut report = VerificationReport::new(
        format!("hypercenter iteration: |G| = {}, p = {p}", g.order),
        field.spec().clone(),
        seed,
    );
    let h = g.hypercenter()?;
    let n = g.p_torsion_subgroup(&h, p)?;
    report.add(
        "00_hypercenter",
        true,
        format!("|H(G)| = {}, p-part |N| = {}", h.order(), n.order()),
    );
    if n.order() == 1 {
        report.add("01_chain", true, "N is trivial; nothing to reduce");
        report.finalize(started);
        return Ok(report);
    }
    // walk the chain G -> G/(N cap Z_1) -> ... -> G/N, checking each
    // stage's hypothesis and recording the composed fibers
    let mut current_group = g.clone();
    let mut current_n: Subgroup = n.clone();
    // composed fiber: index in G -> index in the current iterated quotient
    let mut composed: Vec<u32> = (0..g.order as u32).collect();
    let mut stage_idx = 0usize;
    let mut stage_counts: Vec<usize> = Vec::new();
    while current_n.order() > 1 {
        let z1 = current_group.center();
        let stage_n = current_n.intersect(&z1);
        if stage_n.order() == 1 {
            report.add(
                "02_stage_hypothesis",
                false,
                format!("stage {stage_idx}: N_i does not meet the center"),
            );
            break;
        }
        let stage_report = verify_central_quotient(
            &current_group,
            &stage_n,
            field.clone(),
            seed ^ ((stage_idx as u64) << 16),
            cap,
        )?;
        let ok = stage_report.all_passed();
        report.add(
            &format!("1{stage_idx}_stage"),
            ok,
            format!(
                "stage {stage_idx}: |G_i| = {}, |N_i| = {} ({} checks)",
                current_group.order,
                stage_n.order(),
                stage_report.checks.len()
            ),
        );
        if !ok {
            for c in stage_report.checks.iter().filter(|c| !c.passed) {
                report.add(
                    &format!("1{stage_idx}_stage_{}", c.name),
                    false,
                    c.detail.clone(),
                );
            }
            break;
        }
        let (qg, qmap) = current_group.quotient_group(&stage_n)?;
        for cf in composed.iter_mut() {
            *cf = qmap.fiber[*cf as usize];
        }
        let mut img: Vec<u32> = current_n
            .elements
            .iter()
            .map(|&x| qmap.fiber[x as usize])
            .collect();
        img.sort_unstable();
        img.dedup();
        current_n = qg.subgroup(img)?;
        current_group = qg;
        stage_counts.push(stage_n.order());
        stage_idx += 1;
        if stage_idx > g.order {
            report.add("19_chain_termination", false, "chain did not terminate");
            break;
        }
    }
    report.add(
        "19_chain_termination",
        current_n.order() == 1,
        format!(
            "chain of {} stages with |N_i| = {:?}; final quotient has order {}",
            stage_idx, stage_counts, current_group.order
        ),
    );
    if current_n.order() != 1 {
        report.finalize(started);
        return Ok(report);
    }
    // identify the iterated quotient with the direct quotient G/N through
    // the composed fibers, as an explicit group isomorphism
    let (qg_direct, qmap_direct) = g.quotient_group(&n)?;
    let ident = (|| -> Result<Vec<u32>> {
        if qg_direct.order != current_group.order {
            return Err(Error::Invariant("quotient orders differ".into()));
        }
        let mut map = vec![u32::MAX; qg_direct.order];
        for x in 0..g.order {
            let d = qmap_direct.fiber[x] as usize;
            let it = composed[x];
            if map[d] == u32::MAX {
                map[d] = it;
            } else if map[d] != it {
                return Err(Error::Invariant(
                    "composite fibers are not constant on cosets".into(),
                ));
            }
        }
        // bijective homomorphism check
        let mut seen = vec![false; current_group.order];
        for &v in &map {
            if v == u32::MAX || seen[v as usize] {
                return Err(Error::Invariant(
                    "coset identification is not bijective".into(),
                ));
            }
            seen[v as usize] = true;
        }
        for a in 0..qg_direct.order as u32 {
            for b in 0..qg_direct.order as u32 {
                if map[qg_direct.op(a, b) as usize]
                    != current_group.op(map[a as usize], map[b as usize])
                {
                    return Err(Error::Invariant(
                        "coset identification is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(map)
    })();
    let ident = match ident {
        Ok(m) => {
            report.add(
                "20_quotient_identification",
                true,
                "iterated quotient is isomorphic to G/N via the composed fibers",
            );
            m
        }
        Err(e) => {
            report.add("20_quotient_identification", false, format!("{e}"));
            report.finalize(started);
            return Ok(report);
        }
    };
    // composite reduction of every node agrees with the direct reduction
    let direct_setup = group_reduction_setup(g, &n, field.clone())?;
    let compare = (|| -> Result<(bool, String)> {
        let alg = group_algebra(g, field.clone())?;
        let final_alg = group_algebra(&current_group, field.clone())?;
        let mut ctx = SttContext::new(alg.clone(), seed ^ 0xc0)?;
        let poset = enumerate_stt(&mut ctx, cap)?;
        if !poset.complete {
            return Ok((false, "source enumeration incomplete".into()));
        }
        let mut final_rng = Rng::new(seed ^ 0xc1);
        for node in &poset.nodes {
            let m = ctx.module_of_classes(&node.pair.m_classes);
            // direct: M / J(kN) M over k(G/N), transported to the iterated
            // quotient algebra through the identification
            let (m_direct, _) = reduce_module(
                &m,
                &direct_setup.ideal,
                &direct_setup.quotient_algebra,
                &direct_setup.surj,
            )?;
            let transported_action: Vec<Mat> = (0..current_group.order)
                .map(|j| {
                    // basis j of the iterated algebra corresponds to basis
                    // ident^{-1}(j) of the direct algebra
                    let pre = ident
                        .iter()
                        .position(|&v| v as usize == j)
                        .expect("bijective");
                    m_direct.action[pre].clone()
                })
                .collect();
            let m_direct_t = Module::new(final_alg.clone(), transported_action)?;
            // composite: reduce stage by stage
            let mut cur_group = g.clone();
            let mut cur_n = n.clone();
            let mut cur_m = m.clone();
            while cur_n.order() > 1 {
                let z = cur_group.center();
                let stage_n = cur_n.intersect(&z);
                let setup = group_reduction_setup(&cur_group, &stage_n, field.clone())?;
                let (next_m, _) =
                    reduce_module(&cur_m, &setup.ideal, &setup.quotient_algebra, &setup.surj)?;
                let mut img: Vec<u32> = cur_n
                    .elements
                    .iter()
                    .map(|&x| setup.qmap.fiber[x as usize])
                    .collect();
                img.sort_unstable();
                img.dedup();
                cur_group = setup.quotient_group.clone();
                cur_n = cur_group.subgroup(img)?;
                cur_m = next_m;
            }
            let composite = Module::new(final_alg.clone(), cur_m.action.clone())?;
            if composite.dim != m_direct_t.dim
                || module::is_isomorphic(&composite, &m_direct_t, &mut final_rng)?.is_none()
            {
                return Ok((
                    false,
                    format!(
                        "composite and direct reductions disagree at a node of dim {}",
                        m.dim
                    ),
                ));
            }
        }
        Ok((true, format!("all {} nodes agree", poset.nodes.len())))
    })();
    report.record("21_composite_matches_direct", compare);
    report.finalize(started);
    Ok(report)
}

/// Principal-block reduction for N the p-Sylow subgroup of Z(G): combine
/// the central reduction kG -> k(G/N) with the p'-isomorphism
/// B0(k(G/N)) = B0(k(G/Z(G))).
pub fn verify_principal_block_quotient(
    g: &FiniteGroup,
    field: Arc<Field>,
    seed: u64,
    cap: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let p = field.p();
    let mut report = VerificationReport::new(
        format!("principal block reduction: |G| = {}, p = {p}", g.order),
        field.spec().clone(),
        seed,
    );
    let z = g.center();
    let n = g.p_part_of_abelian(&z, p)?;
    report.add(
        "00_setup",
        true,
        format!("|Z(G)| = {}, p-Sylow |N| = {}", z.order(), n.order()),
    );
    // stage 1: central reduction by N
    let stage1 = verify_central_quotient(g, &n, field.clone(), seed, cap)?;
    report.add(
        "01_central_stage",
        stage1.all_passed(),
        format!(
            "central reduction by |N| = {} ({} checks)",
            n.order(),
            stage1.checks.len()
        ),
    );
    if !stage1.all_passed() {
        for c in stage1.checks.iter().filter(|c| !c.passed) {
            report.add(
                &format!("01_central_stage_{}", c.name),
                false,
                c.detail.clone(),
            );
        }
        report.finalize(started);
        return Ok(report);
    }
    // stage 2: Z(G)/N is a normal p'-subgroup of G/N
    let (g1, qmap1) = g.quotient_group(&n)?;
    let mut z_img: Vec<u32> = z
        .elements
        .iter()
        .map(|&x| qmap1.fiber[x as usize])
        .collect();
    z_img.sort_unstable();
    z_img.dedup();
    let zbar = g1.subgroup(z_img)?;
    let pprime = {
        let mut o = zbar.order() as u64;
        let mut divisible = false;
        while o % p == 0 {
            o /= p;
            divisible = true;
        }
        !divisible
    };
    report.add(
        "02_Z_mod_N_is_p_prime",
        pprime,
        format!("|Z(G)/N| = {}", zbar.order()),
    );
    let setup2 = group_reduction_setup(&g1, &zbar, field.clone())?;
    let iso = algebra::principal_block_iso_pprime(
        &g1,
        &zbar,
        &setup2.surj,
        &setup2.algebra,
        &setup2.quotient_algebra,
    )?;
    // principal block of k(G/N) is inside kG1 beta
    let b0_g1 = algebra::principal_block(&setup2.algebra)?;
    let e0 = &b0_g1.idempotent;
    let e0_beta = setup2.algebra.mul_vec(e0, &iso.beta);
    report.add(
        "03_principal_inside_beta_summand",
        &e0_beta == e0,
        format!(
            "dim B0 = {}, dim kG beta = {}",
            b0_g1.algebra.dim,
            iso.beta_summand.dim()
        ),
    );
    // compare principal-block posets: B0(kG) vs B0(k(G/Z))
    let b0_src = algebra::principal_block(
        &SttContext::new(group_algebra(g, field.clone())?, seed)?.algebra,
    )?;
    let gz = g.quotient_group(&z)?.0;
    let alg_gz = group_algebra(&gz, field.clone())?;
    let b0_gz = algebra::principal_block(&alg_gz)?;
    let mut ctx_src = SttContext::new(b0_src.algebra.clone(), seed ^ 0xb0)?;
    let mut ctx_dst = SttContext::new(b0_gz.algebra.clone(), seed ^ 0xb1)?;
    let poset_src = enumerate_stt(&mut ctx_src, cap)?;
    let poset_dst = enumerate_stt(&mut ctx_dst, cap)?;
    report.add(
        "04_principal_posets_match",
        poset_src.complete && poset_dst.complete && poset_src.nodes.len() == poset_dst.nodes.len(),
        format!(
            "|stt B0(kG)| = {}, |stt B0(k(G/Z))| = {}",
            poset_src.nodes.len(),
            poset_dst.nodes.len()
        ),
    );
    // Asai semibrick multisets (by dims) on both sides agree through the
    // composite bijection realized blockwise in stage 1 plus the algebra
    // isomorphism of stage 2; checked here at the level of sorted brick
    // dimension profiles per poset
    let profile = |ctx: &mut SttContext, poset: &SttPoset| -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut rng = ctx.rng.fork();
        for node in &poset.nodes {
            let m = ctx.module_of_classes(&node.pair.m_classes);
            let bricks = asai_semibrick(&m, &mut rng)?;
            let mut dims: Vec<usize> = bricks.iter().map(|b| b.dim).collect();
            dims.sort_unstable();
            out.push(dims);
        }
        out.sort();
        Ok(out)
    };
    let prof_src = profile(&mut ctx_src, &poset_src)?;
    let prof_dst = profile(&mut ctx_dst, &poset_dst)?;
    report.add(
        "05_asai_profiles_match",
        prof_src == prof_dst,
        format!("brick dimension profiles {prof_src:?} vs {prof_dst:?}"),
    );
    report.finalize(started);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::tilting::NODE_CAP;

    fn f2() -> Arc<Field> {
        Arc::new(Field::with_default_poly(2, 1).unwrap())
    }
    fn f3() -> Arc<Field> {
        Arc::new(Field::with_default_poly(3, 1).unwrap())
    }

    #[test]
    fn bricks_and_semibricks() {
        let a = group_algebra(&group::dihedral(3).unwrap(), f2()).unwrap();
        let (simples, _) = module::simples_and_projectives(&a).unwrap();
        for s in &simples {
            assert!(is_brick(s).unwrap());
        }
        assert!(is_semibrick(&simples).unwrap());
        // S + S is not a semibrick
        let doubled = vec![simples[0].clone(), simples[0].clone()];
        assert!(!is_semibrick(&doubled).unwrap());
    }

    #[test]
    fn asai_of_extremes() {
        let a = group_algebra(&group::cyclic(2).unwrap(), f2()).unwrap();
        let mut rng = Rng::new(2);
        // (A, 0): top of A = the simples
        let regular = Module::regular(&a);
        let bricks = asai_semibrick(&regular, &mut rng).unwrap();
        assert_eq!(bricks.len(), 1);
        assert_eq!(bricks[0].dim, 1);
        // zero module: empty semibrick
        let z = Module::zero(a.clone());
        assert!(asai_semibrick(&z, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn bounded_brick_search_kc4() {
        // kC4 at p=2 is uniserial: only the trivial module is a brick
        let a = group_algebra(&group::cyclic(4).unwrap(), f2()).unwrap();
        let (bricks, full) = enumerate_bricks_bounded(&a).unwrap();
        assert!(full);
        assert_eq!(bricks.len(), 1);
        assert_eq!(bricks[0].dim, 1);
        let (sbricks, _, _) = enumerate_semibricks_bounded(&a).unwrap();
        // empty and {k}
        assert_eq!(sbricks.len(), 2);
    }

    #[test]
    fn reduction_env_c4_to_c2() {
        let c4 = group::cyclic(4).unwrap();
        let n = c4.generated_subgroup(&[2]);
        let setup = group_reduction_setup(&c4, &n, f2()).unwrap();
        let mut env = ReductionEnv::new(setup.algebra.clone(), setup.ideal.clone(), 7).unwrap();
        assert!(env.witness_generators.is_some());
        let poset = enumerate_stt(&mut env.src, NODE_CAP).unwrap();
        assert_eq!(poset.nodes.len(), 2);
        for node in &poset.nodes {
            let red = env.reduce_pair(&node.pair).unwrap();
            // pairs keep their shape
            assert_eq!(red.m_classes.len(), node.pair.m_classes.len());
            assert_eq!(red.p_slots.len(), node.pair.p_slots.len());
            assert!(env.presentation_preserved(&node.pair).unwrap());
        }
    }

    #[test]
    fn central_quotient_c4() {
        let c4 = group::cyclic(4).unwrap();
        let n = c4.generated_subgroup(&[2]);
        let report = verify_central_quotient(&c4, &n, f2(), 11, NODE_CAP).unwrap();
        assert!(
            report.all_passed(),
            "failed checks: {:#?}",
            report.summary_lines()
        );
    }

    #[test]
    fn central_quotient_rejects_bad_input() {
        // N = A3 in S3 is not central
        let s3 = group::symmetric(3).unwrap();
        let a3: Vec<u32> = (0..6u32)
            .filter(|&i| {
                // even permutations: identity and the two 3-cycles
                s3.labels[i as usize] == "()" || s3.labels[i as usize].len() == 7
            })
            .collect();
        let n = s3.subgroup(a3).unwrap();
        assert_eq!(n.order(), 3);
        let report = verify_central_quotient(&s3, &n, f2(), 3, NODE_CAP).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn left_finite_flags() {
        let a = group_algebra(&group::cyclic(4).unwrap(), f2()).unwrap();
        let mut ctx = SttContext::new(a.clone(), 13).unwrap();
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        // the trivial brick is an Asai image; flag true
        let triv = Module::trivial(&a).unwrap();
        assert!(left_finite_flag(&mut ctx, &poset, &[triv]).unwrap());
        // the empty semibrick is the image of (0, A)
        assert!(left_finite_flag(&mut ctx, &poset, &[]).unwrap());
        // every bounded-search semibrick is left finite here
        let (sbricks, bricks, _) = enumerate_semibricks_bounded(&a).unwrap();
        assert_eq!(sbricks.len(), poset.nodes.len());
        for idx in &sbricks {
            let mods: Vec<Module> = idx.iter().map(|&i| bricks[i].clone()).collect();
            assert!(left_finite_flag(&mut ctx, &poset, &mods).unwrap());
        }
    }
}
