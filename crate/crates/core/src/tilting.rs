//! Support tau-tilting pairs, two-term silting complexes, the bijection
//! between them, both partial orders, and exhaustive poset enumeration by
//! mutation with an independent brute-force oracle.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{self, kernel, Mat, Subspace};
use crate::module::{
    self, decompose, fac_membership, hom_dim, hom_space, min_proj_presentation, tau, Module,
    ProjSum,
};
use crate::rng::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Default cap on enumerated poset nodes.
pub const NODE_CAP: usize = 10000;
/// Cap on the submodule lattice size in the brute-force oracle.
const ORACLE_SUBMODULE_CAP: usize = 200_000;

/// Shared context for one enumeration: the algebra, its simples and PIMs,
/// and an interning registry of indecomposable iso-class representatives.
pub struct SttContext {
    pub algebra: Arc<Algebra>,
    pub simples: Vec<Module>,
    pub pims: Vec<Module>,
    /// representatives of indecomposable module iso-classes seen so far
    pub registry: Vec<Module>,
    registry_fp: Vec<Vec<usize>>,
    pub rng: Rng,
}

impl SttContext {
    pub fn new(algebra: Arc<Algebra>, seed: u64) -> Result<SttContext> {
        let (simples, pim_list) = module::simples_and_projectives(&algebra)?;
        let mut ctx = SttContext {
            algebra,
            simples,
            pims: pim_list,
            registry: Vec::new(),
            registry_fp: Vec::new(),
            rng: Rng::new(seed),
        };
        // intern the PIMs first so their registry ids are stable
        for p in ctx.pims.clone() {
            ctx.intern(p)?;
        }
        Ok(ctx)
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    /// Intern an indecomposable module, returning its iso-class id.
    /// Radical-series fingerprints prune the isomorphism tests.
    pub fn intern(&mut self, m: Module) -> Result<usize> {
        let fp = module::module_fingerprint(&m)?;
        for (i, r) in self.registry.iter().enumerate() {
            if self.registry_fp[i] == fp && module::indec_isomorphic(r, &m)?.is_some() {
                return Ok(i);
            }
        }
        self.registry.push(m);
        self.registry_fp.push(fp);
        Ok(self.registry.len() - 1)
    }

    /// Registry id of PIM i (interned first, so the id is i).
    pub fn pim_class(&self, i: usize) -> usize {
        i
    }

    pub fn module_of_classes(&self, classes: &[usize]) -> Module {
        if classes.is_empty() {
            return Module::zero(self.algebra.clone());
        }
        let parts: Vec<&Module> = classes.iter().map(|&c| &self.registry[c]).collect();
        Module::direct_sum(&parts)
    }

    pub fn module_of_pims(&self, slots: &[usize]) -> Module {
        if slots.is_empty() {
            return Module::zero(self.algebra.clone());
        }
        let parts: Vec<&Module> = slots.iter().map(|&s| &self.pims[s]).collect();
        Module::direct_sum(&parts)
    }
}

/// Exact certificate data for a validated pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCertificates {
    pub hom_m_tau_m: usize,
    pub hom_p_m: usize,
    pub m_count: usize,
    pub p_count: usize,
    pub simple_count: usize,
}

/// A basic support tau-tilting pair in canonical form: sorted iso-class ids
/// for the module part, sorted PIM indices for the support part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SttPair {
    pub m_classes: Vec<usize>,
    pub p_slots: Vec<usize>,
}

impl SttPair {
    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.m_classes.clone(), self.p_slots.clone())
    }
}

/// Hom(M, tau M) = 0.
pub fn is_tau_rigid(m: &Module) -> Result<bool> {
    if m.dim == 0 {
        return Ok(true);
    }
    let t = tau(m)?;
    if t.dim == 0 {
        return Ok(true);
    }
    Ok(hom_dim(m, &t) == 0)
}

/// Validate (M, P): M tau-rigid and basic, P basic projective with
/// Hom(P, M) = 0, and |M| + |P| = |A|. Returns the canonical pair.
pub fn validate_pair(
    ctx: &mut SttContext,
    m: &Module,
    p: &Module,
) -> Result<(SttPair, PairCertificates)> {
    let m_dec = decompose(m, &mut ctx.rng)?;
    for (_, mult) in &m_dec.summands {
        if *mult > 1 {
            return Err(Error::InvalidPair("module part is not basic".into()));
        }
    }
    let p_dec = decompose(p, &mut ctx.rng)?;
    let mut p_slots = Vec::new();
    for (summand, mult) in &p_dec.summands {
        if *mult > 1 {
            return Err(Error::InvalidPair("projective part is not basic".into()));
        }
        let mut found = None;
        for (i, pim) in ctx.pims.iter().enumerate() {
            if pim.dim == summand.dim && module::indec_isomorphic(pim, summand)?.is_some() {
                found = Some(i);
                break;
            }
        }
        p_slots.push(
            found.ok_or_else(|| Error::InvalidPair("support part is not projective".into()))?,
        );
    }
    p_slots.sort_unstable();
    let mut m_classes = Vec::new();
    for (summand, _) in &m_dec.summands {
        m_classes.push(ctx.intern(summand.clone())?);
    }
    m_classes.sort_unstable();
    let simple_count = ctx.simple_count();
    let certs = PairCertificates {
        hom_m_tau_m: {
            let t = tau(m)?;
            if m.dim == 0 || t.dim == 0 {
                0
            } else {
                hom_dim(m, &t)
            }
        },
        hom_p_m: if p.dim == 0 || m.dim == 0 {
            0
        } else {
            hom_dim(p, m)
        },
        m_count: m_classes.len(),
        p_count: p_slots.len(),
        simple_count,
    };
    if certs.hom_m_tau_m != 0 {
        return Err(Error::InvalidPair(format!(
            "tau-rigidity fails: dim Hom(M, tau M) = {}",
            certs.hom_m_tau_m
        )));
    }
    if certs.hom_p_m != 0 {
        return Err(Error::InvalidPair(format!(
            "support condition fails: dim Hom(P, M) = {}",
            certs.hom_p_m
        )));
    }
    if certs.m_count + certs.p_count != simple_count {
        return Err(Error::InvalidPair(format!(
            "|M| + |P| = {} != |A| = {}",
            certs.m_count + certs.p_count,
            simple_count
        )));
    }
    Ok((SttPair { m_classes, p_slots }, certs))
}

/// Fac-order on pairs: (M,P) >= (M',P') iff M' lies in Fac M.
pub fn stt_geq(ctx: &SttContext, a: &SttPair, b: &SttPair) -> bool {
    let ma = ctx.module_of_classes(&a.m_classes);
    let mb = ctx.module_of_classes(&b.m_classes);
    fac_membership(&mb, &ma)
}

// ---------------------------------------------------------------------------
// two-term complexes

/// A complex of projectives concentrated in degrees -1 and 0, stored as PIM
/// slot lists with the differential between the explicit direct sums.
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    pub m1_slots: Vec<usize>,
    pub m0_slots: Vec<usize>,
    /// dim P0 x dim P1
    pub d: Mat,
}

impl TwoTermComplex {
    pub fn p1(&self, ctx: &SttContext) -> Result<ProjSum> {
        ProjSum::build(&ctx.algebra, self.m1_slots.clone())
    }
    pub fn p0(&self, ctx: &SttContext) -> Result<ProjSum> {
        ProjSum::build(&ctx.algebra, self.m0_slots.clone())
    }

    pub fn slot_multisets(&self) -> (Vec<usize>, Vec<usize>) {
        let mut a = self.m1_slots.clone();
        let mut b = self.m0_slots.clone();
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    }
}

/// AIR map: (M, P) -> (P1^M + P --(f 0)--> P0^M).
pub fn stt_to_2silt(ctx: &SttContext, pair: &SttPair) -> Result<TwoTermComplex> {
    let m = ctx.module_of_classes(&pair.m_classes);
    let pres = min_proj_presentation(&m)?;
    let mut m1_slots = pres.p1.slots.clone();
    let p_start = pres.p1.dim();
    m1_slots.extend(pair.p_slots.iter().copied());
    let p_extra = ctx.module_of_pims(&pair.p_slots);
    let p1_dim = p_start + p_extra.dim;
    let p0_dim = pres.p0.dim();
    let mut d = Mat::zero(p0_dim, p1_dim);
    for r in 0..p0_dim {
        for c in 0..p_start {
            d.set(r, c, pres.map.get(r, c));
        }
    }
    Ok(TwoTermComplex {
        m1_slots,
        m0_slots: pres.p0.slots.clone(),
        d,
    })
}

/// dim Hom_{K^b}(T, U[i]); zero outside i in {-1, 0, 1} because the
/// complexes live in degrees -1, 0 only.
pub fn homotopy_hom(
    ctx: &SttContext,
    t: &TwoTermComplex,
    u: &TwoTermComplex,
    shift: i32,
) -> Result<usize> {
    if !(-1..=1).contains(&shift) {
        return Ok(0);
    }
    let f = &ctx.algebra.field;
    let t1 = t.p1(ctx)?;
    let t0 = t.p0(ctx)?;
    let u1 = u.p1(ctx)?;
    let u0 = u.p0(ctx)?;
    match shift {
        1 => {
            // chain maps T -> U[1]: beta: T1 -> U0, modulo
            // { h0 . d_T + d_U . h1 : h0: T0 -> U0, h1: T1 -> U1 }
            let betas = hom_space(&t1.module, &u0.module);
            if betas.is_empty() {
                return Ok(0);
            }
            let ambient = u0.dim() * t1.dim();
            let mut null_rows = Vec::new();
            for h0 in hom_space(&t0.module, &u0.module) {
                null_rows.push(h0.mul(f, &t.d).data);
            }
            for h1 in hom_space(&t1.module, &u1.module) {
                null_rows.push(u.d.mul(f, &h1).data);
            }
            let nulls = Subspace::from_vectors(f, &null_rows, ambient);
            let total = Subspace::from_vectors(
                f,
                &betas.iter().map(|b| b.data.clone()).collect::<Vec<_>>(),
                ambient,
            );
            if !total.contains(f, &nulls) {
                return Err(Error::Invariant(
                    "null homotopies escaped the hom space".into(),
                ));
            }
            Ok(total.dim() - nulls.dim())
        }
        0 => {
            // pairs (a1, a0) with d_U a1 = a0 d_T, modulo (h d_T, d_U h)
            let amb1 = u1.dim() * t1.dim();
            let amb0 = u0.dim() * t0.dim();
            let ambient = amb1 + amb0;
            let basis = chain_map_basis(ctx, t, u)?;
            let mut chain_maps = Vec::new();
            for (a1, a0) in &basis {
                let mut v = a1.data.clone();
                v.extend(a0.data.clone());
                chain_maps.push(v);
            }
            let chains = Subspace::from_vectors(f, &chain_maps, ambient);
            // homotopies h: T0 -> U1
            let mut null_rows = Vec::new();
            for h in hom_space(&t0.module, &u1.module) {
                let a1 = h.mul(f, &t.d);
                let a0 = u.d.mul(f, &h);
                let mut v = a1.data;
                v.extend(a0.data);
                null_rows.push(v);
            }
            let nulls = Subspace::from_vectors(f, &null_rows, ambient);
            if !chains.contains(f, &nulls) {
                return Err(Error::Invariant("homotopies are not chain maps".into()));
            }
            Ok(chains.dim() - nulls.dim())
        }
        _ => {
            // shift = -1: gamma: T0 -> U1 with d_U gamma = 0, gamma d_T = 0
            let cands = hom_space(&t0.module, &u1.module);
            if cands.is_empty() {
                return Ok(0);
            }
            let mut rows = Vec::new();
            for g in &cands {
                if u.d.mul(f, g).is_zero() && g.mul(f, &t.d).is_zero() {
                    rows.push(g.data.clone());
                }
            }
            Ok(Subspace::from_vectors(f, &rows, u1.dim() * t0.dim()).dim())
        }
    }
}

/// Silting order: T >= U iff Hom(T, U[i]) = 0 for all i > 0; for two-term
/// complexes only i = 1 can be nonzero.
pub fn silt_geq(ctx: &SttContext, t: &TwoTermComplex, u: &TwoTermComplex) -> Result<bool> {
    Ok(homotopy_hom(ctx, t, u, 1)? == 0)
}

/// Basis of genuine chain maps T -> U as degreewise pairs (a1, a0),
/// not reduced modulo homotopy.
pub fn chain_map_basis(
    ctx: &SttContext,
    t: &TwoTermComplex,
    u: &TwoTermComplex,
) -> Result<Vec<(Mat, Mat)>> {
    let f = &ctx.algebra.field;
    let t1 = t.p1(ctx)?;
    let t0 = t.p0(ctx)?;
    let u1 = u.p1(ctx)?;
    let u0 = u.p0(ctx)?;
    let h1s = hom_space(&t1.module, &u1.module);
    let h0s = hom_space(&t0.module, &u0.module);
    let mut cand: Vec<(Mat, Mat)> = Vec::new();
    for a1 in &h1s {
        cand.push((a1.clone(), Mat::zero(u0.dim(), t0.dim())));
    }
    for a0 in &h0s {
        cand.push((Mat::zero(u1.dim(), t1.dim()), a0.clone()));
    }
    if cand.is_empty() {
        return Ok(vec![]);
    }
    let mut cons = Mat::zero(u0.dim() * t1.dim(), cand.len());
    for (j, (a1, a0)) in cand.iter().enumerate() {
        let diff = u.d.mul(f, a1).sub(f, &a0.mul(f, &t.d));
        for (r, &val) in diff.data.iter().enumerate() {
            cons.set(r, j, val);
        }
    }
    let ker = kernel(f, &cons);
    let mut out = Vec::new();
    for r in 0..ker.dim() {
        let coords = ker.basis.row(r);
        let mut a1 = Mat::zero(u1.dim(), t1.dim());
        let mut a0 = Mat::zero(u0.dim(), t0.dim());
        for (j, &c) in coords.iter().enumerate() {
            if c != 0 {
                a1 = a1.add(f, &cand[j].0.scale(f, c));
                a0 = a0.add(f, &cand[j].1.scale(f, c));
            }
        }
        out.push((a1, a0));
    }
    Ok(out)
}

/// Strip contractible (P --iso--> P) summands by block pivoting over the
/// local endomorphism rings of the PIMs.
pub fn minimalize(ctx: &SttContext, t: &TwoTermComplex) -> Result<TwoTermComplex> {
    let f = &ctx.algebra.field;
    let pim_dims: Vec<usize> = ctx.pims.iter().map(|p| p.dim).collect();
    let mut m1 = t.m1_slots.clone();
    let mut m0 = t.m0_slots.clone();
    let mut d = t.d.clone();
    'outer: loop {
        let off1: Vec<usize> = {
            let mut off = 0;
            m1.iter()
                .map(|&s| {
                    let o = off;
                    off += pim_dims[s];
                    o
                })
                .collect()
        };
        let off0: Vec<usize> = {
            let mut off = 0;
            m0.iter()
                .map(|&s| {
                    let o = off;
                    off += pim_dims[s];
                    o
                })
                .collect()
        };
        for (si, &s) in m1.iter().enumerate() {
            for (ti, &tslot) in m0.iter().enumerate() {
                if s != tslot {
                    continue;
                }
                let k = pim_dims[s];
                let mut block = Mat::zero(k, k);
                for r in 0..k {
                    for c in 0..k {
                        block.set(r, c, d.get(off0[ti] + r, off1[si] + c));
                    }
                }
                let Some(binv) = block.inverse(f) else {
                    continue;
                };
                // Schur complement update, then delete the pivot slots
                let p1_dim: usize = m1.iter().map(|&x| pim_dims[x]).sum();
                let p0_dim: usize = m0.iter().map(|&x| pim_dims[x]).sum();
                let rows_t: Vec<usize> = (off0[ti]..off0[ti] + k).collect();
                let cols_s: Vec<usize> = (off1[si]..off1[si] + k).collect();
                let keep_rows: Vec<usize> = (0..p0_dim).filter(|r| !rows_t.contains(r)).collect();
                let keep_cols: Vec<usize> = (0..p1_dim).filter(|c| !cols_s.contains(c)).collect();
                let mut nd = Mat::zero(keep_rows.len(), keep_cols.len());
                for (ri, &r) in keep_rows.iter().enumerate() {
                    for (ci, &c) in keep_cols.iter().enumerate() {
                        // d'[r,c] = d[r,c] - d[r, s-block] * Binv * d[t-block, c]
                        let mut corr = 0u32;
                        for a in 0..k {
                            for b in 0..k {
                                let x = d.get(r, off1[si] + a);
                                let y = binv.get(a, b);
                                let z = d.get(off0[ti] + b, c);
                                if x != 0 && y != 0 && z != 0 {
                                    corr = f.add(corr, f.mul(f.mul(x, y), z));
                                }
                            }
                        }
                        nd.set(ri, ci, f.sub(d.get(r, c), corr));
                    }
                }
                m1.remove(si);
                m0.remove(ti);
                d = nd;
                continue 'outer;
            }
        }
        break;
    }
    Ok(TwoTermComplex {
        m1_slots: m1,
        m0_slots: m0,
        d,
    })
}

/// Inverse AIR map: minimalize, take M = coker d, recover the support part
/// as the slot difference, and validate.
pub fn twosilt_to_stt(
    ctx: &mut SttContext,
    t: &TwoTermComplex,
) -> Result<(SttPair, PairCertificates)> {
    let f = &ctx.algebra.field.clone();
    let min = minimalize(ctx, t)?;
    let p0 = min.p0(ctx)?;
    let image = linalg::image(f, &min.d);
    let (coker, _) = p0.module.quotient(&image)?;
    // basic reduction of the cokernel
    let dec = decompose(&coker, &mut ctx.rng)?;
    let m_parts: Vec<&Module> = dec.summands.iter().map(|(m, _)| m).collect();
    let m_basic = if m_parts.is_empty() {
        Module::zero(ctx.algebra.clone())
    } else {
        Module::direct_sum(&m_parts)
    };
    // support slots: what remains of degree -1 after the presentation,
    // counting multiplicity only once (basic reduction)
    let mut have: BTreeMap<usize, isize> = BTreeMap::new();
    for &s in &min.m1_slots {
        *have.entry(s).or_insert(0) += 1;
    }
    // subtract P1 slots of the basic cokernel presentation, scaled by the
    // multiplicities that were removed
    let full_pres = min_proj_presentation(&coker)?;
    for &s in &full_pres.p1.slots {
        *have.entry(s).or_insert(0) -= 1;
    }
    let mut p_slots = Vec::new();
    for (&s, &c) in &have {
        if c < 0 {
            return Err(Error::NotSilting(format!(
                "degree -1 part too small at projective {s}"
            )));
        }
        if c > 0 {
            p_slots.push(s); // basic: record the class once
        }
    }
    let p_mod = ctx.module_of_pims(&p_slots);
    validate_pair(ctx, &m_basic, &p_mod)
}

/// Presilting plus the two-term completeness count, certified through the
/// inverse AIR construction and a slot-multiset round trip.
pub fn is_two_term_silting(ctx: &mut SttContext, t: &TwoTermComplex) -> Result<bool> {
    if homotopy_hom(ctx, t, t, 1)? != 0 {
        return Ok(false);
    }
    let pair = match twosilt_to_stt(ctx, t) {
        Ok((pair, _)) => pair,
        Err(Error::InvalidPair(_)) | Err(Error::NotSilting(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    // the pair must reproduce the minimalized complex slot-for-slot
    let back = stt_to_2silt(ctx, &pair)?;
    let min = minimalize(ctx, t)?;
    Ok(back.slot_multisets() == min.slot_multisets())
}

// ---------------------------------------------------------------------------
// mutation

/// Replace the indecomposable summand at `pos` (module summands first, then
/// support slots) by the unique other completion. The exchange partner can
/// lie above or below: the downward candidate search runs first, and when
/// it is empty the right mutation on the silting side takes over.
pub fn mutate(ctx: &mut SttContext, pair: &SttPair, pos: usize) -> Result<SttPair> {
    let nm = pair.m_classes.len();
    if pos >= nm + pair.p_slots.len() {
        return Err(Error::InvalidPair(format!("no summand at position {pos}")));
    }
    if pos < nm {
        let mut down = mutate_down_candidates(ctx, pair, pos)?;
        match down.len() {
            1 => return Ok(down.pop().expect("one candidate")),
            0 => {}
            n => {
                return Err(Error::Invariant(format!(
                    "mutation expected exactly one completion, found {n}"
                )))
            }
        }
    }
    mutate_up(ctx, pair, pos)
}

/// Downward candidates for the exchange at a module summand: cokernel of a
/// left approximation into the rest, or a new support projective. Returns
/// the validated completions (empty exactly when the exchange partner lies
/// above this pair).
fn mutate_down_candidates(
    ctx: &mut SttContext,
    pair: &SttPair,
    pos: usize,
) -> Result<Vec<SttPair>> {
    let f = &ctx.algebra.field.clone();
    let x_class = pair.m_classes[pos];
    let rest: Vec<usize> = pair
        .m_classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &c)| c)
        .collect();
    let x = ctx.registry[x_class].clone();
    let m_tilde = ctx.module_of_classes(&rest);
    let mut candidates: Vec<SttPair> = Vec::new();
    // module candidates from the cokernel of a left add(rest)-approximation
    if !rest.is_empty() {
        let mut blocks: Vec<(usize, Vec<Mat>)> = Vec::new();
        for &w in &rest {
            let target = ctx.registry[w].clone();
            blocks.push((w, hom_space(&x, &target)));
        }
        let total_dim: usize = blocks
            .iter()
            .map(|(w, hs)| ctx.registry[*w].dim * hs.len())
            .sum();
        if total_dim > 0 {
            let parts: Vec<Module> = blocks
                .iter()
                .flat_map(|(w, hs)| {
                    hs.iter()
                        .map(|_| ctx.registry[*w].clone())
                        .collect::<Vec<_>>()
                })
                .collect();
            let refs: Vec<&Module> = parts.iter().collect();
            let target = Module::direct_sum(&refs);
            let mut approx = Mat::zero(total_dim, x.dim);
            let mut row0 = 0usize;
            for (w, hs) in &blocks {
                let wd = ctx.registry[*w].dim;
                for h in hs {
                    for r in 0..wd {
                        for c in 0..x.dim {
                            approx.set(row0 + r, c, h.get(r, c));
                        }
                    }
                    row0 += wd;
                }
            }
            let img = linalg::image(f, &approx);
            let (coker, _) = target.quotient(&img)?;
            if coker.dim > 0 {
                let dec = decompose(&coker, &mut ctx.rng)?;
                let mut new_classes = BTreeSet::new();
                for (summand, _) in &dec.summands {
                    let c = ctx.intern(summand.clone())?;
                    if !rest.contains(&c) && c != x_class {
                        new_classes.insert(c);
                    }
                }
                for z in new_classes {
                    let mut m_classes = rest.clone();
                    m_classes.push(z);
                    m_classes.sort_unstable();
                    let cand_m = ctx.module_of_classes(&m_classes);
                    let cand_p = ctx.module_of_pims(&pair.p_slots);
                    match validate_pair(ctx, &cand_m, &cand_p) {
                        Ok((p, _)) => candidates.push(p),
                        Err(Error::InvalidPair(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    // support candidates: adjoin a PIM orthogonal to the rest
    for q in 0..ctx.pims.len() {
        if pair.p_slots.contains(&q) {
            continue;
        }
        let pim = ctx.pims[q].clone();
        if m_tilde.dim > 0 && hom_dim(&pim, &m_tilde) != 0 {
            continue;
        }
        let mut p_slots = pair.p_slots.clone();
        p_slots.push(q);
        p_slots.sort_unstable();
        let cand_p = ctx.module_of_pims(&p_slots);
        match validate_pair(ctx, &m_tilde, &cand_p) {
            Ok((p, _)) => candidates.push(p),
            Err(Error::InvalidPair(_)) => {}
            Err(e) => return Err(e),
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates.retain(|c| c != pair);
    if candidates.len() > 1 {
        return Err(Error::Invariant(format!(
            "mutation expected exactly one completion, found {}",
            candidates.len()
        )));
    }
    Ok(candidates)
}

/// Upward (right) mutation on the silting side. X is the summand complex
/// at the given position: the minimal presentation of an indecomposable
/// module summand, or a stalk (Q -> 0) for a support slot. The new silting
/// complex is cocone(U' -> X) + U, reduced back to two terms.
fn mutate_up(ctx: &mut SttContext, pair: &SttPair, pos: usize) -> Result<SttPair> {
    let f = &ctx.algebra.field.clone();
    let nm = pair.m_classes.len();
    // alm = the almost complete pair with position `pos` removed
    let (alm_classes, alm_slots, x): (Vec<usize>, Vec<usize>, TwoTermComplex) = if pos < nm {
        let classes: Vec<usize> = pair
            .m_classes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &c)| c)
            .collect();
        let xm = ctx.registry[pair.m_classes[pos]].clone();
        let pres = min_proj_presentation(&xm)?;
        let x = TwoTermComplex {
            m1_slots: pres.p1.slots.clone(),
            m0_slots: pres.p0.slots.clone(),
            d: pres.map.clone(),
        };
        (classes, pair.p_slots.clone(), x)
    } else {
        let ppos = pos - nm;
        let slots: Vec<usize> = pair
            .p_slots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ppos)
            .map(|(_, &s)| s)
            .collect();
        let q_idx = pair.p_slots[ppos];
        let q_mod = ctx.pims[q_idx].clone();
        let x = TwoTermComplex {
            m1_slots: vec![q_idx],
            m0_slots: vec![],
            d: Mat::zero(0, q_mod.dim),
        };
        (pair.m_classes.clone(), slots, x)
    };
    let u_pair = SttPair {
        m_classes: alm_classes,
        p_slots: alm_slots,
    };
    let u = stt_to_2silt(ctx, &u_pair)?;
    // right add(U)-approximation of X: stack the chain maps U -> X
    let reps = chain_map_basis(ctx, &u, &x)?;
    let t = reps.len();
    let u1 = u.p1(ctx)?;
    let u0 = u.p0(ctx)?;
    let x1 = x.p1(ctx)?;
    let x0 = x.p0(ctx)?;
    // cocone = cone(psi)[-1] sits in degrees -1, 0, +1:
    //   deg -1 (bottom): U'^{-1} = t copies of U^{-1}
    //   deg  0 (middle): U'^{0} + X^{-1}
    //   deg +1 (top):    X^{0}, to be eliminated
    // delta_b = (-d_U ; psi^{-1}), delta_m = [psi^0 | d_X]
    let mut bottom = Vec::new();
    let mut middle = Vec::new();
    for _ in 0..t {
        bottom.extend(u.m1_slots.iter().copied());
    }
    for _ in 0..t {
        middle.extend(u.m0_slots.iter().copied());
    }
    middle.extend(x.m1_slots.iter().copied());
    let top = x.m0_slots.clone();
    let dim_b = u1.dim() * t;
    let dim_m = u0.dim() * t + x1.dim();
    let dim_t = x0.dim();
    let mut delta_b = Mat::zero(dim_m, dim_b);
    let mut delta_m = Mat::zero(dim_t, dim_m);
    for copy in 0..t {
        let (a1, a0) = &reps[copy];
        for r in 0..u0.dim() {
            for c in 0..u1.dim() {
                let v = u.d.get(r, c);
                if v != 0 {
                    delta_b.set(copy * u0.dim() + r, copy * u1.dim() + c, f.neg(v));
                }
            }
        }
        // psi^{-1} components: U'^{-1} copy -> X^{-1}
        for r in 0..x1.dim() {
            for c in 0..u1.dim() {
                let v = a1.get(r, c);
                if v != 0 {
                    delta_b.set(u0.dim() * t + r, copy * u1.dim() + c, v);
                }
            }
        }
        // psi^{0} components: U'^{0} copy -> X^{0}
        for r in 0..x0.dim() {
            for c in 0..u0.dim() {
                let v = a0.get(r, c);
                if v != 0 {
                    delta_m.set(r, copy * u0.dim() + c, v);
                }
            }
        }
    }
    // d_X: X^{-1} -> X^{0} inside delta_m
    for r in 0..x0.dim() {
        for c in 0..x1.dim() {
            delta_m.set(r, u0.dim() * t + c, x.d.get(r, c));
        }
    }
    // eliminate the degree +1 part on the transposed complex: the surgery
    // is pure linear algebra, so transposition swaps which end gets cleared
    let reduced = reduce_cocone(
        ctx,
        top,
        middle,
        bottom.clone(),
        delta_m.transpose(),
        delta_b.transpose(),
    )?;
    let cocone = TwoTermComplex {
        m1_slots: bottom,
        m0_slots: reduced.m1_slots.clone(),
        d: reduced.d.transpose(),
    };
    // candidate silting complex: cocone + U, then down to a basic pair
    let mut m1 = cocone.m1_slots.clone();
    m1.extend(u.m1_slots.iter().copied());
    let mut m0 = cocone.m0_slots.clone();
    m0.extend(u.m0_slots.iter().copied());
    let total = TwoTermComplex {
        d: Mat::block_diag(&[&cocone.d, &u.d]),
        m1_slots: m1,
        m0_slots: m0,
    };
    let (new_pair, _) = twosilt_to_stt(ctx, &total)?;
    if &new_pair == pair {
        return Err(Error::Invariant(
            "right mutation returned the same pair".into(),
        ));
    }
    // exactly one summand changes
    let shared_m: usize = new_pair
        .m_classes
        .iter()
        .filter(|c| pair.m_classes.contains(c))
        .count();
    let shared_p: usize = new_pair
        .p_slots
        .iter()
        .filter(|s| pair.p_slots.contains(s))
        .count();
    let n = ctx.simple_count();
    if shared_m + shared_p != n - 1 {
        return Err(Error::Invariant(format!(
            "right mutation changed {} summands",
            n - shared_m - shared_p
        )));
    }
    Ok(new_pair)
}

/// Reduce a three-term complex of projectives (degrees -2, -1, 0) with
/// d1 d2 = 0 to two terms by eliminating invertible blocks of d2. The
/// basis change on degree -1 is alpha = I + E with E supported on the
/// pivot column, so d1 picks up -d1 E; the eliminated degree -1 slot has
/// zero d1-column by the chain condition. Errors if degree -2 cannot be
/// cleared (the input was not a valid two-term mutation).
fn reduce_cocone(
    ctx: &SttContext,
    mut slots2: Vec<usize>,
    mut slots1: Vec<usize>,
    slots0: Vec<usize>,
    mut d2: Mat,
    mut d1: Mat,
) -> Result<TwoTermComplex> {
    let f = &ctx.algebra.field;
    let pim_dims: Vec<usize> = ctx.pims.iter().map(|p| p.dim).collect();
    'outer: while !slots2.is_empty() {
        let off2: Vec<usize> = offsets(&slots2, &pim_dims);
        let off1: Vec<usize> = offsets(&slots1, &pim_dims);
        for (si, &s) in slots2.iter().enumerate() {
            for (ti, &tslot) in slots1.iter().enumerate() {
                if s != tslot {
                    continue;
                }
                let k = pim_dims[s];
                let mut block = Mat::zero(k, k);
                for r in 0..k {
                    for c in 0..k {
                        block.set(r, c, d2.get(off1[ti] + r, off2[si] + c));
                    }
                }
                let Some(binv) = block.inverse(f) else {
                    continue;
                };
                let dim2: usize = slots2.iter().map(|&x| pim_dims[x]).sum();
                let dim1: usize = slots1.iter().map(|&x| pim_dims[x]).sum();
                let rows_t: Vec<usize> = (off1[ti]..off1[ti] + k).collect();
                let cols_s: Vec<usize> = (off2[si]..off2[si] + k).collect();
                let keep_rows: Vec<usize> = (0..dim1).filter(|r| !rows_t.contains(r)).collect();
                let keep_cols: Vec<usize> = (0..dim2).filter(|c| !cols_s.contains(c)).collect();
                // E[r, t-block] = -d2[r, s-block] * Binv for r outside the pivot rows
                // new d2 = (I + E) d2 restricted; new d1 = d1 - d1 E restricted
                let mut nd2 = Mat::zero(keep_rows.len(), keep_cols.len());
                for (ri, &r) in keep_rows.iter().enumerate() {
                    for (ci, &c) in keep_cols.iter().enumerate() {
                        let mut corr = 0u32;
                        for a in 0..k {
                            for b in 0..k {
                                let xv = d2.get(r, off2[si] + a);
                                let yv = binv.get(a, b);
                                let zv = d2.get(off1[ti] + b, c);
                                if xv != 0 && yv != 0 && zv != 0 {
                                    corr = f.add(corr, f.mul(f.mul(xv, yv), zv));
                                }
                            }
                        }
                        nd2.set(ri, ci, f.sub(d2.get(r, c), corr));
                    }
                }
                // d1' = d1 - d1 E: only the pivot column block of E is nonzero,
                // and that column of d1' is then dropped with the slot; the
                // remaining columns of d1 are untouched. Verify the dropped
                // column vanishes after the correction (chain condition).
                let mut nd1 = Mat::zero(d1.rows, keep_rows.len());
                for (ci, &c) in keep_rows.iter().enumerate() {
                    for r in 0..d1.rows {
                        nd1.set(r, ci, d1.get(r, c));
                    }
                }
                // dropped column check: (d1 (I+E))[:, t-block] = d1[:,t] + sum_r d1[:,r] E[r,t]
                for b in 0..k {
                    for row in 0..d1.rows {
                        let mut v = d1.get(row, off1[ti] + b);
                        for &r in keep_rows.iter() {
                            // E[r, t+b] = - sum_a d2[r, s+a] Binv[a, b]
                            let mut e_rb = 0u32;
                            for a in 0..k {
                                let xv = d2.get(r, off2[si] + a);
                                if xv != 0 {
                                    e_rb = f.add(e_rb, f.mul(xv, binv.get(a, b)));
                                }
                            }
                            if e_rb != 0 {
                                v = f.sub(v, f.mul(d1.get(row, r), e_rb));
                            }
                        }
                        if v != 0 {
                            return Err(Error::NotSilting(
                                "eliminated slot carries a nonzero differential".into(),
                            ));
                        }
                    }
                }
                slots2.remove(si);
                slots1.remove(ti);
                d2 = nd2;
                d1 = nd1;
                continue 'outer;
            }
        }
        return Err(Error::NotSilting(
            "mutation does not stay two-term: degree -2 cannot be cleared".into(),
        ));
    }
    Ok(TwoTermComplex {
        m1_slots: slots1,
        m0_slots: slots0,
        d: d1,
    })
}

fn offsets(slots: &[usize], pim_dims: &[usize]) -> Vec<usize> {
    let mut off = 0usize;
    slots
        .iter()
        .map(|&s| {
            let o = off;
            off += pim_dims[s];
            o
        })
        .collect()
}

// ---------------------------------------------------------------------------
// enumeration

#[derive(Debug, Clone, Serialize)]
pub struct SttNode {
    pub pair: SttPair,
    pub certificates: PairCertificates,
    /// dims of the indecomposable summands of M and P
    pub m_dims: Vec<usize>,
    pub p_dims: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SttPoset {
    pub nodes: Vec<SttNode>,
    /// covering edges larger -> smaller, by node index
    pub edges: Vec<(usize, usize)>,
    pub complete: bool,
    pub cap_hit: bool,
    pub seed: u64,
}

impl SttPoset {
    pub fn node_index(&self, pair: &SttPair) -> Option<usize> {
        self.nodes.iter().position(|n| &n.pair == pair)
    }

    pub fn maximum(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.pair.p_slots.is_empty())
    }

    pub fn minimum(&self) -> Option<usize> {
        self.nodes.iter().position(|n| n.pair.m_classes.is_empty())
    }

    /// DOT rendering of the Hasse diagram, edges from larger to smaller.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stt {\n  rankdir=TB;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let mdims: Vec<String> = n.m_dims.iter().map(|d| d.to_string()).collect();
            let pdims: Vec<String> = n.p_dims.iter().map(|d| d.to_string()).collect();
            s.push_str(&format!(
                "  n{} [label=\"{}|{}\"];\n",
                i,
                mdims.join(","),
                pdims.join(",")
            ));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first enumeration downward from (A, 0) by module-position
/// mutations. Mutation edges are the covering relations.
pub fn enumerate_stt(ctx: &mut SttContext, node_cap: usize) -> Result<SttPoset> {
    let seed = ctx.rng.seed();
    let n = ctx.simple_count();
    let basic_regular = ctx.module_of_pims(&(0..n).collect::<Vec<_>>());
    let zero = Module::zero(ctx.algebra.clone());
    let (root, root_cert) = validate_pair(ctx, &basic_regular, &zero)?;
    let mut nodes: Vec<SttNode> = Vec::new();
    let mut index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    let node_dims = |ctx: &SttContext, pair: &SttPair| -> (Vec<usize>, Vec<usize>) {
        (
            pair.m_classes
                .iter()
                .map(|&c| ctx.registry[c].dim)
                .collect(),
            pair.p_slots.iter().map(|&s| ctx.pims[s].dim).collect(),
        )
    };
    let (m_dims, p_dims) = node_dims(ctx, &root);
    index.insert(root.key(), 0);
    nodes.push(SttNode {
        pair: root,
        certificates: root_cert,
        m_dims,
        p_dims,
    });
    queue.push(0);
    let mut cap_hit = false;
    let mut head = 0usize;
    while head < queue.len() {
        let cur_idx = queue[head];
        head += 1;
        let cur = nodes[cur_idx].pair.clone();
        for pos in 0..cur.m_classes.len() {
            // positions whose exchange partner lies above yield no downward
            // candidate; those covers are recorded from the upper node
            let mut cands = mutate_down_candidates(ctx, &cur, pos)?;
            let Some(next) = cands.pop() else { continue };
            let key = next.key();
            let to = match index.get(&key) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= node_cap {
                        cap_hit = true;
                        continue;
                    }
                    let m = ctx.module_of_classes(&next.m_classes);
                    let p = ctx.module_of_pims(&next.p_slots);
                    let (pair, cert) = validate_pair(ctx, &m, &p)?;
                    debug_assert_eq!(pair, next);
                    let (m_dims, p_dims) = node_dims(ctx, &pair);
                    let i = nodes.len();
                    index.insert(key, i);
                    nodes.push(SttNode {
                        pair,
                        certificates: cert,
                        m_dims,
                        p_dims,
                    });
                    queue.push(i);
                    i
                }
            };
            edges.push((cur_idx, to));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(SttPoset {
        nodes,
        edges,
        complete: !cap_hit,
        cap_hit,
        seed,
    })
}

// ---------------------------------------------------------------------------
// brute-force oracle

/// All submodules of a module: join closure of the cyclic submodules.
/// Errors when the lattice exceeds the cap.
pub fn all_submodules(m: &Module) -> Result<Vec<Subspace>> {
    let f = &m.algebra.field;
    let q = f.q() as u64;
    let total = q
        .checked_pow(m.dim as u32)
        .ok_or_else(|| Error::SearchOverflow("vector space too large".into()))?;
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut subs: Vec<Subspace> = vec![Subspace::zero(m.dim)];
    seen.insert(Vec::new());
    // cyclic submodules, enumerating representatives with leading coeff 1
    for code in 1..total {
        let mut v = vec![0u32; m.dim];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % q) as u32;
            c /= q;
        }
        if v.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue; // normalize projectively
        }
        let w = m.spin(&[v]);
        if seen.insert(w.basis.data.clone()) {
            subs.push(w);
            if subs.len() > ORACLE_SUBMODULE_CAP {
                return Err(Error::SearchOverflow("submodule lattice too large".into()));
            }
        }
    }
    // join closure: every submodule is a join of cyclic ones, so closing
    // under joins with the cyclic generators reaches the whole lattice
    let cyclics: Vec<Subspace> = subs.clone();
    let mut frontier: Vec<Subspace> = subs.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            if a.dim() == m.dim {
                continue;
            }
            for c in &cyclics {
                if c.dim() <= a.dim() && a.contains(f, c) {
                    continue;
                }
                let j = a.sum(f, c)?;
                if seen.insert(j.basis.data.clone()) {
                    next.push(j.clone());
                    subs.push(j);
                    if subs.len() > ORACLE_SUBMODULE_CAP {
                        return Err(Error::SearchOverflow("submodule lattice too large".into()));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(subs)
}

/// Independent enumeration: quotients of (sum of PIMs)^2 filtered through
/// the pair axioms against every projective complement, then revalidated
/// through validate_pair. Exhaustive within the stated search space (module
/// parts whose projective cover uses each PIM at most twice), which covers
/// every algebra in the test matrix.
pub fn brute_force_stt_oracle(ctx: &mut SttContext) -> Result<Vec<SttPair>> {
    let n = ctx.simple_count();
    let one_of_each = ctx.module_of_pims(&(0..n).collect::<Vec<_>>());
    let x = Module::direct_sum(&[&one_of_each, &one_of_each]);
    let subs = all_submodules(&x)?;
    let mut found: BTreeSet<SttPair> = BTreeSet::new();
    let mut seen_class_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in &subs {
        let (quot, _) = x.quotient(u)?;
        let dec = decompose(&quot, &mut ctx.rng)?;
        let mut classes = Vec::new();
        for (summand, _) in &dec.summands {
            classes.push(ctx.intern(summand.clone())?);
        }
        classes.sort_unstable();
        classes.dedup();
        if classes.len() > n || !seen_class_sets.insert(classes.clone()) {
            continue;
        }
        let m = ctx.module_of_classes(&classes);
        // tau-rigidity once per candidate module
        if !is_tau_rigid(&m)? {
            continue;
        }
        // all projective complements of the right size
        for mask in 0u32..(1 << n) {
            let p_slots: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if classes.len() + p_slots.len() != n {
                continue;
            }
            let p = ctx.module_of_pims(&p_slots);
            if p.dim > 0 && m.dim > 0 && hom_dim(&p, &m) != 0 {
                continue;
            }
            // full revalidation with certificates
            if let Ok((pair, _)) = validate_pair(ctx, &m, &p) {
                found.insert(pair);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_algebra;
    use crate::field::Field;
    use crate::group;

    fn ctx_for(alg: Arc<Algebra>, seed: u64) -> SttContext {
        SttContext::new(alg, seed).unwrap()
    }

    fn kc2_ctx() -> SttContext {
        let a = group_algebra(
            &group::cyclic(2).unwrap(),
            Arc::new(Field::with_default_poly(2, 1).unwrap()),
        )
        .unwrap();
        ctx_for(a, 1)
    }

    fn kd6_ctx() -> SttContext {
        let a = group_algebra(
            &group::dihedral(3).unwrap(),
            Arc::new(Field::with_default_poly(2, 1).unwrap()),
        )
        .unwrap();
        ctx_for(a, 2)
    }

    #[test]
    fn tau_rigidity_examples() {
        let mut ctx = kc2_ctx();
        let regular = Module::regular(&ctx.algebra);
        assert!(is_tau_rigid(&regular).unwrap());
        assert!(is_tau_rigid(&Module::zero(ctx.algebra.clone())).unwrap());
        // k + kC2 is not tau-rigid: Hom(k, tau k) = Hom(k, k) != 0
        let triv = Module::trivial(&ctx.algebra).unwrap();
        let m = Module::direct_sum(&[&triv, &regular]);
        assert!(!is_tau_rigid(&m).unwrap());
        let zero = Module::zero(ctx.algebra.clone());
        assert!(validate_pair(&mut ctx, &m, &zero).is_err());
    }

    #[test]
    fn extremal_pairs_validate() {
        let mut ctx = kc2_ctx();
        let regular = Module::regular(&ctx.algebra);
        let zero = Module::zero(ctx.algebra.clone());
        let (max, cert) = validate_pair(&mut ctx, &regular, &zero).unwrap();
        assert_eq!(cert.m_count, 1);
        assert_eq!(max.p_slots.len(), 0);
        let (min, _) = validate_pair(&mut ctx, &zero, &regular).unwrap();
        assert_eq!(min.m_classes.len(), 0);
        assert_eq!(min.p_slots, vec![0]);
    }

    #[test]
    fn enumerate_local_algebras() {
        // kC2, kC4, kQ8 at p=2 all have exactly the two trivial pairs
        let f2 = || Arc::new(Field::with_default_poly(2, 1).unwrap());
        for g in [
            group::cyclic(2).unwrap(),
            group::cyclic(4).unwrap(),
            group::quaternion8().unwrap(),
        ] {
            let a = group_algebra(&g, f2()).unwrap();
            let mut ctx = ctx_for(a, 3);
            let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
            assert!(poset.complete);
            assert_eq!(poset.nodes.len(), 2);
            assert!(poset.maximum().is_some());
            assert!(poset.minimum().is_some());
            assert_eq!(poset.edges.len(), 1);
        }
    }

    #[test]
    fn enumerate_kd6() {
        let mut ctx = kd6_ctx();
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        assert!(poset.complete);
        // two blocks, one local and one simple: 2 x 2 nodes
        assert_eq!(poset.nodes.len(), 4);
        // maximum above everything, minimum below everything
        let max = poset.maximum().unwrap();
        let min = poset.minimum().unwrap();
        for n in &poset.nodes {
            assert!(stt_geq(&ctx, &poset.nodes[max].pair, &n.pair));
            assert!(stt_geq(&ctx, &n.pair, &poset.nodes[min].pair));
        }
        // every node M is projective here
        for n in &poset.nodes {
            let m = ctx.module_of_classes(&n.pair.m_classes);
            if m.dim > 0 {
                assert!(module::is_projective(&m).unwrap());
            }
        }
    }

    #[test]
    fn mutation_is_involutive() {
        let mut ctx = kd6_ctx();
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        for node in poset.nodes.clone() {
            let pair = node.pair;
            let len = pair.m_classes.len() + pair.p_slots.len();
            for pos in 0..len {
                let other = mutate(&mut ctx, &pair, pos).unwrap();
                assert_ne!(other, pair);
                // find the changed summand's position in the other pair and
                // mutate back
                let back_pos = find_changed_position(&pair, &other);
                let back = mutate(&mut ctx, &other, back_pos).unwrap();
                assert_eq!(back, pair);
            }
        }
    }

    /// Position in `other` of the summand not shared with `orig`.
    fn find_changed_position(orig: &SttPair, other: &SttPair) -> usize {
        for (i, c) in other.m_classes.iter().enumerate() {
            if !orig.m_classes.contains(c) {
                return i;
            }
        }
        for (i, s) in other.p_slots.iter().enumerate() {
            if !orig.p_slots.contains(s) {
                return other.m_classes.len() + i;
            }
        }
        panic!("pairs do not differ");
    }

    #[test]
    fn kc2_mutation_swaps_extremes() {
        let mut ctx = kc2_ctx();
        let regular = Module::regular(&ctx.algebra);
        let zero = Module::zero(ctx.algebra.clone());
        let (max, _) = validate_pair(&mut ctx, &regular, &zero).unwrap();
        let down = mutate(&mut ctx, &max, 0).unwrap();
        assert!(down.m_classes.is_empty());
        assert_eq!(down.p_slots, vec![0]);
        let up = mutate(&mut ctx, &down, 0).unwrap();
        assert_eq!(up, max);
    }

    #[test]
    fn air_round_trip_and_orders() {
        let mut ctx = kd6_ctx();
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        let pairs: Vec<SttPair> = poset.nodes.iter().map(|n| n.pair.clone()).collect();
        let complexes: Vec<TwoTermComplex> = pairs
            .iter()
            .map(|p| stt_to_2silt(&ctx, p).unwrap())
            .collect();
        for (pair, t) in pairs.iter().zip(&complexes) {
            assert!(is_two_term_silting(&mut ctx, t).unwrap());
            let (back, _) = twosilt_to_stt(&mut ctx, t).unwrap();
            assert_eq!(&back, pair);
            // symmetric algebra: silting complexes are tilting
            assert_eq!(homotopy_hom(&ctx, t, t, -1).unwrap(), 0);
        }
        // order isomorphism on all pairs
        for (i, a) in pairs.iter().enumerate() {
            for (j, b) in pairs.iter().enumerate() {
                let lhs = stt_geq(&ctx, a, b);
                let rhs = silt_geq(&ctx, &complexes[i], &complexes[j]).unwrap();
                assert_eq!(lhs, rhs, "order mismatch at ({i}, {j})");
            }
        }
    }

    #[test]
    fn single_pim_complex_is_not_silting() {
        let mut ctx = kd6_ctx();
        // (0 -> P0) for a single PIM: presilting but |T| < |A|
        let p0 = ctx.pims[0].clone();
        let t = TwoTermComplex {
            m1_slots: vec![],
            m0_slots: vec![0],
            d: Mat::zero(p0.dim, 0),
        };
        assert!(!is_two_term_silting(&mut ctx, &t).unwrap());
        // (0 -> A) and (A -> 0) are silting
        let all: Vec<usize> = (0..ctx.simple_count()).collect();
        let whole = ctx.module_of_pims(&all);
        let t_max = TwoTermComplex {
            m1_slots: vec![],
            m0_slots: all.clone(),
            d: Mat::zero(whole.dim, 0),
        };
        let t_min = TwoTermComplex {
            m1_slots: all.clone(),
            m0_slots: vec![],
            d: Mat::zero(0, whole.dim),
        };
        assert!(is_two_term_silting(&mut ctx, &t_max).unwrap());
        assert!(is_two_term_silting(&mut ctx, &t_min).unwrap());
        // Hom(T, T[1]) = 0 for the stalk complexes and identity in degree 0
        assert!(homotopy_hom(&ctx, &t_max, &t_max, 1).unwrap() == 0);
        assert!(homotopy_hom(&ctx, &t_max, &t_max, 0).unwrap() >= 1);
        // complexes in disjoint degrees after shift
        assert_eq!(homotopy_hom(&ctx, &t_max, &t_min, 1).unwrap(), 0);
    }

    #[test]
    fn oracle_agrees_with_enumeration_small() {
        for (g, fld, seed) in [
            (
                group::cyclic(2).unwrap(),
                Field::with_default_poly(2, 1).unwrap(),
                11u64,
            ),
            (
                group::cyclic(4).unwrap(),
                Field::with_default_poly(2, 1).unwrap(),
                12,
            ),
            (
                group::cyclic(3).unwrap(),
                Field::with_default_poly(2, 2).unwrap(),
                13,
            ),
        ] {
            let a = group_algebra(&g, Arc::new(fld)).unwrap();
            let mut ctx = ctx_for(a, seed);
            let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
            let oracle = brute_force_stt_oracle(&mut ctx).unwrap();
            let mut enum_pairs: Vec<SttPair> = poset.nodes.iter().map(|n| n.pair.clone()).collect();
            enum_pairs.sort();
            assert_eq!(enum_pairs, oracle);
        }
    }

    #[test]
    fn semisimple_poset_is_boolean_lattice() {
        // kC3 over F4: 3 simples, pairs = subsets: 8 nodes
        let a = group_algebra(
            &group::cyclic(3).unwrap(),
            Arc::new(Field::with_default_poly(2, 2).unwrap()),
        )
        .unwrap();
        let mut ctx = ctx_for(a, 21);
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        assert_eq!(poset.nodes.len(), 8);
        let oracle = brute_force_stt_oracle(&mut ctx).unwrap();
        assert_eq!(oracle.len(), 8);
    }

    #[test]
    fn dot_output_shape() {
        let mut ctx = kc2_ctx();
        let poset = enumerate_stt(&mut ctx, NODE_CAP).unwrap();
        let dot = poset.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("->"));
    }
}
