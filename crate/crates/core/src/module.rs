//! Finite-dimensional left modules over a structure-constant algebra:
//! hom/ext computation, composition factors (meataxe), radicals, simples and
//! projective covers, minimal projective presentations, the Nakayama
//! functor and the Auslander-Reiten translate, indecomposable
//! decomposition, and transport along algebra surjections.

use crate::algebra::{self, Algebra, AlgebraSurjection, AlgebraTag, Ideal};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, kernel, rref, Mat, Subspace};
use crate::poly::{self, Poly};
use crate::rng::Rng;
use std::sync::Arc;

/// Retry budget for Las Vegas splitting steps.
const SPLIT_ATTEMPTS: u32 = 64;
/// Exhaustive kernel enumeration bound in the simplicity test.
const NORTON_ENUM_CAP: u64 = 4096;
#[derive(Debug, Clone)]
pub struct Module {
    pub algebra: Arc<Algebra>,
    pub dim: usize,
    /// one action matrix per algebra basis element, acting on column vectors
    pub action: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && same_algebra(self, other)
    }
}
impl Eq for Module {}

pub fn same_algebra(a: &Module, b: &Module) -> bool {
    Arc::ptr_eq(&a.algebra, &b.algebra) || a.algebra == b.algebra
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, action: Vec<Mat>) -> Result<Module> {
        let dim = action.first().map_or(0, |m| m.rows);
        let module = Module {
            algebra,
            dim,
            action,
        };
        module.validate()?;
        Ok(module)
    }

    /// For constructions that preserve validity by exact linear algebra
    /// (submodules, quotients, direct sums). Validation still runs in debug
    /// builds.
    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Module {
        let m = Module {
            algebra,
            dim,
            action,
        };
        debug_assert!(m.validate().is_ok());
        m
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        if self.action.len() != alg.dim {
            return Err(Error::BadAction);
        }
        for a in &self.action {
            if a.rows != self.dim || a.cols != self.dim {
                return Err(Error::BadAction);
            }
        }
        if self.dim == 0 {
            return Ok(());
        }
        let f = &alg.field;
        if self.act_mat(&alg.unit) != Mat::identity(self.dim) {
            return Err(Error::BadAction);
        }
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = self.action[i].mul(f, &self.action[j]);
                let rhs = self.act_mat(alg.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::BadAction);
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let action = (0..algebra.dim).map(|_| Mat::zero(0, 0)).collect();
        Module {
            algebra,
            dim: 0,
            action,
        }
    }

    /// The regular module: the algebra acting on itself by left
    /// multiplication.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let action = (0..algebra.dim)
            .map(|i| {
                let mut e = vec![0u32; algebra.dim];
                e[i] = 1;
                algebra.left_mult_mat(&e)
            })
            .collect();
        Module {
            algebra: algebra.clone(),
            dim: algebra.dim,
            action,
        }
    }

    /// The trivial module of a group algebra: every group element acts as 1.
    pub fn trivial(algebra: &Arc<Algebra>) -> Result<Module> {
        if algebra.tag != AlgebraTag::GroupAlgebra {
            return Err(Error::Invariant(
                "trivial module needs a group algebra".into(),
            ));
        }
        let action = (0..algebra.dim).map(|_| Mat::identity(1)).collect();
        Module::new(algebra.clone(), action)
    }

    /// Matrix of the action of an algebra element given by coordinates.
    pub fn act_mat(&self, a: &[u32]) -> Mat {
        let f = &self.algebra.field;
        let mut out = Mat::zero(self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(f, &self.action[i].scale(f, c));
            }
        }
        out
    }

    pub fn act_on(&self, a: &[u32], v: &[u32]) -> Vec<u32> {
        self.act_mat(a).apply(&self.algebra.field, v)
    }

    pub fn direct_sum(parts: &[&Module]) -> Module {
        assert!(!parts.is_empty());
        let alg = parts[0].algebra.clone();
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim)
            .map(|i| {
                let blocks: Vec<&Mat> = parts.iter().map(|m| &m.action[i]).collect();
                Mat::block_diag(&blocks)
            })
            .collect();
        Module::new_unchecked(alg, dim, action)
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, seeds: &[Vec<u32>]) -> Subspace {
        spin_under(&self.algebra.field, &self.action, seeds, self.dim)
    }

    /// Restrict the action to an invariant subspace; errors if not invariant.
    pub fn submodule(&self, space: &Subspace) -> Result<Module> {
        let f = &self.algebra.field;
        let k = space.dim();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut m = Mat::zero(k, k);
            for j in 0..k {
                let img = a.apply(f, space.basis.row(j));
                let coords = space
                    .coords_of(f, &img)
                    .ok_or_else(|| Error::Invariant("subspace not invariant".into()))?;
                for (r, &c) in coords.iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            action.push(m);
        }
        Ok(Module::new_unchecked(self.algebra.clone(), k, action))
    }

    /// Quotient by an invariant subspace; returns the module and the
    /// projection matrix (new_dim x dim).
    pub fn quotient(&self, space: &Subspace) -> Result<(Module, Mat)> {
        let f = &self.algebra.field;
        let free = space.free_cols();
        let qd = free.len();
        let mut proj = Mat::zero(qd, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u32; self.dim];
            ej[j] = 1;
            let red = space.reduce_vec(f, &ej);
            for (qi, &fc) in free.iter().enumerate() {
                proj.set(qi, j, red[fc]);
            }
        }
        let lift = |v: &[u32]| -> Vec<u32> {
            let mut out = vec![0u32; self.dim];
            for (qi, &fc) in free.iter().enumerate() {
                out[fc] = v[qi];
            }
            out
        };
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut m = Mat::zero(qd, qd);
            for j in 0..qd {
                let mut ej = vec![0u32; qd];
                ej[j] = 1;
                let img = proj.apply(f, &a.apply(f, &lift(&ej)));
                for (r, &c) in img.iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            action.push(m);
        }
        // invariance check: action must kill the subspace
        for a in &self.action {
            for i in 0..space.dim() {
                let img = a.apply(f, space.basis.row(i));
                if !space.contains_vec(f, &img) {
                    return Err(Error::Invariant("subspace not invariant".into()));
                }
            }
        }
        Ok((
            Module::new_unchecked(self.algebra.clone(), qd, action),
            proj,
        ))
    }

    /// J(A) * M as a subspace.
    pub fn radical_subspace_of(&self) -> Result<Subspace> {
        let j = radical_subspace(&self.algebra)?;
        let f = &self.algebra.field;
        let mut rows = Vec::new();
        for i in 0..j.dim() {
            let am = self.act_mat(j.basis.row(i));
            for c in 0..self.dim {
                rows.push(am.col(c));
            }
        }
        Ok(Subspace::from_vectors(f, &rows, self.dim))
    }

    /// top(M) = M / J(A) M with the projection.
    pub fn top(&self) -> Result<(Module, Mat)> {
        let jm = self.radical_subspace_of()?;
        self.quotient(&jm)
    }

    pub fn content_hash(&self) -> u64 {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for a in &self.action {
            for &v in &a.data {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        crate::fnv1a64(&bytes)
    }
}

fn spin_under(f: &Field, action: &[Mat], seeds: &[Vec<u32>], ambient: usize) -> Subspace {
    let mut basis = linalg::EchelonBasis::new(ambient);
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if let Some(red) = basis.insert(f, s) {
            queue.push(red);
        }
    }
    while let Some(v) = queue.pop() {
        if basis.dim() == ambient {
            break;
        }
        for a in action {
            let img = a.apply(f, &v);
            if let Some(red) = basis.insert(f, &img) {
                queue.push(red);
            }
        }
    }
    basis.into_subspace(f)
}

// ---------------------------------------------------------------------------
// hom and ext

/// Basis of the intertwiner space Hom(M, N), canonicalized by RREF of the
/// flattened matrices. Kernels are intersected incrementally so the search
/// space shrinks as constraints are applied.
pub fn hom_space(m: &Module, n: &Module) -> Vec<Mat> {
    assert!(
        same_algebra(m, n),
        "hom between modules over different algebras"
    );
    let f = &m.algebra.field;
    if m.dim == 0 || n.dim == 0 {
        return vec![];
    }
    let (md, nd) = (m.dim, n.dim);
    // first nontrivial constraint directly as a Kronecker-structured
    // matrix over the flattened unknowns: (X A - B X)[r,c] with X[u,v]
    // contributing A[v,c] when u = r and -B[r,u] when v = c
    let first = (0..m.algebra.dim)
        .find(|&i| !(m.action[i] == Mat::identity(md) && n.action[i] == Mat::identity(nd)))
        .unwrap_or(0);
    let (a0, b0) = (&m.action[first], &n.action[first]);
    let mut cons0 = Mat::zero(nd * md, nd * md);
    for r in 0..nd {
        for c in 0..md {
            let row = r * md + c;
            for v in 0..md {
                let coeff = a0.get(v, c);
                if coeff != 0 {
                    let col = r * md + v;
                    let cur = cons0.get(row, col);
                    cons0.set(row, col, f.add(cur, coeff));
                }
            }
            for u in 0..nd {
                let coeff = b0.get(r, u);
                if coeff != 0 {
                    let col = u * md + c;
                    let cur = cons0.get(row, col);
                    cons0.set(row, col, f.sub(cur, coeff));
                }
            }
        }
    }
    let ker0 = kernel(f, &cons0);
    let mut cand: Vec<Mat> = (0..ker0.dim())
        .map(|r| Mat {
            rows: nd,
            cols: md,
            data: ker0.basis.row(r).to_vec(),
        })
        .collect();
    for i in 0..m.algebra.dim {
        if i == first {
            continue;
        }
        if cand.is_empty() {
            break;
        }
        let (am, an) = (&m.action[i], &n.action[i]);
        // constraint: X * am - an * X = 0 applied to each candidate
        let mut cons = Mat::zero(nd * md, cand.len());
        for (j, x) in cand.iter().enumerate() {
            let d = x.mul(f, am).sub(f, &an.mul(f, x));
            for (r, &val) in d.data.iter().enumerate() {
                cons.set(r, j, val);
            }
        }
        let ker = kernel(f, &cons);
        let mut next = Vec::with_capacity(ker.dim());
        for r in 0..ker.dim() {
            let coords = ker.basis.row(r);
            let mut x = Mat::zero(nd, md);
            for (j, &c) in coords.iter().enumerate() {
                if c != 0 {
                    x = x.add(f, &cand[j].scale(f, c));
                }
            }
            next.push(x);
        }
        cand = next;
    }
    if cand.is_empty() {
        return cand;
    }
    // canonicalize
    let flat = Mat::from_rows(cand.iter().map(|x| x.data.clone()).collect());
    let (red, rank, _) = rref(f, &flat);
    (0..rank)
        .map(|r| Mat {
            rows: nd,
            cols: md,
            data: red.row(r).to_vec(),
        })
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_space(m, n).len()
}

/// Certified isomorphism test between modules known to be indecomposable:
/// M = N iff some composite g.f of hom-basis elements avoids the radical
/// of End(M). In a local endomorphism ring such a composite is invertible,
/// which forces M to split off N; conversely every composite through a
/// nonisomorphic indecomposable is radical.
pub fn indec_isomorphic(m: &Module, n: &Module) -> Result<Option<Mat>> {
    if !same_algebra(m, n) || m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Mat::zero(0, 0)));
    }
    let f = &m.algebra.field;
    let fwd = hom_space(m, n);
    if fwd.is_empty() {
        return Ok(None);
    }
    for h in &fwd {
        if h.inverse(f).is_some() {
            return Ok(Some(h.clone()));
        }
    }
    let bwd = hom_space(n, m);
    if bwd.is_empty() {
        return Ok(None);
    }
    let end_m = hom_space(m, m);
    let e_alg = endomorphism_algebra(m, &end_m)?;
    let rad = radical_subspace(&e_alg)?;
    // radical elements of End(M) as flattened matrices
    let flat = Mat::from_rows(end_m.iter().map(|h| h.data.clone()).collect());
    let mut rad_rows = Vec::new();
    for i in 0..rad.dim() {
        let coords = rad.basis.row(i);
        let mut v = vec![0u32; m.dim * m.dim];
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                for (x, &fv) in v.iter_mut().zip(flat.row(k)) {
                    *x = f.add(*x, f.mul(c, fv));
                }
            }
        }
        rad_rows.push(v);
    }
    let rad_span = Subspace::from_vectors(f, &rad_rows, m.dim * m.dim);
    for fi in &fwd {
        for gj in &bwd {
            let comp = gj.mul(f, fi);
            if !rad_span.contains_vec(f, &comp.data) {
                // g.f invertible, so f is a split mono between equal dims
                debug_assert!(fi.inverse(f).is_some());
                return Ok(Some(fi.clone()));
            }
        }
    }
    Ok(None)
}

/// Certified isomorphism test for arbitrary modules. Fast paths: basis
/// elements and a few random combinations; the complete route decomposes
/// both sides and matches indecomposable summands, assembling a witness
/// from the adapted bases.
pub fn is_isomorphic(m: &Module, n: &Module, rng: &mut Rng) -> Result<Option<Mat>> {
    if !same_algebra(m, n) || m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Mat::zero(0, 0)));
    }
    let f = &m.algebra.field;
    let homs = hom_space(m, n);
    if homs.is_empty() {
        return Ok(None);
    }
    for h in &homs {
        if h.inverse(f).is_some() {
            return Ok(Some(h.clone()));
        }
    }
    for _ in 0..64 {
        let mut x = Mat::zero(n.dim, m.dim);
        for hb in &homs {
            let c = f.random(rng);
            if c != 0 {
                x = x.add(f, &hb.scale(f, c));
            }
        }
        if x.inverse(f).is_some() {
            return Ok(Some(x));
        }
    }
    // complete route: Krull-Schmidt matching of indecomposable summands
    let dm = decompose(m, rng)?;
    let dn = decompose(n, rng)?;
    if dm.leaves.len() != dn.leaves.len() {
        return Ok(None);
    }
    // match each m-leaf to an unused n-leaf of the same iso class
    let m_leaf_mods: Vec<Module> = dm
        .leaves
        .iter()
        .map(|(s, _)| m.submodule(s))
        .collect::<Result<_>>()?;
    let n_leaf_mods: Vec<Module> = dn
        .leaves
        .iter()
        .map(|(s, _)| n.submodule(s))
        .collect::<Result<_>>()?;
    let mut used = vec![false; n_leaf_mods.len()];
    let mut matching: Vec<(usize, Mat)> = Vec::new(); // m-leaf i -> (n-leaf j, iso)
    for lm in &m_leaf_mods {
        let mut found = None;
        for (j, ln) in n_leaf_mods.iter().enumerate() {
            if used[j] || ln.dim != lm.dim {
                continue;
            }
            if let Some(w) = indec_isomorphic(lm, ln)? {
                used[j] = true;
                found = Some((j, w));
                break;
            }
        }
        match found {
            Some(pair) => matching.push(pair),
            None => return Ok(None),
        }
    }
    // assemble the global witness through the adapted bases
    let stack_rows = |dec: &Decomposition| -> Mat {
        let mut rows = Vec::new();
        for (s, _) in &dec.leaves {
            for i in 0..s.dim() {
                rows.push(s.basis.row(i).to_vec());
            }
        }
        Mat::from_rows(rows)
    };
    let bm = stack_rows(&dm).transpose(); // columns = m leaf basis vectors
    let bn = stack_rows(&dn).transpose();
    let bm_inv = bm
        .inverse(f)
        .ok_or_else(|| Error::Invariant("leaf basis singular".into()))?;
    // block map in leaf coordinates, routed through the matching
    let mut block = Mat::zero(n.dim, m.dim);
    let m_offsets: Vec<usize> = {
        let mut off = 0;
        dm.leaves
            .iter()
            .map(|(s, _)| {
                let o = off;
                off += s.dim();
                o
            })
            .collect()
    };
    let n_offsets: Vec<usize> = {
        let mut off = 0;
        dn.leaves
            .iter()
            .map(|(s, _)| {
                let o = off;
                off += s.dim();
                o
            })
            .collect()
    };
    for (i, (j, w)) in matching.iter().enumerate() {
        for r in 0..w.rows {
            for c in 0..w.cols {
                block.set(n_offsets[*j] + r, m_offsets[i] + c, w.get(r, c));
            }
        }
    }
    let witness = bn.mul(f, &block).mul(f, &bm_inv);
    // exact verification of the assembled witness
    if witness.inverse(f).is_none() {
        return Err(Error::Invariant("assembled witness is singular".into()));
    }
    for (am, an) in m.action.iter().zip(&n.action) {
        if witness.mul(f, am) != an.mul(f, &witness) {
            return Err(Error::Invariant(
                "assembled witness does not intertwine".into(),
            ));
        }
    }
    Ok(Some(witness))
}

// ---------------------------------------------------------------------------
// minimal polynomial and Fitting tools

/// Minimal polynomial of a square matrix, via incremental dependency search
/// on its powers.
pub fn min_poly_of_matrix(f: &Field, m: &Mat) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return vec![1]; // unit polynomial for the empty matrix
    }
    // rows: reduced flattened powers, augmented with combination tracking
    let mut reduced: Vec<(Vec<u32>, Vec<u32>)> = Vec::new(); // (flat, combo)
    let mut pivots: Vec<usize> = Vec::new();
    let mut power = Mat::identity(n);
    for k in 0..=n {
        let mut flat = power.data.clone();
        let mut combo = vec![0u32; n + 2];
        combo[k] = 1;
        // reduce by existing rows
        for (idx, (rflat, rcombo)) in reduced.iter().enumerate() {
            let p = pivots[idx];
            let c = flat[p];
            if c != 0 {
                for (x, &rv) in flat.iter_mut().zip(rflat.iter()) {
                    *x = f.sub(*x, f.mul(c, rv));
                }
                for (x, &rv) in combo.iter_mut().zip(rcombo.iter()) {
                    *x = f.sub(*x, f.mul(c, rv));
                }
            }
        }
        if let Some(p) = flat.iter().position(|&x| x != 0) {
            let inv = f.inv(flat[p]);
            for x in flat.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for x in combo.iter_mut() {
                *x = f.mul(*x, inv);
            }
            reduced.push((flat, combo));
            pivots.push(p);
            power = power.mul(f, m);
        } else {
            // dependency: combo gives the minimal polynomial coefficients
            let mut mp: Poly = combo[..=k].to_vec();
            poly::trim(&mut mp);
            return poly::make_monic(f, &mp);
        }
    }
    unreachable!("minimal polynomial must appear by degree n");
}

/// Evaluate a polynomial at a matrix.
pub fn eval_poly_at_matrix(f: &Field, p: &Poly, m: &Mat) -> Mat {
    let n = m.rows;
    let mut acc = Mat::zero(n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(f, m);
        if c != 0 {
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
    }
    acc
}

/// Re-export of polynomial factorization for neighbors of this module.
pub fn factor_poly(f: &Field, p: &Poly, rng: &mut Rng) -> Vec<(Poly, usize)> {
    poly::factor(f, p, rng)
}

// ---------------------------------------------------------------------------
// meataxe: composition factors

/// Norton-style simplicity test / submodule finder. `Ok(None)` certifies
/// simplicity.
pub fn find_proper_submodule(m: &Module, rng: &mut Rng) -> Result<Option<Subspace>> {
    if m.dim <= 1 {
        return Ok(None);
    }
    let f = &m.algebra.field;
    let q = f.q() as u64;
    let transposed: Vec<Mat> = m.action.iter().map(|a| a.transpose()).collect();
    for _ in 0..SPLIT_ATTEMPTS {
        // random element of the acting algebra
        let coeffs: Vec<u32> = (0..m.algebra.dim).map(|_| f.random(rng)).collect();
        let theta = m.act_mat(&coeffs);
        let mp = min_poly_of_matrix(f, &theta);
        if poly::deg(&mp) == 0 {
            continue;
        }
        let factors = poly::factor(f, &mp, rng);
        for (fac, _) in &factors {
            let ft = eval_poly_at_matrix(f, fac, &theta);
            let nul = kernel(f, &ft);
            debug_assert!(nul.dim() > 0);
            let dual_ft = ft.transpose();
            let dual_nul = kernel(f, &dual_ft);
            if nul.dim() == poly::deg(fac) {
                // single-vector Norton test
                let v = nul.basis.row(0).to_vec();
                let w = m.spin(&[v]);
                if w.dim() < m.dim {
                    return Ok(Some(w));
                }
                let wv = dual_nul.basis.row(0).to_vec();
                let wspan = spin_under(f, &transposed, &[wv], m.dim);
                if wspan.dim() < m.dim {
                    return Ok(Some(perp_submodule(m, &wspan)?));
                }
                return Ok(None);
            }
            let count = q.checked_pow(nul.dim() as u32);
            if let Some(total) = count.filter(|&t| t <= NORTON_ENUM_CAP) {
                // exhaustive versions of both tests
                for code in 1..total {
                    let v = combo_from_code(f, &nul, code);
                    let w = m.spin(&[v]);
                    if w.dim() < m.dim {
                        return Ok(Some(w));
                    }
                }
                let dtotal = q.pow(dual_nul.dim() as u32);
                for code in 1..dtotal {
                    let wv = combo_from_code(f, &dual_nul, code);
                    let wspan = spin_under(f, &transposed, &[wv], m.dim);
                    if wspan.dim() < m.dim {
                        return Ok(Some(perp_submodule(m, &wspan)?));
                    }
                }
                return Ok(None);
            }
            // nullity too large to certify with this factor; try the next
        }
    }
    Err(Error::SplitBudget {
        attempts: SPLIT_ATTEMPTS,
        seed: rng.seed(),
    })
}

fn combo_from_code(f: &Field, space: &Subspace, mut code: u64) -> Vec<u32> {
    let q = f.q() as u64;
    let mut v = vec![0u32; space.ambient];
    for i in 0..space.dim() {
        let c = (code % q) as u32;
        code /= q;
        if c != 0 {
            for j in 0..space.ambient {
                v[j] = f.add(v[j], f.mul(c, space.basis.get(i, j)));
            }
        }
    }
    v
}

/// Annihilator of a subspace of the dual module is a submodule.
fn perp_submodule(m: &Module, dual_span: &Subspace) -> Result<Subspace> {
    let f = &m.algebra.field;
    let u = kernel(f, &dual_span.basis);
    // sanity: invariance
    for a in &m.action {
        for i in 0..u.dim() {
            if !u.contains_vec(f, &a.apply(f, u.basis.row(i))) {
                return Err(Error::Invariant("perp space is not a submodule".into()));
            }
        }
    }
    if u.dim() == 0 || u.dim() == m.dim {
        return Err(Error::Invariant("perp space is not proper".into()));
    }
    Ok(u)
}

/// Composition factors with multiplicity, by recursive chopping.
pub fn composition_factors(m: &Module, rng: &mut Rng) -> Result<Vec<Module>> {
    if m.dim == 0 {
        return Ok(vec![]);
    }
    match find_proper_submodule(m, rng)? {
        None => Ok(vec![m.clone()]),
        Some(u) => {
            let sub = m.submodule(&u)?;
            let (quot, _) = m.quotient(&u)?;
            let mut out = composition_factors(&sub, rng)?;
            out.extend(composition_factors(&quot, rng)?);
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// radical, simples, projective covers

/// J(A) as the intersection of the annihilators of the simple quotients of
/// the regular module, cached on the algebra. Deterministic given the
/// algebra: the PRNG is seeded from its content hash.
pub fn radical_subspace(alg: &Arc<Algebra>) -> Result<Subspace> {
    if let Some(s) = alg.cache.radical.get() {
        return Ok(s.clone());
    }
    let f = &alg.field;
    let mut rng = Rng::new(alg.content_hash() ^ 0x7261646963616c);
    let regular = Module::regular(alg);
    let factors = composition_factors(&regular, &mut rng)?;
    // distinct simples
    let mut simples: Vec<Module> = Vec::new();
    for s in factors {
        let mut found = false;
        for t in &simples {
            if s.dim == t.dim && indec_isomorphic(&s, t)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            simples.push(s);
        }
    }
    simples.sort_by_key(|s| {
        (
            s.dim,
            s.action.iter().map(|a| a.data.clone()).collect::<Vec<_>>(),
        )
    });
    // J = intersection of annihilators
    let total_rows: usize = simples.iter().map(|s| s.dim * s.dim).sum();
    let mut big = Mat::zero(total_rows, alg.dim);
    let mut row0 = 0usize;
    for s in &simples {
        for i in 0..alg.dim {
            let a = &s.action[i];
            for (k, &v) in a.data.iter().enumerate() {
                big.set(row0 + k, i, v);
            }
        }
        row0 += s.dim * s.dim;
    }
    let j = kernel(f, &big);
    // exact nilpotency certificate
    let mut chain = j.clone();
    let mut steps = 0usize;
    while !chain.is_zero() {
        if steps > alg.dim {
            return Err(Error::Invariant(
                "radical candidate is not nilpotent".into(),
            ));
        }
        chain = algebra::subspace_product(alg, &chain, &j);
        steps += 1;
    }
    let _ = alg
        .cache
        .simples
        .set(simples.iter().map(|s| (s.dim, s.action.clone())).collect());
    let _ = alg.cache.radical.set(j.clone());
    Ok(j)
}

pub fn simple_modules(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    radical_subspace(alg)?;
    let data = alg.cache.simples.get().expect("cached by radical_subspace");
    Ok(data
        .iter()
        .map(|(dim, action)| Module {
            algebra: alg.clone(),
            dim: *dim,
            action: action.clone(),
        })
        .collect())
}

/// All simple modules must have 1-dimensional endomorphism algebras;
/// otherwise the field does not split the algebra.
pub fn splitting_check(alg: &Arc<Algebra>) -> Result<()> {
    let simples = simple_modules(alg)?;
    let mut l = 1u64;
    let mut split = true;
    for s in &simples {
        let d = hom_dim(s, s) as u64;
        if d > 1 {
            split = false;
        }
        l = l / gcd_u64(l, d) * d;
    }
    if split {
        Ok(())
    } else {
        let f = &alg.field;
        Err(Error::NonSplit {
            p: f.p(),
            r: f.r(),
            suggested_r: (f.r() as u64 * l).min(u32::MAX as u64) as u32,
        })
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Projective indecomposables, one per simple, as Ae for a lifted
/// primitive idempotent e. Requires a splitting field.
pub fn pims(alg: &Arc<Algebra>) -> Result<Vec<Module>> {
    let idems = pim_idempotents(alg)?;
    let f = &alg.field;
    let regular = Module::regular(alg);
    let mut out = Vec::new();
    for e in &idems {
        let space = linalg::image(f, &alg.right_mult_mat(e));
        out.push(regular.submodule(&space)?);
    }
    Ok(out)
}

/// One primitive idempotent per simple, aligned with `simple_modules`.
pub fn pim_idempotents(alg: &Arc<Algebra>) -> Result<Vec<Vec<u32>>> {
    if let Some(v) = alg.cache.pim_idempotents.get() {
        return Ok(v.clone());
    }
    splitting_check(alg)?;
    let f = &alg.field;
    let simples = simple_modules(alg)?;
    let j = radical_subspace(alg)?;
    let j_ideal = Ideal::new(alg, j)?;
    let (q_alg, surj) = algebra::quotient_algebra(alg, &j_ideal)?;
    // Psi: A/J -> prod End(S_i), bijective over a splitting field
    let total: usize = simples.iter().map(|s| s.dim * s.dim).sum();
    if total != q_alg.dim {
        return Err(Error::Invariant(format!(
            "semisimple quotient dim {} != sum of squares {}",
            q_alg.dim, total
        )));
    }
    // section of the quotient: solve surj.matrix * x = e_k
    let mut psi = Mat::zero(total, q_alg.dim);
    for k in 0..q_alg.dim {
        let mut ek = vec![0u32; q_alg.dim];
        ek[k] = 1;
        let lift = linalg::solve(f, &surj.matrix, &ek)?;
        let mut row0 = 0usize;
        for s in &simples {
            let a = s.act_mat(&lift);
            for (idx, &v) in a.data.iter().enumerate() {
                psi.set(row0 + idx, k, v);
            }
            row0 += s.dim * s.dim;
        }
    }
    let mut idems = Vec::new();
    for i in 0..simples.len() {
        // target: matrix unit E_00 in factor i, zero elsewhere
        let mut target = vec![0u32; total];
        let offset: usize = simples[..i].iter().map(|t| t.dim * t.dim).sum();
        target[offset] = 1; // E_00 flattened at position (0,0)
        let eps = linalg::solve(f, &psi, &target)?;
        let start = linalg::solve(f, &surj.matrix, &eps)?;
        let e = algebra::lift_idempotent(alg, &start)?;
        if surj.apply(f, &e) != eps {
            return Err(Error::Invariant("idempotent lift moved its image".into()));
        }
        idems.push(e);
    }
    let _ = alg.cache.pim_idempotents.set(idems.clone());
    Ok(idems)
}

/// Simple modules and their projective covers, matched 1-1.
pub fn simples_and_projectives(alg: &Arc<Algebra>) -> Result<(Vec<Module>, Vec<Module>)> {
    let simples = simple_modules(alg)?;
    let projectives = pims(alg)?;
    // verify top(P_i) = S_i
    for (p, s) in projectives.iter().zip(&simples) {
        let (t, _) = p.top()?;
        if t.dim != s.dim || indec_isomorphic(&t, s)?.is_none() {
            return Err(Error::Invariant(
                "top of projective does not match its simple".into(),
            ));
        }
    }
    Ok((simples, projectives))
}

// ---------------------------------------------------------------------------
// projective presentations, Nakayama, tau

/// An explicit finite direct sum of projective indecomposables.
#[derive(Debug, Clone)]
pub struct ProjSum {
    /// index into `pims(alg)` per slot
    pub slots: Vec<usize>,
    pub module: Module,
    /// starting coordinate of each slot inside the sum
    pub offsets: Vec<usize>,
}

impl ProjSum {
    pub fn build(alg: &Arc<Algebra>, slots: Vec<usize>) -> Result<ProjSum> {
        let all = pims(alg)?;
        if slots.is_empty() {
            return Ok(ProjSum {
                slots,
                module: Module::zero(alg.clone()),
                offsets: vec![],
            });
        }
        let parts: Vec<&Module> = slots.iter().map(|&i| &all[i]).collect();
        let module = Module::direct_sum(&parts);
        let mut offsets = Vec::with_capacity(slots.len());
        let mut off = 0usize;
        for p in &parts {
            offsets.push(off);
            off += p.dim;
        }
        Ok(ProjSum {
            slots,
            module,
            offsets,
        })
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// Multiset of slot indices, sorted.
    pub fn slot_multiset(&self) -> Vec<usize> {
        let mut s = self.slots.clone();
        s.sort_unstable();
        s
    }
}

/// Minimal projective presentation P1 -> P0 -> M -> 0 together with the
/// cover map, with radical-containment minimality certificates checked at
/// construction.
#[derive(Debug, Clone)]
pub struct ProjPresentation {
    pub p1: ProjSum,
    pub p0: ProjSum,
    /// dim P0 x dim P1
    pub map: Mat,
    /// dim M x dim P0
    pub cover: Mat,
}

/// Projective cover of M: (P0, surjection) with ker inside rad P0.
pub fn projective_cover(m: &Module) -> Result<(ProjSum, Mat)> {
    let alg = &m.algebra;
    let f = &alg.field;
    if m.dim == 0 {
        return Ok((ProjSum::build(alg, vec![])?, Mat::zero(0, 0)));
    }
    let idems = pim_idempotents(alg)?;
    let (t, proj_t) = m.top()?;
    let mut slots = Vec::new();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for (i, e) in idems.iter().enumerate() {
        let em = m.act_mat(e);
        let e_img = linalg::image(f, &em);
        // basis of e_i * top(M): ranks give the multiplicity
        let et_mat = t.act_mat(e);
        let c_i = et_mat.rank(f);
        if c_i == 0 {
            continue;
        }
        // pick preimages in e_i M whose top images are independent
        let mut chosen = Subspace::zero(t.dim);
        let mut count = 0usize;
        for r in 0..e_img.dim() {
            if count == c_i {
                break;
            }
            let u = e_img.basis.row(r).to_vec();
            let tu = proj_t.apply(f, &u);
            let red = chosen.reduce_vec(f, &tu);
            if red.iter().any(|&x| x != 0) {
                chosen = chosen.sum(f, &Subspace::from_vectors(f, &[tu], t.dim))?;
                slots.push(i);
                gens.push(u);
                count += 1;
            }
        }
        if count != c_i {
            return Err(Error::Invariant("could not lift a basis of the top".into()));
        }
    }
    let p0 = ProjSum::build(alg, slots)?;
    let all_pims = pims(alg)?;
    let mut cover = Mat::zero(m.dim, p0.dim());
    for (slot_idx, (&pidx, gen)) in p0.slots.iter().zip(&gens).enumerate() {
        let pim = &all_pims[pidx];
        // hom P_i -> M determined by e_i |-> gen: x |-> x . gen
        // pim basis vectors are algebra elements (rows of its embedding in A)
        let e = &pim_idempotents(alg)?[pidx];
        let space = linalg::image(f, &alg.right_mult_mat(e));
        for k in 0..pim.dim {
            let x = space.basis.row(k); // element of A
            let img = m.act_on(x, gen);
            for (r, &v) in img.iter().enumerate() {
                cover.set(r, p0.offsets[slot_idx] + k, v);
            }
        }
    }
    // surjectivity and minimality
    if cover.rank(f) != m.dim {
        return Err(Error::Invariant(
            "projective cover is not surjective".into(),
        ));
    }
    let ker = kernel(f, &cover);
    let rad_p0 = p0.module.radical_subspace_of()?;
    if !rad_p0.contains(f, &ker) {
        return Err(Error::Invariant("cover kernel is not superfluous".into()));
    }
    Ok((p0, cover))
}

pub fn min_proj_presentation(m: &Module) -> Result<ProjPresentation> {
    let (p0, cover) = projective_cover(m)?;
    if m.dim == 0 {
        let p1 = ProjSum::build(&m.algebra, vec![])?;
        return Ok(ProjPresentation {
            p1,
            p0,
            map: Mat::zero(0, 0),
            cover,
        });
    }
    let f = &m.algebra.field;
    let ker = kernel(f, &cover);
    let k_mod = p0.module.submodule(&ker)?;
    let (p1, cover_k) = projective_cover(&k_mod)?;
    // map = inclusion_of_ker . cover_k : P1 -> P0
    let incl = ker.basis.transpose(); // dim P0 x dim K
    let map = incl.mul(f, &cover_k);
    Ok(ProjPresentation { p1, p0, map, cover })
}

/// First syzygy: kernel of the projective cover, as a module.
pub fn omega(m: &Module) -> Result<Module> {
    if m.dim == 0 {
        return Ok(Module::zero(m.algebra.clone()));
    }
    let (p0, cover) = projective_cover(m)?;
    let ker = kernel(&m.algebra.field, &cover);
    p0.module.submodule(&ker)
}

pub fn is_projective(m: &Module) -> Result<bool> {
    if m.dim == 0 {
        return Ok(true);
    }
    let (p0, _) = projective_cover(m)?;
    Ok(p0.dim() == m.dim)
}

/// Nakayama functor on a projective module: nu(P) = D Hom(P, A).
/// Returns the module together with the hom basis used (for mapping).
pub struct NakayamaData {
    pub module: Module,
    pub hom_basis: Vec<Mat>,
}

pub fn nakayama(p: &Module) -> Result<NakayamaData> {
    let alg = &p.algebra;
    let f = &alg.field;
    let regular = Module::regular(alg);
    let homs = hom_space(p, &regular);
    let t = homs.len();
    if t == 0 {
        return Ok(NakayamaData {
            module: Module::zero(alg.clone()),
            hom_basis: homs,
        });
    }
    // right action of b on h: x |-> h(x) * b, i.e. R_b . h
    let flat = Mat::from_rows(homs.iter().map(|h| h.data.clone()).collect());
    let solver = linalg::Solver::new(f, &flat.transpose());
    let mut action = Vec::with_capacity(alg.dim);
    for i in 0..alg.dim {
        let mut ei = vec![0u32; alg.dim];
        ei[i] = 1;
        let rb = alg.right_mult_mat(&ei);
        let mut rho = Mat::zero(t, t);
        for (k, h) in homs.iter().enumerate() {
            let hb = rb.mul(f, h);
            let coords = solver.solve(f, &hb.data)?;
            for (r, &c) in coords.iter().enumerate() {
                rho.set(r, k, c);
            }
        }
        // dual left action is the transpose
        action.push(rho.transpose());
    }
    let module = Module::new(alg.clone(), action)?;
    Ok(NakayamaData {
        module,
        hom_basis: homs,
    })
}

/// nu applied to a map between projectives: nu(f): nu(P1) -> nu(P0).
pub fn nakayama_map(
    p1: &Module,
    f_map: &Mat,
    nu1: &NakayamaData,
    nu0: &NakayamaData,
) -> Result<Mat> {
    let f = &p1.algebra.field;
    // f^*: Hom(P0, A) -> Hom(P1, A), h |-> h . f
    let t0 = nu0.hom_basis.len();
    let t1 = nu1.hom_basis.len();
    let mut fstar = Mat::zero(t1, t0);
    if t1 > 0 && t0 > 0 {
        let flat1 = Mat::from_rows(nu1.hom_basis.iter().map(|h| h.data.clone()).collect());
        let solver = linalg::Solver::new(f, &flat1.transpose());
        for (k, h) in nu0.hom_basis.iter().enumerate() {
            let comp = h.mul(f, f_map);
            let coords = solver.solve(f, &comp.data)?;
            for (r, &c) in coords.iter().enumerate() {
                fstar.set(r, k, c);
            }
        }
    }
    // dualize: nu(f) = (f^*)^T : nu(P1) -> nu(P0)
    Ok(fstar.transpose())
}

/// Auslander-Reiten translate from the minimal projective presentation:
/// tau M = ker( nu(P1) -> nu(P0) ).
pub fn tau(m: &Module) -> Result<Module> {
    if m.dim == 0 {
        return Ok(Module::zero(m.algebra.clone()));
    }
    let pres = min_proj_presentation(m)?;
    if pres.p1.dim() == 0 {
        return Ok(Module::zero(m.algebra.clone()));
    }
    let nu1 = nakayama(&pres.p1.module)?;
    let nu0 = nakayama(&pres.p0.module)?;
    let nuf = nakayama_map(&pres.p1.module, &pres.map, &nu1, &nu0)?;
    let ker = kernel(&m.algebra.field, &nuf);
    nu1.module.submodule(&ker)
}

// ---------------------------------------------------------------------------
// Ext^1

/// dim Ext^1(M, N) with representative cocycles modulo coboundaries,
/// computed from 0 -> K -> P0 -> M -> 0 as coker(Hom(P0,N) -> Hom(K,N)).
pub fn ext1(m: &Module, n: &Module) -> Result<(usize, Vec<Mat>)> {
    if m.dim == 0 || n.dim == 0 {
        return Ok((0, vec![]));
    }
    let f = &m.algebra.field;
    let (p0, cover) = projective_cover(m)?;
    let ker = kernel(f, &cover);
    if ker.dim() == 0 {
        return Ok((0, vec![]));
    }
    let k_mod = p0.module.submodule(&ker)?;
    let incl = ker.basis.transpose(); // dim P0 x dim K
    let hom_kn = hom_space(&k_mod, n);
    if hom_kn.is_empty() {
        return Ok((0, vec![]));
    }
    let hom_p0n = hom_space(&p0.module, n);
    // restriction image: g |-> g . incl
    let mut rows = Vec::new();
    for g in &hom_p0n {
        rows.push(g.mul(f, &incl).data);
    }
    let image_span = Subspace::from_vectors(f, &rows, n.dim * k_mod.dim);
    let total_span = Subspace::from_vectors(
        f,
        &hom_kn.iter().map(|h| h.data.clone()).collect::<Vec<_>>(),
        n.dim * k_mod.dim,
    );
    if !total_span.contains(f, &image_span) {
        return Err(Error::Invariant("restriction left the hom space".into()));
    }
    let dim = total_span.dim() - image_span.dim();
    // representatives: hom_kn basis elements independent modulo the image
    let mut reps = Vec::new();
    let mut acc = image_span;
    for h in &hom_kn {
        if reps.len() == dim {
            break;
        }
        if !acc.contains_vec(f, &h.data) {
            acc = acc.sum(
                f,
                &Subspace::from_vectors(f, std::slice::from_ref(&h.data), n.dim * k_mod.dim),
            )?;
            reps.push(h.clone());
        }
    }
    Ok((dim, reps))
}

// ---------------------------------------------------------------------------
// transport along algebra surjections

/// M / IM as a module over the quotient algebra, with the projection.
pub fn reduce_module(
    m: &Module,
    ideal: &Ideal,
    quot: &Arc<Algebra>,
    surj: &AlgebraSurjection,
) -> Result<(Module, Mat)> {
    let alg = &m.algebra;
    let f = &alg.field;
    // IM
    let mut rows = Vec::new();
    for i in 0..ideal.space.dim() {
        let am = m.act_mat(ideal.space.basis.row(i));
        for c in 0..m.dim {
            rows.push(am.col(c));
        }
    }
    let im = Subspace::from_vectors(f, &rows, m.dim);
    let (mbar_over_a, proj) = m.quotient(&im)?;
    // induced action of the quotient algebra via any section of the surjection
    let mut action = Vec::with_capacity(quot.dim);
    for j in 0..quot.dim {
        let mut ej = vec![0u32; quot.dim];
        ej[j] = 1;
        let lift = linalg::solve(f, &surj.matrix, &ej)?;
        action.push(mbar_over_a.act_mat(&lift));
    }
    let reduced = Module::new(quot.clone(), action)?;
    Ok((reduced, proj))
}

/// A module over A/I viewed as a module over A through the surjection.
pub fn inflate_module(
    m: &Module,
    source: &Arc<Algebra>,
    surj: &AlgebraSurjection,
) -> Result<Module> {
    let f = &source.field;
    let mut action = Vec::with_capacity(source.dim);
    for i in 0..source.dim {
        let mut ei = vec![0u32; source.dim];
        ei[i] = 1;
        let img = surj.apply(f, &ei);
        action.push(m.act_mat(&img));
    }
    Module::new(source.clone(), action)
}

/// Cheap isomorphism invariants: dimensions of the radical series and the
/// socle. Distinct fingerprints certify nonisomorphic modules.
pub fn module_fingerprint(m: &Module) -> Result<Vec<usize>> {
    let f = &m.algebra.field;
    let j = radical_subspace(&m.algebra)?;
    let mut out = vec![m.dim];
    // radical series J^k M
    let mut cur = Subspace::full(m.dim);
    loop {
        let mut rows = Vec::new();
        for i in 0..j.dim() {
            let am = m.act_mat(j.basis.row(i));
            for r in 0..cur.dim() {
                rows.push(am.apply(f, cur.basis.row(r)));
            }
        }
        let next = Subspace::from_vectors(f, &rows, m.dim);
        out.push(next.dim());
        if next.dim() == 0 || next.dim() == cur.dim() {
            break;
        }
        cur = next;
    }
    // socle: annihilator of the radical action
    if j.dim() > 0 && m.dim > 0 {
        let mut stacked = Mat::zero(j.dim() * m.dim, m.dim);
        for i in 0..j.dim() {
            let am = m.act_mat(j.basis.row(i));
            for (k, &v) in am.data.iter().enumerate() {
                stacked.set(i * m.dim + k / m.dim, k % m.dim, v);
            }
        }
        out.push(kernel(f, &stacked).dim());
    } else {
        out.push(m.dim);
    }
    Ok(out)
}

/// X lies in Fac M iff the trace of M in X is all of X.
pub fn fac_membership(x: &Module, m: &Module) -> bool {
    if x.dim == 0 {
        return true;
    }
    let f = &x.algebra.field;
    let homs = hom_space(m, x);
    let mut rows = Vec::new();
    for h in &homs {
        for c in 0..h.cols {
            rows.push(h.col(c));
        }
    }
    Subspace::from_vectors(f, &rows, x.dim).dim() == x.dim
}

// ---------------------------------------------------------------------------
// decomposition into indecomposables

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// (representative, multiplicity), canonically ordered
    pub summands: Vec<(Module, usize)>,
    /// leaf subspaces of the original module, tagged with their class index
    pub leaves: Vec<(Subspace, usize)>,
    /// idempotent projections in End(M), one per leaf, summing to 1
    pub idempotents: Vec<Mat>,
    pub seed: u64,
}

impl Decomposition {
    /// Number of pairwise nonisomorphic indecomposable summands.
    pub fn distinct_count(&self) -> usize {
        self.summands.len()
    }

    pub fn total_count(&self) -> usize {
        self.summands.iter().map(|(_, m)| m).sum()
    }
}

/// End(M) as a structure-constant algebra over the given hom basis.
pub fn endomorphism_algebra(m: &Module, homs: &[Mat]) -> Result<Arc<Algebra>> {
    let f = &m.algebra.field;
    let t = homs.len();
    let flat = Mat::from_rows(homs.iter().map(|h| h.data.clone()).collect());
    let solver = linalg::Solver::new(f, &flat.transpose());
    let mut structure = vec![0u32; t * t * t];
    for i in 0..t {
        for j in 0..t {
            let prod = homs[i].mul(f, &homs[j]);
            let coords = solver.solve(f, &prod.data)?;
            structure[(i * t + j) * t..(i * t + j + 1) * t].copy_from_slice(&coords);
        }
    }
    let unit = solver.solve(f, &Mat::identity(m.dim).data)?;
    Ok(Arc::new(Algebra::new_inherited(
        m.algebra.field.clone(),
        t,
        structure,
        unit,
        AlgebraTag::Custom,
    )?))
}

/// Certified indecomposability: End(M)/J(End(M)) is a field.
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    let homs = hom_space(m, m);
    if homs.len() == 1 {
        return Ok(true);
    }
    let e_alg = endomorphism_algebra(m, &homs)?;
    let j = radical_subspace(&e_alg)?;
    let j_ideal = Ideal::new(&e_alg, j)?;
    let (q_alg, _) = algebra::quotient_algebra(&e_alg, &j_ideal)?;
    if q_alg.dim == 1 {
        return Ok(true);
    }
    if !q_alg.is_commutative() {
        return Ok(false);
    }
    // commutative semisimple: a field iff the q-Frobenius fixes only scalars
    let f = &q_alg.field;
    let q = f.q() as u64;
    let mut frob = Mat::zero(q_alg.dim, q_alg.dim);
    for j in 0..q_alg.dim {
        let mut ej = vec![0u32; q_alg.dim];
        ej[j] = 1;
        let pw = q_alg.pow_vec(&ej, q);
        for (r, &c) in pw.iter().enumerate() {
            frob.set(r, j, c);
        }
    }
    let fix = kernel(f, &frob.sub(f, &Mat::identity(q_alg.dim)));
    Ok(fix.dim() == 1)
}

/// Split M into indecomposable summands with certificates. Randomized
/// Fitting splits with seed chaining; certified-failure after the retry
/// budget.
pub fn decompose(m: &Module, rng: &mut Rng) -> Result<Decomposition> {
    let seed = rng.seed();
    let f = &m.algebra.field;
    if m.dim == 0 {
        return Ok(Decomposition {
            summands: vec![],
            leaves: vec![],
            idempotents: vec![],
            seed,
        });
    }
    let mut stack = vec![Subspace::full(m.dim)];
    let mut leaf_spaces: Vec<Subspace> = Vec::new();
    while let Some(space) = stack.pop() {
        let sub = m.submodule(&space)?;
        if sub.dim == 1 {
            leaf_spaces.push(space);
            continue;
        }
        // a handful of cheap Fitting attempts before paying for the
        // certified local-endomorphism check
        let pieces = match try_fitting_split(&sub, rng, 8)? {
            Some(p) => p,
            None => {
                if is_indecomposable(&sub)? {
                    leaf_spaces.push(space);
                    continue;
                }
                match try_fitting_split(&sub, rng, SPLIT_ATTEMPTS)? {
                    Some(p) => p,
                    None => {
                        return Err(Error::SplitBudget {
                            attempts: SPLIT_ATTEMPTS,
                            seed: rng.seed(),
                        })
                    }
                }
            }
        };
        debug_assert!(pieces.len() >= 2);
        for piece in pieces {
            // convert from sub coordinates to M coordinates
            let mut rows = Vec::new();
            for i in 0..piece.dim() {
                let coords = piece.basis.row(i);
                let mut v = vec![0u32; m.dim];
                for (j, &c) in coords.iter().enumerate() {
                    if c != 0 {
                        for a in 0..m.dim {
                            v[a] = f.add(v[a], f.mul(c, space.basis.get(j, a)));
                        }
                    }
                }
                rows.push(v);
            }
            stack.push(Subspace::from_vectors(f, &rows, m.dim));
        }
    }
    // deterministic order
    leaf_spaces.sort_by_key(|s| (s.dim(), s.basis.data.clone()));
    // intern isomorphism classes
    let mut reps: Vec<Module> = Vec::new();
    let mut leaves = Vec::new();
    let mut mults: Vec<usize> = Vec::new();
    for space in &leaf_spaces {
        let piece = m.submodule(space)?;
        let mut class = None;
        for (ci, r) in reps.iter().enumerate() {
            if r.dim == piece.dim && indec_isomorphic(&piece, r)?.is_some() {
                class = Some(ci);
                break;
            }
        }
        let ci = match class {
            Some(ci) => {
                mults[ci] += 1;
                ci
            }
            None => {
                reps.push(piece);
                mults.push(1);
                reps.len() - 1
            }
        };
        leaves.push((space.clone(), ci));
    }
    // idempotents from the adapted basis
    let mut all_rows = Vec::new();
    for (space, _) in &leaves {
        for i in 0..space.dim() {
            all_rows.push(space.basis.row(i).to_vec());
        }
    }
    let b = Mat::from_rows(all_rows);
    let bt = b.transpose();
    let bt_inv = bt
        .inverse(f)
        .ok_or_else(|| Error::Invariant("leaf spaces do not span".into()))?;
    let mut idempotents = Vec::new();
    let mut row0 = 0usize;
    for (space, _) in &leaves {
        let k = space.dim();
        let mut d = Mat::zero(m.dim, m.dim);
        for i in row0..row0 + k {
            d.set(i, i, 1);
        }
        row0 += k;
        let e = bt.mul(f, &d).mul(f, &bt_inv);
        // exact certificates
        if e.mul(f, &e) != e {
            return Err(Error::Invariant("projection is not idempotent".into()));
        }
        for a in &m.action {
            if a.mul(f, &e) != e.mul(f, a) {
                return Err(Error::Invariant("projection is not a module map".into()));
            }
        }
        idempotents.push(e);
    }
    let mut total = Mat::zero(m.dim, m.dim);
    for e in &idempotents {
        total = total.add(f, e);
    }
    if total != Mat::identity(m.dim) {
        return Err(Error::Invariant(
            "projections do not sum to the identity".into(),
        ));
    }
    let summands: Vec<(Module, usize)> = reps.into_iter().zip(mults).collect();
    Ok(Decomposition {
        summands,
        leaves,
        idempotents,
        seed,
    })
}

/// Find a direct decomposition from the Fitting decomposition of a random
/// endomorphism with composite minimal polynomial; None after the attempt
/// budget.
fn try_fitting_split(m: &Module, rng: &mut Rng, attempts: u32) -> Result<Option<Vec<Subspace>>> {
    let f = &m.algebra.field;
    let homs = hom_space(m, m);
    if homs.len() == 1 {
        return Ok(None); // End = k: indecomposable
    }
    for _ in 0..attempts {
        let mut theta = Mat::zero(m.dim, m.dim);
        for h in &homs {
            let c = f.random(rng);
            if c != 0 {
                theta = theta.add(f, &h.scale(f, c));
            }
        }
        let mp = min_poly_of_matrix(f, &theta);
        let factors = poly::factor(f, &mp, rng);
        if factors.len() < 2 {
            continue;
        }
        let mut pieces = Vec::new();
        let mut total = 0usize;
        for (fac, mult) in &factors {
            let mut g = vec![1u32];
            for _ in 0..*mult {
                g = poly::mul(f, &g, fac);
            }
            let gt = eval_poly_at_matrix(f, &g, &theta);
            let ker = kernel(f, &gt);
            if ker.dim() > 0 {
                total += ker.dim();
                pieces.push(ker);
            }
        }
        if pieces.len() >= 2 && total == m.dim {
            return Ok(Some(pieces));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// independent semisimplicity certificate

/// Separability certificate: A is semisimple over the perfect field F_q iff
/// a separability idempotent exists in A (x) A, which is a linear system.
pub fn is_semisimple_certified(alg: &Algebra) -> bool {
    let f = &alg.field;
    let d = alg.dim;
    // unknowns e_{xy}; conditions: mu(e) = 1 and a e = e a for basis a
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    // mu(e) = sum_{x,y} e_{xy} (b_x b_y) = 1: d equations
    for k in 0..d {
        let mut row = vec![0u32; d * d];
        for x in 0..d {
            for y in 0..d {
                row[x * d + y] = alg.basis_product(x, y)[k];
            }
        }
        rows.push(row);
        rhs.push(alg.unit[k]);
    }
    // a.e - e.a = 0 in A (x) A: for each basis a, coordinates (u, v)
    for a in 0..d {
        for u in 0..d {
            for v in 0..d {
                let mut row = vec![0u32; d * d];
                for x in 0..d {
                    for y in 0..d {
                        // a b_x (x) b_y contributes structure[a,x][u] at (u, y=v)
                        let mut coef = 0u32;
                        if y == v {
                            coef = f.add(coef, alg.basis_product(a, x)[u]);
                        }
                        if x == u {
                            coef = f.sub(coef, alg.basis_product(y, a)[v]);
                        }
                        row[x * d + y] = f.add(row[x * d + y], coef);
                    }
                }
                rows.push(row);
                rhs.push(0);
            }
        }
    }
    let a_mat = Mat::from_rows(rows);
    linalg::solve(f, &a_mat, &rhs).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group_algebra;
    use crate::group;

    fn f2() -> Arc<Field> {
        Arc::new(Field::with_default_poly(2, 1).unwrap())
    }
    fn f3() -> Arc<Field> {
        Arc::new(Field::with_default_poly(3, 1).unwrap())
    }
    fn f4() -> Arc<Field> {
        Arc::new(Field::with_default_poly(2, 2).unwrap())
    }

    fn kc2() -> Arc<Algebra> {
        group_algebra(&group::cyclic(2).unwrap(), f2()).unwrap()
    }
    fn kc4() -> Arc<Algebra> {
        group_algebra(&group::cyclic(4).unwrap(), f2()).unwrap()
    }
    fn kd6() -> Arc<Algebra> {
        group_algebra(&group::dihedral(3).unwrap(), f2()).unwrap()
    }

    #[test]
    fn radical_of_kc4() {
        let a = kc4();
        let j = radical_subspace(&a).unwrap();
        assert_eq!(j.dim(), 3);
        // nilpotency index 4: J^3 != 0, J^4 = 0
        let j2 = algebra::subspace_product(&a, &j, &j);
        let j3 = algebra::subspace_product(&a, &j2, &j);
        let j4 = algebra::subspace_product(&a, &j3, &j);
        assert_eq!(j3.dim(), 1);
        assert_eq!(j4.dim(), 0);
        // matches the p-group basis {1 - a^i}
        let c4 = group::cyclic(4).unwrap();
        let jb = algebra::radical_basis_p_group(&c4, &a).unwrap();
        assert_eq!(jb.space, j);
    }

    #[test]
    fn radical_of_semisimple_is_zero() {
        // kC3 over F4 is split semisimple
        let a = group_algebra(&group::cyclic(3).unwrap(), f4()).unwrap();
        assert_eq!(radical_subspace(&a).unwrap().dim(), 0);
        assert!(is_semisimple_certified(&a));
        // and kC4 over F2 is not semisimple
        assert!(!is_semisimple_certified(&kc4()));
    }

    #[test]
    fn simples_and_pims_kc2() {
        let a = kc2();
        let (simples, pims) = simples_and_projectives(&a).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim, 1);
        assert_eq!(pims.len(), 1);
        assert_eq!(pims[0].dim, 2);
    }

    #[test]
    fn simples_and_pims_kd6() {
        let a = kd6();
        let (simples, pims) = simples_and_projectives(&a).unwrap();
        let sdims: Vec<usize> = simples.iter().map(|s| s.dim).collect();
        assert_eq!(sdims, vec![1, 2]);
        // kD6 = B0 + M2(k): P(triv) = B0 has dim 2; P(S2) = S2 is simple
        // projective of dim 2
        let pdims: Vec<usize> = pims.iter().map(|p| p.dim).collect();
        assert_eq!(pdims, vec![2, 2]);
    }

    #[test]
    fn semisimple_algebra_simples_equal_pims() {
        let a = group_algebra(&group::cyclic(3).unwrap(), f4()).unwrap();
        let (simples, pims) = simples_and_projectives(&a).unwrap();
        assert_eq!(simples.len(), 3);
        let mut rng = Rng::new(5);
        for (s, p) in simples.iter().zip(&pims) {
            assert!(is_isomorphic(s, p, &mut rng).unwrap().is_some());
        }
    }

    #[test]
    fn nonsplit_detection() {
        // kC3 over F2: the 2-dimensional simple has End = F_4
        let a = group_algebra(&group::cyclic(3).unwrap(), f2()).unwrap();
        match splitting_check(&a) {
            Err(Error::NonSplit { suggested_r, .. }) => assert_eq!(suggested_r, 2),
            other => panic!("expected NonSplit, got {other:?}"),
        }
    }

    #[test]
    fn hom_dims() {
        let a = kd6();
        let regular = Module::regular(&a);
        let (simples, pims) = simples_and_projectives(&a).unwrap();
        // dim Hom(A, M) = dim M
        for m in simples.iter().chain(pims.iter()) {
            assert_eq!(hom_dim(&regular, m), m.dim);
        }
        // Hom(P_i, S_j) = delta_ij over a splitting field
        for (i, p) in pims.iter().enumerate() {
            for (j, s) in simples.iter().enumerate() {
                assert_eq!(hom_dim(p, s), usize::from(i == j));
            }
        }
        // trivial module endos
        let triv = Module::trivial(&a).unwrap();
        assert_eq!(hom_dim(&triv, &triv), 1);
    }

    #[test]
    fn decompose_regular_kd6() {
        let a = kd6();
        let mut rng = Rng::new(11);
        let regular = Module::regular(&a);
        let dec = decompose(&regular, &mut rng).unwrap();
        // A = P1 + P2^2 with dims 2, 2
        assert_eq!(dec.distinct_count(), 2);
        let mut mults: Vec<(usize, usize)> =
            dec.summands.iter().map(|(m, c)| (m.dim, *c)).collect();
        mults.sort();
        assert_eq!(mults, vec![(2, 1), (2, 2)]);
        assert_eq!(dec.total_count(), 3);
    }

    #[test]
    fn decompose_sum_and_zero() {
        let a = kc2();
        let mut rng = Rng::new(7);
        let triv = Module::trivial(&a).unwrap();
        let s2 = Module::direct_sum(&[&triv, &triv]);
        let dec = decompose(&s2, &mut rng).unwrap();
        assert_eq!(dec.distinct_count(), 1);
        assert_eq!(dec.summands[0].1, 2);
        let z = Module::zero(a);
        assert_eq!(decompose(&z, &mut rng).unwrap().total_count(), 0);
    }

    #[test]
    fn iso_by_conjugation() {
        let a = kd6();
        let mut rng = Rng::new(23);
        let regular = Module::regular(&a);
        // conjugate the action by a random invertible matrix
        let f = &a.field;
        let g = loop {
            let cand = Mat {
                rows: 6,
                cols: 6,
                data: (0..36).map(|_| f.random(&mut rng)).collect(),
            };
            if cand.inverse(f).is_some() {
                break cand;
            }
        };
        let ginv = g.inverse(f).unwrap();
        let action: Vec<Mat> = regular
            .action
            .iter()
            .map(|m| g.mul(f, m).mul(f, &ginv))
            .collect();
        let twisted = Module::new(a.clone(), action).unwrap();
        let w = is_isomorphic(&regular, &twisted, &mut rng).unwrap();
        assert!(w.is_some());
        // non-isomorphic: different dims
        let triv = Module::trivial(&a).unwrap();
        assert!(is_isomorphic(&regular, &triv, &mut rng).unwrap().is_none());
    }

    #[test]
    fn presentation_of_projective_and_trivial() {
        let a = kc2();
        let regular = Module::regular(&a);
        let pres = min_proj_presentation(&regular).unwrap();
        assert_eq!(pres.p1.dim(), 0);
        assert_eq!(pres.p0.dim(), 2);
        assert!(is_projective(&regular).unwrap());
        // M = k over kC2: P1 = P0 = kC2
        let triv = Module::trivial(&a).unwrap();
        let pres = min_proj_presentation(&triv).unwrap();
        assert_eq!(pres.p0.dim(), 2);
        assert_eq!(pres.p1.dim(), 2);
        assert!(!is_projective(&triv).unwrap());
        // zero module
        let z = Module::zero(a);
        let pres = min_proj_presentation(&z).unwrap();
        assert_eq!(pres.p0.dim(), 0);
        assert_eq!(pres.p1.dim(), 0);
    }

    #[test]
    fn tau_values() {
        let a = kc2();
        let mut rng = Rng::new(3);
        // tau(regular) = 0
        let regular = Module::regular(&a);
        assert_eq!(tau(&regular).unwrap().dim, 0);
        // tau(k) = k over kC2
        let triv = Module::trivial(&a).unwrap();
        let t = tau(&triv).unwrap();
        assert_eq!(t.dim, 1);
        assert!(is_isomorphic(&t, &triv, &mut rng).unwrap().is_some());
        // omega^2 cross-check on the symmetric algebra kD6
        let a = kd6();
        let (simples, _) = simples_and_projectives(&a).unwrap();
        for s in &simples {
            let t = tau(s).unwrap();
            let o2 = omega(&omega(s).unwrap()).unwrap();
            assert_eq!(t.dim, o2.dim);
            if t.dim > 0 {
                assert!(is_isomorphic(&t, &o2, &mut rng).unwrap().is_some());
            }
        }
    }

    #[test]
    fn tau_additive() {
        let a = kd6();
        let mut rng = Rng::new(9);
        let (simples, _) = simples_and_projectives(&a).unwrap();
        let m = Module::direct_sum(&[&simples[0], &simples[1]]);
        let tm = tau(&m).unwrap();
        let t0 = tau(&simples[0]).unwrap();
        let t1 = tau(&simples[1]).unwrap();
        let expect = if t1.dim == 0 {
            t0.clone()
        } else {
            Module::direct_sum(&[&t0, &t1])
        };
        assert_eq!(tm.dim, t0.dim + t1.dim);
        if tm.dim > 0 {
            assert!(is_isomorphic(&tm, &expect, &mut rng).unwrap().is_some());
        }
    }

    #[test]
    fn ext_groups() {
        let a = kc2();
        let triv = Module::trivial(&a).unwrap();
        // Ext^1(k, k) = k over kC2
        let (d, reps) = ext1(&triv, &triv).unwrap();
        assert_eq!(d, 1);
        assert_eq!(reps.len(), 1);
        // Ext^1(P, anything) = 0
        let regular = Module::regular(&a);
        assert_eq!(ext1(&regular, &triv).unwrap().0, 0);
        assert_eq!(ext1(&regular, &regular).unwrap().0, 0);
    }

    #[test]
    fn reduce_inflate_round_trip() {
        let c4 = group::cyclic(4).unwrap();
        let a = kc4();
        let n = c4.generated_subgroup(&[2]);
        let ideal = algebra::quotient_kernel_ideal(&c4, &n, &a).unwrap();
        let (q, surj) = algebra::quotient_algebra(&a, &ideal).unwrap();
        let mut rng = Rng::new(31);
        // regular kC4 reduces to regular kC2
        let regular = Module::regular(&a);
        let (red, _) = reduce_module(&regular, &ideal, &q, &surj).unwrap();
        assert_eq!(red.dim, 2);
        let qreg = Module::regular(&q);
        assert!(is_isomorphic(&red, &qreg, &mut rng).unwrap().is_some());
        // inflate then reduce is the identity on quotient modules
        let infl = inflate_module(&qreg, &a, &surj).unwrap();
        assert_eq!(infl.dim, 2);
        let (back, _) = reduce_module(&infl, &ideal, &q, &surj).unwrap();
        assert!(is_isomorphic(&back, &qreg, &mut rng).unwrap().is_some());
        // hom dims are preserved by inflation (full faithfulness)
        assert_eq!(hom_dim(&qreg, &qreg), hom_dim(&infl, &infl));
    }

    #[test]
    fn fac_memberships() {
        let a = kc2();
        let regular = Module::regular(&a);
        let triv = Module::trivial(&a).unwrap();
        assert!(fac_membership(&regular, &regular));
        // top of M is a factor of M
        assert!(fac_membership(&triv, &regular));
        // but the regular module is not a factor of a sum of trivials
        assert!(!fac_membership(&regular, &triv));
    }

    #[test]
    fn min_poly_examples() {
        let f = Field::with_default_poly(2, 1).unwrap();
        let id = Mat::identity(3);
        assert_eq!(min_poly_of_matrix(&f, &id), vec![1, 1]); // x - 1 = x + 1
        let z = Mat::zero(2, 2);
        assert_eq!(min_poly_of_matrix(&f, &z), vec![0, 1]); // x
                                                            // nilpotent Jordan block: x^2
        let mut n = Mat::zero(2, 2);
        n.set(0, 1, 1);
        assert_eq!(min_poly_of_matrix(&f, &n), vec![0, 0, 1]);
    }
}
