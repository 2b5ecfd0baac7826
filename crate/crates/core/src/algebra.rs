//! Finite-dimensional associative unital algebras over F_q via structure
//! constants: group algebras, centers, Jacobson radicals, block
//! decomposition, ideal quotients, and the central idempotents driving the
//! quotient-reduction machinery.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{FiniteGroup, QuotientMap, Subgroup};
use crate::linalg::{kernel, Mat, Subspace};
use serde::{Deserialize, Serialize};
use std::sync::{Arc, OnceLock};

/// Exhaustive associativity validation is O(dim^4); beyond this bound only
/// constructions that inherit associativity from a verified source are
/// accepted.
const ASSOC_CHECK_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraTag {
    GroupAlgebra,
    Block,
    Quotient,
    Custom,
}

/// Cached semisimple-structure data computed once per algebra (radical,
/// composition factors of the regular module, projective covers). Stored
/// without back-references so no Arc cycles arise.
#[derive(Debug, Default)]
pub struct RepCache {
    pub radical: OnceLock<Subspace>,
    /// distinct simple modules as (dim, action matrices)
    pub simples: OnceLock<Vec<(usize, Vec<Mat>)>>,
    /// one primitive idempotent per simple, aligned with `simples`
    pub pim_idempotents: OnceLock<Vec<Vec<u32>>>,
}

#[derive(Debug)]
pub struct Algebra {
    pub field: Arc<Field>,
    pub dim: usize,
    /// structure[(i*dim + j)*dim + k] = coefficient of b_k in b_i * b_j
    pub structure: Vec<u32>,
    pub unit: Vec<u32>,
    pub tag: AlgebraTag,
    pub cache: RepCache,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field.spec() == other.field.spec()
            && self.structure == other.structure
            && self.unit == other.unit
    }
}
impl Eq for Algebra {}

impl Algebra {
    pub fn new(
        field: Arc<Field>,
        dim: usize,
        structure: Vec<u32>,
        unit: Vec<u32>,
        tag: AlgebraTag,
    ) -> Result<Algebra> {
        Self::build(field, dim, structure, unit, tag, false)
    }

    /// For constructions whose associativity is inherited from an already
    /// validated source (group algebras of checked groups, subalgebras,
    /// quotients). Dimensions within the cap are still fully checked.
    pub(crate) fn new_inherited(
        field: Arc<Field>,
        dim: usize,
        structure: Vec<u32>,
        unit: Vec<u32>,
        tag: AlgebraTag,
    ) -> Result<Algebra> {
        Self::build(field, dim, structure, unit, tag, true)
    }

    fn build(
        field: Arc<Field>,
        dim: usize,
        structure: Vec<u32>,
        unit: Vec<u32>,
        tag: AlgebraTag,
        inherited: bool,
    ) -> Result<Algebra> {
        if structure.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::DimMismatch("structure constant table size".into()));
        }
        let alg = Algebra {
            field,
            dim,
            structure,
            unit,
            tag,
            cache: RepCache::default(),
        };
        if dim <= ASSOC_CHECK_CAP {
            alg.check_associativity()?;
        } else if !inherited {
            return Err(Error::DimMismatch(format!(
                "dim {dim} exceeds the exhaustive associativity cap {ASSOC_CHECK_CAP}"
            )));
        }
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associativity(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let jk = self.basis_product(j, k).to_vec();
                    let left = self.mul_basis_right(&ij, k);
                    let right = self.mul_basis_left(i, &jk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for j in 0..self.dim {
            let mut ej = vec![0u32; self.dim];
            ej[j] = 1;
            if self.mul_vec(&self.unit, &ej) != ej || self.mul_vec(&ej, &self.unit) != ej {
                return Err(Error::BadUnit);
            }
        }
        Ok(())
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.structure[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// (sum a_i b_i) * b_k
    fn mul_basis_right(&self, a: &[u32], k: usize) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (m, &c) in self.basis_product(i, k).iter().enumerate() {
                if c != 0 {
                    out[m] = f.add(out[m], f.mul(ai, c));
                }
            }
        }
        out
    }

    /// b_i * (sum a_j b_j)
    fn mul_basis_left(&self, i: usize, a: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.dim];
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (m, &c) in self.basis_product(i, j).iter().enumerate() {
                if c != 0 {
                    out[m] = f.add(out[m], f.mul(aj, c));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, &s) in self.basis_product(i, j).iter().enumerate() {
                    if s != 0 {
                        out[k] = f.add(out[k], f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` on column coordinates.
    pub fn left_mult_mat(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u32; self.dim];
            ej[j] = 1;
            let col = self.mul_vec(a, &ej);
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Matrix of right multiplication by `a` on column coordinates.
    pub fn right_mult_mat(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u32; self.dim];
            ej[j] = 1;
            let col = self.mul_vec(&ej, a);
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    pub fn pow_vec(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_vec(&acc, &base);
            }
            base = self.mul_vec(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, a: &[u32]) -> bool {
        self.mul_vec(a, a) == a
    }

    pub fn is_central(&self, a: &[u32]) -> bool {
        (0..self.dim).all(|i| {
            let mut ei = vec![0u32; self.dim];
            ei[i] = 1;
            self.mul_vec(a, &ei) == self.mul_vec(&ei, a)
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (i + 1..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Sum of coordinates; the augmentation character when the basis is a
    /// group.
    pub fn augmentation(&self, a: &[u32]) -> u32 {
        let f = &self.field;
        a.iter().fold(0, |acc, &c| f.add(acc, c))
    }

    /// Stable fingerprint of the defining data.
    pub fn content_hash(&self) -> u64 {
        let mut bytes = Vec::new();
        let spec = self.field.spec();
        bytes.extend_from_slice(&spec.p.to_le_bytes());
        bytes.extend_from_slice(&spec.r.to_le_bytes());
        for &c in &spec.minpoly {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        bytes.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for &c in &self.structure {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        for &c in &self.unit {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        crate::fnv1a64(&bytes)
    }
}

/// A two-sided ideal as a subspace of its parent, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub space: Subspace,
}

impl Ideal {
    pub fn new(alg: &Algebra, space: Subspace) -> Result<Ideal> {
        if space.ambient != alg.dim {
            return Err(Error::DimMismatch("ideal ambient".into()));
        }
        let f = &alg.field;
        for i in 0..space.dim() {
            let z = space.basis.row(i).to_vec();
            for b in 0..alg.dim {
                let mut eb = vec![0u32; alg.dim];
                eb[b] = 1;
                if !space.contains_vec(f, &alg.mul_vec(&eb, &z))
                    || !space.contains_vec(f, &alg.mul_vec(&z, &eb))
                {
                    return Err(Error::NotAnIdeal);
                }
            }
        }
        Ok(Ideal { space })
    }

    pub fn zero(alg: &Algebra) -> Ideal {
        Ideal {
            space: Subspace::zero(alg.dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Smallest k with I^k = 0, or None if I is not nilpotent.
    pub fn nilpotency_index(&self, alg: &Algebra) -> Option<usize> {
        let mut cur = self.space.clone();
        let mut k = 1usize;
        while !cur.is_zero() {
            if k > alg.dim + 1 {
                return None;
            }
            cur = subspace_product(alg, &cur, &self.space);
            k += 1;
        }
        Some(k)
    }
}

/// The Jacobson radical as a validated ideal: the intersection of the
/// annihilators of the simple quotients of the regular module, with a
/// nilpotency certificate.
pub fn jacobson_radical(alg: &Arc<Algebra>) -> Result<Ideal> {
    let space = crate::module::radical_subspace(alg)?;
    Ideal::new(alg, space)
}

/// span{ a*b : a in A, b in B } for subspaces of the algebra.
pub fn subspace_product(alg: &Algebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut rows = Vec::new();
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            rows.push(alg.mul_vec(a.basis.row(i), b.basis.row(j)));
        }
    }
    Subspace::from_vectors(&alg.field, &rows, alg.dim)
}

/// A block: primitive central idempotent, the algebra it cuts out, and the
/// row basis embedding it back into the parent.
#[derive(Debug, Clone)]
pub struct Block {
    pub idempotent: Vec<u32>,
    pub algebra: Arc<Algebra>,
    /// rows = block basis vectors in parent coordinates
    pub embed: Subspace,
    pub parent_hash: u64,
}

impl Block {
    /// Express a parent element lying in the block in block coordinates.
    pub fn project(&self, f: &Field, v: &[u32]) -> Option<Vec<u32>> {
        self.embed.coords_of(f, v)
    }

    /// Block coordinates -> parent coordinates.
    pub fn embed_vec(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.embed.ambient];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                for j in 0..self.embed.ambient {
                    out[j] = f.add(out[j], f.mul(c, self.embed.basis.get(i, j)));
                }
            }
        }
        out
    }
}

/// A surjective unital algebra homomorphism with its kernel.
#[derive(Debug, Clone)]
pub struct AlgebraSurjection {
    /// target_dim x source_dim matrix on column coordinates
    pub matrix: Mat,
    pub kernel: Ideal,
}

impl AlgebraSurjection {
    pub fn new(source: &Algebra, target: &Algebra, matrix: Mat) -> Result<AlgebraSurjection> {
        if matrix.rows != target.dim || matrix.cols != source.dim {
            return Err(Error::DimMismatch("surjection matrix shape".into()));
        }
        let f = &source.field;
        if matrix.rank(f) != target.dim {
            return Err(Error::Invariant("algebra map not surjective".into()));
        }
        if matrix.apply(f, &source.unit) != target.unit {
            return Err(Error::Invariant("algebra map not unital".into()));
        }
        for i in 0..source.dim {
            let mut ei = vec![0u32; source.dim];
            ei[i] = 1;
            let pi = matrix.apply(f, &ei);
            for j in 0..source.dim {
                let mut ej = vec![0u32; source.dim];
                ej[j] = 1;
                let pj = matrix.apply(f, &ej);
                let lhs = matrix.apply(f, source.basis_product(i, j));
                if lhs != target.mul_vec(&pi, &pj) {
                    return Err(Error::Invariant("algebra map not multiplicative".into()));
                }
            }
        }
        let ker = kernel(f, &matrix);
        let kernel_ideal = Ideal::new(source, ker)?;
        Ok(AlgebraSurjection {
            matrix,
            kernel: kernel_ideal,
        })
    }

    pub fn apply(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        self.matrix.apply(f, v)
    }
}

// ---------------------------------------------------------------------------
// constructions

/// Group algebra kG: basis indexed by group elements, products from the
/// Cayley table.
pub fn group_algebra(g: &FiniteGroup, field: Arc<Field>) -> Result<Arc<Algebra>> {
    let d = g.order;
    let mut structure = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let k = g.op(i as u32, j as u32) as usize;
            structure[(i * d + j) * d + k] = 1;
        }
    }
    let mut unit = vec![0u32; d];
    unit[g.identity as usize] = 1;
    Ok(Arc::new(Algebra::new_inherited(
        field,
        d,
        structure,
        unit,
        AlgebraTag::GroupAlgebra,
    )?))
}

/// Subalgebra on a given closed subspace with the given unit (in parent
/// coordinates). Errors if the span is not multiplicatively closed.
pub fn subalgebra_on(
    parent: &Algebra,
    basis: &Subspace,
    unit_parent: &[u32],
    tag: AlgebraTag,
) -> Result<Algebra> {
    let f = &parent.field;
    let d = basis.dim();
    let mut structure = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = parent.mul_vec(basis.basis.row(i), basis.basis.row(j));
            let coords = basis
                .coords_of(f, &prod)
                .ok_or_else(|| Error::Invariant("subspace not closed under product".into()))?;
            structure[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&coords);
        }
    }
    let unit = basis
        .coords_of(f, unit_parent)
        .ok_or_else(|| Error::Invariant("unit not inside subspace".into()))?;
    Algebra::new_inherited(parent.field.clone(), d, structure, unit, tag)
}

/// The center Z(A) as a commutative algebra plus its embedding subspace.
pub fn center_of(alg: &Algebra) -> Result<(Algebra, Subspace)> {
    let f = &alg.field;
    let d = alg.dim;
    // solve [x, b_i] = 0 for all i
    let mut big = Mat::zero(d * d, d);
    for i in 0..d {
        let mut ei = vec![0u32; d];
        ei[i] = 1;
        let li = alg.left_mult_mat(&ei);
        let ri = alg.right_mult_mat(&ei);
        let diff = li.sub(f, &ri);
        for r in 0..d {
            for c in 0..d {
                big.set(i * d + r, c, diff.get(r, c));
            }
        }
    }
    let space = kernel(f, &big);
    let z = subalgebra_on(alg, &space, &alg.unit, AlgebraTag::Custom)?;
    Ok((z, space))
}

/// Quotient algebra A/I with the natural surjection. Coset representatives
/// are canonical: coordinates at the non-pivot columns of I's RREF basis.
pub fn quotient_algebra(
    alg: &Arc<Algebra>,
    ideal: &Ideal,
) -> Result<(Arc<Algebra>, AlgebraSurjection)> {
    let f = &alg.field;
    let d = alg.dim;
    let free = ideal.space.free_cols();
    let qd = free.len();
    // projection matrix: v -> free coordinates of v reduced mod I
    let mut proj = Mat::zero(qd, d);
    for j in 0..d {
        let mut ej = vec![0u32; d];
        ej[j] = 1;
        let red = ideal.space.reduce_vec(f, &ej);
        for (qi, &fc) in free.iter().enumerate() {
            proj.set(qi, j, red[fc]);
        }
    }
    // section: basis vector qi -> e_{free[qi]}
    let lift = |v: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; d];
        for (qi, &fc) in free.iter().enumerate() {
            out[fc] = v[qi];
        }
        out
    };
    let mut structure = vec![0u32; qd * qd * qd];
    for i in 0..qd {
        let mut ei = vec![0u32; qd];
        ei[i] = 1;
        let li = lift(&ei);
        for j in 0..qd {
            let mut ej = vec![0u32; qd];
            ej[j] = 1;
            let prod = alg.mul_vec(&li, &lift(&ej));
            let coords = proj.apply(f, &prod);
            structure[(i * qd + j) * qd..(i * qd + j + 1) * qd].copy_from_slice(&coords);
        }
    }
    let unit = proj.apply(f, &alg.unit);
    let q = Arc::new(Algebra::new_inherited(
        alg.field.clone(),
        qd,
        structure,
        unit,
        AlgebraTag::Quotient,
    )?);
    let surj = AlgebraSurjection::new(alg, &q, proj)?;
    Ok((q, surj))
}

/// The ideal {1-n : n in N} * kG inside kG; its dimension is |G| - |G/N|.
pub fn quotient_kernel_ideal(g: &FiniteGroup, n: &Subgroup, alg: &Algebra) -> Result<Ideal> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let d = alg.dim;
    debug_assert_eq!(d, g.order);
    let f = &alg.field;
    let mut rows = Vec::new();
    for &x in &n.elements {
        if x == g.identity {
            continue;
        }
        for h in 0..g.order as u32 {
            // (1 - x) h = h - xh
            let mut v = vec![0u32; d];
            v[g.op(g.identity, h) as usize] = 1;
            let xh = g.op(x, h) as usize;
            v[xh] = f.sub(v[xh], 1);
            rows.push(v);
        }
    }
    let space = Subspace::from_vectors(f, &rows, d);
    let ideal = Ideal::new(alg, space)?;
    let expected = g.order - g.order / n.order();
    if ideal.dim() != expected {
        return Err(Error::Invariant(format!(
            "kernel ideal dim {} != |G| - |G/N| = {}",
            ideal.dim(),
            expected
        )));
    }
    Ok(ideal)
}

/// For a p-group N in characteristic p, the radical of kN has basis
/// {1 - n : n != 1}.
pub fn radical_basis_p_group(g: &FiniteGroup, alg: &Algebra) -> Result<Ideal> {
    let p = alg.field.p();
    let mut o = g.order as u64;
    while o % p == 0 {
        o /= p;
    }
    if o != 1 {
        return Err(Error::NotPGroup { order: g.order, p });
    }
    let f = &alg.field;
    let mut rows = Vec::new();
    for x in 0..g.order as u32 {
        if x == g.identity {
            continue;
        }
        let mut v = vec![0u32; g.order];
        v[g.identity as usize] = 1;
        v[x as usize] = f.sub(v[x as usize], 1);
        rows.push(v);
    }
    let space = Subspace::from_vectors(f, &rows, g.order);
    Ideal::new(alg, space)
}

/// beta = |N|^{-1} sum_{n in N} n, a central idempotent killing the kernel
/// of kG -> k(G/N) when p does not divide |N|.
pub fn beta_idempotent(g: &FiniteGroup, n: &Subgroup, alg: &Algebra) -> Result<Vec<u32>> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let f = &alg.field;
    let c = f.elem_inv(n.order() as u64)?;
    let mut beta = vec![0u32; alg.dim];
    for &x in &n.elements {
        beta[x as usize] = c;
    }
    if !alg.is_idempotent(&beta) || !alg.is_central(&beta) {
        return Err(Error::Invariant("beta is not a central idempotent".into()));
    }
    Ok(beta)
}

/// Newton iteration e <- 3e^2 - 2e^3 converging to an idempotent when
/// e^2 - e is nilpotent. All iterates stay inside the commutative
/// subalgebra generated by the starting point.
pub fn lift_idempotent(alg: &Algebra, start: &[u32]) -> Result<Vec<u32>> {
    let f = &alg.field;
    let three = f.elem(3);
    let two = f.elem(2);
    let mut x = start.to_vec();
    for _ in 0..64 {
        if alg.is_idempotent(&x) {
            return Ok(x);
        }
        let x2 = alg.mul_vec(&x, &x);
        let x3 = alg.mul_vec(&x2, &x);
        let mut next = vec![0u32; alg.dim];
        for k in 0..alg.dim {
            next[k] = f.sub(f.mul(three, x2[k]), f.mul(two, x3[k]));
        }
        x = next;
    }
    Err(Error::Invariant(
        "idempotent lifting did not converge".into(),
    ))
}

// ---------------------------------------------------------------------------
// block decomposition

/// Decompose a commutative split semisimple algebra into its primitive
/// idempotents by recursive eigenspace splitting of multiplication
/// operators. Roots are found by exhaustive evaluation over F_q.
fn split_commutative_semisimple(alg: &Algebra, space: &Subspace) -> Result<Vec<Vec<u32>>> {
    let f = &alg.field;
    if space.dim() == 0 {
        return Ok(vec![]);
    }
    if space.dim() == 1 {
        // normalize the basis vector to the idempotent unit of this factor
        let v = space.basis.row(0).to_vec();
        let v2 = alg.mul_vec(&v, &v);
        let coords = space
            .coords_of(f, &v2)
            .ok_or_else(|| Error::Invariant("summand not closed".into()))?;
        let lambda = coords[0];
        if lambda == 0 {
            return Err(Error::Invariant(
                "nilpotent element in semisimple part".into(),
            ));
        }
        let inv = f.inv(lambda);
        return Ok(vec![v.iter().map(|&c| f.mul(inv, c)).collect()]);
    }
    // find a basis element whose multiplication has at least two eigenvalues
    for i in 0..space.dim() {
        let x = space.basis.row(i).to_vec();
        // matrix of mult-by-x restricted to `space`
        let lx = alg.left_mult_mat(&x);
        let k = space.dim();
        let mut m = Mat::zero(k, k);
        for j in 0..k {
            let img = lx.apply(f, space.basis.row(j));
            let coords = space
                .coords_of(f, &img)
                .ok_or_else(|| Error::Invariant("not invariant".into()))?;
            for (r, &c) in coords.iter().enumerate() {
                m.set(r, j, c);
            }
        }
        // eigenvalues by exhaustive root search of ker(m - t I)
        let mut pieces: Vec<Subspace> = Vec::new();
        for t in f.elements() {
            let mut shifted = m.clone();
            for r in 0..k {
                shifted.set(r, r, f.sub(m.get(r, r), t));
            }
            let ker = kernel(f, &shifted);
            if !ker.is_zero() {
                pieces.push(ker);
            }
        }
        if pieces.len() >= 2 {
            let total: usize = pieces.iter().map(|p| p.dim()).sum();
            if total != k {
                return Err(Error::Invariant(
                    "eigenspaces do not fill a semisimple commutative summand".into(),
                ));
            }
            let mut out = Vec::new();
            for piece in pieces {
                // convert piece (coords in `space`) back to ambient coordinates
                let mut rows = Vec::new();
                for r in 0..piece.dim() {
                    let coords = piece.basis.row(r);
                    let mut v = vec![0u32; alg.dim];
                    for (j, &c) in coords.iter().enumerate() {
                        if c != 0 {
                            for a in 0..alg.dim {
                                v[a] = f.add(v[a], f.mul(c, space.basis.get(j, a)));
                            }
                        }
                    }
                    rows.push(v);
                }
                let sub = Subspace::from_vectors(f, &rows, alg.dim);
                out.extend(split_commutative_semisimple(alg, &sub)?);
            }
            return Ok(out);
        }
    }
    // every basis element acts as a scalar yet dim > 1: not split as assumed
    Err(Error::Invariant(
        "commutative semisimple algebra did not split".into(),
    ))
}

/// Pairwise orthogonal primitive central idempotents summing to 1.
///
/// Route: Z(A), its radical Z cap J(A), the semisimple quotient, the
/// Frobenius fixed subalgebra (split check), eigen-splitting, then Newton
/// lifting back along the radical. Errors with a field-extension hint when
/// the center does not split.
pub fn central_primitive_idempotents(alg: &Arc<Algebra>) -> Result<Vec<Vec<u32>>> {
    let f = &alg.field;
    let (_, z_space) = center_of(alg)?;
    let j_space = crate::module::radical_subspace(alg)?;
    let zj = z_space.intersect(f, &j_space)?;
    // center as standalone algebra, with its radical ideal
    let z_alg = Arc::new(subalgebra_on(alg, &z_space, &alg.unit, AlgebraTag::Custom)?);
    let zj_in_z: Vec<Vec<u32>> = (0..zj.dim())
        .map(|i| z_space.coords_of(f, zj.basis.row(i)).expect("ZJ inside Z"))
        .collect();
    let zj_ideal = Ideal::new(&z_alg, Subspace::from_vectors(f, &zj_in_z, z_alg.dim))?;
    let (s_alg, s_surj) = quotient_algebra(&z_alg, &zj_ideal)?;

    // Frobenius fixed points of x -> x^q on the semisimple center quotient
    let q = f.q() as u64;
    let sd = s_alg.dim;
    let mut frob = Mat::zero(sd, sd);
    for j in 0..sd {
        let mut ej = vec![0u32; sd];
        ej[j] = 1;
        let pw = s_alg.pow_vec(&ej, q);
        for (r, &c) in pw.iter().enumerate() {
            frob.set(r, j, c);
        }
    }
    let fix = kernel(f, &frob.sub(f, &Mat::identity(sd)));
    if fix.dim() < sd {
        let suggested = suggest_split_degree(&s_alg);
        return Err(Error::NonSplit {
            p: f.p(),
            r: f.r(),
            suggested_r: suggested,
        });
    }

    let prim_s = split_commutative_semisimple(&s_alg, &Subspace::full(sd))?;
    // lift: S -> Z (linear section of the quotient) -> Newton -> A
    let mut result = Vec::new();
    for eps in prim_s {
        // section: put coordinates back at the free columns
        let free = zj_ideal.space.free_cols();
        let mut z_coords = vec![0u32; z_alg.dim];
        for (qi, &fc) in free.iter().enumerate() {
            z_coords[fc] = eps[qi];
        }
        let lifted = lift_idempotent(&z_alg, &z_coords)?;
        // sanity: still maps onto eps
        if s_surj.apply(f, &lifted) != eps {
            return Err(Error::Invariant("lift changed the semisimple image".into()));
        }
        // ambient coordinates
        let mut v = vec![0u32; alg.dim];
        for (j, &c) in lifted.iter().enumerate() {
            if c != 0 {
                for a in 0..alg.dim {
                    v[a] = f.add(v[a], f.mul(c, z_space.basis.get(j, a)));
                }
            }
        }
        result.push(v);
    }
    // verify the defining equations exactly
    let mut sum = vec![0u32; alg.dim];
    for e in &result {
        if !alg.is_idempotent(e) || !alg.is_central(e) {
            return Err(Error::Invariant(
                "lifted idempotent fails verification".into(),
            ));
        }
        for k in 0..alg.dim {
            sum[k] = f.add(sum[k], e[k]);
        }
    }
    if sum != alg.unit {
        return Err(Error::Invariant("idempotents do not sum to 1".into()));
    }
    for (i, a) in result.iter().enumerate() {
        for (j, b) in result.iter().enumerate() {
            if i != j && alg.mul_vec(a, b).iter().any(|&c| c != 0) {
                return Err(Error::Invariant("idempotents not orthogonal".into()));
            }
        }
    }
    Ok(result)
}

/// Estimate the extension degree needed to split: r times the lcm of the
/// irreducible factor degrees of minimal polynomials on the semisimple
/// center quotient.
fn suggest_split_degree(s_alg: &Algebra) -> u32 {
    let f = &s_alg.field;
    let mut l = 1u64;
    for i in 0..s_alg.dim {
        let mut ei = vec![0u32; s_alg.dim];
        ei[i] = 1;
        let m = s_alg.left_mult_mat(&ei);
        let minpoly = crate::module::min_poly_of_matrix(f, &m);
        for (fac, _) in crate::module::factor_poly(f, &minpoly, &mut crate::rng::Rng::new(7)) {
            let deg = (fac.len() - 1) as u64;
            l = l / gcd_u64(l, deg) * deg;
        }
    }
    (f.r() as u64 * l).min(u32::MAX as u64) as u32
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Full block decomposition: one Block per primitive central idempotent.
/// Blocks are ordered by (dim, idempotent coordinates) for reproducibility.
pub fn block_decompose(alg: &Arc<Algebra>) -> Result<Vec<Block>> {
    let f = &alg.field;
    let idems = central_primitive_idempotents(alg)?;
    let parent_hash = alg.content_hash();
    let mut blocks = Vec::new();
    for e in idems {
        let re = alg.right_mult_mat(&e);
        // A e = column space of right multiplication by e
        let embed = crate::linalg::image(f, &re);
        let b_alg = Arc::new(subalgebra_on(alg, &embed, &e, AlgebraTag::Block)?);
        blocks.push(Block {
            idempotent: e,
            algebra: b_alg,
            embed,
            parent_hash,
        });
    }
    let total: usize = blocks.iter().map(|b| b.algebra.dim).sum();
    if total != alg.dim {
        return Err(Error::Invariant(format!(
            "block dims sum to {total}, expected {}",
            alg.dim
        )));
    }
    blocks.sort_by(|a, b| {
        (a.algebra.dim, a.idempotent.clone()).cmp(&(b.algebra.dim, b.idempotent.clone()))
    });
    Ok(blocks)
}

/// The unique block acting as the identity on the trivial module: its
/// idempotent has augmentation 1. Requires a group algebra.
pub fn principal_block(alg: &Arc<Algebra>) -> Result<Block> {
    if alg.tag != AlgebraTag::GroupAlgebra {
        return Err(Error::Invariant(
            "principal block needs a group algebra".into(),
        ));
    }
    let blocks = block_decompose(alg)?;
    let mut found = None;
    for b in blocks {
        if alg.augmentation(&b.idempotent) == 1 {
            if found.is_some() {
                return Err(Error::Invariant(
                    "two blocks claim the trivial module".into(),
                ));
            }
            found = Some(b);
        }
    }
    found.ok_or_else(|| Error::Invariant("no principal block found".into()))
}

/// Test whether I is contained in (Z(A) cap J(A)) * A, with central
/// generators a_1..a_t witnessing I = sum a_i A when they exist.
#[derive(Debug, Clone)]
pub struct ReductionWitness {
    pub contained: bool,
    /// central radical generators with I = sum a_i * A, when available
    pub generators: Option<Vec<Vec<u32>>>,
}

pub fn reduction_ideal_check(alg: &Arc<Algebra>, ideal: &Ideal) -> Result<ReductionWitness> {
    let f = &alg.field;
    let (_, z_space) = center_of(alg)?;
    let j_space = crate::module::radical_subspace(alg)?;
    let zj = z_space.intersect(f, &j_space)?;
    let zj_a = subspace_product(alg, &zj, &Subspace::full(alg.dim));
    let contained = zj_a.contains(f, &ideal.space);
    if !contained {
        return Ok(ReductionWitness {
            contained: false,
            generators: None,
        });
    }
    // T = { z in Z cap J : z * A <= I }, then check sum_{z in T} z A = I
    let t = zj.dim();
    if t == 0 {
        let gens_ok = ideal.dim() == 0;
        return Ok(ReductionWitness {
            contained,
            generators: if gens_ok { Some(vec![]) } else { None },
        });
    }
    let mut rows = Vec::new(); // constraints on coefficient vector c in F^t
    let i_space = &ideal.space;
    // z = sum c_i zj_i ; for each basis b_j require reduce_I(z b_j) = 0
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for i in 0..t {
        let zi = zj.basis.row(i).to_vec();
        let mut col = Vec::new();
        for b in 0..alg.dim {
            let mut eb = vec![0u32; alg.dim];
            eb[b] = 1;
            let red = i_space.reduce_vec(f, &alg.mul_vec(&zi, &eb));
            col.extend(red);
        }
        cols.push(col);
    }
    let nrows = cols[0].len();
    for r in 0..nrows {
        rows.push((0..t).map(|i| cols[i][r]).collect::<Vec<u32>>());
    }
    let constraint = Mat::from_rows(rows);
    let tspace = kernel(f, &constraint);
    let mut gen_vecs = Vec::new();
    let mut span_rows = Vec::new();
    for i in 0..tspace.dim() {
        let c = tspace.basis.row(i);
        let mut z = vec![0u32; alg.dim];
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                for a in 0..alg.dim {
                    z[a] = f.add(z[a], f.mul(ck, zj.basis.get(k, a)));
                }
            }
        }
        for b in 0..alg.dim {
            let mut eb = vec![0u32; alg.dim];
            eb[b] = 1;
            span_rows.push(alg.mul_vec(&z, &eb));
        }
        gen_vecs.push(z);
    }
    let span = Subspace::from_vectors(f, &span_rows, alg.dim);
    let generators = if span == ideal.space {
        Some(gen_vecs)
    } else {
        None
    };
    Ok(ReductionWitness {
        contained,
        generators,
    })
}

/// Existence of a nondegenerate symmetric associative bilinear form,
/// searched through symmetrizing functionals phi with phi(ab) = phi(ba).
/// For group algebras the coefficient-of-identity functional is returned
/// as the witness.
pub fn is_symmetric(alg: &Algebra, rng: &mut crate::rng::Rng) -> (bool, Option<Vec<u32>>) {
    let f = &alg.field;
    let d = alg.dim;
    let gram_invertible = |phi: &[u32]| -> bool {
        let mut gram = Mat::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = alg.basis_product(i, j);
                let mut v = 0u32;
                for (k, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        v = f.add(v, f.mul(c, phi[k]));
                    }
                }
                gram.set(i, j, v);
            }
        }
        gram.inverse(f).is_some()
    };
    if alg.tag == AlgebraTag::GroupAlgebra {
        // phi = coefficient of the group identity
        let unit_pos = alg.unit.iter().position(|&c| c != 0).unwrap();
        let mut phi = vec![0u32; d];
        phi[unit_pos] = 1;
        if gram_invertible(&phi) {
            return (true, Some(phi));
        }
    }
    // solve phi(ab) = phi(ba): linear conditions on phi
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..i {
            let ab = alg.basis_product(i, j);
            let ba = alg.basis_product(j, i);
            let row: Vec<u32> = (0..d).map(|k| f.sub(ab[k], ba[k])).collect();
            rows.push(row);
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(d)
    } else {
        kernel(f, &Mat::from_rows(rows))
    };
    if space.is_zero() {
        return (false, None);
    }
    // try basis functionals, then bounded random combinations, then (for
    // small search spaces) exhaustive enumeration
    for i in 0..space.dim() {
        let phi = space.basis.row(i).to_vec();
        if gram_invertible(&phi) {
            return (true, Some(phi));
        }
    }
    let qd = (f.q() as u64).checked_pow(space.dim() as u32);
    if let Some(total) = qd.filter(|&t| t <= 4096) {
        for code in 1..total {
            let mut c = code;
            let mut phi = vec![0u32; d];
            for bi in 0..space.dim() {
                let coef = (c % f.q() as u64) as u32;
                c /= f.q() as u64;
                if coef != 0 {
                    for k in 0..d {
                        phi[k] = f.add(phi[k], f.mul(coef, space.basis.get(bi, k)));
                    }
                }
            }
            if gram_invertible(&phi) {
                return (true, Some(phi));
            }
        }
        return (false, None);
    }
    for _ in 0..256 {
        let mut phi = vec![0u32; d];
        for bi in 0..space.dim() {
            let coef = f.random(rng);
            if coef != 0 {
                for k in 0..d {
                    phi[k] = f.add(phi[k], f.mul(coef, space.basis.get(bi, k)));
                }
            }
        }
        if gram_invertible(&phi) {
            return (true, Some(phi));
        }
    }
    (false, None)
}

/// Group-level surjection kG -> k(G/N) as an algebra surjection.
pub fn group_algebra_surjection(
    g: &FiniteGroup,
    qmap: &QuotientMap,
    source: &Arc<Algebra>,
    target: &Arc<Algebra>,
) -> Result<AlgebraSurjection> {
    let mut m = Mat::zero(target.dim, source.dim);
    for x in 0..g.order {
        m.set(qmap.fiber[x] as usize, x, 1);
    }
    AlgebraSurjection::new(source, target, m)
}

/// Restriction of kG -> k(G/N) to kG*beta for a normal p'-subgroup N:
/// a unital algebra isomorphism onto k(G/N), containing the principal
/// block. Returns (beta, basis of kG beta, iso matrix on block coords).
pub struct PrincipalBlockIso {
    pub beta: Vec<u32>,
    pub beta_summand: Subspace,
    /// target coords <- beta-summand coords
    pub matrix: Mat,
}

pub fn principal_block_iso_pprime(
    g: &FiniteGroup,
    n: &Subgroup,
    surj: &AlgebraSurjection,
    source: &Arc<Algebra>,
    target: &Arc<Algebra>,
) -> Result<PrincipalBlockIso> {
    let f = &source.field;
    let beta = beta_idempotent(g, n, source)?;
    // (1-n) g beta = 0 for all n, g
    for &x in &n.elements {
        for h in 0..g.order as u32 {
            let mut v = vec![0u32; source.dim];
            v[h as usize] = 1;
            let xh = g.op(x, h) as usize;
            v[xh] = f.sub(v[xh], 1);
            if source.mul_vec(&v, &beta).iter().any(|&c| c != 0) {
                return Err(Error::Invariant("(1-n) g beta != 0".into()));
            }
        }
    }
    let beta_summand = crate::linalg::image(f, &source.right_mult_mat(&beta));
    if beta_summand.dim() != target.dim {
        return Err(Error::Invariant(format!(
            "dim kGbeta = {} != |G/N| = {}",
            beta_summand.dim(),
            target.dim
        )));
    }
    // restriction matrix and bijectivity
    let mut m = Mat::zero(target.dim, beta_summand.dim());
    for j in 0..beta_summand.dim() {
        let img = surj.apply(f, beta_summand.basis.row(j));
        for (r, &c) in img.iter().enumerate() {
            m.set(r, j, c);
        }
    }
    if m.inverse(f).is_none() {
        return Err(Error::Invariant(
            "restriction to kG beta is not bijective".into(),
        ));
    }
    // multiplicative + unital on the summand
    for i in 0..beta_summand.dim() {
        for j in 0..beta_summand.dim() {
            let prod = source.mul_vec(beta_summand.basis.row(i), beta_summand.basis.row(j));
            let lhs = surj.apply(f, &prod);
            let rhs = target.mul_vec(
                &surj.apply(f, beta_summand.basis.row(i)),
                &surj.apply(f, beta_summand.basis.row(j)),
            );
            if lhs != rhs {
                return Err(Error::Invariant("restriction not multiplicative".into()));
            }
        }
    }
    if surj.apply(f, &beta) != target.unit {
        return Err(Error::Invariant("beta does not map to 1".into()));
    }
    Ok(PrincipalBlockIso {
        beta,
        beta_summand,
        matrix: m,
    })
}

/// Match blocks of A to blocks of A/I through a surjection: pi(e_i) must be
/// exactly one primitive central idempotent of the quotient.
pub fn block_correspondence(
    alg: &Arc<Algebra>,
    surj: &AlgebraSurjection,
    quotient: &Arc<Algebra>,
) -> Result<Vec<(usize, usize)>> {
    let f = &alg.field;
    let src_blocks = block_decompose(alg)?;
    let dst_blocks = block_decompose(quotient)?;
    if src_blocks.len() != dst_blocks.len() {
        return Err(Error::Invariant(format!(
            "block counts differ: {} vs {}",
            src_blocks.len(),
            dst_blocks.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut used = vec![false; dst_blocks.len()];
    for (i, b) in src_blocks.iter().enumerate() {
        let img = surj.apply(f, &b.idempotent);
        if img.iter().all(|&c| c == 0) {
            return Err(Error::Invariant(
                "block idempotent dies in the quotient".into(),
            ));
        }
        let j = dst_blocks
            .iter()
            .position(|d| d.idempotent == img)
            .ok_or_else(|| {
                Error::Invariant("image is not a primitive central idempotent".into())
            })?;
        if used[j] {
            return Err(Error::Invariant(
                "two blocks map to the same quotient block".into(),
            ));
        }
        used[j] = true;
        pairs.push((i, j));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;

    fn f2() -> Arc<Field> {
        Arc::new(Field::with_default_poly(2, 1).unwrap())
    }
    fn f3() -> Arc<Field> {
        Arc::new(Field::with_default_poly(3, 1).unwrap())
    }

    #[test]
    fn group_algebra_basics() {
        let c2 = group::cyclic(2).unwrap();
        let a = group_algebra(&c2, f2()).unwrap();
        assert_eq!(a.dim, 2);
        assert!(a.is_commutative());
        let d6 = group::dihedral(3).unwrap();
        let a = group_algebra(&d6, f2()).unwrap();
        assert_eq!(a.dim, 6);
        assert!(!a.is_commutative());
        let g = group::direct_product(&group::symmetric(3).unwrap(), &group::cyclic(3).unwrap())
            .unwrap();
        let a = group_algebra(&g, f3()).unwrap();
        assert_eq!(a.dim, 18);
    }

    #[test]
    fn center_of_group_algebras() {
        // abelian: center is everything
        let c4 = group::cyclic(4).unwrap();
        let a = group_algebra(&c4, f2()).unwrap();
        let (z, space) = center_of(&a).unwrap();
        assert_eq!(z.dim, 4);
        assert_eq!(space.dim(), 4);
        // kD6 over F2: three class sums
        let d6 = group::dihedral(3).unwrap();
        let a = group_algebra(&d6, f2()).unwrap();
        let (z, _) = center_of(&a).unwrap();
        assert_eq!(z.dim, 3);
        assert!(z.is_commutative());
        assert_eq!(d6.conjugacy_classes().len(), 3);
    }

    #[test]
    fn kernel_ideal_dims() {
        // G = C4, N = C2: dim 2
        let c4 = group::cyclic(4).unwrap();
        let a = group_algebra(&c4, f2()).unwrap();
        let n = c4.generated_subgroup(&[2]);
        let i = quotient_kernel_ideal(&c4, &n, &a).unwrap();
        assert_eq!(i.dim(), 2);
        // N trivial: 0
        let i0 = quotient_kernel_ideal(&c4, &c4.trivial_subgroup(), &a).unwrap();
        assert_eq!(i0.dim(), 0);
        // D12, N = Z: dim 6
        let d12 = group::dihedral(6).unwrap();
        let a = group_algebra(&d12, f2()).unwrap();
        let i = quotient_kernel_ideal(&d12, &d12.center(), &a).unwrap();
        assert_eq!(i.dim(), 6);
    }

    #[test]
    fn p_group_radical_basis() {
        let c2 = group::cyclic(2).unwrap();
        let a = group_algebra(&c2, f2()).unwrap();
        let j = radical_basis_p_group(&c2, &a).unwrap();
        assert_eq!(j.dim(), 1);
        // C2 x C2: dim 3
        let v4 = group::direct_product(&c2, &c2).unwrap();
        let a = group_algebra(&v4, f2()).unwrap();
        assert_eq!(radical_basis_p_group(&v4, &a).unwrap().dim(), 3);
        // trivial group: zero ideal
        let c1 = group::cyclic(1).unwrap();
        let a = group_algebra(&c1, f2()).unwrap();
        assert_eq!(radical_basis_p_group(&c1, &a).unwrap().dim(), 0);
        // C3 at p=2 is not a 2-group
        let c3 = group::cyclic(3).unwrap();
        let a = group_algebra(&c3, f2()).unwrap();
        assert!(radical_basis_p_group(&c3, &a).is_err());
    }

    #[test]
    fn quotient_algebra_c4_mod_c2() {
        let c4 = group::cyclic(4).unwrap();
        let a = group_algebra(&c4, f2()).unwrap();
        let n = c4.generated_subgroup(&[2]);
        let i = quotient_kernel_ideal(&c4, &n, &a).unwrap();
        let (q, surj) = quotient_algebra(&a, &i).unwrap();
        assert_eq!(q.dim, 2);
        assert_eq!(surj.kernel.dim(), 2);
        // structurally kC2: commutative with (x+1)^2 = 0 for the nonunit coset
        assert!(q.is_commutative());
        // A/0 = A
        let (q0, _) = quotient_algebra(&a, &Ideal::zero(&a)).unwrap();
        assert_eq!(q0.dim, 4);
    }

    #[test]
    fn beta_idempotents() {
        // N trivial: beta = 1
        let s3 = group::symmetric(3).unwrap();
        let a = group_algebra(&s3, f2()).unwrap();
        let b = beta_idempotent(&s3, &s3.trivial_subgroup(), &a).unwrap();
        assert_eq!(b, a.unit);
        // G = S3, N = A3, p = 2: beta = 1 + a + a^2 supported on A3
        let a3 =
            s3.generated_subgroup(&[s3.labels.iter().position(|l| l == "(1 2 3)").unwrap() as u32]);
        assert_eq!(a3.order(), 3);
        let b = beta_idempotent(&s3, &a3, &a).unwrap();
        let support: Vec<usize> = b
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(support.len(), 3);
        assert!(a.is_idempotent(&b) && a.is_central(&b));
        // C6, N = C3, p = 2
        let c6 = group::cyclic(6).unwrap();
        let a = group_algebra(&c6, f2()).unwrap();
        let c3 = c6.generated_subgroup(&[2]);
        let b = beta_idempotent(&c6, &c3, &a).unwrap();
        assert_eq!(b.iter().filter(|&&c| c != 0).count(), 3);
        // p divides |N| rejected
        let c2 = c6.generated_subgroup(&[3]);
        assert!(beta_idempotent(&c6, &c2, &a).is_err());
    }

    #[test]
    fn blocks_are_symmetric_with_local_centers() {
        let d6 = group::dihedral(3).unwrap();
        let a = group_algebra(&d6, f2()).unwrap();
        let mut rng = crate::rng::Rng::new(8);
        for b in block_decompose(&a).unwrap() {
            let (ok, witness) = is_symmetric(&b.algebra, &mut rng);
            assert!(ok && witness.is_some());
            // the center of a block is local: its radical has codimension 1
            let (z, z_space) = center_of(&b.algebra).unwrap();
            let j = crate::module::radical_subspace(&b.algebra).unwrap();
            let zj = z_space.intersect(&b.algebra.field, &j).unwrap();
            assert_eq!(z.dim - zj.dim(), 1);
        }
    }

    #[test]
    fn symmetric_forms() {
        let d6 = group::dihedral(3).unwrap();
        let a = group_algebra(&d6, f2()).unwrap();
        let mut rng = crate::rng::Rng::new(3);
        let (ok, phi) = is_symmetric(&a, &mut rng);
        assert!(ok);
        // witness is the coefficient-of-identity functional
        assert_eq!(phi.unwrap()[d6.identity as usize], 1);
        // upper triangular 2x2 over F2: e11, e12, e22
        let f = f2();
        let d = 3;
        let mut structure = vec![0u32; 27];
        let mut set = |i: usize, j: usize, k: usize| structure[(i * d + j) * d + k] = 1;
        // basis: 0 = e11, 1 = e12, 2 = e22
        set(0, 0, 0);
        set(0, 1, 1);
        set(1, 2, 1);
        set(2, 2, 2);
        let unit = vec![1, 0, 1];
        let ut2 = Algebra::new(f, 3, structure, unit, AlgebraTag::Custom).unwrap();
        let (ok, _) = is_symmetric(&ut2, &mut rng);
        assert!(!ok);
    }
}
