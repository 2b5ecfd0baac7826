//! Dense exact linear algebra over a finite field.
//!
//! Matrices are row-major; module actions multiply column vectors from the
//! left. Subspaces are kept in reduced row-echelon form so that equality of
//! subspaces is entry-wise equality of their basis matrices.

use crate::error::{Error, Result};
use crate::field::Field;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        debug_assert!(rows.iter().all(|v| v.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Column vector from a slice.
    pub fn col_vec(v: &[u32]) -> Mat {
        Mat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: u32) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, f: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    /// Apply to a column vector.
    pub fn apply(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0u32; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(a, v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Stack vertically: [self; other].
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stack horizontally: [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Power of a square matrix.
    pub fn pow(&self, f: &Field, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Exact inverse of a square matrix, if invertible.
    pub fn inverse(&self, f: &Field) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let (red, _, pivots) = rref(f, &aug);
        // invertible iff the pivots are exactly the left half
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn rank(&self, f: &Field) -> usize {
        rref(f, self).1
    }
}

/// Reduced row-echelon form; returns (rref, rank, pivot columns).
pub fn rref(f: &Field, m: &Mat) -> (Mat, usize, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut piv = None;
        for i in r..rows {
            if a.get(i, c) != 0 {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        if piv != r {
            for j in 0..cols {
                let t = a.get(r, j);
                a.set(r, j, a.get(piv, j));
                a.set(piv, j, t);
            }
        }
        let inv = f.inv(a.get(r, c));
        for j in c..cols {
            a.set(r, j, f.mul(inv, a.get(r, j)));
        }
        for i in 0..rows {
            if i != r {
                let factor = a.get(i, c);
                if factor != 0 {
                    for j in c..cols {
                        let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, r, pivots)
}

/// A subspace of F^n held as an RREF row basis with no zero rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Canonicalize a spanning set of row vectors.
    pub fn from_span(f: &Field, span: &Mat) -> Subspace {
        let (red, rank, _) = rref(f, span);
        let mut basis = Mat::zero(rank, span.cols);
        basis.data.copy_from_slice(&red.data[..rank * span.cols]);
        Subspace {
            ambient: span.cols,
            basis,
        }
    }

    pub fn from_vectors(f: &Field, vs: &[Vec<u32>], ambient: usize) -> Subspace {
        if vs.is_empty() {
            return Subspace::zero(ambient);
        }
        Subspace::from_span(f, &Mat::from_rows(vs.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut piv = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let j = self
                .basis
                .row(i)
                .iter()
                .position(|&x| x != 0)
                .expect("no zero rows in basis");
            piv.push(j);
        }
        piv
    }

    /// Reduce a vector modulo this subspace (canonical coset representative).
    pub fn reduce_vec(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (i, &c) in self.pivot_cols().iter().enumerate() {
            let factor = v[c];
            if factor != 0 {
                for j in 0..self.ambient {
                    v[j] = f.sub(v[j], f.mul(factor, self.basis.get(i, j)));
                }
            }
        }
        v
    }

    pub fn contains_vec(&self, f: &Field, v: &[u32]) -> bool {
        self.reduce_vec(f, v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, f: &Field, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vec(f, other.basis.row(i)))
    }

    /// Coordinates of `v` in this RREF basis, if `v` lies in the subspace.
    pub fn coords_of(&self, f: &Field, v: &[u32]) -> Option<Vec<u32>> {
        let piv = self.pivot_cols();
        let coords: Vec<u32> = piv.iter().map(|&c| v[c]).collect();
        // check the remainder is zero
        let mut rem = v.to_vec();
        for (i, &x) in coords.iter().enumerate() {
            if x != 0 {
                for j in 0..self.ambient {
                    rem[j] = f.sub(rem[j], f.mul(x, self.basis.get(i, j)));
                }
            }
        }
        if rem.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "{} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(Subspace::from_span(f, &self.basis.vstack(&other.basis)))
    }

    /// Intersection via kernel of [U^T | -V^T] on stacked coefficients.
    pub fn intersect(&self, f: &Field, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "{} vs {}",
                self.ambient, other.ambient
            )));
        }
        let (u, v) = (self.dim(), other.dim());
        if u == 0 || v == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // coefficient vectors (a, b) with a*U = b*V
        let big = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().neg(f));
        let ker = kernel(f, &big);
        let mut rows = Vec::new();
        for i in 0..ker.dim() {
            let ab = ker.basis.row(i);
            let mut w = vec![0u32; self.ambient];
            for (k, &ak) in ab[..u].iter().enumerate() {
                if ak != 0 {
                    for j in 0..self.ambient {
                        w[j] = f.add(w[j], f.mul(ak, self.basis.get(k, j)));
                    }
                }
            }
            rows.push(w);
        }
        Ok(Subspace::from_vectors(f, &rows, self.ambient))
    }

    /// Canonical complement coordinates: indices not used as pivots.
    pub fn free_cols(&self) -> Vec<usize> {
        let piv = self.pivot_cols();
        (0..self.ambient).filter(|j| !piv.contains(j)).collect()
    }
}

/// Incremental row-echelon accumulator for closure computations: rows are
/// kept echelon (not fully reduced); canonicalize once at the end.
pub struct EchelonBasis {
    pub ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> EchelonBasis {
        EchelonBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a vector against the current rows.
    pub fn reduce(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &rv) in v.iter_mut().zip(row.iter()) {
                    *x = f.sub(*x, f.mul(c, rv));
                }
            }
        }
        v
    }

    /// Insert a vector; returns the reduced remainder if it was new.
    pub fn insert(&mut self, f: &Field, v: &[u32]) -> Option<Vec<u32>> {
        let mut v = self.reduce(f, v);
        let p = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep rows ordered by pivot
        let at = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.pivots.len());
        self.rows.insert(at, v.clone());
        self.pivots.insert(at, p);
        Some(v)
    }

    pub fn contains(&self, f: &Field, v: &[u32]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Canonical RREF subspace.
    pub fn into_subspace(self, f: &Field) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::zero(self.ambient);
        }
        Subspace::from_span(f, &Mat::from_rows(self.rows))
    }
}

/// Right kernel {x : A x = 0} as a subspace of F^cols.
pub fn kernel(f: &Field, a: &Mat) -> Subspace {
    let (red, rank, pivots) = rref(f, a);
    let free: Vec<usize> = (0..a.cols).filter(|j| !pivots.contains(j)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u32; a.cols];
        v[fc] = 1;
        for (ri, &pc) in pivots.iter().enumerate().take(rank) {
            v[pc] = f.neg(red.get(ri, fc));
        }
        rows.push(v);
    }
    Subspace::from_vectors(f, &rows, a.cols)
}

/// Column space of A as a subspace of F^rows.
pub fn image(f: &Field, a: &Mat) -> Subspace {
    Subspace::from_span(f, &a.transpose())
}

/// Solve A x = b for a single column b. Returns a particular solution;
/// the full solution set is particular + kernel(A).
pub fn solve(f: &Field, a: &Mat, b: &[u32]) -> Result<Vec<u32>> {
    assert_eq!(a.rows, b.len());
    let aug = a.hstack(&Mat::col_vec(b));
    let (red, _, pivots) = rref(f, &aug);
    if pivots.contains(&a.cols) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![0u32; a.cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = red.get(ri, a.cols);
    }
    Ok(x)
}

/// Factored solver for repeated systems A x = b against a fixed A: the
/// row reduction is done once and replayed through the recorded transform.
pub struct Solver {
    cols: usize,
    transform: Mat,
    pivots: Vec<usize>,
    rank: usize,
}

impl Solver {
    pub fn new(f: &Field, a: &Mat) -> Solver {
        let aug = a.hstack(&Mat::identity(a.rows));
        let (red, _, _) = rref(f, &aug);
        // recover pivots of the left block and the elementary transform
        let mut rref_left = Mat::zero(a.rows, a.cols);
        let mut transform = Mat::zero(a.rows, a.rows);
        for i in 0..a.rows {
            for j in 0..a.cols {
                rref_left.set(i, j, red.get(i, j));
            }
            for j in 0..a.rows {
                transform.set(i, j, red.get(i, a.cols + j));
            }
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for i in 0..a.rows {
            if let Some(j) = (0..a.cols).find(|&j| rref_left.get(i, j) != 0) {
                pivots.push(j);
                rank += 1;
            }
        }
        Solver {
            cols: a.cols,
            transform,
            pivots,
            rank,
        }
    }

    /// A particular solution of A x = b, or Inconsistent.
    pub fn solve(&self, f: &Field, b: &[u32]) -> Result<Vec<u32>> {
        let tb = self.transform.apply(f, b);
        // zero rows of the rref must have zero transformed rhs
        for i in self.rank..tb.len() {
            if tb[i] != 0 {
                return Err(Error::Inconsistent);
            }
        }
        // free variables are zero, so each pivot variable reads directly
        // off the reduced row
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[row];
        }
        Ok(x)
    }
}

/// Solve A X = B column-by-column.
pub fn solve_mat(f: &Field, a: &Mat, b: &Mat) -> Result<Mat> {
    assert_eq!(a.rows, b.rows);
    let mut out = Mat::zero(a.cols, b.cols);
    let aug = a.hstack(b);
    let (red, _, pivots) = rref(f, &aug);
    if pivots.iter().any(|&p| p >= a.cols) {
        return Err(Error::Inconsistent);
    }
    for j in 0..b.cols {
        for (ri, &pc) in pivots.iter().enumerate() {
            out.set(pc, j, red.get(ri, a.cols + j));
        }
    }
    Ok(out)
}
