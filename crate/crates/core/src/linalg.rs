//! Small dense matrices over a [`Scalar`] field.
//!
//! Elimination uses exact pivots for rationals and partial pivoting with a
//! tolerance for floats. Eigenvalues always go through `nalgebra` in double
//! precision; exact callers rationalize and then verify by kernel dimension.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Counts of positive, negative and zero squares of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { S::zero() })
    }

    /// The matrix unit with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = S::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn max_abs(&self) -> S {
        S::max_abs(self.data.iter())
    }

    pub fn is_negligible(&self, tol: &Tolerance) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn is_symmetric(&self, tol: &Tolerance) -> bool {
        self.is_square() && self.sub(&self.transpose()).is_negligible(tol)
    }

    /// Stack `blocks` vertically. All blocks need the same column count.
    pub fn vstack(blocks: &[Matrix<S>]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    fn pivot_threshold(&self, tol: &Tolerance) -> Tolerance {
        if S::EXACT {
            *tol
        } else {
            let scale = libm::fmax(1.0, self.max_abs().to_f64());
            Tolerance::absolute(tol.abs_tol * scale)
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, tol: &Tolerance) -> (Self, Vec<usize>) {
        let thr = self.pivot_threshold(tol);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                let v = &m[(i, c)];
                if v.is_negligible(&thr) {
                    continue;
                }
                if S::EXACT {
                    best = Some(i);
                    break;
                }
                if best.is_none_or(|b| v.abs().to_f64() > m[(b, c)].abs().to_f64()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else {
                for i in r..m.rows {
                    m[(i, c)] = S::zero();
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m[(r, j)].clone();
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - factor.clone() * rv;
                    m[(i, j)] = v;
                }
                m[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self, tol: &Tolerance) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref(tol);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `self·x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[S], tol: &Tolerance) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref(tol);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        // Float elimination can hide a tiny inconsistency below the pivot
        // threshold; confirm the residual.
        if !S::EXACT {
            let res = self.mul_vec(&x);
            let scale = 1.0 + S::max_abs(b.iter()).to_f64();
            let t = Tolerance::absolute(tol.abs_tol * 1e3 * scale);
            if res.iter().zip(b).any(|(u, v)| !(u.clone() - v.clone()).is_negligible(&t)) {
                return None;
            }
        }
        Some(x)
    }

    pub fn inverse(&self, tol: &Tolerance) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let mut best: Option<usize> = None;
            for i in c..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                if S::EXACT {
                    best = Some(i);
                    break;
                }
                if best.is_none_or(|b| m[(i, c)].abs().to_f64() > m[(b, c)].abs().to_f64()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { return S::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            let inv = piv.recip();
            for i in c + 1..n {
                let factor = m[(i, c)].clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(i, j)].clone() - factor.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Inertia of a symmetric matrix by congruence diagonalization.
    ///
    /// A zero diagonal with a nonzero off-diagonal entry `a_ij` is repaired
    /// by the substitution `e_i ↦ e_i + e_j`, which leaves `2a_ij` (or
    /// `2a_ij + a_jj`) on the diagonal.
    pub fn inertia(&self, tol: &Tolerance) -> Inertia {
        assert!(self.is_square());
        let thr = self.pivot_threshold(tol);
        let mut m = self.clone();
        let n = m.rows;
        let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let mut pivot = None;
            for &i in &active {
                if !m[(i, i)].is_negligible(&thr) {
                    if S::EXACT {
                        pivot = Some(i);
                        break;
                    }
                    if pivot.is_none_or(|p: usize| m[(i, i)].abs().to_f64() > m[(p, p)].abs().to_f64()) {
                        pivot = Some(i);
                    }
                }
            }
            if pivot.is_none() {
                let mut pair = None;
                'outer: for &i in &active {
                    for &j in &active {
                        if i != j && !m[(i, j)].is_negligible(&thr) {
                            pair = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // Row and column operation: e_i += e_j.
                for k in 0..n {
                    let v = m[(i, k)].clone() + m[(j, k)].clone();
                    m[(i, k)] = v;
                }
                for k in 0..n {
                    let v = m[(k, i)].clone() + m[(k, j)].clone();
                    m[(k, i)] = v;
                }
                pivot = Some(i);
            }
            let p = pivot.unwrap_or(active[0]);
            let d = m[(p, p)].clone();
            match d.sign(&Tolerance::absolute(0.0)) {
                1 => out.positive += 1,
                _ => out.negative += 1,
            }
            let inv = d.recip();
            active.retain(|&x| x != p);
            for &i in &active {
                let factor = m[(i, p)].clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = m[(i, j)].clone() - factor.clone() * m[(p, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    /// Complex eigenvalues in double precision as `(re, im)` pairs.
    pub fn eigenvalues_f64(&self) -> Vec<(f64, f64)> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Vec::new();
        }
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| self[(i, j)].to_f64());
        m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
    }

    /// Distinct real eigenvalues.
    ///
    /// Float eigenvalues are clustered; for exact scalars each cluster is
    /// rationalized and accepted only if `self − λ` is singular exactly.
    pub fn real_eigenvalues(&self, tol: &Tolerance) -> EigenSummary<S> {
        let raw = self.eigenvalues_f64();
        let scale = libm::fmax(1.0, self.max_abs().to_f64());
        let cluster = libm::fmax(1e-6, tol.abs_tol * 10.0) * scale;
        let mut reals: Vec<f64> = Vec::new();
        let mut complex = 0;
        for (re, im) in raw {
            if libm::fabs(im) > cluster {
                complex += 1;
                continue;
            }
            if !reals.iter().any(|r| libm::fabs(r - re) <= cluster) {
                reals.push(re);
            }
        }
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
        let mut exact = Vec::new();
        let mut irrational = Vec::new();
        let n = self.rows;
        for r in reals {
            if S::EXACT {
                let candidate = crate::scalar::rationalize(r, 10_000, 1e-7)
                    .map(|q| S::from_rational(&q))
                    .filter(|lam| {
                        let shifted = self.sub(&Self::identity(n).scale(lam));
                        shifted.rank(tol) < n
                    });
                match candidate {
                    Some(lam) => exact.push(lam),
                    None => irrational.push(r),
                }
            } else {
                exact.push(S::from_f64(r).unwrap_or_else(S::zero));
            }
        }
        EigenSummary { values: exact, irrational, complex }
    }
}

/// Result of [`Matrix::real_eigenvalues`].
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSummary<S> {
    /// Real eigenvalues representable in the scalar field, ascending.
    pub values: Vec<S>,
    /// Real eigenvalues with no exact representation (exact mode only).
    pub irrational: Vec<f64>,
    /// Number of eigenvalues with nonzero imaginary part.
    pub complex: usize,
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates<S: Scalar>(basis: &[Vec<S>], v: &[S], tol: &Tolerance) -> Option<Vec<S>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_negligible(tol)) { Some(Vec::new()) } else { None };
    }
    Matrix::from_columns(basis, v.len()).solve(v, tol)
}

/// `true` when the vectors are linearly independent.
pub fn independent<S: Scalar>(vectors: &[Vec<S>], tol: &Tolerance) -> bool {
    match vectors.first() {
        None => true,
        Some(first) => Matrix::from_columns(vectors, first.len()).rank(tol) == vectors.len(),
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

pub fn axpy<S: Scalar>(alpha: &S, x: &[S], y: &mut [S]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + alpha.clone() * xi.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn exact() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        let ns = m.nullspace(&exact());
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(7), q(4)]]);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse(&exact()).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(sing.det(), q(0));
        assert!(sing.inverse(&exact()).is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(m.solve(&[q(1), q(3)], &exact()).is_none());
        let x = m.solve(&[q(1), q(2)], &exact()).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        // Hyperbolic plane plus a negative square.
        let m = Matrix::from_rows(vec![
            vec![q(0), q(1), q(0)],
            vec![q(1), q(0), q(0)],
            vec![q(0), q(0), q(-3)],
        ]);
        assert_eq!(m.inertia(&exact()), Inertia { positive: 1, negative: 2, zero: 0 });
        let f = m.to_f64();
        assert_eq!(f.inertia(&Tolerance::default()), Inertia { positive: 1, negative: 2, zero: 0 });
    }

    #[test]
    fn inertia_counts_kernel() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert_eq!(m.inertia(&exact()), Inertia { positive: 1, negative: 0, zero: 1 });
    }

    #[test]
    fn exact_eigenvalues_are_verified() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(0), q(-3)]]);
        let e = m.real_eigenvalues(&exact());
        assert_eq!(e.values, vec![q(-3), q(2)]);
        let r = Matrix::from_rows(vec![vec![q(0), q(2)], vec![q(1), q(0)]]);
        let e = r.real_eigenvalues(&exact());
        assert!(e.values.is_empty());
        assert_eq!(e.irrational.len(), 2);
        let rot = Matrix::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        assert_eq!(rot.real_eigenvalues(&exact()).complex, 2);
    }
}
