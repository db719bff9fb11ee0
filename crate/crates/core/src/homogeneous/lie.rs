use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// A finite-dimensional real Lie algebra given by structure constants
/// `[Xᵢ, Xⱼ] = Σₖ c^k_ij Xₖ`.
///
/// Construction checks antisymmetry and the Jacobi identity.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData<S> {
    dim: usize,
    labels: Vec<String>,
    // c[(i * dim + j) * dim + k] = c^k_ij
    c: Vec<S>,
    // Nonzero (k, c^k_ij) per ordered pair, for fast sums.
    sparse: Vec<Vec<(usize, S)>>,
    realization: Option<Vec<Matrix<S>>>,
}

impl<S: Scalar> LieAlgebraData<S> {
    /// From a dense closure `c(i, j, k) = c^k_ij`.
    pub fn from_fn(labels: Vec<String>, c: impl Fn(usize, usize, usize) -> S, tol: &Tolerance) -> Result<Self> {
        let dim = labels.len();
        let mut dense = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    dense.push(c(i, j, k));
                }
            }
        }
        Self::from_dense(labels, dense, tol)
    }

    /// From the nonzero brackets `[Xᵢ, Xⱼ] = Σ coeffs`; the pair `(j, i)` is
    /// filled in by antisymmetry. Listing both orders with inconsistent
    /// values is an error.
    pub fn from_brackets(labels: Vec<String>, brackets: &[(usize, usize, Vec<(usize, S)>)], tol: &Tolerance) -> Result<Self> {
        let dim = labels.len();
        let mut dense = vec![S::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Invalid(alloc::format!("bracket index out of range: ({}, {})", i + 1, j + 1)));
            }
            let mut v = vec![S::zero(); dim];
            for (k, s) in coeffs {
                if *k >= dim {
                    return Err(Error::Invalid(alloc::format!("bracket target {} out of range", k + 1)));
                }
                v[*k] = v[*k].clone() + s.clone();
            }
            for k in 0..dim {
                let fwd = (i * dim + j) * dim + k;
                let bwd = (j * dim + i) * dim + k;
                if seen[j * dim + i] && !(dense[bwd].clone() + v[k].clone()).is_negligible(tol) {
                    return Err(Error::Invalid(alloc::format!(
                        "brackets ({0},{1}) and ({1},{0}) are not antisymmetric",
                        i + 1,
                        j + 1
                    )));
                }
                dense[fwd] = v[k].clone();
                dense[bwd] = -v[k].clone();
            }
            seen[i * dim + j] = true;
        }
        Self::from_dense(labels, dense, tol)
    }

    fn from_dense(labels: Vec<String>, c: Vec<S>, tol: &Tolerance) -> Result<Self> {
        let dim = labels.len();
        assert_eq!(c.len(), dim * dim * dim);
        for i in 0..dim {
            for j in 0..=i {
                for k in 0..dim {
                    let a = &c[(i * dim + j) * dim + k];
                    let b = &c[(j * dim + i) * dim + k];
                    if !(a.clone() + b.clone()).is_negligible(tol) {
                        return Err(Error::Invalid(alloc::format!(
                            "structure constants not antisymmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let sparse = (0..dim * dim)
            .map(|p| (0..dim).filter_map(|k| {
                let v = &c[p * dim + k];
                (!v.is_zero()).then(|| (k, v.clone()))
            }).collect())
            .collect();
        let out = LieAlgebraData { dim, labels, c, sparse, realization: None };
        if let Some((i, j, k)) = out.jacobi_violation(tol) {
            return Err(Error::Jacobi { i, j, k });
        }
        Ok(out)
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| alloc::format!("T{i}")).collect();
        Self::from_dense(labels, vec![S::zero(); n * n * n], &Tolerance::default()).expect("abelian algebra is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Matrix realization, when the algebra was built from matrices.
    pub fn realization(&self) -> Option<&[Matrix<S>]> {
        self.realization.as_deref()
    }

    pub(crate) fn set_realization(&mut self, mats: Vec<Matrix<S>>) {
        self.realization = Some(mats);
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(k, c^k_ij)` for the pair `(i, j)`.
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, c) in self.bracket_terms(i, j) {
                    out[*k] = out[*k].clone() + w.clone() * c.clone();
                }
            }
        }
        out
    }

    /// `ad(x)` as a matrix acting on coordinate columns.
    pub fn ad(&self, x: &[S]) -> Matrix<S> {
        let mut m = Matrix::<S>::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.bracket_terms(i, j) {
                    m[(*k, j)] = m[(*k, j)].clone() + xi.clone() * c.clone();
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_violation(&self, tol: &Tolerance) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![S::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, cl) in self.bracket_terms(a, b) {
                            for (m, cm) in self.bracket_terms(*l, c) {
                                acc[*m] = acc[*m].clone() + cl.clone() * cm.clone();
                            }
                        }
                    }
                    if acc.iter().any(|v| !v.is_negligible(tol)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Killing form `B(Xᵢ, Xⱼ) = tr(ad Xᵢ ad Xⱼ)`.
    pub fn killing_form(&self) -> Matrix<S> {
        let n = self.dim;
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                // Σ_{k,l} c^k_{il} c^l_{jk}
                let mut acc = S::zero();
                for l in 0..n {
                    for (k, cik) in self.bracket_terms(i, l) {
                        let v = self.constant(j, *k, l);
                        if !v.is_zero() {
                            acc = acc + cik.clone() * v.clone();
                        }
                    }
                }
                b[(i, j)] = acc.clone();
                b[(j, i)] = acc;
            }
        }
        b
    }

    /// Trace form `tr(MᵢMⱼ)` of the matrix realization.
    pub fn trace_form(&self) -> Option<Matrix<S>> {
        let mats = self.realization.as_ref()?;
        let n = self.dim;
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = mats[i].mul(&mats[j]).trace();
                b[(i, j)] = v.clone();
                b[(j, i)] = v;
            }
        }
        Some(b)
    }

    /// `tr ad Xᵢ` for each basis element.
    pub fn trace_vector(&self) -> Vec<S> {
        (0..self.dim)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.dim {
                    acc = acc + self.constant(i, j, j).clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_unimodular(&self, tol: &Tolerance) -> bool {
        self.trace_vector().iter().all(|t| t.is_negligible(tol))
    }

    /// `true` when the span of `vectors` is closed under the bracket.
    pub fn is_subalgebra(&self, vectors: &[Vec<S>], tol: &Tolerance) -> bool {
        for a in 0..vectors.len() {
            for b in a + 1..vectors.len() {
                let br = self.bracket(&vectors[a], &vectors[b]);
                if linalg::coordinates(vectors, &br, tol).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Structure constants in a new basis (given by coordinate vectors).
    pub fn change_basis(&self, basis: &[Vec<S>], labels: Vec<String>, tol: &Tolerance) -> Result<Self> {
        let n = self.dim;
        if basis.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: basis.len() });
        }
        let p = Matrix::from_columns(basis, n);
        let p_inv = p.inverse(tol).ok_or_else(|| Error::Degenerate("basis vectors are dependent".into()))?;
        let mut dense = vec![S::zero(); n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                let coords = p_inv.mul_vec(&self.bracket(&basis[a], &basis[b]));
                for k in 0..n {
                    dense[(a * n + b) * n + k] = coords[k].clone();
                    dense[(b * n + a) * n + k] = -coords[k].clone();
                }
            }
        }
        let mut out = Self::from_dense(labels, dense, tol)?;
        if let Some(mats) = &self.realization {
            let new_mats = basis
                .iter()
                .map(|v| {
                    let mut m = Matrix::zeros(mats[0].rows(), mats[0].cols());
                    for (c, g) in v.iter().zip(mats) {
                        if !c.is_zero() {
                            m = m.add(&g.scale(c));
                        }
                    }
                    m
                })
                .collect();
            out.realization = Some(new_mats);
        }
        Ok(out)
    }

    /// `self ⊕ other`, with `other`'s basis placed after `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let off = self.dim;
        let mut dense = vec![S::zero(); n * n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.bracket_terms(i, j) {
                    dense[(i * n + j) * n + k] = c.clone();
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for (k, c) in other.bracket_terms(i, j) {
                    dense[((i + off) * n + j + off) * n + k + off] = c.clone();
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut out = Self::from_dense(labels, dense, &Tolerance::default()).expect("direct sum of Lie algebras");
        if let (Some(a), Some(b)) = (&self.realization, &other.realization) {
            let (ra, rb) = (a[0].rows(), b[0].rows());
            let block = |m: &Matrix<S>, at: usize| {
                let mut out = Matrix::zeros(ra + rb, ra + rb);
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        out[(i + at, j + at)] = m[(i, j)].clone();
                    }
                }
                out
            };
            let mut mats: Vec<Matrix<S>> = a.iter().map(|m| block(m, 0)).collect();
            mats.extend(b.iter().map(|m| block(m, ra)));
            out.realization = Some(mats);
        }
        out
    }

    /// Basis of `{X : [X, h] = 0 for all h}`.
    pub fn centralizer(&self, h_basis: &[Vec<S>], tol: &Tolerance) -> Vec<Vec<S>> {
        if h_basis.is_empty() {
            return (0..self.dim).map(|i| self.basis_vector(i)).collect();
        }
        let blocks: Vec<Matrix<S>> = h_basis.iter().map(|h| self.ad(h)).collect();
        Matrix::vstack(&blocks).nullspace(tol)
    }
}

/// Structure constants of the span of linearly independent matrices,
/// which must be closed under the commutator.
pub fn lie_from_matrices<S: Scalar>(labels: Vec<String>, mats: Vec<Matrix<S>>, tol: &Tolerance) -> Result<LieAlgebraData<S>> {
    let n = mats.len();
    if labels.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
    }
    if n == 0 {
        return Ok(LieAlgebraData::abelian(0));
    }
    let size = mats[0].rows();
    if mats.iter().any(|m| m.rows() != size || m.cols() != size) {
        return Err(Error::Invalid("matrices of different sizes".into()));
    }
    let vecs: Vec<Vec<S>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let system = Matrix::from_columns(&vecs, size * size);
    if system.rank(tol) != n {
        return Err(Error::Degenerate("matrices are linearly dependent".into()));
    }
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let comm = mats[i].commutator(&mats[j]);
            let coords = system.solve(comm.entries(), tol).ok_or(Error::NotClosed { i, j })?;
            let terms: Vec<(usize, S)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_negligible(tol))
                .collect();
            if !terms.is_empty() {
                brackets.push((i, j, terms));
            }
        }
    }
    let mut out = LieAlgebraData::from_brackets(labels, &brackets, tol)?;
    out.set_realization(mats);
    Ok(out)
}

/// `label1, label2, …` helper.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| {
        let mut s = prefix.to_string();
        s.push_str(&i.to_string());
        s
    }).collect()
}
