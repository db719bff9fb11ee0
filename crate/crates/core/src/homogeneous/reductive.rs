use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::dga::apply_derivation;
use super::lie::LieAlgebraData;
use crate::error::{Error, Result};
use crate::exterior::{endo_action, Frame, KForm};
use crate::linalg::{self, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// A reductive decomposition `g = h ⊕ m` with `[h, m] ⊆ m`.
///
/// `h` and `m` are stored as coordinate vectors in `g`. The structure
/// constants are also kept in the adapted basis (`h` first, then `m`), and
/// the isotropy action of each `h` basis element on `m` as a matrix acting
/// on `m`-coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductiveSpace<S> {
    g: LieAlgebraData<S>,
    h: Vec<Vec<S>>,
    m: Vec<Vec<S>>,
    adapted: LieAlgebraData<S>,
    isotropy: Vec<Matrix<S>>,
}

impl<S: Scalar> ReductiveSpace<S> {
    pub fn new(g: LieAlgebraData<S>, h: Vec<Vec<S>>, m: Vec<Vec<S>>, tol: &Tolerance) -> Result<Self> {
        let n = g.dim();
        if h.len() + m.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: h.len() + m.len() });
        }
        if h.iter().chain(&m).any(|v| v.len() != n) {
            return Err(Error::Invalid("basis vector of wrong length".into()));
        }
        let mut basis = h.clone();
        basis.extend(m.iter().cloned());
        if !linalg::independent(&basis, tol) {
            return Err(Error::Degenerate("h and m do not span g".into()));
        }
        let mut labels: Vec<String> = (1..=h.len()).map(|i| alloc::format!("h{i}")).collect();
        labels.extend((1..=m.len()).map(|i| alloc::format!("m{i}")));
        let adapted = g.change_basis(&basis, labels, tol)?;
        let hd = h.len();
        let (adapted, isotropy) = Self::check_adapted(adapted, hd, tol)?;
        Ok(ReductiveSpace { g, h, m, adapted, isotropy })
    }

    /// From structure constants already in an adapted basis: the first
    /// `h_dim` basis elements span `h`, the rest `m`.
    pub fn from_adapted(adapted: LieAlgebraData<S>, h_dim: usize, tol: &Tolerance) -> Result<Self> {
        let n = adapted.dim();
        if h_dim > n {
            return Err(Error::DimensionMismatch { expected: n, found: h_dim });
        }
        let h = (0..h_dim).map(|i| adapted.basis_vector(i)).collect();
        let m = (h_dim..n).map(|i| adapted.basis_vector(i)).collect();
        let (adapted, isotropy) = Self::check_adapted(adapted, h_dim, tol)?;
        Ok(ReductiveSpace { g: adapted.clone(), h, m, adapted, isotropy })
    }

    fn check_adapted(adapted: LieAlgebraData<S>, hd: usize, tol: &Tolerance) -> Result<(LieAlgebraData<S>, Vec<Matrix<S>>)> {
        let n = adapted.dim();
        for a in 0..hd {
            for b in a + 1..hd {
                if adapted.bracket_terms(a, b).iter().any(|(k, c)| *k >= hd && !c.is_negligible(tol)) {
                    return Err(Error::NotClosed { i: a, j: b });
                }
            }
        }
        for a in 0..hd {
            for j in hd..n {
                if adapted.bracket_terms(a, j).iter().any(|(k, c)| *k < hd && !c.is_negligible(tol)) {
                    return Err(Error::NotReductive(alloc::format!(
                        "[h{}, m{}] has a component in h",
                        a + 1,
                        j - hd + 1
                    )));
                }
            }
        }
        let md = n - hd;
        let isotropy = (0..hd)
            .map(|a| {
                let mut m = Matrix::zeros(md, md);
                for j in hd..n {
                    for (k, c) in adapted.bracket_terms(a, j) {
                        if *k >= hd {
                            m[(k - hd, j - hd)] = c.clone();
                        }
                    }
                }
                m
            })
            .collect();
        Ok((adapted, isotropy))
    }

    pub fn algebra(&self) -> &LieAlgebraData<S> {
        &self.g
    }

    pub fn h_basis(&self) -> &[Vec<S>] {
        &self.h
    }

    pub fn m_basis(&self) -> &[Vec<S>] {
        &self.m
    }

    /// Structure constants in the basis `(h, m)`.
    pub fn adapted(&self) -> &LieAlgebraData<S> {
        &self.adapted
    }

    pub fn h_dim(&self) -> usize {
        self.h.len()
    }

    pub fn m_dim(&self) -> usize {
        self.m.len()
    }

    /// The isotropy action `ad(h_a)|_m` for each `h` basis element.
    pub fn isotropy(&self) -> &[Matrix<S>] {
        &self.isotropy
    }

    /// Euclidean frame on `m`, used for forms on the coset.
    pub fn m_frame(&self) -> Frame {
        Frame::euclidean(self.m_dim())
    }

    /// `m`-component of `[mᵢ, mⱼ]` along `m_k`.
    pub fn m_bracket(&self, i: usize, j: usize, k: usize) -> &S {
        let hd = self.h_dim();
        self.adapted.constant(hd + i, hd + j, hd + k)
    }

    /// `[m, m] ⊆ h`.
    pub fn is_symmetric(&self, tol: &Tolerance) -> bool {
        let md = self.m_dim();
        (0..md).all(|i| (0..md).all(|j| (0..md).all(|k| self.m_bracket(i, j, k).is_negligible(tol))))
    }

    /// The isotropy map `h → gl(m)` is injective.
    pub fn is_almost_effective(&self, tol: &Tolerance) -> bool {
        if self.isotropy.is_empty() {
            return true;
        }
        let vecs: Vec<Vec<S>> = self.isotropy.iter().map(|m| m.entries().to_vec()).collect();
        linalg::independent(&vecs, tol)
    }

    /// The same space with `m` re-expressed in a new basis, given by
    /// coordinate vectors relative to the current `m` basis.
    pub fn rebase_m(&self, new_m: &[Vec<S>], tol: &Tolerance) -> Result<Self> {
        let hd = self.h_dim();
        let n = self.adapted.dim();
        if new_m.len() != self.m_dim() {
            return Err(Error::DimensionMismatch { expected: self.m_dim(), found: new_m.len() });
        }
        let mut basis: Vec<Vec<S>> = (0..hd).map(|i| self.adapted.basis_vector(i)).collect();
        for v in new_m {
            let mut full = vec![S::zero(); n];
            for (k, c) in v.iter().enumerate() {
                full[hd + k] = c.clone();
            }
            basis.push(full);
        }
        let labels = self.adapted.labels().to_vec();
        let adapted = self.adapted.change_basis(&basis, labels, tol)?;
        let (adapted, isotropy) = Self::check_adapted(adapted, hd, tol)?;
        // Keep the original algebra and express the new m in its coordinates.
        let m = new_m
            .iter()
            .map(|v| {
                let mut out = vec![S::zero(); self.g.dim()];
                for (c, old) in v.iter().zip(&self.m) {
                    linalg::axpy(c, old, &mut out);
                }
                out
            })
            .collect();
        Ok(ReductiveSpace { g: self.g.clone(), h: self.h.clone(), m, adapted, isotropy })
    }

    /// Reexpress the space in an orthonormal basis of `m` for `metric`.
    ///
    /// Diagonal metrics transport structure constants by
    /// `c̃^k_ij = ±c^k_ij √(g_k / (g_i g_j))` (with `g = 1` on `h`), so exact
    /// arithmetic only needs those ratios to be rational squares. Other
    /// metrics go through Gram–Schmidt.
    pub fn orthonormalize(&self, metric: &InvariantMetric<S>, tol: &Tolerance) -> Result<Self> {
        metric.check(self, tol)?;
        let hd = self.h_dim();
        let n = self.adapted.dim();
        if metric.is_diagonal(tol) {
            let weight = |i: usize| -> S {
                if i < hd {
                    S::one()
                } else {
                    metric.gram[(i - hd, i - hd)].clone()
                }
            };
            let sign = |i: usize| -> i64 {
                if i < hd {
                    1
                } else {
                    metric.signs[i - hd] as i64
                }
            };
            let mut brackets = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut terms = Vec::new();
                    for (k, c) in self.adapted.bracket_terms(i, j) {
                        let ratio = weight(*k) / (weight(i) * weight(j));
                        let root = ratio.sqrt().ok_or_else(|| {
                            Error::Inexact(alloc::format!("orthonormal structure constant needs sqrt({})", ratio.render()))
                        })?;
                        let s = sign(i) * sign(j) * sign(*k);
                        let v = c.clone() * root;
                        terms.push((*k, if s < 0 { -v } else { v }));
                    }
                    if !terms.is_empty() {
                        brackets.push((i, j, terms));
                    }
                }
            }
            let adapted = LieAlgebraData::from_brackets(self.adapted.labels().to_vec(), &brackets, tol)?;
            let (adapted, isotropy) = Self::check_adapted(adapted, hd, tol)?;
            let m = self
                .m
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    // Exact scale only when representable; the stored g
                    // coordinates are informational.
                    let s = metric.gram[(i, i)].sqrt().map(|r| r.recip()).unwrap_or_else(|| S::from_f64(1.0 / libm::sqrt(metric.gram[(i, i)].to_f64())).unwrap_or_else(S::one));
                    let s = if metric.signs[i] < 0 { -s } else { s };
                    v.iter().map(|x| x.clone() * s.clone()).collect()
                })
                .collect();
            return Ok(ReductiveSpace { g: self.g.clone(), h: self.h.clone(), m, adapted, isotropy });
        }
        let basis = metric.orthonormal_basis(tol)?;
        self.rebase_m(&basis, tol)
    }
}

/// Which invariant form defines the complement of `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bilinear {
    Killing,
    /// `tr(XY)` in the matrix realization.
    Trace,
}

/// `m = h^⊥` for the chosen bilinear form.
pub fn reductive_split<S: Scalar>(g: &LieAlgebraData<S>, h: &[Vec<S>], bilinear: Bilinear, tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    let b = match bilinear {
        Bilinear::Killing => g.killing_form(),
        Bilinear::Trace => g
            .trace_form()
            .ok_or_else(|| Error::Precondition("trace form needs a matrix realization".into()))?,
    };
    let hb = Matrix::from_rows(h.iter().map(|v| b.mul_vec(v)).collect());
    if !h.is_empty() {
        let restricted = Matrix::from_columns(h, g.dim()).transpose().mul(&Matrix::from_columns(
            &h.iter().map(|v| b.mul_vec(v)).collect::<Vec<_>>(),
            g.dim(),
        ));
        if restricted.rank(tol) < h.len() {
            return Err(Error::Degenerate(
                "the bilinear form is degenerate on h; supply an explicit m basis instead".into(),
            ));
        }
    }
    let m = if h.is_empty() { (0..g.dim()).map(|i| g.basis_vector(i)).collect() } else { hb.nullspace(tol) };
    ReductiveSpace::new(g.clone(), h.to_vec(), m, tol)
}

/// `ad`-invariant inner product on `m`, stored as a Gram matrix in the
/// space's `m` basis.
///
/// `signs` choose the orientation of each orthonormal coframe element
/// `ẽⁱ = ±√gᵢ eⁱ` for diagonal metrics; they do not change the metric.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantMetric<S> {
    gram: Matrix<S>,
    signs: Vec<i8>,
}

impl<S: Scalar> InvariantMetric<S> {
    pub fn from_gram(gram: Matrix<S>) -> Self {
        let n = gram.rows();
        InvariantMetric { gram, signs: vec![1; n] }
    }

    pub fn diagonal(values: &[S]) -> Self {
        Self::from_gram(Matrix::diagonal(values))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_gram(Matrix::identity(n))
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.gram.rows() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Invalid("one sign of ±1 per m direction is required".into()));
        }
        self.signs = signs;
        Ok(self)
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `t²·g`.
    pub fn scaled(&self, t: &S) -> Self {
        InvariantMetric { gram: self.gram.scale(&(t.clone() * t.clone())), signs: self.signs.clone() }
    }

    pub fn is_diagonal(&self, tol: &Tolerance) -> bool {
        let n = self.gram.rows();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram[(i, j)].is_negligible(tol)))
    }

    /// Symmetric, positive definite and isotropy-invariant on `space`.
    pub fn check(&self, space: &ReductiveSpace<S>, tol: &Tolerance) -> Result<()> {
        let n = space.m_dim();
        if self.gram.rows() != n || self.gram.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.gram.rows() });
        }
        if !self.gram.is_symmetric(tol) {
            return Err(Error::Invalid("metric Gram matrix is not symmetric".into()));
        }
        let inertia = self.gram.inertia(tol);
        if inertia.positive != n {
            return Err(Error::Degenerate("metric is not positive definite".into()));
        }
        for (a, chi) in space.isotropy().iter().enumerate() {
            let defect = chi.transpose().mul(&self.gram).add(&self.gram.mul(chi));
            if !defect.is_negligible(tol) {
                return Err(Error::NotInvariant(alloc::format!("metric is not invariant under h{}", a + 1)));
            }
        }
        Ok(())
    }

    /// Orthonormal basis by Gram–Schmidt, signs applied.
    pub fn orthonormal_basis(&self, tol: &Tolerance) -> Result<Vec<Vec<S>>> {
        let n = self.gram.rows();
        let mut out: Vec<Vec<S>> = Vec::new();
        for i in 0..n {
            let mut v = vec![S::zero(); n];
            v[i] = S::one();
            for u in &out {
                let proj = linalg::dot(u, &self.gram.mul_vec(&v));
                linalg::axpy(&-proj, u, &mut v);
            }
            let norm2 = linalg::dot(&v, &self.gram.mul_vec(&v));
            if norm2.sign(tol) <= 0 {
                return Err(Error::Degenerate("metric is not positive definite".into()));
            }
            let norm = norm2
                .sqrt()
                .ok_or_else(|| Error::Inexact(alloc::format!("Gram-Schmidt needs sqrt({})", norm2.render())))?;
            let scale = norm.recip();
            let scale = if self.signs[i] < 0 { -scale } else { scale };
            out.push(v.into_iter().map(|x| x * scale.clone()).collect());
        }
        Ok(out)
    }
}

/// Basis of `{X ∈ g : [X, h] = 0 for all h ∈ span(h_basis)}`.
pub fn centralizer<S: Scalar>(g: &LieAlgebraData<S>, h_basis: &[Vec<S>], tol: &Tolerance) -> Vec<Vec<S>> {
    g.centralizer(h_basis, tol)
}

/// `true` when every isotropy generator annihilates `a`.
pub fn is_invariant<S: Scalar>(space: &ReductiveSpace<S>, a: &KForm<S>, tol: &Tolerance) -> Result<bool> {
    for chi in space.isotropy() {
        if !endo_action(chi, a)?.is_negligible(tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the `h`-invariant `k`-forms on `m`.
pub fn invariant_forms<S: Scalar>(space: &ReductiveSpace<S>, k: usize, tol: &Tolerance) -> Result<Vec<KForm<S>>> {
    let frame = space.m_frame();
    let masks = frame.basis_masks(k);
    if space.isotropy().is_empty() {
        return Ok(masks.into_iter().map(|m| KForm::basis_mask(frame, m)).collect());
    }
    let mut columns = Vec::with_capacity(masks.len());
    for &mask in &masks {
        let e = KForm::basis_mask(frame, mask);
        let mut col = Vec::with_capacity(masks.len() * space.isotropy().len());
        for chi in space.isotropy() {
            col.extend(endo_action(chi, &e)?.to_vector());
        }
        columns.push(col);
    }
    let rows = masks.len() * space.isotropy().len();
    let system = Matrix::from_columns(&columns, rows);
    Ok(system
        .nullspace(tol)
        .into_iter()
        .map(|v| KForm::from_vector(frame, k, &v))
        .collect())
}

/// `de^k|_m = −Σ_{i<j} c^k_ij e^{ij}` for the dual coframe of `m`.
pub fn m_differentials<S: Scalar>(space: &ReductiveSpace<S>) -> Vec<KForm<S>> {
    let frame = space.m_frame();
    let md = space.m_dim();
    (0..md)
        .map(|k| {
            let mut f = KForm::zero(frame, 2);
            for i in 0..md {
                for j in i + 1..md {
                    let c = space.m_bracket(i, j, k);
                    if !c.is_zero() {
                        f.add_term(1 << i | 1 << j, -c.clone());
                    }
                }
            }
            f
        })
        .collect()
}

/// Chevalley–Eilenberg differential of an invariant form on `m`.
pub fn ce_differential<S: Scalar>(space: &ReductiveSpace<S>, a: &KForm<S>, tol: &Tolerance) -> Result<KForm<S>> {
    if a.frame() != space.m_frame() {
        return Err(Error::FrameMismatch);
    }
    if !is_invariant(space, a, tol)? {
        return Err(Error::NotInvariant("the differential is only defined on invariant forms".into()));
    }
    Ok(invariant_differential(space, a))
}

/// The differential without the invariance check, for callers that already
/// know the input is invariant.
pub(crate) fn invariant_differential<S: Scalar>(space: &ReductiveSpace<S>, a: &KForm<S>) -> KForm<S> {
    apply_derivation(&m_differentials(space), a)
}

/// Type of an irreducible real representation: its commutant is `R`, `C`
/// or `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Real,
    Complex,
    Quaternionic,
}

/// One isotypic component `V^multiplicity` of the isotropy module.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicBlock<S> {
    /// Eigenvalue of the Casimir operator on this component.
    pub casimir: S,
    pub irrep_dim: usize,
    pub multiplicity: usize,
    pub kind: RepKind,
    /// Basis of the component in `m` coordinates.
    pub basis: Vec<Vec<S>>,
}

/// Isotypic decomposition of the isotropy representation on `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Isotypic<S> {
    pub blocks: Vec<IsotypicBlock<S>>,
    pub notes: Vec<String>,
}

impl<S: Scalar> Isotypic<S> {
    /// Dimensions of the irreducible summands, largest first.
    pub fn irreducible_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.blocks.iter().flat_map(|b| core::iter::repeat_n(b.irrep_dim, b.multiplicity)).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        dims
    }
}

/// Split `m` by the Casimir `C = Σ B^{ab} χ_a χ_b` (with `B` the trace form
/// of the isotropy matrices), then resolve each eigenspace into copies of
/// one irreducible from the dimension and trace-form signature of its
/// commutant.
pub fn isotypic_decomposition<S: Scalar>(space: &ReductiveSpace<S>, tol: &Tolerance) -> Result<Isotypic<S>> {
    let md = space.m_dim();
    let chis = space.isotropy();
    let mut notes = Vec::new();
    if chis.is_empty() {
        let basis = (0..md).map(|i| unit(md, i)).collect();
        return Ok(Isotypic {
            blocks: vec![IsotypicBlock { casimir: S::zero(), irrep_dim: md, multiplicity: 1, kind: RepKind::Real, basis }],
            notes: vec!["h = 0: m is reported as a single trivial block".into()],
        });
    }
    let nh = chis.len();
    let trace = Matrix::from_fn(nh, nh, |a, b| chis[a].mul(&chis[b]).trace());
    let inv = trace
        .inverse(tol)
        .ok_or_else(|| Error::Degenerate("isotropy trace form is singular; h does not act almost effectively".into()))?;
    let mut casimir = Matrix::zeros(md, md);
    for a in 0..nh {
        for b in 0..nh {
            if !inv[(a, b)].is_zero() {
                casimir = casimir.add(&chis[a].mul(&chis[b]).scale(&inv[(a, b)]));
            }
        }
    }
    let eig = casimir.real_eigenvalues(&tol.scaled(10.0));
    if !eig.irrational.is_empty() || eig.complex > 0 {
        return Err(Error::Inexact("Casimir spectrum is not rational and real".into()));
    }
    let mut blocks = Vec::new();
    let mut covered = 0;
    for lam in eig.values {
        let shifted = casimir.sub(&Matrix::identity(md).scale(&lam));
        let space_basis = shifted.nullspace(tol);
        let d = space_basis.len();
        covered += d;
        if lam.is_negligible(tol) {
            // Trivial summands.
            for v in space_basis {
                blocks.push(IsotypicBlock { casimir: lam.clone(), irrep_dim: 1, multiplicity: 1, kind: RepKind::Real, basis: vec![v] });
            }
            continue;
        }
        let restricted: Vec<Matrix<S>> = chis
            .iter()
            .map(|chi| {
                let cols: Vec<Vec<S>> = space_basis
                    .iter()
                    .map(|v| linalg::coordinates(&space_basis, &chi.mul_vec(v), tol).expect("eigenspace is invariant"))
                    .collect();
                Matrix::from_columns(&cols, d)
            })
            .collect();
        let (c, s) = commutant_profile(&restricted, d, tol);
        let resolved = (1..=d).find_map(|m| {
            let m2 = m * m;
            if c == m2 && s == m * (m + 1) / 2 {
                Some((m, RepKind::Real))
            } else if c == 2 * m2 && s == m2 {
                Some((m, RepKind::Complex))
            } else if c == 4 * m2 && s == 2 * m2 - m {
                Some((m, RepKind::Quaternionic))
            } else {
                None
            }
        });
        let (mult, kind) = match resolved {
            Some((m, k)) if d % m == 0 => (m, k),
            _ => {
                notes.push(alloc::format!(
                    "eigenspace of dimension {d} (commutant {c}, positive part {s}) not resolved; reported as one block"
                ));
                (1, RepKind::Real)
            }
        };
        blocks.push(IsotypicBlock { casimir: lam, irrep_dim: d / mult, multiplicity: mult, kind, basis: space_basis });
    }
    if covered != md {
        notes.push(alloc::format!("eigenspaces cover {covered} of {md} dimensions"));
    }
    Ok(Isotypic { blocks, notes })
}

fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Dimension of the commutant of `mats` and the number of positive squares
/// of its trace form.
fn commutant_profile<S: Scalar>(mats: &[Matrix<S>], d: usize, tol: &Tolerance) -> (usize, usize) {
    // Unknown X as a d²-vector (row-major); rows of X·A − A·X = 0.
    let mut blocks = Vec::new();
    for a in mats {
        let mut sys = Matrix::<S>::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let row = i * d + j;
                for k in 0..d {
                    // (XA)_ij = Σ_k X_ik A_kj
                    let v = sys[(row, i * d + k)].clone() + a[(k, j)].clone();
                    sys[(row, i * d + k)] = v;
                    // (AX)_ij = Σ_k A_ik X_kj
                    let v = sys[(row, k * d + j)].clone() - a[(i, k)].clone();
                    sys[(row, k * d + j)] = v;
                }
            }
        }
        blocks.push(sys);
    }
    let null = Matrix::vstack(&blocks).nullspace(tol);
    let c = null.len();
    let as_mat = |v: &Vec<S>| Matrix::from_fn(d, d, |i, j| v[i * d + j].clone());
    let elems: Vec<Matrix<S>> = null.iter().map(as_mat).collect();
    let gram = Matrix::from_fn(c, c, |a, b| elems[a].mul(&elems[b]).trace());
    (c, gram.inertia(tol).positive)
}
