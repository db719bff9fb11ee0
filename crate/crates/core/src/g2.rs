//! Pointwise linear algebra of 3-forms in seven dimensions.
//!
//! A 3-form `ω` defines the symmetric density
//! `B(X,Y) vol = −⅙ (X⌟ω) ∧ (Y⌟ω) ∧ ω`, and when `det B ≠ 0` the metric
//! `g = (det B)^{−1/9} B`. Definite `g` means `ω` lies in the open orbit with
//! stabilizer `G₂`; split signature means the orbit of the split form `G₂*`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{endo_action, hodge, interior_basis_vector, norm_sq, wedge, Frame, KForm};
use crate::linalg::{Inertia, Matrix};
use crate::product::contraction_gram;
use crate::scalar::{Scalar, Tolerance};

/// The seven terms of the standard generic 3-form, 0-based with signs:
/// `e^127 + e^347 + e^567 + e^135 − e^245 − e^146 − e^236`.
pub const CANONICAL_TERMS: [([usize; 3], i64); 7] = [
    ([0, 1, 6], 1),
    ([2, 3, 6], 1),
    ([4, 5, 6], 1),
    ([0, 2, 4], 1),
    ([1, 3, 4], -1),
    ([0, 3, 5], -1),
    ([1, 2, 5], -1),
];

fn check_seven<S: Scalar>(omega: &KForm<S>) -> Result<()> {
    if omega.frame().dim() != 7 {
        return Err(Error::DimensionMismatch { expected: 7, found: omega.frame().dim() });
    }
    if omega.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, found: omega.degree() });
    }
    Ok(())
}

/// The standard generic 3-form on Euclidean `R⁷`.
pub fn canonical_g2_form<S: Scalar>(frame: Frame) -> Result<KForm<S>> {
    if frame != Frame::euclidean(7) {
        return Err(Error::Precondition("the standard 3-form lives on Euclidean R^7".into()));
    }
    signed_g2_form(frame, 0)
}

/// The standard form with term `t` negated whenever bit `t` of `pattern` is
/// set (terms ordered as in [`CANONICAL_TERMS`]).
pub fn signed_g2_form<S: Scalar>(frame: Frame, pattern: u8) -> Result<KForm<S>> {
    let mut out = KForm::zero(frame, 3);
    for (t, (idx, sign)) in CANONICAL_TERMS.iter().enumerate() {
        let s = if pattern >> t & 1 == 1 { -sign } else { *sign };
        out.add_indexed(idx, S::from_i64(s))?;
    }
    Ok(out)
}

/// `B_ij`: the `vol` coefficient of `−⅙ (eᵢ⌟ω) ∧ (eⱼ⌟ω) ∧ ω`.
pub fn induced_bilinear<S: Scalar>(omega: &KForm<S>) -> Result<Matrix<S>> {
    check_seven(omega)?;
    let frame = omega.frame();
    let full = frame.full_mask();
    let contracted: Vec<KForm<S>> = (0..7).map(|i| interior_basis_vector(i, omega)).collect::<Result<_>>()?;
    let with_omega: Vec<KForm<S>> = contracted.iter().map(|c| wedge(c, omega)).collect::<Result<_>>()?;
    let mut b = Matrix::zeros(7, 7);
    let factor = -S::from_ratio(1, 6);
    for i in 0..7 {
        for j in i..7 {
            let top = wedge(&contracted[i], &with_omega[j])?;
            let v = factor.clone() * top.coeff_mask(full);
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    Ok(b)
}

/// The induced bilinear form and its normalized metric.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMetric<S> {
    pub b: Matrix<S>,
    pub det_b: S,
    /// `(det B)^{−1/9} B` when the ninth root exists in the scalar field.
    pub g: Option<Matrix<S>>,
    /// The same metric in double precision, always available.
    pub g_approx: Matrix<f64>,
}

impl<S: Scalar> InducedMetric<S> {
    /// `true` when the exact metric could not be formed.
    pub fn degraded(&self) -> bool {
        self.g.is_none()
    }
}

fn det_scale<S: Scalar>(b: &Matrix<S>) -> f64 {
    libm::pow(libm::fmax(1.0, b.max_abs().to_f64()), 7.0)
}

pub fn induced_metric<S: Scalar>(omega: &KForm<S>, tol: &Tolerance) -> Result<InducedMetric<S>> {
    let b = induced_bilinear(omega)?;
    let det_b = b.det();
    if det_b.is_negligible(&Tolerance::absolute(tol.abs_tol * det_scale(&b))) {
        return Err(Error::Degenerate("det B vanishes; the 3-form is not generic".into()));
    }
    let g = det_b.nth_root(9).map(|r| b.scale(&r.recip()));
    let d = det_b.to_f64();
    let root = if d < 0.0 { -libm::pow(-d, 1.0 / 9.0) } else { libm::pow(d, 1.0 / 9.0) };
    let g_approx = b.to_f64().scale(&(1.0 / root));
    Ok(InducedMetric { b, det_b, g, g_approx })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitTag {
    GenericG2,
    GenericG2Star,
    Degenerate,
}

impl OrbitTag {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitTag::GenericG2 => "GenericG2",
            OrbitTag::GenericG2Star => "GenericG2Star",
            OrbitTag::Degenerate => "Degenerate",
        }
    }
}

/// Orbit of a 3-form under `GL₇`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitClass<S> {
    pub tag: OrbitTag,
    /// `(positive, negative)` squares of `−B`, which is the metric up to a
    /// positive factor for the orientation making the standard form definite.
    pub signature: (usize, usize),
    pub det_b: S,
    /// Set in float mode when `det B` was treated as zero by tolerance.
    pub warning: Option<String>,
}

pub fn classify<S: Scalar>(omega: &KForm<S>, tol: &Tolerance) -> Result<OrbitClass<S>> {
    let b = induced_bilinear(omega)?;
    let det_b = b.det();
    let thr = Tolerance::absolute(tol.abs_tol * det_scale(&b));
    let inertia: Inertia = b.inertia(tol);
    if det_b.is_negligible(&thr) {
        let warning = (!det_b.is_zero()).then(|| alloc::format!("det B = {:e} treated as zero", det_b.to_f64()));
        return Ok(OrbitClass { tag: OrbitTag::Degenerate, signature: (inertia.negative, inertia.positive), det_b, warning });
    }
    // Signature of −B: the orientation in which the standard form has a
    // positive definite metric. The real-root normalization always has
    // det g > 0 and would report split forms as (3,4).
    let (pos, neg) = (inertia.negative, inertia.positive);
    let tag = match (pos, neg) {
        (7, 0) | (0, 7) => OrbitTag::GenericG2,
        (4, 3) | (3, 4) => OrbitTag::GenericG2Star,
        _ => OrbitTag::Degenerate,
    };
    let warning = (tag == OrbitTag::Degenerate).then(|| alloc::format!("unexpected signature ({pos}, {neg})"));
    Ok(OrbitClass { tag, signature: (pos, neg), det_b, warning })
}

fn annihilator<S: Scalar>(omega: &KForm<S>, generators: &[Matrix<S>], tol: &Tolerance) -> Result<Vec<Matrix<S>>> {
    let columns: Vec<Vec<S>> = generators
        .iter()
        .map(|a| endo_action(a, omega).map(|f| f.to_vector()))
        .collect::<Result<_>>()?;
    let rows = omega.frame().basis_masks(omega.degree()).len();
    let system = Matrix::from_columns(&columns, rows);
    let n = omega.frame().dim();
    Ok(system
        .nullspace(tol)
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (c, g) in v.iter().zip(generators) {
                if !c.is_zero() {
                    m = m.add(&g.scale(c));
                }
            }
            m
        })
        .collect())
}

/// Basis of `{A ∈ gl_n : A·ω = 0}`.
pub fn stabilizer_algebra<S: Scalar>(omega: &KForm<S>, tol: &Tolerance) -> Result<Vec<Matrix<S>>> {
    let n = omega.frame().dim();
    let gens: Vec<Matrix<S>> = (0..n).flat_map(|i| (0..n).map(move |j| Matrix::unit(n, i, j))).collect();
    annihilator(omega, &gens, tol)
}

/// The part of the stabilizer made of antisymmetric matrices.
pub fn stabilizer_in_so<S: Scalar>(omega: &KForm<S>, tol: &Tolerance) -> Result<Vec<Matrix<S>>> {
    let n = omega.frame().dim();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(Matrix::unit(n, i, j).sub(&Matrix::unit(n, j, i)));
        }
    }
    annihilator(omega, &gens, tol)
}

/// `max |⟨eᵢ⌟ω, eⱼ⌟ω⟩ − 3gᵢⱼ|` for a generic form whose induced metric is
/// the frame metric.
pub fn contraction_3g_check<S: Scalar>(omega: &KForm<S>, tol: &Tolerance) -> Result<S> {
    let class = classify(omega, tol)?;
    if class.tag != OrbitTag::GenericG2 {
        return Err(Error::Precondition(alloc::format!("3-form is {}, not generic", class.tag.name())));
    }
    let metric = induced_metric(omega, tol)?;
    let identity = Matrix::<S>::identity(7);
    let orthonormal = match &metric.g {
        Some(g) => g.sub(&identity).is_negligible(tol),
        None => metric.g_approx.sub(&Matrix::identity(7)).is_negligible(&Tolerance::absolute(1e-9)),
    };
    if !orthonormal {
        return Err(Error::Precondition("the frame is not orthonormal for the induced metric".into()));
    }
    let norm = norm_sq(omega);
    if !norm.approx_eq(&S::from_i64(7), tol) {
        return Err(Error::Precondition(alloc::format!("|omega|^2 = {} instead of 7", norm.render())));
    }
    let gram = contraction_gram(omega)?;
    Ok(gram.sub(&identity.scale(&S::from_i64(3))).max_abs())
}

/// First sign pattern of the standard terms giving a split (`G₂*`) form.
pub fn find_split_form<S: Scalar>(frame: Frame, tol: &Tolerance) -> Result<Option<(u8, KForm<S>, OrbitClass<S>)>> {
    for pattern in 0u8..128 {
        let omega = signed_g2_form::<S>(frame, pattern)?;
        let class = classify(&omega, tol)?;
        if class.tag == OrbitTag::GenericG2Star {
            return Ok(Some((pattern, omega, class)));
        }
    }
    Ok(None)
}

/// Torsion flags of a `G₂`-structure from `dω`, `d★ω` and `★ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Flags<S> {
    /// `dω = 0` and `d★ω = 0`.
    pub parallel: bool,
    /// `λ` with `dω = λ★ω`, `λ ≠ 0`.
    pub weak: Option<S>,
    /// `d★ω = 0`.
    pub cocalibrated: bool,
}

pub fn g2_flags<S: Scalar>(d_omega: &KForm<S>, d_star_omega: &KForm<S>, star_omega: &KForm<S>, tol: &Tolerance) -> G2Flags<S> {
    let closed = d_omega.is_negligible(tol);
    let cocalibrated = d_star_omega.is_negligible(tol);
    let weak = if closed { None } else { proportionality(d_omega, star_omega, tol).filter(|l| !l.is_negligible(tol)) };
    G2Flags { parallel: closed && cocalibrated, weak, cocalibrated }
}

/// `λ` with `a = λ b`, if `b ≠ 0` and such a `λ` exists.
pub fn proportionality<S: Scalar>(a: &KForm<S>, b: &KForm<S>, tol: &Tolerance) -> Option<S> {
    if a.frame() != b.frame() || a.degree() != b.degree() {
        return None;
    }
    let peak = b.max_abs_coeff();
    let (mask, bc) = b.terms().find(|(_, c)| c.abs() == peak)?;
    if bc.is_negligible(tol) {
        return None;
    }
    let lambda = a.coeff_mask(mask) / bc.clone();
    a.sub(&b.scale(&lambda)).ok()?.is_negligible(tol).then_some(lambda)
}

/// `★ω` for a 3-form on the Euclidean frame.
pub fn star<S: Scalar>(omega: &KForm<S>) -> KForm<S> {
    hodge(omega)
}
