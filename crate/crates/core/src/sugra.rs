//! Special 3-forms, the Maxwell eigenproblem and the seven-dimensional
//! Einstein equation for flux backgrounds `M̃³·¹ × G/H`.
//!
//! A candidate carries a 3-form `φ` on the orthonormalized coframe of `m`
//! and a constant `f`; the flux is `F = f·vol₄ + ★₇φ`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{hodge, norm_sq, KForm};
use crate::g2::{self, OrbitClass, OrbitTag};
use crate::homogeneous::invariant_differential;
use crate::homogeneous::{einstein_constant, invariant_forms, is_invariant, ricci, InvariantMetric, ReductiveSpace};
use crate::linalg::{self, Matrix};
use crate::product::{contraction_gram, reduced_stress, FluxForm, ProductFrame};
use crate::scalar::{Scalar, Tolerance};

/// `(space, metric, orientation, φ, f)` with `φ` on the orthonormal coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialFormCandidate<S: Scalar> {
    space: ReductiveSpace<S>,
    metric: InvariantMetric<S>,
    orientation: i8,
    phi: KForm<S>,
    f: S,
    ortho: ReductiveSpace<S>,
}

impl<S: Scalar> SpecialFormCandidate<S> {
    pub fn new(
        space: ReductiveSpace<S>,
        metric: InvariantMetric<S>,
        orientation: i8,
        phi: KForm<S>,
        f: S,
        tol: &Tolerance,
    ) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::Invalid("orientation must be ±1".into()));
        }
        let ortho = space.orthonormalize(&metric, tol)?;
        if phi.frame() != ortho.m_frame() {
            return Err(Error::FrameMismatch);
        }
        if phi.degree() != 3 {
            return Err(Error::DegreeMismatch { expected: 3, found: phi.degree() });
        }
        Ok(SpecialFormCandidate { space, metric, orientation, phi, f, ortho })
    }

    pub fn space(&self) -> &ReductiveSpace<S> {
        &self.space
    }

    /// The space re-expressed in the metric-orthonormal basis of `m`.
    pub fn orthonormal_space(&self) -> &ReductiveSpace<S> {
        &self.ortho
    }

    pub fn metric(&self) -> &InvariantMetric<S> {
        &self.metric
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn phi(&self) -> &KForm<S> {
        &self.phi
    }

    pub fn f(&self) -> &S {
        &self.f
    }

    pub fn star(&self, a: &KForm<S>) -> KForm<S> {
        oriented_star(self.orientation, a)
    }

    pub fn with_phi(&self, phi: KForm<S>) -> Result<Self> {
        if phi.frame() != self.phi.frame() || phi.degree() != 3 {
            return Err(Error::FrameMismatch);
        }
        Ok(SpecialFormCandidate { phi, ..self.clone() })
    }

    pub fn with_f(&self, f: S) -> Self {
        SpecialFormCandidate { f, ..self.clone() }
    }

    /// Reversed orientation: `★₇` and hence the Maxwell constant change sign.
    pub fn flipped(&self) -> Self {
        SpecialFormCandidate { orientation: -self.orientation, f: -self.f.clone(), ..self.clone() }
    }
}

fn oriented_star<S: Scalar>(orientation: i8, a: &KForm<S>) -> KForm<S> {
    let s = hodge(a);
    if orientation < 0 {
        s.neg()
    } else {
        s
    }
}

/// `(‖d★₇φ‖, ‖dφ − f★₇φ‖)` in the max-norm over coefficients.
pub fn special_form_residual<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<(S, S)> {
    if !is_invariant(&c.ortho, &c.phi, tol)? {
        return Err(Error::NotInvariant("φ is not invariant under the isotropy".into()));
    }
    let star = c.star(&c.phi);
    let closure = invariant_differential(&c.ortho, &star).max_abs_coeff();
    let d_phi = invariant_differential(&c.ortho, &c.phi);
    let maxwell = d_phi.sub(&star.scale(&c.f))?.max_abs_coeff();
    Ok((closure, maxwell))
}

/// One real eigenvalue `f` of the Maxwell operator and its eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellBranch<S: Scalar> {
    pub f: S,
    pub basis: Vec<KForm<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellSpectrum<S: Scalar> {
    /// Branches in ascending order of `f`.
    pub branches: Vec<MaxwellBranch<S>>,
    /// Dimension of the invariant 3-forms and of the co-closed ones.
    pub invariant_dim: usize,
    pub coclosed_dim: usize,
    pub notes: Vec<String>,
}

impl<S: Scalar> MaxwellSpectrum<S> {
    pub fn branch(&self, f: &S, tol: &Tolerance) -> Option<&MaxwellBranch<S>> {
        self.branches.iter().find(|b| b.f.approx_eq(f, tol))
    }
}

/// Invariant special 3-forms: eigenpairs of `o·★₇d` on the invariant
/// co-closed 3-forms, which is the same as `dφ = f★₇φ` there.
pub fn solve_maxwell<S: Scalar>(
    space: &ReductiveSpace<S>,
    metric: &InvariantMetric<S>,
    orientation: i8,
    tol: &Tolerance,
) -> Result<MaxwellSpectrum<S>> {
    if orientation != 1 && orientation != -1 {
        return Err(Error::Invalid("orientation must be ±1".into()));
    }
    let ortho = space.orthonormalize(metric, tol)?;
    let frame = ortho.m_frame();
    let inv = invariant_forms(&ortho, 3, tol)?;
    let mut notes = Vec::new();
    if inv.is_empty() {
        return Ok(MaxwellSpectrum { branches: Vec::new(), invariant_dim: 0, coclosed_dim: 0, notes });
    }
    let codiff: Vec<Vec<S>> = inv
        .iter()
        .map(|p| invariant_differential(&ortho, &oriented_star(orientation, p)).to_vector())
        .collect();
    let rows = codiff[0].len();
    let combos = Matrix::from_columns(&codiff, rows).nullspace(tol);
    let coclosed: Vec<KForm<S>> = combos
        .iter()
        .map(|y| {
            let mut acc = KForm::zero(frame, 3);
            for (c, p) in y.iter().zip(&inv) {
                if !c.is_zero() {
                    acc = acc.add(&p.scale(c)).expect("same frame");
                }
            }
            acc
        })
        .collect();
    let k = coclosed.len();
    if k == 0 {
        return Ok(MaxwellSpectrum { branches: Vec::new(), invariant_dim: inv.len(), coclosed_dim: 0, notes });
    }
    let basis_vecs: Vec<Vec<S>> = coclosed.iter().map(KForm::to_vector).collect();
    let mut cols = Vec::with_capacity(k);
    for p in &coclosed {
        let image = oriented_star(orientation, &invariant_differential(&ortho, p));
        let coords = linalg::coordinates(&basis_vecs, &image.to_vector(), tol).ok_or_else(|| {
            Error::Precondition("★d does not preserve the invariant co-closed 3-forms".into())
        })?;
        cols.push(coords);
    }
    let op = Matrix::from_columns(&cols, k);
    let eig = op.real_eigenvalues(tol);
    if eig.complex > 0 {
        notes.push(alloc::format!("{} complex eigenvalue(s) discarded", eig.complex));
    }
    for v in &eig.irrational {
        notes.push(alloc::format!("irrational eigenvalue f ≈ {v} skipped in exact mode"));
    }
    let mut branches = Vec::new();
    for f in eig.values {
        let shifted = op.sub(&Matrix::identity(k).scale(&f));
        let null = shifted.nullspace(tol);
        if null.is_empty() {
            continue;
        }
        let basis = null
            .iter()
            .map(|y| {
                let mut acc = KForm::zero(frame, 3);
                for (c, p) in y.iter().zip(&coclosed) {
                    if !c.is_zero() {
                        acc = acc.add(&p.scale(c)).expect("same frame");
                    }
                }
                acc.chop(tol)
            })
            .collect();
        branches.push(MaxwellBranch { f, basis });
    }
    Ok(MaxwellSpectrum { branches, invariant_dim: inv.len(), coclosed_dim: k, notes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolutionTag {
    TypeI,
    TypeII,
    TypeIIIalpha,
    TypeIIIbeta,
}

impl SolutionTag {
    pub fn name(&self) -> &'static str {
        match self {
            SolutionTag::TypeI => "TypeI",
            SolutionTag::TypeII => "TypeII",
            SolutionTag::TypeIIIalpha => "TypeIIIalpha",
            SolutionTag::TypeIIIbeta => "TypeIIIbeta",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionType<S> {
    pub tag: SolutionTag,
    pub genericity: OrbitClass<S>,
}

/// Type of a special form; the residuals must vanish.
pub fn classify_type<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<SolutionType<S>> {
    let (closure, maxwell) = special_form_residual(c, tol)?;
    if !closure.is_negligible(tol) || !maxwell.is_negligible(tol) {
        return Err(Error::Precondition("not a special 3-form: residuals do not vanish".into()));
    }
    type_of(c, tol)
}

fn type_of<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<SolutionType<S>> {
    let phi_zero = c.phi.is_negligible(tol);
    let f_zero = c.f.is_negligible(tol);
    let genericity = g2::classify(&c.phi, tol)?;
    let tag = match (phi_zero, f_zero) {
        (true, true) => return Err(Error::Precondition("φ = 0 and f = 0: the flux vanishes".into())),
        (true, false) => SolutionTag::TypeI,
        (false, true) => SolutionTag::TypeII,
        (false, false) if genericity.tag == OrbitTag::GenericG2 => SolutionTag::TypeIIIalpha,
        (false, false) => SolutionTag::TypeIIIbeta,
    };
    Ok(SolutionType { tag, genericity })
}

/// `q_φ(X,Y) = −½⟨X⌟φ, Y⌟φ⟩` on an orthonormal frame.
pub fn q_phi<S: Scalar>(phi: &KForm<S>) -> Result<Matrix<S>> {
    if phi.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, found: phi.degree() });
    }
    Ok(contraction_gram(phi)?.scale(&-S::from_ratio(1, 2)))
}

/// Right-hand side `⅙(f² + 2‖φ‖²)δ + q_φ` of the internal Einstein equation.
pub fn einstein7_rhs<S: Scalar>(phi: &KForm<S>, f: &S) -> Result<Matrix<S>> {
    let n = phi.frame().dim();
    let c = (f.clone() * f.clone() + S::from_i64(2) * norm_sq(phi)) / S::from_i64(6);
    Ok(Matrix::identity(n).scale(&c).add(&q_phi(phi)?))
}

/// Ricci form of the candidate's metric in its orthonormal basis.
pub fn candidate_ricci<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    ricci(&c.ortho, &InvariantMetric::identity(c.ortho.m_dim()), tol)
}

/// `max |Ric − ⅙(f² + 2‖φ‖²)g − q_φ|` over orthonormal basis pairs.
pub fn einstein7_residual<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<S> {
    let ric = candidate_ricci(c, tol)?;
    Ok(ric.sub(&einstein7_rhs(&c.phi, &c.f)?).max_abs())
}

/// `Λ = −(2f² + ‖φ‖²)/6`.
pub fn lorentz_einstein_constant<S: Scalar>(phi: &KForm<S>, f: &S) -> S {
    -(S::from_i64(2) * f.clone() * f.clone() + norm_sq(phi)) / S::from_i64(6)
}

/// Values of `f` for which the weak-G₂ Einstein constant `⅜f²` equals the
/// one required by the flux, `⅙(f² + 5)`, at `‖φ‖² = 7`.
pub fn weak_g2_f_values<S: Scalar>() -> [S; 2] {
    let lhs = S::from_ratio(3, 8) - S::from_ratio(1, 6);
    let rhs = S::from_ratio(5, 6);
    let f = (rhs / lhs).sqrt().expect("f² = 4");
    [f.clone(), -f]
}

/// Metric `g ↦ t²g` and `φ ↦ t³φ`. On the orthonormal coframe `φ` keeps its
/// coefficients and `f ↦ f/t`.
pub fn rescale<S: Scalar>(c: &SpecialFormCandidate<S>, t: &S, tol: &Tolerance) -> Result<SpecialFormCandidate<S>> {
    if t.sign(tol) <= 0 {
        return Err(Error::Precondition("rescaling factor must be positive".into()));
    }
    let metric = c.metric.scaled(t);
    let f = c.f.clone() / t.clone();
    SpecialFormCandidate::new(c.space.clone(), metric, c.orientation, c.phi.clone(), f, tol)
}

/// Scale `φ` to `‖φ‖² = 7` and the metric so that `f = 2`, flipping the
/// orientation if `f < 0`.
pub fn normalize_weak_g2<S: Scalar>(c: &SpecialFormCandidate<S>, tol: &Tolerance) -> Result<SpecialFormCandidate<S>> {
    let n2 = norm_sq(&c.phi);
    if n2.is_negligible(tol) || c.f.is_negligible(tol) {
        return Err(Error::Precondition("normalization needs φ ≠ 0 and f ≠ 0".into()));
    }
    let s = (S::from_i64(7) / n2.clone())
        .sqrt()
        .ok_or_else(|| Error::Inexact(alloc::format!("scaling φ needs sqrt(7/{})", n2.render())))?;
    let mut out = c.with_phi(c.phi.scale(&s))?;
    if out.f.sign(tol) < 0 {
        out = out.flipped();
    }
    let t = out.f.clone() / S::from_i64(2);
    rescale(&out, &t, tol)
}

/// Everything checked for one candidate background.
#[derive(Clone, Debug, PartialEq)]
pub struct BackgroundReport<S: Scalar> {
    pub closure_residual: S,
    pub maxwell_residual: S,
    pub einstein7_residual: S,
    /// Ricci form on the orthonormal coframe.
    pub ricci: Matrix<S>,
    pub einstein_constant: Option<S>,
    pub lorentz_constant: S,
    pub phi_norm_sq: S,
    pub solution_type: Option<SolutionType<S>>,
    /// `max |stress_rhs − reduced blocks|` on the 11-dimensional frame.
    pub crosscheck_residual: Option<S>,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
}

pub const FLAG_NOT_GRAVITATIONAL: &str = "not a special gravitational Einstein manifold";
pub const FLAG_PARALLEL_G2: &str =
    "parallel G2-structure: Ricci-flat, contradicts the Einstein equation with f = 0; no (4,7)-decomposable background";
pub const FLAG_WEAK_G2: &str = "co-calibrated weak G2-structure (dφ = f★φ, d★φ = 0, f ≠ 0)";
pub const FLAG_LORENTZ_MISMATCH: &str = "declared Lorentz Einstein constant differs from Λ";

impl<S: Scalar> BackgroundReport<S> {
    pub fn maxwell_ok(&self, tol: &Tolerance) -> bool {
        self.closure_residual.is_negligible(tol) && self.maxwell_residual.is_negligible(tol)
    }

    pub fn einstein_ok(&self, tol: &Tolerance) -> bool {
        self.einstein7_residual.is_negligible(tol) && !self.flags.iter().any(|f| f == FLAG_LORENTZ_MISMATCH)
    }

    /// `0` all pass, `1` Maxwell fails, `2` Maxwell holds but Einstein fails.
    pub fn exit_code(&self, tol: &Tolerance) -> i32 {
        if !self.maxwell_ok(tol) {
            1
        } else if !self.einstein_ok(tol) {
            2
        } else {
            0
        }
    }
}

/// Residuals, Einstein data, type, flags and the 11-dimensional cross-check.
///
/// `declared_lorentz` is the Einstein constant claimed for the Lorentzian
/// factor, compared against `Λ` when given.
pub fn verify_background<S: Scalar>(
    c: &SpecialFormCandidate<S>,
    declared_lorentz: Option<&S>,
    tol: &Tolerance,
) -> Result<BackgroundReport<S>> {
    let (closure, maxwell) = special_form_residual(c, tol)?;
    let ric = candidate_ricci(c, tol)?;
    let rhs = einstein7_rhs(&c.phi, &c.f)?;
    let einstein = ric.sub(&rhs).max_abs();
    let lambda = lorentz_einstein_constant(&c.phi, &c.f);
    let phi2 = norm_sq(&c.phi);
    let mut flags = Vec::new();
    let mut notes = Vec::new();
    let maxwell_ok = closure.is_negligible(tol) && maxwell.is_negligible(tol);
    let solution_type = if maxwell_ok {
        match type_of(c, tol) {
            Ok(t) => Some(t),
            Err(e) => {
                notes.push(alloc::format!("{e}"));
                None
            }
        }
    } else {
        None
    };
    if maxwell_ok && !einstein.is_negligible(tol) {
        flags.push(FLAG_NOT_GRAVITATIONAL.into());
    }
    if let Some(t) = &solution_type {
        match t.tag {
            SolutionTag::TypeII if t.genericity.tag == OrbitTag::GenericG2 => flags.push(FLAG_PARALLEL_G2.into()),
            SolutionTag::TypeIIIalpha => {
                flags.push(FLAG_WEAK_G2.into());
                let weak = S::from_ratio(3, 8) * c.f.clone() * c.f.clone();
                if ric.sub(&Matrix::identity(ric.rows()).scale(&weak)).is_negligible(tol) {
                    notes.push(alloc::format!("Ric = (3/8)f²g = {}·g", weak.render()));
                }
            }
            _ => {}
        }
    }
    if let Some(d) = declared_lorentz {
        if !d.approx_eq(&lambda, tol) {
            flags.push(FLAG_LORENTZ_MISMATCH.into());
        }
    }
    let crosscheck = if c.ortho.m_dim() == 7 {
        let pf = ProductFrame::standard();
        let flux = FluxForm::new(pf, c.f.clone(), c.star(&c.phi))?;
        let direct = flux.stress_tensor()?;
        let reduced = reduced_stress(&pf, &c.f, &c.phi)?;
        Some(direct.sub(&reduced).max_abs())
    } else {
        notes.push("11-dimensional cross-check skipped: m is not seven-dimensional".into());
        None
    };
    let einstein_c = einstein_constant(&ric, &Matrix::identity(ric.rows()), tol);
    Ok(BackgroundReport {
        closure_residual: closure,
        maxwell_residual: maxwell,
        einstein7_residual: einstein,
        ricci: ric,
        einstein_constant: einstein_c,
        lorentz_constant: lambda,
        phi_norm_sq: phi2,
        solution_type,
        crosscheck_residual: crosscheck,
        flags,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn weak_values() {
        assert_eq!(weak_g2_f_values::<Q>(), [Q::from_i64(2), Q::from_i64(-2)]);
        let [a, b] = weak_g2_f_values::<f64>();
        assert!((a - 2.0).abs() < 1e-12 && (b + 2.0).abs() < 1e-12);
    }

    #[test]
    fn lorentz_constants() {
        let frame = crate::exterior::Frame::euclidean(7);
        let omega: KForm<Q> = g2::canonical_g2_form(frame).unwrap();
        assert_eq!(lorentz_einstein_constant(&omega, &Q::from_i64(2)), Q::from_ratio(-15, 6));
        assert_eq!(lorentz_einstein_constant(&KForm::zero(frame, 3), &Q::from_i64(3)), Q::from_i64(-3));
        assert_eq!(lorentz_einstein_constant(&omega, &Q::from_i64(0)), Q::from_ratio(-7, 6));
    }

    #[test]
    fn q_phi_of_generic_form() {
        let frame = crate::exterior::Frame::euclidean(7);
        let omega: KForm<Q> = g2::canonical_g2_form(frame).unwrap();
        assert_eq!(q_phi(&omega).unwrap(), Matrix::identity(7).scale(&Q::from_ratio(-3, 2)));
    }
}
