//! Product coframes `M̃ × M` and the flux 4-form `F = f·vol_M̃ + F⁴`.
//!
//! Indices of the left factor come first in the combined frame, so
//! `vol = vol_left ∧ vol_right`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exterior::{self, form_inner, hodge, interior, norm_sq, wedge, Frame, FrameVector, KForm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductFrame {
    left: Frame,
    right: Frame,
    combined: Frame,
}

impl ProductFrame {
    pub fn new(left: Frame, right: Frame) -> Result<Self> {
        let n = left.dim() + right.dim();
        let timelike = left.timelike_mask() | right.timelike_mask() << left.dim();
        let combined = Frame::with_timelike(n, timelike)?;
        Ok(ProductFrame { left, right, combined })
    }

    /// Lorentzian `(3,1)` times Euclidean `R⁷`.
    pub fn standard() -> Self {
        Self::new(Frame::new(3, 1), Frame::euclidean(7)).expect("11 dimensions fit")
    }

    pub fn left(&self) -> Frame {
        self.left
    }

    pub fn right(&self) -> Frame {
        self.right
    }

    pub fn combined(&self) -> Frame {
        self.combined
    }

    fn offset(&self, side: Side) -> usize {
        match side {
            Side::Left => 0,
            Side::Right => self.left.dim(),
        }
    }

    /// Inject a form on one factor into the combined frame.
    pub fn lift<S: Scalar>(&self, a: &KForm<S>, side: Side) -> Result<KForm<S>> {
        let factor = match side {
            Side::Left => self.left,
            Side::Right => self.right,
        };
        if a.frame() != factor {
            return Err(Error::FrameMismatch);
        }
        let shift = self.offset(side);
        let mut out = KForm::zero(self.combined, a.degree());
        for (m, c) in a.terms() {
            out.add_term(m << shift, c.clone());
        }
        Ok(out)
    }

    /// Basis vector of one factor as a vector of the combined frame.
    pub fn lift_basis_vector<S: Scalar>(&self, i: usize, side: Side) -> FrameVector<S> {
        FrameVector::basis(self.combined, i + self.offset(side))
    }

    /// `★(ã ∧ a)` computed directly, and the split prediction
    /// `(−1)^{ℓ(p−k)} ★ã ∧ ★a` with `p = dim` of the left factor.
    pub fn split_star_check<S: Scalar>(&self, left: &KForm<S>, right: &KForm<S>) -> Result<(KForm<S>, KForm<S>)> {
        let direct = hodge(&wedge(&self.lift(left, Side::Left)?, &self.lift(right, Side::Right)?)?);
        let k = left.degree();
        let l = right.degree();
        let p = self.left.dim();
        let split = wedge(&self.lift(&hodge(left), Side::Left)?, &self.lift(&hodge(right), Side::Right)?)?;
        let predicted = if (l * (p - k)) % 2 == 1 { split.neg() } else { split };
        Ok((direct, predicted))
    }

    /// `⟨ã∧a, ã∧a⟩` on the product and `⟨ã,ã⟩·⟨a,a⟩` on the factors.
    pub fn norm_factorization_check<S: Scalar>(&self, left: &KForm<S>, right: &KForm<S>) -> Result<(S, S)> {
        let w = wedge(&self.lift(left, Side::Left)?, &self.lift(right, Side::Right)?)?;
        Ok((norm_sq(&w), norm_sq(left) * norm_sq(right)))
    }
}

/// `F = f·vol_left + F⁴` with `F⁴` a 4-form on the right factor.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxForm<S: Scalar> {
    frame: ProductFrame,
    f: S,
    f7: KForm<S>,
    assembled: KForm<S>,
}

impl<S: Scalar> FluxForm<S> {
    pub fn new(frame: ProductFrame, f: S, f7: KForm<S>) -> Result<Self> {
        if f7.degree() != 4 {
            return Err(Error::DegreeMismatch { expected: 4, found: f7.degree() });
        }
        if frame.left.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: frame.left.dim() });
        }
        let vol_left = frame.lift(&frame.left.vol::<S>(), Side::Left)?;
        let assembled = vol_left.scale(&f).add(&frame.lift(&f7, Side::Right)?)?;
        Ok(FluxForm { frame, f, f7, assembled })
    }

    pub fn frame(&self) -> ProductFrame {
        self.frame
    }

    pub fn f(&self) -> &S {
        &self.f
    }

    pub fn f7(&self) -> &KForm<S> {
        &self.f7
    }

    pub fn assembled(&self) -> &KForm<S> {
        &self.assembled
    }

    fn vol_left(&self) -> KForm<S> {
        self.frame.lift(&self.frame.left.vol::<S>(), Side::Left).expect("own frame")
    }

    fn vol_right(&self) -> KForm<S> {
        self.frame.lift(&self.frame.right.vol::<S>(), Side::Right).expect("own frame")
    }

    /// `★F` directly and as `−f·vol_right + vol_left ∧ ★F⁴`.
    pub fn star_flux(&self) -> Result<(KForm<S>, KForm<S>)> {
        let direct = hodge(&self.assembled);
        let star7 = self.frame.lift(&hodge(&self.f7), Side::Right)?;
        let closed = self.vol_right().scale(&-self.f.clone()).add(&wedge(&self.vol_left(), &star7)?)?;
        Ok((direct, closed))
    }

    /// `F ∧ F` directly and as `2f·vol_left ∧ F⁴`.
    pub fn flux_square(&self) -> Result<(KForm<S>, KForm<S>)> {
        let direct = wedge(&self.assembled, &self.assembled)?;
        let two_f = S::from_i64(2) * self.f.clone();
        let closed = wedge(&self.vol_left(), &self.frame.lift(&self.f7, Side::Right)?)?.scale(&two_f);
        Ok((direct, closed))
    }

    /// `‖F‖²` directly and as `⟨vol_left,vol_left⟩f² + ‖F⁴‖²`.
    pub fn flux_norm(&self) -> (S, S) {
        let direct = norm_sq(&self.assembled);
        let vv = S::from_i64(self.frame.left.eta_mask(self.frame.left.full_mask()));
        let closed = vv * self.f.clone() * self.f.clone() + norm_sq(&self.f7);
        (direct, closed)
    }

    /// Right-hand side of the eleven-dimensional Einstein equation,
    /// `½⟨X⌟F, Y⌟F⟩ − ⅙ g(X,Y) ‖F‖²`.
    pub fn stress_rhs(&self, x: &FrameVector<S>, y: &FrameVector<S>) -> Result<S> {
        let xf = interior(x, &self.assembled)?;
        let yf = interior(y, &self.assembled)?;
        let half = S::from_ratio(1, 2);
        let sixth = S::from_ratio(1, 6);
        Ok(half * form_inner(&xf, &yf)? - sixth * x.inner(y)? * norm_sq(&self.assembled))
    }

    /// [`Self::stress_rhs`] on every pair of combined basis vectors.
    pub fn stress_tensor(&self) -> Result<Matrix<S>> {
        let frame = self.frame.combined;
        let n = frame.dim();
        let contracted: Vec<KForm<S>> = (0..n)
            .map(|i| exterior::interior_basis_vector(i, &self.assembled))
            .collect::<Result<_>>()?;
        let norm = norm_sq(&self.assembled);
        let half = S::from_ratio(1, 2);
        let sixth = S::from_ratio(1, 6);
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut v = half.clone() * form_inner(&contracted[i], &contracted[j])?;
                if i == j {
                    v = v - sixth.clone() * S::from_i64(frame.eta(i)) * norm.clone();
                }
                out[(i, j)] = v.clone();
                out[(j, i)] = v;
            }
        }
        Ok(out)
    }
}

/// Stress predicted by the reduced formulas when `F⁴ = ★φ`:
/// `Λ·η` on the left block with `Λ = −(2f² + ‖φ‖²)/6`,
/// `⅙(f² + 2‖φ‖²)δ − ½⟨eᵢ⌟φ, eⱼ⌟φ⟩` on the right block, zero across.
pub fn reduced_stress<S: Scalar>(frame: &ProductFrame, f: &S, phi: &KForm<S>) -> Result<Matrix<S>> {
    if phi.frame() != frame.right || phi.degree() != 3 || frame.right.signature().1 != 0 {
        return Err(Error::Precondition("reduced stress needs a 3-form on a Euclidean right factor".into()));
    }
    let nl = frame.left.dim();
    let nr = frame.right.dim();
    let phi2 = norm_sq(phi);
    let f2 = f.clone() * f.clone();
    let lambda = -(S::from_i64(2) * f2.clone() + phi2.clone()) / S::from_i64(6);
    let diag = (f2 + S::from_i64(2) * phi2) / S::from_i64(6);
    let q = contraction_gram(phi)?;
    let mut out = Matrix::zeros(nl + nr, nl + nr);
    for i in 0..nl {
        out[(i, i)] = lambda.clone() * S::from_i64(frame.left.eta(i));
    }
    for i in 0..nr {
        for j in 0..nr {
            let mut v = -S::from_ratio(1, 2) * q[(i, j)].clone();
            if i == j {
                v = v + diag.clone() * S::from_i64(frame.right.eta(i));
            }
            out[(nl + i, nl + j)] = v;
        }
    }
    Ok(out)
}

/// The Gram matrix `⟨eᵢ⌟a, eⱼ⌟a⟩`.
pub fn contraction_gram<S: Scalar>(a: &KForm<S>) -> Result<Matrix<S>> {
    let n = a.frame().dim();
    let c: Vec<KForm<S>> = (0..n).map(|i| exterior::interior_basis_vector(i, a)).collect::<Result<_>>()?;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = form_inner(&c[i], &c[j])?;
            out[(i, j)] = v.clone();
            out[(j, i)] = v;
        }
    }
    Ok(out)
}
