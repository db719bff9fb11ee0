//! Alternating forms on a pseudo-orthonormal coframe.
//!
//! Basis `k`-forms `e^I` are keyed by the bitmask of the index set `I`, so
//! a multi-index is always strictly increasing. Indices are 0-based here;
//! the text and JSON layers print them 1-based.
//!
//! Conventions:
//! * `⟨e^I, e^J⟩ = δ_IJ (−1)^u` with `u` the number of timelike indices in `I`;
//! * the Hodge star is fixed by `a ∧ ★b = ⟨a, b⟩ vol`;
//! * `X ⌟ a` fills the first slot, `(X ⌟ a)(Y, …) = a(X, Y, …)`;
//! * a matrix `A` acts on forms as the derivation `(A·a)(X₁, …) = −Σ a(…, A Xᵢ, …)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// Largest supported dimension (bitmask width).
pub const MAX_DIM: usize = 16;

/// A pseudo-orthonormal coframe `e¹, …, eⁿ` with `vol = e¹ ∧ … ∧ eⁿ`.
///
/// Timelike directions are recorded as a bitmask so that product frames can
/// keep their timelike index inside the left block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    n: usize,
    timelike: u32,
}

impl Frame {
    /// Signature `(p, q)`: the last `q` directions are timelike.
    pub fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        assert!(n <= MAX_DIM, "frame dimension {n} exceeds {MAX_DIM}");
        let timelike = ((1u32 << q) - 1) << p;
        Frame { n, timelike }
    }

    pub fn euclidean(n: usize) -> Self {
        Self::new(n, 0)
    }

    /// Arbitrary timelike set given as a bitmask of 0-based indices.
    pub fn with_timelike(n: usize, timelike: u32) -> Result<Self> {
        if n > MAX_DIM || timelike >> n != 0 {
            return Err(Error::Invalid(alloc::format!("bad frame: n = {n}, timelike mask {timelike:#b}")));
        }
        Ok(Frame { n, timelike })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `(p, q)`: spacelike and timelike counts.
    pub fn signature(&self) -> (usize, usize) {
        let q = self.timelike.count_ones() as usize;
        (self.n - q, q)
    }

    pub fn timelike_mask(&self) -> u32 {
        self.timelike
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// `⟨e_i, e_i⟩ = ±1`.
    pub fn eta(&self, i: usize) -> i64 {
        if self.timelike >> i & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// `⟨e^I, e^I⟩` for a basis form.
    pub fn eta_mask(&self, mask: u32) -> i64 {
        if (mask & self.timelike).count_ones() % 2 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn vol<S: Scalar>(&self) -> KForm<S> {
        KForm::basis_mask(*self, self.full_mask())
    }

    pub fn one<S: Scalar>(&self) -> KForm<S> {
        KForm::constant(*self, S::one())
    }

    /// All basis masks of degree `k` in increasing lexicographic order of
    /// their index tuples.
    pub fn basis_masks(&self, k: usize) -> Vec<u32> {
        if k > self.n {
            return Vec::new();
        }
        let mut out: Vec<u32> = (0..=self.full_mask()).filter(|m| m.count_ones() as usize == k).collect();
        out.sort_by_key(|m| mask_indices(*m));
        out
    }
}

/// Ascending 0-based indices of a mask.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}` for disjoint masks.
pub fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> j >> 1).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed<S: Scalar>(sign: i64, c: S) -> S {
    if sign < 0 {
        -c
    } else {
        c
    }
}

/// A sparse alternating form of fixed degree.
#[derive(Clone, PartialEq)]
pub struct KForm<S> {
    frame: Frame,
    degree: usize,
    terms: BTreeMap<u32, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(frame: Frame, degree: usize) -> Self {
        KForm { frame, degree, terms: BTreeMap::new() }
    }

    pub fn constant(frame: Frame, c: S) -> Self {
        let mut f = Self::zero(frame, 0);
        f.add_term(0, c);
        f
    }

    pub fn basis_mask(frame: Frame, mask: u32) -> Self {
        let mut f = Self::zero(frame, mask.count_ones() as usize);
        f.add_term(mask, S::one());
        f
    }

    /// `e^{i₁} ∧ … ∧ e^{i_k}` for 0-based indices in any order; repeated
    /// indices give zero.
    pub fn basis(frame: Frame, indices: &[usize]) -> Result<Self> {
        let mut f = Self::zero(frame, indices.len());
        f.add_indexed(indices, S::one())?;
        Ok(f)
    }

    /// Build from `(indices, coefficient)` pairs of a common degree.
    pub fn from_terms<'a, I>(frame: Frame, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [usize], S)>,
    {
        let mut f = Self::zero(frame, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            f.add_indexed(idx, c)?;
        }
        Ok(f)
    }

    /// Add `c · e^{indices}` with the permutation sign of `indices`.
    pub fn add_indexed(&mut self, indices: &[usize], c: S) -> Result<()> {
        if indices.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: indices.len() });
        }
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in indices {
            if i >= self.frame.n {
                return Err(Error::Invalid(alloc::format!("index {} out of range for dimension {}", i + 1, self.frame.n)));
            }
            if mask >> i & 1 == 1 {
                return Ok(());
            }
            sign *= wedge_sign(mask, 1 << i);
            mask |= 1 << i;
        }
        self.add_term(mask, signed(sign, c));
        Ok(())
    }

    /// Add `c` to the coefficient of `e^mask`, pruning zeros.
    pub fn add_term(&mut self, mask: u32, c: S) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(old) => {
                let v = old + c;
                if !v.is_zero() {
                    self.terms.insert(mask, v);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_negligible(&self, tol: &Tolerance) -> bool {
        self.terms.values().all(|c| c.is_negligible(tol))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_mask(&self, mask: u32) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `e^{indices}` including the permutation sign.
    pub fn coeff(&self, indices: &[usize]) -> S {
        let mut probe = Self::zero(self.frame, indices.len());
        if probe.add_indexed(indices, S::one()).is_err() {
            return S::zero();
        }
        match probe.terms.iter().next() {
            Some((&m, s)) => s.clone() * self.coeff_mask(m),
            None => S::zero(),
        }
    }

    /// Terms as `(mask, coefficient)` in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms sorted lexicographically by index tuple, the order used in
    /// reports.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, S)> {
        let mut v: Vec<(Vec<usize>, S)> = self.terms.iter().map(|(m, c)| (mask_indices(*m), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Coefficient vector in the order of [`Frame::basis_masks`].
    pub fn to_vector(&self) -> Vec<S> {
        self.frame.basis_masks(self.degree).into_iter().map(|m| self.coeff_mask(m)).collect()
    }

    pub fn from_vector(frame: Frame, degree: usize, v: &[S]) -> Self {
        let mut f = Self::zero(frame, degree);
        for (m, c) in frame.basis_masks(degree).into_iter().zip(v) {
            f.add_term(m, c.clone());
        }
        f
    }

    pub fn max_abs_coeff(&self) -> S {
        S::max_abs(self.terms.values())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.frame, self.degree);
        }
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::zero(self.frame, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Drop coefficients below `tol` (no-op for exact scalars).
    pub fn chop(&self, tol: &Tolerance) -> Self {
        let mut out = Self::zero(self.frame, self.degree);
        for (m, c) in &self.terms {
            if !c.is_negligible(tol) {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// `true` when `self − other` is negligible.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.sub(other).is_ok_and(|d| d.is_negligible(tol))
    }

    /// Same coefficients reinterpreted on another frame of equal dimension.
    pub fn on_frame(&self, frame: Frame) -> Result<Self> {
        if frame.n != self.frame.n {
            return Err(Error::DimensionMismatch { expected: self.frame.n, found: frame.n });
        }
        Ok(KForm { frame, degree: self.degree, terms: self.terms.clone() })
    }

}

impl<S: Scalar> fmt::Debug for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(deg {}; ", self.degree)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    /// Renders `c e^{i…}` terms with 1-based indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c.render())?;
            if idx.is_empty() {
                continue;
            }
            write!(f, " e^")?;
            for i in idx {
                if self.frame.n > 9 {
                    write!(f, "{}.", i + 1)?;
                } else {
                    write!(f, "{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// A tangent vector in the frame basis `e₁, …, eₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameVector<S> {
    frame: Frame,
    components: Vec<S>,
}

impl<S: Scalar> FrameVector<S> {
    pub fn new(frame: Frame, components: Vec<S>) -> Result<Self> {
        if components.len() != frame.n {
            return Err(Error::DimensionMismatch { expected: frame.n, found: components.len() });
        }
        Ok(FrameVector { frame, components })
    }

    /// The basis vector `e_i` (0-based).
    pub fn basis(frame: Frame, i: usize) -> Self {
        let mut components = vec![S::zero(); frame.n];
        components[i] = S::one();
        FrameVector { frame, components }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    /// `⟨X, Y⟩ = Σ ηᵢ XⁱYⁱ`.
    pub fn inner(&self, other: &Self) -> Result<S> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        let mut acc = S::zero();
        for (i, (a, b)) in self.components.iter().zip(&other.components).enumerate() {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + signed(self.frame.eta(i), a.clone() * b.clone());
            }
        }
        Ok(acc)
    }
}

/// `a ∧ b`. Degrees adding past the dimension give the zero form of that
/// degree.
pub fn wedge<S: Scalar>(a: &KForm<S>, b: &KForm<S>) -> Result<KForm<S>> {
    if a.frame != b.frame {
        return Err(Error::FrameMismatch);
    }
    let mut out = KForm::zero(a.frame, a.degree + b.degree);
    if a.degree + b.degree > a.frame.n {
        return Ok(out);
    }
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            out.add_term(ma | mb, signed(wedge_sign(*ma, *mb), ca.clone() * cb.clone()));
        }
    }
    Ok(out)
}

/// Wedge of several forms, left to right.
pub fn wedge_all<S: Scalar>(forms: &[&KForm<S>]) -> Result<KForm<S>> {
    let Some(first) = forms.first() else {
        return Err(Error::Invalid("empty wedge".into()));
    };
    let mut acc = (*first).clone();
    for f in &forms[1..] {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

/// `ιₓ e^I` for a basis vector: `(−1)^pos e^{I∖i}` where `pos` counts the
/// indices of `I` below `i`.
fn interior_basis<S: Scalar>(i: usize, a: &KForm<S>, weight: &S, out: &mut KForm<S>) {
    for (m, c) in &a.terms {
        if m >> i & 1 == 0 {
            continue;
        }
        let below = (m & ((1u32 << i) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1 } else { -1 };
        out.add_term(m & !(1 << i), signed(sign, c.clone() * weight.clone()));
    }
}

/// `X ⌟ a`, contracting the first slot.
pub fn interior<S: Scalar>(x: &FrameVector<S>, a: &KForm<S>) -> Result<KForm<S>> {
    if x.frame != a.frame {
        return Err(Error::FrameMismatch);
    }
    if a.degree == 0 {
        return Err(Error::Precondition("interior product of a 0-form".into()));
    }
    let mut out = KForm::zero(a.frame, a.degree - 1);
    for (i, xi) in x.components.iter().enumerate() {
        if !xi.is_zero() {
            interior_basis(i, a, xi, &mut out);
        }
    }
    Ok(out)
}

/// `e_i ⌟ a` for a basis vector (0-based).
pub fn interior_basis_vector<S: Scalar>(i: usize, a: &KForm<S>) -> Result<KForm<S>> {
    if a.degree == 0 {
        return Err(Error::Precondition("interior product of a 0-form".into()));
    }
    let mut out = KForm::zero(a.frame, a.degree - 1);
    interior_basis(i, a, &S::one(), &mut out);
    Ok(out)
}

/// Inner product induced on forms by the frame metric.
pub fn form_inner<S: Scalar>(a: &KForm<S>, b: &KForm<S>) -> Result<S> {
    a.check_same(b)?;
    let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
    let mut acc = S::zero();
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            acc = acc + signed(a.frame.eta_mask(*m), c.clone() * d.clone());
        }
    }
    Ok(acc)
}

pub fn norm_sq<S: Scalar>(a: &KForm<S>) -> S {
    let mut acc = S::zero();
    for (m, c) in &a.terms {
        acc = acc + signed(a.frame.eta_mask(*m), c.clone() * c.clone());
    }
    acc
}

/// Hodge star, `★e^I = η_I · sign(I, Iᶜ) · e^{Iᶜ}`.
pub fn hodge<S: Scalar>(a: &KForm<S>) -> KForm<S> {
    let full = a.frame.full_mask();
    let mut out = KForm::zero(a.frame, a.frame.n - a.degree);
    for (m, c) in &a.terms {
        let comp = full & !m;
        let sign = a.frame.eta_mask(*m) * wedge_sign(*m, comp);
        out.add_term(comp, signed(sign, c.clone()));
    }
    out
}

/// The derivation action of an `n×n` matrix on forms: on 1-forms
/// `A·e^j = −Σ_l A_{jl} e^l`, extended by the Leibniz rule.
pub fn endo_action<S: Scalar>(a_mat: &Matrix<S>, a: &KForm<S>) -> Result<KForm<S>> {
    let n = a.frame.n;
    if a_mat.rows() != n || a_mat.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a_mat.rows() });
    }
    let mut out = KForm::zero(a.frame, a.degree);
    for (m, c) in &a.terms {
        let mut pos = 0;
        let mut rest = *m;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // e^I = (−1)^pos e^j ∧ e^{I∖j}
            let without = m & !(1u32 << j);
            for l in 0..n {
                let ajl = &a_mat[(j, l)];
                if ajl.is_zero() || without >> l & 1 == 1 {
                    continue;
                }
                let below = (without & ((1u32 << l) - 1)).count_ones() as usize;
                let sign = if (pos + below).is_multiple_of(2) { -1 } else { 1 };
                out.add_term(without | 1 << l, signed(sign, ajl.clone() * c.clone()));
            }
            pos += 1;
        }
    }
    Ok(out)
}

/// Pull-back substitution `e^i ↦ Σ_j T_{ij} e^j` extended multiplicatively.
pub fn substitute<S: Scalar>(t: &Matrix<S>, a: &KForm<S>) -> Result<KForm<S>> {
    let n = a.frame.n;
    if t.rows() != n || t.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.rows() });
    }
    let images: Vec<KForm<S>> = (0..n)
        .map(|i| {
            let mut f = KForm::zero(a.frame, 1);
            for j in 0..n {
                f.add_term(1 << j, t[(i, j)].clone());
            }
            f
        })
        .collect();
    let mut out = KForm::zero(a.frame, a.degree);
    for (m, c) in &a.terms {
        let mut term = KForm::constant(a.frame, c.clone());
        for i in mask_indices(*m) {
            term = wedge(&term, &images[i])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Both sides of the contraction identity
/// `(−1)^q ⟨X⌟★a, Y⌟★a⟩ = ⟨a,a⟩⟨X,Y⟩ − ⟨X⌟a, Y⌟a⟩`,
/// or of `⟨X⌟a, Y⌟a⟩ = ⟨a,a⟩⟨X,Y⟩` when `a` has top degree.
pub fn contraction_identity<S: Scalar>(a: &KForm<S>, x: &FrameVector<S>, y: &FrameVector<S>) -> Result<(S, S)> {
    if a.degree == 0 {
        return Err(Error::Precondition("contraction identity needs degree at least 1".into()));
    }
    let xy = x.inner(y)?;
    let aa = norm_sq(a);
    let xa = interior(x, a)?;
    let ya = interior(y, a)?;
    let contracted = form_inner(&xa, &ya)?;
    if a.degree == a.frame.n {
        return Ok((contracted, aa * xy));
    }
    let star = hodge(a);
    let lhs = form_inner(&interior(x, &star)?, &interior(y, &star)?)?;
    let q = a.frame.signature().1;
    let lhs = if q % 2 == 1 { -lhs } else { lhs };
    Ok((lhs, aa * xy - contracted))
}
