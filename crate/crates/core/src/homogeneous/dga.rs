use alloc::string::String;
use alloc::vec::Vec;

use super::lie::LieAlgebraData;
use super::reductive::ReductiveSpace;
use crate::error::{Error, Result};
use crate::exterior::{mask_indices, wedge, Frame, KForm};
use crate::scalar::{Scalar, Tolerance};

/// Extend `eⁱ ↦ dgens[i]` to a degree-one derivation:
/// `d(e^{i₀…i_k}) = Σ_p (−1)^p de^{i_p} ∧ e^{I∖i_p}`.
pub(crate) fn apply_derivation<S: Scalar>(dgens: &[KForm<S>], a: &KForm<S>) -> KForm<S> {
    let frame = a.frame();
    let mut out = KForm::zero(frame, a.degree() + 1);
    for (mask, c) in a.terms() {
        for (p, i) in mask_indices(mask).into_iter().enumerate() {
            let rest = KForm::basis_mask(frame, mask & !(1 << i));
            let term = wedge(&dgens[i], &rest).expect("same frame");
            let term = if p % 2 == 1 { term.neg() } else { term };
            out = out.add(&term.scale(c)).expect("same frame");
        }
    }
    out
}

/// A free graded-commutative algebra on one-form generators with a
/// prescribed differential of each generator.
///
/// Construction does not require `d² = 0`; use [`CoframeDGA::validate`] or
/// [`CoframeDGA::from_structure_equations`] when the table must be a Lie
/// algebra dual.
#[derive(Clone, Debug, PartialEq)]
pub struct CoframeDGA<S: Scalar> {
    labels: Vec<String>,
    d: Vec<KForm<S>>,
}

impl<S: Scalar> CoframeDGA<S> {
    pub fn new(labels: Vec<String>, d: Vec<KForm<S>>) -> Result<Self> {
        let n = labels.len();
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: d.len() });
        }
        let frame = Frame::euclidean(n);
        for a in &d {
            if a.frame() != frame {
                return Err(Error::FrameMismatch);
            }
            if a.degree() != 2 {
                return Err(Error::DegreeMismatch { expected: 2, found: a.degree() });
            }
        }
        Ok(CoframeDGA { labels, d })
    }

    /// [`Self::new`] followed by [`Self::validate`].
    pub fn from_structure_equations(labels: Vec<String>, d: Vec<KForm<S>>, tol: &Tolerance) -> Result<Self> {
        let dga = Self::new(labels, d)?;
        dga.validate(tol)?;
        Ok(dga)
    }

    /// The dual coframe of `g`: `de^k = −Σ_{i<j} c^k_ij e^{ij}`.
    pub fn from_lie(g: &LieAlgebraData<S>) -> Self {
        let n = g.dim();
        let frame = Frame::euclidean(n);
        let mut d: Vec<KForm<S>> = (0..n).map(|_| KForm::zero(frame, 2)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in g.bracket_terms(i, j) {
                    d[*k].add_term(1 << i | 1 << j, -c.clone());
                }
            }
        }
        CoframeDGA { labels: g.labels().to_vec(), d }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn frame(&self) -> Frame {
        Frame::euclidean(self.dim())
    }

    /// `d` of generator `i`.
    pub fn generator_differential(&self, i: usize) -> &KForm<S> {
        &self.d[i]
    }

    pub fn d(&self, a: &KForm<S>) -> Result<KForm<S>> {
        if a.frame() != self.frame() {
            return Err(Error::FrameMismatch);
        }
        Ok(apply_derivation(&self.d, a))
    }

    /// Generators whose `d²` does not vanish, with the offending 3-form.
    pub fn d_squared_failures(&self, tol: &Tolerance) -> Vec<(usize, KForm<S>)> {
        (0..self.dim())
            .filter_map(|i| {
                let dd = apply_derivation(&self.d, &self.d[i]);
                (!dd.is_negligible(tol)).then_some((i, dd))
            })
            .collect()
    }

    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        match self.d_squared_failures(tol).first() {
            None => Ok(()),
            Some((i, dd)) => Err(Error::Invalid(alloc::format!("d²{} = {} ≠ 0", self.labels[*i], dd))),
        }
    }

    /// Structure constants `c^k_ij = −(coefficient of e^{ij} in de^k)`.
    /// Jacobi is checked by the Lie algebra constructor, independently of
    /// `d² = 0`.
    pub fn to_lie(&self, tol: &Tolerance) -> Result<LieAlgebraData<S>> {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, S)> = (0..n)
                    .filter_map(|k| {
                        let c = self.d[k].coeff_mask(1 << i | 1 << j);
                        (!c.is_zero()).then(|| (k, -c))
                    })
                    .collect();
                if !terms.is_empty() {
                    brackets.push((i, j, terms));
                }
            }
        }
        LieAlgebraData::from_brackets(self.labels.clone(), &brackets, tol)
    }

    /// The coset with `h` spanned by the listed generators' duals and `m`
    /// by the remaining ones, in their original order.
    pub fn reductive_space(&self, h_generators: &[usize], tol: &Tolerance) -> Result<ReductiveSpace<S>> {
        let g = self.to_lie(tol)?;
        if h_generators.iter().any(|&i| i >= self.dim()) {
            return Err(Error::Invalid("h generator index out of range".into()));
        }
        let h = h_generators.iter().map(|&i| g.basis_vector(i)).collect();
        let m = (0..self.dim()).filter(|i| !h_generators.contains(i)).map(|i| g.basis_vector(i)).collect();
        ReductiveSpace::new(g, h, m, tol)
    }
}
