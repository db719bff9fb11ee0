//! Seeded property sweeps over random sparse forms.

use fluxform::exterior::{contraction_identity, hodge, norm_sq, Frame, FrameVector, KForm};
use fluxform::product::ProductFrame;
use fluxform::{Result, Scalar, Tolerance};
use rand::Rng;

/// Tally of one sweep: how many cases ran and the first few failures.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn small_rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let mut n = rng.gen_range(-6i64..=6);
    if n == 0 {
        n = 1;
    }
    S::from_ratio(n, rng.gen_range(1i64..=5))
}

/// Random form of degree `k` with up to `max_terms` nonzero terms.
pub fn random_form<S: Scalar, R: Rng>(rng: &mut R, frame: Frame, k: usize, max_terms: usize) -> KForm<S> {
    let masks = frame.basis_masks(k);
    let mut f = KForm::zero(frame, k);
    for _ in 0..rng.gen_range(1..=max_terms) {
        f.add_term(masks[rng.gen_range(0..masks.len())], small_rational(rng));
    }
    f
}

pub fn random_frame<R: Rng>(rng: &mut R, max_n: usize) -> Frame {
    let n = rng.gen_range(1..=max_n);
    let q = rng.gen_range(0..=n);
    Frame::new(n - q, q)
}

fn sign<S: Scalar>(e: usize) -> S {
    if e.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

/// `★★a = (−1)^{k(n−k)+q}a` on random forms, plus `★1`, `★vol` and
/// `⟨vol, vol⟩` on every signature with `p + q ≤ max_n`.
pub fn hodge_conventions<S: Scalar, R: Rng>(rng: &mut R, count: usize, max_n: usize) -> Tally {
    let mut t = Tally::default();
    for _ in 0..count {
        let fr = random_frame(rng, max_n);
        let k = rng.gen_range(0..=fr.dim());
        let a = random_form::<S, _>(rng, fr, k, 6);
        let (_, q) = fr.signature();
        let ok = hodge(&hodge(&a)) == a.scale(&sign(k * (fr.dim() - k) + q));
        t.record(ok, || format!("double star fails on {a} in signature {:?}", fr.signature()));
    }
    for n in 1..=max_n {
        for q in 0..=n {
            let fr = Frame::new(n - q, q);
            let vol = fr.vol::<S>();
            t.record(hodge(&fr.one::<S>()) == vol, || format!("★1 ≠ vol for ({}, {q})", n - q));
            t.record(hodge(&vol) == fr.one::<S>().scale(&sign(q)), || format!("★vol wrong for ({}, {q})", n - q));
            t.record(norm_sq(&vol) == sign::<S>(q), || format!("⟨vol, vol⟩ wrong for ({}, {q})", n - q));
        }
    }
    t
}

/// Both contraction identities on random forms of every degree and every
/// signature with `n ≤ max_n`, `per_case` forms per (signature, degree).
pub fn contraction_identities<S: Scalar, R: Rng>(rng: &mut R, per_case: usize, max_n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 1..=max_n {
        for q in 0..=n {
            let fr = Frame::new(n - q, q);
            for k in 1..=n {
                for _ in 0..per_case {
                    let a = random_form::<S, _>(rng, fr, k, 5);
                    let x = FrameVector::new(fr, (0..n).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect())?;
                    let y = FrameVector::new(fr, (0..n).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect())?;
                    let (lhs, rhs) = contraction_identity(&a, &x, &y)?;
                    t.record(lhs.approx_eq(&rhs, &Tolerance::default()), || format!("contraction identity fails on {a} in ({}, {q})", n - q));
                }
            }
        }
    }
    Ok(t)
}

/// Split Hodge star and norm factorization for every pair of basis forms
/// on the `(3,1) × (7,0)` product.
pub fn product_lemma<S: Scalar>() -> Result<Tally> {
    let pf = ProductFrame::standard();
    let mut t = Tally::default();
    for k in 0..=pf.left().dim() {
        for ml in pf.left().basis_masks(k) {
            let left = KForm::<S>::basis_mask(pf.left(), ml);
            for l in 0..=pf.right().dim() {
                for mr in pf.right().basis_masks(l) {
                    let right = KForm::<S>::basis_mask(pf.right(), mr);
                    let (direct, split) = pf.split_star_check(&left, &right)?;
                    t.record(direct == split, || format!("split star fails on {left} ∧ {right}"));
                    let (n1, n2) = pf.norm_factorization_check(&left, &right)?;
                    t.record(n1.approx_eq(&n2, &Tolerance::default()), || format!("norm factorization fails on {left} ∧ {right}"));
                }
            }
        }
    }
    Ok(t)
}
