use fluxform::exterior::{norm_sq, Frame, KForm};
use fluxform::homogeneous::{einstein_constant, invariant_forms, ricci, InvariantMetric};
use fluxform::models::*;
use fluxform::product::{reduced_stress, FluxForm, ProductFrame};
use fluxform::sugra::*;
use fluxform::{Rational, Scalar, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn rq(rng: &mut ChaCha8Rng) -> Q {
    Q::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn combination(rng: &mut ChaCha8Rng, forms: &[KForm<Q>]) -> KForm<Q> {
    forms.iter().fold(KForm::zero(forms[0].frame(), forms[0].degree()), |acc, f| acc.add(&f.scale(&rq(rng))).unwrap())
}

#[test]
fn eleven_dimensional_stress_matches_reduced_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let space = cp2xs3_space::<Q>(&tol()).unwrap();
    let inv = invariant_forms(&space, 3, &tol()).unwrap();
    let all = invariant_forms(&torus7::<Q>(&tol()).unwrap(), 3, &tol()).unwrap();
    let pf = ProductFrame::standard();
    for round in 0..60 {
        let phi = if round % 2 == 0 {
            combination(&mut rng, &inv)
        } else {
            // Sparse random 3-form on R⁷.
            let picks: Vec<KForm<Q>> = (0..4).map(|_| all[rng.gen_range(0..all.len())].clone()).collect();
            combination(&mut rng, &picks)
        };
        let f = rq(&mut rng);
        let flux = FluxForm::new(pf, f.clone(), fluxform::exterior::hodge(&phi)).unwrap();
        assert_eq!(flux.stress_tensor().unwrap(), reduced_stress(&pf, &f, &phi).unwrap());
    }
}

#[test]
fn solver_and_checker_agree() {
    let space = cp2xs3_space::<Q>(&tol()).unwrap();
    for c in [[1, 1, 1], [4, 2, 2], [9, 4, 1], [1, 4, 9]] {
        let metric = cp2xs3_metric(Q::from_i64(2), c.map(Q::from_i64));
        for orientation in [1, -1] {
            let spec = solve_maxwell(&space, &metric, orientation, &tol()).unwrap();
            assert!(!spec.branches.is_empty());
            for b in &spec.branches {
                for phi in &b.basis {
                    let cand =
                        SpecialFormCandidate::new(space.clone(), metric.clone(), orientation, phi.clone(), b.f.clone(), &tol())
                            .unwrap();
                    let (r1, r2) = special_form_residual(&cand, &tol()).unwrap();
                    assert!(r1.is_zero() && r2.is_zero());
                }
            }
        }
    }
}

#[test]
fn mixed_branch_is_not_special() {
    let space = cp2xs3_space::<Q>(&tol()).unwrap();
    let metric = cp2xs3_metric(Q::one(), [Q::one(), Q::one(), Q::one()]);
    let phi = cp2xs3_omega_theta::<Q>(0).add(&cp2xs3_vol3()).unwrap();
    let c = SpecialFormCandidate::new(space, metric, 1, phi, Q::one(), &tol()).unwrap();
    let (r1, r2) = special_form_residual(&c, &tol()).unwrap();
    assert!(r1.is_zero());
    assert!(!r2.is_zero());
    assert!(classify_type(&c, &tol()).is_err());
}

#[test]
fn orientation_flips_f() {
    let space = cp2xs3_space::<Q>(&tol()).unwrap();
    let metric = cp2xs3_metric(Q::one(), [Q::one(), Q::one(), Q::one()]);
    let plus: Vec<Q> = solve_maxwell(&space, &metric, 1, &tol()).unwrap().branches.into_iter().map(|b| b.f).collect();
    let minus: Vec<Q> = solve_maxwell(&space, &metric, -1, &tol()).unwrap().branches.into_iter().map(|b| -b.f).collect();
    let mut minus = minus;
    minus.sort();
    assert_eq!(plus, minus);
}

#[test]
fn rescaling_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (space, metric) = so7_over_g2::<Q>(G2Complement::Contraction, &tol()).unwrap();
    let spec = solve_maxwell(&space, &metric, 1, &tol()).unwrap();
    let base = SpecialFormCandidate::new(space.clone(), metric.clone(), 1, spec.branches[0].basis[0].clone(), spec.branches[0].f.clone(), &tol())
        .unwrap();
    let ric = ricci(&space, &metric, &tol()).unwrap();
    let k = einstein_constant(&ric, metric.gram(), &tol()).unwrap();
    assert_eq!(rescale(&base, &Q::one(), &tol()).unwrap(), base);
    for _ in 0..8 {
        let t = Q::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=5));
        let c = rescale(&base, &t, &tol()).unwrap();
        assert_eq!(norm_sq(c.phi()), norm_sq(base.phi()));
        assert_eq!(c.f().clone(), base.f().clone() / t.clone());
        let (r1, r2) = special_form_residual(&c, &tol()).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
        let ric_t = ricci(&space, c.metric(), &tol()).unwrap();
        assert_eq!(ric_t, ric);
        assert_eq!(einstein_constant(&ric_t, c.metric().gram(), &tol()).unwrap(), k.clone() / (t.clone() * t.clone()));
    }
    assert!(rescale(&base, &Q::zero(), &tol()).is_err());
    assert!(rescale(&base, &Q::from_i64(-1), &tol()).is_err());
}

#[test]
fn type_one_backgrounds() {
    // φ = 0, f ≠ 0 on SU₂ × T⁴: Type I, but Ric is not (f²/6)g there.
    let space = s3xt4_space::<Q>(&tol()).unwrap();
    let c = SpecialFormCandidate::new(space, InvariantMetric::identity(7), 1, KForm::zero(Frame::euclidean(7), 3), Q::from_i64(2), &tol())
        .unwrap();
    let t = classify_type(&c, &tol()).unwrap();
    assert_eq!(t.tag, SolutionTag::TypeI);
    let rep = verify_background(&c, None, &tol()).unwrap();
    assert_eq!(rep.lorentz_constant, Q::from_ratio(-4, 3));
    assert!(!rep.einstein7_residual.is_zero());
}

#[test]
fn lorentz_mismatch_is_flagged() {
    let (space, metric) = so7_over_g2::<Q>(G2Complement::Contraction, &tol()).unwrap();
    let spec = solve_maxwell(&space, &metric, 1, &tol()).unwrap();
    let c = SpecialFormCandidate::new(space, metric, 1, spec.branches[0].basis[0].clone(), spec.branches[0].f.clone(), &tol()).unwrap();
    let c = normalize_weak_g2(&c, &tol()).unwrap();
    let rep = verify_background(&c, Some(&Q::from_i64(-1)), &tol()).unwrap();
    assert!(rep.flags.iter().any(|f| f == FLAG_LORENTZ_MISMATCH));
    assert_eq!(rep.exit_code(&tol()), 2);
}
