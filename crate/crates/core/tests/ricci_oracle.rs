//! Ricci curvature of left-invariant metrics on Lie groups computed from the
//! Levi-Civita connection forms, compared with the library's formula.

use fluxform::exterior::{wedge, Frame, KForm};
use fluxform::homogeneous::algebras::{hyperbolic, su2};
use fluxform::homogeneous::{ricci, CoframeDGA, InvariantMetric, LieAlgebraData, ReductiveSpace};
use fluxform::{Matrix, Rational, Scalar, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

/// Ric for an orthonormal coframe with `de = dga`: solve
/// `deⁱ + ωⁱⱼ∧eʲ = 0` with `ω` skew, then `Ω = dω + ω∧ω`,
/// `Ric_jl = Σᵢ Ωⁱⱼ(eᵢ, e_l)`.
fn cartan_ricci(g: &LieAlgebraData<Q>) -> Matrix<Q> {
    let n = g.dim();
    let frame = Frame::euclidean(n);
    let dga = CoframeDGA::from_lie(g);
    // Unknowns Γ[(i,j),k] for i < j: ωⁱⱼ = Σ_k Γ eᵏ.
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unknown = |p: usize, k: usize| p * n + k;
    let nu = pairs.len() * n;
    let two_masks = frame.basis_masks(2);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for &mask in &two_masks {
            let mut row = vec![Q::zero(); nu];
            // Σ_j ωⁱⱼ∧eʲ with ωⁱⱼ = ±Γ_{pair} eᵏ.
            for (p, &(a, b)) in pairs.iter().enumerate() {
                let (j, s) = if a == i {
                    (b, Q::one())
                } else if b == i {
                    (a, -Q::one())
                } else {
                    continue;
                };
                for k in 0..n {
                    let term = wedge(&KForm::<Q>::basis(frame, &[k]).unwrap(), &KForm::basis(frame, &[j]).unwrap()).unwrap();
                    let c = term.coeff_mask(mask);
                    if !c.is_zero() {
                        row[unknown(p, k)] = row[unknown(p, k)].clone() + s.clone() * c;
                    }
                }
            }
            rows.push(row);
            rhs.push(-dga.generator_differential(i).coeff_mask(mask));
        }
    }
    let sys = Matrix::from_rows(rows);
    let gamma = sys.solve(&rhs, &Tolerance::default()).expect("Levi-Civita connection exists");
    let omega = |i: usize, j: usize| -> KForm<Q> {
        if i == j {
            return KForm::zero(frame, 1);
        }
        let (p, s) = if i < j {
            (pairs.iter().position(|&x| x == (i, j)).unwrap(), Q::one())
        } else {
            (pairs.iter().position(|&x| x == (j, i)).unwrap(), -Q::one())
        };
        let mut f = KForm::zero(frame, 1);
        for k in 0..n {
            f.add_term(1 << k, s.clone() * gamma[unknown(p, k)].clone());
        }
        f
    };
    let mut ric = Matrix::<Q>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut curv = dga.d(&omega(i, j)).unwrap();
            for k in 0..n {
                curv = curv.add(&wedge(&omega(i, k), &omega(k, j)).unwrap()).unwrap();
            }
            for l in 0..n {
                let c = curv.coeff(&[i, l]);
                ric[(j, l)] = ric[(j, l)].clone() + c;
            }
        }
    }
    ric
}

fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Q>> {
    loop {
        let basis: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..n).map(|_| Q::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect())
            .collect();
        if fluxform::linalg::independent(&basis, &Tolerance::default()) {
            return basis;
        }
    }
}

fn library_ricci(g: &LieAlgebraData<Q>) -> Matrix<Q> {
    let tol = Tolerance::default();
    let space = ReductiveSpace::from_adapted(g.clone(), 0, &tol).unwrap();
    ricci(&space, &InvariantMetric::identity(g.dim()), &tol).unwrap()
}

fn heisenberg() -> LieAlgebraData<Q> {
    LieAlgebraData::from_brackets(
        fluxform::homogeneous::numbered_labels("X", 3),
        &[(0, 1, vec![(2, Q::one())])],
        &Tolerance::default(),
    )
    .unwrap()
}

fn solvable() -> LieAlgebraData<Q> {
    LieAlgebraData::from_brackets(
        fluxform::homogeneous::numbered_labels("X", 3),
        &[(0, 1, vec![(1, Q::one())]), (0, 2, vec![(1, Q::one()), (2, Q::from_i64(2))])],
        &Tolerance::default(),
    )
    .unwrap()
}

#[test]
fn cartan_matches_formula_on_random_metrics() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let algebras = [
        su2::<Q>(),
        hyperbolic(3, Q::one()),
        heisenberg(),
        solvable(),
        su2::<Q>().direct_sum(&LieAlgebraData::abelian(1)),
    ];
    for g in &algebras {
        assert_eq!(cartan_ricci(g), library_ricci(g));
        for _ in 0..4 {
            // A random basis declared orthonormal is a random left-invariant metric.
            let basis = random_basis(&mut rng, g.dim());
            let h = g.change_basis(&basis, g.labels().to_vec(), &tol).unwrap();
            assert_eq!(cartan_ricci(&h), library_ricci(&h));
        }
    }
}

#[test]
fn known_values() {
    // Bi-invariant su₂ with −Killing: Ric = ¼g, here Gram 2I gives Ric = ½I.
    let tol = Tolerance::default();
    let space = ReductiveSpace::from_adapted(su2::<Q>(), 0, &tol).unwrap();
    let ric = ricci(&space, &InvariantMetric::identity(3).scaled(&Q::from_i64(1)), &tol).unwrap();
    assert_eq!(ric, Matrix::identity(3).scale(&Q::from_ratio(1, 2)));
    let ric = ricci(&space, &InvariantMetric::diagonal(&[Q::from_i64(2), Q::from_i64(2), Q::from_i64(2)]), &tol).unwrap();
    assert_eq!(ric, Matrix::identity(3).scale(&Q::from_ratio(1, 2)));
    // Hyperbolic space of curvature −1.
    assert_eq!(library_ricci(&hyperbolic(3, Q::one())), Matrix::identity(3).scale(&Q::from_i64(-2)));
}
