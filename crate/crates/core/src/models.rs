//! Built-in homogeneous models: data only, no checks beyond construction.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::exterior::{Frame, KForm};
use crate::g2;
use crate::homogeneous::algebras::{quaternion_left, so, so3_harmonic_cubics, so_generators, so_q, sp2, su3};
use crate::homogeneous::{reductive_split, Bilinear, CoframeDGA, InvariantMetric, LieAlgebraData, ReductiveSpace};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// Two-form terms `(coefficient, i, j)` for `c·eⁱ∧eʲ`, 0-based.
pub type TwoFormTerms = &'static [(i64, usize, usize)];

/// Generator labels of the `CP² × S³` coframe: `α¹…α⁴, β¹…β³, γ¹…γ⁴`.
pub const CP2XS3_LABELS: [&str; 11] = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "g1", "g2", "g3", "g4"];

const A1: usize = 0;
const A2: usize = 1;
const A3: usize = 2;
const A4: usize = 3;
const B1: usize = 4;
const B2: usize = 5;
const B3: usize = 6;
const G1: usize = 7;
const G2: usize = 8;
const G3: usize = 9;
const G4: usize = 10;

/// Structure equations of `SU₃/U₂ × SU₂` on the coframe
/// `(α, β, γ)` with `γ` dual to `u₂`. This is the consistent table
/// (`d² = 0`).
pub const CP2XS3_TABLE: [TwoFormTerms; 11] = [
    &[(-1, A2, G3), (-3, A3, G1), (1, A3, G2), (-1, A4, G4)],
    &[(1, A1, G3), (-1, A3, G4), (-3, A4, G1), (-1, A4, G2)],
    &[(3, A1, G1), (-1, A1, G2), (1, A2, G4), (-1, A4, G3)],
    &[(1, A1, G4), (3, A2, G1), (1, A2, G2), (1, A3, G3)],
    &[(-1, B2, B3)],
    &[(-1, B3, B1)],
    &[(-1, B1, B2)],
    &[(-1, A1, A3), (-1, A2, A4)],
    &[(1, A1, A3), (-1, A2, A4), (-2, G3, G4)],
    &[(-1, A1, A2), (-1, A3, A4), (-2, G4, G2)],
    &[(-1, A1, A4), (-1, A2, A3), (-2, G2, G3)],
];

/// The same table as usually printed, with three differing terms
/// (in `dα²`, `dα³`, `dα⁴`); it fails `d² = 0`.
pub const CP2XS3_TABLE_AS_PRINTED: [TwoFormTerms; 11] = [
    &[(-1, A2, G3), (-3, A3, G1), (1, A3, G2), (-1, A4, G4)],
    &[(1, A1, G3), (-1, A3, G4), (-3, A1, G1), (-1, A1, G2)],
    &[(3, A1, G1), (-1, A1, G2), (1, A2, G4), (-1, A4, G2)],
    &[(1, A1, G4), (3, A2, G1), (1, A2, G2), (-1, A3, G3)],
    &[(-1, B2, B3)],
    &[(-1, B3, B1)],
    &[(-1, B1, B2)],
    &[(-1, A1, A3), (-1, A2, A4)],
    &[(1, A1, A3), (-1, A2, A4), (-2, G3, G4)],
    &[(-1, A1, A2), (-1, A3, A4), (-2, G4, G2)],
    &[(-1, A1, A4), (-1, A2, A3), (-2, G2, G3)],
];

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| (*s).into()).collect()
}

/// A coframe DGA from term tables, without validating `d² = 0`.
pub fn dga_from_table<S: Scalar>(names: &[&str], table: &[TwoFormTerms]) -> Result<CoframeDGA<S>> {
    let frame = Frame::euclidean(names.len());
    let mut d = Vec::with_capacity(table.len());
    for terms in table {
        let mut f = KForm::zero(frame, 2);
        for &(c, i, j) in terms.iter() {
            f.add_indexed(&[i, j], S::from_i64(c))?;
        }
        d.push(f);
    }
    CoframeDGA::new(labels(names), d)
}

pub fn cp2xs3_dga<S: Scalar>() -> CoframeDGA<S> {
    dga_from_table(&CP2XS3_LABELS, &CP2XS3_TABLE).expect("static table")
}

pub fn cp2xs3_dga_as_printed<S: Scalar>() -> CoframeDGA<S> {
    dga_from_table(&CP2XS3_LABELS, &CP2XS3_TABLE_AS_PRINTED).expect("static table")
}

/// `CP² × S³` with `h = u₂` spanned by the `γ` duals; `m` is `(α, β)`.
pub fn cp2xs3_space<S: Scalar>(tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    cp2xs3_dga::<S>().reductive_space(&[G1, G2, G3, G4], tol)
}

/// `a Σ αⁱ⊗αⁱ + Σ cᵢ βⁱ⊗βⁱ`.
pub fn cp2xs3_metric<S: Scalar>(a: S, c: [S; 3]) -> InvariantMetric<S> {
    let [c1, c2, c3] = c;
    InvariantMetric::diagonal(&[a.clone(), a.clone(), a.clone(), a, c1, c2, c3])
}

/// Kähler form `ω = α̃¹³ + α̃²⁴` on the orthonormal coframe of `m`.
pub fn cp2xs3_kahler<S: Scalar>() -> KForm<S> {
    let frame = Frame::euclidean(7);
    let mut w = KForm::zero(frame, 2);
    w.add_indexed(&[0, 2], S::one()).expect("in range");
    w.add_indexed(&[1, 3], S::one()).expect("in range");
    w
}

/// `vol₃ = β̃¹²³` on the orthonormal coframe.
pub fn cp2xs3_vol3<S: Scalar>() -> KForm<S> {
    KForm::basis(Frame::euclidean(7), &[4, 5, 6]).expect("in range")
}

/// `ω ∧ β̃ⁱ` for `i = 0, 1, 2`.
pub fn cp2xs3_omega_theta<S: Scalar>(i: usize) -> KForm<S> {
    let beta = KForm::basis(Frame::euclidean(7), &[4 + i]).expect("in range");
    crate::exterior::wedge(&cp2xs3_kahler(), &beta).expect("same frame")
}

/// `SU₂ × T⁴` with `dωᵅ = ωᵝ∧ωᵞ` cyclically and closed `ρ¹…ρ⁴`.
pub fn s3xt4_space<S: Scalar>(tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    const TABLE: [TwoFormTerms; 7] = [&[(1, 1, 2)], &[(1, 2, 0)], &[(1, 0, 1)], &[], &[], &[], &[]];
    let dga = dga_from_table::<S>(&["w1", "w2", "w3", "r1", "r2", "r3", "r4"], &TABLE)?;
    ReductiveSpace::from_adapted(dga.to_lie(tol)?, 0, tol)
}

/// Unit metric with orthonormal coframe `λᵅωᵅ`, `λ ∈ {±1}³`.
pub fn s3xt4_metric<S: Scalar>(lambda: [i8; 3]) -> Result<InvariantMetric<S>> {
    InvariantMetric::identity(7).with_signs(vec![lambda[0], lambda[1], lambda[2], 1, 1, 1, 1])
}

/// `ρ¹∧ρ² ± ρ³∧ρ⁴`: self-dual for `+`, anti-self-dual for `−` on `T⁴`.
pub fn s3xt4_sigma<S: Scalar>(self_dual: bool) -> KForm<S> {
    let frame = Frame::euclidean(7);
    let mut s = KForm::zero(frame, 2);
    s.add_indexed(&[3, 4], S::one()).expect("in range");
    s.add_indexed(&[5, 6], if self_dual { S::one() } else { -S::one() }).expect("in range");
    s
}

/// Flat `T⁷`.
pub fn torus7<S: Scalar>(tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    ReductiveSpace::from_adapted(LieAlgebraData::abelian(7), 0, tol)
}

/// Coordinates of an antisymmetric `n×n` matrix in the basis `E_ij − E_ji`.
pub fn so_coordinates<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    let n = m.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(m[(i, j)].clone());
        }
    }
    out
}

/// `g₂ ⊂ so₇` as the stabilizer of the standard 3-form, in `so₇` coordinates.
pub fn g2_in_so7<S: Scalar>(tol: &Tolerance) -> Result<Vec<Vec<S>>> {
    let omega = g2::canonical_g2_form::<S>(Frame::euclidean(7))?;
    Ok(g2::stabilizer_in_so(&omega, tol)?.iter().map(so_coordinates).collect())
}

/// Which complement of `g₂` to use for `SO₇/G₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Complement {
    /// Killing-orthogonal complement from the split; the metric is `−½ tr`.
    Killing,
    /// `Aᵢ = eᵢ⌟ω` as antisymmetric matrices, with unit Gram matrix.
    Contraction,
}

/// `SO₇/G₂` and an invariant metric on it.
pub fn so7_over_g2<S: Scalar>(complement: G2Complement, tol: &Tolerance) -> Result<(ReductiveSpace<S>, InvariantMetric<S>)> {
    let g = so::<S>(7)?;
    let h = g2_in_so7::<S>(tol)?;
    match complement {
        G2Complement::Killing => {
            let space = reductive_split(&g, &h, Bilinear::Killing, tol)?;
            let m = space.m_basis();
            let gram = Matrix::from_fn(m.len(), m.len(), |a, b| crate::linalg::dot(&m[a], &m[b]));
            Ok((space, InvariantMetric::from_gram(gram)))
        }
        G2Complement::Contraction => {
            let omega = g2::canonical_g2_form::<S>(Frame::euclidean(7))?;
            let m = (0..7)
                .map(|i| {
                    let a = Matrix::from_fn(7, 7, |j, k| if j == k { S::zero() } else { omega.coeff(&[i, j, k]) });
                    so_coordinates(&a)
                })
                .collect();
            let space = ReductiveSpace::new(g, h, m, tol)?;
            Ok((space, InvariantMetric::identity(7)))
        }
    }
}

/// The invariant 3-form `e¹²⁷ + …` of `SO₇/G₂` in the contraction basis.
pub fn so7_over_g2_form<S: Scalar>() -> KForm<S> {
    g2::canonical_g2_form(Frame::euclidean(7)).expect("seven dimensions")
}

/// `H³ × S⁴` model: the solvable algebra `[Y₁, Yⱼ] = Yⱼ` with Gram `12·I`
/// (`Ric = −⅙g`) next to `SO₅/SO₄` with nine times the unit-sphere metric
/// (`Ric = ⅓g`). `m` is `(Y₁, Y₂, Y₃, L₁₂, …, L₁₅)`.
pub fn hyperbolic_times_sphere<S: Scalar>(tol: &Tolerance) -> Result<(ReductiveSpace<S>, InvariantMetric<S>)> {
    let hyp = crate::homogeneous::algebras::hyperbolic(3, S::one());
    let g = hyp.direct_sum(&so::<S>(5)?);
    let n = g.dim();
    let unit = |i: usize| {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        v
    };
    // so₅ basis starts at 3; its first four elements are L₁ⱼ.
    let m = (0..7).map(unit).collect();
    let h = (7..n).map(unit).collect();
    let space = ReductiveSpace::new(g, h, m, tol)?;
    let mut diag = vec![S::from_i64(12); 3];
    diag.extend(vec![S::from_i64(9); 4]);
    Ok((space, InvariantMetric::diagonal(&diag)))
}

/// `vol_Q = ẽ¹²³` on the hyperbolic factor.
pub fn hyperbolic_volume<S: Scalar>() -> KForm<S> {
    KForm::basis(Frame::euclidean(7), &[0, 1, 2]).expect("in range")
}

fn embed7<S: Scalar>(block: &Matrix<S>, offset: usize) -> Matrix<S> {
    let mut out = Matrix::zeros(7, 7);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out[(offset + i, offset + j)] = block[(i, j)].clone();
        }
    }
    out
}

/// `so₃` acting as `V³ + V³ + R`: `diag(A, A, 0)`, in `so₇` coordinates.
pub fn so3_diagonal_pair<S: Scalar>() -> Vec<Vec<S>> {
    so_generators::<S>(3)
        .iter()
        .map(|a| so_coordinates(&embed7(a, 0).add(&embed7(a, 3))))
        .collect()
}

/// `so₃` acting irreducibly on `R⁷` (harmonic cubics), inside `so(Q)` for the
/// invariant Fischer form `Q`. Returns the ambient algebra and `h`.
pub fn so3_irreducible<S: Scalar>(tol: &Tolerance) -> Result<(LieAlgebraData<S>, Vec<Vec<S>>)> {
    let (gens, q) = so3_harmonic_cubics::<S>(tol);
    let g = so_q(&q, tol)?;
    // X = Q⁻¹K with K = QX antisymmetric.
    let h = gens.iter().map(|x| so_coordinates(&q.mul(x))).collect();
    Ok((g, h))
}

/// `su₂` acting as `V⁴ + 3R` by left quaternion multiplication on the first
/// four coordinates, in `so₇` coordinates.
pub fn su2_quaternionic<S: Scalar>() -> Vec<Vec<S>> {
    [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        .iter()
        .map(|&(w, x, y, z)| so_coordinates(&embed7(&quaternion_left::<S>(w, x, y, z), 0)))
        .collect()
}

/// `Sp₂/Sp₁` with `h = diag(0, q)`; the isotropy module is `V⁴ + 3R`.
pub fn sp2_over_sp1<S: Scalar>(tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    let g = sp2::<S>()?;
    let unit = |i: usize| g.basis_vector(i);
    let h = [3, 4, 5].iter().map(|&i| unit(i)).collect();
    let m = [0, 1, 2, 6, 7, 8, 9].iter().map(|&i| unit(i)).collect();
    ReductiveSpace::new(g.clone(), h, m, tol)
}

/// `(su₃ ⊕ R²)/so₃` with `so₃ ⊂ su₃` real; the isotropy module is `V⁵ + 2R`.
pub fn su3r2_over_so3<S: Scalar>(tol: &Tolerance) -> Result<ReductiveSpace<S>> {
    let g = su3::<S>()?.direct_sum(&LieAlgebraData::abelian(2));
    let h = (0..3).map(|i| g.basis_vector(i)).collect();
    let m = (3..10).map(|i| g.basis_vector(i)).collect();
    ReductiveSpace::new(g, h, m, tol)
}
