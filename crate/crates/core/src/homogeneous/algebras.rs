//! Matrix realizations of the Lie algebras used by the built-in models.

use alloc::vec;
use alloc::vec::Vec;

use super::lie::{lie_from_matrices, numbered_labels, LieAlgebraData};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// `E_ij − E_ji` for `i < j`, in lexicographic order.
pub fn so_generators<S: Scalar>(n: usize) -> Vec<Matrix<S>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Matrix::unit(n, i, j).sub(&Matrix::unit(n, j, i)));
        }
    }
    out
}

fn so_labels(n: usize) -> Vec<alloc::string::String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(alloc::format!("L{i}_{j}"));
        }
    }
    out
}

/// `so(n)` realized by antisymmetric matrices.
pub fn so<S: Scalar>(n: usize) -> Result<LieAlgebraData<S>> {
    lie_from_matrices(so_labels(n), so_generators(n), &Tolerance::default())
}

/// `so(Q) = {X : XᵀQ + QX = 0}` for a symmetric positive `Q`, spanned by
/// `Q⁻¹(E_ij − E_ji)`.
pub fn so_q<S: Scalar>(q: &Matrix<S>, tol: &Tolerance) -> Result<LieAlgebraData<S>> {
    let n = q.rows();
    let q_inv = q.inverse(tol).ok_or_else(|| crate::Error::Degenerate("Q is singular".into()))?;
    let mats = so_generators::<S>(n).iter().map(|k| q_inv.mul(k)).collect();
    lie_from_matrices(so_labels(n), mats, tol)
}

/// `su(2)` with `[X₁, X₂] = X₃` and cyclic permutations.
pub fn su2<S: Scalar>() -> LieAlgebraData<S> {
    let eps = |i: usize, j: usize, k: usize| -> S {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => S::one(),
            (1, 0, 2) | (2, 1, 0) | (0, 2, 1) => -S::one(),
            _ => S::zero(),
        }
    };
    LieAlgebraData::from_fn(numbered_labels("X", 3), eps, &Tolerance::default()).expect("su2 is a Lie algebra")
}

/// Left multiplication by the quaternion `w + xi + yj + zk` on `R⁴ = H`.
pub fn quaternion_left<S: Scalar>(w: i64, x: i64, y: i64, z: i64) -> Matrix<S> {
    let rows = [[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]];
    Matrix::from_fn(4, 4, |i, j| S::from_i64(rows[i][j]))
}

/// Right multiplication by the quaternion `w + xi + yj + zk` on `R⁴ = H`.
pub fn quaternion_right<S: Scalar>(w: i64, x: i64, y: i64, z: i64) -> Matrix<S> {
    let rows = [[w, -x, -y, -z], [x, w, z, -y], [y, -z, w, x], [z, y, -x, w]];
    Matrix::from_fn(4, 4, |i, j| S::from_i64(rows[i][j]))
}

fn embed<S: Scalar>(size: usize, blocks: &[(usize, usize, Matrix<S>)]) -> Matrix<S> {
    let mut out = Matrix::zeros(size, size);
    for (r, c, b) in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(r + i, c + j)] = b[(i, j)].clone();
            }
        }
    }
    out
}

/// `sp(2)`: quaternionic anti-Hermitian `2×2` matrices acting on `H² = R⁸`.
///
/// Basis order: `diag(q, 0)` for `q = i, j, k`; `diag(0, q)` for
/// `q = i, j, k`; then the off-diagonal `[[0, b], [−b̄, 0]]` for
/// `b = 1, i, j, k`.
pub fn sp2<S: Scalar>() -> Result<LieAlgebraData<S>> {
    let imag = [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)];
    let mut mats = Vec::new();
    for &(w, x, y, z) in &imag {
        mats.push(embed(8, &[(0, 0, quaternion_left(w, x, y, z))]));
    }
    for &(w, x, y, z) in &imag {
        mats.push(embed(8, &[(4, 4, quaternion_left(w, x, y, z))]));
    }
    for &(w, x, y, z) in &[(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)] {
        let b = quaternion_left::<S>(w, x, y, z);
        let minus_bbar = quaternion_left::<S>(-w, x, y, z);
        mats.push(embed(8, &[(0, 4, b), (4, 0, minus_bbar)]));
    }
    let labels = ["A1", "A2", "A3", "D1", "D2", "D3", "B0", "B1", "B2", "B3"].iter().map(|s| (*s).into()).collect();
    lie_from_matrices(labels, mats, &Tolerance::default())
}

/// `su(3)` as real `6×6` matrices `[[A, −B], [B, A]]` for `A + iB`.
///
/// Basis order: the three real antisymmetric generators (spanning `so(3)`),
/// then `i(E_kl + E_lk)` for `k < l`, then `i(E₁₁ − E₂₂)` and
/// `i(E₂₂ − E₃₃)`.
pub fn su3<S: Scalar>() -> Result<LieAlgebraData<S>> {
    let complex = |a: Matrix<S>, b: Matrix<S>| embed(6, &[(0, 0, a.clone()), (0, 3, b.scale(&-S::one())), (3, 0, b), (3, 3, a)]);
    let mut mats = Vec::new();
    for k in so_generators::<S>(3) {
        mats.push(complex(k, Matrix::zeros(3, 3)));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let sym = Matrix::unit(3, i, j).add(&Matrix::unit(3, j, i));
            mats.push(complex(Matrix::zeros(3, 3), sym));
        }
    }
    for i in 0..2 {
        let d = Matrix::unit(3, i, i).sub(&Matrix::unit(3, i + 1, i + 1));
        mats.push(complex(Matrix::zeros(3, 3), d));
    }
    let labels = ["R12", "R13", "R23", "S12", "S13", "S23", "H1", "H2"].iter().map(|s| (*s).into()).collect();
    lie_from_matrices(labels, mats, &Tolerance::default())
}

/// The solvable algebra `[X₁, Xⱼ] = k Xⱼ` (`j ≥ 2`) of hyperbolic space.
pub fn hyperbolic<S: Scalar>(n: usize, k: S) -> LieAlgebraData<S> {
    let c = move |i: usize, j: usize, l: usize| -> S {
        if i == 0 && j > 0 && l == j {
            k.clone()
        } else if j == 0 && i > 0 && l == i {
            -k.clone()
        } else {
            S::zero()
        }
    };
    LieAlgebraData::from_fn(numbered_labels("Y", n), c, &Tolerance::default()).expect("solvable algebra")
}

/// The irreducible seven-dimensional representation of `so(3)` on harmonic
/// cubic polynomials, with the invariant Fischer Gram matrix.
///
/// Returns the three generators `L_x, L_y, L_z` acting on a rational basis
/// of harmonic cubics, and `Q` with `LᵀQ + QL = 0`.
pub fn so3_harmonic_cubics<S: Scalar>(tol: &Tolerance) -> (Vec<Matrix<S>>, Matrix<S>) {
    // Cubic monomials x^a y^b z^c.
    let mut monos: Vec<[usize; 3]> = Vec::new();
    for a in (0..=3).rev() {
        for b in (0..=3 - a).rev() {
            monos.push([a, b, 3 - a - b]);
        }
    }
    let index = |e: [usize; 3]| monos.iter().position(|m| *m == e);
    // Laplacian into linear monomials.
    let linear = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut lap = Matrix::<S>::zeros(3, 10);
    for (col, m) in monos.iter().enumerate() {
        for v in 0..3 {
            if m[v] >= 2 {
                let mut t = *m;
                t[v] -= 2;
                let row = linear.iter().position(|l| *l == t).expect("linear monomial");
                lap[(row, col)] = lap[(row, col)].clone() + S::from_i64((m[v] * (m[v] - 1)) as i64);
            }
        }
    }
    let harmonic = lap.nullspace(tol);
    // Operator u ∂_v − v ∂_u on monomials.
    let rotation = |u: usize, v: usize| {
        let mut op = Matrix::<S>::zeros(10, 10);
        for (col, m) in monos.iter().enumerate() {
            if m[v] > 0 {
                let mut t = *m;
                t[v] -= 1;
                t[u] += 1;
                let row = index(t).expect("cubic monomial");
                op[(row, col)] = op[(row, col)].clone() + S::from_i64(m[v] as i64);
            }
            if m[u] > 0 {
                let mut t = *m;
                t[u] -= 1;
                t[v] += 1;
                let row = index(t).expect("cubic monomial");
                op[(row, col)] = op[(row, col)].clone() - S::from_i64(m[u] as i64);
            }
        }
        op
    };
    let h = Matrix::from_columns(&harmonic, 10);
    let restrict = |op: Matrix<S>| {
        let cols: Vec<Vec<S>> = harmonic
            .iter()
            .map(|v| crate::linalg::coordinates(&harmonic, &op.mul_vec(v), tol).expect("harmonic cubics are invariant"))
            .collect();
        Matrix::from_columns(&cols, harmonic.len())
    };
    let gens = vec![restrict(rotation(1, 2)), restrict(rotation(2, 0)), restrict(rotation(0, 1))];
    let fact = |k: usize| (1..=k).product::<usize>() as i64;
    let fischer = Matrix::diagonal(&monos.iter().map(|m| S::from_i64(fact(m[0]) * fact(m[1]) * fact(m[2]))).collect::<Vec<_>>());
    let q = h.transpose().mul(&fischer).mul(&h);
    (gens, q)
}
