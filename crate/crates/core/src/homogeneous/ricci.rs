use alloc::vec::Vec;

use super::reductive::{InvariantMetric, ReductiveSpace};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// Ricci form of an invariant metric on `G/H`, as a matrix in the `m` basis.
///
/// Polarized form of the standard formula for reductive spaces, written for a
/// general Gram matrix `G` so no square roots are taken:
///
/// ```text
/// Ric(x,y) = −½ tr(G⁻¹ A_xᵀ G A_y) − ½ B(x,y)
///            + ¼ tr(G⁻¹ U_x G⁻¹ U_yᵀ) − ½(⟨[Z,x]_m, y⟩ + ⟨[Z,y]_m, x⟩)
/// ```
///
/// with `A_x = ad(x)|_m` projected to `m`, `B` the Killing form of `g`,
/// `(U_x)_ij = ⟨[mᵢ,mⱼ]_m, x⟩` and `⟨Z, w⟩ = tr A_w`.
pub fn ricci<S: Scalar>(space: &ReductiveSpace<S>, metric: &InvariantMetric<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    metric.check(space, tol)?;
    let md = space.m_dim();
    let hd = space.h_dim();
    let gram = metric.gram();
    let g_inv = gram.inverse(tol).ok_or_else(|| Error::Degenerate("metric is singular".into()))?;
    let killing = space.adapted().killing_form();
    let ad: Vec<Matrix<S>> =
        (0..md).map(|x| Matrix::from_fn(md, md, |k, j| space.m_bracket(x, j, k).clone())).collect();
    let u: Vec<Matrix<S>> = (0..md)
        .map(|x| {
            Matrix::from_fn(md, md, |i, j| {
                let mut s = S::zero();
                for c in 0..md {
                    let b = space.m_bracket(i, j, c);
                    if !b.is_zero() {
                        s = s + b.clone() * gram[(c, x)].clone();
                    }
                }
                s
            })
        })
        .collect();
    let z_low: Vec<S> = ad.iter().map(Matrix::trace).collect();
    let z = g_inv.mul_vec(&z_low);
    let ad_z = ad.iter().zip(&z).fold(Matrix::zeros(md, md), |acc, (a, c)| acc.add(&a.scale(c)));
    let z_term = gram.mul(&ad_z);
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);
    let left: Vec<Matrix<S>> = ad.iter().map(|a| g_inv.mul(&a.transpose()).mul(gram)).collect();
    let u_left: Vec<Matrix<S>> = u.iter().map(|m| g_inv.mul(m).mul(&g_inv)).collect();
    let mut out = Matrix::zeros(md, md);
    for x in 0..md {
        for y in x..md {
            let t1 = -half.clone() * left[x].mul(&ad[y]).trace();
            let t2 = -half.clone() * killing[(hd + x, hd + y)].clone();
            let t3 = quarter.clone() * u_left[x].mul(&u[y].transpose()).trace();
            let t4 = -half.clone() * (z_term[(y, x)].clone() + z_term[(x, y)].clone());
            let v = t1 + t2 + t3 + t4;
            out[(x, y)] = v.clone();
            out[(y, x)] = v;
        }
    }
    Ok(out)
}

/// `c` with `Ric = c·g`, if the metric is Einstein.
pub fn einstein_constant<S: Scalar>(ric: &Matrix<S>, gram: &Matrix<S>, tol: &Tolerance) -> Option<S> {
    let n = gram.rows();
    if n == 0 {
        return Some(S::zero());
    }
    let c = ric[(0, 0)].clone() / gram[(0, 0)].clone();
    ric.sub(&gram.scale(&c)).is_negligible(tol).then_some(c).filter(|_| n > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::algebras::{so, su2};
    use crate::homogeneous::reductive::{reductive_split, Bilinear};
    use crate::homogeneous::LieAlgebraData;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn bi_invariant_su2() {
        let tol = Tolerance::default();
        let space = ReductiveSpace::from_adapted(su2::<Q>(), 0, &tol).unwrap();
        let gram = space.adapted().killing_form().scale(&Q::from_i64(-1));
        let metric = InvariantMetric::from_gram(gram.clone());
        let ric = ricci(&space, &metric, &tol).unwrap();
        assert_eq!(einstein_constant(&ric, &gram, &tol), Some(Q::from_ratio(1, 4)));
    }

    #[test]
    fn flat_torus() {
        let tol = Tolerance::default();
        let space = ReductiveSpace::from_adapted(LieAlgebraData::<Q>::abelian(7), 0, &tol).unwrap();
        let ric = ricci(&space, &InvariantMetric::identity(7), &tol).unwrap();
        assert!(ric.is_negligible(&tol));
    }

    #[test]
    fn round_spheres() {
        let tol = Tolerance::default();
        // SO(n+1)/SO(n) with the unit-sphere metric (E_{0j} − E_{j0} orthonormal) has Ric = (n−1)g.
        for n in [3usize, 4, 7] {
            let g = so::<Q>(n + 1).unwrap();
            let h: Vec<Vec<Q>> = (n..g.dim()).map(|i| g.basis_vector(i)).collect();
            let space = reductive_split(&g, &h, Bilinear::Killing, &tol).unwrap();
            assert!(space.is_symmetric(&tol));
            let gram = Matrix::from_fn(n, n, |i, j| {
                let (a, b) = (&space.m_basis()[i], &space.m_basis()[j]);
                crate::linalg::dot(a, b)
            });
            let metric = InvariantMetric::from_gram(gram.clone());
            let ric = ricci(&space, &metric, &tol).unwrap();
            assert_eq!(einstein_constant(&ric, &gram, &tol), Some(Q::from_i64(n as i64 - 1)), "n = {n}");
        }
    }
}
