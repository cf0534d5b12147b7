//! The functors between Kronecker representations and the modules with top
//! `X^a_s` and socle `X^{-a}_{p-s}`.
//!
//! `F(N) = (Hom(M^a_s(2), N) ⇉ Hom(X^{-a}_{p-s}, N))`, the two arrows given by
//! precomposition with the inclusions of the `F`-glued and `E`-glued socle
//! copies of `M^a_s(2)`. `G` is `build_glued`.

use crate::error::{Error, Result};
use crate::kronecker::QuiverRep;
use crate::linalg::Matrix;
use crate::modules::{build_glued, build_m2, irreducible, QMod, Sign};

use super::hom::hom_space;

#[derive(Clone, Debug)]
pub struct FunctorData {
    pub rep: QuiverRep,
    /// Basis of `V0`, maps `M^a_s(2) → N`.
    pub phis: Vec<Matrix>,
    /// Basis of `V1`, maps `X^{-a}_{p-s} → N`.
    pub psis: Vec<Matrix>,
}

pub fn functor_f(n: &QMod, a: Sign, s: u32) -> Result<FunctorData> {
    let p = n.p;
    let order = n.order();
    let m2 = build_m2(p, a, s)?;
    let x = irreducible(p, a.neg(), p - s)?;
    let phis = hom_space(&m2, n)?;
    let psis = hom_space(&x, n)?;
    let (su, tu) = (s as usize, (p - s) as usize);
    let (x0, y0) = (su, su + tu);
    let heads: Vec<Vec<_>> = psis.iter().map(|psi| psi.col(0)).collect();
    let head = Matrix::from_cols(order, n.dim(), &heads);
    let coords = |v: Vec<_>| -> Result<Vec<_>> {
        let b = Matrix::from_cols(order, n.dim(), &[v]);
        head.solve(&b)
            .map(|c| c.col(0))
            .ok_or_else(|| Error::Classification("socle image outside Hom(X, N)".into()))
    };
    let (d0, d1) = (phis.len(), psis.len());
    let mut r = Matrix::zeros(order, d1, d0);
    let mut rbar = Matrix::zeros(order, d1, d0);
    for (j, phi) in phis.iter().enumerate() {
        for (i, c) in coords(phi.col(y0))?.into_iter().enumerate() {
            r.set(i, j, c);
        }
        for (i, c) in coords(phi.col(x0))?.into_iter().enumerate() {
            rbar.set(i, j, c);
        }
    }
    Ok(FunctorData {
        rep: QuiverRep::new(r, rbar)?,
        phis,
        psis,
    })
}

pub fn functor_g(p: u32, a: Sign, s: u32, rep: &QuiverRep) -> Result<QMod> {
    build_glued(p, a, s, rep)
}

/// The natural map `G(F(N)) → N`, sending the `j`-th top copy through
/// `phis[j]` and the `i`-th socle copy through `psis[i]`.
pub fn counit(n: &QMod, s: u32, data: &FunctorData) -> Matrix {
    let (su, tu) = (s as usize, (n.p - s) as usize);
    let (d0, d1) = (data.phis.len(), data.psis.len());
    let mut out = Matrix::zeros(n.order(), n.dim(), d0 * su + d1 * tu);
    for (j, phi) in data.phis.iter().enumerate() {
        out.paste(0, j * su, &phi.select_cols(&(0..su).collect::<Vec<_>>()));
    }
    for (i, psi) in data.psis.iter().enumerate() {
        out.paste(0, d0 * su + i * tu, psi);
    }
    out
}

/// `G` on morphisms: `(t0, t1)` acting on top and socle copies.
pub fn glued_map(p: u32, s: u32, t0: &Matrix, t1: &Matrix) -> Matrix {
    let (su, tu) = (s as usize, (p - s) as usize);
    let order = t0.order;
    let id_s = Matrix::identity(order, su);
    let id_t = Matrix::identity(order, tu);
    Matrix::block_diag(order, &[&t0.kron(&id_s), &t1.kron(&id_t)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::conjugate;
    use crate::modules::Cp1;
    use crate::cyclotomic::CycNum;

    #[test]
    fn f_of_g_is_isomorphic_to_identity() {
        let z = Cp1::affine(CycNum::parse_expr("q-1", 6).unwrap());
        let rep = QuiverRep::rho(6, 1)
            .direct_sum(&QuiverRep::regular(6, 2, &z))
            .direct_sum(&QuiverRep::rho_bar(6, 0));
        for (a, s) in [(Sign::Plus, 1), (Sign::Minus, 2)] {
            let n = functor_g(3, a, s, &rep).unwrap();
            let data = functor_f(&n, a, s).unwrap();
            assert!(conjugate(&data.rep, &rep).is_some());
            let g = functor_g(3, a, s, &data.rep).unwrap();
            let theta = counit(&n, s, &data);
            assert!(g.is_hom_to(&n, &theta));
            assert!(theta.is_invertible());
        }
    }

    #[test]
    fn glued_map_is_a_homomorphism() {
        let z = Cp1::affine(CycNum::parse_expr("2", 6).unwrap());
        let a = QuiverRep::regular(6, 2, &z);
        let t0 = Matrix::from_ints(6, &[&[1, 1], &[0, 1]]);
        let b = a.transform(&t0, &t0).unwrap();
        let ga = functor_g(3, Sign::Plus, 2, &a).unwrap();
        let gb = functor_g(3, Sign::Plus, 2, &b).unwrap();
        assert!(ga.is_hom_to(&gb, &glued_map(3, 2, &t0, &t0)));
    }
}
