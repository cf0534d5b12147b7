//! Projective covers and minimal projective resolutions.

use crate::error::Result;
use crate::label::Indecomposable;
use crate::linalg::{Echelon, Matrix};
use crate::modules::{build_p, irreducible, QMod, Sign};

use super::hom::hom_space;
use super::structure::{kernel, radical};

/// The projective indecomposables, each with the index of a top generator.
fn projective_indecomposables(p: u32) -> Vec<(Indecomposable, QMod)> {
    let mut out = Vec::new();
    for s in 1..p {
        for a in Sign::both() {
            out.push((Indecomposable::P { a, s }, build_p(p, a, s).expect("valid")));
        }
    }
    for a in Sign::both() {
        out.push((Indecomposable::X { a, s: p }, irreducible(p, a, p).expect("valid")));
    }
    out
}

/// A projective cover `π: P → m`: the summands of `P`, `P` itself and `π`.
pub fn projective_cover(m: &QMod) -> Result<(Vec<Indecomposable>, QMod, Matrix)> {
    let order = m.order();
    let rad = radical(m)?;
    let mut ech = Echelon::new(order, m.dim());
    for j in 0..rad.cols {
        ech.insert_dense(&rad.col(j));
    }
    let mut labels = Vec::new();
    let mut mods = Vec::new();
    let mut cover = Matrix::zeros(order, m.dim(), 0);
    for (label, q) in projective_indecomposables(m.p) {
        if ech.rank() == m.dim() {
            break;
        }
        for phi in hom_space(&q, m)? {
            if ech.insert_dense(&phi.col(0)).is_some() {
                labels.push(label.clone());
                mods.push(q.clone());
                cover = cover.hstack(&phi);
            }
        }
    }
    Ok((labels, QMod::direct_sum_many(m.p, &mods), cover))
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: QMod,
    /// Summands of `P_n`.
    pub terms: Vec<Vec<Indecomposable>>,
    pub term_modules: Vec<QMod>,
    /// `ε: P_0 → module`.
    pub augmentation: Matrix,
    /// `differentials[n - 1] = ∂_n : P_n → P_{n-1}`.
    pub differentials: Vec<Matrix>,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂_n` for `n ≥ 1`, and `ε` for `n = 0`.
    pub fn boundary(&self, n: usize) -> &Matrix {
        if n == 0 {
            &self.augmentation
        } else {
            &self.differentials[n - 1]
        }
    }

    /// Summand counts of each term.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// `∂∂ = 0` everywhere, `ε` onto, and `im ∂_{n+1} = ker ∂_n` up to the
    /// second-to-last term.
    pub fn is_exact(&self) -> bool {
        let ranks: Vec<usize> = (0..self.len()).map(|n| self.boundary(n).rank()).collect();
        if ranks.first().copied().unwrap_or(0) != self.module.dim() {
            return false;
        }
        for n in 1..self.len() {
            if !self.boundary(n - 1).mul(self.boundary(n)).is_zero() {
                return false;
            }
            if ranks[n - 1] + ranks[n] != self.term_modules[n - 1].dim() {
                return false;
            }
        }
        true
    }
}

/// The first `len` terms `P_0, …, P_{len-1}` of a minimal projective resolution.
pub fn minimal_resolution(m: &QMod, len: usize) -> Result<Resolution> {
    let order = m.order();
    let mut out = Resolution {
        module: m.clone(),
        terms: Vec::new(),
        term_modules: Vec::new(),
        augmentation: Matrix::zeros(order, m.dim(), 0),
        differentials: Vec::new(),
    };
    // Current syzygy, with its embedding into the previous term.
    let mut syz = m.clone();
    let mut embed = Matrix::identity(order, m.dim());
    for n in 0..len {
        let (labels, pn, cover) = projective_cover(&syz)?;
        let d = embed.mul(&cover);
        if n == 0 {
            out.augmentation = d.clone();
        } else {
            out.differentials.push(d.clone());
        }
        let k = kernel(&pn, &d);
        syz = pn.restrict(&k)?;
        embed = k;
        out.terms.push(labels);
        out.term_modules.push(pn);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_of_irreducible_grows_linearly() {
        let x = irreducible(3, Sign::Minus, 1).unwrap();
        let res = minimal_resolution(&x, 4).unwrap();
        assert_eq!(res.multiplicities(), vec![1, 2, 3, 4]);
        assert!(res.is_exact());
        assert!(res.terms[1].iter().all(|t| *t == Indecomposable::P { a: Sign::Plus, s: 2 }));
    }

    #[test]
    fn projective_has_trivial_resolution() {
        let pm = build_p(2, Sign::Plus, 1).unwrap();
        let res = minimal_resolution(&pm, 3).unwrap();
        assert_eq!(res.multiplicities(), vec![1, 0, 0]);
        assert!(res.is_exact());
    }
}
