//! Representations of the Kronecker quiver `V0 ⇉ V1` (matrix pencils),
//! their classification, and the functors to and from module blocks.

mod classify;

pub use classify::{
    classify, conjugate, field_roots, indecomposable_by_endomorphisms, morphism_space, KronKind, QuiverDecomp,
};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::Cp1;

/// A pair of `d1 × d0` matrices `r, r̄ : V0 → V1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub d0: usize,
    pub d1: usize,
    pub r: Matrix,
    pub rbar: Matrix,
}

impl QuiverRep {
    pub fn new(r: Matrix, rbar: Matrix) -> Result<QuiverRep> {
        if (r.rows, r.cols) != (rbar.rows, rbar.cols) {
            return Err(Error::Invalid(format!(
                "arrow shapes differ: {}x{} vs {}x{}",
                r.rows, r.cols, rbar.rows, rbar.cols
            )));
        }
        if r.order != rbar.order {
            return Err(Error::OrderMismatch(r.order, rbar.order));
        }
        Ok(QuiverRep {
            d0: r.cols,
            d1: r.rows,
            r,
            rbar,
        })
    }

    pub fn order(&self) -> u32 {
        self.r.order
    }

    pub fn zero(order: u32, d0: usize, d1: usize) -> QuiverRep {
        QuiverRep {
            d0,
            d1,
            r: Matrix::zeros(order, d1, d0),
            rbar: Matrix::zeros(order, d1, d0),
        }
    }

    /// `ρ_n`: dims `(n+1, n)`, `R = [I | 0]`, `R̄ = [0 | I]`.
    pub fn rho(order: u32, n: usize) -> QuiverRep {
        let mut r = Matrix::zeros(order, n, n + 1);
        let mut rbar = Matrix::zeros(order, n, n + 1);
        for i in 0..n {
            r.set(i, i, CycNum::one(order));
            rbar.set(i, i + 1, CycNum::one(order));
        }
        QuiverRep { d0: n + 1, d1: n, r, rbar }
    }

    /// `ρ̄_n`: dims `(n, n+1)`, the transposed shapes.
    pub fn rho_bar(order: u32, n: usize) -> QuiverRep {
        let t = QuiverRep::rho(order, n);
        QuiverRep {
            d0: n,
            d1: n + 1,
            r: t.r.transpose(),
            rbar: t.rbar.transpose(),
        }
    }

    /// Regular indecomposable of size `n` at `z`: for `z = 1:λ`,
    /// `r = I`, `r̄ = J_n(λ)`; for `z = 0:1`, `r = J_n(0)`, `r̄ = I`.
    pub fn regular(order: u32, n: usize, z: &Cp1) -> QuiverRep {
        let one = CycNum::one(order);
        let mut jordan = Matrix::zeros(order, n, n);
        let lam = if z.z1.is_zero() { CycNum::zero(order) } else { z.z2.clone() };
        for i in 0..n {
            jordan.set(i, i, lam.clone());
            if i + 1 < n {
                jordan.set(i, i + 1, one.clone());
            }
        }
        let id = Matrix::identity(order, n);
        let (r, rbar) = if z.z1.is_zero() { (jordan, id) } else { (id, jordan) };
        QuiverRep { d0: n, d1: n, r, rbar }
    }

    pub fn direct_sum(&self, o: &QuiverRep) -> QuiverRep {
        let order = self.order();
        QuiverRep {
            d0: self.d0 + o.d0,
            d1: self.d1 + o.d1,
            r: Matrix::block_diag(order, &[&self.r, &o.r]),
            rbar: Matrix::block_diag(order, &[&self.rbar, &o.rbar]),
        }
    }

    pub fn direct_sum_many(order: u32, reps: &[QuiverRep]) -> QuiverRep {
        reps.iter()
            .fold(QuiverRep::zero(order, 0, 0), |acc, r| acc.direct_sum(r))
    }

    /// Whether `(t0, t1)` is a morphism `self → o`: `t1 r = r' t0`, same for `r̄`.
    pub fn is_morphism(&self, o: &QuiverRep, t0: &Matrix, t1: &Matrix) -> bool {
        t1.mul(&self.r) == o.r.mul(t0) && t1.mul(&self.rbar) == o.rbar.mul(t0)
    }

    /// `(g1 r g0^{-1}, g1 r̄ g0^{-1})`.
    pub fn transform(&self, g0: &Matrix, g1: &Matrix) -> Result<QuiverRep> {
        let g0i = g0
            .inverse()
            .ok_or_else(|| Error::Invalid("base change at vertex 0 is singular".into()))?;
        QuiverRep::new(g1.mul(&self.r).mul(&g0i), g1.mul(&self.rbar).mul(&g0i))
    }

    pub fn from_json(s: &str) -> Result<QuiverRep> {
        let r: QuiverRepRepr = serde_json::from_str(s)?;
        QuiverRep::from_repr(r)
    }

    fn from_repr(r: QuiverRepRepr) -> Result<QuiverRep> {
        if r.d0 > 64 || r.d1 > 64 {
            return Err(Error::OutOfRange("quiver dimensions above 64".into()));
        }
        let order = r
            .r
            .iter()
            .chain(&r.rbar)
            .flatten()
            .map(CycNum::order)
            .next()
            .or(r.order)
            .unwrap_or(4);
        let to_matrix = |rows: Vec<Vec<CycNum>>, name: &str| -> Result<Matrix> {
            if rows.len() != r.d1 || rows.iter().any(|row| row.len() != r.d0) {
                return Err(Error::Invalid(format!(
                    "{name} must be {} rows of {} entries",
                    r.d1, r.d0
                )));
            }
            if let Some(bad) = rows.iter().flatten().find(|c| c.order() != order) {
                return Err(Error::OrderMismatch(bad.order(), order));
            }
            let mut m = Matrix::zeros(order, r.d1, r.d0);
            for (i, row) in rows.into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            Ok(m)
        };
        let rm = to_matrix(r.r, "r")?;
        let rb = to_matrix(r.rbar, "rbar")?;
        Ok(QuiverRep {
            d0: r.d0,
            d1: r.d1,
            r: rm,
            rbar: rb,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverRepRepr {
    d0: usize,
    d1: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    r: Vec<Vec<CycNum>>,
    rbar: Vec<Vec<CycNum>>,
}

impl Serialize for QuiverRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |m: &Matrix| (0..m.rows).map(|i| m.row(i).to_vec()).collect();
        QuiverRepRepr {
            d0: self.d0,
            d1: self.d1,
            order: Some(self.order()),
            r: rows(&self.r),
            rbar: rows(&self.rbar),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuiverRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        QuiverRep::from_repr(QuiverRepRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}
