//! Finite-dimensional modules given by explicit matrices in a K-eigenbasis.
//!
//! Weights are stored as exponents `w` of `q` modulo `2p`, so `K v = q^w v`
//! and the sign `-1 = q^p` is absorbed into the exponent.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, Uq};
use crate::cyclotomic::{qint, CycNum};
use crate::error::{Error, Result};
use crate::kronecker::QuiverRep;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `0` for `+`, `p` for `-`: the exponent shift encoding the sign.
    pub fn shift(self, p: u32) -> i64 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => p as i64,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A point `z1 : z2` of the projective line, kept in canonical form
/// `1 : λ` or `0 : 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cp1 {
    pub z1: CycNum,
    pub z2: CycNum,
}

impl Cp1 {
    pub fn new(z1: CycNum, z2: CycNum) -> Result<Cp1> {
        if z1.order() != z2.order() {
            return Err(Error::OrderMismatch(z1.order(), z2.order()));
        }
        if z1.is_zero() && z2.is_zero() {
            return Err(Error::Invalid("z = 0:0 is not a point of CP^1".into()));
        }
        if z1.is_zero() {
            let o = z1.order();
            return Ok(Cp1 {
                z1: CycNum::zero(o),
                z2: CycNum::one(o),
            });
        }
        let lam = &z2 / &z1;
        Ok(Cp1 {
            z1: CycNum::one(z1.order()),
            z2: lam,
        })
    }

    /// `1 : λ`.
    pub fn affine(lam: CycNum) -> Cp1 {
        Cp1 {
            z1: CycNum::one(lam.order()),
            z2: lam,
        }
    }

    /// `1 : 0`, the Verma direction.
    pub fn verma(order: u32) -> Cp1 {
        Cp1::affine(CycNum::zero(order))
    }

    /// `0 : 1`, the contragredient Verma direction.
    pub fn coverma(order: u32) -> Cp1 {
        Cp1 {
            z1: CycNum::zero(order),
            z2: CycNum::one(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.z1.order()
    }
}

impl fmt::Display for Cp1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.z1, self.z2)
    }
}

/// A module over the restricted quantum group.
#[derive(Clone, PartialEq, Eq)]
pub struct QMod {
    pub p: u32,
    /// `K` acts on basis vector `i` by `q^{weights[i]}`, exponents mod `2p`.
    pub weights: Vec<u32>,
    pub e: Matrix,
    pub f: Matrix,
    pub label: Option<String>,
}

impl fmt::Debug for QMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QMod(p={}, dim={}, label={:?}, weights={:?})",
            self.p,
            self.dim(),
            self.label,
            self.weights
        )
    }
}

fn wmod(p: u32, w: i64) -> u32 {
    w.rem_euclid(2 * p as i64) as u32
}

impl QMod {
    pub fn new(p: u32, weights: Vec<u32>, e: Matrix, f: Matrix) -> QMod {
        QMod {
            p,
            weights,
            e,
            f,
            label: None,
        }
    }

    pub fn zero(p: u32) -> QMod {
        QMod::new(p, Vec::new(), Matrix::zeros(2 * p, 0, 0), Matrix::zeros(2 * p, 0, 0))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> QMod {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> u32 {
        2 * self.p
    }

    pub fn q(&self, n: i64) -> CycNum {
        CycNum::q_pow(self.p, n)
    }

    pub fn k_matrix(&self) -> Matrix {
        let d: Vec<CycNum> = self.weights.iter().map(|&w| self.q(w as i64)).collect();
        Matrix::diag(self.order(), &d)
    }

    pub fn k_inv_matrix(&self) -> Matrix {
        let d: Vec<CycNum> = self.weights.iter().map(|&w| self.q(-(w as i64))).collect();
        Matrix::diag(self.order(), &d)
    }

    /// Matrix of `K^n`.
    pub fn k_pow_matrix(&self, n: i64) -> Matrix {
        let d: Vec<CycNum> = self.weights.iter().map(|&w| self.q(n * w as i64)).collect();
        Matrix::diag(self.order(), &d)
    }

    /// Action matrix of an algebra element.
    pub fn act(&self, x: &AlgElem) -> Matrix {
        assert!(!x.algebra().extended, "extended elements need a k-action");
        let n = self.dim();
        let mut out = Matrix::zeros(self.order(), n, n);
        let mut epow = vec![Matrix::identity(self.order(), n)];
        let mut fpow = vec![Matrix::identity(self.order(), n)];
        for _ in 1..self.p {
            epow.push(epow.last().unwrap().mul(&self.e));
            fpow.push(fpow.last().unwrap().mul(&self.f));
        }
        for ((i, j, l), c) in x.iter() {
            let t = epow[i as usize]
                .mul(&fpow[j as usize])
                .mul(&self.k_pow_matrix(l as i64))
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Action of the Casimir `EF + (q^{-1}K + qK^{-1})/(q - q^{-1})^2`.
    pub fn casimir_matrix(&self) -> Matrix {
        let d = &self.q(1) - &self.q(-1);
        let d2inv = (&d * &d).inv().expect("nonzero");
        let tail: Vec<CycNum> = self
            .weights
            .iter()
            .map(|&w| &(&self.q(w as i64 - 1) + &self.q(1 - w as i64)) * &d2inv)
            .collect();
        self.e
            .mul(&self.f)
            .add(&Matrix::diag(self.order(), &tail))
    }

    /// Checks every defining relation exactly; the error names the first
    /// relation that fails.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.dim();
        let order = self.order();
        for (name, m) in [("E", &self.e), ("F", &self.f)] {
            if (m.rows, m.cols) != (n, n) || m.order != order {
                return Err(format!("{name} has the wrong shape or field"));
            }
        }
        if self.weights.iter().any(|&w| w >= 2 * self.p) {
            return Err("K^{2p} = 1 (weight exponent out of range)".into());
        }
        for i in 0..n {
            for j in 0..n {
                if !self.e.get(i, j).is_zero() && self.weights[i] != wmod(self.p, self.weights[j] as i64 + 2) {
                    return Err(format!("K E K^-1 = q^2 E (entry {i},{j})"));
                }
                if !self.f.get(i, j).is_zero() && self.weights[i] != wmod(self.p, self.weights[j] as i64 - 2) {
                    return Err(format!("K F K^-1 = q^-2 F (entry {i},{j})"));
                }
            }
        }
        if !self.e.pow(self.p).is_zero() {
            return Err("E^p = 0".into());
        }
        if !self.f.pow(self.p).is_zero() {
            return Err("F^p = 0".into());
        }
        let comm = self.e.mul(&self.f).sub(&self.f.mul(&self.e));
        let dinv = (&self.q(1) - &self.q(-1)).inv().expect("nonzero");
        let rhs = self.k_matrix().sub(&self.k_inv_matrix()).scale(&dinv);
        if comm != rhs {
            return Err("[E,F] = (K - K^-1)/(q - q^-1)".into());
        }
        Ok(())
    }

    /// Multiset of `K`-eigenvalues, keyed by exponent of `q`.
    pub fn weight_character(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &w in &self.weights {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    pub fn direct_sum(&self, o: &QMod) -> QMod {
        assert_eq!(self.p, o.p, "p mismatch");
        let mut weights = self.weights.clone();
        weights.extend(&o.weights);
        QMod::new(
            self.p,
            weights,
            Matrix::block_diag(self.order(), &[&self.e, &o.e]),
            Matrix::block_diag(self.order(), &[&self.f, &o.f]),
        )
    }

    pub fn direct_sum_many(p: u32, mods: &[QMod]) -> QMod {
        let order = 2 * p;
        let mut weights = Vec::new();
        for m in mods {
            assert_eq!(m.p, p, "p mismatch");
            weights.extend(&m.weights);
        }
        let es: Vec<&Matrix> = mods.iter().map(|m| &m.e).collect();
        let fs: Vec<&Matrix> = mods.iter().map(|m| &m.f).collect();
        QMod::new(p, weights, Matrix::block_diag(order, &es), Matrix::block_diag(order, &fs))
    }

    /// Tensor product through the coproduct; basis `i ⊗ j` has index `i·dim(o) + j`.
    pub fn tensor(&self, o: &QMod) -> QMod {
        assert_eq!(self.p, o.p, "p mismatch");
        let order = self.order();
        let ia = Matrix::identity(order, self.dim());
        let ib = Matrix::identity(order, o.dim());
        let e = ia.kron(&o.e).add(&self.e.kron(&o.k_matrix()));
        let f = self.k_inv_matrix().kron(&o.f).add(&self.f.kron(&ib));
        let mut weights = Vec::with_capacity(self.dim() * o.dim());
        for &a in &self.weights {
            for &b in &o.weights {
                weights.push(wmod(self.p, a as i64 + b as i64));
            }
        }
        QMod::new(self.p, weights, e, f)
    }

    /// Contragredient module `x·φ = φ ∘ S(x)` on the dual basis.
    pub fn dual(&self) -> QMod {
        let minus = CycNum::from_int(self.order(), -1);
        let e = self.e.mul(&self.k_inv_matrix()).transpose().scale(&minus);
        let f = self.k_matrix().mul(&self.f).transpose().scale(&minus);
        let weights = self.weights.iter().map(|&w| wmod(self.p, -(w as i64))).collect();
        QMod::new(self.p, weights, e, f)
    }

    /// Whether `phi: self → o` commutes with `E`, `F`, `K`.
    pub fn is_hom_to(&self, o: &QMod, phi: &Matrix) -> bool {
        if (phi.rows, phi.cols) != (o.dim(), self.dim()) {
            return false;
        }
        for i in 0..o.dim() {
            for j in 0..self.dim() {
                if !phi.get(i, j).is_zero() && o.weights[i] != self.weights[j] {
                    return false;
                }
            }
        }
        phi.mul(&self.e) == o.e.mul(phi) && phi.mul(&self.f) == o.f.mul(phi)
    }

    /// Weight of a vector that is a `K`-eigenvector, `None` otherwise or if zero.
    pub fn weight_of(&self, v: &[CycNum]) -> Option<u32> {
        let mut w = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match w {
                None => w = Some(self.weights[i]),
                Some(x) if x != self.weights[i] => return None,
                _ => {}
            }
        }
        w
    }

    /// The submodule spanned by the columns of `basis`, which must be weight
    /// vectors spanning an invariant subspace.
    pub fn restrict(&self, basis: &Matrix) -> Result<QMod> {
        let mut weights = Vec::with_capacity(basis.cols);
        for j in 0..basis.cols {
            let w = self
                .weight_of(&basis.col(j))
                .ok_or_else(|| Error::Invalid(format!("column {j} is not a weight vector")))?;
            weights.push(w);
        }
        let e = basis
            .solve(&self.e.mul(basis))
            .ok_or_else(|| Error::Invalid("subspace is not E-invariant".into()))?;
        let f = basis
            .solve(&self.f.mul(basis))
            .ok_or_else(|| Error::Invalid("subspace is not F-invariant".into()))?;
        Ok(QMod::new(self.p, weights, e, f))
    }

    /// Permutes the basis so that new vector `i` is old vector `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> QMod {
        let e = self.e.submatrix(perm, perm);
        let f = self.f.submatrix(perm, perm);
        let weights = perm.iter().map(|&i| self.weights[i]).collect();
        QMod {
            p: self.p,
            weights,
            e,
            f,
            label: self.label.clone(),
        }
    }

    /// Conjugates by an invertible matrix `g` whose columns are weight
    /// vectors: returns the module in the basis given by those columns.
    pub fn change_basis(&self, g: &Matrix) -> Result<QMod> {
        self.restrict(g)
    }
}

fn check_s(p: u32, s: u32, max: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::OutOfRange(format!("p = {p} must be at least 2")));
    }
    if s < 1 || s > max {
        return Err(Error::OutOfRange(format!("s = {s} must lie in 1..={max}")));
    }
    Ok(())
}

/// Appends one irreducible chain of dimension `len` at `offset` inside
/// `(e, f, weights)`: highest weight exponent `top`, `E v_n = c·[n][len-n] v_{n-1}`.
fn put_chain(p: u32, e: &mut Matrix, f: &mut Matrix, weights: &mut [u32], offset: usize, len: u32, top: i64, c: i64) {
    let order = 2 * p;
    for n in 0..len as usize {
        weights[offset + n] = wmod(p, top - 2 * n as i64);
        if n >= 1 {
            let v = &(&qint(p, n as i64) * &qint(p, len as i64 - n as i64)) * &CycNum::from_int(order, c);
            e.set(offset + n - 1, offset + n, v);
        }
        if n + 1 < len as usize {
            f.set(offset + n + 1, offset + n, CycNum::one(order));
        }
    }
}

/// `X^a_s`, `1 ≤ s ≤ p`.
pub fn irreducible(p: u32, a: Sign, s: u32) -> Result<QMod> {
    check_s(p, s, p)?;
    let n = s as usize;
    let order = 2 * p;
    let mut e = Matrix::zeros(order, n, n);
    let mut f = Matrix::zeros(order, n, n);
    let mut w = vec![0; n];
    put_chain(p, &mut e, &mut f, &mut w, 0, s, s as i64 - 1 + a.shift(p), a.as_i64());
    Ok(QMod::new(p, w, e, f).with_label(format!("X{a}_{s}")))
}

/// Socle-chain parameters `(len, top exponent, sign factor)` for `X^{-a}_{p-s}`.
fn socle_chain(p: u32, a: Sign, s: u32) -> (u32, i64, i64) {
    let a2 = a.neg();
    (p - s, (p - s) as i64 - 1 + a2.shift(p), a2.as_i64())
}

/// The module with top `d0` copies of `X^a_s` and socle `d1` copies of
/// `X^{-a}_{p-s}`, where `F a^{(j)}_{s-1} = Σ_i r_{ij} x^{(i)}_0` and
/// `E a^{(j)}_0 = Σ_i r̄_{ij} x^{(i)}_{p-s-1}`. Basis: all top copies, then
/// all socle copies.
pub fn build_glued(p: u32, a: Sign, s: u32, rep: &QuiverRep) -> Result<QMod> {
    check_s(p, s, p - 1)?;
    let order = 2 * p;
    if rep.order() != order {
        return Err(Error::OrderMismatch(rep.order(), order));
    }
    let (d0, d1) = (rep.d0, rep.d1);
    let (su, tu) = (s as usize, (p - s) as usize);
    let dim = d0 * su + d1 * tu;
    let mut e = Matrix::zeros(order, dim, dim);
    let mut f = Matrix::zeros(order, dim, dim);
    let mut w = vec![0; dim];
    for j in 0..d0 {
        put_chain(p, &mut e, &mut f, &mut w, j * su, s, s as i64 - 1 + a.shift(p), a.as_i64());
    }
    let (len, top, c) = socle_chain(p, a, s);
    let base = d0 * su;
    for i in 0..d1 {
        put_chain(p, &mut e, &mut f, &mut w, base + i * tu, len, top, c);
    }
    for j in 0..d0 {
        for i in 0..d1 {
            let r = rep.r.get(i, j);
            if !r.is_zero() {
                f.set(base + i * tu, j * su + su - 1, r.clone());
            }
            let rb = rep.rbar.get(i, j);
            if !rb.is_zero() {
                e.set(base + i * tu + tu - 1, j * su, rb.clone());
            }
        }
    }
    Ok(QMod::new(p, w, e, f))
}

/// `W^a_s(2)` with basis `a` (right), `b` (left), `x` (bottom).
pub fn build_w2(p: u32, a: Sign, s: u32) -> Result<QMod> {
    check_s(p, s, p - 1)?;
    let order = 2 * p;
    let (su, tu) = (s as usize, (p - s) as usize);
    let dim = 2 * su + tu;
    let mut e = Matrix::zeros(order, dim, dim);
    let mut f = Matrix::zeros(order, dim, dim);
    let mut w = vec![0; dim];
    let top = s as i64 - 1 + a.shift(p);
    put_chain(p, &mut e, &mut f, &mut w, 0, s, top, a.as_i64());
    put_chain(p, &mut e, &mut f, &mut w, su, s, top, a.as_i64());
    let (len, stop, c) = socle_chain(p, a, s);
    let x = 2 * su;
    put_chain(p, &mut e, &mut f, &mut w, x, len, stop, c);
    let one = CycNum::one(order);
    // E a_0 = x_{p-s-1}, F b_{s-1} = x_0
    e.set(x + tu - 1, 0, one.clone());
    f.set(x, su + su - 1, one);
    Ok(QMod::new(p, w, e, f).with_label(format!("W{a}_{s}(2)")))
}

/// `M^a_s(2)` with basis `a` (top), `x` (left), `y` (right).
pub fn build_m2(p: u32, a: Sign, s: u32) -> Result<QMod> {
    check_s(p, s, p - 1)?;
    let order = 2 * p;
    let (su, tu) = (s as usize, (p - s) as usize);
    let dim = su + 2 * tu;
    let mut e = Matrix::zeros(order, dim, dim);
    let mut f = Matrix::zeros(order, dim, dim);
    let mut w = vec![0; dim];
    put_chain(p, &mut e, &mut f, &mut w, 0, s, s as i64 - 1 + a.shift(p), a.as_i64());
    let (len, stop, c) = socle_chain(p, a, s);
    let (x, y) = (su, su + tu);
    put_chain(p, &mut e, &mut f, &mut w, x, len, stop, c);
    put_chain(p, &mut e, &mut f, &mut w, y, len, stop, c);
    let one = CycNum::one(order);
    // E a_0 = x_{p-s-1}, F a_{s-1} = y_0
    e.set(x + tu - 1, 0, one.clone());
    f.set(y, su - 1, one);
    Ok(QMod::new(p, w, e, f).with_label(format!("M{a}_{s}(2)")))
}

/// `O^a_s(1, z)`: `E a_0 = z2 x_{p-s-1}`, `F a_{s-1} = z1 x_0`.
pub fn build_o1(p: u32, a: Sign, s: u32, z: &Cp1) -> Result<QMod> {
    check_s(p, s, p - 1)?;
    if z.order() != 2 * p {
        return Err(Error::OrderMismatch(z.order(), 2 * p));
    }
    let rep = QuiverRep::new(
        Matrix::from_rows(2 * p, vec![vec![z.z1.clone()]]),
        Matrix::from_rows(2 * p, vec![vec![z.z2.clone()]]),
    )?;
    Ok(build_glued(p, a, s, &rep)?.with_label(format!("O{a}_{s}(1,{z})")))
}

/// Verma module `V^a_s = O^a_s(1, 1:0)`.
pub fn verma(p: u32, a: Sign, s: u32) -> Result<QMod> {
    Ok(build_o1(p, a, s, &Cp1::verma(2 * p))?.with_label(format!("V{a}_{s}")))
}

/// Contragredient Verma `O^a_s(1, 0:1)`.
pub fn coverma(p: u32, a: Sign, s: u32) -> Result<QMod> {
    Ok(build_o1(p, a, s, &Cp1::coverma(2 * p))?.with_label(format!("Vbar{a}_{s}")))
}

/// `P^a_s` with basis `b` (top), `a` (bottom), `x` (right), `y` (left).
pub fn build_p(p: u32, a: Sign, s: u32) -> Result<QMod> {
    check_s(p, s, p - 1)?;
    let order = 2 * p;
    let (su, tu) = (s as usize, (p - s) as usize);
    let dim = 2 * (su + tu);
    let mut e = Matrix::zeros(order, dim, dim);
    let mut f = Matrix::zeros(order, dim, dim);
    let mut w = vec![0; dim];
    let top = s as i64 - 1 + a.shift(p);
    let (bo, ao, xo, yo) = (0, su, 2 * su, 2 * su + tu);
    put_chain(p, &mut e, &mut f, &mut w, bo, s, top, a.as_i64());
    put_chain(p, &mut e, &mut f, &mut w, ao, s, top, a.as_i64());
    let (len, stop, c) = socle_chain(p, a, s);
    put_chain(p, &mut e, &mut f, &mut w, xo, len, stop, c);
    put_chain(p, &mut e, &mut f, &mut w, yo, len, stop, c);
    let one = CycNum::one(order);
    // E y_0 = a_{s-1}
    e.set(ao + su - 1, yo, one.clone());
    // E b_n gains a_{n-1} for n >= 1
    for n in 1..su {
        e.set(ao + n - 1, bo + n, one.clone());
    }
    // E b_0 = x_{p-s-1}
    e.set(xo + tu - 1, bo, one.clone());
    // F x_{p-s-1} = a_0
    f.set(ao, xo + tu - 1, one.clone());
    // F b_{s-1} = y_0
    f.set(yo, bo + su - 1, one);
    Ok(QMod::new(p, w, e, f).with_label(format!("P{a}_{s}")))
}

/// `W^a_s(n) = G(ρ_{n-1})`, top `n` copies.
pub fn build_w(p: u32, a: Sign, s: u32, n: usize) -> Result<QMod> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(build_glued(p, a, s, &QuiverRep::rho(2 * p, n - 1))?.with_label(format!("W{a}_{s}({n})")))
}

/// `M^a_s(n) = G(ρ̄_{n-1})`, socle `n` copies.
pub fn build_m(p: u32, a: Sign, s: u32, n: usize) -> Result<QMod> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(build_glued(p, a, s, &QuiverRep::rho_bar(2 * p, n - 1))?.with_label(format!("M{a}_{s}({n})")))
}

/// `O^a_s(n, z) = G(regular(n, z))`.
pub fn build_o(p: u32, a: Sign, s: u32, n: usize, z: &Cp1) -> Result<QMod> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if z.order() != 2 * p {
        return Err(Error::OrderMismatch(z.order(), 2 * p));
    }
    Ok(build_glued(p, a, s, &QuiverRep::regular(2 * p, n, z))?.with_label(format!("O{a}_{s}({n},{z})")))
}

/// The left regular module, in the `K`-eigenbasis
/// `u_{ijk} = Σ_l q^{-kl} E^i F^j K^l` of weight `q^{2(i-j)+k}`.
pub fn regular_module(p: u32) -> QMod {
    let alg = Uq::restricted(p);
    let order = 2 * p;
    let dim = alg.dim();
    let tp = 2 * p as usize;
    let idx = |i: u32, j: u32, k: u32| ((i * p + j) as usize) * tp + k as usize;
    let q = |n: i64| CycNum::q_pow(p, n);
    let inv2p = CycNum::from_rat(order, crate::rational::Rat::new(1, 2 * p as i64));
    let mut weights = vec![0; dim];
    let mut e = Matrix::zeros(order, dim, dim);
    let mut f = Matrix::zeros(order, dim, dim);
    for i in 0..p {
        for j in 0..p {
            for k in 0..2 * p {
                let col = idx(i, j, k);
                weights[col] = wmod(p, 2 * (i as i64 - j as i64) + k as i64);
                if i + 1 < p {
                    e.set(idx(i + 1, j, k), col, CycNum::one(order));
                }
                // F · u_{ijk} in the PBW basis, then back to u-coordinates
                let mut pbw: BTreeMap<u32, CycNum> = BTreeMap::new();
                for l in 0..2 * p {
                    let c = q(-(k as i64) * l as i64);
                    for (m, v) in alg.mono_mul((0, 1, 0), (i, j, l)) {
                        *pbw.entry(*m).or_insert_with(|| CycNum::zero(order)) += &(&c * v);
                    }
                }
                for (m, v) in pbw {
                    if v.is_zero() {
                        continue;
                    }
                    let (i2, j2, l2) = alg.mono(m as usize);
                    for k2 in 0..2 * p {
                        let c = &(&v * &q(k2 as i64 * l2 as i64)) * &inv2p;
                        f.add_at(idx(i2, j2, k2), col, &c);
                    }
                }
            }
        }
    }
    QMod::new(p, weights, e, f).with_label("Reg")
}

type Triplet = (usize, usize, CycNum);

#[derive(Serialize, Deserialize)]
struct QModRepr {
    p: u32,
    dim: usize,
    weights: Vec<u32>,
    #[serde(rename = "E")]
    e: Vec<Triplet>,
    #[serde(rename = "F")]
    f: Vec<Triplet>,
    #[serde(rename = "K", default)]
    k: Option<Vec<Triplet>>,
    #[serde(default)]
    label: Option<String>,
}

impl Serialize for QMod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QModRepr {
            p: self.p,
            dim: self.dim(),
            weights: self.weights.clone(),
            e: self.e.triplets(),
            f: self.f.triplets(),
            k: Some(self.k_matrix().triplets()),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMod {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        QMod::from_repr(QModRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl QMod {
    fn from_repr(r: QModRepr) -> Result<QMod> {
        if !(2..=64).contains(&r.p) {
            return Err(Error::OutOfRange(format!("p = {}", r.p)));
        }
        if r.dim > 4096 {
            return Err(Error::OutOfRange(format!("dim = {}", r.dim)));
        }
        if r.weights.len() != r.dim {
            return Err(Error::Invalid("weights length differs from dim".into()));
        }
        if let Some(w) = r.weights.iter().find(|&&w| w >= 2 * r.p) {
            return Err(Error::OutOfRange(format!("weight exponent {w} not below 2p")));
        }
        let order = 2 * r.p;
        let fill = |ts: Vec<Triplet>, name: &str| -> Result<Matrix> {
            let mut m = Matrix::zeros(order, r.dim, r.dim);
            for (i, j, c) in ts {
                if i >= r.dim || j >= r.dim {
                    return Err(Error::OutOfRange(format!("{name} entry ({i},{j}) outside {}", r.dim)));
                }
                if c.order() != order {
                    return Err(Error::OrderMismatch(c.order(), order));
                }
                m.set(i, j, c);
            }
            Ok(m)
        };
        let e = fill(r.e, "E")?;
        let f = fill(r.f, "F")?;
        let m = QMod {
            p: r.p,
            weights: r.weights,
            e,
            f,
            label: r.label,
        };
        if let Some(k) = r.k {
            if fill(k, "K")? != m.k_matrix() {
                return Err(Error::Invalid("K is not the diagonal of the listed weights".into()));
            }
        }
        Ok(m)
    }

    pub fn from_json(s: &str) -> Result<QMod> {
        QMod::from_repr(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_actions() {
        let x = irreducible(2, Sign::Plus, 2).unwrap();
        assert_eq!(x.weights, vec![1, 3]);
        assert!(x.e.get(0, 1).is_one());
        let t = irreducible(3, Sign::Plus, 1).unwrap();
        assert!(t.e.is_zero() && t.f.is_zero() && t.weights == vec![0]);
        let m = irreducible(3, Sign::Minus, 2).unwrap();
        assert_eq!(*m.e.get(0, 1), CycNum::from_int(6, -1));
        assert!(irreducible(3, Sign::Plus, 4).is_err());
    }

    #[test]
    fn constructors_verify() {
        for p in 2..=4 {
            for a in Sign::both() {
                for s in 1..=p {
                    irreducible(p, a, s).unwrap().verify().unwrap();
                }
                for s in 1..p {
                    build_w2(p, a, s).unwrap().verify().unwrap();
                    build_m2(p, a, s).unwrap().verify().unwrap();
                    build_p(p, a, s).unwrap().verify().unwrap();
                    for z in [Cp1::verma(2 * p), Cp1::coverma(2 * p), Cp1::affine(CycNum::q_pow(p, 1))] {
                        build_o1(p, a, s, &z).unwrap().verify().unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        for p in 2..=5u32 {
            for s in 1..p {
                let ps = p as usize;
                let su = s as usize;
                assert_eq!(build_w2(p, Sign::Plus, s).unwrap().dim(), ps + su);
                assert_eq!(build_m2(p, Sign::Minus, s).unwrap().dim(), 2 * ps - su);
                assert_eq!(build_p(p, Sign::Plus, s).unwrap().dim(), 2 * ps);
                assert_eq!(verma(p, Sign::Plus, s).unwrap().dim(), ps);
            }
        }
    }

    #[test]
    fn perturbed_module_fails_commutator() {
        let mut x = irreducible(3, Sign::Plus, 3).unwrap();
        let v = x.e.get(0, 1).clone();
        x.e.set(0, 1, &v + &CycNum::one(6));
        assert!(x.verify().unwrap_err().contains("[E,F]"));
    }

    #[test]
    fn characters() {
        let x = irreducible(2, Sign::Plus, 2).unwrap();
        assert_eq!(x.weight_character(), BTreeMap::from([(1, 1), (3, 1)]));
        // P+_1 at p=2: b_0, a_0 have weight 1; x_0, y_0 have weight -q^0 = q^2
        let pm = build_p(2, Sign::Plus, 1).unwrap();
        assert_eq!(pm.weight_character(), BTreeMap::from([(0, 2), (2, 2)]));
    }

    #[test]
    fn tensor_and_dual_verify() {
        let a = irreducible(3, Sign::Plus, 2).unwrap();
        let b = build_p(3, Sign::Minus, 1).unwrap();
        a.tensor(&b).verify().unwrap();
        b.dual().verify().unwrap();
        a.direct_sum(&b).verify().unwrap();
        let t = irreducible(3, Sign::Plus, 1).unwrap();
        assert_eq!(t.tensor(&b), QMod { label: None, ..b });
    }

    #[test]
    fn regular_module_is_a_module() {
        for p in 2..=3 {
            let r = regular_module(p);
            assert_eq!(r.dim(), 2 * (p * p * p) as usize);
            r.verify().unwrap();
        }
    }

    #[test]
    fn json_round_trip() {
        let m = build_p(3, Sign::Plus, 1).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(QMod::from_json(&s).unwrap(), m);
        assert!(QMod::from_json(r#"{"p":2,"dim":1,"weights":[7],"E":[],"F":[]}"#).is_err());
    }

    #[test]
    fn cp1_canonical() {
        let two = CycNum::from_int(4, 2);
        let z = Cp1::new(two.clone(), CycNum::from_int(4, 4)).unwrap();
        assert_eq!(z, Cp1::affine(two));
        assert_eq!(Cp1::new(CycNum::zero(4), CycNum::from_int(4, 3)).unwrap(), Cp1::coverma(4));
        assert!(Cp1::new(CycNum::zero(4), CycNum::zero(4)).is_err());
    }
}
