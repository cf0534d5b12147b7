//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are residues of `Q[x]` modulo the `N`-th cyclotomic polynomial,
//! stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`. The root of unity
//! `q = e^{iπ/p}` is `ζ_{2p}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Precomputed data for one cyclotomic order.
#[derive(Debug)]
pub struct CycloData {
    pub order: u32,
    /// `φ(N)`.
    pub degree: usize,
    /// Coefficients of `Φ_N`, constant term first, monic.
    pub poly: Vec<i64>,
    /// `x^k mod Φ_N` for `0 <= k < max(N, 2φ(N) - 1)`.
    pow_table: Vec<Vec<i64>>,
}

impl CycloData {
    fn build(order: u32) -> CycloData {
        let poly = cyclotomic_polynomial(order);
        let degree = poly.len() - 1;
        let len = (order as usize).max(2 * degree);
        let mut pow_table = Vec::with_capacity(len);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..len {
            pow_table.push(cur.clone());
            // multiply by x and reduce the overflow coefficient
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1] - top * poly[j];
            }
            cur[0] = -top * poly[0];
        }
        CycloData {
            order,
            degree,
            poly,
            pow_table,
        }
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.pow_table[k]
    }
}

/// Integer coefficients of `Φ_n` computed by dividing `x^n - 1` by `Φ_d`
/// for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let n = n as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d as u32);
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Shared, lazily built tables. Orders used by this crate are tiny, so the
/// leaked allocations are bounded.
pub fn cyclo_data(order: u32) -> &'static CycloData {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static CycloData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| Box::leak(Box::new(CycloData::build(order))))
}

pub fn euler_phi(n: u32) -> usize {
    cyclo_data(n).degree
}

/// An element of `Q(ζ_N)`.
///
/// `coeffs` holds the power-basis coordinates with trailing zeros removed,
/// so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(order: u32) -> CycNum {
        CycNum {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: u32) -> CycNum {
        CycNum::from_rat(order, Rat::ONE)
    }

    pub fn from_int(order: u32, n: i64) -> CycNum {
        CycNum::from_rat(order, Rat::from_int(n))
    }

    pub fn from_rat(order: u32, r: Rat) -> CycNum {
        let mut c = CycNum {
            order,
            coeffs: vec![r],
        };
        c.trim();
        c
    }

    /// Builds an element from power-basis coordinates; entries beyond
    /// `φ(N)` are reduced modulo `Φ_N`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rat>) -> CycNum {
        let data = cyclo_data(order);
        if coeffs.len() <= data.degree {
            let mut c = CycNum { order, coeffs };
            c.trim();
            return c;
        }
        let mut out = vec![Rat::ZERO; data.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = power_row(data, k);
            for (o, &t) in out.iter_mut().zip(row.iter()) {
                if t != 0 {
                    *o = &*o + &c.mul_int(t);
                }
            }
        }
        let mut c = CycNum { order, coeffs: out };
        c.trim();
        c
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn root_pow(order: u32, k: i64) -> CycNum {
        let data = cyclo_data(order);
        let k = k.rem_euclid(order as i64) as usize;
        let coeffs = data.power(k).iter().map(|&c| Rat::from_int(c)).collect();
        let mut c = CycNum { order, coeffs };
        c.trim();
        c
    }

    /// `q^k` with `q = e^{iπ/p} = ζ_{2p}`.
    pub fn q_pow(p: u32, k: i64) -> CycNum {
        CycNum::root_pow(2 * p, k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Full-length coordinates (length `φ(N)`).
    pub fn coeffs(&self) -> Vec<Rat> {
        let mut v = self.coeffs.clone();
        v.resize(euler_phi(self.order), Rat::ZERO);
        v
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::ZERO),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn check_order(&self, other: &CycNum) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &CycNum) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let c = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut c = CycNum {
            order: self.order,
            coeffs,
        };
        c.trim();
        c
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(self.order);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        let mut prod = vec![Rat::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        CycNum::from_coeffs(self.order, prod)
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        if r.is_zero() {
            return CycNum::zero(self.order);
        }
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rat(self.order, r.inv().expect("nonzero")));
        }
        let data = cyclo_data(self.order);
        let modulus: Vec<Rat> = data.poly.iter().map(|&c| Rat::from_int(c)).collect();
        // invariant: r_i ≡ s_i * a  (mod Φ)
        let (mut r0, mut s0) = (modulus, Vec::<Rat>::new());
        let (mut r1, mut s1) = (self.coeffs.clone(), vec![Rat::ONE]);
        while poly_degree(&r1).is_some() && poly_degree(&r1) != Some(0) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible and a ≠ 0, so the last remainder is a nonzero constant.
        let c = r1
            .first()
            .cloned()
            .filter(|c| !c.is_zero())
            .ok_or(Error::DivisionByZero)?;
        let cinv = c.inv().expect("nonzero");
        let coeffs = s1.iter().map(|x| x * &cinv).collect();
        Ok(CycNum::from_coeffs(self.order, coeffs))
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents via the inverse.
    pub fn powi(&self, e: i64) -> Result<CycNum> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Galois automorphism `ζ ↦ ζ^k` (requires `gcd(k, N) = 1` to be a field map).
    pub fn galois(&self, k: i64) -> CycNum {
        let data = cyclo_data(self.order);
        let mut out = vec![Rat::ZERO; data.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as i64 * k).rem_euclid(self.order as i64) as usize;
            for (o, &t) in out.iter_mut().zip(data.power(e)) {
                if t != 0 {
                    *o = &*o + &c.mul_int(t);
                }
            }
        }
        CycNum::from_coeffs(self.order, out)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// Coercion `Q(ζ_N) → Q(ζ_M)` for `N | M`, sending `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, new_order: u32) -> Result<CycNum> {
        if !new_order.is_multiple_of(self.order) {
            return Err(Error::Invalid(format!(
                "cannot embed order {} into order {}",
                self.order, new_order
            )));
        }
        let step = (new_order / self.order) as usize;
        let mut wide = vec![Rat::ZERO; self.coeffs.len().saturating_sub(1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            wide[j * step] = c.clone();
        }
        if self.is_zero() {
            return Ok(CycNum::zero(new_order));
        }
        Ok(CycNum::from_coeffs(new_order, wide))
    }

    /// Evaluation at the principal root `e^{2iπ/N}`. Display and cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        self.to_complex_at(1)
    }

    /// Evaluation under the embedding `ζ ↦ e^{2iπk/N}`.
    pub fn to_complex_at(&self, k: i64) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / n;
            let v = c.to_f64();
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Parses an expression such as `1`, `-1/2`, `q`, `2*q^3 - (1/3)*q + 1`,
    /// `(1+q)*(1-q)`. `q` denotes `ζ_N`.
    pub fn parse_expr(s: &str, order: u32) -> Result<CycNum> {
        if order == 0 || order > 1000 {
            return Err(Error::OutOfRange(format!("cyclotomic order {order}")));
        }
        let mut parser = ExprParser {
            src: s.as_bytes(),
            pos: 0,
            order,
            depth: 0,
        };
        let v = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input in {s:?} at byte {}",
                parser.pos
            )));
        }
        Ok(v)
    }
}

fn power_row(data: &CycloData, k: usize) -> std::borrow::Cow<'_, [i64]> {
    if k < data.pow_table.len() {
        std::borrow::Cow::Borrowed(data.power(k))
    } else {
        std::borrow::Cow::Borrowed(data.power(k % data.order as usize))
    }
}

fn poly_degree(a: &[Rat]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut a: Vec<Rat>) -> Vec<Rat> {
    while a.last().is_some_and(Rat::is_zero) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or(Rat::ZERO);
            let y = b.get(k).cloned().unwrap_or(Rat::ZERO);
            &x - &y
        })
        .collect();
    poly_trim(out)
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero");
    let mut rem = poly_trim(a.to_vec());
    let mut quot = vec![Rat::ZERO; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for j in 0..=db {
            rem[shift + j] = &rem[shift + j] - &(&c * &b[j]);
        }
        quot[shift] = c;
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        assert_eq!(self.order, rhs.order, "mismatched cyclotomic orders");
        self.add_unchecked(rhs)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        assert_eq!(self.order, rhs.order, "mismatched cyclotomic orders");
        self.add_unchecked(&-rhs)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        assert_eq!(self.order, rhs.order, "mismatched cyclotomic orders");
        self.mul_unchecked(rhs)
    }
}

impl Div for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("cyclotomic division failed")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

/// The quantum integer `[n] = (q^n - q^{-n}) / (q - q^{-1})` at `q = e^{iπ/p}`.
pub fn qint(p: u32, n: i64) -> CycNum {
    assert!(p >= 2, "qint requires p >= 2");
    // [n] = sign(n) * Σ_{k=0}^{|n|-1} q^{|n|-1-2k}
    let order = 2 * p;
    let m = n.abs();
    let mut acc = CycNum::zero(order);
    for k in 0..m {
        acc += &CycNum::q_pow(p, m - 1 - 2 * k);
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{mono}")?;
            } else {
                write!(f, "({mag})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [ζ{}]", self.order)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    order: u32,
    depth: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<CycNum> {
        self.depth += 1;
        if self.depth > 64 {
            return Err(self.err("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut neg = false;
        while let Some(c @ (b'-' | b'+')) = self.peek() {
            self.pos += 1;
            neg ^= c == b'-';
        }
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(if neg { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<CycNum> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                let mut e: i64 = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.signed_int()?;
                }
                Ok(CycNum::root_pow(self.order, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let mut r = n;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    r = r.checked_div(&d)?;
                }
                Ok(r)
            }
            _ => Err(self.err("expected number, 'q', or '('")),
        }
    }

    fn digits(&mut self) -> Result<CycNum> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let r: Rat = s.parse().map_err(|e: crate::rational::ParseRatError| Error::Parse(e.to_string()))?;
        Ok(CycNum::from_rat(self.order, r))
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: i64 = s.parse().map_err(|_| self.err("expected exponent"))?;
        Ok(if neg { -v } else { v })
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            order: self.order,
            coeffs: self.coeffs().iter().map(Rat::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycNumRepr::deserialize(deserializer)?;
        CycNum::from_repr(repr.order, &repr.coeffs).map_err(D::Error::custom)
    }
}

impl CycNum {
    fn from_repr(order: u32, coeffs: &[String]) -> Result<CycNum> {
        if order == 0 || order > 1000 {
            return Err(Error::OutOfRange(format!("cyclotomic order {order}")));
        }
        let phi = euler_phi(order);
        if coeffs.len() != phi {
            return Err(Error::Invalid(format!(
                "order {order} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .iter()
            .map(|s| s.parse::<Rat>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum::from_coeffs(order, coeffs))
    }

    /// Parses the JSON object form `{"order": N, "coeffs": ["a/b", ...]}`.
    pub fn from_json(s: &str) -> Result<CycNum> {
        Ok(serde_json::from_str(s)?)
    }
}
