//! The restricted quantum group on its PBW basis `E^i F^j K^l`, plus the
//! extension by a square root `k` of `K` used for the braiding.
//!
//! Both algebras are handled by one engine parameterized by the grouplike
//! generator `g` (`K` or `k`), its order, and the field it lives over.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};

/// PBW exponent triple `(i, j, l)` for `E^i F^j g^l`.
pub type Mono = (u32, u32, u32);

/// Structure constants for one algebra.
pub struct Uq {
    pub p: u32,
    pub extended: bool,
    /// Order `N` of the coefficient field `Q(ζ_N)`.
    pub order: u32,
    /// Order of the grouplike generator.
    pub gorder: u32,
    /// `q = ζ_N^qe`.
    qe: i64,
    /// `g E g^{-1} = ζ_N^ge E`.
    ge: i64,
    /// `K = g^kexp`.
    kexp: u32,
    products: Vec<Vec<(u32, CycNum)>>,
}

impl Uq {
    /// `Ū_q(sl2)` at `q = e^{iπ/p}` over `Q(ζ_{2p})`.
    pub fn restricted(p: u32) -> &'static Uq {
        Uq::cached(p, false)
    }

    /// The algebra with `k`, `k^2 = K`, over `Q(ζ_{4p})`.
    pub fn extended(p: u32) -> &'static Uq {
        Uq::cached(p, true)
    }

    pub fn get(p: u32, extended: bool) -> &'static Uq {
        Uq::cached(p, extended)
    }

    fn cached(p: u32, extended: bool) -> &'static Uq {
        assert!(p >= 2, "p must be at least 2");
        static CACHE: OnceLock<Mutex<HashMap<(u32, bool), &'static Uq>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(u) = cache.lock().expect("algebra cache").get(&(p, extended)) {
            return u;
        }
        let built: &'static Uq = Box::leak(Box::new(Uq::build(p, extended)));
        cache
            .lock()
            .expect("algebra cache")
            .entry((p, extended))
            .or_insert(built)
    }

    fn build(p: u32, extended: bool) -> Uq {
        let (order, gorder, qe, ge, kexp) = if extended {
            (4 * p, 4 * p, 2, 2, 2)
        } else {
            (2 * p, 2 * p, 1, 2, 1)
        };
        let mut u = Uq {
            p,
            extended,
            order,
            gorder,
            qe,
            ge,
            kexp,
            products: Vec::new(),
        };
        let fe = u.fe_table();
        let dim = u.dim();
        let mut products = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            let ma = u.mono(a);
            for b in 0..dim {
                products.push(u.mono_product(ma, u.mono(b), &fe));
            }
        }
        u.products = products;
        u
    }

    pub fn dim(&self) -> usize {
        (self.p * self.p * self.gorder) as usize
    }

    pub fn index(&self, m: Mono) -> usize {
        ((m.0 * self.p + m.1) * self.gorder + m.2) as usize
    }

    pub fn mono(&self, idx: usize) -> Mono {
        let idx = idx as u32;
        let l = idx % self.gorder;
        let ij = idx / self.gorder;
        (ij / self.p, ij % self.p, l)
    }

    pub fn basis(&self) -> Vec<Mono> {
        (0..self.dim()).map(|i| self.mono(i)).collect()
    }

    /// `q^n` as a field element.
    pub fn q(&self, n: i64) -> CycNum {
        CycNum::root_pow(self.order, n * self.qe)
    }

    fn zeta(&self, n: i64) -> CycNum {
        CycNum::root_pow(self.order, n)
    }

    /// Exponent of `g` representing `K`.
    pub fn k_exp(&self) -> u32 {
        self.kexp
    }

    fn gmod(&self, l: i64) -> u32 {
        l.rem_euclid(self.gorder as i64) as u32
    }

    /// Left multiplication by `F` on one normal-ordered monomial.
    fn f_times(&self, m: Mono) -> Vec<(Mono, CycNum)> {
        let (x, y, z) = m;
        let mut out = Vec::new();
        if y + 1 < self.p {
            out.push(((x, y + 1, z), CycNum::one(self.order)));
        }
        if x >= 1 {
            let mut c1 = CycNum::zero(self.order);
            let mut c2 = CycNum::zero(self.order);
            for j in 0..x as i64 {
                c1 += &self.q(2 * j);
                c2 += &self.q(-2 * j);
            }
            let denom = (&self.q(1) - &self.q(-1)).inv().expect("q - q^-1 != 0");
            let y = y as i64;
            let a = -(&(&c1 * &self.q(-2 * y)) * &denom);
            let b = &(&c2 * &self.q(2 * y)) * &denom;
            let kx = self.kexp as i64;
            out.push(((x - 1, y as u32, self.gmod(z as i64 + kx)), a));
            out.push(((x - 1, y as u32, self.gmod(z as i64 - kx)), b));
        }
        out
    }

    /// Normal forms of `F^b E^d`, indexed `[b][d]`.
    fn fe_table(&self) -> Vec<Vec<Vec<(Mono, CycNum)>>> {
        let p = self.p;
        let mut table = vec![vec![Vec::new(); p as usize]; p as usize];
        for d in 0..p {
            table[0][d as usize] = vec![((d, 0, 0), CycNum::one(self.order))];
            for b in 1..p as usize {
                let mut acc: BTreeMap<Mono, CycNum> = BTreeMap::new();
                for (m, c) in &table[b - 1][d as usize] {
                    for (m2, c2) in self.f_times(*m) {
                        let e = acc.entry(m2).or_insert_with(|| CycNum::zero(self.order));
                        *e += &(c * &c2);
                    }
                }
                table[b][d as usize] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        table
    }

    fn mono_product(
        &self,
        (a, b, c): Mono,
        (d, e, f): Mono,
        fe: &[Vec<Vec<(Mono, CycNum)>>],
    ) -> Vec<(u32, CycNum)> {
        let mut acc: BTreeMap<u32, CycNum> = BTreeMap::new();
        let (ci, di, ei) = (c as i64, d as i64, e as i64);
        for &((x, y, z), ref coef) in &fe[b as usize][d as usize] {
            if a + x >= self.p || y + e >= self.p {
                continue;
            }
            let phase = self.ge * (ci * di - ci * ei - z as i64 * ei);
            let m = (a + x, y + e, self.gmod((z + c + f) as i64));
            let v = coef * &self.zeta(phase);
            let slot = acc
                .entry(self.index(m) as u32)
                .or_insert_with(|| CycNum::zero(self.order));
            *slot += &v;
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Normal form of the product of two basis monomials, as `(index, coeff)`.
    pub fn mono_mul(&self, a: Mono, b: Mono) -> &[(u32, CycNum)] {
        &self.products[self.index(a) * self.dim() + self.index(b)]
    }
}

/// An element of the tensor power `U^{⊗R}`; `R = 1` is the algebra itself.
#[derive(Clone)]
pub struct Tensor<const R: usize> {
    alg: &'static Uq,
    pub terms: BTreeMap<[Mono; R], CycNum>,
}

pub type AlgElem = Tensor<1>;
pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const R: usize> PartialEq for Tensor<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.p == other.alg.p
            && self.alg.extended == other.alg.extended
            && self.terms == other.terms
    }
}

impl<const R: usize> Eq for Tensor<R> {}

impl<const R: usize> std::fmt::Debug for Tensor<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let ms: Vec<String> = k
                    .iter()
                    .map(|(i, j, l)| format!("E^{i}F^{j}g^{l}"))
                    .collect();
                format!("({c})*{}", ms.join("⊗"))
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<const R: usize> Tensor<R> {
    pub fn zero(alg: &'static Uq) -> Self {
        Tensor {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(alg: &'static Uq, key: [Mono; R], c: CycNum) -> Self {
        let mut t = Tensor::zero(alg);
        t.add_term(key, &c);
        t
    }

    pub fn algebra(&self) -> &'static Uq {
        self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: [Mono; R], c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    fn same_algebra(&self, o: &Self) -> Result<()> {
        if self.alg.p != o.alg.p {
            return Err(Error::PMismatch(self.alg.p, o.alg.p));
        }
        if self.alg.extended != o.alg.extended {
            return Err(Error::Invalid("mixing restricted and extended algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_algebra(o).expect("algebra mismatch");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CycNum::from_int(self.alg.order, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Tensor::zero(self.alg);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v * c);
        }
        out
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_algebra(o)?;
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let alg = self.alg;
        let mut out = Tensor::zero(alg);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let factors: Vec<&[(u32, CycNum)]> =
                    (0..R).map(|i| alg.mono_mul(ka[i], kb[i])).collect();
                if factors.iter().any(|f| f.is_empty()) {
                    continue;
                }
                let base = ca * cb;
                let mut idx = [0usize; R];
                loop {
                    let mut key = [(0, 0, 0); R];
                    let mut c = base.clone();
                    for r in 0..R {
                        let (m, v) = &factors[r][idx[r]];
                        key[r] = alg.mono(*m as usize);
                        c = &c * v;
                    }
                    out.add_term(key, &c);
                    // odometer over the factor expansions
                    let mut r = 0;
                    loop {
                        if r == R {
                            break;
                        }
                        idx[r] += 1;
                        if idx[r] < factors[r].len() {
                            break;
                        }
                        idx[r] = 0;
                        r += 1;
                    }
                    if r == R {
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Tensor::one(self.alg);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn one(alg: &'static Uq) -> Self {
        Tensor::monomial(alg, [(0, 0, 0); R], CycNum::one(alg.order))
    }

    /// Permutes tensor factors: output slot `i` takes input slot `perm[i]`.
    pub fn permute(&self, perm: [usize; R]) -> Self {
        let mut out = Tensor::zero(self.alg);
        for (k, c) in &self.terms {
            let mut nk = *k;
            for i in 0..R {
                nk[i] = k[perm[i]];
            }
            out.add_term(nk, c);
        }
        out
    }

    /// Coefficients of this element as a dense vector over the basis of
    /// `U^{⊗R}` ordered lexicographically by factor index.
    pub fn index_of(&self, key: &[Mono; R]) -> usize {
        let d = self.alg.dim();
        key.iter().fold(0, |acc, m| acc * d + self.alg.index(*m))
    }
}

impl AlgElem {
    pub fn scalar(alg: &'static Uq, c: CycNum) -> AlgElem {
        AlgElem::monomial(alg, [(0, 0, 0)], c)
    }

    pub fn mono_elem(alg: &'static Uq, m: Mono) -> AlgElem {
        AlgElem::monomial(alg, [m], CycNum::one(alg.order))
    }

    pub fn e(alg: &'static Uq) -> AlgElem {
        AlgElem::mono_elem(alg, (1, 0, 0))
    }

    pub fn f(alg: &'static Uq) -> AlgElem {
        AlgElem::mono_elem(alg, (0, 1, 0))
    }

    /// The grouplike generator (`K` or `k`).
    pub fn g(alg: &'static Uq) -> AlgElem {
        AlgElem::mono_elem(alg, (0, 0, 1))
    }

    /// `K^n`, any integer `n`.
    pub fn k_pow(alg: &'static Uq, n: i64) -> AlgElem {
        AlgElem::mono_elem(alg, (0, 0, alg.gmod(n * alg.kexp as i64)))
    }

    pub fn coeff(&self, m: Mono) -> CycNum {
        self.terms
            .get(&[m])
            .cloned()
            .unwrap_or_else(|| CycNum::zero(self.alg.order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mono, &CycNum)> {
        self.terms.iter().map(|(k, c)| (k[0], c))
    }

    pub fn commutator(&self, o: &AlgElem) -> AlgElem {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn counit(&self) -> CycNum {
        let mut acc = CycNum::zero(self.alg.order);
        for ((i, j, _), c) in self.iter() {
            if i == 0 && j == 0 {
                acc += c;
            }
        }
        acc
    }

    pub fn antipode(&self) -> AlgElem {
        antipode(self)
    }

    pub fn coproduct(&self) -> Tensor2 {
        Coproduct::standard(self.alg).apply(self)
    }

    /// Evaluates a polynomial (coefficients low degree first) at this element.
    pub fn eval_poly(&self, coeffs: &[CycNum]) -> AlgElem {
        let mut acc = AlgElem::zero(self.alg);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&AlgElem::scalar(self.alg, c.clone()));
        }
        acc
    }

    /// Dense coordinates on the PBW basis.
    pub fn to_vec(&self) -> Vec<CycNum> {
        let mut v = vec![CycNum::zero(self.alg.order); self.alg.dim()];
        for (m, c) in self.iter() {
            v[self.alg.index(m)] = c.clone();
        }
        v
    }

    pub fn from_vec(alg: &'static Uq, v: &[CycNum]) -> AlgElem {
        let mut out = AlgElem::zero(alg);
        for (i, c) in v.iter().enumerate() {
            out.add_term([alg.mono(i)], c);
        }
        out
    }
}

/// Antipode on the PBW basis: `S(E^i F^j g^l) = S(g)^l S(F)^j S(E)^i`.
pub fn antipode(a: &AlgElem) -> AlgElem {
    let alg = a.alg;
    let minus = CycNum::from_int(alg.order, -1);
    let se = AlgElem::e(alg).mul(&AlgElem::k_pow(alg, -1)).scale(&minus);
    let sf = AlgElem::k_pow(alg, 1).mul(&AlgElem::f(alg)).scale(&minus);
    let sg = AlgElem::mono_elem(alg, (0, 0, alg.gmod(-1)));
    let mut out = AlgElem::zero(alg);
    for ((i, j, l), c) in a.iter() {
        let t = sg.pow(l).mul(&sf.pow(j)).mul(&se.pow(i));
        out = out.add(&t.scale(c));
    }
    out
}

/// Generator images for `Δ`, extended multiplicatively and memoized.
pub struct Coproduct {
    alg: &'static Uq,
    de: Tensor2,
    df: Tensor2,
    dg: Tensor2,
    memo: Mutex<HashMap<Mono, Tensor2>>,
}

impl Coproduct {
    /// `Δ(E) = 1⊗E + E⊗K`, `Δ(F) = K^{-1}⊗F + F⊗1`, `Δ(g) = g⊗g`.
    pub fn standard(alg: &'static Uq) -> Coproduct {
        let one = CycNum::one(alg.order);
        let kk = (0, 0, alg.kexp);
        let kinv = (0, 0, alg.gmod(-(alg.kexp as i64)));
        let mut de = Tensor2::monomial(alg, [(0, 0, 0), (1, 0, 0)], one.clone());
        de.add_term([(1, 0, 0), kk], &one);
        let mut df = Tensor2::monomial(alg, [kinv, (0, 1, 0)], one.clone());
        df.add_term([(0, 1, 0), (0, 0, 0)], &one);
        let dg = Tensor2::monomial(alg, [(0, 0, 1), (0, 0, 1)], one);
        Coproduct::with_generators(alg, de, df, dg)
    }

    pub fn with_generators(alg: &'static Uq, de: Tensor2, df: Tensor2, dg: Tensor2) -> Coproduct {
        Coproduct {
            alg,
            de,
            df,
            dg,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Negative control: `Δ(E) = 1⊗E`, dropping the `E⊗K` term.
    pub fn perturbed(alg: &'static Uq) -> Coproduct {
        let s = Coproduct::standard(alg);
        let de = Tensor2::monomial(alg, [(0, 0, 0), (1, 0, 0)], CycNum::one(alg.order));
        Coproduct::with_generators(alg, de, s.df, s.dg)
    }

    pub fn mono(&self, m: Mono) -> Tensor2 {
        if let Some(t) = self.memo.lock().expect("coproduct memo").get(&m) {
            return t.clone();
        }
        let t = self
            .de
            .pow(m.0)
            .mul(&self.df.pow(m.1))
            .mul(&self.dg.pow(m.2));
        self.memo.lock().expect("coproduct memo").insert(m, t.clone());
        t
    }

    pub fn apply(&self, a: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero(self.alg);
        for (m, c) in a.iter() {
            for (k, v) in &self.mono(m).terms {
                out.add_term(*k, &(v * c));
            }
        }
        out
    }

    /// `(Δ ⊗ id)`.
    pub fn left(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.alg);
        for (k, c) in &t.terms {
            for (k2, v) in &self.mono(k[0]).terms {
                out.add_term([k2[0], k2[1], k[1]], &(v * c));
            }
        }
        out
    }

    /// `(id ⊗ Δ)`.
    pub fn right(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.alg);
        for (k, c) in &t.terms {
            for (k2, v) in &self.mono(k[1]).terms {
                out.add_term([k[0], k2[0], k2[1]], &(v * c));
            }
        }
        out
    }
}

/// `m ∘ (f ⊗ g)` applied to a tensor-square element.
fn contract(t: &Tensor2, f: impl Fn(&AlgElem) -> AlgElem, g: impl Fn(&AlgElem) -> AlgElem) -> AlgElem {
    let alg = t.alg;
    let mut out = AlgElem::zero(alg);
    for (k, c) in &t.terms {
        let a = f(&AlgElem::mono_elem(alg, k[0]));
        let b = g(&AlgElem::mono_elem(alg, k[1]));
        out = out.add(&a.mul(&b).scale(c));
    }
    out
}

/// Pass/fail per Hopf axiom.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HopfReport {
    pub p: u32,
    pub extended: bool,
    pub checks: Vec<(String, bool)>,
}

impl HopfReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_hopf(p: u32) -> HopfReport {
    let alg = Uq::restricted(p);
    verify_hopf_with(alg, &Coproduct::standard(alg))
}

/// Checks the Hopf axioms for the given coproduct on every PBW basis element.
pub fn verify_hopf_with(alg: &'static Uq, delta: &Coproduct) -> HopfReport {
    let basis: Vec<AlgElem> = alg.basis().into_iter().map(|m| AlgElem::mono_elem(alg, m)).collect();
    let gens = [AlgElem::e(alg), AlgElem::f(alg), AlgElem::g(alg)];
    let eps = |a: &AlgElem| AlgElem::scalar(alg, a.counit());
    let id = |a: &AlgElem| a.clone();

    let mut coassoc = true;
    let mut counit = true;
    let mut anti = true;
    for x in &basis {
        let d = delta.apply(x);
        if coassoc && delta.left(&d) != delta.right(&d) {
            coassoc = false;
        }
        if counit && (contract(&d, eps, id) != *x || contract(&d, id, eps) != *x) {
            counit = false;
        }
        if anti {
            let unit = AlgElem::scalar(alg, x.counit());
            if contract(&d, antipode, id) != unit || contract(&d, id, antipode) != unit {
                anti = false;
            }
        }
    }

    let mut delta_mult = true;
    let mut eps_mult = true;
    let mut s_anti = true;
    for g in &gens {
        let dg = delta.apply(g);
        let sg = antipode(g);
        for b in &basis {
            let gb = g.mul(b);
            let bg = b.mul(g);
            if delta_mult {
                let db = delta.apply(b);
                if delta.apply(&gb) != dg.mul(&db) || delta.apply(&bg) != db.mul(&dg) {
                    delta_mult = false;
                }
            }
            if eps_mult && (gb.counit() != &g.counit() * &b.counit() || bg.counit() != &b.counit() * &g.counit()) {
                eps_mult = false;
            }
            if s_anti {
                let sb = antipode(b);
                if antipode(&gb) != sb.mul(&sg) || antipode(&bg) != sg.mul(&sb) {
                    s_anti = false;
                }
            }
        }
    }

    HopfReport {
        p: alg.p,
        extended: alg.extended,
        checks: vec![
            ("coassociativity".into(), coassoc),
            ("counit".into(), counit),
            ("antipode".into(), anti),
            ("coproduct multiplicative".into(), delta_mult),
            ("counit multiplicative".into(), eps_mult),
            ("antipode anti-multiplicative".into(), s_anti),
        ],
    }
}

/// The Casimir element with its eigenvalue data.
#[derive(Debug, Clone)]
pub struct CasimirData {
    pub element: AlgElem,
    /// `β_0, …, β_p`.
    pub roots: Vec<CycNum>,
    /// `1, 2, …, 2, 1`.
    pub multiplicities: Vec<u32>,
}

impl CasimirData {
    /// Coefficients of `Π (x - β_j)^{m_j}`, low degree first.
    pub fn polynomial_with(&self, mults: &[u32]) -> Vec<CycNum> {
        let order = self.element.alg.order;
        let mut poly = vec![CycNum::one(order)];
        for (b, &m) in self.roots.iter().zip(mults) {
            for _ in 0..m {
                let mut next = vec![CycNum::zero(order); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= &(c * b);
                }
                poly = next;
            }
        }
        poly
    }

    pub fn minimal_polynomial(&self) -> Vec<CycNum> {
        self.polynomial_with(&self.multiplicities)
    }
}

/// `β_j = (q^j + q^{-j}) / (q - q^{-1})^2`.
pub fn beta(alg: &Uq, j: i64) -> CycNum {
    let d = &alg.q(1) - &alg.q(-1);
    &(&alg.q(j) + &alg.q(-j)) / &(&d * &d)
}

pub fn casimir(alg: &'static Uq) -> CasimirData {
    let d = &alg.q(1) - &alg.q(-1);
    let d2inv = (&d * &d).inv().expect("nonzero");
    let k = AlgElem::k_pow(alg, 1);
    let kinv = AlgElem::k_pow(alg, -1);
    let tail = k
        .scale(&alg.q(-1))
        .add(&kinv.scale(&alg.q(1)))
        .scale(&d2inv);
    let element = AlgElem::e(alg).mul(&AlgElem::f(alg)).add(&tail);
    let p = alg.p as usize;
    let roots = (0..=p as i64).map(|j| beta(alg, j)).collect();
    let mut multiplicities = vec![2; p + 1];
    multiplicities[0] = 1;
    multiplicities[p] = 1;
    CasimirData {
        element,
        roots,
        multiplicities,
    }
}

/// The second displayed form `FE + (qK + q^{-1}K^{-1})/(q - q^{-1})^2`.
pub fn casimir_fe_form(alg: &'static Uq) -> AlgElem {
    let d = &alg.q(1) - &alg.q(-1);
    let d2inv = (&d * &d).inv().expect("nonzero");
    let tail = AlgElem::k_pow(alg, 1)
        .scale(&alg.q(1))
        .add(&AlgElem::k_pow(alg, -1).scale(&alg.q(-1)))
        .scale(&d2inv);
    AlgElem::f(alg).mul(&AlgElem::e(alg)).add(&tail)
}

/// Basis of the center, as the common kernel of `z ↦ zX - Xz` for the
/// generators `X`.
pub fn center_basis(alg: &'static Uq) -> Vec<AlgElem> {
    let dim = alg.dim();
    let gens = [AlgElem::e(alg), AlgElem::f(alg), AlgElem::g(alg)];
    // rows indexed by (generator, output monomial)
    let mut rows: BTreeMap<(usize, usize), SparseRow> = BTreeMap::new();
    for col in 0..dim {
        let m = AlgElem::mono_elem(alg, alg.mono(col));
        for (gi, g) in gens.iter().enumerate() {
            for (out, c) in m.commutator(g).iter() {
                rows.entry((gi, alg.index(out)))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
    }
    let mut e = Echelon::new(alg.order, dim);
    for (_, r) in rows {
        e.insert(r);
    }
    e.null_space()
        .into_iter()
        .map(|v| AlgElem::from_vec(alg, &v))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: u32,
    f: u32,
    k: u32,
    c: CycNum,
}

#[derive(Serialize, Deserialize)]
struct AlgElemRepr {
    p: u32,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    extended: bool,
    terms: Vec<TermRepr>,
}

impl Serialize for AlgElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgElemRepr {
            p: self.alg.p,
            extended: self.alg.extended,
            terms: self
                .iter()
                .map(|((e, f, k), c)| TermRepr { e, f, k, c: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = AlgElemRepr::deserialize(d)?;
        AlgElem::from_repr(r).map_err(D::Error::custom)
    }
}

impl AlgElem {
    fn from_repr(r: AlgElemRepr) -> Result<AlgElem> {
        if !(2..=8).contains(&r.p) {
            return Err(Error::OutOfRange(format!("p = {}", r.p)));
        }
        let alg = Uq::get(r.p, r.extended);
        let mut out = AlgElem::zero(alg);
        for t in r.terms {
            if t.e >= alg.p || t.f >= alg.p || t.k >= alg.gorder {
                return Err(Error::OutOfRange(format!(
                    "PBW index ({}, {}, {}) outside the basis",
                    t.e, t.f, t.k
                )));
            }
            if t.c.order() != alg.order {
                return Err(Error::OrderMismatch(t.c.order(), alg.order));
            }
            out.add_term([(t.e, t.f, t.k)], &t.c);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<AlgElem> {
        let r: AlgElemRepr = serde_json::from_str(s)?;
        AlgElem::from_repr(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32) -> &'static Uq {
        Uq::restricted(p)
    }

    #[test]
    fn basis_count() {
        for p in 2..=4 {
            assert_eq!(alg(p).dim(), 2 * (p * p * p) as usize);
        }
    }

    #[test]
    fn k_e_commutation() {
        let a = alg(3);
        let ke = AlgElem::g(a).mul(&AlgElem::e(a));
        let expected = AlgElem::monomial(a, [(1, 0, 1)], a.q(2));
        assert_eq!(ke, expected);
    }

    #[test]
    fn nilpotency() {
        let a = alg(2);
        assert!(AlgElem::e(a).mul(&AlgElem::e(a)).is_zero());
        assert!(AlgElem::f(a).mul(&AlgElem::f(a)).is_zero());
        assert_eq!(AlgElem::g(a).pow(4), AlgElem::one(a));
    }

    #[test]
    fn e_f_commutator() {
        for p in 2..=4 {
            let a = alg(p);
            let lhs = AlgElem::e(a).commutator(&AlgElem::f(a));
            let d = (&a.q(1) - &a.q(-1)).inv().unwrap();
            let rhs = AlgElem::k_pow(a, 1).sub(&AlgElem::k_pow(a, -1)).scale(&d);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coproduct_of_ef_matches_hand_expansion() {
        // (1⊗E + E⊗K)(K^{-1}⊗F + F⊗1) expanded factor by factor
        let a = alg(3);
        let one = CycNum::one(a.order);
        let km = (0, 0, 5);
        let mut hand = Tensor2::zero(a);
        // 1·K^{-1} ⊗ E·F
        hand.add_term([km, (1, 1, 0)], &one);
        // 1·F ⊗ E·1
        hand.add_term([(0, 1, 0), (1, 0, 0)], &one);
        // E·K^{-1} ⊗ K·F = E K^{-1} ⊗ q^{-2} F K
        hand.add_term([(1, 0, 5), (0, 1, 1)], &a.q(-2));
        // E·F ⊗ K·1
        hand.add_term([(1, 1, 0), (0, 0, 1)], &one);
        let ef = AlgElem::e(a).mul(&AlgElem::f(a));
        assert_eq!(ef.coproduct(), hand);
    }

    #[test]
    fn coproduct_of_k_and_unit() {
        let a = alg(2);
        let one = CycNum::one(a.order);
        assert_eq!(
            AlgElem::g(a).coproduct(),
            Tensor2::monomial(a, [(0, 0, 1), (0, 0, 1)], one.clone())
        );
        assert_eq!(AlgElem::one(a).coproduct(), Tensor2::one(a));
    }

    #[test]
    fn antipode_and_counit() {
        for p in 2..=3 {
            let a = alg(p);
            assert_eq!(AlgElem::g(a).antipode(), AlgElem::k_pow(a, -1));
            for l in 0..2 * p {
                assert!(AlgElem::mono_elem(a, (0, 0, l)).counit().is_one());
            }
            let k = AlgElem::k_pow(a, 1);
            let kinv = AlgElem::k_pow(a, -1);
            for x in [AlgElem::e(a), AlgElem::f(a), AlgElem::g(a)] {
                assert_eq!(x.antipode().antipode(), k.mul(&x).mul(&kinv));
            }
        }
    }

    #[test]
    fn hopf_axioms_small_p() {
        for p in 2..=3 {
            let r = verify_hopf(p);
            assert!(r.all_pass(), "{r:?}");
        }
    }

    #[test]
    fn perturbed_coproduct_fails() {
        let a = alg(2);
        let r = verify_hopf_with(a, &Coproduct::perturbed(a));
        let antipode_ok = r.checks.iter().find(|c| c.0 == "antipode").unwrap().1;
        let coassoc_ok = r.checks[0].1;
        assert!(!antipode_ok || !coassoc_ok);
        assert!(!r.all_pass());
    }

    #[test]
    fn casimir_roots_at_p2() {
        let a = alg(2);
        let c = casimir(a);
        let expected: Vec<CycNum> = ["-1/2", "0", "1/2"]
            .iter()
            .map(|s| CycNum::parse_expr(s, 4).unwrap())
            .collect();
        assert_eq!(c.roots, expected);
    }

    #[test]
    fn casimir_forms_agree_and_minimal_polynomial_vanishes() {
        for p in 2..=3 {
            let a = alg(p);
            let c = casimir(a);
            assert_eq!(c.element, casimir_fe_form(a));
            assert!(c.element.eval_poly(&c.minimal_polynomial()).is_zero());
            for j in 0..c.roots.len() {
                let mut m = c.multiplicities.clone();
                m[j] -= 1;
                assert!(!c.element.eval_poly(&c.polynomial_with(&m)).is_zero());
            }
        }
    }

    #[test]
    fn center_dimensions() {
        for p in 2..=3 {
            let a = alg(p);
            let z = center_basis(a);
            assert_eq!(z.len(), (3 * p - 1) as usize);
            for x in &z {
                assert!(x.commutator(&AlgElem::e(a)).is_zero());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = alg(2);
        let c = casimir(a).element;
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(AlgElem::from_json(&s).unwrap(), c);
        assert!(AlgElem::from_json(r#"{"p":2,"terms":[{"e":2,"f":0,"k":0,"c":{"order":4,"coeffs":["1","0"]}}]}"#).is_err());
    }

    #[test]
    fn extended_algebra_relations() {
        let a = Uq::extended(2);
        assert_eq!(a.dim(), 32);
        let k = AlgElem::g(a);
        let kinv = AlgElem::mono_elem(a, (0, 0, 7));
        // k E k^{-1} = q E with q = ζ_8^2
        assert_eq!(k.mul(&AlgElem::e(a)).mul(&kinv), AlgElem::e(a).scale(&a.q(1)));
        assert!(verify_hopf_with(a, &Coproduct::standard(a)).all_pass());
    }
}
