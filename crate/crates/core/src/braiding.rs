//! The R-matrix and ribbon element at p = 2, on the extended algebra with
//! `k^2 = K` over `Q(ζ_8)`, and the braiding they induce on modules.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{antipode, center_basis, verify_hopf, AlgElem, Coproduct, Mono, Tensor2, Tensor3, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modules::{irreducible, QMod, Sign};

/// The only root of unity where R and v are available.
pub const P: u32 = 2;
const ORDER: u32 = 8;

pub fn require_p2(p: u32) -> Result<()> {
    if p != P {
        return Err(Error::OutOfRange(format!(
            "braiding is only available at p = 2 (got p = {p})"
        )));
    }
    Ok(())
}

fn alg() -> &'static Uq {
    Uq::extended(P)
}

fn z8(n: i64) -> CycNum {
    CycNum::root_pow(ORDER, n)
}

fn int(n: i64) -> CycNum {
    CycNum::from_int(ORDER, n)
}

/// `R = 1/8 Σ_{n,m} (ζ^{-nm} k^n⊗k^m + 2 ζ^{2n-2m-nm+2} E k^n ⊗ F k^m)`, `ζ = ζ_8`.
pub fn r_matrix() -> Tensor2 {
    let a = alg();
    let eighth = int(8).inv().expect("nonzero");
    let mut r = Tensor2::zero(a);
    for n in 0..8i64 {
        for m in 0..8i64 {
            let (nu, mu) = (n as u32, m as u32);
            r.add_term([(0, 0, nu), (0, 0, mu)], &(&z8(-n * m) * &eighth));
            let c = &(&z8(2 * n - 2 * m - n * m + 2) * &int(2)) * &eighth;
            r.add_term([(1, 0, nu), (0, 1, mu)], &c);
        }
    }
    r
}

/// `(S ⊗ id)(R)`.
pub fn r_inverse(r: &Tensor2) -> Tensor2 {
    let a = r.algebra();
    let mut out = Tensor2::zero(a);
    for (k, c) in &r.terms {
        for (m, v) in antipode(&AlgElem::mono_elem(a, k[0])).iter() {
            out.add_term([m, k[1]], &(v * c));
        }
    }
    out
}

/// The ribbon element, written in `E`, `F`, `K = k^2`.
pub fn ribbon() -> AlgElem {
    let a = alg();
    let i = z8(2);
    let one = int(1);
    let sqrt2 = &z8(1) + &z8(-1);
    let pre = &(&one - &i) / &(&int(2) * &sqrt2);
    let k = AlgElem::k_pow(a, 1);
    let k2 = AlgElem::k_pow(a, 2);
    let unit = AlgElem::scalar(a, one);
    let fe = AlgElem::f(a).mul(&AlgElem::e(a));
    let plus = unit.add(&k2);
    let minus = unit.sub(&k2);
    let first = AlgElem::scalar(a, z8(1))
        .sub(&k.mul(&fe).scale(&(&int(2) * &z8(-1))))
        .mul(&plus);
    let second = k.add(&fe.scale(&(&int(2) * &i))).mul(&minus);
    first.add(&second).scale(&pre)
}

fn embed3(t: &Tensor2, slots: [usize; 2]) -> Tensor3 {
    let mut out = Tensor3::zero(t.algebra());
    for (k, c) in &t.terms {
        let mut key = [(0, 0, 0); 3];
        key[slots[0]] = k[0];
        key[slots[1]] = k[1];
        out.add_term(key, c);
    }
    out
}

fn tensor_pair(x: &AlgElem, y: &AlgElem) -> Tensor2 {
    let mut out = Tensor2::zero(x.algebra());
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term([a, b], &(ca * cb));
        }
    }
    out
}

/// Outcome of each exact check on `R` and `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BraidingReport {
    pub hopf_extended: bool,
    pub intertwines_e: bool,
    pub intertwines_f: bool,
    pub intertwines_k: bool,
    pub hexagon_left: bool,
    pub hexagon_right: bool,
    pub invertible: bool,
    pub ribbon_central: bool,
    pub ribbon_in_center: bool,
    pub ribbon_trivial: bool,
    pub ribbon_axiom: bool,
}

impl BraidingReport {
    pub fn all_pass(&self) -> bool {
        self.hopf_extended
            && self.intertwines_e
            && self.intertwines_f
            && self.intertwines_k
            && self.hexagon_left
            && self.hexagon_right
            && self.invertible
            && self.ribbon_central
            && self.ribbon_in_center
            && self.ribbon_trivial
            && self.ribbon_axiom
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let all = [
            ("hopf_extended", self.hopf_extended),
            ("intertwines_e", self.intertwines_e),
            ("intertwines_f", self.intertwines_f),
            ("intertwines_k", self.intertwines_k),
            ("hexagon_left", self.hexagon_left),
            ("hexagon_right", self.hexagon_right),
            ("invertible", self.invertible),
            ("ribbon_central", self.ribbon_central),
            ("ribbon_in_center", self.ribbon_in_center),
            ("ribbon_trivial", self.ribbon_trivial),
            ("ribbon_axiom", self.ribbon_axiom),
        ];
        all.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

/// `R Δ(x) = Δ^op(x) R` for a generator `x`.
pub fn intertwines(r: &Tensor2, x: &AlgElem) -> bool {
    let d = Coproduct::standard(x.algebra()).apply(x);
    r.mul(&d) == d.permute([1, 0]).mul(r)
}

pub fn verify_quasitriangular(r: &Tensor2, rep: &mut BraidingReport) {
    let a = r.algebra();
    let delta = Coproduct::standard(a);
    rep.intertwines_e = intertwines(r, &AlgElem::e(a));
    rep.intertwines_f = intertwines(r, &AlgElem::f(a));
    rep.intertwines_k = intertwines(r, &AlgElem::g(a));
    let r12 = embed3(r, [0, 1]);
    let r13 = embed3(r, [0, 2]);
    let r23 = embed3(r, [1, 2]);
    rep.hexagon_left = delta.left(r) == r13.mul(&r23);
    rep.hexagon_right = delta.right(r) == r13.mul(&r12);
    let ri = r_inverse(r);
    let one = Tensor2::one(a);
    rep.invertible = r.mul(&ri) == one && ri.mul(r) == one;
}

/// Restricted center basis carried into the extended algebra (`K ↦ k^2`).
pub fn center_in_extended() -> Vec<AlgElem> {
    let a = alg();
    center_basis(Uq::restricted(P))
        .iter()
        .map(|z| {
            let mut out = AlgElem::zero(a);
            for ((i, j, l), c) in z.iter() {
                out.add_term([(i, j, 2 * l)], &c.embed(ORDER).expect("order divides 8"));
            }
            out
        })
        .collect()
}

/// Coefficients of `v` on `basis`, if it lies in their span.
pub fn span_coordinates(v: &AlgElem, basis: &[AlgElem]) -> Option<Vec<CycNum>> {
    let cols: Vec<Vec<CycNum>> = basis.iter().map(AlgElem::to_vec).collect();
    let dim = v.algebra().dim();
    let m = Matrix::from_cols(ORDER, dim, &cols);
    let b = Matrix::from_cols(ORDER, dim, &[v.to_vec()]);
    m.solve(&b).map(|x| x.col(0))
}

pub fn verify_ribbon(r: &Tensor2, v: &AlgElem, rep: &mut BraidingReport) {
    let a = v.algebra();
    rep.ribbon_central = [AlgElem::e(a), AlgElem::f(a), AlgElem::g(a)]
        .iter()
        .all(|x| v.commutator(x).is_zero());
    rep.ribbon_in_center = span_coordinates(v, &center_in_extended()).is_some();
    rep.ribbon_trivial = v.counit().is_one();
    let ri = r_inverse(r);
    let r21i = ri.permute([1, 0]);
    let rhs = ri.mul(&r21i).mul(&tensor_pair(v, v));
    rep.ribbon_axiom = Coproduct::standard(a).apply(v) == rhs;
}

/// Runs every check on `R` and `v`.
pub fn verify_all() -> BraidingReport {
    let mut rep = BraidingReport {
        hopf_extended: verify_hopf_extended(),
        ..Default::default()
    };
    let r = r_matrix();
    verify_quasitriangular(&r, &mut rep);
    verify_ribbon(&r, &ribbon(), &mut rep);
    rep
}

fn verify_hopf_extended() -> bool {
    let a = alg();
    crate::algebra::verify_hopf_with(a, &Coproduct::standard(a)).all_pass() && verify_hopf(P).all_pass()
}

/// Exponents `κ_i` with `k v_i = ζ_8^{κ_i} v_i`. In each connected component
/// the first vector gets `κ ≡ w (mod 8)` for `Plus`, `w + 4` for `Minus`;
/// the rest follow from `kE = qEk`, `kF = q^{-1}Fk`.
pub fn k_action(m: &QMod, choice: Sign) -> Result<Vec<u32>> {
    require_p2(m.p)?;
    let n = m.dim();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (i, j, _) in m.e.triplets() {
        adj[j].push((i, 2));
        adj[i].push((j, -2));
    }
    for (i, j, _) in m.f.triplets() {
        adj[j].push((i, -2));
        adj[i].push((j, 2));
    }
    let mut kappa: Vec<Option<i64>> = vec![None; n];
    for seed in 0..n {
        if kappa[seed].is_some() {
            continue;
        }
        let base = m.weights[seed] as i64 + if choice == Sign::Minus { 4 } else { 0 };
        kappa[seed] = Some(base);
        let mut queue = VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            let ku = kappa[u].expect("visited");
            for &(v, step) in &adj[u] {
                let want = (ku + step).rem_euclid(8);
                match kappa[v] {
                    None => {
                        kappa[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(kv) if kv.rem_euclid(8) != want => {
                        return Err(Error::NoKAction(format!(
                            "basis vectors {u} and {v} force different square roots of K"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(kappa
        .into_iter()
        .map(|k| k.expect("all visited").rem_euclid(8) as u32)
        .collect())
}

/// A module together with a chosen `k`-action, over `Q(ζ_8)`.
#[derive(Clone, Debug)]
pub struct KModule {
    pub module: QMod,
    pub kappa: Vec<u32>,
    e: Matrix,
    f: Matrix,
}

impl KModule {
    pub fn new(module: &QMod, choice: Sign) -> Result<KModule> {
        let kappa = k_action(module, choice)?;
        KModule::with_kappa(module, kappa)
    }

    pub fn with_kappa(module: &QMod, kappa: Vec<u32>) -> Result<KModule> {
        require_p2(module.p)?;
        if kappa.len() != module.dim() {
            return Err(Error::Invalid("k-action has the wrong length".into()));
        }
        for (&k, &w) in kappa.iter().zip(&module.weights) {
            if k % 4 != w % 4 {
                return Err(Error::NoKAction(format!("ζ_8^{k} does not square to q^{w}")));
            }
        }
        let up = |x: &Matrix| x.embed(ORDER).expect("order divides 8");
        Ok(KModule {
            e: up(&module.e),
            f: up(&module.f),
            module: module.clone(),
            kappa,
        })
    }

    pub fn dim(&self) -> usize {
        self.kappa.len()
    }

    pub fn k_pow(&self, l: u32) -> Matrix {
        let d: Vec<CycNum> = self.kappa.iter().map(|&k| z8((k * l) as i64)).collect();
        Matrix::diag(ORDER, &d)
    }

    pub fn mono(&self, (i, j, l): Mono) -> Matrix {
        self.e.pow(i).mul(&self.f.pow(j)).mul(&self.k_pow(l))
    }

    pub fn act(&self, x: &AlgElem) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(ORDER, n, n);
        for (m, c) in x.iter() {
            out = out.add(&self.mono(m).scale(c));
        }
        out
    }

    /// The tensor product with the grouplike `k ↦ k⊗k`.
    pub fn tensor(&self, o: &KModule) -> KModule {
        let module = self.module.tensor(&o.module);
        let kappa = self
            .kappa
            .iter()
            .flat_map(|&a| o.kappa.iter().map(move |&b| (a + b) % 8))
            .collect();
        KModule::with_kappa(&module, kappa).expect("k-action of a tensor product")
    }
}

fn act2(t: &Tensor2, a: &KModule, b: &KModule) -> Matrix {
    let n = a.dim() * b.dim();
    let mut out = Matrix::zeros(ORDER, n, n);
    let mut cache: BTreeMap<Mono, Matrix> = BTreeMap::new();
    for (k, c) in &t.terms {
        let left = cache.entry(k[0]).or_insert_with(|| a.mono(k[0])).clone();
        let right = b.mono(k[1]);
        out = out.add(&left.kron(&right).scale(c));
    }
    out
}

/// Permutation `V1⊗V2 → V2⊗V1`.
pub fn flip(d1: usize, d2: usize) -> Matrix {
    let mut out = Matrix::zeros(ORDER, d1 * d2, d1 * d2);
    for i in 0..d1 {
        for j in 0..d2 {
            out.set(j * d1 + i, i * d2 + j, int(1));
        }
    }
    out
}

/// `c = τ ∘ R : V1⊗V2 → V2⊗V1`.
pub fn braid_kmodules(a: &KModule, b: &KModule) -> Matrix {
    flip(a.dim(), b.dim()).mul(&act2(&r_matrix(), a, b))
}

/// The braiding on `m1⊗m2`, with the same square-root choice on both.
pub fn braid_action(m1: &QMod, m2: &QMod, choice: Sign) -> Result<Matrix> {
    let a = KModule::new(m1, choice)?;
    let b = KModule::new(m2, choice)?;
    Ok(braid_kmodules(&a, &b))
}

/// `c_{V2,V1} ∘ c_{V1,V2}` on `V1⊗V2`.
pub fn monodromy(m1: &QMod, m2: &QMod, choice: Sign) -> Result<Matrix> {
    let a = KModule::new(m1, choice)?;
    let b = KModule::new(m2, choice)?;
    Ok(braid_kmodules(&b, &a).mul(&braid_kmodules(&a, &b)))
}

/// Whether `phi` intertwines `E`, `F` and `k` between two k-modules
/// (tensor products act through the coproduct).
pub fn is_k_intertwiner(src: &KModule, dst: &KModule, phi: &Matrix) -> bool {
    let a = alg();
    [AlgElem::e(a), AlgElem::f(a), AlgElem::g(a)]
        .iter()
        .all(|x| phi.mul(&src.act(x)) == dst.act(x).mul(phi))
}

/// Scalar by which `v` acts on `X^a_s`, if it acts by a scalar.
pub fn ribbon_scalar(a: Sign, s: u32) -> Result<CycNum> {
    let x = irreducible(P, a, s)?;
    let km = KModule::new(&x, Sign::Plus)?;
    let m = km.act(&ribbon());
    let c = m.get(0, 0).clone();
    if m != Matrix::identity(ORDER, km.dim()).scale(&c) {
        return Err(Error::Classification(format!("v is not scalar on X{a}_{s}")));
    }
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct TensorTerm {
    left: [u32; 3],
    right: [u32; 3],
    c: CycNum,
}

/// Term list of an element of the extended tensor square.
#[derive(Serialize, Deserialize)]
pub struct Tensor2Repr {
    p: u32,
    extended: bool,
    terms: Vec<TensorTerm>,
}

impl Tensor2Repr {
    pub fn from_tensor(t: &Tensor2) -> Tensor2Repr {
        Tensor2Repr {
            p: t.p(),
            extended: t.algebra().extended,
            terms: t
                .terms
                .iter()
                .map(|(k, c)| TensorTerm {
                    left: [k[0].0, k[0].1, k[0].2],
                    right: [k[1].0, k[1].1, k[1].2],
                    c: c.clone(),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor2> {
        if !(2..=8).contains(&self.p) {
            return Err(Error::OutOfRange(format!("p = {}", self.p)));
        }
        let a = Uq::get(self.p, self.extended);
        let mut out = Tensor2::zero(a);
        for t in &self.terms {
            for m in [t.left, t.right] {
                if m[0] >= a.p || m[1] >= a.p || m[2] >= a.gorder {
                    return Err(Error::OutOfRange(format!("PBW index {m:?} outside the basis")));
                }
            }
            if t.c.order() != a.order {
                return Err(Error::OrderMismatch(t.c.order(), a.order));
            }
            let l = (t.left[0], t.left[1], t.left[2]);
            let r = (t.right[0], t.right[1], t.right[2]);
            out.add_term([l, r], &t.c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_matrix_axioms() {
        let rep = verify_all();
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn ribbon_on_irreducibles() {
        // on a highest-weight vector FE = 0, so v reduces to its K-part
        let expect = [
            (Sign::Plus, 1, z8(0)),
            (Sign::Plus, 2, z8(1)),
            (Sign::Minus, 1, z8(0)),
            (Sign::Minus, 2, z8(5)),
        ];
        for (a, s, c) in expect {
            assert_eq!(ribbon_scalar(a, s).unwrap(), c, "X{a}_{s}");
        }
    }

    #[test]
    fn monodromy_is_intertwiner() {
        for a in Sign::both() {
            for b in Sign::both() {
                for s in 1..=2 {
                    for t in 1..=2 {
                        let m1 = irreducible(P, a, s).unwrap();
                        let m2 = irreducible(P, b, t).unwrap();
                        for ch in Sign::both() {
                            let k1 = KModule::new(&m1, ch).unwrap();
                            let k2 = KModule::new(&m2, ch).unwrap();
                            let c = braid_kmodules(&k1, &k2);
                            assert!(is_k_intertwiner(&k1.tensor(&k2), &k2.tensor(&k1), &c));
                            let mono = braid_kmodules(&k2, &k1).mul(&c);
                            let t12 = k1.tensor(&k2);
                            assert!(is_k_intertwiner(&t12, &t12, &mono));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_module_braids_by_flip() {
        let triv = irreducible(P, Sign::Plus, 1).unwrap();
        let x = irreducible(P, Sign::Minus, 2).unwrap();
        let c = braid_action(&triv, &x, Sign::Plus).unwrap();
        assert_eq!(c, flip(1, x.dim()));
    }

    #[test]
    fn tensor_json_round_trip() {
        let r = r_matrix();
        let s = serde_json::to_string(&Tensor2Repr::from_tensor(&r)).unwrap();
        let back: Tensor2Repr = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_tensor().unwrap(), r);
    }

    #[test]
    fn rejects_other_p() {
        assert!(require_p2(3).is_err());
        let x = irreducible(3, Sign::Plus, 2).unwrap();
        assert!(k_action(&x, Sign::Plus).is_err());
    }
}
