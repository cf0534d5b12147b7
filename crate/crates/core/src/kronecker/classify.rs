//! Exact Kronecker canonical form of a pencil `(r, r̄)`.
//!
//! Minimal indices come from kernels of the block matrices whose null vectors
//! are polynomial solutions of `(r + t r̄) v(t) = 0`. The regular part is
//! read off from the gcd of random projected maximal minors of `μ r − r̄`
//! and block Toeplitz kernels at each eigenvalue. Eigenvalue candidates are
//! located numerically and accepted only after exact verification.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuiverRep;
use crate::cyclotomic::{euler_phi, CycNum};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::modules::Cp1;
use crate::poly::{complex_roots, Poly};
use crate::rational::Rat;

/// Indecomposable Kronecker modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KronKind {
    /// `ρ_n`, dims `(n+1, n)`.
    Rho(usize),
    /// `ρ̄_n`, dims `(n, n+1)`.
    RhoBar(usize),
    Regular { n: usize, z: Cp1 },
}

impl KronKind {
    pub fn rep(&self, order: u32) -> QuiverRep {
        match self {
            KronKind::Rho(n) => QuiverRep::rho(order, *n),
            KronKind::RhoBar(n) => QuiverRep::rho_bar(order, *n),
            KronKind::Regular { n, z } => QuiverRep::regular(order, *n, z),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            KronKind::Rho(n) => (n + 1, *n),
            KronKind::RhoBar(n) => (*n, n + 1),
            KronKind::Regular { n, .. } => (*n, *n),
        }
    }

    fn sort_key(&self) -> (u8, String, usize) {
        match self {
            KronKind::Rho(n) => (0, String::new(), *n),
            KronKind::RhoBar(n) => (1, String::new(), *n),
            KronKind::Regular { n, z } => (2, z.to_string(), *n),
        }
    }
}

impl fmt::Display for KronKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KronKind::Rho(n) => write!(f, "rho_{n}"),
            KronKind::RhoBar(n) => write!(f, "rhobar_{n}"),
            KronKind::Regular { n, z } => write!(f, "reg_{n}({z})"),
        }
    }
}

/// A decomposition `rep ≅ ⊕ kinds`, with the isomorphism `(t0, t1)` from
/// `rep` onto `canonical()`.
#[derive(Clone, Debug)]
pub struct QuiverDecomp {
    /// Distinct kinds in canonical order with multiplicities.
    pub summands: Vec<(KronKind, usize)>,
    pub t0: Matrix,
    pub t1: Matrix,
}

impl QuiverDecomp {
    /// Kinds repeated by multiplicity, in the order of `canonical()`.
    pub fn expanded(&self) -> Vec<KronKind> {
        self.summands
            .iter()
            .flat_map(|(k, m)| std::iter::repeat_n(k.clone(), *m))
            .collect()
    }

    pub fn canonical(&self, order: u32) -> QuiverRep {
        let reps: Vec<QuiverRep> = self.expanded().iter().map(|k| k.rep(order)).collect();
        QuiverRep::direct_sum_many(order, &reps)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1 && self.summands[0].1 == 1
    }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6b72_6f6e)
}

fn random_matrix(order: u32, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(order, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, CycNum::from_int(order, rng.gen_range(-4..=4)));
        }
    }
    m
}

/// `dim ker` of the matrix whose null vectors are coefficient lists of
/// polynomial solutions of degree ≤ k of `(r + t r̄) v = 0`.
fn poly_kernel_dim(r: &Matrix, rbar: &Matrix, k: usize) -> usize {
    let (d1, d0) = (r.rows, r.cols);
    let mut m = Matrix::zeros(r.order, (k + 2) * d1, (k + 1) * d0);
    for i in 0..=k {
        m.paste(i * d1, i * d0, r);
        m.paste((i + 1) * d1, i * d0, rbar);
    }
    (k + 1) * d0 - m.rank()
}

/// Column minimal indices, i.e. the `n` of the `ρ_n` summands.
fn minimal_indices(r: &Matrix, rbar: &Matrix) -> Vec<usize> {
    let d0 = r.cols;
    if d0 == 0 {
        return Vec::new();
    }
    // Number of ρ summands is the generic kernel dimension.
    let mut rng = rng();
    let generic_rank = (0..3)
        .map(|_| {
            let mu = CycNum::from_int(r.order, rng.gen_range(-1000..=1000));
            r.add(&rbar.scale(&mu)).rank()
        })
        .max()
        .unwrap_or(0);
    let total = d0 - generic_rank;
    let mut out = Vec::new();
    let (mut c2, mut c1) = (0usize, 0usize);
    let mut k = 0;
    while out.len() < total {
        let c = poly_kernel_dim(r, rbar, k);
        let count = c + c2 - 2 * c1;
        out.extend(std::iter::repeat_n(k, count));
        c2 = c1;
        c1 = c;
        k += 1;
        assert!(k <= d0 + 1, "minimal index search did not terminate");
    }
    out
}

/// `det(U (μ r − r̄) V)` as a polynomial in μ, for square projections of size `g`.
fn projected_det(r: &Matrix, rbar: &Matrix, u: &Matrix, v: &Matrix) -> Poly {
    let order = r.order;
    let (ur, urb) = (u.mul(r).mul(v), u.mul(rbar).mul(v));
    let g = ur.rows;
    let xs: Vec<CycNum> = (0..=g as i64).map(|i| CycNum::from_int(order, i)).collect();
    let ys: Vec<CycNum> = xs.iter().map(|mu| ur.scale(mu).sub(&urb).det()).collect();
    Poly::interpolate(order, &xs, &ys)
}

/// The product of the finite elementary divisors of the pencil `μ r − r̄`.
fn finite_char_poly(r: &Matrix, rbar: &Matrix, g: usize) -> Poly {
    let order = r.order;
    if g == 0 {
        return Poly::constant(CycNum::one(order));
    }
    let mut rng = rng();
    let mut acc: Option<Poly> = None;
    let mut stable = 0;
    for _ in 0..12 {
        let u = random_matrix(order, g, r.rows, &mut rng);
        let v = random_matrix(order, r.cols, g, &mut rng);
        let d = projected_det(r, rbar, &u, &v);
        if d.is_zero() {
            continue;
        }
        let next = match &acc {
            None => d.monic(),
            Some(a) => a.gcd(&d),
        };
        if acc.as_ref() == Some(&next) {
            stable += 1;
            if stable >= 2 {
                break;
            }
        } else {
            stable = 0;
        }
        acc = Some(next);
    }
    acc.unwrap_or_else(|| Poly::constant(CycNum::one(order)))
}

/// Sizes of the Jordan blocks at `z`, given the number of `ρ` summands.
fn jordan_sizes(r: &Matrix, rbar: &Matrix, z: &Cp1, n_rho: usize, mult: usize) -> Vec<usize> {
    let order = r.order;
    // A(t) = (z2 + t w2) r − (z1 + t w1) r̄ with w transverse to z.
    let (w1, w2) = if z.z1.is_zero() {
        (CycNum::one(order), CycNum::zero(order))
    } else {
        (CycNum::zero(order), CycNum::one(order))
    };
    let a0 = r.scale(&z.z2).sub(&rbar.scale(&z.z1));
    let a1 = r.scale(&w2).sub(&rbar.scale(&w1));
    let (d1, d0) = (r.rows, r.cols);
    let g = |k: usize| -> usize {
        let mut t = Matrix::zeros(order, k * d1, k * d0);
        for i in 0..k {
            t.paste(i * d1, i * d0, &a0);
            if i + 1 < k {
                t.paste((i + 1) * d1, i * d0, &a1);
            }
        }
        k * d0 - t.rank() - k * n_rho
    };
    // b[k] = number of blocks of size ≥ k.
    let mut b = vec![0usize];
    let mut prev = 0;
    for k in 1..=mult + 1 {
        let gk = g(k);
        b.push(gk - prev);
        prev = gk;
        if b[k] == 0 {
            break;
        }
    }
    b.push(0);
    let mut sizes = Vec::new();
    for k in 1..b.len() - 1 {
        let count = b[k].saturating_sub(b[k + 1]);
        sizes.extend(std::iter::repeat_n(k, count));
    }
    sizes
}

/// Small real Gaussian elimination for the candidate coordinates.
fn solve_real(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[piv][c].abs() < 1e-12 {
            return None;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for i in 0..n {
            if i != c {
                let f = a[i][c] / a[c][c];
                for j in c..n {
                    a[i][j] -= f * a[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Roots in `Q(ζ_N)` of a squarefree polynomial.
pub fn field_roots(sf: &Poly) -> Vec<CycNum> {
    let order = sf.order;
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let phi = euler_phi(order);
    let ks: Vec<i64> = (1..=(order as i64) / 2)
        .filter(|&k| num_integer::gcd(k, order as i64) == 1)
        .collect();
    let root_sets: Vec<Vec<Complex64>> = ks.iter().map(|&k| complex_roots(&sf.to_complex_at(k))).collect();
    let angle = |k: i64, i: usize| 2.0 * std::f64::consts::PI * (k * i as i64) as f64 / order as f64;
    let mut found: Vec<CycNum> = Vec::new();
    let mut choice = vec![0usize; ks.len()];
    let deg = root_sets[0].len();
    // Odometer over root choices for the non-principal embeddings.
    'outer: loop {
        let mut a = Vec::new();
        let mut rhs = Vec::new();
        for (e, &k) in ks.iter().enumerate() {
            let z = root_sets[e][choice[e]];
            a.push((0..phi).map(|i| angle(k, i).cos()).collect());
            rhs.push(z.re);
            a.push((0..phi).map(|i| angle(k, i).sin()).collect());
            rhs.push(z.im);
        }
        if let Some(c) = solve_real(a, rhs) {
            let coeffs: Option<Vec<Rat>> = c.iter().map(|&x| Rat::approximate(x, 1_000_000)).collect();
            if let Some(coeffs) = coeffs {
                let lam = CycNum::from_coeffs(order, coeffs);
                if !found.contains(&lam) && sf.eval(&lam).is_zero() {
                    found.push(lam);
                    if found.len() == deg {
                        break 'outer;
                    }
                }
            }
        }
        for e in 0..ks.len() {
            choice[e] += 1;
            if choice[e] < deg {
                continue 'outer;
            }
            choice[e] = 0;
        }
        break;
    }
    found
}

/// All morphisms `a → b` as a basis of pairs `(t0, t1)`.
pub fn morphism_space(a: &QuiverRep, b: &QuiverRep) -> Vec<(Matrix, Matrix)> {
    let order = a.order();
    let n0 = b.d0 * a.d0;
    let n = n0 + b.d1 * a.d1;
    let v0 = |i: usize, j: usize| i * a.d0 + j;
    let v1 = |i: usize, j: usize| n0 + i * a.d1 + j;
    let mut ech = Echelon::new(order, n);
    for (ra, rb) in [(&a.r, &b.r), (&a.rbar, &b.rbar)] {
        for i in 0..b.d1 {
            for j in 0..a.d0 {
                let mut row: SparseRow = Vec::new();
                for k in 0..a.d1 {
                    let c = ra.get(k, j);
                    if !c.is_zero() {
                        row.push((v1(i, k), c.clone()));
                    }
                }
                for k in 0..b.d0 {
                    let c = rb.get(i, k);
                    if !c.is_zero() {
                        row.push((v0(k, j), -c));
                    }
                }
                row.sort_by_key(|e| e.0);
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    ech.null_space()
        .into_iter()
        .map(|x| {
            let mut t0 = Matrix::zeros(order, b.d0, a.d0);
            let mut t1 = Matrix::zeros(order, b.d1, a.d1);
            for i in 0..b.d0 {
                for j in 0..a.d0 {
                    t0.set(i, j, x[v0(i, j)].clone());
                }
            }
            for i in 0..b.d1 {
                for j in 0..a.d1 {
                    t1.set(i, j, x[v1(i, j)].clone());
                }
            }
            (t0, t1)
        })
        .collect()
}

fn random_combination(basis: &[(Matrix, Matrix)], a: &QuiverRep, b: &QuiverRep, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let order = a.order();
    let mut t0 = Matrix::zeros(order, b.d0, a.d0);
    let mut t1 = Matrix::zeros(order, b.d1, a.d1);
    for (m0, m1) in basis {
        let c = CycNum::from_int(order, rng.gen_range(-50..=50));
        t0 = t0.add(&m0.scale(&c));
        t1 = t1.add(&m1.scale(&c));
    }
    (t0, t1)
}

/// An isomorphism `a → b`, if one is found by sampling `Hom(a, b)`.
pub fn conjugate(a: &QuiverRep, b: &QuiverRep) -> Option<(Matrix, Matrix)> {
    if (a.d0, a.d1) != (b.d0, b.d1) || a.order() != b.order() {
        return None;
    }
    let basis = morphism_space(a, b);
    let mut rng = rng();
    for _ in 0..16 {
        let (t0, t1) = random_combination(&basis, a, b, &mut rng);
        if t0.is_invertible() && t1.is_invertible() {
            return Some((t0, t1));
        }
    }
    None
}

fn trace(m: &Matrix) -> CycNum {
    let mut t = CycNum::zero(m.order);
    for i in 0..m.rows.min(m.cols) {
        t += m.get(i, i);
    }
    t
}

/// Independent indecomposability test: `rep` is indecomposable iff `End(rep)`
/// is local. The radical `J` is the kernel of the trace form; `End/J` is
/// commutative for every Kronecker indecomposable, and it is a field iff the
/// minimal polynomial of a generic element modulo `J` is irreducible. That is
/// decided exactly when this polynomial has degree ≤ 3 or a root in the
/// field; otherwise `None`.
pub fn indecomposable_by_endomorphisms(rep: &QuiverRep) -> Option<bool> {
    let d = rep.d0 + rep.d1;
    if d == 0 {
        return Some(false);
    }
    let order = rep.order();
    let basis: Vec<Matrix> = morphism_space(rep, rep)
        .into_iter()
        .map(|(t0, t1)| Matrix::block_diag(order, &[&t0, &t1]))
        .collect();
    let n = basis.len();
    // Trace-form coordinates: x ↦ (tr(x b_l))_l, with kernel J.
    let coords = |x: &Matrix| -> Vec<CycNum> { basis.iter().map(|b| trace(&x.mul(b))).collect() };
    let gram = Matrix::from_rows(order, basis.iter().map(&coords).collect());
    let k = gram.rank();
    if k <= 1 {
        return Some(true);
    }
    for i in 0..n {
        for j in i + 1..n {
            let comm = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
            if coords(&comm).iter().any(|c| !c.is_zero()) {
                return Some(false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0065_6e64);
    for _ in 0..4 {
        let mut x = Matrix::zeros(order, d, d);
        for b in &basis {
            x = x.add(&b.scale(&CycNum::from_int(order, rng.gen_range(-50..=50))));
        }
        // Powers of x modulo J until the first dependence.
        let mut powers = vec![coords(&Matrix::identity(order, d))];
        let mut xp = Matrix::identity(order, d);
        let relation = loop {
            xp = xp.mul(&x);
            let v = coords(&xp);
            let m = Matrix::from_cols(order, n, &powers);
            if let Some(sol) = m.solve(&Matrix::from_cols(order, n, std::slice::from_ref(&v))) {
                break sol.col(0);
            }
            powers.push(v);
        };
        if relation.len() < k {
            continue;
        }
        let mut coeffs: Vec<CycNum> = relation.iter().map(|c| -c).collect();
        coeffs.push(CycNum::one(order));
        let minpoly = Poly::new(order, coeffs);
        if !field_roots(&minpoly).is_empty() {
            return Some(false);
        }
        return if k <= 3 { Some(true) } else { None };
    }
    None
}

/// Kronecker decomposition with an isomorphism certificate.
pub fn classify(rep: &QuiverRep) -> Result<QuiverDecomp> {
    let order = rep.order();
    let (r, rbar) = (&rep.r, &rep.rbar);
    let rho = minimal_indices(r, rbar);
    let rho_bar = minimal_indices(&r.transpose(), &rbar.transpose());
    let used0: usize = rho.iter().map(|n| n + 1).sum::<usize>() + rho_bar.iter().sum::<usize>();
    let used1: usize = rho.iter().sum::<usize>() + rho_bar.iter().map(|n| n + 1).sum::<usize>();
    if used0 > rep.d0 || used1 > rep.d1 || rep.d0 - used0 != rep.d1 - used1 {
        return Err(Error::Classification("inconsistent minimal indices".into()));
    }
    let dreg = rep.d0 - used0;
    let mut kinds: Vec<KronKind> = rho.iter().map(|&n| KronKind::Rho(n)).collect();
    kinds.extend(rho_bar.iter().map(|&n| KronKind::RhoBar(n)));
    if dreg > 0 {
        let generic = used1 - rho_bar.len() + dreg;
        let chi = finite_char_poly(r, rbar, generic);
        let deg = chi.degree().unwrap_or(0);
        if deg > dreg {
            return Err(Error::Classification("characteristic polynomial too large".into()));
        }
        let sf = chi.squarefree();
        let roots = field_roots(&sf);
        let mut covered = 0;
        let mut rest = chi.clone();
        for lam in &roots {
            let m = chi.root_multiplicity(lam);
            let z = Cp1::affine(lam.clone());
            let sizes = jordan_sizes(r, rbar, &z, rho.len(), m);
            if sizes.iter().sum::<usize>() != m {
                return Err(Error::Classification(format!("Jordan structure at {z}")));
            }
            covered += m;
            rest = rest.divrem(&Poly::linear(lam).pow(m as u32)).0;
            kinds.extend(sizes.into_iter().map(|n| KronKind::Regular { n, z: z.clone() }));
        }
        if covered < deg {
            let shown: Vec<String> = rest.coeffs.iter().map(|c| c.to_string()).collect();
            return Err(Error::EigenvalueOutsideField(format!(
                "eigenvalues outside Q(zeta_{order}); unresolved factor with coefficients [{}] (low degree first)",
                shown.join(", ")
            )));
        }
        let m_inf = dreg - deg;
        if m_inf > 0 {
            let z = Cp1::coverma(order);
            let sizes = jordan_sizes(r, rbar, &z, rho.len(), m_inf);
            if sizes.iter().sum::<usize>() != m_inf {
                return Err(Error::Classification("Jordan structure at 0:1".into()));
            }
            kinds.extend(sizes.into_iter().map(|n| KronKind::Regular { n, z: z.clone() }));
        }
    }
    kinds.sort_by_key(KronKind::sort_key);
    let mut summands: Vec<(KronKind, usize)> = Vec::new();
    for k in kinds {
        match summands.last_mut() {
            Some((last, m)) if *last == k => *m += 1,
            _ => summands.push((k, 1)),
        }
    }
    let mut out = QuiverDecomp {
        summands,
        t0: Matrix::zeros(order, 0, 0),
        t1: Matrix::zeros(order, 0, 0),
    };
    let canon = out.canonical(order);
    let (t0, t1) = conjugate(rep, &canon)
        .ok_or_else(|| Error::Classification("no isomorphism onto the canonical form".into()))?;
    out.t0 = t0;
    out.t1 = t1;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CycNum {
        CycNum::parse_expr(s, 6).unwrap()
    }

    fn check(rep: &QuiverRep, expect: &[(KronKind, usize)]) {
        let d = classify(rep).unwrap();
        assert_eq!(d.summands, expect);
        assert!(rep.is_morphism(&d.canonical(rep.order()), &d.t0, &d.t1));
    }

    #[test]
    fn canonical_pieces_classify_to_themselves() {
        check(&QuiverRep::rho(6, 2), &[(KronKind::Rho(2), 1)]);
        check(&QuiverRep::rho_bar(6, 0), &[(KronKind::RhoBar(0), 1)]);
        let z = Cp1::affine(c("q"));
        check(&QuiverRep::regular(6, 3, &z), &[(KronKind::Regular { n: 3, z: z.clone() }, 1)]);
        let inf = Cp1::coverma(6);
        check(&QuiverRep::regular(6, 2, &inf), &[(KronKind::Regular { n: 2, z: inf }, 1)]);
    }

    #[test]
    fn scrambled_sum() {
        let z = Cp1::affine(c("1/2-q"));
        let parts = [
            QuiverRep::rho(6, 1),
            QuiverRep::regular(6, 2, &z),
            QuiverRep::regular(6, 1, &z),
            QuiverRep::rho_bar(6, 1),
            QuiverRep::regular(6, 1, &Cp1::coverma(6)),
        ];
        let sum = QuiverRep::direct_sum_many(6, &parts);
        let mut g = ChaCha8Rng::seed_from_u64(3);
        let g0 = random_matrix(6, sum.d0, sum.d0, &mut g);
        let g1 = random_matrix(6, sum.d1, sum.d1, &mut g);
        let scrambled = sum.transform(&g0, &g1).unwrap();
        check(
            &scrambled,
            &[
                (KronKind::Rho(1), 1),
                (KronKind::RhoBar(1), 1),
                (KronKind::Regular { n: 1, z: Cp1::coverma(6) }, 1),
                (KronKind::Regular { n: 1, z: z.clone() }, 1),
                (KronKind::Regular { n: 2, z }, 1),
            ],
        );
    }

    #[test]
    fn eigenvalue_outside_field() {
        // λ² = 2 has no root in Q(ζ_6).
        let r = Matrix::identity(6, 2);
        let rbar = Matrix::from_ints(6, &[&[0, 1], &[2, 0]]);
        let rep = QuiverRep::new(r, rbar).unwrap();
        assert!(matches!(classify(&rep), Err(Error::EigenvalueOutsideField(_))));
        assert_eq!(indecomposable_by_endomorphisms(&rep), Some(true));
    }

    #[test]
    fn oracle_agrees_on_small_cases() {
        let z = Cp1::affine(c("2"));
        assert_eq!(indecomposable_by_endomorphisms(&QuiverRep::regular(6, 3, &z)), Some(true));
        let two = QuiverRep::regular(6, 1, &z).direct_sum(&QuiverRep::regular(6, 1, &z));
        assert_eq!(indecomposable_by_endomorphisms(&two), Some(false));
        assert_eq!(indecomposable_by_endomorphisms(&QuiverRep::rho(6, 3)), Some(true));
        let rr = QuiverRep::rho(6, 0).direct_sum(&QuiverRep::rho(6, 0));
        assert_eq!(indecomposable_by_endomorphisms(&rr), Some(false));
        let mixed = QuiverRep::rho(6, 1).direct_sum(&QuiverRep::rho_bar(6, 0));
        assert_eq!(indecomposable_by_endomorphisms(&mixed), Some(false));
    }
}
