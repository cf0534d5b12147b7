#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use uqslcat::cyclotomic::CycNum;
use uqslcat::label::Indecomposable;
use uqslcat::linalg::Matrix;
use uqslcat::modules::{Cp1, QMod, Sign};

/// Seven points of CP^1: both Verma directions, and five finite slopes.
pub fn cp1_sample(p: u32) -> Vec<Cp1> {
    let o = 2 * p;
    let n = |k| CycNum::from_int(o, k);
    let q = CycNum::q_pow(p, 1);
    vec![
        Cp1::new(n(1), n(0)).unwrap(),
        Cp1::new(n(0), n(1)).unwrap(),
        Cp1::new(n(1), n(1)).unwrap(),
        Cp1::new(n(1), n(-1)).unwrap(),
        Cp1::new(n(2), n(1)).unwrap(),
        Cp1::new(n(1), q.clone()).unwrap(),
        Cp1::new(n(3), &q + &n(1)).unwrap(),
    ]
}

fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A random named indecomposable. `W`/`M` start at `n = 2` since
/// `W(1)` and `M(1)` are irreducible.
pub fn random_indecomposable<R: Rng>(p: u32, rng: &mut R) -> Indecomposable {
    let a = sign(rng);
    let s = rng.gen_range(1..p);
    match rng.gen_range(0..5) {
        0 => Indecomposable::X { a, s: rng.gen_range(1..=p) },
        1 => Indecomposable::W { a, s, n: rng.gen_range(2..=4) },
        2 => Indecomposable::M { a, s, n: rng.gen_range(2..=4) },
        3 => Indecomposable::O {
            a,
            s,
            n: rng.gen_range(1..=4),
            z: cp1_sample(p).choose(rng).unwrap().clone(),
        },
        _ => Indecomposable::P { a, s },
    }
}

pub fn sorted(mut v: Vec<Indecomposable>) -> Vec<Indecomposable> {
    v.sort_by_key(|k| k.sort_key());
    v
}

fn small<R: Rng>(order: u32, rng: &mut R) -> CycNum {
    CycNum::from_int(order, rng.gen_range(-2..=2))
}

/// A random invertible matrix preserving the weight spaces of `m`.
pub fn random_weight_basis<R: Rng>(m: &QMod, rng: &mut R) -> Matrix {
    let order = m.order();
    let n = m.dim();
    loop {
        let mut g = Matrix::zeros(order, n, n);
        for i in 0..n {
            for j in 0..n {
                if m.weights[i] == m.weights[j] {
                    g.set(i, j, small(order, rng));
                }
            }
        }
        if g.rank() == n {
            return g;
        }
    }
}

/// Direct sum of the summands, shuffled and put in a random weight basis.
pub fn scrambled_sum<R: Rng>(p: u32, parts: &[Indecomposable], rng: &mut R) -> QMod {
    let mods: Vec<QMod> = parts.iter().map(|k| k.build(p).unwrap()).collect();
    let sum = QMod::direct_sum_many(p, &mods);
    let mut perm: Vec<usize> = (0..sum.dim()).collect();
    perm.shuffle(rng);
    let sum = sum.permute(&perm);
    let g = random_weight_basis(&sum, rng);
    sum.change_basis(&g).unwrap()
}

pub fn random_matrix<R: Rng>(order: u32, rows: usize, cols: usize, coeffs: &[i64], rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(order, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, CycNum::from_int(order, *coeffs.choose(rng).unwrap()));
        }
    }
    m
}
