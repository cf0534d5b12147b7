//! Hom spaces between modules.

use std::collections::{BTreeMap, HashMap};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::modules::QMod;

fn sparse_cols(m: &Matrix) -> Vec<Vec<(usize, CycNum)>> {
    let mut out = vec![Vec::new(); m.cols];
    for (i, j, v) in m.triplets() {
        out[j].push((i, v));
    }
    out
}

fn sparse_rows(m: &Matrix) -> Vec<Vec<(usize, CycNum)>> {
    let mut out = vec![Vec::new(); m.rows];
    for (i, j, v) in m.triplets() {
        out[i].push((j, v));
    }
    out
}

/// A basis of `Hom(a, b)`, each map a `dim b × dim a` matrix. Only entries
/// between equal weights are unknowns.
pub fn hom_space(a: &QMod, b: &QMod) -> Result<Vec<Matrix>> {
    if a.p != b.p {
        return Err(Error::PMismatch(a.p, b.p));
    }
    let order = a.order();
    let mut var: HashMap<(usize, usize), usize> = HashMap::new();
    let mut vars = Vec::new();
    for i in 0..b.dim() {
        for j in 0..a.dim() {
            if b.weights[i] == a.weights[j] {
                var.insert((i, j), vars.len());
                vars.push((i, j));
            }
        }
    }
    if vars.is_empty() {
        return Ok(Vec::new());
    }
    let mut ech = Echelon::new(order, vars.len());
    for (xa, xb) in [(&a.e, &b.e), (&a.f, &b.f)] {
        let ca = sparse_cols(xa);
        let rb = sparse_rows(xb);
        // (Φ X_a − X_b Φ)[i, j] = 0
        for i in 0..b.dim() {
            for j in 0..a.dim() {
                let mut row: BTreeMap<usize, CycNum> = BTreeMap::new();
                for (k, v) in &ca[j] {
                    if let Some(&x) = var.get(&(i, *k)) {
                        *row.entry(x).or_insert_with(|| CycNum::zero(order)) += v;
                    }
                }
                for (k, v) in &rb[i] {
                    if let Some(&x) = var.get(&(*k, j)) {
                        *row.entry(x).or_insert_with(|| CycNum::zero(order)) -= v;
                    }
                }
                let row: Vec<(usize, CycNum)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    Ok(ech
        .null_space()
        .into_iter()
        .map(|x| {
            let mut m = Matrix::zeros(order, b.dim(), a.dim());
            for (n, &(i, j)) in vars.iter().enumerate() {
                if !x[n].is_zero() {
                    m.set(i, j, x[n].clone());
                }
            }
            m
        })
        .collect())
}

pub fn hom_dim(a: &QMod, b: &QMod) -> Result<usize> {
    Ok(hom_space(a, b)?.len())
}

/// `Σ c_i maps[i]`.
pub fn combine(order: u32, rows: usize, cols: usize, maps: &[Matrix], coeffs: &[CycNum]) -> Matrix {
    let mut out = Matrix::zeros(order, rows, cols);
    for (m, c) in maps.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// An isomorphism `a → b` found by sampling `Hom(a, b)`, if any.
pub fn find_isomorphism(a: &QMod, b: &QMod) -> Result<Option<Matrix>> {
    use rand::{Rng, SeedableRng};
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let maps = hom_space(a, b)?;
    let order = a.order();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x69_736f);
    for _ in 0..12 {
        let c: Vec<CycNum> = maps
            .iter()
            .map(|_| CycNum::from_int(order, rng.gen_range(-50..=50)))
            .collect();
        let phi = combine(order, b.dim(), a.dim(), &maps, &c);
        if phi.is_invertible() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_p, irreducible, verma, Sign};

    #[test]
    fn schur_and_projective_homs() {
        for p in 2..=4 {
            for s in 1..=p {
                for a in Sign::both() {
                    let x = irreducible(p, a, s).unwrap();
                    assert_eq!(hom_dim(&x, &x).unwrap(), 1);
                    let y = irreducible(p, a.neg(), s).unwrap();
                    assert_eq!(hom_dim(&x, &y).unwrap(), 0);
                }
            }
            for s in 1..p {
                let pm = build_p(p, Sign::Plus, s).unwrap();
                assert_eq!(hom_dim(&pm, &pm).unwrap(), 2);
                let v = verma(p, Sign::Plus, s).unwrap();
                assert_eq!(hom_dim(&pm, &v).unwrap(), 1);
                for phi in hom_space(&pm, &v).unwrap() {
                    assert!(pm.is_hom_to(&v, &phi));
                }
            }
        }
    }

    #[test]
    fn isomorphism_is_found_after_scrambling() {
        let v = verma(3, Sign::Minus, 2).unwrap();
        let perm: Vec<usize> = (0..v.dim()).rev().collect();
        let w = v.permute(&perm);
        let phi = find_isomorphism(&v, &w).unwrap().unwrap();
        assert!(v.is_hom_to(&w, &phi));
    }
}
