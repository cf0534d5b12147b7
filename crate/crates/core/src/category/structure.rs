//! Submodules, radicals, socles and block decomposition.

use std::collections::BTreeMap;

use crate::algebra::{beta, Uq};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::modules::{irreducible, QMod, Sign};

use super::hom::hom_space;

fn wadd(p: u32, w: u32, d: i64) -> u32 {
    (w as i64 + d).rem_euclid(2 * p as i64) as u32
}

/// Indices of basis vectors grouped by weight.
pub fn weight_classes(m: &QMod) -> BTreeMap<u32, Vec<usize>> {
    let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &w) in m.weights.iter().enumerate() {
        out.entry(w).or_default().push(i);
    }
    out
}

/// Nonzero weight components of each column of `vecs`.
pub fn weight_components(m: &QMod, vecs: &Matrix) -> Vec<(u32, Vec<CycNum>)> {
    let order = m.order();
    let classes = weight_classes(m);
    let mut out = Vec::new();
    for j in 0..vecs.cols {
        let col = vecs.col(j);
        for (&w, idx) in &classes {
            if idx.iter().any(|&i| !col[i].is_zero()) {
                let mut v = vec![CycNum::zero(order); m.dim()];
                for &i in idx {
                    v[i] = col[i].clone();
                }
                out.push((w, v));
            }
        }
    }
    out
}

/// The submodule generated by the columns of `vecs`, as a basis of weight vectors.
pub fn generate(m: &QMod, vecs: &Matrix) -> Matrix {
    let order = m.order();
    let n = m.dim();
    let mut ech: BTreeMap<u32, Echelon> = BTreeMap::new();
    let mut queue = weight_components(m, vecs);
    let mut basis = Vec::new();
    while let Some((w, v)) = queue.pop() {
        let e = ech.entry(w).or_insert_with(|| Echelon::new(order, n));
        if e.insert_dense(&v).is_none() {
            continue;
        }
        let ev = m.e.mul_vec(&v);
        if ev.iter().any(|c| !c.is_zero()) {
            queue.push((wadd(m.p, w, 2), ev));
        }
        let fv = m.f.mul_vec(&v);
        if fv.iter().any(|c| !c.is_zero()) {
            queue.push((wadd(m.p, w, -2), fv));
        }
        basis.push(v);
    }
    Matrix::from_cols(order, n, &basis)
}

/// Kernel of a weight-preserving map out of `m`, as weight vectors.
pub fn kernel(m: &QMod, map: &Matrix) -> Matrix {
    let order = m.order();
    let mut out = Vec::new();
    for idx in weight_classes(m).values() {
        let sub = map.select_cols(idx);
        for x in sub.null_space() {
            let mut v = vec![CycNum::zero(order); m.dim()];
            for (k, &i) in idx.iter().enumerate() {
                v[i] = x[k].clone();
            }
            out.push(v);
        }
    }
    Matrix::from_cols(order, m.dim(), &out)
}

/// Intersection of two spans of weight vectors.
pub fn intersect(m: &QMod, a: &Matrix, b: &Matrix) -> Matrix {
    let order = m.order();
    let split = |x: &Matrix| -> BTreeMap<u32, Vec<Vec<CycNum>>> {
        let mut out: BTreeMap<u32, Vec<Vec<CycNum>>> = BTreeMap::new();
        for (w, v) in weight_components(m, x) {
            out.entry(w).or_default().push(v);
        }
        out
    };
    let (sa, sb) = (split(a), split(b));
    let mut out = Vec::new();
    for (w, va) in &sa {
        let Some(vb) = sb.get(w) else { continue };
        let ma = Matrix::from_cols(order, m.dim(), va);
        let mb = Matrix::from_cols(order, m.dim(), vb);
        let stacked = ma.hstack(&mb.scale(&CycNum::from_int(order, -1)));
        let mut ech = Echelon::new(order, m.dim());
        for x in stacked.null_space() {
            let v = ma.mul_vec(&x[..va.len()]);
            if ech.insert_dense(&v).is_some() {
                out.push(v);
            }
        }
    }
    Matrix::from_cols(order, m.dim(), &out)
}

/// All irreducibles `X^±_s` for this `p`.
pub fn irreducibles(p: u32) -> Vec<QMod> {
    let mut out = Vec::new();
    for s in 1..=p {
        for a in Sign::both() {
            out.push(irreducible(p, a, s).expect("valid irreducible"));
        }
    }
    out
}

/// `rad m`: the common kernel of all maps to irreducibles.
pub fn radical(m: &QMod) -> Result<Matrix> {
    let order = m.order();
    let mut stacked = Matrix::zeros(order, 0, m.dim());
    for x in irreducibles(m.p) {
        for phi in hom_space(m, &x)? {
            stacked = stacked.vstack(&phi);
        }
    }
    Ok(kernel(m, &stacked))
}

/// `soc m`: the sum of images of all maps from irreducibles.
pub fn socle(m: &QMod) -> Result<Matrix> {
    let order = m.order();
    let mut cols = Matrix::zeros(order, m.dim(), 0);
    for x in irreducibles(m.p) {
        for phi in hom_space(&x, m)? {
            cols = cols.hstack(&phi);
        }
    }
    Ok(cols.column_basis())
}

/// `m = rad^0 ⊋ rad^1 ⊋ … ⊋ 0`, each term a basis in `m`'s coordinates.
pub fn radical_series(m: &QMod) -> Result<Vec<Matrix>> {
    let order = m.order();
    let mut out = vec![Matrix::identity(order, m.dim())];
    let mut current = m.clone();
    let mut embed = Matrix::identity(order, m.dim());
    while current.dim() > 0 {
        let r = radical(&current)?;
        if r.cols == current.dim() {
            return Err(Error::Invalid("radical does not shrink".into()));
        }
        embed = embed.mul(&r);
        current = current.restrict(&r)?;
        out.push(embed.clone());
    }
    Ok(out)
}

/// Length of the radical series.
pub fn semisimple_length(m: &QMod) -> Result<usize> {
    Ok(radical_series(m)?.len() - 1)
}

/// One block summand: the generalized eigenspace of the Casimir for `β_s`.
#[derive(Clone, Debug)]
pub struct Block {
    pub s: u32,
    /// Columns are weight vectors of the input module spanning the block.
    pub basis: Matrix,
    pub module: QMod,
}

/// Splits `m` by the generalized eigenvalues `β_0, …, β_p` of the Casimir.
pub fn blocks(m: &QMod) -> Result<Vec<Block>> {
    let order = m.order();
    let alg = Uq::restricted(m.p);
    let c = m.casimir_matrix();
    let classes = weight_classes(m);
    let mut out = Vec::new();
    let mut total = 0;
    for s in 0..=m.p {
        let b = beta(alg, s as i64);
        let mut cols = Vec::new();
        for idx in classes.values() {
            let cw = c.submatrix(idx, idx);
            let shifted = cw.sub(&Matrix::identity(order, idx.len()).scale(&b));
            for x in shifted.mul(&shifted).null_space() {
                let mut v = vec![CycNum::zero(order); m.dim()];
                for (k, &i) in idx.iter().enumerate() {
                    v[i] = x[k].clone();
                }
                cols.push(v);
            }
        }
        if cols.is_empty() {
            continue;
        }
        total += cols.len();
        let basis = Matrix::from_cols(order, m.dim(), &cols);
        let module = m.restrict(&basis)?;
        out.push(Block { s, basis, module });
    }
    if total != m.dim() {
        return Err(Error::Invalid(format!(
            "Casimir eigenspaces cover {total} of {} dimensions; not a module over the restricted algebra",
            m.dim()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_p, regular_module, verma};

    #[test]
    fn loewy_lengths() {
        for p in 2..=3 {
            for s in 1..p {
                let pm = build_p(p, Sign::Plus, s).unwrap();
                assert_eq!(semisimple_length(&pm).unwrap(), 3);
                assert_eq!(socle(&pm).unwrap().cols, s as usize);
                let v = verma(p, Sign::Minus, s).unwrap();
                assert_eq!(semisimple_length(&v).unwrap(), 2);
                assert_eq!(radical(&v).unwrap().cols, (p - s) as usize);
            }
            let x = irreducible(p, Sign::Plus, p).unwrap();
            assert_eq!(semisimple_length(&x).unwrap(), 1);
        }
    }

    #[test]
    fn regular_blocks() {
        let dims: Vec<(u32, usize)> = blocks(&regular_module(2))
            .unwrap()
            .iter()
            .map(|b| (b.s, b.basis.cols))
            .collect();
        assert_eq!(dims, vec![(0, 4), (1, 8), (2, 4)]);
    }

    #[test]
    fn generated_submodule() {
        let pm = build_p(3, Sign::Plus, 1).unwrap();
        let mut top = Matrix::zeros(6, pm.dim(), 1);
        top.set(0, 0, CycNum::one(6));
        assert_eq!(generate(&pm, &top).cols, pm.dim());
    }
}
