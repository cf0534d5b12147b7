//! Ext groups from minimal resolutions, extension classes and the Yoneda product.

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::label::Indecomposable;
use crate::linalg::Matrix;
use crate::modules::{build_o1, irreducible, Cp1, QMod, Sign};

use super::hom::hom_space;
use super::resolution::{minimal_resolution, Resolution};

fn flatten(m: &Matrix) -> Vec<CycNum> {
    (0..m.rows).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Some `Σ c_j basis[j]` with `apply(Σ c_j basis[j]) = rhs`, for linear `apply`.
fn solve_in_span(order: u32, basis: &[Matrix], apply: impl Fn(&Matrix) -> Matrix, rhs: &Matrix) -> Option<Matrix> {
    if basis.is_empty() {
        return if rhs.is_zero() { Some(Matrix::zeros(order, 0, 0)) } else { None };
    }
    let cols: Vec<Vec<CycNum>> = basis.iter().map(|h| flatten(&apply(h))).collect();
    let a = Matrix::from_cols(order, rhs.rows * rhs.cols, &cols);
    let b = Matrix::from_cols(order, rhs.rows * rhs.cols, &[flatten(rhs)]);
    let c = a.solve(&b)?;
    let mut out = Matrix::zeros(order, basis[0].rows, basis[0].cols);
    for (j, h) in basis.iter().enumerate() {
        let cj = c.get(j, 0);
        if !cj.is_zero() {
            out = out.add(&h.scale(cj));
        }
    }
    Some(out)
}

/// Rank of a family of maps as vectors.
fn span_rank(order: u32, maps: &[Matrix]) -> usize {
    if maps.is_empty() {
        return 0;
    }
    let n = maps[0].rows * maps[0].cols;
    Matrix::from_cols(order, n, &maps.iter().map(flatten).collect::<Vec<_>>()).rank()
}

/// `dim Ext^n(res.module, b)`, as cohomology of `Hom(P_•, b)`. Needs `n + 2` terms.
pub fn ext_dim_from(res: &Resolution, b: &QMod, n: usize) -> Result<usize> {
    if res.len() < n + 2 {
        return Err(Error::OutOfRange(format!("resolution too short for Ext^{n}")));
    }
    let order = b.order();
    let hn = hom_space(&res.term_modules[n], b)?;
    let next: Vec<Matrix> = hn.iter().map(|h| h.mul(res.boundary(n + 1))).collect();
    let cocycles = hn.len() - span_rank(order, &next);
    let boundaries = if n == 0 {
        0
    } else {
        let prev = hom_space(&res.term_modules[n - 1], b)?;
        span_rank(order, &prev.iter().map(|h| h.mul(res.boundary(n))).collect::<Vec<_>>())
    };
    Ok(cocycles - boundaries)
}

pub fn ext_dim(a: &QMod, b: &QMod, n: usize) -> Result<usize> {
    ext_dim_from(&minimal_resolution(a, n + 2)?, b, n)
}

/// A class in `Ext^degree(source, target)`, as a cocycle `P_degree → target`
/// on the minimal resolution of `source` held by an [`ExtAlgebra`].
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub degree: usize,
    pub source: Sign,
    pub target: Sign,
    pub cocycle: Matrix,
}

/// `Ext^•` between `X^+_s` and `X^-_{p-s}` in block `s`, up to a fixed degree.
pub struct ExtAlgebra {
    pub p: u32,
    pub s: u32,
    pub max_degree: usize,
    plus: Resolution,
    minus: Resolution,
}

impl ExtAlgebra {
    pub fn new(p: u32, s: u32, max_degree: usize) -> Result<ExtAlgebra> {
        if s == 0 || s >= p {
            return Err(Error::OutOfRange(format!("block s = {s} must lie in 1..{p}")));
        }
        let plus = minimal_resolution(&irreducible(p, Sign::Plus, s)?, max_degree + 2)?;
        let minus = minimal_resolution(&irreducible(p, Sign::Minus, p - s)?, max_degree + 2)?;
        Ok(ExtAlgebra { p, s, max_degree, plus, minus })
    }

    /// `s` of the irreducible of the given sign in this block.
    pub fn s_of(&self, a: Sign) -> u32 {
        match a {
            Sign::Plus => self.s,
            Sign::Minus => self.p - self.s,
        }
    }

    pub fn irreducible_label(&self, a: Sign) -> Indecomposable {
        Indecomposable::X { a, s: self.s_of(a) }
    }

    pub fn resolution(&self, a: Sign) -> &Resolution {
        match a {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    fn target_module(&self, a: Sign) -> QMod {
        irreducible(self.p, a, self.s_of(a)).expect("valid")
    }

    /// Class of `0 → ι(B) → e → A → 0` with `A` the source irreducible.
    pub fn class_of_extension(&self, source: Sign, e: &QMod, iota: &Matrix, pi: &Matrix) -> Result<ExtClass> {
        let res = self.resolution(source);
        let order = e.order();
        let p0 = &res.term_modules[0];
        let basis = hom_space(p0, e)?;
        let f0 = solve_in_span(order, &basis, |h| pi.mul(h), &res.augmentation)
            .ok_or_else(|| Error::Invalid("cover does not lift through the extension".into()))?;
        let c = f0.mul(res.boundary(1));
        let cocycle = iota
            .solve(&c)
            .ok_or_else(|| Error::Invalid("extension is not exact at the submodule".into()))?;
        Ok(ExtClass { degree: 1, source, target: source.neg(), cocycle })
    }

    /// `x^a_1` (Verma middle term) and `x^a_2` (contragredient Verma), in
    /// `Ext^1(X^a, X^{-a})`.
    pub fn x(&self, a: Sign, i: usize) -> Result<ExtClass> {
        let order = 2 * self.p;
        let z = match i {
            1 => Cp1::verma(order),
            2 => Cp1::coverma(order),
            _ => return Err(Error::OutOfRange(format!("generator index {i}"))),
        };
        let sa = self.s_of(a) as usize;
        let e = build_o1(self.p, a, self.s_of(a), &z)?;
        let tu = e.dim() - sa;
        let pi = Matrix::identity(order, sa).hstack(&Matrix::zeros(order, sa, tu));
        let iota = Matrix::zeros(order, sa, tu).vstack(&Matrix::identity(order, tu));
        self.class_of_extension(a, &e, &iota, &pi)
    }

    /// Basis of `Ext^n(X^a, X^b)` as cocycles (differentials vanish on Hom into
    /// irreducibles for a minimal resolution, so this is `Hom(P_n, X^b)`).
    pub fn basis(&self, source: Sign, target: Sign, n: usize) -> Result<Vec<ExtClass>> {
        let res = self.resolution(source);
        Ok(hom_space(&res.term_modules[n], &self.target_module(target))?
            .into_iter()
            .map(|cocycle| ExtClass { degree: n, source, target, cocycle })
            .collect())
    }

    fn coboundaries(&self, c: &ExtClass) -> Result<Vec<Matrix>> {
        if c.degree == 0 {
            return Ok(Vec::new());
        }
        let res = self.resolution(c.source);
        Ok(hom_space(&res.term_modules[c.degree - 1], &self.target_module(c.target))?
            .iter()
            .map(|h| h.mul(res.boundary(c.degree)))
            .collect())
    }

    /// Dimension of the span of `classes` in cohomology (all of one degree and type).
    pub fn rank(&self, classes: &[ExtClass]) -> Result<usize> {
        let Some(first) = classes.first() else { return Ok(0) };
        let order = 2 * self.p;
        let mut b = self.coboundaries(first)?;
        let base = span_rank(order, &b);
        b.extend(classes.iter().map(|c| c.cocycle.clone()));
        Ok(span_rank(order, &b) - base)
    }

    pub fn is_zero(&self, c: &ExtClass) -> Result<bool> {
        Ok(self.rank(std::slice::from_ref(c))? == 0)
    }

    /// `u · v`: first `v`, then `u`. Requires `v.target == u.source`.
    pub fn yoneda(&self, u: &ExtClass, v: &ExtClass) -> Result<ExtClass> {
        if v.target != u.source {
            return Err(Error::NotComposable(format!(
                "target {} of the right factor differs from source {} of the left factor",
                self.irreducible_label(v.target).short_label(),
                self.irreducible_label(u.source).short_label()
            )));
        }
        let (n, m) = (v.degree, u.degree);
        if n + m > self.max_degree {
            return Err(Error::OutOfRange(format!("degree {} above {}", n + m, self.max_degree)));
        }
        let order = 2 * self.p;
        let ra = self.resolution(v.source);
        let rb = self.resolution(u.source);
        // f_k : P^A_{n+k} → P^B_k, ε f_0 = v, ∂ f_k = f_{k-1} ∂.
        let mut f = {
            let basis = hom_space(&ra.term_modules[n], &rb.term_modules[0])?;
            solve_in_span(order, &basis, |h| rb.augmentation.mul(h), &v.cocycle)
                .ok_or_else(|| Error::Invalid("cocycle does not lift".into()))?
        };
        for k in 1..=m {
            let basis = hom_space(&ra.term_modules[n + k], &rb.term_modules[k])?;
            let rhs = f.mul(ra.boundary(n + k));
            f = solve_in_span(order, &basis, |h| rb.boundary(k).mul(h), &rhs)
                .ok_or_else(|| Error::Invalid("chain map does not lift".into()))?;
        }
        Ok(ExtClass {
            degree: n + m,
            source: v.source,
            target: u.target,
            cocycle: u.cocycle.mul(&f),
        })
    }

    pub fn add(&self, a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
        if (a.degree, a.source, a.target) != (b.degree, b.source, b.target) {
            return Err(Error::Invalid("classes live in different Ext groups".into()));
        }
        Ok(ExtClass { cocycle: a.cocycle.add(&b.cocycle), ..a.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_span_ext1() {
        let alg = ExtAlgebra::new(3, 1, 2).unwrap();
        for a in Sign::both() {
            let xs = [alg.x(a, 1).unwrap(), alg.x(a, 2).unwrap()];
            assert_eq!(alg.rank(&xs).unwrap(), 2);
        }
    }

    #[test]
    fn mixed_relation_and_nonzero_square() {
        let alg = ExtAlgebra::new(2, 1, 2).unwrap();
        let (p1, p2) = (alg.x(Sign::Plus, 1).unwrap(), alg.x(Sign::Plus, 2).unwrap());
        let (m1, m2) = (alg.x(Sign::Minus, 1).unwrap(), alg.x(Sign::Minus, 2).unwrap());
        let a = alg.yoneda(&m1, &p2).unwrap();
        let b = alg.yoneda(&m2, &p1).unwrap();
        assert!(alg.is_zero(&alg.add(&a, &b).unwrap()).unwrap());
        assert!(!alg.is_zero(&alg.yoneda(&m1, &p1).unwrap()).unwrap());
        assert!(matches!(alg.yoneda(&p1, &p1), Err(Error::NotComposable(_))));
    }

    #[test]
    fn ext_dims() {
        let x = irreducible(2, Sign::Plus, 1).unwrap();
        let y = irreducible(2, Sign::Minus, 1).unwrap();
        assert_eq!(ext_dim(&x, &y, 1).unwrap(), 2);
        assert_eq!(ext_dim(&x, &x, 2).unwrap(), 3);
        assert_eq!(ext_dim(&x, &x, 1).unwrap(), 0);
    }
}
