//! Univariate polynomials over `Q(ζ_N)`, coefficients low degree first.

use num_complex::Complex64;

use crate::cyclotomic::CycNum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub order: u32,
    /// Trimmed: the last coefficient, if any, is nonzero.
    pub coeffs: Vec<CycNum>,
}

impl Poly {
    pub fn new(order: u32, mut coeffs: Vec<CycNum>) -> Poly {
        while coeffs.last().is_some_and(CycNum::is_zero) {
            coeffs.pop();
        }
        Poly { order, coeffs }
    }

    pub fn zero(order: u32) -> Poly {
        Poly::new(order, Vec::new())
    }

    pub fn constant(c: CycNum) -> Poly {
        Poly::new(c.order(), vec![c])
    }

    /// `x - a`.
    pub fn linear(a: &CycNum) -> Poly {
        Poly::new(a.order(), vec![-a, CycNum::one(a.order())])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&CycNum> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = CycNum::zero(self.order);
        Poly::new(
            self.order,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&CycNum::from_int(self.order, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        Poly::new(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.order);
        }
        let mut out = vec![CycNum::zero(self.order); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(self.order, out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(CycNum::one(self.order));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![CycNum::zero(self.order); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + j] -= &(&c * dc);
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Poly::new(self.order, quot), Poly::new(self.order, rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &CycNum::from_int(self.order, i as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors (characteristic zero).
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &CycNum) -> usize {
        let lin = Poly::linear(a);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(order: u32, xs: &[CycNum], ys: &[CycNum]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<CycNum> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Poly::zero(order);
        for i in (0..n).rev() {
            acc = acc.mul(&Poly::linear(&xs[i])).add(&Poly::constant(dd[i].clone()));
        }
        acc
    }

    /// Coefficients under the embedding `ζ ↦ e^{2iπk/N}`.
    pub fn to_complex_at(&self, k: i64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| {
                let (re, im) = c.to_complex_at(k);
                Complex64::new(re, im)
            })
            .collect()
    }
}

/// All complex roots of a polynomial with complex coefficients, by the
/// Durand–Kerner iteration. Used only to propose candidates that are then
/// checked exactly.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * bound).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CycNum {
        CycNum::parse_expr(s, 6).unwrap()
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = Poly::linear(&c("q")).pow(2).mul(&Poly::linear(&c("2")));
        let sf = a.squarefree();
        assert_eq!(sf, Poly::linear(&c("q")).mul(&Poly::linear(&c("2"))));
        assert_eq!(a.root_multiplicity(&c("q")), 2);
        assert_eq!(a.root_multiplicity(&c("1")), 0);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::new(6, vec![c("1"), c("q"), c("-1/2")]);
        let xs: Vec<CycNum> = (0..3).map(|i| CycNum::from_int(6, i)).collect();
        let ys: Vec<CycNum> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Poly::interpolate(6, &xs, &ys), p);
    }

    #[test]
    fn numeric_roots() {
        let p = Poly::linear(&c("q")).mul(&Poly::linear(&c("3")));
        let mut roots = complex_roots(&p.to_complex_at(1));
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[1] - Complex64::new(3.0, 0.0)).norm() < 1e-9);
        let (qr, qi) = c("q").to_complex();
        assert!((roots[0] - Complex64::new(qr, qi)).norm() < 1e-9);
    }
}
