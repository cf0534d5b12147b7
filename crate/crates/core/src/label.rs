//! Names of indecomposable modules: the CLI form `X+:s`, `W-:s:n`, `M+:s:n`,
//! `O+:s:n:z1/z2` (or `O+:s:n:z1:z2`), `P+:s`, and the report form `X+_s`.

use std::fmt;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::modules::{build_m, build_o, build_p, build_w, irreducible, Cp1, QMod, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Indecomposable {
    X { a: Sign, s: u32 },
    W { a: Sign, s: u32, n: usize },
    M { a: Sign, s: u32, n: usize },
    O { a: Sign, s: u32, n: usize, z: Cp1 },
    P { a: Sign, s: u32 },
}

impl Indecomposable {
    pub fn sign(&self) -> Sign {
        match self {
            Indecomposable::X { a, .. }
            | Indecomposable::W { a, .. }
            | Indecomposable::M { a, .. }
            | Indecomposable::O { a, .. }
            | Indecomposable::P { a, .. } => *a,
        }
    }

    pub fn s(&self) -> u32 {
        match self {
            Indecomposable::X { s, .. }
            | Indecomposable::W { s, .. }
            | Indecomposable::M { s, .. }
            | Indecomposable::O { s, .. }
            | Indecomposable::P { s, .. } => *s,
        }
    }

    pub fn n(&self) -> Option<usize> {
        match self {
            Indecomposable::W { n, .. } | Indecomposable::M { n, .. } | Indecomposable::O { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn z(&self) -> Option<&Cp1> {
        match self {
            Indecomposable::O { z, .. } => Some(z),
            _ => None,
        }
    }

    fn family(&self) -> char {
        match self {
            Indecomposable::X { .. } => 'X',
            Indecomposable::W { .. } => 'W',
            Indecomposable::M { .. } => 'M',
            Indecomposable::O { .. } => 'O',
            Indecomposable::P { .. } => 'P',
        }
    }

    /// Report label without parameters, e.g. `O+_1`.
    pub fn short_label(&self) -> String {
        format!("{}{}_{}", self.family(), self.sign(), self.s())
    }

    pub fn sort_key(&self) -> (usize, u32, i64, usize, String) {
        let fam = "XWMOP".find(self.family()).unwrap();
        let z = self.z().map(|z| z.to_string()).unwrap_or_default();
        (fam, self.s(), -self.sign().as_i64(), self.n().unwrap_or(0), z)
    }

    pub fn build(&self, p: u32) -> Result<QMod> {
        match self {
            Indecomposable::X { a, s } => irreducible(p, *a, *s),
            Indecomposable::W { a, s, n } => build_w(p, *a, *s, *n),
            Indecomposable::M { a, s, n } => build_m(p, *a, *s, *n),
            Indecomposable::O { a, s, n, z } => build_o(p, *a, *s, *n, z),
            Indecomposable::P { a, s } => build_p(p, *a, *s),
        }
    }

    /// Parses the CLI form for the given `p` (needed for the field of `z`).
    pub fn parse(s: &str, p: u32) -> Result<Indecomposable> {
        let bad = |m: &str| Error::Parse(format!("label {s:?}: {m}"));
        let fields: Vec<&str> = s.trim().split(':').collect();
        let head = fields[0];
        let mut chars = head.chars();
        let fam = chars.next().ok_or_else(|| bad("empty"))?;
        let a = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad("expected a sign after the family letter")),
        };
        if chars.next().is_some() {
            return Err(bad("unexpected characters after the sign"));
        }
        let int = |i: usize, what: &str| -> Result<u64> {
            fields
                .get(i)
                .ok_or_else(|| bad(&format!("missing {what}")))?
                .trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("{what} is not a nonnegative integer")))
        };
        let arity = |n: usize| -> Result<()> {
            if fields.len() == n {
                Ok(())
            } else {
                Err(bad(&format!("expected {n} fields")))
            }
        };
        let sv = int(1, "s")?;
        if sv > u32::MAX as u64 {
            return Err(bad("s too large"));
        }
        let sv = sv as u32;
        let nv = || -> Result<usize> {
            let n = int(2, "n")?;
            if n > 64 {
                return Err(bad("n above 64"));
            }
            Ok(n as usize)
        };
        Ok(match fam {
            'X' => {
                arity(2)?;
                Indecomposable::X { a, s: sv }
            }
            'P' => {
                arity(2)?;
                Indecomposable::P { a, s: sv }
            }
            'W' => {
                arity(3)?;
                Indecomposable::W { a, s: sv, n: nv()? }
            }
            'M' => {
                arity(3)?;
                Indecomposable::M { a, s: sv, n: nv()? }
            }
            'O' => {
                let (z1, z2) = match fields.len() {
                    4 => split_ratio(fields[3]).ok_or_else(|| bad("z must be z1/z2"))?,
                    5 => (fields[3], fields[4]),
                    _ => return Err(bad("expected O±:s:n:z1/z2 or O±:s:n:z1:z2")),
                };
                let order = 2 * p;
                let z = Cp1::new(CycNum::parse_expr(z1, order)?, CycNum::parse_expr(z2, order)?)?;
                Indecomposable::O { a, s: sv, n: nv()?, z }
            }
            _ => return Err(bad("family must be one of X, W, M, O, P")),
        })
    }
}

/// Splits `z1/z2` at the first `/` outside parentheses.
fn split_ratio(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fam, a, s) = (self.family(), self.sign(), self.s());
        match self {
            Indecomposable::X { .. } | Indecomposable::P { .. } => write!(f, "{fam}{a}:{s}"),
            Indecomposable::W { n, .. } | Indecomposable::M { n, .. } => write!(f, "{fam}{a}:{s}:{n}"),
            Indecomposable::O { n, z, .. } => write!(f, "{fam}{a}:{s}:{n}:{}:{}", z.z1, z.z2),
        }
    }
}
