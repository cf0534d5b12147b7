//! Decomposition of a module into named indecomposables, with an explicit
//! isomorphism from the direct sum of the rebuilt summands.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::kronecker::{classify, KronKind};
use crate::label::Indecomposable;
use crate::linalg::{Echelon, Matrix};
use crate::modules::{build_p, irreducible, QMod, Sign};

use super::functor::{counit, functor_f, glued_map};
use super::hom::hom_space;
use super::structure::{blocks, generate, kernel, radical};

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub p: u32,
    /// Distinct summands in canonical order with multiplicities.
    pub summands: Vec<(Indecomposable, usize)>,
    /// Isomorphism from `canonical_module()` onto the input.
    pub iso: Matrix,
}

impl Decomposition {
    pub fn expanded(&self) -> Vec<Indecomposable> {
        self.summands
            .iter()
            .flat_map(|(k, m)| std::iter::repeat_n(k.clone(), *m))
            .collect()
    }

    pub fn canonical_module(&self) -> Result<QMod> {
        let mods = self
            .expanded()
            .iter()
            .map(|k| k.build(self.p))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMod::direct_sum_many(self.p, &mods))
    }

    /// Re-checks the certificate against `m`.
    pub fn verify(&self, m: &QMod) -> Result<bool> {
        let c = self.canonical_module()?;
        Ok(self.iso.is_square() && c.is_hom_to(m, &self.iso) && self.iso.is_invertible())
    }

    pub fn report(&self) -> DecompReport {
        DecompReport(
            self.summands
                .iter()
                .map(|(k, m)| ReportEntry {
                    label: k.short_label(),
                    n: k.n(),
                    z: k.z().map(|z| [z.z1.to_string(), z.z2.to_string()]),
                    mult: *m,
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[String; 2]>,
    pub mult: usize,
}

/// The JSON form of a decomposition: a list of labelled multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecompReport(pub Vec<ReportEntry>);

impl DecompReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Parses and validates a report for the given `p`.
    pub fn from_json(s: &str, p: u32) -> Result<DecompReport> {
        let r: DecompReport = serde_json::from_str(s)?;
        r.summands(p)?;
        Ok(r)
    }

    /// The entries as indecomposables.
    pub fn summands(&self, p: u32) -> Result<Vec<(Indecomposable, usize)>> {
        self.0
            .iter()
            .map(|e| {
                let bad = |m: &str| Error::Parse(format!("report label {:?}: {m}", e.label));
                let mut parts = e.label.splitn(2, '_');
                let head = parts.next().unwrap_or("");
                let s = parts.next().ok_or_else(|| bad("missing _s"))?;
                let mut cli = format!("{head}:{s}");
                match (head.chars().next(), e.n, &e.z) {
                    (Some('X' | 'P'), None, None) => {}
                    (Some('W' | 'M'), Some(n), None) => cli.push_str(&format!(":{n}")),
                    (Some('O'), Some(n), Some([z1, z2])) => {
                        if z1.contains(':') || z2.contains(':') {
                            return Err(bad("z entries must be expressions"));
                        }
                        cli.push_str(&format!(":{n}:{z1}:{z2}"))
                    }
                    _ => return Err(bad("fields do not match the family")),
                }
                let k = Indecomposable::parse(&cli, p)?;
                k.build(p)?;
                Ok((k, e.mult))
            })
            .collect()
    }
}

/// Summand `kind` in its canonical basis, embedded into the working module.
type Piece = (Indecomposable, Matrix);

fn kron_to_named(p: u32, a: Sign, s: u32, k: &KronKind) -> Indecomposable {
    match k {
        KronKind::Rho(0) => Indecomposable::X { a, s },
        KronKind::Rho(n) => Indecomposable::W { a, s, n: n + 1 },
        KronKind::RhoBar(0) => Indecomposable::X { a: a.neg(), s: p - s },
        KronKind::RhoBar(n) => Indecomposable::M { a, s, n: n + 1 },
        KronKind::Regular { n, z } => Indecomposable::O { a, s, n: *n, z: z.clone() },
    }
}

fn unit(order: u32, dim: usize, i: usize) -> Vec<CycNum> {
    let mut v = vec![CycNum::zero(order); dim];
    v[i] = CycNum::one(order);
    v
}

/// Splits off all copies of the projective `P^a_s` from `m`. Returns the
/// pieces (embeddings into `m`) and a basis of a complement submodule.
fn split_projective(m: &QMod, a: Sign, s: u32) -> Result<(Vec<Piece>, Matrix)> {
    let order = m.order();
    let pm = build_p(m.p, a, s)?;
    let soc = s as usize; // index of a_0 in the basis b, a, x, y
    let maps = hom_space(&pm, m)?;
    let mut ech = Echelon::new(order, m.dim());
    let chosen: Vec<Matrix> = maps
        .into_iter()
        .filter(|phi| ech.insert_dense(&phi.col(soc)).is_some())
        .collect();
    if chosen.is_empty() {
        return Ok((Vec::new(), Matrix::identity(order, m.dim())));
    }
    let k = chosen.len();
    let back = hom_space(m, &pm)?;
    let d = pm.dim();
    // Retraction ρ_i = Σ_j c_ij back_j with ρ_i φ_l = δ_il.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (l, phi) in chosen.iter().enumerate() {
        let prods: Vec<Matrix> = back.iter().map(|h| h.mul(phi)).collect();
        for r in 0..d {
            for c in 0..d {
                rows.push(prods.iter().map(|x| x.get(r, c).clone()).collect::<Vec<_>>());
                rhs.push((0..k).map(|i| CycNum::from_int(order, (i == l && r == c) as i64)).collect::<Vec<_>>());
            }
        }
    }
    let a_mat = Matrix::from_rows(order, rows);
    let b_mat = Matrix::from_rows(order, rhs);
    let coeffs = a_mat
        .solve(&b_mat)
        .ok_or_else(|| Error::Classification(format!("no retraction onto P{a}_{s}")))?;
    let mut rho = Matrix::zeros(order, 0, m.dim());
    for i in 0..k {
        let mut ri = Matrix::zeros(order, d, m.dim());
        for (j, h) in back.iter().enumerate() {
            let c = coeffs.get(j, i);
            if !c.is_zero() {
                ri = ri.add(&h.scale(c));
            }
        }
        rho = rho.vstack(&ri);
    }
    let pieces = chosen.into_iter().map(|phi| (Indecomposable::P { a, s }, phi)).collect();
    Ok((pieces, kernel(m, &rho)))
}

/// Decomposes a module with no projective summands and radical inside the
/// socle, lying in block `s`, via the Kronecker functor on each half.
fn split_glued(n: &QMod, s: u32) -> Result<Vec<Piece>> {
    let p = n.p;
    let order = n.order();
    if n.dim() == 0 {
        return Ok(Vec::new());
    }
    let rad = radical(n)?;
    let rr = radical(&n.restrict(&rad)?)?;
    if rr.cols != 0 {
        return Err(Error::Classification(
            "non-projective part has semisimple length above 2".into(),
        ));
    }
    let mut pieces = Vec::new();
    let mut halves = Vec::new();
    for (a, sa) in [(Sign::Plus, s), (Sign::Minus, p - s)] {
        let top_w = irreducible(p, a, sa)?.weights[0];
        // A complement of the radical inside the highest weight space of this type.
        let mut ech = Echelon::new(order, n.dim());
        for j in 0..rad.cols {
            let v = rad.col(j);
            if n.weight_of(&v) == Some(top_w) {
                ech.insert_dense(&v);
            }
        }
        let gens: Vec<Vec<CycNum>> = (0..n.dim())
            .filter(|&i| n.weights[i] == top_w)
            .map(|i| unit(order, n.dim(), i))
            .filter(|v| ech.insert_dense(v).is_some())
            .collect();
        let sub = generate(n, &Matrix::from_cols(order, n.dim(), &gens));
        halves.push((a, sa, sub));
    }
    let total: usize = halves.iter().map(|h| h.2.cols).sum();
    let both = halves[0].2.hstack(&halves[1].2);
    if total != n.dim() || both.rank() != n.dim() {
        return Err(Error::Classification("top-type halves do not split the module".into()));
    }
    for (a, sa, sub) in halves {
        if sub.cols == 0 {
            continue;
        }
        let half = n.restrict(&sub)?;
        let data = functor_f(&half, a, sa)?;
        let theta = counit(&half, sa, &data);
        let dec = classify(&data.rep)?;
        let t0i = dec.t0.inverse().expect("invertible");
        let t1i = dec.t1.inverse().expect("invertible");
        // G(canonical) → G(rep) → half → n
        let to_n = sub.mul(&theta).mul(&glued_map(p, sa, &t0i, &t1i));
        let (su, tu) = (sa as usize, (p - sa) as usize);
        let kinds = dec.expanded();
        let d0_total: usize = kinds.iter().map(|k| k.dims().0).sum();
        let (mut o0, mut o1) = (0, d0_total * su);
        for k in &kinds {
            let (d0, d1) = k.dims();
            let mut idx: Vec<usize> = (o0..o0 + d0 * su).collect();
            idx.extend(o1..o1 + d1 * tu);
            o0 += d0 * su;
            o1 += d1 * tu;
            pieces.push((kron_to_named(p, a, sa, k), to_n.select_cols(&idx)));
        }
    }
    Ok(pieces)
}

fn decompose_block(m: &QMod, s: u32) -> Result<Vec<Piece>> {
    let p = m.p;
    if s == 0 || s == p {
        let a = if s == p { Sign::Plus } else { Sign::Minus };
        let x = irreducible(p, a, p)?;
        return Ok(hom_space(&x, m)?
            .into_iter()
            .map(|phi| (Indecomposable::X { a, s: p }, phi))
            .collect());
    }
    let (mut pieces, rest) = split_projective(m, Sign::Plus, s)?;
    let n1 = m.restrict(&rest)?;
    let (more, rest2) = split_projective(&n1, Sign::Minus, p - s)?;
    pieces.extend(more.into_iter().map(|(k, phi)| (k, rest.mul(&phi))));
    let embed = rest.mul(&rest2);
    let n2 = n1.restrict(&rest2)?;
    for (k, phi) in split_glued(&n2, s)? {
        pieces.push((k, embed.mul(&phi)));
    }
    Ok(pieces)
}

/// Decomposes `m` into indecomposables with an isomorphism certificate.
pub fn decompose(m: &QMod) -> Result<Decomposition> {
    m.verify().map_err(Error::Invalid)?;
    let order = m.order();
    let mut pieces: Vec<Piece> = Vec::new();
    for b in blocks(m)? {
        for (k, phi) in decompose_block(&b.module, b.s)? {
            pieces.push((k, b.basis.mul(&phi)));
        }
    }
    pieces.sort_by_key(|(k, _)| k.sort_key());
    let mut iso = Matrix::zeros(order, m.dim(), 0);
    let mut summands: Vec<(Indecomposable, usize)> = Vec::new();
    for (k, phi) in pieces {
        iso = iso.hstack(&phi);
        match summands.last_mut() {
            Some((last, c)) if *last == k => *c += 1,
            _ => summands.push((k, 1)),
        }
    }
    let out = Decomposition { p: m.p, summands, iso };
    if !out.verify(m)? {
        return Err(Error::Classification("certificate failed to verify".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{build_o, build_w, regular_module, Cp1};

    #[test]
    fn regular_module_p2() {
        let d = decompose(&regular_module(2)).unwrap();
        let got: Vec<(String, usize)> = d.summands.iter().map(|(k, m)| (k.to_string(), *m)).collect();
        assert_eq!(
            got,
            vec![
                ("X+:2".to_string(), 2),
                ("X-:2".to_string(), 2),
                ("P+:1".to_string(), 1),
                ("P-:1".to_string(), 1)
            ]
        );
    }

    #[test]
    fn scrambled_sum_roundtrip() {
        let p = 3;
        let z = Cp1::affine(CycNum::parse_expr("q", 6).unwrap());
        let parts = [
            build_w(p, Sign::Plus, 1, 2).unwrap(),
            build_o(p, Sign::Minus, 1, 2, &z).unwrap(),
            build_p(p, Sign::Plus, 2).unwrap(),
            irreducible(p, Sign::Minus, 2).unwrap(),
        ];
        let m = QMod::direct_sum_many(p, &parts);
        let perm: Vec<usize> = (0..m.dim()).rev().collect();
        let d = decompose(&m.permute(&perm)).unwrap();
        let got: Vec<String> = d.expanded().iter().map(|k| k.to_string()).collect();
        assert_eq!(got, vec!["X-:2", "W+:1:2", "O-:1:2:1:q", "P+:2"]);
        let json = d.report().to_json();
        assert_eq!(DecompReport::from_json(&json, 3).unwrap(), d.report());
    }
}
