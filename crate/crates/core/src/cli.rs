//! The `uqslcat` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{center_basis, verify_hopf, verify_hopf_with, Coproduct, Uq};
use crate::braiding;
use crate::category::{blocks, decompose, ext_dim, hom_dim, minimal_resolution, ExtAlgebra, ExtClass};
use crate::error::{Error, Result};
use crate::kronecker::{classify, QuiverRep};
use crate::label::Indecomposable;
use crate::modules::{regular_module, QMod, Sign};

const DEFAULT_MAX_P: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "uqslcat", version, about = "Exact computations with the restricted quantum group at q = exp(i pi / p)")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Largest p accepted (default: $UQSLCAT_MAX_P, else 6).
    #[arg(long, global = true)]
    max_p: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug)]
struct ModuleSource {
    #[arg(long)]
    p: Option<u32>,
    /// Module JSON file.
    #[arg(long, conflicts_with = "label")]
    input: Option<PathBuf>,
    /// Indecomposable label such as `X+:2`, `W-:1:3`, `O+:1:2:1/0`, or `regular`.
    #[arg(long)]
    label: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a module; `--format json` or `--output` give the module JSON.
    Build {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        label: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the Hopf axioms at p, or the relations of a module file.
    Verify {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Check the perturbed coproduct instead (expected to fail).
        #[arg(long)]
        negative_control: bool,
    },
    /// Decompose a module into indecomposables.
    Decompose {
        #[command(flatten)]
        src: ModuleSource,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Split a module into linkage blocks.
    Blocks {
        #[command(flatten)]
        src: ModuleSource,
    },
    /// Dimension of Hom between two labelled modules.
    Hom {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Dimension of Ext^deg between two labelled modules.
    Ext {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        deg: usize,
    },
    /// Minimal projective resolution.
    Resolve {
        #[command(flatten)]
        src: ModuleSource,
        /// Number of terms.
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
    /// Yoneda product of generators `x+:1`, `x-:2`, ..., composed right to left.
    Yoneda {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        s: u32,
        /// Comma-separated word, leftmost factor applied last.
        #[arg(long)]
        word: String,
    },
    /// Classify a Kronecker quiver representation from JSON.
    KronClassify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check the R-matrix and ribbon element (p = 2 only).
    BraidCheck {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Dimension of the center.
    Center {
        #[arg(long)]
        p: u32,
    },
}

struct Output {
    json: Value,
    text: String,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Output {
        Output { json, text: text.into() }
    }
}

/// Runs the command line with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs the command line, writing the report to `out` and messages to `err`.
/// Exit codes: 0 success, 1 domain error, 2 classification failure.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if ok { write!(out, "{e}") } else { write!(err, "{e}") };
            return if ok { 0 } else { 1 };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json")),
                Format::Text => writeln!(out, "{}", o.text),
            };
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Classification(_) => 2,
                _ => 1,
            }
        }
    }
}

fn max_p(cli: &Cli) -> u32 {
    cli.max_p
        .or_else(|| std::env::var("UQSLCAT_MAX_P").ok()?.parse().ok())
        .unwrap_or(DEFAULT_MAX_P)
}

fn check_p(cli: &Cli, p: u32) -> Result<()> {
    let hi = max_p(cli);
    if p < 2 || p > hi {
        return Err(Error::OutOfRange(format!(
            "p = {p} must satisfy 2 <= p <= {hi} (raise with --max-p or UQSLCAT_MAX_P)"
        )));
    }
    Ok(())
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn labelled(cli: &Cli, p: u32, label: &str) -> Result<QMod> {
    check_p(cli, p)?;
    if label == "regular" {
        return Ok(regular_module(p).with_label("regular"));
    }
    let k = Indecomposable::parse(label, p)?;
    Ok(k.build(p)?.with_label(k.short_label()))
}

fn load(cli: &Cli, src: &ModuleSource) -> Result<QMod> {
    match (&src.input, &src.label) {
        (Some(path), _) => {
            let m = QMod::from_json(&read(path)?)?;
            check_p(cli, m.p)?;
            if let Some(p) = src.p {
                if p != m.p {
                    return Err(Error::PMismatch(p, m.p));
                }
            }
            if let Err(msg) = m.verify() {
                return Err(Error::Invalid(format!("input is not a module: {msg}")));
            }
            Ok(m)
        }
        (None, Some(l)) => {
            let p = src.p.ok_or_else(|| Error::Invalid("--label needs --p".into()))?;
            labelled(cli, p, l)
        }
        (None, None) => Err(Error::Invalid("give --input or --label".into())),
    }
}

fn write_or(path: &Option<PathBuf>, body: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, body)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Build { p, label, output } => {
            let m = labelled(cli, *p, label)?;
            let v = serde_json::to_value(&m)?;
            write_or(output, &serde_json::to_string_pretty(&v)?)?;
            let text = format!(
                "{} (p = {}): dim {}, weights {:?}",
                label,
                p,
                m.dim(),
                m.weights
            );
            Ok(Output::new(v, text))
        }
        Cmd::Verify { p, input, negative_control } => verify(cli, *p, input, *negative_control),
        Cmd::Decompose { src, output } => {
            let m = load(cli, src)?;
            let d = decompose(&m)?;
            if !d.verify(&m)? {
                return Err(Error::Classification("decomposition certificate failed".into()));
            }
            let rep = d.report();
            write_or(output, &rep.to_json())?;
            let parts: Vec<String> = d
                .summands
                .iter()
                .map(|(k, mult)| format!("{}:{}", entry_text(k), mult))
                .collect();
            Ok(Output::new(serde_json::to_value(&rep)?, format!("{{{}}}", parts.join(", "))))
        }
        Cmd::Blocks { src } => {
            let m = load(cli, src)?;
            let bs = blocks(&m)?;
            let v: Vec<Value> = bs.iter().map(|b| json!({"s": b.s, "dim": b.module.dim()})).collect();
            let text = bs
                .iter()
                .map(|b| format!("block {}: dim {}", b.s, b.module.dim()))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!({ "p": m.p, "blocks": v }), text))
        }
        Cmd::Hom { p, from, to } => {
            let a = labelled(cli, *p, from)?;
            let b = labelled(cli, *p, to)?;
            let d = hom_dim(&a, &b)?;
            Ok(Output::new(json!({"p": p, "from": from, "to": to, "dim": d}), d.to_string()))
        }
        Cmd::Ext { p, from, to, deg } => {
            let a = labelled(cli, *p, from)?;
            let b = labelled(cli, *p, to)?;
            let d = ext_dim(&a, &b, *deg)?;
            Ok(Output::new(
                json!({"p": p, "from": from, "to": to, "deg": deg, "dim": d}),
                d.to_string(),
            ))
        }
        Cmd::Resolve { src, len } => {
            let m = load(cli, src)?;
            if *len == 0 || *len > 8 {
                return Err(Error::OutOfRange(format!("--len {len} must be in 1..=8")));
            }
            let res = minimal_resolution(&m, *len)?;
            let terms: Vec<Vec<String>> = res
                .terms
                .iter()
                .map(|t| t.iter().map(|k| k.short_label()).collect())
                .collect();
            let text = terms
                .iter()
                .enumerate()
                .map(|(i, t)| format!("P_{i}: {}", if t.is_empty() { "0".into() } else { t.join(" + ") }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(
                json!({"terms": terms, "multiplicities": res.multiplicities(), "exact": res.is_exact()}),
                format!("{text}\nmultiplicities {:?}", res.multiplicities()),
            ))
        }
        Cmd::Yoneda { p, s, word } => yoneda(cli, *p, *s, word),
        Cmd::KronClassify { input } => {
            let rep = QuiverRep::from_json(&read(input)?)?;
            let d = classify(&rep)?;
            let v: Vec<Value> = d
                .summands
                .iter()
                .map(|(k, m)| {
                    let (d0, d1) = k.dims();
                    json!({"kind": k.to_string(), "dims": [d0, d1], "mult": m})
                })
                .collect();
            let text = d
                .summands
                .iter()
                .map(|(k, m)| format!("{k}:{m}"))
                .collect::<Vec<_>>()
                .join(", ");
            Ok(Output::new(json!({ "summands": v }), format!("{{{text}}}")))
        }
        Cmd::BraidCheck { p } => {
            braiding::require_p2(*p)?;
            let rep = braiding::verify_all();
            let mut scalars = serde_json::Map::new();
            let mut lines = Vec::new();
            for a in Sign::both() {
                for s in 1..=2 {
                    let c = braiding::ribbon_scalar(a, s)?;
                    lines.push(format!("v on X{a}_{s}: {c}"));
                    scalars.insert(format!("X{a}_{s}"), serde_json::to_value(&c)?);
                }
            }
            let status = if rep.all_pass() { "all checks pass".to_string() } else { format!("FAILED: {}", rep.failures().join(", ")) };
            let v = json!({"checks": rep, "all_pass": rep.all_pass(), "ribbon_scalars": scalars});
            if !rep.all_pass() {
                return Err(Error::Classification(status));
            }
            Ok(Output::new(v, format!("{status}\n{}", lines.join("\n"))))
        }
        Cmd::Center { p } => {
            check_p(cli, *p)?;
            let d = center_basis(Uq::restricted(*p)).len();
            Ok(Output::new(json!({"p": p, "dim": d}), d.to_string()))
        }
    }
}

fn entry_text(k: &Indecomposable) -> String {
    match (k.n(), k.z()) {
        (Some(n), Some(z)) => format!("{}[n={n},z={}:{}]", k.short_label(), z.z1, z.z2),
        (Some(n), None) => format!("{}[n={n}]", k.short_label()),
        _ => k.short_label(),
    }
}

fn verify(cli: &Cli, p: Option<u32>, input: &Option<PathBuf>, negative: bool) -> Result<Output> {
    if let Some(path) = input {
        let m = QMod::from_json(&read(path)?)?;
        check_p(cli, m.p)?;
        let res = m.verify();
        let ok = res.is_ok();
        let msg = res.err().unwrap_or_default();
        let text = if ok { "module relations hold".to_string() } else { format!("not a module: {msg}") };
        let out = Output::new(json!({"p": m.p, "dim": m.dim(), "ok": ok, "message": msg}), text);
        return if ok { Ok(out) } else { Err(Error::Invalid(out.text)) };
    }
    let p = p.ok_or_else(|| Error::Invalid("verify needs --p or --input".into()))?;
    check_p(cli, p)?;
    let rep = if negative {
        let a = Uq::restricted(p);
        verify_hopf_with(a, &Coproduct::perturbed(a))
    } else {
        verify_hopf(p)
    };
    let text = rep
        .checks
        .iter()
        .map(|(n, ok)| format!("{n}: {}", if *ok { "pass" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::new(
        json!({"p": p, "checks": rep.checks, "all_pass": rep.all_pass()}),
        text,
    ))
}

fn parse_generator(tok: &str) -> Result<(Sign, usize)> {
    let bad = || Error::Parse(format!("generator {tok:?} is not of the form x+:1 / x-:2"));
    let t = tok.trim();
    let rest = t.strip_prefix('x').ok_or_else(bad)?;
    let (sign, idx) = rest.split_once(':').ok_or_else(bad)?;
    let a = match sign {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        _ => return Err(bad()),
    };
    let i: usize = idx.parse().map_err(|_| bad())?;
    if !(1..=2).contains(&i) {
        return Err(bad());
    }
    Ok((a, i))
}

fn yoneda(cli: &Cli, p: u32, s: u32, word: &str) -> Result<Output> {
    check_p(cli, p)?;
    if !(1..p).contains(&s) {
        return Err(Error::OutOfRange(format!("s = {s} must satisfy 1 <= s <= p-1")));
    }
    let gens = word
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_generator)
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() || gens.len() > 4 {
        return Err(Error::OutOfRange("word length must be 1..=4".into()));
    }
    let alg = ExtAlgebra::new(p, s, gens.len())?;
    let classes = gens
        .iter()
        .map(|&(a, i)| alg.x(a, i))
        .collect::<Result<Vec<ExtClass>>>()?;
    let mut acc = classes.last().expect("nonempty").clone();
    for u in classes.iter().rev().skip(1) {
        acc = alg.yoneda(u, &acc)?;
    }
    let zero = alg.is_zero(&acc)?;
    let src = alg.irreducible_label(acc.source).short_label();
    let tgt = alg.irreducible_label(acc.target).short_label();
    Ok(Output::new(
        json!({"degree": acc.degree, "source": src, "target": tgt, "zero": zero}),
        format!(
            "degree {} class {} -> {}: {}",
            acc.degree,
            src,
            tgt,
            if zero { "zero" } else { "nonzero" }
        ),
    ))
}
