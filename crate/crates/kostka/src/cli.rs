//! The `kostka` command: argument parsing, dispatch and reports.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kostka_core::branching::{self, BranchingSpec, ClWeight, LimitSeries};
use kostka_core::kss;
use kostka_core::lr::{self, Relabel};
use kostka_core::{Error, Partition, QSeries};
use serde_json::{json, Value};

use crate::format;
use crate::grid::{self, GridBounds, Instance, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kostka", version, about = "Level-restricted generalized Kostka polynomials")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for grid runs (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute K_{λR}(q) or its level-ℓ restriction.
    Kostka(KostkaArgs),
    /// Check the rigged-configuration bijection.
    VerifyBijection(BijectionArgs),
    /// Truncated coset branching-function series.
    Branching(BranchingArgs),
    /// EXPERIMENTAL: check the skew level-restriction conjecture on a grid.
    ConjectureSkew(SkewArgs),
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated parts, padded with zeros to rank n.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Rectangles "HxW,HxW,…" in order.
    #[arg(long)]
    pub rects: Option<String>,
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Method::Paths)]
    pub method: Method,
    /// Compare all methods; without an instance, run the desk grid.
    #[arg(long)]
    pub verify_all: bool,
}

#[derive(Args, Debug)]
pub struct BijectionArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// A single LR tableau, rows "a,b,c/d,e/…".
    #[arg(long)]
    pub tableau: Option<String>,
    #[arg(long, default_value = "rlr")]
    pub family: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchMethod {
    Limit,
    Fermionic,
    Both,
}

#[derive(Args, Debug)]
pub struct BranchingArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// "ℓ',ℓ''"
    #[arg(long)]
    pub level_split: String,
    /// Λ as "z0,z1,…,z_{n-1}".
    #[arg(long)]
    pub weight: String,
    /// Λ' = rΛ_s + (ℓ'−r)Λ_0, as "r,s".
    #[arg(long, default_value = "0,0")]
    pub rs: String,
    #[arg(long, default_value_t = 5)]
    pub trunc: u32,
    #[arg(long, value_enum, default_value_t = BranchMethod::Both)]
    pub method: BranchMethod,
    /// Row count k of the perfect crystal B^{k,ℓ'} used by the limit.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub m_cap: usize,
}

#[derive(Args, Debug)]
pub struct SkewArgs {
    /// Largest |λ| (also capped by KOSTKA_GRID_MAX).
    #[arg(long, default_value_t = 5)]
    pub max_size: usize,
    #[arg(long, default_value_t = 3)]
    pub max_level: usize,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // Fails only if the global pool already exists, e.g. on a second call in-process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let json = cli.json;
    let result = match &cli.command {
        Command::Kostka(a) => cmd_kostka(a, json, out),
        Command::VerifyBijection(a) => cmd_verify_bijection(a, json, out),
        Command::Branching(a) => cmd_branching(a, json, out),
        Command::ConjectureSkew(a) => Ok(cmd_conjecture_skew(a, json, out)),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn instance(a: &InstanceArgs) -> Result<Option<Instance>, Usage> {
    match (&a.lambda, &a.rects) {
        (None, None) => Ok(None),
        (Some(l), Some(r)) => {
            let rects = format::parse_rects(r)?;
            let given = format::parse_usize_list(l)?;
            let n = a.n.unwrap_or_else(|| given.len().max(rects.max_height()).max(1));
            Ok(Some(Instance { lam: Partition::with_rank(&given, n)?, rects }))
        }
        _ => Err(Usage("--lambda and --rects go together".into())),
    }
}

fn cmd_kostka(a: &KostkaArgs, json: bool, out: &mut dyn Write) -> Result<i32, Usage> {
    let inst = instance(&a.inst)?;
    let Some(inst) = inst else {
        if !a.verify_all {
            return Err(Usage("need --lambda and --rects (or --verify-all for the desk grid)".into()));
        }
        let bounds = GridBounds::default().from_env();
        let rep = grid::oracle_grid(&bounds);
        if json {
            emit(out, &format::envelope("kostka", json!({ "grid": rep, "passed": rep.passed() })));
        } else {
            let _ = writeln!(
                out,
                "grid |lambda| <= {}: {} instances, {} evaluations, {} mismatches, {} errors",
                bounds.max_size,
                rep.instances,
                rep.evaluations,
                rep.mismatches.len(),
                rep.errors.len()
            );
            for m in &rep.mismatches {
                let _ = writeln!(out, "MISMATCH {} ell={:?}: {:?}", m.instance, m.ell, m.values);
            }
            for e in &rep.errors {
                let _ = writeln!(out, "ERROR {e}");
            }
        }
        return Ok(if rep.passed() { EXIT_OK } else { EXIT_MISMATCH });
    };
    let ell = a.inst.ell;
    if let Some(l) = ell {
        kostka_core::rc::check_level(&inst.lam, &inst.rects, l)?;
    }
    kostka_core::partition::check_sizes(&inst.lam, &inst.rects)?;
    if !a.verify_all {
        let p = grid::evaluate(a.method, &inst.lam, &inst.rects, ell)?;
        if json {
            emit(
                out,
                &format::envelope(
                    "kostka",
                    json!({
                        "n": inst.lam.n(),
                        "lambda": inst.lam.parts(),
                        "rects": format::rects_text(&inst.rects),
                        "ell": ell,
                        "method": a.method,
                        "polynomial": format::poly_json(&p),
                    }),
                ),
            );
        } else {
            let _ = writeln!(out, "{p}");
        }
        return Ok(EXIT_OK);
    }
    let mut rows = Vec::new();
    for m in Method::ALL {
        if ell.is_none() && m.needs_level() {
            continue;
        }
        let v = grid::evaluate(m, &inst.lam, &inst.rects, ell).map_err(|e| e.to_string());
        rows.push((m, v));
    }
    let first = rows.iter().find_map(|(_, v)| v.as_ref().ok()).cloned();
    let agree = rows.iter().all(|(_, v)| v.as_ref().ok() == first.as_ref());
    if json {
        let methods: serde_json::Map<String, Value> = rows
            .iter()
            .map(|(m, v)| {
                let val = match v {
                    Ok(p) => format::poly_json(p),
                    Err(e) => json!({ "error": e }),
                };
                (m.name().to_string(), val)
            })
            .collect();
        emit(
            out,
            &format::envelope(
                "kostka",
                json!({
                    "n": inst.lam.n(),
                    "lambda": inst.lam.parts(),
                    "rects": format::rects_text(&inst.rects),
                    "ell": ell,
                    "methods": methods,
                    "agree": agree,
                }),
            ),
        );
    } else {
        for (m, v) in &rows {
            let text = match v {
                Ok(p) => p.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let mark = if v.as_ref().ok() == first.as_ref() { " " } else { "*" };
            let _ = writeln!(out, "{mark} {:<10} {text}", m.name());
        }
        let _ = writeln!(out, "{}", if agree { "all methods agree" } else { "MISMATCH" });
    }
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_verify_bijection(a: &BijectionArgs, json: bool, out: &mut dyn Write) -> Result<i32, Usage> {
    let inst = instance(&a.inst)?;
    if let Some(text) = &a.tableau {
        let inst = inst.ok_or_else(|| Usage("--tableau needs --lambda and --rects".into()))?;
        let family = format::parse_family(&a.family)?;
        let q = format::lr_from_text(text, family, &inst.rects)?;
        if q.shape() != inst.lam.iter().copied().filter(|&x| x > 0).collect::<Vec<_>>() {
            return Err(Usage("tableau shape differs from lambda".into()));
        }
        let n = inst.lam.n();
        let x = kss::psi_bar(&q, n)?;
        let back = kss::psi_bar_inv(&x)?;
        let std = lr::relabel(&lr::to_lr(&q), Relabel::Std)?;
        let inverse_ok = back == std;
        let charge = lr::charge_via_average(&q)?;
        let charge_ok = x.charge() == charge as i64;
        let pass = inverse_ok && charge_ok;
        if json {
            emit(
                out,
                &format::envelope(
                    "verify-bijection",
                    json!({
                        "tableau": format::format_tableau(&q.tab),
                        "rigged_configuration": x.to_string(),
                        "inverse": format::format_tableau(&back.tab),
                        "charge": x.charge(),
                        "inverse_ok": inverse_ok,
                        "charge_ok": charge_ok,
                        "passed": pass,
                    }),
                ),
            );
        } else {
            let _ = writeln!(out, "rigged configuration: {x}");
            let _ = writeln!(out, "inverse: {}", format::format_tableau(&back.tab));
            let _ = writeln!(out, "charge: {} (tableau {charge})", x.charge());
            let _ = writeln!(out, "{}", if pass { "pass" } else { "FAIL" });
        }
        return Ok(if pass { EXIT_OK } else { EXIT_MISMATCH });
    }
    let bounds = GridBounds::default().from_env();
    let rep = match inst {
        Some(i) => grid::check_bijection(&i, a.inst.ell.unwrap_or(bounds.max_level)),
        None => grid::bijection_grid(&bounds),
    };
    if json {
        emit(out, &format::envelope("verify-bijection", json!({ "report": rep, "passed": rep.passed() })));
    } else {
        let _ = writeln!(out, "{} instances, {} tableaux, {} failures", rep.instances, rep.items, rep.failures.len());
        for f in &rep.failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        let _ = writeln!(out, "{}", if rep.passed() { "pass" } else { "FAIL" });
    }
    Ok(if rep.passed() { EXIT_OK } else { EXIT_MISMATCH })
}

fn series_line(name: &str, s: &QSeries) -> String {
    format!("{name:<10} {s}")
}

fn cmd_branching(a: &BranchingArgs, json: bool, out: &mut dyn Write) -> Result<i32, Usage> {
    let lam = ClWeight::parse(&a.weight)?;
    if let Some(n) = a.n {
        if n != lam.n() {
            return Err(Usage(format!("--weight has {} entries but --n is {n}", lam.n())));
        }
    }
    let (ellprime, elldoubleprime) = format::parse_pair(&a.level_split)?;
    let (r, s) = format::parse_pair(&a.rs)?;
    let spec = BranchingSpec { lam: lam.clone(), r, s, ellprime, elldoubleprime, k: a.k };
    spec.validate()?;
    if elldoubleprime == 0 {
        return Err(Usage("the level split needs l'' >= 1".into()));
    }
    let limit: Option<LimitSeries> = match a.method {
        BranchMethod::Fermionic => None,
        _ => match branching::branching_series(&spec, a.trunc, a.m_cap) {
            Ok(l) => Some(l),
            Err(e @ Error::NoStabilization { .. }) => {
                let _ = writeln!(out, "{e}; raise --m-cap");
                return Ok(EXIT_MISMATCH);
            }
            Err(e) => return Err(e.into()),
        },
    };
    let ferm = match a.method {
        BranchMethod::Limit => None,
        _ => Some(branching::branching_fermionic(&lam, r, s, ellprime, a.trunc)?),
    };
    let cmp = match (&limit, &ferm) {
        (Some(l), Some(f)) => Some(branching::compare_aligned(&l.series, f, a.trunc)),
        _ => None,
    };
    let agree = cmp.as_ref().is_none_or(|c| c.coefficients_agree);
    if json {
        emit(
            out,
            &format::envelope(
                "branching",
                json!({
                    "weight": lam.to_string(),
                    "lambda_prime": spec.lam_prime().to_string(),
                    "lambda_double_prime": ClWeight::vacuum(elldoubleprime, lam.n()).to_string(),
                    "limit": limit.as_ref().map(|l| json!({
                        "series": format::series_json(&l.series),
                        "m_used": l.m_used,
                        "degenerate": l.degenerate,
                    })),
                    "fermionic": ferm.as_ref().map(format::series_json),
                    "aligned_agree": cmp.as_ref().map(|c| c.coefficients_agree),
                    "offsets_agree": cmp.as_ref().map(|c| c.offsets_agree()),
                }),
            ),
        );
    } else {
        let _ = writeln!(out, "{}", branching::describe(&spec));
        if let Some(l) = &limit {
            if l.degenerate {
                let _ = writeln!(out, "{:<10} 0 (no partition of the right size projects to Lambda)", "limit");
            } else {
                let _ = writeln!(out, "{}  [M = {}]", series_line("limit", &l.series), l.m_used);
            }
        }
        if let Some(f) = &ferm {
            let _ = writeln!(out, "{}", series_line("fermionic", f));
        }
        if cmp.as_ref().is_some_and(|c| c.left.is_zero() && c.right.is_zero()) {
            let _ = writeln!(out, "both series vanish");
        } else if let Some(c) = &cmp {
            let _ = writeln!(
                out,
                "aligned coefficients {}; offsets {} vs {}{}",
                if c.coefficients_agree { "agree" } else { "DIFFER" },
                c.left.offset,
                c.right.offset,
                if c.offsets_agree() { "" } else { " (normalizations differ by a global power of q)" }
            );
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_conjecture_skew(a: &SkewArgs, json: bool, out: &mut dyn Write) -> i32 {
    let bounds = GridBounds { max_size: a.max_size, max_level: a.max_level, ..Default::default() }.from_env();
    let s = grid::skew_grid(&bounds);
    if json {
        emit(out, &format::envelope("conjecture-skew", json!({ "experimental": true, "max_size": bounds.max_size, "report": s })));
    } else {
        let _ = writeln!(out, "EXPERIMENTAL skew conjecture check, |lambda| <= {}", bounds.max_size);
        let _ = writeln!(
            out,
            "{} cases, {} tableaux, {} discrepancies, {} errors",
            s.cases,
            s.tableaux,
            s.discrepancies.len(),
            s.errors.len()
        );
        for d in &s.discrepancies {
            let _ = writeln!(out, "DISCREPANCY {d}");
        }
        for e in &s.errors {
            let _ = writeln!(out, "ERROR {e}");
        }
    }
    EXIT_OK
}
