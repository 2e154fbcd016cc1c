//! Evaluation routes and the desk-scale verification grids.

use std::collections::BTreeSet;
use std::fmt;

use kostka_core::kss::{self, SkewReport};
use kostka_core::lr::{self, ChargeMethod, Family, Relabel};
use kostka_core::partition::partitions_with_rank;
use kostka_core::rc::{self, RiggedConfig};
use kostka_core::{fermionic, path, Error, Partition, QPoly, Rect, RectSeq, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Paths,
    Lr,
    Rc,
    Fermionic,
    Mn,
    Weyl,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Paths, Method::Lr, Method::Rc, Method::Fermionic, Method::Mn, Method::Weyl];

    pub fn name(self) -> &'static str {
        match self {
            Method::Paths => "paths",
            Method::Lr => "lr",
            Method::Rc => "rc",
            Method::Fermionic => "fermionic",
            Method::Mn => "mn",
            Method::Weyl => "weyl",
        }
    }

    /// The (m,n)-system and Weyl forms only exist at finite level.
    pub fn needs_level(self) -> bool {
        matches!(self, Method::Mn | Method::Weyl)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn evaluate(method: Method, lam: &Partition, rects: &RectSeq, ell: Option<usize>) -> Result<QPoly> {
    match (method, ell) {
        (Method::Paths, _) => path::kostka_via_paths(lam, rects, ell),
        (Method::Lr, _) => lr::kostka_via_lr(lam, rects, ell, ChargeMethod::ViaAverage),
        (Method::Rc, _) => rc::kostka_via_rc(lam, rects, ell),
        (Method::Fermionic, None) => fermionic::fermionic_kostka(lam, rects),
        (Method::Fermionic, Some(l)) => fermionic::fermionic_level_kostka(lam, rects, l),
        (Method::Mn, Some(l)) => fermionic::kostka_level_mn(lam, rects, l),
        (Method::Weyl, Some(l)) => fermionic::kostka_level_weyl(lam, rects, l),
        (m, None) => Err(Error::InvalidInput(format!("method {m} needs --ell"))),
    }
}

/// One `(λ; R)` instance of a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub lam: Partition,
    pub rects: RectSeq,
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} lambda={} R={}", self.lam.n(), self.lam, self.rects)
    }
}

#[derive(Clone, Debug)]
pub struct GridBounds {
    pub ranks: Vec<usize>,
    pub max_size: usize,
    pub max_level: usize,
    pub shapes: Vec<Rect>,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            ranks: vec![2, 3],
            max_size: 6,
            max_level: 3,
            shapes: vec![Rect::new(1, 1), Rect::new(1, 2), Rect::new(2, 1), Rect::new(2, 2)],
        }
    }
}

impl GridBounds {
    /// Applies `KOSTKA_GRID_MAX` as an upper bound on `|λ|`.
    pub fn from_env(mut self) -> Self {
        if let Some(m) = std::env::var("KOSTKA_GRID_MAX").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            self.max_size = self.max_size.min(m);
        }
        self
    }

    /// Every ordered rectangle sequence of total area in `1..=max_size`.
    pub fn rect_seqs(&self) -> Vec<RectSeq> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Rect>> = vec![Vec::new()];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in &layer {
                let area: usize = s.iter().map(Rect::area).sum();
                for r in &self.shapes {
                    if area + r.area() <= self.max_size {
                        let mut t = s.clone();
                        t.push(*r);
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().map(|v| RectSeq::new(v.clone()).expect("positive shapes")));
            layer = next;
        }
        out
    }

    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for &n in &self.ranks {
            for rects in self.rect_seqs() {
                if rects.max_height() > n {
                    continue;
                }
                for lam in partitions_with_rank(rects.size(), n) {
                    out.push(Instance { lam, rects: rects.clone() });
                }
            }
        }
        out
    }

    pub fn levels(&self, inst: &Instance) -> Vec<usize> {
        (1..=self.max_level).filter(|&l| rc::check_level(&inst.lam, &inst.rects, l).is_ok()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub instance: String,
    pub ell: Option<usize>,
    pub values: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    pub instances: usize,
    pub evaluations: usize,
    pub mismatches: Vec<Mismatch>,
    pub errors: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.errors.is_empty()
    }

    fn merge(mut self, other: OracleReport) -> OracleReport {
        self.instances += other.instances;
        self.evaluations += other.evaluations;
        self.mismatches.extend(other.mismatches);
        self.errors.extend(other.errors);
        self
    }
}

/// Evaluates every applicable method and reports disagreements.
pub fn compare_methods(inst: &Instance, ell: Option<usize>, methods: &[Method]) -> OracleReport {
    let mut rep = OracleReport { instances: 1, ..Default::default() };
    let mut values = Vec::new();
    for &m in methods {
        if ell.is_none() && m.needs_level() {
            continue;
        }
        match evaluate(m, &inst.lam, &inst.rects, ell) {
            Ok(p) => values.push((m.name().to_string(), p)),
            Err(e) => rep.errors.push(format!("{inst} ell={ell:?} {m}: {e}")),
        }
        rep.evaluations += 1;
    }
    if values.windows(2).any(|w| w[0].1 != w[1].1) {
        rep.mismatches.push(Mismatch {
            instance: inst.to_string(),
            ell,
            values: values.into_iter().map(|(m, p)| (m, p.to_string())).collect(),
        });
    }
    rep
}

/// Unrestricted: paths, LR charge, rigged configurations, fermionic sum.
/// Level-restricted, for each admissible `ℓ`: all six routes.
pub fn oracle_grid(bounds: &GridBounds) -> OracleReport {
    let unrestricted = [Method::Paths, Method::Lr, Method::Rc, Method::Fermionic];
    bounds
        .instances()
        .par_iter()
        .map(|inst| {
            let mut rep = compare_methods(inst, None, &unrestricted);
            for ell in bounds.levels(inst) {
                let mut r = compare_methods(inst, Some(ell), &Method::ALL);
                r.instances = 0;
                rep = rep.merge(r);
            }
            rep
        })
        .reduce(OracleReport::default, OracleReport::merge)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub instances: usize,
    pub items: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: PropertyReport) -> PropertyReport {
        self.instances += other.instances;
        self.items += other.items;
        self.failures.extend(other.failures);
        self
    }
}

/// ψ̄ on `LR(λ;R)`: bijective onto `RC(λ;R)`, charge-preserving, and
/// level-restriction-preserving for every admissible level up to `max_level`.
pub fn check_bijection(inst: &Instance, max_level: usize) -> PropertyReport {
    let mut rep = PropertyReport { instances: 1, ..Default::default() };
    let mut fail = |s: String| rep.failures.push(format!("{inst}: {s}"));
    let run = || -> Result<Vec<String>> {
        let n = inst.lam.n();
        let mut bad = Vec::new();
        let tabs = lr::enumerate_lr(&inst.lam, &inst.rects, Family::Lr)?;
        let levels: Vec<usize> =
            (1..=max_level).filter(|&l| rc::check_level(&inst.lam, &inst.rects, l).is_ok()).collect();
        let mut image = BTreeSet::new();
        for q in &tabs {
            let x = kss::psi_bar(q, n)?;
            if kss::psi_bar_inv(&x)? != lr::relabel(q, Relabel::Std)? {
                bad.push(format!("inverse fails on {}", q.tab));
            }
            let c = lr::charge_via_average(q)?;
            if x.charge() != c as i64 {
                bad.push(format!("charge {} vs {} on {}", x.charge(), c, q.tab));
            }
            for &l in &levels {
                if lr::is_level_restricted_lr(q, n, l)? != rc::is_level_restricted_rc(&x, l) {
                    bad.push(format!("level {l} not preserved on {}", q.tab));
                }
            }
            image.insert(x);
        }
        if image.len() != tabs.len() {
            bad.push("not injective".into());
        }
        let all: BTreeSet<RiggedConfig> =
            rc::enumerate_configs(&inst.lam, &inst.rects, None)?.iter().flat_map(rc::enumerate_riggings).collect();
        if image != all {
            bad.push(format!("image has {} elements, RC(λ;R) has {}", image.len(), all.len()));
        }
        Ok(bad)
    };
    match run() {
        Ok(bad) => bad.into_iter().for_each(&mut fail),
        Err(e) => fail(e.to_string()),
    }
    rep.items = lr::enumerate_lr(&inst.lam, &inst.rects, Family::Lr).map_or(0, |v| v.len());
    rep
}

/// `θ∘θ = id` and `c(θ(ν,J)) = ||R|| − cc(ν,J)` on every rigged configuration.
pub fn check_theta(inst: &Instance) -> PropertyReport {
    let mut rep = PropertyReport { instances: 1, ..Default::default() };
    let configs = match rc::enumerate_configs(&inst.lam, &inst.rects, None) {
        Ok(c) => c,
        Err(e) => {
            rep.failures.push(format!("{inst}: {e}"));
            return rep;
        }
    };
    for nu in configs {
        let norm = nu.charges().norm;
        for x in rc::enumerate_riggings(&nu) {
            rep.items += 1;
            let t = rc::theta(&x);
            if t.validate().is_err() || rc::theta(&t) != x {
                rep.failures.push(format!("{inst}: theta not an involution on {x}"));
            }
            if t.charge() != norm - x.cocharge() {
                rep.failures.push(format!("{inst}: c(theta) = {} but ||R|| - cc = {} on {x}", t.charge(), norm - x.cocharge()));
            }
        }
    }
    rep
}

pub fn bijection_grid(bounds: &GridBounds) -> PropertyReport {
    bounds
        .instances()
        .par_iter()
        .map(|i| check_bijection(i, bounds.max_level))
        .reduce(PropertyReport::default, PropertyReport::merge)
}

pub fn theta_grid(bounds: &GridBounds) -> PropertyReport {
    bounds.instances().par_iter().map(check_theta).reduce(PropertyReport::default, PropertyReport::merge)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SkewSummary {
    pub cases: usize,
    pub tableaux: usize,
    pub discrepancies: Vec<String>,
    pub errors: Vec<String>,
}

/// Skew cases `(λ, ρ, R, ℓ)` with `∅ ≠ ρ ⊊ λ` and `|λ| ≤ max_size`.
pub fn skew_cases(bounds: &GridBounds) -> Vec<(Partition, Partition, RectSeq, usize)> {
    let mut out = Vec::new();
    for &n in &bounds.ranks {
        for size in 1..=bounds.max_size {
            for lam in partitions_with_rank(size, n) {
                for rsize in 1..size {
                    for rho in partitions_with_rank(rsize, n) {
                        if rho.iter().zip(lam.iter()).any(|(a, b)| a > b) {
                            continue;
                        }
                        let sub = GridBounds { max_size: size - rsize, ..bounds.clone() };
                        for rects in sub.rect_seqs() {
                            if rects.size() != size - rsize || rects.max_height() > n {
                                continue;
                            }
                            let mut full = kss::column_rects(&rho);
                            for r in rects.iter() {
                                full.push(*r);
                            }
                            for ell in 1..=bounds.max_level {
                                if rc::check_level(&lam, &full, ell).is_ok() {
                                    out.push((lam.clone(), rho.clone(), rects.clone(), ell));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn skew_grid(bounds: &GridBounds) -> SkewSummary {
    let cases = skew_cases(bounds);
    let results: Vec<(String, Result<SkewReport>)> = cases
        .par_iter()
        .map(|(lam, rho, rects, ell)| {
            let label = format!("lambda={lam} rho={rho} R={rects} ell={ell}");
            (label, kss::check_skew(lam, rho, rects, *ell))
        })
        .collect();
    let mut s = SkewSummary { cases: results.len(), ..Default::default() };
    for (label, r) in results {
        match r {
            Ok(rep) => {
                s.tableaux += rep.tableaux;
                if !rep.holds() {
                    s.discrepancies.push(format!(
                        "{label}: {} tableaux, {} configurations, {} outside, {} missed",
                        rep.tableaux,
                        rep.configs,
                        rep.outside.len(),
                        rep.missed.len()
                    ));
                }
            }
            Err(e) => s.errors.push(format!("{label}: {e}")),
        }
    }
    s
}
