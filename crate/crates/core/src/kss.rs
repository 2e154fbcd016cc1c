//! The bijection ψ̄ between LR tableaux and rigged configurations: the
//! single-row steps δ̄⁻¹ and δ̄, string padding, and the reduction of
//! general rectangles to rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lr::{self, Family, LrTableau, Relabel};
use crate::partition::{Partition, Rect, RectSeq};
use crate::rc::{self, Configuration, RiggedConfig};
use crate::tableau::Tableau;

/// Selected string lengths of one δ̄⁻¹ or δ̄ step; `lengths[k-1]` for
/// `ν^{(k)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub r: usize,
    pub lengths: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BijectionTrace {
    pub steps: Vec<TraceStep>,
}

fn require_rows(rects: &RectSeq) -> Result<()> {
    if !rects.is_single_rows() {
        return Err(Error::DomainMismatch("single-row step applied to rectangles with several rows"));
    }
    Ok(())
}

fn rebuild(
    lam: Partition,
    rects: RectSeq,
    mut strings: Vec<Vec<(usize, usize)>>,
    fresh: &[(usize, usize)],
) -> Result<RiggedConfig> {
    // `fresh` lists (k, index) of strings whose labels become singular
    let nus: Vec<Vec<usize>> = strings.iter().map(|s| {
        let mut v: Vec<usize> = s.iter().map(|x| x.0).filter(|&l| l > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }).collect();
    let config = Configuration::new(lam, rects, nus)?;
    for &(k, idx) in fresh {
        let l = strings[k - 1][idx].0;
        if l == 0 {
            continue;
        }
        let p = config.vacancy(k, l);
        if p < 0 {
            return Err(Error::InternalInconsistency(alloc::format!("negative vacancy for a selected string in nu^({k})")));
        }
        strings[k - 1][idx].1 = p as usize;
    }
    RiggedConfig::new(config, strings).map_err(|e| Error::InternalInconsistency(alloc::format!("{e}")))
}

/// δ̄⁻¹: adds a box in row `r` to `λ` and extends the last row of `R` to
/// width `mu_l` (a new row when `mu_l = 1`).
pub fn delta_inv(rc: &RiggedConfig, r: usize, mu_l: usize) -> Result<(RiggedConfig, TraceStep)> {
    let c = rc.config();
    require_rows(c.rects())?;
    let n = c.n();
    if r == 0 || r > n || mu_l == 0 {
        return Err(Error::InvalidInput("row index or width out of range".into()));
    }
    let mut lam = c.lam().parts().to_vec();
    lam[r - 1] += 1;
    let lam = Partition::new(lam)?;
    let mut widths: Vec<usize> = c.rects().iter().map(|x| x.width).collect();
    if mu_l == 1 {
        widths.push(1);
    } else if widths.last() == Some(&(mu_l - 1)) {
        *widths.last_mut().expect("nonempty") += 1;
    } else {
        return Err(Error::InvalidInput("last row width does not match".into()));
    }
    let mut strings: Vec<Vec<(usize, usize)>> = rc.all_strings().to_vec();
    let mut lengths = vec![0; r.saturating_sub(1)];
    let mut fresh = Vec::new();
    let mut bound = usize::MAX;
    for k in (1..r).rev() {
        // strings are sorted longest first, so the first hit is the longest
        let hit = strings[k - 1].iter().position(|&(l, x)| l <= bound && x as i64 == c.vacancy(k, l));
        let idx = match hit {
            Some(i) => {
                bound = strings[k - 1][i].0;
                strings[k - 1][i].0 += 1;
                i
            }
            None => {
                bound = 0;
                strings[k - 1].push((1, 0));
                strings[k - 1].len() - 1
            }
        };
        lengths[k - 1] = bound;
        fresh.push((k, idx));
    }
    if r >= 2 && mu_l - 1 > lengths[0] {
        return Err(Error::InternalInconsistency("selected lengths start below the row width".into()));
    }
    let out = rebuild(lam, RectSeq::rows(&widths), strings, &fresh)?;
    Ok((out, TraceStep { r, lengths }))
}

/// δ̄: removes a box from the last row of `R` (width `mu_l`) and returns
/// the row `r` of `λ` that loses a box.
pub fn delta(rc: &RiggedConfig, mu_l: usize) -> Result<(RiggedConfig, TraceStep)> {
    let c = rc.config();
    require_rows(c.rects())?;
    if c.rects().last().map(|x| x.width) != Some(mu_l) {
        return Err(Error::InvalidInput("last row width does not match".into()));
    }
    let n = c.n();
    let mut strings: Vec<Vec<(usize, usize)>> = rc.all_strings().to_vec();
    let mut prev = mu_l;
    let mut r = n;
    let mut lengths = Vec::new();
    let mut fresh = Vec::new();
    for k in 1..n {
        let hit = strings[k - 1].iter().rposition(|&(l, x)| l >= prev && x as i64 == c.vacancy(k, l));
        match hit {
            Some(i) => {
                prev = strings[k - 1][i].0;
                lengths.push(prev);
                strings[k - 1][i].0 -= 1;
                fresh.push((k, i));
            }
            None => {
                r = k;
                break;
            }
        }
    }
    let mut lam = c.lam().parts().to_vec();
    lam[r - 1] = lam[r - 1]
        .checked_sub(1)
        .ok_or_else(|| Error::InternalInconsistency("delta removes a box from an empty row".into()))?;
    let lam = Partition::new(lam).map_err(|_| Error::InternalInconsistency("delta leaves a non-partition".into()))?;
    let mut widths: Vec<usize> = c.rects().iter().map(|x| x.width).collect();
    *widths.last_mut().expect("nonempty") -= 1;
    if widths.last() == Some(&0) {
        widths.pop();
    }
    let out = rebuild(lam, RectSeq::rows(&widths), strings, &fresh)?;
    Ok((out, TraceStep { r, lengths }))
}

fn empty_rc(n: usize) -> Result<RiggedConfig> {
    let config = Configuration::new(Partition::new(vec![0; n])?, RectSeq::default(), Vec::new())?;
    RiggedConfig::new(config, Vec::new())
}

/// ψ̄ for single rows: `t` is a `CST(λ;μ)` tableau (any labeling), `n` the rank.
pub fn psi_bar_rows(t: &LrTableau, n: usize) -> Result<RiggedConfig> {
    psi_bar_rows_traced(t, n).map(|x| x.0)
}

pub fn psi_bar_rows_traced(t: &LrTableau, n: usize) -> Result<(RiggedConfig, BijectionTrace)> {
    let t = lr::to_lr(t);
    require_rows(&t.rects)?;
    if t.tab.rows().len() > n {
        return Err(Error::InvalidInput("tableau has more than n rows".into()));
    }
    let mut rows: Vec<Vec<usize>> = t.tab.rows().to_vec();
    let mut widths: Vec<usize> = t.rects.iter().map(|x| x.width).collect();
    let mut removals = Vec::new();
    while let Some(&w) = widths.last() {
        let letter = widths.len();
        let r = rows
            .iter()
            .position(|row| row.last() == Some(&letter))
            .ok_or_else(|| Error::InvalidInput("tableau content does not match the rows".into()))?;
        rows[r].pop();
        removals.push((r + 1, w));
        *widths.last_mut().expect("nonempty") -= 1;
        if w == 1 {
            widths.pop();
        }
    }
    let mut rc = empty_rc(n)?;
    let mut trace = BijectionTrace::default();
    for &(r, w) in removals.iter().rev() {
        let (next, step) = delta_inv(&rc, r, w)?;
        rc = next;
        trace.steps.push(step);
    }
    Ok((rc, trace))
}

/// Inverse of `psi_bar_rows`; returns the tableau in the `LR` labeling.
pub fn psi_bar_rows_inv(rc: &RiggedConfig) -> Result<LrTableau> {
    let rects = rc.config().rects().clone();
    require_rows(&rects)?;
    let mut cur = rc.clone();
    let mut placed = Vec::new();
    while let Some(last) = cur.config().rects().last().copied() {
        let letter = cur.config().rects().len();
        let (next, step) = delta(&cur, last.width)?;
        placed.push((letter, step.r));
        cur = next;
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); rc.config().n()];
    for &(letter, r) in placed.iter().rev() {
        rows[r - 1].push(letter);
    }
    let q = LrTableau::new_unchecked(Tableau::from_rows_unchecked(rows), Family::Lr, rects);
    if !q.is_member() {
        return Err(Error::InternalInconsistency("inverse bijection produced a non-tableau".into()));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pad {
    Add,
    Remove,
}

/// `j_R` (add) and its inverse (remove).
pub fn pad_strings(rc: &RiggedConfig, rects: &RectSeq, dir: Pad) -> Result<RiggedConfig> {
    let c = rc.config();
    let n = c.n();
    let rows = rects.split_rows();
    let (from, to) = match dir {
        Pad::Add => (rects, &rows),
        Pad::Remove => (&rows, rects),
    };
    if c.rects() != from {
        return Err(Error::DomainMismatch("rigged configuration is over different rectangles"));
    }
    let mut strings: Vec<Vec<(usize, usize)>> = rc.all_strings().to_vec();
    for r in rects.iter() {
        for j in 1..r.height.min(n) {
            for _ in 0..r.height - j {
                match dir {
                    Pad::Add => strings[j - 1].push((r.width, 0)),
                    Pad::Remove => {
                        let i = strings[j - 1]
                            .iter()
                            .position(|&s| s == (r.width, 0))
                            .ok_or(Error::MissingPadString { k: j, len: r.width })?;
                        strings[j - 1].remove(i);
                    }
                }
            }
        }
    }
    let nus = strings.iter().map(|s| s.iter().map(|x| x.0).collect()).collect();
    let config = Configuration::new(c.lam().clone(), to.clone(), nus)?;
    RiggedConfig::new(config, strings)
}

/// ψ̄_R on an LR tableau of any labeling, with `λ` of rank `n`.
pub fn psi_bar(t: &LrTableau, n: usize) -> Result<RiggedConfig> {
    let q = lr::to_lr(t);
    let rows = lr::embed_lr(&q)?;
    let rc = psi_bar_rows(&rows, n)?;
    pad_strings(&rc, &q.rects, Pad::Remove)
}

/// Inverse of `psi_bar`, returned in the `RLR` labeling.
pub fn psi_bar_inv(rc: &RiggedConfig) -> Result<LrTableau> {
    let rects = rc.config().rects().clone();
    let padded = pad_strings(rc, &rects, Pad::Add)?;
    let rows = psi_bar_rows_inv(&padded)?;
    let q = lr::unembed_lr(&rows, &rects)?;
    lr::relabel(&q, Relabel::Std)
}

/// Smallest rank that holds the shape and every rectangle.
pub fn natural_rank(q: &LrTableau) -> usize {
    q.tab.rows().len().max(q.rects.max_height()).max(1)
}

/// `c(ψ̄_R(std(Q)))`.
pub fn charge_via_bijection(q: &LrTableau) -> Result<usize> {
    let c = psi_bar(q, natural_rank(q))?.charge();
    usize::try_from(c).map_err(|_| Error::InternalInconsistency(alloc::format!("negative charge {c}")))
}

/// `R_ρ`: single columns of heights `ρ^t_1, ρ^t_2, …`.
pub fn column_rects(rho: &[usize]) -> RectSeq {
    RectSeq::new(crate::partition::conjugate(rho).into_iter().map(|h| Rect::new(h, 1)).collect()).expect("positive")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkewReport {
    pub tableaux: usize,
    pub configs: usize,
    /// Tableaux whose image lies outside the rigged-configuration side.
    pub outside: Vec<LrTableau>,
    /// Rigged configurations not hit by any tableau.
    pub missed: Vec<RiggedConfig>,
}

impl SkewReport {
    pub fn holds(&self) -> bool {
        self.outside.is_empty() && self.missed.is_empty() && self.tableaux == self.configs
    }
}

fn rc_skew_ok(rc: &RiggedConfig, rho: &Partition) -> bool {
    let a = rho[0] - rho[rho.len() - 1];
    let c = rc.config();
    rc::witness_tableaux(rho).iter().any(|t| {
        (1..c.n()).all(|k| {
            (1..=a.max(1)).all(|i| {
                let m = rc::minima_table(t, rho, k, i).expect("witness from CST(ρ')");
                m <= c.vacancy(k, i) && rc.strings(k).iter().filter(|s| s.0 == i).all(|s| m <= s.1 as i64)
            }) && rc.strings(k).iter().all(|s| rc::minima_table(t, rho, k, s.0).expect("witness") <= s.1 as i64)
        })
    })
}

/// Experimental check that ψ̄ maps `RLR^ℓ(λ,ρ;R)` onto `RC^ℓ(λ,ρ;R)`.
pub fn check_skew(lam: &Partition, rho: &Partition, rects: &RectSeq, ell: usize) -> Result<SkewReport> {
    let n = lam.n();
    if rho.n() != n || rho.iter().zip(lam.iter()).any(|(a, b)| a > b) {
        return Err(Error::InvalidInput("rho must be contained in lambda with the same rank".into()));
    }
    let mut full = column_rects(rho);
    for r in rects.iter() {
        full.push(*r);
    }
    let t_rho = &lr::enumerate_lr(rho, &column_rects(rho), Family::Rlr)?[0];
    let size_rho = rho.size();
    let mut lhs = Vec::new();
    for q in lr::enumerate_lr(lam, &full, Family::Lr)? {
        if !lr::is_level_restricted_lr(&q, n, ell)? {
            continue;
        }
        let s = lr::relabel(&q, Relabel::Std)?;
        let inner: Vec<Vec<usize>> =
            s.tab.rows().iter().map(|r| r.iter().copied().filter(|&x| x <= size_rho).collect()).collect();
        if Tableau::from_rows_unchecked(inner) == t_rho.tab {
            lhs.push(s);
        }
    }
    let mut rhs = Vec::new();
    for nu in rc::enumerate_configs(lam, &full, Some(ell))? {
        for x in rc::enumerate_riggings(&nu) {
            if rc::is_level_restricted_rc(&x, ell) && rc_skew_ok(&x, rho) {
                rhs.push(x);
            }
        }
    }
    let mut report = SkewReport { tableaux: lhs.len(), configs: rhs.len(), ..Default::default() };
    let mut hit = vec![false; rhs.len()];
    for t in lhs {
        let img = psi_bar(&t, n)?;
        match rhs.iter().position(|x| *x == img) {
            Some(i) => hit[i] = true,
            None => report.outside.push(t),
        }
    }
    report.missed = rhs.into_iter().zip(hit).filter(|(_, h)| !h).map(|(x, _)| x).collect();
    Ok(report)
}
