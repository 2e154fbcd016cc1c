//! Configurations, rigged configurations, vacancy numbers and the
//! level-restriction test with modified vacancy numbers.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::partition::{
    check_sizes, column_counts, conjugate, multiplicity, partitions_in_box, partitions_of, Partition, Rect, RectSeq,
};
use crate::qpoly::{q_binomial, QPoly};
use crate::tableau::{tableaux_of_shape, Tableau};

/// `ν = (ν^{(1)}, …, ν^{(n-1)})` for a fixed `(λ; R)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    lam: Partition,
    rects: RectSeq,
    nus: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Charges {
    pub cc: i64,
    pub c: i64,
    pub norm: i64,
    pub abs_p: i64,
}

/// `|ν^{(k)}|` for `k = 1..n-1`; `None` when the constraints cannot hold.
pub fn config_sizes(lam: &Partition, rects: &RectSeq) -> Option<Vec<usize>> {
    let n = lam.n();
    let top = n.max(rects.max_height());
    let mut out = Vec::new();
    for k in 1..=top {
        let a: i64 = lam.iter().skip(k).map(|&x| x as i64).sum();
        let b: i64 = rects.iter().map(|r| (r.width * r.height.saturating_sub(k)) as i64).sum();
        let s = a - b;
        if s < 0 || (k >= n && s != 0) {
            return None;
        }
        if k < n {
            out.push(s as usize);
        }
    }
    Some(out)
}

impl Configuration {
    pub fn new(lam: Partition, rects: RectSeq, mut nus: Vec<Vec<usize>>) -> Result<Self> {
        let n = lam.n();
        let sizes = config_sizes(&lam, &rects).ok_or_else(|| Error::InvalidInput("no configurations for this (λ;R)".into()))?;
        if nus.len() > n.saturating_sub(1) {
            return Err(Error::InvalidInput("too many partitions in configuration".into()));
        }
        nus.resize(n.saturating_sub(1), Vec::new());
        for (k, nu) in nus.iter_mut().enumerate() {
            nu.retain(|&x| x > 0);
            nu.sort_unstable_by(|a, b| b.cmp(a));
            if nu.iter().sum::<usize>() != sizes[k] {
                return Err(Error::InvalidInput(alloc::format!("|nu^({})| must be {}", k + 1, sizes[k])));
            }
        }
        Ok(Configuration { lam, rects, nus })
    }

    pub(crate) fn new_unchecked(lam: Partition, rects: RectSeq, nus: Vec<Vec<usize>>) -> Self {
        Configuration { lam, rects, nus }
    }

    pub fn lam(&self) -> &Partition {
        &self.lam
    }

    pub fn rects(&self) -> &RectSeq {
        &self.rects
    }

    pub fn n(&self) -> usize {
        self.lam.n()
    }

    pub fn nus(&self) -> &[Vec<usize>] {
        &self.nus
    }

    /// `ν^{(k)}`; empty for `k = 0` and `k ≥ n`.
    pub fn nu(&self, k: usize) -> &[usize] {
        if k == 0 || k > self.nus.len() {
            &[]
        } else {
            &self.nus[k - 1]
        }
    }

    /// `P_i^{(k)}(ν)`.
    pub fn vacancy(&self, k: usize, i: usize) -> i64 {
        let q = |p: &[usize]| column_counts(p, i) as i64;
        let xi = self.rects.xi(k);
        q(self.nu(k - 1)) - 2 * q(self.nu(k)) + q(self.nu(k + 1)) + q(&xi)
    }

    /// Beyond this `i` the vacancy numbers of row `k` are constant.
    pub fn stable_bound(&self, k: usize) -> usize {
        let m = |p: &[usize]| p.iter().copied().max().unwrap_or(0);
        m(self.nu(k - 1)).max(m(self.nu(k))).max(m(self.nu(k + 1))).max(m(&self.rects.xi(k))).max(1)
    }

    pub fn is_admissible(&self) -> bool {
        (1..self.n()).all(|k| (1..=self.stable_bound(k)).all(|i| self.vacancy(k, i) >= 0))
    }

    pub fn cc(&self) -> i64 {
        let cols: Vec<Vec<usize>> = (0..=self.n()).map(|k| conjugate(self.nu(k))).collect();
        let mut s = 0i64;
        for k in 1..self.n() {
            for (i, &a) in cols[k].iter().enumerate() {
                let b = cols[k + 1].get(i).copied().unwrap_or(0);
                s += a as i64 * (a as i64 - b as i64);
            }
        }
        s
    }

    /// `|P| = Σ m_i(ν^{(k)}) P_i^{(k)}(ν)`.
    pub fn abs_p(&self) -> i64 {
        let mut s = 0;
        for k in 1..self.n() {
            let nu = self.nu(k);
            let mut last = 0;
            for &i in nu {
                if i != last {
                    s += multiplicity(nu, i) as i64 * self.vacancy(k, i);
                    last = i;
                }
            }
        }
        s
    }

    pub fn charges(&self) -> Charges {
        let cc = self.cc();
        let norm = self.rects.norm() as i64;
        let abs_p = self.abs_p();
        Charges { cc, c: norm - cc - abs_p, norm, abs_p }
    }

    /// Distinct part lengths of `ν^{(k)}` with multiplicities, longest first.
    pub fn multiplicities(&self, k: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in self.nu(k) {
            match out.last_mut() {
                Some((l, m)) if *l == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

pub fn charges(nu: &Configuration) -> Charges {
    nu.charges()
}

/// All admissible configurations, optionally with `ν_1^{(k)} ≤ cap`.
pub fn enumerate_configs(lam: &Partition, rects: &RectSeq, cap: Option<usize>) -> Result<Vec<Configuration>> {
    check_sizes(lam, rects)?;
    let Some(sizes) = config_sizes(lam, rects) else { return Ok(Vec::new()) };
    let n = lam.n();
    let mut out = Vec::new();
    let mut cur = Configuration::new_unchecked(lam.clone(), rects.clone(), vec![Vec::new(); n.saturating_sub(1)]);
    configs_rec(&sizes, cap, 1, &mut cur, &mut out);
    Ok(out)
}

fn row_ok(c: &Configuration, k: usize) -> bool {
    (1..=c.stable_bound(k)).all(|i| c.vacancy(k, i) >= 0)
}

fn configs_rec(sizes: &[usize], cap: Option<usize>, k: usize, cur: &mut Configuration, out: &mut Vec<Configuration>) {
    let n = cur.n();
    if k >= n {
        if n < 2 || row_ok(cur, n - 1) {
            out.push(cur.clone());
        }
        return;
    }
    let s = sizes[k - 1];
    for p in partitions_of(s, cap.unwrap_or(s).min(s)) {
        cur.nus[k - 1] = p;
        if k >= 2 && !row_ok(cur, k - 1) {
            continue;
        }
        configs_rec(sizes, cap, k + 1, cur, out);
    }
    cur.nus[k - 1] = Vec::new();
}

/// A rigged configuration; strings `(length, label)` per `k`, longest first
/// and labels descending among equal lengths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RiggedConfig {
    config: Configuration,
    strings: Vec<Vec<(usize, usize)>>,
}

fn canonical(strings: &mut [Vec<(usize, usize)>]) {
    for s in strings.iter_mut() {
        s.retain(|&(l, _)| l > 0);
        s.sort_unstable_by(|a, b| b.cmp(a));
    }
}

impl RiggedConfig {
    /// Validates lengths against `ν` and `0 ≤ x ≤ P`.
    pub fn new(config: Configuration, mut strings: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        strings.resize(config.nus.len(), Vec::new());
        if strings.len() != config.nus.len() {
            return Err(Error::InvalidInput("wrong number of rigged partitions".into()));
        }
        canonical(&mut strings);
        let rc = RiggedConfig { config, strings };
        rc.validate()?;
        Ok(rc)
    }

    /// Builds `ν` from the string lengths.
    pub fn from_strings(lam: Partition, rects: RectSeq, strings: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let nus = strings.iter().map(|s| s.iter().map(|&(l, _)| l).collect()).collect();
        RiggedConfig::new(Configuration::new(lam, rects, nus)?, strings)
    }

    pub(crate) fn new_unchecked(config: Configuration, mut strings: Vec<Vec<(usize, usize)>>) -> Self {
        canonical(&mut strings);
        RiggedConfig { config, strings }
    }

    pub fn validate(&self) -> Result<()> {
        for (k, s) in self.strings.iter().enumerate() {
            let lens: Vec<usize> = s.iter().map(|x| x.0).collect();
            if lens != self.config.nus[k] {
                return Err(Error::InvalidInput(alloc::format!("string lengths differ from nu^({})", k + 1)));
            }
            for &(l, x) in s {
                let p = self.config.vacancy(k + 1, l);
                if (x as i64) > p {
                    return Err(Error::InvalidInput(alloc::format!(
                        "label {x} exceeds vacancy {p} for a string of length {l} in nu^({})",
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    /// Strings of `(ν,J)^{(k)}`.
    pub fn strings(&self, k: usize) -> &[(usize, usize)] {
        if k == 0 || k > self.strings.len() {
            &[]
        } else {
            &self.strings[k - 1]
        }
    }

    pub fn all_strings(&self) -> &[Vec<(usize, usize)>] {
        &self.strings
    }

    pub fn labels_sum(&self) -> i64 {
        self.strings.iter().flatten().map(|&(_, x)| x as i64).sum()
    }

    /// `c(ν,J) = c(ν) + |J|`.
    pub fn charge(&self) -> i64 {
        self.config.charges().c + self.labels_sum()
    }

    /// `cc(ν,J) = cc(ν) + |J|`.
    pub fn cocharge(&self) -> i64 {
        self.config.cc() + self.labels_sum()
    }

    /// `x_i^{(k)}`: largest label on strings of length `i`, or 0.
    pub fn max_label(&self, k: usize, i: usize) -> usize {
        self.strings(k).iter().filter(|s| s.0 == i).map(|s| s.1).max().unwrap_or(0)
    }

    pub fn is_singular(&self, k: usize, s: (usize, usize)) -> bool {
        s.1 as i64 == self.config.vacancy(k, s.0)
    }
}

impl fmt::Display for RiggedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.strings.iter().enumerate() {
            if k > 0 {
                f.write_str("||")?;
            }
            for (j, (l, x)) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}:{x}")?;
            }
        }
        Ok(())
    }
}

/// Every rigging of an admissible configuration.
pub fn enumerate_riggings(nu: &Configuration) -> Vec<RiggedConfig> {
    let mut blocks: Vec<(usize, Vec<Vec<(usize, usize)>>)> = Vec::new();
    for k in 1..nu.n() {
        for (i, m) in nu.multiplicities(k) {
            let p = nu.vacancy(k, i).max(0) as usize;
            let choices = partitions_in_box(m, p)
                .into_iter()
                .map(|mut part| {
                    part.resize(m, 0);
                    part.into_iter().map(|x| (i, x)).collect()
                })
                .collect();
            blocks.push((k, choices));
        }
    }
    let mut out = Vec::new();
    let mut strings = vec![Vec::new(); nu.nus.len()];
    riggings_rec(nu, &blocks, 0, &mut strings, &mut out);
    out
}

fn riggings_rec(
    nu: &Configuration,
    blocks: &[(usize, Vec<Vec<(usize, usize)>>)],
    b: usize,
    strings: &mut Vec<Vec<(usize, usize)>>,
    out: &mut Vec<RiggedConfig>,
) {
    if b == blocks.len() {
        out.push(RiggedConfig::new_unchecked(nu.clone(), strings.clone()));
        return;
    }
    let (k, choices) = &blocks[b];
    let base = strings[k - 1].len();
    for c in choices {
        strings[k - 1].extend_from_slice(c);
        riggings_rec(nu, blocks, b + 1, strings, out);
        strings[k - 1].truncate(base);
    }
}

/// `θ_R`: every label `x` becomes `P − x`.
pub fn theta(rc: &RiggedConfig) -> RiggedConfig {
    let c = &rc.config;
    let strings = rc
        .strings
        .iter()
        .enumerate()
        .map(|(k, s)| s.iter().map(|&(l, x)| (l, (c.vacancy(k + 1, l) - x as i64) as usize)).collect())
        .collect();
    RiggedConfig::new_unchecked(c.clone(), strings)
}

/// `λ' = (λ_1−λ_n, …, λ_{n-1}−λ_n)^t`.
pub fn lambda_prime(lam: &[usize]) -> Vec<usize> {
    let last = *lam.last().unwrap_or(&0);
    let v: Vec<usize> = lam[..lam.len().saturating_sub(1)].iter().map(|&x| x - last).collect();
    conjugate(&v)
}

/// `CST(λ')` over the alphabet `1..=λ_1−λ_n`.
pub fn witness_tableaux(lam: &[usize]) -> Vec<Tableau> {
    let a = lam.first().copied().unwrap_or(0) - lam.last().copied().unwrap_or(0);
    tableaux_of_shape(&lambda_prime(lam), a)
}

fn check_witness(t: &Tableau, lam: &[usize]) -> Result<()> {
    let a = lam.first().copied().unwrap_or(0) - lam.last().copied().unwrap_or(0);
    if t.shape() != lambda_prime(lam) || !t.is_column_strict() || t.rows().iter().flatten().any(|&x| x == 0 || x > a) {
        return Err(Error::BadWitness);
    }
    Ok(())
}

/// `ℓ̃ = ℓ − (λ_1 − λ_n)`.
pub fn ell_tilde(lam: &[usize], ell: usize) -> Result<usize> {
    let a = lam.first().copied().unwrap_or(0) - lam.last().copied().unwrap_or(0);
    ell.checked_sub(a).ok_or(Error::LevelTooSmall)
}

fn column_entries(t: &Tableau, k: usize) -> impl Iterator<Item = usize> + '_ {
    t.rows().iter().filter_map(move |r| r.get(k - 1).copied())
}

/// `P_i^{(k)}(ν, t)`.
pub fn modified_vacancy(nu: &Configuration, t: &Tableau, ell: usize, k: usize, i: usize) -> Result<i64> {
    check_witness(t, nu.lam())?;
    let lt = ell_tilde(nu.lam(), ell)?;
    Ok(modified_unchecked(nu, t, lt, k, i))
}

fn modified_unchecked(nu: &Configuration, t: &Tableau, lt: usize, k: usize, i: usize) -> i64 {
    let minus = column_entries(t, k).filter(|&x| i >= lt + x).count() as i64;
    let plus = column_entries(t, k + 1).filter(|&x| i >= lt + x).count() as i64;
    nu.vacancy(k, i) - minus + plus
}

/// Per witness `t`, the table `P_i^{(k)}(ν,t)` for `k < n`, `i ∈ [1,ℓ]`,
/// keeping only witnesses with a nonnegative table.
fn witness_tables(nu: &Configuration, ell: usize) -> Result<Vec<(Tableau, Vec<Vec<i64>>)>> {
    let lt = ell_tilde(nu.lam(), ell)?;
    let mut out = Vec::new();
    for t in witness_tableaux(nu.lam()) {
        let table: Vec<Vec<i64>> =
            (1..nu.n()).map(|k| (1..=ell).map(|i| modified_unchecked(nu, &t, lt, k, i)).collect()).collect();
        if table.iter().flatten().all(|&v| v >= 0) {
            out.push((t, table));
        }
    }
    Ok(out)
}

fn fits(rc: &RiggedConfig, table: &[Vec<i64>]) -> bool {
    rc.strings.iter().enumerate().all(|(k, s)| s.iter().all(|&(l, x)| l > table[k].len() || x as i64 <= table[k][l - 1]))
}

fn cap_ok(nu: &Configuration, ell: usize) -> bool {
    nu.nus.iter().all(|p| p.first().is_none_or(|&x| x <= ell))
}

/// A witness `t` for Definition-style level restriction, if one exists.
pub fn level_witness(rc: &RiggedConfig, ell: usize) -> Result<Option<Tableau>> {
    let nu = &rc.config;
    ell_tilde(nu.lam(), ell)?;
    if !cap_ok(nu, ell) {
        return Ok(None);
    }
    Ok(witness_tables(nu, ell)?.into_iter().find(|(_, tab)| fits(rc, tab)).map(|(t, _)| t))
}

pub fn is_level_restricted_rc(rc: &RiggedConfig, ell: usize) -> bool {
    matches!(level_witness(rc, ell), Ok(Some(_)))
}

/// `M_i^{(k)}(t)` for `t ∈ CST(ρ')`.
pub fn minima_table(t: &Tableau, rho: &[usize], k: usize, i: usize) -> Result<i64> {
    check_witness(t, rho)?;
    let a = rho[0] - rho[rho.len() - 1];
    let count = |col: usize| column_entries(t, col).filter(|&x| i + x <= a).count() as i64;
    Ok(count(k) - count(k + 1))
}

/// `λ` and every rectangle of `R` must be restricted of level `ℓ`.
pub fn check_level(lam: &Partition, rects: &RectSeq, ell: usize) -> Result<()> {
    ell_tilde(lam, ell)?;
    if rects.iter().any(|r: &Rect| r.height < lam.n() && r.width > ell) {
        return Err(Error::LevelTooSmall);
    }
    Ok(())
}

/// `Σ q^{c(ν,J)}` over `RC(λ;R)` or `RC^ℓ(λ;R)`.
pub fn kostka_via_rc(lam: &Partition, rects: &RectSeq, ell: Option<usize>) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    if let Some(l) = ell {
        check_level(lam, rects, l)?;
    }
    let mut k = QPoly::zero();
    for nu in enumerate_configs(lam, rects, ell)? {
        let tables = match ell {
            Some(l) => witness_tables(&nu, l)?,
            None => Vec::new(),
        };
        let c0 = nu.charges().c;
        for rc in enumerate_riggings(&nu) {
            if ell.is_some() && !tables.iter().any(|(_, t)| fits(&rc, t)) {
                continue;
            }
            let c = c0 + rc.labels_sum();
            let c = u32::try_from(c).map_err(|_| Error::InternalInconsistency(alloc::format!("negative charge {c}")))?;
            k.add_term(c, 1);
        }
    }
    Ok(k)
}

/// `Σ_ν q^{c(ν)} Π qbin(P+m, m)`.
pub fn kostka_via_qbinomial(lam: &Partition, rects: &RectSeq) -> Result<QPoly> {
    let mut k = QPoly::zero();
    for nu in enumerate_configs(lam, rects, None)? {
        let c = nu.charges().c;
        let mut term = QPoly::monomial(
            u32::try_from(c).map_err(|_| Error::InternalInconsistency(alloc::format!("negative charge {c}")))?,
            1,
        );
        for kk in 1..nu.n() {
            for (i, m) in nu.multiplicities(kk) {
                term = &term * &q_binomial(m, nu.vacancy(kk, i) as usize);
            }
        }
        k += &term;
    }
    Ok(k)
}

/// Parses `"2:0,1:0||1:0"`.
pub fn parse_strings(s: &str) -> Result<Vec<Vec<(usize, usize)>>> {
    let bad = || Error::InvalidInput(alloc::format!("bad rigged configuration text: {s}"));
    s.trim()
        .split("||")
        .map(|block| {
            block
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|pair| {
                    let (l, x) = pair.split_once(':').ok_or_else(bad)?;
                    Ok((l.trim().parse().map_err(|_| bad())?, x.trim().parse().map_err(|_| bad())?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

pub fn format_strings(strings: &[Vec<(usize, usize)>]) -> String {
    let mut out = String::new();
    for (k, s) in strings.iter().enumerate() {
        if k > 0 {
            out.push_str("||");
        }
        for (j, (l, x)) in s.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{l}:{x}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rects(v: &[(usize, usize)]) -> RectSeq {
        RectSeq::new(v.iter().map(|&(h, w)| Rect::new(h, w)).collect()).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn example() -> Configuration {
        Configuration::new(part(&[3, 2, 2, 1]), rects(&[(1, 2), (2, 2), (2, 1)]), vec![vec![2], vec![2, 1], vec![1]]).unwrap()
    }

    fn section53() -> (Partition, RectSeq) {
        (part(&[3, 2, 1]), rects(&[(1, 2), (1, 1), (1, 1), (1, 1), (1, 1)]))
    }

    #[test]
    fn paper_example_config() {
        let c = example();
        assert_eq!(c.vacancy(1, 2), 1);
        assert_eq!(c.vacancy(2, 2), 0);
        assert_eq!(c.vacancy(2, 1), 0);
        assert_eq!(c.vacancy(3, 1), 0);
        for k in 1..4 {
            assert_eq!(c.vacancy(k, 0), 0);
        }
        let ch = c.charges();
        assert_eq!((ch.cc, ch.norm, ch.abs_p, ch.c), (3, 5, 1, 1));
        assert!(c.is_admissible());
        assert!(enumerate_configs(c.lam(), c.rects(), None).unwrap().contains(&c));
    }

    #[test]
    fn vacancy_stabilizes() {
        // P_i^{(k)} = λ_k − λ_{k+1} once i ≥ every part involved
        for c in enumerate_configs(&part(&[3, 2, 2, 1]), &rects(&[(1, 2), (2, 2), (2, 1)]), None).unwrap() {
            for k in 1..4 {
                let b = c.stable_bound(k);
                for i in b..b + 3 {
                    assert_eq!(c.vacancy(k, i), c.lam()[k - 1] as i64 - c.lam()[k] as i64);
                }
            }
        }
    }

    #[test]
    fn section53_configs_and_kostka() {
        let (lam, rs) = section53();
        let level = enumerate_configs(&lam, &rs, Some(2)).unwrap();
        assert_eq!(level.len(), 2);
        let all = enumerate_configs(&lam, &rs, None).unwrap();
        let riggings: usize = all.iter().map(|c| enumerate_riggings(c).len()).sum();
        assert_eq!(riggings, 8);
        assert_eq!(kostka_via_rc(&lam, &rs, None).unwrap(), QPoly::parse("q^2 + 2*q^3 + 2*q^4 + 2*q^5 + q^6").unwrap());
        assert_eq!(kostka_via_rc(&lam, &rs, Some(2)).unwrap(), QPoly::parse("q^2 + q^3 + q^4").unwrap());
        assert_eq!(kostka_via_qbinomial(&lam, &rs).unwrap(), kostka_via_rc(&lam, &rs, None).unwrap());
        let mut passing: Vec<i64> = all
            .iter()
            .flat_map(enumerate_riggings)
            .filter(|rc| is_level_restricted_rc(rc, 2))
            .map(|rc| rc.charge())
            .collect();
        passing.sort();
        assert_eq!(passing, vec![2, 3, 4]);
        assert_eq!(witness_tableaux(&lam).len(), 2);
    }

    #[test]
    fn charge_identity_and_theta() {
        let (lam, rs) = section53();
        for c in enumerate_configs(&lam, &rs, None).unwrap() {
            let ch = c.charges();
            assert_eq!(ch.c + ch.cc + ch.abs_p, ch.norm);
            for rc in enumerate_riggings(&c) {
                rc.validate().unwrap();
                let t = theta(&rc);
                assert_eq!(theta(&t), rc);
                assert_eq!(t.charge(), ch.norm - rc.cocharge());
            }
        }
        let empty = Configuration::new(part(&[2, 2]), rects(&[(2, 2)]), vec![vec![]]).unwrap();
        let ch = empty.charges();
        assert_eq!((ch.cc, ch.abs_p, ch.c), (0, 0, 0));
    }

    #[test]
    fn rigging_counts() {
        for c in enumerate_configs(&part(&[3, 2, 2, 1]), &rects(&[(1, 2), (2, 2), (2, 1)]), None).unwrap() {
            let expected: i64 = (1..c.n())
                .flat_map(|k| c.multiplicities(k).into_iter().map(move |x| (k, x)))
                .map(|(k, (i, m))| q_binomial(m, c.vacancy(k, i) as usize).eval_one())
                .product();
            assert_eq!(enumerate_riggings(&c).len() as i64, expected);
        }
    }

    #[test]
    fn rc_text_roundtrip() {
        let c = example();
        let rc = RiggedConfig::new(c.clone(), vec![vec![(2, 1)], vec![(2, 0), (1, 0)], vec![(1, 0)]]).unwrap();
        assert_eq!(rc.to_string(), "2:1||2:0,1:0||1:0");
        assert_eq!(parse_strings("2:1||2:0,1:0||1:0").unwrap(), rc.all_strings());
        assert_eq!(format_strings(rc.all_strings()), "2:1||2:0,1:0||1:0");
        assert!(RiggedConfig::new(c, vec![vec![(2, 2)], vec![(2, 0), (1, 0)], vec![(1, 0)]]).is_err());
    }

    #[test]
    fn vacuum_and_two_corner_modified_vacancies() {
        // λ = (a^n): λ' = ∅
        let lam = part(&[2, 2, 2]);
        let rs = rects(&[(1, 2), (1, 2), (1, 1), (1, 1)]);
        let t0 = Tableau::empty();
        for c in enumerate_configs(&lam, &rs, None).unwrap() {
            for k in 1..3 {
                for i in 1..4 {
                    assert_eq!(modified_vacancy(&c, &t0, 3, k, i).unwrap(), c.vacancy(k, i));
                }
            }
        }
        // λ = (a^α, b^β): P(ν,t) = P(ν) − δ_{k,α} max(i − ℓ̃, 0) for i ≤ ℓ
        let lam = part(&[3, 3, 1]);
        let rs = rects(&[(1, 2), (1, 2), (1, 1), (1, 1), (1, 1)]);
        let ell = 3;
        let ts = witness_tableaux(&lam);
        assert_eq!(ts.len(), 1);
        let lt = ell_tilde(&lam, ell).unwrap();
        for c in enumerate_configs(&lam, &rs, None).unwrap() {
            for k in 1..3 {
                for i in 1..=ell {
                    let expect = c.vacancy(k, i) - if k == 2 { i.saturating_sub(lt) as i64 } else { 0 };
                    assert_eq!(modified_vacancy(&c, &ts[0], ell, k, i).unwrap(), expect);
                }
            }
        }
        assert_eq!(modified_vacancy(&example(), &Tableau::empty(), 1, 1, 1), Err(Error::BadWitness));
    }

    #[test]
    fn modified_vacancy_vanishes_beyond_level() {
        let (lam, rs) = section53();
        for ell in 2..4 {
            for c in enumerate_configs(&lam, &rs, Some(ell)).unwrap() {
                for t in witness_tableaux(&lam) {
                    for k in 1..3 {
                        for i in ell..ell + 3 {
                            let lt = ell_tilde(&lam, ell).unwrap();
                            assert_eq!(modified_unchecked(&c, &t, lt, k, i), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_requires_cap() {
        let (lam, rs) = section53();
        for c in enumerate_configs(&lam, &rs, None).unwrap() {
            if c.nus().iter().any(|p| p.first().is_some_and(|&x| x > 1)) {
                for rc in enumerate_riggings(&c) {
                    assert!(!is_level_restricted_rc(&rc, 1));
                }
            }
        }
        let rc = &enumerate_riggings(&enumerate_configs(&lam, &rs, None).unwrap()[0])[0];
        assert_eq!(level_witness(rc, 1), Err(Error::LevelTooSmall));
    }

    #[test]
    fn minima() {
        // ρ with n equal rows: ρ' = ∅, so M ≡ 0
        let rho = [2, 2, 2];
        assert_eq!(minima_table(&Tableau::empty(), &rho, 1, 1).unwrap(), 0);
        let rho = [3, 1, 0];
        for t in witness_tableaux(&rho) {
            for k in 1..3 {
                for i in 1..5 {
                    assert!(minima_table(&t, &rho, k, i).unwrap() >= minima_table(&t, &rho, k, i + 1).unwrap() || k == 2);
                }
            }
            // first row of counts is monotone: it only has a negative part from column k+1
            for i in 1..5 {
                let a = minima_table(&t, &rho, 1, i).unwrap() + minima_table(&t, &rho, 2, i).unwrap();
                let b = minima_table(&t, &rho, 1, i + 1).unwrap() + minima_table(&t, &rho, 2, i + 1).unwrap();
                assert!(a >= b);
            }
        }
    }

    #[test]
    fn rc_independent_of_order() {
        let lam = part(&[3, 2, 1]);
        let a = rects(&[(1, 2), (2, 1), (1, 1), (1, 1)]);
        let b = rects(&[(1, 1), (1, 1), (2, 1), (1, 2)]);
        assert_eq!(kostka_via_rc(&lam, &a, None).unwrap(), kostka_via_rc(&lam, &b, None).unwrap());
        assert_eq!(kostka_via_rc(&lam, &a, None).unwrap(), crate::path::kostka_via_paths(&lam, &a, None).unwrap());
    }

    proptest! {
        #[test]
        fn qbinomial_route_matches_riggings(a in 1usize..4, b in 0usize..3, c in 0usize..3, w in 1usize..3) {
            let lam = part(&[a + b + c, b + c, c]);
            let mut rs = vec![Rect::new(1, w)];
            let rest = lam.size().saturating_sub(w);
            prop_assume!(lam.size() >= w);
            for _ in 0..rest { rs.push(Rect::new(1, 1)); }
            let rs = RectSeq::new(rs).unwrap();
            prop_assert_eq!(kostka_via_rc(&lam, &rs, None).unwrap(), kostka_via_qbinomial(&lam, &rs).unwrap());
        }
    }
}
