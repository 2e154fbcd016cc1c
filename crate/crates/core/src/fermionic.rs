//! Closed-form evaluators: the fermionic sum, its level-restricted
//! inclusion–exclusion version, the `(m,n)`-system form and the alternating
//! sum over the affine Weyl group.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lr::Cache;
use crate::partition::{check_sizes, multiplicity, permutations, Partition, Rect, RectSeq};
use crate::path::{energy_with, paths_with_content};
use crate::qpoly::{q_binomial_signed, Laurent, QPoly};
use crate::rc::{check_level, config_sizes, ell_tilde, enumerate_configs, kostka_via_qbinomial, witness_tableaux, Configuration};
use crate::tableau::Tableau;

pub type Q = Ratio<i64>;

/// Above this many witnesses the subset sum is refused.
pub const MAX_WITNESSES: usize = 16;

/// Unrestricted quasi-particle sum over admissible configurations.
pub fn fermionic_kostka(lam: &Partition, rects: &RectSeq) -> Result<QPoly> {
    kostka_via_qbinomial(lam, rects)
}

fn column(t: &Tableau, k: usize) -> impl Iterator<Item = usize> + '_ {
    t.rows().iter().filter_map(move |r| r.get(k - 1).copied())
}

/// `f_i^{(a)}(t)` for `i ∈ 1..=ℓ`, `a ∈ 1..n`, indexed `[a-1][i-1]`.
fn shift_table(t: &Tableau, n: usize, lt: usize, ell: usize) -> Vec<Vec<i64>> {
    (1..n)
        .map(|a| {
            (1..=ell)
                .map(|i| {
                    let hit = |k: usize| column(t, k).filter(|&x| i >= lt + x).count() as i64;
                    hit(a + 1) - hit(a)
                })
                .collect()
        })
        .collect()
}

fn elementwise_min(tables: &[&Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let mut out = tables[0].clone();
    for t in &tables[1..] {
        for (row, other) in out.iter_mut().zip(t.iter()) {
            for (x, &y) in row.iter_mut().zip(other) {
                *x = (*x).min(y);
            }
        }
    }
    out
}

/// A nonempty set of witnesses with the minimum table `P_i^{(k)}(ν,S)`,
/// indexed `[k-1][i-1]` for `i ∈ 1..=ℓ`.
#[derive(Clone, Debug)]
pub struct SubsetWitness {
    pub subset: Vec<Tableau>,
    pub table: Vec<Vec<i64>>,
}

impl SubsetWitness {
    pub fn new(nu: &Configuration, subset: Vec<Tableau>, ell: usize) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::InvalidInput("witness subset must be nonempty".into()));
        }
        let lt = ell_tilde(nu.lam(), ell)?;
        let n = nu.n();
        let shifts: Vec<Vec<Vec<i64>>> = subset.iter().map(|t| shift_table(t, n, lt, ell)).collect();
        let refs: Vec<&Vec<Vec<i64>>> = shifts.iter().collect();
        let mut table = elementwise_min(&refs);
        for (k, row) in table.iter_mut().enumerate() {
            for (i, x) in row.iter_mut().enumerate() {
                *x += nu.vacancy(k + 1, i + 1);
            }
        }
        Ok(SubsetWitness { subset, table })
    }
}

fn subset_masks(count: usize) -> Result<core::ops::Range<u32>> {
    if count > MAX_WITNESSES {
        return Err(Error::TooLarge("too many witness tableaux for inclusion-exclusion"));
    }
    Ok(1..(1u32 << count))
}

fn mask_sign(mask: u32) -> i64 {
    if mask.count_ones() % 2 == 1 {
        1
    } else {
        -1
    }
}

fn assert_nonnegative(p: &QPoly, what: &str) -> Result<()> {
    if let Some((e, c)) = p.terms().find(|&(_, c)| c < 0) {
        return Err(Error::InternalInconsistency(alloc::format!("{what}: coefficient {c} at q^{e}")));
    }
    Ok(())
}

/// Level-restricted sum by inclusion–exclusion over nonempty witness subsets.
pub fn fermionic_level_kostka(lam: &Partition, rects: &RectSeq, ell: usize) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    check_level(lam, rects, ell)?;
    let n = lam.n();
    let lt = ell_tilde(lam, ell)?;
    let ts = witness_tableaux(lam);
    let masks = subset_masks(ts.len())?;
    let shifts: Vec<Vec<Vec<i64>>> = ts.iter().map(|t| shift_table(t, n, lt, ell)).collect();
    let mut acc = Laurent::default();
    for nu in enumerate_configs(lam, rects, Some(ell))? {
        let c = nu.charges().c;
        for mask in masks.clone() {
            let chosen: Vec<&Vec<Vec<i64>>> = (0..ts.len()).filter(|b| mask >> b & 1 == 1).map(|b| &shifts[b]).collect();
            let f = elementwise_min(&chosen);
            let mut term = QPoly::one();
            'prod: for k in 1..n {
                for i in 1..ell {
                    let m = multiplicity(nu.nu(k), i) as i64;
                    let p = nu.vacancy(k, i) + f[k - 1][i - 1];
                    term = &term * &q_binomial_signed(m, p);
                    if term.is_zero() {
                        break 'prod;
                    }
                }
            }
            acc.add_shifted(&term, c, mask_sign(mask));
        }
    }
    let out = acc.into_poly()?;
    assert_nonnegative(&out, "fermionic level sum")?;
    Ok(out)
}

/// Cartan matrix of type `A_d`.
pub fn cartan(d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Inverse of the `A_d` Cartan matrix: `min(i,j) − ij/(d+1)`.
pub fn cartan_inverse(d: usize) -> Vec<Vec<Q>> {
    let h = (d + 1) as i64;
    (1..=d as i64).map(|i| (1..=d as i64).map(|j| Q::from(i.min(j)) - Q::new(i * j, h)).collect()).collect()
}

/// The `(m,n)`-system data for a fixed `(λ; R; ℓ)` and witness subset `S`.
/// Index convention: `[i-1][a-1]`.
#[derive(Clone, Debug)]
pub struct MnSystem {
    pub ell: usize,
    pub n: usize,
    lam: Vec<usize>,
    sizes: Vec<usize>,
    /// `L_i^{(a)}` for `i ∈ 1..=ℓ`, `a ∈ 1..=n`.
    pub l_table: Vec<Vec<i64>>,
    /// `f_i^{(a)}(S)` for `i ∈ 1..=ℓ`, `a ∈ 1..n`.
    pub f: Vec<Vec<i64>>,
    /// `u_i^{(a)}(S)` for `i ∈ 1..ℓ`, `a ∈ 1..n`.
    pub u: Vec<Vec<i64>>,
    c_ell: Vec<Vec<i64>>,
    ci_ell: Vec<Vec<Q>>,
    ci_n: Vec<Vec<Q>>,
}

/// A solution of the `(m,n)`-system: `n_i` for `i < ℓ` and `n_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NVector {
    pub inner: Vec<Vec<Q>>,
    pub top: Vec<Q>,
}

impl NVector {
    pub fn is_nonnegative(&self) -> bool {
        self.inner.iter().flatten().chain(&self.top).all(|x| *x >= Q::zero())
    }

    pub fn is_integral(&self) -> bool {
        self.inner.iter().flatten().chain(&self.top).all(Q::is_integer)
    }
}

impl MnSystem {
    pub fn new(lam: &Partition, rects: &RectSeq, ell: usize, subset: &[Tableau]) -> Result<Self> {
        check_sizes(lam, rects)?;
        check_level(lam, rects, ell)?;
        if ell == 0 {
            return Err(Error::LevelTooSmall);
        }
        if subset.is_empty() {
            return Err(Error::InvalidInput("witness subset must be nonempty".into()));
        }
        let sizes = config_sizes(lam, rects).ok_or(Error::InvalidInput("no configurations for this (λ;R)".into()))?;
        Self::build(lam, rects.iter().copied(), ell, subset, sizes)
    }

    /// The system in the `M → ∞` limit of the branching formula: only the
    /// rectangle `front` survives in `L`, and `n_ℓ` is never used.
    pub fn for_limit(lam: &Partition, ell: usize, subset: &[Tableau], front: Option<Rect>) -> Result<Self> {
        if ell < 2 {
            return Err(Error::LevelTooSmall);
        }
        if subset.is_empty() {
            return Err(Error::InvalidInput("witness subset must be nonempty".into()));
        }
        Self::build(lam, front, ell, subset, vec![0; lam.n() - 1])
    }

    fn build(
        lam: &Partition,
        rects: impl IntoIterator<Item = Rect>,
        ell: usize,
        subset: &[Tableau],
        sizes: Vec<usize>,
    ) -> Result<Self> {
        let n = lam.n();
        let lt = ell_tilde(lam, ell)?;
        let mut l_table = vec![vec![0i64; n]; ell];
        for r in rects {
            if r.width <= ell && r.height <= n {
                l_table[r.width - 1][r.height - 1] += 1;
            }
        }
        let shifts: Vec<Vec<Vec<i64>>> = subset.iter().map(|t| shift_table(t, n, lt, ell)).collect();
        let refs: Vec<&Vec<Vec<i64>>> = shifts.iter().collect();
        let by_a = if n > 1 { elementwise_min(&refs) } else { Vec::new() };
        let f: Vec<Vec<i64>> = (0..ell).map(|i| (0..n - 1).map(|a| by_a[a][i]).collect()).collect();
        let d = ell - 1;
        let c_ell = cartan(d);
        let mut u = vec![vec![0i64; n - 1]; d];
        for a in 0..n - 1 {
            for i in 0..d {
                u[i][a] = (0..d).map(|j| c_ell[i][j] * f[j][a]).sum();
            }
            if d > 0 {
                u[d - 1][a] += (lam[a] - lam[a + 1]) as i64;
            }
        }
        Ok(MnSystem {
            ell,
            n,
            lam: lam.to_vec(),
            sizes,
            l_table,
            f,
            u,
            c_ell,
            ci_ell: cartan_inverse(d),
            ci_n: cartan_inverse(n - 1),
        })
    }

    /// `(I⊗C⁻¹) u`, indexed `[i-1][a-1]`.
    pub fn linear_term(&self) -> Vec<Vec<Q>> {
        let k = self.n - 1;
        self.u.iter().map(|row| (0..k).map(|a| (0..k).map(|b| self.ci_n[a][b] * row[b]).sum()).collect()).collect()
    }

    /// `e_{ℓ-1}⊗e_a (I⊗C⁻¹ m − C⁻¹⊗C⁻¹ u) − (1/ℓ) Σ_{j≤a} (λ_j − |λ|/n)`, `a` 0-based.
    pub fn top_condition(&self, m: &[Vec<i64>], a: usize) -> Q {
        let d = self.ell - 1;
        let k = self.n - 1;
        let mut x = Q::zero();
        for b in 0..k {
            x += self.ci_n[a][b] * m[d - 1][b];
            for j in 0..d {
                x -= self.ci_ell[d - 1][j] * self.ci_n[a][b] * self.u[j][b];
            }
        }
        let nn = self.n as i64;
        let total: i64 = self.lam.iter().map(|&v| v as i64).sum();
        let spread: Q = self.lam[..=a].iter().map(|&v| Q::new(v as i64 * nn - total, nn)).sum();
        x - spread / (self.ell as i64)
    }

    fn m_at(m: &[Vec<i64>], i: usize, a: usize) -> i64 {
        if i == 0 || i > m.len() {
            0
        } else {
            m[i - 1][a]
        }
    }

    /// `n_i^{(a)}` for one `i < ℓ` from `(I⊗C) n = L + u − (C⊗I) m`;
    /// needs `m_{i-1}, m_i, m_{i+1}`.
    pub(crate) fn solve_row(&self, m: &[Vec<i64>], i: usize) -> Vec<Q> {
        let k = self.n - 1;
        let w: Vec<i64> = (0..k)
            .map(|a| {
                let cm = 2 * Self::m_at(m, i, a) - Self::m_at(m, i - 1, a) - Self::m_at(m, i + 1, a);
                self.l_table[i - 1][a] + self.u[i - 1][a] - cm
            })
            .collect();
        (0..k).map(|a| (0..k).map(|b| self.ci_n[a][b] * w[b]).sum()).collect()
    }

    /// `n_ℓ^{(a)}` from `|ν^{(a)}| = Σ_i i n_i^{(a)}`.
    fn solve_top(&self, inner: &[Vec<Q>]) -> Vec<Q> {
        (0..self.n - 1)
            .map(|a| {
                let below: Q = inner.iter().enumerate().map(|(i, row)| row[a] * (i as i64 + 1)).sum();
                (Q::from(self.sizes[a] as i64) - below) / (self.ell as i64)
            })
            .collect()
    }

    pub fn solve_n(&self, m: &[Vec<i64>]) -> NVector {
        let inner: Vec<Vec<Q>> = (1..self.ell).map(|i| self.solve_row(m, i)).collect();
        let top = self.solve_top(&inner);
        NVector { inner, top }
    }

    /// Checks `(C⊗I)m + (I⊗C)n = L + u` entrywise.
    pub fn satisfies_mn(&self, m: &[Vec<i64>], nv: &NVector) -> bool {
        let k = self.n - 1;
        let c_n = cartan(k);
        (1..self.ell).all(|i| {
            (0..k).all(|a| {
                let cm = 2 * Self::m_at(m, i, a) - Self::m_at(m, i - 1, a) - Self::m_at(m, i + 1, a);
                let cn: Q = (0..k).map(|b| nv.inner[i - 1][b] * c_n[a][b]).sum();
                cn + cm == Q::from(self.l_table[i - 1][a] + self.u[i - 1][a])
            })
        })
    }

    /// `u` recomputed as the second difference of `f` with `f_0 = 0`.
    pub fn u_from_second_difference(&self) -> Vec<Vec<i64>> {
        let fa = |i: usize, a: usize| if i == 0 { 0 } else { self.f[i - 1][a] };
        (1..self.ell).map(|i| (0..self.n - 1).map(|a| -fa(i - 1, a) + 2 * fa(i, a) - fa(i + 1, a)).collect()).collect()
    }

    /// `m (C⊗C⁻¹) m / 2 − m (I⊗C⁻¹) u` as an exact rational.
    pub fn m_exponent(&self, m: &[Vec<i64>]) -> Q {
        let d = self.ell - 1;
        let k = self.n - 1;
        let mut quad = Q::zero();
        let mut lin = Q::zero();
        for i in 0..d {
            for a in 0..k {
                if m[i][a] == 0 {
                    continue;
                }
                for b in 0..k {
                    lin += self.ci_n[a][b] * (m[i][a] * self.u[i][b]);
                    for j in 0..d {
                        if self.c_ell[i][j] != 0 {
                            quad += self.ci_n[a][b] * (m[i][a] * self.c_ell[i][j] * m[j][b]);
                        }
                    }
                }
            }
        }
        quad / 2 - lin
    }

    /// `u (C⁻¹⊗C⁻¹) u / 2`.
    pub fn u_exponent(&self) -> Q {
        let d = self.ell - 1;
        let k = self.n - 1;
        let mut s = Q::zero();
        for i in 0..d {
            for j in 0..d {
                for a in 0..k {
                    for b in 0..k {
                        s += self.ci_ell[i][j] * self.ci_n[a][b] * (self.u[i][a] * self.u[j][b]);
                    }
                }
            }
        }
        s / 2
    }

    /// `g(R, λ)` with the norm `||R||` supplied by the caller.
    pub fn g(&self, norm: usize) -> Q {
        let k = self.n - 1;
        let ell = self.ell;
        let lbar = |i: usize, a: usize| -> i64 { (1..=ell).map(|j| i.min(j) as i64 * self.l_table[j - 1][a]).sum() };
        let mut cross = Q::zero();
        for a in 0..k {
            for b in 0..k {
                for j in 1..=ell {
                    cross += self.ci_n[a][b] * (self.l_table[j - 1][a] * lbar(j, b));
                }
            }
        }
        let total: i64 = self.lam.iter().map(|&x| x as i64).sum();
        let nn = self.n as i64;
        let spread: Q = self.lam.iter().map(|&x| Q::new(x as i64 * nn - total, nn)).map(|d| d * d).sum();
        Q::from(norm as i64) - cross / 2 + spread / (2 * ell as i64)
    }

    /// Box bound on `m_i^{(a)}` valid for every configuration.
    fn m_bound(&self, rects: &RectSeq, i: usize, a: usize) -> i64 {
        let nb = |b: usize| if b == 0 || b >= self.n { 0 } else { self.sizes[b - 1] as i64 };
        let xi: i64 = rects.xi(a + 1).iter().map(|&w| w.min(i) as i64).sum();
        nb(a) + nb(a + 2) + xi
    }

    /// `Σ_m q^{m-exponent} qbin(m+n, m)` as a Laurent sum, scanning the
    /// box of admissible `m`. With `prune`, `n ≥ 0` is enforced during the
    /// search; otherwise vanishing binomials are relied on.
    pub fn m_sum(&self, rects: &RectSeq, prune: bool) -> Result<Vec<(Q, QPoly)>> {
        let d = self.ell - 1;
        let k = self.n - 1;
        let mut out = Vec::new();
        let mut m = vec![vec![0i64; k]; d];
        self.m_rec(rects, prune, 0, &mut m, &mut out)?;
        Ok(out)
    }

    fn m_rec(&self, rects: &RectSeq, prune: bool, pos: usize, m: &mut Vec<Vec<i64>>, out: &mut Vec<(Q, QPoly)>) -> Result<()> {
        let d = self.ell - 1;
        let k = self.n - 1;
        if pos == d * k {
            let nv = self.solve_n(m);
            if !nv.is_integral() || (prune && !nv.is_nonnegative()) {
                return Ok(());
            }
            let mut term = QPoly::one();
            for i in 0..d {
                for a in 0..k {
                    let nn = nv.inner[i][a].to_integer();
                    term = &term * &q_binomial_signed(m[i][a], nn);
                }
            }
            if !term.is_zero() {
                out.push((self.m_exponent(m), term));
            }
            return Ok(());
        }
        let (i, a) = (pos / k + 1, pos % k);
        for v in 0..=self.m_bound(rects, i, a) {
            m[i - 1][a] = v;
            // Column i is complete, so n_{i-1} is determined.
            if prune && a == k - 1 && i >= 2 && self.solve_row(m, i - 1).iter().any(|x| *x < Q::zero()) {
                continue;
            }
            self.m_rec(rects, prune, pos + 1, m, out)?;
        }
        m[i - 1][a] = 0;
        Ok(())
    }
}

fn exponent_to_i64(q: Q) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::InternalInconsistency(alloc::format!("non-integral exponent {q}")));
    }
    q.to_integer().to_i64().ok_or(Error::TooLarge("exponent overflow"))
}

/// Level-restricted sum through the `(m,n)`-system. `prune = false` keeps
/// `m` with negative `n_i` and relies on vanishing `q`-binomials.
pub fn kostka_level_mn_with(lam: &Partition, rects: &RectSeq, ell: usize, prune: bool) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    check_level(lam, rects, ell)?;
    let n = lam.n();
    if ell == 0 {
        return Err(Error::LevelTooSmall);
    }
    if n == 1 {
        return Ok(QPoly::one());
    }
    if config_sizes(lam, rects).is_none() {
        return Ok(QPoly::zero());
    }
    let ts = witness_tableaux(lam);
    let masks = subset_masks(ts.len())?;
    let norm = rects.norm();
    let mut acc = Laurent::default();
    for mask in masks {
        let subset: Vec<Tableau> = (0..ts.len()).filter(|b| mask >> b & 1 == 1).map(|b| ts[b].clone()).collect();
        let sys = MnSystem::new(lam, rects, ell, &subset)?;
        let base = sys.g(norm) + sys.u_exponent();
        for (e, term) in sys.m_sum(rects, prune)? {
            acc.add_shifted(&term, exponent_to_i64(base + e)?, mask_sign(mask));
        }
    }
    let out = acc.into_poly()?;
    assert_nonnegative(&out, "(m,n)-system sum")?;
    Ok(out)
}

pub fn kostka_level_mn(lam: &Partition, rects: &RectSeq, ell: usize) -> Result<QPoly> {
    kostka_level_mn_with(lam, rects, ell, true)
}

/// Alternating sum over `τ ∈ S_n` and `β` in the root lattice of path
/// generating functions with shifted weights.
pub fn kostka_level_weyl(lam: &Partition, rects: &RectSeq, ell: usize) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    check_level(lam, rects, ell)?;
    let terms = weyl_terms(lam, rects, ell, false)?;
    let mut acc = Laurent::default();
    for (sign, shift, f) in &terms {
        acc.add_shifted(f, *shift, *sign);
    }
    let out = acc.into_poly()?;
    assert_nonnegative(&out, "alternating sum")?;
    Ok(out)
}

/// Only the `β = 0` terms, summed over all `τ`.
pub fn weyl_beta_zero(lam: &Partition, rects: &RectSeq) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    let terms = weyl_terms(lam, rects, 0, true)?;
    let mut acc = Laurent::default();
    for (sign, shift, f) in &terms {
        acc.add_shifted(f, *shift, *sign);
    }
    acc.into_poly()
}

/// `(sign, exponent shift, Σ q^{E(b)})` per contributing `(τ, β)`.
fn weyl_terms(lam: &Partition, rects: &RectSeq, ell: usize, beta_zero_only: bool) -> Result<Vec<(i64, i64, QPoly)>> {
    let n = lam.n();
    let total = lam.size() as i64;
    let h = (ell + n) as i64;
    let rho: Vec<i64> = (0..n as i64).rev().collect();
    let shifted: Vec<i64> = lam.iter().zip(&rho).map(|(&x, &r)| x as i64 + r).collect();
    let perms = permutations(n);
    let mut memo: BTreeMap<Vec<usize>, QPoly> = BTreeMap::new();
    let mut cache = Cache::default();
    let mut out = Vec::new();
    let mut visit = |beta: &[i64], out: &mut Vec<(i64, i64, QPoly)>| -> Result<()> {
        let v: Vec<i64> = shifted.iter().zip(beta).map(|(&s, &b)| s - h * b).collect();
        let bb: i64 = beta.iter().map(|b| b * b).sum();
        let lin: i64 = shifted.iter().zip(beta).map(|(s, b)| s * b).sum();
        let shift = -(h * bb) / 2 + lin;
        for (perm, sign) in &perms {
            let content: Option<Vec<usize>> =
                (0..n).map(|j| usize::try_from(v[perm[j]] - rho[j]).ok()).collect();
            let Some(content) = content else { continue };
            let f = match memo.get(&content) {
                Some(f) => f.clone(),
                None => {
                    let mut f = QPoly::zero();
                    for p in paths_with_content(rects, &content) {
                        f.add_term(energy_with(&mut cache, &p)? as u32, 1);
                    }
                    memo.insert(content.clone(), f.clone());
                    f
                }
            };
            if !f.is_zero() {
                out.push((*sign, shift, f));
            }
        }
        Ok(())
    };
    if beta_zero_only {
        visit(&vec![0; n], &mut out)?;
        return Ok(out);
    }
    // Every coordinate of λ+ρ−hβ is a permuted content plus ρ, so it lies in [0, |λ|+n−1].
    let ranges: Vec<(i64, i64)> =
        shifted.iter().map(|&s| ((s - total - n as i64 + 1).div_euclid(h), s.div_euclid(h))).collect();
    let mut beta = vec![0i64; n];
    beta_rec(&ranges, 0, &mut beta, &mut |b| visit(b, &mut out))?;
    Ok(out)
}

fn beta_rec(ranges: &[(i64, i64)], j: usize, beta: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> Result<()>) -> Result<()> {
    let n = ranges.len();
    if j + 1 == n {
        let last = -beta[..j].iter().sum::<i64>();
        if last >= ranges[j].0 && last <= ranges[j].1 {
            beta[j] = last;
            f(beta)?;
        }
        return Ok(());
    }
    for b in ranges[j].0..=ranges[j].1 {
        beta[j] = b;
        beta_rec(ranges, j + 1, beta, f)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Rect;
    use crate::path::kostka_via_paths;
    use crate::rc::kostka_via_rc;

    fn rects(v: &[(usize, usize)]) -> RectSeq {
        RectSeq::new(v.iter().map(|&(h, w)| Rect::new(h, w)).collect()).unwrap()
    }

    fn lam(p: &[usize], n: usize) -> Partition {
        Partition::with_rank(p, n).unwrap()
    }

    fn paper_data() -> (Partition, RectSeq) {
        (lam(&[3, 2, 1], 3), rects(&[(1, 2), (1, 1), (1, 1), (1, 1), (1, 1)]))
    }

    #[test]
    fn paper_unrestricted() {
        let (l, r) = paper_data();
        assert_eq!(fermionic_kostka(&l, &r).unwrap(), QPoly::parse("q^2 + 2*q^3 + 2*q^4 + 2*q^5 + q^6").unwrap());
    }

    #[test]
    fn paper_level_two_all_routes() {
        let (l, r) = paper_data();
        let want = QPoly::parse("q^2+q^3+q^4").unwrap();
        assert_eq!(fermionic_level_kostka(&l, &r, 2).unwrap(), want);
        assert_eq!(kostka_level_mn(&l, &r, 2).unwrap(), want);
        assert_eq!(kostka_level_weyl(&l, &r, 2).unwrap(), want);
    }

    #[test]
    fn single_rectangle_is_one() {
        let l = lam(&[2, 2], 3);
        let r = rects(&[(2, 2)]);
        assert_eq!(fermionic_kostka(&l, &r).unwrap(), QPoly::one());
        assert_eq!(fermionic_level_kostka(&l, &r, 2).unwrap(), QPoly::one());
        assert_eq!(kostka_level_mn(&l, &r, 2).unwrap(), QPoly::one());
        assert_eq!(kostka_level_weyl(&l, &r, 2).unwrap(), QPoly::one());
    }

    #[test]
    fn cartan_inverse_is_inverse() {
        for d in 1..5 {
            let c = cartan(d);
            let ci = cartan_inverse(d);
            for i in 0..d {
                for j in 0..d {
                    let s: Q = (0..d).map(|k| ci[i][k] * c[k][j]).sum();
                    assert_eq!(s, Q::from(i64::from(i == j)));
                }
            }
        }
    }

    #[test]
    fn vacuum_has_single_subset() {
        let l = lam(&[2, 2, 2], 3);
        assert_eq!(witness_tableaux(&l).len(), 1);
        let r = rects(&[(1, 2), (1, 2), (1, 2)]);
        let k = fermionic_level_kostka(&l, &r, 2).unwrap();
        assert_eq!(k, kostka_via_paths(&l, &r, Some(2)).unwrap());
        let sys = MnSystem::new(&l, &r, 2, &witness_tableaux(&l)).unwrap();
        let g = sys.g(r.norm()) + sys.u_exponent();
        let mut single = Laurent::default();
        for (e, t) in sys.m_sum(&r, true).unwrap() {
            single.add_shifted(&t, exponent_to_i64(g + e).unwrap(), 1);
        }
        assert_eq!(single.into_poly().unwrap(), k);
    }

    /// `(λ;R)` pairs over `n ≤ 3`, `|λ| ≤ 6`, rectangles from the four small shapes.
    fn grid() -> Vec<(Partition, RectSeq)> {
        let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let mut seqs: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut all = Vec::new();
        for _ in 0..4 {
            let mut next = Vec::new();
            for s in &seqs {
                let area: usize = s.iter().map(|&(h, w)| h * w).sum();
                for &sh in &shapes {
                    if area + sh.0 * sh.1 <= 6 {
                        let mut t = s.clone();
                        t.push(sh);
                        next.push(t);
                    }
                }
            }
            all.extend(next.iter().cloned());
            seqs = next;
        }
        let mut out = Vec::new();
        for n in 2..=3 {
            for s in &all {
                let r = rects(s);
                if r.max_height() > n {
                    continue;
                }
                for l in crate::partition::partitions_with_rank(r.size(), n) {
                    out.push((l, r.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn four_way_equality_on_grid() {
        let mut checked = 0;
        for (l, r) in grid() {
            assert_eq!(fermionic_kostka(&l, &r).unwrap(), kostka_via_paths(&l, &r, None).unwrap(), "{l:?} {r}");
            for ell in 1..=3 {
                if check_level(&l, &r, ell).is_err() {
                    continue;
                }
                let want = kostka_via_paths(&l, &r, Some(ell)).unwrap();
                assert_eq!(kostka_via_rc(&l, &r, Some(ell)).unwrap(), want, "rc {l:?} {r} {ell}");
                assert_eq!(fermionic_level_kostka(&l, &r, ell).unwrap(), want, "ferm {l:?} {r} {ell}");
                assert_eq!(kostka_level_mn(&l, &r, ell).unwrap(), want, "mn {l:?} {r} {ell}");
                assert_eq!(kostka_level_weyl(&l, &r, ell).unwrap(), want, "weyl {l:?} {r} {ell}");
                checked += 1;
            }
        }
        assert!(checked > 50, "{checked}");
    }

    #[test]
    fn unpruned_mn_agrees() {
        for (l, r) in grid() {
            if r.len() > 3 || r.size() > 5 {
                continue;
            }
            for ell in 1..=3 {
                if check_level(&l, &r, ell).is_err() {
                    continue;
                }
                assert_eq!(
                    kostka_level_mn_with(&l, &r, ell, false).unwrap(),
                    kostka_level_mn_with(&l, &r, ell, true).unwrap(),
                    "{l:?} {r} {ell}"
                );
            }
        }
    }

    /// Per configuration and subset: `m = P(ν,S)` solves the system, the
    /// recovered `n` are the multiplicities, and the quadratic form gives `c(ν)`.
    #[test]
    fn charge_formula_per_configuration() {
        let mut seen = 0;
        for (l, r) in grid() {
            if r.len() > 3 {
                continue;
            }
            for ell in 2..=3 {
                if check_level(&l, &r, ell).is_err() {
                    continue;
                }
                let ts = witness_tableaux(&l);
                for nu in enumerate_configs(&l, &r, Some(ell)).unwrap() {
                    for mask in 1..(1u32 << ts.len()) {
                        let subset: Vec<Tableau> =
                            (0..ts.len()).filter(|b| mask >> b & 1 == 1).map(|b| ts[b].clone()).collect();
                        let sys = MnSystem::new(&l, &r, ell, &subset).unwrap();
                        let w = SubsetWitness::new(&nu, subset, ell).unwrap();
                        let m: Vec<Vec<i64>> = (0..ell - 1).map(|i| (0..l.n() - 1).map(|a| w.table[a][i]).collect()).collect();
                        assert!(w.table.iter().all(|row| row[ell - 1] == 0), "P_ℓ(ν,S) = 0");
                        let nv = sys.solve_n(&m);
                        assert!(sys.satisfies_mn(&m, &nv));
                        for a in 0..l.n() - 1 {
                            for i in 1..=ell {
                                let want = Q::from(multiplicity(nu.nu(a + 1), i) as i64);
                                let got = if i < ell { nv.inner[i - 1][a] } else { nv.top[a] };
                                assert_eq!(got, want);
                            }
                        }
                        let c = sys.m_exponent(&m) + sys.u_exponent() + sys.g(r.norm());
                        assert_eq!(c, Q::from(nu.charges().c), "{l:?} {r} {ell} {nu:?}");
                        assert_eq!(sys.u_from_second_difference(), sys.u);
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 100, "{seen}");
    }

    #[test]
    fn beta_zero_gives_classical_sum() {
        for (l, r) in grid() {
            if r.len() > 3 {
                continue;
            }
            assert_eq!(weyl_beta_zero(&l, &r).unwrap(), kostka_via_paths(&l, &r, None).unwrap(), "{l:?} {r}");
        }
    }

    #[test]
    fn n_two_by_hand() {
        // R = (1×1)^3, λ = (2,1), ℓ = 1: only paths with ε₀ ≤ 1 survive.
        let l = lam(&[2, 1], 2);
        let r = rects(&[(1, 1), (1, 1), (1, 1)]);
        let want = kostka_via_paths(&l, &r, Some(1)).unwrap();
        assert_eq!(kostka_level_weyl(&l, &r, 1).unwrap(), want);
        assert_eq!(fermionic_level_kostka(&l, &r, 1).unwrap(), want);
    }
}
