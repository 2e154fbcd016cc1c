//! Littlewood–Richardson tableaux in their three labelings, RSK from paths,
//! the automorphisms `s_p`, generalized charge and the row embeddings.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::{check_sizes, conjugate, Partition, Rect, RectSeq};
use crate::path::Path;
use crate::qpoly::QPoly;
use crate::tableau::{column_rsk, column_rsk_inverse, schensted_p, Letter, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Lr,
    Clr,
    Rlr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relabel {
    Gamma,
    GammaInv,
    Std,
    StdInv,
    Beta,
    Tr,
    TrLr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChargeMethod {
    ViaBijection,
    ViaAverage,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LrTableau {
    pub tab: Tableau,
    pub family: Family,
    pub rects: RectSeq,
}

/// Memo tables shared by the local isomorphism, local energy and `s_p`.
#[derive(Default)]
pub struct Cache {
    pub(crate) pairs: BTreeMap<(Vec<usize>, Rect, Rect), Tableau>,
    pub(crate) iso: BTreeMap<(Tableau, Tableau), (Tableau, Tableau)>,
    pub(crate) h: BTreeMap<(Tableau, Tableau), usize>,
}

impl LrTableau {
    pub fn new(tab: Tableau, family: Family, rects: RectSeq) -> Result<LrTableau> {
        let q = LrTableau { tab, family, rects };
        if !q.is_member() {
            return Err(Error::InvalidInput(alloc::format!("not an LR tableau for {}: {}", q.rects, q.tab)));
        }
        Ok(q)
    }

    pub fn new_unchecked(tab: Tableau, family: Family, rects: RectSeq) -> LrTableau {
        LrTableau { tab, family, rects }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.tab.shape()
    }

    pub fn is_member(&self) -> bool {
        if !self.tab.is_column_strict() {
            return false;
        }
        let ints = intervals(&self.rects, self.family);
        let top = ints.last().map_or(0, |i| i.1);
        let mut count = vec![0usize; top + 1];
        for &x in self.tab.rows().iter().flatten() {
            if x == 0 || x > top {
                return false;
            }
            count[x] += 1;
        }
        if count.iter().sum::<usize>() != self.rects.size() {
            return false;
        }
        (0..self.rects.len()).all(|j| {
            let (lo, hi) = ints[j];
            schensted_p(&self.tab.restricted_word(lo, hi)) == key(&self.rects, self.family, j)
        })
    }
}

/// The alphabet interval `A_j` (LR) or `B_j` (CLR, RLR), 0-based `j`.
pub fn intervals(rects: &RectSeq, family: Family) -> Vec<(Letter, Letter)> {
    match family {
        Family::Lr => rects.row_offsets().iter().zip(rects.iter()).map(|(&a, r)| (a + 1, a + r.height)).collect(),
        _ => rects.cell_offsets().iter().zip(rects.iter()).map(|(&b, r)| (b + 1, b + r.area())).collect(),
    }
}

/// `Y_j`, `ZC_j` or `ZR_j`.
pub fn key(rects: &RectSeq, family: Family, j: usize) -> Tableau {
    let r = rects[j];
    match family {
        Family::Lr => Tableau::key_rows(r, rects.row_offsets()[j]),
        Family::Clr => {
            let b = rects.cell_offsets()[j];
            Tableau::from_rows_unchecked(
                (1..=r.height).map(|row| (1..=r.width).map(|c| b + (c - 1) * r.height + row).collect()).collect(),
            )
        }
        Family::Rlr => {
            let b = rects.cell_offsets()[j];
            Tableau::from_rows_unchecked(
                (1..=r.height).map(|row| (1..=r.width).map(|c| b + (row - 1) * r.width + c).collect()).collect(),
            )
        }
    }
}

/// `LR(λ;R)`, `CLR(λ;R)` or `RLR(λ;R)`, built letter by letter with the
/// key condition checked as each interval is completed.
pub fn enumerate_lr(lam: &[usize], rects: &RectSeq, family: Family) -> Result<Vec<LrTableau>> {
    check_sizes(lam, rects)?;
    let lam: Vec<usize> = lam.iter().copied().filter(|&x| x > 0).collect();
    let ints = intervals(rects, family);
    let top = ints.last().map_or(0, |i| i.1);
    let mut counts = vec![0usize; top + 1];
    let mut block_end = vec![None; top + 1];
    for j in 0..rects.len() {
        for &x in key(rects, family, j).rows().iter().flatten() {
            counts[x] += 1;
        }
        block_end[ints[j].1] = Some(j);
    }
    let mut st = Search { lam: &lam, rects, family, ints: &ints, counts: &counts, block_end: &block_end, out: Vec::new() };
    let mut rows = vec![Vec::new(); lam.len()];
    st.letter(1, top, &mut rows);
    Ok(st.out)
}

struct Search<'a> {
    lam: &'a [usize],
    rects: &'a RectSeq,
    family: Family,
    ints: &'a [(Letter, Letter)],
    counts: &'a [usize],
    block_end: &'a [Option<usize>],
    out: Vec<LrTableau>,
}

impl Search<'_> {
    fn letter(&mut self, x: Letter, top: Letter, rows: &mut Vec<Vec<Letter>>) {
        if x > top {
            self.out.push(LrTableau::new_unchecked(Tableau::from_rows_unchecked(rows.clone()), self.family, self.rects.clone()));
            return;
        }
        let old: Vec<usize> = rows.iter().map(Vec::len).collect();
        self.strip(x, top, 0, self.counts[x], &old, rows);
    }

    fn strip(&mut self, x: Letter, top: Letter, i: usize, left: usize, old: &[usize], rows: &mut Vec<Vec<Letter>>) {
        if i == self.lam.len() {
            if left > 0 {
                return;
            }
            if let Some(j) = self.block_end[x] {
                let t = Tableau::from_rows_unchecked(rows.clone());
                let (lo, hi) = self.ints[j];
                if schensted_p(&t.restricted_word(lo, hi)) != key(self.rects, self.family, j) {
                    return;
                }
            }
            self.letter(x + 1, top, rows);
            return;
        }
        let cap = if i == 0 { self.lam[0] } else { self.lam[i].min(old[i - 1]) };
        let room = cap.saturating_sub(old[i]).min(left);
        for t in 0..=room {
            rows[i].extend(core::iter::repeat(x).take(t));
            self.strip(x, top, i + 1, left - t, old, rows);
            rows[i].truncate(old[i]);
        }
    }
}

fn check_family(q: &LrTableau, f: Family) -> Result<()> {
    if q.family != f {
        return Err(Error::DomainMismatch("relabeling applied to the wrong tableau family"));
    }
    Ok(())
}

/// Positional relabeling between two families on the same `R`.
fn positional(q: &LrTableau, to: Family) -> LrTableau {
    let mut map = BTreeMap::new();
    for j in 0..q.rects.len() {
        let a = key(&q.rects, q.family, j);
        let b = key(&q.rects, to, j);
        for (x, y) in a.rows().iter().flatten().zip(b.rows().iter().flatten()) {
            map.insert(*x, *y);
        }
    }
    LrTableau::new_unchecked(q.tab.map_letters(|x| map[&x]), to, q.rects.clone())
}

fn standardize(q: &LrTableau) -> LrTableau {
    let a = q.rects.row_offsets();
    let b = q.rects.cell_offsets();
    let mut block = BTreeMap::new();
    for (j, r) in q.rects.iter().enumerate() {
        for row in 1..=r.height {
            block.insert(a[j] + row, b[j] + (row - 1) * r.width);
        }
    }
    // equal letters form a horizontal strip: number them by column
    let mut cells: Vec<(Letter, usize, usize)> = Vec::new();
    for (r, row) in q.tab.rows().iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            cells.push((x, c, r));
        }
    }
    cells.sort_unstable();
    let mut rows: Vec<Vec<Letter>> = q.tab.rows().to_vec();
    let mut seen: BTreeMap<Letter, usize> = BTreeMap::new();
    for (x, c, r) in cells {
        let t = seen.entry(x).or_insert(0);
        *t += 1;
        rows[r][c] = block[&x] + *t;
    }
    LrTableau::new_unchecked(Tableau::from_rows_unchecked(rows), Family::Rlr, q.rects.clone())
}

fn unstandardize(q: &LrTableau) -> LrTableau {
    let a = q.rects.row_offsets();
    let b = q.rects.cell_offsets();
    let mut map = BTreeMap::new();
    for (j, r) in q.rects.iter().enumerate() {
        for row in 1..=r.height {
            for c in 1..=r.width {
                map.insert(b[j] + (row - 1) * r.width + c, a[j] + row);
            }
        }
    }
    LrTableau::new_unchecked(q.tab.map_letters(|x| map[&x]), Family::Lr, q.rects.clone())
}

fn transpose(q: &LrTableau) -> LrTableau {
    let to = if q.family == Family::Rlr { Family::Clr } else { Family::Rlr };
    LrTableau::new_unchecked(q.tab.transpose(), to, q.rects.transpose())
}

pub fn relabel(q: &LrTableau, map: Relabel) -> Result<LrTableau> {
    Ok(match map {
        Relabel::Gamma => {
            check_family(q, Family::Clr)?;
            positional(q, Family::Rlr)
        }
        Relabel::GammaInv => {
            check_family(q, Family::Rlr)?;
            positional(q, Family::Clr)
        }
        Relabel::Std => {
            check_family(q, Family::Lr)?;
            standardize(q)
        }
        Relabel::StdInv => {
            check_family(q, Family::Rlr)?;
            unstandardize(q)
        }
        Relabel::Beta => {
            check_family(q, Family::Lr)?;
            positional(&standardize(q), Family::Clr)
        }
        Relabel::Tr => {
            if q.family == Family::Lr {
                return Err(Error::DomainMismatch("transposition needs a standard LR tableau"));
            }
            transpose(q)
        }
        Relabel::TrLr => {
            check_family(q, Family::Clr)?;
            transpose(&positional(q, Family::Rlr))
        }
    })
}

/// Converts any family to the `LR` labeling.
pub fn to_lr(q: &LrTableau) -> LrTableau {
    match q.family {
        Family::Lr => q.clone(),
        Family::Rlr => unstandardize(q),
        Family::Clr => unstandardize(&positional(q, Family::Rlr)),
    }
}

/// `b ↦ (P(b), Q(b))` by column insertion of `word(b)` from the right.
pub fn rsk(p: &Path) -> (Tableau, LrTableau) {
    let a = p.shapes().row_offsets();
    let mut labels = Vec::with_capacity(p.shapes().size());
    let mut letters = Vec::with_capacity(p.shapes().size());
    for (j, b) in p.factors().iter().enumerate() {
        let w = b.reading_word();
        let pos = b.reading_positions();
        for k in (0..w.len()).rev() {
            letters.push(w[k]);
            labels.push(a[j] + pos[k].0 + 1);
        }
    }
    letters.reverse();
    let (ptab, cells) = column_rsk(&letters);
    let mut rows: Vec<Vec<Letter>> = ptab.rows().iter().map(|r| vec![0; r.len()]).collect();
    for (&(r, c), &l) in cells.iter().zip(&labels) {
        rows[r][c] = l;
    }
    (ptab, LrTableau::new_unchecked(Tableau::from_rows_unchecked(rows), Family::Lr, p.shapes().clone()))
}

/// Inverse of `rsk`; `q` must be in the `LR` labeling.
pub fn rsk_inverse(ptab: &Tableau, q: &LrTableau) -> Result<Path> {
    check_family(q, Family::Lr)?;
    if ptab.shape() != q.tab.shape() {
        return Err(Error::InvalidInput("P and Q have different shapes".into()));
    }
    let mut cells: Vec<(Letter, usize, usize)> = Vec::new();
    for (r, row) in q.tab.rows().iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            cells.push((x, c, r));
        }
    }
    cells.sort_unstable();
    let order: Vec<(usize, usize)> = cells.iter().map(|&(_, c, r)| (r, c)).collect();
    let w = column_rsk_inverse(ptab, &order);
    let mut end = w.len();
    let mut factors = Vec::with_capacity(q.rects.len());
    for r in q.rects.iter() {
        let seg = &w[end - r.area()..end];
        end -= r.area();
        let shape = Tableau::key_rows(*r, 0);
        factors.push(Tableau::new(shape.refill(seg).into_rows())?);
    }
    Path::new(factors)
}

/// The single element of `LR(ρ;(R1,R2))` over the letters `1..=η1+η2`.
pub fn unique_lr(cache: &mut Cache, rho: &[usize], r1: Rect, r2: Rect) -> Result<Tableau> {
    let k = (rho.to_vec(), r1, r2);
    if let Some(t) = cache.pairs.get(&k) {
        return Ok(t.clone());
    }
    let set = enumerate_lr(rho, &RectSeq::new(vec![r1, r2])?, Family::Lr)?;
    if set.len() != 1 {
        return Err(Error::InternalInconsistency(alloc::format!(
            "two-rectangle LR set for {r1},{r2} has {} elements",
            set.len()
        )));
    }
    let t = set[0].tab.clone();
    cache.pairs.insert(k, t.clone());
    Ok(t)
}

/// Number of cells strictly right of column `w`.
pub fn cells_right_of(t: &Tableau, w: usize) -> usize {
    t.rows().iter().map(|r| r.len().saturating_sub(w)).sum()
}

pub fn automorphism_sp(q: &LrTableau, p: usize) -> Result<LrTableau> {
    automorphism_sp_with(&mut Cache::default(), q, p)
}

/// `s_p` (1-based) on `LR(λ;R)`.
pub fn automorphism_sp_with(cache: &mut Cache, q: &LrTableau, p: usize) -> Result<LrTableau> {
    check_family(q, Family::Lr)?;
    if p == 0 || p >= q.rects.len() {
        return Err(Error::InvalidInput("s_p position out of range".into()));
    }
    let (rp, rq) = (q.rects[p - 1], q.rects[p]);
    let swapped = q.rects.swapped(p);
    if rp == rq {
        return Ok(LrTableau::new_unchecked(q.tab.clone(), Family::Lr, swapped));
    }
    let a = q.rects.row_offsets()[p - 1];
    let (lo, hi) = (a + 1, a + rp.height + rq.height);
    let positions: Vec<(usize, usize)> =
        q.tab.reading_positions().into_iter().filter(|&(r, c)| (lo..=hi).contains(&q.tab.rows()[r][c])).collect();
    let u: Vec<Letter> = positions.iter().map(|&(r, c)| q.tab.rows()[r][c] - a).collect();
    let (pp, cells) = column_rsk(&u);
    debug_assert_eq!(pp, unique_lr(cache, &pp.shape(), rp, rq)?);
    let image = unique_lr(cache, &pp.shape(), rq, rp)?;
    let v = column_rsk_inverse(&image, &cells);
    let mut rows = q.tab.rows().to_vec();
    for (&(r, c), &x) in positions.iter().zip(v.iter()) {
        rows[r][c] = x + a;
    }
    let out = LrTableau::new_unchecked(Tableau::from_rows_unchecked(rows), Family::Lr, swapped);
    debug_assert!(out.is_member());
    Ok(out)
}

/// `d_{i,R}(Q)` for 1-based `i`.
pub fn d_stat(q: &LrTableau, i: usize) -> usize {
    let a = q.rects.row_offsets()[i - 1];
    let (r1, r2) = (q.rects[i - 1], q.rects[i]);
    let p = schensted_p(&q.tab.restricted_word(a + 1, a + r1.height + r2.height));
    cells_right_of(&p, r1.width.max(r2.width))
}

pub const MAX_AVERAGE_LEN: usize = 6;

/// The `1/L!`-weighted sum over the `S_L`-orbit of `Q`.
pub fn charge_via_average(q: &LrTableau) -> Result<usize> {
    let q = to_lr(q);
    let l = q.rects.len();
    if l > MAX_AVERAGE_LEN {
        return Err(Error::TooLarge("charge by averaging is limited to six rectangles"));
    }
    let mut cache = Cache::default();
    let start: Vec<usize> = (0..l).collect();
    let mut seen: BTreeMap<Vec<usize>, LrTableau> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), q.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        let cur = seen[&w].clone();
        for p in 1..l {
            let mut w2 = w.clone();
            w2.swap(p - 1, p);
            if !seen.contains_key(&w2) {
                let img = automorphism_sp_with(&mut cache, &cur, p)?;
                seen.insert(w2.clone(), img);
                queue.push_back(w2);
            }
        }
    }
    let mut total = 0usize;
    for t in seen.values() {
        for i in 1..l {
            total += (l - i) * d_stat(t, i);
        }
    }
    let fact: usize = (1..=l).product();
    if total % fact != 0 {
        return Err(Error::InternalInconsistency("charge average is not an integer".into()));
    }
    Ok(total / fact)
}

pub fn charge(q: &LrTableau, method: ChargeMethod) -> Result<usize> {
    match method {
        ChargeMethod::ViaAverage => charge_via_average(q),
        ChargeMethod::ViaBijection => crate::kss::charge_via_bijection(q),
    }
}

/// `Σ q^{c_R(Q)}` over `LR(λ;R)`, or over the level-`ℓ` subset.
pub fn kostka_via_lr(lam: &Partition, rects: &RectSeq, ell: Option<usize>, method: ChargeMethod) -> Result<QPoly> {
    let mut k = QPoly::zero();
    for q in enumerate_lr(lam, rects, Family::Lr)? {
        if let Some(l) = ell {
            if !is_level_restricted_lr(&q, lam.n(), l)? {
                continue;
            }
        }
        k.add_term(charge(&q, method)? as u32, 1);
    }
    Ok(k)
}

/// One step from `R` towards `r(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedStep {
    /// Split the top row off `R_1` (needs `η_1 > 1`).
    Split,
    /// `s_p` / `σ_p` (needs `η_1 = 1`).
    Swap(usize),
}

/// `(height, width, source rectangle, first row)` per current rectangle.
type Tracked = Vec<(usize, usize, usize, usize)>;

fn track(r: &RectSeq) -> Tracked {
    r.iter().enumerate().map(|(j, x)| (x.height, x.width, j, 0)).collect()
}

fn apply_tracked(t: &mut Tracked, s: EmbedStep) {
    match s {
        EmbedStep::Split => {
            let (h, w, j, row) = t[0];
            t[0] = (1, w, j, row);
            t.insert(1, (h - 1, w, j, row + 1));
        }
        EmbedStep::Swap(p) => t.swap(p - 1, p),
    }
}

fn sort_rows(t: &mut Tracked, steps: &mut Vec<EmbedStep>, descending: bool) {
    let n = t.len();
    for pass in 0..n {
        for p in 1..n - pass {
            if ((t[p - 1].2, t[p - 1].3) > (t[p].2, t[p].3)) != descending {
                steps.push(EmbedStep::Swap(p));
                apply_tracked(t, EmbedStep::Swap(p));
            }
        }
    }
}

/// Repeatedly move the leftmost multi-row rectangle to the front and split
/// its top row; finally sort the rows into the order of `r(R)`.
pub fn canonical_steps(r: &RectSeq) -> Vec<EmbedStep> {
    let mut t = track(r);
    let mut steps = Vec::new();
    while let Some(j) = t.iter().position(|x| x.0 > 1) {
        for p in (1..=j).rev() {
            steps.push(EmbedStep::Swap(p));
            apply_tracked(&mut t, EmbedStep::Swap(p));
        }
        steps.push(EmbedStep::Split);
        apply_tracked(&mut t, EmbedStep::Split);
    }
    sort_rows(&mut t, &mut steps, false);
    steps
}

/// A second valid sequence: split `R_1` whenever possible, otherwise bring
/// the rightmost multi-row rectangle to the front; the rows are reversed
/// before being sorted.
pub fn alternative_steps(r: &RectSeq) -> Vec<EmbedStep> {
    let mut t = track(r);
    let mut steps = Vec::new();
    loop {
        if t.first().is_some_and(|x| x.0 > 1) {
            steps.push(EmbedStep::Split);
            apply_tracked(&mut t, EmbedStep::Split);
            continue;
        }
        let Some(j) = t.iter().rposition(|x| x.0 > 1) else { break };
        for p in (1..=j).rev() {
            steps.push(EmbedStep::Swap(p));
            apply_tracked(&mut t, EmbedStep::Swap(p));
        }
    }
    sort_rows(&mut t, &mut steps, true);
    sort_rows(&mut t, &mut steps, false);
    steps
}

fn split_rects(r: &RectSeq) -> RectSeq {
    let mut v = r.as_slice().to_vec();
    let first = v[0];
    v[0] = Rect::new(1, first.width);
    v.insert(1, Rect::new(first.height - 1, first.width));
    RectSeq::new(v).expect("positive sides")
}

fn check_step(r: &RectSeq, s: EmbedStep) -> Result<()> {
    let ok = match s {
        EmbedStep::Split => r.first().is_some_and(|x| x.height > 1),
        EmbedStep::Swap(p) => r.first().is_some_and(|x| x.height == 1) && p >= 1 && p < r.len(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput("invalid embedding step".into()))
    }
}

pub fn embed_lr_with_steps(cache: &mut Cache, q: &LrTableau, steps: &[EmbedStep]) -> Result<LrTableau> {
    let mut cur = to_lr(q);
    for &s in steps {
        check_step(&cur.rects, s)?;
        cur = match s {
            EmbedStep::Split => LrTableau::new_unchecked(cur.tab, Family::Lr, split_rects(&cur.rects)),
            EmbedStep::Swap(p) => automorphism_sp_with(cache, &cur, p)?,
        };
    }
    Ok(cur)
}

/// `i_R(Q) ∈ LR(λ; r(R))`.
pub fn embed_lr(q: &LrTableau) -> Result<LrTableau> {
    embed_lr_with_steps(&mut Cache::default(), q, &canonical_steps(&q.rects))
}

pub fn embed_path_with_steps(cache: &mut Cache, p: &Path, steps: &[EmbedStep]) -> Result<Path> {
    let mut cur = p.clone();
    for &s in steps {
        check_step(cur.shapes(), s)?;
        cur = match s {
            EmbedStep::Split => {
                let b = &cur.factors()[0];
                let top = Tableau::from_rows_unchecked(vec![b.rows()[0].clone()]);
                let rest = Tableau::from_rows_unchecked(b.rows()[1..].to_vec());
                let mut f = vec![top, rest];
                f.extend(cur.factors()[1..].iter().cloned());
                Path::new(f)?
            }
            EmbedStep::Swap(pos) => crate::path::local_iso_with(cache, &cur, pos)?,
        };
    }
    Ok(cur)
}

/// `i_R(b) ∈ P_{r(R)}`.
pub fn embed_path(p: &Path) -> Result<Path> {
    embed_path_with_steps(&mut Cache::default(), p, &canonical_steps(p.shapes()))
}

/// Inverse of `embed_lr` for tableaux in its image.
pub fn unembed_lr(q: &LrTableau, target: &RectSeq) -> Result<LrTableau> {
    let q = to_lr(q);
    if q.rects != target.split_rows() {
        return Err(Error::DomainMismatch("tableau is not over the rows of the target"));
    }
    let mut cache = Cache::default();
    let steps = canonical_steps(target);
    let mut seqs = vec![target.clone()];
    for &s in &steps {
        let last = seqs.last().expect("nonempty");
        seqs.push(match s {
            EmbedStep::Split => split_rects(last),
            EmbedStep::Swap(p) => last.swapped(p),
        });
    }
    let mut cur = q;
    for (k, &s) in steps.iter().enumerate().rev() {
        cur = match s {
            EmbedStep::Split => LrTableau::new_unchecked(cur.tab, Family::Lr, seqs[k].clone()),
            EmbedStep::Swap(p) => automorphism_sp_with(&mut cache, &cur, p)?,
        };
    }
    if !cur.is_member() {
        return Err(Error::BadWitness);
    }
    Ok(cur)
}

/// `CST^ℓ` test on a tableau with letters `1..=L` (each letter one row).
pub fn is_level_restricted_cst(t: &Tableau, n: usize, ell: usize) -> bool {
    let top = t.max_letter();
    let count = |row: usize, j: Letter| t.rows().get(row).map_or(0, |r| r.iter().take_while(|&&x| x <= j).count());
    (1..=top).all(|j| count(0, j) <= ell + if n == 0 { 0 } else { count(n - 1, j - 1) })
}

/// `Q ∈ LR^ℓ(λ;R)` iff `i_R(Q) ∈ CST^ℓ(λ; r(R))`, provided every rectangle
/// has width at most `ℓ`. A full-height rectangle wider than `ℓ` splits into
/// rows that are never restricted, so then `Q` is tested through its path.
pub fn is_level_restricted_lr(q: &LrTableau, n: usize, ell: usize) -> Result<bool> {
    if q.rects.iter().any(|r| r.width > ell) {
        let p = rsk_inverse(&Tableau::yamanouchi(&q.shape()), &to_lr(q))?;
        return crate::path::is_level_restricted(&p, n, ell);
    }
    let e = embed_lr(q)?;
    Ok(is_level_restricted_cst(&e.tab, n, ell))
}

/// Transposed shape, for callers working with `tr`.
pub fn transpose_shape(lam: &[usize]) -> Vec<usize> {
    conjugate(lam)
}
