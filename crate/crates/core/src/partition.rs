use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// A partition with exactly `n` parts, trailing zeros allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("partition needs rank n >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("partition parts must weakly decrease".into()));
        }
        Ok(Partition { parts })
    }

    /// Pads with zeros up to rank `n`.
    pub fn with_rank(parts: &[usize], n: usize) -> Result<Self> {
        let nonzero = parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
        if nonzero > n {
            return Err(Error::InvalidInput("partition has more than n nonzero parts".into()));
        }
        let mut v = parts[..nonzero].to_vec();
        v.resize(n, 0);
        Partition::new(v)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Nonzero column lengths.
    pub fn conjugate(&self) -> Vec<usize> {
        conjugate(&self.parts)
    }
}

impl Deref for Partition {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn conjugate(parts: &[usize]) -> Vec<usize> {
    let first = parts.iter().copied().max().unwrap_or(0);
    (1..=first).map(|c| parts.iter().filter(|&&p| p >= c).count()).collect()
}

/// `Q_i(ρ) = Σ_j min(i, ρ_j)`; ρ may be any weak composition.
pub fn column_counts(rho: &[usize], i: usize) -> usize {
    rho.iter().map(|&p| p.min(i)).sum()
}

/// A rectangle with `height` rows and `width` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn new(height: usize, width: usize) -> Self {
        Rect { height, width }
    }

    pub fn area(&self) -> usize {
        self.height * self.width
    }

    pub fn transpose(&self) -> Rect {
        Rect::new(self.width, self.height)
    }

    /// Size of the intersection of two rectangles justified at the top-left.
    pub fn overlap(&self, other: &Rect) -> usize {
        self.height.min(other.height) * self.width.min(other.width)
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

/// Ordered rectangles `R_1, …, R_L`; `R_1` belongs to the rightmost tensor factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RectSeq(Vec<Rect>);

impl RectSeq {
    pub fn new(rects: Vec<Rect>) -> Result<Self> {
        if rects.iter().any(|r| r.height == 0 || r.width == 0) {
            return Err(Error::InvalidInput("rectangles must have positive sides".into()));
        }
        Ok(RectSeq(rects))
    }

    /// Single rows of the given widths; zero widths are kept (they arise
    /// mid-way through the row bijection).
    pub fn rows(widths: &[usize]) -> Self {
        RectSeq(widths.iter().map(|&w| Rect::new(1, w)).collect())
    }

    pub fn as_slice(&self) -> &[Rect] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rect> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Rect::area).sum()
    }

    pub fn total_height(&self) -> usize {
        self.0.iter().map(|r| r.height).sum()
    }

    /// `a_j`: number of LR letters used by `R_1..R_{j-1}`.
    pub fn row_offsets(&self) -> Vec<usize> {
        prefix(self.0.iter().map(|r| r.height))
    }

    /// `b_j`: number of cells in `R_1..R_{j-1}`.
    pub fn cell_offsets(&self) -> Vec<usize> {
        prefix(self.0.iter().map(Rect::area))
    }

    pub fn is_single_rows(&self) -> bool {
        self.0.iter().all(|r| r.height == 1)
    }

    pub fn all_equal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// `r(R)`: every rectangle split into its rows, in order.
    pub fn split_rows(&self) -> RectSeq {
        RectSeq(
            self.0
                .iter()
                .flat_map(|r| core::iter::repeat(Rect::new(1, r.width)).take(r.height))
                .collect(),
        )
    }

    pub fn transpose(&self) -> RectSeq {
        RectSeq(self.0.iter().map(Rect::transpose).collect())
    }

    /// `s_p R`: swap `R_p` and `R_{p+1}` (1-based `p`).
    pub fn swapped(&self, p: usize) -> RectSeq {
        let mut v = self.0.clone();
        v.swap(p - 1, p);
        RectSeq(v)
    }

    /// `ξ^{(k)}(R)`: widths of the rectangles of height `k`.
    pub fn xi(&self, k: usize) -> Vec<usize> {
        self.0.iter().filter(|r| r.height == k).map(|r| r.width).collect()
    }

    /// `||R|| = Σ_{i<j} |R_i ∩ R_j|`.
    pub fn norm(&self) -> usize {
        let mut s = 0;
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                s += a.overlap(b);
            }
        }
        s
    }

    pub fn max_width(&self) -> usize {
        self.0.iter().map(|r| r.width).max().unwrap_or(0)
    }

    pub fn max_height(&self) -> usize {
        self.0.iter().map(|r| r.height).max().unwrap_or(0)
    }

    pub fn push(&mut self, r: Rect) {
        self.0.push(r);
    }
}

impl Deref for RectSeq {
    type Target = [Rect];
    fn deref(&self) -> &[Rect] {
        &self.0
    }
}

impl fmt::Display for RectSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

fn prefix(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    it.map(|x| {
        let a = acc;
        acc += x;
        a
    })
    .collect()
}

pub fn check_sizes(lam: &[usize], rects: &RectSeq) -> Result<()> {
    let l: usize = lam.iter().sum();
    if l != rects.size() {
        return Err(Error::SizeMismatch { lambda: l, rects: rects.size() });
    }
    Ok(())
}

/// Partitions with at most `m` parts, each at most `p`, as weakly decreasing
/// lists without trailing zeros.
pub fn partitions_in_box(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    box_rec(m, p, &mut cur, &mut out);
    out
}

fn box_rec(m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    if cur.len() == m {
        return;
    }
    let hi = cur.last().copied().unwrap_or(p).min(p);
    for part in 1..=hi {
        cur.push(part);
        box_rec(m, p, cur, out);
        cur.pop();
    }
}

/// Partitions of `total` with largest part at most `max_part` (no zeros).
pub fn partitions_of(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    parts_rec(total, max_part, &mut cur, &mut out);
    out
}

fn parts_rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        parts_rec(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Partitions of `total` into at most `n` parts, padded to length `n`.
pub fn partitions_with_rank(total: usize, n: usize) -> Vec<Partition> {
    partitions_of(total, total)
        .into_iter()
        .filter(|p| p.len() <= n)
        .map(|p| Partition::with_rank(&p, n).expect("rank checked"))
        .collect()
}

/// Multiplicity of `i` among the parts.
pub fn multiplicity(parts: &[usize], i: usize) -> usize {
    parts.iter().filter(|&&p| p == i).count()
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    perm_rec(n, &mut cur, &mut used, &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let s = if inv % 2 == 0 { 1 } else { -1 };
            (p, s)
        })
        .collect()
}

fn perm_rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            perm_rec(n, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}
