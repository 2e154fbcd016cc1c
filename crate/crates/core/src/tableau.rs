use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::partition::Rect;
use crate::psi;

pub type Letter = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Raise,
    Lower,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Column-strict tableau in English notation; empty rows are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = Tableau::from_rows_unchecked(rows);
        if !t.is_column_strict() {
            return Err(Error::InvalidInput(alloc::format!("not a column-strict tableau: {t}")));
        }
        Ok(t)
    }

    pub fn from_rows_unchecked(mut rows: Vec<Vec<Letter>>) -> Self {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Tableau { rows }
    }

    pub fn empty() -> Self {
        Tableau::default()
    }

    /// Row `r` filled with the letter `r`.
    pub fn yamanouchi(shape: &[usize]) -> Self {
        Tableau::from_rows_unchecked(shape.iter().enumerate().map(|(r, &l)| vec![r + 1; l]).collect())
    }

    /// The rectangle with row `r` filled by `offset + r`.
    pub fn key_rows(rect: Rect, offset: Letter) -> Self {
        Tableau::from_rows_unchecked((1..=rect.height).map(|r| vec![offset + r; rect.width]).collect())
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Letter>> {
        self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Letter> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    pub fn rect(&self) -> Option<Rect> {
        let w = self.rows.first()?.len();
        self.rows.iter().all(|r| r.len() == w).then(|| Rect::new(self.rows.len(), w))
    }

    pub fn is_column_strict(&self) -> bool {
        if self.rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return false;
        }
        if self.rows.iter().any(|r| r.windows(2).any(|w| w[0] > w[1]) || r.contains(&0)) {
            return false;
        }
        self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(lo, up)| up < lo))
    }

    pub fn max_letter(&self) -> Letter {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// `content[x-1]` = number of occurrences of `x`, for `x = 1..=n`.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &x in self.rows.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }

    /// Rows read left to right, bottom row first.
    pub fn reading_word(&self) -> Word {
        Word(self.rows.iter().rev().flatten().copied().collect())
    }

    pub fn reading_positions(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::with_capacity(self.size());
        for r in (0..self.rows.len()).rev() {
            for c in 0..self.rows[r].len() {
                v.push((r, c));
            }
        }
        v
    }

    /// Reading word of the subtableau with letters in `lo..=hi`.
    pub fn restricted_word(&self, lo: Letter, hi: Letter) -> Word {
        Word(self.rows.iter().rev().flatten().copied().filter(|x| (lo..=hi).contains(x)).collect())
    }

    /// Same shape, refilled from a word in reading order.
    pub fn refill(&self, w: &[Letter]) -> Tableau {
        let mut rows = self.rows.clone();
        for (&(r, c), &x) in self.reading_positions().iter().zip(w) {
            rows[r][c] = x;
        }
        Tableau::from_rows_unchecked(rows)
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Tableau {
        Tableau::from_rows_unchecked(self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect())
    }

    pub fn transpose(&self) -> Tableau {
        let w = self.rows.first().map_or(0, Vec::len);
        Tableau::from_rows_unchecked(
            (0..w).map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect()).collect(),
        )
    }

    pub fn is_yamanouchi(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|&x| x == r + 1))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Bracket pass for index `i`: letter `i` closes, `i+1` opens.  Returns the
/// positions of unmatched `i`s and of unmatched `i+1`s, both left to right.
fn unmatched(w: &[Letter], i: Letter) -> (Vec<usize>, Vec<usize>) {
    let mut closes = Vec::new();
    let mut opens = Vec::new();
    for (pos, &x) in w.iter().enumerate() {
        if x == i + 1 {
            opens.push(pos);
        } else if x == i {
            if opens.pop().is_none() {
                closes.push(pos);
            }
        }
    }
    (closes, opens)
}

/// `(φ_i, ε_i)` of a word.
pub fn string_stats(w: &[Letter], i: Letter) -> (usize, usize) {
    let (c, o) = unmatched(w, i);
    (c.len(), o.len())
}

/// `e_i` / `f_i` on a word for `i` in `1..n`.
pub fn word_op(w: &[Letter], i: Letter, dir: Dir) -> Option<Word> {
    let (closes, opens) = unmatched(w, i);
    let mut v = w.to_vec();
    match dir {
        Dir::Lower => v[*closes.last()?] = i + 1,
        Dir::Raise => v[*opens.first()?] = i,
    }
    Some(Word(v))
}

/// `(φ_i, ε_i)` of a tableau; `i = 0` goes through ψ and needs a rectangle.
pub fn tableau_stats(t: &Tableau, i: usize, n: usize) -> Result<(usize, usize)> {
    if i == 0 {
        let s = psi::psi(t, n)?;
        Ok(string_stats(&s.reading_word(), 1))
    } else {
        Ok(string_stats(&t.reading_word(), i))
    }
}

/// `e_i` / `f_i` on a tableau, `i ∈ 0..n`; `e_0 = ψ⁻¹ e_1 ψ`.
pub fn crystal_op(t: &Tableau, i: usize, dir: Dir, n: usize) -> Result<Option<Tableau>> {
    if i == 0 {
        let s = psi::psi(t, n)?;
        return match crystal_op(&s, 1, dir, n)? {
            Some(u) => Ok(Some(psi::psi_inv(&u, n)?)),
            None => Ok(None),
        };
    }
    Ok(word_op(&t.reading_word(), i, dir).map(|w| t.refill(&w)))
}

/// Column-inserts `x`; returns the new cell.
pub fn column_insert(rows: &mut Vec<Vec<Letter>>, mut x: Letter) -> (usize, usize) {
    let mut c = 0;
    loop {
        let height = rows.iter().take_while(|r| r.len() > c).count();
        match (0..height).find(|&r| rows[r][c] >= x) {
            Some(r) => {
                core::mem::swap(&mut rows[r][c], &mut x);
                c += 1;
            }
            None => {
                if height == rows.len() {
                    rows.push(Vec::new());
                }
                rows[height].push(x);
                return (height, c);
            }
        }
    }
}

/// Reverses `column_insert` at the corner cell `(r, c)`.
pub fn column_uninsert(rows: &mut Vec<Vec<Letter>>, r: usize, c: usize) -> Letter {
    debug_assert_eq!(rows[r].len(), c + 1);
    let mut v = rows[r].pop().expect("corner cell");
    if rows[r].is_empty() {
        rows.pop();
    }
    for col in (0..c).rev() {
        let height = rows.iter().take_while(|row| row.len() > col).count();
        let r = (0..height).rev().find(|&r| rows[r][col] <= v).expect("reverse bump target");
        core::mem::swap(&mut rows[r][col], &mut v);
    }
    v
}

/// Column-inserts the word from its right end; returns P and the new cell of
/// each step in insertion order.
pub fn column_rsk(w: &[Letter]) -> (Tableau, Vec<(usize, usize)>) {
    let mut rows = Vec::new();
    let cells = w.iter().rev().map(|&x| column_insert(&mut rows, x)).collect();
    (Tableau::from_rows_unchecked(rows), cells)
}

pub fn schensted_p(w: &[Letter]) -> Tableau {
    column_rsk(w).0
}

/// Inverse of `column_rsk` given the standard recording order of cells.
pub fn column_rsk_inverse(p: &Tableau, cells: &[(usize, usize)]) -> Word {
    let mut rows = p.rows.clone();
    // the last letter inserted is the leftmost one
    Word(cells.iter().rev().map(|&(r, c)| column_uninsert(&mut rows, r, c)).collect())
}

/// Column-strict tableaux of `shape` with `content[x-1]` copies of `x`.
pub fn tableaux_with_content(shape: &[usize], content: &[usize]) -> Vec<Tableau> {
    let mut out = Vec::new();
    let cur = vec![0; shape.len()];
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); shape.len()];
    strips(shape, &cur, 1, &|x| Some(content.get(x - 1).copied().unwrap_or(0)), content.len(), &mut rows, &mut out);
    out
}

/// All column-strict tableaux of `shape` over `1..=n`.
pub fn tableaux_of_shape(shape: &[usize], n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    let cur = vec![0; shape.len()];
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); shape.len()];
    strips(shape, &cur, 1, &|_| None, n, &mut rows, &mut out);
    out
}

fn strips(
    shape: &[usize],
    cur: &[usize],
    x: Letter,
    count: &dyn Fn(Letter) -> Option<usize>,
    last: Letter,
    rows: &mut Vec<Vec<Letter>>,
    out: &mut Vec<Tableau>,
) {
    if cur == shape {
        out.push(Tableau::from_rows_unchecked(rows.clone()));
        return;
    }
    if x > last {
        return;
    }
    let want = count(x);
    let mut next = cur.to_vec();
    add_strip(shape, cur, 0, want, &mut next, &mut |next| {
        for (r, (&a, &b)) in next.iter().zip(cur).enumerate() {
            rows[r].extend(core::iter::repeat(x).take(a - b));
        }
        strips(shape, next, x + 1, count, last, rows, out);
        for (r, (&a, &b)) in next.iter().zip(cur).enumerate() {
            let l = rows[r].len();
            rows[r].truncate(l - (a - b));
        }
    });
}

/// Enumerates horizontal strips `next/cur` inside `shape` of size `want`
/// (any size when `want` is `None`).
fn add_strip(
    shape: &[usize],
    cur: &[usize],
    r: usize,
    want: Option<usize>,
    next: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if r == shape.len() {
        if want.is_none_or(|w| w == 0) {
            f(next);
        }
        return;
    }
    let cap = if r == 0 { shape[0] } else { shape[r].min(cur[r - 1]) };
    let lo = cur[r];
    let hi = match want {
        Some(w) => cap.min(lo + w),
        None => cap,
    };
    for v in lo..=hi {
        next[r] = v;
        add_strip(shape, cur, r + 1, want.map(|w| w - (v - lo)), next, f);
    }
    next[r] = cur[r];
}

/// Standard Young tableaux of a shape.
pub fn standard_tableaux(shape: &[usize]) -> Vec<Tableau> {
    let n: usize = shape.iter().sum();
    tableaux_with_content(shape, &vec![1; n])
}
