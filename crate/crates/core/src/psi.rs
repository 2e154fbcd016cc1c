//! The content rotation ψ on rectangular tableaux.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tableau::{schensted_p, Letter, Tableau};

/// ψ⁻¹: content `(c_1, …, c_n)` becomes `(c_2, …, c_n, c_1)`.
pub fn psi_inv(b: &Tableau, n: usize) -> Result<Tableau> {
    let rect = b.rect().ok_or(Error::NonRectangular)?;
    let c1 = b.rows()[0].iter().take_while(|&&x| x == 1).count();
    let rest: Vec<Letter> = b.reading_word().iter().copied().filter(|&x| x != 1).collect();
    let p = schensted_p(&rest);
    let mut rows: Vec<Vec<Letter>> = p.into_rows().into_iter().map(|r| r.into_iter().map(|x| x - 1).collect()).collect();
    rows.resize(rect.height, Vec::new());
    let last = rows.last_mut().expect("nonempty rectangle");
    if last.len() + c1 != rect.width {
        return Err(Error::InternalInconsistency("psi_inv: rectified shape is not a rectangle minus a row end".into()));
    }
    last.extend(core::iter::repeat(n).take(c1));
    Ok(Tableau::from_rows_unchecked(rows))
}

/// ψ: content `(c_1, …, c_n)` becomes `(c_n, c_1, …, c_{n-1})`.  The letters
/// `n` sit at the end of the last row; the rest, shifted up by one, is slid
/// back out to fill the rectangle and the vacated cells get the letter 1.
pub fn psi(b: &Tableau, n: usize) -> Result<Tableau> {
    let rect = b.rect().ok_or(Error::NonRectangular)?;
    let (k, m) = (rect.height, rect.width);
    let cn = b.rows()[k - 1].iter().rev().take_while(|&&x| x == n).count();
    let mut grid: Vec<Vec<Option<Letter>>> = b
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| if x == n { None } else { Some(x + 1) }).collect())
        .collect();
    debug_assert!(grid[..k - 1].iter().all(|r| r.iter().all(Option::is_some)));
    // reverse slides into the vacant cells of the last row, leftmost first
    let mut holes = vec![vec![false; m]; k];
    for start in m - cn..m {
        let (mut r, mut c) = (k - 1, start);
        loop {
            let up = (r > 0 && !holes[r - 1][c]).then(|| grid[r - 1][c]).flatten();
            let left = (c > 0 && !holes[r][c - 1]).then(|| grid[r][c - 1]).flatten();
            match (up, left) {
                (None, None) => break,
                (Some(u), Some(l)) if l > u => {
                    grid[r][c] = Some(l);
                    grid[r][c - 1] = None;
                    c -= 1;
                }
                (Some(u), _) => {
                    grid[r][c] = Some(u);
                    grid[r - 1][c] = None;
                    r -= 1;
                }
                (None, Some(l)) => {
                    grid[r][c] = Some(l);
                    grid[r][c - 1] = None;
                    c -= 1;
                }
            }
        }
        holes[r][c] = true;
    }
    let rows = grid.into_iter().map(|r| r.into_iter().map(|x| x.unwrap_or(1)).collect()).collect();
    let t = Tableau::from_rows_unchecked(rows);
    if !t.is_column_strict() {
        return Err(Error::InternalInconsistency("psi: reverse slides left a non-tableau".into()));
    }
    Ok(t)
}

/// ψ^e for any integer exponent.
pub fn psi_pow(b: &Tableau, n: usize, e: i64) -> Result<Tableau> {
    let e = e.rem_euclid(n as i64);
    let mut t = b.clone();
    for _ in 0..e {
        t = psi(&t, n)?;
    }
    Ok(t)
}
