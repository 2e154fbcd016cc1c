use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Integer polynomial in `q`, stored sparsely without zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: BTreeMap<u32, i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(0, 1)
    }

    pub fn monomial(exp: u32, coeff: i64) -> Self {
        let mut p = QPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_dense(c: &[i64]) -> Self {
        let mut p = QPoly::zero();
        for (e, &v) in c.iter().enumerate() {
            p.add_term(e as u32, v);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn shift(&self, by: u32) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> QPoly {
        let mut p = QPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(e, c * k);
        }
        p
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut v = vec![0; self.degree().map_or(0, |d| d as usize + 1)];
        for (e, c) in self.terms() {
            v[e as usize] = c;
        }
        v
    }

    /// Parses the text form produced by `Display`, e.g. `q^2 + 2*q^3 - q^5`.
    pub fn parse(s: &str) -> Result<QPoly> {
        let bad = || Error::InvalidInput(alloc::format!("bad polynomial: {s}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut p = QPoly::zero();
        let mut terms: Vec<(i64, &str)> = Vec::new();
        let mut start = 0;
        let mut sign = 1;
        let bytes = t.as_bytes();
        for i in 0..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > 0) {
                terms.push((sign, &t[start..i]));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                    start = i + 1;
                }
            } else if i == 0 && bytes[0] == b'-' {
                sign = -1;
                start = 1;
            }
        }
        for (sign, term) in terms {
            let (c, e) = match term.split_once('q') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some((c, e)) => {
                    let c = match c {
                        "" => 1,
                        c => c.strip_suffix('*').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?,
                    };
                    let e = match e {
                        "" => 1,
                        e => e.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
                    };
                    (c, e)
                }
            };
            p.add_term(e, sign * c);
        }
        Ok(p)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let a = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (e, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, a) => write!(f, "{a}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, a) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(-1)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut p = QPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

/// Laurent accumulator for alternating sums whose partial terms may carry
/// negative exponents.
#[derive(Clone, Debug, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn add_shifted(&mut self, p: &QPoly, shift: i64, sign: i64) {
        for (e, c) in p.terms() {
            let k = e as i64 + shift;
            let v = self.coeffs.entry(k).or_insert(0);
            *v += sign * c;
            if *v == 0 {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn into_poly(self) -> Result<QPoly> {
        let mut p = QPoly::zero();
        for (e, c) in self.coeffs {
            if e < 0 {
                return Err(Error::InternalInconsistency(alloc::format!(
                    "alternating sum left a term at q^{e}"
                )));
            }
            p.add_term(e as u32, c);
        }
        Ok(p)
    }
}

/// `[m+p choose m]_q`: partitions fitting in an `m × p` box.
pub fn q_binomial(m: usize, p: usize) -> QPoly {
    QPoly::from_dense(&q_binomial_dense(m, p))
}

/// Dense coefficients of `q_binomial(m, p)` via
/// `G(m,p) = G(m-1,p) + q^m G(m,p-1)`.
pub fn q_binomial_dense(m: usize, p: usize) -> Vec<i64> {
    // row[j] = G(i, j) for the current i.
    let mut row: Vec<Vec<i64>> = (0..=p).map(|_| vec![1]).collect();
    for i in 1..=m {
        let mut next: Vec<Vec<i64>> = Vec::with_capacity(p + 1);
        next.push(vec![1]);
        for j in 1..=p {
            let a = &row[j];
            let b = &next[j - 1];
            let mut c = vec![0i64; (i * j) + 1];
            for (e, &v) in a.iter().enumerate() {
                c[e] += v;
            }
            for (e, &v) in b.iter().enumerate() {
                c[e + i] += v;
            }
            next.push(c);
        }
        row = next;
    }
    row.pop().unwrap_or_else(|| vec![1])
}

/// `binom(m+p, m)` for negative-aware callers: zero unless both arguments are ≥ 0.
pub fn q_binomial_signed(m: i64, p: i64) -> QPoly {
    if m < 0 || p < 0 {
        QPoly::zero()
    } else {
        q_binomial(m as usize, p as usize)
    }
}

/// Truncated power series of `1/(q)_m` up to degree `d`.
pub fn inv_q_pochhammer(m: usize, d: usize) -> Vec<i64> {
    let mut s = vec![0i64; d + 1];
    s[0] = 1;
    for j in 1..=m {
        // multiply by 1/(1-q^j)
        for e in j..=d {
            s[e] += s[e - j];
        }
    }
    s
}

/// Truncated `q`-series with an exact rational exponent offset:
/// the series is `q^offset · Σ_e coeffs[e] q^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub offset: Ratio<i64>,
    coeffs: BTreeMap<u32, i64>,
    pub truncation_degree: u32,
}

impl QSeries {
    pub fn new(offset: Ratio<i64>, truncation_degree: u32) -> Self {
        QSeries { offset, coeffs: BTreeMap::new(), truncation_degree }
    }

    pub fn from_poly(p: &QPoly, offset: Ratio<i64>, truncation_degree: u32) -> Self {
        let mut s = QSeries::new(offset, truncation_degree);
        for (e, c) in p.terms() {
            s.add_term(e, c);
        }
        s
    }

    pub fn add_term(&mut self, exp: u32, coeff: i64) {
        if exp > self.truncation_degree || coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Shifts so the first nonzero coefficient sits at exponent 0, moving the
    /// shift into the offset; the truncation window shrinks accordingly.
    pub fn aligned(&self) -> QSeries {
        let Some(s) = self.leading_exponent() else { return self.clone() };
        let mut out = QSeries::new(self.offset + Ratio::from_integer(s as i64), self.truncation_degree - s);
        for (e, c) in self.terms() {
            out.add_term(e - s, c);
        }
        out
    }

    pub fn dense(&self, upto: u32) -> Vec<i64> {
        (0..=upto).map(|e| self.coeff(e)).collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = QPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(e, c);
        }
        write!(f, "q^({}) * ({}) + O(q^{})", self.offset, p, self.truncation_degree + 1)
    }
}
