//! Paths: tensor products of rectangular tableaux, with the tensor-product
//! crystal rule, local isomorphisms and the energy statistic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lr::{self, Cache};
use crate::partition::{check_sizes, Partition, Rect, RectSeq};
use crate::psi;
use crate::qpoly::QPoly;
use crate::tableau::{crystal_op, string_stats, tableau_stats, tableaux_of_shape, Dir, Letter, Tableau, Word};

/// `b_L ⊗ … ⊗ b_1`, stored rightmost factor first: `factors[0] = b_1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    factors: Vec<Tableau>,
    shapes: RectSeq,
}

impl Path {
    pub fn new(factors: Vec<Tableau>) -> Result<Path> {
        let rects = factors.iter().map(|b| b.rect().ok_or(Error::NonRectangular)).collect::<Result<Vec<Rect>>>()?;
        Ok(Path { factors, shapes: RectSeq::new(rects)? })
    }

    /// Builds a path from factors written left to right, `b_L` first.
    pub fn from_left_to_right(mut factors: Vec<Tableau>) -> Result<Path> {
        factors.reverse();
        Path::new(factors)
    }

    pub fn factors(&self) -> &[Tableau] {
        &self.factors
    }

    pub fn shapes(&self) -> &RectSeq {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `word(b_L) … word(b_1)`.
    pub fn word(&self) -> Word {
        Word(self.factors.iter().rev().flat_map(|b| b.reading_word().0).collect())
    }

    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for b in &self.factors {
            for (x, y) in c.iter_mut().zip(b.content(n)) {
                *x += y;
            }
        }
        c
    }

    /// `left ⊗ right`.
    pub fn tensor(left: &Path, right: &Path) -> Path {
        let mut factors = right.factors.clone();
        factors.extend(left.factors.iter().cloned());
        let mut shapes = right.shapes.clone();
        for r in left.shapes.iter() {
            shapes.push(*r);
        }
        Path { factors, shapes }
    }

    pub fn with_factor(&self, j: usize, b: Tableau) -> Path {
        let mut p = self.clone();
        p.factors[j] = b;
        p
    }

    pub fn map_factors(&self, f: impl Fn(&Tableau) -> Result<Tableau>) -> Result<Path> {
        Path::new(self.factors.iter().map(f).collect::<Result<Vec<_>>>()?)
    }

    pub(crate) fn from_parts_unchecked(factors: Vec<Tableau>, shapes: RectSeq) -> Path {
        Path { factors, shapes }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.factors.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Factor index (into `factors`) acted on by `e_i`/`f_i` under the signature
/// rule, from per-factor `(φ_i, ε_i)`.
fn acting_factor(stats: &[(usize, usize)], dir: Dir) -> Option<usize> {
    let l = stats.len();
    match dir {
        Dir::Lower => {
            // scan b_L … b_1; each factor reads `)^φ (^ε`
            let mut open = 0usize;
            let mut hit = None;
            for j in (0..l).rev() {
                let (phi, eps) = stats[j];
                let matched = open.min(phi);
                if phi > matched {
                    hit = Some(j);
                }
                open = open - matched + eps;
            }
            hit
        }
        Dir::Raise => {
            let mut close = 0usize;
            let mut hit = None;
            for (j, &(phi, eps)) in stats.iter().enumerate() {
                let matched = close.min(eps);
                if eps > matched {
                    hit = Some(j);
                }
                close = close - matched + phi;
            }
            hit
        }
    }
}

pub fn factor_stats(p: &Path, i: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    p.factors.iter().map(|b| tableau_stats(b, i, n)).collect()
}

/// `(φ_i, ε_i)` of a path.
pub fn path_stats(p: &Path, i: usize, n: usize) -> Result<(usize, usize)> {
    let mut phi = 0usize;
    let mut eps = 0usize;
    // fold from the left: (b ⊗ b') with b the accumulated left part
    for (fp, fe) in factor_stats(p, i, n)?.into_iter().rev() {
        // ε(b⊗b') = max(0, ε(b)−φ(b')) + ε(b'), φ(b⊗b') = φ(b) + max(0, φ(b')−ε(b))
        let e2 = eps.saturating_sub(fp) + fe;
        let p2 = phi + fp.saturating_sub(eps);
        eps = e2;
        phi = p2;
    }
    Ok((phi, eps))
}

/// `e_i`/`f_i` on a path by the signature rule; `i = 0` uses ψ factorwise.
pub fn tensor_crystal_op(p: &Path, i: usize, dir: Dir, n: usize) -> Result<Option<Path>> {
    let stats = factor_stats(p, i, n)?;
    let Some(j) = acting_factor(&stats, dir) else { return Ok(None) };
    let b = crystal_op(&p.factors[j], i, dir, n)?
        .ok_or_else(|| Error::InternalInconsistency("signature rule chose an inert factor".into()))?;
    Ok(Some(p.with_factor(j, b)))
}

/// Every final subword has partition content.
pub fn is_lattice_word(w: &[Letter], n: usize) -> bool {
    let mut c = vec![0usize; n + 1];
    for &x in w.iter().rev() {
        c[x] += 1;
        if x > 1 && c[x] > c[x - 1] {
            return false;
        }
    }
    true
}

pub fn is_classically_restricted(p: &Path, n: usize) -> bool {
    let w = p.word();
    let lattice = is_lattice_word(&w, n);
    debug_assert_eq!(lattice, (1..n).all(|i| string_stats(&w, i).1 == 0));
    lattice
}

/// `ε_0(p) = ε_1(ψ(p))` with ψ applied factorwise.
pub fn epsilon0(p: &Path, n: usize) -> Result<usize> {
    let q = p.map_factors(|b| psi::psi(b, n))?;
    Ok(string_stats(&q.word(), 1).1)
}

pub fn is_level_restricted(p: &Path, n: usize, ell: usize) -> Result<bool> {
    Ok(is_classically_restricted(p, n) && epsilon0(p, n)? <= ell)
}

/// `σ`: `left ⊗ right ↦ right' ⊗ left'` with `right'` of the shape of `right`.
pub fn local_iso_pair(cache: &mut Cache, left: &Tableau, right: &Tableau) -> Result<(Tableau, Tableau)> {
    let (r2, r1) = (left.rect().ok_or(Error::NonRectangular)?, right.rect().ok_or(Error::NonRectangular)?);
    if r1 == r2 {
        return Ok((left.clone(), right.clone()));
    }
    let key = (left.clone(), right.clone());
    if let Some(v) = cache.iso.get(&key) {
        return Ok(v.clone());
    }
    let pair = Path::new(vec![right.clone(), left.clone()])?;
    let (p, q) = lr::rsk(&pair);
    let swapped = RectSeq::new(vec![r2, r1])?;
    let q2 = lr::unique_lr(cache, &p.shape(), r2, r1)?;
    let img = lr::rsk_inverse(&p, &lr::LrTableau::new_unchecked(q2, lr::Family::Lr, swapped))?;
    debug_assert_eq!(q.tab.shape(), p.shape());
    let out = (img.factors[1].clone(), img.factors[0].clone());
    cache.iso.insert(key, out.clone());
    Ok(out)
}

/// `σ_pos` on a path (1-based): swaps factors `pos` and `pos+1` counted from the right.
pub fn local_iso(p: &Path, pos: usize) -> Result<Path> {
    local_iso_with(&mut Cache::default(), p, pos)
}

pub fn local_iso_with(cache: &mut Cache, p: &Path, pos: usize) -> Result<Path> {
    if pos == 0 || pos >= p.len() {
        return Err(Error::InvalidInput("local isomorphism position out of range".into()));
    }
    let (nl, nr) = local_iso_pair(cache, &p.factors[pos], &p.factors[pos - 1])?;
    let mut factors = p.factors.clone();
    factors[pos - 1] = nr;
    factors[pos] = nl;
    Ok(Path { factors, shapes: p.shapes.swapped(pos) })
}

/// `H(b2 ⊗ b1) = d(Q(b2 ⊗ b1))`.
pub fn local_energy(b2: &Tableau, b1: &Tableau) -> Result<usize> {
    local_energy_with(&mut Cache::default(), b2, b1)
}

pub fn local_energy_with(cache: &mut Cache, b2: &Tableau, b1: &Tableau) -> Result<usize> {
    let key = (b2.clone(), b1.clone());
    if let Some(&h) = cache.h.get(&key) {
        return Ok(h);
    }
    let pair = Path::new(vec![b1.clone(), b2.clone()])?;
    let (_, q) = lr::rsk(&pair);
    let w = pair.shapes[0].width.max(pair.shapes[1].width);
    let h = lr::cells_right_of(&q.tab, w);
    cache.h.insert(key, h);
    Ok(h)
}

pub fn energy(p: &Path) -> Result<usize> {
    energy_with(&mut Cache::default(), p)
}

/// `E(b) = Σ_{i<j} H(b_j^{(i+1)} ⊗ b_i)`, transporting `b_j` rightwards by
/// local isomorphisms.
pub fn energy_with(cache: &mut Cache, p: &Path) -> Result<usize> {
    let l = p.len();
    let f = &p.factors;
    if p.shapes.all_equal() {
        let mut e = 0;
        for i in 1..l {
            e += (l - i) * local_energy_with(cache, &f[i], &f[i - 1])?;
        }
        return Ok(e);
    }
    let mut e = 0;
    for j in 1..l {
        let mut cur = f[j].clone();
        for i in (0..j).rev() {
            e += local_energy_with(cache, &cur, &f[i])?;
            if i > 0 {
                cur = local_iso_pair(cache, &cur, &f[i])?.1;
            }
        }
    }
    Ok(e)
}

fn factor_sets(rects: &RectSeq, n: usize) -> BTreeMap<Rect, Vec<Tableau>> {
    let mut m = BTreeMap::new();
    for r in rects.iter() {
        m.entry(*r).or_insert_with(|| tableaux_of_shape(&vec![r.width; r.height], n));
    }
    m
}

/// All paths in `P_R` with the given content.
pub fn paths_with_content(rects: &RectSeq, content: &[usize]) -> Vec<Path> {
    let n = content.len();
    let sets = factor_sets(rects, n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut c = vec![0usize; n];
    content_rec(rects, &sets, content, &mut c, &mut cur, &mut out);
    out
}

fn content_rec(
    rects: &RectSeq,
    sets: &BTreeMap<Rect, Vec<Tableau>>,
    target: &[usize],
    c: &mut Vec<usize>,
    cur: &mut Vec<Tableau>,
    out: &mut Vec<Path>,
) {
    let j = cur.len();
    if j == rects.len() {
        if c.as_slice() == target {
            out.push(Path::from_parts_unchecked(cur.clone(), rects.clone()));
        }
        return;
    }
    for b in &sets[&rects[j]] {
        let bc = b.content(target.len());
        if c.iter().zip(&bc).zip(target).all(|((x, y), t)| x + y <= *t) {
            for (x, y) in c.iter_mut().zip(&bc) {
                *x += y;
            }
            cur.push(b.clone());
            content_rec(rects, sets, target, c, cur, out);
            cur.pop();
            for (x, y) in c.iter_mut().zip(&bc) {
                *x -= y;
            }
        }
    }
}

/// Classically restricted paths of weight `λ`, built right to left with the
/// lattice condition checked on every suffix.
pub fn classically_restricted_paths(lam: &Partition, rects: &RectSeq) -> Vec<Path> {
    let n = lam.n();
    let sets = factor_sets(rects, n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut c = vec![0usize; n];
    lattice_rec(rects, &sets, lam, &mut c, &mut cur, &mut out);
    out
}

fn lattice_rec(
    rects: &RectSeq,
    sets: &BTreeMap<Rect, Vec<Tableau>>,
    lam: &[usize],
    c: &mut Vec<usize>,
    cur: &mut Vec<Tableau>,
    out: &mut Vec<Path>,
) {
    let j = cur.len();
    if j == rects.len() {
        if c.as_slice() == lam {
            out.push(Path::from_parts_unchecked(cur.clone(), rects.clone()));
        }
        return;
    }
    'next: for b in &sets[&rects[j]] {
        let w = b.reading_word();
        let mut added = 0;
        let mut ok = true;
        for &x in w.iter().rev() {
            c[x - 1] += 1;
            added += 1;
            if c[x - 1] > lam[x - 1] || (x > 1 && c[x - 1] > c[x - 2]) {
                ok = false;
                break;
            }
        }
        if ok {
            cur.push(b.clone());
            lattice_rec(rects, sets, lam, c, cur, out);
            cur.pop();
        }
        for &x in w.iter().rev().take(added) {
            c[x - 1] -= 1;
        }
        if !ok {
            continue 'next;
        }
    }
}

/// `Σ q^{E(b)}` over classically (or level-`ℓ`) restricted paths of weight `λ`.
pub fn kostka_via_paths(lam: &Partition, rects: &RectSeq, ell: Option<usize>) -> Result<QPoly> {
    check_sizes(lam, rects)?;
    let n = lam.n();
    let mut cache = Cache::default();
    let mut k = QPoly::zero();
    for p in classically_restricted_paths(lam, rects) {
        if let Some(l) = ell {
            if epsilon0(&p, n)? > l {
                continue;
            }
        }
        k.add_term(energy_with(&mut cache, &p)? as u32, 1);
    }
    Ok(k)
}
