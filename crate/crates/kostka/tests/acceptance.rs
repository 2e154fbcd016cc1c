//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kostka::grid::{self, GridBounds, Method};
use kostka_core::branching::{
    self, branching_fermionic, branching_series, branching_via_paths, check_theorem_iso, compare_aligned,
    ground_energy, ground_energy_direct, ground_path, min_element, restricted_elements, yamanouchi_columns,
    BranchingSpec, ClWeight, GroundState, Side,
};
use kostka_core::kss::{psi_bar, psi_bar_inv};
use kostka_core::lr::{rsk, Cache, Family, LrTableau};
use kostka_core::path::{energy_with, is_classically_restricted, local_iso_pair, Path};
use kostka_core::psi::psi_pow;
use kostka_core::rc::{format_strings, Configuration};
use kostka_core::tableau::tableaux_of_shape;
use kostka_core::{Partition, QPoly, Rect, RectSeq, Tableau};
use rayon::prelude::*;

const LIMIT_EXAMPLE: Duration = Duration::from_secs(5);
const LIMIT_ORACLE: Duration = Duration::from_secs(600);
const LIMIT_BRANCHING: Duration = Duration::from_secs(120);
const BRANCHING_TRUNC: u32 = 5;
const BRANCHING_M_MAX: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn t(rows: &[&[usize]]) -> Tableau {
    Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn rects(v: &[(usize, usize)]) -> RectSeq {
    RectSeq::new(v.iter().map(|&(h, w)| Rect::new(h, w)).collect()).unwrap()
}

fn w(z: &[usize]) -> ClWeight {
    ClWeight::new(z.to_vec()).unwrap()
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    check(took < limit, format!("{detail}; took {took:.2?}, limit {limit:?}"))?;
    Ok(detail)
}

fn poly(coeffs: &[(u32, i64)]) -> QPoly {
    let mut dense = vec![0i64; coeffs.iter().map(|c| c.0 as usize + 1).max().unwrap_or(0)];
    for &(d, c) in coeffs {
        dense[d as usize] = c;
    }
    QPoly::from_dense(&dense)
}

fn c1_example() -> Outcome {
    timed(LIMIT_EXAMPLE, || {
        let lam = part(&[3, 2, 1]);
        let mu = rects(&[(1, 2), (1, 1), (1, 1), (1, 1), (1, 1)]);
        let restricted = poly(&[(2, 1), (3, 1), (4, 1)]);
        let full = poly(&[(2, 1), (3, 2), (4, 2), (5, 2), (6, 1)]);
        for m in [Method::Paths, Method::Rc, Method::Fermionic, Method::Mn, Method::Weyl] {
            let got = grid::evaluate(m, &lam, &mu, Some(2)).map_err(|e| format!("{m}: {e}"))?;
            check(got == restricted, format!("level 2 via {m}: {got}"))?;
        }
        for m in [Method::Paths, Method::Lr, Method::Rc, Method::Fermionic] {
            let got = grid::evaluate(m, &lam, &mu, None).map_err(|e| format!("{m}: {e}"))?;
            check(got == full, format!("unrestricted via {m}: {got}"))?;
        }
        Ok(format!("K^2 = {restricted} by 5 routes, K = {full} by 4 routes"))
    })
}

fn c2_config() -> Outcome {
    let c = Configuration::new(part(&[3, 2, 2, 1]), rects(&[(1, 2), (2, 2), (2, 1)]), vec![vec![2], vec![2, 1], vec![1]])
        .map_err(|e| e.to_string())?;
    let ch = c.charges();
    let got = (ch.cc, ch.norm, ch.abs_p, ch.c);
    check(got == (3, 5, 1, 1), format!("(cc, norm, |P|, c) = {got:?}"))?;
    Ok("cc=3 norm=5 |P|=1 c=1".into())
}

fn c3_bijection() -> Outcome {
    let mu = RectSeq::rows(&[2, 2, 2, 2, 1]);
    let tab = LrTableau::new(t(&[&[1, 2, 6], &[3, 4, 8], &[5, 9], &[7]]), Family::Rlr, mu).map_err(|e| e.to_string())?;
    let rc = psi_bar(&tab, 4).map_err(|e| e.to_string())?;
    let want = "2:0,2:0,2:0||2:1,1:0||1:0";
    let got = format_strings(rc.all_strings());
    check(got == want, format!("image {got}"))?;
    let back = psi_bar_inv(&rc).map_err(|e| e.to_string())?;
    check(back.tab == tab.tab, format!("inverse gave {:?}", back.tab.rows()))?;
    Ok(format!("T -> {want} -> T"))
}

fn all_paths(rs: &RectSeq, n: usize) -> Vec<Path> {
    let mut out = vec![Vec::new()];
    for r in rs.iter() {
        let set = tableaux_of_shape(&vec![r.width; r.height], n);
        out = out
            .into_iter()
            .flat_map(|p: Vec<Tableau>| {
                set.iter().map(move |b| {
                    let mut q = p.clone();
                    q.push(b.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(|f| Path::new(f).unwrap()).collect()
}

fn c4_rsk() -> Outcome {
    let p = Path::new(vec![t(&[&[1]]), t(&[&[1, 1], &[2, 2]])]).map_err(|e| e.to_string())?;
    let (pt, q) = rsk(&p);
    check(pt == t(&[&[1, 1, 1], &[2, 2]]), format!("P = {:?}", pt.rows()))?;
    check(q.tab == t(&[&[1, 2, 2], &[3, 3]]), format!("Q = {:?}", q.tab.rows()))?;
    let bounds = GridBounds::default();
    let seqs = bounds.rect_seqs();
    let (paths, bad) = bounds
        .ranks
        .par_iter()
        .flat_map(|&n| seqs.par_iter().filter(move |rs| rs.max_height() <= n).map(move |rs| (n, rs)))
        .map(|(n, rs)| {
            let mut bad = 0usize;
            let ps = all_paths(rs, n);
            for p in &ps {
                if rsk(p).0.is_yamanouchi() != is_classically_restricted(p, n) {
                    bad += 1;
                }
            }
            (ps.len(), bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    check(bad == 0, format!("{bad} of {paths} paths violate P Yamanouchi <=> restricted"))?;
    Ok(format!("(P,Q) exact; Yamanouchi criterion on {paths} paths"))
}

fn c5_iso() -> Outcome {
    let (n, k) = (5, 2);
    let lam_p = w(&[1, 1, 0, 1, 1]);
    let lam = w(&[1, 1, 1, 0, 1]);
    let b = t(&[&[1, 4], &[2, 5]]);
    let x = min_element(&lam, k, 4, Side::Eps).map_err(|e| e.to_string())?;
    let y = min_element(&lam_p, k, 4, Side::Eps).map_err(|e| e.to_string())?;
    let (left, right) = local_iso_pair(&mut Cache::default(), &x, &b).map_err(|e| e.to_string())?;
    let want = psi_pow(&b, n, k as i64).map_err(|e| e.to_string())?;
    check(left == want && right == y, "R(x ⊗ b) != psi^k(b) ⊗ y")?;
    check(left == t(&[&[1, 3], &[2, 4]]), format!("psi^2(b) = {:?}", left.rows()))?;
    let mut count = 0;
    for ell in 1..=2 {
        for ellp in 1..=ell {
            for lp in ClWeight::all_of_level(ell, 2) {
                for l in ClWeight::all_of_level(ell, 2) {
                    for h in restricted_elements(&lp, Rect::new(1, ellp), &l).map_err(|e| e.to_string())? {
                        check(check_theorem_iso(&l, &lp, 1, &h).map_err(|e| e.to_string())?, format!("{l} {lp} {h:?}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("displayed instance exact; {count} cases for n=2, l <= 2"))
}

fn c6_min() -> Outcome {
    let lam = w(&[2, 1, 1, 0, 1, 0]);
    let b = min_element(&lam, 3, 5, Side::Phi).map_err(|e| e.to_string())?;
    let b2 = min_element(&lam, 3, 5, Side::Eps).map_err(|e| e.to_string())?;
    check(b == t(&[&[1, 1, 2, 4, 4], &[2, 3, 5, 5, 5], &[4, 6, 6, 6, 6]]), format!("b = {:?}", b.rows()))?;
    check(b2 == t(&[&[1, 1, 1, 2, 3], &[2, 2, 3, 4, 5], &[3, 3, 4, 5, 6]]), format!("b' = {:?}", b2.rows()))?;
    Ok("b and b' for 2L0+L1+L2+L4".into())
}

fn c7_oracle() -> Outcome {
    timed(LIMIT_ORACLE, || {
        let rep = grid::oracle_grid(&GridBounds::default());
        let summary = format!(
            "{} instances, {} evaluations, {} mismatches, {} errors",
            rep.instances,
            rep.evaluations,
            rep.mismatches.len(),
            rep.errors.len()
        );
        if let Some(m) = rep.mismatches.first() {
            return Err(format!("{summary}; first: {} ell={:?} {:?}", m.instance, m.ell, m.values));
        }
        if let Some(e) = rep.errors.first() {
            return Err(format!("{summary}; first: {e}"));
        }
        Ok(summary)
    })
}

fn property(rep: grid::PropertyReport, what: &str) -> Outcome {
    let summary = format!("{} instances, {} {what}, {} failures", rep.instances, rep.items, rep.failures.len());
    match rep.failures.first() {
        Some(f) => Err(format!("{summary}; first: {f}")),
        None => Ok(summary),
    }
}

fn c8_bijection_grid() -> Outcome {
    property(grid::bijection_grid(&GridBounds::default()), "tableaux")
}

fn c9_theta_grid() -> Outcome {
    property(grid::theta_grid(&GridBounds::default()), "rigged configurations")
}

fn c10_branching() -> Outcome {
    timed(LIMIT_BRANCHING, || {
        let spec =
            |z: &[usize], r, s| BranchingSpec { lam: w(z), r, s, ellprime: 1, elldoubleprime: 1, k: 1 };
        let sp = spec(&[2, 0], 1, 1);
        let lim = branching_series(&sp, BRANCHING_TRUNC, BRANCHING_M_MAX).map_err(|e| e.to_string())?;
        let ferm = branching_fermionic(&sp.lam, 1, 1, 1, BRANCHING_TRUNC).map_err(|e| e.to_string())?;
        let cmp = compare_aligned(&lim.series, &ferm, BRANCHING_TRUNC);
        check(cmp.coefficients_agree, format!("{}: {} vs {}", branching::describe(&sp), cmp.left, cmp.right))?;
        check(lim.m_used <= BRANCHING_M_MAX, format!("stabilized at M = {}", lim.m_used))?;
        let mut detail = format!(
            "{}: limit {} (M = {}{}), fermionic {}",
            branching::describe(&sp),
            lim.series,
            lim.m_used,
            if lim.degenerate { ", weight class forces zero" } else { "" },
            ferm
        );
        // Nondegenerate neighbours, so the two pipelines are compared on nonzero series.
        for (z, r, s) in [(&[1usize, 1][..], 1, 1), (&[2, 0][..], 0, 0)] {
            let sp = spec(z, r, s);
            let lim = branching_series(&sp, BRANCHING_TRUNC, 8).map_err(|e| e.to_string())?;
            let ferm = branching_fermionic(&sp.lam, r, s, 1, BRANCHING_TRUNC).map_err(|e| e.to_string())?;
            let cmp = compare_aligned(&lim.series, &ferm, BRANCHING_TRUNC);
            check(
                cmp.coefficients_agree && !ferm.is_zero(),
                format!("{}: {} vs {}", branching::describe(&sp), cmp.left, cmp.right),
            )?;
            for m in 1..=3 {
                let k = branching::branching_approximant(&sp, m).map_err(|e| e.to_string())?.unwrap_or_default();
                let by_paths = branching_via_paths(&sp.lam, &sp.lam_prime(), &ClWeight::vacuum(1, 2), 1, 2 * m)
                    .map_err(|e| e.to_string())?;
                check(k == by_paths, format!("{} M={m}: {k} vs {by_paths}", branching::describe(&sp)))?;
            }
            detail.push_str(&format!("; {} agrees: {} (M = {})", branching::describe(&sp), ferm, lim.m_used));
        }
        Ok(detail)
    })
}

fn c11_ground() -> Outcome {
    let mut cases = 0;
    for &(n, k, ellp, m) in &[(2, 1, 1, 1), (2, 1, 1, 2), (3, 2, 2, 1)] {
        for lam_p in ClWeight::all_of_level(ellp, n) {
            let y = yamanouchi_columns(&lam_p).map_err(|e| e.to_string())?;
            let closed = ground_energy(&y, k, m, n, ellp).map_err(|e| e.to_string())?;
            let direct = ground_energy_direct(&y, k, m, n, ellp).map_err(|e| e.to_string())?;
            let full = ground_path(&y, k, m, n, ellp).map_err(|e| e.to_string())?;
            let recomputed = energy_with(&mut Cache::default(), &full).map_err(|e| e.to_string())? as i64;
            check(
                closed == direct && direct == recomputed,
                format!("(n,k,l',M)=({n},{k},{ellp},{m}) {lam_p}: {closed} vs {direct} vs {recomputed}"),
            )?;
            cases += 1;
        }
    }
    let gs = GroundState::new(&ClWeight::vacuum(3, 5), 2).map_err(|e| e.to_string())?;
    check(gs.period.len() == 5, format!("ground-state period {}", gs.period.len()))?;
    Ok(format!("{cases} weights across 3 tuples"))
}

fn c12_skew() -> Outcome {
    let bounds = GridBounds { max_size: 5, ..GridBounds::default() };
    let s = grid::skew_grid(&bounds);
    for d in s.discrepancies.iter().chain(&s.errors) {
        println!("    surfaced: {d}");
    }
    Ok(format!(
        "completed: {} cases, {} tableaux, {} discrepancies, {} errors",
        s.cases,
        s.tableaux,
        s.discrepancies.len(),
        s.errors.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("level-2 example, five routes", c1_example),
        ("example configuration charges", c2_config),
        ("bijection example and inverse", c3_bijection),
        ("RSK example and Yamanouchi criterion", c4_rsk),
        ("local isomorphism theorem", c5_iso),
        ("minimal elements b, b'", c6_min),
        ("oracle-equivalence grid", c7_oracle),
        ("bijection properties grid", c8_bijection_grid),
        ("theta involution grid", c9_theta_grid),
        ("branching limit vs fermionic", c10_branching),
        ("ground-state energy", c11_ground),
        ("skew conjecture suite", c12_skew),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        match res {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} [{took:.2?}]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {d} [{took:.2?}]", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
