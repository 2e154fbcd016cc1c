//! Cross-module invariants on randomly drawn small instances.

use kostka_core::branching::{eps_weight, min_element, phi_weight, sigma_map, ClWeight, Side};
use kostka_core::fermionic::fermionic_level_kostka;
use kostka_core::kss::{psi_bar, psi_bar_inv};
use kostka_core::lr::{self, enumerate_lr, kostka_via_lr, rsk, rsk_inverse, ChargeMethod, Family, Relabel};
use kostka_core::partition::partitions_with_rank;
use kostka_core::path::{energy, kostka_via_paths, local_iso, Path};
use kostka_core::rc::{check_level, kostka_via_rc};
use kostka_core::tableau::tableaux_of_shape;
use kostka_core::{Partition, Rect, RectSeq, Tableau};
use proptest::prelude::*;

const SHAPES: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn instance() -> impl Strategy<Value = (Partition, RectSeq)> {
    (2usize..=3, prop::collection::vec(0usize..4, 1..=3), any::<prop::sample::Index>()).prop_filter_map(
        "no partition of that size",
        |(n, picks, ix)| {
            let rs = RectSeq::new(picks.iter().map(|&i| Rect::new(SHAPES[i].0, SHAPES[i].1)).collect()).ok()?;
            let lams = partitions_with_rank(rs.size(), n);
            if lams.is_empty() {
                return None;
            }
            Some((lams[ix.index(lams.len())].clone(), rs))
        },
    )
}

fn path(n: usize) -> impl Strategy<Value = Path> {
    (prop::collection::vec((0usize..4, any::<prop::sample::Index>()), 1..=4)).prop_map(move |fs| {
        let factors: Vec<Tableau> = fs
            .into_iter()
            .map(|(i, ix)| {
                let (h, w) = SHAPES[i];
                let h = h.min(n);
                let set = tableaux_of_shape(&vec![w; h], n);
                set[ix.index(set.len())].clone()
            })
            .collect();
        Path::new(factors).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree((lam, rs) in instance()) {
        let k = kostka_via_paths(&lam, &rs, None).unwrap();
        prop_assert_eq!(&kostka_via_rc(&lam, &rs, None).unwrap(), &k);
        prop_assert_eq!(&kostka_via_lr(&lam, &rs, None, ChargeMethod::ViaAverage).unwrap(), &k);
        for ell in 1..=3 {
            if check_level(&lam, &rs, ell).is_err() {
                continue;
            }
            let kl = kostka_via_paths(&lam, &rs, Some(ell)).unwrap();
            prop_assert_eq!(&kostka_via_rc(&lam, &rs, Some(ell)).unwrap(), &kl);
            prop_assert_eq!(&fermionic_level_kostka(&lam, &rs, ell).unwrap(), &kl);
        }
    }

    #[test]
    fn bijection_roundtrip_and_charge((lam, rs) in instance()) {
        for q in enumerate_lr(lam.parts(), &rs, Family::Lr).unwrap() {
            let rc = psi_bar(&q, lam.n()).unwrap();
            prop_assert_eq!(psi_bar_inv(&rc).unwrap(), lr::relabel(&q, Relabel::Std).unwrap());
            prop_assert_eq!(rc.charge() as usize, lr::charge_via_average(&q).unwrap());
        }
    }

    #[test]
    fn rsk_inverts(p in path(3)) {
        let (pt, q) = rsk(&p);
        prop_assert!(q.is_member());
        prop_assert_eq!(rsk_inverse(&pt, &q).unwrap(), p);
    }

    #[test]
    fn energy_invariant_under_local_isomorphism(p in path(3), pos in any::<prop::sample::Index>()) {
        prop_assume!(p.len() >= 2);
        let j = 1 + pos.index(p.len() - 1);
        prop_assert_eq!(energy(&local_iso(&p, j).unwrap()).unwrap(), energy(&p).unwrap());
    }

    #[test]
    fn sigma_shifts_weights(n in 2usize..=4, ell in 1usize..=2, ix in any::<prop::sample::Index>()) {
        let weights = ClWeight::all_of_level(ell, n);
        let lam = &weights[ix.index(weights.len())];
        for k in 1..n {
            let b = min_element(lam, k, ell, Side::Phi).unwrap();
            prop_assert_eq!(&phi_weight(&b, n).unwrap(), lam);
            prop_assert_eq!(phi_weight(&sigma_map(&b, n).unwrap(), n).unwrap(), eps_weight(&b, n).unwrap());
        }
    }
}
