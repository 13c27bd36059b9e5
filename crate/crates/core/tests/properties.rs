mod common;

use common::*;
use condorcet_committees::local::{check_full_local_with, level_quota};
use condorcet_committees::majority::{condensation_chain, GraphSource};
use condorcet_committees::*;
use num_rational::Ratio;
use proptest::prelude::*;

fn members_of(found: &[Committee]) -> Vec<Vec<usize>> {
    found.iter().map(|c| c.members().to_vec()).collect()
}

/// Elections whose voters draw from a small pool of rankings, so structured
/// profiles turn up often.
fn arb_clustered(max_m: usize, max_n: usize) -> impl Strategy<Value = Election> {
    (1..=max_m, 1..=max_n, 1usize..=3).prop_flat_map(|(m, n, pool)| {
        let ranking = Just((0..m).collect::<Vec<_>>()).prop_shuffle();
        (
            proptest::collection::vec(ranking, pool),
            proptest::collection::vec(0..pool, n),
        )
            .prop_map(move |(pool, picks)| {
                let labels = (0..m).map(|i| format!("c{i}")).collect();
                let rankings = picks.into_iter().map(|i| pool[i].clone()).collect();
                Election::from_indices(labels, rankings).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn gehrlein_checks_match_definition(e in arb_election(1..=6, 1..=9)) {
        let m = e.num_candidates();
        for k in 1..=m {
            for s in subsets(m, k) {
                let v = check_gehrlein(&e, &committee(&e, &s));
                prop_assert_eq!(v.weak, gehrlein(&e, &s, false));
                prop_assert_eq!(v.strong, gehrlein(&e, &s, true));
                if let Some(w) = v.weak_witness {
                    prop_assert!(2 * pair_count(&e, w.outsider, w.member) > e.num_voters());
                }
            }
        }
    }

    #[test]
    fn gehrlein_searches_match_brute_force(e in arb_election(1..=7, 1..=10)) {
        let m = e.num_candidates();
        for k in 1..=m {
            let weak: Vec<Vec<usize>> = subsets(m, k).into_iter().filter(|s| gehrlein(&e, s, false)).collect();
            let strong: Vec<Vec<usize>> = subsets(m, k).into_iter().filter(|s| gehrlein(&e, s, true)).collect();
            prop_assert_eq!(members_of(&find_weak_committees(&e, k, &SearchOptions::default()).unwrap()), weak);
            prop_assert!(strong.len() <= 1);
            let found = find_strong_committee(&e, k).unwrap().map(|c| c.members().to_vec());
            prop_assert_eq!(found, strong.into_iter().next());
        }
    }

    #[test]
    fn strong_committees_are_chain_prefixes(e in arb_election(1..=7, 1..=10)) {
        let graphs = MajorityGraphs::from_election(&e);
        let chain = condensation_chain(&graphs, GraphSource::Weak);
        let mut prefix = Vec::new();
        for block in &chain.blocks {
            prefix.extend_from_slice(block);
            prefix.sort_unstable();
            let found = find_strong_committee(&e, prefix.len()).unwrap().unwrap();
            prop_assert_eq!(found.members(), prefix.as_slice());
        }
        prop_assert!(chain.is_total);
    }

    #[test]
    fn local_checks_match_definition(e in arb_election(1..=6, 1..=10)) {
        let (m, n) = (e.num_candidates(), e.num_voters());
        for k in 1..=m {
            for spec in [QuotaSpec::Droop, QuotaSpec::Hare, QuotaSpec::HagenbachBischoff] {
                let q = quota_value(n, k, spec).unwrap();
                let want: Vec<Vec<usize>> = subsets(m, k).into_iter().filter(|s| locally_stable(&e, s, q)).collect();
                for s in subsets(m, k) {
                    let c = committee(&e, &s);
                    let r = check_local(&e, &c, spec).unwrap();
                    prop_assert_eq!(r.stable, locally_stable(&e, &s, q));
                    prop_assert!(r.revalidate(&e, &c));
                }
                for opts in [SearchOptions::sequential(), SearchOptions::default()] {
                    let got = find_locally_stable(&e, k, spec, &opts).unwrap();
                    prop_assert_eq!(members_of(&got), want.clone());
                }
            }
        }
    }

    #[test]
    fn full_local_matches_definition(e in arb_election(1..=5, 1..=8)) {
        let m = e.num_candidates();
        let opts = SearchOptions::default();
        for k in 1..=m {
            let mut want = Vec::new();
            for s in subsets(m, k) {
                let c = committee(&e, &s);
                let full = check_full_local(&e, &c, &opts).unwrap();
                let skipped = check_full_local_with(&e, &c, &opts, true).unwrap();
                let oracle = fully_locally_stable(&e, &s);
                prop_assert_eq!(full.stable, oracle);
                prop_assert_eq!(&skipped.violations, &full.violations);
                prop_assert!(full.revalidate(&e, &c));
                for &(l, q) in &full.quotas {
                    prop_assert_eq!(q, level_quota(e.num_voters(), k, l));
                }
                if oracle {
                    want.push(s);
                }
            }
            let seq = find_fully_locally_stable(&e, k, &SearchOptions::sequential()).unwrap();
            let par = find_fully_locally_stable(&e, k, &opts).unwrap();
            prop_assert_eq!(members_of(&seq), want);
            prop_assert_eq!(seq, par);
        }
    }

    #[test]
    fn stability_implications(e in arb_election(1..=6, 1..=10)) {
        let m = e.num_candidates();
        let opts = SearchOptions::default();
        for k in 1..=m {
            for s in subsets(m, k) {
                let c = committee(&e, &s);
                let droop = check_local(&e, &c, QuotaSpec::Droop).unwrap().stable;
                let hare = check_local(&e, &c, QuotaSpec::Hare).unwrap().stable;
                let solid = check_solid_coalitions(&e, &c).unwrap().stable;
                prop_assert_eq!(solid, solid_coalitions(&e, &s));
                prop_assert!(!droop || hare);
                prop_assert!(!hare || solid);
                let dummett_ok = check_dummett(&e, &c, k).unwrap().stable;
                prop_assert_eq!(dummett_ok, dummett(&e, &s, k));
                if m <= 5 && check_full_local(&e, &c, &opts).unwrap().stable {
                    prop_assert!(droop);
                    prop_assert!(dummett_ok);
                }
            }
        }
    }

    #[test]
    fn theta_matches_exact_quota(e in arb_election(2..=6, 1..=10), num in 0i64..20) {
        let m = e.num_candidates();
        let n = e.num_voters() as i64;
        let theta = Ratio::new(num, 20);
        for k in 1..m {
            for s in subsets(m, k) {
                let c = committee(&e, &s);
                let t = theta_threshold(&e, &c).unwrap();
                let winning = Ratio::new(num as u64, 20) < t.value;
                let quota = (Ratio::from_integer(1) - theta) * Ratio::from_integer(n);
                let local = check_local(&e, &c, QuotaSpec::Exact(quota)).unwrap().stable;
                prop_assert_eq!(winning, local);
            }
        }
    }

    #[test]
    fn singletons_and_condorcet_winners(e in arb_election(1..=7, 1..=10)) {
        let winners = condorcet_winners(&MajorityGraphs::from_election(&e));
        for c in 0..e.num_candidates() {
            let s = committee(&e, &[c]);
            let droop = check_local(&e, &s, QuotaSpec::Droop).unwrap().stable;
            let hb = check_local(&e, &s, QuotaSpec::HagenbachBischoff).unwrap().stable;
            // Droop forbids strict defeats only; Hagenbach-Bischoff also ties
            prop_assert_eq!(droop, winners.weak.contains(&c));
            prop_assert_eq!(hb, winners.strong == Some(c));
        }
    }

    #[test]
    fn strong_ned_is_consistent(e in arb_election(1..=7, 1..=10)) {
        let m = e.num_candidates();
        for k in 1..m {
            let small = strong_ned(&e, k).unwrap();
            prop_assert!(small.is_subset_of(&strong_ned(&e, k + 1).unwrap()));
        }
        for k in 1..=m {
            if let Some(s) = find_strong_committee(&e, k).unwrap() {
                prop_assert_eq!(strong_ned(&e, k).unwrap(), s);
            }
        }
    }

    #[test]
    fn odd_electorates_have_at_most_the_strong_committee(e in arb_election(1..=7, 1..=10)) {
        let e = if e.num_voters() % 2 == 0 {
            let mut r = e.rankings().to_vec();
            r.push(r[0].clone());
            Election::from_indices(e.candidates().to_vec(), r).unwrap()
        } else {
            e
        };
        for k in 1..=e.num_candidates() {
            let weak = find_weak_committees(&e, k, &SearchOptions::default()).unwrap();
            let strong: Vec<Committee> = find_strong_committee(&e, k).unwrap().into_iter().collect();
            prop_assert_eq!(weak, strong);
        }
    }

    #[test]
    fn recognisers_are_sound_and_complete(e in arb_clustered(5, 6)) {
        let m = e.num_candidates();
        let n = e.num_voters();
        let sc = check_single_crossing(&e, true);
        let identity: Vec<usize> = (0..n).collect();
        prop_assert_eq!(sc.holds_as_given, single_crossing_in_order(&e, &identity));
        let sc_exists = permutations(&identity).iter().any(|o| single_crossing_in_order(&e, o));
        prop_assert_eq!(sc.witness_order.is_some(), sc_exists);
        if let Some(order) = &sc.witness_order {
            prop_assert!(single_crossing_in_order(&e, order));
        }

        let all: Vec<usize> = (0..m).collect();
        let sp_exists = permutations(&all).iter().any(|a| single_peaked_on(&e, a));
        let axis = check_single_peaked(&e, None);
        prop_assert_eq!(axis.is_some(), sp_exists);
        if let Some(axis) = &axis {
            prop_assert!(single_peaked_on(&e, axis));
        }

        for k in 1..=m {
            let found = detect_party_list(&e, k);
            prop_assert_eq!(found.is_some(), party_list_exists(&e, k));
        }
    }

    #[test]
    fn mcgarvey_round_trip(m in 1usize..=8, bits in proptest::collection::vec(0u8..3, 28), seed in any::<u64>()) {
        let _ = seed;
        let mut edges = Vec::new();
        let mut i = 0;
        for a in 0..m {
            for b in a + 1..m {
                match bits[i] {
                    1 => edges.push((a, b)),
                    2 => edges.push((b, a)),
                    _ => {}
                }
                i += 1;
            }
        }
        let g = TargetDigraph::new(m, edges.clone()).unwrap();
        let e = mcgarvey_election(&g);
        let t = tally_pairwise(&e);
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let margin = t.get(a, b) as i64 - t.get(b, a) as i64;
                let want = if edges.contains(&(a, b)) { 2 } else if edges.contains(&(b, a)) { -2 } else { 0 };
                prop_assert_eq!(margin, want);
            }
        }
    }

    #[test]
    fn restricted_domain_committees(seed in any::<u64>(), m in 2usize..=7, n in 1usize..=15) {
        let sc = random_election(Model::SingleCrossing, m, n, seed).unwrap();
        let sp = random_election(Model::SinglePeaked, m, n, seed).unwrap();
        let axis = check_single_peaked(&sp, None).unwrap();
        for k in 1..=m {
            let q = quota_value(n, k, QuotaSpec::Droop).unwrap();
            if k * q <= n {
                let s = sc_uniform_committee(&sc, k, None).unwrap();
                prop_assert!(check_local(&sc, &s, QuotaSpec::Droop).unwrap().stable);
                let s = sp_uniform_committee(&sp, k, &axis, None).unwrap();
                prop_assert!(check_local(&sp, &s, QuotaSpec::Droop).unwrap().stable);
            } else {
                let is_spacing_error = matches!(sc_uniform_committee(&sc, k, None), Err(Error::SpacingOutOfRange { .. }));
                prop_assert!(is_spacing_error);
            }
            if n % 2 == 1 {
                for e in [&sc, &sp] {
                    let c = centrist_committee(e, k).unwrap().expect("odd electorate has a majority order");
                    prop_assert!(check_gehrlein(e, &c).strong);
                }
            }
        }
    }

    #[test]
    fn party_list_committees(seed in any::<u64>(), k in 1usize..=3, extra in 0usize..=4, n in 1usize..=12) {
        let m = k + extra + k;
        let e = random_election(Model::PartyList { k }, m, n, seed).unwrap();
        let list = detect_party_list(&e, k).unwrap();
        let proportional = party_proportional_committee(&e, k).unwrap();
        prop_assert_eq!(proportional.len(), k);
        let found = find_fully_locally_stable(&e, k, &SearchOptions::default()).unwrap();
        for s in &found {
            for p in &list.parties {
                let seats = k * p.voters.len() / n;
                prop_assert!(p.candidates[..seats].iter().all(|&c| s.contains(c)));
            }
        }
    }
}
