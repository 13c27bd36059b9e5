//! Weak and strong Gehrlein stability: verification, search, the centrist
//! committee and the strong-NED rule.

use std::cmp::Reverse;

use crate::election::{Candidate, Committee, Election};
use crate::error::{Error, Result};
use crate::exec::SearchOptions;
use crate::majority::{
    condensation_chain, majority_order, tally_pairwise, GraphSource, MajorityGraphs, PairwiseTally,
};

/// A non-member `outsider` that is not beaten by committee member `member`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub outsider: Candidate,
    pub member: Candidate,
    /// Voters preferring the outsider to the member.
    pub outsider_support: u32,
    /// Voters preferring the member to the outsider.
    pub member_support: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GehrleinVerdict {
    pub weak: bool,
    pub strong: bool,
    /// Smallest `(outsider, member)` pair where the outsider wins.
    pub weak_witness: Option<PairWitness>,
    /// Smallest `(outsider, member)` pair where the outsider wins or ties.
    pub strong_witness: Option<PairWitness>,
}

pub(crate) fn check_k(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange {
            what: "committee size",
            index: k,
            limit: m,
        });
    }
    Ok(())
}

pub fn check_gehrlein(election: &Election, committee: &Committee) -> GehrleinVerdict {
    check_gehrlein_tally(&tally_pairwise(election), committee)
}

pub fn check_gehrlein_tally(tally: &PairwiseTally, committee: &Committee) -> GehrleinVerdict {
    let n = tally.num_voters();
    let mut weak_witness = None;
    let mut strong_witness = None;
    'scan: for d in committee.complement(tally.num_candidates()) {
        for &c in committee.members() {
            let w = PairWitness {
                outsider: d,
                member: c,
                outsider_support: tally.get(d, c),
                member_support: tally.get(c, d),
            };
            let twice = 2 * w.outsider_support as usize;
            if twice >= n && strong_witness.is_none() {
                strong_witness = Some(w);
            }
            if twice > n {
                weak_witness = Some(w);
                break 'scan;
            }
        }
    }
    GehrleinVerdict {
        weak: weak_witness.is_none(),
        strong: strong_witness.is_none(),
        weak_witness,
        strong_witness,
    }
}

/// The unique strongly Gehrlein-stable committee of size `k`, if any: the
/// prefix of the weak-graph condensation chain holding exactly `k`
/// candidates.
pub fn find_strong_committee(election: &Election, k: usize) -> Result<Option<Committee>> {
    check_k(k, election.num_candidates())?;
    Ok(strong_committee_from_graphs(
        &MajorityGraphs::from_election(election),
        k,
    ))
}

pub(crate) fn strong_committee_from_graphs(graphs: &MajorityGraphs, k: usize) -> Option<Committee> {
    let chain = condensation_chain(graphs, GraphSource::Weak);
    let mut members = Vec::new();
    for block in &chain.blocks {
        members.extend_from_slice(block);
        if members.len() >= k {
            break;
        }
    }
    (members.len() == k).then(|| {
        members.sort_unstable();
        Committee::from_sorted(members)
    })
}

/// Every weakly Gehrlein-stable committee of size `k`, sorted.
///
/// Such a committee has no incoming strict majority edge, so it is a union of
/// strict-graph components closed under predecessors. The search walks these
/// order ideals with a size bound instead of scanning all `k`-subsets.
pub fn find_weak_committees(
    election: &Election,
    k: usize,
    opts: &SearchOptions,
) -> Result<Vec<Committee>> {
    let m = election.num_candidates();
    check_k(k, m)?;
    let graphs = MajorityGraphs::from_election(election);
    let chain = condensation_chain(&graphs, GraphSource::Strict);
    let preds = chain.block_predecessors(&graphs);
    let sizes: Vec<usize> = chain.blocks.iter().map(Vec::len).collect();
    let mut suffix = vec![0; sizes.len() + 1];
    for i in (0..sizes.len()).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }

    struct Walk<'a> {
        sizes: &'a [usize],
        preds: &'a [Vec<usize>],
        suffix: &'a [usize],
        k: usize,
        budget: u64,
        visited: u64,
        chosen: Vec<bool>,
        found: Vec<Vec<usize>>,
    }

    impl Walk<'_> {
        fn go(&mut self, block: usize, size: usize) -> bool {
            self.visited += 1;
            if self.visited > self.budget {
                return false;
            }
            if size == self.k {
                let picked = (0..block).filter(|&b| self.chosen[b]).collect();
                self.found.push(picked);
                return true;
            }
            if block == self.sizes.len() || size + self.suffix[block] < self.k {
                return true;
            }
            let closed = self.preds[block].iter().all(|&p| self.chosen[p]);
            if closed && size + self.sizes[block] <= self.k {
                self.chosen[block] = true;
                let ok = self.go(block + 1, size + self.sizes[block]);
                self.chosen[block] = false;
                if !ok {
                    return false;
                }
            }
            self.go(block + 1, size)
        }
    }

    let mut walk = Walk {
        sizes: &sizes,
        preds: &preds,
        suffix: &suffix,
        k,
        budget: opts.budget,
        visited: 0,
        chosen: vec![false; sizes.len()],
        found: Vec::new(),
    };
    if !walk.go(0, 0) {
        let estimated = 1u128.checked_shl(sizes.len() as u32).unwrap_or(u128::MAX);
        return Err(Error::InstanceTooLarge {
            estimated: estimated.max(opts.budget as u128 + 1),
            budget: opts.budget,
        });
    }
    let mut out: Vec<Committee> = walk
        .found
        .into_iter()
        .map(|blocks| {
            let mut members: Vec<Candidate> = blocks
                .into_iter()
                .flat_map(|b| chain.blocks[b].iter().copied())
                .collect();
            members.sort_unstable();
            Committee::from_sorted(members)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The `k` candidates with the largest strict majority outdegree; ties go to
/// the lexicographically smaller label.
pub fn strong_ned(election: &Election, k: usize) -> Result<Committee> {
    check_k(k, election.num_candidates())?;
    let ranking = strong_ned_ranking(election);
    let mut members = ranking[..k].to_vec();
    members.sort_unstable();
    Ok(Committee::from_sorted(members))
}

/// All candidates in strong-NED order.
pub fn strong_ned_ranking(election: &Election) -> Vec<Candidate> {
    let graphs = MajorityGraphs::from_election(election);
    let mut order: Vec<Candidate> = (0..election.num_candidates()).collect();
    order.sort_by_key(|&c| (Reverse(graphs.strict_outdegree(c)), election.label(c)));
    order
}

/// Top `k` of the majority preference order, when M(E) is a transitive
/// tournament.
pub fn centrist_committee(election: &Election, k: usize) -> Result<Option<Committee>> {
    check_k(k, election.num_candidates())?;
    let graphs = MajorityGraphs::from_election(election);
    Ok(majority_order(&graphs).map(|order| {
        let mut members = order[..k].to_vec();
        members.sort_unstable();
        Committee::from_sorted(members)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> Election {
        let mut rankings = vec![vec!["a", "b", "c"]; 3];
        rankings.extend(vec![vec!["c", "b", "a"]; 4]);
        Election::from_labels(["a", "b", "c"], rankings).unwrap()
    }

    fn split_pair() -> Election {
        Election::from_labels(["a", "b"], [["a", "b"], ["b", "a"]]).unwrap()
    }

    fn committee(e: &Election, labels: &[&str]) -> Committee {
        e.committee_from_labels(labels).unwrap()
    }

    #[test]
    fn example3_checks() {
        let e = example3();
        let v = check_gehrlein(&e, &committee(&e, &["a", "c"]));
        assert!(!v.weak && !v.strong);
        let w = v.weak_witness.unwrap();
        assert_eq!((w.outsider, w.member), (1, 0));
        assert_eq!((w.outsider_support, w.member_support), (4, 3));

        let v = check_gehrlein(&e, &committee(&e, &["b", "c"]));
        assert!(v.strong && v.weak);
        assert_eq!((v.weak_witness, v.strong_witness), (None, None));
    }

    #[test]
    fn tie_is_weak_but_not_strong() {
        let e = split_pair();
        let v = check_gehrlein(&e, &committee(&e, &["a"]));
        assert!(v.weak && !v.strong);
        let w = v.strong_witness.unwrap();
        assert_eq!((w.outsider, w.member, w.outsider_support), (1, 0, 1));
    }

    #[test]
    fn strong_committee_examples() {
        let e = example3();
        assert_eq!(
            find_strong_committee(&e, 2).unwrap(),
            Some(committee(&e, &["b", "c"]))
        );
        assert_eq!(
            find_strong_committee(&e, 3).unwrap(),
            Some(committee(&e, &["a", "b", "c"]))
        );
        assert_eq!(find_strong_committee(&split_pair(), 1).unwrap(), None);
        assert!(find_strong_committee(&e, 0).is_err());
    }

    #[test]
    fn weak_committee_examples() {
        let e = example3();
        let opts = SearchOptions::default();
        assert_eq!(
            find_weak_committees(&e, 2, &opts).unwrap(),
            vec![committee(&e, &["b", "c"])]
        );
        assert_eq!(
            find_weak_committees(&e, 1, &opts).unwrap(),
            vec![committee(&e, &["c"])]
        );
        // with a tie both singletons are weakly stable
        let p = split_pair();
        assert_eq!(find_weak_committees(&p, 1, &opts).unwrap().len(), 2);
    }

    #[test]
    fn weak_search_respects_budget() {
        // all pairs tied: every subset is weakly stable
        let labels: Vec<String> = (0..10).map(|i| format!("c{i}")).collect();
        let asc: Vec<usize> = (0..10).collect();
        let desc: Vec<usize> = (0..10).rev().collect();
        let e = Election::from_indices(labels, vec![asc, desc]).unwrap();
        let got = find_weak_committees(&e, 5, &SearchOptions::default()).unwrap();
        assert_eq!(got.len(), 252);
        let err = find_weak_committees(&e, 5, &SearchOptions::default().with_budget(50));
        assert!(matches!(err, Err(Error::InstanceTooLarge { budget: 50, .. })));
    }

    #[test]
    fn strong_ned_examples() {
        let e = example3();
        assert_eq!(strong_ned(&e, 2).unwrap(), committee(&e, &["b", "c"]));
        assert_eq!(strong_ned(&e, 1).unwrap(), committee(&e, &["c"]));
        // all-zero scores fall back to labels
        let p = split_pair();
        assert_eq!(strong_ned(&p, 1).unwrap(), committee(&p, &["a"]));
    }

    #[test]
    fn centrist_examples() {
        let e = example3();
        assert_eq!(
            centrist_committee(&e, 2).unwrap(),
            Some(committee(&e, &["b", "c"]))
        );
        let cyc = Election::from_labels(
            ["a", "b", "c"],
            [["a", "b", "c"], ["b", "c", "a"], ["c", "a", "b"]],
        )
        .unwrap();
        assert_eq!(centrist_committee(&cyc, 1).unwrap(), None);
    }
}
