//! Elections, committees, quotas and voter-level preference comparisons.
//!
//! Candidates are identified by their index in the roster and voters by their
//! position in the input. Every ranking lists candidate indices, most preferred
//! first.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Candidate index into [`Election::candidates`].
pub type Candidate = usize;

/// A validated election: a candidate roster and one complete strict ranking
/// per voter.
#[derive(Clone, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<String>,
    rankings: Vec<Vec<Candidate>>,
    // positions[v][c] = rank of candidate c for voter v (0 = top).
    positions: Vec<Vec<usize>>,
}

impl fmt::Debug for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Election")
            .field("m", &self.num_candidates())
            .field("n", &self.num_voters())
            .field("candidates", &self.candidates)
            .finish()
    }
}

impl Election {
    /// Builds an election from labels and label-based rankings.
    pub fn from_labels<L, R, S>(labels: L, rankings: R) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let lookup = label_lookup(&labels)?;
        let mut indexed = Vec::new();
        for (voter, ranking) in rankings.into_iter().enumerate() {
            let mut row = Vec::with_capacity(labels.len());
            for label in ranking {
                let label = label.as_ref();
                match lookup.get(label) {
                    Some(&c) => row.push(c),
                    None => {
                        return Err(Error::IncompleteRanking {
                            voter,
                            detail: format!("unknown label `{label}`"),
                        })
                    }
                }
            }
            indexed.push(row);
        }
        Self::from_indices(labels, indexed)
    }

    /// Builds an election from labels and index-based rankings.
    pub fn from_indices(labels: Vec<String>, rankings: Vec<Vec<Candidate>>) -> Result<Self> {
        label_lookup(&labels)?;
        let m = labels.len();
        if m == 0 || rankings.is_empty() {
            return Err(Error::EmptyElection);
        }
        let mut positions = Vec::with_capacity(rankings.len());
        for (voter, ranking) in rankings.iter().enumerate() {
            let mut pos = vec![usize::MAX; m];
            for (rank, &c) in ranking.iter().enumerate() {
                if c >= m {
                    return Err(Error::IncompleteRanking {
                        voter,
                        detail: format!("candidate index {c} out of range"),
                    });
                }
                if pos[c] != usize::MAX {
                    return Err(Error::IncompleteRanking {
                        voter,
                        detail: format!("`{}` ranked twice", labels[c]),
                    });
                }
                pos[c] = rank;
            }
            if let Some(missing) = pos.iter().position(|&p| p == usize::MAX) {
                return Err(Error::IncompleteRanking {
                    voter,
                    detail: format!("`{}` missing", labels[missing]),
                });
            }
            positions.push(pos);
        }
        Ok(Election {
            candidates: labels,
            rankings,
            positions,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> usize {
        self.rankings.len()
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn label(&self, c: Candidate) -> &str {
        &self.candidates[c]
    }

    pub fn candidate_index(&self, label: &str) -> Option<Candidate> {
        self.candidates.iter().position(|l| l == label)
    }

    pub fn rankings(&self) -> &[Vec<Candidate>] {
        &self.rankings
    }

    pub fn ranking(&self, voter: usize) -> &[Candidate] {
        &self.rankings[voter]
    }

    /// Rank of `c` in the ballot of `voter`, 0 being the top.
    #[inline]
    pub fn position(&self, voter: usize, c: Candidate) -> usize {
        self.positions[voter][c]
    }

    pub(crate) fn positions(&self, voter: usize) -> &[usize] {
        &self.positions[voter]
    }

    pub fn top(&self, voter: usize) -> Candidate {
        self.rankings[voter][0]
    }

    fn check_voter(&self, voter: usize) -> Result<()> {
        if voter >= self.num_voters() {
            return Err(Error::IndexOutOfRange {
                what: "voter",
                index: voter,
                limit: self.num_voters(),
            });
        }
        Ok(())
    }

    fn check_candidate(&self, c: Candidate) -> Result<()> {
        if c >= self.num_candidates() {
            return Err(Error::IndexOutOfRange {
                what: "candidate",
                index: c,
                limit: self.num_candidates(),
            });
        }
        Ok(())
    }

    /// The `l` most preferred candidates of `voter`, sorted by index.
    pub fn top_l(&self, voter: usize, l: usize) -> Result<Vec<Candidate>> {
        self.check_voter(voter)?;
        if l == 0 || l > self.num_candidates() {
            return Err(Error::IndexOutOfRange {
                what: "prefix length",
                index: l,
                limit: self.num_candidates(),
            });
        }
        let mut out = self.rankings[voter][..l].to_vec();
        out.sort_unstable();
        Ok(out)
    }

    /// Whether `voter` ranks `a` above `b`.
    pub fn prefers(&self, voter: usize, a: Candidate, b: Candidate) -> Result<bool> {
        self.check_voter(voter)?;
        self.check_candidate(a)?;
        self.check_candidate(b)?;
        Ok(self.positions[voter][a] < self.positions[voter][b])
    }

    /// Whether `voter` prefers the set `t` to the committee: some bijection
    /// maps `t` onto the voter's `|t|` favourite committee members with every
    /// element weakly better than its image and at least one strictly better.
    ///
    /// Sorting both sides by the voter's ranking and comparing positionwise
    /// decides the existence of such a bijection.
    pub fn prefers_set_to_committee(
        &self,
        voter: usize,
        t: &[Candidate],
        committee: &Committee,
    ) -> Result<bool> {
        self.check_voter(voter)?;
        for &c in t {
            self.check_candidate(c)?;
        }
        if t.len() > committee.len() {
            return Err(Error::SizeMismatch {
                set: t.len(),
                committee: committee.len(),
            });
        }
        let pos = &self.positions[voter];
        let mut tp: Vec<usize> = t.iter().map(|&c| pos[c]).collect();
        let mut sp: Vec<usize> = committee.members().iter().map(|&c| pos[c]).collect();
        tp.sort_unstable();
        sp.sort_unstable();
        Ok(dominates(&tp, &sp[..tp.len()]))
    }

    /// Resolves labels into a committee.
    pub fn committee_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Committee> {
        let members = labels
            .iter()
            .map(|l| {
                self.candidate_index(l.as_ref())
                    .ok_or_else(|| Error::UnknownCandidate(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Committee::new(members, self.num_candidates())
    }

    pub fn labels_of(&self, set: &[Candidate]) -> Vec<String> {
        set.iter().map(|&c| self.candidates[c].clone()).collect()
    }

    /// The same election with the voter order reversed.
    pub fn reversed_voters(&self) -> Election {
        self.with_voter_order(&(0..self.num_voters()).rev().collect::<Vec<_>>())
    }

    /// The same election with voters permuted: voter `i` of the result is
    /// voter `order[i]` of `self`.
    pub fn with_voter_order(&self, order: &[usize]) -> Election {
        Election {
            candidates: self.candidates.clone(),
            rankings: order.iter().map(|&v| self.rankings[v].clone()).collect(),
            positions: order.iter().map(|&v| self.positions[v].clone()).collect(),
        }
    }
}

/// Positionwise weak dominance of sorted rank lists with at least one strict
/// improvement. Both slices must have equal length.
#[inline]
pub(crate) fn dominates(candidate_ranks: &[usize], committee_ranks: &[usize]) -> bool {
    let mut strict = false;
    for (&t, &s) in candidate_ranks.iter().zip(committee_ranks) {
        if t > s {
            return false;
        }
        strict |= t < s;
    }
    strict
}

fn label_lookup(labels: &[String]) -> Result<HashMap<&str, Candidate>> {
    let mut lookup = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if lookup.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateCandidate(l.clone()));
        }
    }
    Ok(lookup)
}

/// A set of candidates, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee {
    members: Vec<Candidate>,
}

impl Committee {
    /// Validates `members` against a roster of `m` candidates.
    pub fn new(mut members: Vec<Candidate>, m: usize) -> Result<Self> {
        members.sort_unstable();
        if let Some(&c) = members.iter().find(|&&c| c >= m) {
            return Err(Error::InvalidCommittee(format!(
                "candidate index {c} out of range for {m} candidates"
            )));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCommittee("duplicate member".into()));
        }
        Ok(Committee { members })
    }

    /// Trusted constructor for sets already known to be valid.
    pub(crate) fn from_sorted(members: Vec<Candidate>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee { members }
    }

    pub fn members(&self) -> &[Candidate] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn is_subset_of(&self, other: &Committee) -> bool {
        self.members.iter().all(|&c| other.contains(c))
    }

    /// Candidates of an `m`-candidate election outside the committee.
    pub fn complement(&self, m: usize) -> Vec<Candidate> {
        (0..m).filter(|&c| !self.contains(c)).collect()
    }

    pub fn labels(&self, election: &Election) -> Vec<String> {
        election.labels_of(&self.members)
    }
}

/// Group-size threshold used by the proportionality notions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuotaSpec {
    /// `ceil(n / k)`
    Hare,
    /// `floor(n / (k + 1)) + 1`
    #[default]
    Droop,
    /// `ceil(n / (k + 1))`
    HagenbachBischoff,
    /// Explicit value `v`; a group counts iff its size is at least `v`.
    Exact(Ratio<i64>),
}

impl QuotaSpec {
    /// Integer threshold: a voter group reaches the quota iff its size is at
    /// least the returned value.
    pub fn value(&self, n: usize, k: usize) -> Result<usize> {
        quota_value(n, k, *self)
    }
}

/// See [`QuotaSpec::value`].
pub fn quota_value(n: usize, k: usize, spec: QuotaSpec) -> Result<usize> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidQuota(format!(
            "quota needs n >= 1 and k >= 1 (got n = {n}, k = {k})"
        )));
    }
    Ok(match spec {
        QuotaSpec::Hare => n.div_ceil(k),
        QuotaSpec::Droop => n / (k + 1) + 1,
        QuotaSpec::HagenbachBischoff => n.div_ceil(k + 1),
        QuotaSpec::Exact(v) => {
            if v <= Ratio::from_integer(0) {
                return Err(Error::InvalidQuota(format!("exact quota {v} must be positive")));
            }
            v.ceil().to_integer() as usize
        }
    })
}

/// A deviation that breaks (full) local stability or one of the
/// proportionality properties: a candidate set and the voters backing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationWitness {
    /// Size of the deviating set (1 for plain local stability).
    pub level: usize,
    /// The deviating candidate set, sorted.
    pub candidates: Vec<Candidate>,
    /// Zero-based input positions of the backing voters, sorted.
    pub voters: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> Election {
        let mut rankings = vec![vec!["a", "b", "c"]; 3];
        rankings.extend(vec![vec!["c", "b", "a"]; 4]);
        Election::from_labels(["a", "b", "c"], rankings).unwrap()
    }

    fn abcd() -> Election {
        Election::from_labels(["a", "b", "c", "d"], [["a", "b", "c", "d"]]).unwrap()
    }

    #[test]
    fn builds_single_voter() {
        let e = Election::from_labels(["a", "b", "c"], [["a", "b", "c"]]).unwrap();
        assert_eq!((e.num_candidates(), e.num_voters()), (3, 1));
    }

    #[test]
    fn builds_example3() {
        let e = example3();
        assert_eq!((e.num_candidates(), e.num_voters()), (3, 7));
        assert_eq!(e.ranking(3), &[2, 1, 0]);
    }

    #[test]
    fn rejects_bad_ballots() {
        let err = Election::from_labels(["a", "b", "c"], [["a", "b"]]).unwrap_err();
        assert!(matches!(err, Error::IncompleteRanking { voter: 0, .. }));
        let err = Election::from_labels(["a", "b", "a"], [["a", "b", "a"]]).unwrap_err();
        assert_eq!(err, Error::DuplicateCandidate("a".into()));
        let err = Election::from_labels(["a", "b"], [["a", "a"]]).unwrap_err();
        assert!(matches!(err, Error::IncompleteRanking { .. }));
        let err = Election::from_labels(["a", "b"], [["a", "z"]]).unwrap_err();
        assert!(matches!(err, Error::IncompleteRanking { .. }));
        let none: Vec<Vec<&str>> = vec![];
        assert_eq!(
            Election::from_labels(["a"], none).unwrap_err(),
            Error::EmptyElection
        );
    }

    #[test]
    fn top_l_examples() {
        let e = example3();
        assert_eq!(e.top_l(0, 2).unwrap(), vec![0, 1]);
        assert_eq!(e.top_l(5, 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(e.top_l(0, 1).unwrap(), vec![e.top(0)]);
        assert!(e.top_l(7, 1).is_err());
        assert!(e.top_l(0, 4).is_err());
    }

    #[test]
    fn prefers_examples() {
        let e = example3();
        assert!(e.prefers(0, 0, 1).unwrap());
        assert!(!e.prefers(3, 0, 1).unwrap());
        assert!(e.prefers(9, 0, 1).is_err());
    }

    #[test]
    fn set_preference_examples() {
        let e = abcd();
        let s = Committee::new(vec![0, 3], 4).unwrap();
        assert!(e.prefers_set_to_committee(0, &[0, 1], &s).unwrap());
        assert!(!e.prefers_set_to_committee(0, &[0, 3], &s).unwrap());
        assert!(!e.prefers_set_to_committee(0, &[1, 2], &s).unwrap());
        assert_eq!(
            e.prefers_set_to_committee(0, &[0, 1, 2], &s).unwrap_err(),
            Error::SizeMismatch {
                set: 3,
                committee: 2
            }
        );
    }

    #[test]
    fn quota_examples() {
        assert_eq!(quota_value(7, 2, QuotaSpec::Droop).unwrap(), 3);
        assert_eq!(quota_value(20, 5, QuotaSpec::Hare).unwrap(), 4);
        assert_eq!(quota_value(15, 4, QuotaSpec::HagenbachBischoff).unwrap(), 3);
        assert_eq!(
            quota_value(10, 2, QuotaSpec::Exact(Ratio::new(7, 2))).unwrap(),
            4
        );
        assert_eq!(
            quota_value(10, 2, QuotaSpec::Exact(Ratio::from_integer(3))).unwrap(),
            3
        );
        assert!(matches!(
            quota_value(10, 2, QuotaSpec::Exact(Ratio::from_integer(0))),
            Err(Error::InvalidQuota(_))
        ));
        assert!(quota_value(0, 2, QuotaSpec::Droop).is_err());
    }

    #[test]
    fn quota_orderings_exhaustive() {
        for n in 1..=100usize {
            for k in 1..=20usize {
                let droop = quota_value(n, k, QuotaSpec::Droop).unwrap();
                let hare = quota_value(n, k, QuotaSpec::Hare).unwrap();
                // droop > n / (k + 1)
                assert!(droop * (k + 1) > n, "n={n} k={k}");
                assert!(hare >= droop, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn committee_validation() {
        assert!(Committee::new(vec![0, 0], 3).is_err());
        assert!(Committee::new(vec![3], 3).is_err());
        let c = Committee::new(vec![2, 0], 3).unwrap();
        assert_eq!(c.members(), &[0, 2]);
        assert_eq!(c.complement(3), vec![1]);
    }
}
