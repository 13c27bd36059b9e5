//! Local stability, full local stability, θ-winning thresholds, solid
//! coalitions and Dummett's proportionality.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::election::{dominates, quota_value, Candidate, Committee, DeviationWitness, Election, QuotaSpec};
use crate::error::{Error, Result};
use crate::exec::{binomial, filter_combinations, for_each_combination, Exec, SearchOptions};
use crate::gehrlein::check_k;

/// Which committee property a [`StabilityReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notion {
    Local,
    FullLocal,
    SolidCoalitions,
    Dummett,
}

/// Outcome of a committee check. `quotas` lists `(level, threshold)` for
/// every level that was examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub notion: Notion,
    pub stable: bool,
    pub violations: Vec<DeviationWitness>,
    pub quotas: Vec<(usize, usize)>,
}

impl StabilityReport {
    fn new(notion: Notion, violations: Vec<DeviationWitness>, quotas: Vec<(usize, usize)>) -> Self {
        StabilityReport {
            notion,
            stable: violations.is_empty(),
            violations,
            quotas,
        }
    }

    pub fn quota_at(&self, level: usize) -> Option<usize> {
        self.quotas.iter().find(|&&(l, _)| l == level).map(|&(_, q)| q)
    }

    /// Re-checks every witness against the raw ballots: each listed voter
    /// satisfies the deviation condition and the group reaches its quota.
    pub fn revalidate(&self, election: &Election, committee: &Committee) -> bool {
        self.violations.iter().all(|w| {
            let Some(q) = self.quota_at(w.level) else {
                return false;
            };
            w.voters.len() >= q
                && !w.voters.is_empty()
                && w.candidates.len() == w.level
                && w.voters.iter().all(|&v| {
                    voter_backs(election, committee, self.notion, &w.candidates, v)
                })
        })
    }
}

fn voter_backs(
    election: &Election,
    committee: &Committee,
    notion: Notion,
    set: &[Candidate],
    v: usize,
) -> bool {
    if v >= election.num_voters() {
        return false;
    }
    match notion {
        Notion::Local => {
            set.len() == 1
                && !committee.contains(set[0])
                && committee
                    .members()
                    .iter()
                    .all(|&s| election.position(v, set[0]) < election.position(v, s))
        }
        Notion::FullLocal => {
            !set.iter().all(|&c| committee.contains(c))
                && election
                    .prefers_set_to_committee(v, set, committee)
                    .unwrap_or(false)
        }
        Notion::SolidCoalitions => {
            set.len() == 1 && !committee.contains(set[0]) && election.top(v) == set[0]
        }
        Notion::Dummett => {
            !set.iter().all(|&c| committee.contains(c))
                && election.top_l(v, set.len()).ok().as_deref() == Some(set)
        }
    }
}

fn nonempty(committee: &Committee) -> Result<usize> {
    if committee.is_empty() {
        return Err(Error::InvalidCommittee("committee is empty".into()));
    }
    Ok(committee.len())
}

fn check_members(election: &Election, committee: &Committee) -> Result<()> {
    if let Some(&c) = committee.members().last() {
        if c >= election.num_candidates() {
            return Err(Error::InvalidCommittee(format!(
                "candidate index {c} out of range"
            )));
        }
    }
    Ok(())
}

/// Best (smallest) rank each voter gives to a committee member.
fn best_ranks(election: &Election, members: &[Candidate], out: &mut Vec<usize>) {
    out.clear();
    out.extend((0..election.num_voters()).map(|v| {
        let pos = election.positions(v);
        members.iter().map(|&c| pos[c]).min().unwrap_or(usize::MAX)
    }));
}

/// Voters ranking `c` above every committee member.
fn supporters<'a>(
    election: &'a Election,
    best: &'a [usize],
    c: Candidate,
) -> impl Iterator<Item = usize> + 'a {
    best.iter()
        .enumerate()
        .filter(move |&(v, &b)| election.position(v, c) < b)
        .map(|(v, _)| v)
}

/// Checks local stability: no outside candidate is ranked above every
/// member by a group reaching the quota. Runs in `O(m n k)`.
pub fn check_local(election: &Election, committee: &Committee, spec: QuotaSpec) -> Result<StabilityReport> {
    check_members(election, committee)?;
    let k = nonempty(committee)?;
    let q = quota_value(election.num_voters(), k, spec)?;
    let mut best = Vec::new();
    best_ranks(election, committee.members(), &mut best);
    let violations = committee
        .complement(election.num_candidates())
        .into_iter()
        .filter_map(|c| {
            let voters: Vec<usize> = supporters(election, &best, c).collect();
            (voters.len() >= q).then_some(DeviationWitness {
                level: 1,
                candidates: vec![c],
                voters,
            })
        })
        .collect();
    Ok(StabilityReport::new(Notion::Local, violations, vec![(1, q)]))
}

/// Every locally stable committee of size `k`, sorted.
///
/// A candidate ranked first by at least `q` voters must belong to every
/// locally stable committee, so only completions of that mandatory core are
/// enumerated.
pub fn find_locally_stable(
    election: &Election,
    k: usize,
    spec: QuotaSpec,
    opts: &SearchOptions,
) -> Result<Vec<Committee>> {
    let m = election.num_candidates();
    check_k(k, m)?;
    let n = election.num_voters();
    let q = quota_value(n, k, spec)?;
    let mut firsts = vec![0usize; m];
    for v in 0..n {
        firsts[election.top(v)] += 1;
    }
    let mandatory: Vec<Candidate> = (0..m).filter(|&c| firsts[c] >= q).collect();
    if mandatory.len() > k {
        return Ok(vec![]);
    }
    let pool: Vec<Candidate> = (0..m).filter(|&c| firsts[c] < q).collect();
    let rest = k - mandatory.len();
    opts.ensure(binomial(pool.len(), rest))?;

    let assemble = |extra: &[Candidate], members: &mut Vec<Candidate>| {
        members.clear();
        members.extend_from_slice(&mandatory);
        members.extend_from_slice(extra);
        members.sort_unstable();
    };
    let kept = filter_combinations(
        &pool,
        rest,
        opts.exec,
        || (Vec::new(), Vec::new(), vec![false; m]),
        |(members, best, inside): &mut (Vec<usize>, Vec<usize>, Vec<bool>), extra| {
            assemble(extra, members);
            best_ranks(election, members, best);
            inside.iter_mut().for_each(|x| *x = false);
            for &c in members.iter() {
                inside[c] = true;
            }
            (0..m).filter(|&c| !inside[c]).all(|c| {
                let mut count = 0;
                for (v, &b) in best.iter().enumerate() {
                    if election.position(v, c) < b {
                        count += 1;
                        if count >= q {
                            return false;
                        }
                    }
                }
                true
            })
        },
    );
    let mut out: Vec<Committee> = kept
        .into_iter()
        .map(|extra| {
            let mut members = Vec::new();
            assemble(&extra, &mut members);
            Committee::from_sorted(members)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `floor(l n / (k + 1)) + 1`, the group size needed for an `l`-deviation.
pub fn level_quota(n: usize, k: usize, level: usize) -> usize {
    level * n / (k + 1) + 1
}

struct FullLocalScan<'a> {
    election: &'a Election,
    inside: Vec<bool>,
    // committee ranks of every voter, sorted ascending
    committee_ranks: Vec<Vec<usize>>,
}

impl<'a> FullLocalScan<'a> {
    fn new(election: &'a Election, members: &[Candidate]) -> Self {
        let mut inside = vec![false; election.num_candidates()];
        for &c in members {
            inside[c] = true;
        }
        let committee_ranks = (0..election.num_voters())
            .map(|v| {
                let pos = election.positions(v);
                let mut r: Vec<usize> = members.iter().map(|&c| pos[c]).collect();
                r.sort_unstable();
                r
            })
            .collect();
        FullLocalScan {
            election,
            inside,
            committee_ranks,
        }
    }

    /// Counts voters preferring `set` to the committee, stopping at `stop`.
    fn count(&self, set: &[Candidate], ranks: &mut Vec<usize>, stop: usize) -> usize {
        let l = set.len();
        let mut count = 0;
        for (v, cr) in self.committee_ranks.iter().enumerate() {
            let pos = self.election.positions(v);
            ranks.clear();
            ranks.extend(set.iter().map(|&c| pos[c]));
            // a member of the set ranked below the voter's l-th representative
            // rules the voter out
            if ranks.iter().any(|&r| r > cr[l - 1]) {
                continue;
            }
            ranks.sort_unstable();
            if dominates(ranks, &cr[..l]) {
                count += 1;
                if count >= stop {
                    break;
                }
            }
        }
        count
    }

    fn backers(&self, set: &[Candidate]) -> Vec<usize> {
        let l = set.len();
        let mut ranks = Vec::with_capacity(l);
        (0..self.election.num_voters())
            .filter(|&v| {
                let pos = self.election.positions(v);
                ranks.clear();
                ranks.extend(set.iter().map(|&c| pos[c]));
                ranks.sort_unstable();
                dominates(&ranks, &self.committee_ranks[v][..l])
            })
            .collect()
    }

    fn skip(&self, set: &[Candidate], skip_inside: bool) -> bool {
        skip_inside && set.iter().all(|&c| self.inside[c])
    }

    /// Violating sets at `level`, in lexicographic order. With `first_only`
    /// the scan stops after the first violation.
    fn level_violations(
        &self,
        level: usize,
        exec: Exec,
        skip_inside: bool,
        first_only: bool,
    ) -> Vec<DeviationWitness> {
        let n = self.election.num_voters();
        let k = self.committee_ranks.first().map_or(0, Vec::len);
        let q = level_quota(n, k, level);
        let all: Vec<Candidate> = (0..self.election.num_candidates()).collect();
        let sets = if first_only {
            let mut ranks = Vec::new();
            let mut hit = None;
            for_each_combination(&all, level, |set| {
                if !self.skip(set, skip_inside) && self.count(set, &mut ranks, q) >= q {
                    hit = Some(set.to_vec());
                }
                hit.is_none()
            });
            hit.into_iter().collect::<Vec<_>>()
        } else {
            filter_combinations(&all, level, exec, Vec::new, |ranks, set| {
                !self.skip(set, skip_inside) && self.count(set, ranks, q) >= q
            })
        };
        sets.into_iter()
            .map(|set| DeviationWitness {
                level,
                voters: self.backers(&set),
                candidates: set,
            })
            .collect()
    }
}

fn full_local_budget(m: usize, k: usize) -> u128 {
    (1..=k).map(|l| binomial(m, l)).fold(0u128, u128::saturating_add)
}

/// Checks full local stability by enumerating, for every level `l <= k`,
/// all `l`-sets of candidates. Exponential in `k`; guarded by the budget.
pub fn check_full_local(
    election: &Election,
    committee: &Committee,
    opts: &SearchOptions,
) -> Result<StabilityReport> {
    check_full_local_with(election, committee, opts, false)
}

/// As [`check_full_local`]; with `skip_committee_subsets` the sets lying
/// entirely inside the committee are not examined (no voter can prefer such
/// a set, so the verdict is unchanged).
pub fn check_full_local_with(
    election: &Election,
    committee: &Committee,
    opts: &SearchOptions,
    skip_committee_subsets: bool,
) -> Result<StabilityReport> {
    check_members(election, committee)?;
    let k = nonempty(committee)?;
    let m = election.num_candidates();
    opts.ensure(full_local_budget(m, k))?;
    let scan = FullLocalScan::new(election, committee.members());
    let n = election.num_voters();
    let mut violations = Vec::new();
    let mut quotas = Vec::new();
    for level in 1..=k {
        quotas.push((level, level_quota(n, k, level)));
        violations.extend(scan.level_violations(level, opts.exec, skip_committee_subsets, false));
    }
    Ok(StabilityReport::new(Notion::FullLocal, violations, quotas))
}

fn is_fully_locally_stable(election: &Election, members: &[Candidate]) -> bool {
    let scan = FullLocalScan::new(election, members);
    (1..=members.len()).all(|level| {
        scan.level_violations(level, Exec::Sequential, true, true)
            .is_empty()
    })
}

/// Every fully locally stable committee of size `k`, by exhaustive search.
pub fn find_fully_locally_stable(
    election: &Election,
    k: usize,
    opts: &SearchOptions,
) -> Result<Vec<Committee>> {
    let m = election.num_candidates();
    check_k(k, m)?;
    opts.ensure(binomial(m, k).saturating_mul(full_local_budget(m, k)))?;
    let all: Vec<Candidate> = (0..m).collect();
    Ok(filter_combinations(&all, k, opts.exec, || (), |_, set| {
        is_fully_locally_stable(election, set)
    })
    .into_iter()
    .map(Committee::from_sorted)
    .collect())
}

/// Smallest fraction of voters preferring some committee member to an
/// outside candidate, and the outside candidate attaining it. The committee
/// is a θ-winning set exactly for `θ < value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaThreshold {
    pub value: Ratio<u64>,
    pub witness: Candidate,
}

pub fn theta_threshold(election: &Election, committee: &Committee) -> Result<ThetaThreshold> {
    check_members(election, committee)?;
    nonempty(committee)?;
    let n = election.num_voters();
    let mut best = Vec::new();
    best_ranks(election, committee.members(), &mut best);
    committee
        .complement(election.num_candidates())
        .into_iter()
        .map(|c| (n - supporters(election, &best, c).count(), c))
        .min()
        .map(|(covered, c)| ThetaThreshold {
            value: Ratio::new(covered as u64, n as u64),
            witness: c,
        })
        .ok_or(Error::EmptyComplement)
}

/// Solid coalitions: no outside candidate is ranked first by `ceil(n / k)`
/// voters.
pub fn check_solid_coalitions(election: &Election, committee: &Committee) -> Result<StabilityReport> {
    check_members(election, committee)?;
    let k = nonempty(committee)?;
    let n = election.num_voters();
    let q = n.div_ceil(k);
    let violations = committee
        .complement(election.num_candidates())
        .into_iter()
        .filter_map(|c| {
            let voters: Vec<usize> = (0..n).filter(|&v| election.top(v) == c).collect();
            (voters.len() >= q).then_some(DeviationWitness {
                level: 1,
                candidates: vec![c],
                voters,
            })
        })
        .collect();
    Ok(StabilityReport::new(Notion::SolidCoalitions, violations, vec![(1, q)]))
}

/// Dummett's proportionality for prefix lengths `1..=max_level`: no group of
/// `ceil(l n / k)` voters shares a top-`l` set that is not inside the
/// committee.
pub fn check_dummett(election: &Election, committee: &Committee, max_level: usize) -> Result<StabilityReport> {
    check_members(election, committee)?;
    let k = nonempty(committee)?;
    if max_level == 0 || max_level > k {
        return Err(Error::IndexOutOfRange {
            what: "Dummett level",
            index: max_level,
            limit: k,
        });
    }
    let n = election.num_voters();
    let mut violations = Vec::new();
    let mut quotas = Vec::new();
    for level in 1..=max_level.min(election.num_candidates()) {
        let q = (level * n).div_ceil(k);
        quotas.push((level, q));
        let mut groups: BTreeMap<Vec<Candidate>, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            groups.entry(election.top_l(v, level)?).or_default().push(v);
        }
        for (set, voters) in groups {
            if voters.len() >= q && set.iter().any(|&c| !committee.contains(c)) {
                violations.push(DeviationWitness {
                    level,
                    candidates: set,
                    voters,
                });
            }
        }
    }
    Ok(StabilityReport::new(Notion::Dummett, violations, quotas))
}
