//! Single-crossing, single-peaked and party-list profiles, and the committees
//! built from them.
//!
//! Recognisers never trust their own search: every returned voter order, axis
//! or partition is re-checked against the plain definition before it is
//! reported.

use std::cmp::Reverse;

use crate::election::{quota_value, Candidate, Committee, Election, QuotaSpec};
use crate::error::{Error, Result};
use crate::gehrlein::check_k;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleCrossingReport {
    /// The profile is single-crossing in the input voter order.
    pub holds_as_given: bool,
    /// A voter order making the profile single-crossing, if one was found.
    pub witness_order: Option<Vec<usize>>,
}

/// Fixed-order single-crossing test: along the voter sequence, the set of
/// pairs ordered differently from the first voter only grows.
pub fn is_single_crossing(election: &Election) -> bool {
    let m = election.num_candidates();
    let first = election.ranking(0);
    let mut flipped = vec![false; m * m];
    for v in 1..election.num_voters() {
        for (i, &a) in first.iter().enumerate() {
            for &b in &first[i + 1..] {
                let now = election.position(v, b) < election.position(v, a);
                let before = &mut flipped[a * m + b];
                if *before && !now {
                    return false;
                }
                *before = now;
            }
        }
    }
    true
}

fn kendall_tau(election: &Election, u: usize, v: usize) -> usize {
    let ru = election.ranking(u);
    let mut d = 0;
    for (i, &a) in ru.iter().enumerate() {
        for &b in &ru[i + 1..] {
            if election.position(v, b) < election.position(v, a) {
                d += 1;
            }
        }
    }
    d
}

/// Checks the single-crossing property in the given order and, with
/// `reorder`, tries to find a voter order that has it.
///
/// Along a single-crossing order the distance from the first voter grows
/// monotonically, so sorting by distance from each voter in turn finds an
/// order whenever one exists.
pub fn check_single_crossing(election: &Election, reorder: bool) -> SingleCrossingReport {
    let n = election.num_voters();
    if is_single_crossing(election) {
        return SingleCrossingReport {
            holds_as_given: true,
            witness_order: Some((0..n).collect()),
        };
    }
    let mut witness_order = None;
    if reorder {
        for end in 0..n {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (kendall_tau(election, end, v), v));
            if is_single_crossing(&election.with_voter_order(&order)) {
                witness_order = Some(order);
                break;
            }
        }
    }
    SingleCrossingReport {
        holds_as_given: false,
        witness_order,
    }
}

/// Committee of the tops of voters `spacing, 2 spacing, ..., k spacing`
/// (one-based), padded with the smallest unused candidates when tops repeat.
fn uniform_from_order(election: &Election, order: &[usize], k: usize, spacing: usize) -> Result<Committee> {
    let n = election.num_voters();
    let needed = k.saturating_mul(spacing);
    if spacing == 0 || needed > n {
        return Err(Error::SpacingOutOfRange {
            k,
            spacing,
            needed,
            n,
        });
    }
    let mut chosen = vec![false; election.num_candidates()];
    for l in 1..=k {
        chosen[election.top(order[l * spacing - 1])] = true;
    }
    let mut missing = k - chosen.iter().filter(|&&x| x).count();
    for slot in chosen.iter_mut() {
        if missing == 0 {
            break;
        }
        if !*slot {
            *slot = true;
            missing -= 1;
        }
    }
    let members = (0..chosen.len()).filter(|&c| chosen[c]).collect();
    Ok(Committee::from_sorted(members))
}

fn default_spacing(election: &Election, k: usize, spacing: Option<usize>) -> Result<usize> {
    match spacing {
        Some(s) => Ok(s),
        None => quota_value(election.num_voters(), k, QuotaSpec::Droop),
    }
}

/// Single-crossing uniform committee; the spacing defaults to the Droop
/// quota.
pub fn sc_uniform_committee(election: &Election, k: usize, spacing: Option<usize>) -> Result<Committee> {
    check_k(k, election.num_candidates())?;
    if !is_single_crossing(election) {
        return Err(Error::NotSingleCrossing);
    }
    let spacing = default_spacing(election, k, spacing)?;
    let order: Vec<usize> = (0..election.num_voters()).collect();
    uniform_from_order(election, &order, k, spacing)
}

/// Whether every voter's preference falls off monotonically on both sides of
/// their peak along `axis`.
pub fn is_single_peaked(election: &Election, axis: &[Candidate]) -> bool {
    let m = election.num_candidates();
    if axis.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &c in axis {
        if c >= m || std::mem::replace(&mut seen[c], true) {
            return false;
        }
    }
    (0..election.num_voters()).all(|v| {
        let top = election.top(v);
        let peak = axis.iter().position(|&c| c == top).unwrap();
        let rank = |i: usize| election.position(v, axis[i]);
        (1..=peak).all(|i| rank(i) < rank(i - 1)) && (peak + 1..m).all(|i| rank(i - 1) < rank(i))
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Open,
}

struct AxisSearch<'a> {
    election: &'a Election,
    side: Vec<Side>,
    left: Vec<Candidate>,
    right: Vec<Candidate>,
    open: usize,
}

impl AxisSearch<'_> {
    fn peak_side(&self, v: usize) -> Side {
        self.side[self.election.top(v)]
    }

    /// Consecutive-pair condition for `inner` placed next to `outer` on
    /// `side`: voters peaking further out prefer `outer`, all others `inner`.
    fn pair_ok(&self, outer: Candidate, inner: Candidate, side: Side) -> bool {
        (0..self.election.num_voters()).all(|v| {
            let outer_wins = self.election.position(v, outer) < self.election.position(v, inner);
            outer_wins == (self.peak_side(v) == side)
        })
    }

    fn place(&mut self, c: Candidate, side: Side) -> bool {
        let innermost = match side {
            Side::Left => self.left.last(),
            _ => self.right.last(),
        };
        if let Some(&outer) = innermost {
            if !self.pair_ok(outer, c, side) {
                return false;
            }
        }
        self.side[c] = side;
        match side {
            Side::Left => self.left.push(c),
            _ => self.right.push(c),
        }
        self.open -= 1;
        true
    }

    fn unplace(&mut self, c: Candidate) {
        match self.side[c] {
            Side::Left => self.left.pop(),
            _ => self.right.pop(),
        };
        self.side[c] = Side::Open;
        self.open += 1;
    }

    fn junction_ok(&self) -> bool {
        match (self.left.last(), self.right.last()) {
            (Some(&l), Some(&r)) => (0..self.election.num_voters()).all(|v| {
                let l_wins = self.election.position(v, l) < self.election.position(v, r);
                l_wins == (self.peak_side(v) == Side::Left)
            }),
            _ => true,
        }
    }

    fn try_sides(&mut self, placements: &[(Candidate, Side)]) -> bool {
        let mut done = 0;
        let mut ok = true;
        for &(c, s) in placements {
            if !self.place(c, s) {
                ok = false;
                break;
            }
            done += 1;
        }
        if ok && self.solve() {
            return true;
        }
        for &(c, _) in placements[..done].iter().rev() {
            self.unplace(c);
        }
        false
    }

    fn solve(&mut self) -> bool {
        if self.open == 0 {
            return self.junction_ok();
        }
        // least preferred open candidate of every voter must sit at an end
        let mut ends: Vec<Candidate> = Vec::with_capacity(2);
        for v in 0..self.election.num_voters() {
            let last = *self
                .election
                .ranking(v)
                .iter()
                .rev()
                .find(|&&c| self.side[c] == Side::Open)
                .unwrap();
            if !ends.contains(&last) {
                if ends.len() == 2 {
                    return false;
                }
                ends.push(last);
            }
        }
        ends.sort_unstable();
        let fresh = self.left.is_empty() && self.right.is_empty();
        match *ends.as_slice() {
            [x] => {
                self.try_sides(&[(x, Side::Left)]) || (!fresh && self.try_sides(&[(x, Side::Right)]))
            }
            [x, y] => {
                self.try_sides(&[(x, Side::Left), (y, Side::Right)])
                    || (!fresh && self.try_sides(&[(y, Side::Left), (x, Side::Right)]))
            }
            _ => unreachable!(),
        }
    }
}

/// Finds an axis making the profile single-peaked, if one exists.
///
/// Each voter's least preferred remaining candidate must be an end of the
/// remaining interval, so the axis is built from the outside in; every
/// adjacent pair is checked as soon as it is formed and dead ends backtrack.
pub fn find_single_peaked_axis(election: &Election) -> Option<Vec<Candidate>> {
    let m = election.num_candidates();
    let mut search = AxisSearch {
        election,
        side: vec![Side::Open; m],
        left: Vec::new(),
        right: Vec::new(),
        open: m,
    };
    if !search.solve() {
        return None;
    }
    let mut axis = search.left;
    axis.extend(search.right.into_iter().rev());
    is_single_peaked(election, &axis).then_some(axis)
}

/// With an axis, validates it; without, searches for one. Returns the axis
/// under which the profile is single-peaked.
pub fn check_single_peaked(election: &Election, axis: Option<&[Candidate]>) -> Option<Vec<Candidate>> {
    match axis {
        Some(axis) => is_single_peaked(election, axis).then(|| axis.to_vec()),
        None => find_single_peaked_axis(election),
    }
}

/// Single-peaked uniform committee: voters are stably sorted by the axis
/// position of their peak, then the single-crossing selection rule applies.
pub fn sp_uniform_committee(
    election: &Election,
    k: usize,
    axis: &[Candidate],
    spacing: Option<usize>,
) -> Result<Committee> {
    check_k(k, election.num_candidates())?;
    if !is_single_peaked(election, axis) {
        return Err(Error::NotSinglePeaked);
    }
    let spacing = default_spacing(election, k, spacing)?;
    let mut at = vec![0; election.num_candidates()];
    for (i, &c) in axis.iter().enumerate() {
        at[c] = i;
    }
    let mut order: Vec<usize> = (0..election.num_voters()).collect();
    order.sort_by_key(|&v| at[election.top(v)]);
    uniform_from_order(election, &order, k, spacing)
}

/// One party: its candidates in the order all supporters agree on, and the
/// supporters (possibly none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Party {
    pub candidates: Vec<Candidate>,
    pub voters: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyList {
    pub parties: Vec<Party>,
}

/// Checks a claimed party-list structure clause by clause: candidate and
/// voter partitions, party sizes of at least `k`, every supporter ranking the
/// whole party first in exactly the party's order.
pub fn verify_party_list(election: &Election, k: usize, list: &PartyList) -> bool {
    let (m, n) = (election.num_candidates(), election.num_voters());
    let mut cand_seen = vec![false; m];
    let mut voter_seen = vec![false; n];
    for party in &list.parties {
        if party.candidates.len() < k {
            return false;
        }
        for &c in &party.candidates {
            if c >= m || std::mem::replace(&mut cand_seen[c], true) {
                return false;
            }
        }
        for &v in &party.voters {
            if v >= n || std::mem::replace(&mut voter_seen[v], true) {
                return false;
            }
            if election.ranking(v)[..party.candidates.len()] != party.candidates[..] {
                return false;
            }
        }
    }
    cand_seen.iter().all(|&x| x) && voter_seen.iter().all(|&x| x)
}

/// Recognises a party-list election for committee size `k`.
///
/// Voters with the same top candidate must support the same party, whose
/// candidates form a common prefix of their ballots that contains no other
/// group's top. Parties start at size `k`; leftover candidates are absorbed
/// by extending parties along their common prefixes, or, failing that,
/// form one party without supporters if there are at least `k` of them.
pub fn detect_party_list(election: &Election, k: usize) -> Option<PartyList> {
    let m = election.num_candidates();
    if k == 0 || k > m {
        return None;
    }
    let mut groups: Vec<(Candidate, Vec<usize>)> = Vec::new();
    for v in 0..election.num_voters() {
        let top = election.top(v);
        match groups.iter_mut().find(|(t, _)| *t == top) {
            Some((_, voters)) => voters.push(v),
            None => groups.push((top, vec![v])),
        }
    }
    let mut is_top = vec![false; m];
    for (t, _) in &groups {
        is_top[*t] = true;
    }
    let prefixes: Vec<Vec<Candidate>> = groups
        .iter()
        .map(|(top, voters)| {
            let first = election.ranking(voters[0]);
            let mut len = voters
                .iter()
                .map(|&v| {
                    first
                        .iter()
                        .zip(election.ranking(v))
                        .take_while(|(a, b)| a == b)
                        .count()
                })
                .min()
                .unwrap_or(0);
            if let Some(stop) = first[1..len].iter().position(|&c| is_top[c] && c != *top) {
                len = stop + 1;
            }
            first[..len].to_vec()
        })
        .collect();
    if prefixes.iter().any(|p| p.len() < k) {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for (g, p) in prefixes.iter().enumerate() {
        for &c in &p[..k] {
            if owner[c].replace(g).is_some() {
                return None;
            }
        }
    }
    let mut lengths = vec![k; groups.len()];

    fn absorb(prefixes: &[Vec<Candidate>], owner: &mut [Option<usize>], lengths: &mut [usize]) -> bool {
        let Some(c) = owner.iter().position(Option::is_none) else {
            return true;
        };
        for g in 0..prefixes.len() {
            let ext = &prefixes[g][lengths[g]..];
            let Some(j) = ext.iter().position(|&x| x == c) else {
                continue;
            };
            if ext[..=j].iter().any(|&x| owner[x].is_some()) {
                continue;
            }
            for &x in &ext[..=j] {
                owner[x] = Some(g);
            }
            let before = lengths[g];
            lengths[g] += j + 1;
            if absorb(prefixes, owner, lengths) {
                return true;
            }
            lengths[g] = before;
            for &x in &prefixes[g][before..before + j + 1] {
                owner[x] = None;
            }
        }
        false
    }

    let leftovers: Vec<Candidate> = (0..m).filter(|&c| owner[c].is_none()).collect();
    let mut parties: Vec<Party>;
    let mut absorbed_owner = owner.clone();
    let mut absorbed_lengths = lengths.clone();
    if absorb(&prefixes, &mut absorbed_owner, &mut absorbed_lengths) {
        lengths = absorbed_lengths;
        parties = Vec::new();
    } else if leftovers.len() >= k {
        parties = vec![Party {
            candidates: leftovers,
            voters: vec![],
        }];
    } else {
        return None;
    }
    let mut supported: Vec<Party> = groups
        .into_iter()
        .zip(prefixes)
        .zip(lengths)
        .map(|(((_, voters), prefix), len)| Party {
            candidates: prefix[..len].to_vec(),
            voters,
        })
        .collect();
    supported.append(&mut parties);
    let list = PartyList { parties: supported };
    verify_party_list(election, k, &list).then_some(list)
}

/// For each party, its top `floor(k |V_i| / n)` candidates; remaining seats
/// go by largest remainder, ties to the earlier party.
pub fn party_proportional_committee(election: &Election, k: usize) -> Result<Committee> {
    check_k(k, election.num_candidates())?;
    let list = detect_party_list(election, k).ok_or(Error::NotPartyList(k))?;
    Ok(proportional_from_list(election, k, &list))
}

pub fn proportional_from_list(election: &Election, k: usize, list: &PartyList) -> Committee {
    let n = election.num_voters();
    let mut seats: Vec<usize> = list.parties.iter().map(|p| k * p.voters.len() / n).collect();
    let assigned: usize = seats.iter().sum();
    let mut by_remainder: Vec<usize> = (0..list.parties.len()).collect();
    by_remainder.sort_by_key(|&i| (Reverse(k * list.parties[i].voters.len() % n), i));
    for &i in by_remainder.iter().take(k - assigned) {
        seats[i] += 1;
    }
    let mut members: Vec<Candidate> = list
        .parties
        .iter()
        .zip(&seats)
        .flat_map(|(p, &s)| p.candidates[..s].iter().copied())
        .collect();
    members.sort_unstable();
    Committee::from_sorted(members)
}

/// Everything the recognisers find about a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainReport {
    pub single_crossing: SingleCrossingReport,
    pub single_peaked_axis: Option<Vec<Candidate>>,
    /// Only examined when a committee size is given.
    pub party_list: Option<PartyList>,
}

pub fn detect_domains(election: &Election, k: Option<usize>) -> DomainReport {
    DomainReport {
        single_crossing: check_single_crossing(election, true),
        single_peaked_axis: find_single_peaked_axis(election),
        party_list: k.and_then(|k| detect_party_list(election, k)),
    }
}
