//! Brute-force oracles written straight from the definitions, sharing no code
//! with the library beyond `Election` accessors.

#![allow(dead_code)]

use condorcet_committees::{Committee, Election};
use proptest::prelude::*;

pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

pub fn committee(e: &Election, members: &[usize]) -> Committee {
    Committee::new(members.to_vec(), e.num_candidates()).unwrap()
}

pub fn pair_count(e: &Election, a: usize, b: usize) -> usize {
    (0..e.num_voters())
        .filter(|&v| e.position(v, a) < e.position(v, b))
        .count()
}

/// Every member beats (strict) or at least ties (weak) every non-member.
pub fn gehrlein(e: &Election, s: &[usize], strict: bool) -> bool {
    let n = e.num_voters();
    (0..e.num_candidates())
        .filter(|d| !s.contains(d))
        .all(|d| {
            s.iter().all(|&c| {
                let twice = 2 * pair_count(e, d, c);
                if strict {
                    twice < n
                } else {
                    twice <= n
                }
            })
        })
}

pub fn prefers_to_all(e: &Election, v: usize, c: usize, s: &[usize]) -> bool {
    s.iter().all(|&x| e.position(v, c) < e.position(v, x))
}

pub fn locally_stable(e: &Election, s: &[usize], q: usize) -> bool {
    (0..e.num_candidates())
        .filter(|c| !s.contains(c))
        .all(|c| (0..e.num_voters()).filter(|&v| prefers_to_all(e, v, c, s)).count() < q)
}

/// Voter `v` prefers the `l`-set `t` to `s`: `t`'s members, best first, are
/// positionwise at least as good as `v`'s `l` favourite members of `s`,
/// and strictly better somewhere.
pub fn prefers_set(e: &Election, v: usize, t: &[usize], s: &[usize]) -> bool {
    let mut tr: Vec<usize> = t.iter().map(|&c| e.position(v, c)).collect();
    let mut sr: Vec<usize> = s.iter().map(|&c| e.position(v, c)).collect();
    tr.sort_unstable();
    sr.sort_unstable();
    let pairs = tr.iter().zip(&sr[..t.len()]);
    pairs.clone().all(|(a, b)| a <= b) && pairs.clone().any(|(a, b)| a < b)
}

pub fn fully_locally_stable(e: &Election, s: &[usize]) -> bool {
    let (m, n, k) = (e.num_candidates(), e.num_voters(), s.len());
    (1..=k).all(|l| {
        let quota = l * n / (k + 1) + 1;
        subsets(m, l).iter().all(|t| {
            (0..n).filter(|&v| prefers_set(e, v, t, s)).count() < quota
        })
    })
}

pub fn solid_coalitions(e: &Election, s: &[usize]) -> bool {
    let q = e.num_voters().div_ceil(s.len());
    (0..e.num_candidates())
        .filter(|c| !s.contains(c))
        .all(|c| (0..e.num_voters()).filter(|&v| e.ranking(v)[0] == c).count() < q)
}

pub fn dummett(e: &Election, s: &[usize], max_level: usize) -> bool {
    let (n, k) = (e.num_voters(), s.len());
    (1..=max_level).all(|l| {
        let q = (l * n).div_ceil(k);
        (0..n).all(|v| {
            let mut top: Vec<usize> = e.ranking(v)[..l].to_vec();
            top.sort_unstable();
            let group = (0..n)
                .filter(|&u| {
                    let mut t: Vec<usize> = e.ranking(u)[..l].to_vec();
                    t.sort_unstable();
                    t == top
                })
                .count();
            group < q || top.iter().all(|c| s.contains(c))
        })
    })
}

pub fn single_crossing_in_order(e: &Election, order: &[usize]) -> bool {
    let m = e.num_candidates();
    (0..m).all(|a| {
        let first = order[0];
        (0..m).filter(|&b| e.position(first, a) < e.position(first, b)).all(|b| {
            // voters preferring a to b form a prefix
            let flags: Vec<bool> = order.iter().map(|&v| e.position(v, a) < e.position(v, b)).collect();
            flags.windows(2).all(|w| w[0] || !w[1])
        })
    })
}

pub fn single_peaked_on(e: &Election, axis: &[usize]) -> bool {
    let at = |c: usize| axis.iter().position(|&x| x == c).unwrap();
    (0..e.num_voters()).all(|v| {
        let peak = at(e.ranking(v)[0]);
        (0..axis.len()).all(|i| {
            (0..axis.len()).all(|j| {
                let same_side_closer = (peak <= i && i < j) || (j < i && i <= peak);
                !same_side_closer || e.position(v, axis[i]) < e.position(v, axis[j])
            })
        })
    })
}

/// Every partition of `0..m` into blocks.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, m: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == m {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, m, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, m, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, m, &mut Vec::new(), &mut out);
    out
}

/// Some partition into parties of size at least `k` where every voter ranks
/// one whole party first, in an order shared by that party's voters.
pub fn party_list_exists(e: &Election, k: usize) -> bool {
    set_partitions(e.num_candidates()).into_iter().any(|parts| {
        if parts.iter().any(|p| p.len() < k) {
            return false;
        }
        let mut agreed: Vec<Option<&[usize]>> = vec![None; parts.len()];
        (0..e.num_voters()).all(|v| {
            let r = e.ranking(v);
            let Some(i) = parts.iter().position(|p| {
                let mut top = r[..p.len()].to_vec();
                top.sort_unstable();
                top == *p
            }) else {
                return false;
            };
            let prefix = &r[..parts[i].len()];
            *agreed[i].get_or_insert(prefix) == prefix
        })
    })
}

/// Random elections with `m` in `ms` and `n` in `ns`, labelled `c0..`.
pub fn arb_election(
    ms: std::ops::RangeInclusive<usize>,
    ns: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Election> {
    (ms, ns).prop_flat_map(|(m, n)| {
        let ranking = Just((0..m).collect::<Vec<_>>()).prop_shuffle();
        proptest::collection::vec(ranking, n).prop_map(move |rankings| {
            let labels = (0..m).map(|i| format!("c{i}")).collect();
            Election::from_indices(labels, rankings).unwrap()
        })
    })
}
