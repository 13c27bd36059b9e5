//! Pairwise tallies, majority graphs and their condensation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::election::{Candidate, Election};

/// `counts[a][b]` = number of voters ranking `a` above `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    m: usize,
    n: usize,
    counts: Vec<u32>,
}

impl PairwiseTally {
    pub fn new(election: &Election) -> Self {
        tally_pairwise(election)
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Candidate, b: Candidate) -> u32 {
        self.counts[a * self.m + b]
    }
}

/// Counts, for every ordered pair, the voters preferring the first candidate.
pub fn tally_pairwise(election: &Election) -> PairwiseTally {
    let m = election.num_candidates();
    let mut counts = vec![0u32; m * m];
    for ranking in election.rankings() {
        for (i, &a) in ranking.iter().enumerate() {
            let row = &mut counts[a * m..(a + 1) * m];
            for &b in &ranking[i + 1..] {
                row[b] += 1;
            }
        }
    }
    PairwiseTally {
        m,
        n: election.num_voters(),
        counts,
    }
}

/// Strict majority graph M(E) together with the tied pairs; the weak majority
/// graph W(E) is M(E) plus both directions of every tie.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityGraphs {
    m: usize,
    n: usize,
    strict: Vec<bool>,
    tie: Vec<bool>,
}

impl MajorityGraphs {
    pub fn from_tally(tally: &PairwiseTally) -> Self {
        let (m, n) = (tally.m, tally.n);
        let mut strict = vec![false; m * m];
        let mut tie = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let twice = 2 * tally.get(a, b) as usize;
                strict[a * m + b] = twice > n;
                tie[a * m + b] = twice == n;
            }
        }
        MajorityGraphs { m, n, strict, tie }
    }

    pub fn from_election(election: &Election) -> Self {
        Self::from_tally(&tally_pairwise(election))
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    /// `a` wins its pairwise election against `b`.
    #[inline]
    pub fn beats(&self, a: Candidate, b: Candidate) -> bool {
        self.strict[a * self.m + b]
    }

    #[inline]
    pub fn tied(&self, a: Candidate, b: Candidate) -> bool {
        self.tie[a * self.m + b]
    }

    /// Edge of the weak majority graph: `a` wins or ties against `b`.
    #[inline]
    pub fn weakly_beats(&self, a: Candidate, b: Candidate) -> bool {
        self.beats(a, b) || self.tied(a, b)
    }

    pub fn strict_edges(&self) -> Vec<(Candidate, Candidate)> {
        self.pairs(|a, b| self.beats(a, b))
    }

    /// Tied pairs `(a, b)` with `a < b`.
    pub fn tie_pairs(&self) -> Vec<(Candidate, Candidate)> {
        self.pairs(|a, b| a < b && self.tied(a, b))
    }

    fn pairs(&self, keep: impl Fn(Candidate, Candidate) -> bool) -> Vec<(Candidate, Candidate)> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in 0..self.m {
                if a != b && keep(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn strict_outdegree(&self, a: Candidate) -> usize {
        (0..self.m).filter(|&b| self.beats(a, b)).count()
    }

    pub fn weak_outdegree(&self, a: Candidate) -> usize {
        (0..self.m).filter(|&b| b != a && self.weakly_beats(a, b)).count()
    }

    /// No tied pairs, i.e. M(E) is a tournament.
    pub fn is_tournament(&self) -> bool {
        !self.tie.iter().any(|&t| t)
    }

    fn adjacency(&self, source: GraphSource) -> Vec<Vec<Candidate>> {
        (0..self.m)
            .map(|a| {
                (0..self.m)
                    .filter(|&b| match source {
                        GraphSource::Strict => self.beats(a, b),
                        GraphSource::Weak => a != b && self.weakly_beats(a, b),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Which majority graph a condensation is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSource {
    Strict,
    Weak,
}

/// Strongly connected components of a majority graph, listed so that every
/// edge between blocks points from an earlier block to a later one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensationChain {
    pub source: GraphSource,
    /// Disjoint candidate sets covering all candidates, each sorted.
    pub blocks: Vec<Vec<Candidate>>,
    /// Whether consecutive blocks are always joined by an edge, i.e. the
    /// block order is the only topological order of the condensation.
    pub is_total: bool,
}

impl CondensationChain {
    /// Block index of every candidate.
    pub fn block_of(&self) -> Vec<usize> {
        let m = self.blocks.iter().map(Vec::len).sum();
        let mut out = vec![0; m];
        for (i, block) in self.blocks.iter().enumerate() {
            for &c in block {
                out[c] = i;
            }
        }
        out
    }

    /// Predecessor blocks of every block in the condensation DAG.
    pub fn block_predecessors(&self, graphs: &MajorityGraphs) -> Vec<Vec<usize>> {
        let block_of = self.block_of();
        let mut preds = vec![Vec::new(); self.blocks.len()];
        let adj = graphs.adjacency(self.source);
        for (a, succ) in adj.iter().enumerate() {
            for &b in succ {
                let (ba, bb) = (block_of[a], block_of[b]);
                if ba != bb && !preds[bb].contains(&ba) {
                    preds[bb].push(ba);
                }
            }
        }
        for p in &mut preds {
            p.sort_unstable();
        }
        preds
    }
}

/// Tarjan's algorithm, iterative. Returns the component id of every vertex;
/// ids are assigned in reverse topological order of the condensation.
fn strongly_connected(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    (comp, next_comp)
}

/// Condenses the chosen majority graph into its strongly connected blocks.
///
/// Blocks come out in a topological order of the condensation; where several
/// blocks are available the one holding the smallest candidate index goes
/// first. For the weak graph that order is always total and every member of
/// an earlier block beats every member of a later one.
pub fn condensation_chain(graphs: &MajorityGraphs, source: GraphSource) -> CondensationChain {
    let adj = graphs.adjacency(source);
    let (comp, count) = strongly_connected(&adj);
    let mut blocks = vec![Vec::new(); count];
    for (c, &id) in comp.iter().enumerate() {
        blocks[id].push(c);
    }
    let mut indegree = vec![0usize; count];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (a, out) in adj.iter().enumerate() {
        for &b in out {
            let (x, y) = (comp[a], comp[b]);
            if x != y && !succ[x].contains(&y) {
                succ[x].push(y);
                indegree[y] += 1;
            }
        }
    }
    // Kahn's algorithm keyed by the smallest candidate in each block
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
        .filter(|&id| indegree[id] == 0)
        .map(|id| Reverse((blocks[id][0], id)))
        .collect();
    let mut order = Vec::with_capacity(count);
    while let Some(Reverse((_, id))) = ready.pop() {
        order.push(id);
        for &next in &succ[id] {
            indegree[next] -= 1;
            if indegree[next] == 0 {
                ready.push(Reverse((blocks[next][0], next)));
            }
        }
    }
    let is_total = order.windows(2).all(|w| succ[w[0]].contains(&w[1]));
    CondensationChain {
        source,
        blocks: order.into_iter().map(|id| std::mem::take(&mut blocks[id])).collect(),
        is_total,
    }
}

/// Condorcet winner (strict outdegree `m - 1`) and weak Condorcet winners
/// (weak outdegree `m - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondorcetWinners {
    pub strong: Option<Candidate>,
    pub weak: Vec<Candidate>,
}

pub fn condorcet_winners(graphs: &MajorityGraphs) -> CondorcetWinners {
    let m = graphs.num_candidates();
    CondorcetWinners {
        strong: (0..m).find(|&c| graphs.strict_outdegree(c) == m - 1),
        weak: (0..m).filter(|&c| graphs.weak_outdegree(c) == m - 1).collect(),
    }
}

/// The majority preference order, best first, when M(E) is a transitive
/// tournament.
pub fn majority_order(graphs: &MajorityGraphs) -> Option<Vec<Candidate>> {
    if !graphs.is_tournament() {
        return None;
    }
    let m = graphs.num_candidates();
    // a tournament is transitive iff its outdegrees are exactly 0..m-1
    let mut by_degree = vec![None; m];
    for c in 0..m {
        let d = graphs.strict_outdegree(c);
        if by_degree[m - 1 - d].replace(c).is_some() {
            return None;
        }
    }
    by_degree.into_iter().collect()
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

    /// Majority cycle a -> b -> c -> a realised with three voters.
    fn cycle3() -> Election {
        Election::from_labels(
            ["a", "b", "c"],
            [["a", "b", "c"], ["b", "c", "a"], ["c", "a", "b"]],
        )
        .unwrap()
    }

    // brute-force reachability oracle for the SCC tests
    fn reach(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
        let n = adj.len();
        let mut r = adj.to_vec();
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r
    }

    #[test]
    fn tallies() {
        let t = tally_pairwise(&example3());
        assert_eq!((t.get(1, 0), t.get(0, 1)), (4, 3));
        let single = Election::from_labels(["a", "b"], [["a", "b"]]).unwrap();
        let t = tally_pairwise(&single);
        assert_eq!((t.get(0, 1), t.get(1, 0)), (1, 0));
        let t = tally_pairwise(&split_pair());
        assert_eq!((t.get(0, 1), t.get(1, 0)), (1, 1));
    }

    #[test]
    fn example3_graphs() {
        let g = MajorityGraphs::from_election(&example3());
        assert_eq!(g.strict_edges(), vec![(1, 0), (2, 0), (2, 1)]);
        assert!(g.tie_pairs().is_empty());
        let chain = condensation_chain(&g, GraphSource::Weak);
        assert_eq!(chain.blocks, vec![vec![2], vec![1], vec![0]]);
        assert!(chain.is_total);
        assert_eq!(
            condorcet_winners(&g),
            CondorcetWinners {
                strong: Some(2),
                weak: vec![2]
            }
        );
        assert_eq!(majority_order(&g), Some(vec![2, 1, 0]));
    }

    #[test]
    fn tie_graphs() {
        let g = MajorityGraphs::from_election(&split_pair());
        assert_eq!(g.tie_pairs(), vec![(0, 1)]);
        assert!(g.strict_edges().is_empty());
        let chain = condensation_chain(&g, GraphSource::Weak);
        assert_eq!(chain.blocks, vec![vec![0, 1]]);
        assert_eq!(
            condorcet_winners(&g),
            CondorcetWinners {
                strong: None,
                weak: vec![0, 1]
            }
        );
        assert_eq!(majority_order(&g), None);
        // the strict graph has two incomparable singleton blocks
        let strict = condensation_chain(&g, GraphSource::Strict);
        assert_eq!(strict.blocks, vec![vec![0], vec![1]]);
        assert!(!strict.is_total);
    }

    #[test]
    fn cycle_graphs() {
        let g = MajorityGraphs::from_election(&cycle3());
        assert_eq!(g.strict_edges(), vec![(0, 1), (1, 2), (2, 0)]);
        let chain = condensation_chain(&g, GraphSource::Weak);
        assert_eq!(chain.blocks, vec![vec![0, 1, 2]]);
        let w = condorcet_winners(&g);
        assert_eq!(w.strong, None);
        assert!(w.weak.is_empty());
        assert_eq!(majority_order(&g), None);
    }

    #[test]
    fn scc_matches_reachability_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..9);
            let adj: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| i != j && rng.random_bool(0.3)).collect())
                .collect();
            let lists: Vec<Vec<usize>> = adj
                .iter()
                .map(|row| (0..n).filter(|&j| row[j]).collect())
                .collect();
            let (comp, _) = strongly_connected(&lists);
            let r = reach(&adj);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(comp[i] == comp[j], r[i][j] && r[j][i]);
                }
            }
        }
    }
}
