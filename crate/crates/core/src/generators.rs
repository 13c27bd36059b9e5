//! Instance builders: McGarvey realisations, the worked examples, the three
//! hardness reductions and seeded random profiles.
//!
//! Wherever a ballot is only partly specified, the unlisted candidates follow
//! in candidate index order. None of the properties the examples and
//! reductions are built for depend on these tails.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domains::{detect_party_list, find_single_peaked_axis, is_single_crossing};
use crate::election::{Candidate, Committee, Election};
use crate::error::{Error, Result};

/// A digraph to realise as a majority graph; pairs without an edge become
/// ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetDigraph {
    labels: Vec<String>,
    edges: Vec<(Candidate, Candidate)>,
}

impl TargetDigraph {
    /// Vertices labelled `c1..cm`.
    pub fn new(m: usize, edges: Vec<(Candidate, Candidate)>) -> Result<Self> {
        Self::with_labels(numbered("c", m), edges)
    }

    pub fn with_labels(labels: Vec<String>, mut edges: Vec<(Candidate, Candidate)>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::EmptyElection);
        }
        edges.sort_unstable();
        edges.dedup();
        for &(a, b) in &edges {
            if a >= m || b >= m {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: a.max(b),
                    limit: m,
                });
            }
            if a == b {
                return Err(Error::InvalidDigraph(format!("self-loop on vertex {a}")));
            }
            if edges.binary_search(&(b, a)).is_ok() {
                return Err(Error::InvalidDigraph(format!("both directions between {a} and {b}")));
            }
        }
        Ok(TargetDigraph { labels, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[(Candidate, Candidate)] {
        &self.edges
    }
}

fn numbered(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// Two voters per edge `a -> b`: `a b rest` with the rest ascending, and
/// `rest a b` with the rest descending. Every edge wins 2 to 0 and every
/// other pair ties. Without edges, one ascending and one descending voter.
pub fn mcgarvey_election(g: &TargetDigraph) -> Election {
    let m = g.num_vertices();
    let mut rankings = Vec::with_capacity(2 * g.edges.len().max(1));
    if g.edges.is_empty() {
        rankings.push((0..m).collect());
        rankings.push((0..m).rev().collect());
    }
    for &(a, b) in &g.edges {
        let rest = (0..m).filter(|&c| c != a && c != b);
        let mut up = vec![a, b];
        up.extend(rest.clone());
        let mut down: Vec<Candidate> = rest.rev().collect();
        down.extend([a, b]);
        rankings.push(up);
        rankings.push(down);
    }
    Election::from_indices(g.labels.clone(), rankings).expect("rankings are permutations")
}

/// Completes a ballot prefix with the remaining candidates in index order.
fn complete(prefix: &[Candidate], m: usize) -> Vec<Candidate> {
    let mut ranking = prefix.to_vec();
    ranking.extend((0..m).filter(|c| !prefix.contains(c)));
    ranking
}

/// Cyclic `x y z` rotations, two voters each, for one triple.
fn rotations(x: Candidate, y: Candidate, z: Candidate, m: usize) -> Vec<Vec<Candidate>> {
    [[x, y, z], [y, z, x], [z, x, y]]
        .iter()
        .flat_map(|p| [complete(p, m), complete(p, m)])
        .collect()
}

/// An election with no locally stable committee of size `2d + 1` for quota
/// 4: four `a b` voters, four `b a` voters and the cyclic `x_i y_i z_i`
/// rotations. Returns the election and `k`.
pub fn gen_example1(d: usize) -> Result<(Election, usize)> {
    if d < 2 {
        return Err(Error::PreconditionViolated(format!("d must be at least 2, got {d}")));
    }
    let mut labels = vec!["a".to_string(), "b".to_string()];
    for p in ["x", "y", "z"] {
        labels.extend(numbered(p, d));
    }
    let m = labels.len();
    let mut rankings = Vec::with_capacity(6 * d + 8);
    rankings.extend(std::iter::repeat_n(complete(&[0, 1], m), 4));
    rankings.extend(std::iter::repeat_n(complete(&[1, 0], m), 4));
    for i in 0..d {
        rankings.extend(rotations(2 + i, 2 + d + i, 2 + 2 * d + i, m));
    }
    Ok((Election::from_indices(labels, rankings)?, 2 * d + 1))
}

const FIG1: [&str; 15] = [
    "a b c d e f g h i j k",
    "a b c d e f g h i j k",
    "b c a d e f g h i j k",
    "c b a d e f g h i j k",
    "c b d a e f g h i j k",
    "d c b a e f g h i j k",
    "d c e b a f g h i j k",
    "f d e c b a g h i j k",
    "g h f d e c b a i j k",
    "h g f d e c b a i j k",
    "h g f i e d c b a j k",
    "i h g f e d c b a j k",
    "j i h g f e d c b a k",
    "j i k h g f e d c b a",
    "k j i h g f e d c b a",
];

/// The 15-voter, 11-candidate single-crossing election.
pub fn gen_fig1() -> Election {
    let labels: Vec<String> = ('a'..='k').map(String::from).collect();
    let rankings: Vec<Vec<&str>> = FIG1.iter().map(|r| r.split(' ').collect()).collect();
    let e = Election::from_labels(labels, rankings).expect("fixed profile");
    debug_assert!(is_single_crossing(&e));
    e
}

/// Three `a b c` voters followed by four `c b a` voters.
pub fn gen_example3() -> Election {
    let mut rankings = vec![vec![0, 1, 2]; 3];
    rankings.extend(vec![vec![2, 1, 0]; 4]);
    let labels = ["a", "b", "c"].map(String::from).to_vec();
    Election::from_indices(labels, rankings).expect("fixed profile")
}

/// Parties X, Y, Z of four candidates each with 8, 4 and 4 supporters;
/// committee size 4.
pub fn gen_example4() -> (Election, usize) {
    let mut labels = Vec::new();
    for p in ["x", "y", "z"] {
        labels.extend(numbered(p, 4));
    }
    let block = |p: usize| -> Vec<Candidate> { (4 * p..4 * p + 4).collect() };
    let mut rankings = Vec::with_capacity(16);
    for (p, count) in [(0, 8), (1, 4), (2, 4)] {
        rankings.extend(std::iter::repeat_n(complete(&block(p), 12), count));
    }
    (Election::from_indices(labels, rankings).expect("fixed profile"), 4)
}

/// Partially ordered knapsack with sizes equal to weights: choose whole
/// items of total weight exactly `target`, closed under predecessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PokInstance {
    pub weights: Vec<usize>,
    /// Precedence arcs `(i, j)`: taking item `j` requires item `i`.
    pub arcs: Vec<(usize, usize)>,
    pub target: usize,
}

impl PokInstance {
    fn validate(&self) -> Result<()> {
        let r = self.weights.len();
        if r == 0 {
            return Err(Error::EmptyElection);
        }
        for (item, &weight) in self.weights.iter().enumerate() {
            if weight == 0 || weight == 2 {
                return Err(Error::UnsupportedWeight { item, weight });
            }
        }
        let mut indeg = vec![0usize; r];
        let mut succ = vec![Vec::new(); r];
        for &(i, j) in &self.arcs {
            if i >= r || j >= r {
                return Err(Error::IndexOutOfRange {
                    what: "item",
                    index: i.max(j),
                    limit: r,
                });
            }
            succ[i].push(j);
            indeg[j] += 1;
        }
        let mut ready: Vec<usize> = (0..r).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = ready.pop() {
            seen += 1;
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
        if seen < r {
            return Err(Error::CyclicPrecedence);
        }
        let total: usize = self.weights.iter().sum();
        if self.target == 0 || self.target > total {
            return Err(Error::BoundOutOfRange {
                t: self.target,
                limit: total,
            });
        }
        Ok(())
    }
}

/// Knapsack items become blocks of candidates that form strongly connected
/// tournaments (a directed Hamiltonian cycle, other pairs oriented low to
/// high); each precedence arc becomes edges from every candidate of the
/// earlier block to every candidate of the later one. Weakly stable
/// committees of size `target` are exactly the unions of feasible item sets.
pub fn reduce_pok(inst: &PokInstance) -> Result<(Election, usize)> {
    inst.validate()?;
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    for (i, &w) in inst.weights.iter().enumerate() {
        let start = labels.len();
        labels.extend((1..=w).map(|j| format!("c{}_{}", i + 1, j)));
        blocks.push(start..start + w);
    }
    let mut edges = Vec::new();
    for block in &blocks {
        let w = block.len();
        for a in 0..w {
            for b in a + 1..w {
                let cyclic_back = a == 0 && b == w - 1 && w > 2;
                let (from, to) = if cyclic_back { (b, a) } else { (a, b) };
                edges.push((block.start + from, block.start + to));
            }
        }
    }
    for &(i, j) in &inst.arcs {
        for a in blocks[i].clone() {
            edges.extend(blocks[j].clone().map(|b| (a, b)));
        }
    }
    let g = TargetDigraph::with_labels(labels, edges)?;
    Ok((mcgarvey_election(&g), inst.target))
}

/// A simple undirected graph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: u.max(v),
                    limit: vertices,
                });
            }
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidDigraph(format!("loop or repeated edge {u}-{v}")));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| (a == v).then_some(b).or((b == v).then_some(a)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        self.edges.iter().all(|(a, b)| cover.contains(a) || cover.contains(b))
    }
}

/// Vertex cover of size `t` in a 3-regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vc3Instance {
    pub graph: Graph,
    pub t: usize,
}

/// Candidates are the vertices plus `x_j, y_j, z_j` for each of the `1.5r`
/// edge indices. Each edge contributes voters `u v ...` and `v u ...`; each
/// `j` contributes the `x y z` rotations twice. The Droop quota is 4 and a
/// committee of size `t + 3r` is locally stable exactly when its vertex part
/// is a cover.
pub fn reduce_vc3(inst: &Vc3Instance) -> Result<(Election, usize)> {
    let g = &inst.graph;
    let r = g.vertices;
    for v in 0..r {
        let degree = g.degree(v);
        if degree != 3 {
            return Err(Error::NotThreeRegular { vertex: v, degree });
        }
    }
    if inst.t == 0 || inst.t + 1 >= r {
        return Err(Error::BoundOutOfRange {
            t: inst.t,
            limit: r.saturating_sub(1),
        });
    }
    let h = g.edges.len();
    let mut labels = numbered("v", r);
    for p in ["x", "y", "z"] {
        labels.extend(numbered(p, h));
    }
    let m = labels.len();
    let mut rankings = Vec::with_capacity(12 * r);
    for &(u, v) in &g.edges {
        rankings.push(complete(&[u, v], m));
        rankings.push(complete(&[v, u], m));
    }
    for j in 0..h {
        rankings.extend(rotations(r + j, r + h + j, r + 2 * h + j, m));
    }
    Ok((Election::from_indices(labels, rankings)?, inst.t + 3 * r))
}

/// Multicoloured clique with `colors` colour classes of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    pub graph: Graph,
    pub colors: usize,
    /// Colour of each vertex, `0..colors`.
    pub coloring: Vec<usize>,
}

impl MccInstance {
    fn validate(&self) -> Result<()> {
        let (s, u) = (self.colors, self.graph.vertices);
        let fail = |msg: String| Err(Error::PreconditionViolated(msg));
        if s <= 2 {
            return fail(format!("need more than 2 colours, got {s}"));
        }
        if self.coloring.len() != u {
            return fail(format!("{} colours given for {u} vertices", self.coloring.len()));
        }
        if u == 0 || u % (s * s) != 0 {
            return fail(format!("{u} vertices is not a positive multiple of {}", s * s));
        }
        for c in 0..s {
            let size = self.coloring.iter().filter(|&&x| x == c).count();
            if size != u / s {
                return fail(format!("colour class {c} has {size} vertices, expected {}", u / s));
            }
        }
        if let Some(&(a, b)) = self
            .graph
            .edges
            .iter()
            .find(|&&(a, b)| self.coloring[a] == self.coloring[b])
        {
            return fail(format!("vertices {a} and {b} share a colour but are adjacent"));
        }
        Ok(())
    }

    /// Brute force over one vertex per colour.
    pub fn has_multicolored_clique(&self) -> bool {
        let classes: Vec<Vec<usize>> = (0..self.colors)
            .map(|c| (0..self.graph.vertices).filter(|&v| self.coloring[v] == c).collect())
            .collect();
        fn extend(g: &Graph, classes: &[Vec<usize>], picked: &mut Vec<usize>) -> bool {
            let Some(class) = classes.get(picked.len()) else {
                return true;
            };
            for &v in class {
                if picked.iter().all(|&p| g.adjacent(p, v)) {
                    picked.push(v);
                    if extend(g, classes, picked) {
                        return true;
                    }
                    picked.pop();
                }
            }
            false
        }
        extend(&self.graph, &classes, &mut Vec::new())
    }
}

/// Builds an election and the committee `S = {w_1, ..., w_{s+2}}` such that
/// `S` fails full local stability exactly when the graph has a multicoloured
/// clique. Vertex candidates come first (`u1..`), then `w1..w_{s+2}`.
pub fn reduce_mcc(inst: &MccInstance) -> Result<(Election, Committee)> {
    inst.validate()?;
    let (s, u) = (inst.colors, inst.graph.vertices);
    let w = |i: usize| u + i - 1;
    let mut labels = numbered("u", u);
    labels.extend(numbered("w", s + 2));
    let class = |c: usize| (0..u).filter(move |&v| inst.coloring[v] == c);
    let mut rankings = Vec::with_capacity((s + 3) * u + s + 1);
    for a in 0..u {
        let near = inst.graph.neighbours(a);
        let mut ranking = vec![a];
        ranking.extend(&near);
        ranking.extend((1..=s + 1).map(w));
        ranking.extend((0..u).filter(|&b| b != a && !near.contains(&b)));
        ranking.push(w(s + 2));
        rankings.push(ranking);
    }
    let block = (s + 1) * u / (s * s);
    for i in 1..=s {
        for j in 1..=s {
            let mut ranking = vec![w(s + 1)];
            for step in 0..s {
                ranking.extend(class((i + step) % s));
                ranking.push(w((j + step) % s + 1));
            }
            ranking.push(w(s + 2));
            rankings.extend(std::iter::repeat_n(ranking, block));
        }
    }
    let mut top_s: Vec<Candidate> = (1..=s + 2).map(w).collect();
    top_s.extend(0..u);
    rankings.extend(std::iter::repeat_n(top_s, u + s + 1));
    let e = Election::from_indices(labels, rankings)?;
    let committee = Committee::new((1..=s + 2).map(w).collect(), e.num_candidates())?;
    Ok((e, committee))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    ImpartialCulture,
    SinglePeaked,
    SingleCrossing,
    /// Parties of at least `k` candidates, each supported by some voters.
    PartyList { k: usize },
}

/// A seeded random profile over candidates `c1..cm`; the same seed always
/// gives the same election.
pub fn random_election(model: Model, m: usize, n: usize, seed: u64) -> Result<Election> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyElection);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rankings = match model {
        Model::ImpartialCulture => (0..n).map(|_| shuffled(m, &mut rng)).collect(),
        Model::SinglePeaked => {
            let axis = shuffled(m, &mut rng);
            (0..n).map(|_| peaked_ranking(&axis, &mut rng)).collect()
        }
        Model::SingleCrossing => crossing_profile(m, n, &mut rng),
        Model::PartyList { k } => party_profile(m, n, k, &mut rng)?,
    };
    let e = Election::from_indices(numbered("c", m), rankings)?;
    let valid = match model {
        Model::ImpartialCulture => true,
        Model::SinglePeaked => find_single_peaked_axis(&e).is_some(),
        Model::SingleCrossing => is_single_crossing(&e),
        Model::PartyList { k } => detect_party_list(&e, k).is_some(),
    };
    assert!(valid, "generated profile lost its structure");
    Ok(e)
}

fn shuffled(m: usize, rng: &mut ChaCha8Rng) -> Vec<Candidate> {
    let mut v: Vec<Candidate> = (0..m).collect();
    v.shuffle(rng);
    v
}

fn peaked_ranking(axis: &[Candidate], rng: &mut ChaCha8Rng) -> Vec<Candidate> {
    let peak = rng.random_range(0..axis.len());
    let (mut lo, mut hi) = (peak, peak);
    let mut ranking = vec![axis[peak]];
    while ranking.len() < axis.len() {
        let go_left = hi + 1 == axis.len() || (lo > 0 && rng.random_bool(0.5));
        if go_left {
            lo -= 1;
            ranking.push(axis[lo]);
        } else {
            hi += 1;
            ranking.push(axis[hi]);
        }
    }
    ranking
}

/// Random adjacent swaps that each fix an inversion against a random target
/// order; no pair is swapped twice, so any subsequence of the path is
/// single-crossing.
fn crossing_profile(m: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Candidate>> {
    let mut current = shuffled(m, rng);
    let target = shuffled(m, rng);
    let mut rank = vec![0; m];
    for (i, &c) in target.iter().enumerate() {
        rank[c] = i;
    }
    let mut path = vec![current.clone()];
    loop {
        let out_of_order: Vec<usize> = (0..m.saturating_sub(1))
            .filter(|&i| rank[current[i]] > rank[current[i + 1]])
            .collect();
        let Some(&i) = out_of_order.choose(rng) else {
            break;
        };
        current.swap(i, i + 1);
        path.push(current.clone());
    }
    let mut picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..path.len())).collect();
    picks.sort_unstable();
    picks.into_iter().map(|i| path[i].clone()).collect()
}

fn party_profile(m: usize, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Candidate>>> {
    if k == 0 || k > m {
        return Err(Error::IndexOutOfRange {
            what: "committee size",
            index: k,
            limit: m,
        });
    }
    let parties_max = (m / k).min(n);
    let p = rng.random_range(1..=parties_max);
    let order = shuffled(m, rng);
    // each party gets k candidates, the rest are spread at random
    let mut sizes = vec![k; p];
    for _ in 0..m - p * k {
        sizes[rng.random_range(0..p)] += 1;
    }
    let mut parties = Vec::with_capacity(p);
    let mut start = 0;
    for size in sizes {
        parties.push(order[start..start + size].to_vec());
        start += size;
    }
    let mut support: Vec<usize> = (0..n).map(|v| if v < p { v } else { rng.random_range(0..p) }).collect();
    support.shuffle(rng);
    Ok(support
        .into_iter()
        .map(|party| {
            let mut ranking = parties[party].clone();
            let mut rest: Vec<Candidate> = (0..m).filter(|c| !ranking.contains(c)).collect();
            rest.shuffle(rng);
            ranking.extend(rest);
            ranking
        })
        .collect())
}

/// A few small 3-regular graphs: K4, the 3-prism, K3,3 and the Petersen
/// graph.
pub fn cubic_graph(name: &str) -> Option<Graph> {
    let edges: Vec<(usize, usize)> = match name {
        "k4" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "prism" => vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        "k33" => (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        "petersen" => (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
            .collect(),
        _ => return None,
    };
    let vertices = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
    Graph::new(vertices, edges).ok()
}
