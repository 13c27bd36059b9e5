//! Execution strategy for the enumerative searches.
//!
//! With the `parallel` feature (on by default) the searches split their work
//! across a rayon pool. Results are always merged in the same order as the
//! sequential path produces them, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on the number of objects a search may enumerate.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise falls
    /// back to [`Exec::Sequential`].
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Options shared by every exponential search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            exec: Exec::Sequential,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub(crate) fn ensure(&self, estimated: u128) -> crate::Result<()> {
        if estimated > self.budget as u128 {
            return Err(crate::Error::InstanceTooLarge {
                estimated,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `visit` on every `k`-subset of `pool` whose first element is
/// `pool[first]`, in lexicographic order of positions.
fn for_each_with_first<F: FnMut(&[usize])>(pool: &[usize], k: usize, first: usize, mut visit: F) {
    let len = pool.len();
    let mut idx: Vec<usize> = (first..first + k).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        visit(&buf);
        // advance positions 1..k, leaving position 0 fixed
        let mut j = k;
        loop {
            if j <= 1 {
                return;
            }
            j -= 1;
            if idx[j] < len - (k - j) {
                break;
            }
        }
        idx[j] += 1;
        buf[j] = pool[idx[j]];
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
            buf[t] = pool[idx[t]];
        }
    }
}

/// Visits `k`-subsets of `pool` in lexicographic order until `visit` returns
/// `false`.
pub fn for_each_combination<F: FnMut(&[usize]) -> bool>(pool: &[usize], k: usize, mut visit: F) {
    if k == 0 {
        visit(&[]);
        return;
    }
    if k > pool.len() {
        return;
    }
    let mut go = true;
    for first in 0..=pool.len() - k {
        for_each_with_first(pool, k, first, |set| {
            if go {
                go = visit(set);
            }
        });
        if !go {
            return;
        }
    }
}

/// All `k`-subsets of `pool` (in lexicographic order of pool positions) that
/// satisfy `keep`. `init` builds per-worker scratch state.
pub fn filter_combinations<S, I, P>(
    pool: &[usize],
    k: usize,
    exec: Exec,
    init: I,
    keep: P,
) -> Vec<Vec<usize>>
where
    I: Fn() -> S + Sync + Send,
    P: Fn(&mut S, &[usize]) -> bool + Sync + Send,
{
    if k == 0 {
        let mut scratch = init();
        return if keep(&mut scratch, &[]) { vec![vec![]] } else { vec![] };
    }
    if k > pool.len() {
        return vec![];
    }
    let firsts = 0..=pool.len() - k;
    let run = |scratch: &mut S, first: usize| {
        let mut out = Vec::new();
        for_each_with_first(pool, k, first, |set| {
            if keep(scratch, set) {
                out.push(set.to_vec());
            }
        });
        out
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let chunks: Vec<Vec<Vec<usize>>> = firsts
            .into_par_iter()
            .map_init(&init, |scratch, first| run(scratch, first))
            .collect();
        return chunks.into_iter().flatten().collect();
    }
    let _ = exec;
    let mut scratch = init();
    firsts.flat_map(|first| run(&mut scratch, first)).collect()
}

/// Maps `f` over `items`, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
