//! Branch-and-bound over relations between two finite point sets.
//!
//! A relation is a set of pairs `(i, j)`; its cost is the maximum of a pair
//! cost `c((i, j), (i', j'))` over all pairs of members (a member paired with
//! itself included). Every objective used here depends only on the two
//! distances `d_A(i, i')` and `d_B(j, j')`, so costs are tabulated once on the
//! distinct distance values and the search runs on integer ranks. Comparisons
//! are therefore exact in both numeric modes.
//!
//! The search covers rows and columns one uncovered element at a time. At
//! every node it picks the uncovered element with the fewest viable pairs and
//! branches on those pairs in order of incremental cost. Because any relation
//! of cost `D` contains a covering sub-relation of cost `<= D`, this finds an
//! optimum among all correspondences, not only minimal ones.

use crate::scalar::{cmp_scalar, Scalar};
use crate::space::FiniteMetricSpace;

/// Rank used for pairs that may never appear together.
pub(crate) const INF_RANK: u32 = u32::MAX;

/// Refuse to tabulate more than this many distance-value combinations.
pub(crate) const MAX_TABLE: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Correspondence,
    Bijection,
}

/// Pair costs on ranks, plus the sorted distinct cost values.
pub(crate) struct CostTable<C> {
    na: usize,
    nb: usize,
    rank_a: Vec<u32>,
    rank_b: Vec<u32>,
    distinct_b: usize,
    table: Vec<u32>,
    pub(crate) levels: Vec<C>,
}

impl<C: Scalar> CostTable<C> {
    /// Tabulates `cost(d_A(i,i'), d_B(j,j'))`; `None` means "never together".
    pub(crate) fn build<S: Scalar>(
        a: &FiniteMetricSpace<S>,
        b: &FiniteMetricSpace<S>,
        cost: impl Fn(S, S) -> Option<C>,
    ) -> Option<Self> {
        let (values_a, rank_a) = rank_distances(a);
        let (values_b, rank_b) = rank_distances(b);
        if values_a.len().checked_mul(values_b.len())? > MAX_TABLE {
            return None;
        }
        let raw: Vec<Option<C>> = values_a
            .iter()
            .flat_map(|&x| values_b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| cost(x, y))
            .collect();
        let mut levels: Vec<C> = raw.iter().flatten().copied().collect();
        levels.sort_by(cmp_scalar);
        levels.dedup_by(|x, y| x == y);
        let table = raw
            .iter()
            .map(|c| match c {
                Some(c) => levels.partition_point(|l| l < c) as u32,
                None => INF_RANK,
            })
            .collect();
        Some(CostTable {
            na: a.len(),
            nb: b.len(),
            rank_a,
            rank_b,
            distinct_b: values_b.len(),
            table,
            levels,
        })
    }

    #[inline]
    pub(crate) fn cost(&self, v: usize, w: usize) -> u32 {
        let (i, j) = (v / self.nb, v % self.nb);
        let (k, l) = (w / self.nb, w % self.nb);
        let ra = self.rank_a[i * self.na + k] as usize;
        let rb = self.rank_b[j * self.nb + l] as usize;
        self.table[ra * self.distinct_b + rb]
    }

    pub(crate) fn pair(&self, i: usize, j: usize) -> usize {
        i * self.nb + j
    }

    pub(crate) fn unpair(&self, v: usize) -> (usize, usize) {
        (v / self.nb, v % self.nb)
    }

    /// Number of levels strictly below `bound` (a cutoff for "cost < bound").
    pub(crate) fn cutoff_below(&self, bound: C) -> u32 {
        self.levels.partition_point(|l| *l < bound) as u32
    }

    /// Number of levels `<= bound` up to tolerance.
    pub(crate) fn cutoff_at_most(&self, bound: C) -> u32 {
        self.levels.partition_point(|l| l.approx_le(bound)) as u32
    }

    /// Cost rank of an arbitrary relation.
    pub(crate) fn relation_cost(&self, pairs: &[usize]) -> u32 {
        let mut worst = 0;
        for (x, &v) in pairs.iter().enumerate() {
            for &w in &pairs[x..] {
                worst = worst.max(self.cost(v, w));
            }
        }
        worst
    }

    pub(crate) fn level(&self, rank: u32) -> Option<C> {
        self.levels.get(rank as usize).copied()
    }
}

fn rank_distances<S: Scalar>(m: &FiniteMetricSpace<S>) -> (Vec<S>, Vec<u32>) {
    let n = m.len();
    let mut values: Vec<S> = m.rows().flatten().copied().collect();
    values.sort_by(cmp_scalar);
    values.dedup_by(|x, y| x == y);
    let mut ranks = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = m.dist(i, j);
            ranks.push(values.partition_point(|x| *x < v) as u32);
        }
    }
    (values, ranks)
}

pub(crate) struct SearchConfig {
    pub mode: Mode,
    pub budget: u64,
    /// Only relations with cost rank `< cutoff` are accepted.
    pub cutoff: u32,
    pub stop_at_first: bool,
    pub required: Vec<usize>,
    /// A known relation; the search then looks for strictly cheaper ones.
    pub incumbent: Option<Vec<usize>>,
}

pub(crate) struct SearchResult {
    pub best: Option<(u32, Vec<usize>)>,
    /// True when the search space was exhausted (or an optimum at rank 0 was
    /// reached) without hitting the node budget. A search stopped at its
    /// first solution is not complete.
    pub complete: bool,
    pub nodes: u64,
}

struct Dfs<'t, C> {
    t: &'t CostTable<C>,
    mode: Mode,
    budget: u64,
    nodes: u64,
    best_rank: u32,
    best: Option<(u32, Vec<usize>)>,
    stop_at_first: bool,
    stopped_first: bool,
    aborted: bool,
    done: bool,
    row_cover: Vec<u32>,
    col_cover: Vec<u32>,
    chosen: Vec<usize>,
    inc_stack: Vec<Vec<u32>>,
}

pub(crate) fn run<C: Scalar>(t: &CostTable<C>, cfg: SearchConfig) -> SearchResult {
    let (na, nb) = (t.na, t.nb);
    let npairs = na * nb;
    let mut best_rank = cfg.cutoff;
    let mut best = None;
    if let Some(inc) = cfg.incumbent {
        let c = t.relation_cost(&inc);
        if c < best_rank {
            best_rank = c;
            best = Some((c, inc));
        }
    }
    let mut dfs = Dfs {
        t,
        mode: cfg.mode,
        budget: cfg.budget,
        nodes: 0,
        best_rank,
        best,
        stop_at_first: cfg.stop_at_first,
        stopped_first: false,
        aborted: false,
        done: false,
        row_cover: vec![0; na],
        col_cover: vec![0; nb],
        chosen: Vec::new(),
        inc_stack: Vec::new(),
    };
    if dfs.best_rank == 0 && dfs.best.is_some() {
        return SearchResult {
            best: dfs.best,
            complete: true,
            nodes: 0,
        };
    }
    if cfg.stop_at_first && dfs.best.is_some() {
        return SearchResult {
            best: dfs.best,
            complete: false,
            nodes: 0,
        };
    }
    if cfg.mode == Mode::Bijection && na != nb {
        return SearchResult {
            best: dfs.best,
            complete: true,
            nodes: 0,
        };
    }

    let mut inc: Vec<u32> = (0..npairs).map(|v| t.cost(v, v)).collect();
    let mut cost = 0u32;
    for &v in &cfg.required {
        let (i, j) = t.unpair(v);
        if dfs.chosen.contains(&v) {
            continue;
        }
        if cfg.mode == Mode::Bijection && (dfs.row_cover[i] > 0 || dfs.col_cover[j] > 0) {
            return SearchResult {
                best: dfs.best,
                complete: true,
                nodes: 0,
            };
        }
        cost = cost.max(inc[v]);
        for (w, slot) in inc.iter_mut().enumerate() {
            *slot = (*slot).max(t.cost(v, w));
        }
        dfs.chosen.push(v);
        dfs.row_cover[i] += 1;
        dfs.col_cover[j] += 1;
    }
    if cost < dfs.best_rank {
        dfs.inc_stack = vec![vec![0; npairs]; na + nb + 2];
        dfs.descend(cost, &inc, 0);
    }
    let complete = !dfs.aborted && !dfs.stopped_first;
    SearchResult {
        best: dfs.best,
        complete,
        nodes: dfs.nodes,
    }
}

impl<C: Scalar> Dfs<'_, C> {
    fn viable(&self, v: usize, cost: u32, inc: &[u32]) -> Option<u32> {
        let c = cost.max(inc[v]);
        (c < self.best_rank).then_some(c)
    }

    fn descend(&mut self, cost: u32, inc: &[u32], depth: usize) {
        if self.done || self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let (na, nb) = (self.t.na, self.t.nb);
        let bijective = self.mode == Mode::Bijection;

        // Most constrained uncovered element.
        let mut pick: Option<(bool, usize, usize, u32)> = None; // (is_row, index, count, min)
        let mut lower = cost;
        for i in 0..na {
            if self.row_cover[i] > 0 {
                continue;
            }
            let mut count = 0;
            let mut min = INF_RANK;
            for j in 0..nb {
                if bijective && self.col_cover[j] > 0 {
                    continue;
                }
                if let Some(c) = self.viable(self.t.pair(i, j), cost, inc) {
                    count += 1;
                    min = min.min(c);
                }
            }
            if count == 0 {
                return;
            }
            lower = lower.max(min);
            if pick.map_or(true, |(_, _, pc, pm)| {
                count < pc || (count == pc && min > pm)
            }) {
                pick = Some((true, i, count, min));
            }
        }
        for j in 0..nb {
            if self.col_cover[j] > 0 {
                continue;
            }
            let mut count = 0;
            let mut min = INF_RANK;
            for i in 0..na {
                if bijective && self.row_cover[i] > 0 {
                    continue;
                }
                if let Some(c) = self.viable(self.t.pair(i, j), cost, inc) {
                    count += 1;
                    min = min.min(c);
                }
            }
            if count == 0 {
                return;
            }
            lower = lower.max(min);
            if pick.map_or(true, |(_, _, pc, pm)| {
                count < pc || (count == pc && min > pm)
            }) {
                pick = Some((false, j, count, min));
            }
        }
        if lower >= self.best_rank {
            return;
        }

        let Some((is_row, index, _, _)) = pick else {
            // Everything is covered.
            self.best_rank = cost;
            self.best = Some((cost, self.chosen.clone()));
            if cost == 0 {
                self.done = true;
            } else if self.stop_at_first {
                self.done = true;
                self.stopped_first = true;
            }
            return;
        };

        let mut candidates: Vec<(u32, bool, usize)> = Vec::new();
        let others = if is_row { nb } else { na };
        for o in 0..others {
            let (i, j) = if is_row { (index, o) } else { (o, index) };
            if bijective && (self.row_cover[i] > 0 || self.col_cover[j] > 0) {
                continue;
            }
            let v = self.t.pair(i, j);
            if let Some(c) = self.viable(v, cost, inc) {
                let covers_both = self.row_cover[i] == 0 && self.col_cover[j] == 0;
                candidates.push((c, !covers_both, v));
            }
        }
        candidates.sort_unstable();

        let mut next = std::mem::take(&mut self.inc_stack[depth]);
        for (_, _, v) in candidates {
            let Some(c) = self.viable(v, cost, inc) else {
                continue;
            };
            for (w, slot) in next.iter_mut().enumerate() {
                *slot = inc[w].max(self.t.cost(v, w));
            }
            let (i, j) = self.t.unpair(v);
            self.row_cover[i] += 1;
            self.col_cover[j] += 1;
            self.chosen.push(v);
            self.descend(c, &next, depth + 1);
            self.chosen.pop();
            self.row_cover[i] -= 1;
            self.col_cover[j] -= 1;
            if self.done || self.aborted {
                break;
            }
        }
        self.inc_stack[depth] = next;
    }
}
