//! Exact search over head assignments.
//!
//! A phylogeny digraph is determined (up to useless arcs) by the in-neighborhoods
//! of its vertices. Each base vertex `h` heads at most one clique of the graph:
//! its closed in-neighborhood for phylogeny digraphs, its open in-neighborhood
//! for competition digraphs. Every extra vertex is a sink heading one clique.
//! The digraph is acyclic iff the relation "head before member" extends to a
//! linear order. The search covers the lexicographically smallest uncovered
//! edge at each step, deepening on the number of extra vertices.

use std::collections::HashSet;

use crate::bitset::bits;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, VertexId};
use crate::structure::{maximal_cliques, DEFAULT_SIZE_CAP};

/// Hard limit of the bitmask representation.
pub const ENGINE_MAX_VERTICES: usize = 16;

const MEMO_LIMIT: usize = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Heads belong to their clique (closed in-neighborhood).
    Phylogeny,
    /// Heads lie outside their clique (open in-neighborhood).
    Competition,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub size_cap: usize,
    /// Give up with [`Error::Infeasible`] beyond this many extra vertices.
    pub max_extras: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            size_cap: DEFAULT_SIZE_CAP,
            max_extras: None,
        }
    }
}

/// A complete assignment: `(head, clique)` pairs plus cliques headed by extras.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Assignment {
    pub heads: Vec<(VertexId, u64)>,
    pub free: Vec<u64>,
}

impl Assignment {
    /// Realizes the digraph: clique members point to their head, extras
    /// are numbered `n, n+1, ...` in the order their cliques were chosen.
    pub fn to_digraph(&self, n: usize) -> Digraph {
        let mut arcs = Vec::new();
        for &(h, clique) in &self.heads {
            arcs.extend(bits(clique).filter(|&k| k != h).map(|k| (k, h)));
        }
        for (j, &clique) in self.free.iter().enumerate() {
            arcs.extend(bits(clique).map(|k| (k, n + j)));
        }
        arcs.sort_unstable();
        Digraph::from_arcs(n + self.free.len(), &arcs).expect("assignment arcs are simple")
    }
}

struct Engine {
    n: usize,
    mode: Mode,
    adj: Vec<u64>,
    edges: Vec<(VertexId, VertexId)>,
    pair_mask: Vec<u64>,
    /// co[e]: edges that fit in a common clique with e (including e).
    co: Vec<u128>,
    /// touch[h]: edges some clique headed by h could cover.
    touch: Vec<u128>,
    comp_masks: Vec<u64>,
    /// Maximal cliques containing each edge, largest first.
    maximal_by_edge: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    covered: u128,
    assigned: u64,
    succ: [u64; ENGINE_MAX_VERTICES],
}

impl Engine {
    fn new(g: &Graph, mode: Mode) -> Result<Self> {
        let n = g.n();
        if n > ENGINE_MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                cap: ENGINE_MAX_VERTICES,
            });
        }
        let adj = g.adjacency_masks()?;
        let edges = g.edge_list();
        let pair_mask: Vec<u64> = edges.iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        let is_clique = |mask: u64| bits(mask).all(|u| (adj[u] | 1 << u) & mask == mask);
        let co = (0..edges.len())
            .map(|e| {
                (0..edges.len())
                    .filter(|&f| is_clique(pair_mask[e] | pair_mask[f]))
                    .fold(0u128, |acc, f| acc | 1 << f)
            })
            .collect();
        let touch = (0..n)
            .map(|h| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| match mode {
                        Mode::Phylogeny => h == a || h == b || (adj[h] >> a & 1 == 1 && adj[h] >> b & 1 == 1),
                        Mode::Competition => h != a && h != b,
                    })
                    .fold(0u128, |acc, (e, _)| acc | 1 << e)
            })
            .collect();
        let comp_masks = g
            .connected_components()
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        let cliques: Vec<u64> = maximal_cliques(g)
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        let maximal_by_edge = pair_mask
            .iter()
            .map(|&pm| {
                let mut list: Vec<u64> = cliques.iter().copied().filter(|&c| c & pm == pm).collect();
                list.sort_by_key(|&c| (std::cmp::Reverse(c.count_ones()), c));
                list
            })
            .collect();
        Ok(Engine {
            n,
            mode,
            adj,
            edges,
            pair_mask,
            co,
            touch,
            comp_masks,
            maximal_by_edge,
        })
    }

    fn full(&self) -> u128 {
        if self.edges.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.edges.len()) - 1
        }
    }

    fn edges_within(&self, mask: u64) -> u128 {
        self.pair_mask
            .iter()
            .enumerate()
            .filter(|&(_, &pm)| pm & mask == pm)
            .fold(0u128, |acc, (e, _)| acc | 1 << e)
    }

    fn common_neighbors(&self, set: u64) -> u64 {
        bits(set).fold((1u64 << self.n) - 1, |acc, v| acc & self.adj[v]) & !set
    }

    /// All cliques inside `pool` (including the empty one), largest first.
    fn cliques_within(&self, pool: u64) -> Vec<u64> {
        let mut out = Vec::new();
        fn grow(adj: &[u64], current: u64, candidates: u64, out: &mut Vec<u64>) {
            out.push(current);
            for v in bits(candidates) {
                // only extend with larger ids to enumerate each set once
                let rest = candidates & adj[v] & !((1u64 << (v + 1)) - 1);
                grow(adj, current | 1 << v, rest, out);
            }
        }
        grow(&self.adj, 0, pool, &mut out);
        out.sort_by_key(|&c| (std::cmp::Reverse(c.count_ones()), c));
        out
    }

    fn independent_uncovered(&self, covered: u128) -> usize {
        let full = self.full();
        let mut blocked = covered;
        let mut count = 0;
        while blocked & full != full {
            let e = (!blocked).trailing_zeros() as usize;
            count += 1;
            blocked |= self.co[e] | 1 << e;
        }
        count
    }

    fn usable_heads(&self, state: &State) -> usize {
        let uncovered = !state.covered & self.full();
        let useful = |h: usize| state.assigned >> h & 1 == 0 && self.touch[h] & uncovered != 0;
        match self.mode {
            Mode::Phylogeny => self
                .comp_masks
                .iter()
                .map(|&c| {
                    let free = (c & !state.assigned).count_ones() as usize;
                    let useful_here = bits(c).filter(|&h| useful(h)).count();
                    useful_here.min(free.saturating_sub(1))
                })
                .sum(),
            Mode::Competition => {
                let free = (((1u64 << self.n) - 1) & !state.assigned).count_ones() as usize;
                let useful_all = (0..self.n).filter(|&h| useful(h)).count();
                useful_all.min(free.saturating_sub(1))
            }
        }
    }

    /// Adds "head before every member" to the precedence closure, or returns
    /// None if that closes a cycle.
    fn with_precedence(&self, state: &State, head: usize, members: u64) -> Option<[u64; ENGINE_MAX_VERTICES]> {
        let mut reach = members;
        for k in bits(members) {
            if k == head || state.succ[k] >> head & 1 == 1 {
                return None;
            }
            reach |= state.succ[k];
        }
        let mut succ = state.succ;
        for (a, row) in succ.iter_mut().enumerate().take(self.n) {
            if a == head || *row >> head & 1 == 1 {
                *row |= reach;
            }
        }
        Some(succ)
    }

    fn solve(&self, budget: usize) -> Option<Assignment> {
        let mut search = Search {
            engine: self,
            budget,
            memo: HashSet::new(),
            trail: Assignment::default(),
        };
        let start = State {
            covered: 0,
            assigned: 0,
            succ: [0; ENGINE_MAX_VERTICES],
        };
        search.dfs(start, 0).then_some(search.trail)
    }
}

struct Search<'a> {
    engine: &'a Engine,
    budget: usize,
    memo: HashSet<(State, usize)>,
    trail: Assignment,
}

impl Search<'_> {
    fn dfs(&mut self, state: State, free_used: usize) -> bool {
        let eng = self.engine;
        let full = eng.full();
        if state.covered & full == full {
            return true;
        }
        let left = self.budget - free_used;
        if eng.independent_uncovered(state.covered) > eng.usable_heads(&state) + left {
            return false;
        }
        if self.memo.contains(&(state, left)) {
            return false;
        }
        let e = (!state.covered).trailing_zeros() as usize;
        let (u, v) = eng.edges[e];
        let pair = eng.pair_mask[e];

        let heads: Vec<usize> = match eng.mode {
            Mode::Phylogeny => {
                let common = eng.common_neighbors(pair);
                [u, v].into_iter().chain(bits(common)).collect()
            }
            Mode::Competition => (0..eng.n).filter(|&h| h != u && h != v).collect(),
        };
        for h in heads {
            if state.assigned >> h & 1 == 1 {
                continue;
            }
            let base = match eng.mode {
                Mode::Phylogeny => pair | 1 << h,
                Mode::Competition => pair,
            };
            let pool = eng.common_neighbors(base) & !(1 << h);
            for extension in eng.cliques_within(pool) {
                let clique = base | extension;
                let members = clique & !(1 << h);
                let Some(succ) = eng.with_precedence(&state, h, members) else {
                    continue;
                };
                let next = State {
                    covered: state.covered | eng.edges_within(clique),
                    assigned: state.assigned | 1 << h,
                    succ,
                };
                self.trail.heads.push((h, clique));
                if self.dfs(next, free_used) {
                    return true;
                }
                self.trail.heads.pop();
            }
        }
        if free_used < self.budget {
            for &clique in &eng.maximal_by_edge[e] {
                let next = State {
                    covered: state.covered | eng.edges_within(clique),
                    ..state
                };
                self.trail.free.push(clique);
                if self.dfs(next, free_used + 1) {
                    return true;
                }
                self.trail.free.pop();
            }
        }
        if self.memo.len() < MEMO_LIMIT {
            self.memo.insert((state, left));
        }
        false
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap.min(ENGINE_MAX_VERTICES) {
        return Err(Error::TooLarge {
            n: g.n(),
            cap: cap.min(ENGINE_MAX_VERTICES),
        });
    }
    Ok(())
}

/// Minimum number of extra vertices, with an optimal digraph whose first
/// `g.n()` vertices are the graph's vertices and whose extras are sinks.
/// Components are solved independently and their digraphs united.
pub(crate) fn solve_phylogeny(g: &Graph, cfg: &SolverConfig) -> Result<(usize, Digraph)> {
    check_cap(g, cfg.size_cap)?;
    let n = g.n();
    let mut arcs = Vec::new();
    let mut extras = 0;
    for comp in g.connected_components() {
        if comp.len() == 1 {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&comp);
        let engine = Engine::new(&sub, Mode::Phylogeny)?;
        let limit = cfg.max_extras.map(|m| m.saturating_sub(extras));
        let mut r = 0;
        let assignment = loop {
            if let Some(limit) = limit {
                if r > limit {
                    return Err(Error::Infeasible(cfg.max_extras.unwrap_or(0)));
                }
            }
            if let Some(a) = engine.solve(r) {
                break a;
            }
            r += 1;
        };
        let local = assignment.to_digraph(sub.n());
        let relabel = |x: usize| if x < sub.n() { map[x] } else { n + extras + (x - sub.n()) };
        arcs.extend(local.arcs().map(|(a, b)| (relabel(a), relabel(b))));
        extras += assignment.free.len();
    }
    arcs.sort_unstable();
    Ok((extras, Digraph::from_arcs(n + extras, &arcs)?))
}

/// Minimum number of isolated vertices to add so that the graph becomes the
/// competition graph of an acyclic digraph, with such a digraph.
pub(crate) fn solve_competition(g: &Graph, cfg: &SolverConfig, start: usize) -> Result<(usize, Digraph)> {
    check_cap(g, cfg.size_cap)?;
    let engine = Engine::new(g, Mode::Competition)?;
    let mut r = start;
    loop {
        if let Some(limit) = cfg.max_extras {
            if r > limit {
                return Err(Error::Infeasible(limit));
            }
        }
        if let Some(a) = engine.solve(r) {
            return Ok((r, a.to_digraph(g.n())));
        }
        r += 1;
    }
}
