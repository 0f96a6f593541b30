//! Heuristic minor embedding of interaction graphs into hardware graphs.
//!
//! Each logical vertex is mapped to a chain: a nonempty set of hardware
//! vertices inducing a connected subgraph, pairwise disjoint across logical
//! vertices, such that every logical edge is realized by at least one
//! hardware edge between the two chains.
//!
//! [`find_embedding`] is a randomized chain-growth heuristic: logical
//! vertices are (re)routed one at a time through vertex-weighted shortest
//! paths toward their neighbours' chains, with already-used hardware
//! vertices carrying an exponential overfill penalty; rounds of rip-up and
//! reroute repair the overfill until chains are disjoint. Tries are seeded
//! deterministically from `(params.seed, try index)`, so results are
//! reproducible; the first succeeding try wins.

use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::hardware::{chimera, pegasus, GraphFamily, HardwareGraph};
use crate::rng::{derive_seed, SplitMix64};
use crate::{Error, Result};

/// Default ceiling on the hardware size parameter searched by
/// [`min_embeddable_size`].
pub const DEFAULT_SIZE_CEILING: usize = 16;

/// Knobs of the embedding heuristic. Results are deterministic functions of
/// `(source, target, params)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedParams {
    /// Independent restarts before giving up.
    pub max_tries: usize,
    pub seed: u64,
    /// Rip-up-and-reroute rounds per try.
    pub rounds: usize,
}

impl Default for EmbedParams {
    fn default() -> Self {
        Self {
            max_tries: 10,
            seed: 1,
            rounds: 32,
        }
    }
}

/// A minor embedding: one chain of hardware vertices per logical vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    chains: Vec<Vec<usize>>,
    source: HardwareGraph,
    target: HardwareGraph,
}

impl Embedding {
    /// Wrap explicit chains; no validation is performed (see [`Self::validate`]).
    pub fn new(chains: Vec<Vec<usize>>, source: HardwareGraph, target: HardwareGraph) -> Self {
        let mut chains = chains;
        for c in &mut chains {
            c.sort_unstable();
            c.dedup();
        }
        Self {
            chains,
            source,
            target,
        }
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn chain(&self, logical: usize) -> &[usize] {
        &self.chains[logical]
    }

    pub fn source(&self) -> &HardwareGraph {
        &self.source
    }

    pub fn target(&self) -> &HardwareGraph {
        &self.target
    }

    /// Total number of hardware vertices used.
    pub fn total_chain_size(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    /// Check the three validity conditions (disjointness, chain
    /// connectivity, edge realization); returns every violation found.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.chains.len() != self.source.n_vertices() {
            violations.push(format!(
                "embedding has {} chains for {} logical vertices",
                self.chains.len(),
                self.source.n_vertices()
            ));
            return violations;
        }
        let tn = self.target.n_vertices();
        let mut owner: Vec<Option<usize>> = vec![None; tn];
        for (u, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() {
                violations.push(format!("chain {u} is empty"));
                continue;
            }
            for &t in chain {
                if t >= tn {
                    violations.push(format!("chain {u} uses out-of-range vertex {t}"));
                } else if let Some(other) = owner[t] {
                    violations.push(format!(
                        "chains {other} and {u} overlap at hardware vertex {t}"
                    ));
                } else {
                    owner[t] = Some(u);
                }
            }
        }
        for (u, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() || chain.iter().any(|&t| t >= tn) {
                continue;
            }
            if !self.chain_connected(chain) {
                violations.push(format!("chain {u} is disconnected"));
            }
        }
        for &(u, v) in self.source.edges() {
            let realized = self.chains[u].iter().any(|&a| {
                self.target
                    .neighbors(a)
                    .iter()
                    .any(|&b| self.chains[v].binary_search(&b).is_ok())
            });
            if !realized {
                violations.push(format!("no hardware edge realizes logical edge ({u},{v})"));
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn chain_connected(&self, chain: &[usize]) -> bool {
        if chain.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; chain.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(pos) = stack.pop() {
            for &nbr in self.target.neighbors(chain[pos]) {
                if let Ok(idx) = chain.binary_search(&nbr) {
                    if !seen[idx] {
                        seen[idx] = true;
                        reached += 1;
                        stack.push(idx);
                    }
                }
            }
        }
        reached == chain.len()
    }

    /// Hardware vertices used divided by logical vertices. Fails on an
    /// invalid embedding.
    pub fn ratio(&self) -> Result<f64> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidEmbedding(violations));
        }
        Ok(self.total_chain_size() as f64 / self.source.n_vertices() as f64)
    }

    /// Serialize as `{"chains": {...}, "ratio": r, "params": {...}}`.
    pub fn to_json(&self, params: &EmbedParams) -> Result<String> {
        let ratio = self.ratio()?;
        let mut chains = serde_json::Map::new();
        for (u, chain) in self.chains.iter().enumerate() {
            chains.insert(u.to_string(), serde_json::json!(chain));
        }
        Ok(serde_json::json!({
            "chains": chains,
            "ratio": ratio,
            "params": params,
        })
        .to_string())
    }
}

/// Exponential overfill penalty for routing through a hardware vertex that
/// `load` chains already use. The exponent is capped so that summed path
/// costs stay well inside `f64` precision.
fn vertex_cost(load: u32) -> f64 {
    if load == 0 {
        1.0
    } else {
        1e3f64.powi(load.min(4) as i32)
    }
}

#[derive(PartialEq)]
struct HeapEntry {
    cost: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Min-heap on (cost, vertex); costs are finite by construction.
        other
            .cost
            .partial_cmp(&self.cost)
            .expect("routing costs are never NaN")
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable routing buffers. Distance and parent entries are validated by a
/// per-run stamp, so resets cost O(touched) instead of O(target).
struct RouterScratch {
    cost: Vec<f64>,
    score: Vec<f64>,
    reach: Vec<u32>,
    dist: Vec<f64>,
    parent: Vec<u32>,
    stamp: Vec<u32>,
    run: u32,
    in_tree: Vec<bool>,
    goal: Vec<bool>,
    heap: BinaryHeap<HeapEntry>,
}

impl RouterScratch {
    fn new(tn: usize) -> Self {
        Self {
            cost: vec![0.0; tn],
            score: vec![0.0; tn],
            reach: vec![0; tn],
            dist: vec![0.0; tn],
            parent: vec![u32::MAX; tn],
            stamp: vec![0; tn],
            run: 0,
            in_tree: vec![false; tn],
            goal: vec![false; tn],
            heap: BinaryHeap::new(),
        }
    }

    fn begin_run(&mut self) {
        self.run += 1;
        self.heap.clear();
    }

    fn dist_of(&self, t: usize) -> f64 {
        if self.stamp[t] == self.run {
            self.dist[t]
        } else {
            f64::INFINITY
        }
    }

    fn relax(&mut self, t: usize, d: f64, from: u32) {
        if d < self.dist_of(t) {
            self.stamp[t] = self.run;
            self.dist[t] = d;
            self.parent[t] = from;
            self.heap.push(HeapEntry { cost: d, vertex: t });
        }
    }
}

fn least_used_pick(usage: &[u32], rng: &mut SplitMix64) -> usize {
    let min_use = usage.iter().copied().min().expect("nonempty target");
    let candidates: Vec<usize> = (0..usage.len()).filter(|&t| usage[t] == min_use).collect();
    candidates[rng.next_int(0, candidates.len() as u64 - 1) as usize]
}

/// Route a fresh chain for logical vertex `u`: pick the root minimizing the
/// summed path cost to every embedded neighbour's chain, then grow a Steiner
/// tree from the root, connecting one neighbour chain at a time with paths
/// that travel through the already-built tree for free.
///
/// Costs combine the overfill tier with a negotiated-congestion history
/// (vertices that stay contested get expensive for everyone, which dissolves
/// mutually blocking clusters) plus a tiny random jitter so repeated
/// reroutes cannot cycle between configurations.
fn route_chain(
    source: &HardwareGraph,
    target: &HardwareGraph,
    u: usize,
    chains: &[Vec<usize>],
    usage: &[u32],
    history: &[f64],
    rng: &mut SplitMix64,
    scratch: &mut RouterScratch,
) -> Vec<usize> {
    let mut embedded: Vec<usize> = source
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&v| !chains[v].is_empty())
        .collect();
    if embedded.is_empty() {
        return vec![least_used_pick(usage, rng)];
    }
    let tn = target.n_vertices();
    for t in 0..tn {
        scratch.cost[t] =
            vertex_cost(usage[t]) * (1.0 + 0.3 * history[t]) * (1.0 + 1e-6 * rng.next_f64());
        scratch.score[t] = 0.0;
        scratch.reach[t] = 0;
    }

    // Phase 1: per-neighbour sweeps accumulate each candidate root's total
    // connection cost.
    for &v in &embedded {
        scratch.begin_run();
        for &s in &chains[v] {
            scratch.relax(s, 0.0, u32::MAX);
        }
        while let Some(HeapEntry { cost: d, vertex: t }) = scratch.heap.pop() {
            if d > scratch.dist[t] || scratch.stamp[t] != scratch.run {
                continue;
            }
            scratch.score[t] += d;
            scratch.reach[t] += 1;
            for &w in target.neighbors(t) {
                scratch.relax(w, d + scratch.cost[w], t as u32);
            }
        }
    }
    let wanted = embedded.len() as u32;
    let mut root = usize::MAX;
    let mut best = f64::INFINITY;
    for t in 0..tn {
        if scratch.reach[t] == wanted {
            let s = scratch.cost[t] + scratch.score[t];
            if s < best {
                best = s;
                root = t;
            }
        }
    }
    if root == usize::MAX {
        // Some neighbour chain is unreachable (disconnected target); the
        // round-level validity check will reject the attempt.
        return vec![least_used_pick(usage, rng)];
    }

    // Phase 2: grow the tree outward, one neighbour chain at a time.
    rng.shuffle(&mut embedded);
    let mut tree = vec![root];
    scratch.in_tree[root] = true;
    for &v in &embedded {
        for &g in &chains[v] {
            scratch.goal[g] = true;
        }
        // Already adjacent to this chain through some tree vertex?
        let adjacent = tree
            .iter()
            .any(|&t| target.neighbors(t).iter().any(|&w| scratch.goal[w]));
        if !adjacent {
            scratch.begin_run();
            for &t in &tree {
                scratch.relax(t, 0.0, u32::MAX);
            }
            let mut hit = usize::MAX;
            while let Some(HeapEntry { cost: d, vertex: t }) = scratch.heap.pop() {
                if d > scratch.dist[t] || scratch.stamp[t] != scratch.run {
                    continue;
                }
                if scratch.goal[t] {
                    hit = t;
                    break;
                }
                for &w in target.neighbors(t) {
                    // Entering the goal chain itself is free: the connection
                    // is made by the edge, not by using the goal vertex.
                    let step = if scratch.goal[w] {
                        0.0
                    } else {
                        scratch.cost[w]
                    };
                    scratch.relax(w, d + step, t as u32);
                }
            }
            if hit != usize::MAX {
                let mut cur = scratch.parent[hit];
                while cur != u32::MAX && scratch.dist[cur as usize] > 0.0 {
                    let c = cur as usize;
                    if !scratch.in_tree[c] {
                        scratch.in_tree[c] = true;
                        tree.push(c);
                    }
                    cur = scratch.parent[c];
                }
            }
            // Unreachable chains leave the tree unconnected; the round-level
            // validity check rejects the attempt.
        }
        for &g in &chains[v] {
            scratch.goal[g] = false;
        }
    }
    for &t in &tree {
        scratch.in_tree[t] = false;
    }
    tree
}

fn edges_realized(source: &HardwareGraph, target: &HardwareGraph, chains: &[Vec<usize>]) -> bool {
    let mut owner = vec![usize::MAX; target.n_vertices()];
    for (u, chain) in chains.iter().enumerate() {
        for &t in chain {
            owner[t] = u;
        }
    }
    source.edges().iter().all(|&(u, v)| {
        chains[u]
            .iter()
            .any(|&a| target.neighbors(a).iter().any(|&b| owner[b] == v))
    })
}

/// Remove chain vertices that are redundant for both connectivity and edge
/// realization. Deterministic sweep to a fixpoint.
fn shrink_chains(source: &HardwareGraph, target: &HardwareGraph, chains: &mut [Vec<usize>]) {
    let tn = target.n_vertices();
    let mut owner = vec![usize::MAX; tn];
    for (u, chain) in chains.iter().enumerate() {
        for &t in chain {
            owner[t] = u;
        }
    }
    let connected_without = |chain: &[usize], skip: usize| -> bool {
        let members: Vec<usize> = chain.iter().copied().filter(|&t| t != skip).collect();
        if members.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; members.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(pos) = stack.pop() {
            for &nbr in target.neighbors(members[pos]) {
                if let Ok(idx) = members.binary_search(&nbr) {
                    if !seen[idx] {
                        seen[idx] = true;
                        reached += 1;
                        stack.push(idx);
                    }
                }
            }
        }
        reached == members.len()
    };
    loop {
        let mut removed_any = false;
        for u in 0..chains.len() {
            let mut pos = chains[u].len();
            while pos > 0 {
                pos -= 1;
                if chains[u].len() == 1 {
                    break;
                }
                let t = chains[u][pos];
                if !connected_without(&chains[u], t) {
                    continue;
                }
                owner[t] = usize::MAX;
                let pruned: Vec<usize> = chains[u].iter().copied().filter(|&x| x != t).collect();
                let still_ok = source.neighbors(u).iter().all(|&v| {
                    pruned
                        .iter()
                        .any(|&a| target.neighbors(a).iter().any(|&b| owner[b] == v))
                });
                if still_ok {
                    chains[u] = pruned;
                    removed_any = true;
                } else {
                    owner[t] = u;
                }
            }
        }
        if !removed_any {
            break;
        }
    }
    for chain in chains.iter_mut() {
        chain.sort_unstable();
    }
}

enum TryOutcome {
    Found(Vec<Vec<usize>>),
    /// No valid embedding this try; carries the smallest overfill reached.
    Stuck(u32),
}

fn embed_try(
    source: &HardwareGraph,
    target: &HardwareGraph,
    rounds: usize,
    rng: &mut SplitMix64,
    scratch: &mut RouterScratch,
) -> TryOutcome {
    let sn = source.n_vertices();
    // First pass places high-degree vertices while space is open; later
    // passes rip and reroute in fresh random orders.
    let mut order: Vec<usize> = (0..sn).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(source.degree(u)));
    let mut chains: Vec<Vec<usize>> = vec![Vec::new(); sn];
    let mut usage: Vec<u32> = vec![0; target.n_vertices()];
    let mut history: Vec<f64> = vec![0.0; target.n_vertices()];
    let mut best_overfill = u32::MAX;
    let mut stalled = 0;
    for round in 0..rounds {
        if round > 0 {
            rng.shuffle(&mut order);
        }
        for &u in &order {
            for &t in &chains[u] {
                usage[t] -= 1;
            }
            chains[u].clear();
            let chain = route_chain(source, target, u, &chains, &usage, &history, rng, scratch);
            for &t in &chain {
                usage[t] += 1;
            }
            chains[u] = chain;
        }
        let overfill: u32 = usage.iter().map(|&c| c.saturating_sub(1)).sum();
        if overfill == 0 && edges_realized(source, target, &chains) {
            for chain in &mut chains {
                chain.sort_unstable();
            }
            shrink_chains(source, target, &mut chains);
            return TryOutcome::Found(chains);
        }
        for (t, &c) in usage.iter().enumerate() {
            if c > 1 {
                history[t] += 1.0;
            }
        }
        if overfill >= best_overfill {
            stalled += 1;
            // A stall means the chains contesting some hardware vertices
            // mutually block each other; tear the whole knot out at once so
            // it can re-grow into space the history costs now disfavour.
            if stalled >= 3 {
                stalled = 0;
                let mut torn = vec![false; sn];
                for (u, chain) in chains.iter().enumerate() {
                    if chain.iter().any(|&t| usage[t] > 1) {
                        torn[u] = true;
                    }
                }
                for (u, chain) in chains.iter_mut().enumerate() {
                    if torn[u] {
                        for &t in chain.iter() {
                            usage[t] -= 1;
                        }
                        chain.clear();
                    }
                }
            }
        } else {
            best_overfill = overfill;
            stalled = 0;
        }
    }
    TryOutcome::Stuck(best_overfill)
}

/// Find a minor embedding of `source` into `target`, or `None` after
/// `params.max_tries` seeded restarts.
///
/// If `source` is an identity subgraph of `target`, the all-singleton
/// embedding is returned immediately.
pub fn find_embedding(
    source: &HardwareGraph,
    target: &HardwareGraph,
    params: &EmbedParams,
) -> Result<Option<Embedding>> {
    if source.n_vertices() == 0 || target.n_vertices() == 0 {
        return Err(Error::EmptyGraph);
    }
    if params.max_tries == 0 {
        return Err(Error::Domain("max_tries must be at least 1".into()));
    }
    if source.is_identity_subgraph_of(target) {
        let chains = (0..source.n_vertices()).map(|v| vec![v]).collect();
        return Ok(Some(Embedding::new(chains, source.clone(), target.clone())));
    }
    // Chains are disjoint and nonempty, and distinct logical edges need
    // distinct hardware edges, so small targets can be rejected outright.
    if target.n_vertices() < source.n_vertices() || target.n_edges() < source.n_edges() {
        return Ok(None);
    }
    let mut scratch = RouterScratch::new(target.n_vertices());
    // Tries that get stuck with this much overfill mark the target as far
    // too small; further restarts are skipped.
    let hopeless = 2 + source.n_vertices() as u32 / 8;
    for t in 0..params.max_tries {
        let mut rng = SplitMix64::new(derive_seed(params.seed, &[t as u64]));
        match embed_try(source, target, params.rounds, &mut rng, &mut scratch) {
            TryOutcome::Found(chains) => {
                let embedding = Embedding::new(chains, source.clone(), target.clone());
                if embedding.is_valid() {
                    return Ok(Some(embedding));
                }
                debug_assert!(false, "embed_try returned an invalid embedding");
            }
            TryOutcome::Stuck(overfill) => {
                if t >= 1 && overfill > hopeless {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Result of a minimum-size search: the smallest succeeding size and the
/// embedding found there.
#[derive(Debug, Clone)]
pub struct MinEmbedResult {
    pub min_l: usize,
    pub embedding: Embedding,
}

struct SizeSearch<'a> {
    source: &'a HardwareGraph,
    family: GraphFamily,
    params: &'a EmbedParams,
    memo: BTreeMap<usize, Option<Embedding>>,
}

impl SizeSearch<'_> {
    fn attempt(&mut self, l: usize) -> Result<Option<Embedding>> {
        if let Some(cached) = self.memo.get(&l) {
            return Ok(cached.clone());
        }
        let target = match self.family {
            GraphFamily::Chimera => chimera(l)?,
            GraphFamily::Pegasus => pegasus(l)?,
            GraphFamily::Arbitrary => unreachable!("validated by caller"),
        };
        let found = find_embedding(self.source, &target, self.params)?;
        self.memo.insert(l, found.clone());
        Ok(found)
    }
}

/// Find the smallest hardware size parameter `L` at which `source` embeds,
/// under the given heuristic parameters.
///
/// Starting from `warm_start` (clamped to the family's minimum), the size is
/// incremented until an embedding is found, then decremented while the next
/// size down still succeeds; the result is therefore never one step above a
/// succeeding size. The result is heuristic-parameter dependent and should
/// be reported together with `params`.
pub fn min_embeddable_size(
    source: &HardwareGraph,
    family: GraphFamily,
    params: &EmbedParams,
    warm_start: Option<usize>,
    ceiling: usize,
) -> Result<MinEmbedResult> {
    if source.n_vertices() == 0 {
        return Err(Error::EmptyGraph);
    }
    let min_l = family.min_size()?;
    if ceiling < min_l {
        return Err(Error::Domain(format!(
            "ceiling {ceiling} is below the family minimum {min_l}"
        )));
    }
    let mut search = SizeSearch {
        source,
        family,
        params,
        memo: BTreeMap::new(),
    };
    let mut l = warm_start.unwrap_or(min_l).clamp(min_l, ceiling);
    let mut found: (usize, Embedding);
    loop {
        if let Some(e) = search.attempt(l)? {
            found = (l, e);
            break;
        }
        if l == ceiling {
            return Err(Error::NoEmbedding { ceiling });
        }
        l += 1;
    }
    while found.0 > min_l {
        match search.attempt(found.0 - 1)? {
            Some(e) => found = (found.0 - 1, e),
            None => break,
        }
    }
    Ok(MinEmbedResult {
        min_l: found.0,
        embedding: found.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_graph(n: usize) -> HardwareGraph {
        let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
        HardwareGraph::from_edges(GraphFamily::Arbitrary, 0, n, edges).unwrap()
    }

    fn cycle_graph(n: usize) -> HardwareGraph {
        let edges = (0..n).map(|a| (a, (a + 1) % n));
        HardwareGraph::from_edges(GraphFamily::Arbitrary, 0, n, edges).unwrap()
    }

    fn path_graph(n: usize) -> HardwareGraph {
        let edges = (0..n - 1).map(|a| (a, a + 1));
        HardwareGraph::from_edges(GraphFamily::Arbitrary, 0, n, edges).unwrap()
    }

    /// Exhaustive oracle: smallest total chain size over all valid
    /// embeddings, or `None` when no embedding exists. Only for tiny graphs.
    fn exhaustive_min_total(source: &HardwareGraph, target: &HardwareGraph) -> Option<usize> {
        let sn = source.n_vertices();
        let tn = target.n_vertices();
        let mut assignment = vec![0usize; tn]; // 0 = unused, 1 + chain id
        let mut best: Option<usize> = None;
        loop {
            let mut chains: Vec<Vec<usize>> = vec![Vec::new(); sn];
            for (t, &a) in assignment.iter().enumerate() {
                if a > 0 {
                    chains[a - 1].push(t);
                }
            }
            if chains.iter().all(|c| !c.is_empty()) {
                let e = Embedding::new(chains, source.clone(), target.clone());
                if e.is_valid() {
                    let total = e.total_chain_size();
                    best = Some(best.map_or(total, |b: usize| b.min(total)));
                }
            }
            let mut k = 0;
            loop {
                if k == tn {
                    return best;
                }
                assignment[k] += 1;
                if assignment[k] <= sn {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn identity_subgraph_fast_path() {
        let g = crate::hardware::chimera(1).unwrap();
        let e = find_embedding(&g, &g, &EmbedParams::default())
            .unwrap()
            .unwrap();
        assert!(e.chains().iter().all(|c| c.len() == 1));
        assert_eq!(e.ratio().unwrap(), 1.0);
    }

    #[test]
    fn triangle_into_hexagon() {
        let source = complete_graph(3);
        let target = cycle_graph(6);
        let e = find_embedding(&source, &target, &EmbedParams::default())
            .unwrap()
            .expect("a triangle minor exists in the 6-cycle");
        assert!(e.is_valid());
        assert!(e.total_chain_size() >= 4);
        // Exhaustive check: the cheapest triangle minor uses all six vertices.
        assert_eq!(exhaustive_min_total(&source, &target), Some(6));
    }

    #[test]
    fn single_chimera_cell_hosts_k5_but_not_k6() {
        // K_{4,4} has a K_5 minor (three left-right pairs plus two opposite
        // singletons, 8 vertices total) and no K_6 minor: at most one
        // singleton chain per side fits, so six chains need ≥ 10 vertices.
        let cell = crate::hardware::chimera(1).unwrap();
        assert_eq!(exhaustive_min_total(&complete_graph(5), &cell), Some(8));
        let found = find_embedding(&complete_graph(5), &cell, &EmbedParams::default())
            .unwrap()
            .expect("the heuristic finds the K_5 minor");
        assert!(found.is_valid());
        assert_eq!(found.total_chain_size(), 8);

        assert_eq!(exhaustive_min_total(&complete_graph(6), &cell), None);
        let k6 = find_embedding(&complete_graph(6), &cell, &EmbedParams::default()).unwrap();
        assert!(k6.is_none());
    }

    #[test]
    fn validate_reports_violations() {
        let source = path_graph(2);
        let target = path_graph(4);
        let ok = Embedding::new(vec![vec![0], vec![1]], source.clone(), target.clone());
        assert!(ok.is_valid());

        let disconnected =
            Embedding::new(vec![vec![0, 2], vec![1]], source.clone(), target.clone());
        let violations = disconnected.validate();
        assert!(violations.iter().any(|v| v.contains("disconnected")));
        assert!(violations.iter().any(|v| v.contains("overlap")) == false);

        let unrealized = Embedding::new(vec![vec![0], vec![3]], source.clone(), target.clone());
        let violations = unrealized.validate();
        assert!(violations
            .iter()
            .any(|v| v.contains("realizes logical edge (0,1)")));

        let overlapping = Embedding::new(vec![vec![0], vec![0]], source, target);
        assert!(overlapping.validate().iter().any(|v| v.contains("overlap")));
    }

    #[test]
    fn ratio_arithmetic() {
        let source = path_graph(3);
        let target = path_graph(4);
        let e = Embedding::new(
            vec![vec![0], vec![1, 2], vec![3]],
            source.clone(),
            target.clone(),
        );
        assert!(e.is_valid());
        assert!((e.ratio().unwrap() - 4.0 / 3.0).abs() < 1e-15);

        let bad = Embedding::new(vec![vec![0], vec![2], vec![3]], source, target);
        assert!(matches!(bad.ratio(), Err(Error::InvalidEmbedding(_))));
    }

    #[test]
    fn ratio_is_one_exactly_for_singletons() {
        let source = path_graph(5);
        let target = crate::hardware::chimera(2).unwrap();
        let e = find_embedding(&source, &target, &EmbedParams::default())
            .unwrap()
            .unwrap();
        let ratio = e.ratio().unwrap();
        assert!(ratio >= 1.0);
        let all_singleton = e.chains().iter().all(|c| c.len() == 1);
        assert_eq!(ratio == 1.0, all_singleton);
    }

    #[test]
    fn clique_minimum_sizes_on_chimera() {
        let params = EmbedParams::default();
        for (clique, expected_min) in [(4usize, 1usize), (5, 1), (6, 2)] {
            let source = complete_graph(clique);
            let res = min_embeddable_size(&source, GraphFamily::Chimera, &params, None, 4).unwrap();
            assert_eq!(res.min_l, expected_min, "K_{clique}");
            assert!(res.embedding.is_valid());
        }
    }

    #[test]
    fn search_contract_never_returns_above_a_success() {
        let params = EmbedParams::default();
        let p10 = path_graph(10);
        let res = min_embeddable_size(&p10, GraphFamily::Chimera, &params, Some(3), 8).unwrap();
        // Re-run the underlying attempts: success at the result, failure or
        // family floor below it.
        let at =
            find_embedding(&p10, &crate::hardware::chimera(res.min_l).unwrap(), &params).unwrap();
        assert!(at.is_some());
        if res.min_l > 1 {
            let below = find_embedding(
                &p10,
                &crate::hardware::chimera(res.min_l - 1).unwrap(),
                &params,
            )
            .unwrap();
            assert!(below.is_none());
        }
    }

    #[test]
    fn search_reports_ceiling_failure() {
        let k6 = complete_graph(6);
        assert!(matches!(
            min_embeddable_size(&k6, GraphFamily::Chimera, &EmbedParams::default(), None, 1),
            Err(Error::NoEmbedding { ceiling: 1 })
        ));
    }

    #[test]
    fn deterministic_for_fixed_params() {
        let source = complete_graph(6);
        let target = crate::hardware::chimera(2).unwrap();
        let params = EmbedParams {
            max_tries: 10,
            seed: 77,
            rounds: 16,
        };
        let a = find_embedding(&source, &target, &params).unwrap().unwrap();
        let b = find_embedding(&source, &target, &params).unwrap().unwrap();
        assert_eq!(a.chains(), b.chains());
    }

    #[test]
    fn random_sources_always_validate() {
        let target = crate::hardware::chimera(2).unwrap();
        let mut rng = SplitMix64::new(8);
        for round in 0..12 {
            let n = 4 + (round % 5);
            let edges = crate::problems::gen_erdos_renyi(n, 0.5, rng.next_u64()).unwrap();
            let source = HardwareGraph::from_edges(GraphFamily::Arbitrary, 0, n, edges).unwrap();
            let params = EmbedParams {
                max_tries: 10,
                seed: rng.next_u64(),
                rounds: 16,
            };
            if let Some(e) = find_embedding(&source, &target, &params).unwrap() {
                assert!(e.is_valid());
                assert!(e.ratio().unwrap() >= 1.0);
            }
        }
    }

    #[test]
    fn embedding_json_shape() {
        let source = path_graph(3);
        let target = path_graph(4);
        let e = Embedding::new(vec![vec![0], vec![1, 2], vec![3]], source, target);
        let params = EmbedParams::default();
        let text = e.to_json(&params).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["chains"]["1"], serde_json::json!([1, 2]));
        assert_eq!(value["params"]["max_tries"], serde_json::json!(10));
        assert!(value["ratio"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn empty_graphs_are_rejected() {
        let empty = HardwareGraph::from_edges(GraphFamily::Arbitrary, 0, 0, []).unwrap();
        let target = path_graph(2);
        assert!(matches!(
            find_embedding(&empty, &target, &EmbedParams::default()),
            Err(Error::EmptyGraph)
        ));
    }
}
