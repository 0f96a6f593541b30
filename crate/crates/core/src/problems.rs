//! Synthetic problem families, their encoders, and exhaustive classical
//! oracles.
//!
//! Three families are supported: unstructured dense interactions between
//! discrete variables, maximum graph coloring (soft penalty `w` per
//! monochromatic edge), and schedule conflict minimization (soft penalty `w`
//! per realized overlap). Instance generators draw from the seeded
//! [`SplitMix64`](crate::rng::SplitMix64) stream in a pinned order, so
//! instances are bit-reproducible.

use serde::{Deserialize, Serialize};

use crate::encoding::{EncodedProblem, EncodingKind, ValueMatrix, VariableHandle};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// Cap on the logical assignment space explored by the classical oracles.
pub const ORACLE_SPACE_CAP: usize = 10_000_000;

/// A graph to be colored with `n_colors` colors.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoringInstance {
    n_vertices: usize,
    n_colors: usize,
    /// Strictly upper-triangular edge set, sorted.
    edges: Vec<(usize, usize)>,
}

impl ColoringInstance {
    pub fn new(
        n_vertices: usize,
        n_colors: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if n_colors < 2 {
            return Err(Error::Domain("coloring needs at least 2 colors".into()));
        }
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Domain(format!("self-loop on vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::Domain(format!("edge ({a},{b}) out of range")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self {
            n_vertices,
            n_colors,
            edges: normalized,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of monochromatic edges under a coloring.
    pub fn monochromatic_edges(&self, colors: &[usize]) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| colors[a] == colors[b])
            .count()
    }
}

/// One schedulable event: an integer start-time window and a duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchedulingEvent {
    pub t_min: i64,
    pub t_max: i64,
    pub duration: i64,
}

impl SchedulingEvent {
    /// Width of the start window; 0 means the start time is fixed.
    pub fn window(&self) -> i64 {
        self.t_max - self.t_min
    }
}

/// A schedule conflict minimization instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SchedulingInstance {
    events: Vec<SchedulingEvent>,
    /// Strictly upper-triangular conflict pairs, sorted.
    conflicts: Vec<(usize, usize)>,
}

impl SchedulingInstance {
    pub fn new(
        events: Vec<SchedulingEvent>,
        conflicts: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        for (k, e) in events.iter().enumerate() {
            if e.t_min > e.t_max {
                return Err(Error::Domain(format!("event {k}: t_min exceeds t_max")));
            }
            if e.duration < 1 {
                return Err(Error::Domain(format!("event {k}: duration must be ≥ 1")));
            }
        }
        let n = events.len();
        let mut normalized = Vec::new();
        for (a, b) in conflicts {
            if a == b || a >= n || b >= n {
                return Err(Error::Domain(format!("bad conflict pair ({a},{b})")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self {
            events,
            conflicts: normalized,
        })
    }

    pub fn events(&self) -> &[SchedulingEvent] {
        &self.events
    }

    pub fn conflicts(&self) -> &[(usize, usize)] {
        &self.conflicts
    }

    /// Number of conflicting pairs whose intervals overlap, given per-event
    /// start offsets within their windows.
    pub fn realized_conflicts(&self, offsets: &[usize]) -> usize {
        self.conflicts
            .iter()
            .filter(|&&(a, b)| {
                let ea = &self.events[a];
                let eb = &self.events[b];
                intervals_overlap(
                    ea.t_min + offsets[a] as i64,
                    ea.duration,
                    eb.t_min + offsets[b] as i64,
                    eb.duration,
                )
            })
            .count()
    }
}

/// Whether `[a, a+ta)` and `[b, b+tb)` intersect.
pub fn intervals_overlap(a: i64, ta: i64, b: i64, tb: i64) -> bool {
    a < b + tb && b < a + ta
}

/// Dense interactions between discrete variables: a value matrix for each
/// variable pair.
#[derive(Debug, Clone, PartialEq)]
pub struct UnstructuredInstance {
    sizes: Vec<usize>,
    /// `((i, j), A)` with `i < j`, sorted by pair.
    matrices: Vec<((usize, usize), ValueMatrix)>,
}

impl UnstructuredInstance {
    pub fn new(
        sizes: Vec<usize>,
        matrices: impl IntoIterator<Item = ((usize, usize), ValueMatrix)>,
    ) -> Result<Self> {
        if sizes.iter().any(|&m| m < 2) {
            return Err(Error::Domain("variable sizes must be at least 2".into()));
        }
        let mut collected: Vec<((usize, usize), ValueMatrix)> = Vec::new();
        for ((i, j), a) in matrices {
            if i >= j || j >= sizes.len() {
                return Err(Error::Domain(format!("bad variable pair ({i},{j})")));
            }
            if a.rows() != sizes[i] || a.cols() != sizes[j] {
                return Err(Error::Domain(format!(
                    "matrix for pair ({i},{j}) is {}×{}, expected {}×{}",
                    a.rows(),
                    a.cols(),
                    sizes[i],
                    sizes[j]
                )));
            }
            collected.push(((i, j), a));
        }
        collected.sort_by_key(|(pair, _)| *pair);
        Ok(Self {
            sizes,
            matrices: collected,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn matrices(&self) -> &[((usize, usize), ValueMatrix)] {
        &self.matrices
    }

    /// Total interaction energy of a logical assignment.
    pub fn assignment_value(&self, values: &[usize]) -> f64 {
        self.matrices
            .iter()
            .map(|((i, j), a)| a.at(values[*i], values[*j]))
            .sum()
    }
}

/// Erdős–Rényi edge set: pairs visited in lexicographic order, each present
/// with probability `p`. Deterministic for a given seed.
pub fn gen_erdos_renyi(n_vertices: usize, p: f64, seed: u64) -> Result<Vec<(usize, usize)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("edge probability {p} not in [0,1]")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n_vertices {
        for j in (i + 1)..n_vertices {
            if rng.next_f64() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Random scheduling instance over `2·n_events` time units.
///
/// Draw order is pinned: conflicts over lexicographic pairs with probability
/// 0.75, then per event (in index order) the earliest start uniform in
/// `[0, t_max_global−2]`, the latest start uniform in `[t_early+1,
/// t_max_global]`, and the duration uniform in `[1, 5]`. Events may overhang
/// the global horizon; no clamping is applied.
pub fn gen_scheduling(n_events: usize, seed: u64) -> Result<SchedulingInstance> {
    if n_events < 2 {
        return Err(Error::Domain("need at least 2 events".into()));
    }
    let t_max_global = 2 * n_events as u64;
    let mut rng = SplitMix64::new(seed);
    let mut conflicts = Vec::new();
    for i in 0..n_events {
        for j in (i + 1)..n_events {
            if rng.next_f64() < 0.75 {
                conflicts.push((i, j));
            }
        }
    }
    let mut events = Vec::with_capacity(n_events);
    for _ in 0..n_events {
        let t_early = rng.next_int(0, t_max_global - 2);
        let t_late = rng.next_int(t_early + 1, t_max_global);
        let duration = rng.next_int(1, 5);
        events.push(SchedulingEvent {
            t_min: t_early as i64,
            t_max: t_late as i64,
            duration: duration as i64,
        });
    }
    SchedulingInstance::new(events, conflicts)
}

/// Random dense unstructured instance with entries uniform in `[lo, hi)`;
/// pairs in lexicographic order, entries row-major.
pub fn gen_unstructured(
    sizes: &[usize],
    lo: f64,
    hi: f64,
    seed: u64,
) -> Result<UnstructuredInstance> {
    let mut rng = SplitMix64::new(seed);
    let mut matrices = Vec::new();
    for i in 0..sizes.len() {
        for j in (i + 1)..sizes.len() {
            let mut a = ValueMatrix::zeros(sizes[i], sizes[j]);
            for r in 0..sizes[i] {
                for c in 0..sizes[j] {
                    a.set(r, c, lo + rng.next_f64() * (hi - lo));
                }
            }
            matrices.push(((i, j), a));
        }
    }
    UnstructuredInstance::new(sizes.to_vec(), matrices)
}

/// Encode an unstructured instance: one variable per size, one interaction
/// per stored matrix.
pub fn build_unstructured(
    inst: &UnstructuredInstance,
    kind: EncodingKind,
    lambda: f64,
) -> Result<EncodedProblem> {
    let mut p = EncodedProblem::new();
    let vars: Vec<VariableHandle> = inst
        .sizes()
        .iter()
        .map(|&m| p.add_variable_of_kind(kind, m, lambda))
        .collect::<Result<_>>()?;
    for ((i, j), a) in inst.matrices() {
        p.add_interaction(&vars[*i], &vars[*j], a)?;
    }
    Ok(p)
}

/// Encode a coloring instance: one `ℤ_N` variable per vertex and, per edge,
/// a `w·Identity` interaction penalizing equal colors.
pub fn build_coloring(
    inst: &ColoringInstance,
    kind: EncodingKind,
    lambda: f64,
    w: f64,
) -> Result<EncodedProblem> {
    let mut p = EncodedProblem::new();
    let vars: Vec<VariableHandle> = (0..inst.n_vertices())
        .map(|_| p.add_variable_of_kind(kind, inst.n_colors(), lambda))
        .collect::<Result<_>>()?;
    let penalty = ValueMatrix::scaled_identity(inst.n_colors(), w);
    for &(a, b) in inst.edges() {
        p.add_interaction(&vars[a], &vars[b], &penalty)?;
    }
    Ok(p)
}

/// Encode a scheduling instance: per event a `ℤ_{window+1}` variable whose
/// value `v` means start time `t_min + v`, and per conflicting pair the
/// overlap matrix scaled by `w`.
///
/// Events with a zero-width window have no variable; they contribute value
/// penalties to their conflict partners (or a constant offset when both
/// events are fixed).
pub fn build_scheduling(
    inst: &SchedulingInstance,
    kind: EncodingKind,
    lambda: f64,
    w: f64,
) -> Result<EncodedProblem> {
    let mut p = EncodedProblem::new();
    let mut vars: Vec<Option<VariableHandle>> = Vec::with_capacity(inst.events().len());
    for e in inst.events() {
        if e.window() >= 1 {
            vars.push(Some(p.add_variable_of_kind(
                kind,
                e.window() as usize + 1,
                lambda,
            )?));
        } else {
            vars.push(None);
        }
    }
    for &(i, j) in inst.conflicts() {
        let (ei, ej) = (&inst.events()[i], &inst.events()[j]);
        match (&vars[i], &vars[j]) {
            (Some(vi), Some(vj)) => {
                let mut e = ValueMatrix::zeros(vi.m(), vj.m());
                for l in 0..vi.m() {
                    for q in 0..vj.m() {
                        if intervals_overlap(
                            ei.t_min + l as i64,
                            ei.duration,
                            ej.t_min + q as i64,
                            ej.duration,
                        ) {
                            e.set(l, q, w);
                        }
                    }
                }
                p.add_interaction(vi, vj, &e)?;
            }
            (Some(vi), None) => {
                for l in 0..vi.m() {
                    if intervals_overlap(ei.t_min + l as i64, ei.duration, ej.t_min, ej.duration) {
                        p.add_value_penalty(vi, l, w)?;
                    }
                }
            }
            (None, Some(vj)) => {
                for q in 0..vj.m() {
                    if intervals_overlap(ei.t_min, ei.duration, ej.t_min + q as i64, ej.duration) {
                        p.add_value_penalty(vj, q, w)?;
                    }
                }
            }
            (None, None) => {
                // Both events fixed: an overlap is an unavoidable constant.
                if intervals_overlap(ei.t_min, ei.duration, ej.t_min, ej.duration) {
                    p.add_constant(w);
                }
            }
        }
    }
    Ok(p)
}

/// Exhaustive optimum of a logical objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub value: f64,
    /// All minimizing assignments, lexicographic order.
    pub assignments: Vec<Vec<usize>>,
}

fn enumerate_assignments(
    domain_sizes: &[usize],
    mut objective: impl FnMut(&[usize]) -> f64,
) -> Result<Optimum> {
    let space: usize = domain_sizes
        .iter()
        .try_fold(1usize, |acc, &m| {
            acc.checked_mul(m).filter(|&s| s <= ORACLE_SPACE_CAP)
        })
        .ok_or(Error::SizeCap {
            limit: ORACLE_SPACE_CAP,
            required: usize::MAX,
        })?;
    let _ = space;
    let mut values = vec![0usize; domain_sizes.len()];
    let mut best = f64::INFINITY;
    let mut assignments: Vec<Vec<usize>> = Vec::new();
    loop {
        let v = objective(&values);
        if v < best - crate::ising::ENERGY_TOL {
            best = v;
            assignments.clear();
            assignments.push(values.clone());
        } else if v <= best + crate::ising::ENERGY_TOL {
            assignments.push(values.clone());
        }
        // Odometer increment, most-significant variable last.
        let mut k = domain_sizes.len();
        loop {
            if k == 0 {
                return Ok(Optimum {
                    value: best,
                    assignments,
                });
            }
            k -= 1;
            values[k] += 1;
            if values[k] < domain_sizes[k] {
                break;
            }
            values[k] = 0;
        }
    }
}

/// Minimum number of monochromatic edges over all colorings.
pub fn coloring_optimum(inst: &ColoringInstance) -> Result<Optimum> {
    let sizes = vec![inst.n_colors(); inst.n_vertices()];
    enumerate_assignments(&sizes, |values| inst.monochromatic_edges(values) as f64)
}

/// Minimum number of realized conflicts over all start-time choices.
pub fn scheduling_optimum(inst: &SchedulingInstance) -> Result<Optimum> {
    let sizes: Vec<usize> = inst
        .events()
        .iter()
        .map(|e| e.window() as usize + 1)
        .collect();
    enumerate_assignments(&sizes, |values| inst.realized_conflicts(values) as f64)
}

/// Minimum total interaction energy over all value assignments.
pub fn unstructured_optimum(inst: &UnstructuredInstance) -> Result<Optimum> {
    enumerate_assignments(inst.sizes(), |values| inst.assignment_value(values))
}

/// Edge-to-vertex ratio at which one-hot and domain-wall coloring encodings
/// need equal interaction counts: `(½n² − 3/2·n + 2)/(2n − 5)` for `n ≥ 3`
/// colors. Grows as `n/4` for large `n`.
pub fn critical_ratio(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "critical ratio needs n ≥ 3, got {n}"
        )));
    }
    let n = n as f64;
    Ok((0.5 * n * n - 1.5 * n + 2.0) / (2.0 * n - 5.0))
}

/// A serializable problem instance (the two generated families).
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Coloring(ColoringInstance),
    Scheduling(SchedulingInstance),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum InstanceWire {
    #[serde(rename = "coloring")]
    Coloring {
        n: usize,
        colors: usize,
        edges: Vec<(usize, usize)>,
    },
    #[serde(rename = "scheduling")]
    Scheduling {
        events: Vec<EventWire>,
        conflicts: Vec<(usize, usize)>,
    },
}

#[derive(Serialize, Deserialize)]
struct EventWire {
    tmin: i64,
    tmax: i64,
    dur: i64,
}

impl ProblemInstance {
    pub fn to_json(&self) -> String {
        let wire = match self {
            ProblemInstance::Coloring(c) => InstanceWire::Coloring {
                n: c.n_vertices(),
                colors: c.n_colors(),
                edges: c.edges().to_vec(),
            },
            ProblemInstance::Scheduling(s) => InstanceWire::Scheduling {
                events: s
                    .events()
                    .iter()
                    .map(|e| EventWire {
                        tmin: e.t_min,
                        tmax: e.t_max,
                        dur: e.duration,
                    })
                    .collect(),
                conflicts: s.conflicts().to_vec(),
            },
        };
        serde_json::to_string(&wire).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: InstanceWire =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        match wire {
            InstanceWire::Coloring { n, colors, edges } => Ok(ProblemInstance::Coloring(
                ColoringInstance::new(n, colors, edges).map_err(|e| Error::Json(e.to_string()))?,
            )),
            InstanceWire::Scheduling { events, conflicts } => Ok(ProblemInstance::Scheduling(
                SchedulingInstance::new(
                    events
                        .into_iter()
                        .map(|e| SchedulingEvent {
                            t_min: e.tmin,
                            t_max: e.tmax,
                            duration: e.dur,
                        })
                        .collect(),
                    conflicts,
                )
                .map_err(|e| Error::Json(e.to_string()))?,
            )),
        }
    }

    /// Encode with the given encoding; `lambda` of `None` selects the
    /// per-problem recommendation automatically.
    pub fn encode(
        &self,
        kind: EncodingKind,
        lambda: Option<f64>,
        w: f64,
    ) -> Result<EncodedProblem> {
        let build = |lambda: f64| match self {
            ProblemInstance::Coloring(c) => build_coloring(c, kind, lambda, w),
            ProblemInstance::Scheduling(s) => build_scheduling(s, kind, lambda, w),
        };
        match lambda {
            Some(l) => build(l),
            None => {
                let probe = build(1.0)?;
                build(probe.max_recommended_lambda())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::ENERGY_TOL;

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        assert!(gen_erdos_renyi(6, 0.0, 1).unwrap().is_empty());
        assert_eq!(gen_erdos_renyi(6, 1.0, 1).unwrap().len(), 15);
        let a = gen_erdos_renyi(6, 0.5, 42).unwrap();
        let b = gen_erdos_renyi(6, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty() && a.len() < 15);
        assert!(gen_erdos_renyi(6, 1.5, 1).is_err());
    }

    #[test]
    fn scheduling_generator_bounds_and_determinism() {
        let inst = gen_scheduling(4, 7).unwrap();
        let horizon = 8;
        for e in inst.events() {
            assert!(e.t_min >= 0);
            assert!(e.t_min < e.t_max);
            assert!(e.t_max <= horizon);
            assert!((1..=5).contains(&e.duration));
        }
        assert_eq!(inst, gen_scheduling(4, 7).unwrap());
        assert_ne!(inst, gen_scheduling(4, 8).unwrap());
        assert!(gen_scheduling(1, 7).is_err());
    }

    #[test]
    fn unstructured_qubit_counts() {
        let inst = gen_unstructured(&[4, 4, 4], -1.0, 1.0, 3).unwrap();
        let dw = build_unstructured(&inst, EncodingKind::DomainWall, 8.0).unwrap();
        assert_eq!(dw.n_qubits(), 9);
        let oh = build_unstructured(&inst, EncodingKind::OneHot, 8.0).unwrap();
        assert_eq!(oh.n_qubits(), 12);
    }

    #[test]
    fn unstructured_zero_matrix_keeps_full_manifold() {
        let inst =
            UnstructuredInstance::new(vec![3, 3], [((0usize, 1usize), ValueMatrix::zeros(3, 3))])
                .unwrap();
        let p = build_unstructured(&inst, EncodingKind::DomainWall, 1.0).unwrap();
        let g = p.model().brute_force().unwrap();
        assert_eq!(g.states.len(), 9);
    }

    #[test]
    fn coloring_triangle_three_colors() {
        let inst = ColoringInstance::new(3, 3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let p = build_coloring(&inst, EncodingKind::DomainWall, 4.0, 1.0).unwrap();
        let g = p.model().brute_force().unwrap();
        assert_eq!(g.states.len(), 6);
        for s in &g.states {
            let colors: Vec<usize> = p
                .decode_all(s)
                .unwrap()
                .into_iter()
                .map(|v| v.expect("ground states decode"))
                .collect();
            assert_eq!(inst.monochromatic_edges(&colors), 0);
        }
        // Proper colorings exist, so the ground energy sits at the valid floor.
        let floor = build_coloring(&inst, EncodingKind::DomainWall, 4.0, 0.0)
            .unwrap()
            .model()
            .brute_force()
            .unwrap()
            .energy;
        assert!((g.energy - floor).abs() <= ENERGY_TOL);
    }

    #[test]
    fn coloring_triangle_two_colors_pays_one_w() {
        let inst = ColoringInstance::new(3, 2, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let opt = coloring_optimum(&inst).unwrap();
        assert_eq!(opt.value, 1.0);
        let w = 1.0;
        let p = build_coloring(&inst, EncodingKind::DomainWall, 4.0, w).unwrap();
        let g = p.model().brute_force().unwrap();
        let floor = build_coloring(&inst, EncodingKind::DomainWall, 4.0, 0.0)
            .unwrap()
            .model()
            .brute_force()
            .unwrap()
            .energy;
        assert!((g.energy - floor - w).abs() <= ENERGY_TOL);
    }

    #[test]
    fn coloring_single_edge_coupler_counts() {
        for n in 3..=8 {
            let inst = ColoringInstance::new(2, n, [(0, 1)]).unwrap();
            let dw = build_coloring(&inst, EncodingKind::DomainWall, 2.0, 1.0).unwrap();
            let core_couplers = 2 * (n - 2);
            assert_eq!(
                dw.model().coupler_count() - core_couplers,
                3 * n - 5,
                "n={n}"
            );
            let oh = build_coloring(&inst, EncodingKind::OneHot, 2.0, 1.0).unwrap();
            let core_couplers = 2 * (n * (n - 1) / 2);
            assert_eq!(oh.model().coupler_count() - core_couplers, n, "n={n}");
        }
    }

    #[test]
    fn scheduling_two_events_forced_apart() {
        let events = vec![
            SchedulingEvent {
                t_min: 0,
                t_max: 1,
                duration: 1,
            },
            SchedulingEvent {
                t_min: 0,
                t_max: 1,
                duration: 1,
            },
        ];
        let inst = SchedulingInstance::new(events, [(0, 1)]).unwrap();
        let p = build_scheduling(&inst, EncodingKind::DomainWall, 3.0, 1.0).unwrap();
        let g = p.model().brute_force().unwrap();
        let mut starts: Vec<Vec<usize>> = g
            .states
            .iter()
            .map(|s| {
                p.decode_all(s)
                    .unwrap()
                    .into_iter()
                    .map(Option::unwrap)
                    .collect()
            })
            .collect();
        starts.sort();
        assert_eq!(starts, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn scheduling_non_conflicting_pair_adds_no_terms() {
        let events = vec![
            SchedulingEvent {
                t_min: 0,
                t_max: 2,
                duration: 2,
            },
            SchedulingEvent {
                t_min: 0,
                t_max: 2,
                duration: 2,
            },
        ];
        let inst = SchedulingInstance::new(events, []).unwrap();
        let p = build_scheduling(&inst, EncodingKind::DomainWall, 1.0, 1.0).unwrap();
        let v0 = p.variable(0).qubits();
        let v1 = p.variable(1).qubits();
        let inter = p
            .model()
            .couplers()
            .filter(|((a, b), _)| v0.contains(a) && v1.contains(b))
            .count();
        assert_eq!(inter, 0);
    }

    #[test]
    fn scheduling_coupler_budget_four_per_conflict_column() {
        let mut rng = crate::rng::SplitMix64::new(31);
        for _ in 0..20 {
            let inst = gen_scheduling(2, rng.next_u64()).unwrap();
            if inst.conflicts().is_empty() {
                continue;
            }
            let p = build_scheduling(&inst, EncodingKind::DomainWall, 1.0, 1.0).unwrap();
            let (e0, e1) = (&inst.events()[0], &inst.events()[1]);
            let q = (0..=e1.window())
                .filter(|&qv| {
                    (0..=e0.window()).any(|lv| {
                        intervals_overlap(e0.t_min + lv, e0.duration, e1.t_min + qv, e1.duration)
                    })
                })
                .count();
            let r0 = p.variable(0).qubits();
            let r1 = p.variable(1).qubits();
            let inter = p
                .model()
                .couplers()
                .filter(|((a, b), _)| r0.contains(a) && r1.contains(b))
                .count();
            assert!(inter <= 4 * q, "inter={inter} q={q}");
        }
    }

    #[test]
    fn scheduling_fixed_events_fold_into_penalties() {
        // Event 1 has a zero-width window: no variable, only penalties.
        let events = vec![
            SchedulingEvent {
                t_min: 0,
                t_max: 3,
                duration: 1,
            },
            SchedulingEvent {
                t_min: 1,
                t_max: 1,
                duration: 2,
            },
        ];
        let inst = SchedulingInstance::new(events, [(0, 1)]).unwrap();
        let p = build_scheduling(&inst, EncodingKind::DomainWall, 5.0, 1.0).unwrap();
        assert_eq!(p.variables().len(), 1);
        let g = p.model().brute_force().unwrap();
        // Start times 1 and 2 collide with the fixed event [1, 3).
        let mut starts: Vec<usize> = g
            .states
            .iter()
            .map(|s| p.variable(0).decode(s).unwrap().unwrap())
            .collect();
        starts.sort_unstable();
        assert_eq!(starts, vec![0, 3]);

        // Two fixed overlapping events cost a constant w.
        let events = vec![
            SchedulingEvent {
                t_min: 2,
                t_max: 2,
                duration: 3,
            },
            SchedulingEvent {
                t_min: 3,
                t_max: 3,
                duration: 1,
            },
        ];
        let inst = SchedulingInstance::new(events, [(0, 1)]).unwrap();
        let p = build_scheduling(&inst, EncodingKind::DomainWall, 5.0, 1.5).unwrap();
        assert_eq!(p.model().offset(), 1.5);
    }

    #[test]
    fn overlap_predicate_is_symmetric() {
        let mut rng = crate::rng::SplitMix64::new(9);
        for _ in 0..500 {
            let a = rng.next_int(0, 10) as i64;
            let b = rng.next_int(0, 10) as i64;
            let ta = rng.next_int(1, 5) as i64;
            let tb = rng.next_int(1, 5) as i64;
            assert_eq!(
                intervals_overlap(a, ta, b, tb),
                intervals_overlap(b, tb, a, ta)
            );
        }
    }

    #[test]
    fn swapping_event_roles_gives_isomorphic_model() {
        let inst = gen_scheduling(2, 1234).unwrap();
        let swapped = SchedulingInstance::new(
            vec![inst.events()[1], inst.events()[0]],
            inst.conflicts().iter().map(|&(a, b)| (b, a)),
        )
        .unwrap();
        let p = build_scheduling(&inst, EncodingKind::DomainWall, 2.0, 1.0).unwrap();
        let q = build_scheduling(&swapped, EncodingKind::DomainWall, 2.0, 1.0).unwrap();
        // Same energies for corresponding assignments.
        for v0 in 0..p.variable(0).m() {
            for v1 in 0..p.variable(1).m() {
                let sp = p.assignment_for_values(&[v0, v1]).unwrap();
                let sq = q.assignment_for_values(&[v1, v0]).unwrap();
                let ep = p.model().energy(&sp).unwrap();
                let eq = q.model().energy(&sq).unwrap();
                assert!((ep - eq).abs() <= ENERGY_TOL);
            }
        }
    }

    #[test]
    fn adding_an_edge_never_lowers_valid_energies() {
        let edges = gen_erdos_renyi(4, 0.5, 99).unwrap();
        let inst = ColoringInstance::new(4, 3, edges.clone()).unwrap();
        let missing = (0..4)
            .flat_map(|a| ((a + 1)..4).map(move |b| (a, b)))
            .find(|e| !edges.contains(e));
        let Some(new_edge) = missing else { return };
        let mut extended = edges;
        extended.push(new_edge);
        let bigger = ColoringInstance::new(4, 3, extended).unwrap();
        let p = build_coloring(&inst, EncodingKind::OneHot, 4.0, 1.0).unwrap();
        let q = build_coloring(&bigger, EncodingKind::OneHot, 4.0, 1.0).unwrap();
        for idx in 0..81u64 {
            let values: Vec<usize> = (0..4).map(|k| ((idx / 3u64.pow(k)) % 3) as usize).collect();
            let s = p.assignment_for_values(&values).unwrap();
            let ep = p.model().energy(&s).unwrap();
            let eq = q.model().energy(&s).unwrap();
            assert!(eq >= ep - ENERGY_TOL);
        }
    }

    #[test]
    fn classical_optima_examples() {
        let triangle = ColoringInstance::new(3, 3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(coloring_optimum(&triangle).unwrap().value, 0.0);

        let k4 =
            ColoringInstance::new(4, 3, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(coloring_optimum(&k4).unwrap().value, 1.0);

        let events = vec![
            SchedulingEvent {
                t_min: 2,
                t_max: 2,
                duration: 1,
            },
            SchedulingEvent {
                t_min: 2,
                t_max: 2,
                duration: 1,
            },
        ];
        let forced = SchedulingInstance::new(events, [(0, 1)]).unwrap();
        assert_eq!(scheduling_optimum(&forced).unwrap().value, 1.0);
    }

    #[test]
    fn critical_ratio_pinned_values() {
        assert_eq!(critical_ratio(3).unwrap(), 2.0);
        assert!((critical_ratio(4).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let big = critical_ratio(1000).unwrap();
        assert!((big - 250.0).abs() / 250.0 < 0.01);
        assert!(critical_ratio(2).is_err());
    }

    #[test]
    fn instance_json_roundtrip() {
        let inst =
            ProblemInstance::Coloring(ColoringInstance::new(4, 3, [(0, 1), (2, 3)]).unwrap());
        let text = inst.to_json();
        assert!(text.contains("\"type\":\"coloring\""));
        assert_eq!(ProblemInstance::from_json(&text).unwrap(), inst);

        let inst = ProblemInstance::Scheduling(gen_scheduling(3, 5).unwrap());
        let text = inst.to_json();
        assert!(text.contains("\"type\":\"scheduling\""));
        assert_eq!(ProblemInstance::from_json(&text).unwrap(), inst);

        assert!(ProblemInstance::from_json("{\"type\":\"mystery\"}").is_err());
    }
}
