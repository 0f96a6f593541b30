//! Hardware target graphs (Chimera, Pegasus) and interaction-graph metrics.
//!
//! Chimera: an `L×L` grid of `K_{4,4}` cells. Within a cell the four left
//! (vertical) qubits connect to the four right (horizontal) qubits; left
//! qubits chain vertically to the adjacent row's cell, right qubits
//! horizontally to the adjacent column's. `8L²` vertices,
//! `16L² + 8L(L−1)` edges, maximum degree 6.
//!
//! Pegasus: the coordinate construction over `(u, w, k, z)` with
//! `u ∈ {0,1}`, `w ∈ 0..L`, `k ∈ 0..12`, `z ∈ 0..L−1` and the standard
//! offset tables. Qubits are length-12 segments on a grid; orthogonal
//! segments couple where they cross ("internal"), collinear segments couple
//! end to end ("external") and in offset pairs ("odd"). Boundary qubits that
//! cross nothing are trimmed, leaving `8(L−1)(3L−1)` vertices with maximum
//! degree 15. Vertex numbering is lexicographic in the coordinates; the
//! correctness bar is isomorphism, not any particular library's labels.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::encoding::EncodedProblem;
use crate::{Error, Result};

/// Graph family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Chimera,
    Pegasus,
    Arbitrary,
}

impl GraphFamily {
    pub fn wire_name(self) -> &'static str {
        match self {
            GraphFamily::Chimera => "chimera",
            GraphFamily::Pegasus => "pegasus",
            GraphFamily::Arbitrary => "arbitrary",
        }
    }

    pub fn from_wire_name(s: &str) -> Result<Self> {
        match s {
            "chimera" => Ok(GraphFamily::Chimera),
            "pegasus" => Ok(GraphFamily::Pegasus),
            "arbitrary" => Ok(GraphFamily::Arbitrary),
            other => Err(Error::Json(format!("unknown graph family {other:?}"))),
        }
    }

    /// Smallest legal size parameter for generated families.
    pub fn min_size(self) -> Result<usize> {
        match self {
            GraphFamily::Chimera => Ok(1),
            GraphFamily::Pegasus => Ok(2),
            GraphFamily::Arbitrary => Err(Error::Domain(
                "arbitrary graphs have no size parameter".into(),
            )),
        }
    }
}

/// A simple undirected graph with a family tag and sorted edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct HardwareGraph {
    family: GraphFamily,
    size_param: usize,
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl HardwareGraph {
    /// Build from an edge list; keys are normalized to `a < b`, sorted, and
    /// deduplicated. Self-loops are rejected.
    pub fn from_edges(
        family: GraphFamily,
        size_param: usize,
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut normalized: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Domain(format!("self-loop on vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::Domain(format!(
                    "edge ({a},{b}) outside vertex range 0..{n_vertices}"
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(a, b) in &normalized {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Ok(Self {
            family,
            size_param,
            n_vertices,
            edges: normalized,
            adjacency,
        })
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn size_param(&self) -> usize {
        self.size_param
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n_vertices)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    /// Whether this graph's edges all appear in `other` under the identity
    /// relabeling.
    pub fn is_identity_subgraph_of(&self, other: &HardwareGraph) -> bool {
        self.n_vertices <= other.n_vertices && self.edges.iter().all(|&(a, b)| other.has_edge(a, b))
    }

    /// Breadth-first shortest path length in edges, `None` if unreachable.
    pub fn edge_distance(&self, a: usize, b: usize) -> Result<Option<usize>> {
        if a >= self.n_vertices || b >= self.n_vertices {
            return Err(Error::Domain(format!(
                "vertex out of range: ({a},{b}) in graph of {}",
                self.n_vertices
            )));
        }
        if a == b {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.n_vertices];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    if w == b {
                        return Ok(Some(dist[w]));
                    }
                    queue.push_back(w);
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> String {
        let wire = GraphWire {
            family: self.family.wire_name().to_string(),
            l: self.size_param,
            n: self.n_vertices,
            edges: self.edges.clone(),
        };
        serde_json::to_string(&wire).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: GraphWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let family = GraphFamily::from_wire_name(&wire.family)?;
        Self::from_edges(family, wire.l, wire.n, wire.edges).map_err(|e| Error::Json(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    family: String,
    #[serde(rename = "L")]
    l: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Generate the `L×L` Chimera graph.
pub fn chimera(l: usize) -> Result<HardwareGraph> {
    if l < 1 {
        return Err(Error::Domain("chimera size must be at least 1".into()));
    }
    let index = |row: usize, col: usize, shore: usize, k: usize| -> usize {
        ((row * l + col) * 2 + shore) * 4 + k
    };
    let mut edges = Vec::new();
    for row in 0..l {
        for col in 0..l {
            for k0 in 0..4 {
                for k1 in 0..4 {
                    edges.push((index(row, col, 0, k0), index(row, col, 1, k1)));
                }
            }
            for k in 0..4 {
                if row + 1 < l {
                    edges.push((index(row, col, 0, k), index(row + 1, col, 0, k)));
                }
                if col + 1 < l {
                    edges.push((index(row, col, 1, k), index(row, col + 1, 1, k)));
                }
            }
        }
    }
    HardwareGraph::from_edges(GraphFamily::Chimera, l, 8 * l * l, edges)
}

/// Per-orientation offset tables for the Pegasus crossing construction.
const PEGASUS_OFFSETS: [[usize; 12]; 2] = [
    [2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6],
    [6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct PegasusCoord {
    u: usize,
    w: usize,
    k: usize,
    z: usize,
}

/// Internal couplers: vertical qubit `(0,w,k,z)` crosses horizontal qubit
/// `(1,w',k',z')` when each lies inside the other's length-12 extent.
fn pegasus_internal_edges(l: usize) -> Vec<(PegasusCoord, PegasusCoord)> {
    let s0 = &PEGASUS_OFFSETS[0];
    let s1 = &PEGASUS_OFFSETS[1];
    let mut edges = Vec::new();
    for w in 0..l {
        for k in 0..12 {
            let x = 12 * w + k;
            for z in 0..l - 1 {
                let y_start = 12 * z + s0[k];
                for (kp, &off) in s1.iter().enumerate() {
                    // The one y ≡ k' (mod 12) inside [y_start, y_start + 12).
                    let y = y_start + (kp + 12 - y_start % 12) % 12;
                    let wp = y / 12;
                    if wp >= l {
                        continue;
                    }
                    // The one z' whose x-extent [12z' + off, +12) contains x.
                    if x < off {
                        continue;
                    }
                    let zp = (x - off) / 12;
                    if zp > l - 2 {
                        continue;
                    }
                    edges.push((
                        PegasusCoord { u: 0, w, k, z },
                        PegasusCoord {
                            u: 1,
                            w: wp,
                            k: kp,
                            z: zp,
                        },
                    ));
                }
            }
        }
    }
    edges
}

/// Generate the Pegasus graph of size `L`, trimmed to the fabric (vertices
/// with at least one internal coupler).
pub fn pegasus(l: usize) -> Result<HardwareGraph> {
    if l < 2 {
        return Err(Error::Domain("pegasus size must be at least 2".into()));
    }
    let internal = pegasus_internal_edges(l);

    let coord_index = |c: &PegasusCoord| -> usize { ((c.u * l + c.w) * 12 + c.k) * (l - 1) + c.z };
    let mut has_internal = vec![false; 2 * l * 12 * (l - 1)];
    for (a, b) in &internal {
        has_internal[coord_index(a)] = true;
        has_internal[coord_index(b)] = true;
    }

    // Relabel kept coordinates contiguously in lexicographic (u,w,k,z) order.
    let mut label = vec![usize::MAX; has_internal.len()];
    let mut n_vertices = 0;
    for u in 0..2 {
        for w in 0..l {
            for k in 0..12 {
                for z in 0..l - 1 {
                    let idx = coord_index(&PegasusCoord { u, w, k, z });
                    if has_internal[idx] {
                        label[idx] = n_vertices;
                        n_vertices += 1;
                    }
                }
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = internal
        .iter()
        .map(|(a, b)| (label[coord_index(a)], label[coord_index(b)]))
        .collect();
    for u in 0..2 {
        for w in 0..l {
            for k in 0..12 {
                for z in 0..l - 1 {
                    let here = coord_index(&PegasusCoord { u, w, k, z });
                    if !has_internal[here] {
                        continue;
                    }
                    // External coupler along the segment direction.
                    if z + 1 < l - 1 {
                        let next = coord_index(&PegasusCoord { u, w, k, z: z + 1 });
                        if has_internal[next] {
                            edges.push((label[here], label[next]));
                        }
                    }
                    // Odd coupler between the k-pair mates.
                    if k % 2 == 0 {
                        let mate = coord_index(&PegasusCoord { u, w, k: k + 1, z });
                        if has_internal[mate] {
                            edges.push((label[here], label[mate]));
                        }
                    }
                }
            }
        }
    }

    HardwareGraph::from_edges(GraphFamily::Pegasus, l, n_vertices, edges)
}

/// The interaction graph of an encoded problem: one vertex per qubit, one
/// edge per nonzero coupler.
pub fn interaction_graph(p: &EncodedProblem) -> HardwareGraph {
    HardwareGraph::from_edges(
        GraphFamily::Arbitrary,
        0,
        p.n_qubits(),
        p.model().couplers().map(|(key, _)| key),
    )
    .expect("couplers are valid edges by construction")
}
