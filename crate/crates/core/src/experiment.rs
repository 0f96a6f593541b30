//! Deterministic embedding-overhead experiments with CSV output.
//!
//! For each (size, instance, encoding, target) combination the harness
//! generates an instance from a seed fanned out of the master seed, encodes
//! it, computes its interaction graph, searches for the minimum embeddable
//! hardware size, and emits one CSV row. Instance seeds depend only on
//! `(master_seed, size, instance_index)`, so extending the size list never
//! reshuffles existing instances, and the full CSV is byte-deterministic for
//! a fixed spec.

use rayon::prelude::*;

use crate::embedding::{min_embeddable_size, EmbedParams, DEFAULT_SIZE_CEILING};
use crate::encoding::EncodingKind;
use crate::hardware::{interaction_graph, GraphFamily};
use crate::problems::{gen_erdos_renyi, gen_scheduling, ColoringInstance, ProblemInstance};
use crate::rng::derive_seed;
use crate::{Error, Result};

/// Default number of instances per size.
pub const DEFAULT_INSTANCES: usize = 10;

/// The generated experiment families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemFamily {
    /// Three-coloring of Erdős–Rényi graphs with edge probability 0.5;
    /// size = vertex count.
    ThreeColor,
    /// n-coloring of Erdős–Rényi graphs with edge probability 0.75 and
    /// `2n` vertices; size = color count n.
    NColor,
    /// Schedule conflict minimization; size = event count.
    Scheduling,
}

impl ProblemFamily {
    pub fn wire_name(self) -> &'static str {
        match self {
            ProblemFamily::ThreeColor => "three-color",
            ProblemFamily::NColor => "n-color",
            ProblemFamily::Scheduling => "scheduling",
        }
    }

    pub fn from_wire_name(s: &str) -> Result<Self> {
        match s {
            "three-color" => Ok(ProblemFamily::ThreeColor),
            "n-color" => Ok(ProblemFamily::NColor),
            "scheduling" => Ok(ProblemFamily::Scheduling),
            other => Err(Error::Domain(format!("unknown problem family {other:?}"))),
        }
    }

    /// Generate one instance of this family.
    pub fn generate(self, size: usize, seed: u64) -> Result<ProblemInstance> {
        match self {
            ProblemFamily::ThreeColor => {
                let edges = gen_erdos_renyi(size, 0.5, seed)?;
                Ok(ProblemInstance::Coloring(ColoringInstance::new(
                    size, 3, edges,
                )?))
            }
            ProblemFamily::NColor => {
                let vertices = 2 * size;
                let edges = gen_erdos_renyi(vertices, 0.75, seed)?;
                Ok(ProblemInstance::Coloring(ColoringInstance::new(
                    vertices, size, edges,
                )?))
            }
            ProblemFamily::Scheduling => {
                Ok(ProblemInstance::Scheduling(gen_scheduling(size, seed)?))
            }
        }
    }

    fn min_size(self) -> usize {
        match self {
            ProblemFamily::ThreeColor => 3,
            ProblemFamily::NColor => 2,
            ProblemFamily::Scheduling => 2,
        }
    }
}

/// Full description of an experiment run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub family: ProblemFamily,
    pub sizes: Vec<usize>,
    pub instances: usize,
    pub encodings: Vec<EncodingKind>,
    pub targets: Vec<GraphFamily>,
    pub master_seed: u64,
    pub tries: usize,
}

impl ExperimentSpec {
    fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.encodings.is_empty() || self.targets.is_empty() {
            return Err(Error::Domain(
                "sizes, encodings, and targets must be non-empty".into(),
            ));
        }
        if self.instances == 0 {
            return Err(Error::Domain("instances must be at least 1".into()));
        }
        if self.tries == 0 {
            return Err(Error::Domain("tries must be at least 1".into()));
        }
        if let Some(&s) = self.sizes.iter().find(|&&s| s < self.family.min_size()) {
            return Err(Error::Domain(format!(
                "size {s} is below the minimum for {}",
                self.family.wire_name()
            )));
        }
        if self.targets.contains(&GraphFamily::Arbitrary) {
            return Err(Error::Domain("targets must be chimera or pegasus".into()));
        }
        Ok(())
    }
}

/// Terminal status of one experiment row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// No embedding up to the hardware ceiling.
    EmbedFailed,
    /// Unexpected per-row failure; the run continues.
    Error(String),
}

impl RowStatus {
    fn to_csv(&self) -> String {
        match self {
            RowStatus::Ok => "ok".to_string(),
            RowStatus::EmbedFailed => "embed_failed".to_string(),
            RowStatus::Error(msg) => format!("error: {}", msg.replace([',', '\n'], ";")),
        }
    }

    fn from_csv(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(RowStatus::Ok),
            "embed_failed" => Ok(RowStatus::EmbedFailed),
            other if other.starts_with("error: ") => {
                Ok(RowStatus::Error(other["error: ".len()..].to_string()))
            }
            other => Err(Error::Domain(format!("unknown row status {other:?}"))),
        }
    }
}

/// One observation of the experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub problem_type: String,
    pub size_param: usize,
    pub instance_index: usize,
    pub instance_seed: u64,
    pub encoding: EncodingKind,
    pub target_family: GraphFamily,
    pub min_l: Option<usize>,
    pub logical_qubits: usize,
    pub physical_qubits: Option<usize>,
    pub embedding_ratio: Option<f64>,
    pub couplers: usize,
    pub tries: usize,
    pub status: RowStatus,
}

/// CSV header, fixed exactly in this column order.
pub const CSV_HEADER: &str = "problem_type,size_param,instance_index,instance_seed,encoding,target_family,min_L,logical_qubits,physical_qubits,embedding_ratio,couplers,tries,status";

fn opt_to_string<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl ResultRow {
    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.problem_type,
            self.size_param,
            self.instance_index,
            self.instance_seed,
            self.encoding.wire_name(),
            self.target_family.wire_name(),
            opt_to_string(&self.min_l),
            self.logical_qubits,
            opt_to_string(&self.physical_qubits),
            opt_to_string(&self.embedding_ratio),
            self.couplers,
            self.tries,
            self.status.to_csv()
        )
    }
}

/// Run every (size, instance, encoding, target) combination of the spec.
///
/// Rows are computed in parallel over instances but always returned in
/// canonical order (sizes, then instances, then encodings, then targets, in
/// spec order). Per-row embedding failures are recorded in `status`; the run
/// continues.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let tasks: Vec<(usize, usize)> = spec
        .sizes
        .iter()
        .flat_map(|&size| (0..spec.instances).map(move |idx| (size, idx)))
        .collect();
    let groups: Vec<Result<Vec<ResultRow>>> = tasks
        .par_iter()
        .map(|&(size, idx)| run_instance(spec, size, idx))
        .collect();
    let mut rows = Vec::with_capacity(tasks.len() * spec.encodings.len() * spec.targets.len());
    for group in groups {
        rows.extend(group?);
    }
    Ok(rows)
}

fn encoding_tag(kind: EncodingKind) -> u64 {
    match kind {
        EncodingKind::DomainWall => 0,
        EncodingKind::OneHot => 1,
    }
}

fn target_tag(family: GraphFamily) -> u64 {
    match family {
        GraphFamily::Chimera => 0,
        GraphFamily::Pegasus => 1,
        GraphFamily::Arbitrary => 2,
    }
}

fn run_instance(spec: &ExperimentSpec, size: usize, idx: usize) -> Result<Vec<ResultRow>> {
    let instance_seed = derive_seed(spec.master_seed, &[size as u64, idx as u64]);
    let instance = spec.family.generate(size, instance_seed)?;
    let mut rows = Vec::new();
    for &encoding in &spec.encodings {
        let problem = instance.encode(encoding, None, 1.0)?;
        let graph = interaction_graph(&problem);
        let logical_qubits = graph.n_vertices();
        let couplers = problem.model().coupler_count();
        for &target_family in &spec.targets {
            let params = EmbedParams {
                max_tries: spec.tries,
                seed: derive_seed(
                    instance_seed,
                    &[encoding_tag(encoding), target_tag(target_family)],
                ),
                ..EmbedParams::default()
            };
            let mut row = ResultRow {
                problem_type: spec.family.wire_name().to_string(),
                size_param: size,
                instance_index: idx,
                instance_seed,
                encoding,
                target_family,
                min_l: None,
                logical_qubits,
                physical_qubits: None,
                embedding_ratio: None,
                couplers,
                tries: spec.tries,
                status: RowStatus::Ok,
            };
            match min_embeddable_size(&graph, target_family, &params, None, DEFAULT_SIZE_CEILING) {
                Ok(res) => {
                    let physical = res.embedding.total_chain_size();
                    row.min_l = Some(res.min_l);
                    row.physical_qubits = Some(physical);
                    row.embedding_ratio = Some(physical as f64 / logical_qubits as f64);
                }
                Err(Error::NoEmbedding { .. }) => row.status = RowStatus::EmbedFailed,
                Err(e) => row.status = RowStatus::Error(e.to_string()),
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Render rows as CSV with the fixed header and a trailing newline.
pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// Parse a CSV document produced by [`to_csv`]. Malformed rows are rejected
/// with their 1-based line numbers.
pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Csv {
                line: 1,
                message: format!("unexpected header {header:?}"),
            })
        }
        None => {
            return Err(Error::Csv {
                line: 1,
                message: "empty document".into(),
            })
        }
    }
    let mut rows = Vec::new();
    let mut bad_lines: Vec<(usize, String)> = Vec::new();
    for (zero_based, line) in lines {
        let line_no = zero_based + 1;
        if line.is_empty() {
            continue;
        }
        match parse_row(line) {
            Ok(row) => rows.push(row),
            Err(e) => bad_lines.push((line_no, e.to_string())),
        }
    }
    if let Some((first, _)) = bad_lines.first() {
        let all: Vec<String> = bad_lines.iter().map(|(n, _)| n.to_string()).collect();
        return Err(Error::Csv {
            line: *first,
            message: format!("{} (malformed lines: {})", bad_lines[0].1, all.join(", ")),
        });
    }
    Ok(rows)
}

fn parse_row(line: &str) -> Result<ResultRow> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 13 {
        return Err(Error::Domain(format!(
            "expected 13 fields, got {}",
            fields.len()
        )));
    }
    let parse_usize = |s: &str, name: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Domain(format!("bad {name} {s:?}")))
    };
    let parse_opt_usize = |s: &str, name: &str| -> Result<Option<usize>> {
        if s.is_empty() {
            Ok(None)
        } else {
            parse_usize(s, name).map(Some)
        }
    };
    Ok(ResultRow {
        problem_type: fields[0].to_string(),
        size_param: parse_usize(fields[1], "size_param")?,
        instance_index: parse_usize(fields[2], "instance_index")?,
        instance_seed: fields[3]
            .parse()
            .map_err(|_| Error::Domain(format!("bad instance_seed {:?}", fields[3])))?,
        encoding: EncodingKind::from_wire_name(fields[4])
            .map_err(|_| Error::Domain(format!("bad encoding {:?}", fields[4])))?,
        target_family: GraphFamily::from_wire_name(fields[5])
            .map_err(|_| Error::Domain(format!("bad target_family {:?}", fields[5])))?,
        min_l: parse_opt_usize(fields[6], "min_L")?,
        logical_qubits: parse_usize(fields[7], "logical_qubits")?,
        physical_qubits: parse_opt_usize(fields[8], "physical_qubits")?,
        embedding_ratio: if fields[9].is_empty() {
            None
        } else {
            Some(
                fields[9]
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad embedding_ratio {:?}", fields[9])))?,
            )
        },
        couplers: parse_usize(fields[10], "couplers")?,
        tries: parse_usize(fields[11], "tries")?,
        status: RowStatus::from_csv(fields[12])?,
    })
}

/// Min/max/mean statistics of one quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    fn from_values(values: &[f64]) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Self { min, max, mean }
    }
}

/// Aggregated statistics for one (problem, size, encoding, target) group.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub problem_type: String,
    pub size_param: usize,
    pub encoding: EncodingKind,
    pub target_family: GraphFamily,
    /// Number of `ok` rows aggregated.
    pub count: usize,
    pub min_l: Stats,
    pub embedding_ratio: Stats,
}

/// Aggregate a result CSV per (size, encoding, target) group. Rows whose
/// status is not `ok` are excluded from the statistics. The output is
/// invariant under input row permutations.
pub fn summarize(text: &str) -> Result<Vec<SummaryRow>> {
    let rows = parse_csv(text)?;
    let mut groups: std::collections::BTreeMap<(String, usize, u64, u64), Vec<&ResultRow>> =
        std::collections::BTreeMap::new();
    for row in &rows {
        if row.status != RowStatus::Ok {
            continue;
        }
        groups
            .entry((
                row.problem_type.clone(),
                row.size_param,
                encoding_tag(row.encoding),
                target_tag(row.target_family),
            ))
            .or_default()
            .push(row);
    }
    let mut out = Vec::new();
    for ((problem_type, size_param, enc_tag, tgt_tag), members) in groups {
        let min_ls: Vec<f64> = members
            .iter()
            .filter_map(|r| r.min_l.map(|v| v as f64))
            .collect();
        let ratios: Vec<f64> = members.iter().filter_map(|r| r.embedding_ratio).collect();
        if min_ls.is_empty() || ratios.is_empty() {
            continue;
        }
        out.push(SummaryRow {
            problem_type,
            size_param,
            encoding: if enc_tag == 0 {
                EncodingKind::DomainWall
            } else {
                EncodingKind::OneHot
            },
            target_family: if tgt_tag == 0 {
                GraphFamily::Chimera
            } else {
                GraphFamily::Pegasus
            },
            count: members.len(),
            min_l: Stats::from_values(&min_ls),
            embedding_ratio: Stats::from_values(&ratios),
        });
    }
    Ok(out)
}

/// Summary CSV header.
pub const SUMMARY_HEADER: &str = "problem_type,size_param,encoding,target_family,count,min_L_min,min_L_max,min_L_mean,ratio_min,ratio_max,ratio_mean";

/// Render summary rows as CSV.
pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.problem_type,
            r.size_param,
            r.encoding.wire_name(),
            r.target_family.wire_name(),
            r.count,
            r.min_l.min,
            r.min_l.max,
            r.min_l.mean,
            r.embedding_ratio.min,
            r.embedding_ratio.max,
            r.embedding_ratio.mean
        ));
    }
    out
}
