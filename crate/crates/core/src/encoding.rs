//! Encodings of discrete `ℤ_m` variables into Ising qubits.
//!
//! Two encodings are provided:
//!
//! - **Domain wall**: `m−1` qubits in a ferromagnetic chain with pinned
//!   virtual endpoints (`Z̄_{−1} = −1`, `Z̄_N = +1`); the chain's single
//!   domain-wall position is the value. Core terms per variable:
//!   `J_{i,i+1} = −λ`, `h_0 = +λ`, `h_{N−1} = −λ`.
//! - **One hot**: `m` qubits with `J_{ij} = +λ` for all pairs and
//!   `h_i = −(m−2)λ`; the single hot bit's index is the value.
//!
//! Value indicators `δ_i` expand into at most linear terms plus a tracked
//! constant, so products `δ_i^k δ_j^l`, and with them arbitrary two-variable
//! value matrices, compile to at most two-body Ising terms. Offsets are
//! tracked exactly: on every valid pair of values `(i, j)` the energy added
//! by an interaction equals `E[i][j]` with no free constant.

use serde::{Deserialize, Serialize};

use crate::ising::{IsingModel, SpinAssignment};
use crate::{Error, Result};

/// Which encoding a variable uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    DomainWall,
    OneHot,
}

impl EncodingKind {
    /// Wire name used in JSON and CSV ("dw" / "onehot").
    pub fn wire_name(self) -> &'static str {
        match self {
            EncodingKind::DomainWall => "dw",
            EncodingKind::OneHot => "onehot",
        }
    }

    pub fn from_wire_name(s: &str) -> Result<Self> {
        match s {
            "dw" => Ok(EncodingKind::DomainWall),
            "onehot" => Ok(EncodingKind::OneHot),
            other => Err(Error::Json(format!("unknown encoding kind {other:?}"))),
        }
    }

    /// Number of qubits a `ℤ_m` variable occupies.
    pub fn qubits_for(self, m: usize) -> usize {
        match self {
            EncodingKind::DomainWall => m - 1,
            EncodingKind::OneHot => m,
        }
    }
}

/// An encoded discrete variable: its id, encoding, domain size, qubit range
/// in the host model, and core penalty strength λ.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableHandle {
    id: usize,
    kind: EncodingKind,
    m: usize,
    qubits: std::ops::Range<usize>,
    lambda: f64,
}

impl VariableHandle {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    /// Domain size; values run `0..m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Qubit index range in the host model.
    pub fn qubits(&self) -> std::ops::Range<usize> {
        self.qubits.clone()
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    /// Global index of this variable's local qubit `i`.
    pub fn qubit(&self, i: usize) -> usize {
        debug_assert!(i < self.n_qubits());
        self.qubits.start + i
    }

    /// Decode the variable's value from a spin assignment covering its
    /// qubits, or `None` if the local configuration is invalid (more than
    /// one wall / not exactly one hot bit).
    pub fn decode(&self, s: &SpinAssignment) -> Result<Option<usize>> {
        if s.len() < self.qubits.end {
            return Err(Error::DimensionMismatch {
                expected: self.qubits.end,
                got: s.len(),
            });
        }
        match self.kind {
            EncodingKind::DomainWall => {
                // Valid states are 1^k 0^(N−k); the wall position k is the value.
                let n = self.n_qubits();
                let mut k = 0;
                while k < n && s.bit(self.qubit(k)) == 1 {
                    k += 1;
                }
                for i in k..n {
                    if s.bit(self.qubit(i)) == 1 {
                        return Ok(None);
                    }
                }
                Ok(Some(k))
            }
            EncodingKind::OneHot => {
                let mut hot = None;
                for i in 0..self.n_qubits() {
                    if s.bit(self.qubit(i)) == 1 {
                        if hot.is_some() {
                            return Ok(None);
                        }
                        hot = Some(i);
                    }
                }
                Ok(hot)
            }
        }
    }

    /// Whether the assignment restricted to this variable decodes to a value.
    pub fn is_valid(&self, s: &SpinAssignment) -> Result<bool> {
        Ok(self.decode(s)?.is_some())
    }

    /// Write the bits encoding `value` into a bit buffer covering the host
    /// model.
    fn write_value(&self, value: usize, bits: &mut [u8]) {
        match self.kind {
            EncodingKind::DomainWall => {
                for i in 0..self.n_qubits() {
                    bits[self.qubit(i)] = u8::from(i < value);
                }
            }
            EncodingKind::OneHot => {
                for i in 0..self.n_qubits() {
                    bits[self.qubit(i)] = u8::from(i == value);
                }
            }
        }
    }

    /// Expansion of the value indicator `δ_value` into linear terms plus an
    /// offset (global qubit indices).
    ///
    /// Domain wall: `δ̄_i = ½(Z̄_i − Z̄_{i−1})` with the virtual substitutions
    /// `Z̄_{−1} = −1`, `Z̄_N = +1`. One hot: the bit indicator `(1 − Z_i)/2`.
    /// On every valid state the expansion evaluates to 1 exactly when the
    /// variable's value is `value`, else 0.
    pub fn delta_expansion(&self, value: usize) -> Result<DeltaExpansion> {
        let affine = self.delta_affine(value)?;
        Ok(DeltaExpansion {
            linear: affine.linear,
            offset: affine.constant,
        })
    }

    fn delta_affine(&self, value: usize) -> Result<Affine> {
        if value >= self.m {
            return Err(Error::Domain(format!(
                "value {value} out of range for ℤ_{}",
                self.m
            )));
        }
        match self.kind {
            EncodingKind::DomainWall => {
                let hi = self.zbar(value as isize);
                let lo = self.zbar(value as isize - 1);
                Ok(hi.sub(&lo).scaled(0.5))
            }
            EncodingKind::OneHot => Ok(Affine {
                linear: vec![(self.qubit(value), -0.5)],
                constant: 0.5,
            }),
        }
    }

    /// `Z̄_i` for a domain-wall chain: the real qubit for interior indices,
    /// the pinned constants at the virtual endpoints.
    fn zbar(&self, i: isize) -> Affine {
        debug_assert_eq!(self.kind, EncodingKind::DomainWall);
        let n = self.n_qubits() as isize;
        if i < 0 {
            Affine::constant(-1.0)
        } else if i >= n {
            Affine::constant(1.0)
        } else {
            Affine {
                linear: vec![(self.qubit(i as usize), 1.0)],
                constant: 0.0,
            }
        }
    }
}

/// Linear terms plus offset produced by [`VariableHandle::delta_expansion`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaExpansion {
    /// `(global qubit, coefficient)` pairs, at most two entries.
    pub linear: Vec<(usize, f64)>,
    pub offset: f64,
}

/// An affine form `Σ c_q Z_q + constant` over a handful of qubits.
#[derive(Debug, Clone, PartialEq)]
struct Affine {
    linear: Vec<(usize, f64)>,
    constant: f64,
}

impl Affine {
    fn constant(c: f64) -> Self {
        Self {
            linear: Vec::new(),
            constant: c,
        }
    }

    fn sub(&self, other: &Affine) -> Affine {
        let mut linear = self.linear.clone();
        for &(q, c) in &other.linear {
            linear.push((q, -c));
        }
        Affine {
            linear,
            constant: self.constant - other.constant,
        }
    }

    fn scaled(mut self, s: f64) -> Affine {
        for (_, c) in &mut self.linear {
            *c *= s;
        }
        self.constant *= s;
        self
    }

    /// `1 − self`.
    fn one_minus(&self) -> Affine {
        let mut out = self.clone();
        for (_, c) in &mut out.linear {
            *c = -*c;
        }
        out.constant = 1.0 - self.constant;
        out
    }

    /// `1 + self`.
    fn one_plus(&self) -> Affine {
        let mut out = self.clone();
        out.constant += 1.0;
        out
    }
}

/// A dense `m_k × m_l` matrix of interaction energies between the values of
/// two variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ValueMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// `w` on the diagonal, zero elsewhere (penalizes equal values).
    pub fn scaled_identity(n: usize, w: f64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, w);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("ragged value matrix".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Largest absolute entry; used for λ recommendations.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
    }
}

/// An Ising model together with the registry of encoded variables living in
/// it. Construction is single-threaded builder style; finished problems are
/// immutable and freely shareable.
#[derive(Debug, Clone, Default)]
pub struct EncodedProblem {
    model: IsingModel,
    variables: Vec<VariableHandle>,
    /// Per-variable Σ over interactions of max|E|, for λ recommendations.
    interaction_load: Vec<f64>,
}

impl EncodedProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn model(&self) -> &IsingModel {
        &self.model
    }

    pub fn variables(&self) -> &[VariableHandle] {
        &self.variables
    }

    pub fn variable(&self, id: usize) -> &VariableHandle {
        &self.variables[id]
    }

    pub fn n_qubits(&self) -> usize {
        self.model.n_qubits()
    }

    fn check_var(&self, v: &VariableHandle) -> Result<()> {
        let stored = self.variables.get(v.id).ok_or_else(|| {
            Error::Domain(format!("variable {} does not belong to this problem", v.id))
        })?;
        if stored != v {
            return Err(Error::Domain(format!(
                "variable {} does not match this problem's registry",
                v.id
            )));
        }
        Ok(())
    }

    fn add_variable(
        &mut self,
        kind: EncodingKind,
        m: usize,
        lambda: f64,
    ) -> Result<VariableHandle> {
        if m < 2 {
            return Err(Error::Domain(format!(
                "domain size m={m} must be at least 2"
            )));
        }
        if lambda <= 0.0 {
            return Err(Error::Domain(format!("λ={lambda} must be positive")));
        }
        let qubits = self.model.add_qubits(kind.qubits_for(m));
        let handle = VariableHandle {
            id: self.variables.len(),
            kind,
            m,
            qubits,
            lambda,
        };
        match kind {
            EncodingKind::DomainWall => {
                let n = handle.n_qubits();
                for i in 0..n.saturating_sub(1) {
                    self.model
                        .add_coupler(handle.qubit(i), handle.qubit(i + 1), -lambda);
                }
                // For n = 1 the two end fields land on the same qubit and cancel.
                self.model.add_field(handle.qubit(0), lambda);
                self.model.add_field(handle.qubit(n - 1), -lambda);
            }
            EncodingKind::OneHot => {
                let coeff = -((m as f64) - 2.0) * lambda;
                for i in 0..m {
                    for j in (i + 1)..m {
                        self.model
                            .add_coupler(handle.qubit(i), handle.qubit(j), lambda);
                    }
                    self.model.add_field(handle.qubit(i), coeff);
                }
            }
        }
        self.variables.push(handle.clone());
        self.interaction_load.push(0.0);
        Ok(handle)
    }

    /// Append a domain-wall encoded `ℤ_m` variable with core strength λ.
    ///
    /// The core's ground manifold alone is exactly the `m` single-wall
    /// states at energy `−λ(m−2)`; every extra wall pair costs `4λ`.
    pub fn add_domain_wall_variable(&mut self, m: usize, lambda: f64) -> Result<VariableHandle> {
        self.add_variable(EncodingKind::DomainWall, m, lambda)
    }

    /// Append a one-hot encoded `ℤ_m` variable with core strength λ.
    ///
    /// The core's ground manifold alone is exactly the `m` single-hot-bit
    /// states; the first invalid level sits `2λ` above them.
    pub fn add_one_hot_variable(&mut self, m: usize, lambda: f64) -> Result<VariableHandle> {
        self.add_variable(EncodingKind::OneHot, m, lambda)
    }

    /// Append a variable of the given kind.
    pub fn add_variable_of_kind(
        &mut self,
        kind: EncodingKind,
        m: usize,
        lambda: f64,
    ) -> Result<VariableHandle> {
        self.add_variable(kind, m, lambda)
    }

    /// Add a constant energy to the model.
    pub fn add_constant(&mut self, v: f64) {
        self.model.add_offset(v);
    }

    /// Add `w · δ_value` for one variable: every valid state with this value
    /// rises by exactly `w`, all other valid states are unchanged.
    pub fn add_value_penalty(&mut self, v: &VariableHandle, value: usize, w: f64) -> Result<()> {
        self.check_var(v)?;
        let delta = v.delta_expansion(value)?;
        for (q, c) in delta.linear {
            self.model.add_field(q, w * c);
        }
        self.model.add_offset(w * delta.offset);
        Ok(())
    }

    /// Add the two-variable interaction `Σ_{i,j} E[i][j] δ_i^k δ_j^l`,
    /// expanded to at most two-body terms plus a tracked offset.
    ///
    /// Exactness: for every valid pair of values `(i, j)`, the added energy
    /// equals `E[i][j]` exactly: offsets are tracked, there is no free
    /// constant.
    pub fn add_interaction(
        &mut self,
        vk: &VariableHandle,
        vl: &VariableHandle,
        e: &ValueMatrix,
    ) -> Result<()> {
        if vk.id == vl.id {
            return Err(Error::AliasedVariables);
        }
        self.check_var(vk)?;
        self.check_var(vl)?;
        if e.rows() != vk.m || e.cols() != vl.m {
            return Err(Error::Domain(format!(
                "value matrix is {}×{}, variables are ℤ_{} × ℤ_{}",
                e.rows(),
                e.cols(),
                vk.m,
                vl.m
            )));
        }
        let dk: Vec<Affine> = (0..vk.m).map(|i| vk.delta_affine(i).unwrap()).collect();
        let dl: Vec<Affine> = (0..vl.m).map(|j| vl.delta_affine(j).unwrap()).collect();
        for i in 0..vk.m {
            for j in 0..vl.m {
                let c = e.at(i, j);
                if c != 0.0 {
                    self.add_affine_product(&dk[i], &dl[j], c);
                }
            }
        }
        let load = e.max_abs();
        self.interaction_load[vk.id] += load;
        self.interaction_load[vl.id] += load;
        Ok(())
    }

    /// Add the ordering penalty between two domain-wall variables of equal
    /// size: over valid pairs the added energy is 0 iff
    /// `value(lo) < value(hi)`, and at least `strength` otherwise.
    ///
    /// Per chain site `i` (including the virtual end site) the penalty is the
    /// two-body indicator `¼·(1 − Z̄^lo_{i−1})(1 + Z̄^hi_i)`, which is 1
    /// exactly on the forbidden pattern `value(lo) ≥ i ∧ value(hi) ≤ i`.
    pub fn add_order_constraint(
        &mut self,
        lo: &VariableHandle,
        hi: &VariableHandle,
        strength: f64,
    ) -> Result<()> {
        self.check_var(lo)?;
        self.check_var(hi)?;
        if lo.kind != EncodingKind::DomainWall || hi.kind != EncodingKind::DomainWall {
            return Err(Error::KindMismatch(
                "order constraints require two domain-wall variables".into(),
            ));
        }
        if lo.m != hi.m {
            return Err(Error::KindMismatch(format!(
                "order constraint needs equal domains, got ℤ_{} and ℤ_{}",
                lo.m, hi.m
            )));
        }
        if lo.id == hi.id {
            return Err(Error::AliasedVariables);
        }
        if strength <= 0.0 {
            return Err(Error::Domain(format!(
                "strength {strength} must be positive"
            )));
        }
        let n = lo.n_qubits() as isize;
        for i in 0..=n {
            let a = lo.zbar(i - 1).one_minus();
            let b = hi.zbar(i).one_plus();
            self.add_affine_product(&a, &b, strength / 4.0);
        }
        Ok(())
    }

    /// Accumulate `scale · a · b` into the model. The supports of `a` and
    /// `b` must be disjoint, which holds for the δ and Z̄ forms of two
    /// distinct variables.
    fn add_affine_product(&mut self, a: &Affine, b: &Affine, scale: f64) {
        for &(qa, ca) in &a.linear {
            for &(qb, cb) in &b.linear {
                debug_assert_ne!(qa, qb);
                self.model.add_coupler(qa, qb, scale * ca * cb);
            }
        }
        if b.constant != 0.0 {
            for &(qa, ca) in &a.linear {
                self.model.add_field(qa, scale * ca * b.constant);
            }
        }
        if a.constant != 0.0 {
            for &(qb, cb) in &b.linear {
                self.model.add_field(qb, scale * a.constant * cb);
            }
        }
        self.model.add_offset(scale * a.constant * b.constant);
    }

    /// Spin assignment realizing the given value for every variable.
    pub fn assignment_for_values(&self, values: &[usize]) -> Result<SpinAssignment> {
        if values.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                got: values.len(),
            });
        }
        let mut bits = vec![0u8; self.n_qubits()];
        for (v, &value) in self.variables.iter().zip(values) {
            if value >= v.m {
                return Err(Error::Domain(format!(
                    "value {value} out of range for variable {} (ℤ_{})",
                    v.id, v.m
                )));
            }
            v.write_value(value, &mut bits);
        }
        Ok(SpinAssignment::from_bits(&bits))
    }

    /// Decode every variable; `None` entries mark invalid local patterns.
    pub fn decode_all(&self, s: &SpinAssignment) -> Result<Vec<Option<usize>>> {
        self.variables.iter().map(|v| v.decode(s)).collect()
    }

    /// Recommended core strength for one variable: `1 + Σ max|E|` over the
    /// interactions touching it.
    pub fn recommended_lambda(&self, id: usize) -> f64 {
        1.0 + self.interaction_load[id]
    }

    /// Largest per-variable recommendation in the problem.
    pub fn max_recommended_lambda(&self) -> f64 {
        (0..self.variables.len())
            .map(|id| self.recommended_lambda(id))
            .fold(1.0, f64::max)
    }

    /// Variables whose λ sits below the recommendation. Advisory only;
    /// small λ can still be correct for specific value matrices.
    pub fn lambda_warnings(&self) -> Vec<LambdaWarning> {
        self.variables
            .iter()
            .filter_map(|v| {
                let recommended = self.recommended_lambda(v.id);
                (v.lambda < recommended).then(|| LambdaWarning {
                    variable: v.id,
                    lambda: v.lambda,
                    recommended,
                })
            })
            .collect()
    }

    /// Serialize to the model JSON wire format.
    pub fn to_json(&self) -> String {
        let wire = ModelWire {
            n: self.n_qubits(),
            h: self.model.fields().collect(),
            j: self.model.couplers().map(|((a, b), v)| (a, b, v)).collect(),
            offset: self.model.offset(),
            variables: self
                .variables
                .iter()
                .map(|v| VariableWire {
                    id: v.id,
                    kind: v.kind.wire_name().to_string(),
                    m: v.m,
                    qubits: (v.qubits.start, v.qubits.end - 1),
                    lambda: v.lambda,
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("model serialization cannot fail")
    }

    /// Parse and validate the model JSON wire format.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ModelWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut model = IsingModel::new(wire.n);
        model.add_offset(wire.offset);
        for (i, v) in wire.h {
            if i >= wire.n {
                return Err(Error::Json(format!("field index {i} out of range")));
            }
            model.add_field(i, v);
        }
        for (a, b, v) in wire.j {
            if a >= wire.n || b >= wire.n {
                return Err(Error::Json(format!("coupler ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Json(format!("self-coupler on qubit {a}")));
            }
            model.add_coupler(a, b, v);
        }
        let mut variables = Vec::new();
        let mut cursor = 0usize;
        for (idx, vw) in wire.variables.iter().enumerate() {
            let kind = EncodingKind::from_wire_name(&vw.kind)?;
            let (lo, hi) = vw.qubits;
            if vw.id != idx {
                return Err(Error::Json(format!(
                    "variable ids must be sequential, got {} at position {idx}",
                    vw.id
                )));
            }
            if vw.m < 2 || vw.lambda <= 0.0 {
                return Err(Error::Json(format!("variable {idx} has invalid m or λ")));
            }
            if lo != cursor || hi + 1 != lo + kind.qubits_for(vw.m) {
                return Err(Error::Json(format!(
                    "variable {idx} qubit range [{lo},{hi}] is not contiguous with its predecessors"
                )));
            }
            cursor = hi + 1;
            variables.push(VariableHandle {
                id: vw.id,
                kind,
                m: vw.m,
                qubits: lo..hi + 1,
                lambda: vw.lambda,
            });
        }
        if !variables.is_empty() && cursor != wire.n {
            return Err(Error::Json(format!(
                "variables cover {cursor} qubits but the model has {}",
                wire.n
            )));
        }
        let n_vars = variables.len();
        Ok(Self {
            model,
            variables,
            interaction_load: vec![0.0; n_vars],
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelWire {
    n: usize,
    h: Vec<(usize, f64)>,
    j: Vec<(usize, usize, f64)>,
    offset: f64,
    variables: Vec<VariableWire>,
}

/// Variable record in model JSON; `qubits` is the inclusive `[first, last]`
/// index pair.
#[derive(Serialize, Deserialize)]
struct VariableWire {
    id: usize,
    kind: String,
    m: usize,
    qubits: (usize, usize),
    lambda: f64,
}

/// Build `k` chained domain-wall `ℤ_m` variables whose ground manifold is
/// exactly the strictly increasing k-tuples of values: `C(m, k)` states.
pub fn build_k_hot_ensemble(
    k: usize,
    m: usize,
    lambda: f64,
    strength: f64,
) -> Result<EncodedProblem> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if k > m {
        return Err(Error::Infeasible(format!(
            "no strictly increasing {k}-tuple exists in ℤ_{m}"
        )));
    }
    let mut p = EncodedProblem::new();
    let vars: Vec<VariableHandle> = (0..k)
        .map(|_| p.add_domain_wall_variable(m, lambda))
        .collect::<Result<_>>()?;
    for w in vars.windows(2) {
        p.add_order_constraint(&w[0], &w[1], strength)?;
    }
    Ok(p)
}

/// A variable whose core strength sits below the recommendation.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaWarning {
    pub variable: usize,
    pub lambda: f64,
    pub recommended: f64,
}

impl std::fmt::Display for LambdaWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "variable {}: λ={} is below the recommended {}",
            self.variable, self.lambda, self.recommended
        )
    }
}

/// Encoding to compare in [`encoding_metrics`]; `Binary` reports only its
/// qubit count (its coupler structure is problem dependent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricEncoding {
    DomainWall,
    OneHot,
    Binary,
}

/// Structure of the couplers inside a single encoded variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntraConnectivity {
    Linear,
    Complete,
}

/// Per-variable resource metrics of an encoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingMetrics {
    pub qubits: usize,
    /// `None` for binary, where the count depends on the problem.
    pub core_couplers: Option<usize>,
    /// `None` for binary.
    pub intra_connectivity: Option<IntraConnectivity>,
}

/// Qubit and core-coupler counts per `ℤ_m` variable.
///
/// Domain wall: `m−1` qubits on a linear chain with `m−2` couplers. One hot:
/// `m` qubits on a complete graph with `m(m−1)/2` couplers. Binary:
/// `⌈log₂ m⌉` qubits; coupler structure unsupported here.
pub fn encoding_metrics(kind: MetricEncoding, m: usize) -> Result<EncodingMetrics> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "domain size m={m} must be at least 2"
        )));
    }
    Ok(match kind {
        MetricEncoding::DomainWall => EncodingMetrics {
            qubits: m - 1,
            core_couplers: Some(m - 2),
            intra_connectivity: Some(IntraConnectivity::Linear),
        },
        MetricEncoding::OneHot => EncodingMetrics {
            qubits: m,
            core_couplers: Some(m * (m - 1) / 2),
            intra_connectivity: Some(IntraConnectivity::Complete),
        },
        MetricEncoding::Binary => EncodingMetrics {
            qubits: m.next_power_of_two().trailing_zeros() as usize,
            core_couplers: None,
            intra_connectivity: None,
        },
    })
}
