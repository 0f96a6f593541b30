//! Mixer Hamiltonians for domain-wall variables and their conservation
//! checks.
//!
//! The mixer for an `m`-valued domain-wall variable over `N = m−1` qubits is
//!
//! `H_mix = Σ_{i=0}^{N−1} (Z̄_{i−1} X_i − X_i Z̄_{i+1})`
//!
//! with the pinned virtual endpoints substituted (`Z̄_{−1} = −1`,
//! `Z̄_N = +1`). Each summand flips qubit `i` only when its neighbours
//! disagree, so the operator moves the single wall without ever creating or
//! destroying wall pairs: it commutes with the wall-number operator and acts
//! as a path graph over the `m` valid states, with matrix elements −2 between
//! consecutive values (the overall mixer normalization is a convention; this
//! crate keeps the ±2 that the raw sum produces).
//!
//! All operators here act on the variable's own qubit register, indexed
//! locally `0..N`.

use std::collections::BTreeMap;

use crate::encoding::{EncodingKind, VariableHandle};
use crate::{Error, Result};

/// Cap on dense matrix construction (qubits).
pub const DENSE_CAP: usize = 14;

/// Single-qubit Pauli factor; only X and Z appear in this crate's operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Z,
}

/// A weighted product of Pauli factors, at most one per qubit.
/// An empty factor map is an identity term.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub factors: BTreeMap<usize, Pauli>,
}

impl PauliTerm {
    pub fn identity(coefficient: f64) -> Self {
        Self {
            coefficient,
            factors: BTreeMap::new(),
        }
    }

    pub fn new(coefficient: f64, factors: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        let mut map = BTreeMap::new();
        for (q, p) in factors {
            let prev = map.insert(q, p);
            assert!(prev.is_none(), "duplicate factor on qubit {q}");
        }
        Self {
            coefficient,
            factors: map,
        }
    }

    /// The qubit carrying this term's X factor, if any.
    pub fn x_qubit(&self) -> Option<usize> {
        self.factors
            .iter()
            .find(|(_, p)| **p == Pauli::X)
            .map(|(&q, _)| q)
    }

    fn max_qubit(&self) -> Option<usize> {
        self.factors.keys().next_back().copied()
    }
}

/// A real-weighted sum of Pauli terms over a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperatorSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliOperatorSum {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Self {
        for t in &terms {
            if let Some(q) = t.max_qubit() {
                assert!(q < n_qubits, "term factor on qubit {q} outside register");
            }
        }
        Self { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    /// Merge terms with identical factor maps; drops exact-zero results.
    /// First-occurrence order is preserved.
    pub fn combine_like_terms(&mut self) {
        let mut out: Vec<PauliTerm> = Vec::with_capacity(self.terms.len());
        for term in self.terms.drain(..) {
            if let Some(existing) = out.iter_mut().find(|t| t.factors == term.factors) {
                existing.coefficient += term.coefficient;
            } else {
                out.push(term);
            }
        }
        out.retain(|t| t.coefficient != 0.0);
        self.terms = out;
    }

    /// Eigenvalue of a diagonal (Z-only) operator on a basis state, or
    /// `None` if any term carries an X factor. `state` uses qubit 0 as LSB.
    pub fn eval_diagonal(&self, state: u64) -> Option<f64> {
        let mut total = 0.0;
        for t in &self.terms {
            let mut v = t.coefficient;
            for (&q, &p) in &t.factors {
                match p {
                    Pauli::X => return None,
                    Pauli::Z => v *= 1.0 - 2.0 * ((state >> q) & 1) as f64,
                }
            }
            total += v;
        }
        Some(total)
    }

    /// Exact dense matrix in the computational basis (bit 1 ↔ spin −1,
    /// qubit 0 = LSB). Capped at [`DENSE_CAP`] qubits.
    pub fn to_dense(&self) -> Result<DenseOperator> {
        if self.n_qubits > DENSE_CAP {
            return Err(Error::SizeCap {
                limit: DENSE_CAP,
                required: self.n_qubits,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut out = DenseOperator::zeros(dim);
        for t in &self.terms {
            let mut xmask = 0u64;
            for (&q, &p) in &t.factors {
                if p == Pauli::X {
                    xmask |= 1 << q;
                }
            }
            for col in 0..dim as u64 {
                let mut v = t.coefficient;
                for (&q, &p) in &t.factors {
                    if p == Pauli::Z {
                        v *= 1.0 - 2.0 * ((col >> q) & 1) as f64;
                    }
                }
                let row = (col ^ xmask) as usize;
                *out.at_mut(row, col as usize) += v;
            }
        }
        Ok(out)
    }
}

/// A `2^n × 2^n` real matrix; all operators in this crate are real in the
/// computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<f64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    fn at_mut(&mut self, row: usize, col: usize) -> &mut f64 {
        &mut self.data[row * self.dim + col]
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = DenseOperator::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let v = self.at(r, k);
                if v == 0.0 {
                    continue;
                }
                for c in 0..d {
                    *out.at_mut(r, c) += v * other.at(k, c);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn add(&self, other: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
    }

    /// `‖AB − BA‖_max`.
    pub fn commutator_norm(&self, other: &DenseOperator) -> f64 {
        self.matmul(other).sub(&other.matmul(self)).max_abs()
    }
}

fn require_domain_wall(v: &VariableHandle) -> Result<usize> {
    if v.kind() != EncodingKind::DomainWall {
        return Err(Error::KindMismatch(
            "mixers are defined for domain-wall variables".into(),
        ));
    }
    Ok(v.n_qubits())
}

/// Build the wall-moving mixer for a domain-wall variable, over its local
/// register. Boundary Z̄ factors resolve to signs, so the end summands are
/// bare ∓X terms; like terms are merged (for `m = 2` the whole mixer is
/// `−2·X_0`).
pub fn build_mixer(v: &VariableHandle) -> Result<PauliOperatorSum> {
    let n = require_domain_wall(v)?;
    let mut terms = Vec::with_capacity(2 * n);
    for i in 0..n {
        // Z̄_{i−1} X_i
        if i == 0 {
            terms.push(PauliTerm::new(-1.0, [(0, Pauli::X)]));
        } else {
            terms.push(PauliTerm::new(1.0, [(i - 1, Pauli::Z), (i, Pauli::X)]));
        }
        // −X_i Z̄_{i+1}
        if i + 1 == n {
            terms.push(PauliTerm::new(-1.0, [(i, Pauli::X)]));
        } else {
            terms.push(PauliTerm::new(-1.0, [(i, Pauli::X), (i + 1, Pauli::Z)]));
        }
    }
    let mut op = PauliOperatorSum::new(n, terms);
    op.combine_like_terms();
    Ok(op)
}

/// Partition a mixer into its even and odd parts by the parity of the qubit
/// carrying each term's X factor. The two parts sum to the input term for
/// term, and within each part all terms mutually commute.
pub fn split_even_odd(mixer: &PauliOperatorSum) -> (PauliOperatorSum, PauliOperatorSum) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for t in mixer.terms() {
        match t.x_qubit() {
            Some(q) if q % 2 == 1 => odd.push(t.clone()),
            _ => even.push(t.clone()),
        }
    }
    (
        PauliOperatorSum::new(mixer.n_qubits(), even),
        PauliOperatorSum::new(mixer.n_qubits(), odd),
    )
}

/// The wall-number operator `Σ_{i=−1}^{N−1} ½(1 − Z̄_i Z̄_{i+1})` for a
/// domain-wall variable, expanded over its local register. Its eigenvalue on
/// a basis state is the wall count of the pinned extended chain `1|bits|0`.
pub fn domain_wall_number(v: &VariableHandle) -> Result<PauliOperatorSum> {
    let n = require_domain_wall(v)?;
    let mut terms = Vec::new();
    // i = −1 boundary: ½(1 + Z_0).
    terms.push(PauliTerm::identity(0.5));
    terms.push(PauliTerm::new(0.5, [(0, Pauli::Z)]));
    for i in 0..n - 1 {
        terms.push(PauliTerm::identity(0.5));
        terms.push(PauliTerm::new(-0.5, [(i, Pauli::Z), (i + 1, Pauli::Z)]));
    }
    // i = N−1 boundary: ½(1 − Z_{N−1}).
    terms.push(PauliTerm::identity(0.5));
    terms.push(PauliTerm::new(-0.5, [(n - 1, Pauli::Z)]));
    let mut op = PauliOperatorSum::new(n, terms);
    op.combine_like_terms();
    Ok(op)
}

/// Wall count of the pinned extended chain for a basis state of `n` qubits.
pub fn wall_count(state: u64, n: usize) -> usize {
    let mut walls = 0;
    let mut prev = 1u8; // virtual left endpoint holds bit 1
    for i in 0..n {
        let b = ((state >> i) & 1) as u8;
        if b != prev {
            walls += 1;
        }
        prev = b;
    }
    if prev != 0 {
        walls += 1; // virtual right endpoint holds bit 0
    }
    walls
}

/// Dense-matrix conservation report for one variable's mixer.
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub m: usize,
    /// `‖[H_mix, D]‖_max`, `‖[H_even, D]‖_max`, `‖[H_odd, D]‖_max`.
    pub commutator_norms: [f64; 3],
    /// Largest matrix element between states of different wall number.
    pub off_sector_max: f64,
    /// Largest entry of `to_dense(even) + to_dense(odd) − to_dense(mixer)`.
    pub split_sum_residual: f64,
    /// Largest pairwise term commutator within the even and odd parts.
    pub internal_commutator_max: f64,
    /// Mixer restricted to the valid states, in value order.
    pub valid_block: Vec<Vec<f64>>,
    /// Valid block is tridiagonal with zero diagonal.
    pub tridiagonal: bool,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.commutator_norms.iter().all(|&x| x == 0.0)
            && self.off_sector_max == 0.0
            && self.split_sum_residual == 0.0
            && self.internal_commutator_max == 0.0
            && self.tridiagonal
    }

    /// The valid block rendered as CSV rows.
    pub fn valid_block_csv(&self) -> String {
        self.valid_block
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl std::fmt::Display for PreservationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "mixer preservation report (m = {})", self.m)?;
        writeln!(
            f,
            "  [mixer, wall-number] max = {}",
            self.commutator_norms[0]
        )?;
        writeln!(
            f,
            "  [even, wall-number] max = {}",
            self.commutator_norms[1]
        )?;
        writeln!(f, "  [odd, wall-number] max = {}", self.commutator_norms[2])?;
        writeln!(f, "  cross-sector element max = {}", self.off_sector_max)?;
        writeln!(f, "  even + odd − mixer max = {}", self.split_sum_residual)?;
        writeln!(
            f,
            "  intra-part term commutator max = {}",
            self.internal_commutator_max
        )?;
        writeln!(
            f,
            "  valid block tridiagonal with zero diagonal: {}",
            self.tridiagonal
        )?;
        writeln!(f, "  note: valid-block elements are ±2 by convention")?;
        write!(
            f,
            "  verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Build the mixer, its even/odd split, and the wall-number operator for a
/// domain-wall variable, and check all conservation statements exactly with
/// dense matrices. Capped at `m ≤ 8`.
pub fn check_subspace_preservation(v: &VariableHandle) -> Result<PreservationReport> {
    let n = require_domain_wall(v)?;
    if v.m() > 8 {
        return Err(Error::SizeCap {
            limit: 8,
            required: v.m(),
        });
    }
    let mixer = build_mixer(v)?;
    let (even, odd) = split_even_odd(&mixer);
    let number = domain_wall_number(v)?;

    let dm = mixer.to_dense()?;
    let de = even.to_dense()?;
    let do_ = odd.to_dense()?;
    let dn = number.to_dense()?;

    let commutator_norms = [
        dm.commutator_norm(&dn),
        de.commutator_norm(&dn),
        do_.commutator_norm(&dn),
    ];

    let dim = dm.dim();
    let mut off_sector_max = 0.0f64;
    for row in 0..dim {
        for col in 0..dim {
            if wall_count(row as u64, n) != wall_count(col as u64, n) {
                off_sector_max = off_sector_max.max(dm.at(row, col).abs());
            }
        }
    }

    let split_sum_residual = de.add(&do_).sub(&dm).max_abs();

    let mut internal_commutator_max = 0.0f64;
    for part in [&even, &odd] {
        let dense_terms: Vec<DenseOperator> = part
            .terms()
            .iter()
            .map(|t| {
                PauliOperatorSum::new(part.n_qubits(), vec![t.clone()])
                    .to_dense()
                    .expect("within cap")
            })
            .collect();
        for a in 0..dense_terms.len() {
            for b in (a + 1)..dense_terms.len() {
                internal_commutator_max =
                    internal_commutator_max.max(dense_terms[a].commutator_norm(&dense_terms[b]));
            }
        }
    }

    // Valid states in value order: value k has bits 1^k 0^(N−k).
    let valid_index = |value: usize| -> usize { ((1u64 << value) - 1) as usize };
    let m = v.m();
    let mut valid_block = vec![vec![0.0; m]; m];
    for (r, row) in valid_block.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = dm.at(valid_index(r), valid_index(c));
        }
    }
    let tridiagonal = (0..m).all(|r| {
        (0..m).all(|c| {
            let v = valid_block[r][c];
            if r == c || r.abs_diff(c) > 1 {
                v == 0.0
            } else {
                v != 0.0
            }
        })
    });

    Ok(PreservationReport {
        m,
        commutator_norms,
        off_sector_max,
        split_sum_residual,
        internal_commutator_max,
        valid_block,
        tridiagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodedProblem;

    fn dw_var(m: usize) -> VariableHandle {
        let mut p = EncodedProblem::new();
        p.add_domain_wall_variable(m, 1.0).unwrap()
    }

    #[test]
    fn mixer_m2_is_minus_two_x() {
        let mixer = build_mixer(&dw_var(2)).unwrap();
        assert_eq!(mixer.terms(), &[PauliTerm::new(-2.0, [(0, Pauli::X)])]);
    }

    #[test]
    fn mixer_m3_terms() {
        let mixer = build_mixer(&dw_var(3)).unwrap();
        let expected = vec![
            PauliTerm::new(-1.0, [(0, Pauli::X)]),
            PauliTerm::new(-1.0, [(0, Pauli::X), (1, Pauli::Z)]),
            PauliTerm::new(1.0, [(0, Pauli::Z), (1, Pauli::X)]),
            PauliTerm::new(-1.0, [(1, Pauli::X)]),
        ];
        assert_eq!(mixer.terms(), expected.as_slice());
    }

    #[test]
    fn mixer_m4_shape() {
        let mixer = build_mixer(&dw_var(4)).unwrap();
        assert_eq!(mixer.terms().len(), 6);
        let mut xs: Vec<usize> = mixer.terms().iter().filter_map(|t| t.x_qubit()).collect();
        xs.sort_unstable();
        xs.dedup();
        assert_eq!(xs, vec![0, 1, 2]);
    }

    #[test]
    fn mixer_rejects_one_hot() {
        let mut p = EncodedProblem::new();
        let v = p.add_one_hot_variable(3, 1.0).unwrap();
        assert!(matches!(build_mixer(&v), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn split_partitions_by_x_parity() {
        let mixer = build_mixer(&dw_var(3)).unwrap();
        let (even, odd) = split_even_odd(&mixer);
        assert!(even.terms().iter().all(|t| t.x_qubit() == Some(0)));
        assert!(odd.terms().iter().all(|t| t.x_qubit() == Some(1)));
        assert_eq!(even.terms().len() + odd.terms().len(), mixer.terms().len());

        let (_, odd2) = split_even_odd(&build_mixer(&dw_var(2)).unwrap());
        assert!(odd2.terms().is_empty());

        for m in 2..=7 {
            let mixer = build_mixer(&dw_var(m)).unwrap();
            let (e, o) = split_even_odd(&mixer);
            let mut recombined: Vec<PauliTerm> = e.terms().to_vec();
            recombined.extend_from_slice(o.terms());
            let mut original = mixer.terms().to_vec();
            let key = |t: &PauliTerm| format!("{:?}", t.factors);
            recombined.sort_by_key(key);
            original.sort_by_key(key);
            assert_eq!(recombined, original);
        }
    }

    #[test]
    fn dense_identity_and_single_x() {
        let op = PauliOperatorSum::new(1, vec![PauliTerm::identity(3.0)]);
        let d = op.to_dense().unwrap();
        assert_eq!(d.at(0, 0), 3.0);
        assert_eq!(d.at(1, 1), 3.0);
        assert_eq!(d.at(0, 1), 0.0);

        let op = PauliOperatorSum::new(1, vec![PauliTerm::new(1.0, [(0, Pauli::X)])]);
        let d = op.to_dense().unwrap();
        assert_eq!(d.at(0, 1), 1.0);
        assert_eq!(d.at(1, 0), 1.0);
        assert_eq!(d.at(0, 0), 0.0);
    }

    #[test]
    fn dense_mixer_m3_elements() {
        let d = build_mixer(&dw_var(3)).unwrap().to_dense().unwrap();
        // Basis indices: "00"→0, "10"→1, "01"→2, "11"→3 (qubit 0 = LSB).
        assert_eq!(d.at(1, 0), -2.0); // ⟨10|H|00⟩
        assert_eq!(d.at(3, 1), -2.0); // ⟨11|H|10⟩
        assert_eq!(d.at(3, 0), 0.0); // ⟨11|H|00⟩
        for k in 0..4 {
            assert_eq!(d.at(2, k), 0.0, "row of invalid state 01");
            assert_eq!(d.at(k, 2), 0.0, "column of invalid state 01");
        }
    }

    #[test]
    fn dense_respects_cap() {
        let op = PauliOperatorSum::new(15, vec![PauliTerm::identity(1.0)]);
        assert!(matches!(op.to_dense(), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn wall_number_eigenvalues() {
        let v = dw_var(5);
        let op = domain_wall_number(&v).unwrap();
        let idx = |s: &str| {
            crate::ising::SpinAssignment::from_bitstring(s)
                .unwrap()
                .to_index()
        };
        assert_eq!(op.eval_diagonal(idx("1100")), Some(1.0));
        assert_eq!(op.eval_diagonal(idx("1010")), Some(3.0));

        let v2 = dw_var(2);
        let op2 = domain_wall_number(&v2).unwrap();
        assert_eq!(op2.eval_diagonal(0), Some(1.0));
        assert_eq!(op2.eval_diagonal(1), Some(1.0));

        // Diagonal eigenvalue equals the combinatorial wall count everywhere.
        for state in 0..(1u64 << 4) {
            assert_eq!(op.eval_diagonal(state), Some(wall_count(state, 4) as f64));
        }
    }

    #[test]
    fn preservation_checks_m3_block() {
        let report = check_subspace_preservation(&dw_var(3)).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(
            report.valid_block,
            vec![
                vec![0.0, -2.0, 0.0],
                vec![-2.0, 0.0, -2.0],
                vec![0.0, -2.0, 0.0]
            ]
        );
    }

    #[test]
    fn preservation_checks_m2_block() {
        let report = check_subspace_preservation(&dw_var(2)).unwrap();
        assert!(report.passed());
        assert_eq!(report.valid_block, vec![vec![0.0, -2.0], vec![-2.0, 0.0]]);
    }

    #[test]
    fn preservation_holds_for_all_small_sizes() {
        for m in 2..=8 {
            let report = check_subspace_preservation(&dw_var(m)).unwrap();
            assert!(report.passed(), "m={m}: {report}");
            // Valid-block adjacency is the path graph over values.
            for (r, row) in report.valid_block.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if r.abs_diff(c) == 1 {
                        assert_eq!(v, -2.0);
                    } else {
                        assert_eq!(v, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn preservation_respects_size_cap() {
        assert!(matches!(
            check_subspace_preservation(&dw_var(9)),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn sign_flipped_mixer_breaks_conservation() {
        // Σ (Z̄_{i−1}X_i + X_i Z̄_{i+1}) creates wall pairs; the commutator
        // with the wall-number operator must be nonzero.
        let v = dw_var(4);
        let n = v.n_qubits();
        let mut terms = Vec::new();
        for i in 0..n {
            if i == 0 {
                terms.push(PauliTerm::new(-1.0, [(0, Pauli::X)]));
            } else {
                terms.push(PauliTerm::new(1.0, [(i - 1, Pauli::Z), (i, Pauli::X)]));
            }
            if i + 1 == n {
                terms.push(PauliTerm::new(1.0, [(i, Pauli::X)]));
            } else {
                terms.push(PauliTerm::new(1.0, [(i, Pauli::X), (i + 1, Pauli::Z)]));
            }
        }
        let broken = PauliOperatorSum::new(n, terms);
        let dn = domain_wall_number(&v).unwrap().to_dense().unwrap();
        let db = broken.to_dense().unwrap();
        assert!(db.commutator_norm(&dn) > 0.0);
    }
}
