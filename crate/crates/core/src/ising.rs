//! Classical Ising models: energy evaluation, exhaustive ground-state
//! enumeration, and model composition.
//!
//! A model is `E(z) = offset + Σ_i h_i z_i + Σ_{i<j} J_ij z_i z_j` over spins
//! `z_i ∈ {+1, −1}`.
//!
//! Bit convention, used everywhere in this crate: `b_i = (1 − z_i)/2`, so bit
//! 1 corresponds to spin −1. Basis states are indexed by the integer whose
//! least-significant bit is qubit 0; bitstrings print qubit 0 leftmost.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Absolute tolerance for energy comparisons.
pub const ENERGY_TOL: f64 = 1e-9;

/// Default cap on exhaustive enumeration (number of qubits).
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 26;

/// A complete ±1 spin configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinAssignment {
    spins: Vec<i8>,
}

impl SpinAssignment {
    /// Build from explicit spins; every entry must be +1 or −1.
    pub fn from_spins(spins: Vec<i8>) -> Result<Self> {
        if let Some(bad) = spins.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::Domain(format!("spin value {bad} is not ±1")));
        }
        Ok(Self { spins })
    }

    /// Build from bits (any nonzero byte is bit 1, i.e. spin −1).
    pub fn from_bits(bits: &[u8]) -> Self {
        Self {
            spins: bits.iter().map(|&b| if b != 0 { -1 } else { 1 }).collect(),
        }
    }

    /// Parse a string of '0'/'1' characters, qubit 0 leftmost.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut spins = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => spins.push(1),
                '1' => spins.push(-1),
                _ => return Err(Error::Domain(format!("bad bitstring character {c:?}"))),
            }
        }
        Ok(Self { spins })
    }

    /// Build the state with the given integer index (qubit 0 = LSB).
    pub fn from_index(index: u64, n_qubits: usize) -> Self {
        Self {
            spins: (0..n_qubits)
                .map(|i| if (index >> i) & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    /// Spin of qubit `i` (+1 or −1).
    pub fn spin(&self, i: usize) -> i8 {
        self.spins[i]
    }

    /// Bit of qubit `i` under the `b = (1−z)/2` convention.
    pub fn bit(&self, i: usize) -> u8 {
        if self.spins[i] == -1 {
            1
        } else {
            0
        }
    }

    /// Integer index of this state (qubit 0 = LSB).
    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 64, "state index only defined up to 64 qubits");
        self.spins
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == -1)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    /// Bitstring with qubit 0 leftmost, e.g. `"1100"`.
    pub fn bitstring(&self) -> String {
        self.spins
            .iter()
            .map(|&s| if s == -1 { '1' } else { '0' })
            .collect()
    }
}

/// Exact ground-state summary produced by [`IsingModel::brute_force`].
#[derive(Debug, Clone)]
pub struct GroundSet {
    /// Exact minimum energy.
    pub energy: f64,
    /// All states attaining the minimum, in ascending index order.
    pub states: Vec<SpinAssignment>,
    /// Energy of the first excited level minus the ground energy.
    /// Zero when the spectrum has a single level.
    pub spectrum_gap: f64,
}

impl GroundSet {
    /// Ground states rendered as bitstrings, ascending index order.
    pub fn bitstrings(&self) -> Vec<String> {
        self.states.iter().map(|s| s.bitstring()).collect()
    }
}

/// A classical Ising model with linear fields, pairwise couplers, and a
/// tracked constant energy offset.
///
/// Couplers are stored under strictly ordered keys `(i, j)` with `i < j`;
/// repeated additions to the same key accumulate. Entries that cancel to
/// exactly zero are skipped by the accessor iterators, so they never affect
/// serialization or interaction-graph structure.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IsingModel {
    n_qubits: usize,
    h: BTreeMap<usize, f64>,
    j: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            ..Self::default()
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Append `count` fresh qubits; returns their index range.
    pub fn add_qubits(&mut self, count: usize) -> std::ops::Range<usize> {
        let start = self.n_qubits;
        self.n_qubits += count;
        start..self.n_qubits
    }

    pub fn add_offset(&mut self, v: f64) {
        self.offset += v;
    }

    /// Accumulate a linear field on qubit `i`.
    pub fn add_field(&mut self, i: usize, v: f64) {
        assert!(i < self.n_qubits, "field index {i} out of range");
        *self.h.entry(i).or_insert(0.0) += v;
    }

    /// Accumulate a coupler between distinct qubits; the key is normalized
    /// to `i < j`.
    pub fn add_coupler(&mut self, a: usize, b: usize, v: f64) {
        assert!(
            a < self.n_qubits && b < self.n_qubits,
            "coupler index out of range"
        );
        assert_ne!(a, b, "self-couplings are not representable");
        let key = (a.min(b), a.max(b));
        *self.j.entry(key).or_insert(0.0) += v;
    }

    pub fn field(&self, i: usize) -> f64 {
        self.h.get(&i).copied().unwrap_or(0.0)
    }

    pub fn coupler(&self, a: usize, b: usize) -> f64 {
        self.j.get(&(a.min(b), a.max(b))).copied().unwrap_or(0.0)
    }

    /// Nonzero fields in ascending qubit order.
    pub fn fields(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.h
            .iter()
            .filter(|(_, v)| **v != 0.0)
            .map(|(&i, &v)| (i, v))
    }

    /// Nonzero couplers in ascending `(i, j)` order.
    pub fn couplers(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.j
            .iter()
            .filter(|(_, v)| **v != 0.0)
            .map(|(&k, &v)| (k, v))
    }

    pub fn coupler_count(&self) -> usize {
        self.couplers().count()
    }

    /// Drop stored entries that have accumulated to exactly zero.
    /// Never changes the energy of any state.
    pub fn prune_zeros(&mut self) {
        self.h.retain(|_, v| *v != 0.0);
        self.j.retain(|_, v| *v != 0.0);
    }

    /// Exact energy of a spin configuration.
    pub fn energy(&self, s: &SpinAssignment) -> Result<f64> {
        if s.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: s.len(),
            });
        }
        let mut e = self.offset;
        for (&i, &v) in &self.h {
            e += v * f64::from(s.spin(i));
        }
        for (&(a, b), &v) in &self.j {
            e += v * f64::from(s.spin(a)) * f64::from(s.spin(b));
        }
        Ok(e)
    }

    fn energy_of_index(&self, state: u64) -> f64 {
        let spin = |q: usize| 1.0 - 2.0 * ((state >> q) & 1) as f64;
        let mut e = self.offset;
        for (&i, &v) in &self.h {
            e += v * spin(i);
        }
        for (&(a, b), &v) in &self.j {
            e += v * spin(a) * spin(b);
        }
        e
    }

    /// Exhaustively enumerate all `2^n` states under the default cap.
    pub fn brute_force(&self) -> Result<GroundSet> {
        self.brute_force_capped(DEFAULT_BRUTE_FORCE_CAP)
    }

    /// Exhaustive enumeration with an explicit qubit cap.
    ///
    /// The sweep walks states in Gray-code order with O(degree) incremental
    /// energy updates, periodically resynchronizing against a direct
    /// evaluation so accumulated rounding stays far below [`ENERGY_TOL`].
    /// Reported energies are direct evaluations of representative states, so
    /// they are exact for exactly-representable coefficient sums.
    pub fn brute_force_capped(&self, cap: usize) -> Result<GroundSet> {
        let n = self.n_qubits;
        if n > cap {
            return Err(Error::SizeCap {
                limit: cap,
                required: n,
            });
        }

        let mut fields = vec![0.0f64; n];
        for (&i, &v) in &self.h {
            fields[i] += v;
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (&(a, b), &v) in &self.j {
            if v != 0.0 {
                adj[a].push((b, v));
                adj[b].push((a, v));
            }
        }

        const RESYNC_MASK: u64 = (1 << 16) - 1;
        let total: u64 = 1u64 << n;

        // Pass 1: locate the minimum and the state attaining it.
        let mut min_e = f64::INFINITY;
        let mut min_state = 0u64;
        self.gray_walk(&fields, &adj, total, RESYNC_MASK, |state, e| {
            if e < min_e {
                min_e = e;
                min_state = state;
            }
        });
        let ground_energy = self.energy_of_index(min_state);

        // Pass 2: collect every minimizer and the first excited level.
        let mut minimizers: Vec<u64> = Vec::new();
        let mut second = f64::INFINITY;
        let mut second_state = 0u64;
        self.gray_walk(&fields, &adj, total, RESYNC_MASK, |state, e| {
            if e <= ground_energy + ENERGY_TOL {
                minimizers.push(state);
            } else if e < second {
                second = e;
                second_state = state;
            }
        });
        minimizers.sort_unstable();

        let spectrum_gap = if second.is_finite() {
            self.energy_of_index(second_state) - ground_energy
        } else {
            0.0
        };

        Ok(GroundSet {
            energy: ground_energy,
            states: minimizers
                .into_iter()
                .map(|s| SpinAssignment::from_index(s, n))
                .collect(),
            spectrum_gap,
        })
    }

    fn gray_walk(
        &self,
        fields: &[f64],
        adj: &[Vec<(usize, f64)>],
        total: u64,
        resync_mask: u64,
        mut visit: impl FnMut(u64, f64),
    ) {
        let mut state: u64 = 0;
        let mut e = self.energy_of_index(0);
        visit(state, e);
        for i in 1..total {
            let q = i.trailing_zeros() as usize;
            let zq = 1.0 - 2.0 * ((state >> q) & 1) as f64;
            let mut acc = fields[q];
            for &(r, v) in &adj[q] {
                acc += v * (1.0 - 2.0 * ((state >> r) & 1) as f64);
            }
            e -= 2.0 * zq * acc;
            state ^= 1 << q;
            if i & resync_mask == 0 {
                e = self.energy_of_index(state);
            }
            visit(state, e);
        }
    }

    /// Accumulate another model into this one under a qubit mapping.
    ///
    /// `mapping[i]` is the index in the result carrying `other`'s qubit `i`;
    /// the result grows as needed. For any state, the merged energy equals
    /// the sum of the two component energies under the mapping.
    pub fn merge(&self, other: &IsingModel, mapping: &[usize]) -> Result<IsingModel> {
        if mapping.len() != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: other.n_qubits,
                got: mapping.len(),
            });
        }
        let mut seen = mapping.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NonInjectiveMapping);
        }

        let mut out = self.clone();
        let needed = mapping.iter().map(|&m| m + 1).max().unwrap_or(0);
        if needed > out.n_qubits {
            out.n_qubits = needed;
        }
        out.offset += other.offset;
        for (&i, &v) in &other.h {
            out.add_field(mapping[i], v);
        }
        for (&(a, b), &v) in &other.j {
            out.add_coupler(mapping[a], mapping[b], v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    /// Domain-wall core over m−1 qubits: J adjacent = −λ, h ends = ±λ.
    fn dw_core(m: usize, lambda: f64) -> IsingModel {
        let n = m - 1;
        let mut model = IsingModel::new(n);
        for i in 0..n.saturating_sub(1) {
            model.add_coupler(i, i + 1, -lambda);
        }
        model.add_field(0, lambda);
        model.add_field(n - 1, -lambda);
        model
    }

    fn one_hot_core(m: usize, lambda: f64) -> IsingModel {
        let mut model = IsingModel::new(m);
        for i in 0..m {
            for j in (i + 1)..m {
                model.add_coupler(i, j, lambda);
            }
            model.add_field(i, -((m as f64) - 2.0) * lambda);
        }
        model
    }

    #[test]
    fn energy_of_aligned_pair_under_unit_coupler() {
        let mut model = IsingModel::new(2);
        model.add_coupler(0, 1, 1.0);
        let s = SpinAssignment::from_spins(vec![1, 1]).unwrap();
        assert_eq!(model.energy(&s).unwrap(), 1.0);
    }

    #[test]
    fn energy_of_domain_wall_core_states() {
        let model = dw_core(5, 1.0);
        let valid = SpinAssignment::from_bitstring("1100").unwrap();
        assert_eq!(model.energy(&valid).unwrap(), -3.0);
        let invalid = SpinAssignment::from_bitstring("1010").unwrap();
        assert_eq!(model.energy(&invalid).unwrap(), 1.0);
    }

    #[test]
    fn energy_rejects_length_mismatch() {
        let model = IsingModel::new(3);
        let s = SpinAssignment::from_bits(&[0, 1]);
        assert!(matches!(
            model.energy(&s),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn brute_force_single_field() {
        let mut model = IsingModel::new(1);
        model.add_field(0, 1.0);
        let g = model.brute_force().unwrap();
        assert_eq!(g.energy, -1.0);
        assert_eq!(g.bitstrings(), vec!["1"]);
        assert_eq!(g.spectrum_gap, 2.0);
    }

    #[test]
    fn brute_force_domain_wall_core_manifold() {
        let g = dw_core(5, 1.0).brute_force().unwrap();
        assert_eq!(g.energy, -3.0);
        assert_eq!(g.bitstrings(), vec!["0000", "1000", "1100", "1110", "1111"]);
        assert_eq!(g.spectrum_gap, 4.0);
    }

    #[test]
    fn brute_force_one_hot_core_manifold() {
        let g = one_hot_core(4, 1.0).brute_force().unwrap();
        assert_eq!(g.energy, -4.0);
        assert_eq!(g.bitstrings(), vec!["1000", "0100", "0010", "0001"]);
        assert_eq!(g.spectrum_gap, 2.0);
    }

    #[test]
    fn brute_force_respects_cap() {
        let model = IsingModel::new(10);
        assert!(matches!(
            model.brute_force_capped(8),
            Err(Error::SizeCap {
                limit: 8,
                required: 10
            })
        ));
    }

    #[test]
    fn merge_with_empty_is_identity() {
        let model = dw_core(4, 1.0);
        let merged = model.merge(&IsingModel::new(0), &[]).unwrap();
        assert_eq!(merged, model);
    }

    #[test]
    fn merge_disjoint_fields_adds_ground_energies() {
        let mut a = IsingModel::new(1);
        a.add_field(0, 1.0);
        let mut b = IsingModel::new(1);
        b.add_field(0, 2.0);
        let merged = a.merge(&b, &[1]).unwrap();
        assert_eq!(merged.n_qubits(), 2);
        let g = merged.brute_force().unwrap();
        assert_eq!(g.energy, -3.0);
    }

    #[test]
    fn merge_of_two_z3_cores_has_product_manifold() {
        let core = dw_core(3, 1.0);
        let merged = core.merge(&core, &[2, 3]).unwrap();
        let g = merged.brute_force().unwrap();
        assert_eq!(g.states.len(), 9);
    }

    #[test]
    fn merge_rejects_non_injective_mapping() {
        let a = IsingModel::new(2);
        let b = dw_core(3, 1.0);
        assert!(matches!(
            a.merge(&b, &[0, 0]),
            Err(Error::NonInjectiveMapping)
        ));
    }

    #[test]
    fn merge_energy_is_additive_on_random_states() {
        let mut rng = SplitMix64::new(11);
        let a = dw_core(4, 1.5);
        let b = one_hot_core(3, 2.0);
        let mapping = [3, 4, 5];
        let merged = a.merge(&b, &mapping).unwrap();
        for _ in 0..200 {
            let idx = rng.next_int(0, (1 << 6) - 1);
            let s = SpinAssignment::from_index(idx, 6);
            let sa = SpinAssignment::from_index(idx & 0b111, 3);
            let sb = SpinAssignment::from_index(idx >> 3, 3);
            let lhs = merged.energy(&s).unwrap();
            let rhs = a.energy(&sa).unwrap() + b.energy(&sb).unwrap();
            assert!((lhs - rhs).abs() <= ENERGY_TOL);
        }
    }

    #[test]
    fn global_spin_flip_negates_fields_only() {
        let mut rng = SplitMix64::new(5);
        let mut model = IsingModel::new(5);
        let mut flipped = IsingModel::new(5);
        for i in 0..5 {
            let hv = rng.next_f64() * 4.0 - 2.0;
            model.add_field(i, hv);
            flipped.add_field(i, -hv);
            for j in (i + 1)..5 {
                let jv = rng.next_f64() * 4.0 - 2.0;
                model.add_coupler(i, j, jv);
                flipped.add_coupler(i, j, jv);
            }
        }
        for _ in 0..200 {
            let idx = rng.next_int(0, 31);
            let s = SpinAssignment::from_index(idx, 5);
            let sf = SpinAssignment::from_index(idx ^ 31, 5);
            let e = model.energy(&s).unwrap();
            let ef = flipped.energy(&sf).unwrap();
            assert!((e - ef).abs() <= ENERGY_TOL);
        }
    }

    #[test]
    fn brute_force_ground_is_lower_bound_for_random_states() {
        let mut rng = SplitMix64::new(23);
        let mut model = IsingModel::new(8);
        for i in 0..8 {
            model.add_field(i, rng.next_f64() - 0.5);
            for j in (i + 1)..8 {
                if rng.next_f64() < 0.4 {
                    model.add_coupler(i, j, rng.next_f64() * 2.0 - 1.0);
                }
            }
        }
        let g = model.brute_force().unwrap();
        for _ in 0..1000 {
            let s = SpinAssignment::from_index(rng.next_int(0, 255), 8);
            assert!(g.energy <= model.energy(&s).unwrap() + ENERGY_TOL);
        }
    }

    #[test]
    fn pruning_zero_terms_preserves_energies() {
        let mut model = IsingModel::new(3);
        model.add_coupler(0, 1, 2.0);
        model.add_coupler(0, 1, -2.0);
        model.add_field(2, 1.0);
        model.add_field(2, -1.0);
        model.add_field(0, 0.5);
        let before: Vec<f64> = (0..8)
            .map(|i| model.energy(&SpinAssignment::from_index(i, 3)).unwrap())
            .collect();
        model.prune_zeros();
        assert_eq!(model.coupler_count(), 0);
        assert_eq!(model.fields().count(), 1);
        let after: Vec<f64> = (0..8)
            .map(|i| model.energy(&SpinAssignment::from_index(i, 3)).unwrap())
            .collect();
        assert_eq!(before, after);
    }

    #[test]
    fn zero_qubit_model_has_single_offset_level() {
        let mut model = IsingModel::new(0);
        model.add_offset(2.5);
        let g = model.brute_force().unwrap();
        assert_eq!(g.energy, 2.5);
        assert_eq!(g.states.len(), 1);
        assert_eq!(g.spectrum_gap, 0.0);
    }

    #[test]
    fn bitstring_roundtrip_and_index_convention() {
        let s = SpinAssignment::from_bitstring("1100").unwrap();
        // Qubit 0 is the leftmost character and the least-significant bit.
        assert_eq!(s.to_index(), 0b0011);
        assert_eq!(s.bitstring(), "1100");
        assert_eq!(SpinAssignment::from_index(0b0011, 4), s);
        assert_eq!(s.spin(0), -1);
        assert_eq!(s.bit(0), 1);
        assert_eq!(s.spin(3), 1);
    }
}
