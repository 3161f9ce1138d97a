//! Labelled multipartite density matrices, dense-coding layouts and the
//! named states used throughout the toolkit.
//!
//! Bell-state index convention: `0: |ψ⁻⟩, 1: |ψ⁺⟩, 2: |φ⁻⟩, 3: |φ⁺⟩`, with
//! `|ψ±⟩ = (|01⟩ ± |10⟩)/√2` and `|φ±⟩ = (|00⟩ ± |11⟩)/√2`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, embed_operator, kron, min_eigenvalue, outer_unchecked, ComplexMatrix, Dims, C64,
    DEFAULT_TOL,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Party {
    pub label: String,
    pub dim: usize,
}

impl Party {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Self {
            label: label.into(),
            dim,
        }
    }
}

pub fn parties(spec: &[(&str, usize)]) -> Vec<Party> {
    spec.iter().map(|&(l, d)| Party::new(l, d)).collect()
}

/// A validated density operator on an ordered list of labelled parties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultipartiteState {
    parties: Vec<Party>,
    matrix: ComplexMatrix,
}

/// Validates and builds a state with the default tolerance.
pub fn make_state(parties: Vec<Party>, matrix: ComplexMatrix) -> Result<MultipartiteState> {
    MultipartiteState::new(parties, matrix, DEFAULT_TOL)
}

impl MultipartiteState {
    pub fn new(parties: Vec<Party>, matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        check_parties(&parties)?;
        let n: usize = parties.iter().map(|p| p.dim).product();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.rows(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::NotUnitTrace { trace });
        }
        let min = min_eigenvalue(&matrix, tol)?;
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { parties, matrix })
    }

    /// Skips spectral validation; for results that are states by construction.
    pub(crate) fn from_parts(parties: Vec<Party>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(
            matrix.rows(),
            parties.iter().map(|p| p.dim).product::<usize>()
        );
        Self { parties, matrix }
    }

    /// Pure state `|v⟩⟨v|`; `v` must be normalized.
    pub fn pure(parties: Vec<Party>, v: &[C64]) -> Result<Self> {
        check_parties(&parties)?;
        let n: usize = parties.iter().map(|p| p.dim).product();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: v.len(),
            });
        }
        Ok(Self {
            parties,
            matrix: linalg::outer(v)?,
        })
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.parties.iter().map(|p| p.dim).collect()).expect("validated dims")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_parties(&self) -> usize {
        self.parties.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.parties.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.parties
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.hs_inner(&self.matrix).re
    }

    /// Reduced state on the parties at `keep`, in ascending party order.
    pub fn marginal(&self, keep: &[usize]) -> Result<MultipartiteState> {
        let m = linalg::partial_trace(&self.matrix, &self.dims(), keep)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let parties = keep.iter().map(|&i| self.parties[i].clone()).collect();
        Ok(Self::from_parts(parties, m))
    }

    pub fn marginal_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<MultipartiteState> {
        self.marginal(&self.indices_of(labels)?)
    }

    pub fn partial_transpose(&self, parties: &[usize]) -> Result<ComplexMatrix> {
        linalg::partial_transpose(&self.matrix, &self.dims(), parties)
    }

    /// Party `i` of the result is party `perm[i]` of `self`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<MultipartiteState> {
        let m = linalg::permute_subsystems(&self.matrix, &self.dims(), perm)?;
        let parties = perm.iter().map(|&p| self.parties[p].clone()).collect();
        Ok(Self::from_parts(parties, m))
    }

    /// Reorders parties to follow `labels`.
    pub fn reorder_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<MultipartiteState> {
        self.permute_parties(&self.indices_of(labels)?)
    }

    pub fn relabel<S: AsRef<str>>(&self, labels: &[S]) -> Result<MultipartiteState> {
        if labels.len() != self.parties.len() {
            return Err(Error::DimensionMismatch {
                expected: self.parties.len(),
                actual: labels.len(),
            });
        }
        let parties: Vec<Party> = self
            .parties
            .iter()
            .zip(labels)
            .map(|(p, l)| Party::new(l.as_ref(), p.dim))
            .collect();
        check_parties(&parties)?;
        Ok(Self::from_parts(parties, self.matrix.clone()))
    }

    /// Applies `op` (acting on `targets`, in that order) as `op ρ op†`.
    pub fn apply_local(&self, op: &ComplexMatrix, targets: &[usize]) -> Result<MultipartiteState> {
        let full = embed_operator(op, &self.dims(), targets)?;
        Ok(Self::from_parts(
            self.parties.clone(),
            self.matrix.conjugate_by(&full),
        ))
    }

    /// Convex combination `λ self + (1 − λ) other` on identical parties.
    pub fn mix(&self, other: &MultipartiteState, lambda: f64) -> Result<MultipartiteState> {
        if self.parties != other.parties {
            return Err(Error::InvalidEnsemble(
                "mixing states on different parties".into(),
            ));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::ParameterOutOfRange {
                name: "lambda",
                value: lambda,
                min: 0.0,
                max: 1.0,
            });
        }
        let m = &self.matrix.scale_real(lambda) + &other.matrix.scale_real(1.0 - lambda);
        Ok(Self::from_parts(self.parties.clone(), m))
    }
}

fn check_parties(parties: &[Party]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in parties {
        if p.dim < 2 {
            return Err(Error::InvalidLocalDimension(p.dim));
        }
        if !seen.insert(p.label.as_str()) {
            return Err(Error::DuplicateLabel(p.label.clone()));
        }
    }
    Ok(())
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Amplitude vector of Bell state `k` (see module docs for the convention).
pub fn bell_vector(k: usize) -> Result<Vec<C64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = match k {
        0 => [0.0, s, -s, 0.0],
        1 => [0.0, s, s, 0.0],
        2 => [s, 0.0, 0.0, -s],
        3 => [s, 0.0, 0.0, s],
        _ => return Err(Error::IndexOutOfRange { index: k, max: 3 }),
    };
    Ok(v.iter().map(|&x| c(x)).collect())
}

/// Two-qubit Bell state on parties `A`, `B`.
pub fn bell(k: usize) -> Result<MultipartiteState> {
    MultipartiteState::pure(parties(&[("A", 2), ("B", 2)]), &bell_vector(k)?)
}

/// `|ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
pub fn singlet() -> MultipartiteState {
    bell(0).expect("index 0 is valid")
}

/// `p |ψ⁻⟩⟨ψ⁻| + (1 − p) I/4`, for `p ∈ [−1/3, 1]`.
pub fn werner(p: f64) -> Result<MultipartiteState> {
    if !(-1.0 / 3.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            min: -1.0 / 3.0,
            max: 1.0,
        });
    }
    let psi = outer_unchecked(&bell_vector(0)?);
    let noise = ComplexMatrix::identity(4).scale_real(0.25);
    let m = &psi.scale_real(p) + &noise.scale_real(1.0 - p);
    Ok(MultipartiteState::from_parts(
        parties(&[("A", 2), ("B", 2)]),
        m,
    ))
}

/// Default labels for `n` qubits: `A, B` for two, otherwise senders
/// `A1 … A(n−2)` followed by receivers `B1, B2`.
pub fn default_labels(n: usize) -> Vec<String> {
    match n {
        2 => vec!["A".into(), "B".into()],
        _ => (1..=n.saturating_sub(2))
            .map(|i| format!("A{i}"))
            .chain(["B1".to_string(), "B2".to_string()])
            .collect(),
    }
}

fn qubit_parties(n: usize) -> Vec<Party> {
    default_labels(n)
        .into_iter()
        .map(|l| Party::new(l, 2))
        .collect()
}

pub fn ghz_vector(n: usize) -> Vec<C64> {
    let dim = 1usize << n;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![c(0.0); dim];
    v[0] = c(s);
    v[dim - 1] = c(s);
    v
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<MultipartiteState> {
    check_qubit_count(n, 2)?;
    Ok(MultipartiteState::from_parts(
        qubit_parties(n),
        outer_unchecked(&ghz_vector(n)),
    ))
}

/// `p |GHZ⟩⟨GHZ| + (1 − p) I/2ⁿ`, for `p ∈ [−1/(2ⁿ − 1), 1]`.
pub fn noisy_ghz(n: usize, p: f64) -> Result<MultipartiteState> {
    check_qubit_count(n, 2)?;
    let dim = 1usize << n;
    let lo = -1.0 / (dim as f64 - 1.0);
    if !(lo..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            min: lo,
            max: 1.0,
        });
    }
    let g = outer_unchecked(&ghz_vector(n));
    let noise = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
    let m = &g.scale_real(p) + &noise.scale_real(1.0 - p);
    Ok(MultipartiteState::from_parts(qubit_parties(n), m))
}

fn check_qubit_count(n: usize, min: usize) -> Result<()> {
    // 2^10 = 1024 is the largest supported Hilbert dimension
    if n < min || n > 10 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            min: min as f64,
            max: 10.0,
        });
    }
    Ok(())
}

/// `¼ Σᵢ |ψᵢ⟩⟨ψᵢ| ⊗ |ψᵢ⟩⟨ψᵢ|` over the Bell states, on `A1 A2 B1 B2`.
pub fn smolin() -> MultipartiteState {
    let mut m = ComplexMatrix::zeros(16, 16);
    for k in 0..4 {
        let b = outer_unchecked(&bell_vector(k).unwrap());
        m = &m + &kron(&b, &b).scale_real(0.25);
    }
    MultipartiteState::from_parts(qubit_parties(4), m)
}

pub fn frank_vector() -> Vec<C64> {
    let mut v = vec![c(0.0); 16];
    for idx in [0b0000, 0b0101, 0b1000, 0b1110] {
        v[idx] = c(0.5);
    }
    v
}

/// `(|0000⟩ + |0101⟩ + |1000⟩ + |1110⟩)/2` with ket order `A1 A2 B1 B2`.
pub fn frank_state() -> MultipartiteState {
    MultipartiteState::from_parts(qubit_parties(4), outer_unchecked(&frank_vector()))
}

/// `s1 ⊗ s2`; labels must be disjoint.
pub fn tensor_states(s1: &MultipartiteState, s2: &MultipartiteState) -> Result<MultipartiteState> {
    let mut all = s1.parties.clone();
    all.extend(s2.parties.iter().cloned());
    check_parties(&all)?;
    Ok(MultipartiteState::from_parts(
        all,
        kron(&s1.matrix, &s2.matrix),
    ))
}

pub fn permute_parties(s: &MultipartiteState, perm: &[usize]) -> Result<MultipartiteState> {
    s.permute_parties(perm)
}

/// `|ψ⁻⟩^{A1B1} ⊗ |ψ⁻⟩^{A2B2}`, reordered to `A1 A2 B1 B2`.
pub fn singlet_pair() -> MultipartiteState {
    let a = singlet().relabel(&["A1", "B1"]).unwrap();
    let b = singlet().relabel(&["A2", "B2"]).unwrap();
    tensor_states(&a, &b)
        .and_then(|s| s.reorder_by_labels(&["A1", "A2", "B1", "B2"]))
        .expect("disjoint labels")
}

/// Assignment of parties to sender and receiver roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseCodingLayout {
    senders: Vec<String>,
    receivers: Vec<String>,
    routing: BTreeMap<String, String>,
}

impl DenseCodingLayout {
    pub fn new(
        senders: Vec<String>,
        receivers: Vec<String>,
        routing: BTreeMap<String, String>,
    ) -> Result<Self> {
        if senders.is_empty() {
            return Err(Error::InvalidLayout("no senders".into()));
        }
        if receivers.is_empty() || receivers.len() > 2 {
            return Err(Error::InvalidLayout(format!(
                "expected one or two receivers, got {}",
                receivers.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in senders.iter().chain(&receivers) {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidLayout(format!("label `{l}` appears twice")));
            }
        }
        let mut routing = routing;
        if receivers.len() == 1 {
            for s in &senders {
                routing
                    .entry(s.clone())
                    .or_insert_with(|| receivers[0].clone());
            }
        }
        for s in &senders {
            match routing.get(s) {
                None => {
                    return Err(Error::InvalidLayout(format!("sender `{s}` has no route")));
                }
                Some(r) if !receivers.contains(r) => {
                    return Err(Error::InvalidLayout(format!(
                        "sender `{s}` routes to unknown receiver `{r}`"
                    )));
                }
                _ => {}
            }
        }
        if let Some(k) = routing.keys().find(|k| !senders.contains(k)) {
            return Err(Error::InvalidLayout(format!("route for non-sender `{k}`")));
        }
        Ok(Self {
            senders,
            receivers,
            routing,
        })
    }

    pub fn single<S: AsRef<str>>(senders: &[S], receiver: &str) -> Result<Self> {
        Self::new(
            senders.iter().map(|s| s.as_ref().to_string()).collect(),
            vec![receiver.to_string()],
            BTreeMap::new(),
        )
    }

    /// Two receivers; `to_first` route to `first`, `to_second` to `second`.
    pub fn two<S: AsRef<str>>(
        to_first: &[S],
        first: &str,
        to_second: &[S],
        second: &str,
    ) -> Result<Self> {
        let mut routing = BTreeMap::new();
        let mut senders = Vec::new();
        for s in to_first {
            senders.push(s.as_ref().to_string());
            routing.insert(s.as_ref().to_string(), first.to_string());
        }
        for s in to_second {
            senders.push(s.as_ref().to_string());
            routing.insert(s.as_ref().to_string(), second.to_string());
        }
        Self::new(
            senders,
            vec![first.to_string(), second.to_string()],
            routing,
        )
    }

    /// `A1 → B1`, `A2 → B2`: the standard four-qubit layout.
    pub fn four_qubit() -> Self {
        Self::two(&["A1"], "B1", &["A2"], "B2").expect("static layout")
    }

    pub fn senders(&self) -> &[String] {
        &self.senders
    }

    pub fn receivers(&self) -> &[String] {
        &self.receivers
    }

    pub fn routing(&self) -> &BTreeMap<String, String> {
        &self.routing
    }

    pub fn is_two_receiver(&self) -> bool {
        self.receivers.len() == 2
    }

    pub fn senders_to(&self, receiver: &str) -> Vec<String> {
        self.senders
            .iter()
            .filter(|s| self.routing.get(*s).map(String::as_str) == Some(receiver))
            .cloned()
            .collect()
    }

    /// Labels on side `k` (0 or 1) of the receiver split: the senders routed
    /// to receiver `k` followed by that receiver.
    pub fn split_labels(&self, k: usize) -> Vec<String> {
        let r = &self.receivers[k];
        let mut v = self.senders_to(r);
        v.push(r.clone());
        v
    }

    /// Checks that the layout covers exactly the parties of `state`.
    pub fn validate(&self, state: &MultipartiteState) -> Result<()> {
        let labels: HashSet<&str> = state.labels().into_iter().collect();
        for l in self.senders.iter().chain(&self.receivers) {
            if !labels.contains(l.as_str()) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
        if labels.len() != self.senders.len() + self.receivers.len() {
            let missing: Vec<&str> = state
                .labels()
                .into_iter()
                .filter(|l| !self.senders.iter().chain(&self.receivers).any(|x| x == l))
                .collect();
            return Err(Error::InvalidLayout(format!(
                "parties without a role: {missing:?}"
            )));
        }
        Ok(())
    }

    /// Sum of log₂ dimensions of the senders.
    pub fn classical_baseline(&self, state: &MultipartiteState) -> Result<f64> {
        self.validate(state)?;
        self.senders
            .iter()
            .map(|s| Ok((state.parties()[state.index_of(s)?].dim as f64).log2()))
            .sum()
    }
}

/// Split of party indices into two non-empty complementary sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Bipartition {
    pub fn new(first: Vec<usize>, second: Vec<usize>, parties: usize) -> Result<Self> {
        let mut first = first;
        let mut second = second;
        first.sort_unstable();
        second.sort_unstable();
        if first.is_empty() || second.is_empty() {
            return Err(Error::InvalidCut("both sides must be non-empty".into()));
        }
        let mut seen = vec![false; parties];
        for &i in first.iter().chain(&second) {
            if i >= parties {
                return Err(Error::InvalidCut(format!(
                    "party index {i} out of range for {parties} parties"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidCut(format!("party {i} on both sides")));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidCut("cut does not cover all parties".into()));
        }
        Ok(Self { first, second })
    }

    /// `first` on one side, everything else on the other.
    pub fn from_first(first: Vec<usize>, parties: usize) -> Result<Self> {
        let second = (0..parties).filter(|i| !first.contains(i)).collect();
        Self::new(first, second, parties)
    }

    pub fn from_labels<S: AsRef<str>>(state: &MultipartiteState, first: &[S]) -> Result<Self> {
        let idx = state
            .indices_of(first)
            .map_err(|e| Error::InvalidCut(e.to_string()))?;
        Self::from_first(idx, state.num_parties())
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }

    pub fn side(&self, k: usize) -> &[usize] {
        if k == 0 {
            &self.first
        } else {
            &self.second
        }
    }

    pub fn check(&self, parties: usize) -> Result<()> {
        Self::new(self.first.clone(), self.second.clone(), parties).map(|_| ())
    }

    /// All `2^(n−1) − 1` cuts of `n` parties; the last party always sits on
    /// the second side.
    pub fn all(parties: usize) -> Vec<Bipartition> {
        if parties < 2 {
            return Vec::new();
        }
        (1u64..(1u64 << (parties - 1)))
            .map(|mask| {
                let first = (0..parties - 1).filter(|i| mask >> i & 1 == 1).collect();
                Self::from_first(first, parties).expect("valid mask")
            })
            .collect()
    }

    pub fn describe(&self, state: &MultipartiteState) -> String {
        let name = |side: &[usize]| -> String {
            side.iter()
                .map(|&i| state.parties()[i].label.as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", name(&self.first), name(&self.second))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.first, self.second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, inner, is_psd};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn make_state_accepts_singlet() {
        let s = singlet();
        assert!(make_state(s.parties().to_vec(), s.matrix().clone()).is_ok());
    }

    #[test]
    fn make_state_reports_each_failure() {
        let p = parties(&[("A", 2), ("B", 2)]);
        let short = ComplexMatrix::identity(4).scale_real(0.9 / 4.0);
        assert!(matches!(
            make_state(p.clone(), short),
            Err(Error::NotUnitTrace { .. })
        ));
        let neg = ComplexMatrix::from_diag(&[0.6, 0.3, 0.2, -0.1]);
        assert!(matches!(
            make_state(p.clone(), neg),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            make_state(p.clone(), ComplexMatrix::identity(2).scale_real(0.5)),
            Err(Error::DimensionMismatch { .. })
        ));
        let dup = parties(&[("A", 2), ("A", 2)]);
        assert!(matches!(
            make_state(dup, ComplexMatrix::identity(4).scale_real(0.25)),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn bell_states() {
        for k in 0..4 {
            for j in 0..4 {
                let o = inner(&bell_vector(k).unwrap(), &bell_vector(j).unwrap()).norm();
                assert!(close(o, if j == k { 1.0 } else { 0.0 }));
            }
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let explicit = [c(0.0), c(s), c(-s), c(0.0)];
        assert!(close(
            inner(&explicit, &bell_vector(0).unwrap()).norm(),
            1.0
        ));
        assert!(bell(4).is_err());
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for k in 0..2 {
            assert!(singlet()
                .marginal(&[k])
                .unwrap()
                .matrix()
                .approx_eq(&half, 1e-12));
        }
    }

    #[test]
    fn werner_family() {
        assert!(werner(1.0)
            .unwrap()
            .matrix()
            .approx_eq(singlet().matrix(), 1e-12));
        assert!(werner(0.0)
            .unwrap()
            .matrix()
            .approx_eq(&ComplexMatrix::identity(4).scale_real(0.25), 1e-12));
        let ev = hermitian_eigenvalues(werner(0.5).unwrap().matrix()).unwrap();
        for (g, w) in ev.iter().zip([0.125, 0.125, 0.125, 0.625]) {
            assert!(close(*g, w));
        }
        assert!(werner(1.01).is_err());
        assert!(werner(-0.34).is_err());
        assert!(werner(-1.0 / 3.0).is_ok());
    }

    #[test]
    fn ghz_family() {
        let g2 = ghz(2).unwrap();
        assert!(g2.matrix().approx_eq(bell(3).unwrap().matrix(), 1e-12));
        let g4 = ghz(4).unwrap();
        let m = g4.marginal_by_labels(&["B1", "B2"]).unwrap();
        assert!(m
            .matrix()
            .approx_eq(&ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]), 1e-12));
        let mixed = noisy_ghz(4, 0.0).unwrap();
        assert!(mixed
            .matrix()
            .approx_eq(&ComplexMatrix::identity(16).scale_real(1.0 / 16.0), 1e-12));
        assert!(noisy_ghz(4, -0.1).is_err());
        assert!(ghz(1).is_err());
        assert_eq!(ghz(5).unwrap().labels(), vec!["A1", "A2", "A3", "B1", "B2"]);
    }

    #[test]
    fn smolin_properties() {
        let s = smolin();
        let ev = hermitian_eigenvalues(s.matrix()).unwrap();
        assert!(ev[..12].iter().all(|&x| close(x, 0.0)));
        assert!(ev[12..].iter().all(|&x| close(x, 0.25)));
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for k in 0..4 {
            assert!(s.marginal(&[k]).unwrap().matrix().approx_eq(&half, 1e-12));
        }
        let pt = s.partial_transpose(&[2, 3]).unwrap();
        assert!(is_psd(&pt, 1e-9).unwrap());
    }

    #[test]
    fn frank_is_pure() {
        let f = frank_state();
        assert!(close(f.purity(), 1.0));
        assert!(close(crate::linalg::vector_norm(&frank_vector()), 1.0));
    }

    #[test]
    fn frank_swap_matches_shuffled_amplitudes() {
        // swap parties 1 and 2 (A2 <-> B1) by reshuffling ket bits directly
        let mut v = vec![c(0.0); 16];
        for (idx, amp) in frank_vector().into_iter().enumerate() {
            let b = [idx >> 3 & 1, idx >> 2 & 1, idx >> 1 & 1, idx & 1];
            let j = b[0] << 3 | b[2] << 2 | b[1] << 1 | b[3];
            v[j] = amp;
        }
        let permuted = frank_state().permute_parties(&[0, 2, 1, 3]).unwrap();
        assert!(permuted.matrix().approx_eq(&outer_unchecked(&v), 1e-12));
        assert_eq!(permuted.labels(), vec!["A1", "B1", "A2", "B2"]);
    }

    #[test]
    fn tensor_and_permute() {
        let t = tensor_states(&singlet(), &singlet().relabel(&["C", "D"]).unwrap()).unwrap();
        assert_eq!(t.num_parties(), 4);
        assert_eq!(t.dim(), 16);
        assert!(matches!(
            tensor_states(&singlet(), &singlet()),
            Err(Error::DuplicateLabel(_))
        ));
        let f = frank_state();
        let perm = [2, 0, 3, 1];
        let mut inv = [0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let back = f
            .permute_parties(&perm)
            .unwrap()
            .permute_parties(&inv)
            .unwrap();
        assert!(back.matrix().approx_eq(f.matrix(), 0.0));
        assert_eq!(back.labels(), f.labels());
    }

    #[test]
    fn layout_validation() {
        let l = DenseCodingLayout::single(&["A"], "B").unwrap();
        assert_eq!(l.routing().get("A").map(String::as_str), Some("B"));
        assert!(l.validate(&singlet()).is_ok());
        assert!(l.validate(&ghz(4).unwrap()).is_err());
        assert!(DenseCodingLayout::single(&["A"], "A").is_err());
        let mut r = BTreeMap::new();
        r.insert("A1".to_string(), "B3".to_string());
        assert!(
            DenseCodingLayout::new(vec!["A1".into()], vec!["B1".into(), "B2".into()], r).is_err()
        );
        let four = DenseCodingLayout::four_qubit();
        assert_eq!(four.split_labels(0), vec!["A1", "B1"]);
        assert_eq!(four.split_labels(1), vec!["A2", "B2"]);
        assert!(close(
            four.classical_baseline(&ghz(4).unwrap()).unwrap(),
            2.0
        ));
    }

    #[test]
    fn bipartitions() {
        assert_eq!(Bipartition::all(4).len(), 7);
        assert!(Bipartition::new(vec![0], vec![0, 1], 2).is_err());
        assert!(Bipartition::new(vec![0], vec![], 2).is_err());
        assert!(Bipartition::new(vec![0], vec![1], 3).is_err());
        let s = smolin();
        let cut = Bipartition::from_labels(&s, &["A1", "A2"]).unwrap();
        assert_eq!(cut.describe(&s), "A1,A2|B1,B2");
        assert!(Bipartition::from_labels(&s, &["Z"]).is_err());
    }
}
