//! Unitary encodings, projective measurements and the four-qubit GHZ
//! protocol with LOCC decoding.

use nalgebra::{Matrix3, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{mutual_information, Ensemble, JointDistribution};
use crate::linalg::{
    embed_operator, hermitian_eigh, inner, kron, kron_all, outer_unchecked, pauli, ComplexMatrix,
    C64, DEFAULT_TOL,
};
use crate::states::{ghz, DenseCodingLayout, MultipartiteState};

/// Default cap on the number of members produced by [`encode_ensemble`].
pub const ENSEMBLE_CAP: usize = 4096;

/// A list of unitaries on one `dim`-dimensional party.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitarySet {
    dim: usize,
    members: Vec<ComplexMatrix>,
}

impl UnitarySet {
    pub fn new(members: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidUnitarySet("empty set".into()));
        };
        let dim = first.rows();
        for (i, u) in members.iter().enumerate() {
            if u.rows() != dim || !u.is_square() {
                return Err(Error::InvalidUnitarySet(format!(
                    "member {i} has wrong shape"
                )));
            }
            if !u.is_unitary(DEFAULT_TOL) {
                return Err(Error::InvalidUnitarySet(format!(
                    "member {i} is not unitary"
                )));
            }
        }
        Ok(Self { dim, members })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            members: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[ComplexMatrix] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `d²` members with `Tr(W_j† W_k) = d δ_jk`.
    pub fn is_complete_orthogonal(&self, tol: f64) -> bool {
        let d = self.dim as f64;
        if self.members.len() != self.dim * self.dim {
            return false;
        }
        self.members.iter().enumerate().all(|(j, wj)| {
            self.members.iter().enumerate().all(|(k, wk)| {
                let want = if j == k { d } else { 0.0 };
                (wj.hs_inner(wk).norm() - want).abs() <= tol
            })
        })
    }

    /// `(1/d) Σ_j W_j† Ξ W_j`; equals `Tr[Ξ]·I` for a complete orthogonal set.
    pub fn twirl(&self, xi: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let sum = self
            .members
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, w| {
                &acc + &w.dagger().matmul(xi).matmul(w)
            });
        sum.scale_real(1.0 / n as f64)
    }

    pub fn satisfies_trace_rule(&self, xi: &ComplexMatrix, tol: f64) -> bool {
        let target = ComplexMatrix::identity(self.dim).scale(xi.trace());
        self.twirl(xi).approx_eq(&target, tol)
    }

    /// Every pairwise product `U ⊗ V` of two sets, `U`-major.
    pub fn tensor(&self, other: &UnitarySet) -> UnitarySet {
        let members = self
            .members
            .iter()
            .flat_map(|u| other.members.iter().map(move |v| kron(u, v)))
            .collect();
        UnitarySet {
            dim: self.dim * other.dim,
            members,
        }
    }
}

/// Generalized shift-and-clock operators `X^a Z^b`, index `a·d + b`.
/// For `d = 2` this is `{I, Z, X, XZ}` with `XZ = −iY`.
pub fn weyl_set(d: usize) -> Result<UnitarySet> {
    if d < 2 {
        return Err(Error::InvalidLocalDimension(d));
    }
    let omega = |k: usize| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
    let mut members = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let mut w = ComplexMatrix::zeros(d, d);
            for j in 0..d {
                // X^a Z^b |j⟩ = ω^{bj} |j + a⟩
                w[((j + a) % d, j)] = omega(b * j % d);
            }
            members.push(w);
        }
    }
    Ok(UnitarySet { dim: d, members })
}

/// Uniform distribution over a set.
pub fn uniform(set: &UnitarySet) -> Vec<f64> {
    vec![1.0 / set.len() as f64; set.len()]
}

/// Applies `U_{i₁} ⊗ … ⊗ U_{i_N}` on the senders for every index tuple.
/// Members are in lexicographic tuple order (first sender most significant)
/// with product probabilities.
pub fn encode_ensemble(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
    sets: &[UnitarySet],
    probs: &[Vec<f64>],
) -> Result<Ensemble> {
    encode_ensemble_capped(state, layout, sets, probs, ENSEMBLE_CAP)
}

pub fn encode_ensemble_capped(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
    sets: &[UnitarySet],
    probs: &[Vec<f64>],
    cap: usize,
) -> Result<Ensemble> {
    layout.validate(state)?;
    let senders = state.indices_of(layout.senders())?;
    encode_on(state, &senders, sets, probs, cap)
}

/// Encoding on explicit party indices, one set per index.
pub fn encode_on(
    state: &MultipartiteState,
    targets: &[usize],
    sets: &[UnitarySet],
    probs: &[Vec<f64>],
    cap: usize,
) -> Result<Ensemble> {
    if sets.len() != targets.len() || probs.len() != targets.len() {
        return Err(Error::InvalidUnitarySet(format!(
            "{} senders but {} sets and {} distributions",
            targets.len(),
            sets.len(),
            probs.len()
        )));
    }
    for ((&t, set), p) in targets.iter().zip(sets).zip(probs) {
        let d = state.parties()[t].dim;
        if set.dim() != d {
            return Err(Error::InvalidUnitarySet(format!(
                "set of dimension {} for party `{}` of dimension {d}",
                set.dim(),
                state.parties()[t].label
            )));
        }
        if p.len() != set.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for {} unitaries",
                p.len(),
                set.len()
            )));
        }
        let total: f64 = p.iter().sum();
        if p.iter().any(|&x| x < 0.0) || (total - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidDistribution(format!(
                "encoding probabilities {p:?}"
            )));
        }
    }
    let size = sets
        .iter()
        .try_fold(1usize, |acc, s| acc.checked_mul(s.len()))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::CapExceeded {
            what: "ensemble size",
            size,
            cap,
        });
    }

    let radices: Vec<usize> = sets.iter().map(UnitarySet::len).collect();
    let dims = state.dims();
    let items: Vec<(f64, MultipartiteState)> = (0..size)
        .into_par_iter()
        .map(|flat| {
            let tuple = mixed_radix(flat, &radices);
            let p: f64 = tuple.iter().zip(probs).map(|(&i, p)| p[i]).product();
            let op = kron_all(tuple.iter().zip(sets).map(|(&i, s)| &s.members[i]));
            let full = embed_operator(&op, &dims, targets).expect("validated targets");
            let m = state.matrix().conjugate_by(&full);
            (
                p,
                MultipartiteState::from_parts(state.parties().to_vec(), m),
            )
        })
        .collect();
    Ensemble::new(items)
}

fn mixed_radix(mut flat: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = flat % r;
        flat /= r;
    }
    out
}

/// Full Weyl sets with uniform probabilities on every sender.
pub fn weyl_encoding(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<Ensemble> {
    layout.validate(state)?;
    let mut sets = Vec::new();
    for s in layout.senders() {
        let d = state.parties()[state.index_of(s)?].dim;
        sets.push(weyl_set(d)?);
    }
    let probs: Vec<Vec<f64>> = sets.iter().map(uniform).collect();
    encode_ensemble(state, layout, &sets, &probs)
}

/// One branch of a projective measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementBranch {
    pub outcome: usize,
    pub probability: f64,
    pub post_state: MultipartiteState,
}

/// Measures `projectors` (acting on `targets`, in that order). Branches of
/// zero probability are omitted.
pub fn projective_measure(
    state: &MultipartiteState,
    projectors: &[ComplexMatrix],
    targets: &[usize],
) -> Result<Vec<MeasurementBranch>> {
    let dims = state.dims();
    let local = dims.select(targets).total();
    let mut sum = ComplexMatrix::zeros(local, local);
    for (i, p) in projectors.iter().enumerate() {
        if p.rows() != local || !p.is_square() {
            return Err(Error::InvalidProjectors(format!(
                "projector {i} is {}x{}, expected {local}x{local}",
                p.rows(),
                p.cols()
            )));
        }
        if !p.is_hermitian(DEFAULT_TOL) || !p.matmul(p).approx_eq(p, DEFAULT_TOL) {
            return Err(Error::InvalidProjectors(format!(
                "operator {i} is not a projector"
            )));
        }
        sum = &sum + p;
    }
    if !sum.approx_eq(&ComplexMatrix::identity(local), DEFAULT_TOL) {
        return Err(Error::InvalidProjectors(
            "projectors do not sum to identity".into(),
        ));
    }
    let mut out = Vec::new();
    for (i, p) in projectors.iter().enumerate() {
        let full = embed_operator(p, &dims, targets)?;
        let m = full.matmul(state.matrix()).matmul(&full);
        let prob = m.trace().re;
        if prob > DEFAULT_TOL {
            out.push(MeasurementBranch {
                outcome: i,
                probability: prob,
                post_state: MultipartiteState::from_parts(
                    state.parties().to_vec(),
                    m.scale_real(1.0 / prob),
                ),
            });
        }
    }
    Ok(out)
}

fn ket(amps: &[(usize, f64)]) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); 16];
    for &(idx, a) in amps {
        v[idx] = C64::new(a, 0.0);
    }
    v
}

/// The eight listed states `ψ₁ … ψ₈` on `(B₁ pair, B₂ pair)`, normalized.
/// Each pair is ordered (qubit received from the sender, receiver's own
/// qubit), so the party order is `A1 B1 A2 B2`.
pub fn ghz4_listed_states() -> Vec<Vec<C64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // (B1 pair, B2 pair) index = 4 * b1 + b2
    let pairs: [((usize, usize), (usize, usize)); 4] = [
        ((0b00, 0b00), (0b11, 0b11)),
        ((0b00, 0b10), (0b11, 0b01)),
        ((0b10, 0b00), (0b01, 0b11)),
        ((0b10, 0b10), (0b01, 0b01)),
    ];
    let mut out = Vec::with_capacity(8);
    for ((a1, a2), (b1, b2)) in pairs {
        for sign in [1.0, -1.0] {
            out.push(ket(&[(4 * a1 + a2, s), (4 * b1 + b2, sign * s)]));
        }
    }
    out
}

/// Encoding pairs `(U_{A1}, U_{A2})` as Pauli indices (`0: I, 1: σx,
/// 2: σy, 3: σz`); message `k` produces `ψ_{k+1}`.
pub const GHZ4_ENCODINGS: [(usize, usize); 8] = [
    (0, 0),
    (3, 0),
    (0, 1),
    (3, 1),
    (1, 0),
    (2, 0),
    (1, 1),
    (2, 1),
];

pub fn ghz4_message_of(encoding: (usize, usize)) -> Option<usize> {
    GHZ4_ENCODINGS.iter().position(|&e| e == encoding)
}

const PAIR_ORDER: [usize; 4] = [0, 2, 1, 3];

fn ghz4_encode(state: &MultipartiteState) -> Vec<(f64, MultipartiteState)> {
    let p = pauli::all();
    GHZ4_ENCODINGS
        .iter()
        .map(|&(u1, u2)| {
            let encoded = state
                .apply_local(&kron(&p[u1], &p[u2]), &[0, 1])
                .expect("senders are parties 0 and 1");
            let paired = encoded
                .permute_parties(&PAIR_ORDER)
                .expect("static permutation");
            (0.125, paired)
        })
        .collect()
}

/// The equiprobable eight-state ensemble obtained by encoding the
/// four-qubit GHZ state; parties `A1 B1 A2 B2`.
pub fn ghz4_ensemble() -> Ensemble {
    let items = ghz4_encode(&ghz(4).expect("n = 4"));
    debug_assert!(items
        .iter()
        .zip(ghz4_listed_states())
        .all(|((_, s), psi)| phase_fidelity(s.matrix(), &psi) > 1.0 - 1e-9));
    Ensemble::new(items).expect("valid ensemble")
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn phase_fidelity(rho: &ComplexMatrix, psi: &[C64]) -> f64 {
    inner(psi, &rho.apply(psi)).re
}

/// One entry of a decoding transcript.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundOutcome {
    pub round: usize,
    pub side: String,
    pub projector: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementOutcomeRecord {
    /// Encoding indices `(U_{A1}, U_{A2})` of the sent message.
    pub message: Vec<usize>,
    pub outcomes: Vec<RoundOutcome>,
    /// Decoded encoding indices; empty when the branch is inconclusive.
    pub decoded: Vec<usize>,
    /// Probability of this branch.
    pub probability: f64,
    pub post_state: MultipartiteState,
}

fn pair_projector(basis: &[usize]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for &b in basis {
        m[(b, b)] = C64::new(1.0, 0.0);
    }
    m
}

/// `P₀ = |00⟩⟨00| + |11⟩⟨11|`, `P₁ = |01⟩⟨01| + |10⟩⟨10|`.
pub fn parity_projectors() -> [ComplexMatrix; 2] {
    [pair_projector(&[0, 3]), pair_projector(&[1, 2])]
}

/// `{|00⟩ ± |11⟩}` (parity 0) or `{|01⟩ ± |10⟩}` (parity 1), completed by
/// the projector onto the other parity subspace.
pub fn sign_projectors(parity: usize) -> [ComplexMatrix; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b) = if parity == 0 { (0, 3) } else { (1, 2) };
    let mut plus = vec![C64::new(0.0, 0.0); 4];
    let mut minus = plus.clone();
    plus[a] = C64::new(s, 0.0);
    plus[b] = C64::new(s, 0.0);
    minus[a] = C64::new(s, 0.0);
    minus[b] = C64::new(-s, 0.0);
    [
        outer_unchecked(&plus),
        outer_unchecked(&minus),
        parity_projectors()[1 - parity].clone(),
    ]
}

/// Enumerates every branch of the three-round decoder on a state whose
/// parties are `(B1 pair, B2 pair)` = `(0, 1), (2, 3)`.
pub fn run_ghz4_decoder(state: &MultipartiteState) -> Result<Vec<MeasurementOutcomeRecord>> {
    if state.parties().iter().any(|p| p.dim != 2) || state.num_parties() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 16,
            actual: state.dim(),
        });
    }
    let b1 = [0, 1];
    let b2 = [2, 3];
    let parity = parity_projectors();
    let mut out = Vec::new();
    for r1 in projective_measure(state, &parity, &b1)? {
        for r2 in projective_measure(&r1.post_state, &parity, &b2)? {
            let basis1 = sign_projectors(r1.outcome);
            let basis2 = sign_projectors(r2.outcome);
            for m1 in projective_measure(&r2.post_state, &basis1, &b1)? {
                for m2 in projective_measure(&m1.post_state, &basis2, &b2)? {
                    let decoded = if m1.outcome < 2 && m2.outcome < 2 {
                        let k = 4 * r1.outcome + 2 * r2.outcome + (m1.outcome ^ m2.outcome);
                        let (u1, u2) = GHZ4_ENCODINGS[k];
                        vec![u1, u2]
                    } else {
                        Vec::new()
                    };
                    let outcomes = vec![
                        RoundOutcome {
                            round: 1,
                            side: "B1".into(),
                            projector: r1.outcome,
                            probability: r1.probability,
                        },
                        RoundOutcome {
                            round: 2,
                            side: "B2".into(),
                            projector: r2.outcome,
                            probability: r2.probability,
                        },
                        RoundOutcome {
                            round: 3,
                            side: "B1".into(),
                            projector: m1.outcome,
                            probability: m1.probability,
                        },
                        RoundOutcome {
                            round: 3,
                            side: "B2".into(),
                            projector: m2.outcome,
                            probability: m2.probability,
                        },
                    ];
                    out.push(MeasurementOutcomeRecord {
                        message: Vec::new(),
                        outcomes,
                        decoded,
                        probability: r1.probability
                            * r2.probability
                            * m1.probability
                            * m2.probability,
                        post_state: m2.post_state.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Runs the decoder on `ψ_{message+1}` and returns every branch.
pub fn ghz4_locc_decode(message: usize) -> Result<Vec<MeasurementOutcomeRecord>> {
    if message >= 8 {
        return Err(Error::IndexOutOfRange {
            index: message,
            max: 7,
        });
    }
    let ensemble = ghz4_ensemble();
    let state = &ensemble.items()[message].1;
    let (u1, u2) = GHZ4_ENCODINGS[message];
    let mut records = run_ghz4_decoder(state)?;
    for r in &mut records {
        r.message = vec![u1, u2];
    }
    Ok(records)
}

fn outcome_column(r: &MeasurementOutcomeRecord) -> usize {
    // r1, r2 ∈ {0,1}; m1, m2 ∈ {0,1,2}
    let o: Vec<usize> = r.outcomes.iter().map(|o| o.projector).collect();
    ((o[0] * 2 + o[1]) * 3 + o[2]) * 3 + o[3]
}

/// Joint distribution of (message, full outcome sequence) induced by the
/// decoder on an eight-member ensemble in `A1 B1 A2 B2` order.
pub fn ghz4_protocol_joint(ensemble: &Ensemble) -> Result<JointDistribution> {
    let mut rows = Vec::with_capacity(ensemble.len());
    for (p, s) in ensemble.items() {
        let mut row = vec![0.0; 36];
        for r in run_ghz4_decoder(s)? {
            row[outcome_column(&r)] += p * r.probability;
        }
        rows.push(row);
    }
    JointDistribution::new(rows)
}

/// Mutual information achieved by the decoder on the GHZ ensemble.
pub fn ghz4_protocol_information() -> Result<f64> {
    Ok(mutual_information(&ghz4_protocol_joint(&ghz4_ensemble())?))
}

/// A concrete LOCC dense-coding scheme that can certify an achievable rate.
pub trait LoccProtocol: Send + Sync {
    fn name(&self) -> &str;

    /// Rate in bits achieved on `state` under `layout`, or `None` when the
    /// protocol does not apply.
    fn achieved_rate(
        &self,
        state: &MultipartiteState,
        layout: &DenseCodingLayout,
    ) -> Result<Option<f64>>;
}

/// GHZ₄ encoding with the three-round decoder, run in a local frame fitted
/// to the state so that locally rotated GHZ states are handled too.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ghz4Protocol;

impl LoccProtocol for Ghz4Protocol {
    fn name(&self) -> &str {
        "ghz4"
    }

    fn achieved_rate(
        &self,
        state: &MultipartiteState,
        layout: &DenseCodingLayout,
    ) -> Result<Option<f64>> {
        layout.validate(state)?;
        if !layout.is_two_receiver()
            || state.num_parties() != 4
            || state.parties().iter().any(|p| p.dim != 2)
        {
            return Ok(None);
        }
        let r = layout.receivers();
        let to1 = layout.senders_to(&r[0]);
        let to2 = layout.senders_to(&r[1]);
        if to1.len() != 1 || to2.len() != 1 {
            return Ok(None);
        }
        let ordered = state.reorder_by_labels(&[&to1[0], &to2[0], &r[0], &r[1]])?;
        let Some(frame) = ghz_frame(&ordered)? else {
            return Ok(None);
        };
        let aligned = ordered.apply_local(&kron_all(&frame), &[0, 1, 2, 3])?;
        let ensemble = Ensemble::new(ghz4_encode(&aligned))?;
        Ok(Some(mutual_information(&ghz4_protocol_joint(&ensemble)?)))
    }
}

/// Bloch-vector correlation matrix `T_ab = Tr(ρ σ_a ⊗ σ_b)` of a
/// two-qubit state.
fn correlation_matrix(rho: &ComplexMatrix) -> Matrix3<f64> {
    let p = pauli::all();
    Matrix3::from_fn(|a, b| kron(&p[a + 1], &p[b + 1]).hs_inner(rho).re)
}

/// Unitary sending the Bloch direction `n` to `+z`.
fn rotate_to_z(n: [f64; 3]) -> ComplexMatrix {
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let phi = n[1].atan2(n[0]);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    // rows ⟨+n| and ⟨−n|
    let plus = [C64::new(c, 0.0), e * s];
    let minus = [-e.conj() * s, C64::new(c, 0.0)];
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            plus[0].conj(),
            plus[1].conj(),
            minus[0].conj(),
            minus[1].conj(),
        ],
    )
    .unwrap()
}

/// Local unitaries `W_k` such that `(⊗W_k)|v⟩` is as close as the frame
/// fit allows to `(|0000⟩ + |1111⟩)/√2`, where `|v⟩` is the dominant
/// eigenvector of the state. `None` when a qubit shows no two-body
/// correlations to align.
fn ghz_frame(state: &MultipartiteState) -> Result<Option<Vec<ComplexMatrix>>> {
    let n = 4;
    let mut rotations = Vec::with_capacity(n);
    for k in 0..n {
        let mut m = Matrix3::zeros();
        for l in (0..n).filter(|&l| l != k) {
            let t = correlation_matrix(state.marginal(&[k, l])?.matrix());
            let t = if k < l { t } else { t.transpose() };
            m += t * t.transpose();
        }
        let eig = SymmetricEigen::new(m);
        let (best, &val) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("3 eigenvalues");
        if val < 1e-6 {
            return Ok(None);
        }
        let v = eig.eigenvectors.column(best);
        rotations.push(rotate_to_z([v[0], v[1], v[2]]));
    }

    let (values, vectors) = hermitian_eigh(state.matrix())?;
    let top = vectors[values.len() - 1].clone();
    let rotated = kron_all(&rotations).apply(&top);
    let s = rotated
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .expect("non-empty");
    let s_bar = s ^ 0b1111;
    let alpha = rotated[s];
    let beta = rotated[s_bar];

    let mut frame = Vec::with_capacity(n);
    for (k, rot) in rotations.into_iter().enumerate() {
        let flip = (s >> (n - 1 - k)) & 1 == 1;
        let mut w = if flip { pauli::x().matmul(&rot) } else { rot };
        if k == 0 && beta.norm() > 1e-12 {
            let phase = C64::from_polar(1.0, alpha.arg() - beta.arg());
            let fix = ComplexMatrix::from_vec(
                2,
                2,
                vec![
                    C64::new(1.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    phase,
                ],
            )
            .unwrap();
            w = fix.matmul(&w);
        }
        frame.push(w);
    }
    Ok(Some(frame))
}
