//! Closed-form dense-coding capacities and threshold solvers.
//!
//! Reported capacities are clamped at the classical baseline
//! `Σ log₂ d_{A_k}`; the unclamped excess is always reported next to them.

use serde::{Deserialize, Serialize};

use crate::encoding::{encode_on, uniform, weyl_set, ENSEMBLE_CAP};
use crate::error::{Error, Result};
use crate::info::{entropy, holevo_chi};
use crate::states::{noisy_ghz, tensor_states, werner, DenseCodingLayout, MultipartiteState};

/// Default cap on the doubled Hilbert dimension in [`two_copy_chi`].
pub const TWO_COPY_DIM_CAP: usize = 4096;

/// Iteration cap for the bisection solvers.
pub const MAX_BISECTION_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitEntropies {
    pub receiver_one: f64,
    pub receiver_two: f64,
    pub side_one: f64,
    pub side_two: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub layout: DenseCodingLayout,
    pub classical_baseline: f64,
    /// Single-receiver capacity, or the global capacity `C_G` when there are
    /// two receivers.
    pub capacity: f64,
    /// `S(ρ^{receivers}) − S(ρ)`.
    pub raw_excess: f64,
    pub state_entropy: f64,
    pub receiver_entropy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locc_upper_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo_capacity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo_raw: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_entropies: Option<SplitEntropies>,
}

/// Global (all receivers together) capacity with its raw excess.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Capacity {
    pub classical_baseline: f64,
    pub raw_excess: f64,
    pub capacity: f64,
}

impl Capacity {
    fn new(classical_baseline: f64, raw_excess: f64) -> Self {
        Self {
            classical_baseline,
            raw_excess,
            capacity: classical_baseline + raw_excess.max(0.0),
        }
    }

    /// `baseline + raw_excess`, the unclamped closed form.
    pub fn raw(&self) -> f64 {
        self.classical_baseline + self.raw_excess
    }
}

/// Capacity without communication between the receivers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoCapacity {
    pub sides: [Capacity; 2],
    /// Sum of the clamped single-receiver capacities.
    pub capacity: f64,
    /// Sum of the unclamped closed forms.
    pub raw: f64,
}

fn receiver_capacity(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<Capacity> {
    layout.validate(state)?;
    let baseline = layout.classical_baseline(state)?;
    let receivers = state.indices_of(layout.receivers())?;
    let excess = entropy(&state.marginal(&receivers)?)? - entropy(state)?;
    Ok(Capacity::new(baseline, excess))
}

fn require_receivers(layout: &DenseCodingLayout, n: usize) -> Result<()> {
    if layout.receivers().len() != n {
        return Err(Error::InvalidLayout(format!(
            "expected {n} receiver(s), got {}",
            layout.receivers().len()
        )));
    }
    Ok(())
}

/// `Σ log₂ d_{A_k} + max(0, S(ρ^B) − S(ρ))` for one receiver.
pub fn capacity_single_receiver(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
) -> Result<CapacityReport> {
    require_receivers(layout, 1)?;
    capacity_report(state, layout)
}

/// Full report for one- or two-receiver layouts.
pub fn capacity_report(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
) -> Result<CapacityReport> {
    let cap = receiver_capacity(state, layout)?;
    let state_entropy = entropy(state)?;
    let mut report = CapacityReport {
        layout: layout.clone(),
        classical_baseline: cap.classical_baseline,
        capacity: cap.capacity,
        raw_excess: cap.raw_excess,
        state_entropy,
        receiver_entropy: cap.raw_excess + state_entropy,
        locc_upper_bound: None,
        lo_capacity: None,
        lo_raw: None,
        split_entropies: None,
    };
    if layout.is_two_receiver() {
        let split = split_entropies(state, layout)?;
        let lo = lo_capacity(state, layout)?;
        report.locc_upper_bound = Some(bound_from_split(cap.classical_baseline, &split));
        report.lo_capacity = Some(lo.capacity);
        report.lo_raw = Some(lo.raw);
        report.split_entropies = Some(split);
    }
    Ok(report)
}

/// `C_G = Σ log₂ d_{A_k} + max(0, S(ρ^{B₁B₂}) − S(ρ))`.
pub fn capacity_global(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<Capacity> {
    require_receivers(layout, 2)?;
    receiver_capacity(state, layout)
}

/// Receiver and split-side entropies for a two-receiver layout.
pub fn split_entropies(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
) -> Result<SplitEntropies> {
    require_receivers(layout, 2)?;
    layout.validate(state)?;
    let r = layout.receivers();
    let s = |labels: &[String]| -> Result<f64> { entropy(&state.marginal_by_labels(labels)?) };
    Ok(SplitEntropies {
        receiver_one: s(&r[..1])?,
        receiver_two: s(&r[1..])?,
        side_one: s(&layout.split_labels(0))?,
        side_two: s(&layout.split_labels(1))?,
    })
}

fn bound_from_split(baseline: f64, s: &SplitEntropies) -> f64 {
    baseline + s.receiver_one + s.receiver_two - s.side_one.max(s.side_two)
}

/// `Σ log₂ d_{A_k} + S(ρ^{B₁}) + S(ρ^{B₂}) − max(S(ρ¹), S(ρ²))`, unclamped.
pub fn locc_upper_bound(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<f64> {
    let split = split_entropies(state, layout)?;
    Ok(bound_from_split(layout.classical_baseline(state)?, &split))
}

/// `C(ρ¹) + C(ρ²)` with each side's senders encoding for its own receiver.
pub fn lo_capacity(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<LoCapacity> {
    require_receivers(layout, 2)?;
    layout.validate(state)?;
    let mut sides = [Capacity::new(0.0, 0.0); 2];
    for (k, side) in sides.iter_mut().enumerate() {
        let receiver = &layout.receivers()[k];
        let senders = layout.senders_to(receiver);
        let reduced = state.marginal_by_labels(&layout.split_labels(k))?;
        *side = if senders.is_empty() {
            Capacity::new(0.0, 0.0)
        } else {
            receiver_capacity(&reduced, &DenseCodingLayout::single(&senders, receiver)?)?
        };
    }
    Ok(LoCapacity {
        sides,
        capacity: sides.iter().map(|c| c.capacity).sum(),
        raw: sides.iter().map(Capacity::raw).sum(),
    })
}

/// Holevo quantity of the product-Weyl encoding on two copies of the state,
/// halved. Equals the unclamped single-copy closed form.
pub fn two_copy_chi(state: &MultipartiteState, layout: &DenseCodingLayout) -> Result<f64> {
    two_copy_chi_capped(state, layout, TWO_COPY_DIM_CAP)
}

pub fn two_copy_chi_capped(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
    dim_cap: usize,
) -> Result<f64> {
    require_receivers(layout, 1)?;
    layout.validate(state)?;
    let doubled = state.dim() * state.dim();
    if doubled > dim_cap {
        return Err(Error::CapExceeded {
            what: "two-copy dimension",
            size: doubled,
            cap: dim_cap,
        });
    }
    let copy_labels: Vec<String> = state.labels().iter().map(|l| format!("{l}'")).collect();
    let copy = state.relabel(&copy_labels)?;
    let both = tensor_states(state, &copy)?;
    let n = state.num_parties();
    let mut targets = Vec::new();
    let mut sets = Vec::new();
    for s in layout.senders() {
        let i = state.index_of(s)?;
        let set = weyl_set(state.parties()[i].dim)?;
        targets.extend([i, n + i]);
        sets.extend([set.clone(), set]);
    }
    let probs: Vec<Vec<f64>> = sets.iter().map(uniform).collect();
    let ensemble = encode_on(&both, &targets, &sets, &probs, ENSEMBLE_CAP)?;
    Ok(holevo_chi(&ensemble)? / 2.0)
}

/// Result of a bracketing root search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Bisection until the bracket is narrower than `xtol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, xtol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(Root {
            root: lo,
            lo,
            hi: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Ok(Root {
            root: hi,
            lo: hi,
            hi,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let mut iterations = 0;
    while hi - lo > xtol && iterations < MAX_BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        iterations += 1;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok(Root {
        root,
        lo,
        hi,
        residual: f(root)?,
        iterations,
    })
}

/// Raw single-receiver excess `1 − S(ρ_p)` of the Werner family.
pub fn werner_excess(p: f64) -> Result<f64> {
    let layout = DenseCodingLayout::single(&["A"], "B")?;
    Ok(receiver_capacity(&werner(p)?, &layout)?.raw_excess)
}

/// Smallest Werner parameter with non-negative excess, i.e. the root of
/// `S(ρ_p) = 1` on `[1/3, 1]`.
pub fn werner_dc_threshold() -> Result<Root> {
    bisect(werner_excess, 1.0 / 3.0, 1.0, 1e-10)
}

/// Excess of the noisy GHZ family for `layout`: the single-receiver excess,
/// or the global excess for two receivers.
pub fn noisy_ghz_excess(n: usize, p: f64, layout: &DenseCodingLayout) -> Result<f64> {
    Ok(receiver_capacity(&noisy_ghz(n, p)?, layout)?.raw_excess)
}

/// Root of the noisy GHZ excess on `[0, 1]`.
pub fn noisy_ghz_dc_threshold(n: usize, layout: &DenseCodingLayout) -> Result<Root> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
            min: 3.0,
            max: 10.0,
        });
    }
    layout.validate(&noisy_ghz(n, 1.0)?)?;
    bisect(|p| noisy_ghz_excess(n, p, layout), 0.0, 1.0, 1e-12)
}
