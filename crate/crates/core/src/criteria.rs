//! Entanglement criteria and the dense-codeability shell classification.
//!
//! Separability is never certified: PPT states are reported as
//! `S-or-PBE`. Distillability is witnessed only by a reduction-criterion
//! violation or a positive dense-coding excess, and LOCC usefulness only by
//! a registered protocol that achieves more than the classical baseline.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{capacity_report, CapacityReport};
use crate::encoding::{Ghz4Protocol, LoccProtocol};
use crate::error::{Error, Result};
use crate::linalg::{kron, min_eigenvalue, ComplexMatrix, DEFAULT_TOL};
use crate::states::{Bipartition, DenseCodingLayout, MultipartiteState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptResult {
    pub ppt: bool,
    pub min_eigenvalue: f64,
}

/// PPT test across `cut`: the second side is transposed.
pub fn is_ppt(state: &MultipartiteState, cut: &Bipartition, tol: f64) -> Result<PptResult> {
    cut.check(state.num_parties())?;
    let pt = state.partial_transpose(cut.second())?;
    let min = min_eigenvalue(&pt, tol.max(DEFAULT_TOL))?;
    Ok(PptResult {
        ppt: min >= -tol,
        min_eigenvalue: min,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub violated: bool,
    /// Minimum eigenvalue of `ρ¹ ⊗ I − ρ`.
    pub min_first: f64,
    /// Minimum eigenvalue of `I ⊗ ρ² − ρ`.
    pub min_second: f64,
}

/// Reduction criterion across `cut`; a violation certifies distillability.
pub fn reduction_violated(
    state: &MultipartiteState,
    cut: &Bipartition,
    tol: f64,
) -> Result<ReductionResult> {
    cut.check(state.num_parties())?;
    let order: Vec<usize> = cut.first().iter().chain(cut.second()).copied().collect();
    let rho = state.permute_parties(&order)?;
    let k = cut.first().len();
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = (k..order.len()).collect();
    let r1 = rho.marginal(&first)?;
    let r2 = rho.marginal(&second)?;
    let id1 = ComplexMatrix::identity(r1.dim());
    let id2 = ComplexMatrix::identity(r2.dim());
    let eig_tol = tol.max(DEFAULT_TOL);
    let min_first = min_eigenvalue(&(&kron(r1.matrix(), &id2) - rho.matrix()), eig_tol)?;
    let min_second = min_eigenvalue(&(&kron(&id1, r2.matrix()) - rho.matrix()), eig_tol)?;
    Ok(ReductionResult {
        violated: min_first < -tol || min_second < -tol,
        min_first,
        min_second,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shell {
    #[serde(rename = "S-or-PBE")]
    SeparableOrPptBound,
    #[serde(rename = "NPT-undetermined")]
    NptUndetermined,
    #[serde(rename = "D")]
    Distillable,
    #[serde(rename = "G-DC")]
    GlobalDc,
    #[serde(rename = "LOCC-DC")]
    LoccDc,
    #[serde(rename = "LO-DC")]
    LoDc,
}

impl Shell {
    pub fn as_str(&self) -> &'static str {
        match self {
            Shell::SeparableOrPptBound => "S-or-PBE",
            Shell::NptUndetermined => "NPT-undetermined",
            Shell::Distillable => "D",
            Shell::GlobalDc => "G-DC",
            Shell::LoccDc => "LOCC-DC",
            Shell::LoDc => "LO-DC",
        }
    }
}

impl fmt::Display for Shell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub verdict: Verdict,
    pub value: f64,
    /// Operation that produced `value`.
    pub source: String,
}

impl Evidence {
    fn new(verdict: Verdict, value: f64, source: &str) -> Self {
        Self {
            verdict,
            value,
            source: source.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    pub cut: String,
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub ppt: PptResult,
    pub reduction: ReductionResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub shell: Shell,
    pub evidence: BTreeMap<String, Evidence>,
    pub cut_results: Vec<CutResult>,
    pub capacities: CapacityReport,
}

/// Registered LOCC protocols able to certify the LOCC-DC shell.
#[derive(Clone)]
pub struct ProtocolRegistry {
    protocols: Vec<Arc<dyn LoccProtocol>>,
}

impl ProtocolRegistry {
    pub fn empty() -> Self {
        Self {
            protocols: Vec::new(),
        }
    }

    pub fn register(&mut self, p: Arc<dyn LoccProtocol>) {
        self.protocols.push(p);
    }

    pub fn protocols(&self) -> &[Arc<dyn LoccProtocol>] {
        &self.protocols
    }
}

impl Default for ProtocolRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Ghz4Protocol));
        r
    }
}

impl fmt::Debug for ProtocolRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.protocols.iter().map(|p| p.name()))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    pub all_cuts: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            all_cuts: false,
        }
    }
}

fn cut_result(state: &MultipartiteState, cut: &Bipartition, tol: f64) -> Result<CutResult> {
    let names = |side: &[usize]| -> Vec<String> {
        side.iter()
            .map(|&i| state.parties()[i].label.clone())
            .collect()
    };
    Ok(CutResult {
        cut: cut.describe(state),
        first: names(cut.first()),
        second: names(cut.second()),
        ppt: is_ppt(state, cut, tol)?,
        reduction: reduction_violated(state, cut, tol)?,
    })
}

/// Per-cut PPT and reduction outcomes for all `2^(n−1) − 1` bipartitions.
pub fn all_cut_results(state: &MultipartiteState, tol: f64) -> Result<Vec<CutResult>> {
    Bipartition::all(state.num_parties())
        .par_iter()
        .map(|cut| cut_result(state, cut, tol))
        .collect()
}

/// Places the state in a dense-codeability shell, judged across the
/// senders : receivers cut. Single-receiver layouts can only reach G-DC.
pub fn classify(
    state: &MultipartiteState,
    layout: &DenseCodingLayout,
    registry: &ProtocolRegistry,
    options: ClassifyOptions,
) -> Result<ClassificationReport> {
    layout.validate(state)?;
    let tol = options.tol;
    let cut = Bipartition::from_labels(state, layout.senders())
        .map_err(|e| Error::InvalidLayout(e.to_string()))?;
    let main = cut_result(state, &cut, tol)?;
    let report = capacity_report(state, layout)?;
    let baseline = report.classical_baseline;

    let mut evidence = BTreeMap::new();
    evidence.insert(
        "ppt".to_string(),
        Evidence::new(
            if main.ppt.ppt {
                Verdict::Yes
            } else {
                Verdict::No
            },
            main.ppt.min_eigenvalue,
            "is_ppt",
        ),
    );
    evidence.insert(
        "reduction_violated".to_string(),
        Evidence::new(
            if main.reduction.violated {
                Verdict::Yes
            } else {
                Verdict::No
            },
            main.reduction.min_first.min(main.reduction.min_second),
            "reduction_violated",
        ),
    );
    let global_positive = report.raw_excess > tol;
    evidence.insert(
        "global_excess".to_string(),
        Evidence::new(
            if global_positive {
                Verdict::Yes
            } else {
                Verdict::No
            },
            report.raw_excess,
            "capacity_global",
        ),
    );

    let mut lo_positive = false;
    let mut lo_side_positive = false;
    let mut locc_verdict = Verdict::Unknown;
    if layout.is_two_receiver() {
        let lo = report.lo_capacity.expect("two-receiver report");
        lo_positive = lo > baseline + tol;
        let lo_raw = report.lo_raw.expect("two-receiver report");
        let split = report.split_entropies.expect("two-receiver report");
        lo_side_positive =
            split.receiver_one - split.side_one > tol || split.receiver_two - split.side_two > tol;
        evidence.insert(
            "lo_excess".to_string(),
            Evidence::new(
                if lo_positive {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
                lo_raw - baseline,
                "lo_capacity",
            ),
        );

        let bound = report.locc_upper_bound.expect("two-receiver report");
        let refuted = bound <= baseline + tol;
        evidence.insert(
            "locc_upper_bound".to_string(),
            Evidence::new(
                if refuted {
                    Verdict::No
                } else {
                    Verdict::Unknown
                },
                bound,
                "locc_upper_bound",
            ),
        );

        let mut certified = false;
        for p in registry.protocols() {
            if let Some(rate) = p.achieved_rate(state, layout)? {
                let ok = rate > baseline + tol;
                certified |= ok;
                evidence.insert(
                    format!("protocol:{}", p.name()),
                    Evidence::new(
                        if ok { Verdict::Yes } else { Verdict::No },
                        rate,
                        "achieved_rate",
                    ),
                );
            }
        }
        locc_verdict = if certified || lo_positive {
            Verdict::Yes
        } else if refuted {
            Verdict::No
        } else {
            Verdict::Unknown
        };
    }

    let witnessed = main.reduction.violated || global_positive || lo_side_positive;
    evidence.insert(
        "distillable".to_string(),
        Evidence::new(
            if main.ppt.ppt {
                Verdict::No
            } else if witnessed {
                Verdict::Yes
            } else {
                Verdict::Unknown
            },
            main.ppt.min_eigenvalue,
            "distillability_witness",
        ),
    );
    if layout.is_two_receiver() {
        evidence.insert(
            "locc_dc".to_string(),
            Evidence::new(
                locc_verdict,
                report.locc_upper_bound.unwrap_or(f64::NAN) - baseline,
                "locc_upper_bound",
            ),
        );
    }

    let shell = if main.ppt.ppt {
        Shell::SeparableOrPptBound
    } else if lo_positive {
        Shell::LoDc
    } else if locc_verdict == Verdict::Yes {
        Shell::LoccDc
    } else if global_positive {
        Shell::GlobalDc
    } else if witnessed {
        Shell::Distillable
    } else {
        Shell::NptUndetermined
    };

    let cut_results = if options.all_cuts {
        all_cut_results(state, tol)?
    } else {
        vec![main]
    };
    Ok(ClassificationReport {
        shell,
        evidence,
        cut_results,
        capacities: report,
    })
}
