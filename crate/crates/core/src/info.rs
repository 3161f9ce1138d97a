//! Entropies, mutual information and Holevo-type bounds. Every quantity is
//! in bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_TOL};
use crate::states::{Bipartition, MultipartiteState};

fn check_distribution(dist: &[f64], tol: f64) -> Result<()> {
    if let Some(x) = dist.iter().find(|&&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::InvalidDistribution(format!(
            "entry {x} is negative or not finite"
        )));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {total}"
        )));
    }
    Ok(())
}

fn entropy_terms(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `H = −Σ r log₂ r`, with `0 log 0 = 0`.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    check_distribution(dist, DEFAULT_TOL)?;
    Ok(entropy_terms(dist.iter().copied()))
}

/// `S(ρ) = −Tr ρ log₂ ρ` of a Hermitian PSD matrix. Eigenvalues within the
/// tolerance of zero (relative to the trace) count as exact zeros.
pub fn von_neumann_entropy(m: &ComplexMatrix) -> Result<f64> {
    let tol = DEFAULT_TOL * m.trace().re.abs().max(1.0);
    let spectrum = hermitian_eigenvalues(m)?;
    if let Some(&min) = spectrum.first() {
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
    }
    Ok(entropy_terms(spectrum.into_iter().filter(|&x| x > tol)))
}

pub fn entropy(s: &MultipartiteState) -> Result<f64> {
    von_neumann_entropy(s.matrix())
}

/// Entropy of the reduced state on `keep`.
pub fn marginal_entropy(s: &MultipartiteState, keep: &[usize]) -> Result<f64> {
    entropy(&s.marginal(keep)?)
}

/// Joint distribution `p(i, m)`: rows are message indices, columns are
/// measurement outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    p: Vec<Vec<f64>>,
}

impl JointDistribution {
    pub fn new(p: Vec<Vec<f64>>) -> Result<Self> {
        let cols = p.first().map_or(0, Vec::len);
        if p.is_empty() || cols == 0 || p.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDistribution("ragged or empty table".into()));
        }
        let flat: Vec<f64> = p.iter().flatten().copied().collect();
        check_distribution(&flat, DEFAULT_TOL)?;
        Ok(Self { p })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.p
    }

    pub fn message_marginal(&self) -> Vec<f64> {
        self.p.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn outcome_marginal(&self) -> Vec<f64> {
        let cols = self.p[0].len();
        (0..cols)
            .map(|m| self.p.iter().map(|r| r[m]).sum())
            .collect()
    }
}

/// `I(i:m) = H({p_i}) − Σ_m q_m H({p_{i|m}})`.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let h_messages = entropy_terms(j.message_marginal());
    let conditional: f64 = j
        .outcome_marginal()
        .iter()
        .enumerate()
        .filter(|(_, &q)| q > 0.0)
        .map(|(m, &q)| q * entropy_terms(j.p.iter().map(|r| r[m] / q)))
        .sum();
    (h_messages - conditional).max(0.0)
}

/// Probability-weighted collection of states on a common party structure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ensemble {
    items: Vec<(f64, MultipartiteState)>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, MultipartiteState)>) -> Result<Self> {
        let Some((_, first)) = items.first() else {
            return Err(Error::InvalidEnsemble("empty ensemble".into()));
        };
        if items.iter().any(|(_, s)| s.parties() != first.parties()) {
            return Err(Error::InvalidEnsemble(
                "members on different party structures".into(),
            ));
        }
        let probs: Vec<f64> = items.iter().map(|(p, _)| *p).collect();
        check_distribution(&probs, DEFAULT_TOL)?;
        Ok(Self { items })
    }

    pub fn items(&self) -> &[(f64, MultipartiteState)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.items.iter().map(|(p, _)| *p).collect()
    }

    /// `ρ̄ = Σ p_i ρ_i`.
    pub fn average(&self) -> MultipartiteState {
        let first = &self.items[0].1;
        let n = first.dim();
        let m = self
            .items
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, (p, s)| {
                &acc + &s.matrix().scale_real(*p)
            });
        MultipartiteState::from_parts(first.parties().to_vec(), m)
    }

    /// Same ensemble with every member reduced to `keep`.
    pub fn marginal(&self, keep: &[usize]) -> Result<Ensemble> {
        let items = self
            .items
            .iter()
            .map(|(p, s)| Ok((*p, s.marginal(keep)?)))
            .collect::<Result<_>>()?;
        Ok(Ensemble { items })
    }

    fn average_member_entropy(&self) -> Result<f64> {
        self.items
            .iter()
            .filter(|(p, _)| *p > 0.0)
            .map(|(p, s)| Ok(p * entropy(s)?))
            .sum()
    }
}

/// `χ = S(ρ̄) − Σ p_i S(ρ_i)`.
pub fn holevo_chi(e: &Ensemble) -> Result<f64> {
    Ok((entropy(&e.average())? - e.average_member_entropy()?).max(0.0))
}

/// Local bound for two receivers holding the two sides of `cut`:
/// `S(ρ̄¹) + S(ρ̄²) − max_Z Σ_i p_i S(ρ_i^Z)`.
pub fn chi_locc(e: &Ensemble, cut: &Bipartition) -> Result<f64> {
    let parties = e.items[0].1.num_parties();
    cut.check(parties)?;
    let mut total = 0.0;
    let mut worst = f64::NEG_INFINITY;
    for side in [cut.first(), cut.second()] {
        let reduced = e.marginal(side)?;
        total += entropy(&reduced.average())?;
        worst = worst.max(reduced.average_member_entropy()?);
    }
    Ok(total - worst)
}
