//! Joint distributions of finitely many discrete random variables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{parse_prob, Quadratic, Rational};
use crate::varset::VarSet;

/// Slack accepted on the total mass when probabilities came in as decimals.
pub const DECIMAL_SUM_TOL: f64 = 1e-12;

/// A probability mass function over tuples of symbols.
///
/// Outcome tuples are 0-based symbol indices, one entry per variable.
/// Probabilities are exact elements of Q(sqrt(radicand)); a plain rational
/// pmf has radicand 0. Cells with zero mass are dropped at construction,
/// so iteration only ever sees the support.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    supports: Vec<usize>,
    radicand: u64,
    pmf: BTreeMap<Vec<usize>, Quadratic>,
    exact_sum: bool,
}

impl JointDistribution {
    pub fn new(
        supports: Vec<usize>,
        cells: impl IntoIterator<Item = (Vec<usize>, Quadratic)>,
    ) -> Result<Self> {
        if supports.is_empty() {
            return Err(Error::InvalidDistribution("no variables".into()));
        }
        if supports.iter().any(|&s| s == 0) {
            return Err(Error::InvalidDistribution(
                "every variable needs a nonempty declared support".into(),
            ));
        }
        let mut pmf: BTreeMap<Vec<usize>, Quadratic> = BTreeMap::new();
        let mut radicand = 0u64;
        for (outcome, p) in cells {
            if outcome.len() != supports.len() {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {outcome:?} has {} entries, expected {}",
                    outcome.len(),
                    supports.len()
                )));
            }
            for (i, (&sym, &size)) in outcome.iter().zip(&supports).enumerate() {
                if sym >= size {
                    return Err(Error::InvalidDistribution(format!(
                        "outcome {outcome:?}: symbol {sym} out of range for variable {} (support {size})",
                        i + 1
                    )));
                }
            }
            if p.signum() < 0 || !p.in_unit_interval() {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} of outcome {outcome:?} is outside [0, 1]"
                )));
            }
            if p.radicand() != 0 {
                if radicand != 0 && radicand != p.radicand() {
                    return Err(Error::InvalidDistribution(format!(
                        "mixed radicands {radicand} and {} in one pmf",
                        p.radicand()
                    )));
                }
                radicand = p.radicand();
            }
            if p.is_zero() {
                continue;
            }
            if pmf.contains_key(&outcome) {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate outcome {outcome:?}"
                )));
            }
            pmf.insert(outcome, p);
        }
        let total = pmf
            .values()
            .fold(Quadratic::zero(), |acc, p| acc + p.clone());
        let exact_sum = total == Quadratic::one();
        if !exact_sum {
            let err = (total.to_f64() - 1.0).abs();
            if err > DECIMAL_SUM_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "probabilities sum to {total}, off by {err:.3e}"
                )));
            }
        }
        Ok(Self {
            supports,
            radicand,
            pmf,
            exact_sum,
        })
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.supports.len()
    }

    pub fn supports(&self) -> &[usize] {
        &self.supports
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// Whether the mass summed to one exactly (as opposed to within 1e-12).
    pub fn exact_sum(&self) -> bool {
        self.exact_sum
    }

    /// Support cells in lexicographic outcome order.
    pub fn cells(&self) -> impl Iterator<Item = (&Vec<usize>, &Quadratic)> {
        self.pmf.iter()
    }

    pub fn support_len(&self) -> usize {
        self.pmf.len()
    }

    pub fn prob(&self, outcome: &[usize]) -> Quadratic {
        self.pmf.get(outcome).cloned().unwrap_or_else(Quadratic::zero)
    }

    /// Sums out every variable not in `keep`. The resulting distribution's
    /// variables are the kept ones in ascending label order.
    pub fn marginalize(&self, keep: VarSet) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot marginalize onto the empty variable set".into(),
            ));
        }
        if !keep.is_subset_of(VarSet::full(self.n())) {
            return Err(Error::InvalidArgument(format!(
                "keep set {keep} is not a subset of [{}]",
                self.n()
            )));
        }
        let kept: Vec<usize> = keep.labels();
        let supports: Vec<usize> = kept.iter().map(|&l| self.supports[l - 1]).collect();
        let mut cells: BTreeMap<Vec<usize>, Quadratic> = BTreeMap::new();
        for (outcome, p) in &self.pmf {
            let projected: Vec<usize> = kept.iter().map(|&l| outcome[l - 1]).collect();
            let entry = cells.entry(projected).or_insert_with(Quadratic::zero);
            *entry = entry.clone() + p.clone();
        }
        JointDistribution::new(supports, cells)
    }

    /// Per-symbol marginal probabilities of one variable (1-based label),
    /// including zero entries for unused symbols.
    pub fn marginal(&self, label: usize) -> Result<Vec<Quadratic>> {
        if label == 0 || label > self.n() {
            return Err(Error::InvalidArgument(format!(
                "variable label {label} out of range"
            )));
        }
        let mut out = vec![Quadratic::zero(); self.supports[label - 1]];
        for (outcome, p) in &self.pmf {
            let sym = outcome[label - 1];
            out[sym] = out[sym].clone() + p.clone();
        }
        Ok(out)
    }

    /// Symbols of one variable that carry positive mass.
    pub fn effective_support(&self, label: usize) -> Result<Vec<usize>> {
        Ok(self
            .marginal(label)?
            .into_iter()
            .enumerate()
            .filter(|(_, p)| p.signum() > 0)
            .map(|(sym, _)| sym)
            .collect())
    }
}

/// JSON wire form of a distribution.
#[derive(Serialize, Deserialize)]
struct DistributionJson {
    n: usize,
    supports: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radicand: Option<u64>,
    pmf: Vec<CellJson>,
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    outcome: Vec<usize>,
    p: String,
}

impl JointDistribution {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = DistributionJson {
            n: self.n(),
            supports: self.supports.clone(),
            radicand: if self.radicand == 0 {
                None
            } else {
                Some(self.radicand)
            },
            pmf: self
                .pmf
                .iter()
                .map(|(outcome, p)| CellJson {
                    outcome: outcome.clone(),
                    p: p.to_prob_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("distribution serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: DistributionJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("distribution JSON: {e}")))?;
        if doc.n != doc.supports.len() {
            return Err(Error::Parse(format!(
                "n = {} disagrees with {} support sizes",
                doc.n,
                doc.supports.len()
            )));
        }
        let cells: Vec<(Vec<usize>, Quadratic)> = doc
            .pmf
            .into_iter()
            .map(|cell| Ok((cell.outcome, parse_prob(&cell.p, doc.radicand)?)))
            .collect::<Result<_>>()?;
        JointDistribution::new(doc.supports, cells)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        Self::from_json(&value)
    }
}

/// Builds a distribution from integer grid cells `count / denominator`.
pub fn from_grid_counts(
    supports: &[usize],
    counts: &[(Vec<usize>, u32)],
    denominator: u32,
) -> Result<JointDistribution> {
    let cells = counts.iter().map(|(outcome, c)| {
        (
            outcome.clone(),
            Quadratic::from_rational(Rational::new((*c).into(), denominator.into())),
        )
    });
    JointDistribution::new(supports.to_vec(), cells)
}
