//! Shannon information measures and entropy vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dist::JointDistribution;
use crate::error::{Error, Result};
use crate::varset::VarSet;

/// A point in entropy space: one coordinate per nonempty subset of `[n]`,
/// in canonical order (cardinality, then lexicographic). For n = 3 the
/// layout is `[h1, h2, h3, h12, h13, h23, h123]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyVector {
    base: f64,
    h: Vec<f64>,
}

impl EntropyVector {
    pub fn new(base: f64, h: Vec<f64>) -> Result<Self> {
        if base <= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "log base must exceed 1, got {base}"
            )));
        }
        let n = match h.len() {
            1 => 1,
            3 => 2,
            7 => 3,
            15 => 4,
            31 => 5,
            63 => 6,
            len => {
                return Err(Error::InvalidArgument(format!(
                    "entropy vector length {len} is not 2^n - 1 for n <= 6"
                )))
            }
        };
        let _ = n;
        Ok(Self { base, h })
    }

    pub fn n(&self) -> usize {
        (usize::BITS - (self.h.len() + 1).leading_zeros() - 1) as usize
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn components(&self) -> &[f64] {
        &self.h
    }

    /// Coordinate `h_set`; the empty set contributes 0 by convention.
    pub fn component(&self, set: VarSet) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let idx = set
            .canonical_index(self.n())
            .expect("subset within range of the vector");
        self.h[idx]
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct VectorJson {
            base: f64,
            h: Vec<f64>,
        }
        let doc: VectorJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector JSON: {e}")))?;
        Self::new(doc.base, doc.h)
    }
}

/// One of the two Shannon information forms every measure reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InformationExpression {
    /// H(Y_of | Y_given)
    ConditionalEntropy { of: VarSet, given: VarSet },
    /// I(Y_first ; Y_second | Y_given)
    ConditionalMutualInformation {
        first: usize,
        second: usize,
        given: VarSet,
    },
}

impl InformationExpression {
    pub fn entropy(of: VarSet) -> Self {
        Self::ConditionalEntropy {
            of,
            given: VarSet::EMPTY,
        }
    }

    pub fn mutual_information(first: usize, second: usize) -> Self {
        Self::ConditionalMutualInformation {
            first,
            second,
            given: VarSet::EMPTY,
        }
    }

    /// Index-set sanity for an expression over `n` variables.
    pub fn validate(&self, n: usize) -> Result<()> {
        let full = VarSet::full(n);
        match self {
            Self::ConditionalEntropy { of, given } => {
                if of.is_empty() {
                    return Err(Error::InvalidArgument(
                        "conditional entropy of the empty set".into(),
                    ));
                }
                if !of.is_subset_of(full) || !given.is_subset_of(full) {
                    return Err(Error::InvalidArgument(format!(
                        "expression {self} exceeds [{n}]"
                    )));
                }
                if !of.intersect(*given).is_empty() {
                    return Err(Error::InvalidArgument(format!(
                        "overlapping index sets in {self}"
                    )));
                }
            }
            Self::ConditionalMutualInformation {
                first,
                second,
                given,
            } => {
                if first == second {
                    return Err(Error::InvalidArgument(format!(
                        "mutual information needs distinct variables, got {self}"
                    )));
                }
                let pair = VarSet::from_labels(&[*first, *second]);
                if !pair.is_subset_of(full) || !given.is_subset_of(full) {
                    return Err(Error::InvalidArgument(format!(
                        "expression {self} exceeds [{n}]"
                    )));
                }
                if !given.intersect(pair).is_empty() {
                    return Err(Error::InvalidArgument(format!(
                        "conditioning set overlaps arguments in {self}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Signed coefficients of the expression over the canonical subsets.
    pub fn coefficients(&self, n: usize) -> Result<Vec<i8>> {
        self.validate(n)?;
        let mut coeffs = vec![0i8; (1 << n) - 1];
        let mut add = |set: VarSet, delta: i8| {
            if !set.is_empty() {
                let idx = set.canonical_index(n).expect("validated subset");
                coeffs[idx] += delta;
            }
        };
        match self {
            Self::ConditionalEntropy { of, given } => {
                add(of.union(*given), 1);
                add(*given, -1);
            }
            Self::ConditionalMutualInformation {
                first,
                second,
                given,
            } => {
                let i = VarSet::singleton(*first);
                let j = VarSet::singleton(*second);
                add(i.union(*given), 1);
                add(j.union(*given), 1);
                add(i.union(j).union(*given), -1);
                add(*given, -1);
            }
        }
        Ok(coeffs)
    }

    /// Evaluates the expression against a precomputed entropy vector.
    pub fn evaluate_on_vector(&self, h: &EntropyVector) -> Result<f64> {
        self.validate(h.n())?;
        Ok(match self {
            Self::ConditionalEntropy { of, given } => {
                h.component(of.union(*given)) - h.component(*given)
            }
            Self::ConditionalMutualInformation {
                first,
                second,
                given,
            } => {
                let i = VarSet::singleton(*first);
                let j = VarSet::singleton(*second);
                h.component(i.union(*given)) + h.component(j.union(*given))
                    - h.component(i.union(j).union(*given))
                    - h.component(*given)
            }
        })
    }
}

impl fmt::Display for InformationExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn group(set: VarSet) -> String {
            set.labels()
                .iter()
                .map(|l| format!("Y{l}"))
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            Self::ConditionalEntropy { of, given } => {
                if given.is_empty() {
                    write!(f, "H({})", group(*of))
                } else {
                    write!(f, "H({}|{})", group(*of), group(*given))
                }
            }
            Self::ConditionalMutualInformation {
                first,
                second,
                given,
            } => {
                if given.is_empty() {
                    write!(f, "I(Y{first};Y{second})")
                } else {
                    write!(f, "I(Y{first};Y{second}|{})", group(*given))
                }
            }
        }
    }
}

/// Entropy of one marginal in base `base`, with `0 log 0 = 0`.
///
/// Summation follows the distribution's lexicographic cell order, so the
/// result is reproducible bit for bit.
pub fn subset_entropy(joint: &JointDistribution, set: VarSet, base: f64) -> Result<f64> {
    if base <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "log base must exceed 1, got {base}"
        )));
    }
    let marginal = joint.marginalize(set)?;
    let ln_base = base.ln();
    let mut h = 0.0;
    for (_, p) in marginal.cells() {
        let p = p.to_f64();
        if p > 0.0 {
            h -= p * p.ln();
        }
    }
    Ok(h / ln_base)
}

/// Evaluates a Shannon information measure on a distribution.
pub fn evaluate(
    expr: &InformationExpression,
    joint: &JointDistribution,
    base: f64,
) -> Result<f64> {
    expr.validate(joint.n())?;
    let h = |set: VarSet| -> Result<f64> {
        if set.is_empty() {
            Ok(0.0)
        } else {
            subset_entropy(joint, set, base)
        }
    };
    Ok(match expr {
        InformationExpression::ConditionalEntropy { of, given } => {
            h(of.union(*given))? - h(*given)?
        }
        InformationExpression::ConditionalMutualInformation {
            first,
            second,
            given,
        } => {
            let i = VarSet::singleton(*first);
            let j = VarSet::singleton(*second);
            h(i.union(*given))? + h(j.union(*given))?
                - h(i.union(j).union(*given))?
                - h(*given)?
        }
    })
}

/// The full entropy vector of a distribution: all 2^n - 1 subset entropies
/// in canonical order.
pub fn entropy_vector(joint: &JointDistribution, base: f64) -> Result<EntropyVector> {
    let n = joint.n();
    let h: Vec<f64> = VarSet::canonical_all(n)
        .into_iter()
        .map(|set| subset_entropy(joint, set, base))
        .collect::<Result<_>>()?;
    EntropyVector::new(base, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{rat, Quadratic};

    fn uniform_xnor_triple() -> JointDistribution {
        // Y1, Y2 independent fair bits, Y3 = 1 iff Y1 == Y2.
        let quarter = Quadratic::from_rational(rat(1, 4));
        JointDistribution::new(
            vec![2, 2, 2],
            vec![
                (vec![0, 0, 1], quarter.clone()),
                (vec![0, 1, 0], quarter.clone()),
                (vec![1, 0, 0], quarter.clone()),
                (vec![1, 1, 1], quarter),
            ],
        )
        .unwrap()
    }

    #[test]
    fn degenerate_variable_has_zero_conditional_entropy() {
        // Y1 constant, Y2 fair bit, Y3 fair bit independent.
        let quarter = Quadratic::from_rational(rat(1, 4));
        let d = JointDistribution::new(
            vec![1, 2, 2],
            vec![
                (vec![0, 0, 0], quarter.clone()),
                (vec![0, 0, 1], quarter.clone()),
                (vec![0, 1, 0], quarter.clone()),
                (vec![0, 1, 1], quarter),
            ],
        )
        .unwrap();
        let expr = InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(1),
            given: VarSet::from_labels(&[2, 3]),
        };
        assert!(evaluate(&expr, &d, 2.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn conditional_mutual_information_of_xnor_triple_is_one_bit() {
        let d = uniform_xnor_triple();
        let expr = InformationExpression::ConditionalMutualInformation {
            first: 1,
            second: 2,
            given: VarSet::singleton(3),
        };
        assert!((evaluate(&expr, &d, 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn xnor_triple_vector_is_the_doubled_ray() {
        let d = uniform_xnor_triple();
        let h = entropy_vector(&d, 2.0).unwrap();
        let expect = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0];
        for (a, b) in h.components().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn fair_bit_with_constants_matches_first_ray() {
        let half = Quadratic::from_rational(rat(1, 2));
        let d = JointDistribution::new(
            vec![2, 1, 1],
            vec![
                (vec![0, 0, 0], half.clone()),
                (vec![1, 0, 0], half),
            ],
        )
        .unwrap();
        let h = entropy_vector(&d, 2.0).unwrap();
        let expect = [1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        for (a, b) in h.components().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn expression_validation_rejects_overlaps() {
        let bad = InformationExpression::ConditionalMutualInformation {
            first: 1,
            second: 1,
            given: VarSet::EMPTY,
        };
        assert!(bad.validate(3).is_err());
        let overlap = InformationExpression::ConditionalMutualInformation {
            first: 1,
            second: 2,
            given: VarSet::singleton(1),
        };
        assert!(overlap.validate(3).is_err());
    }

    #[test]
    fn coefficient_form_matches_direct_evaluation() {
        let d = uniform_xnor_triple();
        let h = entropy_vector(&d, 2.0).unwrap();
        let exprs = [
            InformationExpression::mutual_information(1, 2),
            InformationExpression::ConditionalMutualInformation {
                first: 1,
                second: 3,
                given: VarSet::singleton(2),
            },
            InformationExpression::ConditionalEntropy {
                of: VarSet::singleton(2),
                given: VarSet::from_labels(&[1, 3]),
            },
        ];
        for expr in exprs {
            let via_coeffs: f64 = expr
                .coefficients(3)
                .unwrap()
                .iter()
                .zip(h.components())
                .map(|(&c, &v)| c as f64 * v)
                .sum();
            let direct = expr.evaluate_on_vector(&h).unwrap();
            assert!((via_coeffs - direct).abs() < 1e-12);
            let on_dist = evaluate(&expr, &d, 2.0).unwrap();
            assert!((on_dist - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn display_forms() {
        let e1 = InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(2),
            given: VarSet::from_labels(&[1, 3]),
        };
        assert_eq!(e1.to_string(), "H(Y2|Y1,Y3)");
        let e2 = InformationExpression::mutual_information(1, 3);
        assert_eq!(e2.to_string(), "I(Y1;Y3)");
    }
}
