//! Elemental Shannon inequalities and membership in the Shannon cone.

use serde::Serialize;

use crate::entropy::{EntropyVector, InformationExpression};
use crate::error::{Error, Result};
use crate::varset::VarSet;

/// One elemental inequality `expression >= 0` in coefficient form over the
/// canonical subset coordinates. Coefficients are always in {-1, 0, +1}.
#[derive(Clone, Debug)]
pub struct ElementalInequality {
    pub expression: InformationExpression,
    pub coefficients: Vec<i8>,
}

impl ElementalInequality {
    fn new(expression: InformationExpression, n: usize) -> Result<Self> {
        let coefficients = expression.coefficients(n)?;
        Ok(Self {
            expression,
            coefficients,
        })
    }

    /// Signed value of the inequality's left-hand side at `h`.
    pub fn evaluate(&self, h: &EntropyVector) -> f64 {
        self.coefficients
            .iter()
            .zip(h.components())
            .map(|(&c, &v)| c as f64 * v)
            .sum()
    }

    /// Exact integer value on an integer point (ray generators).
    pub fn evaluate_integer(&self, point: &[i64]) -> i64 {
        self.coefficients
            .iter()
            .zip(point)
            .map(|(&c, &v)| c as i64 * v)
            .sum()
    }
}

/// The minimal generating set of Shannon-type inequalities for `n` variables:
/// `H(Y_i | Y_rest) >= 0` for each i, and `I(Y_i; Y_j | Y_B) >= 0` for each
/// pair i < j and each B disjoint from {i, j}. Sizes: n + C(n,2) 2^(n-2)
/// for n >= 2, and the single `H(Y_1) >= 0` for n = 1.
pub fn elemental_set(n: usize) -> Result<Vec<ElementalInequality>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "need at least one variable".into(),
        ));
    }
    if n > 16 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is too large for subset enumeration"
        )));
    }
    let full = VarSet::full(n);
    let mut out = Vec::new();
    for i in 1..=n {
        let of = VarSet::singleton(i);
        out.push(ElementalInequality::new(
            InformationExpression::ConditionalEntropy {
                of,
                given: full.minus(of),
            },
            n,
        )?);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let pair = VarSet::from_labels(&[i, j]);
            for given in VarSet::subsets_of(full.minus(pair)) {
                out.push(ElementalInequality::new(
                    InformationExpression::ConditionalMutualInformation {
                        first: i,
                        second: j,
                        given,
                    },
                    n,
                )?);
            }
        }
    }
    Ok(out)
}

/// A violated elemental inequality together with its (negative) value.
#[derive(Clone, Debug, Serialize)]
pub struct ElementalViolation {
    pub inequality: String,
    pub value: f64,
}

/// Outcome of testing a point against all elemental inequalities.
#[derive(Clone, Debug, Serialize)]
pub struct ShannonVerdict {
    pub member: bool,
    pub violated: Vec<ElementalViolation>,
}

/// Tests `h` against the Shannon cone: member iff every elemental
/// inequality evaluates to at least `-tol`.
pub fn in_shannon_region(h: &EntropyVector, tol: f64) -> Result<ShannonVerdict> {
    let violated: Vec<ElementalViolation> = elemental_set(h.n())?
        .into_iter()
        .filter_map(|ineq| {
            let value = ineq.evaluate(h);
            (value < -tol).then(|| ElementalViolation {
                inequality: ineq.expression.to_string(),
                value,
            })
        })
        .collect();
    Ok(ShannonVerdict {
        member: violated.is_empty(),
        violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec3(h: [f64; 7]) -> EntropyVector {
        EntropyVector::new(2.0, h.to_vec()).unwrap()
    }

    #[test]
    fn counts_match_the_closed_form() {
        let expected = |n: usize| -> usize {
            if n == 1 {
                1
            } else {
                n + n * (n - 1) / 2 * (1 << (n - 2))
            }
        };
        for n in 1..=6 {
            assert_eq!(elemental_set(n).unwrap().len(), expected(n), "n = {n}");
        }
        assert_eq!(elemental_set(2).unwrap().len(), 3);
        assert_eq!(elemental_set(3).unwrap().len(), 9);
        assert_eq!(elemental_set(4).unwrap().len(), 28);
    }

    #[test]
    fn zero_variables_is_an_error() {
        assert!(elemental_set(0).is_err());
    }

    #[test]
    fn no_duplicate_inequalities() {
        for n in 1..=5 {
            let set = elemental_set(n).unwrap();
            let mut coeffs: Vec<Vec<i8>> =
                set.iter().map(|e| e.coefficients.clone()).collect();
            coeffs.sort();
            coeffs.dedup();
            assert_eq!(coeffs.len(), set.len());
        }
    }

    #[test]
    fn origin_and_doubled_ray_are_members() {
        assert!(in_shannon_region(&vec3([0.0; 7]), 1e-9).unwrap().member);
        assert!(
            in_shannon_region(&vec3([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]), 1e-9)
                .unwrap()
                .member
        );
    }

    #[test]
    fn detects_a_conditional_mutual_information_violation() {
        let verdict =
            in_shannon_region(&vec3([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0]), 1e-9).unwrap();
        assert!(!verdict.member);
        let hit = verdict
            .violated
            .iter()
            .find(|v| v.inequality == "I(Y1;Y2|Y3)")
            .expect("I(Y1;Y2|Y3) should be violated");
        assert!((hit.value - (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn four_variable_membership() {
        use crate::dist::JointDistribution;
        use crate::entropy::entropy_vector;
        use crate::quad::{rat, Quadratic};

        // Two independent fair bits, their parity, and a constant.
        let quarter = Quadratic::from_rational(rat(1, 4));
        let cells: Vec<(Vec<usize>, Quadratic)> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (vec![a, b, (a + b) % 2, 0], ())))
            .map(|(outcome, _)| (outcome, quarter.clone()))
            .collect();
        let joint = JointDistribution::new(vec![2, 2, 2, 1], cells).unwrap();
        let h = entropy_vector(&joint, 2.0).unwrap();
        assert_eq!(h.components().len(), 15);
        assert!(in_shannon_region(&h, 1e-9).unwrap().member);

        // Scaling one coordinate up breaks a conditional entropy.
        let mut broken = h.components().to_vec();
        broken[0] += 5.0;
        let broken = EntropyVector::new(2.0, broken).unwrap();
        assert!(!in_shannon_region(&broken, 1e-9).unwrap().member);
    }
}
