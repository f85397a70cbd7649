//! Inner and outer bounds on the entropic points of the catalogued faces.
//!
//! Every checker returns a [`BoundVerdict`] whose `satisfied` flag means
//! "inside the bound / consistent with being entropic" and whose signed
//! `margin` is nonnegative slack; `satisfied` is `margin >= -tol` for
//! inequality-type bounds.

use serde::Serialize;

use crate::dist::JointDistribution;
use crate::entropy::{entropy_vector, evaluate, subset_entropy, EntropyVector, InformationExpression};
use crate::error::{ConstraintFailure, Error, Result};
use crate::faces::{extract_face_parameters, face_membership, FaceParameters, FaceSpec, Ray};
use crate::quad::Quadratic;
use crate::varset::VarSet;

/// Snap window for deciding that `k^r` is an integer before applying the
/// ceiling, so that `r = log_k m` yields `m` and not `m + 1`.
pub const CEIL_SNAP: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub quantity: String,
    pub value: f64,
}

/// Certificate that a ray coefficient equals `log_k m` for a natural `m`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegerPointCertificate {
    pub m: u64,
    pub residual: f64,
}

/// Structured result of one bound check.
#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdict {
    pub bound: String,
    pub satisfied: bool,
    pub margin: f64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IntegerPointCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<FaceParameters>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasible_intervals: Option<Vec<[f64; 2]>>,
}

impl BoundVerdict {
    fn new(bound: &str, satisfied: bool, margin: f64) -> Self {
        Self {
            bound: bound.to_string(),
            satisfied,
            margin,
            witnesses: Vec::new(),
            notes: None,
            certificate: None,
            parameters: None,
            feasible_intervals: None,
        }
    }

    fn witness(mut self, quantity: &str, value: f64) -> Self {
        self.witnesses.push(Witness {
            quantity: quantity.to_string(),
            value,
        });
        self
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes = Some(text.into());
        self
    }
}

/// `ceil(k^r)` with the snap-to-integer guard.
pub fn guarded_ceil_power(base: f64, r: f64) -> u64 {
    let x = base.powf(r);
    let nearest = x.round();
    if (x - nearest).abs() < CEIL_SNAP && nearest >= 1.0 {
        nearest as u64
    } else {
        x.ceil().max(1.0) as u64
    }
}

fn check_positive_base(base: f64) -> Result<()> {
    if base <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "log base must exceed 1, got {base}"
        )));
    }
    Ok(())
}

/// Entropic test for a point on the ray R123': the coefficient must be the
/// logarithm of a natural number.
pub fn zhang_yeung_ray_check(r123p: f64, base: f64, tol: f64) -> Result<BoundVerdict> {
    check_positive_base(base)?;
    if r123p < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ray coefficient must be nonnegative, got {r123p}"
        )));
    }
    let m = base.powf(r123p).round().max(1.0) as u64;
    let residual = (r123p - (m as f64).log(base)).abs();
    let satisfied = residual <= tol;
    let mut verdict = BoundVerdict::new("zhang-yeung", satisfied, -residual)
        .witness("r123p", r123p)
        .witness("nearest_m", m as f64);
    if satisfied {
        verdict.certificate = Some(IntegerPointCertificate { m, residual });
    } else {
        verdict = verdict.note(format!(
            "{base}^{r123p} = {} is not within {tol:.1e} of an integer point",
            base.powf(r123p)
        ));
    }
    Ok(verdict)
}

/// Entropic characterisation of conv(R23, R123'):
/// `r23 + r123p >= log_k ceil(k^r123p)`.
pub fn matus_check(r23: f64, r123p: f64, base: f64, tol: f64) -> Result<BoundVerdict> {
    check_positive_base(base)?;
    if r23 < 0.0 || r123p < 0.0 {
        return Err(Error::InvalidArgument(
            "ray coefficients must be nonnegative".into(),
        ));
    }
    let ceil_m = guarded_ceil_power(base, r123p);
    let threshold = (ceil_m as f64).log(base);
    let margin = r23 + r123p - threshold;
    Ok(BoundVerdict::new("matus", margin >= -tol, margin)
        .witness("r23", r23)
        .witness("r123p", r123p)
        .witness("ceil_power", ceil_m as f64)
        .witness("threshold", threshold))
}

/// Entropic characterisation of conv(R1, R123'): the R1 coefficient is free,
/// while r123p must be an integer point exactly as on the bare ray.
pub fn chen_yeung_vector_check(r1: f64, r123p: f64, base: f64, tol: f64) -> Result<BoundVerdict> {
    if r1 < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ray coefficient must be nonnegative, got {r1}"
        )));
    }
    let mut verdict = zhang_yeung_ray_check(r123p, base, tol)?;
    verdict.bound = "chen-yeung".to_string();
    verdict.witnesses.insert(
        0,
        Witness {
            quantity: "r1".to_string(),
            value: r1,
        },
    );
    Ok(verdict)
}

/// Distribution-level form of the same characterisation: Y2 and Y3 must be
/// uniform on effective supports of one common size.
pub fn chen_yeung_distribution_check(joint: &JointDistribution) -> Result<BoundVerdict> {
    require_n3(joint)?;
    let uniform_size = |label: usize| -> Result<Option<usize>> {
        let positive: Vec<Quadratic> = joint
            .marginal(label)?
            .into_iter()
            .filter(|p| p.signum() > 0)
            .collect();
        let first = &positive[0];
        Ok(positive.iter().all(|p| p == first).then(|| positive.len()))
    };
    let s2 = uniform_size(2)?;
    let s3 = uniform_size(3)?;
    let satisfied = matches!((s2, s3), (Some(a), Some(b)) if a == b);
    let mut verdict = BoundVerdict::new(
        "chen-yeung",
        satisfied,
        if satisfied { 0.0 } else { -1.0 },
    );
    if let (Some(a), Some(b)) = (s2, s3) {
        verdict = verdict
            .witness("support_size_y2", a as f64)
            .witness("support_size_y3", b as f64);
        if satisfied {
            verdict.certificate = Some(IntegerPointCertificate {
                m: a as u64,
                residual: 0.0,
            });
        }
    } else {
        verdict = verdict.note("Y2 or Y3 is not uniform on its effective support");
    }
    Ok(verdict)
}

fn require_n3(joint: &JointDistribution) -> Result<()> {
    if joint.n() != 3 {
        return Err(Error::InvalidArgument(format!(
            "bound is specific to three variables, distribution has {}",
            joint.n()
        )));
    }
    Ok(())
}

fn require_face(joint: &JointDistribution, face: &FaceSpec, base: f64, tol: f64) -> Result<EntropyVector> {
    let h = entropy_vector(joint, base)?;
    if face_membership(&h, face, tol)?.is_none() {
        return Err(Error::FaceMismatch(format!(
            "entropy vector {:?} is not in {face}",
            h.components()
        )));
    }
    Ok(h)
}

/// Support-size bound on conv(R1, R2, R12, R123'): an entropic point needs
/// `H(Y_a) >= log_k |S3|` for a = 1, 2, with `S3` the effective support.
pub fn hcg_support_bound(joint: &JointDistribution, base: f64, tol: f64) -> Result<BoundVerdict> {
    require_n3(joint)?;
    let face = FaceSpec::new([Ray::R1, Ray::R2, Ray::R12, Ray::R123Prime])?;
    require_face(joint, &face, base, tol)?;
    hcg_support_margin(joint, base)
}

/// Bound arithmetic of [`hcg_support_bound`] without the face precondition,
/// for evaluating hypothetical tables that cannot sit in the face.
pub fn hcg_support_margin(joint: &JointDistribution, base: f64) -> Result<BoundVerdict> {
    require_n3(joint)?;
    check_positive_base(base)?;
    let s3 = joint.effective_support(3)?.len();
    let threshold = (s3 as f64).log(base);
    let h1 = subset_entropy(joint, VarSet::singleton(1), base)?;
    let h2 = subset_entropy(joint, VarSet::singleton(2), base)?;
    let margin = (h1 - threshold).min(h2 - threshold);
    Ok(BoundVerdict::new("hcg-support", margin >= 0.0, margin)
        .witness("H(Y1)", h1)
        .witness("H(Y2)", h2)
        .witness("support_size_y3", s3 as f64)
        .witness("threshold", threshold))
}

/// Max-min bound on conv(R1, R2, R123'): entropic points obey
/// `max p(y_a) <= min p(y_3)` over effective supports, for a = 1, 2.
pub fn hcg_maxmin_bound(joint: &JointDistribution, base: f64, tol: f64) -> Result<BoundVerdict> {
    require_n3(joint)?;
    let face = FaceSpec::new([Ray::R1, Ray::R2, Ray::R123Prime])?;
    require_face(joint, &face, base, tol)?;
    hcg_maxmin_margin(joint)
}

/// Bound arithmetic of [`hcg_maxmin_bound`] without the face precondition.
pub fn hcg_maxmin_margin(joint: &JointDistribution) -> Result<BoundVerdict> {
    require_n3(joint)?;
    let min_p3 = extreme_marginal(joint, 3, false)?;
    let mut verdict_margin = f64::INFINITY;
    let mut satisfied = true;
    let mut witnesses = Vec::new();
    for a in [1usize, 2] {
        let max_pa = extreme_marginal(joint, a, true)?;
        satisfied &= max_pa <= min_p3;
        verdict_margin = verdict_margin.min(min_p3.to_f64() - max_pa.to_f64());
        witnesses.push((format!("max_p_y{a}"), max_pa.to_f64()));
    }
    let mut verdict = BoundVerdict::new("hcg-maxmin", satisfied, verdict_margin)
        .witness("min_p_y3", min_p3.to_f64());
    for (q, v) in witnesses {
        verdict.witnesses.push(Witness { quantity: q, value: v });
    }
    Ok(verdict)
}

/// Largest (`max = true`) or smallest positive marginal probability of one
/// variable, compared exactly.
fn extreme_marginal(joint: &JointDistribution, label: usize, max: bool) -> Result<Quadratic> {
    let mut best: Option<Quadratic> = None;
    for p in joint.marginal(label)? {
        if p.signum() <= 0 {
            continue;
        }
        best = Some(match best {
            None => p,
            Some(b) => {
                let replace = if max { p > b } else { p < b };
                if replace {
                    p
                } else {
                    b
                }
            }
        });
    }
    best.ok_or_else(|| Error::InvalidDistribution(format!("variable {label} has empty support")))
}

/// Hypotheses for the face conv(R1, R23, R123'): Y1 independent of each of
/// Y2, Y3, and Y2, Y3 each a function of the remaining two.
pub fn same_marginal_hypotheses() -> Vec<InformationExpression> {
    vec![
        InformationExpression::mutual_information(1, 3),
        InformationExpression::mutual_information(1, 2),
        InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(2),
            given: VarSet::from_labels(&[1, 3]),
        },
        InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(3),
            given: VarSet::from_labels(&[1, 2]),
        },
    ]
}

/// Hypotheses for the face conv(R1, R12, R123'): Y3 independent of each of
/// Y1, Y2, and Y2, Y3 each a function of the remaining two.
pub fn maxmin_hypotheses() -> Vec<InformationExpression> {
    vec![
        InformationExpression::mutual_information(1, 3),
        InformationExpression::mutual_information(2, 3),
        InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(2),
            given: VarSet::from_labels(&[1, 3]),
        },
        InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(3),
            given: VarSet::from_labels(&[1, 2]),
        },
    ]
}

/// Verifies that each hypothesis equality holds within `tol`, or reports the
/// failing ones.
pub fn check_hypotheses(
    joint: &JointDistribution,
    hypotheses: &[InformationExpression],
    base: f64,
    tol: f64,
) -> Result<()> {
    let mut failures = Vec::new();
    for expr in hypotheses {
        let value = evaluate(expr, joint, base)?;
        if value.abs() > tol {
            failures.push(ConstraintFailure {
                expression: expr.to_string(),
                value,
            });
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::ConstraintReport(failures))
    }
}

/// Sorted positive marginal probabilities, descending, compared as floats.
fn sorted_marginal(joint: &JointDistribution, label: usize) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = joint
        .marginal(label)?
        .into_iter()
        .filter(|p| p.signum() > 0)
        .map(|p| p.to_f64())
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Outer bound on conv(R1, R23, R123'): under the hypotheses, Y2 and Y3
/// must follow the same distribution, so their marginal probability
/// multisets coincide. A violation here signals a tolerance breach, not a
/// counterexample.
pub fn new_outer_marginal_equality(joint: &JointDistribution, tol: f64) -> Result<BoundVerdict> {
    require_n3(joint)?;
    check_hypotheses(joint, &same_marginal_hypotheses(), 2.0, tol)?;
    let m2 = sorted_marginal(joint, 2)?;
    let m3 = sorted_marginal(joint, 3)?;
    if m2.len() != m3.len() {
        return Ok(BoundVerdict::new("outer-marginal-equality", false, -1.0)
            .witness("support_size_y2", m2.len() as f64)
            .witness("support_size_y3", m3.len() as f64)
            .note("effective support sizes differ"));
    }
    let max_gap = m2
        .iter()
        .zip(&m3)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(
        BoundVerdict::new("outer-marginal-equality", max_gap <= tol, -max_gap)
            .witness("support_size", m2.len() as f64)
            .witness("max_multiset_gap", max_gap),
    )
}

/// Entropy-equality corollary of the same hypotheses: `H(Y2) = H(Y3)`.
pub fn corollary_entropy_equality(
    joint: &JointDistribution,
    base: f64,
    tol: f64,
) -> Result<BoundVerdict> {
    require_n3(joint)?;
    check_hypotheses(joint, &same_marginal_hypotheses(), base, tol)?;
    let h2 = subset_entropy(joint, VarSet::singleton(2), base)?;
    let h3 = subset_entropy(joint, VarSet::singleton(3), base)?;
    let gap = (h2 - h3).abs();
    Ok(
        BoundVerdict::new("outer-entropy-equality", gap <= tol, -gap)
            .witness("H(Y2)", h2)
            .witness("H(Y3)", h3),
    )
}

/// Outer bound on conv(R1, R12, R123'): under its hypotheses,
/// `max p(y1) <= min p(y3)` over effective supports.
pub fn new_outer_maxmin(joint: &JointDistribution, tol: f64) -> Result<BoundVerdict> {
    require_n3(joint)?;
    check_hypotheses(joint, &maxmin_hypotheses(), 2.0, tol)?;
    let max_p1 = extreme_marginal(joint, 1, true)?;
    let min_p3 = extreme_marginal(joint, 3, false)?;
    let margin = min_p3.to_f64() - max_p1.to_f64();
    Ok(BoundVerdict::new("outer-maxmin", max_p1 <= min_p3, margin)
        .witness("max_p_y1", max_p1.to_f64())
        .witness("min_p_y3", min_p3.to_f64()))
}

/// Inner bound on conv(R12, R23, R123'): with the unique decomposition
/// `(r12, r23, r123p)`, the point is inside when at least one of
/// `r12 + r123p` and `r23 + r123p` reaches `log_k ceil(k^r123p)`.
pub fn inner_bound_3face(h: &EntropyVector, base: f64, tol: f64) -> Result<BoundVerdict> {
    check_positive_base(base)?;
    let face = FaceSpec::new([Ray::R12, Ray::R23, Ray::R123Prime])?;
    let membership = face_membership(h, &face, tol)?.ok_or_else(|| {
        Error::FaceMismatch(format!(
            "vector {:?} is not in {face}",
            h.components()
        ))
    })?;
    let r12 = membership.coefficients.get(Ray::R12);
    let r23 = membership.coefficients.get(Ray::R23);
    let r123p = membership.coefficients.get(Ray::R123Prime);
    let ceil_m = guarded_ceil_power(base, r123p);
    let threshold = (ceil_m as f64).log(base);
    let margin = (r12 + r123p - threshold).max(r23 + r123p - threshold);
    Ok(BoundVerdict::new("inner-3face", margin >= -tol, margin)
        .witness("r12", r12)
        .witness("r23", r23)
        .witness("r123p", r123p)
        .witness("ceil_power", ceil_m as f64)
        .witness("threshold", threshold))
}

/// Inner bound on conv(R12, R13, R23, R123, R123'): the point is inside when
/// some feasible `r123p` in `[max(0, d), min(s12, s13, s23)]` satisfies
/// `max(s12, s13, s23) >= log_k ceil(k^r123p)`. The decision splits the
/// interval at the jumps of the ceiling, i.e. at `r123p = log_k m`.
pub fn inner_bound_5face(h: &EntropyVector, base: f64, tol: f64) -> Result<BoundVerdict> {
    check_positive_base(base)?;
    let parameters = extract_face_parameters(h, tol)?;
    let [lo, hi] = parameters.interval;
    let max_s = parameters.s12.max(parameters.s13).max(parameters.s23);

    // Candidate ceiling values over the interval.
    let m_lo = guarded_ceil_power(base, lo);
    let m_hi = guarded_ceil_power(base, hi);
    let mut satisfying: Vec<[f64; 2]> = Vec::new();
    let mut best_margin = f64::NEG_INFINITY;
    for m in m_lo..=m_hi {
        // r123p values with ceil(k^r) = m: (log_k(m-1), log_k m], plus {0} for m = 1.
        let seg_lo = if m == 1 {
            0.0
        } else {
            ((m - 1) as f64).log(base)
        };
        let seg_hi = if m == 1 { 0.0 } else { (m as f64).log(base) };
        let cut_lo = seg_lo.max(lo);
        let cut_hi = seg_hi.min(hi);
        if cut_lo > cut_hi + tol {
            continue;
        }
        let threshold = (m as f64).log(base);
        best_margin = best_margin.max(max_s - threshold);
        if max_s >= threshold - tol {
            satisfying.push([cut_lo, cut_hi.max(cut_lo)]);
        }
    }
    let satisfied = !satisfying.is_empty();
    let mut verdict = BoundVerdict::new("inner-5face", satisfied, best_margin)
        .witness("max_s", max_s)
        .witness("interval_lo", lo)
        .witness("interval_hi", hi)
        .witness("ceil_at_lo", m_lo as f64);
    verdict.parameters = Some(parameters);
    verdict.feasible_intervals = Some(satisfying);
    Ok(verdict)
}

/// Names accepted by the bound registry.
pub const BOUND_NAMES: [&str; 10] = [
    "zhang-yeung",
    "matus",
    "chen-yeung",
    "hcg-support",
    "hcg-maxmin",
    "outer-marginal-equality",
    "outer-maxmin",
    "outer-entropy-equality",
    "inner-3face",
    "inner-5face",
];

/// Input accepted by [`run_named_check`]: either a bare entropy vector or a
/// full distribution (from which the vector is computed on demand).
pub enum CheckInput {
    Vector(EntropyVector),
    Distribution(JointDistribution),
}

impl CheckInput {
    fn vector(&self, base: f64) -> Result<EntropyVector> {
        match self {
            CheckInput::Vector(h) => Ok(h.clone()),
            CheckInput::Distribution(d) => entropy_vector(d, base),
        }
    }

    fn distribution(&self, bound: &str) -> Result<&JointDistribution> {
        match self {
            CheckInput::Distribution(d) => Ok(d),
            CheckInput::Vector(_) => Err(Error::NeedsDistribution {
                bound: bound.to_string(),
            }),
        }
    }
}

/// Decomposes a vector onto the rays of a face and returns one coefficient.
fn ray_coefficient(h: &EntropyVector, rays: &[Ray], want: Ray, tol: f64) -> Result<f64> {
    let face = FaceSpec::new(rays.iter().copied())?;
    let membership = face_membership(h, &face, tol)?.ok_or_else(|| {
        Error::FaceMismatch(format!("vector is not in {face}"))
    })?;
    Ok(membership.coefficients.get(want))
}

/// Dispatches a bound check by registry name.
pub fn run_named_check(
    name: &str,
    input: &CheckInput,
    base: f64,
    tol: f64,
) -> Result<BoundVerdict> {
    match name {
        "zhang-yeung" => {
            let h = input.vector(base)?;
            let r = ray_coefficient(&h, &[Ray::R123Prime], Ray::R123Prime, tol)?;
            zhang_yeung_ray_check(r, base, tol)
        }
        "matus" => {
            let h = input.vector(base)?;
            let rays = [Ray::R23, Ray::R123Prime];
            let r23 = ray_coefficient(&h, &rays, Ray::R23, tol)?;
            let r123p = ray_coefficient(&h, &rays, Ray::R123Prime, tol)?;
            matus_check(r23, r123p, base, tol)
        }
        "chen-yeung" => match input {
            CheckInput::Distribution(d) => chen_yeung_distribution_check(d),
            CheckInput::Vector(h) => {
                let rays = [Ray::R1, Ray::R123Prime];
                let r1 = ray_coefficient(h, &rays, Ray::R1, tol)?;
                let r123p = ray_coefficient(h, &rays, Ray::R123Prime, tol)?;
                chen_yeung_vector_check(r1, r123p, base, tol)
            }
        },
        "hcg-support" => hcg_support_bound(input.distribution(name)?, base, tol),
        "hcg-maxmin" => hcg_maxmin_bound(input.distribution(name)?, base, tol),
        "outer-marginal-equality" => new_outer_marginal_equality(input.distribution(name)?, tol),
        "outer-maxmin" => new_outer_maxmin(input.distribution(name)?, tol),
        "outer-entropy-equality" => {
            corollary_entropy_equality(input.distribution(name)?, base, tol)
        }
        "inner-3face" => inner_bound_3face(&input.vector(base)?, base, tol),
        "inner-5face" => inner_bound_5face(&input.vector(base)?, base, tol),
        other => Err(Error::UnknownBound(other.to_string())),
    }
}
