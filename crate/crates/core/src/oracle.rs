//! Brute-force machinery: exhaustive enumeration of grid distributions under
//! exact constraints, universal verification of bound conclusions, and face
//! scans for inner-bound gaps.
//!
//! Constraints are decided exactly on the integer grid: a vanishing
//! conditional entropy is a support condition (no two classes positive in one
//! conditioning group) and vanishing (conditional) mutual information is a
//! product identity on integer counts. Floating point only enters through
//! entropy-valued conclusions, governed by the grid's `tol`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{inner_bound_3face, inner_bound_5face, BoundVerdict};
use crate::construct::{
    interiority_conditions, solve_interior_p, xnor_triple_from_pair, TablePair, XnorFamilyParams,
};
use crate::dist::{from_grid_counts, JointDistribution};
use crate::entropy::{entropy_vector, subset_entropy, EntropyVector, InformationExpression};
use crate::error::{Error, Result};
use crate::faces::{strict_interiority, FaceSpec, Ray};
use crate::quad::Quadratic;
use crate::varset::VarSet;

/// Ceiling on the raw composition count for the dense enumeration path.
pub const DENSE_LIMIT: f64 = 1e8;
/// Ceiling on the marginal-pair product for the factored path.
pub const FACTORED_LIMIT: f64 = 1e8;

/// An enumeration request: support sizes, the probability grid `1/D`, and
/// equality-to-zero constraints every emitted pmf must satisfy.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub supports: Vec<usize>,
    pub denominator: u32,
    pub constraints: Vec<InformationExpression>,
    pub tol: f64,
}

impl GridSpec {
    pub fn new(
        supports: Vec<usize>,
        denominator: u32,
        constraints: Vec<InformationExpression>,
    ) -> Result<Self> {
        let spec = Self {
            supports,
            denominator,
            constraints,
            tol: 1e-9,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.supports.is_empty() {
            return Err(Error::InvalidArgument("no variables".into()));
        }
        if self.supports.iter().any(|&s| s == 0 || s > 4) {
            return Err(Error::InvalidArgument(
                "grid support sizes must lie in 1..=4".into(),
            ));
        }
        if self.denominator == 0 {
            return Err(Error::InvalidArgument("grid denominator must be positive".into()));
        }
        for c in &self.constraints {
            c.validate(self.supports.len())?;
        }
        Ok(())
    }

    fn n(&self) -> usize {
        self.supports.len()
    }
}

/// `C(d + m - 1, m - 1)` as a float, `f64::INFINITY` on overflow.
fn composition_count(d: u64, m: u64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = d + m - 1;
    let k = (m - 1).min(d);
    let mut result: u128 = 1;
    for i in 1..=k {
        match result.checked_mul((n - k + i) as u128) {
            Some(v) => result = v / i as u128,
            None => return f64::INFINITY,
        }
    }
    result as f64
}

/// Exact constraint forms recognised on the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
enum ExactConstraint {
    Functional { of: VarSet, given: VarSet },
    Independence { i: usize, j: usize },
    CondIndependence { i: usize, j: usize, given: VarSet },
}

fn classify(expr: &InformationExpression) -> ExactConstraint {
    match expr {
        InformationExpression::ConditionalEntropy { of, given } => ExactConstraint::Functional {
            of: *of,
            given: *given,
        },
        InformationExpression::ConditionalMutualInformation {
            first,
            second,
            given,
        } => {
            if given.is_empty() {
                ExactConstraint::Independence {
                    i: *first,
                    j: *second,
                }
            } else {
                ExactConstraint::CondIndependence {
                    i: *first,
                    j: *second,
                    given: *given,
                }
            }
        }
    }
}

/// Cell bookkeeping: outcome tuples in lexicographic order and projection
/// keys per variable subset.
struct Grid {
    supports: Vec<usize>,
    outcomes: Vec<Vec<usize>>,
}

impl Grid {
    fn new(supports: &[usize]) -> Self {
        let m: usize = supports.iter().product();
        let mut outcomes = Vec::with_capacity(m);
        let n = supports.len();
        for idx in 0..m {
            let mut tuple = vec![0usize; n];
            let mut rest = idx;
            for v in (0..n).rev() {
                tuple[v] = rest % supports[v];
                rest /= supports[v];
            }
            outcomes.push(tuple);
        }
        Self {
            supports: supports.to_vec(),
            outcomes,
        }
    }

    fn len(&self) -> usize {
        self.outcomes.len()
    }

    /// Mixed-radix key of a cell's projection onto `vars`.
    fn projection_key(&self, cell: usize, vars: VarSet) -> usize {
        let mut key = 0usize;
        for label in vars.labels() {
            key = key * self.supports[label - 1] + self.outcomes[cell][label - 1];
        }
        key
    }

    fn projection_space(&self, vars: VarSet) -> usize {
        vars.labels()
            .iter()
            .map(|&l| self.supports[l - 1])
            .product::<usize>()
            .max(1)
    }
}

/// Exact check of one constraint against integer cell counts summing to `d`.
fn constraint_holds(grid: &Grid, counts: &[u32], d: u32, constraint: &ExactConstraint) -> bool {
    match constraint {
        ExactConstraint::Functional { of, given } => {
            let mut seen: Vec<Option<usize>> = vec![None; grid.projection_space(*given)];
            for (cell, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let g = grid.projection_key(cell, *given);
                let class = grid.projection_key(cell, *of);
                match seen[g] {
                    None => seen[g] = Some(class),
                    Some(existing) if existing == class => {}
                    Some(_) => return false,
                }
            }
            true
        }
        ExactConstraint::Independence { i, j } => {
            let vi = VarSet::singleton(*i);
            let vj = VarSet::singleton(*j);
            let pair = vi.union(vj);
            let mut ci = vec![0u64; grid.projection_space(vi)];
            let mut cj = vec![0u64; grid.projection_space(vj)];
            let mut cij = vec![0u64; grid.projection_space(pair)];
            for (cell, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                ci[grid.projection_key(cell, vi)] += c as u64;
                cj[grid.projection_key(cell, vj)] += c as u64;
                cij[grid.projection_key(cell, pair)] += c as u64;
            }
            let sj = cj.len();
            for (u, &a) in ci.iter().enumerate() {
                for (v, &b) in cj.iter().enumerate() {
                    if cij[u * sj + v] * d as u64 != a * b {
                        return false;
                    }
                }
            }
            true
        }
        ExactConstraint::CondIndependence { i, j, given } => {
            let vi = VarSet::singleton(*i);
            let vj = VarSet::singleton(*j);
            let gi = vi.union(*given);
            let gj = vj.union(*given);
            let all = gi.union(gj);
            let mut cg = vec![0u64; grid.projection_space(*given)];
            let mut cgi = vec![0u64; grid.projection_space(gi)];
            let mut cgj = vec![0u64; grid.projection_space(gj)];
            let mut call = vec![0u64; grid.projection_space(all)];
            for (cell, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                cg[grid.projection_key(cell, *given)] += c as u64;
                cgi[grid.projection_key(cell, gi)] += c as u64;
                cgj[grid.projection_key(cell, gj)] += c as u64;
                call[grid.projection_key(cell, all)] += c as u64;
            }
            // p(i, j, g) p(g) = p(i, g) p(j, g) for every combination.
            for (cell, _) in counts.iter().enumerate() {
                let g = grid.projection_key(cell, *given);
                let a = call[grid.projection_key(cell, all)] * cg[g];
                let b = cgi[grid.projection_key(cell, gi)] * cgj[grid.projection_key(cell, gj)];
                if a != b {
                    return false;
                }
            }
            true
        }
    }
}

fn leaf_satisfies_all(
    grid: &Grid,
    counts: &[u32],
    d: u32,
    constraints: &[ExactConstraint],
) -> bool {
    constraints
        .iter()
        .all(|c| constraint_holds(grid, counts, d, c))
}

/// Functional-constraint bookkeeping for the dense DFS.
struct FunctionalPruner {
    /// Per constraint: (group key per cell, class key per cell, group count).
    tables: Vec<(Vec<usize>, Vec<usize>, usize)>,
    /// Per constraint: claimed class per group.
    state: Vec<Vec<Option<usize>>>,
}

impl FunctionalPruner {
    fn new(grid: &Grid, constraints: &[ExactConstraint]) -> Self {
        let mut tables = Vec::new();
        for c in constraints {
            if let ExactConstraint::Functional { of, given } = c {
                let groups: Vec<usize> = (0..grid.len())
                    .map(|cell| grid.projection_key(cell, *given))
                    .collect();
                let classes: Vec<usize> = (0..grid.len())
                    .map(|cell| grid.projection_key(cell, *of))
                    .collect();
                let group_count = grid.projection_space(*given);
                tables.push((groups, classes, group_count));
            }
        }
        let state = tables
            .iter()
            .map(|(_, _, count)| vec![None; *count])
            .collect();
        Self { tables, state }
    }

    /// Tries to claim `cell` as positive; returns the undo list on success.
    fn claim(&mut self, cell: usize) -> Option<Vec<(usize, usize)>> {
        let mut undo = Vec::new();
        for (k, (groups, classes, _)) in self.tables.iter().enumerate() {
            let g = groups[cell];
            let class = classes[cell];
            match self.state[k][g] {
                None => {
                    self.state[k][g] = Some(class);
                    undo.push((k, g));
                }
                Some(existing) if existing == class => {}
                Some(_) => {
                    for &(uk, ug) in &undo {
                        self.state[uk][ug] = None;
                    }
                    return None;
                }
            }
        }
        Some(undo)
    }

    fn release(&mut self, undo: Vec<(usize, usize)>) {
        for (k, g) in undo {
            self.state[k][g] = None;
        }
    }
}

fn dense_enumerate(
    grid: &Grid,
    d: u32,
    constraints: &[ExactConstraint],
    out: &mut Vec<Vec<u32>>,
) {
    let mut pruner = FunctionalPruner::new(grid, constraints);
    let mut counts = vec![0u32; grid.len()];
    dense_recurse(grid, d, constraints, &mut pruner, &mut counts, 0, d, out);
}

#[allow(clippy::too_many_arguments)]
fn dense_recurse(
    grid: &Grid,
    d: u32,
    constraints: &[ExactConstraint],
    pruner: &mut FunctionalPruner,
    counts: &mut Vec<u32>,
    cell: usize,
    remaining: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if cell == grid.len() - 1 {
        // Last cell is forced.
        let value = remaining;
        if value == 0 {
            counts[cell] = 0;
            if leaf_satisfies_all(grid, counts, d, constraints) {
                out.push(counts.clone());
            }
            return;
        }
        if let Some(undo) = pruner.claim(cell) {
            counts[cell] = value;
            if leaf_satisfies_all(grid, counts, d, constraints) {
                out.push(counts.clone());
            }
            counts[cell] = 0;
            pruner.release(undo);
        }
        return;
    }
    // Zero first keeps the output in ascending lexicographic order.
    counts[cell] = 0;
    dense_recurse(grid, d, constraints, pruner, counts, cell + 1, remaining, out);
    if remaining > 0 {
        if let Some(undo) = pruner.claim(cell) {
            for value in 1..=remaining {
                counts[cell] = value;
                dense_recurse(
                    grid,
                    d,
                    constraints,
                    pruner,
                    counts,
                    cell + 1,
                    remaining - value,
                    out,
                );
            }
            counts[cell] = 0;
            pruner.release(undo);
        }
    }
}

fn compositions_list(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    fn recurse(current: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if idx == current.len() - 1 {
            current[idx] = remaining;
            out.push(current.clone());
            return;
        }
        for value in 0..=remaining {
            current[idx] = value;
            recurse(current, idx + 1, remaining - value, out);
        }
    }
    if parts > 0 {
        recurse(&mut current, 0, total, &mut out);
    }
    out
}

/// The factored plan: pair (i, j) independent with the third variable a
/// function of them.
struct FactoredPlan {
    i: usize,
    j: usize,
    k: usize,
}

fn factored_plan(n: usize, constraints: &[ExactConstraint]) -> Option<FactoredPlan> {
    if n != 3 {
        return None;
    }
    for c in constraints {
        if let ExactConstraint::Independence { i, j } = c {
            let pair = VarSet::from_labels(&[*i, *j]);
            let k = VarSet::full(3).minus(pair).labels()[0];
            let wanted = ExactConstraint::Functional {
                of: VarSet::singleton(k),
                given: pair,
            };
            if constraints.contains(&wanted) {
                let (i, j) = (*i.min(j), *i.max(j));
                return Some(FactoredPlan { i, j, k });
            }
        }
    }
    None
}

fn factored_enumerate(
    grid: &Grid,
    d: u32,
    plan: &FactoredPlan,
    constraints: &[ExactConstraint],
) -> Result<Vec<Vec<u32>>> {
    let si = grid.supports[plan.i - 1];
    let sj = grid.supports[plan.j - 1];
    let sk = grid.supports[plan.k - 1];
    let a_comps = compositions_list(d, si);
    let b_comps = compositions_list(d, sj);
    let pairs = a_comps.len() as f64 * b_comps.len() as f64;
    if pairs > FACTORED_LIMIT {
        return Err(Error::GuardExceeded {
            estimate: pairs,
            limit: FACTORED_LIMIT,
        });
    }

    // Injectivity requirements induced by the other functional constraints.
    let inj_per_u = constraints.contains(&ExactConstraint::Functional {
        of: VarSet::singleton(plan.j),
        given: VarSet::from_labels(&[plan.i, plan.k]),
    });
    let inj_per_v = constraints.contains(&ExactConstraint::Functional {
        of: VarSet::singleton(plan.i),
        given: VarSet::from_labels(&[plan.j, plan.k]),
    });

    let cell_index = |tuple: &[usize; 3]| -> usize {
        let mut idx = 0usize;
        for v in 0..3 {
            idx = idx * grid.supports[v] + tuple[v];
        }
        idx
    };

    let mut out = Vec::new();
    let mut table = vec![0u32; si * sj];
    for a in &a_comps {
        'next_b: for b in &b_comps {
            for (u, &au) in a.iter().enumerate() {
                for (v, &bv) in b.iter().enumerate() {
                    let product = au as u64 * bv as u64;
                    if product % d as u64 != 0 {
                        continue 'next_b;
                    }
                    table[u * sj + v] = (product / d as u64) as u32;
                }
            }
            let positive: Vec<(usize, usize, u32)> = (0..si)
                .flat_map(|u| (0..sj).map(move |v| (u, v)))
                .filter_map(|(u, v)| {
                    let c = table[u * sj + v];
                    (c > 0).then_some((u, v, c))
                })
                .collect();
            // Assign the dependent variable over positive cells.
            let mut assignment = vec![0usize; positive.len()];
            let mut used_u = vec![0u8; si];
            let mut used_v = vec![0u8; sj];
            assign_function(
                grid,
                d,
                plan,
                constraints,
                &positive,
                &mut assignment,
                0,
                sk,
                inj_per_u,
                inj_per_v,
                &mut used_u,
                &mut used_v,
                &cell_index,
                &mut out,
            );
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign_function(
    grid: &Grid,
    d: u32,
    plan: &FactoredPlan,
    constraints: &[ExactConstraint],
    positive: &[(usize, usize, u32)],
    assignment: &mut Vec<usize>,
    depth: usize,
    sk: usize,
    inj_per_u: bool,
    inj_per_v: bool,
    used_u: &mut Vec<u8>,
    used_v: &mut Vec<u8>,
    cell_index: &dyn Fn(&[usize; 3]) -> usize,
    out: &mut Vec<Vec<u32>>,
) {
    if depth == positive.len() {
        let mut counts = vec![0u32; grid.len()];
        for (slot, &(u, v, c)) in assignment.iter().zip(positive) {
            let mut tuple = [0usize; 3];
            tuple[plan.i - 1] = u;
            tuple[plan.j - 1] = v;
            tuple[plan.k - 1] = *slot;
            counts[cell_index(&tuple)] = c;
        }
        if leaf_satisfies_all(grid, &counts, d, constraints) {
            out.push(counts);
        }
        return;
    }
    let (u, v, _) = positive[depth];
    for w in 0..sk {
        let bit = 1u8 << w;
        if inj_per_u && used_u[u] & bit != 0 {
            continue;
        }
        if inj_per_v && used_v[v] & bit != 0 {
            continue;
        }
        assignment[depth] = w;
        used_u[u] |= bit;
        used_v[v] |= bit;
        assign_function(
            grid, d, plan, constraints, positive, assignment, depth + 1, sk, inj_per_u,
            inj_per_v, used_u, used_v, cell_index, out,
        );
        used_u[u] &= !bit;
        used_v[v] &= !bit;
    }
}

/// Enumerates every pmf on the grid satisfying all constraints, in ascending
/// lexicographic order of the cell-count vector.
///
/// Dense enumeration handles any constraint set whose raw composition count
/// fits under [`DENSE_LIMIT`]; past that, enumeration is only possible when
/// an independent pair plus a functional completion lets the grid factor
/// into marginal compositions. Otherwise the request is refused with the
/// count estimate.
pub fn enumerate_constrained(spec: &GridSpec) -> Result<Vec<JointDistribution>> {
    spec.validate()?;
    let grid = Grid::new(&spec.supports);
    let constraints: Vec<ExactConstraint> = spec.constraints.iter().map(classify).collect();
    let raw = composition_count(spec.denominator as u64, grid.len() as u64);

    let counts_list = if raw <= DENSE_LIMIT {
        let mut out = Vec::new();
        dense_enumerate(&grid, spec.denominator, &constraints, &mut out);
        out
    } else if let Some(plan) = factored_plan(spec.n(), &constraints) {
        factored_enumerate(&grid, spec.denominator, &plan, &constraints)?
    } else {
        return Err(Error::GuardExceeded {
            estimate: raw,
            limit: DENSE_LIMIT,
        });
    };

    counts_list
        .into_iter()
        .map(|counts| {
            let cells: Vec<(Vec<usize>, u32)> = counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(cell, &c)| (grid.outcomes[cell].clone(), c))
                .collect();
            from_grid_counts(&spec.supports, &cells, spec.denominator)
        })
        .collect()
}

/// Conclusions that can be verified universally over an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    MarginalEquality,
    EntropyEquality,
    MaxMin,
}

impl Conclusion {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "marginal-equality" => Ok(Self::MarginalEquality),
            "entropy-equality" => Ok(Self::EntropyEquality),
            "maxmin" => Ok(Self::MaxMin),
            other => Err(Error::InvalidArgument(format!(
                "unknown conclusion `{other}` (expected marginal-equality, entropy-equality or maxmin)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::MarginalEquality => "marginal-equality",
            Self::EntropyEquality => "entropy-equality",
            Self::MaxMin => "maxmin",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalFailure {
    pub distribution: serde_json::Value,
    pub detail: String,
}

/// Result of running a conclusion over every constrained grid distribution.
#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub conclusion: Conclusion,
    pub constraints: Vec<String>,
    pub supports: Vec<usize>,
    pub denominator: u32,
    pub checked: u64,
    /// True when no distribution on the grid satisfied the constraints, so
    /// nothing was actually verified.
    pub vacuous: bool,
    pub failures: Vec<UniversalFailure>,
}

fn sorted_positive_marginal(joint: &JointDistribution, label: usize) -> Result<Vec<Quadratic>> {
    let mut out: Vec<Quadratic> = joint
        .marginal(label)?
        .into_iter()
        .filter(|p| p.signum() > 0)
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("same quadratic field"));
    Ok(out)
}

fn conclusion_failure(
    joint: &JointDistribution,
    conclusion: Conclusion,
    base: f64,
    tol: f64,
) -> Result<Option<String>> {
    match conclusion {
        Conclusion::MarginalEquality => {
            let m2 = sorted_positive_marginal(joint, 2)?;
            let m3 = sorted_positive_marginal(joint, 3)?;
            if m2 == m3 {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "marginal multisets differ: Y2 {:?} vs Y3 {:?}",
                    m2.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    m3.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                )))
            }
        }
        Conclusion::EntropyEquality => {
            let h2 = subset_entropy(joint, VarSet::singleton(2), base)?;
            let h3 = subset_entropy(joint, VarSet::singleton(3), base)?;
            if (h2 - h3).abs() <= tol {
                Ok(None)
            } else {
                Ok(Some(format!("H(Y2) = {h2} vs H(Y3) = {h3}")))
            }
        }
        Conclusion::MaxMin => {
            let m1 = sorted_positive_marginal(joint, 1)?;
            let m3 = sorted_positive_marginal(joint, 3)?;
            let max_p1 = m1.last().expect("nonempty support");
            let min_p3 = m3.first().expect("nonempty support");
            if max_p1 <= min_p3 {
                Ok(None)
            } else {
                Ok(Some(format!("max p(y1) = {max_p1} > min p(y3) = {min_p3}")))
            }
        }
    }
}

/// Enumerates the constrained grid and checks the named conclusion on every
/// distribution. The failure list stays empty exactly when the conclusion is
/// universally true on the grid.
pub fn verify_universal(
    spec: &GridSpec,
    conclusion: Conclusion,
    base: f64,
) -> Result<UniversalReport> {
    if spec.n() != 3 {
        return Err(Error::InvalidArgument(
            "universal conclusions are stated for three variables".into(),
        ));
    }
    let distributions = enumerate_constrained(spec)?;
    let mut failures = Vec::new();
    for joint in &distributions {
        if let Some(detail) = conclusion_failure(joint, conclusion, base, spec.tol)? {
            failures.push(UniversalFailure {
                distribution: joint.to_json(),
                detail,
            });
        }
    }
    Ok(UniversalReport {
        conclusion,
        constraints: spec.constraints.iter().map(|c| c.to_string()).collect(),
        supports: spec.supports.clone(),
        denominator: spec.denominator,
        checked: distributions.len() as u64,
        vacuous: distributions.is_empty(),
        failures,
    })
}

/// Named hypothesis presets for the CLI and the verification harness.
pub fn hypothesis_preset(name: &str) -> Result<Vec<InformationExpression>> {
    match name {
        "eqs14-17" | "same-marginal" => Ok(crate::bounds::same_marginal_hypotheses()),
        "eqs903-902" | "maxmin" => Ok(crate::bounds::maxmin_hypotheses()),
        other => Err(Error::InvalidArgument(format!(
            "unknown constraint preset `{other}` (expected eqs14-17 or eqs903-902)"
        ))),
    }
}

/// A point strictly inside a face yet outside that face's inner bound.
#[derive(Clone, Debug)]
pub struct GapPoint {
    pub joint: JointDistribution,
    pub vector: EntropyVector,
    pub verdict: BoundVerdict,
}

impl GapPoint {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "joint": self.joint.to_json(),
            "vector": self.vector,
            "verdict": self.verdict,
        })
    }
}

/// Scans a face for entropic points strictly inside it but outside its inner
/// bound.
///
/// For conv(R12, R23, R123') the scan walks the XNOR family over (Y1, Y3)
/// with q, r on the grid and p solved exactly; for the dependent five-ray
/// face it enumerates all binary triples in which each variable determines
/// the others. Both faces require binary supports.
pub fn scan_face_for_inner_bound_gaps(
    face: &FaceSpec,
    spec: &GridSpec,
    base: f64,
) -> Result<Vec<GapPoint>> {
    if spec.supports != vec![2, 2, 2] {
        return Err(Error::InvalidArgument(
            "gap scans are defined over binary supports (2,2,2)".into(),
        ));
    }
    let three_ray = FaceSpec::new([Ray::R12, Ray::R23, Ray::R123Prime])?;
    if *face == three_ray {
        scan_three_ray(spec, base)
    } else if face.is_dependent_five() {
        scan_five_ray(face, spec, base)
    } else {
        Err(Error::UnsupportedFace(format!(
            "no catalogued inner bound to scan for {face}"
        )))
    }
}

fn scan_three_ray(spec: &GridSpec, base: f64) -> Result<Vec<GapPoint>> {
    let d = spec.denominator as i64;
    let mut out = Vec::new();
    for qn in 1..d {
        for rn in 1..(d - qn) {
            let q = crate::quad::rat(qn, d);
            let r = crate::quad::rat(rn, d);
            let roots = match solve_interior_p(&q, &r) {
                Ok(roots) => roots,
                Err(Error::NoRealRoot(_)) => continue,
                Err(e) => return Err(e),
            };
            let mut candidates = vec![roots.plus.clone()];
            if roots.minus != roots.plus {
                candidates.push(roots.minus.clone());
            }
            for p in candidates {
                let params = match XnorFamilyParams::new(
                    p,
                    Quadratic::from_rational(q.clone()),
                    Quadratic::from_rational(r.clone()),
                ) {
                    Ok(params) => params,
                    Err(_) => continue,
                };
                let report = interiority_conditions(&params, TablePair::Y13);
                if !report.all_hold {
                    continue;
                }
                let joint = xnor_triple_from_pair(&params.cells(), TablePair::Y13)?;
                let vector = entropy_vector(&joint, base)?;
                let verdict = inner_bound_3face(&vector, base, spec.tol)?;
                if !verdict.satisfied {
                    out.push(GapPoint {
                        joint,
                        vector,
                        verdict,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn scan_five_ray(face: &FaceSpec, spec: &GridSpec, base: f64) -> Result<Vec<GapPoint>> {
    let functional: Vec<InformationExpression> = (1..=3)
        .map(|label| InformationExpression::ConditionalEntropy {
            of: VarSet::singleton(label),
            given: VarSet::full(3).minus(VarSet::singleton(label)),
        })
        .collect();
    let scan_spec = GridSpec {
        supports: spec.supports.clone(),
        denominator: spec.denominator,
        constraints: functional,
        tol: spec.tol,
    };
    let mut out = Vec::new();
    for joint in enumerate_constrained(&scan_spec)? {
        let vector = entropy_vector(&joint, base)?;
        let interiority = match strict_interiority(&vector, face, spec.tol) {
            Ok(v) => v,
            Err(Error::FaceMismatch(_)) => continue,
            Err(e) => return Err(e),
        };
        if !interiority.strict {
            continue;
        }
        let verdict = inner_bound_5face(&vector, base, spec.tol)?;
        if !verdict.satisfied {
            out.push(GapPoint {
                joint,
                vector,
                verdict,
            });
        }
    }
    Ok(out)
}

/// Deterministic pseudo-random rational pmfs on three variables with
/// supports up to `max_support`, for sweep-style membership tests.
pub fn random_rational_joints(
    seed: u64,
    count: usize,
    max_support: usize,
    max_weight: u32,
) -> Vec<JointDistribution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let supports: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=max_support)).collect();
        let cells: usize = supports.iter().product();
        let weights: Vec<u32> = (0..cells).map(|_| rng.gen_range(0..=max_weight)).collect();
        let total: u32 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        let grid = Grid::new(&supports);
        let positive: Vec<(Vec<usize>, u32)> = weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(cell, &w)| (grid.outcomes[cell].clone(), w))
            .collect();
        out.push(
            from_grid_counts(&supports, &positive, total)
                .expect("random weights form a valid pmf"),
        );
    }
    out
}
