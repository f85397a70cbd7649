//! Explicit distribution families: XNOR-coupled binary triples, the mod-m
//! uniform triple, and the exact quadratic solve that places an XNOR family
//! strictly inside a face.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::dist::JointDistribution;
use crate::error::{Error, Result};
use crate::quad::{rat, Quadratic, Rational};

/// Which two variables a 2x2 pair table describes; the remaining variable is
/// their XNOR (1 exactly when the pair agree).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TablePair {
    /// Table over (Y1, Y2); Y3 derived.
    Y12,
    /// Table over (Y1, Y3); Y2 derived.
    Y13,
    /// Table over (Y2, Y3); Y1 derived.
    Y23,
}

impl TablePair {
    /// (first table variable, second table variable, derived variable),
    /// as 1-based labels.
    pub fn roles(self) -> (usize, usize, usize) {
        match self {
            TablePair::Y12 => (1, 2, 3),
            TablePair::Y13 => (1, 3, 2),
            TablePair::Y23 => (2, 3, 1),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "12" => Ok(TablePair::Y12),
            "13" => Ok(TablePair::Y13),
            "23" => Ok(TablePair::Y23),
            other => Err(Error::InvalidArgument(format!(
                "pair must be one of 12, 13, 23; got `{other}`"
            ))),
        }
    }
}

fn xnor(u: usize, v: usize) -> usize {
    usize::from(u == v)
}

/// Lifts a 2x2 pair table (row-major cells over {0,1}^2) to the binary
/// triple in which the third variable is the XNOR of the pair.
///
/// The result has zero mass off the XNOR graph, so every variable is exactly
/// a function of the other two.
pub fn xnor_triple_from_pair(
    cells: &[Quadratic; 4],
    pair: TablePair,
) -> Result<JointDistribution> {
    let total = cells
        .iter()
        .fold(Quadratic::zero(), |acc, c| acc + c.clone());
    if total != Quadratic::one() {
        return Err(Error::InvalidArgument(format!(
            "pair-table cells must sum to 1 exactly, got {total}"
        )));
    }
    let (a, b, c) = pair.roles();
    let mut rows = Vec::with_capacity(4);
    for (idx, mass) in cells.iter().enumerate() {
        let (u, v) = (idx / 2, idx % 2);
        let mut outcome = vec![0usize; 3];
        outcome[a - 1] = u;
        outcome[b - 1] = v;
        outcome[c - 1] = xnor(u, v);
        rows.push((outcome, mass.clone()));
    }
    JointDistribution::new(vec![2, 2, 2], rows)
}

/// The three free cells of an XNOR family table; the fourth cell is
/// `1 - (p + q + r)`.
#[derive(Clone, Debug)]
pub struct XnorFamilyParams {
    pub p: Quadratic,
    pub q: Quadratic,
    pub r: Quadratic,
}

impl XnorFamilyParams {
    pub fn new(p: Quadratic, q: Quadratic, r: Quadratic) -> Result<Self> {
        let params = Self { p, q, r };
        for (name, cell) in params.named_cells() {
            if !cell.in_unit_interval() {
                return Err(Error::InvalidArgument(format!(
                    "table cell {name} = {cell} is outside [0, 1]"
                )));
            }
        }
        Ok(params)
    }

    pub fn fourth(&self) -> Quadratic {
        Quadratic::one() - self.p.clone() - self.q.clone() - self.r.clone()
    }

    pub fn cells(&self) -> [Quadratic; 4] {
        [
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
            self.fourth(),
        ]
    }

    fn named_cells(&self) -> [(&'static str, Quadratic); 4] {
        [
            ("p", self.p.clone()),
            ("q", self.q.clone()),
            ("r", self.r.clone()),
            ("1-(p+q+r)", self.fourth()),
        ]
    }
}

/// Both roots of `(p + q)(p + r) = p`, i.e. of
/// `p^2 + (q + r - 1) p + q r = 0`, in exact quadratic-extension form.
#[derive(Clone, Debug)]
pub struct InteriorRoots {
    pub plus: Quadratic,
    pub minus: Quadratic,
    pub discriminant: Rational,
}

impl InteriorRoots {
    pub fn both(&self) -> [&Quadratic; 2] {
        [&self.plus, &self.minus]
    }
}

/// Exact square root of a nonnegative rational, as an element of a
/// quadratic field: `sqrt(n/d) = (s / d) * sqrt(free)` after pulling the
/// square part `s^2` out of `n * d`.
fn exact_sqrt(value: &Rational) -> Result<Quadratic> {
    debug_assert!(!value.is_negative());
    if value.is_zero() {
        return Ok(Quadratic::zero());
    }
    let numer = value.numer().clone();
    let denom = value.denom().clone();
    let mut inner: BigInt = &numer * &denom;
    let mut scale = BigInt::one();
    let mut f = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &f * &f <= inner && f <= limit {
        let square = &f * &f;
        while (&inner % &square).is_zero() {
            inner /= &square;
            scale *= &f;
        }
        f += 1;
    }
    let root = inner.sqrt();
    if &root * &root == inner {
        scale *= &root;
        inner = BigInt::one();
    }
    let free = inner.to_u64().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "square-free part {inner} of the discriminant does not fit a machine radicand"
        ))
    })?;
    let coeff = Rational::new(scale, denom);
    Ok(Quadratic::new(Rational::zero(), coeff, free))
}

/// Solves the pair-independence condition `(p + q)(p + r) = p` for `p`,
/// given rational cells `q` and `r`. Roots come back exactly as
/// `rational +/- rational * sqrt(disc)` with `disc = (1 - q - r)^2 - 4 q r`.
pub fn solve_interior_p(q: &Rational, r: &Rational) -> Result<InteriorRoots> {
    for (name, value) in [("q", q), ("r", r)] {
        if value.is_negative() || value > &Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "{name} = {value} is outside [0, 1]"
            )));
        }
    }
    let one = Rational::one();
    let linear = &one - q - r; // -(q + r - 1)
    let disc = &linear * &linear - rat(4, 1) * q * r;
    if disc.is_negative() {
        return Err(Error::NoRealRoot(disc.to_string()));
    }
    let root = exact_sqrt(&disc)?;
    let half = Quadratic::from_rational(rat(1, 2));
    let mid = Quadratic::from_rational(linear);
    Ok(InteriorRoots {
        plus: (mid.clone() + root.clone()) * half.clone(),
        minus: (mid - root) * half,
        discriminant: disc,
    })
}

/// One exact strict-interiority condition on an XNOR family.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InteriorityCondition {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    /// Where the point lands when this condition fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_locus: Option<String>,
}

/// Checklist of the nine exact conditions for an XNOR family point to lie
/// strictly inside its three-ray face.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InteriorityReport {
    pub pair: String,
    pub all_hold: bool,
    pub conditions: Vec<InteriorityCondition>,
}

/// Evaluates the nine interiority conditions exactly in the quadratic field.
///
/// With the table over variables (a, b) and derived c, the conditions are:
/// the pair independence `(p+q)(p+r) = p` must hold, the two cross
/// independences must fail, and none of the three marginals may degenerate.
pub fn interiority_conditions(params: &XnorFamilyParams, pair: TablePair) -> InteriorityReport {
    let (a, b, c) = pair.roles();
    let ray = |x: usize, y: usize| -> String {
        let mut pairing = [x, y];
        pairing.sort_unstable();
        format!("R{}{}", pairing[0], pairing[1])
    };
    let face_bc = format!("conv({},R123p)", ray(b, c));
    let face_ac = format!("conv({},R123p)", ray(a, c));

    let p = params.p.clone();
    let q = params.q.clone();
    let r = params.r.clone();
    let pq = p.clone() + q.clone();
    let pr = p.clone() + r.clone();
    let qr = q.clone() + r.clone();
    let one = Quadratic::one();

    let mut conditions = Vec::new();
    let mut push = |name: String, holds: bool, detail: String, locus: Option<String>| {
        conditions.push(InteriorityCondition {
            name,
            holds,
            detail,
            failure_locus: locus,
        });
    };

    let lhs = pq.clone() * pr.clone();
    push(
        format!("(p+q)(p+r) = p  [Y{a} independent of Y{b}]"),
        lhs == p,
        format!("{lhs} vs {p}"),
        Some(format!("off conv({},{},R123p) entirely", ray(a, c), ray(b, c))),
    );
    let lhs = pq.clone() * qr.clone();
    push(
        format!("(p+q)(q+r) ≠ q  [Y{a} not independent of Y{c}]"),
        lhs != q,
        format!("{lhs} vs {q}"),
        Some(face_bc.clone()),
    );
    let lhs = pr.clone() * qr.clone();
    push(
        format!("(p+r)(q+r) ≠ r  [Y{b} not independent of Y{c}]"),
        lhs != r,
        format!("{lhs} vs {r}"),
        Some(face_ac.clone()),
    );
    for (sum, label, var, locus) in [
        (pq, "p+q", a, ray(b, c)),
        (qr, "q+r", c, "origin".to_string()),
        (pr, "p+r", b, ray(a, c)),
    ] {
        push(
            format!("{label} ≠ 0  [Y{var} not degenerate]"),
            !sum.is_zero(),
            format!("{label} = {sum}"),
            Some(locus.clone()),
        );
        push(
            format!("{label} ≠ 1  [Y{var} not degenerate]"),
            sum != one,
            format!("{label} = {sum}"),
            Some(locus),
        );
    }

    let all_hold = conditions.iter().all(|c| c.holds);
    let pair_name = match pair {
        TablePair::Y12 => "12",
        TablePair::Y13 => "13",
        TablePair::Y23 => "23",
    };
    InteriorityReport {
        pair: pair_name.to_string(),
        all_hold,
        conditions,
    }
}

/// The mod-m uniform triple: Y1, Y2 independent uniform on m symbols and
/// Y3 = Y1 + Y2 mod m. Its entropy vector is `log_k(m) * [1,1,1,2,2,2,2]`.
pub fn mod_m_uniform(m: usize) -> Result<JointDistribution> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let mass = Quadratic::from_rational(rat(1, (m * m) as i64));
    let cells = (0..m).flat_map(|i| {
        let mass = mass.clone();
        (0..m).map(move |j| (vec![i, j, (i + j) % m], mass.clone()))
    });
    JointDistribution::new(vec![m, m, m], cells.collect::<Vec<_>>())
}

/// The two bundled witness distributions showing the face inner bounds loose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapFace {
    /// conv(R12, R23, R123'), XNOR table over (Y1, Y3).
    ThreeRay,
    /// conv(R12, R13, R23, R123, R123'), XNOR table over (Y1, Y2).
    FiveRay,
}

/// A witness distribution together with its recorded approximate entropy
/// vector (good to about 1e-3; see [`reference_vector`] for the precise
/// values).
#[derive(Clone, Debug)]
pub struct GapExample {
    pub joint: JointDistribution,
    pub params: XnorFamilyParams,
    pub pair: TablePair,
    pub nominal_vector: [f64; 7],
}

/// Builds one of the two bundled gap witnesses.
///
/// The three-ray witness uses the `+` root of [`solve_interior_p`] at
/// q = 1/8, r = 1/24, so its table lives in Q(sqrt 97); the five-ray witness
/// is the rational table (1/3, 1/8, 1/24, 1/2).
pub fn gap_example(which: GapFace) -> GapExample {
    match which {
        GapFace::ThreeRay => {
            let q = rat(1, 8);
            let r = rat(1, 24);
            let roots = solve_interior_p(&q, &r).expect("positive discriminant");
            let params = XnorFamilyParams::new(
                roots.plus,
                Quadratic::from_rational(q),
                Quadratic::from_rational(r),
            )
            .expect("cells lie in [0, 1]");
            let joint = xnor_triple_from_pair(&params.cells(), TablePair::Y13)
                .expect("cells sum to one");
            GapExample {
                joint,
                params,
                pair: TablePair::Y13,
                nominal_vector: [
                    0.277839, 0.649943, 0.561101, 0.838863, 0.838863, 0.838863, 0.838863,
                ],
            }
        }
        GapFace::FiveRay => {
            let params = XnorFamilyParams::new(
                Quadratic::from_rational(rat(1, 3)),
                Quadratic::from_rational(rat(1, 8)),
                Quadratic::from_rational(rat(1, 24)),
            )
            .expect("cells lie in [0, 1]");
            let joint = xnor_triple_from_pair(&params.cells(), TablePair::Y12)
                .expect("cells sum to one");
            GapExample {
                joint,
                params,
                pair: TablePair::Y12,
                nominal_vector: [
                    0.994984, 0.954434, 0.650022, 1.594360, 1.594360, 1.594360, 1.594360,
                ],
            }
        }
    }
}

fn entropy_of_probs(probs: &[f64], base: f64) -> f64 {
    let ln_base = base.ln();
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln() / ln_base)
        .sum()
}

/// Recomputes a gap example's entropy vector along an independent route:
/// closed-form marginal probabilities evaluated in plain floating point,
/// bypassing the exact-arithmetic pmf machinery entirely.
pub fn reference_vector(which: GapFace, base: f64) -> [f64; 7] {
    let (m1, m2, m3, joint): ([f64; 2], [f64; 2], [f64; 2], [f64; 4]) = match which {
        GapFace::ThreeRay => {
            let s = 97f64.sqrt();
            let p = (10.0 + s) / 24.0;
            let q = 1.0 / 8.0;
            let r = 1.0 / 24.0;
            let rest = (10.0 - s) / 24.0;
            (
                [(13.0 + s) / 24.0, (11.0 - s) / 24.0],
                [1.0 / 6.0, 5.0 / 6.0],
                [(11.0 + s) / 24.0, (13.0 - s) / 24.0],
                [p, q, r, rest],
            )
        }
        GapFace::FiveRay => (
            [11.0 / 24.0, 13.0 / 24.0],
            [3.0 / 8.0, 5.0 / 8.0],
            [1.0 / 6.0, 5.0 / 6.0],
            [1.0 / 3.0, 1.0 / 8.0, 1.0 / 24.0, 1.0 / 2.0],
        ),
    };
    let hj = entropy_of_probs(&joint, base);
    [
        entropy_of_probs(&m1, base),
        entropy_of_probs(&m2, base),
        entropy_of_probs(&m3, base),
        hj,
        hj,
        hj,
        hj,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{entropy_vector, evaluate, InformationExpression};
    use crate::varset::VarSet;

    #[test]
    fn three_ray_table_produces_the_expected_rows() {
        let example = gap_example(GapFace::ThreeRay);
        let d = &example.joint;
        // Nonzero rows: (0,0,1) -> q, (0,1,0) -> p, (1,0,0) -> r, (1,1,1) -> rest.
        assert_eq!(d.support_len(), 4);
        assert_eq!(d.prob(&[0, 0, 1]), Quadratic::from_rational(rat(1, 8)));
        assert_eq!(d.prob(&[0, 1, 0]), Quadratic::new(rat(10, 24), rat(1, 24), 97));
        assert_eq!(d.prob(&[1, 0, 0]), Quadratic::from_rational(rat(1, 24)));
        assert_eq!(d.prob(&[1, 1, 1]), Quadratic::new(rat(10, 24), rat(-1, 24), 97));
    }

    #[test]
    fn pair_independence_holds_on_the_solved_table() {
        // The solved p makes Y1 and Y3 independent; the float evaluation of
        // I(Y1;Y3) lands at rounding noise.
        let example = gap_example(GapFace::ThreeRay);
        let value = evaluate(
            &InformationExpression::mutual_information(1, 3),
            &example.joint,
            2.0,
        )
        .unwrap();
        assert!(value.abs() < 1e-12, "I(Y1;Y3) = {value}");
    }

    #[test]
    fn three_ray_cells_sum_to_one_exactly() {
        let example = gap_example(GapFace::ThreeRay);
        let total = example
            .params
            .cells()
            .iter()
            .fold(Quadratic::zero(), |acc, c| acc + c.clone());
        assert_eq!(total, Quadratic::one());
        assert!(example.joint.exact_sum());
    }

    #[test]
    fn uniform_pair_table_gives_the_doubled_ray() {
        let quarter = Quadratic::from_rational(rat(1, 4));
        let cells = [
            quarter.clone(),
            quarter.clone(),
            quarter.clone(),
            quarter,
        ];
        let d = xnor_triple_from_pair(&cells, TablePair::Y12).unwrap();
        let h = entropy_vector(&d, 2.0).unwrap();
        for (a, b) in h.components().iter().zip([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn five_ray_table_marginals() {
        let example = gap_example(GapFace::FiveRay);
        let d = &example.joint;
        assert_eq!(
            d.marginal(1).unwrap(),
            vec![
                Quadratic::from_rational(rat(11, 24)),
                Quadratic::from_rational(rat(13, 24))
            ]
        );
        assert_eq!(
            d.marginal(2).unwrap(),
            vec![
                Quadratic::from_rational(rat(3, 8)),
                Quadratic::from_rational(rat(5, 8))
            ]
        );
        assert_eq!(
            d.marginal(3).unwrap(),
            vec![
                Quadratic::from_rational(rat(1, 6)),
                Quadratic::from_rational(rat(5, 6))
            ]
        );
    }

    #[test]
    fn bad_cell_sums_are_rejected() {
        let half = Quadratic::from_rational(rat(1, 2));
        let cells = [half.clone(), half.clone(), half.clone(), half];
        assert!(xnor_triple_from_pair(&cells, TablePair::Y12).is_err());
    }

    #[test]
    fn every_xnor_output_is_functionally_determined() {
        let example = gap_example(GapFace::FiveRay);
        // Zero mass off the XNOR graph: each variable is determined by the
        // other two on the support.
        for (outcome, _) in example.joint.cells() {
            assert_eq!(outcome[2], xnor(outcome[0], outcome[1]));
        }
        for label in 1..=3 {
            let expr = InformationExpression::ConditionalEntropy {
                of: VarSet::singleton(label),
                given: VarSet::full(3).minus(VarSet::singleton(label)),
            };
            assert!(evaluate(&expr, &example.joint, 2.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_solve_matches_the_known_roots() {
        let roots = solve_interior_p(&rat(1, 8), &rat(1, 24)).unwrap();
        assert_eq!(roots.plus, Quadratic::new(rat(10, 24), rat(1, 24), 97));
        assert_eq!(roots.minus, Quadratic::new(rat(10, 24), rat(-1, 24), 97));
        assert_eq!(roots.discriminant, rat(97, 144));
        assert_eq!(roots.plus.to_string(), "(10+√97)/24");
    }

    #[test]
    fn quadratic_solve_degenerate_cases() {
        let roots = solve_interior_p(&rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(roots.plus, Quadratic::one());
        assert_eq!(roots.minus, Quadratic::zero());

        let double = solve_interior_p(&rat(1, 4), &rat(1, 4)).unwrap();
        assert_eq!(double.plus, Quadratic::from_rational(rat(1, 4)));
        assert_eq!(double.minus, double.plus);

        assert!(matches!(
            solve_interior_p(&rat(2, 5), &rat(2, 5)),
            Err(Error::NoRealRoot(_))
        ));
        assert!(solve_interior_p(&rat(3, 2), &rat(1, 4)).is_err());
    }

    #[test]
    fn roots_satisfy_the_defining_identity_exactly() {
        for (q, r) in [(rat(1, 8), rat(1, 24)), (rat(1, 3), rat(1, 7)), (rat(1, 5), rat(1, 5))] {
            let roots = solve_interior_p(&q, &r).unwrap();
            for root in roots.both() {
                let p = root.clone();
                let lhs = (p.clone() + Quadratic::from_rational(q.clone()))
                    * (p.clone() + Quadratic::from_rational(r.clone()));
                assert_eq!(lhs, p, "q={q} r={r}");
            }
        }
    }

    #[test]
    fn interiority_checklist_passes_on_the_three_ray_witness() {
        let example = gap_example(GapFace::ThreeRay);
        let report = interiority_conditions(&example.params, example.pair);
        assert!(report.all_hold, "{:#?}", report.conditions);
        assert_eq!(report.conditions.len(), 9);
        // The two published cross products.
        let pr_qr = (example.params.p.clone() + example.params.r.clone())
            * (example.params.q.clone() + example.params.r.clone());
        assert_eq!(pr_qr, Quadratic::new(rat(11, 144), rat(1, 144), 97));
        let pq_qr = (example.params.p.clone() + example.params.q.clone())
            * (example.params.q.clone() + example.params.r.clone());
        assert_eq!(pq_qr, Quadratic::new(rat(13, 144), rat(1, 144), 97));
    }

    #[test]
    fn interiority_checklist_reports_failing_conditions() {
        // p = q = r = 1/4: the pair independence holds but Y1 becomes
        // independent of the derived variable.
        let quarter = Quadratic::from_rational(rat(1, 4));
        let params =
            XnorFamilyParams::new(quarter.clone(), quarter.clone(), quarter).unwrap();
        let report = interiority_conditions(&params, TablePair::Y13);
        assert!(!report.all_hold);
        let failing = report
            .conditions
            .iter()
            .find(|c| !c.holds)
            .expect("a condition fails");
        assert!(failing.name.contains("(p+q)(q+r)"));
        assert_eq!(failing.failure_locus.as_deref(), Some("conv(R23,R123p)"));

        // q + r = 0 degenerates the derived variable to the origin case.
        let params = XnorFamilyParams::new(
            Quadratic::from_rational(rat(1, 2)),
            Quadratic::zero(),
            Quadratic::zero(),
        )
        .unwrap();
        let report = interiority_conditions(&params, TablePair::Y13);
        let hit = report
            .conditions
            .iter()
            .find(|c| !c.holds && c.name.starts_with("q+r ≠ 0"))
            .expect("degenerate condition fails");
        assert_eq!(hit.failure_locus.as_deref(), Some("origin"));
    }

    #[test]
    fn mod_m_uniform_examples() {
        let d1 = mod_m_uniform(1).unwrap();
        let h1 = entropy_vector(&d1, 2.0).unwrap();
        assert!(h1.components().iter().all(|&v| v.abs() < 1e-12));

        let d2 = mod_m_uniform(2).unwrap();
        let h2 = entropy_vector(&d2, 2.0).unwrap();
        for (a, b) in h2.components().iter().zip([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }

        let d3 = mod_m_uniform(3).unwrap();
        let h3 = entropy_vector(&d3, 2.0).unwrap();
        let unit = 3f64.log2();
        for (a, b) in h3.components().iter().zip([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]) {
            assert!((a - b * unit).abs() < 1e-12);
        }

        assert!(mod_m_uniform(0).is_err());
    }

    #[test]
    fn reference_route_tracks_the_nominal_digits() {
        for which in [GapFace::ThreeRay, GapFace::FiveRay] {
            let example = gap_example(which);
            let reference = reference_vector(which, 2.0);
            for (nominal, precise) in example.nominal_vector.iter().zip(reference) {
                assert!(
                    (nominal - precise).abs() < 1e-3,
                    "{which:?}: nominal {nominal} vs reference {precise}"
                );
            }
        }
    }
}
