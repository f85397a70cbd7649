//! The `reproduce` command: re-derives every recorded reference number and
//! verification sweep in one run and reports machine-readable pass/fail per
//! check. The process exits nonzero if any check fails.

use serde_json::{json, Value};

use entrocone::bounds::{
    inner_bound_3face, inner_bound_5face, matus_check, maxmin_hypotheses,
    same_marginal_hypotheses, zhang_yeung_ray_check,
};
use entrocone::construct::{
    gap_example, interiority_conditions, mod_m_uniform, reference_vector, solve_interior_p,
    GapFace,
};
use entrocone::entropy::entropy_vector;
use entrocone::faces::{extract_face_parameters, face_membership, FaceSpec, Ray};
use entrocone::oracle::{random_rational_joints, verify_universal, Conclusion, GridSpec};
use entrocone::quad::rat;
use entrocone::{elemental_set, in_shannon_region};

const PRINTED_TOL: f64 = 1e-3;

struct Check {
    id: &'static str,
    pass: bool,
    details: Value,
}

fn max_abs_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn five_face_entropies(base: f64, tol: f64) -> Check {
    let example = gap_example(GapFace::FiveRay);
    let h = entropy_vector(&example.joint, base).unwrap();
    let reference = reference_vector(GapFace::FiveRay, base);
    let nominal_gap = max_abs_gap(h.components(), &example.nominal_vector);
    let reference_gap = max_abs_gap(h.components(), &reference);
    Check {
        id: "five-face-entropies",
        pass: nominal_gap < PRINTED_TOL && reference_gap < tol,
        details: json!({
            "computed": h.components(),
            "nominal": example.nominal_vector,
            "reference": reference,
            "nominal_gap": nominal_gap,
            "reference_gap": reference_gap,
        }),
    }
}

fn five_face_gap(base: f64, tol: f64) -> Check {
    let example = gap_example(GapFace::FiveRay);
    let h = entropy_vector(&example.joint, base).unwrap();
    let params = extract_face_parameters(&h, tol).unwrap();
    let nominal = &example.nominal_vector;
    let reference = reference_vector(GapFace::FiveRay, base);
    // s12 = hJ - h3, s13 = hJ - h2, s23 = hJ - h1, d = 2 hJ - h1 - h2 - h3.
    let derive = |v: &[f64]| {
        [
            v[3] - v[2],
            v[3] - v[1],
            v[3] - v[0],
            2.0 * v[3] - v[0] - v[1] - v[2],
        ]
    };
    let computed = [params.s12, params.s13, params.s23, params.d];
    let nominal_gap = max_abs_gap(&computed, &derive(nominal));
    let reference_gap = max_abs_gap(&computed, &derive(&reference));
    let verdict = inner_bound_5face(&h, base, tol).unwrap();
    let [lo, hi] = verdict.parameters.as_ref().unwrap().interval;
    let pass = nominal_gap < PRINTED_TOL
        && reference_gap < tol
        && !verdict.satisfied
        && lo > 0.58
        && hi < 0.60;
    Check {
        id: "five-face-gap",
        pass,
        details: json!({
            "parameters": verdict.parameters,
            "nominal_gap": nominal_gap,
            "reference_gap": reference_gap,
            "outside_inner_bound": !verdict.satisfied,
            "feasible_interval": [lo, hi],
        }),
    }
}

fn three_face_roots() -> Check {
    let roots = solve_interior_p(&rat(1, 8), &rat(1, 24)).unwrap();
    let plus_text = roots.plus.to_string();
    let minus_text = roots.minus.to_string();
    let example = gap_example(GapFace::ThreeRay);
    let checklist = interiority_conditions(&example.params, example.pair);
    let pass = plus_text == "(10+√97)/24"
        && minus_text == "(10-√97)/24"
        && roots.discriminant == rat(97, 144)
        && checklist.all_hold;
    Check {
        id: "three-face-roots",
        pass,
        details: json!({
            "plus": plus_text,
            "minus": minus_text,
            "discriminant": roots.discriminant.to_string(),
            "interiority": checklist,
        }),
    }
}

fn three_face_gap(base: f64, tol: f64) -> Check {
    let example = gap_example(GapFace::ThreeRay);
    let h = entropy_vector(&example.joint, base).unwrap();
    let reference = reference_vector(GapFace::ThreeRay, base);
    let nominal_gap = max_abs_gap(h.components(), &example.nominal_vector);
    let reference_gap = max_abs_gap(h.components(), &reference);
    let verdict = inner_bound_3face(&h, base, tol).unwrap();
    let witness = |name: &str| {
        verdict
            .witnesses
            .iter()
            .find(|w| w.quantity == name)
            .map(|w| w.value)
            .unwrap_or(f64::NAN)
    };
    let r123p = witness("r123p");
    let nominal_r123p = example.nominal_vector[3] - example.nominal_vector[1];
    let reference_r123p = reference[3] - reference[1];
    let pass = nominal_gap < PRINTED_TOL
        && reference_gap < tol
        && (r123p - nominal_r123p).abs() < PRINTED_TOL
        && (r123p - reference_r123p).abs() < tol
        && (witness("threshold") - 1.0).abs() < 1e-12
        && !verdict.satisfied;
    Check {
        id: "three-face-gap",
        pass,
        details: json!({
            "computed": h.components(),
            "nominal_gap": nominal_gap,
            "reference_gap": reference_gap,
            "r123p": r123p,
            "outside_inner_bound": !verdict.satisfied,
        }),
    }
}

fn cone_identity(base: f64, tol: f64) -> Check {
    let mut lhs = [0i64; 7];
    for ray in [Ray::R12, Ray::R13, Ray::R23] {
        for (slot, g) in lhs.iter_mut().zip(ray.generator()) {
            *slot += g;
        }
    }
    let mut rhs = [0i64; 7];
    for ray in [Ray::R123, Ray::R123Prime] {
        for (slot, g) in rhs.iter_mut().zip(ray.generator()) {
            *slot += g;
        }
    }
    let identity = lhs == rhs;
    let mut flags_ok = true;
    for face in FaceSpec::catalog() {
        let mut h = [0.0f64; 7];
        for ray in face.rays() {
            for (slot, g) in h.iter_mut().zip(ray.generator()) {
                *slot += g as f64;
            }
        }
        let h = entrocone::EntropyVector::new(base, h.to_vec()).unwrap();
        match face_membership(&h, &face, tol) {
            Ok(Some(m)) => flags_ok &= m.unique == face.independent(),
            _ => flags_ok = false,
        }
    }
    Check {
        id: "cone-identity",
        pass: identity && flags_ok,
        details: json!({
            "generator_identity": identity,
            "uniqueness_flags": flags_ok,
            "catalog_faces": FaceSpec::catalog().len(),
        }),
    }
}

fn elemental_counts() -> Check {
    let expected = |n: usize| -> usize {
        if n == 1 {
            1
        } else {
            n + n * (n - 1) / 2 * (1 << (n - 2))
        }
    };
    let counts: Vec<usize> = (1..=6)
        .map(|n| elemental_set(n).unwrap().len())
        .collect();
    let pass = counts == (1..=6).map(expected).collect::<Vec<_>>()
        && counts[1] == 3
        && counts[2] == 9
        && counts[3] == 28;
    Check {
        id: "elemental-counts",
        pass,
        details: json!({ "counts": counts }),
    }
}

fn random_sweep(base: f64, tol: f64) -> Check {
    let joints = random_rational_joints(0x5eed_cafe, 1000, 3, 16);
    let mut violations = 0u64;
    for joint in &joints {
        let h = entropy_vector(joint, base).unwrap();
        if !in_shannon_region(&h, tol).unwrap().member {
            violations += 1;
        }
    }
    Check {
        id: "random-shannon-sweep",
        pass: violations == 0,
        details: json!({ "sampled": joints.len(), "violations": violations }),
    }
}

fn universal_runs(base: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let grids: Vec<(Vec<usize>, u32)> = [6u32, 12, 24]
        .iter()
        .flat_map(|&d| vec![(vec![2, 2, 2], d), (vec![3, 3, 3], d)])
        .collect();
    for (id, hypotheses, conclusion) in [
        (
            "universal-marginal-equality",
            same_marginal_hypotheses(),
            Conclusion::MarginalEquality,
        ),
        (
            "universal-entropy-equality",
            same_marginal_hypotheses(),
            Conclusion::EntropyEquality,
        ),
        ("universal-maxmin", maxmin_hypotheses(), Conclusion::MaxMin),
    ] {
        let mut runs = Vec::new();
        let mut pass = true;
        for (supports, d) in &grids {
            let spec = GridSpec::new(supports.clone(), *d, hypotheses.clone()).unwrap();
            let report = verify_universal(&spec, conclusion, base).unwrap();
            pass &= report.checked > 0 && report.failures.is_empty();
            runs.push(json!({
                "supports": supports,
                "denominator": d,
                "checked": report.checked,
                "failures": report.failures.len(),
                "first_failure": report.failures.first().map(|f| f.detail.clone()),
            }));
        }
        out.push(Check {
            id,
            pass,
            details: json!({ "runs": runs }),
        });
    }
    out
}

fn integer_points(base: f64, tol: f64) -> Check {
    let mut pass = true;
    let mut family = Vec::new();
    for m in 1..=16usize {
        let joint = mod_m_uniform(m).unwrap();
        let h = entropy_vector(&joint, base).unwrap();
        let face = FaceSpec::new([Ray::R123Prime]).unwrap();
        let membership = face_membership(&h, &face, tol).unwrap();
        let ok = match membership {
            Some(m_coeffs) => {
                let r123p = m_coeffs.coefficients.get(Ray::R123Prime);
                let zy = zhang_yeung_ray_check(r123p, base, tol).unwrap();
                let matus = matus_check(0.0, r123p, base, tol).unwrap();
                zy.satisfied
                    && zy.certificate.map(|c| c.m) == Some(m as u64)
                    && matus.satisfied
                    && matus.margin.abs() <= tol
            }
            None => false,
        };
        pass &= ok;
        family.push(json!({ "m": m, "ok": ok }));
    }
    let half_fails = !zhang_yeung_ray_check(0.5, base, tol).unwrap().satisfied
        && !matus_check(0.0, 0.5, base, tol).unwrap().satisfied
        && matus_check(0.5, 0.5, base, tol).unwrap().satisfied;
    pass &= half_fails;
    Check {
        id: "integer-point-family",
        pass,
        details: json!({ "family": family, "half_coefficient_cases": half_fails }),
    }
}

/// Runs every check and returns the report plus the overall pass flag.
pub fn run(base: f64, tol: f64) -> (Value, bool) {
    let mut checks = vec![
        five_face_entropies(base, tol),
        five_face_gap(base, tol),
        three_face_roots(),
        three_face_gap(base, tol),
        cone_identity(base, tol),
        elemental_counts(),
        random_sweep(base, tol),
    ];
    checks.extend(universal_runs(base));
    checks.push(integer_points(base, tol));

    let pass = checks.iter().all(|c| c.pass);
    let report = json!({
        "config": { "base": base, "tol": tol },
        "checks": checks
            .iter()
            .map(|c| json!({ "id": c.id, "pass": c.pass, "details": c.details }))
            .collect::<Vec<_>>(),
        "pass": pass,
    });
    (report, pass)
}
