//! Property tests for the structural invariants: monotonicity, cone
//! membership of entropic points, base changes, exact round trips, and
//! decomposition-invariant face quantities.

use proptest::prelude::*;

use entrocone::bounds::inner_bound_5face;
use entrocone::dist::from_grid_counts;
use entrocone::entropy::{entropy_vector, EntropyVector};
use entrocone::faces::{extract_face_parameters, face_membership, FaceSpec, Ray};
use entrocone::in_shannon_region;
use entrocone::quad::{parse_prob, rat, Quadratic};
use entrocone::JointDistribution;
use entrocone::VarSet;

fn decode(mut idx: usize, supports: &[usize]) -> Vec<usize> {
    let mut outcome = vec![0usize; supports.len()];
    for v in (0..supports.len()).rev() {
        outcome[v] = idx % supports[v];
        idx /= supports[v];
    }
    outcome
}

fn arb_joint() -> impl Strategy<Value = JointDistribution> {
    prop::collection::vec(1usize..=3, 3)
        .prop_flat_map(|supports| {
            let cells: usize = supports.iter().product();
            (
                Just(supports),
                prop::collection::vec(0u32..=12, cells),
            )
        })
        .prop_filter_map("pmf needs mass", |(supports, weights)| {
            let total: u32 = weights.iter().sum();
            if total == 0 {
                return None;
            }
            let positive: Vec<(Vec<usize>, u32)> = weights
                .iter()
                .enumerate()
                .filter(|(_, &w)| w > 0)
                .map(|(idx, &w)| (decode(idx, &supports), w))
                .collect();
            Some(from_grid_counts(&supports, &positive, total).expect("valid pmf"))
        })
}

proptest! {
    #[test]
    fn entropies_are_monotone_under_set_inclusion(joint in arb_joint()) {
        let h = entropy_vector(&joint, 2.0).unwrap();
        let sets = VarSet::canonical_all(joint.n());
        for &small in &sets {
            for &large in &sets {
                if small.is_subset_of(large) {
                    prop_assert!(
                        h.component(small) <= h.component(large) + 1e-12,
                        "h_{small} > h_{large}"
                    );
                }
            }
        }
    }

    #[test]
    fn entropic_points_satisfy_all_elemental_inequalities(joint in arb_joint()) {
        let h = entropy_vector(&joint, 2.0).unwrap();
        let verdict = in_shannon_region(&h, 1e-9).unwrap();
        prop_assert!(verdict.member, "violations: {:?}", verdict.violated);
    }

    #[test]
    fn base_change_rescales_and_preserves_order(joint in arb_joint()) {
        let h2 = entropy_vector(&joint, 2.0).unwrap();
        let h3 = entropy_vector(&joint, 3.0).unwrap();
        let scale = 2f64.ln() / 3f64.ln();
        for (a, b) in h2.components().iter().zip(h3.components()) {
            prop_assert!((a * scale - b).abs() < 1e-9);
        }
        // Pairwise order agrees wherever the comparison is not a tie.
        let c2 = h2.components();
        let c3 = h3.components();
        for i in 0..c2.len() {
            for j in 0..c2.len() {
                if (c2[i] - c2[j]).abs() > 1e-9 {
                    prop_assert_eq!(c2[i] > c2[j], c3[i] > c3[j]);
                }
            }
        }
    }

    #[test]
    fn marginalization_commutes(
        joint in arb_joint(),
        keep_mask in 1u32..8,
        inner_mask in 1u32..8,
    ) {
        let keep1 = VarSet::from_labels(
            &(1..=3).filter(|&l| (keep_mask >> (l - 1)) & 1 == 1).collect::<Vec<_>>(),
        );
        let outer = joint.marginalize(keep1).unwrap();
        let kept = keep1.labels();
        let inner_rel: Vec<usize> = (1..=kept.len())
            .filter(|&l| (inner_mask >> (l - 1)) & 1 == 1)
            .collect();
        prop_assume!(!inner_rel.is_empty());
        let keep2_rel = VarSet::from_labels(&inner_rel);
        let direct_labels: Vec<usize> = inner_rel.iter().map(|&i| kept[i - 1]).collect();
        let via = outer.marginalize(keep2_rel).unwrap();
        let direct = joint.marginalize(VarSet::from_labels(&direct_labels)).unwrap();
        prop_assert_eq!(via, direct);
    }

    #[test]
    fn distribution_json_round_trip_is_exact(joint in arb_joint()) {
        let back = JointDistribution::from_json(&joint.to_json()).unwrap();
        prop_assert_eq!(back, joint);
    }

    #[test]
    fn quadratic_prob_strings_round_trip(
        a in -20i64..=20, b in 1i64..=24, c in -20i64..=20, d in 1i64..=24,
    ) {
        let value = Quadratic::new(rat(a, b), rat(c, d), 97);
        let text = value.to_prob_string();
        prop_assert_eq!(parse_prob(&text, Some(97)).unwrap(), value);
    }

    #[test]
    fn five_face_parameters_are_decomposition_invariant(
        r12 in 0u32..=8, r13 in 0u32..=8, r23 in 0u32..=8, r123 in 0u32..=8, r123p in 0u32..=8,
    ) {
        let coeffs = [
            (Ray::R12, r12), (Ray::R13, r13), (Ray::R23, r23),
            (Ray::R123, r123), (Ray::R123Prime, r123p),
        ];
        let mut h = [0.0f64; 7];
        for (ray, c) in coeffs {
            for (slot, g) in h.iter_mut().zip(ray.generator()) {
                *slot += c as f64 / 8.0 * g as f64;
            }
        }
        let h = EntropyVector::new(2.0, h.to_vec()).unwrap();
        let params = extract_face_parameters(&h, 1e-9).unwrap();
        prop_assert!((params.s12 - (r12 + r123p) as f64 / 8.0).abs() < 1e-9);
        prop_assert!((params.s13 - (r13 + r123p) as f64 / 8.0).abs() < 1e-9);
        prop_assert!((params.s23 - (r23 + r123p) as f64 / 8.0).abs() < 1e-9);
        prop_assert!((params.d - (r123p as f64 - r123 as f64) / 8.0).abs() < 1e-9);

        // Membership recombines to the same point, non-uniquely.
        let face = FaceSpec::new([Ray::R12, Ray::R13, Ray::R23, Ray::R123, Ray::R123Prime]).unwrap();
        let membership = face_membership(&h, &face, 1e-9).unwrap().expect("in the face");
        prop_assert!(!membership.unique);
        let back = membership.coefficients.recombine(2.0).unwrap();
        for (a, b) in back.components().iter().zip(h.components()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        // Any feasible decomposition keeps the sums fixed.
        let s12_again = membership.coefficients.get(Ray::R12)
            + membership.coefficients.get(Ray::R123Prime);
        prop_assert!((s12_again - params.s12).abs() < 1e-9);
    }

    #[test]
    fn five_face_inner_bound_is_sound_on_integer_points(
        r12 in 0u32..=8, r13 in 0u32..=8, r23 in 0u32..=8, r123 in 0u32..=8, m in 1u32..=4,
    ) {
        // r123p = log2(m) makes the ceiling threshold log2(m) itself, so the
        // disjunction holds and the point must be inside the inner bound.
        let t = (m as f64).log2();
        let mut h = [0.0f64; 7];
        for (ray, c) in [
            (Ray::R12, r12 as f64 / 4.0),
            (Ray::R13, r13 as f64 / 4.0),
            (Ray::R23, r23 as f64 / 4.0),
            (Ray::R123, r123 as f64 / 4.0),
            (Ray::R123Prime, t),
        ] {
            for (slot, g) in h.iter_mut().zip(ray.generator()) {
                *slot += c * g as f64;
            }
        }
        let h = EntropyVector::new(2.0, h.to_vec()).unwrap();
        let verdict = inner_bound_5face(&h, 2.0, 1e-9).unwrap();
        prop_assert!(verdict.satisfied, "witnesses: {:?}", verdict.witnesses);
    }

    #[test]
    fn membership_coefficients_recombine_on_independent_faces(
        r1 in 0u32..=8, r23 in 0u32..=8, r123p in 0u32..=8,
    ) {
        let mut h = [0.0f64; 7];
        for (ray, c) in [(Ray::R1, r1), (Ray::R23, r23), (Ray::R123Prime, r123p)] {
            for (slot, g) in h.iter_mut().zip(ray.generator()) {
                *slot += c as f64 / 8.0 * g as f64;
            }
        }
        let h = EntropyVector::new(2.0, h.to_vec()).unwrap();
        let face = FaceSpec::new([Ray::R1, Ray::R23, Ray::R123Prime]).unwrap();
        let membership = face_membership(&h, &face, 1e-9).unwrap().expect("in the face");
        prop_assert!(membership.unique);
        prop_assert!((membership.coefficients.get(Ray::R1) - r1 as f64 / 8.0).abs() < 1e-9);
        prop_assert!((membership.coefficients.get(Ray::R23) - r23 as f64 / 8.0).abs() < 1e-9);
        prop_assert!(
            (membership.coefficients.get(Ray::R123Prime) - r123p as f64 / 8.0).abs() < 1e-9
        );
    }
}
