//! Extreme rays and faces of the three-variable Shannon cone.
//!
//! The cone has eight extreme rays; the single linear relation among their
//! generators is `R12 + R13 + R23 = R123 + R123'`. Every catalogued face is
//! the convex hull of a subset of rays, and membership is decided by exact
//! rational elimination against the integer generators — no LP solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::elemental::elemental_set;
use crate::entropy::EntropyVector;
use crate::error::{Error, Result};
use crate::quad::Rational;

/// Named extreme ray of the three-variable Shannon cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ray {
    R1,
    R2,
    R3,
    R12,
    R13,
    R23,
    R123,
    R123Prime,
}

impl Ray {
    pub const ALL: [Ray; 8] = [
        Ray::R1,
        Ray::R2,
        Ray::R3,
        Ray::R12,
        Ray::R13,
        Ray::R23,
        Ray::R123,
        Ray::R123Prime,
    ];

    /// Integer generator in canonical coordinate order.
    pub fn generator(self) -> [i64; 7] {
        match self {
            Ray::R1 => [1, 0, 0, 1, 1, 0, 1],
            Ray::R2 => [0, 1, 0, 1, 0, 1, 1],
            Ray::R3 => [0, 0, 1, 0, 1, 1, 1],
            Ray::R12 => [1, 1, 0, 1, 1, 1, 1],
            Ray::R13 => [1, 0, 1, 1, 1, 1, 1],
            Ray::R23 => [0, 1, 1, 1, 1, 1, 1],
            Ray::R123 => [1, 1, 1, 1, 1, 1, 1],
            Ray::R123Prime => [1, 1, 1, 2, 2, 2, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ray::R1 => "R1",
            Ray::R2 => "R2",
            Ray::R3 => "R3",
            Ray::R12 => "R12",
            Ray::R13 => "R13",
            Ray::R23 => "R23",
            Ray::R123 => "R123",
            Ray::R123Prime => "R123p",
        }
    }

    pub fn parse(text: &str) -> Result<Ray> {
        match text.trim() {
            "R1" => Ok(Ray::R1),
            "R2" => Ok(Ray::R2),
            "R3" => Ok(Ray::R3),
            "R12" => Ok(Ray::R12),
            "R13" => Ok(Ray::R13),
            "R23" => Ok(Ray::R23),
            "R123" => Ok(Ray::R123),
            "R123p" | "R123'" => Ok(Ray::R123Prime),
            other => Err(Error::UnknownRay(other.to_string())),
        }
    }

    /// Image of the ray under a permutation of the variable labels
    /// (`perm[i]` is the image of label `i + 1`).
    fn permuted(self, perm: &[usize; 3]) -> Ray {
        let map_pair = |a: usize, b: usize| -> Ray {
            let mut pair = [perm[a - 1], perm[b - 1]];
            pair.sort_unstable();
            match pair {
                [1, 2] => Ray::R12,
                [1, 3] => Ray::R13,
                [2, 3] => Ray::R23,
                _ => unreachable!(),
            }
        };
        match self {
            Ray::R1 => Self::single(perm[0]),
            Ray::R2 => Self::single(perm[1]),
            Ray::R3 => Self::single(perm[2]),
            Ray::R12 => map_pair(1, 2),
            Ray::R13 => map_pair(1, 3),
            Ray::R23 => map_pair(2, 3),
            Ray::R123 => Ray::R123,
            Ray::R123Prime => Ray::R123Prime,
        }
    }

    fn single(label: usize) -> Ray {
        match label {
            1 => Ray::R1,
            2 => Ray::R2,
            3 => Ray::R3,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Ray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// The scaled generator of a ray as an entropy vector.
pub fn ray_vector(ray: Ray, coefficient: f64, base: f64) -> Result<EntropyVector> {
    if coefficient < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ray coefficient must be nonnegative, got {coefficient}"
        )));
    }
    let h = ray
        .generator()
        .iter()
        .map(|&g| g as f64 * coefficient)
        .collect();
    EntropyVector::new(base, h)
}

/// Parses a comma-separated ray list such as `R12,R23,R123p`.
pub fn parse_ray_list(text: &str) -> Result<Vec<Ray>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Ray::parse)
        .collect()
}

const ALL_PERMUTATIONS: [[usize; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// The face representatives containing non-entropic points; every other such
/// face is a variable permutation of one of these.
fn catalog() -> Vec<BTreeSet<Ray>> {
    use Ray::*;
    let entries: &[&[Ray]] = &[
        &[R123Prime],
        &[R1, R123Prime],
        &[R12, R123Prime],
        &[R1, R2, R123Prime],
        &[R12, R13, R123Prime],
        &[R1, R12, R123Prime],
        &[R1, R23, R123Prime],
        &[R1, R2, R3, R123Prime],
        &[R1, R2, R12, R123Prime],
        &[R1, R2, R13, R123Prime],
        &[R1, R12, R13, R123Prime],
        &[R1, R12, R23, R123Prime],
        &[R12, R13, R23, R123, R123Prime],
        &[R1, R2, R3, R12, R123Prime],
        &[R1, R2, R12, R13, R123Prime],
        &[R1, R2, R13, R23, R123Prime],
        &[R1, R12, R13, R23, R123, R123Prime],
        &[R1, R2, R3, R12, R13, R123Prime],
        &[R1, R2, R12, R13, R23, R123, R123Prime],
    ];
    entries
        .iter()
        .map(|rays| rays.iter().copied().collect())
        .collect()
}

/// A face given by its generating extreme rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    rays: BTreeSet<Ray>,
}

/// The dependent quintuple: the only source of a linear relation.
const DEPENDENT_FIVE: [Ray; 5] = [Ray::R12, Ray::R13, Ray::R23, Ray::R123, Ray::R123Prime];

impl FaceSpec {
    pub fn new(rays: impl IntoIterator<Item = Ray>) -> Result<Self> {
        let rays: BTreeSet<Ray> = rays.into_iter().collect();
        if rays.is_empty() {
            return Err(Error::InvalidArgument("a face needs at least one ray".into()));
        }
        Ok(Self { rays })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_ray_list(text)?)
    }

    pub fn rays(&self) -> impl Iterator<Item = Ray> + '_ {
        self.rays.iter().copied()
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn contains_ray(&self, ray: Ray) -> bool {
        self.rays.contains(&ray)
    }

    /// Whether the generator set is linearly independent. The only relation
    /// among the eight generators ties the dependent quintuple together.
    pub fn independent(&self) -> bool {
        !DEPENDENT_FIVE.iter().all(|r| self.rays.contains(r))
    }

    /// Dimension of the spanned cone (rank of the generator matrix).
    pub fn dimension(&self) -> usize {
        if self.independent() {
            self.rays.len()
        } else {
            self.rays.len() - 1
        }
    }

    /// Whether this ray set appears in the catalogue of faces containing
    /// non-entropic points, up to a permutation of the variable labels.
    pub fn is_catalog(&self) -> bool {
        self.catalog_permutation().is_some()
    }

    /// A permutation carrying this face onto a catalogue representative.
    pub fn catalog_permutation(&self) -> Option<[usize; 3]> {
        let representatives = catalog();
        ALL_PERMUTATIONS.into_iter().find(|perm| {
            let image: BTreeSet<Ray> = self.rays.iter().map(|r| r.permuted(perm)).collect();
            representatives.contains(&image)
        })
    }

    /// Is this exactly the dependent five-ray face conv(R12,R13,R23,R123,R123')?
    pub fn is_dependent_five(&self) -> bool {
        self.rays.len() == 5 && DEPENDENT_FIVE.iter().all(|r| self.rays.contains(r))
    }

    /// The catalogue representatives of faces containing non-entropic points.
    pub fn catalog() -> Vec<FaceSpec> {
        catalog()
            .into_iter()
            .map(|rays| FaceSpec { rays })
            .collect()
    }

    pub fn display_name(&self) -> String {
        self.rays
            .iter()
            .map(|r| r.name())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for FaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv({})", self.display_name())
    }
}

/// Nonnegative weights of a conic decomposition over named rays.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RayCoefficients(pub BTreeMap<Ray, f64>);

impl RayCoefficients {
    pub fn get(&self, ray: Ray) -> f64 {
        self.0.get(&ray).copied().unwrap_or(0.0)
    }

    /// Recombines the coefficients into the point they decompose.
    pub fn recombine(&self, base: f64) -> Result<EntropyVector> {
        let mut h = [0.0f64; 7];
        for (&ray, &c) in &self.0 {
            for (slot, g) in h.iter_mut().zip(ray.generator()) {
                *slot += c * g as f64;
            }
        }
        EntropyVector::new(base, h.to_vec())
    }
}

impl Serialize for RayCoefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (ray, value) in &self.0 {
            map.serialize_entry(ray.name(), value)?;
        }
        map.end()
    }
}

/// Invariants of a point in the dependent five-ray face: the three sums
/// `s_ij = r_ij + r123'`, the difference `d = r123' - r123`, and the interval
/// of feasible `r123'` values.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FaceParameters {
    pub s12: f64,
    pub s13: f64,
    pub s23: f64,
    pub d: f64,
    pub interval: [f64; 2],
}

/// A successful face-membership decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct FaceMembership {
    pub coefficients: RayCoefficients,
    pub unique: bool,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<FaceParameters>,
}

fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Solves the square rational system `a x = b`; `None` when singular.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    use num::Zero;
    let m = a.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..m {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - delta;
            }
            let delta = &factor * &b[col];
            b[r] = &b[r] - delta;
        }
    }
    Some(
        (0..m)
            .map(|i| &b[i] / &a[i][i])
            .collect(),
    )
}

/// Least-squares solve of `G x = h` via exact normal equations.
/// `None` when the columns are dependent.
fn solve_normal_equations(columns: &[[i64; 7]], h: &EntropyVector) -> Option<Vec<f64>> {
    let m = columns.len();
    let gram: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let dot: i64 = columns[i]
                        .iter()
                        .zip(&columns[j])
                        .map(|(&a, &b)| a * b)
                        .sum();
                    Rational::from_integer(dot.into())
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = (0..m)
        .map(|i| {
            columns[i]
                .iter()
                .zip(h.components())
                .map(|(&g, &v)| Rational::from_integer(g.into()) * rational_from_f64(v))
                .fold(Rational::from_integer(0.into()), |acc, t| acc + t)
        })
        .collect();
    use num::ToPrimitive;
    solve_exact(gram, rhs).map(|x| x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
}

fn residual_inf(columns: &[[i64; 7]], x: &[f64], h: &EntropyVector) -> f64 {
    (0..7)
        .map(|row| {
            let fit: f64 = columns
                .iter()
                .zip(x)
                .map(|(col, &c)| col[row] as f64 * c)
                .sum();
            (fit - h.components()[row]).abs()
        })
        .fold(0.0, f64::max)
}

/// Decides whether `h` lies in the conic hull of the face's rays within
/// `tol`, returning one nonnegative decomposition when it does.
///
/// Independent ray sets give the unique decomposition. For faces containing
/// the dependent quintuple, the one-parameter solution family is anchored at
/// the decomposition minimising `r123` (equivalently, maximal mass on the
/// pairwise rays), and `unique` is reported false. The exact five-ray face
/// additionally carries its [`FaceParameters`].
pub fn face_membership(
    h: &EntropyVector,
    face: &FaceSpec,
    tol: f64,
) -> Result<Option<FaceMembership>> {
    if h.n() != 3 {
        return Err(Error::InvalidArgument(
            "face machinery is specific to three variables".into(),
        ));
    }
    if face.ray_count() > 7 {
        return Err(Error::UnsupportedFace(format!(
            "{face} spans the whole cone; membership over more than 7 rays is not a face question"
        )));
    }

    let rays: Vec<Ray> = face.rays().collect();
    if face.independent() {
        let columns: Vec<[i64; 7]> = rays.iter().map(|r| r.generator()).collect();
        let x = solve_normal_equations(&columns, h)
            .expect("independent generators have a nonsingular Gram matrix");
        let residual = residual_inf(&columns, &x, h);
        if residual > tol || x.iter().any(|&c| c < -tol) {
            return Ok(None);
        }
        let coefficients = RayCoefficients(
            rays.iter()
                .zip(&x)
                .map(|(&r, &c)| (r, c.max(0.0)))
                .collect(),
        );
        return Ok(Some(FaceMembership {
            coefficients,
            unique: true,
            residual,
            parameters: None,
        }));
    }

    // Dependent set: drop R123, solve the independent remainder, then shift
    // along the kernel direction to the minimal-r123 feasible point.
    let reduced: Vec<Ray> = rays.iter().copied().filter(|&r| r != Ray::R123).collect();
    let columns: Vec<[i64; 7]> = reduced.iter().map(|r| r.generator()).collect();
    let x = solve_normal_equations(&columns, h)
        .expect("dropping R123 leaves independent generators");
    let residual = residual_inf(&columns, &x, h);
    if residual > tol {
        return Ok(None);
    }
    let coeff_of = |ray: Ray| -> f64 {
        reduced
            .iter()
            .position(|&r| r == ray)
            .map(|i| x[i])
            .unwrap_or(0.0)
    };
    let r123p_hat = coeff_of(Ray::R123Prime);
    let t = (-r123p_hat).max(0.0);
    let mut coefficients: BTreeMap<Ray, f64> = BTreeMap::new();
    for (&ray, &c) in reduced.iter().zip(&x) {
        let adjusted = match ray {
            Ray::R12 | Ray::R13 | Ray::R23 => c - t,
            Ray::R123Prime => c + t,
            _ => c,
        };
        coefficients.insert(ray, adjusted);
    }
    coefficients.insert(Ray::R123, t);
    if coefficients.values().any(|&c| c < -tol) {
        return Ok(None);
    }
    for c in coefficients.values_mut() {
        *c = c.max(0.0);
    }
    let parameters = face.is_dependent_five().then(|| face_parameters_raw(h));
    Ok(Some(FaceMembership {
        coefficients: RayCoefficients(coefficients),
        unique: false,
        residual,
        parameters,
    }))
}

/// Decomposition invariants of a point in the five-ray face
/// conv(R12, R13, R23, R123, R123').
///
/// Requires the face's defining equalities `h12 = h13 = h23 = h123` (each
/// variable a function of the other two) to hold within `tol`, plus Shannon
/// membership.
pub fn extract_face_parameters(h: &EntropyVector, tol: f64) -> Result<FaceParameters> {
    if h.n() != 3 {
        return Err(Error::InvalidArgument(
            "face parameters are specific to three variables".into(),
        ));
    }
    let c = h.components();
    let (h12, h13, h23, h123) = (c[3], c[4], c[5], c[6]);
    for (name, value) in [("h12", h12), ("h13", h13), ("h23", h23)] {
        if (value - h123).abs() > tol {
            return Err(Error::FaceMismatch(format!(
                "{name} = {value} differs from h123 = {h123}; the point is not in the five-ray face"
            )));
        }
    }
    let shannon = crate::elemental::in_shannon_region(h, tol)?;
    if !shannon.member {
        return Err(Error::FaceMismatch(format!(
            "point violates {} elemental inequalities",
            shannon.violated.len()
        )));
    }
    Ok(face_parameters_raw(h))
}

fn face_parameters_raw(h: &EntropyVector) -> FaceParameters {
    let c = h.components();
    let (h1, h2, h3, h12) = (c[0], c[1], c[2], c[3]);
    let s23 = h12 - h1;
    let s13 = h12 - h2;
    let s12 = h12 - h3;
    let d = 2.0 * h12 - h1 - h2 - h3;
    let lo = d.max(0.0);
    let hi = s12.min(s13).min(s23);
    FaceParameters {
        s12,
        s13,
        s23,
        d,
        interval: [lo, hi],
    }
}

/// A proper subface found to contain the point: an elemental equality that
/// holds at the point but is not forced by the face itself, together with
/// the face rays on which that equality is tight.
#[derive(Clone, Debug, Serialize)]
pub struct SubfaceHit {
    pub equality: String,
    pub value: f64,
    pub subface: Vec<Ray>,
}

/// Verdict of the strict-interiority test.
#[derive(Clone, Debug, Serialize)]
pub struct InteriorityVerdict {
    pub strict: bool,
    pub hits: Vec<SubfaceHit>,
    /// Rays of the smallest subface containing the point (the whole face
    /// when the point is strictly interior).
    pub minimal_subface: Vec<Ray>,
}

/// Tests whether `h` lies in `face` but in none of its proper subfaces.
///
/// A proper subface is cut out by an additional elemental equality: one that
/// holds at `h` within `tol` but does not vanish on all of the face's rays.
pub fn strict_interiority(
    h: &EntropyVector,
    face: &FaceSpec,
    tol: f64,
) -> Result<InteriorityVerdict> {
    let membership = face_membership(h, face, tol)?;
    if membership.is_none() {
        return Err(Error::FaceMismatch(format!(
            "point is not in {face}, so interiority is undefined"
        )));
    }
    let rays: Vec<Ray> = face.rays().collect();
    let mut hits = Vec::new();
    let mut minimal: BTreeSet<Ray> = rays.iter().copied().collect();
    for ineq in elemental_set(3)? {
        let face_defining = rays
            .iter()
            .all(|r| ineq.evaluate_integer(&r.generator()) == 0);
        if face_defining {
            continue;
        }
        let value = ineq.evaluate(h);
        if value.abs() <= tol {
            let subface: Vec<Ray> = rays
                .iter()
                .copied()
                .filter(|r| ineq.evaluate_integer(&r.generator()) == 0)
                .collect();
            minimal = minimal
                .intersection(&subface.iter().copied().collect())
                .copied()
                .collect();
            hits.push(SubfaceHit {
                equality: ineq.expression.to_string(),
                value,
                subface,
            });
        }
    }
    Ok(InteriorityVerdict {
        strict: hits.is_empty(),
        hits,
        minimal_subface: minimal.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec3(h: [f64; 7]) -> EntropyVector {
        EntropyVector::new(2.0, h.to_vec()).unwrap()
    }

    #[test]
    fn ray_vectors_match_the_published_generators() {
        let r1 = ray_vector(Ray::R1, 1.0, 2.0).unwrap();
        assert_eq!(r1.components(), &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        let r23 = ray_vector(Ray::R23, 2.0, 2.0).unwrap();
        assert_eq!(r23.components(), &[0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
        let zero = ray_vector(Ray::R123Prime, 0.0, 2.0).unwrap();
        assert_eq!(zero.components(), &[0.0; 7]);
        assert!(ray_vector(Ray::R1, -1.0, 2.0).is_err());
        assert!(Ray::parse("R99").is_err());
    }

    #[test]
    fn the_single_generator_identity_holds_exactly() {
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
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn independence_flag_agrees_with_the_gram_matrix_rank() {
        let zero = vec3([0.0; 7]);
        for mask in 1u16..256 {
            let rays: Vec<Ray> = Ray::ALL
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &r)| r)
                .collect();
            let columns: Vec<[i64; 7]> = rays.iter().map(|r| r.generator()).collect();
            let nonsingular = solve_normal_equations(&columns, &zero).is_some();
            let face = FaceSpec::new(rays.clone()).unwrap();
            assert_eq!(face.independent(), nonsingular, "rays {rays:?}");
        }
    }

    #[test]
    fn catalog_recognises_representatives_and_their_permutations() {
        let face = FaceSpec::parse("R12,R23,R123p").unwrap();
        assert!(face.is_catalog());
        // Permuted image of conv(R1, R23, R123'): swap labels 1 and 2.
        let permuted = FaceSpec::new([Ray::R2, Ray::R13, Ray::R123Prime]).unwrap();
        assert!(permuted.is_catalog());
        // conv(R123) alone never contains non-entropic points.
        let off = FaceSpec::new([Ray::R123]).unwrap();
        assert!(!off.is_catalog());
    }

    #[test]
    fn unique_membership_on_an_independent_face() {
        // R1 + R123' = [2,1,1,3,3,2,3].
        let h = vec3([2.0, 1.0, 1.0, 3.0, 3.0, 2.0, 3.0]);
        let face = FaceSpec::new([Ray::R1, Ray::R123Prime]).unwrap();
        let m = face_membership(&h, &face, 1e-9).unwrap().unwrap();
        assert!(m.unique);
        assert!((m.coefficients.get(Ray::R1) - 1.0).abs() < 1e-9);
        assert!((m.coefficients.get(Ray::R123Prime) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_point_of_a_two_ray_face() {
        let h = vec3([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]);
        let face = FaceSpec::new([Ray::R1, Ray::R123Prime]).unwrap();
        let m = face_membership(&h, &face, 1e-9).unwrap().unwrap();
        assert!(m.coefficients.get(Ray::R1).abs() < 1e-9);
        assert!((m.coefficients.get(Ray::R123Prime) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn membership_rejects_points_off_the_face() {
        let h = vec3([1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0]);
        let face = FaceSpec::new([Ray::R1, Ray::R123Prime]).unwrap();
        assert!(face_membership(&h, &face, 1e-9).unwrap().is_none());
    }

    #[test]
    fn non_catalog_faces_still_decompose() {
        // conv(R1, R2) is plenarily entropic, hence not catalogued, but
        // membership works the same way.
        let face = FaceSpec::new([Ray::R1, Ray::R2]).unwrap();
        assert!(!face.is_catalog());
        let h = vec3([1.0, 2.0, 0.0, 3.0, 1.0, 2.0, 3.0]);
        let m = face_membership(&h, &face, 1e-9).unwrap().unwrap();
        assert!(m.unique);
        assert!((m.coefficients.get(Ray::R1) - 1.0).abs() < 1e-9);
        assert!((m.coefficients.get(Ray::R2) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dependent_face_reports_non_uniqueness_and_recombines() {
        // R12 + R13 + R23 = R123 + R123' = [2,2,2,3,3,3,3].
        let h = vec3([2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
        let face = FaceSpec::new(DEPENDENT_FIVE).unwrap();
        let m = face_membership(&h, &face, 1e-9).unwrap().unwrap();
        assert!(!m.unique);
        let back = m.coefficients.recombine(2.0).unwrap();
        for (a, b) in back.components().iter().zip(h.components()) {
            assert!((a - b).abs() < 1e-9);
        }
        let params = m.parameters.unwrap();
        assert!((params.d - 0.0).abs() < 1e-9);
        assert!((params.interval[0] - 0.0).abs() < 1e-9);
        assert!((params.interval[1] - 1.0).abs() < 1e-9);
        // The anchored decomposition minimises r123: here r123' = max(0, d) = 0.
        assert!(m.coefficients.get(Ray::R123Prime).abs() < 1e-9);
    }

    #[test]
    fn face_parameters_of_the_unit_prime_ray() {
        let h = vec3([1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0]);
        let p = extract_face_parameters(&h, 1e-9).unwrap();
        assert!((p.s12 - 1.0).abs() < 1e-12);
        assert!((p.s13 - 1.0).abs() < 1e-12);
        assert!((p.s23 - 1.0).abs() < 1e-12);
        assert!((p.d - 1.0).abs() < 1e-12);
        assert_eq!(p.interval, [1.0, 1.0]);
    }

    #[test]
    fn face_parameters_reject_points_outside_the_face() {
        let h = vec3([1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            extract_face_parameters(&h, 1e-9),
            Err(Error::FaceMismatch(_))
        ));
    }

    #[test]
    fn strict_interiority_flags_subfaces() {
        let face = FaceSpec::parse("R12,R23,R123p").unwrap();
        // Unit R23 lies in the one-dimensional subface R23.
        let r23 = vec3([0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let v = strict_interiority(&r23, &face, 1e-9).unwrap();
        assert!(!v.strict);
        assert_eq!(v.minimal_subface, vec![Ray::R23]);

        // R23 + R123' lies in the subface conv(R23, R123').
        let mixed = vec3([1.0, 2.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
        let v = strict_interiority(&mixed, &face, 1e-9).unwrap();
        assert!(!v.strict);
        assert_eq!(v.minimal_subface, vec![Ray::R23, Ray::R123Prime]);
        assert!(v.hits.iter().any(|hit| hit.equality == "I(Y1;Y2)"));

        // A generic positive combination is strictly interior:
        // R12 + R23 + 0.5 R123'.
        let interior = vec3([1.5, 2.5, 1.5, 3.0, 3.0, 3.0, 3.0]);
        let v = strict_interiority(&interior, &face, 1e-9).unwrap();
        assert!(v.strict, "hits: {:?}", v.hits);
    }

    #[test]
    fn strict_interiority_requires_membership() {
        let face = FaceSpec::parse("R12,R23,R123p").unwrap();
        let outside = vec3([1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            strict_interiority(&outside, &face, 1e-9),
            Err(Error::FaceMismatch(_))
        ));
    }

    #[test]
    fn whole_cone_is_not_a_face_question() {
        let face = FaceSpec::new(Ray::ALL).unwrap();
        let h = vec3([1.0; 7]);
        assert!(matches!(
            face_membership(&h, &face, 1e-9),
            Err(Error::UnsupportedFace(_))
        ));
    }
}
