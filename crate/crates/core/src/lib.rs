//! Entropy vectors of finite discrete joint distributions and the entropic
//! structure of the three-variable Shannon cone.
//!
//! The crate decides membership in the Shannon cone for any number of
//! variables, and for three variables it works with the cone's eight extreme
//! rays: exact conic decompositions over catalogued faces, the known
//! characterisations and outer bounds for entropic points in those faces,
//! and the XNOR constructions showing two face inner bounds loose.
//!
//! Probabilities are exact — rationals, optionally extended by one square
//! root — so independence identities and interiority conditions are decided
//! symbolically, while entropies themselves are floats with caller-supplied
//! tolerances. A brute-force oracle enumerates whole probability grids under
//! exact constraints to verify the universally quantified claims.
//!
//! Everything is an immutable value and every operation a pure function;
//! concurrent use needs no coordination.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod construct;
pub mod dist;
pub mod elemental;
pub mod entropy;
pub mod error;
pub mod faces;
pub mod oracle;
pub mod quad;
pub mod varset;

pub use bounds::{BoundVerdict, CheckInput, IntegerPointCertificate, Witness, BOUND_NAMES};
pub use dist::JointDistribution;
pub use elemental::{elemental_set, in_shannon_region, ElementalInequality, ShannonVerdict};
pub use entropy::{entropy_vector, evaluate, EntropyVector, InformationExpression};
pub use error::{Error, Result};
pub use faces::{
    extract_face_parameters, face_membership, ray_vector, strict_interiority, FaceMembership,
    FaceParameters, FaceSpec, Ray, RayCoefficients,
};
pub use quad::{Quadratic, Rational};
pub use varset::VarSet;
