//! Construction of dual polar spaces from orthogonal, symplectic and
//! Hermitian forms, their association-scheme data, and exact searches for
//! m-ovoids (constant-weight line transversals), including hemisystems.
//!
//! The crate is organized bottom-up:
//!
//! * [`fields`]: table-driven GF(p^k) arithmetic with fixed encodings;
//! * [`polar`]: forms, totally isotropic subspaces, generator enumeration;
//! * [`geometry`]: the dual polar space as a point-line geometry;
//! * [`scheme`]: distance-regularity parameters, intersection numbers,
//!   eigenvalue data of the distance graph;
//! * [`ovoid`]: certificates for m-ovoids plus the exact counting checks
//!   they must satisfy;
//! * [`search`]: constraint-propagating exact search, optionally reduced by
//!   a prescribed symmetry group, with checkpoints;
//! * [`canon`]: canonical forms of certificates under relabeling, used for
//!   classification up to equivalence and for stabilizer computations;
//! * [`group`]: permutations, matrix similitudes, and the bridge between
//!   the two;
//! * [`files`]: the plain-text interchange formats and content hashing.

pub mod bitset;
pub mod canon;
pub mod fields;
pub mod files;
pub mod geometry;
pub mod group;
pub mod matrix;
pub mod ovoid;
pub mod polar;
pub mod scheme;
pub mod search;

pub use fields::{Fe, Field};
pub use geometry::Geometry;
pub use ovoid::OvoidCertificate;
pub use polar::{form_make, Family, FormSpace, Subspace};
pub use scheme::ParameterSet;
