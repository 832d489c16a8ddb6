//! Representation spaces for hyperprojective pointclasses: ordinal notations,
//! Baire-space names, a pointclass lattice, a rule calculus bounding the
//! complexity of represented spaces, and the hierarchy of functionals.
pub mod baire;
pub mod functionals;
pub mod ordinals;
pub mod pointclass;
pub mod repcalc;
pub mod selftest;
