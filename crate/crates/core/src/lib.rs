//! Computational toolkit for the orbit method: coadjoint-orbit geometry of nilpotent
//! Lie algebras, the quantum criterion and convexity for `u(n)`, finite harmonic
//! analysis of positive-definite functions, and oscillatory-integral asymptotics.

pub mod asymptotics;
pub mod compact_reps;
pub mod fixtures;
pub mod harmonic;
pub mod lie_core;
pub mod orbit_geometry;
pub mod poly;
pub mod rational;
pub mod rng;

/// Default tolerance for floating checks.
pub const DEFAULT_TOL: f64 = 1e-9;
