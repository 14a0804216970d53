//! Coadjoint orbit geometry: spans and canonical ideals, projections onto subalgebra
//! duals, polarizations, flat/Corwin checks, little groups and parabolic data.

mod datum;
mod little_group;
mod matrix_orbit;
mod parabolic;
mod polarize;
mod projection;

pub use datum::{characteristic_ideals, flat_corwin_check, orbit_datum, x_abelian_check, FlatCorwinReport, OrbitDatum, XAbelianReport};
pub use little_group::{induction_dim, little_group_datum, LittleGroupDatum, LittleGroupDims};
pub use matrix_orbit::{euclidean_plane_basis, matrix_coadjoint_cloud};
pub use parabolic::{jordan_parabolic, MatrixAlgebra, ParabolicDatum, RealSubspace};
pub use polarize::{is_subordinate, polarize, subordinate_pukanszky_check, PukanszkyReport};
pub use projection::{malcev_basis, poly_range, project_orbit, Grid, OrbitMap, Projection, Range};

use crate::lie_core::LieError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("ideal is not X-abelian")]
    NotXAbelian,
    #[error("parameter grid is empty")]
    EmptyGrid,
    #[error("no qualifying ideal at stage {stage}; candidate dimensions tried: {tried:?}")]
    PolarizationFailed { stage: usize, tried: Vec<usize> },
    #[error("defective eigenstructure: {0}")]
    Defective(String),
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Audit(String),
}
