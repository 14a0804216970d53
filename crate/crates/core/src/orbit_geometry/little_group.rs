use serde::Serialize;

use super::{x_abelian_check, OrbitDatum, OrbitError};
use crate::lie_core::Subspace;
use crate::rational::Q;

#[derive(Clone, Debug)]
pub struct LittleGroupDatum {
    pub ideal_a: Subspace,
    /// `x|a` on the canonical basis of `a`.
    pub p: Vec<Q>,
    /// Stabilizer algebra of `p`, equal to `a⊥`.
    pub h: Subspace,
    /// `x|h` on the canonical basis of `h`.
    pub y_base: Vec<Q>,
    pub dim_gh: usize,
    pub dim_y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LittleGroupDims {
    pub dim_gh: usize,
    pub dim_y: usize,
    pub dim_x: usize,
}

impl LittleGroupDatum {
    pub fn dims(&self, dim_x: usize) -> LittleGroupDims {
        LittleGroupDims { dim_gh: self.dim_gh, dim_y: self.dim_y, dim_x }
    }
}

pub fn induction_dim(dim_gh: usize, dim_y: usize) -> usize {
    2 * dim_gh + dim_y
}

/// Reduction of the orbit to the stabilizer of `x|a` for an X-abelian ideal `a`.
pub fn little_group_datum(datum: &OrbitDatum, a: &Subspace) -> Result<LittleGroupDatum, OrbitError> {
    let alg = datum.alg;
    let x = &datum.base;
    if !alg.is_ideal(a) {
        return Err(OrbitError::NotIdeal);
    }
    if !x_abelian_check(datum, a)?.x_abelian {
        return Err(OrbitError::NotXAbelian);
    }
    let h = alg.perp_at(a, x)?;
    let dim_gh = alg.image_dim(a, x);
    let h_stab = h.intersect(&alg.perp_at(&h, x)?);
    let dim_y = h.dim() - h_stab.dim();
    let dim_x = datum.orbit_dim();
    if !h.contains_space(a) || induction_dim(dim_gh, dim_y) != dim_x {
        return Err(OrbitError::Audit(format!(
            "little-group bookkeeping failed: 2·{dim_gh} + {dim_y} against dim X = {dim_x}"
        )));
    }
    Ok(LittleGroupDatum {
        p: x.restrict(a),
        y_base: x.restrict(&h),
        ideal_a: a.clone(),
        h,
        dim_gh,
        dim_y,
    })
}
