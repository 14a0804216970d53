use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{FiniteGroup, HarmonicError};

const TOL: f64 = 1e-10;

/// One-dimensional unitary character of a subgroup `H ⊆ G`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    subgroup: Vec<usize>,
    values: Vec<Complex64>,
}

impl Character {
    /// `values[i]` is the value at the `i`-th element of `subgroup` (in the given order).
    pub fn new(group: &FiniteGroup, subgroup: &[usize], values: &[Complex64]) -> Result<Self, HarmonicError> {
        if subgroup.len() != values.len() {
            return Err(HarmonicError::LengthMismatch(subgroup.len(), values.len()));
        }
        let mut pairs: Vec<(usize, Complex64)> = subgroup.iter().copied().zip(values.iter().copied()).collect();
        pairs.sort_by_key(|p| p.0);
        pairs.dedup_by_key(|p| p.0);
        let sub: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        if sub.len() != subgroup.len() {
            return Err(HarmonicError::NotSubgroup);
        }
        let sub = group.require_subgroup(&sub)?;
        let chi = Character { subgroup: sub, values: pairs.into_iter().map(|p| p.1).collect() };
        for (i, &a) in chi.subgroup.iter().enumerate() {
            if (chi.values[i].norm() - 1.0).abs() > TOL {
                return Err(HarmonicError::NotMultiplicative(format!("|χ({a})| = {}", chi.values[i].norm())));
            }
            for (j, &b) in chi.subgroup.iter().enumerate() {
                let ab = chi.value(group.mul(a, b)).expect("subgroup is closed");
                if (ab - chi.values[i] * chi.values[j]).norm() > TOL {
                    return Err(HarmonicError::NotMultiplicative(format!("χ({a}·{b}) ≠ χ({a})χ({b})")));
                }
            }
        }
        Ok(chi)
    }

    pub fn trivial(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self, HarmonicError> {
        let sub = group.require_subgroup(subgroup)?;
        let values = vec![Complex64::new(1.0, 0.0); sub.len()];
        Ok(Character { subgroup: sub, values })
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// Value at `g`, or `None` off the subgroup.
    pub fn value(&self, g: usize) -> Option<Complex64> {
        self.subgroup.binary_search(&g).ok().map(|i| self.values[i])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| (v - 1.0).norm() <= TOL)
    }
}

/// All linear characters of the subgroup `h`, by assigning roots of unity to a
/// generating set and keeping the consistent assignments.
pub fn linear_characters(group: &FiniteGroup, h: &[usize]) -> Result<Vec<Character>, HarmonicError> {
    let h = group.require_subgroup(h)?;
    let gens = group.generators_of(&h);
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let mut exps = vec![0usize; gens.len()];
    loop {
        let images: Vec<Complex64> =
            exps.iter().zip(&orders).map(|(&e, &o)| Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / o as f64)).collect();
        if let Some(values) = extend(group, &h, &gens, &images) {
            out.push(Character { subgroup: h.clone(), values });
        }
        // odometer over exponent tuples
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn extend(group: &FiniteGroup, h: &[usize], gens: &[usize], images: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut val: BTreeMap<usize, Complex64> = BTreeMap::from([(group.identity(), Complex64::new(1.0, 0.0))]);
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        let vx = val[&x];
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let vy = vx * img;
            match val.get(&y) {
                Some(old) if (old - vy).norm() > TOL => return None,
                Some(_) => {}
                None => {
                    val.insert(y, vy);
                    frontier.push(y);
                }
            }
        }
    }
    Some(h.iter().map(|x| val[x]).collect())
}
