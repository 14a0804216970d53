use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::{adaptive, ser_complex, Integral};
use super::{AsymptoticsError, PolyMap};
use crate::poly::Poly;
use crate::rational::to_f64;

/// Real univariate polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly(pub Vec<f64>);

impl UPoly {
    pub fn from_poly(p: &Poly) -> Result<Self, AsymptoticsError> {
        if p.nvars() != 1 {
            return Err(AsymptoticsError::Shape(format!("expected a polynomial in one variable, got {}", p.nvars())));
        }
        Ok(UPoly(p.univariate_coeffs().iter().map(to_f64).collect()).trimmed())
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last() == Some(&0.0) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(0.0);
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.0.last().expect("nonempty coefficient list")
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()).trimmed()
    }

    fn mul(&self, other: &UPoly) -> UPoly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly(out).trimmed()
    }

    fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        UPoly((0..n).map(|i| self.0.get(i).unwrap_or(&0.0) - other.0.get(i).unwrap_or(&0.0)).collect()).trimmed()
    }

    fn scale(&self, c: f64) -> UPoly {
        UPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    /// `t ↦ p(−t)`.
    fn reflected(&self) -> UPoly {
        UPoly(self.0.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { *c }).collect())
    }

    /// Every real root lies in `[−B, B]` (Cauchy's bound); zero for constants.
    fn root_bound(&self) -> f64 {
        if self.degree() == 0 {
            return 0.0;
        }
        let lead = self.leading().abs();
        1.0 + self.0[..self.degree()].iter().map(|c| c.abs() / lead).fold(0.0, f64::max)
    }
}

fn phase_breaks(p: &UPoly, u: f64, v: f64) -> Vec<f64> {
    // about two radians of phase per initial panel
    const SAMPLES: usize = 4096;
    let mut breaks = vec![u];
    let mut prev = p.eval(u);
    for i in 1..=SAMPLES {
        let t = if i == SAMPLES { v } else { u + (v - u) * i as f64 / SAMPLES as f64 };
        let cur = p.eval(t);
        let pieces = ((cur - prev).abs() / 2.0).ceil().max(1.0) as usize;
        let t0 = *breaks.last().expect("nonempty");
        for j in 1..=pieces {
            breaks.push(if j == pieces { t } else { t0 + (t - t0) * j as f64 / pieces as f64 });
        }
        prev = cur;
    }
    breaks
}

/// Number of integration-by-parts terms in the tail expansion.
const IBP_TERMS: usize = 8;

/// `∫_T^v e^{ip}` by repeated integration by parts, valid when `p'` has no zero on
/// `[T, v]`: with `f_0 = 1` and `f_{k+1} = −(f_k/(ip'))'`, the boundary terms are
/// `e^{ip} f_k/(ip')` and the remainder is bounded by `∫_T^v |f_N|`.
///
/// Writing `f_k = i^{−k} R_k/p'^{2k}` gives `R_{k+1} = (2k+1) R_k p'' − R_k' p'`.
fn ibp_tail(p: &UPoly, t0: f64, v: f64, tol: f64) -> Result<Option<Integral>, AsymptoticsError> {
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let mut r = vec![UPoly(vec![1.0])];
    for k in 0..IBP_TERMS {
        let next = r[k].mul(&d2).scale((2 * k + 1) as f64).sub(&r[k].derivative().mul(&d1));
        r.push(next);
    }
    let n = IBP_TERMS;
    let rn = &r[n];
    let remainder = |t: f64| {
        let num = rn.eval(t).abs();
        if num == 0.0 {
            return 0.0;
        }
        (num.ln() - (2 * n) as f64 * d1.eval(t).abs().ln()).exp()
    };
    // geometric initial partition; the remainder decays like a power of t
    let mut breaks = vec![t0];
    let mut t = t0.max(1e-3);
    while t * 2.0 < v {
        t *= 2.0;
        breaks.push(t);
    }
    breaks.push(v);
    breaks.dedup();
    let bound = adaptive(&mut |t| Ok(Complex64::new(remainder(t), 0.0)), &breaks, tol * 1e-2)?;
    let e = bound.value.re + bound.error;
    if !e.is_finite() || e > tol {
        return Ok(None);
    }
    let i = Complex64::i();
    let boundary = |t: f64| -> Complex64 {
        let d = d1.eval(t);
        let e = Complex64::from_polar(1.0, p.eval(t));
        (0..n).map(|k| e * i.powi(-(k as i32) - 1) * (r[k].eval(t) / d.powi(2 * k as i32 + 1))).sum()
    };
    Ok(Some(Integral { value: boundary(v) - boundary(t0), error: e, panels: bound.panels }))
}

/// Start of the right tail: the first `T ≥ start` (growing geometrically) where the
/// expansion meets `tol`, or `None` if no such `T < v` is found.
fn right_tail(p: &UPoly, start: f64, v: f64, tol: f64) -> Result<Option<(f64, Integral)>, AsymptoticsError> {
    let mut t = start;
    while t < v {
        if p.derivative().eval(t) != 0.0 {
            if let Some(tail) = ibp_tail(p, t, v, tol)? {
                return Ok(Some((t, tail)));
            }
        }
        t = (t * 1.25).max(t + 0.5);
    }
    Ok(None)
}

/// `∫_u^v e^{ip(t)} dt` to absolute accuracy `tol`: adaptive Gauss–Kronrod on a
/// phase-adapted partition of the bounded part, with asymptotic tails beyond the
/// critical points of `p`.
pub fn oscillatory_integral(p: &UPoly, u: f64, v: f64, tol: f64) -> Result<Integral, AsymptoticsError> {
    if !(tol > 0.0) || !u.is_finite() || !v.is_finite() {
        return Err(AsymptoticsError::Invalid("need finite bounds and tol > 0".into()));
    }
    if v < u {
        let r = oscillatory_integral(p, v, u, tol)?;
        return Ok(Integral { value: -r.value, ..r });
    }
    if u == v {
        return Ok(Integral { value: Complex64::default(), error: 0.0, panels: 0 });
    }
    let bound = p.derivative().root_bound();
    let mut lo = u;
    let mut hi = v;
    let mut value = Complex64::default();
    let mut error = 0.0;
    let mut panels = 0;
    if p.degree() >= 1 && v > bound {
        if let Some((t, tail)) = right_tail(p, u.max(bound), v, tol / 4.0)? {
            hi = t;
            value += tail.value;
            error += tail.error;
            panels += tail.panels;
        }
    }
    if p.degree() >= 1 && u < -bound && lo < hi {
        let q = p.reflected();
        if let Some((t, tail)) = right_tail(&q, (-hi).max(bound), -u, tol / 4.0)? {
            lo = -t;
            value += tail.value;
            error += tail.error;
            panels += tail.panels;
        }
    }
    if lo < hi {
        let breaks = phase_breaks(p, lo, hi);
        let mid = adaptive(&mut |t| Ok(Complex64::from_polar(1.0, p.eval(t))), &breaks, tol / 2.0)?;
        value += mid.value;
        error += mid.error;
        panels += mid.panels;
    }
    Ok(Integral { value, error, panels })
}

#[derive(Clone, Debug, Serialize)]
pub struct VdcReport {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub error: f64,
    pub degree: usize,
    /// `2^{k+1}/(k!|c|)^{1/k}` for degree `k` and leading coefficient `c`.
    pub vdc_bound: f64,
    pub respected: bool,
}

/// Oscillatory integral of `e^{ip}` over `[u, v]` against the van der Corput bound.
pub fn oscillatory_vdc(p: &Poly, u: f64, v: f64, tol: f64) -> Result<VdcReport, AsymptoticsError> {
    let up = UPoly::from_poly(p)?;
    if up.degree() == 0 {
        return Err(AsymptoticsError::ConstantPhase);
    }
    let r = oscillatory_integral(&up, u, v, tol)?;
    let k = up.degree();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let vdc_bound = 2f64.powi(k as i32 + 1) / (fact * up.leading().abs()).powf(1.0 / k as f64);
    Ok(VdcReport { value: r.value, error: r.error, degree: k, vdc_bound, respected: r.value.norm() <= vdc_bound + tol })
}

#[derive(Clone, Debug, Serialize)]
pub struct BohrReport {
    pub a_values: Vec<f64>,
    pub magnitudes: Vec<f64>,
    /// `1/k` for the total degree `k` of `⟨φ, P⟩`.
    pub exponent: f64,
    /// `C` fitted on the first half of the scan.
    pub envelope: f64,
    pub decays: bool,
    pub reason: Option<String>,
}

impl BohrReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,abs_I\n");
        for (a, m) in self.a_values.iter().zip(&self.magnitudes) {
            s.push_str(&format!("{a},{m}\n"));
        }
        s
    }
}

/// Restriction of `p` to the last variable with the others fixed.
fn restrict_last(p: &Poly, prefix: &[f64]) -> UPoly {
    let m = p.nvars();
    let mut coeffs = vec![0.0; p.degree_in(m - 1) as usize + 1];
    for (exps, c) in p.terms() {
        let w: f64 = prefix.iter().zip(exps).map(|(x, e)| x.powi(*e as i32)).product();
        coeffs[exps[m - 1] as usize] += to_f64(c) * w;
    }
    UPoly(coeffs).trimmed()
}

/// `∫_{[0,a]^m} e^{ip(s)} ds` by nested adaptive quadrature.
fn box_integral(p: &Poly, a: f64, prefix: &mut Vec<f64>, tol: f64) -> Result<Complex64, AsymptoticsError> {
    let m = p.nvars();
    if prefix.len() + 1 == m {
        return Ok(oscillatory_integral(&restrict_last(p, prefix), 0.0, a, tol)?.value);
    }
    let inner_tol = tol / (2.0 * a.max(1.0));
    let breaks = super::quadrature::uniform_breaks(0.0, a, (4.0 * a).ceil() as usize);
    let r = adaptive(
        &mut |x| {
            prefix.push(x);
            let v = box_integral(p, a, prefix, inner_tol);
            prefix.pop();
            v
        },
        &breaks,
        tol / 2.0,
    )?;
    Ok(r.value)
}

/// Scan of `|I_a|`, `I_a = ∫_{[0,1]^m} e^{i⟨φ, P(ax)⟩} dx`, over increasing `a`.
///
/// Decay is certified when every value in the second half of the scan lies below
/// `C·a^{−1/k}`, with `C` the smallest constant dominating the first half.
pub fn bohr_decay_scan(map: &PolyMap, phi: &[f64], a_values: &[f64], tol: f64) -> Result<BohrReport, AsymptoticsError> {
    if a_values.len() < 2 || a_values.windows(2).any(|w| w[0] >= w[1]) || a_values[0] <= 0.0 {
        return Err(AsymptoticsError::Invalid("need at least two increasing positive a values".into()));
    }
    let p = map.pairing(phi)?;
    if p.is_constant() {
        return Ok(BohrReport {
            a_values: a_values.to_vec(),
            magnitudes: vec![1.0; a_values.len()],
            exponent: 0.0,
            envelope: 1.0,
            decays: false,
            reason: Some("trivial character".into()),
        });
    }
    let m = map.m();
    let magnitudes = a_values
        .iter()
        .map(|&a| {
            let scale = a.powi(m as i32);
            Ok((box_integral(&p, a, &mut Vec::new(), tol * scale)? / scale).norm())
        })
        .collect::<Result<Vec<f64>, AsymptoticsError>>()?;
    let exponent = 1.0 / p.total_degree() as f64;
    let half = a_values.len().div_ceil(2);
    let envelope = (0..half).map(|i| magnitudes[i] * a_values[i].powf(exponent)).fold(0.0, f64::max);
    let decays = (half..a_values.len()).all(|i| magnitudes[i] <= envelope * a_values[i].powf(-exponent) * (1.0 + 1e-9) + tol);
    Ok(BohrReport { a_values: a_values.to_vec(), magnitudes, exponent, envelope, decays, reason: None })
}
