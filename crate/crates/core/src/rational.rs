//! Exact rational scalars shared by the algebraic modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int_digits}{frac}");
        let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(num, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// `p` for integers, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Smallest-denominator rational within `tol` of `v` (continued-fraction convergents).
pub fn rational_near(v: f64, tol: f64) -> Q {
    if !v.is_finite() {
        return Q::zero();
    }
    let exact = Q::from_float(v).unwrap_or_else(Q::zero);
    let tol_q = Q::from_float(tol.abs()).unwrap_or_else(Q::zero);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = exact.clone();
    for _ in 0..64 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let cand = Q::new(h2.clone(), k2.clone());
        if (&cand - &exact).abs() <= tol_q {
            return cand;
        }
        let frac = &r - Q::from_integer(a);
        if frac.is_zero() {
            return cand;
        }
        r = frac.recip();
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    exact
}

/// Exact solution of `A s = b` by Gaussian elimination; `None` when inconsistent.
/// Returns a particular solution and a basis of the null space of `A`.
pub fn solve_affine(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut m, ncols);
    for row in m.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Q::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][ncols].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        kernel.push(v);
    }
    Some((sol, kernel))
}

/// Reduced row-echelon form on the first `ncols` columns; returns pivot columns.
/// Zero rows are moved to the bottom.
pub fn rref_in_place(m: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
