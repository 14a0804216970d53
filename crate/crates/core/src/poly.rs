//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, parse_q, to_f64, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("polynomial syntax error at term {term:?}: {msg}")]
pub struct PolyParseError {
    pub term: String,
    pub msg: String,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    /// Linear coefficients and constant term when the polynomial has total degree at most one.
    pub fn as_affine(&self) -> Option<(Vec<Q>, Q)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut lin = vec![Q::zero(); self.nvars];
        for (e, c) in &self.terms {
            if let Some(i) = e.iter().position(|&d| d == 1) {
                lin[i] = c.clone();
            }
        }
        Some((lin, self.constant_term()))
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Q::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &d) in x.iter().zip(e) {
                for _ in 0..d {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * x.iter().zip(e).map(|(xi, &d)| xi.powi(d as i32)).product::<f64>())
            .sum()
    }

    /// Substitutes each variable by a polynomial in a new variable set.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        let nv = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (s, &d) in subs.iter().zip(e) {
                if d > 0 {
                    t = t.mul(&s.pow(d));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Univariate coefficient list (lowest degree first) for a one-variable polynomial.
    pub fn univariate_coeffs(&self) -> Vec<Q> {
        let deg = self.total_degree() as usize;
        let mut out = vec![Q::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e.iter().sum::<u32>() as usize] += c;
        }
        out
    }

    /// Parses the `poly` text syntax, e.g. `3/2*t*u + u^3`.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Poly, PolyParseError> {
        let n = vars.len();
        let mut out = Poly::zero(n);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError { term: String::new(), msg: "empty polynomial".into() });
        }
        for (sign, term) in split_signed_terms(&compact) {
            let err = |msg: &str| PolyParseError { term: term.clone(), msg: msg.into() };
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coef = sign;
            let mut exps = vec![0u32; n];
            for factor in term.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if let Some(i) = vars.iter().position(|v| *v == base) {
                    exps[i] += power;
                } else if let Some(c) = parse_q(base) {
                    for _ in 0..power {
                        coef *= &c;
                    }
                } else {
                    return Err(err("unknown variable or malformed number"));
                }
            }
            out.add_term(exps, coef);
        }
        Ok(out)
    }
}

fn split_signed_terms(s: &str) -> Vec<(Q, String)> {
    let mut out = Vec::new();
    let mut sign = Q::one();
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        let starts_term = (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('*') | Some('/'));
        if starts_term {
            out.push((sign.clone(), std::mem::take(&mut cur)));
            sign = if ch == '-' { -Q::one() } else { Q::one() };
        } else if (ch == '-' || ch == '+') && prev.is_none() {
            if ch == '-' {
                sign = -Q::one();
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    out.push((sign, cur));
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| if d == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, d) })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
