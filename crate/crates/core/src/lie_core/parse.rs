use std::collections::BTreeMap;

use num_traits::Zero;

use super::algebra::{Covector, LieAlgebra};
use super::LieError;
use crate::rational::{parse_q, Q};

/// Parses a bracket file and rejects algebras that fail the Jacobi identity.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, LieError> {
    let alg = parse_bracket_table(text)?;
    if let Some((i, j, k)) = alg.jacobi_violation() {
        let l = alg.labels();
        return Err(LieError::JacobiViolation { triple: format!("({}, {}, {})", l[i], l[j], l[k]) });
    }
    Ok(alg)
}

/// Parses a bracket file without checking the Jacobi identity.
pub fn parse_bracket_table(text: &str) -> Result<LieAlgebra, LieError> {
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut brackets: BTreeMap<(usize, usize), (Vec<Q>, usize, bool)> = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |msg: &str| LieError::Syntax { line, msg: msg.to_string() };
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match kw {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax("repeated dim line"));
                }
                let n: usize = rest.trim().parse().map_err(|_| syntax("dim expects a positive integer"))?;
                if n == 0 {
                    return Err(syntax("dim must be positive"));
                }
                dim = Some(n);
            }
            "basis" => {
                let n = dim.ok_or_else(|| syntax("basis before dim"))?;
                if labels.is_some() || !brackets.is_empty() {
                    return Err(syntax("basis must follow dim and precede brackets"));
                }
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ls.len() != n {
                    return Err(syntax(&format!("expected {n} labels, found {}", ls.len())));
                }
                for (i, l) in ls.iter().enumerate() {
                    if !is_label(l) {
                        return Err(syntax(&format!("invalid label {l:?}")));
                    }
                    if ls[..i].contains(l) {
                        return Err(syntax(&format!("duplicate label {l:?}")));
                    }
                }
                labels = Some(ls);
            }
            "bracket" => {
                let n = dim.ok_or_else(|| syntax("bracket before dim"))?;
                let ls = labels.get_or_insert_with(|| default_labels(n));
                let (lhs, rhs) = rest.split_once("->").ok_or_else(|| syntax("expected '->'"))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(syntax("expected two labels before '->'"));
                }
                let idx = |l: &str| {
                    ls.iter().position(|x| x == l).ok_or(LieError::UnknownLabel { line, label: l.to_string() })
                };
                let (a, b) = (idx(parts[0])?, idx(parts[1])?);
                let v = parse_combination(rhs, ls).map_err(|e| match e {
                    ComboError::Unknown(label) => LieError::UnknownLabel { line, label },
                    ComboError::Syntax(msg) => LieError::Syntax { line, msg },
                })?;
                if a == b {
                    if v.iter().any(|c| !c.is_zero()) {
                        return Err(LieError::InconsistentAntisymmetry {
                            line,
                            pair: (parts[0].into(), parts[1].into()),
                        });
                    }
                    continue;
                }
                let forward = a < b;
                let (key, val) = if forward { ((a, b), v) } else { ((b, a), v.into_iter().map(|c| -c).collect()) };
                let pair = (parts[0].to_string(), parts[1].to_string());
                match brackets.get(&key) {
                    Some((_, first, dir)) if *dir == forward => {
                        return Err(LieError::DuplicateBracket { line, first_line: *first, pair });
                    }
                    Some((old, _, _)) if *old != val => {
                        return Err(LieError::InconsistentAntisymmetry { line, pair });
                    }
                    Some(_) => {}
                    None => {
                        brackets.insert(key, (val, line, forward));
                    }
                }
            }
            other => return Err(syntax(&format!("unknown directive {other:?}"))),
        }
    }
    let n = dim.ok_or(LieError::Syntax { line: 0, msg: "missing dim line".into() })?;
    let labels = labels.unwrap_or_else(|| default_labels(n));
    LieAlgebra::from_brackets(labels, brackets.into_iter().map(|(k, (v, _, _))| (k, v)).collect())
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

#[derive(Debug)]
pub(crate) enum ComboError {
    Unknown(String),
    Syntax(String),
}

/// Parses `q1*l1 + q2*l2 - l3` (or `0`) into coordinates over `labels`.
pub(crate) fn parse_combination(text: &str, labels: &[String]) -> Result<Vec<Q>, ComboError> {
    let mut v = vec![Q::zero(); labels.len()];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ComboError::Syntax("empty right-hand side".into()));
    }
    if compact == "0" {
        return Ok(v);
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.ends_with('*') && !cur.ends_with('/') {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                // leading or doubled signs combine, as in `+ -1/2*e3`
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(ComboError::Syntax("trailing sign".into()));
    }
    terms.push((neg, cur));
    for (neg, term) in terms {
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => (parse_q(c).ok_or_else(|| ComboError::Syntax(format!("bad coefficient {c:?}")))?, l),
            None => (Q::from_integer(1.into()), term.as_str()),
        };
        let idx = labels.iter().position(|x| x == label).ok_or_else(|| {
            if is_label(label) {
                ComboError::Unknown(label.to_string())
            } else {
                ComboError::Syntax(format!("malformed term {term:?}"))
            }
        })?;
        v[idx] += if neg { -coef } else { coef };
    }
    Ok(v)
}

/// Parses an algebra element written as a combination of basis labels.
pub fn parse_vector(alg: &LieAlgebra, text: &str) -> Result<Vec<Q>, LieError> {
    parse_combination(text, alg.labels()).map_err(|e| match e {
        ComboError::Unknown(label) => LieError::UnknownLabel { line: 0, label },
        ComboError::Syntax(msg) => LieError::Syntax { line: 0, msg },
    })
}

/// Parses a base-covector file: one line `covector q1 … qN`, `#` comments allowed.
pub fn parse_covector(text: &str, dim: usize) -> Result<Covector, LieError> {
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        if parts.next() != Some("covector") {
            return Err(LieError::Syntax { line, msg: "expected 'covector' line".into() });
        }
        return parse_coords(&parts.collect::<Vec<_>>(), dim, line);
    }
    Err(LieError::Syntax { line: 0, msg: "no covector line".into() })
}

/// Parses comma- or space-separated rational coordinates.
pub fn parse_covector_list(text: &str, dim: usize) -> Result<Covector, LieError> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    parse_coords(&parts, dim, 0)
}

fn parse_coords(parts: &[&str], dim: usize, line: usize) -> Result<Covector, LieError> {
    if parts.len() != dim {
        return Err(LieError::DimensionMismatch { expected: dim, got: parts.len() });
    }
    let coords = parts
        .iter()
        .map(|p| parse_q(p).ok_or_else(|| LieError::Syntax { line, msg: format!("bad rational {p:?}") }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Covector::new(coords))
}
