use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use orbitkit::lie_core::{parse_algebra, parse_covector, parse_covector_list, parse_vector, Covector, LieAlgebra, Subspace};
use orbitkit::rational::{fmt_q, parse_q, to_f64, Q};
use serde_json::Value;

use crate::Ctx;

/// Bad arguments or unreadable input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input(e: impl fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

fn items(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_ints(name: &str, text: &str) -> anyhow::Result<Vec<i64>> {
    items(text)
        .map(|s| s.parse::<i64>().map_err(|_| input(format!("--{name}: {s:?} is not an integer"))))
        .collect()
}

/// Comma-separated reals; rational literals such as `1/4` are accepted.
pub fn parse_reals(name: &str, text: &str) -> anyhow::Result<Vec<f64>> {
    items(text)
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .or_else(|| parse_q(s).map(|q| to_f64(&q)))
                .ok_or_else(|| input(format!("--{name}: {s:?} is not a number")))
        })
        .collect()
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> anyhow::Result<LieAlgebra> {
    parse_algebra(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Resolves `--x` against the bracket file at `lie`.
pub fn load_covector(alg: &LieAlgebra, lie: &Path, x: Option<&str>) -> anyhow::Result<Covector> {
    let sibling = |name: Option<&str>| -> PathBuf {
        let stem = lie.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let file = match name {
            Some(n) => format!("{stem}.{n}.cov"),
            None => format!("{stem}.cov"),
        };
        lie.with_file_name(file)
    };
    let from_file = |p: &Path| -> anyhow::Result<Covector> {
        parse_covector(&read(p)?, alg.dim()).map_err(|e| input(format!("{}: {e}", p.display())))
    };
    match x {
        None => from_file(&sibling(None)),
        Some(s) => {
            if s.contains(',') || parse_q(s.trim()).is_some() {
                return parse_covector_list(s, alg.dim()).map_err(|e| input(format!("--x: {e}")));
            }
            let p = Path::new(s);
            if p.is_file() {
                from_file(p)
            } else {
                let named = sibling(Some(s));
                if named.is_file() {
                    from_file(&named)
                } else {
                    Err(input(format!("--x: {s:?} is neither coordinates nor a covector file ({} not found)", named.display())))
                }
            }
        }
    }
}

/// Parses `--a`, expanding a bare prefix to every label made of the prefix and digits.
pub fn parse_elements(alg: &LieAlgebra, text: &str) -> anyhow::Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for item in items(text) {
        if let Ok(v) = parse_vector(alg, item) {
            out.push(v);
            continue;
        }
        let family: Vec<usize> = (0..alg.dim())
            .filter(|&i| {
                alg.labels()[i]
                    .strip_prefix(item)
                    .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
            })
            .collect();
        if family.is_empty() {
            return Err(input(format!("--a: cannot read {item:?} as an element of the algebra")));
        }
        out.extend(family.into_iter().map(|i| alg.basis_vector(i)));
    }
    if out.is_empty() {
        return Err(input("--a: no elements given"));
    }
    Ok(out)
}

pub fn parse_subspace(alg: &LieAlgebra, text: Option<&str>) -> anyhow::Result<Subspace> {
    let text = text.ok_or_else(|| input("--a is required"))?;
    Ok(alg.span(parse_elements(alg, text)?))
}

/// Basis of an algebra subspace as label combinations.
pub fn labels(alg: &LieAlgebra, s: &Subspace) -> Value {
    s.rows().iter().map(|r| Value::String(alg.format_vector(r))).collect()
}

/// Basis of a dual subspace as rational coordinate strings.
pub fn dual_rows(s: &Subspace) -> Value {
    s.rows().iter().map(|r| r.iter().map(|c| Value::String(fmt_q(c))).collect::<Value>()).collect()
}

pub fn rationals(v: &[Q]) -> Value {
    v.iter().map(|c| Value::String(fmt_q(c))).collect()
}

pub fn print_json(v: &Value) {
    println!("{v}");
}

/// Writes the artifact to `-o` when given, otherwise to stdout.
pub fn emit(ctx: &Ctx, text: &str) -> anyhow::Result<()> {
    match &ctx.output {
        Some(p) => write_file(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// CSV text with a header row and LF line endings.
pub fn csv(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// Shortest decimal that round-trips, with negative zero folded to zero.
pub fn float(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}
