use std::path::Path;

use orbitkit::lie_core::parse_bracket_table;
use orbitkit::orbit_geometry::{
    flat_corwin_check, induction_dim, little_group_datum, orbit_datum, polarize as polarize_at, project_orbit,
    subordinate_pukanszky_check, Grid, OrbitMap,
};
use orbitkit::rational::{fmt_q, parse_q, to_f64};
use serde_json::json;

use crate::io::{self, input};
use crate::{Ctx, OrbitArgs};

pub fn algebra_check(_ctx: &Ctx, file: &Path) -> anyhow::Result<bool> {
    let alg = parse_bracket_table(&io::read(file)?).map_err(|e| input(format!("{}: {e}", file.display())))?;
    let report = alg.structure_check();
    io::print_json(&serde_json::to_value(&report)?);
    Ok(report.antisymmetric && report.jacobi)
}

pub fn span(_ctx: &Ctx, args: &OrbitArgs) -> anyhow::Result<bool> {
    let alg = io::load_algebra(&args.file)?;
    let x = io::load_covector(&alg, &args.file, args.x.as_deref())?;
    let d = orbit_datum(&alg, &x).map_err(input)?;
    io::print_json(&json!({
        "orbit_dim": d.orbit_dim(),
        "affine_hull_dim": d.affine_hull_dim,
        "span": io::dual_rows(&d.span),
        "directions": io::dual_rows(&d.directions),
        "o": io::labels(&alg, &d.o),
        "c": io::labels(&alg, &d.c),
        "stabilizer": io::labels(&alg, &d.stabilizer),
    }));
    Ok(true)
}

pub fn project(ctx: &Ctx, args: &OrbitArgs, k: i64, step: &str) -> anyhow::Result<bool> {
    let alg = io::load_algebra(&args.file)?;
    let x = io::load_covector(&alg, &args.file, args.x.as_deref())?;
    let basis = io::parse_elements(&alg, args.a.as_deref().ok_or_else(|| input("--a is required"))?)?;
    let step = parse_q(step).filter(|s| to_f64(s) > 0.0).ok_or_else(|| input(format!("--step: {step:?} is not a positive rational")))?;
    if !(1..=50).contains(&k) {
        return Err(input("--grid must lie in 1..=50"));
    }
    let nparams = OrbitMap::new(&alg, &x).map_err(input)?.nparams();
    let grid = Grid::symmetric(nparams, k, step);
    let d = orbit_datum(&alg, &x).map_err(input)?;
    let proj = project_orbit(&d, &basis, &grid).map_err(input)?;
    let header: Vec<String> = basis.iter().map(|v| alg.format_vector(v)).collect();
    if let Some(path) = &ctx.output {
        let rows = proj.cloud.iter().map(|p| p.iter().map(fmt_q).collect());
        io::write_file(path, &io::csv(&header, rows))?;
    }
    io::print_json(&json!({
        "a": header,
        "coords": proj.coords.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "points": proj.cloud.len(),
        "exact_region": proj.has_exact_region(),
    }));
    Ok(true)
}

pub fn polarize(_ctx: &Ctx, args: &OrbitArgs) -> anyhow::Result<bool> {
    let alg = io::load_algebra(&args.file)?;
    let x = io::load_covector(&alg, &args.file, args.x.as_deref())?;
    let h = match &args.a {
        Some(text) => io::parse_subspace(&alg, Some(text))?,
        None => polarize_at(&alg, &x).map_err(input)?,
    };
    let r = subordinate_pukanszky_check(&alg, &h, &x).map_err(input)?;
    io::print_json(&json!({
        "h": io::labels(&alg, &h),
        "subordinate": r.subordinate,
        "polarization": r.polarization,
        "pukanszky": r.pukanszky,
    }));
    Ok(r.subordinate && r.polarization && r.pukanszky)
}

pub fn little_group(_ctx: &Ctx, args: &OrbitArgs) -> anyhow::Result<bool> {
    let alg = io::load_algebra(&args.file)?;
    let x = io::load_covector(&alg, &args.file, args.x.as_deref())?;
    let a = io::parse_subspace(&alg, args.a.as_deref())?;
    let d = orbit_datum(&alg, &x).map_err(input)?;
    let lg = little_group_datum(&d, &a).map_err(input)?;
    let dims = lg.dims(d.orbit_dim());
    let total = induction_dim(dims.dim_gh, dims.dim_y);
    io::print_json(&json!({
        "a": io::labels(&alg, &lg.ideal_a),
        "p": io::rationals(&lg.p),
        "h": io::labels(&alg, &lg.h),
        "y_base": io::rationals(&lg.y_base),
        "dim_gh": dims.dim_gh,
        "dim_y": dims.dim_y,
        "dim_x": dims.dim_x,
        "induction_dim": total,
    }));
    Ok(total == dims.dim_x)
}

pub fn flat(_ctx: &Ctx, args: &OrbitArgs) -> anyhow::Result<bool> {
    let alg = io::load_algebra(&args.file)?;
    let x = io::load_covector(&alg, &args.file, args.x.as_deref())?;
    let d = orbit_datum(&alg, &x).map_err(input)?;
    let r = flat_corwin_check(&d).map_err(input)?;
    io::print_json(&json!({
        "flat": r.flat,
        "corwin": r.corwin,
        "witness_a": r.witness_a.as_ref().map(|a| io::labels(&alg, a)),
    }));
    Ok(true)
}
