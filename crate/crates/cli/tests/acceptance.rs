//! End-to-end acceptance criteria, one line per criterion on stdout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use orbitkit::asymptotics::{bohr_decay_scan, gibbs_fourier, oscillatory_vdc, PolyMap, QuadraticForm};
use orbitkit::compact_reps::{
    highest_weight_state, kostant_ascent, kostant_sample, list_quantum_modules, log_rho, log_rho_gradient,
    oscillator_partition, partition_check, partition_crossover, quantum_check, quantum_check_by_hull, weyl_orbit, Space,
    HADRONS,
};
use orbitkit::fixtures;
use orbitkit::harmonic::{
    gns_finite, induction_equivalence, linear_characters, mackey_shoda, Character, FiniteGroup, StateSample, UnitaryRep,
};
use orbitkit::lie_core::{parse_vector, Covector, LieAlgebra, Subspace};
use orbitkit::orbit_geometry::{
    little_group_datum, orbit_datum, polarize, project_orbit, subordinate_pukanszky_check, Grid,
};
use orbitkit::poly::Poly;
use orbitkit::rational::{q, qr, to_f64, Q};
use orbitkit::rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn vecs(alg: &LieAlgebra, items: &[&str]) -> Vec<Vec<Q>> {
    items.iter().map(|s| parse_vector(alg, s).expect("element parses")).collect()
}

fn sub(alg: &LieAlgebra, items: &[&str]) -> Subspace {
    alg.span(vecs(alg, items))
}

fn dominant_weights(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..=cap {
            cur.push(v);
            go(n, lo, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn random_simplex(r: &mut rng::Stream, m: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..m).map(|_| -rng::uniform_open0(r).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|v| v / s).collect()
}

fn rank_vertices(n: usize, k: usize) -> Vec<Vec<i64>> {
    weyl_orbit(&(0..n).map(|i| (i < k) as i64).collect::<Vec<_>>())
}

fn c01_quantum_list() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_orbitkit"))
        .args(["compact", "quantum-list", "--mu", "2,0,-1"])
        .output()
        .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
    ensure(text == "2,0,-1\n1,0,0\n1,1,-1\n", format!("output {text:?}"))?;
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!("three modules in {secs:.3} s"))
}

fn c02_fundamental_weights() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=6 {
        for k in 1..=n {
            let pi: Vec<i64> = (0..n).map(|i| (i < k) as i64).collect();
            let list = list_quantum_modules(&pi).map_err(|e| e.to_string())?;
            ensure(list == vec![pi.clone()], format!("π_{k} in u({n}): {list:?}"))?;
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, format!("took {secs:.3} s"))?;
    Ok(format!("{count} fundamental weights minimal, {secs:.3} s"))
}

fn c03_criteria_agree() -> Outcome {
    let start = Instant::now();
    let ws = dominant_weights(3, -3, 3);
    let disagreements: usize = ws
        .par_iter()
        .map(|l| {
            ws.iter()
                .filter(|m| quantum_check(l, m).expect("dominant") != quantum_check_by_hull(l, m).expect("dominant"))
                .count()
        })
        .sum();
    let secs = start.elapsed().as_secs_f64();
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("{} pairs, 0 disagreements, {secs:.2} s", ws.len() * ws.len()))
}

fn c04_schur_horn() -> Outcome {
    let mut worst = f64::INFINITY;
    for spectrum in [vec![1.0, 0.0, 0.0], vec![2.0, 1.0, 0.0, -1.0]] {
        let r = kostant_sample(&spectrum, 10_000, 42, 1e-10).map_err(|e| e.to_string())?;
        ensure(r.count == 10_000 && r.pass_fraction == 1.0, format!("{spectrum:?}: {r:?}"))?;
        ensure(r.min_slack >= -1e-10, format!("{spectrum:?}: min slack {:e}", r.min_slack))?;
        worst = worst.min(r.min_slack);
    }
    Ok(format!("100% membership, min slack {worst:e}"))
}

fn c05_ascent() -> Outcome {
    let mut r = rng::stream(2024, 0);
    let unit = rank_vertices(5, 1);
    let mut worst_res: f64 = 0.0;
    let mut most_iter = 0;
    for i in 0..20 {
        let c = random_simplex(&mut r, unit.len());
        let rep = kostant_ascent(&unit, &c, Space::Projective, 1e-6).map_err(|e| format!("CP4 target {i}: {e}"))?;
        ensure(rep.residual < 1e-6 && rep.iterations <= 5000, format!("CP4 target {i}: {} after {}", rep.residual, rep.iterations))?;
        worst_res = worst_res.max(rep.residual);
        most_iter = most_iter.max(rep.iterations);
    }
    let gr = rank_vertices(5, 2);
    for i in 0..5 {
        let c = random_simplex(&mut r, gr.len());
        let rep = kostant_ascent(&gr, &c, Space::Grassmannian(2), 1e-6).map_err(|e| format!("Gr(2,5) target {i}: {e}"))?;
        ensure(rep.residual < 1e-6 && rep.iterations <= 5000, format!("Gr(2,5) target {i}: {} after {}", rep.residual, rep.iterations))?;
        worst_res = worst_res.max(rep.residual);
        most_iter = most_iter.max(rep.iterations);
    }
    let mut worst_fd: f64 = 0.0;
    for probe in 0..100u64 {
        let mut r = rng::stream(77, probe);
        let (n, k) = if probe % 2 == 0 { (5, 1) } else { (5, 2) };
        let verts = rank_vertices(n, k);
        let supports: Vec<Vec<usize>> =
            verts.iter().map(|w| w.iter().enumerate().filter(|(_, v)| **v == 1).map(|(i, _)| i).collect()).collect();
        let c = random_simplex(&mut r, verts.len());
        let a = rng::haar_unitary(n, &mut r).columns(0, k).into_owned();
        let z = rng::normals(&mut r, 2 * n * n);
        let x = DMatrix::from_fn(n, n, |i, j| Complex64::new(z[2 * (i * n + j)], z[2 * (i * n + j) + 1]));
        let h = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
        let analytic = (log_rho_gradient(&a, &supports, &c) * &h).trace().re;
        let eps = 1e-5;
        let shifted = |s: f64| log_rho(&(&a + &h * &a * Complex64::new(s, 0.0)), &supports, &c);
        let numeric = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
        worst_fd = worst_fd.max((analytic - numeric).abs() / analytic.abs().max(1.0));
    }
    ensure(worst_fd < 1e-6, format!("gradient relative error {worst_fd:e}"))?;
    Ok(format!("25 targets, worst residual {worst_res:e}, at most {most_iter} iterations; gradient error {worst_fd:e}"))
}

fn c06_oscillator() -> Outcome {
    for i in 1..=100 {
        let beta = i as f64 / 10.0;
        let (l, r) = oscillator_partition(beta, false);
        ensure(l - r >= 0.0, format!("β = {beta}: {l} < {r}"))?;
        let (l, r) = oscillator_partition(beta, true);
        ensure(l - r <= 0.0, format!("shifted, β = {beta}: {l} > {r}"))?;
    }
    Ok("holds on 100 values of β, reversed with the half shift".into())
}

fn c07_su2_partition() -> Outcome {
    let zs: Vec<f64> = (-8..=8).map(|i| i as f64 * 0.25).collect();
    let mut checked = 0;
    for twice_j in 1..=10i64 {
        let mu = [twice_j, 0];
        for &z1 in &zs {
            for &z2 in &zs {
                if z1 == z2 {
                    continue;
                }
                let rep = partition_check(&mu, &mu, &[z1, z2]).map_err(|e| e.to_string())?;
                ensure(rep.holds, format!("j = {}, Z = ({z1}, {z2})", twice_j as f64 / 2.0))?;
                checked += 1;
            }
        }
    }
    let mut latest: f64 = 0.0;
    for twice_j in 2..=10i64 {
        for m in 1..=twice_j / 2 {
            let lambda = [twice_j - m, m];
            let t = partition_crossover(&lambda, &[twice_j, 0], &[1.0, -1.0], 50.0, 0.25).map_err(|e| e.to_string())?;
            match t {
                Some(t) if t < 50.0 => latest = latest.max(t),
                other => return Err(format!("λ = {lambda:?}: no violation below 50 ({other:?})")),
            }
        }
    }
    Ok(format!("{checked} regular Z with λ = μ; every λ < μ fails by t = {latest}"))
}

fn c08_freefall() -> Outcome {
    let (g, x) = fixtures::freefall();
    let c = x.coords()[4].clone();
    let grid = Grid::symmetric(5, 4, qr(1, 2));
    let a = vecs(&g, &["e1-e2", "e3", "e4+e5"]);
    let d = orbit_datum(&g, &x).map_err(|e| e.to_string())?;
    let proj = project_orbit(&d, &a, &grid).map_err(|e| e.to_string())?;
    for pt in &proj.cloud {
        let expect = to_f64(&pt[1]).powi(2) / 2.0 + to_f64(&c);
        ensure(to_f64(&pt[0]).abs() <= 1e-9 && (to_f64(&pt[2]) - expect).abs() <= 1e-9, format!("off the parabola: {pt:?}"))?;
    }
    let mut xb = x.coords().to_vec();
    xb[4] += q(1);
    let xb = Covector::new(xb);
    let db = orbit_datum(&g, &xb).map_err(|e| e.to_string())?;
    let pb = project_orbit(&db, &a, &grid).map_err(|e| e.to_string())?;
    let fa = proj.cloud_f64();
    let fb = pb.cloud_f64();
    let min_dist = fa
        .iter()
        .flat_map(|p| fb.iter().map(move |r| p.iter().zip(r).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt()))
        .fold(f64::INFINITY, f64::min);
    ensure(min_dist > 0.4, format!("min distance {min_dist}"))?;
    for pt in &pb.cloud {
        ensure(proj.contains_exact(pt) == Some(false), format!("{pt:?} lies on both parabolas"))?;
    }
    let vertical = pb.cloud.iter().filter(|p| p[1] == q(0)).map(|p| to_f64(&p[2])).next();
    ensure(vertical == Some(to_f64(&c) + 1.0), format!("vertex of the higher parabola at {vertical:?}"))?;
    // α ≠ 1: full line; α = 1: half-line above c − β²/2
    let line = project_orbit(&d, &vecs(&g, &["e1", "e2", "e5+2*e4+e3"]), &grid).map_err(|e| e.to_string())?;
    for h in [-1000, 0, 1000] {
        ensure(line.contains_exact(&[q(1), q(1), q(h)]) == Some(true), format!("α = 2 misses height {h}"))?;
    }
    let beta = q(3);
    let half = project_orbit(&d, &vecs(&g, &["e1", "e2", "e5+e4+3*e3"]), &grid).map_err(|e| e.to_string())?;
    let edge = &c - &beta * &beta / q(2);
    ensure(half.contains_exact(&[q(1), q(1), edge.clone()]) == Some(true), "α = 1 misses its endpoint")?;
    ensure(half.contains_exact(&[q(1), q(1), edge - qr(1, 100)]) == Some(false), "α = 1 extends below its endpoint")?;
    Ok(format!("{} points on the parabola, min distance to the shifted one {min_dist:.3}, α split reproduced", proj.cloud.len()))
}

fn c09_alg6() -> Outcome {
    let (g, x) = fixtures::alg6();
    let c = x.coords()[5].clone();
    let d = orbit_datum(&g, &x).map_err(|e| e.to_string())?;
    let target = project_orbit(&d, &vecs(&g, &["e1", "e2", "e6"]), &Grid::symmetric(6, 1, q(1))).map_err(|e| e.to_string())?;
    ensure(target.contains_exact(&[q(1), q(0), &c - q(1)]) == Some(false), "(1, 0, c − 1) accepted")?;
    ensure(target.contains_exact(&[q(1), q(0), c.clone()]) == Some(true), "(1, 0, c) rejected")?;
    let values: Vec<Q> = [-1, 0, 2].iter().map(|&v| q(v)).collect();
    let grid = Grid::uniform(6, values);
    let mut tested = 0;
    let mut points = 0;
    for off in [1i64, 3] {
        let mut xb = x.coords().to_vec();
        xb[5] += q(off);
        let db = orbit_datum(&g, &Covector::new(xb)).map_err(|e| e.to_string())?;
        for alpha in -1..=1 {
            for beta in -1..=1 {
                for gamma in -1..=1 {
                    let families = [
                        vec!["e1".to_string(), format!("e6+{alpha}*e5+{beta}*e4+{gamma}*e3")],
                        vec!["e1".to_string(), "e2".to_string(), format!("e6+{beta}*e4+{gamma}*e3")],
                        vec!["e1".to_string(), "e2".to_string(), "e3".to_string()],
                    ];
                    for a in families {
                        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
                        let basis = vecs(&g, &refs);
                        let sp = g.span(basis.clone());
                        if g.bracket_space(&sp, &sp).dim() != 0 {
                            continue;
                        }
                        let p = project_orbit(&d, &basis, &grid).map_err(|e| e.to_string())?;
                        let pb = project_orbit(&db, &basis, &grid).map_err(|e| e.to_string())?;
                        for pt in &pb.cloud {
                            ensure(p.contains_exact(pt) == Some(true), format!("a = {a:?}, c̄ = c + {off}: {pt:?} rejected"))?;
                            points += 1;
                        }
                        tested += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{points} points of the higher orbit accepted over {tested} abelian subalgebras; half-line removed"))
}

fn c10_polarize() -> Outcome {
    let (g, x) = fixtures::heisenberg();
    let h = polarize(&g, &x).map_err(|e| e.to_string())?;
    let r = subordinate_pukanszky_check(&g, &h, &x).map_err(|e| e.to_string())?;
    ensure(h.dim() == 2 && r.polarization && r.pukanszky, format!("Heisenberg: dim {} {r:?}", h.dim()))?;
    let (g, x) = fixtures::bargmann();
    let h = polarize(&g, &x).map_err(|e| e.to_string())?;
    ensure(h == sub(&g, &["e_a", "e_c", "e_e"]), format!("Bargmann: {h}"))?;
    let r = subordinate_pukanszky_check(&g, &h, &x).map_err(|e| e.to_string())?;
    ensure(r.polarization && r.pukanszky, format!("Bargmann: {r:?}"))?;
    let (g, x) = fixtures::alg6();
    let h = polarize(&g, &x).map_err(|e| e.to_string())?;
    let dim_x = orbit_datum(&g, &x).map_err(|e| e.to_string())?.orbit_dim();
    let r = subordinate_pukanszky_check(&g, &h, &x).map_err(|e| e.to_string())?;
    ensure(h.dim() == 4 && dim_x == 4 && r.polarization && r.pukanszky, format!("six-dimensional: dim h {} dim X {dim_x} {r:?}", h.dim()))?;
    Ok("dims 2, 3 (b = 0) and 4, all Pukánszky".into())
}

fn c11_van_der_corput() -> Outcome {
    let mut cases = 0;
    let mut tightest: f64 = 0.0;
    for p in ["t^2", "t^3", "5*t^2 + t", "t^4 - t"] {
        let poly = Poly::parse(p, &["t"]).map_err(|e| e.to_string())?;
        for a in [1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0] {
            for (u, v) in [(0.0, a), (-a, a), (1.0, a)] {
                let r = oscillatory_vdc(&poly, u, v, 1e-9).map_err(|e| format!("{p} on [{u}, {v}]: {e}"))?;
                ensure(r.respected, format!("{p} on [{u}, {v}]: |I| = {} > {}", r.value.norm(), r.vdc_bound))?;
                tightest = tightest.max(r.value.norm() / r.vdc_bound);
                cases += 1;
            }
        }
    }
    let map = PolyMap::parse(&["t", "t^2"], &["t"]).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..13).map(|i| 10.0 * 100f64.powf(i as f64 / 12.0)).collect();
    let rep = bohr_decay_scan(&map, &[0.0, 1.0], &grid, 1e-10).map_err(|e| e.to_string())?;
    let sup = rep.a_values.iter().zip(&rep.magnitudes).map(|(a, m)| a * m).fold(0.0, f64::max);
    ensure(rep.decays && sup <= 8.0 / 2f64.sqrt(), format!("parabola: decays {} sup a|I_a| {sup}", rep.decays))?;
    Ok(format!("{cases} intervals respected (max ratio {tightest:.3}); sup a|I_a| = {sup:.4} on [10, 1000]"))
}

fn c12_gibbs() -> Outcome {
    let fixtures: [(f64, Vec<f64>); 10] = [
        (0.5, vec![0.5, 0.5]),
        (1.0, vec![0.5, 0.5]),
        (2.0, vec![1.0, -1.0]),
        (0.3, vec![0.2, 0.7]),
        (1.5, vec![-0.4, -0.4]),
        (0.1, vec![3.0, 1.0, -2.0, 0.5]),
        (0.8, vec![0.5, 0.5, 0.5, 0.5]),
        (5.0, vec![0.05, -0.1]),
        (0.25, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]),
        (3.0, vec![0.0, 0.3]),
    ];
    let mut worst: f64 = 0.0;
    for (i, (t, zeta)) in fixtures.iter().enumerate() {
        let form = QuadraticForm::new(zeta.clone()).map_err(|e| e.to_string())?;
        let rep = gibbs_fourier(&form, *t, 100_000, 1000 + i as u64).map_err(|e| e.to_string())?;
        ensure(rep.agrees, format!("fixture {i}: {rep:?}"))?;
        worst = worst.max((rep.mc_estimate - rep.closed_form).norm() / rep.sigma_hat.max(1e-300));
    }
    let harmonic = QuadraticForm::new(vec![0.5, 0.5]).map_err(|e| e.to_string())?;
    let far = harmonic.characteristic(1e3).norm();
    ensure(far < 2e-3, format!("|closed form| at T = 1000 is {far}"))?;
    Ok(format!("10 fixtures within {worst:.2} standard errors; |closed form| at T = 1000 is {far:.3e}"))
}

fn c13_mackey() -> Outcome {
    let groups = [
        FiniteGroup::cyclic(12),
        FiniteGroup::abelian(&[2, 4]),
        FiniteGroup::symmetric(3),
        FiniteGroup::symmetric(4),
        FiniteGroup::dihedral(5),
        FiniteGroup::quaternion(),
        FiniteGroup::heisenberg(3),
        FiniteGroup::product(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(4)),
    ];
    let mut pairs = 0;
    for g in &groups {
        let subs = g.subgroups();
        for h in &subs {
            for k in &subs {
                if (g.order() / h.len()) * (g.order() / k.len()) > 144 {
                    continue;
                }
                let chi = &linear_characters(g, h).map_err(|e| e.to_string())?[0];
                let etas = linear_characters(g, k).map_err(|e| e.to_string())?;
                let eta = etas.last().expect("trivial character exists");
                let rep = mackey_shoda(g, chi, eta).map_err(|e| e.to_string())?;
                ensure(rep.exact <= rep.bound, format!("|G| = {}: exact {} > bound {}", g.order(), rep.exact, rep.bound))?;
                pairs += 1;
            }
        }
    }
    let h3 = FiniteGroup::heisenberg(3);
    let abelian: Vec<usize> = (0..9).map(|x| 3 * x).collect();
    let chi = linear_characters(&h3, &abelian)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|c| (c.value(9).expect("center lies in the subgroup") - 1.0).norm() > 0.1)
        .ok_or("no character nontrivial on the center")?;
    let rep = mackey_shoda(&h3, &chi, &chi).map_err(|e| e.to_string())?;
    ensure((rep.bound, rep.exact) == (1, 1), format!("maximal abelian case: {rep:?}"))?;
    let start = Instant::now();
    let e = Character::trivial(&h3, &[h3.identity()]).map_err(|e| e.to_string())?;
    let rep = mackey_shoda(&h3, &e, &e).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure((rep.bound, rep.exact) == (27, 27) && secs < 10.0, format!("regular case: {rep:?} in {secs:.2} s"))?;
    Ok(format!("{pairs} subgroup pairs within the bound; maximal abelian 1 = 1; |G| = 27 in {secs:.2} s"))
}

fn c14_gns() -> Outcome {
    let groups = [
        FiniteGroup::symmetric(4),
        FiniteGroup::quaternion(),
        FiniteGroup::dihedral(6),
        FiniteGroup::abelian(&[2, 3, 4]),
        FiniteGroup::heisenberg(2),
    ];
    let regs: Vec<UnitaryRep> = groups.iter().map(UnitaryRep::regular).collect();
    let mut worst: f64 = 0.0;
    for s in 0..50u64 {
        let k = s as usize % groups.len();
        let g = &groups[k];
        let mut r = rng::stream(s, 0);
        let z = rng::normals(&mut r, 2 * g.order());
        let phi = DVector::from_fn(g.order(), |i, _| Complex64::new(z[2 * i], z[2 * i + 1]));
        let m = StateSample::from_vector(g, regs[k].matrices(), &phi).map_err(|e| e.to_string())?;
        let gns = gns_finite(&m, 1e-12).map_err(|e| e.to_string())?;
        worst = worst.max(gns.reconstruction_error(&m));
    }
    ensure(worst <= 1e-10, format!("reconstruction error {worst:e}"))?;
    let cases: Vec<(FiniteGroup, Vec<usize>)> = vec![
        (FiniteGroup::heisenberg(3), (0..9).map(|x| 3 * x).collect()),
        (FiniteGroup::symmetric(4), vec![0]),
        (FiniteGroup::quaternion(), vec![0, 1, 4, 5]),
        (FiniteGroup::dihedral(6), FiniteGroup::dihedral(6).generated(&[1])),
    ];
    let mut worst_eq: f64 = 0.0;
    for (g, h) in &cases {
        for chi in linear_characters(g, h).map_err(|e| e.to_string())? {
            let eq = induction_equivalence(g, &chi).map_err(|e| e.to_string())?;
            worst_eq = worst_eq.max(eq.error);
        }
    }
    ensure(worst_eq <= 1e-10, format!("intertwiner error {worst_eq:e}"))?;
    Ok(format!("50 states reconstructed to {worst:.1e}; induction intertwiners to {worst_eq:.1e}"))
}

fn c15_hadrons() -> Outcome {
    let id = DMatrix::<Complex64>::identity(3, 3);
    let gs: Vec<DMatrix<Complex64>> = (0..100).map(|s| rng::haar_unitary(3, &mut rng::stream(5000 + s, 0))).collect();
    let mut lowest = f64::INFINITY;
    for (name, mu) in HADRONS {
        let at_e = highest_weight_state(&mu, &id).map_err(|e| e.to_string())?;
        ensure((at_e - 1.0).norm() < 1e-12, format!("{name}: m(e) = {at_e}"))?;
        for g in &gs {
            let v = highest_weight_state(&mu, g).map_err(|e| e.to_string())?;
            ensure(v.norm() <= 1.0 + 1e-12, format!("{name}: |m(g)| = {}", v.norm()))?;
        }
        let pts = &gs[..12];
        let gram = DMatrix::from_fn(12, 12, |i, j| highest_weight_state(&mu, &(pts[i].adjoint() * &pts[j])).expect("unitary"));
        let min = gram.symmetric_eigenvalues().min();
        ensure(min >= -1e-8, format!("{name}: Gram minimum {min:e}"))?;
        lowest = lowest.min(min);
    }
    Ok(format!("six states normalized and bounded; lowest Gram eigenvalue {lowest:.2e}"))
}

fn c16_galilei() -> Outcome {
    let (g, x) = fixtures::galilei_massive();
    let d = orbit_datum(&g, &x).map_err(|e| e.to_string())?;
    let a = sub(&g, &["gamma1", "gamma2", "gamma3", "eps", "phi"]);
    let lg = little_group_datum(&d, &a).map_err(|e| e.to_string())?;
    let dims = lg.dims(d.orbit_dim());
    ensure((dims.dim_gh, dims.dim_y) == (3, 2), format!("dims {dims:?}"))?;
    ensure(2 * dims.dim_gh + dims.dim_y == 8 && dims.dim_x == 8, format!("dims {dims:?}"))?;
    Ok("dim G/H = 3, dim Y = 2, 2·3 + 2 = dim X = 8".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 16] = [
        ("quantum modules below (2,0,-1)", c01_quantum_list),
        ("fundamental weights are minimal", c02_fundamental_weights),
        ("dominance and hull criteria agree", c03_criteria_agree),
        ("Schur-Horn sampling", c04_schur_horn),
        ("convexity ascent and gradient", c05_ascent),
        ("oscillator inequality and its reversal", c06_oscillator),
        ("su(2) partition inequality", c07_su2_partition),
        ("free-fall projections", c08_freefall),
        ("six-dimensional projections", c09_alg6),
        ("polarizations", c10_polarize),
        ("van der Corput bounds and parabola decay", c11_van_der_corput),
        ("Gibbs characteristic function", c12_gibbs),
        ("Mackey-Shoda bound", c13_mackey),
        ("GNS reconstruction and induction", c14_gns),
        ("hadron states", c15_hadrons),
        ("Galilei little group", c16_galilei),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:02} PASS  {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:02} FAIL  {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
