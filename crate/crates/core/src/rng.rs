//! Seeded random streams. Every Monte Carlo routine takes an explicit seed and
//! splits work into chunks, each drawing from its own ChaCha stream, so results do
//! not depend on how chunks are scheduled.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub type Stream = ChaCha12Rng;

/// Samples per chunk in the chunked Monte Carlo loops.
pub const CHUNK: usize = 4096;

pub fn stream(seed: u64, chunk: u64) -> Stream {
    let mut r = ChaCha12Rng::seed_from_u64(seed);
    r.set_stream(chunk);
    r
}

/// Uniform draw in the half-open interval (0, 1].
pub fn uniform_open0(r: &mut Stream) -> f64 {
    1.0 - r.random::<f64>()
}

/// Two independent standard normals by the Box–Muller transform.
pub fn box_muller(r: &mut Stream) -> (f64, f64) {
    let u1 = uniform_open0(r);
    let u2: f64 = r.random();
    let rad = (-2.0 * u1.ln()).sqrt();
    let th = std::f64::consts::TAU * u2;
    (rad * th.cos(), rad * th.sin())
}

/// Fills a vector with independent standard normals.
pub fn normals(r: &mut Stream, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        let (a, b) = box_muller(r);
        out.push(a);
        out.push(b);
    }
    out.truncate(n);
    out
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// the diagonal of R moved into Q.
pub fn haar_unitary(n: usize, r: &mut Stream) -> DMatrix<Complex64> {
    let z = normals(r, 2 * n * n);
    let g = DMatrix::from_fn(n, n, |i, j| {
        let k = 2 * (i * n + j);
        Complex64::new(z[k], z[k + 1]) / std::f64::consts::SQRT_2
    });
    let qr = g.qr();
    let mut q = qr.q();
    let rm = qr.r();
    for j in 0..n {
        let d = rm[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}
