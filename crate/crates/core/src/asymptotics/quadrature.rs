use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::Serialize;

use super::AsymptoticsError;

/// Panel cap for a single integral.
pub const MAX_PANELS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights at the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Integral {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

pub(crate) fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

type Eval<'a> = dyn FnMut(f64) -> Result<Complex64, AsymptoticsError> + 'a;

/// 15-point Kronrod estimate and `|K − G|` on `[a, b]`.
fn gk15(f: &mut Eval, a: f64, b: f64) -> Result<(Complex64, f64), AsymptoticsError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x)? + f(c + x)?;
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Ok((k * h, ((k - g) * h).norm()))
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod over the partition `breaks`, bisecting the panel
/// with the largest error estimate until the total is below `tol`.
pub fn adaptive(f: &mut Eval, breaks: &[f64], tol: f64) -> Result<Integral, AsymptoticsError> {
    if breaks.len() < 2 {
        return Ok(Integral { value: Complex64::default(), error: 0.0, panels: 0 });
    }
    if breaks.len() - 1 > MAX_PANELS {
        return Err(AsymptoticsError::NotConverged { panels: breaks.len() - 1, error: f64::INFINITY });
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len());
    let mut total = Complex64::default();
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let (value, error) = gk15(f, w[0], w[1])?;
        total += value;
        err += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }
    while err > tol {
        if heap.len() >= MAX_PANELS {
            return Err(AsymptoticsError::NotConverged { panels: heap.len(), error: err });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in floating point
            return Err(AsymptoticsError::NotConverged { panels: heap.len() + 1, error: err });
        }
        let (v1, e1) = gk15(f, worst.a, mid)?;
        let (v2, e2) = gk15(f, mid, worst.b)?;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // resum to shed the drift of the incremental updates
    let panels = heap.len();
    let (value, error) = heap.into_iter().fold((Complex64::default(), 0.0), |(v, e), p| (v + p.value, e + p.error));
    Ok(Integral { value, error, panels })
}

pub fn uniform_breaks(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 }).collect()
}
