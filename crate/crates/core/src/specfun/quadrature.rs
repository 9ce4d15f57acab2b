//! Globally adaptive quadrature on finite intervals.
//!
//! Two panel rules share one driver: the 7/15-point Gauss–Kronrod pair with
//! the QUADPACK error heuristic, and an n-point Gauss–Legendre rule whose
//! error is estimated by comparing one panel against its two halves. The
//! Bessel evaluator uses the former and its independent oracle the latter.

// Tabulated constants keep every published digit.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::real::Real;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub abs_error: T,
    /// Estimate of `∫|f|`; scales the attainable roundoff floor.
    pub l1_norm: T,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Number of equal panels the interval is split into before refinement.
    pub initial_panels: usize,
    pub max_segments: usize,
}

impl<T: Real> AdaptiveOptions<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Self {
        Self {
            abs_tol,
            rel_tol,
            initial_panels: 1,
            max_segments: 20_000,
        }
    }

    pub fn panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self
    }
}

/// Panel estimate: value, error, and `∫|f|` over the panel.
#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    l1: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN errors sort first so they get refined (and eventually exhaust the budget).
        self.error
            .partial_cmp(&other.error)
            .unwrap_or_else(|| match (self.error.is_nan(), other.error.is_nan()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            })
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Panel<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * T::lit(WGK[7]);
    let mut res_g = fc * T::lit(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv = [T::zero(); 14];
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let scale = half_len.abs();
    let value = res_k * half_len;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc > T::zero() && error > T::zero() {
        let ratio = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * ratio.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if floor > error {
        error = floor;
    }
    Panel {
        a,
        b,
        value,
        error,
        l1: res_abs,
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Newton iteration on `P_n` started from the Chebyshev-like guess.
pub fn gauss_legendre_nodes<T: Real>(n: usize) -> Vec<(T, T)> {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0_f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((T::lit(x), T::lit(w)));
    }
    out
}

fn legendre_panel<T: Real, F: FnMut(T) -> T>(f: &mut F, nodes: &[(T, T)], a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let mut s = T::zero();
    let mut s_abs = T::zero();
    for &(x, w) in nodes {
        let v = f(c + h * x);
        s = s + w * v;
        s_abs = s_abs + w * v.abs();
    }
    (s * h, s_abs * h.abs())
}

fn legendre_doubling<T: Real, F: FnMut(T) -> T>(f: &mut F, nodes: &[(T, T)], a: T, b: T) -> Panel<T> {
    let mid = T::lit(0.5) * (a + b);
    let (whole, _) = legendre_panel(f, nodes, a, b);
    let (left, l_abs) = legendre_panel(f, nodes, a, mid);
    let (right, r_abs) = legendre_panel(f, nodes, mid, b);
    let value = left + right;
    let l1 = l_abs + r_abs;
    let floor = T::lit(50.0) * T::epsilon() * l1;
    Panel {
        a,
        b,
        value,
        error: (value - whole).abs().max(floor),
        l1,
    }
}

fn drive<T, F, R>(mut f: F, a: T, b: T, opts: &AdaptiveOptions<T>, evals_per_panel: usize, mut rule: R) -> Quadrature<T>
where
    T: Real,
    F: FnMut(T) -> T,
    R: FnMut(&mut F, T, T) -> Panel<T>,
{
    let n0 = opts.initial_panels.max(1);
    let width = (b - a) / T::from_index(n0 as i64);
    let mut heap = BinaryHeap::with_capacity(2 * n0);
    for i in 0..n0 {
        let lo = a + width * T::from_index(i as i64);
        let hi = if i + 1 == n0 {
            b
        } else {
            a + width * T::from_index(i as i64 + 1)
        };
        heap.push(rule(&mut f, lo, hi));
    }
    let mut evaluations = n0 * evals_per_panel;
    loop {
        let (mut value, mut error, mut l1) = (T::zero(), T::zero(), T::zero());
        for p in heap.iter() {
            value = value + p.value;
            error = error + p.error;
            l1 = l1 + p.l1;
        }
        let target = opts
            .abs_tol
            .max(opts.rel_tol * value.abs())
            .max(T::lit(100.0) * T::epsilon() * l1);
        let converged = error <= target;
        if converged || heap.len() >= opts.max_segments || !error.is_finite() {
            return Quadrature {
                value,
                abs_error: error,
                l1_norm: l1,
                evaluations,
                converged,
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at working precision.
            heap.push(Panel {
                error: T::zero(),
                ..worst
            });
            continue;
        }
        heap.push(rule(&mut f, worst.a, mid));
        heap.push(rule(&mut f, mid, worst.b));
        evaluations += 2 * evals_per_panel;
    }
}

/// Adaptive 7/15-point Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate_kronrod<T, F>(f: F, a: T, b: T, opts: &AdaptiveOptions<T>) -> Quadrature<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    drive(f, a, b, opts, 15, |f, lo, hi| kronrod15(f, lo, hi))
}

/// Adaptive Gauss–Legendre integration with a step-doubling error estimate.
pub fn integrate_legendre<T, F>(f: F, a: T, b: T, nodes: &[(T, T)], opts: &AdaptiveOptions<T>) -> Quadrature<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let per = 3 * nodes.len();
    drive(f, a, b, opts, per, |f, lo, hi| legendre_doubling(f, nodes, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kronrod_is_exact_on_low_degree_polynomials() {
        let p = kronrod15(&mut |x: f64| x.powi(22) + 3.0 * x.powi(7) - x, -1.0, 1.0);
        assert_relative_eq!(p.value, 2.0 / 23.0, max_relative = 1e-14);
    }

    #[test]
    fn legendre_nodes_integrate_monomials() {
        let nodes = gauss_legendre_nodes::<f64>(12);
        for d in 0..24 {
            let s: f64 = nodes.iter().map(|&(x, w)| w * x.powi(d)).sum();
            let exact = if d % 2 == 0 { 2.0 / (d as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "degree {d}: {s} vs {exact}");
        }
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^π cos(40 t) e^{t/3} dt = (e^{π/3}-1)(1/3)/((1/3)^2 + 1600) ... closed form below.
        let a = 1.0 / 3.0;
        let w = 40.0;
        let exact = (f64::exp(a * std::f64::consts::PI) * (a * (w * std::f64::consts::PI).cos()) - a) / (a * a + w * w);
        let opts = AdaptiveOptions::new(1e-14, 1e-13);
        let f = |t: f64| (w * t).cos() * (a * t).exp();
        let k = integrate_kronrod(f, 0.0, std::f64::consts::PI, &opts);
        let nodes = gauss_legendre_nodes(20);
        let g = integrate_legendre(f, 0.0, std::f64::consts::PI, &nodes, &opts);
        assert!(k.converged && g.converged);
        assert!((k.value - exact).abs() < 1e-13, "{} vs {}", k.value, exact);
        assert!((g.value - exact).abs() < 1e-13, "{} vs {}", g.value, exact);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = AdaptiveOptions {
            abs_tol: 1e-15,
            rel_tol: 0.0,
            initial_panels: 1,
            max_segments: 4,
        };
        let q = integrate_kronrod(|t: f64| (200.0 * t).sin().abs().sqrt(), 0.0, 10.0, &opts);
        assert!(!q.converged);
        assert!(q.abs_error > 0.0);
    }
}
