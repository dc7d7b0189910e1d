//! Numerical integration: adaptive Gauss–Kronrod, fixed Gauss–Legendre
//! panels, semi-infinite maps, period-chunked oscillatory sums and the
//! thermal frequency integral.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{PhaseError, Result};

/// Tolerances for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Typical oscillation period of the integrand, if known.
    pub oscillation_period_hint: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::phase()
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 1e-14 && rel_tol < 1e-2) {
            return Err(PhaseError::domain(format!(
                "rel_tol must lie in (1e-14, 1e-2), got {rel_tol:e}"
            )));
        }
        if !(abs_tol >= 0.0) {
            return Err(PhaseError::domain("abs_tol must be non-negative"));
        }
        if max_subdivisions < 10 {
            return Err(PhaseError::domain("max_subdivisions must be at least 10"));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            oscillation_period_hint: None,
        })
    }

    /// Default for special-function paths.
    pub fn special() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_subdivisions: 2000,
            oscillation_period_hint: None,
        }
    }

    /// Default for multi-dimensional phase integrals.
    pub fn phase() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 0.0,
            max_subdivisions: 2000,
            oscillation_period_hint: None,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral value with its (conservative) absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Self { value, error }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, error: 0.0 }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error: self.error * factor.abs(),
        }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value + rhs.value, self.error + rhs.error)
    }
}

impl std::ops::Sub for Estimate {
    type Output = Estimate;
    fn sub(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value - rhs.value, self.error + rhs.error)
    }
}

impl std::iter::Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::default(), |a, b| a + b)
    }
}

// Kronrod abscissae and weights for the 21-point rule; the Gauss weights
// belong to the embedded 10-point rule (odd Kronrod nodes).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_460,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_958_109_831,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// One 21-point Gauss–Kronrod panel: (value, error, |f| integral).
fn qk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[10];
    let mut resabs = resk.abs();
    let mut resg = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0f64).min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err, resabs)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Rounding floor of the panel, 50ε∫|f|.
    floor: f64,
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

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Adaptive integration over consecutive intervals of a sorted breakpoint
/// list. Panels never straddle a breakpoint.
pub fn integrate_with_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if points.len() < 2 {
        return Err(PhaseError::domain("integration needs at least two breakpoints"));
    }
    if points.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(PhaseError::domain(format!(
            "integration breakpoints must be increasing: {points:?}"
        )));
    }
    let floor_of = |resabs: f64| 50.0 * f64::EPSILON * resabs;
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut total_floor = 0.0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let (value, error, resabs) = qk21(&mut f, w[0], w[1]);
        total += value;
        total_err += error;
        total_floor += floor_of(resabs);
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
            floor: floor_of(resabs),
        });
    }
    let mut subdivisions = heap.len();
    // error above the rounding floor is what refinement can still remove
    while total_err - total_floor > spec.tolerance(total) {
        if subdivisions >= spec.max_subdivisions {
            return Err(PhaseError::Quadrature {
                estimate: total,
                error: total_err,
                subdivisions,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution; keep its estimate
            heap.push(worst);
            break;
        }
        let (v1, e1, r1) = qk21(&mut f, worst.a, mid);
        let (v2, e2, r2) = qk21(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        total_floor += floor_of(r1) + floor_of(r2) - worst.floor;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
            floor: floor_of(r1),
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
            floor: floor_of(r2),
        });
        subdivisions += 1;
    }
    // recompute the sums from scratch to shed accumulated rounding
    let (value, error, floor) = heap
        .iter()
        .fold((0.0, 0.0, 0.0), |(v, e, r), p| (v + p.value, e + p.error, r + p.floor));
    if error - floor > spec.tolerance(value) && error > 1e3 * f64::EPSILON * value.abs() {
        return Err(PhaseError::Quadrature {
            estimate: value,
            error,
            subdivisions,
        });
    }
    Ok(Estimate::new(value, error))
}

/// Integral of `f` over `[a, ∞)` through the map x = a + (1 - t)/t.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    integrate_semi_infinite_with_breakpoints(&mut f, a, &[], spec)
}

/// As [`integrate_semi_infinite`], with interior breakpoints (given in x).
pub fn integrate_semi_infinite_with_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut ts: Vec<f64> = vec![0.0, 1.0];
    for &x in breakpoints {
        if x > a {
            ts.push(1.0 / (1.0 + (x - a)));
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    integrate_with_breakpoints(
        |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            let x = a + (1.0 - t) / t;
            let v = f(x) / (t * t);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        &ts,
        spec,
    )
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The shared 16-point rule.
    pub fn sixteen() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
/// Returns the accelerated limit and a crude error estimate.
pub fn wynn_epsilon(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    if n < 3 {
        let last = partial_sums.last().copied().unwrap_or(0.0);
        let prev = if n >= 2 { partial_sums[n - 2] } else { 0.0 };
        return (last, (last - prev).abs());
    }
    // eps[k] holds column k of the epsilon table along the last diagonal
    let mut table: Vec<Vec<f64>> = vec![partial_sums.to_vec()];
    let mut prev_col: Vec<f64> = vec![0.0; n + 1];
    let mut best = partial_sums[n - 1];
    let mut best_err = (partial_sums[n - 1] - partial_sums[n - 2]).abs();
    let mut k = 0;
    loop {
        let cur = &table[k];
        if cur.len() < 2 {
            break;
        }
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let base = if k == 0 { 0.0 } else { prev_col[i + 1] };
            if diff == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / diff);
            }
        }
        prev_col = cur.clone();
        k += 1;
        // even columns approximate the limit
        if k % 2 == 0 && next.len() >= 2 {
            let l = next.len();
            let (a, b) = (next[l - 1], next[l - 2]);
            if a.is_finite() && b.is_finite() {
                let err = (a - b).abs();
                if err < best_err {
                    best = a;
                    best_err = err;
                }
            }
        }
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        table.push(next);
    }
    (best, best_err)
}

/// Sums `∫ f` over consecutive panels `[edge(k), edge(k+1)]`, k = 0, 1, …,
/// accelerating the sequence of partial sums with the epsilon algorithm.
/// Intended for tails that oscillate with a known local period.
pub fn integrate_chunked<F, E>(mut f: F, mut edge: E, spec: &QuadratureSpec, max_chunks: usize) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
    E: FnMut(usize) -> f64,
{
    let inner = QuadratureSpec {
        rel_tol: (spec.rel_tol * 1e-2).max(1e-14),
        abs_tol: 0.0,
        max_subdivisions: spec.max_subdivisions,
        oscillation_period_hint: None,
    };
    let mut partial = Vec::new();
    let mut sum = 0.0;
    let mut quad_err = 0.0;
    let mut last = (0.0, f64::INFINITY);
    let mut stable = 0;
    for k in 0..max_chunks {
        let (a, b) = (edge(k), edge(k + 1));
        // edges may run in either direction
        let piece = if a <= b {
            integrate_adaptive(&mut f, a, b, &inner)?
        } else {
            integrate_adaptive(&mut f, b, a, &inner)?.scale(-1.0)
        };
        sum += piece.value;
        quad_err += piece.error;
        partial.push(sum);
        if partial.len() >= 8 {
            let window = &partial[partial.len().saturating_sub(40)..];
            let (v, e) = wynn_epsilon(window);
            let tol = spec.tolerance(v).max(1e-15 * v.abs());
            if e <= tol && (v - last.0).abs() <= tol {
                stable += 1;
                if stable >= 2 {
                    return Ok(Estimate::new(v, e.max((v - last.0).abs()) + quad_err));
                }
            } else {
                stable = 0;
            }
            last = (v, e);
        }
    }
    Err(PhaseError::Quadrature {
        estimate: last.0,
        error: last.1,
        subdivisions: max_chunks,
    })
}

/// `∫₀^∞ dω coth(ω / 2θ) Im g(ω)` with frequencies in units of ω0 and θ
/// the reduced temperature k_BΘ/(ħω0). At θ = 0 the coth becomes 1.
///
/// Near ω = 0 the coth factor behaves as 2θ/ω; the interval `[0, θ]` is
/// mapped through ω = e^u so the quadrature nodes cluster there.
pub fn integrate_thermal_frequency<G: FnMut(f64) -> Complex64>(
    mut g: G,
    reduced_temperature: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(reduced_temperature >= 0.0) {
        return Err(PhaseError::domain("temperature must be non-negative"));
    }
    let theta = reduced_temperature;
    let weight = move |w: f64| -> f64 {
        if theta == 0.0 {
            1.0
        } else {
            1.0 / (w / (2.0 * theta)).tanh()
        }
    };
    let mut integrand = |w: f64| weight(w) * g(w).im;
    if theta == 0.0 {
        return integrate_semi_infinite_with_breakpoints(&mut integrand, 0.0, &[1.0], spec);
    }
    let split = theta.min(1.0);
    // ω = split·e^{-s}, s ∈ [0, ∞)
    let low = integrate_semi_infinite(
        |s: f64| {
            let w = split * (-s).exp();
            if w == 0.0 {
                0.0
            } else {
                integrand(w) * w
            }
        },
        0.0,
        spec,
    )?;
    let high = integrate_semi_infinite_with_breakpoints(
        &mut integrand,
        split,
        &[1.0, theta.max(1.0) * 4.0],
        spec,
    )?;
    Ok(low + high)
}
