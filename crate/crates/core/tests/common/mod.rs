//! Independent oracles shared by the integration and acceptance tests.
//! Nothing here calls the library's quadrature or special functions.
#![allow(dead_code)]

use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Composite Simpson rule with `n` (rounded up to even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// ∫dτ f(τ) δσ(τ − R/c)/R for the image of (0, 0, zs) seen from (ρ, 0, z),
/// with δσ a normalized Gaussian of width σ.
fn smeared(c: f64, z: f64, zs: f64, rho: f64, sigma: f64, f: &dyn Fn(f64) -> f64) -> f64 {
    let r = (rho * rho + (z + zs).powi(2)).sqrt();
    let t = r / c;
    let g = |u: f64| (-0.5 * u * u).exp() / (2.0 * PI).sqrt() * f(t + sigma * u);
    simpson(g, -9.0, 9.0, 720) / r
}

/// Nascent-delta oracle for the collapsed mirror kernel:
/// (1/2πε0) ∂z∂z' of the smeared δ(τ − R/c)/R, by central differences.
pub fn nascent_delta_kernel(c: f64, eps0: f64, z: f64, zs: f64, rho: f64, f: &dyn Fn(f64) -> f64) -> f64 {
    let s = z + zs;
    let sigma = 1e-5 * s / c;
    let h = 2e-4 * s;
    let v = |dz: f64, dzs: f64| smeared(c, z + dz, zs + dzs, rho, sigma, f);
    let mixed = (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4.0 * h * h);
    mixed / (2.0 * PI * eps0)
}

/// Si and Ci by brute-force Simpson quadrature.
pub fn si_ci(x: f64) -> (f64, f64) {
    let n = ((x * 200.0) as usize).max(400);
    let sinc = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
    // (cos t − 1)/t is smooth at 0
    let cosm = |t: f64| if t == 0.0 { 0.0 } else { (t.cos() - 1.0) / t };
    let si = simpson(sinc, 0.0, x, n);
    let cin = simpson(cosm, 0.0, x, n);
    (si, EULER_GAMMA + x.ln() + cin)
}

/// ∫ₓ^∞ sin t/t² dt and ∫ₓ^∞ cos t/t² dt by brute force: log-spaced
/// Simpson up to t = 10 (if x < 10), linear panels up to X, and the
/// asymptotic tail beyond X.
pub fn tail_integrals(x: f64) -> (f64, f64) {
    let mut s = 0.0;
    let mut c = 0.0;
    let mut a = x;
    if a < 10.0 {
        let (ua, ub) = (a.ln(), 10f64.ln());
        let n = (((ub - ua) * 400.0) as usize).max(400);
        s += simpson(|u| u.exp().sin() / u.exp(), ua, ub, n);
        c += simpson(|u| u.exp().cos() / u.exp(), ua, ub, n);
        a = 10.0;
    }
    let big = a + 4000.0 * PI;
    let n = ((big - a) * 40.0) as usize;
    s += simpson(|t| t.sin() / (t * t), a, big, n);
    c += simpson(|t| t.cos() / (t * t), a, big, n);
    // ∫_X^∞ e^{it}/t² ≈ e^{iX} (i/X² + 2/X³ − 6i/X⁴)
    let (sx, cx) = big.sin_cos();
    let (p, q) = (1.0 / big.powi(2) - 6.0 / big.powi(4), 2.0 / big.powi(3));
    // real part: cos X·q − sin X·p; imaginary part: sin X·q + cos X·p
    c += cx * q - sx * p;
    s += sx * q + cx * p;
    (s, c)
}

/// Averaged double-path phase of fill-the-gap step packets (both of width
/// w between 0 and w) under the saturated phase K/(z1 + z2)², x = K/w².
/// The double integral over (z1, z2) ∈ [0, w]² is reduced through
/// u = z1 + z2 = w y, whose density is the triangle 1 − |y − 1|, and the
/// oscillating corner y → 0 is covered by panels between successive phase
/// multiples of π, averaged over the last two partial sums.
pub fn averaged_phase_2d(x: f64) -> f64 {
    let tri = |y: f64| 1.0 - (y - 1.0).abs();
    let mut re = 0.0;
    let mut im = 0.0;
    let y1 = (x / PI).sqrt().min(1.0);
    // y = e^v on [y1, 1] resolves the fast phase near the first node
    let lower = |f: &dyn Fn(f64) -> f64| simpson(|v| tri(v.exp()) * f(x * (-2.0 * v).exp()) * v.exp(), y1.ln(), 0.0, 8000);
    let upper = |f: &dyn Fn(f64) -> f64| simpson(|y| tri(y) * f(x / (y * y)), 1.0, 2.0, 2000);
    re += lower(&f64::cos) + upper(&f64::cos);
    im += lower(&f64::sin) + upper(&f64::sin);
    if y1 < 1.0 {
        let edge = |n: usize| (x / (n as f64 * PI)).sqrt();
        let (mut prev_re, mut prev_im) = (re, im);
        for n in 1..6000 {
            prev_re = re;
            prev_im = im;
            let (a, b) = (edge(n + 1), edge(n));
            re += simpson(|y| tri(y) * (x / (y * y)).cos(), a, b, 40);
            im += simpson(|y| tri(y) * (x / (y * y)).sin(), a, b, 40);
        }
        re = 0.5 * (re + prev_re);
        im = 0.5 * (im + prev_im);
    }
    im.atan2(re)
}

/// (1/π)∫₀^∞ dω g^H(ω) Φ(ω) for the Gaussian test function of width s
/// centred at τ0. Around the resonance ω = ω0 + (ε/2) tan θ flattens the
/// Lorentzian; the wings are integrated in ω directly.
pub fn fdt_frequency_side(d: &casimir_phase::dipole::DipoleCorrelators, s: f64, tau0: f64) -> f64 {
    let w0 = d.species.omega0;
    let half = 0.5 * d.damping_epsilon;
    let weight = |w: f64| d.hadamard_freq(w) * s * (2.0 * PI).sqrt() * (-0.5 * (w * s).powi(2)).exp() * (w * tau0).cos();
    let (a, b) = (w0 - 1e3 * half, w0 + 1e3 * half);
    let peak = |th: f64| {
        let w = w0 + half * th.tan();
        weight(w) * half / th.cos().powi(2)
    };
    let lo = simpson(weight, 0.0, a, 40_000);
    let mid = simpson(peak, (-1e3f64).atan(), 1e3f64.atan(), 40_000);
    let hi = simpson(weight, b, 12.0 * w0, 200_000);
    (lo + mid + hi) / PI
}

/// P(b) = (1/π)∫₀^∞ e^{-bx}(2 + 2bx + b²x²)/(1 + x²) dx by Simpson in
/// x = tan θ.
pub fn rate_oracle(b: f64) -> f64 {
    let f = |th: f64| {
        if th >= 0.5 * PI {
            return 0.0;
        }
        let x = th.tan();
        let bx = b * x;
        (-bx).exp() * (2.0 + 2.0 * bx + bx * bx)
    };
    simpson(f, 0.0, 0.5 * PI, 200_000) / PI
}
