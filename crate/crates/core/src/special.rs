//! Sine and cosine integrals and the t⁻²-weighted oscillatory tails.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{PhaseError, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this argument Si and Ci are summed from their power series; above
/// it the continued fraction for E1(ix) is used.
pub const SERIES_CROSSOVER: f64 = 2.0;

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(PhaseError::domain(format!(
            "argument must be positive and finite, got {x:e}"
        )));
    }
    Ok(())
}

fn series(x: f64) -> (f64, f64) {
    // Si = Σ (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    // Ci = γ + ln x + Σ_{k≥1} (-1)^k x^{2k} / (2k (2k)!)
    let x2 = x * x;
    let mut si = 0.0;
    let mut term = x; // x^{2k+1}/(2k+1)!
    let mut k = 0;
    loop {
        let add = term / (2 * k + 1) as f64;
        si += add;
        if add.abs() < 1e-18 * si.abs() {
            break;
        }
        k += 1;
        term *= -x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
    }
    let mut ci = 0.0;
    let mut term = 1.0; // x^{2k}/(2k)!
    let mut k = 1;
    loop {
        term *= -x2 / ((2 * k - 1) as f64 * (2 * k) as f64);
        let add = term / (2 * k) as f64;
        ci += add;
        if add.abs() < 1e-18 * (1.0 + ci.abs()) {
            break;
        }
        k += 1;
    }
    (si, EULER_GAMMA + x.ln() + ci)
}

/// e^{ix} E1(ix) by Lentz's continued fraction; equals g(x) - i f(x) in
/// terms of the auxiliary functions.
fn e1_scaled(x: f64) -> Complex64 {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h
}

/// Auxiliary functions f(x) = Ci sin x - si cos x and
/// g(x) = -Ci cos x - si sin x, with si = Si - π/2.
pub fn auxiliary_fg(x: f64) -> Result<(f64, f64)> {
    check_positive(x)?;
    if x > SERIES_CROSSOVER {
        let h = e1_scaled(x);
        Ok((-h.im, h.re))
    } else {
        let (si, ci) = series(x);
        let sm = si - FRAC_PI_2;
        let (s, c) = x.sin_cos();
        Ok((ci * s - sm * c, -ci * c - sm * s))
    }
}

/// Returns (Si(x), Ci(x)).
pub fn sine_cosine_integrals(x: f64) -> Result<(f64, f64)> {
    check_positive(x)?;
    if x <= SERIES_CROSSOVER {
        return Ok(series(x));
    }
    let h = e1_scaled(x);
    let (s, c) = x.sin_cos();
    // multiply by e^{-ix}: E1(ix) = -Ci(x) + i(Si(x) - π/2)
    let e1 = h * Complex64::new(c, -s);
    Ok((FRAC_PI_2 + e1.im, -e1.re))
}

/// ∫ₓ^∞ t⁻² sin t dt and ∫ₓ^∞ t⁻² cos t dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailIntegrals {
    pub i_sin: f64,
    pub i_cos: f64,
}

/// One integration by parts gives
///   ∫ₓ^∞ sin t / t² dt = sin x / x − Ci(x),
///   ∫ₓ^∞ cos t / t² dt = cos x / x − π/2 + Si(x).
/// For large x these are rewritten through f and g, which removes the
/// cancellation between the two terms.
pub fn tail_integrals(x: f64) -> Result<TailIntegrals> {
    check_positive(x)?;
    let (s, c) = x.sin_cos();
    if x > SERIES_CROSSOVER {
        let (f, g) = auxiliary_fg(x)?;
        // Ci = f sin − g cos, Si − π/2 = −f cos − g sin
        let inv = 1.0 / x;
        Ok(TailIntegrals {
            i_sin: s * (inv - f) + g * c,
            i_cos: c * (inv - f) - g * s,
        })
    } else {
        let (si, ci) = series(x);
        Ok(TailIntegrals {
            i_sin: s / x - ci,
            i_cos: c / x - FRAC_PI_2 + si,
        })
    }
}
