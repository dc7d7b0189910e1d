//! Central trajectories of the two arms and 1-D packet profiles normal to
//! the mirror.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::error::{PhaseError, Result};

/// Straight piece of a trajectory: z(t) = z_start + v_z (t − t_start).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub t_start: f64,
    pub z_start: f64,
    pub v_z: f64,
}

/// Piecewise-linear height of one arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arm {
    pub segments: Vec<Segment>,
}

impl Arm {
    /// An arm starting at `z0` and moving through legs of `(duration, v_z)`.
    /// The last velocity is kept until the end of the interaction time.
    pub fn from_legs(z0: f64, legs: &[(f64, f64)]) -> Result<Self> {
        if legs.is_empty() {
            return Ok(Self {
                segments: vec![Segment {
                    t_start: 0.0,
                    z_start: z0,
                    v_z: 0.0,
                }],
            });
        }
        let mut segments = Vec::with_capacity(legs.len());
        let (mut t, mut z) = (0.0, z0);
        for &(duration, v_z) in legs {
            if !(duration > 0.0) || !duration.is_finite() || !v_z.is_finite() {
                return Err(PhaseError::domain(format!(
                    "trajectory legs need a positive duration and finite velocity, got ({duration:e} s, {v_z:e} m/s)"
                )));
            }
            segments.push(Segment {
                t_start: t,
                z_start: z,
                v_z,
            });
            t += duration;
            z += v_z * duration;
        }
        Ok(Self { segments })
    }

    pub fn uniform(z0: f64, v_z: f64) -> Self {
        Self {
            segments: vec![Segment {
                t_start: 0.0,
                z_start: z0,
                v_z,
            }],
        }
    }

    fn segment(&self, t: f64) -> &Segment {
        let idx = self.segments.partition_point(|s| s.t_start <= t);
        &self.segments[idx.saturating_sub(1)]
    }

    pub fn z(&self, t: f64) -> f64 {
        let s = self.segment(t);
        s.z_start + s.v_z * (t - s.t_start)
    }

    pub fn v_z(&self, t: f64) -> f64 {
        self.segment(t).v_z
    }

    /// Segment holding time `t` (for evaluations that look back in time).
    pub(crate) fn segment_at(&self, t: f64) -> Segment {
        *self.segment(t)
    }

    /// Lowest height reached on `[0, duration]`.
    pub fn min_height(&self, duration: f64) -> f64 {
        let mut m = self.z(0.0).min(self.z(duration));
        for s in &self.segments {
            if s.t_start <= duration {
                m = m.min(s.z_start);
            }
        }
        m
    }

    pub fn is_static(&self) -> bool {
        self.segments.iter().all(|s| s.v_z == 0.0)
    }
}

/// The two interferometer arms sharing their motion parallel to the mirror.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathPair {
    pub arms: [Arm; 2],
    /// Common in-plane velocity (m/s).
    pub parallel_velocity: [f64; 2],
    /// Interaction time T (s).
    pub duration: f64,
    pub z0: f64,
}

impl PathPair {
    pub fn new(arm1: Arm, arm2: Arm, parallel_velocity: [f64; 2], duration: f64) -> Result<Self> {
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(PhaseError::domain(format!(
                "interaction time must be positive, got {duration:e} s"
            )));
        }
        let z0 = arm1.z(0.0);
        if (arm2.z(0.0) - z0).abs() > 1e-12 * z0.abs() {
            return Err(PhaseError::domain(
                "both arms must start at the same height (beam-splitter geometry)",
            ));
        }
        for (k, arm) in [&arm1, &arm2].into_iter().enumerate() {
            if arm.segments.is_empty() || arm.segments[0].t_start != 0.0 {
                return Err(PhaseError::domain("each arm needs a segment starting at t = 0"));
            }
            for w in arm.segments.windows(2) {
                let end = w[0].z_start + w[0].v_z * (w[1].t_start - w[0].t_start);
                if (end - w[1].z_start).abs() > 1e-12 * end.abs().max(w[1].z_start.abs()) {
                    return Err(PhaseError::domain(format!("arm {} has a jump at t = {:e} s", k + 1, w[1].t_start)));
                }
            }
            let m = arm.min_height(duration);
            if !(m > 0.0) {
                return Err(PhaseError::domain(format!(
                    "arm {} reaches z = {m:e} m; trajectories must stay above the mirror",
                    k + 1
                )));
            }
        }
        Ok(Self {
            arms: [arm1, arm2],
            parallel_velocity,
            duration,
            z0,
        })
    }

    /// Arm 1 parallel to the mirror at z0; arm 2 receding at `v_perp`.
    pub fn fig1(z0: f64, v_perp: f64, duration: f64) -> Result<Self> {
        Self::new(Arm::uniform(z0, 0.0), Arm::uniform(z0, v_perp), [0.0, 0.0], duration)
    }

    /// Both arms at rest at z0.
    pub fn parallel(z0: f64, duration: f64) -> Result<Self> {
        Self::new(Arm::uniform(z0, 0.0), Arm::uniform(z0, 0.0), [0.0, 0.0], duration)
    }

    pub fn with_parallel_velocity(mut self, v: [f64; 2]) -> Self {
        self.parallel_velocity = v;
        self
    }

    pub fn arm(&self, k: usize) -> Result<&Arm> {
        self.arms
            .get(k)
            .ok_or_else(|| PhaseError::domain(format!("arm index {k} out of range (0 or 1)")))
    }

    pub fn swapped(&self) -> Self {
        Self {
            arms: [self.arms[1].clone(), self.arms[0].clone()],
            ..self.clone()
        }
    }

    pub fn parallel_speed(&self) -> f64 {
        self.parallel_velocity[0].hypot(self.parallel_velocity[1])
    }

    /// Largest |v_z| on either arm.
    pub fn max_normal_speed(&self) -> f64 {
        self.arms
            .iter()
            .flat_map(|a| a.segments.iter())
            .filter(|s| s.t_start <= self.duration)
            .map(|s| s.v_z.abs())
            .fold(0.0, f64::max)
    }

    /// Breakpoints for time integrals on `[0, T]`: segment joins plus a
    /// geometric ladder after each join, where power-law integrands pile up.
    pub fn time_breakpoints(&self) -> Vec<f64> {
        let t_end = self.duration;
        let mut pts = vec![0.0, t_end];
        for arm in &self.arms {
            for s in &arm.segments {
                if s.t_start > 0.0 && s.t_start < t_end {
                    pts.push(s.t_start);
                }
            }
        }
        let starts: Vec<f64> = pts.iter().copied().filter(|&t| t < t_end).collect();
        for t0 in starts {
            let mut h = (t_end - t0) / 2.0;
            for _ in 0..60 {
                pts.push(t0 + h);
                h /= 2.0;
                if h < 1e-12 * t_end {
                    break;
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * t_end);
        pts
    }

    pub fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t <= self.duration) {
            return Err(PhaseError::domain(format!(
                "time {t:e} s lies outside [0, {:e}] s",
                self.duration
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PacketKind {
    Point,
    Step,
    Gaussian,
}

/// 1-D density profile normal to the mirror, rigidly carried by its arm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavepacketModel {
    pub kind: PacketKind,
    /// Full width for a step, full 1/e² width for a Gaussian (m). Ignored
    /// for a point packet.
    #[serde(default)]
    pub width: f64,
}

/// Gaussian tails beyond this many standard deviations are dropped from
/// quadratures (relative weight below 1e-15).
pub const GAUSSIAN_CUTOFF: f64 = 8.0;

/// A density or current value; point packets give a point mass that the
/// phase engines integrate analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    PointMass { at: f64, weight: f64 },
    Value(f64),
}

impl WavepacketModel {
    pub fn point() -> Self {
        Self {
            kind: PacketKind::Point,
            width: 0.0,
        }
    }

    pub fn step(width: f64) -> Result<Self> {
        Self::new(PacketKind::Step, width)
    }

    pub fn gaussian(width: f64) -> Result<Self> {
        Self::new(PacketKind::Gaussian, width)
    }

    pub fn new(kind: PacketKind, width: f64) -> Result<Self> {
        let m = Self { kind, width };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind != PacketKind::Point && !(self.width > 0.0 && self.width.is_finite()) {
            return Err(PhaseError::domain(format!(
                "packet width must be positive, got {:e} m",
                self.width
            )));
        }
        Ok(())
    }

    /// Standard deviation of the Gaussian profile (a quarter of the 1/e² width).
    pub fn sigma(&self) -> f64 {
        self.width / 4.0
    }

    /// Half-extent of the support used by quadratures.
    pub fn half_support(&self) -> f64 {
        match self.kind {
            PacketKind::Point => 0.0,
            PacketKind::Step => self.width / 2.0,
            PacketKind::Gaussian => GAUSSIAN_CUTOFF * self.sigma(),
        }
    }

    /// Normalized profile at offset `x` from the packet center.
    pub fn profile(&self, x: f64) -> f64 {
        match self.kind {
            PacketKind::Point => 0.0,
            PacketKind::Step => {
                if x.abs() < self.width / 2.0 {
                    1.0 / self.width
                } else {
                    0.0
                }
            }
            PacketKind::Gaussian => {
                let s = self.sigma();
                (-(x * x) / (2.0 * s * s)).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
            }
        }
    }

    /// Probability that the offset lies in `[lo, hi]`.
    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        match self.kind {
            PacketKind::Point => {
                if lo <= 0.0 && 0.0 <= hi {
                    1.0
                } else {
                    0.0
                }
            }
            PacketKind::Step => {
                let h = self.width / 2.0;
                (hi.min(h) - lo.max(-h)).max(0.0) / self.width
            }
            PacketKind::Gaussian => {
                let s = self.sigma() * std::f64::consts::SQRT_2;
                0.5 * (erf(hi / s) - erf(lo / s))
            }
        }
    }

    /// Density of the sum of offsets from two independent packets; this is
    /// what a pair of rigidly carried packets presents to a kernel that
    /// depends on z + z' only. Returns `None` when both are points.
    pub fn pair_sum_density(&self, other: &WavepacketModel, x: f64) -> Option<f64> {
        use PacketKind::*;
        match (self.kind, other.kind) {
            (Point, Point) => None,
            (Point, _) => Some(other.profile(x)),
            (_, Point) => Some(self.profile(x)),
            (Step, Step) => {
                // overlap of two boxes
                let (a, b) = (self.width / 2.0, other.width / 2.0);
                let len = ((x + a).min(b) - (x - a).max(-b)).max(0.0);
                Some(len / (self.width * other.width))
            }
            (Gaussian, Gaussian) => {
                let s2 = self.sigma().powi(2) + other.sigma().powi(2);
                Some((-(x * x) / (2.0 * s2)).exp() / (2.0 * std::f64::consts::PI * s2).sqrt())
            }
            (Step, Gaussian) => Some(other.mass_between(x - self.width / 2.0, x + self.width / 2.0) / self.width),
            (Gaussian, Step) => Some(self.mass_between(x - other.width / 2.0, x + other.width / 2.0) / other.width),
        }
    }

    /// Kinks of the pair-sum density (for quadrature breakpoints).
    pub fn pair_sum_kinks(&self, other: &WavepacketModel) -> Vec<f64> {
        use PacketKind::*;
        match (self.kind, other.kind) {
            (Step, Step) => {
                let (a, b) = (self.width / 2.0, other.width / 2.0);
                let mut v = vec![-(a + b), -(a - b).abs(), 0.0, (a - b).abs(), a + b];
                v.dedup();
                v
            }
            (Step, Point) | (Point, Step) => {
                let h = self.width.max(other.width) / 2.0;
                vec![-h, 0.0, h]
            }
            _ => vec![0.0],
        }
    }

    pub fn pair_sum_half_support(&self, other: &WavepacketModel) -> f64 {
        match (self.kind, other.kind) {
            (PacketKind::Gaussian, PacketKind::Gaussian) => {
                GAUSSIAN_CUTOFF * (self.sigma().powi(2) + other.sigma().powi(2)).sqrt()
            }
            _ => self.half_support() + other.half_support(),
        }
    }
}

/// Density of `model` attached to arm `arm` at height z and time t.
pub fn density(paths: &PathPair, arm: usize, z: f64, t: f64, model: &WavepacketModel) -> Result<Profile> {
    paths.check_time(t)?;
    let center = paths.arm(arm)?.z(t);
    Ok(match model.kind {
        PacketKind::Point => Profile::PointMass { at: center, weight: 1.0 },
        _ => Profile::Value(model.profile(z - center)),
    })
}

/// Probability current j = |ψ|² v_z for a rigidly transported packet.
pub fn current(paths: &PathPair, arm: usize, z: f64, t: f64, model: &WavepacketModel) -> Result<Profile> {
    let v = paths.arm(arm)?.v_z(t);
    Ok(match density(paths, arm, z, t, model)? {
        Profile::PointMass { at, weight } => Profile::PointMass { at, weight: weight * v },
        Profile::Value(d) => Profile::Value(d * v),
    })
}

/// Checks that the packet support on both arms stays above `z_min`.
pub fn check_support(paths: &PathPair, model: &WavepacketModel, z_min: f64) -> Result<()> {
    model.validate()?;
    for k in 0..2 {
        let low = paths.arms[k].min_height(paths.duration) - model.half_support();
        if low < z_min {
            return Err(PhaseError::domain(format!(
                "packet on arm {} reaches down to z = {low:e} m, below z_min = {z_min:e} m; \
                 packets that fill the gap to the mirror are handled by the averaged double-path phase",
                k + 1
            )));
        }
    }
    Ok(())
}
