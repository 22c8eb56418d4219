//! Ground-state radial profiles of the one-frequency solitary wave.
//!
//! The wave is `phi(x) = [v(r) xi; i u(r) sigma_r xi]` and `(v, u)` solve
//!
//! ```text
//! omega v =  u' + 2u/r + (m - (v^2 - u^2)) v
//! omega u = -v'        - (m - (v^2 - u^2)) u
//! ```
//!
//! on `r > 0` with `u(0) = 0`, `v'(0) = 0` and exponential decay at infinity.
//! The profile is found by shooting on `v(0)`: too large an amplitude makes
//! `v` cross zero (or the trajectory blow up), too small makes `v` turn back
//! up. Bisection between the two outcomes converges to the nodeless ground
//! state. Beyond the radius where the bracketing trajectories still agree the
//! profile is continued by the decaying solution of the linearized equations,
//! `v = A e^{-kappa r} / r`.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::write_atomic;

/// Knobs for the shooting solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ShootingOptions {
    /// Integration span. `None` means `min(40 / kappa, 200)`.
    pub r_max: Option<f64>,
    /// Radius where the series expansion hands over to the integrator.
    pub r_start: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Largest step; also bounds the spacing of the stored samples.
    pub h_max: f64,
    pub max_bisections: usize,
    /// Relative disagreement between the bracketing trajectories at which the
    /// integrated profile stops being trusted and the tail model takes over.
    pub agreement_tol: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            r_max: None,
            r_start: 1e-6,
            rtol: 1e-12,
            atol: 1e-14,
            h_max: 0.05,
            max_bisections: 200,
            agreement_tol: 1e-6,
        }
    }
}

impl ShootingOptions {
    /// Same options with tolerances and maximal step tightened, used for
    /// self-convergence checks.
    pub fn refined(&self) -> Self {
        Self {
            rtol: self.rtol / 32.0,
            atol: self.atol / 32.0,
            h_max: self.h_max / 2.0,
            ..self.clone()
        }
    }

    fn key(&self) -> String {
        format!(
            "{:?}|{}|{}|{}|{}|{}|{}",
            self.r_max,
            self.r_start,
            self.rtol,
            self.atol,
            self.h_max,
            self.max_bisections,
            self.agreement_tol
        )
    }
}

/// One stored point of the integrated profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub r: f64,
    pub v: f64,
    pub u: f64,
}

#[derive(Debug, Clone, Copy)]
struct Jet {
    dv: f64,
    du: f64,
    d2v: f64,
    d2u: f64,
}

/// Radial profile `(v, u)` of a one-frequency solitary wave.
#[derive(Debug, Clone)]
pub struct SolitonProfile {
    pub omega: f64,
    pub mass: f64,
    pub v_at_zero: f64,
    pub kappa: f64,
    /// Samples on the solver's native (adaptive) grid, starting at `r = 0`.
    pub samples: Vec<ProfileSample>,
    jets: Vec<Jet>,
    tail_amplitude: f64,
}

fn rhs(omega: f64, mass: f64, r: f64, v: f64, u: f64) -> (f64, f64) {
    let f = mass - (v * v - u * u);
    (-(f + omega) * u, (omega - f) * v - 2.0 * u / r)
}

fn jet(omega: f64, mass: f64, s: &ProfileSample) -> Jet {
    let (v, u) = (s.v, s.u);
    let f = mass - (v * v - u * u);
    if s.r == 0.0 {
        let u1 = (omega - f) * v / 3.0;
        return Jet {
            dv: 0.0,
            du: u1,
            d2v: -(f + omega) * u1,
            d2u: 0.0,
        };
    }
    let r = s.r;
    let (dv, du) = rhs(omega, mass, r, v, u);
    let df = -(2.0 * v * dv - 2.0 * u * du);
    let d2v = -df * u - (f + omega) * du;
    let d2u = -df * v + (omega - f) * dv - 2.0 * du / r + 2.0 * u / (r * r);
    Jet { dv, du, d2v, d2u }
}

/// Quintic Hermite basis on `[0, 1]` and its derivative.
fn hermite5(t: f64) -> ([f64; 6], [f64; 6]) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let b = [
        1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
        t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
        0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
        10.0 * t3 - 15.0 * t4 + 6.0 * t5,
        -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
        0.5 * t3 - t4 + 0.5 * t5,
    ];
    let d = [
        -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
        1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
        t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
        30.0 * t2 - 60.0 * t3 + 30.0 * t4,
        -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
        1.5 * t2 - 4.0 * t3 + 2.5 * t4,
    ];
    (b, d)
}

impl SolitonProfile {
    /// Builds a profile from native samples (first sample at `r = 0`). The
    /// tail model is anchored at the last sample.
    pub fn from_samples(omega: f64, mass: f64, samples: Vec<ProfileSample>) -> Result<Self> {
        validate_frequency(omega, mass)?;
        if samples.len() < 2 || samples[0].r != 0.0 {
            return Err(Error::InvalidArgument(
                "profile needs at least two samples starting at r = 0".into(),
            ));
        }
        if samples.windows(2).any(|w| w[1].r <= w[0].r) {
            return Err(Error::InvalidArgument(
                "profile samples must be strictly increasing in r".into(),
            ));
        }
        let kappa = (mass * mass - omega * omega).sqrt();
        let jets = samples.iter().map(|s| jet(omega, mass, s)).collect();
        let last = samples[samples.len() - 1];
        let tail_amplitude = last.v * last.r * (kappa * last.r).exp();
        Ok(Self {
            omega,
            mass,
            v_at_zero: samples[0].v,
            kappa,
            samples,
            jets,
            tail_amplitude,
        })
    }

    /// The identically vanishing profile. Not a solution of the nonlinear
    /// equations for any `omega`, but handy for checking free operators.
    pub fn zero(omega: f64, mass: f64) -> Self {
        let samples = vec![
            ProfileSample { r: 0.0, v: 0.0, u: 0.0 },
            ProfileSample { r: 1.0, v: 0.0, u: 0.0 },
        ];
        Self::from_samples(omega, mass, samples).expect("valid frequency")
    }

    /// Largest radius covered by integrated samples.
    pub fn r_match(&self) -> f64 {
        self.samples[self.samples.len() - 1].r
    }

    /// Default integration span for this frequency.
    pub fn default_r_max(kappa: f64) -> f64 {
        (40.0 / kappa).min(200.0)
    }

    fn tail(&self, r: f64) -> (f64, f64, f64, f64) {
        let e = self.tail_amplitude * (-self.kappa * r).exp();
        let v = e / r;
        let dv = -e * (self.kappa / r + 1.0 / (r * r));
        let u = -dv / (self.mass + self.omega);
        // du from the linear tail equation u' = (omega - m) v - 2u/r
        let du = (self.omega - self.mass) * v - 2.0 * u / r;
        (v, u, dv, du)
    }

    /// `(v, u, v', u')` at `r`.
    pub fn eval_with_derivative(&self, r: f64) -> (f64, f64, f64, f64) {
        let r = r.max(0.0);
        if r >= self.r_match() {
            if self.tail_amplitude == 0.0 {
                return (0.0, 0.0, 0.0, 0.0);
            }
            return self.tail(r);
        }
        let i = self.samples.partition_point(|s| s.r <= r).saturating_sub(1);
        let (s0, s1) = (&self.samples[i], &self.samples[i + 1]);
        let (j0, j1) = (&self.jets[i], &self.jets[i + 1]);
        let h = s1.r - s0.r;
        let t = (r - s0.r) / h;
        let (b, d) = hermite5(t);
        let h2 = h * h;
        let v = b[0] * s0.v + b[1] * h * j0.dv + b[2] * h2 * j0.d2v + b[3] * s1.v
            + b[4] * h * j1.dv
            + b[5] * h2 * j1.d2v;
        let u = b[0] * s0.u + b[1] * h * j0.du + b[2] * h2 * j0.d2u + b[3] * s1.u
            + b[4] * h * j1.du
            + b[5] * h2 * j1.d2u;
        let dv = (d[0] * s0.v + d[1] * h * j0.dv + d[2] * h2 * j0.d2v + d[3] * s1.v
            + d[4] * h * j1.dv
            + d[5] * h2 * j1.d2v)
            / h;
        let du = (d[0] * s0.u + d[1] * h * j0.du + d[2] * h2 * j0.d2u + d[3] * s1.u
            + d[4] * h * j1.du
            + d[5] * h2 * j1.d2u)
            / h;
        (v, u, dv, du)
    }

    /// `(v, u)` at `r >= 0`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let (v, u, _, _) = self.eval_with_derivative(r);
        (v, u)
    }

    /// Evaluates the profile on arbitrary nodes.
    pub fn evaluate(&self, nodes: &[f64]) -> Vec<(f64, f64)> {
        nodes.iter().map(|&r| self.eval(r)).collect()
    }

    /// Residuals of both profile equations at `r > 0`, computed from the
    /// interpolant and its derivative.
    pub fn residual_at(&self, r: f64) -> (f64, f64) {
        let (v, u, dv, du) = self.eval_with_derivative(r);
        let f = self.mass - (v * v - u * u);
        (
            du + 2.0 * u / r + (f - self.omega) * v,
            dv + (f + self.omega) * u,
        )
    }

    /// Max-norm of the equation residual over the native samples and the
    /// midpoints between them (a 2x refinement of the native grid).
    pub fn max_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for w in self.samples.windows(2).skip(1) {
            for r in [w[0].r, 0.5 * (w[0].r + w[1].r)] {
                let (a, b) = self.residual_at(r);
                worst = worst.max(a.abs()).max(b.abs());
            }
        }
        worst
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# omega={}", self.omega)?;
        writeln!(w, "# mass={}", self.mass)?;
        writeln!(w, "# kappa={}", self.kappa)?;
        writeln!(w, "# v0={}", self.v_at_zero)?;
        writeln!(w, "r,v,u")?;
        for s in &self.samples {
            writeln!(w, "{},{},{}", s.r, s.v, s.u)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut omega = None;
        let mut mass = None;
        let mut samples = Vec::new();
        let mut seen_header = false;
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let (key, value) = meta
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad comment line `{line}`")))?;
                let value: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad value in `{line}`")))?;
                match key.trim() {
                    "omega" => omega = Some(value),
                    "mass" => mass = Some(value),
                    _ => {}
                }
                continue;
            }
            if !seen_header {
                if line != "r,v,u" {
                    return Err(Error::Parse(format!("expected header `r,v,u`, got `{line}`")));
                }
                seen_header = true;
                continue;
            }
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad row `{line}`")))?;
            if cols.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns, got `{line}`")));
            }
            samples.push(ProfileSample { r: cols[0], v: cols[1], u: cols[2] });
        }
        let omega = omega.ok_or_else(|| Error::Parse("missing `# omega=`".into()))?;
        let mass = mass.ok_or_else(|| Error::Parse("missing `# mass=`".into()))?;
        Self::from_samples(omega, mass, samples)
    }
}

pub(crate) fn validate_frequency(omega: f64, mass: f64) -> Result<()> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::InvalidArgument(format!("mass must be positive, got {mass}")));
    }
    if !(omega > 0.0 && omega < mass) {
        return Err(Error::InvalidArgument(format!(
            "omega must lie in (0, mass) = (0, {mass}), got {omega}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    /// `v` crossed zero or the trajectory escaped: amplitude too large.
    Overshoot,
    /// `u` changed sign, so `v` turned back up: amplitude too small.
    Undershoot,
    /// Reached `r_max` without deciding.
    Reached,
}

struct Shot {
    samples: Vec<ProfileSample>,
    outcome: Outcome,
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn shoot(omega: f64, mass: f64, v0: f64, r_end: f64, opts: &ShootingOptions) -> Shot {
    let f0 = mass - v0 * v0;
    let u1 = (omega - f0) * v0 / 3.0;
    let v2 = -(f0 + omega) * u1 / 2.0;
    let r0 = opts.r_start;
    let mut samples = vec![
        ProfileSample { r: 0.0, v: v0, u: 0.0 },
        ProfileSample { r: r0, v: v0 + v2 * r0 * r0, u: u1 * r0 },
    ];
    let escape = 1e3 * (1.0 + v0.abs());
    let (mut r, mut y) = (r0, [samples[1].v, samples[1].u]);
    let mut h = (1e-3f64).min(opts.h_max);
    let f = |r: f64, y: &[f64; 2]| {
        let (a, b) = rhs(omega, mass, r, y[0], y[1]);
        [a, b]
    };
    let mut k = [[0.0f64; 2]; 7];
    k[0] = f(r, &y);
    while r < r_end {
        if r + h > r_end {
            h = r_end - r;
        }
        for s in 1..7 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                yi[0] += h * A[s][j] * kj[0];
                yi[1] += h * A[s][j] * kj[1];
            }
            k[s] = f(r + C[s] * h, &yi);
        }
        let mut ynew = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            ynew[0] += h * A[6][j] * kj[0];
            ynew[1] += h * A[6][j] * kj[1];
        }
        let mut err = 0.0;
        for c in 0..2 {
            let e: f64 = (0..7).map(|s| E[s] * k[s][c]).sum::<f64>() * h;
            let sc = opts.atol + opts.rtol * y[c].abs().max(ynew[c].abs());
            err += (e / sc) * (e / sc);
        }
        let err = (err / 2.0).sqrt();
        if !err.is_finite() {
            return Shot { samples, outcome: Outcome::Overshoot };
        }
        if err <= 1.0 {
            r += h;
            y = ynew;
            // FSAL: stage 7 is the derivative at the new point
            k[0] = k[6];
            if !(y[0].is_finite() && y[1].is_finite()) || y[0].abs() + y[1].abs() > escape {
                return Shot { samples, outcome: Outcome::Overshoot };
            }
            if y[0] < 0.0 {
                return Shot { samples, outcome: Outcome::Overshoot };
            }
            if y[1] < 0.0 {
                return Shot { samples, outcome: Outcome::Undershoot };
            }
            samples.push(ProfileSample { r, v: y[0], u: y[1] });
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(opts.h_max);
        if h < 1e-14 * r.max(1.0) {
            return Shot { samples, outcome: Outcome::Overshoot };
        }
    }
    Shot { samples, outcome: Outcome::Reached }
}

/// Linear interpolation on raw trajectory samples; only used to compare the
/// two bracketing shots.
fn raw_v_at(samples: &[ProfileSample], r: f64) -> Option<f64> {
    let last = samples.last()?;
    if r > last.r {
        return None;
    }
    let i = samples.partition_point(|s| s.r <= r).saturating_sub(1);
    if i + 1 >= samples.len() {
        return Some(samples[i].v);
    }
    let (a, b) = (&samples[i], &samples[i + 1]);
    let t = (r - a.r) / (b.r - a.r);
    Some(a.v + t * (b.v - a.v))
}

/// Solves the profile equations for the nodeless ground state.
pub fn solve_profile(omega: f64, mass: f64, opts: &ShootingOptions) -> Result<SolitonProfile> {
    validate_frequency(omega, mass)?;
    let kappa = (mass * mass - omega * omega).sqrt();
    let r_max = opts.r_max.unwrap_or_else(|| SolitonProfile::default_r_max(kappa));

    // u'(0) > 0 requires v(0)^2 > mass - omega
    let mut lo = (mass - omega).sqrt() * (1.0 + 1e-9);
    let mut lo_shot = shoot(omega, mass, lo, r_max, opts);
    if lo_shot.outcome == Outcome::Overshoot {
        return Err(Error::NoConvergence {
            omega,
            reason: "smallest admissible amplitude already overshoots".into(),
        });
    }
    let mut hi = 2.0 * lo;
    let mut hi_shot = shoot(omega, mass, hi, r_max, opts);
    let mut expansions = 0;
    while hi_shot.outcome != Outcome::Overshoot {
        if hi_shot.outcome == Outcome::Undershoot {
            lo = hi;
            lo_shot = hi_shot;
        }
        hi *= 2.0;
        expansions += 1;
        if expansions > 40 {
            return Err(Error::NoConvergence {
                omega,
                reason: "no overshooting amplitude found".into(),
            });
        }
        hi_shot = shoot(omega, mass, hi, r_max, opts);
    }

    let mut iterations = 0;
    while lo_shot.outcome != Outcome::Reached {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let shot = shoot(omega, mass, mid, r_max, opts);
        match shot.outcome {
            Outcome::Overshoot => {
                hi = mid;
                hi_shot = shot;
            }
            Outcome::Undershoot => {
                lo = mid;
                lo_shot = shot;
            }
            Outcome::Reached => {
                lo_shot = shot;
                break;
            }
        }
        iterations += 1;
        if iterations >= opts.max_bisections {
            return Err(Error::NoConvergence {
                omega,
                reason: format!("bracket [{lo}, {hi}] still open after {iterations} bisections"),
            });
        }
    }

    // Keep the undershooting trajectory up to where the overshooting one
    // still agrees with it; the true solution lies between the two.
    let mut keep = lo_shot.samples.len();
    if lo_shot.outcome != Outcome::Reached {
        for (i, s) in lo_shot.samples.iter().enumerate().skip(1) {
            let agree = raw_v_at(&hi_shot.samples, s.r)
                .map(|vh| (vh - s.v).abs() <= opts.agreement_tol * s.v.abs())
                .unwrap_or(false);
            if !agree {
                keep = i;
                break;
            }
        }
    }
    let samples: Vec<ProfileSample> = lo_shot.samples[..keep.max(2)].to_vec();
    let last = samples[samples.len() - 1];
    // The tail model is only valid once the nonlinearity is negligible.
    if last.v * last.v > 1e-6 * mass {
        return Err(Error::BlowUp { omega, r: last.r });
    }
    SolitonProfile::from_samples(omega, mass, samples)
}

/// Memoizes solved profiles by `(omega, mass, options)`, optionally backed
/// by a directory of profile CSV files. Concurrent insertions of the same
/// key keep the first stored profile.
#[derive(Debug, Default)]
pub struct ProfileCache {
    entries: Mutex<HashMap<String, Arc<SolitonProfile>>>,
    dir: Option<PathBuf>,
}

impl ProfileCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        Self { entries: Mutex::default(), dir: Some(dir.into()) }
    }

    /// Cache rooted at `$SOLER_CACHE_DIR` when set, in-memory otherwise.
    pub fn from_env() -> Self {
        match std::env::var_os("SOLER_CACHE_DIR") {
            Some(d) if !d.is_empty() => Self::with_dir(PathBuf::from(d)),
            _ => Self::new(),
        }
    }

    fn key(omega: f64, mass: f64, opts: &ShootingOptions) -> String {
        format!("{:016x}-{:016x}-{}", omega.to_bits(), mass.to_bits(), opts.key())
    }

    fn file_for(dir: &Path, key: &str) -> PathBuf {
        // FNV-1a keeps file names short and stable across runs
        let mut h: u64 = 0xcbf29ce484222325;
        for b in key.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        dir.join(format!("profile-{h:016x}.csv"))
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_or_solve(
        &self,
        omega: f64,
        mass: f64,
        opts: &ShootingOptions,
    ) -> Result<Arc<SolitonProfile>> {
        let key = Self::key(omega, mass, opts);
        if let Some(p) = self.entries.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(p));
        }
        let from_disk = self.dir.as_ref().and_then(|d| {
            let file = std::fs::File::open(Self::file_for(d, &key)).ok()?;
            SolitonProfile::read_csv(std::io::BufReader::new(file)).ok()
        });
        let solved = match from_disk {
            Some(p) => p,
            None => {
                let p = solve_profile(omega, mass, opts)?;
                if let Some(d) = &self.dir {
                    std::fs::create_dir_all(d)?;
                    write_atomic(&Self::file_for(d, &key), p.to_csv_string().as_bytes())?;
                }
                p
            }
        };
        let mut entries = self.entries.lock().expect("cache poisoned");
        let stored = entries.entry(key).or_insert_with(|| Arc::new(solved));
        Ok(Arc::clone(stored))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_frequencies_outside_the_gap() {
        let o = ShootingOptions::default();
        assert!(matches!(solve_profile(1.5, 1.0, &o), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_profile(1.0, 1.0, &o), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_profile(0.0, 1.0, &o), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_profile(-0.3, 1.0, &o), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn kappa_is_the_linear_decay_rate() {
        let p = solve_profile(0.9, 1.0, &ShootingOptions::default()).unwrap();
        assert!((p.kappa - 0.19f64.sqrt()).abs() < 1e-15);
        assert!((p.kappa - 0.43589).abs() < 1e-5);
    }

    #[test]
    fn origin_values_are_exact() {
        let p = solve_profile(0.7, 1.0, &ShootingOptions::default()).unwrap();
        let (v, u) = p.eval(0.0);
        assert_eq!(v, p.v_at_zero);
        assert_eq!(u, 0.0);
        let (_, _, dv, _) = p.eval_with_derivative(0.0);
        assert!(dv.abs() < 1e-12);
    }

    #[test]
    fn ground_state_is_nodeless_and_decays() {
        let p = solve_profile(0.5, 1.0, &ShootingOptions::default()).unwrap();
        assert!(p.samples.iter().all(|s| s.v > 0.0));
        for r in [50.0, 80.0, 120.0] {
            assert!(p.eval(r).0 > 0.0);
        }
        let (v1, _) = p.eval(60.0);
        let (v2, _) = p.eval(61.0);
        let slope = (v2 / v1).ln();
        // e^{-kappa r}/r: slope is -kappa - 1/r to first order
        assert!((slope + p.kappa + 1.0 / 60.5).abs() < 1e-3);
    }

    #[test]
    fn residual_is_small_on_refined_grid() {
        for omega in [0.2, 0.6, 0.99] {
            let p = solve_profile(omega, 1.0, &ShootingOptions::default()).unwrap();
            let res = p.max_residual();
            assert!(res < 1e-6, "omega = {omega}: residual {res}");
        }
    }

    #[test]
    fn beyond_match_point_the_tail_model_applies() {
        let p = solve_profile(0.9, 1.0, &ShootingOptions::default()).unwrap();
        let rm = p.r_match();
        let (v0, u0) = p.eval(rm);
        let (v1, u1) = p.eval(rm + 10.0);
        let bound = (-p.kappa * 10.0).exp() * (v0.abs() + u0.abs()) * 1.01;
        assert!(v1.abs() + u1.abs() < bound);
    }

    #[test]
    fn csv_round_trip_preserves_samples() {
        let p = solve_profile(0.8, 1.0, &ShootingOptions::default()).unwrap();
        let text = p.to_csv_string();
        assert!(text.starts_with("# omega=0.8\n# mass=1\n# kappa="));
        let q = SolitonProfile::read_csv(text.as_bytes()).unwrap();
        assert_eq!(p.samples, q.samples);
        assert_eq!(p.v_at_zero, q.v_at_zero);
        assert_eq!(p.eval(3.3), q.eval(3.3));
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(SolitonProfile::read_csv("r,v,u\n0,1,0\n".as_bytes()).is_err());
        assert!(SolitonProfile::read_csv("# omega=0.5\n# mass=1\nx,y\n".as_bytes()).is_err());
    }

    #[test]
    fn cache_returns_the_same_profile() {
        let cache = ProfileCache::new();
        let o = ShootingOptions::default();
        let a = cache.get_or_solve(0.6, 1.0, &o).unwrap();
        let b = cache.get_or_solve(0.6, 1.0, &o).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn disk_cache_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let o = ShootingOptions::default();
        let a = ProfileCache::with_dir(dir.path()).get_or_solve(0.6, 1.0, &o).unwrap();
        let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let b = ProfileCache::with_dir(dir.path()).get_or_solve(0.6, 1.0, &o).unwrap();
        assert_eq!(a.samples, b.samples);
    }
}
