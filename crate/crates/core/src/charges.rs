//! Bi-frequency solitary waves, the SU(1,1) action on them, and the
//! conserved charges `Q`, `Sigma` and the energy.
//!
//! Conventions: Dirac representation, `beta = diag(I, -I)`,
//! `gamma^2 = [[0, sigma_2], [-sigma_2, 0]]`, and charge conjugation
//! `C psi = i gamma^2 conj(psi)`. A bi-frequency wave is
//!
//! ```text
//! psi = [v xi; i u sigma_r xi] e^{-i omega t} + [-i u sigma_r eta; v eta] e^{i omega t}
//! ```
//!
//! with `sigma_r = sigma . x / r`. On this family `C` acts on the spinor
//! parameters as `(xi, eta) -> (J conj(eta), -J conj(xi))`, `J = [[0, 1], [-1, 0]]`,
//! and the angular integrals reduce to
//!
//! ```text
//! Q = (|xi|^2 + |eta|^2) Q0,   Sigma = 2 (xi_1 eta_2 - xi_2 eta_1) Q0,
//! Q0 = 4 pi int (v^2 + u^2) r^2 dr.
//! ```

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{build_grid, HalfLineGrid};
use crate::profile::SolitonProfile;

pub type C64 = Complex<f64>;
pub type Spinor = [C64; 2];

const NORM_TOL: f64 = 1e-10;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn norm_sq(s: &Spinor) -> f64 {
    s[0].norm_sqr() + s[1].norm_sqr()
}

/// `J conj(s)` with `J = i sigma_2 = [[0, 1], [-1, 0]]`.
fn j_conj(s: &Spinor) -> Spinor {
    [s[1].conj(), -s[0].conj()]
}

/// Element `a + b C` of SU(1,1), `|a|^2 - |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11 {
    pub a: C64,
    pub b: C64,
}

impl Su11 {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if (det - 1.0).abs() > NORM_TOL * (a.norm_sqr() + b.norm_sqr()) {
            return Err(Error::InvalidArgument(format!("|a|^2 - |b|^2 = {det}, expected 1")));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self { a: c(1.0), b: c(0.0) }
    }

    /// `(cosh s) e^{i alpha} + (sinh s) e^{i beta} C`.
    pub fn from_angles(s: f64, alpha: f64, beta: f64) -> Self {
        Self { a: C64::from_polar(s.cosh(), alpha), b: C64::from_polar(s.sinh(), beta) }
    }

    /// `self * other`, i.e. `other` applied first. With `C` antilinear and
    /// `C^2 = 1` this is the product of `[[a, b], [conj b, conj a]]` matrices.
    pub fn compose(&self, other: &Su11) -> Su11 {
        Su11 {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }
}

/// A bi-frequency wave given by its profile and spinor parameters.
#[derive(Debug, Clone)]
pub struct SpinorField {
    pub profile: Arc<SolitonProfile>,
    pub xi: Spinor,
    pub eta: Spinor,
}

impl SpinorField {
    pub fn omega(&self) -> f64 {
        self.profile.omega
    }

    pub fn is_one_frequency(&self) -> bool {
        norm_sq(&self.eta) == 0.0
    }

    /// The four components at the point `r * dir` and time `t`.
    pub fn value(&self, r: f64, dir: [f64; 3], t: f64) -> [C64; 4] {
        let (v, u) = self.profile.eval(r);
        let sr = |s: &Spinor| -> Spinor {
            // sigma . n
            let [x, y, z] = dir;
            [c(z) * s[0] + C64::new(x, -y) * s[1], C64::new(x, y) * s[0] - c(z) * s[1]]
        };
        let em = C64::from_polar(1.0, -self.omega() * t);
        let ep = C64::from_polar(1.0, self.omega() * t);
        let i = C64::i();
        let sx = sr(&self.xi);
        let se = sr(&self.eta);
        let mut out = [c(0.0); 4];
        for k in 0..2 {
            out[k] = c(v) * self.xi[k] * em - i * c(u) * se[k] * ep;
            out[k + 2] = i * c(u) * sx[k] * em + c(v) * self.eta[k] * ep;
        }
        out
    }

    /// `psi-bar psi` at a point; equals `v^2 - u^2` on the whole family.
    pub fn scalar_density(&self, r: f64, dir: [f64; 3], t: f64) -> f64 {
        let p = self.value(r, dir, t);
        p[0].norm_sqr() + p[1].norm_sqr() - p[2].norm_sqr() - p[3].norm_sqr()
    }

    /// Whether `psi-bar psi > 0` at every profile sample.
    pub fn is_attracting(&self) -> bool {
        let scale = norm_sq(&self.xi) - norm_sq(&self.eta);
        scale > 0.0 && self.profile.samples.iter().all(|s| s.v * s.v - s.u * s.u > 0.0)
    }

    /// Max-norm residual of the nonlinear Dirac equation over `nodes`.
    ///
    /// Each frequency component of the ansatz satisfies the equation exactly
    /// when the profile solves its radial system, so the residual is the
    /// profile residual weighted by the spinor amplitudes.
    pub fn nld_residual(&self, nodes: &[f64]) -> f64 {
        let amp = norm_sq(&self.xi).sqrt() + norm_sq(&self.eta).sqrt();
        nodes
            .iter()
            .map(|&r| {
                let (a, b) = self.profile.residual_at(r);
                amp * a.abs().max(b.abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Bi-frequency wave with parameters `(xi, eta)`, `|xi|^2 - |eta|^2 = 1`.
pub fn make_bifrequency(profile: Arc<SolitonProfile>, xi: Spinor, eta: Spinor) -> Result<SpinorField> {
    let q = norm_sq(&xi) - norm_sq(&eta);
    if (q - 1.0).abs() > NORM_TOL * (1.0 + norm_sq(&xi) + norm_sq(&eta)) {
        return Err(Error::Normalization(q));
    }
    Ok(SpinorField { profile, xi, eta })
}

/// One-frequency wave with spin up.
pub fn one_frequency(profile: Arc<SolitonProfile>) -> SpinorField {
    SpinorField { profile, xi: [c(1.0), c(0.0)], eta: [c(0.0), c(0.0)] }
}

/// `(a + b C) psi` in closed form on the ansatz family.
pub fn apply_su11(g: &Su11, field: &SpinorField) -> SpinorField {
    let cx = j_conj(&field.eta);
    let ce = j_conj(&field.xi);
    SpinorField {
        profile: Arc::clone(&field.profile),
        xi: [g.a * field.xi[0] + g.b * cx[0], g.a * field.xi[1] + g.b * cx[1]],
        eta: [g.a * field.eta[0] - g.b * ce[0], g.a * field.eta[1] - g.b * ce[1]],
    }
}

/// Quadrature used for radial integrals.
#[derive(Debug, Clone)]
pub struct RadialQuadrature {
    grid: HalfLineGrid,
}

impl RadialQuadrature {
    pub fn new(n: usize, map_scale: f64) -> Result<Self> {
        Ok(Self { grid: build_grid(n, map_scale)? })
    }

    /// `4 pi int g(r) r^2 dr`.
    pub fn volume<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        let vals: Vec<f64> = self.grid.nodes.iter().map(|&r| g(r) * r * r).collect();
        4.0 * PI * self.grid.integrate(&vals)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.grid.nodes
    }
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        Self::new(400, 10.0).expect("valid default grid")
    }
}

/// `Q0 = 4 pi int (v^2 + u^2) r^2 dr` of a profile.
pub fn profile_charge(profile: &SolitonProfile, quad: &RadialQuadrature) -> f64 {
    quad.volume(|r| {
        let (v, u) = profile.eval(r);
        v * v + u * u
    })
}

/// `(Q, Sigma)` of a field.
pub fn charges(field: &SpinorField, quad: &RadialQuadrature) -> (f64, C64) {
    let q0 = profile_charge(&field.profile, quad);
    let (x, e) = (&field.xi, &field.eta);
    let q = (norm_sq(x) + norm_sq(e)) * q0;
    let sigma = 2.0 * (x[0] * e[1] - x[1] * e[0]) * q0;
    (q, sigma)
}

/// Energy of a one-frequency wave,
/// `E = 4 pi int [v (u' + 2u/r) - u v' + M (v^2 - u^2) - (v^2 - u^2)^2 / 2] r^2 dr`,
/// the Hamiltonian of the cubic Soler Lagrangian on the ansatz.
pub fn energy(profile: &SolitonProfile, quad: &RadialQuadrature) -> f64 {
    quad.volume(|r| {
        let (v, u, dv, du) = profile.eval_with_derivative(r);
        let s = v * v - u * u;
        v * (du + 2.0 * u / r) - u * dv + profile.mass * s - 0.5 * s * s
    })
}

/// One row of the charge table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeRow {
    pub omega: f64,
    pub q: f64,
    pub sigma: C64,
    pub energy: f64,
}

/// Charges of `g` applied to the one-frequency wave, and its energy, for
/// each profile.
pub fn charge_table(profiles: &[Arc<SolitonProfile>], g: &Su11, quad: &RadialQuadrature) -> Vec<ChargeRow> {
    profiles
        .iter()
        .map(|p| {
            let f = apply_su11(g, &one_frequency(Arc::clone(p)));
            let (q, sigma) = charges(&f, quad);
            ChargeRow { omega: p.omega, q, sigma, energy: energy(p, quad) }
        })
        .collect()
}

pub fn write_charge_csv<W: Write>(rows: &[ChargeRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "omega,Q,Sigma_re,Sigma_im,E")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.omega, r.q, r.sigma.re, r.sigma.im, r.energy)?;
    }
    Ok(())
}
