//! Rational Chebyshev collocation on the half-line.
//!
//! Nodes are the interior Chebyshev (Gauss) points `x_k = cos((2k+1)pi/2n)`
//! pushed to `(0, inf)` by `r = L(1+x)/(1-x)`. Neither endpoint is a node,
//! so coefficients singular at `r = 0` are always finite on the grid.

use faer::Mat;

use crate::error::{Error, Result};
use crate::profile::SolitonProfile;

#[derive(Debug, Clone)]
pub struct HalfLineGrid {
    pub n: usize,
    pub map_scale: f64,
    /// Chebyshev abscissae in `(-1, 1)`, increasing.
    pub cheb: Vec<f64>,
    /// Radial nodes, strictly increasing.
    pub nodes: Vec<f64>,
    /// Mapped collocation derivative, `(D f)_i ~ f'(r_i)`.
    pub diff: Mat<f64>,
    /// Quadrature weights for `int_0^inf g(r) dr`.
    pub quad: Vec<f64>,
}

pub fn build_grid(n: usize, map_scale: f64) -> Result<HalfLineGrid> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("grid needs n >= 16 nodes, got {n}")));
    }
    if !(map_scale > 0.0 && map_scale.is_finite()) {
        return Err(Error::InvalidArgument(format!("map scale must be positive, got {map_scale}")));
    }
    let pi = std::f64::consts::PI;
    // index k = n-1-i so that x (and r) increase with i
    let theta: Vec<f64> = (0..n)
        .map(|i| (2 * (n - 1 - i) + 1) as f64 * pi / (2 * n) as f64)
        .collect();
    let cheb: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let bary: Vec<f64> = (0..n)
        .map(|i| {
            let k = n - 1 - i;
            let s = theta[i].sin();
            if k % 2 == 0 { s } else { -s }
        })
        .collect();

    let mut dx = Mat::<f64>::zeros(n, n);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            // x_i - x_j without cancellation
            let diff = -2.0 * ((theta[i] + theta[j]) / 2.0).sin() * ((theta[i] - theta[j]) / 2.0).sin();
            let d = (bary[j] / bary[i]) / diff;
            dx[(i, j)] = d;
            row_sum += d;
        }
        dx[(i, i)] = -row_sum;
    }

    let nodes: Vec<f64> = cheb
        .iter()
        .zip(&theta)
        .map(|(&x, &t)| {
            // 1 - x = 2 sin^2(t/2) keeps precision near x = 1
            let one_minus = 2.0 * (t / 2.0).sin().powi(2);
            map_scale * (1.0 + x) / one_minus
        })
        .collect();
    let jac: Vec<f64> = theta
        .iter()
        .map(|&t| {
            let one_minus = 2.0 * (t / 2.0).sin().powi(2);
            one_minus * one_minus / (2.0 * map_scale)
        })
        .collect();
    let diff = Mat::from_fn(n, n, |i, j| jac[i] * dx[(i, j)]);

    // Fejer's first rule on the Gauss-Chebyshev points
    let quad: Vec<f64> = theta
        .iter()
        .zip(&jac)
        .map(|(&t, &jc)| {
            let s: f64 = (1..=n / 2)
                .map(|j| (2.0 * j as f64 * t).cos() / (4.0 * (j * j) as f64 - 1.0))
                .sum();
            (2.0 / n as f64) * (1.0 - 2.0 * s) / jc
        })
        .collect();

    Ok(HalfLineGrid { n, map_scale, cheb, nodes, diff, quad })
}

impl HalfLineGrid {
    /// Quadrature weights for `int_0^inf g(r) r^2 dr`.
    pub fn radial_weights(&self) -> Vec<f64> {
        self.quad.iter().zip(&self.nodes).map(|(q, r)| q * r * r).collect()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.quad.iter().zip(values).map(|(q, g)| q * g).sum()
    }

    /// Profile values `(v_i, u_i, f_i)` on the nodes, `f = mass - (v^2 - u^2)`.
    pub fn resample(&self, profile: &SolitonProfile) -> Resampled {
        let vals = profile.evaluate(&self.nodes);
        let v: Vec<f64> = vals.iter().map(|p| p.0).collect();
        let u: Vec<f64> = vals.iter().map(|p| p.1).collect();
        let f = v.iter().zip(&u).map(|(v, u)| profile.mass - (v * v - u * u)).collect();
        Resampled { v, u, f }
    }
}

#[derive(Debug, Clone)]
pub struct Resampled {
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub f: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_grid(15, 10.0).is_err());
        assert!(build_grid(64, 0.0).is_err());
        assert!(build_grid(64, -1.0).is_err());
    }

    #[test]
    fn nodes_are_positive_and_increasing() {
        let g = build_grid(128, 10.0).unwrap();
        assert!(g.nodes[0] > 0.0);
        assert!(g.nodes.windows(2).all(|w| w[1] > w[0]));
        assert!(g.nodes[g.n - 1].is_finite());
    }

    #[test]
    fn half_the_nodes_lie_inside_the_map_scale() {
        let g = build_grid(100, 10.0).unwrap();
        assert_eq!(g.nodes.iter().filter(|&&r| r < 10.0).count(), 50);
    }

    #[test]
    fn differentiates_constants_to_zero() {
        let g = build_grid(128, 10.0).unwrap();
        let dmax = (0..g.n)
            .flat_map(|i| (0..g.n).map(move |j| (i, j)))
            .map(|(i, j)| g.diff[(i, j)].abs())
            .fold(0.0, f64::max);
        for i in 0..g.n {
            let s: f64 = (0..g.n).map(|j| g.diff[(i, j)]).sum();
            assert!(s.abs() < 1e-10 * dmax);
        }
    }

    #[test]
    fn integrates_exponentials() {
        let g = build_grid(128, 10.0).unwrap();
        let e: Vec<f64> = g.nodes.iter().map(|r| (-r).exp()).collect();
        assert!((g.integrate(&e) - 1.0).abs() < 1e-8);
        let m: Vec<f64> = g.nodes.iter().map(|r| r * r * (-2.0 * r).exp()).collect();
        assert!((g.integrate(&m) - 0.25).abs() < 0.25e-8);
    }

    #[test]
    fn resampling_zero_profile_gives_mass() {
        let g = build_grid(32, 10.0).unwrap();
        let p = SolitonProfile::zero(0.5, 1.0);
        let s = g.resample(&p);
        assert!(s.f.iter().all(|&f| f == 1.0));
    }
}
