//! Eigenvalues of the discretized operators and their classification.
//!
//! Each channel is solved at two resolutions, `n` and a finer partner. An
//! eigenvalue off the imaginary axis counts as an instability only if it has
//! a counterpart at the finer resolution and its eigenfunction is localized;
//! otherwise it is kept and tagged as a suspected artifact.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::build_grid;
use crate::linearization::{assemble, Channel, LinearOperator};
use crate::profile::SolitonProfile;

pub type C64 = Complex<f64>;

/// `lambda = -i mu` for an eigenvalue `mu` of the stored real matrix.
pub fn lambda_from_mu(mu: C64) -> C64 {
    C64::new(mu.im, -mu.re)
}

pub fn mu_from_lambda(lambda: C64) -> C64 {
    C64::new(-lambda.im, lambda.re)
}

fn sort_key(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re))
}

#[derive(Debug, Clone)]
pub struct RawSpectrum {
    /// Eigenvalues `lambda`, sorted by `(Im, Re)`.
    pub eigenvalues: Vec<C64>,
    /// Eigenvectors aligned with `eigenvalues` when requested.
    pub vectors: Option<Vec<Vec<C64>>>,
}

fn eig_failure(size: usize, e: impl std::fmt::Debug) -> Error {
    Error::Eigensolver { size, reason: format!("{e:?}") }
}

/// Eigenvalues `mu` of a real matrix.
pub fn matrix_eigenvalues(m: &Mat<f64>) -> Result<Vec<C64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    if entries(m).any(|x| !x.is_finite()) {
        return Err(Error::Eigensolver { size: m.nrows(), reason: "non-finite entries".into() });
    }
    let (b, _) = balance(m);
    b.eigenvalues().map_err(|e| eig_failure(m.nrows(), e))
}

/// Diagonal similarity `B = D^{-1} M D` equalizing row and column norms,
/// with power-of-two scales so that no rounding is introduced.
///
/// The collocation operators mix entries of wildly different magnitude
/// (nodes span many decades), and an unbalanced QR iteration loses the
/// pairing symmetries of the spectrum there.
pub fn balance(m: &Mat<f64>) -> (Mat<f64>, Vec<f64>) {
    let n = m.nrows();
    let mut b = m.clone();
    let mut d = vec![1.0; n];
    let radix = 2.0_f64;
    for _sweep in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += b[(j, i)] * b[(j, i)];
                    r += b[(i, j)] * b[(i, j)];
                }
            }
            let (mut c, mut r) = (c.sqrt(), r.sqrt());
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let total = c + r;
            let mut f = 1.0;
            while c < r / radix {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while c >= r * radix {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if c + r < 0.95 * total {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    b[(i, j)] /= f;
                    b[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
    (b, d)
}

/// Eigenpairs `(mu, x)` of a real matrix, computed after balancing and
/// mapped back to the original coordinates.
fn matrix_eigenpairs(m: &Mat<f64>) -> Result<Vec<(C64, Vec<C64>)>> {
    let size = m.nrows();
    if entries(m).any(|x| !x.is_finite()) {
        return Err(Error::Eigensolver { size, reason: "non-finite entries".into() });
    }
    let (b, d) = balance(m);
    let evd = b.eigen().map_err(|e| eig_failure(size, e))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    Ok((0..size)
        .map(|k| (s[k], (0..size).map(|i| u[(i, k)] * d[i]).collect()))
        .collect())
}

/// Full dense eigendecomposition, sorted by `(Im, Re)` of `lambda`.
///
/// When the operator has the folded structure `[L+P, P; -P, -L-P]`, the
/// work is done on the half-size product `L (L + 2P)`, whose eigenvalues
/// are the squares `mu^2`. An eigenvector `s` of the product lifts to
/// `(s + d, s - d) / 2` with `d = (L + 2P) s / mu`.
pub fn compute_spectrum(op: &LinearOperator, want_vectors: bool) -> Result<RawSpectrum> {
    let mut pairs: Vec<(C64, Option<Vec<C64>>)> = match (&op.fold, want_vectors) {
        (Some((l, l2p)), false) => matrix_eigenvalues(&(l * l2p))?
            .into_iter()
            .flat_map(|nu| {
                let mu = nu.sqrt();
                [(lambda_from_mu(mu), None), (lambda_from_mu(-mu), None)]
            })
            .collect(),
        (Some((l, l2p)), true) => {
            let mut out = Vec::with_capacity(op.size());
            for (nu, s) in matrix_eigenpairs(&(l * l2p))? {
                let mu = nu.sqrt();
                let ls = real_mat_vec(l2p, &s);
                for sign in [1.0, -1.0] {
                    let mu = sign * mu;
                    let d: Vec<C64> = if mu.norm() > 0.0 {
                        ls.iter().map(|z| z / mu).collect()
                    } else {
                        vec![C64::new(0.0, 0.0); s.len()]
                    };
                    let mut v: Vec<C64> = s.iter().zip(&d).map(|(a, b)| 0.5 * (a + b)).collect();
                    v.extend(s.iter().zip(&d).map(|(a, b)| 0.5 * (a - b)));
                    let nv = norm(&v);
                    v.iter_mut().for_each(|z| *z /= nv);
                    out.push((lambda_from_mu(mu), Some(v)));
                }
            }
            out
        }
        (None, false) => matrix_eigenvalues(&op.matrix)?.into_iter().map(|mu| (lambda_from_mu(mu), None)).collect(),
        (None, true) => matrix_eigenpairs(&op.matrix)?
            .into_iter()
            .map(|(mu, v)| (lambda_from_mu(mu), Some(v)))
            .collect(),
    };
    pairs.sort_by(|a, b| sort_key(&a.0, &b.0));
    let (eigenvalues, vectors): (Vec<C64>, Vec<Option<Vec<C64>>>) = pairs.into_iter().unzip();
    let vectors = want_vectors.then(|| vectors.into_iter().map(Option::unwrap_or_default).collect());
    Ok(RawSpectrum { eigenvalues, vectors })
}

fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn real_mat_vec(m: &Mat<f64>, x: &[C64]) -> Vec<C64> {
    let (re, im): (Vec<f64>, Vec<f64>) = x.iter().map(|z| (z.re, z.im)).unzip();
    let xr = Mat::from_fn(x.len(), 2, |i, j| if j == 0 { re[i] } else { im[i] });
    let y = m * &xr;
    (0..m.nrows()).map(|i| C64::new(y[(i, 0)], y[(i, 1)])).collect()
}

/// `|M x - mu x| / |x|` with `mu = i lambda`.
pub fn residual_check(op: &LinearOperator, lambda: C64, vector: &[C64]) -> f64 {
    let mu = mu_from_lambda(lambda);
    let mx = real_mat_vec(&op.matrix, vector);
    let r: Vec<C64> = mx.iter().zip(vector).map(|(a, x)| a - mu * x).collect();
    norm(&r) / norm(vector)
}

/// Residual for a real trial vector.
pub fn residual_check_real(op: &LinearOperator, lambda: C64, vector: &[f64]) -> f64 {
    let v: Vec<C64> = vector.iter().map(|&x| C64::new(x, 0.0)).collect();
    residual_check(op, lambda, &v)
}

fn entries(m: &Mat<f64>) -> impl Iterator<Item = f64> + '_ {
    (0..m.ncols()).flat_map(move |j| (0..m.nrows()).map(move |i| m[(i, j)]))
}

/// Max-abs entry, a cheap scale for relative tolerances.
pub fn max_abs(m: &Mat<f64>) -> f64 {
    entries(m).fold(0.0f64, |a, x| a.max(x.abs()))
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub lambda: C64,
    pub vector: Vec<C64>,
    pub residual: f64,
    pub converged: bool,
}

/// Shift-and-invert iteration on a real matrix with complex shift `sigma`.
fn inverse_iteration(m: &Mat<f64>, sigma: C64, max_iter: usize, rel_tol: f64) -> Result<(C64, Vec<C64>, f64, bool)> {
    let (b, d) = balance(m);
    let (est, y, res, ok) = balanced_inverse_iteration(&b, sigma, max_iter, rel_tol)?;
    let mut x: Vec<C64> = y.iter().zip(&d).map(|(z, s)| z * s).collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|z| *z /= nx);
    Ok((est, x, res, ok))
}

fn balanced_inverse_iteration(m: &Mat<f64>, sigma: C64, max_iter: usize, rel_tol: f64) -> Result<(C64, Vec<C64>, f64, bool)> {
    let size = m.nrows();
    let shifted = Mat::<C64>::from_fn(size, size, |i, j| {
        let d = if i == j { sigma } else { C64::new(0.0, 0.0) };
        C64::new(m[(i, j)], 0.0) - d
    });
    let lu = shifted.partial_piv_lu();
    let scale = max_abs(m).max(1.0);
    // deterministic, non-degenerate start
    let mut x: Vec<C64> = (0..size).map(|i| C64::new(1.0 + (i as f64 * 0.7).sin() * 0.5, (i as f64 * 1.3).cos() * 0.1)).collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|z| *z /= nx);
    let mut est = sigma;
    let mut res = f64::INFINITY;
    for _ in 0..max_iter {
        let rhs = Mat::<C64>::from_fn(size, 1, |i, _| x[i]);
        let y = lu.solve(&rhs);
        let mut yv: Vec<C64> = (0..size).map(|i| y[(i, 0)]).collect();
        let ny = norm(&yv);
        if !(ny.is_finite() && ny > 0.0) {
            return Err(Error::Eigensolver { size, reason: "inverse iteration broke down".into() });
        }
        yv.iter_mut().for_each(|z| *z /= ny);
        let my = real_mat_vec(m, &yv);
        let num: C64 = yv.iter().zip(&my).map(|(a, b)| a.conj() * b).sum();
        est = num;
        let r: Vec<C64> = my.iter().zip(&yv).map(|(a, b)| a - est * b).collect();
        res = norm(&r);
        x = yv;
        if res <= rel_tol * scale {
            return Ok((est, x, res, true));
        }
    }
    Ok((est, x, res, false))
}

/// Eigenpair of `op` nearest to `lambda_guess`, by inverse iteration. Uses
/// the half-size product when the operator is foldable.
pub fn refine_near(op: &LinearOperator, lambda_guess: C64) -> Result<Eigenpair> {
    let sigma = mu_from_lambda(lambda_guess);
    let (mu, vector) = match &op.fold {
        Some((l, l2p)) if sigma.norm() > 0.0 => {
            let prod = l * l2p;
            let (nu, s, _, _) = inverse_iteration(&prod, sigma * sigma, 60, 1e-13)?;
            let mut mu = nu.sqrt();
            if (mu - sigma).norm() > (-mu - sigma).norm() {
                mu = -mu;
            }
            let d: Vec<C64> = real_mat_vec(l2p, &s).into_iter().map(|z| z / mu).collect();
            let half = s.len();
            let mut v = vec![C64::new(0.0, 0.0); 2 * half];
            for i in 0..half {
                v[i] = 0.5 * (s[i] + d[i]);
                v[half + i] = 0.5 * (s[i] - d[i]);
            }
            let nv = norm(&v);
            v.iter_mut().for_each(|z| *z /= nv);
            (mu, v)
        }
        _ => {
            let (mu, v, _, _) = inverse_iteration(&op.matrix, sigma, 60, 1e-13)?;
            (mu, v)
        }
    };
    let lambda = lambda_from_mu(mu);
    let residual = residual_check(op, lambda, &vector);
    let converged = residual <= 1e-9 * max_abs(&op.matrix).max(1.0);
    Ok(Eigenpair { lambda, vector, residual, converged })
}

/// Fraction of the weighted norm of `vector` carried by nodes with
/// `r > r_tail`.
pub fn tail_fraction(op: &LinearOperator, vector: &[C64], r_tail: f64) -> f64 {
    let n = op.n;
    let (mut tail, mut total) = (0.0, 0.0);
    for (k, z) in vector.iter().enumerate() {
        let w = op.weights[k] * z.norm_sqr();
        total += w;
        if op.nodes[k % n] > r_tail {
            tail += w;
        }
    }
    if total > 0.0 { tail / total } else { 0.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Essential,
    Discrete,
    ZeroMode,
    Unstable,
    ArtifactSuspect,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Essential => "essential",
            Tag::Discrete => "discrete",
            Tag::ZeroMode => "zero-mode",
            Tag::Unstable => "unstable",
            Tag::ArtifactSuspect => "artifact-suspect",
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Some(match s {
            "essential" => Tag::Essential,
            "discrete" => Tag::Discrete,
            "zero-mode" => Tag::ZeroMode,
            "unstable" => Tag::Unstable,
            "artifact-suspect" => Tag::ArtifactSuspect,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub re_tol: f64,
    pub zero_tol: f64,
    pub band_tol: f64,
    pub match_tol: f64,
    pub tail_tol: f64,
    /// Matched eigenvalues moving more than this between resolutions are
    /// treated as discretized continuum when they sit in the band.
    pub drift_tol: f64,
    /// Radius beyond which eigenfunction mass counts as tail. `None` means
    /// three quarters of the profile's default integration span.
    pub r_tail: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            re_tol: 1e-4,
            zero_tol: 1e-3,
            band_tol: 1e-3,
            match_tol: 1e-2,
            tail_tol: 1e-3,
            drift_tol: 1e-6,
            r_tail: None,
        }
    }
}

impl Tolerances {
    pub fn r_tail_for(&self, profile: &SolitonProfile) -> f64 {
        self.r_tail.unwrap_or_else(|| 0.75 * SolitonProfile::default_r_max(profile.kappa))
    }
}

/// Classified spectrum of one channel at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    pub omega: f64,
    pub channel: Channel,
    pub n: usize,
    pub map_scale: f64,
    pub eigenvalues: Vec<C64>,
    pub tags: Vec<Tag>,
    /// Largest `Re lambda` among eigenvalues tagged unstable, else 0.
    pub instability_measure: f64,
}

impl SpectrumRecord {
    /// Record from already tagged eigenvalues; the instability measure is
    /// recomputed from the tags.
    pub fn from_tagged(omega: f64, channel: Channel, n: usize, map_scale: f64, eigenvalues: Vec<C64>, tags: Vec<Tag>) -> Self {
        let instability_measure = eigenvalues
            .iter()
            .zip(&tags)
            .filter(|(_, t)| **t == Tag::Unstable)
            .map(|(l, _)| l.re)
            .fold(0.0, f64::max);
        Self { omega, channel, n, map_scale, eigenvalues, tags, instability_measure }
    }

    pub fn unstable(&self) -> impl Iterator<Item = C64> + '_ {
        self.tagged(Tag::Unstable)
    }

    pub fn tagged(&self, tag: Tag) -> impl Iterator<Item = C64> + '_ {
        self.eigenvalues.iter().zip(&self.tags).filter(move |(_, t)| **t == tag).map(|(l, _)| *l)
    }

    pub fn is_stable(&self) -> bool {
        self.instability_measure == 0.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let eig: Vec<serde_json::Value> = self
            .eigenvalues
            .iter()
            .zip(&self.tags)
            .map(|(l, t)| serde_json::json!({ "re": l.re, "im": l.im, "tag": t.as_str() }))
            .collect();
        serde_json::json!({
            "omega": self.omega,
            "ell": self.channel.ell(),
            "m": self.channel.m(),
            "eta_norm_sq": self.channel.eta_norm_sq(),
            "n": self.n,
            "map_scale": self.map_scale,
            "eigenvalues": eig,
        })
    }
}

fn nearest(target: C64, pool: &[C64]) -> Option<(usize, f64)> {
    pool.iter()
        .enumerate()
        .map(|(i, z)| (i, (z - target).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Mutual-nearest partner of each coarse eigenvalue in `fine`, with its
/// distance, when within `match_tol`.
pub fn match_resolutions(coarse: &[C64], fine: &[C64], match_tol: f64) -> Vec<Option<(usize, f64)>> {
    coarse
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let (j, d) = nearest(c, fine)?;
            let (back, _) = nearest(fine[j], coarse)?;
            // ties among exactly repeated coarse values count as mutual
            let mutual = back == i || coarse[back] == c;
            (mutual && d <= match_tol).then_some((j, d))
        })
        .collect()
}

/// Tags coarse eigenvalues.
///
/// `tails[i]` is the tail-mass fraction of the eigenfunction of
/// `coarse[i]` (or of its fine partner); `None` means it was not computed,
/// which fails the localization test.
pub fn classify(
    coarse: &[C64],
    fine: &[C64],
    tails: &[Option<f64>],
    omega: f64,
    mass: f64,
    tol: &Tolerances,
) -> (Vec<Tag>, f64) {
    let matches = match_resolutions(coarse, fine, tol.match_tol);
    let band_edge = mass - omega.abs();
    let mut measure = 0.0f64;
    let tags = coarse
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if l.norm() < tol.zero_tol {
                return Tag::ZeroMode;
            }
            if l.re.abs() > tol.re_tol {
                let localized = tails.get(i).copied().flatten().is_some_and(|t| t <= tol.tail_tol);
                return if matches[i].is_some() && localized {
                    measure = measure.max(l.re);
                    Tag::Unstable
                } else {
                    Tag::ArtifactSuspect
                };
            }
            let im = l.im.abs();
            let in_band = im >= band_edge - tol.band_tol;
            // discretized continuum piles up at the thresholds mass -/+ omega
            let at_threshold = (im - band_edge).abs() <= tol.band_tol
                || (im - (mass + omega.abs())).abs() <= tol.band_tol;
            let steady = matches[i].is_some_and(|(_, d)| d <= tol.drift_tol);
            if in_band && (at_threshold || !steady) {
                Tag::Essential
            } else {
                Tag::Discrete
            }
        })
        .collect();
    (tags, measure)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub n: usize,
    pub map_scale: f64,
    /// Finer resolution; `None` means `ceil(1.5 n)`.
    pub fine_n: Option<usize>,
    pub tol: Tolerances,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { n: 300, map_scale: 10.0, fine_n: None, tol: Tolerances::default() }
    }
}

impl AnalysisOptions {
    pub fn fine_n(&self) -> usize {
        self.fine_n.unwrap_or((3 * self.n).div_ceil(2))
    }
}

/// Solves one channel at both resolutions and classifies the result.
pub fn analyze_channel(profile: &SolitonProfile, channel: Channel, opts: &AnalysisOptions) -> Result<SpectrumRecord> {
    let tol = &opts.tol;
    let coarse_grid = build_grid(opts.n, opts.map_scale)?;
    let coarse_op = assemble(profile, &coarse_grid, channel)?;
    let candidate = |l: &C64| l.re.abs() > tol.re_tol && l.norm() >= tol.zero_tol;
    let r_tail = tol.r_tail_for(profile);

    // one pass with vectors settles the tail test for every candidate
    let raw = compute_spectrum(&coarse_op, true)?;
    let coarse = raw.eigenvalues;
    let vectors = raw.vectors.unwrap_or_default();
    let tails: Vec<Option<f64>> = coarse
        .iter()
        .zip(&vectors)
        .map(|(l, v)| candidate(l).then(|| tail_fraction(&coarse_op, v, r_tail)))
        .collect();
    drop(vectors);
    drop(coarse_op);

    let fine_grid = build_grid(opts.fine_n(), opts.map_scale)?;
    let fine_op = assemble(profile, &fine_grid, channel)?;
    let fine = compute_spectrum(&fine_op, false)?.eigenvalues;
    let (tags, instability_measure) = classify(&coarse, &fine, &tails, profile.omega, profile.mass, tol);
    Ok(SpectrumRecord {
        omega: profile.omega,
        channel,
        n: opts.n,
        map_scale: opts.map_scale,
        eigenvalues: coarse,
        tags,
        instability_measure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(m: Mat<f64>) -> LinearOperator {
        LinearOperator::from_matrix(m)
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let s = compute_spectrum(&synthetic(Mat::zeros(5, 5)), false).unwrap();
        assert!(s.eigenvalues.iter().all(|l| l.norm() == 0.0));
    }

    #[test]
    fn mu_maps_to_minus_i_mu() {
        let m = Mat::from_fn(2, 2, |i, j| if i == j { [1.0, -1.0][i] } else { 0.0 });
        let s = compute_spectrum(&synthetic(m), false).unwrap();
        assert_eq!(s.eigenvalues, vec![C64::new(0.0, -1.0), C64::new(0.0, 1.0)]);
    }

    #[test]
    fn exact_eigenpair_has_zero_residual() {
        let m = Mat::from_fn(3, 3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let op = synthetic(m);
        let v = [0.0, 1.0, 0.0];
        assert_eq!(residual_check_real(&op, lambda_from_mu(C64::new(2.0, 0.0)), &v), 0.0);
    }

    #[test]
    fn inverse_iteration_finds_nearest() {
        let m = Mat::from_fn(4, 4, |i, j| if i == j { [0.5, 1.0, 2.0, 3.0][i] } else if j == i + 1 { 0.1 } else { 0.0 });
        let op = synthetic(m);
        let p = refine_near(&op, lambda_from_mu(C64::new(1.9, 0.05))).unwrap();
        assert!((mu_from_lambda(p.lambda) - C64::new(2.0, 0.0)).norm() < 1e-10);
        assert!(p.converged);
    }

    #[test]
    fn band_membership_and_unstable_tags() {
        let tol = Tolerances::default();
        let coarse = [C64::new(0.0, 1.7), C64::new(0.05, 0.3), C64::new(0.0, 0.0), C64::new(0.0, 0.4)];
        let fine = [C64::new(0.0, 1.71), C64::new(0.0501, 0.3), C64::new(0.0, 0.4)];
        let tails = [None, Some(1e-6), None, None];
        let (tags, measure) = classify(&coarse, &fine, &tails, 0.2, 1.0, &tol);
        assert_eq!(tags, vec![Tag::Essential, Tag::Unstable, Tag::ZeroMode, Tag::Discrete]);
        assert_eq!(measure, 0.05);
    }

    #[test]
    fn unmatched_or_delocalized_instabilities_are_suspect() {
        let tol = Tolerances::default();
        let coarse = [C64::new(0.05, 0.3), C64::new(0.02, 0.9)];
        let fine = [C64::new(0.08, 0.3), C64::new(0.02, 0.9)];
        let tails = [Some(0.0), Some(0.2)];
        let (tags, measure) = classify(&coarse, &fine, &tails, 0.2, 1.0, &tol);
        assert_eq!(tags, vec![Tag::ArtifactSuspect, Tag::ArtifactSuspect]);
        assert_eq!(measure, 0.0);
    }
}
