//! Discretized radial linearization operators.
//!
//! A perturbation in the channel `(ell, m)` has radial components
//! `(a, b, p, q)` for the mode itself and `(a', b', p', q')` for the
//! conjugate sector. The dynamics is `d/dt Psi = -i M Psi` with a real
//! matrix `M`; we store `M` and report eigenvalues `lambda = -i mu`.

use std::io::Write;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{HalfLineGrid, Resampled};
use crate::profile::SolitonProfile;

/// How the second spinor of a bi-frequency mode sits relative to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaAlignment {
    /// The nontrivial case: the order is rescaled to `(1 + 2|eta|^2) m`.
    #[default]
    Parallel,
    /// SU(1,1)-equivalent to a one-frequency wave: the order is unchanged.
    Orthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub ell: u32,
    pub m: i32,
    pub eta_norm_sq: f64,
    pub alignment: EtaAlignment,
}

impl ChannelSpec {
    pub fn new(ell: u32, m: i32) -> Result<Self> {
        Self::bifrequency(ell, m, 0.0, EtaAlignment::Parallel)
    }

    pub fn bifrequency(ell: u32, m: i32, eta_norm_sq: f64, alignment: EtaAlignment) -> Result<Self> {
        if m.unsigned_abs() > ell {
            return Err(Error::InvalidChannel { ell, m });
        }
        if !(eta_norm_sq >= 0.0 && eta_norm_sq.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "|eta|^2 must be a finite non-negative number, got {eta_norm_sq}"
            )));
        }
        Ok(Self { ell, m, eta_norm_sq, alignment })
    }

    /// Effective order entering the potential coupling.
    pub fn m_eff(&self) -> f64 {
        match self.alignment {
            EtaAlignment::Parallel => (1.0 + 2.0 * self.eta_norm_sq) * self.m as f64,
            EtaAlignment::Orthogonal => self.m as f64,
        }
    }
}

/// Which radial problem an operator discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Channel {
    /// Spherically symmetric perturbations, components `(a, b)` only.
    Ell0,
    Mode(ChannelSpec),
}

impl Channel {
    pub fn ell(&self) -> u32 {
        match self {
            Channel::Ell0 => 0,
            Channel::Mode(c) => c.ell,
        }
    }

    pub fn m(&self) -> i32 {
        match self {
            Channel::Ell0 => 0,
            Channel::Mode(c) => c.m,
        }
    }

    pub fn eta_norm_sq(&self) -> f64 {
        match self {
            Channel::Ell0 => 0.0,
            Channel::Mode(c) => c.eta_norm_sq,
        }
    }

    pub fn m_eff(&self) -> f64 {
        match self {
            Channel::Ell0 => 0.0,
            Channel::Mode(c) => c.m_eff(),
        }
    }

    /// Channel for `(ell, m)`; `ell = 0` maps to the exceptional channel.
    pub fn from_ell_m(ell: u32, m: i32, eta_norm_sq: f64) -> Result<Self> {
        let spec = ChannelSpec::bifrequency(ell, m, eta_norm_sq, EtaAlignment::Parallel)?;
        Ok(if ell == 0 { Channel::Ell0 } else { Channel::Mode(spec) })
    }
}

/// Radial component carried by one `n`-sized block of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    A,
    B,
    P,
    Q,
    ABar,
    BBar,
    PBar,
    QBar,
}

/// Dense real operator with its block layout.
#[derive(Debug, Clone)]
pub struct LinearOperator {
    pub matrix: Mat<f64>,
    pub layout: Vec<Component>,
    pub channel: Channel,
    pub n: usize,
    pub map_scale: f64,
    pub omega: f64,
    /// Radial nodes of the underlying grid.
    pub nodes: Vec<f64>,
    /// Diagonal of the inner product in which the free part is selfadjoint,
    /// one entry per row.
    pub weights: Vec<f64>,
    /// `(L, L + 2P)` when `M = [L+P, P; -P, -L-P]`, which lets the spectrum
    /// be read off the half-size product `L (L + 2P)`.
    pub(crate) fold: Option<(Mat<f64>, Mat<f64>)>,
}

impl LinearOperator {
    /// Wraps an arbitrary square matrix with unit weights, for checks that
    /// do not involve a grid.
    pub fn from_matrix(matrix: Mat<f64>) -> Self {
        let size = matrix.nrows();
        Self {
            matrix,
            layout: Vec::new(),
            channel: Channel::Ell0,
            n: size,
            map_scale: 1.0,
            omega: 0.0,
            nodes: (1..=size).map(|i| i as f64).collect(),
            weights: vec![1.0; size],
            fold: None,
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// `W^{1/2} M W^{-1/2}`; symmetric exactly when `M` is `W`-selfadjoint.
    pub fn symmetrized(&self) -> Mat<f64> {
        let s: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        Mat::from_fn(self.size(), self.size(), |i, j| s[i] * self.matrix[(i, j)] / s[j])
    }

    /// Plain-text dump: `rows cols` then one row per line.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let (r, c) = (self.matrix.nrows(), self.matrix.ncols());
        writeln!(w, "{r} {c}")?;
        for i in 0..r {
            let row: Vec<String> = (0..c).map(|j| format!("{:e}", self.matrix[(i, j)])).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the plain-text dump back into a matrix.
pub fn read_dump(text: &str) -> Result<Mat<f64>> {
    let mut tokens = text.split_whitespace();
    let mut next_usize = |what: &str| -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("missing {what}")))
    };
    let r = next_usize("row count")?;
    let c = next_usize("column count")?;
    let vals: Vec<f64> = text
        .split_whitespace()
        .skip(2)
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
        .collect::<Result<_>>()?;
    if vals.len() != r * c {
        return Err(Error::Parse(format!("expected {} entries, got {}", r * c, vals.len())));
    }
    Ok(Mat::from_fn(r, c, |i, j| vals[i * c + j]))
}

fn add_block(m: &mut Mat<f64>, n: usize, bi: usize, bj: usize, src: &Mat<f64>, scale: f64) {
    for i in 0..n {
        for j in 0..n {
            m[(bi * n + i, bj * n + j)] += scale * src[(i, j)];
        }
    }
}

fn add_diag(m: &mut Mat<f64>, n: usize, bi: usize, bj: usize, d: &[f64]) {
    for i in 0..n {
        m[(bi * n + i, bj * n + i)] += d[i];
    }
}

fn copy_into(m: &mut Mat<f64>, src: &Mat<f64>, row0: usize, col0: usize, scale: f64) {
    for i in 0..src.nrows() {
        for j in 0..src.ncols() {
            m[(row0 + i, col0 + j)] += scale * src[(i, j)];
        }
    }
}

/// The 2x2 node-diagonal potential `V = -[v^2, -uv; -uv, u^2]` as its four
/// diagonals `(V_aa, V_ab, V_ba, V_bb)`.
/// `D + 1/r`, so that `d/dr + 2/r = k + 1/r`, `-d/dr = -k + 1/r`, and the
/// `(p, q)` entries `d/dr + 1/r` are `k` itself.
fn radial_derivative(grid: &HalfLineGrid) -> Mat<f64> {
    let mut k = grid.diff.clone();
    for i in 0..grid.n {
        k[(i, i)] += 1.0 / grid.nodes[i];
    }
    k
}

pub fn assemble_v(s: &Resampled) -> [Vec<f64>; 4] {
    let vv: Vec<f64> = s.v.iter().map(|v| -v * v).collect();
    let uv: Vec<f64> = s.v.iter().zip(&s.u).map(|(v, u)| u * v).collect();
    let uu: Vec<f64> = s.u.iter().map(|u| -u * u).collect();
    [vv, uv.clone(), uv, uu]
}

fn v_block(n: usize, s: &Resampled) -> Mat<f64> {
    let [aa, ab, ba, bb] = assemble_v(s);
    let mut m = Mat::<f64>::zeros(2 * n, 2 * n);
    add_diag(&mut m, n, 0, 0, &aa);
    add_diag(&mut m, n, 0, 1, &ab);
    add_diag(&mut m, n, 1, 0, &ba);
    add_diag(&mut m, n, 1, 1, &bb);
    m
}

fn l00_matrix(grid: &HalfLineGrid, s: &Resampled, k: &Mat<f64>, omega: f64) -> Mat<f64> {
    let n = grid.n;
    let inv_r: Vec<f64> = grid.nodes.iter().map(|r| 1.0 / r).collect();
    let mut m = Mat::<f64>::zeros(2 * n, 2 * n);
    add_diag(&mut m, n, 0, 0, &s.f.iter().map(|f| f - omega).collect::<Vec<_>>());
    add_diag(&mut m, n, 1, 1, &s.f.iter().map(|f| -f - omega).collect::<Vec<_>>());
    // d/dr + 2/r = K + 1/r and -d/dr = -K + 1/r
    add_block(&mut m, n, 0, 1, k, 1.0);
    add_diag(&mut m, n, 0, 1, &inv_r);
    add_block(&mut m, n, 1, 0, k, -1.0);
    add_diag(&mut m, n, 1, 0, &inv_r);
    m
}

fn l0_matrix(grid: &HalfLineGrid, s: &Resampled, k: &Mat<f64>, omega: f64, ell: u32) -> Mat<f64> {
    let n = grid.n;
    let c = (ell * (ell + 1)) as f64;
    let inv_r: Vec<f64> = grid.nodes.iter().map(|r| 1.0 / r).collect();
    let c_r: Vec<f64> = inv_r.iter().map(|x| c * x).collect();
    let mut m = Mat::<f64>::zeros(4 * n, 4 * n);
    copy_into(&mut m, &l00_matrix(grid, s, k, omega), 0, 0, 1.0);
    add_diag(&mut m, n, 0, 3, &c_r);
    add_diag(&mut m, n, 1, 2, &c_r);
    add_diag(&mut m, n, 2, 1, &inv_r);
    add_diag(&mut m, n, 2, 2, &s.f.iter().map(|f| f - omega).collect::<Vec<_>>());
    // d/dr + 1/r = K
    add_block(&mut m, n, 2, 3, k, 1.0);
    add_diag(&mut m, n, 3, 0, &inv_r);
    add_block(&mut m, n, 3, 2, k, -1.0);
    add_diag(&mut m, n, 3, 3, &s.f.iter().map(|f| -f - omega).collect::<Vec<_>>());
    m
}

fn weights_for(grid: &HalfLineGrid, layout: &[Component], ell: u32) -> Vec<f64> {
    let w = grid.radial_weights();
    let c = (ell * (ell + 1)) as f64;
    layout
        .iter()
        .flat_map(|comp| {
            let scale = match comp {
                Component::P | Component::Q | Component::PBar | Component::QBar => c,
                _ => 1.0,
            };
            w.iter().map(move |x| x * scale)
        })
        .collect()
}

fn operator(
    matrix: Mat<f64>,
    layout: Vec<Component>,
    channel: Channel,
    grid: &HalfLineGrid,
    omega: f64,
    fold: Option<(Mat<f64>, Mat<f64>)>,
) -> LinearOperator {
    let weights = weights_for(grid, &layout, channel.ell());
    LinearOperator {
        matrix,
        layout,
        channel,
        n: grid.n,
        map_scale: grid.map_scale,
        omega,
        nodes: grid.nodes.clone(),
        weights,
        fold,
    }
}

/// `L00 = [f - omega, d/dr + 2/r; -d/dr, -f - omega]`, size `2n`.
pub fn assemble_l00(profile: &SolitonProfile, grid: &HalfLineGrid) -> LinearOperator {
    let s = grid.resample(profile);
    let k = radial_derivative(grid);
    let m = l00_matrix(grid, &s, &k, profile.omega);
    operator(m, vec![Component::A, Component::B], Channel::Ell0, grid, profile.omega, None)
}

/// `L0(omega, ell)` acting on `(a, b, p, q)`, size `4n`.
pub fn assemble_l0(profile: &SolitonProfile, grid: &HalfLineGrid, ell: u32) -> Result<LinearOperator> {
    if ell == 0 {
        return Err(Error::InvalidArgument("L0 needs ell >= 1; use L00 for ell = 0".into()));
    }
    let s = grid.resample(profile);
    let k = radial_derivative(grid);
    let m = l0_matrix(grid, &s, &k, profile.omega, ell);
    let spec = ChannelSpec::new(ell, 0)?;
    Ok(operator(
        m,
        vec![Component::A, Component::B, Component::P, Component::Q],
        Channel::Mode(spec),
        grid,
        profile.omega,
        None,
    ))
}

/// `M00 = [L00 + V, V; -V, -L00 - V]`, size `4n`.
pub fn assemble_a00(profile: &SolitonProfile, grid: &HalfLineGrid) -> LinearOperator {
    let n = grid.n;
    let s = grid.resample(profile);
    let k = radial_derivative(grid);
    let l = l00_matrix(grid, &s, &k, profile.omega);
    let v = v_block(n, &s);
    let mut m = Mat::<f64>::zeros(4 * n, 4 * n);
    copy_into(&mut m, &l, 0, 0, 1.0);
    copy_into(&mut m, &v, 0, 0, 1.0);
    copy_into(&mut m, &v, 0, 2 * n, 1.0);
    copy_into(&mut m, &v, 2 * n, 0, -1.0);
    copy_into(&mut m, &l, 2 * n, 2 * n, -1.0);
    copy_into(&mut m, &v, 2 * n, 2 * n, -1.0);
    let mut l2p = l.clone();
    copy_into(&mut l2p, &v, 0, 0, 2.0);
    let layout = vec![Component::A, Component::B, Component::ABar, Component::BBar];
    operator(m, layout, Channel::Ell0, grid, profile.omega, Some((l, l2p)))
}

/// `M = [L0, 0; 0, -L0] + P` for a channel with `ell >= 1`, size `8n`.
///
/// `P` couples `(a, b)` rows to all four outer blocks through `V` with the
/// order replaced by `m_eff`; the `(p, q)` rows carry no potential.
pub fn assemble_a(profile: &SolitonProfile, grid: &HalfLineGrid, channel: ChannelSpec) -> Result<LinearOperator> {
    if channel.m.unsigned_abs() > channel.ell {
        return Err(Error::InvalidChannel { ell: channel.ell, m: channel.m });
    }
    if channel.ell == 0 {
        return Err(Error::InvalidArgument("ell = 0 is the exceptional channel; use assemble_a00".into()));
    }
    let n = grid.n;
    let s = grid.resample(profile);
    let k = radial_derivative(grid);
    let l = l0_matrix(grid, &s, &k, profile.omega, channel.ell);
    let v = v_block(n, &s);
    let me = channel.m_eff();
    let mut m = Mat::<f64>::zeros(8 * n, 8 * n);
    copy_into(&mut m, &l, 0, 0, 1.0);
    copy_into(&mut m, &l, 4 * n, 4 * n, -1.0);
    // outer blocks of 2n: 0 = (a,b), 1 = (p,q), 2 = (a',b'), 3 = (p',q')
    let row_ab = [1.0, me, 1.0, -me];
    for (bj, &c) in row_ab.iter().enumerate() {
        if c != 0.0 {
            copy_into(&mut m, &v, 0, 2 * n * bj, c);
            copy_into(&mut m, &v, 4 * n, 2 * n * bj, -c);
        }
    }
    let fold = (me == 0.0).then(|| {
        let mut l2p = l.clone();
        copy_into(&mut l2p, &v, 0, 0, 2.0);
        (l, l2p)
    });
    let layout = vec![
        Component::A,
        Component::B,
        Component::P,
        Component::Q,
        Component::ABar,
        Component::BBar,
        Component::PBar,
        Component::QBar,
    ];
    Ok(operator(m, layout, Channel::Mode(channel), grid, profile.omega, fold))
}

/// Assembles the full operator for any channel.
pub fn assemble(profile: &SolitonProfile, grid: &HalfLineGrid, channel: Channel) -> Result<LinearOperator> {
    match channel {
        Channel::Ell0 => Ok(assemble_a00(profile, grid)),
        Channel::Mode(c) => assemble_a(profile, grid, c),
    }
}

/// Phase mode `i phi` of the exceptional channel: `(v, u, -v, -u)`.
pub fn phase_mode(profile: &SolitonProfile, grid: &HalfLineGrid) -> Vec<f64> {
    let s = grid.resample(profile);
    let mut out = Vec::with_capacity(4 * grid.n);
    out.extend(&s.v);
    out.extend(&s.u);
    out.extend(s.v.iter().map(|x| -x));
    out.extend(s.u.iter().map(|x| -x));
    out
}

/// Translation mode `d/dz phi` of the `(ell, m) = (1, 0)` channel:
/// `(v', u', 0, -u/r)` in both sectors.
pub fn translation_mode(profile: &SolitonProfile, grid: &HalfLineGrid) -> Vec<f64> {
    let n = grid.n;
    let mut half = vec![0.0; 4 * n];
    for (i, &r) in grid.nodes.iter().enumerate() {
        let (_, u, dv, du) = profile.eval_with_derivative(r);
        half[i] = dv;
        half[n + i] = du;
        half[3 * n + i] = -u / r;
    }
    let mut out = half.clone();
    out.extend(half);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::profile::{solve_profile, ShootingOptions};

    fn mat_vec(m: &Mat<f64>, x: &[f64]) -> Vec<f64> {
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum()).collect()
    }

    fn norm(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    #[test]
    fn channel_rejects_large_orders() {
        assert!(matches!(ChannelSpec::new(5, 7), Err(Error::InvalidChannel { ell: 5, m: 7 })));
        assert!(ChannelSpec::new(2, -2).is_ok());
    }

    #[test]
    fn effective_order() {
        let c = ChannelSpec::bifrequency(2, 1, 0.5, EtaAlignment::Parallel).unwrap();
        assert_eq!(c.m_eff(), 2.0);
        let c = ChannelSpec::bifrequency(2, 1, 0.5, EtaAlignment::Orthogonal).unwrap();
        assert_eq!(c.m_eff(), 1.0);
        assert_eq!(ChannelSpec::new(3, -2).unwrap().m_eff(), -2.0);
    }

    #[test]
    fn zero_profile_gives_free_diagonal() {
        let g = build_grid(16, 10.0).unwrap();
        let p = SolitonProfile::zero(0.3, 1.0);
        let l = assemble_l00(&p, &g);
        for i in 0..16 {
            assert_eq!(l.matrix[(i, i)], 1.0 - 0.3);
            assert!((l.matrix[(16 + i, 16 + i)] - (-1.0 - 0.3)).abs() < 1e-15);
        }
    }

    #[test]
    fn potential_blocks_are_rank_one() {
        let p = solve_profile(0.5, 1.0, &ShootingOptions::default()).unwrap();
        let g = build_grid(32, 10.0).unwrap();
        let s = g.resample(&p);
        let [aa, ab, ba, bb] = assemble_v(&s);
        for i in 0..g.n {
            assert_eq!(ab[i], ba[i]);
            let det = aa[i] * bb[i] - ab[i] * ba[i];
            assert!(det.abs() < 1e-14);
            assert!(-(aa[i] + bb[i]) >= 0.0);
        }
    }

    #[test]
    fn l00_annihilates_the_profile() {
        let p = solve_profile(0.9, 1.0, &ShootingOptions::default()).unwrap();
        let g = build_grid(128, 10.0).unwrap();
        let l = assemble_l00(&p, &g);
        let s = g.resample(&p);
        let x: Vec<f64> = s.v.iter().chain(&s.u).copied().collect();
        let y = mat_vec(&l.matrix, &x);
        assert!(norm(&y) / norm(&x) < 1e-6, "{}", norm(&y) / norm(&x));
    }

    #[test]
    fn same_matrix_for_coinciding_effective_orders() {
        let p = solve_profile(0.5, 1.0, &ShootingOptions::default()).unwrap();
        let g = build_grid(16, 10.0).unwrap();
        let bi = ChannelSpec::bifrequency(2, 1, 0.5, EtaAlignment::Parallel).unwrap();
        let one = ChannelSpec::new(2, 2).unwrap();
        let a = assemble_a(&p, &g, bi).unwrap();
        let b = assemble_a(&p, &g, one).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn dump_round_trips() {
        let p = solve_profile(0.5, 1.0, &ShootingOptions::default()).unwrap();
        let g = build_grid(16, 10.0).unwrap();
        let op = assemble_a00(&p, &g);
        let mut buf = Vec::new();
        op.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("64 64\n"));
        assert_eq!(read_dump(&text).unwrap(), op.matrix);
    }
}
