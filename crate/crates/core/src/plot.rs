//! SVG rendering of swept spectra: `Im lambda` (top) and `Re lambda`
//! (bottom) against `omega`, one figure per `ell`, coloured by `|m|`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::spectra::Tag;
use crate::sweep::{continue_branches, Branch, SweepResult};

const WIDTH: f64 = 640.0;
const PANEL: f64 = 240.0;
const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 90.0;
const MARGIN_T: f64 = 30.0;
const GAP: f64 = 40.0;
const OMEGA_RANGE: (f64, f64) = (0.1, 1.0);
const IM_RANGE: (f64, f64) = (-2.2, 2.2);
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
/// Largest `|d lambda / d omega|` accepted when linking branches.
const MAX_SPEED: f64 = 40.0;

fn color(m: i32) -> &'static str {
    COLORS[m.unsigned_abs() as usize % COLORS.len()]
}

struct Panel {
    top: f64,
    y: (f64, f64),
}

impl Panel {
    fn px(&self, omega: f64) -> f64 {
        let (a, b) = OMEGA_RANGE;
        MARGIN_L + (omega - a) / (b - a) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn py(&self, v: f64) -> f64 {
        let (lo, hi) = self.y;
        self.top + (hi - v) / (hi - lo) * PANEL
    }

    fn frame(&self, svg: &mut String, label: &str) {
        let (x0, x1) = (self.px(OMEGA_RANGE.0), self.px(OMEGA_RANGE.1));
        let _ = writeln!(svg, r##"<rect x="{x0:.1}" y="{:.1}" width="{:.1}" height="{PANEL}" fill="none" stroke="#000"/>"##, self.top, x1 - x0);
        let zero = self.py(0.0);
        let _ = writeln!(svg, r##"<line x1="{x0:.1}" y1="{zero:.1}" x2="{x1:.1}" y2="{zero:.1}" stroke="#999" stroke-width="0.5"/>"##);
        for k in 1..=9 {
            let w = k as f64 / 10.0;
            let x = self.px(w);
            let yb = self.top + PANEL;
            let _ = writeln!(svg, r##"<line x1="{x:.1}" y1="{yb:.1}" x2="{x:.1}" y2="{:.1}" stroke="#000"/>"##, yb + 4.0);
            let _ = writeln!(svg, r#"<text x="{x:.1}" y="{:.1}" font-size="10" text-anchor="middle">{w:.1}</text>"#, yb + 15.0);
        }
        for (v, text) in [(self.y.0, self.y.0), (0.0, 0.0), (self.y.1, self.y.1)] {
            let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{}</text>"#, x0 - 4.0, self.py(v) + 3.0, fmt_tick(text));
        }
        let _ = writeln!(svg, r#"<text x="14" y="{:.1}" font-size="12" transform="rotate(-90 14 {:.1})" text-anchor="middle">{label}</text>"#, self.top + PANEL / 2.0, self.top + PANEL / 2.0);
    }

    fn polyline(&self, svg: &mut String, pts: &[(f64, f64)], stroke: &str, dashed: bool) {
        let coords: Vec<String> = pts.iter().map(|&(w, v)| format!("{:.2},{:.2}", self.px(w), self.py(v))).collect();
        let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.2"{dash}/>"#, coords.join(" "));
    }

    fn dot(&self, svg: &mut String, w: f64, v: f64, fill: &str) {
        let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="{fill}"/>"#, self.px(w), self.py(v));
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 0.1 {
        format!("{v:.1}")
    } else {
        format!("{v:.1e}")
    }
}

fn clip(v: f64, (lo, hi): (f64, f64)) -> bool {
    v >= lo && v <= hi
}

fn draw_branches(svg: &mut String, panel: &Panel, branches: &[Branch], part: fn(&num_complex::Complex<f64>) -> f64, dashed: bool) {
    for b in branches {
        let pts: Vec<(f64, f64)> = b.points.iter().map(|(w, l)| (*w, part(l))).filter(|(_, v)| clip(*v, panel.y)).collect();
        let c = color(b.channel.m());
        if pts.len() == 1 {
            panel.dot(svg, pts[0].0, pts[0].1, c);
        } else if !pts.is_empty() {
            panel.polyline(svg, &pts, c, dashed);
        }
    }
}

/// SVG for all channels with the given `ell`; the shaded region is the
/// essential spectrum `|Im lambda| >= mass - omega`.
pub fn render_svg(result: &SweepResult, ell: u32, mass: f64) -> String {
    let mut sub = result.clone();
    let keep: Vec<usize> = (0..result.channels.len()).filter(|&c| result.channels[c].ell() == ell).collect();
    sub.channels = keep.iter().map(|&c| result.channels[c]).collect();
    sub.records = result.records.iter().map(|row| keep.iter().map(|&c| row[c].clone()).collect()).collect();

    let solid = continue_branches(&sub, &[Tag::Discrete, Tag::Unstable, Tag::ZeroMode], MAX_SPEED);
    let dashed = continue_branches(&sub, &[Tag::ArtifactSuspect], MAX_SPEED);

    let re_max = sub
        .records
        .iter()
        .flatten()
        .flatten()
        .flat_map(|r| r.eigenvalues.iter().zip(&r.tags).filter(|(_, t)| matches!(t, Tag::Unstable | Tag::ArtifactSuspect)).map(|(l, _)| l.re.abs()))
        .fold(0.0f64, f64::max);
    let re_hi = if re_max > 0.0 { 1.1 * re_max } else { 1e-3 };

    let top = Panel { top: MARGIN_T, y: IM_RANGE };
    let bottom = Panel { top: MARGIN_T + PANEL + GAP, y: (-re_hi, re_hi) };
    let height = MARGIN_T + 2.0 * PANEL + GAP + 40.0;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#);
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="18" font-size="13" text-anchor="middle">ell = {ell}</text>"#, WIDTH / 2.0);

    // essential spectrum |Im lambda| >= M - omega
    let ws = [OMEGA_RANGE.0, OMEGA_RANGE.1];
    for sign in [1.0, -1.0] {
        let edge = |w: f64| (sign * (mass - w)).clamp(IM_RANGE.0, IM_RANGE.1);
        let far = sign * IM_RANGE.1;
        let pts = format!(
            "{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}",
            top.px(ws[0]), top.py(edge(ws[0])), top.px(ws[1]), top.py(edge(ws[1])),
            top.px(ws[1]), top.py(far), top.px(ws[0]), top.py(far)
        );
        let _ = writeln!(svg, r##"<polygon points="{pts}" fill="#e8e8e8" stroke="none"/>"##);
    }

    top.frame(&mut svg, "Im λ");
    bottom.frame(&mut svg, "Re λ");
    draw_branches(&mut svg, &top, &solid, |l| l.im, false);
    draw_branches(&mut svg, &top, &dashed, |l| l.im, true);
    draw_branches(&mut svg, &bottom, &solid, |l| l.re, false);
    draw_branches(&mut svg, &bottom, &dashed, |l| l.re, true);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">ω</text>"#, top.px(0.55), height - 6.0);

    let mut ms: Vec<u32> = sub.channels.iter().map(|c| c.m().unsigned_abs()).collect();
    ms.sort_unstable();
    ms.dedup();
    for (k, m) in ms.iter().enumerate() {
        let y = MARGIN_T + 12.0 + 16.0 * k as f64;
        let x = WIDTH - MARGIN_R + 12.0;
        let _ = writeln!(svg, r#"<line x1="{x:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{}" stroke-width="2"/>"#, x + 18.0, color(*m as i32));
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="11">|m| = {m}</text>"#, x + 22.0, y + 4.0);
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes `spectrum_ell{k}.svg` for every `ell` present; fails on an empty
/// sweep.
pub fn write_plots(result: &SweepResult, mass: f64, dir: &Path) -> Result<Vec<PathBuf>> {
    if result.is_empty() {
        return Err(Error::InvalidArgument("sweep contains no spectra to plot".into()));
    }
    std::fs::create_dir_all(dir)?;
    let mut ells: Vec<u32> = result.channels.iter().map(|c| c.ell()).collect();
    ells.sort_unstable();
    ells.dedup();
    let mut out = Vec::new();
    for ell in ells {
        let path = dir.join(format!("spectrum_ell{ell}.svg"));
        write_atomic(&path, render_svg(result, ell, mass).as_bytes())?;
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearization::Channel;
    use crate::spectra::{SpectrumRecord, C64};

    fn synthetic() -> SweepResult {
        let grid = [0.5, 0.6, 0.7];
        let ch = Channel::Ell0;
        let records = grid
            .iter()
            .map(|&w| {
                let eig = vec![C64::new(0.0, -0.3 - w), C64::new(0.0, 0.3 + w), C64::new(0.01, 1.5)];
                let tags = vec![Tag::Discrete, Tag::Discrete, Tag::ArtifactSuspect];
                vec![Some(SpectrumRecord::from_tagged(w, ch, 32, 10.0, eig, tags))]
            })
            .collect();
        SweepResult { channels: vec![ch], omega_grid: grid.to_vec(), records, failures: Vec::new(), events: Vec::new(), unresolved: Vec::new() }
    }

    #[test]
    fn draws_solid_and_dashed_branches() {
        let svg = render_svg(&synthetic(), 0, 1.0);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 6, "three branches in each panel");
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("|m| = 0"));
    }

    #[test]
    fn empty_sweep_is_rejected() {
        let mut s = synthetic();
        s.records.iter_mut().flatten().for_each(|r| *r = None);
        let dir = tempfile::tempdir().unwrap();
        assert!(write_plots(&s, 1.0, dir.path()).is_err());
        let files = write_plots(&synthetic(), 1.0, dir.path()).unwrap();
        assert_eq!(files, vec![dir.path().join("spectrum_ell0.svg")]);
    }
}
