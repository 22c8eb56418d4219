//! Frequency sweeps over a set of channels, branch continuation, and
//! refinement of the frequencies where instabilities appear or disappear.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linearization::Channel;
use crate::profile::{ProfileCache, ShootingOptions};
use crate::spectra::{analyze_channel, AnalysisOptions, SpectrumRecord, Tag, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepOptions {
    pub mass: f64,
    pub analysis: AnalysisOptions,
    pub shooting: ShootingOptions,
    /// Upper bound on concurrent eigen-solves.
    pub jobs: usize,
    /// Width below which an event bracket counts as refined.
    pub refine_tol: f64,
    /// Bisection budget per event.
    pub max_bisections: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            mass: 1.0,
            analysis: AnalysisOptions::default(),
            shooting: ShootingOptions::default(),
            jobs: 1,
            refine_tol: 1e-3,
            max_bisections: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    /// A real pair passes through the origin.
    Pitchfork,
    /// Two imaginary pairs collide and leave the axis as a quadruplet.
    HamiltonianHopf,
    /// A quadruplet leaves the axis at the edge of the continuum.
    ThresholdEmergence,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Pitchfork => "pitchfork",
            EventKind::HamiltonianHopf => "hamiltonian-hopf",
            EventKind::ThresholdEmergence => "threshold-emergence",
        }
    }
}

/// Whether the instability starts or ends as omega decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Onset,
    Offset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BifurcationEvent {
    pub kind: EventKind,
    pub channel: Channel,
    pub omega: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub direction: Direction,
    /// Leading unstable eigenvalue at the unstable end of the bracket.
    pub evidence: (f64, f64),
}

impl BifurcationEvent {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.as_str(),
            "ell": self.channel.ell(),
            "m": self.channel.m(),
            "eta_norm_sq": self.channel.eta_norm_sq(),
            "omega": self.omega,
            "bracket_lo": self.bracket_lo,
            "bracket_hi": self.bracket_hi,
            "direction": self.direction,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let num = |k: &str| v.get(k).and_then(|x| x.as_f64()).ok_or_else(|| Error::Parse(format!("event field {k}")));
        let kind = match v.get("kind").and_then(|k| k.as_str()) {
            Some("pitchfork") => EventKind::Pitchfork,
            Some("hamiltonian-hopf") => EventKind::HamiltonianHopf,
            Some("threshold-emergence") => EventKind::ThresholdEmergence,
            other => return Err(Error::Parse(format!("unknown event kind {other:?}"))),
        };
        let direction = match v.get("direction").and_then(|k| k.as_str()) {
            Some("offset") => Direction::Offset,
            _ => Direction::Onset,
        };
        let channel = Channel::from_ell_m(num("ell")? as u32, num("m")? as i32, num("eta_norm_sq")?)?;
        Ok(Self {
            kind,
            channel,
            omega: num("omega")?,
            bracket_lo: num("bracket_lo")?,
            bracket_hi: num("bracket_hi")?,
            direction,
            evidence: (0.0, 0.0),
        })
    }
}

/// Event refinement that ran out of budget or hit a failed solve.
#[derive(Debug, Clone, PartialEq)]
pub struct UnresolvedEvent {
    pub channel: Channel,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub channels: Vec<Channel>,
    pub omega_grid: Vec<f64>,
    /// `records[i][c]` for `omega_grid[i]` and `channels[c]`; `None` where
    /// the profile or eigen-solve failed.
    pub records: Vec<Vec<Option<SpectrumRecord>>>,
    pub failures: Vec<(f64, String)>,
    pub events: Vec<BifurcationEvent>,
    pub unresolved: Vec<UnresolvedEvent>,
}

impl SweepResult {
    pub fn is_complete(&self) -> bool {
        self.records.iter().flatten().all(Option::is_some)
    }

    pub fn is_empty(&self) -> bool {
        self.records.iter().flatten().all(Option::is_none)
    }

    /// Largest instability measure over all channels at `omega_grid[i]`, or
    /// `None` if some channel is missing there.
    pub fn measure_at(&self, i: usize) -> Option<f64> {
        self.records[i].iter().map(|r| r.as_ref().map(|r| r.instability_measure)).try_fold(0.0f64, |acc, m| m.map(|m| acc.max(m)))
    }

    /// Sweep CSV: one row per eigenvalue.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "omega,ell,m,eta_norm_sq,re_lambda,im_lambda,tag")?;
        for rec in self.records.iter().flatten().flatten() {
            let c = rec.channel;
            for (l, t) in rec.eigenvalues.iter().zip(&rec.tags) {
                writeln!(w, "{},{},{},{},{},{},{}", rec.omega, c.ell(), c.m(), c.eta_norm_sq(), l.re, l.im, t.as_str())?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is ascii")
    }

    /// Rebuilds the grid of records from a sweep CSV. Grid resolution is not
    /// stored in the table and is taken from `analysis`.
    pub fn read_csv<R: BufRead>(reader: R, analysis: &AnalysisOptions) -> Result<Self> {
        type Key = (u64, u32, i32, u64);
        let mut rows: BTreeMap<Key, (Vec<C64>, Vec<Tag>)> = BTreeMap::new();
        let mut lines = reader.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty sweep table".into()))??;
        if header.trim() != "omega,ell,m,eta_norm_sq,re_lambda,im_lambda,tag" {
            return Err(Error::Parse(format!("unexpected sweep header {header:?}")));
        }
        for (k, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.trim().split(',').collect();
            let bad = || Error::Parse(format!("sweep row {}: {line:?}", k + 2));
            if f.len() != 7 {
                return Err(bad());
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            let omega = num(f[0])?;
            let ell: u32 = f[1].parse().map_err(|_| bad())?;
            let m: i32 = f[2].parse().map_err(|_| bad())?;
            let eta = num(f[3])?;
            let tag = Tag::parse(f[6]).ok_or_else(bad)?;
            let entry = rows.entry((ordered_bits(omega), ell, m, ordered_bits(eta))).or_default();
            entry.0.push(C64::new(num(f[4])?, num(f[5])?));
            entry.1.push(tag);
        }
        let mut omegas: Vec<u64> = rows.keys().map(|k| k.0).collect();
        omegas.dedup();
        let mut chans: Vec<(u32, i32, u64)> = rows.keys().map(|k| (k.1, k.2, k.3)).collect();
        chans.sort();
        chans.dedup();
        let channels = chans
            .iter()
            .map(|&(l, m, e)| Channel::from_ell_m(l, m, from_ordered_bits(e)))
            .collect::<Result<Vec<_>>>()?;
        let records = omegas
            .iter()
            .map(|&w| {
                chans
                    .iter()
                    .zip(&channels)
                    .map(|(&(l, m, e), &channel)| {
                        rows.get(&(w, l, m, e)).map(|(eig, tags)| {
                            SpectrumRecord::from_tagged(from_ordered_bits(w), channel, analysis.n, analysis.map_scale, eig.clone(), tags.clone())
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            channels,
            omega_grid: omegas.into_iter().map(from_ordered_bits).collect(),
            records,
            failures: Vec::new(),
            events: Vec::new(),
            unresolved: Vec::new(),
        })
    }

    pub fn events_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.events.iter().map(BifurcationEvent::to_json).collect())
    }
}

// order-preserving map of non-negative and negative floats onto u64 keys
fn ordered_bits(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 { !b } else { b | (1 << 63) }
}

fn from_ordered_bits(k: u64) -> f64 {
    f64::from_bits(if k >> 63 == 1 { k & !(1 << 63) } else { !k })
}

/// Channels `(ell, m)` with `0 <= m <= ell` for every `ell <= ell_max` and
/// every `|eta|^2` given. Negative orders are omitted: the spectrum of
/// `(ell, -m)` is the complex conjugate of that of `(ell, m)`.
pub fn channels_up_to(ell_max: u32, eta_norm_sq: &[f64]) -> Result<Vec<Channel>> {
    let etas: &[f64] = if eta_norm_sq.is_empty() { &[0.0] } else { eta_norm_sq };
    let mut out = Vec::new();
    for ell in 0..=ell_max {
        for m in 0..=ell as i32 {
            for &eta in etas {
                let c = Channel::from_ell_m(ell, m, eta)?;
                // the order rescaling is void for m = 0
                if (m == 0 && eta != etas[0]) || out.contains(&c) {
                    continue;
                }
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// `steps` equispaced frequencies from `omega_min` to `omega_max`.
pub fn omega_grid(omega_min: f64, omega_max: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|i| omega_min + (omega_max - omega_min) * i as f64 / (steps - 1) as f64).collect()
}

fn validate(omega_min: f64, omega_max: f64, steps: usize, mass: f64) -> Result<()> {
    if !(0.0 < omega_min && omega_min < omega_max && omega_max < mass) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < omega_min < omega_max < mass, got {omega_min}, {omega_max}, mass {mass}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("a sweep needs at least 2 steps, got {steps}")));
    }
    Ok(())
}

/// Runs `f` over `0..count` on up to `jobs` threads; results land in index
/// order regardless of scheduling.
fn parallel_map<T: Send>(count: usize, jobs: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.clamp(1, count.max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let v = f(i);
                *slots[i].lock().expect("slot poisoned") = Some(v);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot poisoned").expect("every slot filled")).collect()
}

fn analyze_at(omega: f64, channel: Channel, opts: &SweepOptions, cache: &ProfileCache) -> Result<SpectrumRecord> {
    let profile = cache.get_or_solve(omega, opts.mass, &opts.shooting)?;
    analyze_channel(&profile, channel, &opts.analysis)
}

/// Classified spectra on `omega_grid(omega_min, omega_max, steps) x channels`.
/// Failed points are recorded and skipped; events are not refined here.
pub fn sweep(
    omega_min: f64,
    omega_max: f64,
    steps: usize,
    channels: &[Channel],
    opts: &SweepOptions,
    cache: &ProfileCache,
) -> Result<SweepResult> {
    validate(omega_min, omega_max, steps, opts.mass)?;
    let grid = omega_grid(omega_min, omega_max, steps);
    sweep_on(&grid, channels, opts, cache)
}

/// As [`sweep`] on an explicit increasing frequency list.
pub fn sweep_on(grid: &[f64], channels: &[Channel], opts: &SweepOptions, cache: &ProfileCache) -> Result<SweepResult> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("frequency grid must be strictly increasing".into()));
    }
    // profiles first, so that workers never solve the same one twice
    let profiles = parallel_map(grid.len(), opts.jobs, |i| cache.get_or_solve(grid[i], opts.mass, &opts.shooting).map(|_| ()));
    let nc = channels.len();
    let outcomes = parallel_map(grid.len() * nc, opts.jobs, |k| {
        let (i, c) = (k / nc, k % nc);
        match &profiles[i] {
            Ok(()) => analyze_at(grid[i], channels[c], opts, cache).map_err(|e| e.to_string()),
            Err(e) => Err(e.to_string()),
        }
    });
    let mut records = vec![Vec::with_capacity(nc); grid.len()];
    let mut failures = Vec::new();
    for (k, out) in outcomes.into_iter().enumerate() {
        let i = k / nc;
        match out {
            Ok(r) => records[i].push(Some(r)),
            Err(e) => {
                if !failures.iter().any(|(w, _): &(f64, String)| *w == grid[i]) {
                    failures.push((grid[i], e));
                }
                records[i].push(None);
            }
        }
    }
    Ok(SweepResult {
        channels: channels.to_vec(),
        omega_grid: grid.to_vec(),
        records,
        failures,
        events: Vec::new(),
        unresolved: Vec::new(),
    })
}

/// Eigenvalue with the largest real part among those tagged unstable.
fn leading_unstable(rec: &SpectrumRecord) -> Option<C64> {
    rec.unstable().filter(|l| l.re > 0.0).max_by(|a, b| a.re.total_cmp(&b.re).then(b.im.abs().total_cmp(&a.im.abs())))
}

/// Kind of the event from the unstable eigenvalue nearest to it.
fn event_kind(lambda: C64, omega: f64, mass: f64, tol: f64) -> EventKind {
    let edge = mass - omega.abs();
    if lambda.im.abs() <= tol.max(0.1 * lambda.re) {
        EventKind::Pitchfork
    } else if (lambda.im.abs() - edge).abs() <= 0.02 * edge + lambda.re.abs() {
        EventKind::ThresholdEmergence
    } else {
        EventKind::HamiltonianHopf
    }
}

/// Locates every stable/unstable transition between adjacent grid points of
/// each channel and refines it by bisection in omega, re-solving the profile
/// and spectrum at each midpoint. Events are sorted by `(omega, ell, m)`.
pub fn detect_events(result: &mut SweepResult, opts: &SweepOptions, cache: &ProfileCache) {
    struct Bracket {
        c: usize,
        lo: f64,
        hi: f64,
        lo_unstable: bool,
        lead: C64,
        lead_omega: f64,
    }
    let mut brackets = Vec::new();
    for c in 0..result.channels.len() {
        let pts: Vec<(f64, &SpectrumRecord)> = result
            .omega_grid
            .iter()
            .zip(&result.records)
            .filter_map(|(&w, row)| row[c].as_ref().map(|r| (w, r)))
            .collect();
        for pair in pts.windows(2) {
            let ((w0, r0), (w1, r1)) = (pair[0], pair[1]);
            if r0.is_stable() == r1.is_stable() {
                continue;
            }
            let (lead_rec, lead_omega) = if r0.is_stable() { (r1, w1) } else { (r0, w0) };
            let lead = leading_unstable(lead_rec).unwrap_or_default();
            brackets.push(Bracket { c, lo: w0, hi: w1, lo_unstable: !r0.is_stable(), lead, lead_omega });
        }
    }
    let refined = parallel_map(brackets.len(), opts.jobs, |k| {
        let b = &brackets[k];
        let channel = result.channels[b.c];
        let (mut lo, mut hi) = (b.lo, b.hi);
        let (mut lead, mut lead_omega) = (b.lead, b.lead_omega);
        let mut steps = 0;
        while hi - lo >= opts.refine_tol {
            if steps == opts.max_bisections {
                return Err(UnresolvedEvent { channel, bracket_lo: lo, bracket_hi: hi, reason: "bisection budget exhausted".into() });
            }
            steps += 1;
            let mid = 0.5 * (lo + hi);
            let rec = analyze_at(mid, channel, opts, cache)
                .map_err(|e| UnresolvedEvent { channel, bracket_lo: lo, bracket_hi: hi, reason: e.to_string() })?;
            let unstable = !rec.is_stable();
            if unstable {
                lead = leading_unstable(&rec).unwrap_or(lead);
                lead_omega = mid;
            }
            if unstable == b.lo_unstable {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(BifurcationEvent {
            kind: event_kind(lead, lead_omega, opts.mass, opts.analysis.tol.re_tol),
            channel,
            omega: 0.5 * (lo + hi),
            bracket_lo: lo,
            bracket_hi: hi,
            direction: if b.lo_unstable { Direction::Onset } else { Direction::Offset },
            evidence: (lead.re, lead.im),
        })
    });
    result.events.clear();
    result.unresolved.clear();
    for r in refined {
        match r {
            Ok(e) => result.events.push(e),
            Err(u) => result.unresolved.push(u),
        }
    }
    result.events.sort_by(|a, b| {
        a.omega
            .total_cmp(&b.omega)
            .then(a.channel.ell().cmp(&b.channel.ell()))
            .then(a.channel.m().cmp(&b.channel.m()))
            .then(a.channel.eta_norm_sq().total_cmp(&b.channel.eta_norm_sq()))
    });
}

/// One eigenvalue branch followed across adjacent frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub channel: Channel,
    pub points: Vec<(f64, C64)>,
}

/// Links eigenvalues tagged `tags` between adjacent grid frequencies by
/// mutual nearest neighbours, refusing links that move faster than
/// `max_speed` (in |d lambda / d omega|).
pub fn continue_branches(result: &SweepResult, tags: &[Tag], max_speed: f64) -> Vec<Branch> {
    let mut out = Vec::new();
    for (c, &channel) in result.channels.iter().enumerate() {
        let mut open: Vec<Branch> = Vec::new();
        let mut prev_omega = f64::NAN;
        for (i, row) in result.records.iter().enumerate() {
            let w = result.omega_grid[i];
            let Some(rec) = &row[c] else {
                out.append(&mut open);
                continue;
            };
            let pts: Vec<C64> = rec.eigenvalues.iter().zip(&rec.tags).filter(|(_, t)| tags.contains(t)).map(|(l, _)| *l).collect();
            let cap = max_speed * (w - prev_omega).abs();
            let last: Vec<C64> = open.iter().map(|b| b.points.last().expect("branches are non-empty").1).collect();
            let mut next_open = Vec::new();
            let mut used = vec![false; pts.len()];
            for (k, b) in open.drain(..).enumerate() {
                let near = pts.iter().enumerate().min_by(|x, y| (x.1 - last[k]).norm().total_cmp(&(y.1 - last[k]).norm()));
                let linked = near.and_then(|(j, p)| {
                    let back = last.iter().enumerate().min_by(|x, y| (x.1 - p).norm().total_cmp(&(y.1 - p).norm()))?.0;
                    (back == k && !used[j] && (p - last[k]).norm() <= cap).then_some(j)
                });
                match linked {
                    Some(j) => {
                        used[j] = true;
                        let mut b = b;
                        b.points.push((w, pts[j]));
                        next_open.push(b);
                    }
                    None => out.push(b),
                }
            }
            for (j, p) in pts.iter().enumerate() {
                if !used[j] {
                    next_open.push(Branch { channel, points: vec![(w, *p)] });
                }
            }
            open = next_open;
            prev_omega = w;
        }
        out.append(&mut open);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelIntervals {
    pub channel: Channel,
    pub unstable: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Maximal frequency intervals where every channel is stable.
    pub window: Vec<(f64, f64)>,
    pub channels: Vec<ChannelIntervals>,
    pub events: Vec<BifurcationEvent>,
    /// `(omega, channel, lambda)` for every artifact-suspect eigenvalue with
    /// positive real part; these never count as instabilities.
    pub artifacts: Vec<(f64, Channel, C64)>,
}

/// Boundary between grid points `a < b` of a channel, using a refined
/// event when one lies in `[a, b]` and the midpoint otherwise.
fn boundary(events: &[BifurcationEvent], channel: Channel, a: f64, b: f64) -> f64 {
    events
        .iter()
        .find(|e| e.channel == channel && e.omega >= a && e.omega <= b)
        .map(|e| e.omega)
        .unwrap_or(0.5 * (a + b))
}

fn unstable_intervals(result: &SweepResult, c: usize) -> Vec<(f64, f64)> {
    let channel = result.channels[c];
    let pts: Vec<(f64, bool)> = result
        .omega_grid
        .iter()
        .zip(&result.records)
        .filter_map(|(&w, row)| row[c].as_ref().map(|r| (w, !r.is_stable())))
        .collect();
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    for (k, &(w, unstable)) in pts.iter().enumerate() {
        match (unstable, start) {
            (true, None) => start = Some(if k == 0 { w } else { boundary(&result.events, channel, pts[k - 1].0, w) }),
            (false, Some(s)) => {
                out.push((s, boundary(&result.events, channel, pts[k - 1].0, w)));
                start = None;
            }
            _ => {}
        }
    }
    if let (Some(s), Some(&(w, _))) = (start, pts.last()) {
        out.push((s, w));
    }
    out
}

/// Maximal subintervals of `[lo, hi]` avoiding every interval in `bad`.
fn stable_complement(mut bad: Vec<(f64, f64)>, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    bad.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut window = Vec::new();
    let mut cursor = lo;
    let mut open = true;
    for (a, b) in bad {
        if a > cursor && open {
            window.push((cursor, a.min(hi)));
        }
        if b >= cursor {
            cursor = b;
            // an interval ending at the top of the range closes the window
            open = b < hi;
        }
    }
    if open && cursor < hi {
        window.push((cursor, hi));
    }
    window.retain(|(a, b)| a < b);
    window
}

/// Common stable window of several reports over `[lo, hi]`, for sweeps of
/// disjoint channel sets that each cover that range.
pub fn joint_window(reports: &[StabilityReport], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let bad = reports.iter().flat_map(|r| r.channels.iter()).flat_map(|c| c.unstable.iter().copied()).collect();
    stable_complement(bad, lo, hi)
}

/// Per-channel instability intervals and their common stable complement
/// within the swept range.
pub fn stability_report(result: &SweepResult) -> StabilityReport {
    let channels: Vec<ChannelIntervals> = (0..result.channels.len())
        .map(|c| ChannelIntervals { channel: result.channels[c], unstable: unstable_intervals(result, c) })
        .collect();
    let mut artifacts = Vec::new();
    for (i, row) in result.records.iter().enumerate() {
        for rec in row.iter().flatten() {
            for l in rec.tagged(Tag::ArtifactSuspect).filter(|l| l.re > 0.0) {
                artifacts.push((result.omega_grid[i], rec.channel, l));
            }
        }
    }
    let window = match (result.omega_grid.first(), result.omega_grid.last()) {
        (Some(&lo), Some(&hi)) if !result.is_empty() => stable_complement(channels.iter().flat_map(|c| c.unstable.iter().copied()).collect(), lo, hi),
        _ => Vec::new(),
    };
    StabilityReport { window, channels, events: result.events.clone(), artifacts }
}

impl StabilityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": self.window,
            "channels": self.channels.iter().map(|c| serde_json::json!({
                "ell": c.channel.ell(),
                "m": c.channel.m(),
                "eta_norm_sq": c.channel.eta_norm_sq(),
                "unstable": c.unstable,
            })).collect::<Vec<_>>(),
            "events": self.events.iter().map(BifurcationEvent::to_json).collect::<Vec<_>>(),
            "artifacts": self.artifacts.iter().map(|(w, c, l)| serde_json::json!({
                "omega": w, "ell": c.ell(), "m": c.m(), "eta_norm_sq": c.eta_norm_sq(), "re": l.re, "im": l.im,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Pitchfork frequency of the `m = 0` channel for each `ell`: the largest
/// refined pitchfork found in `[omega_min, omega_max]`.
pub fn omega_p_curve(
    ells: &[u32],
    omega_min: f64,
    omega_max: f64,
    steps: usize,
    opts: &SweepOptions,
    cache: &ProfileCache,
) -> Result<Vec<(u32, f64)>> {
    validate(omega_min, omega_max, steps, opts.mass)?;
    let channels = ells
        .iter()
        .map(|&ell| Channel::from_ell_m(ell, 0, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let mut result = sweep(omega_min, omega_max, steps, &channels, opts, cache)?;
    detect_events(&mut result, opts, cache);
    ells.iter()
        .zip(&channels)
        .map(|(&ell, &ch)| {
            result
                .events
                .iter()
                .filter(|e| e.channel == ch && e.kind == EventKind::Pitchfork)
                .map(|e| e.omega)
                .reduce(f64::max)
                .map(|w| (ell, w))
                .ok_or(Error::MissingPitchfork(ell))
        })
        .collect()
}
