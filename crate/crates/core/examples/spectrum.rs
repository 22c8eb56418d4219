//! Classified spectrum of one channel: eigenvalues outside the essential
//! band, with their tags.
//!
//! cargo run --release --example spectrum -- 0.95 0 0

use soler::{analyze_channel, solve_profile, AnalysisOptions, Channel, ShootingOptions, Tag};

fn main() -> soler::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let omega: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.95);
    let ell: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);
    let m: i32 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0);
    let p = solve_profile(omega, 1.0, &ShootingOptions::default())?;
    let opts = AnalysisOptions { n: 100, ..Default::default() };
    let rec = analyze_channel(&p, Channel::from_ell_m(ell, m, 0.0)?, &opts)?;
    println!("omega = {omega}, ell = {ell}, m = {m}, instability measure = {:.6}", rec.instability_measure);
    for (l, t) in rec.eigenvalues.iter().zip(&rec.tags) {
        if *t != Tag::Essential {
            println!("{:+.8} {:+.8}i  {}", l.re, l.im, t.as_str());
        }
    }
    Ok(())
}
