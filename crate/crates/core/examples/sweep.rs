//! Frequency sweep of the spherically symmetric channel around the
//! onset of its real instability, with the event refined by bisection.

use soler::sweep::sweep;
use soler::{detect_events, stability_report, AnalysisOptions, Channel, ProfileCache, SweepOptions};

fn main() -> soler::Result<()> {
    let opts = SweepOptions { analysis: AnalysisOptions { n: 100, ..Default::default() }, ..Default::default() };
    let cache = ProfileCache::new();
    let mut result = sweep(0.90, 0.98, 9, &[Channel::Ell0], &opts, &cache)?;
    detect_events(&mut result, &opts, &cache);
    for (w, row) in result.omega_grid.iter().zip(&result.records) {
        let rec = row[0].as_ref().expect("profile solved");
        println!("omega = {w:.3}  max Re lambda = {:.6}", rec.instability_measure);
    }
    for e in &result.events {
        println!("{} at omega = {:.5} in [{:.5}, {:.5}]", e.kind.as_str(), e.omega, e.bracket_lo, e.bracket_hi);
    }
    println!("stable on {:?}", stability_report(&result).window);
    Ok(())
}
