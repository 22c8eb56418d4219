//! Ground-state profile at one frequency, with its charge and energy.
//!
//! cargo run --example profile -- 0.9

use soler::charges::profile_charge;
use soler::{energy, solve_profile, RadialQuadrature, ShootingOptions};

fn main() -> soler::Result<()> {
    let omega: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.9);
    let p = solve_profile(omega, 1.0, &ShootingOptions::default())?;
    let quad = RadialQuadrature::default();
    println!("omega = {omega}");
    println!("v(0) = {:.12}", p.v_at_zero);
    println!("kappa = {:.12}", p.kappa);
    println!("samples = {}, max residual = {:.2e}", p.samples.len(), p.max_residual());
    println!("Q = {:.8}, E = {:.8}", profile_charge(&p, &quad), energy(&p, &quad));
    for r in [0.0, 1.0, 2.0, 5.0, 10.0] {
        let (v, u) = p.eval(r);
        println!("r = {r:5.1}  v = {v:+.6e}  u = {u:+.6e}");
    }
    Ok(())
}
