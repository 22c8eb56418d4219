//! SU(1,1) orbit of a one-frequency wave: the charges move, `Q^2 - |Sigma|^2`
//! does not.

use std::sync::Arc;

use soler::{apply_su11, charges, one_frequency, solve_profile, RadialQuadrature, ShootingOptions, Su11};

fn main() -> soler::Result<()> {
    let p = Arc::new(solve_profile(0.9, 1.0, &ShootingOptions::default())?);
    let quad = RadialQuadrature::default();
    let psi = one_frequency(p);
    for s in [0.0, 0.5, 1.0, 1.5] {
        let g = Su11::from_angles(s, 0.3, -0.7);
        let f = apply_su11(&g, &psi);
        let (q, sigma) = charges(&f, &quad);
        println!(
            "s = {s:.1}  Q = {q:12.6}  Sigma = {:+.6}{:+.6}i  Q^2 - |Sigma|^2 = {:.10}  attracting = {}",
            sigma.re,
            sigma.im,
            q * q - sigma.norm_sqr(),
            f.is_attracting()
        );
    }
    Ok(())
}
