//! Assembles the linearization for one angular channel and reports its
//! block structure.

use soler::{assemble, build_grid, solve_profile, Channel, ShootingOptions};

fn main() -> soler::Result<()> {
    let p = solve_profile(0.6, 1.0, &ShootingOptions::default())?;
    let grid = build_grid(40, 10.0)?;
    for (ell, m) in [(0, 0), (1, 0), (2, 1), (3, 3)] {
        let op = assemble(&p, &grid, Channel::from_ell_m(ell, m, 0.0)?)?;
        let layout: Vec<String> = op.layout.iter().map(|c| format!("{c:?}")).collect();
        println!("ell = {ell}, m = {m}: {}x{}, components {}", op.size(), op.size(), layout.join(" "));
    }
    Ok(())
}
