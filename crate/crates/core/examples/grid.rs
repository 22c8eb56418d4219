//! Mapped Chebyshev grid on the half-line: differentiation and quadrature
//! of `e^{-r}` as the node count grows.

use soler::build_grid;

fn main() -> soler::Result<()> {
    for n in [16, 32, 64, 128] {
        let g = build_grid(n, 10.0)?;
        let f: Vec<f64> = g.nodes.iter().map(|r| (-r).exp()).collect();
        let mut derr = 0.0f64;
        for i in 0..n {
            let d: f64 = (0..n).map(|j| g.diff[(i, j)] * f[j]).sum();
            derr = derr.max((d + f[i]).abs());
        }
        let ierr = (g.integrate(&f) - 1.0).abs();
        println!("n = {n:4}  r in [{:.2e}, {:.2e}]  max|f' - (-f)| = {derr:.2e}  |int f - 1| = {ierr:.2e}", g.nodes[0], g.nodes[n - 1]);
    }
    Ok(())
}
