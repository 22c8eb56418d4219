//! Run configuration: defaults, a partial TOML file, and the channel list
//! it selects.

use soler::RunConfig;

fn main() -> soler::Result<()> {
    let text = r#"
ell_max = 3
m = [0, 2]
eta_norm_sq = [0.0, 0.5]
n = 200

[tolerances]
re_tol = 1e-5
"#;
    let cfg = RunConfig::from_toml(text)?;
    for c in cfg.channels()? {
        println!("ell = {}, m = {}, |eta|^2 = {}", c.ell(), c.m(), c.eta_norm_sq());
    }
    println!("---\n{}", cfg.to_toml());
    Ok(())
}
