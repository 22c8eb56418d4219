//! Small `ell <= 1` sweep rendered to SVG in a temporary directory.

use soler::plot::write_plots;
use soler::sweep::{channels_up_to, sweep};
use soler::{AnalysisOptions, ProfileCache, SweepOptions};

fn main() -> soler::Result<()> {
    let opts = SweepOptions { analysis: AnalysisOptions { n: 48, ..Default::default() }, ..Default::default() };
    let result = sweep(0.3, 0.95, 14, &channels_up_to(1, &[])?, &opts, &ProfileCache::new())?;
    let dir = std::env::temp_dir().join("soler-plot-example");
    for path in write_plots(&result, 1.0, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
