//! A reduced random regular graph scan written as CSV to stdout.

use hypavg::experiments::{run_experiment, write_csv, ExperimentSpec, Scan};

fn main() -> hypavg::Result<()> {
    let spec = ExperimentSpec {
        grid: vec![100, 200, 400],
        samples: 2_000,
        quad_samples: 5_000,
        ..ExperimentSpec::preset(Scan::Rrg)
    };
    let rows = run_experiment(&spec)?;
    write_csv(&rows, std::io::stdout())
}
