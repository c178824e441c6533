//! Runs the benchmark harness on the three standard scenes and prints the CSV.
//! `FREEHULL_SEED` overrides the scene seed.

use freehull::bench::{run_benchmark, seed_override};
use freehull::SceneSpec;

fn main() -> freehull::Result<()> {
    let seed = seed_override()?.unwrap_or(0);
    let report = run_benchmark(&SceneSpec::standard_set(seed), 3, 1)?;
    print!("{}", report.to_csv());
    eprintln!("{} failed rows", report.failures());
    Ok(())
}
