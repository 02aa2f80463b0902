//! Cross-checks all eight solvers against exhaustive enumeration on a few
//! small instances of every problem family.

use std::time::Duration;

use subknap::benchmarks::{GenParams, Methodology, Problem};
use subknap::harness::{cmd_gen, cmd_verify, GenSource};

fn main() -> subknap::Result<()> {
    let dir = std::env::temp_dir().join("subknap-verify-example");
    for problem in Problem::ALL {
        for methodology in [Methodology::Sakaue, Methodology::Ours] {
            let mut params = GenParams::defaults(methodology, problem, 0);
            (params.n, params.m, params.budget) = (14, 40, 1.0);
            let source = GenSource::Artificial {
                params,
                count: 5,
                master_seed: 9,
            };
            let manifest = cmd_gen(&source, &dir.join(format!("{problem}-{methodology}")))?;
            let report = cmd_verify(&manifest, 20, Duration::from_secs(60))?;
            println!(
                "{problem}/{methodology}: {} checked, {} mismatches",
                report.checked,
                report.mismatches.len()
            );
            for m in &report.mismatches {
                println!("  {} {}: {} vs {}", m.instance_id, m.solver, m.found, m.expected);
            }
        }
    }
    Ok(())
}
