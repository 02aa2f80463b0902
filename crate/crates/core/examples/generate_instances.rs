//! Writes a small batch of seeded instances, reads one back and prints its
//! header.

use subknap::benchmarks::{read_instance, GenParams, Methodology, Problem};
use subknap::harness::{cmd_gen, read_manifest, GenSource};

fn main() -> subknap::Result<()> {
    let out = std::env::temp_dir().join("subknap-generate-example");
    for (methodology, problem) in [(Methodology::Sakaue, Problem::Cov), (Methodology::Ours, Problem::Inf)] {
        let mut params = GenParams::defaults(methodology, problem, 0);
        params.n = 40;
        params.m = 100;
        let source = GenSource::Artificial {
            params,
            count: 3,
            master_seed: 2024,
        };
        let manifest = cmd_gen(&source, &out.join(format!("{problem}-{methodology}")))?;
        let files = read_manifest(&manifest)?;
        let first = read_instance(&files[0])?;
        println!(
            "{}: {} files, first has n={} m={} B={} seed={:?}",
            manifest.display(),
            files.len(),
            first.instance.n(),
            first.instance.m(),
            first.instance.budget(),
            first.meta.seed
        );
        let text = std::fs::read_to_string(&files[0]).unwrap_or_default();
        for line in text.lines().take(4) {
            println!("    {line}");
        }
    }
    Ok(())
}
