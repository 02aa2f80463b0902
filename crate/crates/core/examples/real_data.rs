//! Loads the two dataset formats and solves the resulting instances.
//!
//! Without arguments the bundled miniature files are used; pass a forum
//! edge list and a MovieLens `u.data` file to load the real ones:
//!
//! ```text
//! cargo run --release --example real_data -- forum.txt u.data
//! ```

use std::path::PathBuf;
use std::time::Duration;

use subknap::benchmarks::{load_forum_cov, load_movielens_inf};
use subknap::harness::run_solver;

fn main() -> subknap::Result<()> {
    let here = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let args: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    let forum = args.first().cloned().unwrap_or_else(|| here.join("forum_small.txt"));
    let ratings = args
        .get(1)
        .cloned()
        .unwrap_or_else(|| here.join("movielens_small.data"));

    for inst in [load_forum_cov(&forum)?, load_movielens_inf(&ratings)?] {
        let any = &inst.instance;
        println!("{}: n={} m={} B={}", any.problem(), any.n(), any.m(), any.budget());
        println!("  first costs {:?}", &any.weights()[..any.n().min(5)]);
        let r = run_solver(any, "lecr".parse()?, Duration::from_secs(600));
        println!(
            "  {} value {:.4} set {} nodes {}",
            r.status, r.best_value, r.best_set, r.nodes
        );
    }
    Ok(())
}
