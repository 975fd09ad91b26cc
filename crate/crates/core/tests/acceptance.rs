//! One line per acceptance criterion; exits nonzero if any fails.
//! `NPF_SEED` overrides the default seed.

use npf::acceptance::{format_line, run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::var("NPF_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    println!("acceptance (seed {seed})");
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{}", format_line(o));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
