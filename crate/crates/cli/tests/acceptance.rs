//! Runs the thirteen acceptance criteria, one line each. Criteria listed in
//! `KNOWN_FAILURES` are printed as failures but do not fail the target; any
//! other failure does.

use pmscheme::Execution;
use pmscheme_cli::acceptance::{run_all, Ctx, KNOWN_FAILURES};
use pmscheme_cli::cache::Cache;

fn main() {
    let ctx = Ctx { cache: Cache::disabled(), exec: Execution::default() };
    let results = run_all(&ctx, |r| println!("{}", r.line()));
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    let mut unexpected = 0;
    for r in results.iter().filter(|r| !r.passed) {
        match KNOWN_FAILURES.iter().find(|(id, _)| *id == r.id) {
            Some((_, why)) => println!("criterion {} fails for a known reason: {why}", r.id),
            None => unexpected += 1,
        }
    }
    for (id, _) in KNOWN_FAILURES {
        if results.iter().any(|r| r.id == *id && r.passed) {
            println!("criterion {id} is listed as a known failure but now passes");
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
