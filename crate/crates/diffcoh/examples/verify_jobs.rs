//! The batch verifier as a library: build a job, run it, and read the
//! certificates. The same job can be run from the command line:
//!
//!     cargo run --bin diffcoh -- run job.json
//!
//!     cargo run --example verify_jobs

use diffcoh::verify::{run, JobSpec};

fn main() {
    let job: JobSpec = serde_json::from_value(serde_json::json!({
        "complexes": ["circle", "disk-pair"],
        "suites": ["axioms", "group", "pairs"],
        "seed": 2024,
        "samples": 2,
    }))
    .unwrap();

    let certs = run(&job).unwrap();
    for c in &certs {
        println!("{:<45} {:<10} {:>5} ms", c.claim, c.status, c.millis);
    }
    let failed = certs.iter().filter(|c| !c.ok()).count();
    println!("{} claims, {} failed", certs.len(), failed);

    // failures carry concrete counterexamples; provoke one deliberately
    let mut bad = job;
    bad.corrupt = true;
    let certs = run(&bad).unwrap();
    for c in certs.iter().filter(|c| !c.ok()) {
        println!("\ncorrupted fixture -> {} ({})", c.claim, c.status);
        println!("{}", serde_json::to_string_pretty(&c.payload).unwrap());
    }
}
