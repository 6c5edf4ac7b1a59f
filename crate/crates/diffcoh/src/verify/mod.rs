//! Batch verification front-end: jobs, suites, and certificates.
//!
//! A [`JobSpec`] names complexes, a coefficient ring, and verification
//! suites; [`run`] executes every (complex, suite) pair in a worker pool
//! and returns one [`Certificate`] per claim. Payloads are deterministic
//! functions of the seed, so re-running a job reproduces them byte for
//! byte (timings are recorded outside the payload).

mod suites;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cochain::homology::cohomology;
use crate::coeff::{self, Ring};
use crate::forms::extend::FormDegreeBudget;
use crate::linalg::AbelianGroup;
use crate::simplicial::product::circle_product;
use crate::simplicial::{builtins, SimplicialPair};

/// Environment variable naming the directory where finished job results
/// are cached (keyed by a hash of the job document).
pub const CACHE_ENV: &str = "DIFFCOH_CACHE";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobSpec {
    /// Named built-in complexes or pairs; see [`resolve_complex`].
    pub complexes: Vec<String>,
    /// Coefficient ring name: "integers", "poly-even", or
    /// "integers-odd-torsion".
    #[serde(default = "default_coefficients")]
    pub coefficients: String,
    /// Suites to run: any of "axioms", "group", "ring", "integration",
    /// "pairs", "products-odd".
    pub suites: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    /// Random samples per statistical claim.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Initial polynomial-degree cap for form solves.
    #[serde(default = "default_cap")]
    pub budget_cap: usize,
    /// Hard ceiling for budget escalation.
    #[serde(default = "default_limit")]
    pub budget_limit: usize,
    /// Self-test knob: when set, the axioms suite additionally runs a
    /// deliberately corrupted fixture, producing a failed certificate with
    /// a concrete counterexample. Useful for exercising failure reporting.
    #[serde(default)]
    pub corrupt: bool,
}

fn default_coefficients() -> String {
    "integers".into()
}
fn default_samples() -> usize {
    8
}
fn default_cap() -> usize {
    FormDegreeBudget::default().cap
}
fn default_limit() -> usize {
    FormDegreeBudget::default().limit
}

impl JobSpec {
    pub fn budget(&self) -> FormDegreeBudget {
        FormDegreeBudget { cap: self.budget_cap, limit: self.budget_limit }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 {
            return Err("sample count must be at least 1".into());
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(format!(
                    "unknown suite {s:?}; expected one of {SUITES:?}"
                ));
            }
        }
        for c in &self.complexes {
            resolve_complex(c)?;
        }
        ring_by_name(&self.coefficients)?;
        Ok(())
    }
}

pub const SUITES: [&str; 6] =
    ["axioms", "group", "ring", "integration", "pairs", "products-odd"];

/// One verified (or refuted) claim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    /// Stable claim identifier, e.g. "axioms/ker-I-eq-im-a @ circle".
    pub claim: String,
    /// "verified", "failed", or "budget-exhausted".
    pub status: String,
    /// Witness data for verified claims; a concrete counterexample for
    /// failed ones. Deterministic given the job seed.
    pub payload: serde_json::Value,
    /// Wall-clock milliseconds; excluded from the determinism guarantee.
    pub millis: u128,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.status == "verified"
    }
}

/// Resolve a named built-in complex or pair.
pub fn resolve_complex(name: &str) -> Result<SimplicialPair, String> {
    Ok(match name {
        "point" => SimplicialPair::absolute(&builtins::point()),
        "interval" => SimplicialPair::absolute(&builtins::interval()),
        "simplex-2" => SimplicialPair::absolute(&builtins::standard_simplex(2)),
        "simplex-3" => SimplicialPair::absolute(&builtins::standard_simplex(3)),
        "sphere-boundary-2" => SimplicialPair::absolute(&builtins::boundary(2)),
        "sphere-boundary-3" => SimplicialPair::absolute(&builtins::boundary(3)),
        "circle" => SimplicialPair::absolute(&builtins::circle()),
        "torus" => SimplicialPair::absolute(&builtins::torus().total),
        "rp2" => SimplicialPair::absolute(&builtins::rp2()),
        "klein" => SimplicialPair::absolute(&builtins::klein()),
        "disk-pair" => builtins::simplex_boundary_pair(2),
        "circle-pair" => circle_product(&builtins::circle()).pair,
        other => {
            return Err(format!(
                "unknown complex {other:?}; known: point, interval, \
                 simplex-2, simplex-3, sphere-boundary-2, sphere-boundary-3, \
                 circle, torus, rp2, klein, disk-pair, circle-pair"
            ))
        }
    })
}

pub fn ring_by_name(name: &str) -> Result<Ring, String> {
    Ok(match name {
        "integers" => coeff::integers(),
        "poly-even" => coeff::poly_even(2),
        "integers-odd-torsion" => coeff::integers_with_odd_torsion(),
        other => return Err(format!("unknown coefficient ring {other:?}")),
    })
}

/// Run a job: every (complex, suite) pair executes on its own worker and
/// the certificates are collected and sorted by claim identifier. With
/// `DIFFCOH_CACHE` set, finished jobs are cached by content hash.
pub fn run(job: &JobSpec) -> Result<Vec<Certificate>, String> {
    job.validate()?;
    let key = cache_key(job);
    if let Some(cached) = cache_read(&key) {
        return Ok(cached);
    }
    let mut certs: Vec<Certificate> = std::thread::scope(|scope| {
        let mut handles = vec![];
        for complex in &job.complexes {
            for suite in &job.suites {
                let job = job.clone();
                let complex = complex.clone();
                let suite = suite.clone();
                let label = format!("{suite} @ {complex}");
                handles.push((
                    label,
                    scope.spawn(move || suites::run_suite(&job, &complex, &suite)),
                ));
            }
        }
        handles
            .into_iter()
            .flat_map(|(label, h)| {
                h.join().unwrap_or_else(|_| {
                    vec![Certificate {
                        claim: label,
                        status: "failed".into(),
                        payload: serde_json::json!({
                            "error": "worker panicked"
                        }),
                        millis: 0,
                    }]
                })
            })
            .collect()
    });
    certs.sort_by(|a, b| a.claim.cmp(&b.claim));
    cache_write(&key, &certs);
    Ok(certs)
}

fn cache_key(job: &JobSpec) -> String {
    // FNV-1a over the canonical job document
    let doc = serde_json::to_string(job).unwrap();
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in doc.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn cache_read(key: &str) -> Option<Vec<Certificate>> {
    let dir = std::env::var(CACHE_ENV).ok()?;
    let raw = std::fs::read_to_string(
        std::path::Path::new(&dir).join(format!("{key}.json")),
    )
    .ok()?;
    serde_json::from_str(&raw).ok()
}

fn cache_write(key: &str, certs: &[Certificate]) {
    let Ok(dir) = std::env::var(CACHE_ENV) else { return };
    let _ = std::fs::create_dir_all(&dir);
    let path = std::path::Path::new(&dir).join(format!("{key}.json"));
    let _ = std::fs::write(path, serde_json::to_string_pretty(certs).unwrap());
}

fn present_group(g: &AbelianGroup) -> String {
    let mut parts = vec![];
    if g.rank > 0 {
        parts.push(if g.rank == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", g.rank)
        });
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Structural invariants of E^n and its differential refinement on a named
/// complex: the cohomology presentation, the rank of the curvature image,
/// and the dimension of the connected component of the flat part.
pub fn compute(
    complex: &str,
    n: usize,
    coefficients: &str,
) -> Result<serde_json::Value, String> {
    let pair = resolve_complex(complex)?;
    let ring = ring_by_name(coefficients)?;
    let exclude: &BTreeSet<_> = &pair.sub_cells;
    let e_n = cohomology(&pair.space, exclude, &ring, n);
    let e_prev = if n > 0 {
        cohomology(&pair.space, exclude, &ring, n - 1)
    } else {
        AbelianGroup::trivial()
    };
    // curvature forms realize exactly the lattice of free classes, and the
    // identity component of the flat part is the torus
    // H^{n-1}(M;V) / rho(H^{n-1}(M;Lambda))
    Ok(serde_json::json!({
        "complex": complex,
        "degree": n,
        "coefficients": coefficients,
        "cohomology": present_group(&e_n),
        "rank_im_R": e_n.rank,
        "flat_torus_rank": e_prev.rank,
        "flat_torsion": e_n.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    }))
}
