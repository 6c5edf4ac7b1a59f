//! Integral cohomology of every built-in complex, computed from Smith
//! normal form of the coboundary matrices.
//!
//!     cargo run --example cohomology_of_builtin_complexes

use std::collections::BTreeSet;

use diffcoh::cochain::homology::cohomology_z;
use diffcoh::linalg::AbelianGroup;
use diffcoh::simplicial::builtins;

fn show(g: &AbelianGroup) -> String {
    let mut parts = vec![];
    if g.rank > 0 {
        parts.push(if g.rank == 1 { "Z".into() } else { format!("Z^{}", g.rank) });
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

fn main() {
    let spaces = vec![
        builtins::point(),
        builtins::interval(),
        builtins::circle(),
        builtins::boundary(2),
        builtins::torus().total,
        builtins::rp2(),
        builtins::klein(),
    ];
    let none = BTreeSet::new();
    for space in spaces {
        let hs: Vec<String> = (0..=space.dim())
            .map(|n| format!("H^{n} = {}", show(&cohomology_z(&space, &none, n))))
            .collect();
        println!(
            "{:<12} ({} nondegenerate cells)  {}",
            space.name,
            space.all_cells().count(),
            hs.join(", ")
        );
    }

    // relative cohomology of the disk modulo its boundary
    let pair = builtins::simplex_boundary_pair(2);
    let hs: Vec<String> = (0..=2)
        .map(|n| {
            format!("H^{n} = {}", show(&cohomology_z(&pair.space, &pair.sub_cells, n)))
        })
        .collect();
    println!("{:<12} (relative)              {}", "(D2, bd D2)", hs.join(", "));
}
