//! A flat class of order two on the circle: half the volume form is not
//! integral, so a(tau/2) is nonzero, but its double dies with an explicit
//! witness.
//!
//!     cargo run --example torsion_from_a_half_volume

use diffcoh::coeff;
use diffcoh::forms::circle_volume;
use diffcoh::linalg::rat;
use diffcoh::simplicial::{builtins, SimplicialPair};
use diffcoh::theory::equiv::{equivalent, Equivalence};
use diffcoh::theory::{a_map, CorrectionData, DifferentialTriple};

fn main() {
    let ring = coeff::integers();
    let s1 = builtins::circle();
    let base = SimplicialPair::absolute(&s1);
    let tau = circle_volume(&ring, &s1);

    let half = a_map(&base, &tau.scale(&rat(1, 2)).neg());
    println!("a(-tau/2): degree {}, flat: {}", half.degree, half.is_flat());

    let zero = DifferentialTriple::zero(&ring, &base, 2);
    match equivalent(&half, &zero).unwrap() {
        Equivalence::Distinct(d) => println!("nonzero: {}", d.reason),
        Equivalence::Witness(_) => println!("unexpectedly trivial"),
    }

    let doubled = half.add(&half, &CorrectionData::default()).unwrap();
    match equivalent(&doubled, &zero).unwrap() {
        Equivalence::Witness(w) => println!(
            "2 a(-tau/2) = 0 with verified witness: {}",
            w.verify(&doubled, &zero)
        ),
        Equivalence::Distinct(d) => println!("doubling failed to vanish: {}", d.reason),
    }
}
