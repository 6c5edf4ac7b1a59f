//! Differential cohomology classes as triples (c, omega, h) tied together
//! by the structure equation delta h = deRham(omega) - rho(c), and the
//! witness-producing equivalence test.
//!
//!     cargo run --example differential_classes

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffcoh::coeff;
use diffcoh::forms::extend::FormDegreeBudget;
use diffcoh::simplicial::{builtins, SimplicialPair};
use diffcoh::theory::equiv::{equivalent, Equivalence};
use diffcoh::theory::lift::{random_triple, random_z_cochain};
use diffcoh::theory::product::circle_class;
use diffcoh::theory::DifferentialTriple;

fn main() {
    let ring = coeff::integers();
    let s1 = builtins::circle();
    let base = SimplicialPair::absolute(&s1);

    // the canonical degree-1 class: winding cocycle + volume form
    let z = circle_class(&ring, &s1);
    println!("circle class: degree {}, c = {:?}", z.degree, z.c.values);
    println!("structure equation holds: {}", z.validate().is_ok());

    // changing the representative by (delta b, 0, -rho(b)) stays equivalent,
    // and the decision procedure returns a checkable witness
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let b = random_z_cochain(&ring, &s1, &base.sub_cells, 0, &mut rng);
    let shifted = DifferentialTriple::new(
        &base,
        1,
        z.c.add(&b.delta()),
        z.omega.clone(),
        z.h.sub(&b.rho()),
    )
    .unwrap();
    match equivalent(&z, &shifted).unwrap() {
        Equivalence::Witness(w) => {
            println!(
                "shifted representative: equivalent, witness verifies: {}",
                w.verify(&z, &shifted)
            );
        }
        Equivalence::Distinct(d) => println!("unexpectedly distinct: {}", d.reason),
    }

    // a random class and the zero class of the same degree are distinct
    // whenever their curvatures differ; the certificate says why
    let t = random_triple(&ring, &base, 1, &mut rng, FormDegreeBudget::default())
        .unwrap();
    let zero = DifferentialTriple::zero(&ring, &base, 1);
    match equivalent(&t, &zero).unwrap() {
        Equivalence::Witness(_) => println!("random triple happened to be trivial"),
        Equivalence::Distinct(d) => println!("random triple vs zero: {}", d.reason),
    }
}
