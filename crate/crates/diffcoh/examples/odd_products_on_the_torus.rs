//! Odd-degree products through suspension: the two circle factors of the
//! torus multiply to the fundamental class, match the classical cup
//! pairing, and anticommute.
//!
//!     cargo run --example odd_products_on_the_torus

use std::collections::BTreeSet;

use diffcoh::coeff;
use diffcoh::forms::bhomotopy::BHomotopy;
use diffcoh::forms::extend::FormDegreeBudget;
use diffcoh::simplicial::{builtins, SimplicialPair};
use diffcoh::theory::equiv::is_equivalent;
use diffcoh::theory::lift::lambda_class_trivial;
use diffcoh::theory::product::{circle_class, product_full};
use diffcoh::theory::CorrectionData;

fn main() {
    let ring = coeff::integers();
    let t2 = builtins::torus();
    let base = SimplicialPair::absolute(&t2.total);
    let bh = BHomotopy::new(&ring);
    let budget = FormDegreeBudget::default();
    let none = BTreeSet::new();

    let z1 = circle_class(&ring, &t2.left).pullback(&base, &t2.pr1).unwrap();
    let z2 = circle_class(&ring, &t2.right).pullback(&base, &t2.pr2).unwrap();

    let p = product_full(&z1, &z2, &bh, budget).unwrap();
    println!("z1 * z2: degree {}", p.degree);
    println!(
        "nonzero characteristic class: {}",
        !lambda_class_trivial(&ring, &t2.total, &none, &p.c)
    );

    // the underlying class matches the simplicial cup product up to sign
    let oracle = z1.c.cup(&z2.c);
    let matches = lambda_class_trivial(&ring, &t2.total, &none, &p.c.sub(&oracle))
        || lambda_class_trivial(&ring, &t2.total, &none, &p.c.add(&oracle));
    println!("matches the cup pairing up to sign: {matches}");

    // odd times odd anticommutes
    let q = product_full(&z2, &z1, &bh, budget).unwrap();
    let anti =
        is_equivalent(&p, &q.neg(&CorrectionData::default()).unwrap()).unwrap();
    println!("z1 z2 ~ -(z2 z1): {anti}");
}
