//! Normalized cochains: cup products on the torus and the cylinder
//! integration identity that drives every homotopy argument in the crate.
//!
//!     cargo run --example cochain_calculus

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffcoh::cochain::chains::{cob_witness, integrate_fiber};
use diffcoh::cochain::Cochain;
use diffcoh::coeff;
use diffcoh::simplicial::builtins;
use diffcoh::simplicial::product::cylinder;
use diffcoh::theory::lift::random_q_cochain;

fn main() {
    let ring = coeff::integers();
    let none = BTreeSet::new();

    // the two edge cocycles of the torus cup to the fundamental class
    let t2 = builtins::torus();
    let mut z = Cochain::zero(&ring, &t2.left, 1);
    z.set(t2.left.cell_by_name("e").unwrap(), ring.one_l());
    let z1 = z.pullback(&t2.pr1);
    let mut z = Cochain::zero(&ring, &t2.right, 1);
    z.set(t2.right.cell_by_name("e").unwrap(), ring.one_l());
    let z2 = z.pullback(&t2.pr2);
    assert!(z1.delta().is_zero() && z2.delta().is_zero());
    let pairing = z1.cup(&z2);
    println!("torus edge cocycles: delta z1 = delta z2 = 0");
    println!("cup product on the 2-cells: {:?}", pairing.values);

    // the cylinder identity: int(delta u) + delta(int u) = i1* u - i0* u
    let s1 = builtins::circle();
    let cyl = cylinder(&s1);
    let edge = cyl.prod.left.cell_by_name("e").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = random_q_cochain(&ring, &cyl.prod.total, &none, 1, &mut rng);
    let lhs = integrate_fiber(&u.delta(), &cyl.prod, edge)
        .add(&integrate_fiber(&u, &cyl.prod, edge).delta());
    let rhs = u.pullback(&cyl.i1).sub(&u.pullback(&cyl.i0));
    println!(
        "cylinder identity on a random 1-cochain: {}",
        if lhs.sub(&rhs).is_zero() { "holds exactly" } else { "FAILS" }
    );

    // coboundary transport: a natural witness moving delta v across I x X
    let v = random_q_cochain(&ring, &s1, &none, 1, &mut rng);
    let e = cob_witness(&v, &cyl);
    println!(
        "cob_witness: delta E = 0: {}, i0* E = 0: {}, i1* E = delta v: {}",
        e.delta().is_zero(),
        e.pullback(&cyl.i0).is_zero(),
        e.pullback(&cyl.i1).sub(&v.delta()).is_zero(),
    );
}
