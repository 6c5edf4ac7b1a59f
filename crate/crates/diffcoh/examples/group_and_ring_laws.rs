//! The abelian group of classes and the graded ring structure in even
//! degrees, checked on random representatives over the torus.
//!
//!     cargo run --example group_and_ring_laws

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffcoh::coeff;
use diffcoh::forms::bhomotopy::BHomotopy;
use diffcoh::forms::extend::FormDegreeBudget;
use diffcoh::simplicial::{builtins, SimplicialPair};
use diffcoh::theory::equiv::is_equivalent;
use diffcoh::theory::lift::random_triple;
use diffcoh::theory::product::{product_even, unit};
use diffcoh::theory::{CorrectionData, DifferentialTriple};

fn main() {
    let ring = coeff::integers();
    let t2 = builtins::torus();
    let base = SimplicialPair::absolute(&t2.total);
    let cd = CorrectionData::default();
    let bh = BHomotopy::new(&ring);
    let budget = FormDegreeBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let x = random_triple(&ring, &base, 2, &mut rng, budget).unwrap();
    let y = random_triple(&ring, &base, 2, &mut rng, budget).unwrap();
    let z = random_triple(&ring, &base, 2, &mut rng, budget).unwrap();
    let zero = DifferentialTriple::zero(&ring, &base, 2);
    let one = unit(&ring, &base);

    let ok = |b: bool| if b { "ok" } else { "FAILED" };

    println!("group laws on random degree-2 classes over the torus:");
    let xy = x.add(&y, &cd).unwrap();
    println!(
        "  x + y ~ y + x: {}",
        ok(is_equivalent(&xy, &y.add(&x, &cd).unwrap()).unwrap())
    );
    println!(
        "  (x + y) + z ~ x + (y + z): {}",
        ok(is_equivalent(
            &xy.add(&z, &cd).unwrap(),
            &x.add(&y.add(&z, &cd).unwrap(), &cd).unwrap()
        )
        .unwrap())
    );
    println!(
        "  x + (-x) ~ 0: {}",
        ok(is_equivalent(&x.add(&x.neg(&cd).unwrap(), &cd).unwrap(), &zero).unwrap())
    );

    println!("ring laws (even degrees):");
    let px = product_even(&one, &x, &bh, &cd).unwrap();
    println!("  1 * x ~ x: {}", ok(is_equivalent(&px, &x).unwrap()));
    let pxy = product_even(&x, &y, &bh, &cd).unwrap();
    let pyx = product_even(&y, &x, &bh, &cd).unwrap();
    println!("  x * y ~ y * x: {}", ok(is_equivalent(&pxy, &pyx).unwrap()));
    let sum = product_even(&x.add(&z, &cd).unwrap(), &y, &bh, &cd).unwrap();
    let split = pxy
        .add(&product_even(&z, &y, &bh, &cd).unwrap(), &cd)
        .unwrap();
    println!(
        "  (x + z) * y ~ x*y + z*y: {}",
        ok(is_equivalent(&sum, &split).unwrap())
    );
}
