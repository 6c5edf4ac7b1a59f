//! Integration over the circle factor of S^1 x M: pullbacks die, curvature
//! and characteristic class commute with the integral, and integrating the
//! torus fundamental product recovers a circle generator.
//!
//!     cargo run --example integration_over_the_circle

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffcoh::coeff;
use diffcoh::forms::bhomotopy::BHomotopy;
use diffcoh::forms::extend::FormDegreeBudget;
use diffcoh::simplicial::product::circle_product;
use diffcoh::simplicial::{builtins, SimplicialPair};
use diffcoh::theory::equiv::is_equivalent;
use diffcoh::theory::lift::random_triple;
use diffcoh::theory::product::{circle_class, product_full};
use diffcoh::theory::integrate;

fn main() {
    let ring = coeff::integers();
    let s1 = builtins::circle();
    let cp = circle_product(&s1); // S^1 x S^1 with slice 1 x S^1
    let total = SimplicialPair::absolute(&cp.prod.total);
    let base_m = SimplicialPair::absolute(&s1);
    let budget = FormDegreeBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // classes pulled back from the base integrate to zero on the nose
    let s = random_triple(&ring, &base_m, 1, &mut rng, budget).unwrap();
    let pb = s.pullback(&total, &cp.prod.pr2).unwrap();
    let z = integrate::integrate_abs(&pb, &cp).unwrap();
    println!(
        "int over S^1 of pr2*(class): zero triple: {}",
        z.c.is_zero() && z.omega.is_zero() && z.h.is_zero()
    );

    // integrating z_left * z_right returns the circle class up to sign
    let bh = BHomotopy::new(&ring);
    let z1 = circle_class(&ring, &cp.prod.left)
        .pullback(&total, &cp.prod.pr1)
        .unwrap();
    let z2 = circle_class(&ring, &cp.prod.right)
        .pullback(&total, &cp.prod.pr2)
        .unwrap();
    let p = product_full(&z1, &z2, &bh, budget).unwrap();
    let ip = integrate::integrate_abs(&p, &cp).unwrap();
    let gen = circle_class(&ring, &s1);
    let pm = is_equivalent(&ip, &gen).unwrap()
        || is_equivalent(
            &ip,
            &gen.neg(&diffcoh::theory::CorrectionData::default()).unwrap(),
        )
        .unwrap();
    println!("int(z1 * z2) ~ +/- circle generator: {pm}");
}
