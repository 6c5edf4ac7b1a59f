//! Piecewise polynomial forms: the volume form on the circle, Stokes
//! compatibility of the de Rham map, and the extension solver that fills
//! relative forms in from a subcomplex.
//!
//!     cargo run --example pl_forms_and_de_rham

use diffcoh::coeff;
use diffcoh::forms::extend::{extend_form, form_space, FormDegreeBudget};
use diffcoh::forms::circle_volume;
use diffcoh::simplicial::builtins;

fn main() {
    let ring = coeff::integers();

    // the circle volume form has integral 1 and is closed
    let s1 = builtins::circle();
    let tau = circle_volume(&ring, &s1);
    println!("circle volume form: d tau = 0: {}", tau.d().is_zero());
    let periods = tau.de_rham();
    println!("de Rham image on the edge: {:?}", periods.values);

    // Stokes: the de Rham map is a chain map, deRham(d w) = delta deRham(w)
    let t2 = builtins::torus().total;
    for n in 0..=1 {
        let fs = form_space(&ring, &t2, n, 2, None);
        println!("forms of degree {n} on the torus (coefficient cap 2): {}", fs.len());
        let stokes = fs
            .iter()
            .all(|w| w.d().de_rham().sub(&w.de_rham().delta()).is_zero());
        println!("  Stokes for every basis form: {stokes}");
    }

    // extension: a closed form on the boundary circle extends over the disk
    let pair = builtins::simplex_boundary_pair(2);
    let on_sub = form_space(&ring, &pair.sub, 1, 2, None);
    let theta = &on_sub[0];
    let big = extend_form(theta, &pair, FormDegreeBudget::default()).unwrap();
    let back = big.pullback(&pair.incl);
    println!(
        "extension over (D2, bd D2): restricts back to the input: {}",
        back.sub(theta).is_zero()
    );
}
