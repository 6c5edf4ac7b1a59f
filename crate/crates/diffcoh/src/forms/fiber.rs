//! Fiber integration of PL forms over an interval or circle left factor.
//!
//! The prism over a k-cell x of the base decomposes into k+1 nondegenerate
//! (k+1)-cells (s_J e, s_{j} x) with J the complement of {j} in {0..k}. On
//! the j-th piece the interval coordinate s sweeps [T_{j+1}, T_j] with
//! T_j = t_j + ... + t_k over a base point (t_1, ..., t_k), and the affine
//! change of coordinates to the piece's barycentric coordinates u is
//! u_a = t_a (a < j), u_j = T_j - s, u_{j+1} = s - T_{j+1},
//! u_a = t_{a-1} (a > j+1). Integration contracts with d/ds and integrates
//! the fiber segment of each piece exactly.

use super::{PLForm, PolyForm};
use crate::linalg::rat;
use crate::simplicial::product::Product;
use crate::simplicial::{CellId, Simplex};
use std::collections::BTreeMap;

/// T_j = t_j + ... + t_k as a 0-form on the k-simplex (T_0 = 1, T_{k+1} = 0).
fn tail_sum(k: usize, j: usize, ring: &crate::coeff::Ring) -> PolyForm {
    let mut out = PolyForm::zero(k, 0);
    if j == 0 {
        return PolyForm::one(k, ring);
    }
    for i in j..=k {
        out = out.add(&PolyForm::coordinate(k, i, ring));
    }
    out
}

/// Substitute the single extra coordinate s (index k+1 of an auxiliary
/// (k+1)-coordinate polynomial ring) by a 0-form on the k-simplex.
/// Assumes the input has no ds factor.
fn eval_s(f: &PolyForm, s: &PolyForm, ring: &crate::coeff::Ring) -> PolyForm {
    let k = f.k - 1;
    let mut subs_t: Vec<PolyForm> =
        (1..=k).map(|i| PolyForm::coordinate(k, i, ring)).collect();
    let mut subs_dt: Vec<PolyForm> =
        (1..=k).map(|i| PolyForm::differential(k, i, ring)).collect();
    subs_t.push(s.clone());
    subs_dt.push(PolyForm::zero(k, 1));
    f.substitute(&subs_t, &subs_dt, k, ring)
}

/// Integrate a form over the left interval/circle factor of a product.
/// `edge` is the fundamental 1-cell of the left factor. The result lives
/// on the right factor and has degree one less.
pub fn fiber_integrate(a: &PLForm, prod: &Product, edge: CellId) -> PLForm {
    assert!(std::rc::Rc::ptr_eq(&a.base, &prod.total));
    assert_eq!(edge.0, 1);
    assert!(a.degree >= 1, "fiber integration needs degree at least 1");
    let ring = &a.ring;
    let mut out = PLForm::zero(ring, &prod.right, a.degree - 1);
    for k in 0..=prod.right.dim() {
        for cell in prod.right.cells_of_dim(k) {
            let mut acc = PolyForm::zero(k, a.degree - 1);
            for j in 0..=k {
                // the j-th prism piece over the cell
                let left_word: Vec<usize> =
                    (0..=k).rev().filter(|&i| i != j).collect();
                let left = Simplex { word: left_word, cell: edge };
                let right = Simplex { word: vec![j], cell };
                let piece = prod.cell_of_pair(&left, &right);
                assert!(piece.word.is_empty());
                let comp = a.component(piece.cell);
                // pull the piece form into mixed coordinates (t_1..t_k, s):
                // index k+1 of the auxiliary coordinate space plays s
                let m = k + 1;
                let mut subs_t: Vec<PolyForm> = Vec::new();
                let mut subs_dt: Vec<PolyForm> = Vec::new();
                let s_coord = PolyForm::coordinate(m, m, ring);
                let s_diff = PolyForm::differential(m, m, ring);
                for auv in 1..=(k + 1) {
                    // u_a in terms of (t, s)
                    let (t, dt) = if auv < j {
                        (
                            PolyForm::coordinate(m, auv, ring),
                            PolyForm::differential(m, auv, ring),
                        )
                    } else if auv == j {
                        // u_j = T_j - s
                        let mut t = PolyForm::zero(m, 0);
                        let mut d = PolyForm::zero(m, 1);
                        for i in j..=k {
                            t = t.add(&PolyForm::coordinate(m, i, ring));
                            d = d.add(&PolyForm::differential(m, i, ring));
                        }
                        (t.sub(&s_coord), d.sub(&s_diff))
                    } else if auv == j + 1 {
                        // u_{j+1} = s - T_{j+1}
                        let mut t = s_coord.clone();
                        let mut d = s_diff.clone();
                        for i in (j + 1)..=k {
                            t = t.sub(&PolyForm::coordinate(m, i, ring));
                            d = d.sub(&PolyForm::differential(m, i, ring));
                        }
                        (t, d)
                    } else {
                        (
                            PolyForm::coordinate(m, auv - 1, ring),
                            PolyForm::differential(m, auv - 1, ring),
                        )
                    };
                    subs_t.push(t);
                    subs_dt.push(dt);
                }
                let mixed = comp.substitute(&subs_t, &subs_dt, m, ring);
                // contract with d/ds: keep terms containing ds (index m),
                // moving ds to the front
                let mut with_s = PolyForm::zero(m, a.degree - 1);
                for ((e, dts), v) in &mixed.terms {
                    if dts.last() != Some(&m) {
                        continue;
                    }
                    let rest: Vec<usize> =
                        dts[..dts.len() - 1].to_vec();
                    let mut val = v.clone();
                    if rest.len() % 2 == 1 {
                        val = val.neg();
                    }
                    with_s.insert(e.clone(), rest, val);
                }
                // integrate the s-powers over [T_{j+1}, T_j]
                let lo = tail_sum(k, j + 1, ring);
                let hi = tail_sum(k, j, ring);
                // group by s-exponent
                let mut by_power: BTreeMap<u32, PolyForm> = BTreeMap::new();
                for ((e, dts), v) in &with_s.terms {
                    let p = e[m - 1];
                    let mut e2 = e.clone();
                    e2[m - 1] = 0;
                    by_power
                        .entry(p)
                        .or_insert_with(|| PolyForm::zero(m, a.degree - 1))
                        .insert(e2, dts.clone(), v.clone());
                }
                for (p, f) in by_power {
                    // antiderivative s^{p+1}/(p+1), evaluated at hi and lo
                    let c = rat(1, (p + 1) as i64);
                    let base_f = eval_s(&f, &PolyForm::zero(k, 0), ring)
                        .scale(&c);
                    let mut hi_pow = PolyForm::one(k, ring);
                    let mut lo_pow = PolyForm::one(k, ring);
                    for _ in 0..(p + 1) {
                        hi_pow = hi_pow.wedge(&hi, ring);
                        lo_pow = lo_pow.wedge(&lo, ring);
                    }
                    acc = acc.add(
                        &base_f.wedge(&hi_pow.sub(&lo_pow), ring),
                    );
                }
            }
            out.set(cell, acc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::forms::tests::random_form;
    use crate::forms::PLForm;
    use crate::simplicial::{builtins, product};
    use rand::SeedableRng;

    #[test]
    fn interval_projection_integrates_to_half() {
        let ring = coeff::integers();
        let x = builtins::standard_simplex(1);
        let cyl = product::cylinder(&x);
        // pr_I^*(t dt) integrates to the constant 1/2
        let i = cyl.prod.left.clone();
        let t = PolyForm::coordinate(1, 1, &ring);
        let tdt = t.wedge(&PolyForm::differential(1, 1, &ring), &ring);
        let mut a = PLForm::zero(&ring, &i, 1);
        let e = i.cell_by_name("e").unwrap();
        a.set(e, tdt);
        a.validate().unwrap();
        let pulled = a.pullback(&cyl.prod.pr1);
        pulled.validate().unwrap();
        let out = fiber_integrate(&pulled, &cyl.prod, e);
        out.validate().unwrap();
        for cell in x.all_cells() {
            let v = out
                .component(cell)
                .terms
                .get(&(vec![0; cell.0], vec![]))
                .cloned();
            assert_eq!(
                v.map(|q| ring.q_coords(&q)),
                Some(vec![rat(1, 2)]),
                "on cell {:?}",
                cell
            );
        }
        // forms pulled back from the base integrate to zero
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let b = random_form(&ring, &x, 1, &mut rng);
        let out = fiber_integrate(&b.pullback(&cyl.prod.pr2), &cyl.prod, e);
        assert!(out.is_zero());
    }

    #[test]
    fn de_rham_commutes_with_fiber_integration() {
        let ring = coeff::poly_even(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for x in [builtins::standard_simplex(2), builtins::circle()] {
            let cyl = product::cylinder(&x);
            let e = cyl.prod.left.cell_by_name("e").unwrap();
            for deg in 1..4 {
                let a = random_form(&ring, &cyl.prod.total, deg, &mut rng);
                let lhs = fiber_integrate(&a, &cyl.prod, e).de_rham();
                let rhs = crate::cochain::chains::integrate_fiber(
                    &a.de_rham(),
                    &cyl.prod,
                    e,
                );
                assert!(lhs.sub(&rhs).is_zero(), "mismatch in degree {deg}");
            }
        }
    }

    #[test]
    fn form_level_homotopy_formula() {
        let ring = coeff::poly_even(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for x in [builtins::standard_simplex(1), builtins::circle()] {
            let cyl = product::cylinder(&x);
            let e = cyl.prod.left.cell_by_name("e").unwrap();
            for deg in 1..4 {
                let a = random_form(&ring, &cyl.prod.total, deg, &mut rng);
                let lhs = fiber_integrate(&a.d(), &cyl.prod, e)
                    .add(&fiber_integrate(&a, &cyl.prod, e).d());
                let rhs = a.pullback(&cyl.i1).sub(&a.pullback(&cyl.i0));
                assert!(lhs.sub(&rhs).is_zero(), "Eq.(2) fails in degree {deg}");
            }
        }
    }
}
