//! Ring structure: the even-degree product, suspension over the circle, and
//! the extension of the product to odd degrees by suspend-multiply-integrate.

use super::equiv::CoordBasis;
use super::integrate::{integrate_rel, relativize};
use super::lift::LiftError;
use super::{CorrectionData, DifferentialTriple, TripleError};
use crate::cochain::chains::integrate_fiber;
use crate::cochain::Cochain;
use crate::coeff::Ring;
use crate::forms::bhomotopy::BHomotopy;
use crate::forms::extend::{form_space, FormDegreeBudget};
use crate::forms::fiber::fiber_integrate;
use crate::forms::{circle_volume, Monomial, PLForm};
use crate::linalg::solve::{from_columns, solve_mixed};
use crate::linalg::{rat_int, Int, QMat, Rat};
use crate::simplicial::product::{circle_product, CircleProduct};
use crate::simplicial::{CellId, SimplicialPair};
use num_traits::Zero;
use std::rc::Rc;

/// Internal product of triples on a common absolute base, any degrees. The
/// h component is
///
///   B(omega0, omega1) + h0 cup deRham(omega1)
///     + (-1)^n deRham(omega0) cup h1 - h0 cup delta h1  (+ corrections),
///
/// which satisfies the structure equation in every parity; the public ring
/// operations restrict it per the even/odd dispatch.
pub(crate) fn product_raw(
    t0: &DifferentialTriple,
    t1: &DifferentialTriple,
    bh: &BHomotopy,
    corrections: &CorrectionData,
) -> Result<DifferentialTriple, TripleError> {
    if !Rc::ptr_eq(&t0.base.space, &t1.base.space) {
        return Err(TripleError::BaseMismatch);
    }
    let (n, m) = (t0.degree, t1.degree);
    let base = &t0.base.space;
    let c = t0.c.cup(&t1.c);
    let omega = t0.omega.wedge(&t1.omega);
    let mut h = bh
        .apply(&t0.omega, &t1.omega)
        .map_err(|e| TripleError::Form(format!("chain homotopy: {e:?}")))?;
    if n >= 1 {
        h = h.add(&t0.h.cup(&t1.omega.de_rham()));
        if m >= 1 {
            h = h.sub(&t0.h.cup(&t1.h.delta()));
        }
    }
    if m >= 1 {
        let term = t0.omega.de_rham().cup(&t1.h);
        h = if n % 2 == 0 { h.add(&term) } else { h.sub(&term) };
    }
    if let Some(mc) = &corrections.m {
        h = h.add(&mc.eval(&[&t0.c, &t1.c])?);
    }
    let pair = SimplicialPair::absolute(base);
    DifferentialTriple::new(&pair, n + m, c, omega, h)
}

/// Product of even-degree classes on a common absolute base.
pub fn product_even(
    t0: &DifferentialTriple,
    t1: &DifferentialTriple,
    bh: &BHomotopy,
    corrections: &CorrectionData,
) -> Result<DifferentialTriple, TripleError> {
    if t0.degree % 2 != 0 || t1.degree % 2 != 0 {
        return Err(TripleError::DegreeMismatch);
    }
    product_raw(t0, t1, bh, corrections)
}

/// The multiplicative unit: the constant cocycle, the constant form 1, h = 0.
pub fn unit(ring: &Ring, base: &SimplicialPair) -> DifferentialTriple {
    let mut c = Cochain::zero(ring, &base.space, 0);
    for v in base.space.cells_of_dim(0) {
        c.set(v, ring.one_l());
    }
    DifferentialTriple::new(
        base,
        0,
        c,
        PLForm::one(ring, &base.space),
        Cochain::zero(ring, &base.space, 0),
    )
    .expect("unit triple is valid")
}

/// The degree-1 circle class: dual edge cocycle, volume form with integral 1.
pub fn circle_class(ring: &Ring, s1: &crate::simplicial::Complex) -> DifferentialTriple {
    let mut z = Cochain::zero(ring, s1, 1);
    z.set(s1.cell_by_name("e").expect("circle edge"), ring.one_l());
    DifferentialTriple::new(
        &SimplicialPair::absolute(s1),
        1,
        z,
        circle_volume(ring, s1),
        Cochain::zero(ring, s1, 0),
    )
    .expect("circle class is valid")
}

/// Suspension: lift a class on M to a relative class on (S^1 x M, 1 x M)
/// whose circle integral recovers it. The default construction multiplies by
/// the circle class; if the strict postcondition fails, a direct
/// linear-system construction is attempted before reporting failure.
pub fn suspend(
    x: &DifferentialTriple,
    cp: &CircleProduct,
    bh: &BHomotopy,
    budget: FormDegreeBudget,
) -> Result<DifferentialTriple, LiftError> {
    if !Rc::ptr_eq(&x.base.space, &cp.prod.right) || !x.base.sub_cells.is_empty()
    {
        return Err(LiftError::Triple(TripleError::BaseMismatch));
    }
    let ring = x.ring();
    let total = SimplicialPair::absolute(&cp.prod.total);
    let zhat = circle_class(ring, &cp.prod.left)
        .pullback(&total, &cp.prod.pr1)
        .map_err(LiftError::Triple)?;
    let xp = x.pullback(&total, &cp.prod.pr2).map_err(LiftError::Triple)?;
    let chi = product_raw(&zhat, &xp, bh, &CorrectionData::default())
        .and_then(|w| relativize(&w, cp))
        .map_err(LiftError::Triple)?;
    let back = integrate_rel(&chi, cp).map_err(LiftError::Triple)?;
    if super::equiv::is_equivalent(&back, x).map_err(LiftError::Triple)? {
        return Ok(chi);
    }
    suspend_fallback(x, cp, budget)
}

/// Direct existence proof as a single mixed integral/rational solve: find a
/// relative triple (C, Omega, H) on (S^1 x M, 1 x M) with int C = c,
/// int Omega = omega, -int H = h on the nose.
fn suspend_fallback(
    x: &DifferentialTriple,
    cp: &CircleProduct,
    budget: FormDegreeBudget,
) -> Result<DifferentialTriple, LiftError> {
    let ring = x.ring();
    let total = &cp.prod.total;
    let m_cx = &cp.prod.right;
    let sub = &cp.pair.sub_cells;
    let edge = cp.prod.left.cell_by_name("e").expect("circle edge");
    let nn = x.degree + 1;
    let empty = std::collections::BTreeSet::new();

    let c_basis = CoordBasis::lambda(ring, total, sub, nn);
    let h_basis = CoordBasis::v(ring, total, sub, nn - 1);
    let rows_dc = CoordBasis::lambda(ring, total, &empty, nn + 1);
    let rows_ic = CoordBasis::lambda(ring, m_cx, &empty, x.degree);
    let rows_ih = CoordBasis::v(ring, m_cx, &empty, x.degree.saturating_sub(1));
    let rows_st = CoordBasis::v(ring, total, &empty, nn);

    let mut budget = budget;
    loop {
        let forms = form_space(ring, total, nn, budget.cap, Some(&cp.pair));
        // row layout: [dC | intC | closed-keys | int-form-keys | intH | struct]
        let mut closed_keys: std::collections::BTreeMap<
            (CellId, Monomial, usize),
            usize,
        > = Default::default();
        let mut fiber_keys: std::collections::BTreeMap<
            (CellId, Monomial, usize),
            usize,
        > = Default::default();
        let key_rows = |f: &PLForm,
                        keys: &mut std::collections::BTreeMap<
            (CellId, Monomial, usize),
            usize,
        >| {
            let mut out = vec![];
            for (&cell, poly) in &f.comps {
                for (mono, v) in &poly.terms {
                    for (&g, cf) in &v.coords {
                        let next = keys.len();
                        let idx = *keys
                            .entry((cell, mono.clone(), g))
                            .or_insert(next);
                        out.push((idx, cf.clone()));
                    }
                }
            }
            out
        };
        // first pass: register all keys so row offsets are stable
        let mut form_cols_raw = vec![];
        for f in &forms {
            let dcol = key_rows(&f.d(), &mut closed_keys);
            let icol =
                key_rows(&fiber_integrate(f, &cp.prod, edge), &mut fiber_keys);
            form_cols_raw.push((dcol, icol, f.de_rham()));
        }
        let omega_rhs = key_rows(&x.omega, &mut fiber_keys);

        let off_ic = rows_dc.len();
        let off_closed = off_ic + rows_ic.len();
        let off_fiber = off_closed + closed_keys.len();
        let off_ih = off_fiber + fiber_keys.len();
        let off_st = off_ih + rows_ih.len();
        let rows = off_st + rows_st.len();

        let mut z_cols: Vec<Vec<Rat>> = vec![];
        for i in 0..c_basis.len() {
            let cb = c_basis.z_basis_cochain(i);
            let mut col = vec![Rat::zero(); rows];
            for (r, v) in rows_dc.z_coords(&cb.delta()).into_iter().enumerate()
            {
                col[r] = v;
            }
            let ic = integrate_fiber(&cb, &cp.prod, edge);
            for (r, v) in rows_ic.z_coords(&ic).into_iter().enumerate() {
                col[off_ic + r] = v;
            }
            for (r, v) in rows_st.q_coords(&cb.rho()).into_iter().enumerate() {
                col[off_st + r] = v;
            }
            z_cols.push(col);
        }
        // auxiliary torsion multiples for the integral rows
        for (slot, q) in rows_dc.torsion_slots() {
            let mut col = vec![Rat::zero(); rows];
            col[slot] = rat_int(&Int::from(q));
            z_cols.push(col);
        }
        for (slot, q) in rows_ic.torsion_slots() {
            let mut col = vec![Rat::zero(); rows];
            col[off_ic + slot] = rat_int(&Int::from(q));
            z_cols.push(col);
        }

        let mut q_cols: Vec<Vec<Rat>> = vec![];
        for (dcol, icol, derham) in &form_cols_raw {
            let mut col = vec![Rat::zero(); rows];
            for (r, v) in dcol {
                col[off_closed + *r] += v.clone();
            }
            for (r, v) in icol {
                col[off_fiber + *r] += v.clone();
            }
            for (r, v) in rows_st.q_coords(derham).into_iter().enumerate() {
                col[off_st + r] -= v;
            }
            q_cols.push(col);
        }
        for j in 0..h_basis.len() {
            let hb = h_basis.q_basis_cochain(j);
            let mut col = vec![Rat::zero(); rows];
            let ih = integrate_fiber(&hb, &cp.prod, edge).neg();
            for (r, v) in rows_ih.q_coords(&ih).into_iter().enumerate() {
                col[off_ih + r] = v;
            }
            for (r, v) in rows_st.q_coords(&hb.delta()).into_iter().enumerate()
            {
                col[off_st + r] += v;
            }
            q_cols.push(col);
        }

        let mut rhs = vec![Rat::zero(); rows];
        for (r, v) in rows_ic.z_coords(&x.c).into_iter().enumerate() {
            rhs[off_ic + r] = v;
        }
        for (r, v) in omega_rhs {
            rhs[off_fiber + r] = v;
        }
        for (r, v) in rows_ih.q_coords(&x.h).into_iter().enumerate() {
            rhs[off_ih + r] = v;
        }

        let a_z: QMat = from_columns(rows, z_cols);
        let a_q: QMat = from_columns(rows, q_cols);
        if let Some((zi, qi)) = solve_mixed(&a_z, &a_q, &rhs) {
            let c = c_basis.z_from_ints(&zi[..c_basis.len()]);
            let mut omega = PLForm::zero(ring, total, nn);
            for (v, f) in qi[..forms.len()].iter().zip(&forms) {
                if !v.is_zero() {
                    omega = omega.add(&f.scale(v));
                }
            }
            let h = h_basis.q_from_rats(&qi[forms.len()..]);
            return DifferentialTriple::new(&cp.pair, nn, c, omega, h)
                .map_err(LiftError::Triple);
        }
        budget = budget.escalate().ok_or(LiftError::BudgetExceeded)?;
    }
}

/// Full product dispatch on a common absolute base: even factors multiply
/// directly; odd factors are suspended over the circle, multiplied in even
/// degrees, and integrated back.
pub fn product_full(
    t0: &DifferentialTriple,
    t1: &DifferentialTriple,
    bh: &BHomotopy,
    budget: FormDegreeBudget,
) -> Result<DifferentialTriple, LiftError> {
    let none = CorrectionData::default();
    match (t0.degree % 2, t1.degree % 2) {
        (0, 0) => product_raw(t0, t1, bh, &none).map_err(LiftError::Triple),
        (1, 0) => {
            let cp = circle_product(&t0.base.space);
            let xhat = suspend(t0, &cp, bh, budget)?;
            let total = SimplicialPair::absolute(&cp.prod.total);
            let yp = t1
                .pullback(&total, &cp.prod.pr2)
                .map_err(LiftError::Triple)?;
            let xabs = DifferentialTriple::new(
                &total,
                xhat.degree,
                xhat.c.clone(),
                xhat.omega.clone(),
                xhat.h.clone(),
            )
            .map_err(LiftError::Triple)?;
            let w = product_raw(&xabs, &yp, bh, &none)
                .and_then(|w| relativize(&w, &cp))
                .map_err(LiftError::Triple)?;
            integrate_rel(&w, &cp).map_err(LiftError::Triple)
        }
        (0, 1) => {
            let cp = circle_product(&t1.base.space);
            let yhat = suspend(t1, &cp, bh, budget)?;
            let total = SimplicialPair::absolute(&cp.prod.total);
            let xp = t0
                .pullback(&total, &cp.prod.pr2)
                .map_err(LiftError::Triple)?;
            let yabs = DifferentialTriple::new(
                &total,
                yhat.degree,
                yhat.c.clone(),
                yhat.omega.clone(),
                yhat.h.clone(),
            )
            .map_err(LiftError::Triple)?;
            let w = product_raw(&xp, &yabs, bh, &none)
                .and_then(|w| relativize(&w, &cp))
                .map_err(LiftError::Triple)?;
            integrate_rel(&w, &cp).map_err(LiftError::Triple)
        }
        (1, 1) => {
            // suspend the left factor, then recurse through the even-odd case
            let cp = circle_product(&t0.base.space);
            let xhat = suspend(t0, &cp, bh, budget)?;
            let total = SimplicialPair::absolute(&cp.prod.total);
            let xabs = DifferentialTriple::new(
                &total,
                xhat.degree,
                xhat.c.clone(),
                xhat.omega.clone(),
                xhat.h.clone(),
            )
            .map_err(LiftError::Triple)?;
            let yp = t1
                .pullback(&total, &cp.prod.pr2)
                .map_err(LiftError::Triple)?;
            let w = product_full(&xabs, &yp, bh, budget)?;
            let w = relativize(&w, &cp).map_err(LiftError::Triple)?;
            integrate_rel(&w, &cp).map_err(LiftError::Triple)
        }
        _ => unreachable!(),
    }
}

/// a(Theta) cup x = a(Theta wedge R(x)): the right-hand side, for tests and
/// certificates.
pub fn a_wedge_curvature(
    theta: &PLForm,
    x: &DifferentialTriple,
) -> DifferentialTriple {
    super::a_map(&x.base, &theta.wedge(&x.omega))
}

/// Two nested circle products over M, with the swap of the circle factors.
pub struct DoubleCircle {
    pub inner: CircleProduct,
    pub outer: CircleProduct,
    pub tau: crate::simplicial::map::SimplicialMap,
}

pub fn double_circle(m: &crate::simplicial::Complex) -> DoubleCircle {
    use crate::simplicial::map::SimplicialMap;
    use crate::simplicial::Simplex;
    let inner = circle_product(m);
    let outer = circle_product(&inner.prod.total);
    let circle_iso = |a: &crate::simplicial::Complex,
                      b: &crate::simplicial::Complex| {
        SimplicialMap::new(
            "iso",
            a,
            b,
            vec![Simplex::nondeg((0, 0)), Simplex::nondeg((1, 0))],
        )
    };
    // swap: (s, (t, x)) -> (t, (s, x))
    let to_outer_left =
        outer.prod.pr2.compose(&inner.prod.pr1).compose(&circle_iso(
            &inner.prod.left,
            &outer.prod.left,
        ));
    let to_inner_left = outer.prod.pr1.compose(&circle_iso(
        &outer.prod.left,
        &inner.prod.left,
    ));
    let to_m = outer.prod.pr2.compose(&inner.prod.pr2);
    let rest = inner.prod.pairing("swap-rest", &to_inner_left, &to_m);
    let tau = outer.prod.pairing("swap", &to_outer_left, &rest);
    DoubleCircle { inner, outer, tau }
}

/// The double-integral anticommutativity check: for a class t on
/// S^1 x S^1 x M, int int tau* t is equivalent to -int int t.
pub fn double_integral_anticommute(
    t: &DifferentialTriple,
    dc: &DoubleCircle,
) -> Result<bool, TripleError> {
    let lhs = {
        let tt = t.pullback(&t.base, &dc.tau)?;
        let once = super::integrate::integrate_abs(&tt, &dc.outer)?;
        super::integrate::integrate_abs(&once, &dc.inner)?
    };
    let rhs = {
        let once = super::integrate::integrate_abs(t, &dc.outer)?;
        super::integrate::integrate_abs(&once, &dc.inner)?
            .neg(&CorrectionData::default())?
    };
    super::equiv::is_equivalent(&lhs, &rhs)
}
