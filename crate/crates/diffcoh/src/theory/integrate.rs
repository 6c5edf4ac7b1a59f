//! Homotopy invariance and S^1-integration.
//!
//! The circle factor is always the left factor of the product, matching the
//! fiber-integration conventions of the simplicial and form layers.

use super::{DifferentialTriple, TripleError};
use crate::cochain::chains::integrate_fiber;
use crate::cochain::ZCochain;
use crate::forms::fiber::fiber_integrate;
use crate::simplicial::product::{CircleProduct, Cylinder};
use crate::simplicial::{CellId, SimplicialPair};
use std::rc::Rc;

fn left_edge(prod: &crate::simplicial::product::Product) -> CellId {
    prod.left.cell_by_name("e").expect("left factor has an edge named e")
}

/// Prop-homotopy shift: given a cocycle C on the cylinder over the base with
/// i0* C = c, the triple (i1* C, omega, h - int_I rho(C)) is a valid triple
/// (and is equivalent to the input, which the callers verify through the
/// solver).
pub fn homotopy_shift(
    t: &DifferentialTriple,
    cyl: &Cylinder,
    c_big: &ZCochain,
) -> Result<DifferentialTriple, TripleError> {
    if !Rc::ptr_eq(&cyl.prod.right, &t.base.space)
        || !Rc::ptr_eq(&c_big.base, &cyl.prod.total)
    {
        return Err(TripleError::BaseMismatch);
    }
    if !t.base.sub_cells.is_empty() {
        return Err(TripleError::NotAPairMap);
    }
    if c_big.degree != t.degree {
        return Err(TripleError::DegreeMismatch);
    }
    if let Some(cell) = super::first_nonzero(&c_big.delta()) {
        return Err(TripleError::NotACocycle(cell));
    }
    if let Some(cell) = super::first_nonzero(&c_big.pullback(&cyl.i0).sub(&t.c))
    {
        return Err(TripleError::StructureEquation(cell));
    }
    let edge = left_edge(&cyl.prod);
    let shift = integrate_fiber(&c_big.rho(), &cyl.prod, edge);
    DifferentialTriple::new(
        &t.base,
        t.degree,
        c_big.pullback(&cyl.i1),
        t.omega.clone(),
        t.h.sub(&shift),
    )
}

/// Integration over the circle for relative triples on (S^1 x M, 1 x M):
/// componentwise (int c, int omega, -int h).
pub fn integrate_rel(
    t: &DifferentialTriple,
    cp: &CircleProduct,
) -> Result<DifferentialTriple, TripleError> {
    if !Rc::ptr_eq(&t.base.space, &cp.prod.total)
        || t.base.sub_cells != cp.pair.sub_cells
    {
        return Err(TripleError::BaseMismatch);
    }
    if t.degree == 0 {
        return Err(TripleError::DegreeMismatch);
    }
    let edge = left_edge(&cp.prod);
    let base = SimplicialPair::absolute(&cp.prod.right);
    DifferentialTriple::new(
        &base,
        t.degree - 1,
        integrate_fiber(&t.c, &cp.prod, edge),
        fiber_integrate(&t.omega, &cp.prod, edge),
        integrate_fiber(&t.h, &cp.prod, edge).neg(),
    )
}

/// Make a triple on S^1 x M whose c and omega components already vanish on
/// the slice relative, by retracting the h component along pr2.
pub fn relativize(
    t: &DifferentialTriple,
    cp: &CircleProduct,
) -> Result<DifferentialTriple, TripleError> {
    if !Rc::ptr_eq(&t.base.space, &cp.prod.total) {
        return Err(TripleError::BaseMismatch);
    }
    let h = t.h.sub(&t.h.pullback(&cp.slice).pullback(&cp.prod.pr2));
    DifferentialTriple::new(&cp.pair, t.degree, t.c.clone(), t.omega.clone(), h)
}

/// Integration over the circle for absolute classes on S^1 x M: subtract the
/// pr2-pullback of the slice restriction (a strict relative representative,
/// since pr2 retracts the slice) and integrate that.
pub fn integrate_abs(
    t: &DifferentialTriple,
    cp: &CircleProduct,
) -> Result<DifferentialTriple, TripleError> {
    if !Rc::ptr_eq(&t.base.space, &cp.prod.total)
        || !t.base.sub_cells.is_empty()
    {
        return Err(TripleError::BaseMismatch);
    }
    let m_abs = SimplicialPair::absolute(&cp.prod.right);
    let restricted = t.pullback(&m_abs, &cp.slice)?;
    let back = restricted.pullback(&t.base, &cp.prod.pr2)?;
    let y = t.sub(&back)?;
    let rel = relativize(&y, cp)?;
    integrate_rel(&rel, cp)
}
