//! The structural sequence tying the theory to ordinary cohomology:
//!
//!   H^{n-1}(M,N; V) --a--> E^n(M,N) --I--> H^n(M,N; Lambda) --> 0
//!
//! I is surjective (every cocycle lifts to a triple), the composite I a is
//! zero on the nose, and kernel elements of I are hit by a: both directions
//! are verified constructively here, with solver-produced data.

use super::equiv::CoordBasis;
use super::lift::{
    lambda_cocycle_basis, lambda_trivialize, lift_cocycle, LiftError, RKey,
    RowIndex,
};
use super::{a_map, DifferentialTriple};
use crate::coeff::Ring;
use crate::forms::extend::{form_space, FormDegreeBudget};
use crate::forms::PLForm;
use crate::linalg::solve::solve_mixed;
use crate::linalg::{QMat, Rat};
use crate::simplicial::SimplicialPair;
use num_traits::Zero;

/// Constructive surjectivity of I: lift every cocycle in a basis of the
/// degree-n cocycles to a differential triple with that exact
/// characteristic cocycle. Returns the lifts.
pub fn i_surjective(
    ring: &Ring,
    pair: &SimplicialPair,
    n: usize,
    budget: FormDegreeBudget,
) -> Result<Vec<DifferentialTriple>, LiftError> {
    let basis =
        lambda_cocycle_basis(ring, &pair.space, &pair.sub_cells, n);
    basis
        .iter()
        .map(|c| {
            let t = lift_cocycle(ring, pair, c, budget)?;
            assert!(t.c.sub(c).is_zero());
            Ok(t)
        })
        .collect()
}

/// Constructive exactness at E^n: a triple whose characteristic class
/// vanishes is equivalent to a(Theta) for some form Theta of degree n-1.
/// Returns None when the class is nonzero; errors when the form budget is
/// exhausted. The defining system couples d(Theta) = omega with
/// deRham(Theta) + delta k - rho(z) = h + rho(b) over an integral cocycle
/// unknown z, so that a(Theta) ~ t with witness (b + z, k).
pub fn a_preimage(
    t: &DifferentialTriple,
    budget: FormDegreeBudget,
) -> Result<Option<PLForm>, LiftError> {
    let ring = t.ring().clone();
    let base = &t.base.space;
    let sub = &t.base.sub_cells;
    let n = t.degree;
    assert!(n >= 1);
    let Some(b) = lambda_trivialize(&ring, base, sub, &t.c) else {
        return Ok(None);
    };
    let h2 = t.h.add(&b.rho());

    let rel = if sub.is_empty() { None } else { Some(&t.base) };
    let row_h = CoordBasis::v(&ring, base, sub, n - 1);
    let k_basis = if n >= 2 {
        Some(CoordBasis::v(&ring, base, sub, n - 2))
    } else {
        None
    };
    let z_basis = lambda_cocycle_basis(&ring, base, sub, n - 1);

    let mut budget = budget;
    loop {
        let fs = form_space(&ring, base, n - 1, budget.cap, rel);
        let mut rindex = RowIndex::new();
        let mut qcols: Vec<Vec<(usize, Rat)>> = vec![];
        for f in &fs {
            let mut col = rindex.form_entries(&f.d());
            for (slot, v) in
                row_h.q_coords(&f.de_rham()).into_iter().enumerate()
            {
                if !v.is_zero() {
                    col.push((rindex.idx(RKey::Structure(slot)), v));
                }
            }
            qcols.push(col);
        }
        if let Some(kb) = &k_basis {
            for j in 0..kb.len() {
                let col = row_h
                    .q_coords(&kb.q_basis_cochain(j).delta())
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(slot, v)| (rindex.idx(RKey::Structure(slot)), v))
                    .collect();
                qcols.push(col);
            }
        }
        let mut zcols: Vec<Vec<(usize, Rat)>> = vec![];
        for z in &z_basis {
            let col = row_h
                .q_coords(&z.rho())
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(slot, v)| (rindex.idx(RKey::Structure(slot)), -v))
                .collect();
            zcols.push(col);
        }
        let mut rhs_entries = rindex.form_entries(&t.omega);
        for (slot, v) in row_h.q_coords(&h2).into_iter().enumerate() {
            if !v.is_zero() {
                rhs_entries.push((rindex.idx(RKey::Structure(slot)), v));
            }
        }
        let rows = rindex.len();
        let dense = |cols: &[Vec<(usize, Rat)>]| {
            let mut m = QMat::zero(rows, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col {
                    m.a[*i][j] += v.clone();
                }
            }
            m
        };
        let a_z = dense(&zcols);
        let a_q = dense(&qcols);
        let mut rhs = vec![Rat::zero(); rows];
        for (i, v) in rhs_entries {
            rhs[i] += v;
        }
        if let Some((_, xq)) = solve_mixed(&a_z, &a_q, &rhs) {
            let mut theta = PLForm::zero(&ring, base, n - 1);
            for (x, f) in xq.iter().zip(&fs) {
                if !x.is_zero() {
                    theta = theta.add(&f.scale(x));
                }
            }
            return Ok(Some(theta));
        }
        budget = budget.escalate().ok_or(LiftError::BudgetExceeded)?;
    }
}

/// a applied to a closed form with integral periods gives zero: given an
/// integral (n-1)-cocycle z, its differential lift supplies a closed form
/// with deRham class rho[z], and a of that form is equivalent to zero.
/// Returns the form together with the zero-equivalence data source.
pub fn integral_form(
    ring: &Ring,
    pair: &SimplicialPair,
    z: &crate::cochain::ZCochain,
    budget: FormDegreeBudget,
) -> Result<(PLForm, DifferentialTriple), LiftError> {
    let lift = lift_cocycle(ring, pair, z, budget)?;
    let theta = lift.omega.clone();
    Ok((theta, lift))
}

/// One-call exactness check at E^n for a batch of samples: I-trivial
/// samples must land in the image of a, and a-images must be I-trivial.
pub fn a_hits_kernel_of_i(
    t: &DifferentialTriple,
    budget: FormDegreeBudget,
) -> Result<bool, LiftError> {
    match a_preimage(t, budget)? {
        None => Ok(false),
        Some(theta) => {
            let at = a_map(&t.base, &theta);
            Ok(super::equiv::equivalent(&at, t)
                .map(|e| e.is_equivalent())
                .unwrap_or(false))
        }
    }
}
