//! Differential cohomology of simplicial pairs.
//!
//! A class in degree n is represented by a triple (c, omega, h): an integral
//! cocycle c with coefficients in the graded ring Lambda, a closed PL form
//! omega of degree n, and a rational cochain h of degree n - 1 mediating
//! between them through the structure equation
//!
//! ```text
//! delta h = deRham(omega) - rho(c)
//! ```
//!
//! For a pair (X, A) all three components vanish on the subcomplex.
//! Equivalence of triples is decidable (see [`equiv`]); the group and ring
//! structure live here and in [`product`], S^1-integration in [`integrate`],
//! and the long exact sequence of a pair in [`pairs`].

pub mod axioms;
pub mod equiv;
pub mod integrate;
pub mod lift;
pub mod pairs;
pub mod product;

use crate::cochain::{Cochain, QCochainT, Value, ZCochain};
use crate::coeff::Ring;
use crate::forms::PLForm;
use crate::linalg::Rat;
use crate::simplicial::{map::SimplicialMap, CellId, SimplicialPair};
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
pub enum TripleError {
    #[error("c is not a cocycle (first failure at cell {0:?})")]
    NotACocycle(CellId),
    #[error("omega is not closed (first failure at cell {0:?})")]
    NotClosed(CellId),
    #[error("structure equation violated (first failure at cell {0:?})")]
    StructureEquation(CellId),
    #[error("component does not vanish on the subcomplex (cell {0:?})")]
    NotRelative(CellId),
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("base mismatch")]
    BaseMismatch,
    #[error("map does not send the subcomplex into the subcomplex")]
    NotAPairMap,
    #[error("form: {0}")]
    Form(String),
    #[error("correction expression: {0}")]
    Correction(String),
}

/// First cell carrying a nonzero value, for error reporting.
fn first_nonzero<V: Value>(u: &Cochain<V>) -> Option<CellId> {
    u.base
        .all_cells()
        .filter(|c| u.coeff_degree(c.0).is_some())
        .find(|&c| !u.get(c).is_zero())
}

fn first_nonzero_form(f: &PLForm) -> Option<CellId> {
    f.comps.iter().find(|(_, p)| !p.is_zero()).map(|(&c, _)| c)
}

#[derive(Clone, Debug)]
pub struct DifferentialTriple {
    pub base: SimplicialPair,
    pub degree: usize,
    pub c: ZCochain,
    pub omega: PLForm,
    pub h: QCochainT,
}

impl DifferentialTriple {
    /// Validate and assemble a triple. In degree 0 the h component is the
    /// zero cochain and the structure equation reads deRham(omega) = rho(c).
    pub fn new(
        base: &SimplicialPair,
        degree: usize,
        c: ZCochain,
        omega: PLForm,
        h: QCochainT,
    ) -> Result<Self, TripleError> {
        if c.degree != degree
            || omega.degree != degree
            || h.degree != degree.saturating_sub(1)
        {
            return Err(TripleError::DegreeMismatch);
        }
        if !Rc::ptr_eq(&c.base, &base.space)
            || !Rc::ptr_eq(&omega.base, &base.space)
            || !Rc::ptr_eq(&h.base, &base.space)
        {
            return Err(TripleError::BaseMismatch);
        }
        let t = DifferentialTriple { base: base.clone(), degree, c, omega, h };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), TripleError> {
        self.omega.validate().map_err(TripleError::Form)?;
        if let Some(cell) = first_nonzero(&self.c.delta()) {
            return Err(TripleError::NotACocycle(cell));
        }
        if let Some(cell) = first_nonzero_form(&self.omega.d()) {
            return Err(TripleError::NotClosed(cell));
        }
        for &cell in &self.base.sub_cells {
            if self.c.coeff_degree(cell.0).is_some() && !self.c.get(cell).is_zero()
            {
                return Err(TripleError::NotRelative(cell));
            }
            if self.h.coeff_degree(cell.0).is_some() && !self.h.get(cell).is_zero()
            {
                return Err(TripleError::NotRelative(cell));
            }
            if !self.omega.component(cell).is_zero() {
                return Err(TripleError::NotRelative(cell));
            }
        }
        let rhs = self.omega.de_rham().sub(&self.c.rho());
        let defect = if self.degree == 0 {
            // no h in degree 0: the two sides must agree on the nose
            rhs
        } else {
            self.h.delta().sub(&rhs)
        };
        if let Some(cell) = first_nonzero(&defect) {
            return Err(TripleError::StructureEquation(cell));
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.c.ring
    }

    pub fn zero(ring: &Ring, base: &SimplicialPair, degree: usize) -> Self {
        DifferentialTriple {
            base: base.clone(),
            degree,
            c: Cochain::zero(ring, &base.space, degree),
            omega: PLForm::zero(ring, &base.space, degree),
            h: Cochain::zero(ring, &base.space, degree.saturating_sub(1)),
        }
    }

    /// The curvature map R.
    pub fn curvature(&self) -> &PLForm {
        &self.omega
    }

    /// The underlying cocycle, representing the characteristic class I.
    pub fn char_cocycle(&self) -> &ZCochain {
        &self.c
    }

    pub fn is_flat(&self) -> bool {
        self.omega.is_zero()
    }

    pub fn same_base(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.base.space, &other.base.space)
            && self.base.sub_cells == other.base.sub_cells
    }

    /// Sum of triples; the optional correction `a` is evaluated on the two
    /// cocycles and added to the h component.
    pub fn add(
        &self,
        other: &Self,
        corrections: &CorrectionData,
    ) -> Result<Self, TripleError> {
        if !self.same_base(other) {
            return Err(TripleError::BaseMismatch);
        }
        if self.degree != other.degree {
            return Err(TripleError::DegreeMismatch);
        }
        let mut h = self.h.add(&other.h);
        if let Some(a) = &corrections.a {
            h = h.add(&a.eval(&[&self.c, &other.c])?);
        }
        DifferentialTriple::new(
            &self.base,
            self.degree,
            self.c.add(&other.c),
            self.omega.add(&other.omega),
            h,
        )
    }

    pub fn neg(&self, corrections: &CorrectionData) -> Result<Self, TripleError> {
        let mut h = self.h.neg();
        if let Some(n) = &corrections.n {
            h = h.add(&n.eval(&[&self.c])?);
        }
        DifferentialTriple::new(
            &self.base,
            self.degree,
            self.c.neg(),
            self.omega.neg(),
            h,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TripleError> {
        self.add(&other.neg(&CorrectionData::default())?, &CorrectionData::default())
    }

    /// Pullback along a map of pairs: f must send the source subcomplex into
    /// the target subcomplex.
    pub fn pullback(
        &self,
        source: &SimplicialPair,
        f: &SimplicialMap,
    ) -> Result<Self, TripleError> {
        if !Rc::ptr_eq(&f.target, &self.base.space)
            || !Rc::ptr_eq(&f.source, &source.space)
        {
            return Err(TripleError::BaseMismatch);
        }
        for &cell in &source.sub_cells {
            let img = f.apply(&crate::simplicial::Simplex::nondeg(cell));
            if !img.is_degenerate() && !self.base.contains(img.cell) {
                return Err(TripleError::NotAPairMap);
            }
        }
        DifferentialTriple::new(
            source,
            self.degree,
            self.c.pullback(f),
            self.omega.pullback(f),
            self.h.pullback(f),
        )
    }

    /// The change-of-cocycle isomorphism: h is shifted by the expression
    /// evaluated on c, which must be a cocycle-valued natural operation.
    pub fn change_of_cocycle(
        &self,
        theta: &CorrectionExpr,
    ) -> Result<Self, TripleError> {
        let shift = theta.eval(&[&self.c])?;
        if first_nonzero(&shift.delta()).is_some() {
            return Err(TripleError::Correction(
                "coboundary equation violated: expression is not a cocycle on c"
                    .into(),
            ));
        }
        DifferentialTriple::new(
            &self.base,
            self.degree,
            self.c.clone(),
            self.omega.clone(),
            self.h.add(&shift),
        )
    }
}

/// The map a: forms of degree n-1 modulo exact forms into degree-n triples.
pub fn a_map(base: &SimplicialPair, theta: &PLForm) -> DifferentialTriple {
    DifferentialTriple {
        base: base.clone(),
        degree: theta.degree + 1,
        c: Cochain::zero(&theta.ring, &base.space, theta.degree + 1),
        omega: theta.d(),
        h: theta.de_rham(),
    }
}

/// Natural cochain operations used as correction data: expression trees over
/// cup, cup-1, rho, coboundary, rational scaling, and sums, applied to the
/// argument cocycles.
#[derive(Clone, Debug)]
pub enum CorrectionExpr {
    /// rho of the i-th argument cocycle.
    Arg(usize),
    Scale(Rat, Box<CorrectionExpr>),
    Sum(Box<CorrectionExpr>, Box<CorrectionExpr>),
    Cup(Box<CorrectionExpr>, Box<CorrectionExpr>),
    Cup1(Box<CorrectionExpr>, Box<CorrectionExpr>),
    Delta(Box<CorrectionExpr>),
}

impl CorrectionExpr {
    pub fn eval(&self, args: &[&ZCochain]) -> Result<QCochainT, TripleError> {
        let bad = |m: &str| TripleError::Correction(m.to_string());
        match self {
            CorrectionExpr::Arg(i) => {
                args.get(*i).map(|c| c.rho()).ok_or_else(|| bad("argument index"))
            }
            CorrectionExpr::Scale(r, e) => Ok(e.eval(args)?.scale(r)),
            CorrectionExpr::Sum(x, y) => {
                let (a, b) = (x.eval(args)?, y.eval(args)?);
                if a.degree != b.degree {
                    return Err(bad("degree mismatch in sum"));
                }
                Ok(a.add(&b))
            }
            CorrectionExpr::Cup(x, y) => Ok(x.eval(args)?.cup(&y.eval(args)?)),
            CorrectionExpr::Cup1(x, y) => Ok(x.eval(args)?.cup1(&y.eval(args)?)),
            CorrectionExpr::Delta(x) => Ok(x.eval(args)?.delta()),
        }
    }
}

/// Correction cochains for the group and ring operations. The defaults (all
/// absent, i.e. zero) are valid because cocycle addition, negation, and cup
/// are strictly compatible with rho; the unit correction is forced to zero.
#[derive(Clone, Debug, Default)]
pub struct CorrectionData {
    pub a: Option<CorrectionExpr>,
    pub n: Option<CorrectionExpr>,
    pub m: Option<CorrectionExpr>,
}
