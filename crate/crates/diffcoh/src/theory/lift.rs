//! Linear-solver utilities behind the theory: trivializing integral
//! cocycles, lifting a cocycle to a full triple (surjectivity of the
//! characteristic class map), and random samplers for triples and flat
//! classes.

use super::equiv::CoordBasis;
use super::{DifferentialTriple, TripleError};
use crate::cochain::homology::coboundary_matrix;
use crate::cochain::{Cochain, QCochainT, ZCochain};
use crate::coeff::Ring;
use crate::forms::extend::{form_space, FormDegreeBudget};
use crate::forms::{Monomial, PLForm};
use crate::linalg::solve::{from_columns, hstack, kernel_z, solve_q, solve_z};
use crate::linalg::{IMat, Int, Mat, QMat, Rat};
use crate::simplicial::{CellId, Complex, SimplicialPair};
use num_traits::Zero;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum LiftError {
    #[error("no lift exists")]
    Infeasible,
    #[error("form degree budget exhausted")]
    BudgetExceeded,
    #[error("triple: {0}")]
    Triple(#[from] TripleError),
}

/// Solve `delta b = u` over Lambda (torsion coordinates modulo their order).
/// Returns a primitive b, or None when [u] is a nonzero class.
pub fn lambda_trivialize(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    u: &ZCochain,
) -> Option<ZCochain> {
    let n = u.degree;
    if n == 0 {
        return if u.is_zero() {
            Some(Cochain::zero(ring, base, 0))
        } else {
            None
        };
    }
    let rows = CoordBasis::lambda(ring, base, exclude, n);
    let b_basis = CoordBasis::lambda(ring, base, exclude, n - 1);
    let mut cols: Vec<Vec<Int>> = (0..b_basis.len())
        .map(|i| {
            rows.z_coords(&b_basis.z_basis_cochain(i).delta())
                .iter()
                .map(|r| r.to_integer())
                .collect()
        })
        .collect();
    for (slot, q) in rows.torsion_slots() {
        let mut col = vec![Int::zero(); rows.len()];
        col[slot] = Int::from(q);
        cols.push(col);
    }
    let a: IMat = from_columns(rows.len(), cols);
    let rhs: Vec<Int> =
        rows.z_coords(u).iter().map(|r| r.to_integer()).collect();
    let x = solve_z(&a, &rhs)?;
    Some(b_basis.z_from_ints(&x[..b_basis.len()]))
}

/// Whether an integral cocycle represents zero in H^n(base, exclude; Lambda).
pub fn lambda_class_trivial(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    u: &ZCochain,
) -> bool {
    lambda_trivialize(ring, base, exclude, u).is_some()
}

/// Row keys for the mixed form/cochain systems: one row per polynomial
/// coordinate of a form (closedness) or per cochain coordinate slot
/// (structure equation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum RKey {
    Closed(CellId, Monomial, usize),
    Structure(usize),
}

pub(crate) struct RowIndex {
    map: BTreeMap<RKey, usize>,
}

impl RowIndex {
    pub(crate) fn new() -> Self {
        RowIndex { map: BTreeMap::new() }
    }
    pub(crate) fn idx(&mut self, k: RKey) -> usize {
        let next = self.map.len();
        *self.map.entry(k).or_insert(next)
    }
    pub(crate) fn len(&self) -> usize {
        self.map.len()
    }
    pub(crate) fn form_entries(&mut self, f: &PLForm) -> Vec<(usize, Rat)> {
        let mut out = vec![];
        for (&cell, poly) in &f.comps {
            for (mono, v) in &poly.terms {
                for (&g, c) in &v.coords {
                    let row =
                        self.idx(RKey::Closed(cell, mono.clone(), g));
                    out.push((row, c.clone()));
                }
            }
        }
        out
    }
}

/// Find a triple with the given characteristic cocycle: a closed form omega
/// and a cochain h with delta h = deRham(omega) - rho(c), by a single
/// rational solve over an escalating polynomial-degree form basis.
pub fn lift_cocycle(
    ring: &Ring,
    pair: &SimplicialPair,
    c: &ZCochain,
    budget: FormDegreeBudget,
) -> Result<DifferentialTriple, LiftError> {
    let n = c.degree;
    let base = &pair.space;
    let sub = &pair.sub_cells;
    let rel = if sub.is_empty() { None } else { Some(pair) };
    let h_basis = if n >= 1 {
        Some(CoordBasis::v(ring, base, sub, n - 1))
    } else {
        None
    };
    let row_v = CoordBasis::v(ring, base, sub, n);
    let mut budget = budget;
    loop {
        let fs = form_space(ring, base, n, budget.cap, rel);
        // sparse columns over closedness rows + structure rows
        let mut rindex = RowIndex::new();
        let mut sparse: Vec<Vec<(usize, Rat)>> = vec![];
        for f in &fs {
            let mut col = rindex.form_entries(&f.d());
            for (slot, v) in row_v.q_coords(&f.de_rham()).into_iter().enumerate()
            {
                if !v.is_zero() {
                    col.push((rindex.idx(RKey::Structure(slot)), v));
                }
            }
            sparse.push(col);
        }
        if let Some(hb) = &h_basis {
            for j in 0..hb.len() {
                let dh = hb.q_basis_cochain(j).delta();
                let col = row_v
                    .q_coords(&dh)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(slot, v)| (rindex.idx(RKey::Structure(slot)), -v))
                    .collect();
                sparse.push(col);
            }
        }
        let mut rhs_sparse: Vec<(usize, Rat)> = row_v
            .q_coords(&c.rho())
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(slot, v)| (rindex.idx(RKey::Structure(slot)), v))
            .collect();
        let rows = rindex.map.len();
        let mut m = QMat::zero(rows, sparse.len());
        for (j, col) in sparse.iter().enumerate() {
            for (i, v) in col {
                m.a[*i][j] += v.clone();
            }
        }
        let mut rhs = vec![Rat::zero(); rows];
        for (i, v) in rhs_sparse.drain(..) {
            rhs[i] += v;
        }
        if let Some(sol) = solve_q(&m, &rhs) {
            let mut omega = PLForm::zero(ring, base, n);
            for (x, f) in sol.iter().zip(&fs) {
                if !x.is_zero() {
                    omega = omega.add(&f.scale(x));
                }
            }
            let h = match &h_basis {
                Some(hb) => hb.q_from_rats(&sol[fs.len()..]),
                None => Cochain::zero(ring, base, 0),
            };
            return Ok(DifferentialTriple::new(
                pair,
                n,
                c.clone(),
                omega,
                h,
            )?);
        }
        budget = budget.escalate().ok_or(LiftError::BudgetExceeded)?;
    }
}

/// Solve `delta h = v` over the rational cochains vanishing on `exclude`.
pub fn q_trivialize(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    v: &QCochainT,
) -> Option<QCochainT> {
    let n = v.degree;
    if n == 0 {
        return if v.is_zero() {
            Some(Cochain::zero(ring, base, 0))
        } else {
            None
        };
    }
    let rows = CoordBasis::v(ring, base, exclude, n);
    let h_basis = CoordBasis::v(ring, base, exclude, n - 1);
    let cols: Vec<Vec<Rat>> = (0..h_basis.len())
        .map(|i| rows.q_coords(&h_basis.q_basis_cochain(i).delta()))
        .collect();
    let a: QMat = from_columns(rows.len(), cols);
    let x = solve_q(&a, &rows.q_coords(v))?;
    Some(h_basis.q_from_rats(&x))
}

/// A basis of Lambda-valued cocycles of total degree n (torsion generators
/// contribute their mod-order cocycles).
pub fn lambda_cocycle_basis(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    n: usize,
) -> Vec<ZCochain> {
    let mut out = vec![];
    for (g, gen) in ring.gens.iter().enumerate() {
        let Some(k) = n.checked_sub(gen.degree) else { continue };
        let cells: Vec<CellId> = base
            .cells_of_dim(k)
            .filter(|c| !exclude.contains(c))
            .collect();
        if cells.is_empty() {
            continue;
        }
        let d = coboundary_matrix(base, exclude, k);
        let ker = if d.rows == 0 {
            Mat::identity(cells.len())
        } else {
            match gen.order {
                None => kernel_z(&d),
                Some(q) => {
                    // cocycle mod q: kernel of [d | q I], first block
                    let mut qi = IMat::zero(d.rows, d.rows);
                    for i in 0..d.rows {
                        qi.a[i][i] = Int::from(q);
                    }
                    let full = kernel_z(&hstack(&d, &qi));
                    let mut m = IMat::zero(cells.len(), full.cols);
                    for j in 0..full.cols {
                        for i in 0..cells.len() {
                            m.a[i][j] = full.a[i][j].clone();
                        }
                    }
                    m
                }
            }
        };
        for j in 0..ker.cols {
            let col = ker.column(j);
            if col.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut u = Cochain::zero(ring, base, n);
            for (i, &cell) in cells.iter().enumerate() {
                if col[i].is_zero() {
                    continue;
                }
                let mut v: crate::coeff::LValue = u.get(cell);
                v.coords.insert(g, col[i].clone());
                u.set(cell, ring.add_l(&v, &ring.zero_l(n - k)));
            }
            if !u.is_zero() {
                out.push(u);
            }
        }
    }
    out
}

/// Random small integral combination of the cocycle basis.
pub fn random_cocycle(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    n: usize,
    rng: &mut impl Rng,
) -> ZCochain {
    let mut out = Cochain::zero(ring, base, n);
    for z in lambda_cocycle_basis(ring, base, exclude, n) {
        let k = Int::from(rng.gen_range(-2i64..=2));
        if !k.is_zero() {
            out = out.add(&z.scale_int(&k));
        }
    }
    out
}

/// Random rational cochain vanishing on `exclude`.
pub fn random_q_cochain(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    n: usize,
    rng: &mut impl Rng,
) -> QCochainT {
    let basis = CoordBasis::v(ring, base, exclude, n);
    let coords: Vec<Rat> = (0..basis.len())
        .map(|_| crate::linalg::rat(rng.gen_range(-3..4), rng.gen_range(1..3)))
        .collect();
    basis.q_from_rats(&coords)
}

/// Random Lambda-valued cochain vanishing on `exclude`.
pub fn random_z_cochain(
    ring: &Ring,
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    n: usize,
    rng: &mut impl Rng,
) -> ZCochain {
    let basis = CoordBasis::lambda(ring, base, exclude, n);
    let coords: Vec<Int> =
        (0..basis.len()).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
    basis.z_from_ints(&coords)
}

/// Random triple: a lifted random cocycle, shifted by a random witness and a
/// random flat rational cocycle so that curvature, class, and h-coset all
/// vary across samples.
pub fn random_triple(
    ring: &Ring,
    pair: &SimplicialPair,
    n: usize,
    rng: &mut impl Rng,
    budget: FormDegreeBudget,
) -> Result<DifferentialTriple, LiftError> {
    let base = &pair.space;
    let sub = &pair.sub_cells;
    // keep the characteristic class liftable: scale down until a lift exists
    let mut c = random_cocycle(ring, base, sub, n, rng);
    let mut t = loop {
        match lift_cocycle(ring, pair, &c, budget) {
            Ok(t) => break t,
            Err(LiftError::Triple(e)) => return Err(LiftError::Triple(e)),
            Err(_) => {
                if c.is_zero() {
                    break DifferentialTriple::zero(ring, pair, n);
                }
                c = Cochain::zero(ring, base, n);
            }
        }
    };
    if n >= 1 {
        let b = random_z_cochain(ring, base, sub, n - 1, rng);
        let mut h = t.h.sub(&b.rho());
        if n >= 2 {
            h = h.add(&random_q_cochain(ring, base, sub, n - 2, rng).delta());
        }
        // a closed shift of h moves the class without breaking the triple
        if rng.gen_bool(0.5) {
            let z = random_cocycle(ring, base, sub, n - 1, rng);
            h = h.add(&z.rho().scale(&crate::linalg::rat(1, 2)));
        }
        t = DifferentialTriple::new(pair, n, t.c.add(&b.delta()), t.omega, h)?;
    }
    Ok(t)
}

/// Random flat triple (omega = 0): a torsion-or-trivial class plus a random
/// rational cocycle in h.
pub fn random_flat(
    ring: &Ring,
    pair: &SimplicialPair,
    n: usize,
    rng: &mut impl Rng,
) -> Result<DifferentialTriple, LiftError> {
    let base = &pair.space;
    let sub = &pair.sub_cells;
    let mut c = random_cocycle(ring, base, sub, n, rng);
    let mut h = match (n, q_trivialize(ring, base, sub, &c.rho().neg())) {
        (0, _) => {
            // degree 0 flat: rho(c) must vanish, so only torsion cocycles
            if !c.rho().is_zero() {
                c = Cochain::zero(ring, base, 0);
            }
            return DifferentialTriple::new(
                pair,
                0,
                c,
                PLForm::zero(ring, base, 0),
                Cochain::zero(ring, base, 0),
            )
            .map_err(LiftError::Triple);
        }
        (_, Some(h)) => h,
        (_, None) => {
            // [rho(c)] nonzero: fall back to an exact characteristic class
            let b = random_z_cochain(ring, base, sub, n - 1, rng);
            c = b.delta();
            b.rho().neg()
        }
    };
    // vary the class within the flat part
    for z in lambda_cocycle_basis(ring, base, sub, n - 1) {
        if rng.gen_bool(0.4) {
            let num = rng.gen_range(-2i64..=2);
            let den = rng.gen_range(1i64..=3);
            h = h.add(&z.rho().scale(&crate::linalg::rat(num, den)));
        }
    }
    DifferentialTriple::new(pair, n, c, PLForm::zero(ring, base, n), h)
        .map_err(LiftError::Triple)
}

