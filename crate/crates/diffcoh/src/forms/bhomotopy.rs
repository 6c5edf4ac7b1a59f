//! The natural chain homotopy B between the wedge of forms and the cup of
//! their de Rham cochains:
//!
//!   dB(u,v) + B(du,v) + (-1)^{|u|} B(u,dv) = R(u ^ v) - R(u) u R(v).
//!
//! B is built by effective acyclic models. The value of B(u,v) on a
//! nondegenerate m-simplex may only depend on the pullback of (u,v) to the
//! standard m-simplex; B vanishes when both pullbacks are degenerate
//! (pulled back from a collapse). Instead of solving for the universal
//! functional on the full (huge) space of polynomial form pairs, the solver
//! works lazily on the span of the pairs that actually occur: each distinct
//! universal restriction is one unknown, the homotopy identity on every
//! cell is one equation, linear dependencies between restrictions are added
//! as consistency rows, and the resulting exact rational system is solved.
//! Solved values are frozen in the context, so later calls (for instance
//! pullbacks of earlier inputs) remain consistent — this is what makes the
//! construction natural across one context.

use super::{PLForm, PolyForm};
use crate::coeff::{QValue, Ring};
use crate::cochain::{Cochain, QCochainT};
use crate::linalg::{rat, solve::kernel_q, solve::solve_q, Mat, Rat};
use crate::simplicial::Simplex;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::BTreeMap;

/// A monomial of a scalar polynomial form: exponents and dt set.
type Mono = (Vec<u32>, Vec<usize>);
/// Coordinates of a simple tensor of two scalar forms in the monomial
/// tensor basis, in canonical order. Together with the simplex dimension
/// this is the universal key of a restriction.
type ElemKey = (usize, Vec<((Mono, Mono), Rat)>);

/// Scalar components of a V-valued polynomial form, per ring generator.
fn scalar_parts(f: &PolyForm) -> BTreeMap<usize, BTreeMap<Mono, Rat>> {
    let mut out: BTreeMap<usize, BTreeMap<Mono, Rat>> = BTreeMap::new();
    for ((e, dts), v) in &f.terms {
        for (&g, c) in &v.coords {
            out.entry(g)
                .or_default()
                .insert((e.clone(), dts.clone()), c.clone());
        }
    }
    out
}

fn tensor_coords(
    fa: &BTreeMap<Mono, Rat>,
    fb: &BTreeMap<Mono, Rat>,
) -> Vec<((Mono, Mono), Rat)> {
    let mut out = Vec::new();
    for (ma, ca) in fa {
        for (mb, cb) in fb {
            let c = ca * cb;
            if !c.is_zero() {
                out.push(((ma.clone(), mb.clone()), c));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Whether a scalar form on the m-simplex is the pullback of a form along
/// the degeneracy collapse sigma_t (vertex map identifying t and t+1).
fn in_degeneracy_image(ring: &Ring, f: &BTreeMap<Mono, Rat>, m: usize, t: usize) -> bool {
    if m == 0 {
        return false;
    }
    // basis of pullbacks of monomials on the (m-1)-simplex
    let cap = f
        .keys()
        .map(|(e, _)| e.iter().sum::<u32>() as usize)
        .max()
        .unwrap_or(0);
    let deg = f.keys().map(|(_, d)| d.len()).next().unwrap_or(0);
    let vmap: Vec<usize> = (0..=m).map(|j| if j > t { j - 1 } else { j }).collect();
    let mut support: Vec<Mono> = f.keys().cloned().collect();
    let mut cols: Vec<BTreeMap<Mono, Rat>> = Vec::new();
    for (e, dts) in monomials(m - 1, deg, cap) {
        let mut mono = PolyForm::zero(m - 1, deg);
        mono.insert(e, dts, ring.one_q());
        let pulled = mono.pullback_vertices(&vmap, ring);
        let mut col = BTreeMap::new();
        for ((pe, pd), v) in &pulled.terms {
            let c = ring.q_coords(v);
            // scalar form: single unit coordinate
            col.insert((pe.clone(), pd.clone()), c[0].clone());
            if !support.contains(&(pe.clone(), pd.clone())) {
                support.push((pe.clone(), pd.clone()));
            }
        }
        cols.push(col);
    }
    support.sort();
    let mut mat = Mat::zero(support.len(), cols.len());
    let mut rhs = vec![Rat::zero(); support.len()];
    for (j, col) in cols.iter().enumerate() {
        for (mono, c) in col {
            let r = support.binary_search(mono).unwrap();
            mat.a[r][j] = c.clone();
        }
    }
    for (mono, c) in f {
        let r = support.binary_search(mono).unwrap();
        rhs[r] = c.clone();
    }
    solve_q(&mat, &rhs).is_some()
}

/// All scalar monomials on the k-simplex of form degree `deg` with
/// polynomial degree at most `cap`.
fn monomials(k: usize, deg: usize, cap: usize) -> Vec<Mono> {
    let mut dts_sets: Vec<Vec<usize>> = vec![vec![]];
    for i in 1..=k {
        let mut more = Vec::new();
        for s in &dts_sets {
            if s.len() < deg {
                let mut t = s.clone();
                t.push(i);
                more.push(t);
            }
        }
        dts_sets.extend(more);
    }
    dts_sets.retain(|s| s.len() == deg);
    let mut exps = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for a in 0..=(cap as u32 - used.min(cap as u32)) {
                let mut e2: Vec<u32> = e.clone();
                e2.push(a);
                if e2.iter().sum::<u32>() as usize <= cap {
                    next.push(e2);
                }
            }
        }
        exps = next;
    }
    let mut out = Vec::new();
    for d in dts_sets {
        for e in &exps {
            out.push((e.clone(), d.clone()));
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum BHomotopyError {
    #[error("chain homotopy constraints are inconsistent with frozen values")]
    Inconsistent,
}

/// A solving context for the chain homotopy B. Values of the universal
/// functional are frozen per context, so all calls through one context are
/// mutually natural.
pub struct BHomotopy {
    ring: Ring,
    frozen: RefCell<BTreeMap<ElemKey, Rat>>,
}

/// Symbolic value of B on one simplex: a linear combination of unknowns
/// with coefficients in the ring.
type Symbolic = Vec<(ElemKey, QValue)>;

impl BHomotopy {
    pub fn new(ring: &Ring) -> Self {
        BHomotopy { ring: ring.clone(), frozen: RefCell::new(BTreeMap::new()) }
    }

    /// The symbolic expansion of B(u,v) at a (possibly degenerate) simplex.
    fn expand(&self, u: &PLForm, v: &PLForm, s: &Simplex) -> Symbolic {
        let m = s.dim();
        let ru = scalar_parts(&u.restrict(s));
        let rv = scalar_parts(&v.restrict(s));
        let ring = &self.ring;
        let mut out = Vec::new();
        for (&g, fg) in &ru {
            let gi = &ring.gens[g];
            let i = u.degree - gi.degree;
            for (&h, fh) in &rv {
                let hi = &ring.gens[h];
                let j = v.degree - hi.degree;
                if i + j != m + 1 {
                    continue;
                }
                let gh = ring.mul_q(
                    &unit_q(gi.degree, g),
                    &unit_q(hi.degree, h),
                );
                if gh.is_zero() {
                    continue;
                }
                let coords = tensor_coords(fg, fh);
                if coords.is_empty() {
                    continue;
                }
                out.push(((m, coords), gh));
            }
        }
        out
    }

    /// Compute B(a,b): a cochain of degree |a|+|b|-1 satisfying the chain
    /// homotopy identity against R(a ^ b) - R(a) u R(b).
    pub fn apply(
        &self,
        a: &PLForm,
        b: &PLForm,
    ) -> Result<QCochainT, BHomotopyError> {
        assert!(std::rc::Rc::ptr_eq(&a.base, &b.base));
        let ring = &self.ring;
        let base = &a.base;
        let (p, q) = (a.degree, b.degree);
        let out_degree = match (p + q).checked_sub(1) {
            Some(d) => d,
            None => return Ok(Cochain::zero(ring, base, 0)),
        };
        // closure of the input pair under the tensor differential, with the
        // coefficient each later pair carries inside the earlier identities
        let da = a.d();
        let db = b.d();
        let pairs: Vec<(PLForm, PLForm)> = vec![
            (a.clone(), b.clone()),
            (da.clone(), b.clone()),
            (a.clone(), db.clone()),
            (da.clone(), db.clone()),
        ];
        // identity for pair i: dB_i + sum_j coupling[i][j] B_j = W_i
        let sp = if p % 2 == 0 { rat(1, 1) } else { -rat(1, 1) };
        let couplings: [Vec<(usize, Rat)>; 4] = [
            vec![(1, rat(1, 1)), (2, sp.clone())],
            vec![(3, -sp.clone())],
            vec![(3, rat(1, 1))],
            vec![],
        ];
        let live: Vec<bool> =
            pairs.iter().map(|(u, v)| !u.is_zero() && !v.is_zero()).collect();
        // unknown layout and per-(pair, simplex) symbolic values
        let mut index: BTreeMap<ElemKey, usize> = BTreeMap::new();
        let mut keys: Vec<ElemKey> = Vec::new();
        let mut sym: BTreeMap<(usize, Simplex), Symbolic> = BTreeMap::new();
        let mut degenerate_elems: Vec<usize> = Vec::new();
        {
            let note = |elems: &Symbolic, degenerate: bool,
                            index: &mut BTreeMap<ElemKey, usize>,
                            keys: &mut Vec<ElemKey>,
                            degenerate_elems: &mut Vec<usize>| {
                for (key, _) in elems {
                    let next = index.len();
                    let id = *index.entry(key.clone()).or_insert_with(|| {
                        keys.push(key.clone());
                        next
                    });
                    if degenerate {
                        degenerate_elems.push(id);
                    }
                }
            };
            for (pi, (u, v)) in pairs.iter().enumerate() {
                if !live[pi] {
                    continue;
                }
                for cell in base.all_cells() {
                    let s = Simplex::nondeg(cell);
                    let e = self.expand(u, v, &s);
                    note(&e, false, &mut index, &mut keys, &mut degenerate_elems);
                    sym.insert((pi, s.clone()), e);
                    // faces, including degenerate ones
                    if cell.0 > 0 {
                        for t in 0..=cell.0 {
                            let f = base.face(&s, t);
                            if sym.contains_key(&(pi, f.clone())) {
                                continue;
                            }
                            let e = self.expand(u, v, &f);
                            note(
                                &e,
                                f.is_degenerate(),
                                &mut index,
                                &mut keys,
                                &mut degenerate_elems,
                            );
                            sym.insert((pi, f), e);
                        }
                    }
                }
            }
        }
        let n_unknowns = index.len();
        let frozen = self.frozen.borrow();
        // rows: (coefficients over unknowns, rhs)
        let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
        let push_sym =
            |row: &mut Vec<Rat>, rhs: &mut Rat, e: &Symbolic, sign: &Rat,
             vgen: usize, index: &BTreeMap<ElemKey, usize>| {
                for (key, val) in e {
                    let c = match val.coords.get(&vgen) {
                        Some(c) => c * sign,
                        None => continue,
                    };
                    if c.is_zero() {
                        continue;
                    }
                    match frozen.get(key) {
                        Some(x) => *rhs -= &c * x,
                        None => row[index[key]] += c,
                    }
                }
            };
        // the homotopy identity, one row per (pair, cell, ring coordinate)
        for (pi, (u, v)) in pairs.iter().enumerate() {
            if !live[pi] {
                continue;
            }
            let w = u
                .wedge(v)
                .de_rham()
                .sub(&u.de_rham().cup(&v.de_rham()));
            for cell in base.all_cells() {
                let m = cell.0;
                let Some(cd) = (u.degree + v.degree).checked_sub(m) else {
                    continue;
                };
                let gens: Vec<usize> = ring.v_gens(cd).to_vec();
                if gens.is_empty() {
                    continue;
                }
                let s = Simplex::nondeg(cell);
                let wv = w.eval(&s);
                for &vg in &gens {
                    let mut row = vec![Rat::zero(); n_unknowns];
                    let mut rhs =
                        wv.coords.get(&vg).cloned().unwrap_or_else(Rat::zero);
                    if m > 0 {
                        for t in 0..=m {
                            let f = base.face(&s, t);
                            if f.is_degenerate() {
                                continue; // cochain values vanish there
                            }
                            let sign =
                                if t % 2 == 0 { rat(1, 1) } else { -rat(1, 1) };
                            push_sym(
                                &mut row,
                                &mut rhs,
                                &sym[&(pi, f)],
                                &sign,
                                vg,
                                &index,
                            );
                        }
                    }
                    for (pj, c) in &couplings[pi] {
                        if !live[*pj] {
                            continue;
                        }
                        push_sym(
                            &mut row,
                            &mut rhs,
                            &sym[&(*pj, s.clone())],
                            c,
                            vg,
                            &index,
                        );
                    }
                    rows.push((row, rhs));
                }
            }
        }
        // normalization: B vanishes on restrictions pulled back through a
        // degeneracy collapse
        let mut forced_zero: Vec<usize> = degenerate_elems;
        for (key, &id) in &index {
            let (m, coords) = key;
            if forced_zero.contains(&id) || *m == 0 {
                continue;
            }
            'outer: for t in 0..*m {
                let fa = project_left(coords);
                let fb = project_right(coords);
                if in_degeneracy_image(ring, &fa, *m, t)
                    && in_degeneracy_image(ring, &fb, *m, t)
                {
                    forced_zero.push(id);
                    break 'outer;
                }
            }
        }
        forced_zero.sort_unstable();
        forced_zero.dedup();
        for id in forced_zero {
            let mut row = vec![Rat::zero(); n_unknowns];
            row[id] = rat(1, 1);
            rows.push((row, Rat::zero()));
        }
        // linearity: dependencies among the restriction vectors (including
        // earlier frozen ones of the same dimension) must be respected
        let mut dims: Vec<usize> = keys.iter().map(|(m, _)| *m).collect();
        dims.sort_unstable();
        dims.dedup();
        for m in dims {
            let mut vecs: Vec<(&ElemKey, Option<usize>)> = Vec::new();
            for (key, &id) in &index {
                if key.0 == m {
                    vecs.push((key, Some(id)));
                }
            }
            for key in frozen.keys() {
                if key.0 == m && !index.contains_key(key) {
                    vecs.push((key, None));
                }
            }
            if vecs.len() < 2 {
                continue;
            }
            let mut support: Vec<&(Mono, Mono)> = Vec::new();
            for (key, _) in &vecs {
                for (mm, _) in &key.1 {
                    if !support.contains(&mm) {
                        support.push(mm);
                    }
                }
            }
            support.sort();
            // columns are elements; kernel vectors are dependencies
            let mut mat = Mat::zero(support.len(), vecs.len());
            for (j, (key, _)) in vecs.iter().enumerate() {
                for (mm, c) in &key.1 {
                    let r = support.binary_search(&mm).unwrap();
                    mat.a[r][j] = c.clone();
                }
            }
            let ker = kernel_q(&mat);
            for kcol in 0..ker.cols {
                let dep = ker.column(kcol);
                let mut row = vec![Rat::zero(); n_unknowns];
                let mut rhs = Rat::zero();
                for (j, (key, id)) in vecs.iter().enumerate() {
                    if dep[j].is_zero() {
                        continue;
                    }
                    match id {
                        Some(i) => row[*i] += &dep[j],
                        None => rhs -= &dep[j] * &frozen[*key],
                    }
                }
                rows.push((row, rhs));
            }
        }
        drop(frozen);
        // solve
        let nrows = rows.len().max(1);
        let mut mat = Mat::zero(nrows, n_unknowns);
        let mut rhs = vec![Rat::zero(); nrows];
        for (r, (row, c)) in rows.into_iter().enumerate() {
            mat.a[r] = row;
            rhs[r] = c;
        }
        let sol = solve_q(&mat, &rhs).ok_or(BHomotopyError::Inconsistent)?;
        let mut frozen = self.frozen.borrow_mut();
        for (key, &id) in &index {
            frozen.entry(key.clone()).or_insert_with(|| sol[id].clone());
        }
        // assemble B(a,b)
        let mut out = Cochain::zero(ring, base, out_degree);
        for cell in base.all_cells() {
            let s = Simplex::nondeg(cell);
            let Some(e) = sym.get(&(0, s)) else { continue };
            let Some(cd) = out_degree.checked_sub(cell.0) else { continue };
            let mut acc = ring.zero_q(cd);
            for (key, val) in e {
                acc = acc.add(&val.scale(&frozen[key]));
            }
            out.set(cell, acc);
        }
        Ok(out)
    }
}

fn unit_q(degree: usize, g: usize) -> QValue {
    let mut coords = BTreeMap::new();
    coords.insert(g, rat(1, 1));
    QValue { degree, coords }
}

fn project_left(coords: &[((Mono, Mono), Rat)]) -> BTreeMap<Mono, Rat> {
    // pick the slice matching the first right-monomial; proportional for a
    // simple tensor
    let first = &coords[0].0 .1;
    coords
        .iter()
        .filter(|((_, mb), _)| mb == first)
        .map(|((ma, _), c)| (ma.clone(), c.clone()))
        .collect()
}

fn project_right(coords: &[((Mono, Mono), Rat)]) -> BTreeMap<Mono, Rat> {
    let first = &coords[0].0 .0;
    coords
        .iter()
        .filter(|((ma, _), _)| ma == first)
        .map(|((_, mb), c)| (mb.clone(), c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::forms::tests::random_form;
    use crate::simplicial::builtins;
    use rand::SeedableRng;

    use crate::forms::circle_volume;

    #[test]
    fn homotopy_identity_closed_forms_on_torus() {
        let ring = coeff::integers();
        let t = builtins::torus();
        let a = circle_volume(&ring, &t.left).pullback(&t.pr1);
        let b = circle_volume(&ring, &t.right).pullback(&t.pr2);
        assert!(a.d().is_zero() && b.d().is_zero());
        let ctx = BHomotopy::new(&ring);
        let bb = ctx.apply(&a, &b).unwrap();
        let w = a.wedge(&b).de_rham().sub(&a.de_rham().cup(&b.de_rham()));
        assert!(bb.delta().sub(&w).is_zero());
        // the defect W itself is nonzero, so B does real work here
        assert!(!w.is_zero());
    }

    #[test]
    fn homotopy_identity_general_forms() {
        let ring = coeff::poly_even(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for base in [builtins::standard_simplex(2), builtins::torus().total] {
            let ctx = BHomotopy::new(&ring);
            for (p, q) in [(0usize, 1usize), (1, 1), (1, 2)] {
                let a = random_form(&ring, &base, p, &mut rng);
                let b = random_form(&ring, &base, q, &mut rng);
                let lhs = ctx
                    .apply(&a, &b)
                    .unwrap()
                    .delta()
                    .add(&ctx.apply(&a.d(), &b).unwrap())
                    .add(&if p % 2 == 0 {
                        ctx.apply(&a, &b.d()).unwrap()
                    } else {
                        ctx.apply(&a, &b.d()).unwrap().neg()
                    });
                let w =
                    a.wedge(&b).de_rham().sub(&a.de_rham().cup(&b.de_rham()));
                assert!(lhs.sub(&w).is_zero(), "identity fails for ({p},{q})");
            }
        }
    }

    #[test]
    fn naturality_under_projection() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let t = builtins::torus();
        let ctx = BHomotopy::new(&ring);
        let a = random_form(&ring, &t.left, 1, &mut rng);
        let b = random_form(&ring, &t.left, 1, &mut rng);
        let on_circle = ctx.apply(&a, &b).unwrap();
        let on_torus = ctx
            .apply(&a.pullback(&t.pr1), &b.pullback(&t.pr1))
            .unwrap();
        assert!(on_torus.sub(&on_circle.pullback(&t.pr1)).is_zero());
    }

    #[test]
    fn constants_give_trivial_homotopy() {
        let ring = coeff::integers();
        let base = builtins::standard_simplex(2);
        let one = PLForm::one(&ring, &base);
        let ctx = BHomotopy::new(&ring);
        let bb = ctx.apply(&one, &one).unwrap();
        assert!(bb.delta().is_zero());
        let w = one
            .wedge(&one)
            .de_rham()
            .sub(&one.de_rham().cup(&one.de_rham()));
        assert!(w.is_zero());
    }
}
