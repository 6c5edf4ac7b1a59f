//! Rational polynomial (PL) differential forms on simplicial sets.
//!
//! A form on a k-simplex is a polynomial in the barycentric coordinates
//! t_1, ..., t_k (t_0 = 1 - t_1 - ... - t_k is eliminated) with dt-monomials
//! dt_{i_1} ^ ... ^ dt_{i_r}, i_1 < ... < i_r, and coefficients in the
//! rational scalar part of the graded coefficient ring. A [`PLForm`] is a
//! face-compatible family of such polynomial forms, one per nondegenerate
//! cell. Total degree mixes form degree and coefficient degree: a term with
//! r dt's in a form of total degree n has a coefficient of ring degree n - r.
//! The free part of the ring sits in even degrees, so coefficients commute
//! with dt's and the only signs come from reordering dt's.

pub mod bhomotopy;
pub mod extend;
pub mod fiber;
pub mod parse;

use crate::coeff::{QValue, Ring};
use crate::cochain::{Cochain, QCochainT};
use crate::linalg::{rat, Int, Rat};
use crate::simplicial::{map::SimplicialMap, CellId, Complex, Simplex, SimplicialPair};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Monomial key: exponents of t_1..t_k, then the sorted dt index set.
pub type Monomial = (Vec<u32>, Vec<usize>);

/// A polynomial differential form on the standard k-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    pub k: usize,
    /// Total degree: form degree plus coefficient degree.
    pub degree: usize,
    pub terms: BTreeMap<Monomial, QValue>,
}

/// Sign of sorting the concatenation of two disjoint sorted index sets,
/// or None if they intersect.
fn merge_dts(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining elements of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, inversions % 2 == 1))
}

impl PolyForm {
    pub fn zero(k: usize, degree: usize) -> Self {
        PolyForm { k, degree, terms: BTreeMap::new() }
    }

    /// A 0-form with a constant coefficient.
    pub fn constant(k: usize, v: QValue) -> Self {
        let mut f = PolyForm::zero(k, v.degree);
        f.insert(vec![0; k], vec![], v);
        f
    }

    /// The scalar constant 1.
    pub fn one(k: usize, ring: &Ring) -> Self {
        PolyForm::constant(k, ring.one_q())
    }

    /// The barycentric coordinate t_i (i = 0 yields 1 - t_1 - ... - t_k).
    pub fn coordinate(k: usize, i: usize, ring: &Ring) -> Self {
        assert!(i <= k);
        let mut f = PolyForm::zero(k, 0);
        if i == 0 {
            f.insert(vec![0; k], vec![], ring.one_q());
            for j in 1..=k {
                let mut e = vec![0; k];
                e[j - 1] = 1;
                f.insert(e, vec![], ring.one_q().scale(&-rat(1, 1)));
            }
        } else {
            let mut e = vec![0; k];
            e[i - 1] = 1;
            f.insert(e, vec![], ring.one_q());
        }
        f
    }

    /// The 1-form dt_i (i = 0 yields -dt_1 - ... - dt_k).
    pub fn differential(k: usize, i: usize, ring: &Ring) -> Self {
        assert!(i <= k);
        let mut f = PolyForm::zero(k, 1);
        if i == 0 {
            for j in 1..=k {
                f.insert(vec![0; k], vec![j], ring.one_q().scale(&-rat(1, 1)));
            }
        } else {
            f.insert(vec![0; k], vec![i], ring.one_q());
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a coefficient polynomial.
    pub fn poly_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|(e, _)| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn insert(&mut self, exps: Vec<u32>, dts: Vec<usize>, v: QValue) {
        assert_eq!(exps.len(), self.k);
        assert!(dts.len() + v.degree == self.degree, "term degree mismatch");
        assert!(dts.windows(2).all(|w| w[0] < w[1]));
        assert!(dts.iter().all(|&i| 1 <= i && i <= self.k));
        if v.is_zero() {
            return;
        }
        let key = (exps, dts);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot = slot.add(&v);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, v);
            }
        }
    }

    pub fn add(&self, o: &PolyForm) -> PolyForm {
        assert_eq!((self.k, self.degree), (o.k, o.degree));
        let mut out = self.clone();
        for ((e, d), v) in &o.terms {
            out.insert(e.clone(), d.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-rat(1, 1))
    }

    pub fn sub(&self, o: &PolyForm) -> PolyForm {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> PolyForm {
        if c.is_zero() {
            return PolyForm::zero(self.k, self.degree);
        }
        let mut out = PolyForm::zero(self.k, self.degree);
        for ((e, d), v) in &self.terms {
            out.terms.insert((e.clone(), d.clone()), v.scale(c));
        }
        out
    }

    pub fn wedge(&self, o: &PolyForm, ring: &Ring) -> PolyForm {
        assert_eq!(self.k, o.k);
        let mut out = PolyForm::zero(self.k, self.degree + o.degree);
        for ((ea, da), va) in &self.terms {
            for ((eb, db), vb) in &o.terms {
                let Some((dts, flip)) = merge_dts(da, db) else { continue };
                let mut v = ring.mul_q(va, vb);
                if v.is_zero() {
                    continue;
                }
                if flip {
                    v = v.neg();
                }
                let exps: Vec<u32> =
                    ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, dts, v);
            }
        }
        out
    }

    /// Exterior derivative in the free coordinates t_1..t_k.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.k, self.degree + 1);
        for ((e, dts), v) in &self.terms {
            for i in 1..=self.k {
                let a = e[i - 1];
                if a == 0 || dts.contains(&i) {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i - 1] -= 1;
                let before = dts.iter().filter(|&&x| x < i).count();
                let mut c = rat_u(a);
                if before % 2 == 1 {
                    c = -c;
                }
                let mut d2 = dts.clone();
                d2.insert(before, i);
                out.insert(e2, d2, v.scale(&c));
            }
        }
        out
    }

    /// Substitute each coordinate/differential by the given forms on a
    /// target coordinate space with `m` free coordinates.
    pub fn substitute(
        &self,
        subs_t: &[PolyForm],
        subs_dt: &[PolyForm],
        m: usize,
        ring: &Ring,
    ) -> PolyForm {
        assert_eq!(subs_t.len(), self.k);
        assert_eq!(subs_dt.len(), self.k);
        let mut out = PolyForm::zero(m, self.degree);
        for ((e, dts), v) in &self.terms {
            let mut acc = PolyForm::constant(m, v.clone());
            for i in 1..=self.k {
                for _ in 0..e[i - 1] {
                    acc = acc.wedge(&subs_t[i - 1], ring);
                }
            }
            for &i in dts {
                acc = acc.wedge(&subs_dt[i - 1], ring);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Pullback along the affine map induced by a vertex map
    /// f: {0..m} -> {0..k} (t_i pulls back to the sum of s_j over the
    /// preimage of i).
    pub fn pullback_vertices(&self, f: &[usize], ring: &Ring) -> PolyForm {
        let m = f.len() - 1;
        assert!(f.iter().all(|&i| i <= self.k));
        let mut subs_t = Vec::with_capacity(self.k);
        let mut subs_dt = Vec::with_capacity(self.k);
        for i in 1..=self.k {
            let mut t = PolyForm::zero(m, 0);
            let mut dt = PolyForm::zero(m, 1);
            for (j, &fj) in f.iter().enumerate() {
                if fj != i {
                    continue;
                }
                t = t.add(&PolyForm::coordinate(m, j, ring));
                dt = dt.add(&PolyForm::differential(m, j, ring));
            }
            subs_t.push(t);
            subs_dt.push(dt);
        }
        self.substitute(&subs_t, &subs_dt, m, ring)
    }

    /// Exact integral over the standard simplex of the top dt-part,
    /// by the Dirichlet formula
    /// ∫ t_1^{a_1} ... t_k^{a_k} dt_1...dt_k = a_1! ... a_k! / (k + Σa)!.
    pub fn integrate(&self, _ring: &Ring) -> QValue {
        let top: Vec<usize> = (1..=self.k).collect();
        let cd = self.degree - self.k;
        let mut acc = QValue { degree: cd, coords: BTreeMap::new() };
        for ((e, dts), v) in &self.terms {
            if *dts != top {
                continue;
            }
            let mut num = Int::one();
            let mut total = self.k as u64;
            for &a in e {
                num *= factorial(a as u64);
                total += a as u64;
            }
            let c = Rat::new(num, factorial(total));
            acc = acc.add(&v.scale(&c));
        }
        acc
    }
}

fn rat_u(a: u32) -> Rat {
    rat(a as i64, 1)
}

fn factorial(n: u64) -> Int {
    let mut out = Int::one();
    for i in 2..=n {
        out *= Int::from(i);
    }
    out
}

/// Vertex map of the affine collapse realizing a (possibly degenerate)
/// simplex over its underlying cell.
pub fn word_vertex_map(s: &Simplex) -> Vec<usize> {
    let mut f: Vec<usize> = (0..=s.dim()).collect();
    // x = s_{i1} s_{i2} ... c realizes as the composite collapse applying
    // sigma_{i1} first
    for &i in &s.word {
        for v in f.iter_mut() {
            if *v > i {
                *v -= 1;
            }
        }
    }
    f
}

/// Vertex map of the i-th face inclusion of the standard k-simplex.
pub fn face_vertex_map(k: usize, i: usize) -> Vec<usize> {
    (0..k).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// A face-compatible family of polynomial forms, one per nondegenerate cell.
#[derive(Clone, Debug)]
pub struct PLForm {
    pub ring: Ring,
    pub base: Complex,
    pub degree: usize,
    pub comps: BTreeMap<CellId, PolyForm>,
}

impl PLForm {
    pub fn zero(ring: &Ring, base: &Complex, degree: usize) -> Self {
        PLForm {
            ring: ring.clone(),
            base: base.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The constant scalar function 1.
    pub fn one(ring: &Ring, base: &Complex) -> Self {
        let mut f = PLForm::zero(ring, base, 0);
        for c in base.all_cells() {
            f.set(c, PolyForm::one(c.0, ring));
        }
        f
    }

    pub fn component(&self, cell: CellId) -> PolyForm {
        self.comps
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| PolyForm::zero(cell.0, self.degree))
    }

    pub fn set(&mut self, cell: CellId, f: PolyForm) {
        assert_eq!(f.k, cell.0);
        assert_eq!(f.degree, self.degree);
        if f.is_zero() {
            self.comps.remove(&cell);
        } else {
            self.comps.insert(cell, f);
        }
    }

    /// Pull the component of a (possibly degenerate) simplex back to the
    /// standard simplex of its dimension.
    pub fn restrict(&self, s: &Simplex) -> PolyForm {
        let comp = self.component(s.cell);
        if s.word.is_empty() {
            comp
        } else {
            comp.pullback_vertices(&word_vertex_map(s), &self.ring)
        }
    }

    /// Check face compatibility of every component.
    pub fn validate(&self) -> Result<(), String> {
        for k in 1..=self.base.dim() {
            for cell in self.base.cells_of_dim(k) {
                let comp = self.component(cell);
                let s = Simplex::nondeg(cell);
                for i in 0..=k {
                    let lhs =
                        comp.pullback_vertices(&face_vertex_map(k, i), &self.ring);
                    let rhs = self.restrict(&self.base.face(&s, i));
                    if lhs != rhs {
                        return Err(format!(
                            "face {} of {} is not compatible",
                            i,
                            self.base.cell_name(cell)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn poly_degree(&self) -> usize {
        self.comps.values().map(|f| f.poly_degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &PLForm) -> PLForm {
        assert!(std::rc::Rc::ptr_eq(&self.base, &o.base));
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (&c, f) in &o.comps {
            out.set(c, out.component(c).add(f));
        }
        out
    }

    pub fn neg(&self) -> PLForm {
        self.scale(&-rat(1, 1))
    }

    pub fn sub(&self, o: &PLForm) -> PLForm {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> PLForm {
        let mut out = PLForm::zero(&self.ring, &self.base, self.degree);
        for (&cell, f) in &self.comps {
            out.set(cell, f.scale(c));
        }
        out
    }

    pub fn wedge(&self, o: &PLForm) -> PLForm {
        assert!(std::rc::Rc::ptr_eq(&self.base, &o.base));
        let mut out =
            PLForm::zero(&self.ring, &self.base, self.degree + o.degree);
        for cell in self.base.all_cells() {
            out.set(
                cell,
                self.component(cell).wedge(&o.component(cell), &self.ring),
            );
        }
        out
    }

    pub fn d(&self) -> PLForm {
        let mut out = PLForm::zero(&self.ring, &self.base, self.degree + 1);
        for (&cell, f) in &self.comps {
            out.set(cell, f.d());
        }
        out
    }

    /// Pullback along a simplicial map.
    pub fn pullback(&self, f: &SimplicialMap) -> PLForm {
        assert!(std::rc::Rc::ptr_eq(&self.base, &f.target));
        let mut out = PLForm::zero(&self.ring, &f.source, self.degree);
        for cell in f.source.all_cells() {
            out.set(cell, self.restrict(&f.apply(&Simplex::nondeg(cell))));
        }
        out
    }

    /// The de Rham comparison map: integrate the top form part over each
    /// simplex.
    pub fn de_rham(&self) -> QCochainT {
        let mut out = Cochain::zero(&self.ring, &self.base, self.degree);
        for (&cell, f) in &self.comps {
            if self.degree < cell.0 {
                continue;
            }
            out.set(cell, f.integrate(&self.ring));
        }
        out
    }

    /// Whether the pullback to the subcomplex of the pair vanishes.
    pub fn is_relative(&self, pair: &SimplicialPair) -> bool {
        self.pullback(&pair.incl).is_zero()
    }

    /// The PL extension of the barycentric coordinate of a vertex: the
    /// global 0-form that is 1 at `v` and 0 at the other vertices.
    pub fn vertex_function(ring: &Ring, base: &Complex, v: CellId) -> PLForm {
        assert_eq!(v.0, 0);
        let mut out = PLForm::zero(ring, base, 0);
        for cell in base.all_cells() {
            let k = cell.0;
            let s = Simplex::nondeg(cell);
            let mut f = PolyForm::zero(k, 0);
            for j in 0..=k {
                if base.vertex(&s, j) == v {
                    f = f.add(&PolyForm::coordinate(k, j, ring));
                }
            }
            out.set(cell, f);
        }
        out
    }
}

/// A random face-compatible form: a combination of products of vertex
/// functions and their differentials, with graded coefficients. Useful for
/// fuzzing identities that expect Whitney-style inputs.
pub fn random_whitney_form(
    ring: &Ring,
    base: &Complex,
    degree: usize,
    rng: &mut impl rand::Rng,
) -> PLForm {
    let verts: Vec<CellId> = base.cells_of_dim(0).collect();
    let mut out = PLForm::zero(ring, base, degree);
    for r in 0..=degree.min(base.dim()) {
        let cd = degree - r;
        let gens = ring.v_gens(cd);
        if gens.is_empty() {
            continue;
        }
        for _ in 0..2 {
            let g = gens[rng.gen_range(0..gens.len())];
            let mut coords = std::collections::BTreeMap::new();
            coords.insert(g, rat(rng.gen_range(-3..4), rng.gen_range(1..3)));
            let v = QValue { degree: cd, coords };
            let mut f = PLForm::one(ring, base).scale(&rat(1, 1));
            // a polynomial factor of low degree
            for _ in 0..rng.gen_range(0..3usize) {
                let w = verts[rng.gen_range(0..verts.len())];
                f = f.wedge(&PLForm::vertex_function(ring, base, w));
            }
            // r differential factors
            for _ in 0..r {
                let w = verts[rng.gen_range(0..verts.len())];
                f = f.wedge(&PLForm::vertex_function(ring, base, w).d());
            }
            let mut cf = PLForm::zero(ring, base, degree);
            for cell in base.all_cells() {
                cf.set(
                    cell,
                    f.component(cell)
                        .wedge(&PolyForm::constant(cell.0, v.clone()), ring),
                );
            }
            out = out.add(&cf);
        }
    }
    out
}

/// The closed circle 1-form with integral 1: 6 t (1-t) dt on the edge.
pub fn circle_volume(ring: &Ring, s1: &Complex) -> PLForm {
    let mut f = PLForm::zero(ring, s1, 1);
    let t = PolyForm::coordinate(1, 1, ring);
    let bump = t
        .wedge(&PolyForm::coordinate(1, 0, ring), ring)
        .wedge(&PolyForm::differential(1, 1, ring), ring)
        .scale(&rat(6, 1));
    f.set(s1.cell_by_name("e").unwrap(), bump);
    f.validate().unwrap();
    f
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coeff;
    use crate::simplicial::builtins;
    use rand::{Rng, SeedableRng};

    /// A random face-compatible form: a combination of products of vertex
    /// functions and their differentials, with graded coefficients.
    pub(crate) fn random_form(
        ring: &Ring,
        base: &Complex,
        degree: usize,
        rng: &mut impl Rng,
    ) -> PLForm {
        super::random_whitney_form(ring, base, degree, rng)
    }

    #[test]
    fn coordinate_and_d_basics() {
        let ring = coeff::integers();
        // d(t_1 on Delta^1) = dt_1
        let t = PolyForm::coordinate(1, 1, &ring);
        assert_eq!(t.d(), PolyForm::differential(1, 1, &ring));
        // t dt ^ t dt = 0
        let tdt = t.wedge(&t.d(), &ring);
        assert!(tdt.wedge(&tdt, &ring).is_zero());
        // t_0 + t_1 = 1 on Delta^1
        let s = PolyForm::coordinate(1, 0, &ring).add(&t);
        assert_eq!(s, PolyForm::one(1, &ring));
    }

    #[test]
    fn integrate_dirichlet() {
        let ring = coeff::integers();
        let t = PolyForm::coordinate(1, 1, &ring);
        let dt = PolyForm::differential(1, 1, &ring);
        // ∫ dt = 1, ∫ t dt = 1/2, ∫ t^2 dt = 1/3
        assert_eq!(ring.q_coords(&dt.integrate(&ring)), vec![rat(1, 1)]);
        assert_eq!(
            ring.q_coords(&t.wedge(&dt, &ring).integrate(&ring)),
            vec![rat(1, 2)]
        );
        assert_eq!(
            ring.q_coords(
                &t.wedge(&t, &ring).wedge(&dt, &ring).integrate(&ring)
            ),
            vec![rat(1, 3)]
        );
        // ∫_{Delta^2} t_1 t_2 dt_1 dt_2 = 1!1!/4! = 1/24
        let u = PolyForm::coordinate(2, 1, &ring)
            .wedge(&PolyForm::coordinate(2, 2, &ring), &ring)
            .wedge(&PolyForm::differential(2, 1, &ring), &ring)
            .wedge(&PolyForm::differential(2, 2, &ring), &ring);
        assert_eq!(ring.q_coords(&u.integrate(&ring)), vec![rat(1, 24)]);
    }

    #[test]
    fn random_forms_validate_and_commute() {
        let ring = coeff::poly_even(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for base in [builtins::rp2(), builtins::torus().total] {
            for deg in 0..3 {
                let a = random_form(&ring, &base, deg, &mut rng);
                let b = random_form(&ring, &base, deg + 1, &mut rng);
                a.validate().unwrap();
                b.validate().unwrap();
                // dd = 0
                assert!(a.d().d().is_zero());
                // graded commutativity
                let ab = a.wedge(&b);
                let mut ba = b.wedge(&a);
                if (deg * (deg + 1)) % 2 == 1 {
                    ba = ba.neg();
                }
                assert!(ab.sub(&ba).is_zero());
                // Leibniz
                let lhs = ab.d();
                let mut rhs = a.d().wedge(&b);
                let adb = a.wedge(&b.d());
                rhs = if deg % 2 == 1 { rhs.sub(&adb) } else { rhs.add(&adb) };
                assert!(lhs.sub(&rhs).is_zero());
            }
        }
    }

    #[test]
    fn stokes_identity() {
        let ring = coeff::poly_even(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for base in [builtins::standard_simplex(3), builtins::klein()] {
            for deg in 0..3 {
                let a = random_form(&ring, &base, deg, &mut rng);
                let lhs = a.d().de_rham();
                let rhs = a.de_rham().delta();
                assert!(lhs.sub(&rhs).is_zero(), "Stokes fails in degree {deg}");
            }
        }
    }

    #[test]
    fn de_rham_naturality() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let t = builtins::torus();
        for deg in 0..2 {
            let a = random_form(&ring, &t.left, deg, &mut rng);
            let lhs = a.pullback(&t.pr1).de_rham();
            let rhs = a.de_rham().pullback(&t.pr1);
            assert!(lhs.sub(&rhs).is_zero());
        }
    }
}
