//! Normalized cochains with graded coefficients.
//!
//! A cochain of total degree n assigns to each nondegenerate k-cell a
//! homogeneous coefficient of degree n - k; degenerate simplices evaluate
//! to zero. Sign conventions used throughout (chosen once, verified by the
//! test suite):
//! - coboundary: (du)(s) = sum_i (-1)^i u(d_i s), no coefficient sign;
//! - cup: (u v)(s) = sum_{p+q=k} (-1)^{(|u|-p) q} u(front_p) v(back_q);
//! - shuffle sign: parity of the block inversion count of the shuffle.

pub mod chains;
pub mod homology;

use crate::coeff::{GradedRing, LValue, QValue, Ring};
use crate::linalg::{Int, Rat};
use crate::simplicial::{map::SimplicialMap, CellId, Complex, Simplex};
use std::collections::BTreeMap;

/// Homogeneous coefficient values a cochain can take.
pub trait Value: Clone + PartialEq + std::fmt::Debug {
    fn degree(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn zero(ring: &GradedRing, degree: usize) -> Self;
    fn add(&self, other: &Self, ring: &GradedRing) -> Self;
    fn neg(&self, ring: &GradedRing) -> Self;
    fn mul(&self, other: &Self, ring: &GradedRing) -> Self;
    fn scale_int(&self, k: &Int, ring: &GradedRing) -> Self;
}

impl Value for LValue {
    fn degree(&self) -> usize {
        self.degree
    }
    fn is_zero(&self) -> bool {
        LValue::is_zero(self)
    }
    fn zero(ring: &GradedRing, degree: usize) -> Self {
        ring.zero_l(degree)
    }
    fn add(&self, other: &Self, ring: &GradedRing) -> Self {
        ring.add_l(self, other)
    }
    fn neg(&self, ring: &GradedRing) -> Self {
        LValue::neg(self, ring)
    }
    fn mul(&self, other: &Self, ring: &GradedRing) -> Self {
        ring.mul(self, other)
    }
    fn scale_int(&self, k: &Int, ring: &GradedRing) -> Self {
        LValue::scale(self, ring, k)
    }
}

impl Value for QValue {
    fn degree(&self) -> usize {
        self.degree
    }
    fn is_zero(&self) -> bool {
        QValue::is_zero(self)
    }
    fn zero(ring: &GradedRing, degree: usize) -> Self {
        ring.zero_q(degree)
    }
    fn add(&self, other: &Self, _ring: &GradedRing) -> Self {
        QValue::add(self, other)
    }
    fn neg(&self, _ring: &GradedRing) -> Self {
        QValue::neg(self)
    }
    fn mul(&self, other: &Self, ring: &GradedRing) -> Self {
        ring.mul_q(self, other)
    }
    fn scale_int(&self, k: &Int, _ring: &GradedRing) -> Self {
        QValue::scale(self, &crate::linalg::rat_int(k))
    }
}

#[derive(Clone, Debug)]
pub struct Cochain<V: Value> {
    pub ring: Ring,
    pub base: Complex,
    pub degree: usize,
    pub values: BTreeMap<CellId, V>,
}

pub type ZCochain = Cochain<LValue>;
pub type QCochainT = Cochain<QValue>;

impl<V: Value> Cochain<V> {
    pub fn zero(ring: &Ring, base: &Complex, degree: usize) -> Self {
        Cochain {
            ring: ring.clone(),
            base: base.clone(),
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn coeff_degree(&self, cell_dim: usize) -> Option<usize> {
        self.degree.checked_sub(cell_dim)
    }

    pub fn get(&self, cell: CellId) -> V {
        match self.values.get(&cell) {
            Some(v) => v.clone(),
            None => V::zero(&self.ring, self.degree.saturating_sub(cell.0)),
        }
    }

    pub fn set(&mut self, cell: CellId, v: V) {
        debug_assert_eq!(v.degree() + cell.0, self.degree);
        if v.is_zero() {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, v);
        }
    }

    /// Evaluate on an arbitrary simplex; degenerate ones give zero.
    pub fn eval(&self, s: &Simplex) -> V {
        if s.is_degenerate() || self.coeff_degree(s.dim()).is_none() {
            V::zero(&self.ring, self.degree.saturating_sub(s.dim()))
        } else {
            self.get(s.cell)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(std::rc::Rc::ptr_eq(&self.base, &other.base));
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (&c, v) in &other.values {
            let s = out.get(c).add(v, &self.ring);
            out.set(c, s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (_, v) in out.values.iter_mut() {
            *v = v.neg(&self.ring);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_int(&self, k: &Int) -> Self {
        let mut out = Cochain::zero(&self.ring, &self.base, self.degree);
        for (&c, v) in &self.values {
            out.set(c, v.scale_int(k, &self.ring));
        }
        out
    }

    /// Coboundary.
    pub fn delta(&self) -> Self {
        let mut out = Cochain::zero(&self.ring, &self.base, self.degree + 1);
        for d in 0..=self.base.dim() {
            if d == 0 {
                continue;
            }
            let Some(cd) = (self.degree + 1).checked_sub(d) else { continue };
            for cell in self.base.cells_of_dim(d) {
                let s = Simplex::nondeg(cell);
                let mut acc = V::zero(&self.ring, cd);
                for i in 0..=d {
                    let f = self.base.face(&s, i);
                    let mut v = self.eval(&f);
                    if i % 2 == 1 {
                        v = v.neg(&self.ring);
                    }
                    acc = acc.add(&v, &self.ring);
                }
                out.set(cell, acc);
            }
        }
        out
    }

    /// Pullback along a simplicial map into this cochain's base.
    pub fn pullback(&self, f: &SimplicialMap) -> Self {
        assert!(std::rc::Rc::ptr_eq(&f.target, &self.base));
        let mut out = Cochain::zero(&self.ring, &f.source, self.degree);
        for cell in f.source.all_cells() {
            if self.coeff_degree(cell.0).is_none() {
                continue;
            }
            let img = f.apply(&Simplex::nondeg(cell));
            let v = self.eval(&img);
            out.set(cell, v);
        }
        out
    }

    /// Cup product via front/back faces (Alexander-Whitney).
    pub fn cup(&self, other: &Self) -> Self {
        assert!(std::rc::Rc::ptr_eq(&self.base, &other.base));
        let x = &self.base;
        let mut out = Cochain::zero(&self.ring, x, self.degree + other.degree);
        for k in 0..=x.dim() {
            let Some(cd) = (self.degree + other.degree).checked_sub(k) else {
                continue;
            };
            for cell in x.cells_of_dim(k) {
                let s = Simplex::nondeg(cell);
                let mut acc = V::zero(&self.ring, cd);
                for p in 0..=k {
                    let q = k - p;
                    let Some(ju) = self.degree.checked_sub(p) else { continue };
                    if other.degree < q {
                        continue;
                    }
                    let uf = self.eval(&x.front(&s, p));
                    if uf.is_zero() {
                        continue;
                    }
                    let vb = other.eval(&x.back(&s, q));
                    if vb.is_zero() {
                        continue;
                    }
                    let mut term = uf.mul(&vb, &self.ring);
                    if (ju * q) % 2 == 1 {
                        term = term.neg(&self.ring);
                    }
                    acc = acc.add(&term, &self.ring);
                }
                out.set(cell, acc);
            }
        }
        out
    }

    /// Steenrod cup-1 product. The term where `v` sees the middle vertex
    /// block {a..b} of a k-cell carries (-1)^{(a+1)(b+1) + |u|(b-a)}, which
    /// fixes the identity (checked by the tests)
    /// d(cup1(u,v)) = u v - (-1)^{|u||v|} v u
    ///               - cup1(du, v) - (-1)^{|u|} cup1(u, dv).
    pub fn cup1(&self, other: &Self) -> Self {
        assert!(std::rc::Rc::ptr_eq(&self.base, &other.base));
        let x = &self.base;
        let total = match (self.degree + other.degree).checked_sub(1) {
            Some(t) => t,
            None => return Cochain::zero(&self.ring, x, 0),
        };
        let mut out = Cochain::zero(&self.ring, x, total);
        for k in 0..=x.dim() {
            let Some(cd) = total.checked_sub(k) else { continue };
            for cell in x.cells_of_dim(k) {
                let s = Simplex::nondeg(cell);
                let mut acc = V::zero(&self.ring, cd);
                // split: v sees the middle block {a, ..., b}, u the rest
                for qd in 0..=k {
                    let pd = k + 1 - qd; // u-restriction dimension
                    for a in 0..=(k - qd) {
                        let b = a + qd;
                        let keep_u: Vec<usize> =
                            (0..=a).chain(b..=k).collect();
                        let keep_v: Vec<usize> = (a..=b).collect();
                        if self.degree + 1 < pd || other.degree < qd {
                            continue;
                        }
                        let uv = self.eval(&x.restrict(&s, &keep_u));
                        if uv.is_zero() {
                            continue;
                        }
                        let vv = other.eval(&x.restrict(&s, &keep_v));
                        if vv.is_zero() {
                            continue;
                        }
                        let mut term = uv.mul(&vv, &self.ring);
                        let e = (a + 1) * (b + 1) + self.degree * qd;
                        if e % 2 == 1 {
                            term = term.neg(&self.ring);
                        }
                        acc = acc.add(&term, &self.ring);
                    }
                }
                out.set(cell, acc);
            }
        }
        out
    }

    /// Restriction of values to the cells of a subcomplex image.
    pub fn vanishes_on(&self, cells: &std::collections::BTreeSet<CellId>) -> bool {
        self.values.keys().all(|c| !cells.contains(c))
    }
}

impl ZCochain {
    pub fn rho(&self) -> QCochainT {
        let mut out = Cochain::zero(&self.ring, &self.base, self.degree);
        for (&c, v) in &self.values {
            out.set(c, self.ring.rho(v));
        }
        out
    }
}

impl QCochainT {
    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = Cochain::zero(&self.ring, &self.base, self.degree);
        for (&c, v) in &self.values {
            out.set(c, v.scale(k));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::simplicial::{builtins, product};
    use rand::{Rng, SeedableRng};

    fn random_q(
        ring: &Ring,
        base: &Complex,
        degree: usize,
        rng: &mut impl Rng,
    ) -> QCochainT {
        let mut u = Cochain::zero(ring, base, degree);
        for d in 0..=base.dim().min(degree) {
            let cd = degree - d;
            let gens = ring.v_gens(cd).len();
            if gens == 0 {
                continue;
            }
            for cell in base.cells_of_dim(d) {
                let coords: Vec<Rat> = (0..gens)
                    .map(|_| crate::linalg::rat(rng.gen_range(-4..5), rng.gen_range(1..4)))
                    .collect();
                u.set(cell, ring.q_from_coords(cd, &coords));
            }
        }
        u
    }

    #[test]
    fn delta_squares_to_zero() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for base in [builtins::rp2(), builtins::torus().total, builtins::klein()] {
            for n in 0..3 {
                let u = random_q(&ring, &base, n, &mut rng);
                assert!(u.delta().delta().is_zero());
            }
        }
    }

    #[test]
    fn cup_leibniz() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for base in [builtins::rp2(), builtins::torus().total] {
            for (p, q) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
                let u = random_q(&ring, &base, p, &mut rng);
                let v = random_q(&ring, &base, q, &mut rng);
                let lhs = u.cup(&v).delta();
                let mut rhs = u.delta().cup(&v);
                let uv = u.cup(&v.delta());
                rhs = if p % 2 == 1 { rhs.sub(&uv) } else { rhs.add(&uv) };
                assert!(lhs.sub(&rhs).is_zero(), "Leibniz fails p={p} q={q}");
            }
        }
    }

    #[test]
    fn cup_leibniz_graded() {
        let ring = coeff::poly_even(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let base = builtins::torus().total;
        for (p, q) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
            let u = random_q(&ring, &base, p, &mut rng);
            let v = random_q(&ring, &base, q, &mut rng);
            let lhs = u.cup(&v).delta();
            let mut rhs = u.delta().cup(&v);
            let uv = u.cup(&v.delta());
            rhs = if p % 2 == 1 { rhs.sub(&uv) } else { rhs.add(&uv) };
            assert!(lhs.sub(&rhs).is_zero(), "graded Leibniz fails p={p} q={q}");
        }
    }

    #[test]
    fn cup_unit_and_associativity() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let base = builtins::rp2();
        let mut one = Cochain::<QValue>::zero(&ring, &base, 0);
        for cell in base.cells_of_dim(0) {
            one.set(cell, ring.one_q());
        }
        for n in 0..3 {
            let u = random_q(&ring, &base, n, &mut rng);
            assert!(one.cup(&u).sub(&u).is_zero());
            assert!(u.cup(&one).sub(&u).is_zero());
        }
        let u = random_q(&ring, &base, 1, &mut rng);
        let v = random_q(&ring, &base, 1, &mut rng);
        let w = random_q(&ring, &base, 0, &mut rng);
        assert!(u.cup(&v).cup(&w).sub(&u.cup(&v.cup(&w))).is_zero());
    }

    #[test]
    fn cup1_coboundary_identity() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let t3 = product::Product::new(&builtins::torus().total, &builtins::circle());
        for base in [builtins::standard_simplex(4), t3.total.clone()] {
            for (p, q) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
                let u = random_q(&ring, &base, p, &mut rng);
                let v = random_q(&ring, &base, q, &mut rng);
                let lhs = u.cup1(&v).delta();
                let mut rhs = u.cup(&v);
                let vu = v.cup(&u);
                rhs = if (p * q) % 2 == 1 { rhs.add(&vu) } else { rhs.sub(&vu) };
                let t1 = u.delta().cup1(&v);
                rhs = rhs.sub(&t1);
                let t2 = u.cup1(&v.delta());
                rhs = if p % 2 == 1 { rhs.add(&t2) } else { rhs.sub(&t2) };
                assert!(
                    lhs.sub(&rhs).is_zero(),
                    "cup1 identity fails p={p} q={q} on {}",
                    base.name
                );
            }
        }
    }

    #[test]
    fn pullback_commutes_with_delta() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let i = builtins::interval();
        let c = builtins::circle();
        let f = builtins::interval_to_circle(&i, &c);
        for n in 0..2 {
            let u = random_q(&ring, &c, n, &mut rng);
            let lhs = u.pullback(&f).delta();
            let rhs = u.delta().pullback(&f);
            assert!(lhs.sub(&rhs).is_zero());
        }
    }
}
