//! Chains, the Eilenberg-Zilber shuffle map, interval integration of
//! cochains, and the coboundary-transport witness on cylinders.

use super::{Cochain, Value};
use crate::linalg::Int;
use crate::simplicial::product::{Cylinder, Product};
use crate::simplicial::{CellId, Complex, Simplex};
use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Integer linear combination of (possibly degenerate) simplices.
#[derive(Clone, Debug)]
pub struct Chain {
    pub base: Complex,
    pub dim: usize,
    pub terms: BTreeMap<Simplex, Int>,
}

impl Chain {
    pub fn zero(base: &Complex, dim: usize) -> Self {
        Chain { base: base.clone(), dim, terms: BTreeMap::new() }
    }

    pub fn of(base: &Complex, s: Simplex) -> Self {
        let mut c = Chain::zero(base, s.dim());
        c.push(s, Int::one());
        c
    }

    pub fn push(&mut self, s: Simplex, coeff: Int) {
        debug_assert_eq!(s.dim(), self.dim);
        let e = self.terms.entry(s).or_insert_with(Int::zero);
        *e += coeff;
        if e.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(&self.base, self.dim - 1);
        for (s, c) in &self.terms {
            for i in 0..=self.dim {
                let f = self.base.face(s, i);
                let coeff = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.push(f, coeff);
            }
        }
        out
    }

    /// Drop degenerate terms (the image in normalized chains).
    pub fn normalized(&self) -> Chain {
        let mut out = Chain::zero(&self.base, self.dim);
        for (s, c) in &self.terms {
            if !s.is_degenerate() {
                out.push(s.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_zero_normalized(&self) -> bool {
        self.normalized().terms.is_empty()
    }
}

/// Evaluate a cochain on a chain of matching dimension.
pub fn eval_chain<V: Value>(u: &Cochain<V>, c: &Chain) -> V {
    let cd = u.degree.saturating_sub(c.dim);
    let mut acc = V::zero(&u.ring, cd);
    for (s, k) in &c.terms {
        let v = u.eval(s);
        if v.is_zero() {
            continue;
        }
        acc = acc.add(&v.scale_int(k, &u.ring), &u.ring);
    }
    acc
}

/// Block inversion parity of the (p,q)-shuffle with a-degeneracies at `ja`.
fn shuffle_sign(ja: &[usize], jb: &[usize]) -> Int {
    let mut inv = 0usize;
    for &x in ja {
        for &y in jb {
            if x < y {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Eilenberg-Zilber shuffle map B(a (x) b) in C_{p+q}(X x Y).
pub fn ez(prod: &Product, a: &Simplex, b: &Simplex) -> Chain {
    let p = a.dim();
    let q = b.dim();
    let n = p + q;
    let mut out = Chain::zero(&prod.total, n);
    for ja in (0..n).combinations(q) {
        let jb: Vec<usize> = (0..n).filter(|k| !ja.contains(k)).collect();
        let mut sa = a.clone();
        for &i in &ja {
            sa = prod.left.degeneracy(&sa, i);
        }
        let mut sb = b.clone();
        for &i in &jb {
            sb = prod.right.degeneracy(&sb, i);
        }
        let s = prod.cell_of_pair(&sa, &sb);
        out.push(s, shuffle_sign(&ja, &jb));
    }
    out
}

/// Alexander-Whitney map on a product simplex: sum of front (x) back parts.
pub fn aw(prod: &Product, s: &Simplex) -> Vec<(Int, Simplex, Simplex)> {
    let n = s.dim();
    let sa = prod.pr1.apply(s);
    let sb = prod.pr2.apply(s);
    (0..=n)
        .map(|p| {
            (
                Int::one(),
                prod.left.front(&sa, p),
                prod.right.back(&sb, n - p),
            )
        })
        .collect()
}

/// Integrate a cochain on F x X over the 1-dimensional fiber direction:
/// (int u)(x) = u(B([edge] (x) x)).
pub fn integrate_fiber<V: Value>(
    u: &Cochain<V>,
    prod: &Product,
    edge: CellId,
) -> Cochain<V> {
    assert!(std::rc::Rc::ptr_eq(&u.base, &prod.total));
    assert_eq!(edge.0, 1);
    let Some(degree) = u.degree.checked_sub(1) else {
        return Cochain::zero(&u.ring, &prod.right, 0);
    };
    let mut out = Cochain::zero(&u.ring, &prod.right, degree);
    let e = Simplex::nondeg(edge);
    for k in 0..=prod.right.dim() {
        if degree.checked_sub(k).is_none() {
            continue;
        }
        for cell in prod.right.cells_of_dim(k) {
            let chain = ez(prod, &e, &Simplex::nondeg(cell));
            out.set(cell, eval_chain(u, &chain));
        }
    }
    out
}

/// Position weight of the first vertex of the interval component (0 or 1).
fn epsilon(cyl: &Cylinder, s: &Simplex) -> Int {
    let ia = cyl.prod.pr1.apply(s);
    let v = cyl.prod.left.vertex(&ia, 0);
    Int::from(v.1 as i64) // interval vertices: v0 = (0,0), v1 = (0,1)
}

/// The prism cochain G with i0* G = 0 and i1* G = v: on a cylinder cell,
/// G = eps(first interval vertex) * v(projection to X).
pub fn prism_weight<V: Value>(v: &Cochain<V>, cyl: &Cylinder) -> Cochain<V> {
    let total = &cyl.prod.total;
    let mut out = Cochain::zero(&v.ring, total, v.degree);
    for k in 0..=total.dim() {
        if v.degree.checked_sub(k).is_none() {
            continue;
        }
        for cell in total.cells_of_dim(k) {
            let s = Simplex::nondeg(cell);
            let e = epsilon(cyl, &s);
            if e.is_zero() {
                continue;
            }
            let val = v.eval(&cyl.prod.pr2.apply(&s));
            out.set(cell, val.scale_int(&e, &v.ring));
        }
    }
    out
}

/// Coboundary-transport witness: the natural cocycle E on I x X with
/// i0* E = 0 and i1* E = dv, built as E = d(prism weight of v). If v
/// vanishes on a subcomplex A, then E vanishes on I x A.
pub fn cob_witness<V: Value>(v: &Cochain<V>, cyl: &Cylinder) -> Cochain<V> {
    prism_weight(v, cyl).delta()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::cochain::QCochainT;
    use crate::linalg::{rat, Rat};
    use crate::simplicial::{builtins, product};
    use rand::{Rng, SeedableRng};

    fn random_q(
        ring: &coeff::Ring,
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
                    .map(|_| rat(rng.gen_range(-4..5), rng.gen_range(1..4)))
                    .collect();
                u.set(cell, ring.q_from_coords(cd, &coords));
            }
        }
        u
    }

    #[test]
    fn shuffle_is_a_chain_map() {
        let t = builtins::torus();
        let c = builtins::circle();
        let e = Simplex::nondeg((1, 0));
        // d B(e (x) e) = B(de (x) e) - B(e (x) de) = 0 here since de = 0
        let b = ez(&t, &e, &e);
        assert!(b.boundary().is_zero_normalized());
        // mixed degrees on interval x circle
        let i = builtins::interval();
        let p = product::Product::new(&i, &c);
        let ie = Simplex::nondeg((1, 0));
        let b = ez(&p, &ie, &e);
        let db = b.boundary().normalized();
        // B(d ie (x) e) = B(v1 (x) e) - B(v0 (x) e)
        let mut expect = ez(&p, &i.face(&ie, 0), &e);
        for (s, c) in ez(&p, &i.face(&ie, 1), &e).terms {
            expect.push(s, -c);
        }
        let mut diff = db;
        for (s, c) in expect.normalized().terms {
            diff.push(s, -c);
        }
        assert!(diff.is_zero_normalized());
    }

    #[test]
    fn aw_is_left_inverse_to_shuffle() {
        // AW(B(a (x) b)) = a (x) b on nondegenerate pairs
        let t = builtins::torus();
        let e = Simplex::nondeg((1, 0));
        let b = ez(&t, &e, &e);
        let mut acc: BTreeMap<(Simplex, Simplex), Int> = BTreeMap::new();
        for (s, c) in &b.terms {
            for (k, fa, fb) in aw(&t, s) {
                // normalized tensor: drop degenerate factors
                if fa.is_degenerate() || fb.is_degenerate() {
                    continue;
                }
                let e = acc.entry((fa, fb)).or_insert_with(Int::zero);
                *e += c * k;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        assert_eq!(acc.len(), 1);
        assert_eq!(acc[&(e.clone(), e)], Int::one());
    }

    #[test]
    fn interval_integration_coboundary_formula() {
        // int d u + d int u = i1* u - i0* u on cylinders over the suite
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for base in [builtins::circle(), builtins::rp2(), builtins::torus().total] {
            let cyl = product::cylinder(&base);
            let edge = (1usize, 0usize);
            for n in 1..=base.dim() + 1 {
                let u = random_q(&ring, &cyl.prod.total, n, &mut rng);
                let lhs = integrate_fiber(&u.delta(), &cyl.prod, edge)
                    .add(&integrate_fiber(&u, &cyl.prod, edge).delta());
                let rhs = u.pullback(&cyl.i1).sub(&u.pullback(&cyl.i0));
                assert!(
                    lhs.sub(&rhs).is_zero(),
                    "formula fails on {} in degree {n}",
                    base.name
                );
            }
        }
    }

    #[test]
    fn integration_naturality_in_the_base() {
        // (id x f)* then integrate = integrate then f*
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let i = builtins::interval();
        let c = builtins::circle();
        let f = builtins::interval_to_circle(&i, &c);
        let cyl_i = product::cylinder(&i);
        let cyl_c = product::cylinder(&c);
        let idf = cyl_c
            .prod
            .pairing("idxf", &cyl_i.prod.pr1, &cyl_i.prod.pr2.compose(&f));
        idf.validate().unwrap();
        for n in 1..=2 {
            let u = random_q(&ring, &cyl_c.prod.total, n, &mut rng);
            let lhs = integrate_fiber(&u.pullback(&idf), &cyl_i.prod, (1, 0));
            let rhs = integrate_fiber(&u, &cyl_c.prod, (1, 0)).pullback(&f);
            assert!(lhs.sub(&rhs).is_zero(), "naturality fails in degree {n}");
        }
    }

    #[test]
    fn cob_witness_contract() {
        let ring = coeff::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for base in [builtins::circle(), builtins::rp2()] {
            let cyl = product::cylinder(&base);
            for n in 0..=base.dim() {
                let v = random_q(&ring, &base, n, &mut rng);
                let e = cob_witness(&v, &cyl);
                assert!(e.delta().is_zero());
                assert!(e.pullback(&cyl.i0).is_zero());
                assert!(e.pullback(&cyl.i1).sub(&v.delta()).is_zero());
            }
        }
    }
}
