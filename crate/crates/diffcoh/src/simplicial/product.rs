//! Products of simplicial sets.
//!
//! Nondegenerate n-cells of X x Y are pairs (s_I x, s_J y) with x, y
//! nondegenerate and I, J disjoint (the Eilenberg-Zilber lemma); faces are
//! computed componentwise and re-factored into normal form.

use super::map::SimplicialMap;
use super::{word_insert, CellId, Complex, Simplex, SimplicialSet};
use itertools::Itertools;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Product {
    pub total: Complex,
    pub left: Complex,
    pub right: Complex,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
    /// Components of each nondegenerate total cell, indexed like cells.
    pub pairs: Vec<Vec<(Simplex, Simplex)>>,
    lookup: HashMap<(Simplex, Simplex), CellId>,
}

/// Indices at which a simplex is degenerate = the set of its word letters.
fn word_set(s: &Simplex) -> std::collections::BTreeSet<usize> {
    s.word.iter().copied().collect()
}

/// Factor a componentwise pair into s_W applied to a nondegenerate pair.
pub fn factor_pair(
    x: &SimplicialSet,
    y: &SimplicialSet,
    a: &Simplex,
    b: &Simplex,
) -> (Vec<usize>, (Simplex, Simplex)) {
    debug_assert_eq!(a.dim(), b.dim());
    let common: Vec<usize> = word_set(a).intersection(&word_set(b)).copied().collect();
    match common.last() {
        None => (vec![], (a.clone(), b.clone())),
        Some(&i) => {
            let a1 = x.face(a, i + 1);
            let b1 = y.face(b, i + 1);
            debug_assert_eq!(&x.degeneracy(&a1, i), a);
            debug_assert_eq!(&y.degeneracy(&b1, i), b);
            let (w, nd) = factor_pair(x, y, &a1, &b1);
            (word_insert(&w, i), nd)
        }
    }
}

fn word_string(w: &[usize]) -> String {
    w.iter().map(|i| format!("s{}", i)).collect()
}

impl Product {
    pub fn new(left: &Complex, right: &Complex) -> Self {
        let dim = left.dim() + right.dim();
        let mut cells: Vec<Vec<String>> = vec![vec![]; dim + 1];
        let mut pairs: Vec<Vec<(Simplex, Simplex)>> = vec![vec![]; dim + 1];
        let mut lookup: HashMap<(Simplex, Simplex), CellId> = HashMap::new();
        for n in 0..=dim {
            for p in 0..=n.min(left.dim()) {
                for q in 0..=n.min(right.dim()) {
                    if (n - p) + (n - q) > n {
                        continue;
                    }
                    for xi in 0..left.cell_count(p) {
                        for yi in 0..right.cell_count(q) {
                            for i_set in (0..n).combinations(n - p) {
                                let rest: Vec<usize> =
                                    (0..n).filter(|k| !i_set.contains(k)).collect();
                                for j_set in rest.iter().copied().combinations(n - q) {
                                    let wi: Vec<usize> =
                                        i_set.iter().rev().copied().collect();
                                    let wj: Vec<usize> =
                                        j_set.iter().rev().copied().collect();
                                    let a = Simplex { word: wi, cell: (p, xi) };
                                    let b = Simplex { word: wj, cell: (q, yi) };
                                    let id = (n, cells[n].len());
                                    cells[n].push(format!(
                                        "{}{}|{}{}",
                                        word_string(&a.word),
                                        left.cell_name((p, xi)),
                                        word_string(&b.word),
                                        right.cell_name((q, yi)),
                                    ));
                                    lookup.insert((a.clone(), b.clone()), id);
                                    pairs[n].push((a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> =
            (0..=dim).map(|d| vec![vec![]; cells[d].len()]).collect();
        for n in 1..=dim {
            for (idx, (a, b)) in pairs[n].iter().enumerate() {
                let mut fs = vec![];
                for i in 0..=n {
                    let fa = left.face(a, i);
                    let fb = right.face(b, i);
                    let (w, nd) = factor_pair(left, right, &fa, &fb);
                    let cell = *lookup.get(&nd).expect("product face cell missing");
                    fs.push(Simplex { word: w, cell });
                }
                faces[n][idx] = fs;
            }
        }
        let basepoint = match (left.basepoint, right.basepoint) {
            (Some(bl), Some(br)) => {
                Some(lookup[&(Simplex::nondeg(bl), Simplex::nondeg(br))])
            }
            _ => None,
        };
        let total = SimplicialSet::build(
            &format!("({}x{})", left.name, right.name),
            cells,
            faces,
            basepoint,
        )
        .expect("product of valid complexes is valid");
        let pr1_flat = pairs.iter().flatten().map(|(a, _)| a.clone()).collect();
        let pr2_flat = pairs.iter().flatten().map(|(_, b)| b.clone()).collect();
        let pr1 = SimplicialMap::new("pr1", &total, left, pr1_flat);
        let pr2 = SimplicialMap::new("pr2", &total, right, pr2_flat);
        Product {
            total,
            left: left.clone(),
            right: right.clone(),
            pr1,
            pr2,
            pairs,
            lookup,
        }
    }

    pub fn cell_of_pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
        let (w, nd) = factor_pair(&self.left, &self.right, a, b);
        let cell = *self.lookup.get(&nd).expect("pair not found in product");
        Simplex { word: w, cell }
    }

    pub fn components(&self, c: CellId) -> &(Simplex, Simplex) {
        &self.pairs[c.0][c.1]
    }

    /// Universal property: the map (f, g): Z -> X x Y.
    pub fn pairing(&self, name: &str, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        assert!(std::rc::Rc::ptr_eq(&f.source, &g.source));
        let flat = f
            .source
            .all_cells()
            .map(|c| {
                let s = Simplex::nondeg(c);
                self.cell_of_pair(&f.apply(&s), &g.apply(&s))
            })
            .collect();
        SimplicialMap::new(name, &f.source, &self.total, flat)
    }
}

/// X x X with the diagonal map.
pub fn diagonal(x: &Complex) -> (Product, SimplicialMap) {
    let p = Product::new(x, x);
    let id = SimplicialMap::identity(x);
    let d = p.pairing("diagonal", &id, &id);
    (p, d)
}

/// The twist map X x Y -> Y x X.
pub fn twist(xy: &Product, yx: &Product) -> SimplicialMap {
    yx.pairing("twist", &xy.pr2, &xy.pr1)
}

/// Interval x X with the two end inclusions and the projection.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub prod: Product,
    pub i0: SimplicialMap,
    pub i1: SimplicialMap,
}

pub fn cylinder(x: &Complex) -> Cylinder {
    let i = super::builtins::interval();
    let prod = Product::new(&i, x);
    let id = SimplicialMap::identity(x);
    let c0 = SimplicialMap::constant(x, &i, (0, 0));
    let c1 = SimplicialMap::constant(x, &i, (0, 1));
    let i0 = prod.pairing("i0", &c0, &id);
    let i1 = prod.pairing("i1", &c1, &id);
    Cylinder { prod, i0, i1 }
}

/// Circle x X together with the basepoint slice inclusion X -> S^1 x X.
#[derive(Clone, Debug)]
pub struct CircleProduct {
    pub prod: Product,
    pub slice: SimplicialMap,
    pub pair: super::SimplicialPair,
}

pub fn circle_product(x: &Complex) -> CircleProduct {
    let s1 = super::builtins::circle();
    let prod = Product::new(&s1, x);
    let id = SimplicialMap::identity(x);
    let c = SimplicialMap::constant(x, &s1, (0, 0));
    let slice = prod.pairing("slice", &c, &id);
    let pair = super::SimplicialPair::new(slice.clone()).unwrap();
    CircleProduct { prod, slice, pair }
}

#[cfg(test)]
mod tests {
    use super::super::builtins;
    use super::*;

    #[test]
    fn square_cell_counts() {
        // Delta^1 x Delta^1: 4 vertices, 5 edges, 2 triangles
        let i = builtins::interval();
        let p = Product::new(&i, &i);
        assert_eq!(p.total.cell_count(0), 4);
        assert_eq!(p.total.cell_count(1), 5);
        assert_eq!(p.total.cell_count(2), 2);
        p.pr1.validate().unwrap();
        p.pr2.validate().unwrap();
    }

    #[test]
    fn torus_cell_counts() {
        let t = builtins::torus();
        assert_eq!(t.total.cell_count(0), 1);
        assert_eq!(t.total.cell_count(1), 3); // e x sv, sv x e, e x e
        assert_eq!(t.total.cell_count(2), 2);
        t.pr1.validate().unwrap();
        t.pr2.validate().unwrap();
    }

    #[test]
    fn diagonal_and_twist_are_simplicial() {
        let c = builtins::circle();
        let (p, d) = diagonal(&c);
        d.validate().unwrap();
        let q = Product::new(&c, &c);
        let tw = twist(&p, &q);
        tw.validate().unwrap();
    }

    #[test]
    fn cylinder_inclusions() {
        let x = builtins::rp2();
        let cyl = cylinder(&x);
        cyl.i0.validate().unwrap();
        cyl.i1.validate().unwrap();
        // pr2 . i0 = id
        let comp = cyl.i0.compose(&cyl.prod.pr2);
        for c in x.all_cells() {
            assert_eq!(comp.apply(&Simplex::nondeg(c)), Simplex::nondeg(c));
        }
    }

    #[test]
    fn triple_product_associates_by_pairing() {
        // (S1 x S1) x S1 vs S1 x (S1 x S1): compare via the associator map
        let c = builtins::circle();
        let t = builtins::torus();
        let left = Product::new(&t.total, &c);
        let inner = Product::new(&c, &c);
        let right = Product::new(&c, &inner.total);
        // associator right -> left
        let f1 = right.pr1.clone();
        let f2 = right.pr2.compose(&inner.pr1);
        let f3 = right.pr2.compose(&inner.pr2);
        let into_t = t.pairing("a12", &f1, &f2);
        let assoc = left.pairing("assoc", &into_t, &f3);
        assoc.validate().unwrap();
        for d in 0..=3 {
            assert_eq!(left.total.cell_count(d), right.total.cell_count(d));
        }
    }
}
