//! Stock complexes used throughout the test suites.

use super::map::SimplicialMap;
use super::product::Product;
use super::{Complex, Simplex, SimplicialPair, SimplicialSet};
use itertools::Itertools;

pub fn empty() -> Complex {
    SimplicialSet::build("empty", vec![vec![]], vec![vec![]], None).unwrap()
}

pub fn point() -> Complex {
    SimplicialSet::build("point", vec![vec!["*".into()]], vec![vec![]], Some((0, 0)))
        .unwrap()
}

fn subset_name(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).join("")
}

/// The standard n-simplex: nondegenerate cells are the nonempty subsets of
/// {0,...,n}, named by their vertex lists ("0", "02", "012", ...).
pub fn standard_simplex(n: usize) -> Complex {
    simplex_like(&format!("simplex{}", n), n, true)
}

fn simplex_like(name: &str, n: usize, include_top: bool) -> Complex {
    let mut cells: Vec<Vec<String>> = vec![vec![]; n + 1];
    let mut subsets: Vec<Vec<Vec<usize>>> = vec![vec![]; n + 1];
    for d in 0..=n {
        if d == n && !include_top {
            continue;
        }
        for comb in (0..=n).combinations(d + 1) {
            cells[d].push(subset_name(&comb));
            subsets[d].push(comb);
        }
    }
    let lookup: std::collections::HashMap<String, (usize, usize)> = cells
        .iter()
        .enumerate()
        .flat_map(|(d, v)| {
            v.iter()
                .enumerate()
                .map(move |(i, n)| (n.clone(), (d, i)))
        })
        .collect();
    let mut faces: Vec<Vec<Vec<Simplex>>> = (0..=n).map(|d| vec![vec![]; cells[d].len()]).collect();
    for d in 1..=n {
        for (i, sub) in subsets[d].iter().enumerate() {
            let mut fs = vec![];
            for omit in 0..=d {
                let mut f = sub.clone();
                f.remove(omit);
                fs.push(Simplex::nondeg(lookup[&subset_name(&f)]));
            }
            faces[d][i] = fs;
        }
    }
    SimplicialSet::build(name, cells, faces, Some((0, 0))).unwrap()
}

/// Boundary of the standard n-simplex.
pub fn boundary(n: usize) -> Complex {
    assert!(n >= 1);
    simplex_like(&format!("boundary{}", n), n, false)
}

/// The pair (Delta^n, boundary).
pub fn simplex_boundary_pair(n: usize) -> SimplicialPair {
    let total = standard_simplex(n);
    let sub = boundary(n);
    let images = sub
        .all_cells()
        .map(|c| Simplex::nondeg(total.cell_by_name(sub.cell_name(c)).unwrap()))
        .collect();
    let incl = SimplicialMap::new("boundary-incl", &sub, &total, images);
    SimplicialPair::new(incl).unwrap()
}

/// The interval as the standard 1-simplex with vertices v0, v1 and edge e.
pub fn interval() -> Complex {
    SimplicialSet::build(
        "interval",
        vec![vec!["v0".into(), "v1".into()], vec!["e".into()]],
        vec![
            vec![vec![], vec![]],
            vec![vec![Simplex::nondeg((0, 1)), Simplex::nondeg((0, 0))]],
        ],
        Some((0, 0)),
    )
    .unwrap()
}

/// Minimal circle: one vertex, one edge.
pub fn circle() -> Complex {
    SimplicialSet::build(
        "circle",
        vec![vec!["v".into()], vec!["e".into()]],
        vec![
            vec![vec![]],
            vec![vec![Simplex::nondeg((0, 0)), Simplex::nondeg((0, 0))]],
        ],
        Some((0, 0)),
    )
    .unwrap()
}

/// Quotient map interval -> circle collapsing both endpoints.
pub fn interval_to_circle(i: &Complex, s1: &Complex) -> SimplicialMap {
    let v = Simplex::nondeg((0, 0));
    let e = Simplex::nondeg((1, 0));
    SimplicialMap::new("quotient", i, s1, vec![v.clone(), v, e])
}

/// Real projective plane, classical two-triangle presentation:
/// vertices v, w; edges a, b: v->w and c: v->v; triangles
/// U with (d0,d1,d2) = (b,a,c) and L with (d0,d1,d2) = (a,b,c).
pub fn rp2() -> Complex {
    let v = Simplex::nondeg((0, 0));
    let w = Simplex::nondeg((0, 1));
    let a = Simplex::nondeg((1, 0));
    let b = Simplex::nondeg((1, 1));
    let c = Simplex::nondeg((1, 2));
    SimplicialSet::build(
        "rp2",
        vec![
            vec!["v".into(), "w".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec!["U".into(), "L".into()],
        ],
        vec![
            vec![vec![], vec![]],
            vec![
                vec![w.clone(), v.clone()],
                vec![w.clone(), v.clone()],
                vec![v.clone(), v.clone()],
            ],
            vec![vec![b.clone(), a.clone(), c.clone()], vec![a, b, c]],
        ],
        Some((0, 0)),
    )
    .unwrap()
}

/// Klein bottle on one vertex: loops a, b, c; triangles
/// U with (d0,d1,d2) = (b,a,c) and L with (d0,d1,d2) = (a,b,c).
pub fn klein() -> Complex {
    let v = Simplex::nondeg((0, 0));
    let a = Simplex::nondeg((1, 0));
    let b = Simplex::nondeg((1, 1));
    let c = Simplex::nondeg((1, 2));
    SimplicialSet::build(
        "klein",
        vec![
            vec!["v".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec!["U".into(), "L".into()],
        ],
        vec![
            vec![vec![]],
            vec![
                vec![v.clone(), v.clone()],
                vec![v.clone(), v.clone()],
                vec![v.clone(), v.clone()],
            ],
            vec![vec![b.clone(), a.clone(), c.clone()], vec![a, b, c]],
        ],
        Some((0, 0)),
    )
    .unwrap()
}

/// Minimal torus: the product of two minimal circles.
pub fn torus() -> Product {
    Product::new(&circle(), &circle())
}
