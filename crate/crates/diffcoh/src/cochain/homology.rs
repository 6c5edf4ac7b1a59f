//! Cohomology of the normalized cochain complex, absolute and relative,
//! with coefficients in any summand of a graded ring.

use crate::coeff::Ring;
use crate::linalg::solve::{from_columns, hstack, kernel_z, subquotient};
use crate::linalg::{AbelianGroup, IMat, Int, Mat};
use crate::simplicial::{CellId, Complex, Simplex};
use num_traits::{One};
use std::collections::BTreeSet;

fn kept_cells(base: &Complex, exclude: &BTreeSet<CellId>, dim: usize) -> Vec<CellId> {
    base.cells_of_dim(dim).filter(|c| !exclude.contains(c)).collect()
}

/// Matrix of the coboundary C^k -> C^{k+1} on cells outside `exclude`.
pub fn coboundary_matrix(base: &Complex, exclude: &BTreeSet<CellId>, k: usize) -> IMat {
    let cols_cells = kept_cells(base, exclude, k);
    let rows_cells = kept_cells(base, exclude, k + 1);
    let col_index: std::collections::HashMap<CellId, usize> =
        cols_cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m = Mat::<Int>::zero(rows_cells.len(), cols_cells.len());
    for (r, &cell) in rows_cells.iter().enumerate() {
        let s = Simplex::nondeg(cell);
        for i in 0..=k + 1 {
            let f = base.face(&s, i);
            if f.is_degenerate() {
                continue;
            }
            if let Some(&c) = col_index.get(&f.cell) {
                if i % 2 == 0 {
                    m.a[r][c] += Int::one();
                } else {
                    m.a[r][c] -= Int::one();
                }
            }
        }
    }
    m
}

/// H^k with integer coefficients.
pub fn cohomology_z(base: &Complex, exclude: &BTreeSet<CellId>, k: usize) -> AbelianGroup {
    let n = kept_cells(base, exclude, k).len();
    if n == 0 {
        return AbelianGroup::trivial();
    }
    let dk = coboundary_matrix(base, exclude, k);
    let cocycles = if dk.rows == 0 {
        Mat::identity(n)
    } else {
        kernel_z(&dk)
    };
    let image = if k == 0 {
        Mat::zero(n, 0)
    } else {
        coboundary_matrix(base, exclude, k - 1)
    };
    subquotient(&cocycles, &image)
}

/// H^k with Z/q coefficients.
pub fn cohomology_mod(
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    k: usize,
    q: &Int,
) -> AbelianGroup {
    let n = kept_cells(base, exclude, k).len();
    if n == 0 {
        return AbelianGroup::trivial();
    }
    let dk = coboundary_matrix(base, exclude, k);
    // mod-q cocycles: x with dk x = q y, as the x-projection of an integer kernel
    let cocycles = if dk.rows == 0 {
        Mat::identity(n)
    } else {
        let mut aug = Mat::<Int>::zero(dk.rows, dk.cols + dk.rows);
        for i in 0..dk.rows {
            for j in 0..dk.cols {
                aug.a[i][j] = dk.a[i][j].clone();
            }
            aug.a[i][dk.cols + i] = -q.clone();
        }
        let ker = kernel_z(&aug);
        let cols: Vec<Vec<Int>> = (0..ker.cols)
            .map(|j| ker.column(j)[..n].to_vec())
            .collect();
        from_columns(n, cols)
    };
    let prev = if k == 0 {
        Mat::zero(n, 0)
    } else {
        coboundary_matrix(base, exclude, k - 1)
    };
    let mut qid = Mat::<Int>::zero(n, n);
    for i in 0..n {
        qid.a[i][i] = q.clone();
    }
    subquotient(&cocycles, &hstack(&prev, &qid))
}

/// Invariant-factor normal form of a direct sum.
pub fn direct_sum(groups: &[AbelianGroup]) -> AbelianGroup {
    let rank = groups.iter().map(|g| g.rank).sum();
    let torsion: Vec<Int> = groups.iter().flat_map(|g| g.torsion.clone()).collect();
    if torsion.is_empty() {
        return AbelianGroup { rank, torsion };
    }
    let n = torsion.len();
    let mut rel = Mat::<Int>::zero(n, n);
    for (i, t) in torsion.iter().enumerate() {
        rel.a[i][i] = t.clone();
    }
    let mut g = crate::linalg::quotient_group(n, &rel);
    g.rank += rank;
    g
}

/// Total-degree-n cohomology with coefficients in the graded ring:
/// the sum over generators g of H^{n-|g|} with Z or Z/ord(g) coefficients.
pub fn cohomology(
    base: &Complex,
    exclude: &BTreeSet<CellId>,
    ring: &Ring,
    n: usize,
) -> AbelianGroup {
    let mut parts = vec![];
    for g in &ring.gens {
        let Some(k) = n.checked_sub(g.degree) else { continue };
        match g.order {
            None => parts.push(cohomology_z(base, exclude, k)),
            Some(q) => parts.push(cohomology_mod(base, exclude, k, &Int::from(q))),
        }
    }
    direct_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::linalg::int;
    use crate::simplicial::builtins;

    fn h(base: &Complex, k: usize) -> AbelianGroup {
        cohomology_z(base, &BTreeSet::new(), k)
    }

    #[test]
    fn circle_cohomology() {
        let c = builtins::circle();
        assert_eq!(h(&c, 0), AbelianGroup { rank: 1, torsion: vec![] });
        assert_eq!(h(&c, 1), AbelianGroup { rank: 1, torsion: vec![] });
    }

    #[test]
    fn rp2_cohomology() {
        let x = builtins::rp2();
        assert_eq!(h(&x, 0), AbelianGroup { rank: 1, torsion: vec![] });
        assert_eq!(h(&x, 1), AbelianGroup::trivial());
        assert_eq!(h(&x, 2), AbelianGroup { rank: 0, torsion: vec![int(2)] });
        // with Z/2 coefficients every degree is Z/2
        for k in 0..=2 {
            assert_eq!(
                cohomology_mod(&x, &BTreeSet::new(), k, &int(2)),
                AbelianGroup { rank: 0, torsion: vec![int(2)] }
            );
        }
    }

    #[test]
    fn torus_and_klein_cohomology() {
        let t = builtins::torus().total;
        assert_eq!(h(&t, 0), AbelianGroup { rank: 1, torsion: vec![] });
        assert_eq!(h(&t, 1), AbelianGroup { rank: 2, torsion: vec![] });
        assert_eq!(h(&t, 2), AbelianGroup { rank: 1, torsion: vec![] });
        let k = builtins::klein();
        assert_eq!(h(&k, 1), AbelianGroup { rank: 1, torsion: vec![] });
        assert_eq!(h(&k, 2), AbelianGroup { rank: 0, torsion: vec![int(2)] });
    }

    #[test]
    fn relative_disk_boundary() {
        // H^k(D^2, S^1) = Z for k = 2, else 0
        let pair = builtins::simplex_boundary_pair(2);
        let h2 = cohomology_z(&pair.space, &pair.sub_cells, 2);
        assert_eq!(h2, AbelianGroup { rank: 1, torsion: vec![] });
        for k in 0..2 {
            assert_eq!(
                cohomology_z(&pair.space, &pair.sub_cells, k),
                AbelianGroup::trivial()
            );
        }
    }

    #[test]
    fn graded_coefficients_shift_degrees() {
        // with Z[u]/u^2, H^2 of the circle picks up H^0 via the degree-2 part
        let r = coeff::poly_even(1);
        let c = builtins::circle();
        let g = cohomology(&c, &BTreeSet::new(), &r, 2);
        assert_eq!(g, AbelianGroup { rank: 1, torsion: vec![] });
        let g3 = cohomology(&c, &BTreeSet::new(), &r, 3);
        assert_eq!(g3, AbelianGroup { rank: 1, torsion: vec![] });
    }
}
