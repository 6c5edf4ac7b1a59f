//! Smith normal form with unimodular transforms.

use super::{IMat, Int, Mat};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Smith {
    /// Invariant factors (possibly with trailing zeros), d_1 | d_2 | ...
    pub diag: Vec<Int>,
    /// Row transform, rows x rows, unimodular.
    pub u: IMat,
    /// Column transform, cols x cols, unimodular.
    pub v: IMat,
    pub rank: usize,
}

/// Compute U * A * V = D with D diagonal in invariant factor form.
///
/// Pivot selection: smallest nonzero absolute value in the remaining block,
/// which keeps entry growth manageable on the incidence matrices we feed it.
pub fn smith(a0: &IMat) -> Smith {
    let mut a = a0.clone();
    let rows = a.rows;
    let cols = a.cols;
    let mut u = Mat::<Int>::identity(rows);
    let mut v = Mat::<Int>::identity(cols);

    let n = rows.min(cols);
    let mut t = 0usize;
    while t < n {
        // locate minimal nonzero pivot in the block starting at (t, t)
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a.a[i][j].is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if a.a[i][j].abs() < a.a[*pi][*pj].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        // clear row and column t; pivot may need re-selection after updates
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a.a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a.a[i][t], &a.a[t][t]);
                if !q.is_zero() {
                    row_axpy(&mut a, &mut u, i, t, &-q);
                }
                if !a.a[i][t].is_zero() {
                    // remainder smaller than pivot: swap up and restart
                    swap_rows(&mut a, &mut u, t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a.a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a.a[t][j], &a.a[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut a, &mut v, j, t, &-q);
                }
                if !a.a[t][j].is_zero() {
                    swap_cols(&mut a, &mut v, t, j);
                    done = false;
                }
            }
            if done
                && (t + 1..rows).all(|i| a.a[i][t].is_zero())
                && (t + 1..cols).all(|j| a.a[t][j].is_zero())
            {
                break;
            }
        }

        // enforce divisibility: if some entry in the remaining block is not
        // divisible by the pivot, fold its row in and redo this step
        let mut redo = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a.a[i][j] % &a.a[t][t]).is_zero() {
                    row_axpy(&mut a, &mut u, t, i, &Int::one());
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }
        if a.a[t][t].is_negative() {
            negate_row(&mut a, &mut u, t);
        }
        t += 1;
    }

    let mut diag = vec![Int::zero(); n];
    let mut rank = 0;
    for i in 0..n {
        diag[i] = a.a[i][i].clone();
        if !diag[i].is_zero() {
            rank = i + 1;
        }
    }
    Smith { diag, u, v, rank }
}

fn swap_rows(a: &mut IMat, u: &mut IMat, i: usize, j: usize) {
    if i != j {
        a.a.swap(i, j);
        u.a.swap(i, j);
    }
}

fn swap_cols(a: &mut IMat, v: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in &mut a.a {
        r.swap(i, j);
    }
    for r in &mut v.a {
        r.swap(i, j);
    }
}

/// row_i += q * row_j (in A and U)
fn row_axpy(a: &mut IMat, u: &mut IMat, i: usize, j: usize, q: &Int) {
    for c in 0..a.cols {
        let add = q * &a.a[j][c];
        a.a[i][c] += add;
    }
    for c in 0..u.cols {
        let add = q * &u.a[j][c];
        u.a[i][c] += add;
    }
}

/// col_i += q * col_j (in A and V)
fn col_axpy(a: &mut IMat, v: &mut IMat, i: usize, j: usize, q: &Int) {
    for r in 0..a.rows {
        let add = q * &a.a[r][j];
        a.a[r][i] += add;
    }
    for r in 0..v.rows {
        let add = q * &v.a[r][j];
        v.a[r][i] += add;
    }
}

fn negate_row(a: &mut IMat, u: &mut IMat, i: usize) {
    for c in 0..a.cols {
        let x = -a.a[i][c].clone();
        a.a[i][c] = x;
    }
    for c in 0..u.cols {
        let x = -u.a[i][c].clone();
        u.a[i][c] = x;
    }
}

/// Round-to-nearest integer division, which makes remainders small.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = Int::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - Int::one()
        } else {
            q + Int::one()
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn check(a: &IMat) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i == j && i < s.diag.len() {
                    assert_eq!(d.a[i][j], s.diag[i]);
                } else {
                    assert!(d.a[i][j].is_zero(), "off-diagonal at ({i},{j})");
                }
            }
        }
        for i in 0..s.diag.len().saturating_sub(1) {
            if !s.diag[i].is_zero() && !s.diag[i + 1].is_zero() {
                assert!((&s.diag[i + 1] % &s.diag[i]).is_zero(), "divisibility");
            }
            if s.diag[i].is_zero() {
                assert!(s.diag[i + 1].is_zero());
            }
        }
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let a = Mat::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(3)]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![int(1), int(6)]);
        check(&a);
    }

    #[test]
    fn random_matrices_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let a = Mat::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| int(rng.gen_range(-9..10))).collect())
                    .collect(),
            );
            check(&a);
        }
    }

    #[test]
    fn known_rank_deficient() {
        // rows generate the same line: rank 1, d1 = gcd
        let a = Mat::from_rows(vec![vec![int(4), int(6)], vec![int(6), int(9)]]);
        let s = smith(&a);
        assert_eq!(s.rank, 1);
        assert_eq!(s.diag[0], int(1));
        assert_eq!(s.diag[1], int(0));
        check(&a);
    }
}
