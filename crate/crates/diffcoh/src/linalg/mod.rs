//! Exact linear algebra over Z and Q.
//!
//! Everything here is dense `Vec<Vec<_>>` with arbitrary precision entries;
//! the matrices coming out of finite simplicial sets are small enough that
//! careful pivoting matters more than sparsity.

pub mod snf;
pub mod solve;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Dense matrix over a ring; rows indexed first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<T>>,
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, a: vec![vec![T::zero(); cols]; rows] }
    }

    pub fn from_rows(a: Vec<Vec<T>>) -> Self {
        let rows = a.len();
        let cols = a.first().map(|r| r.len()).unwrap_or(0);
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat { rows, cols, a }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.a[j][i] = self.a[i][j].clone();
            }
        }
        t
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.a[i][j].clone()).collect()
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::AddAssign,
{
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.a[i][i] = T::one();
        }
        m
    }

    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.a[k][j].is_zero() {
                        continue;
                    }
                    let p = self.a[i][k].clone() * other.a[k][j].clone();
                    out.a[i][j] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.a[i][j].is_zero() || v[j].is_zero() {
                    continue;
                }
                let p = self.a[i][j].clone() * v[j].clone();
                out[i] += p;
            }
        }
        out
    }
}

pub type IMat = Mat<Int>;
pub type QMat = Mat<Rat>;

impl IMat {
    pub fn to_rational(&self) -> QMat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self
                .a
                .iter()
                .map(|r| r.iter().map(rat_int).collect())
                .collect(),
        }
    }
}

/// Finitely generated abelian group in invariant factor form:
/// Z^rank (+) Z/d_1 (+) ... with 1 < d_1 | d_2 | ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = vec![];
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Quotient L/M where L = Z^n and M is spanned by the columns of `sub`.
pub fn quotient_group(n: usize, sub: &IMat) -> AbelianGroup {
    assert_eq!(sub.rows, n);
    let s = snf::smith(sub);
    let mut torsion = vec![];
    let mut nonzero = 0usize;
    for d in &s.diag {
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if d.abs() > Int::one() {
            torsion.push(d.abs());
        }
    }
    AbelianGroup { rank: n - nonzero, torsion }
}

pub fn gcd_int(a: &Int, b: &Int) -> Int {
    num_integer::Integer::gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_diag_2_3() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 in invariant factor form
        let sub = Mat::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(3)]]);
        let g = quotient_group(2, &sub);
        assert_eq!(g.rank, 0);
        assert_eq!(g.torsion, vec![int(6)]);
    }
}
