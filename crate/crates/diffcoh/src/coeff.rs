//! Graded coefficient rings: a finitely generated graded commutative ring
//! Lambda whose rationalization V = Lambda (x) Q is concentrated in even
//! degrees, together with the map rho: Lambda -> V killing torsion.

use crate::linalg::{Int, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoeffError {
    #[error("free generator `{0}` has odd degree {1}; rationalization must be even")]
    OddFree(String, usize),
    #[error("product table not graded commutative on `{0}` * `{1}`")]
    NotCommutative(String, String),
    #[error("product table not associative on `{0}`, `{1}`, `{2}`")]
    NotAssociative(String, String, String),
    #[error("unit law fails on generator `{0}`")]
    Unit(String),
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    /// None for a free (infinite order) generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

pub type Ring = Rc<GradedRing>;

#[derive(Debug)]
pub struct GradedRing {
    pub name: String,
    pub gens: Vec<Generator>,
    pub by_degree: BTreeMap<usize, Vec<usize>>,
    pub free_by_degree: BTreeMap<usize, Vec<usize>>,
    products: HashMap<(usize, usize), Vec<(usize, Int)>>,
    pub unit: usize,
}

impl GradedRing {
    pub fn new(
        name: &str,
        gens: Vec<Generator>,
        products: HashMap<(usize, usize), Vec<(usize, Int)>>,
        unit: usize,
    ) -> Result<Ring, CoeffError> {
        let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut free_by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            by_degree.entry(g.degree).or_default().push(i);
            if g.order.is_none() {
                if g.degree % 2 == 1 {
                    return Err(CoeffError::OddFree(g.name.clone(), g.degree));
                }
                free_by_degree.entry(g.degree).or_default().push(i);
            }
        }
        let ring = GradedRing {
            name: name.to_string(),
            gens,
            by_degree,
            free_by_degree,
            products,
            unit,
        };
        ring.validate()?;
        Ok(Rc::new(ring))
    }

    fn gen_value(&self, i: usize) -> LValue {
        let mut coords = BTreeMap::new();
        coords.insert(i, Int::one());
        LValue { degree: self.gens[i].degree, coords }
    }

    fn validate(&self) -> Result<(), CoeffError> {
        let u = self.gen_value(self.unit);
        if self.gens[self.unit].degree != 0 || self.gens[self.unit].order.is_some() {
            return Err(CoeffError::Unit(self.gens[self.unit].name.clone()));
        }
        for i in 0..self.gens.len() {
            let gi = self.gen_value(i);
            if self.mul(&u, &gi) != gi || self.mul(&gi, &u) != gi {
                return Err(CoeffError::Unit(self.gens[i].name.clone()));
            }
            for j in 0..self.gens.len() {
                let gj = self.gen_value(j);
                let ij = self.mul(&gi, &gj);
                let mut ji = self.mul(&gj, &gi);
                if (self.gens[i].degree * self.gens[j].degree) % 2 == 1 {
                    ji = ji.neg(self);
                }
                if ij != ji {
                    return Err(CoeffError::NotCommutative(
                        self.gens[i].name.clone(),
                        self.gens[j].name.clone(),
                    ));
                }
                for k in 0..self.gens.len() {
                    let gk = self.gen_value(k);
                    let a = self.mul(&self.mul(&gi, &gj), &gk);
                    let b = self.mul(&gi, &self.mul(&gj, &gk));
                    if a != b {
                        return Err(CoeffError::NotAssociative(
                            self.gens[i].name.clone(),
                            self.gens[j].name.clone(),
                            self.gens[k].name.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gen_by_name(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn lambda_gens(&self, degree: usize) -> &[usize] {
        self.by_degree.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn v_gens(&self, degree: usize) -> &[usize] {
        self.free_by_degree
            .get(&degree)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.keys().copied().max().unwrap_or(0)
    }

    pub fn zero_l(&self, degree: usize) -> LValue {
        LValue { degree, coords: BTreeMap::new() }
    }

    pub fn zero_q(&self, degree: usize) -> QValue {
        QValue { degree, coords: BTreeMap::new() }
    }

    pub fn one_l(&self) -> LValue {
        self.gen_value(self.unit)
    }

    pub fn one_q(&self) -> QValue {
        self.rho(&self.one_l())
    }

    /// Reduce torsion coordinates mod their order, drop zeros.
    fn normalize(&self, v: &mut LValue) {
        v.coords.retain(|&g, c| {
            if let Some(q) = self.gens[g].order {
                let q = Int::from(q);
                *c = num_integer::Integer::mod_floor(&*c, &q);
            }
            !c.is_zero()
        });
    }

    pub fn mul(&self, a: &LValue, b: &LValue) -> LValue {
        let mut out = self.zero_l(a.degree + b.degree);
        for (&i, ci) in &a.coords {
            for (&j, cj) in &b.coords {
                if let Some(terms) = self.products.get(&(i, j)) {
                    for (k, c) in terms {
                        let add = ci * cj * c;
                        *out.coords.entry(*k).or_insert_with(Int::zero) += add;
                    }
                }
            }
        }
        self.normalize(&mut out);
        out
    }

    pub fn mul_q(&self, a: &QValue, b: &QValue) -> QValue {
        let mut out = self.zero_q(a.degree + b.degree);
        for (&i, ci) in &a.coords {
            for (&j, cj) in &b.coords {
                if let Some(terms) = self.products.get(&(i, j)) {
                    for (k, c) in terms {
                        if self.gens[*k].order.is_some() {
                            continue; // torsion dies rationally
                        }
                        let add = ci * cj * crate::linalg::rat_int(c);
                        *out.coords.entry(*k).or_insert_with(Rat::zero) += add;
                    }
                }
            }
        }
        out.coords.retain(|_, c| !c.is_zero());
        out
    }

    pub fn rho(&self, a: &LValue) -> QValue {
        let coords = a
            .coords
            .iter()
            .filter(|(g, _)| self.gens[**g].order.is_none())
            .map(|(&g, c)| (g, crate::linalg::rat_int(c)))
            .collect();
        QValue { degree: a.degree, coords }
    }

    pub fn add_l(&self, a: &LValue, b: &LValue) -> LValue {
        debug_assert_eq!(a.degree, b.degree);
        let mut out = a.clone();
        for (&g, c) in &b.coords {
            *out.coords.entry(g).or_insert_with(Int::zero) += c;
        }
        self.normalize(&mut out);
        out
    }

    /// Build a Lambda value from integer coordinates over lambda_gens(degree).
    pub fn l_from_coords(&self, degree: usize, coords: &[Int]) -> LValue {
        let gens = self.lambda_gens(degree);
        assert_eq!(gens.len(), coords.len());
        let mut v = LValue {
            degree,
            coords: gens
                .iter()
                .zip(coords)
                .map(|(&g, c)| (g, c.clone()))
                .collect(),
        };
        self.normalize(&mut v);
        v
    }

    pub fn q_from_coords(&self, degree: usize, coords: &[Rat]) -> QValue {
        let gens = self.v_gens(degree);
        assert_eq!(gens.len(), coords.len());
        QValue {
            degree,
            coords: gens
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&g, c)| (g, c.clone()))
                .collect(),
        }
    }

    pub fn l_coords(&self, v: &LValue) -> Vec<Int> {
        self.lambda_gens(v.degree)
            .iter()
            .map(|g| v.coords.get(g).cloned().unwrap_or_else(Int::zero))
            .collect()
    }

    pub fn q_coords(&self, v: &QValue) -> Vec<Rat> {
        self.v_gens(v.degree)
            .iter()
            .map(|g| v.coords.get(g).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }
}

/// Lambda-valued homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LValue {
    pub degree: usize,
    pub coords: BTreeMap<usize, Int>,
}

impl LValue {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn neg(&self, ring: &GradedRing) -> LValue {
        let mut out = LValue {
            degree: self.degree,
            coords: self.coords.iter().map(|(&g, c)| (g, -c.clone())).collect(),
        };
        ring.normalize(&mut out);
        out
    }

    pub fn scale(&self, ring: &GradedRing, k: &Int) -> LValue {
        let mut out = LValue {
            degree: self.degree,
            coords: self.coords.iter().map(|(&g, c)| (g, c * k)).collect(),
        };
        ring.normalize(&mut out);
        out
    }
}

/// V-valued (rational) homogeneous element, supported on free generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValue {
    pub degree: usize,
    pub coords: BTreeMap<usize, Rat>,
}

impl QValue {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn neg(&self) -> QValue {
        QValue {
            degree: self.degree,
            coords: self.coords.iter().map(|(&g, c)| (g, -c.clone())).collect(),
        }
    }

    pub fn add(&self, b: &QValue) -> QValue {
        debug_assert_eq!(self.degree, b.degree);
        let mut out = self.clone();
        for (&g, c) in &b.coords {
            *out.coords.entry(g).or_insert_with(Rat::zero) += c;
        }
        out.coords.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sub(&self, b: &QValue) -> QValue {
        self.add(&b.neg())
    }

    pub fn scale(&self, k: &Rat) -> QValue {
        if k.is_zero() {
            return QValue { degree: self.degree, coords: BTreeMap::new() };
        }
        QValue {
            degree: self.degree,
            coords: self.coords.iter().map(|(&g, c)| (g, c * k)).collect(),
        }
    }
}

/// The integers in degree zero.
pub fn integers() -> Ring {
    let gens = vec![Generator { name: "1".into(), degree: 0, order: None }];
    let mut products = HashMap::new();
    products.insert((0, 0), vec![(0, Int::one())]);
    GradedRing::new("Z", gens, products, 0).unwrap()
}

/// Truncated polynomial ring Z[u]/(u^{k+1}) with |u| = 2.
pub fn poly_even(k: usize) -> Ring {
    let gens: Vec<Generator> = (0..=k)
        .map(|i| Generator {
            name: if i == 0 { "1".into() } else { format!("u{}", i) },
            degree: 2 * i,
            order: None,
        })
        .collect();
    let mut products = HashMap::new();
    for i in 0..=k {
        for j in 0..=k {
            if i + j <= k {
                products.insert((i, j), vec![(i + j, Int::one())]);
            } else {
                products.insert((i, j), vec![]);
            }
        }
    }
    GradedRing::new(&format!("Z[u]/u^{}", k + 1), gens, products, 0).unwrap()
}

/// Z (+) Z/2 with the torsion generator t in degree 1 and t*t = 0:
/// rationally even, but with odd integral torsion.
pub fn integers_with_odd_torsion() -> Ring {
    let gens = vec![
        Generator { name: "1".into(), degree: 0, order: None },
        Generator { name: "t".into(), degree: 1, order: Some(2) },
    ];
    let mut products = HashMap::new();
    products.insert((0, 0), vec![(0, Int::one())]);
    products.insert((0, 1), vec![(1, Int::one())]);
    products.insert((1, 0), vec![(1, Int::one())]);
    products.insert((1, 1), vec![]);
    GradedRing::new("Z+Z/2t", gens, products, 0).unwrap()
}

/// Serializable ring description for job files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub generators: Vec<Generator>,
    /// products["a*b"] = [[gen, coefficient], ...]
    #[serde(default)]
    pub products: BTreeMap<String, Vec<(String, i64)>>,
    pub unit: String,
}

impl RingSpec {
    pub fn to_ring(&self) -> Result<Ring, CoeffError> {
        let index = |n: &str| {
            self.generators
                .iter()
                .position(|g| g.name == n)
                .ok_or_else(|| CoeffError::Unknown(n.to_string()))
        };
        let mut products = HashMap::new();
        for (key, terms) in &self.products {
            let (a, b) = key
                .split_once('*')
                .ok_or_else(|| CoeffError::Other(format!("bad product key `{}`", key)))?;
            let mut list = vec![];
            for (g, c) in terms {
                list.push((index(g)?, Int::from(*c)));
            }
            products.insert((index(a.trim())?, index(b.trim())?), list);
        }
        GradedRing::new(&self.name, self.generators.clone(), products, index(&self.unit)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn integers_arithmetic() {
        let r = integers();
        let two = r.l_from_coords(0, &[int(2)]);
        let three = r.l_from_coords(0, &[int(3)]);
        assert_eq!(r.mul(&two, &three), r.l_from_coords(0, &[int(6)]));
        assert_eq!(r.rho(&two), r.q_from_coords(0, &[rat(2, 1)]));
    }

    #[test]
    fn truncation_kills_high_powers() {
        let r = poly_even(2);
        let u = r.l_from_coords(2, &[int(1)]);
        let u2 = r.mul(&u, &u);
        assert_eq!(u2.degree, 4);
        assert!(!u2.is_zero());
        let u3 = r.mul(&u2, &u);
        assert!(u3.is_zero());
    }

    #[test]
    fn torsion_reduces_and_dies_rationally() {
        let r = integers_with_odd_torsion();
        let t = r.l_from_coords(1, &[int(1)]);
        let t2 = r.add_l(&t, &t);
        assert!(t2.is_zero());
        assert!(r.rho(&t).is_zero());
        assert!(r.mul(&t, &t).is_zero());
    }
}
