//! Finite simplicial sets with explicit degeneracies.
//!
//! A simplex is stored in Eilenberg-Zilber normal form: a strictly
//! decreasing degeneracy word applied to a nondegenerate cell. Face and
//! degeneracy operators push through the word using the simplicial
//! identities, so only nondegenerate cells and their faces are stored.

pub mod builtins;
pub mod map;
pub mod product;

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use thiserror::Error;

/// (dimension, index) of a nondegenerate cell.
pub type CellId = (usize, usize);

pub type Complex = Rc<SimplicialSet>;

#[derive(Debug, Error)]
pub enum SimplicialError {
    #[error("unknown cell name `{0}`")]
    UnknownCell(String),
    #[error("cell `{0}` of dimension {1} must list {2} faces, found {3}")]
    FaceCount(String, usize, usize, usize),
    #[error("face {1} of cell `{0}` has dimension {2}, expected {3}")]
    FaceDim(String, usize, usize, usize),
    #[error("simplicial identity d_{1} d_{2} = d_{2}-1 d_{1} fails on cell `{0}`")]
    Identity(String, usize, usize),
    #[error("duplicate cell name `{0}`")]
    DuplicateName(String),
    #[error("basepoint `{0}` is not a vertex")]
    Basepoint(String),
    #[error("invalid degeneracy word `{0}`")]
    BadWord(String),
    #[error("map is not simplicial on cell {0:?}, face {1}")]
    NotSimplicial(CellId, usize),
    #[error("{0}")]
    Other(String),
}

/// A (possibly degenerate) simplex: `word` is strictly decreasing, read as
/// s_{word[0]} ∘ s_{word[1]} ∘ ... applied to the nondegenerate `cell`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub word: Vec<usize>,
    pub cell: CellId,
}

impl Simplex {
    pub fn nondeg(cell: CellId) -> Self {
        Simplex { word: vec![], cell }
    }

    pub fn dim(&self) -> usize {
        self.cell.0 + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.word {
            write!(f, "s{}", i)?;
        }
        write!(f, "({},{})", self.cell.0, self.cell.1)
    }
}

/// Insert the degeneracy s_a as the outermost operator into a normal-form
/// word, restoring normal form via s_a s_j = s_{j+1} s_a for a <= j.
pub fn word_insert(word: &[usize], a: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut placed = false;
    for &j in word {
        if !placed {
            if a > j {
                out.push(a);
                out.push(j);
                placed = true;
            } else {
                out.push(j + 1);
            }
        } else {
            out.push(j);
        }
    }
    if !placed {
        out.push(a);
    }
    out
}

/// Push the face d_a through a normal-form degeneracy word. Returns the
/// remaining face index to apply to the underlying cell (or `None` if the
/// face was absorbed by a degeneracy) together with the updated word.
pub fn face_through_word(word: &[usize], a: usize) -> (Option<usize>, Vec<usize>) {
    let mut out = Vec::with_capacity(word.len());
    let mut a = a;
    for (idx, &j) in word.iter().enumerate() {
        if a == j || a == j + 1 {
            out.extend_from_slice(&word[idx + 1..]);
            return (None, out);
        } else if a < j {
            out.push(j - 1);
        } else {
            out.push(j);
            a -= 1;
        }
    }
    (Some(a), out)
}

/// Compose two normal-form words, `outer` applied after `inner`.
pub fn word_compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    let mut w = inner.to_vec();
    for &a in outer.iter().rev() {
        w = word_insert(&w, a);
    }
    w
}

#[derive(Debug)]
pub struct SimplicialSet {
    pub name: String,
    /// Cell names per dimension.
    pub cells: Vec<Vec<String>>,
    cell_index: HashMap<String, CellId>,
    /// faces[dim][idx][i] = d_i of nondegenerate cell (dim, idx), dim >= 1.
    faces: Vec<Vec<Vec<Simplex>>>,
    pub basepoint: Option<CellId>,
}

impl SimplicialSet {
    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells.get(dim).map(|v| v.len()).unwrap_or(0)
    }

    pub fn cell_name(&self, id: CellId) -> &str {
        &self.cells[id.0][id.1]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        self.cell_index.get(name).copied()
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).flat_map(move |d| (0..self.cells[d].len()).map(move |i| (d, i)))
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cell_count(dim)).map(move |i| (dim, i))
    }

    /// Face d_i of an arbitrary simplex.
    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        debug_assert!(i <= s.dim() && s.dim() >= 1);
        let (rem, w) = face_through_word(&s.word, i);
        match rem {
            None => Simplex { word: w, cell: s.cell },
            Some(a) => {
                let f = &self.faces[s.cell.0][s.cell.1][a];
                Simplex { word: word_compose(&w, &f.word), cell: f.cell }
            }
        }
    }

    /// Degeneracy s_i of an arbitrary simplex.
    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Simplex {
        debug_assert!(i <= s.dim());
        Simplex { word: word_insert(&s.word, i), cell: s.cell }
    }

    /// The j-th vertex of a simplex, as a 0-cell.
    pub fn vertex(&self, s: &Simplex, j: usize) -> CellId {
        let mut cur = s.clone();
        for i in (j + 1..=s.dim()).rev() {
            cur = self.face(&cur, i);
        }
        for _ in 0..j {
            cur = self.face(&cur, 0);
        }
        debug_assert_eq!(cur.dim(), 0);
        cur.cell
    }

    /// Iterated face: restrict to the vertex subset `keep` (sorted).
    pub fn restrict(&self, s: &Simplex, keep: &[usize]) -> Simplex {
        let mut cur = s.clone();
        let mut removed = 0usize;
        let keep_set: Vec<bool> = {
            let mut v = vec![false; s.dim() + 1];
            for &k in keep {
                v[k] = true;
            }
            v
        };
        for j in (0..=s.dim()).rev() {
            if !keep_set[j] {
                cur = self.face(&cur, j);
                removed += 1;
            }
        }
        debug_assert_eq!(cur.dim() + removed, s.dim());
        cur
    }

    /// Front face spanned by vertices {0, ..., p}.
    pub fn front(&self, s: &Simplex, p: usize) -> Simplex {
        let mut cur = s.clone();
        for j in ((p + 1)..=s.dim()).rev() {
            cur = self.face(&cur, j);
        }
        cur
    }

    /// Back face spanned by the last q+1 vertices.
    pub fn back(&self, s: &Simplex, q: usize) -> Simplex {
        let mut cur = s.clone();
        for _ in 0..(s.dim() - q) {
            cur = self.face(&cur, 0);
        }
        cur
    }

    fn validate(&self) -> Result<(), SimplicialError> {
        for d in 1..self.cells.len() {
            for idx in 0..self.cells[d].len() {
                let name = &self.cells[d][idx];
                let fs = &self.faces[d][idx];
                if fs.len() != d + 1 {
                    return Err(SimplicialError::FaceCount(
                        name.clone(),
                        d,
                        d + 1,
                        fs.len(),
                    ));
                }
                for (i, f) in fs.iter().enumerate() {
                    if f.dim() + 1 != d {
                        return Err(SimplicialError::FaceDim(name.clone(), i, f.dim(), d - 1));
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j
        for d in 2..self.cells.len() {
            for idx in 0..self.cells[d].len() {
                let s = Simplex::nondeg((d, idx));
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(SimplicialError::Identity(
                                self.cells[d][idx].clone(),
                                i,
                                j,
                            ));
                        }
                    }
                }
            }
        }
        if let Some(bp) = self.basepoint {
            if bp.0 != 0 {
                return Err(SimplicialError::Basepoint(self.cell_name(bp).to_string()));
            }
        }
        Ok(())
    }

    pub fn from_presentation(p: &Presentation) -> Result<Complex, SimplicialError> {
        let max_dim = p.cells.keys().copied().max().unwrap_or(0);
        let mut cells: Vec<Vec<String>> = vec![vec![]; max_dim + 1];
        let mut cell_index = HashMap::new();
        for (&d, names) in &p.cells {
            for n in names {
                if cell_index.contains_key(n) {
                    return Err(SimplicialError::DuplicateName(n.clone()));
                }
                cell_index.insert(n.clone(), (d, cells[d].len()));
                cells[d].push(n.clone());
            }
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> =
            (0..=max_dim).map(|d| vec![vec![]; cells[d].len()]).collect();
        for (name, targets) in &p.faces {
            let &(d, idx) = cell_index
                .get(name)
                .ok_or_else(|| SimplicialError::UnknownCell(name.clone()))?;
            let mut fs = vec![];
            for t in targets {
                let cell = *cell_index
                    .get(&t.1)
                    .ok_or_else(|| SimplicialError::UnknownCell(t.1.clone()))?;
                let word = parse_word(&t.0)?;
                fs.push(Simplex { word, cell });
            }
            faces[d][idx] = fs;
        }
        let basepoint = match &p.basepoint {
            Some(n) => Some(
                *cell_index
                    .get(n)
                    .ok_or_else(|| SimplicialError::UnknownCell(n.clone()))?,
            ),
            None => None,
        };
        let x = SimplicialSet { name: p.name.clone(), cells, cell_index, faces, basepoint };
        x.validate()?;
        Ok(Rc::new(x))
    }

    pub fn to_presentation(&self) -> Presentation {
        let mut cells = BTreeMap::new();
        for (d, names) in self.cells.iter().enumerate() {
            if !names.is_empty() {
                cells.insert(d, names.clone());
            }
        }
        let mut faces = BTreeMap::new();
        for d in 1..self.cells.len() {
            for idx in 0..self.cells[d].len() {
                let list = self.faces[d][idx]
                    .iter()
                    .map(|f| {
                        (
                            f.word.iter().map(|i| format!("s{}", i)).collect::<String>(),
                            self.cell_name(f.cell).to_string(),
                        )
                    })
                    .collect();
                faces.insert(self.cells[d][idx].clone(), list);
            }
        }
        Presentation {
            name: self.name.clone(),
            cells,
            faces,
            basepoint: self.basepoint.map(|b| self.cell_name(b).to_string()),
        }
    }

    /// Build directly from structured data (used by generators).
    pub fn build(
        name: &str,
        cells: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<Simplex>>>,
        basepoint: Option<CellId>,
    ) -> Result<Complex, SimplicialError> {
        let mut cell_index = HashMap::new();
        for (d, names) in cells.iter().enumerate() {
            for (i, n) in names.iter().enumerate() {
                if cell_index.insert(n.clone(), (d, i)).is_some() {
                    return Err(SimplicialError::DuplicateName(n.clone()));
                }
            }
        }
        let x = SimplicialSet { name: name.to_string(), cells, cell_index, faces, basepoint };
        x.validate()?;
        Ok(Rc::new(x))
    }
}

fn parse_word(s: &str) -> Result<Vec<usize>, SimplicialError> {
    let mut out = vec![];
    let mut rest = s.trim();
    while !rest.is_empty() {
        let r = rest
            .strip_prefix('s')
            .ok_or_else(|| SimplicialError::BadWord(s.to_string()))?;
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(SimplicialError::BadWord(s.to_string()));
        }
        out.push(digits.parse().unwrap());
        rest = r[digits.len()..].trim_start();
    }
    // must be strictly decreasing normal form
    if out.windows(2).any(|w| w[0] <= w[1]) {
        return Err(SimplicialError::BadWord(s.to_string()));
    }
    Ok(out)
}

/// Serializable description of a simplicial set. Face targets are pairs
/// `[degeneracy word, cell name]` with words like `"s1s0"` (possibly empty).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub cells: BTreeMap<usize, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
}

/// A pair (X, A): `sub` is a standalone complex embedded by `incl`, whose
/// image cells are recorded for fast membership tests.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    pub space: Complex,
    pub sub: Complex,
    pub incl: map::SimplicialMap,
    pub sub_cells: std::collections::BTreeSet<CellId>,
}

impl SimplicialPair {
    pub fn new(incl: map::SimplicialMap) -> Result<Self, SimplicialError> {
        incl.validate()?;
        let mut sub_cells = std::collections::BTreeSet::new();
        for c in incl.source.all_cells() {
            let img = incl.apply(&Simplex::nondeg(c));
            if img.is_degenerate() {
                return Err(SimplicialError::Other(format!(
                    "pair inclusion sends nondegenerate cell {:?} to a degenerate simplex",
                    c
                )));
            }
            if !sub_cells.insert(img.cell) {
                return Err(SimplicialError::Other(format!(
                    "pair inclusion is not injective at {:?}",
                    c
                )));
            }
        }
        Ok(SimplicialPair {
            space: incl.target.clone(),
            sub: incl.source.clone(),
            incl,
            sub_cells,
        })
    }

    /// The pair (X, empty).
    pub fn absolute(space: &Complex) -> Self {
        let empty = builtins::empty();
        let incl = map::SimplicialMap::new("empty-incl", &empty, space, vec![]);
        SimplicialPair {
            space: space.clone(),
            sub: empty,
            incl,
            sub_cells: Default::default(),
        }
    }

    pub fn contains(&self, c: CellId) -> bool {
        self.sub_cells.contains(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_algebra_normal_forms() {
        assert_eq!(word_insert(&[], 0), vec![0]);
        assert_eq!(word_insert(&[0], 0), vec![1, 0]); // s0 s0 = s1 s0
        assert_eq!(word_insert(&[2, 0], 1), vec![3, 1, 0]); // s1 s2 s0 = s3 s1 s0
        assert_eq!(word_insert(&[1, 0], 3), vec![3, 1, 0]);
        // d0 s1 s0 = s0 d0 s0 = s0
        assert_eq!(face_through_word(&[1, 0], 0), (None, vec![0]));
        // d3 s1 s0 = s1 s0 d1
        assert_eq!(face_through_word(&[1, 0], 3), (Some(1), vec![1, 0]));
        // d1 s1 = id
        assert_eq!(face_through_word(&[1], 1), (None, vec![]));
        assert_eq!(face_through_word(&[1], 2), (None, vec![]));
    }

    #[test]
    fn simplicial_identities_on_random_words() {
        // On the standard 3-simplex, exercise operators through random words
        use rand::{Rng, SeedableRng};
        let x = builtins::standard_simplex(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let mut s = Simplex::nondeg((3, 0));
            for _ in 0..rng.gen_range(0..4) {
                let i = rng.gen_range(0..=s.dim());
                s = x.degeneracy(&s, i);
            }
            let n = s.dim();
            // d_i d_j = d_{j-1} d_i, i < j
            for j in 1..=n {
                for i in 0..j {
                    assert_eq!(
                        x.face(&x.face(&s, j), i),
                        x.face(&x.face(&s, i), j - 1)
                    );
                }
            }
            // d_i s_i = d_{i+1} s_i = id
            for i in 0..=n {
                let ds = x.degeneracy(&s, i);
                assert_eq!(x.face(&ds, i), s);
                assert_eq!(x.face(&ds, i + 1), s);
            }
            // s_i s_j = s_{j+1} s_i for i <= j
            for i in 0..=n {
                for j in i..=n {
                    let lhs = x.degeneracy(&x.degeneracy(&s, j), i);
                    let rhs = x.degeneracy(&x.degeneracy(&s, i), j + 1);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn vertices_of_standard_simplex() {
        let x = builtins::standard_simplex(2);
        let top = Simplex::nondeg((2, 0));
        for j in 0..=2 {
            let v = x.vertex(&top, j);
            assert_eq!(x.cell_name(v), format!("{}", j));
        }
        let s = x.degeneracy(&top, 1); // vertices 0,1,1,2
        assert_eq!(x.cell_name(x.vertex(&s, 0)), "0");
        assert_eq!(x.cell_name(x.vertex(&s, 1)), "1");
        assert_eq!(x.cell_name(x.vertex(&s, 2)), "1");
        assert_eq!(x.cell_name(x.vertex(&s, 3)), "2");
    }

    #[test]
    fn presentation_roundtrip() {
        let c = builtins::circle();
        let p = c.to_presentation();
        let json = serde_json::to_string(&p).unwrap();
        let p2: Presentation = serde_json::from_str(&json).unwrap();
        assert_eq!(p, p2);
        let c2 = SimplicialSet::from_presentation(&p2).unwrap();
        assert_eq!(c2.to_presentation(), p);
        // byte-identical re-serialization
        assert_eq!(serde_json::to_string(&c2.to_presentation()).unwrap(), json);
    }
}
