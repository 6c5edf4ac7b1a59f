//! Simplicial maps between finite simplicial sets.

use super::{word_compose, CellId, Complex, Simplex, SimplicialError};

/// A simplicial map, stored by its values on nondegenerate cells.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub name: String,
    pub source: Complex,
    pub target: Complex,
    /// images[dim][idx]: image simplex of nondegenerate cell (dim, idx).
    pub images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(name: &str, source: &Complex, target: &Complex, flat: Vec<Simplex>) -> Self {
        let mut images: Vec<Vec<Simplex>> = (0..source.cells.len())
            .map(|d| Vec::with_capacity(source.cell_count(d)))
            .collect();
        let mut it = flat.into_iter();
        for d in 0..source.cells.len() {
            for _ in 0..source.cell_count(d) {
                images[d].push(it.next().expect("image list too short"));
            }
        }
        assert!(it.next().is_none(), "image list too long");
        SimplicialMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn identity(x: &Complex) -> Self {
        let flat = x.all_cells().map(Simplex::nondeg).collect();
        SimplicialMap::new("id", x, x, flat)
    }

    /// Constant map onto a vertex of the target.
    pub fn constant(x: &Complex, target: &Complex, vertex: CellId) -> Self {
        assert_eq!(vertex.0, 0);
        let flat = x
            .all_cells()
            .map(|c| {
                let word: Vec<usize> = (0..c.0).rev().collect();
                Simplex { word, cell: vertex }
            })
            .collect();
        SimplicialMap::new("const", x, target, flat)
    }

    pub fn apply(&self, s: &Simplex) -> Simplex {
        let img = &self.images[s.cell.0][s.cell.1];
        Simplex {
            word: word_compose(&s.word, &img.word),
            cell: img.cell,
        }
    }

    pub fn compose(&self, after: &SimplicialMap) -> SimplicialMap {
        assert!(std::rc::Rc::ptr_eq(&self.target, &after.source));
        let flat = self
            .source
            .all_cells()
            .map(|c| after.apply(&self.apply(&Simplex::nondeg(c))))
            .collect();
        SimplicialMap::new(
            &format!("{};{}", self.name, after.name),
            &self.source,
            &after.target,
            flat,
        )
    }

    /// Check f(d_i x) = d_i f(x) on all nondegenerate cells.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        for c in self.source.all_cells() {
            let s = Simplex::nondeg(c);
            let img = self.apply(&s);
            if img.dim() != c.0 {
                return Err(SimplicialError::Other(format!(
                    "map {}: image of {:?} has wrong dimension",
                    self.name, c
                )));
            }
            for i in 0..=c.0 {
                if c.0 == 0 {
                    break;
                }
                let lhs = self.apply(&self.source.face(&s, i));
                let rhs = self.target.face(&img, i);
                if lhs != rhs {
                    return Err(SimplicialError::NotSimplicial(c, i));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtins;
    use super::*;

    #[test]
    fn quotient_map_is_simplicial() {
        let i = builtins::interval();
        let c = builtins::circle();
        let q = builtins::interval_to_circle(&i, &c);
        q.validate().unwrap();
        let e = Simplex::nondeg((1, 0));
        assert_eq!(q.apply(&e), Simplex::nondeg((1, 0)));
        // degenerate edge at v0 maps to degenerate edge at v
        let dv = i.degeneracy(&Simplex::nondeg((0, 0)), 0);
        assert_eq!(q.apply(&dv), c.degeneracy(&Simplex::nondeg((0, 0)), 0));
    }

    #[test]
    fn constant_map_is_simplicial() {
        let x = builtins::rp2();
        let p = builtins::point();
        let f = SimplicialMap::constant(&x, &p, (0, 0));
        f.validate().unwrap();
    }
}
