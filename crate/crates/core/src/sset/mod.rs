//! Finite simplicial sets presented by their non-degenerate cells.
//!
//! Each cell of dimension `d >= 1` stores its `d + 1` codimension-one faces in
//! Eilenberg–Zilber normal form: a pair `(z, σ)` with `z` a cell and `σ` a
//! surjection `[d-1] -> [dim z]`. On construction every cell also gets a table
//! of all its faces, indexed by the image mask of the face operator, which makes
//! [`SimplicialSet::eval`] a table lookup after one factorization.

mod colimit;
mod congruence;
mod io;
mod iso;
mod map;
mod predicates;
mod standard;

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::delta::{DeltaError, Operator};

pub use colimit::{disjoint_union, generate, product, pushout, Product, Pushout, Subcomplex};
pub use congruence::{Congruence, Quotient, SimplexIndex};
pub use io::{parse_sset, parse_smap, print_smap, print_sset};
pub use iso::{find_isomorphism, is_isomorphism};
pub use map::SimplicialMap;
pub use predicates::{
    injective_in_degree, is_degreewise_injective, is_degreewise_surjective, is_nonsingular,
    is_regular, regularity_witness, surjective_in_degree,
};
pub use standard::{
    boundary, collapse_face, representing_map, sphere, standard_simplex, subset_cell, subset_index, subset_order,
};

pub type CellId = usize;

/// Cells above this dimension are rejected; face tables grow as `2^(d+1)`.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsetError {
    #[error("cell {0} does not exist")]
    DanglingCell(CellId),
    #[error("cell {cell}: expected {expected} faces, found {found}")]
    FaceCount {
        cell: CellId,
        expected: usize,
        found: usize,
    },
    #[error("cell {cell}: face {index} is not in normal form: {reason}")]
    NonNormalFace {
        cell: CellId,
        index: usize,
        reason: String,
    },
    #[error("cell {cell}: simplicial identity fails for faces {i} < {j}")]
    FaceIdentity { cell: CellId, i: usize, j: usize },
    #[error("dimension {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("map is not simplicial at cell {cell}, face {index}")]
    NotSimplicial { cell: CellId, index: usize },
    #[error("maps do not compose: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simplex `cell · degen` in normal form. Its degree is `degen.src()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub cell: CellId,
    pub degen: Operator,
}

impl Simplex {
    pub fn new(cell: CellId, degen: Operator) -> Self {
        Self { cell, degen }
    }

    pub fn cell(cell: CellId, dim: usize) -> Self {
        Self::new(cell, Operator::identity(dim))
    }

    pub fn degree(&self) -> usize {
        self.degen.src()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degen.src() != self.degen.dst()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cell, self.degen.encode_degen())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Input description of one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub dim: usize,
    pub faces: Vec<Simplex>,
}

#[derive(Debug, Clone)]
struct Cell {
    dim: usize,
    faces: Vec<Simplex>,
    /// All faces, indexed by `image_mask - 1`.
    table: Vec<Simplex>,
}

#[derive(Clone)]
pub struct SimplicialSet {
    name: String,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<CellId>>,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet({}, cells by dim {:?})", self.name, self.counts())
    }
}

impl PartialEq for SimplicialSet {
    /// Equality of presentations; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.cells.len() == other.cells.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.dim == b.dim && a.faces == b.faces)
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    /// Validate and index a presentation. Cell ids are positions in `specs`.
    pub fn new(name: impl Into<String>, specs: Vec<CellSpec>) -> Result<Self, SsetError> {
        let n = specs.len();
        let mut max_dim = 0;
        for (c, spec) in specs.iter().enumerate() {
            if spec.dim > MAX_DIM {
                return Err(SsetError::TooLarge(spec.dim));
            }
            max_dim = max_dim.max(spec.dim);
            let expected = if spec.dim == 0 { 0 } else { spec.dim + 1 };
            if spec.faces.len() != expected {
                return Err(SsetError::FaceCount {
                    cell: c,
                    expected,
                    found: spec.faces.len(),
                });
            }
            for (i, face) in spec.faces.iter().enumerate() {
                if face.cell >= n {
                    return Err(SsetError::DanglingCell(face.cell));
                }
                let bad = |reason: String| SsetError::NonNormalFace {
                    cell: c,
                    index: i,
                    reason,
                };
                if face.degen.src() != spec.dim - 1 {
                    return Err(bad(format!("degree {} instead of {}", face.degen.src(), spec.dim - 1)));
                }
                if !face.degen.is_degeneracy() {
                    return Err(bad("degeneracy part is not surjective".into()));
                }
                if face.degen.dst() != specs[face.cell].dim {
                    return Err(bad(format!(
                        "target cell has dimension {}, operator lands in [{}]",
                        specs[face.cell].dim,
                        face.degen.dst()
                    )));
                }
            }
        }

        let mut by_dim = vec![Vec::new(); if n == 0 { 0 } else { max_dim + 1 }];
        for (c, spec) in specs.iter().enumerate() {
            by_dim[spec.dim].push(c);
        }
        let mut set = SimplicialSet {
            name: name.into(),
            cells: specs
                .into_iter()
                .map(|s| Cell {
                    dim: s.dim,
                    faces: s.faces,
                    table: Vec::new(),
                })
                .collect(),
            by_dim,
        };
        for d in 0..set.by_dim.len() {
            for k in 0..set.by_dim[d].len() {
                let c = set.by_dim[d][k];
                let table = set.compute_table(c);
                set.cells[c].table = table;
            }
        }
        set.check_identities()?;
        Ok(set)
    }

    fn compute_table(&self, c: CellId) -> Vec<Simplex> {
        let d = self.cells[c].dim;
        let full = full_mask(d);
        let mut table = Vec::with_capacity(full as usize);
        for mask in 1..=full {
            if mask == full {
                table.push(Simplex::cell(c, d));
                continue;
            }
            let i = 31 - (!mask & full).leading_zeros() as usize;
            let low = mask & ((1u32 << i) - 1);
            let high = (mask >> (i + 1)) << i;
            let sub = low | high;
            let face = &self.cells[c].faces[i];
            let alpha = Operator::face_from_mask(d - 1, sub);
            table.push(self.eval_unchecked(face, &alpha));
        }
        table
    }

    fn check_identities(&self) -> Result<(), SsetError> {
        for (c, cell) in self.cells.iter().enumerate() {
            if cell.dim < 2 {
                continue;
            }
            let d = cell.dim;
            for j in 1..=d {
                for i in 0..j {
                    let a = self.eval_unchecked(&cell.faces[j], &Operator::face(i, d - 1)?);
                    let b = self.eval_unchecked(&cell.faces[i], &Operator::face(j - 1, d - 1)?);
                    if a != b {
                        return Err(SsetError::FaceIdentity { cell: c, i, j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self::new(name, Vec::new()).expect("empty set is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension; 0 for the empty set.
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn cell_dim(&self, c: CellId) -> usize {
        self.cells[c].dim
    }

    pub fn faces(&self, c: CellId) -> &[Simplex] {
        &self.cells[c].faces
    }

    pub fn cells_of_dim(&self, d: usize) -> &[CellId] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of cells in each dimension `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn cell_specs(&self) -> Vec<CellSpec> {
        self.cells
            .iter()
            .map(|c| CellSpec {
                dim: c.dim,
                faces: c.faces.clone(),
            })
            .collect()
    }

    pub fn cell_simplex(&self, c: CellId) -> Simplex {
        Simplex::cell(c, self.cells[c].dim)
    }

    /// The face of cell `c` with the given image mask, in normal form.
    #[inline]
    pub fn face_by_mask(&self, c: CellId, mask: u32) -> &Simplex {
        &self.cells[c].table[mask as usize - 1]
    }

    /// Normal form of `s · α`.
    pub fn eval(&self, s: &Simplex, alpha: &Operator) -> Result<Simplex, SsetError> {
        if s.cell >= self.cells.len() {
            return Err(SsetError::DanglingCell(s.cell));
        }
        if s.degen.dst() != self.cells[s.cell].dim {
            return Err(SsetError::DegreeMismatch {
                expected: self.cells[s.cell].dim,
                found: s.degen.dst(),
            });
        }
        if alpha.dst() != s.degree() {
            return Err(SsetError::DegreeMismatch {
                expected: s.degree(),
                found: alpha.dst(),
            });
        }
        Ok(self.eval_unchecked(s, alpha))
    }

    pub(crate) fn eval_unchecked(&self, s: &Simplex, alpha: &Operator) -> Simplex {
        let beta = alpha.then_unchecked(&s.degen);
        let mut image = 0u32;
        let mut repeats = 0u32;
        let vals = beta.values();
        for (j, &v) in vals.iter().enumerate() {
            image |= 1 << v;
            if j + 1 < vals.len() && vals[j + 1] == v {
                repeats |= 1 << j;
            }
        }
        let w = self.face_by_mask(s.cell, image);
        let d = Operator::degeneracy_from_repeat_mask(beta.src(), repeats);
        if w.degen.is_identity() {
            Simplex::new(w.cell, d)
        } else {
            Simplex::new(w.cell, d.then_unchecked(&w.degen))
        }
    }

    /// Normal form of the simplex `cell · α` for an arbitrary operator into `[dim cell]`.
    pub fn eval_cell(&self, c: CellId, alpha: &Operator) -> Result<Simplex, SsetError> {
        self.eval(&self.cell_simplex(c), alpha)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex, SsetError> {
        self.eval(s, &Operator::face(i, s.degree())?)
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex, SsetError> {
        self.eval(s, &Operator::degeneracy(i, s.degree())?)
    }

    /// Vertex cells `s·ε_0, ..., s·ε_q`.
    pub fn vertices(&self, s: &Simplex) -> Vec<CellId> {
        s.degen
            .values()
            .iter()
            .map(|&v| self.face_by_mask(s.cell, 1 << v).cell)
            .collect()
    }

    pub fn cell_vertices(&self, c: CellId) -> Vec<CellId> {
        (0..=self.cells[c].dim).map(|v| self.face_by_mask(c, 1 << v).cell).collect()
    }

    /// Simplices of equal degree with equal vertex sequences.
    pub fn are_siblings(&self, s: &Simplex, t: &Simplex) -> Result<bool, SsetError> {
        if s.degree() != t.degree() {
            return Err(SsetError::DegreeMismatch {
                expected: s.degree(),
                found: t.degree(),
            });
        }
        Ok(self.vertices(s) == self.vertices(t))
    }

    /// Pairwise distinct vertices.
    pub fn is_embedded(&self, s: &Simplex) -> bool {
        all_distinct(&self.vertices(s))
    }

    /// Every simplex of degree `q`, cells in id order, degeneracies by repeat mask.
    pub fn simplices_of_degree(&self, q: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=q.min(self.dim()) {
            if self.cells_of_dim(d).is_empty() {
                continue;
            }
            let surj = crate::delta::surjections(q, d);
            for &c in self.cells_of_dim(d) {
                for s in &surj {
                    out.push(Simplex::new(c, s.clone()));
                }
            }
        }
        out.sort_by_key(|s| s.cell);
        out
    }

    pub fn count_simplices(&self, q: usize) -> usize {
        (0..=q.min(self.dim()))
            .map(|d| self.cells_of_dim(d).len() * binomial(q, q - d))
            .sum()
    }
}

/// Bit mask of `[d]`.
pub fn full_mask(d: usize) -> u32 {
    ((1u64 << (d + 1)) - 1) as u32
}

pub(crate) fn all_distinct(v: &[CellId]) -> bool {
    let mut s: SmallVec<[CellId; 8]> = v.iter().copied().collect();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialSet {
        SimplicialSet::new(
            "S1",
            vec![
                CellSpec { dim: 0, faces: vec![] },
                CellSpec {
                    dim: 1,
                    faces: vec![Simplex::cell(0, 0), Simplex::cell(0, 0)],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn circle_is_valid() {
        let x = circle();
        assert_eq!(x.counts(), vec![1, 1]);
        let e = x.cell_simplex(1);
        assert_eq!(x.vertices(&e), vec![0, 0]);
        let v0 = x.eval(&e, &Operator::vertex(0, 1).unwrap()).unwrap();
        let v1 = x.eval(&e, &Operator::vertex(1, 1).unwrap()).unwrap();
        assert_eq!(v0, v1);
        assert!(!x.is_embedded(&e));
    }

    #[test]
    fn rejects_rank_mismatch() {
        let err = SimplicialSet::new(
            "bad",
            vec![
                CellSpec { dim: 0, faces: vec![] },
                CellSpec {
                    dim: 1,
                    faces: vec![Simplex::cell(0, 0), Simplex::cell(0, 0)],
                },
                CellSpec {
                    dim: 1,
                    faces: vec![Simplex::cell(1, 1), Simplex::cell(0, 0)],
                },
            ],
        );
        assert!(matches!(err, Err(SsetError::NonNormalFace { .. })));
    }

    #[test]
    fn rejects_bad_identity() {
        // a triangle whose faces do not agree on vertices
        let v = |c| Simplex::cell(c, 0);
        let e = |c| Simplex::cell(c, 1);
        let specs = vec![
            CellSpec { dim: 0, faces: vec![] },
            CellSpec { dim: 0, faces: vec![] },
            CellSpec { dim: 0, faces: vec![] },
            CellSpec { dim: 1, faces: vec![v(1), v(0)] },
            CellSpec { dim: 1, faces: vec![v(2), v(0)] },
            CellSpec { dim: 1, faces: vec![v(2), v(1)] },
            CellSpec {
                dim: 2,
                faces: vec![e(5), e(3), e(3)],
            },
        ];
        assert!(matches!(
            SimplicialSet::new("bad", specs),
            Err(SsetError::FaceIdentity { .. })
        ));
    }

    #[test]
    fn degenerate_simplices_count() {
        let x = circle();
        // degree 2: v·(0,0,0), e·σ_0, e·σ_1
        assert_eq!(x.count_simplices(2), 3);
        assert_eq!(x.simplices_of_degree(2).len(), 3);
    }
}
