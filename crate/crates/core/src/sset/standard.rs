//! Standard simplices, their boundaries, spheres, collapsed faces and representing maps.

use std::sync::Arc;

use super::colimit::{generate, Subcomplex};
use super::congruence::Congruence;
use super::map::SimplicialMap;
use super::{full_mask, CellId, CellSpec, Simplex, SimplicialSet, SsetError};
use crate::delta::Operator;

/// Non-empty subsets of `[n]` in cell order: by size, then lexicographically.
pub fn subset_order(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..=full_mask(n)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), crate::delta::mask_to_vec(m)));
    masks
}

/// Inverse of [`subset_order`], indexed by mask.
pub fn subset_index(n: usize) -> Vec<CellId> {
    let order = subset_order(n);
    let mut idx = vec![usize::MAX; full_mask(n) as usize + 1];
    for (c, &m) in order.iter().enumerate() {
        idx[m as usize] = c;
    }
    idx
}

/// The cell of `Δ[n]` spanned by the vertices in `mask`.
pub fn subset_cell(n: usize, mask: u32) -> CellId {
    subset_index(n)[mask as usize]
}

/// `Δ[n]`: one cell per non-empty subset of `[n]`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    let order = subset_order(n);
    let index = subset_index(n);
    let specs = order
        .iter()
        .map(|&m| {
            let elems = crate::delta::mask_to_vec(m);
            let dim = elems.len() - 1;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                elems
                    .iter()
                    .map(|&e| Simplex::cell(index[(m & !(1 << e)) as usize], dim - 1))
                    .collect()
            };
            CellSpec { dim, faces }
        })
        .collect();
    SimplicialSet::new(format!("Delta[{n}]"), specs).expect("standard simplex is valid")
}

/// `∂Δ[n]` as a subcomplex of `Δ[n]`.
pub fn boundary(n: usize) -> Subcomplex {
    let d = Arc::new(standard_simplex(n));
    let full = full_mask(n);
    let seeds: Vec<CellId> = (0..=n).map(|i| subset_cell(n, full & !(1 << i))).collect();
    let seeds = if n == 0 { Vec::new() } else { seeds };
    let mut sub = generate(&d, &seeds).expect("faces exist");
    sub.set = Arc::new((*sub.set).clone().with_name(format!("dDelta[{n}]")));
    sub.inclusion = sub
        .inclusion
        .rebased(sub.set.clone(), d)
        .expect("same presentation");
    sub
}

/// `Δ[n]/∂Δ[n]` for `n >= 1`: a vertex and an `n`-cell all of whose faces are degenerate on it.
pub fn sphere(n: usize) -> Result<SimplicialSet, SsetError> {
    if n == 0 {
        return Err(SsetError::DegreeMismatch { expected: 1, found: 0 });
    }
    let top = CellSpec {
        dim: n,
        faces: vec![Simplex::new(0, Operator::terminal(n - 1)); n + 1],
    };
    SimplicialSet::new(
        format!("Delta[{n}]/dDelta[{n}]"),
        vec![CellSpec { dim: 0, faces: vec![] }, top],
    )
}

/// `Δ[n]` with the face `δ_i` collapsed onto its first vertex.
pub fn collapse_face(n: usize, i: usize) -> Result<SimplicialSet, SsetError> {
    if n < 2 || i > n {
        return Err(SsetError::DegreeMismatch { expected: 2, found: n });
    }
    let d = Arc::new(standard_simplex(n));
    let face_mask = full_mask(n) & !(1 << i);
    let v = subset_cell(n, 1 << face_mask.trailing_zeros());
    let mut c = Congruence::on(d.clone());
    c.merge_simplices(
        &d.cell_simplex(subset_cell(n, face_mask)),
        &Simplex::new(v, Operator::terminal(n - 1)),
    );
    Ok((*c.quotient(format!("Delta[{n}]/d{i}")).set).clone())
}

/// The Yoneda map `Δ[q] -> X` of a simplex of degree `q`.
pub fn representing_map(x: &Arc<SimplicialSet>, s: &Simplex) -> Result<SimplicialMap, SsetError> {
    let q = s.degree();
    let d = Arc::new(standard_simplex(q));
    let images = subset_order(q)
        .iter()
        .map(|&m| x.eval(s, &Operator::face_from_mask(q, m)))
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(d, x.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).counts(), vec![4, 6, 4, 1]);
        assert_eq!(boundary(2).set.counts(), vec![3, 3]);
        assert_eq!(boundary(3).set.counts(), vec![4, 6, 4]);
    }

    #[test]
    fn top_face_is_first_edge() {
        let d = standard_simplex(2);
        let top = d.cell_simplex(6);
        let f = d.face(&top, 2).unwrap();
        assert_eq!(f, d.cell_simplex(subset_cell(2, 0b011)));
        assert_eq!(d.eval(&top, &Operator::identity(2)).unwrap(), top);
        assert_eq!(d.vertices(&top), vec![0, 1, 2]);
    }

    #[test]
    fn spheres() {
        let s = sphere(1).unwrap();
        let e = s.cell_simplex(1);
        let v0 = s.eval(&e, &Operator::vertex(0, 1).unwrap()).unwrap();
        let v1 = s.eval(&e, &Operator::vertex(1, 1).unwrap()).unwrap();
        assert_eq!(v0, v1);
        assert_eq!(s.vertices(&e), vec![0, 0]);
        assert!(!s.is_embedded(&e));
        assert!(sphere(0).is_err());
    }

    #[test]
    fn representing_identity() {
        let d = Arc::new(standard_simplex(2));
        let m = representing_map(&d, &d.cell_simplex(6)).unwrap();
        assert!(m.same_as(&SimplicialMap::identity(d)));
    }
}
