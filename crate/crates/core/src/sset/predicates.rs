//! Injectivity, surjectivity, non-singularity and regularity.

use std::collections::HashSet;
use std::sync::Arc;

use super::colimit::{generate, pushout};
use super::map::SimplicialMap;
use super::standard::{representing_map, subset_cell};
use super::{full_mask, CellId, Simplex, SimplicialSet};

/// Every cell has pairwise distinct vertices.
///
/// A non-degenerate simplex with distinct vertices has an injective representing
/// map: two faces with equal normal form have equal vertex sequences, and a face
/// operator is determined by its image.
pub fn is_nonsingular(x: &SimplicialSet) -> bool {
    (0..x.num_cells()).all(|c| x.is_embedded(&x.cell_simplex(c)))
}

/// Injective in every degree. Equivalent to: cells go to pairwise distinct
/// non-degenerate simplices, by uniqueness of the normal form `f(x)·σ`.
pub fn is_degreewise_injective(f: &SimplicialMap) -> bool {
    let mut seen = HashSet::new();
    f.images().iter().all(|s| !s.is_degenerate() && seen.insert(s.cell))
}

/// Surjective in every degree: each target cell is the image of some source cell.
pub fn is_degreewise_surjective(f: &SimplicialMap) -> bool {
    let mut hit = vec![false; f.target().num_cells()];
    for s in f.images() {
        if !s.is_degenerate() {
            hit[s.cell] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Direct check of injectivity on the simplices of degree `q`.
pub fn injective_in_degree(f: &SimplicialMap, q: usize) -> bool {
    let mut seen = HashSet::new();
    f.source()
        .simplices_of_degree(q)
        .iter()
        .all(|s| seen.insert(f.apply(s)))
}

/// Direct check of surjectivity on the simplices of degree `q`.
pub fn surjective_in_degree(f: &SimplicialMap, q: usize) -> bool {
    let image: HashSet<Simplex> = f.source().simplices_of_degree(q).iter().map(|s| f.apply(s)).collect();
    image.len() == f.target().count_simplices(q)
}

/// The first cell that is not regularly attached, if any.
///
/// For a cell `y` of dimension `n >= 1` let `Y'` be generated by `(yδ_n)♯`. The cell
/// is regular when the canonical map `Δ[n] ⊔_{Δ[n-1]} Y' -> X` is degreewise injective.
pub fn regularity_witness(x: &Arc<SimplicialSet>) -> Option<CellId> {
    (0..x.num_cells()).find(|&c| !cell_is_regular(x, c))
}

pub fn is_regular(x: &SimplicialSet) -> bool {
    let x = Arc::new(x.clone());
    regularity_witness(&x).is_none()
}

fn cell_is_regular(x: &Arc<SimplicialSet>, y: CellId) -> bool {
    let n = x.cell_dim(y);
    if n == 0 {
        return true;
    }
    let ys = x.cell_simplex(y);
    let last = x.face(&ys, n).expect("face of a cell");
    let sub = generate(x, &[last.cell]).expect("cell exists");
    let ybar = representing_map(x, &ys).expect("representing map");
    let delta_n = ybar.source().clone();
    let inner = representing_map(&delta_n, &delta_n.cell_simplex(subset_cell(n, full_mask(n) & !(1 << n))))
        .expect("face inclusion");
    let face_map = representing_map(x, &last).expect("representing map");
    let images = face_map
        .images()
        .iter()
        .map(|s| sub.restrict(s).expect("faces of last face lie in Y'"))
        .collect();
    let restricted = SimplicialMap::new(inner.source().clone(), sub.set.clone(), images).expect("restriction");
    let po = pushout(&inner, &restricted, "attach").expect("common source");
    let canon = po.mediate(&ybar, &sub.inclusion).expect("compatible legs");
    is_degreewise_injective(&canon)
}
