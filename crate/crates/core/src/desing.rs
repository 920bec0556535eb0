//! Desingularization `D` and regularization `R` as quotients by congruences.
//!
//! The zipper repeatedly applies the forced move `u ~ uδ_pσ_p` whenever the
//! vertices `p` and `p + 1` of `u` coincide. Every such identification holds in any
//! map to a non-singular target, so a non-singular fixpoint is `D X` itself.
//! The oracles search congruences exhaustively and take a meet.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::delta::Operator;
use crate::sset::{
    is_nonsingular, is_regular, CellId, Congruence, Quotient, Simplex, SimplicialMap, SimplicialSet,
};

pub const DEFAULT_ORACLE_BOUND: usize = 10;
pub const ORACLE_STATE_LIMIT: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesingError {
    #[error("{cells} cells exceed the oracle bound {bound}")]
    TooLarge { cells: usize, bound: usize },
    #[error("congruence search visited more than {0} states")]
    StateLimit(usize),
    #[error("zipper fixpoint of {0} is singular")]
    Uncertified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    ZipperCertified,
    OracleExact,
    Uncertified,
}

/// One zipper step: the cell `u` was identified with `uδ_pσ_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZipMove {
    pub cell: CellId,
    pub p: usize,
}

#[derive(Clone, Debug)]
pub struct DesingResult {
    pub quotient: Arc<SimplicialSet>,
    pub eta: SimplicialMap,
    pub certificate: Certificate,
    pub moves: Vec<ZipMove>,
    /// Representative source cell of each quotient cell.
    pub reps: Vec<CellId>,
}

impl DesingResult {
    fn from_quotient(q: Quotient, certificate: Certificate, moves: Vec<ZipMove>) -> Self {
        Self {
            quotient: q.set,
            eta: q.projection,
            certificate,
            moves,
            reps: q.reps,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate != Certificate::Uncertified
    }
}

/// The size gate for the oracles: `FORGE_ORACLE_BOUND` if set, else the default.
pub fn oracle_bound() -> usize {
    std::env::var("FORGE_ORACLE_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

/// `uδ_pσ_p` for a cell `u` of dimension at least 1.
fn zipped(x: &SimplicialSet, u: CellId, p: usize) -> Simplex {
    let d = x.cell_dim(u);
    let face = x.eval_cell(u, &Operator::face(p, d).unwrap()).unwrap();
    x.eval(&face, &Operator::degeneracy(p, d - 1).unwrap()).unwrap()
}

/// The move `(u, p)` applies when the vertices `p` and `p + 1` of `u` are identified.
fn premise(cong: &Congruence, verts: &[CellId], p: usize) -> bool {
    let idx = cong.index();
    cong.same(idx.cell_index(verts[p]), idx.cell_index(verts[p + 1]))
}

fn zip_to_fixpoint(x: &Arc<SimplicialSet>) -> (Congruence, Vec<ZipMove>) {
    let mut cong = Congruence::on(x.clone());
    let mut moves = Vec::new();
    let verts: Vec<Vec<CellId>> = (0..x.num_cells()).map(|c| x.cell_vertices(c)).collect();
    loop {
        let mut changed = false;
        for d in 1..=x.dim() {
            for &u in x.cells_of_dim(d) {
                for p in 0..d {
                    if !premise(&cong, &verts[u], p) {
                        continue;
                    }
                    let target = zipped(x, u, p);
                    if cong.merge_simplices(&x.cell_simplex(u), &target) {
                        moves.push(ZipMove { cell: u, p });
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return (cong, moves);
        }
    }
}

/// Zip to a fixpoint. The result is certified exactly when the fixpoint is non-singular.
pub fn zipper_desingularize(x: &Arc<SimplicialSet>) -> DesingResult {
    let (cong, moves) = zip_to_fixpoint(x);
    let q = cong.quotient(format!("D({})", x.name()));
    let certificate = if is_nonsingular(&q.set) {
        Certificate::ZipperCertified
    } else {
        Certificate::Uncertified
    };
    DesingResult::from_quotient(q, certificate, moves)
}

/// Replay a move log from scratch, checking that each premise held when the move was
/// made and that the replayed congruence is the kernel of `eta`.
pub fn replay_moves(x: &Arc<SimplicialSet>, result: &DesingResult) -> bool {
    let mut cong = Congruence::on(x.clone());
    for m in &result.moves {
        let verts = x.cell_vertices(m.cell);
        if m.p + 1 >= verts.len() || !premise(&cong, &verts, m.p) {
            return false;
        }
        if !cong.merge_simplices(&x.cell_simplex(m.cell), &zipped(x, m.cell, m.p)) {
            return false;
        }
    }
    let kernel = Congruence::kernel(&result.eta, x.dim());
    cong.same_partition(&kernel)
}

/// Zipper, falling back to the oracle when the fixpoint is singular.
pub fn desingularize(x: &Arc<SimplicialSet>) -> Result<DesingResult, DesingError> {
    let z = zipper_desingularize(x);
    if z.is_certified() {
        return Ok(z);
    }
    oracle_desingularize_bounded(x, oracle_bound())
}

fn class_is_degenerate(cong: &Congruence) -> Vec<bool> {
    let idx = cong.index();
    let mut out = vec![false; idx.len()];
    for i in 0..idx.len() {
        if idx.simplex(i).is_degenerate() {
            out[cong.root(i)] = true;
        }
    }
    out
}

/// A cell whose class is non-degenerate but has repeated vertices.
fn singular_cell(cong: &Congruence) -> Option<CellId> {
    let x = cong.set();
    let idx = cong.index();
    let degen = class_is_degenerate(cong);
    (0..x.num_cells()).find(|&c| {
        if degen[cong.root(idx.cell_index(c))] {
            return false;
        }
        let mut seen = HashSet::new();
        !x.cell_vertices(c)
            .iter()
            .all(|&v| seen.insert(cong.root(idx.cell_index(v))))
    })
}

fn check_size(x: &SimplicialSet, bound: usize) -> Result<(), DesingError> {
    if x.num_cells() > bound {
        return Err(DesingError::TooLarge {
            cells: x.num_cells(),
            bound,
        });
    }
    Ok(())
}

/// Breadth-first search for the minimal congruences satisfying `done`, with children
/// produced by `children`. Returns the meet of the minimal ones found.
fn search_meet(
    start: Congruence,
    done: impl Fn(&Congruence) -> bool,
    children: impl Fn(&Congruence) -> Vec<Congruence>,
) -> Result<Congruence, DesingError> {
    if done(&start) {
        return Ok(start);
    }
    let mut found: Vec<Congruence> = Vec::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.labels());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        for child in children(&state) {
            if found.iter().any(|f| child.contains(f)) || !seen.insert(child.labels()) {
                continue;
            }
            if seen.len() > ORACLE_STATE_LIMIT {
                return Err(DesingError::StateLimit(ORACLE_STATE_LIMIT));
            }
            if done(&child) {
                found.retain(|f| !f.contains(&child));
                found.push(child);
            } else {
                queue.push_back(child);
            }
        }
    }
    let mut it = found.into_iter();
    let first = it.next().expect("the total congruence on degree 0 always terminates the search");
    Ok(it.fold(first, |acc, c| acc.meet(&c)))
}

fn nonsingular_quotient(cong: &Congruence) -> bool {
    singular_cell(cong).is_none()
}

/// In a non-singular quotient a simplex with a repeated vertex is degenerate, so the
/// first singular cell must be identified with some degenerate simplex of its degree.
fn nonsingular_children(cong: &Congruence) -> Vec<Congruence> {
    let Some(c) = singular_cell(cong) else {
        return Vec::new();
    };
    let idx = cong.index();
    let a = idx.cell_index(c);
    let d = cong.set().cell_dim(c);
    let mut out = Vec::new();
    let mut tried = HashSet::new();
    for b in idx.degree_range(d) {
        if !idx.simplex(b).is_degenerate() || cong.same(a, b) || !tried.insert(cong.root(b)) {
            continue;
        }
        let mut child = cong.clone();
        child.merge(a, b);
        out.push(child);
    }
    out
}

pub fn oracle_desingularize(x: &Arc<SimplicialSet>) -> Result<DesingResult, DesingError> {
    oracle_desingularize_bounded(x, oracle_bound())
}

/// The meet of every congruence with a non-singular quotient.
pub fn oracle_desingularize_bounded(x: &Arc<SimplicialSet>, bound: usize) -> Result<DesingResult, DesingError> {
    check_size(x, bound)?;
    let meet = search_meet(Congruence::on(x.clone()), nonsingular_quotient, nonsingular_children)?;
    let q = meet.quotient(format!("D({})", x.name()));
    debug_assert!(is_nonsingular(&q.set));
    Ok(DesingResult::from_quotient(q, Certificate::OracleExact, Vec::new()))
}

fn regular_quotient(cong: &Congruence) -> bool {
    is_regular(&cong.quotient("R").set)
}

fn all_pair_children(cong: &Congruence) -> Vec<Congruence> {
    let idx = cong.index();
    let mut out = Vec::new();
    for q in 0..=idx.max_degree() {
        let roots: Vec<usize> = {
            let mut seen = HashSet::new();
            idx.degree_range(q).filter(|&i| seen.insert(cong.root(i))).collect()
        };
        for (k, &a) in roots.iter().enumerate() {
            for &b in &roots[k + 1..] {
                let mut child = cong.clone();
                child.merge(a, b);
                out.push(child);
            }
        }
    }
    out
}

pub fn regularize_oracle(x: &Arc<SimplicialSet>) -> Result<Quotient, DesingError> {
    regularize_oracle_bounded(x, oracle_bound())
}

/// The meet of every congruence with a regular quotient.
pub fn regularize_oracle_bounded(x: &Arc<SimplicialSet>, bound: usize) -> Result<Quotient, DesingError> {
    check_size(x, bound)?;
    let meet = search_meet(Congruence::on(x.clone()), regular_quotient, all_pair_children)?;
    Ok(meet.quotient(format!("R({})", x.name())))
}

/// Every quotient of `x` by a congruence on simplices of degree `<= dim x`, found by
/// merging pairs from the identity. Used to spot-check universal properties.
pub fn all_quotients(x: &Arc<SimplicialSet>, bound: usize) -> Result<Vec<Quotient>, DesingError> {
    check_size(x, bound)?;
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let start = Congruence::on(x.clone());
    seen.insert(start.labels());
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        out.push(state.quotient(format!("Z{}", out.len())));
        for child in all_pair_children(&state) {
            if seen.insert(child.labels()) {
                if seen.len() > ORACLE_STATE_LIMIT {
                    return Err(DesingError::StateLimit(ORACLE_STATE_LIMIT));
                }
                queue.push_back(child);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{collapse_face, sphere, standard_simplex};

    #[test]
    fn nonsingular_is_fixed() {
        let d = Arc::new(standard_simplex(2));
        let r = zipper_desingularize(&d);
        assert!(r.moves.is_empty());
        assert_eq!(r.certificate, Certificate::ZipperCertified);
        assert_eq!(*r.quotient, *d);
    }

    #[test]
    fn circle_collapses_to_a_point() {
        let s1 = Arc::new(sphere(1).unwrap());
        let z = zipper_desingularize(&s1);
        assert_eq!(z.certificate, Certificate::ZipperCertified);
        assert_eq!(z.quotient.counts(), vec![1]);
        assert!(replay_moves(&s1, &z));
        let o = oracle_desingularize_bounded(&s1, 10).unwrap();
        assert_eq!(o.quotient.counts(), vec![1]);
    }

    #[test]
    fn collapsed_face_zips() {
        let x = Arc::new(collapse_face(2, 2).unwrap());
        let z = zipper_desingularize(&x);
        assert!(z.is_certified());
        let o = oracle_desingularize_bounded(&x, 10).unwrap();
        assert!(Congruence::kernel(&z.eta, 2).same_partition(&Congruence::kernel(&o.eta, 2)));
    }

    #[test]
    fn bound_is_enforced() {
        let d = Arc::new(standard_simplex(3));
        assert!(matches!(
            oracle_desingularize_bounded(&d, 10),
            Err(DesingError::TooLarge { .. })
        ));
    }

    #[test]
    fn universal_against_all_quotients() {
        let x = Arc::new(collapse_face(2, 0).unwrap());
        let z = zipper_desingularize(&x);
        let qs = all_quotients(&x, 10).unwrap();
        assert!(qs.iter().any(|q| q.set.num_cells() == 1));
        for q in qs.iter().filter(|q| is_nonsingular(&q.set)) {
            assert!(SimplicialMap::factor_through(&z.eta, &q.projection).is_ok());
        }
    }

    #[test]
    fn regularization_of_circle() {
        let s1 = Arc::new(sphere(1).unwrap());
        let r = regularize_oracle_bounded(&s1, 10).unwrap();
        assert!(is_regular(&r.set));
        assert_eq!(r.set.counts(), vec![1]);
    }
}
