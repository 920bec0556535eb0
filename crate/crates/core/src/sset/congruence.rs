//! Operator-closed equivalence relations and the quotients they induce.
//!
//! A congruence lives on the simplices of degree `<= D` of a fixed simplicial
//! set. Any simplicial map out of `X` is determined by its values on cells, so
//! its kernel is determined by these degrees as long as `D >= dim X`.
//! Closure under the elementary faces and degeneracies that stay within degree
//! `D` gives closure under every operator between such degrees, since each
//! operator factors as a degeneracy followed by a face.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::{CellId, CellSpec, Simplex, SimplicialSet};
use crate::delta::{self, Operator};

/// Dense numbering of the simplices of degree `<= D`, with neighbour tables.
pub struct SimplexIndex {
    set: Arc<SimplicialSet>,
    max_degree: usize,
    simplices: Vec<Simplex>,
    degree_start: Vec<usize>,
    offset: Vec<Vec<usize>>,
    surj_rank: Vec<Vec<u32>>,
    face_start: Vec<u32>,
    faces: Vec<u32>,
    degen_start: Vec<u32>,
    degens: Vec<u32>,
}

impl SimplexIndex {
    pub fn new(set: Arc<SimplicialSet>, max_degree: usize) -> Self {
        let dd = max_degree;
        let mut surj_rank = Vec::with_capacity(dd + 1);
        for q in 0..=dd {
            let mut ranks = vec![0u32; 1 << q];
            let mut next = vec![0u32; q + 1];
            for mask in 0u32..(1 << q) {
                let k = mask.count_ones() as usize;
                ranks[mask as usize] = next[k];
                next[k] += 1;
            }
            surj_rank.push(ranks);
        }

        let mut simplices = Vec::new();
        let mut degree_start = Vec::with_capacity(dd + 2);
        let mut offset = Vec::with_capacity(dd + 1);
        for q in 0..=dd {
            degree_start.push(simplices.len());
            let mut off = vec![usize::MAX; set.num_cells()];
            let surj: Vec<Vec<Operator>> = (0..=q).map(|d| delta::surjections(q, d)).collect();
            for c in 0..set.num_cells() {
                let d = set.cell_dim(c);
                if d > q {
                    continue;
                }
                off[c] = simplices.len();
                for s in &surj[d] {
                    simplices.push(Simplex::new(c, s.clone()));
                }
            }
            offset.push(off);
        }
        degree_start.push(simplices.len());

        let mut index = SimplexIndex {
            set,
            max_degree: dd,
            simplices,
            degree_start,
            offset,
            surj_rank,
            face_start: Vec::new(),
            faces: Vec::new(),
            degen_start: Vec::new(),
            degens: Vec::new(),
        };

        let n = index.simplices.len();
        let mut face_start = Vec::with_capacity(n + 1);
        let mut faces = Vec::new();
        let mut degen_start = Vec::with_capacity(n + 1);
        let mut degens = Vec::new();
        for id in 0..n {
            face_start.push(faces.len() as u32);
            degen_start.push(degens.len() as u32);
            let s = &index.simplices[id];
            let q = s.degree();
            if q > 0 {
                for i in 0..=q {
                    let f = index.set.eval_unchecked(s, &Operator::face(i, q).unwrap());
                    faces.push(index.index_of(&f) as u32);
                }
            }
            if q < dd {
                for i in 0..=q {
                    let f = index.set.eval_unchecked(s, &Operator::degeneracy(i, q).unwrap());
                    degens.push(index.index_of(&f) as u32);
                }
            }
        }
        face_start.push(faces.len() as u32);
        degen_start.push(degens.len() as u32);
        index.face_start = face_start;
        index.faces = faces;
        index.degen_start = degen_start;
        index.degens = degens;
        index
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn degree_range(&self, q: usize) -> std::ops::Range<usize> {
        self.degree_start[q]..self.degree_start[q + 1]
    }

    pub fn index_of(&self, s: &Simplex) -> usize {
        let q = s.degree();
        assert!(q <= self.max_degree, "simplex of degree {q} outside index");
        self.offset[q][s.cell] + self.surj_rank[q][s.degen.repeat_mask() as usize] as usize
    }

    pub fn cell_index(&self, c: CellId) -> usize {
        self.offset[self.set.cell_dim(c)][c]
    }

    #[inline]
    pub fn face_ids(&self, id: usize) -> &[u32] {
        &self.faces[self.face_start[id] as usize..self.face_start[id + 1] as usize]
    }

    #[inline]
    pub fn degen_ids(&self, id: usize) -> &[u32] {
        &self.degens[self.degen_start[id] as usize..self.degen_start[id + 1] as usize]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.simplices[id].degree()
    }
}

/// A union-find over a [`SimplexIndex`] kept closed under faces and degeneracies.
#[derive(Clone)]
pub struct Congruence {
    index: Arc<SimplexIndex>,
    parent: Vec<u32>,
    size: Vec<u32>,
    classes: usize,
}

impl Congruence {
    pub fn identity(index: Arc<SimplexIndex>) -> Self {
        let n = index.len();
        Self {
            index,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            classes: n,
        }
    }

    /// Identity congruence on simplices of degree `<= dim X`.
    pub fn on(set: Arc<SimplicialSet>) -> Self {
        let d = set.dim();
        Self::identity(Arc::new(SimplexIndex::new(set, d)))
    }

    pub fn index(&self) -> &Arc<SimplexIndex> {
        &self.index
    }

    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.index.set
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] as usize != a {
            let p = self.parent[a] as usize;
            self.parent[a] = self.parent[p];
            a = p;
        }
        a
    }

    pub fn root(&self, mut a: usize) -> usize {
        while self.parent[a] as usize != a {
            a = self.parent[a] as usize;
        }
        a
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.root(a) == self.root(b)
    }

    pub fn same_simplices(&self, s: &Simplex, t: &Simplex) -> bool {
        self.same(self.index.index_of(s), self.index.index_of(t))
    }

    fn union_raw(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.classes -= 1;
        true
    }

    /// Identify `a` and `b` and restore closure. Returns whether anything changed.
    pub fn merge(&mut self, a: usize, b: usize) -> bool {
        assert_eq!(
            self.index.degree(a),
            self.index.degree(b),
            "only simplices of equal degree can be identified"
        );
        let before = self.classes;
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            if !self.union_raw(a, b) {
                continue;
            }
            let index = &self.index;
            for (&fa, &fb) in index.face_ids(a).iter().zip(index.face_ids(b)) {
                work.push((fa as usize, fb as usize));
            }
            for (&da, &db) in index.degen_ids(a).iter().zip(index.degen_ids(b)) {
                work.push((da as usize, db as usize));
            }
        }
        self.classes != before
    }

    pub fn merge_simplices(&mut self, s: &Simplex, t: &Simplex) -> bool {
        let (a, b) = (self.index.index_of(s), self.index.index_of(t));
        self.merge(a, b)
    }

    /// Canonical labels: each simplex is labelled by the least index in its class.
    pub fn labels(&self) -> Vec<u32> {
        let n = self.parent.len();
        let mut least = vec![u32::MAX; n];
        let mut out = vec![0u32; n];
        for i in 0..n {
            let r = self.root(i);
            if least[r] == u32::MAX {
                least[r] = i as u32;
            }
            out[i] = least[r];
        }
        out
    }

    pub fn same_partition(&self, other: &Congruence) -> bool {
        self.parent.len() == other.parent.len() && self.labels() == other.labels()
    }

    /// Whether every identification made by `other` is also made by `self`.
    pub fn contains(&self, other: &Congruence) -> bool {
        (0..self.parent.len()).all(|i| self.same(i, other.root(i)))
    }

    /// Intersection of two congruences on the same index.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut out = Congruence::identity(self.index.clone());
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..self.parent.len() {
            let key = (self.root(i), other.root(i));
            match seen.get(&key) {
                Some(&j) => {
                    out.union_raw(i, j);
                }
                None => {
                    seen.insert(key, i);
                }
            }
        }
        out
    }

    /// The kernel of `f`, on simplices of degree `<= max(dim source, min_degree)`.
    pub fn kernel(f: &SimplicialMap, min_degree: usize) -> Congruence {
        let d = f.source().dim().max(min_degree);
        let index = Arc::new(SimplexIndex::new(f.source().clone(), d));
        let mut out = Congruence::identity(index.clone());
        let mut seen: HashMap<Simplex, usize> = HashMap::new();
        for i in 0..index.len() {
            let img = f.apply(index.simplex(i));
            match seen.get(&img) {
                Some(&j) => {
                    out.union_raw(i, j);
                }
                None => {
                    seen.insert(img, i);
                }
            }
        }
        out
    }

    /// Build the quotient simplicial set and its projection.
    pub fn quotient(&self, name: impl Into<String>) -> Quotient {
        let index = &self.index;
        let n = index.len();
        let roots: Vec<usize> = (0..n).map(|i| self.root(i)).collect();

        let mut witness: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            if witness[roots[i]].is_none() && index.simplex(i).is_degenerate() {
                witness[roots[i]] = Some(i);
            }
        }

        let mut cell_of_root: Vec<usize> = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = roots[i];
            if witness[r].is_none() && cell_of_root[r] == usize::MAX {
                cell_of_root[r] = reps.len();
                reps.push(i);
            }
        }

        let mut memo: Vec<Option<Simplex>> = vec![None; n];
        let mut specs = Vec::with_capacity(reps.len());
        for &i in &reps {
            let q = index.degree(i);
            let faces = index
                .face_ids(i)
                .iter()
                .map(|&f| normal_form(index, &roots, &witness, &cell_of_root, &mut memo, f as usize))
                .collect();
            specs.push(CellSpec { dim: q, faces });
        }
        let set = Arc::new(
            SimplicialSet::new(name, specs).expect("quotient of a closed congruence is a simplicial set"),
        );
        let source = index.set.clone();
        let images = (0..source.num_cells())
            .map(|c| normal_form(index, &roots, &witness, &cell_of_root, &mut memo, index.cell_index(c)))
            .collect();
        let projection = SimplicialMap::from_parts_unchecked(source, set.clone(), images);
        debug_assert!(SimplicialMap::new(
            projection.source().clone(),
            projection.target().clone(),
            projection.images().to_vec()
        )
        .is_ok());
        Quotient {
            set,
            projection,
            reps: reps.iter().map(|&i| index.simplex(i).cell).collect(),
        }
    }
}

fn normal_form(
    index: &SimplexIndex,
    roots: &[usize],
    witness: &[Option<usize>],
    cell_of_root: &[usize],
    memo: &mut Vec<Option<Simplex>>,
    id: usize,
) -> Simplex {
    let r = roots[id];
    if let Some(s) = &memo[r] {
        return s.clone();
    }
    let out = match witness[r] {
        None => Simplex::cell(cell_of_root[r], index.degree(id)),
        Some(w) => {
            // w = x·σ with σ = σ' ∘ σ_j for the least repeat j of σ
            let s = index.simplex(w);
            let q = s.degree();
            let mask = s.degen.repeat_mask();
            let j = mask.trailing_zeros() as usize;
            let low = mask & ((1u32 << j) - 1);
            let high = (mask >> (j + 1)) << j;
            let lower = Simplex::new(s.cell, Operator::degeneracy_from_repeat_mask(q - 1, low | high));
            let inner = normal_form(index, roots, witness, cell_of_root, memo, index.index_of(&lower));
            let sj = Operator::degeneracy(j, q - 1).unwrap();
            Simplex::new(inner.cell, sj.then_unchecked(&inner.degen))
        }
    };
    memo[r] = Some(out.clone());
    out
}

/// A quotient set together with its projection and a representative source cell per cell.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub set: Arc<SimplicialSet>,
    pub projection: SimplicialMap,
    pub reps: Vec<CellId>,
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{binomial, standard_simplex};

    fn simplex_count(counts: &[usize], q: usize) -> usize {
        counts
            .iter()
            .enumerate()
            .filter(|(d, _)| *d <= q)
            .map(|(d, &k)| k * binomial(q, q - d))
            .sum()
    }

    #[test]
    fn index_round_trip() {
        let x = Arc::new(standard_simplex(2));
        let idx = SimplexIndex::new(x.clone(), 3);
        for i in 0..idx.len() {
            assert_eq!(idx.index_of(idx.simplex(i)), i);
        }
        assert_eq!(idx.degree_range(3).len(), x.count_simplices(3));
        assert_eq!(simplex_count(&x.counts(), 3), x.count_simplices(3));
    }

    #[test]
    fn merging_endpoints_of_interval() {
        let x = Arc::new(standard_simplex(1));
        let mut c = Congruence::on(x.clone());
        c.merge_simplices(&x.cell_simplex(0), &x.cell_simplex(1));
        let q = c.quotient("S1");
        assert_eq!(q.set.counts(), vec![1, 1]);
        assert_eq!(q.set.cell_vertices(1), vec![0, 0]);
    }

    #[test]
    fn collapsing_an_edge() {
        let x = Arc::new(standard_simplex(2));
        let mut c = Congruence::on(x.clone());
        let e01 = crate::sset::subset_cell(2, 0b011);
        let v0 = x.cell_simplex(crate::sset::subset_cell(2, 0b001));
        let deg = x.degeneracy(&v0, 0).unwrap();
        c.merge_simplices(&x.cell_simplex(e01), &deg);
        let q = c.quotient("collapsed");
        assert_eq!(q.set.counts(), vec![2, 2, 1]);
        assert!(crate::sset::is_regular(&q.set));
    }
}
