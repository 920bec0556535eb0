//! Nerves of posets, the poset of cells `X♯` and the Barratt nerve `BX = N(X♯)`.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{FinPoset, MonotoneMap, PosetError};
use crate::delta::Operator;
use crate::sset::{is_isomorphism, CellId, CellSpec, Simplex, SimplicialMap, SimplicialSet, SsetError};

/// The nerve of a poset together with the chain carried by each cell.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub poset: Arc<FinPoset>,
    pub sset: Arc<SimplicialSet>,
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, CellId>,
}

impl Nerve {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.sset = Arc::new((*self.sset).clone().with_name(name));
        self
    }

    pub fn chain(&self, c: CellId) -> &[usize] {
        &self.chains[c]
    }

    pub fn cell_of_chain(&self, chain: &[usize]) -> Option<CellId> {
        self.index.get(chain).copied()
    }

    /// The vertex cell of an element.
    pub fn vertex(&self, a: usize) -> CellId {
        self.index[&vec![a]]
    }

    /// The simplex given by a weakly increasing sequence of elements.
    pub fn simplex_of_chain(&self, seq: &[usize]) -> Result<Simplex, PosetError> {
        if seq.is_empty() {
            return Err(PosetError::Incompatible("empty chain".into()));
        }
        for w in seq.windows(2) {
            if !self.poset.leq(w[0], w[1]) {
                return Err(PosetError::NotMonotone(
                    self.poset.element_name(w[0]).to_string(),
                    self.poset.element_name(w[1]).to_string(),
                ));
            }
        }
        let mut strict: Vec<usize> = Vec::with_capacity(seq.len());
        let mut repeats = 0u32;
        for (j, &a) in seq.iter().enumerate() {
            if strict.last() == Some(&a) {
                repeats |= 1 << (j - 1);
            } else {
                strict.push(a);
            }
        }
        let cell = self.index[&strict];
        Ok(Simplex::new(cell, Operator::degeneracy_from_repeat_mask(seq.len() - 1, repeats)))
    }
}

/// Cells of dimension `q` are the chains `a_0 < ... < a_q`, ordered by length and then
/// lexicographically by element index.
pub fn nerve(p: Arc<FinPoset>) -> Nerve {
    let n = p.len();
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|a| vec![a]).collect()];
    loop {
        let last = by_len.last().unwrap();
        let mut next = Vec::new();
        for ch in last {
            let top = *ch.last().unwrap();
            for b in p.up(top).ones() {
                if b != top {
                    let mut c = ch.clone();
                    c.push(b);
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        by_len.push(next);
    }
    let chains: Vec<Vec<usize>> = by_len.into_iter().flatten().collect();
    let index: HashMap<Vec<usize>, CellId> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let specs = chains
        .iter()
        .map(|ch| {
            let dim = ch.len() - 1;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut f = ch.clone();
                        f.remove(i);
                        Simplex::cell(index[&f], dim - 1)
                    })
                    .collect()
            };
            CellSpec { dim, faces }
        })
        .collect();
    let sset = Arc::new(SimplicialSet::new(format!("N({})", p.name()), specs).expect("nerve is valid"));
    Nerve {
        poset: p,
        sset,
        chains,
        index,
    }
}

/// The map into a nerve determined by where the vertices go.
pub fn map_from_vertices(
    source: &Arc<SimplicialSet>,
    target: &Nerve,
    vertex_image: &[usize],
) -> Result<SimplicialMap, PosetError> {
    let images = (0..source.num_cells())
        .map(|c| {
            let seq: Vec<usize> = source.cell_vertices(c).iter().map(|&v| vertex_image[v]).collect();
            target.simplex_of_chain(&seq)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(source.clone(), target.sset.clone(), images)?)
}

pub fn nerve_map(f: &MonotoneMap, source: &Nerve, target: &Nerve) -> Result<SimplicialMap, PosetError> {
    if **f.source() != *source.poset || **f.target() != *target.poset {
        return Err(PosetError::Incompatible("nerves do not match the map".into()));
    }
    let images = source
        .chains
        .iter()
        .map(|ch| {
            let seq: Vec<usize> = ch.iter().map(|&a| f.at(a)).collect();
            target.simplex_of_chain(&seq)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(source.sset.clone(), target.sset.clone(), images)?)
}

/// `X♯`: cells ordered by the face relation. Element `c` is cell `c`.
pub fn sharp(x: &SimplicialSet) -> FinPoset {
    let n = x.num_cells();
    let mut down: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for d in 0..=x.dim() {
        for &c in x.cells_of_dim(d) {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(c);
            for f in x.faces(c) {
                row.union_with(&down[f.cell]);
            }
            down[c] = row;
        }
    }
    let mut rels = Vec::new();
    for (c, row) in down.iter().enumerate() {
        for b in row.ones() {
            rels.push((b, c));
        }
    }
    let names = (0..n).map(|c| c.to_string()).collect();
    FinPoset::from_relations(format!("{}#", x.name()), names, &rels).expect("face relation is a partial order")
}

/// `f♯ : X♯ -> Y♯`, cell `x` to `f(x)♯`.
pub fn sharp_map(f: &SimplicialMap, source: Arc<FinPoset>, target: Arc<FinPoset>) -> Result<MonotoneMap, PosetError> {
    let map = f.images().iter().map(|s| s.cell).collect();
    MonotoneMap::new(source, target, map)
}

/// `BX = N(X♯)`.
pub fn barratt(x: &SimplicialSet) -> Nerve {
    nerve(Arc::new(sharp(x))).renamed(format!("B({})", x.name()))
}

pub fn barratt_map(f: &SimplicialMap, source: &Nerve, target: &Nerve) -> Result<SimplicialMap, PosetError> {
    let phi = sharp_map(f, source.poset.clone(), target.poset.clone())?;
    nerve_map(&phi, source, target)
}

/// If `x` is isomorphic to the nerve of its vertex poset, return that poset and the
/// isomorphism `x -> NP` that is the identity on vertices.
pub fn recognize_nerve(x: &Arc<SimplicialSet>) -> Result<(Nerve, SimplicialMap), PosetError> {
    let verts = x.cells_of_dim(0).to_vec();
    let mut pos = vec![usize::MAX; x.num_cells()];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let mut rels = Vec::new();
    for &e in x.cells_of_dim(1) {
        let vs = x.cell_vertices(e);
        rels.push((pos[vs[0]], pos[vs[1]]));
    }
    let names = verts.iter().map(|v| v.to_string()).collect();
    let p = FinPoset::from_relations(format!("{}#0", x.name()), names, &rels)
        .map_err(|e| PosetError::NotANerve(e.to_string()))?;
    let np = nerve(Arc::new(p));
    let mut vertex_image = vec![0; x.num_cells()];
    for &v in &verts {
        vertex_image[v] = pos[v];
    }
    let f = map_from_vertices(x, &np, &vertex_image).map_err(|e| PosetError::NotANerve(e.to_string()))?;
    if !is_isomorphism(&f) {
        return Err(PosetError::NotANerve(format!("{} is not isomorphic to the nerve of its vertex poset", x.name())));
    }
    Ok((np, f))
}

impl From<PosetError> for SsetError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Sset(s) => s,
            other => SsetError::Incompatible(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, sphere, standard_simplex};

    #[test]
    fn nerve_of_chain_is_standard_simplex() {
        for n in 0..4 {
            let nv = nerve(Arc::new(FinPoset::chain(n)));
            assert_eq!(*nv.sset, standard_simplex(n));
        }
    }

    #[test]
    fn barratt_counts() {
        let b = barratt(&standard_simplex(2));
        assert_eq!(b.sset.counts(), vec![7, 12, 6]);
        assert_eq!(sharp(&boundary(2).set).len(), 6);
        let s = sharp(&sphere(1).unwrap());
        assert_eq!(s.len(), 2);
        assert!(s.leq(0, 1));
    }

    #[test]
    fn weak_chains() {
        let nv = nerve(Arc::new(FinPoset::chain(2)));
        let s = nv.simplex_of_chain(&[0, 0, 2]).unwrap();
        assert_eq!(s.degen, Operator::degeneracy(0, 1).unwrap());
        assert!(nv.simplex_of_chain(&[2, 0]).is_err());
    }

    #[test]
    fn recognizes_nerves() {
        let d = Arc::new(standard_simplex(2));
        assert!(recognize_nerve(&d).is_ok());
        assert!(recognize_nerve(&boundary(2).set).is_err());
        assert!(recognize_nerve(&Arc::new(sphere(1).unwrap())).is_err());
    }
}
