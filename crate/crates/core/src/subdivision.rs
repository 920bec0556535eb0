//! The Kan subdivision `Sd`, and the natural maps `b_X`, `d_X` and `t_X`.
//!
//! A cell of `Sd X` is a pair `(x, μ_0 < ... < μ_q)` with `x` a cell of `X` of
//! dimension `n` and `μ_j` strictly increasing non-empty subsets of `[n]` with
//! `μ_q = [n]`. A general simplex `(s, weak chain)` with `s` any simplex of `X` is
//! brought to this form by [`Subdivision::normalize`].

use std::collections::HashMap;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::delta::Operator;
use crate::poset::{barratt, Nerve};
use crate::sset::{
    full_mask, find_isomorphism, is_isomorphism, subset_index, subset_order, CellId, CellSpec, Congruence,
    Quotient, Simplex, SimplexIndex, SimplicialMap, SimplicialSet, SsetError,
};

pub type Chain = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SdCell {
    pub carrier: CellId,
    pub chain: Chain,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub base: Arc<SimplicialSet>,
    pub set: Arc<SimplicialSet>,
    cells: Vec<SdCell>,
    lookup: HashMap<SdCell, CellId>,
}

/// Positions of the bits of `m` inside `within`, packed to the bottom.
fn compress(m: u32, within: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for b in 0..32 {
        if within & (1 << b) != 0 {
            if m & (1 << b) != 0 {
                out |= 1 << k;
            }
            k += 1;
        }
    }
    out
}

/// Image of a subset of `[k]` under a monotone operator out of `[k]`.
fn push_mask(m: u32, op: &Operator) -> u32 {
    op.values()
        .iter()
        .enumerate()
        .filter(|(j, _)| m & (1 << j) != 0)
        .fold(0, |acc, (_, &v)| acc | (1 << v))
}

/// Image of a subset of `[n-1]` under `δ_i`.
fn expand(m: u32, i: usize) -> u32 {
    (m & ((1 << i) - 1)) | ((m >> i) << (i + 1))
}

fn chains_ending_at(full: u32) -> Vec<Chain> {
    // chains μ_0 < ... < μ_q = full, built from the top down
    let mut out = Vec::new();
    let mut stack: Vec<Chain> = vec![smallvec::smallvec![full]];
    while let Some(ch) = stack.pop() {
        let bottom = ch[0];
        let mut sub = (bottom - 1) & bottom;
        while sub != 0 {
            let mut next: Chain = SmallVec::with_capacity(ch.len() + 1);
            next.push(sub);
            next.extend_from_slice(&ch);
            stack.push(next);
            sub = (sub - 1) & bottom;
        }
        out.push(ch);
    }
    out
}

impl Subdivision {
    pub fn cell(&self, c: CellId) -> &SdCell {
        &self.cells[c]
    }

    pub fn cells(&self) -> &[SdCell] {
        &self.cells
    }

    pub fn cell_of(&self, carrier: CellId, chain: &[u32]) -> Option<CellId> {
        self.lookup
            .get(&SdCell {
                carrier,
                chain: chain.iter().copied().collect(),
            })
            .copied()
    }

    /// The vertex `(x, [n])` of `Sd X` standing for the cell `x`.
    pub fn vertex_of(&self, x: CellId) -> CellId {
        self.cell_of(x, &[full_mask(self.base.cell_dim(x))]).expect("every cell has a barycenter")
    }

    /// Normal form of the simplex given by a simplex `s` of `X` of degree `n` and a weakly
    /// increasing chain of non-empty subsets of `[n]`: pull back along the top of the chain,
    /// reduce the carrier, push the chain through its degeneracy part and split off repeats.
    pub fn normalize(&self, s: &Simplex, chain: &[u32]) -> Simplex {
        let n = s.degree();
        let top = *chain.last().expect("non-empty chain");
        let phi = Operator::from_image(n, top).expect("subset of [n]");
        let z = self.base.eval_unchecked(s, &phi);
        let mut pushed: Chain = SmallVec::with_capacity(chain.len());
        let mut repeats = 0u32;
        for (j, &m) in chain.iter().enumerate() {
            let v = push_mask(compress(m, top), &z.degen);
            if pushed.last() == Some(&v) {
                repeats |= 1 << (j - 1);
            } else {
                pushed.push(v);
            }
        }
        let key = SdCell {
            carrier: z.cell,
            chain: pushed,
        };
        let cell = self.lookup[&key];
        Simplex::new(cell, Operator::degeneracy_from_repeat_mask(chain.len() - 1, repeats))
    }
}

pub fn sd(x: &Arc<SimplicialSet>) -> Subdivision {
    let mut cells: Vec<SdCell> = Vec::new();
    for c in 0..x.num_cells() {
        for chain in chains_ending_at(full_mask(x.cell_dim(c))) {
            cells.push(SdCell { carrier: c, chain });
        }
    }
    cells.sort_by(|a, b| (a.chain.len(), a.carrier, &a.chain[..]).cmp(&(b.chain.len(), b.carrier, &b.chain[..])));
    let lookup: HashMap<SdCell, CellId> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut sub = Subdivision {
        base: x.clone(),
        set: Arc::new(SimplicialSet::empty("")),
        cells,
        lookup,
    };
    let specs = sub
        .cells
        .iter()
        .map(|c| {
            let q = c.chain.len() - 1;
            let faces = if q == 0 {
                Vec::new()
            } else {
                let s = x.cell_simplex(c.carrier);
                (0..=q)
                    .map(|i| {
                        let mut ch = c.chain.clone();
                        ch.remove(i);
                        sub.normalize(&s, &ch)
                    })
                    .collect()
            };
            CellSpec { dim: q, faces }
        })
        .collect();
    sub.set = Arc::new(SimplicialSet::new(format!("Sd({})", x.name()), specs).expect("subdivision is valid"));
    sub
}

/// `Sd f`: `(x, chain)` goes to the normal form of `(f(x), chain)`.
pub fn sd_map(f: &SimplicialMap, source: &Subdivision, target: &Subdivision) -> Result<SimplicialMap, SsetError> {
    if **f.source() != *source.base || **f.target() != *target.base {
        return Err(SsetError::Incompatible("subdivisions do not match the map".into()));
    }
    let images = source
        .cells
        .iter()
        .map(|c| target.normalize(f.image(c.carrier), &c.chain))
        .collect();
    SimplicialMap::new(source.set.clone(), target.set.clone(), images)
}

/// `b_X : Sd X -> BX`, `(x, μ_0 ≤ ... ≤ μ_q)` to the chain `(xμ_0)♯ ≤ ... ≤ (xμ_q)♯`.
pub fn b_nat(sd: &Subdivision, bx: &Nerve) -> Result<SimplicialMap, SsetError> {
    let x = &sd.base;
    let images = sd
        .cells
        .iter()
        .map(|c| {
            let seq: Vec<usize> = c.chain.iter().map(|&m| x.face_by_mask(c.carrier, m).cell).collect();
            bx.simplex_of_chain(&seq).map_err(SsetError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(sd.set.clone(), bx.sset.clone(), images)
}

/// `d_X : Sd X -> X`, sending `(x, chain)` to `x·α` with `α(j) = max μ_j`.
pub fn last_vertex(sd: &Subdivision) -> Result<SimplicialMap, SsetError> {
    let x = &sd.base;
    let images = sd
        .cells
        .iter()
        .map(|c| {
            let vals: Vec<usize> = c.chain.iter().map(|&m| 31 - m.leading_zeros() as usize).collect();
            let alpha = Operator::new(&vals, x.cell_dim(c.carrier))?;
            x.eval_cell(c.carrier, &alpha)
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(sd.set.clone(), x.clone(), images)
}

/// `t_X : DSd X -> BX`, the map with `t ∘ η = b_X`.
pub fn t_nat(eta: &SimplicialMap, b: &SimplicialMap) -> Result<SimplicialMap, SsetError> {
    SimplicialMap::factor_through(eta, b)
}

/// The subdivision rebuilt as a colimit: one copy of `BΔ[n]` per cell, glued along
/// `B(δ_i)` and `B` of the degeneracy part of each stored face. Independent of
/// [`Subdivision::normalize`].
pub fn sd_by_colimit(x: &Arc<SimplicialSet>) -> Quotient {
    let mut copies: HashMap<usize, Nerve> = HashMap::new();
    for c in 0..x.num_cells() {
        let n = x.cell_dim(c);
        copies.entry(n).or_insert_with(|| barratt(&crate::sset::standard_simplex(n)));
        if n > 0 {
            copies
                .entry(n - 1)
                .or_insert_with(|| barratt(&crate::sset::standard_simplex(n - 1)));
        }
    }
    let parts: Vec<&SimplicialSet> = (0..x.num_cells()).map(|c| &*copies[&x.cell_dim(c)].sset).collect();
    let (union, offsets) = crate::sset::disjoint_union(&format!("Sd'({})", x.name()), &parts);
    let union = Arc::new(union);
    let index = Arc::new(SimplexIndex::new(union.clone(), union.dim()));
    let mut cong = Congruence::identity(index);
    let orders: HashMap<usize, (Vec<u32>, Vec<usize>)> = copies
        .keys()
        .map(|&n| (n, (subset_order(n), subset_index(n))))
        .collect();
    for c in 0..x.num_cells() {
        let n = x.cell_dim(c);
        if n == 0 {
            continue;
        }
        let small = &copies[&(n - 1)];
        let (small_order, _) = &orders[&(n - 1)];
        let (_, big_index) = &orders[&n];
        for (i, face) in x.faces(c).iter().enumerate() {
            let zdim = x.cell_dim(face.cell);
            let (_, zindex) = &orders[&zdim];
            let zcopy = &copies[&zdim];
            for cell in 0..small.sset.num_cells() {
                let masks: Vec<u32> = small.chain(cell).iter().map(|&e| small_order[e]).collect();
                let left: Vec<usize> = masks.iter().map(|&m| big_index[expand(m, i) as usize]).collect();
                let left = copies[&n].cell_of_chain(&left).expect("strict chain");
                let right: Vec<usize> = masks.iter().map(|&m| zindex[push_mask(m, &face.degen) as usize]).collect();
                let right = zcopy.simplex_of_chain(&right).expect("weak chain");
                let s = Simplex::cell(offsets[c] + left, masks.len() - 1);
                let t = Simplex::new(offsets[face.cell] + right.cell, right.degen);
                cong.merge_simplices(&s, &t);
            }
        }
    }
    cong.quotient(format!("Sd'({})", x.name()))
}

/// The comparison `Sd X -> colimit` sending `(x, chain)` to the class of `chain` in copy `x`.
pub fn compare_with_colimit(sd: &Subdivision) -> Result<SimplicialMap, SsetError> {
    let x = &sd.base;
    let oracle = sd_by_colimit(x);
    let mut copies: HashMap<usize, Nerve> = HashMap::new();
    let mut offsets = Vec::with_capacity(x.num_cells());
    let mut off = 0;
    for c in 0..x.num_cells() {
        let n = x.cell_dim(c);
        let copy = copies.entry(n).or_insert_with(|| barratt(&crate::sset::standard_simplex(n)));
        offsets.push(off);
        off += copy.sset.num_cells();
    }
    let images = sd
        .cells
        .iter()
        .map(|c| {
            let n = x.cell_dim(c.carrier);
            let idx = subset_index(n);
            let elems: Vec<usize> = c.chain.iter().map(|&m| idx[m as usize]).collect();
            let local = copies[&n].cell_of_chain(&elems).expect("strict chain");
            oracle.projection.image(offsets[c.carrier] + local).clone()
        })
        .collect();
    SimplicialMap::new(sd.set.clone(), oracle.set.clone(), images)
}

/// Whether the normal-form subdivision agrees with the colimit construction, both by
/// the canonical comparison and by an independent isomorphism search.
pub fn agrees_with_colimit(sd: &Subdivision) -> bool {
    match compare_with_colimit(sd) {
        Ok(f) => is_isomorphism(&f) && find_isomorphism(&sd.set, f.target()).is_some(),
        Err(_) => false,
    }
}
