//! Generated subcomplexes, disjoint unions, pushouts and binary products.

use std::collections::HashMap;
use std::sync::Arc;

use super::congruence::{Congruence, Quotient, SimplexIndex};
use super::map::{same_set, SimplicialMap};
use super::{CellId, CellSpec, Simplex, SimplicialSet, SsetError};
use crate::delta::{self, Operator};

/// A subcomplex with its inclusion and the id translation in both directions.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub set: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
    pub old_to_new: Vec<Option<CellId>>,
    pub new_to_old: Vec<CellId>,
}

impl Subcomplex {
    /// Restate a simplex of the ambient set that lies in the subcomplex.
    pub fn restrict(&self, s: &Simplex) -> Option<Simplex> {
        self.old_to_new[s.cell].map(|c| Simplex::new(c, s.degen.clone()))
    }
}

/// The smallest subcomplex of `x` containing `seeds`, with cells kept in ambient order.
pub fn generate(x: &Arc<SimplicialSet>, seeds: &[CellId]) -> Result<Subcomplex, SsetError> {
    let mut keep = vec![false; x.num_cells()];
    let mut stack = Vec::new();
    for &s in seeds {
        if s >= x.num_cells() {
            return Err(SsetError::DanglingCell(s));
        }
        stack.push(s);
    }
    while let Some(c) = stack.pop() {
        if keep[c] {
            continue;
        }
        keep[c] = true;
        stack.extend(x.faces(c).iter().map(|f| f.cell).filter(|&f| !keep[f]));
    }
    let new_to_old: Vec<CellId> = (0..x.num_cells()).filter(|&c| keep[c]).collect();
    let mut old_to_new = vec![None; x.num_cells()];
    for (n, &o) in new_to_old.iter().enumerate() {
        old_to_new[o] = Some(n);
    }
    let specs = new_to_old
        .iter()
        .map(|&o| CellSpec {
            dim: x.cell_dim(o),
            faces: x
                .faces(o)
                .iter()
                .map(|f| Simplex::new(old_to_new[f.cell].unwrap(), f.degen.clone()))
                .collect(),
        })
        .collect();
    let set = Arc::new(SimplicialSet::new(format!("{}|sub", x.name()), specs)?);
    let inclusion = SimplicialMap::from_parts_unchecked(
        set.clone(),
        x.clone(),
        new_to_old.iter().map(|&o| x.cell_simplex(o)).collect(),
    );
    Ok(Subcomplex {
        set,
        inclusion,
        old_to_new,
        new_to_old,
    })
}

/// Disjoint union; returns the union and the id offset of each summand.
pub fn disjoint_union(name: &str, parts: &[&SimplicialSet]) -> (SimplicialSet, Vec<usize>) {
    let mut specs = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for p in parts {
        let off = specs.len();
        offsets.push(off);
        for mut spec in p.cell_specs() {
            for f in &mut spec.faces {
                f.cell += off;
            }
            specs.push(spec);
        }
    }
    let set = SimplicialSet::new(name, specs).expect("disjoint union of valid sets is valid");
    (set, offsets)
}

/// The pushout of `X <- A -> Y` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub quotient: Quotient,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    f: SimplicialMap,
    g: SimplicialMap,
    offset: usize,
}

impl Pushout {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.quotient.set
    }

    /// The map out of the pushout induced by `h : X -> Z` and `k : Y -> Z`.
    pub fn mediate(&self, h: &SimplicialMap, k: &SimplicialMap) -> Result<SimplicialMap, SsetError> {
        if !same_set(h.source(), self.f.target()) || !same_set(k.source(), self.g.target()) {
            return Err(SsetError::Incompatible("mediator legs have the wrong sources".into()));
        }
        if !same_set(h.target(), k.target()) {
            return Err(SsetError::Incompatible("mediator legs have different targets".into()));
        }
        let hf = self.f.then(h)?;
        let kg = self.g.then(k)?;
        if hf.images() != kg.images() {
            return Err(SsetError::Incompatible("legs do not agree on the common source".into()));
        }
        let images = self
            .quotient
            .reps
            .iter()
            .map(|&u| {
                if u < self.offset {
                    h.image(u).clone()
                } else {
                    k.image(u - self.offset).clone()
                }
            })
            .collect();
        SimplicialMap::new(self.set().clone(), h.target().clone(), images)
    }
}

pub fn pushout(f: &SimplicialMap, g: &SimplicialMap, name: &str) -> Result<Pushout, SsetError> {
    if !same_set(f.source(), g.source()) {
        return Err(SsetError::Incompatible("pushout legs have different sources".into()));
    }
    let x = f.target();
    let y = g.target();
    let (union, offsets) = disjoint_union(name, &[x, y]);
    let offset = offsets[1];
    let union = Arc::new(union);
    let d = union.dim().max(f.source().dim());
    let mut cong = Congruence::identity(Arc::new(SimplexIndex::new(union.clone(), d)));
    for a in 0..f.source().num_cells() {
        let s = f.image(a).clone();
        let mut t = g.image(a).clone();
        t.cell += offset;
        cong.merge_simplices(&s, &t);
    }
    let quotient = cong.quotient(name);
    let proj = &quotient.projection;
    let left = SimplicialMap::from_parts_unchecked(
        x.clone(),
        quotient.set.clone(),
        (0..x.num_cells()).map(|c| proj.image(c).clone()).collect(),
    );
    let right = SimplicialMap::from_parts_unchecked(
        y.clone(),
        quotient.set.clone(),
        (0..y.num_cells()).map(|c| proj.image(c + offset).clone()).collect(),
    );
    Ok(Pushout {
        quotient,
        left,
        right,
        f: f.clone(),
        g: g.clone(),
        offset,
    })
}

/// Binary product with projections. Cells are jointly non-degenerate pairs.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: Arc<SimplicialSet>,
    pub pr1: SimplicialMap,
    pub pr2: SimplicialMap,
    pairs: Vec<(Simplex, Simplex)>,
    lookup: HashMap<(Simplex, Simplex), CellId>,
}

impl Product {
    pub fn components(&self, c: CellId) -> &(Simplex, Simplex) {
        &self.pairs[c]
    }

    /// The product simplex with components `a` and `b`.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Result<Simplex, SsetError> {
        if a.degree() != b.degree() {
            return Err(SsetError::DegreeMismatch {
                expected: a.degree(),
                found: b.degree(),
            });
        }
        pair_in(&self.lookup, &self.pr1, &self.pr2, a, b)
    }
}

fn split_common(
    x: &SimplicialSet,
    y: &SimplicialSet,
    a: &Simplex,
    b: &Simplex,
) -> ((Simplex, Simplex), Operator) {
    let q = a.degree();
    let m = a.degen.repeat_mask() & b.degen.repeat_mask();
    let rho = Operator::degeneracy_from_repeat_mask(q, m);
    if m == 0 {
        return ((a.clone(), b.clone()), rho);
    }
    let section_mask = (0..=q as u32)
        .filter(|&i| i == 0 || m & (1 << (i - 1)) == 0)
        .fold(0u32, |acc, i| acc | (1 << i));
    let s = Operator::face_from_mask(q, section_mask);
    ((x.eval_unchecked(a, &s), y.eval_unchecked(b, &s)), rho)
}

fn pair_in(
    lookup: &HashMap<(Simplex, Simplex), CellId>,
    pr1: &SimplicialMap,
    pr2: &SimplicialMap,
    a: &Simplex,
    b: &Simplex,
) -> Result<Simplex, SsetError> {
    let (key, rho) = split_common(pr1.target(), pr2.target(), a, b);
    let c = *lookup
        .get(&key)
        .ok_or_else(|| SsetError::Incompatible(format!("no product cell for {:?}", key)))?;
    Ok(Simplex::new(c, rho))
}

pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Product {
    let mut pairs: Vec<(Simplex, Simplex)> = Vec::new();
    let mut lookup: HashMap<(Simplex, Simplex), CellId> = HashMap::new();
    let mut specs: Vec<CellSpec> = Vec::new();
    let top = if x.is_empty() || y.is_empty() { 0 } else { x.dim() + y.dim() };
    for q in 0..=top {
        if x.is_empty() || y.is_empty() {
            break;
        }
        let surj: Vec<Vec<Operator>> = (0..=q).map(|d| delta::surjections(q, d)).collect();
        for cx in 0..x.num_cells() {
            let dx = x.cell_dim(cx);
            if dx > q {
                continue;
            }
            for cy in 0..y.num_cells() {
                let dy = y.cell_dim(cy);
                if dy > q || dx + dy < q {
                    continue;
                }
                for s in &surj[dx] {
                    for t in &surj[dy] {
                        if s.repeat_mask() & t.repeat_mask() != 0 {
                            continue;
                        }
                        let a = Simplex::new(cx, s.clone());
                        let b = Simplex::new(cy, t.clone());
                        let mut faces = Vec::new();
                        if q > 0 {
                            for i in 0..=q {
                                let d = Operator::face(i, q).unwrap();
                                let fa = x.eval_unchecked(&a, &d);
                                let fb = y.eval_unchecked(&b, &d);
                                let (key, rho) = split_common(x, y, &fa, &fb);
                                faces.push(Simplex::new(lookup[&key], rho));
                            }
                        }
                        lookup.insert((a.clone(), b.clone()), pairs.len());
                        pairs.push((a, b));
                        specs.push(CellSpec { dim: q, faces });
                    }
                }
            }
        }
    }
    let set = Arc::new(
        SimplicialSet::new(format!("{}x{}", x.name(), y.name()), specs)
            .expect("product of valid sets is valid"),
    );
    let pr1 = SimplicialMap::from_parts_unchecked(set.clone(), x.clone(), pairs.iter().map(|p| p.0.clone()).collect());
    let pr2 = SimplicialMap::from_parts_unchecked(set.clone(), y.clone(), pairs.iter().map(|p| p.1.clone()).collect());
    Product {
        set,
        pr1,
        pr2,
        pairs,
        lookup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{standard_simplex, subset_cell};

    #[test]
    fn square() {
        let d1 = Arc::new(standard_simplex(1));
        let p = product(&d1, &d1);
        assert_eq!(p.set.counts(), vec![4, 5, 2]);
        assert!(SimplicialMap::new(p.set.clone(), d1.clone(), p.pr1.images().to_vec()).is_ok());
    }

    #[test]
    fn glue_two_triangles() {
        let d1 = Arc::new(standard_simplex(1));
        let d2 = Arc::new(standard_simplex(2));
        let edge = |m| crate::sset::representing_map(&d2, &d2.cell_simplex(subset_cell(2, m))).unwrap();
        let f = edge(0b011);
        let g = edge(0b011);
        assert_eq!(f.source().counts(), d1.counts());
        let po = pushout(&f, &g, "two").unwrap();
        assert_eq!(po.set().counts(), vec![4, 5, 2]);
        let k = po.mediate(&SimplicialMap::identity(d2.clone()), &SimplicialMap::identity(d2.clone()));
        assert!(k.is_ok());
    }

    #[test]
    fn generate_two_edges() {
        let d2 = Arc::new(standard_simplex(2));
        let sub = generate(&d2, &[subset_cell(2, 0b011), subset_cell(2, 0b110)]).unwrap();
        assert_eq!(sub.set.counts(), vec![3, 2]);
        assert!(generate(&d2, &[]).unwrap().set.is_empty());
    }
}
