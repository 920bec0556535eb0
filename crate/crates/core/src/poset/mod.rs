//! Finite posets, monotone maps, nerves, the sharp functor and Dwyer maps.

mod dwyer;
mod io;
mod nerve;

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::sset::SsetError;

pub use dwyer::{
    dwyer_cosieves_exhaustive, is_dwyer, omega, poset_pushout, poset_pushout_along, psi, DwyerWitness,
    PosetPushout,
};
pub use io::{parse_pmap, parse_poset, print_pmap, print_poset};
pub use nerve::{barratt, barratt_map, map_from_vertices, nerve, nerve_map, recognize_nerve, sharp, sharp_map, Nerve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not antisymmetric: {0} and {1} are distinct but comparable both ways")]
    NotAntisymmetric(String, String),
    #[error("map is not order preserving: {0} <= {1} but images are not related")]
    NotMonotone(String, String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("element count mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("not a Dwyer map: {0}")]
    NotDwyer(String),
    #[error("not the nerve of a poset: {0}")]
    NotANerve(String),
    #[error("maps do not compose: {0}")]
    Incompatible(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Sset(#[from] SsetError),
}

/// A finite partial order. `up[a]` holds every `b` with `a <= b`; `down` is its transpose.
#[derive(Clone)]
pub struct FinPoset {
    name: String,
    names: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPoset({}, {:?}, covers {:?})", self.name, self.names, self.covers())
    }
}

impl PartialEq for FinPoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for FinPoset {}

impl FinPoset {
    /// Reflexive-transitive closure of `rels`, rejected if not antisymmetric.
    pub fn from_relations(
        name: impl Into<String>,
        names: Vec<String>,
        rels: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            row.insert(a);
        }
        for &(a, b) in rels {
            if a >= n || b >= n {
                return Err(PosetError::UnknownElement(format!("{}", a.max(b))));
            }
            up[a].insert(b);
        }
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(name, names, up)
    }

    fn from_up_sets(name: impl Into<String>, names: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self, PosetError> {
        let n = names.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        for a in 0..n {
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(PosetError::NotAntisymmetric(names[a].clone(), names[b].clone()));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            names,
            up,
            down,
        })
    }

    /// The chain `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Self {
        let names = (0..=n).map(|i| i.to_string()).collect();
        let rels: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_relations(format!("[{n}]"), names, &rels).expect("chain is a poset")
    }

    pub fn antichain(k: usize) -> Self {
        let names = (0..k).map(|i| i.to_string()).collect();
        Self::from_relations(format!("antichain{k}"), names, &[]).expect("antichain is a poset")
    }

    /// Product order; element `(i, j)` has index `i * |b| + j`.
    pub fn product(a: &FinPoset, b: &FinPoset) -> Self {
        let (na, nb) = (a.len(), b.len());
        let n = na * nb;
        let mut names = Vec::with_capacity(n);
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("({},{})", a.names[i], b.names[j]));
                for i2 in a.up[i].ones() {
                    for j2 in b.up[j].ones() {
                        up[i * nb + j].insert(i2 * nb + j2);
                    }
                }
            }
        }
        Self::from_up_sets(format!("{}x{}", a.name, b.name), names, up).expect("product of posets")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    /// Covering pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let between = self.up[a].ones().any(|c| c != a && c != b && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn subset(&self, elems: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Downward closed.
    pub fn is_sieve(&self, a: &FixedBitSet) -> Result<bool, PosetError> {
        self.check_subset(a)?;
        Ok(a.ones().all(|x| self.down[x].is_subset(a)))
    }

    /// Upward closed.
    pub fn is_cosieve(&self, a: &FixedBitSet) -> Result<bool, PosetError> {
        self.check_subset(a)?;
        Ok(a.ones().all(|x| self.up[x].is_subset(a)))
    }

    fn check_subset(&self, a: &FixedBitSet) -> Result<(), PosetError> {
        match a.ones().find(|&x| x >= self.len()) {
            Some(x) => Err(PosetError::UnknownElement(x.to_string())),
            None => Ok(()),
        }
    }

    pub fn upward_closure(&self, a: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in a.ones() {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// Least upper bound, if one exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut bounds = self.up[a].clone();
        bounds.intersect_with(&self.up[b]);
        bounds.ones().find(|&u| bounds.is_subset(&self.up[u]))
    }

    /// Full subposet on the given elements, in increasing index order.
    pub fn restrict(&self, elems: &FixedBitSet) -> (FinPoset, Vec<usize>) {
        let keep: Vec<usize> = elems.ones().collect();
        let names = keep.iter().map(|&e| self.names[e].clone()).collect();
        let mut rels = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.leq(a, b) {
                    rels.push((i, j));
                }
            }
        }
        let p = FinPoset::from_relations(format!("{}|sub", self.name), names, &rels).expect("subposet");
        (p, keep)
    }
}

/// An order-preserving map.
#[derive(Clone)]
pub struct MonotoneMap {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    map: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneMap({} -> {}, {:?})", self.source.name(), self.target.name(), self.map)
    }
}

impl MonotoneMap {
    pub fn new(source: Arc<FinPoset>, target: Arc<FinPoset>, map: Vec<usize>) -> Result<Self, PosetError> {
        if map.len() != source.len() {
            return Err(PosetError::SizeMismatch {
                expected: source.len(),
                found: map.len(),
            });
        }
        if let Some(&b) = map.iter().find(|&&b| b >= target.len()) {
            return Err(PosetError::UnknownElement(b.to_string()));
        }
        for a in 0..source.len() {
            for a2 in source.up(a).ones() {
                if !target.leq(map[a], map[a2]) {
                    return Err(PosetError::NotMonotone(
                        source.element_name(a).to_string(),
                        source.element_name(a2).to_string(),
                    ));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let map = (0..p.len()).collect();
        Self {
            source: p.clone(),
            target: p,
            map,
        }
    }

    /// The unique map to a one-element poset.
    pub fn terminal(p: Arc<FinPoset>) -> Self {
        let map = vec![0; p.len()];
        Self {
            source: p,
            target: Arc::new(FinPoset::chain(0)),
            map,
        }
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn at(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        if *self.target != *then.source {
            return Err(PosetError::Incompatible(format!(
                "target {} is not source {}",
                self.target.name(),
                then.source.name()
            )));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&b| then.map[b]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.map.iter().all(|&b| !seen.put(b))
    }

    /// Injective and order reflecting.
    pub fn is_embedding(&self) -> bool {
        self.is_injective()
            && (0..self.source.len()).all(|a| {
                (0..self.source.len()).all(|b| self.source.leq(a, b) == self.target.leq(self.map[a], self.map[b]))
            })
    }

    pub fn image(&self) -> FixedBitSet {
        self.target.subset(self.map.iter().copied())
    }

    pub(crate) fn from_parts_unchecked(source: Arc<FinPoset>, target: Arc<FinPoset>, map: Vec<usize>) -> Self {
        Self { source, target, map }
    }
}

/// The poset `P × [1]` with the end inclusions `i_0` and `i_1`.
pub fn cylinder_poset(p: &Arc<FinPoset>) -> (Arc<FinPoset>, MonotoneMap, MonotoneMap) {
    let w = Arc::new(FinPoset::product(p, &FinPoset::chain(1)));
    let i0 = MonotoneMap::from_parts_unchecked(p.clone(), w.clone(), (0..p.len()).map(|a| 2 * a).collect());
    let i1 = MonotoneMap::from_parts_unchecked(p.clone(), w.clone(), (0..p.len()).map(|a| 2 * a + 1).collect());
    (w, i0, i1)
}

/// All posets on at most `max` elements up to isomorphism, smallest first.
pub fn posets_up_to_iso(max: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    for n in 0..=max {
        let mut seen = std::collections::HashSet::new();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        // every poset has a linear extension, so relations a < b with a < b as indices suffice
        for bits in 0u64..(1u64 << pairs.len()) {
            let rels: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let closed = transitive(n, &rels);
            if closed != rels_mask(&pairs, &rels) {
                continue;
            }
            let key = canonical_key(n, &rels);
            if seen.insert(key) {
                let names = (0..n).map(|i| i.to_string()).collect();
                out.push(
                    FinPoset::from_relations(format!("P{n}_{}", seen.len() - 1), names, &rels)
                        .expect("naturally labelled order"),
                );
            }
        }
    }
    out
}

fn rels_mask(pairs: &[(usize, usize)], rels: &[(usize, usize)]) -> Vec<bool> {
    pairs.iter().map(|p| rels.contains(p)).collect()
}

fn transitive(n: usize, rels: &[(usize, usize)]) -> Vec<bool> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in rels {
        m[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.iter().map(|&(a, b)| m[a][b]).collect()
}

fn canonical_key(n: usize, rels: &[(usize, usize)]) -> Vec<u64> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut rows = vec![0u64; n];
        for &(a, b) in rels {
            rows[perm[a]] |= 1 << perm[b];
        }
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_antisymmetry() {
        let names = vec!["a".into(), "b".into(), "c".into()];
        let p = FinPoset::from_relations("p", names.clone(), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        assert!(matches!(
            FinPoset::from_relations("q", names, &[(0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(..))
        ));
    }

    #[test]
    fn joins() {
        let v = vec!["a".into(), "b".into(), "c".into()];
        let anti = FinPoset::from_relations("anti", v, &[]).unwrap();
        assert_eq!(anti.join(0, 1), None);
        assert_eq!(anti.join(2, 2), Some(2));
    }

    #[test]
    fn sieves() {
        let (w, _i0, i1) = cylinder_poset(&Arc::new(FinPoset::chain(1)));
        assert!(w.is_cosieve(&i1.image()).unwrap());
        assert!(!w.is_sieve(&i1.image()).unwrap());
    }

    #[test]
    fn poset_census() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| posets_up_to_iso(n).iter().filter(|p| p.len() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn monotone_check() {
        let c = Arc::new(FinPoset::chain(1));
        assert!(MonotoneMap::new(c.clone(), c.clone(), vec![1, 0]).is_err());
        assert!(MonotoneMap::new(c.clone(), c, vec![1, 1]).is_ok());
    }
}
