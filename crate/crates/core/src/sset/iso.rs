//! Isomorphism search by colour refinement and backtracking over cell assignments.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::predicates::{is_degreewise_injective, is_degreewise_surjective};
use super::{CellId, SimplicialSet};

pub fn is_isomorphism(f: &SimplicialMap) -> bool {
    f.source().num_cells() == f.target().num_cells() && is_degreewise_injective(f) && is_degreewise_surjective(f)
}

fn cofaces(x: &SimplicialSet) -> Vec<Vec<(CellId, u64)>> {
    let mut out = vec![Vec::new(); x.num_cells()];
    for c in 0..x.num_cells() {
        for (i, f) in x.faces(c).iter().enumerate() {
            out[f.cell].push((c, ((i as u64) << 32) | f.degen.repeat_mask() as u64));
        }
    }
    out
}

/// Stable colours shared between the two sets, so equal colours are comparable.
fn refine(x: &SimplicialSet, y: &SimplicialSet) -> (Vec<u32>, Vec<u32>) {
    let sets = [x, y];
    let cof = [cofaces(x), cofaces(y)];
    let mut colours: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let mut table: HashMap<Vec<u64>, u32> = HashMap::new();
    for k in 0..2 {
        let s = sets[k];
        colours[k] = (0..s.num_cells())
            .map(|c| {
                let mut key = vec![s.cell_dim(c) as u64, cof[k][c].len() as u64];
                key.extend(s.faces(c).iter().map(|f| f.degen.repeat_mask() as u64));
                let next = table.len() as u32;
                *table.entry(key).or_insert(next)
            })
            .collect();
    }
    let mut distinct = table.len();
    loop {
        let mut table: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut next_colours: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for k in 0..2 {
            let s = sets[k];
            let col = &colours[k];
            next_colours[k] = (0..s.num_cells())
                .map(|c| {
                    let mut key = vec![col[c] as u64];
                    key.extend(s.faces(c).iter().map(|f| col[f.cell] as u64));
                    let mut up: Vec<u64> = cof[k][c].iter().map(|&(d, tag)| tag ^ ((col[d] as u64) << 40)).collect();
                    up.sort_unstable();
                    key.extend(up);
                    let next = table.len() as u32;
                    *table.entry(key).or_insert(next)
                })
                .collect();
        }
        colours = next_colours;
        if table.len() == distinct {
            break;
        }
        distinct = table.len();
    }
    let [a, b] = colours;
    (a, b)
}

struct Search<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    cx: &'a [u32],
    cy: &'a [u32],
    fwd: Vec<Option<CellId>>,
    bwd: Vec<Option<CellId>>,
    trail: Vec<CellId>,
}

impl Search<'_> {
    fn propagate(&mut self, a: CellId, b: CellId) -> bool {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            match (self.fwd[a], self.bwd[b]) {
                (Some(t), _) if t == b => continue,
                (Some(_), _) | (_, Some(_)) => return false,
                _ => {}
            }
            if self.cx[a] != self.cy[b] {
                return false;
            }
            self.fwd[a] = Some(b);
            self.bwd[b] = Some(a);
            self.trail.push(a);
            for (fa, fb) in self.x.faces(a).iter().zip(self.y.faces(b)) {
                if fa.degen != fb.degen {
                    return false;
                }
                work.push((fa.cell, fb.cell));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            let b = self.fwd[a].take().unwrap();
            self.bwd[b] = None;
        }
    }
}

/// Some isomorphism `x -> y`, if one exists.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let (cx, cy) = refine(x, y);
    let mut hx: Vec<u32> = cx.clone();
    let mut hy: Vec<u32> = cy.clone();
    hx.sort_unstable();
    hy.sort_unstable();
    if hx != hy {
        return None;
    }
    let mut by_colour: HashMap<u32, Vec<CellId>> = HashMap::new();
    for (c, &col) in cy.iter().enumerate() {
        by_colour.entry(col).or_default().push(c);
    }
    let mut order: Vec<CellId> = (0..x.num_cells()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(x.cell_dim(c)), by_colour[&cx[c]].len(), c));

    let mut st = Search {
        x,
        y,
        cx: &cx,
        cy: &cy,
        fwd: vec![None; x.num_cells()],
        bwd: vec![None; y.num_cells()],
        trail: Vec::new(),
    };
    // frames: (position in order, candidate index, trail mark)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();
    let mut pos = 0;
    let mut start = 0;
    loop {
        while pos < order.len() && st.fwd[order[pos]].is_some() {
            pos += 1;
        }
        if pos == order.len() {
            break;
        }
        let a = order[pos];
        let list = &by_colour[&cx[a]];
        let mark = st.trail.len();
        let mut chosen = None;
        for (k, &b) in list.iter().enumerate().skip(start) {
            if st.bwd[b].is_some() {
                continue;
            }
            if st.propagate(a, b) {
                chosen = Some(k);
                break;
            }
            st.undo(mark);
        }
        match chosen {
            Some(k) => {
                frames.push((pos, k, mark));
                start = 0;
            }
            None => {
                let (p, k, m) = frames.pop()?;
                st.undo(m);
                pos = p;
                start = k + 1;
            }
        }
    }
    let images = (0..x.num_cells())
        .map(|c| y.cell_simplex(st.fwd[c].unwrap()))
        .collect();
    let f = SimplicialMap::new(x.clone(), y.clone(), images).ok()?;
    debug_assert!(is_isomorphism(&f));
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, product, standard_simplex};

    #[test]
    fn relabelled_square() {
        let d1 = Arc::new(standard_simplex(1));
        let p = product(&d1, &d1);
        let f = find_isomorphism(&p.set, &p.set).unwrap();
        assert!(is_isomorphism(&f));
    }

    #[test]
    fn distinguishes_shapes() {
        let a = boundary(2).set;
        let b = Arc::new(standard_simplex(2));
        assert!(find_isomorphism(&a, &b).is_none());
    }
}
