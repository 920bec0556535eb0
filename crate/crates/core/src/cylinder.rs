//! Backwards mapping cylinders of nerves of monotone maps.
//!
//! For `φ : P -> R` the topological cylinder `T(Nφ)` is the pushout of
//! `NP × Δ[1] <- NP -> NR` along `i_0`, and the reduced cylinder `M(Nφ)` is the nerve
//! of the poset pushout `P × [1] ⊔_P R`. The same comparison is available for any
//! injective `k : P -> Q` in place of `i_0`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::delta::Operator;
use crate::desing::{desingularize, DesingError, DesingResult};
use crate::poset::{
    cylinder_poset, map_from_vertices, nerve, nerve_map, poset_pushout, psi, recognize_nerve, sharp, sharp_map,
    FinPoset, MonotoneMap, Nerve, PosetError, PosetPushout,
};
use crate::sset::{
    generate, injective_in_degree, is_isomorphism, product,
    pushout, representing_map, sphere, standard_simplex, surjective_in_degree, CellId, Product, Pushout, Simplex,
    SimplicialMap, SimplicialSet, SsetError,
};

#[derive(Debug, Error)]
pub enum CylinderError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Sset(#[from] SsetError),
    #[error(transparent)]
    Desing(#[from] DesingError),
}

/// `NQ ⊔_{NP} NR` next to `N(Q ⊔_P R)` and the canonical comparison between them.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub np: Nerve,
    pub nr: Nerve,
    /// The simplicial-set pushout; `left` comes from the `Q` side, `right` from `NR`.
    pub t: Pushout,
    pub poset_pushout: PosetPushout,
    pub m: Nerve,
    /// `cr : T -> M`.
    pub cr: SimplicialMap,
}

/// The topological and reduced cylinders of `φ` with the cylinder reduction map.
#[derive(Clone, Debug)]
pub struct CylinderBundle {
    pub phi: MonotoneMap,
    pub product: Product,
    /// `i_0, i_1 : NP -> NP × Δ[1]`.
    pub i0: SimplicialMap,
    pub i1: SimplicialMap,
    pub comparison: Comparison,
}

impl CylinderBundle {
    pub fn t(&self) -> &Arc<SimplicialSet> {
        self.comparison.t.set()
    }

    pub fn m(&self) -> &Arc<SimplicialSet> {
        &self.comparison.m.sset
    }

    pub fn cr(&self) -> &SimplicialMap {
        &self.comparison.cr
    }

    /// `NR -> T`, the end glued along `φ`.
    pub fn front(&self) -> &SimplicialMap {
        &self.comparison.t.right
    }

    /// `NP -> T` through `i_1`.
    pub fn back(&self) -> SimplicialMap {
        self.i1.then(&self.comparison.t.left).expect("i_1 lands in the product")
    }

    /// `cr` restricted to both ends equals the nerve of the corresponding poset leg.
    pub fn legs_agree(&self) -> bool {
        let c = &self.comparison;
        let (_, _, i1) = cylinder_poset(&c.np.poset);
        let front = self.front().then(&c.cr).unwrap();
        let back = self.back().then(&c.cr).unwrap();
        let want_front = nerve_map(&c.poset_pushout.leg_r, &c.nr, &c.m).unwrap();
        let back_leg = i1.then(&c.poset_pushout.leg_q).unwrap();
        let want_back = nerve_map(&back_leg, &c.np, &c.m).unwrap();
        front.images() == want_front.images() && back.images() == want_back.images()
    }
}

fn compare(
    np: Nerve,
    nr: Nerve,
    a_incl: &SimplicialMap,
    a_vertex: &[usize],
    k: &MonotoneMap,
    phi: &MonotoneMap,
    name: &str,
) -> Result<Comparison, CylinderError> {
    let nphi = nerve_map(phi, &np, &nr)?;
    let t = pushout(a_incl, &nphi, name)?;
    let pp = poset_pushout(k, phi)?;
    let m = nerve(pp.poset.clone()).renamed(format!("M({name})"));
    let a = a_incl.target();
    let mut vertex_image = vec![0; a.num_cells()];
    for &v in a.cells_of_dim(0) {
        vertex_image[v] = pp.leg_q.at(a_vertex[v]);
    }
    let h = map_from_vertices(a, &m, &vertex_image)?;
    let g = nerve_map(&pp.leg_r, &nr, &m)?;
    let cr = t.mediate(&h, &g)?;
    Ok(Comparison {
        np,
        nr,
        t,
        poset_pushout: pp,
        m,
        cr,
    })
}

fn vertex_index_of_interval(d1: &SimplicialSet, v: CellId) -> usize {
    // the cells of Δ[1] are its faces; a vertex is the face with image {i}
    let s = d1.cell_simplex(v);
    let top = d1.cells_of_dim(1)[0];
    (0..2)
        .find(|&i| d1.eval_cell(top, &Operator::vertex(i, 1).unwrap()).unwrap() == s)
        .expect("vertex of the interval")
}

/// The bundle `T(Nφ)`, `M(Nφ)`, `cr`.
pub fn cylinder_reduction(phi: &MonotoneMap) -> Result<CylinderBundle, CylinderError> {
    let p = phi.source().clone();
    let np = nerve(p.clone());
    let nr = nerve(phi.target().clone());
    let d1 = Arc::new(standard_simplex(1));
    let prod = product(&np.sset, &d1);
    let top = d1.cells_of_dim(1)[0];
    let ends: Vec<Simplex> = (0..2)
        .map(|i| d1.eval_cell(top, &Operator::vertex(i, 1).unwrap()).unwrap())
        .collect();
    let end_map = |e: usize| -> Result<SimplicialMap, SsetError> {
        let images = (0..np.sset.num_cells())
            .map(|c| {
                let d = np.sset.cell_dim(c);
                prod.pair(
                    &np.sset.cell_simplex(c),
                    &Simplex::new(ends[e].cell, Operator::terminal(d)),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialMap::new(np.sset.clone(), prod.set.clone(), images)
    };
    let i0 = end_map(0)?;
    let i1 = end_map(1)?;
    let (_, k, _) = cylinder_poset(&p);
    let mut a_vertex = vec![0; prod.set.num_cells()];
    for &v in prod.set.cells_of_dim(0) {
        let (s, t) = prod.components(v);
        let elem = np.chain(s.cell)[0];
        a_vertex[v] = 2 * elem + vertex_index_of_interval(&d1, t.cell);
    }
    let name = format!("T({}->{})", p.name(), phi.target().name());
    let comparison = compare(np, nr, &i0, &a_vertex, &k, phi, &name)?;
    Ok(CylinderBundle {
        phi: phi.clone(),
        product: prod,
        i0,
        i1,
        comparison,
    })
}

pub fn topological_cylinder(phi: &MonotoneMap) -> Result<Arc<SimplicialSet>, CylinderError> {
    Ok(cylinder_reduction(phi)?.t().clone())
}

/// `N(P × [1] ⊔_P R)`.
pub fn reduced_cylinder(phi: &MonotoneMap) -> Result<Arc<SimplicialSet>, CylinderError> {
    let (_, i0, _) = cylinder_poset(phi.source());
    let pp = poset_pushout(&i0, phi)?;
    Ok(nerve(pp.poset).sset)
}

/// `NQ ⊔_{NP} NR` against `N(Q ⊔_P R)` for a Dwyer map `k : P -> Q`.
pub fn pushout_comparison(k: &MonotoneMap, phi: &MonotoneMap) -> Result<Comparison, CylinderError> {
    let np = nerve(k.source().clone());
    let nq = nerve(k.target().clone());
    let nr = nerve(phi.target().clone());
    let nk = nerve_map(k, &np, &nq)?;
    let mut a_vertex = vec![0; nq.sset.num_cells()];
    for &v in nq.sset.cells_of_dim(0) {
        a_vertex[v] = nq.chain(v)[0];
    }
    let name = format!("{}+{}", k.target().name(), phi.target().name());
    compare(np, nr, &nk, &a_vertex, k, phi, &name)
}

/// `D T` together with the unique `dcr` satisfying `dcr ∘ η = cr`.
#[derive(Clone, Debug)]
pub struct Dcr {
    pub desing: DesingResult,
    pub dcr: SimplicialMap,
}

pub fn dcr_of(comparison: &Comparison) -> Result<Dcr, CylinderError> {
    let desing = desingularize(comparison.t.set())?;
    let dcr = SimplicialMap::factor_through(&desing.eta, &comparison.cr)?;
    Ok(Dcr { desing, dcr })
}

pub fn dcr(phi: &MonotoneMap) -> Result<(CylinderBundle, Dcr), CylinderError> {
    let bundle = cylinder_reduction(phi)?;
    let d = dcr_of(&bundle.comparison)?;
    Ok((bundle, d))
}

/// The cone `T(NP -> Δ[0])` on a simplicial set recognised as a poset nerve.
pub fn cone(x: &Arc<SimplicialSet>) -> Result<Arc<SimplicialSet>, CylinderError> {
    let (np, _) = recognize_nerve(x)?;
    let phi = MonotoneMap::terminal(np.poset.clone());
    topological_cylinder(&phi)
}

/// Degreewise cardinalities of a map: per degree, whether it is injective and surjective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
}

pub fn degree_table(f: &SimplicialMap, max_degree: usize) -> DegreeTable {
    DegreeTable {
        injective: (0..=max_degree).map(|q| injective_in_degree(f, q)).collect(),
        surjective: (0..=max_degree).map(|q| surjective_in_degree(f, q)).collect(),
    }
}

/// Groups of at least two distinct embedded siblings of degree `q`.
pub fn embedded_sibling_groups(x: &SimplicialSet, q: usize) -> Vec<Vec<CellId>> {
    let mut groups: HashMap<Vec<CellId>, Vec<CellId>> = HashMap::new();
    for &c in x.cells_of_dim(q) {
        if x.is_embedded(&x.cell_simplex(c)) {
            groups.entry(x.cell_vertices(c)).or_default().push(c);
        }
    }
    let mut out: Vec<Vec<CellId>> = groups.into_values().filter(|g| g.len() > 1).collect();
    out.sort();
    out
}

/// One degree of the sibling criterion: `g` injective in degree `q` against `f`
/// identifying every pair of embedded siblings of degree `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiblingCheck {
    pub degree: usize,
    pub injective: bool,
    pub siblings_identified: bool,
}

impl SiblingCheck {
    pub fn holds(&self) -> bool {
        self.injective == self.siblings_identified
    }
}

/// For `f : X -> Y` degreewise surjective and `g : Y -> Z`, check the biconditional in
/// each positive degree up to `dim X`.
pub fn sibling_criterion(f: &SimplicialMap, g: &SimplicialMap) -> Vec<SiblingCheck> {
    let x = f.source();
    (1..=x.dim())
        .map(|q| SiblingCheck {
            degree: q,
            injective: injective_in_degree(g, q),
            siblings_identified: embedded_sibling_groups(x, q)
                .iter()
                .all(|grp| grp.iter().all(|&c| f.image(c) == f.image(grp[0]))),
        })
        .collect()
}

/// `(ȳ)♯ : Δ[n]♯ -> X♯`, or into `Y♯` for `Y` the subcomplex generated by `y`.
pub fn representing_sharp(x: &Arc<SimplicialSet>, y: &Simplex, corestrict: bool) -> Result<MonotoneMap, CylinderError> {
    let n = y.degree();
    let dn = Arc::new(sharp(&standard_simplex(n)).with_name(format!("Delta[{n}]#")));
    if corestrict {
        let sub = generate(x, &[y.cell])?;
        let yy = sub.restrict(y).expect("y lies in the subcomplex it generates");
        let ybar = representing_map(&sub.set, &yy)?;
        let target = Arc::new(sharp(&sub.set));
        Ok(sharp_map(&ybar, dn, target)?)
    } else {
        let ybar = representing_map(x, y)?;
        let target = Arc::new(sharp(x));
        Ok(sharp_map(&ybar, dn, target)?)
    }
}

/// `P = {a < b, a < c}` to the chain `a' < b' < c'`.
pub fn example_non_surjective() -> MonotoneMap {
    let p = FinPoset::from_relations("P", vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).unwrap();
    let r = FinPoset::from_relations("R", vec!["a'".into(), "b'".into(), "c'".into()], &[(0, 1), (1, 2)]).unwrap();
    MonotoneMap::new(Arc::new(p), Arc::new(r), vec![0, 1, 2]).unwrap()
}

/// `f♯` for the projection `f : Δ[1] -> Δ[1]/∂Δ[1]`.
pub fn example_non_injective() -> MonotoneMap {
    let s1 = Arc::new(sphere(1).unwrap());
    let edge = s1.cells_of_dim(1)[0];
    let f = representing_map(&s1, &s1.cell_simplex(edge)).unwrap();
    sharp_map(&f, Arc::new(sharp(f.source())), Arc::new(sharp(&s1))).unwrap()
}

/// Outcome of comparing the `W`-level and `Q`-level maps for `k = ψ ∘ i_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub w_level_iso: bool,
    pub q_level_iso: bool,
}

impl ReductionCheck {
    /// The implication: an isomorphism at the `W` level gives one at the `Q` level.
    pub fn holds(&self) -> bool {
        !self.w_level_iso || self.q_level_iso
    }
}

/// Both comparisons for `φ : Δ[n-1]♯ -> R`, with `Q = Δ[n]♯` and `W = Δ[n-1]♯ × [1]`.
pub fn dwyer_reduction(n: usize, phi: &MonotoneMap) -> Result<ReductionCheck, CylinderError> {
    let (_, i0, _) = cylinder_poset(phi.source());
    let k = i0.then(&psi(n)?)?;
    let (_, w_dcr) = dcr(phi)?;
    let q = pushout_comparison(&k, phi)?;
    let q_dcr = dcr_of(&q)?;
    Ok(ReductionCheck {
        w_level_iso: is_isomorphism(&w_dcr.dcr),
        q_level_iso: is_isomorphism(&q_dcr.dcr),
    })
}

/// `cr` is bijective in degree 0.
pub fn degree_zero_bijective(cr: &SimplicialMap) -> bool {
    injective_in_degree(cr, 0) && surjective_in_degree(cr, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cylinder() {
        let p = Arc::new(FinPoset::chain(1));
        let b = cylinder_reduction(&MonotoneMap::identity(p)).unwrap();
        assert!(is_isomorphism(b.cr()));
        assert!(b.legs_agree());
        assert_eq!(b.t().counts(), b.m().counts());
    }

    #[test]
    fn cone_on_a_point_is_an_interval() {
        let c = cone(&Arc::new(standard_simplex(0))).unwrap();
        assert_eq!(c.counts(), vec![2, 1]);
        let c = cone(&Arc::new(standard_simplex(2))).unwrap();
        assert_eq!(c.dim(), 3);
    }

    #[test]
    fn non_surjective_example() {
        let b = cylinder_reduction(&example_non_surjective()).unwrap();
        assert_eq!(b.t().dim(), 2);
        assert_eq!(b.m().dim(), 3);
        assert!(!surjective_in_degree(b.cr(), 3));
        assert!(degree_zero_bijective(b.cr()));
    }

    #[test]
    fn non_injective_example() {
        let (b, d) = dcr(&example_non_injective()).unwrap();
        assert!(injective_in_degree(&d.dcr, 0));
        assert!(!injective_in_degree(&d.dcr, 1));
        assert!(!injective_in_degree(&d.dcr, 2));
        assert!(!embedded_sibling_groups(&d.desing.quotient, 2).is_empty());
        for s in sibling_criterion(&d.desing.eta, &d.dcr) {
            assert!(s.holds(), "{s:?}");
        }
        assert!(b.legs_agree());
    }
}
