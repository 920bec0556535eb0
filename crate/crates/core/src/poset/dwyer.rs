//! Dwyer maps, pushouts of posets along them, and the embeddings `ψ` and `ω`.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{cylinder_poset, sharp, FinPoset, MonotoneMap, PosetError};
use crate::sset::standard_simplex;

/// A cosieve `W ⊇ k(P)` with the right adjoint `r : W -> P` of the inclusion.
#[derive(Clone, Debug)]
pub struct DwyerWitness {
    pub cosieve: FixedBitSet,
    /// `r[w]` is defined exactly for `w` in the cosieve.
    pub r: Vec<Option<usize>>,
}

/// The retraction on `w`: for each element of `w`, the largest `p` with `k(p) <= w`.
fn retraction(k: &MonotoneMap, w: &FixedBitSet) -> Option<Vec<Option<usize>>> {
    let (p, q) = (k.source(), k.target());
    let mut r = vec![None; q.len()];
    for x in w.ones() {
        let below: Vec<usize> = (0..p.len()).filter(|&a| q.leq(k.at(a), x)).collect();
        let top = below.iter().copied().find(|&m| below.iter().all(|&a| p.leq(a, m)))?;
        r[x] = Some(top);
    }
    Some(r)
}

/// Recognize `k : P -> Q` as a Dwyer map.
///
/// `k` must be an order embedding onto a sieve. The retraction condition is checked
/// on the cosieve generated by the image. The condition is pointwise and that
/// cosieve is contained in every admissible one, so failure there is final.
pub fn is_dwyer(k: &MonotoneMap) -> Option<DwyerWitness> {
    let q = k.target();
    if !k.is_embedding() || !q.is_sieve(&k.image()).ok()? {
        return None;
    }
    let cosieve = q.upward_closure(&k.image());
    let r = retraction(k, &cosieve)?;
    debug_assert!(adjunction_holds(k, &cosieve, &r));
    Some(DwyerWitness { cosieve, r })
}

/// `k(p) <= w` iff `p <= r(w)`, for all `p` and all `w` in the cosieve.
pub fn adjunction_holds(k: &MonotoneMap, w: &FixedBitSet, r: &[Option<usize>]) -> bool {
    let (p, q) = (k.source(), k.target());
    w.ones().all(|x| match r[x] {
        None => false,
        Some(rx) => (0..p.len()).all(|a| q.leq(k.at(a), x) == p.leq(a, rx)),
    })
}

/// Every cosieve containing the image that admits a retraction, or none when `k` is not
/// an embedding onto a sieve. Exponential; small inputs only.
pub fn dwyer_cosieves_exhaustive(k: &MonotoneMap) -> Vec<FixedBitSet> {
    let (p, q) = (k.source(), k.target());
    let embedding = (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(k.at(a), k.at(b))));
    let sieve = (0..p.len()).all(|a| (0..q.len()).all(|x| !q.leq(x, k.at(a)) || k.values().contains(&x)));
    if !embedding || !sieve {
        return Vec::new();
    }
    let base = q.upward_closure(&k.image());
    let rest: Vec<usize> = (0..q.len()).filter(|&x| !base.contains(x)).collect();
    assert!(rest.len() <= 20, "too many candidate cosieves");
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << rest.len()) {
        let mut w = base.clone();
        for (i, &x) in rest.iter().enumerate() {
            if bits & (1 << i) != 0 {
                w.insert(x);
            }
        }
        if !q.is_cosieve(&w).unwrap() {
            continue;
        }
        if let Some(r) = retraction(k, &w) {
            if adjunction_holds(k, &w, &r) {
                out.push(w);
            }
        }
    }
    out
}

/// `Q ⊔_P R` with its legs. Elements of `R` come first, then `Q ∖ k(P)`.
#[derive(Clone, Debug)]
pub struct PosetPushout {
    pub poset: Arc<FinPoset>,
    pub leg_q: MonotoneMap,
    pub leg_r: MonotoneMap,
    k: MonotoneMap,
    phi: MonotoneMap,
}

impl PosetPushout {
    /// The induced map out of the pushout.
    pub fn mediate(&self, h: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        let hk = self.k.then(h)?;
        let gp = self.phi.then(g)?;
        if hk.values() != gp.values() {
            return Err(PosetError::Incompatible("cocone does not commute".into()));
        }
        let mut map = vec![0; self.poset.len()];
        for (r, &e) in self.leg_r.values().iter().enumerate() {
            map[e] = g.at(r);
        }
        for (x, &e) in self.leg_q.values().iter().enumerate() {
            map[e] = h.at(x);
        }
        MonotoneMap::new(self.poset.clone(), h.target().clone(), map)
    }
}

/// Pushout of `Q <- P -> R` along an injective `k`, as the transitive closure of both
/// orders. Fails if the closure is not antisymmetric.
pub fn poset_pushout_along(k: &MonotoneMap, phi: &MonotoneMap) -> Result<PosetPushout, PosetError> {
    if *k.source() != *phi.source() {
        return Err(PosetError::Incompatible("pushout legs have different sources".into()));
    }
    if !k.is_injective() {
        return Err(PosetError::Incompatible("first leg must be injective".into()));
    }
    let (q, r) = (k.target(), phi.target());
    let mut pre = vec![None; q.len()];
    for a in 0..k.source().len() {
        pre[k.at(a)] = Some(a);
    }
    let mut names: Vec<String> = r.names().to_vec();
    let mut leg_q = vec![0; q.len()];
    for x in 0..q.len() {
        leg_q[x] = match pre[x] {
            Some(a) => phi.at(a),
            None => {
                let mut name = q.element_name(x).to_string();
                while names.contains(&name) {
                    name.push('\'');
                }
                names.push(name);
                names.len() - 1
            }
        };
    }
    let mut rels = Vec::new();
    for a in 0..r.len() {
        rels.extend(r.up(a).ones().map(|b| (a, b)));
    }
    for x in 0..q.len() {
        rels.extend(q.up(x).ones().map(|y| (leg_q[x], leg_q[y])));
    }
    let name = format!("{}+{}", q.name(), r.name());
    let poset = Arc::new(FinPoset::from_relations(name, names, &rels)?);
    let leg_q = MonotoneMap::new(q.clone(), poset.clone(), leg_q)?;
    let leg_r = MonotoneMap::new(r.clone(), poset.clone(), (0..r.len()).collect())?;
    Ok(PosetPushout {
        poset,
        leg_q,
        leg_r,
        k: k.clone(),
        phi: phi.clone(),
    })
}

/// Pushout along a Dwyer map. The antisymmetry check inside the closure is the
/// computational content of the statement that such pushouts are posets.
pub fn poset_pushout(k: &MonotoneMap, phi: &MonotoneMap) -> Result<PosetPushout, PosetError> {
    if is_dwyer(k).is_none() {
        return Err(PosetError::NotDwyer(format!("{} -> {}", k.source().name(), k.target().name())));
    }
    poset_pushout_along(k, phi)
}

fn sharp_simplex(n: usize) -> Arc<FinPoset> {
    Arc::new(sharp(&standard_simplex(n)).with_name(format!("Delta[{n}]#")))
}

fn face_masks(n: usize) -> Vec<u32> {
    crate::sset::subset_order(n)
}

fn end_maps(n: usize, zero_end: impl Fn(u32) -> u32) -> Result<MonotoneMap, PosetError> {
    if n == 0 {
        return Err(PosetError::Incompatible("n must be positive".into()));
    }
    let src = sharp_simplex(n - 1);
    let (w, _, _) = cylinder_poset(&src);
    let dst = sharp_simplex(n);
    let masks = face_masks(n - 1);
    let index = crate::sset::subset_index(n);
    let mut map = vec![0; w.len()];
    for (c, &m) in masks.iter().enumerate() {
        map[2 * c] = index[zero_end(m) as usize];
        map[2 * c + 1] = index[(m | (1 << n)) as usize];
    }
    MonotoneMap::new(w, dst, map)
}

/// `ψ : Δ[n-1]♯ × [1] -> Δ[n]♯`, `(μ,0) ↦ δ_n μ` and `(μ,1)` to `μ` extended by the last vertex.
pub fn psi(n: usize) -> Result<MonotoneMap, PosetError> {
    end_maps(n, |m| m)
}

/// `ω : Δ[n-1]♯ × [1] -> Δ[n]♯`, like `ψ` on the 1-end and constant `ε_n` on the 0-end.
pub fn omega(n: usize) -> Result<MonotoneMap, PosetError> {
    end_maps(n, |_| 1 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i0_is_dwyer() {
        let p = Arc::new(FinPoset::chain(2));
        let (w, i0, _) = cylinder_poset(&p);
        let wit = is_dwyer(&i0).unwrap();
        assert_eq!(wit.cosieve.count_ones(..), w.len());
        for x in 0..w.len() {
            assert_eq!(wit.r[x], Some(x / 2));
        }
    }

    #[test]
    fn middle_of_chain_is_not_dwyer() {
        let q = Arc::new(FinPoset::chain(2));
        let p = Arc::new(FinPoset::chain(0));
        let k = MonotoneMap::new(p, q, vec![1]).unwrap();
        assert!(is_dwyer(&k).is_none());
    }

    #[test]
    fn psi_image_misses_last_vertex() {
        for n in 1..4 {
            let f = psi(n).unwrap();
            assert!(f.is_embedding());
            let img = f.image();
            let missing: Vec<usize> = (0..f.target().len()).filter(|&x| !img.contains(x)).collect();
            let last = crate::sset::subset_index(n)[1 << n];
            assert_eq!(missing, vec![last]);
            assert!(f.target().is_cosieve(&img).unwrap());
        }
    }
}
