//! Structural statements checked exhaustively or on random instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::corpus::{tiny_inputs, Corpus, Member};
use super::report::{Case, Outcome, Report, Section};
use super::verify::{
    cones_section, corollary_section, main_theorem_section, oracle_agreement_section, regular_members, run_cylinders,
    thm12_maps, thm12_section, CylinderRun,
};
use crate::cylinder::{
    dwyer_reduction, example_non_injective, example_non_surjective, representing_sharp,
};
use crate::delta::Operator;
use crate::desing::{
    all_quotients, regularize_oracle_bounded, replay_moves, zipper_desingularize, Certificate,
};
use crate::poset::{
    barratt, barratt_map, cylinder_poset, dwyer_cosieves_exhaustive, is_dwyer, poset_pushout, poset_pushout_along,
    posets_up_to_iso, psi, sharp, sharp_map, FinPoset, MonotoneMap,
};
use crate::sset::{
    generate, is_degreewise_surjective, is_isomorphism, is_nonsingular, is_regular, parse_sset, print_sset, product,
    pushout, SimplicialMap, SimplicialSet,
};
use crate::subdivision::{agrees_with_colimit, b_nat, last_vertex, sd, sd_map};

fn case(name: impl Into<String>, ok: bool) -> Case {
    Case::new(name, Outcome::from_bool(ok))
}

/// `Sd X` is regular for every member.
pub fn sd_regular_section(corpus: &Corpus) -> Section {
    let cases = corpus
        .members
        .par_iter()
        .map(|m| {
            let s = sd(&m.set);
            case(&m.name, is_regular(&s.set)).detail("sd_cells", s.set.num_cells())
        })
        .collect();
    Section::new("sd-regular", cases)
}

/// Random subcomplexes of regular members are regular.
pub fn subcomplex_regular_section(corpus: &Corpus, seed: u64, count: usize) -> Section {
    let members = regular_members(corpus);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5b);
    let mut jobs = Vec::new();
    if !members.is_empty() {
        for i in 0..count {
            let m = members[i % members.len()];
            let k = rng.gen_range(1..=3.min(m.set.num_cells()));
            let seeds: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m.set.num_cells())).collect();
            jobs.push((format!("{}/{i}", m.name), m.set.clone(), seeds));
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(name, x, seeds)| match generate(x, seeds) {
            Ok(sub) => case(name, is_regular(&sub.set)).detail("cells", sub.set.num_cells()),
            Err(e) => case(name, false).detail("error", e),
        })
        .collect();
    Section::new("subcomplex-regular", cases)
}

/// Binary products of small regular members are regular.
pub fn product_regular_section(corpus: &Corpus, max_factor_cells: usize, max_pairs: usize) -> Section {
    let small: Vec<&Member> = regular_members(corpus)
        .into_iter()
        .filter(|m| m.set.num_cells() <= max_factor_cells && !m.set.is_empty())
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            if pairs.len() < max_pairs {
                pairs.push((*a, *b));
            }
        }
    }
    let cases = pairs
        .par_iter()
        .map(|(a, b)| {
            let p = product(&a.set, &b.set);
            case(format!("{}x{}", a.name, b.name), is_regular(&p.set)).detail("cells", p.set.num_cells())
        })
        .collect();
    Section::new("product-regular", cases)
}

/// `b_X` is degreewise surjective, and an isomorphism exactly when `X` is non-singular.
/// Vertices of `Sd X` correspond to cells of `X`.
pub fn bnat_section(corpus: &Corpus) -> Section {
    let cases = corpus
        .members
        .par_iter()
        .map(|m| {
            let s = sd(&m.set);
            let bx = barratt(&m.set);
            match b_nat(&s, &bx) {
                Ok(b) => {
                    let iso = is_isomorphism(&b);
                    let ns = is_nonsingular(&m.set);
                    let verts = s.set.cells_of_dim(0).len() == m.set.num_cells();
                    case(&m.name, iso == ns && is_degreewise_surjective(&b) && verts)
                        .detail("b_iso", iso)
                        .detail("nonsingular", ns)
                }
                Err(e) => case(&m.name, false).detail("error", e),
            }
        })
        .collect();
    Section::new("bnat-iso-iff-nonsingular", cases)
}

/// The normal-form subdivision matches the colimit construction.
pub fn sd_oracle_section(corpus: &Corpus, max_cells: usize) -> Section {
    let cases = corpus
        .members
        .par_iter()
        .filter(|m| m.set.num_cells() <= max_cells)
        .map(|m| case(&m.name, agrees_with_colimit(&sd(&m.set))))
        .collect();
    Section::new("sd-colimit-oracle", cases)
}

fn naturality_holds(f: &SimplicialMap) -> Result<bool, String> {
    let sx = sd(f.source());
    let sy = sd(f.target());
    let sf = sd_map(f, &sx, &sy).map_err(|e| e.to_string())?;
    let bx = barratt(f.source());
    let by = barratt(f.target());
    let b_x = b_nat(&sx, &bx).map_err(|e| e.to_string())?;
    let b_y = b_nat(&sy, &by).map_err(|e| e.to_string())?;
    let bf = barratt_map(f, &bx, &by).map_err(|e| e.to_string())?;
    let left = sf.then(&b_y).map_err(|e| e.to_string())?;
    let right = b_x.then(&bf).map_err(|e| e.to_string())?;
    let d_x = last_vertex(&sx).map_err(|e| e.to_string())?;
    let d_y = last_vertex(&sy).map_err(|e| e.to_string())?;
    let dl = sf.then(&d_y).map_err(|e| e.to_string())?;
    let dr = d_x.then(f).map_err(|e| e.to_string())?;
    let surj = !is_degreewise_surjective(f) || is_degreewise_surjective(&sf);
    Ok(left.images() == right.images() && dl.images() == dr.images() && surj)
}

/// `b` and `d` are natural along zipper projections, subcomplex inclusions and
/// representing maps; `Sd` preserves degreewise surjections.
pub fn naturality_section(corpus: &Corpus, max_cells: usize) -> Section {
    let mut maps: Vec<(String, SimplicialMap)> = Vec::new();
    for m in corpus.members.iter().filter(|m| m.set.num_cells() <= max_cells) {
        let z = zipper_desingularize(&m.set);
        maps.push((format!("{}/eta", m.name), z.eta));
        if m.set.num_cells() > 1 {
            if let Ok(sub) = generate(&m.set, &[m.set.num_cells() - 1]) {
                maps.push((format!("{}/incl", m.name), sub.inclusion));
            }
        }
        let top = m.set.cells_of_dim(m.set.dim());
        if let Some(&c) = top.first() {
            if let Ok(f) = crate::sset::representing_map(&m.set, &m.set.cell_simplex(c)) {
                maps.push((format!("{}/rep{c}", m.name), f));
            }
        }
    }
    let cases = maps
        .par_iter()
        .map(|(name, f)| match naturality_holds(f) {
            Ok(ok) => case(name, ok),
            Err(e) => case(name, false).detail("error", e),
        })
        .collect();
    Section::new("naturality", cases)
}

fn masks(n: usize) -> impl Iterator<Item = u32> {
    1..(1u32 << (n + 1))
}

/// For a cell `y` of dimension `n` and face operators `μ, ν` with `n` in the union of
/// their images, `(yμ)♯ = (yν)♯` forces `μ = ν`. Returns the number of pairs checked and
/// the first violation.
pub fn lemma_faces_distinct(x: &SimplicialSet) -> (usize, Option<String>) {
    let mut checked = 0;
    for y in 0..x.num_cells() {
        let n = x.cell_dim(y);
        for a in masks(n) {
            for b in masks(n) {
                if (a | b) & (1 << n) == 0 {
                    continue;
                }
                checked += 1;
                if a != b && x.face_by_mask(y, a).cell == x.face_by_mask(y, b).cell {
                    return (checked, Some(format!("cell {y} masks {a:b} {b:b}")));
                }
            }
        }
    }
    (checked, None)
}

/// For a simplex `y` of degree `n` and face operators `μ, ν` whose images cover `[n]`
/// with neither containing the other, `(yμ)♯ = (yν)♯` forces `y` degenerate with
/// `y♯ = (yμ)♯`.
pub fn deflation_holds(x: &SimplicialSet, max_degree: usize) -> (usize, Option<String>) {
    let mut checked = 0;
    for n in 1..=max_degree {
        let full = (1u32 << (n + 1)) - 1;
        for y in x.simplices_of_degree(n) {
            for a in masks(n) {
                for b in masks(n) {
                    if a | b != full || a & b == a || a & b == b {
                        continue;
                    }
                    checked += 1;
                    let ya = x.eval_unchecked(&y, &Operator::from_image(n, a).unwrap());
                    let yb = x.eval_unchecked(&y, &Operator::from_image(n, b).unwrap());
                    if ya.cell == yb.cell && !(y.is_degenerate() && y.cell == ya.cell) {
                        return (checked, Some(format!("simplex {y} masks {a:b} {b:b}")));
                    }
                }
            }
        }
    }
    (checked, None)
}

pub fn lemma81_section(corpus: &Corpus) -> Section {
    let cases = regular_members(corpus)
        .par_iter()
        .map(|m| {
            let (n, bad) = lemma_faces_distinct(&m.set);
            let c = case(&m.name, bad.is_none()).detail("pairs", n);
            match bad {
                Some(b) => c.detail("violation", b),
                None => c,
            }
        })
        .collect();
    Section::new("faces-distinct", cases)
}

pub fn deflation_section(corpus: &Corpus) -> Section {
    let cases = regular_members(corpus)
        .par_iter()
        .map(|m| {
            let (n, bad) = deflation_holds(&m.set, (m.set.dim() + 1).min(4));
            let c = case(&m.name, bad.is_none()).detail("pairs", n);
            match bad {
                Some(b) => c.detail("violation", b),
                None => c,
            }
        })
        .collect();
    Section::new("deflation", cases)
}

fn is_poset_iso(f: &MonotoneMap) -> bool {
    let (s, t) = (f.source(), f.target());
    if s.len() != t.len() || !f.is_injective() {
        return false;
    }
    (0..s.len()).all(|a| (0..s.len()).all(|b| s.leq(a, b) == t.leq(f.at(a), f.at(b))))
}

/// `(X ⊔_A Z)♯ ≅ X♯ ⊔_{A♯} Z♯` for a subcomplex `A ⊂ X` and a map `A -> Z`, where `Z` is
/// either `X` (the double) or a point (collapsing `A`).
pub fn sharp_pushout_section(corpus: &Corpus, max_cells: usize) -> Section {
    let mut jobs = Vec::new();
    for m in corpus.members.iter().filter(|m| m.set.num_cells() <= max_cells && m.set.num_cells() > 1) {
        let Some(seed_cell) = (0..m.set.num_cells()).rev().find(|&c| m.set.cell_dim(c) < m.set.dim()) else {
            continue;
        };
        jobs.push((m, seed_cell, false));
        jobs.push((m, seed_cell, true));
    }
    let cases = jobs
        .par_iter()
        .map(|(m, seed, collapse)| {
            let name = format!("{}/{}", m.name, if *collapse { "cone" } else { "double" });
            match sharp_pushout_instance(&m.set, *seed, *collapse) {
                Ok(ok) => case(name, ok),
                Err(e) => case(name, false).detail("error", e),
            }
        })
        .collect();
    Section::new("sharp-pushout", cases)
}

fn sharp_pushout_instance(x: &Arc<SimplicialSet>, seed: usize, collapse: bool) -> Result<bool, String> {
    let sub = generate(x, &[seed]).map_err(|e| e.to_string())?;
    let g = if collapse {
        let pt = Arc::new(crate::sset::standard_simplex(0));
        let images = (0..sub.set.num_cells())
            .map(|c| crate::sset::Simplex::new(0, Operator::terminal(sub.set.cell_dim(c))))
            .collect();
        SimplicialMap::new(sub.set.clone(), pt, images).map_err(|e| e.to_string())?
    } else {
        sub.inclusion.clone()
    };
    let po = pushout(&sub.inclusion, &g, "glued").map_err(|e| e.to_string())?;
    let a = Arc::new(sharp(&sub.set));
    let xs = Arc::new(sharp(x));
    let zs = Arc::new(sharp(g.target()));
    let ps = Arc::new(sharp(po.set()));
    let k = sharp_map(&sub.inclusion, a.clone(), xs.clone()).map_err(|e| e.to_string())?;
    let phi = sharp_map(&g, a, zs.clone()).map_err(|e| e.to_string())?;
    let pp = poset_pushout_along(&k, &phi).map_err(|e| e.to_string())?;
    let h = sharp_map(&po.left, xs, ps.clone()).map_err(|e| e.to_string())?;
    let l = sharp_map(&po.right, zs, ps).map_err(|e| e.to_string())?;
    let canon = pp.mediate(&h, &l).map_err(|e| e.to_string())?;
    Ok(is_poset_iso(&canon))
}

fn random_monotone(rng: &mut ChaCha8Rng, p: &Arc<FinPoset>, r: &Arc<FinPoset>) -> MonotoneMap {
    for _ in 0..200 {
        let map: Vec<usize> = (0..p.len()).map(|_| rng.gen_range(0..r.len())).collect();
        if let Ok(f) = MonotoneMap::new(p.clone(), r.clone(), map) {
            return f;
        }
    }
    MonotoneMap::new(p.clone(), r.clone(), vec![0; p.len()]).expect("constant maps are monotone")
}

/// Monotone maps out of small posets, including both examples.
pub fn random_phis(seed: u64, count: usize) -> Vec<(String, MonotoneMap)> {
    let sources: Vec<Arc<FinPoset>> = posets_up_to_iso(3).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect();
    let targets: Vec<Arc<FinPoset>> = posets_up_to_iso(4).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1);
    let mut out = vec![
        ("example-non-surjective".to_string(), example_non_surjective()),
        ("example-non-injective".to_string(), example_non_injective()),
    ];
    for i in 0..count {
        let p = sources.choose(&mut rng).unwrap();
        let r = targets.choose(&mut rng).unwrap();
        out.push((format!("random{i:02}:{}->{}", p.name(), r.name()), random_monotone(&mut rng, p, r)));
    }
    out
}

/// The cylinders used by the structural sections: random maps, both examples, and the
/// representing maps of small regular members.
pub fn cylinder_battery(corpus: &Corpus, seed: u64) -> Vec<CylinderRun> {
    let mut maps = random_phis(seed, 40);
    maps.extend(thm12_maps(corpus, 12, 12));
    run_cylinders(&maps)
}

pub fn cr_degree_zero_section(runs: &[CylinderRun]) -> Section {
    Section::new(
        "cr-degree-zero",
        runs.iter()
            .map(|r| case(&r.name, r.error.is_none() && r.cr_degree_zero && r.legs_agree))
            .collect(),
    )
}

pub fn sibling_section(runs: &[CylinderRun]) -> Section {
    Section::new(
        "sibling-criterion",
        runs.iter()
            .map(|r| {
                let degrees: Vec<String> = r
                    .siblings
                    .iter()
                    .map(|s| format!("{}:{}{}", s.degree, s.injective as u8, s.siblings_identified as u8))
                    .collect();
                case(&r.name, r.sibling_ok()).detail("degrees", degrees.join(" "))
            })
            .collect(),
    )
}

fn random_injective(rng: &mut ChaCha8Rng, p: &Arc<FinPoset>, q: &Arc<FinPoset>) -> Option<MonotoneMap> {
    if p.len() > q.len() {
        return None;
    }
    for _ in 0..200 {
        let mut elems: Vec<usize> = (0..q.len()).collect();
        elems.shuffle(rng);
        elems.truncate(p.len());
        if let Ok(f) = MonotoneMap::new(p.clone(), q.clone(), elems) {
            return Some(f);
        }
    }
    None
}

/// Dwyer recognition against the exhaustive cosieve search, and every pushout along a
/// Dwyer map is antisymmetric.
pub fn dwyer_section(seed: u64, count: usize) -> Section {
    let small: Vec<Arc<FinPoset>> = posets_up_to_iso(4).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdd);
    let mut jobs: Vec<(String, MonotoneMap, MonotoneMap)> = Vec::new();
    for p in small.iter().filter(|p| p.len() <= 3) {
        let (_, i0, _) = cylinder_poset(p);
        let r = small.choose(&mut rng).unwrap();
        jobs.push((format!("i0:{}", p.name()), i0, random_monotone(&mut rng, p, r)));
    }
    for n in 1..=3 {
        let p = Arc::new(sharp(&crate::sset::standard_simplex(n - 1)).with_name(format!("Delta[{}]#", n - 1)));
        let (_, i0, _) = cylinder_poset(&p);
        let k = i0.then(&psi(n).expect("n >= 1")).expect("composable");
        for _ in 0..3 {
            let r = small.choose(&mut rng).unwrap();
            jobs.push((format!("psi{n}"), k.clone(), random_monotone(&mut rng, &p, r)));
        }
    }
    let mut i = 0;
    while jobs.len() < count && i < 50 * count {
        i += 1;
        let p = small.choose(&mut rng).unwrap();
        let q = small.choose(&mut rng).unwrap();
        if let Some(k) = random_injective(&mut rng, p, q) {
            let r = small.choose(&mut rng).unwrap();
            jobs.push((format!("k{}:{}->{}", jobs.len(), p.name(), q.name()), k, random_monotone(&mut rng, p, r)));
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(name, k, phi)| {
            let fast = is_dwyer(k).is_some();
            let slow = !dwyer_cosieves_exhaustive(k).is_empty();
            let pushout_ok = !fast || poset_pushout(k, phi).is_ok();
            case(name, fast == slow && pushout_ok).detail("dwyer", fast)
        })
        .collect();
    Section::new("dwyer-pushout", cases)
}

/// The `W`-level isomorphism implies the `Q`-level one, for `k = ψ ∘ i_0`.
pub fn dwyer_reduction_section(corpus: &Corpus, seed: u64, max_cells: usize) -> Section {
    let mut jobs: Vec<(String, usize, MonotoneMap)> = Vec::new();
    for m in corpus.members.iter().filter(|m| m.set.num_cells() <= max_cells) {
        for q in 0..=m.set.dim().min(2) {
            if let Some(&c) = m.set.cells_of_dim(q).first() {
                if let Ok(phi) = representing_sharp(&m.set, &m.set.cell_simplex(c), false) {
                    jobs.push((format!("{}/y{c}", m.name), q + 1, phi));
                }
            }
        }
    }
    let targets: Vec<Arc<FinPoset>> = posets_up_to_iso(3).into_iter().filter(|p| !p.is_empty()).map(Arc::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x10);
    for n in 1..=2 {
        let p = Arc::new(sharp(&crate::sset::standard_simplex(n - 1)));
        for i in 0..6 {
            let r = targets.choose(&mut rng).unwrap();
            jobs.push((format!("random{n}_{i}"), n, random_monotone(&mut rng, &p, r)));
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(name, n, phi)| match dwyer_reduction(*n, phi) {
            Ok(r) => case(name, r.holds())
                .detail("w_iso", r.w_level_iso)
                .detail("q_iso", r.q_level_iso),
            Err(e) => case(name, false).detail("error", e),
        })
        .collect();
    Section::new("dwyer-reduction", cases)
}

/// Zipper logs replay, certified quotients are fixed, and `η` is bijective on vertices
/// for subdivisions of regular members.
pub fn zipper_section(corpus: &Corpus) -> Section {
    let cases = corpus
        .members
        .par_iter()
        .map(|m| {
            let s = sd(&m.set);
            let z = zipper_desingularize(&s.set);
            let replay = replay_moves(&s.set, &z);
            let again = zipper_desingularize(&z.quotient);
            let idempotent = !z.is_certified() || (again.moves.is_empty() && *again.quotient == *z.quotient);
            let vertices = !is_regular(&m.set)
                || (crate::sset::injective_in_degree(&z.eta, 0)
                    && z.quotient.cells_of_dim(0).len() == s.set.cells_of_dim(0).len());
            case(&m.name, replay && idempotent && vertices)
                .detail("replay", replay)
                .detail("idempotent", idempotent)
                .detail("moves", z.moves.len())
        })
        .collect();
    Section::new("zipper-log", cases)
}

/// On tiny inputs: every non-singular quotient factors through the zipper's `η`, and
/// every regular quotient through the regularization.
pub fn universal_section(seed: u64, max_cells: usize) -> Section {
    let inputs = tiny_inputs(seed ^ 0x77, 24, max_cells);
    let cases = inputs
        .par_iter()
        .map(|m| {
            let z = zipper_desingularize(&m.set);
            if z.certificate != Certificate::ZipperCertified {
                return Case::new(&m.name, Outcome::Skip);
            }
            let quotients = match all_quotients(&m.set, max_cells) {
                Ok(q) => q,
                Err(e) => return case(&m.name, false).detail("error", e),
            };
            let d_ok = quotients
                .iter()
                .filter(|q| is_nonsingular(&q.set))
                .all(|q| SimplicialMap::factor_through(&z.eta, &q.projection).is_ok());
            let r_ok = match regularize_oracle_bounded(&m.set, max_cells) {
                Ok(r) => {
                    is_regular(&r.set)
                        && quotients
                            .iter()
                            .filter(|q| is_regular(&q.set))
                            .all(|q| SimplicialMap::factor_through(&r.projection, &q.projection).is_ok())
                }
                Err(_) => false,
            };
            case(&m.name, d_ok && r_ok)
                .detail("quotients", quotients.len())
                .detail("desingularization", d_ok)
                .detail("regularization", r_ok)
        })
        .collect();
    Section::new("universal-properties", cases)
}

pub fn serialization_section(corpus: &Corpus) -> Section {
    let cases = corpus
        .members
        .iter()
        .map(|m| {
            let ok = parse_sset(&print_sset(&m.set)).map(|y| y == *m.set).unwrap_or(false);
            case(&m.name, ok)
        })
        .collect();
    Section::new("serialization", cases)
}

/// Regularity statements: subdivisions, subcomplexes, products, and `b_X`.
pub fn regularity_battery(corpus: &Corpus) -> Vec<Section> {
    vec![
        sd_regular_section(corpus),
        subcomplex_regular_section(corpus, corpus.seed, 60),
        product_regular_section(corpus, 12, 40),
        bnat_section(corpus),
    ]
}

/// Statements about cylinders, Dwyer maps and regular sets.
pub fn structural_lemmas(corpus: &Corpus) -> Vec<Section> {
    let runs = cylinder_battery(corpus, corpus.seed);
    vec![
        cr_degree_zero_section(&runs),
        sibling_section(&runs),
        lemma81_section(corpus),
        deflation_section(corpus),
        dwyer_section(corpus.seed, 60),
    ]
}

pub fn verify_lemma_suite(corpus: &Corpus) -> Report {
    let mut r = Report::new("lemmas", Some(corpus.seed));
    for s in regularity_battery(corpus) {
        r.push(s);
    }
    for s in structural_lemmas(corpus) {
        r.push(s);
    }
    r.push(sd_oracle_section(corpus, 60));
    r.push(naturality_section(corpus, 40));
    r.push(sharp_pushout_section(corpus, 40));
    r.push(dwyer_reduction_section(corpus, corpus.seed, 12));
    r.push(zipper_section(corpus));
    r.push(universal_section(corpus.seed, 5));
    r.push(serialization_section(corpus));
    r
}

/// Every campaign in one report: the comparison `t_X`, cylinders, cones, oracles and lemmas.
pub fn verify_all(corpus: &Corpus) -> Report {
    let mut r = verify_lemma_suite(corpus);
    r.title = "all".into();
    r.sections.insert(0, main_theorem_section(corpus));
    r.sections.insert(1, corollary_section(corpus, 200));
    let maps = thm12_maps(corpus, 60, 30);
    r.sections.insert(2, thm12_section(&run_cylinders(&maps)));
    r.sections.insert(3, cones_section(5).0);
    r.sections.insert(4, oracle_agreement_section(corpus.seed, 60, 10));
    r
}
