//! Verification of the comparison `t_X`, the cylinder statements and the oracles.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::corpus::{tiny_inputs, Corpus, Member};
use super::report::{Case, Outcome, Report, Section};
use crate::cylinder::{
    dcr_of, degree_table, degree_zero_bijective, representing_sharp, sibling_criterion, CylinderBundle,
    CylinderError, DegreeTable, Dcr, SiblingCheck, cylinder_reduction,
};
use crate::desing::{oracle_desingularize_bounded, zipper_desingularize, Certificate, DesingResult};
use crate::poset::{barratt, posets_up_to_iso, recognize_nerve, MonotoneMap};
use crate::sset::{
    find_isomorphism, injective_in_degree, is_isomorphism, is_nonsingular, is_regular, print_sset,
    surjective_in_degree, Congruence, SimplicialMap, SimplicialSet,
};
use crate::subdivision::{b_nat, sd, t_nat};

/// Sets at most this large are dumped in full when a case fails.
const DUMP_LIMIT: usize = 60;

fn counts_str(x: &SimplicialSet) -> String {
    x.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn bools_str(v: &[bool]) -> String {
    v.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
}

fn with_dump(case: Case, x: &SimplicialSet) -> Case {
    if case.outcome == Outcome::Fail && x.num_cells() <= DUMP_LIMIT {
        case.detail("witness", print_sset(x))
    } else {
        case
    }
}

/// The result of desingularizing `Sd X` and comparing with `BX`.
#[derive(Clone, Debug)]
pub struct TCheck {
    pub certificate: Certificate,
    pub iso: bool,
    pub vertices_bijective: bool,
    pub sd_counts: Vec<usize>,
    pub d_counts: Vec<usize>,
    pub b_counts: Vec<usize>,
    pub moves: usize,
    pub error: Option<String>,
}

impl TCheck {
    pub fn ok(&self) -> bool {
        self.certificate == Certificate::ZipperCertified && self.iso && self.error.is_none()
    }
}

/// `Sd X`, its zipper desingularization, and whether `t_X : DSd X -> BX` is an isomorphism.
pub fn check_t(x: &Arc<SimplicialSet>) -> TCheck {
    let s = sd(x);
    let z = zipper_desingularize(&s.set);
    let bx = barratt(x);
    let vertices_bijective =
        injective_in_degree(&z.eta, 0) && z.quotient.cells_of_dim(0).len() == x.num_cells();
    let mut out = TCheck {
        certificate: z.certificate,
        iso: false,
        vertices_bijective,
        sd_counts: s.set.counts(),
        d_counts: z.quotient.counts(),
        b_counts: bx.sset.counts(),
        moves: z.moves.len(),
        error: None,
    };
    if z.certificate != Certificate::ZipperCertified {
        out.error = Some("zipper fixpoint is singular".into());
        return out;
    }
    match b_nat(&s, &bx).and_then(|b| t_nat(&z.eta, &b)) {
        Ok(t) => out.iso = is_isomorphism(&t),
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

fn t_case(name: &str, x: &Arc<SimplicialSet>) -> Case {
    let start = Instant::now();
    let r = check_t(x);
    let mut case = Case::new(name, Outcome::from_bool(r.ok()))
        .detail("counts", counts_str(x))
        .detail("sd_counts", join(&r.sd_counts))
        .detail("dsd_counts", join(&r.d_counts))
        .detail("b_counts", join(&r.b_counts))
        .detail("zip_moves", r.moves)
        .detail("iso", r.iso);
    if let Some(e) = &r.error {
        case = case.detail("error", e);
    }
    with_dump(case, x).timed(start.elapsed())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Regular members of dimension at most 3.
pub fn regular_members(corpus: &Corpus) -> Vec<&Member> {
    corpus
        .members
        .iter()
        .filter(|m| m.set.dim() <= 3 && is_regular(&m.set))
        .collect()
}

/// `t_X` for every regular member of dimension at most 3.
pub fn main_theorem_section(corpus: &Corpus) -> Section {
    let members = regular_members(corpus);
    let cases = members.par_iter().map(|m| t_case(&m.name, &m.set)).collect();
    Section::new("main-theorem", cases)
}

/// `t_{Sd Y}` for every member `Y` with `|Sd Y| <= max_sd_cells`.
pub fn corollary_section(corpus: &Corpus, max_sd_cells: usize) -> Section {
    let cases = corpus
        .members
        .par_iter()
        .filter_map(|m| {
            let s = sd(&m.set);
            if s.set.num_cells() > max_sd_cells {
                return None;
            }
            let case = t_case(&m.name, &s.set).detail("regular_base", is_regular(&m.set));
            Some(case)
        })
        .collect();
    Section::new("corollary", cases)
}

pub fn verify_main_theorem(corpus: &Corpus) -> Report {
    let mut r = Report::new("main", Some(corpus.seed));
    r.push(main_theorem_section(corpus));
    r.push(corollary_section(corpus, 200));
    r
}

/// Everything computed about one cylinder.
#[derive(Clone, Debug)]
pub struct CylinderRun {
    pub name: String,
    pub t_counts: Vec<usize>,
    pub m_counts: Vec<usize>,
    pub certificate: Option<Certificate>,
    pub dcr_iso: bool,
    pub cr_degree_zero: bool,
    pub legs_agree: bool,
    pub siblings: Vec<SiblingCheck>,
    pub dcr_table: Option<DegreeTable>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CylinderRun {
    pub fn sibling_ok(&self) -> bool {
        self.error.is_none() && self.siblings.iter().all(SiblingCheck::holds)
    }
}

fn run_bundle(name: &str, bundle: Result<CylinderBundle, CylinderError>, start: Instant) -> CylinderRun {
    let mut run = CylinderRun {
        name: name.to_string(),
        t_counts: Vec::new(),
        m_counts: Vec::new(),
        certificate: None,
        dcr_iso: false,
        cr_degree_zero: false,
        legs_agree: false,
        siblings: Vec::new(),
        dcr_table: None,
        error: None,
        elapsed: Duration::ZERO,
    };
    let bundle = match bundle {
        Ok(b) => b,
        Err(e) => {
            run.error = Some(e.to_string());
            run.elapsed = start.elapsed();
            return run;
        }
    };
    run.t_counts = bundle.t().counts();
    run.m_counts = bundle.m().counts();
    run.cr_degree_zero = degree_zero_bijective(bundle.cr());
    run.legs_agree = bundle.legs_agree();
    match dcr_of(&bundle.comparison) {
        Ok(Dcr { desing, dcr }) => {
            run.certificate = Some(desing.certificate);
            run.dcr_iso = is_isomorphism(&dcr);
            run.siblings = sibling_criterion(&desing.eta, &dcr);
            run.dcr_table = Some(degree_table(&dcr, bundle.t().dim().max(bundle.m().dim())));
        }
        Err(e) => run.error = Some(e.to_string()),
    }
    run.elapsed = start.elapsed();
    run
}

pub fn run_cylinder(name: &str, phi: &MonotoneMap) -> CylinderRun {
    let start = Instant::now();
    run_bundle(name, cylinder_reduction(phi), start)
}

fn cylinder_case(run: &CylinderRun, ok: bool) -> Case {
    let mut c = Case::new(&run.name, Outcome::from_bool(ok && run.error.is_none()))
        .detail("t_counts", join(&run.t_counts))
        .detail("m_counts", join(&run.m_counts))
        .detail("dcr_iso", run.dcr_iso);
    if let Some(cert) = run.certificate {
        c = c.detail("certificate", format!("{cert:?}"));
    }
    if let Some(t) = &run.dcr_table {
        c = c
            .detail("dcr_injective", bools_str(&t.injective))
            .detail("dcr_surjective", bools_str(&t.surjective));
    }
    if let Some(e) = &run.error {
        c = c.detail("error", e);
    }
    c.timed(run.elapsed)
}

/// The maps `(ȳ)♯` to test: every cell of every regular member with at most
/// `max_cells` cells corestricted to the subcomplex it generates, the same into the
/// whole member when it has at most `full_cells` cells, and `s_0` of each top cell.
pub fn thm12_maps(corpus: &Corpus, max_cells: usize, full_cells: usize) -> Vec<(String, MonotoneMap)> {
    let mut out = Vec::new();
    for m in regular_members(corpus) {
        let x = &m.set;
        if x.num_cells() > max_cells {
            continue;
        }
        for c in 0..x.num_cells() {
            let y = x.cell_simplex(c);
            if let Ok(phi) = representing_sharp(x, &y, true) {
                out.push((format!("{}/y{c}", m.name), phi));
            }
            if x.num_cells() <= full_cells {
                if let Ok(phi) = representing_sharp(x, &y, false) {
                    out.push((format!("{}/y{c}/full", m.name), phi));
                }
            }
        }
        if x.dim() < 3 {
            for &c in x.cells_of_dim(x.dim()) {
                let y = x.degeneracy(&x.cell_simplex(c), 0).expect("degeneracy of a cell");
                if let Ok(phi) = representing_sharp(x, &y, true) {
                    out.push((format!("{}/s0y{c}", m.name), phi));
                }
            }
        }
    }
    out
}

pub fn run_cylinders(maps: &[(String, MonotoneMap)]) -> Vec<CylinderRun> {
    maps.par_iter().map(|(name, phi)| run_cylinder(name, phi)).collect()
}

pub fn thm12_section(runs: &[CylinderRun]) -> Section {
    Section::new("thm-dcr-iso", runs.iter().map(|r| cylinder_case(r, r.dcr_iso)).collect())
}

/// `D(cone NP) ≅ M(NP -> Δ[0])` for every poset with at most `max` elements, by the
/// canonical map and by an independent isomorphism search.
pub fn cones_section(max: usize) -> (Section, Vec<CylinderRun>) {
    let posets = posets_up_to_iso(max);
    let results: Vec<(Case, CylinderRun)> = posets
        .into_par_iter()
        .map(|p| {
            let start = Instant::now();
            let p = Arc::new(p);
            let name = p.name().to_string();
            let phi = MonotoneMap::terminal(p);
            let bundle = cylinder_reduction(&phi);
            let searched = bundle.as_ref().ok().and_then(|b| {
                let z = zipper_desingularize(b.t());
                if z.is_certified() {
                    Some(find_isomorphism(&z.quotient, b.m()).is_some() && recognize_nerve(&z.quotient).is_ok())
                } else {
                    None
                }
            });
            let run = run_bundle(&name, bundle, start);
            let ok = run.dcr_iso && searched == Some(true);
            (cylinder_case(&run, ok).detail("iso_search", searched.unwrap_or(false)), run)
        })
        .collect();
    let (cases, runs) = results.into_iter().unzip();
    (Section::new("cones", cases), runs)
}

/// Zipper against the exhaustive oracle on inputs with at most `max_cells` cells.
pub fn oracle_agreement_section(seed: u64, count: usize, max_cells: usize) -> Section {
    let inputs = tiny_inputs(seed, count, max_cells);
    let cases = inputs
        .par_iter()
        .map(|m| {
            let start = Instant::now();
            let z = zipper_desingularize(&m.set);
            if z.certificate != Certificate::ZipperCertified {
                return Case::new(&m.name, Outcome::Skip).detail("zipper", "uncertified");
            }
            let case = match oracle_desingularize_bounded(&m.set, max_cells) {
                Ok(o) => {
                    let ok = same_kernel(&z, &o);
                    Case::new(&m.name, Outcome::from_bool(ok))
                        .detail("counts", counts_str(&m.set))
                        .detail("d_counts", counts_str(&z.quotient))
                        .detail("oracle_counts", counts_str(&o.quotient))
                }
                Err(e) => Case::new(&m.name, Outcome::Fail).detail("error", e),
            };
            with_dump(case, &m.set).timed(start.elapsed())
        })
        .collect();
    Section::new("oracle-agreement", cases)
}

fn same_kernel(a: &DesingResult, b: &DesingResult) -> bool {
    let d = a.eta.source().dim();
    Congruence::kernel(&a.eta, d).same_partition(&Congruence::kernel(&b.eta, d))
        && is_nonsingular(&a.quotient)
        && is_nonsingular(&b.quotient)
}

/// Degreewise injectivity and surjectivity of a map as a case.
pub fn map_table_case(name: &str, f: &SimplicialMap, max_degree: usize) -> Case {
    let inj: Vec<bool> = (0..=max_degree).map(|q| injective_in_degree(f, q)).collect();
    let sur: Vec<bool> = (0..=max_degree).map(|q| surjective_in_degree(f, q)).collect();
    Case::new(name, Outcome::Pass)
        .detail("injective", bools_str(&inj))
        .detail("surjective", bools_str(&sur))
}
