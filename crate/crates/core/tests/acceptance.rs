//! Acceptance gate. Runs every criterion on a fixed corpus, prints one line each, and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use forge_core::harness::{
    cones_section, corollary_section, cylinder_battery, cr_degree_zero_section, deflation_section, dwyer_section,
    gen_corpus, lemma81_section, main_theorem_section, non_injective_section, non_surjective_section,
    oracle_agreement_section, regularity_battery, regular_members, run_cylinders, sibling_section, thm12_maps,
    thm12_section, Corpus, CorpusParams, Outcome, Section,
};

const SEED: u64 = 1;

const MAIN_MIN_CASES: usize = 30;
const MAIN_MAX_TIME: Duration = Duration::from_secs(120);
const COROLLARY_MIN_CASES: usize = 15;
const COROLLARY_MAX_SD_CELLS: usize = 200;
const COROLLARY_MAX_TIME: Duration = Duration::from_secs(300);
const THM12_MIN_PAIRS: usize = 100;
const THM12_MAX_TIME: Duration = Duration::from_secs(300);
const CONE_MAX_ELEMENTS: usize = 5;
/// Non-isomorphic posets with at most 5 elements, including the empty one: 1+1+2+5+16+63.
const CONE_EXPECTED_POSETS: usize = 88;
const ORACLE_MAX_CELLS: usize = 10;
const ORACLE_MIN_CASES: usize = 50;
const ORACLE_INPUTS: usize = 70;

struct Line {
    name: &'static str,
    ok: bool,
    note: String,
}

fn all_pass(s: &Section) -> bool {
    s.failed() == 0 && s.count(Outcome::Skip) == 0
}

fn summary(sections: &[&Section]) -> String {
    sections
        .iter()
        .map(|s| format!("{} {}/{}", s.name, s.passed(), s.cases.len()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn dump_failures(sections: &[&Section]) {
    for s in sections {
        for c in s.failures().take(3) {
            eprintln!("    {} / {} {:?}", s.name, c.name, c.details);
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main_theorem(corpus: &Corpus) -> Line {
    let (s, t) = timed(|| main_theorem_section(corpus));
    dump_failures(&[&s]);
    Line {
        name: "main theorem: t_X iso for regular X",
        ok: all_pass(&s) && s.passed() >= MAIN_MIN_CASES && t < MAIN_MAX_TIME,
        note: format!("{} cases (min {MAIN_MIN_CASES}), {:.1?} (max {:?})", s.passed(), t, MAIN_MAX_TIME),
    }
}

fn corollary(corpus: &Corpus) -> Line {
    let (s, t) = timed(|| corollary_section(corpus, COROLLARY_MAX_SD_CELLS));
    dump_failures(&[&s]);
    let irregular = s
        .cases
        .iter()
        .filter(|c| c.details.iter().any(|(k, v)| k == "regular_base" && v == "false"))
        .count();
    Line {
        name: "corollary: DSd^2 Y iso BSd Y",
        ok: all_pass(&s) && s.passed() >= COROLLARY_MIN_CASES && irregular > 0 && t < COROLLARY_MAX_TIME,
        note: format!(
            "{} cases (min {COROLLARY_MIN_CASES}, {irregular} irregular Y), {:.1?} (max {:?})",
            s.passed(),
            t,
            COROLLARY_MAX_TIME
        ),
    }
}

fn counterexample(name: &'static str, s: Section) -> Line {
    dump_failures(&[&s]);
    Line {
        name,
        ok: all_pass(&s) && !s.cases.is_empty(),
        note: summary(&[&s]),
    }
}

fn thm12(corpus: &Corpus) -> Line {
    let pairs: usize = regular_members(corpus).iter().map(|m| m.set.num_cells()).sum();
    let (s, t) = timed(|| thm12_section(&run_cylinders(&thm12_maps(corpus, usize::MAX, 30))));
    dump_failures(&[&s]);
    Line {
        name: "dcr iso for every simplex of regular X",
        ok: all_pass(&s) && pairs >= THM12_MIN_PAIRS && s.passed() >= pairs && t < THM12_MAX_TIME,
        note: format!(
            "{pairs} (X, y) pairs over non-degenerate y (min {THM12_MIN_PAIRS}), {} cylinders, {:.1?} (max {:?})",
            s.passed(),
            t,
            THM12_MAX_TIME
        ),
    }
}

fn cones() -> Line {
    let (s, _) = cones_section(CONE_MAX_ELEMENTS);
    dump_failures(&[&s]);
    Line {
        name: "cones: D(cone NP) iso M(NP -> pt)",
        ok: all_pass(&s) && s.cases.len() == CONE_EXPECTED_POSETS,
        note: format!("{}/{} posets with <= {CONE_MAX_ELEMENTS} elements", s.passed(), CONE_EXPECTED_POSETS),
    }
}

fn oracle() -> Line {
    let s = oracle_agreement_section(SEED, ORACLE_INPUTS, ORACLE_MAX_CELLS);
    dump_failures(&[&s]);
    let skipped = s.count(Outcome::Skip);
    Line {
        name: "oracle agreement on tiny inputs",
        ok: s.failed() == 0 && s.passed() >= ORACLE_MIN_CASES,
        note: format!(
            "{} agree (min {ORACLE_MIN_CASES}), {skipped} zipper-uncertified excluded, <= {ORACLE_MAX_CELLS} cells",
            s.passed()
        ),
    }
}

fn regularity(corpus: &Corpus) -> Line {
    let sections = regularity_battery(corpus);
    let refs: Vec<&Section> = sections.iter().collect();
    dump_failures(&refs);
    Line {
        name: "regularity battery",
        ok: sections.iter().all(|s| all_pass(s) && !s.cases.is_empty()),
        note: summary(&refs),
    }
}

fn structural(corpus: &Corpus) -> Line {
    let runs = cylinder_battery(corpus, SEED);
    let sections = [
        cr_degree_zero_section(&runs),
        sibling_section(&runs),
        deflation_section(corpus),
        lemma81_section(corpus),
        dwyer_section(SEED, 60),
    ];
    let refs: Vec<&Section> = sections.iter().collect();
    dump_failures(&refs);
    Line {
        name: "structural lemmas",
        ok: sections.iter().all(|s| all_pass(s) && !s.cases.is_empty()),
        note: summary(&refs),
    }
}

fn main() -> ExitCode {
    let corpus = gen_corpus(SEED, CorpusParams::default());
    let lines = vec![
        main_theorem(&corpus),
        corollary(&corpus),
        counterexample("non-surjective cylinder reduction", non_surjective_section()),
        counterexample("non-injective dcr", non_injective_section()),
        thm12(&corpus),
        cones(),
        oracle(),
        regularity(&corpus),
        structural(&corpus),
    ];
    println!("acceptance (seed {SEED}, {} corpus members)", corpus.members.len());
    for l in &lines {
        println!("{} {}: {}", if l.ok { "PASS" } else { "FAIL" }, l.name, l.note);
    }
    let failed = lines.iter().filter(|l| !l.ok).count();
    println!("{} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
