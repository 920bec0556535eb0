use forge_core::harness::{
    gen_corpus, run_counterexamples, verify_main_theorem, Corpus, CorpusParams, Provenance,
};
use forge_core::sset::is_regular;

fn small() -> CorpusParams {
    CorpusParams {
        random_quotients: 6,
        ..CorpusParams::default()
    }
}

#[test]
fn corpus_is_deterministic() {
    let (a, b) = (gen_corpus(5, small()), gen_corpus(5, small()));
    assert_eq!(a.members.len(), b.members.len());
    for (x, y) in a.members.iter().zip(&b.members) {
        assert_eq!(x.name, y.name);
        assert_eq!(*x.set, *y.set);
    }
}

#[test]
fn corpus_contents() {
    let c = gen_corpus(0, small());
    assert!(c.members.iter().any(|m| m.name == "sphere2"));
    assert!(c.members.iter().any(|m| m.provenance == Provenance::RandomQuotient));
    for m in c.members.iter().filter(|m| m.provenance == Provenance::SdImage) {
        assert!(is_regular(&m.set), "{}", m.name);
    }
}

#[test]
fn corpus_survives_a_disk_round_trip() {
    let c = gen_corpus(9, small());
    let dir = std::env::temp_dir().join(format!("forge-corpus-{}", std::process::id()));
    c.write_to(&dir).unwrap();
    let d = Corpus::read_from(&dir).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(d.seed, 9);
    assert_eq!(d.members.len(), c.members.len());
    for (x, y) in c.members.iter().zip(&d.members) {
        assert_eq!((&x.name, x.provenance), (&y.name, y.provenance));
        assert_eq!(*x.set, *y.set);
    }
}

#[test]
fn reports_are_stable_under_a_fixed_seed() {
    let c = gen_corpus(2, small());
    let (a, b) = (verify_main_theorem(&c), verify_main_theorem(&c));
    assert_eq!(a.render(false), b.render(false));
    assert_eq!(a.failed(), 0);
}

#[test]
fn counterexamples_reproduce() {
    let r = run_counterexamples();
    assert_eq!(r.failed(), 0, "{}", r.render(false));
}

#[test]
fn dwyer_battery_sees_both_outcomes() {
    let s = forge_core::harness::dwyer_section(3, 60);
    let dwyer = |v: &str| s.cases.iter().any(|c| c.details.iter().any(|(k, x)| k == "dwyer" && x == v));
    assert!(dwyer("true") && dwyer("false"));
    assert_eq!(s.failed(), 0);
}
