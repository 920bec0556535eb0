use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use forge_core::cylinder::{example_non_injective, example_non_surjective};
use forge_core::poset::print_pmap;
use forge_core::sset::{is_nonsingular, parse_sset, print_sset, sphere, standard_simplex, subset_cell, Congruence};

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("forge-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sd_and_barratt_of_a_circle() {
    let dir = scratch("sd");
    let input = dir.join("s1.sset");
    fs::write(&input, print_sset(&sphere(1).unwrap())).unwrap();
    let out = dir.join("sd.sset");
    let o = forge(&["sd", input.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let s = parse_sset(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s.counts(), vec![2, 2]);
    let o = forge(&["barratt", input.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(parse_sset(&stdout(&o)).unwrap().counts(), vec![2, 1]);
    for cmd in ["bnat", "lastvertex"] {
        let o = forge(&[cmd, input.to_str().unwrap()]);
        assert!(o.status.success(), "{cmd}");
        assert!(stdout(&o).starts_with("smap "), "{cmd}");
    }
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn desing_exit_codes() {
    let dir = scratch("desing");
    let input = dir.join("s1.sset");
    fs::write(&input, print_sset(&sphere(1).unwrap())).unwrap();
    let out = dir.join("d.sset");
    let eta = dir.join("eta.smap");
    for method in ["zipper", "oracle"] {
        let o = forge(&[
            "desing",
            input.to_str().unwrap(),
            "--method",
            method,
            "-o",
            out.to_str().unwrap(),
            "--emit-eta",
            eta.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let d = parse_sset(&fs::read_to_string(&out).unwrap()).unwrap();
        assert!(is_nonsingular(&d));
        assert!(fs::read_to_string(&eta).unwrap().starts_with("smap "));
    }
    // the triangle with its first and last vertex glued zips only partially
    let tri = Arc::new(standard_simplex(2));
    let mut cong = Congruence::on(tri.clone());
    cong.merge_simplices(&tri.cell_simplex(subset_cell(2, 0b001)), &tri.cell_simplex(subset_cell(2, 0b100)));
    let aba = dir.join("aba.sset");
    fs::write(&aba, print_sset(&cong.quotient("aba").set)).unwrap();
    let o = forge(&["desing", aba.to_str().unwrap(), "--method", "zipper"]);
    assert_eq!(o.status.code(), Some(2));
    let o = forge(&["desing", aba.to_str().unwrap(), "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let big = dir.join("d3.sset");
    fs::write(&big, print_sset(&standard_simplex(3))).unwrap();
    let o = forge(&["desing", big.to_str().unwrap(), "--method", "oracle", "--bound", "4"]);
    assert_eq!(o.status.code(), Some(1));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cylinders_and_tables() {
    let dir = scratch("cyl");
    let phi = dir.join("phi.pmap");
    fs::write(&phi, print_pmap(&example_non_surjective())).unwrap();
    let p = phi.to_str().unwrap();
    let t = parse_sset(&stdout(&forge(&["cylinder", p]))).unwrap();
    assert_eq!(t.dim(), 2);
    let m = parse_sset(&stdout(&forge(&["cylinder", p, "--reduced"]))).unwrap();
    assert_eq!(m.dim(), 3);
    assert!(!forge(&["cylinder", p, "--reduced", "--bundle"]).status.success());
    let bundle = stdout(&forge(&["cylinder", p, "--bundle"]));
    assert!(bundle.contains("\nsmap "));
    let table = stdout(&forge(&["dcr", p]));
    assert!(table.contains("cr surjective 1 0 0 0\n"), "{table}");

    fs::write(&phi, print_pmap(&example_non_injective())).unwrap();
    let table = stdout(&forge(&["dcr", phi.to_str().unwrap()]));
    assert!(table.contains("dcr injective 1 0 0\n"), "{table}");
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corpus_and_reports() {
    let dir = scratch("corpus");
    let c = dir.join("corpus");
    let o = forge(&["corpus", "--seed", "4", "--random-quotients", "4", "-o", c.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(c.join("corpus.txt").exists());
    let report = dir.join("main.txt");
    let o = forge(&["verify", "main", "--corpus", c.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("report main"));
    assert!(text.contains("seed 4\n"));
    assert!(!text.contains("millis"));
    let o = forge(&["counterexamples"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("section non-injective-dcr"));
    fs::remove_dir_all(dir).unwrap();
}
