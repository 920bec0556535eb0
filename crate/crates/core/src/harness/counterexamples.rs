//! The two cylinders on which the comparison maps fail to be isomorphisms.

use super::report::{Case, Outcome, Report, Section};
use crate::cylinder::{dcr, embedded_sibling_groups, example_non_injective, example_non_surjective, cylinder_reduction};
use crate::sset::{injective_in_degree, surjective_in_degree};

fn check(name: &str, ok: bool) -> Case {
    Case::new(name, Outcome::from_bool(ok))
}

/// `P = {a < b, a < c} -> a' < b' < c'`: `T` has dimension 2, `M` dimension 3.
pub fn non_surjective_section() -> Section {
    let b = match cylinder_reduction(&example_non_surjective()) {
        Ok(b) => b,
        Err(e) => return Section::new("non-surjective-cr", vec![check("build", false).detail("error", e)]),
    };
    let cr = b.cr();
    Section::new(
        "non-surjective-cr",
        vec![
            check("dim-T", b.t().dim() == 2).detail("dim", b.t().dim()),
            check("dim-M", b.m().dim() == 3).detail("dim", b.m().dim()),
            check("cr-not-surjective-degree-3", !surjective_in_degree(cr, 3)),
            check("cr-bijective-degree-0", injective_in_degree(cr, 0) && surjective_in_degree(cr, 0)),
        ],
    )
}

/// `f♯` for `f : Δ[1] -> Δ[1]/∂Δ[1]`: `dcr` is not injective in degrees 1 and 2.
pub fn non_injective_section() -> Section {
    let (bundle, d) = match dcr(&example_non_injective()) {
        Ok(x) => x,
        Err(e) => return Section::new("non-injective-dcr", vec![check("build", false).detail("error", e)]),
    };
    let dt = &d.desing.quotient;
    let groups = embedded_sibling_groups(dt, 2);
    let sibling_case = match groups.first() {
        Some(g) => check("sibling-2-simplices", g.len() >= 2 && g[0] != g[1])
            .detail("cells", format!("{} {}", g[0], g[1]))
            .detail("vertices", format!("{:?}", dt.cell_vertices(g[0]))),
        None => check("sibling-2-simplices", false),
    };
    Section::new(
        "non-injective-dcr",
        vec![
            check("dcr-injective-degree-0", injective_in_degree(&d.dcr, 0)),
            check("dcr-not-injective-degree-1", !injective_in_degree(&d.dcr, 1)),
            check("dcr-not-injective-degree-2", !injective_in_degree(&d.dcr, 2)),
            sibling_case,
            check("desingularization-certified", d.desing.is_certified())
                .detail("certificate", format!("{:?}", d.desing.certificate)),
            check("cr-bijective-degree-0", injective_in_degree(bundle.cr(), 0) && surjective_in_degree(bundle.cr(), 0)),
        ],
    )
}

pub fn run_counterexamples() -> Report {
    let mut r = Report::new("counterexamples", None);
    r.push(non_surjective_section());
    r.push(non_injective_section());
    r
}
