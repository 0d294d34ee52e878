//! Golden files for the generated presentations and the reports of the two
//! worked pairs. Set `DJHP_BLESS=1` to rewrite them.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use common::{presentation, CUTOFF};
use djhp_core::presentation::{emit_presentation, render_relation, Format};
use djhp_core::report::{build_report, DjhpReport, LoadedPair, SuiteOptions, UserFlags};

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("DJHP_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {name}"));
    assert_eq!(actual, expected, "golden {name} differs");
}

fn pair(a: &str, b: &str) -> LoadedPair {
    LoadedPair::new(&presentation(a), &presentation(b), CUTOFF).unwrap()
}

#[test]
fn line_pair_relations() {
    let p = pair("line4.qa", "line3.qa");
    let g = &p.generated.presentation;
    let actual: BTreeSet<String> = g.relations.iter().map(|r| render_relation(g, r)).collect();
    let mut expected = BTreeSet::new();
    for j in 5..=7 {
        expected.insert(format!("a3_{j}*a2_{j}*a1_{j}"));
        for i in 2..=4 {
            expected.insert(format!("c_{i}_{j}*a{}_{j}", i - 1));
        }
    }
    for i in 1..=4 {
        expected.insert(format!("b2_{i}*c_{i}_6*b1_{i}"));
    }
    assert_eq!(actual, expected);
}

#[test]
fn line_pair_arrows() {
    let p = pair("line4.qa", "line3.qa");
    let q = &p.generated.presentation.quiver;
    let arrows: BTreeSet<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| (a.label.clone(), q.vertices()[a.source].clone(), q.vertices()[a.target].clone()))
        .collect();
    let mut expected = BTreeSet::new();
    for j in 5..=7 {
        for i in 1..=3 {
            expected.insert((format!("a{i}_{j}"), format!("{i}_{j}"), format!("{}_{j}", i + 1)));
        }
        for i in 1..=4 {
            expected.insert((format!("c_{i}_{j}"), format!("{i}_{j}"), format!("{j}_{i}")));
        }
    }
    for i in 1..=4 {
        expected.insert((format!("b1_{i}"), format!("5_{i}"), format!("{i}_6")));
        expected.insert((format!("b2_{i}"), format!("6_{i}"), format!("{i}_7")));
    }
    assert_eq!(arrows, expected);
}

#[test]
fn generated_dsl_and_dot() {
    for (a, b, stem) in [("dual_x.qa", "dual_y.qa", "dual"), ("line4.qa", "line3.qa", "lines")] {
        let p = pair(a, b);
        golden(&format!("{stem}.quiver.qa"), &emit_presentation(&p.generated.presentation, Format::Dsl));
        golden(&format!("{stem}.quiver.dot"), &emit_presentation(&p.generated.presentation, Format::Dot));
    }
}

#[test]
fn dot_of_line_pair_has_24_vertices() {
    let p = pair("line4.qa", "line3.qa");
    let dot = emit_presentation(&p.generated.presentation, Format::Dot);
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->") && l.contains('"')).count();
    assert_eq!(nodes, 24, "{dot}");
}

fn report(a: &str, b: &str, user: UserFlags) -> DjhpReport {
    build_report(&pair(a, b), user, &SuiteOptions::default()).unwrap()
}

#[test]
fn report_goldens() {
    for (a, b, stem) in [("dual_x.qa", "dual_y.qa", "dual"), ("line4.qa", "line3.qa", "lines")] {
        let r = report(a, b, UserFlags::default());
        golden(&format!("{stem}.report.txt"), &r.render_text());
        golden(&format!("{stem}.report.json"), &r.to_json());
    }
}

#[test]
fn json_report_round_trips() {
    let r = report("line4.qa", "line3.qa", UserFlags { derived_simple_a: true, derived_simple_b: false });
    assert_eq!(DjhpReport::from_json(&r.to_json()).unwrap(), r);
}
