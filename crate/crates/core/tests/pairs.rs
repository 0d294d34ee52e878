//! The verification suite over pairs drawn from the corpus.

mod common;

use std::sync::Arc;

use common::{algebra, presentation, CUTOFF};
use djhp_core::lambda_quiver::GeneratorImages;
use djhp_core::modules::{global_dimension_bound, ResolutionOptions};
use djhp_core::presentation::PathWord;
use djhp_core::report::{run_verification, stratifying_certificates, LoadedPair, SuiteOptions};

const PAIRS: [(&str, &str); 8] = [
    ("dual_x.qa", "dual_y.qa"),
    ("line4.qa", "line3.qa"),
    ("cubic.qa", "dual_y.qa"),
    ("exterior.qa", "line3.qa"),
    ("square.qa", "dual_x.qa"),
    ("zero_path.qa", "cubic.qa"),
    ("two_points.qa", "square.qa"),
    ("point.qa", "zero_path.qa"),
];

fn pair(a: &str, b: &str) -> LoadedPair {
    LoadedPair::new(&presentation(a), &presentation(b), CUTOFF).unwrap()
}

#[test]
fn every_check_passes_on_corpus_pairs() {
    for (a, b) in PAIRS {
        let checks = run_verification(&pair(a, b), &SuiteOptions::default()).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{a} {b}: {failed:?}");
    }
}

#[test]
fn criterion_never_contradicts_direct_check() {
    for (a, b) in PAIRS {
        let certs = stratifying_certificates(&pair(a, b), &SuiteOptions::default()).unwrap();
        for (crit, direct) in certs[..2].iter().zip(&certs[2..]) {
            assert_eq!(crit.idempotent, direct.idempotent);
            if crit.verdict.is_certified() {
                assert!(direct.verdict.is_certified(), "{a} {b} {}: {:?}", crit.idempotent, direct.verdict);
            }
        }
    }
}

#[test]
fn global_dimension_is_finite_or_infinite_on_both_sides() {
    let opts = ResolutionOptions::to_degree(8);
    let gl = |a: &Arc<djhp_core::algebra::FdAlgebra>| global_dimension_bound(a, &opts).unwrap().overall;
    let lines = pair("line4.qa", "line3.qa");
    for a in [lines.a(), lines.b(), &Arc::new(lines.lambda.tensor.algebra.clone()), &lines.lambda.algebra] {
        assert!(gl(a).is_finite(), "{}", a.name());
    }
    let dual = pair("dual_x.qa", "dual_y.qa");
    for a in [dual.a(), dual.b(), &dual.lambda.algebra] {
        assert!(gl(a).is_infinite(), "{}", a.name());
    }
    assert!(gl(&algebra("cubic.qa")).is_infinite());
    assert!(gl(&algebra("square.qa")).is_finite());
}

/// Every path of the generated quiver maps into the block given by the
/// copies of its endpoints.
#[test]
fn path_images_land_in_their_blocks() {
    for (a, b) in [("dual_x.qa", "dual_y.qa"), ("line4.qa", "line3.qa")] {
        let p = pair(a, b);
        let images = GeneratorImages::new(&p.generated, &p.qa, &p.qb, &p.lambda);
        let q = &p.generated.presentation.quiver;
        let first = p.lambda.e1_vertices().len();
        let copy = |v: usize| if v < first { 1 } else { 2 };
        let mut layer: Vec<PathWord> = (0..q.num_vertices()).map(PathWord::trivial).collect();
        let mut nonzero = 0;
        for _ in 0..=6 {
            let mut next = Vec::new();
            for path in &layer {
                let image = images.path(path);
                for (k, _) in image.iter() {
                    let (pos, _, _) = p.lambda.locate(k);
                    assert_eq!((pos.row(), pos.col()), (copy(path.target), copy(path.source)), "{a} {b}");
                }
                nonzero += usize::from(!image.is_zero());
                for (x, arrow) in q.arrows().iter().enumerate() {
                    if arrow.source == path.target {
                        let mut word = vec![x];
                        word.extend(&path.arrows);
                        next.push(q.path(word).unwrap());
                    }
                }
            }
            layer = next;
        }
        assert!(nonzero >= p.lambda.algebra.dim());
    }
}
