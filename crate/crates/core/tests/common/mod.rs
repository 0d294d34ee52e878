//! Shared fixtures: corpus loading, a brute-force dimension oracle and
//! random presentations.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use djhp_core::algebra::FdAlgebra;
use djhp_core::field::Field;
use djhp_core::path_algebra::{algebra_from_presentation, QuiverAlgebra};
use djhp_core::presentation::{parse_presentation, Presentation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

pub const CUTOFF: usize = 32;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(data_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".qa"))
        .collect();
    names.sort();
    names
}

pub fn presentation(name: &str) -> Presentation {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_presentation(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn quiver_algebra(name: &str) -> QuiverAlgebra {
    algebra_from_presentation(&presentation(name), CUTOFF).unwrap()
}

pub fn algebra(name: &str) -> Arc<FdAlgebra> {
    Arc::new(quiver_algebra(name).algebra)
}

/// Rank of a list of rows over `Q` or `F_p`, by dense elimination.
pub fn rank(rows: Vec<Vec<BigRational>>, field: Field) -> usize {
    let reduce = |x: BigRational| match field {
        Field::Rational => x,
        Field::Prime(p) => {
            let p = BigInt::from(p);
            let inv = x.denom().modpow(&(&p - 2u32), &p);
            let v = ((x.numer() * inv) % &p + &p) % &p;
            BigRational::from_integer(v)
        }
    };
    let modulo = |x: BigRational| match field {
        Field::Rational => x,
        Field::Prime(p) => {
            let p = BigInt::from(p);
            BigRational::from_integer(((x.to_integer() % &p) + &p) % &p)
        }
    };
    let inverse = |x: &BigRational| match field {
        Field::Rational => x.recip(),
        Field::Prime(p) => {
            let p = BigInt::from(p);
            BigRational::from_integer(x.to_integer().modpow(&(&p - 2u32), &p))
        }
    };
    let mut rows: Vec<Vec<BigRational>> = rows.into_iter().map(|r| r.into_iter().map(reduce).collect()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inverse(&rows[r][c]);
        let pivot_row: Vec<BigRational> = rows[r].iter().map(|x| modulo(x * &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = modulo(&*x - &f * y);
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// A path by source vertex and arrows in written order.
type Path = (usize, Vec<usize>);

fn paths_shorter_than(p: &Presentation, n: usize) -> Vec<Path> {
    let q = &p.quiver;
    let mut all: Vec<Path> = (0..q.num_vertices()).map(|v| (v, Vec::new())).collect();
    let mut frontier: Vec<(Path, usize)> = (0..q.num_vertices()).map(|v| ((v, Vec::new()), v)).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for ((s, word), t) in &frontier {
            for (k, a) in q.arrows().iter().enumerate() {
                if a.source == *t {
                    let mut w = vec![k];
                    w.extend(word);
                    next.push(((*s, w), a.target));
                }
            }
        }
        all.extend(next.iter().map(|(p, _)| p.clone()));
        frontier = next;
    }
    all
}

/// `dim kQ / (I + J^n)`, spanning `I` by all `u r v`.
fn truncated_dim(p: &Presentation, n: usize) -> usize {
    let q = &p.quiver;
    let paths = paths_shorter_than(p, n);
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let target = |(s, w): &Path| w.first().map_or(*s, |&a| q.arrows()[a].target);
    let mut rows = Vec::new();
    for r in &p.relations {
        for u in &paths {
            if u.0 != r.target() {
                continue;
            }
            for v in &paths {
                if target(v) != r.source() {
                    continue;
                }
                let mut row = vec![BigRational::zero(); paths.len()];
                for (c, term) in r.terms() {
                    let mut w = u.1.clone();
                    w.extend(&term.arrows);
                    w.extend(&v.1);
                    if let Some(&k) = index.get(&(v.0, w)) {
                        let (num, den) = c.to_fraction();
                        row[k] += BigRational::new(num, den);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    paths.len() - rank(rows, p.field)
}

/// Dimension of an admissible quotient by enumerating paths until
/// `dim kQ/(I + J^n)` stabilizes.
pub fn oracle_dim(p: &Presentation, max_len: usize) -> Option<usize> {
    let mut prev = truncated_dim(p, 1);
    for n in 2..=max_len {
        let d = truncated_dim(p, n);
        if d == prev {
            return Some(d);
        }
        prev = d;
    }
    None
}

/// DSL text for a random admissible presentation: every path of length 3 is
/// a relation, plus a few length-2 monomials and binomials.
pub fn random_presentation_text(max_vertices: usize, max_arrows: usize) -> impl Strategy<Value = String> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            let arrows = proptest::collection::vec((0..n, 0..n), 0..=max_arrows);
            (Just(n), arrows)
        })
        .prop_flat_map(|(n, arrows)| {
            let extra = proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), -3i64..=3), 0..4);
            (Just(n), Just(arrows), extra)
        })
        .prop_map(|(n, arrows, extra)| {
            let mut text = String::from("algebra random over Q\nvertices:");
            for v in 0..n {
                text.push_str(&format!(" v{v}"));
            }
            text.push_str("\narrows:\n");
            for (k, (s, t)) in arrows.iter().enumerate() {
                text.push_str(&format!("  x{k}: v{s} -> v{t}\n"));
            }
            text.push_str("relations:\n");
            let paths = |len: usize| -> Vec<Vec<usize>> {
                let mut out: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..len {
                    let mut next = Vec::new();
                    for w in &out {
                        for (k, (s, _)) in arrows.iter().enumerate() {
                            if w.last().is_none_or(|&l| arrows[l].1 == *s) {
                                let mut w2 = w.clone();
                                w2.push(k);
                                next.push(w2);
                            }
                        }
                    }
                    out = next;
                }
                out
            };
            // traversal order -> written order
            let word = |w: &[usize]| w.iter().rev().map(|k| format!("x{k}")).collect::<Vec<_>>().join("*");
            let endpoints = |w: &[usize]| (arrows[w[0]].0, arrows[*w.last().unwrap()].1);
            let twos = paths(2);
            let mut seen = std::collections::BTreeSet::new();
            for (i, j, c) in extra {
                if twos.is_empty() {
                    break;
                }
                let p = &twos[i.index(twos.len())];
                let q = &twos[j.index(twos.len())];
                let line = if p == q || endpoints(p) != endpoints(q) || c == 0 {
                    word(p)
                } else {
                    let sign = if c > 0 { '-' } else { '+' };
                    format!("{} {sign} {}*{}", word(p), c.abs(), word(q))
                };
                if seen.insert(line.clone()) {
                    text.push_str(&format!("  {line}\n"));
                }
            }
            for w in paths(3) {
                text.push_str(&format!("  {}\n", word(&w)));
            }
            text
        })
}

pub fn random_presentation(max_vertices: usize, max_arrows: usize) -> impl Strategy<Value = Presentation> {
    random_presentation_text(max_vertices, max_arrows).prop_map(|t| parse_presentation(&t).unwrap_or_else(|e| panic!("{e}\n{t}")))
}
