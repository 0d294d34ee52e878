//! Certificates for idempotent ideals `AeA` being stratifying.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cover::{minimal_resolution, Resolution, ResolutionOptions, ResolutionStatus};
use super::LeftModule;
use crate::algebra::{AlgebraElement, FdAlgebra};
use crate::error::{AlgebraError, ModuleError};
use crate::linalg::{SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMode {
    Criterion,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    CertifiedFully,
    CertifiedToDegree { degree: usize },
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        matches!(self, Verdict::CertifiedFully | Verdict::CertifiedToDegree { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Projective multiset (vertex label -> multiplicity) per degree of the
    /// minimal resolution of `A/AeA`.
    Projectives {
        degrees: Vec<BTreeMap<String, usize>>,
        status: ResolutionStatus,
    },
    /// `Tor_n^{eAe}(Ae, eA)` for `n = 0, 1, ...`.
    Tor {
        tor_dims: Vec<usize>,
        ideal_dim: usize,
        status: ResolutionStatus,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifyingCertificate {
    pub idempotent: String,
    pub mode: CertificateMode,
    pub depth: usize,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

fn support(alg: &FdAlgebra, e: &AlgebraElement) -> Result<Vec<usize>, ModuleError> {
    let vertices = alg.idempotent_support(e)?;
    if vertices.is_empty() {
        return Err(AlgebraError::UnsupportedIdempotent.into());
    }
    Ok(vertices)
}

fn ideal_generators(alg: &FdAlgebra, vertices: &[usize]) -> Vec<SparseVec> {
    vertices
        .iter()
        .map(|&v| SparseVec::unit(alg.idempotent_index(v), alg.field()))
        .collect()
}

/// Resolves `A/AeA` and checks that every component in degree `≥ 1` lies in
/// `add(Ae)`. Sufficient, not necessary: a failure is inconclusive.
pub fn check_stratifying_criterion(
    alg: &Arc<FdAlgebra>,
    e: &AlgebraElement,
    label: &str,
    opts: &ResolutionOptions,
) -> Result<StratifyingCertificate, ModuleError> {
    let vertices = support(alg, e)?;
    let ideal = alg.ideal_closure(&ideal_generators(alg, &vertices));
    let quotient = LeftModule::quotient_of_regular(alg.clone(), &ideal);
    let opts = ResolutionOptions {
        continue_after_period: true,
        ..opts.clone()
    };
    let res = minimal_resolution(&quotient, &opts)?;
    let clean = |n: usize| res.terms[n].supported_on(&vertices);
    let computed_clean = (1..res.terms.len()).all(clean);
    let verdict = match res.status {
        _ if !computed_clean => Verdict::Inconclusive,
        ResolutionStatus::Terminated { .. } => Verdict::CertifiedFully,
        // P_{s+p} ≅ P_s, so degree s recurs in positive degree
        ResolutionStatus::Periodic { start, .. } if clean(start) => Verdict::CertifiedFully,
        ResolutionStatus::Periodic { .. } => Verdict::Inconclusive,
        ResolutionStatus::Truncated { degree } => Verdict::CertifiedToDegree { degree },
    };
    Ok(StratifyingCertificate {
        idempotent: label.to_string(),
        mode: CertificateMode::Criterion,
        depth: opts.max_degree,
        verdict,
        evidence: Evidence::Projectives {
            degrees: res.dump().degrees.into_iter().map(|d| d.projectives).collect(),
            status: res.status,
        },
    })
}

/// `eA` as a left module over the corner `C = eAe`.
fn right_factor(alg: &FdAlgebra, corner: &Arc<FdAlgebra>, embedding: &[usize], vertices: &[usize]) -> LeftModule {
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let basis: Vec<usize> = (0..alg.dim()).filter(|&b| local.contains_key(&alg.basis()[b].target)).collect();
    let position: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let weights = basis.iter().map(|&b| local[&alg.basis()[b].target]).collect();
    let action = embedding
        .iter()
        .map(|&c| {
            let cols = basis
                .iter()
                .map(|&b| alg.product(c, b).remap(|k| position.get(&k).copied()))
                .collect();
            SparseMatrix::from_cols(basis.len(), cols)
        })
        .collect();
    LeftModule::new(corner.clone(), weights, action).expect("eA is a left eAe-module")
}

/// Ranks of `Ae ⊗_C d_n` for `n = 1..` along a resolution of `eA` over `C`.
fn tensored_ranks(alg: &FdAlgebra, corner: &FdAlgebra, embedding: &[usize], vertices: &[usize], res: &Resolution) -> (Vec<usize>, Vec<usize>) {
    let f = alg.field();
    // A basis elements with a given source, and their positions
    let mut with_source: Vec<Vec<usize>> = vec![Vec::new(); alg.rank()];
    for (b, e) in alg.basis().iter().enumerate() {
        with_source[e.source].push(b);
    }
    let pos_in_source: HashMap<usize, usize> = with_source
        .iter()
        .flat_map(|list| list.iter().enumerate().map(|(i, &b)| (b, i)))
        .collect();
    let mut corner_with_source: Vec<Vec<usize>> = vec![Vec::new(); corner.rank()];
    for (c, e) in corner.basis().iter().enumerate() {
        corner_with_source[e.source].push(c);
    }

    // Per degree: summand offsets in P_n and in T_n = ⊕ A e_{w_k}.
    let layouts: Vec<(Vec<usize>, Vec<usize>)> = res
        .terms
        .iter()
        .map(|t| {
            let mut p_off = Vec::new();
            let mut t_off = Vec::new();
            let (mut p, mut q) = (0, 0);
            for &w in &t.tops {
                p_off.push(p);
                t_off.push(q);
                p += corner_with_source[w].len();
                q += with_source[vertices[w]].len();
            }
            p_off.push(p);
            t_off.push(q);
            (p_off, t_off)
        })
        .collect();
    let t_dims: Vec<usize> = layouts.iter().map(|(_, t)| *t.last().unwrap()).collect();

    let mut ranks = Vec::new();
    for n in 1..res.terms.len() {
        let d = &res.differentials[n - 1];
        let tops = &res.terms[n].tops;
        let prev_tops = &res.terms[n - 1].tops;
        let (p_off, _) = &layouts[n];
        let (prev_p_off, prev_t_off) = &layouts[n - 1];
        let mut cols = Vec::with_capacity(t_dims[n]);
        for (k, &w) in tops.iter().enumerate() {
            let idem = corner.idempotent_index(w);
            let g = p_off[k] + corner_with_source[w].iter().position(|&c| c == idem).unwrap();
            // image of the generator, split by summand of P_{n-1}
            let image: Vec<(usize, usize, &crate::field::Scalar)> = d.cols[g]
                .iter()
                .map(|(r, x)| {
                    let l = prev_p_off.partition_point(|&o| o <= r) - 1;
                    let c = corner_with_source[prev_tops[l]][r - prev_p_off[l]];
                    (l, embedding[c], x)
                })
                .collect();
            for &y in &with_source[vertices[w]] {
                let mut acc = SparseVec::new();
                for &(l, c, x) in &image {
                    let prod = alg.product(y, c);
                    let shifted = prod.remap(|b| Some(prev_t_off[l] + pos_in_source[&b]));
                    acc = acc.add_scaled(x, &shifted);
                }
                cols.push(acc);
            }
        }
        ranks.push(crate::linalg::rank_of(f, &cols));
    }
    (t_dims, ranks)
}

/// Computes `Tor^{eAe}_n(Ae, eA)` from a resolution of `eA` over `eAe` and
/// compares `Ae ⊗_{eAe} eA` with `AeA`.
pub fn check_stratifying_direct(
    alg: &Arc<FdAlgebra>,
    e: &AlgebraElement,
    label: &str,
    opts: &ResolutionOptions,
) -> Result<StratifyingCertificate, ModuleError> {
    let vertices = support(alg, e)?;
    let depth = opts.max_degree;
    let ideal_dim = alg.ideal_closure(&ideal_generators(alg, &vertices)).rank();
    let corner = alg.corner_at(&vertices);
    let c_alg = Arc::new(corner.algebra);
    let module = right_factor(alg, &c_alg, &corner.embedding, &vertices);
    let res_opts = ResolutionOptions {
        max_degree: depth + 1,
        continue_after_period: true,
        ..opts.clone()
    };
    let res = minimal_resolution(&module, &res_opts)?;
    let (t_dims, ranks) = tensored_ranks(alg, &c_alg, &corner.embedding, &vertices, &res);
    let rank_out = |n: usize| if n == 0 { 0 } else { ranks[n - 1] };
    let top = t_dims.len();
    // Tor_n needs the map into degree n, known unless n is the last computed degree
    // of an unterminated resolution.
    let known = if res.is_terminated() { top } else { top.saturating_sub(1) };
    let tor_dims: Vec<usize> = (0..known)
        .map(|n| {
            let incoming = if n + 1 < top { ranks[n] } else { 0 };
            t_dims[n] - rank_out(n) - incoming
        })
        .collect();
    let tensor_dim = tor_dims.first().copied().unwrap_or(0);
    let higher_vanish = tor_dims.iter().skip(1).all(|&t| t == 0);
    let verdict = if tensor_dim != ideal_dim || !higher_vanish {
        Verdict::Refuted
    } else {
        match res.status {
            ResolutionStatus::Terminated { .. } => Verdict::CertifiedFully,
            ResolutionStatus::Periodic { start, period } if start + period <= depth => Verdict::CertifiedFully,
            _ => Verdict::CertifiedToDegree { degree: depth },
        }
    };
    Ok(StratifyingCertificate {
        idempotent: label.to_string(),
        mode: CertificateMode::Direct,
        depth,
        verdict,
        evidence: Evidence::Tor {
            tor_dims,
            ideal_dim,
            status: res.status,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::build_lambda;
    use crate::path_algebra::algebra_from_presentation;
    use crate::presentation::parse_presentation;

    fn algebra(text: &str) -> Arc<FdAlgebra> {
        Arc::new(algebra_from_presentation(&parse_presentation(text).unwrap(), 8).unwrap().algebra)
    }

    #[test]
    fn middle_vertex_of_zero_relation_is_refuted() {
        let a = algebra("algebra z over Q\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  b*a\n");
        let e = a.idempotent(1);
        let opts = ResolutionOptions::to_degree(4);
        let c = check_stratifying_direct(&a, &e, "e", &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        let Evidence::Tor { tor_dims, ideal_dim, .. } = c.evidence else { panic!() };
        assert_eq!((tor_dims[0], ideal_dim), (4, 3));
        // the criterion cannot certify it either
        let c = check_stratifying_criterion(&a, &e, "e", &opts).unwrap();
        assert!(!c.verdict.is_certified());
    }

    #[test]
    fn end_vertex_is_stratifying() {
        let a = algebra("algebra z over Q\nvertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n");
        let e = a.idempotent(1);
        let opts = ResolutionOptions::to_degree(4);
        let direct = check_stratifying_direct(&a, &e, "e", &opts).unwrap();
        assert_eq!(direct.verdict, Verdict::CertifiedFully);
        let crit = check_stratifying_criterion(&a, &e, "e", &opts).unwrap();
        assert_eq!(crit.verdict, Verdict::CertifiedFully);
    }

    #[test]
    fn dual_numbers_lambda_certificates() {
        let x = algebra("algebra x over Q\nvertices: a\narrows:\n  al: a -> a\nrelations:\n  al*al\n");
        let l = build_lambda(x.clone(), x);
        let opts = ResolutionOptions::to_degree(8);
        let e1 = check_stratifying_criterion(&l.algebra, &l.e1, "e1", &opts).unwrap();
        assert_eq!(e1.verdict, Verdict::CertifiedFully);
        let Evidence::Projectives { degrees, status } = &e1.evidence else { panic!() };
        assert_eq!(*status, ResolutionStatus::Periodic { start: 1, period: 1 });
        assert_eq!(degrees.len(), 9);
        let e2 = check_stratifying_direct(&l.algebra, &l.e2, "e2", &opts).unwrap();
        let Evidence::Tor { tor_dims, ideal_dim, .. } = &e2.evidence else { panic!() };
        assert_eq!((tor_dims.as_slice(), *ideal_dim), (&[8][..], 8));
    }
}
