//! Projective covers and minimal projective resolutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::iso::{modules_isomorphic, IsoOptions};
use super::LeftModule;
use crate::algebra::FdAlgebra;
use crate::cancel::CancelToken;
use crate::error::ModuleError;
use crate::linalg::{kernel_of, Echelon, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct Cover {
    /// Vertex of each indecomposable summand, in generator order.
    pub tops: Vec<usize>,
    /// Basis index in `M` of the generator mapped to by each summand.
    pub generators: Vec<usize>,
    pub projective: LeftModule,
    /// `dim M x dim P`.
    pub map: SparseMatrix,
    pub syzygy: LeftModule,
    /// `dim P x dim syzygy`.
    pub inclusion: SparseMatrix,
}

#[derive(Clone, Debug)]
pub enum CoverOutcome {
    Zero,
    Cover(Box<Cover>),
}

/// Minimal projective cover. Top generators are the first standard basis
/// vectors (per weight) that are independent modulo `rad·M`.
pub fn projective_cover(m: &LeftModule) -> CoverOutcome {
    if m.dim() == 0 {
        return CoverOutcome::Zero;
    }
    let alg = m.algebra().clone();
    let f = m.field();
    let spaces = m.weight_spaces();
    let rad = m.radical_spans();
    let mut generators = Vec::new();
    for (w, space) in spaces.iter().enumerate() {
        let mut ech = Echelon::new(f);
        for v in &rad[w] {
            ech.insert(v);
        }
        for &i in space {
            if ech.insert(&SparseVec::unit(i, f)).is_some() {
                generators.push(i);
            }
        }
    }
    generators.sort_unstable();
    let tops: Vec<usize> = generators.iter().map(|&g| m.weights()[g]).collect();
    let projective = LeftModule::projective(alg.clone(), &tops);

    // Summand s has basis the algebra elements with source tops[s], in order;
    // such an element b maps to b · m_{g_s}.
    let mut cols = Vec::with_capacity(projective.dim());
    for (&v, &g) in tops.iter().zip(&generators) {
        for (b, e) in alg.basis().iter().enumerate() {
            if e.source == v {
                cols.push(m.action(b).cols[g].clone());
            }
        }
    }
    let map = SparseMatrix::from_cols(m.dim(), cols);

    let mut kernel_spans = vec![Vec::new(); alg.rank()];
    let p_spaces = projective.weight_spaces();
    for (w, space) in p_spaces.iter().enumerate() {
        let images: Vec<SparseVec> = space.iter().map(|&i| map.cols[i].clone()).collect();
        for k in kernel_of(f, &images, m.dim()) {
            kernel_spans[w].push(k.remap(|j| Some(space[j])));
        }
    }
    let (syzygy, inclusion) = projective.submodule(&kernel_spans);
    CoverOutcome::Cover(Box::new(Cover {
        tops,
        generators,
        projective,
        map,
        syzygy,
        inclusion,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// `P_length` is the last nonzero term.
    Terminated { length: usize },
    /// Computed through `P_degree` without terminating.
    Truncated { degree: usize },
    /// The syzygy `Ω^(start+period)` is isomorphic to `Ω^start` (`Ω^0 = M`).
    Periodic { start: usize, period: usize },
}

#[derive(Clone, Debug)]
pub struct ResolutionOptions {
    pub max_degree: usize,
    pub detect_period: bool,
    /// How many earlier syzygies are compared against the newest one.
    pub window: usize,
    /// Keep resolving to `max_degree` after periodicity is found.
    pub continue_after_period: bool,
    pub iso: IsoOptions,
    pub cancel: Option<CancelToken>,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            max_degree: 8,
            detect_period: true,
            window: 16,
            continue_after_period: false,
            iso: IsoOptions::default(),
            cancel: None,
        }
    }
}

impl ResolutionOptions {
    pub fn to_degree(max_degree: usize) -> Self {
        ResolutionOptions {
            max_degree,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProjectiveTerm {
    pub tops: Vec<usize>,
    pub module: LeftModule,
}

impl ProjectiveTerm {
    /// Multiplicity of each `A e_v`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.module.algebra().rank()];
        for &v in &self.tops {
            m[v] += 1;
        }
        m
    }

    pub fn supported_on(&self, vertices: &[usize]) -> bool {
        self.tops.iter().all(|v| vertices.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: Arc<FdAlgebra>,
    pub target: LeftModule,
    pub terms: Vec<ProjectiveTerm>,
    /// `P_0 -> M`.
    pub augmentation: SparseMatrix,
    /// `differentials[n]: P_{n+1} -> P_n`.
    pub differentials: Vec<SparseMatrix>,
    pub status: ResolutionStatus,
}

pub fn minimal_resolution(m: &LeftModule, opts: &ResolutionOptions) -> Result<Resolution, ModuleError> {
    let alg = m.algebra().clone();
    let mut terms: Vec<ProjectiveTerm> = Vec::new();
    let mut differentials = Vec::new();
    let mut augmentation = SparseMatrix::zero(m.dim(), 0);
    let mut syzygies = vec![m.clone()];
    let mut previous_inclusion: Option<SparseMatrix> = None;
    let mut periodic = None;
    let mut status = ResolutionStatus::Terminated { length: 0 };
    let mut n = 0;
    loop {
        if opts.cancel.as_ref().is_some_and(|c| c.is_cancelled()) {
            return Err(ModuleError::Cancelled);
        }
        let current = syzygies.last().unwrap();
        let cover = match projective_cover(current) {
            CoverOutcome::Zero => break,
            CoverOutcome::Cover(c) => c,
        };
        match &previous_inclusion {
            None => augmentation = cover.map.clone(),
            Some(inc) => differentials.push(inc.compose(&cover.map)),
        }
        terms.push(ProjectiveTerm {
            tops: cover.tops.clone(),
            module: cover.projective.clone(),
        });
        let kernel = cover.syzygy;
        if kernel.dim() == 0 {
            status = ResolutionStatus::Terminated { length: n };
            break;
        }
        if opts.detect_period && periodic.is_none() {
            let from = syzygies.len().saturating_sub(opts.window);
            for (start, earlier) in syzygies.iter().enumerate().skip(from) {
                if modules_isomorphic(&kernel, earlier, &opts.iso).isomorphic {
                    periodic = Some(ResolutionStatus::Periodic {
                        start,
                        period: n + 1 - start,
                    });
                    break;
                }
            }
        }
        if n >= opts.max_degree || (periodic.is_some() && !opts.continue_after_period) {
            status = periodic.unwrap_or(ResolutionStatus::Truncated { degree: n });
            break;
        }
        previous_inclusion = Some(cover.inclusion);
        syzygies.push(kernel);
        n += 1;
    }
    Ok(Resolution {
        algebra: alg,
        target: m.clone(),
        terms,
        augmentation,
        differentials,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDump {
    pub degree: usize,
    /// Vertex label -> multiplicity.
    pub projectives: BTreeMap<String, usize>,
    /// `(row, col, num, den)` of the map out of this degree (the augmentation
    /// at degree 0).
    pub differential: Vec<(usize, usize, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub status: ResolutionStatus,
    pub degrees: Vec<DegreeDump>,
}

impl Resolution {
    /// Index of the last computed term, if any.
    pub fn top_degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self.status, ResolutionStatus::Terminated { .. })
    }

    /// Map out of `P_n`: the augmentation for `n = 0`.
    pub fn map_out_of(&self, n: usize) -> &SparseMatrix {
        if n == 0 {
            &self.augmentation
        } else {
            &self.differentials[n - 1]
        }
    }

    /// Rank checks: the augmentation is onto, consecutive maps compose to
    /// zero, `dim ker d_n = rank d_{n+1}`, and the last map is injective
    /// when the resolution terminated.
    pub fn verify_exact(&self) -> Result<(), ModuleError> {
        let f = self.algebra.field();
        if self.terms.is_empty() {
            return if self.target.dim() == 0 { Ok(()) } else { Err(ModuleError::NotExact(0)) };
        }
        if self.augmentation.rank(f) != self.target.dim() {
            return Err(ModuleError::NotExact(0));
        }
        for n in 0..self.terms.len() {
            let out = self.map_out_of(n);
            let dim = self.terms[n].module.dim();
            let kernel_dim = dim - out.rank(f);
            let incoming = if n + 1 < self.terms.len() {
                let d = &self.differentials[n];
                if !out.compose(d).is_zero() {
                    return Err(ModuleError::NotExact(n));
                }
                Some(d.rank(f))
            } else if self.is_terminated() {
                Some(0)
            } else {
                None
            };
            if incoming.is_some_and(|r| r != kernel_dim) {
                return Err(ModuleError::NotExact(n));
            }
        }
        Ok(())
    }

    /// Every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        let f = self.algebra.field();
        self.differentials.iter().enumerate().all(|(n, d)| {
            let mut rad = Echelon::new(f);
            for v in self.terms[n].module.radical_spans().iter().flatten() {
                rad.insert(v);
            }
            d.cols.iter().all(|c| rad.contains(c))
        })
    }

    /// `Σ (-1)^i dim P_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| if i % 2 == 0 { t.module.dim() as i64 } else { -(t.module.dim() as i64) })
            .sum()
    }

    pub fn dump(&self) -> ResolutionDump {
        let labels = self.algebra.vertices();
        let degrees = self
            .terms
            .iter()
            .enumerate()
            .map(|(n, t)| {
                let mut projectives = BTreeMap::new();
                for &v in &t.tops {
                    *projectives.entry(labels[v].clone()).or_insert(0) += 1;
                }
                let mut differential = Vec::new();
                for (col, c) in self.map_out_of(n).cols.iter().enumerate() {
                    for (row, x) in c.iter() {
                        let (num, den) = x.to_fraction();
                        differential.push((row, col, num.to_string(), den.to_string()));
                    }
                }
                DegreeDump {
                    degree: n,
                    projectives,
                    differential,
                }
            })
            .collect();
        ResolutionDump {
            status: self.status,
            degrees,
        }
    }
}
