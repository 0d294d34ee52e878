//! Finite-dimensional left modules with an idempotent-adapted basis.
//!
//! Every basis vector `m` carries a weight `v` with `e_v m = m`, so a basis
//! element `b = e_t b e_s` of the algebra maps weight-`s` vectors into the
//! weight-`t` subspace and kills the rest.

mod cover;
mod gldim;
mod iso;
mod strat;
mod tilde;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::FdAlgebra;
use crate::error::ModuleError;
use crate::field::Field;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};

pub use cover::{minimal_resolution, projective_cover, Cover, CoverOutcome, ResolutionOptions, ProjectiveTerm, Resolution, ResolutionDump, ResolutionStatus};
pub use gldim::{global_dimension_bound, GlDimReport, ProjectiveDimension};
pub use iso::{modules_isomorphic, IsoOptions, IsoVerdict};
pub use strat::{
    check_stratifying_criterion, check_stratifying_direct, CertificateMode, Evidence, StratifyingCertificate, Verdict,
};
pub use tilde::{tilde_map, tilde_module, tilde_resolution};

#[derive(Clone, Debug)]
pub struct LeftModule {
    algebra: Arc<FdAlgebra>,
    weights: Vec<usize>,
    action: Vec<SparseMatrix>,
}

impl LeftModule {
    /// Checks shapes and that idempotents act as weight projections.
    pub fn new(algebra: Arc<FdAlgebra>, weights: Vec<usize>, action: Vec<SparseMatrix>) -> Result<Self, ModuleError> {
        let n = weights.len();
        if action.len() != algebra.dim()
            || action.iter().any(|m| m.nrows != n || m.ncols() != n)
            || weights.iter().any(|&w| w >= algebra.rank())
        {
            return Err(ModuleError::WrongAlgebra);
        }
        let f = algebra.field();
        for v in 0..algebra.rank() {
            let e = &action[algebra.idempotent_index(v)];
            for (m, &w) in weights.iter().enumerate() {
                let expected = if w == v { SparseVec::unit(m, f) } else { SparseVec::new() };
                if e.cols[m] != expected {
                    return Err(ModuleError::WrongAlgebra);
                }
            }
        }
        Ok(LeftModule { algebra, weights, action })
    }

    pub fn zero(algebra: Arc<FdAlgebra>) -> Self {
        let action = vec![SparseMatrix::zero(0, 0); algebra.dim()];
        LeftModule {
            algebra,
            weights: Vec::new(),
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn action(&self, b: usize) -> &SparseMatrix {
        &self.action[b]
    }

    /// Number of basis vectors of each weight.
    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.algebra.rank()];
        for &w in &self.weights {
            d[w] += 1;
        }
        d
    }

    /// Basis indices of each weight.
    pub fn weight_spaces(&self) -> Vec<Vec<usize>> {
        let mut spaces = vec![Vec::new(); self.algebra.rank()];
        for (m, &w) in self.weights.iter().enumerate() {
            spaces[w].push(m);
        }
        spaces
    }

    /// `x · m` for `x` in algebra coordinates.
    pub fn act(&self, x: &SparseVec, m: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (b, c) in x.iter() {
            acc = acc.add_scaled(c, &self.action[b].apply(m));
        }
        acc
    }

    /// Full representation check: unit acts as the identity and
    /// `ρ(b_i) ρ(b_j) = ρ(b_i b_j)` for all basis pairs.
    pub fn check_representation(&self) -> bool {
        let alg = &self.algebra;
        let f = self.field();
        let n = self.dim();
        let unit = (0..alg.rank()).fold(SparseMatrix::zero(n, n), |acc, v| {
            acc.add_scaled(&f.one(), &self.action[alg.idempotent_index(v)])
        });
        if unit != SparseMatrix::identity(n, f) {
            return false;
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.action[i].compose(&self.action[j]);
                let rhs = alg
                    .product(i, j)
                    .iter()
                    .fold(SparseMatrix::zero(n, n), |acc, (k, c)| acc.add_scaled(c, &self.action[k]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Direct sum of indecomposable projectives `A e_v`, one per entry of
    /// `tops`. The summand for `v` has basis the algebra basis elements with
    /// source `v`, in index order.
    pub fn projective(algebra: Arc<FdAlgebra>, tops: &[usize]) -> Self {
        let f = algebra.field();
        let n_alg = algebra.dim();
        let mut weights = Vec::new();
        // (summand, algebra basis index) -> module index
        let mut index: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(tops.len());
        for &v in tops {
            let mut map = BTreeMap::new();
            for (b, e) in algebra.basis().iter().enumerate() {
                if e.source == v {
                    map.insert(b, weights.len());
                    weights.push(e.target);
                }
            }
            index.push(map);
        }
        let n = weights.len();
        let mut action = Vec::with_capacity(n_alg);
        for a in 0..n_alg {
            let mut cols = vec![SparseVec::new(); n];
            for map in &index {
                for (&b, &m) in map {
                    cols[m] = algebra.product(a, b).remap(|k| map.get(&k).copied());
                }
            }
            action.push(SparseMatrix::from_cols(n, cols));
        }
        let _ = f;
        LeftModule { algebra, weights, action }
    }

    /// The simple module at `v`.
    pub fn simple(algebra: Arc<FdAlgebra>, v: usize) -> Self {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|b| {
                if algebra.vertex_of(b) == Some(v) {
                    SparseMatrix::identity(1, f)
                } else {
                    SparseMatrix::zero(1, 1)
                }
            })
            .collect();
        LeftModule {
            algebra,
            weights: vec![v],
            action,
        }
    }

    /// `A / I` as a left module, for a two-sided (or left) ideal `I` given
    /// by an echelon basis with pivots at the largest index.
    pub fn quotient_of_regular(algebra: Arc<FdAlgebra>, ideal: &Echelon) -> Self {
        let kept: Vec<usize> = (0..algebra.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
        let pos: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let weights = kept.iter().map(|&b| algebra.basis()[b].target).collect();
        let n = kept.len();
        let action = (0..algebra.dim())
            .map(|a| {
                let cols = kept
                    .iter()
                    .map(|&b| ideal.reduce(algebra.product(a, b)).remap(|k| pos.get(&k).copied()))
                    .collect();
                SparseMatrix::from_cols(n, cols)
            })
            .collect();
        LeftModule { algebra, weights, action }
    }

    /// The submodule spanned by weight-homogeneous vectors, returned with
    /// its inclusion map. `spans[w]` must span a subspace of weight `w`, and
    /// the union must be closed under the action.
    pub fn submodule(&self, spans: &[Vec<SparseVec>]) -> (LeftModule, SparseMatrix) {
        let f = self.field();
        let mut echelons: Vec<Echelon> = Vec::with_capacity(spans.len());
        let mut offsets = Vec::with_capacity(spans.len());
        let mut weights = Vec::new();
        let mut basis = Vec::new();
        for (w, vs) in spans.iter().enumerate() {
            let mut e = Echelon::reduced(f);
            for v in vs {
                e.insert(v);
            }
            offsets.push(basis.len());
            for r in e.rows() {
                basis.push(r.clone());
                weights.push(w);
            }
            echelons.push(e);
        }
        let n = basis.len();
        let alg = &self.algebra;
        let action = (0..alg.dim())
            .map(|a| {
                let t = alg.basis()[a].target;
                let s = alg.basis()[a].source;
                let cols = basis
                    .iter()
                    .zip(&weights)
                    .map(|(u, &w)| {
                        if w != s {
                            return SparseVec::new();
                        }
                        let image = self.action[a].apply(u);
                        debug_assert!(echelons[t].contains(&image), "submodule is not closed");
                        echelons[t].coordinates(&image).remap(|k| Some(offsets[t] + k))
                    })
                    .collect();
                SparseMatrix::from_cols(n, cols)
            })
            .collect();
        let inclusion = SparseMatrix::from_cols(self.dim(), basis);
        (
            LeftModule {
                algebra: self.algebra.clone(),
                weights,
                action,
            },
            inclusion,
        )
    }

    /// `rad(A) · M`, per weight.
    pub fn radical_spans(&self) -> Vec<Vec<SparseVec>> {
        let alg = &self.algebra;
        let mut spans = vec![Vec::new(); alg.rank()];
        for r in alg.radical_indices() {
            let t = alg.basis()[r].target;
            for col in &self.action[r].cols {
                if !col.is_zero() {
                    spans[t].push(col.clone());
                }
            }
        }
        spans
    }

    /// The radical `rad(A) M` as a submodule.
    pub fn radical_submodule(&self) -> (LeftModule, SparseMatrix) {
        self.submodule(&self.radical_spans())
    }
}
