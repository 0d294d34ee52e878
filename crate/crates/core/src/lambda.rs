//! The matrix algebra `Λ(A, B)`.
//!
//! ```text
//!        | A ⊗₀ B    A ⊗ rad B |
//!   Λ =  |                     |
//!        | Ā ⊗ B     Ā ⊗ B     |
//! ```
//!
//! Basis order: block 11 (`A ⊗₀ B`, lexicographic), block 12 (`A` times the
//! radical basis of `B`), block 21 and block 22 (vertices of `A` times the
//! basis of `B`). Elements of `Ā` are the primitive idempotents of `A`.
//!
//! Every block element is handled in "tensor coordinates": a vector in
//! `A ⊗ B` indexed `i * dim B + j`, where for blocks 21/22 the `A` factor is
//! an idempotent basis element. The bimodule actions and the glue maps
//! `φ: (A⊗rad B) ⊗ (Ā⊗B) → A⊗₀B` and `ψ: (Ā⊗B) ⊗ (A⊗rad B) → Ā⊗B` are
//! defined on those coordinates and then assembled into one flat algebra.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{relabel_isomorphic, AlgebraElement, BasisElement, FdAlgebra, QuotientOutcome};
use crate::linalg::SparseVec;
use crate::twisted::{build_twisted_tensor, tensor, twisted_product, TwistedTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockPos {
    B11,
    B12,
    B21,
    B22,
}

impl BlockPos {
    pub fn tag(self) -> &'static str {
        match self {
            BlockPos::B11 => "11",
            BlockPos::B12 => "12",
            BlockPos::B21 => "21",
            BlockPos::B22 => "22",
        }
    }

    pub fn row(self) -> u8 {
        match self {
            BlockPos::B11 | BlockPos::B12 => 1,
            BlockPos::B21 | BlockPos::B22 => 2,
        }
    }

    pub fn col(self) -> u8 {
        match self {
            BlockPos::B11 | BlockPos::B21 => 1,
            BlockPos::B12 | BlockPos::B22 => 2,
        }
    }
}

/// The block-level formulas, shared by the assembled algebra and by the
/// diagram checks.
pub struct BlockRules<'a> {
    pub a: &'a FdAlgebra,
    pub b: &'a FdAlgebra,
}

impl BlockRules<'_> {
    fn unit_a(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.a.field())
    }

    fn unit_b(&self, j: usize) -> SparseVec {
        SparseVec::unit(j, self.b.field())
    }

    fn t(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor(x, y, self.b.dim())
    }

    /// Product of pure tensors `(i, j)` in block `p` and `(k, l)` in block
    /// `q`, as tensor coordinates plus the block it lands in.
    pub fn product(&self, p: BlockPos, (i, j): (usize, usize), q: BlockPos, (k, l): (usize, usize)) -> Option<(BlockPos, SparseVec)> {
        use BlockPos::*;
        let (a, b) = (self.a, self.b);
        let (ui, uj, uk, ul) = (self.unit_a(i), self.unit_b(j), self.unit_a(k), self.unit_b(l));
        let out = match (p, q) {
            (B11, B11) => (B11, twisted_product(a, b, (&ui, &uj), (&uk, &ul))),
            // left action of A ⊗₀ B on A ⊗ rad B
            (B11, B12) => (B12, twisted_product(a, b, (&ui, &uj), (&uk, &ul))),
            (B12, B21) => (B11, self.phi((i, j), (k, l))),
            // right action of Ā ⊗ B on A ⊗ rad B
            (B12, B22) => (B12, self.t(&a.mul(&ui, &uk), b.product(j, l))),
            // right action of A ⊗₀ B on Ā ⊗ B
            (B21, B11) => (B21, self.t(&a.mul(&ui, &a.semisimple_part(&uk)), b.product(j, l))),
            (B21, B12) => (B22, self.psi((i, j), (k, l))),
            (B22, B21) | (B22, B22) => (q, self.t(a.product(i, k), b.product(j, l))),
            _ => return None,
        };
        Some(out)
    }

    /// `φ((a⊗b) ⊗ (a'⊗b')) = aa' ⊗ bb'` for `a⊗b ∈ A⊗rad B`, `a'⊗b' ∈ Ā⊗B`.
    pub fn phi(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> SparseVec {
        self.t(self.a.product(i, k), self.b.product(j, l))
    }

    /// `ψ((a⊗b) ⊗ (a'⊗b')) = a·a'₁ ⊗ bb'` for `a⊗b ∈ Ā⊗B`, `a'⊗b' ∈ A⊗rad B`.
    pub fn psi(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> SparseVec {
        let a1 = self.a.semisimple_part(&self.unit_a(k));
        self.t(&self.a.mul(&self.unit_a(i), &a1), self.b.product(j, l))
    }

    /// Bilinear extension of [`BlockRules::product`] to tensor-coordinate
    /// vectors (the landing block is fixed by `p` and `q`).
    pub fn product_vec(&self, p: BlockPos, x: &SparseVec, q: BlockPos, y: &SparseVec) -> SparseVec {
        let nb = self.b.dim();
        let mut acc = SparseVec::new();
        for (u, c) in x.iter() {
            for (v, d) in y.iter() {
                if let Some((_, r)) = self.product(p, (u / nb, u % nb), q, (v / nb, v % nb)) {
                    acc = acc.add_scaled(&(c * d), &r);
                }
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramViolation {
    /// 1: `x·φ(y⊗z) = ψ(x⊗y)·z`; 2: `φ(y⊗x)·z = y·ψ(x⊗z)`.
    pub diagram: u8,
    pub indices: (usize, usize, usize),
}

/// Checks the two compatibility squares between `φ`, `ψ` and the bimodule
/// actions on all basis triples. Indices in a violation are tensor
/// coordinates within the respective blocks.
pub fn verify_bimodule_diagrams(a: &FdAlgebra, b: &FdAlgebra) -> Option<DiagramViolation> {
    use BlockPos::*;
    let rules = BlockRules { a, b };
    let nb = b.dim();
    let f = a.field();
    let abar_b: Vec<usize> = (0..a.rank())
        .flat_map(|v| {
            let e = a.idempotent_index(v);
            (0..nb).map(move |j| e * nb + j)
        })
        .collect();
    let a_radb: Vec<usize> = (0..a.dim())
        .flat_map(|i| b.radical_indices().into_iter().map(move |j| i * nb + j))
        .collect();
    let u = |k| SparseVec::unit(k, f);
    for &x in &abar_b {
        for &y in &a_radb {
            let psi_xy = rules.product_vec(B21, &u(x), B12, &u(y));
            for &z in &abar_b {
                let lhs = rules.product_vec(B21, &u(x), B11, &rules.product_vec(B12, &u(y), B21, &u(z)));
                let rhs = rules.product_vec(B22, &psi_xy, B21, &u(z));
                if lhs != rhs {
                    return Some(DiagramViolation { diagram: 1, indices: (x, y, z) });
                }
            }
        }
    }
    for &y in &a_radb {
        for &x in &abar_b {
            let phi_yx = rules.product_vec(B12, &u(y), B21, &u(x));
            for &z in &a_radb {
                let lhs = rules.product_vec(B11, &phi_yx, B12, &u(z));
                let rhs = rules.product_vec(B12, &u(y), B22, &rules.product_vec(B21, &u(x), B12, &u(z)));
                if lhs != rhs {
                    return Some(DiagramViolation { diagram: 2, indices: (y, x, z) });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
struct Layout {
    nb: usize,
    ra: usize,
    rb: usize,
    /// Position of each `B` basis element within the radical basis.
    rad_pos: Vec<Option<usize>>,
    rad_b: Vec<usize>,
    off12: usize,
    off21: usize,
    off22: usize,
    dim: usize,
}

impl Layout {
    fn new(a: &FdAlgebra, b: &FdAlgebra) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let rad_b = b.radical_indices();
        let mut rad_pos = vec![None; nb];
        for (p, &j) in rad_b.iter().enumerate() {
            rad_pos[j] = Some(p);
        }
        let off12 = na * nb;
        let off21 = off12 + na * rad_b.len();
        let off22 = off21 + a.rank() * nb;
        Layout {
            nb,
            ra: a.rank(),
            rb: b.rank(),
            rad_pos,
            off12,
            off21,
            off22,
            dim: off22 + a.rank() * nb,
            rad_b,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaAlgebra {
    pub algebra: Arc<FdAlgebra>,
    pub a: Arc<FdAlgebra>,
    pub b: Arc<FdAlgebra>,
    pub tensor: Arc<TwistedTensor>,
    pub e1: AlgebraElement,
    pub e2: AlgebraElement,
    layout: Layout,
}

impl LambdaAlgebra {
    /// Vertex `i^j` (block-11 idempotent `e_i ⊗ f_j`).
    pub fn first_vertex(&self, i: usize, j: usize) -> usize {
        i * self.layout.rb + j
    }

    /// Vertex `j^i` (block-22 idempotent `e_i ⊗ f_j`).
    pub fn second_vertex(&self, i: usize, j: usize) -> usize {
        self.layout.ra * self.layout.rb + i * self.layout.rb + j
    }

    pub fn e1_vertices(&self) -> Vec<usize> {
        (0..self.layout.ra * self.layout.rb).collect()
    }

    pub fn e2_vertices(&self) -> Vec<usize> {
        let n = self.layout.ra * self.layout.rb;
        (n..2 * n).collect()
    }

    pub fn index11(&self, i: usize, j: usize) -> usize {
        i * self.layout.nb + j
    }

    /// `i` is an `A` basis index, `j` a radical `B` basis index.
    pub fn index12(&self, i: usize, j: usize) -> usize {
        let p = self.layout.rad_pos[j].expect("block 12 needs a radical B element");
        self.layout.off12 + i * self.layout.rad_b.len() + p
    }

    /// `v` is a vertex of `A`.
    pub fn index21(&self, v: usize, j: usize) -> usize {
        self.layout.off21 + v * self.layout.nb + j
    }

    pub fn index22(&self, v: usize, j: usize) -> usize {
        self.layout.off22 + v * self.layout.nb + j
    }

    /// Block and tensor-coordinate pair `(A basis index, B basis index)`.
    pub fn locate(&self, k: usize) -> (BlockPos, usize, usize) {
        locate(&self.layout, &self.a, k)
    }

    /// Λ index of a tensor-coordinate pair in a given block.
    pub fn index_of(&self, pos: BlockPos, i: usize, j: usize) -> usize {
        match pos {
            BlockPos::B11 => self.index11(i, j),
            BlockPos::B12 => self.index12(i, j),
            BlockPos::B21 => self.index21(self.a.vertex_of(i).expect("idempotent"), j),
            BlockPos::B22 => self.index22(self.a.vertex_of(i).expect("idempotent"), j),
        }
    }

    pub fn block_dims(&self) -> [usize; 4] {
        let l = &self.layout;
        [l.off12, l.off21 - l.off12, l.off22 - l.off21, l.dim - l.off22]
    }
}

fn locate(l: &Layout, a: &FdAlgebra, k: usize) -> (BlockPos, usize, usize) {
    if k < l.off12 {
        (BlockPos::B11, k / l.nb, k % l.nb)
    } else if k < l.off21 {
        let r = k - l.off12;
        let nr = l.rad_b.len();
        (BlockPos::B12, r / nr, l.rad_b[r % nr])
    } else if k < l.off22 {
        let r = k - l.off21;
        (BlockPos::B21, a.idempotent_index(r / l.nb), r % l.nb)
    } else {
        let r = k - l.off22;
        (BlockPos::B22, a.idempotent_index(r / l.nb), r % l.nb)
    }
}

/// Expected dimension `dimA·dimB + dimA·(dimB − rankB) + 2·rankA·dimB`.
pub fn expected_dim(a: &FdAlgebra, b: &FdAlgebra) -> usize {
    a.dim() * b.dim() + a.dim() * (b.dim() - b.rank()) + 2 * a.rank() * b.dim()
}

pub fn build_lambda(a: Arc<FdAlgebra>, b: Arc<FdAlgebra>) -> LambdaAlgebra {
    let tensor_alg = Arc::new(build_twisted_tensor(a.clone(), b.clone()));
    let layout = Layout::new(&a, &b);
    let rules = BlockRules { a: &a, b: &b };
    let f = a.field();
    let (ra, rb, nb) = (layout.ra, layout.rb, layout.nb);
    let first = |i: usize, j: usize| i * rb + j;
    let second = |i: usize, j: usize| ra * rb + i * rb + j;

    let mut basis = Vec::with_capacity(layout.dim);
    let mut located = Vec::with_capacity(layout.dim);
    for k in 0..layout.dim {
        let (pos, i, j) = locate(&layout, &a, k);
        let (x, y) = (&a.basis()[i], &b.basis()[j]);
        let (degree, source, target) = match pos {
            BlockPos::B11 => (x.degree + y.degree, first(x.source, y.source), first(x.target, y.target)),
            BlockPos::B12 => (x.degree + y.degree, second(x.source, y.source), first(x.target, y.target)),
            BlockPos::B21 => (y.degree + 1, first(x.source, y.source), second(x.target, y.target)),
            BlockPos::B22 => (y.degree, second(x.source, y.source), second(x.target, y.target)),
        };
        basis.push(BasisElement {
            label: format!("{}:{}#{}", pos.tag(), x.label, y.label),
            degree,
            source,
            target,
        });
        located.push((pos, i, j));
    }

    let to_index = |pos: BlockPos, v: &SparseVec| -> SparseVec {
        v.remap(|t| {
            let (i, j) = (t / nb, t % nb);
            Some(match pos {
                BlockPos::B11 => i * nb + j,
                BlockPos::B12 => layout.off12 + i * layout.rad_b.len() + layout.rad_pos[j].expect("radical B factor"),
                BlockPos::B21 => layout.off21 + a.vertex_of(i).expect("idempotent A factor") * nb + j,
                BlockPos::B22 => layout.off22 + a.vertex_of(i).expect("idempotent A factor") * nb + j,
            })
        })
    };
    let mut table = Vec::with_capacity(layout.dim * layout.dim);
    for &(p, i, j) in &located {
        for &(q, k, l) in &located {
            let prod = match rules.product(p, (i, j), q, (k, l)) {
                Some((pos, v)) => to_index(pos, &v),
                None => SparseVec::new(),
            };
            table.push(prod);
        }
    }

    let mut vertices = Vec::with_capacity(2 * ra * rb);
    for va in a.vertices() {
        for vb in b.vertices() {
            vertices.push(format!("1:{va}^{vb}"));
        }
    }
    for va in a.vertices() {
        for vb in b.vertices() {
            vertices.push(format!("2:{vb}^{va}"));
        }
    }
    let name = format!("Lambda({}, {})", a.name(), b.name());
    let algebra = Arc::new(
        FdAlgebra::from_parts(name, f, vertices, basis, table).expect("block products respect idempotents"),
    );
    let e1 = algebra.idempotent_sum(&(0..ra * rb).collect::<Vec<_>>());
    let e2 = algebra.idempotent_sum(&(ra * rb..2 * ra * rb).collect::<Vec<_>>());
    LambdaAlgebra {
        algebra,
        a,
        b,
        tensor: tensor_alg,
        e1,
        e2,
        layout,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recollement {
    R1,
    R2,
}

/// One indecomposable factor block and the algebra it was identified with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBlock {
    pub dim: usize,
    pub rank: usize,
    /// Name of the algebra the block is a relabeled copy of.
    pub identified_as: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RecollementFactors {
    pub which: Recollement,
    /// `Λ / Λ e Λ`.
    pub quotient: FdAlgebra,
    /// `e Λ e`.
    pub corner: FdAlgebra,
    pub quotient_blocks: Vec<FactorBlock>,
    pub corner_blocks: Vec<FactorBlock>,
    /// Quotient is commutative with a basis of orthogonal idempotents.
    pub quotient_commutative_semisimple: bool,
    /// R1 only: the corner has literally the structure constants of `A ⊗₀ B`.
    pub corner_is_tensor: bool,
    /// Some expected block identification has no relabeling witness.
    pub unverified: bool,
}

/// The one-dimensional algebra `k`.
pub fn ground_algebra(field: crate::field::Field) -> FdAlgebra {
    FdAlgebra::from_parts(
        "k",
        field,
        vec!["pt".into()],
        vec![BasisElement {
            label: "1".into(),
            degree: 0,
            source: 0,
            target: 0,
        }],
        vec![SparseVec::unit(0, field)],
    )
    .expect("k is an algebra")
}

fn identify(alg: &FdAlgebra, expected: &FdAlgebra) -> Vec<FactorBlock> {
    alg.block_decompose()
        .iter()
        .map(|blk| {
            let c = &blk.corner.algebra;
            FactorBlock {
                dim: c.dim(),
                rank: c.rank(),
                identified_as: relabel_isomorphic(c, expected).map(|_| expected.name().to_string()),
            }
        })
        .collect()
}

pub fn recollement_factors(l: &LambdaAlgebra, which: Recollement) -> RecollementFactors {
    let lam = &l.algebra;
    let e = match which {
        Recollement::R1 => &l.e1,
        Recollement::R2 => &l.e2,
    };
    let quotient = match lam.quotient_by_ideal(std::slice::from_ref(e)).expect("own idempotent") {
        QuotientOutcome::Algebra(q) => q.algebra,
        QuotientOutcome::Zero { .. } => unreachable!("e1 and e2 are proper idempotents"),
    };
    let corner = lam.corner_algebra(e).expect("e1 and e2 are vertex idempotents").algebra;
    let k = ground_algebra(lam.field());
    let commutative_semisimple = quotient.radical_dim() == 0 && quotient.is_commutative();
    let (quotient_blocks, corner_blocks, corner_is_tensor) = match which {
        Recollement::R1 => {
            let corner_is_tensor = corner.same_structure(&l.tensor.algebra);
            let q = identify(&quotient, &k);
            let c = vec![FactorBlock {
                dim: corner.dim(),
                rank: corner.rank(),
                identified_as: corner_is_tensor.then(|| l.tensor.algebra.name().to_string()),
            }];
            (q, c, corner_is_tensor)
        }
        Recollement::R2 => (identify(&quotient, &l.a), identify(&corner, &l.b), false),
    };
    let unverified = quotient_blocks.iter().chain(&corner_blocks).any(|b| b.identified_as.is_none());
    RecollementFactors {
        which,
        quotient: quotient.with_name(format!("Lambda/Lambda e{} Lambda", if which == Recollement::R1 { 1 } else { 2 })),
        corner: corner.with_name(format!("e{0} Lambda e{0}", if which == Recollement::R1 { 1 } else { 2 })),
        quotient_blocks,
        corner_blocks,
        quotient_commutative_semisimple: commutative_semisimple,
        corner_is_tensor,
        unverified,
    }
}
