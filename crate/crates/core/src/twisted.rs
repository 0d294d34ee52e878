//! The trivially twisted tensor product `A ⊗₀ B`.
//!
//! Basis `a_i ⊗ b_j` in lexicographic order (index `i * dim B + j`), product
//! `(a⊗b)(a'⊗b') = aa'⊗bb' − a·a'₂ ⊗ b₂·b'` where `x₂` is the radical part.

use std::sync::Arc;

use crate::algebra::{relabel_isomorphic, AlgebraElement, BasisElement, FdAlgebra, Quotient, QuotientOutcome};
use crate::error::AlgebraError;
use crate::field::Scalar;
use crate::linalg::{Echelon, SparseVec};

/// `x ⊗ y` in lexicographic coordinates.
pub fn tensor(x: &SparseVec, y: &SparseVec, dim_b: usize) -> SparseVec {
    SparseVec::from_pairs(
        x.iter()
            .flat_map(|(i, a)| y.iter().map(move |(j, b)| (i * dim_b + j, a * b))),
    )
}

/// Applies `f` to every pure tensor `x_i ⊗ y_j` of a vector in `X ⊗ Y`.
fn split(v: &SparseVec, dim_y: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
    v.iter().map(move |(k, c)| (k / dim_y, k % dim_y, c))
}

/// `μ_τ` on two pure tensors given by coordinate vectors.
pub fn twisted_product(a: &FdAlgebra, b: &FdAlgebra, x: (&SparseVec, &SparseVec), y: (&SparseVec, &SparseVec)) -> SparseVec {
    let (xa, xb) = x;
    let (ya, yb) = y;
    let main = tensor(&a.mul(xa, ya), &b.mul(xb, yb), b.dim());
    let cross = tensor(&a.mul(xa, &a.radical_part(ya)), &b.mul(&b.radical_part(xb), yb), b.dim());
    main.add_scaled(&-a.field().one(), &cross)
}

/// `τ(y ⊗ x) = x ⊗ y − x₂ ⊗ y₂` for `y ∈ B`, `x ∈ A`, as coordinates in `A ⊗ B`.
pub fn tau(b: &FdAlgebra, a: &FdAlgebra, y: &SparseVec, x: &SparseVec) -> SparseVec {
    tensor(x, y, b.dim()).add_scaled(&-a.field().one(), &tensor(&a.radical_part(x), &b.radical_part(y), b.dim()))
}

/// `τ(b ⊗ a)` for elements of the given algebras.
pub fn twist_tau(
    b_alg: &FdAlgebra,
    a_alg: &FdAlgebra,
    b: &AlgebraElement,
    a: &AlgebraElement,
) -> Result<SparseVec, AlgebraError> {
    if !b_alg.owns(b) || !a_alg.owns(a) {
        return Err(AlgebraError::ForeignElement);
    }
    Ok(tau(b_alg, a_alg, b.coeffs(), a.coeffs()))
}

#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub algebra: FdAlgebra,
    pub a: Arc<FdAlgebra>,
    pub b: Arc<FdAlgebra>,
    /// Basis indices spanning `A ⊗ rad(B)`.
    pub a_rad_b: Vec<usize>,
    /// Basis indices spanning `rad(A) ⊗ B`.
    pub rad_a_b: Vec<usize>,
}

impl TwistedTensor {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.b.dim() + j
    }
}

pub fn build_twisted_tensor(a: Arc<FdAlgebra>, b: Arc<FdAlgebra>) -> TwistedTensor {
    assert_eq!(a.field(), b.field(), "factors must share a field");
    let (na, nb) = (a.dim(), b.dim());
    let rb = b.rank();
    let mut basis = Vec::with_capacity(na * nb);
    for x in a.basis() {
        for y in b.basis() {
            basis.push(BasisElement {
                label: format!("{}#{}", x.label, y.label),
                degree: x.degree + y.degree,
                source: x.source * rb + y.source,
                target: x.target * rb + y.target,
            });
        }
    }
    let f = a.field();
    let mut table = Vec::with_capacity(na * na * nb * nb);
    for i in 0..na {
        for j in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let (ui, uj) = (SparseVec::unit(i, f), SparseVec::unit(j, f));
                    let (ui2, uj2) = (SparseVec::unit(i2, f), SparseVec::unit(j2, f));
                    table.push(twisted_product(&a, &b, (&ui, &uj), (&ui2, &uj2)));
                }
            }
        }
    }
    let mut vertices = Vec::with_capacity(a.rank() * rb);
    for va in a.vertices() {
        for vb in b.vertices() {
            vertices.push(format!("{va}_{vb}"));
        }
    }
    let name = format!("{} (x)0 {}", a.name(), b.name());
    let algebra = FdAlgebra::from_parts(name, f, vertices, basis, table).expect("twisted tensor data is Peirce-homogeneous");
    let a_rad_b = (0..na * nb).filter(|k| b.is_radical(k % nb)).collect();
    let rad_a_b = (0..na * nb).filter(|k| a.is_radical(k / nb)).collect();
    TwistedTensor {
        algebra,
        a,
        b,
        a_rad_b,
        rad_a_b,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistViolation {
    /// 1: compatibility with `μ_A`; 2: compatibility with `μ_B`.
    pub axiom: u8,
    pub indices: (usize, usize, usize),
}

/// Expands a bilinear map over pure tensors of a vector in `X ⊗ Y`.
fn expand(v: &SparseVec, dim_y: usize, mut f: impl FnMut(usize, usize) -> SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, j, c) in split(v, dim_y) {
        acc = acc.add_scaled(c, &f(i, j));
    }
    acc
}

/// Checks both twisting-map compatibilities on all basis triples.
pub fn verify_twist_axioms(a: &FdAlgebra, b: &FdAlgebra) -> Option<TwistViolation> {
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let ua = |i| SparseVec::unit(i, f);
    // τ ∘ (id ⊗ μ_A) = (μ_A ⊗ id) ∘ (id ⊗ τ) ∘ (τ ⊗ id) on B ⊗ A ⊗ A
    for j in 0..nb {
        for i in 0..na {
            for k in 0..na {
                let lhs = tau(b, a, &ua(j), a.product(i, k));
                let first = tau(b, a, &ua(j), &ua(i));
                let rhs = expand(&first, nb, |x, y| {
                    let second = tau(b, a, &ua(y), &ua(k));
                    expand(&second, nb, |z, w| tensor(a.product(x, z), &ua(w), nb))
                });
                if lhs != rhs {
                    return Some(TwistViolation { axiom: 1, indices: (j, i, k) });
                }
            }
        }
    }
    // τ ∘ (μ_B ⊗ id) = (id ⊗ μ_B) ∘ (τ ⊗ id) ∘ (id ⊗ τ) on B ⊗ B ⊗ A
    for j in 0..nb {
        for l in 0..nb {
            for i in 0..na {
                let lhs = tau(b, a, b.product(j, l), &ua(i));
                let first = tau(b, a, &ua(l), &ua(i));
                let rhs = expand(&first, nb, |x, y| {
                    let second = tau(b, a, &ua(j), &ua(x));
                    expand(&second, nb, |z, w| tensor(&ua(z), b.product(w, y), nb))
                });
                if lhs != rhs {
                    return Some(TwistViolation { axiom: 2, indices: (j, l, i) });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct RadicalIdeal {
    pub basis: Vec<usize>,
    pub quotient: Quotient,
    /// The quotient matches the expected plain tensor product.
    pub matches_expected: bool,
}

#[derive(Clone, Debug)]
pub struct RadicalIdeals {
    /// `A ⊗ rad(B)`, quotient expected `A ⊗ B̄`.
    pub a_rad_b: RadicalIdeal,
    /// `rad(A) ⊗ B`, quotient expected `Ā ⊗ B`.
    pub rad_a_b: RadicalIdeal,
    /// Every product `x * y` with `x ∈ A ⊗ rad(B)`, `y ∈ rad(A) ⊗ B` is zero.
    pub cross_products_vanish: bool,
}

fn semisimple_quotient(a: &FdAlgebra) -> FdAlgebra {
    let rad: Vec<AlgebraElement> = a.radical_indices().into_iter().map(|i| a.basis_element(i)).collect();
    match a.quotient_by_ideal(&rad).expect("own elements") {
        QuotientOutcome::Algebra(q) => q.algebra,
        QuotientOutcome::Zero { .. } => unreachable!("the radical is a proper ideal"),
    }
}

fn close(t: &FdAlgebra, basis: &[usize]) -> Result<(Echelon, Quotient), AlgebraError> {
    let gens: Vec<SparseVec> = basis.iter().map(|&i| SparseVec::unit(i, t.field())).collect();
    let ideal = t.ideal_closure(&gens);
    if ideal.rank() != basis.len() {
        return Err(AlgebraError::InvalidData(format!(
            "ideal closure has dimension {} instead of {}",
            ideal.rank(),
            basis.len()
        )));
    }
    match t.quotient_by_echelon(&ideal) {
        QuotientOutcome::Algebra(q) => Ok((ideal, q)),
        QuotientOutcome::Zero { .. } => Err(AlgebraError::InvalidData("radical ideal is everything".into())),
    }
}

fn matches(q: &FdAlgebra, expected: &FdAlgebra) -> bool {
    q.same_structure(expected) || relabel_isomorphic(q, expected).is_some()
}

pub fn radical_ideals(t: &TwistedTensor) -> Result<RadicalIdeals, AlgebraError> {
    let (_, q1) = close(&t.algebra, &t.a_rad_b)?;
    let (_, q2) = close(&t.algebra, &t.rad_a_b)?;
    let a_bbar = build_twisted_tensor(t.a.clone(), Arc::new(semisimple_quotient(&t.b)));
    let abar_b = build_twisted_tensor(Arc::new(semisimple_quotient(&t.a)), t.b.clone());
    let cross = t
        .a_rad_b
        .iter()
        .all(|&x| t.rad_a_b.iter().all(|&y| t.algebra.product(x, y).is_zero()));
    Ok(RadicalIdeals {
        a_rad_b: RadicalIdeal {
            basis: t.a_rad_b.clone(),
            matches_expected: matches(&q1.algebra, &a_bbar.algebra),
            quotient: q1,
        },
        rad_a_b: RadicalIdeal {
            basis: t.rad_a_b.clone(),
            matches_expected: matches(&q2.algebra, &abar_b.algebra),
            quotient: q2,
        },
        cross_products_vanish: cross,
    })
}
