//! Finite-dimensional elementary algebras given by structure constants.
//!
//! Every basis element `b` is Peirce-homogeneous: `b = e_t b e_s` for
//! primitive idempotents `e_s`, `e_t` that are themselves basis elements.
//! Degree-0 basis elements are exactly the primitive idempotents and span
//! the semisimple part; positive-degree elements span the radical. The
//! semisimple section `a = a1 + a2` is therefore a coordinate projection.

mod dump;
mod iso;
mod ops;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::AlgebraError;
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, SparseVec};

pub use dump::{AlgebraDump, BasisDump};
pub use iso::{relabel_isomorphic, Relabeling};
pub use ops::{Block, Corner, Quotient, QuotientOutcome};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct FdAlgebra {
    id: u64,
    name: String,
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    vertex_of: Vec<Option<usize>>,
    table: Vec<SparseVec>,
    generators: OnceLock<Vec<usize>>,
}

/// An element of a specific [`FdAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: u64,
    coeffs: SparseVec,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

impl FdAlgebra {
    /// Assembles an algebra from its basis and products.
    ///
    /// `table[i * n + j]` is `b_i * b_j`. Checks the Peirce shape of the data;
    /// the algebra axioms are checked separately by [`FdAlgebra::check_axioms`]
    /// and [`FdAlgebra::associativity_violation`].
    pub fn from_parts(
        name: impl Into<String>,
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec>,
    ) -> Result<Self, AlgebraError> {
        let n = basis.len();
        let bad = |m: String| Err(AlgebraError::InvalidData(m));
        if table.len() != n * n {
            return bad(format!("expected {} products, found {}", n * n, table.len()));
        }
        let mut idempotents = vec![usize::MAX; vertices.len()];
        let mut vertex_of = vec![None; n];
        for (i, b) in basis.iter().enumerate() {
            if b.source >= vertices.len() || b.target >= vertices.len() {
                return bad(format!("basis element {} has an unknown endpoint", b.label));
            }
            if b.degree == 0 {
                if b.source != b.target || idempotents[b.source] != usize::MAX {
                    return bad(format!("degree-0 element {} is not a new vertex idempotent", b.label));
                }
                idempotents[b.source] = i;
                vertex_of[i] = Some(b.source);
            }
        }
        if let Some(v) = idempotents.iter().position(|&i| i == usize::MAX) {
            return bad(format!("vertex {} has no idempotent", vertices[v]));
        }
        for i in 0..n {
            for j in 0..n {
                let prod = &table[i * n + j];
                if prod.max_index().is_some_and(|k| k >= n) {
                    return bad(format!("product ({i},{j}) has an out-of-range index"));
                }
                if prod.is_zero() {
                    continue;
                }
                if basis[i].source != basis[j].target {
                    return bad(format!("product ({i},{j}) of non-composable elements is nonzero"));
                }
                for (k, _) in prod.iter() {
                    if basis[k].target != basis[i].target || basis[k].source != basis[j].source {
                        return bad(format!("product ({i},{j}) leaves its Peirce component"));
                    }
                }
            }
        }
        Ok(FdAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            field,
            vertices,
            basis,
            idempotents,
            vertex_of,
            table,
            generators: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of primitive idempotents, i.e. of simple modules.
    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Basis index of the primitive idempotent at `vertex`.
    pub fn idempotent_index(&self, vertex: usize) -> usize {
        self.idempotents[vertex]
    }

    /// Vertex of a basis element that is a primitive idempotent.
    pub fn vertex_of(&self, index: usize) -> Option<usize> {
        self.vertex_of[index]
    }

    pub fn is_radical(&self, index: usize) -> bool {
        self.basis[index].degree > 0
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_radical(i)).collect()
    }

    pub fn radical_dim(&self) -> usize {
        self.dim() - self.rank()
    }

    /// `b_i * b_j` in basis coordinates.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if self.basis[i].source != self.basis[j].target {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j).iter() {
                    let t = &ab * c;
                    match acc.get_mut(&k) {
                        Some(v) => *v += &t,
                        None => {
                            acc.insert(k, t);
                        }
                    }
                }
            }
        }
        SparseVec::from_map(acc)
    }

    /// Coordinates of the unit `sum_v e_v`.
    pub fn unit_vec(&self) -> SparseVec {
        SparseVec::from_pairs(self.idempotents.iter().map(|&i| (i, self.field.one())))
    }

    pub fn element(&self, coeffs: SparseVec) -> AlgebraElement {
        debug_assert!(coeffs.max_index().is_none_or(|m| m < self.dim()));
        AlgebraElement { algebra: self.id, coeffs }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        self.element(SparseVec::unit(i, self.field))
    }

    pub fn unit(&self) -> AlgebraElement {
        self.element(self.unit_vec())
    }

    pub fn idempotent(&self, vertex: usize) -> AlgebraElement {
        self.basis_element(self.idempotents[vertex])
    }

    /// Sum of the idempotents at the given vertices.
    pub fn idempotent_sum(&self, vertices: &[usize]) -> AlgebraElement {
        self.element(SparseVec::from_pairs(
            vertices.iter().map(|&v| (self.idempotents[v], self.field.one())),
        ))
    }

    pub fn owns(&self, x: &AlgebraElement) -> bool {
        x.algebra == self.id
    }

    fn check_owner(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.owns(x) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignElement)
        }
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_owner(x)?;
        self.check_owner(y)?;
        Ok(self.element(self.mul(&x.coeffs, &y.coeffs)))
    }

    pub fn semisimple_part(&self, x: &SparseVec) -> SparseVec {
        x.filter(|i| !self.is_radical(i))
    }

    pub fn radical_part(&self, x: &SparseVec) -> SparseVec {
        x.filter(|i| self.is_radical(i))
    }

    /// Splits `x = a1 + a2` with `a1` semisimple and `a2` radical.
    pub fn radical_decompose(&self, x: &AlgebraElement) -> Result<(AlgebraElement, AlgebraElement), AlgebraError> {
        self.check_owner(x)?;
        Ok((
            self.element(self.semisimple_part(&x.coeffs)),
            self.element(self.radical_part(&x.coeffs)),
        ))
    }

    /// Vertices whose idempotents make up `e`, if `e` is a 0/1 sum of them.
    pub fn idempotent_support(&self, e: &AlgebraElement) -> Result<Vec<usize>, AlgebraError> {
        self.check_owner(e)?;
        if self.mul(&e.coeffs, &e.coeffs) != e.coeffs {
            return Err(AlgebraError::NotIdempotent);
        }
        let mut vertices = Vec::new();
        for (i, c) in e.coeffs.iter() {
            match self.vertex_of[i] {
                Some(v) if c.is_one() => vertices.push(v),
                _ => return Err(AlgebraError::UnsupportedIdempotent),
            }
        }
        Ok(vertices)
    }

    /// A generating set: the idempotents plus radical basis elements
    /// spanning a complement of `rad^2` in the radical. Cached.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let rad = self.radical_indices();
            let mut ech = Echelon::new(self.field);
            for &i in &rad {
                for &j in &rad {
                    ech.insert(self.product(i, j));
                }
            }
            let mut gens = self.idempotents.clone();
            for &i in &rad {
                if ech.insert(&SparseVec::unit(i, self.field)).is_some() {
                    gens.push(i);
                }
            }
            gens.sort_unstable();
            gens
        })
    }

    /// Same field, basis shape and structure constants; labels are ignored.
    pub fn same_structure(&self, other: &FdAlgebra) -> bool {
        self.field == other.field
            && self.rank() == other.rank()
            && self.dim() == other.dim()
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(a, b)| (a.degree, a.source, a.target) == (b.degree, b.source, b.target))
            && self.table == other.table
    }

    /// The first basis triple violating associativity.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.basis[i].source != self.basis[j].target {
                    continue;
                }
                let ij = self.product(i, j);
                for k in 0..n {
                    if self.basis[j].source != self.basis[k].target {
                        continue;
                    }
                    let left = self.mul(ij, &SparseVec::unit(k, self.field));
                    let right = self.mul(&SparseVec::unit(i, self.field), self.product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Unit law, idempotent orthogonality and radical nilpotency.
    pub fn check_axioms(&self) -> Result<(), AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidData(m));
        let unit = self.unit_vec();
        for i in 0..self.dim() {
            let e = SparseVec::unit(i, self.field);
            if self.mul(&unit, &e) != e || self.mul(&e, &unit) != e {
                return bad(format!("unit law fails on {}", self.basis[i].label));
            }
        }
        for (v, &i) in self.idempotents.iter().enumerate() {
            for (w, &j) in self.idempotents.iter().enumerate() {
                let expected = if v == w { SparseVec::unit(i, self.field) } else { SparseVec::new() };
                if *self.product(i, j) != expected {
                    return bad(format!("idempotents {} and {} misbehave", self.vertices[v], self.vertices[w]));
                }
            }
        }
        match self.nilpotency_index() {
            Some(_) => Ok(()),
            None => bad("radical is not nilpotent".into()),
        }
    }

    /// Least `m` with `rad^m = 0`, or `None` if the radical span is not a
    /// nilpotent ideal within `dim + 1` steps.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let rad = self.radical_indices();
        let mut power: Vec<SparseVec> = rad.iter().map(|&i| SparseVec::unit(i, self.field)).collect();
        for m in 1..=self.dim() + 1 {
            if power.is_empty() {
                return Some(m);
            }
            let mut ech = Echelon::new(self.field);
            for x in &power {
                for &r in &rad {
                    let y = self.mul(&SparseVec::unit(r, self.field), x);
                    if y.iter().any(|(k, _)| !self.is_radical(k)) {
                        return None;
                    }
                    ech.insert(&y);
                }
            }
            power = ech.rows().to_vec();
        }
        None
    }

    /// The opposite algebra: same basis, products reversed.
    pub fn opposite(&self) -> FdAlgebra {
        let n = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                degree: b.degree,
                source: b.target,
                target: b.source,
            })
            .collect();
        let table = (0..n * n).map(|ij| self.table[(ij % n) * n + ij / n].clone()).collect();
        FdAlgebra::from_parts(format!("{}^op", self.name), self.field, self.vertices.clone(), basis, table)
            .expect("opposite of a valid algebra is valid")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// `k[x]/(x^2)` built by hand.
    pub(crate) fn dual_numbers() -> FdAlgebra {
        let f = Field::Rational;
        let basis = vec![
            BasisElement { label: "e".into(), degree: 0, source: 0, target: 0 },
            BasisElement { label: "x".into(), degree: 1, source: 0, target: 0 },
        ];
        let u = |i| SparseVec::unit(i, f);
        let table = vec![u(0), u(1), u(1), SparseVec::new()];
        FdAlgebra::from_parts("k[x]/(x^2)", f, vec!["a".into()], basis, table).unwrap()
    }

    #[test]
    fn dual_numbers_axioms() {
        let a = dual_numbers();
        a.check_axioms().unwrap();
        assert_eq!(a.associativity_violation(), None);
        assert_eq!(a.nilpotency_index(), Some(2));
        let x = a.basis_element(1);
        assert!(a.multiply(&x, &x).unwrap().is_zero());
        assert_eq!(a.multiply(&x, &a.unit()).unwrap(), x);
        assert_eq!(a.generators(), &[0, 1]);
    }

    #[test]
    fn decomposition_and_foreign_elements() {
        let a = dual_numbers();
        let b = dual_numbers();
        let e_plus_x = a.element(a.unit_vec().add(&SparseVec::unit(1, a.field()), a.field()));
        let (s, r) = a.radical_decompose(&e_plus_x).unwrap();
        assert_eq!(s, a.basis_element(0));
        assert_eq!(r, a.basis_element(1));
        assert_eq!(a.multiply(&s, &b.unit()), Err(AlgebraError::ForeignElement));
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = Field::Rational;
        let basis = vec![BasisElement { label: "e".into(), degree: 0, source: 0, target: 0 }];
        assert!(FdAlgebra::from_parts("bad", f, vec!["a".into()], basis.clone(), vec![]).is_err());
        assert!(FdAlgebra::from_parts("bad", f, vec!["a".into(), "b".into()], basis, vec![SparseVec::unit(0, f)]).is_err());
    }
}
