//! Corners, quotients by two-sided ideals and block decomposition.

use std::collections::HashMap;

use super::{AlgebraElement, BasisElement, FdAlgebra};
use crate::error::AlgebraError;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};

/// `eAe` for `e` a sum of primitive idempotents.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: FdAlgebra,
    /// Corner basis index -> parent basis index.
    pub embedding: Vec<usize>,
    /// Corner vertex -> parent vertex.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FdAlgebra,
    /// `dim(A/I) x dim(A)` matrix of the canonical projection.
    pub projection: SparseMatrix,
    /// Parent basis indices whose images form the quotient basis.
    pub kept: Vec<usize>,
    pub ideal_dim: usize,
}

#[derive(Clone, Debug)]
pub enum QuotientOutcome {
    /// The ideal is the whole algebra.
    Zero { ideal_dim: usize },
    Algebra(Quotient),
}

impl QuotientOutcome {
    pub fn dim(&self) -> usize {
        match self {
            QuotientOutcome::Zero { .. } => 0,
            QuotientOutcome::Algebra(q) => q.algebra.dim(),
        }
    }
}

/// An indecomposable block `cA` with its central idempotent `c`.
#[derive(Clone, Debug)]
pub struct Block {
    pub central_idempotent: AlgebraElement,
    pub corner: Corner,
}

impl FdAlgebra {
    /// Corner algebra `eAe`.
    pub fn corner_algebra(&self, e: &AlgebraElement) -> Result<Corner, AlgebraError> {
        let vertices = self.idempotent_support(e)?;
        Ok(self.corner_at(&vertices))
    }

    /// Corner algebra at a set of vertices (kept in increasing order).
    pub fn corner_at(&self, vertices: &[usize]) -> Corner {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let new_vertex: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let embedding: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                let b = &self.basis[i];
                new_vertex.contains_key(&b.source) && new_vertex.contains_key(&b.target)
            })
            .collect();
        let position: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let basis = embedding
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                BasisElement {
                    label: b.label.clone(),
                    degree: b.degree,
                    source: new_vertex[&b.source],
                    target: new_vertex[&b.target],
                }
            })
            .collect();
        let mut table = Vec::with_capacity(embedding.len() * embedding.len());
        for &i in &embedding {
            for &j in &embedding {
                table.push(self.product(i, j).remap(|k| position.get(&k).copied()));
            }
        }
        let labels = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        let algebra = FdAlgebra::from_parts(format!("eAe({})", self.name), self.field, labels, basis, table)
            .expect("corner of a valid algebra is valid");
        Corner {
            algebra,
            embedding,
            vertices,
        }
    }

    /// Basis (echelon rows) of the two-sided ideal generated by `gens`.
    pub fn ideal_closure(&self, gens: &[SparseVec]) -> Echelon {
        let mut ech = Echelon::new(self.field);
        let mut queue: Vec<SparseVec> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if ech.insert(&v).is_none() {
                continue;
            }
            for b in 0..self.dim() {
                let u = SparseVec::unit(b, self.field);
                let left = self.mul(&u, &v);
                if !left.is_zero() {
                    queue.push(left);
                }
                let right = self.mul(&v, &u);
                if !right.is_zero() {
                    queue.push(right);
                }
            }
        }
        ech
    }

    /// `A / I` where `I` is the two-sided ideal generated by `generators`.
    pub fn quotient_by_ideal(&self, generators: &[AlgebraElement]) -> Result<QuotientOutcome, AlgebraError> {
        for g in generators {
            self.check_owner(g)?;
        }
        let gens: Vec<SparseVec> = generators.iter().map(|g| g.coeffs.clone()).collect();
        let ideal = self.ideal_closure(&gens);
        Ok(self.quotient_by_echelon(&ideal))
    }

    /// Quotient by an ideal given as an echelon basis.
    pub fn quotient_by_echelon(&self, ideal: &Echelon) -> QuotientOutcome {
        let kept: Vec<usize> = (0..self.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
        if kept.is_empty() {
            return QuotientOutcome::Zero { ideal_dim: ideal.rank() };
        }
        let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let project = |v: &SparseVec| ideal.reduce(v).remap(|k| position.get(&k).copied());
        let vertices: Vec<usize> = (0..self.rank())
            .filter(|&v| position.contains_key(&self.idempotents[v]))
            .collect();
        let new_vertex: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let basis = kept
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                BasisElement {
                    label: b.label.clone(),
                    degree: b.degree,
                    source: new_vertex[&b.source],
                    target: new_vertex[&b.target],
                }
            })
            .collect();
        let mut table = Vec::with_capacity(kept.len() * kept.len());
        for &i in &kept {
            for &j in &kept {
                table.push(project(self.product(i, j)));
            }
        }
        let labels = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        let algebra = FdAlgebra::from_parts(format!("A/I({})", self.name), self.field, labels, basis, table)
            .expect("quotient of a valid algebra by an ideal is valid");
        let projection = SparseMatrix::from_cols(
            kept.len(),
            (0..self.dim()).map(|i| project(&SparseVec::unit(i, self.field))).collect(),
        );
        QuotientOutcome::Algebra(Quotient {
            algebra,
            projection,
            kept,
            ideal_dim: ideal.rank(),
        })
    }

    /// Vertex sets of the connected components of the quiver traced by the
    /// radical basis, ordered by smallest vertex.
    pub fn block_vertices(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.rank()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for b in &self.basis {
            let (s, t) = (find(&mut parent, b.source), find(&mut parent, b.target));
            if s != t {
                parent[s.max(t)] = s.min(t);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.rank() {
            let root = find(&mut parent, v);
            let g = *group_of.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(v);
        }
        groups
    }

    /// Decomposition into indecomposable blocks.
    pub fn block_decompose(&self) -> Vec<Block> {
        self.block_vertices()
            .into_iter()
            .map(|vs| Block {
                central_idempotent: self.idempotent_sum(&vs),
                corner: self.corner_at(&vs),
            })
            .collect()
    }

    /// True when `x` commutes with every basis element.
    pub fn is_central(&self, x: &AlgebraElement) -> bool {
        (0..self.dim()).all(|b| {
            let u = SparseVec::unit(b, self.field);
            self.mul(&u, &x.coeffs) == self.mul(&x.coeffs, &u)
        })
    }

    /// True when every product of basis elements commutes.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::dual_numbers;
    use super::*;
    use crate::field::Field;

    /// Path algebra of `1 -> 2` plus an isolated vertex 3.
    fn arrow_plus_point() -> FdAlgebra {
        let f = Field::Rational;
        let mk = |label: &str, degree, source, target| BasisElement {
            label: label.into(),
            degree,
            source,
            target,
        };
        let basis = vec![mk("e1", 0, 0, 0), mk("e2", 0, 1, 1), mk("e3", 0, 2, 2), mk("a", 1, 0, 1)];
        let n = basis.len();
        let mut table = vec![SparseVec::new(); n * n];
        let u = |i| SparseVec::unit(i, f);
        for i in 0..3 {
            table[i * n + i] = u(i);
        }
        table[3 * n] = u(3); // a * e1
        table[n + 3] = u(3); // e2 * a
        FdAlgebra::from_parts("A", f, vec!["1".into(), "2".into(), "3".into()], basis, table).unwrap()
    }

    #[test]
    fn corner_of_unit_is_identity() {
        let a = arrow_plus_point();
        let c = a.corner_algebra(&a.unit()).unwrap();
        assert!(c.algebra.same_structure(&a));
    }

    #[test]
    fn corner_rejects_non_idempotents() {
        let a = dual_numbers();
        assert_eq!(a.corner_algebra(&a.basis_element(1)).unwrap_err(), AlgebraError::NotIdempotent);
    }

    #[test]
    fn quotients() {
        let a = arrow_plus_point();
        let QuotientOutcome::Algebra(q) = a.quotient_by_ideal(&[a.idempotent(0)]).unwrap() else {
            panic!("expected a nonzero quotient");
        };
        assert_eq!(q.algebra.dim(), 2);
        assert_eq!(q.ideal_dim, 2);
        q.algebra.check_axioms().unwrap();
        assert!(matches!(
            a.quotient_by_ideal(&[a.unit()]).unwrap(),
            QuotientOutcome::Zero { ideal_dim: 4 }
        ));
    }

    #[test]
    fn blocks_and_corner_dimensions() {
        let a = arrow_plus_point();
        let blocks = a.block_decompose();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].corner.algebra.dim(), 3);
        assert_eq!(blocks[1].corner.algebra.dim(), 1);
        for b in &blocks {
            assert!(a.is_central(&b.central_idempotent));
            let comp: Vec<usize> = (0..a.rank()).filter(|v| !b.corner.vertices.contains(v)).collect();
            let other = a.corner_at(&comp);
            assert_eq!(b.corner.algebra.dim() + other.algebra.dim(), a.dim());
        }
        // a non-central idempotent loses the off-diagonal part
        let e1 = a.idempotent(0);
        assert!(!a.is_central(&e1));
        assert!(a.corner_at(&[0]).algebra.dim() + a.corner_at(&[1, 2]).algebra.dim() < a.dim());
    }

    #[test]
    fn opposite_reverses_arrows() {
        let a = arrow_plus_point();
        let op = a.opposite();
        assert_eq!(op.basis()[3].source, 1);
        assert_eq!(op.associativity_violation(), None);
        assert!(op.opposite().same_structure(&a));
    }
}
