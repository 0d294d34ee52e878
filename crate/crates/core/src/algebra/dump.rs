//! JSON structure-constant dump.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{BasisElement, FdAlgebra};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::linalg::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDump {
    pub label: String,
    pub degree: usize,
    pub source: usize,
    pub target: usize,
}

/// Basis metadata plus sparse triples `(i, j, k, num, den)` meaning that
/// `b_i * b_j` has coefficient `num/den` on `b_k`. Numerators and
/// denominators are decimal strings so that big integers survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub name: String,
    pub field: Field,
    pub vertices: Vec<String>,
    pub basis: Vec<BasisDump>,
    pub products: Vec<(usize, usize, usize, String, String)>,
}

impl FdAlgebra {
    pub fn to_dump(&self) -> AlgebraDump {
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product(i, j).iter() {
                    let (num, den) = c.to_fraction();
                    products.push((i, j, k, num.to_string(), den.to_string()));
                }
            }
        }
        AlgebraDump {
            name: self.name.clone(),
            field: self.field,
            vertices: self.vertices.clone(),
            basis: self
                .basis
                .iter()
                .map(|b| BasisDump {
                    label: b.label.clone(),
                    degree: b.degree,
                    source: b.source,
                    target: b.target,
                })
                .collect(),
            products,
        }
    }

    /// Rebuilds an algebra from a dump. Only the Peirce shape is checked;
    /// run [`FdAlgebra::associativity_violation`] to validate the products.
    pub fn from_dump(dump: &AlgebraDump) -> Result<FdAlgebra, AlgebraError> {
        let n = dump.basis.len();
        let mut entries: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); n * n];
        for (i, j, k, num, den) in &dump.products {
            if *i >= n || *j >= n || *k >= n {
                return Err(AlgebraError::InvalidData(format!("triple ({i},{j},{k}) out of range")));
            }
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|_| AlgebraError::InvalidData(format!("bad integer `{s}`")))
            };
            let c = dump
                .field
                .from_ratio(&parse(num)?, &parse(den)?)
                .map_err(|e| AlgebraError::InvalidData(e.to_string()))?;
            entries[i * n + j].push((*k, c));
        }
        let table = entries.into_iter().map(SparseVec::from_pairs).collect();
        let basis = dump
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                degree: b.degree,
                source: b.source,
                target: b.target,
            })
            .collect();
        FdAlgebra::from_parts(dump.name.clone(), dump.field, dump.vertices.clone(), basis, table)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::dual_numbers;
    use super::*;

    #[test]
    fn dump_round_trip() {
        let a = dual_numbers();
        let json = serde_json::to_string(&a.to_dump()).unwrap();
        let back: AlgebraDump = serde_json::from_str(&json).unwrap();
        assert!(FdAlgebra::from_dump(&back).unwrap().same_structure(&a));
    }

    #[test]
    fn corrupted_dump_fails_associativity_or_axioms() {
        let mut d = dual_numbers().to_dump();
        // x * x = x turns x into a second idempotent: the unit law still holds
        // but x is in the radical, which is then not nilpotent.
        d.products.push((1, 1, 1, "1".into(), "1".into()));
        let a = FdAlgebra::from_dump(&d).unwrap();
        assert!(a.check_axioms().is_err());
    }
}
