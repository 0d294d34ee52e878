//! Search for a relabeling (vertex bijection plus basis permutation) that
//! makes two algebras' structure constants literally equal.
//!
//! Sound but incomplete: `None` does not prove the algebras non-isomorphic.

use std::collections::HashMap;

use super::FdAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// Vertex of `a` -> vertex of `b`.
    pub vertex_map: Vec<usize>,
    /// Basis index of `a` -> basis index of `b`.
    pub basis_map: Vec<usize>,
}

const NODE_BUDGET: usize = 200_000;

/// `counts[v][w]` = sorted degrees of basis elements from `v` to `w`.
fn arrow_counts(a: &FdAlgebra) -> Vec<Vec<Vec<usize>>> {
    let r = a.rank();
    let mut counts = vec![vec![Vec::new(); r]; r];
    for b in a.basis() {
        counts[b.source][b.target].push(b.degree);
    }
    for row in counts.iter_mut() {
        for c in row.iter_mut() {
            c.sort_unstable();
        }
    }
    counts
}

fn degree_profile(a: &FdAlgebra) -> Vec<usize> {
    let mut d: Vec<usize> = a.basis().iter().map(|b| b.degree).collect();
    d.sort_unstable();
    d
}

pub fn relabel_isomorphic(a: &FdAlgebra, b: &FdAlgebra) -> Option<Relabeling> {
    if a.field() != b.field()
        || a.dim() != b.dim()
        || a.rank() != b.rank()
        || a.radical_dim() != b.radical_dim()
        || degree_profile(a) != degree_profile(b)
    {
        return None;
    }
    let ca = arrow_counts(a);
    let cb = arrow_counts(b);
    let mut search = Search {
        a,
        b,
        ca: &ca,
        cb: &cb,
        nodes: 0,
    };
    let mut vmap = vec![usize::MAX; a.rank()];
    let mut used = vec![false; b.rank()];
    search.vertices(0, &mut vmap, &mut used)
}

struct Search<'a> {
    a: &'a FdAlgebra,
    b: &'a FdAlgebra,
    ca: &'a [Vec<Vec<usize>>],
    cb: &'a [Vec<Vec<usize>>],
    nodes: usize,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= NODE_BUDGET
    }

    fn vertices(&mut self, v: usize, vmap: &mut Vec<usize>, used: &mut Vec<bool>) -> Option<Relabeling> {
        if v == vmap.len() {
            return self.basis(vmap);
        }
        // try the identity position first
        let order = (0..used.len()).map(|k| (v + k) % used.len());
        for w in order.collect::<Vec<_>>() {
            if used[w] || !self.tick() {
                continue;
            }
            let consistent = self.ca[v][v] == self.cb[w][w]
                && (0..v).all(|u| {
                    self.ca[v][u] == self.cb[w][vmap[u]] && self.ca[u][v] == self.cb[vmap[u]][w]
                });
            if !consistent {
                continue;
            }
            vmap[v] = w;
            used[w] = true;
            if let Some(found) = self.vertices(v + 1, vmap, used) {
                return Some(found);
            }
            used[w] = false;
            vmap[v] = usize::MAX;
        }
        None
    }

    fn basis(&mut self, vmap: &[usize]) -> Option<Relabeling> {
        let (a, b) = (self.a, self.b);
        let mut classes: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
        for (j, e) in b.basis().iter().enumerate() {
            classes.entry((e.source, e.target, e.degree)).or_default().push(j);
        }
        let mut order: Vec<usize> = (0..a.dim()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(a.basis()[i].degree), i));
        let candidates: Vec<Vec<usize>> = (0..a.dim())
            .map(|i| {
                let e = &a.basis()[i];
                classes
                    .get(&(vmap[e.source], vmap[e.target], e.degree))
                    .cloned()
                    .unwrap_or_default()
            })
            .collect();
        let mut map = vec![usize::MAX; a.dim()];
        let mut used = vec![false; b.dim()];
        if self.assign(0, &order, &candidates, &mut map, &mut used) {
            Some(Relabeling {
                vertex_map: vmap.to_vec(),
                basis_map: map,
            })
        } else {
            None
        }
    }

    fn assign(
        &mut self,
        pos: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        let cands = &candidates[i];
        // prefer the candidate at the same rank within its class
        let rank_in_class = candidates[i].iter().position(|&j| j == i).unwrap_or(0);
        for k in 0..cands.len() {
            let j = cands[(rank_in_class + k) % cands.len()];
            if used[j] || !self.tick() {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if self.consistent(&order[..=pos], map) && self.assign(pos + 1, order, candidates, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }

    /// Checks every product of assigned elements whose support is assigned.
    fn consistent(&self, assigned: &[usize], map: &[usize]) -> bool {
        let (a, b) = (self.a, self.b);
        let newest = *assigned.last().unwrap();
        for &i in assigned {
            for &j in assigned {
                // only pairs that involve the newest element, or whose support it completes
                let prod = a.product(i, j);
                let involves = i == newest || j == newest || prod.iter().any(|(k, _)| k == newest);
                if !involves || prod.iter().any(|(k, _)| map[k] == usize::MAX) {
                    continue;
                }
                if prod.remap(|k| Some(map[k])) != *b.product(map[i], map[j]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::dual_numbers;
    use super::super::{BasisElement, FdAlgebra};
    use super::*;
    use crate::field::Field;
    use crate::linalg::SparseVec;

    fn k_times_k() -> FdAlgebra {
        let f = Field::Rational;
        let basis = vec![
            BasisElement { label: "e1".into(), degree: 0, source: 0, target: 0 },
            BasisElement { label: "e2".into(), degree: 0, source: 1, target: 1 },
        ];
        let table = vec![SparseVec::unit(0, f), SparseVec::new(), SparseVec::new(), SparseVec::unit(1, f)];
        FdAlgebra::from_parts("kxk", f, vec!["1".into(), "2".into()], basis, table).unwrap()
    }

    #[test]
    fn identity_witness() {
        let a = dual_numbers();
        let r = relabel_isomorphic(&a, &a).unwrap();
        assert_eq!(r.basis_map, vec![0, 1]);
    }

    #[test]
    fn rejects_different_radicals() {
        assert!(relabel_isomorphic(&k_times_k(), &dual_numbers()).is_none());
    }

    #[test]
    fn finds_vertex_swap() {
        let a = k_times_k();
        let r = relabel_isomorphic(&a, &a.opposite()).unwrap();
        assert_eq!(r.vertex_map.len(), 2);
    }
}
