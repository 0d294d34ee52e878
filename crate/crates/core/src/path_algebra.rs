//! From a presentation `kQ/I` to a structure-constant algebra.
//!
//! Admissibility is certified exactly: for a candidate length `L` the
//! procedure checks that every path of length `L` lies in the span of the
//! ideal elements `p * r * q` whose longest term has length at most
//! `L + spread`, where `spread` is the largest gap between the longest and
//! shortest term of a relation. For homogeneous relations this is the graded
//! check `I_L = kQ_L`. Success proves `J^L ⊆ I`.
//!
//! Once `J^L ⊆ I` is known, `kQ/I = T / W` where `T` is spanned by paths of
//! length `< L` and `W` by the truncations of all `p * r * q`. Normal forms are
//! the paths that are not echelon pivots when the deglex-largest path is
//! always eliminated first.

use std::collections::HashMap;

use crate::algebra::{BasisElement, FdAlgebra};
use crate::cancel::CancelToken;
use crate::error::AdmissibilityError;
use crate::field::Scalar;
use crate::linalg::{Echelon, SparseVec};
use crate::presentation::{PathWord, Presentation, Relation};

/// Hard cap on the number of enumerated paths.
pub const PATH_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityCertificate {
    /// Least `L <= cutoff` with every path of length `L` in the ideal.
    pub nilpotency_length: usize,
    pub cutoff: usize,
    /// All relations are homogeneous, so the check was degree by degree.
    pub graded: bool,
}

/// Paths of length `0..=max_len`, sorted deglex and indexed.
struct PathTable {
    paths: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    /// `level_start[l]` is the index of the first path of length `l`.
    level_start: Vec<usize>,
    /// `from[l][v]`: paths of length `l` starting at `v`.
    from: Vec<Vec<Vec<usize>>>,
    /// `into[l][v]`: paths of length `l` ending at `v`.
    into: Vec<Vec<Vec<usize>>>,
}

impl PathTable {
    fn build(p: &Presentation, max_len: usize, cancel: &CancelToken) -> Result<Self, AdmissibilityError> {
        let q = &p.quiver;
        let nv = q.num_vertices();
        let mut levels: Vec<Vec<PathWord>> = vec![(0..nv).map(PathWord::trivial).collect()];
        for len in 1..=max_len {
            if cancel.is_cancelled() {
                return Err(AdmissibilityError::Cancelled);
            }
            let prev = &levels[len - 1];
            let mut next = Vec::new();
            for path in prev {
                for (a, arrow) in q.arrows().iter().enumerate() {
                    if arrow.source == path.target {
                        let mut arrows = Vec::with_capacity(len);
                        arrows.push(a);
                        arrows.extend_from_slice(&path.arrows);
                        next.push(PathWord {
                            arrows,
                            source: path.source,
                            target: arrow.target,
                        });
                    }
                }
            }
            next.sort();
            let total: usize = levels.iter().map(Vec::len).sum::<usize>() + next.len();
            if total > PATH_LIMIT {
                return Err(AdmissibilityError::TooManyPaths {
                    length: len,
                    limit: PATH_LIMIT,
                });
            }
            levels.push(next);
        }
        let mut table = PathTable {
            paths: Vec::new(),
            index: HashMap::new(),
            level_start: Vec::new(),
            from: Vec::new(),
            into: Vec::new(),
        };
        for level in levels {
            table.level_start.push(table.paths.len());
            let mut from = vec![Vec::new(); nv];
            let mut into = vec![Vec::new(); nv];
            for path in level {
                let i = table.paths.len();
                from[path.source].push(i);
                into[path.target].push(i);
                table.index.insert(path.clone(), i);
                table.paths.push(path);
            }
            table.from.push(from);
            table.into.push(into);
        }
        table.level_start.push(table.paths.len());
        Ok(table)
    }

    fn max_len(&self) -> usize {
        self.level_start.len() - 2
    }

    /// Calls `f` with the vector of every `p * r * q` with
    /// `len(p) + len(q) = s` for each admissible `s`, where `keep(s)` decides.
    fn for_each_generator(
        &self,
        relations: &[Relation],
        keep: impl Fn(&Relation, usize) -> bool,
        cancel: &CancelToken,
        mut f: impl FnMut(SparseVec),
    ) -> Result<(), AdmissibilityError> {
        let max = self.max_len();
        for r in relations {
            for s in 0..=max {
                if !keep(r, s) {
                    continue;
                }
                if r.max_len() + s > max {
                    break;
                }
                for lp in 0..=s {
                    if cancel.is_cancelled() {
                        return Err(AdmissibilityError::Cancelled);
                    }
                    let lq = s - lp;
                    for &pi in &self.from[lp][r.target()] {
                        for &qi in &self.into[lq][r.source()] {
                            let (pp, qq) = (&self.paths[pi], &self.paths[qi]);
                            let v = SparseVec::from_pairs(r.terms().iter().map(|(c, t)| {
                                let mut arrows = pp.arrows.clone();
                                arrows.extend_from_slice(&t.arrows);
                                arrows.extend_from_slice(&qq.arrows);
                                let path = PathWord {
                                    arrows,
                                    source: qq.source,
                                    target: pp.target,
                                };
                                (self.index[&path], c.clone())
                            }));
                            f(v);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn spread(p: &Presentation) -> usize {
    p.relations.iter().map(|r| r.max_len() - r.min_len()).max().unwrap_or(0)
}

/// Does every path of length `len` lie in the ideal?
fn certifies(p: &Presentation, len: usize, cancel: &CancelToken) -> Result<bool, AdmissibilityError> {
    let spread = spread(p);
    let table = PathTable::build(p, len + spread, cancel)?;
    let mut ech = Echelon::new(p.field);
    let graded = spread == 0;
    table.for_each_generator(
        &p.relations,
        |r, s| !graded || r.max_len() + s == len,
        cancel,
        |v| {
            ech.insert(&v);
        },
    )?;
    let (lo, hi) = (table.level_start[len], table.level_start[len + 1]);
    Ok((lo..hi).all(|i| ech.contains(&SparseVec::unit(i, p.field))))
}

/// Certifies that the relations generate an admissible ideal, returning the
/// least nilpotency length found up to `cutoff`.
pub fn validate_admissible(p: &Presentation, cutoff: usize) -> Result<AdmissibilityCertificate, AdmissibilityError> {
    validate_admissible_with(p, cutoff, &CancelToken::new())
}

pub fn validate_admissible_with(
    p: &Presentation,
    cutoff: usize,
    cancel: &CancelToken,
) -> Result<AdmissibilityCertificate, AdmissibilityError> {
    if cutoff < 2 {
        return Err(AdmissibilityError::CutoffTooSmall(cutoff));
    }
    // No path of length 1 lies in an ideal generated in length >= 2, so
    // the search starts at 2. A quiver without arrows is semisimple.
    if p.quiver.num_arrows() == 0 {
        return Ok(AdmissibilityCertificate {
            nilpotency_length: 1,
            cutoff,
            graded: true,
        });
    }
    for len in 2..=cutoff {
        if certifies(p, len, cancel)? {
            return Ok(AdmissibilityCertificate {
                nilpotency_length: len,
                cutoff,
                graded: spread(p) == 0,
            });
        }
    }
    Err(AdmissibilityError::CutoffInsufficient { cutoff })
}

/// A presented algebra together with its normal-form data.
#[derive(Clone, Debug)]
pub struct QuiverAlgebra {
    pub presentation: Presentation,
    pub certificate: AdmissibilityCertificate,
    pub algebra: FdAlgebra,
    /// Basis index -> normal-form path.
    pub basis_paths: Vec<PathWord>,
    /// Paths of length `< L` -> truncated-space index.
    path_index: HashMap<PathWord, usize>,
    /// Truncated-space index -> basis index, for normal forms.
    basis_of: Vec<Option<usize>>,
    reducer: Echelon,
}

/// Default cutoff for admissibility searches.
pub const DEFAULT_CUTOFF: usize = 32;

pub fn algebra_from_presentation(p: &Presentation, cutoff: usize) -> Result<QuiverAlgebra, AdmissibilityError> {
    algebra_from_presentation_with(p, cutoff, &CancelToken::new())
}

pub fn algebra_from_presentation_with(
    p: &Presentation,
    cutoff: usize,
    cancel: &CancelToken,
) -> Result<QuiverAlgebra, AdmissibilityError> {
    let certificate = validate_admissible_with(p, cutoff, cancel)?;
    let l = certificate.nilpotency_length;
    let field = p.field;
    let table = PathTable::build(p, (l - 1) + spread(p), cancel)?;

    // W: truncations of p r q with at least one term shorter than L.
    let mut reducer = Echelon::new(field);
    let bound = table.level_start[l];
    table.for_each_generator(
        &p.relations,
        |r, s| r.min_len() + s < l,
        cancel,
        |v| {
            reducer.insert(&v.filter(|i| i < bound));
        },
    )?;

    let mut basis_of = vec![None; bound];
    let mut basis_paths = Vec::new();
    for (i, slot) in basis_of.iter_mut().enumerate() {
        if !reducer.is_pivot(i) {
            *slot = Some(basis_paths.len());
            basis_paths.push(table.paths[i].clone());
        }
    }
    let n = basis_paths.len();
    let basis = basis_paths
        .iter()
        .map(|path| BasisElement {
            label: p.quiver.render_path(path),
            degree: path.len(),
            source: path.source,
            target: path.target,
        })
        .collect();

    let normal = |v: &SparseVec| reducer.reduce(v).remap(|i| basis_of[i]);
    let mut products = Vec::with_capacity(n * n);
    for u in &basis_paths {
        if cancel.is_cancelled() {
            return Err(AdmissibilityError::Cancelled);
        }
        for w in &basis_paths {
            let prod = match u.after(w) {
                Some(path) if path.len() < l => normal(&SparseVec::unit(table.index[&path], field)),
                _ => SparseVec::new(),
            };
            products.push(prod);
        }
    }
    let algebra = FdAlgebra::from_parts(
        p.name.clone(),
        field,
        p.quiver.vertices().to_vec(),
        basis,
        products,
    )
    .expect("normal-form algebra has Peirce-homogeneous products");
    Ok(QuiverAlgebra {
        presentation: p.clone(),
        certificate,
        algebra,
        basis_paths,
        path_index: table.index,
        basis_of,
        reducer,
    })
}

impl QuiverAlgebra {
    /// Coordinates of the image of a path in the algebra.
    pub fn path_element(&self, path: &PathWord) -> SparseVec {
        if path.len() >= self.certificate.nilpotency_length {
            return SparseVec::new();
        }
        let i = self.path_index[path];
        self.reducer
            .reduce(&SparseVec::unit(i, self.algebra.field()))
            .remap(|k| self.basis_of[k])
    }

    /// Image of a linear combination of paths.
    pub fn combination(&self, terms: &[(Scalar, PathWord)]) -> SparseVec {
        terms.iter().fold(SparseVec::new(), |acc, (c, path)| {
            acc.add_scaled(c, &self.path_element(path))
        })
    }

    /// Basis index of an arrow (arrows are always normal forms).
    pub fn arrow_index(&self, arrow: usize) -> usize {
        let path = self
            .presentation
            .quiver
            .path(vec![arrow])
            .expect("single arrows are paths");
        self.basis_of[self.path_index[&path]].expect("arrows are never eliminated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn parse(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let p = parse("algebra D over Q\nvertices: a\narrows:\n x: a -> a\nrelations:\n x*x\n");
        let qa = algebra_from_presentation(&p, 2).unwrap();
        assert_eq!(qa.certificate.nilpotency_length, 2);
        assert_eq!(qa.algebra.dim(), 2);
        assert_eq!(qa.algebra.radical_indices(), vec![1]);
        assert!(qa.algebra.product(1, 1).is_zero());
    }

    #[test]
    fn free_loop_is_refused() {
        let p = parse("algebra L over Q\nvertices: a\narrows:\n x: a -> a\n");
        assert_eq!(
            validate_admissible(&p, 10),
            Err(AdmissibilityError::CutoffInsufficient { cutoff: 10 })
        );
    }

    #[test]
    fn non_homogeneous_relations_are_certified_soundly() {
        // x^2 - x^3 alone generates a non-admissible ideal of k<x>.
        let p = parse("algebra N over Q\nvertices: a\narrows:\n x: a -> a\nrelations:\n x*x - x*x*x\n");
        assert!(validate_admissible(&p, 8).is_err());
        // with x^4 added the ideal contains x^2 and the quotient is k[x]/(x^2)
        let p = parse("algebra N over Q\nvertices: a\narrows:\n x: a -> a\nrelations:\n x*x - x*x*x\n x*x*x*x\n");
        let qa = algebra_from_presentation(&p, 8).unwrap();
        assert_eq!(qa.algebra.dim(), 2);
    }

    #[test]
    fn commutative_square() {
        let p = parse(
            "algebra S over Q\nvertices: 1 2 3 4\narrows:\n a: 1 -> 2\n b: 2 -> 4\n c: 1 -> 3\n d: 3 -> 4\nrelations:\n b*a - d*c\n",
        );
        let qa = algebra_from_presentation(&p, 4).unwrap();
        assert_eq!(qa.algebra.dim(), 9);
        assert_eq!(qa.algebra.associativity_violation(), None);
        qa.algebra.check_axioms().unwrap();
        // the eliminated path is the deglex-larger d*c
        let dc = p.quiver.path_from_labels(&["d", "c"]).unwrap();
        let ba = p.quiver.path_from_labels(&["b", "a"]).unwrap();
        assert_eq!(qa.path_element(&dc), qa.path_element(&ba));
        assert!(qa.basis_paths.contains(&ba));
    }

    #[test]
    fn monotone_in_cutoff() {
        let p = parse("algebra T over Q\nvertices: a\narrows:\n x: a -> a\nrelations:\n x*x*x\n");
        assert!(validate_admissible(&p, 2).is_err());
        for cutoff in 3..7 {
            assert_eq!(validate_admissible(&p, cutoff).unwrap().nilpotency_length, 3);
        }
    }
}
