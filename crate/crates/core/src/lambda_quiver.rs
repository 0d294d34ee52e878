//! The quiver with relations of `Λ(A, B)` generated from presentations of
//! `A` and `B`, and its certification against the constructed algebra.
//!
//! Vertices come in two copies of `Q₀ × P₀`: `i^j` (named `{i}_{j}`) and
//! `j^i` (named `{j}_{i}`). Arrows are `α^j` (`{α}_{j}`), connectors
//! `c(i,j): i^j -> j^i` (`c_{i}_{j}`) and `β^i: s(β)^i -> i^{t(β)}`
//! (`{β}_{i}`). If these names collide, every name gets a type prefix
//! (`v1_`, `v2_`, `a_`, `b_`).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{AdmissibilityError, FieldError, PresentationError};
use crate::field::Scalar;
use crate::lambda::LambdaAlgebra;
use crate::linalg::{Echelon, SparseVec};
use crate::path_algebra::{algebra_from_presentation, AdmissibilityCertificate, QuiverAlgebra};
use crate::presentation::{PathWord, Presentation, Quiver, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexOrigin {
    /// `i^j`.
    First { a: usize, b: usize },
    /// `j^i`.
    Second { a: usize, b: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrowOrigin {
    /// `α^j` for an arrow of `A` and a vertex of `B`.
    Alpha { arrow: usize, b: usize },
    /// `c(i, j)`.
    Connector { a: usize, b: usize },
    /// `β^i` for an arrow of `B` and a vertex of `A`.
    Beta { arrow: usize, a: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationOrigin {
    /// `r^j`.
    FromA { relation: usize, b: usize },
    /// `c(t(α), j) α^j`.
    ConnectorAfterAlpha { arrow: usize, b: usize },
    /// `s^i`.
    FromB { relation: usize, a: usize },
}

#[derive(Clone, Debug)]
pub struct GeneratedPresentation {
    pub presentation: Presentation,
    pub vertex_origins: Vec<VertexOrigin>,
    pub arrow_origins: Vec<ArrowOrigin>,
    pub relation_origins: Vec<RelationOrigin>,
    /// The prefixed fallback naming was needed.
    pub prefixed_names: bool,
    ra: usize,
    rb: usize,
    qa1: usize,
}

impl GeneratedPresentation {
    pub fn first_vertex(&self, i: usize, j: usize) -> usize {
        i * self.rb + j
    }

    pub fn second_vertex(&self, i: usize, j: usize) -> usize {
        self.ra * self.rb + i * self.rb + j
    }

    pub fn alpha_arrow(&self, arrow: usize, j: usize) -> usize {
        arrow * self.rb + j
    }

    pub fn connector(&self, i: usize, j: usize) -> usize {
        self.qa1 * self.rb + i * self.rb + j
    }

    pub fn beta_arrow(&self, arrow: usize, i: usize) -> usize {
        self.qa1 * self.rb + self.ra * self.rb + arrow * self.ra + i
    }

    /// `(vertices, arrows, relations)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let q = &self.presentation.quiver;
        (q.num_vertices(), q.num_arrows(), self.presentation.relations.len())
    }
}

struct Names {
    vertices: Vec<String>,
    arrows: Vec<String>,
}

fn names(pa: &Presentation, pb: &Presentation, prefixed: bool) -> Names {
    let (qa, qb) = (&pa.quiver, &pb.quiver);
    let (p1, p2, pa_, pb_) = if prefixed { ("v1_", "v2_", "a_", "b_") } else { ("", "", "", "") };
    let mut vertices = Vec::new();
    for i in qa.vertices() {
        for j in qb.vertices() {
            vertices.push(format!("{p1}{i}_{j}"));
        }
    }
    for i in qa.vertices() {
        for j in qb.vertices() {
            vertices.push(format!("{p2}{j}_{i}"));
        }
    }
    let mut arrows = Vec::new();
    for a in qa.arrows() {
        for j in qb.vertices() {
            arrows.push(format!("{pa_}{}_{j}", a.label));
        }
    }
    for i in qa.vertices() {
        for j in qb.vertices() {
            arrows.push(format!("c_{i}_{j}"));
        }
    }
    for b in qb.arrows() {
        for i in qa.vertices() {
            arrows.push(format!("{pb_}{}_{i}", b.label));
        }
    }
    Names { vertices, arrows }
}

fn first_duplicate(names: &[String]) -> Option<&String> {
    let mut seen = HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str()))
}

/// Generates the quiver with relations of `Λ(A, B)`.
pub fn lambda_presentation(pa: &Presentation, pb: &Presentation) -> Result<GeneratedPresentation, PresentationError> {
    if pa.field != pb.field {
        return Err(FieldError::Incompatible.into());
    }
    let (qa, qb) = (&pa.quiver, &pb.quiver);
    let (ra, rb) = (qa.num_vertices(), qb.num_vertices());

    let clash = |n: &Names| first_duplicate(&n.vertices).or(first_duplicate(&n.arrows)).cloned();
    let mut prefixed = false;
    let mut n = names(pa, pb, false);
    if clash(&n).is_some() {
        prefixed = true;
        n = names(pa, pb, true);
        if let Some(dup) = clash(&n) {
            return Err(PresentationError::NameCollision(dup));
        }
    }

    let mut gp = GeneratedPresentation {
        presentation: Presentation::new(String::new(), pa.field, Quiver::new(Vec::new(), Vec::new())?, Vec::new()),
        vertex_origins: Vec::new(),
        arrow_origins: Vec::new(),
        relation_origins: Vec::new(),
        prefixed_names: prefixed,
        ra,
        rb,
        qa1: qa.num_arrows(),
    };
    let mut arrows = Vec::new();
    let mut push_arrow = |origin: ArrowOrigin, s: usize, t: usize, gp: &mut GeneratedPresentation| {
        let k = arrows.len();
        arrows.push((n.arrows[k].clone(), n.vertices[s].clone(), n.vertices[t].clone()));
        gp.arrow_origins.push(origin);
    };
    for (k, a) in qa.arrows().iter().enumerate() {
        for j in 0..rb {
            let (s, t) = (gp.first_vertex(a.source, j), gp.first_vertex(a.target, j));
            push_arrow(ArrowOrigin::Alpha { arrow: k, b: j }, s, t, &mut gp);
        }
    }
    for i in 0..ra {
        for j in 0..rb {
            let (s, t) = (gp.first_vertex(i, j), gp.second_vertex(i, j));
            push_arrow(ArrowOrigin::Connector { a: i, b: j }, s, t, &mut gp);
        }
    }
    for (k, b) in qb.arrows().iter().enumerate() {
        for i in 0..ra {
            let (s, t) = (gp.second_vertex(i, b.source), gp.first_vertex(i, b.target));
            push_arrow(ArrowOrigin::Beta { arrow: k, a: i }, s, t, &mut gp);
        }
    }
    for i in 0..ra {
        for j in 0..rb {
            gp.vertex_origins.push(VertexOrigin::First { a: i, b: j });
        }
    }
    for i in 0..ra {
        for j in 0..rb {
            gp.vertex_origins.push(VertexOrigin::Second { a: i, b: j });
        }
    }
    let quiver = Quiver::new(n.vertices.clone(), arrows)?;

    let mut relations = Vec::new();
    for (k, r) in pa.relations.iter().enumerate() {
        for j in 0..rb {
            let terms = r
                .terms()
                .iter()
                .map(|(c, p)| Ok((c.clone(), quiver.path(p.arrows.iter().map(|&a| gp.alpha_arrow(a, j)).collect())?)))
                .collect::<Result<Vec<_>, PresentationError>>()?;
            relations.push(Relation::new(&quiver, terms)?);
            gp.relation_origins.push(RelationOrigin::FromA { relation: k, b: j });
        }
    }
    for (k, a) in qa.arrows().iter().enumerate() {
        for j in 0..rb {
            let path = quiver.path(vec![gp.connector(a.target, j), gp.alpha_arrow(k, j)])?;
            relations.push(Relation::new(&quiver, vec![(pa.field.one(), path)])?);
            gp.relation_origins.push(RelationOrigin::ConnectorAfterAlpha { arrow: k, b: j });
        }
    }
    for (k, s) in pb.relations.iter().enumerate() {
        for i in 0..ra {
            let terms = s
                .terms()
                .iter()
                .map(|(c, p)| {
                    let mut word = Vec::with_capacity(2 * p.len() - 1);
                    for (pos, &b) in p.arrows.iter().enumerate() {
                        word.push(gp.beta_arrow(b, i));
                        if pos + 1 < p.len() {
                            word.push(gp.connector(i, qb.arrows()[b].source));
                        }
                    }
                    Ok((c.clone(), quiver.path(word)?))
                })
                .collect::<Result<Vec<_>, PresentationError>>()?;
            relations.push(Relation::new(&quiver, terms)?);
            gp.relation_origins.push(RelationOrigin::FromB { relation: k, a: i });
        }
    }
    gp.presentation = Presentation::new(format!("Lambda({},{})", pa.name, pb.name), pa.field, quiver, relations);
    Ok(gp)
}

/// Images of generators under the surjection onto `Λ`.
pub struct GeneratorImages<'a> {
    gp: &'a GeneratedPresentation,
    lambda: &'a LambdaAlgebra,
    arrows: Vec<SparseVec>,
}

impl<'a> GeneratorImages<'a> {
    /// `qa`, `qb` must be the algebras `Λ` was built from.
    pub fn new(gp: &'a GeneratedPresentation, qa: &QuiverAlgebra, qb: &QuiverAlgebra, lambda: &'a LambdaAlgebra) -> Self {
        let f = lambda.algebra.field();
        let (a, b) = (&lambda.a, &lambda.b);
        let arrows = gp
            .arrow_origins
            .iter()
            .map(|o| {
                let k = match *o {
                    ArrowOrigin::Alpha { arrow, b: j } => lambda.index11(qa.arrow_index(arrow), b.idempotent_index(j)),
                    ArrowOrigin::Connector { a: i, b: j } => lambda.index21(i, b.idempotent_index(j)),
                    ArrowOrigin::Beta { arrow, a: i } => lambda.index12(a.idempotent_index(i), qb.arrow_index(arrow)),
                };
                SparseVec::unit(k, f)
            })
            .collect();
        GeneratorImages { gp, lambda, arrows }
    }

    pub fn vertex(&self, v: usize) -> SparseVec {
        let l = self.lambda;
        let k = match self.gp.vertex_origins[v] {
            VertexOrigin::First { a, b } => l.index11(l.a.idempotent_index(a), l.b.idempotent_index(b)),
            VertexOrigin::Second { a, b } => l.index22(a, l.b.idempotent_index(b)),
        };
        SparseVec::unit(k, l.algebra.field())
    }

    pub fn arrow(&self, a: usize) -> &SparseVec {
        &self.arrows[a]
    }

    /// Image of a path: the product of its arrow images in written order.
    pub fn path(&self, p: &PathWord) -> SparseVec {
        let alg = &self.lambda.algebra;
        let mut acc = self.vertex(p.source);
        for &a in p.arrows.iter().rev() {
            acc = alg.mul(&self.arrows[a], &acc);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn combination(&self, terms: &[(Scalar, PathWord)]) -> SparseVec {
        terms
            .iter()
            .fold(SparseVec::new(), |acc, (c, p)| acc.add_scaled(c, &self.path(p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    /// Rendered relation whose image is nonzero, if any.
    pub failing_relation: Option<String>,
    pub span_dim: usize,
    pub lambda_dim: usize,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failing_relation.is_none() && self.span_dim == self.lambda_dim
    }
}

/// Checks that every generated relation maps to zero and that path images
/// span `Λ`. The span is the closure of the vertex images under left
/// multiplication by arrow images, which equals the span of all path images.
pub fn verify_phi(gp: &GeneratedPresentation, qa: &QuiverAlgebra, qb: &QuiverAlgebra, lambda: &LambdaAlgebra) -> PhiReport {
    let images = GeneratorImages::new(gp, qa, qb, lambda);
    let p = &gp.presentation;
    let failing_relation = p
        .relations
        .iter()
        .find(|r| !images.combination(r.terms()).is_zero())
        .map(|r| crate::presentation::render_relation(p, r));

    let alg = &lambda.algebra;
    let mut span = Echelon::new(alg.field());
    let mut queue: Vec<SparseVec> = (0..p.quiver.num_vertices()).map(|v| images.vertex(v)).collect();
    while let Some(v) = queue.pop() {
        if span.insert(&v).is_none() {
            continue;
        }
        for a in 0..p.quiver.num_arrows() {
            let w = alg.mul(images.arrow(a), &v);
            if !w.is_zero() {
                queue.push(w);
            }
        }
    }
    PhiReport {
        failing_relation,
        span_dim: span.rank(),
        lambda_dim: alg.dim(),
    }
}

/// Dimension of the quotient of the path algebra by the relations.
pub fn quotient_dimension(p: &Presentation, cutoff: usize) -> Result<(usize, AdmissibilityCertificate), AdmissibilityError> {
    let qa = algebra_from_presentation(p, cutoff)?;
    Ok((qa.algebra.dim(), qa.certificate))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightMultCheck {
    /// No relation path has the form `p c`.
    pub hypothesis_holds: bool,
    pub injective: bool,
    pub rank: usize,
    /// `dim A e_{t(c)}`.
    pub domain_dim: usize,
    /// `c` is zero in the algebra.
    pub path_vanishes: bool,
}

/// The right multiplication `A e_{t(c)} -> A e_{s(c)}, x ↦ x c`.
pub fn check_right_mult_injective(qa: &QuiverAlgebra, c: &PathWord) -> RightMultCheck {
    let p = &qa.presentation;
    let hypothesis_holds = if c.is_trivial() {
        p.relation_paths().all(|q| q.source != c.source)
    } else {
        p.relation_paths().all(|q| !q.ends_with(c))
    };
    let alg = &qa.algebra;
    let cbar = qa.path_element(c);
    let domain: Vec<usize> = (0..alg.dim()).filter(|&b| alg.basis()[b].source == c.target).collect();
    let images: Vec<SparseVec> = domain
        .iter()
        .map(|&b| alg.mul(&SparseVec::unit(b, alg.field()), &cbar))
        .collect();
    let rank = crate::linalg::rank_of(alg.field(), &images);
    RightMultCheck {
        hypothesis_holds,
        injective: rank == domain.len(),
        rank,
        domain_dim: domain.len(),
        path_vanishes: cbar.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn dual(name: &str, v: &str, x: &str) -> Presentation {
        parse_presentation(&format!(
            "algebra {name} over Q\nvertices: {v}\narrows:\n  {x}: {v} -> {v}\nrelations:\n  {x}*{x}\n"
        ))
        .unwrap()
    }

    #[test]
    fn counts_for_dual_numbers() {
        let gp = lambda_presentation(&dual("A", "a", "alpha"), &dual("B", "b", "beta")).unwrap();
        assert_eq!(gp.counts(), (2, 3, 3));
        assert!(!gp.prefixed_names);
        assert_eq!(gp.presentation.quiver.vertices(), ["a_b", "b_a"]);
    }

    #[test]
    fn colliding_names_fall_back_to_prefixes() {
        let gp = lambda_presentation(&dual("A", "a", "x"), &dual("B", "a", "x")).unwrap();
        assert!(gp.prefixed_names);
        assert_eq!(gp.presentation.quiver.vertices(), ["v1_a_a", "v2_a_a"]);
    }

    #[test]
    fn quotient_dimension_of_dual_numbers() {
        assert_eq!(quotient_dimension(&dual("A", "a", "x"), 8).unwrap().0, 2);
    }

    #[test]
    fn right_multiplication_by_loop_is_not_injective() {
        let qa = algebra_from_presentation(&dual("A", "a", "x"), 8).unwrap();
        let x = qa.presentation.quiver.path(vec![0]).unwrap();
        let r = check_right_mult_injective(&qa, &x);
        assert!(!r.hypothesis_holds);
        assert!(!r.injective);
        let e = PathWord::trivial(0);
        let r = check_right_mult_injective(&qa, &e);
        assert!(r.injective);
    }
}
