//! Quivers with relations: the syntactic form of an elementary algebra.
//!
//! Paths compose right to left. A [`PathWord`] stores arrow indices in
//! written order, so the last entry is traversed first; `g*f` in the DSL
//! means "first `f`, then `g`".

mod dsl;
mod emit;

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::PresentationError;
use crate::field::{Field, Scalar};

pub use dsl::parse_presentation;
pub use emit::{emit_presentation, render_relation, Format};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// ASCII alphanumerics plus `_`, non-empty.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Quiver {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Self, PresentationError> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (label, s, t) in arrows {
            q.add_arrow(label, &s, &t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, label: String) -> Result<usize, PresentationError> {
        if !is_identifier(&label) {
            return Err(PresentationError::InvalidIdentifier(label));
        }
        if self.vertex_index.contains_key(&label) {
            return Err(PresentationError::DuplicateVertex(label));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(label.clone(), idx);
        self.vertices.push(label);
        Ok(idx)
    }

    /// Arrow labels must be identifiers that are not purely numeric, so that
    /// a leading coefficient in a relation is never ambiguous.
    pub fn add_arrow(&mut self, label: String, source: &str, target: &str) -> Result<usize, PresentationError> {
        if !is_identifier(&label) || label.bytes().all(|b| b.is_ascii_digit()) {
            return Err(PresentationError::InvalidIdentifier(label));
        }
        if self.arrow_index.contains_key(&label) {
            return Err(PresentationError::DuplicateArrow(label));
        }
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        let idx = self.arrows.len();
        self.arrow_index.insert(label.clone(), idx);
        self.arrows.push(Arrow { label, source: s, target: t });
        Ok(idx)
    }

    pub fn vertex(&self, label: &str) -> Result<usize, PresentationError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| PresentationError::UnknownVertex(label.to_string()))
    }

    pub fn arrow(&self, label: &str) -> Result<usize, PresentationError> {
        self.arrow_index
            .get(label)
            .copied()
            .ok_or_else(|| PresentationError::UnknownArrow(label.to_string()))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// Builds a path from arrow indices in written order.
    pub fn path(&self, arrows: Vec<usize>) -> Result<PathWord, PresentationError> {
        let Some(&last) = arrows.last() else {
            return Err(PresentationError::RelationTooShort(String::new()));
        };
        for w in arrows.windows(2) {
            let (g, f) = (&self.arrows[w[0]], &self.arrows[w[1]]);
            if g.source != f.target {
                return Err(PresentationError::NotComposable {
                    left: g.label.clone(),
                    right: f.label.clone(),
                });
            }
        }
        Ok(PathWord {
            source: self.arrows[last].source,
            target: self.arrows[arrows[0]].target,
            arrows,
        })
    }

    pub fn path_from_labels(&self, labels: &[&str]) -> Result<PathWord, PresentationError> {
        let arrows = labels.iter().map(|l| self.arrow(l)).collect::<Result<Vec<_>, _>>()?;
        self.path(arrows)
    }

    /// Renders a path in DSL form; trivial paths render as `e_<vertex>`.
    pub fn render_path(&self, p: &PathWord) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A path in a quiver. Arrow indices are in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl PathWord {
    pub fn trivial(vertex: usize) -> Self {
        PathWord {
            arrows: Vec::new(),
            source: vertex,
            target: vertex,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `first`, or `None` when the endpoints do not meet.
    pub fn after(&self, first: &PathWord) -> Option<PathWord> {
        if self.source != first.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&first.arrows);
        Some(PathWord {
            arrows,
            source: first.source,
            target: self.target,
        })
    }

    /// True when `self = p * suffix` for some path `p`.
    pub fn ends_with(&self, suffix: &PathWord) -> bool {
        if suffix.is_trivial() {
            return self.source == suffix.source;
        }
        self.arrows.ends_with(&suffix.arrows)
    }
}

/// Length first, then lexicographic on arrow indices; trivial paths by vertex.
impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of parallel paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, PathWord)>,
}

impl Relation {
    pub fn new(quiver: &Quiver, terms: Vec<(Scalar, PathWord)>) -> Result<Self, PresentationError> {
        let Some((_, first)) = terms.first() else {
            return Err(PresentationError::EmptyRelation);
        };
        for (i, (c, p)) in terms.iter().enumerate() {
            let name = quiver.render_path(p);
            if p.len() < 2 {
                return Err(PresentationError::RelationTooShort(name));
            }
            if c.is_zero() {
                return Err(PresentationError::ZeroCoefficient(name));
            }
            if p.source != first.source || p.target != first.target {
                return Err(PresentationError::NotParallel {
                    first: quiver.render_path(first),
                    other: name,
                });
            }
            if terms[..i].iter().any(|(_, q)| q == p) {
                return Err(PresentationError::RepeatedPath(name));
            }
        }
        Ok(Relation { terms })
    }

    pub fn terms(&self) -> &[(Scalar, PathWord)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, field: Field, quiver: Quiver, relations: Vec<Relation>) -> Self {
        Presentation {
            name: name.into(),
            field,
            quiver,
            relations,
        }
    }

    /// Re-reads every coefficient in `field`. Terms whose coefficient
    /// vanishes are dropped, and so are relations left without terms.
    pub fn with_field(&self, field: Field) -> Result<Presentation, PresentationError> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.terms.len());
            for (c, path) in &r.terms {
                let c = field.convert(c)?;
                if !c.is_zero() {
                    terms.push((c, path.clone()));
                }
            }
            if !terms.is_empty() {
                relations.push(Relation::new(&self.quiver, terms)?);
            }
        }
        Ok(Presentation::new(self.name.clone(), field, self.quiver.clone(), relations))
    }

    /// Every path occurring in some relation.
    pub fn relation_paths(&self) -> impl Iterator<Item = &PathWord> {
        self.relations.iter().flat_map(|r| r.terms().iter().map(|(_, p)| p))
    }
}
