//! Loading an input pair, the verification suite, and the report on the
//! derived Jordan–Hölder property of `Λ(A, B)`.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FdAlgebra;
use crate::error::PairError;
use crate::lambda::{
    build_lambda, expected_dim, recollement_factors, verify_bimodule_diagrams, FactorBlock, LambdaAlgebra, Recollement,
    RecollementFactors,
};
use crate::lambda_quiver::{
    check_right_mult_injective, lambda_presentation, verify_phi, ArrowOrigin, GeneratedPresentation,
};
use crate::modules::{
    check_stratifying_criterion, check_stratifying_direct, global_dimension_bound, GlDimReport, IsoOptions,
    ProjectiveDimension, ResolutionOptions, StratifyingCertificate, Verdict,
};
use crate::path_algebra::{algebra_from_presentation, QuiverAlgebra};
use crate::presentation::Presentation;
use crate::twisted::verify_twist_axioms;

pub const SCHEMA_VERSION: u32 = 1;

/// Both inputs, their algebras, `Λ(A, B)` and the generated presentation.
pub struct LoadedPair {
    pub qa: QuiverAlgebra,
    pub qb: QuiverAlgebra,
    pub lambda: LambdaAlgebra,
    pub generated: GeneratedPresentation,
}

impl LoadedPair {
    pub fn new(pa: &Presentation, pb: &Presentation, cutoff: usize) -> Result<Self, PairError> {
        if pa.field != pb.field {
            return Err(PairError::FieldMismatch { a: pa.field, b: pb.field });
        }
        let qa = algebra_from_presentation(pa, cutoff).map_err(|source| PairError::Admissibility { which: 'A', source })?;
        let qb = algebra_from_presentation(pb, cutoff).map_err(|source| PairError::Admissibility { which: 'B', source })?;
        let lambda = build_lambda(Arc::new(qa.algebra.clone()), Arc::new(qb.algebra.clone()));
        let generated = lambda_presentation(pa, pb)?;
        Ok(LoadedPair {
            qa,
            qb,
            lambda,
            generated,
        })
    }

    pub fn a(&self) -> &Arc<FdAlgebra> {
        &self.lambda.a
    }

    pub fn b(&self) -> &Arc<FdAlgebra> {
        &self.lambda.b
    }

    /// Dimensions, ranks and the block table of `Λ`.
    pub fn summary(&self) -> String {
        let (a, b, l) = (self.a(), self.b(), &self.lambda);
        let [d11, d12, d21, d22] = l.block_dims();
        let (gv, ga, gr) = self.generated.counts();
        let mut s = String::new();
        let _ = writeln!(s, "A: {}  dim {}  rank {}", a.name(), a.dim(), a.rank());
        let _ = writeln!(s, "B: {}  dim {}  rank {}", b.name(), b.dim(), b.rank());
        let _ = writeln!(s, "Lambda: dim {}  rank {}", l.algebra.dim(), l.algebra.rank());
        let _ = writeln!(s, "blocks:");
        let _ = writeln!(s, "  11  A (x)0 B       {d11:>6}");
        let _ = writeln!(s, "  12  A (x) rad B    {d12:>6}");
        let _ = writeln!(s, "  21  A/rad A (x) B  {d21:>6}");
        let _ = writeln!(s, "  22  A/rad A (x) B  {d22:>6}");
        let _ = writeln!(s, "generated quiver: {gv} vertices, {ga} arrows, {gr} relations");
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub depth: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { depth: 8, seed: IsoOptions::default().seed }
    }
}

impl SuiteOptions {
    pub fn resolution(&self) -> ResolutionOptions {
        ResolutionOptions {
            iso: IsoOptions {
                seed: self.seed,
                ..IsoOptions::default()
            },
            ..ResolutionOptions::to_degree(self.depth)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn violation<T: std::fmt::Debug>(name: &str, v: Option<T>) -> CheckOutcome {
    let detail = v.as_ref().map_or_else(String::new, |v| format!("{v:?}"));
    check(name, v.is_none(), detail)
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

/// The four stratifying certificates: criterion then direct, each for `e1`
/// and `e2`.
pub fn stratifying_certificates(pair: &LoadedPair, opts: &SuiteOptions) -> Result<Vec<StratifyingCertificate>, PairError> {
    let l = &pair.lambda;
    let ro = opts.resolution();
    let mut out = Vec::with_capacity(4);
    for (label, e) in [("e1", &l.e1), ("e2", &l.e2)] {
        out.push(check_stratifying_criterion(&l.algebra, e, label, &ro)?);
    }
    for (label, e) in [("e1", &l.e1), ("e2", &l.e2)] {
        out.push(check_stratifying_direct(&l.algebra, e, label, &ro)?);
    }
    Ok(out)
}

/// Expected `(vertices, arrows, relations)` of the generated presentation.
pub fn expected_counts(pa: &Presentation, pb: &Presentation) -> (usize, usize, usize) {
    let (qa, qb) = (&pa.quiver, &pb.quiver);
    let (ra, rb) = (qa.num_vertices(), qb.num_vertices());
    (
        2 * ra * rb,
        qa.num_arrows() * rb + ra * rb + qb.num_arrows() * ra,
        pa.relations.len() * rb + qa.num_arrows() * rb + pb.relations.len() * ra,
    )
}

fn verdict_text(v: Verdict) -> String {
    match v {
        Verdict::CertifiedFully => "certified fully".into(),
        Verdict::CertifiedToDegree { degree } => format!("certified to degree {degree}"),
        Verdict::Refuted => "refuted".into(),
        Verdict::Inconclusive => "inconclusive".into(),
    }
}

/// Runs every check; the caller decides what a failure means.
pub fn run_verification(pair: &LoadedPair, opts: &SuiteOptions) -> Result<Vec<CheckOutcome>, PairError> {
    let (a, b, l) = (pair.a(), pair.b(), &pair.lambda);
    let lam = &l.algebra;
    let mut out = vec![
        violation("twist axioms", verify_twist_axioms(a, b)),
        violation("tensor associativity", l.tensor.algebra.associativity_violation()),
        violation("lambda associativity", lam.associativity_violation()),
        violation("bimodule diagrams", verify_bimodule_diagrams(a, b)),
    ];
    let formulas = lam.dim() == expected_dim(a, b) && lam.rank() == 2 * a.rank() * b.rank();
    out.push(check(
        "dimension and rank formulas",
        formulas,
        format!("dim {} rank {}", lam.dim(), lam.rank()),
    ));

    let gp = &pair.generated;
    let counts = gp.counts();
    let expected = expected_counts(&pair.qa.presentation, &pair.qb.presentation);
    out.push(check(
        "generated presentation counts",
        counts == expected,
        format!("{counts:?}, expected {expected:?}"),
    ));
    let phi = verify_phi(gp, &pair.qa, &pair.qb, l);
    out.push(check(
        "surjection onto lambda",
        phi.passed(),
        format!(
            "relations vanish: {}, span {} of {}",
            phi.failing_relation.as_deref().map_or("yes".to_string(), |r| format!("no ({r})")),
            phi.span_dim,
            phi.lambda_dim
        ),
    ));
    let cutoff = pair.qa.certificate.cutoff.max(pair.qb.certificate.cutoff);
    let generated_alg = algebra_from_presentation(&gp.presentation, cutoff);
    match &generated_alg {
        Ok(qg) => out.push(check(
            "quotient dimension",
            qg.algebra.dim() == lam.dim(),
            format!("{} vs {}", qg.algebra.dim(), lam.dim()),
        )),
        Err(e) => out.push(check("quotient dimension", false, e.to_string())),
    }

    let certs = stratifying_certificates(pair, opts)?;
    for c in &certs {
        let name = format!("stratifying {:?} {}", c.mode, c.idempotent).to_lowercase();
        out.push(check(&name, c.verdict.is_certified(), verdict_text(c.verdict)));
    }
    let consistent = certs[..2]
        .iter()
        .zip(&certs[2..])
        .all(|(crit, direct)| !crit.verdict.is_certified() || direct.verdict != Verdict::Refuted);
    out.push(check("criterion and direct agree", consistent, ""));

    if let Ok(qg) = &generated_alg {
        let mut bad = Vec::new();
        let mut total = 0;
        for (k, o) in gp.arrow_origins.iter().enumerate() {
            if !matches!(o, ArrowOrigin::Connector { .. }) {
                continue;
            }
            total += 1;
            let c = gp.presentation.quiver.path(vec![k]).expect("arrow path");
            let r = check_right_mult_injective(qg, &c);
            let target_dim = (0..lam.dim()).filter(|&x| lam.basis()[x].source == c.target).count();
            if !(r.hypothesis_holds && r.injective && r.rank == target_dim) {
                bad.push(gp.presentation.quiver.arrows()[k].label.clone());
            }
        }
        out.push(check(
            "right multiplication by connectors",
            bad.is_empty(),
            if bad.is_empty() { format!("{total} connectors") } else { format!("failing: {}", bad.join(", ")) },
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Local algebras are derived simple.
    Local,
    UserAsserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum DerivedSimple {
    True { provenance: Provenance },
    False { reason: String },
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum InfiniteGlDim {
    /// Witnessed by a syzygy isomorphic to an earlier one.
    Certified { start: usize, period: usize },
    /// All simples have terminating resolutions.
    Refuted { global_dimension: usize },
    Unknown { lower_bound: usize },
}

impl From<ProjectiveDimension> for InfiniteGlDim {
    fn from(pd: ProjectiveDimension) -> Self {
        match pd {
            ProjectiveDimension::Infinite { start, period } => InfiniteGlDim::Certified { start, period },
            ProjectiveDimension::Exact { value } => InfiniteGlDim::Refuted { global_dimension: value },
            ProjectiveDimension::AtLeast { value } => InfiniteGlDim::Unknown { lower_bound: value },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFlags {
    pub derived_simple: DerivedSimple,
    /// `dim > 1`.
    pub nonsimple: bool,
    pub infinite_gl_dim: InfiniteGlDim,
}

impl AlgebraFlags {
    fn derived_simple_nonsimple(&self) -> bool {
        self.nonsimple && matches!(self.derived_simple, DerivedSimple::True { .. })
    }

    fn could_be_derived_simple_nonsimple(&self) -> bool {
        self.nonsimple && !matches!(self.derived_simple, DerivedSimple::False { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub name: String,
    pub dim: usize,
    pub rank: usize,
    pub local: bool,
    pub flags: AlgebraFlags,
    pub gl_dim: GlDimReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub dim: usize,
    pub rank: usize,
    pub blocks: Vec<FactorBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecollementSummary {
    pub quotient: FactorSummary,
    pub corner: FactorSummary,
    /// Quotient blocks then corner blocks, as `name [dim d]`.
    pub factors: Vec<String>,
    /// `rank(quotient) + rank(corner) = rank(Λ)`.
    pub rank_accounting: bool,
    pub quotient_commutative_semisimple: bool,
    pub unverified: bool,
}

fn factor_label(b: &FactorBlock) -> String {
    match &b.identified_as {
        Some(name) => format!("{name} [dim {}]", b.dim),
        None => format!("unidentified [dim {}, rank {}]", b.dim, b.rank),
    }
}

fn summarize(r: &RecollementFactors, lambda_rank: usize) -> RecollementSummary {
    let factors = r.quotient_blocks.iter().chain(&r.corner_blocks).map(factor_label).collect();
    RecollementSummary {
        quotient: FactorSummary {
            dim: r.quotient.dim(),
            rank: r.quotient.rank(),
            blocks: r.quotient_blocks.clone(),
        },
        corner: FactorSummary {
            dim: r.corner.dim(),
            rank: r.corner.rank(),
            blocks: r.corner_blocks.clone(),
        },
        factors,
        rank_accounting: r.quotient.rank() + r.corner.rank() == lambda_rank,
        quotient_commutative_semisimple: r.quotient_commutative_semisimple,
        unverified: r.unverified,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureCase {
    /// Both inputs derived simple and nonsimple.
    Case1,
    /// One input derived simple and nonsimple, the other of infinite global dimension.
    Case2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DjhpVerdict {
    Fails {
        case: FailureCase,
        /// Both inputs are local and nonsimple.
        via_local_shortcut: bool,
        /// Hypotheses that rest on user assertions.
        user_assertions: Vec<String>,
    },
    /// A failure case applies if the listed hypotheses hold.
    Conditional { missing: Vec<String> },
    NotEstablished,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationLengths {
    /// Stratifications through `R1` have at least `1 + rank A · rank B` factors.
    pub r1_lower_bound: usize,
    /// Stratifications through `R2` have exactly `rank A + rank B` factors.
    pub r2_length: usize,
    pub differ: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UserFlags {
    pub derived_simple_a: bool,
    pub derived_simple_b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DjhpReport {
    pub schema_version: u32,
    pub depth: usize,
    pub a: InputSummary,
    pub b: InputSummary,
    pub lambda_dim: usize,
    pub lambda_rank: usize,
    pub lambda_gl_dim: ProjectiveDimension,
    pub r1: RecollementSummary,
    pub r2: RecollementSummary,
    pub stratifying: Vec<StratifyingCertificate>,
    /// Copies of `k` among the factors of any stratification through `R1`.
    pub simple_factor_lower_bound: usize,
    pub verdict: DjhpVerdict,
    pub stratification_lengths: Option<StratificationLengths>,
    pub notes: Vec<String>,
}

fn input_summary(alg: &Arc<FdAlgebra>, asserted: bool, opts: &SuiteOptions) -> Result<InputSummary, PairError> {
    let gl_dim = global_dimension_bound(alg, &opts.resolution())?;
    let local = alg.rank() == 1;
    let blocks = alg.block_vertices().len();
    let derived_simple = if local {
        DerivedSimple::True {
            provenance: Provenance::Local,
        }
    } else if blocks > 1 {
        DerivedSimple::False {
            reason: format!("decomposes into {blocks} blocks"),
        }
    } else if asserted {
        DerivedSimple::True {
            provenance: Provenance::UserAsserted,
        }
    } else {
        DerivedSimple::Unknown
    };
    Ok(InputSummary {
        name: alg.name().to_string(),
        dim: alg.dim(),
        rank: alg.rank(),
        local,
        flags: AlgebraFlags {
            derived_simple,
            nonsimple: alg.dim() > 1,
            infinite_gl_dim: gl_dim.overall.into(),
        },
        gl_dim,
    })
}

fn decide(a: &InputSummary, b: &InputSummary) -> DjhpVerdict {
    let (fa, fb) = (&a.flags, &b.flags);
    let inf = |f: &AlgebraFlags| matches!(f.infinite_gl_dim, InfiniteGlDim::Certified { .. });
    let maybe_inf = |f: &AlgebraFlags| !matches!(f.infinite_gl_dim, InfiniteGlDim::Refuted { .. });
    let asserted = |s: &InputSummary| {
        matches!(
            s.flags.derived_simple,
            DerivedSimple::True {
                provenance: Provenance::UserAsserted
            }
        )
        .then(|| format!("{} is derived simple", s.name))
    };
    let case = if fa.derived_simple_nonsimple() && fb.derived_simple_nonsimple() {
        Some((FailureCase::Case1, [asserted(a), asserted(b)].into_iter().flatten().collect()))
    } else if fa.derived_simple_nonsimple() && inf(fb) {
        Some((FailureCase::Case2, asserted(a).into_iter().collect()))
    } else if fb.derived_simple_nonsimple() && inf(fa) {
        Some((FailureCase::Case2, asserted(b).into_iter().collect()))
    } else {
        None
    };
    if let Some((case, user_assertions)) = case {
        return DjhpVerdict::Fails {
            case,
            via_local_shortcut: case == FailureCase::Case1 && a.local && b.local,
            user_assertions,
        };
    }
    let unknown_ds = |s: &InputSummary| {
        (s.flags.could_be_derived_simple_nonsimple() && !s.flags.derived_simple_nonsimple())
            .then(|| format!("{} is derived simple", s.name))
    };
    let unknown_inf = |s: &InputSummary| {
        (maybe_inf(&s.flags) && !inf(&s.flags)).then(|| format!("{} has infinite global dimension", s.name))
    };
    let options: Vec<Vec<Option<String>>> = vec![
        vec![unknown_ds(a), unknown_ds(b)],
        vec![unknown_ds(a), unknown_inf(b)],
        vec![unknown_ds(b), unknown_inf(a)],
    ];
    let feasible = [
        fa.could_be_derived_simple_nonsimple() && fb.could_be_derived_simple_nonsimple(),
        fa.could_be_derived_simple_nonsimple() && maybe_inf(fb),
        fb.could_be_derived_simple_nonsimple() && maybe_inf(fa),
    ];
    let mut missing: Vec<String> = options
        .into_iter()
        .zip(feasible)
        .filter(|(_, ok)| *ok)
        .flat_map(|(o, _)| o.into_iter().flatten())
        .collect();
    missing.sort();
    missing.dedup();
    if missing.is_empty() {
        DjhpVerdict::NotEstablished
    } else {
        DjhpVerdict::Conditional { missing }
    }
}

pub fn build_report(pair: &LoadedPair, user: UserFlags, opts: &SuiteOptions) -> Result<DjhpReport, PairError> {
    let l = &pair.lambda;
    let a = input_summary(pair.a(), user.derived_simple_a, opts)?;
    let b = input_summary(pair.b(), user.derived_simple_b, opts)?;
    let lambda_gl = global_dimension_bound(&l.algebra, &opts.resolution())?;
    let rank = l.algebra.rank();
    let r1 = summarize(&recollement_factors(l, Recollement::R1), rank);
    let r2 = summarize(&recollement_factors(l, Recollement::R2), rank);
    let stratifying = stratifying_certificates(pair, opts)?;
    let verdict = decide(&a, &b);

    let stratification_lengths = (a.rank > 1 && b.rank > 1).then(|| {
        let (x, y) = (1 + a.rank * b.rank, a.rank + b.rank);
        StratificationLengths {
            r1_lower_bound: x,
            r2_length: y,
            differ: x != y,
        }
    });

    let mut notes = Vec::new();
    for s in [&a, &b] {
        if let DerivedSimple::True {
            provenance: Provenance::UserAsserted,
        } = s.flags.derived_simple
        {
            notes.push(format!("derived simplicity of {} is user-asserted, not computed", s.name));
        }
    }
    for c in &stratifying {
        if let Verdict::CertifiedToDegree { degree } = c.verdict {
            notes.push(format!(
                "{} ({:?}) is certified only up to degree {degree}",
                c.idempotent, c.mode
            ).to_lowercase());
        }
    }
    if matches!(verdict, DjhpVerdict::Fails { .. }) {
        if let ProjectiveDimension::Exact { value } = lambda_gl.overall {
            notes.push(format!("Lambda has finite global dimension {value} and fails the derived Jordan-Holder property"));
        }
    }
    if lambda_gl.overall.is_infinite() {
        notes.push(
            "Lambda has certified infinite global dimension: Lambda(C, Lambda) fails the derived Jordan-Holder property for every local nonsimple C".into(),
        );
    }

    Ok(DjhpReport {
        schema_version: SCHEMA_VERSION,
        depth: opts.depth,
        lambda_dim: l.algebra.dim(),
        lambda_rank: rank,
        lambda_gl_dim: lambda_gl.overall,
        simple_factor_lower_bound: a.rank * b.rank,
        a,
        b,
        r1,
        r2,
        stratifying,
        verdict,
        stratification_lengths,
        notes,
    })
}

fn flags_text(s: &InputSummary) -> String {
    let ds = match &s.flags.derived_simple {
        DerivedSimple::True { provenance: Provenance::Local } => "yes (local)".to_string(),
        DerivedSimple::True {
            provenance: Provenance::UserAsserted,
        } => "yes (user-asserted)".to_string(),
        DerivedSimple::False { reason } => format!("no ({reason})"),
        DerivedSimple::Unknown => "unknown".to_string(),
    };
    format!(
        "{}: dim {}, rank {}, derived simple {}, nonsimple {}, global dimension {}",
        s.name,
        s.dim,
        s.rank,
        ds,
        if s.flags.nonsimple { "yes" } else { "no" },
        s.gl_dim.overall
    )
}

impl DjhpReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "A  {}", flags_text(&self.a));
        let _ = writeln!(s, "B  {}", flags_text(&self.b));
        let _ = writeln!(
            s,
            "Lambda: dim {}, rank {}, global dimension {}",
            self.lambda_dim, self.lambda_rank, self.lambda_gl_dim
        );
        for (name, r) in [("R1", &self.r1), ("R2", &self.r2)] {
            let _ = writeln!(s, "{name} factors: {{{}}}", r.factors.join(", "));
            let _ = writeln!(
                s,
                "{name} rank accounting: {} + {} = {} ({})",
                r.quotient.rank,
                r.corner.rank,
                self.lambda_rank,
                if r.rank_accounting { "ok" } else { "VIOLATED" }
            );
        }
        let _ = writeln!(
            s,
            "copies of k in any stratification through R1: >= {}",
            self.simple_factor_lower_bound
        );
        for c in &self.stratifying {
            let _ = writeln!(
                s,
                "stratifying {} ({}): {}",
                c.idempotent,
                format!("{:?}", c.mode).to_lowercase(),
                verdict_text(c.verdict)
            );
        }
        let verdict = match &self.verdict {
            DjhpVerdict::Fails {
                case,
                via_local_shortcut,
                user_assertions,
            } => {
                let mut v = format!(
                    "DJHP-fails({})",
                    if *case == FailureCase::Case1 { "case 1" } else { "case 2" }
                );
                if *via_local_shortcut {
                    v.push_str(", both inputs local nonsimple");
                }
                if !user_assertions.is_empty() {
                    let _ = write!(v, ", assuming {}", user_assertions.join(" and "));
                }
                v
            }
            DjhpVerdict::Conditional { missing } => format!("conditional on: {}", missing.join("; ")),
            DjhpVerdict::NotEstablished => "not established".to_string(),
        };
        let _ = writeln!(s, "verdict: {verdict}");
        if let Some(r) = &self.stratification_lengths {
            let _ = writeln!(
                s,
                "stratification lengths: R1 >= {}, R2 = {} ({})",
                r.r1_lower_bound,
                r.r2_length,
                if r.differ { "different" } else { "EQUAL" }
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const DUAL_X: &str = "algebra x over Q\nvertices: a\narrows:\n  al: a -> a\nrelations:\n  al*al\n";
    const DUAL_Y: &str = "algebra y over Q\nvertices: b\narrows:\n  be: b -> b\nrelations:\n  be*be\n";
    const LINE: &str = "algebra line over Q\nvertices: 1 2\narrows:\n  f: 1 -> 2\nrelations:\n";
    const CYCLE: &str = "algebra cycle over Q\nvertices: 1 2\narrows:\n  f: 1 -> 2\n  g: 2 -> 1\nrelations:\n  g*f\n  f*g\n";
    const POINTS: &str = "algebra points over Q\nvertices: 1 2\narrows:\nrelations:\n";

    fn pair(a: &str, b: &str) -> LoadedPair {
        LoadedPair::new(&parse_presentation(a).unwrap(), &parse_presentation(b).unwrap(), 8).unwrap()
    }

    fn report(a: &str, b: &str, user: UserFlags) -> DjhpReport {
        build_report(&pair(a, b), user, &SuiteOptions { depth: 4, ..SuiteOptions::default() }).unwrap()
    }

    #[test]
    fn local_pair_fails_in_case_one() {
        let r = report(DUAL_X, DUAL_Y, UserFlags::default());
        assert_eq!(
            r.verdict,
            DjhpVerdict::Fails {
                case: FailureCase::Case1,
                via_local_shortcut: true,
                user_assertions: vec![]
            }
        );
        assert!(r.notes.iter().any(|n| n.contains("infinite global dimension")));
    }

    #[test]
    fn non_local_input_needs_an_assertion() {
        let r = report(DUAL_X, LINE, UserFlags::default());
        assert_eq!(
            r.verdict,
            DjhpVerdict::Conditional {
                missing: vec!["line is derived simple".into()]
            }
        );
        let r = report(DUAL_X, LINE, UserFlags { derived_simple_a: false, derived_simple_b: true });
        let DjhpVerdict::Fails { case, user_assertions, .. } = &r.verdict else {
            panic!("{:?}", r.verdict);
        };
        assert_eq!((*case, user_assertions.len()), (FailureCase::Case1, 1));
    }

    #[test]
    fn infinite_global_dimension_triggers_case_two() {
        let r = report(DUAL_X, CYCLE, UserFlags::default());
        assert_eq!(r.b.flags.derived_simple, DerivedSimple::Unknown);
        assert!(matches!(r.b.flags.infinite_gl_dim, InfiniteGlDim::Certified { .. }));
        assert!(matches!(r.verdict, DjhpVerdict::Fails { case: FailureCase::Case2, .. }));
    }

    #[test]
    fn decomposable_inputs_rule_out_both_cases() {
        let r = report(POINTS, DUAL_Y, UserFlags::default());
        assert!(matches!(r.a.flags.derived_simple, DerivedSimple::False { .. }));
        assert_eq!(r.verdict, DjhpVerdict::NotEstablished);
        let r = report(DUAL_X, POINTS, UserFlags::default());
        assert_eq!(r.verdict, DjhpVerdict::NotEstablished);
    }

    #[test]
    fn finite_global_dimension_note() {
        let r = report(LINE, LINE, UserFlags { derived_simple_a: true, derived_simple_b: true });
        assert!(matches!(r.verdict, DjhpVerdict::Fails { case: FailureCase::Case1, .. }));
        assert!(r.lambda_gl_dim.is_finite());
        assert!(r.notes.iter().any(|n| n.contains("finite global dimension")));
        let remark = r.stratification_lengths.unwrap();
        assert_eq!((remark.r1_lower_bound, remark.r2_length), (5, 4));
    }

    #[test]
    fn suite_passes_on_dual_numbers() {
        let checks = run_verification(&pair(DUAL_X, DUAL_Y), &SuiteOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let fp = DUAL_Y.replace("over Q", "over F3");
        let err = LoadedPair::new(&parse_presentation(DUAL_X).unwrap(), &parse_presentation(&fp).unwrap(), 8);
        assert!(matches!(err, Err(PairError::FieldMismatch { .. })));
    }
}
