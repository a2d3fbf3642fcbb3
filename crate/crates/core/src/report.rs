//! The full analysis pipeline and its JSON / text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{boundary_case, classify_facets, Case};
use crate::curve::CurveBound;
use crate::diagram::{build_diagram, diagram_predicates, find_j_segments, m0, NewtonDiagram};
use crate::error::{Error, Result};
use crate::exponent::{
    exponent_report, newton_number_of_diagram, ExponentOptions, ExponentReport, NewtonNumber,
};
use crate::germ::{PolyGerm, SingularityCheck};
use crate::modp::default_primes;
use crate::nondegeneracy::{nondegeneracy_on_diagram, NondegeneracyReport, Verdict};
use crate::oracle::{torus_degeneracy_search, OracleConfig};
use crate::scalar::fmt_rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub exponent: ExponentOptions,
    pub config: OracleConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub singularity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singularity_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convenient: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearly_convenient: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane_contact: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSummary {
    pub id: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<u32>>,
    pub normal: Vec<i64>,
    pub level: i64,
    /// `m(S)` for facets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    /// 1-based axes a facet is exceptional with respect to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional_axes: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub faces: Vec<FaceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_segment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_case: Option<Case>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: String,
    pub arity: usize,
    pub validation: Validation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegeneracy: Option<NondegeneracyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<ExponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton_number: Option<NewtonNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveBound>,
    pub diagnostics: Vec<String>,
}

pub fn summarize_diagram(d: &NewtonDiagram) -> Result<DiagramSummary> {
    let n = d.arity();
    let classes = if (2..=3).contains(&n) {
        classify_facets(d)?
    } else {
        Vec::new()
    };
    let faces = d
        .faces()
        .iter()
        .map(|s| {
            let class = classes.iter().find(|c| c.face_id == s.id);
            FaceSummary {
                id: s.id,
                dim: s.dim,
                vertices: s.vertices.iter().map(|v| v.0.clone()).collect(),
                normal: s.normal.clone(),
                level: s.level,
                m: (s.dim + 1 == n).then(|| fmt_rational(&s.m())),
                exceptional_axes: class.map(|c| c.exceptional_axes.iter().map(|i| i + 1).collect()),
            }
        })
        .collect();
    let (j_segment, bc) = if n == 3 {
        (
            find_j_segments(d)?.first().map(|s| s.to_string()),
            Some(boundary_case(d)?.case),
        )
    } else {
        (None, None)
    };
    Ok(DiagramSummary {
        faces,
        m0: m0(d).ok().map(|m| fmt_rational(&m)),
        j_segment,
        boundary_case: bc,
    })
}

/// Validation, diagram, nondegeneracy and every applicable exponent method. Input problems
/// become diagnostics; only internal inconsistencies are errors.
pub fn analyze(f: &PolyGerm, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    opts.config.validate()?;
    let mut rep = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: f.to_string(),
        arity: f.arity(),
        validation: Validation {
            singularity: false,
            singularity_failure: None,
            convenient: None,
            nearly_convenient: None,
            hyperplane_contact: None,
        },
        diagram: None,
        nondegeneracy: None,
        exponent: None,
        newton_number: None,
        curve: None,
        diagnostics: Vec::new(),
    };
    if let SingularityCheck::No(why) = f.is_singularity() {
        rep.validation.singularity_failure = Some(why.clone());
        rep.diagnostics.push(format!("not a singularity ({why})"));
        return Ok(rep);
    }
    rep.validation.singularity = true;
    let d = build_diagram(f)?;
    let pred = diagram_predicates(&d);
    rep.validation.convenient = Some(pred.convenient);
    rep.validation.nearly_convenient = Some(pred.nearly_convenient);
    rep.validation.hyperplane_contact = Some(pred.hyperplane_contact.clone());
    let isolated_shape = pred.isolated_shape();
    if !pred.nearly_convenient {
        rep.diagnostics.push(
            "not isolated: necessary condition violated (diagram is not nearly convenient)".into(),
        );
    }
    if let Some(i) = pred
        .hyperplane_contact
        .iter()
        .position(|&b| !b)
        .filter(|_| f.arity() >= 3)
    {
        rep.diagnostics.push(format!(
            "not isolated: necessary condition violated (Newton boundary misses {{x{} = 0}})",
            i + 1
        ));
    }
    rep.diagram = match summarize_diagram(&d) {
        Ok(s) => Some(s),
        Err(e @ Error::Consistency(_)) if isolated_shape => return Err(e),
        Err(e) => {
            rep.diagnostics.push(e.to_string());
            None
        }
    };
    let mut nd = nondegeneracy_on_diagram(f, &d)?;
    for fv in nd
        .faces
        .iter_mut()
        .filter(|v| v.verdict == Verdict::Unknown && v.witness.is_none())
    {
        // one more falsifier pass with the configured primes and seed
        let fs = crate::diagram::face_part(f, d.face(fv.face_id))?;
        fv.witness = torus_degeneracy_search(
            &fs,
            &default_primes(opts.config.prime_count),
            500,
            opts.config.rng_seed,
        );
    }
    rep.nondegeneracy = Some(nd.clone());
    if f.arity() == 3 && pred.convenient {
        rep.newton_number = newton_number_of_diagram(&d).ok();
    }
    if !isolated_shape {
        return Ok(rep);
    }
    let mut eopts = opts.exponent.clone();
    if eopts.curve_probe.is_some() {
        eopts.curve_probe = Some(opts.config.curve_weight_bound);
        rep.curve =
            crate::curve::monomial_curve_lower_bound(f, opts.config.curve_weight_bound).ok();
    }
    rep.exponent = Some(exponent_report(f, &d, &nd, &eopts)?);
    Ok(rep)
}

pub fn to_json(rep: &AnalysisReport) -> String {
    serde_json::to_string_pretty(rep).expect("reports serialize")
}

/// Human-readable report: faces with normals and classifications, then the method chain.
pub fn render_text(rep: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "germ: {}  (n = {})", rep.input, rep.arity);
    if let Some(why) = &rep.validation.singularity_failure {
        let _ = writeln!(s, "not a singularity: {why}");
    }
    if let Some(d) = &rep.diagram {
        let _ = writeln!(s, "Newton boundary:");
        for f in &d.faces {
            let verts: Vec<String> = f
                .vertices
                .iter()
                .map(|v| {
                    format!(
                        "({})",
                        v.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            let _ = write!(
                s,
                "  #{:<3} dim {}  u = {:?}  l = {}  [{}]",
                f.id,
                f.dim,
                f.normal,
                f.level,
                verts.join(" ")
            );
            if let Some(m) = &f.m {
                let _ = write!(s, "  m = {m}");
            }
            match &f.exceptional_axes {
                Some(ax) if !ax.is_empty() => {
                    let _ = write!(
                        s,
                        "  exceptional w.r.t. {}",
                        ax.iter()
                            .map(|i| format!("OX{i}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
                Some(_) => {
                    let _ = write!(s, "  unexceptional");
                }
                None => {}
            }
            let _ = writeln!(s);
        }
        if let Some(m) = &d.m0 {
            let _ = writeln!(s, "m0 = {m}");
        }
        if let Some(j) = &d.j_segment {
            let _ = writeln!(s, "J segment: {j}");
        }
        if let Some(c) = &d.boundary_case {
            let _ = writeln!(s, "boundary case: {c:?}");
        }
    }
    if let Some(nd) = &rep.nondegeneracy {
        let _ = writeln!(s, "nondegeneracy: {:?}", nd.verdict);
        for fv in nd
            .faces
            .iter()
            .filter(|v| v.verdict != Verdict::Nondegenerate)
        {
            let _ = write!(
                s,
                "  face #{}: {:?} by {:?}",
                fv.face_id, fv.verdict, fv.method
            );
            if let Some(w) = &fv.witness {
                let _ = write!(s, "  witness {} ({})", w.point.join(", "), w.field);
            }
            let _ = writeln!(s);
        }
    }
    if let Some(nn) = &rep.newton_number {
        let _ = writeln!(
            s,
            "Newton number: V3 = {}, V2 = {}, V1 = {}, nu = {}",
            fmt_rational(&nn.V3),
            fmt_rational(&nn.V2),
            fmt_rational(&nn.V1),
            fmt_rational(&nn.nu)
        );
    }
    if let Some(e) = &rep.exponent {
        for v in &e.values {
            let _ = writeln!(
                s,
                "  {:?}: {:?} {}",
                v.method,
                v.kind,
                fmt_rational(&v.value)
            );
        }
        match (&e.exact, &e.lower, &e.upper) {
            (Some(x), _, _) => {
                let _ = writeln!(s, "exponent: exact {}", fmt_rational(x));
            }
            (None, l, u) => {
                let _ = writeln!(
                    s,
                    "exponent: {} <= L0 <= {}",
                    l.as_ref().map_or("?".into(), fmt_rational),
                    u.as_ref().map_or("?".into(), fmt_rational)
                );
            }
        }
        if let Some(sf) = e.s_f {
            let _ = writeln!(s, "degree of C0-sufficiency: {sf}");
        }
        if let Some(c) = &e.conjecture {
            let _ = writeln!(s, "{}: exact = {}", c.flag, fmt_rational(&c.value));
        }
        for a in &e.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        for d in &e.diagnostics {
            let _ = writeln!(s, "note: {d}");
        }
    }
    for d in &rep.diagnostics {
        let _ = writeln!(s, "note: {d}");
    }
    s
}
