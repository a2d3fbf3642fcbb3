//! Łojasiewicz exponent £₀(f) of the gradient: exact values and bounds from the Newton
//! diagram, plus the Newton number and the convenient padding used by the Milnor route.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify::{boundary_case, classify_facets, Case};
use crate::curve::monomial_curve_lower_bound;
use crate::diagram::{build_diagram, build_from_support, diagram_predicates, m0, NewtonDiagram};
use crate::error::{Error, Result};
use crate::germ::{ExpVec, PolyGerm};
use crate::lattice::{cross, int_rank};
use crate::nondegeneracy::{nondegeneracy_on_diagram, NondegeneracyReport, Verdict};
use crate::scalar::{
    fmt_rational, rat, rat_int, serialize_opt_rational, serialize_rational, GaussianRational,
    Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Method {
    Quasihomogeneous,
    MainThm1,
    NewtonNumberMilnor,
    Lenarcik,
    MainThm2Bound,
    Fukui,
    CurveLowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Upper,
    Lower,
}

/// One number produced by one method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MethodValue {
    pub method: Method,
    pub kind: Kind,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExponentReport {
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_rational"
    )]
    pub exact: Option<Rational>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_rational"
    )]
    pub lower: Option<Rational>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_rational"
    )]
    pub upper: Option<Rational>,
    pub methods: Vec<Method>,
    pub values: Vec<MethodValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_f: Option<u64>,
    pub assumptions: Vec<String>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<Conjecture>,
}

/// Upper bound offered as the exact value under the open equality conjecture; never merged
/// into `exact`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conjecture {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub flag: &'static str,
}

impl ExponentReport {
    pub fn value_of(&self, method: Method) -> Option<&Rational> {
        self.values
            .iter()
            .find(|v| v.method == method)
            .map(|v| &v.value)
    }

    fn note(&mut self, msg: String) {
        if !self.diagnostics.contains(&msg) {
            self.diagnostics.push(msg);
        }
    }

    fn assume(&mut self, msg: String) {
        if !self.assumptions.contains(&msg) {
            self.assumptions.push(msg);
        }
    }

    /// Records a theorem value, honouring the nondegeneracy verdict: degenerate germs get
    /// the number as a diagnostic only, unknown verdicts make it conditional.
    fn record(&mut self, nd: &NondegeneracyReport, method: Method, kind: Kind, value: Rational) {
        if method != Method::CurveLowerBound {
            match nd.verdict {
                Verdict::Degenerate => {
                    let face = nd
                        .faces
                        .iter()
                        .find(|f| f.verdict == Verdict::Degenerate)
                        .map_or(0, |f| f.face_id);
                    self.note(format!(
                        "{method:?} would give {} = {}, but f is degenerate on face #{face}",
                        kind_name(kind),
                        fmt_rational(&value)
                    ));
                    return;
                }
                Verdict::Unknown => {
                    for f in nd.faces.iter().filter(|f| f.verdict == Verdict::Unknown) {
                        self.assume(format!(
                            "nondegeneracy verdict Unknown on face #{}; result conditional",
                            f.face_id
                        ));
                    }
                }
                Verdict::Nondegenerate => {}
            }
        }
        self.values.push(MethodValue {
            method,
            kind,
            value,
        });
    }

    /// Merges the recorded values into `exact`/`lower`/`upper`, checking they agree.
    fn finalize(&mut self) -> Result<()> {
        let conditional = !self.assumptions.is_empty();
        let exacts: BTreeSet<&Rational> = self
            .values
            .iter()
            .filter(|v| v.kind == Kind::Exact)
            .map(|v| &v.value)
            .collect();
        if exacts.len() > 1 {
            return Err(Error::Consistency(format!(
                "exact values disagree: {}",
                self.render_values()
            )));
        }
        let mut exact = exacts.into_iter().next().cloned();
        let upper = self
            .values
            .iter()
            .filter(|v| v.kind != Kind::Lower)
            .map(|v| v.value.clone())
            .min();
        let lower = self
            .values
            .iter()
            .filter(|v| v.kind != Kind::Upper)
            .map(|v| v.value.clone())
            .max();
        if let (Some(l), Some(u)) = (&lower, &upper) {
            if l > u {
                let msg = format!("lower bound exceeds upper bound: {}", self.render_values());
                if conditional {
                    self.note(format!(
                        "{msg}; the Unknown nondegeneracy verdict is likely false"
                    ));
                    self.exact = None;
                    self.lower = lower;
                    self.upper = None;
                    return Ok(());
                }
                return Err(Error::Consistency(msg));
            }
            if l == u {
                exact = Some(l.clone());
            }
        }
        match exact {
            Some(e) => {
                self.lower = Some(e.clone());
                self.upper = Some(e.clone());
                self.s_f = c0_sufficiency_value(&e);
                self.exact = Some(e);
            }
            None => {
                self.lower = lower;
                self.upper = upper;
            }
        }
        let mut seen = BTreeSet::new();
        self.methods = self
            .values
            .iter()
            .map(|v| v.method)
            .filter(|m| seen.insert(*m))
            .collect();
        Ok(())
    }

    fn render_values(&self) -> String {
        self.values
            .iter()
            .map(|v| {
                format!(
                    "{:?} {} {}",
                    v.method,
                    kind_name(v.kind),
                    fmt_rational(&v.value)
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Exact => "exact",
        Kind::Upper => "upper",
        Kind::Lower => "lower",
    }
}

/// `s(f) = ⌊£₀⌋ + 1`.
pub fn c0_sufficiency(report: &ExponentReport) -> Option<u64> {
    report.exact.as_ref().and_then(c0_sufficiency_value)
}

fn c0_sufficiency_value(e: &Rational) -> Option<u64> {
    (e.floor().to_integer() + BigInt::one()).to_u64()
}

/// `m₀(f) - 1`.
pub fn fukui_bound(f: &PolyGerm) -> Result<Rational> {
    let d = build_diagram(f)?;
    Ok(m0(&d)? - Rational::one())
}

struct Ctx<'a> {
    f: &'a PolyGerm,
    d: NewtonDiagram,
    nd: NondegeneracyReport,
}

impl<'a> Ctx<'a> {
    fn new(f: &'a PolyGerm) -> Result<Self> {
        f.require_singularity()?;
        let d = build_diagram(f)?;
        let nd = nondegeneracy_on_diagram(f, &d)?;
        Ok(Ctx { f, d, nd })
    }
}

pub fn lenarcik_2d(f: &PolyGerm) -> Result<ExponentReport> {
    if f.arity() != 2 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let ctx = Ctx::new(f)?;
    let mut r = ExponentReport::default();
    record_lenarcik(&ctx, &mut r)?;
    r.finalize()?;
    Ok(r)
}

fn record_lenarcik(ctx: &Ctx, r: &mut ExponentReport) -> Result<()> {
    let value = lenarcik_value(&ctx.d)?;
    r.record(&ctx.nd, Method::Lenarcik, Kind::Exact, value);
    Ok(())
}

/// `max m(S) - 1` over unexceptional segments, or 1 when there are none.
fn lenarcik_value(d: &NewtonDiagram) -> Result<Rational> {
    let classes = classify_facets(d)?;
    Ok(classes
        .iter()
        .filter(|c| c.unexceptional())
        .map(|c| d.face(c.face_id).m() - Rational::one())
        .max()
        .unwrap_or_else(Rational::one))
}

/// Main theorem for surfaces, with an optional curve probe closing the gap in case 2°.
pub fn surface_exponent(f: &PolyGerm, curve_probe: Option<u32>) -> Result<ExponentReport> {
    if f.arity() != 3 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let ctx = Ctx::new(f)?;
    let mut r = ExponentReport::default();
    record_main_theorem(&ctx, &mut r)?;
    if let Some(b) = curve_probe {
        record_curve(&ctx, &mut r, b)?;
    }
    r.finalize()?;
    Ok(r)
}

/// The value the main theorem gives: `(case, m(I) - 1)` or `(case, max m(S) - 1)`.
pub fn main_theorem_value(d: &NewtonDiagram) -> Result<(Case, Rational)> {
    let bc = boundary_case(d)?;
    match bc.case {
        Case::NoFacets | Case::AllExceptional => {
            let i = bc
                .j_segment
                .expect("boundary_case pairs these cases with a 𝒥 segment");
            Ok((bc.case, i.m() - Rational::one()))
        }
        Case::HasUnexceptional => {
            let best = classify_facets(d)?
                .iter()
                .filter(|c| c.unexceptional())
                .map(|c| d.face(c.face_id).m())
                .max()
                .expect("an unexceptional facet exists");
            Ok((bc.case, best - Rational::one()))
        }
    }
}

fn record_main_theorem(ctx: &Ctx, r: &mut ExponentReport) -> Result<()> {
    match main_theorem_value(&ctx.d)? {
        (Case::HasUnexceptional, v) => r.record(&ctx.nd, Method::MainThm2Bound, Kind::Upper, v),
        (_, v) => r.record(&ctx.nd, Method::MainThm1, Kind::Exact, v),
    }
    Ok(())
}

fn record_fukui(ctx: &Ctx, r: &mut ExponentReport) {
    if let Ok(m) = m0(&ctx.d) {
        r.record(&ctx.nd, Method::Fukui, Kind::Upper, m - Rational::one());
    }
}

fn record_curve(ctx: &Ctx, r: &mut ExponentReport, bound: u32) -> Result<()> {
    match monomial_curve_lower_bound(ctx.f, bound) {
        Ok(b) => {
            r.record(&ctx.nd, Method::CurveLowerBound, Kind::Lower, b.value);
            Ok(())
        }
        Err(Error::NotIsolated(msg)) => {
            r.note(format!("not isolated: {msg}"));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Weights `w` with `Σ ν_i / w_i = 1` on the support, chosen with every `w_i ≥ 2` when
/// the support allows it (and then with the smallest largest weight).
pub fn quasihomogeneous_weights(f: &PolyGerm) -> Result<Vec<Rational>> {
    let pts: Vec<Vec<i128>> = f
        .support()
        .iter()
        .map(|e| e.0.iter().map(|&x| x as i128).collect())
        .collect();
    let n = f.arity();
    if pts.is_empty() {
        return Err(Error::ZeroGerm);
    }
    let diffs: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let r = if diffs.is_empty() {
        0
    } else {
        int_rank(&diffs)
    };
    let to_rat = |v: &[i128]| -> Vec<Rational> {
        v.iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect()
    };
    let dot = |a: &[Rational], p: &[i128]| -> Rational {
        a.iter().zip(p).fold(Rational::zero(), |acc, (x, &y)| {
            acc + x * Rational::from_integer(BigInt::from(y))
        })
    };
    // a_i = 1 / w_i: solve <a, p> = 1 on the support.
    let a: Vec<Rational> = if r >= n {
        return Err(Error::NotQuasihomogeneous);
    } else if r + 1 == n {
        let basis: Vec<Vec<i128>> = independent(&diffs, n - 1);
        let u = to_rat(&cross(&basis, n));
        let l = dot(&u, &pts[0]);
        if l.is_zero() {
            return Err(Error::NotQuasihomogeneous);
        }
        u.iter().map(|x| x / &l).collect()
    } else if r + 2 == n && n == 3 {
        let q = pts
            .iter()
            .find(|p| independent(&[pts[0].clone(), (*p).clone()], 2).len() == 2);
        let Some(q) = q else {
            return Err(Error::NotQuasihomogeneous);
        };
        let p = &pts[0];
        let (pp, pq, qq) = (dot(&to_rat(p), p), dot(&to_rat(p), q), dot(&to_rat(q), q));
        let det = &pp * &qq - &pq * &pq;
        let alpha = (&qq - &pq) / &det;
        let beta = (&pp - &pq) / &det;
        let a0: Vec<Rational> = (0..3)
            .map(|i| &alpha * rat_int(p[i] as i64) + &beta * rat_int(q[i] as i64))
            .collect();
        let dir = to_rat(&cross(&[p.clone(), q.clone()], 3));
        maximin_on_line(&a0, &dir).ok_or(Error::NotQuasihomogeneous)?
    } else {
        return Err(Error::Precondition(
            "support too small to pin down weights".into(),
        ));
    };
    if a.iter().any(|x| !x.is_positive()) || pts.iter().any(|p| dot(&a, p) != Rational::one()) {
        return Err(Error::NotQuasihomogeneous);
    }
    Ok(a.iter().map(|x| x.recip()).collect())
}

/// The first `k` linearly independent rows.
fn independent(rows: &[Vec<i128>], k: usize) -> Vec<Vec<i128>> {
    let mut out: Vec<Vec<i128>> = Vec::new();
    for r in rows {
        let mut trial = out.clone();
        trial.push(r.clone());
        if int_rank(&trial) == trial.len() {
            out = trial;
            if out.len() == k {
                break;
            }
        }
    }
    out
}

/// On the line `a0 + λ·dir`, the point maximizing `min a_i` among those with every
/// `0 < a_i ≤ 1/2`, or among those with `a_i > 0` if the box is empty.
fn maximin_on_line(a0: &[Rational], dir: &[Rational]) -> Option<Vec<Rational>> {
    let half = rat(1, 2);
    let mut cands: Vec<Rational> = vec![Rational::zero()];
    for i in 0..a0.len() {
        if !dir[i].is_zero() {
            cands.push((&half - &a0[i]) / &dir[i]);
        }
        for j in i + 1..a0.len() {
            let dd = &dir[i] - &dir[j];
            if !dd.is_zero() {
                cands.push((&a0[j] - &a0[i]) / dd);
            }
        }
    }
    let at =
        |l: &Rational| -> Vec<Rational> { a0.iter().zip(dir).map(|(a, d)| a + l * d).collect() };
    let score = |a: &[Rational]| a.iter().min().cloned().unwrap();
    let pick = |boxed: bool| {
        cands
            .iter()
            .map(&at)
            .filter(|a| a.iter().all(|x| x.is_positive() && (!boxed || *x <= half)))
            .max_by(|x, y| score(x).cmp(&score(y)).then_with(|| y.cmp(x)))
    };
    pick(true).or_else(|| pick(false))
}

/// `max w_i - 1` for weighted-homogeneous surface germs, cross-checked against the
/// Newton-diagram form of the same statement.
pub fn quasihomogeneous_exponent(f: &PolyGerm) -> Result<ExponentReport> {
    if f.arity() != 3 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let ctx = Ctx::new(f)?;
    let mut r = ExponentReport::default();
    record_quasihomogeneous(&ctx, &mut r)?;
    r.finalize()?;
    Ok(r)
}

fn record_quasihomogeneous(ctx: &Ctx, r: &mut ExponentReport) -> Result<()> {
    let w = quasihomogeneous_weights(ctx.f)?;
    let value = w.iter().max().unwrap() - Rational::one();
    let (_, diagram_value) = main_theorem_value(&ctx.d)?;
    if w.iter().all(|x| *x >= rat_int(2)) {
        if value != diagram_value {
            return Err(Error::Consistency(format!(
                "max w_i - 1 = {} but the diagram form gives {}",
                fmt_rational(&value),
                fmt_rational(&diagram_value)
            )));
        }
        r.record(&ctx.nd, Method::Quasihomogeneous, Kind::Exact, value);
    } else {
        r.note(format!(
            "weights {} include one below 2; max w_i - 1 = {} is not used",
            w.iter().map(fmt_rational).collect::<Vec<_>>().join(", "),
            fmt_rational(&value)
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct NewtonNumber {
    #[serde(serialize_with = "serialize_rational")]
    pub V3: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub V2: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub V1: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub nu: Rational,
}

/// `ν = 3!·V₃ - 2!·V₂ + V₁ - 1` for a convenient surface germ.
pub fn newton_number_3d(f: &PolyGerm) -> Result<NewtonNumber> {
    if f.arity() != 3 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let d = build_diagram(f)?;
    newton_number_of_diagram(&d)
}

pub fn newton_number_of_diagram(d: &NewtonDiagram) -> Result<NewtonNumber> {
    if d.arity() != 3 {
        return Err(Error::UnsupportedArity(d.arity()));
    }
    if !diagram_predicates(d).convenient {
        return Err(Error::NotConvenient);
    }
    // Cone over each facet: volume = l · area(projection to x3 = 0) / (3 u3).
    let mut v3 = Rational::zero();
    for s in d.facets() {
        let proj: Vec<(i128, i128)> = s
            .vertices
            .iter()
            .map(|v| (v.0[0] as i128, v.0[1] as i128))
            .collect();
        let twice_area = hull_twice_area(&proj);
        v3 += Rational::new(
            BigInt::from(s.level as i128 * twice_area),
            BigInt::from(6 * s.normal[2] as i128),
        );
    }
    let mut v2 = Rational::zero();
    for k in 0..3 {
        let plane: Vec<ExpVec> = d
            .support()
            .iter()
            .filter(|e| e.0[k] == 0)
            .map(|e| ExpVec((0..3).filter(|&i| i != k).map(|i| e.0[i]).collect()))
            .collect();
        let d2 = build_from_support(&plane)?;
        for e in d2.faces_of_dim(1) {
            let (p, q) = (&e.vertices[0].0, &e.vertices[1].0);
            let det = p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128;
            v2 += Rational::new(BigInt::from(det.abs()), BigInt::from(2));
        }
    }
    let mut v1 = Rational::zero();
    for i in 0..3 {
        let a = d
            .support()
            .iter()
            .filter(|e| e.is_on_axis(i))
            .map(|e| e.0[i])
            .min()
            .expect("convenient");
        v1 += rat_int(a as i64);
    }
    let nu = rat_int(6) * &v3 - rat_int(2) * &v2 + &v1 - Rational::one();
    Ok(NewtonNumber {
        V3: v3,
        V2: v2,
        V1: v1,
        nu,
    })
}

/// Twice the area of the convex hull of planar integer points.
fn hull_twice_area(points: &[(i128, i128)]) -> i128 {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let turn = |o: (i128, i128), a: (i128, i128), b: (i128, i128)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i128, i128)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let m = hull.len();
    (0..m)
        .map(|i| hull[i].0 * hull[(i + 1) % m].1 - hull[(i + 1) % m].0 * hull[i].1)
        .sum::<i128>()
        .abs()
}

/// `f` padded with `z_i^v` on the axes the diagram misses.
#[derive(Clone, Debug, PartialEq)]
pub struct Padded {
    pub g: PolyGerm,
    /// `None` when `f` is already convenient.
    pub v: Option<u32>,
    pub padded_axes: Vec<bool>,
}

/// Pads missing axes with `z_i^v`, `v` the smallest integer above `m₀(f)`, every exceptional
/// `m(S)` and `m(I)`, so the added terms do not change £₀ and leave the relevant faces alone.
pub fn make_convenient(f: &PolyGerm) -> Result<Padded> {
    if f.arity() != 3 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let d = build_diagram(f)?;
    let missing: Vec<bool> = (0..3)
        .map(|i| !d.support().iter().any(|e| e.is_on_axis(i)))
        .collect();
    if !missing.iter().any(|&m| m) {
        return Ok(Padded {
            g: f.clone(),
            v: None,
            padded_axes: missing,
        });
    }
    let mut floor: Option<Rational> = m0(&d).ok();
    let mut raise = |x: Rational| {
        if floor.as_ref().is_none_or(|f| x > *f) {
            floor = Some(x);
        }
    };
    for c in classify_facets(&d)?.iter().filter(|c| !c.unexceptional()) {
        raise(d.face(c.face_id).m());
    }
    if let Some(i) = crate::diagram::find_j_segments(&d)?.first() {
        raise(i.m());
    }
    let Some(floor) = floor else {
        return Err(Error::NoFacets);
    };
    let v = (floor.floor().to_integer() + BigInt::one())
        .to_u32()
        .expect("small exponent")
        .max(2);
    let mut g = f.clone();
    for (i, _) in missing.iter().enumerate().filter(|(_, m)| **m) {
        let mut e = ExpVec::zero(3);
        e.0[i] = v;
        g.add_term(e, &GaussianRational::one());
    }
    Ok(Padded {
        g,
        v: Some(v),
        padded_axes: missing,
    })
}

/// `£₀ = μ = ν(g)` when the Hessian has rank ≥ n - 1 and `g` (the convenient padding of `f`)
/// is nondegenerate.
pub fn milnor_equality_exact(f: &PolyGerm) -> Result<Rational> {
    let ctx = Ctx::new(f)?;
    milnor_value(&ctx)
}

fn milnor_value(ctx: &Ctx) -> Result<Rational> {
    let f = ctx.f;
    if f.arity() != 3 {
        return Err(Error::UnsupportedArity(f.arity()));
    }
    let rank = f.hessian_rank_at_zero();
    if rank < 2 {
        return Err(Error::Precondition(format!("Hessian rank {rank} < 2")));
    }
    if ctx.nd.verdict != Verdict::Nondegenerate {
        return Err(Error::Precondition("nondegeneracy not established".into()));
    }
    let padded = make_convenient(f)
        .map_err(|e| Error::Precondition(format!("cannot make convenient: {e}")))?;
    let dg = build_diagram(&padded.g)?;
    if padded.v.is_some()
        && nondegeneracy_on_diagram(&padded.g, &dg)?.verdict != Verdict::Nondegenerate
    {
        return Err(Error::Precondition(
            "padded germ is not known to be nondegenerate".into(),
        ));
    }
    Ok(newton_number_of_diagram(&dg)?.nu)
}

fn record_milnor(ctx: &Ctx, r: &mut ExponentReport) -> Result<()> {
    match milnor_value(ctx) {
        Ok(v) => r.values.push(MethodValue {
            method: Method::NewtonNumberMilnor,
            kind: Kind::Exact,
            value: v,
        }),
        Err(Error::Precondition(_)) | Err(Error::NotConvenient) | Err(Error::NoFacets) => {}
        Err(e) => return Err(e),
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentOptions {
    /// Weight bound for the curve probe; `None` disables it.
    pub curve_probe: Option<u32>,
    pub conjecture: bool,
}

/// Every applicable method, in precedence order, merged into one report. Only a
/// disagreement between methods is an error.
pub fn exponent_report(
    f: &PolyGerm,
    d: &NewtonDiagram,
    nd: &NondegeneracyReport,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    let ctx = Ctx {
        f,
        d: d.clone(),
        nd: nd.clone(),
    };
    let mut r = ExponentReport::default();
    let n = f.arity();
    let soft = |res: Result<()>, r: &mut ExponentReport| -> Result<()> {
        match res {
            Ok(()) => Ok(()),
            Err(e @ Error::Consistency(_)) => Err(e),
            Err(Error::NotQuasihomogeneous) => Ok(()),
            Err(e) => {
                r.note(e.to_string());
                Ok(())
            }
        }
    };
    if n == 3 {
        soft(record_quasihomogeneous(&ctx, &mut r), &mut r)?;
        soft(record_main_theorem(&ctx, &mut r), &mut r)?;
        soft(record_milnor(&ctx, &mut r), &mut r)?;
    }
    if n == 2 {
        soft(record_lenarcik(&ctx, &mut r), &mut r)?;
    }
    record_fukui(&ctx, &mut r);
    if let Some(b) = opts.curve_probe {
        soft(record_curve(&ctx, &mut r, b), &mut r)?;
    }
    r.finalize()?;
    if opts.conjecture && r.exact.is_none() && r.value_of(Method::MainThm2Bound).is_some() {
        r.conjecture = r.upper.clone().map(|value| Conjecture {
            value,
            flag: "CONJECTURE",
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_germ;

    fn germ(s: &str, n: usize) -> PolyGerm {
        parse_germ(s, n).unwrap()
    }

    #[test]
    fn fukui_examples() {
        assert_eq!(
            fukui_bound(&germ("z1^3+z2^3+z1*z3^4+z2*z3^4+z3^20", 3)).unwrap(),
            rat_int(19)
        );
        assert_eq!(fukui_bound(&germ("z1^2+z2^2+z3^2", 3)).unwrap(), rat_int(1));
        assert_eq!(
            fukui_bound(&germ("z1^3+z2^3+z3^2+z1*z2", 3)).unwrap(),
            rat_int(2)
        );
        assert!(matches!(
            fukui_bound(&germ("z2^3+z1*z3+z1^2*z3^2", 3)),
            Err(Error::NoFacets)
        ));
    }

    #[test]
    fn lenarcik_examples() {
        assert_eq!(
            lenarcik_2d(&germ("z1^2+z2^3", 2)).unwrap().exact,
            Some(rat_int(2))
        );
        assert_eq!(
            lenarcik_2d(&germ("z1*z2+z1^3", 2)).unwrap().exact,
            Some(rat_int(1))
        );
        assert_eq!(
            lenarcik_2d(&germ("z1^2+z2^2", 2)).unwrap().exact,
            Some(rat_int(1))
        );
        assert_eq!(
            lenarcik_2d(&germ("z1*z2", 2)).unwrap().exact,
            Some(rat_int(1))
        );
        assert!(lenarcik_2d(&germ("z1^2+z2^2+z3^2", 3)).is_err());
    }

    #[test]
    fn surface_examples() {
        let r = surface_exponent(&germ("z1^3+z2^3+z3^2+z1*z2", 3), None).unwrap();
        assert_eq!(
            (r.exact.clone(), r.methods.clone()),
            (Some(rat_int(1)), vec![Method::MainThm1])
        );
        let r = surface_exponent(&germ("z2^3+z1*z3+z1^2*z3^2", 3), None).unwrap();
        assert_eq!(r.exact, Some(rat_int(2)));
    }

    #[test]
    fn quasihomogeneous_examples() {
        assert_eq!(
            quasihomogeneous_exponent(&germ("z1^2+z2^2+z3^2", 3))
                .unwrap()
                .exact,
            Some(rat_int(1))
        );
        assert_eq!(
            quasihomogeneous_exponent(&germ("z1^3+z2^3+z3^3", 3))
                .unwrap()
                .exact,
            Some(rat_int(2))
        );
        for k in 2..6 {
            let r = quasihomogeneous_exponent(&germ(&format!("z1*z2+z3^{k}"), 3)).unwrap();
            assert_eq!(r.exact, Some(rat_int(k - 1)));
        }
        let w = quasihomogeneous_weights(&germ("z1*z2+z3^5", 3)).unwrap();
        assert_eq!(w, vec![rat_int(2), rat_int(2), rat_int(5)]);
        assert!(matches!(
            quasihomogeneous_exponent(&germ("z1^2+z2^3+z3^3+z1*z2*z3", 3)),
            Err(Error::NotQuasihomogeneous)
        ));
    }

    #[test]
    fn newton_number_examples() {
        let nn = newton_number_3d(&germ("z1^3+z2^3+z3^2+z1*z2", 3)).unwrap();
        assert_eq!(
            (nn.V3, nn.V2, nn.V1, nn.nu),
            (rat_int(2), rat_int(9), rat_int(8), rat_int(1))
        );
        let nn = newton_number_3d(&germ("z1^2+z2^2+z3^2", 3)).unwrap();
        assert_eq!(
            (nn.V3, nn.V2, nn.V1, nn.nu),
            (rat(4, 3), rat_int(6), rat_int(6), rat_int(1))
        );
        assert!(matches!(
            newton_number_3d(&germ("z1^4", 3)),
            Err(Error::NotConvenient)
        ));
        // A_k: ν = k
        assert_eq!(
            newton_number_3d(&germ("z1^2+z2^2+z3^5", 3)).unwrap().nu,
            rat_int(4)
        );
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(
            milnor_equality_exact(&germ("z1^3+z2^3+z3^2+z1*z2", 3)).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            milnor_equality_exact(&germ("z1^2+z2^2+z3^2", 3)).unwrap(),
            rat_int(1)
        );
        assert!(matches!(
            milnor_equality_exact(&germ("z1^3+z2^3+z3^3", 3)),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            milnor_equality_exact(&germ("z2^3+z1*z3+z1^2*z3^2", 3)).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn padding_examples() {
        let p = make_convenient(&germ("z2^3+z1*z3+z1^2*z3^2", 3)).unwrap();
        assert_eq!(p.v, Some(4));
        assert_eq!(p.padded_axes, vec![true, false, true]);
        assert_eq!(p.g, germ("z2^3+z1*z3+z1^2*z3^2+z1^4+z3^4", 3));
        let p = make_convenient(&germ("z1^3+z2^3+z3^2+z1*z2", 3)).unwrap();
        assert_eq!((p.v, p.padded_axes), (None, vec![false; 3]));
        let p = make_convenient(&germ("z1*z2+z3^3", 3)).unwrap();
        assert_eq!(p.g, germ("z1*z2+z3^3+z1^4+z2^4", 3));
    }

    #[test]
    fn sufficiency_degree() {
        let mut r = ExponentReport {
            exact: Some(rat_int(1)),
            ..Default::default()
        };
        assert_eq!(c0_sufficiency(&r), Some(2));
        r.exact = Some(rat_int(5));
        assert_eq!(c0_sufficiency(&r), Some(6));
        r.exact = Some(rat(3, 2));
        assert_eq!(c0_sufficiency(&r), Some(2));
        r.exact = None;
        assert_eq!(c0_sufficiency(&r), None);
    }
}
