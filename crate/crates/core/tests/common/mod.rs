//! Property checks shared by the property suites and the acceptance run. Each check
//! returns a list of human-readable violations for one germ.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lojex::classify::{boundary_case, choose_unexceptional, verify_choice, Case};
use lojex::diagram::{build_diagram, find_j_segments, support_value, NewtonDiagram};
use lojex::exponent::{
    fukui_bound, lenarcik_2d, main_theorem_value, surface_exponent, ExponentReport,
};
use lojex::nondegeneracy::{nondegeneracy_on_diagram, Verdict};
use lojex::oracle::{brute_force_faces_stable, engine_faces};
use lojex::scalar::{rat, rat_int, Rational};
use lojex::{Error, ExpVec, PolyGerm};

/// The bound `l(u) ≥ min u_i` for the given normals.
pub fn support_value_bound(d: &NewtonDiagram, normals: &[Vec<i64>]) -> Vec<String> {
    normals
        .iter()
        .filter(|u| support_value(u, d) < rat_int(*u.iter().min().unwrap()))
        .map(|u| format!("l({u:?}) = {} < min u", support_value(u, d)))
        .collect()
}

/// Shifting a facet's hyperplane by `-u_i` for a partial derivative: when the shifted
/// plane supports Γ₊(∂_i f), its largest intercept drops by at least one and `m(L) ≥ 2`.
pub fn hyperplane_shift(f: &PolyGerm, d: &NewtonDiagram) -> Vec<String> {
    let mut out = Vec::new();
    for s in d.facets() {
        for i in 0..f.arity() {
            let g = f.partial(i);
            if g.is_zero() || g.terms().contains_key(&ExpVec::zero(f.arity())) {
                continue;
            }
            let shifted = s.level - s.normal[i];
            let lg = g.support().iter().map(|p| p.dot(&s.normal)).min().unwrap();
            if lg != shifted {
                continue;
            }
            let m_shift = s.normal.iter().map(|&uj| rat(shifted, uj)).max().unwrap();
            if m_shift > s.m() - rat_int(1) {
                out.push(format!(
                    "face #{} axis {}: m(L-1_i) = {m_shift} > m(L) - 1 = {}",
                    s.id,
                    i + 1,
                    s.m() - rat_int(1)
                ));
            }
            if s.m() < rat_int(2) {
                out.push(format!(
                    "face #{} axis {}: m(L) = {} < 2",
                    s.id,
                    i + 1,
                    s.m()
                ));
            }
        }
    }
    out
}

/// Nonempty proper coordinate subsets of `0..n`.
fn coordinate_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|a| mask & (1 << a) != 0).collect())
        .collect()
}

/// The boundary of a restriction equals the faces of Γ(f) inside the coordinate subspace.
pub fn restriction_boundary(f: &PolyGerm, d: &NewtonDiagram) -> Vec<String> {
    let mut out = Vec::new();
    for keep in coordinate_subsets(f.arity()) {
        let g = f.restrict(&keep);
        let project = |p: &ExpVec| ExpVec(keep.iter().map(|&a| p.0[a]).collect());
        let expected: BTreeSet<Vec<ExpVec>> = d
            .faces()
            .iter()
            .filter(|s| {
                s.points
                    .iter()
                    .all(|p| (0..f.arity()).all(|a| keep.contains(&a) || p.0[a] == 0))
            })
            .map(|s| s.points.iter().map(project).collect())
            .collect();
        let got: BTreeSet<Vec<ExpVec>> = if g.is_zero() {
            BTreeSet::new()
        } else {
            match build_diagram(&g) {
                Ok(dg) => dg.faces().iter().map(|s| s.points.clone()).collect(),
                Err(e) => {
                    out.push(format!("restriction to {keep:?}: {e}"));
                    continue;
                }
            }
        };
        if got != expected {
            out.push(format!(
                "restriction to {keep:?}: {} faces, expected {}",
                got.len(),
                expected.len()
            ));
        }
    }
    out
}

/// No vertex lies in the orthant translate of another.
pub fn vertex_antichain(d: &NewtonDiagram) -> Vec<String> {
    let vs = d.vertices();
    let mut out = Vec::new();
    for a in vs {
        for b in vs {
            if a != b && b.dominates(a) {
                out.push(format!("vertex {:?} dominates {:?}", b.0, a.0));
            }
        }
    }
    out
}

/// At most one 𝒥 edge, and its presence matches the no-facet/all-exceptional cases.
pub fn j_segment_and_dispatch(d: &NewtonDiagram) -> Vec<String> {
    let mut out = Vec::new();
    match find_j_segments(d) {
        Ok(js) if js.len() > 1 => out.push(format!("{} edges of the family 𝒥", js.len())),
        Ok(js) => match boundary_case(d) {
            Ok(bc) => {
                let special = matches!(bc.case, Case::NoFacets | Case::AllExceptional);
                if special != !js.is_empty() {
                    out.push(format!("case {:?} with {} 𝒥 edges", bc.case, js.len()));
                }
            }
            Err(e) => out.push(e.to_string()),
        },
        Err(e) => out.push(e.to_string()),
    }
    out
}

/// For every axis, the chosen unexceptional facet re-verifies.
pub fn unexceptional_choice(d: &NewtonDiagram) -> Vec<String> {
    let Ok(bc) = boundary_case(d) else {
        return vec!["boundary case failed".into()];
    };
    if bc.case != Case::HasUnexceptional {
        return vec![];
    }
    let mut out = Vec::new();
    for i in 0..3 {
        match choose_unexceptional(d, i) {
            Ok(c) if verify_choice(d, &c) => {}
            Ok(c) => out.push(format!("axis {}: witness {c:?} does not re-verify", i + 1)),
            Err(e) => out.push(format!("axis {}: {e}", i + 1)),
        }
    }
    out
}

/// Face sets of the engine and of the stabilized brute-force scan agree.
pub fn brute_force_agreement(d: &NewtonDiagram) -> Vec<String> {
    let st = brute_force_faces_stable(d.support(), 4, 1 << 12);
    let engine = engine_faces(d);
    let mut out = Vec::new();
    if !st.stable {
        out.push(format!(
            "brute force did not stabilize by bound {}",
            st.bound
        ));
    }
    if st.faces != engine {
        out.push(format!(
            "brute force: {} faces, engine: {} (missing {:?}, extra {:?})",
            st.faces.len(),
            engine.len(),
            engine.difference(&st.faces).collect::<Vec<_>>(),
            st.faces.difference(&engine).collect::<Vec<_>>()
        ));
    }
    out
}

/// Every exact or lower value ≤ main-theorem value ≤ Fukui bound, for nondegenerate germs.
pub fn bound_ordering(f: &PolyGerm, d: &NewtonDiagram) -> Vec<String> {
    if !d.has_facets() {
        return vec![];
    }
    match nondegeneracy_on_diagram(f, d) {
        Ok(nd) if nd.verdict == Verdict::Nondegenerate => {}
        _ => return vec![],
    }
    let (main, report): (Rational, ExponentReport) = match f.arity() {
        2 => match lenarcik_2d(f) {
            Ok(r) => (r.exact.clone().expect("exact in two variables"), r),
            Err(e) => return vec![e.to_string()],
        },
        3 => {
            let (_, v) = match main_theorem_value(d) {
                Ok(x) => x,
                Err(e) => return vec![e.to_string()],
            };
            match surface_exponent(f, None) {
                Ok(r) => (v, r),
                Err(e) => return vec![e.to_string()],
            }
        }
        _ => return vec![],
    };
    let fukui = match fukui_bound(f) {
        Ok(x) => x,
        Err(Error::NoFacets) => return vec![],
        Err(e) => return vec![e.to_string()],
    };
    let mut out = Vec::new();
    if main > fukui {
        out.push(format!("main value {main} > Fukui bound {fukui}"));
    }
    for x in report.exact.iter().chain(report.lower.iter()) {
        if *x > main {
            out.push(format!("exact/lower value {x} > main value {main}"));
        }
    }
    out
}

/// All corpus-level geometric checks for one germ.
pub fn geometry_checks(f: &PolyGerm, normals: &[Vec<i64>]) -> Vec<(&'static str, String)> {
    let d = match build_diagram(f) {
        Ok(d) => d,
        Err(e) => return vec![("build", e.to_string())],
    };
    let mut out: Vec<(&'static str, String)> = Vec::new();
    out.extend(
        support_value_bound(&d, normals)
            .into_iter()
            .map(|s| ("2.5", s)),
    );
    out.extend(hyperplane_shift(f, &d).into_iter().map(|s| ("2.6", s)));
    out.extend(restriction_boundary(f, &d).into_iter().map(|s| ("2.11", s)));
    out.extend(vertex_antichain(&d).into_iter().map(|s| ("3.2", s)));
    if f.arity() == 3 {
        out.extend(
            j_segment_and_dispatch(&d)
                .into_iter()
                .map(|s| ("3.4/3.8", s)),
        );
        out.extend(unexceptional_choice(&d).into_iter().map(|s| ("3.1", s)));
    }
    out
}
