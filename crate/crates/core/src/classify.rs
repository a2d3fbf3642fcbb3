//! Exceptional facets, the boundary-case dispatch, and the choice of unexceptional facets.

use serde::Serialize;

use crate::diagram::{find_j_segments, Face, JSegment, NewtonDiagram};
use crate::error::{Error, Result};
use crate::germ::ExpVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceClassification {
    pub face_id: usize,
    /// 0-based axes the facet is exceptional with respect to.
    pub exceptional_axes: Vec<usize>,
}

impl FaceClassification {
    pub fn unexceptional(&self) -> bool {
        self.exceptional_axes.is_empty()
    }
}

/// Classifies a facet (`dim = n - 1`) for `n ∈ {2, 3}`.
///
/// The facet is exceptional w.r.t. `OX_i` when some vertex `W` is at lattice distance 1
/// from `OX_i` and the other vertices are exactly the vertex set of an `(n-2)`-face of the
/// diagram lying in a coordinate hyperplane `{x_j = 0}`, `j ≠ i`.
pub fn classify_face(s: &Face, d: &NewtonDiagram) -> Result<FaceClassification> {
    let n = d.arity();
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    if s.dim != n - 1 {
        return Err(Error::Precondition(format!(
            "face #{} is not a facet",
            s.id
        )));
    }
    let mut axes = Vec::new();
    for i in 0..n {
        let exceptional = s.vertices.iter().any(|w| {
            if w.off_axis_sum(i) != 1 {
                return false;
            }
            let rest: Vec<ExpVec> = s.vertices.iter().filter(|v| *v != w).cloned().collect();
            let Some(g) = d.find_by_vertices(&rest) else {
                return false;
            };
            g.dim == n - 2 && (0..n).any(|j| j != i && rest.iter().all(|v| v.0[j] == 0))
        });
        if exceptional {
            axes.push(i);
        }
    }
    Ok(FaceClassification {
        face_id: s.id,
        exceptional_axes: axes,
    })
}

pub fn classify_facets(d: &NewtonDiagram) -> Result<Vec<FaceClassification>> {
    d.facets().map(|s| classify_face(s, d)).collect()
}

/// `E_f`: ids of the exceptional facets.
pub fn exceptional_faces(d: &NewtonDiagram) -> Result<Vec<usize>> {
    Ok(classify_facets(d)?
        .into_iter()
        .filter(|c| !c.unexceptional())
        .map(|c| c.face_id)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    NoFacets,
    AllExceptional,
    HasUnexceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCase {
    pub case: Case,
    pub j_segment: Option<JSegment>,
}

/// Dispatch for surfaces: Γ² empty, Γ² = E_f, or some unexceptional facet. The first two
/// happen exactly when Γ¹ contains an edge of the family 𝒥; a violation is an error.
pub fn boundary_case(d: &NewtonDiagram) -> Result<BoundaryCase> {
    if d.arity() != 3 {
        return Err(Error::UnsupportedArity(d.arity()));
    }
    let js = find_j_segments(d)?;
    let classes = classify_facets(d)?;
    let case = if classes.is_empty() {
        Case::NoFacets
    } else if classes.iter().all(|c| !c.unexceptional()) {
        Case::AllExceptional
    } else {
        Case::HasUnexceptional
    };
    let j_segment = js.into_iter().next();
    if (case == Case::HasUnexceptional) == j_segment.is_some() {
        return Err(Error::Consistency(format!(
            "boundary case {case:?} but 𝒥 ∩ Γ¹ is {} (non-isolated input?)",
            j_segment
                .as_ref()
                .map_or("empty".to_string(), |s| s.to_string())
        )));
    }
    Ok(BoundaryCase { case, j_segment })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `W ∈ OX_i` is a vertex of the facet.
    VertexOnAxis { w: ExpVec },
    /// `W ∈ OX_iX_j` at distance 1 from `OX_i`, `Y ∈ OX_iX_k`, and `WY` is an edge.
    EdgeNearAxis {
        w: ExpVec,
        y: ExpVec,
        j: usize,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceWitness {
    pub axis: usize,
    pub face_id: usize,
    pub condition: Condition,
}

/// An unexceptional facet attached to axis `i` (0-based) by one of the two conditions.
///
/// Facets are scanned in lexicographic order of their normals; for each, a vertex on the
/// axis is preferred over an edge near it.
pub fn choose_unexceptional(d: &NewtonDiagram, i: usize) -> Result<ChoiceWitness> {
    if d.arity() != 3 {
        return Err(Error::UnsupportedArity(d.arity()));
    }
    if i >= 3 {
        return Err(Error::Precondition(format!("axis {} out of range", i + 1)));
    }
    let classes = classify_facets(d)?;
    let mut candidates: Vec<&Face> = classes
        .iter()
        .filter(|c| c.unexceptional())
        .map(|c| d.face(c.face_id))
        .collect();
    if candidates.is_empty() {
        return Err(Error::Precondition("Γ² has no unexceptional facet".into()));
    }
    candidates.sort_by(|a, b| a.normal.cmp(&b.normal));
    for s in candidates {
        if let Some(w) = s.vertices.iter().find(|v| v.is_on_axis(i)) {
            return Ok(ChoiceWitness {
                axis: i,
                face_id: s.id,
                condition: Condition::VertexOnAxis { w: w.clone() },
            });
        }
        if let Some(condition) = edge_near_axis(d, s, i) {
            return Ok(ChoiceWitness {
                axis: i,
                face_id: s.id,
                condition,
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no unexceptional facet satisfies either condition for axis {} (non-isolated input?)",
        i + 1
    )))
}

fn edge_near_axis(d: &NewtonDiagram, s: &Face, i: usize) -> Option<Condition> {
    for e in d.edges_of(s) {
        for (w, y) in [
            (&e.vertices[0], &e.vertices[1]),
            (&e.vertices[1], &e.vertices[0]),
        ] {
            for j in (0..3).filter(|&j| j != i) {
                let k = 3 - i - j;
                if w.off_axis_sum(i) == 1 && w.0[j] == 1 && w.0[k] == 0 && y.0[j] == 0 {
                    return Some(Condition::EdgeNearAxis {
                        w: w.clone(),
                        y: y.clone(),
                        j,
                        k,
                    });
                }
            }
        }
    }
    None
}

/// Independent re-check of a witness against the face data.
pub fn verify_choice(d: &NewtonDiagram, c: &ChoiceWitness) -> bool {
    let s = d.face(c.face_id);
    let Ok(class) = classify_face(s, d) else {
        return false;
    };
    if !class.unexceptional() {
        return false;
    }
    let i = c.axis;
    match &c.condition {
        Condition::VertexOnAxis { w } => s.is_vertex(w) && (0..3).all(|a| a == i || w.0[a] == 0),
        Condition::EdgeNearAxis { w, y, j, k } => {
            let dist_one = (0..3).filter(|&a| a != i).map(|a| w.0[a]).sum::<u32>() == 1;
            let edge = d
                .find_by_vertices(&[w.clone(), y.clone()])
                .is_some_and(|e| e.dim == 1)
                && s.is_vertex(w)
                && s.is_vertex(y);
            let distinct = *j != i && *k != i && j != k;
            distinct && dist_one && w.0[*k] == 0 && y.0[*j] == 0 && edge
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::parse::parse_germ;

    fn ev(v: &[u32]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    fn diagram(s: &str, n: usize) -> NewtonDiagram {
        build_diagram(&parse_germ(s, n).unwrap()).unwrap()
    }

    #[test]
    fn example_one_all_exceptional() {
        let d = diagram("z1^3+z2^3+z3^2+z1*z2", 3);
        let f = d.facets().find(|f| f.normal == vec![2, 4, 3]).unwrap();
        assert_eq!(classify_face(f, &d).unwrap().exceptional_axes, vec![0]);
        let g = d.facets().find(|f| f.normal == vec![4, 2, 3]).unwrap();
        assert_eq!(classify_face(g, &d).unwrap().exceptional_axes, vec![1]);
        let bc = boundary_case(&d).unwrap();
        assert_eq!(bc.case, Case::AllExceptional);
        assert_eq!(bc.j_segment.unwrap().to_string(), "I_3^2");
        assert!(matches!(
            choose_unexceptional(&d, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn example_two_no_facets() {
        let bc = boundary_case(&diagram("z2^3+z1*z3+z1^2*z3^2", 3)).unwrap();
        assert_eq!(bc.case, Case::NoFacets);
        assert_eq!(bc.j_segment.unwrap().to_string(), "I_2^3");
    }

    #[test]
    fn example_three_choices() {
        let d = diagram("z1^3+z2^3+z1*z3^4+z2*z3^4+z3^20", 3);
        let s1 = d.facets().find(|f| f.normal == vec![2, 2, 1]).unwrap();
        let s2 = d.facets().find(|f| f.normal == vec![16, 16, 1]).unwrap();
        assert!(classify_face(s1, &d).unwrap().unexceptional());
        assert_eq!(classify_face(s2, &d).unwrap().exceptional_axes, vec![2]);
        assert_eq!(boundary_case(&d).unwrap().case, Case::HasUnexceptional);

        let c3 = choose_unexceptional(&d, 2).unwrap();
        assert_eq!(c3.face_id, s1.id);
        match &c3.condition {
            Condition::EdgeNearAxis { w, y, .. } => {
                assert!(w == &ev(&[1, 0, 4]) || w == &ev(&[0, 1, 4]));
                assert!(
                    y == &ev(&[0, 1, 4])
                        || y == &ev(&[0, 3, 0])
                        || y == &ev(&[1, 0, 4])
                        || y == &ev(&[3, 0, 0])
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_choice(&d, &c3));
        let c1 = choose_unexceptional(&d, 0).unwrap();
        assert_eq!(c1.condition, Condition::VertexOnAxis { w: ev(&[3, 0, 0]) });
        assert!(verify_choice(&d, &c1));
    }

    #[test]
    fn morse_choice() {
        let d = diagram("z1^2+z2^2+z3^2", 3);
        for i in 0..3 {
            let c = choose_unexceptional(&d, i).unwrap();
            let mut w = ExpVec::zero(3);
            w.0[i] = 2;
            assert_eq!(c.condition, Condition::VertexOnAxis { w });
        }
    }

    #[test]
    fn plane_curve_segments() {
        let d = diagram("z1*z2+z1^3", 2);
        let s = d.facets().next().unwrap();
        assert_eq!(classify_face(s, &d).unwrap().exceptional_axes, vec![0]);
        let d = diagram("z1^2+z2^3", 2);
        assert!(classify_face(d.facets().next().unwrap(), &d)
            .unwrap()
            .unexceptional());
    }
}
