//! Newton diagrams Γ₊(f) = conv(supp f + ℝⁿ₊) and their compact faces.
//!
//! Facets of Γ₊ are found exactly: every facet is spanned by `n` affinely independent
//! generators (support points and axis directions), so every candidate normal is the
//! integer cross product of `n - 1` generator differences. All faces are then obtained
//! by intersecting facets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::germ::{ExpVec, PolyGerm};
use crate::lattice::{cross, int_rank, primitive};
use crate::scalar::Rational;

/// A compact face of the Newton diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<ExpVec>,
    /// All support points lying on the face, sorted.
    pub points: Vec<ExpVec>,
    /// Primitive, strictly positive witness normal: `Δ(normal) = self`.
    pub normal: Vec<i64>,
    pub level: i64,
    /// Ids of the facets (of Γ₊, compact or not) containing this face.
    incident: Vec<usize>,
}

impl Face {
    pub fn level_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.level))
    }

    /// Axis intercepts `x_i = l / u_i` of the witness hyperplane.
    pub fn intercepts(&self) -> Vec<Rational> {
        self.normal
            .iter()
            .map(|&ui| Rational::new(BigInt::from(self.level), BigInt::from(ui)))
            .collect()
    }

    /// `m(S)`, the largest intercept.
    pub fn m(&self) -> Rational {
        self.intercepts()
            .into_iter()
            .max()
            .expect("nonempty normal")
    }

    pub fn contains_point(&self, p: &ExpVec) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_vertex(&self, p: &ExpVec) -> bool {
        self.vertices.binary_search(p).is_ok()
    }
}

/// A facet of the unbounded polyhedron Γ₊: normal `u ≥ 0`, tight support points, and the
/// axis directions `e_i` (those with `u_i = 0`) it contains.
#[derive(Clone, Debug)]
struct HalfSpace {
    normal: Vec<i64>,
    tight: BTreeSet<usize>,
    dirs: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct NewtonDiagram {
    arity: usize,
    support: Vec<ExpVec>,
    vertices: Vec<ExpVec>,
    faces: Vec<Face>,
}

impl NewtonDiagram {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn support(&self) -> &[ExpVec] {
        &self.support
    }

    /// Γ⁰(f), sorted.
    pub fn vertices(&self) -> &[ExpVec] {
        &self.vertices
    }

    /// All compact faces, ordered by dimension then vertex list. `faces()[k].id == k`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// Γ^{n-1}(f).
    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.faces_of_dim(self.arity - 1)
    }

    pub fn has_facets(&self) -> bool {
        self.facets().next().is_some()
    }

    /// The compact face whose support points are exactly `points` (any order).
    pub fn find_by_points(&self, points: &[ExpVec]) -> Option<&Face> {
        let mut p = points.to_vec();
        p.sort();
        p.dedup();
        self.faces.iter().find(|f| f.points == p)
    }

    pub fn find_by_vertices(&self, vertices: &[ExpVec]) -> Option<&Face> {
        let mut v = vertices.to_vec();
        v.sort();
        self.faces.iter().find(|f| f.vertices == v)
    }

    /// Faces of `face` (including itself), i.e. compact faces whose point set it contains.
    pub fn subfaces(&self, face: &Face) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|g| g.points.iter().all(|p| face.contains_point(p)))
            .collect()
    }

    /// Edges of a face.
    pub fn edges_of(&self, face: &Face) -> Vec<&Face> {
        self.subfaces(face)
            .into_iter()
            .filter(|g| g.dim == 1)
            .collect()
    }
}

pub fn build_diagram(f: &PolyGerm) -> Result<NewtonDiagram> {
    if f.is_zero() {
        return Err(Error::ZeroGerm);
    }
    build_from_support(&f.support())
}

/// Builds the diagram of `conv(points + ℝⁿ₊)`.
pub fn build_from_support(points: &[ExpVec]) -> Result<NewtonDiagram> {
    let Some(first) = points.first() else {
        return Err(Error::ZeroGerm);
    };
    let n = first.arity();
    if n == 0 {
        return Err(Error::UnsupportedArity(0));
    }
    let mut support = points.to_vec();
    support.sort();
    support.dedup();

    let pareto: Vec<ExpVec> = support
        .iter()
        .filter(|p| !support.iter().any(|q| q != *p && p.dominates(q)))
        .cloned()
        .collect();
    let pts: Vec<Vec<i128>> = pareto
        .iter()
        .map(|p| p.0.iter().map(|&x| x as i128).collect())
        .collect();

    let halfspaces = facets_of_polyhedron(&pts, n);

    // Close under intersection; each face is keyed by (tight points, directions).
    let mut keys: BTreeMap<(BTreeSet<usize>, BTreeSet<usize>), ()> = BTreeMap::new();
    let mut frontier: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = halfspaces
        .iter()
        .map(|h| (h.tight.clone(), h.dirs.clone()))
        .collect();
    for k in &frontier {
        keys.insert(k.clone(), ());
    }
    while let Some((t, d)) = frontier.pop() {
        for h in &halfspaces {
            let t2: BTreeSet<usize> = t.intersection(&h.tight).copied().collect();
            if t2.is_empty() {
                continue;
            }
            let d2: BTreeSet<usize> = d.intersection(&h.dirs).copied().collect();
            let key = (t2, d2);
            if !keys.contains_key(&key) {
                keys.insert(key.clone(), ());
                frontier.push(key);
            }
        }
    }

    // Γ⁰: compact faces with a single tight point. A face with one tight point and no
    // directions is a vertex; otherwise Γ₊ is a single orthant and its apex is the vertex.
    let compact: Vec<BTreeSet<usize>> = keys
        .keys()
        .filter(|(_, d)| d.is_empty())
        .map(|(t, _)| t.clone())
        .collect();
    let mut vertex_idx: BTreeSet<usize> = compact
        .iter()
        .filter(|t| t.len() == 1)
        .flat_map(|t| t.iter().copied())
        .collect();
    if halfspaces.is_empty() || compact.is_empty() {
        // n = 1 or a lone point: the unique minimal point is the only vertex.
        vertex_idx = (0..pareto.len()).collect();
    }
    let vertices: Vec<ExpVec> = vertex_idx.iter().map(|&i| pareto[i].clone()).collect();

    let mut faces: Vec<Face> = Vec::new();
    let mut compact_sets: BTreeSet<BTreeSet<usize>> = compact.into_iter().collect();
    if compact_sets.is_empty() {
        compact_sets = vertex_idx.iter().map(|&i| BTreeSet::from([i])).collect();
    }
    for t in compact_sets {
        let tp: Vec<Vec<i128>> = t.iter().map(|&i| pts[i].clone()).collect();
        let dim = affine_dim(&tp);
        let incident: Vec<usize> = halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| t.is_subset(&h.tight))
            .map(|(k, _)| k)
            .collect();
        let normal = if incident.is_empty() {
            vec![1i64; n]
        } else {
            let mut sum = vec![0i128; n];
            for &k in &incident {
                for (s, &u) in sum.iter_mut().zip(&halfspaces[k].normal) {
                    *s += u as i128;
                }
            }
            primitive(&sum).into_iter().map(|x| x as i64).collect()
        };
        let level = tp[0].iter().zip(&normal).map(|(&a, &b)| a as i64 * b).sum();
        let mut fverts: Vec<ExpVec> = t
            .iter()
            .filter(|i| vertex_idx.contains(i))
            .map(|&i| pareto[i].clone())
            .collect();
        fverts.sort();
        let fpoints: Vec<ExpVec> = support
            .iter()
            .filter(|p| p.dot(&normal) == level)
            .cloned()
            .collect();
        faces.push(Face {
            id: 0,
            dim,
            vertices: fverts,
            points: fpoints,
            normal,
            level,
            incident,
        });
    }
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    for (k, face) in faces.iter_mut().enumerate() {
        face.id = k;
        debug_assert!(
            face.normal.iter().all(|&u| u > 0),
            "compact face with non-positive witness normal"
        );
    }
    Ok(NewtonDiagram {
        arity: n,
        support,
        vertices,
        faces,
    })
}

fn affine_dim(points: &[Vec<i128>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    int_rank(&rows)
}

/// All facets of conv(pts) + ℝⁿ₊.
fn facets_of_polyhedron(pts: &[Vec<i128>], n: usize) -> Vec<HalfSpace> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    let units: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut consider = |u: Vec<i128>, out: &mut Vec<HalfSpace>| {
        if u.iter().all(|&x| x == 0) {
            return;
        }
        let u = if u.iter().any(|&x| x < 0) {
            if u.iter().any(|&x| x > 0) {
                return;
            }
            u.iter().map(|x| -x).collect()
        } else {
            u
        };
        let u: Vec<i64> = primitive(&u).into_iter().map(|x| x as i64).collect();
        if !seen.insert(u.clone()) {
            return;
        }
        let vals: Vec<i128> = pts
            .iter()
            .map(|p| p.iter().zip(&u).map(|(a, &b)| a * b as i128).sum())
            .collect();
        let level = *vals.iter().min().unwrap();
        let tight: BTreeSet<usize> = (0..pts.len()).filter(|&k| vals[k] == level).collect();
        let dirs: BTreeSet<usize> = (0..n).filter(|&i| u[i] == 0).collect();
        let t0 = &pts[*tight.iter().next().unwrap()];
        let mut rows: Vec<Vec<i128>> = tight
            .iter()
            .skip(1)
            .map(|&k| pts[k].iter().zip(t0).map(|(a, b)| a - b).collect())
            .collect();
        rows.extend(dirs.iter().map(|&i| units[i].clone()));
        if int_rank(&rows) == n - 1 {
            out.push(HalfSpace {
                normal: u,
                tight,
                dirs,
            });
        }
    };
    if n == 1 {
        consider(vec![1], &mut out);
        return out;
    }
    for (b, base) in pts.iter().enumerate() {
        let mut gens: Vec<Vec<i128>> = pts[b + 1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, c)| a - c).collect())
            .collect();
        gens.extend(units.iter().cloned());
        for combo in combinations(gens.len(), n - 1) {
            let vs: Vec<Vec<i128>> = combo.iter().map(|&k| gens[k].clone()).collect();
            consider(cross(&vs, n), &mut out);
        }
    }
    out
}

/// All k-subsets of 0..m in lexicographic order.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// `l(u, Γ₊(f))`: the minimum of `⟨u, ν⟩` over the support.
pub fn support_value(u: &[i64], d: &NewtonDiagram) -> Rational {
    let v = d
        .support
        .iter()
        .map(|p| p.dot(u))
        .min()
        .expect("nonempty support");
    Rational::from_integer(BigInt::from(v))
}

/// `Δ(u, Γ₊(f))` for a strictly positive `u`.
pub fn face_of_normal<'a>(u: &[i64], d: &'a NewtonDiagram) -> Result<&'a Face> {
    if u.len() != d.arity || u.iter().any(|&x| x <= 0) {
        return Err(Error::Precondition(
            "face_of_normal needs a strictly positive normal of matching arity".into(),
        ));
    }
    let l = d
        .support
        .iter()
        .map(|p| p.dot(u))
        .min()
        .expect("nonempty support");
    let pts: Vec<ExpVec> = d
        .support
        .iter()
        .filter(|p| p.dot(u) == l)
        .cloned()
        .collect();
    d.find_by_points(&pts).ok_or_else(|| {
        Error::Consistency(format!("Δ(u) for u = {u:?} is missing from the face list"))
    })
}

/// Intercepts and `m(S)` of a face.
pub fn face_metrics(s: &Face) -> (Vec<Rational>, Rational) {
    (s.intercepts(), s.m())
}

/// `m₀(f)`: the largest `m(S)` over Γ^{n-1}(f).
pub fn m0(d: &NewtonDiagram) -> Result<Rational> {
    d.facets().map(Face::m).max().ok_or(Error::NoFacets)
}

/// `f_S`: the terms of `f` with exponents on `S`.
pub fn face_part(f: &PolyGerm, s: &Face) -> Result<PolyGerm> {
    if s.normal.len() != f.arity() {
        return Err(Error::FaceNotOfThisGerm);
    }
    let l = f.terms().keys().map(|p| p.dot(&s.normal)).min();
    if l != Some(s.level) {
        return Err(Error::FaceNotOfThisGerm);
    }
    let on: Vec<ExpVec> = f
        .terms()
        .keys()
        .filter(|p| p.dot(&s.normal) == s.level)
        .cloned()
        .collect();
    if on != s.points {
        return Err(Error::FaceNotOfThisGerm);
    }
    Ok(f.filter_terms(&on))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramPredicates {
    pub convenient: bool,
    pub nearly_convenient: bool,
    pub hyperplane_contact: Vec<bool>,
}

impl DiagramPredicates {
    /// The necessary conditions for an isolated singularity that the diagram can show:
    /// nearly convenient, and for three or more variables, contact with every coordinate
    /// hyperplane (a plane curve such as `z1 z2` is isolated without it).
    pub fn isolated_shape(&self) -> bool {
        self.nearly_convenient
            && (self.hyperplane_contact.len() < 3 || self.hyperplane_contact.iter().all(|&b| b))
    }
}

pub fn diagram_predicates(d: &NewtonDiagram) -> DiagramPredicates {
    let n = d.arity;
    let convenient = (0..n).all(|i| d.support.iter().any(|p| p.is_on_axis(i)));
    let nearly_convenient = (0..n).all(|i| d.vertices.iter().any(|v| v.off_axis_sum(i) <= 1));
    let hyperplane_contact = (0..n)
        .map(|i| d.vertices.iter().any(|v| v.0[i] == 0))
        .collect();
    DiagramPredicates {
        convenient,
        nearly_convenient,
        hyperplane_contact,
    }
}

/// An edge `I_jᵏ` of the family 𝒥 (axis `j` is 0-based here).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JSegment {
    pub axis: usize,
    pub k: u32,
    pub face_id: usize,
}

impl JSegment {
    pub fn m(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.k))
    }

    /// The two endpoints: the point at distance 1 from axis `j`'s complement, and `k·e_j`.
    pub fn endpoints(&self) -> (ExpVec, ExpVec) {
        let mut w = ExpVec(vec![1; 3]);
        w.0[self.axis] = 0;
        let mut a = ExpVec::zero(3);
        a.0[self.axis] = self.k;
        (w, a)
    }
}

impl std::fmt::Display for JSegment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "I_{}^{}", self.axis + 1, self.k)
    }
}

/// Γ¹(f) ∩ 𝒥. At most one element for any germ; more is reported as an inconsistency.
pub fn find_j_segments(d: &NewtonDiagram) -> Result<Vec<JSegment>> {
    if d.arity != 3 {
        return Err(Error::UnsupportedArity(d.arity));
    }
    let mut out = Vec::new();
    for e in d.faces_of_dim(1) {
        if e.vertices.len() != 2 {
            continue;
        }
        for j in 0..3 {
            let mut w = ExpVec(vec![1; 3]);
            w.0[j] = 0;
            if !e.is_vertex(&w) {
                continue;
            }
            let other = e.vertices.iter().find(|v| **v != w).unwrap();
            let k = other.0[j];
            if k >= 2 && other.is_on_axis(j) {
                out.push(JSegment {
                    axis: j,
                    k,
                    face_id: e.id,
                });
            }
        }
    }
    if out.len() > 1 {
        return Err(Error::Consistency(format!(
            "more than one edge of the family 𝒥: {}",
            out.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(out)
}
