use super::{check_index, Snapshot};
use crate::error::{Error, Result};
use crate::geometry::{cmp_total, min_pairwise_distance, smallest_enclosing_ball, sort_lex_tol, Tolerance, Vec3};
use crate::scalar::Real;

/// Index into the faces incident to a robot, ordered lexicographically by
/// face center in the robot's own coordinates. `FaceChoice(0)` is the rule
/// the algorithm uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FaceChoice(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct Face<T> {
    /// Indices of the face's vertices in the polyhedron.
    pub vertices: Vec<usize>,
    pub center: Vec3<T>,
}

/// Fraction of the edge length kept between a destination and its target.
const STOP_SHORT: f64 = 0.01;

struct Polyhedron<T> {
    center: Vec3<T>,
    edge: T,
    eps: T,
}

impl<T: Real> Polyhedron<T> {
    /// Checks that `verts` lie on a sphere and every vertex has the same
    /// number (at least three) of nearest neighbours.
    fn new(verts: &[Vec3<T>], tol: &Tolerance<T>) -> Result<Self> {
        if verts.len() < 4 {
            return Err(Error::NotPolyhedral);
        }
        let ball = smallest_enclosing_ball(verts)?;
        // coordinates carry a few ulps of frame noise; stay well above that
        let eps = tol.len(ball.radius) * T::lit(100.0);
        if verts.iter().any(|v| !ball.on_sphere(*v, eps)) {
            return Err(Error::NotPolyhedral);
        }
        let edge = min_pairwise_distance(verts).ok_or(Error::NotPolyhedral)?;
        let poly = Self { center: ball.center, edge, eps };
        let degree = poly.neighbours(verts, 0).len();
        if degree < 3 || (1..verts.len()).any(|i| poly.neighbours(verts, i).len() != degree) {
            return Err(Error::NotPolyhedral);
        }
        Ok(poly)
    }

    fn neighbours(&self, verts: &[Vec3<T>], i: usize) -> Vec<usize> {
        (0..verts.len()).filter(|&j| j != i && (verts[i].dist(verts[j]) - self.edge).abs() <= self.eps).collect()
    }

    /// Faces around vertex `i`, in angular order about its radius.
    fn faces_at(&self, verts: &[Vec3<T>], i: usize) -> Vec<Face<T>> {
        let p = verts[i];
        let u = (p - self.center).normalized().expect("vertex off center");
        let e1 = u.any_orthogonal();
        let e2 = u.cross(e1);
        let mut nb = self.neighbours(verts, i);
        let angle = |j: usize| {
            let w = verts[j] - p;
            w.dot(e2).atan2(w.dot(e1))
        };
        nb.sort_by(|&a, &b| cmp_total(angle(a), angle(b)));
        let mut faces = Vec::with_capacity(nb.len());
        for k in 0..nb.len() {
            let (a, b) = (verts[nb[k]], verts[nb[(k + 1) % nb.len()]]);
            let Some(normal) = (a - p).cross(b - p).normalized() else { continue };
            let mut vertices: Vec<usize> =
                (0..verts.len()).filter(|&j| (verts[j] - p).dot(normal).abs() <= self.eps).collect();
            vertices.sort_unstable();
            let center = crate::geometry::centroid(&vertices.iter().map(|&j| verts[j]).collect::<Vec<_>>());
            faces.push(Face { vertices, center });
        }
        faces
    }
}

/// Faces incident to vertex `i` of the polyhedron `verts`, ordered
/// lexicographically by center in the coordinates of `verts`.
pub fn incident_faces<T: Real>(verts: &[Vec3<T>], i: usize, tol: &Tolerance<T>) -> Result<Vec<Face<T>>> {
    check_index(verts, i)?;
    let poly = Polyhedron::new(verts, tol)?;
    let mut faces = poly.faces_at(verts, i);
    if verts.len() == 30 {
        // icosidodecahedron: only the pentagons are used
        faces.retain(|f| f.vertices.len() == 5);
    }
    sort_lex_tol(&mut faces, 3, |f, d| f.center[d], poly.eps);
    Ok(faces)
}

/// Candidate destinations of vertex `i` when breaking the polyhedron
/// `verts`, one per incident face in [`incident_faces`] order: the point
/// `edge / 100` short of the face center on the way from the vertex.
pub fn break_candidates<T: Real>(verts: &[Vec3<T>], i: usize, tol: &Tolerance<T>) -> Result<Vec<Vec3<T>>> {
    let faces = incident_faces(verts, i, tol)?;
    let edge = min_pairwise_distance(verts).ok_or(Error::NotPolyhedral)?;
    let step = edge * T::lit(STOP_SHORT);
    Ok(faces
        .iter()
        .map(|f| f.center + (verts[i] - f.center).normalized().expect("vertex off face center") * step)
        .collect())
}

/// Second phase: robots of the first orbit step toward the center of one
/// incident face, stopping `edge / 100` short of it.
pub fn break_symmetry<T: Real>(
    local_obs: &[Vec3<T>],
    me: usize,
    choice: FaceChoice,
    tol: &Tolerance<T>,
) -> Result<Vec3<T>> {
    check_index(local_obs, me)?;
    break_in(&Snapshot::new(local_obs, tol)?, me, choice)
}

pub(super) fn break_in<T: Real>(snap: &Snapshot<'_, T>, me: usize, choice: FaceChoice) -> Result<Vec3<T>> {
    let c = snap.conditions;
    if !c.t1 || c.t2 {
        return Err(Error::WrongPhase);
    }
    let d = snap.decomposition()?;
    let first = &d.orbits[0];
    let Ok(pos) = first.indices.binary_search(&me) else {
        return Ok(snap.points[me]);
    };
    if ![4, 6, 8, 20, 30].contains(&first.len()) {
        return Err(Error::UnbreakableOrbit);
    }
    let verts: Vec<Vec3<T>> = first.indices.iter().map(|&j| snap.points[j]).collect();
    let options = break_candidates(&verts, pos, &snap.tol).map_err(|_| Error::UnbreakableOrbit)?;
    options
        .get(choice.0)
        .copied()
        .ok_or(Error::IndexOutOfRange { index: choice.0, len: options.len() })
}

/// Neighbours of vertex `i` of the regular polyhedron `verts`, ordered
/// lexicographically by position.
pub fn incident_edges<T: Real>(verts: &[Vec3<T>], i: usize, tol: &Tolerance<T>) -> Result<Vec<usize>> {
    check_index(verts, i)?;
    let poly = Polyhedron::new(verts, tol)?;
    let mut nb = poly.neighbours(verts, i);
    sort_lex_tol(&mut nb, 3, |&j, d| verts[j][d], poly.eps);
    Ok(nb)
}

/// Walk along the chosen incident edge and stop `edge / 100` before its
/// midpoint.
pub fn go_to_midpoint<T: Real>(local_obs: &[Vec3<T>], me: usize, edge_choice: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
    let nb = incident_edges(local_obs, me, tol)?;
    let &j = nb.get(edge_choice).ok_or(Error::IndexOutOfRange { index: edge_choice, len: nb.len() })?;
    let (p, q) = (local_obs[me], local_obs[j]);
    let mid = p.lerp(q, T::lit(0.5));
    let step = p.dist(q) * T::lit(STOP_SHORT);
    Ok(mid + (p - mid).normalized().expect("distinct vertices") * step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Generator;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn face_counts_per_vertex() {
        for (g, k, size) in [
            (Generator::Tetrahedron, 3, 3),
            (Generator::Octahedron, 4, 3),
            (Generator::Cube, 3, 4),
            (Generator::Dodecahedron, 3, 5),
            (Generator::Icosidodecahedron, 2, 5),
        ] {
            let p = g.points(1.0).unwrap();
            for i in 0..p.len() {
                let f = incident_faces(&p, i, &tol()).unwrap();
                assert_eq!(f.len(), k, "{g}");
                assert!(f.iter().all(|f| f.vertices.len() == size && f.vertices.contains(&i)));
            }
        }
    }

    #[test]
    fn break_target_is_one_percent_short() {
        let p = Generator::Cube.points(3f64.sqrt()).unwrap();
        let c = break_candidates(&p, 0, &tol()).unwrap();
        let faces = incident_faces(&p, 0, &tol()).unwrap();
        for (d, f) in c.iter().zip(&faces) {
            assert!((d.dist(f.center) - 0.02).abs() < 1e-12);
        }
    }

    #[test]
    fn midpoint_walk_stops_short() {
        let p = Generator::Tetrahedron.points(3f64.sqrt()).unwrap();
        let d = go_to_midpoint(&p, 0, 0, &tol()).unwrap();
        let j = incident_edges(&p, 0, &tol()).unwrap()[0];
        let mid = p[0].lerp(p[j], 0.5);
        let edge = p[0].dist(p[j]);
        assert!((d.dist(mid) - edge / 100.0).abs() < 1e-12);
        assert!(d.dist(p[0]) < mid.dist(p[0]));
    }

    #[test]
    fn irregular_input_is_not_polyhedral() {
        let p = Generator::Pyramid(4).points(1.0).unwrap();
        assert_eq!(go_to_midpoint(&p, 0, 0, &tol()), Err(Error::NotPolyhedral));
    }
}
