use super::{check_index, Snapshot};
use crate::decomposition::local_view;
use crate::error::{Error, Result};
use crate::geometry::{sort_lex_tol, Mat3, Plane, Tolerance, Vec3};
use crate::scalar::Real;
use crate::symmetry::GroupKind;

/// The plane every robot agrees on in the landing phase.
pub fn select_plane<T: Real>(local_obs: &[Vec3<T>], tol: &Tolerance<T>) -> Result<Plane<T>> {
    plane_in(&Snapshot::new(local_obs, tol)?)
}

fn plane_in<T: Real>(snap: &Snapshot<'_, T>) -> Result<Plane<T>> {
    if snap.conditions.t3 {
        return Err(Error::AlreadyPlanar);
    }
    if !snap.conditions.t2 {
        return Err(Error::WrongPhase);
    }
    let d = snap.decomposition()?;
    let b = d.group.center;
    match d.group.kind() {
        GroupKind::Cyclic(1) => {
            let star = d.orbits[0].indices[0];
            let view = local_view(snap.points, star, &snap.tol)?;
            Plane::from_points(snap.points[star], snap.points[view.meridian], b)
        }
        _ => {
            let axis = d.group.class.principal.ok_or(Error::Unclassifiable)?;
            Plane::through(axis, b)
        }
    }
}

/// Reserved landing area: a point, or a whole circle in the plane.
#[derive(Debug, Clone, Copy)]
enum Reserved<T> {
    Point(Vec3<T>),
    Circle(Vec3<T>, T),
}

impl<T: Real> Reserved<T> {
    fn dist(&self, f: Vec3<T>) -> T {
        match *self {
            Reserved::Point(p) => p.dist(f),
            Reserved::Circle(c, r) => (c.dist(f) - r).abs(),
        }
    }
}

/// Landing point of robot `me` on `plane`.
pub fn select_destination<T: Real>(
    local_obs: &[Vec3<T>],
    plane: &Plane<T>,
    me: usize,
    tol: &Tolerance<T>,
) -> Result<Vec3<T>> {
    check_index(local_obs, me)?;
    destination_in(&Snapshot::new(local_obs, tol)?, plane, me)
}

/// Third phase: agree on a plane and land on it without collisions.
pub fn land<T: Real>(local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
    check_index(local_obs, me)?;
    land_in(&Snapshot::new(local_obs, tol)?, me)
}

pub(super) fn land_in<T: Real>(snap: &Snapshot<'_, T>, me: usize) -> Result<Vec3<T>> {
    let plane = plane_in(snap)?;
    destination_in(snap, &plane, me)
}

fn destination_in<T: Real>(snap: &Snapshot<'_, T>, plane: &Plane<T>, me: usize) -> Result<Vec3<T>> {
    let d = snap.decomposition()?;
    let pts = snap.points;
    let b = plane.project(d.group.center);
    // feet of mirror pairs agree to rounding; anything closer than this is one point
    let hit = snap.eps * T::lit(10.0);
    let on_plane = |p: Vec3<T>| plane.signed_distance(p).abs() <= snap.eps;
    let kind = d.group.kind();
    let order = T::from_usize(d.group.order()).unwrap();

    let mut reserved: Vec<Reserved<T>> = pts.iter().copied().filter(|p| on_plane(*p)).map(Reserved::Point).collect();
    let mut mine = None;
    for orbit in &d.orbits {
        let members = &orbit.indices;
        if on_plane(pts[members[0]]) {
            if members.contains(&me) {
                mine = Some(pts[me]);
            }
            continue;
        }
        let feet: Vec<Vec3<T>> = members.iter().map(|&j| plane.project(pts[j])).collect();
        let blocked = |f: Vec3<T>| reserved.iter().any(|r| r.dist(f) <= hit);
        let shared = (0..feet.len()).any(|a| (a + 1..feet.len()).any(|c| feet[a].dist(feet[c]) <= hit));
        if !shared && !feet.iter().any(|f| blocked(*f)) {
            for (k, &j) in members.iter().enumerate() {
                if j == me {
                    mine = Some(feet[k]);
                }
            }
            reserved.extend(feet.into_iter().map(Reserved::Point));
            continue;
        }

        // the whole orbit moves onto circles of a common radius around its feet
        let free_radius = |k: usize| {
            let f = feet[k];
            let near = reserved
                .iter()
                .map(|r| r.dist(f))
                .chain(feet.iter().map(|g| g.dist(f)))
                .filter(|&x| x > hit)
                .fold(T::infinity(), T::min);
            if near.is_finite() {
                near
            } else {
                snap.ball.radius
            }
        };
        let r = (0..feet.len()).map(free_radius).fold(T::infinity(), T::min);
        let rho = r / T::lit(4.0);
        let mut added = Vec::with_capacity(feet.len());
        for (k, &j) in members.iter().enumerate() {
            let f = feet[k];
            // "clockwise" for a robot whose -z axis points at the plane
            let up = (pts[j] - f).normalized().expect("robot off the plane");
            if f.dist(b) > hit {
                let q = f + (b - f).normalized().expect("foot off center") * rho;
                let dj = f + Mat3::rotation(up, -T::FRAC_PI_2()) * (q - f);
                if j == me {
                    mine = Some(dj);
                }
                added.push(Reserved::Point(dj));
            } else {
                if j == me {
                    let dir = if kind == GroupKind::Cyclic(1) {
                        let x = Vec3::unit_x().reject(plane.normal());
                        x.normalized().or_else(|| Vec3::unit_y().reject(plane.normal()).normalized())
                    } else {
                        let v = q_vertex(snap, plane, b)?;
                        let angle = T::TAU() / (T::lit(4.0) * order);
                        (Mat3::rotation(up, -angle) * (v - b)).normalized()
                    };
                    mine = Some(b + dir.ok_or(Error::Unclassifiable)? * rho);
                }
                added.push(Reserved::Circle(b, rho));
            }
        }
        reserved.extend(added);
    }
    mine.ok_or(Error::IndexOutOfRange { index: me, len: pts.len() })
}

/// Lexicographically smallest (in the observer's coordinates) vertex of the
/// regular polygon the group inscribes in the great circle on the plane.
fn q_vertex<T: Real>(snap: &Snapshot<'_, T>, plane: &Plane<T>, b: Vec3<T>) -> Result<Vec3<T>> {
    let d = snap.decomposition()?;
    let rb = snap.ball.radius;
    let n = plane.normal();
    let mut verts: Vec<Vec3<T>> = match d.group.kind() {
        GroupKind::Dihedral(_) => {
            let principal = d.group.class.principal.ok_or(Error::Unclassifiable)?;
            d.group
                .class
                .axes
                .iter()
                .filter(|a| a.fold == 2 && a.direction.cross(principal).norm() > snap.tol.angle())
                .flat_map(|a| [b + a.direction * rb, b - a.direction * rb])
                .collect()
        }
        GroupKind::Cyclic(k) => {
            let orbit = d
                .orbits
                .iter()
                .rev()
                .find(|o| o.len() == k as usize)
                .ok_or(Error::Unclassifiable)?;
            orbit
                .indices
                .iter()
                .filter_map(|&j| (snap.points[j] - b).reject(n).normalized())
                .map(|u| b + u * rb)
                .collect()
        }
        _ => return Err(Error::WrongPhase),
    };
    sort_lex_tol(&mut verts, 3, |v, k| v[k], snap.eps);
    verts.first().copied().ok_or(Error::Unclassifiable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::min_pairwise_distance;
    use crate::polyhedra::Generator;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn land_all(p: &[Vec3<f64>]) -> Vec<Vec3<f64>> {
        (0..p.len()).map(|i| land(p, i, &tol()).unwrap()).collect()
    }

    fn assert_planar_distinct(q: &[Vec3<f64>]) {
        let (_, dev) = Plane::best_fit(q).unwrap();
        assert!(dev < 1e-9, "deviation {dev}");
        assert!(min_pairwise_distance(q).unwrap() > 1e-6);
    }

    #[test]
    fn square_pyramid_lands_on_its_base() {
        let p = Generator::Pyramid(4).points(1.0).unwrap();
        let q = land_all(&p);
        assert_planar_distinct(&q);
        for i in 1..5 {
            assert!(q[i].dist(p[i]) < 1e-12, "base robots stay");
        }
    }

    #[test]
    fn sphenoid_lands_as_rectangle() {
        let p = Generator::Sphenoid(1.0, 1.5, 0.7).points(1.0).unwrap();
        let q = land_all(&p);
        assert_planar_distinct(&q);
        let mut d: Vec<f64> = (1..4).map(|i| q[0].dist(q[i])).collect();
        d.sort_by(f64::total_cmp);
        assert!((d[0] * d[0] + d[1] * d[1] - d[2] * d[2]).abs() < 1e-9, "right angle at a corner");
    }

    #[test]
    fn double_pyramid_apexes_split() {
        let mut p = Generator::Prism(4).points(1.0).unwrap();
        p.truncate(4);
        let p: Vec<Vec3<f64>> = p.into_iter().map(|v| Vec3::new(v.x, v.y, 0.1)).collect();
        let mut p = p;
        p.push(Vec3::new(0.0, 0.0, 1.3));
        p.push(Vec3::new(0.0, 0.0, -0.6));
        let q = land_all(&p);
        assert_planar_distinct(&q);
    }

    #[test]
    fn pentagonal_prism_plane_is_normal_to_axis() {
        let p = Generator::Prism(5).points(1.0).unwrap();
        let f = select_plane(&p, &tol()).unwrap();
        assert!(f.normal().cross(Vec3::unit_z()).norm() < 1e-9);
        assert!(f.offset().abs() < 1e-12);
    }

    #[test]
    fn mirror_pair_feet_separate() {
        // D2 pair of points straight above and below the same foot
        let p = [
            Vec3::new(1.0, 0.2, 0.5),
            Vec3::new(1.0, -0.2, -0.5),
            Vec3::new(-1.0, 0.2, -0.5),
            Vec3::new(-1.0, -0.2, 0.5),
            Vec3::new(0.3, 0.0, 0.0),
            Vec3::new(-0.3, 0.0, 0.0),
        ];
        let q = land_all(&p);
        assert_planar_distinct(&q);
    }

    #[test]
    fn generic_points_land_distinct() {
        let p = [
            Vec3::new(0.1, 0.2, 0.3),
            Vec3::new(1.3, -0.2, 0.5),
            Vec3::new(-0.7, 0.9, 0.1),
            Vec3::new(0.4, -1.1, -0.8),
            Vec3::new(-0.2, 0.3, 1.4),
        ];
        let q = land_all(&p);
        assert_planar_distinct(&q);
    }

    #[test]
    fn planar_input_has_no_landing_plane() {
        let p = [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(-1.0, 0.0, 0.0), Vec3::new(0.0, -1.0, 0.0)];
        assert_eq!(select_plane(&p, &tol()), Err(Error::AlreadyPlanar));
    }
}
