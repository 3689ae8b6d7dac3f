//! Rotation groups of finite point sets: enumeration, classification into
//! C_k / D_l / T / O / I, principal axes and subgroup search.

mod classify;
mod enumerate;
mod matcher;

pub use crate::geometry::RotationOp;
pub use classify::{classify_rotation_group, principal_axis_d2, verify_closed, Axis, GroupClass, GroupKind};
pub use enumerate::{enumerate_rotations, enumerate_rotations_about};
pub use matcher::PointMatcher;

pub(crate) use classify::classify_closed;
pub(crate) use enumerate::sort_rotations;

use crate::error::{Error, Result};
use crate::geometry::{smallest_enclosing_ball, Tolerance, Vec3};
use crate::scalar::Real;

/// The rotation group of a point set together with the data it was
/// computed against.
#[derive(Debug, Clone)]
pub struct RotationGroup<T> {
    /// Center of the smallest enclosing ball.
    pub center: Vec3<T>,
    /// Radius of the smallest enclosing ball.
    pub radius: T,
    /// Group elements, identity first. Only the identity for collinear sets.
    pub rotations: Vec<RotationOp<T>>,
    pub class: GroupClass<T>,
}

impl<T: Real> RotationGroup<T> {
    /// Enumerate and classify the rotation group of `points`. For `D2` the
    /// principal axis is resolved against the points.
    pub fn of_points(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<Self> {
        let ball = smallest_enclosing_ball(points)?;
        let (center, radius) = (ball.center, ball.radius);
        let rotations = match enumerate_rotations_about(points, center, radius, tol) {
            Ok(r) => r,
            Err(Error::InfiniteRotationGroup) => {
                let far = points
                    .iter()
                    .copied()
                    .max_by(|p, q| crate::geometry::cmp_total(p.dist(center), q.dist(center)))
                    .expect("nonempty");
                let dir = (far - center).normalized().unwrap_or(Vec3::unit_z());
                return Ok(Self {
                    center,
                    radius,
                    rotations: vec![RotationOp::identity()],
                    class: GroupClass::collinear(dir),
                });
            }
            Err(e) => return Err(e),
        };
        let mut class = classify_closed(&rotations, tol)?;
        if class.kind == GroupKind::Dihedral(2) {
            let axes = [class.axes[0].direction, class.axes[1].direction, class.axes[2].direction];
            class.principal = Some(principal_axis_d2(points, center, axes, tol)?);
        }
        Ok(Self { center, radius, rotations, class })
    }

    pub fn kind(&self) -> GroupKind {
        self.class.kind
    }

    pub fn order(&self) -> usize {
        self.rotations.len()
    }
}

/// Number of elements of each order `1..=5` in a polyhedral group.
fn order_profile(kind: GroupKind) -> Option<[usize; 6]> {
    match kind {
        GroupKind::Tetrahedral => Some([0, 1, 3, 8, 0, 0]),
        GroupKind::Octahedral => Some([0, 1, 9, 8, 6, 0]),
        GroupKind::Icosahedral => Some([0, 1, 15, 20, 0, 24]),
        _ => None,
    }
}

fn profile_of<T: Real>(rotations: &[RotationOp<T>]) -> Option<[usize; 6]> {
    let mut p = [0usize; 6];
    for r in rotations {
        *p.get_mut(r.order() as usize)? += 1;
    }
    Some(p)
}

/// A subgroup of `rotations` isomorphic to `target` (T, O or I).
///
/// Returns the whole group when it already matches; otherwise the first
/// match among the groups generated by pairs of elements, in the order the
/// rotations are given. `None` when no embedding exists.
pub fn find_subgroup<T: Real>(
    rotations: &[RotationOp<T>],
    target: GroupKind,
    tol: &Tolerance<T>,
) -> Option<Vec<RotationOp<T>>> {
    let want = order_profile(target)?;
    let size: usize = want.iter().sum();
    if rotations.len() == size && profile_of(rotations) == Some(want) {
        return Some(rotations.to_vec());
    }
    if rotations.len() < size || rotations.len() % size != 0 {
        return None;
    }
    let gens: Vec<&RotationOp<T>> = rotations.iter().filter(|r| !r.is_identity()).collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if let Some(mut sub) = generated(&[**a, **b], size, tol) {
                if sub.len() == size && profile_of(&sub) == Some(want) {
                    sort_rotations(&mut sub);
                    return Some(sub);
                }
            }
        }
    }
    None
}

/// Group generated by `gens`, or `None` once it exceeds `limit` elements.
fn generated<T: Real>(gens: &[RotationOp<T>], limit: usize, tol: &Tolerance<T>) -> Option<Vec<RotationOp<T>>> {
    let mut elems = vec![RotationOp::identity()];
    let mut frontier = 0;
    while frontier < elems.len() {
        let x = elems[frontier];
        frontier += 1;
        for g in gens {
            let y = g.compose(&x, tol)?;
            if !elems.iter().any(|e| e.approx_eq(&y, tol)) {
                elems.push(y);
                if elems.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(elems)
}

/// Whether `rot` about `center` maps `points` onto itself within `eps`.
pub fn preserves<T: Real>(points: &[Vec3<T>], rot: &RotationOp<T>, center: Vec3<T>, eps: T) -> bool {
    PointMatcher::new(points, eps).permutation(|p| rot.apply(p, center)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn cube() -> Vec<Vec3<f64>> {
        let mut v = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        v
    }

    fn tetrahedron() -> Vec<Vec3<f64>> {
        vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ]
    }

    fn prism(k: usize, h: f64) -> Vec<Vec3<f64>> {
        let mut v = Vec::new();
        for i in 0..k {
            let a = std::f64::consts::TAU * i as f64 / k as f64;
            v.push(Vec3::new(a.cos(), a.sin(), h));
            v.push(Vec3::new(a.cos(), a.sin(), -h));
        }
        v
    }

    #[test]
    fn tetrahedron_has_twelve_rotations() {
        let g = RotationGroup::of_points(&tetrahedron(), &tol()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.kind(), GroupKind::Tetrahedral);
        assert_eq!(g.class.axis_signature(), vec![(2, 3), (3, 4)]);
    }

    #[test]
    fn cube_is_octahedral() {
        let g = RotationGroup::of_points(&cube(), &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Octahedral);
        assert_eq!(g.class.axis_signature(), vec![(2, 6), (3, 4), (4, 3)]);
        verify_closed(&g.rotations, &tol()).unwrap();
    }

    #[test]
    fn pentagonal_prism_is_d5_about_z() {
        let g = RotationGroup::of_points(&prism(5, 0.7), &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Dihedral(5));
        let p = g.class.principal.unwrap();
        assert!(p.cross(Vec3::unit_z()).norm() < 1e-9);
    }

    #[test]
    fn generic_points_have_trivial_group() {
        let pts = [
            Vec3::new(0.1, 0.2, 0.3),
            Vec3::new(1.3, -0.2, 0.5),
            Vec3::new(-0.7, 0.9, 0.1),
            Vec3::new(0.4, -1.1, -0.8),
            Vec3::new(-0.2, 0.3, 1.4),
        ];
        let g = RotationGroup::of_points(&pts, &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Cyclic(1));
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn collinear_points_are_flagged() {
        let pts = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 1.0, 0.0), Vec3::new(3.0, 3.0, 0.0)];
        let g = RotationGroup::of_points(&pts, &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Collinear);
        assert_eq!(g.class.order(), None);
    }

    #[test]
    fn identity_alone_is_c1() {
        let c = classify_rotation_group(&[RotationOp::<f64>::identity()], &tol()).unwrap();
        assert_eq!(c.kind, GroupKind::Cyclic(1));
    }

    #[test]
    fn missing_inverse_is_not_closed() {
        let r = RotationOp::<f64>::about_axis(Vec3::unit_z(), 3, 1).unwrap();
        let res = classify_rotation_group(&[RotationOp::identity(), r], &tol());
        assert_eq!(res, Err(Error::NotClosed));
    }

    #[test]
    fn sphenoid_principal_axis() {
        // two opposite edges of length 2a along x and y at heights +-c
        let (a, b, c) = (1.0, 1.0, 0.6);
        let pts = [Vec3::new(a, 0.0, c), Vec3::new(-a, 0.0, c), Vec3::new(0.0, b, -c), Vec3::new(0.0, -b, -c)];
        let g = RotationGroup::of_points(&pts, &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Dihedral(2));
        // the two equal edges are joined by the z axis, which is the odd one out
        let p = g.class.principal.unwrap();
        assert!(p.cross(Vec3::unit_z()).norm() < 1e-9);
    }

    #[test]
    fn rectangle_principal_is_its_normal() {
        let pts = [
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(-2.0, 1.0, 0.0),
            Vec3::new(-2.0, -1.0, 0.0),
            Vec3::new(2.0, -1.0, 0.0),
        ];
        let g = RotationGroup::of_points(&pts, &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Dihedral(2));
        assert!(g.class.principal.unwrap().cross(Vec3::unit_z()).norm() < 1e-9);
    }

    #[test]
    fn d2_with_equal_coarse_signatures_still_resolves() {
        let d2 = |p: Vec3<f64>| {
            [p, Vec3::new(p.x, -p.y, -p.z), Vec3::new(-p.x, p.y, -p.z), Vec3::new(-p.x, -p.y, p.z)]
        };
        let (a, b, c) = (0.3, 0.7, 1.1);
        let pts: Vec<Vec3<f64>> = [Vec3::new(a, b, c), Vec3::new(-b, c, a), Vec3::new(c, a, b)]
            .into_iter()
            .flat_map(d2)
            .collect();
        let g = RotationGroup::of_points(&pts, &tol()).unwrap();
        assert_eq!(g.kind(), GroupKind::Dihedral(2));
        assert!(g.class.principal.is_some());
    }

    #[test]
    fn tetrahedron_d2_axes_are_indistinguishable() {
        let axes = [Vec3::unit_x(), Vec3::unit_y(), Vec3::unit_z()];
        let res = principal_axis_d2(&tetrahedron(), Vec3::zero(), axes, &tol());
        assert_eq!(res, Err(Error::SupergroupOfD2));
    }

    #[test]
    fn t_inside_o_uses_four_fold_axes() {
        let g = RotationGroup::of_points(&cube(), &tol()).unwrap();
        let t = find_subgroup(&g.rotations, GroupKind::Tetrahedral, &tol()).unwrap();
        assert_eq!(t.len(), 12);
        let c = classify_rotation_group(&t, &tol()).unwrap();
        assert_eq!(c.kind, GroupKind::Tetrahedral);
        let four_fold: Vec<Vec3<f64>> =
            g.class.axes.iter().filter(|a| a.fold == 4).map(|a| a.direction).collect();
        for a in c.axes.iter().filter(|a| a.fold == 2) {
            assert!(four_fold.iter().any(|f| f.cross(a.direction).norm() < 1e-9));
        }
    }

    #[test]
    fn whole_group_is_returned_when_it_matches() {
        let g = RotationGroup::of_points(&tetrahedron(), &tol()).unwrap();
        let t = find_subgroup(&g.rotations, GroupKind::Tetrahedral, &tol()).unwrap();
        assert_eq!(t, g.rotations);
        assert!(find_subgroup(&g.rotations, GroupKind::Octahedral, &tol()).is_none());
    }

    #[test]
    fn groups_parse_from_symbols() {
        for k in [GroupKind::Cyclic(3), GroupKind::Dihedral(2), GroupKind::Octahedral, GroupKind::Collinear] {
            assert_eq!(GroupKind::parse(&k.symbol()), Some(k));
        }
        assert_eq!(GroupKind::parse("D1"), None);
    }
}
