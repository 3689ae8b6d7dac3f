//! Orbit decomposition of a point set under its rotation group, with the
//! frame-independent total order on orbits given by local views.

mod view;

pub use view::{LocalView, ViewEps};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{cmp_tol, min_pairwise_distance, smallest_enclosing_ball, RotationOp, Tolerance, Vec3};
use crate::scalar::Real;
use crate::symmetry::{GroupKind, PointMatcher, RotationGroup};
use view::ViewContext;

/// One orbit of the group action.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<T> {
    /// Indices into the point set, ascending.
    pub indices: Vec<usize>,
    /// Number of group elements fixing a member.
    pub folding: usize,
    /// Common distance of the members to the center.
    pub radius: T,
}

impl<T> Orbit<T> {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct OrbitDecomposition<T> {
    pub group: RotationGroup<T>,
    /// `P_1, ..., P_m`.
    pub orbits: Vec<Orbit<T>>,
    /// False when the point set is coplanar or the center is occupied; the
    /// orbits are then only sorted by radius.
    pub ordered: bool,
}

impl<T: Real> OrbitDecomposition<T> {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// Position in `orbits` of the orbit containing point `i`.
    pub fn orbit_index(&self, i: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.indices.binary_search(&i).is_ok())
    }
}

/// Reject point sets with two points closer than the length tolerance.
pub fn check_distinct<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let ball = smallest_enclosing_ball(points)?;
    match min_pairwise_distance(points) {
        Some(d) if d <= tol.len(ball.radius) => Err(Error::Multiplicity),
        _ => Ok(()),
    }
}

/// Decompose `points` into orbits of its rotation group, ordered by the
/// local views of their members.
pub fn gamma_decomposition<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<OrbitDecomposition<T>> {
    check_distinct(points, tol)?;
    let group = RotationGroup::of_points(points, tol)?;
    decompose_with(points, group, tol)
}

/// Like [`gamma_decomposition`] for an already computed group.
pub fn decompose_with<T: Real>(
    points: &[Vec3<T>],
    group: RotationGroup<T>,
    tol: &Tolerance<T>,
) -> Result<OrbitDecomposition<T>> {
    let eps = tol.len(group.radius);
    let center = group.center;
    let mut orbits = if group.kind() == GroupKind::Collinear {
        (0..points.len())
            .map(|i| Orbit { indices: vec![i], folding: 1, radius: points[i].dist(center) })
            .collect()
    } else {
        orbits_under(points, &group.rotations, center, eps)?
    };

    let ctx = match ViewContext::new(points, center, group.radius, tol) {
        Ok(ctx) => Some(ctx),
        Err(Error::LocalViewOnPlane | Error::CenterOccupied) => None,
        Err(e) => return Err(e),
    };
    let ordered = ctx.is_some() && group.kind() != GroupKind::Collinear;
    match ctx.filter(|_| ordered) {
        Some(ctx) => sort_by_views(&mut orbits, &ctx),
        // radius ties keep index order; no frame-independent order exists here
        None => crate::geometry::sort_lex_tol(&mut orbits, 1, |o, _| o.radius, eps),
    }
    Ok(OrbitDecomposition { group, orbits, ordered })
}

fn orbits_under<T: Real>(
    points: &[Vec3<T>],
    rotations: &[RotationOp<T>],
    center: Vec3<T>,
    eps: T,
) -> Result<Vec<Orbit<T>>> {
    let matcher = PointMatcher::new(points, eps);
    let mut assigned = vec![false; points.len()];
    let mut orbits = Vec::new();
    for s in 0..points.len() {
        if assigned[s] {
            continue;
        }
        let mut members = Vec::new();
        for g in rotations {
            let j = matcher.find(g.apply(points[s], center)).ok_or(Error::NotClosed)?;
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        let folding = rotations.len() / members.len();
        orbits.push(Orbit { radius: points[s].dist(center), indices: members, folding });
    }
    Ok(orbits)
}

/// Sort orbits by the local views of representatives. Altitude and the
/// meridian key settle almost every comparison; full views are built only
/// for the remaining ties.
fn sort_by_views<T: Real>(orbits: &mut [Orbit<T>], ctx: &ViewContext<'_, T>) {
    let eps = ctx.eps;
    let lats: Vec<Vec<(T, Vec3<T>)>> = orbits.iter().map(|o| ctx.latitudes(o.indices[0])).collect();
    let keys: Vec<[T; 3]> = orbits
        .iter()
        .zip(&lats)
        .map(|(o, lat)| {
            let r = o.indices[0];
            let [h, phi] = ctx.key_from(r, lat);
            [ctx.altitude(r), h, phi]
        })
        .collect();
    let mut idx: Vec<usize> = (0..orbits.len()).collect();
    let mut views: Vec<Option<LocalView<T>>> = vec![None; orbits.len()];
    let thr = eps.altitude.max(eps.angle);
    crate::geometry::sort_lex_tol(&mut idx, 3, |&k, d| keys[k][d], thr);
    // runs with equal keys are refined by full views
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && key_eq(&keys[idx[start]], &keys[idx[end]], &eps) {
            end += 1;
        }
        if end - start > 1 {
            for &k in &idx[start..end] {
                views[k] = Some(ctx.view_from(orbits[k].indices[0], &lats[k], [keys[k][1], keys[k][2]]));
            }
            let run = &mut idx[start..end];
            let len = views[run[0]].as_ref().unwrap().triples.len();
            let component = |&k: &usize, d: usize| views[k].as_ref().unwrap().triples[d / 3][d % 3];
            let tie = |d: usize| if d % 3 == 0 { eps.altitude } else { eps.angle };
            crate::geometry::sort_lex_tol_by(run, 3 * len, component, tie);
        }
        start = end;
    }
    let sorted: Vec<Orbit<T>> = idx.iter().map(|&k| orbits[k].clone()).collect();
    orbits.clone_from_slice(&sorted);
}

fn key_eq<T: Real>(a: &[T; 3], b: &[T; 3], eps: &ViewEps<T>) -> bool {
    cmp_tol(a[0], b[0], eps.altitude) == Ordering::Equal
        && cmp_tol(a[1], b[1], eps.altitude) == Ordering::Equal
        && cmp_tol(a[2], b[2], eps.angle) == Ordering::Equal
}

/// Local view of robot `i` in the configuration `points`.
pub fn local_view<T: Real>(points: &[Vec3<T>], i: usize, tol: &Tolerance<T>) -> Result<LocalView<T>> {
    if i >= points.len() {
        return Err(Error::IndexOutOfRange { index: i, len: points.len() });
    }
    let ball = smallest_enclosing_ball(points)?;
    let ctx = ViewContext::new(points, ball.center, ball.radius, tol)?;
    Ok(ctx.view(i))
}

/// Thresholds used when comparing local views of `points`.
pub fn view_eps<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<ViewEps<T>> {
    let ball = smallest_enclosing_ball(points)?;
    Ok(ViewContext::new(points, ball.center, ball.radius, tol)?.eps)
}

/// Images of `seed` under every rotation about `center`, with points closer
/// than `eps` merged.
pub fn orbit_of<T: Real>(seed: Vec3<T>, rotations: &[RotationOp<T>], center: Vec3<T>, eps: T) -> Vec<Vec3<T>> {
    let mut out: Vec<Vec3<T>> = Vec::with_capacity(rotations.len());
    for g in rotations {
        let p = g.apply(seed, center);
        if !out.iter().any(|q| q.dist(p) <= eps) {
            out.push(p);
        }
    }
    out
}
