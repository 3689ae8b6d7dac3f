use super::matcher::PointMatcher;
use crate::error::{Error, Result};
use crate::geometry::{
    cmp_total, rotation_from_vector_pairs, smallest_enclosing_ball, sort_lex_tol, RotationOp, Tolerance, Vec3,
};
use crate::scalar::Real;

/// All proper rotations about the center of the smallest enclosing ball
/// that map `points` onto itself.
pub fn enumerate_rotations<T: Real>(
    points: &[Vec3<T>],
    tol: &Tolerance<T>,
) -> Result<Vec<RotationOp<T>>> {
    let ball = smallest_enclosing_ball(points)?;
    enumerate_rotations_about(points, ball.center, ball.radius, tol)
}

/// Like [`enumerate_rotations`] with the center and length scale supplied.
pub fn enumerate_rotations_about<T: Real>(
    points: &[Vec3<T>],
    center: Vec3<T>,
    scale: T,
    tol: &Tolerance<T>,
) -> Result<Vec<RotationOp<T>>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let eps = tol.len(scale);
    let rel: Vec<Vec3<T>> = points.iter().map(|p| *p - center).collect();
    let radii: Vec<T> = rel.iter().map(|v| v.norm()).collect();

    let off_center: Vec<usize> = (0..points.len()).filter(|&i| radii[i] > eps).collect();
    if off_center.is_empty() || collinear_through_origin(&rel, &off_center, eps) {
        return Err(Error::InfiniteRotationGroup);
    }

    let shells = radius_shells(&radii, &off_center, eps);
    let shell_of = |i: usize| shells.iter().position(|s| s.contains(&i)).expect("indexed");

    // base point from the sparsest shell
    let base_shell = (0..shells.len())
        .min_by(|&s, &t| shells[s].len().cmp(&shells[t].len()).then(s.cmp(&t)))
        .expect("at least one shell");
    let a = shells[base_shell][0];
    let b = choose_second(&rel, &radii, &shells, a, tol).ok_or(Error::InfiniteRotationGroup)?;

    let matcher = PointMatcher::new(points, eps);
    let ab = rel[a].dist(rel[b]);
    let mut group = PermGroup::new(points.len(), a, b);
    'search: for &a2 in &shells[base_shell] {
        for &b2 in &shells[shell_of(b)] {
            if a2 == b2 || (rel[a2].dist(rel[b2]) - ab).abs() > eps || group.maps_to(a2, b2) {
                continue;
            }
            let Some(rot) = rotation_from_vector_pairs(rel[a], rel[b], rel[a2], rel[b2], tol)? else {
                continue;
            };
            if let Some(perm) = matcher.permutation(|p| rot.apply(p, center)) {
                group.add_generator(perm);
                // no finite rotation group properly contains O or I
                if group.is_maximal() {
                    break 'search;
                }
            }
        }
    }
    let mut found = Vec::with_capacity(group.elements.len());
    for perm in &group.elements {
        let rot = rotation_from_vector_pairs(rel[a], rel[b], rel[perm[a]], rel[perm[b]], tol)?;
        found.push(rot.ok_or(Error::NotClosed)?);
    }
    sort_rotations(&mut found);
    Ok(found)
}

/// Symmetries as permutations of the points, closed under composition.
/// An element is determined by the images of the basis points `a` and `b`.
struct PermGroup {
    a: usize,
    b: usize,
    elements: Vec<Vec<usize>>,
    /// `images[a2 * n + b2]`: some element sends `a` to `a2` and `b` to `b2`.
    images: Vec<bool>,
    generators: Vec<Vec<usize>>,
}

impl PermGroup {
    fn new(n: usize, a: usize, b: usize) -> Self {
        let mut images = vec![false; n * n];
        images[a * n + b] = true;
        Self { a, b, elements: vec![(0..n).collect()], images, generators: Vec::new() }
    }

    fn maps_to(&self, a2: usize, b2: usize) -> bool {
        self.images[a2 * self.elements[0].len() + b2]
    }

    fn add_generator(&mut self, g: Vec<usize>) {
        self.generators.push(g);
        let mut next = 0;
        while next < self.elements.len() {
            for k in 0..self.generators.len() {
                let g = &self.generators[k];
                let e = &self.elements[next];
                let key = g[e[self.a]] * e.len() + g[e[self.b]];
                if !self.images[key] {
                    self.images[key] = true;
                    let c: Vec<usize> = e.iter().map(|&i| g[i]).collect();
                    self.elements.push(c);
                }
            }
            next += 1;
        }
    }

    fn is_maximal(&self) -> bool {
        // O is the only rotation group of order 24 with six elements of order 4
        let n = self.elements.len();
        n == 60 || (n == 24 && self.elements.iter().filter(|e| perm_order(e) == 4).count() == 6)
    }
}

fn perm_order(p: &[usize]) -> usize {
    let mut order = 1;
    let mut seen = vec![false; p.len()];
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            order = lcm(order, len);
        }
    }
    order
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Deterministic order: identity first, then by order, turns and axis.
pub(crate) fn sort_rotations<T: Real>(rots: &mut [RotationOp<T>]) {
    let key = |r: &RotationOp<T>, d: usize| match d {
        0 => T::from_u32(r.order()).unwrap(),
        1 => T::from_u32(r.turns()).unwrap(),
        _ => r.axis()[d - 2],
    };
    sort_lex_tol(rots, 5, key, T::lit(1e-6));
}

fn collinear_through_origin<T: Real>(rel: &[Vec3<T>], idx: &[usize], eps: T) -> bool {
    let far = idx
        .iter()
        .copied()
        .max_by(|&i, &j| cmp_total(rel[i].norm_sq(), rel[j].norm_sq()))
        .expect("nonempty");
    let Some(dir) = rel[far].normalized() else { return true };
    idx.iter().all(|&i| rel[i].reject(dir).norm() <= eps)
}

/// Group indices into shells of equal distance from the center.
fn radius_shells<T: Real>(radii: &[T], idx: &[usize], eps: T) -> Vec<Vec<usize>> {
    let mut order = idx.to_vec();
    order.sort_by(|&i, &j| cmp_total(radii[i], radii[j]).then(i.cmp(&j)));
    let mut shells: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match shells.last_mut() {
            Some(s) if radii[i] - radii[*s.last().unwrap()] <= eps => s.push(i),
            _ => shells.push(vec![i]),
        }
    }
    shells
}

/// Second basis point: from the sparsest shells first, nearest to `a`,
/// and far enough from the line through `a` and the center.
fn choose_second<T: Real>(
    rel: &[Vec3<T>],
    radii: &[T],
    shells: &[Vec<usize>],
    a: usize,
    tol: &Tolerance<T>,
) -> Option<usize> {
    let ua = rel[a] / radii[a];
    let sin_to_a = |i: usize| ua.cross(rel[i] / radii[i]).norm();
    let mut shell_order: Vec<usize> = (0..shells.len()).collect();
    shell_order.sort_by_key(|&s| (shells[s].len(), s));
    let well_conditioned = T::lit(0.05);
    for &s in &shell_order {
        let best = shells[s]
            .iter()
            .copied()
            .filter(|&i| i != a && sin_to_a(i) > well_conditioned)
            .min_by(|&i, &j| cmp_total(rel[i].dist(rel[a]), rel[j].dist(rel[a])).then(i.cmp(&j)));
        if best.is_some() {
            return best;
        }
    }
    // only badly conditioned choices remain
    shells
        .iter()
        .flatten()
        .copied()
        .filter(|&i| i != a)
        .max_by(|&i, &j| cmp_total(sin_to_a(i), sin_to_a(j)))
        .filter(|&i| sin_to_a(i) > tol.angle())
}
