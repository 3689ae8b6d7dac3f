use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{cmp_tol, sort_lex_tol, RotationOp, Tolerance, Vec3};
use crate::scalar::Real;

/// Kind of a finite rotation group, plus the degenerate collinear case
/// whose rotation group is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Collinear,
}

impl GroupKind {
    /// Group order; `None` for the collinear case.
    pub fn order(&self) -> Option<u32> {
        match *self {
            GroupKind::Cyclic(k) => Some(k),
            GroupKind::Dihedral(l) => Some(2 * l),
            GroupKind::Tetrahedral => Some(12),
            GroupKind::Octahedral => Some(24),
            GroupKind::Icosahedral => Some(60),
            GroupKind::Collinear => None,
        }
    }

    /// Polyhedral groups T, O and I.
    pub fn is_3d(&self) -> bool {
        matches!(self, GroupKind::Tetrahedral | GroupKind::Octahedral | GroupKind::Icosahedral)
    }

    /// Cyclic and dihedral groups. Collinear sets are neither.
    pub fn is_2d(&self) -> bool {
        matches!(self, GroupKind::Cyclic(_) | GroupKind::Dihedral(_))
    }

    pub fn symbol(&self) -> String {
        match self {
            GroupKind::Cyclic(k) => format!("C{k}"),
            GroupKind::Dihedral(l) => format!("D{l}"),
            GroupKind::Tetrahedral => "T".into(),
            GroupKind::Octahedral => "O".into(),
            GroupKind::Icosahedral => "I".into(),
            GroupKind::Collinear => "Collinear".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "T" => Some(GroupKind::Tetrahedral),
            "O" => Some(GroupKind::Octahedral),
            "I" => Some(GroupKind::Icosahedral),
            "Collinear" => Some(GroupKind::Collinear),
            _ => {
                let (head, num) = s.split_at(1);
                let k: u32 = num.parse().ok()?;
                match head {
                    "C" if k >= 1 => Some(GroupKind::Cyclic(k)),
                    "D" if k >= 2 => Some(GroupKind::Dihedral(k)),
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

/// A rotation axis through the center with its fold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis<T> {
    pub direction: Vec3<T>,
    pub fold: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupClass<T> {
    pub kind: GroupKind,
    /// Sorted by fold (descending), then direction.
    pub axes: Vec<Axis<T>>,
    /// Single or principal axis: present for `Cyclic(k >= 2)` and dihedral
    /// groups. For `D2` it is filled in from the point set.
    pub principal: Option<Vec3<T>>,
}

impl<T: Real> GroupClass<T> {
    pub fn collinear(direction: Vec3<T>) -> Self {
        Self {
            kind: GroupKind::Collinear,
            axes: vec![],
            principal: Some(crate::geometry::canonical_direction(direction)),
        }
    }

    pub fn order(&self) -> Option<u32> {
        self.kind.order()
    }

    /// Number of axes of each fold, as `(fold, count)` sorted by fold.
    pub fn axis_signature(&self) -> Vec<(u32, usize)> {
        let mut sig: Vec<(u32, usize)> = Vec::new();
        for a in &self.axes {
            match sig.iter_mut().find(|(f, _)| *f == a.fold) {
                Some(e) => e.1 += 1,
                None => sig.push((a.fold, 1)),
            }
        }
        sig.sort();
        sig
    }
}

/// Classify a closed set of rotations, verifying closure first.
pub fn classify_rotation_group<T: Real>(
    rotations: &[RotationOp<T>],
    tol: &Tolerance<T>,
) -> Result<GroupClass<T>> {
    verify_closed(rotations, tol)?;
    classify_closed(rotations, tol)
}

/// Closure under composition and inverse.
pub fn verify_closed<T: Real>(rotations: &[RotationOp<T>], tol: &Tolerance<T>) -> Result<()> {
    let contains = |r: &RotationOp<T>| rotations.iter().any(|s| s.approx_eq(r, tol));
    if !rotations.iter().any(|r| r.is_identity()) {
        return Err(Error::NotClosed);
    }
    for g in rotations {
        if !contains(&g.inverse()) {
            return Err(Error::NotClosed);
        }
        for h in rotations {
            match g.compose(h, tol) {
                Some(gh) if contains(&gh) => {}
                _ => return Err(Error::NotClosed),
            }
        }
    }
    Ok(())
}

/// Classification of a rotation set already known to be a group.
pub(crate) fn classify_closed<T: Real>(
    rotations: &[RotationOp<T>],
    tol: &Tolerance<T>,
) -> Result<GroupClass<T>> {
    let n = rotations.len() as u32;
    let axes = collect_axes(rotations, tol)?;
    let count = |fold: u32| axes.iter().filter(|a| a.fold == fold).count();
    let perpendicular = |u: Vec3<T>, v: Vec3<T>| u.dot(v).abs() <= tol.angle() * T::lit(10.0);

    let (kind, principal) = if n == 1 {
        (GroupKind::Cyclic(1), None)
    } else if axes.len() == 1 {
        if axes[0].fold != n {
            return Err(Error::Unclassifiable);
        }
        (GroupKind::Cyclic(n), Some(axes[0].direction))
    } else if n == 12 && count(3) == 4 && count(2) == 3 && axes.len() == 7 {
        (GroupKind::Tetrahedral, None)
    } else if n == 24 && count(4) == 3 && count(3) == 4 && count(2) == 6 && axes.len() == 13 {
        (GroupKind::Octahedral, None)
    } else if n == 60 && count(5) == 6 && count(3) == 10 && count(2) == 15 && axes.len() == 31 {
        (GroupKind::Icosahedral, None)
    } else if n == 4 && count(2) == 3 && axes.len() == 3 {
        let ok = (0..3).all(|i| (i + 1..3).all(|j| perpendicular(axes[i].direction, axes[j].direction)));
        if !ok {
            return Err(Error::Unclassifiable);
        }
        (GroupKind::Dihedral(2), None)
    } else if n % 2 == 0 && n >= 6 {
        let l = n / 2;
        let main: Vec<&Axis<T>> = axes.iter().filter(|a| a.fold == l).collect();
        let ok = main.len() == 1
            && count(2) as u32 == l
            && axes.len() as u32 == l + 1
            && axes
                .iter()
                .filter(|a| a.fold == 2 && a.direction != main[0].direction)
                .all(|a| perpendicular(a.direction, main[0].direction));
        if !ok {
            return Err(Error::Unclassifiable);
        }
        (GroupKind::Dihedral(l), Some(main[0].direction))
    } else {
        return Err(Error::Unclassifiable);
    };
    Ok(GroupClass { kind, axes, principal })
}

/// Distinct axes with their folds (number of rotations about the axis + 1).
fn collect_axes<T: Real>(rotations: &[RotationOp<T>], tol: &Tolerance<T>) -> Result<Vec<Axis<T>>> {
    let same_line = |u: Vec3<T>, v: Vec3<T>| u.cross(v).norm() <= tol.angle() * T::lit(10.0);
    let mut axes: Vec<(Vec3<T>, u32, u32)> = Vec::new(); // direction, count, max order
    for r in rotations.iter().filter(|r| !r.is_identity()) {
        match axes.iter_mut().find(|(d, _, _)| same_line(*d, r.axis())) {
            Some(e) => {
                e.1 += 1;
                e.2 = e.2.max(r.order());
            }
            None => axes.push((r.axis(), 1, r.order())),
        }
    }
    let mut out = Vec::with_capacity(axes.len());
    for (direction, count, max_order) in axes {
        if count + 1 != max_order {
            return Err(Error::Unclassifiable);
        }
        out.push(Axis { direction, fold: max_order });
    }
    let key = |a: &Axis<T>, d: usize| if d == 0 { -T::from_u32(a.fold).unwrap() } else { a.direction[d - 1] };
    sort_lex_tol(&mut out, 4, key, T::lit(1e-6));
    Ok(out)
}

/// Pick the principal axis among the three 2-fold axes of a `D2` group.
///
/// Each axis gets a rigid-motion invariant signature: the sorted multiset of
/// (|axial coordinate|, distance to the axis) over the points. Putting the
/// axial coordinate first makes the normal of a planar set the smallest. The axis whose
/// signature differs from both others wins; when all three differ the
/// lexicographically smallest wins. If all three coincide a finer signature
/// (the canonical coordinate list in the best frame aligned with the axis)
/// is consulted under the same rule before giving up.
pub fn principal_axis_d2<T: Real>(
    points: &[Vec3<T>],
    center: Vec3<T>,
    axes: [Vec3<T>; 3],
    tol: &Tolerance<T>,
) -> Result<Vec3<T>> {
    let rel: Vec<Vec3<T>> = points.iter().map(|p| *p - center).collect();
    let scale = rel.iter().map(|v| v.norm()).fold(T::zero(), T::max);
    let eps = tol.len(scale) * T::lit(10.0);

    let coarse: Vec<Vec<T>> = (0..3).map(|i| axis_signature(&rel, axes[i], eps)).collect();
    if let Some(i) = pick_distinct(&coarse, eps) {
        return Ok(axes[i]);
    }
    let fine: Vec<Vec<T>> = (0..3)
        .map(|i| frame_signature(&rel, axes[i], axes[(i + 1) % 3], axes[(i + 2) % 3], eps))
        .collect();
    pick_distinct(&fine, eps).map(|i| axes[i]).ok_or(Error::SupergroupOfD2)
}

fn axis_signature<T: Real>(rel: &[Vec3<T>], axis: Vec3<T>, eps: T) -> Vec<T> {
    let mut entries: Vec<(T, T)> =
        rel.iter().map(|v| (v.dot(axis).abs(), v.reject(axis).norm())).collect();
    sort_lex_tol(&mut entries, 2, |e, d| if d == 0 { e.0 } else { e.1 }, eps);
    entries.into_iter().flat_map(|(h, d)| [h, d]).collect()
}

/// Minimum over the eight right-handed frames with z along +-`axis` and
/// x along +-`u` or +-`w` of the sorted coordinate list.
fn frame_signature<T: Real>(rel: &[Vec3<T>], axis: Vec3<T>, u: Vec3<T>, w: Vec3<T>, eps: T) -> Vec<T> {
    let mut best: Option<Vec<T>> = None;
    for z in [axis, -axis] {
        for x in [u, -u, w, -w] {
            let y = z.cross(x);
            let mut coords: Vec<Vec3<T>> =
                rel.iter().map(|v| Vec3::new(v.dot(x), v.dot(y), v.dot(z))).collect();
            sort_lex_tol(&mut coords, 3, |c, d| c[d], eps);
            let flat: Vec<T> = coords.iter().flat_map(|c| [c.x, c.y, c.z]).collect();
            if best.as_ref().map_or(true, |b| cmp_seq(&flat, b, eps) == Ordering::Less) {
                best = Some(flat);
            }
        }
    }
    best.expect("eight frames")
}

fn cmp_seq<T: Real>(a: &[T], b: &[T], eps: T) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp_tol(*x, *y, eps) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Index of the signature that differs from both others (or the smallest when
/// all differ); `None` when all three are equal.
fn pick_distinct<T: Real>(sigs: &[Vec<T>], eps: T) -> Option<usize> {
    let eq = |i: usize, j: usize| cmp_seq(&sigs[i], &sigs[j], eps) == Ordering::Equal;
    let (e01, e02, e12) = (eq(0, 1), eq(0, 2), eq(1, 2));
    match (e01, e02, e12) {
        (true, true, _) | (true, _, true) | (_, true, true) => None,
        (true, false, false) => Some(2),
        (false, true, false) => Some(1),
        (false, false, true) => Some(0),
        (false, false, false) => (0..3).min_by(|&i, &j| cmp_seq(&sigs[i], &sigs[j], eps)),
    }
}
