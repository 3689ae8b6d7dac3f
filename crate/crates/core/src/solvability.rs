//! Decides whether oblivious FSYNC robots can form a plane from a
//! configuration, and names the adversary group when they cannot.

use crate::decomposition::{gamma_decomposition, OrbitDecomposition};
use crate::error::Result;
use crate::geometry::{Tolerance, Vec3};
use crate::scalar::Real;
use crate::symmetry::{GroupClass, GroupKind};

/// Orbit sizes that cannot be broken by a deterministic oblivious algorithm.
pub const UNBREAKABLE_SIZES: [usize; 3] = [12, 24, 60];

pub fn is_unbreakable_size(size: usize) -> bool {
    UNBREAKABLE_SIZES.contains(&size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The rotation group is already cyclic, dihedral or collinear.
    TwoDimensional,
    /// Index into the ordered orbits of the first orbit whose size is
    /// breakable.
    BreakableOrbit(usize),
    /// The center of the enclosing ball is occupied by a robot.
    CenterOccupied,
    /// Unsolvable; the adversary plays symmetric frames under this group.
    Adversary(GroupKind),
}

#[derive(Debug, Clone)]
pub struct Verdict<T> {
    pub solvable: bool,
    pub group: GroupClass<T>,
    pub orbit_sizes: Vec<usize>,
    pub foldings: Vec<usize>,
    pub witness: Witness,
}

/// Adversary group for the smallest orbit size of an unsolvable set.
pub fn adversary_kind(min_orbit: usize) -> Option<GroupKind> {
    match min_orbit {
        12 => Some(GroupKind::Tetrahedral),
        24 => Some(GroupKind::Octahedral),
        60 => Some(GroupKind::Icosahedral),
        _ => None,
    }
}

pub fn check_solvable<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<Verdict<T>> {
    let d = gamma_decomposition(points, tol)?;
    Ok(verdict_of(points, &d, tol))
}

pub(crate) fn verdict_of<T: Real>(points: &[Vec3<T>], d: &OrbitDecomposition<T>, tol: &Tolerance<T>) -> Verdict<T> {
    let orbit_sizes = d.sizes();
    let foldings = d.orbits.iter().map(|o| o.folding).collect();
    let eps = tol.len(d.group.radius);
    let occupied = points.iter().any(|p| p.dist(d.group.center) <= eps);
    let (solvable, witness) = if !d.group.kind().is_3d() {
        (true, Witness::TwoDimensional)
    } else if occupied {
        (true, Witness::CenterOccupied)
    } else if let Some(s) = orbit_sizes.iter().position(|&k| !is_unbreakable_size(k)) {
        (true, Witness::BreakableOrbit(s))
    } else {
        let min = orbit_sizes.iter().copied().min().unwrap_or(0);
        let g = adversary_kind(min).expect("unbreakable sizes have an adversary group");
        (false, Witness::Adversary(g))
    };
    Verdict { solvable, group: d.group.class.clone(), orbit_sizes, foldings, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn icosahedron() -> Vec<Vec3<f64>> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut v = Vec::new();
        for &a in &[-1.0, 1.0] {
            for &b in &[-phi, phi] {
                v.push(Vec3::new(0.0, a, b));
                v.push(Vec3::new(a, b, 0.0));
                v.push(Vec3::new(b, 0.0, a));
            }
        }
        v
    }

    #[test]
    fn icosahedron_is_unsolvable_with_t() {
        let v = check_solvable(&icosahedron(), &Tolerance::default()).unwrap();
        assert!(!v.solvable);
        assert_eq!(v.witness, Witness::Adversary(GroupKind::Tetrahedral));
        assert_eq!(v.orbit_sizes, vec![12]);
        assert_eq!(v.foldings, vec![5]);
    }

    #[test]
    fn centered_icosahedron_is_solvable() {
        let mut p = icosahedron();
        p.push(Vec3::zero());
        let v = check_solvable(&p, &Tolerance::default()).unwrap();
        assert!(v.solvable);
        assert_eq!(v.witness, Witness::CenterOccupied);
    }

    #[test]
    fn small_sets_are_solvable() {
        let p = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 2.0, 0.0)];
        let v = check_solvable(&p, &Tolerance::default()).unwrap();
        assert!(v.solvable);
        assert_eq!(v.witness, Witness::TwoDimensional);
    }
}
