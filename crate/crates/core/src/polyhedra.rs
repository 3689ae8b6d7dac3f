//! Vertex sets of the Platonic and Archimedean solids and a few families
//! with cyclic or dihedral symmetry, centered at the origin.

use std::fmt;
use std::str::FromStr;

use crate::decomposition::orbit_of;
use crate::error::{Error, Result};
use crate::geometry::{smallest_enclosing_ball, Tolerance, Vec3};
use crate::scalar::Real;
use crate::symmetry::{enumerate_rotations_about, GroupKind};

/// Default seed for `orbit(..)`: on no rotation axis of T, O or I.
pub const GENERIC_SEED: [f64; 3] = [0.29, 0.53, 0.91];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
    Cuboctahedron,
    Icosidodecahedron,
    TruncatedTetrahedron,
    TruncatedCube,
    TruncatedOctahedron,
    Rhombicuboctahedron,
    TruncatedCuboctahedron,
    SnubCube,
    TruncatedIcosahedron,
    TruncatedDodecahedron,
    Rhombicosidodecahedron,
    TruncatedIcosidodecahedron,
    SnubDodecahedron,
    Prism(usize),
    Pyramid(usize),
    Sphenoid(f64, f64, f64),
    Orbit(GroupKind, [f64; 3]),
}

impl Generator {
    pub const PLATONIC: [Generator; 5] = [
        Generator::Tetrahedron,
        Generator::Octahedron,
        Generator::Cube,
        Generator::Icosahedron,
        Generator::Dodecahedron,
    ];

    pub const ARCHIMEDEAN: [Generator; 13] = [
        Generator::TruncatedTetrahedron,
        Generator::Cuboctahedron,
        Generator::TruncatedCube,
        Generator::TruncatedOctahedron,
        Generator::Rhombicuboctahedron,
        Generator::TruncatedCuboctahedron,
        Generator::SnubCube,
        Generator::Icosidodecahedron,
        Generator::TruncatedIcosahedron,
        Generator::TruncatedDodecahedron,
        Generator::Rhombicosidodecahedron,
        Generator::TruncatedIcosidodecahedron,
        Generator::SnubDodecahedron,
    ];

    /// Vertices scaled so the smallest enclosing ball is centered at the
    /// origin with radius `circumradius`.
    pub fn points<T: Real>(&self, circumradius: T) -> Result<Vec<Vec3<T>>> {
        if !(circumradius > T::zero()) || !circumradius.is_finite() {
            return Err(Error::InvalidArgument(format!("circumradius must be positive, got {circumradius}")));
        }
        let raw = self.raw()?;
        let ball = smallest_enclosing_ball(&raw)?;
        let s = circumradius.as_f64() / ball.radius;
        Ok(raw.into_iter().map(|p| ((p - ball.center) * s).cast()).collect())
    }

    fn raw(&self) -> Result<Vec<Vec3<f64>>> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r2 = 2f64.sqrt();
        Ok(match *self {
            Generator::Tetrahedron => even_minus(&[[1.0, 1.0, 1.0]]),
            Generator::Octahedron => all_perms(&[[1.0, 0.0, 0.0]]),
            Generator::Cube => all_perms(&[[1.0, 1.0, 1.0]]),
            Generator::Icosahedron => cyclic(&[[0.0, 1.0, phi]]),
            Generator::Dodecahedron => {
                let mut v = cyclic(&[[1.0, 1.0, 1.0]]);
                v.extend(cyclic(&[[0.0, 1.0 / phi, phi]]));
                v
            }
            Generator::Cuboctahedron => all_perms(&[[1.0, 1.0, 0.0]]),
            Generator::Icosidodecahedron => {
                let mut v = all_perms(&[[0.0, 0.0, phi]]);
                v.extend(cyclic(&[[0.5, phi / 2.0, phi * phi / 2.0]]));
                v
            }
            Generator::TruncatedTetrahedron => even_minus(&perms3([3.0, 1.0, 1.0])),
            Generator::TruncatedCube => all_perms(&[[r2 - 1.0, 1.0, 1.0]]),
            Generator::TruncatedOctahedron => all_perms(&[[0.0, 1.0, 2.0]]),
            Generator::Rhombicuboctahedron => all_perms(&[[1.0, 1.0, 1.0 + r2]]),
            Generator::TruncatedCuboctahedron => all_perms(&[[1.0, 1.0 + r2, 1.0 + 2.0 * r2]]),
            Generator::SnubCube => snub_cube(),
            Generator::TruncatedIcosahedron => cyclic(&[
                [0.0, 1.0, 3.0 * phi],
                [1.0, 2.0 + phi, 2.0 * phi],
                [phi, 2.0, phi.powi(3)],
            ]),
            Generator::TruncatedDodecahedron => cyclic(&[
                [0.0, 1.0 / phi, 2.0 + phi],
                [1.0 / phi, phi, 2.0 * phi],
                [phi, 2.0, phi + 1.0],
            ]),
            Generator::Rhombicosidodecahedron => cyclic(&[
                [1.0, 1.0, phi.powi(3)],
                [phi * phi, phi, 2.0 * phi],
                [2.0 + phi, 0.0, phi * phi],
            ]),
            Generator::TruncatedIcosidodecahedron => cyclic(&[
                [1.0 / phi, 1.0 / phi, 3.0 + phi],
                [2.0 / phi, phi, 1.0 + 2.0 * phi],
                [1.0 / phi, phi * phi, -1.0 + 3.0 * phi],
                [-1.0 + 2.0 * phi, 2.0, 2.0 + phi],
                [phi, 3.0, 2.0 * phi],
            ]),
            Generator::SnubDodecahedron => snub_dodecahedron(),
            Generator::Prism(k) => {
                check_k(k, 3)?;
                let half = (std::f64::consts::PI / k as f64).sin();
                let mut v = polygon(k, half);
                v.extend(polygon(k, -half));
                v
            }
            Generator::Pyramid(k) => {
                check_k(k, 3)?;
                let mut v = vec![Vec3::new(0.0, 0.0, 1.0)];
                v.extend(polygon(k, 0.0));
                v
            }
            Generator::Sphenoid(a, b, c) => {
                if [a, b, c].iter().any(|x| !(x.abs() > 0.0) || !x.is_finite()) {
                    return Err(Error::InvalidArgument("sphenoid parameters must be nonzero".into()));
                }
                vec![
                    Vec3::new(a, b, c),
                    Vec3::new(a, -b, -c),
                    Vec3::new(-a, b, -c),
                    Vec3::new(-a, -b, c),
                ]
            }
            Generator::Orbit(kind, seed) => {
                let reference = match kind {
                    GroupKind::Tetrahedral => Generator::Tetrahedron,
                    GroupKind::Octahedral => Generator::Cube,
                    GroupKind::Icosahedral => Generator::Icosahedron,
                    other => {
                        return Err(Error::InvalidArgument(format!("orbit generator needs T, O or I, got {other}")))
                    }
                };
                let refs = reference.raw()?;
                let tol = Tolerance::<f64>::default();
                let rots = enumerate_rotations_about(&refs, Vec3::zero(), 2.0, &tol)?;
                let seed = Vec3::new(seed[0], seed[1], seed[2]);
                if seed.norm() == 0.0 {
                    return Err(Error::InvalidArgument("orbit seed must be nonzero".into()));
                }
                orbit_of(seed, &rots, Vec3::zero(), tol.len(seed.norm()))
            }
        })
    }
}

fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::InvalidArgument(format!("polygon size must be at least {min}, got {k}")));
    }
    Ok(())
}

fn polygon(k: usize, z: f64) -> Vec<Vec3<f64>> {
    (0..k)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / k as f64;
            Vec3::new(a.cos(), a.sin(), z)
        })
        .collect()
}

/// All sign changes of the nonzero coordinates, deduplicated.
fn signs(p: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for mask in 0..8 {
        let q = [
            if mask & 1 != 0 { -p[0] } else { p[0] },
            if mask & 2 != 0 { -p[1] } else { p[1] },
            if mask & 4 != 0 { -p[2] } else { p[2] },
        ];
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

fn perms3(p: [f64; 3]) -> Vec<[f64; 3]> {
    let idx = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let mut out: Vec<[f64; 3]> = Vec::new();
    for i in idx {
        let q = [p[i[0]], p[i[1]], p[i[2]]];
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

fn cyclic_perms(p: [f64; 3]) -> Vec<[f64; 3]> {
    vec![p, [p[1], p[2], p[0]], [p[2], p[0], p[1]]]
}

fn dedup(points: Vec<[f64; 3]>) -> Vec<Vec3<f64>> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.into_iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect()
}

/// All permutations and sign changes.
fn all_perms(seeds: &[[f64; 3]]) -> Vec<Vec3<f64>> {
    dedup(seeds.iter().flat_map(|&s| perms3(s)).flat_map(signs).collect())
}

/// Cyclic permutations and all sign changes.
fn cyclic(seeds: &[[f64; 3]]) -> Vec<Vec3<f64>> {
    dedup(seeds.iter().flat_map(|&s| cyclic_perms(s)).flat_map(signs).collect())
}

/// Sign changes flipping an even number of coordinates.
fn even_minus(seeds: &[[f64; 3]]) -> Vec<Vec3<f64>> {
    let pts = seeds
        .iter()
        .flat_map(|&s| {
            (0..8u32)
                .filter(|m| m.count_ones() % 2 == 0)
                .map(move |m| {
                    let f = |bit: u32, x: f64| if m & bit != 0 { -x } else { x };
                    [f(1, s[0]), f(2, s[1]), f(4, s[2])]
                })
        })
        .collect();
    dedup(pts)
}

/// Cyclic permutations of `p` with sign patterns whose number of minus
/// signs has parity `parity`, plus the odd permutations with the other
/// parity. Produces one chirality of a snub solid.
fn chiral(p: [f64; 3], parity: u32) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    let odd = [[p[0], p[2], p[1]], [p[2], p[1], p[0]], [p[1], p[0], p[2]]];
    for (perms, want) in [(cyclic_perms(p), parity), (odd.to_vec(), 1 - parity)] {
        for q in perms {
            for m in 0..8u32 {
                if m.count_ones() % 2 == want {
                    let f = |bit: u32, x: f64| if m & bit != 0 { -x } else { x };
                    out.push([f(1, q[0]), f(2, q[1]), f(4, q[2])]);
                }
            }
        }
    }
    out
}

fn snub_cube() -> Vec<Vec3<f64>> {
    let t = (1.0 + (19.0 - 3.0 * 33f64.sqrt()).cbrt() + (19.0 + 3.0 * 33f64.sqrt()).cbrt()) / 3.0;
    dedup(chiral([1.0, 1.0 / t, t], 1))
}

fn snub_dodecahedron() -> Vec<Vec3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    // real root of x^3 - 2x = phi
    let mut x = 1.7;
    for _ in 0..60 {
        x -= (x * x * x - 2.0 * x - phi) / (3.0 * x * x - 2.0);
    }
    let a = x - 1.0 / x;
    let b = x * phi + phi * phi + phi / x;
    let seeds = [
        [2.0 * a, 2.0, 2.0 * b],
        [a + b / phi + phi, -a * phi + b + 1.0 / phi, a / phi + b * phi - 1.0],
        [a + b / phi - phi, a * phi - b + 1.0 / phi, a / phi + b * phi + 1.0],
        [-a / phi + b * phi + 1.0, -a + b / phi - phi, a * phi + b - 1.0 / phi],
        [-a / phi + b * phi - 1.0, a - b / phi - phi, a * phi + b + 1.0 / phi],
    ];
    let mut pts = Vec::new();
    for s in seeds {
        for q in cyclic_perms(s) {
            for m in 0..8u32 {
                // even number of plus signs
                if (3 - m.count_ones()) % 2 == 0 {
                    let f = |bit: u32, v: f64| if m & bit != 0 { -v } else { v };
                    pts.push([f(1, q[0]), f(2, q[1]), f(4, q[2])]);
                }
            }
        }
    }
    dedup(pts)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Prism(k) => write!(f, "prism({k})"),
            Generator::Pyramid(k) => write!(f, "pyramid({k})"),
            Generator::Sphenoid(a, b, c) => write!(f, "sphenoid({a},{b},{c})"),
            Generator::Orbit(g, s) => write!(f, "orbit({},{},{},{})", g.symbol(), s[0], s[1], s[2]),
            other => f.write_str(simple_name(other).expect("named solid")),
        }
    }
}

const NAMED: [(&str, Generator); 18] = [
    ("tetrahedron", Generator::Tetrahedron),
    ("octahedron", Generator::Octahedron),
    ("cube", Generator::Cube),
    ("icosahedron", Generator::Icosahedron),
    ("dodecahedron", Generator::Dodecahedron),
    ("cuboctahedron", Generator::Cuboctahedron),
    ("icosidodecahedron", Generator::Icosidodecahedron),
    ("truncated_tetrahedron", Generator::TruncatedTetrahedron),
    ("truncated_cube", Generator::TruncatedCube),
    ("truncated_octahedron", Generator::TruncatedOctahedron),
    ("rhombicuboctahedron", Generator::Rhombicuboctahedron),
    ("truncated_cuboctahedron", Generator::TruncatedCuboctahedron),
    ("snub_cube", Generator::SnubCube),
    ("truncated_icosahedron", Generator::TruncatedIcosahedron),
    ("truncated_dodecahedron", Generator::TruncatedDodecahedron),
    ("rhombicosidodecahedron", Generator::Rhombicosidodecahedron),
    ("truncated_icosidodecahedron", Generator::TruncatedIcosidodecahedron),
    ("snub_dodecahedron", Generator::SnubDodecahedron),
];

fn simple_name(g: &Generator) -> Option<&'static str> {
    NAMED.iter().find(|(_, h)| h == g).map(|(n, _)| *n)
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((_, g)) = NAMED.iter().find(|(n, _)| *n == s) {
            return Ok(*g);
        }
        let unknown = || Error::UnknownGenerator(s.to_string());
        let (name, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(unknown)?.split(',').map(str::trim).collect();
        let num = |a: &str| a.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad number `{a}` in `{s}`")));
        let int = |a: &str| a.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad integer `{a}` in `{s}`")));
        match (name.trim(), args.as_slice()) {
            ("prism", [k]) => Ok(Generator::Prism(int(k)?)),
            ("pyramid", [k]) => Ok(Generator::Pyramid(int(k)?)),
            ("sphenoid", [a, b, c]) => Ok(Generator::Sphenoid(num(a)?, num(b)?, num(c)?)),
            ("orbit", [g, rest @ ..]) => {
                let kind = GroupKind::parse(g).filter(|k| k.is_3d()).ok_or_else(unknown)?;
                let seed = match rest {
                    [] => GENERIC_SEED,
                    [x, y, z] => [num(x)?, num(y)?, num(z)?],
                    _ => return Err(unknown()),
                };
                Ok(Generator::Orbit(kind, seed))
            }
            _ => Err(unknown()),
        }
    }
}

/// Union of several generated shells, each at its own circumradius.
pub fn compound<T: Real>(parts: &[(Generator, T)]) -> Result<Vec<Vec3<T>>> {
    let mut out = Vec::new();
    for (g, r) in parts {
        out.extend(g.points(*r)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        let expect = [
            (Generator::Tetrahedron, 4),
            (Generator::Octahedron, 6),
            (Generator::Cube, 8),
            (Generator::Icosahedron, 12),
            (Generator::Dodecahedron, 20),
            (Generator::TruncatedTetrahedron, 12),
            (Generator::Cuboctahedron, 12),
            (Generator::TruncatedCube, 24),
            (Generator::TruncatedOctahedron, 24),
            (Generator::Rhombicuboctahedron, 24),
            (Generator::TruncatedCuboctahedron, 48),
            (Generator::SnubCube, 24),
            (Generator::Icosidodecahedron, 30),
            (Generator::TruncatedIcosahedron, 60),
            (Generator::TruncatedDodecahedron, 60),
            (Generator::Rhombicosidodecahedron, 60),
            (Generator::TruncatedIcosidodecahedron, 120),
            (Generator::SnubDodecahedron, 60),
        ];
        for (g, n) in expect {
            let p = g.points(1.0_f64).unwrap();
            assert_eq!(p.len(), n, "{g}");
            for v in &p {
                assert!((v.norm() - 1.0).abs() < 1e-12, "{g} not inscribed");
            }
        }
    }

    #[test]
    fn archimedean_solids_have_equal_edges() {
        for g in Generator::ARCHIMEDEAN.iter().chain(Generator::PLATONIC.iter()) {
            let p = g.points(1.0_f64).unwrap();
            let min = crate::geometry::min_pairwise_distance(&p).unwrap();
            // every vertex has at least three neighbours at the edge length
            for (i, a) in p.iter().enumerate() {
                let k = p.iter().enumerate().filter(|(j, b)| *j != i && (a.dist(**b) - min).abs() < 1e-9).count();
                assert!(k >= 3, "{g}: vertex {i} has {k} edges");
            }
        }
    }

    #[test]
    fn tetrahedron_at_root_three() {
        let p = Generator::Tetrahedron.points(3f64.sqrt()).unwrap();
        assert!(p.iter().any(|v| v.dist(Vec3::new(1.0, 1.0, 1.0)) < 1e-12));
        assert!(p.iter().any(|v| v.dist(Vec3::new(-1.0, -1.0, 1.0)) < 1e-12));
    }

    #[test]
    fn names_round_trip() {
        for s in ["cube", "prism(5)", "pyramid(4)", "sphenoid(1,2,3)", "orbit(O,0.29,0.53,0.91)", "snub_dodecahedron"] {
            let g: Generator = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!(matches!("hexahedron".parse::<Generator>(), Err(Error::UnknownGenerator(_))));
        assert_eq!("orbit(T)".parse::<Generator>().unwrap(), Generator::Orbit(GroupKind::Tetrahedral, GENERIC_SEED));
    }
}
