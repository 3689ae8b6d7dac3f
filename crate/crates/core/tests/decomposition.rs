use planeform::polyhedra::{compound, Generator};
use planeform::simulation::{random_frames, random_rotation, run, PlaneFormation};
use planeform::{gamma_decomposition, Point3d, Tolerance64};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn configurations() -> Vec<Vec<Point3d>> {
    let tol = Tolerance64::default();
    let mut out = vec![
        compound(&[(Generator::TruncatedTetrahedron, 1.0), (Generator::Tetrahedron, 2.0)]).unwrap(),
        compound(&[(Generator::Cuboctahedron, 1.0), (Generator::TruncatedCube, 1.0), (Generator::Octahedron, 2.0)]).unwrap(),
        Generator::Prism(6).points(1.0).unwrap(),
    ];
    let ico = Generator::Icosidodecahedron.points(1.0).unwrap();
    out.push(run(&ico, &random_frames(&ico, 1), &PlaneFormation, 1, &tol).unwrap().last().configuration.clone());
    out
}

/// Orbits as sorted lists of positions.
fn orbit_positions(p: &[Point3d]) -> Vec<Vec<Point3d>> {
    let d = gamma_decomposition(p, &Tolerance64::default()).unwrap();
    d.orbits
        .iter()
        .map(|o| {
            let mut v: Vec<Point3d> = o.indices.iter().map(|&i| p[i]).collect();
            v.sort_by(|a, b| a.lex_cmp(b));
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn order_ignores_input_permutation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in configurations() {
            let mut q = p.clone();
            q.shuffle(&mut rng);
            prop_assert_eq!(orbit_positions(&p), orbit_positions(&q));
        }
    }

    #[test]
    fn order_follows_rigid_motions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rot: planeform::geometry::Mat3<f64> = random_rotation(&mut rng);
        let shift = Point3d::new(1.5, -2.0, 0.25);
        let tol = Tolerance64::default();
        for p in configurations() {
            let q: Vec<Point3d> = p.iter().map(|&x| rot * x * 3.0 + shift).collect();
            let (a, b) = (gamma_decomposition(&p, &tol).unwrap(), gamma_decomposition(&q, &tol).unwrap());
            prop_assert_eq!(a.sizes(), b.sizes());
            for (x, y) in a.orbits.iter().zip(&b.orbits) {
                prop_assert_eq!(&x.indices, &y.indices);
            }
        }
    }
}
