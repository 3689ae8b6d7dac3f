use planeform::geometry::Mat3;
use planeform::simulation::random_rotation;
use planeform::{Generator, GroupKind, Point3d, Tolerance64};
use planeform_cli::scenario::normalize_scenario;
use planeform_cli::{parse_scenario, write_scenario, AlgorithmSpec, FrameSpec, Scenario};
use proptest::prelude::*;
use rand::SeedableRng;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        prop::sample::select(Generator::PLATONIC.to_vec()),
        prop::sample::select(Generator::ARCHIMEDEAN.to_vec()),
        (5usize..9).prop_map(Generator::Prism),
        (3usize..9).prop_map(Generator::Pyramid),
        (0.5..2.0f64, 0.5..2.0f64, 0.5..2.0f64).prop_map(|(a, b, c)| Generator::Sphenoid(a, b, c)),
        prop::sample::select(vec![GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral])
            .prop_map(|g| Generator::Orbit(g, planeform::polyhedra::GENERIC_SEED)),
    ]
}

fn algorithm() -> impl Strategy<Value = AlgorithmSpec> {
    prop_oneof![
        Just(AlgorithmSpec::PlaneFormation),
        (0usize..5).prop_map(AlgorithmSpec::GoToMidpoint),
        (-3.0..3.0f64).prop_map(AlgorithmSpec::SymmetricDrift),
    ]
}

/// Scenarios with distinct robots: shells at distinct radii, then points
/// outside all shells.
fn scenario() -> impl Strategy<Value = Scenario> {
    let shells = prop::collection::vec(generator(), 0..3).prop_map(|gs| {
        gs.into_iter().enumerate().map(|(k, g)| (g, 1.0 + k as f64 * 0.75)).collect::<Vec<_>>()
    });
    let points = prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 0..4).prop_map(|v| {
        v.into_iter().enumerate().map(|(k, (x, y, z))| Point3d::new(x, y, z + 10.0 * (k + 1) as f64)).collect::<Vec<_>>()
    });
    let frames = prop_oneof![
        any::<u64>().prop_map(FrameSpec::Random),
        (prop::option::of(prop::sample::select(vec![GroupKind::Tetrahedral, GroupKind::Octahedral])), any::<u64>())
            .prop_map(|(g, s)| FrameSpec::Adversarial(g, s)),
        any::<u64>().prop_map(|s| FrameSpec::Explicit(vec![(Mat3::identity(), s as f64)])),
    ];
    (shells, points, frames, algorithm(), 1usize..100, 1e-12..1e-6f64).prop_filter_map(
        "at least one robot",
        |(shells, mut points, frames, algorithm, max_cycles, rel)| {
            if shells.is_empty() && points.is_empty() {
                points.push(Point3d::new(0.5, 0.25, 0.125));
            }
            let mut s = Scenario { shells, points, frames, algorithm, max_cycles, tolerance: Tolerance64::new(rel, 1e-13).unwrap() };
            let n = s.robots().ok()?.len();
            if let FrameSpec::Explicit(list) = &s.frames {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(list[0].1 as u64);
                s.frames = FrameSpec::Explicit((0..n).map(|k| (random_rotation(&mut rng), 0.5 + k as f64)).collect());
            }
            Some(s)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_parse_is_identity(s in scenario()) {
        let text = write_scenario(&s);
        let back = parse_scenario(&text, "roundtrip").unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(write_scenario(&back), text);
    }

    #[test]
    fn comments_blank_lines_and_order_normalize_away(s in scenario(), seed in any::<u64>()) {
        let text = write_scenario(&s);
        let mut lines: Vec<&str> = text.lines().collect();
        let header = lines.remove(0);
        // scalar keys may move; repeated keys keep their relative order
        let (mut scalars, repeated): (Vec<&str>, Vec<&str>) = lines.into_iter().partition(|l| {
            !(l.starts_with("shell ") || l.starts_with("point ") || l.starts_with("frame "))
        });
        let k = (seed % scalars.len() as u64) as usize;
        scalars.rotate_left(k);
        let mut noisy = format!("# generated\n\n  {header}  \n");
        for l in scalars.iter().chain(&repeated) {
            noisy.push_str(&format!("{}   # note\n\n", l.replace(' ', "\t ")));
        }
        prop_assert_eq!(normalize_scenario(&noisy).unwrap(), text);
    }
}
