//! FSYNC Look-Compute-Move engine over robots with their own local frames.

mod algorithms;
mod frame;

pub use algorithms::{Algorithm, GoToMidpoint, PlaneFormation, SymmetricDrift};
pub use frame::{observe, random_frames, random_rotation, Frame};

use rayon::prelude::*;

use crate::decomposition::check_distinct;
use crate::error::{Error, Result};
use crate::formation::{eval_conditions, Conditions};
use crate::geometry::{is_collinear, min_pairwise_distance, smallest_enclosing_ball, Plane, Tolerance, Vec3};
use crate::scalar::Real;
use crate::symmetry::{GroupClass, RotationGroup};

/// A robot's observation sorted lexicographically, so it carries no
/// robot identities, together with the robot's own position in it.
fn canonical_view<T: Real>(points: &[Vec3<T>], frame: &Frame<T>, me: usize) -> (Vec<Vec3<T>>, usize) {
    let mut tagged: Vec<(Vec3<T>, usize)> = points.iter().enumerate().map(|(i, &p)| (frame.to_local(p), i)).collect();
    tagged.sort_by(|a, b| a.0.lex_cmp(&b.0).then(a.1.cmp(&b.1)));
    let pos = tagged.iter().position(|t| t.1 == me).expect("observer present");
    (tagged.into_iter().map(|t| t.0).collect(), pos)
}

/// A Compute phase that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFailure {
    pub robot: usize,
    pub error: Error,
}

/// Destinations of all robots, in global coordinates, for one cycle.
pub fn compute_destinations<T: Real, A: Algorithm<T> + ?Sized>(
    points: &[Vec3<T>],
    frames: &[Frame<T>],
    algorithm: &A,
    tol: &Tolerance<T>,
) -> std::result::Result<Vec<Vec3<T>>, StepFailure> {
    assert_eq!(points.len(), frames.len(), "one frame per robot");
    (0..points.len())
        .into_par_iter()
        .map(|i| {
            let (obs, me) = canonical_view(points, &frames[i], i);
            algorithm
                .compute(&obs, me, tol)
                .map(|d| frames[i].to_global(d))
                .map_err(|error| StepFailure { robot: i, error })
        })
        .collect()
}

/// One synchronous cycle: everyone looks at `points`, computes, and moves.
/// Frames keep their rotation and scale and follow their robots.
pub fn fsync_step<T: Real, A: Algorithm<T> + ?Sized>(
    points: &[Vec3<T>],
    frames: &[Frame<T>],
    algorithm: &A,
    tol: &Tolerance<T>,
) -> std::result::Result<(Vec<Vec3<T>>, Vec<Frame<T>>), StepFailure> {
    let next = compute_destinations(points, frames, algorithm, tol)?;
    let frames = frames.iter().zip(&next).map(|(f, &p)| f.moved_to(p)).collect();
    Ok((next, frames))
}

#[derive(Debug, Clone)]
pub struct TraceEntry<T> {
    pub cycle: usize,
    pub configuration: Vec<Vec3<T>>,
    /// `None` when no Compute phase ran on this configuration.
    pub destinations: Option<Vec<Vec3<T>>>,
    /// `None` when the configuration has a multiplicity.
    pub conditions: Option<Conditions>,
    pub group: Option<GroupClass<T>>,
    pub multiplicity: bool,
}

impl<T: Real> TraceEntry<T> {
    fn of(cycle: usize, configuration: Vec<Vec3<T>>, tol: &Tolerance<T>) -> Self {
        let multiplicity = check_distinct(&configuration, tol).is_err();
        let (conditions, group) = if multiplicity {
            (None, None)
        } else {
            (
                eval_conditions(&configuration, tol).ok(),
                RotationGroup::of_points(&configuration, tol).ok().map(|g| g.class),
            )
        };
        Self { cycle, configuration, destinations: None, conditions, group, multiplicity }
    }

    pub fn is_planar(&self) -> bool {
        self.conditions.map_or(false, |c| c.t3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// Coplanar and nobody moved.
    Terminal,
    /// `max_cycles` cycles ran without reaching a terminal configuration.
    CycleLimit,
    Halted(StepFailure),
}

#[derive(Debug, Clone)]
pub struct Trace<T> {
    /// Entry `t` holds the configuration after `t` cycles.
    pub entries: Vec<TraceEntry<T>>,
    pub status: Status,
}

impl<T: Real> Trace<T> {
    /// Cycle at which the terminal configuration was reached.
    pub fn terminal_cycle(&self) -> Option<usize> {
        (self.status == Status::Terminal).then(|| self.entries.len() - 1)
    }

    pub fn last(&self) -> &TraceEntry<T> {
        self.entries.last().expect("traces are never empty")
    }
}

/// Run the algorithm from `initial` until a terminal configuration, an
/// error, or `max_cycles` cycles.
pub fn run<T: Real, A: Algorithm<T> + ?Sized>(
    initial: &[Vec3<T>],
    frames: &[Frame<T>],
    algorithm: &A,
    max_cycles: usize,
    tol: &Tolerance<T>,
) -> Result<Trace<T>> {
    if initial.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if frames.len() != initial.len() {
        return Err(Error::InvalidArgument(format!("{} frames for {} robots", frames.len(), initial.len())));
    }
    if max_cycles == 0 {
        return Err(Error::InvalidArgument("max_cycles must be at least 1".into()));
    }
    let mut frames: Vec<Frame<T>> = frames.iter().zip(initial).map(|(f, &p)| f.moved_to(p)).collect();
    let mut entries = Vec::new();
    let mut current = TraceEntry::of(0, initial.to_vec(), tol);
    let status = loop {
        if current.cycle == max_cycles {
            break Status::CycleLimit;
        }
        let (next, moved) = match fsync_step(&current.configuration, &frames, algorithm, tol) {
            Ok(step) => step,
            Err(failure) => break Status::Halted(failure),
        };
        let eps = tol.len(smallest_enclosing_ball(&current.configuration)?.radius);
        let still = current.configuration.iter().zip(&next).all(|(p, q)| p.dist(*q) <= eps);
        let planar = current.is_planar();
        current.destinations = Some(next.clone());
        if planar && still {
            break Status::Terminal;
        }
        let cycle = current.cycle + 1;
        entries.push(std::mem::replace(&mut current, TraceEntry::of(cycle, next, tol)));
        frames = moved;
    };
    entries.push(current);
    Ok(Trace { entries, status })
}

/// Checks of the final configuration of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalReport<T> {
    /// Largest distance to the best-fit plane over the enclosing radius.
    pub deviation: T,
    pub min_gap: T,
    pub coplanar: bool,
    pub distinct: bool,
    pub collinear: bool,
}

impl<T: Real> TerminalReport<T> {
    pub fn passed(&self) -> bool {
        self.coplanar && self.distinct
    }
}

pub fn verify_terminal<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<TerminalReport<T>> {
    let ball = smallest_enclosing_ball(points)?;
    let eps = tol.len(ball.radius);
    let scale = if ball.radius > T::zero() { ball.radius } else { T::one() };
    let dev = if points.len() <= 3 { T::zero() } else { Plane::best_fit(points)?.1 };
    let min_gap = min_pairwise_distance(points).unwrap_or(T::infinity());
    Ok(TerminalReport {
        deviation: dev / scale,
        min_gap,
        coplanar: dev <= eps,
        distinct: min_gap > eps,
        collinear: is_collinear(points, eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Generator;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    struct Stay;

    impl Algorithm<f64> for Stay {
        fn name(&self) -> &'static str {
            "stay"
        }

        fn compute(&self, local_obs: &[Vec3<f64>], me: usize, _: &Tolerance<f64>) -> Result<Vec3<f64>> {
            Ok(local_obs[me])
        }
    }

    #[test]
    fn staying_robots_keep_the_configuration() {
        let p = Generator::Cube.points(1.0).unwrap();
        let f = random_frames(&p, 3);
        let (q, _) = fsync_step(&p, &f, &Stay, &tol()).unwrap();
        for (a, b) in p.iter().zip(&q) {
            assert!(a.dist(*b) < 1e-15);
        }
    }

    #[test]
    fn planar_start_is_terminal_at_once() {
        let p = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0)];
        let t = run(&p, &random_frames(&p, 1), &PlaneFormation, 10, &tol()).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.terminal_cycle(), Some(0));
    }

    #[test]
    fn square_pyramid_lands_in_one_cycle() {
        let p = Generator::Pyramid(4).points(1.0).unwrap();
        let (q, _) = fsync_step(&p, &random_frames(&p, 5), &PlaneFormation, &tol()).unwrap();
        assert!(verify_terminal(&q, &tol()).unwrap().coplanar);
    }

    #[test]
    fn dodecahedron_terminates_within_three_cycles() {
        let p = Generator::Dodecahedron.points(1.0).unwrap();
        for seed in 0..5 {
            let t = run(&p, &random_frames(&p, seed), &PlaneFormation, 10, &tol()).unwrap();
            assert!(t.terminal_cycle().is_some_and(|c| c <= 3), "{:?}", t.status);
            let r = verify_terminal(&t.last().configuration, &tol()).unwrap();
            assert!(r.passed() && !r.collinear);
        }
    }

    #[test]
    fn unsolvable_input_halts() {
        let p = Generator::Icosahedron.points(1.0).unwrap();
        let t = run(&p, &random_frames(&p, 0), &PlaneFormation, 10, &tol()).unwrap();
        assert!(matches!(t.status, Status::Halted(StepFailure { error: Error::UnsolvableInput, .. })));
    }

    #[test]
    fn terminal_report() {
        let sq = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(1.0, 1.0, 0.0)];
        let r = verify_terminal(&sq, &tol()).unwrap();
        assert!(r.coplanar && r.distinct && !r.collinear);
        let dup = [sq[0], sq[1], sq[1]];
        assert!(!verify_terminal(&dup, &tol()).unwrap().distinct);
    }

    #[test]
    fn sphenoid_ends_as_rectangle() {
        let p = Generator::Sphenoid(1.0, 1.5, 0.7).points(1.0).unwrap();
        let t = run(&p, &random_frames(&p, 9), &PlaneFormation, 10, &tol()).unwrap();
        let r = verify_terminal(&t.last().configuration, &tol()).unwrap();
        assert!(r.passed() && !r.collinear);
    }

    #[test]
    fn traces_are_reproducible() {
        let p = Generator::Cube.points(1.0).unwrap();
        let f = random_frames(&p, 42);
        let a = run(&p, &f, &PlaneFormation, 10, &tol()).unwrap();
        let b = run(&p, &f, &PlaneFormation, 10, &tol()).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.configuration, y.configuration);
        }
        assert_eq!(a.status, b.status);
    }
}
