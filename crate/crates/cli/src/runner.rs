//! Running scenarios and describing point sets in plain text.

use std::fmt::Write as _;

use planeform::adversary::{adversary_group, build_symmetric_frames, closure_defect};
use planeform::formation::eval_conditions;
use planeform::geometry::is_collinear;
use planeform::simulation::{random_frames, Status, TraceEntry};
use planeform::solvability::{check_solvable, Witness};
use planeform::{gamma_decomposition, run, smallest_enclosing_ball, verify_terminal, Error, Frame64, Point3d, Tolerance64, Trace64};

use crate::error::Result;
use crate::scenario::{AlgorithmSpec, FrameSpec, Scenario};
use crate::trace::write_trace;

/// Largest tolerated closure defect, relative to the enclosing radius.
pub const CLOSURE_LIMIT: f64 = 1e-9;

/// Cycle bound of the plane formation algorithm.
pub const FORMATION_CYCLES: usize = 3;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trace: Trace64,
    /// Text of the trace file.
    pub trace_text: String,
    pub report: String,
    pub passed: bool,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cycle_line(e: &TraceEntry<f64>) -> String {
    let group = match &e.group {
        Some(g) => match g.order() {
            Some(o) => format!("group {} (order {o})", g.kind),
            None => format!("group {}", g.kind),
        },
        None => "multiplicity".into(),
    };
    match e.conditions {
        Some(c) => format!("cycle {}: {group}, T1 {} T2 {} T3 {}", e.cycle, yes(c.t1), yes(c.t2), yes(c.t3)),
        None => format!("cycle {}: {group}", e.cycle),
    }
}

fn frames_label(f: &FrameSpec) -> String {
    match f {
        FrameSpec::Random(s) => format!("random {s}"),
        FrameSpec::Adversarial(g, s) => format!("adversarial {} {s}", g.map_or("auto".into(), |g| g.symbol())),
        FrameSpec::Explicit(_) => "explicit".into(),
    }
}

pub fn run_scenario(s: &Scenario) -> Result<RunOutcome> {
    let tol = &s.tolerance;
    let robots = s.robots()?;
    let mut embedding = None;
    let frames: Vec<Frame64> = match &s.frames {
        FrameSpec::Random(seed) => random_frames(&robots, *seed),
        FrameSpec::Adversarial(group, seed) => {
            let group = match group {
                Some(g) => *g,
                None => adversary_group(&robots, tol)?,
            };
            let plan = build_symmetric_frames(&robots, group, *seed, tol)?;
            embedding = Some((group, plan.embedding));
            plan.frames
        }
        FrameSpec::Explicit(_) => s.explicit_frames(&robots).expect("explicit frames")?,
    };
    let algorithm = s.algorithm.build();
    let trace = run(&robots, &frames, algorithm.as_ref(), s.max_cycles, tol)?;

    let mut report = String::new();
    let _ = writeln!(report, "robots: {}", robots.len());
    let _ = writeln!(report, "algorithm: {}", s.algorithm);
    let _ = writeln!(report, "frames: {}", frames_label(&s.frames));
    for e in &trace.entries {
        let _ = writeln!(report, "{}", cycle_line(e));
    }
    let last = trace.last().cycle;
    let _ = match &trace.status {
        Status::Terminal => writeln!(report, "status: terminal at cycle {last}"),
        Status::CycleLimit => writeln!(report, "status: stopped after {last} cycles"),
        Status::Halted(f) => writeln!(report, "status: halted at cycle {last}, robot {}: {}", f.robot, f.error),
    };

    let passed = if let Some((group, rotations)) = &embedding {
        let mut worst = 0.0f64;
        for e in &trace.entries {
            worst = worst.max(closure_defect(&e.configuration, rotations)?);
        }
        let planar = trace.entries.iter().any(TraceEntry::is_planar);
        let closed = worst <= CLOSURE_LIMIT;
        let _ = writeln!(report, "closure defect: {worst:e}");
        let _ = writeln!(
            report,
            "γ {} {group} for {last} cycles; {}",
            if closed { "⊇" } else { "⊉" },
            if planar { "planar at some cycle" } else { "never planar" }
        );
        closed && !planar
    } else if s.algorithm == AlgorithmSpec::PlaneFormation {
        formation_verdict(&robots, &trace, tol, &mut report)?
    } else {
        !matches!(trace.status, Status::Halted(_))
    };
    let _ = writeln!(report, "result: {}", if passed { "PASS" } else { "FAIL" });

    let trace_text = write_trace(&trace, s.algorithm.name(), s.frames.seed());
    Ok(RunOutcome { trace, trace_text, report, passed })
}

fn formation_verdict(robots: &[Point3d], trace: &Trace64, tol: &Tolerance64, report: &mut String) -> Result<bool> {
    match &trace.status {
        Status::Terminal => {
            let r = verify_terminal(&trace.last().configuration, tol)?;
            let eps = tol.len(smallest_enclosing_ball(robots)?.radius);
            let degenerate_start = trace.entries[0].is_planar() || is_collinear(robots, eps);
            let cycles = trace.last().cycle;
            let _ = writeln!(
                report,
                "terminal: deviation {:e}, min gap {}, coplanar {}, distinct {}, collinear {}",
                r.deviation,
                r.min_gap,
                yes(r.coplanar),
                yes(r.distinct),
                yes(r.collinear)
            );
            Ok(r.passed() && (degenerate_start || !r.collinear) && cycles <= FORMATION_CYCLES)
        }
        Status::Halted(f) if f.error == Error::UnsolvableInput => {
            let v = check_solvable(robots, tol)?;
            if let Witness::Adversary(g) = v.witness {
                let _ = writeln!(report, "unsolvable: adversary group {g}; the robots stay put");
            }
            Ok(!v.solvable)
        }
        _ => Ok(false),
    }
}

pub fn analyze_report(points: &[Point3d], tol: &Tolerance64) -> Result<String> {
    let d = gamma_decomposition(points, tol)?;
    let g = &d.group;
    let mut out = String::new();
    let _ = writeln!(out, "points: {}", points.len());
    let _ = writeln!(out, "center: {} {} {}, radius {}", g.center.x, g.center.y, g.center.z, g.radius);
    let orbits: Vec<String> = d.orbits.iter().map(|o| format!("{} (folding {})", o.len(), o.folding)).collect();
    let order = g.class.order().map_or("-".into(), |o| o.to_string());
    let _ = writeln!(out, "group: {}, order {order}, orbits: [{}]", g.kind(), orbits.join(", "));
    if let Ok(c) = eval_conditions(points, tol) {
        let _ = writeln!(out, "conditions: T1 {}, T2 {}, T3 {}", yes(c.t1), yes(c.t2), yes(c.t3));
    }
    Ok(out)
}

pub fn solvable_report(points: &[Point3d], tol: &Tolerance64) -> Result<String> {
    let v = check_solvable(points, tol)?;
    let reason = match v.witness {
        Witness::TwoDimensional => format!("rotation group {} is not polyhedral", v.group.kind),
        Witness::BreakableOrbit(i) => format!("orbit {} of size {} can be broken", i + 1, v.orbit_sizes[i]),
        Witness::CenterOccupied => "a robot occupies the center".into(),
        Witness::Adversary(g) => format!("every orbit size is in {{12, 24, 60}}; adversary group {g}"),
    };
    Ok(format!("solvable: {} ({reason})\n", yes(v.solvable)))
}
