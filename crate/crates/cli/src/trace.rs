//! Trace files.
//!
//! ```text
//! planeform-trace 1
//! n 4
//! algorithm plane_formation
//! seed 7
//! cycle 0
//! 0 1 1 1
//! ...
//! group T 12
//! conditions T1=0 T2=0 T3=0
//! cycle 1
//! ...
//! status terminal 2
//! ```
//!
//! One block per configuration: `cycle t`, one `i x y z` row per robot,
//! the rotation group (`group - -` under a multiplicity, order `-` when
//! collinear) and the phase predicates (`conditions -` under a
//! multiplicity). The last line is the run status. Numbers are written in
//! shortest round-trip form, so equal runs give byte-identical files.

use std::fmt::Write as _;

use planeform::simulation::{Status, TraceEntry};
use planeform::Trace64;

pub const TRACE_HEADER: &str = "planeform-trace";
pub const TRACE_VERSION: u32 = 1;

pub fn group_line(e: &TraceEntry<f64>) -> String {
    match &e.group {
        Some(g) => format!("group {} {}", g.kind, g.order().map_or("-".into(), |o| o.to_string())),
        None => "group - -".into(),
    }
}

pub fn conditions_line(e: &TraceEntry<f64>) -> String {
    match e.conditions {
        Some(c) => format!("conditions T1={} T2={} T3={}", c.t1 as u8, c.t2 as u8, c.t3 as u8),
        None => "conditions -".into(),
    }
}

pub fn status_line(status: &Status, last_cycle: usize) -> String {
    match status {
        Status::Terminal => format!("status terminal {last_cycle}"),
        Status::CycleLimit => format!("status cycle_limit {last_cycle}"),
        Status::Halted(f) => format!("status halted {last_cycle} robot {}: {}", f.robot, f.error),
    }
}

pub fn write_trace(trace: &Trace64, algorithm: &str, seed: Option<u64>) -> String {
    let n = trace.entries[0].configuration.len();
    let mut out = String::new();
    let _ = writeln!(out, "{TRACE_HEADER} {TRACE_VERSION}");
    let _ = writeln!(out, "n {n}");
    let _ = writeln!(out, "algorithm {algorithm}");
    let _ = writeln!(out, "seed {}", seed.map_or("-".into(), |s| s.to_string()));
    for e in &trace.entries {
        let _ = writeln!(out, "cycle {}", e.cycle);
        for (i, p) in e.configuration.iter().enumerate() {
            let _ = writeln!(out, "{i} {} {} {}", p.x, p.y, p.z);
        }
        let _ = writeln!(out, "{}", group_line(e));
        let _ = writeln!(out, "{}", conditions_line(e));
    }
    let _ = writeln!(out, "{}", status_line(&trace.status, trace.last().cycle));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use planeform::simulation::{random_frames, PlaneFormation};
    use planeform::{run, Generator, Tolerance64};

    #[test]
    fn tetrahedron_trace_layout() {
        let p = Generator::Tetrahedron.points(3f64.sqrt()).unwrap();
        let t = run(&p, &random_frames(&p, 7), &PlaneFormation, 10, &Tolerance64::default()).unwrap();
        let text = write_trace(&t, "plane_formation", Some(7));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(&lines[..5], ["planeform-trace 1", "n 4", "algorithm plane_formation", "seed 7", "cycle 0"]);
        assert_eq!(lines[9], "group T 12");
        assert_eq!(lines[10], "conditions T1=1 T2=0 T3=0");
        assert!(lines.last().unwrap().starts_with("status terminal"));
        assert_eq!(text.matches("cycle ").count(), t.entries.len());
    }
}
