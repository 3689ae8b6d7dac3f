//! Scenario files and plain point lists.
//!
//! A scenario is line-oriented text under a versioned header:
//!
//! ```text
//! planeform-scenario 1
//! algorithm plane_formation
//! max_cycles 10
//! tolerance 1e-9 1e-12
//! frames random 42
//! shell dodecahedron 1
//! point 0.1 0.2 3
//! ```
//!
//! Robots are the vertices of every `shell` (generator, circumradius) in
//! order, followed by every explicit `point`. `frames` is `random <seed>`,
//! `adversarial <T|O|I|auto> <seed>` or `explicit`; explicit frames are
//! given as one `frame r11 r12 r13 r21 r22 r23 r31 r32 r33 scale` line per
//! robot. Blank lines and `#` comments are ignored, and every key except
//! `shell`, `point` and `frame` may appear at most once.

use std::fmt::Write as _;

use planeform::decomposition::check_distinct;
use planeform::geometry::Mat3;
use planeform::simulation::{Algorithm, GoToMidpoint, PlaneFormation, SymmetricDrift};
use planeform::{Frame64, Generator, GroupKind, Point3d, Tolerance64};

use crate::error::{CliError, Result};

pub const SCENARIO_HEADER: &str = "planeform-scenario";
pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmSpec {
    PlaneFormation,
    /// Edge choice index.
    GoToMidpoint(usize),
    /// Turn angle in radians.
    SymmetricDrift(f64),
}

impl AlgorithmSpec {
    pub fn build(&self) -> Box<dyn Algorithm<f64>> {
        match *self {
            AlgorithmSpec::PlaneFormation => Box::new(PlaneFormation),
            AlgorithmSpec::GoToMidpoint(edge) => Box::new(GoToMidpoint { edge }),
            AlgorithmSpec::SymmetricDrift(angle) => Box::new(SymmetricDrift { angle }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmSpec::PlaneFormation => "plane_formation",
            AlgorithmSpec::GoToMidpoint(_) => "go_to_midpoint",
            AlgorithmSpec::SymmetricDrift(_) => "symmetric_drift",
        }
    }

    /// Parse `name [parameter]`.
    pub fn parse(words: &[&str]) -> std::result::Result<Self, String> {
        match words {
            ["plane_formation"] => Ok(AlgorithmSpec::PlaneFormation),
            ["go_to_midpoint"] => Ok(AlgorithmSpec::GoToMidpoint(0)),
            ["go_to_midpoint", k] => Ok(AlgorithmSpec::GoToMidpoint(parse_num(k)?)),
            ["symmetric_drift"] => Ok(AlgorithmSpec::SymmetricDrift(SymmetricDrift::default().angle)),
            ["symmetric_drift", a] => Ok(AlgorithmSpec::SymmetricDrift(parse_finite(a)?)),
            _ => Err(format!(
                "unknown algorithm `{}` (expected plane_formation, go_to_midpoint or symmetric_drift)",
                words.join(" ")
            )),
        }
    }
}

impl std::fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgorithmSpec::PlaneFormation => f.write_str("plane_formation"),
            AlgorithmSpec::GoToMidpoint(k) => write!(f, "go_to_midpoint {k}"),
            AlgorithmSpec::SymmetricDrift(a) => write!(f, "symmetric_drift {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrameSpec {
    Random(u64),
    /// `None` picks the group from the solvability check.
    Adversarial(Option<GroupKind>, u64),
    /// Rotation and scale per robot; origins follow the robots.
    Explicit(Vec<(Mat3<f64>, f64)>),
}

impl FrameSpec {
    pub fn seed(&self) -> Option<u64> {
        match self {
            FrameSpec::Random(s) | FrameSpec::Adversarial(_, s) => Some(*s),
            FrameSpec::Explicit(_) => None,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            FrameSpec::Random(_) => FrameSpec::Random(seed),
            FrameSpec::Adversarial(g, _) => FrameSpec::Adversarial(*g, seed),
            explicit => explicit.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub shells: Vec<(Generator, f64)>,
    pub points: Vec<Point3d>,
    pub frames: FrameSpec,
    pub algorithm: AlgorithmSpec,
    pub max_cycles: usize,
    pub tolerance: Tolerance64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            shells: Vec::new(),
            points: Vec::new(),
            frames: FrameSpec::Random(0),
            algorithm: AlgorithmSpec::PlaneFormation,
            max_cycles: 10,
            tolerance: Tolerance64::default(),
        }
    }
}

impl Scenario {
    /// Robot positions: shell vertices, then explicit points.
    pub fn robots(&self) -> Result<Vec<Point3d>> {
        let mut out = Vec::new();
        for (g, r) in &self.shells {
            out.extend(g.points(*r)?);
        }
        out.extend_from_slice(&self.points);
        Ok(out)
    }

    /// Explicit frames placed at `robots`.
    pub fn explicit_frames(&self, robots: &[Point3d]) -> Option<Result<Vec<Frame64>>> {
        let FrameSpec::Explicit(list) = &self.frames else { return None };
        Some(
            list.iter()
                .zip(robots)
                .map(|((rot, scale), &p)| Frame64::new(*rot, *scale, p, &self.tolerance).map_err(CliError::from))
                .collect(),
        )
    }
}

fn parse_num<N: std::str::FromStr>(s: &str) -> std::result::Result<N, String> {
    s.parse().map_err(|_| format!("bad number `{s}`"))
}

fn parse_finite(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("bad number `{s}`")),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim()
}

/// Whether `text` starts (after comments) with the scenario header.
pub fn is_scenario(text: &str) -> bool {
    text.lines().map(strip_comment).find(|l| !l.is_empty()).is_some_and(|l| l.starts_with(SCENARIO_HEADER))
}

pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario> {
    let err = |line: usize, message: String| CliError::Parse { origin: origin.to_string(), line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());

    let (no, header) = lines.next().ok_or_else(|| err(0, "empty scenario".into()))?;
    match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        [SCENARIO_HEADER, v] if *v == SCENARIO_VERSION.to_string() => {}
        [SCENARIO_HEADER, v] => return Err(err(no, format!("unsupported scenario version `{v}`"))),
        _ => return Err(err(no, format!("expected `{SCENARIO_HEADER} {SCENARIO_VERSION}` header"))),
    }

    let mut s = Scenario::default();
    let mut seen: Vec<&str> = Vec::new();
    let mut explicit = false;
    let mut frame_rows = Vec::new();
    for (no, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        let (key, args) = (words[0], &words[1..]);
        if !matches!(key, "shell" | "point" | "frame") {
            if seen.contains(&key) {
                return Err(err(no, format!("duplicate `{key}`")));
            }
            seen.push(key);
        }
        macro_rules! field {
            ($e:expr) => {
                $e.map_err(|m: String| err(no, format!("{key}: {m}")))?
            };
        }
        match key {
            "algorithm" => s.algorithm = field!(AlgorithmSpec::parse(args)),
            "max_cycles" => {
                s.max_cycles = match args {
                    [n] => field!(parse_num::<usize>(n)),
                    _ => return Err(err(no, "max_cycles: expected one integer".into())),
                };
                if s.max_cycles == 0 {
                    return Err(err(no, "max_cycles: must be at least 1".into()));
                }
            }
            "tolerance" => {
                let (rel, abs) = match args {
                    [r] => (field!(parse_finite(r)), Tolerance64::default().abs()),
                    [r, a] => (field!(parse_finite(r)), field!(parse_finite(a))),
                    _ => return Err(err(no, "tolerance: expected `rel [abs]`".into())),
                };
                s.tolerance = Tolerance64::new(rel, abs).map_err(|e| err(no, format!("tolerance: {e}")))?;
            }
            "frames" => {
                s.frames = match args {
                    ["random", seed] => FrameSpec::Random(field!(parse_num(seed))),
                    ["adversarial", g, seed] => {
                        let group = match *g {
                            "auto" => None,
                            g => Some(
                                GroupKind::parse(g)
                                    .filter(GroupKind::is_3d)
                                    .ok_or_else(|| err(no, format!("frames: adversary group must be T, O, I or auto, got `{g}`")))?,
                            ),
                        };
                        FrameSpec::Adversarial(group, field!(parse_num(seed)))
                    }
                    ["explicit"] => {
                        explicit = true;
                        FrameSpec::Explicit(Vec::new())
                    }
                    _ => return Err(err(no, "frames: expected `random <seed>`, `adversarial <group> <seed>` or `explicit`".into())),
                }
            }
            "shell" => {
                let [gen @ .., r] = args else {
                    return Err(err(no, "shell: expected `<generator> <circumradius>`".into()));
                };
                if gen.is_empty() {
                    return Err(err(no, "shell: expected `<generator> <circumradius>`".into()));
                }
                let g: Generator = gen.join(" ").parse().map_err(|e| err(no, format!("shell: {e}")))?;
                let r = field!(parse_finite(r));
                if r <= 0.0 {
                    return Err(err(no, "shell: circumradius must be positive".into()));
                }
                s.shells.push((g, r));
            }
            "point" => s.points.push(field!(parse_xyz(args))),
            "frame" => {
                let nums = args.iter().map(|a| parse_finite(a)).collect::<std::result::Result<Vec<f64>, _>>();
                let nums = field!(nums);
                if nums.len() != 10 {
                    return Err(err(no, format!("frame: expected 9 rotation entries and a scale, got {} numbers", nums.len())));
                }
                let rot = Mat3::new([[nums[0], nums[1], nums[2]], [nums[3], nums[4], nums[5]], [nums[6], nums[7], nums[8]]]);
                Frame64::new(rot, nums[9], Point3d::zero(), &s.tolerance).map_err(|e| err(no, format!("frame: {e}")))?;
                frame_rows.push((no, (rot, nums[9])));
            }
            other => return Err(err(no, format!("unknown key `{other}`"))),
        }
    }

    if !frame_rows.is_empty() && !explicit {
        return Err(err(frame_rows[0].0, "frame: only allowed with `frames explicit`".into()));
    }
    let robots = s.robots().map_err(|e| err(0, e.to_string()))?;
    if robots.is_empty() {
        return Err(err(0, "no robots (add `shell` or `point` lines)".into()));
    }
    check_distinct(&robots, &s.tolerance).map_err(|_| err(0, "robot positions are not distinct".into()))?;
    if explicit {
        if frame_rows.len() != robots.len() {
            return Err(err(0, format!("{} frames for {} robots", frame_rows.len(), robots.len())));
        }
        s.frames = FrameSpec::Explicit(frame_rows.into_iter().map(|(_, f)| f).collect());
    }
    Ok(s)
}

fn parse_xyz(words: &[&str]) -> std::result::Result<Point3d, String> {
    match words {
        [x, y, z] => Ok(Point3d::new(parse_finite(x)?, parse_finite(y)?, parse_finite(z)?)),
        _ => Err(format!("expected `x y z`, got {} fields", words.len())),
    }
}

/// Canonical text of a scenario: fixed key order, shortest round-trip
/// numbers, no comments.
pub fn write_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SCENARIO_HEADER} {SCENARIO_VERSION}");
    let _ = writeln!(out, "algorithm {}", s.algorithm);
    let _ = writeln!(out, "max_cycles {}", s.max_cycles);
    let _ = writeln!(out, "tolerance {} {}", s.tolerance.rel(), s.tolerance.abs());
    match &s.frames {
        FrameSpec::Random(seed) => {
            let _ = writeln!(out, "frames random {seed}");
        }
        FrameSpec::Adversarial(g, seed) => {
            let g = g.map_or("auto".to_string(), |g| g.symbol());
            let _ = writeln!(out, "frames adversarial {g} {seed}");
        }
        FrameSpec::Explicit(_) => {
            let _ = writeln!(out, "frames explicit");
        }
    }
    for (g, r) in &s.shells {
        let _ = writeln!(out, "shell {g} {r}");
    }
    for p in &s.points {
        let _ = writeln!(out, "point {} {} {}", p.x, p.y, p.z);
    }
    if let FrameSpec::Explicit(list) = &s.frames {
        for (m, scale) in list {
            let r: Vec<String> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| m.row(i)[j].to_string()).collect();
            let _ = writeln!(out, "frame {} {scale}", r.join(" "));
        }
    }
    out
}

/// `write_scenario(parse_scenario(text))`.
pub fn normalize_scenario(text: &str) -> Result<String> {
    parse_scenario(text, "<scenario>").map(|s| write_scenario(&s))
}

/// Whitespace-separated `x y z` lines; blank lines and `#` comments skipped.
pub fn parse_point_list(text: &str, origin: &str) -> Result<Vec<Point3d>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line);
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let p = parse_xyz(&words).map_err(|message| CliError::Parse { origin: origin.to_string(), line: i + 1, message })?;
        out.push(p);
    }
    if out.is_empty() {
        return Err(CliError::Parse { origin: origin.to_string(), line: 0, message: "no points".into() });
    }
    Ok(out)
}

pub fn write_point_list(points: &[Point3d]) -> String {
    points.iter().map(|p| format!("{} {} {}\n", p.x, p.y, p.z)).collect()
}

/// Robots of a scenario, or a plain point list.
pub fn parse_points(text: &str, origin: &str) -> Result<Vec<Point3d>> {
    if is_scenario(text) {
        parse_scenario(text, origin)?.robots()
    } else {
        parse_point_list(text, origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DODECA: &str = "\
# twenty robots
planeform-scenario 1
shell dodecahedron 1   # unit circumradius
frames random 42
";

    #[test]
    fn defaults_fill_missing_keys() {
        let s = parse_scenario(DODECA, "t").unwrap();
        assert_eq!(s.shells, vec![(Generator::Dodecahedron, 1.0)]);
        assert_eq!(s.frames, FrameSpec::Random(42));
        assert_eq!(s.algorithm, AlgorithmSpec::PlaneFormation);
        assert_eq!(s.max_cycles, 10);
        assert_eq!(s.robots().unwrap().len(), 20);
    }

    #[test]
    fn normal_form() {
        let text = normalize_scenario(DODECA).unwrap();
        assert_eq!(
            text,
            "planeform-scenario 1\nalgorithm plane_formation\nmax_cycles 10\ntolerance 0.000000001 0.000000000001\n\
             frames random 42\nshell dodecahedron 1\n"
        );
        assert_eq!(normalize_scenario(&text).unwrap(), text);
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_scenario("planeform-scenario 1\nshell cube 1\nmax_cycles x\n", "s.scn").unwrap_err();
        assert_eq!(e.to_string(), "s.scn:3: max_cycles: bad number `x`");
        let e = parse_scenario("planeform-scenario 1\nshell cube 1\nshell cube 1\n", "s.scn").unwrap_err();
        assert!(e.to_string().contains("not distinct"));
        let e = parse_scenario("planeform-scenario 2\n", "s.scn").unwrap_err();
        assert!(e.to_string().contains("version"));
        let e = parse_scenario("planeform-scenario 1\nshell blob 1\n", "s.scn").unwrap_err();
        assert!(e.to_string().contains("unknown generator"));
    }

    #[test]
    fn explicit_frames_need_one_per_robot() {
        let head = "planeform-scenario 1\nframes explicit\npoint 0 0 0\npoint 1 0 0\n";
        let one = "frame 1 0 0 0 1 0 0 0 1 2\n";
        assert!(parse_scenario(&format!("{head}{one}"), "s").is_err());
        let s = parse_scenario(&format!("{head}{one}{one}"), "s").unwrap();
        let FrameSpec::Explicit(f) = &s.frames else { panic!() };
        assert_eq!(f.len(), 2);
        let bad = "frame 1 0 0 0 1 0 0 0 -1 1\n";
        assert!(parse_scenario(&format!("{head}{one}{bad}"), "s").is_err());
    }

    #[test]
    fn point_lists() {
        let p = parse_points("1 2 3\n\n# c\n-1 0.5 2e-3\n", "p").unwrap();
        assert_eq!(p, vec![Point3d::new(1.0, 2.0, 3.0), Point3d::new(-1.0, 0.5, 0.002)]);
        assert_eq!(parse_point_list(&write_point_list(&p), "p").unwrap(), p);
        assert!(parse_points("1 2\n", "p").unwrap_err().to_string().starts_with("p:1:"));
    }
}
