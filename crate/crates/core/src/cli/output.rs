//! Number formatting, CSV, SVG and text reports.

use std::fmt::Write as _;

use crate::fixed_points::ExistenceCase;
use crate::model::{Complex, State};
use crate::ns::{LyapunovSummary, NsReport};
use crate::simulation::{AttractorKind, OrbitResult, SweepResult};
use crate::stability::{StabilityClass, StabilityReport};

pub const ORBIT_HEADER: &str = "step,u,v";
pub const SWEEP_HEADER: &str =
    "theta,existence_case,u_star,v_star,stability,attractor_kind,tail_min_dist,tail_max_dist";

/// Shortest representation that round-trips; exponent form outside [1e-5, 1e16).
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Rounded to 15 significant digits, trailing zeros dropped.
pub fn sig15(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    let s = num(rounded);
    if s == "-0" { "0".into() } else { s }
}

pub fn complex15(z: Complex) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", sig15(z.re), sig15(z.im.abs()))
}

pub fn orbit_csv(orbit: &OrbitResult) -> String {
    let mut out = String::from(ORBIT_HEADER);
    out.push('\n');
    for (i, s) in orbit.tail.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", orbit.index_of(i), num(s.u()), num(s.v()));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvError(pub String);

impl std::fmt::Display for CsvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn lines_after_header<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, &'a str)>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == header => Ok(lines.filter(|(_, l)| !l.is_empty())),
        _ => Err(CsvError(format!("expected header `{header}`"))),
    }
}

fn field<T: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<T, CsvError> {
    s.parse().map_err(|_| CsvError(format!("line {}: bad {name} `{s}`", line + 1)))
}

fn opt_field<T: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<Option<T>, CsvError> {
    if s.is_empty() { Ok(None) } else { field(line, name, s).map(Some) }
}

/// (step, u, v) rows of an orbit CSV.
pub fn parse_orbit_csv(text: &str) -> Result<Vec<(usize, f64, f64)>, CsvError> {
    lines_after_header(text, ORBIT_HEADER)?
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 3 {
                return Err(CsvError(format!("line {}: expected 3 fields", i + 1)));
            }
            Ok((field(i, "step", f[0])?, field(i, "u", f[1])?, field(i, "v", f[2])?))
        })
        .collect()
}

/// One sweep CSV line. Blank fields are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCsvRow {
    pub theta: f64,
    pub existence_case: Option<ExistenceCase>,
    pub u_star: Option<f64>,
    pub v_star: Option<f64>,
    pub stability: Option<StabilityClass>,
    pub attractor_kind: Option<AttractorKind>,
    pub tail_min_dist: Option<f64>,
    pub tail_max_dist: Option<f64>,
}

pub fn sweep_rows(sweep: &SweepResult) -> Vec<SweepCsvRow> {
    sweep
        .rows
        .iter()
        .map(|row| SweepCsvRow {
            theta: row.theta,
            existence_case: row.case,
            u_star: row.e2.map(|p| p.u),
            v_star: row.e2.map(|p| p.v),
            stability: row.stability,
            attractor_kind: row.summary.map(|s| s.kind),
            tail_min_dist: row.summary.and_then(|s| s.min_distance),
            tail_max_dist: row.summary.and_then(|s| s.max_distance),
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepCsvRow]) -> String {
    fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
        v.map(f).unwrap_or_default()
    }
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            num(r.theta),
            opt(r.existence_case, |c| c.as_str().to_string()),
            opt(r.u_star, num),
            opt(r.v_star, num),
            opt(r.stability, |s| s.as_str().to_string()),
            opt(r.attractor_kind, |k| k.as_str().to_string()),
            opt(r.tail_min_dist, num),
            opt(r.tail_max_dist, num),
        );
    }
    out
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepCsvRow>, CsvError> {
    lines_after_header(text, SWEEP_HEADER)?
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(CsvError(format!("line {}: expected 8 fields", i + 1)));
            }
            let named = |s: &str, what: &str| CsvError(format!("line {}: bad {what} `{s}`", i + 1));
            Ok(SweepCsvRow {
                theta: field(i, "theta", f[0])?,
                existence_case: match f[1] {
                    "" => None,
                    s => Some(ExistenceCase::parse(s).ok_or_else(|| named(s, "existence_case"))?),
                },
                u_star: opt_field(i, "u_star", f[2])?,
                v_star: opt_field(i, "v_star", f[3])?,
                stability: match f[4] {
                    "" => None,
                    s => Some(StabilityClass::parse(s).ok_or_else(|| named(s, "stability"))?),
                },
                attractor_kind: match f[5] {
                    "" => None,
                    s => Some(AttractorKind::parse(s).ok_or_else(|| named(s, "attractor_kind"))?),
                },
                tail_min_dist: opt_field(i, "tail_min_dist", f[6])?,
                tail_max_dist: opt_field(i, "tail_max_dist", f[7])?,
            })
        })
        .collect()
}

/// Plain scatter plot of the tail.
pub fn tail_svg(tail: &[State]) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 20.0;
    let (mut u0, mut u1, mut v0, mut v1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for s in tail {
        u0 = u0.min(s.u());
        u1 = u1.max(s.u());
        v0 = v0.min(s.v());
        v1 = v1.max(s.v());
    }
    let du = (u1 - u0).max(1e-12);
    let dv = (v1 - v0).max(1e-12);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">\n",
        w = SIZE + 2.0 * PAD
    );
    for s in tail {
        let x = PAD + (s.u() - u0) / du * SIZE;
        let y = PAD + (v1 - s.v()) / dv * SIZE;
        let _ = writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"0.8\"/>");
    }
    out.push_str("</svg>\n");
    out
}

pub fn analyze_text(theta: f64, case: ExistenceCase, reports: &[StabilityReport]) -> String {
    let mut out = format!("theta = {}\nexistence case: {}\n", sig15(theta), case);
    for rep in reports {
        let _ = writeln!(out, "{} ({}, {}) {}", rep.label, sig15(rep.u), sig15(rep.v), rep.class);
    }
    out
}

fn route_text(out: &mut String, name: &str, s: &LyapunovSummary) {
    let lc = &s.coefficients;
    let _ = writeln!(out, "[{name}]");
    for (k, z) in [("L20", lc.l20), ("L11", lc.l11), ("L02", lc.l02), ("L21", lc.l21)] {
        let _ = writeln!(out, "{k} = {}", complex15(z));
    }
    let _ = writeln!(out, "L = {}", sig15(s.l));
}

pub fn ns_text(rep: &NsReport) -> String {
    let cp = &rep.critical;
    let mut out = String::new();
    let _ = writeln!(out, "theta0 = {}", sig15(cp.theta0));
    let _ = writeln!(out, "E2 = ({}, {})", sig15(cp.u_star), sig15(cp.v_star));
    let _ = writeln!(out, "lambda1 = {}", complex15(rep.lambda1));
    let _ = writeln!(out, "lambda2 = {}", complex15(rep.lambda2));
    let _ = writeln!(out, "transversality = {}", sig15(rep.d_modulus));
    let _ = writeln!(out, "nondegenerate = {}", rep.nondegenerate);
    route_text(&mut out, "exact", &rep.exact);
    route_text(&mut out, "reference", &rep.reference);
    let _ = writeln!(out, "routes agree in sign = {}", rep.routes_agree);
    let _ = writeln!(out, "verdict: {}", rep.verdict);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Parameters;
    use crate::simulation::orbit;

    #[test]
    fn significant_digits() {
        assert_eq!(sig15(4.0 / 9.0), "0.444444444444444");
        assert_eq!(sig15(0.5), "0.5");
        assert_eq!(sig15(0.49999999999999994), "0.5");
        assert_eq!(sig15(-7.0 / 24.0), "-0.291666666666667");
        assert_eq!(sig15(-0.0), "0");
        assert_eq!(complex15(Complex::new(0.5, -0.25)), "0.5 - 0.25i");
    }

    #[test]
    fn shortest_round_trip() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(7.736146602588699e-13), "7.736146602588699e-13");
        assert_eq!(num(-2.5e20), "-2.5e20");
        for x in [1.0 / 3.0, 1e-300, 123456.789, -4.9e-5, 1e16] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn orbit_csv_single_row() {
        let p = Parameters::new(1.0, 4.0, 10.0 / 9.0, 0.45).unwrap();
        let orb = orbit(&p, State::new(1.0, 0.0).unwrap(), 1, 0);
        assert_eq!(orbit_csv(&orb), "step,u,v\n0,1,0\n");
    }

    #[test]
    fn orbit_csv_round_trip() {
        let p = Parameters::new(1.0, 4.0, 10.0 / 9.0, 0.44).unwrap();
        let orb = orbit(&p, State::new(0.48, 0.74).unwrap(), 300, 100);
        let rows = parse_orbit_csv(&orbit_csv(&orb)).unwrap();
        assert_eq!(rows.len(), 200);
        for ((k, u, v), (i, s)) in rows.iter().zip(orb.tail.iter().enumerate()) {
            assert_eq!((*k, *u, *v), (orb.index_of(i), s.u(), s.v()));
        }
        assert!(parse_orbit_csv("u,v\n").is_err());
        assert!(parse_orbit_csv("step,u,v\n1,2\n").is_err());
    }

    #[test]
    fn sweep_csv_blank_fields() {
        let row = SweepCsvRow {
            theta: 3.5,
            existence_case: Some(ExistenceCase::NoPositive),
            u_star: None,
            v_star: None,
            stability: None,
            attractor_kind: None,
            tail_min_dist: None,
            tail_max_dist: None,
        };
        let text = sweep_csv(std::slice::from_ref(&row));
        assert_eq!(text, format!("{SWEEP_HEADER}\n3.5,NoPositive,,,,,,\n"));
        assert_eq!(parse_sweep_csv(&text).unwrap(), vec![row]);
    }
}
