//! Zero ordinates on the critical line: computation, ingestion, S(t).

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::path::Path;

use super::critical::hardy_z;
use crate::error::{domain, Error, Result};

/// Largest height `find_zeros` accepts.
pub const FIND_ZEROS_MAX: f64 = 1e5;
const SCAN_STEP: f64 = 0.05;
const BISECTION_TOL: f64 = 1e-9;
const SPOT_CHECK: usize = 10;
const SPOT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroSource {
    Computed,
    Ingested,
}

/// Ascending positive ordinates γ of zeros 1/2 + iγ, complete on (0, t_max].
#[derive(Debug, Clone, Serialize)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: ZeroSource,
    t_max: f64,
}

impl ZeroTable {
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    /// Upper end of the covered range (0, t_max].
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Number of ordinates ≤ t.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// Ordinates in [lo, hi].
    pub fn window(&self, lo: f64, hi: f64) -> &[f64] {
        let a = self.ordinates.partition_point(|&g| g < lo);
        let b = self.ordinates.partition_point(|&g| g <= hi);
        &self.ordinates[a..b.max(a)]
    }

    /// Plain-text form readable by [`ingest_zero_table`].
    pub fn to_text(&self) -> String {
        let mut out = format!("# t_max={}\n", self.t_max);
        for g in &self.ordinates {
            out.push_str(&format!("{g:.10}\n"));
        }
        out
    }
}

/// Smooth part of the zero counting function, t/(2π)·log(t/(2πe)) + 7/8.
pub fn zero_count_main(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.875;
    }
    t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln() + 0.875
}

/// S(t) = N(t) − main(t) from the table's count.
pub fn s_of_t(t: f64, zeros: &ZeroTable) -> Result<f64> {
    if !(t > 0.0 && t <= zeros.t_max) {
        return domain(format!("t = {t} outside the covered range (0, {}]", zeros.t_max));
    }
    if zeros.ordinates.binary_search_by(|g| g.total_cmp(&t)).is_ok() {
        return domain(format!("S(t) is undefined at the ordinate {t}"));
    }
    Ok(zeros.count_up_to(t) as f64 - zero_count_main(t))
}

/// All zeros with 0 < γ ≤ t_max by a sign-change scan of Z, refined by bisection.
pub fn find_zeros(t_max: f64) -> Result<ZeroTable> {
    if !(t_max.is_finite() && t_max >= 0.0 && t_max <= FIND_ZEROS_MAX) {
        return domain(format!("find_zeros needs 0 <= t_max <= {FIND_ZEROS_MAX}, got {t_max}"));
    }
    let steps = (t_max / SCAN_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| (i as f64 * SCAN_STEP).min(t_max)).collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| hardy_z(t)).collect();

    let mut brackets = Vec::new();
    for i in 0..steps {
        if values[i] * values[i + 1] < 0.0 {
            brackets.push((grid[i], grid[i + 1]));
        } else if i > 0 && is_near_miss(values[i - 1], values[i], values[i + 1]) {
            densify(grid[i - 1], grid[i + 1], &mut brackets);
        }
    }
    brackets.sort_by(|a, b| a.0.total_cmp(&b.0));
    brackets.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    let mut ordinates: Vec<f64> = brackets.par_iter().map(|&(a, b)| bisect(a, b)).collect();
    ordinates.retain(|&g| g > 0.0 && g <= t_max);
    ordinates.dedup_by(|a, b| (*a - *b).abs() < BISECTION_TOL);

    let table = ZeroTable { ordinates, source: ZeroSource::Computed, t_max };
    audit_count(&table)?;
    Ok(table)
}

/// |Z| dips toward zero without a sign change between neighbouring samples.
fn is_near_miss(prev: f64, mid: f64, next: f64) -> bool {
    prev * mid > 0.0 && mid * next > 0.0 && mid.abs() < prev.abs() && mid.abs() < next.abs()
}

fn densify(a: f64, b: f64, brackets: &mut Vec<(f64, f64)>) {
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    let mut prev = hardy_z(a);
    for j in 1..=pieces {
        let t = a + h * j as f64;
        let v = hardy_z(t);
        if prev * v < 0.0 {
            brackets.push((t - h, t));
        }
        prev = v;
    }
}

fn bisect(mut a: f64, mut b: f64) -> f64 {
    let mut fa = hardy_z(a);
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let fm = hardy_z(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Flags a window where the count drifts from the main term by 2 or more on average.
fn audit_count(table: &ZeroTable) -> Result<()> {
    let width = 20.0;
    let mut lo = 0.0;
    while lo + width <= table.t_max {
        let samples = 40;
        let mean: f64 = (0..samples)
            .map(|j| {
                let t = lo + width * (j as f64 + 0.5) / samples as f64;
                table.count_up_to(t) as f64 - zero_count_main(t)
            })
            .sum::<f64>()
            / samples as f64;
        if mean.abs() >= 2.0 {
            return Err(Error::Integrity(format!(
                "zero count drifts from the main term by {mean:.2} on [{lo}, {}]; suspected missed zero",
                lo + width
            )));
        }
        lo += width;
    }
    Ok(())
}

/// Parses one ordinate per line; '#' starts a comment line.
/// A comment of the form `# t_max=<value>` sets the covered range.
pub fn parse_zero_table(text: &str) -> Result<ZeroTable> {
    let mut ordinates: Vec<f64> = Vec::new();
    let mut declared_max = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("t_max=") {
                let v: f64 = v.trim().parse().map_err(|_| Error::Format {
                    line: lineno,
                    msg: format!("bad t_max value {v:?}"),
                })?;
                declared_max = Some(v);
            }
            continue;
        }
        let g: f64 = line.parse().map_err(|_| Error::Format {
            line: lineno,
            msg: format!("not a number: {line:?}"),
        })?;
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::Format { line: lineno, msg: format!("ordinate must be positive, got {g}") });
        }
        if let Some(&last) = ordinates.last() {
            if g <= last {
                return Err(Error::Format {
                    line: lineno,
                    msg: format!("ordinates not strictly ascending ({g} after {last})"),
                });
            }
        }
        ordinates.push(g);
    }
    let last = ordinates.last().copied().unwrap_or(0.0);
    let t_max = declared_max.map_or(last, |m: f64| m.max(last));
    for &g in ordinates.iter().take(SPOT_CHECK) {
        if hardy_z(g - SPOT_TOL) * hardy_z(g + SPOT_TOL) >= 0.0 {
            return Err(Error::Integrity(format!("no sign change of Z within {SPOT_TOL} of {g}")));
        }
    }
    Ok(ZeroTable { ordinates, source: ZeroSource::Ingested, t_max })
}

/// Reads a zero table file.
pub fn ingest_zero_table(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Resource(format!("cannot read {}: {e}", path.display())))?;
    parse_zero_table(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hundred() {
        let z = find_zeros(100.0).unwrap();
        assert_eq!(z.len(), 29);
        assert!((z.ordinates()[0] - 14.134_725_141_734_694).abs() < 1e-8);
        assert!((z.ordinates()[28] - 98.831_194_218_193_69).abs() < 1e-7);
        assert!(z.ordinates().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn s_jumps_and_direct_value() {
        let z = find_zeros(40.0).unwrap();
        let (g1, g2) = (z.ordinates()[0], z.ordinates()[1]);
        let t = 0.5 * (g1 + g2);
        assert!((s_of_t(t, &z).unwrap() - (1.0 - zero_count_main(t))).abs() < 1e-15);
        let jump = s_of_t(g2 + 1e-7, &z).unwrap() - s_of_t(g2 - 1e-7, &z).unwrap();
        assert!((jump - 1.0).abs() < 1e-5);
        assert!(s_of_t(50.0, &z).is_err());
        assert!(s_of_t(g1, &z).is_err());
    }

    #[test]
    fn parse_examples() {
        let t = parse_zero_table("14.134725\n21.022040\n25.010858").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.source(), ZeroSource::Ingested);
        let e = parse_zero_table("").unwrap();
        assert!(e.is_empty() && e.t_max() == 0.0);
        match parse_zero_table("21.022040\n14.134725") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_zero_table("# header\n14.134725\nabc") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_zero_table("15.0"), Err(Error::Integrity(_))));
    }

    #[test]
    fn text_round_trip() {
        let z = find_zeros(60.0).unwrap();
        let back = parse_zero_table(&z.to_text()).unwrap();
        assert_eq!(back.len(), z.len());
        assert_eq!(back.t_max(), 60.0);
    }

    #[test]
    fn rejects_large_height() {
        assert!(find_zeros(2e5).is_err());
    }
}
