//! Point-set CSV format.
//!
//! One point per line, `d` comma-separated strictly positive numbers. A single
//! optional header line starting with `#` may precede the data. Blank lines are
//! ignored. Parse errors carry 1-based line numbers.

use std::fmt::{Display, Write};
use std::str::FromStr;

use crate::coord::Coord;
use crate::error::{Result, VolselError};
use crate::geometry::PointSet;

pub fn parse_points<T>(text: &str) -> Result<PointSet<T>>
where
    T: Coord + FromStr,
{
    let mut dim: Option<usize> = None;
    let mut coords: Vec<T> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if seen_content {
                return Err(parse_err(line_no, "header line must come first"));
            }
            seen_content = true;
            continue;
        }
        seen_content = true;
        let start = coords.len();
        for field in line.split(',') {
            let field = field.trim();
            let value: T = field
                .parse()
                .map_err(|_| parse_err(line_no, &format!("invalid number '{field}'")))?;
            if !value.is_valid() {
                return Err(parse_err(
                    line_no,
                    &format!("coordinate '{field}' is not strictly positive"),
                ));
            }
            coords.push(value);
        }
        let found = coords.len() - start;
        match dim {
            None => dim = Some(found),
            Some(d) if d != found => {
                return Err(parse_err(
                    line_no,
                    &format!("expected {d} coordinates, found {found}"),
                ))
            }
            Some(_) => {}
        }
    }
    let dim = dim.ok_or_else(|| parse_err(text.lines().count().max(1), "no points"))?;
    PointSet::from_flat(dim, coords)
}

fn parse_err(line: usize, message: &str) -> VolselError {
    VolselError::Parse {
        line,
        message: message.to_string(),
    }
}

/// Serializes a point set; `header`, when given, is written as a `#` line.
pub fn write_points<T>(set: &PointSet<T>, header: Option<&str>) -> String
where
    T: Coord + Display,
{
    let mut out = String::new();
    if let Some(h) = header {
        let _ = writeln!(out, "# {h}");
    }
    for p in set.iter() {
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{c}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_header() {
        let s: PointSet<f64> = parse_points("# x,y\n1,3\n2.5, 2\n\n3,1\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.point(1), &[2.5, 2.0]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_points::<f64>("1,2\n3,x\n").unwrap_err();
        assert_eq!(
            err,
            VolselError::Parse {
                line: 2,
                message: "invalid number 'x'".into()
            }
        );
        let err = parse_points::<f64>("# h\n1,2\n3\n").unwrap_err();
        assert!(matches!(err, VolselError::Parse { line: 3, .. }));
        let err = parse_points::<i64>("1,2\n0,1\n").unwrap_err();
        assert!(matches!(err, VolselError::Parse { line: 2, .. }));
        let err = parse_points::<i64>("1,2\n# late\n").unwrap_err();
        assert!(matches!(err, VolselError::Parse { line: 2, .. }));
        assert!(parse_points::<f64>("").is_err());
    }

    #[test]
    fn float_text_round_trips() {
        let s = PointSet::new(2, vec![vec![0.1, 1e-7], vec![123456.789, 3.0]]).unwrap();
        let back: PointSet<f64> = parse_points(&write_points(&s, Some("test"))).unwrap();
        assert_eq!(back, s);
    }
}
