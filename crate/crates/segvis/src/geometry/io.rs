//! Plain-text polygon files: a count line, then one `x y` pair per line.
//! Coordinates may be integers, decimals or `p/q`; `#` starts a comment line.

use super::coord::Coord;
use super::point::{Point, Segment};
use super::polygon::SimplePolygon;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} vertices, found {found}")]
    Count { expected: usize, found: usize },
    #[error("empty input")]
    Empty,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses vertices without validating the polygon.
pub fn parse_polygon(text: &str) -> Result<Vec<Point>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or(ParseError::Empty)?;
    let n: usize = first
        .parse()
        .map_err(|_| syntax(ln, format!("bad vertex count {first:?}")))?;
    let mut out = Vec::with_capacity(n);
    for (ln, l) in lines {
        out.push(parse_point_line(l).map_err(|m| syntax(ln, m))?);
    }
    if out.len() != n {
        return Err(ParseError::Count {
            expected: n,
            found: out.len(),
        });
    }
    Ok(out)
}

fn parse_point_line(l: &str) -> Result<Point, String> {
    let parts: Vec<&str> = l.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(format!("expected two coordinates, got {l:?}"));
    }
    let x: Coord = parts[0].parse().map_err(|e| format!("{e}"))?;
    let y: Coord = parts[1].parse().map_err(|e| format!("{e}"))?;
    Ok(Point::new(x, y))
}

pub fn format_polygon(poly: &SimplePolygon) -> String {
    let mut s = format!("{}\n", poly.len());
    for v in poly.vertices() {
        s.push_str(&format!("{} {}\n", v.x, v.y));
    }
    s
}

/// Parses `x1 y1 x2 y2`.
pub fn parse_segment(text: &str) -> Result<Segment, String> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(format!("expected four coordinates, got {}", parts.len()));
    }
    let c: Result<Vec<Coord>, _> = parts.iter().map(|s| s.parse::<Coord>()).collect();
    let c = c.map_err(|e| e.to_string())?;
    Ok(Segment::new(
        Point::new(c[0].clone(), c[1].clone()),
        Point::new(c[2].clone(), c[3].clone()),
    ))
}
