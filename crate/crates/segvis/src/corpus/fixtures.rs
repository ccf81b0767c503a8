//! Named fixture polygons, stored as text files in the polygon format.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::io::parse_polygon;
use crate::geometry::{find_collinear_triple, validate_polygon, Point, SimplePolygon};

pub const SQUARE: &str = include_str!("../../fixtures/square.poly");
pub const LSHAPE: &str = include_str!("../../fixtures/lshape.poly");
pub const SPIKE: &str = include_str!("../../fixtures/spike.poly");
pub const COMB8: &str = include_str!("../../fixtures/comb8.poly");

pub const NAMES: [&str; 4] = ["SQUARE", "LSHAPE", "SPIKE", "COMB-8"];

fn load(text: &str) -> SimplePolygon {
    validate_polygon(&parse_polygon(text).expect("fixture parses")).expect("fixture is valid")
}

pub fn fixture(name: &str) -> Option<SimplePolygon> {
    let text = match name {
        "SQUARE" => SQUARE,
        "LSHAPE" => LSHAPE,
        "SPIKE" => SPIKE,
        "COMB-8" => COMB8,
        _ => return None,
    };
    Some(load(text))
}

pub fn all() -> Vec<(&'static str, SimplePolygon)> {
    NAMES.iter().map(|&n| (n, fixture(n).unwrap())).collect()
}

/// A comb with `k` teeth over a common base. Teeth are jittered until no three
/// vertices are collinear; the jitter is deterministic in `k`.
pub fn comb(k: usize) -> SimplePolygon {
    assert!(k >= 1);
    for attempt in 0u64.. {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt);
        let k = k as i64;
        let mut v = vec![Point::int(0, 0), Point::int(40 * k, -3)];
        for i in (0..k).rev() {
            v.push(Point::int(
                40 * i + 31 + rng.gen_range(0..=3),
                100 + rng.gen_range(0..=6),
            ));
            v.push(Point::int(
                40 * i + 9 - rng.gen_range(0..=2),
                97 + rng.gen_range(0..=6),
            ));
            if i > 0 {
                v.push(Point::int(
                    40 * i + 1 + rng.gen_range(0..=2),
                    30 + rng.gen_range(0..=9),
                ));
            }
        }
        if find_collinear_triple(&v).is_none() {
            if let Ok(p) = validate_polygon(&v) {
                return p;
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::io::format_polygon;

    #[test]
    fn fixtures_load() {
        for (name, p) in all() {
            assert!(p.double_area().signum() > 0, "{name}");
        }
        assert_eq!(fixture("SPIKE").unwrap().reflex_count(), 1);
        assert!(find_collinear_triple(fixture("SPIKE").unwrap().vertices()).is_none());
        assert!(fixture("NOPE").is_none());
    }

    #[test]
    fn comb8_file_matches_generator() {
        let body: String = COMB8
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(body, format_polygon(&comb(8)));
        assert_eq!(comb(8).reflex_count(), 7);
    }
}
