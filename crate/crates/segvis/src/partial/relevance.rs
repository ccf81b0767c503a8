//! Which tree edges can lead into the far side `L` of a diagonal.

use serde::{Deserialize, Serialize};

use crate::geometry::Coord;

use super::view::{SecondaryEdgeTable, Views, Wedge};

/// The two sides of a diagonal of an `m`-gon. `L` is the closed chain of
/// `l_len` edges starting at vertex `l_start`; `R` is the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sides {
    pub m: usize,
    pub l_start: usize,
    pub l_len: usize,
}

impl Sides {
    /// Sides of the split `a < b`: child 0 is `a..=b`.
    pub fn of_split(m: usize, a: usize, b: usize, l_is_first: bool) -> Sides {
        if l_is_first {
            Sides {
                m,
                l_start: a,
                l_len: b - a,
            }
        } else {
            Sides {
                m,
                l_start: b,
                l_len: m - b + a,
            }
        }
    }

    pub fn l_end(&self) -> usize {
        (self.l_start + self.l_len) % self.m
    }

    pub fn r_start(&self) -> usize {
        self.l_end()
    }

    pub fn r_len(&self) -> usize {
        self.m - self.l_len
    }

    /// Diagonal endpoints `(l_start, l_end)`.
    pub fn diagonal(&self) -> (usize, usize) {
        (self.l_start, self.l_end())
    }

    pub fn in_l(&self, v: usize) -> bool {
        (v + self.m - self.l_start) % self.m <= self.l_len
    }

    /// Edge `j` (from `j` to `j + 1`) belongs to the `R` chain.
    pub fn edge_in_r(&self, j: usize) -> bool {
        (j + self.m - self.r_start()) % self.m < self.r_len()
    }

    pub fn in_r(&self, v: usize) -> bool {
        (v + self.m - self.r_start()) % self.m <= self.r_len()
    }
}

fn cyc(x: Coord, m: usize) -> Coord {
    if x.signum() < 0 {
        &x + &Coord::int(m as i64)
    } else {
        x
    }
}

/// `next[v][i]` is the first index `j >= i` whose candidate `c` of `v` is a
/// relevant child: `c` lies in `L`, or the pocket behind `c` seen from `v`
/// holds a vertex of `L`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Relevance {
    next: Vec<Vec<u32>>,
}

impl Relevance {
    pub fn build(views: &Views, table: &SecondaryEdgeTable, sides: &Sides) -> Relevance {
        let m = views.len();
        let next = (0..m)
            .map(|v| {
                let c = views.candidates(v);
                let mut row = vec![c.len() as u32; c.len() + 1];
                for i in (0..c.len()).rev() {
                    let w = c[i] as usize;
                    let wedge = table.wedge(w, table.back(v, i));
                    row[i] = if pocket_reaches_l(views, sides, v, w, wedge) {
                        i as u32
                    } else {
                        row[i + 1]
                    };
                }
                row
            })
            .collect();
        Relevance { next }
    }

    /// First relevant index `>= i` in the candidate list of `v`.
    pub fn next(&self, v: usize, i: usize) -> usize {
        self.next[v][i] as usize
    }

    pub fn is_relevant(&self, v: usize, i: usize) -> bool {
        self.next(v, i) == i
    }

    /// Relevant candidate indices of `v` inside `w`.
    pub fn within(&self, v: usize, w: Wedge) -> impl Iterator<Item = usize> + '_ {
        let end = w.end as usize;
        let mut i = self.next(v, w.start as usize);
        std::iter::from_fn(move || {
            if i >= end {
                return None;
            }
            let out = i;
            i = self.next(v, i + 1);
            Some(out)
        })
    }

    pub fn any_within(&self, v: usize, w: Wedge) -> bool {
        self.next(v, w.start as usize) < w.end as usize
    }
}

/// Whether `w`, as a child of `v`, is in `L` or has a descendant in `L`.
fn pocket_reaches_l(
    views: &Views,
    sides: &Sides,
    v: usize,
    w: usize,
    wedge: Option<Wedge>,
) -> bool {
    if sides.in_l(w) {
        return true;
    }
    let Some(wedge) = wedge else { return false };
    let m = sides.m;
    let d = views.ahead(w, views.point(v));
    let z = views
        .hit(w, &d)
        .expect("a vertex with children has an interior extension");
    let wc = Coord::int(w as i64);
    if wedge.turn < 0 {
        let first = (sides.l_start + m - w) % m;
        Coord::int(first as i64) < cyc(&z - &wc, m)
    } else {
        let first = (w + m - sides.l_end()) % m;
        Coord::int(first as i64) < cyc(&wc - &z, m)
    }
}
