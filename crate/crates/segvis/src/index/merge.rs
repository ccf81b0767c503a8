use std::collections::BTreeMap;

use crate::visibility::VisibleBoundary;

/// A piece of a weak visibility answer in global indices. `chain` lists the
/// vertices the part decides; chains of different parts meet only at
/// diagonal endpoints. `piece` names the sub-segment the part was computed
/// for; only parts of the same sub-segment must agree on shared vertices.
#[derive(Debug, Clone)]
pub struct Part {
    pub boundary: VisibleBoundary,
    pub chain: Vec<usize>,
    pub piece: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MalformedParts {
    #[error("part has {got} vertices, expected {want}")]
    WrongSize { got: usize, want: usize },
    #[error("parts disagree on the visibility of vertex {0}")]
    Disagree(usize),
}

/// Union of the parts, checking that every shared interface vertex is
/// reported the same way by each part of one sub-segment that decides it.
pub fn merge_wvp(parts: &[Part], n: usize) -> Result<VisibleBoundary, MalformedParts> {
    let mut verdict: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut out = VisibleBoundary::empty(n);
    for part in parts {
        if part.boundary.n != n {
            return Err(MalformedParts::WrongSize {
                got: part.boundary.n,
                want: n,
            });
        }
        for &v in [part.chain.first(), part.chain.last()]
            .into_iter()
            .flatten()
        {
            let seen = part.boundary.has_vertex(v);
            if *verdict.entry((part.piece, v)).or_insert(seen) != seen {
                return Err(MalformedParts::Disagree(v));
            }
        }
        for (&j, iv) in &part.boundary.edges {
            out.edges.entry(j).or_default().extend(iv.iter().cloned());
        }
    }
    Ok(out.canonical())
}
