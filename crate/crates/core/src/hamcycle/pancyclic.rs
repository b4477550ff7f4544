use std::collections::BTreeMap;

use serde::Serialize;

use super::construct_hamiltonian;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{find_cycle_of_length, validate_cycle, CycleWitness, IntersectionGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthSource {
    Hamiltonian,
    /// Dropped a vertex whose two cycle neighbours are adjacent.
    Shortcut,
    /// Split a longer cycle along a chord.
    Chord,
    Oracle,
}

/// Cycles of every length that could be produced, keyed by length.
#[derive(Debug, Clone, Serialize)]
pub struct PancyclicFamily {
    pub cycles: BTreeMap<usize, CycleWitness>,
    pub sources: BTreeMap<usize, LengthSource>,
    /// Lengths in `3..=V` with no cycle.
    pub gaps: Vec<usize>,
}

impl PancyclicFamily {
    pub fn is_complete(&self) -> bool {
        self.gaps.is_empty()
    }
}

struct Builder<'g> {
    g: &'g IntersectionGraph,
    cycles: BTreeMap<usize, Vec<usize>>,
    sources: BTreeMap<usize, LengthSource>,
}

impl Builder<'_> {
    fn record(&mut self, c: Vec<usize>, src: LengthSource) -> bool {
        if c.len() < 3 || self.cycles.contains_key(&c.len()) {
            return false;
        }
        self.sources.insert(c.len(), src);
        self.cycles.insert(c.len(), c);
        true
    }

    /// Position whose removal keeps a cycle, preferring low-degree vertices.
    fn shortcut(&self, c: &[usize]) -> Option<usize> {
        let l = c.len();
        if l <= 3 {
            return None;
        }
        (0..l)
            .filter(|&i| self.g.adjacent(c[(i + l - 1) % l], c[(i + 1) % l]))
            .min_by_key(|&i| (self.g.degree(c[i]), i))
    }

    fn shorten_from(&mut self, mut c: Vec<usize>) {
        while let Some(i) = self.shortcut(&c) {
            c.remove(i);
            let fresh = self.record(c.clone(), LengthSource::Shortcut);
            if !fresh && self.cycles.range(3..c.len()).count() == c.len() - 3 {
                break;
            }
        }
    }

    fn missing(&self, v: usize) -> Vec<usize> {
        (3..=v).filter(|l| !self.cycles.contains_key(l)).collect()
    }

    /// Splits every recorded cycle along its chords, keeping pieces of
    /// lengths not yet seen. Returns whether anything new was found.
    fn chord_pass(&mut self, v: usize) -> bool {
        let mut progress = false;
        let snapshot: Vec<Vec<usize>> = self.cycles.values().cloned().collect();
        for c in snapshot {
            let l = c.len();
            for i in 0..l {
                for j in i + 2..l {
                    if (i == 0 && j == l - 1) || !self.g.adjacent(c[i], c[j]) {
                        continue;
                    }
                    let inner = j - i + 1;
                    let outer = l - (j - i) + 1;
                    if !self.cycles.contains_key(&inner) {
                        let piece = c[i..=j].to_vec();
                        self.record(piece.clone(), LengthSource::Chord);
                        self.shorten_from(piece);
                        progress = true;
                    }
                    if !self.cycles.contains_key(&outer) {
                        let piece: Vec<usize> = c[j..].iter().chain(&c[..=i]).copied().collect();
                        self.record(piece.clone(), LengthSource::Chord);
                        self.shorten_from(piece);
                        progress = true;
                    }
                    if self.missing(v).is_empty() {
                        return progress;
                    }
                }
            }
        }
        progress
    }
}

/// Cycles of every length `3..=V`, starting from a constructed Hamiltonian
/// cycle.
///
/// Shorter cycles come from dropping a vertex whose neighbours on the cycle
/// are adjacent, and from splitting along chords. Lengths still missing are
/// searched exhaustively when `V <= caps.spectrum`; anything left over is
/// listed in `gaps`. Every cycle is validated.
pub fn pancyclic_family(g: &IntersectionGraph, caps: &Caps) -> Result<PancyclicFamily> {
    let v = g.vertex_count();
    if v < 3 {
        return Err(Error::Precondition(format!(
            "graph has {v} vertices, need at least 3"
        )));
    }
    let outcome = construct_hamiltonian(g, caps)?;
    let ham = match outcome.witness {
        Some(w) => w.vertex_indices,
        None => {
            return Err(Error::Precondition(format!(
                "{} is not known to be Hamiltonian ({})",
                g.spec(),
                outcome.status
            )))
        }
    };

    let mut b = Builder {
        g,
        cycles: BTreeMap::new(),
        sources: BTreeMap::new(),
    };
    b.record(ham.clone(), LengthSource::Hamiltonian);
    b.shorten_from(ham);
    while !b.missing(v).is_empty() && b.chord_pass(v) {}
    if v <= caps.spectrum {
        for len in b.missing(v) {
            if let Some(w) = find_cycle_of_length(g, len, caps)? {
                b.record(w.vertex_indices, LengthSource::Oracle);
            }
        }
    }

    let gaps = b.missing(v);
    let mut cycles = BTreeMap::new();
    for (len, c) in b.cycles {
        let w = CycleWitness::new(c);
        validate_cycle(g, &w)
            .map_err(|d| Error::Construction(format!("cycle of length {len}: {d}")))?;
        cycles.insert(len, w);
    }
    Ok(PancyclicFamily {
        cycles,
        sources: b.sources,
        gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_spectrum_oracle;
    use crate::rings::parse_ring_spec;

    fn graph(s: &str) -> IntersectionGraph {
        IntersectionGraph::build(&parse_ring_spec(s).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn three_fields() {
        let g = graph("GF(2) x GF(3) x GF(5)");
        let fam = pancyclic_family(&g, &Caps::default()).unwrap();
        assert_eq!(fam.cycles.keys().copied().collect::<Vec<_>>(), [3, 4, 5, 6]);
        let spectrum = cycle_spectrum_oracle(&g, &Caps::default()).unwrap();
        assert_eq!(spectrum.into_iter().collect::<Vec<_>>(), [3, 4, 5, 6]);
    }

    #[test]
    fn every_length_for_z8_squared() {
        let g = graph("Z8 x Z8");
        let fam = pancyclic_family(&g, &Caps::default()).unwrap();
        assert!(fam.is_complete());
        for (len, w) in &fam.cycles {
            assert_eq!(*len, w.len());
        }
        assert_eq!(fam.cycles.len(), 12);
        assert!(fam.sources.values().all(|s| *s != LengthSource::Oracle));
    }

    #[test]
    fn large_family_without_oracle() {
        let g = graph("chain(2,11) x chain(2,11)");
        let fam = pancyclic_family(&g, &Caps::default()).unwrap();
        assert!(fam.is_complete());
        assert_eq!(fam.cycles.len(), 140);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            pancyclic_family(&graph("Z12"), &Caps::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            pancyclic_family(&graph("Z8"), &Caps::default()),
            Err(Error::Precondition(_))
        ));
    }
}
