//! Hamiltonian cycles of intersection graphs, and cycles of every length.

mod grid;
mod pancyclic;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{hamiltonian_oracle, validate_cycle, CycleWitness, IntersectionGraph};
use crate::rings::{BlockIdeal, BlockSpec, Ideal, RingSpec};

pub use grid::{grid_snake_cycle, splice_boundary, Cell, FactorMap, GridCycle, GridDefect};
pub use pancyclic::{pancyclic_family, LengthSource, PancyclicFamily};

/// Which family of the non-Hamiltonian list a spec falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionTag {
    /// A field, or a product of two fields.
    Fields,
    /// A local ring with a single nontrivial ideal, alone or next to a field.
    SingleIdealLocal,
    /// A local ring whose ideals form a chain of length three.
    ChainOfThree,
}

impl fmt::Display for ExceptionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionTag::Fields => "(1)",
            ExceptionTag::SingleIdealLocal => "(2)",
            ExceptionTag::ChainOfThree => "(3)",
        })
    }
}

impl Serialize for ExceptionTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianPrediction {
    Hamiltonian,
    NotHamiltonian(ExceptionTag),
    /// A single block with a vector-space maximal ideal.
    OpenQuestion,
}

impl HamiltonianPrediction {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            HamiltonianPrediction::Hamiltonian => Some(true),
            HamiltonianPrediction::NotHamiltonian(_) => Some(false),
            HamiltonianPrediction::OpenQuestion => None,
        }
    }

    pub fn tag(&self) -> Option<ExceptionTag> {
        match self {
            HamiltonianPrediction::NotHamiltonian(t) => Some(*t),
            _ => None,
        }
    }
}

impl Serialize for HamiltonianPrediction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HamiltonianPrediction", 2)?;
        match self.as_bool() {
            Some(b) => st.serialize_field("predicted", &b)?,
            None => st.serialize_field("predicted", "open_question")?,
        }
        st.serialize_field("exception_tag", &self.tag())?;
        st.end()
    }
}

fn is_chain(b: &BlockSpec, len: u32) -> bool {
    matches!(b, BlockSpec::Chain { k, .. } if *k == len)
}

/// Reads the non-Hamiltonian list off the block structure.
pub fn predict_hamiltonian(spec: &RingSpec) -> HamiltonianPrediction {
    use HamiltonianPrediction::*;
    let b = &spec.blocks;
    match b.as_slice() {
        [x] if x.is_field() => NotHamiltonian(ExceptionTag::Fields),
        [x, y] if x.is_field() && y.is_field() => NotHamiltonian(ExceptionTag::Fields),
        [x] if is_chain(x, 2) => NotHamiltonian(ExceptionTag::SingleIdealLocal),
        [x, y] if (x.is_field() && is_chain(y, 2)) || (is_chain(x, 2) && y.is_field()) => {
            NotHamiltonian(ExceptionTag::SingleIdealLocal)
        }
        [x] if is_chain(x, 3) => NotHamiltonian(ExceptionTag::ChainOfThree),
        [BlockSpec::VsLocal { .. }] => OpenQuestion,
        _ => Hamiltonian,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionStatus {
    Cycle,
    NotHamiltonianByTheorem,
    Unknown,
}

impl fmt::Display for ConstructionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionStatus::Cycle => "cycle",
            ConstructionStatus::NotHamiltonianByTheorem => "not_hamiltonian_by_theorem",
            ConstructionStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    TheoremException(ExceptionTag),
    CompleteGraph,
    GridSplice { m: usize, n: usize },
    ThreeFields,
    PathLift,
    Oracle,
    None,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::TheoremException(t) => write!(f, "exception {t}"),
            Strategy::CompleteGraph => f.write_str("complete graph"),
            Strategy::GridSplice { m, n } => write!(f, "grid+splice ({m}x{n})"),
            Strategy::ThreeFields => f.write_str("three fields"),
            Strategy::PathLift => f.write_str("path lift"),
            Strategy::Oracle => f.write_str("oracle"),
            Strategy::None => f.write_str("none"),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionOutcome {
    pub status: ConstructionStatus,
    pub witness: Option<CycleWitness>,
    pub strategy: Strategy,
    pub note: Option<String>,
}

impl ConstructionOutcome {
    fn cycle(g: &IntersectionGraph, w: CycleWitness, strategy: Strategy) -> Result<Self> {
        if w.len() != g.vertex_count() {
            return Err(Error::Construction(format!(
                "{strategy} produced {} of {} vertices",
                w.len(),
                g.vertex_count()
            )));
        }
        validate_cycle(g, &w).map_err(|d| Error::Construction(format!("{strategy}: {d}")))?;
        Ok(ConstructionOutcome {
            status: ConstructionStatus::Cycle,
            witness: Some(w),
            strategy,
            note: None,
        })
    }

    fn unknown(strategy: Strategy, note: impl Into<String>) -> Self {
        ConstructionOutcome {
            status: ConstructionStatus::Unknown,
            witness: None,
            strategy,
            note: Some(note.into()),
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.status == ConstructionStatus::Cycle
    }
}

/// Builds a Hamiltonian cycle from the ring structure where one is known to
/// exist, and falls back to the exhaustive oracle within `caps.hamiltonian`.
///
/// Every returned cycle has been checked with [`validate_cycle`].
pub fn construct_hamiltonian(g: &IntersectionGraph, caps: &Caps) -> Result<ConstructionOutcome> {
    let spec = g.spec();
    let prediction = predict_hamiltonian(spec);
    if let HamiltonianPrediction::NotHamiltonian(tag) = prediction {
        return Ok(ConstructionOutcome {
            status: ConstructionStatus::NotHamiltonianByTheorem,
            witness: None,
            strategy: Strategy::TheoremException(tag),
            note: None,
        });
    }

    if let [BlockSpec::Chain { k, .. }] = spec.blocks.as_slice() {
        if *k >= 4 {
            let w = CycleWitness::new((0..g.vertex_count()).collect());
            return ConstructionOutcome::cycle(g, w, Strategy::CompleteGraph);
        }
    }

    if let Some(side_a) = best_bipartition(spec) {
        let fm = FactorMap::new(g, &side_a)?;
        let gc = grid_snake_cycle(fm.m, fm.n)?;
        let w = splice_boundary(&gc, g, &fm)?;
        return ConstructionOutcome::cycle(g, w, Strategy::GridSplice { m: fm.m, n: fm.n });
    }

    if spec.blocks.len() == 3 && spec.is_reduced() {
        let w = three_field_cycle(g)?;
        return ConstructionOutcome::cycle(g, w, Strategy::ThreeFields);
    }

    if spec.blocks.len() >= 2 {
        for field_pos in (0..spec.blocks.len())
            .rev()
            .filter(|&p| spec.blocks[p].is_field())
        {
            let rest: Vec<usize> = (0..spec.blocks.len()).filter(|&p| p != field_pos).collect();
            if let Some(path) = hamiltonian_path_of(&spec.sub_spec(&rest), caps)? {
                let w = lift_path_to_cycle(g, field_pos, &path)?;
                return ConstructionOutcome::cycle(g, w, Strategy::PathLift);
            }
        }
    }

    let open = prediction == HamiltonianPrediction::OpenQuestion;
    let mut outcome = if g.vertex_count() <= caps.hamiltonian {
        match hamiltonian_oracle(g, caps)? {
            Some(w) => ConstructionOutcome::cycle(g, w, Strategy::Oracle)?,
            None => ConstructionOutcome::unknown(
                Strategy::Oracle,
                "exhaustive oracle: no Hamiltonian cycle",
            ),
        }
    } else {
        ConstructionOutcome::unknown(
            Strategy::None,
            format!(
                "no construction applies and {} vertices exceed the oracle cap {}",
                g.vertex_count(),
                caps.hamiltonian
            ),
        )
    };
    if open {
        let base = outcome.note.take();
        let note = "open question: single block with a vector-space maximal ideal; the oracle is authoritative";
        outcome.note = Some(match base {
            Some(b) => format!("{note}; {b}"),
            None => note.to_string(),
        });
    }
    Ok(outcome)
}

/// Builds the graph of `spec` and runs [`construct_hamiltonian`].
pub fn construct_hamiltonian_for(
    spec: &RingSpec,
    caps: &Caps,
) -> Result<(IntersectionGraph, ConstructionOutcome)> {
    let g = IntersectionGraph::build(spec, caps)?;
    let outcome = construct_hamiltonian(&g, caps)?;
    Ok((g, outcome))
}

/// The block split used by the grid construction: block 0 on the first
/// side, both sides with at least three ideals, the smaller side as large
/// as possible. Ties go to the numerically smallest membership mask.
pub fn best_bipartition(spec: &RingSpec) -> Option<Vec<usize>> {
    let b = spec.blocks.len();
    if !(2..=20).contains(&b) {
        return None;
    }
    let count = |mask: u32| -> u128 {
        (0..b).filter(|p| mask >> p & 1 == 1).fold(1u128, |acc, p| {
            acc.saturating_mul(spec.blocks[p].ideal_count())
        })
    };
    let full = (1u32 << b) - 1;
    let mut best: Option<(u128, u32)> = None;
    for mask in (1..full).filter(|m| m & 1 == 1) {
        let (ca, cb) = (count(mask), count(full ^ mask));
        if ca < 3 || cb < 3 {
            continue;
        }
        let small = ca.min(cb);
        if best.is_none_or(|(s, _)| small > s) {
            best = Some((small, mask));
        }
    }
    best.map(|(_, mask)| (0..b).filter(|p| mask >> p & 1 == 1).collect())
}

fn three_field_cycle(g: &IntersectionGraph) -> Result<CycleWitness> {
    let spec = g.spec();
    let pick = |on: [bool; 3]| -> Result<usize> {
        let coords = spec
            .blocks
            .iter()
            .zip(on)
            .map(|(&b, full)| {
                if full {
                    BlockIdeal::unit(b)
                } else {
                    BlockIdeal::zero(b)
                }
            })
            .collect();
        let ideal = Ideal::new(coords);
        g.index_of(&ideal)
            .ok_or_else(|| Error::Construction(format!("{ideal} is not a vertex")))
    };
    let order = [
        [true, false, false],
        [true, true, false],
        [false, true, false],
        [false, true, true],
        [false, false, true],
        [true, false, true],
    ];
    Ok(CycleWitness::new(
        order.into_iter().map(pick).collect::<Result<_>>()?,
    ))
}

/// A Hamiltonian path of `Γ(spec)` as ideals, when one can be built: any
/// order of a complete graph, or a constructed cycle with one edge dropped.
fn hamiltonian_path_of(spec: &RingSpec, caps: &Caps) -> Result<Option<Vec<Ideal>>> {
    let g = IntersectionGraph::build(spec, caps)?;
    let v = g.vertex_count();
    if v < 2 {
        return Ok(None);
    }
    if g.edge_count() == v * (v - 1) / 2 {
        return Ok(Some(g.vertices().to_vec()));
    }
    let outcome = construct_hamiltonian(&g, caps)?;
    Ok(outcome.witness.map(|w| {
        w.vertex_indices
            .iter()
            .map(|&i| g.vertices()[i].clone())
            .collect()
    }))
}

/// Turns a Hamiltonian path `s_1, ..., s_k` of `Γ(S)` into a Hamiltonian
/// cycle of `Γ(S ⊕ F)`, where `F` is the field block at `field_pos` of
/// `g`'s spec and `S` is made of the other blocks in order.
///
/// The cycle is `(S,0), (s_1,0), (s_1,F), (s_2,F), (s_2,0), (s_3,0), ...`
/// with `(0,F)` placed between `(s_1,F)` and `(s_2,F)`.
pub fn lift_path_to_cycle(
    g: &IntersectionGraph,
    field_pos: usize,
    path: &[Ideal],
) -> Result<CycleWitness> {
    let spec = g.spec();
    let field = *spec
        .blocks
        .get(field_pos)
        .ok_or_else(|| Error::InvalidParameter(format!("no block at position {field_pos}")))?;
    if !field.is_field() {
        return Err(Error::Precondition(format!("block {field} is not a field")));
    }
    let rest: Vec<usize> = (0..spec.blocks.len()).filter(|&p| p != field_pos).collect();
    let s_spec = spec.sub_spec(&rest);
    if path.len() < 2 {
        return Err(Error::Precondition(format!(
            "a Hamiltonian path with {} vertex cannot be lifted: the product with a field is not Hamiltonian",
            path.len()
        )));
    }
    for w in path.windows(2) {
        if !w[0].meets(&w[1])? {
            return Err(Error::Precondition(format!(
                "{} and {} are not adjacent",
                w[0], w[1]
            )));
        }
    }
    for s in path {
        if !s.belongs_to(&s_spec) || !s.is_nontrivial() {
            return Err(Error::Precondition(format!(
                "{s} is not a vertex of the path's graph"
            )));
        }
    }

    let with_field = |s: &Ideal, full: bool| -> Result<usize> {
        let mut coords = s.coords.clone();
        let f = if full {
            BlockIdeal::unit(field)
        } else {
            BlockIdeal::zero(field)
        };
        coords.insert(field_pos, f);
        let ideal = Ideal::new(coords);
        g.index_of(&ideal)
            .ok_or_else(|| Error::Construction(format!("{ideal} is not a vertex")))
    };

    let mut seq = vec![with_field(&Ideal::unit(&s_spec), false)?];
    for (i, s) in path.iter().enumerate() {
        let (first, second) = if i % 2 == 0 {
            (false, true)
        } else {
            (true, false)
        };
        seq.push(with_field(s, first)?);
        seq.push(with_field(s, second)?);
        if i == 0 {
            seq.push(with_field(&Ideal::zero(&s_spec), true)?);
        }
    }
    let w = CycleWitness::new(seq);
    if w.len() != g.vertex_count() {
        return Err(Error::Precondition(format!(
            "path covers {} of {} vertices after lifting",
            w.len(),
            g.vertex_count()
        )));
    }
    validate_cycle(g, &w).map_err(|d| Error::Construction(format!("path lift: {d}")))?;
    Ok(w)
}

/// Serializable record of one cycle with its spec and ideal labels.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub spec: String,
    pub length: usize,
    pub vertices: Vec<String>,
}

impl WitnessJson {
    pub fn new(g: &IntersectionGraph, w: &CycleWitness) -> Self {
        WitnessJson {
            spec: g.spec().to_string(),
            length: w.len(),
            vertices: w.labels(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring_spec;

    fn spec(s: &str) -> RingSpec {
        parse_ring_spec(s).unwrap()
    }

    fn construct(s: &str) -> (IntersectionGraph, ConstructionOutcome) {
        construct_hamiltonian_for(&spec(s), &Caps::default()).unwrap()
    }

    #[test]
    fn predictions() {
        use HamiltonianPrediction::*;
        assert_eq!(
            predict_hamiltonian(&spec("GF(2) x GF(3)")),
            NotHamiltonian(ExceptionTag::Fields)
        );
        assert_eq!(
            predict_hamiltonian(&spec("GF(7)")),
            NotHamiltonian(ExceptionTag::Fields)
        );
        assert_eq!(
            predict_hamiltonian(&spec("Z8")),
            NotHamiltonian(ExceptionTag::ChainOfThree)
        );
        assert_eq!(
            predict_hamiltonian(&spec("Z9")),
            NotHamiltonian(ExceptionTag::SingleIdealLocal)
        );
        assert_eq!(
            predict_hamiltonian(&spec("Z12")),
            NotHamiltonian(ExceptionTag::SingleIdealLocal)
        );
        assert_eq!(
            predict_hamiltonian(&spec("Z4 x GF(5)")),
            NotHamiltonian(ExceptionTag::SingleIdealLocal)
        );
        assert_eq!(predict_hamiltonian(&spec("vs(2,2)")), OpenQuestion);
        assert_eq!(predict_hamiltonian(&spec("Z16")), Hamiltonian);
        assert_eq!(predict_hamiltonian(&spec("Z8 x GF(2)")), Hamiltonian);
        assert_eq!(
            predict_hamiltonian(&spec("GF(2) x GF(2) x GF(2)")),
            Hamiltonian
        );
        assert_eq!(
            NotHamiltonian(ExceptionTag::ChainOfThree)
                .tag()
                .unwrap()
                .to_string(),
            "(3)"
        );
        let json = serde_json::to_value(OpenQuestion).unwrap();
        assert_eq!(json["predicted"], "open_question");
    }

    #[test]
    fn three_fields_use_the_six_cycle() {
        let (g, out) = construct("GF(2) x GF(3) x GF(5)");
        assert_eq!(out.strategy, Strategy::ThreeFields);
        let labels = out.witness.unwrap().labels(&g);
        assert_eq!(
            labels,
            [
                "(F, 0, 0)",
                "(F, F, 0)",
                "(0, F, 0)",
                "(0, F, F)",
                "(0, 0, F)",
                "(F, 0, F)"
            ]
        );
    }

    #[test]
    fn grid_cases() {
        for (s, v, m, n) in [
            ("Z8 x Z8", 14, 3, 3),
            ("Z4 x Z4", 7, 2, 2),
            ("Z4 x Z8", 10, 2, 3),
        ] {
            let (g, out) = construct(s);
            assert_eq!(g.vertex_count(), v);
            assert_eq!(out.strategy, Strategy::GridSplice { m, n }, "{s}");
            assert_eq!(out.witness.unwrap().len(), v);
            assert!(hamiltonian_oracle(&g, &Caps::default()).unwrap().is_some());
        }
    }

    #[test]
    fn bipartition_prefers_balance() {
        // counts 2,2,2,3: {0,1} vs {2,3} gives 4 and 6, ahead of {0,3} on the mask
        let s = spec("GF(2) x GF(3) x GF(5) x Z4");
        assert_eq!(best_bipartition(&s), Some(vec![0, 1]));
        assert_eq!(best_bipartition(&spec("Z8 x GF(2)")), None);
        assert_eq!(best_bipartition(&spec("Z8")), None);
    }

    #[test]
    fn lifts() {
        let (g, out) = construct("Z8 x GF(2)");
        assert_eq!(out.strategy, Strategy::PathLift);
        assert_eq!(
            out.witness.unwrap().labels(&g),
            ["(R, 0)", "(m^1, 0)", "(m^1, F)", "(0, F)", "(m^2, F)", "(m^2, 0)"]
        );
        let (_, out) = construct("Z16 x GF(3)");
        assert_eq!(out.witness.unwrap().len(), 8);
        let (_, out) = construct("GF(3) x Z16");
        assert_eq!(out.strategy, Strategy::PathLift);
    }

    #[test]
    fn lift_rejects_single_vertex_path() {
        let g = IntersectionGraph::build(&spec("Z4 x GF(2)"), &Caps::default()).unwrap();
        let m = Ideal::new(vec![BlockIdeal::Chain { q: 2, k: 2, exp: 1 }]);
        assert!(matches!(
            lift_path_to_cycle(&g, 1, &[m]),
            Err(Error::Precondition(_))
        ));
        assert!(lift_path_to_cycle(&g, 0, &[]).is_err());
    }

    #[test]
    fn exceptions_and_open_question() {
        let (_, out) = construct("Z12");
        assert_eq!(out.status, ConstructionStatus::NotHamiltonianByTheorem);
        let (_, out) = construct("vs(2,2)");
        assert_eq!(out.status, ConstructionStatus::Unknown);
        assert!(out.note.unwrap().starts_with("open question"));
        let (_, out) = construct("vs(2,3)");
        assert_eq!(out.strategy, Strategy::Oracle);
        assert!(out.is_cycle());
        let (_, out) = construct("Z32");
        assert_eq!(out.strategy, Strategy::CompleteGraph);
    }

    #[test]
    fn large_grid_without_oracle() {
        let (g, out) = construct("chain(2,11) x chain(2,11)");
        assert_eq!(g.vertex_count(), 142);
        assert_eq!(out.strategy, Strategy::GridSplice { m: 11, n: 11 });
        assert!(out.is_cycle());
    }

    #[test]
    fn witness_json() {
        let (g, out) = construct("Z4 x Z4");
        let j = serde_json::to_value(WitnessJson::new(&g, out.witness.as_ref().unwrap())).unwrap();
        assert_eq!(j["length"], 7);
        assert_eq!(j["spec"], "chain(2,2) x chain(2,2)");
        let o = serde_json::to_value(&out).unwrap();
        assert_eq!(o["status"], "cycle");
        assert_eq!(o["strategy"], "grid+splice (2x2)");
    }
}
