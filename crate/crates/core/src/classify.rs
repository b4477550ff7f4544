//! Structural predictions about `Γ(R)` read off the block decomposition,
//! each paired with a direct computation on the graph.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{
    compute_properties, cycle_spectrum_oracle, find_induced_claw, find_induced_cycle,
    hamiltonian_oracle, IntersectionGraph, PropertyRecord, Shape,
};
use crate::hamcycle::{
    construct_hamiltonian, pancyclic_family, predict_hamiltonian, HamiltonianPrediction,
};
use crate::rings::{
    find_independent_with_proper_join, max_independent_family, BlockSpec, IndependentFamily,
    RingSpec,
};

/// One prediction checked against the graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub predicted: Value,
    pub observed: Value,
    pub agree: bool,
    /// The spec lies in a family the statement excludes; `agree` is still
    /// reported as computed.
    pub exempt: bool,
    /// The observation could not be made within the caps.
    pub skipped: bool,
    pub witness: Option<Value>,
    pub note: Option<String>,
}

impl Entry {
    fn new(name: impl Into<String>, predicted: Value, observed: Value) -> Self {
        let agree = predicted == observed;
        Entry {
            name: name.into(),
            predicted,
            observed,
            agree,
            exempt: false,
            skipped: false,
            witness: None,
            note: None,
        }
    }

    fn skipped(name: impl Into<String>, predicted: Value, reason: String) -> Self {
        Entry {
            name: name.into(),
            predicted,
            observed: Value::Null,
            agree: false,
            exempt: false,
            skipped: true,
            witness: None,
            note: Some(reason),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }

    fn with_witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }

    fn exempt_if(mut self, exempt: bool) -> Self {
        self.exempt = exempt;
        self
    }

    /// Counts against the statement being checked.
    pub fn is_disagreement(&self) -> bool {
        !self.agree && !self.exempt && !self.skipped
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub spec: String,
    pub vertex_count: usize,
    pub entries: Vec<Entry>,
}

impl ClassificationReport {
    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn has_disagreement(&self) -> bool {
        self.entries.iter().any(Entry::is_disagreement)
    }
}

fn is_two_fields(spec: &RingSpec) -> bool {
    matches!(spec.blocks.as_slice(), [a, b] if a.is_field() && b.is_field())
}

fn one_nontrivial_ideal(b: &BlockSpec) -> bool {
    b.ideal_count() == 3
}

/// A field next to a local ring with exactly one nontrivial ideal.
fn is_field_plus_single_ideal_local(spec: &RingSpec) -> bool {
    matches!(spec.blocks.as_slice(),
        [a, b] if (a.is_field() && one_nontrivial_ideal(b)) || (one_nontrivial_ideal(a) && b.is_field()))
}

fn labels(g: &IntersectionGraph, idx: &[usize]) -> Value {
    json!(idx.iter().map(|&i| g.label(i)).collect::<Vec<_>>())
}

fn family_labels(f: &IndependentFamily) -> Value {
    json!(f.members.iter().map(|m| m.label()).collect::<Vec<_>>())
}

/// The graph is complete exactly when the ideal lattice is a chain: a single
/// field or chain block.
pub fn predict_complete(spec: &RingSpec) -> bool {
    matches!(
        spec.blocks.as_slice(),
        [BlockSpec::Field { .. } | BlockSpec::Chain { .. }]
    )
}

pub fn check_complete(g: &IntersectionGraph, props: &PropertyRecord) -> Entry {
    Entry::new(
        "complete",
        json!(predict_complete(g.spec())),
        json!(props.flags.is_complete),
    )
}

/// A regular graph is complete, unless the ring is a product of two fields.
pub fn check_regular_implies_complete(g: &IntersectionGraph, props: &PropertyRecord) -> Entry {
    let f = props.flags;
    let mut e = Entry::new(
        "regular_implies_complete",
        json!(true),
        json!(!f.is_regular || f.is_complete),
    )
    .exempt_if(is_two_fields(g.spec()));
    if e.exempt {
        e = e.with_note("excluded: product of two fields");
    }
    e.witness = Some(json!({"regular": f.is_regular, "complete": f.is_complete}));
    e
}

/// Shape of `Γ(R)` when it is triangle-free, or [`Shape::HasTriangle`].
pub fn predict_triangle_free_shape(spec: &RingSpec) -> Shape {
    match spec.blocks.as_slice() {
        [a, b] if a.is_field() && b.is_field() => Shape::TwoIsolated,
        [BlockSpec::Field { .. }] => Shape::Empty,
        [BlockSpec::Chain { k: 2, .. }] => Shape::SingleVertex,
        [BlockSpec::Chain { k: 3, .. }] => Shape::Edge,
        [BlockSpec::VsLocal { q, d: 2 }] => Shape::Star {
            leaves: *q as usize + 1,
        },
        _ => Shape::HasTriangle,
    }
}

pub fn check_triangle_free_shape(g: &IntersectionGraph, props: &PropertyRecord) -> Entry {
    let predicted = predict_triangle_free_shape(g.spec());
    let observed = props.shape();
    Entry::new("triangle_free_shape", json!(predicted), json!(observed))
}

/// A graph with a pendant vertex is a star, outside the two excluded
/// families: two fields, and a field next to a local ring with a single
/// nontrivial ideal.
pub fn check_pendant_implies_star(g: &IntersectionGraph, props: &PropertyRecord) -> Entry {
    let f = props.flags;
    let spec = g.spec();
    let two = is_two_fields(spec);
    let fsl = is_field_plus_single_ideal_local(spec);
    let mut e = Entry::new(
        "pendant_implies_star",
        json!(true),
        json!(!f.has_pendant || f.is_star),
    )
    .exempt_if(two || fsl)
    .with_witness(Some(json!({
        "pendants": labels(g, &props.pendant_vertices),
        "star": f.is_star,
    })));
    if two {
        e = e.with_note("excluded: product of two fields");
    } else if fsl {
        e = e.with_note("excluded: field plus a local ring with exactly one nontrivial ideal");
    }
    e
}

/// Triangle-free, has a pendant, bipartite and star all hold or all fail,
/// outside the two excluded families. Graphs with fewer than two vertices
/// are degenerate and exempt.
pub fn check_triangle_free_equivalences(g: &IntersectionGraph, props: &PropertyRecord) -> Entry {
    let f = props.flags;
    let values = [f.is_triangle_free, f.has_pendant, f.is_bipartite, f.is_star];
    let equal = values.iter().all(|&v| v == values[0]);
    let spec = g.spec();
    let excluded = is_two_fields(spec) || is_field_plus_single_ideal_local(spec);
    let degenerate = props.vertex_count < 2;
    let mut e = Entry::new("triangle_free_equivalences", json!(true), json!(equal))
        .exempt_if(excluded || degenerate)
        .with_witness(Some(json!({
            "triangle_free": f.is_triangle_free,
            "pendant": f.has_pendant,
            "bipartite": f.is_bipartite,
            "star": f.is_star,
        })));
    if excluded {
        e = e.with_note("excluded family");
    } else if degenerate {
        e = e.with_note("fewer than two vertices");
    }
    e
}

/// `Γ(R)` has no induced 4-cycle exactly when `R` has no four independent
/// nonzero ideals.
pub fn c4_free_criterion(g: &IntersectionGraph, caps: &Caps) -> Result<Entry> {
    cycle_criterion(g, 4, "c4_free".into(), caps)
}

/// For a product of fields, `Γ(R)` has no induced `n`-cycle exactly when `R`
/// has no `n` independent nonzero ideals. Requires `n >= 5`.
pub fn cn_free_criterion_reduced(g: &IntersectionGraph, n: usize, caps: &Caps) -> Result<Entry> {
    if !g.spec().is_reduced() {
        return Err(Error::NotReduced(g.spec().to_string()));
    }
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be at least 5, got {n}"
        )));
    }
    cycle_criterion(g, n, format!("cn_free_reduced_n{n}"), caps)
}

fn cycle_criterion(g: &IntersectionGraph, n: usize, name: String, caps: &Caps) -> Result<Entry> {
    let spec = g.spec();
    let (t, family) = match max_independent_family(spec, n, caps.independence) {
        Ok(r) => (r.0, Some(r.1)),
        Err(Error::NoNontrivialIdeals) => (0, None),
        Err(e) => return Err(e),
    };
    let cycle = find_induced_cycle(g, n, caps)?;
    let mut e = Entry::new(name, json!(t < n), json!(cycle.is_none()));
    e.witness = Some(json!({
        "independent": family.as_ref().map(family_labels),
        "induced_cycle": cycle.map(|c| c.labels(g)),
    }));
    Ok(e)
}

/// For a product of fields, `Γ(R)` has an induced `n`-claw exactly when some
/// `n` independent ideals have a proper sum. Requires `n >= 2`.
pub fn claw_criterion_reduced(g: &IntersectionGraph, n: usize, caps: &Caps) -> Result<Entry> {
    let spec = g.spec();
    if !spec.is_reduced() {
        return Err(Error::NotReduced(spec.to_string()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "claw size must be at least 2, got {n}"
        )));
    }
    let family = match find_independent_with_proper_join(spec, n, caps.independence) {
        Ok(f) => f,
        Err(Error::NoNontrivialIdeals) => None,
        Err(e) => return Err(e),
    };
    let claw = find_induced_claw(g, n, caps)?;
    let mut e = Entry::new(
        format!("claw_reduced_n{n}"),
        json!(family.is_some()),
        json!(claw.is_some()),
    );
    e.witness = Some(json!({
        "independent": family.as_ref().map(family_labels),
        "claw": claw.map(|c| json!({"center": g.label(c.center), "leaves": labels(g, &c.leaves)})),
    }));
    Ok(e)
}

fn check_sums(family: &IndependentFamily, sums: &[BTreeSet<usize>]) -> Result<usize> {
    let n = family.len();
    if n < 3 {
        return Err(Error::MalformedSubsets(format!(
            "need at least 3 members, got {n}"
        )));
    }
    if sums.len() != n {
        return Err(Error::MalformedSubsets(format!(
            "{} subsets for {n} members",
            sums.len()
        )));
    }
    for (i, s) in sums.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::MalformedSubsets(format!("subset {i} is empty")));
        }
        if let Some(&bad) = s.iter().find(|&&x| x >= n) {
            return Err(Error::MalformedSubsets(format!(
                "subset {i} names member {bad}"
            )));
        }
    }
    Ok(n)
}

/// Whether `sums[i] = {π(i), π(i+1)}` (indices mod `n`) for a permutation
/// `π` of the family.
pub fn consecutive_pair_structure(
    family: &IndependentFamily,
    sums: &[BTreeSet<usize>],
) -> Result<bool> {
    let n = check_sums(family, sums)?;
    if sums.iter().any(|s| s.len() != 2) {
        return Ok(false);
    }
    // π(i+1) is the member shared by sums[i] and sums[i+1]
    let mut pi = vec![0; n];
    for i in 0..n {
        let shared: Vec<usize> = sums[i].intersection(&sums[(i + 1) % n]).copied().collect();
        if shared.len() != 1 {
            return Ok(false);
        }
        pi[(i + 1) % n] = shared[0];
    }
    let distinct: BTreeSet<usize> = pi.iter().copied().collect();
    if distinct.len() != n {
        return Ok(false);
    }
    Ok((0..n).all(|i| sums[i] == BTreeSet::from([pi[i], pi[(i + 1) % n]])))
}

/// Whether the sums `b_i` over `sums[i]` are pairwise distinct and meet
/// exactly when their positions are cyclically consecutive.
pub fn sums_induce_cycle_in_order(
    family: &IndependentFamily,
    sums: &[BTreeSet<usize>],
) -> Result<bool> {
    let n = check_sums(family, sums)?;
    let b = sums
        .iter()
        .map(|s| family.join_of(s.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in i + 1..n {
            if b[i] == b[j] {
                return Ok(false);
            }
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if b[i].meets(&b[j])? != consecutive {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Hamiltonian prediction against the exhaustive search. A single
/// block with a vector-space maximal ideal is not on the list of
/// exceptions, so the prediction there is `true`.
pub fn check_hamiltonian(g: &IntersectionGraph, caps: &Caps) -> Result<Entry> {
    let prediction = predict_hamiltonian(g.spec());
    let predicted = prediction.as_bool().unwrap_or(true);
    let v = g.vertex_count();
    if v > caps.hamiltonian {
        return Ok(Entry::skipped(
            "hamiltonian",
            json!(predicted),
            format!("{v} vertices exceed the oracle cap {}", caps.hamiltonian),
        ));
    }
    let cycle = hamiltonian_oracle(g, caps)?;
    let mut e = Entry::new("hamiltonian", json!(predicted), json!(cycle.is_some())).with_witness(
        Some(json!({
            "exception_tag": prediction.tag(),
            "cycle": cycle.map(|c| c.labels(g)),
        })),
    );
    if prediction == HamiltonianPrediction::OpenQuestion {
        e = e.with_note("open question: single block with a vector-space maximal ideal");
        if !e.agree {
            e = e.with_note("theorem/oracle discrepancy: oracle is ground truth");
        }
    }
    if is_field_plus_single_ideal_local(g.spec()) && matches!(g.spec().blocks.as_slice(), [_, _]) {
        let props = compute_properties(g);
        if props.vertex_count == 4 && props.edge_count == 4 {
            e = e.with_note(
                "the graph is a triangle with a pendant vertex, not a path of length three",
            );
        }
    }
    Ok(e)
}

/// Hamiltonian graphs here have cycles of every length from 3 up. The
/// prediction is the observed Hamiltonicity.
pub fn check_pancyclic(g: &IntersectionGraph, caps: &Caps) -> Result<Entry> {
    let v = g.vertex_count();
    let hamiltonian = if v <= caps.hamiltonian {
        hamiltonian_oracle(g, caps)?.is_some()
    } else {
        predict_hamiltonian(g.spec()).as_bool().unwrap_or(true)
    };
    if v > caps.spectrum {
        return Ok(Entry::skipped(
            "pancyclic",
            json!(hamiltonian),
            format!("{v} vertices exceed the spectrum cap {}", caps.spectrum),
        ));
    }
    let spectrum = cycle_spectrum_oracle(g, caps)?;
    let pancyclic = v >= 3 && (3..=v).all(|l| spectrum.contains(&l));
    Ok(
        Entry::new("pancyclic", json!(hamiltonian), json!(pancyclic))
            .with_witness(Some(json!({"lengths": spectrum}))),
    )
}

/// The constructive procedure against the exhaustive search: a cycle is
/// built exactly when one exists.
pub fn check_construction(g: &IntersectionGraph, caps: &Caps) -> Result<Entry> {
    let outcome = construct_hamiltonian(g, caps)?;
    let built = outcome.is_cycle();
    let v = g.vertex_count();
    let witness = json!({
        "status": outcome.status,
        "strategy": outcome.strategy,
        "cycle": outcome.witness.as_ref().map(|w| w.labels(g)),
    });
    let e = if v > caps.hamiltonian {
        Entry::skipped(
            "hamiltonian_construction",
            json!(built),
            format!("{v} vertices exceed the oracle cap {}", caps.hamiltonian),
        )
    } else {
        Entry::new(
            "hamiltonian_construction",
            json!(built),
            json!(hamiltonian_oracle(g, caps)?.is_some()),
        )
    };
    let mut e = e.with_witness(Some(witness));
    if let Some(note) = outcome.note {
        e = e.with_note(note);
    }
    Ok(e)
}

/// Lengths produced by [`pancyclic_family`] against the cycle spectrum.
/// Only applies when a Hamiltonian cycle can be constructed.
pub fn check_pancyclic_family(g: &IntersectionGraph, caps: &Caps) -> Result<Option<Entry>> {
    let v = g.vertex_count();
    if v < 3 || !construct_hamiltonian(g, caps)?.is_cycle() {
        return Ok(None);
    }
    let fam = pancyclic_family(g, caps)?;
    let produced: Vec<usize> = fam.cycles.keys().copied().collect();
    let witness = json!({"gaps": fam.gaps, "sources": fam.sources});
    let e = if v > caps.spectrum {
        let full: Vec<usize> = (3..=v).collect();
        let mut e = Entry::skipped(
            "pancyclic_family",
            json!(produced),
            format!("{v} vertices exceed the spectrum cap {}", caps.spectrum),
        );
        e.agree = produced == full;
        e
    } else {
        let spectrum: Vec<usize> = cycle_spectrum_oracle(g, caps)?
            .into_iter()
            .filter(|&l| l <= v)
            .collect();
        Entry::new("pancyclic_family", json!(produced), json!(spectrum))
    };
    Ok(Some(e.with_witness(Some(witness))))
}

fn capped(name: &str, r: Result<Entry>) -> Result<Entry> {
    match r {
        Err(Error::CapExceeded { what, size, cap }) => Ok(Entry::skipped(
            name,
            Value::Null,
            format!("{what} size {size} exceeds cap {cap}"),
        )),
        other => other,
    }
}

/// Runs every applicable check. Checks that would exceed a cap are kept as
/// skipped entries.
pub fn classify_report(g: &IntersectionGraph, caps: &Caps) -> Result<ClassificationReport> {
    let spec = g.spec();
    let props = compute_properties(g);
    let mut entries = vec![
        check_complete(g, &props),
        check_regular_implies_complete(g, &props),
        check_triangle_free_shape(g, &props),
        check_pendant_implies_star(g, &props),
        check_triangle_free_equivalences(g, &props),
        capped("c4_free", c4_free_criterion(g, caps))?,
    ];
    if spec.is_reduced() {
        for n in 5..=7 {
            entries.push(capped(
                &format!("cn_free_reduced_n{n}"),
                cn_free_criterion_reduced(g, n, caps),
            )?);
        }
        for n in 2..=4 {
            entries.push(capped(
                &format!("claw_reduced_n{n}"),
                claw_criterion_reduced(g, n, caps),
            )?);
        }
    }
    entries.push(capped("hamiltonian", check_hamiltonian(g, caps))?);
    entries.push(capped("pancyclic", check_pancyclic(g, caps))?);
    entries.push(capped(
        "hamiltonian_construction",
        check_construction(g, caps),
    )?);
    match check_pancyclic_family(g, caps) {
        Ok(Some(e)) => entries.push(e),
        Ok(None) => {}
        Err(e) => entries.push(capped("pancyclic_family", Err(e))?),
    }
    Ok(ClassificationReport {
        spec: spec.to_string(),
        vertex_count: g.vertex_count(),
        entries,
    })
}

/// Builds the graph and runs [`classify_report`].
pub fn classify_spec(spec: &RingSpec, caps: &Caps) -> Result<ClassificationReport> {
    classify_report(&IntersectionGraph::build(spec, caps)?, caps)
}
