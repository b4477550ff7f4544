//! Hamiltonian cycles on the grid of products `a_i ⊕ b_j`.
//!
//! Cell `(i, j)` (1-based) stands for `a_i ⊕ b_j`, where `a_1..a_m` are the
//! nonzero ideals of the first factor with `a_m` the whole factor, and
//! likewise `b_1..b_n`. Cell `(m, n)` is the unit ideal and is left out.
//! Two cells in the same row share `a_i ⊕ 0`, two in the same column share
//! `0 ⊕ b_j`, and a cell in row `m` or column `n` contains a full
//! coordinate, so it meets every other cell.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{validate_cycle, CycleWitness, IntersectionGraph};
use crate::rings::{enumerate_ideals, BlockIdeal, Ideal};

pub type Cell = (usize, usize);

/// A cyclic ordering of the grid-minus-corner cells together with one
/// registered same-row edge per row and same-column edge per column.
///
/// Edge `e` joins `cells[e]` and `cells[(e + 1) % len]`. A row or column
/// holding a single cell has no entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridCycle {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<Cell>,
    pub row_edges: BTreeMap<usize, usize>,
    pub col_edges: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridDefect {
    WrongCellCount { expected: usize, got: usize },
    BadCell(Cell),
    DuplicateCell(Cell),
    IllegalMove(Cell, Cell),
    MissingRowEdge(usize),
    MissingColEdge(usize),
    WrongEdge { edge: usize },
    SharedEdge { edge: usize },
}

impl fmt::Display for GridDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl GridCycle {
    fn row_len(&self, i: usize) -> usize {
        if i == self.m {
            self.n - 1
        } else {
            self.n
        }
    }

    fn col_len(&self, j: usize) -> usize {
        if j == self.n {
            self.m - 1
        } else {
            self.m
        }
    }

    /// Whether two cells are adjacent in every intersection graph laid out
    /// on this grid.
    pub fn legal_move(&self, a: Cell, b: Cell) -> bool {
        a.0 == b.0 || a.1 == b.1 || a.0 == self.m || b.0 == self.m || a.1 == self.n || b.1 == self.n
    }

    pub fn edge(&self, e: usize) -> (Cell, Cell) {
        (self.cells[e], self.cells[(e + 1) % self.cells.len()])
    }

    /// Checks coverage, move legality and the edge registries without
    /// reference to any ring.
    pub fn check(&self) -> std::result::Result<(), GridDefect> {
        let expected = self.m * self.n - 1;
        if self.cells.len() != expected {
            return Err(GridDefect::WrongCellCount {
                expected,
                got: self.cells.len(),
            });
        }
        let mut seen = vec![vec![false; self.n + 1]; self.m + 1];
        for &(i, j) in &self.cells {
            if i == 0 || j == 0 || i > self.m || j > self.n || (i, j) == (self.m, self.n) {
                return Err(GridDefect::BadCell((i, j)));
            }
            if std::mem::replace(&mut seen[i][j], true) {
                return Err(GridDefect::DuplicateCell((i, j)));
            }
        }
        for e in 0..self.cells.len() {
            let (a, b) = self.edge(e);
            if !self.legal_move(a, b) {
                return Err(GridDefect::IllegalMove(a, b));
            }
        }
        let mut used = std::collections::BTreeSet::new();
        for i in 1..=self.m {
            match self.row_edges.get(&i) {
                Some(&e) => {
                    let (a, b) = self.edge(e);
                    if a.0 != i || b.0 != i {
                        return Err(GridDefect::WrongEdge { edge: e });
                    }
                    if !used.insert(e) {
                        return Err(GridDefect::SharedEdge { edge: e });
                    }
                }
                None if self.row_len(i) >= 2 => return Err(GridDefect::MissingRowEdge(i)),
                None => {}
            }
        }
        for j in 1..=self.n {
            match self.col_edges.get(&j) {
                Some(&e) => {
                    let (a, b) = self.edge(e);
                    if a.1 != j || b.1 != j {
                        return Err(GridDefect::WrongEdge { edge: e });
                    }
                    if !used.insert(e) {
                        return Err(GridDefect::SharedEdge { edge: e });
                    }
                }
                None if self.col_len(j) >= 2 => return Err(GridDefect::MissingColEdge(j)),
                None => {}
            }
        }
        Ok(())
    }
}

/// Builds a [`GridCycle`] for an `m × n` grid, `m, n >= 2`.
///
/// Rows `1..m-1` are walked as a ladder over columns `1` and `n`, each row
/// contributing its own edge and each step between rows a column edge.
/// The ladder ends at `(m-1, 1)`, drops to `(m, 1)`, and the columns
/// `2..n-1` are then swept top to bottom alternately. The closing edge
/// touches row `m` or stays inside row 1.
pub fn grid_snake_cycle(m: usize, n: usize) -> Result<GridCycle> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid dimensions must be at least 2, got {m} x {n}"
        )));
    }
    let mut cells = Vec::with_capacity(m * n - 1);
    for i in 1..m {
        if (m - 1 - i).is_multiple_of(2) {
            cells.extend([(i, n), (i, 1)]);
        } else {
            cells.extend([(i, 1), (i, n)]);
        }
    }
    cells.push((m, 1));
    for j in 2..n {
        if j % 2 == 0 {
            cells.extend((1..=m).rev().map(|i| (i, j)));
        } else {
            cells.extend((1..=m).map(|i| (i, j)));
        }
    }

    let len = cells.len();
    let edge = |e: usize| (cells[e], cells[(e + 1) % len]);
    let mut row_edges = BTreeMap::new();
    let mut col_edges = BTreeMap::new();
    for e in 0..len {
        let (a, b) = edge(e);
        if a.0 == b.0 {
            row_edges.entry(a.0).or_insert(e);
        } else if a.1 == b.1 {
            col_edges.entry(a.1).or_insert(e);
        }
    }
    let gc = GridCycle {
        m,
        n,
        cells,
        row_edges,
        col_edges,
    };
    gc.check()
        .map_err(|d| Error::Construction(format!("grid {m}x{n}: {d}")))?;
    Ok(gc)
}

/// Identifies grid cells and boundary ideals with vertices of `Γ(R)` for a
/// split of the blocks of `R` into two sides.
#[derive(Debug, Clone)]
pub struct FactorMap {
    pub m: usize,
    pub n: usize,
    /// `cells[i-1][j-1]` is the vertex of `a_i ⊕ b_j`; `None` at `(m, n)`.
    pub cells: Vec<Vec<Option<usize>>>,
    /// Vertex of `a_i ⊕ 0`, for `i = 1..=m`.
    pub row_boundary: Vec<usize>,
    /// Vertex of `0 ⊕ b_j`, for `j = 1..=n`.
    pub col_boundary: Vec<usize>,
    /// Per vertex: whether the first-side coordinates are nonzero.
    first_nonzero: Vec<bool>,
    second_nonzero: Vec<bool>,
}

impl FactorMap {
    /// `side_a` lists the block positions of the first factor; the
    /// remaining positions form the second.
    pub fn new(g: &IntersectionGraph, side_a: &[usize]) -> Result<Self> {
        let spec = g.spec();
        let side_b: Vec<usize> = (0..spec.blocks.len())
            .filter(|p| !side_a.contains(p))
            .collect();
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::InvalidParameter(
                "both sides of the split must be nonempty".into(),
            ));
        }
        let nonzero_ladder = |side: &[usize]| -> Result<Vec<Ideal>> {
            let mut all = enumerate_ideals(&spec.sub_spec(side), usize::MAX)?;
            all.reverse();
            all.remove(0); // zero
            Ok(all)
        };
        let a = nonzero_ladder(side_a)?;
        let b = nonzero_ladder(&side_b)?;
        let zero_a = Ideal::new(
            side_a
                .iter()
                .map(|&p| BlockIdeal::zero(spec.blocks[p]))
                .collect(),
        );
        let zero_b = Ideal::new(
            side_b
                .iter()
                .map(|&p| BlockIdeal::zero(spec.blocks[p]))
                .collect(),
        );

        let combine = |x: &Ideal, y: &Ideal| -> Ideal {
            let mut coords: Vec<Option<BlockIdeal>> = vec![None; spec.blocks.len()];
            for (c, &p) in x.coords.iter().zip(side_a) {
                coords[p] = Some(c.clone());
            }
            for (c, &p) in y.coords.iter().zip(&side_b) {
                coords[p] = Some(c.clone());
            }
            Ideal::new(
                coords
                    .into_iter()
                    .map(|c| c.expect("every block is assigned"))
                    .collect(),
            )
        };
        let lookup = |ideal: Ideal| -> Result<usize> {
            g.index_of(&ideal)
                .ok_or_else(|| Error::Construction(format!("ideal {ideal} is not a vertex")))
        };

        let (m, n) = (a.len(), b.len());
        let mut cells = vec![vec![None; n]; m];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if (i + 1, j + 1) != (m, n) {
                    cells[i][j] = Some(lookup(combine(ai, bj))?);
                }
            }
        }
        let row_boundary = a
            .iter()
            .map(|ai| lookup(combine(ai, &zero_b)))
            .collect::<Result<_>>()?;
        let col_boundary = b
            .iter()
            .map(|bj| lookup(combine(&zero_a, bj)))
            .collect::<Result<_>>()?;
        let side_nonzero = |side: &[usize]| -> Vec<bool> {
            g.vertices()
                .iter()
                .map(|v| side.iter().any(|&p| !v.coords[p].is_zero()))
                .collect()
        };
        Ok(FactorMap {
            m,
            n,
            cells,
            row_boundary,
            col_boundary,
            first_nonzero: side_nonzero(side_a),
            second_nonzero: side_nonzero(&side_b),
        })
    }

    pub fn cell(&self, c: Cell) -> usize {
        self.cells[c.0 - 1][c.1 - 1].expect("the corner cell is never part of a grid cycle")
    }
}

/// Cycle as a successor table, for constant-time insertion.
struct Ring {
    next: Vec<usize>,
    head: usize,
}

impl Ring {
    const NONE: usize = usize::MAX;

    fn new(size: usize, seq: &[usize]) -> Self {
        let mut next = vec![Self::NONE; size];
        for (k, &v) in seq.iter().enumerate() {
            next[v] = seq[(k + 1) % seq.len()];
        }
        Ring { next, head: seq[0] }
    }

    fn insert_after(&mut self, u: usize, x: usize) -> Result<()> {
        if self.next[x] != Self::NONE {
            return Err(Error::Construction(format!("vertex {x} spliced twice")));
        }
        self.next[x] = self.next[u];
        self.next[u] = x;
        Ok(())
    }

    fn splice(&mut self, u: usize, v: usize, x: usize) -> Result<()> {
        if self.next[u] != v {
            return Err(Error::Construction(format!(
                "edge {u}-{v} is no longer in the cycle"
            )));
        }
        self.insert_after(u, x)
    }

    fn walk(&self) -> Vec<usize> {
        let mut out = vec![self.head];
        let mut v = self.next[self.head];
        while v != self.head {
            out.push(v);
            v = self.next[v];
        }
        out
    }

    /// First cycle edge `(u, next[u])` satisfying `pred`, walking from the
    /// head.
    fn find_edge(&self, pred: impl Fn(usize, usize) -> bool) -> Option<usize> {
        self.walk().into_iter().find(|&u| pred(u, self.next[u]))
    }
}

/// Extends a grid cycle to a Hamiltonian cycle of the whole graph by
/// splicing every boundary vertex `a_i ⊕ 0` into the registered row-`i`
/// edge and every `0 ⊕ b_j` into the registered column-`j` edge.
///
/// A single-cell row `m` or column `n` has no registered edge; its boundary
/// vertex (`R_1 ⊕ 0` or `0 ⊕ R_2`) meets every vertex with a nonzero
/// coordinate on its side and goes into the first edge with that property.
pub fn splice_boundary(
    gc: &GridCycle,
    g: &IntersectionGraph,
    fm: &FactorMap,
) -> Result<CycleWitness> {
    if (gc.m, gc.n) != (fm.m, fm.n) {
        return Err(Error::Precondition(format!(
            "grid is {}x{} but the factor map is {}x{}",
            gc.m, gc.n, fm.m, fm.n
        )));
    }
    let seq: Vec<usize> = gc.cells.iter().map(|&c| fm.cell(c)).collect();
    let mut ring = Ring::new(g.vertex_count(), &seq);
    let endpoints = |e: usize| (seq[e], seq[(e + 1) % seq.len()]);

    for i in 1..gc.m {
        let e = *gc
            .row_edges
            .get(&i)
            .ok_or_else(|| Error::Construction(format!("row {i} has no edge")))?;
        let (u, v) = endpoints(e);
        ring.splice(u, v, fm.row_boundary[i - 1])?;
    }
    for j in 1..gc.n {
        let e = *gc
            .col_edges
            .get(&j)
            .ok_or_else(|| Error::Construction(format!("column {j} has no edge")))?;
        let (u, v) = endpoints(e);
        ring.splice(u, v, fm.col_boundary[j - 1])?;
    }
    let full_row = fm.row_boundary[gc.m - 1];
    match gc.row_edges.get(&gc.m) {
        Some(&e) => {
            let (u, v) = endpoints(e);
            ring.splice(u, v, full_row)?;
        }
        None => {
            let u = ring
                .find_edge(|u, v| fm.first_nonzero[u] && fm.first_nonzero[v])
                .ok_or_else(|| Error::Construction("no edge can take R1 + 0".into()))?;
            ring.insert_after(u, full_row)?;
        }
    }
    let full_col = fm.col_boundary[gc.n - 1];
    match gc.col_edges.get(&gc.n) {
        Some(&e) => {
            let (u, v) = endpoints(e);
            ring.splice(u, v, full_col)?;
        }
        None => {
            let u = ring
                .find_edge(|u, v| fm.second_nonzero[u] && fm.second_nonzero[v])
                .ok_or_else(|| Error::Construction("no edge can take 0 + R2".into()))?;
            ring.insert_after(u, full_col)?;
        }
    }

    let witness = CycleWitness::new(ring.walk());
    if witness.len() != g.vertex_count() {
        return Err(Error::Construction(format!(
            "spliced cycle has {} of {} vertices",
            witness.len(),
            g.vertex_count()
        )));
    }
    validate_cycle(g, &witness).map_err(|d| Error::Construction(d.to_string()))?;
    Ok(witness)
}
