use serde::Serialize;

use super::{nontrivial_ideals, BlockIdeal, Ideal, RingSpec};
use crate::error::{check_cap, Error, Result};

/// Nontrivial ideals whose sum is direct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentFamily {
    pub members: Vec<Ideal>,
    /// Set once the defining condition has been re-verified on `members`.
    pub witness_checked: bool,
}

impl IndependentFamily {
    /// Checks the members and wraps them.
    pub fn new(members: Vec<Ideal>) -> Result<Self> {
        if !is_independent_family(&members)? {
            return Err(Error::Precondition("ideals are not independent".into()));
        }
        Ok(IndependentFamily {
            members,
            witness_checked: true,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sum of the members at `indices`.
    pub fn join_of(&self, indices: impl IntoIterator<Item = usize>) -> Result<Ideal> {
        let mut acc = zero_like(&self.members[0]);
        for i in indices {
            acc = acc.join(&self.members[i])?;
        }
        Ok(acc)
    }
}

fn zero_like(ideal: &Ideal) -> Ideal {
    Ideal::new(
        ideal
            .coords
            .iter()
            .map(|c| BlockIdeal::zero(c.block()))
            .collect(),
    )
}

/// Whether every member meets the sum of the others in zero.
pub fn is_independent_family(members: &[Ideal]) -> Result<bool> {
    let first = members.first().ok_or(Error::EmptyFamily)?;
    if let Some(i) = members.iter().position(|m| !m.is_nontrivial()) {
        return Err(Error::TrivialMember(i));
    }
    let zero = zero_like(first);
    for (i, member) in members.iter().enumerate() {
        let mut rest = zero.clone();
        for (j, other) in members.iter().enumerate() {
            if j != i {
                rest = rest.join(other)?;
            }
        }
        if !member.meet(&rest)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first search for independent families drawn from `candidates`.
///
/// A family is grown one member at a time and a candidate is accepted when it
/// meets the running sum in zero. Ideal lattices are modular, where this
/// sequential test is equivalent to independence.
struct FamilySearch<'a> {
    candidates: &'a [Ideal],
    target: usize,
    accept: &'a dyn Fn(&Ideal) -> bool,
    best: Vec<usize>,
}

impl FamilySearch<'_> {
    fn run(&mut self, zero: &Ideal) -> Result<()> {
        let mut chosen = Vec::new();
        self.dfs(0, zero, &mut chosen)?;
        Ok(())
    }

    /// Returns true once a family of the target size passing `accept` is found.
    fn dfs(&mut self, start: usize, join: &Ideal, chosen: &mut Vec<usize>) -> Result<bool> {
        if chosen.len() > self.best.len() && (self.accept)(join) {
            self.best = chosen.clone();
        }
        if chosen.len() == self.target {
            return Ok(self.best.len() == self.target);
        }
        for i in start..self.candidates.len() {
            let c = &self.candidates[i];
            if c.meets(join)? {
                continue;
            }
            let next = join.join(c)?;
            chosen.push(i);
            let done = self.dfs(i + 1, &next, chosen)?;
            chosen.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search(
    candidates: &[Ideal],
    target: usize,
    accept: &dyn Fn(&Ideal) -> bool,
) -> Result<Vec<Ideal>> {
    let Some(first) = candidates.first() else {
        return Ok(Vec::new());
    };
    let mut s = FamilySearch {
        candidates,
        target,
        accept,
        best: Vec::new(),
    };
    s.run(&zero_like(first))?;
    Ok(s.best.iter().map(|&i| candidates[i].clone()).collect())
}

/// Minimal nonzero ideals among `ideals`.
fn atoms(ideals: &[Ideal]) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for a in ideals {
        let mut minimal = true;
        for b in ideals {
            if a != b && a.contains(b)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Largest `t <= limit` for which `spec` has `t` independent nontrivial
/// ideals, with a witness family.
///
/// Minimal ideals are searched first; if they fall short of `limit` the
/// search is repeated over every nontrivial ideal.
pub fn max_independent_family(
    spec: &RingSpec,
    limit: usize,
    cap: usize,
) -> Result<(usize, IndependentFamily)> {
    if limit == 0 {
        return Err(Error::InvalidParameter("limit must be at least 1".into()));
    }
    check_cap(
        "nontrivial ideal count",
        spec.nontrivial_count(),
        cap as u128,
    )?;
    let all = nontrivial_ideals(spec, usize::MAX)?;
    if all.is_empty() {
        return Err(Error::NoNontrivialIdeals);
    }
    let accept_all = |_: &Ideal| true;
    let mut best = search(&atoms(&all)?, limit, &accept_all)?;
    if best.len() < limit {
        let wider = search(&all, limit, &accept_all)?;
        if wider.len() > best.len() {
            best = wider;
        }
    }
    let family = IndependentFamily::new(best)?;
    Ok((family.len(), family))
}

/// Exhaustive search for `n` independent nontrivial ideals whose sum is a
/// proper ideal.
pub fn find_independent_with_proper_join(
    spec: &RingSpec,
    n: usize,
    cap: usize,
) -> Result<Option<IndependentFamily>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_cap(
        "nontrivial ideal count",
        spec.nontrivial_count(),
        cap as u128,
    )?;
    let all = nontrivial_ideals(spec, usize::MAX)?;
    let proper = |j: &Ideal| !j.is_unit();
    let found = search(&all, n, &proper)?;
    if found.len() == n {
        Ok(Some(IndependentFamily::new(found)?))
    } else {
        Ok(None)
    }
}
