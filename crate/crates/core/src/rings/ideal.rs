use std::fmt;

use serde::{Serialize, Serializer};

use super::subspace::{all_subspaces, Subspace};
use super::{BlockSpec, RingSpec};
use crate::error::{check_cap, Error, Result};

/// The part of an ideal of a `vs(q,d)` block: either the whole block or an
/// ideal inside the maximal ideal, which is a subspace of `m ≅ GF(q)^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VsPart {
    Unit,
    Sub(Subspace),
}

/// One coordinate of an [`Ideal`]: an ideal of a single block. Each value
/// carries its block parameters so that coordinates from different blocks
/// never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockIdeal {
    Field {
        q: u32,
        full: bool,
    },
    /// `m^exp`; `exp = 0` is the whole block and `exp = k` is zero.
    Chain {
        q: u32,
        k: u32,
        exp: u32,
    },
    Vs {
        q: u32,
        d: u32,
        part: VsPart,
    },
}

impl BlockIdeal {
    pub fn block(&self) -> BlockSpec {
        match *self {
            BlockIdeal::Field { q, .. } => BlockSpec::Field { q },
            BlockIdeal::Chain { q, k, .. } => BlockSpec::Chain { q, k },
            BlockIdeal::Vs { q, d, .. } => BlockSpec::VsLocal { q, d },
        }
    }

    pub fn zero(block: BlockSpec) -> Self {
        match block {
            BlockSpec::Field { q } => BlockIdeal::Field { q, full: false },
            BlockSpec::Chain { q, k } => BlockIdeal::Chain { q, k, exp: k },
            BlockSpec::VsLocal { q, d } => BlockIdeal::Vs {
                q,
                d,
                part: VsPart::Sub(Subspace::zero()),
            },
        }
    }

    pub fn unit(block: BlockSpec) -> Self {
        match block {
            BlockSpec::Field { q } => BlockIdeal::Field { q, full: true },
            BlockSpec::Chain { q, k } => BlockIdeal::Chain { q, k, exp: 0 },
            BlockSpec::VsLocal { q, d } => BlockIdeal::Vs {
                q,
                d,
                part: VsPart::Unit,
            },
        }
    }

    /// All ideals of a block, largest first: the whole block, then down to
    /// zero (chains by exponent, subspaces by dimension then RREF order).
    pub fn all(block: BlockSpec) -> Vec<BlockIdeal> {
        match block {
            BlockSpec::Field { q } => vec![
                BlockIdeal::Field { q, full: true },
                BlockIdeal::Field { q, full: false },
            ],
            BlockSpec::Chain { q, k } => {
                (0..=k).map(|exp| BlockIdeal::Chain { q, k, exp }).collect()
            }
            BlockSpec::VsLocal { q, d } => std::iter::once(VsPart::Unit)
                .chain(all_subspaces(q, d).into_iter().map(VsPart::Sub))
                .map(|part| BlockIdeal::Vs { q, d, part })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BlockIdeal::Field { full, .. } => !full,
            BlockIdeal::Chain { k, exp, .. } => exp == k,
            BlockIdeal::Vs { part, .. } => matches!(part, VsPart::Sub(s) if s.is_zero()),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            BlockIdeal::Field { full, .. } => *full,
            BlockIdeal::Chain { exp, .. } => *exp == 0,
            BlockIdeal::Vs { part, .. } => matches!(part, VsPart::Unit),
        }
    }

    // The binary operations below assume both operands come from the same
    // block; `Ideal` checks that before calling them.

    fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (&BlockIdeal::Field { q, full: a }, &BlockIdeal::Field { full: b, .. }) => {
                BlockIdeal::Field { q, full: a && b }
            }
            (&BlockIdeal::Chain { q, k, exp: a }, &BlockIdeal::Chain { exp: b, .. }) => {
                BlockIdeal::Chain {
                    q,
                    k,
                    exp: a.max(b),
                }
            }
            (BlockIdeal::Vs { q, d, part: a }, BlockIdeal::Vs { part: b, .. }) => {
                let part = match (a, b) {
                    (VsPart::Unit, x) | (x, VsPart::Unit) => x.clone(),
                    (VsPart::Sub(x), VsPart::Sub(y)) => VsPart::Sub(x.intersect(y, *q, *d)),
                };
                BlockIdeal::Vs { q: *q, d: *d, part }
            }
            _ => unreachable!("block mismatch is checked by the caller"),
        }
    }

    fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (&BlockIdeal::Field { q, full: a }, &BlockIdeal::Field { full: b, .. }) => {
                BlockIdeal::Field { q, full: a || b }
            }
            (&BlockIdeal::Chain { q, k, exp: a }, &BlockIdeal::Chain { exp: b, .. }) => {
                BlockIdeal::Chain {
                    q,
                    k,
                    exp: a.min(b),
                }
            }
            (BlockIdeal::Vs { q, d, part: a }, BlockIdeal::Vs { part: b, .. }) => {
                let part = match (a, b) {
                    (VsPart::Unit, _) | (_, VsPart::Unit) => VsPart::Unit,
                    (VsPart::Sub(x), VsPart::Sub(y)) => VsPart::Sub(x.sum(y, *q)),
                };
                BlockIdeal::Vs { q: *q, d: *d, part }
            }
            _ => unreachable!("block mismatch is checked by the caller"),
        }
    }

    fn product(&self, other: &Self) -> Self {
        match (self, other) {
            (&BlockIdeal::Field { q, full: a }, &BlockIdeal::Field { full: b, .. }) => {
                BlockIdeal::Field { q, full: a && b }
            }
            (&BlockIdeal::Chain { q, k, exp: a }, &BlockIdeal::Chain { exp: b, .. }) => {
                BlockIdeal::Chain {
                    q,
                    k,
                    exp: (a + b).min(k),
                }
            }
            (BlockIdeal::Vs { q, d, part: a }, BlockIdeal::Vs { part: b, .. }) => {
                // m^2 = 0: two ideals inside m multiply to zero.
                let part = match (a, b) {
                    (VsPart::Unit, x) | (x, VsPart::Unit) => x.clone(),
                    (VsPart::Sub(_), VsPart::Sub(_)) => VsPart::Sub(Subspace::zero()),
                };
                BlockIdeal::Vs { q: *q, d: *d, part }
            }
            _ => unreachable!("block mismatch is checked by the caller"),
        }
    }

    /// `self ⊇ other`.
    fn contains(&self, other: &Self) -> bool {
        match (self, other) {
            (BlockIdeal::Field { full: a, .. }, BlockIdeal::Field { full: b, .. }) => *a || !*b,
            (BlockIdeal::Chain { exp: a, .. }, BlockIdeal::Chain { exp: b, .. }) => a <= b,
            (BlockIdeal::Vs { q, part: a, .. }, BlockIdeal::Vs { part: b, .. }) => match (a, b) {
                (VsPart::Unit, _) => true,
                (VsPart::Sub(_), VsPart::Unit) => false,
                (VsPart::Sub(x), VsPart::Sub(y)) => x.contains(y, *q),
            },
            _ => unreachable!("block mismatch is checked by the caller"),
        }
    }
}

impl fmt::Display for BlockIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        match self {
            BlockIdeal::Field { .. } => f.write_str("F"),
            BlockIdeal::Chain { exp: 0, .. } => f.write_str("R"),
            BlockIdeal::Chain { exp, .. } => write!(f, "m^{exp}"),
            BlockIdeal::Vs {
                part: VsPart::Unit, ..
            } => f.write_str("R"),
            BlockIdeal::Vs {
                d,
                part: VsPart::Sub(s),
                ..
            } => {
                if s.dim() == *d as usize {
                    f.write_str("m")
                } else {
                    write!(f, "{s}")
                }
            }
        }
    }
}

/// An ideal of a [`RingSpec`], one block ideal per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub coords: Vec<BlockIdeal>,
}

impl Ideal {
    pub fn new(coords: Vec<BlockIdeal>) -> Self {
        Ideal { coords }
    }

    pub fn zero(spec: &RingSpec) -> Self {
        Ideal::new(spec.blocks.iter().map(|&b| BlockIdeal::zero(b)).collect())
    }

    pub fn unit(spec: &RingSpec) -> Self {
        Ideal::new(spec.blocks.iter().map(|&b| BlockIdeal::unit(b)).collect())
    }

    pub fn blocks(&self) -> Vec<BlockSpec> {
        self.coords.iter().map(BlockIdeal::block).collect()
    }

    pub fn belongs_to(&self, spec: &RingSpec) -> bool {
        self.coords.len() == spec.blocks.len()
            && self
                .coords
                .iter()
                .zip(&spec.blocks)
                .all(|(c, b)| c.block() == *b)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BlockIdeal::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        self.coords.iter().all(BlockIdeal::is_unit)
    }

    pub fn is_nontrivial(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        let same = self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a.block() == b.block());
        if same {
            Ok(())
        } else {
            Err(Error::MismatchedRing)
        }
    }

    fn zip_with(
        &self,
        other: &Ideal,
        f: impl Fn(&BlockIdeal, &BlockIdeal) -> BlockIdeal,
    ) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(Ideal::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }

    /// Intersection.
    pub fn meet(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, BlockIdeal::meet)
    }

    /// Sum.
    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, BlockIdeal::join)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, BlockIdeal::product)
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.contains(b)))
    }

    /// Whether the intersection is nonzero, without materializing it.
    pub fn meets(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .any(|(a, b)| !a.meet(b).is_zero()))
    }

    /// Human-readable label such as `(m^1, 0)`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All ideals of `spec`, zero and unit included, in block-lexicographic
/// order over the per-block orders of [`BlockIdeal::all`]. The unit ideal
/// comes first and zero last.
pub fn enumerate_ideals(spec: &RingSpec, cap: usize) -> Result<Vec<Ideal>> {
    check_cap("ideal count", spec.ideal_count(), cap as u128)?;
    let per_block: Vec<Vec<BlockIdeal>> = spec.blocks.iter().map(|&b| BlockIdeal::all(b)).collect();
    let mut out: Vec<Vec<BlockIdeal>> = vec![Vec::new()];
    for choices in &per_block {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(Ideal::new).collect())
}

/// The nontrivial ideals of `spec`, in enumeration order.
pub fn nontrivial_ideals(spec: &RingSpec, cap: usize) -> Result<Vec<Ideal>> {
    Ok(enumerate_ideals(spec, cap)?
        .into_iter()
        .filter(Ideal::is_nontrivial)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring_spec;
    use std::collections::{BTreeSet, HashSet};

    fn ideals(s: &str) -> Vec<Ideal> {
        enumerate_ideals(&parse_ring_spec(s).unwrap(), 4096).unwrap()
    }

    /// Ideals of Z_n are dZ_n for the divisors d of n; identify an ideal by
    /// the set of residues it contains.
    fn zn_ideal_elements(n: u64, d: u64) -> BTreeSet<u64> {
        (0..n).filter(|x| x % d == 0).collect()
    }

    /// Maps an ideal of Z_n (given as CRT blocks of prime powers) to the
    /// generator d of the matching ideal dZ_n.
    fn zn_generator(n: u64, ideal: &Ideal) -> u64 {
        let mut d = 1;
        let factors = crate::rings::factorize(n);
        for ((p, e), c) in factors.iter().zip(&ideal.coords) {
            let exp = match c {
                BlockIdeal::Field { full, .. } => u32::from(!full),
                BlockIdeal::Chain { exp, .. } => *exp,
                _ => unreachable!(),
            };
            assert!(exp <= *e);
            d *= p.pow(exp);
        }
        d
    }

    #[test]
    fn counts() {
        assert_eq!(ideals("Z12").len(), 6);
        assert_eq!(ideals("GF(2)").len(), 2);
        assert_eq!(ideals("vs(2,2)").len(), 6);
        assert_eq!(
            ideals("vs(2,2)")
                .iter()
                .filter(|i| i.is_nontrivial())
                .count(),
            4
        );
        let zn12: Vec<_> = ideals("Z12")
            .into_iter()
            .filter(Ideal::is_nontrivial)
            .collect();
        assert_eq!(zn12.len(), 4);
    }

    #[test]
    fn no_duplicates_and_bookends() {
        for s in ["Z12", "vs(3,2) x GF(2)", "Z8 x Z9", "vs(2,3)"] {
            let all = ideals(s);
            let set: HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len(), "{s}");
            assert!(all.first().unwrap().is_unit());
            assert!(all.last().unwrap().is_zero());
            assert_eq!(all.len() as u128, parse_ring_spec(s).unwrap().ideal_count());
        }
    }

    #[test]
    fn zn_lattice_matches_residue_sets() {
        // Independent route: compute meets/joins of dZ_n on element sets.
        for n in [12u64, 36, 60, 16] {
            let all = ideals(&format!("Z{n}"));
            for a in &all {
                for b in &all {
                    let da = zn_generator(n, a);
                    let db = zn_generator(n, b);
                    let ea = zn_ideal_elements(n, da);
                    let eb = zn_ideal_elements(n, db);
                    let meet = zn_ideal_elements(n, zn_generator(n, &a.meet(b).unwrap()));
                    assert_eq!(meet, ea.intersection(&eb).cloned().collect());
                    let join = zn_ideal_elements(n, zn_generator(n, &a.join(b).unwrap()));
                    let sums: BTreeSet<u64> = ea
                        .iter()
                        .flat_map(|x| eb.iter().map(move |y| (x + y) % n))
                        .collect();
                    assert_eq!(join, sums);
                    let prod = zn_ideal_elements(n, zn_generator(n, &a.product(b).unwrap()));
                    // the product ideal is generated by da*db
                    assert_eq!(prod, zn_ideal_elements(n, gcd(da * db, n)));
                }
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn z12_meets() {
        let all = ideals("Z12");
        let by_gen = |d: u64| {
            all.iter()
                .find(|i| zn_generator(12, i) == d)
                .unwrap()
                .clone()
        };
        let (two, three, four, six) = (by_gen(2), by_gen(3), by_gen(4), by_gen(6));
        assert_eq!(two.meet(&three).unwrap(), six);
        assert!(two.meets(&three).unwrap());
        assert!(four.meet(&six).unwrap().is_zero());
        let unit = all.first().unwrap();
        for a in &all {
            assert_eq!(&a.meet(unit).unwrap(), a);
            assert_eq!(&a.product(unit).unwrap(), a);
        }
    }

    #[test]
    fn products_in_local_blocks() {
        let chain = BlockSpec::Chain { q: 2, k: 3 };
        let m1 = Ideal::new(vec![BlockIdeal::Chain { q: 2, k: 3, exp: 1 }]);
        let m2 = Ideal::new(vec![BlockIdeal::Chain { q: 2, k: 3, exp: 2 }]);
        assert!(m1.product(&m2).unwrap().is_zero());
        assert_eq!(m1.product(&m1).unwrap(), m2);
        assert_eq!(BlockIdeal::zero(chain).to_string(), "0");

        let lines: Vec<Ideal> = ideals("vs(2,2)")
            .into_iter()
            .filter(|i| matches!(&i.coords[0], BlockIdeal::Vs { part: VsPart::Sub(s), .. } if s.dim() == 1))
            .collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].product(&lines[1]).unwrap().is_zero());
        assert!(lines[0].meet(&lines[1]).unwrap().is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = ideals("Z12")[1].clone();
        let b = ideals("Z16")[1].clone();
        assert_eq!(a.meet(&b), Err(Error::MismatchedRing));
        assert_eq!(a.join(&b), Err(Error::MismatchedRing));
        assert_eq!(a.product(&b), Err(Error::MismatchedRing));
        let c = ideals("GF(4)")[0].clone();
        let d = ideals("GF(2)")[0].clone();
        assert_eq!(c.meet(&d), Err(Error::MismatchedRing));
    }

    #[test]
    fn cap_is_enforced() {
        let spec = parse_ring_spec("vs(2,4) x vs(2,4)").unwrap();
        assert!(matches!(
            enumerate_ideals(&spec, 4096),
            Err(Error::CapExceeded { size: 4624, .. })
        ));
    }

    #[test]
    fn labels() {
        let all = ideals("Z8 x GF(2)");
        let labels: Vec<String> = all.iter().map(Ideal::label).collect();
        assert_eq!(labels[0], "(R, F)");
        assert!(labels.contains(&"(m^1, 0)".to_string()));
        assert_eq!(labels.last().unwrap(), "(0, 0)");
        let vs: Vec<String> = ideals("vs(2,2)").iter().map(Ideal::label).collect();
        assert_eq!(vs, ["(R)", "(m)", "(<0,1>)", "(<1,0>)", "(<1,1>)", "(0)"]);
    }
}
