//! Finite commutative rings as products of local blocks, and their ideals.

mod ideal;
mod independence;
mod parse;
pub mod subspace;

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

pub use ideal::{enumerate_ideals, nontrivial_ideals, BlockIdeal, Ideal, VsPart};
pub use independence::{
    find_independent_with_proper_join, is_independent_family, max_independent_family,
    IndependentFamily,
};
pub use parse::parse_ring_spec;

/// One local factor of a ring.
///
/// The derived ordering (kind, then parameters) is the canonical block order
/// used when enumerating ring specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockSpec {
    /// The field `GF(q)`.
    Field { q: u32 },
    /// A chain ring with residue field of size `q` whose maximal ideal has
    /// nilpotency index `k` (for example `Z_{p^k}`), `k >= 2`.
    Chain { q: u32, k: u32 },
    /// A local ring with `m^2 = 0` and `m` a `d`-dimensional space over
    /// `GF(q)`, `q` prime and `d >= 2`.
    VsLocal { q: u32, d: u32 },
}

impl BlockSpec {
    /// Number of ideals of the block, zero and unit included. Saturates at
    /// `u128::MAX`.
    pub fn ideal_count(&self) -> u128 {
        match *self {
            BlockSpec::Field { .. } => 2,
            BlockSpec::Chain { k, .. } => k as u128 + 1,
            BlockSpec::VsLocal { q, d } => subspace::subspace_count(q, d).saturating_add(1),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BlockSpec::Field { .. })
    }

    /// Residue field size.
    pub fn q(&self) -> u32 {
        match *self {
            BlockSpec::Field { q } | BlockSpec::Chain { q, .. } | BlockSpec::VsLocal { q, .. } => q,
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BlockSpec::Field { q } => write!(f, "GF({q})"),
            BlockSpec::Chain { q, k } => write!(f, "chain({q},{k})"),
            BlockSpec::VsLocal { q, d } => write!(f, "vs({q},{d})"),
        }
    }
}

impl Serialize for BlockSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite commutative ring given as an ordered product of local blocks.
///
/// Equality and hashing look at the blocks only; `source_text` is kept for
/// reporting.
#[derive(Debug, Clone)]
pub struct RingSpec {
    pub blocks: Vec<BlockSpec>,
    pub source_text: String,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for RingSpec {}

impl Hash for RingSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.blocks.hash(state);
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl RingSpec {
    /// Builds a spec from blocks that are already canonical. The source text
    /// is the canonical rendering.
    pub fn from_blocks(blocks: Vec<BlockSpec>) -> Self {
        let mut spec = RingSpec {
            blocks,
            source_text: String::new(),
        };
        spec.source_text = spec.to_string();
        spec
    }

    /// Product of the per-block ideal counts (saturating).
    pub fn ideal_count(&self) -> u128 {
        self.blocks
            .iter()
            .fold(1u128, |acc, b| acc.saturating_mul(b.ideal_count()))
    }

    /// Number of ideals other than zero and the whole ring.
    pub fn nontrivial_count(&self) -> u128 {
        self.ideal_count().saturating_sub(2)
    }

    /// A finite commutative ring is reduced exactly when it is a product of
    /// fields.
    pub fn is_reduced(&self) -> bool {
        self.blocks.iter().all(BlockSpec::is_field)
    }

    /// The spec restricted to the listed block positions, in that order.
    pub fn sub_spec(&self, positions: &[usize]) -> RingSpec {
        RingSpec::from_blocks(positions.iter().map(|&i| self.blocks[i]).collect())
    }
}

pub fn is_reduced(spec: &RingSpec) -> bool {
    spec.is_reduced()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn is_prime_power(n: u64) -> bool {
    let f = factorize(n);
    f.len() == 1
}
