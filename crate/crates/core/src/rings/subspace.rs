//! Subspaces of `GF(p)^d` kept in reduced row echelon form.
//!
//! The RREF basis of a subspace is unique, so structural equality of
//! [`Subspace`] values is equality of subspaces.

use std::fmt;

/// A subspace of `GF(p)^d`, stored as the nonzero rows of its RREF basis.
/// The prime and ambient dimension are carried by the owner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { rows: Vec::new() }
    }

    /// The whole space `GF(p)^d`.
    pub fn full(d: u32) -> Self {
        let rows = (0..d as usize)
            .map(|i| {
                let mut r = vec![0; d as usize];
                r[i] = 1;
                r
            })
            .collect();
        Subspace { rows }
    }

    /// The span of arbitrary vectors (entries are reduced mod `p`).
    pub fn span(vectors: &[Vec<u32>], p: u32) -> Self {
        let rows = vectors
            .iter()
            .map(|v| v.iter().map(|x| x % p).collect())
            .collect();
        Subspace {
            rows: rref(rows, p),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn sum(&self, other: &Subspace, p: u32) -> Subspace {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace {
            rows: rref(rows, p),
        }
    }

    /// Intersection by the Zassenhaus algorithm: reduce the block matrix
    /// `[U U; W 0]`; rows whose left half vanishes span `U ∩ W` on the right.
    pub fn intersect(&self, other: &Subspace, p: u32, d: u32) -> Subspace {
        let d = d as usize;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero();
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.rows {
            let mut r = u.clone();
            r.extend_from_slice(u);
            rows.push(r);
        }
        for w in &other.rows {
            let mut r = w.clone();
            r.extend(std::iter::repeat_n(0, d));
            rows.push(r);
        }
        let reduced = rref(rows, p);
        let meet: Vec<Vec<u32>> = reduced
            .into_iter()
            .filter(|r| r[..d].iter().all(|&x| x == 0))
            .map(|r| r[d..].to_vec())
            .collect();
        Subspace {
            rows: rref(meet, p),
        }
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Subspace, p: u32) -> bool {
        other.dim() <= self.dim() && self.sum(other, p).dim() == self.dim()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let parts: Vec<String> = r.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))?;
        }
        f.write_str(">")
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn inverse(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Reduced row echelon form over `GF(p)`; zero rows are dropped.
pub fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let p64 = p as u64;
    let mut lead = 0;
    for col in 0..width {
        let Some(pivot) = (lead..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(lead, pivot);
        let inv = inverse(rows[lead][col], p) as u64;
        for x in rows[lead].iter_mut() {
            *x = (*x as u64 * inv % p64) as u32;
        }
        for r in 0..rows.len() {
            if r == lead || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col] as u64;
            let pivot = rows[lead].clone();
            for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                let sub = factor * y as u64 % p64;
                *x = ((*x as u64 + p64 - sub) % p64) as u32;
            }
        }
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    rows
}

/// Gaussian binomial `[d choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u32, d: u32, k: u32) -> u128 {
    if k > d {
        return 0;
    }
    let q = q as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        let num = match q.checked_pow(d - i) {
            Some(v) => v - 1,
            None => return u128::MAX,
        };
        let den = match q.checked_pow(i + 1) {
            Some(v) => v - 1,
            None => return u128::MAX,
        };
        c = match c.checked_mul(num) {
            Some(v) => v / den,
            None => return u128::MAX,
        };
    }
    c
}

/// Number of subspaces of `GF(q)^d`.
pub fn subspace_count(q: u32, d: u32) -> u128 {
    (0..=d).fold(0u128, |acc, k| {
        acc.saturating_add(gaussian_binomial(q, d, k))
    })
}

/// Every subspace of `GF(p)^d`: by dimension descending (the whole space
/// first, zero last), RREF-lexicographic within a dimension.
pub fn all_subspaces(p: u32, d: u32) -> Vec<Subspace> {
    let d = d as usize;
    let mut out = Vec::new();
    for r in (0..=d).rev() {
        let mut layer = Vec::new();
        for pivots in combinations(d, r) {
            // Free entries: right of each pivot, outside pivot columns.
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..d)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let mut values = vec![0u32; slots.len()];
            loop {
                let mut rows = vec![vec![0u32; d]; r];
                for (row, &pc) in pivots.iter().enumerate() {
                    rows[row][pc] = 1;
                }
                for (&(row, c), &v) in slots.iter().zip(&values) {
                    rows[row][c] = v;
                }
                layer.push(Subspace { rows });
                if !advance(&mut values, p) {
                    break;
                }
            }
        }
        layer.sort();
        out.extend(layer);
    }
    out
}

fn advance(values: &mut [u32], p: u32) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < p {
            return true;
        }
        *v = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
