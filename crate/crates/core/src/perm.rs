//! Permutations of `{1..n}`, cycle types, the length statistic, and the
//! enumeration kernels behind Stanley's formula and the linear-terms count.
//!
//! Composition convention, fixed project-wide: `compose(a, b)` applies `b`
//! first, so `compose(a, b)(x) = a(b(x))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Default cap on the support size of exhaustive enumerations (8! = 40320
/// factorizations).
pub const ENUMERATION_CAP: usize = 8;

/// A permutation of `{1..n}`, stored as 0-indexed images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from 0-indexed images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Domain(format!(
                    "images {images:?} do not form a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-indexed disjoint cycles, e.g. `&[&[1, 2], &[3, 4]]` in
    /// `S_n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::Domain(format!("invalid cycle {cycle:?} in S_{n}")));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-indexed point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// `self` after `other`: `result(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles as sorted 1-indexed lists, each starting at its least element,
    /// ordered by least element; includes fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of cycles, counting fixed points.
    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Minimal number of transpositions: `n - (number of cycles)`.
    pub fn length(&self) -> usize {
        self.n() - self.num_cycles()
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// 1-indexed cycle label of each point (for containment checks).
    fn cycle_labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.n()];
        for (i, cycle) in self.cycles().into_iter().enumerate() {
            for x in cycle {
                labels[x - 1] = i;
            }
        }
        labels
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A cycle type: positive parts stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidCycleType("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Parses comma-separated parts, e.g. `"3,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidCycleType("empty cycle type".into()));
        }
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidCycleType(s.to_string()))
            })
            .collect::<Result<_>>()?;
        CycleType::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total size `K = sum k_i`.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Reduced length `|pi| = K - l` of any permutation of this type.
    pub fn reduced_length(&self) -> u32 {
        self.total() - self.parts.len() as u32
    }

    /// The fixed class representative: cycles on consecutive blocks
    /// `1..k_1`, `k_1+1..k_1+k_2`, ...
    pub fn representative(&self) -> Permutation {
        let k = self.total() as usize;
        let mut images: Vec<usize> = (0..k).collect();
        let mut start = 0usize;
        for &part in &self.parts {
            let part = part as usize;
            for i in 0..part {
                images[start + i] = start + (i + 1) % part;
            }
            start += part;
        }
        Permutation { images }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Lexicographic enumeration of all permutations of `S_n`.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl AllPermutations {
    pub fn new(n: usize) -> Self {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let out = Permutation {
            images: current.clone(),
        };
        // Standard next-permutation step.
        let mut v = current;
        let n = v.len();
        if n >= 2 {
            let mut i = n - 1;
            while i > 0 && v[i - 1] >= v[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while v[j] <= v[i - 1] {
                    j -= 1;
                }
                v.swap(i - 1, j);
                v[i..].reverse();
                self.next = Some(v);
            }
        }
        Some(out)
    }
}

/// All ordered pairs `(sigma1, sigma2)` with `sigma1 sigma2 = pi`; exactly
/// `n!` of them, one per choice of `sigma1`.
pub fn enumerate_factorizations(
    pi: &Permutation,
) -> Result<impl Iterator<Item = (Permutation, Permutation)> + '_> {
    let n = pi.n();
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded(n, ENUMERATION_CAP));
    }
    Ok(AllPermutations::new(n).map(move |sigma1| {
        let sigma2 = sigma1
            .inverse()
            .compose(pi)
            .expect("sizes match by construction");
        (sigma1, sigma2)
    }))
}

/// Rewrites a factorization `sigma1 sigma2` so that every cycle of the new
/// first factor is contained in a cycle of the new second factor, without
/// changing the product or the total length.  While two points share a cycle
/// of `sigma1` but not of `sigma2`, a transposition is moved across:
/// `sigma1 <- sigma1 (a,b)`, `sigma2 <- (a,b) sigma2`.
pub fn feray_normal_form(
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<(Permutation, Permutation)> {
    if sigma1.n() != sigma2.n() {
        return Err(Error::SizeMismatch(sigma1.n(), sigma2.n()));
    }
    let n = sigma1.n();
    let mut s1 = sigma1.clone();
    let mut s2 = sigma2.clone();
    loop {
        let labels2 = s2.cycle_labels();
        let mut found = None;
        'outer: for cycle in s1.cycles() {
            for i in 1..cycle.len() {
                if labels2[cycle[0] - 1] != labels2[cycle[i] - 1] {
                    found = Some((cycle[0], cycle[i]));
                    break 'outer;
                }
            }
        }
        match found {
            None => return Ok((s1, s2)),
            Some((a, b)) => {
                let t = Permutation::transposition(n, a, b);
                s1 = s1.compose(&t)?;
                s2 = t.compose(&s2)?;
            }
        }
    }
}

/// Number of permutations of `S_n` of each length: the counts `c_i` are the
/// coefficients of `(1+x)(1+2x)...(1+(n-1)x)`.
pub fn count_by_length(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "n must be positive");
    let mut coeffs: Vec<BigInt> = vec![BigInt::one()];
    for j in 1..n {
        let mut next = vec![BigInt::ZERO; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * BigInt::from(j);
        }
        coeffs = next;
    }
    coeffs
}

/// For the fixed representative `omega` of `mu` in `S_K`, counts the
/// `K`-cycles `c` with a given number of cycles in `c * omega`; returns the
/// full table `b -> count`.
pub fn count_cycle_products_table(mu: &CycleType) -> Result<std::collections::BTreeMap<u32, u64>> {
    let k = mu.total() as usize;
    if k > ENUMERATION_CAP {
        return Err(Error::CapExceeded(k, ENUMERATION_CAP));
    }
    let omega = mu.representative();
    let mut table = std::collections::BTreeMap::new();
    // K-cycles (1 a_2 ... a_K): one per arrangement of {2..K}.
    let mut arrangement: Vec<usize> = (1..k).collect();
    loop {
        let mut cycle = Vec::with_capacity(k);
        cycle.push(1usize);
        cycle.extend(arrangement.iter().map(|&x| x + 1));
        let c = Permutation::from_cycles(k, &[&cycle])?;
        let product = c.compose(&omega)?;
        *table.entry(product.num_cycles() as u32).or_insert(0u64) += 1;
        if !next_arrangement(&mut arrangement) {
            break;
        }
    }
    // Sign check: a K-cycle times omega has sign (-1)^{K-1} (-1)^{K-l} =
    // (-1)^{l+1}, so counts where K - b has the other parity must vanish.
    let l = mu.len() as u32;
    let k = mu.total();
    for (&b, &count) in &table {
        debug_assert!(
            count == 0 || (k - b + l + 1) % 2 == 0,
            "parity violation at b = {b} for mu = {mu}"
        );
        let _ = (b, count);
    }
    Ok(table)
}

/// Number of `K`-cycles `c` with `kappa(c * omega_mu) = b`.
pub fn count_cycle_products(mu: &CycleType, b: u32) -> Result<u64> {
    Ok(count_cycle_products_table(mu)?.get(&b).copied().unwrap_or(0))
}

fn next_arrangement(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
