//! Sparse multivariate polynomials over exact rationals.
//!
//! The indeterminate namespace covers every symbol the character engines
//! need: shifted Boolean cumulants `B~i`, twisted Boolean cumulants `B^i`,
//! free cumulants `Ri`, the rectangle parameters `p`, `q`, the shift `zeta`,
//! the grading variable `u`, and the auxiliary extraction variables `zs` /
//! `xs^-1` that appear while nested coefficient extraction is in flight.
//!
//! The *weight* of a monomial is the grading used throughout: a cumulant
//! indeterminate of index `i` weighs `i`, `zeta` and `u` weigh 1, everything
//! else weighs 0.  Character polynomials in a cycle type `(k_1,...,k_l)`
//! never exceed weight `K + l`, which lets multiplication prune hopeless
//! terms early.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::rat::{is_integer, rat, rat_to_string, Rat};

/// An indeterminate.
///
/// `Z(s)` is the outer extraction variable `z_s` of the residue engine;
/// `XInv(s)` is the reciprocal `x_s^{-1}` used by the ascending-series
/// engine.  Both are transient: finished character polynomials contain only
/// cumulant indeterminates (plus `p`, `q`, `u` where relevant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Shifted Boolean cumulant `B~i` (expansion of `H` around `zeta`).
    BTilde(u16),
    /// Twisted Boolean cumulant `B^i` (expansion of `H` around 0).
    BHat(u16),
    /// Free cumulant `R_i`.
    R(u16),
    /// Rectangle width parameter.
    P,
    /// Rectangle height parameter.
    Q,
    /// Symbolic shift.
    Zeta,
    /// Grading variable.
    U,
    /// Outer extraction variable `z_s` (descending engine).
    Z(u16),
    /// Reciprocal outer variable `x_s^{-1}` (ascending engine).
    XInv(u16),
}

impl Var {
    /// Grading weight of a single power of this indeterminate.
    pub fn weight(self) -> u32 {
        match self {
            Var::BTilde(i) | Var::BHat(i) | Var::R(i) => u32::from(i),
            Var::Zeta | Var::U => 1,
            Var::P | Var::Q | Var::Z(_) | Var::XInv(_) => 0,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::BTilde(i) => write!(f, "B~{i}"),
            Var::BHat(i) => write!(f, "B^{i}"),
            Var::R(i) => write!(f, "R{i}"),
            Var::P => write!(f, "p"),
            Var::Q => write!(f, "q"),
            Var::Zeta => write!(f, "zeta"),
            Var::U => write!(f, "u"),
            Var::Z(s) => write!(f, "z{s}"),
            Var::XInv(s) => write!(f, "x{s}^-1"),
        }
    }
}

/// A monomial: sorted list of `(indeterminate, exponent >= 1)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial { factors: vec![(v, e)] }
        }
    }

    /// Builds from unsorted factors, merging repeats.
    pub fn from_factors(mut factors: Vec<(Var, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|&(v, e)| v.weight() * e).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Merge-multiplies two sorted monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Removes all powers of `v`, returning the removed exponent.
    pub fn without_var(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let factors = self
            .factors
            .iter()
            .copied()
            .filter(|&(w, _)| w != v)
            .collect();
        (Monomial { factors }, e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::from_term(Monomial::var(v), rat(1))
    }

    pub fn from_term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(|| rat(0))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::unit())
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(rat(0)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_unit() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Product, dropping result monomials of weight above `cap`.
    ///
    /// Weight never decreases under multiplication, so capping at the
    /// maximal weight the final answer can carry is lossless for the terms
    /// that matter.
    pub fn mul_capped(&self, other: &MultiPoly, cap: Option<u32>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        if self.is_zero() || other.is_zero() {
            return out;
        }
        // Iterate the smaller operand outermost.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &a.terms {
            let wa = ma.weight();
            for (mb, cb) in &b.terms {
                if let Some(cap) = cap {
                    if wa + mb.weight() > cap {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_capped(other, None)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops monomials whose weight exceeds `cap`.
    pub fn prune_weight(&mut self, cap: u32) {
        self.terms.retain(|m, _| m.weight() <= cap);
    }

    /// Maximal monomial weight (0 for the zero polynomial).
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// The sub-polynomial of monomials with weight exactly `w`.
    pub fn weight_slice(&self, w: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into slices keyed by monomial weight.
    pub fn by_weight(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(MultiPoly::zero)
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Exact division by a rational scalar.
    pub fn div_exact(&self, d: &Rat) -> MultiPoly {
        assert!(!d.is_zero(), "division by zero");
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / d)).collect(),
        }
    }

    /// Collects the polynomial as a map `degree of v -> cofactor`, removing
    /// `v` from the monomials.  Used to re-read a carried polynomial as a
    /// series in the next extraction variable.
    pub fn collect_by_var(&self, v: Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without_var(v);
            out.entry(e)
                .or_insert_with(MultiPoly::zero)
                .add_term(rest, c.clone());
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// True when some monomial contains `v`.
    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Substitutes a polynomial for every occurrence of `v`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut pow_cache: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.without_var(v);
            while pow_cache.len() <= e as usize {
                let next = pow_cache.last().unwrap().mul(value);
                pow_cache.push(next);
            }
            let repl = pow_cache[e as usize].scale(c);
            for (rm, rc) in &repl.terms {
                out.add_term(rest.mul(rm), rc.clone());
            }
        }
        out
    }

    /// Substitutes values for all variables via a lookup; variables the
    /// lookup does not cover must not occur.
    pub fn evaluate<F>(&self, lookup: F) -> Rat
    where
        F: Fn(Var) -> Rat,
    {
        let mut acc = rat(0);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let val = lookup(v);
                let mut p = rat(1);
                for _ in 0..e {
                    p *= &val;
                }
                term *= p;
            }
            acc += term;
        }
        acc
    }

    /// True when every coefficient is a non-negative integer.
    pub fn coefficients_nonnegative_integers(&self) -> bool {
        self.terms
            .values()
            .all(|c| is_integer(c) && !c.is_negative())
    }

    /// True when every coefficient is an integer.
    pub fn coefficients_integers(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    /// Terms in the canonical presentation order: ascending weight, and
    /// within a weight class monomials with the largest top indeterminate
    /// first.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut items: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        items.sort_by(|(ma, _), (mb, _)| {
            ma.weight().cmp(&mb.weight()).then_with(|| {
                let ra: Vec<_> = ma.factors().iter().rev().collect();
                let rb: Vec<_> = mb.factors().iter().rev().collect();
                rb.cmp(&ra)
            })
        });
        items
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.canonical_terms() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs == rat(1) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn bh(i: u16) -> MultiPoly {
        MultiPoly::var(Var::BHat(i))
    }

    #[test]
    fn arithmetic_basics() {
        let a = bh(2).add(&MultiPoly::constant(rat(3)));
        let b = bh(2).sub(&MultiPoly::constant(rat(3)));
        let prod = a.mul(&b);
        // (B^2 + 3)(B^2 - 3) = B^2^2 - 9
        let expected = MultiPoly::from_term(Monomial::power(Var::BHat(2), 2), rat(1))
            .add(&MultiPoly::constant(rat(-9)));
        assert_eq!(prod, expected);
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let a = bh(3);
        let d = a.sub(&bh(3));
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn weights() {
        let m = Monomial::from_factors(vec![(Var::BHat(2), 2), (Var::BHat(3), 1), (Var::U, 1)]);
        assert_eq!(m.weight(), 8);
        let m = Monomial::from_factors(vec![(Var::P, 4), (Var::Z(1), 2)]);
        assert_eq!(m.weight(), 0);
    }

    #[test]
    fn capped_multiplication_drops_heavy_terms() {
        let a = bh(3).add(&bh(2));
        let b = bh(4);
        let capped = a.mul_capped(&b, Some(6));
        // B^3*B^4 has weight 7 and must be dropped; B^2*B^4 stays.
        let expected = MultiPoly::from_term(
            Monomial::from_factors(vec![(Var::BHat(2), 1), (Var::BHat(4), 1)]),
            rat(1),
        );
        assert_eq!(capped, expected);
    }

    #[test]
    fn substitution() {
        // B^2 -> -R2 inside B^2^2 + B^2 gives R2^2 - R2.
        let p = MultiPoly::from_term(Monomial::power(Var::BHat(2), 2), rat(1)).add(&bh(2));
        let sub = p.substitute(Var::BHat(2), &MultiPoly::var(Var::R(2)).neg());
        let expected = MultiPoly::from_term(Monomial::power(Var::R(2), 2), rat(1))
            .sub(&MultiPoly::var(Var::R(2)));
        assert_eq!(sub, expected);
    }

    #[test]
    fn evaluation() {
        let p = bh(2).mul(&bh(3)).scale(&ratio(1, 2));
        let v = p.evaluate(|v| match v {
            Var::BHat(2) => rat(-4),
            Var::BHat(3) => rat(6),
            _ => unreachable!(),
        });
        assert_eq!(v, rat(-12));
    }

    #[test]
    fn canonical_display_orders_by_weight_then_top_variable() {
        // 18*B^3 + 6*B^5 + 13*B^2*B^3: weight 3 first, then weight 5 with
        // B^5 ahead of B^2*B^3.
        let p = bh(3).scale(&rat(18)).add(&bh(5).scale(&rat(6))).add(
            &MultiPoly::from_term(
                Monomial::from_factors(vec![(Var::BHat(2), 1), (Var::BHat(3), 1)]),
                rat(13),
            ),
        );
        assert_eq!(p.to_string(), "18*B^3 + 6*B^5 + 13*B^2*B^3");
    }

    #[test]
    fn collect_by_var_strips_the_variable() {
        let p = MultiPoly::from_term(
            Monomial::from_factors(vec![(Var::Z(1), 2), (Var::BHat(2), 1)]),
            rat(5),
        )
        .add(&bh(3));
        let by = p.collect_by_var(Var::Z(1));
        assert_eq!(by[&2], bh(2).scale(&rat(5)));
        assert_eq!(by[&0], bh(3));
    }
}
