//! Truncated formal Laurent series with honest window bookkeeping.
//!
//! A series carries the exponent window `[lo, hi]` on which its coefficients
//! are guaranteed correct, plus two flags saying whether the coefficients
//! *outside* the window are known to vanish (`exact_below` / `exact_above`).
//! Every operation propagates the guaranteed-correct window; extracting a
//! coefficient outside it is an error, never a silent zero.  This is what
//! makes nested coefficient extraction trustworthy.
//!
//! Series expanded in decreasing powers (reciprocal Cauchy transforms and
//! friends) are exact above and truncated below; ordinary power series are
//! the mirror image.  The same type serves both.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rat::{binomial, rat, Rat};

/// Coefficient domain for series: exact rationals or multivariate
/// polynomials over them.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Product with monomials above the weight cap dropped (no-op cap for
    /// scalar domains).
    fn mul_capped(&self, other: &Self, cap: Option<u32>) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    fn invert(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn zero() -> Self {
        rat(0)
    }
    fn one() -> Self {
        rat(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_capped(&self, other: &Self, _cap: Option<u32>) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn mul_capped(&self, other: &Self, cap: Option<u32>) -> Self {
        MultiPoly::mul_capped(self, other, cap)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_rat(r: Rat) -> Self {
        MultiPoly::constant(r)
    }
    fn invert(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if Zero::is_zero(&c) {
            None
        } else {
            Some(MultiPoly::constant(c.recip()))
        }
    }
}

/// Truncated Laurent series in one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries<C: Coeff> {
    var: String,
    coeffs: BTreeMap<i64, C>,
    /// Guaranteed-correct exponent window.
    lo: i64,
    hi: i64,
    /// Coefficients below `lo` are known to vanish.
    exact_below: bool,
    /// Coefficients above `hi` are known to vanish.
    exact_above: bool,
}

impl<C: Coeff> LaurentSeries<C> {
    /// Exact series (Laurent polynomial) from terms; window spans support.
    pub fn from_terms(var: &str, terms: Vec<(i64, C)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                let entry = coeffs.entry(e).or_insert_with(C::zero);
                entry.add_assign_ref(&c);
                if entry.is_zero() {
                    coeffs.remove(&e);
                }
            }
        }
        let lo = coeffs.keys().next().copied().unwrap_or(0);
        let hi = coeffs.keys().next_back().copied().unwrap_or(0);
        LaurentSeries {
            var: var.to_string(),
            coeffs,
            lo,
            hi,
            exact_below: true,
            exact_above: true,
        }
    }

    pub fn zero(var: &str) -> Self {
        Self::from_terms(var, vec![])
    }

    pub fn one(var: &str) -> Self {
        Self::from_terms(var, vec![(0, C::one())])
    }

    pub fn monomial(var: &str, e: i64, c: C) -> Self {
        Self::from_terms(var, vec![(e, c)])
    }

    pub fn variable(&self) -> &str {
        &self.var
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.exact_below && self.exact_above
    }

    /// Widens the declared window of an exact series (coefficients outside
    /// the support of an exact series are genuinely zero).
    pub fn with_window(mut self, lo: i64, hi: i64) -> Self {
        assert!(
            self.is_exact(),
            "window of a truncated series cannot be widened"
        );
        assert!(self.coeffs.keys().all(|&e| lo <= e && e <= hi));
        self.lo = lo;
        self.hi = hi;
        self
    }

    /// Clamps the window from below, dropping stored terms under `lo`.
    /// Exactness survives when nothing is cut.
    pub fn truncate_below(mut self, lo: i64) -> Self {
        if lo > self.lo {
            self.coeffs.retain(|&e, _| e >= lo);
            self.lo = lo;
            self.exact_below = false;
        }
        self
    }

    /// Clamps the window from above, dropping stored terms over `hi`.
    /// Exactness survives when nothing is cut.
    pub fn truncate_above(mut self, hi: i64) -> Self {
        if hi < self.hi {
            self.coeffs.retain(|&e, _| e <= hi);
            self.hi = hi;
            self.exact_above = false;
        }
        self
    }

    /// Declares the coefficients below `lo` unknown regardless of what is
    /// currently stored (used to model externally truncated data).
    pub fn mark_unknown_below(mut self, lo: i64) -> Self {
        self.coeffs.retain(|&e, _| e >= lo);
        self.lo = self.lo.max(lo);
        self.exact_below = false;
        self
    }

    /// Mirror of [`Self::mark_unknown_below`].
    pub fn mark_unknown_above(mut self, hi: i64) -> Self {
        self.coeffs.retain(|&e, _| e <= hi);
        self.hi = self.hi.min(hi);
        self.exact_above = false;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    fn insert(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(C::zero);
        entry.add_assign_ref(&c);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            Err(Error::VariableMismatch(self.var.clone(), other.var.clone()))
        } else {
            Ok(())
        }
    }

    /// Exact coefficient of `var^e`, or an error when `e` lies outside the
    /// reliable window.
    pub fn extract(&self, e: i64) -> Result<C> {
        if e >= self.lo && e <= self.hi {
            return Ok(self.coeffs.get(&e).cloned().unwrap_or_else(C::zero));
        }
        if (e < self.lo && self.exact_below) || (e > self.hi && self.exact_above) {
            return Ok(C::zero());
        }
        Err(Error::WindowExhausted {
            var: self.var.clone(),
            exponent: e,
            lo: self.lo,
            hi: self.hi,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let exact_below = self.exact_below && other.exact_below;
        let exact_above = self.exact_above && other.exact_above;
        let lo = if exact_below {
            self.lo.min(other.lo)
        } else {
            let mut lo = i64::MIN;
            if !self.exact_below {
                lo = lo.max(self.lo);
            }
            if !other.exact_below {
                lo = lo.max(other.lo);
            }
            lo
        };
        let hi = if exact_above {
            self.hi.max(other.hi)
        } else {
            let mut hi = i64::MAX;
            if !self.exact_above {
                hi = hi.min(self.hi);
            }
            if !other.exact_above {
                hi = hi.min(other.hi);
            }
            hi
        };
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo,
            hi,
            exact_below,
            exact_above,
        };
        for (&e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if e >= lo && e <= hi {
                out.insert(e, c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg_ref())).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (&e, k) in &self.coeffs {
            out.insert(e, k.mul_ref(c));
        }
        out
    }

    /// Multiplies by `var^n`.
    pub fn shift_exponents(&self, n: i64) -> Self {
        LaurentSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + n, c.clone())).collect(),
            lo: self.lo + n,
            hi: self.hi + n,
            exact_below: self.exact_below,
            exact_above: self.exact_above,
        }
    }

    /// Exact product on the guaranteed-correct window.
    ///
    /// A factor truncated below contaminates every product exponent `e <
    /// lo_self + hi_other_possible`; the mirror statement holds above.  The
    /// result window is the largest one free of contamination from either
    /// side.  `floor` additionally discards result exponents below it (used
    /// by extraction pipelines that only ever look near one coefficient),
    /// and `cap` prunes coefficient monomials by weight.
    pub fn mul_full(&self, other: &Self, cap: Option<u32>, floor: Option<i64>) -> Result<Self> {
        self.check_var(other)?;

        let bound_above = |s: &Self| if s.exact_above { Some(s.hi) } else { None };
        let bound_below = |s: &Self| if s.exact_below { Some(s.lo) } else { None };

        let exact_below = self.exact_below && other.exact_below;
        let exact_above = self.exact_above && other.exact_above;

        let mut lo = if exact_below {
            self.lo + other.lo
        } else {
            let mut lo = i64::MIN;
            if !self.exact_below {
                match bound_above(other) {
                    Some(b) => lo = lo.max(self.lo + b),
                    None => lo = i64::MAX, // nothing reliable from below
                }
            }
            if !other.exact_below {
                match bound_above(self) {
                    Some(b) => lo = lo.max(other.lo + b),
                    None => lo = i64::MAX,
                }
            }
            lo
        };
        let hi = if exact_above {
            self.hi + other.hi
        } else {
            let mut hi = i64::MAX;
            if !self.exact_above {
                match bound_below(other) {
                    Some(b) => hi = hi.min(self.hi + b),
                    None => hi = i64::MIN,
                }
            }
            if !other.exact_above {
                match bound_below(self) {
                    Some(b) => hi = hi.min(other.hi + b),
                    None => hi = i64::MIN,
                }
            }
            hi
        };

        let mut exact_below = exact_below;
        if let Some(f) = floor {
            if f > lo {
                lo = f;
                exact_below = false;
            }
        }

        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo,
            hi,
            exact_below,
            exact_above,
        };
        if lo > hi {
            return Ok(out);
        }
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e < lo || e > hi {
                    continue;
                }
                out.insert(e, ca.mul_capped(cb, cap));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_full(other, None, None)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.var);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn top_term(&self) -> Option<(i64, &C)> {
        self.coeffs.iter().next_back().map(|(&e, c)| (e, c))
    }

    fn bottom_term(&self) -> Option<(i64, &C)> {
        self.coeffs.iter().next().map(|(&e, c)| (e, c))
    }

    /// Reciprocal expanded in decreasing powers, computed down to exponent
    /// `lo_out`.  Requires the highest-exponent coefficient to be invertible
    /// and nothing unknown above it.
    pub fn recip_desc(&self, lo_out: i64) -> Result<Self> {
        if !self.exact_above {
            return Err(Error::NonInvertibleLeading);
        }
        let (b, lead) = self.top_term().ok_or(Error::NonInvertibleLeading)?;
        let lead_inv = lead.invert().ok_or(Error::NonInvertibleLeading)?;

        // A single term inverts exactly.
        if self.coeffs.len() == 1 {
            return Ok(Self::monomial(&self.var, -b, lead_inv));
        }

        // Reliability: computing the coefficient at -b - m consumes input
        // entries down to exponent b - m.
        let lo = if self.exact_below {
            lo_out
        } else {
            lo_out.max(self.lo - 2 * b)
        };
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo,
            hi: -b,
            exact_below: false,
            exact_above: true,
        };
        if lo > -b {
            return Ok(out);
        }
        let mut r: BTreeMap<i64, C> = BTreeMap::new();
        r.insert(-b, lead_inv.clone());
        for e in (lo..=-b - 1).rev() {
            // sum_{a < b} A_a * R_{e + b - a} must cancel at order e + b.
            let mut acc = C::zero();
            for (&a, ca) in self.coeffs.range(..b) {
                let idx = e + b - a;
                if let Some(rc) = r.get(&idx) {
                    acc.add_assign_ref(&ca.mul_ref(rc));
                }
            }
            let val = lead_inv.mul_ref(&acc).neg_ref();
            if !val.is_zero() {
                r.insert(e, val);
            }
        }
        out.coeffs = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    /// Reciprocal expanded in increasing powers, computed up to exponent
    /// `hi_out`.  Requires the lowest-exponent coefficient to be invertible
    /// and nothing unknown below it.
    pub fn recip_asc(&self, hi_out: i64) -> Result<Self> {
        if !self.exact_below {
            return Err(Error::NonInvertibleLeading);
        }
        let (b, lead) = self.bottom_term().ok_or(Error::NonInvertibleLeading)?;
        let lead_inv = lead.invert().ok_or(Error::NonInvertibleLeading)?;

        if self.coeffs.len() == 1 {
            return Ok(Self::monomial(&self.var, -b, lead_inv));
        }

        let hi = if self.exact_above {
            hi_out
        } else {
            hi_out.min(self.hi - 2 * b)
        };
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo: -b,
            hi,
            exact_below: true,
            exact_above: false,
        };
        if hi < -b {
            return Ok(out);
        }
        let mut r: BTreeMap<i64, C> = BTreeMap::new();
        r.insert(-b, lead_inv.clone());
        for e in -b + 1..=hi {
            let mut acc = C::zero();
            for (&a, ca) in self.coeffs.range(b + 1..) {
                let idx = e + b - a;
                if idx < -b {
                    break;
                }
                if let Some(rc) = r.get(&idx) {
                    acc.add_assign_ref(&ca.mul_ref(rc));
                }
            }
            let val = lead_inv.mul_ref(&acc).neg_ref();
            if !val.is_zero() {
                r.insert(e, val);
            }
        }
        out.coeffs = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    /// Substitutes `var -> var - j` and re-expands every `(var - j)^m` in
    /// decreasing powers by the binomial series.  The output keeps the input
    /// window; terms spilling below it are truncated away, so the result is
    /// exact within the window and marked truncated below whenever the input
    /// had negative exponents.
    pub fn shift_substitute(&self, j: &Rat) -> Self {
        if Zero::is_zero(j) {
            return self.clone();
        }
        let spills = self.coeffs.keys().any(|&e| e < 0);
        let exact_below = self.exact_below && !spills;
        // Without negative powers the expansion is finite and exact down to
        // exponent 0; otherwise the infinite tails are clipped at the input
        // window.
        let lo = if exact_below { self.lo.min(0) } else { self.lo };
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo,
            hi: self.hi,
            exact_below,
            exact_above: self.exact_above,
        };
        let neg_j = -j.clone();
        for (&m, c) in &self.coeffs {
            if m >= 0 {
                // (z - j)^m, finite binomial expansion.
                let mut jt = rat(1);
                for t in 0..=m {
                    let e = m - t;
                    if e >= lo {
                        let coef = Rat::from(binomial(m as u64, t as u64)) * &jt;
                        out.insert(e, c.mul_ref(&C::from_rat(coef)));
                    }
                    jt *= &neg_j;
                }
            } else {
                // (z - j)^{-|m|} = sum_t C(|m|+t-1, t) j^t z^{m-t}.
                let mm = (-m) as u64;
                let mut jt = rat(1);
                let mut t = 0i64;
                while m - t >= lo {
                    let coef = Rat::from(binomial(mm + t as u64 - 1, t as u64));
                    out.insert(m - t, c.mul_ref(&C::from_rat(&coef * &jt)));
                    jt *= j;
                    t += 1;
                }
            }
        }
        out
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut out = LaurentSeries {
            var: self.var.clone(),
            coeffs: BTreeMap::new(),
            lo: self.lo - 1,
            hi: self.hi - 1,
            exact_below: self.exact_below,
            exact_above: self.exact_above,
        };
        for (&e, c) in &self.coeffs {
            if e != 0 {
                out.insert(e - 1, c.mul_ref(&C::from_rat(rat(e))));
            }
        }
        out
    }

    /// Composition `self(inner)` for ascending series: `self` must be known
    /// from exponent 0 up, `inner` must have valuation at least 1.
    pub fn compose_asc(&self, inner: &Self) -> Result<Self> {
        if !self.exact_below || self.coeffs.keys().next().is_some_and(|&e| e < 0) {
            return Err(Error::Domain(
                "composition requires an ordinary power series as the outer factor".into(),
            ));
        }
        if !inner.exact_below || inner.bottom_term().is_some_and(|(e, _)| e < 1) {
            return Err(Error::Domain(
                "composition requires the inner series to have valuation >= 1".into(),
            ));
        }
        let mut acc = LaurentSeries::zero(&inner.var);
        let mut power = LaurentSeries::one(&inner.var);
        let top = self.coeffs.keys().next_back().copied().unwrap_or(0);
        for e in 0..=top {
            let c = self.coeffs.get(&e);
            if let Some(c) = c {
                acc = acc.add(&power.scale(c))?;
            }
            if e < top {
                power = power.mul(inner)?;
            }
        }
        // The outer truncation limits reliability: coefficient t^m only
        // needs outer terms up to degree m, so an outer series unknown above
        // hi caps the result there.
        if !self.exact_above {
            let cap = self.hi.min(acc.window().1);
            acc = acc.truncate_above(cap);
        }
        Ok(acc)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (&e, c) in self.coeffs.iter().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match e {
                    0 => write!(f, "({c})")?,
                    1 => write!(f, "({c})*{}", self.var)?,
                    _ => write!(f, "({c})*{}^{}", self.var, e)?,
                }
            }
        }
        if !self.exact_below {
            write!(f, " + O({}^{})", self.var, self.lo - 1)?;
        }
        if !self.exact_above {
            write!(f, " + O({}^{})", self.var, self.hi + 1)?;
        }
        Ok(())
    }
}

/// Coefficient `a_n = [t^n] F(t) phi(t)^n` with `F(t) = t^{-k} G(t)`,
/// computed through the modified Lagrange inversion identity
/// `sum_{n >= -k} a_n t^n = F(w) / (1 - t phi'(w))` where `w = t phi(w)`.
///
/// `g` and `phi` are ascending power series over the rationals with
/// invertible constant terms.
pub fn lagrange_modified(
    k: i64,
    g: &LaurentSeries<Rat>,
    phi: &LaurentSeries<Rat>,
    n: i64,
) -> Result<Rat> {
    if n < -k {
        return Err(Error::Domain(format!(
            "coefficient index {n} below the pole order {k}"
        )));
    }
    for (name, s) in [("G", g), ("phi", phi)] {
        let ok = s.extract(0).map(|c| !Zero::is_zero(&c)).unwrap_or(false)
            && s.bottom_term().is_none_or(|(e, _)| e >= 0);
        if !ok {
            return Err(Error::Domain(format!(
                "{name} must be a power series with invertible constant term"
            )));
        }
    }
    let order = n + k + 2;
    let var = phi.variable();

    // Solve w = t * phi(w) by fixed-point iteration; each pass fixes one
    // more coefficient, and the window tracks how many are fixed so far.
    let t = LaurentSeries::<Rat>::monomial(var, 1, rat(1));
    let mut w = LaurentSeries::<Rat>::zero(var).mark_unknown_above(0);
    for _ in 0..=order {
        let phi_w = phi.compose_asc(&w)?;
        w = t.mul(&phi_w)?.truncate_above(order);
    }

    let g_w = g.compose_asc(&w)?.truncate_above(order);
    let phi_prime_w = phi.derivative().compose_asc(&w)?.truncate_above(order);
    let denom = LaurentSeries::<Rat>::one(var)
        .sub(&t.mul(&phi_prime_w)?)?
        .truncate_above(order);
    let denom_inv = denom.recip_asc(order)?;

    // F(w) = w^{-k} G(w).
    let w_pow_k = w.pow(u32::try_from(k.unsigned_abs()).expect("pole order fits u32"))?;
    let f_w = if k >= 0 {
        w_pow_k.recip_asc(order)?.mul(&g_w)?
    } else {
        w_pow_k.mul(&g_w)?
    };

    f_w.mul(&denom_inv)?.extract(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn s(terms: Vec<(i64, i64)>) -> LaurentSeries<Rat> {
        LaurentSeries::from_terms("z", terms.into_iter().map(|(e, c)| (e, rat(c))).collect())
    }

    #[test]
    fn multiply_identity_case() {
        // z * z^{-1} = 1
        let p = s(vec![(1, 1)]).mul(&s(vec![(-1, 1)])).unwrap();
        assert_eq!(p.extract(0).unwrap(), rat(1));
        assert!(p.is_exact());
    }

    #[test]
    fn multiply_polynomials() {
        // (1+z)(1-z) = 1 - z^2
        let p = s(vec![(0, 1), (1, 1)]).mul(&s(vec![(0, 1), (1, -1)])).unwrap();
        assert_eq!(p.extract(0).unwrap(), rat(1));
        assert_eq!(p.extract(1).unwrap(), rat(0));
        assert_eq!(p.extract(2).unwrap(), rat(-1));
    }

    #[test]
    fn multiply_laurent_square() {
        // (z - 2 z^{-1})^2 = z^2 - 4 + 4 z^{-2}
        let a = s(vec![(1, 1), (-1, -2)]);
        let p = a.mul(&a).unwrap();
        assert_eq!(p.extract(2).unwrap(), rat(1));
        assert_eq!(p.extract(0).unwrap(), rat(-4));
        assert_eq!(p.extract(-2).unwrap(), rat(4));
    }

    #[test]
    fn multiply_variable_mismatch() {
        let a = LaurentSeries::<Rat>::monomial("z", 1, rat(1));
        let b = LaurentSeries::<Rat>::monomial("w", 1, rat(1));
        assert!(matches!(a.mul(&b), Err(Error::VariableMismatch(_, _))));
    }

    #[test]
    fn truncated_window_shrinks_in_products() {
        // a known on [-3, 1] (truncated below), b = 1 + z.
        let a = s(vec![(1, 1), (-1, 5), (-3, 7)]).mark_unknown_below(-3);
        let b = s(vec![(0, 1), (1, 1)]);
        let p = a.mul(&b).unwrap();
        // reliable down to -3 + 1 = -2 only
        assert_eq!(p.window().0, -2);
        assert!(p.extract(-2).is_ok());
        assert!(matches!(p.extract(-3), Err(Error::WindowExhausted { .. })));
    }

    #[test]
    fn reciprocal_geometric() {
        // 1/(1 - z^{-1}) = 1 + z^{-1} + z^{-2} + ...
        let a = s(vec![(0, 1), (-1, -1)]);
        let r = a.recip_desc(-5).unwrap();
        for e in -5..=0 {
            assert_eq!(r.extract(e).unwrap(), rat(1), "exponent {e}");
        }
    }

    #[test]
    fn reciprocal_monomial_is_exact() {
        let r = s(vec![(1, 1)]).recip_desc(-5).unwrap();
        assert_eq!(r.extract(-1).unwrap(), rat(1));
        assert!(r.is_exact());
        assert_eq!(r.extract(-100).unwrap(), rat(0));
    }

    #[test]
    fn reciprocal_times_original_is_one() {
        let a = s(vec![(2, 3), (0, -1), (-1, 4)]);
        let r = a.recip_desc(-8).unwrap();
        let p = a.mul(&r).unwrap();
        assert_eq!(p.extract(0).unwrap(), rat(1));
        for e in p.window().0..=-1 {
            assert_eq!(p.extract(e).unwrap(), rat(0));
        }
    }

    #[test]
    fn reciprocal_ascending() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let a = s(vec![(0, 1), (1, -1)]);
        let r = a.recip_asc(5).unwrap();
        for e in 0..=5 {
            assert_eq!(r.extract(e).unwrap(), rat(1));
        }
    }

    #[test]
    fn reciprocal_noninvertible_leading() {
        let a = LaurentSeries::<MultiPoly>::from_terms(
            "z",
            vec![(1, MultiPoly::var(crate::multipoly::Var::BHat(2)))],
        );
        assert!(matches!(a.recip_desc(-3), Err(Error::NonInvertibleLeading)));
    }

    #[test]
    fn extract_trivial_cases() {
        let a = s(vec![(1, 1), (-1, 5)]);
        assert_eq!(a.extract(-1).unwrap(), rat(5));
        let b = s(vec![(2, 1)]);
        assert_eq!(b.extract(-1).unwrap(), rat(0));
    }

    #[test]
    fn shift_of_z_is_exact() {
        let a = s(vec![(1, 1)]);
        let sh = a.shift_substitute(&rat(1));
        assert_eq!(sh.extract(1).unwrap(), rat(1));
        assert_eq!(sh.extract(0).unwrap(), rat(-1));
        assert!(sh.is_exact());
    }

    #[test]
    fn shift_of_inverse_z() {
        // z^{-1} shifted by 1: z^{-1} + z^{-2} + z^{-3} + ...
        let a = s(vec![(-1, 1)]).with_window(-6, -1);
        let sh = a.shift_substitute(&rat(1));
        for e in -6..=-1 {
            assert_eq!(sh.extract(e).unwrap(), rat(1));
        }
        assert!(!sh.is_exact());
    }

    #[test]
    fn shift_negative_direction() {
        // z^{-2} shifted by -1: z^{-2} - 2 z^{-3} + 3 z^{-4} - ...
        let a = s(vec![(-2, 1)]).with_window(-6, -2);
        let sh = a.shift_substitute(&rat(-1));
        assert_eq!(sh.extract(-2).unwrap(), rat(1));
        assert_eq!(sh.extract(-3).unwrap(), rat(-2));
        assert_eq!(sh.extract(-4).unwrap(), rat(3));
        assert_eq!(sh.extract(-5).unwrap(), rat(-4));
    }

    #[test]
    fn residue_is_shift_invariant() {
        // Residue of a Laurent polynomial does not change under z -> z - j.
        let a = s(vec![(2, 3), (0, 7), (-1, 5), (-3, -2)]).with_window(-12, 2);
        for j in [rat(1), rat(-2), ratio(3, 2)] {
            let sh = a.shift_substitute(&j);
            assert_eq!(sh.extract(-1).unwrap(), a.extract(-1).unwrap());
        }
    }

    #[test]
    fn lagrange_examples() {
        let var = "t";
        let one = LaurentSeries::<Rat>::one(var);
        // F = t^{-1}, phi = 1, n = -1: only term.
        assert_eq!(lagrange_modified(1, &one, &one, -1).unwrap(), rat(1));
        // F = 1, phi = (1+t)^2, n = 2: [t^2](1+t)^4 = 6.
        let phi = s(vec![(0, 1), (1, 1)]).pow(2).unwrap();
        let phi = LaurentSeries::from_terms(var, phi.terms().map(|(e, c)| (e, c.clone())).collect());
        let one_t = LaurentSeries::<Rat>::one(var);
        assert_eq!(lagrange_modified(0, &one_t, &phi, 2).unwrap(), rat(6));
        // F = 1, phi = 1 + t, n = 3: [t^3](1+t)^3 = 1.
        let phi = LaurentSeries::<Rat>::from_terms(var, vec![(0, rat(1)), (1, rat(1))]);
        assert_eq!(lagrange_modified(0, &one_t, &phi, 3).unwrap(), rat(1));
        // n below -k errors.
        assert!(lagrange_modified(1, &one_t, &phi, -2).is_err());
    }

    #[test]
    fn ring_laws_on_small_series() {
        let a = s(vec![(1, 2), (0, -1), (-2, 3)]);
        let b = s(vec![(2, 1), (-1, 4)]);
        let c = s(vec![(0, 5), (-3, -7)]);
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
