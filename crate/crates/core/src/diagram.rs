//! Young diagrams, Russian-convention profiles, the Cauchy transform and
//! all cumulant flavors derived from it.
//!
//! A diagram with profile minima `x_1 < ... < x_s` and maxima
//! `y_1 < ... < y_{s-1}` has Cauchy transform
//! `G(z) = prod (z - y_j) / prod (z - x_i)` and reciprocal `H = 1/G`.
//! Expanding `H(z + zeta)` in decreasing powers of `z` yields the shifted
//! Boolean cumulants; `zeta = 0` gives the twisted Boolean cumulants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::multipoly::{MultiPoly, Var};
use crate::rat::{rat, Rat};
use crate::series::LaurentSeries;

/// An integer partition drawn as a Young diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    /// Builds from weakly decreasing positive row lengths (empty allowed).
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.iter().any(|&r| r == 0) {
            return Err(Error::InvalidPartition("rows must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "rows {rows:?} are not weakly decreasing"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    /// Parses comma-separated row lengths; empty string or "0" is the empty
    /// diagram.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(YoungDiagram::empty());
        }
        let rows: Vec<u32> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<_>>()?;
        YoungDiagram::new(rows)
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of boxes.
    pub fn n(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn num_cols(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    /// `p x q` rectangle: `p` rows of length `q`.
    pub fn rectangle(p: u32, q: u32) -> Self {
        YoungDiagram {
            rows: vec![q; p as usize],
        }
    }

    /// All partitions of `n`, in reverse-lexicographic order.
    pub fn partitions_of(n: u32) -> Vec<YoungDiagram> {
        fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
            if n == 0 {
                out.push(YoungDiagram {
                    rows: prefix.clone(),
                });
                return;
            }
            for part in (1..=n.min(max)).rev() {
                prefix.push(part);
                rec(n - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n.max(1), &mut Vec::new(), &mut out);
        out
    }

    /// Profile corner contents in the Russian convention: local minima
    /// (ascending) and local maxima (ascending).  The empty diagram has
    /// minima `(0)` and no maxima.
    pub fn profile(&self) -> (Vec<i64>, Vec<i64>) {
        let r = self.rows.len();
        let mut minima = Vec::new();
        let mut maxima = Vec::new();
        for i in 1..=r {
            let row = i64::from(self.rows[i - 1]);
            let above = if i == 1 {
                i64::MAX
            } else {
                i64::from(self.rows[i - 2])
            };
            let below = if i == r {
                0
            } else {
                i64::from(self.rows[i])
            };
            if row < above {
                // addable corner at (i, row + 1)
                minima.push(row + 1 - i as i64);
            }
            if row > below {
                // removable corner at (i, row)
                maxima.push(row - i as i64);
            }
        }
        // addable corner below the last row
        minima.push(-(r as i64));
        minima.sort_unstable();
        maxima.sort_unstable();
        (minima, maxima)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.rows.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Rational function with integer zeros and poles, kept as root multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyTransform {
    /// Roots of the numerator (profile maxima after reduction).
    pub zeros: Vec<i64>,
    /// Roots of the denominator (profile minima after reduction).
    pub poles: Vec<i64>,
}

impl CauchyTransform {
    fn reduce(mut zeros: Vec<i64>, mut poles: Vec<i64>) -> Self {
        zeros.sort_unstable();
        poles.sort_unstable();
        let mut kept_zeros = Vec::with_capacity(zeros.len());
        for z in zeros {
            if let Some(pos) = poles.iter().position(|&p| p == z) {
                poles.remove(pos);
            } else {
                kept_zeros.push(z);
            }
        }
        CauchyTransform {
            zeros: kept_zeros,
            poles,
        }
    }
}

/// Cauchy transform from the profile corners: `prod(z - y) / prod(z - x)`.
pub fn cauchy_transform(diagram: &YoungDiagram) -> CauchyTransform {
    let (x, y) = diagram.profile();
    CauchyTransform::reduce(y, x)
}

/// The same transform assembled row by row:
/// `prod_i (z - lambda_i + i) / [(z + n) prod_i (z - lambda_i + i - 1)]`
/// with the partition padded to `n` rows.  Must reduce to the corner form.
pub fn cauchy_transform_row_form(diagram: &YoungDiagram) -> CauchyTransform {
    let n = diagram.n() as usize;
    let mut zeros = Vec::with_capacity(n);
    let mut poles = Vec::with_capacity(n + 1);
    poles.push(-(n as i64));
    for i in 1..=n {
        let lam = i64::from(diagram.rows.get(i - 1).copied().unwrap_or(0));
        zeros.push(lam - i as i64);
        poles.push(lam - i as i64 + 1);
    }
    CauchyTransform::reduce(zeros, poles)
}

/// A finitely supported probability measure on the profile minima.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMeasure {
    /// `(location, weight)` with strictly increasing locations.
    pub atoms: Vec<(i64, Rat)>,
}

impl TransitionMeasure {
    /// Moment `M_k = sum w (x - zeta)^k` of the measure shifted by `zeta`.
    pub fn shifted_moment(&self, zeta: i64, k: u32) -> Rat {
        let mut acc = rat(0);
        for (x, w) in &self.atoms {
            let base = rat(x - zeta);
            let mut p = rat(1);
            for _ in 0..k {
                p *= &base;
            }
            acc += w * p;
        }
        acc
    }
}

/// Transition measure of a diagram: atoms at the profile minima with
/// weights given by the residues of `G`.
pub fn transition_measure(diagram: &YoungDiagram) -> TransitionMeasure {
    let g = cauchy_transform(diagram);
    let atoms = g
        .poles
        .iter()
        .map(|&xi| {
            let mut num = rat(1);
            for &y in &g.zeros {
                num *= rat(xi - y);
            }
            let mut den = rat(1);
            for &xj in &g.poles {
                if xj != xi {
                    den *= rat(xi - xj);
                }
            }
            (xi, num / den)
        })
        .collect();
    TransitionMeasure { atoms }
}

/// Expansion of `H(z + zeta) = 1/G(z + zeta)` in decreasing powers of `z`,
/// reliable down to exponent `lo`.
pub fn h_series(diagram: &YoungDiagram, zeta: i64, lo: i64) -> LaurentSeries<Rat> {
    let g = cauchy_transform(diagram);
    // H(z + zeta) = prod (z - (x_i - zeta)) / prod (z - (y_j - zeta)).
    let numer = poly_from_roots("z", g.poles.iter().map(|&x| x - zeta));
    let denom = poly_from_roots("z", g.zeros.iter().map(|&y| y - zeta));
    // The product with the degree-s numerator must stay reliable down to
    // `lo`, so the reciprocal is expanded s exponents deeper.
    let inv = denom
        .recip_desc(lo - g.poles.len() as i64)
        .expect("monic denominator is invertible");
    numer.mul(&inv).expect("same variable")
}

fn poly_from_roots(var: &str, roots: impl Iterator<Item = i64>) -> LaurentSeries<Rat> {
    let mut acc = LaurentSeries::one(var);
    for r in roots {
        let factor = LaurentSeries::from_terms(var, vec![(1, rat(1)), (0, rat(-r))]);
        acc = acc.mul(&factor).expect("same variable");
    }
    acc
}

/// Cumulant basis tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coefficients of `H(z + zeta)`; `zeta = 0` coincides with the twisted
    /// basis.
    ShiftedBoolean { zeta: u32 },
    /// Coefficients of `H(z)`.
    TwistedBoolean,
    /// Free cumulants.
    Free,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::ShiftedBoolean { .. } => "shifted",
            Basis::TwistedBoolean => "twisted",
            Basis::Free => "free",
        }
    }

    pub fn zeta(self) -> Option<u32> {
        match self {
            Basis::ShiftedBoolean { zeta } => Some(zeta),
            Basis::TwistedBoolean => Some(0),
            Basis::Free => None,
        }
    }

    /// The indeterminate standing for the cumulant of index `i`.
    pub fn var(self, i: u16) -> Var {
        match self {
            Basis::ShiftedBoolean { zeta: 0 } | Basis::TwistedBoolean => Var::BHat(i),
            Basis::ShiftedBoolean { .. } => Var::BTilde(i),
            Basis::Free => Var::R(i),
        }
    }
}

/// Cumulants indexed from 2 (index 1 vanishes identically).
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantVector {
    pub basis: Basis,
    values: Vec<Rat>,
}

impl CumulantVector {
    pub fn new(basis: Basis, values: Vec<Rat>) -> Self {
        CumulantVector { basis, values }
    }

    /// Cumulant of index `i >= 2`; zero past the stored order.
    pub fn get(&self, i: u32) -> Rat {
        assert!(i >= 2, "cumulants are indexed from 2");
        self.values
            .get((i - 2) as usize)
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    /// Highest stored index.
    pub fn order(&self) -> u32 {
        self.values.len() as u32 + 1
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

/// Shifted Boolean cumulants of a diagram through index `order`:
/// `H(z + zeta) = z + zeta + B_2 z^{-1} + B_3 z^{-2} + ...`.
pub fn shifted_boolean_cumulants(diagram: &YoungDiagram, zeta: u32, order: u32) -> CumulantVector {
    assert!(order >= 2);
    let h = h_series(diagram, i64::from(zeta), 1 - i64::from(order));
    let values = (2..=order)
        .map(|i| h.extract(1 - i64::from(i)).expect("within window"))
        .collect();
    let basis = if zeta == 0 {
        Basis::TwistedBoolean
    } else {
        Basis::ShiftedBoolean { zeta }
    };
    CumulantVector::new(basis, values)
}

/// Closed-form shifted Boolean cumulant of a `p x q` rectangle:
/// `-p q (q - p - zeta)^{i-2}`.  Accepts any rational `p`, `q`, `zeta`
/// (negative `p` included).
pub fn rect_boolean_cumulant(p: &Rat, q: &Rat, zeta: &Rat, i: u32) -> Rat {
    assert!(i >= 2);
    let base = q - p - zeta;
    let mut acc = -(p * q);
    for _ in 0..(i - 2) {
        acc *= &base;
    }
    acc
}

/// The same closed form with `p`, `q` symbolic and a concrete shift.
pub fn rect_boolean_cumulant_sym(zeta: u32, i: u32) -> MultiPoly {
    assert!(i >= 2);
    let p = MultiPoly::var(Var::P);
    let q = MultiPoly::var(Var::Q);
    let base = q.sub(&p).sub(&MultiPoly::constant(rat(i64::from(zeta))));
    let mut acc = p.mul(&q).neg();
    for _ in 0..(i - 2) {
        acc = acc.mul(&base);
    }
    acc
}

/// Fully symbolic rectangle cumulant, with `zeta` as an indeterminate.
pub fn rect_boolean_cumulant_sym_zeta(i: u32) -> MultiPoly {
    assert!(i >= 2);
    let p = MultiPoly::var(Var::P);
    let q = MultiPoly::var(Var::Q);
    let base = q.sub(&p).sub(&MultiPoly::var(Var::Zeta));
    let mut acc = p.mul(&q).neg();
    for _ in 0..(i - 2) {
        acc = acc.mul(&base);
    }
    acc
}

/// One failed comparison of a cumulant against its bound.
#[derive(Debug, Clone)]
pub struct CumulantBoundViolation {
    pub index: u32,
    pub value: Rat,
    pub bound: Rat,
}

/// Checks `|B_k| <= [2(A + zeta)]^k / 2` for `2 <= k <= order` against the
/// exact cumulants of the diagram.  The diagram must fit in an `A x A` box.
pub fn check_cumulant_bound(
    diagram: &YoungDiagram,
    a: u32,
    zeta: u32,
    order: u32,
) -> Result<Vec<CumulantBoundViolation>> {
    if diagram.num_rows() > a || diagram.num_cols() > a {
        return Err(Error::Domain(format!(
            "diagram {diagram} does not fit in a {a} x {a} box"
        )));
    }
    let cumulants = shifted_boolean_cumulants(diagram, zeta, order);
    let base = rat(2 * i64::from(a + zeta));
    let mut bound = &base * &base / rat(2);
    let mut violations = Vec::new();
    for k in 2..=order {
        if cumulants.get(k).abs() > bound {
            violations.push(CumulantBoundViolation {
                index: k,
                value: cumulants.get(k),
                bound: bound.clone(),
            });
        }
        bound *= &base;
    }
    Ok(violations)
}

/// Verifies, as rational functions, that `Htilde_mu(z + n) = H(z)` for
/// `mu = lambda + (n-1, ..., 1, 0)`, where
/// `Htilde_mu(z) = z prod (z - mu_i - 1) / prod (z - mu_i)`.
pub fn h_tilde_identity_check(diagram: &YoungDiagram) -> bool {
    let n = diagram.n() as usize;
    let mu: Vec<i64> = (0..n)
        .map(|i| {
            i64::from(diagram.rows.get(i).copied().unwrap_or(0)) + (n - 1 - i) as i64
        })
        .collect();
    // Htilde(z + n): zeros at mu_i + 1 - n and -n; poles at mu_i - n.
    let zeros: Vec<i64> = mu
        .iter()
        .map(|&m| m + 1 - n as i64)
        .chain(std::iter::once(-(n as i64)))
        .collect();
    let poles: Vec<i64> = mu.iter().map(|&m| m - n as i64).collect();
    let lhs = CauchyTransform::reduce(zeros, poles);
    // H = prod(z - x)/prod(z - y), so its zeros are the profile minima.
    let g = cauchy_transform(diagram);
    lhs.zeros == g.poles && lhs.poles == g.zeros
}

/// Big-integer power helper used by bound comparisons.
pub fn bigint_pow(base: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn d(s: &str) -> YoungDiagram {
        YoungDiagram::parse(s).unwrap()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(d("4,3,1").profile(), (vec![-3, -1, 2, 4], vec![-2, 1, 3]));
        assert_eq!(d("2,1").profile(), (vec![-2, 0, 2], vec![-1, 1]));
        assert_eq!(YoungDiagram::empty().profile(), (vec![0], vec![]));
        assert_eq!(d("2,2").profile(), (vec![-2, 2], vec![0]));
    }

    #[test]
    fn profile_interlaces_and_balances() {
        for n in 0..=8 {
            for lam in YoungDiagram::partitions_of(n) {
                let (x, y) = lam.profile();
                assert_eq!(x.len(), y.len() + 1);
                for i in 0..y.len() {
                    assert!(x[i] < y[i] && y[i] < x[i + 1], "interlacing for {lam}");
                }
                let sx: i64 = x.iter().sum();
                let sy: i64 = y.iter().sum();
                assert_eq!(sx, sy, "sum rule for {lam}");
            }
        }
    }

    #[test]
    fn cauchy_transform_examples() {
        // empty: 1/z
        let g = cauchy_transform(&YoungDiagram::empty());
        assert_eq!(g.zeros, Vec::<i64>::new());
        assert_eq!(g.poles, vec![0]);
        // (2,1): (z^2 - 1)/(z^3 - 4z)
        let g = cauchy_transform(&d("2,1"));
        assert_eq!(g.zeros, vec![-1, 1]);
        assert_eq!(g.poles, vec![-2, 0, 2]);
        // (1): z / ((z+1)(z-1))
        let g = cauchy_transform(&d("1"));
        assert_eq!(g.zeros, vec![0]);
        assert_eq!(g.poles, vec![-1, 1]);
    }

    #[test]
    fn row_form_agrees_with_corner_form() {
        for n in 0..=10 {
            for lam in YoungDiagram::partitions_of(n) {
                assert_eq!(
                    cauchy_transform(&lam),
                    cauchy_transform_row_form(&lam),
                    "forms differ for {lam}"
                );
            }
        }
    }

    #[test]
    fn transition_measure_examples() {
        let m = transition_measure(&YoungDiagram::empty());
        assert_eq!(m.atoms, vec![(0, rat(1))]);
        let m = transition_measure(&d("1"));
        assert_eq!(m.atoms, vec![(-1, ratio(1, 2)), (1, ratio(1, 2))]);
    }

    #[test]
    fn transition_measure_is_probability_with_zero_mean() {
        for n in 0..=8 {
            for lam in YoungDiagram::partitions_of(n) {
                let m = transition_measure(&lam);
                let total: Rat = m.atoms.iter().map(|(_, w)| w.clone()).sum();
                assert_eq!(total, rat(1), "weights of {lam}");
                assert!(m.atoms.iter().all(|(_, w)| w > &rat(0)));
                assert_eq!(m.shifted_moment(0, 1), rat(0), "mean of {lam}");
            }
        }
    }

    #[test]
    fn twisted_cumulants_of_2_1() {
        let c = shifted_boolean_cumulants(&d("2,1"), 0, 6);
        let got: Vec<Rat> = (2..=6).map(|i| c.get(i)).collect();
        assert_eq!(got, vec![rat(-3), rat(0), rat(-3), rat(0), rat(-3)]);
    }

    #[test]
    fn second_cumulant_is_minus_n() {
        for n in 0..=8 {
            for lam in YoungDiagram::partitions_of(n) {
                for zeta in [0, 1, 3] {
                    let c = shifted_boolean_cumulants(&lam, zeta, 4);
                    assert_eq!(c.get(2), rat(-i64::from(n)), "B_2 of {lam} at zeta={zeta}");
                }
            }
        }
    }

    #[test]
    fn empty_diagram_cumulants_vanish() {
        for zeta in [0, 2, 5] {
            let c = shifted_boolean_cumulants(&YoungDiagram::empty(), zeta, 8);
            assert!(c.values().iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn first_cumulant_vanishes() {
        // coefficient of z^0 in H(z + zeta) is exactly zeta
        for n in 0..=7 {
            for lam in YoungDiagram::partitions_of(n) {
                for zeta in [0i64, 2] {
                    let h = h_series(&lam, zeta, -3);
                    assert_eq!(h.extract(1).unwrap(), rat(1));
                    assert_eq!(h.extract(0).unwrap(), rat(zeta));
                }
            }
        }
    }

    #[test]
    fn rectangle_closed_form_matches_diagram() {
        for p in 1..=4u32 {
            for q in 1..=4u32 {
                for zeta in 0..=4u32 {
                    let lam = YoungDiagram::rectangle(p, q);
                    let c = shifted_boolean_cumulants(&lam, zeta, 8);
                    for i in 2..=8 {
                        let closed = rect_boolean_cumulant(
                            &rat(i64::from(p)),
                            &rat(i64::from(q)),
                            &rat(i64::from(zeta)),
                            i,
                        );
                        assert_eq!(c.get(i), closed, "p={p} q={q} zeta={zeta} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn rectangle_special_values() {
        // i = 2 is -pq for any zeta.
        assert_eq!(rect_boolean_cumulant(&rat(3), &rat(5), &rat(7), 2), rat(-15));
        // square at zeta = 0 vanishes from i = 3 on.
        assert_eq!(rect_boolean_cumulant(&rat(3), &rat(3), &rat(0), 5), rat(0));
        // p=2, q=3, zeta=0, i=3.
        assert_eq!(rect_boolean_cumulant(&rat(2), &rat(3), &rat(0), 3), rat(-6));
    }

    #[test]
    fn cumulant_bound_examples() {
        assert!(check_cumulant_bound(&d("2,1"), 2, 0, 6).unwrap().is_empty());
        assert!(check_cumulant_bound(&YoungDiagram::empty(), 1, 0, 8)
            .unwrap()
            .is_empty());
        assert!(check_cumulant_bound(&d("3,3"), 2, 0, 6).is_err());
    }

    #[test]
    fn h_tilde_identity_small() {
        assert!(h_tilde_identity_check(&YoungDiagram::empty()));
        assert!(h_tilde_identity_check(&d("1")));
        for n in 0..=8 {
            for lam in YoungDiagram::partitions_of(n) {
                assert!(h_tilde_identity_check(&lam), "identity fails for {lam}");
            }
        }
    }

    #[test]
    fn moment_bound_within_box() {
        for n in 0..=8 {
            for lam in YoungDiagram::partitions_of(n) {
                let a = i64::from(lam.num_rows().max(lam.num_cols()).max(1));
                let m = transition_measure(&lam);
                for zeta in [0i64, 2] {
                    for k in 0..=8u32 {
                        let mk = m.shifted_moment(zeta, k).abs();
                        let mut bound = rat(1);
                        for _ in 0..k {
                            bound *= rat(a + zeta);
                        }
                        assert!(mk <= bound, "moment bound for {lam}, k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(YoungDiagram::partitions_of(0).len(), 1);
        assert_eq!(YoungDiagram::partitions_of(5).len(), 7);
        assert_eq!(YoungDiagram::partitions_of(10).len(), 42);
    }

    #[test]
    fn parse_rejects_bad_partitions() {
        assert!(YoungDiagram::parse("1,2").is_err());
        assert!(YoungDiagram::parse("3,0").is_err());
        assert!(YoungDiagram::parse("x").is_err());
        assert_eq!(YoungDiagram::parse("").unwrap(), YoungDiagram::empty());
    }
}
