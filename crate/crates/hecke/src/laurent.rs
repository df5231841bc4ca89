//! Exact Laurent polynomials in the indeterminate `v` (with `v^2 = q`) over the
//! integers.
//!
//! All coefficient arithmetic is checked: any i64 overflow panics instead of
//! wrapping silently.  Polynomials are kept in a canonical sparse form — terms
//! sorted by strictly increasing exponent, no zero coefficients — so structural
//! equality coincides with mathematical equality.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Degree of a Laurent polynomial: `-∞` for the zero polynomial, otherwise the
/// largest exponent with nonzero coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    /// Degree of the zero polynomial; compares below every finite degree.
    NegInf,
    /// Finite degree (exponent of the leading term).
    Finite(i32),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in Laurent coefficient addition")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in Laurent coefficient multiplication")
}

/// Exact Laurent polynomial in `v`.  Terms are `(exponent, coefficient)`
/// pairs, sorted by exponent, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Deserialize)]
#[serde(from = "Vec<(i32, i64)>")]
pub struct Laurent {
    terms: Vec<(i32, i64)>,
}

impl Laurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Laurent { terms: vec![(0, 1)] }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Laurent { terms: vec![(0, c)] }
        }
    }

    /// The monomial `c * v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(2, 1)
    }

    /// `ξ = v + v^{-1}`.
    pub fn xi() -> Self {
        Laurent { terms: vec![(-1, 1), (1, 1)] }
    }

    /// `ζ = v - v^{-1}`.
    pub fn zeta() -> Self {
        Laurent { terms: vec![(-1, -1), (1, 1)] }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Self {
        let mut terms: Vec<(i32, i64)> = pairs.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = checked_add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Laurent { terms: out }
    }

    /// The canonical term list, sorted by exponent.
    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    /// Coefficient of `v^e`.
    pub fn coeff(&self, e: i32) -> i64 {
        match self.terms.binary_search_by_key(&e, |&(x, _)| x) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    /// Degree in `v` (`NegInf` for zero).
    pub fn degree(&self) -> Degree {
        match self.terms.last() {
            Some(&(e, _)) => Degree::Finite(e),
            None => Degree::NegInf,
        }
    }

    /// Lowest exponent present (`NegInf` for zero, by convention).
    pub fn valuation(&self) -> Degree {
        match self.terms.first() {
            Some(&(e, _)) => Degree::Finite(e),
            None => Degree::NegInf,
        }
    }

    /// Leading `(degree, coefficient)`; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(i32, i64)> {
        self.terms.last().copied()
    }

    /// The bar involution `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i32, i64)> = self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        Laurent { terms }
    }

    /// Multiplication by the monomial `v^e`.
    pub fn shifted(&self, e: i32) -> Self {
        Laurent { terms: self.terms.iter().map(|&(x, c)| (x + e, c)).collect() }
    }

    /// Multiplication by an integer scalar.
    pub fn scaled(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|&(e, k)| (e, checked_mul(k, c))).collect() }
    }

    /// `self + c * other`, in one pass.
    pub fn add_scaled(&mut self, other: &Laurent, c: i64) {
        if c == 0 || other.is_zero() {
            return;
        }
        *self += &other.scaled(c);
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|&(_, c)| c >= 0)
    }

    /// True if all exponents are even, i.e. the polynomial lies in `Z[q, q^{-1}]`.
    pub fn is_polynomial_in_q(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e % 2 == 0)
    }

    /// Reads the polynomial as a polynomial in `q = v^2`: returns pairs
    /// `(d, c)` with `c q^d` terms, or `None` if some exponent is odd.
    pub fn as_q_pairs(&self) -> Option<Vec<(i32, i64)>> {
        if !self.is_polynomial_in_q() {
            return None;
        }
        Some(self.terms.iter().map(|&(e, c)| (e / 2, c)).collect())
    }

    /// Value at `v = 1` (checked).
    pub fn eval_at_one(&self) -> i64 {
        self.terms.iter().fold(0i64, |acc, &(_, c)| checked_add(acc, c))
    }
}

impl From<Vec<(i32, i64)>> for Laurent {
    fn from(pairs: Vec<(i32, i64)>) -> Self {
        Laurent::from_pairs(pairs)
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                1 if mag == 1 => write!(f, "v")?,
                1 => write!(f, "{mag}v")?,
                _ if mag == 1 => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = self.terms[i];
            let (eb, cb) = rhs.terms[j];
            match ea.cmp(&eb) {
                std::cmp::Ordering::Less => {
                    out.push((ea, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((eb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = checked_add(ca, cb);
                    if c != 0 {
                        out.push((ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Laurent { terms: out }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        // Polynomials in this engine are short (tens of terms), so the direct
        // accumulate-and-sort product is the right tool.
        let mut acc: Vec<(i32, i64)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &rhs.terms {
                acc.push((ea + eb, checked_mul(ca, cb)));
            }
        }
        Laurent::from_pairs(acc)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: Laurent) -> Laurent {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Laurent> for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: &Laurent) -> Laurent {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(pairs: &[(i32, i64)]) -> Laurent {
        Laurent::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn canonical_form_merges_and_drops_zeros() {
        let p = l(&[(2, 1), (0, 3), (2, -1), (1, 0)]);
        assert_eq!(p.terms(), &[(0, 3)]);
        assert!(l(&[(5, 2), (5, -2)]).is_zero());
    }

    #[test]
    fn xi_squared() {
        // (v + v^{-1})^2 = v^2 + 2 + v^{-2}
        let sq = &Laurent::xi() * &Laurent::xi();
        assert_eq!(sq.terms(), &[(-2, 1), (0, 2), (2, 1)]);
    }

    #[test]
    fn zeta_times_xi_is_difference_of_squares() {
        // (v - v^{-1})(v + v^{-1}) = v^2 - v^{-2}
        let p = &Laurent::zeta() * &Laurent::xi();
        assert_eq!(p.terms(), &[(-2, -1), (2, 1)]);
    }

    #[test]
    fn bar_swaps_v_and_v_inverse() {
        let p = l(&[(-3, 2), (1, 5)]);
        assert_eq!(p.bar().terms(), &[(-1, 5), (3, 2)]);
        assert_eq!(Laurent::xi().bar(), Laurent::xi());
        assert_eq!(Laurent::zeta().bar(), -&Laurent::zeta());
    }

    #[test]
    fn degree_and_leading() {
        assert_eq!(Laurent::zero().degree(), Degree::NegInf);
        assert_eq!(l(&[(-4, 1), (3, -2)]).degree(), Degree::Finite(3));
        assert_eq!(l(&[(-4, 1), (3, -2)]).leading(), Some((3, -2)));
        assert!(Degree::NegInf < Degree::Finite(i32::MIN));
    }

    #[test]
    fn coeff_lookup() {
        let p = l(&[(-1, 7), (4, -3)]);
        assert_eq!(p.coeff(-1), 7);
        assert_eq!(p.coeff(4), -3);
        assert_eq!(p.coeff(0), 0);
    }

    #[test]
    fn q_pair_view() {
        let p = l(&[(0, 1), (2, 1)]);
        assert_eq!(p.as_q_pairs(), Some(vec![(0, 1), (1, 1)]));
        assert_eq!(Laurent::v().as_q_pairs(), None);
    }

    #[test]
    fn json_round_trip() {
        let p = l(&[(-1, 1), (1, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,1],[1,1]]");
        let back: Laurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        // Non-canonical input is normalized on deserialization.
        let messy: Laurent = serde_json::from_str("[[3,1],[0,2],[3,-1]]").unwrap();
        assert_eq!(messy.terms(), &[(0, 2)]);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = Laurent::constant(i64::MAX);
        let _ = &big + &Laurent::one();
    }

    #[test]
    fn display_formatting() {
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::xi().to_string(), "v^-1 + v");
        assert_eq!(Laurent::zeta().to_string(), "-v^-1 + v");
        assert_eq!(l(&[(0, -2), (2, 3)]).to_string(), "-2 + 3v^2");
    }
}
