//! Laurent polynomials in one variable `A` with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

/// A Laurent polynomial `sum c_e * A^e` with `i64` coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    /// `coeff * A^exp`.
    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// The loop value `delta = -A^2 - A^-2` of the Kauffman state sum.
    pub fn loop_value() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(2, -1);
        terms.insert(-2, -1);
        Laurent { terms }
    }

    /// `(-A^3)^k` for any integer `k`, the writhe-normalization factor.
    pub fn minus_a_cubed_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Laurent::monomial((3 * k) as i32, sign)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The substitution `A -> A^-1` (the mirror image on bracket polynomials).
    pub fn invert_variable(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    fn insert_add(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in rhs.terms() {
            self.insert_add(e, c);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.insert_add(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

/// Canonical text form: terms by ascending exponent as `coef*A^exp`, joined
/// with `+`; the zero polynomial prints as `0`. This exact string is what
/// identification keys and fixtures compare.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*A^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = Laurent::monomial(2, 3);
        let b = Laurent::monomial(-2, 1);
        let sum = &a + &b;
        assert_eq!(sum.coeff(2), 3);
        assert_eq!(sum.coeff(-2), 1);
        let prod = &a * &b;
        assert_eq!(prod, Laurent::monomial(0, 3));
        assert_eq!(&a + &-(&a), Laurent::zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut x = Laurent::monomial(1, 5);
        x += &Laurent::monomial(1, -5);
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn normalization_factor() {
        assert_eq!(Laurent::minus_a_cubed_pow(0), Laurent::one());
        assert_eq!(Laurent::minus_a_cubed_pow(1), Laurent::monomial(3, -1));
        assert_eq!(Laurent::minus_a_cubed_pow(-2), Laurent::monomial(-6, 1));
        // (-A^3)^k * (-A^3)^-k = 1
        for k in -5i64..=5 {
            let prod = &Laurent::minus_a_cubed_pow(k) * &Laurent::minus_a_cubed_pow(-k);
            assert_eq!(prod, Laurent::one());
        }
    }

    #[test]
    fn display_is_canonical() {
        let loopv = Laurent::loop_value();
        assert_eq!(loopv.to_string(), "-1*A^-2+-1*A^2");
        assert_eq!(Laurent::one().to_string(), "1*A^0");
        assert_eq!(loopv.invert_variable(), loopv);
    }
}
