//! Integer polynomials in the loop parameter `δ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sparse polynomial `Σ c_p δ^p` with integer coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Coefficient {
    terms: BTreeMap<u32, BigInt>,
}

impl Coefficient {
    pub fn zero() -> Coefficient {
        Coefficient::default()
    }

    pub fn one() -> Coefficient {
        Coefficient::monomial(BigInt::one(), 0)
    }

    pub fn delta() -> Coefficient {
        Coefficient::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Coefficient {
        Coefficient::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, power: u32) -> Coefficient {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Coefficient { terms }
    }

    /// `2^two_exp · δ^delta_exp`.
    pub fn scalar(two_exp: u32, delta_exp: u32) -> Coefficient {
        Coefficient::monomial(BigInt::one() << two_exp as usize, delta_exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, power: u32) -> BigInt {
        self.terms.get(&power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    /// If this is a single monomial `2^a δ^b`, returns `(a, b)`.
    pub fn as_scalar(&self) -> Option<(u32, u32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&p, c) = self.terms.iter().next()?;
        if !c.is_positive() {
            return None;
        }
        let bits = c.bits();
        (c == &(BigInt::one() << (bits as usize - 1))).then(|| ((bits - 1) as u32, p))
    }

    fn add_term(&mut self, power: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(power).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn shift(&self, by: u32) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(p, c)| (p + by, c.clone())).collect(),
        }
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, c);
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p + q, &(a * b));
            }
        }
        out
    }
}

/// Descending powers, e.g. `3*δ^2 - δ + 1`; the zero polynomial prints as `0`.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&p, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match p {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if p == 1 {
                        write!(f, "δ")?;
                    } else {
                        write!(f, "δ^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(pairs: &[(u32, i64)]) -> Coefficient {
        let mut out = Coefficient::zero();
        for &(p, v) in pairs {
            out += &Coefficient::monomial(BigInt::from(v), p);
        }
        out
    }

    #[test]
    fn printing() {
        assert_eq!(c(&[(2, 3), (0, 1)]).to_string(), "3*δ^2 + 1");
        assert_eq!(c(&[(1, 1)]).to_string(), "δ");
        assert_eq!(c(&[(1, -2), (0, 5)]).to_string(), "-2*δ + 5");
        assert_eq!(c(&[(3, 1), (1, -1)]).to_string(), "δ^3 - δ");
        assert_eq!(Coefficient::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = c(&[(1, 2), (0, 1)]);
        let b = c(&[(1, -2)]);
        let s = &a + &b;
        assert_eq!(s, Coefficient::one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_and_scalar() {
        let a = c(&[(1, 1), (0, 1)]);
        assert_eq!(&a * &a, c(&[(2, 1), (1, 2), (0, 1)]));
        assert_eq!(Coefficient::scalar(3, 2), c(&[(2, 8)]));
        assert_eq!(Coefficient::scalar(3, 2).as_scalar(), Some((3, 2)));
        assert_eq!(c(&[(0, 3)]).as_scalar(), None);
        assert_eq!(Coefficient::one().as_scalar(), Some((0, 0)));
    }
}
