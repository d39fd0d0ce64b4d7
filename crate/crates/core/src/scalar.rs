//! Exact scalars: polynomials with rational coefficients in the spectral
//! parameters. A constant polynomial doubles as a plain rational number.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the rational `num/den`.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The indeterminates that may appear in a [`Poly`].
///
/// `Lambda` is the single spectral parameter of univariate identities;
/// `Lambda1`/`Lambda2` are the pair used by the two-parameter checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indeterminate {
    Lambda,
    Lambda1,
    Lambda2,
}

impl Indeterminate {
    pub const ALL: [Indeterminate; 3] = [
        Indeterminate::Lambda,
        Indeterminate::Lambda1,
        Indeterminate::Lambda2,
    ];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Indeterminate::Lambda => "l",
            Indeterminate::Lambda1 => "l1",
            Indeterminate::Lambda2 => "l2",
        }
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponents of `(λ, λ₁, λ₂)` in a monomial.
pub type Exponents = [u32; 3];

/// A polynomial over ℚ in up to three indeterminates.
///
/// Canonical form: no zero coefficients are stored, so structural equality
/// is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert([0; 3], c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Indeterminate) -> Self {
        let mut e = [0; 3];
        e[v.slot()] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: Rational) -> Self {
        let mut p = Poly::zero();
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0; 3])
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&[0; 3]).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coefficient(&self, exponents: Exponents) -> Rational {
        self.terms.get(&exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Highest power of `v` appearing; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Indeterminate) -> Option<u32> {
        self.terms.keys().map(|e| e[v.slot()]).max()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn variables(&self) -> Vec<Indeterminate> {
        Indeterminate::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|e| e[v.slot()] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by `value`, leaving other indeterminates untouched.
    pub fn substitute(&self, v: Indeterminate, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = e[v.slot()];
            let mut rest = *e;
            rest[v.slot()] = 0;
            let head = Poly::monomial(rest, c.clone());
            out += &(&head * &value.pow(k));
        }
        out
    }

    /// Evaluates at rational points; every indeterminate present must be
    /// assigned.
    pub fn eval(&self, assignment: &[(Indeterminate, Rational)]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for v in Indeterminate::ALL {
                let k = e[v.slot()];
                if k == 0 {
                    continue;
                }
                let value = assignment
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, x)| x)
                    .ok_or_else(|| Error::MissingAssignment(v.name().to_string()))?;
                for _ in 0..k {
                    term *= value;
                }
            }
            total += term;
        }
        Ok(total)
    }

    fn add_term(&mut self, e: Exponents, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::int(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders terms in ascending exponent order, e.g. `1 - l^2` or
/// `-1/2 + 3*l1*l2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            for v in Indeterminate::ALL {
                match e[v.slot()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            let magnitude = c.abs();
            let body = if factors.is_empty() {
                fmt_rational(&magnitude)
            } else if magnitude.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", fmt_rational(&magnitude), factors.join("*"))
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Indeterminate::*;

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let l = Poly::var(Lambda);
        let p = &(&l + &Poly::one()) * &(&l - &Poly::one());
        let q = &p - &(&l * &l);
        assert_eq!(q, Poly::int(-1));
        assert!((&q + &Poly::one()).is_zero());
        assert_eq!(format!("{p}"), "-1 + l^2");
    }

    #[test]
    fn substitution_composes() {
        let l = Poly::var(Lambda);
        let p = &(&l * &l) + &l; // l^2 + l
        let shifted = p.substitute(Lambda, &(&(-&l) - &Poly::int(2)));
        // (-l-2)^2 + (-l-2) = l^2 + 3l + 2
        let expected = &(&(&l * &l) + &l.scale(&rational(3, 1))) + &Poly::int(2);
        assert_eq!(shifted, expected);
    }

    #[test]
    fn eval_requires_assignment() {
        let p = &Poly::var(Lambda1) * &Poly::var(Lambda2);
        assert!(matches!(p.eval(&[(Lambda1, rational(1, 1))]), Err(Error::MissingAssignment(_))));
        let v = p.eval(&[(Lambda1, rational(1, 2)), (Lambda2, rational(4, 1))]).unwrap();
        assert_eq!(v, rational(2, 1));
    }

    #[test]
    fn display_handles_fractions_and_signs() {
        let p = &Poly::constant(rational(-1, 2)) + &Poly::var(Lambda1).scale(&rational(3, 1));
        assert_eq!(p.to_string(), "-1/2 + 3*l1");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
