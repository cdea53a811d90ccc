//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every quantity the toolkit compares is kept inside ℚ by working with
//! squared norms and cleared denominators, so comparisons are decidable
//! with `==` and `<` on [`Rational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// An element of ℚ(i): `re + im·i` with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(rat_int(n), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational::new(rat(re_num, re_den), rat(im_num, im_den))
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// |c|² = re² + im², a nonnegative rational that is zero iff c = 0.
    pub fn abs_squared(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.abs_squared();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_int(1)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self).mul(rhs);
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        (&self).mul(&inv)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self.mul(&inv)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gq(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
        GaussianRational::from_parts(re_n, re_d, im_n, im_d)
    }

    #[test]
    fn basic_arithmetic() {
        let a = gq(1, 2, 1, 1);
        let b = gq(3, 1, -1, 2);
        let prod = &a * &b;
        // (1/2 + i)(3 - i/2) = 3/2 + 1/2 + i(3 - 1/4) = 2 + (11/4)i
        assert_eq!(prod, gq(2, 1, 11, 4));
        assert_eq!(&prod / &b, a);
    }

    #[test]
    fn abs_squared_of_one_plus_i_is_two() {
        assert_eq!(gq(1, 1, 1, 1).abs_squared(), rat_int(2));
    }

    fn arb_gq() -> impl Strategy<Value = GaussianRational> {
        (
            -20i64..=20,
            1i64..=8,
            -20i64..=20,
            1i64..=8,
        )
            .prop_map(|(a, b, c, d)| gq(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_gq(), b in arb_gq(), c in arb_gq()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn conjugation_is_involutive_automorphism(a in arb_gq(), b in arb_gq()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn abs_squared_nonnegative_definite(a in arb_gq()) {
            let n = a.abs_squared();
            prop_assert!(!n.is_negative());
            prop_assert_eq!(n.is_zero(), a.is_zero());
            prop_assert_eq!(a.abs_squared(), (&a * &a.conj()).re);
        }

        #[test]
        fn inverse_is_two_sided(a in arb_gq()) {
            if let Some(inv) = a.inv() {
                prop_assert_eq!(&a * &inv, GaussianRational::one());
            }
        }
    }
}
