//! Scalar abstractions.
//!
//! [`Field`] is the arithmetic every algorithm in the crate is written against.
//! [`Scalar`] adds ordering, parsing and canonical printing for the "leaf"
//! number types (exact rationals and floats). [`Dual`] is a first-order jet
//! number: a value together with its gradient, so that evaluating any
//! closed-form construction over `Dual<T>` yields its exact first partials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the default scalar of the crate.
pub type Rational = BigRational;

pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// Exact zero test for rationals, tolerance test for floats. For jets
    /// every component has to vanish.
    fn is_negligible(&self) -> bool;

    /// Whether the value can be used as a pivot.
    fn is_invertible(&self) -> bool {
        !self.is_negligible()
    }

    /// The value part as an `f64`, for reporting only.
    fn leading_f64(&self) -> f64;
}

pub trait Scalar: Field + PartialOrd + fmt::Display {
    /// True for exact number types.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn abs_val(&self) -> Self;

    /// -1, 0 or 1; negligible values report 0.
    fn sign(&self) -> i32 {
        if self.is_negligible() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    /// Canonical string form used in reports ("p/q" for rationals).
    fn canonical(&self) -> String;

    fn parse_canonical(s: &str) -> Option<Self>;

    /// Square root when it exists in the number type.
    fn exact_sqrt(&self) -> Option<Self>;
}

impl Field for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn leading_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn canonical(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        } else {
            BigInt::from_str(s).ok().map(Rational::from_integer)
        }
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let p = self.numer().sqrt();
        let q = self.denom().sqrt();
        let r = Rational::new(p, q);
        if &(&r * &r) == self {
            Some(r)
        } else {
            None
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Field for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn leading_f64(&self) -> f64 {
                *self as f64
            }
        }

        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &Rational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn abs_val(&self) -> Self {
                self.abs()
            }

            fn canonical(&self) -> String {
                format!("{:?}", self)
            }

            fn parse_canonical(s: &str) -> Option<Self> {
                let s = s.trim();
                if let Some(q) = Rational::parse_canonical(s) {
                    return Some(Self::from_rational(&q));
                }
                s.parse::<$t>().ok()
            }

            fn exact_sqrt(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(self.sqrt())
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// A value with its first partial derivatives with respect to a fixed list
/// of variables. Missing gradient entries are zero.
#[derive(Clone, Debug)]
pub struct Dual<T> {
    pub re: T,
    pub eps: Vec<T>,
}

impl<T: Field> Dual<T> {
    pub fn constant(re: T) -> Self {
        Dual { re, eps: Vec::new() }
    }

    /// The coordinate function `x_index` at value `re` among `nvars` variables.
    pub fn variable(re: T, index: usize, nvars: usize) -> Self {
        let mut eps = vec![T::zero(); nvars];
        eps[index] = T::one();
        Dual { re, eps }
    }

    /// Seeds every coordinate of a point as an independent variable.
    pub fn seed(point: &[T]) -> Vec<Self> {
        let n = point.len();
        point
            .iter()
            .enumerate()
            .map(|(i, x)| Dual::variable(x.clone(), i, n))
            .collect()
    }

    /// Partial derivative with respect to variable `k`.
    pub fn partial(&self, k: usize) -> T {
        self.eps.get(k).cloned().unwrap_or_else(T::zero)
    }

    fn zip_eps(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
        let n = a.len().max(b.len());
        let z = T::zero();
        (0..n)
            .map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect()
    }
}

impl<T: Field> From<T> for Dual<T> {
    fn from(v: T) -> Self {
        Dual::constant(v)
    }
}

impl<T: Field> PartialEq for Dual<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.re != other.re {
            return false;
        }
        let n = self.eps.len().max(other.eps.len());
        (0..n).all(|i| self.partial(i) == other.partial(i))
    }
}

impl<T: Field> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let eps = Self::zip_eps(&self.eps, &rhs.eps, |a, b| a.clone() + b.clone());
        Dual { re: self.re + rhs.re, eps }
    }
}

impl<T: Field> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let eps = Self::zip_eps(&self.eps, &rhs.eps, |a, b| a.clone() - b.clone());
        Dual { re: self.re - rhs.re, eps }
    }
}

impl<T: Field> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = Self::zip_eps(&self.eps, &rhs.eps, |a, b| {
            rhs.re.clone() * a.clone() + self.re.clone() * b.clone()
        });
        Dual { re: self.re * rhs.re, eps }
    }
}

impl<T: Field> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den2 = rhs.re.clone() * rhs.re.clone();
        let eps = Self::zip_eps(&self.eps, &rhs.eps, |a, b| {
            (a.clone() * rhs.re.clone() - self.re.clone() * b.clone()) / den2.clone()
        });
        Dual { re: self.re / rhs.re, eps }
    }
}

impl<T: Field> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, eps: self.eps.into_iter().map(|e| -e).collect() }
    }
}

impl<T: Field> Zero for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.iter().all(Zero::is_zero)
    }
}

impl<T: Field> One for Dual<T> {
    fn one() -> Self {
        Dual::constant(T::one())
    }
}

impl<T: Field> Field for Dual<T> {
    fn from_i64(v: i64) -> Self {
        Dual::constant(T::from_i64(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Dual::constant(T::from_ratio(num, den))
    }

    fn is_negligible(&self) -> bool {
        self.re.is_negligible() && self.eps.iter().all(Field::is_negligible)
    }

    fn is_invertible(&self) -> bool {
        self.re.is_invertible()
    }

    fn leading_f64(&self) -> f64 {
        self.re.leading_f64()
    }
}

/// Shorthand for small exact constants.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
