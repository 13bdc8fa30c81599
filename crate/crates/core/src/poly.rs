//! Sparse multivariate polynomials and rational functions with exact
//! differentiation. Evaluation is generic, so evaluating over [`Dual`]
//! numbers produces value and gradient at once.
//!
//! [`Dual`]: crate::scalar::Dual

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Field> Poly<T> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate function `x_index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, e, T::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: T) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: T) {
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), a.clone() * c.clone());
        }
        p
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            p.add_term(e2, a.clone() * T::from_i64(e[var] as i64));
        }
        p
    }

    pub fn eval<F>(&self, point: &[F]) -> F
    where
        F: Field + From<T>,
    {
        assert_eq!(point.len(), self.nvars, "polynomial evaluation arity");
        let mut acc = F::zero();
        for (e, a) in &self.terms {
            let mut t = F::from(a.clone());
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut p = Poly::zero(self.nvars);
        for (e, a) in &self.terms {
            p.add_term(e.clone(), f(a));
        }
        p
    }
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = self.clone();
        for (e, a) in &rhs.terms {
            p.add_term(e.clone(), a.clone());
        }
        p
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Poly::zero(self.nvars);
        for (e1, a1) in &self.terms {
            for (e2, a2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                p.add_term(e, a1.clone() * a2.clone());
            }
        }
        p
    }
}

/// Quotient of two polynomials; the denominator must not vanish where it is
/// evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn<T> {
    pub num: Poly<T>,
    pub den: Poly<T>,
}

impl<T: Field> RationalFn<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::DimensionMismatch { expected: num.nvars(), got: den.nvars() });
        }
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator polynomial".into()));
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        let n = p.nvars();
        RationalFn { num: p, den: Poly::constant(n, T::one()) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn derivative(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        RationalFn {
            num: &(&dn * &self.den) - &(&self.num * &dd),
            den: &self.den * &self.den,
        }
    }

    pub fn eval<F>(&self, point: &[F]) -> Result<F>
    where
        F: Field + From<T>,
    {
        let d = self.den.eval(point);
        if !d.is_invertible() {
            return Err(Error::ChartSingular("rational function denominator vanishes".into()));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn map_coeffs<U: Field>(&self, f: impl Fn(&T) -> U) -> RationalFn<U> {
        RationalFn { num: self.num.map_coeffs(&f), den: self.den.map_coeffs(&f) }
    }
}

/// Wire form of one polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// Wire form of a polynomial: list of terms.
pub type PolyJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFnJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl<T: Scalar> Poly<T> {
    pub fn to_json(&self) -> PolyJson {
        self.terms
            .iter()
            .map(|(e, a)| TermJson { exponents: e.clone(), coeff: a.canonical() })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[TermJson]) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for t in terms {
            if t.exponents.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: t.exponents.len() });
            }
            let c = T::parse_canonical(&t.coeff).ok_or_else(|| Error::Parse(t.coeff.clone()))?;
            p.add_term(t.exponents.clone(), c);
        }
        Ok(p)
    }
}

impl<T: Scalar> RationalFn<T> {
    pub fn to_json(&self) -> RationalFnJson {
        RationalFnJson { num: self.num.to_json(), den: self.den.to_json() }
    }

    pub fn from_json(nvars: usize, j: &RationalFnJson) -> Result<Self> {
        RationalFn::new(Poly::from_json(nvars, &j.num)?, Poly::from_json(nvars, &j.den)?)
    }

    /// Evaluates the denominator at sample points and rejects the function
    /// if it vanishes at any of them.
    pub fn guard_denominator(&self, samples: &[Vec<T>]) -> Result<()> {
        for s in samples {
            if !self.den.eval(s).is_invertible() {
                return Err(Error::ChartSingular(format!(
                    "denominator vanishes at {:?}",
                    s.iter().map(Scalar::canonical).collect::<Vec<_>>()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Dual, Rational};

    fn x(i: usize) -> Poly<Rational> {
        Poly::var(2, i)
    }

    #[test]
    fn product_and_derivative() {
        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let s = &x(0) + &x(1);
        let sq = &s * &s;
        assert_eq!(sq.degree(), 2);
        let d0 = sq.derivative(0);
        assert_eq!(d0, &(&x(0) + &x(1)).scale(&q(2, 1)) + &Poly::zero(2));
        assert_eq!(sq.eval(&[q(1, 2), q(1, 3)]), q(25, 36));
    }

    #[test]
    fn rational_function_derivative_matches_dual_evaluation() {
        // f = x0 / (1 - x0^2 - x1^2)
        let one = Poly::constant(2, q(1, 1));
        let den = &(&one - &(&x(0) * &x(0))) - &(&x(1) * &x(1));
        let f = RationalFn::new(x(0), den).unwrap();
        let p = [q(1, 3), q(1, 5)];
        let d = Dual::seed(&p);
        let jet = f.eval(&d).unwrap();
        for k in 0..2 {
            assert_eq!(jet.partial(k), f.derivative(k).eval(&p).unwrap());
        }
    }

    #[test]
    fn singular_denominator_is_rejected() {
        let one = Poly::constant(2, q(1, 1));
        let f = RationalFn::new(one.clone(), &one - &x(0)).unwrap();
        assert!(f.eval(&[q(1, 1), q(0, 1)]).is_err());
        assert!(f.guard_denominator(&[vec![q(1, 1), q(3, 1)]]).is_err());
        assert!(f.guard_denominator(&[vec![q(2, 1), q(3, 1)]]).is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let p = &(&x(0) * &x(1)).scale(&q(-3, 7)) + &Poly::constant(2, q(2, 1));
        let back = Poly::<Rational>::from_json(2, &p.to_json()).unwrap();
        assert_eq!(p, back);
    }
}
