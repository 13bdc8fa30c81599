//! Sections of `TM ⊕ T*M` and generalized almost complex structure fields
//! over an affine chart, evaluated as 1-jets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::element::is_pairing_skew;
use crate::matrix::Matrix;
use crate::poly::{Poly, RationalFn};
use crate::scalar::{Dual, Field};

/// Value and first partials of a vector-valued function at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet1<T> {
    pub value: Vec<T>,
    /// `jacobian[(k, i)] = ∂_i value_k`.
    pub jacobian: Matrix<T>,
}

impl<T: Field> Jet1<T> {
    pub fn from_duals(d: &[Dual<T>], nvars: usize) -> Self {
        Jet1 {
            value: d.iter().map(|x| x.re.clone()).collect(),
            jacobian: Matrix::from_fn(d.len(), nvars, |k, i| d[k].partial(i)),
        }
    }

    pub fn to_duals(&self) -> Vec<Dual<T>> {
        let m = self.jacobian.cols();
        self.value
            .iter()
            .enumerate()
            .map(|(k, v)| Dual { re: v.clone(), eps: (0..m).map(|i| self.jacobian[(k, i)].clone()).collect() })
            .collect()
    }
}

/// The coefficients of a section on the chart point, as jets: the first
/// half are vector components, the second half covector components.
pub type SectionJet<T> = Vec<Dual<T>>;

type JetFn<T> = dyn Fn(&[T]) -> Result<SectionJet<T>> + Send + Sync;

/// A section of `TM ⊕ T*M` given by a closed-form evaluator.
#[derive(Clone)]
pub struct JetSection<T> {
    chart_dim: usize,
    eval: Arc<JetFn<T>>,
    label: String,
}

impl<T: Field> fmt::Debug for JetSection<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetSection({}, dim {})", self.label, self.chart_dim)
    }
}

impl<T: Field> JetSection<T> {
    pub fn from_fn(
        chart_dim: usize,
        label: impl Into<String>,
        f: impl Fn(&[T]) -> Result<SectionJet<T>> + Send + Sync + 'static,
    ) -> Self {
        JetSection { chart_dim, eval: Arc::new(f), label: label.into() }
    }

    /// Components are rational functions of the chart coordinates.
    pub fn rational(label: impl Into<String>, comps: Vec<RationalFn<T>>) -> Result<Self> {
        let m = comps.first().map_or(0, RationalFn::nvars);
        if comps.len() != 2 * m || comps.iter().any(|c| c.nvars() != m) {
            return Err(Error::DimensionMismatch { expected: 2 * m, got: comps.len() });
        }
        Ok(Self::from_fn(m, label, move |p| {
            let d = Dual::seed(p);
            comps.iter().map(|c| c.eval(&d)).collect()
        }))
    }

    pub fn polynomial(label: impl Into<String>, comps: Vec<Poly<T>>) -> Result<Self> {
        Self::rational(label, comps.into_iter().map(RationalFn::from_poly).collect())
    }

    /// A constant section.
    pub fn constant(label: impl Into<String>, value: Vec<T>) -> Self {
        let m = value.len() / 2;
        Self::from_fn(m, label, move |_| Ok(value.iter().map(|v| Dual::constant(v.clone())).collect()))
    }

    /// The coordinate section `∂_k` (`k < m`) or `dx_{k-m}`.
    pub fn coordinate(chart_dim: usize, k: usize) -> Self {
        let mut v = vec![T::zero(); 2 * chart_dim];
        v[k] = T::one();
        let label = if k < chart_dim { format!("∂{}", k + 1) } else { format!("dx{}", k - chart_dim + 1) };
        Self::constant(label, v)
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn jet(&self, p: &[T]) -> Result<SectionJet<T>> {
        if p.len() != self.chart_dim {
            return Err(Error::DimensionMismatch { expected: self.chart_dim, got: p.len() });
        }
        let j = (self.eval)(p)?;
        if j.len() != 2 * self.chart_dim {
            return Err(Error::DimensionMismatch { expected: 2 * self.chart_dim, got: j.len() });
        }
        Ok(j)
    }

    pub fn jet1(&self, p: &[T]) -> Result<Jet1<T>> {
        Ok(Jet1::from_duals(&self.jet(p)?, self.chart_dim))
    }

    pub fn value(&self, p: &[T]) -> Result<Vec<T>> {
        Ok(self.jet(p)?.into_iter().map(|d| d.re).collect())
    }
}

type FieldFn<T> = dyn Fn(&[T]) -> Result<Matrix<Dual<T>>> + Send + Sync;

/// A field of endomorphisms of `TM ⊕ T*M`, evaluated as a 1-jet.
#[derive(Clone)]
pub struct GacField<T> {
    chart_dim: usize,
    eval: Arc<FieldFn<T>>,
}

impl<T: Field> fmt::Debug for GacField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GacField(dim {})", self.chart_dim)
    }
}

impl<T: Field> GacField<T> {
    pub fn from_fn(chart_dim: usize, f: impl Fn(&[T]) -> Result<Matrix<Dual<T>>> + Send + Sync + 'static) -> Self {
        GacField { chart_dim, eval: Arc::new(f) }
    }

    pub fn constant(j: Matrix<T>) -> Self {
        let m = j.rows() / 2;
        let d = j.map(|v| Dual::constant(v.clone()));
        Self::from_fn(m, move |_| Ok(d.clone()))
    }

    /// Entries are rational functions of the chart coordinates.
    pub fn rational(entries: Matrix<RationalFn<T>>) -> Result<Self>
    where
        RationalFn<T>: Clone,
    {
        let m = entries.rows() / 2;
        Ok(Self::from_fn(m, move |p| {
            let d = Dual::seed(p);
            let mut out = Vec::with_capacity(entries.rows() * entries.cols());
            for r in 0..entries.rows() {
                for c in 0..entries.cols() {
                    out.push(entries[(r, c)].eval(&d)?);
                }
            }
            Matrix::new(entries.rows(), entries.cols(), out)
        }))
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn jet(&self, p: &[T]) -> Result<Matrix<Dual<T>>> {
        if p.len() != self.chart_dim {
            return Err(Error::DimensionMismatch { expected: self.chart_dim, got: p.len() });
        }
        (self.eval)(p)
    }

    /// The jet at `p`, after checking `J² = -Id` and skewness of the value.
    pub fn checked_jet(&self, p: &[T]) -> Result<Matrix<Dual<T>>> {
        let j = self.jet(p)?;
        let v = value_of(&j);
        if !(&(&v * &v) + &Matrix::identity(v.rows())).is_zero() || !is_pairing_skew(&v) {
            return Err(Error::InvariantViolation(format!("field is not a generalized almost complex structure at {p:?}")));
        }
        Ok(j)
    }
}

pub fn value_of<T: Field>(m: &Matrix<Dual<T>>) -> Matrix<T> {
    m.map(|d| d.re.clone())
}

/// Pointwise application `J A` with the product rule.
pub fn apply_field<T: Field>(j: &Matrix<Dual<T>>, a: &[Dual<T>]) -> SectionJet<T> {
    j.mul_vec(a)
}
