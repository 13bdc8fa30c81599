//! Lie and Courant brackets, the generalized Nijenhuis tensor and the
//! B-field automorphism defect, all from 1-jets.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::element::GElement;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Dual, Field};

use super::section::{apply_field, value_of, JetSection, SectionJet};

/// `[X, Y]^i = X^j ∂_j Y^i - Y^j ∂_j X^i`.
pub fn lie_bracket<T: Field>(x: &[Dual<T>], y: &[Dual<T>]) -> Result<Vec<T>> {
    ensure_dim(x.len(), y.len())?;
    let m = x.len();
    Ok((0..m)
        .map(|i| {
            (0..m).fold(T::zero(), |acc, j| {
                acc + x[j].re.clone() * y[i].partial(j) - y[j].re.clone() * x[i].partial(j)
            })
        })
        .collect())
}

/// `(ℒ_X η)_i = X^j ∂_j η_i + η_j ∂_i X^j`.
fn lie_derivative_form<T: Field>(x: &[Dual<T>], eta: &[Dual<T>]) -> Vec<T> {
    let m = x.len();
    (0..m)
        .map(|i| {
            (0..m).fold(T::zero(), |acc, j| {
                acc + x[j].re.clone() * eta[i].partial(j) + eta[j].re.clone() * x[j].partial(i)
            })
        })
        .collect()
}

/// `d(ι_X η)`.
fn d_contraction<T: Field>(x: &[Dual<T>], eta: &[Dual<T>]) -> Vec<T> {
    let f = x.iter().zip(eta).fold(Dual::constant(T::zero()), |acc, (a, b)| acc + a.clone() * b.clone());
    (0..x.len()).map(|i| f.partial(i)).collect()
}

/// `[X+ξ, Y+η] = [X,Y] + ℒ_X η - ℒ_Y ξ - ½ d(ι_X η - ι_Y ξ)`.
pub fn courant_bracket<T: Field>(a: &[Dual<T>], b: &[Dual<T>]) -> Result<GElement<T>> {
    ensure_dim(a.len(), b.len())?;
    if a.len() % 2 != 0 {
        return Err(Error::DimensionMismatch { expected: a.len() + 1, got: a.len() });
    }
    let m = a.len() / 2;
    let (x, xi) = a.split_at(m);
    let (y, eta) = b.split_at(m);
    let vec = lie_bracket(x, y)?;
    let lx = lie_derivative_form(x, eta);
    let ly = lie_derivative_form(y, xi);
    let dx = d_contraction(x, eta);
    let dy = d_contraction(y, xi);
    let h = T::half();
    let cov = (0..m)
        .map(|i| lx[i].clone() - ly[i].clone() - h.clone() * (dx[i].clone() - dy[i].clone()))
        .collect();
    GElement::new(vec, cov)
}

/// `N(A,B) = -[A,B] - J[A,JB] - J[JA,B] + [JA,JB]` from the 1-jet of `J`.
pub fn nijenhuis<T: Field>(j: &Matrix<Dual<T>>, a: &[Dual<T>], b: &[Dual<T>]) -> Result<GElement<T>> {
    let jv = value_of(j);
    let ja = apply_field(j, a);
    let jb = apply_field(j, b);
    let t1 = courant_bracket(a, b)?;
    let t2 = GElement::apply(&jv, &courant_bracket(a, &jb)?);
    let t3 = GElement::apply(&jv, &courant_bracket(&ja, b)?);
    let t4 = courant_bracket(&ja, &jb)?;
    Ok(t4.sub(&t1).sub(&t2).sub(&t3))
}

/// Nijenhuis tensor of a field on two sections at `p`.
pub fn nijenhuis_at<T: Field>(
    field: &super::section::GacField<T>,
    a: &JetSection<T>,
    b: &JetSection<T>,
    p: &[T],
) -> Result<GElement<T>> {
    let j = field.checked_jet(p)?;
    nijenhuis(&j, &a.jet(p)?, &b.jet(p)?)
}

/// A 2-form `B = Σ_{i<j} B_ij dx_i ∧ dx_j` with polynomial coefficients,
/// stored as the full skew matrix `B_ij = B(∂_i, ∂_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormField<T> {
    entries: Matrix<Poly<T>>,
}

impl<T: Field> TwoFormField<T> {
    pub fn new(entries: Matrix<Poly<T>>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch { expected: entries.rows(), got: entries.cols() });
        }
        let m = entries.rows();
        for i in 0..m {
            for j in 0..m {
                if entries[(i, j)].nvars() != m {
                    return Err(Error::DimensionMismatch { expected: m, got: entries[(i, j)].nvars() });
                }
                if !(&entries[(i, j)] + &entries[(j, i)]).is_zero() {
                    return Err(Error::NotSkew(format!("B_{}{} ≠ -B_{}{}", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(TwoFormField { entries })
    }

    /// `f dx_i ∧ dx_j` (0-based indices) on an `m`-dimensional chart.
    pub fn elementary(m: usize, i: usize, j: usize, f: Poly<T>) -> Result<Self> {
        let mut e = Matrix::from_fn(m, m, |_, _| Poly::zero(m));
        e[(i, j)] = f.clone();
        e[(j, i)] = -&f;
        Self::new(e)
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn jet(&self, p: &[T]) -> Result<Matrix<Dual<T>>> {
        ensure_dim(self.dim(), p.len())?;
        let d = Dual::seed(p);
        Ok(Matrix::from_fn(self.dim(), self.dim(), |i, j| self.entries[(i, j)].eval(&d)))
    }

    /// `(dB)_ijk = ∂_i B_jk + ∂_j B_ki + ∂_k B_ij` at `p`.
    pub fn exterior_derivative(&self, p: &[T]) -> Result<Vec<Vec<Vec<T>>>> {
        let b = self.jet(p)?;
        let m = self.dim();
        Ok((0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m)
                            .map(|k| b[(j, k)].partial(i) + b[(k, i)].partial(j) + b[(i, j)].partial(k))
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }

    pub fn is_closed_at(&self, p: &[T]) -> Result<bool> {
        Ok(self.exterior_derivative(p)?.iter().flatten().flatten().all(Field::is_negligible))
    }
}

/// `e^B (X + ξ) = X + ξ + ι_X B` on jets.
pub fn apply_b_field<T: Field>(b: &Matrix<Dual<T>>, a: &[Dual<T>]) -> SectionJet<T> {
    let m = b.rows();
    let (x, xi) = a.split_at(m);
    let ixb = b.transpose().mul_vec(x);
    x.iter().cloned().chain(xi.iter().zip(ixb).map(|(c, d)| c.clone() + d)).collect()
}

/// `e^B [A, C] - [e^B A, e^B C]` at `p`.
pub fn b_automorphism_defect<T: Field>(
    bf: &TwoFormField<T>,
    a: &JetSection<T>,
    c: &JetSection<T>,
    p: &[T],
) -> Result<GElement<T>> {
    ensure_dim(bf.dim(), a.chart_dim())?;
    ensure_dim(bf.dim(), c.chart_dim())?;
    let b = bf.jet(p)?;
    let (aj, cj) = (a.jet(p)?, c.jet(p)?);
    let plain = courant_bracket(&aj, &cj)?;
    let ebv = value_of(&b);
    let ixb = ebv.transpose().mul_vec(&plain.vec);
    let lhs = GElement::new(plain.vec.clone(), plain.cov.iter().zip(ixb).map(|(u, v)| u.clone() + v).collect())?;
    let rhs = courant_bracket(&apply_b_field(&b, &aj), &apply_b_field(&b, &cj))?;
    Ok(lhs.sub(&rhs))
}
