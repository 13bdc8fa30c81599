use crate::error::{ensure_dim, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// An element `X + ξ` of `V ⊕ V*`, in coordinates relative to a basis
/// `{e_i}` of `V` and its dual `{α_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GElement<T> {
    pub vec: Vec<T>,
    pub cov: Vec<T>,
}

impl<T: Field> GElement<T> {
    pub fn new(vec: Vec<T>, cov: Vec<T>) -> Result<Self> {
        ensure_dim(vec.len(), cov.len())?;
        Ok(GElement { vec, cov })
    }

    pub fn zero(dim_v: usize) -> Self {
        GElement { vec: vec![T::zero(); dim_v], cov: vec![T::zero(); dim_v] }
    }

    /// The basis vector `e_i` (0-based).
    pub fn e(dim_v: usize, i: usize) -> Self {
        let mut g = Self::zero(dim_v);
        g.vec[i] = T::one();
        g
    }

    /// The dual basis covector `α_i` (0-based).
    pub fn alpha(dim_v: usize, i: usize) -> Self {
        let mut g = Self::zero(dim_v);
        g.cov[i] = T::one();
        g
    }

    /// The `k`-th coordinate basis element of `V ⊕ V*` (vectors first).
    pub fn coordinate(dim_v: usize, k: usize) -> Self {
        if k < dim_v {
            Self::e(dim_v, k)
        } else {
            Self::alpha(dim_v, k - dim_v)
        }
    }

    pub fn dim_v(&self) -> usize {
        self.vec.len()
    }

    pub fn coords(&self) -> Vec<T> {
        self.vec.iter().chain(&self.cov).cloned().collect()
    }

    pub fn from_coords(coords: &[T]) -> Result<Self> {
        if coords.len() % 2 != 0 {
            return Err(Error::DimensionMismatch { expected: coords.len() + 1, got: coords.len() });
        }
        let n = coords.len() / 2;
        Ok(GElement { vec: coords[..n].to_vec(), cov: coords[n..].to_vec() })
    }

    /// Vector part `π₁`.
    pub fn pi1(&self) -> Vec<T> {
        self.vec.clone()
    }

    /// Covector part `π₂`.
    pub fn pi2(&self) -> Vec<T> {
        self.cov.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        GElement {
            vec: self.vec.iter().zip(&other.vec).map(|(a, b)| a.clone() + b.clone()).collect(),
            cov: self.cov.iter().zip(&other.cov).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        GElement {
            vec: self.vec.iter().map(|a| a.clone() * s.clone()).collect(),
            cov: self.cov.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vec.iter().chain(&self.cov).all(Field::is_negligible)
    }

    /// `⟨self, other⟩ = ½(ξ(Y) + η(X))`.
    pub fn pairing(&self, other: &Self) -> Result<T> {
        neutral_pairing(self, other)
    }

    pub fn apply(endo: &Matrix<T>, a: &Self) -> Self {
        GElement::from_coords(&endo.mul_vec(&a.coords())).expect("square endomorphism")
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> GElement<U> {
        GElement { vec: self.vec.iter().map(&f).collect(), cov: self.cov.iter().map(&f).collect() }
    }
}

impl<T: Scalar> GElement<T> {
    pub fn to_canonical(&self) -> Vec<String> {
        self.coords().iter().map(Scalar::canonical).collect()
    }
}

pub fn neutral_pairing<T: Field>(a: &GElement<T>, b: &GElement<T>) -> Result<T> {
    ensure_dim(a.dim_v(), b.dim_v())?;
    let mut s = T::zero();
    for i in 0..a.dim_v() {
        s = s + a.cov[i].clone() * b.vec[i].clone() + b.cov[i].clone() * a.vec[i].clone();
    }
    Ok(s * T::half())
}

/// Gram matrix of the neutral pairing in coordinates: `½[[0, I], [I, 0]]`.
pub fn pairing_gram<T: Field>(dim_v: usize) -> Matrix<T> {
    let h = T::half();
    Matrix::from_fn(2 * dim_v, 2 * dim_v, |i, j| {
        if i + dim_v == j || j + dim_v == i {
            h.clone()
        } else {
            T::zero()
        }
    })
}

/// Adjoint of an endomorphism with respect to the neutral pairing.
pub fn pairing_adjoint<T: Field>(a: &Matrix<T>) -> Matrix<T> {
    // G⁻¹ aᵀ G with G = ½ P, P the block swap; the factors cancel.
    let n = a.rows() / 2;
    let t = a.transpose();
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        let si = if i < n { i + n } else { i - n };
        let sj = if j < n { j + n } else { j - n };
        t[(si, sj)].clone()
    })
}

/// `⟨aA, B⟩ + ⟨A, aB⟩ = 0` for all `A, B`.
pub fn is_pairing_skew<T: Field>(a: &Matrix<T>) -> bool {
    a.is_square() && a.rows() % 2 == 0 && (&pairing_adjoint(a) + a).is_zero()
}

/// `⟨aA, aB⟩ = ⟨A, B⟩` for all `A, B`.
pub fn is_pairing_isometry<T: Field>(a: &Matrix<T>) -> bool {
    a.is_square() && a.rows() % 2 == 0 && (&pairing_adjoint(a) * a).is_identity()
}

/// Fibre metric `⟨a, b⟩ = -½ Tr(a ∘ b)` on endomorphisms.
pub fn fibre_pairing<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    let mut tr = T::zero();
    let n = a.rows();
    for i in 0..n {
        for k in 0..n {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            tr = tr + x.clone() * b[(k, i)].clone();
        }
    }
    -(tr * T::half())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    #[test]
    fn pairing_examples() {
        let e1 = GElement::<Rational>::e(2, 0);
        let e2 = GElement::<Rational>::e(2, 1);
        let a1 = GElement::<Rational>::alpha(2, 0);
        assert_eq!(neutral_pairing(&e1, &a1).unwrap(), q(1, 2));
        assert_eq!(neutral_pairing(&e1, &e2).unwrap(), q(0, 1));
        let s = e1.add(&a1);
        assert_eq!(neutral_pairing(&s, &s).unwrap(), q(1, 1));
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let a = GElement::<Rational>::e(2, 0);
        let b = GElement::<Rational>::e(4, 0);
        assert!(matches!(neutral_pairing(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gram_matches_pairing() {
        let g = pairing_gram::<Rational>(2);
        for i in 0..4 {
            for j in 0..4 {
                let a = GElement::<Rational>::coordinate(2, i);
                let b = GElement::<Rational>::coordinate(2, j);
                assert_eq!(neutral_pairing(&a, &b).unwrap(), g[(i, j)]);
            }
        }
    }
}
