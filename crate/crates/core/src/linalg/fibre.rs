//! Geometry of the fibre of `J⁺(W)` at a structure `J`: vertical
//! (fibre-tangent) endomorphisms, the fibre metric, vertical coforms and
//! the fibre Kähler structure.

use crate::error::{Error, Result};
use crate::linalg::basis::{OrthonormalBasis, SkewFrame};
use crate::linalg::element::{fibre_pairing, is_pairing_skew, pairing_adjoint};
use crate::linalg::structure::{from_symplectic, GcStructure};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// `½(a - a*)`, the pairing-skew part.
pub fn skew_projection<T: Field>(a: &Matrix<T>) -> Matrix<T> {
    (a - &pairing_adjoint(a)).scale(&T::half())
}

/// `½(a + J a J)`, the part anticommuting with `J`.
pub fn vertical_projection<T: Field>(j: &GcStructure<T>, a: &Matrix<T>) -> Matrix<T> {
    let jm = j.matrix();
    (a + &(&(jm * a) * jm)).scale(&T::half())
}

/// Skew for the pairing and anticommuting with `J`.
pub fn is_vertical<T: Field>(j: &GcStructure<T>, a: &Matrix<T>) -> bool {
    let jm = j.matrix();
    a.rows() == jm.rows() && is_pairing_skew(a) && (&(jm * a) + &(a * jm)).is_zero()
}

pub fn ensure_vertical<T: Field>(j: &GcStructure<T>, a: &Matrix<T>) -> Result<()> {
    if is_vertical(j, a) {
        Ok(())
    } else {
        Err(Error::NotVertical("endomorphism is not skew or does not anticommute with J".into()))
    }
}

/// `𝒦Q = J∘Q` on the fibre tangent space.
pub fn vertical_complex_action<T: Field>(j: &GcStructure<T>, q: &Matrix<T>) -> Result<Matrix<T>> {
    ensure_vertical(j, q)?;
    Ok(j.matrix() * q)
}

/// A basis of the vertical space at `J` with its fibre-metric Gram matrix.
#[derive(Clone, Debug)]
pub struct VerticalSpace<T> {
    j: GcStructure<T>,
    basis: Vec<Matrix<T>>,
    gram: Matrix<T>,
    gram_inv: Matrix<T>,
}

impl<T: Field> VerticalSpace<T> {
    /// Greedy choice among the projections of the reference generators
    /// `S_ij`; the result has `dim V (dim V - 1)` elements.
    pub fn at(j: &GcStructure<T>) -> Result<Self> {
        let frame = SkewFrame::new(&OrthonormalBasis::reference(j.dim_v()))?;
        let mut basis: Vec<Matrix<T>> = Vec::new();
        // Echelon rows `(pivot, row)` of the accepted elements, normalised at the pivot.
        let mut echelon: Vec<(usize, Vec<T>)> = Vec::new();
        for (a, b) in frame.index_pairs() {
            let u = vertical_projection(j, &frame.s(a, b));
            let mut r = u.data().to_vec();
            for (piv, row) in &echelon {
                if !r[*piv].is_negligible() {
                    let c = r[*piv].clone();
                    for (x, y) in r.iter_mut().zip(row) {
                        *x = x.clone() - c.clone() * y.clone();
                    }
                }
            }
            if let Some(piv) = r.iter().position(|x| !x.is_negligible()) {
                let inv = T::one() / r[piv].clone();
                echelon.push((piv, r.into_iter().map(|x| x * inv.clone()).collect()));
                basis.push(u);
            }
        }
        Self::from_basis(j, basis)
    }

    /// Uses the given endomorphisms as the basis; they must be vertical and
    /// span with a nondegenerate Gram matrix.
    pub fn from_basis(j: &GcStructure<T>, basis: Vec<Matrix<T>>) -> Result<Self> {
        for u in &basis {
            ensure_vertical(j, u)?;
        }
        let m = basis.len();
        let gram = Matrix::from_fn(m, m, |a, b| fibre_pairing(&basis[a], &basis[b]));
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::Degenerate("fibre metric degenerate on the vertical basis".into()))?;
        Ok(VerticalSpace { j: j.clone(), basis, gram, gram_inv })
    }

    pub fn structure(&self) -> &GcStructure<T> {
        &self.j
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    /// Coordinates of a vertical endomorphism in the basis.
    pub fn coords(&self, u: &Matrix<T>) -> Result<Vec<T>> {
        ensure_vertical(&self.j, u)?;
        let rhs: Vec<T> = self.basis.iter().map(|b| fibre_pairing(b, u)).collect();
        let c = self.gram_inv.mul_vec(&rhs);
        if !(&self.combine(&c) - u).is_zero() {
            return Err(Error::NotVertical("not in the span of the vertical basis".into()));
        }
        Ok(c)
    }

    pub fn combine(&self, c: &[T]) -> Matrix<T> {
        let n = self.j.matrix().rows();
        self.basis.iter().zip(c).fold(Matrix::zeros(n, n), |acc, (b, x)| &acc + &b.scale(x))
    }

    /// The vertical `Φ` with `⟨Φ, U_a⟩_fib = values[a]`: a vertical coform
    /// stored as its metric dual.
    pub fn dual_of_values(&self, values: &[T]) -> Matrix<T> {
        self.combine(&self.gram_inv.mul_vec(values))
    }

    /// Values of a functional on the basis.
    pub fn values_of(&self, f: impl Fn(&Matrix<T>) -> T) -> Vec<T> {
        self.basis.iter().map(f).collect()
    }

    /// `Ω(U_a, U_b) = ⟨J∘U_a, U_b⟩_fib`.
    pub fn kahler_form(&self) -> Matrix<T> {
        let m = self.dim();
        let ju: Vec<Matrix<T>> = self.basis.iter().map(|u| self.j.matrix() * u).collect();
        Matrix::from_fn(m, m, |a, b| fibre_pairing(&ju[a], &self.basis[b]))
    }
}

/// The Example-2 structure of the fibre Kähler form, acting on
/// `𝒱 ⊕ 𝒱*` in the coordinates of the vertical basis and its dual.
#[derive(Clone, Debug)]
pub struct FibreKahler<T> {
    pub omega: Matrix<T>,
    pub s: GcStructure<T>,
}

pub fn fiber_kahler_s<T: Field>(space: &VerticalSpace<T>) -> Result<FibreKahler<T>> {
    let omega = space.kahler_form();
    let s = from_symplectic(&omega)?;
    Ok(FibreKahler { omega, s })
}
