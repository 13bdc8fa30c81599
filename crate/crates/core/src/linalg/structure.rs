//! Generalized complex structures on `V ⊕ V*` and the standard ways of
//! producing them.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::element::{is_pairing_isometry, is_pairing_skew};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// A complex structure on `V ⊕ V*` that is skew for the neutral pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct GcStructure<T> {
    j: Matrix<T>,
}

impl<T: Field> GcStructure<T> {
    /// Validates `J² = -Id` and pairing skewness.
    pub fn new(j: Matrix<T>) -> Result<Self> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(Error::DimensionMismatch { expected: j.rows() + j.rows() % 2, got: j.cols() });
        }
        let sq = &j * &j;
        if !(&sq + &Matrix::identity(j.rows())).is_zero() {
            return Err(Error::NotComplex("J² ≠ -Id".into()));
        }
        if !is_pairing_skew(&j) {
            return Err(Error::NotSkew("J is not skew for the neutral pairing".into()));
        }
        Ok(GcStructure { j })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.j
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.j
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.j.rows() / 2
    }

    /// Conjugation `g J g⁻¹` by a pairing isometry.
    pub fn conjugate(&self, g: &Matrix<T>) -> Result<Self> {
        let inv = g.inverse().ok_or_else(|| Error::Degenerate("singular conjugator".into()))?;
        GcStructure::new(&(g * &self.j) * &inv)
    }

    pub fn negate(&self) -> Self {
        GcStructure { j: -&self.j }
    }
}

fn complex_square_check<T: Field>(k: &Matrix<T>) -> Result<()> {
    if !k.is_square() {
        return Err(Error::DimensionMismatch { expected: k.rows(), got: k.cols() });
    }
    if !(&(k * k) + &Matrix::identity(k.rows())).is_zero() {
        return Err(Error::NotComplex("K² ≠ -Id".into()));
    }
    Ok(())
}

fn skew_check<T: Field>(b: &Matrix<T>, what: &str) -> Result<()> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch { expected: b.rows(), got: b.cols() });
    }
    if !(&b.transpose() + b).is_zero() {
        return Err(Error::NotSkew(format!("{what} is not antisymmetric")));
    }
    Ok(())
}

/// `J = K` on `V`, `J = -K*` on `V*` with `(K*α)(X) = α(KX)`.
pub fn from_complex<T: Field>(k: &Matrix<T>) -> Result<GcStructure<T>> {
    complex_square_check(k)?;
    GcStructure::new(Matrix::block_diag(k, &-&k.transpose()))
}

/// `S X = ι_X ω`, `S α = -ω⁻¹(α)`. `omega[(i, j)] = ω(e_i, e_j)`.
///
/// Whether the result induces the canonical orientation depends on
/// `dim V / 2`; see [`orientation_sign`].
pub fn from_symplectic<T: Field>(omega: &Matrix<T>) -> Result<GcStructure<T>> {
    skew_check(omega, "ω")?;
    // ι_X ω has coordinates ωᵀ X.
    let flat = omega.transpose();
    let sharp = flat.inverse().ok_or_else(|| Error::Degenerate("ω is degenerate".into()))?;
    let n = omega.rows();
    GcStructure::new(Matrix::from_blocks(&Matrix::zeros(n, n), &-&sharp, &flat, &Matrix::zeros(n, n)))
}

pub fn commute_check<T: Field>(j: &GcStructure<T>, s: &GcStructure<T>) -> Result<bool> {
    ensure_dim(j.dim_v(), s.dim_v())?;
    Ok(j.matrix().commutator(s.matrix()).is_zero())
}

/// Direct sum on `(V₁ ⊕ V₂) ⊕ (V₁* ⊕ V₂*)`.
pub fn direct_sum<T: Field>(j1: &GcStructure<T>, j2: &GcStructure<T>) -> GcStructure<T> {
    let (d1, d2) = (j1.dim_v(), j2.dim_v());
    let d = d1 + d2;
    let map1 = |i: usize| if i < d1 { i } else { d + (i - d1) };
    let map2 = |i: usize| if i < d2 { d1 + i } else { d + d1 + (i - d2) };
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for r in 0..2 * d1 {
        for c in 0..2 * d1 {
            m[(map1(r), map1(c))] = j1.matrix()[(r, c)].clone();
        }
    }
    for r in 0..2 * d2 {
        for c in 0..2 * d2 {
            m[(map2(r), map2(c))] = j2.matrix()[(r, c)].clone();
        }
    }
    GcStructure { j: m }
}

/// `e^B : X + ξ ↦ X + ξ + ι_X B`, with `b[(i, j)] = B(e_i, e_j)`.
pub fn b_field_map<T: Field>(b: &Matrix<T>) -> Result<Matrix<T>> {
    skew_check(b, "B")?;
    let n = b.rows();
    Ok(Matrix::from_blocks(&Matrix::identity(n), &Matrix::zeros(n, n), &b.transpose(), &Matrix::identity(n)))
}

/// `e^β : X + ξ ↦ X + ι_ξ β + ξ`, with `beta[(i, j)] = β(α_i, α_j)`.
pub fn beta_field_map<T: Field>(beta: &Matrix<T>) -> Result<Matrix<T>> {
    skew_check(beta, "β")?;
    let n = beta.rows();
    Ok(Matrix::from_blocks(&Matrix::identity(n), &beta.transpose(), &Matrix::zeros(n, n), &Matrix::identity(n)))
}

/// `diag(g, g⁻ᵀ)`: the action of `g ∈ GL(V)` with `(g·α)(X) = α(g⁻¹X)`.
pub fn gl_map<T: Field>(g: &Matrix<T>) -> Result<Matrix<T>> {
    let inv = g.inverse().ok_or_else(|| Error::Degenerate("g is singular".into()))?;
    Ok(Matrix::block_diag(g, &inv.transpose()))
}

fn conjugate_by_isometry<T: Field>(j: &GcStructure<T>, m: &Matrix<T>) -> Result<GcStructure<T>> {
    ensure_dim(j.matrix().rows(), m.rows())?;
    if !is_pairing_isometry(m) {
        return Err(Error::InvariantViolation("transform does not preserve the pairing".into()));
    }
    j.conjugate(m)
}

/// `e^B J e^{-B}`.
pub fn b_transform<T: Field>(j: &GcStructure<T>, b: &Matrix<T>) -> Result<GcStructure<T>> {
    conjugate_by_isometry(j, &b_field_map(b)?)
}

/// `e^β J e^{-β}`.
pub fn beta_transform<T: Field>(j: &GcStructure<T>, beta: &Matrix<T>) -> Result<GcStructure<T>> {
    conjugate_by_isometry(j, &beta_field_map(beta)?)
}

pub fn gl_action<T: Field>(g: &Matrix<T>, j: &GcStructure<T>) -> Result<GcStructure<T>> {
    conjugate_by_isometry(j, &gl_map(g)?)
}

/// Sign of the determinant of a frame (columns, in reference coordinates)
/// relative to `{e_1, …, e_2n, α_1, …, α_2n}`.
pub fn frame_orientation<T: Scalar>(frame: &Matrix<T>) -> Result<i32> {
    if !frame.is_square() {
        return Err(Error::DimensionMismatch { expected: frame.rows(), got: frame.cols() });
    }
    match frame.det().sign() {
        0 => Err(Error::Degenerate("frame does not span".into())),
        s => Ok(s),
    }
}

/// A real basis of the form `{Q_1, J Q_1, Q_2, J Q_2, …}`, built greedily
/// from coordinate vectors.
pub fn complex_frame<T: Field>(j: &Matrix<T>) -> Matrix<T> {
    let n = j.rows();
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(n);
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let c: Vec<T> = (0..n).map(|i| if i == k { T::one() } else { T::zero() }).collect();
        let mut trial = cols.clone();
        trial.push(c.clone());
        if Matrix::from_columns(&trial).map(|m| m.rank()).unwrap_or(0) == trial.len() {
            let jc = j.mul_vec(&c);
            cols.push(c);
            cols.push(jc);
        }
    }
    Matrix::from_columns(&cols).expect("columns of equal length")
}

/// Orientation of `V ⊕ V*` induced by the complex structure, relative to
/// the canonical one.
pub fn orientation_sign<T: Scalar>(j: &GcStructure<T>) -> Result<i32> {
    frame_orientation(&complex_frame(j.matrix()))
}
