//! Torsion-free linear connections on an affine chart of `M` (dim `m = 2n`),
//! their curvature, and the induced actions on `TM ⊕ T*M`.

use crate::error::{ensure_dim, Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Dual, Field};

/// Christoffel symbols `Γ^k_{ij}` as polynomials in the chart coordinates:
/// `∇_{∂_i} ∂_j = Γ^k_{ij} ∂_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<T> {
    n: usize,
    /// Indexed `[k][i][j]`.
    gamma: Vec<Vec<Vec<Poly<T>>>>,
}

impl<T: Field> Connection<T> {
    /// Checks arity and the coefficient-level symmetry `Γ^k_{ij} = Γ^k_{ji}`.
    pub fn new(n: usize, gamma: Vec<Vec<Vec<Poly<T>>>>) -> Result<Self> {
        let m = 2 * n;
        ensure_dim(m, gamma.len())?;
        for (k, gk) in gamma.iter().enumerate() {
            ensure_dim(m, gk.len())?;
            for (i, gki) in gk.iter().enumerate() {
                ensure_dim(m, gki.len())?;
                for (j, g) in gki.iter().enumerate() {
                    ensure_dim(m, g.nvars())?;
                    if *g != gamma[k][j][i] {
                        return Err(Error::Torsion(format!(
                            "Γ^{}_{{{}{}}} ≠ Γ^{}_{{{}{}}}",
                            k + 1,
                            i + 1,
                            j + 1,
                            k + 1,
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(Connection { n, gamma })
    }

    pub fn flat(n: usize) -> Self {
        let m = 2 * n;
        Connection { n, gamma: vec![vec![vec![Poly::zero(m); m]; m]; m] }
    }

    /// Builds from sparse 0-based entries `(k, i, j) → Γ^k_{ij}`; the
    /// symmetric partner is not filled in, so asymmetric input is rejected.
    pub fn from_entries(n: usize, entries: Vec<((usize, usize, usize), Poly<T>)>) -> Result<Self> {
        let m = 2 * n;
        let mut gamma = vec![vec![vec![Poly::zero(m); m]; m]; m];
        for ((k, i, j), p) in entries {
            if k >= m || i >= m || j >= m {
                return Err(Error::DimensionMismatch { expected: m, got: k.max(i).max(j) + 1 });
            }
            gamma[k][i][j] = p;
        }
        Self::new(n, gamma)
    }

    /// `Γ¹₂₂ = x₁`, all other symbols zero.
    pub fn example_curved(n: usize) -> Self {
        let m = 2 * n;
        Self::from_entries(n, vec![((0, 1, 1), Poly::var(m, 0))]).expect("symmetric by construction")
    }

    /// Half-dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim M = 2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Poly<T> {
        &self.gamma[k][i][j]
    }

    /// The matrices `Γ_i` with `(Γ_i)^k_l = Γ^k_{il}`, evaluated at a point
    /// given over any field extending `T` (e.g. jets).
    pub fn gamma_matrices<F: Field + From<T>>(&self, x: &[F]) -> Result<Vec<Matrix<F>>> {
        let m = self.dim();
        ensure_dim(m, x.len())?;
        Ok((0..m)
            .map(|i| Matrix::from_fn(m, m, |k, l| self.gamma[k][i][l].eval(x)))
            .collect())
    }

    /// The matrix of `ω(X) = diag(Γ_X, -Γ_Xᵀ)` on `TM ⊕ T*M`, so that
    /// `∇_X a = X(a) + [ω(X), a]` on endomorphism fields.
    pub fn omega<F: Field + From<T>>(&self, x: &[F], v: &[F]) -> Result<Matrix<F>> {
        ensure_dim(self.dim(), v.len())?;
        let gs = self.gamma_matrices(x)?;
        let m = self.dim();
        let gx = gs.iter().zip(v).fold(Matrix::zeros(m, m), |acc, (g, c)| &acc + &g.scale(c));
        Ok(Matrix::block_diag(&gx, &-&gx.transpose()))
    }

    /// All `R(∂_i, ∂_j) = -(∂_iΓ_j - ∂_jΓ_i + [Γ_i, Γ_j])` at `p`.
    pub fn curvature_at(&self, p: &[T]) -> Result<CurvatureAt<T>> {
        let m = self.dim();
        ensure_dim(m, p.len())?;
        let jets = self.gamma_matrices(&Dual::seed(p))?;
        let val: Vec<Matrix<T>> = jets.iter().map(|g| g.map(|d| d.re.clone())).collect();
        let d = |i: usize, j: usize| Matrix::from_fn(m, m, |k, l| jets[j][(k, l)].partial(i));
        let mut r = vec![vec![Matrix::zeros(m, m); m]; m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let f = &(&d(i, j) - &d(j, i)) + &val[i].commutator(&val[j]);
                r[i][j] = -&f;
            }
        }
        Ok(CurvatureAt { r })
    }
}

/// The curvature operators `R(∂_i, ∂_j)` on `T_pM`, with the convention
/// `R(X,Y) = ∇_{[X,Y]} - [∇_X, ∇_Y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureAt<T> {
    r: Vec<Vec<Matrix<T>>>,
}

/// `R(X,Y)` at one point, as an endomorphism of `T_pM`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureValue<T> {
    pub endo_tm: Matrix<T>,
}

impl<T: Field> CurvatureValue<T> {
    /// `diag(R, -Rᵀ)` on `T_pM ⊕ T*_pM`.
    pub fn extended(&self) -> Matrix<T> {
        Matrix::block_diag(&self.endo_tm, &-&self.endo_tm.transpose())
    }

    /// The action `R(X,Y)a = [R̂, a]` on endomorphisms of `T_pM ⊕ T*_pM`.
    pub fn act(&self, a: &Matrix<T>) -> Matrix<T> {
        self.extended().commutator(a)
    }

    pub fn is_zero(&self) -> bool {
        self.endo_tm.is_zero()
    }
}

impl<T: Field> CurvatureAt<T> {
    /// A pointwise curvature given by its operators `R(∂_i, ∂_j)`.
    pub fn from_operators(r: Vec<Vec<Matrix<T>>>) -> Self {
        CurvatureAt { r }
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self, x: &[T], y: &[T]) -> CurvatureValue<T> {
        let m = self.dim();
        let mut out = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let c = x[i].clone() * y[j].clone();
                if !c.is_zero() {
                    out = &out + &self.r[i][j].scale(&c);
                }
            }
        }
        CurvatureValue { endo_tm: out }
    }

    /// `R̂(X,Y) = diag(R, -Rᵀ)`.
    pub fn r_hat(&self, x: &[T], y: &[T]) -> Matrix<T> {
        self.r(x, y).extended()
    }

    pub fn is_flat(&self) -> bool {
        self.r.iter().flatten().all(Matrix::is_zero)
    }
}

/// `R(X,Y)` of a connection at `p`.
pub fn curvature<T: Field>(conn: &Connection<T>, x: &[T], y: &[T], p: &[T]) -> Result<CurvatureValue<T>> {
    ensure_dim(conn.dim(), x.len())?;
    ensure_dim(conn.dim(), y.len())?;
    Ok(conn.curvature_at(p)?.r(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn unit(m: usize, i: usize) -> Vec<Rational> {
        (0..m).map(|k| if k == i { q(1, 1) } else { q(0, 1) }).collect()
    }

    #[test]
    fn flat_has_zero_curvature() {
        let c = Connection::<Rational>::flat(1);
        assert!(c.curvature_at(&[q(1, 2), q(3, 1)]).unwrap().is_flat());
    }

    #[test]
    fn example_curvature_value() {
        // R(∂1,∂2)∂2 = -∂1 for Γ¹₂₂ = x1.
        let c = Connection::<Rational>::example_curved(1);
        let r = curvature(&c, &unit(2, 0), &unit(2, 1), &[q(2, 3), q(-1, 5)]).unwrap();
        assert_eq!(r.endo_tm.mul_vec(&unit(2, 1)), vec![q(-1, 1), q(0, 1)]);
        assert_eq!(r.endo_tm.mul_vec(&unit(2, 0)), vec![q(0, 1), q(0, 1)]);
    }

    #[test]
    fn torsion_rejected() {
        let r = Connection::<Rational>::from_entries(1, vec![((0, 0, 1), Poly::var(2, 1))]);
        assert!(matches!(r, Err(Error::Torsion(_))));
    }

    #[test]
    fn curvature_is_antisymmetric() {
        let m = 4;
        let x = |i| Poly::<Rational>::var(m, i);
        let c = Connection::from_entries(
            2,
            vec![
                ((0, 1, 2), &x(0) * &x(3)),
                ((0, 2, 1), &x(0) * &x(3)),
                ((3, 0, 0), &x(1) * &x(1)),
                ((2, 3, 3), x(2)),
            ],
        )
        .unwrap();
        let cur = c.curvature_at(&[q(1, 2), q(-2, 3), q(3, 1), q(1, 7)]).unwrap();
        let (a, b) = (vec![q(1, 1), q(2, 1), q(0, 1), q(-1, 3)], vec![q(0, 1), q(1, 5), q(1, 1), q(2, 1)]);
        assert_eq!(cur.r(&a, &b).endo_tm, -&cur.r(&b, &a).endo_tm);
        assert!(!cur.is_flat());
    }

    #[test]
    fn extended_action_on_skew_stays_skew() {
        use crate::linalg::element::is_pairing_skew;
        let c = Connection::<Rational>::example_curved(1);
        let cur = c.curvature_at(&[q(1, 1), q(1, 1)]).unwrap();
        let rh = cur.r_hat(&unit(2, 0), &unit(2, 1));
        assert!(is_pairing_skew(&rh));
    }
}
