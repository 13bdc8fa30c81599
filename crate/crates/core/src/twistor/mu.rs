//! Curvature of the form `R(X,Y)Z = μ(X,Y)Z − μ(Y,X)Z + μ(X,Z)Y − μ(Y,Z)X`,
//! the linear system on `μ` imposed by `R(X,Y)J = 0` over a family of
//! structures, and the integrability identity for a complex structure `K`
//! on `T_pM`.

use serde::Serialize;

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::structure::GcStructure;
use crate::matrix::Matrix;
use crate::scalar::Field;

use super::connection::CurvatureAt;

/// A bilinear form on `T_pM`: `μ(X,Y) = Xᵀ μ Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuForm<T> {
    pub m: Matrix<T>,
}

impl<T: Field> MuForm<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
        }
        Ok(MuForm { m })
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        x.iter().zip(self.m.mul_vec(y)).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }
}

pub fn curvature_from_mu<T: Field>(mu: &MuForm<T>, x: &[T], y: &[T], z: &[T]) -> Result<Vec<T>> {
    let m = mu.dim();
    for v in [x, y, z] {
        ensure_dim(m, v.len())?;
    }
    let a = mu.eval(x, y) - mu.eval(y, x);
    let b = mu.eval(x, z);
    let c = mu.eval(y, z);
    Ok((0..m).map(|i| a.clone() * z[i].clone() + b.clone() * y[i].clone() - c.clone() * x[i].clone()).collect())
}

fn unit<T: Field>(m: usize, i: usize) -> Vec<T> {
    (0..m).map(|k| if k == i { T::one() } else { T::zero() }).collect()
}

/// The operator `Z ↦ R(X,Y)Z`.
pub fn curvature_operator_from_mu<T: Field>(mu: &MuForm<T>, x: &[T], y: &[T]) -> Result<Matrix<T>> {
    let m = mu.dim();
    let cols = (0..m).map(|c| curvature_from_mu(mu, x, y, &unit(m, c))).collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(&cols)
}

/// All operators `R(∂_i, ∂_j)` generated by `μ`.
pub fn curvature_at_from_mu<T: Field>(mu: &MuForm<T>) -> Result<CurvatureAt<T>> {
    let m = mu.dim();
    let r = (0..m)
        .map(|i| (0..m).map(|j| curvature_operator_from_mu(mu, &unit(m, i), &unit(m, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(CurvatureAt::from_operators(r))
}

/// The structure with, for the frame `E` (columns) and its dual `η`,
/// `JE_{2k−1} = η_{2k}`, `JE_{2k} = −η_{2k−1}`, `Jη_{2k−1} = E_{2k}`,
/// `Jη_{2k} = −E_{2k−1}`; for odd `n` the last pair uses
/// `JE_{2n−1} = E_{2n}`, `Jη_{2n−1} = η_{2n}` instead.
pub fn family_structure<T: Field>(frame: &Matrix<T>) -> Result<GcStructure<T>> {
    let m = frame.rows();
    if !frame.is_square() || m % 2 != 0 {
        return Err(Error::DimensionMismatch { expected: m + m % 2, got: frame.cols() });
    }
    let n = m / 2;
    let mut jb = Matrix::zeros(2 * m, 2 * m);
    for k in 0..n {
        let (a, b) = (2 * k, 2 * k + 1);
        if n % 2 == 1 && k == n - 1 {
            jb[(b, a)] = T::one();
            jb[(a, b)] = -T::one();
            jb[(m + b, m + a)] = T::one();
            jb[(m + a, m + b)] = -T::one();
        } else {
            jb[(m + b, a)] = T::one();
            jb[(m + a, b)] = -T::one();
            jb[(b, m + a)] = T::one();
            jb[(a, m + b)] = -T::one();
        }
    }
    let inv = frame.inverse().ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
    let phi = Matrix::block_diag(frame, &inv.transpose());
    let phi_inv = Matrix::block_diag(&inv, &frame.transpose());
    GcStructure::new(&(&phi * &jb) * &phi_inv)
}

/// The frame `(E_{σ(1)}, …, E_{σ(m)})` of coordinate vectors.
pub fn permuted_frame<T: Field>(order: &[usize]) -> Matrix<T> {
    let m = order.len();
    Matrix::from_fn(m, m, |i, j| if order[j] == i { T::one() } else { T::zero() })
}

/// Frames of the `n = 2` argument: the coordinate frame and `(E1, E3, E2, E4)`.
pub fn proof_frames<T: Field>() -> Vec<Matrix<T>> {
    [[0, 1, 2, 3], [0, 2, 1, 3]].iter().map(|o| permuted_frame(o)).collect()
}

/// The structures over [`proof_frames`].
pub fn proof_family<T: Field>() -> Result<Vec<GcStructure<T>>> {
    proof_frames().iter().map(family_structure).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSystemReport {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dim: usize,
}

impl MuSystemReport {
    fn of<T: Field>(m: usize, sys: &Matrix<T>) -> Self {
        let rank = sys.rank();
        MuSystemReport { unknowns: m * m, equations: sys.rows(), rank, kernel_dim: m * m - rank }
    }
}

/// Columns indexed by the `m²` entries of `μ`, rows produced by `eqs`.
fn assemble<T: Field>(m: usize, eqs: impl Fn(&CurvatureAt<T>) -> Result<Vec<T>>) -> Result<Matrix<T>> {
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(m * m);
    for c in 0..m {
        for d in 0..m {
            let mut e = Matrix::zeros(m, m);
            e[(c, d)] = T::one();
            cols.push(eqs(&curvature_at_from_mu(&MuForm::new(e)?)?)?);
        }
    }
    Matrix::from_columns(&cols)
}

/// The full system `[R̂_μ(E_a, E_b), J] = 0` for all `a < b` and all `J` of
/// the family.
pub fn mu_commutator_system<T: Field>(m: usize, family: &[GcStructure<T>]) -> Result<Matrix<T>> {
    assemble(m, |curv| {
        let mut col = Vec::new();
        for j in family {
            ensure_dim(m, j.dim_v())?;
            for a in 0..m {
                for b in a + 1..m {
                    col.extend(curv.r(&unit(m, a), &unit(m, b)).act(j.matrix()).data().iter().cloned());
                }
            }
        }
        Ok(col)
    })
}

/// `Z`-component of the `V*`-part of `[R̂(X,Y), J]E`.
fn identity_component<T: Field>(curv: &CurvatureAt<T>, j: &Matrix<T>, x: &[T], y: &[T], e: &[T], z: &[T]) -> T {
    let m = x.len();
    let mut ev = e.to_vec();
    ev.extend(std::iter::repeat(T::zero()).take(m));
    let c = curv.r_hat(x, y).commutator(j).mul_vec(&ev);
    c[m..].iter().zip(z).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// The proof's component identities `(R(X,Y)J)E_{2k−1}(Z) = 0` and
/// `(R(X,Y)J)E_{2k}(Z) = 0`, at `X = E_{2k−1}, Y = E_{2k}, Z = E_{2l−1}`;
/// `X = E_{2k}, Y = E_{2k−1}, Z = E_{2l}` (`k ≠ l`); and
/// `X = Z = E_{2l−1}` or `E_{2l}`, `Y = E_{2k}`, for each frame of the family.
pub fn mu_identity_system<T: Field>(frames: &[Matrix<T>]) -> Result<Matrix<T>> {
    let m = frames.first().map_or(0, Matrix::rows);
    let js = frames.iter().map(family_structure).collect::<Result<Vec<_>>>()?;
    assemble(m, |curv| {
        let mut col = Vec::new();
        for (f, j) in frames.iter().zip(&js) {
            ensure_dim(m, f.rows())?;
            let e = |i: usize| f.column(i);
            for k in 0..m / 2 {
                for l in 0..m / 2 {
                    if k == l {
                        continue;
                    }
                    let triples = [
                        (e(2 * k), e(2 * k + 1), e(2 * l)),
                        (e(2 * k + 1), e(2 * k), e(2 * l + 1)),
                        (e(2 * l), e(2 * k + 1), e(2 * l)),
                        (e(2 * l + 1), e(2 * k + 1), e(2 * l + 1)),
                    ];
                    for (x, y, z) in &triples {
                        for r in 0..m / 2 {
                            for idx in [2 * r, 2 * r + 1] {
                                col.push(identity_component(curv, j.matrix(), x, y, &e(idx), z));
                            }
                        }
                    }
                }
            }
        }
        Ok(col)
    })
}

/// Kernel of the identity system over `frames`.
pub fn mu_forced_zero_check<T: Field>(frames: &[Matrix<T>]) -> Result<MuSystemReport> {
    let m = frames.first().map_or(0, Matrix::rows);
    Ok(MuSystemReport::of(m, &mu_identity_system(frames)?))
}

/// Kernel of the full commutator system over `family`.
pub fn mu_commutator_check<T: Field>(m: usize, family: &[GcStructure<T>]) -> Result<MuSystemReport> {
    Ok(MuSystemReport::of(m, &mu_commutator_system(m, family)?))
}

/// `R(X,Y)K + K∘R(X,KY)K + K∘R(KX,Y)K − R(KX,KY)K` with `R(·,·)K` the
/// commutator action.
pub fn ahs_residual<T: Field>(curv: &CurvatureAt<T>, k: &Matrix<T>, x: &[T], y: &[T]) -> Result<Matrix<T>> {
    let m = curv.dim();
    ensure_dim(m, k.rows())?;
    if !(&(k * k) + &Matrix::identity(m)).is_zero() {
        return Err(Error::NotComplex("K² ≠ -Id".into()));
    }
    let kx = k.mul_vec(x);
    let ky = k.mul_vec(y);
    let act = |a: &[T], b: &[T]| curv.r(a, b).endo_tm.commutator(k);
    let t1 = act(x, y);
    let t2 = k * &act(x, &ky);
    let t3 = k * &act(&kx, y);
    let t4 = act(&kx, &ky);
    Ok(&(&(&t1 + &t2) + &t3) - &t4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::structure::orientation_sign;
    use crate::scalar::{q, Rational};
    use crate::twistor::connection::Connection;

    #[test]
    fn mu_zero_gives_zero() {
        let mu = MuForm::new(Matrix::<Rational>::zeros(4, 4)).unwrap();
        let v = vec![q(1, 1), q(2, 1), q(3, 1), q(4, 1)];
        assert!(curvature_from_mu(&mu, &v, &v, &v).unwrap().iter().all(|x| *x == q(0, 1)));
    }

    #[test]
    fn symmetric_mu_example() {
        // μ = η1⊗η1: R(E1,E2)E1 = E2.
        let mut e = Matrix::<Rational>::zeros(4, 4);
        e[(0, 0)] = q(1, 1);
        let mu = MuForm::new(e).unwrap();
        let r = curvature_from_mu(&mu, &unit(4, 0), &unit(4, 1), &unit(4, 0)).unwrap();
        assert_eq!(r, unit::<Rational>(4, 1));
    }

    #[test]
    fn mu_curvature_is_antisymmetric() {
        let mu = MuForm::new(Matrix::from_fn(4, 4, |i, j| q((i * 3 + j) as i64 - 5, 2))).unwrap();
        let x = vec![q(1, 1), q(0, 1), q(2, 1), q(-1, 1)];
        let y = vec![q(1, 3), q(1, 1), q(0, 1), q(1, 1)];
        let z = vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1)];
        let a = curvature_from_mu(&mu, &x, &y, &z).unwrap();
        let b = curvature_from_mu(&mu, &y, &x, &z).unwrap();
        assert!(a.iter().zip(&b).all(|(u, v)| u.clone() + v.clone() == q(0, 1)));
    }

    #[test]
    fn family_structures_are_valid_and_oriented() {
        for j in proof_family::<Rational>().unwrap() {
            assert_eq!(orientation_sign(&j).unwrap(), 1);
        }
        let odd = family_structure(&Matrix::<Rational>::identity(2)).unwrap();
        assert_eq!(odd.dim_v(), 2);
    }

    #[test]
    fn mu_system_kernels() {
        let frames = proof_frames::<Rational>();
        assert_eq!(mu_forced_zero_check(&frames).unwrap().kernel_dim, 0);
        assert_eq!(mu_forced_zero_check(&frames[..1]).unwrap().kernel_dim, 2);
        let fam = proof_family::<Rational>().unwrap();
        assert_eq!(mu_commutator_check(4, &fam).unwrap().kernel_dim, 0);
        // the full commutator system already forces μ = 0 for a single J
        assert_eq!(mu_commutator_check(4, &fam[..1]).unwrap().kernel_dim, 0);
    }

    #[test]
    fn ahs_flat_and_curved() {
        let k0 = Matrix::from_rows(vec![
            vec![q(0, 1), q(-1, 1), q(0, 1), q(0, 1)],
            vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1), q(-1, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
        ])
        .unwrap();
        // generic K = g K₀ g⁻¹
        let g = Matrix::from_fn(4, 4, |i, j| if i == j { q(2, 1) } else { q((i * 4 + j) as i64 % 5 - 2, 3) });
        let k = &(&g * &k0) * &g.inverse().unwrap();
        let p = [q(1, 2), q(1, 3), q(1, 5), q(1, 7)];
        let flat = Connection::<Rational>::flat(2).curvature_at(&p).unwrap();
        let curved = Connection::<Rational>::example_curved(2).curvature_at(&p).unwrap();
        let mut nonzero = false;
        for a in 0..4 {
            for b in 0..4 {
                let (x, y) = (unit(4, a), unit(4, b));
                assert!(ahs_residual(&flat, &k, &x, &y).unwrap().is_zero());
                let r = ahs_residual(&curved, &k, &x, &y).unwrap();
                assert_eq!(r, -&ahs_residual(&curved, &k, &y, &x).unwrap());
                nonzero |= !r.is_zero();
            }
        }
        assert!(nonzero);
    }
}
