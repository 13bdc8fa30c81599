//! The generators `I_r, J_r` of the skew endomorphisms of a neutral
//! 4-space, their relation table, and the rational chart of the
//! hyperboloid `x1² - x2² - x3² = 1`.

use crate::error::{Error, Result};
use crate::linalg::basis::{OrthonormalBasis, SkewFrame};
use crate::linalg::element::{fibre_pairing, is_pairing_skew};
use crate::linalg::structure::GcStructure;
use crate::matrix::Matrix;
use crate::scalar::Field;

/// `I1 = S12 - S34, I2 = S13 - S24, I3 = S14 + S23` and
/// `J1 = S12 + S34, J2 = S13 + S24, J3 = S14 - S23`.
#[derive(Clone, Debug)]
pub struct Example5<T> {
    pub i: [Matrix<T>; 3],
    pub j: [Matrix<T>; 3],
}

/// Outcome of one relation of the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `x` on the hyperboloid, `y = 0`.
    CompatibleI,
    /// `y` on the hyperboloid, `x = 0`.
    CompatibleJ,
    NotComplex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub x: [T; 3],
    pub y: [T; 3],
    pub classification: Classification,
}

impl<T: Field> Example5<T> {
    /// Requires `dim V = 2` and signs `(+, +, -, -)`.
    pub fn new(basis: &OrthonormalBasis<T>) -> Result<Self> {
        if basis.dim_v() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: basis.dim_v() });
        }
        if basis.signs() != [1, 1, -1, -1] {
            return Err(Error::InconsistentBasis("signs must be (+, +, -, -)".into()));
        }
        let f = SkewFrame::new(basis)?;
        let s = |a: usize, b: usize| f.s(a - 1, b - 1);
        Ok(Example5 {
            i: [&s(1, 2) - &s(3, 4), &s(1, 3) - &s(2, 4), &s(1, 4) + &s(2, 3)],
            j: [&s(1, 2) + &s(3, 4), &s(1, 3) + &s(2, 4), &s(1, 4) - &s(2, 3)],
        })
    }

    /// Test hook: flips the sign of the `S23` term in `I3`.
    pub fn tampered(mut self) -> Self {
        let s23 = (&self.i[2] - &self.j[2]).scale(&T::half());
        self.i[2] = &self.i[2] - &s23.scale(&T::from_i64(2));
        self
    }

    /// The 21 relations: six squares, three `I` and three `J`
    /// anticommutations, and `I_r J_s = J_s I_r` for all `r, s`.
    ///
    /// The cross relations are read as commutation: that is the identity the
    /// expansion of `K²` needs, and the index-swapped reading
    /// `I_r J_s = I_s J_r` fails for `r ≠ s` (see
    /// [`Example5::index_swapped_relations`]).
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.i[0].rows();
        let id = Matrix::<T>::identity(n);
        let neg = -&id;
        let mut out = Vec::with_capacity(21);
        let mut push = |name: String, holds: bool| out.push(Relation { name, holds });
        let sq = |m: &Matrix<T>| m * m;
        for (g, name) in [(&self.i, "I"), (&self.j, "J")] {
            push(format!("{name}1^2 = -Id"), sq(&g[0]) == neg);
            push(format!("{name}2^2 = Id"), sq(&g[1]) == id);
            push(format!("{name}3^2 = Id"), sq(&g[2]) == id);
        }
        for (g, name) in [(&self.i, "I"), (&self.j, "J")] {
            for (r, s) in [(0, 1), (0, 2), (1, 2)] {
                let anti = &(&g[r] * &g[s]) + &(&g[s] * &g[r]);
                push(format!("{name}{}{name}{} = -{name}{}{name}{}", r + 1, s + 1, s + 1, r + 1), anti.is_zero());
            }
        }
        for r in 0..3 {
            for s in 0..3 {
                let d = &(&self.i[r] * &self.j[s]) - &(&self.j[s] * &self.i[r]);
                push(format!("I{}J{} = J{}I{}", r + 1, s + 1, s + 1, r + 1), d.is_zero());
            }
        }
        out
    }

    /// `I_r J_s = I_s J_r` for `r < s`, taken literally.
    pub fn index_swapped_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for (r, s) in [(0, 1), (0, 2), (1, 2)] {
            let d = &(&self.i[r] * &self.j[s]) - &(&self.i[s] * &self.j[r]);
            out.push(Relation { name: format!("I{}J{} = I{}J{}", r + 1, s + 1, s + 1, r + 1), holds: d.is_zero() });
        }
        out
    }

    /// `Σ x_r I_r + y_r J_r`.
    pub fn combine(&self, x: &[T; 3], y: &[T; 3]) -> Matrix<T> {
        let n = self.i[0].rows();
        let mut m = Matrix::zeros(n, n);
        for r in 0..3 {
            m = &(&m + &self.i[r].scale(&x[r])) + &self.j[r].scale(&y[r]);
        }
        m
    }

    /// Coefficients by the fibre metric; the generators are orthogonal with
    /// norms `(2, -2, -2)`.
    pub fn decompose(&self, k: &Matrix<T>) -> Result<Decomposition<T>> {
        if k.rows() != self.i[0].rows() || !k.is_square() {
            return Err(Error::DimensionMismatch { expected: self.i[0].rows(), got: k.rows() });
        }
        if !is_pairing_skew(k) {
            return Err(Error::NotSkew("K is not skew for the metric".into()));
        }
        let coeff = |g: &Matrix<T>| fibre_pairing(k, g) / fibre_pairing(g, g);
        let x = [coeff(&self.i[0]), coeff(&self.i[1]), coeff(&self.i[2])];
        let y = [coeff(&self.j[0]), coeff(&self.j[1]), coeff(&self.j[2])];
        let quad = |v: &[T; 3]| v[0].clone() * v[0].clone() - v[1].clone() * v[1].clone() - v[2].clone() * v[2].clone();
        let zero = |v: &[T; 3]| v.iter().all(Field::is_negligible);
        let on_hyperboloid = |v: &[T; 3]| (quad(v) - T::one()).is_negligible();
        let classification = if zero(&y) && on_hyperboloid(&x) {
            Classification::CompatibleI
        } else if zero(&x) && on_hyperboloid(&y) {
            Classification::CompatibleJ
        } else {
            Classification::NotComplex
        };
        Ok(Decomposition { x, y, classification })
    }

    /// `Σ x_r I_r` at the chart point `(u, v)` of the given sheet.
    pub fn hyperboloid_point(&self, u: &T, v: &T, sheet: i32) -> Result<GcStructure<T>> {
        let x = hyperboloid_coords(u, v, sheet)?;
        GcStructure::new(self.combine(&x, &[T::zero(), T::zero(), T::zero()]))
    }
}

/// `x1 = s(1+r²)/(1-r²)`, `x2 = 2u/(1-r²)`, `x3 = 2v/(1-r²)` with
/// `r² = u² + v²`. For `s = +1` the disc `r < 1` maps to the sheet
/// `x1 > 0` and `r > 1` to the sheet `x1 < 0`.
pub fn hyperboloid_coords<T: Field>(u: &T, v: &T, sheet: i32) -> Result<[T; 3]> {
    let r2 = u.clone() * u.clone() + v.clone() * v.clone();
    let d = T::one() - r2.clone();
    if !d.is_invertible() {
        return Err(Error::ChartSingular("u² + v² = 1".into()));
    }
    let s = T::from_i64(if sheet < 0 { -1 } else { 1 });
    let two = T::from_i64(2);
    Ok([s * (T::one() + r2) / d.clone(), two.clone() * u.clone() / d.clone(), two * v.clone() / d])
}

/// Inverse of [`hyperboloid_coords`]: `u = x2/(1 + s x1)`, `v = x3/(1 + s x1)`.
/// Uses `s = +1` unless `1 + x1 = 0`.
pub fn hyperboloid_chart_inverse<T: Field>(x: &[T; 3]) -> Result<(T, T, i32)> {
    for s in [1i32, -1] {
        let d = T::one() + T::from_i64(s as i64) * x[0].clone();
        if d.is_invertible() {
            return Ok((x[1].clone() / d.clone(), x[2].clone() / d, s));
        }
    }
    Err(Error::ChartSingular("x1 = ±1 on both charts".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn gens() -> Example5<Rational> {
        Example5::new(&OrthonormalBasis::reference(2)).unwrap()
    }

    #[test]
    fn relation_table_on_reference() {
        let rel = gens().relations();
        assert_eq!(rel.len(), 21);
        assert!(rel.iter().all(|r| r.holds), "{rel:?}");
    }

    #[test]
    fn index_swapped_reading_fails() {
        assert!(gens().index_swapped_relations().iter().all(|r| !r.holds));
    }

    #[test]
    fn tampering_breaks_a_relation() {
        let rel = gens().tampered().relations();
        assert!(rel.iter().any(|r| !r.holds));
    }

    #[test]
    fn generator_norms() {
        let g = gens();
        let norms: Vec<Rational> = g.i.iter().chain(&g.j).map(|m| fibre_pairing(m, m)).collect();
        assert_eq!(norms, vec![q(2, 1), q(-2, 1), q(-2, 1), q(2, 1), q(-2, 1), q(-2, 1)]);
    }

    #[test]
    fn decompose_examples() {
        let g = gens();
        let d = g.decompose(&g.i[0]).unwrap();
        assert_eq!(d.x, [q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(d.classification, Classification::CompatibleI);
        assert_eq!(g.decompose(&g.i[1]).unwrap().classification, Classification::NotComplex);
        assert!((&g.i[1] * &g.i[1]).is_identity());

        let k = &g.i[0].scale(&q(5, 3)) + &g.i[1].scale(&q(4, 3));
        let d = g.decompose(&k).unwrap();
        assert_eq!(d.classification, Classification::CompatibleI);
        assert!((&(&k * &k) + &Matrix::identity(4)).is_zero());

        assert_eq!(g.decompose(&g.j[0]).unwrap().classification, Classification::CompatibleJ);
    }

    #[test]
    fn chart_examples() {
        assert_eq!(hyperboloid_coords(&q(0, 1), &q(0, 1), 1).unwrap(), [q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(hyperboloid_coords(&q(1, 2), &q(0, 1), 1).unwrap(), [q(5, 3), q(4, 3), q(0, 1)]);
        assert!(hyperboloid_coords(&q(3, 5), &q(4, 5), 1).is_err());
        let x = hyperboloid_coords(&q(2, 1), &q(1, 3), 1).unwrap();
        assert!(x[0] < q(0, 1));
        assert_eq!(hyperboloid_chart_inverse(&x).unwrap(), (q(2, 1), q(1, 3), 1));
    }

    #[test]
    fn chart_points_are_structures() {
        let g = gens();
        for (u, v, s) in [(q(1, 2), q(1, 3), 1), (q(2, 1), q(-1, 4), 1), (q(1, 5), q(1, 7), -1)] {
            let j = g.hyperboloid_point(&u, &v, s).unwrap();
            assert_eq!(g.decompose(j.matrix()).unwrap().classification, Classification::CompatibleI);
        }
    }
}
