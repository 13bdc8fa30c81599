//! Points of the twistor space `𝒢` and tangent data `ℋ ⊕ 𝒱 ⊕ 𝒱* ⊕ ℋ*`
//! at them, with the structures `𝒥_α`.

use crate::error::{ensure_dim, Error, Result};
use crate::linalg::basis::OrthonormalBasis;
use crate::linalg::element::{fibre_pairing, neutral_pairing, GElement};
use crate::linalg::fibre::{ensure_vertical, VerticalSpace};
use crate::linalg::structure::{orientation_sign, GcStructure};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// `J ∈ 𝒢_p`: a structure on `T_pM ⊕ T*_pM` inducing the canonical
/// orientation, with its vertical space and (when known) an adapted
/// orthonormal basis `{Q1, JQ1, Q3, JQ3, …}`.
#[derive(Clone, Debug)]
pub struct TwistorPoint<T> {
    pub p: Vec<T>,
    pub j: GcStructure<T>,
    pub adapted: Option<OrthonormalBasis<T>>,
    vertical: VerticalSpace<T>,
}

impl<T: Scalar> TwistorPoint<T> {
    pub fn new(p: Vec<T>, j: GcStructure<T>) -> Result<Self> {
        ensure_dim(j.dim_v(), p.len())?;
        if orientation_sign(&j)? != 1 {
            return Err(Error::InvariantViolation("structure does not induce the canonical orientation".into()));
        }
        let vertical = VerticalSpace::at(&j)?;
        Ok(TwistorPoint { p, j, adapted: None, vertical })
    }

    /// The point of the structure adapted to `basis`.
    pub fn from_basis(p: Vec<T>, basis: OrthonormalBasis<T>) -> Result<Self> {
        let j = basis.adapted_structure()?;
        let mut pt = Self::new(p, j)?;
        pt.adapted = Some(basis);
        Ok(pt)
    }
}

impl<T: Field> TwistorPoint<T> {
    pub fn vertical_space(&self) -> &VerticalSpace<T> {
        &self.vertical
    }

    /// `dim M`.
    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn jm(&self) -> &Matrix<T> {
        self.j.matrix()
    }
}

/// A tangent element `A^h + V + φ` of `T𝒢 ⊕ T*𝒢` at a point: `A` in
/// `T_pM ⊕ T*_pM` stands for its horizontal lift (vector part in `ℋ`,
/// covector part in `ℋ*`), `V` is vertical, and the vertical coform `φ` is
/// stored as its fibre-metric dual `Φ` (`φ(U) = ⟨Φ, U⟩_fib`).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorTangent<T> {
    pub horizontal: GElement<T>,
    pub vertical: Matrix<T>,
    pub vertical_coform: Matrix<T>,
}

impl<T: Field> TwistorTangent<T> {
    pub fn zero(m: usize) -> Self {
        TwistorTangent {
            horizontal: GElement::zero(m),
            vertical: Matrix::zeros(2 * m, 2 * m),
            vertical_coform: Matrix::zeros(2 * m, 2 * m),
        }
    }

    pub fn horizontal(a: GElement<T>) -> Self {
        let m = a.dim_v();
        TwistorTangent { horizontal: a, ..Self::zero(m) }
    }

    pub fn vertical(v: Matrix<T>) -> Self {
        let m = v.rows() / 2;
        TwistorTangent { vertical: v, ..Self::zero(m) }
    }

    pub fn coform(phi: Matrix<T>) -> Self {
        let m = phi.rows() / 2;
        TwistorTangent { vertical_coform: phi, ..Self::zero(m) }
    }

    pub fn add(&self, o: &Self) -> Self {
        TwistorTangent {
            horizontal: self.horizontal.add(&o.horizontal),
            vertical: &self.vertical + &o.vertical,
            vertical_coform: &self.vertical_coform + &o.vertical_coform,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        TwistorTangent {
            horizontal: self.horizontal.scale(s),
            vertical: self.vertical.scale(s),
            vertical_coform: self.vertical_coform.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.horizontal.is_zero() && self.vertical.is_zero() && self.vertical_coform.is_zero()
    }

    /// Vertical parts must anticommute with `J`.
    pub fn validate(&self, at: &TwistorPoint<T>) -> Result<()> {
        ensure_dim(at.dim(), self.horizontal.dim_v())?;
        ensure_vertical(&at.j, &self.vertical)?;
        ensure_vertical(&at.j, &self.vertical_coform)
    }

    /// Coordinates: `A` (vector, covector), then vertical and coform values
    /// in the point's vertical basis.
    pub fn frame_coords(&self, at: &TwistorPoint<T>) -> Result<Vec<T>> {
        let vs = at.vertical_space();
        let mut out = self.horizontal.coords();
        out.extend(vs.coords(&self.vertical)?);
        out.extend(vs.values_of(|u| fibre_pairing(&self.vertical_coform, u)));
        Ok(out)
    }

    pub fn max_abs_f64(&self) -> f64 {
        let h = self.horizontal.coords().iter().map(|x| x.leading_f64().abs()).fold(0.0, f64::max);
        h.max(self.vertical.max_abs_f64()).max(self.vertical_coform.max_abs_f64())
    }
}

/// `(−1)^α`.
pub fn alpha_sign<T: Field>(alpha: u8) -> T {
    if alpha % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

pub fn check_alpha(alpha: u8) -> Result<()> {
    if alpha == 1 || alpha == 2 {
        Ok(())
    } else {
        Err(Error::InvalidScenario(format!("alpha must be 1 or 2, got {alpha}")))
    }
}

/// `𝒥_α`: `J` on `ℋ ⊕ ℋ*`, `(−1)^{α+1} J∘` on `𝒱`, and
/// `(𝒥_α φ)(U) = (−1)^α φ(J∘U)` on `𝒱*` (dual: `(−1)^{α+1} JΦ`).
pub fn twistor_j<T: Field>(alpha: u8, t: &TwistorTangent<T>, at: &TwistorPoint<T>) -> Result<TwistorTangent<T>> {
    check_alpha(alpha)?;
    t.validate(at)?;
    let s = -alpha_sign::<T>(alpha);
    let j = at.jm();
    Ok(TwistorTangent {
        horizontal: GElement::apply(j, &t.horizontal),
        vertical: (j * &t.vertical).scale(&s),
        vertical_coform: (j * &t.vertical_coform).scale(&s),
    })
}

/// The natural pairing on `T𝒢 ⊕ T*𝒢`: `⟨A,B⟩ + ½(φ(W) + ψ(V))`.
pub fn tangent_pairing<T: Field>(e: &TwistorTangent<T>, f: &TwistorTangent<T>) -> Result<T> {
    let h = neutral_pairing(&e.horizontal, &f.horizontal)?;
    let v = fibre_pairing(&e.vertical_coform, &f.vertical) + fibre_pairing(&f.vertical_coform, &e.vertical);
    Ok(h + v * T::half())
}

/// Coordinate horizontal elements, vertical basis vectors, and the dual
/// coform basis at the point.
pub fn probe_tangents<T: Field>(at: &TwistorPoint<T>) -> Vec<TwistorTangent<T>> {
    let m = at.dim();
    let vs = at.vertical_space();
    let mut out: Vec<TwistorTangent<T>> =
        (0..2 * m).map(|k| TwistorTangent::horizontal(GElement::coordinate(m, k))).collect();
    out.extend(vs.basis().iter().cloned().map(TwistorTangent::vertical));
    for a in 0..vs.dim() {
        let vals: Vec<T> = (0..vs.dim()).map(|b| if a == b { T::one() } else { T::zero() }).collect();
        out.push(TwistorTangent::coform(vs.dual_of_values(&vals)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    fn point() -> TwistorPoint<Rational> {
        let mut b = OrthonormalBasis::reference(2);
        b.rotate(0, 2, &q(1, 3)).unwrap();
        b.rotate(1, 3, &q(-1, 2)).unwrap();
        b.rotate(0, 1, &q(2, 5)).unwrap();
        TwistorPoint::from_basis(vec![q(1, 2), q(-1, 3)], b).unwrap()
    }

    #[test]
    fn twistor_j_squares_to_minus_one() {
        let at = point();
        for alpha in [1, 2] {
            for t in probe_tangents(&at) {
                let jt = twistor_j(alpha, &t, &at).unwrap();
                let jjt = twistor_j(alpha, &jt, &at).unwrap();
                assert_eq!(jjt, t.scale(&q(-1, 1)));
            }
        }
    }

    #[test]
    fn twistor_j_preserves_pairing() {
        let at = point();
        let probes = probe_tangents(&at);
        for alpha in [1, 2] {
            for a in &probes {
                for b in &probes {
                    let ja = twistor_j(alpha, a, &at).unwrap();
                    let jb = twistor_j(alpha, b, &at).unwrap();
                    assert_eq!(tangent_pairing(&ja, &jb).unwrap(), tangent_pairing(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn alphas_differ_on_vertical_data_only() {
        let at = point();
        for t in probe_tangents(&at) {
            let j1 = twistor_j(1, &t, &at).unwrap();
            let j2 = twistor_j(2, &t, &at).unwrap();
            assert_eq!(j1.horizontal, j2.horizontal);
            assert_eq!(j1.vertical, -&j2.vertical);
            assert_eq!(j1.vertical_coform, -&j2.vertical_coform);
        }
    }

    #[test]
    fn non_vertical_rejected() {
        let at = point();
        let bad = TwistorTangent::vertical(Matrix::identity(4));
        assert!(twistor_j(1, &bad, &at).is_err());
    }
}
