//! The structures `𝓘_α`: `J` on `ℋ ⊕ ℋ*` and `(−1)^{α+1}𝒮` on `𝒱 ⊕ 𝒱*`,
//! with `𝒮` the fibre Kähler structure, and the `ℋ ⊕ ℋ*` part of their
//! mixed Nijenhuis tensor.

use crate::error::Result;
use crate::linalg::element::GElement;
use crate::linalg::fibre::ensure_vertical;
use crate::matrix::Matrix;
use crate::scalar::Field;

use super::connection::CurvatureAt;
use super::point::{alpha_sign, check_alpha, TwistorPoint, TwistorTangent};

/// `𝓘_α`; on vertical data `𝒮(U + Φ) = JΦ + coform(JU)` in dual form.
pub fn kahler_j<T: Field>(alpha: u8, t: &TwistorTangent<T>, at: &TwistorPoint<T>) -> Result<TwistorTangent<T>> {
    check_alpha(alpha)?;
    t.validate(at)?;
    let s = -alpha_sign::<T>(alpha);
    let j = at.jm();
    Ok(TwistorTangent {
        horizontal: GElement::apply(j, &t.horizontal),
        vertical: (j * &t.vertical_coform).scale(&s),
        vertical_coform: (j * &t.vertical).scale(&s),
    })
}

/// `ℋ ⊕ ℋ*` part of `N_{𝓘_α}(A^h, V)`:
/// `(J∘V)A − J(0, ζ_A) + (0, ζ_{JA})` with
/// `ζ_B(Z) = −(−1)^{α+1} Tr(V ∘ R̂(π₁B, Z))`. The trace terms come from the
/// curvature of the lifts paired against the coform `𝓘_α V`; they vanish
/// when `R = 0`.
pub fn i_alpha_nijenhuis_h<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    a: &GElement<T>,
    v: &Matrix<T>,
) -> Result<GElement<T>> {
    check_alpha(alpha)?;
    ensure_vertical(&at.j, v)?;
    let m = at.dim();
    let j = at.jm();
    let sigma = -alpha_sign::<T>(alpha);
    let ja = GElement::apply(j, a);
    let zeta = |x: &[T]| -> Vec<T> {
        (0..m)
            .map(|k| {
                let e = GElement::<T>::e(m, k).vec;
                -(sigma.clone() * (v * &curv.r_hat(x, &e)).trace())
            })
            .collect()
    };
    let jva = GElement::apply(&(j * v), a);
    let z2 = GElement::new(vec![T::zero(); m], zeta(&a.vec))?;
    let z4 = GElement::new(vec![T::zero(); m], zeta(&ja.vec))?;
    Ok(jva.sub(&GElement::apply(j, &z2)).add(&z4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis::{OrthonormalBasis, SkewFrame};
    use crate::scalar::{q, Rational};
    use crate::twistor::connection::Connection;
    use crate::twistor::point::probe_tangents;

    fn point() -> TwistorPoint<Rational> {
        let mut b = OrthonormalBasis::reference(2);
        b.rotate(0, 3, &q(1, 4)).unwrap();
        b.rotate(0, 1, &q(-2, 3)).unwrap();
        TwistorPoint::from_basis(vec![q(1, 3), q(2, 1)], b).unwrap()
    }

    #[test]
    fn kahler_j_squares_to_minus_one() {
        let at = point();
        for alpha in [1, 2] {
            for t in probe_tangents(&at) {
                let jj = kahler_j(alpha, &kahler_j(alpha, &t, &at).unwrap(), &at).unwrap();
                assert_eq!(jj, t.scale(&q(-1, 1)));
            }
        }
    }

    #[test]
    fn flat_remark2_value() {
        let at = point();
        let b = at.adapted.clone().unwrap();
        let f = SkewFrame::new(&b).unwrap();
        let v = &f.s(0, 2) - &f.s(1, 3);
        let curv = Connection::<Rational>::flat(1).curvature_at(&at.p).unwrap();
        for alpha in [1, 2] {
            assert_eq!(i_alpha_nijenhuis_h(alpha, &curv, &at, b.vector(0), &v).unwrap(), *b.vector(3));
            assert!(i_alpha_nijenhuis_h(alpha, &curv, &at, b.vector(0), &Matrix::zeros(4, 4)).unwrap().is_zero());
        }
    }

    #[test]
    fn curved_remark2_value() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let conn = Connection::<Rational>::example_curved(1);
        for at in crate::twistor::sample::sample_n1_points(10, &mut rng, 4).unwrap() {
            let b = at.adapted.clone().unwrap();
            let f = SkewFrame::new(&b).unwrap();
            let v = &f.s(0, 2) - &f.s(1, 3);
            let curv = conn.curvature_at(&at.p).unwrap();
            for alpha in [1, 2] {
                assert_eq!(i_alpha_nijenhuis_h(alpha, &curv, &at, b.vector(0), &v).unwrap(), *b.vector(3));
            }
        }
    }
}
