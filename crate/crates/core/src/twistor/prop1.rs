//! Closed-form Nijenhuis tensor of `𝒥_α` on `𝒢`, case by case:
//! horizontal–horizontal, horizontal–vertical, horizontal–coform and
//! vertical–vertical, assembled by bilinearity.

use crate::error::Result;
use crate::linalg::element::{fibre_pairing, neutral_pairing, GElement};
use crate::linalg::fibre::ensure_vertical;
use crate::matrix::Matrix;
use crate::scalar::Field;

use super::connection::CurvatureAt;
use super::point::{alpha_sign, check_alpha, TwistorPoint, TwistorTangent};

/// `1 + (−1)^α`.
fn coeff<T: Field>(alpha: u8) -> T {
    T::one() + alpha_sign::<T>(alpha)
}

/// Vertical and coform parts of `N_α(A^h, B^h)`; the `ℋ ⊕ ℋ*` part is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalPart<T> {
    pub vertical: Matrix<T>,
    /// Dual of the vertical coform.
    pub vertical_coform: Matrix<T>,
}

/// `R(π₁X, π₁Y)J = [R̂, J]`.
fn r_on_j<T: Field>(curv: &CurvatureAt<T>, at: &TwistorPoint<T>, x: &GElement<T>, y: &GElement<T>) -> Matrix<T> {
    curv.r(&x.vec, &y.vec).act(at.jm())
}

/// `−R(A,B)J + (−1)^α J∘R(A,JB)J + (−1)^α J∘R(JA,B)J + R(JA,JB)J`, with the
/// coform `−½(1+(−1)^α) ω_{A,B}`,
/// `ω_{A,B}(W) = 2⟨JA, WB⟩ − 2⟨JB, WA⟩`.
pub fn prop1_horizontal<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    a: &GElement<T>,
    b: &GElement<T>,
) -> Result<HorizontalPart<T>> {
    check_alpha(alpha)?;
    let j = at.jm();
    let ja = GElement::apply(j, a);
    let jb = GElement::apply(j, b);
    let s = alpha_sign::<T>(alpha);
    let mid = &(j * &r_on_j(curv, at, a, &jb)) + &(j * &r_on_j(curv, at, &ja, b));
    let vertical = &(&r_on_j(curv, at, &ja, &jb) - &r_on_j(curv, at, a, b)) + &mid.scale(&s);
    let c = coeff::<T>(alpha);
    let vs = at.vertical_space();
    let vertical_coform = if c.is_zero() {
        Matrix::zeros(j.rows(), j.rows())
    } else {
        let two = T::from_i64(2);
        let values = vs
            .basis()
            .iter()
            .map(|w| {
                let wa = GElement::apply(w, a);
                let wb = GElement::apply(w, b);
                let om = two.clone() * (neutral_pairing(&ja, &wb)? - neutral_pairing(&jb, &wa)?);
                Ok(-(c.clone() * T::half() * om))
            })
            .collect::<Result<Vec<T>>>()?;
        vs.dual_of_values(&values)
    };
    Ok(HorizontalPart { vertical, vertical_coform })
}

/// `N_α(A^h, V) = (1+(−1)^α) ((J∘V)A)^h`.
pub fn prop1_mixed<T: Field>(alpha: u8, at: &TwistorPoint<T>, a: &GElement<T>, v: &Matrix<T>) -> Result<GElement<T>> {
    check_alpha(alpha)?;
    ensure_vertical(&at.j, v)?;
    let jva = GElement::apply(&(at.jm() * v), a);
    Ok(jva.scale(&coeff(alpha)))
}

/// The element `C` of `T_pM ⊕ T*_pM` (standing for its lift) with
/// `⟨C, B⟩ = −½φ(N₁(A^h,B^h)) − ½(1+(−1)^α) φ(J∘R(A,JB)J + J∘R(JA,B)J)`
/// for all `B`. Pairing against `B = e_k` gives `½C.cov_k`, against
/// `B = α_k` gives `½C.vec_k`.
pub fn prop1_hcoform<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    a: &GElement<T>,
    phi: &Matrix<T>,
) -> Result<GElement<T>> {
    check_alpha(alpha)?;
    ensure_vertical(&at.j, phi)?;
    hcoform_from_weights(&hcoform_weights(alpha, curv, at, a)?, phi)
}

/// The vertical endomorphisms `W_B` with `⟨C, B⟩ = φ(W_B)`, for `B` running
/// over `e_0, …, e_{m−1}, α_0, …, α_{m−1}`; independent of `φ`.
fn hcoform_weights<T: Field>(alpha: u8, curv: &CurvatureAt<T>, at: &TwistorPoint<T>, a: &GElement<T>) -> Result<Vec<Matrix<T>>> {
    let m = at.dim();
    let j = at.jm();
    let ja = GElement::apply(j, a);
    let c = coeff::<T>(alpha);
    let basis = (0..m).map(|k| GElement::e(m, k)).chain((0..m).map(|k| GElement::alpha(m, k)));
    basis
        .map(|b| {
            let n1 = prop1_horizontal(1, curv, at, a, &b)?.vertical;
            let mut w = n1.scale(&-T::half());
            if !c.is_zero() {
                let jb = GElement::apply(j, &b);
                let corr = &(j * &r_on_j(curv, at, a, &jb)) + &(j * &r_on_j(curv, at, &ja, &b));
                w = &w - &corr.scale(&(c.clone() * T::half()));
            }
            Ok(w)
        })
        .collect()
}

fn hcoform_from_weights<T: Field>(weights: &[Matrix<T>], phi: &Matrix<T>) -> Result<GElement<T>> {
    let m = weights.len() / 2;
    let two = T::from_i64(2);
    let vals: Vec<T> = weights.iter().map(|w| two.clone() * fibre_pairing(phi, w)).collect();
    GElement::new(vals[m..].to_vec(), vals[..m].to_vec())
}

/// `N_α(V + φ, W + ψ) = 0`; checks that the inputs are vertical.
pub fn prop1_vertical<T: Field>(alpha: u8, at: &TwistorPoint<T>, e: &TwistorTangent<T>, f: &TwistorTangent<T>) -> Result<TwistorTangent<T>> {
    check_alpha(alpha)?;
    for t in [e, f] {
        t.validate(at)?;
        if !t.horizontal.is_zero() {
            return Err(crate::error::Error::NotVertical("horizontal component in a vertical argument".into()));
        }
    }
    Ok(TwistorTangent::zero(at.dim()))
}

/// Mutations of the closed form, used to show the oracle comparison can
/// fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClosedFormVariant {
    #[default]
    Exact,
    /// Negates the coform of the horizontal–horizontal case.
    NegateHorizontalCoform,
}

/// `N_α(E, F)` by bilinearity from the four cases.
pub fn nijenhuis_closed_form<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    e: &TwistorTangent<T>,
    f: &TwistorTangent<T>,
) -> Result<TwistorTangent<T>> {
    nijenhuis_closed_form_variant(alpha, curv, at, e, f, ClosedFormVariant::Exact)
}

pub fn nijenhuis_closed_form_variant<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    e: &TwistorTangent<T>,
    f: &TwistorTangent<T>,
    variant: ClosedFormVariant,
) -> Result<TwistorTangent<T>> {
    check_alpha(alpha)?;
    e.validate(at)?;
    f.validate(at)?;
    let we = weights_if(alpha, curv, at, e, !f.vertical_coform.is_zero())?;
    let wf = weights_if(alpha, curv, at, f, !e.vertical_coform.is_zero())?;
    assemble(alpha, curv, at, e, f, variant, &we, &wf)
}

/// `N_α` on every pair `(probes[a], probes[b])` with `a < b`, in row-major
/// order. The horizontal–coform weights are computed once per probe.
pub fn nijenhuis_closed_form_pairs<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    probes: &[TwistorTangent<T>],
) -> Result<Vec<TwistorTangent<T>>> {
    check_alpha(alpha)?;
    for p in probes {
        p.validate(at)?;
    }
    let any_coform = probes.iter().any(|p| !p.vertical_coform.is_zero());
    let weights = probes.iter().map(|p| weights_if(alpha, curv, at, p, any_coform)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(probes.len() * probes.len().saturating_sub(1) / 2);
    for a in 0..probes.len() {
        for b in a + 1..probes.len() {
            out.push(assemble(alpha, curv, at, &probes[a], &probes[b], ClosedFormVariant::Exact, &weights[a], &weights[b])?);
        }
    }
    Ok(out)
}

fn weights_if<T: Field>(alpha: u8, curv: &CurvatureAt<T>, at: &TwistorPoint<T>, t: &TwistorTangent<T>, needed: bool) -> Result<Vec<Matrix<T>>> {
    if needed && !t.horizontal.is_zero() {
        hcoform_weights(alpha, curv, at, &t.horizontal)
    } else {
        Ok(Vec::new())
    }
}

/// Bilinear assembly from the four cases; `we`, `wf` are the
/// horizontal–coform weights of `e`, `f` (empty when not needed).
#[allow(clippy::too_many_arguments)]
fn assemble<T: Field>(
    alpha: u8,
    curv: &CurvatureAt<T>,
    at: &TwistorPoint<T>,
    e: &TwistorTangent<T>,
    f: &TwistorTangent<T>,
    variant: ClosedFormVariant,
    we: &[Matrix<T>],
    wf: &[Matrix<T>],
) -> Result<TwistorTangent<T>> {
    let m = at.dim();
    let mut out = TwistorTangent::zero(m);
    // Bilinear pieces with a zero argument are skipped.
    if !e.horizontal.is_zero() && !f.horizontal.is_zero() {
        let mut hh = prop1_horizontal(alpha, curv, at, &e.horizontal, &f.horizontal)?;
        if variant == ClosedFormVariant::NegateHorizontalCoform {
            hh.vertical_coform = -&hh.vertical_coform;
        }
        out.vertical = hh.vertical;
        out.vertical_coform = hh.vertical_coform;
    }
    let mut h = GElement::zero(m);
    if !e.horizontal.is_zero() {
        if !f.vertical.is_zero() {
            h = h.add(&prop1_mixed(alpha, at, &e.horizontal, &f.vertical)?);
        }
        if !f.vertical_coform.is_zero() {
            h = h.add(&hcoform_from_weights(we, &f.vertical_coform)?);
        }
    }
    if !f.horizontal.is_zero() {
        if !e.vertical.is_zero() {
            h = h.sub(&prop1_mixed(alpha, at, &f.horizontal, &e.vertical)?);
        }
        if !e.vertical_coform.is_zero() {
            h = h.sub(&hcoform_from_weights(wf, &e.vertical_coform)?);
        }
    }
    out.horizontal = h;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis::{OrthonormalBasis, SkewFrame};
    use crate::scalar::{q, Rational};
    use crate::twistor::connection::Connection;
    use crate::twistor::point::{probe_tangents, twistor_j};

    fn point(n: usize) -> TwistorPoint<Rational> {
        let mut b = OrthonormalBasis::reference(2 * n);
        let l = b.len();
        b.rotate(0, l / 2, &q(1, 3)).unwrap();
        b.rotate(1, l - 1, &q(-1, 2)).unwrap();
        b.rotate(0, 1, &q(2, 5)).unwrap();
        let p = (0..2 * n).map(|i| q(i as i64 + 1, 3)).collect();
        TwistorPoint::from_basis(p, b).unwrap()
    }

    #[test]
    fn flat_alpha1_vanishes() {
        let at = point(1);
        let curv = Connection::<Rational>::flat(1).curvature_at(&at.p).unwrap();
        let probes = probe_tangents(&at);
        for e in &probes {
            for f in &probes {
                assert!(nijenhuis_closed_form(1, &curv, &at, e, f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn flat_alpha2_is_pure_coform() {
        let at = point(1);
        let curv = Connection::<Rational>::flat(1).curvature_at(&at.p).unwrap();
        let m = 2;
        let mut nonzero = false;
        for i in 0..2 * m {
            for k in 0..2 * m {
                let hp = prop1_horizontal(2, &curv, &at, &GElement::coordinate(m, i), &GElement::coordinate(m, k)).unwrap();
                assert!(hp.vertical.is_zero());
                nonzero |= !hp.vertical_coform.is_zero();
            }
        }
        assert!(nonzero);
    }

    #[test]
    fn thm1_iii_witness() {
        for n in [1, 2] {
            let at = point(n);
            let b = at.adapted.clone().unwrap();
            let f = SkewFrame::new(&b).unwrap();
            let v = &f.s(0, 2) - &f.s(1, 3);
            let got = prop1_mixed(2, &at, b.vector(0), &v).unwrap();
            assert_eq!(got, b.vector(3).scale(&q(2, 1)));
            assert!(prop1_mixed(1, &at, b.vector(0), &v).unwrap().is_zero());
        }
    }

    #[test]
    fn pairs_table_matches_pointwise() {
        let at = point(2);
        let curv = Connection::<Rational>::example_curved(2).curvature_at(&at.p).unwrap();
        let probes = probe_tangents(&at);
        for alpha in [1, 2] {
            let table = nijenhuis_closed_form_pairs(alpha, &curv, &at, &probes).unwrap();
            let mut k = 0;
            for a in 0..probes.len() {
                for b in a + 1..probes.len() {
                    assert_eq!(table[k], nijenhuis_closed_form(alpha, &curv, &at, &probes[a], &probes[b]).unwrap());
                    k += 1;
                }
            }
            assert_eq!(k, table.len());
        }
    }

    #[test]
    fn n1_alpha1_vanishes_for_curved() {
        let at = point(1);
        let curv = Connection::<Rational>::example_curved(1).curvature_at(&at.p).unwrap();
        let probes = probe_tangents(&at);
        for e in &probes {
            for f in &probes {
                assert!(nijenhuis_closed_form(1, &curv, &at, e, f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn antisymmetric_and_type_relations() {
        let at = point(1);
        let curv = Connection::<Rational>::example_curved(1).curvature_at(&at.p).unwrap();
        let probes = probe_tangents(&at);
        for alpha in [1, 2] {
            for e in &probes {
                for f in &probes {
                    let n = nijenhuis_closed_form(alpha, &curv, &at, e, f).unwrap();
                    let nr = nijenhuis_closed_form(alpha, &curv, &at, f, e).unwrap();
                    assert_eq!(n, nr.scale(&q(-1, 1)));
                }
            }
        }
    }

    #[test]
    fn hcoform_pairing_round_trip() {
        let at = point(1);
        let curv = Connection::<Rational>::example_curved(1).curvature_at(&at.p).unwrap();
        let phi = at.vertical_space().dual_of_values(&[q(1, 1), q(-2, 3)]);
        let a = GElement::new(vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(1, 2)]).unwrap();
        let c = prop1_hcoform(2, &curv, &at, &a, &phi).unwrap();
        let ja = GElement::apply(at.jm(), &a);
        for k in 0..4 {
            let b = GElement::coordinate(2, k);
            let jb = GElement::apply(at.jm(), &b);
            let n1 = prop1_horizontal(1, &curv, &at, &a, &b).unwrap().vertical;
            let corr = &(at.jm() * &r_on_j(&curv, &at, &a, &jb)) + &(at.jm() * &r_on_j(&curv, &at, &ja, &b));
            let want = -(q(1, 2) * fibre_pairing(&phi, &n1)) - fibre_pairing(&phi, &corr);
            assert_eq!(neutral_pairing(&c, &b).unwrap(), want);
        }
    }

    #[test]
    fn alpha1_type_relation_on_n1() {
        // N₁(𝒥₁E, F) = −𝒥₁N₁(E, F); both sides vanish for n = 1 but the
        // relation is checked for the n = 2 curved case as well.
        for n in [1, 2] {
            let at = point(n);
            let curv = Connection::<Rational>::example_curved(n).curvature_at(&at.p).unwrap();
            let probes = probe_tangents(&at);
            for e in probes.iter().step_by(3) {
                for f in probes.iter().step_by(5) {
                    let je = twistor_j(1, e, &at).unwrap();
                    let lhs = nijenhuis_closed_form(1, &curv, &at, &je, f).unwrap();
                    let rhs = twistor_j(1, &nijenhuis_closed_form(1, &curv, &at, e, f).unwrap(), &at).unwrap();
                    assert_eq!(lhs, rhs.scale(&q(-1, 1)));
                }
            }
        }
    }
}
