//! Direct computation on the 4-dimensional twistor chart of `n = 1`:
//! coordinates `(x1, x2, u, v)` with `J(u,v) = Σ x_r(u,v) I_r` on one sheet
//! of the hyperboloid. The structures `𝒥_α` and `𝓘_α` are assembled as
//! fields of endomorphisms of `T𝒢 ⊕ T*𝒢` from the adapted frame
//! `{h_1, h_2, ∂_u, ∂_v, dx_1, dx_2, β^u, β^v}`, and their Nijenhuis tensors
//! are computed from Courant brackets and compared with the closed forms.

use std::sync::Arc;

use rayon::prelude::*;

use crate::courant::{default_probes, lie_bracket, nijenhuis, value_of, GacField, JetSection};
use crate::error::{ensure_dim, Error, Result};
use crate::linalg::basis::OrthonormalBasis;
use crate::linalg::element::{fibre_pairing, GElement};
use crate::linalg::example5::{hyperboloid_chart_inverse, Classification, Example5};
use crate::linalg::fibre::VerticalSpace;
use crate::linalg::structure::{from_symplectic, GcStructure};
use crate::matrix::Matrix;
use crate::poly::{Poly, RationalFn};
use crate::scalar::{Dual, Field};

use super::connection::Connection;
use super::kahler::i_alpha_nijenhuis_h;
use super::lift::VectorField;
use super::point::{alpha_sign, check_alpha, TwistorPoint, TwistorTangent};
use super::prop1::{nijenhuis_closed_form_variant, ClosedFormVariant};

/// Which structure is realized on the chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStructure {
    /// `𝒥_α`.
    Twistor,
    /// `𝓘_α`.
    Kahler,
}

/// The chart of one sheet: `x1 = s(1+r²)/(1−r²)`, `x2 = 2u/(1−r²)`,
/// `x3 = 2v/(1−r²)`, as rational functions of `(x1, x2, u, v)`.
#[derive(Clone, Debug)]
pub struct N1Chart<T> {
    conn: Connection<T>,
    gens: Example5<T>,
    sheet: i32,
    x: Vec<RationalFn<T>>,
    xu: Vec<RationalFn<T>>,
    xv: Vec<RationalFn<T>>,
}

/// 1-jets at a chart point of everything the frame is built from.
#[derive(Clone, Debug)]
pub struct FrameJet<T> {
    pub j: Matrix<Dual<T>>,
    pub ju: Matrix<Dual<T>>,
    pub jv: Matrix<Dual<T>>,
    /// Columns: the frame in chart coordinates.
    pub frame: Matrix<Dual<T>>,
    /// `J∘J_u = K[0,0]J_u + K[1,0]J_v`, etc.
    pub k_v: Matrix<Dual<T>>,
}

fn span_coeffs<T: Field>(basis: &[&Matrix<Dual<T>>], target: &Matrix<Dual<T>>) -> Result<Vec<Dual<T>>> {
    let cols: Vec<Vec<Dual<T>>> = basis.iter().map(|b| b.data().to_vec()).collect();
    Matrix::from_columns(&cols)?
        .solve_in_span(target.data())
        .ok_or_else(|| Error::InvariantViolation("direction is not tangent to the fibre".into()))
}

impl<T: Field> N1Chart<T> {
    pub fn new(conn: Connection<T>, sheet: i32) -> Result<Self> {
        ensure_dim(1, conn.n())?;
        let nv = 4;
        let u = Poly::<T>::var(nv, 2);
        let v = Poly::<T>::var(nv, 3);
        let one = Poly::constant(nv, T::one());
        let r2 = &(&u * &u) + &(&v * &v);
        let den = &one - &r2;
        let s = T::from_i64(if sheet < 0 { -1 } else { 1 });
        let two = T::from_i64(2);
        let x = vec![
            RationalFn::new((&one + &r2).scale(&s), den.clone())?,
            RationalFn::new(u.scale(&two), den.clone())?,
            RationalFn::new(v.scale(&two), den)?,
        ];
        let xu = x.iter().map(|f| f.derivative(2)).collect();
        let xv = x.iter().map(|f| f.derivative(3)).collect();
        let gens = Example5::new(&OrthonormalBasis::reference(2))?;
        Ok(N1Chart { conn, gens, sheet: if sheet < 0 { -1 } else { 1 }, x, xu, xv })
    }

    pub fn sheet(&self) -> i32 {
        self.sheet
    }

    pub fn connection(&self) -> &Connection<T> {
        &self.conn
    }

    fn combine(&self, f: &[RationalFn<T>], d: &[Dual<T>]) -> Result<Matrix<Dual<T>>> {
        let mut out = Matrix::zeros(4, 4);
        for (r, fr) in f.iter().enumerate() {
            let c = fr.eval(d)?;
            out = &out + &self.gens.i[r].map(|e| Dual::constant(e.clone())).scale(&c);
        }
        Ok(out)
    }

    /// `J` at the chart point (value only).
    pub fn structure_at(&self, pt: &[T]) -> Result<GcStructure<T>> {
        ensure_dim(4, pt.len())?;
        let d: Vec<Dual<T>> = pt.iter().cloned().map(Dual::constant).collect();
        GcStructure::new(value_of(&self.combine(&self.x, &d)?))
    }

    pub fn frame_jet(&self, pt: &[T]) -> Result<FrameJet<T>> {
        ensure_dim(4, pt.len())?;
        let d = Dual::seed(pt);
        let j = self.combine(&self.x, &d)?;
        let ju = self.combine(&self.xu, &d)?;
        let jv = self.combine(&self.xv, &d)?;
        let mut c = Vec::with_capacity(2);
        for l in 0..2 {
            let e: Vec<Dual<T>> = (0..2).map(|k| if k == l { Dual::constant(T::one()) } else { Dual::constant(T::zero()) }).collect();
            let om = self.conn.omega(&d[..2], &e)?;
            let target = -&om.commutator(&j);
            c.push(span_coeffs(&[&ju, &jv], &target)?);
        }
        let k0 = span_coeffs(&[&ju, &jv], &(&j * &ju))?;
        let k1 = span_coeffs(&[&ju, &jv], &(&j * &jv))?;
        let k_v = Matrix::from_columns(&[k0, k1])?;
        let mut frame = Matrix::<Dual<T>>::zeros(8, 8);
        let one = Dual::constant(T::one());
        for l in 0..2 {
            frame[(l, l)] = one.clone();
            frame[(2, l)] = c[l][0].clone();
            frame[(3, l)] = c[l][1].clone();
            frame[(2 + l, 2 + l)] = one.clone();
            frame[(4 + l, 4 + l)] = one.clone();
            frame[(6 + l, 6 + l)] = one.clone();
            frame[(4 + l, 6)] = -c[l][0].clone();
            frame[(4 + l, 7)] = -c[l][1].clone();
        }
        Ok(FrameJet { j, ju, jv, frame, k_v })
    }

    /// The structure in frame coordinates.
    fn structure_in_frame(&self, fj: &FrameJet<T>, alpha: u8, kind: OracleStructure) -> Result<Matrix<Dual<T>>> {
        let mut out = Matrix::<Dual<T>>::zeros(8, 8);
        let h = [0usize, 1, 4, 5];
        for (r, &rr) in h.iter().enumerate() {
            for (c, &cc) in h.iter().enumerate() {
                out[(rr, cc)] = fj.j[(r, c)].clone();
            }
        }
        let sigma = Dual::constant(-alpha_sign::<T>(alpha));
        match kind {
            OracleStructure::Twistor => {
                for a in 0..2 {
                    for b in 0..2 {
                        out[(2 + a, 2 + b)] = sigma.clone() * fj.k_v[(a, b)].clone();
                        out[(6 + a, 6 + b)] = -(sigma.clone() * fj.k_v[(b, a)].clone());
                    }
                }
            }
            OracleStructure::Kahler => {
                let u = [&fj.ju, &fj.jv];
                let omega = Matrix::from_fn(2, 2, |a, b| fibre_pairing(&(&fj.j * u[a]), u[b]));
                let s = from_symplectic(&omega)?.into_matrix();
                let v = [2usize, 3, 6, 7];
                for (r, &rr) in v.iter().enumerate() {
                    for (c, &cc) in v.iter().enumerate() {
                        out[(rr, cc)] = sigma.clone() * s[(r, c)].clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `𝒥_α` or `𝓘_α` as a field on the chart.
    pub fn field(self: &Arc<Self>, alpha: u8, kind: OracleStructure) -> Result<GacField<T>> {
        check_alpha(alpha)?;
        let chart = Arc::clone(self);
        Ok(GacField::from_fn(4, move |pt| {
            let fj = chart.frame_jet(pt)?;
            let inv = fj.frame.inverse().ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
            Ok(&(&fj.frame * &chart.structure_in_frame(&fj, alpha, kind)?) * &inv)
        }))
    }
}

/// Chart coordinates `(x1, x2, u, v)` and sheet of an `n = 1` point.
pub fn chart_point<T: Field>(at: &TwistorPoint<T>) -> Result<(Vec<T>, i32)> {
    ensure_dim(2, at.dim())?;
    let gens = Example5::new(&OrthonormalBasis::reference(2))?;
    let d = gens.decompose(at.jm())?;
    if d.classification != Classification::CompatibleI {
        return Err(Error::InvariantViolation("point is not on the I-hyperboloid".into()));
    }
    let (u, v, s) = hyperboloid_chart_inverse(&d.x)?;
    Ok((vec![at.p[0].clone(), at.p[1].clone(), u, v], s))
}

/// Real frame at a chart point, with conversions between chart
/// coordinates of `T𝒢 ⊕ T*𝒢` and tangent data.
struct RealFrame<T> {
    frame: Matrix<T>,
    inv: Matrix<T>,
    space: VerticalSpace<T>,
}

impl<T: Field> RealFrame<T> {
    fn new(fj: &FrameJet<T>) -> Result<Self> {
        let frame = value_of(&fj.frame);
        let inv = frame.inverse().ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
        let j = GcStructure::new(value_of(&fj.j))?;
        let space = VerticalSpace::from_basis(&j, vec![value_of(&fj.ju), value_of(&fj.jv)])?;
        Ok(RealFrame { frame, inv, space })
    }

    fn to_tangent(&self, w: &[T]) -> Result<TwistorTangent<T>> {
        let f = self.inv.mul_vec(w);
        Ok(TwistorTangent {
            horizontal: GElement::new(vec![f[0].clone(), f[1].clone()], vec![f[4].clone(), f[5].clone()])?,
            vertical: self.space.combine(&[f[2].clone(), f[3].clone()]),
            vertical_coform: self.space.dual_of_values(&[f[6].clone(), f[7].clone()]),
        })
    }

    fn from_tangent(&self, t: &TwistorTangent<T>) -> Result<Vec<T>> {
        let c = self.space.coords(&t.vertical)?;
        let vals = self.space.values_of(|u| fibre_pairing(&t.vertical_coform, u));
        let h = &t.horizontal;
        let f = vec![
            h.vec[0].clone(),
            h.vec[1].clone(),
            c[0].clone(),
            c[1].clone(),
            h.cov[0].clone(),
            h.cov[1].clone(),
            vals[0].clone(),
            vals[1].clone(),
        ];
        Ok(self.frame.mul_vec(&f))
    }
}

/// A probe pair where direct and closed-form values differ.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleWitness<T> {
    pub probes: (usize, usize),
    pub direct: Vec<T>,
    pub closed_form: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSample<T> {
    pub chart_point: Vec<T>,
    pub sheet: i32,
    pub pairs: usize,
    /// Pairs where the direct value is nonzero.
    pub direct_nonzero: usize,
    pub mismatches: Vec<OracleWitness<T>>,
    pub max_residual: f64,
}

impl<T: Field> OracleSample<T> {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Direct `N_{𝒥_α}` on all probe pairs versus the closed form.
pub fn oracle_direct_nijenhuis_n1<T: Field>(
    conn: &Connection<T>,
    at: &TwistorPoint<T>,
    alpha: u8,
    probes: &[JetSection<T>],
    variant: ClosedFormVariant,
) -> Result<OracleSample<T>> {
    let (pt, sheet) = chart_point(at)?;
    let chart = Arc::new(N1Chart::new(conn.clone(), sheet)?);
    crate::courant::scan::check_spanning(probes, &pt)?;
    let field = chart.field(alpha, OracleStructure::Twistor)?;
    let jet = field.checked_jet(&pt)?;
    let fj = chart.frame_jet(&pt)?;
    let rf = RealFrame::new(&fj)?;
    if value_of(&fj.j) != *at.jm() {
        return Err(Error::InvariantViolation("chart structure differs from the sample".into()));
    }
    let curv = conn.curvature_at(&at.p)?;
    let jets: Vec<_> = probes.iter().map(|s| s.jet(&pt)).collect::<Result<_>>()?;
    let mut out = OracleSample { chart_point: pt, sheet, pairs: 0, direct_nonzero: 0, mismatches: Vec::new(), max_residual: 0.0 };
    for a in 0..jets.len() {
        for b in a + 1..jets.len() {
            let direct = nijenhuis(&jet, &jets[a], &jets[b])?.coords();
            let ta = rf.to_tangent(&value_vec(&jets[a]))?;
            let tb = rf.to_tangent(&value_vec(&jets[b]))?;
            let cf = nijenhuis_closed_form_variant(alpha, &curv, at, &ta, &tb, variant)?;
            let closed = rf.from_tangent(&cf)?;
            out.pairs += 1;
            if direct.iter().any(|x| !x.is_negligible()) {
                out.direct_nonzero += 1;
            }
            let res = direct.iter().zip(&closed).map(|(x, y)| (x.clone() - y.clone()).leading_f64().abs()).fold(0.0, f64::max);
            out.max_residual = out.max_residual.max(res);
            if direct.iter().zip(&closed).any(|(x, y)| !(x.clone() - y.clone()).is_negligible()) {
                out.mismatches.push(OracleWitness { probes: (a, b), direct, closed_form: closed });
            }
        }
    }
    Ok(out)
}

fn value_vec<T: Field>(j: &[Dual<T>]) -> Vec<T> {
    j.iter().map(|d| d.re.clone()).collect()
}

/// The standard probe set on the chart: 8 coordinate sections and 8
/// polynomial perturbations.
pub fn oracle_probes<T: Field>() -> Vec<JetSection<T>> {
    default_probes(4, true)
}

/// `N(A, B)` of a field at a point on two tangent values, by bilinearity
/// from the coordinate sections.
fn nijenhuis_on_values<T: Field>(field: &GacField<T>, pt: &[T], wa: &[T], wb: &[T]) -> Result<Vec<T>> {
    let jet = field.checked_jet(pt)?;
    let coords: Vec<Vec<Dual<T>>> = (0..8).map(|k| JetSection::<T>::coordinate(4, k).jet(pt)).collect::<Result<_>>()?;
    let mut acc = vec![T::zero(); 8];
    for (i, x) in wa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in wb.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let n = nijenhuis(&jet, &coords[i], &coords[j])?.coords();
            let c = x.clone() * y.clone();
            for (a, v) in acc.iter_mut().zip(n) {
                *a = a.clone() + c.clone() * v;
            }
        }
    }
    Ok(acc)
}

/// Direct and closed-form `ℋ ⊕ ℋ*` parts of `N_{𝓘_α}(A^h, V)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerMixed<T> {
    pub direct: TwistorTangent<T>,
    pub closed_form: GElement<T>,
}

impl<T: Field> KahlerMixed<T> {
    pub fn agrees(&self) -> bool {
        self.direct.horizontal.sub(&self.closed_form).is_zero()
    }
}

pub fn kahler_mixed_direct<T: Field>(
    conn: &Connection<T>,
    at: &TwistorPoint<T>,
    alpha: u8,
    a: &GElement<T>,
    v: &Matrix<T>,
) -> Result<KahlerMixed<T>> {
    let (pt, sheet) = chart_point(at)?;
    let chart = Arc::new(N1Chart::new(conn.clone(), sheet)?);
    let field = chart.field(alpha, OracleStructure::Kahler)?;
    let fj = chart.frame_jet(&pt)?;
    let rf = RealFrame::new(&fj)?;
    let wa = rf.from_tangent(&TwistorTangent::horizontal(a.clone()))?;
    let wv = rf.from_tangent(&TwistorTangent::vertical(v.clone()))?;
    let direct = rf.to_tangent(&nijenhuis_on_values(&field, &pt, &wa, &wv)?)?;
    let curv = conn.curvature_at(&at.p)?;
    let closed_form = i_alpha_nijenhuis_h(alpha, &curv, at, a, v)?;
    Ok(KahlerMixed { direct, closed_form })
}

/// Residuals of the bracket–curvature identity and of
/// `[X^h, ã] = (∇_X a)~` on the chart, where `ã_J = a + J a J`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartIdentities<T> {
    pub eq32: Vec<T>,
    pub eq32_curvature_nonzero: bool,
    pub hv_bracket: Vec<T>,
}

impl<T: Field> ChartIdentities<T> {
    pub fn all_zero(&self) -> bool {
        self.eq32.iter().chain(&self.hv_bracket).all(Field::is_negligible)
    }
}

/// A polynomial field of skew endomorphisms of `TM ⊕ T*M` on the base.
pub type EndoField<T> = Matrix<Poly<T>>;

pub fn chart_identities<T: Field>(
    conn: &Connection<T>,
    at: &TwistorPoint<T>,
    x: &VectorField<T>,
    y: &VectorField<T>,
    a: &EndoField<T>,
) -> Result<ChartIdentities<T>> {
    ensure_dim(2, x.len())?;
    ensure_dim(2, y.len())?;
    let (pt, sheet) = chart_point(at)?;
    let chart = N1Chart::new(conn.clone(), sheet)?;
    let fj = chart.frame_jet(&pt)?;
    let d = Dual::seed(&pt);
    let base = &d[..2];
    let lift = |f: &VectorField<T>| -> Vec<Dual<T>> {
        let c: Vec<Dual<T>> = f.iter().map(|p| p.eval(base)).collect();
        (0..4)
            .map(|r| (0..2).fold(Dual::constant(T::zero()), |acc, l| acc + c[l].clone() * fj.frame[(r, l)].clone()))
            .collect()
    };
    let xh = lift(x);
    let yh = lift(y);
    let lhs = lie_bracket(&xh, &yh)?;

    let bd = Dual::seed(&at.p);
    let xb: Vec<Dual<T>> = x.iter().map(|p| p.eval(&bd)).collect();
    let yb: Vec<Dual<T>> = y.iter().map(|p| p.eval(&bd)).collect();
    let xy = lie_bracket(&xb, &yb)?;
    let fr = value_of(&fj.frame);
    let jre = value_of(&fj.j);
    let ure = [value_of(&fj.ju), value_of(&fj.jv)];
    let space = VerticalSpace::from_basis(&GcStructure::new(jre.clone())?, ure.to_vec())?;
    let (xv, yv) = (value_vec(&xb), value_vec(&yb));
    let r_a = conn.curvature_at(&at.p)?.r(&xv, &yv).act(&jre);
    let rc = space.coords(&r_a)?;
    let rhs: Vec<T> = (0..4)
        .map(|r| {
            let h = (0..2).fold(T::zero(), |acc, l| acc + xy[l].clone() * fr[(r, l)].clone());
            if r >= 2 {
                h + rc[r - 2].clone()
            } else {
                h
            }
        })
        .collect();
    let eq32: Vec<T> = lhs.iter().zip(&rhs).map(|(p, q)| p.clone() - q.clone()).collect();

    // [X^h, ã] against (∇_X a)~.
    let a_d: Matrix<Dual<T>> = a.map(|p| p.eval(base));
    let a_t = &a_d + &(&(&fj.j * &a_d) * &fj.j);
    let coeffs = span_coeffs(&[&fj.ju, &fj.jv], &a_t)?;
    let at_field: Vec<Dual<T>> = vec![Dual::constant(T::zero()), Dual::constant(T::zero()), coeffs[0].clone(), coeffs[1].clone()];
    let hv_lhs = lie_bracket(&xh, &at_field)?;
    let a_b: Matrix<Dual<T>> = a.map(|p| p.eval(&bd));
    let da = Matrix::from_fn(a_b.rows(), a_b.cols(), |r, c| {
        (0..2).fold(T::zero(), |acc, i| acc + xv[i].clone() * a_b[(r, c)].partial(i))
    });
    let om = conn.omega(&at.p, &xv)?;
    let nabla = &da + &om.commutator(&value_of(&a_b));
    let nabla_t = &nabla + &(&(&jre * &nabla) * &jre);
    let nc = space.coords(&nabla_t)?;
    let hv_rhs = [T::zero(), T::zero(), nc[0].clone(), nc[1].clone()];
    let hv_bracket = hv_lhs.iter().zip(&hv_rhs).map(|(p, q)| p.clone() - q.clone()).collect();
    Ok(ChartIdentities { eq32, eq32_curvature_nonzero: !r_a.is_zero(), hv_bracket })
}

/// One oracle run over samples, both `α`, in parallel over samples.
pub fn oracle_run<T: Field>(
    conn: &Connection<T>,
    samples: &[TwistorPoint<T>],
    probes: &[JetSection<T>],
    variant: ClosedFormVariant,
) -> Vec<Result<[OracleSample<T>; 2]>> {
    samples
        .par_iter()
        .map(|at| {
            Ok([
                oracle_direct_nijenhuis_n1(conn, at, 1, probes, variant)?,
                oracle_direct_nijenhuis_n1(conn, at, 2, probes, variant)?,
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis::SkewFrame;
    use crate::scalar::{q, Rational};

    fn point(flip: bool) -> TwistorPoint<Rational> {
        let mut b = OrthonormalBasis::reference(2);
        b.rotate(0, 2, &q(1, 3)).unwrap();
        b.rotate(1, 3, &q(-1, 2)).unwrap();
        b.rotate(0, 1, &q(2, 5)).unwrap();
        if flip {
            b.flip(0);
            b.flip(2);
        }
        TwistorPoint::from_basis(vec![q(1, 2), q(-1, 3)], b).unwrap()
    }

    #[test]
    fn field_is_a_structure() {
        let at = point(false);
        let (pt, s) = chart_point(&at).unwrap();
        let chart = Arc::new(N1Chart::new(Connection::example_curved(1), s).unwrap());
        for alpha in [1, 2] {
            for kind in [OracleStructure::Twistor, OracleStructure::Kahler] {
                chart.field(alpha, kind).unwrap().checked_jet(&pt).unwrap();
            }
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        for flip in [false, true] {
            let at = point(flip);
            let conn = Connection::example_curved(1);
            for alpha in [1, 2] {
                let r = oracle_direct_nijenhuis_n1(&conn, &at, alpha, &oracle_probes(), ClosedFormVariant::Exact).unwrap();
                assert!(r.equal(), "alpha {alpha}: {:?}", r.mismatches.first());
                if alpha == 1 {
                    assert_eq!(r.direct_nonzero, 0);
                } else {
                    assert!(r.direct_nonzero > 0);
                }
            }
        }
    }

    #[test]
    fn perturbed_closed_form_is_detected() {
        let at = point(false);
        let conn = Connection::example_curved(1);
        let r = oracle_direct_nijenhuis_n1(&conn, &at, 2, &oracle_probes(), ClosedFormVariant::NegateHorizontalCoform).unwrap();
        assert!(!r.equal());
    }

    #[test]
    fn chart_identities_hold() {
        let at = point(true);
        let conn = Connection::example_curved(1);
        let x = |i| Poly::<Rational>::var(2, i);
        let one = Poly::constant(2, q(1, 1));
        let xf = vec![&one + &x(1), &x(0) * &x(0)];
        let yf = vec![&x(0) * &x(1), one.clone()];
        let f = SkewFrame::new(&OrthonormalBasis::<Rational>::reference(2)).unwrap();
        let s1 = f.s(0, 2).map(|c| Poly::constant(2, c.clone()));
        let s2 = f.s(1, 3).map(|c| Poly::constant(2, c.clone()));
        let a = Matrix::from_fn(4, 4, |r, c| &(&s1[(r, c)] * &x(0)) + &(&s2[(r, c)] * &(&x(1) * &x(1))));
        let r = chart_identities(&conn, &at, &xf, &yf, &a).unwrap();
        assert!(r.all_zero(), "{r:?}");
        assert!(r.eq32_curvature_nonzero);
    }

    #[test]
    fn kahler_mixed_flat_matches() {
        let at = point(false);
        let b = at.adapted.clone().unwrap();
        let f = SkewFrame::new(&b).unwrap();
        let v = &f.s(0, 2) - &f.s(1, 3);
        for alpha in [1, 2] {
            let r = kahler_mixed_direct(&Connection::flat(1), &at, alpha, b.vector(0), &v).unwrap();
            assert!(r.agrees(), "{r:?}");
            assert_eq!(r.direct.horizontal, *b.vector(3));
        }
    }

    #[test]
    fn kahler_mixed_curved_matches_closed_form() {
        for flip in [false, true] {
            let at = point(flip);
            let b = at.adapted.clone().unwrap();
            let f = SkewFrame::new(&b).unwrap();
            let v = &f.s(0, 2) - &f.s(1, 3);
            for alpha in [1, 2] {
                let r = kahler_mixed_direct(&Connection::example_curved(1), &at, alpha, b.vector(0), &v).unwrap();
                assert!(r.agrees(), "{r:?}");
            }
        }
    }

    #[test]
    fn kahler_mixed_matches_on_all_pairs() {
        // For n = 1 the curvature trace terms vanish identically.
        let conn = Connection::example_curved(1);
        for flip in [false, true] {
            let at = point(flip);
            let curv = conn.curvature_at(&at.p).unwrap();
            let flat = Connection::<Rational>::flat(1).curvature_at(&at.p).unwrap();
            for alpha in [1, 2] {
                for k in 0..4 {
                    let a = GElement::coordinate(2, k);
                    for v in at.vertical_space().basis() {
                        let r = kahler_mixed_direct(&conn, &at, alpha, &a, v).unwrap();
                        let f = i_alpha_nijenhuis_h(alpha, &flat, &at, &a, v).unwrap();
                        assert!(r.agrees(), "{r:?}");
                        assert_eq!(r.closed_form, i_alpha_nijenhuis_h(alpha, &curv, &at, &a, v).unwrap());
                        assert_eq!(r.closed_form, f);
                    }
                }
            }
        }
    }
}
