//! Horizontal lifts on the chart `(x̃_l, y_ij)` of `A(M)` given by a
//! constant orthonormal frame, and the bracket–curvature identity
//! `[X^h, Y^h]_a = [X,Y]^h_a + R(X,Y)a`.

use crate::courant::lie_bracket;
use crate::error::{ensure_dim, Result};
use crate::linalg::basis::{OrthonormalBasis, SkewFrame};
use crate::poly::Poly;
use crate::scalar::{Dual, Field};

use super::connection::Connection;
use super::point::TwistorPoint;

/// Coordinates of a lifted vector: base part and `y_ij` part.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftCoords<T> {
    pub base: Vec<T>,
    pub y: Vec<T>,
}

/// `X^h` at `a`: base part `X`, fibre part the `y`-coordinates of
/// `−[ω(X), a]` (the constant-frame form of the lift, where the
/// `∇S_pq` term reduces to the connection form).
pub fn horizontal_lift<T: Field>(
    conn: &Connection<T>,
    x: &[T],
    at: &TwistorPoint<T>,
    frame: &SkewFrame<T>,
) -> Result<LiftCoords<T>> {
    ensure_dim(conn.dim(), x.len())?;
    ensure_dim(frame.len(), at.jm().rows())?;
    let om = conn.omega(&at.p, x)?;
    let v = -&om.commutator(at.jm());
    Ok(LiftCoords { base: x.to_vec(), y: frame.y_coords(&v) })
}

/// A polynomial vector field on the base chart.
pub type VectorField<T> = Vec<Poly<T>>;

fn lifted_jet<T: Field>(
    conn: &Connection<T>,
    field: &VectorField<T>,
    frame: &SkewFrame<Dual<T>>,
    d: &[Dual<T>],
) -> Result<Vec<Dual<T>>> {
    let m = conn.dim();
    let xs = &d[..m];
    let a = frame.from_y_coords(&d[m..]);
    let xv: Vec<Dual<T>> = field.iter().map(|p| p.eval(xs)).collect();
    let om = conn.omega(xs, &xv)?;
    let vert = -&om.commutator(&a);
    let mut out = xv;
    out.extend(frame.y_coords(&vert));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eq32Residual<T> {
    pub residual: Vec<T>,
    /// Whether the curvature term `R(X,Y)a` was nonzero.
    pub curvature_term_nonzero: bool,
}

/// Residual of `[X^h, Y^h] − [X,Y]^h − R(X,Y)a` at `(p, a = J)` on the
/// chart of the reference frame, by direct differentiation of the lifts.
pub fn eq32_check<T: Field>(
    conn: &Connection<T>,
    x: &VectorField<T>,
    y: &VectorField<T>,
    at: &TwistorPoint<T>,
) -> Result<Eq32Residual<T>> {
    let m = conn.dim();
    ensure_dim(m, x.len())?;
    ensure_dim(m, y.len())?;
    ensure_dim(m, at.dim())?;
    let basis = OrthonormalBasis::<T>::reference(m);
    let frame = SkewFrame::new(&basis)?;
    let dframe = SkewFrame::new(&basis.map(|v| Dual::constant(v.clone())))?;
    let mut point = at.p.clone();
    point.extend(frame.y_coords(at.jm()));
    let d = Dual::seed(&point);
    let xh = lifted_jet(conn, x, &dframe, &d)?;
    let yh = lifted_jet(conn, y, &dframe, &d)?;
    let lhs = lie_bracket(&xh, &yh)?;

    let bd = Dual::seed(&at.p);
    let xb: Vec<Dual<T>> = x.iter().map(|p| p.eval(&bd)).collect();
    let yb: Vec<Dual<T>> = y.iter().map(|p| p.eval(&bd)).collect();
    let xy = lie_bracket(&xb, &yb)?;
    let lift_xy = horizontal_lift(conn, &xy, at, &frame)?;
    let xv: Vec<T> = xb.iter().map(|v| v.re.clone()).collect();
    let yv: Vec<T> = yb.iter().map(|v| v.re.clone()).collect();
    let r_a = conn.curvature_at(&at.p)?.r(&xv, &yv).act(at.jm());
    let r_y = frame.y_coords(&r_a);
    let mut rhs = lift_xy.base;
    rhs.extend(lift_xy.y.iter().zip(&r_y).map(|(a, b)| a.clone() + b.clone()));
    Ok(Eq32Residual {
        residual: lhs.iter().zip(&rhs).map(|(a, b)| a.clone() - b.clone()).collect(),
        curvature_term_nonzero: !r_a.is_zero(),
    })
}

impl<T: Field> Eq32Residual<T> {
    pub fn is_zero(&self) -> bool {
        self.residual.iter().all(Field::is_negligible)
    }
}
