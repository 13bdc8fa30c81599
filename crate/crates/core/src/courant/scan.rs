//! Sampled integrability scans: the Nijenhuis tensor of a field over
//! points × probe pairs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::element::GElement;
use crate::matrix::Matrix;
use crate::scalar::Field;

use super::bracket::nijenhuis;
use super::section::{GacField, JetSection};

/// A nonzero Nijenhuis value with the point and probe pair producing it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanWitness<T> {
    pub point: usize,
    pub probes: (usize, usize),
    pub value: GElement<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSummary {
    pub point: usize,
    pub pairs: usize,
    pub nonzero: usize,
    pub max_abs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport<T> {
    pub per_point: Vec<PointSummary>,
    pub witnesses: Vec<ScanWitness<T>>,
}

impl<T: Field> ScanReport<T> {
    pub fn is_empty(&self) -> bool {
        self.per_point.is_empty()
    }

    /// True when every sampled value vanished (vacuously true when empty).
    pub fn all_zero(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.per_point.iter().map(|p| p.max_abs).fold(0.0, f64::max)
    }
}

/// Rank of the probe values at `p` must be `2m`.
pub fn check_spanning<T: Field>(probes: &[JetSection<T>], p: &[T]) -> Result<()> {
    let cols: Vec<Vec<T>> = probes.iter().map(|s| s.value(p)).collect::<Result<_>>()?;
    let need = 2 * p.len();
    let rank = if cols.is_empty() { 0 } else { Matrix::from_columns(&cols)?.rank() };
    if rank < need {
        return Err(Error::NonSpanningProbes(format!("{p:?}: rank {rank} < {need}")));
    }
    Ok(())
}

/// `N(probe_a, probe_b)` for all `a < b` at every point.
pub fn integrability_scan<T: Field>(
    field: &GacField<T>,
    points: &[Vec<T>],
    probes: &[JetSection<T>],
) -> Result<ScanReport<T>> {
    let results: Vec<Result<(PointSummary, Vec<ScanWitness<T>>)>> = points
        .par_iter()
        .enumerate()
        .map(|(idx, p)| {
            check_spanning(probes, p)?;
            let j = field.checked_jet(p)?;
            let jets: Vec<_> = probes.iter().map(|s| s.jet(p)).collect::<Result<_>>()?;
            let mut summary = PointSummary { point: idx, pairs: 0, nonzero: 0, max_abs: 0.0 };
            let mut witnesses = Vec::new();
            for a in 0..jets.len() {
                for b in a + 1..jets.len() {
                    let n = nijenhuis(&j, &jets[a], &jets[b])?;
                    summary.pairs += 1;
                    let mag = n.coords().iter().map(|v| v.leading_f64().abs()).fold(0.0, f64::max);
                    summary.max_abs = summary.max_abs.max(mag);
                    if !n.is_zero() {
                        summary.nonzero += 1;
                        witnesses.push(ScanWitness { point: idx, probes: (a, b), value: n });
                    }
                }
            }
            Ok((summary, witnesses))
        })
        .collect();
    let mut report = ScanReport { per_point: Vec::new(), witnesses: Vec::new() };
    for r in results {
        let (s, w) = r?;
        report.per_point.push(s);
        report.witnesses.extend(w);
    }
    Ok(report)
}

/// The `2m` coordinate sections followed by `2m` polynomial perturbations
/// `∂_k + x_{k+1} (∂_{k+1} + dx_k)`-style probes.
pub fn default_probes<T: Field>(m: usize, perturbed: bool) -> Vec<JetSection<T>> {
    use crate::poly::Poly;
    let mut out: Vec<JetSection<T>> = (0..2 * m).map(|k| JetSection::coordinate(m, k)).collect();
    if perturbed {
        for k in 0..2 * m {
            let mut comps: Vec<Poly<T>> = (0..2 * m).map(|_| Poly::zero(m)).collect();
            comps[k] = Poly::constant(m, T::one());
            let a = k % m;
            let b = (k + 1) % m;
            comps[(k + 1) % (2 * m)] = &comps[(k + 1) % (2 * m)] + &(&Poly::var(m, a) * &Poly::var(m, b));
            comps[(k + m) % (2 * m)] = &comps[(k + m) % (2 * m)] + &Poly::var(m, b).scale(&T::from_i64(2));
            out.push(JetSection::polynomial(format!("p{}", k + 1), comps).expect("consistent arity"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::structure::from_complex;
    use crate::scalar::{q, Rational};

    fn k() -> Matrix<Rational> {
        Matrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap()
    }

    #[test]
    fn constant_example1_is_integrable() {
        let field = GacField::constant(from_complex(&k()).unwrap().into_matrix());
        let pts = vec![vec![q(1, 2), q(1, 3)], vec![q(-2, 1), q(5, 7)]];
        let r = integrability_scan(&field, &pts, &default_probes(2, true)).unwrap();
        assert!(r.all_zero());
        assert_eq!(r.per_point.len(), 2);
        assert_eq!(r.per_point[0].pairs, 28);
    }

    #[test]
    fn empty_points_give_empty_report() {
        let field = GacField::constant(from_complex(&k()).unwrap().into_matrix());
        let r = integrability_scan(&field, &[], &default_probes::<Rational>(2, false)).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn non_spanning_probes_rejected() {
        let field = GacField::constant(from_complex(&k()).unwrap().into_matrix());
        let probes: Vec<JetSection<Rational>> = default_probes(2, false).into_iter().take(3).collect();
        let r = integrability_scan(&field, &[vec![q(0, 1), q(0, 1)]], &probes);
        assert!(matches!(r, Err(Error::NonSpanningProbes(_))));
    }

    #[test]
    fn invalid_field_rejected() {
        let field = GacField::constant(Matrix::<Rational>::identity(4));
        let r = integrability_scan(&field, &[vec![q(0, 1), q(0, 1)]], &default_probes(2, false));
        assert!(matches!(r, Err(Error::InvariantViolation(_))));
    }
}
