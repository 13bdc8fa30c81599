//! Orthonormal bases of `V ⊕ V*`, the two orientation lemmas, and the
//! skew generators `S_ij`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::element::{fibre_pairing, GElement};
use crate::linalg::structure::{frame_orientation, GcStructure};
use crate::matrix::Matrix;
use crate::scalar::{Field, Rational, Scalar};

/// A basis `{Q_k}` with `⟨Q_i, Q_j⟩ = δ_ij ε_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis<T> {
    vectors: Vec<GElement<T>>,
    signs: Vec<i32>,
}

impl<T: Field> OrthonormalBasis<T> {
    /// Checks the Gram matrix exactly and reads off the signs.
    pub fn new(vectors: Vec<GElement<T>>) -> Result<Self> {
        let dim_v = vectors.first().map_or(0, GElement::dim_v);
        if vectors.len() != 2 * dim_v {
            return Err(Error::DimensionMismatch { expected: 2 * dim_v, got: vectors.len() });
        }
        let mut signs = Vec::with_capacity(vectors.len());
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate().skip(i) {
                let p = a.pairing(b)?;
                if i != j {
                    if !p.is_negligible() {
                        return Err(Error::NotOrthonormal(format!("⟨Q{}, Q{}⟩ ≠ 0", i + 1, j + 1)));
                    }
                } else if (p.clone() - T::one()).is_negligible() {
                    signs.push(1);
                } else if (p + T::one()).is_negligible() {
                    signs.push(-1);
                } else {
                    return Err(Error::NotOrthonormal(format!("‖Q{}‖² ≠ ±1", i + 1)));
                }
            }
        }
        if signs.iter().filter(|&&s| s > 0).count() != dim_v {
            return Err(Error::NotOrthonormal("signature is not neutral".into()));
        }
        Ok(OrthonormalBasis { vectors, signs })
    }

    /// `{e_i + α_i} ∪ {e_i - α_i}`; signs `(+…+, -…-)`.
    pub fn reference(dim_v: usize) -> Self {
        let mut vectors = Vec::with_capacity(2 * dim_v);
        for sign in [1, -1] {
            for i in 0..dim_v {
                let a = GElement::alpha(dim_v, i).scale(&T::from_i64(sign));
                vectors.push(GElement::e(dim_v, i).add(&a));
            }
        }
        let signs = (0..2 * dim_v).map(|k| if k < dim_v { 1 } else { -1 }).collect();
        OrthonormalBasis { vectors, signs }
    }

    pub fn vectors(&self) -> &[GElement<T>] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &GElement<T> {
        &self.vectors[k]
    }

    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn epsilon(&self, k: usize) -> T {
        T::from_i64(self.signs[k] as i64)
    }

    pub fn dim_v(&self) -> usize {
        self.vectors.len() / 2
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Columns are the basis vectors in reference coordinates.
    pub fn matrix(&self) -> Matrix<T> {
        let cols: Vec<Vec<T>> = self.vectors.iter().map(GElement::coords).collect();
        Matrix::from_columns(&cols).expect("equal lengths")
    }

    /// Image under a pairing isometry; signs are carried along unchecked.
    pub fn transform(&self, g: &Matrix<T>) -> Self {
        OrthonormalBasis {
            vectors: self.vectors.iter().map(|v| GElement::apply(g, v)).collect(),
            signs: self.signs.clone(),
        }
    }

    /// Replaces `Q_k` by `-Q_k`.
    pub fn flip(&mut self, k: usize) {
        self.vectors[k] = self.vectors[k].scale(&-T::one());
    }

    /// Rotation in the plane of `Q_i, Q_j` with rational parameter `t`:
    /// circular when the signs agree, hyperbolic otherwise.
    pub fn rotate(&mut self, i: usize, j: usize, t: &T) -> Result<()> {
        let t2 = t.clone() * t.clone();
        let two_t = t.clone() + t.clone();
        let (qi, qj) = (self.vectors[i].clone(), self.vectors[j].clone());
        if self.signs[i] == self.signs[j] {
            let d = T::one() + t2.clone();
            let c = (T::one() - t2) / d.clone();
            let s = two_t / d;
            self.vectors[i] = qi.scale(&c).add(&qj.scale(&s));
            self.vectors[j] = qj.scale(&c).sub(&qi.scale(&s));
        } else {
            let d = T::one() - t2.clone();
            if !d.is_invertible() {
                return Err(Error::Degenerate("hyperbolic parameter t = ±1".into()));
            }
            let ch = (T::one() + t2) / d.clone();
            let sh = two_t / d;
            self.vectors[i] = qi.scale(&ch).add(&qj.scale(&sh));
            self.vectors[j] = qj.scale(&ch).add(&qi.scale(&sh));
        }
        Ok(())
    }

    /// The structure with `J Q_{2l-1} = Q_{2l}`, `J Q_{2l} = -Q_{2l-1}`.
    /// Requires `ε_{2l-1} = ε_{2l}`.
    pub fn adapted_structure(&self) -> Result<GcStructure<T>> {
        for l in 0..self.len() / 2 {
            if self.signs[2 * l] != self.signs[2 * l + 1] {
                return Err(Error::InconsistentBasis(format!("ε{} ≠ ε{}", 2 * l + 1, 2 * l + 2)));
            }
        }
        let q = self.matrix();
        let n = self.len();
        let mut in_q = Matrix::zeros(n, n);
        for l in 0..n / 2 {
            in_q[(2 * l + 1, 2 * l)] = T::one();
            in_q[(2 * l, 2 * l + 1)] = -T::one();
        }
        let inv = q.inverse().ok_or_else(|| Error::Degenerate("basis does not span".into()))?;
        GcStructure::new(&(&q * &in_q) * &inv)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> OrthonormalBasis<U> {
        OrthonormalBasis {
            vectors: self.vectors.iter().map(|v| v.map(&f)).collect(),
            signs: self.signs.clone(),
        }
    }

    /// Reorders the vectors.
    pub fn permuted(&self, order: &[usize]) -> Self {
        OrthonormalBasis {
            vectors: order.iter().map(|&k| self.vectors[k].clone()).collect(),
            signs: order.iter().map(|&k| self.signs[k]).collect(),
        }
    }
}

impl<T: Scalar> OrthonormalBasis<T> {
    pub fn orientation_sign(&self) -> Result<i32> {
        frame_orientation(&self.matrix())
    }
}

/// How random bases are generated.
#[derive(Clone, Copy, Debug)]
pub struct WordSpec {
    pub length: usize,
    /// Also flip single vectors, leaving `SO` for `O`.
    pub reflections: bool,
}

fn random_parameter<R: Rng>(rng: &mut R, hyperbolic: bool) -> Rational {
    loop {
        let den = rng.gen_range(2..=5i64);
        let num = rng.gen_range(-(den - 1)..=(den - 1));
        if num == 0 {
            continue;
        }
        // |t| < 1 always holds, which the hyperbolic case needs.
        let _ = hyperbolic;
        return Rational::from_ratio(num, den);
    }
}

/// A word of elementary rotations (and optionally reflections) applied to
/// `start`. Orthonormality stays exact since every parameter is rational.
pub fn random_word<R: Rng>(
    start: &OrthonormalBasis<Rational>,
    rng: &mut R,
    spec: WordSpec,
) -> OrthonormalBasis<Rational> {
    let mut b = start.clone();
    let n = b.len();
    for _ in 0..spec.length {
        if spec.reflections && rng.gen_bool(0.25) {
            let k = rng.gen_range(0..n);
            b.flip(k);
            continue;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let hyperbolic = b.signs[i] != b.signs[j];
        let t = random_parameter(rng, hyperbolic);
        b.rotate(i, j, &t).expect("|t| < 1");
    }
    b
}

/// Random orthonormal basis of `V ⊕ V*` for `dim V = dim_v`.
pub fn random_orthonormal_basis<R: Rng>(dim_v: usize, rng: &mut R, spec: WordSpec) -> OrthonormalBasis<Rational> {
    random_word(&OrthonormalBasis::reference(dim_v), rng, spec)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Report<T> {
    pub det_p: T,
    pub ok: bool,
}

/// `P = [η_l(e_k)]` over the first `2n` vectors `Q_k = e_k + η_k`;
/// `ok` iff `(det P)² ≥ 1`.
pub fn lemma1_projection_check<T: Scalar>(basis: &OrthonormalBasis<T>) -> Result<Lemma1Report<T>> {
    let m = basis.dim_v();
    if basis.signs[..m].iter().any(|&s| s != 1) {
        return Err(Error::InconsistentBasis("the first 2n vectors must have ε = +1".into()));
    }
    let p = Matrix::from_fn(m, m, |l, k| {
        let (eta, e) = (&basis.vectors[l].cov, &basis.vectors[k].vec);
        eta.iter().zip(e).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    });
    let det_p = p.det();
    let sq = det_p.clone() * det_p.clone();
    let ok = sq >= T::one() || (sq - T::one()).is_negligible();
    Ok(Lemma1Report { det_p, ok })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma2Report<T> {
    /// Rows express `e3, e4` through `e1, e2`.
    pub a: Matrix<T>,
    pub det_a: T,
    pub orthogonal: bool,
    /// Determinant of the basis in reference coordinates.
    pub transition_det: T,
    pub orientation: i32,
}

impl<T: Scalar> Lemma2Report<T> {
    /// `transition_det = 4 det A`.
    pub fn consistent(&self) -> bool {
        (self.transition_det.clone() - T::from_i64(4) * self.det_a.clone()).is_negligible()
    }
}

/// `dim V = 2`, signs `(+, +, -, -)`.
pub fn lemma2_orientation<T: Scalar>(basis: &OrthonormalBasis<T>) -> Result<Lemma2Report<T>> {
    if basis.dim_v() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: basis.dim_v() });
    }
    if basis.signs != [1, 1, -1, -1] {
        return Err(Error::InconsistentBasis("signs must be (+, +, -, -)".into()));
    }
    let v = |k: usize| basis.vectors[k].vec.clone();
    let e = Matrix::from_columns(&[v(0), v(1)])?;
    let rhs = Matrix::from_columns(&[v(2), v(3)])?;
    // e · Aᵀ = [e3 e4]
    let at = e
        .solve(&rhs)
        .ok_or_else(|| Error::InconsistentBasis("vector parts of Q1, Q2 are dependent".into()))?;
    let a = at.transpose();
    let det_a = a.det();
    let orthogonal = (&a * &a.transpose()).is_identity();
    let transition_det = basis.matrix().det();
    let orientation = frame_orientation(&basis.matrix())?;
    Ok(Lemma2Report { a, det_a, orthogonal, transition_det, orientation })
}

/// The endomorphism `S_ij`, `S_ij Q_k = ε_k(δ_ik Q_j - δ_kj Q_i)` (0-based).
pub fn skew_generator<T: Field>(basis: &OrthonormalBasis<T>, i: usize, j: usize) -> Matrix<T> {
    SkewFrame::new(basis).expect("orthonormal basis spans").s(i, j)
}

/// All `S_ij` for a basis, together with the coordinates `y_ij`.
#[derive(Clone, Debug)]
pub struct SkewFrame<T> {
    basis: OrthonormalBasis<T>,
    q: Matrix<T>,
    q_inv: Matrix<T>,
}

impl<T: Field> SkewFrame<T> {
    pub fn new(basis: &OrthonormalBasis<T>) -> Result<Self> {
        let q = basis.matrix();
        let q_inv = q.inverse().ok_or_else(|| Error::Degenerate("basis does not span".into()))?;
        Ok(SkewFrame { basis: basis.clone(), q, q_inv })
    }

    pub fn basis(&self) -> &OrthonormalBasis<T> {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn s(&self, i: usize, j: usize) -> Matrix<T> {
        let n = self.len();
        let mut in_q = Matrix::zeros(n, n);
        if i != j {
            in_q[(j, i)] = self.basis.epsilon(i);
            in_q[(i, j)] = -self.basis.epsilon(j);
        }
        &(&self.q * &in_q) * &self.q_inv
    }

    /// Pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    /// `y_ij(a) = ε_i ε_j ⟨a, S_ij⟩` for `i < j`.
    pub fn y_coords(&self, a: &Matrix<T>) -> Vec<T> {
        // In the Q-frame, a Q_i = ε_i Σ_j y_ij Q_j, so y_ij = ε_i [Q⁻¹ a Q]_ji.
        let in_q = &(&self.q_inv * a) * &self.q;
        self.index_pairs()
            .into_iter()
            .map(|(i, j)| self.basis.epsilon(i) * in_q[(j, i)].clone())
            .collect()
    }

    /// `Σ_{i<j} y_ij S_ij`.
    pub fn from_y_coords(&self, y: &[T]) -> Matrix<T> {
        let n = self.len();
        let mut in_q = Matrix::zeros(n, n);
        for ((i, j), v) in self.index_pairs().into_iter().zip(y) {
            in_q[(j, i)] = self.basis.epsilon(i) * v.clone();
            in_q[(i, j)] = -(self.basis.epsilon(j) * v.clone());
        }
        &(&self.q * &in_q) * &self.q_inv
    }

    /// `y_ij` via the fibre metric, without the frame shortcut.
    pub fn y_coord_by_pairing(&self, a: &Matrix<T>, i: usize, j: usize) -> T {
        self.basis.epsilon(i) * self.basis.epsilon(j) * fibre_pairing(a, &self.s(i, j))
    }
}

/// Searches an orthonormal basis `{Q_1, J Q_1, Q_3, J Q_3, …}` with exact
/// entries, positive pairs first. Candidates are the reference vectors
/// `e_i ± α_i`, projected onto the complement of what has been found; a
/// candidate is kept when its norm is `±` a rational square.
pub fn adapted_orthonormal_basis<T: Scalar>(j: &GcStructure<T>) -> Result<OrthonormalBasis<T>> {
    let dim_v = j.dim_v();
    let reference = OrthonormalBasis::<T>::reference(dim_v);
    let mut found: Vec<(GElement<T>, i32)> = Vec::new();
    for c in reference.vectors() {
        if found.len() == 2 * dim_v {
            break;
        }
        let mut p = c.clone();
        for (q, s) in &found {
            let coeff = T::from_i64(*s as i64) * c.pairing(q)?;
            p = p.sub(&q.scale(&coeff));
        }
        let norm = p.pairing(&p)?;
        let sign = norm.sign();
        if sign == 0 {
            continue;
        }
        let Some(root) = norm.abs_val().exact_sqrt() else {
            continue;
        };
        let q1 = p.scale(&(T::one() / root));
        let q2 = GElement::apply(j.matrix(), &q1);
        found.push((q1, sign));
        found.push((q2, sign));
    }
    if found.len() != 2 * dim_v {
        return Err(Error::Degenerate("no exact adapted basis among the candidates".into()));
    }
    let pairs: Vec<_> = found.chunks(2).map(|c| c.to_vec()).collect();
    let mut ordered: Vec<GElement<T>> = Vec::new();
    for want in [1, -1] {
        for pair in &pairs {
            if pair[0].1 == want {
                ordered.extend(pair.iter().map(|(v, _)| v.clone()));
            }
        }
    }
    OrthonormalBasis::new(ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::structure::{from_complex, from_symplectic, orientation_sign};
    use crate::scalar::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_basis_is_orthonormal_and_oriented() {
        for d in [2, 4] {
            let b = OrthonormalBasis::<Rational>::reference(d);
            let checked = OrthonormalBasis::new(b.vectors().to_vec()).unwrap();
            assert_eq!(checked.signs(), b.signs());
            assert_eq!(b.orientation_sign().unwrap(), 1);
        }
    }

    #[test]
    fn repeated_vector_is_rejected() {
        let b = OrthonormalBasis::<Rational>::reference(2);
        let mut v = b.vectors().to_vec();
        v[1] = v[0].clone();
        assert!(matches!(OrthonormalBasis::new(v), Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn lemma1_reference_has_identity_projection() {
        let b = OrthonormalBasis::<Rational>::reference(2);
        let r = lemma1_projection_check(&b).unwrap();
        assert_eq!(r.det_p, q(1, 1));
        assert!(r.ok);
    }

    #[test]
    fn lemma2_identity_and_reflection() {
        let b = OrthonormalBasis::<Rational>::reference(2);
        let r = lemma2_orientation(&b).unwrap();
        assert!(r.a.is_identity());
        assert_eq!(r.transition_det, q(4, 1));
        assert_eq!(r.orientation, 1);

        let mut f = b.clone();
        f.flip(3);
        let r = lemma2_orientation(&f).unwrap();
        assert_eq!(r.a, Matrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(-1, 1)]]).unwrap());
        assert_eq!(r.transition_det, q(-4, 1));
        assert_eq!(r.orientation, -1);
    }

    #[test]
    fn lemma2_pythagorean_rotation() {
        // t = 1/2 gives (c, s) = (3/5, 4/5) in the plane of Q3, Q4.
        let mut b = OrthonormalBasis::<Rational>::reference(2);
        b.rotate(2, 3, &q(1, 2)).unwrap();
        let r = lemma2_orientation(&b).unwrap();
        assert_eq!(r.a[(0, 0)], q(3, 5));
        assert_eq!(r.a[(0, 1)], q(4, 5));
        assert!(r.orthogonal);
        assert_eq!(r.det_a, q(1, 1));
        assert!(r.consistent());
    }

    #[test]
    fn hyperbolic_rotation_keeps_orthonormality() {
        let mut b = OrthonormalBasis::<Rational>::reference(2);
        b.rotate(0, 2, &q(1, 3)).unwrap();
        b.rotate(1, 3, &q(-2, 5)).unwrap();
        let again = OrthonormalBasis::new(b.vectors().to_vec()).unwrap();
        assert_eq!(again.signs(), &[1, 1, -1, -1]);
    }

    #[test]
    fn random_words_stay_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let b = random_orthonormal_basis(2, &mut rng, WordSpec { length: 6, reflections: true });
            OrthonormalBasis::new(b.vectors().to_vec()).unwrap();
        }
    }

    #[test]
    fn skew_generator_norms() {
        let b = OrthonormalBasis::<Rational>::reference(2);
        let f = SkewFrame::new(&b).unwrap();
        for (i, j) in f.index_pairs() {
            let s = f.s(i, j);
            assert_eq!(fibre_pairing(&s, &s), b.epsilon(i) * b.epsilon(j));
            assert_eq!(f.s(j, i), -&s);
        }
        assert_eq!(fibre_pairing(&f.s(0, 1), &f.s(0, 2)), q(0, 1));
    }

    #[test]
    fn y_coordinates_round_trip() {
        let mut b = OrthonormalBasis::<Rational>::reference(2);
        b.rotate(0, 3, &q(1, 4)).unwrap();
        let f = SkewFrame::new(&b).unwrap();
        let y: Vec<Rational> = (0..6).map(|k| q(k as i64 - 2, 3)).collect();
        let a = f.from_y_coords(&y);
        assert_eq!(f.y_coords(&a), y);
        for ((i, j), v) in f.index_pairs().into_iter().zip(&y) {
            assert_eq!(&f.y_coord_by_pairing(&a, i, j), v);
        }
    }

    #[test]
    fn adapted_structure_of_reference_is_example1() {
        let b = OrthonormalBasis::<Rational>::reference(2);
        let j = b.adapted_structure().unwrap();
        let k = Matrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        assert_eq!(j, from_complex(&k).unwrap());
    }

    #[test]
    fn adapted_basis_for_example2_seed() {
        let mut w = Matrix::<Rational>::zeros(4, 4);
        w[(0, 1)] = q(1, 1);
        w[(1, 0)] = q(-1, 1);
        w[(2, 3)] = q(1, 1);
        w[(3, 2)] = q(-1, 1);
        let s = from_symplectic(&w).unwrap();
        let b = adapted_orthonormal_basis(&s).unwrap();
        assert_eq!(b.signs(), &[1, 1, 1, 1, -1, -1, -1, -1]);
        assert_eq!(b.adapted_structure().unwrap(), s);
        assert_eq!(orientation_sign(&s).unwrap(), b.orientation_sign().unwrap());
    }
}
