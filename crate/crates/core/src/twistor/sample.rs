//! Seeded exact samples of twistor points.
//!
//! `n = 1`: adapted bases are rotation words applied to the reference
//! basis; negating `Q1, Q3` moves to the other sheet (`J ↦ −J`).
//! `n ≥ 2`: Example-1 and Example-2 seeds with their adapted bases, moved by
//! words of B-field, β-field and `GL(V)` maps, which carry the adapted basis
//! along.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::basis::{adapted_orthonormal_basis, random_word, OrthonormalBasis, WordSpec};
use crate::linalg::structure::{b_field_map, beta_field_map, from_symplectic, gl_map};
use crate::matrix::Matrix;
use crate::scalar::{Field, Rational};

use super::point::TwistorPoint;

/// `num/den` with `|num| ≤ max_num`, `1 ≤ den ≤ max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-max_num..=max_num);
    Rational::from_ratio(num, den)
}

pub fn random_base_point<R: Rng>(m: usize, rng: &mut R) -> Vec<Rational> {
    (0..m).map(|_| random_rational(rng, 5, 4)).collect()
}

/// `count` points over random base points; odd-indexed samples lie on the
/// second sheet.
pub fn sample_n1_points<R: Rng>(count: usize, rng: &mut R, word_length: usize) -> Result<Vec<TwistorPoint<Rational>>> {
    (0..count)
        .map(|i| {
            let p = random_base_point(2, rng);
            let mut b = random_word(&OrthonormalBasis::reference(2), rng, WordSpec { length: word_length, reflections: false });
            if i % 2 == 1 {
                b.flip(0);
                b.flip(2);
            }
            TwistorPoint::from_basis(p, b)
        })
        .collect()
}

/// Sheet of an `n = 1` point: sign of `x1` in `J = Σ x_r I_r`.
pub fn sheet_of(at: &TwistorPoint<Rational>) -> Result<i32> {
    let gens = crate::linalg::example5::Example5::new(&OrthonormalBasis::reference(2))?;
    let d = gens.decompose(at.jm())?;
    Ok(if d.x[0] > Rational::from_i64(0) { 1 } else { -1 })
}

fn standard_symplectic(dim_v: usize, last_sign: i64) -> Matrix<Rational> {
    let mut w = Matrix::zeros(dim_v, dim_v);
    for k in 0..dim_v / 2 {
        let s = if k + 1 == dim_v / 2 { last_sign } else { 1 };
        w[(2 * k, 2 * k + 1)] = Rational::from_i64(s);
        w[(2 * k + 1, 2 * k)] = Rational::from_i64(-s);
    }
    w
}

/// The Example-1 seed (reference basis, `J = diag(K, −Kᵀ)`) and an
/// oriented Example-2 seed with exact adapted bases.
pub fn fibre_seeds(n: usize) -> Result<Vec<OrthonormalBasis<Rational>>> {
    let dim_v = 2 * n;
    let mut seeds = vec![OrthonormalBasis::reference(dim_v)];
    for last in [1, -1] {
        let s = from_symplectic(&standard_symplectic(dim_v, last))?;
        if crate::linalg::structure::orientation_sign(&s)? == 1 {
            seeds.push(adapted_orthonormal_basis(&s)?);
            break;
        }
    }
    if seeds.len() != 2 {
        return Err(Error::Degenerate("no oriented Example-2 seed".into()));
    }
    Ok(seeds)
}

fn small_entry<R: Rng>(rng: &mut R) -> Rational {
    Rational::from_ratio(rng.gen_range(-2..=2i64), rng.gen_range(1..=3i64))
}

/// A random B-field, β-field or elementary `GL(V)` map.
pub fn random_isometry<R: Rng>(dim_v: usize, rng: &mut R) -> Result<Matrix<Rational>> {
    match rng.gen_range(0..3) {
        0 | 1 => {
            let mut b = Matrix::zeros(dim_v, dim_v);
            for i in 0..dim_v {
                for j in i + 1..dim_v {
                    let e = small_entry(rng);
                    b[(i, j)] = e.clone();
                    b[(j, i)] = -e;
                }
            }
            if rng.gen_bool(0.5) {
                b_field_map(&b)
            } else {
                beta_field_map(&b)
            }
        }
        _ => {
            let mut g = Matrix::identity(dim_v);
            let i = rng.gen_range(0..dim_v);
            let mut j = rng.gen_range(0..dim_v - 1);
            if j >= i {
                j += 1;
            }
            g[(i, j)] = small_entry(rng);
            let d = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            g[(j, j)] = Rational::from_i64(d);
            gl_map(&g)
        }
    }
}

/// Points for `n ≥ 2`, alternating between the two seeds.
pub fn sample_fibre_points<R: Rng>(
    n: usize,
    count: usize,
    rng: &mut R,
    word_length: usize,
) -> Result<Vec<TwistorPoint<Rational>>> {
    let seeds = fibre_seeds(n)?;
    (0..count)
        .map(|i| {
            let p = random_base_point(2 * n, rng);
            let mut b = seeds[i % seeds.len()].clone();
            for _ in 0..word_length {
                b = b.transform(&random_isometry(2 * n, rng)?);
            }
            TwistorPoint::from_basis(p, b)
        })
        .collect()
}

/// Either sampler, by `n`.
pub fn sample_points<R: Rng>(n: usize, count: usize, rng: &mut R, word_length: usize) -> Result<Vec<TwistorPoint<Rational>>> {
    if n == 1 {
        sample_n1_points(count, rng, word_length)
    } else {
        sample_fibre_points(n, count, rng, word_length)
    }
}
