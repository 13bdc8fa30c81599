//! Property tests of the algebraic invariants, over seeded exact inputs.

use gctwistor::courant::{courant_bracket, lie_bracket};
use gctwistor::harness::{run_scenario, Scenario};
use gctwistor::linalg::element::is_pairing_isometry;
use gctwistor::linalg::{
    b_transform, beta_transform, lemma2_orientation, neutral_pairing, orientation_sign, random_orthonormal_basis,
    Example5, GElement, WordSpec,
};
use gctwistor::poly::Poly;
use gctwistor::twistor::{
    nijenhuis_closed_form, probe_tangents, sample_points, tangent_pairing, twistor_j, Connection,
};
use gctwistor::{q, Dual, Matrix, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn dual(re: Rational, eps: Vec<Rational>) -> Dual<Rational> {
    Dual { re, eps }
}

/// A 1-jet of a section of `TM ⊕ T*M` over a chart of dimension `m`.
fn section_jet(m: usize) -> impl Strategy<Value = Vec<Dual<Rational>>> {
    prop::collection::vec((small(), prop::collection::vec(small(), m)), 2 * m)
        .prop_map(|v| v.into_iter().map(|(re, eps)| dual(re, eps)).collect())
}

fn skew(m: usize, entries: &[Rational]) -> Matrix<Rational> {
    let mut b = Matrix::zeros(m, m);
    let mut k = 0;
    for i in 0..m {
        for j in i + 1..m {
            b[(i, j)] = entries[k].clone();
            b[(j, i)] = -entries[k].clone();
            k += 1;
        }
    }
    b
}

fn word() -> WordSpec {
    WordSpec { length: 4, reflections: false }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn adapted_structures_are_valid(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_orthonormal_basis(2 * n, &mut rng, word());
        let j = b.adapted_structure().unwrap();
        let jm = j.matrix();
        let m = 4 * n;
        prop_assert_eq!(&(jm * jm), &(-&Matrix::identity(m)));
        for a in 0..m {
            for c in 0..m {
                let (x, y) = (GElement::coordinate(2 * n, a), GElement::coordinate(2 * n, c));
                let lhs = neutral_pairing(&GElement::apply(jm, &x), &GElement::apply(jm, &y)).unwrap();
                prop_assert_eq!(lhs, neutral_pairing(&x, &y).unwrap());
            }
        }
        prop_assert!(matches!(orientation_sign(&j).unwrap(), 1 | -1));
    }

    #[test]
    fn b_and_beta_transforms_preserve_pairing_and_orientation(
        seed in any::<u64>(),
        entries in prop::collection::vec(small(), 6),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j = random_orthonormal_basis(4, &mut rng, word()).adapted_structure().unwrap();
        let b = skew(4, &entries);
        let o = orientation_sign(&j).unwrap();
        for t in [b_transform(&j, &b).unwrap(), beta_transform(&j, &b).unwrap()] {
            prop_assert_eq!(orientation_sign(&t).unwrap(), o);
        }
        prop_assert!(is_pairing_isometry(&gctwistor::linalg::structure::b_field_map(&b).unwrap()));
        prop_assert!(is_pairing_isometry(&gctwistor::linalg::structure::beta_field_map(&b).unwrap()));
    }

    #[test]
    fn lemma2_transition_determinant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_orthonormal_basis(2, &mut rng, WordSpec { length: 6, reflections: true });
        let r = lemma2_orientation(&b).unwrap();
        prop_assert!(r.orthogonal);
        prop_assert_eq!(r.transition_det.clone(), q(4, 1) * r.det_a.clone());
    }

    #[test]
    fn example5_table_and_round_trip(
        seed in any::<u64>(),
        x in prop::array::uniform3(small()),
        y in prop::array::uniform3(small()),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Example5::new(&random_orthonormal_basis(2, &mut rng, word())).unwrap();
        let rels = g.relations();
        prop_assert_eq!(rels.len(), 21);
        prop_assert!(rels.iter().all(|r| r.holds));
        let d = g.decompose(&g.combine(&x, &y)).unwrap();
        prop_assert_eq!(d.x, x);
        prop_assert_eq!(d.y, y);
    }

    #[test]
    fn courant_bracket_is_skew_and_extends_lie(a in section_jet(3), b in section_jet(3)) {
        let ab = courant_bracket(&a, &b).unwrap();
        let ba = courant_bracket(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
        let vec_only = |s: &[Dual<Rational>]| -> Vec<Dual<Rational>> {
            s.iter().enumerate().map(|(i, d)| if i < 3 { d.clone() } else { dual(q(0, 1), vec![q(0, 1); 3]) }).collect()
        };
        let (va, vb) = (vec_only(&a), vec_only(&b));
        let c = courant_bracket(&va, &vb).unwrap();
        prop_assert_eq!(c.pi1(), lie_bracket(&va[..3], &vb[..3]).unwrap());
        prop_assert!(c.pi2().iter().all(|v| *v == q(0, 1)));
    }

    #[test]
    fn curvature_is_antisymmetric(
        coeffs in prop::collection::vec((small(), small()), 6),
        p in prop::collection::vec(small(), 2),
        x in prop::collection::vec(small(), 2),
        y in prop::collection::vec(small(), 2),
    ) {
        // Γ^k_{ij} = c + d·x_k, symmetric in (i, j).
        let pairs = [(0, 0), (0, 1), (1, 1)];
        let mut entries = Vec::new();
        let mut it = coeffs.into_iter();
        for k in 0..2 {
            for &(i, j) in &pairs {
                let (c, d) = it.next().unwrap();
                let g = &Poly::constant(2, c) + &Poly::var(2, k).scale(&d);
                entries.push(((k, i, j), g.clone()));
                if i != j {
                    entries.push(((k, j, i), g));
                }
            }
        }
        let curv = Connection::from_entries(1, entries).unwrap().curvature_at(&p).unwrap();
        let xy = curv.r(&x, &y).endo_tm;
        let yx = curv.r(&y, &x).endo_tm;
        prop_assert!((&xy + &yx).is_zero());
        prop_assert!(Connection::<Rational>::flat(1).curvature_at(&p).unwrap().is_flat());
    }

    #[test]
    fn twistor_structures_square_to_minus_one_and_preserve_pairing(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let at = &sample_points(n, 1, &mut rng, 3).unwrap()[0];
        let probes = probe_tangents(at);
        for alpha in [1u8, 2] {
            let images: Vec<_> = probes.iter().map(|t| twistor_j(alpha, t, at).unwrap()).collect();
            for (t, jt) in probes.iter().zip(&images) {
                prop_assert_eq!(twistor_j(alpha, jt, at).unwrap(), t.scale(&q(-1, 1)));
            }
            for (a, ja) in probes.iter().zip(&images) {
                for (b, jb) in probes.iter().zip(&images) {
                    prop_assert_eq!(tangent_pairing(ja, jb).unwrap(), tangent_pairing(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn closed_form_is_antisymmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let at = &sample_points(1, 1, &mut rng, 3).unwrap()[0];
        let curv = Connection::<Rational>::example_curved(1).curvature_at(&at.p).unwrap();
        let probes = probe_tangents(at);
        for alpha in [1u8, 2] {
            for e in &probes {
                for f in &probes {
                    let ef = nijenhuis_closed_form(alpha, &curv, at, e, f).unwrap();
                    let fe = nijenhuis_closed_form(alpha, &curv, at, f, e).unwrap();
                    prop_assert!(ef.add(&fe).is_zero());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let mut sc = Scenario::preset("linalg-all").unwrap();
        sc.seed = seed;
        sc.samples.base_points = 8;
        let a = run_scenario(&sc).unwrap().to_json().unwrap();
        let b = run_scenario(&sc).unwrap().to_json().unwrap();
        prop_assert_eq!(a, b);
    }
}
