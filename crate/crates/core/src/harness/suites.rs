//! The check suites. Each check evaluates exact quantities over seeded
//! samples and records the largest absolute value seen, how many were
//! nonzero, and the first few nonzero ones as witnesses.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::courant::{b_automorphism_defect, default_probes, integrability_scan, GacField, JetSection, TwoFormField};
use crate::error::{Error, Result};
use crate::linalg::basis::{lemma1_projection_check, lemma2_orientation, random_orthonormal_basis, SkewFrame, WordSpec};
use crate::linalg::element::{is_pairing_isometry, GElement};
use crate::linalg::example5::{Classification, Example5};
use crate::linalg::structure::{
    b_field_map, beta_field_map, direct_sum, from_complex, from_symplectic, orientation_sign, GcStructure,
};
use crate::linalg::OrthonormalBasis;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{Field, Rational, Scalar};
use crate::twistor::oracle::EndoField;
use crate::twistor::sample::{random_base_point, random_rational, sample_points};
use crate::twistor::{
    ahs_residual, chart_identities, eq32_check, i_alpha_nijenhuis_h, kahler_mixed_direct, mu_commutator_check,
    mu_forced_zero_check, nijenhuis_closed_form_pairs, oracle_direct_nijenhuis_n1, oracle_probes, prop1_mixed,
    probe_tangents, proof_family, proof_frames, ClosedFormVariant, Connection, TwistorPoint, TwistorTangent, VectorField,
};

use super::report::{CheckResult, Report, Status, Witness, MAX_WITNESSES};
use super::scenario::{Mode, ProbeSpec, Scenario, Suite};

/// Running maximum, nonzero count and witnesses over evaluated values.
#[derive(Clone, Debug)]
struct Tally<T> {
    samples: usize,
    evaluations: usize,
    nonzero: usize,
    max: T,
    witnesses: Vec<Witness>,
}

impl<T: Scalar> Tally<T> {
    fn new() -> Self {
        Tally { samples: 0, evaluations: 0, nonzero: 0, max: T::zero(), witnesses: Vec::new() }
    }

    /// One evaluation; it counts as nonzero when any entry is.
    fn record(&mut self, sample: Option<usize>, detail: impl FnOnce() -> String, values: &[T]) {
        self.evaluations += 1;
        let mut nz = false;
        for v in values {
            let a = v.abs_val();
            if a > self.max {
                self.max = a;
            }
            nz |= !v.is_negligible();
        }
        if nz {
            self.nonzero += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness { sample, detail: detail(), values: values.iter().map(Scalar::canonical).collect() });
            }
        }
    }

    /// A failed evaluation, kept as a witness.
    fn error(&mut self, sample: Option<usize>, e: &Error) {
        self.evaluations += 1;
        self.nonzero += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { sample, detail: format!("error: {e}"), values: vec![] });
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.samples += o.samples;
        self.evaluations += o.evaluations;
        self.nonzero += o.nonzero;
        if o.max > self.max {
            self.max = o.max;
        }
        for w in o.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self
    }

    fn all_zero(&self) -> bool {
        self.nonzero == 0
    }
}

/// Per-sample tallies computed in parallel and merged in sample order.
fn over_samples<T: Scalar, S: Sync>(items: &[S], f: impl Fn(usize, &S, &mut Tally<T>) -> Result<()> + Sync) -> Tally<T> {
    items
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut t = Tally::new();
            t.samples = 1;
            if let Err(e) = f(i, s, &mut t) {
                t.error(Some(i), &e);
            }
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge)
}

fn finish<T: Scalar>(name: &str, claim: &str, status: Status, t: Tally<T>, start: Instant) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        claim: claim.to_string(),
        status,
        samples: t.samples,
        evaluations: t.evaluations,
        residual: t.max.canonical(),
        witnesses: t.witnesses,
        elapsed: start.elapsed(),
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Independent stream per check, so the selection of checks does not
/// change any one check's samples.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn selected(sc: &Scenario, defaults: &[&str], known: &[&str]) -> Result<Vec<String>> {
    let list: Vec<String> = match &sc.checks {
        Some(c) => c.clone(),
        None => defaults.iter().map(|s| s.to_string()).collect(),
    };
    for c in &list {
        if !known.contains(&c.as_str()) {
            return Err(Error::InvalidScenario(format!("unknown check `{c}` for suite {:?} (known: {})", sc.suite, known.join(", "))));
        }
    }
    Ok(list)
}

fn exact_only(sc: &Scenario) -> Result<()> {
    if sc.mode == Mode::Float {
        return Err(Error::InvalidScenario(format!("float mode is available for the theorem1 suite only, not {:?}", sc.suite)));
    }
    Ok(())
}

/// Dispatches on the scenario's suite.
pub fn run_scenario(sc: &Scenario) -> Result<Report> {
    sc.validate()?;
    match sc.suite {
        Suite::Linalg => run_linalg_suite(sc, LinalgHooks::default()),
        Suite::Courant => run_courant_suite(sc),
        Suite::Theorem1 => run_theorem1(sc),
        Suite::Oracle => run_oracle(sc),
    }
}

// ---------------------------------------------------------------- linalg

/// Test hooks for the linear-algebra suite.
#[derive(Clone, Copy, Debug, Default)]
pub struct LinalgHooks {
    /// Flip a sign inside `I3` before checking the relation table.
    pub tamper_example5: bool,
}

pub const LINALG_CHECKS: [&str; 8] = [
    "lemma1",
    "lemma2",
    "examples12-orientation",
    "example3-direct-sum",
    "example4-orthogonal",
    "example5-relations",
    "example5-index-swapped",
    "example6-hyperboloid",
];

/// Bases used by the Example 5 and 6 checks.
pub const EXAMPLE5_BASES: usize = 10;

pub fn run_linalg_suite(sc: &Scenario, hooks: LinalgHooks) -> Result<Report> {
    exact_only(sc)?;
    let checks = selected(sc, &LINALG_CHECKS, &LINALG_CHECKS)?;
    let mut report = Report::new(&sc.name, sc.suite, sc.mode, sc.seed, sc.n);
    for (stream, name) in LINALG_CHECKS.iter().enumerate() {
        if !checks.iter().any(|c| c == name) {
            continue;
        }
        let mut rng = rng_for(sc.seed, stream as u64 + 1);
        let start = Instant::now();
        let word = WordSpec { length: sc.samples.fibre_params.word_length.max(1) * 2, reflections: true };
        let c = match *name {
            "lemma1" => {
                let mut t = Tally::<Rational>::new();
                for i in 0..sc.samples.base_points {
                    t.samples += 1;
                    let dim_v = if i % 2 == 0 { 2 } else { 4 };
                    let b = random_orthonormal_basis(dim_v, &mut rng, WordSpec { reflections: false, ..word });
                    let r = lemma1_projection_check(&b)?;
                    let bad = if r.ok { Rational::from_i64(0) } else { r.det_p.clone() };
                    t.record(Some(i), || "det P with (det P)² < 1".into(), &[bad]);
                }
                let st = pass_if(t.all_zero());
                finish(name, "(det P)² ≥ 1 for the projection of Q1..Q2n to V", st, t, start)
            }
            "lemma2" => {
                let mut t = Tally::<Rational>::new();
                for i in 0..sc.samples.base_points {
                    t.samples += 1;
                    let b = random_orthonormal_basis(2, &mut rng, word);
                    let r = match lemma2_orientation(&b) {
                        Ok(r) => r,
                        Err(e) => {
                            t.error(Some(i), &e);
                            continue;
                        }
                    };
                    let diff = r.transition_det.clone() - Rational::from_i64(4) * r.det_a.clone();
                    let orient = Rational::from_i64((r.orientation - r.det_a.sign()) as i64);
                    let orth = Rational::from_i64(!r.orthogonal as i64);
                    t.record(Some(i), || "[transition det − 4 det A, orientation − sign det A, A not orthogonal]".into(), &[diff, orient, orth]);
                }
                let st = pass_if(t.all_zero());
                finish(name, "A orthogonal and transition determinant = 4·det A", st, t, start)
            }
            "examples12-orientation" => {
                let mut t = Tally::<Rational>::new();
                for n in 1..=4usize {
                    t.samples += 1;
                    let m = 2 * n;
                    let k = standard_complex(m);
                    let w = standard_symplectic(m);
                    let want2 = if n % 2 == 0 { 1 } else { -1 };
                    for r in 0..3 {
                        let g = if r == 0 { Matrix::identity(m) } else { random_invertible(m, &mut rng) };
                        let gi = g.inverse().ok_or_else(|| Error::Degenerate("g".into()))?;
                        let e1 = from_complex(&(&(&g * &k) * &gi))?;
                        let e2 = from_symplectic(&(&(&g.transpose() * &w) * &g))?;
                        let d1 = orientation_sign(&e1)? - 1;
                        let d2 = orientation_sign(&e2)? - want2;
                        t.record(Some(n), || format!("n = {n}: [Example 1 orientation − 1, Example 2 orientation − (−1)^(n+1)]"), &[
                            Rational::from_i64(d1 as i64),
                            Rational::from_i64(d2 as i64),
                        ]);
                    }
                }
                let st = pass_if(t.all_zero());
                finish(name, "Example 1 orientation +1; Example 2 orientation +1 iff n even (n = 1..4)", st, t, start)
            }
            "example3-direct-sum" => {
                let mut t = Tally::<Rational>::new();
                let pieces: Vec<GcStructure<Rational>> = [2usize, 4]
                    .iter()
                    .flat_map(|&m| [from_complex(&standard_complex(m)), from_symplectic(&standard_symplectic(m))])
                    .collect::<Result<_>>()?;
                for (a, ja) in pieces.iter().enumerate() {
                    for jb in &pieces {
                        t.samples += 1;
                        let s = direct_sum(ja, jb);
                        let d = orientation_sign(&s)? - orientation_sign(ja)? * orientation_sign(jb)?;
                        t.record(Some(a), || "orientation(J₁ ⊕ J₂) − orientation(J₁)·orientation(J₂)".into(), &[Rational::from_i64(d as i64)]);
                    }
                }
                let st = pass_if(t.all_zero());
                finish(name, "orientation of a direct sum is the product of orientations", st, t, start)
            }
            "example4-orthogonal" => {
                let mut t = Tally::<Rational>::new();
                for i in 0..EXAMPLE5_BASES {
                    t.samples += 1;
                    let m = 2 + i % 3;
                    let b = random_skew(m, &mut rng);
                    for (label, map) in [("e^B", b_field_map(&b)?), ("e^β", beta_field_map(&b)?)] {
                        let bad = Rational::from_i64(!is_pairing_isometry(&map) as i64);
                        t.record(Some(i), || format!("{label} not orthogonal"), &[bad]);
                    }
                }
                let st = pass_if(t.all_zero());
                finish(name, "e^B and e^β preserve the neutral pairing", st, t, start)
            }
            "example5-relations" | "example5-index-swapped" => {
                let literal = *name == "example5-index-swapped";
                let mut t = Tally::<Rational>::new();
                for i in 0..EXAMPLE5_BASES {
                    t.samples += 1;
                    let b = random_orthonormal_basis(2, &mut rng, WordSpec { reflections: false, ..word });
                    let mut g = Example5::new(&b)?;
                    if hooks.tamper_example5 {
                        g = g.tampered();
                    }
                    let rels = if literal { g.index_swapped_relations() } else { g.relations() };
                    for r in rels {
                        let bad = Rational::from_i64(!r.holds as i64);
                        t.record(Some(i), || format!("relation fails: {}", r.name), &[bad]);
                    }
                }
                if literal {
                    let st = if t.all_zero() { Status::Pass } else { Status::Finding };
                    finish(name, "literal reading I_rJ_s = I_sJ_r (r ≠ s); fails, the table uses I_rJ_s = J_sI_r", st, t, start)
                } else {
                    let st = pass_if(t.all_zero());
                    finish(name, "21 relations: squares, anticommutations, I_rJ_s = J_sI_r", st, t, start)
                }
            }
            "example6-hyperboloid" => {
                let mut t = Tally::<Rational>::new();
                for i in 0..EXAMPLE5_BASES {
                    t.samples += 1;
                    let b = random_orthonormal_basis(2, &mut rng, WordSpec { reflections: false, ..word });
                    let g = Example5::new(&b)?;
                    let (u, v) = loop {
                        let (u, v) = (random_rational(&mut rng, 3, 4), random_rational(&mut rng, 3, 4));
                        if u.clone() * u.clone() + v.clone() * v.clone() != Rational::from_i64(1) {
                            break (u, v);
                        }
                    };
                    let sheet = if i % 2 == 0 { 1 } else { -1 };
                    let j = g.hyperboloid_point(&u, &v, sheet)?;
                    let d = g.decompose(j.matrix())?;
                    let x = &d.x;
                    let q = x[0].clone() * x[0].clone() - x[1].clone() * x[1].clone() - x[2].clone() * x[2].clone() - Rational::from_i64(1);
                    let cls = Rational::from_i64((d.classification != Classification::CompatibleI) as i64);
                    let ys: Vec<Rational> = d.y.to_vec();
                    t.record(Some(i), || "[x1² − x2² − x3² − 1, not I-type, y1, y2, y3]".into(), &[q, cls, ys[0].clone(), ys[1].clone(), ys[2].clone()]);
                }
                let st = pass_if(t.all_zero());
                finish(name, "Σ x_r I_r on the hyperboloid is a structure of I-type", st, t, start)
            }
            _ => unreachable!(),
        };
        report.push(c);
    }
    Ok(report)
}

fn standard_complex(m: usize) -> Matrix<Rational> {
    let mut k = Matrix::zeros(m, m);
    for p in 0..m / 2 {
        k[(2 * p + 1, 2 * p)] = Rational::from_i64(1);
        k[(2 * p, 2 * p + 1)] = Rational::from_i64(-1);
    }
    k
}

fn standard_symplectic(m: usize) -> Matrix<Rational> {
    standard_complex(m).transpose()
}

fn random_skew<R: Rng>(m: usize, rng: &mut R) -> Matrix<Rational> {
    let mut b = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let e = random_rational(rng, 3, 3);
            b[(i, j)] = e.clone();
            b[(j, i)] = -e;
        }
    }
    b
}

/// A random invertible matrix with small rational entries.
fn random_invertible<R: Rng>(m: usize, rng: &mut R) -> Matrix<Rational> {
    loop {
        let g = Matrix::from_fn(m, m, |_, _| random_rational(rng, 3, 2));
        if g.inverse().is_some() {
            return g;
        }
    }
}

// --------------------------------------------------------------- courant

pub const COURANT_CHECKS: [&str; 4] = ["example7-constant", "example7-x1", "example7-nonclosed", "constant-structure-integrable"];

fn courant_probes(spec: ProbeSpec) -> Vec<JetSection<Rational>> {
    default_probes(4, spec == ProbeSpec::Full)
}

pub fn run_courant_suite(sc: &Scenario) -> Result<Report> {
    exact_only(sc)?;
    let checks = selected(sc, &COURANT_CHECKS, &COURANT_CHECKS)?;
    let mut report = Report::new(&sc.name, sc.suite, sc.mode, sc.seed, sc.n);
    let m = 4;
    let mut prng = rng_for(sc.seed, 0);
    let points: Vec<Vec<Rational>> = (0..sc.samples.base_points).map(|_| random_base_point(m, &mut prng)).collect();
    let probes = courant_probes(sc.samples.probe_spec);
    let v = |i| Poly::<Rational>::var(m, i);
    for name in COURANT_CHECKS {
        if !checks.iter().any(|c| c == name) {
            continue;
        }
        let start = Instant::now();
        let c = match name {
            "example7-constant" | "example7-x1" | "example7-nonclosed" => {
                let bf = match name {
                    "example7-constant" => {
                        let c = |i: usize, j: usize| match (i.min(j), i.max(j)) {
                            (0, 1) => Rational::from_i64(1),
                            (0, 2) => Rational::from_ratio(1, 2),
                            (2, 3) => Rational::from_ratio(-2, 3),
                            _ => Rational::from_i64(0),
                        };
                        let e = Matrix::from_fn(m, m, |i, j| {
                            let s = if i < j { c(i, j) } else { -c(i, j) };
                            Poly::constant(m, s)
                        });
                        TwoFormField::new(e)?
                    }
                    "example7-x1" => TwoFormField::elementary(m, 0, 1, v(0))?,
                    _ => TwoFormField::elementary(m, 0, 2, v(1))?,
                };
                let t = over_samples::<Rational, _>(&points, |i, p, t| {
                    for a in 0..probes.len() {
                        for b in a + 1..probes.len() {
                            let d = b_automorphism_defect(&bf, &probes[a], &probes[b], p)?;
                            t.record(Some(i), || format!("defect on ({}, {})", probes[a].label(), probes[b].label()), &d.coords());
                        }
                    }
                    Ok(())
                });
                if name == "example7-nonclosed" {
                    let st = pass_if(t.nonzero > 0);
                    finish(name, "B = x2 dx1∧dx3 (not closed): e^B is not a bracket automorphism", st, t, start)
                } else {
                    let st = pass_if(t.all_zero());
                    let claim = if name == "example7-constant" {
                        "constant B (closed): e^B preserves the Courant bracket"
                    } else {
                        "B = x1 dx1∧dx2 (closed): e^B preserves the Courant bracket"
                    };
                    finish(name, claim, st, t, start)
                }
            }
            "constant-structure-integrable" => {
                let j = from_complex(&standard_complex(m))?;
                let field = GacField::constant(j.into_matrix());
                let scan = integrability_scan(&field, &points, &probes)?;
                let mut t = Tally::<Rational>::new();
                t.samples = scan.per_point.len();
                t.evaluations = scan.per_point.iter().map(|s| s.pairs).sum();
                for w in &scan.witnesses {
                    t.nonzero += 1;
                    let vals = w.value.coords();
                    for x in &vals {
                        if x.abs_val() > t.max {
                            t.max = x.abs_val();
                        }
                    }
                    if t.witnesses.len() < MAX_WITNESSES {
                        t.witnesses.push(Witness {
                            sample: Some(w.point),
                            detail: format!("N on probes {:?}", w.probes),
                            values: vals.iter().map(Scalar::canonical).collect(),
                        });
                    }
                }
                let st = pass_if(t.all_zero());
                finish(name, "a constant Example-1 structure is integrable", st, t, start)
            }
            _ => unreachable!(),
        };
        report.push(c);
    }
    Ok(report)
}

// -------------------------------------------------------------- theorem 1

pub const THEOREM1_CHECKS: [&str; 7] = ["thm1-i", "thm1-ii", "thm1-ii-mu", "thm1-iii", "remark2", "ahs", "eq32"];

fn theorem1_defaults(n: usize) -> Vec<&'static str> {
    match n {
        1 => vec!["thm1-i", "thm1-iii", "remark2", "eq32"],
        2 => vec!["thm1-ii", "thm1-ii-mu", "thm1-iii", "remark2", "ahs", "eq32"],
        _ => vec!["thm1-ii", "thm1-iii", "remark2", "ahs", "eq32"],
    }
}

fn tangent_values<T: Scalar>(t: &TwistorTangent<T>) -> Vec<T> {
    let mut v = t.horizontal.coords();
    v.extend(t.vertical.data().iter().cloned());
    v.extend(t.vertical_coform.data().iter().cloned());
    v
}

fn convert_point<T: Scalar>(at: &TwistorPoint<Rational>) -> Result<TwistorPoint<T>> {
    let b = at.adapted.as_ref().ok_or_else(|| Error::InvariantViolation("sample without adapted basis".into()))?;
    TwistorPoint::from_basis(at.p.iter().map(T::from_rational).collect(), b.map(T::from_rational))
}

/// Two polynomial vector fields in `m` variables for the bracket identity.
fn eq32_fields<T: Scalar>(m: usize) -> (VectorField<T>, VectorField<T>) {
    let x = |i| Poly::<T>::var(m, i);
    let one = Poly::constant(m, T::one());
    let mut a: Vec<Poly<T>> = (0..m).map(|_| Poly::zero(m)).collect();
    let mut b = a.clone();
    a[0] = &one + &x(1);
    a[1] = &x(0) * &x(0);
    b[0] = &x(0) * &x(1);
    b[1] = one.clone();
    if m > 2 {
        a[2] = x(3);
        b[3] = &x(2) + &one;
    }
    (a, b)
}

fn theorem1_probes<T: Scalar>(at: &TwistorPoint<T>, spec: ProbeSpec) -> Vec<TwistorTangent<T>> {
    let mut p = probe_tangents(at);
    if spec == ProbeSpec::Coordinate {
        p.truncate(2 * at.dim());
    }
    p
}

/// `Q1`, `V = S13 − S24` and `Q4` of the adapted basis.
fn witness_data<T: Scalar>(at: &TwistorPoint<T>) -> Result<(GElement<T>, Matrix<T>, GElement<T>)> {
    let b = at.adapted.as_ref().ok_or_else(|| Error::InvariantViolation("sample without adapted basis".into()))?;
    let f = SkewFrame::new(b)?;
    Ok((b.vector(0).clone(), &f.s(0, 2) - &f.s(1, 3), b.vector(3).clone()))
}

pub fn run_theorem1(sc: &Scenario) -> Result<Report> {
    let checks = selected(sc, &theorem1_defaults(sc.n), &THEOREM1_CHECKS)?;
    for c in &checks {
        let ok = match c.as_str() {
            "thm1-i" => sc.n == 1,
            "thm1-ii" | "ahs" => sc.n >= 2,
            "thm1-ii-mu" => sc.n == 2,
            _ => true,
        };
        if !ok {
            return Err(Error::InvalidScenario(format!("check `{c}` does not apply to n = {}", sc.n)));
        }
    }
    let mut rng = rng_for(sc.seed, 0);
    let exact = sample_points(sc.n, sc.samples.base_points, &mut rng, sc.samples.fibre_params.word_length)?;
    match sc.mode {
        Mode::Exact => theorem1_with::<Rational>(sc, &checks, exact),
        Mode::Float => {
            let pts = exact.iter().map(convert_point::<f64>).collect::<Result<Vec<_>>>()?;
            theorem1_with::<f64>(sc, &checks, pts)
        }
    }
}

fn theorem1_with<T: Scalar>(sc: &Scenario, checks: &[String], points: Vec<TwistorPoint<T>>) -> Result<Report> {
    let conn: Connection<T> = sc.connection()?;
    let mut report = Report::new(&sc.name, sc.suite, sc.mode, sc.seed, sc.n);
    let spec = sc.samples.probe_spec;
    let flat = points.iter().map(|at| Ok(conn.curvature_at(&at.p)?.is_flat())).collect::<Result<Vec<bool>>>()?.iter().all(|f| *f);
    let alpha1_scan = |start: Instant| {
        let t = over_samples::<T, _>(&points, |i, at, t| {
            let curv = conn.curvature_at(&at.p)?;
            let probes = theorem1_probes(at, spec);
            let values = nijenhuis_closed_form_pairs(1, &curv, at, &probes)?;
            let pairs = (0..probes.len()).flat_map(|a| (a + 1..probes.len()).map(move |b| (a, b)));
            for ((a, b), nv) in pairs.zip(&values) {
                t.record(Some(i), || format!("N₁ on probes ({a}, {b})"), &tangent_values(nv));
            }
            Ok(())
        });
        (t, start)
    };
    for (stream, name) in THEOREM1_CHECKS.iter().enumerate() {
        if !checks.iter().any(|c| c == name) {
            continue;
        }
        let start = Instant::now();
        let c = match *name {
            "thm1-i" => {
                let (t, start) = alpha1_scan(start);
                let st = pass_if(t.all_zero());
                finish(name, "n = 1: N of 𝒥₁ vanishes on all probe pairs", st, t, start)
            }
            "thm1-ii" => {
                let (t, start) = alpha1_scan(start);
                if flat {
                    let st = pass_if(t.all_zero());
                    finish(name, "n ≥ 2, flat connection: N of 𝒥₁ vanishes on all probe pairs", st, t, start)
                } else {
                    let st = pass_if(t.nonzero > 0);
                    finish(name, "n ≥ 2, nonflat connection: N of 𝒥₁ has a nonzero value", st, t, start)
                }
            }
            "thm1-ii-mu" => {
                let frames = proof_frames::<T>();
                let family = mu_forced_zero_check(&frames)?;
                let single = mu_forced_zero_check(&frames[..1])?;
                let full_single = mu_commutator_check(4, &proof_family::<T>()?[..1])?;
                let mut t = Tally::<T>::new();
                t.samples = 1;
                t.evaluations = 3;
                let kernel = T::from_i64(family.kernel_dim as i64);
                t.max = kernel.clone();
                t.witnesses.push(Witness {
                    sample: None,
                    detail: "kernel dimensions [proof family, single frame, full commutator system for a single frame]".into(),
                    values: [family.kernel_dim, single.kernel_dim, full_single.kernel_dim].iter().map(|k| k.to_string()).collect(),
                });
                let st = pass_if(family.kernel_dim == 0);
                finish(name, "R(X,Y)J = 0 over the proof's structures forces μ = 0 (kernel dimension 0)", st, t, start)
            }
            "thm1-iii" => {
                let t = over_samples::<T, _>(&points, |i, at, t| {
                    let (q1, v, q4) = witness_data(at)?;
                    let got = prop1_mixed(2, at, &q1, &v)?;
                    t.record(Some(i), || "N₂(Q1^h, S13 − S24) − 2·Q4^h".into(), &got.sub(&q4.scale(&T::from_i64(2))).coords());
                    if q4.is_zero() {
                        return Err(Error::InvariantViolation("Q4 = 0".into()));
                    }
                    Ok(())
                });
                let st = pass_if(t.all_zero());
                finish(name, "N of 𝒥₂ on (Q1^h, S13 − S24) equals 2·Q4^h ≠ 0", st, t, start)
            }
            "remark2" => {
                let flat_curv = Connection::<T>::flat(sc.n);
                let mut curvature_free = Tally::<T>::new();
                let mut nonvanishing = true;
                let t = over_samples::<T, _>(&points, |i, at, t| {
                    let (q1, v, q4) = witness_data(at)?;
                    let curv = conn.curvature_at(&at.p)?;
                    for alpha in [1, 2] {
                        let got = i_alpha_nijenhuis_h(alpha, &curv, at, &q1, &v)?;
                        t.record(Some(i), || format!("α = {alpha}: ℋ-part of N(Q1^h, S13 − S24) − Q4^h"), &got.sub(&q4).coords());
                    }
                    Ok(())
                });
                if !t.all_zero() {
                    // Split off the curvature trace terms: the remainder must
                    // still be Q4^h, and N itself must not vanish.
                    curvature_free = over_samples::<T, _>(&points, |i, at, t| {
                        let (q1, v, q4) = witness_data(at)?;
                        let fc = flat_curv.curvature_at(&at.p)?;
                        for alpha in [1, 2] {
                            let got = i_alpha_nijenhuis_h(alpha, &fc, at, &q1, &v)?;
                            t.record(Some(i), || format!("α = {alpha}: curvature-free part − Q4^h"), &got.sub(&q4).coords());
                        }
                        Ok(())
                    });
                    nonvanishing = points.iter().all(|at| {
                        let Ok((q1, v, _)) = witness_data(at) else { return false };
                        let Ok(curv) = conn.curvature_at(&at.p) else { return false };
                        [1, 2].iter().all(|&a| i_alpha_nijenhuis_h(a, &curv, at, &q1, &v).map(|g| !g.is_zero()).unwrap_or(false))
                    });
                }
                if t.all_zero() {
                    finish(name, "ℋ-projection of N of 𝓘_α on (Q1^h, S13 − S24) equals Q4^h", Status::Pass, t, start)
                } else if curvature_free.all_zero() && nonvanishing {
                    let claim = "ℋ-projection of N of 𝓘_α on (Q1^h, S13 − S24) equals Q4^h plus nonzero curvature trace terms; N ≠ 0 at every sample";
                    finish(name, claim, Status::Finding, t, start)
                } else {
                    let t = t.merge(curvature_free);
                    finish(name, "ℋ-projection of N of 𝓘_α on (Q1^h, S13 − S24) equals Q4^h", Status::Fail, t, start)
                }
            }
            "ahs" => {
                let m = 2 * sc.n;
                let mut krng = rng_for(sc.seed, stream as u64 + 1);
                let g = random_invertible(m, &mut krng);
                let gi = g.inverse().ok_or_else(|| Error::Degenerate("g".into()))?;
                let k: Matrix<T> = (&(&g * &standard_complex(m)) * &gi).map(T::from_rational);
                let t = over_samples::<T, _>(&points, |i, at, t| {
                    let curv = conn.curvature_at(&at.p)?;
                    let e = |a: usize| (0..m).map(|r| if r == a { T::one() } else { T::zero() }).collect::<Vec<T>>();
                    for a in 0..m {
                        for b in a + 1..m {
                            let r = ahs_residual(&curv, &k, &e(a), &e(b))?;
                            t.record(Some(i), || format!("AHS residual at (∂{}, ∂{})", a + 1, b + 1), r.data());
                        }
                    }
                    Ok(())
                });
                if flat {
                    let st = pass_if(t.all_zero());
                    finish(name, "flat connection: AHS identity holds for a generic K", st, t, start)
                } else {
                    let st = if t.nonzero > 0 { Status::Pass } else { Status::Finding };
                    finish(name, "nonflat connection: AHS identity fails for a generic K", st, t, start)
                }
            }
            "eq32" => {
                let (x, y) = eq32_fields::<T>(2 * sc.n);
                let t = over_samples::<T, _>(&points, |i, at, t| {
                    let r = eq32_check(&conn, &x, &y, at)?;
                    t.record(Some(i), || "[X^h, Y^h] − [X, Y]^h − R(X, Y)J".into(), &r.residual);
                    Ok(())
                });
                let st = pass_if(t.all_zero());
                finish(name, "[X^h, Y^h] = [X, Y]^h + R(X, Y)J on the lifted chart", st, t, start)
            }
            _ => unreachable!(),
        };
        report.push(c);
    }
    Ok(report)
}

// ---------------------------------------------------------------- oracle

pub const ORACLE_CHECKS: [&str; 6] =
    ["oracle-alpha1", "oracle-alpha2", "oracle-eq32", "oracle-hv-bracket", "oracle-kahler", "oracle-sensitivity"];

pub fn run_oracle(sc: &Scenario) -> Result<Report> {
    run_oracle_with(sc, ClosedFormVariant::Exact)
}

/// `variant` replaces the closed form in the equality checks (test hook).
pub fn run_oracle_with(sc: &Scenario, variant: ClosedFormVariant) -> Result<Report> {
    exact_only(sc)?;
    if sc.n != 1 {
        return Err(Error::InvalidScenario("the oracle suite needs n = 1".into()));
    }
    let checks = selected(sc, &ORACLE_CHECKS, &ORACLE_CHECKS)?;
    let conn: Connection<Rational> = sc.connection()?;
    let mut rng = rng_for(sc.seed, 0);
    let points = sample_points(1, sc.samples.base_points, &mut rng, sc.samples.fibre_params.word_length)?;
    let probes = match sc.samples.probe_spec {
        ProbeSpec::Full => oracle_probes(),
        ProbeSpec::Coordinate => default_probes(4, false),
    };
    let mut report = Report::new(&sc.name, sc.suite, sc.mode, sc.seed, sc.n);
    let compare = |alpha: u8, variant: ClosedFormVariant| {
        let mut direct_nonzero = 0usize;
        let per: Vec<(Tally<Rational>, usize)> = points
            .par_iter()
            .enumerate()
            .map(|(i, at)| {
                let mut t = Tally::new();
                t.samples = 1;
                match oracle_direct_nijenhuis_n1(&conn, at, alpha, &probes, variant) {
                    Ok(s) => {
                        t.evaluations = s.pairs;
                        for w in &s.mismatches {
                            let d: Vec<Rational> = w.direct.iter().zip(&w.closed_form).map(|(a, b)| a.clone() - b.clone()).collect();
                            let mut one = Tally::new();
                            one.record(Some(i), || format!("sheet {}: direct − closed form on probes {:?}", s.sheet, w.probes), &d);
                            one.samples = 0;
                            one.evaluations = 0;
                            t = t.merge(one);
                        }
                        (t, s.direct_nonzero)
                    }
                    Err(e) => {
                        t.error(Some(i), &e);
                        (t, 0)
                    }
                }
            })
            .collect();
        let mut t = Tally::new();
        for (x, nz) in per {
            t = t.merge(x);
            direct_nonzero += nz;
        }
        (t, direct_nonzero)
    };
    for name in ORACLE_CHECKS {
        if !checks.iter().any(|c| c == name) {
            continue;
        }
        let start = Instant::now();
        let c = match name {
            "oracle-alpha1" => {
                let (t, nz) = compare(1, variant);
                let st = pass_if(t.all_zero() && nz == 0);
                finish(name, "α = 1: direct Courant Nijenhuis = closed form = 0 on all probe pairs", st, t, start)
            }
            "oracle-alpha2" => {
                let (t, nz) = compare(2, variant);
                let st = pass_if(t.all_zero() && nz > 0);
                finish(name, "α = 2: direct Courant Nijenhuis = closed form (nonzero) on all probe pairs", st, t, start)
            }
            "oracle-sensitivity" => {
                let (t, _) = compare(2, ClosedFormVariant::NegateHorizontalCoform);
                let st = pass_if(t.nonzero > 0);
                finish(name, "a perturbed closed form (negated hh coform) is detected", st, t, start)
            }
            "oracle-eq32" | "oracle-hv-bracket" => {
                let (x, y) = eq32_fields::<Rational>(2);
                let a = chart_endo_field();
                let bracket_only = name == "oracle-hv-bracket";
                let t = over_samples::<Rational, _>(&points, |i, at, t| {
                    let ci = chart_identities(&conn, at, &x, &y, &a)?;
                    if bracket_only {
                        t.record(Some(i), || "[X^h, ã] − (∇_X a)~ on the chart".into(), &ci.hv_bracket);
                    } else {
                        t.record(Some(i), || "bracket identity residual on the twistor chart".into(), &ci.eq32);
                        let r = eq32_check(&conn, &x, &y, at)?;
                        t.record(Some(i), || "bracket identity residual on the lifted chart".into(), &r.residual);
                    }
                    Ok(())
                });
                let st = pass_if(t.all_zero());
                if bracket_only {
                    finish(name, "[X^h, ã] = (∇_X a)~ with ã = a + JaJ", st, t, start)
                } else {
                    finish(name, "[X^h, Y^h] = [X, Y]^h + R(X, Y)J on both charts", st, t, start)
                }
            }
            "oracle-kahler" => {
                let t = over_samples::<Rational, _>(&points, |i, at, t| {
                    let (q1, v, q4) = witness_data(at)?;
                    for alpha in [1, 2] {
                        let r = kahler_mixed_direct(&conn, at, alpha, &q1, &v)?;
                        t.record(Some(i), || format!("α = {alpha}: direct ℋ-part − closed form"), &r.direct.horizontal.sub(&r.closed_form).coords());
                        t.record(Some(i), || format!("α = {alpha}: direct ℋ-part − Q4^h"), &r.direct.horizontal.sub(&q4).coords());
                    }
                    Ok(())
                });
                let st = pass_if(t.all_zero());
                finish(name, "𝓘_α: direct ℋ-projection of N(Q1^h, S13 − S24) = closed form = Q4^h", st, t, start)
            }
            _ => unreachable!(),
        };
        report.push(c);
    }
    Ok(report)
}

/// `a = x1·S13 + x2²·S24` in the reference frame.
fn chart_endo_field() -> EndoField<Rational> {
    let x = |i| Poly::<Rational>::var(2, i);
    let f = SkewFrame::new(&OrthonormalBasis::<Rational>::reference(2)).expect("reference basis");
    let s1 = f.s(0, 2).map(|c| Poly::constant(2, c.clone()));
    let s2 = f.s(1, 3).map(|c| Poly::constant(2, c.clone()));
    Matrix::from_fn(4, 4, |r, c| &(&s1[(r, c)] * &x(0)) + &(&s2[(r, c)] * &(&x(1) * &x(1))))
}
