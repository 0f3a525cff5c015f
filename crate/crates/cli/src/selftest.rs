//! Seeded property suites behind `braidrep selftest`.
//!
//! Every random choice comes from one ChaCha8 stream, so a seed fixes the
//! whole report. Reports carry counts only (no timings) and serialize
//! byte-identically across runs.

use braidrep::alexander;
use braidrep::burau;
use braidrep::kz::{KzSpec, KzSystem};
use braidrep::ring::{LaurentPoly, Matrix, Ring};
use braidrep::sl2::{self, Sl2Param};
use braidrep::yang_baxter::{self, RMatrix};
use braidrep::BraidWord;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// At most this many failing case labels are kept per suite.
const MAX_LISTED: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub failed_cases: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, cases: 0, failures: 0, failed_cases: Vec::new() }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failed_cases.len() < MAX_LISTED {
                self.failed_cases.push(label());
            }
        }
    }

    fn record_result<E: std::fmt::Display>(&mut self, r: Result<bool, E>, label: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, label),
            Err(e) => self.record(false, || format!("{}: {e}", label())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .suites
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "cases": s.cases,
                    "failures": s.failures,
                    "failed_cases": s.failed_cases,
                })
            })
            .collect();
        json!({"seed": self.seed, "suites": suites, "passed": self.passed()})
    }
}

/// Runs every suite; `cases` sets the sample count of the randomized ones.
pub fn run(seed: u64, cases: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        burau_relations(),
        burau_conjugation(),
        knot_values(),
        markov(&mut rng, cases),
        skein(&mut rng, cases),
        yang_baxter_suite(&mut rng, cases),
        verma_dims(),
        algebraic_lemmas(&mut rng),
        kz_numerics(&mut rng, cases),
    ];
    Report { seed, suites }
}

/// Random word on `n` strands with at most `max_len` letters.
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n.max(1)).expect("at least one strand");
    }
    let len = rng.random_range(0..=max_len);
    let pairs: Vec<(usize, i64)> =
        (0..len).map(|_| (rng.random_range(1..n), if rng.random_bool(0.5) { 1 } else { -1 })).collect();
    BraidWord::from_pairs(n, &pairs).expect("indices in range")
}

fn word(n: usize, text: &str) -> BraidWord {
    BraidWord::parse(text, n).expect("well-formed literal")
}

fn burau_relations() -> SuiteResult {
    let mut s = SuiteResult::new("burau_relations");
    for n in 2..=6 {
        for reduced in [false, true] {
            let image = |w: &BraidWord| if reduced { burau::reduced_burau(w) } else { burau::burau(w) };
            let mut equal = |a: String, b: String| {
                let r = image(&word(n, &a)).and_then(|x| Ok(x.matrix == image(&word(n, &b))?.matrix));
                s.record_result(r, || format!("n={n} reduced={reduced}: {a} = {b}"));
            };
            for i in 1..n {
                equal(format!("s{i} s{i}^-1"), String::new());
                if i + 1 < n {
                    let j = i + 1;
                    equal(format!("s{i} s{j} s{i}"), format!("s{j} s{i} s{j}"));
                }
                for j in i + 2..n {
                    equal(format!("s{i} s{j}"), format!("s{j} s{i}"));
                }
            }
        }
    }
    s
}

fn burau_conjugation() -> SuiteResult {
    let mut s = SuiteResult::new("burau_conjugation");
    for n in 3..=7 {
        for i in 1..n {
            s.record_result(burau::conjugation_check(n, i), || format!("n={n} i={i}"));
        }
    }
    s
}

fn knot_values() -> SuiteResult {
    let mut s = SuiteResult::new("knot_values");
    let table = [
        (1, "", "1", 1),
        (2, "s1 s1 s1", "s^-2 - 1 + s^2", 1),
        (2, "s1 s1", "s^-1 - s", 2),
        (3, "s1 s2^-1 s1 s2^-1", "-s^-2 + 3 - s^2", 1),
        (2, "", "0", 2),
    ];
    for (n, text, expect, components) in table {
        let r = alexander::alexander_conway(&word(n, text))
            .map(|v| v.conway.to_string() == expect && v.components == components);
        s.record_result(r, || format!("n={n} '{text}' expected {expect}"));
    }
    s
}

fn markov(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("markov_invariance");
    for n in 2..=5 {
        for _ in 0..cases {
            let w = random_word(rng, n, 10);
            let g = random_word(rng, n, 10);
            let r = alexander::markov_invariance_check(&w, &g);
            s.record_result(r, || format!("n={n} w={:?} g={:?}", w.pairs(), g.pairs()));
        }
    }
    s
}

fn skein(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("skein_relation");
    for _ in 0..cases {
        let n = rng.random_range(2..=4);
        let prefix = random_word(rng, n, 5);
        let suffix = random_word(rng, n, 5);
        let i = rng.random_range(1..n);
        let r = alexander::skein_check(&prefix, i, &suffix);
        s.record_result(r, || format!("n={n} i={i} prefix={:?} suffix={:?}", prefix.pairs(), suffix.pairs()));
    }
    s
}

fn artin_holds<T: Ring>(r: &RMatrix<T>, n: usize) -> Result<bool, yang_baxter::YbeError> {
    let rep = |text: &str| yang_baxter::rep_from_r(r, n, &word(n, text), false);
    for i in 1..n {
        if rep(&format!("s{i} s{i}^-1"))? != Matrix::identity(r.dim().pow(n as u32)) {
            return Ok(false);
        }
        if i + 1 < n {
            let j = i + 1;
            if rep(&format!("s{i} s{j} s{i}"))? != rep(&format!("s{j} s{i} s{j}"))? {
                return Ok(false);
            }
        }
        for j in i + 2..n {
            if rep(&format!("s{i} s{j}"))? != rep(&format!("s{j} s{i}"))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_rational_r(rng: &mut ChaCha8Rng) -> RMatrix<BigRational> {
    let m = Matrix::from_fn(4, 4, |_, _| {
        BigRational::new(BigInt::from(rng.random_range(-9i64..=9)), BigInt::from(rng.random_range(1i64..=5)))
    });
    RMatrix::new(2, m).expect("4x4 is square of dim 2")
}

fn yang_baxter_suite(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("yang_baxter");
    let rcheck = yang_baxter::standard_rcheck();
    s.record(yang_baxter::check_braid_ybe(&RMatrix::<BigRational>::identity(2)).passes(), || "identity".into());
    s.record(yang_baxter::check_braid_ybe(&RMatrix::<BigRational>::flip(2)).passes(), || "flip".into());
    s.record(yang_baxter::check_braid_ybe(&rcheck).passes(), || "rcheck".into());
    for n in 2..=4 {
        s.record_result(artin_holds(&rcheck, n), || format!("rcheck Artin relations n={n}"));
        s.record_result(artin_holds(&RMatrix::<BigRational>::flip(2), n), || format!("flip Artin relations n={n}"));
    }
    let q_eq_flipped = |r: &RMatrix<LaurentPoly>| {
        yang_baxter::check_qybe(r).passes() == yang_baxter::check_braid_ybe(&r.flipped()).passes()
    };
    s.record(q_eq_flipped(&rcheck), || "QYBE(R) vs braid-YBE(tau R) for rcheck".into());
    for k in 0..cases {
        let r = random_rational_r(rng);
        let braid = yang_baxter::check_braid_ybe(&r);
        let same = yang_baxter::check_qybe(&r).passes() == yang_baxter::check_braid_ybe(&r.flipped()).passes();
        s.record(!braid.passes() && same, || format!("random rational R #{k}: {:?}", r.matrix().to_rows()));
    }
    s
}

fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn verma_dims() -> SuiteResult {
    let mut s = SuiteResult::new("verma_dims");
    for n in 1..=5 {
        for m in 0..=4 {
            let r = sl2::weight_space_basis(n, m).map(|b| b.len() == choose(m + n - 1, n - 1));
            s.record_result(r, || format!("dim W n={n} m={m}"));
        }
    }
    for (p, q) in [(7, 3), (1, 2), (5, 1)] {
        let param = Sl2Param::new(rational(p, q));
        for n in 2..=5 {
            let r = sl2::nullspace_basis(n, &param, 2).map(|ns| ns.dim() == n * (n - 1) / 2 && !ns.degenerate());
            s.record_result(r, || format!("dim N lambda={p}/{q} n={n}"));
        }
    }
    s
}

fn algebraic_lemmas(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = SuiteResult::new("algebraic_lemmas");
    let mut lambdas = vec![rational(7, 3), rational(1, 2), rational(-5, 7)];
    lambdas.push(rational(rng.random_range(-40..=40), rng.random_range(1..=9)));
    for lambda in lambdas {
        let p = Sl2Param::new(lambda.clone());
        for n in 2..=4 {
            for m in 0..=2 {
                let tag = || format!("lambda={lambda} n={n} m={m}");
                s.record_result(sl2::kd_relation_check(n, &p, m), || format!("Kohno-Drinfeld {}", tag()));
                s.record_result(sl2::equivariance_check(n, &p, m), || format!("equivariance {}", tag()));
                s.record_result(sl2::total_omega_central_check(n, &p, m), || format!("central {}", tag()));
                s.record_result(sl2::coproduct_casimir_check(n, &p, m), || format!("coproduct Casimir {}", tag()));
            }
        }
        let expect = (&lambda * &lambda + rational(2, 1) * &lambda) / rational(8, 1);
        for j in 0..=5 {
            let (diag, clean) = sl2::casimir_on_verma(j, &p);
            s.record(clean && diag == expect, || format!("Casimir on F^{j} v, lambda={lambda}"));
        }
    }
    s
}

fn kz_numerics(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut s = SuiteResult::new("kz_numerics");
    let tol = 1e-9;
    let h = {
        let r = rng.random_range(0.05..0.2);
        let a = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, a)
    };
    let half = Complex64::new(0.5, 0.0);
    for restrict in [false, true] {
        let r = KzSystem::new(&KzSpec::with_h(3, half, h, 2, restrict))
            .and_then(|sys| sys.braid_relation_residual(tol))
            .map(|x| x <= 1e-6);
        s.record_result(r, || format!("braid relations h={h} nullspace={restrict}"));
    }
    for n in 2..=4 {
        let lambda = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-1.0..1.0));
        let r = KzSystem::new(&KzSpec::with_h(n, lambda, h, 2, false))
            .and_then(|sys| crate::commands::random_flatness(&sys, rng.random(), cases))
            .map(|x| x <= 1e-10);
        s.record_result(r, || format!("flatness n={n} lambda={lambda} h={h}"));
    }
    let r = KzSystem::new(&KzSpec::with_h(2, half, h, 2, false))
        .and_then(|sys| sys.homotopy_invariance_check(1, tol))
        .map(|x| x <= 1e-8);
    s.record_result(r, || format!("homotopy h={h}"));
    s
}
