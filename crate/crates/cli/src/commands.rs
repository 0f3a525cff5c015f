//! Subcommand implementations. Each returns the JSON document to print.

use std::fmt::Display;

use braidrep::alexander;
use braidrep::burau;
use braidrep::kz::{KzSpec, KzSystem};
use braidrep::ring::{Matrix, Ring};
use braidrep::sl2::{self, Sl2Param};
use braidrep::yang_baxter::{self, QuasitriangularReport, RMatrix, Residual};
use braidrep::BraidWord;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{self, LoadedR};
use crate::{CliError, Command, KzArgs, KzCommand, RSource, VermaArgs, VermaCommand, WordArgs, YbeCommand};

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn compute(e: impl Display) -> CliError {
    CliError::Compute(e.to_string())
}

pub fn execute(cmd: &Command, warnings: &mut Vec<String>) -> Result<Value, CliError> {
    match cmd {
        Command::Braid(w) => braid(&resolve_word(w)?),
        Command::Burau { word, reduced } => burau_cmd(&resolve_word(word)?, *reduced),
        Command::Alexander(w) => alexander_cmd(&resolve_word(w)?),
        Command::Ybe(c) => ybe(c),
        Command::Verma(c) => verma(c, warnings),
        Command::Kz(c) => kz(c),
        Command::Selftest { seed, cases } => Ok(crate::selftest::run(*seed, *cases).to_json()),
    }
}

fn resolve_word(w: &WordArgs) -> Result<BraidWord, CliError> {
    if let Some(text) = &w.json {
        return format::parse_word_json(text).map_err(usage);
    }
    let n = w.n.ok_or_else(|| usage("--n is required unless --json is given"))?;
    BraidWord::parse(w.word.as_deref().unwrap_or(""), n).map_err(usage)
}

fn braid(w: &BraidWord) -> Result<Value, CliError> {
    let p = w.permutation();
    Ok(json!({
        "permutation": p.images(),
        "cycles": p.cycles(),
        "pure": w.is_pure(),
        "exponent_sum": w.exponent_sum(),
    }))
}

fn burau_cmd(w: &BraidWord, reduced: bool) -> Result<Value, CliError> {
    let image = if reduced { burau::reduced_burau(w) } else { burau::burau(w) }.map_err(compute)?;
    Ok(json!({
        "strands": image.strands,
        "reduced": image.reduced,
        "matrix": format::exact_matrix_json(&image.matrix),
    }))
}

fn alexander_cmd(w: &BraidWord) -> Result<Value, CliError> {
    let v = alexander::alexander_conway(w).map_err(compute)?;
    Ok(json!({"conway": v.conway.to_string(), "components": v.components}))
}

fn load_r(src: &RSource) -> Result<LoadedR, CliError> {
    match (&src.builtin, &src.file) {
        (Some(name), _) => Ok(match name.as_str() {
            "identity" => LoadedR::Rational(RMatrix::identity(src.dim)),
            "flip" => LoadedR::Rational(RMatrix::flip(src.dim)),
            _ => LoadedR::Laurent(yang_baxter::standard_rcheck()),
        }),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            format::parse_r_matrix(&text).map_err(usage)
        }
        (None, None) => Err(usage("give an R-matrix file or --builtin")),
    }
}

fn residual_json(r: Residual) -> Value {
    match r {
        Residual::Exact { nonzero_entries } => json!({"exact": true, "nonzero_entries": nonzero_entries}),
        Residual::Numeric { max_abs } => json!({"exact": false, "max_abs": max_abs}),
    }
}

fn report_json(r: &QuasitriangularReport) -> Value {
    json!({
        "braid_ybe": residual_json(r.braid_ybe),
        "braid_ybe_holds": r.braid_ybe.passes(),
        "qybe": residual_json(r.qybe),
        "qybe_holds": r.qybe.passes(),
        "invertible": r.invertible,
    })
}

fn rep_json<T: Ring>(
    r: &RMatrix<T>,
    n: usize,
    w: &BraidWord,
    allow: bool,
    encode: impl Fn(&Matrix<T>) -> Value,
) -> Result<Value, CliError> {
    let m = yang_baxter::rep_from_r(r, n, w, allow).map_err(compute)?;
    Ok(encode(&m))
}

fn ybe(cmd: &YbeCommand) -> Result<Value, CliError> {
    match cmd {
        YbeCommand::Check(src) => {
            let r = load_r(src)?;
            let report = match &r {
                LoadedR::Rational(r) => yang_baxter::check_quasitriangular_matrix_axioms(r),
                LoadedR::Laurent(r) => yang_baxter::check_quasitriangular_matrix_axioms(r),
                LoadedR::Complex(r) => yang_baxter::check_quasitriangular_matrix_axioms(r),
            };
            let mut v = json!({"dim": r.dim(), "ring": r.ring_name()});
            if let (Value::Object(out), Value::Object(rest)) = (&mut v, report_json(&report)) {
                out.extend(rest);
            }
            Ok(v)
        }
        YbeCommand::Rep { source, n, word, allow_non_ybe } => {
            let r = load_r(source)?;
            let w = BraidWord::parse(word, *n).map_err(usage)?;
            let matrix = match &r {
                LoadedR::Rational(r) => rep_json(r, *n, &w, *allow_non_ybe, format::rational_matrix_json)?,
                LoadedR::Laurent(r) => rep_json(r, *n, &w, *allow_non_ybe, format::exact_matrix_json)?,
                LoadedR::Complex(r) => rep_json(
                    r,
                    *n,
                    &w,
                    *allow_non_ybe,
                    |m| json!({"rows": m.rows(), "cols": m.cols(), "entries": format::complex_matrix_json(m)}),
                )?,
            };
            Ok(json!({"dim": r.dim(), "ring": r.ring_name(), "n": n, "matrix": matrix}))
        }
        YbeCommand::Show(src) => Ok(load_r(src)?.to_json()),
    }
}

fn verma_param(a: &VermaArgs) -> Result<Sl2Param<BigRational>, CliError> {
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    Ok(Sl2Param::new(format::parse_rational(&a.lambda).map_err(usage)?))
}

fn degenerate_warning(a: &VermaArgs) -> String {
    format!("lambda = {} is degenerate at m = {}; nullspace dimension is not the generic one", a.lambda, a.m)
}

fn verma(cmd: &VermaCommand, warnings: &mut Vec<String>) -> Result<Value, CliError> {
    match cmd {
        VermaCommand::Dims(a) => {
            let p = verma_param(a)?;
            let weight_dim = sl2::weight_space_basis(a.n, a.m).map_err(compute)?.len();
            let ns = sl2::nullspace_basis(a.n, &p, a.m).map_err(compute)?;
            let mut v = json!({"weight_dim": weight_dim, "null_dim": ns.dim()});
            if ns.degenerate() {
                warnings.push(degenerate_warning(a));
                v["degenerate"] = json!(true);
            }
            Ok(v)
        }
        VermaCommand::Omega { args, i, j } => {
            let p = verma_param(args)?;
            let basis = sl2::weight_space_basis(args.n, args.m).map_err(compute)?;
            let o = sl2::omega_matrix(args.n, *i, *j, &p, args.m).map_err(usage)?;
            Ok(json!({"basis": basis.indices(), "matrix": format::rational_matrix_json(&o.block)}))
        }
        VermaCommand::Nullspace(a) => {
            let p = verma_param(a)?;
            let ns = sl2::nullspace_basis(a.n, &p, a.m).map_err(compute)?;
            if ns.degenerate() {
                warnings.push(degenerate_warning(a));
            }
            Ok(json!({
                "weight_basis": ns.basis.indices(),
                "dim": ns.dim(),
                "generic_dim": ns.generic_dim,
                "degenerate": ns.degenerate(),
                "basis": format::rational_matrix_json(&ns.kernel.basis),
            }))
        }
        VermaCommand::Check(a) => {
            let p = verma_param(a)?;
            let (n, m) = (a.n, a.m);
            Ok(json!({
                "kohno_drinfeld": sl2::kd_relation_check(n, &p, m).map_err(compute)?,
                "total_omega_central": sl2::total_omega_central_check(n, &p, m).map_err(compute)?,
                "equivariance": sl2::equivariance_check(n, &p, m).map_err(compute)?,
                "coproduct_casimir": sl2::coproduct_casimir_check(n, &p, m).map_err(compute)?,
                "casimir_eigenvalue": format::rational_string(&sl2::casimir_eigenvalue(&p)),
            }))
        }
    }
}

fn kz_system(a: &KzArgs) -> Result<KzSystem, CliError> {
    let lambda = format::parse_scalar(&a.lambda).map_err(usage)?;
    let spec = match (&a.h, &a.tau) {
        (Some(h), _) => KzSpec::with_h(a.n, lambda, format::parse_complex(h).map_err(usage)?, a.m, a.nullspace),
        (None, Some(t)) => {
            let tau = format::parse_complex(t).map_err(usage)?;
            if tau == Complex64::new(0.0, 0.0) {
                return Err(usage("tau must be nonzero"));
            }
            KzSpec::with_tau(a.n, lambda, tau, a.m, a.nullspace)
        }
        (None, None) => return Err(usage("give --h or --tau")),
    };
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {}", a.tol)));
    }
    KzSystem::new(&spec).map_err(compute)
}

/// Max flatness residual over `points` random configurations and tangent
/// pairs drawn from `seed`.
pub fn random_flatness(sys: &KzSystem, seed: u64, points: usize) -> Result<f64, braidrep::kz::KzError> {
    let n = sys.spec().n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..points {
        let mut draw = || -> Vec<Complex64> {
            (0..n).map(|_| Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))).collect()
        };
        let (z, u, v) = (draw(), draw(), draw());
        worst = worst.max(sys.flatness_residual(&z, &u, &v)?);
    }
    Ok(worst)
}

fn kz(cmd: &KzCommand) -> Result<Value, CliError> {
    match cmd {
        KzCommand::Monodromy { args, word } => {
            let sys = kz_system(args)?;
            let w = BraidWord::parse(word, args.n).map_err(usage)?;
            let r = sys.monodromy(&w, args.tol).map_err(compute)?;
            Ok(json!({
                "matrix": format::complex_matrix_json(&r.matrix),
                "est_error": r.est_error,
                "path_length_steps": r.path_length_steps,
            }))
        }
        KzCommand::Check { args, seed, points } => {
            let sys = kz_system(args)?;
            let braid_residual = sys.braid_relation_residual(args.tol).map_err(compute)?;
            let flatness_residual = random_flatness(&sys, *seed, *points).map_err(compute)?;
            let homotopy_residual = sys.homotopy_invariance_check(1, args.tol).map_err(compute)?;
            Ok(json!({
                "braid_residual": braid_residual,
                "flatness_residual": flatness_residual,
                "homotopy_residual": homotopy_residual,
            }))
        }
    }
}
