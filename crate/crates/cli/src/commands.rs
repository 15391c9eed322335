//! Subcommands. Each returns a JSON report and a verdict; `run` maps those
//! to exit codes 0 (pass), 1 (mathematical failure), 2 (input error).

use std::fs;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nisalg::catalog::{fixture, FIXTURE_NAMES};
use nisalg::cohomology::{
    derivations as all_derivations, flat_to_mat, h_k, inner, restricted_derivations, Coefficients, GradedSpace,
    DEFAULT_SIZE_GUARD,
};
use nisalg::dext::{
    build_adapted_iso, check_conditions, double_extend, reconstruct, verify_iso, verify_p_iso, AdaptedIso, ConditionReport,
    DExtensionData, ExtCase, PCubicMap,
};
use nisalg::exactla::unit;
use nisalg::forms::check_nis;
use nisalg::restricted::{evaluate, verify_pmap};
use nisalg::{Error, LieSuperAlgebra, Mat, PMap, Parity, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bundle::Bundle;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Parser)]
#[command(name = "nisalg", version, about = "Restricted NIS Lie (super)algebras and their double extensions over GF(p)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads. Computations are currently sequential, so values
    /// above 1 change nothing.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Refuse cochain spaces larger than this.
    #[arg(long = "size-guard", global = true, default_value_t = DEFAULT_SIZE_GUARD)]
    pub size_guard: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms, every form, and the p-map.
    Verify {
        file: PathBuf,
        /// Random even elements on which ad(a^[p]) = ad(a)^p is re-checked.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Derivations, optionally restricted and modulo inner ones.
    Derivations {
        file: PathBuf,
        #[arg(long)]
        restricted: bool,
        #[arg(long = "modulo-inner")]
        modulo_inner: bool,
    },
    /// Dimension of H^k with trivial or adjoint coefficients
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        coefficients: CoeffArg,
    },
    /// Double extension by a derivation.
    Dextend(DextendArgs),
    /// Split off a central isotropic basis element and recover the data.
    Reconstruct {
        file: PathBuf,
        #[arg(long = "center-index")]
        center_index: usize,
        #[arg(long)]
        form: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an adapted isomorphism between two extensions.
    Isocheck {
        g: PathBuf,
        gt: PathBuf,
        /// JSON matrix (list of rows) for π0 on the base.
        #[arg(long)]
        pi0: PathBuf,
        #[arg(long)]
        lambda: u32,
        /// Comma-separated coordinates; empty for zero.
        #[arg(long, default_value = "")]
        kappa: String,
        #[arg(long, default_value_t = 0)]
        rho: u32,
        #[arg(long = "check-p")]
        check_p: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Emit {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoeffArg {
    Trivial,
    Adjoint,
}

#[derive(Debug, Args)]
pub struct DextendArgs {
    pub file: PathBuf,
    /// Name or position in the bundle's derivation list.
    #[arg(long)]
    pub derivation: String,
    /// `auto` or a case name such as `lie` or `super_evenB_oddD`.
    #[arg(long, default_value = "auto")]
    pub case: String,
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long)]
    pub gamma: Option<u32>,
    #[arg(long)]
    pub a0: Option<String>,
    #[arg(long)]
    pub b0: Option<String>,
    #[arg(long)]
    pub c0: Option<String>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub lambda0: Option<u32>,
    #[arg(long)]
    pub bxx: Option<u32>,
    /// `zero` or the name of a cubic in the bundle.
    #[arg(long = "P")]
    pub p_cubic: Option<String>,
    #[arg(long = "allow-pre-lie")]
    pub allow_pre_lie: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// What a subcommand produced.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub bundle: Option<(Bundle, Option<PathBuf>)>,
}

impl Outcome {
    fn report(passed: bool, report: Value) -> Outcome {
        Outcome { passed, report, bundle: None }
    }
}

/// A closed pipe on stdout (`nisalg ... | head`) is not an error.
fn out_text(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

/// Parse, execute, print, and return the exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("report serializes");
            let mut report_to_stdout = true;
            if let Some((bundle, path)) = out.bundle {
                match path {
                    Some(p) => {
                        if let Err(e) = fs::write(&p, bundle.to_json()) {
                            eprintln!("error: cannot write {}: {e}", p.display());
                            return 2;
                        }
                    }
                    None => {
                        out_text(&bundle.to_json());
                        report_to_stdout = false;
                    }
                }
            }
            if report_to_stdout {
                out_text(&format!("{text}\n"));
            } else {
                eprintln!("{text}");
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let report = json!({ "passed": false, "error": e.to_string() });
            if code == 1 {
                out_text(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")));
            } else {
                eprintln!("error: {e}");
            }
            code
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_mathematical() {
        1
    } else {
        2
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }
}

pub fn load_bundle(path: &Path) -> Result<Bundle> {
    Bundle::from_json(&read_text(path)?)
}

fn parse_vec(s: &str, n: usize, p: u32, what: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(vec![0; n]);
    }
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map(|x| x.rem_euclid(i64::from(p)) as u32))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Input(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(Error::Input(format!("{what}: expected {n} entries, got {}", v.len())));
    }
    Ok(v)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if g.threads == 0 {
        return Err(Error::Input("--threads must be positive".into()));
    }
    match &cli.command {
        Command::Verify { file, samples } => verify(&load_bundle(file)?, *samples, g.seed),
        Command::Catalog { action } => catalog(action),
        Command::Derivations { file, restricted, modulo_inner } => derivations(&load_bundle(file)?, *restricted, *modulo_inner),
        Command::Cohomology { file, degree, coefficients } => {
            let coeff = match coefficients {
                CoeffArg::Trivial => Coefficients::Trivial,
                CoeffArg::Adjoint => Coefficients::Adjoint,
            };
            cohomology(&load_bundle(file)?, *degree, coeff, g.size_guard)
        }
        Command::Dextend(args) => dextend(&load_bundle(&args.file)?, args),
        Command::Reconstruct { file, center_index, form, output } => {
            reconstruct_cmd(&load_bundle(file)?, *center_index, form.as_deref(), output.clone())
        }
        Command::Isocheck { g: fg, gt, pi0, lambda, kappa, rho, check_p } => {
            let pi0_m = read_matrix(&read_text(pi0)?)?;
            isocheck(&load_bundle(fg)?, &load_bundle(gt)?, pi0_m, *lambda, kappa, *rho, *check_p)
        }
    }
}

fn matrix_json(m: &Mat) -> Value {
    json!(m.row_vecs())
}

pub fn verify(b: &Bundle, samples: usize, seed: u64) -> Result<Outcome> {
    let alg = b.algebra()?;
    let ax = alg.check_axioms();
    let mut passed = ax.is_lie;
    let mut forms = Vec::new();
    for (name, form) in b.forms(&alg)? {
        let r = check_nis(&alg, &form);
        passed &= r.is_ok();
        forms.push(json!({ "name": name, "nis": r.is_ok(), "failure": r.err().map(|e| e.to_string()) }));
    }
    let pm = b.pmap(&alg)?;
    let pmap = match &pm {
        Some(pm) => {
            let r = verify_pmap(&alg, pm);
            let spot = spot_check(&alg, pm, samples, seed)?;
            passed &= r.ok() && spot;
            json!({ "present": true, "ok": r.ok(), "detail": r.to_string(), "spot_check": { "samples": samples, "seed": seed, "ok": spot } })
        }
        None => json!({ "present": false }),
    };
    let report = json!({
        "command": "verify",
        "passed": passed,
        "dim": [alg.even_indices().len(), alg.odd_indices().len()],
        "axioms": {
            "anticommutative": ax.anticommutative,
            "jacobi": ax.jacobi,
            "char3_cubic": ax.char3_cubic,
            "is_lie": ax.is_lie,
            "is_pre_lie_only": ax.is_pre_lie_only,
        },
        "forms": forms,
        "pmap": pmap,
    });
    Ok(Outcome::report(passed, report))
}

/// `ad(a^[p]) = ad(a)^p` on random even elements.
fn spot_check(alg: &LieSuperAlgebra, pm: &PMap, samples: usize, seed: u64) -> Result<bool> {
    let f = alg.field();
    let even = alg.even_indices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut a = vec![0; alg.dim()];
        for &j in &even {
            a[j] = rng.gen_range(0..f.p());
        }
        let lhs = alg.ad(&evaluate(alg, pm, &a)?)?;
        let rhs = alg.ad(&a)?.pow(f, f.p())?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn catalog(action: &CatalogAction) -> Result<Outcome> {
    match action {
        CatalogAction::List => Ok(Outcome::report(true, json!({ "command": "catalog list", "fixtures": FIXTURE_NAMES }))),
        CatalogAction::Emit { name, output } => {
            let fx = fixture(name)?;
            let bundle = Bundle::from_fixture(&fx);
            let expected: serde_json::Map<String, Value> = fx.expected.iter().map(|(k, v)| (k.clone(), expected_json(v))).collect();
            let report = json!({ "command": "catalog emit", "passed": true, "name": fx.name, "expected": expected });
            Ok(Outcome { passed: true, report, bundle: Some((bundle, output.clone())) })
        }
    }
}

pub fn expected_json(e: &nisalg::catalog::Expected) -> Value {
    use nisalg::catalog::Expected;
    match e {
        Expected::Int(i) => json!(i),
        Expected::Bool(b) => json!(b),
        Expected::Vector(v) => json!(v),
        Expected::Pair(a, b) => json!([a, b]),
    }
}

pub fn derivations(b: &Bundle, restricted: bool, modulo_inner: bool) -> Result<Outcome> {
    let alg = b.algebra()?;
    let f = alg.field();
    let n = alg.dim();
    let space: GradedSpace = if restricted {
        let pm = b.pmap(&alg)?.ok_or_else(|| Error::Input("--restricted needs a pmap in the bundle".into()))?;
        restricted_derivations(&alg, &pm)?
    } else {
        all_derivations(&alg)
    };
    let inn = inner(&alg);
    let mut out = serde_json::Map::new();
    let mut dims = Vec::new();
    for (key, par) in [("even", Parity::Even), ("odd", Parity::Odd)] {
        let vecs = if modulo_inner {
            if !space.get(par).contains_subspace(f, inn.get(par))? {
                return Err(Error::Verification("an inner derivation is missing from the space".into()));
            }
            space.get(par).quotient_basis(f, inn.get(par))?
        } else {
            space.get(par).vectors()
        };
        dims.push(vecs.len());
        out.insert(key.into(), Value::Array(vecs.iter().map(|v| matrix_json(&flat_to_mat(n, v))).collect()));
    }
    let report = json!({
        "command": "derivations",
        "passed": true,
        "restricted": restricted,
        "modulo_inner": modulo_inner,
        "dim": dims,
        "basis": out,
    });
    Ok(Outcome::report(true, report))
}

pub fn cohomology(b: &Bundle, degree: usize, coeff: Coefficients, size_guard: usize) -> Result<Outcome> {
    let alg = b.algebra()?;
    let r = h_k(&alg, degree, coeff, size_guard)?;
    let report = json!({
        "command": "cohomology",
        "passed": true,
        "degree": degree,
        "coefficients": match coeff { Coefficients::Trivial => "trivial", Coefficients::Adjoint => "adjoint" },
        "dim": r.dim,
        "dim_even": r.dim_even,
        "dim_odd": r.dim_odd,
        "cochain_dim": r.cochain_dim,
    });
    Ok(Outcome::report(true, report))
}

fn conditions_json(rep: &ConditionReport) -> Value {
    Value::Array(
        rep.conditions
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "witness": c.witness.as_ref().map(|w| json!({ "element": w.element, "value": w.value })),
                })
            })
            .collect(),
    )
}

/// Assemble the extension data from the bundle and flags.
pub fn dextend_data(b: &Bundle, args: &DextendArgs) -> Result<(DExtensionData, ExtCase)> {
    let alg = b.algebra()?;
    let n = alg.dim();
    let p = b.p;
    let der = b.derivation(&alg, &args.derivation)?;
    let (mut data, block_case) = if b.extension.is_some() {
        let (d, c) = b.extension_data(&alg, Some(&der))?;
        (d, Some(c))
    } else {
        let pm = b.pmap(&alg)?.ok_or_else(|| Error::Input("dextend needs a pmap in the bundle".into()))?;
        let form = b.form(&alg, args.form.as_deref())?;
        (DExtensionData::new(alg.clone(), pm, form, der.matrix.clone(), der.parity), None)
    };
    if let (Some(name), true) = (&args.form, b.extension.is_some()) {
        data.form = b.form(&alg, Some(name))?;
    }
    let scalar = |v: Option<u32>, cur: u32| v.map_or(cur, |x| x % p);
    data.gamma = scalar(args.gamma, data.gamma);
    data.m = scalar(args.m, data.m);
    data.l = scalar(args.l, data.l);
    data.lambda0 = scalar(args.lambda0, data.lambda0);
    data.bxx = scalar(args.bxx, data.bxx);
    if let Some(s) = &args.a0 {
        data.a0 = parse_vec(s, n, p, "--a0")?;
    }
    if let Some(s) = &args.b0 {
        data.b0 = parse_vec(s, n, p, "--b0")?;
    }
    if let Some(s) = &args.c0 {
        data.c0 = parse_vec(s, n, p, "--c0")?;
    }
    match args.p_cubic.as_deref() {
        None => {}
        Some("zero") => data.p_cubic = PCubicMap::zero(n),
        Some(name) => data.p_cubic = PCubicMap::from_poly(&alg, b.cubic(&alg, name)?.to_poly(&alg)),
    }
    let case = match args.case.as_str() {
        "auto" => block_case.filter(|c| c.d_parity() == data.d_parity).unwrap_or_else(|| data.case()),
        s => s.parse()?,
    };
    Ok((data, case))
}

pub fn dextend(b: &Bundle, args: &DextendArgs) -> Result<Outcome> {
    let (data, case) = dextend_data(b, args)?;
    let rep = check_conditions(&data, case)?;
    let conds = conditions_json(&rep);
    let failed: Vec<&str> = rep.failed().iter().map(|c| c.name).collect();
    match double_extend(&data, case, args.allow_pre_lie) {
        Ok(ext) => {
            let mut out = Bundle::from_algebra(&ext.alg);
            if let Some(pm) = &ext.pmap {
                out = out.with_pmap(pm);
            }
            out.add_form("B", &ext.form);
            out.canonicalize();
            let report = json!({
                "command": "dextend",
                "passed": true,
                "case": case.name(),
                "dim": [ext.alg.even_indices().len(), ext.alg.odd_indices().len()],
                "conditions": conds,
                "failed_conditions": failed,
                "axioms": {
                    "jacobi": ext.axioms.jacobi,
                    "char3_cubic": ext.axioms.char3_cubic,
                    "is_lie": ext.axioms.is_lie,
                    "is_pre_lie_only": ext.axioms.is_pre_lie_only,
                },
                "nis": ext.nis,
                "p_structure": ext.pmap.is_some(),
                "pmap_ok": ext.pmap_report.as_ref().map(|r| r.ok()),
            });
            Ok(Outcome { passed: true, report, bundle: Some((out, args.output.clone())) })
        }
        Err(e) if e.is_mathematical() => {
            let report = json!({
                "command": "dextend",
                "passed": false,
                "case": case.name(),
                "conditions": conds,
                "failed_conditions": failed,
                "error": e.to_string(),
            });
            Ok(Outcome::report(false, report))
        }
        Err(e) => Err(e),
    }
}

pub fn reconstruct_cmd(b: &Bundle, index: usize, form: Option<&str>, output: Option<PathBuf>) -> Result<Outcome> {
    let alg = b.algebra()?;
    if index >= alg.dim() {
        return Err(Error::Input(format!("--center-index {index} out of range")));
    }
    let form = b.form(&alg, form)?;
    let pm = b.pmap(&alg)?.ok_or_else(|| Error::Input("reconstruct needs a pmap in the bundle".into()))?;
    let r = reconstruct(&alg, &form, &pm, &unit(alg.dim(), index))?;
    let out = Bundle::from_extension_data(&r.data, r.case);
    let report = json!({
        "command": "reconstruct",
        "passed": true,
        "case": r.case.name(),
        "base_dim": [r.data.base.even_indices().len(), r.data.base.odd_indices().len()],
        "change_of_basis": matrix_json(&r.change),
    });
    Ok(Outcome { passed: true, report, bundle: Some((out, output)) })
}

/// A list of rows, or an object with a `matrix` field.
pub fn read_matrix(text: &str) -> Result<Vec<Vec<u32>>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("matrix JSON: {e}")))?;
    let rows = match v {
        Value::Object(mut m) => m.remove("matrix").ok_or_else(|| Error::Input("matrix object needs a \"matrix\" field".into()))?,
        other => other,
    };
    serde_json::from_value(rows).map_err(|e| Error::Input(format!("matrix JSON: {e}")))
}

pub fn isocheck(
    bg: &Bundle,
    bgt: &Bundle,
    pi0_rows: Vec<Vec<u32>>,
    lambda: u32,
    kappa: &str,
    rho: u32,
    check_p: bool,
) -> Result<Outcome> {
    let g = bg.algebra()?;
    let gt = bgt.algebra()?;
    if g.dim() < 2 {
        return Err(Error::Input("extension bundles have dimension at least 2".into()));
    }
    let n = g.dim() - 2;
    let p = bg.p;
    let form = bg.form(&g, None)?;
    let form_t = bgt.form(&gt, None)?;
    if pi0_rows.len() != n || pi0_rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("--pi0 must be {n}x{n}")));
    }
    let rows: Vec<Vec<u32>> = pi0_rows.iter().map(|r| r.iter().map(|&c| c % p).collect()).collect();
    let iso = AdaptedIso {
        pi0: Mat::from_rows(n, &rows)?,
        lambda: lambda % p,
        kappa: parse_vec(kappa, n, p, "--kappa")?,
        rho_or_nu: rho % p,
    };
    if iso.lambda == 0 {
        return Err(Error::Input("--lambda must be nonzero".into()));
    }
    let pi = build_adapted_iso(&g, &form, &iso)?;
    let r = verify_iso(&g, &form, &gt, &form_t, &pi, &iso)?;
    let mut passed = r.ok();
    let mut report = json!({
        "command": "isocheck",
        "iso": {
            "bijective": r.bijective,
            "parity_preserving": r.parity_preserving,
            "brackets": r.brackets,
            "isometry": r.isometry,
            "adapted": r.adapted,
            "pi0_automorphism": r.pi0_automorphism,
            "compatibility": r.compatibility,
            "failures": r.failures,
        },
        "pi": matrix_json(&pi),
    });
    if check_p {
        let pm = bg.pmap(&g)?.ok_or_else(|| Error::Input("--check-p needs a pmap in the first bundle".into()))?;
        let pm_t = bgt.pmap(&gt)?.ok_or_else(|| Error::Input("--check-p needs a pmap in the second bundle".into()))?;
        let pr = verify_p_iso(&g, &pm, &gt, &pm_t, &pi, None)?;
        passed &= pr.is_p_homomorphism();
        report["p_iso"] = json!({ "basis": pr.basis, "symbolic": pr.symbolic, "note": pr.note });
    }
    report["passed"] = json!(passed);
    Ok(Outcome::report(passed, report))
}
