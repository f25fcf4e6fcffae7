use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilgeo::algebra::Violation;
use nilgeo::derivations::{derivation_space, skew_derivation_space, DerivationAlgebra};
use nilgeo::example6::{classify_v_membership, VMembership};
use nilgeo::file::AlgebraFile;
use nilgeo::fixtures;
use nilgeo::flow::{self, FlowModel};
use nilgeo::geodesic::{
    classify_space, solve_geodesic_lemma, solve_geodesic_system, trivial_isotropy_check, GeodesicSolution,
    Presentation, SamplerConfig, Verdict,
};
use nilgeo::report::{self, rationals, solution_json, Report};
use nilgeo::scalar::{format_rational, parse_rational, rat, rational_to_f64};
use nilgeo::{RatAlgebra, RatMatrix, Rational};

#[derive(Parser)]
#[command(name = "nilgeo", version, about = "Homogeneous geodesics on metric nilpotent Lie groups")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry, Jacobi, metric and nilpotency.
    Validate { file: PathBuf },
    /// Center, nilpotency class, orthogonal split and pseudo-H-type test.
    Info { file: PathBuf },
    /// Bases of Der(n) and of the skew derivations, with brackets.
    Derivations { file: PathBuf },
    /// Decide whether a vector is geodesic.
    Geodesic {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value_t = PresentationArg::Iso)]
        presentation: PresentationArg,
        #[arg(long, value_enum)]
        expect: Option<ExpectGeodesic>,
    },
    /// Sample the space and report g.o. / almost g.o. / n.g.o. verdicts.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 500)]
        null_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PresentationArg::Iso)]
        presentation: PresentationArg,
        /// Comma-separated verdict labels that must all be present.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Numeric checks by integration.
    Flow {
        #[command(subcommand)]
        command: FlowCommand,
    },
    /// xi3 along the curve leaving a vector of V (six-dimensional example only).
    LimitScan {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Comma-separated rational parameters.
        #[arg(long, default_value = "1/10,1/100,1/1000,1/10000")]
        t: String,
    },
    /// List built-in algebras, or print one as an algebra file.
    Catalog { name: Option<String> },
}

#[derive(Subcommand)]
enum FlowCommand {
    /// Compare the isometry orbit of a geodesic vector with the geodesic.
    Compare {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long = "T", default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the orbit trajectory as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentationArg {
    Iso,
    Trivial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpectGeodesic {
    Geodesic,
    NotGeodesic,
    Unique,
    Family,
}

enum CliError {
    /// Bad input or usage: exit 2.
    Input(String),
}

type CmdResult = Result<bool, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let out = match &cli.command {
        Command::Validate { file } => validate(file, cli.json),
        Command::Info { file } => info(file, cli.json),
        Command::Derivations { file } => derivations(file, cli.json),
        Command::Geodesic {
            file,
            vector,
            presentation,
            expect,
        } => geodesic(file, vector, *presentation, *expect, cli.json),
        Command::Classify {
            file,
            samples,
            null_samples,
            seed,
            presentation,
            expect,
        } => {
            let cfg = SamplerConfig {
                samples: *samples,
                null_samples: *null_samples,
                seed: *seed,
                ..SamplerConfig::default()
            };
            classify(file, &cfg, *presentation, expect.as_deref(), cli.json)
        }
        Command::Flow {
            command:
                FlowCommand::Compare {
                    file,
                    vector,
                    dt,
                    horizon,
                    tol,
                    csv,
                },
        } => flow_compare(file, vector, *dt, *horizon, *tol, csv.as_deref(), cli.json),
        Command::LimitScan { file, vector, t } => limit_scan(file, vector, t, cli.json),
        Command::Catalog { name } => catalog(name.as_deref(), cli.json),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<(AlgebraFile, RatAlgebra), CliError> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let file = AlgebraFile::parse(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let alg = file
        .to_algebra()
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    Ok((file, alg))
}

fn parse_vector(text: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let v = parse_list(text, "--vector")?;
    if v.len() != dim {
        return Err(input_err(format!("--vector has {} entries, algebra has dimension {dim}", v.len())));
    }
    Ok(v)
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| input_err(format!("{flag}: {e}"))))
        .collect()
}

fn emit(json: bool, report: &Report, text: impl FnOnce() -> String) {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", text());
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", rationals(v).join(", "))
}

fn fmt_violation(v: &Violation) -> String {
    match v {
        Violation::Antisymmetry { i, j, k } => format!("antisymmetry fails at ({i}, {j}, {k})"),
        Violation::Jacobi { i, j, k } => format!("Jacobi identity fails at ({i}, {j}, {k})"),
        Violation::MetricNotSymmetric { i, j } => format!("metric not symmetric at ({i}, {j})"),
        Violation::MetricDegenerate => "metric is degenerate".to_string(),
        Violation::NotNilpotent => "algebra is not nilpotent".to_string(),
    }
}

fn validate(path: &Path, json: bool) -> CmdResult {
    let (file, alg) = load(path)?;
    let rep = alg.validate();
    let mut problems: Vec<String> = rep.violations.iter().map(fmt_violation).collect();
    if let (Some(declared), Some(actual)) = (file.declared_class(), rep.nilpotency_class) {
        if declared != actual as u64 {
            problems.push(format!("declared nilpotency class {declared}, computed {actual}"));
        }
    }
    let ok = problems.is_empty();
    let report = Report::new(
        "validate",
        &file,
        None,
        json!({ "valid": ok, "nilpotency_class": rep.nilpotency_class, "violations": problems }),
    );
    emit(json, &report, || {
        let mut s = format!("{}: {}\n", file.name, if ok { "valid" } else { "invalid" });
        if let Some(c) = rep.nilpotency_class {
            s += &format!("nilpotency class: {c}\n");
        }
        for p in &problems {
            s += &format!("  {p}\n");
        }
        s
    });
    Ok(ok)
}

fn info(path: &Path, json: bool) -> CmdResult {
    let (file, alg) = load(path)?;
    let center = alg.center();
    let class = alg.nilpotency_class();
    let split = alg.split_v_z();
    let split_json = match &split {
        Ok(s) => json!({
            "v": s.v.basis().iter().map(|b| rationals(b)).collect::<Vec<_>>(),
            "z": s.z.basis().iter().map(|b| rationals(b)).collect::<Vec<_>>(),
            "pseudo_h_type": alg.is_pseudo_h_type(s),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let ad = alg.ad_invariance_witness();
    let result = json!({
        "dim": alg.dim(),
        "nilpotency_class": class,
        "center": center.basis().iter().map(|b| rationals(b)).collect::<Vec<_>>(),
        "split": split_json,
        "ad_invariant": ad.is_none(),
        "ad_invariance_witness": ad.as_ref().map(|(i, j, k, v)| json!([i, j, k, format_rational(v)])),
    });
    let report = Report::new("info", &file, None, result);
    emit(json, &report, || {
        let mut s = format!("{} (dim {})\n", file.name, alg.dim());
        s += &format!(
            "nilpotency class: {}\n",
            class.map_or("not nilpotent".to_string(), |c| c.to_string())
        );
        s += &format!("center: dim {}\n", center.dim());
        for b in center.basis() {
            s += &format!("  {}\n", fmt_vec(b));
        }
        match &split {
            Ok(sp) => {
                s += &format!("split: dim v = {}, dim z = {}\n", sp.dim_v(), sp.dim_z());
                s += &format!("pseudo-H-type: {}\n", alg.is_pseudo_h_type(sp));
            }
            Err(e) => s += &format!("split: {e}\n"),
        }
        match &ad {
            None => s += "ad-invariant: true\n",
            Some((i, j, k, v)) => {
                s += &format!("ad-invariant: false (witness ({i}, {j}, {k}), value {})\n", format_rational(v))
            }
        }
        s
    });
    Ok(true)
}

/// The skew derivations, in the preferred basis of a matching catalog
/// fixture when there is one.
fn skew_basis(alg: &RatAlgebra) -> DerivationAlgebra<Rational> {
    let dera = skew_derivation_space(alg);
    for f in fixtures::catalog() {
        if let Some(named) = f.derivation_basis {
            if f.algebra.same_structure(alg) {
                if let Ok(d) = dera.rebase(named.names, named.matrices) {
                    return d;
                }
            }
        }
    }
    dera
}

fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| rationals(m.row(r))).collect()
}

fn derivations(path: &Path, json: bool) -> CmdResult {
    let (file, alg) = load(path)?;
    let der = derivation_space(&alg);
    let dera = skew_basis(&alg);
    let m = dera.dim();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let c = dera.bracket_coords(a, b);
            if c.iter().any(|x| *x != Rational::from_integer(0.into())) {
                brackets.push((a, b, c));
            }
        }
    }
    let result = json!({
        "der_dim": der.len(),
        "der_basis": der.iter().map(|d| matrix_rows(d.matrix())).collect::<Vec<_>>(),
        "skew_dim": m,
        "skew_basis": dera.names().iter().zip(dera.basis()).map(|(n, d)| json!({
            "name": n,
            "matrix": matrix_rows(d.matrix()),
        })).collect::<Vec<_>>(),
        "skew_brackets": brackets.iter().map(|(a, b, c)| json!({
            "a": dera.names()[*a],
            "b": dera.names()[*b],
            "coords": rationals(c),
        })).collect::<Vec<_>>(),
    });
    let report = Report::new("derivations", &file, None, result);
    emit(json, &report, || {
        let names = dera.names();
        let mut s = format!("dim Der = {}\ndim Der^a = {m}\n", der.len());
        for (n, d) in names.iter().zip(dera.basis()) {
            s += &format!("{n} =\n");
            for r in matrix_rows(d.matrix()) {
                s += &format!("  [{}]\n", r.join(", "));
            }
        }
        s += "nonzero brackets:\n";
        for (a, b, c) in &brackets {
            let terms: Vec<String> = c
                .iter()
                .zip(names)
                .filter(|(x, _)| **x != Rational::from_integer(0.into()))
                .map(|(x, n)| format!("{} {n}", format_rational(x)))
                .collect();
            s += &format!("  [{}, {}] = {}\n", names[*a], names[*b], terms.join(" + "));
        }
        s
    });
    Ok(true)
}

fn solution_text(sol: &GeodesicSolution<Rational>, names: &[String]) -> String {
    match sol {
        GeodesicSolution::NotGeodesic => "NotGeodesic\n".to_string(),
        GeodesicSolution::Unique { xi, k } => format!(
            "Unique\nxi = {} in basis ({})\nk = {}\n",
            fmt_vec(xi),
            names.join(", "),
            format_rational(k)
        ),
        GeodesicSolution::Family { xi, k, directions } => {
            let mut s = format!(
                "Family\nxi = {} in basis ({})\nk = {}\n",
                fmt_vec(xi),
                names.join(", "),
                format_rational(k)
            );
            for d in directions {
                s += &format!("  + t ({}, k: {})\n", rationals(&d.xi).join(", "), format_rational(&d.k));
            }
            s
        }
    }
}

fn geodesic(
    path: &Path,
    vector: &str,
    presentation: PresentationArg,
    expect: Option<ExpectGeodesic>,
    json: bool,
) -> CmdResult {
    let (file, alg) = load(path)?;
    let y = parse_vector(vector, alg.dim())?;
    let (sol, names, label) = match presentation {
        PresentationArg::Iso => {
            let split = alg.split_v_z().map_err(|e| input_err(e.to_string()))?;
            let dera = skew_basis(&alg);
            (
                solve_geodesic_system(&alg, &split, &dera, &y),
                dera.names().to_vec(),
                "iso",
            )
        }
        PresentationArg::Trivial => {
            let sol = match alg.split_v_z() {
                Ok(split) if alg.nilpotency_class().is_some_and(|c| c <= 2) => {
                    if trivial_isotropy_check(&alg, &split, &y).geodesic {
                        GeodesicSolution::Unique {
                            xi: Vec::new(),
                            k: Rational::from_integer(0.into()),
                        }
                    } else {
                        GeodesicSolution::NotGeodesic
                    }
                }
                _ => solve_geodesic_lemma(&alg, None, &y),
            };
            (sol, Vec::new(), "trivial")
        }
    };
    let ok = match expect {
        None => true,
        Some(ExpectGeodesic::Geodesic) => sol.is_geodesic(),
        Some(ExpectGeodesic::NotGeodesic) => !sol.is_geodesic(),
        Some(ExpectGeodesic::Unique) => matches!(sol, GeodesicSolution::Unique { .. }),
        Some(ExpectGeodesic::Family) => matches!(sol, GeodesicSolution::Family { .. }),
    };
    let mut result = json!({
        "presentation": label,
        "vector": rationals(&y),
        "basis": names,
        "solution": solution_json(&sol),
    });
    if expect.is_some() {
        result["expectation_met"] = Value::Bool(ok);
    }
    let report = Report::new("geodesic", &file, None, result);
    emit(json, &report, || solution_text(&sol, &names));
    Ok(ok)
}

fn classify(
    path: &Path,
    cfg: &SamplerConfig,
    presentation: PresentationArg,
    expect: Option<&str>,
    json: bool,
) -> CmdResult {
    let wanted: Vec<Verdict> = match expect {
        None => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|e| Verdict::from_label(e.trim()).ok_or_else(|| input_err(format!("--expect: unknown verdict {e:?}"))))
            .collect::<Result<_, _>>()?,
    };
    let (file, alg) = load(path)?;
    let dera = skew_basis(&alg);
    let pres = match presentation {
        PresentationArg::Iso => Presentation::Isometry(&dera),
        PresentationArg::Trivial => Presentation::Trivial,
    };
    let verdict = classify_space(&alg, pres, cfg).map_err(|e| input_err(e.to_string()))?;
    let labels: Vec<&str> = verdict.verdicts.iter().map(|v| v.label()).collect();
    let ok = wanted.iter().all(|v| verdict.has(*v));
    let mut result = report::verdict_json(&verdict);
    result["presentation"] = json!(if presentation == PresentationArg::Iso { "iso" } else { "trivial" });
    result["samples"] = json!(cfg.samples);
    result["null_samples"] = json!(cfg.null_samples);
    if let (PresentationArg::Iso, true) = (presentation, fixtures::paper6_e().same_structure(&alg)) {
        // Exact case analysis is available for the six-dimensional example.
        let memberships: Vec<Value> = verdict
            .witnesses
            .iter()
            .map(|w| json!(classify_v_membership(&w.y).map(VMembership::label).unwrap_or("?")))
            .collect();
        result["witness_membership"] = Value::Array(memberships);
    }
    let report = Report::new("classify", &file, Some(cfg.seed), result);
    emit(json, &report, || {
        let st = &verdict.stats;
        let mut s = format!("verdict: {}\n", labels.join(" + "));
        s += &format!(
            "generic samples: {}/{} solvable, {} in the exceptional set\n",
            st.generic.solvable, st.generic.total, st.generic_exceptional
        );
        if st.null_cone == nilgeo::geodesic::NullCone::Empty {
            s += "null cone: empty (definite metric)\n";
        } else {
            s += &format!("null samples: {}/{} solvable\n", st.null.solvable, st.null.total);
        }
        s += &format!(
            "lattice probe: {}/{} non-null, {}/{} null solvable\n",
            st.lattice_nonnull.solvable, st.lattice_nonnull.total, st.lattice_null.solvable, st.lattice_null.total
        );
        for w in verdict.witnesses.iter().filter(|w| !w.solution.is_geodesic()) {
            s += &format!(
                "witness ({}{}): {} not geodesic\n",
                w.kind.label(),
                if w.null { ", null" } else { "" },
                fmt_vec(&w.y)
            );
        }
        s
    });
    Ok(ok)
}

fn flow_compare(
    path: &Path,
    vector: &str,
    dt: f64,
    horizon: f64,
    tol: f64,
    csv: Option<&Path>,
    json: bool,
) -> CmdResult {
    let (file, alg) = load(path)?;
    let y = parse_vector(vector, alg.dim())?;
    let model = FlowModel::<f64>::new(&alg).map_err(|e| input_err(e.to_string()))?;
    let split = alg.split_v_z().map_err(|e| input_err(e.to_string()))?;
    let dera = skew_basis(&alg);
    let sol = solve_geodesic_system(&alg, &split, &dera, &y);
    let (Some(xi), Some(k)) = (sol.xi(), sol.k()) else {
        let report = Report::new("flow compare", &file, None, json!({ "solution": solution_json(&sol) }));
        emit(json, &report, || "NotGeodesic: nothing to compare\n".to_string());
        return Ok(false);
    };
    let d = flow::rational_matrix_to_f64(&dera.combine(xi));
    let yf = flow::rational_vec_to_f64(&y);
    let kf = rational_to_f64(k);
    let dev = flow::orbit_geodesic_deviation(&model, &d, &yf, kf, horizon, dt).map_err(|e| input_err(e.to_string()))?;
    if let Some(p) = csv {
        let orbit = flow::integrate_orbit(&model, &d, &yf, horizon, dt).map_err(|e| input_err(e.to_string()))?;
        let f = fs::File::create(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?;
        orbit.write_csv(f).map_err(|e| input_err(e.to_string()))?;
    }
    let ok = dev.max_deviation < tol;
    let result = json!({
        "solution": solution_json(&sol),
        "k": format_rational(k),
        "dt": dt,
        "T": horizon,
        "tol": tol,
        "max_deviation": dev.max_deviation,
        "worst_t": dev.worst_t,
        "s_end": dev.s_end,
        "within_tolerance": ok,
    });
    let report = Report::new("flow compare", &file, None, result);
    emit(json, &report, || {
        format!(
            "k = {}\nxi = {}\nmax deviation {:e} at t = {} (s(T) = {})\n{}\n",
            format_rational(k),
            fmt_vec(xi),
            dev.max_deviation,
            dev.worst_t,
            dev.s_end,
            if ok { "within tolerance" } else { "tolerance exceeded" }
        )
    });
    Ok(ok)
}

fn limit_scan(path: &Path, vector: &str, t: &str, json: bool) -> CmdResult {
    let (file, alg) = load(path)?;
    if !fixtures::paper6_e().same_structure(&alg) {
        return Err(input_err("limit-scan needs the paper6_e algebra (e-basis)"));
    }
    let y = parse_vector(vector, 6)?;
    match classify_v_membership(&y) {
        Ok(VMembership::U) | Err(_) => return Err(input_err("the vector must satisfy <X, X> = 0")),
        _ => {}
    }
    let ts = parse_list(t, "--t")?;
    if ts.iter().any(|t| *t <= rat(0, 1)) {
        return Err(input_err("--t values must be positive"));
    }
    let scan = flow::xi3_limit_scan(&y, &ts);
    let result = json!({
        "vector": rationals(&y),
        "samples": scan.iter().map(|s| json!({
            "t": format_rational(&s.t),
            "xi3": s.xi3,
            "exact": s.exact,
            "in_u": s.in_u,
        })).collect::<Vec<_>>(),
    });
    let report = Report::new("limit-scan", &file, None, result);
    emit(json, &report, || {
        let mut s = String::from("t\txi3\tin U\n");
        for p in &scan {
            s += &format!("{}\t{:.9e}\t{}\n", format_rational(&p.t), p.xi3, p.in_u);
        }
        s
    });
    Ok(scan.iter().all(|s| s.in_u))
}

fn catalog(name: Option<&str>, json: bool) -> CmdResult {
    match name {
        Some(n) => {
            let f = fixtures::fixture(n).ok_or_else(|| input_err(format!("no fixture named {n}")))?;
            print!("{}", AlgebraFile::from_algebra(&f.algebra).to_json());
        }
        None if json => {
            let all: Vec<AlgebraFile> = fixtures::catalog()
                .iter()
                .map(|f| AlgebraFile::from_algebra(&f.algebra))
                .collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("plain data"));
        }
        None => {
            for f in fixtures::catalog() {
                println!("{:<26}{}", f.name, f.description);
            }
        }
    }
    Ok(true)
}
