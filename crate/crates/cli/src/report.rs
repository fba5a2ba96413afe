//! Report assembly and persistence: JSON documents with snake_case keys and
//! complex numbers as [re, im] pairs, CSV with LF endings and 17 significant
//! digits.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

use qes_spectral::dual_hahn::{self, HahnParams};
use qes_spectral::eigensolver::{self, SpectrumReport};
use qes_spectral::error::{Error, Result};
use qes_spectral::hofstadter::ButterflySweep;
use qes_spectral::q_hahn::{self, QHahnMode, QHahnParams};
use qes_spectral::schrodinger::{self, GridSpec, SchrodingerDomain, SchrodingerProblem};
use qes_spectral::selftest::{CriterionOutcome, Tolerances};
use qes_spectral::tridiagonal::TridiagonalOperator;
use qes_spectral::verify;

pub enum FamilyParams {
    Hahn(HahnParams),
    Qhahn(QHahnParams),
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn family_metadata(params: &FamilyParams, seed: u64) -> Map<String, Value> {
    let mut meta = Map::new();
    meta.insert("seed".into(), json!(seed));
    match params {
        FamilyParams::Hahn(p) => {
            meta.insert("family".into(), json!("hahn"));
            meta.insert("n".into(), json!(p.n()));
            meta.insert("gamma".into(), json!(p.gamma()));
            meta.insert("delta".into(), json!(p.delta()));
        }
        FamilyParams::Qhahn(p) => {
            let family = match p.mode() {
                QHahnMode::RootOfUnity { .. } => "qhahn-rou",
                QHahnMode::General => "qhahn-general",
            };
            meta.insert("family".into(), json!(family));
            meta.insert("n".into(), json!(p.n()));
            if let QHahnMode::RootOfUnity { s } = p.mode() {
                meta.insert("s".into(), json!(s));
            }
            meta.insert("a".into(), complex_pair(p.a()));
            meta.insert("b".into(), complex_pair(p.b()));
            meta.insert("c".into(), complex_pair(p.c()));
            meta.insert("q".into(), complex_pair(p.q()));
        }
    }
    meta
}

fn perturbed(t: &TridiagonalOperator) -> TridiagonalOperator {
    let mut main = t.main().to_vec();
    main[0] += Complex64::new(1e-3 * (1.0 + t.scale()), 0.0);
    TridiagonalOperator::new(main, t.sub().to_vec(), t.sup().to_vec()).expect("still valid")
}

/// Closed-form spectrum vs oracle for the chosen family, with a parameter
/// echo in the metadata.
pub fn spectrum_report(
    params: &FamilyParams,
    tol: &Tolerances,
    seed: u64,
    inject_error: bool,
) -> Result<SpectrumReport> {
    let (matrix, closed) = match params {
        FamilyParams::Hahn(p) => (
            dual_hahn::build_recurrence_matrix(p),
            dual_hahn::eigenvalues_closed_form(p)
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        ),
        FamilyParams::Qhahn(p) => {
            let m = match p.mode() {
                QHahnMode::RootOfUnity { .. } => q_hahn::build_q_matrix_root_of_unity(p)?,
                QHahnMode::General => q_hahn::build_q_matrix_general(p)?,
            };
            (m, q_hahn::spectrum_closed_form(p))
        }
    };
    let matrix = if inject_error { perturbed(&matrix) } else { matrix };
    let oracle = eigensolver::eigenvalues(&matrix)?;
    let max_mag = closed.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pair_tol = tol.get("eigen") * (1.0 + max_mag);
    let mut report = eigensolver::compare_spectra(&closed, &oracle, pair_tol)?;
    report.metadata = family_metadata(params, seed);
    if inject_error {
        report.metadata.insert("inject_error".into(), json!(true));
    }
    Ok(report)
}

pub fn verify_report(
    params: &FamilyParams,
    tol: &Tolerances,
    seed: u64,
    inject_error: bool,
) -> Result<(Value, bool)> {
    let checks = match params {
        FamilyParams::Hahn(p) => verify::verify_hahn(p, tol, inject_error)?,
        FamilyParams::Qhahn(p) => verify::verify_qhahn(p, tol, inject_error)?,
    };
    let all_passed = checks.iter().all(|c| c.passed);
    let mut doc = Map::new();
    for (k, v) in family_metadata(params, seed) {
        doc.insert(k, v);
    }
    if inject_error {
        doc.insert("inject_error".into(), json!(true));
    }
    doc.insert(
        "checks".into(),
        Value::Array(
            checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "value": c.value,
                        "tolerance": c.tolerance,
                        "passed": c.passed,
                    })
                })
                .collect(),
        ),
    );
    doc.insert("passed".into(), json!(all_passed));
    Ok((Value::Object(doc), all_passed))
}

// ───────────────────────── emission ─────────────────────────

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::InvalidParameter(format!("stdout: {e}")))
        }
    }
}

pub fn emit_json(doc: &Value, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable");
    text.push('\n');
    write_output(path, text.as_bytes())
}

pub fn emit_spectrum(report: &SpectrumReport, path: Option<&Path>, csv: bool) -> Result<()> {
    if csv {
        let mut out = String::from("closed_re,closed_im,oracle_re,oracle_im,pairing_distance\n");
        for i in 0..report.closed_form.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                report.closed_form[i][0],
                report.closed_form[i][1],
                report.oracle[i][0],
                report.oracle[i][1],
                report.pairing_distances[i],
            ));
        }
        write_output(path, out.as_bytes())
    } else {
        let doc = serde_json::to_value(report).expect("serializable");
        emit_json(&doc, path)
    }
}

pub fn emit_butterfly(sweep: &ButterflySweep, path: Option<&Path>) -> Result<()> {
    let mut bytes = Vec::new();
    qes_spectral::hofstadter::write_butterfly_csv(&sweep.points, &mut bytes)
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    write_output(path, &bytes)
}

/// CSV of (y, V, ψ_0..ψ_N) plus a JSON sidecar with predicates, energies and
/// normalization constants. The sidecar lands next to the CSV as
/// `<out>.json`, or on stderr when the CSV goes to stdout.
pub fn emit_schrodinger(
    params: HahnParams,
    domain: SchrodingerDomain,
    grid: GridSpec,
    path: Option<&Path>,
) -> Result<()> {
    let problem = SchrodingerProblem::new(params, domain, grid)?;
    let n = params.n() as i32;

    let mut csv = String::from("y,potential");
    for m in 0..=n {
        csv.push_str(&format!(",psi_{m}"));
    }
    csv.push('\n');
    for y in grid.points() {
        csv.push_str(&format!("{y:.16e},{:.16e}", schrodinger::potential(y, &params)?));
        for m in 0..=n {
            csv.push_str(&format!(",{:.16e}", problem.eigenfunction(m, y)?));
        }
        csv.push('\n');
    }

    let levels: Vec<Value> = (0..=n)
        .map(|m| {
            let (full, half) = schrodinger::integrability_predicates(&params, m);
            json!({
                "m": m,
                "energy": schrodinger::energy(m, &params),
                "full_line": full,
                "half_line": half,
                "normalization": problem.normalization(m),
            })
        })
        .collect();
    let sidecar = json!({
        "family": "hahn",
        "n": params.n(),
        "gamma": params.gamma(),
        "delta": params.delta(),
        "domain": match domain {
            SchrodingerDomain::FullLine => "full_line",
            SchrodingerDomain::HalfLine => "half_line",
        },
        "potential_asymptote": schrodinger::potential_asymptote(&params),
        "levels": levels,
    });
    let sidecar_text = format!("{}\n", serde_json::to_string_pretty(&sidecar).expect("json"));

    match path {
        Some(p) => {
            write_output(Some(p), csv.as_bytes())?;
            let sidecar_path = p.with_extension(match p.extension() {
                Some(ext) => format!("{}.json", ext.to_string_lossy()),
                None => "json".into(),
            });
            write_output(Some(&sidecar_path), sidecar_text.as_bytes())
        }
        None => {
            write_output(None, csv.as_bytes())?;
            eprint!("{sidecar_text}");
            Ok(())
        }
    }
}

pub fn emit_selftest_json(outcomes: &[CriterionOutcome], seed: u64, path: &Path) -> Result<()> {
    let doc = json!({
        "seed": seed,
        "passed": outcomes.iter().all(|o| o.passed),
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed,
            "detail": o.detail,
        })).collect::<Vec<_>>(),
    });
    emit_json(&doc, Some(path))
}
