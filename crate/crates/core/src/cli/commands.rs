use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::scenario::{Method, Scenario, ScenarioSet};
use crate::eigensolver::{compute_spectrum, SpectrumResult};
use crate::error::{Error, Result};
use crate::expansion::{change_of_basis_rect, fit_decay, solve_on_grid, DecayFit};
use crate::model::{PiecewiseWavenumber, SolverConfig};
use crate::oracle::{grid_stride, relative_error, schur_solve, DecompositionCache, GridSolution, ReferenceSolver};

/// Spectrum size when none is given.
pub const DEFAULT_SPECTRUM_SIZE: usize = 100;

/// Reference grid used by `compare` when the scenario names none.
pub const DEFAULT_COMPARE_N_REF: usize = 8191;

/// Rows before this one are left out of the decay fit.
pub const DECAY_FIRST_ROW: usize = 5;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut body = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    body.push('\n');
    write_file(dir, name, &body)
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// `j, lambda, sign, omega_n_re, omega_n_im, secant_iters, det_residual`.
pub fn spectrum_csv(res: &SpectrumResult) -> String {
    let mut out = String::from("j,lambda,sign,omega_n_re,omega_n_im,secant_iters,det_residual\n");
    for (mode, diag) in res.modes.iter().zip(&res.diagnostics) {
        let sign = if mode.lambda > 0.0 {
            1
        } else if mode.lambda < 0.0 {
            -1
        } else {
            0
        };
        let w = mode.omegas[mode.omegas.len() - 1];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            mode.index,
            num(mode.lambda),
            sign,
            num(w.re),
            num(w.im),
            diag.secant_iters,
            num(diag.det_residual)
        );
    }
    out
}

/// Computes `m` eigenpairs (the scenario's `terms`, else 100) and writes
/// `spectrum.csv`.
pub fn cmd_spectrum(sc: &Scenario) -> Result<SpectrumResult> {
    let m = sc.terms.unwrap_or(DEFAULT_SPECTRUM_SIZE);
    let res = compute_spectrum(&sc.pw, m, &sc.cfg)?;
    write_file(&sc.out_dir, "spectrum.csv", &spectrum_csv(&res))?;
    Ok(res)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub method: Method,
    #[serde(rename = "N")]
    pub n: usize,
    pub r_f: f64,
    pub terms: usize,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_vs_reference: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub solution: GridSolution,
    pub summary: SolveSummary,
}

/// Runs one method on the scenario grid, timed from geometry to field.
pub fn run_method(sc: &Scenario, method: Method) -> Result<(GridSolution, usize, f64)> {
    let start = Instant::now();
    let (solution, terms) = match method {
        Method::Eigexp => {
            let g = solve_on_grid(&sc.pw, &sc.ic, sc.n, sc.r_f, &sc.cfg, sc.terms)?;
            (g.solution, g.terms)
        }
        Method::SchurRef => (schur_solve(&sc.pw, &sc.ic, sc.n, sc.r_f, sc.cfg.sign())?, sc.n),
    };
    Ok((solution, terms, elapsed_ms(start)))
}

/// Fine-grid solver for the scenario geometry, through the on-disk cache
/// when one is configured.
pub fn reference_solver(pw: &PiecewiseWavenumber, n_ref: usize, cache_dir: Option<&Path>) -> Result<ReferenceSolver> {
    match cache_dir {
        Some(dir) => ReferenceSolver::with_cache(pw, n_ref, &DecompositionCache::new(dir)?),
        None => ReferenceSolver::new(pw, n_ref),
    }
}

/// Solves without writing anything.
pub fn solve(sc: &Scenario) -> Result<SolveOutput> {
    sc.validate()?;
    if let Some(n_ref) = sc.n_ref {
        grid_stride(sc.n, n_ref)?;
    }
    let (solution, terms, wall_time_ms) = run_method(sc, sc.method)?;
    let error_vs_reference = match sc.n_ref {
        Some(n_ref) => {
            let reference = reference_solver(&sc.pw, n_ref, sc.cache_dir.as_deref())?;
            Some(relative_error(&solution, &reference.solve(&sc.ic, sc.r_f, sc.cfg.sign()))?)
        }
        None => None,
    };
    Ok(SolveOutput {
        solution,
        summary: SolveSummary {
            method: sc.method,
            n: sc.n,
            r_f: sc.r_f,
            terms,
            wall_time_ms,
            error_vs_reference,
        },
    })
}

/// `z, re_u, im_u, abs_u`.
pub fn solution_csv(sol: &GridSolution) -> String {
    let mut out = String::from("z,re_u,im_u,abs_u\n");
    for (z, u) in sol.points().iter().zip(&sol.values) {
        let _ = writeln!(out, "{},{},{},{}", num(*z), num(u.re), num(u.im), num(u.norm()));
    }
    out
}

/// Writes `solution.csv` and `summary.json`.
pub fn cmd_solve(sc: &Scenario) -> Result<SolveOutput> {
    let out = solve(sc)?;
    write_file(&sc.out_dir, "solution.csv", &solution_csv(&out.solution))?;
    write_json(&sc.out_dir, "summary.json", &out.summary)?;
    Ok(out)
}

/// One line of the timing/accuracy table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub r_f: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub eigexp_time_ms: f64,
    pub eigexp_terms: usize,
    pub eigexp_error: f64,
    pub schur_ref_time_ms: f64,
    pub schur_ref_terms: usize,
    pub schur_ref_error: f64,
}

#[derive(Debug, Serialize)]
struct CompareJson<'a> {
    #[serde(rename = "N_ref")]
    n_ref: usize,
    rows: &'a [CompareRow],
}

/// Runs both methods on every scenario of the set and measures them against
/// one shared reference. Scenarios are spread over `jobs` threads; rows come
/// back ordered by `(r_f, N)`.
pub fn compare(set: &ScenarioSet, jobs: usize) -> Result<(usize, Vec<CompareRow>)> {
    let first = set
        .scenarios
        .first()
        .ok_or_else(|| Error::Config("empty scenario set".into()))?;
    for s in &set.scenarios {
        if s.pw != first.pw || s.ic != first.ic {
            return Err(Error::Config("compared scenarios must share alphas, rhos and ic".into()));
        }
    }
    let n_ref = first.n_ref.unwrap_or(DEFAULT_COMPARE_N_REF);
    for s in &set.scenarios {
        grid_stride(s.n, n_ref)?;
    }

    let reference = reference_solver(&first.pw, n_ref, first.cache_dir.as_deref())?;
    let samples = first.ic.sample(n_ref);
    let mut r_fs: Vec<f64> = set.scenarios.iter().map(|s| s.r_f).collect();
    r_fs.dedup();
    let references: Vec<(f64, GridSolution)> = r_fs
        .iter()
        .map(|&r| (r, reference.solve_samples(&samples, r, first.cfg.sign())))
        .collect();

    let run_one = |sc: &Scenario| -> Result<CompareRow> {
        let exact = &references.iter().find(|(r, _)| *r == sc.r_f).expect("reference for every r_f").1;
        let (eig, eig_terms, eig_ms) = run_method(sc, Method::Eigexp)?;
        let (schur, schur_terms, schur_ms) = run_method(sc, Method::SchurRef)?;
        Ok(CompareRow {
            r_f: sc.r_f,
            n: sc.n,
            eigexp_time_ms: eig_ms,
            eigexp_terms: eig_terms,
            eigexp_error: relative_error(&eig, exact)?,
            schur_ref_time_ms: schur_ms,
            schur_ref_terms: schur_terms,
            schur_ref_error: relative_error(&schur, exact)?,
        })
    };

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<CompareRow>>>> = Mutex::new((0..set.scenarios.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, set.scenarios.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(sc) = set.scenarios.get(i) else { break };
                let row = run_one(sc);
                results.lock().unwrap()[i] = Some(row);
            });
        }
    });

    let rows = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every scenario ran"))
        .collect::<Result<Vec<_>>>()?;
    Ok((n_ref, rows))
}

/// The deterministic columns of the table; timings go to `compare.json`.
pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("r_f,N,eigexp_terms,eigexp_error,schur_ref_terms,schur_ref_error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            num(r.r_f),
            r.n,
            r.eigexp_terms,
            num(r.eigexp_error),
            r.schur_ref_terms,
            num(r.schur_ref_error)
        );
    }
    out
}

/// Writes `compare.csv` and `compare.json` (the full table with times).
pub fn cmd_compare(set: &ScenarioSet, jobs: usize) -> Result<Vec<CompareRow>> {
    let (n_ref, rows) = compare(set, jobs)?;
    let dir = &set.scenarios[0].out_dir;
    write_file(dir, "compare.csv", &compare_csv(&rows))?;
    write_json(dir, "compare.json", &CompareJson { n_ref, rows: &rows })?;
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecaySummary {
    #[serde(rename = "N")]
    pub n: usize,
    /// Log–log slope of the upper envelope; `None` when too few entries
    /// are nonzero to fit.
    pub slope: Option<f64>,
    pub slope_defined: bool,
    pub alternating_zeros: bool,
    pub zero_entries: usize,
    pub fit_rows: usize,
    pub first_fit_row: usize,
}

/// `|⟨V_j, sin z⟩|` for `j = 1..=n`.
pub fn first_column(pw: &PiecewiseWavenumber, n: usize, cfg: &SolverConfig) -> Result<Vec<Complex64>> {
    let modes = compute_spectrum(pw, n, cfg)?.modes;
    Ok(change_of_basis_rect(&modes, 1).into_iter().map(|row| row[0]).collect())
}

pub fn decay_summary(n: usize, fit: &DecayFit) -> DecaySummary {
    DecaySummary {
        n,
        slope: fit.slope,
        slope_defined: fit.slope.is_some(),
        alternating_zeros: fit.alternating_zeros,
        zero_entries: fit.zero_rows.len(),
        fit_rows: fit.envelope_rows.len(),
        first_fit_row: DECAY_FIRST_ROW,
    }
}

/// `row_index, abs_entry`.
pub fn decay_csv(column: &[Complex64]) -> String {
    let mut out = String::from("row_index,abs_entry\n");
    for (i, g) in column.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, num(g.norm()));
    }
    out
}

/// First column of the change-of-basis matrix on `N` modes; writes
/// `decay.csv` and `decay.json`.
pub fn cmd_decay(sc: &Scenario) -> Result<DecaySummary> {
    let column = first_column(&sc.pw, sc.n, &sc.cfg)?;
    let summary = decay_summary(sc.n, &fit_decay(&column, DECAY_FIRST_ROW));
    write_file(&sc.out_dir, "decay.csv", &decay_csv(&column))?;
    write_json(&sc.out_dir, "decay.json", &summary)?;
    Ok(summary)
}
