//! End-to-end acceptance checks. Each test prints one `criterion N ... PASS`
//! or `FAIL` line to the real stdout, so the verdicts show up even when the
//! harness captures output.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{breaks, ls_slope};
use ewape::cli::{compare, first_column, run_method, CompareRow, Method, Overrides, ScenarioSet, DECAY_FIRST_ROW};
use ewape::eigensolver::{compute_spectrum, det_d_check, sine_approx_error, EigenMode};
use ewape::expansion::{
    evaluate_solution, fit_decay, project_initial, project_initial_quadrature, truncate, InitialCondition,
    ModalExpansion,
};
use ewape::model::presets;
use ewape::oracle::{dense_eigenvalues, fd_matrix};
use ewape::{PiecewiseWavenumber, SolverConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {n:>2} {name} ... {verdict} ({detail})\n");
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(pass, "criterion {n} {name}: {detail}");
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn modes(pw: &PiecewiseWavenumber, m: usize) -> Vec<EigenMode> {
    compute_spectrum(pw, m, &cfg()).unwrap().modes
}

fn standard() -> [(&'static str, PiecewiseWavenumber); 3] {
    [("alpha1", presets::alpha1()), ("alpha2", presets::alpha2()), ("alpha3", presets::alpha3())]
}

fn cache_dir() -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join("ewape-cache")
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

#[test]
fn c01_constant_coefficient_exactness() {
    let start = Instant::now();
    let cases = [
        PiecewiseWavenumber::constant(2.0).unwrap(),
        PiecewiseWavenumber::new(vec![2.0; 3], vec![0.3, 0.7]).unwrap(),
        PiecewiseWavenumber::new(vec![1.3; 3], vec![0.1, 0.55]).unwrap(),
    ];
    let zs: Vec<f64> = (0..1000).map(|i| PI * i as f64 / 999.0).collect();
    let (mut lam_err, mut fn_err) = (0.0f64, 0.0f64);
    for pw in &cases {
        let c2 = pw.alpha_sq(0);
        for m in modes(pw, 100) {
            let j = m.index as f64;
            lam_err = lam_err.max((m.lambda - (c2 - j * j)).abs());
            let phase = m.phase().conj();
            for &z in &zs {
                fn_err = fn_err.max((m.eval(z) * phase - Complex64::new((j * z).sin(), 0.0)).norm());
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = lam_err <= 1e-10 && fn_err <= 1e-9 && elapsed < Duration::from_secs(1);
    report(
        1,
        "constant-coefficient exactness",
        pass,
        &format!("max |λ − (c² − j²)| = {lam_err:.1e}, max |V − sin jz| = {fn_err:.1e}, {elapsed:.2?}"),
    );
}

/// Worst Richardson ratio distance from the band and the ratios, for the
/// first ten eigenvalues on N = 511, 1023, 2047.
fn richardson(pw: &PiecewiseWavenumber) -> (bool, f64, f64) {
    let exact = modes(pw, 20);
    let levels: Vec<Vec<f64>> = [511, 1023, 2047]
        .iter()
        .map(|&n| dense_eigenvalues(&fd_matrix(pw, n).to_dense()).unwrap())
        .collect();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (j, m) in exact.iter().enumerate().take(10) {
        let e: Vec<f64> = levels.iter().map(|l| (l[j] - m.lambda).abs()).collect();
        for ratio in [e[0] / e[1], e[1] / e[2]] {
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    ((3.0..=5.0).contains(&lo) && (3.0..=5.0).contains(&hi), lo, hi)
}

#[test]
fn c02_oracle_spectral_agreement() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, pw) in standard() {
        let (ok, lo, hi) = richardson(&pw);
        pass &= ok;
        detail.push(format!("{name} ratios [{lo:.2}, {hi:.2}]"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    detail.push(format!("{elapsed:.1?}"));
    report(2, "oracle spectral agreement", pass, &detail.join(", "));
}

#[test]
fn c03_mode_quality() {
    let (mut cont, mut bdry, mut orth) = (0.0f64, 0.0f64, 0.0f64);
    for (_, pw) in standard() {
        let ms = modes(&pw, 100);
        let b = breaks(&pw);
        for m in &ms {
            let sup = m.sup_norm();
            let slope_scale = sup * m.omegas.iter().map(|w| w.norm()).fold(1.0, f64::max);
            bdry = bdry.max(m.eval(PI).norm() / sup).max(m.eval(0.0).norm() / sup);
            for (p, &z) in b[1..b.len() - 1].iter().enumerate() {
                cont = cont.max((m.eval_piece(p, z) - m.eval_piece(p + 1, z)).norm() / sup);
                cont = cont.max((m.derivative_piece(p, z) - m.derivative_piece(p + 1, z)).norm() / slope_scale);
            }
        }
        // Per-piece Simpson nodes, shared by every pair.
        let panels = 4000;
        let mut nodes = Vec::new();
        for w in b.windows(2) {
            let h = (w[1] - w[0]) / panels as f64;
            for i in 0..=panels {
                let wt = if i == 0 || i == panels { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                nodes.push((w[0] + i as f64 * h, wt * h / 3.0));
            }
        }
        let vals: Vec<Vec<Complex64>> = ms.iter().map(|m| nodes.iter().map(|&(z, _)| m.eval(z)).collect()).collect();
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let ip: Complex64 = nodes
                    .iter()
                    .enumerate()
                    .map(|(k, &(_, w))| vals[i][k].conj() * vals[j][k] * w)
                    .sum();
                orth = orth.max(ip.norm() / (ms[i].norm_sq * ms[j].norm_sq).sqrt());
            }
        }
    }
    let pass = cont <= 1e-9 && bdry <= 1e-9 && orth <= 1e-7;
    report(
        3,
        "mode quality",
        pass,
        &format!("continuity {cont:.1e}, boundary {bdry:.1e}, orthogonality {orth:.1e}"),
    );
}

#[test]
fn c04_block_determinant_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for (_, pw) in standard() {
        for _ in 0..100 {
            let w = Complex64::new(rng.gen_range(0.2..40.0), rng.gen_range(-0.5..0.5));
            let got = det_d_check(&pw, w).unwrap();
            let w2 = (pw.alpha_sq(1) - pw.alpha_sq(2) + w * w).sqrt();
            let want = w2 * w;
            // ω₂ is defined up to sign by its square.
            let err = (got - want).norm().min((got + want).norm()) / want.norm();
            worst = worst.max(err);
        }
    }
    report(4, "det(D) identity", worst <= 1e-10, &format!("max relative error {worst:.1e} over 300 draws"));
}

#[test]
fn c05_sine_error_decay() {
    let mut worst = f64::NEG_INFINITY;
    let mut detail = Vec::new();
    for (name, pw) in standard() {
        let pts: Vec<(f64, f64)> = (50..=500)
            .map(|j| ((j as f64).ln(), sine_approx_error(&pw, j).ln()))
            .collect();
        let slope = ls_slope(&pts);
        worst = worst.max(slope);
        detail.push(format!("{name} {slope:.2}"));
    }
    report(5, "E_j decay", worst <= -3.5, &format!("slopes {}", detail.join(", ")));
}

#[test]
fn c06_change_of_basis_decay() {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, pw) in [
        ("alpha1", presets::alpha1()),
        ("alpha2", presets::alpha2()),
        ("alpha2_steep", presets::alpha2_steep()),
    ] {
        let column = first_column(&pw, 127, &cfg()).unwrap();
        let fit = fit_decay(&column, DECAY_FIRST_ROW);
        let slope = fit.slope.unwrap_or(f64::NAN);
        pass &= (-3.6..=-2.4).contains(&slope);
        if name == "alpha1" {
            let zeros_small = fit.zero_rows.iter().all(|&r| column[r - 1].norm() <= 1e-10);
            pass &= fit.alternating_zeros && zeros_small;
            detail.push(format!("{name} slope {slope:.2}, alternating zeros {}", fit.alternating_zeros));
        } else {
            detail.push(format!("{name} slope {slope:.2}"));
        }
    }
    report(6, "G-matrix decay", pass, &detail.join(", "));
}

struct Table {
    preset: &'static str,
    sine: bool,
    rows: Vec<CompareRow>,
}

const CHAR_IC: &str = "char:0.7853981633974483,1.5707963267948966";

fn overrides(preset: &str, ic: &str, r_f: Vec<f64>, n: Vec<usize>) -> Overrides {
    Overrides {
        preset: Some(preset.into()),
        ic: Some(ic.into()),
        r_f: Some(r_f),
        n: Some(n),
        n_ref: Some(8191),
        cache_dir: Some(cache_dir()),
        ..Default::default()
    }
}

fn tables() -> &'static [Table] {
    static TABLES: OnceLock<Vec<Table>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut out = Vec::new();
        for preset in ["alpha1", "alpha2", "alpha3"] {
            for (sine, ic) in [(true, "sine:2"), (false, CHAR_IC)] {
                let o = overrides(preset, ic, vec![0.01, 0.1, 1.0], vec![127, 255, 511]);
                let (_, rows) = compare(&ScenarioSet::load(None, &o).unwrap(), 1).unwrap();
                out.push(Table { preset, sine, rows });
            }
        }
        out
    })
}

/// Target EigExp errors, rows r_f = 0.01, 0.1, 1 and columns N = 127,
/// 255, 511.
fn target_errors(preset: &str, sine: bool) -> [[f64; 3]; 3] {
    match (preset, sine) {
        ("alpha1", true) => [[1.4e-4, 6.5e-6, 7.4e-6], [7.3e-5, 1.8e-5, 1.8e-5], [1.1e-4; 3]],
        ("alpha1", false) => [[2.8e-1, 1.8e-1, 9.2e-2], [4.3e-2, 2.1e-2, 1.0e-2], [2.5e-2, 1.2e-2, 6.1e-3]],
        ("alpha2", true) => [[1.2e-5, 1.4e-5, 1.6e-5], [6.1e-5; 3], [3.2e-4; 3]],
        ("alpha2", false) => [[2.8e-1, 1.8e-1, 9.2e-2], [4.6e-2, 2.2e-2, 1.1e-2], [2.8e-2, 1.4e-2, 6.7e-3]],
        ("alpha3", true) => [[1.1e-5, 1.6e-5, 1.7e-5], [7.0e-5; 3], [4.1e-4; 3]],
        ("alpha3", false) => [[2.8e-1, 1.8e-1, 9.2e-2], [4.4e-2, 2.2e-2, 1.1e-2], [2.6e-2, 1.2e-2, 5.7e-3]],
        _ => unreachable!(),
    }
}

fn target_terms(preset: &str, sine: bool) -> [[f64; 3]; 3] {
    match (preset, sine) {
        ("alpha1", true) => [[120.0, 114.0, 114.0], [44.0; 3], [14.0; 3]],
        ("alpha2", true) => [[128.0, 127.0, 127.0], [47.0; 3], [14.0; 3]],
        ("alpha3", true) => [[110.0, 107.0, 106.0], [43.0; 3], [14.0; 3]],
        (_, false) => [[128.0, 256.0, 512.0], [104.0, 97.0, 97.0], [17.0; 3]],
        _ => unreachable!(),
    }
}

fn cell(rows: &[CompareRow], r: usize, n: usize) -> &CompareRow {
    &rows[3 * r + n]
}

#[test]
fn c07_table_errors() {
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    for t in tables() {
        let target = target_errors(t.preset, t.sine);
        for (r, row) in target.iter().enumerate() {
            for (n, &want) in row.iter().enumerate() {
                let got = cell(&t.rows, r, n).eigexp_error;
                let ratio = got / want;
                worst_ratio = worst_ratio.max(ratio.max(if t.sine { 0.0 } else { 1.0 / ratio }));
                let mut ok = ratio <= 10.0;
                if !t.sine {
                    ok &= ratio >= 0.1;
                }
                if t.preset == "alpha1" && !t.sine && r == 0 {
                    ok &= (0.5..=2.0).contains(&ratio);
                }
                if !ok {
                    failures.push(format!("{}/{}/{r}/{n}: {got:.1e} vs {want:.1e}", t.preset, t.sine));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("54 cells, worst factor {worst_ratio:.2}")
    } else {
        failures.join("; ")
    };
    report(7, "table reproduction (errors)", failures.is_empty(), &detail);
}

#[test]
fn c08_table_terms() {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for t in tables() {
        let target = target_terms(t.preset, t.sine);
        for (r, row) in target.iter().enumerate() {
            for (n, &want) in row.iter().enumerate() {
                let got = cell(&t.rows, r, n).eigexp_terms as f64;
                let dev = (got - want).abs() / want;
                worst = worst.max(dev);
                if dev > 0.5 {
                    failures.push(format!("{}/{}/{r}/{n}: {got} vs {want}", t.preset, t.sine));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("54 cells, worst deviation {:.0}%", 100.0 * worst)
    } else {
        failures.join("; ")
    };
    report(8, "table reproduction (terms)", failures.is_empty(), &detail);
}

#[test]
fn c09_grid_size_independence() {
    // Eigenpair stage: the same call made in scenarios of each grid size.
    // Sizes are timed round-robin so slow spells of the machine hit all
    // three alike.
    let mut spread = 0.0f64;
    for (_, pw) in standard() {
        let mut samples = vec![Vec::new(); 3];
        for _ in 0..21 {
            for s in samples.iter_mut() {
                let t = Instant::now();
                std::hint::black_box(compute_spectrum(&pw, 100, &cfg()).unwrap());
                s.push(t.elapsed().as_secs_f64());
            }
        }
        let times: Vec<f64> = samples.into_iter().map(median).collect();
        let lo = times.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = times.iter().copied().fold(0.0, f64::max);
        spread = spread.max(hi / lo - 1.0);
    }

    let mut min_speedup = f64::INFINITY;
    for preset in ["alpha1", "alpha2", "alpha3"] {
        for ic in ["sine:2", CHAR_IC] {
            for r in [0.01, 0.1, 1.0] {
                let set = ScenarioSet::load(None, &overrides(preset, ic, vec![r], vec![511])).unwrap();
                let sc = set.single().unwrap();
                let (mut eig, mut schur) = (Vec::new(), Vec::new());
                for _ in 0..3 {
                    eig.push(run_method(sc, Method::Eigexp).unwrap().2);
                    schur.push(run_method(sc, Method::SchurRef).unwrap().2);
                }
                min_speedup = min_speedup.min(median(schur) / median(eig));
            }
        }
    }
    let pass = spread <= 0.2 && min_speedup >= 10.0;
    report(
        9,
        "grid-size independence",
        pass,
        &format!(
            "eigenpair time spread {:.1}%, slowest eigexp vs schur_ref at N = 511 {min_speedup:.1}x",
            100.0 * spread
        ),
    );
}

#[test]
fn c10_reconstruction_at_zero_range() {
    let cfg = cfg();
    let ic = InitialCondition::sine(2).unwrap();
    let zs: Vec<f64> = (0..=1000).map(|i| PI * i as f64 / 1000.0).collect();
    let mut worst = 0.0f64;
    let mut used = Vec::new();
    for (_, pw) in standard() {
        let ms = modes(&pw, cfg.m_max);
        let fj = project_initial(&ms, &ic, &cfg);
        let m = truncate(&ms, &fj, 0.0, 1e-8);
        used.push(m);
        let exp = ModalExpansion::new(ms, fj, 1.0).truncated(m);
        let err = zs
            .iter()
            .zip(evaluate_solution(&exp, &zs, 0.0))
            .map(|(z, u)| (u - Complex64::new((2.0 * z).sin(), 0.0)).norm())
            .fold(0.0, f64::max);
        worst = worst.max(err);
    }
    report(
        10,
        "r = 0 reconstruction",
        worst <= 1e-6,
        &format!("sup error {worst:.1e} with {used:?} terms"),
    );
}

#[test]
fn c11_dual_path_projection() {
    let cfg = cfg();
    let mut worst = 0.0f64;
    for (_, pw) in standard() {
        let ms = modes(&pw, 100);
        for ic in [InitialCondition::sine(2).unwrap(), InitialCondition::default_characteristic()] {
            let gb = project_initial(&ms, &ic, &cfg);
            let quad = project_initial_quadrature(&ms, &ic, &cfg);
            let diff: f64 = gb.iter().zip(&quad).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            let norm: f64 = quad.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(diff / norm);
        }
    }
    report(11, "dual-path projection", worst <= 1e-6, &format!("max relative l2 difference {worst:.1e}"));
}

#[test]
fn c12_n_piece_generalization() {
    let three = presets::alpha1();
    let split = PiecewiseWavenumber::new(vec![2.0, 1.0, 1.0, 1.0, 2.0], vec![1.0 / 3.0, 4.0 / 9.0, 5.0 / 9.0, 2.0 / 3.0])
        .unwrap();
    let invariance = modes(&three, 100)
        .iter()
        .zip(modes(&split, 100))
        .map(|(a, b)| (a.lambda - b.lambda).abs() / a.lambda.abs().max(1.0))
        .fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let alphas: Vec<f64> = (0..5).map(|_| rng.gen_range(0.5..4.0)).collect();
    let mut ks: Vec<usize> = rand::seq::index::sample(&mut rng, 63, 4).into_iter().map(|k| k + 1).collect();
    ks.sort_unstable();
    let rhos = ks.iter().map(|&k| k as f64 / 64.0).collect();
    let random = PiecewiseWavenumber::new(alphas, rhos).unwrap();
    let (ok, lo, hi) = richardson(&random);

    report(
        12,
        "n-piece generalization",
        invariance <= 1e-9 && ok,
        &format!(
            "split vs 3-piece {invariance:.1e}, random 5-piece {:?}/{:?} ratios [{lo:.2}, {hi:.2}]",
            random.alphas().iter().map(|a| (a * 100.0).round() / 100.0).collect::<Vec<_>>(),
            ks
        ),
    );
}
