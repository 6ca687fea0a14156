//! Acceptance criteria, one test per criterion. Each prints a single
//! `[PASS]`/`[FAIL]` line (visible with `--nocapture`) before asserting.

use std::process::Command;
use std::time::{Duration, Instant};

use dalembert::{
    certified_min, descend, descent_step, find_all_roots, find_root, growth_certificate,
    minimum_enclosing_square, Complex, Polynomial, SquareRegion,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, detail: String) {
    let status = if ok && elapsed <= limit { "PASS" } else { "FAIL" };
    println!(
        "[{status}] AC{id} {name}: {detail} ({:.3}s, limit {:.0}s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(ok, "AC{id} {name} failed: {detail}");
    assert!(elapsed <= limit, "AC{id} {name} exceeded its runtime limit");
}

fn unit_box_complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Magnitude log-uniform in `[lo, hi]`, uniform angle.
fn log_uniform_complex<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Complex {
    let r = (rng.random_range(lo.ln()..=hi.ln())).exp();
    let t = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
    Complex::new(r * t.cos(), r * t.sin())
}

fn annulus<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Complex {
    let r = rng.random_range(lo..=hi);
    let t = rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI);
    Complex::new(r * t.cos(), r * t.sin())
}

/// Degree exactly `deg`, coefficients uniform in the unit box.
fn random_poly<R: Rng>(rng: &mut R, deg: usize) -> Polynomial {
    let mut coeffs: Vec<Complex> = (0..=deg).map(|_| unit_box_complex(rng)).collect();
    while coeffs[deg].norm() < 1e-3 {
        coeffs[deg] = unit_box_complex(rng);
    }
    Polynomial::new(coeffs)
}

/// Σ aᵢ zⁱ by explicit powers, independent of Horner.
fn naive_eval(p: &Polynomial, z: Complex) -> Complex {
    let mut acc = Complex::ZERO;
    let mut power = Complex::ONE;
    for &a in p.coeffs() {
        acc += a * power;
        power *= z;
    }
    acc
}

fn max_coeff(p: &Polynomial) -> f64 {
    p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[test]
fn ac1_norm_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut failures = 0;
    let n = 100_000;
    for _ in 0..n {
        let x = log_uniform_complex(&mut rng, 1e-6, 1e6);
        let y = log_uniform_complex(&mut rng, 1e-6, 1e6);
        let (nx, ny) = (x.norm(), y.norm());
        let mult = ((x * y).norm() - nx * ny).abs() <= 1e-12 * (1.0 + nx * ny);
        let tri = (x + y).norm() <= nx + ny + 1e-12 * (1.0 + nx + ny);
        let rev = (x - y).norm() >= nx - ny - 1e-12 * (1.0 + nx + ny);
        if !(mult && tri && rev) {
            failures += 1;
        }
    }
    report(
        1,
        "norm laws",
        failures == 0,
        start.elapsed(),
        Duration::from_secs(1),
        format!("{n} pairs, {failures} violations"),
    );
}

#[test]
fn ac2_de_moivre_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let n = 10_000;
    for _ in 0..n {
        let z = log_uniform_complex(&mut rng, 1e-6, 1e6);
        let k = rng.random_range(1..=16u32);
        // oracle: repeated multiplication, not binary exponentiation
        let root = z.nth_root(k).unwrap();
        let mut back = Complex::ONE;
        for _ in 0..k {
            back *= root;
        }
        worst = worst.max((back - z).norm() / z.norm());
    }
    report(
        2,
        "de Moivre round trip",
        worst <= 1e-10,
        start.elapsed(),
        Duration::from_secs(1),
        format!("{n} samples, worst relative error {worst:.2e}"),
    );
}

#[test]
fn ac3_growth_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    let mut failures = 0;
    let n = 10_000;
    for _ in 0..n {
        let deg = rng.random_range(1..=10);
        let p = random_poly(&mut rng, deg);
        let cert = growth_certificate(&p).unwrap();
        let z = annulus(&mut rng, cert.threshold_radius, 10.0 * cert.threshold_radius);
        let scale = cert.lead_norm * z.norm().powi(cert.deg as i32);
        let value = naive_eval(&p, z).norm();
        let slack = 1e-9 * 1.5 * scale;
        if !(0.5 * scale <= value + slack && value <= 1.5 * scale + slack) {
            failures += 1;
        }
    }
    report(
        3,
        "growth lemma sandwich",
        failures == 0,
        start.elapsed(),
        Duration::from_secs(2),
        format!("{n} (p, z) samples, {failures} violations"),
    );
}

#[test]
fn ac4_enclosure_domination() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let mut failures = 0;
    let n = 10_000;
    for _ in 0..n {
        let deg = rng.random_range(1..=10);
        let p = random_poly(&mut rng, deg);
        let radius = growth_certificate(&p).unwrap().enclosure_radius;
        let z = annulus(&mut rng, radius, 10.0 * radius);
        let at_origin = p.coeffs()[0].norm();
        if naive_eval(&p, z).norm() < at_origin - 1e-9 * (1.0 + at_origin) {
            failures += 1;
        }
    }
    report(
        4,
        "enclosure domination",
        failures == 0,
        start.elapsed(),
        Duration::from_secs(2),
        format!("{n} samples outside the enclosure radius, {failures} violations"),
    );
}

#[test]
fn ac5_evt_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = 100;
    const DENSE: usize = 512;
    for case in 0..cases {
        let deg = rng.random_range(1..=6);
        let p = random_poly(&mut rng, deg);
        let corner = Complex::new(rng.random_range(-2.0..=1.0), rng.random_range(-2.0..=1.0));
        let side = rng.random_range(0.05..=2.0);
        let region = SquareRegion::new(corner, side).unwrap();
        let m = certified_min(&p, &region, 1e-10, 2_000_000).unwrap();
        // oracle: 512 × 512 dense sampling with the naive evaluator
        let mut oracle = f64::INFINITY;
        for j in 0..DENSE {
            for i in 0..DENSE {
                let z = Complex::new(
                    corner.re + side * i as f64 / (DENSE - 1) as f64,
                    corner.im + side * j as f64 / (DENSE - 1) as f64,
                );
                oracle = oracle.min(naive_eval(&p, z).norm());
            }
        }
        let sound = oracle >= m.value - m.gap - 1e-9;
        let tight = m.value <= oracle + 1e-9;
        if !(sound && tight && region.contains(m.argmin)) {
            failures.push((case, m.value, m.gap, oracle));
        }
    }
    report(
        5,
        "grid-minimum certificate",
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(30),
        format!("{cases} (p, region) cases vs 512² oracle, failures {failures:?}"),
    );
}

#[test]
fn ac6_descent_decrease() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let mut step_failures = 0;
    let mut trace_failures = 0;
    let mut checked = 0;
    while checked < 1000 {
        let deg = rng.random_range(1..=10);
        let p = random_poly(&mut rng, deg);
        let z0 = Complex::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
        let before = naive_eval(&p, z0).norm();
        if before <= 1e-6 {
            continue;
        }
        checked += 1;
        match descent_step(&p, z0) {
            Ok(step) => {
                let after = naive_eval(&p, step.point).norm();
                if !(step.after < step.before && after < before * (1.0 + 1e-12)) {
                    step_failures += 1;
                }
            }
            Err(_) => step_failures += 1,
        }
        let r = descend(&p, z0, 1e-10, 50).unwrap();
        let trace = r.trace.unwrap();
        if !trace.windows(2).all(|w| w[1].residual < w[0].residual) {
            trace_failures += 1;
        }
    }
    report(
        6,
        "descent decrease",
        step_failures == 0 && trace_failures == 0,
        start.elapsed(),
        Duration::from_secs(5),
        format!("{checked} starts, {step_failures} non-decreasing steps, {trace_failures} non-monotone traces"),
    );
}

#[test]
fn ac7_fta_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    let mut root_failures = Vec::new();
    let mut recon_failures = Vec::new();
    let mut worst_recon: f64 = 0.0;
    let cases = 200;
    for case in 0..cases {
        let deg = 1 + case % 10;
        let p = random_poly(&mut rng, deg);
        let bound = 1e-8 * (1.0 + max_coeff(&p));
        let r = find_root(&p, bound, 10_000).unwrap();
        let residual = naive_eval(&p, r.root).norm();
        if !(r.converged && residual <= bound) {
            root_failures.push((case, deg, residual));
        }
        if deg <= 8 {
            let report = find_all_roots(&p, 1e-12 * (1.0 + max_coeff(&p)), 10_000).unwrap();
            let roots: Vec<Complex> = report.roots.iter().map(|r| r.root).collect();
            let separation = roots
                .iter()
                .enumerate()
                .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (*a - *b).norm()))
                .fold(f64::INFINITY, f64::min);
            let limit = if separation < 1e-3 { 1e-3 } else { 1e-6 };
            worst_recon = worst_recon.max(report.reconstruction_error);
            if roots.len() != deg || report.reconstruction_error > limit {
                recon_failures.push((case, deg, report.reconstruction_error));
            }
        }
    }
    report(
        7,
        "FTA suite",
        root_failures.is_empty() && recon_failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(20),
        format!(
            "{cases} polynomials; residual failures {root_failures:?}; reconstruction failures \
             {recon_failures:?}; worst reconstruction {worst_recon:.2e}"
        ),
    );
}

fn cli(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dalembert"))
        .args(args)
        .output()
        .expect("run dalembert binary");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn ac8_worked_example() {
    let start = Instant::now();
    let s13 = 13f64.sqrt();
    // quadratic formula for 3z² + iz + 1: z = (−i ± √(−1 − 12))/6 = i(−1 ± √13)/6
    let oracle = [Complex::new(0.0, (-1.0 + s13) / 6.0), Complex::new(0.0, (-1.0 - s13) / 6.0)];
    let p = Polynomial::parse("1 1i 3").unwrap();
    let r = find_root(&p, 1e-10, 10_000).unwrap();
    let root_err = oracle.iter().map(|w| (*w - r.root).norm()).fold(f64::INFINITY, f64::min);

    let (out, _, code) = cli(&["bounds", "1 1i 3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let radius = v["enclosure"]["enclosure_radius"].as_f64().unwrap();
    let (solve_out, _, solve_code) = cli(&["solve", "1 1i 3"]);
    let s: serde_json::Value = serde_json::from_str(&solve_out).unwrap();
    let cli_root = Complex::new(s["root"][0].as_f64().unwrap(), s["root"][1].as_f64().unwrap());
    let cli_err = oracle.iter().map(|w| (*w - cli_root).norm()).fold(f64::INFINITY, f64::min);

    let ok = r.converged
        && root_err <= 1e-8
        && code == 0
        && (radius - 4.0 / 3.0).abs() <= 1e-12
        && solve_code == 0
        && s["residual"].as_f64().unwrap() <= 1e-10
        && cli_err <= 1e-8;
    report(
        8,
        "worked example 1 + iz + 3z²",
        ok,
        start.elapsed(),
        Duration::from_secs(10),
        format!("root error {root_err:.2e}, cli root error {cli_err:.2e}, enclosure radius {radius}"),
    );
    let square = minimum_enclosing_square(&p).unwrap();
    assert!(oracle.iter().all(|w| square.contains(*w)));
}

#[test]
fn ac9_cli_contract() {
    let start = Instant::now();
    let mut problems = Vec::new();

    // parse/serialize round trip, exact to the bit
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let len = rng.random_range(1..=12);
        let coeffs: Vec<Complex> = (0..len)
            .map(|_| {
                let z = log_uniform_complex(&mut rng, 1e-300, 1e300);
                if rng.random_bool(0.1) { Complex::new(z.re, -0.0) } else { z }
            })
            .collect();
        let p = Polynomial::new(coeffs);
        let back = Polynomial::parse(&p.to_string()).unwrap();
        let exact = back.coeffs().iter().zip(p.coeffs()).all(|(a, b)| {
            a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
        });
        if !exact || back.len() != p.len() {
            problems.push(format!("round trip failed for {p}"));
            break;
        }
        let json = serde_json::to_string(&p).unwrap();
        if Polynomial::parse(&json).unwrap() != p {
            problems.push(format!("json round trip failed for {json}"));
            break;
        }
    }

    // exit codes
    let (_, _, code) = cli(&["solve", "1 1i 3"]);
    if code != 0 {
        problems.push(format!("solve exit {code}, want 0"));
    }
    let (_, err, code) = cli(&["solve", "7"]);
    if code != 1 || !err.contains("no root exists for nonzero constant") {
        problems.push(format!("solve 7 exit {code} stderr {err:?}"));
    }
    let (_, err, code) = cli(&["solve", "0 0"]);
    if code != 1 || !err.contains("all points are roots") {
        problems.push(format!("zero polynomial exit {code} stderr {err:?}"));
    }
    let (_, _, code) = cli(&["solve", "1 bogus"]);
    if code != 1 {
        problems.push(format!("parse error exit {code}"));
    }
    let (_, _, code) = cli(&["solve", "--max-iter", "0", "--tol", "1e-300", "1 1i 3"]);
    if code != 2 {
        problems.push(format!("not-converged exit {code}, want 2"));
    }

    // trace CSV schema
    let (csv, _, code) = cli(&["solve", "--format", "csv", "--trace", "1 1i 3"]);
    let mut lines = csv.lines();
    if code != 0 || lines.next() != Some("iter,re,im,residual,s,k") {
        problems.push(format!("bad csv header: {csv:?}"));
    }
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let well_formed = !rows.is_empty()
        && rows.iter().enumerate().all(|(i, r)| {
            r.len() == 6
                && r[0].parse::<usize>() == Ok(i)
                && r[1..5].iter().all(|x| x.parse::<f64>().is_ok())
                && r[5].parse::<usize>().is_ok()
        });
    if !well_formed {
        problems.push(format!("bad csv rows: {csv:?}"));
    }

    // deterministic output
    let a = cli(&["check", "1 1i 3"]);
    let b = cli(&["check", "1 1i 3"]);
    if a != b || a.2 != 0 {
        problems.push("check mode not deterministic or failing".into());
    }

    report(
        9,
        "CLI contract",
        problems.is_empty(),
        start.elapsed(),
        Duration::from_secs(20),
        if problems.is_empty() { "round trip, exit codes, csv schema ok".into() } else { problems.join("; ") },
    );
}
