//! One test per acceptance criterion. Each prints a single `[PASS]` or
//! `[FAIL]` line; run with `--nocapture` to see them.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::Command;

use oscquad::report::parse_csv;
use oscquad::SweepRow;
use oscquad_core::engine::{
    build_prefix, integrate_composite, integrate_triangular, prefix_at, InnerMode, PanelScheme, Summation,
};
use oscquad_core::funcs::{closed_form, inner_closed, si, Inner, Kernel};
use oscquad_core::pipelines::{assemble_i3, IDENTITY_VALUE};
use oscquad_core::rules::{gauss_legendre, integrate_panel};

fn verdict(n: u32, pass: bool, detail: String) {
    println!("[{}] criterion {n}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n}: {detail}");
}

fn run(args: &[&str]) -> SweepRow {
    let o = Command::new(env!("CARGO_BIN_EXE_oscquad"))
        .args(args)
        .arg("--no-timing")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let mut rows = parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    rows.remove(0)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn criterion_1_closed_form_table() {
    let mut worst: f64 = 0.0;
    let mut fact = 1.0;
    for n in 1..=6u32 {
        fact *= f64::from(n);
        let direct = 2.0 / fact * (PI / 4.0).powi(n as i32);
        worst = worst.max(rel(closed_form(n).unwrap(), direct));
    }
    let named = [(1, FRAC_PI_2), (2, PI * PI / 16.0), (3, PI.powi(3) / 192.0)];
    for (n, v) in named {
        worst = worst.max(rel(closed_form(n).unwrap(), v));
    }
    verdict(1, worst <= 1e-14, format!("closed_form n=1..6 worst relative deviation {worst:.3e} (tol 1e-14)"));
}

#[test]
fn criterion_2_dirichlet_quality_control() {
    let mut errs = Vec::new();
    for order in ["10", "8"] {
        let r = run(&["dirichlet", "--umax", "2000000", "--order", order]);
        errs.push((order, r.abs_error, r.ratio));
    }
    let pass = errs.iter().all(|e| e.1 <= 2e-6);
    verdict(
        2,
        pass,
        format!(
            "dirichlet U=2e6: order {} |err| {:.3e} ratio {:.10}; order {} |err| {:.3e} ratio {:.10} (tol 2e-6)",
            errs[0].0, errs[0].1, errs[0].2, errs[1].0, errs[1].1, errs[1].2
        ),
    );
}

#[test]
fn criterion_3_identity() {
    let common = ["identity", "--form", "A", "--umax", "100000", "--order", "10"];
    let prefix = run(&[&common[..], &["--inner", "prefix", "--inner-mode", "exact"]].concat());
    let closed = run(&[&common[..], &["--inner", "closed"]].concat());
    let form_b = run(&["identity", "--form", "B", "--umax", "100000", "--order", "10"]);
    let e_prefix = rel(prefix.value, IDENTITY_VALUE);
    let e_closed = rel(closed.value, IDENTITY_VALUE);
    let sources = rel(prefix.value, closed.value);
    let forms = rel(form_b.value, prefix.value);
    let pass = e_prefix <= 1e-3 && e_closed <= 1e-3 && sources <= 1e-6 && forms <= 5e-4;
    verdict(
        3,
        pass,
        format!(
            "identity U=1e5: prefix {:.10} rel {e_prefix:.3e}, closed {:.10} rel {e_closed:.3e} (tol 1e-3); \
             sources agree {sources:.3e} (tol 1e-6); form B vs A {forms:.3e} (tol 5e-4)",
            prefix.value, closed.value
        ),
    );
}

#[test]
fn criterion_4_emulation_band() {
    let r = run(&["identity", "--inner-mode", "emulate", "--umax", "2000000", "--order", "10"]);
    verdict(4, (0.97..=1.03).contains(&r.ratio), format!("emulated identity ratio {:.10} (band [0.97, 1.03])", r.ratio));
}

#[test]
fn criterion_5_i3_assembly() {
    let r = run(&["in", "--n", "3"]);
    let target = PI.powi(3) / 192.0;
    let e = rel(r.value, target);
    let assembled = assemble_i3(-PI * PI / 4.0, PI * PI / 12.0);
    let c = rel(assembled, target);
    verdict(
        5,
        e <= 2e-3 && c <= 1e-15,
        format!("in --n 3 value {:.10} rel {e:.3e} (tol 2e-3); assembly constant rel {c:.3e} (tol 1e-15)", r.value),
    );
}

#[test]
fn criterion_6_i2() {
    let r = run(&["in", "--n", "2", "--umax", "1000000"]);
    verdict(6, r.abs_error <= 1e-6, format!("in --n 2 Z=1e6 value {:.12} |err| {:.3e} (tol 1e-6)", r.value, r.abs_error));
}

#[test]
fn criterion_7_bracket() {
    let r = run(&["bracket", "--umax", "1000000"]);
    verdict(7, r.abs_error <= 1e-4, format!("bracket Z=1e6 value {:.10} |err| {:.3e} (tol 1e-4)", r.value, r.abs_error));
}

fn gl_exactness() -> f64 {
    let mut worst: f64 = 0.0;
    for k in 1..=20usize {
        let rule = gauss_legendre(k).unwrap();
        for p in 0..(2 * k as i32) {
            let got = integrate_panel(|x| x.powi(p), -1.0, 1.0, &rule).unwrap();
            let exact = if p % 2 == 1 { 0.0 } else { 2.0 / f64::from(p + 1) };
            let d = if exact == 0.0 { got.abs() } else { rel(got, exact) };
            worst = worst.max(d);
        }
    }
    worst
}

fn weight_sums() -> f64 {
    (1..=64)
        .map(|k| (gauss_legendre(k).unwrap().weights().iter().sum::<f64>() - 2.0).abs())
        .fold(0.0, f64::max)
}

fn inner_oracle() -> f64 {
    let s = PanelScheme::new(200.0);
    let rule = gauss_legendre(10).unwrap();
    let mut worst: f64 = 0.0;
    for which in [Inner::F, Inner::G] {
        let g = |v: f64| which.integrand().eval(v);
        let table = build_prefix(g, &s).unwrap();
        for i in 0..200 {
            let u = 0.01 + (200.0 - 0.01) * f64::from(i) / 199.0;
            let d = prefix_at(&table, g, u, &rule).unwrap() - inner_closed(which, u).unwrap();
            worst = worst.max(d.abs());
        }
    }
    worst
}

fn triangular_vs_closed() -> f64 {
    let s = PanelScheme::new(1e4);
    let sinc = |x: f64| Kernel::Sinc.eval(x);
    let outer = |u: f64| Kernel::CosOver.eval(u);
    let tri = integrate_triangular(outer, sinc, &s, InnerMode::ExactPrefix).unwrap();
    let direct = integrate_composite(|u| outer(u) * si(u), &s).unwrap();
    (tri.value - direct.value).abs()
}

fn summation_agreement() -> f64 {
    let f = |x: f64| (-x / 4e5).exp() * (1.0 + 0.5 * x.sin());
    let base = PanelScheme::new(1e6);
    let vals: Vec<f64> = [Summation::Naive, Summation::Compensated, Summation::Pairwise]
        .into_iter()
        .map(|m| integrate_composite(f, &base.with_summation(m)).unwrap().value)
        .collect();
    rel(vals[0], vals[1]).max(rel(vals[2], vals[1]))
}

fn parallel_determinism() -> bool {
    let s = PanelScheme::new(3e5);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let a = integrate_composite(|x| Kernel::Sinc.eval(x), &s).unwrap();
            let b = integrate_triangular(
                |u| Kernel::CosOver.eval(u),
                |v| Kernel::Sin2Over.eval(v),
                &s,
                InnerMode::ExactPrefix,
            )
            .unwrap();
            (a.value.to_bits(), b.value.to_bits())
        })
    };
    let one = run(1);
    [2, 3, 8].into_iter().all(|t| run(t) == one)
}

#[test]
fn criterion_8_property_suites() {
    let gl = gl_exactness();
    let ws = weight_sums();
    let fg = inner_oracle();
    let tri = triangular_vs_closed();
    let sum = summation_agreement();
    let det = parallel_determinism();
    let pass = gl <= 1e-12 && ws <= 1e-13 && fg <= 1e-9 && tri <= 1e-8 && sum <= 1e-9 && det;
    verdict(
        8,
        pass,
        format!(
            "GL exactness {gl:.2e} (1e-12), weight sum {ws:.2e} (1e-13), F/G oracle {fg:.2e} (1e-9), \
             triangular {tri:.2e} (1e-8), summation {sum:.2e} (1e-9), parallel bitwise {det}"
        ),
    );
}

#[test]
fn criterion_9_convergence_monotonicity() {
    let errs: Vec<f64> = ["1000", "10000", "100000"]
        .iter()
        .map(|u| run(&["identity", "--form", "A", "--umax", u, "--order", "10"]).abs_error)
        .collect();
    let pass = errs.windows(2).all(|w| w[1] <= w[0]);
    verdict(
        9,
        pass,
        format!("identity abs_error at U=1e3,1e4,1e5: {:.4e}, {:.4e}, {:.4e} (non-increasing)", errs[0], errs[1], errs[2]),
    );
}
