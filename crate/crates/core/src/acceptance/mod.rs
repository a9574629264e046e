//! End-to-end acceptance criteria.
//!
//! Each criterion runs a group of named checks and passes when all of them
//! do. Thresholds live in [`tolerances`]. Two checks compare against printed
//! decimals that disagree with the formulas they summarize; those are kept
//! as stated and listed in [`KNOWN_DISCREPANCIES`].

pub mod tolerances;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analytic::{agm, comparison_constant, conjectured_moment, cs_bound_minimize, steinhaus_asymptotic_rhs};
use crate::arith::{a_constant, b_constant};
use crate::count::{
    char_moment_average, coprime_energy, rademacher_moment_sign_enum, rademacher_moment_tuple_count,
    steinhaus_energy,
};
use crate::error::{invalid, Result};
use crate::mc::{estimate_abs_moment, helson_table, Model};
use crate::polytope::{beta_constant, ehrhart_polynomial, lattice_count, PolytopeSpec};
use crate::rmt::{
    i1_two_ways, mc_secular_moment, mc_truncated_moment, so_truncated_moment_exact, unitary_asymptotic_rhs,
    unitary_truncated_moment_exact,
};
use crate::rng::DEFAULT_SEED;
use tolerances::*;

/// Checks that compare with a printed decimal the underlying formula does
/// not reproduce: `(criterion, check name)`.
pub const KNOWN_DISCREPANCIES: [(u32, &str); 2] = [(1, "a(1/2) printed value"), (12, "(e/(e-1))^(1/4) printed value")];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    /// One summary line, e.g. `PASS [07] RMT exact DP (0.01 s)`.
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{mark} [{:02}] {} ({:.2} s)", self.id, self.title, self.seconds);
        for c in self.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("\n     failed: {}: {}", c.name, c.detail));
        }
        s
    }

    /// Failed checks other than the documented discrepancies.
    pub fn unexpected_failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| !c.passed && !KNOWN_DISCREPANCIES.contains(&(self.id, c.name.as_str())))
            .collect()
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn close(&mut self, name: &str, value: f64, target: f64, tol: f64) {
        let err = (value - target).abs();
        self.check(name, err < tol, format!("value {value:.12}, target {target}, |err| {err:.3e} (tol {tol:.0e})"));
    }

    /// Records an error as a failed check.
    fn ok<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, format!("error: {e}"));
                None
            }
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub time_limit: Option<Duration>,
    run: fn(&mut Checks),
}

pub const CRITERIA: [Criterion; 14] = [
    Criterion { id: 1, title: "Euler-product constants", time_limit: Some(CONSTANTS_RUNTIME), run: constants },
    Criterion { id: 2, title: "polytope volume constants", time_limit: Some(POLYTOPE_RUNTIME), run: polytopes },
    Criterion { id: 3, title: "exact multiplicative energy", time_limit: None, run: energy },
    Criterion {
        id: 4,
        title: "Steinhaus main-term trend",
        time_limit: Some(STEINHAUS_TREND_RUNTIME),
        run: steinhaus_trend,
    },
    Criterion { id: 5, title: "Rademacher exact moments", time_limit: None, run: rademacher },
    Criterion { id: 6, title: "character sum identity", time_limit: None, run: characters },
    Criterion { id: 7, title: "truncated moments exact", time_limit: None, run: rmt_exact },
    Criterion { id: 8, title: "contour integral two ways", time_limit: None, run: i1 },
    Criterion { id: 9, title: "Haar Monte Carlo", time_limit: Some(HAAR_RUNTIME), run: haar },
    Criterion { id: 10, title: "unitary main-term trend", time_limit: None, run: unitary_trend },
    Criterion { id: 11, title: "multiplicative sum simulation", time_limit: None, run: simulation },
    Criterion { id: 12, title: "conjecture pipeline constants", time_limit: None, run: conjecture },
    Criterion { id: 13, title: "Cauchy-Schwarz bound optimizer", time_limit: None, run: bound },
    Criterion { id: 14, title: "arithmetic vs matrix comparison", time_limit: None, run: comparison },
];

impl Criterion {
    pub fn run(&self) -> CriterionReport {
        let mut checks = Checks::default();
        let start = Instant::now();
        (self.run)(&mut checks);
        let elapsed = start.elapsed();
        if let Some(limit) = self.time_limit {
            checks.check(
                "runtime",
                elapsed < limit,
                format!("{:.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()),
            );
        }
        let checks = checks.0;
        CriterionReport {
            id: self.id,
            title: self.title,
            passed: checks.iter().all(|c| c.passed),
            seconds: elapsed.as_secs_f64(),
            checks,
        }
    }
}

pub fn run_criterion(id: u32) -> Result<CriterionReport> {
    match CRITERIA.iter().find(|c| c.id == id) {
        Some(c) => Ok(c.run()),
        None => invalid(format!("no acceptance criterion {id}; valid ids are 1..={}", CRITERIA.len())),
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(Criterion::run).collect()
}

fn constants(c: &mut Checks) {
    let six_over_pi2 = 6.0 / (PI * PI);
    if let Some(r) = c.ok("a(1)", a_constant(1.0, CONSTANT_EPS)) {
        c.close("a(1)", r.value, 1.0, A1_ABS);
    }
    if let Some(r) = c.ok("a(2)", a_constant(2.0, CONSTANT_EPS)) {
        c.close("a(2)", r.value, six_over_pi2, A2_ABS);
    }
    if let Some(r) = c.ok("a(1/2) printed value", a_constant(0.5, CONSTANT_EPS)) {
        c.close("a(1/2) printed value", r.value, A_HALF_PRINTED, A_HALF_ABS);
    }
    if let Some(r) = c.ok("b(1)", b_constant(1, CONSTANT_EPS)) {
        c.close("b(1)", r.value, six_over_pi2, A2_ABS);
    }
}

fn polytopes(c: &mut Checks) {
    if let Some(b) = c.ok("beta(1)", beta_constant(1)) {
        let one = num_rational::BigRational::from_integer(1.into());
        c.check("beta(1) = 1", b.value == one, crate::ratio_string(&b.value));
    }
    for k in [2, 3] {
        let name = format!("beta({k}) routes");
        if let Some(b) = c.ok(&name, beta_constant(k)) {
            c.check(
                name,
                b.birkhoff_route == b.direct_route,
                format!(
                    "Birkhoff {} and direct {}",
                    crate::ratio_string(&b.birkhoff_route),
                    crate::ratio_string(&b.direct_route)
                ),
            );
        }
    }
    for k in 1..=3 {
        for spec in [PolytopeSpec::Birkhoff(k), PolytopeSpec::BetaMixed(k)] {
            let name = format!("Ehrhart {}({k}) holdout", spec.name());
            let Some(poly) = c.ok(&name, ehrhart_polynomial(spec)) else { continue };
            let d = spec.dimension() as u32;
            let mut all = true;
            let mut seen = Vec::new();
            for t in d + 1..=d + EHRHART_HOLDOUT {
                let Some(count) = c.ok(&name, lattice_count(spec, t)) else { return };
                let predicted = poly.eval_int(t as u64);
                let exact = num_rational::BigRational::from_integer(count.clone().into());
                all &= predicted == exact;
                seen.push(format!("t={t}: {count}"));
            }
            c.check(name, all, seen.join(", "));
        }
    }
}

fn brute_energy(k: u32, x: u64) -> u64 {
    let k = k as usize;
    let mut hist = std::collections::HashMap::<u64, u64>::new();
    let mut idx = vec![1u64; k];
    loop {
        *hist.entry(idx.iter().product()).or_default() += 1;
        let mut i = 0;
        while i < k && idx[i] == x {
            idx[i] = 1;
            i += 1;
        }
        if i == k {
            break;
        }
        idx[i] += 1;
    }
    hist.values().map(|v| v * v).sum()
}

fn energy(c: &mut Checks) {
    for (x, want) in [(2.0, 6u32), (3.0, 15)] {
        let name = format!("E(2,{x})");
        if let Some(r) = c.ok(&name, steinhaus_energy(2, x, 0.0)) {
            let v = r.value.exact().cloned();
            c.check(name, v == Some(BigUint::from(want)), format!("{v:?}, expected {want}"));
        }
    }
    let mut mismatches = Vec::new();
    for k in 1..=3 {
        for x in 1..=ENERGY_BRUTE_MAX_X {
            let oracle = BigUint::from(brute_energy(k, x));
            match steinhaus_energy(k, x as f64, 0.0) {
                Ok(r) if r.value.exact() == Some(&oracle) => {}
                other => mismatches.push(format!("k={k} x={x}: {:?} vs {oracle}", other.map(|r| r.value))),
            }
        }
    }
    c.check("brute-force tuples", mismatches.is_empty(), format!("x <= {ENERGY_BRUTE_MAX_X}, k <= 3; {mismatches:?}"));
    let mut bad = Vec::new();
    for x in 1..=ENERGY_K1_MAX_X {
        for xf in [x as f64, x as f64 + 0.5] {
            match steinhaus_energy(1, xf, 0.0) {
                Ok(r) if r.value.exact() == Some(&BigUint::from(x)) => {}
                _ => bad.push(xf),
            }
        }
    }
    c.check("E(1,x) = floor(x)", bad.is_empty(), format!("x <= {ENERGY_K1_MAX_X}; mismatches {bad:?}"));
}

fn steinhaus_trend(c: &mut Checks) {
    let Some(rhs) = c.ok("main term", steinhaus_asymptotic_rhs(2, 0.0)) else { return };
    let mut ratios = Vec::new();
    for x in [1e2, 1e4] {
        let Some(r) = c.ok("E(2,x)", steinhaus_energy(2, x, 0.0)) else { return };
        ratios.push((x, r.value.as_f64(), r.value.as_f64() / rhs.eval(x)));
    }
    let (r2, r4) = (ratios[0].2, ratios[1].2);
    let literal = |e: f64, x: f64| e / (6.0 / (PI * PI) * x * x * x.ln());
    let detail = format!(
        "constant {:.10}; ratio(1e2) {r2:.6}, ratio(1e4) {r4:.6}; against 6/pi^2 the ratios would be {:.6}, {:.6}",
        rhs.constant,
        literal(ratios[0].1, 1e2),
        literal(ratios[1].1, 1e4)
    );
    c.check("trend toward 1", (r4 - 1.0).abs() < (r2 - 1.0).abs(), detail.clone());
    let (lo, hi) = STEINHAUS_RATIO_WINDOW;
    c.check("ratio(1e4) window", (lo..=hi).contains(&r4), detail);
}

fn rademacher(c: &mut Checks) {
    let mut mismatches = Vec::new();
    for k in 1..=RADEMACHER_MAX_K {
        for x in 1..=RADEMACHER_MAX_X {
            let a = rademacher_moment_sign_enum(k, x);
            let b = rademacher_moment_tuple_count(k, x);
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => mismatches.push(format!("k={k} x={x}: {a:?} vs {b:?}")),
            }
        }
    }
    c.check(
        "sign enumeration = tuple count",
        mismatches.is_empty(),
        format!("x <= {RADEMACHER_MAX_X}, k <= {RADEMACHER_MAX_K}; {mismatches:?}"),
    );
    if let Some(v) = c.ok("value at (2,3)", rademacher_moment_sign_enum(2, 3)) {
        c.check("value at (2,3)", v == BigUint::from(21u32), v.to_string());
    }
}

fn characters(c: &mut Checks) {
    for q in [11u64, 101] {
        let root = (q as f64).sqrt().floor() as u64;
        for k in [1u32, 2] {
            for x in [2, 3, root] {
                let name = format!("q={q} k={k} x={x}");
                let Some(r) = c.ok(&name, char_moment_average(k, q, x)) else { continue };
                let err = (r.avg_all - r.congruence_count as f64).abs();
                c.check(
                    format!("{name} average"),
                    err < CHAR_ABS,
                    format!("average {} vs count {} (|err| {err:.2e})", r.avg_all, r.congruence_count),
                );
                if x.checked_pow(k).is_some_and(|p| p <= q) {
                    if let Some(e) = c.ok(&name, coprime_energy(k, x as f64, q)) {
                        c.check(
                            format!("{name} restricted count"),
                            e == BigUint::from(r.congruence_count),
                            format!("{e} vs {}", r.congruence_count),
                        );
                    }
                }
            }
        }
    }
}

/// Counts edge weightings of `K_n` with every degree at most `l`, by total weight.
fn brute_complete_graph(n: usize, l: u32) -> Vec<u128> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = vec![0u128; (n * l as usize) / 2 + 1];
    let mut w = vec![0u32; edges.len()];
    loop {
        let mut deg = vec![0u32; n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            deg[i] += w[e];
            deg[j] += w[e];
        }
        if deg.iter().all(|&d| d <= l) {
            out[w.iter().sum::<u32>() as usize] += 1;
        }
        let mut i = 0;
        while i < w.len() && w[i] == l {
            w[i] = 0;
            i += 1;
        }
        if i == w.len() {
            break;
        }
        w[i] += 1;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn rmt_exact(c: &mut Checks) {
    let mut bad = Vec::new();
    for l in 0..=RMT_K1_MAX_L {
        match unitary_truncated_moment_exact(1, l, 2.0) {
            Ok(m) if m.coefficients == vec![1u128; l as usize + 1] => {}
            _ => bad.push(l),
        }
    }
    c.check("U k=1 geometric", bad.is_empty(), format!("L <= {RMT_K1_MAX_L}; mismatches at {bad:?}"));
    if let Some(m) = c.ok("U k=2 L=1", unitary_truncated_moment_exact(2, 1, 2.0)) {
        c.check("U k=2 L=1", m.coefficients == [1, 4, 2], format!("{:?}", m.coefficients));
    }
    let mut bad = Vec::new();
    for l in 0..=RMT_K1_MAX_L {
        match so_truncated_moment_exact(1, l, 2.0) {
            Ok(m) if m.coefficients == vec![1u128; l as usize + 1] => {}
            _ => bad.push(l),
        }
    }
    c.check("SO k=1 geometric", bad.is_empty(), format!("L <= {RMT_K1_MAX_L}; mismatches at {bad:?}"));
    if let Some(m) = c.ok("SO k=2 L=1", so_truncated_moment_exact(2, 1, 2.0)) {
        let oracle = brute_complete_graph(4, 1);
        c.check("SO k=2 L=1", m.coefficients == oracle, format!("{:?} vs enumeration {oracle:?}", m.coefficients));
    }
}

fn i1(c: &mut Checks) {
    let mut worst = (0.0, 0, 0.0);
    for k in 1..=6 {
        for z in [1.1, 2.0, 5.0] {
            let Some(p) = c.ok("I1", i1_two_ways(k, z)) else { return };
            if p.relative_gap() >= worst.0 {
                worst = (p.relative_gap(), k, z);
            }
        }
    }
    c.check(
        "residue vs closed form",
        worst.0 < I1_REL,
        format!("largest relative gap {:.2e} at k={}, |z|={}", worst.0, worst.1, worst.2),
    );
}

fn haar(c: &mut Checks) {
    let report = |c: &mut Checks, name: &str, est: Result<crate::MomentEstimate>, target: f64| {
        if let Some(e) = c.ok(name, est) {
            c.check(
                name,
                e.agrees_with(target, MC_SIGMAS),
                format!("{:.5} ± {:.5} vs {target:.5} ({:.2} SE)", e.mean, e.stderr, e.z_score(target)),
            );
        }
    };
    report(c, "E|c(1)|^2", mc_secular_moment(HAAR_N, &[1], &[1], HAAR_SAMPLES, DEFAULT_SEED), 1.0);
    report(c, "E|c(1)|^4", mc_secular_moment(HAAR_N, &[2], &[2], HAAR_SAMPLES, DEFAULT_SEED + 1), 2.0);
    if let Some(exact) = c.ok("exact k=2 L=3", unitary_truncated_moment_exact(2, 3, HAAR_Z)) {
        report(
            c,
            "truncated k=2 L=3",
            mc_truncated_moment(2, 3, HAAR_Z, HAAR_N, HAAR_SAMPLES, DEFAULT_SEED + 2),
            exact.value,
        );
    }
}

fn unitary_trend(c: &mut Checks) {
    let z = 0.5f64.exp();
    let ratio = |l: u32| -> Result<f64> {
        Ok(unitary_truncated_moment_exact(2, l, z)?.value / unitary_asymptotic_rhs(2, l, z)?)
    };
    let (Some(r10), Some(r40)) = (c.ok("ratio(10)", ratio(10)), c.ok("ratio(40)", ratio(40))) else { return };
    c.check("trend toward 1", (r40 - 1.0).abs() < (r10 - 1.0).abs(), format!("ratio(10) {r10:.6}, ratio(40) {r40:.6}"));
}

fn simulation(c: &mut Checks) {
    let report = |c: &mut Checks, name: &str, est: Result<crate::MomentEstimate>, target: f64| {
        if let Some(e) = c.ok(name, est) {
            c.check(
                name,
                e.agrees_with(target, MC_SIGMAS),
                format!("{:.4} ± {:.4} vs {target} ({:.2} SE)", e.mean, e.stderr, e.z_score(target)),
            );
        }
    };
    report(
        c,
        "E|S|^2 at x=1000",
        estimate_abs_moment(Model::Steinhaus, 1000, 0.0, 2.0, SECOND_MOMENT_TRIALS, DEFAULT_SEED),
        1000.0,
    );
    if let Some(r) = c.ok("exact E(2,100)", steinhaus_energy(2, 100.0, 0.0)) {
        report(
            c,
            "Steinhaus E|S|^4 at x=100",
            estimate_abs_moment(Model::Steinhaus, 100, 0.0, 4.0, FOURTH_MOMENT_TRIALS, DEFAULT_SEED + 1),
            r.value.as_f64(),
        );
    }
    if let Some(v) = c.ok("exact Rademacher x=30", rademacher_moment_sign_enum(2, 30)) {
        report(
            c,
            "Rademacher E S^4 at x=30",
            estimate_abs_moment(Model::Rademacher, 30, 0.0, 4.0, FOURTH_MOMENT_TRIALS, DEFAULT_SEED + 2),
            v.to_f64().unwrap_or(f64::NAN),
        );
    }
}

fn conjecture(c: &mut Checks) {
    let m: f64 = 1.0 - (-1.0f64).exp();
    if let Some(g) = c.ok("agm", agm(1.0 - m.sqrt(), 1.0 + m.sqrt())) {
        c.close("agm value", g, AGM_PRINTED, AGM_ABS);
    }
    if let Some(r) = c.ok("conjectured coefficient", conjectured_moment(0.5, 0.0, 1.0)) {
        c.close("(e/(e-1))^(1/4) printed value", r.correction, CORRECTION_PRINTED, CORRECTION_ABS);
        c.close("coefficient", r.coefficient, COEFFICIENT_PRINTED, COEFFICIENT_ABS);
    }
    if let Some(rows) = c.ok("helson table", helson_table(&HELSON_X, HELSON_TRIALS, DEFAULT_SEED)) {
        let summary: Vec<String> =
            rows.iter().map(|r| format!("x={} E|S|/sqrt(x)={:.4}±{:.4}", r.x, r.ratio, r.stderr / (r.x as f64).sqrt())).collect();
        c.check("helson table emitted (report only)", rows.len() == HELSON_X.len(), summary.join("; "));
    }
}

fn bound(c: &mut Checks) {
    let r = cs_bound_minimize();
    c.close("f_min", r.f_min, F_MIN_PRINTED, F_MIN_ABS);
    c.close("amplitude bound", r.amplitude_bound, BOUND_PRINTED, BOUND_ABS);
    c.check("local minimality", r.locally_minimal, format!("at ({:.10}, {:.10})", r.u_star, r.v_star));
}

fn comparison(c: &mut Checks) {
    let x = 1e4f64;
    let l = x.ln().floor() as u32;
    let z = 0.5f64.exp();
    let parts = (|| -> Result<(f64, f64, f64, f64)> {
        let e = steinhaus_energy(2, x, 0.0)?.value.as_f64();
        let a = a_constant(2.0, crate::analytic::A_EPS)?.value;
        let cs = comparison_constant(2, 0.0)?;
        let u = unitary_truncated_moment_exact(2, l, z)?.value;
        Ok((e, a, cs, u))
    })();
    let Some((e, a, cs, u)) = c.ok("comparison", parts) else { return };
    let ratio = e / (a * cs * u);
    let (lo, hi) = COMPARISON_WINDOW;
    c.check(
        "ratio window",
        (lo..=hi).contains(&ratio),
        format!("E(2,1e4) = {e}, a(2) = {a:.10}, c_0(2) = {cs:.10}, U(L={l}) = {u:.6e}; ratio {ratio:.6}"),
    );
}
