use std::f64::consts::PI;

use serde_json::{json, Value};

use multmoments::acceptance::{run_criterion, CRITERIA};
use multmoments::analytic::{conjectured_moment, cs_bound_minimize, A_EPS, B_EPS};
use multmoments::arith::{a_constant, b_constant};
use multmoments::count::{
    char_moment_average, rademacher_moment_sign_enum, rademacher_moment_tuple_count, steinhaus_energy, EnergyValue,
};
use multmoments::mc::{estimate_abs_moment, helson_table, Model};
use multmoments::polytope::{alpha_constant, beta_constant, gamma_constant};
use multmoments::rmt::{
    mc_truncated_moment, so_asymptotic_rhs_with, so_truncated_moment_exact, unitary_asymptotic_rhs,
    unitary_truncated_moment_exact,
};
use multmoments::{ratio_string, Error};
use num_traits::ToPrimitive;

use crate::args::*;
use crate::error::CliError;
use crate::output::{big_number, to_value, Report};

/// Printed value of `a(1/2)`, which the product does not reproduce.
const A_HALF_PRINTED: f64 = 0.98849;

fn integer<T: TryFrom<u64>>(v: f64, what: &str) -> Result<T, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        if let Ok(t) = T::try_from(v as u64) {
            return Ok(t);
        }
    }
    Err(CliError::Usage(format!("{what} must be a nonnegative integer, got {v}")))
}

fn rational_f64(r: &num_rational::BigRational) -> Option<f64> {
    r.to_f64()
}

pub fn count(a: &CountArgs) -> Result<Report, CliError> {
    let results = match a.model {
        CountModel::Steinhaus => {
            let r = steinhaus_energy(a.k, a.x, a.sigma)?;
            let value = match &r.value {
                EnergyValue::Exact(v) => big_number(v),
                EnergyValue::Weighted(v) => json!(v),
            };
            json!({
                "model": "steinhaus",
                "k": r.k,
                "x": r.x,
                "sigma": r.sigma,
                "value": value,
                "tuple_space_size": big_number(&r.tuple_space_size),
            })
        }
        CountModel::Rademacher => {
            let x: u64 = integer(a.x.floor(), "x")?;
            let mut out = json!({ "model": "rademacher", "k": a.k, "x": x });
            let sign = matches!(a.method, RademacherMethod::Sign | RademacherMethod::Both)
                .then(|| rademacher_moment_sign_enum(a.k, x))
                .transpose()?;
            let tuple = matches!(a.method, RademacherMethod::Tuple | RademacherMethod::Both)
                .then(|| rademacher_moment_tuple_count(a.k, x))
                .transpose()?;
            let value = sign.as_ref().or(tuple.as_ref()).expect("at least one route runs");
            out["value"] = big_number(value);
            if let (Some(s), Some(t)) = (&sign, &tuple) {
                out["sign_enumeration"] = big_number(s);
                out["tuple_count"] = big_number(t);
                out["routes_agree"] = json!(s == t);
            }
            out
        }
        CountModel::Char => {
            let q = a.q.ok_or_else(|| CliError::Usage("--q is required for the char model".into()))?;
            let x: u64 = integer(a.x.floor(), "x")?;
            let r = char_moment_average(a.k, q, x)?;
            let mut v = to_value(&r);
            v["value"] = json!(r.congruence_count);
            v
        }
    };
    Ok(Report::new(results))
}

pub fn constants(a: &ConstantsArgs) -> Result<Report, CliError> {
    let results = match a.name {
        ConstantName::A => {
            let eps = a.eps.unwrap_or(A_EPS);
            let r = a_constant(a.k, eps)?;
            let mut v = json!({
                "name": "a",
                "k": a.k,
                "value": r.value,
                "eps": eps,
                "tail_bound": r.tail_bound,
                "truncation_prime": r.truncation_prime,
            });
            if a.k == 1.0 {
                v["closed_form"] = json!(1.0);
            } else if a.k == 2.0 {
                v["closed_form"] = json!(6.0 / (PI * PI));
            } else if a.k == 0.5 {
                v["printed_value"] = json!(A_HALF_PRINTED);
                v["printed_difference"] = json!(r.value - A_HALF_PRINTED);
            }
            v
        }
        ConstantName::B => {
            let k: u32 = integer(a.k, "k")?;
            let eps = a.eps.unwrap_or(B_EPS);
            let r = b_constant(k, eps)?;
            let mut v = json!({
                "name": "b",
                "k": k,
                "value": r.value,
                "eps": eps,
                "tail_bound": r.tail_bound,
                "truncation_prime": r.truncation_prime,
            });
            if k == 1 {
                v["closed_form"] = json!(6.0 / (PI * PI));
            }
            v
        }
        ConstantName::Alpha => {
            let k: u32 = integer(a.k, "k")?;
            let r = alpha_constant(k)?;
            json!({ "name": "alpha", "k": k, "value": ratio_string(&r), "value_f64": rational_f64(&r) })
        }
        ConstantName::Beta => {
            let k: u32 = integer(a.k, "k")?;
            let b = beta_constant(k)?;
            let mut v = json!({ "name": "beta", "k": k, "value": ratio_string(&b.value), "value_f64": rational_f64(&b.value) });
            let routes = to_value(&b);
            for key in ["birkhoff_relative_volume", "lattice_gram_determinant", "birkhoff_volume", "birkhoff_route", "direct_route"] {
                v[key] = routes[key].clone();
            }
            v["routes_agree"] = json!(b.birkhoff_route == b.direct_route);
            v
        }
        ConstantName::Gamma => {
            let k: u32 = integer(a.k, "k")?;
            let g = gamma_constant(k)?;
            let mut v = json!({ "name": "gamma" });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, to_value(&g)) {
                dst.extend(src);
            }
            v["value_f64"] = json!(rational_f64(&g.value));
            v["unit_slice_f64"] = json!(rational_f64(&g.unit_slice));
            v
        }
    };
    Ok(Report::new(results))
}

fn gamma_for(k: u32, norm: GammaNorm) -> Result<f64, Error> {
    if k == 1 {
        return Ok(1.0);
    }
    let g = gamma_constant(k)?;
    let r = match norm {
        GammaNorm::UnitSlice => g.unit_slice,
        GammaNorm::DegreeTwo => g.value,
    };
    Ok(rational_f64(&r).unwrap_or(f64::NAN))
}

pub fn rmt(a: &RmtArgs) -> Result<Report, CliError> {
    let group = match a.group {
        GroupArg::Unitary => "unitary",
        GroupArg::So => "so",
    };
    let exact = |l: u32| match a.group {
        GroupArg::Unitary => unitary_truncated_moment_exact(a.k, l, a.z),
        GroupArg::So => so_truncated_moment_exact(a.k, l, a.z),
    };
    let rhs = |l: u32| match a.group {
        GroupArg::Unitary => unitary_asymptotic_rhs(a.k, l, a.z),
        GroupArg::So => so_asymptotic_rhs_with(a.k, l, a.z, gamma_for(a.k, a.gamma_norm)?),
    };
    let mut rows = Vec::new();
    for &l in &a.l {
        let row = match a.mode {
            RmtMode::Exact => {
                let m = exact(l)?;
                json!({ "group": group, "k": a.k, "l": l, "z": a.z, "value": m.value, "coefficients": m.coefficients })
            }
            RmtMode::Asymptotic => json!({ "group": group, "k": a.k, "l": l, "z": a.z, "rhs": rhs(l)? }),
            RmtMode::Ratio => {
                let (e, r) = (exact(l)?.value, rhs(l)?);
                json!({ "group": group, "k": a.k, "l": l, "z": a.z, "exact": e, "rhs": r, "ratio": e / r })
            }
            RmtMode::Mc => {
                if a.group != GroupArg::Unitary {
                    return Err(CliError::Usage("Monte Carlo sampling is only available for the unitary group".into()));
                }
                let n = a.n.unwrap_or((a.k * l).max(1) as usize);
                let est = mc_truncated_moment(a.k, l, a.z, n, a.samples, crate::seed())?;
                let e = exact(l)?.value;
                json!({
                    "group": group, "k": a.k, "l": l, "z": a.z, "n": n,
                    "mean": est.mean, "stderr": est.stderr, "trials": est.trials, "seed": est.seed,
                    "exact": e, "z_score": est.z_score(e),
                })
            }
        };
        rows.push(row);
    }
    Ok(Report::new(Value::Array(rows)))
}

pub fn simulate(a: &SimulateArgs) -> Result<Report, CliError> {
    let seed = crate::seed();
    if a.helson {
        let rows = helson_table(&a.x, a.trials, seed)?;
        return Ok(Report::new(to_value(&rows)));
    }
    let model = match a.model {
        SimModel::Steinhaus => Model::Steinhaus,
        SimModel::Rademacher => Model::Rademacher,
    };
    let mut rows = Vec::new();
    for &x in &a.x {
        let est = estimate_abs_moment(model, x, a.sigma, a.two_k, a.trials, seed)?;
        let mut row = json!({
            "model": model, "x": x, "sigma": a.sigma, "two_k": a.two_k,
            "mean": est.mean, "stderr": est.stderr, "trials": est.trials, "seed": est.seed,
        });
        // the second moment is known exactly for every σ
        if model == Model::Steinhaus && a.two_k == 2.0 {
            let exact: f64 = (1..=x).map(|n| (n as f64).powf(-2.0 * a.sigma)).sum();
            row["exact"] = json!(exact);
            row["z_score"] = json!(est.z_score(exact));
        }
        rows.push(row);
    }
    Ok(Report::new(Value::Array(rows)))
}

pub fn conjecture(a: &ConjectureArgs) -> Result<Report, CliError> {
    let rows = a.x.iter().map(|&x| conjectured_moment(a.k, a.sigma, x).map(|m| to_value(&m))).collect::<Result<Vec<_>, _>>()?;
    Ok(Report::new(Value::Array(rows)))
}

pub fn bound() -> Report {
    let r = cs_bound_minimize();
    let text = format!(
        "f_min            {:.10}\namplitude_bound  {:.10}\nu_star           {:.10}\nv_star           {:.10}\nlocally_minimal  {}\n",
        r.f_min, r.amplitude_bound, r.u_star, r.v_star, r.locally_minimal
    );
    Report { results: to_value(&r), text: Some(text) }
}

/// Runs the selected criteria; the flag is false when any failed.
pub fn verify(a: &VerifyArgs) -> Result<(Report, bool), CliError> {
    let ids: Vec<u32> = if a.criteria.is_empty() { CRITERIA.iter().map(|c| c.id).collect() } else { a.criteria.clone() };
    let mut reports = Vec::new();
    let mut text = String::new();
    for id in ids {
        let r = run_criterion(id).map_err(|e| CliError::Usage(e.to_string()))?;
        text.push_str(&r.line());
        text.push('\n');
        if a.verbose {
            for c in &r.checks {
                text.push_str(&format!("     {} {}: {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
            }
        }
        reports.push(r);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    text.push_str(&format!("{} of {} criteria passed\n", reports.len() - failed, reports.len()));
    let results = Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "title": r.title,
                    "passed": r.passed,
                    "seconds": r.seconds,
                    "failed_checks": r.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; "),
                    "checks": to_value(&r.checks),
                })
            })
            .collect(),
    );
    Ok((Report { results, text: Some(text) }, failed == 0))
}
