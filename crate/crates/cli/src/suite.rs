use std::time::Instant;

use turan_core::lagrangian::{
    blowup_density, is_minimal, lagrangian, pk_optimal_vector_for, plus_s_factor,
    LagrangePolynomial, OptimizerConfig,
};
use turan_core::pattern::{build_pk, named_pattern, DEFAULT_EDGE_CAP};
use turan_core::tower::{
    check_divisibility, degree_certificate, eisenstein_check, nested_radical, tower_polynomial,
    verify_root, DEFAULT_TOWER_CAP, EISENSTEIN_PRIME,
};

use crate::report::{Check, RunReport};
use crate::{CliError, VerifyArgs};

const STRUCTURE_K_MAX: usize = 10;
const RESIDUAL_K_MAX: usize = 8;

fn mu(k: usize) -> Result<f64, CliError> {
    Ok(nested_radical(k as u32, 256)?.to_f64())
}

pub fn build_report(args: &VerifyArgs) -> Result<RunReport, CliError> {
    if args.k_max == 0 {
        return Err(CliError::input("--k-max must be at least 1"));
    }
    if args.k_max > DEFAULT_TOWER_CAP as usize {
        return Err(turan_core::Error::TowerCapExceeded {
            k: args.k_max as u32,
            cap: DEFAULT_TOWER_CAP,
        }
        .into());
    }
    if args.precision < 128 {
        return Err(CliError::input("--precision must be at least 128 bits"));
    }
    let cfg = OptimizerConfig {
        seed: args.seed,
        threads: args.threads,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;

    let mut report = RunReport::new("verify-all", args.seed);
    report.input("k_max", args.k_max);
    report.input("precision", args.precision);
    report.input("restarts", cfg.restarts);
    report.input("threads", args.threads);

    let k_max = args.k_max;
    for k in 1..=k_max {
        let res = lagrangian(&build_pk(k)?, &cfg)?;
        report.push(Check::close(
            format!("lambda(P_{k}) vs radical"),
            mu(k)?,
            res.value,
            1e-6,
        ));
    }
    for k in 1..=k_max + 1 {
        let poly = LagrangePolynomial::from_pattern(&build_pk(k)?);
        let value = poly.evaluate(&pk_optimal_vector_for(k)?)?;
        report.push(Check::close(
            format!("lambda_E(x*) for P_{k}"),
            mu(k)?,
            value,
            1e-10,
        ));
    }

    report.push(Check::exact(
        "p_2 coefficients",
        "3 0 -18 0 23",
        tower_polynomial(2)?.to_text(),
    ));
    report.push(Check::exact(
        "p_3 coefficients",
        "23 0 -276 0 1170 0 -2052 0 1263",
        tower_polynomial(3)?.to_text(),
    ));
    for k in 1..=(2 * k_max).min(STRUCTURE_K_MAX) as u32 {
        let p = tower_polynomial(k)?;
        let degree = p.degree().unwrap_or(0);
        report.push(Check::new(
            format!("p_{k} degree, parity"),
            format!("{} even", 1u64 << k),
            format!("{degree} {}", if p.is_even() { "even" } else { "odd" }),
            "exact",
            degree == 1 << k && p.is_even(),
        ));
        let div = check_divisibility(k)?;
        report.push(Check::new(
            format!("p_{k} divisibility"),
            "pass",
            pass(div.passed()),
            "exact",
            div.passed(),
        ));
        let eis = eisenstein_check(&p, EISENSTEIN_PRIME)?;
        report.push(Check::new(
            format!("p_{k} eisenstein q=3"),
            "pass",
            pass(eis.passed),
            "exact",
            eis.passed,
        ));
    }

    let residual_tol = -(args.precision as f64) / 4.0;
    for k in 1..=(k_max + 3).min(RESIDUAL_K_MAX) as u32 {
        let p = tower_polynomial(k)?;
        let bound = verify_root(&p, &nested_radical(k, args.precision)?, args.precision);
        let log2 = bound.log2_approx();
        report.push(Check::new(
            format!("p_{k}(mu_{k}) residual"),
            0,
            format!("2^{log2:.1}"),
            format!("2^{residual_tol}"),
            log2 <= residual_tol,
        ));
        let cert = degree_certificate(k, args.precision)?;
        let reason = cert.reason.clone().unwrap_or_else(|| "valid".into());
        report.push(Check::new(
            format!("degree {} certificate", 1u64 << k),
            "valid",
            reason,
            "-",
            cert.valid,
        ));
    }

    let factor = plus_s_factor(3, 1)?;
    report.push(Check::exact("lifting factor r=3 s=1", "27/64", &factor));
    let p1 = build_pk(1)?;
    let lifted = p1.plus_s(1)?;
    let lifted_value = lagrangian(&lifted, &cfg)?.value;
    report.push(Check::close(
        "lambda(P_1 + 1)",
        27.0 / 64.0 * mu(1)?,
        lifted_value,
        1e-6,
    ));

    let mut minimal = vec![("P_1", p1), ("P_1 + 1", lifted)];
    if k_max >= 2 {
        minimal.insert(1, ("P_2", build_pk(2)?));
    }
    for (name, p) in minimal {
        let rep = is_minimal(&p, &cfg)?;
        report.push(Check::new(
            format!("{name} minimal"),
            true,
            rep.is_minimal,
            format!("{:.0e}", rep.threshold),
            rep.is_minimal,
        ));
    }
    let rep = is_minimal(&named_pattern("nonminimal-2graph")?, &cfg)?;
    let m3 = rep.per_index.get(2).map_or(f64::NAN, |m| m.margin);
    report.push(Check::new(
        "nonminimal-2graph minimal",
        false,
        rep.is_minimal,
        "-",
        !rep.is_minimal,
    ));
    report.push(Check::close("nonminimal-2graph margin(i=3)", 0.0, m3, 1e-9));

    report.push(Check::close(
        "lambda(fano)",
        0.75,
        lagrangian(&named_pattern("fano")?, &cfg)?.value,
        1e-9,
    ));
    report.push(Check::close(
        "lambda(single-edge-3)",
        2.0 / 9.0,
        lagrangian(&named_pattern("single-edge-3")?, &cfg)?.value,
        1e-9,
    ));

    let weights = pk_optimal_vector_for(1)?;
    let d90 = blowup_density(&build_pk(1)?, &weights, 90, DEFAULT_EDGE_CAP)?;
    report.push(Check::close("P_1 blowup density n=90", mu(1)?, d90, 0.05));
    Ok(report)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn verify_all(args: VerifyArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let mut report = build_report(&args)?;
    if args.timings {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    print!("{}", report.table());
    if let Some(path) = &args.json {
        report.write_json(path)?;
    }
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::check(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}
