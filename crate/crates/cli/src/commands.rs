use std::path::{Path, PathBuf};

use turan_core::lagrangian::{blowup_density, is_minimal, lagrangian as optimize, OptimizerConfig};
use turan_core::pattern::{
    blowup, build_pk, named_pattern, parse_pattern, serialize_pattern, Pattern,
};
use turan_core::tower::{default_precision, degree_certificate_capped, tower_polynomial_capped};

use crate::report::{Check, RunReport};
use crate::{CliError, LagrangianArgs, PatternCommand, TowerArgs};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn read_pattern(path: &Path) -> Result<Pattern, CliError> {
    parse_pattern(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pattern(cmd: PatternCommand) -> Result<(), CliError> {
    let (pattern, out) = match cmd {
        PatternCommand::BuildPk { k, out } => (build_pk(k)?, out),
        PatternCommand::Named { name, out } => (named_pattern(&name)?, out),
        PatternCommand::PlusS { s, file, out } => (read_pattern(&file)?.plus_s(s)?, out),
        PatternCommand::RemoveIndex { i, file, out } => {
            (read_pattern(&file)?.remove_index(i)?, out)
        }
        PatternCommand::Blowup {
            parts,
            file,
            edge_cap,
            out,
        } => {
            let h = blowup(&read_pattern(&file)?, &parts, edge_cap)?;
            return emit(&h.to_text(), out.output.as_ref());
        }
        PatternCommand::Info { file } => {
            let p = read_pattern(&file)?;
            println!("r={} m={} edges={}", p.r(), p.m(), p.edge_count());
            return Ok(());
        }
    };
    emit(&serialize_pattern(&pattern), out.output.as_ref())
}

fn optimizer_config(args: &LagrangianArgs) -> Result<OptimizerConfig, CliError> {
    let mut cfg = OptimizerConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_kv(&read(path)?)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    if let Some(v) = args.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.max_iterations {
        cfg.max_iterations = v;
    }
    if let Some(v) = args.threads {
        cfg.threads = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_vector(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.10}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn lagrangian(args: LagrangianArgs) -> Result<(), CliError> {
    let cfg = optimizer_config(&args)?;
    let pattern = read_pattern(&args.file)?;
    let res = optimize(&pattern, &cfg)?;

    let mut report = RunReport::new("lagrangian", cfg.seed);
    report.input("file", args.file.display());
    for line in cfg.to_kv().lines() {
        if let Some((k, v)) = line.split_once('=') {
            report.input(k.trim(), v.trim());
        }
    }

    report.push(Check::new(
        "lambda",
        "-",
        format!("{:.12}", res.value),
        "-",
        true,
    ));
    report.push(Check::new(
        "argmax",
        "-",
        fmt_vector(res.argmax.coords()),
        "-",
        true,
    ));
    println!("value       {:.10}", res.value);
    println!("argmax      {}", fmt_vector(res.argmax.coords()));
    println!(
        "restarts    {} ({} converged), iterations {}",
        res.restarts_used, res.converged_restarts, res.iterations
    );
    match res.closed_form {
        Some(closed) => {
            let status = if res.certified {
                "certified"
            } else {
                "NOT certified"
            };
            println!("closed form {closed:.10}, {status}");
            report.push(Check::close(
                "closed form",
                closed,
                res.value,
                turan_core::lagrangian::CERTIFY_TOLERANCE,
            ));
        }
        None => println!("closed form none, not certified"),
    }
    report.push(Check::new(
        "converged restarts",
        ">= 1",
        res.converged_restarts,
        "-",
        res.converged_restarts > 0 || res.restarts_used == 0,
    ));

    if args.minimality {
        let rep = is_minimal(&pattern, &cfg)?;
        for m in &rep.per_index {
            println!(
                "margin(i={}) = {:.6}  lambda(P-{}) = {:.10}",
                m.index, m.margin, m.index, m.lambda_without
            );
        }
        if rep.is_minimal {
            if let Some(w) = rep
                .per_index
                .iter()
                .min_by(|a, b| a.margin.total_cmp(&b.margin))
            {
                println!("minimal: smallest margin(i={}) = {:.6}", w.index, w.margin);
            }
        } else {
            for m in rep.per_index.iter().filter(|m| m.margin <= rep.threshold) {
                println!("not minimal: margin(i={}) = {:.6}", m.index, m.margin);
            }
        }
        report.push(Check::new(
            "minimal",
            "-",
            rep.is_minimal,
            format!("{:.0e}", rep.threshold),
            true,
        ));
    }

    if let Some(n) = args.density_n {
        let d = blowup_density(
            &pattern,
            &res.argmax,
            n,
            turan_core::pattern::DEFAULT_EDGE_CAP,
        )?;
        println!(
            "density     {d:.10} (n = {n}, gap {:.6})",
            (d - res.value).abs()
        );
        report.push(Check::new(
            "blowup density",
            format!("{:.10}", res.value),
            format!("{d:.10}"),
            "-",
            true,
        ));
    }

    if let Some(path) = &args.json {
        report.write_json(path)?;
    }
    if res.converged_restarts == 0 && res.restarts_used > 0 {
        return Err(CliError::check("no restart converged"));
    }
    Ok(())
}

/// Residuals above this are flagged even when the certificate tolerance is
/// looser.
const RESIDUAL_WARNING_LOG2: f64 = -32.0;

pub fn tower(args: TowerArgs) -> Result<(), CliError> {
    let prec = args.precision.unwrap_or_else(|| default_precision(args.k));
    if args.emit_poly && args.output.is_none() && args.json.is_none() {
        println!("{}", tower_polynomial_capped(args.k, args.cap)?.to_text());
        return Ok(());
    }
    let cert = degree_certificate_capped(args.k, prec, args.cap)?;
    if args.emit_poly {
        emit(
            &format!("{}\n", cert.polynomial.to_text()),
            args.output.as_ref(),
        )?;
    }
    let orientation = cert
        .eisenstein
        .orientation
        .map(|o| format!("{o:?}").to_lowercase())
        .unwrap_or_else(|| "none".into());
    println!("k           {}", cert.k);
    println!(
        "degree      {} (exact: {})",
        cert.claimed_degree, cert.degree_exact
    );
    println!("precision   {} bits", cert.precision_bits);
    println!(
        "residual    <= {} ~ 2^{:.1} (tolerance 2^{})",
        cert.residual_bound, cert.residual_log2, cert.residual_tolerance_log2
    );
    println!(
        "eisenstein  q={} {} ({orientation})",
        cert.eisenstein.prime,
        pass_word(cert.eisenstein.passed)
    );
    println!(
        "divisibility cond-i {} cond-ii {}",
        pass_word(cert.divisibility.cond_i_holds),
        pass_word(cert.divisibility.cond_ii_holds)
    );
    match &cert.reason {
        None => println!("certificate valid"),
        Some(reason) => println!("certificate invalid: {reason}"),
    }
    if cert.residual_log2 > RESIDUAL_WARNING_LOG2 {
        eprintln!(
            "warning: residual bound 2^{:.1} exceeds 2^-32; raise --precision",
            cert.residual_log2
        );
    }

    if let Some(path) = &args.json {
        let mut report = RunReport::new("tower", 0);
        report.input("k", args.k);
        report.input("precision", prec);
        report.input("cap", args.cap);
        report.push(Check::exact(
            "degree",
            cert.claimed_degree,
            cert.polynomial.degree().unwrap_or(0),
        ));
        report.push(Check::new(
            "residual",
            0,
            &cert.residual_bound,
            format!("2^{}", cert.residual_tolerance_log2),
            cert.residual_ok(),
        ));
        report.push(Check::new(
            "eisenstein",
            "pass",
            pass_word(cert.eisenstein.passed),
            orientation,
            cert.eisenstein.passed,
        ));
        report.push(Check::new(
            "divisibility",
            "pass",
            pass_word(cert.divisibility.passed()),
            "-",
            cert.divisibility.passed(),
        ));
        report.push(Check::new(
            "certificate",
            "valid",
            if cert.valid { "valid" } else { "invalid" },
            "-",
            cert.valid,
        ));
        report.write_json(path)?;
    }
    if cert.valid {
        Ok(())
    } else {
        Err(CliError::check(format!(
            "certificate for k={} is not valid",
            cert.k
        )))
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
