use std::fmt::Write as _;
use std::time::Instant;

use hyperdarboux_core::ladder::{generate_family, ladder_from_oracle};
use hyperdarboux_core::reference::{compare_at, printed_forms, FormValue};
use hyperdarboux_core::suite::{run_suite, Status, SuiteOptions, SuiteReport};
use hyperdarboux_core::{
    factor_pair, Branch, DarbouxError, Direction, FamilySpec, LadderError, Rational,
};

use crate::args::{parse_points, FactorizeArgs, GenerateArgs, LadderArgs, VerifyArgs};
use crate::error::CliError;
use crate::records::*;
use crate::Outcome;

fn form_json(v: &FormValue) -> serde_json::Value {
    match v {
        FormValue::Scalar(r) => rat(r).into(),
        FormValue::Poly(p) => poly(p).into(),
        FormValue::Operator(op) => serde_json::to_value(operator(op)).unwrap_or_default(),
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn warn(fam: &FamilySpec, stderr: &mut String) {
    for w in fam.warnings() {
        let _ = writeln!(stderr, "warning: {w}");
    }
}

fn branch_list(bs: &[Branch]) -> String {
    bs.iter()
        .map(|b| b.index().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// ---- verify -------------------------------------------------------------

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let fam = args.family.build()?;
    let mut out = Outcome::default();
    warn(&fam, &mut out.stderr);
    let options = SuiteOptions {
        n_max: args.n_max,
        branches: args.branch.branches(),
        strict: args.strict,
        perturbation: args.perturb.map(Into::into),
    };
    let started = Instant::now();
    let report = run_suite(&fam, &options);
    let elapsed = args.timing.then(|| started.elapsed());

    out.stdout = if args.json {
        json_line(&verify_record(&report, elapsed.map(|d| d.as_millis())))?
    } else if args.csv {
        verify_csv(&report)?
    } else {
        verify_text(&report, elapsed)
    };
    out.code = if report.passed() { 0 } else { 1 };
    Ok(out)
}

fn reference_summaries(report: &SuiteReport) -> Option<Vec<ReferenceSummary>> {
    let cmp = report.reference.as_ref()?;
    Some(
        printed_forms(report.family.kind())
            .map(|form| {
                let (comparisons, all_match) = cmp.expression_status(form.name);
                ReferenceSummary {
                    expression: form.name,
                    comparisons,
                    all_match,
                    known_erratum: form.known_erratum,
                }
            })
            .collect(),
    )
}

fn verify_record(report: &SuiteReport, elapsed_ms: Option<u128>) -> VerifyRecord {
    let checks = report
        .tallies()
        .into_iter()
        .map(|(check, t)| CheckSummary {
            check,
            pass: t.pass,
            fail: t.fail,
            skip: t.skip,
            status: report.status_of(check).map_or("skip", Status::name),
        })
        .collect();
    let notices = report
        .rows
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| Notice {
            check: r.check,
            n: r.n,
            branch: r.branch.map(Branch::index),
            status: r.status.name(),
            detail: r.detail.clone(),
        })
        .collect();
    VerifyRecord {
        family: report.family.kind().name().to_string(),
        params: params(&report.family),
        n_max: report.options.n_max,
        branches: report.options.branches.iter().map(|b| b.index()).collect(),
        strict: report.options.strict,
        perturb: report.options.perturbation.map(|p| p.name()),
        checks,
        notices,
        reference: reference_summaries(report),
        passed: report.passed(),
        elapsed_ms,
    }
}

fn verify_text(report: &SuiteReport, elapsed: Option<std::time::Duration>) -> String {
    let mut s = String::new();
    let o = &report.options;
    let _ = writeln!(s, "family   {}", report.family.label());
    let _ = writeln!(s, "n        0..={}", o.n_max);
    let _ = writeln!(s, "branches {}", branch_list(&o.branches));
    if let Some(p) = o.perturbation {
        let _ = writeln!(s, "perturb  {}", p.name());
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:<18}{:>6}{:>6}{:>6}  status",
        "check", "pass", "fail", "skip"
    );
    for (name, t) in report.tallies() {
        let status = report.status_of(name).map_or("skip", Status::name);
        let _ = writeln!(
            s,
            "{name:<18}{:>6}{:>6}{:>6}  {status}",
            t.pass, t.fail, t.skip
        );
    }
    let notices: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.status != Status::Pass)
        .collect();
    if !notices.is_empty() {
        let _ = writeln!(s);
        for r in notices {
            let mut at = String::new();
            if let Some(n) = r.n {
                let _ = write!(at, " n={n}");
            }
            if let Some(b) = r.branch {
                let _ = write!(at, " branch={b}");
            }
            let detail = r.detail.as_deref().unwrap_or("identity does not hold");
            let _ = writeln!(s, "{} {}{at}: {detail}", r.status.name(), r.check);
        }
    }
    if let Some(refs) = reference_summaries(report) {
        let _ = writeln!(s);
        for r in refs {
            let state = match (r.all_match, r.known_erratum) {
                (true, _) => "match".to_string(),
                (false, Some(note)) => format!("known erratum: {note}"),
                (false, None) => "MISMATCH".to_string(),
            };
            let _ = writeln!(
                s,
                "printed {:<6} {:>3} samples  {state}",
                r.expression, r.comparisons
            );
        }
    }
    let _ = writeln!(s);
    if let Some(d) = elapsed {
        let _ = writeln!(s, "elapsed  {} ms", d.as_millis());
    }
    let _ = writeln!(
        s,
        "result   {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    s
}

fn verify_csv(report: &SuiteReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "n", "branch", "status", "detail"])?;
    for r in &report.rows {
        w.write_record([
            r.check.to_string(),
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.branch.map(|b| b.to_string()).unwrap_or_default(),
            r.status.name().to_string(),
            r.detail.clone().unwrap_or_default(),
        ])?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

// ---- factorize ----------------------------------------------------------

pub fn factorize(args: &FactorizeArgs) -> Result<Outcome, CliError> {
    let fam = args.family.build()?;
    let mut out = Outcome::default();
    warn(&fam, &mut out.stderr);
    let mut records = Vec::new();
    for b in args.branch.branches() {
        records.push(factorize_one(&fam, args.n, b, args.strict, &mut out)?);
    }
    out.stdout = if args.json {
        if records.len() == 1 {
            json_line(&records[0])?
        } else {
            json_line(&records)?
        }
    } else {
        records
            .iter()
            .map(factorize_text)
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(out)
}

fn factorize_one(
    fam: &FamilySpec,
    n: i64,
    b: Branch,
    strict: bool,
    out: &mut Outcome,
) -> Result<FactorizeRecord, CliError> {
    let mut rec = FactorizeRecord {
        family: fam.kind().name().to_string(),
        params: params(fam),
        n,
        branch: b.index(),
        degenerate: None,
        phi: None,
        psi: None,
        mu: None,
        f: None,
        g: None,
        checks: None,
        reference: Vec::new(),
    };
    let data = match factor_pair(fam, n, b) {
        Ok(d) => d,
        Err(e @ DarbouxError::DegenerateDenominator { .. }) => {
            let _ = writeln!(out.stderr, "notice: {e}");
            if strict {
                out.code = 1;
            }
            rec.degenerate = Some(e.to_string());
            return Ok(rec);
        }
        Err(e) => return Err(e.into()),
    };
    let c = data.inputs(fam).check_all(fam);
    if !c.all() {
        out.code = 1;
    }
    rec.phi = Some(rat(data.phi()));
    rec.psi = Some(rat(data.psi()));
    rec.mu = Some(rat(data.mu()));
    rec.f = Some(poly(data.f()));
    rec.g = Some(poly(data.g()));
    rec.checks = Some(CheckFlags {
        factorization: c.factorization,
        riccati_system: c.riccati_system,
        swap: c.swap,
        eigen_shift: c.eigen_shift,
        riccati_residual: c.riccati_residual,
        commutation: c.commutation,
    });
    let report = compare_at(fam, &[n]);
    for cmp in &report.entries {
        let Some(form) = printed_forms(fam.kind()).find(|f| f.name == cmp.expression) else {
            continue;
        };
        if form.quantity.branch().is_some_and(|fb| fb != b) {
            continue;
        }
        if !cmp.matches && cmp.known_erratum.is_none() {
            out.code = 1;
        }
        rec.reference.push(ReferenceEntry {
            expression: cmp.expression,
            printed: form_json(&cmp.printed),
            computed: form_json(&cmp.computed),
            matches: cmp.matches,
            known_erratum: cmp.known_erratum,
        });
    }
    Ok(rec)
}

fn factorize_text(r: &FactorizeRecord) -> String {
    let mut s = String::new();
    let list = |v: &Option<Vec<String>>| {
        v.as_deref()
            .map(|v| format!("[{}]", v.join(", ")))
            .unwrap_or_default()
    };
    let _ = writeln!(s, "n={} branch={}", r.n, r.branch);
    if let Some(d) = &r.degenerate {
        let _ = writeln!(s, "  degenerate: {d}");
        return s;
    }
    let _ = writeln!(s, "  phi = {}", r.phi.as_deref().unwrap_or_default());
    let _ = writeln!(s, "  psi = {}", r.psi.as_deref().unwrap_or_default());
    let _ = writeln!(s, "  mu  = {}", r.mu.as_deref().unwrap_or_default());
    let _ = writeln!(s, "  f   = {}", list(&r.f));
    let _ = writeln!(s, "  g   = {}", list(&r.g));
    if let Some(c) = &r.checks {
        let flags = [
            ("factorization", c.factorization),
            ("riccati_system", c.riccati_system),
            ("swap", c.swap),
            ("eigen_shift", c.eigen_shift),
            ("riccati_residual", c.riccati_residual),
            ("commutation", c.commutation),
        ];
        for (name, ok) in flags {
            let _ = writeln!(s, "  {name:<17} {}", if ok { "ok" } else { "FAILED" });
        }
    }
    for e in &r.reference {
        let state = match (e.matches, e.known_erratum) {
            (true, _) => "matches printed form",
            (false, Some(_)) => "differs from printed form (known erratum)",
            (false, None) => "DIFFERS from printed form",
        };
        let _ = writeln!(s, "  {:<6} {state}", e.expression);
    }
    s
}

// ---- ladder -------------------------------------------------------------

pub fn ladder(args: &LadderArgs) -> Result<Outcome, CliError> {
    let fam = args.family.build()?;
    let mut out = Outcome::default();
    warn(&fam, &mut out.stderr);
    let direction: Direction = args.direction.into();
    let rec = match ladder_from_oracle(&fam, args.n, direction) {
        Ok(r) => LadderRecord {
            n: r.n,
            direction: direction.name(),
            c: rat(&r.c),
            target: Some(poly(&r.target)),
            note: None,
        },
        Err(e @ LadderError::Annihilated { .. }) => {
            let _ = writeln!(out.stderr, "notice: {e}");
            LadderRecord {
                n: args.n,
                direction: direction.name(),
                c: "0".into(),
                target: None,
                note: Some(e.to_string()),
            }
        }
        Err(e) => return Err(e.into()),
    };
    out.stdout = if args.json {
        json_line(&rec)?
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{} n={} {}", fam.label(), rec.n, rec.direction);
        let _ = writeln!(s, "c      = {}", rec.c);
        match &rec.target {
            Some(t) => {
                let _ = writeln!(s, "target = [{}]", t.join(", "));
            }
            None => {
                let _ = writeln!(s, "target = none (annihilated)");
            }
        }
        s
    };
    Ok(out)
}

// ---- generate -----------------------------------------------------------

pub fn generate(args: &GenerateArgs) -> Result<Outcome, CliError> {
    let fam = args.family.build()?;
    let points = args.points.as_deref().map(parse_points).transpose()?;
    let mut out = Outcome::default();
    warn(&fam, &mut out.stderr);
    let terms = generate_family(&fam, args.n_max)?;
    let xs: Option<Vec<usize>> = points.map(|(a, b)| (a..=b).collect());
    let rho: Option<Vec<String>> =
        points.map(|(a, b)| fam.gauge_lattice(b).values[a..=b].iter().map(rat).collect());

    let records: Vec<GeneratedRecord> = terms
        .iter()
        .map(|t| GeneratedRecord {
            n: t.n,
            c1: t.raised_by.as_ref().map(rat),
            poly: poly(&t.poly),
            values: xs.as_ref().map(|xs| {
                xs.iter()
                    .map(|&x| rat(&t.poly.eval(&Rational::from(x as i64))))
                    .collect()
            }),
        })
        .collect();

    out.stdout = if args.json {
        json_line(&GenerateRecord {
            family: fam.kind().name().to_string(),
            params: params(&fam),
            terms: records,
            points: xs,
            rho,
        })?
    } else if args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n".to_string(), "c1".into(), "poly".into()];
        if let Some(xs) = &xs {
            header.extend(xs.iter().map(|x| format!("x={x}")));
        }
        w.write_record(&header)?;
        for r in &records {
            let mut row = vec![
                r.n.to_string(),
                r.c1.clone().unwrap_or_default(),
                format!("[{}]", r.poly.join(", ")),
            ];
            row.extend(r.values.iter().flatten().cloned());
            w.write_record(&row)?;
        }
        if let Some(rho) = &rho {
            let mut row = vec!["rho".to_string(), String::new(), String::new()];
            row.extend(rho.iter().cloned());
            w.write_record(&row)?;
        }
        finish_csv(w)?
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{}", fam.label());
        for r in &records {
            let c1 = r.c1.as_deref().unwrap_or("-");
            let _ = write!(s, "n={:<3} c1={c1:<10} [{}]", r.n, r.poly.join(", "));
            if let Some(v) = &r.values {
                let _ = write!(s, "  values: {}", v.join(" "));
            }
            let _ = writeln!(s);
        }
        if let Some(rho) = &rho {
            let _ = writeln!(s, "rho: {}", rho.join(" "));
        }
        s
    };
    Ok(out)
}
