use std::fmt::Write as _;

use serde_json::{json, Value};

use quartica_core::arrangement::{incidence as compute_incidence, incidence_table, ordinary_tjurina, ColumnSelection};
use quartica_core::catalog::{self, CurveSpec};
use quartica_core::combinatorics::{count_check, hirzebruch_check, langer_lhs_bound, HirzebruchOutcome, WeakCombinatorics};
use quartica_core::milnor::analyze;
use quartica_core::serial;
use quartica_core::tangency::numeric::{find_bitangents_numeric, match_table, NumericQuartic};
use quartica_core::tangency::{classify_arrangement, verify_bitangent_set};
use quartica_core::{Error, HomPoly, SingularityProfile};

use crate::input::Source;
use crate::report::{CliError, Format, Outcome, RunReport};

pub fn list() -> Outcome {
    let names = catalog::builtin_names();
    let text = names.iter().map(|n| format!("{n}\n")).collect::<String>();
    Outcome::new(RunReport::new("list", "", true, json!(names)), text)
}

pub fn export(source: &Source) -> Result<Outcome, CliError> {
    let spec = source.curve()?;
    let mut out = Outcome::new(RunReport::new("export", &source.canonical(), true, serde_json::to_value(serial::curve_to_json(spec)).expect("serializable")), String::new());
    out.format = Format::Raw(serial::curve_to_string(spec) + "\n");
    Ok(out)
}

pub fn incidence(source: &Source, filter: Option<usize>) -> Result<Outcome, CliError> {
    let spec = source.curve()?;
    let inc = compute_incidence(&spec.lines)?;
    let n = spec.lines.len();
    let pairs: usize = inc.points.iter().map(|p| p.multiplicity * (p.multiplicity - 1) / 2).sum();
    let counting_ok = pairs == n * n.saturating_sub(1) / 2;

    let table = source.table();
    let columns = match (table, filter) {
        (Some(t), None | Some(4)) => t.point_columns(),
        (_, Some(k)) => ColumnSelection::Multiplicity(k),
        (None, None) => ColumnSelection::Default,
    };
    let computed = incidence_table(&inc, &spec.lines, &columns);
    let mismatches = table.map(|t| computed.mismatches(&t.printed_table()));
    let passed = counting_ok && mismatches.as_ref().is_none_or(|m| m.is_empty());

    let mut payload = serial::incidence_json(&inc);
    if let Some(k) = filter {
        if let Some(points) = payload["points"].as_array_mut() {
            points.retain(|p| p["multiplicity"] == json!(k));
        }
    }
    payload["ordinary_tjurina"] = json!(ordinary_tjurina(&inc));
    payload["counting_identity"] = json!({ "pairs": pairs, "expected": n * n.saturating_sub(1) / 2 });
    if let Some(m) = &mismatches {
        payload["table_mismatches"] = json!(m.iter().map(|(r, c)| format!("{r}/{c}")).collect::<Vec<_>>());
    }

    let mut text = format!("lines: {n}\n");
    for (k, v) in &inc.t_vector {
        if filter.is_none_or(|f| f == *k) {
            let _ = writeln!(text, "t{k} = {v}");
        }
    }
    let _ = writeln!(text, "ordinary tjurina: {}", ordinary_tjurina(&inc));
    let _ = writeln!(
        text,
        "counting identity: {pairs} pairs, {}",
        if counting_ok { "ok" } else { "VIOLATED" }
    );
    if let Some(m) = &mismatches {
        if m.is_empty() {
            let _ = writeln!(text, "table: matches the shipped table ({} columns)", computed.col_labels.len());
        } else {
            for (r, c) in m {
                let _ = writeln!(text, "table mismatch at {r}/{c}");
            }
        }
    }

    let canonical = format!("{}\nfilter={filter:?}", source.canonical());
    let mut out = Outcome::new(RunReport::new("incidence", &canonical, passed, payload), text);
    out.csv = Some(computed.to_csv());
    Ok(out)
}

fn quartic_of(spec: &CurveSpec) -> Result<HomPoly, CliError> {
    if let Some(q) = &spec.quartic {
        return Ok(q.clone());
    }
    match &spec.extra {
        Some(p) if p.degree() == 4 && spec.lines.is_empty() => Ok(p.clone()),
        _ => Err(CliError::Input("the input carries no quartic".into())),
    }
}

pub fn verify(source: &Source) -> Result<Outcome, CliError> {
    let spec = source.curve()?;
    let quartic = quartic_of(spec)?;
    if spec.lines.len() != 28 {
        return Err(CliError::Input(format!("expected 28 lines, got {}", spec.lines.len())));
    }
    let mut lambda = Value::Null;
    let mut quartic = quartic;
    let mut report = verify_bitangent_set(&quartic, &spec.lines)?;
    if source.table().is_some_and(|t| t.name == "klein") {
        for (label, cand) in ["3e", "-3e-3"].iter().zip(catalog::klein_lambda_candidates(&spec.field)) {
            let q = catalog::ciani(&cand);
            let r = verify_bitangent_set(&q, &spec.lines)?;
            if r.passed() {
                lambda = json!({ "label": label, "coeffs": cand.coeff_strings() });
                quartic = q;
                report = r;
                break;
            }
        }
    }
    let profile = if report.passed() {
        classify_arrangement(&quartic, &spec.lines).ok()
    } else {
        None
    };
    let passed = report.passed();
    let mut payload = serial::tangency_json(&report, profile.as_ref());
    if !lambda.is_null() {
        payload["lambda"] = lambda.clone();
    }

    let mut text = String::new();
    for (i, c) in report.per_line.iter().enumerate() {
        let _ = writeln!(text, "line {:>2}: {c}", i + 1);
    }
    let _ = writeln!(text, "hyperflexes: h = {}", report.h);
    if let Some(l) = lambda.get("label") {
        let _ = writeln!(text, "lambda: {}", l.as_str().unwrap_or_default());
    }
    if let Some(p) = &profile {
        let _ = writeln!(text, "tau of curve + lines: {}", p.tau());
    }
    for i in &report.failures {
        let _ = writeln!(text, "line {} is not bitangent: {}", i + 1, report.per_line[*i]);
    }
    Ok(Outcome::new(RunReport::new("verify", &source.canonical(), passed, payload), text))
}

pub fn milnor(source: &Source) -> Result<Outcome, CliError> {
    let spec = source.curve()?;
    let f = spec.polynomial();
    let r = match analyze(&f) {
        Ok(r) => r,
        Err(Error::DegreeCap(d)) => {
            let hint = profile_tau(spec)
                .map(|t| format!("; the singularity profile gives tau = {t}"))
                .unwrap_or_default();
            return Err(CliError::Input(format!(
                "degree {d} exceeds the linear-algebra cap of 12, use the profile-based tau instead{hint}"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let payload = serial::resolution_json(&r);
    let mut text = format!("degree: {}\ntau: {}\nmdr: {}\n", r.d, r.tau, r.mdr);
    let _ = writeln!(text, "exponents: {:?}", r.resolution.d_list);
    let _ = writeln!(text, "second syzygies: {:?}", r.resolution.e_list);
    let _ = writeln!(text, "class: {}", r.class);
    Ok(Outcome::new(RunReport::new("milnor", &source.canonical(), true, payload), text))
}

fn profile_tau(spec: &CurveSpec) -> Option<u64> {
    match (&spec.quartic, &spec.extra) {
        (Some(q), None) => classify_arrangement(q, &spec.lines).ok().map(|p| p.tau()),
        (None, None) => compute_incidence(&spec.lines).ok().map(|i| ordinary_tjurina(&i) as u64),
        _ => None,
    }
}

pub fn hirzebruch(source: &Source) -> Result<Outcome, CliError> {
    let (wc, profile) = match source {
        Source::Combinatorics(wc) => (*wc, None),
        Source::Curve { spec, .. } => {
            if spec.extra.is_some() {
                return Err(CliError::Input("only quartic-plus-lines curves have a weak combinatorics".into()));
            }
            let k = u64::from(spec.quartic.is_some());
            let p = match &spec.quartic {
                Some(q) => classify_arrangement(q, &spec.lines)?,
                None => line_profile(spec)?,
            };
            (WeakCombinatorics::from_profile(k, spec.lines.len() as u64, &p), Some(p))
        }
    };
    let count = count_check(&wc);
    let h = hirzebruch_check(&wc);
    let langer = langer_lhs_bound(&wc);
    let passed = count.holds() && langer.feasible && !matches!(h, HirzebruchOutcome::Evaluated { holds: false, .. });

    let mut payload = json!({
        "wc": wc,
        "count_check": count,
        "hirzebruch": h,
        "langer": langer,
    });
    if let Some(p) = &profile {
        payload["profile"] = serde_json::to_value(p).expect("serializable");
    }

    let mut text = format!(
        "k={} d={} n2={} n3={} n4={} t2={} t5={} d6={} t7={}\n",
        wc.k, wc.d, wc.n2, wc.n3, wc.n4, wc.t2, wc.t5, wc.d6, wc.t7
    );
    let _ = writeln!(text, "count check: {} = {} ({})", count.lhs, count.rhs, if count.holds() { "ok" } else { "VIOLATED" });
    match &h {
        HirzebruchOutcome::Evaluated { holds, lhs, rhs, slack } => {
            let _ = writeln!(
                text,
                "hirzebruch: {lhs} >= {rhs}, slack {slack} ({})",
                if *holds { "holds" } else { "VIOLATED" }
            );
        }
        HirzebruchOutcome::HypothesisViolated { reason } => {
            let _ = writeln!(text, "hirzebruch: hypothesis violated ({reason})");
        }
    }
    let _ = writeln!(
        text,
        "langer: {} <= {} ({})",
        langer.value,
        langer.cap,
        if langer.feasible { "feasible" } else { "INFEASIBLE" }
    );
    Ok(Outcome::new(RunReport::new("hirzebruch", &source.canonical(), passed, payload), text))
}

fn line_profile(spec: &CurveSpec) -> Result<SingularityProfile, CliError> {
    let inc = compute_incidence(&spec.lines)?;
    let mut p = SingularityProfile::default();
    for (&k, &v) in &inc.t_vector {
        let v = v as u64;
        match k {
            2 => p.n2 = v,
            3 => p.n3 = v,
            4 => p.n4 = v,
            _ => return Err(CliError::Input(format!("a point of multiplicity {k} is outside the supported catalog"))),
        }
    }
    Ok(p)
}

pub fn find_bitangents(source: &Source, tol: f64, table: Option<&str>) -> Result<Outcome, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Input(format!("tolerance must be positive, got {tol}")));
    }
    let spec = source.curve()?;
    let quartic = quartic_of(spec)?;
    let exact = match table {
        Some(name) => Some(catalog::table_by_name(name).ok_or_else(|| CliError::Input(format!("unknown table `{name}`")))?),
        None => None,
    };
    let nq = NumericQuartic::from_poly(&quartic)?;
    let lines = match find_bitangents_numeric(&nq, tol) {
        Ok(l) => l,
        Err(Error::BitangentCount { found, residuals }) => {
            let worst = residuals.iter().copied().fold(0.0, f64::max);
            let payload = json!({ "found": found, "worst_residual": format!("{worst:.3e}") });
            let text = format!("found {found} lines instead of 28 (worst residual {worst:.3e})\n");
            return Ok(Outcome::new(RunReport::new("find-bitangents", &canonical_numeric(source, tol, table), false, payload), text));
        }
        Err(e) => return Err(e.into()),
    };
    let residual_ok = lines.iter().all(|l| l.residual < tol);
    let mut passed = lines.len() == 28 && residual_ok;
    let mut payload = json!({
        "count": lines.len(),
        "lines": lines.iter().map(serial::numeric_line_json).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (i, l) in lines.iter().enumerate() {
        let [a, b, c] = l.normalized_strings();
        let _ = writeln!(text, "{:>2}: ({a} : {b} : {c})  residual {:.1e}", i + 1, l.residual);
    }
    if let Some(t) = &exact {
        let m = match_table(&lines, &t.lines, tol)?;
        passed &= m.matched == m.total;
        payload["match"] = json!({
            "table": t.name,
            "matched": m.matched,
            "total": m.total,
            "max_diff": format!("{:.3e}", m.max_diff),
            "unmatched": m.unmatched.iter().map(|i| i + 1).collect::<Vec<_>>(),
        });
        let _ = writeln!(text, "matched {}/{} lines of the {} table (max diff {:.1e})", m.matched, m.total, t.name, m.max_diff);
    }
    Ok(Outcome::new(RunReport::new("find-bitangents", &canonical_numeric(source, tol, table), passed, payload), text))
}

fn canonical_numeric(source: &Source, tol: f64, table: Option<&str>) -> String {
    format!("{}\ntol={tol:e}\nmatch={table:?}", source.canonical())
}
