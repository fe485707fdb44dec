use num_bigint::BigInt;
use repulsion_core::partition::{PartitionError, PartitionTable, TableCache};
use repulsion_core::pell::PellError;
use repulsion_core::polyalg::format_rational;
use repulsion_core::quasipoly::QuasipolyError;
use repulsion_core::repulsion::{scan_table, DEFAULT_CHUNK};
use repulsion_core::shift::{bounded_points, ShiftError};
use repulsion_core::{classify_progression, extract, family, Hit, RatPoly};
use serde_json::json;

use crate::args::{Command, Format};
use crate::output::{csv_table, json, plain_table};
use crate::{claims, CliError, Outcome};

pub fn dispatch(cmd: Command, cache: &TableCache) -> Result<Outcome, CliError> {
    let text = match cmd {
        Command::Pb { bound, n, format } => pb(cache, bound, n, format)?,
        Command::Quasi { bound, format } => quasi(bound, format)?,
        Command::Pell { r, count, format } => pell(r, count, format)?,
        Command::Delta {
            bound,
            k,
            n,
            format,
        } => delta(cache, bound, k, n, format)?,
        Command::Scan {
            bound,
            k,
            horizon,
            d,
            min_base,
            format,
        } => scan(cache, bound, k, horizon, d, min_base, format)?,
        Command::Classify {
            bound,
            k,
            d,
            residue,
            format,
        } => classify(bound, k, d, residue, format)?,
        Command::CurvePoints {
            b0,
            poly,
            k,
            xmax,
            format,
        } => curve_points(&b0, &poly, k, xmax, format)?,
        Command::Reproduce { only } => return reproduce(cache, only.as_deref()),
    };
    Ok(Outcome::ok(text))
}

pub fn table(cache: &TableCache, bound: u32, n: u64) -> Result<PartitionTable, CliError> {
    let n = usize::try_from(n).map_err(|_| CliError::Usage(format!("index {n} is too large")))?;
    cache.load_or_build(bound, n).map_err(partition_error)
}

fn partition_error(e: PartitionError) -> CliError {
    CliError::Failure(format!("partition table: {e}"))
}

fn quasi_error(e: QuasipolyError) -> CliError {
    match e {
        QuasipolyError::UnsupportedBound(_) => CliError::Usage(format!("--B: {e}")),
        other => CliError::Failure(other.to_string()),
    }
}

fn shift_error(e: ShiftError) -> CliError {
    match e {
        ShiftError::Quasipoly(q) => quasi_error(q),
        ShiftError::ResidueOutOfRange { .. } => CliError::Usage(format!("--residue: {e}")),
        ShiftError::NonPositiveB0 => CliError::Usage(format!("--b0: {e}")),
        ShiftError::NonIntegralCurve => CliError::Usage(format!("--poly: {e}")),
        other => CliError::Failure(other.to_string()),
    }
}

fn hit_row(h: &Hit) -> Vec<String> {
    vec![
        h.n.to_string(),
        h.p.to_string(),
        h.m.to_string(),
        h.t.to_string(),
        h.delta.to_string(),
    ]
}

const HIT_HEADERS: [&str; 5] = ["n", "p", "m", "t", "delta"];

fn pb(cache: &TableCache, bound: u32, n: u64, format: Format) -> Result<String, CliError> {
    let t = table(cache, bound, n)?;
    let p = &t.values()[n as usize];
    Ok(match format {
        Format::Plain => p.to_string(),
        Format::Json => json(&json!({ "B": bound, "n": n, "p": p.to_string() })),
        Format::Csv => csv_table(
            &["B", "n", "p"],
            &[vec![bound.to_string(), n.to_string(), p.to_string()]],
        )?,
    })
}

fn quasi(bound: u32, format: Format) -> Result<String, CliError> {
    let q = extract(bound).map_err(quasi_error)?;
    Ok(match format {
        Format::Json => json(&q.to_json()),
        Format::Plain => {
            let mut lines = vec![format!(
                "B = {}, L = {}, alpha = {}",
                q.bound(),
                q.period(),
                q.alpha()
            )];
            for (r, c) in q.components().iter().enumerate() {
                lines.push(format!("Q_{r}(t) = {}", c.display_in("t")));
            }
            lines.join("\n")
        }
        Format::Csv => {
            let mut headers = vec!["residue".to_string()];
            headers.extend((0..bound).map(|i| format!("c{i}")));
            let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = q
                .components()
                .iter()
                .enumerate()
                .map(|(r, c)| {
                    let mut row = vec![r.to_string()];
                    row.extend((0..bound as usize).map(|i| format_rational(&c.coeff(i))));
                    row
                })
                .collect();
            csv_table(&headers, &rows)?
        }
    })
}

fn pell(r: u32, count: usize, format: Format) -> Result<String, CliError> {
    let sols = family(r, count).map_err(|e| match e {
        PellError::NoFamily(_) => CliError::Usage(format!("--r: {e}")),
        other => CliError::Failure(other.to_string()),
    })?;
    let rows: Vec<Vec<String>> = sols
        .iter()
        .map(|s| {
            vec![
                s.t.to_string(),
                s.n.to_string(),
                s.m.to_string(),
                s.x.to_string(),
            ]
        })
        .collect();
    let headers = ["t", "n", "m", "x"];
    Ok(match format {
        Format::Json => json(&serde_json::to_value(&sols).expect("plain data")),
        Format::Csv => csv_table(&headers, &rows)?,
        Format::Plain => plain_table(&headers, &rows),
    })
}

fn delta(
    cache: &TableCache,
    bound: u32,
    k: u32,
    n: u64,
    format: Format,
) -> Result<String, CliError> {
    let t = table(cache, bound, n)?;
    let hit = Hit::new(bound, k, n, t.values()[n as usize].clone());
    if !hit.verify() {
        return Err(CliError::Failure(format!(
            "distance at n = {n} failed re-verification"
        )));
    }
    Ok(match format {
        Format::Json => json(&serde_json::to_value(&hit).expect("plain data")),
        Format::Csv => csv_table(&HIT_HEADERS, &[hit_row(&hit)])?,
        Format::Plain => plain_table(&HIT_HEADERS, &[hit_row(&hit)]),
    })
}

fn scan(
    cache: &TableCache,
    bound: u32,
    k: u32,
    horizon: u64,
    d: u64,
    min_base: Option<u64>,
    format: Format,
) -> Result<String, CliError> {
    let t = table(cache, bound, horizon)?;
    let min = BigInt::from(min_base.unwrap_or(0));
    let hits: Vec<Hit> = scan_table(&t, k, horizon, &BigInt::from(d), DEFAULT_CHUNK)
        .into_iter()
        .filter(|h| h.m >= min)
        .collect();
    if let Some(bad) = hits.iter().find(|h| !h.verify()) {
        return Err(CliError::Failure(format!(
            "hit at n = {} failed re-verification",
            bad.n
        )));
    }
    let rows: Vec<Vec<String>> = hits.iter().map(hit_row).collect();
    Ok(match format {
        Format::Json => json(&json!({
            "B": bound,
            "k": k,
            "N": horizon,
            "d": d,
            "min_base": min_base,
            "count": hits.len(),
            "hits": hits,
        })),
        Format::Csv => csv_table(&HIT_HEADERS, &rows)?,
        Format::Plain => plain_table(&HIT_HEADERS, &rows),
    })
}

fn classify(
    bound: u32,
    k: u32,
    d: u64,
    residue: Option<usize>,
    format: Format,
) -> Result<String, CliError> {
    let report = classify_progression(bound, k, d, residue).map_err(shift_error)?;
    let rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.residue.to_string(),
                e.t.to_string(),
                e.class.label().to_string(),
                e.class.details().to_string(),
            ]
        })
        .collect();
    let headers = ["residue", "t", "class", "details"];
    Ok(match format {
        Format::Json => json(&report.to_json()),
        Format::Csv => csv_table(&headers, &rows)?,
        Format::Plain => {
            let head = format!(
                "B = {}, k = {}, d = {}, L = {}, theorem hypotheses: {}",
                report.bound, report.k, report.tolerance, report.period, report.theorem_hypotheses
            );
            format!("{head}\n{}", plain_table(&headers, &rows))
        }
    })
}

fn curve_points(
    b0: &BigInt,
    poly: &str,
    k: u32,
    xmax: u64,
    format: Format,
) -> Result<String, CliError> {
    let f: RatPoly = serde_json::from_str(poly).map_err(|e| {
        CliError::Usage(format!(
            "--poly: expected a JSON array of rational strings: {e}"
        ))
    })?;
    let pts = bounded_points(b0, &f, k, xmax).map_err(shift_error)?;
    let rows: Vec<Vec<String>> = pts
        .iter()
        .map(|(x, y)| vec![x.to_string(), y.to_string()])
        .collect();
    Ok(match format {
        Format::Json => json(&serde_json::to_value(&rows).expect("plain data")),
        Format::Csv => csv_table(&["x", "y"], &rows)?,
        Format::Plain => plain_table(&["x", "y"], &rows),
    })
}

fn reproduce(cache: &TableCache, only: Option<&str>) -> Result<Outcome, CliError> {
    let selected = claims::select(only).map_err(CliError::Usage)?;
    let results: Vec<claims::ClaimResult> = selected.iter().map(|c| c.run(cache)).collect();
    let mut lines: Vec<String> = results.iter().map(|r| r.line()).collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    lines.push(format!(
        "{} of {} claims passed",
        results.len() - failed,
        results.len()
    ));
    Ok(Outcome {
        text: lines.join("\n"),
        success: failed == 0,
    })
}
