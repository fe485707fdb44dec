//! Rendering helpers shared by the subcommands.

use crate::CliError;

/// Human-aligned columns: a header row, then one row per record. Columns
/// are right-aligned except the last, which is left as is.
pub fn plain_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let last = headers.len().saturating_sub(1);
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == last {
                    c.to_string()
                } else {
                    format!("{:>w$}", c, w = widths[i])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = vec![line(headers.to_vec())];
    out.extend(
        rows.iter()
            .map(|r| line(r.iter().map(String::as_str).collect())),
    );
    out.join("\n")
}

pub fn csv_table(headers: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Failure(format!("csv: {e}"));
    w.write_record(headers).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Failure(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    Ok(text.trim_end().to_string())
}

pub fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}
