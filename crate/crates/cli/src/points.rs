//! Candidate-point file parsing.
//!
//! Format: a line with the candidate count `k`, then `k` blocks of `n`
//! lines `re im` (decimal strings, scientific notation allowed), where
//! `n` is the number of variables of the system. `#` starts a comment;
//! blank lines are ignored.

use crate::config::CliError;

/// Raw decimal coordinate strings, one block per candidate solution.
/// Kept as text so one parse serves every precision a sweep visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsFile {
    pub blocks: Vec<Vec<(String, String)>>,
}

/// Parse a points file. `nvars` fixes the block length; `label` names the
/// file in error messages.
pub fn parse_points(text: &str, nvars: usize, label: &str) -> Result<PointsFile, CliError> {
    // (1-based line number, whitespace-separated fields), comments stripped.
    let mut entries: Vec<(usize, Vec<&str>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        entries.push((idx + 1, content.split_whitespace().collect()));
    }

    let Some((count_line, count_fields)) = entries.first() else {
        return Err(CliError::Input(format!("{label}: empty points file")));
    };
    if count_fields.len() != 1 {
        return Err(CliError::Input(format!(
            "{label}:{count_line}: expected a single candidate count"
        )));
    }
    let k: usize = count_fields[0].parse().map_err(|_| {
        CliError::Input(format!(
            "{label}:{count_line}: invalid candidate count '{}'",
            count_fields[0]
        ))
    })?;

    let coords = &entries[1..];
    if coords.len() != k * nvars {
        return Err(CliError::Input(format!(
            "{label}: {k} candidates with {nvars} coordinates each need {} lines, found {}",
            k * nvars,
            coords.len()
        )));
    }

    let mut blocks = Vec::with_capacity(k);
    for chunk in coords.chunks(nvars) {
        let mut block = Vec::with_capacity(nvars);
        for (line, fields) in chunk {
            if fields.len() != 2 {
                return Err(CliError::Input(format!(
                    "{label}:{line}: expected 're im', found {} fields",
                    fields.len()
                )));
            }
            for field in fields {
                match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => {}
                    _ => {
                        return Err(CliError::Input(format!(
                            "{label}:{line}: invalid coordinate '{field}'"
                        )))
                    }
                }
            }
            block.push((fields[0].to_owned(), fields[1].to_owned()));
        }
        blocks.push(block);
    }
    Ok(PointsFile { blocks })
}
