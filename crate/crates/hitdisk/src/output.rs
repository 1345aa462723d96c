//! Plot-data emission: CSV and JSON forms of a density profile.
//!
//! CSV carries a header row `alpha,density` and one row per grid point, with
//! `.` decimals and no locale. Values are printed with Rust's shortest
//! round-trip `f64` formatting, so `parse(emit(p)) == p` exactly. JSON is one
//! top-level object with the grids as arrays and the metadata echoed.

use crate::density::DensityProfile;
use crate::{Error, Result};

pub fn profile_to_csv(profile: &DensityProfile) -> String {
    let mut out = String::with_capacity(32 * profile.alphas.len() + 16);
    out.push_str("alpha,density\n");
    for (a, v) in profile.alphas.iter().zip(&profile.values) {
        out.push_str(&format!("{a},{v}\n"));
    }
    out
}

/// Parse the CSV form back into grids. Metadata does not travel through CSV.
pub fn csv_to_columns(text: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut lines = text.lines();
    match lines.next() {
        Some("alpha,density") => {}
        other => {
            return Err(Error::invalid(
                "csv",
                format!("missing header row, got {other:?}"),
            ))
        }
    }
    let mut alphas = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let (a, v) = line
            .split_once(',')
            .ok_or_else(|| Error::invalid("csv", format!("row {i}: missing comma")))?;
        let a: f64 = a
            .parse()
            .map_err(|e| Error::invalid("csv", format!("row {i}: {e}")))?;
        let v: f64 = v
            .parse()
            .map_err(|e| Error::invalid("csv", format!("row {i}: {e}")))?;
        alphas.push(a);
        values.push(v);
    }
    Ok((alphas, values))
}

pub fn profile_to_json(profile: &DensityProfile) -> String {
    serde_json::to_string_pretty(profile).expect("profile serialization cannot fail")
}

pub fn json_to_profile(text: &str) -> Result<DensityProfile> {
    serde_json::from_str(text).map_err(|e| Error::invalid("json", e.to_string()))
}
