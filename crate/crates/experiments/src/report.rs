//! CSV tables and the comparison summary.

use cusp_core::fit::fit_loglog;

use crate::error::{Error, Result};
use crate::ridge::RidgeSample;

pub const RIDGE_HEADER: [&str; 3] = ["rho", "percentile_stress", "energy"];
pub const GORGE_HEADER: [&str; 2] = ["r", "percentile_stress"];
pub const HORN_HEADER: [&str; 2] = ["eps", "max_error"];
pub const OVERLAP_HEADER: [&str; 2] = ["r", "mismatch"];
pub const MODEL_HEADER: [&str; 3] = ["r", "stress", "local_slope"];

/// CSV text with the given header. Values use the shortest representation
/// that reads back to the same `f64`.
pub fn write_table(header: &[&str], rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::Table(format!(
                "row has {} fields, header {}",
                row.len(),
                header.len()
            )));
        }
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Table(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Table(e.to_string()))
}

/// Parse CSV text written by [`write_table`], checking the header.
pub fn read_table(text: &str, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let got: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if got != header {
        return Err(Error::Table(format!(
            "expected header {}, found {}",
            header.join(","),
            got.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Table(format!("row {}: bad number `{f}`", i + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Table("no data rows".into()));
    }
    Ok(rows)
}

pub fn ridge_rows(samples: &[RidgeSample]) -> Vec<Vec<f64>> {
    samples
        .iter()
        .map(|s| vec![s.rho, s.percentile_stress, s.energy])
        .collect()
}

pub fn pair_rows(samples: &[(f64, f64)]) -> Vec<Vec<f64>> {
    samples.iter().map(|&(a, b)| vec![a, b]).collect()
}

pub fn ridge_samples(rows: &[Vec<f64>]) -> Vec<RidgeSample> {
    rows.iter()
        .map(|r| RidgeSample {
            rho: r[0],
            percentile_stress: r[1],
            energy: r[2],
        })
        .collect()
}

/// One line of the comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub geometry: &'static str,
    pub prediction: &'static str,
    pub observation: String,
}

fn slope(points: Vec<(f64, f64)>) -> Result<f64> {
    Ok(fit_loglog(&points, None)?.slope)
}

/// Asymptotic prediction against fitted FEM slopes, refitted from sweep data.
pub fn summary_rows(
    free: &[RidgeSample],
    forced: &[RidgeSample],
    gorge: &[(f64, f64)],
) -> Result<Vec<SummaryRow>> {
    let free_slope = slope(free.iter().map(|s| (s.rho, s.percentile_stress)).collect())?;
    let stress = slope(
        forced
            .iter()
            .map(|s| (s.rho, s.percentile_stress))
            .collect(),
    )?;
    let energy = slope(forced.iter().map(|s| (s.rho, s.energy)).collect())?;
    let g = slope(gorge.to_vec())?;
    Ok(vec![
        SummaryRow {
            geometry: "Free-tip ridge",
            prediction: "no universal r^-1/2 growth",
            observation: format!("cut-off slope {free_slope:+.2}"),
        },
        SummaryRow {
            geometry: "Ridge with fixed tip force",
            prediction: "|sigma| ~ rho^-m, E ~ rho^(1-m)",
            observation: format!("slopes {stress:.2}, {energy:.2}"),
        },
        SummaryRow {
            geometry: "Gorge",
            prediction: "|sigma| ~ r^-1/2",
            observation: format!("profile slope {g:.3}"),
        },
    ])
}

/// Markdown rendering of the summary.
pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut out =
        String::from("| Geometry | Asymptotic prediction | FEM observation |\n|---|---|---|\n");
    for r in rows {
        let cell = |t: &str| t.replace('|', "\\|");
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            cell(r.geometry),
            cell(r.prediction),
            cell(&r.observation)
        ));
    }
    out
}
