//! Trace CSV serialization: comma separators, `.` decimal point, LF
//! line endings, nine significant digits per number.

use std::path::Path;

use super::{Trace, TraceRow, BASE_COLUMNS};
use crate::resources::ResourceReport;
use crate::{Error, Result};

/// Nine significant digits, scientific notation.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Renders a trace as CSV: the fixed header
/// `t,E,ergotropy,eta,eta_defined,S,I_ab,I_ba,purity` plus the model's
/// extra columns, one newline-terminated row per grid point.
pub fn to_csv_string(trace: &Trace) -> String {
    let mut out = String::new();
    out.push_str(&BASE_COLUMNS.join(","));
    for name in &trace.extra_names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for row in &trace.rows {
        let rep = &row.report;
        out.push_str(&format_sig9(row.t));
        for v in [rep.energy, rep.ergotropy, rep.efficiency] {
            out.push(',');
            out.push_str(&format_sig9(v));
        }
        out.push(',');
        out.push(if rep.efficiency_defined { '1' } else { '0' });
        for v in [rep.entropy, rep.i_ab, rep.i_ba, rep.purity] {
            out.push(',');
            out.push_str(&format_sig9(v));
        }
        for v in &row.extras {
            out.push(',');
            out.push_str(&format_sig9(*v));
        }
        out.push('\n');
    }
    out
}

/// Writes the trace CSV to `path`.
pub fn write_csv(trace: &Trace, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv_string(trace)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a trace back from its CSV form. The model tag is inferred
/// from the extra columns; steerability flags are reconstructed from
/// the steering totals.
pub fn parse_trace_csv(text: &str) -> Result<Trace> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty trace file".into()))?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() < BASE_COLUMNS.len() || fields[..BASE_COLUMNS.len()] != BASE_COLUMNS {
        return Err(Error::InvalidInput(format!(
            "unexpected trace header '{header}'"
        )));
    }
    let extra_names: Vec<String> = fields[BASE_COLUMNS.len()..]
        .iter()
        .map(|s| s.to_string())
        .collect();

    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != fields.len() {
            return Err(Error::InvalidInput(format!(
                "line {}: expected {} fields, found {}",
                lineno + 2,
                fields.len(),
                cells.len()
            )));
        }
        let parse = |idx: usize| -> Result<f64> {
            cells[idx].parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!(
                    "line {}: malformed number '{}'",
                    lineno + 2,
                    cells[idx]
                ))
            })
        };
        let i_ab = parse(6)?;
        let i_ba = parse(7)?;
        let report = ResourceReport {
            energy: parse(1)?,
            ergotropy: parse(2)?,
            efficiency: parse(3)?,
            efficiency_defined: parse(4)? != 0.0,
            entropy: parse(5)?,
            i_ab,
            i_ba,
            purity: parse(8)?,
            steerable_ab: i_ab < crate::resources::STEERING_BOUND_BITS,
            steerable_ba: i_ba < crate::resources::STEERING_BOUND_BITS,
        };
        let extras = (BASE_COLUMNS.len()..fields.len())
            .map(parse)
            .collect::<Result<Vec<f64>>>()?;
        rows.push(TraceRow {
            t: parse(0)?,
            report,
            extras,
        });
    }
    let model = if extra_names.iter().any(|n| n == "r") {
        "field"
    } else if extra_names.iter().any(|n| n == "p_gg") {
        "cavity"
    } else {
        "unknown"
    };
    let trace = Trace {
        model: model.into(),
        config: String::new(),
        extra_names,
        rows,
    };
    for w in trace.rows.windows(2) {
        if w[1].t <= w[0].t {
            return Err(Error::InvalidInput(
                "trace rows must be strictly ascending in t".into(),
            ));
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::field::{FieldConfig, FieldMode};
    use crate::runner::{run_field, TimeGrid};
    use std::f64::consts::TAU;

    fn small_trace() -> Trace {
        let cfg = FieldConfig {
            a_harmonic: 0.0,
            b_static: 2.0,
            omega: 1.0,
            delta: 1.0,
            g: 0.0,
            mode: FieldMode::Paper,
        };
        run_field(&cfg, &TimeGrid::new(1.0, 2).unwrap()).unwrap()
    }

    #[test]
    fn two_row_trace_serializes_to_three_lines() {
        let csv = to_csv_string(&small_trace());
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.ends_with('\n'));
        assert!(csv.starts_with("t,E,ergotropy,eta,eta_defined,S,I_ab,I_ba,purity,r\n"));
    }

    #[test]
    fn start_row_has_zero_energy_and_undefined_efficiency() {
        let csv = to_csv_string(&small_trace());
        let first_row = csv.lines().nth(1).unwrap();
        let cells: Vec<&str> = first_row.split(',').collect();
        assert_eq!(cells[0], "0.00000000e0");
        assert_eq!(cells[1], "0.00000000e0");
        assert_eq!(cells[4], "0");
    }

    #[test]
    fn round_trip_preserves_values() {
        let cfg = FieldConfig {
            a_harmonic: 1.0,
            b_static: 2.0,
            omega: 1.0,
            delta: 1.0,
            g: 0.0,
            mode: FieldMode::Paper,
        };
        let trace = run_field(&cfg, &TimeGrid::new(TAU, 101).unwrap()).unwrap();
        let parsed = parse_trace_csv(&to_csv_string(&trace)).unwrap();
        assert_eq!(parsed.model, "field");
        assert_eq!(parsed.extra_names, trace.extra_names);
        assert_eq!(parsed.rows.len(), trace.rows.len());
        for (a, b) in trace.rows.iter().zip(&parsed.rows) {
            assert!((a.t - b.t).abs() < 1e-8);
            assert!((a.report.energy - b.report.energy).abs() < 1e-8);
            assert!((a.report.i_ab - b.report.i_ab).abs() < 1e-8);
            assert!((a.report.purity - b.report.purity).abs() < 1e-8);
            assert!((a.extras[0] - b.extras[0]).abs() < 1e-8);
            assert_eq!(a.report.efficiency_defined, b.report.efficiency_defined);
        }
    }

    #[test]
    fn parse_rejects_ragged_and_malformed_rows() {
        let good = to_csv_string(&small_trace());
        // Drop the last field of the first data row.
        let mut lines: Vec<String> = good.lines().map(str::to_string).collect();
        lines[1] = lines[1].rsplit_once(',').unwrap().0.to_string();
        assert!(parse_trace_csv(&lines.join("\n")).is_err());
        let corrupt = good.replacen("0.00000000e0", "zero", 1);
        assert!(parse_trace_csv(&corrupt).is_err());
        assert!(parse_trace_csv("nonsense header\n").is_err());
    }
}
