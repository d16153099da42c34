//! Local-extrema detection and extremum-coincidence analysis.

use super::Trace;
use crate::Result;

/// Values within this of each other count as one plateau.
pub const PLATEAU_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

impl ExtremumKind {
    pub fn label(&self) -> &'static str {
        match self {
            ExtremumKind::Max => "max",
            ExtremumKind::Min => "min",
        }
    }
}

/// A strict interior local extremum of a sampled series.
#[derive(Debug, Clone, Copy)]
pub struct Extremum {
    /// Grid index (plateau midpoint for flat tops).
    pub index: usize,
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Finds strict interior local extrema.
///
/// Interior points beating both neighbors are maxima (minima
/// symmetric). Runs of values equal within [`PLATEAU_TOL`] are treated
/// as one plateau and reported once at their midpoint; plateaus touching
/// an endpoint are excluded, as are the endpoints themselves.
pub fn find_local_extrema(series: &[(f64, f64)]) -> Vec<Extremum> {
    let n = series.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut start = 0;
    while start < n {
        let anchor = series[start].1;
        let mut end = start;
        while end + 1 < n && (series[end + 1].1 - anchor).abs() <= PLATEAU_TOL {
            end += 1;
        }
        if start > 0 && end < n - 1 {
            let left = series[start - 1].1;
            let right = series[end + 1].1;
            let kind = if left < anchor && right < anchor {
                Some(ExtremumKind::Max)
            } else if left > anchor && right > anchor {
                Some(ExtremumKind::Min)
            } else {
                None
            };
            if let Some(kind) = kind {
                let mid = (start + end) / 2;
                out.push(Extremum {
                    index: mid,
                    t: series[mid].0,
                    value: series[mid].1,
                    kind,
                });
            }
        }
        start = end + 1;
    }
    out
}

/// A nearest-extremum partner of an energy maximum.
#[derive(Debug, Clone, Copy)]
pub struct CoincidencePartner {
    pub index: usize,
    pub t: f64,
    pub kind: ExtremumKind,
    /// Distance in grid steps.
    pub gap_steps: usize,
    /// Whether the gap is within the requested tolerance.
    pub pass: bool,
}

/// One energy maximum with its nearest partners in the other series.
#[derive(Debug, Clone)]
pub struct CoincidenceRow {
    pub energy_max: Extremum,
    pub entropy_min: Option<CoincidencePartner>,
    pub purity_max: Option<CoincidencePartner>,
    pub i_ab_extremum: Option<CoincidencePartner>,
    pub i_ba_extremum: Option<CoincidencePartner>,
}

/// Per-series extrema plus the coincidence table keyed on energy maxima.
#[derive(Debug, Clone)]
pub struct ExtremaReport {
    pub tol_steps: usize,
    pub series: Vec<(String, Vec<Extremum>)>,
    pub rows: Vec<CoincidenceRow>,
}

fn nearest(cands: &[Extremum], index: usize, tol_steps: usize) -> Option<CoincidencePartner> {
    cands
        .iter()
        .min_by_key(|e| e.index.abs_diff(index))
        .map(|e| {
            let gap_steps = e.index.abs_diff(index);
            CoincidencePartner {
                index: e.index,
                t: e.t,
                kind: e.kind,
                gap_steps,
                pass: gap_steps <= tol_steps,
            }
        })
}

/// For every local maximum of the stored energy, finds the nearest
/// entropy minimum, purity maximum, and steering extrema (either kind),
/// each with its gap in grid steps and a pass flag.
pub fn coincidence_report(trace: &Trace, tol_steps: usize) -> Result<ExtremaReport> {
    let mut series = Vec::new();
    for name in ["E", "S", "purity", "I_ab", "I_ba"] {
        series.push((name.to_string(), find_local_extrema(&trace.series(name)?)));
    }
    let only = |name: &str, kind: ExtremumKind| -> Vec<Extremum> {
        series
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.iter().copied().filter(|e| e.kind == kind).collect())
            .unwrap_or_default()
    };
    let e_maxima = only("E", ExtremumKind::Max);
    let s_minima = only("S", ExtremumKind::Min);
    let p_maxima = only("purity", ExtremumKind::Max);
    let iab = series.iter().find(|(n, _)| n == "I_ab").unwrap().1.clone();
    let iba = series.iter().find(|(n, _)| n == "I_ba").unwrap().1.clone();

    let rows = e_maxima
        .iter()
        .map(|e| CoincidenceRow {
            energy_max: *e,
            entropy_min: nearest(&s_minima, e.index, tol_steps),
            purity_max: nearest(&p_maxima, e.index, tol_steps),
            i_ab_extremum: nearest(&iab, e.index, tol_steps),
            i_ba_extremum: nearest(&iba, e.index, tol_steps),
        })
        .collect();
    Ok(ExtremaReport {
        tol_steps,
        series,
        rows,
    })
}

/// Renders the coincidence table as CSV (one row per energy maximum).
pub fn coincidence_csv(report: &ExtremaReport) -> String {
    let mut out = String::from(
        "e_max_index,e_max_t,e_max_value,\
         s_min_t,s_min_gap,s_min_pass,\
         purity_max_t,purity_max_gap,purity_max_pass,\
         i_ab_t,i_ab_kind,i_ab_gap,i_ab_pass,\
         i_ba_t,i_ba_kind,i_ba_gap,i_ba_pass\n",
    );
    let fmt = super::csv::format_sig9;
    for row in &report.rows {
        let e = &row.energy_max;
        out.push_str(&format!("{},{},{}", e.index, fmt(e.t), fmt(e.value)));
        for partner in [&row.entropy_min, &row.purity_max] {
            match partner {
                Some(p) => out.push_str(&format!(
                    ",{},{},{}",
                    fmt(p.t),
                    p.gap_steps,
                    u8::from(p.pass)
                )),
                None => out.push_str(",,,"),
            }
        }
        for partner in [&row.i_ab_extremum, &row.i_ba_extremum] {
            match partner {
                Some(p) => out.push_str(&format!(
                    ",{},{},{},{}",
                    fmt(p.t),
                    p.kind.label(),
                    p.gap_steps,
                    u8::from(p.pass)
                )),
                None => out.push_str(",,,,"),
            }
        }
        out.push('\n');
    }
    out
}
