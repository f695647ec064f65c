//! The scan row schema shared by the table, CSV, and JSON emitters.

use serde::{Deserialize, Serialize};

use rqf::forms::ClassGroupSummary;
use rqf::pell::PellWitness;
use rqf::theorem::TheoremReport;

/// A witness pair serialized as decimal strings (the values can exceed
/// every native integer width).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepPair {
    pub x: String,
    pub y: String,
}

impl From<&PellWitness> for RepPair {
    fn from(w: &PellWitness) -> Self {
        RepPair {
            x: w.x.to_string(),
            y: w.y.to_string(),
        }
    }
}

/// One row of any scan or single-field query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub family: String,
    pub a: Option<u64>,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub d: u64,
    pub delta: u64,
    pub h_plus: u64,
    pub h: u64,
    pub unit_norm: i8,
    pub rep_plus: Option<RepPair>,
    pub rep_minus: Option<RepPair>,
    pub splitting: Option<String>,
    pub verdict: Option<String>,
}

impl ScanRow {
    /// Ordering key: ascending `(d, a, m, p)`.
    pub fn sort_key(&self) -> (u64, u64, u64, u64) {
        (
            self.d,
            self.a.unwrap_or(0),
            self.m.unwrap_or(0),
            self.p.unwrap_or(0),
        )
    }

    pub fn from_summary(family: &str, summary: &ClassGroupSummary) -> Self {
        ScanRow {
            family: family.to_string(),
            a: None,
            m: None,
            p: None,
            d: summary.d,
            delta: summary.delta,
            h_plus: summary.h_plus,
            h: summary.h,
            unit_norm: summary.unit_norm,
            rep_plus: None,
            rep_minus: None,
            splitting: None,
            verdict: None,
        }
    }

    pub fn from_report(report: &TheoremReport) -> Self {
        let summary = report.summary.as_ref().expect("verdict rows carry class data");
        let rep = report.representation.as_ref();
        ScanRow {
            family: "paper".into(),
            a: Some(report.params.a),
            m: Some(report.params.m),
            p: Some(report.params.p),
            d: report.d,
            delta: summary.delta,
            h_plus: summary.h_plus,
            h: summary.h,
            unit_norm: summary.unit_norm,
            rep_plus: rep.and_then(|r| r.plus.as_ref()).map(RepPair::from),
            rep_minus: rep.and_then(|r| r.minus.as_ref()).map(RepPair::from),
            splitting: report.splitting.as_ref().map(|s| s.to_string()),
            verdict: Some(report.verdict.to_string()),
        }
    }
}

/// Fixed CSV header; optional fields flatten to paired columns and
/// serialize as empty strings when absent.
pub const CSV_HEADER: [&str; 15] = [
    "family",
    "a",
    "m",
    "p",
    "d",
    "delta",
    "h_plus",
    "h",
    "unit_norm",
    "rep_plus_x",
    "rep_plus_y",
    "rep_minus_x",
    "rep_minus_y",
    "splitting",
    "verdict",
];

pub fn csv_record(row: &ScanRow) -> Vec<String> {
    let opt = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let pair = |v: &Option<RepPair>| match v {
        Some(p) => (p.x.clone(), p.y.clone()),
        None => (String::new(), String::new()),
    };
    let (px, py) = pair(&row.rep_plus);
    let (mx, my) = pair(&row.rep_minus);
    vec![
        row.family.clone(),
        opt(&row.a),
        opt(&row.m),
        opt(&row.p),
        row.d.to_string(),
        row.delta.to_string(),
        row.h_plus.to_string(),
        row.h.to_string(),
        row.unit_norm.to_string(),
        px,
        py,
        mx,
        my,
        row.splitting.clone().unwrap_or_default(),
        row.verdict.clone().unwrap_or_default(),
    ]
}

/// Summary counters printed after a scan.
pub fn summary_line(family: &str, rows: &[ScanRow]) -> String {
    let h1 = rows.iter().filter(|r| r.h == 1).count();
    match family {
        "paper" => {
            let count = |v: &str| {
                rows.iter()
                    .filter(|r| r.verdict.as_deref() == Some(v))
                    .count()
            };
            format!(
                "# rows={} claim-holds={} claim-violated={} hypothesis-not-met={}",
                rows.len(),
                count("claim-holds"),
                count("claim-violated"),
                count("hypothesis-not-met"),
            )
        }
        _ => format!("# rows={} h=1:{h1}", rows.len()),
    }
}

/// Sanity used by the verdict consistency abort: a verdict row claiming
/// violation must actually carry a representation or h = 1.
pub fn verdict_consistent(row: &ScanRow) -> bool {
    match row.verdict.as_deref() {
        Some("claim-violated") => row.rep_plus.is_some() || row.rep_minus.is_some() || row.h == 1,
        Some("claim-holds") => {
            row.rep_plus.is_none() && row.rep_minus.is_none() && row.h > 1
        }
        _ => true,
    }
}
