//! Family sweeps: deterministic parallel evaluation, sorted rows, atomic
//! emission.

use rayon::prelude::*;
use serde::Serialize;

use rqf::arith::is_squarefree;
use rqf::forms::{wide_class_number, ClassGroupSummary};
use rqf::rd::classify_rd;
use rqf::theorem::{gen_bl_family, gen_paper_family, gen_yokoi, verify_theorem_with};
use rqf::pell::NormFormBudget;

use crate::cache::Cache;
use crate::row::{csv_record, summary_line, verdict_consistent, ScanRow, CSV_HEADER};
use crate::{CliError, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Paper,
    Bl,
    Yokoi,
    Rd,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Paper => "paper",
            Family::Bl => "bl",
            Family::Yokoi => "yokoi",
            Family::Rd => "rd",
        }
    }
}

pub struct ScanBounds {
    pub max_a: Option<u64>,
    pub max_m: Option<u64>,
    pub max_p: Option<u64>,
    pub max_d: Option<u64>,
}

fn require(bound: Option<u64>, flag: &str, family: &str) -> Result<u64, CliError> {
    bound.ok_or_else(|| CliError::usage(format!("scan {family} requires {flag}")))
}

/// Class summary through the cache when warm.
fn summary_cached(cache: &Cache, d: u64) -> Result<(ClassGroupSummary, bool), CliError> {
    let delta = rqf::unit::discriminant_of(d)?;
    if let Some(hit) = cache.get(delta) {
        return Ok((hit, true));
    }
    Ok((wide_class_number(d)?, false))
}

/// Runs a family scan and returns the sorted rows plus any summaries that
/// should be folded back into the cache.
pub fn run_scan(
    family: Family,
    bounds: &ScanBounds,
    cache: &Cache,
) -> Result<(Vec<ScanRow>, Vec<ClassGroupSummary>), CliError> {
    let mut computed: Vec<(ScanRow, Option<ClassGroupSummary>)> = match family {
        Family::Paper => {
            let max_a = require(bounds.max_a, "--max-a", "paper")?;
            let max_m = require(bounds.max_m, "--max-m", "paper")?;
            let max_p = require(bounds.max_p, "--max-p", "paper")?;
            let grid = gen_paper_family(max_a, max_m, max_p);
            let budget = NormFormBudget::default();
            grid.par_iter()
                .map(|params| {
                    let report = verify_theorem_with(params, &budget)?;
                    let summary = report.summary.clone();
                    Ok((ScanRow::from_report(&report), summary))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        Family::Bl => {
            let max_d = require(bounds.max_d, "--max-d", "bl")?;
            gen_bl_family(max_d)
                .par_iter()
                .map(|member| {
                    let (summary, hit) = summary_cached(cache, member.d)?;
                    let mut row = ScanRow::from_summary("bl", &summary);
                    row.a = Some(member.a);
                    row.m = Some(member.m);
                    Ok((row, (!hit).then_some(summary)))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        Family::Yokoi => {
            let max_m = require(bounds.max_m, "--max-m", "yokoi")?;
            gen_yokoi(max_m)
                .par_iter()
                .map(|member| {
                    let (summary, hit) = summary_cached(cache, member.d)?;
                    let mut row = ScanRow::from_summary("yokoi", &summary);
                    row.m = Some(member.m);
                    Ok((row, (!hit).then_some(summary)))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        Family::Rd => {
            let max_d = require(bounds.max_d, "--max-d", "rd")?;
            let ds: Vec<u64> = (2..=max_d)
                .filter(|&d| is_squarefree(d).unwrap_or(false))
                .collect();
            ds.par_iter()
                .filter_map(|&d| {
                    let class = match classify_rd(d) {
                        Ok(c) => c,
                        Err(e) => return Some(Err(CliError::from(e))),
                    };
                    if !class.is_rd {
                        return None;
                    }
                    Some((|| {
                        let (summary, hit) = summary_cached(cache, d)?;
                        let mut row = ScanRow::from_summary("rd", &summary);
                        row.m = Some(class.m);
                        Ok((row, (!hit).then_some(summary)))
                    })())
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
    };
    computed.sort_by_key(|(row, _)| row.sort_key());
    for (row, _) in &computed {
        if !verdict_consistent(row) {
            return Err(CliError::internal(format!(
                "verdict row failed its own invariant: {row:?}"
            )));
        }
    }
    let new_summaries = computed.iter().filter_map(|(_, s)| s.clone()).collect();
    Ok((computed.into_iter().map(|(r, _)| r).collect(), new_summaries))
}

/// Renders rows into one atomic stdout payload.
pub fn render(rows: &[ScanRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [ScanRow],
            }
            let mut out = serde_json::to_string_pretty(&Doc { rows })
                .map_err(|e| CliError::internal(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)
                .map_err(|e| CliError::internal(e.to_string()))?;
            for row in rows {
                w.write_record(csv_record(row))
                    .map_err(|e| CliError::internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::internal(e.to_string()))
        }
        Format::Table => {
            let mut cols: Vec<Vec<String>> = vec![CSV_HEADER.iter().map(|s| s.to_string()).collect()];
            for row in rows {
                cols.push(csv_record(row));
            }
            let widths: Vec<usize> = (0..CSV_HEADER.len())
                .map(|i| cols.iter().map(|r| r[i].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for r in &cols {
                let line: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Full scan entry: computes, renders, prints atomically, updates cache.
pub fn scan_command(
    family: Family,
    bounds: &ScanBounds,
    format: Format,
    cache_path: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let cache = match cache_path {
        Some(p) => Cache::load(p),
        None => Cache::default(),
    };
    let (rows, new_summaries) = run_scan(family, bounds, &cache)?;
    let payload = render(&rows, format)?;
    print!("{payload}");
    eprintln!("{}", summary_line(family.name(), &rows));
    if let Some(path) = cache_path {
        let mut cache = cache;
        for s in &new_summaries {
            cache.insert(s);
        }
        if let Err(e) = cache.save(path) {
            eprintln!("warning: could not save cache {}: {e}", path.display());
        }
    }
    Ok(())
}
