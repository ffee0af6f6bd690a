//! Batch scan of one-descent permutations for disconnected subintervals.
//!
//! Records go out as JSON lines (or CSV rows) in a fixed order, flushed
//! after every batch, so an interrupted run can be resumed from its file.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use descent_poset::moebius::build_interval_with_limit;
use descent_poset::perm::permutations_with_descents;
use descent_poset::topology::{disconnected_subintervals_of, obstruction_patterns};
use descent_poset::{betti_gf2, classify_one_descent, OrderComplex, Permutation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{cell, open_sink, write_table, Table};

/// Smallest rank a disconnected subinterval needs to count.
pub const MIN_RANK: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Bool(bool),
    Int(i64),
    Ints(Vec<i64>),
    List(Vec<String>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub subject: String,
    pub quantities: BTreeMap<String, Quantity>,
}

impl ScanRecord {
    fn header(&self) -> Vec<String> {
        std::iter::once("subject".to_string())
            .chain(self.quantities.keys().cloned())
            .collect()
    }

    fn row(&self) -> Vec<String> {
        std::iter::once(self.subject.clone())
            .chain(
                self.quantities
                    .values()
                    .map(|q| cell(&serde_json::to_value(q).expect("plain data"))),
            )
            .collect()
    }
}

fn record_for(pi: &Permutation, limit: usize, betti: bool) -> Result<ScanRecord, CliError> {
    let [first, second] = obstruction_patterns();
    let has_first = pi.contains(&first);
    let has_second = pi.contains(&second);
    let interval = build_interval_with_limit(&Permutation::one(), pi, limit)?;
    let found = disconnected_subintervals_of(&interval, MIN_RANK);
    let class = classify_one_descent(pi)?;
    let avoids = !has_first && !has_second;

    let mut q = BTreeMap::new();
    q.insert("length".into(), Quantity::Int(pi.len() as i64));
    q.insert("mu_from_one".into(), Quantity::Int(class.value));
    q.insert("case".into(), Quantity::Text(class.case.label().into()));
    q.insert(format!("contains_{first}"), Quantity::Bool(has_first));
    q.insert(format!("contains_{second}"), Quantity::Bool(has_second));
    q.insert("avoids_obstructions".into(), Quantity::Bool(avoids));
    q.insert(
        "disconnected_count".into(),
        Quantity::Int(found.len() as i64),
    );
    q.insert(
        "disconnected".into(),
        Quantity::List(
            found
                .iter()
                .map(|d| format!("{}<{}", d.bottom, d.top))
                .collect(),
        ),
    );
    q.insert(
        "conjecture_holds".into(),
        Quantity::Bool(!avoids || found.is_empty()),
    );
    if betti {
        let b = betti_gf2(&OrderComplex::from_interval(&interval)?);
        q.insert(
            "reduced_betti".into(),
            Quantity::Ints(b.reduced_betti.iter().map(|&x| x as i64).collect()),
        );
    }
    Ok(ScanRecord {
        subject: pi.to_string(),
        quantities: q,
    })
}

/// Subjects already in `path`. A torn final line is cut off so appending
/// continues from a clean record boundary.
fn recorded_subjects(path: &Path) -> Result<HashSet<String>, CliError> {
    let Ok(bytes) = fs::read(path) else {
        return Ok(HashSet::new());
    };
    let mut done = HashSet::new();
    let mut good = 0;
    for line in bytes.split_inclusive(|&b| b == b'\n') {
        if !line.ends_with(b"\n") {
            break;
        }
        match serde_json::from_slice::<ScanRecord>(line) {
            Ok(r) => {
                done.insert(r.subject);
                good += line.len();
            }
            Err(_) => break,
        }
    }
    if good < bytes.len() {
        OpenOptions::new()
            .write(true)
            .open(path)?
            .set_len(good as u64)?;
    }
    Ok(done)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub scanned: usize,
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

pub fn scan_conjecture(
    cfg: &RunConfig,
    max_length: usize,
    resume: bool,
    betti: bool,
) -> Result<ScanSummary, CliError> {
    if max_length > cfg.max_interval_top_length {
        return Err(CliError::Precondition(format!(
            "max length {max_length} exceeds the interval limit {}",
            cfg.max_interval_top_length
        )));
    }
    if resume && (cfg.output_path.is_none() || cfg.format != Format::Json) {
        return Err(CliError::Precondition(
            "--resume needs --out with JSON output".into(),
        ));
    }
    let done = match (&cfg.output_path, resume) {
        (Some(path), true) => recorded_subjects(path)?,
        _ => HashSet::new(),
    };
    let todo: Vec<Permutation> = (3..=max_length)
        .flat_map(|n| permutations_with_descents(n, 1))
        .filter(|p| !done.contains(&p.to_string()))
        .collect();

    let mut out = open_sink(cfg.output_path.as_deref(), resume)?;
    let mut counterexamples = Vec::new();
    let mut header_written = false;
    for batch in todo.chunks(cfg.parallel_width * 4) {
        let records = batch
            .par_iter()
            .map(|p| record_for(p, cfg.max_interval_top_length, betti))
            .collect::<Result<Vec<_>, _>>()?;
        for r in &records {
            if r.quantities.get("conjecture_holds") == Some(&Quantity::Bool(false)) {
                counterexamples.push(r.subject.clone());
            }
        }
        write_batch(&mut out, cfg.format, &records, &mut header_written)?;
    }
    out.flush()?;
    Ok(ScanSummary {
        scanned: todo.len(),
        skipped: done.len(),
        counterexamples,
    })
}

fn write_batch(
    out: &mut Box<dyn Write>,
    format: Format,
    records: &[ScanRecord],
    header_written: &mut bool,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let table = Table {
                header: first.header(),
                rows: records.iter().map(ScanRecord::row).collect(),
            };
            write_table(&mut **out, &table, !*header_written)?;
            *header_written = true;
        }
        Format::Text => {
            for r in records {
                let parts: Vec<String> = r
                    .quantities
                    .iter()
                    .map(|(k, v)| {
                        format!(
                            "{k}={}",
                            cell(&serde_json::to_value(v).expect("plain data"))
                        )
                    })
                    .collect();
                writeln!(out, "{} {}", r.subject, parts.join(" "))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
