use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::Output;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub basepoint: Option<u32>,
    pub field: String,
    pub mode: String,
}

/// One evaluation. Values are exact rationals written as "p/q" or "n".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub t: String,
    pub value: String,
    pub stable: bool,
    pub reduced_value: Option<String>,
    pub reduced_stable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// s_t = s_{2-t} wherever both t and 2 - t were evaluated
    pub symmetric: bool,
    /// every value lies in (1/q)Z for q the common denominator of the t's
    pub rational: bool,
    /// every endpoint value survived raising the cap
    pub stable: bool,
    /// reduced value <= s_t + 2 everywhere, when reduced values were computed
    pub reduced_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub prepare_ms: u128,
    pub evaluate_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub input: InputEcho,
    pub values: Vec<ValueRow>,
    /// Rasmussen's s over the same field, for knots small enough for the cube
    pub s_f: Option<i64>,
    pub localized_ranks: BTreeMap<i32, usize>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<Vec<CheckRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl CheckRow {
    pub fn new(check: &str, r: Result<String, String>) -> Self {
        let (status, detail) = match r {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        };
        CheckRow { check: check.into(), status, detail }
    }

    pub fn skip(check: &str, why: &str) -> Self {
        CheckRow { check: check.into(), status: Status::Skip, detail: why.into() }
    }
}

pub fn all_passed(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.status != Status::Fail)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestRow {
    pub name: String,
    pub crossings: usize,
    pub field: String,
    /// s_t on the grid, comma separated in t order
    pub values: String,
    pub expected: Option<i64>,
    pub symmetric: bool,
    pub status: Status,
}

fn csv_rows<W: Write, T: Serialize>(w: W, rows: &[T]) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

fn json<W: Write, T: Serialize>(mut w: W, x: &T) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut w, x)?;
    writeln!(w)?;
    Ok(())
}

/// JSON writes the whole record; CSV writes one row per t.
pub fn write_result<W: Write>(w: W, r: &ResultRecord, fmt: Output) -> anyhow::Result<()> {
    match fmt {
        Output::Json => json(w, r),
        Output::Csv => csv_rows(w, &r.values),
    }
}

pub fn write_checks<W: Write>(w: W, rows: &[CheckRow], fmt: Output) -> anyhow::Result<()> {
    match fmt {
        Output::Json => json(w, &rows),
        Output::Csv => csv_rows(w, rows),
    }
}

pub fn write_selftest<W: Write>(w: W, rows: &[SelftestRow], fmt: Output) -> anyhow::Result<()> {
    match fmt {
        Output::Json => json(w, &rows),
        Output::Csv => csv_rows(w, rows),
    }
}
