//! Built-in catalog of six-dimensional symplectic nilmanifolds with their
//! expected invariant value sets, and the table reproduction run.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::derham::betti_numbers;
use crate::error::{Error, Result};
use crate::flexibility::{closed_two_form_space, scan, FlexibilityVerdict, ScanConfig};
use crate::lie::LieAlgebraSpec;

const TABLE1: &str = include_str!("../data/table1.txt");
const AUXILIARY: &str = include_str!("../data/auxiliary.txt");

/// Invariant keys of the seven value-set columns, in table order.
pub const TABLE_COLUMNS: [&str; 7] = ["h_3", "h_4", "h_5", "c_hat_3", "c(1)_4", "c_check(1)_4", "c_check(2)_5"];

pub const EXPECTED_C_FLEXIBLE: usize = 7;
pub const EXPECTED_F_FLEXIBLE: usize = 10;
pub const EXPECTED_H_FLEXIBLE: usize = 10;
pub const F_H_NOT_C: [&str; 3] = ["(0,0,12,13,23,14-25)", "(0,0,0,12,13+14,24)", "(0,0,0,0,12,13)"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub b1: usize,
    pub b2: usize,
    pub step: usize,
    pub expected_sets: Vec<BTreeSet<usize>>,
    pub expected_dim_s: usize,
    pub witnesses: Vec<String>,
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn spec(&self) -> Result<Arc<LieAlgebraSpec>> {
        LieAlgebraSpec::parse_salamon(&self.name).map(Arc::new)
    }

    pub fn is_multi_valued(&self) -> bool {
        self.expected_sets.iter().any(|s| s.len() > 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxiliaryEntry {
    pub name: String,
    pub description: String,
    pub witnesses: Vec<String>,
}

impl AuxiliaryEntry {
    pub fn spec(&self) -> Result<Arc<LieAlgebraSpec>> {
        LieAlgebraSpec::parse_salamon(&self.name).map(Arc::new)
    }
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split(';').map(str::trim).collect()))
}

fn fixture_error(line: usize, message: impl Into<String>) -> Error {
    Error::Fixture { line, message: message.into() }
}

fn parse_nat(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| fixture_error(line, format!("expected a number, found {s:?}")))
}

fn parse_set(line: usize, s: &str) -> Result<BTreeSet<usize>> {
    let inner = s
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| fixture_error(line, format!("expected {{a,b,…}}, found {s:?}")))?;
    inner.split(',').map(|v| parse_nat(line, v.trim())).collect()
}

fn parse_list(line: usize, s: &str) -> Result<Vec<String>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| fixture_error(line, format!("expected [w | …], found {s:?}")))?;
    Ok(inner.split('|').map(str::trim).filter(|w| !w.is_empty()).map(String::from).collect())
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 13 && f.len() != 14 {
                return Err(fixture_error(line, format!("expected 13 or 14 fields, found {}", f.len())));
            }
            let codepth = parse_nat(line, f[3])?;
            Ok(CatalogEntry {
                name: f[0].to_string(),
                b1: parse_nat(line, f[1])?,
                b2: parse_nat(line, f[2])?,
                step: 6usize.checked_sub(codepth).ok_or_else(|| fixture_error(line, "6-s exceeds 6"))?,
                expected_sets: f[4..11].iter().map(|s| parse_set(line, s)).collect::<Result<_>>()?,
                expected_dim_s: parse_nat(line, f[11])?,
                witnesses: parse_list(line, f[12])?,
                note: f.get(13).map(|s| s.to_string()),
            })
        })
        .collect()
}

pub fn parse_auxiliary(text: &str) -> Result<Vec<AuxiliaryEntry>> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 3 {
                return Err(fixture_error(line, format!("expected 3 fields, found {}", f.len())));
            }
            Ok(AuxiliaryEntry {
                name: f[0].to_string(),
                description: f[1].to_string(),
                witnesses: parse_list(line, f[2])?,
            })
        })
        .collect()
}

/// The 26 six-dimensional entries.
pub fn catalog() -> Vec<CatalogEntry> {
    parse_catalog(TABLE1).expect("built-in fixture is well formed")
}

/// Lower-dimensional entries: Kodaira–Thurston, a completely solvable
/// algebra, a non-unimodular algebra with exact symplectic form and tori.
pub fn auxiliary() -> Vec<AuxiliaryEntry> {
    parse_auxiliary(AUXILIARY).expect("built-in fixture is well formed")
}

pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub algebra: String,
    pub invariant: String,
    pub expected: String,
    pub achieved: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowResult {
    pub name: String,
    pub achieved_sets: Vec<BTreeSet<usize>>,
    pub dim_s: usize,
    pub mismatches: Vec<Mismatch>,
    /// Some sampled form has `c^{(1)}_4 = b_2 − 1`.
    pub reaches_truncated_dimension: bool,
    pub note: Option<String>,
    pub verdict: FlexibilityVerdict,
}

impl RowResult {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn show(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run_entry(entry: &CatalogEntry, config: &ScanConfig) -> Result<RowResult> {
    let spec = entry.spec()?;
    let config = ScanConfig { witnesses: entry.witnesses.clone(), ..config.clone() };
    let verdict = scan(&spec, &config)?;
    let mut mismatches = Vec::new();
    let mut mismatch = |invariant: &str, expected: String, achieved: String| {
        if expected != achieved {
            mismatches.push(Mismatch { algebra: entry.name.clone(), invariant: invariant.into(), expected, achieved });
        }
    };
    let betti = betti_numbers(&spec);
    mismatch("b_1", entry.b1.to_string(), betti[1].to_string());
    mismatch("b_2", entry.b2.to_string(), betti[2].to_string());
    let step = spec.validate().step.map_or("not nilpotent".to_string(), |s| s.to_string());
    mismatch("step", entry.step.to_string(), step);
    let dim_s = closed_two_form_space(&spec).dim();
    mismatch("dim_S", entry.expected_dim_s.to_string(), dim_s.to_string());
    let achieved_sets: Vec<BTreeSet<usize>> =
        TABLE_COLUMNS.iter().map(|key| verdict.values(key).into_iter().collect()).collect();
    for ((key, expected), achieved) in TABLE_COLUMNS.iter().zip(&entry.expected_sets).zip(&achieved_sets) {
        mismatch(key, show(expected), show(achieved));
    }
    let reaches_truncated_dimension = achieved_sets[4].contains(&(betti[2].wrapping_sub(1)));
    Ok(RowResult {
        name: entry.name.clone(),
        achieved_sets,
        dim_s,
        mismatches,
        reaches_truncated_dimension,
        note: entry.note.clone(),
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Summary {
    pub rows: Vec<RowResult>,
    pub rows_matched: usize,
    pub mismatches: Vec<Mismatch>,
    pub c_flexible: Vec<String>,
    pub f_flexible: Vec<String>,
    pub h_flexible: Vec<String>,
    pub f_iff_h: bool,
    pub f_h_not_c: Vec<String>,
    /// Every entry of step at most 2 reaches `c^{(1)}_4 = b_2 − 1`, and no
    /// entry of step 5 does.
    pub truncated_dimension_by_step: bool,
}

impl Table1Summary {
    pub fn table_reproduced(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn classification_ok(&self) -> bool {
        self.c_flexible.len() == EXPECTED_C_FLEXIBLE
            && self.f_flexible.len() == EXPECTED_F_FLEXIBLE
            && self.h_flexible.len() == EXPECTED_H_FLEXIBLE
            && self.f_iff_h
            && self.f_h_not_c == F_H_NOT_C
    }

    pub fn passed(&self) -> bool {
        self.table_reproduced() && self.classification_ok() && self.truncated_dimension_by_step
    }
}

/// Scans every catalog entry and compares the achieved value sets with the
/// expected ones.
pub fn run_table1(config: &ScanConfig) -> Result<Table1Summary> {
    let entries = catalog();
    let rows: Vec<RowResult> = entries.par_iter().map(|e| run_entry(e, config)).collect::<Result<_>>()?;
    let names = |pred: &dyn Fn(&FlexibilityVerdict) -> bool| -> Vec<String> {
        rows.iter().filter(|r| pred(&r.verdict)).map(|r| r.name.clone()).collect()
    };
    let step_of = |name: &str| entries.iter().find(|e| e.name == name).map_or(0, |e| e.step);
    Ok(Table1Summary {
        rows_matched: rows.iter().filter(|r| r.matched()).count(),
        mismatches: rows.iter().flat_map(|r| r.mismatches.clone()).collect(),
        c_flexible: names(&|v| v.c_flexible),
        f_flexible: names(&|v| v.f_flexible),
        h_flexible: names(&|v| v.h_flexible),
        f_iff_h: rows.iter().all(|r| r.verdict.f_flexible == r.verdict.h_flexible),
        f_h_not_c: names(&|v| v.f_flexible && v.h_flexible && !v.c_flexible),
        truncated_dimension_by_step: rows.iter().all(|r| match step_of(&r.name) {
            s if s <= 2 => r.reaches_truncated_dimension,
            5 => !r.reaches_truncated_dimension,
            _ => true,
        }),
        rows,
    })
}
