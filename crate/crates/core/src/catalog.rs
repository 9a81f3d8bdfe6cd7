//! Embedded low-dimensional representatives and the verification harness.
//!
//! Each data file is an algebra file with extra catalog fields (`id`, `tag`,
//! `cocycle_table`, `notes`). Table discrepancies are reported as findings;
//! only disagreement between a checker and the oracle counts as an error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algmodel::{algebra_from_value, parse_document, HomAlgebra, PREC, SUCC};
use crate::axioms::{check_multiplicativity, check_rhizaform};
use crate::cocycles::{describe_vector_space, vector_cocycle_space};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Rational};
use crate::nilpotency::{
    check_onesided_nilpotency_theorem, check_series_equality, is_nilpotent, Nilpotency,
};
use crate::oracle::{audit_rhizaform, Comparison};
use crate::report::{CheckReport, Violation};

pub const CATALOG_VERSION: &str = "v1";

macro_rules! sources {
    ($($id:literal),* $(,)?) => {
        &[$(($id, include_str!(concat!("../catalog/v1/", $id, ".json")))),*]
    };
}

/// Entries in catalog order: dimension, then representative number.
static SOURCES: &[(&str, &str)] = sources![
    "d2.A1", "d2.A2", "d2.A3", "d2.A4", "d2.A5", "d2.A6", "d2.A7", "d3.A1", "d3.A2", "d3.A3",
    "d3.A4", "d3.A5", "d3.A6", "d3.A7", "d3.A8", "d3.A9", "d3.A10", "d3.A11", "d3.A12", "d3.A13",
    "d3.A14", "d3.A15", "d3.A16",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    #[serde(rename = "m")]
    Multiplicative,
    #[serde(rename = "nm")]
    NonMultiplicative,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Multiplicative => "m",
            Tag::NonMultiplicative => "nm",
        }
    }
}

/// Layout of a tabulated cocycle: each slot `(i, j, k)` (0-based) carries a
/// named free constant; the same name may fill several slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePattern {
    pub slots: Vec<(usize, usize, usize, String)>,
}

impl CocyclePattern {
    pub fn free_parameters(&self) -> usize {
        self.slots
            .iter()
            .map(|s| &s.3)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn support(&self) -> BTreeSet<(usize, usize, usize)> {
        self.slots.iter().map(|&(i, j, k, _)| (i, j, k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub dim: usize,
    pub tag: Tag,
    pub algebra: HomAlgebra,
    pub expected_cocycle: Option<CocyclePattern>,
    pub notes: Vec<String>,
}

/// Ids of all embedded entries, in catalog order.
pub fn entry_ids() -> Vec<&'static str> {
    SOURCES.iter().map(|(id, _)| *id).collect()
}

/// The raw data file of an entry.
pub fn entry_source(id: &str) -> Result<&'static str> {
    SOURCES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

pub fn load_catalog_entry(id: &str, params: &BTreeMap<String, Rational>) -> Result<CatalogEntry> {
    let doc = parse_document(entry_source(id)?)?;
    let algebra = algebra_from_value(&doc, params)?;
    let tag = match doc.get("tag").and_then(Value::as_str) {
        Some("m") => Tag::Multiplicative,
        Some("nm") => Tag::NonMultiplicative,
        _ => return Err(Error::parse("tag", "expected \"m\" or \"nm\"")),
    };
    let expected_cocycle = match doc.get("cocycle_table") {
        None => None,
        Some(v) => Some(parse_pattern(v, algebra.dim())?),
    };
    let notes = doc
        .get("notes")
        .and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .filter_map(Value::as_str)
                .map(String::from)
                .collect()
        })
        .unwrap_or_default();
    Ok(CatalogEntry {
        id: id.to_string(),
        dim: algebra.dim(),
        tag,
        algebra,
        expected_cocycle,
        notes,
    })
}

fn parse_pattern(v: &Value, dim: usize) -> Result<CocyclePattern> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse("cocycle_table", "expected an array"))?;
    let mut slots = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        let pos = format!("cocycle_table[{n}]");
        let bad = || Error::parse(&pos, "expected [i, j, k, name]");
        let parts = row.as_array().filter(|p| p.len() == 4).ok_or_else(bad)?;
        let mut idx = [0usize; 3];
        for (slot, p) in idx.iter_mut().zip(parts) {
            let i = p
                .as_u64()
                .filter(|&i| i >= 1 && i as usize <= dim)
                .ok_or_else(bad)?;
            *slot = i as usize - 1;
        }
        let name = parts[3].as_str().ok_or_else(bad)?.to_string();
        slots.push((idx[0], idx[1], idx[2], name));
    }
    Ok(CocyclePattern { slots })
}

/// Loads an entry with every parameter bound.
pub fn load_entry(id: &str, params: &BTreeMap<String, Rational>) -> Result<HomAlgebra> {
    Ok(load_catalog_entry(id, params)?.algebra)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativityVerdict {
    pub succ: bool,
    pub prec: bool,
    /// Tag "m" iff both products are multiplicative.
    pub tag_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleVerdict {
    pub computed: usize,
    pub table: Option<usize>,
    pub agrees: bool,
    /// Whether the computed space is nonzero exactly on the tabulated slots.
    pub support_agrees: bool,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub dim: usize,
    pub tag: Tag,
    pub rhizaform: CheckReport,
    pub multiplicativity: MultiplicativityVerdict,
    pub cocycles: CocycleVerdict,
    pub nilpotency: Nilpotency,
    pub series_equality: CheckReport,
    pub onesided_nilpotency: CheckReport,
    pub oracle: Vec<Comparison>,
    pub oracle_agrees: bool,
    pub notes: Vec<String>,
}

pub fn verify_entry(id: &str, params: &BTreeMap<String, Rational>) -> Result<EntryReport> {
    let entry = load_catalog_entry(id, params)?;
    let a = &entry.algebra;
    let succ = check_multiplicativity(a.product(SUCC)?, a.alpha())?.passed();
    let prec = check_multiplicativity(a.product(PREC)?, a.alpha())?.passed();
    let tagged_m = entry.tag == Tag::Multiplicative;

    let space = vector_cocycle_space(a)?;
    let table = entry
        .expected_cocycle
        .as_ref()
        .map(CocyclePattern::free_parameters);
    let computed_support: BTreeSet<_> = space
        .iter()
        .flat_map(|w| {
            w.coeffs()
                .nonzero_entries()
                .into_iter()
                .map(|(i, j, k, _)| (i, j, k))
        })
        .collect();
    let support_agrees = entry
        .expected_cocycle
        .as_ref()
        .map_or(true, |p| p.support() == computed_support);

    let oracle = audit_rhizaform(a)?;
    let oracle_agrees = oracle.iter().all(Comparison::agrees);
    Ok(EntryReport {
        id: entry.id,
        dim: entry.dim,
        tag: entry.tag,
        rhizaform: check_rhizaform(a)?,
        multiplicativity: MultiplicativityVerdict {
            succ,
            prec,
            tag_agrees: tagged_m == (succ && prec),
        },
        cocycles: CocycleVerdict {
            computed: space.len(),
            table,
            agrees: table.map_or(true, |t| t == space.len()),
            support_agrees,
            basis: describe_vector_space(&space, a.dim()),
        },
        nilpotency: is_nilpotent(a)?,
        series_equality: check_series_equality(a)?,
        onesided_nilpotency: check_onesided_nilpotency_theorem(a)?,
        oracle,
        oracle_agrees,
        notes: entry.notes,
    })
}

/// One discrepancy between an entry and a checked property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub entry: String,
    pub check: String,
    pub detail: String,
    /// First failing instance per identity, with its exact residual.
    pub witnesses: Vec<Violation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogFilter {
    pub dim: Option<usize>,
    /// Exact ids to keep; empty keeps every id.
    pub ids: Vec<String>,
}

impl CatalogFilter {
    pub fn matches(&self, id: &str) -> bool {
        let dim_ok = self.dim.map_or(true, |d| id.starts_with(&format!("d{d}.")));
        dim_ok && (self.ids.is_empty() || self.ids.iter().any(|i| i == id))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub catalog_version: &'static str,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<EntryReport>,
    pub findings: Vec<Finding>,
    pub oracle_disagreements: usize,
}

impl CatalogSummary {
    /// True unless some checker disagreed with the oracle.
    pub fn ok(&self) -> bool {
        self.oracle_disagreements == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Human-readable table followed by the findings.
    pub fn to_table(&self) -> String {
        let yn = |b: bool| if b { "pass" } else { "FAIL" };
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<7} {:<3} {:<10} {:<9} {:<7} {:<10} {:<10} {:<7} {:<8} {:<6}",
            "entry",
            "tag",
            "rhizaform",
            "mult s/p",
            "tag ok",
            "cocycles",
            "nilpotent",
            "series",
            "onesided",
            "oracle"
        );
        for e in &self.entries {
            let m = &e.multiplicativity;
            let coc = match e.cocycles.table {
                Some(t) => format!("{}/{}", e.cocycles.computed, t),
                None => e.cocycles.computed.to_string(),
            };
            let nil = match e.nilpotency.index {
                Some(k) => format!("yes ({k})"),
                None => "no".into(),
            };
            let _ = writeln!(
                out,
                "{:<7} {:<3} {:<10} {:<9} {:<7} {:<10} {:<10} {:<7} {:<8} {:<6}",
                e.id,
                e.tag.as_str(),
                yn(e.rhizaform.passed()),
                format!("{}/{}", yn(m.succ), yn(m.prec)),
                if m.tag_agrees { "yes" } else { "no" },
                coc,
                nil,
                yn(e.series_equality.passed()),
                yn(e.onesided_nilpotency.passed()),
                if e.oracle_agrees { "agree" } else { "DIFF" },
            );
        }
        let _ = writeln!(out, "\nfindings: {}", self.findings.len());
        for f in &self.findings {
            let _ = writeln!(out, "- {} {}: {}", f.entry, f.check, f.detail);
            for v in &f.witnesses {
                let tuple: Vec<String> =
                    v.basis_tuple.iter().map(|i| (i + 1).to_string()).collect();
                let residual: Vec<String> = v.residual.iter().map(format_rational).collect();
                let _ = writeln!(
                    out,
                    "    {} at ({}) residual [{}]",
                    v.identity_id,
                    tuple.join(","),
                    residual.join(", ")
                );
            }
        }
        out
    }
}

fn first_per_identity(report: &CheckReport) -> Vec<Violation> {
    let mut seen = BTreeSet::new();
    report
        .violations()
        .iter()
        .filter(|v| seen.insert(v.identity_id.clone()))
        .cloned()
        .collect()
}

fn report_finding(out: &mut Vec<Finding>, entry: &str, check: &str, report: &CheckReport) {
    if report.passed() {
        return;
    }
    out.push(Finding {
        entry: entry.to_string(),
        check: check.to_string(),
        detail: format!(
            "{} violations; failing identities: {}",
            report.violations().len(),
            report.failing_identities().join(", ")
        ),
        witnesses: first_per_identity(report),
    });
}

fn findings_of(e: &EntryReport) -> Vec<Finding> {
    let mut out = Vec::new();
    let plain = |check: &str, detail: String| Finding {
        entry: e.id.clone(),
        check: check.to_string(),
        detail,
        witnesses: Vec::new(),
    };
    report_finding(&mut out, &e.id, "rhizaform", &e.rhizaform);
    let m = &e.multiplicativity;
    if !m.tag_agrees {
        out.push(plain(
            "tag",
            format!(
                "tagged {} but succ multiplicative={} prec multiplicative={}",
                e.tag.as_str(),
                m.succ,
                m.prec
            ),
        ));
    }
    if !e.cocycles.agrees {
        out.push(plain(
            "cocycles",
            format!(
                "computed dimension {} vs {} tabulated free constants",
                e.cocycles.computed,
                e.cocycles.table.unwrap_or(0)
            ),
        ));
    }
    if !e.cocycles.support_agrees {
        out.push(plain(
            "cocycle_layout",
            "computed cocycles are nonzero on other slots than the table".into(),
        ));
    }
    report_finding(&mut out, &e.id, "series_equality", &e.series_equality);
    report_finding(
        &mut out,
        &e.id,
        "onesided_nilpotency",
        &e.onesided_nilpotency,
    );
    for c in e.oracle.iter().filter(|c| !c.agrees()) {
        out.push(plain(
            "oracle",
            format!(
                "{}: library {:?} vs oracle {:?}",
                c.checker, c.library, c.oracle
            ),
        ));
    }
    out
}

/// Verifies every entry accepted by `filter`, in parallel; output order is
/// catalog order.
pub fn verify_all(
    filter: &CatalogFilter,
    params: &BTreeMap<String, Rational>,
) -> Result<CatalogSummary> {
    let ids: Vec<&str> = entry_ids()
        .into_iter()
        .filter(|id| filter.matches(id))
        .collect();
    let entries = ids
        .par_iter()
        .map(|id| verify_entry(id, params))
        .collect::<Result<Vec<_>>>()?;
    let findings = entries.iter().flat_map(findings_of).collect();
    let oracle_disagreements = entries
        .iter()
        .map(|e| e.oracle.iter().filter(|c| !c.agrees()).count())
        .sum();
    Ok(CatalogSummary {
        catalog_version: CATALOG_VERSION,
        params: params
            .iter()
            .map(|(k, v)| (k.clone(), format_rational(v)))
            .collect(),
        entries,
        findings,
        oracle_disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmodel::{parse_algebra_with, serialize_algebra};
    use crate::exactlin::{frac, int};

    fn eta(v: Rational) -> BTreeMap<String, Rational> {
        [("eta".to_string(), v)].into_iter().collect()
    }

    #[test]
    fn has_all_entries() {
        let ids = entry_ids();
        assert_eq!(ids.len(), 23);
        assert_eq!(ids.iter().filter(|i| i.starts_with("d2.")).count(), 7);
    }

    #[test]
    fn every_entry_parses_and_round_trips() {
        for id in entry_ids() {
            let e = load_catalog_entry(id, &eta(int(1))).unwrap();
            assert_eq!(e.id, id);
            let text = serialize_algebra(&e.algebra);
            assert_eq!(
                parse_algebra_with(&text, &BTreeMap::new()).unwrap(),
                e.algebra,
                "{id}"
            );
        }
    }

    #[test]
    fn d2_a7_has_two_products_and_identity_alpha() {
        let a = load_entry("d2.A7", &BTreeMap::new()).unwrap();
        assert_eq!(a.succ().unwrap().get(0, 0, 1), &int(1));
        assert_eq!(a.prec().unwrap().get(0, 0, 1), &int(1));
        assert_eq!(a.alpha(), &crate::algmodel::LinearMap::identity(2));
    }

    #[test]
    fn d3_a4_binds_eta() {
        let a = load_entry("d3.A4", &eta(int(1))).unwrap();
        assert_eq!(a.prec().unwrap().get(0, 1, 2), &int(1));
        let a = load_entry("d3.A4", &eta(frac(1, 4))).unwrap();
        assert_eq!(a.prec().unwrap().get(0, 1, 2), &frac(1, 4));
        assert_eq!(
            load_entry("d3.A4", &BTreeMap::new()),
            Err(Error::UnboundParameter("eta".into()))
        );
        assert_eq!(
            load_entry("d4.A1", &BTreeMap::new()),
            Err(Error::UnknownEntry("d4.A1".into()))
        );
    }

    #[test]
    fn anchor_entries() {
        let none = BTreeMap::new();
        let a7 = verify_entry("d2.A7", &none).unwrap();
        assert!(a7.multiplicativity.tag_agrees);
        assert!(a7.multiplicativity.succ && a7.multiplicativity.prec);
        assert_eq!(a7.cocycles.computed, 4);
        let a1 = verify_entry("d2.A1", &none).unwrap();
        assert_eq!(a1.cocycles.computed, 2);
        assert!(a1.cocycles.agrees);
        assert_eq!(
            a1.nilpotency,
            Nilpotency {
                nilpotent: true,
                index: Some(3)
            }
        );
        let a5 = verify_entry("d2.A5", &none).unwrap();
        assert!(!a5.nilpotency.nilpotent);
    }

    #[test]
    fn filters() {
        let p = eta(int(1));
        let d2 = verify_all(
            &CatalogFilter {
                dim: Some(2),
                ids: vec![],
            },
            &p,
        )
        .unwrap();
        assert_eq!(d2.entries.len(), 7);
        let none = verify_all(
            &CatalogFilter {
                dim: None,
                ids: vec!["nothing".into()],
            },
            &p,
        )
        .unwrap();
        assert!(none.entries.is_empty() && none.findings.is_empty() && none.ok());
    }
}
