//! Link-table ingestion and class identification.
//!
//! External tables are matched by invariant ([`IdentificationKey`]), never by
//! raw code equality: table diagrams come with unknown labeling and mirror
//! conventions, and the key quotients all of that out. A crossing-number
//! pre-filter keeps the comparison within one table section.
//!
//! Two data fixtures ship embedded in the crate (see `data/README.md`):
//!
//! * `published_tables.jsonl` — one JSON record `{n, p, q, conway, id, sp?}` per
//!   line: the published crossing-number tables with Thistlethwaite ids and
//!   the known splitting numbers;
//! * `pd_table.txt` — `id<TAB>PD:[X(a,b,c,d),...]` per line, `#` comments:
//!   PD codes for every id, generated from this crate's own templates.

use crate::diagram::{build_diagram, PlanarDiagram};
use crate::enumerate::TabulationRow;
use crate::equivalence::LinkClass;
use crate::invariants::{identification_key, IdentificationKey};
use crate::rational::{eval_cf, ConwayForm};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// One entry of an ingested link table.
#[derive(Debug, Clone)]
pub struct LinkTableEntry {
    /// Normalized (uppercase) table id, e.g. `L7A4`.
    pub id: String,
    pub crossing_number: u32,
    pub pd: PlanarDiagram,
    pub key: IdentificationKey,
}

/// Parses a link table from its text form, computing keys on ingest.
pub fn ingest_table(text: &str) -> Result<Vec<LinkTableEntry>, Error> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ctx = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let (id_part, pd_part) = line
            .split_once('\t')
            .ok_or_else(|| ctx("expected `id<TAB>PD:[...]`".into()))?;
        let id = id_part.trim().to_ascii_uppercase();
        if id.is_empty() {
            return Err(ctx("empty id".into()));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId(id));
        }
        let pd_text = pd_part
            .trim()
            .strip_prefix("PD:")
            .ok_or_else(|| ctx("PD code must start with `PD:`".into()))?;
        let pd = PlanarDiagram::parse_pd(pd_text)
            .map_err(|e| ctx(format!("bad PD code for {id}: {e}")))?;
        let key = identification_key(&pd).map_err(|e| ctx(format!("key of {id}: {e}")))?;
        entries.push(LinkTableEntry {
            crossing_number: pd.crossing_count() as u32,
            id,
            pd,
            key,
        });
    }
    Ok(entries)
}

/// Result of matching a class against a table.
#[derive(Debug, Clone)]
pub struct Identification {
    pub link_class: LinkClass,
    /// Present iff exactly one table entry matched.
    pub matched_id: Option<String>,
    /// All candidate ids when the key matched more than one entry.
    pub ambiguity: Vec<String>,
}

/// Looks a class up in a table via the identification key of the diagram
/// built from its chosen form. Unmatched and ambiguous results are data
/// outcomes, not errors.
pub fn identify_class(
    class: &LinkClass,
    table: &[LinkTableEntry],
) -> Result<Identification, Error> {
    let diagram = build_diagram(class.chosen_form());
    let key = identification_key(&diagram)?;
    let n = class.crossing_number();
    let mut candidates: Vec<String> = table
        .iter()
        .filter(|e| e.crossing_number == n && e.key == key)
        .map(|e| e.id.clone())
        .collect();
    candidates.sort();
    Ok(Identification {
        link_class: class.clone(),
        matched_id: if candidates.len() == 1 {
            Some(candidates[0].clone())
        } else {
            None
        },
        ambiguity: if candidates.len() > 1 {
            candidates
        } else {
            Vec::new()
        },
    })
}

/// One transcribed row of the published tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub n: u32,
    pub p: u64,
    pub q: u64,
    pub conway: Vec<u32>,
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sp: Option<u32>,
}

impl FixtureRow {
    pub fn conway_form(&self) -> Result<ConwayForm, Error> {
        ConwayForm::new(self.conway.clone())
    }
}

/// Parses the JSONL fixture format (one record per line, `#` comments).
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, Error> {
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: FixtureRow = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        if !seen.insert(row.id.to_ascii_uppercase()) {
            return Err(Error::DuplicateId(row.id));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The transcribed published tables, embedded in the crate.
pub fn embedded_fixture() -> &'static str {
    include_str!("../data/published_tables.jsonl")
}

/// The shipped PD-code table, embedded in the crate.
pub fn embedded_pd_table() -> &'static str {
    include_str!("../data/pd_table.txt")
}

/// Outcome of checking a tabulation against the bundled fixture, class-wise.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    /// Per crossing number: (fixture rows, tabulated rows, matched pairs).
    pub per_n: BTreeMap<u32, (usize, usize, usize)>,
    pub discrepancies: Vec<String>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn classes_checked(&self) -> usize {
        self.per_n.values().map(|&(_, _, m)| m).sum()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (fix, tab, matched)) in &self.per_n {
            writeln!(
                f,
                "n={n}: fixture {fix} rows, tabulated {tab} rows, matched {matched}"
            )?;
        }
        for d in &self.discrepancies {
            writeln!(f, "DISCREPANCY: {d}")?;
        }
        write!(
            f,
            "{} classes checked, {} discrepancies",
            self.classes_checked(),
            self.discrepancies.len()
        )
    }
}

/// Compares tabulated rows against fixture rows, per crossing number.
///
/// Fixture pairs are matched class-wise (via class membership, not literal
/// `(p, q)` equality: the published representative need not be the minimal
/// one). The match must be a bijection for every crossing number, fixture
/// forms must evaluate to their printed fraction, and chosen forms must sum
/// to their crossing number.
pub fn verify_fixture(tabulation: &[TabulationRow], fixture: &[FixtureRow]) -> VerifyReport {
    let mut report = VerifyReport::default();
    let mut by_n_fixture: BTreeMap<u32, Vec<&FixtureRow>> = BTreeMap::new();
    for row in fixture {
        by_n_fixture.entry(row.n).or_default().push(row);
    }
    let mut by_n_tab: BTreeMap<u32, Vec<&TabulationRow>> = BTreeMap::new();
    for row in tabulation {
        by_n_tab.entry(row.crossing_number).or_default().push(row);
    }

    let ns: BTreeSet<u32> = by_n_fixture
        .keys()
        .chain(by_n_tab.keys())
        .copied()
        .collect();
    for n in ns {
        let fix = by_n_fixture.get(&n).map(|v| v.as_slice()).unwrap_or(&[]);
        let tab = by_n_tab.get(&n).map(|v| v.as_slice()).unwrap_or(&[]);
        if fix.len() != tab.len() {
            report.discrepancies.push(format!(
                "n={n}: fixture has {} rows, tabulation has {}",
                fix.len(),
                tab.len()
            ));
        }
        let mut hits = vec![0usize; tab.len()];
        let mut matched = 0usize;
        for row in fix {
            // fixture self-consistency
            match row.conway_form().map(|f| eval_cf(&f)) {
                Ok(v) if v.p() == row.p && v.q() == row.q => {}
                Ok(v) => report.discrepancies.push(format!(
                    "{}: printed form evaluates to {v}, not {}/{}",
                    row.id, row.p, row.q
                )),
                Err(e) => report
                    .discrepancies
                    .push(format!("{}: bad conway form: {e}", row.id)),
            }
            if row.conway.iter().sum::<u32>() != n {
                report
                    .discrepancies
                    .push(format!("{}: form does not sum to {n}", row.id));
            }
            let owners: Vec<usize> = tab
                .iter()
                .enumerate()
                .filter(|(_, t)| t.link_class.p() == row.p && t.link_class.contains(row.q))
                .map(|(i, _)| i)
                .collect();
            match owners.as_slice() {
                [i] => {
                    hits[*i] += 1;
                    matched += 1;
                }
                [] => report.discrepancies.push(format!(
                    "{}: ({},{}) not covered by any tabulated class at n={n}",
                    row.id, row.p, row.q
                )),
                many => report.discrepancies.push(format!(
                    "{}: ({},{}) lies in {} tabulated classes",
                    row.id,
                    row.p,
                    row.q,
                    many.len()
                )),
            }
        }
        for (i, t) in tab.iter().enumerate() {
            if t.link_class.chosen_form().crossing_count() != n {
                report.discrepancies.push(format!(
                    "tabulated {} at n={n}: chosen form sums to {}",
                    t.link_class,
                    t.link_class.chosen_form().crossing_count()
                ));
            }
            if hits[i] != 1 {
                report.discrepancies.push(format!(
                    "tabulated {} at n={n}: matched by {} fixture rows",
                    t.link_class, hits[i]
                ));
            }
        }
        report.per_n.insert(n, (fix.len(), tab.len(), matched));
    }
    report
}

/// Renders fixture rows as a shippable PD-code table: every row's published
/// id joined with the PD code of its chosen-form template diagram.
pub fn render_pd_table(fixture: &[FixtureRow]) -> Result<String, Error> {
    let mut out = String::from(
        "# PD codes for 2-bridge link table ids, one `id<TAB>PD:[...]` per line.\n\
         # Generated from the published Conway forms via `twobridge export pd-table`.\n",
    );
    for row in fixture {
        let d = build_diagram(&row.conway_form()?);
        out.push_str(&format!("{}\tPD:{}\n", row.id, d.to_pd_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::tabulate_range;
    use crate::equivalence::canonicalize;
    use crate::rational::Fraction;

    #[test]
    fn fixture_parses_and_self_checks() {
        let rows = parse_fixture(embedded_fixture()).unwrap();
        assert_eq!(rows.len(), 99);
        for row in &rows {
            let form = row.conway_form().unwrap();
            let f = eval_cf(&form);
            assert_eq!(
                (f.p(), f.q()),
                (row.p, row.q),
                "row {} ({}): form {form} evaluates to {f}",
                row.id,
                row.n
            );
            assert_eq!(form.crossing_count(), row.n, "row {}", row.id);
            assert_eq!(
                Fraction::new(row.p, row.q).unwrap().p(),
                row.p,
                "row {} not reduced",
                row.id
            );
        }
        let sp_count = rows.iter().filter(|r| r.sp.is_some()).count();
        assert_eq!(sp_count, 19);
    }

    #[test]
    fn fixture_rows_per_crossing_number() {
        let rows = parse_fixture(embedded_fixture()).unwrap();
        let mut counts = BTreeMap::new();
        for r in &rows {
            *counts.entry(r.n).or_insert(0usize) += 1;
        }
        let expected: BTreeMap<u32, usize> = [
            (4, 1),
            (5, 1),
            (6, 3),
            (7, 3),
            (8, 8),
            (9, 12),
            (10, 26),
            (11, 45),
        ]
        .into_iter()
        .collect();
        assert_eq!(counts, expected);
    }

    #[test]
    fn ingest_small_table_and_identify() {
        let fixture: Vec<FixtureRow> = parse_fixture(embedded_fixture())
            .unwrap()
            .into_iter()
            .filter(|r| r.n == 7)
            .collect();
        let text = render_pd_table(&fixture).unwrap();
        let table = ingest_table(&text).unwrap();
        assert_eq!(table.len(), 3);
        let keys: BTreeSet<_> = table.iter().map(|e| e.key.clone()).collect();
        assert_eq!(keys.len(), 3, "7-crossing keys must be distinct");

        let class = canonicalize(16, 7).unwrap();
        let found = identify_class(&class, &table).unwrap();
        assert_eq!(found.matched_id.as_deref(), Some("L7A4"));
        assert!(found.ambiguity.is_empty());

        let class = canonicalize(8, 3).unwrap();
        let miss = identify_class(&class, &table).unwrap();
        assert_eq!(miss.matched_id, None);
    }

    #[test]
    fn ingest_rejects_bad_input() {
        assert!(ingest_table("").unwrap().is_empty());
        assert!(ingest_table("# only a comment\n").unwrap().is_empty());
        let hopf = "PD:[X(1,3,2,4),X(4,2,3,1)]";
        let dup = format!("A1\t{hopf}\na1\t{hopf}\n"); // ids are case-normalized
        assert!(matches!(ingest_table(&dup), Err(Error::DuplicateId(_))));
        assert!(matches!(
            ingest_table("A1 PD:[X(1,3,2,4),X(4,2,3,1)]"), // space, not tab
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ingest_table("A1\tPD:[X(1,1,2)]"),
            Err(Error::Parse { line: 1, .. })
        ));
        // a knot entry cannot be keyed
        assert!(matches!(
            ingest_table("A1\tPD:[X(1,1,2,2)]"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn verify_fixture_on_true_tabulation_is_clean() {
        let rows = tabulate_range(8).unwrap();
        let fixture: Vec<FixtureRow> = parse_fixture(embedded_fixture())
            .unwrap()
            .into_iter()
            .filter(|r| r.n <= 8)
            .collect();
        let report = verify_fixture(&rows, &fixture);
        assert!(report.is_clean(), "{report}");
        assert_eq!(report.classes_checked(), 16);
    }

    #[test]
    fn verify_fixture_detects_mismatches() {
        let rows = tabulate_range(6).unwrap();
        let mut fixture: Vec<FixtureRow> = parse_fixture(embedded_fixture())
            .unwrap()
            .into_iter()
            .filter(|r| r.n <= 6)
            .collect();
        // corrupt the (6,1) row into a fraction from another crossing number
        fixture[2].p = 14;
        fixture[2].q = 3;
        let report = verify_fixture(&rows, &fixture);
        assert!(!report.is_clean());
    }
}
