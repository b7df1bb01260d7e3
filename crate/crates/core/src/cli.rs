//! Command implementations and the report-row schema behind the `primeclass`
//! binary. Kept in the library so integration tests can drive them directly.
//!
//! Exit-code contract: 0 success, 1 verification mismatch, 2 usage error,
//! 3 discovery (a p ≡ 7 mod 8 survivor outside the known list).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ono;
use crate::quadform;
use crate::survey::{self, SurvivorRecord, KNOWN_SURVIVORS_7_MOD_8};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCOVERY: i32 = 3;

pub const KNOWN_SURVIVORS_5_MOD_8: [u64; 3] = [5, 13, 37];
pub const KNOWN_SURVIVORS_1_MOD_8: [u64; 4] = [17, 73, 97, 193];
pub const KNOWN_SURVIVORS_3_MOD_8: [u64; 6] = [3, 11, 19, 43, 67, 163];

/// One output row of the search and verify commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub p: u64,
    pub mod8: u8,
    pub survivor: bool,
    pub h: u64,
    /// Invariant factors as "d1xd2", e.g. "4" or "2x2".
    pub group: String,
    pub ono_d: Option<u64>,
    pub case_check: bool,
    /// "x=..;y=.." (p ≡ 1 mod 8) or "x=..;t=.." (p ≡ 7 mod 8).
    pub witness: Option<String>,
}

impl ReportRow {
    pub fn from_record(rec: &SurvivorRecord) -> ReportRow {
        let witness = rec.square_witness().map(|(x, w)| {
            if rec.residue_class == 1 {
                format!("x={x};y={w}")
            } else {
                format!("x={x};t={w}")
            }
        });
        ReportRow {
            p: rec.p,
            mod8: rec.residue_class,
            survivor: true,
            h: rec.h,
            group: rec
                .invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("x"),
            ono_d: rec.ono_d.map(u64::from),
            case_check: rec.case_check(),
            witness,
        }
    }
}

pub const CSV_HEADER: &str = "p,mod8,survivor,h,group,ono_d,case_check,witness";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ono_d = r.ono_d.map(|d| d.to_string()).unwrap_or_default();
        let witness = r.witness.clone().unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.p, r.mod8, r.survivor, r.h, r.group, ono_d, r.case_check, witness
        );
    }
    out
}

pub fn from_csv(text: &str) -> Result<Vec<ReportRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("bad header: {other:?}")),
    }
    let mut rows = Vec::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 {
            return Err(format!("bad row: {line}"));
        }
        rows.push(ReportRow {
            p: cols[0].parse().map_err(|e| format!("{e}"))?,
            mod8: cols[1].parse().map_err(|e| format!("{e}"))?,
            survivor: cols[2].parse().map_err(|e| format!("{e}"))?,
            h: cols[3].parse().map_err(|e| format!("{e}"))?,
            group: cols[4].to_string(),
            ono_d: if cols[5].is_empty() {
                None
            } else {
                Some(cols[5].parse().map_err(|e| format!("{e}"))?)
            },
            case_check: cols[6].parse().map_err(|e| format!("{e}"))?,
            witness: if cols[7].is_empty() {
                None
            } else {
                Some(cols[7].to_string())
            },
        });
    }
    Ok(rows)
}

pub fn to_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

/// Search [lo, hi] and render the survivor rows. Returns (exit code, output).
pub fn cmd_search(lo: u64, hi: u64, format: OutputFormat) -> Result<(i32, String), Error> {
    let records = survey::search_range(lo, hi)?;
    let rows: Vec<ReportRow> = records.iter().map(ReportRow::from_record).collect();
    let out = match format {
        OutputFormat::Csv => to_csv(&rows),
        OutputFormat::Json => to_json(&rows),
    };
    let code = if records.iter().any(|r| r.unexpected) {
        EXIT_DISCOVERY
    } else {
        EXIT_OK
    };
    Ok((code, out))
}

/// Class group of a discriminant, or of the field attached to a prime.
pub fn cmd_classnum(p: Option<u64>, d: Option<i64>) -> Result<(i32, String), Error> {
    let d = match (p, d) {
        (Some(p), None) => crate::field::make_field(p)?.discriminant(),
        (None, Some(d)) => d,
        _ => return Ok((EXIT_USAGE, "pass exactly one of -p or -D\n".into())),
    };
    let g = quadform::class_group(d)?;
    Ok((EXIT_OK, format!("D={} h={} group={}\n", d, g.h, g.structure())))
}

pub fn cmd_ono(p: u64) -> Result<(i32, String), Error> {
    let r = ono::ono_invariant(p)?;
    Ok((
        EXIT_OK,
        format!("d={} argmax_n={} h={}\n", r.d, r.argmax_n, r.h),
    ))
}

/// Run the predicate and the residue-matched case checks for one prime.
/// Exit 1 if the prime survives but a structural check fails.
pub fn cmd_verify(p: u64) -> Result<(i32, String), Error> {
    let mut out = String::new();
    match survey::classify(p)? {
        survey::Outcome::Rejected(r) => {
            let _ = writeln!(
                out,
                "p={p}: not a survivor (x={} gives {}={} with omega={})",
                r.x,
                r.value,
                pretty_factors(r.value),
                r.omega
            );
            Ok((EXIT_OK, out))
        }
        survey::Outcome::Survivor(rec) => {
            let row = ReportRow::from_record(&rec);
            let _ = writeln!(out, "p={p}: survivor (mod 8 = {})", rec.residue_class);
            for w in &rec.witnesses {
                let _ = writeln!(
                    out,
                    "  x={:<4} p+x^2={:<8} = {}",
                    w.x,
                    w.value,
                    pretty_factors(w.value)
                );
            }
            let _ = writeln!(out, "  h={} group={}", rec.h, row.group);
            if let Some(d) = rec.ono_d {
                let _ = writeln!(out, "  ono_d={d}");
            }
            if let Some(w) = &row.witness {
                let _ = writeln!(out, "  square witness: {w}");
            }
            for (name, ok) in &rec.case_checks {
                let _ = writeln!(out, "  check {name}: {}", if *ok { "PASS" } else { "FAIL" });
            }
            if rec.unexpected {
                let _ = writeln!(out, "  NOTE: survivor outside the known p=7 mod 8 list");
            }
            let code = if !rec.case_check() {
                EXIT_MISMATCH
            } else if rec.unexpected {
                EXIT_DISCOVERY
            } else {
                EXIT_OK
            };
            Ok((code, out))
        }
    }
}

fn pretty_factors(n: u64) -> String {
    let f = crate::arith::factor(n).expect("in range");
    if f.factors().is_empty() {
        return "1".into();
    }
    f.factors()
        .iter()
        .map(|&(p, a)| {
            if a == 1 {
                p.to_string()
            } else {
                format!("{p}^{a}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Reproduce the four survivor lists up to `bound` and compare against the
/// expected values. Exit 0 iff every section matches.
pub fn cmd_report(bound: u64) -> Result<(i32, String), Error> {
    let records = survey::search_range(2, bound)?;
    let mut out = String::new();
    let mut all_ok = true;
    let sections: [(&str, u8, &[u64]); 4] = [
        ("p = 5 (mod 8)", 5, &KNOWN_SURVIVORS_5_MOD_8),
        ("p = 1 (mod 8)", 1, &KNOWN_SURVIVORS_1_MOD_8),
        ("p = 3 (mod 8)", 3, &KNOWN_SURVIVORS_3_MOD_8),
        ("p = 7 (mod 8)", 7, &KNOWN_SURVIVORS_7_MOD_8),
    ];
    for (title, class, expected) in sections {
        let got: Vec<u64> = records
            .iter()
            .filter(|r| r.residue_class == class)
            .map(|r| r.p)
            .collect();
        let want: Vec<u64> = expected.iter().copied().filter(|&p| p <= bound).collect();
        let cases_ok = records
            .iter()
            .filter(|r| r.residue_class == class)
            .all(|r| r.case_check());
        let ok = got == want && cases_ok;
        all_ok &= ok;
        let _ = writeln!(out, "{title}: {}", if ok { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "  found    {got:?}");
        let _ = writeln!(out, "  expected {want:?}");
        if !cases_ok {
            let _ = writeln!(out, "  (a structural case check failed)");
        }
    }
    let _ = writeln!(
        out,
        "total survivors <= {bound}: {} ({})",
        records.len(),
        if all_ok { "PASS" } else { "FAIL" }
    );
    Ok((if all_ok { EXIT_OK } else { EXIT_MISMATCH }, out))
}
