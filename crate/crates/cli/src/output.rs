//! Serialization of tables, blocks, spectra and oracle reports.
//!
//! Exact values are always written as integer strings (separate numerator
//! and denominator in tables, `num/den` elsewhere); floats only appear in
//! fields whose names end in `_f64`.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use real_hurwitz_core::cutjoin::BlockMatrix;
use real_hurwitz_core::evolution::HurwitzRecord;
use real_hurwitz_core::nonsep::{OperatorComparison, TildeType};
use real_hurwitz_core::spectral::{orthogonality_check, ReferenceComparison, SpectralReport};
use real_hurwitz_core::{Bidegree, RamificationType, Rational};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `num/den`, always with an explicit denominator.
pub fn slash(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub m: usize,
    pub kappa_plus: Vec<u32>,
    pub kappa_minus: Vec<u32>,
    pub lambda: Vec<u32>,
    pub chi: i64,
    pub connected: bool,
    pub value_num: String,
    pub value_den: String,
}

impl From<&HurwitzRecord> for TableRow {
    fn from(r: &HurwitzRecord) -> Self {
        TableRow {
            m: r.m,
            kappa_plus: r.mu.kappa_plus.parts().to_vec(),
            kappa_minus: r.mu.kappa_minus.parts().to_vec(),
            lambda: r.mu.lambda.parts().to_vec(),
            chi: r.chi,
            connected: r.connected,
            value_num: r.value.numer().to_string(),
            value_den: r.value.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TildeRow {
    pub m: usize,
    pub kappa_plus: Vec<u32>,
    pub kappa_minus: Vec<u32>,
    pub kappa_odd: Vec<u32>,
    pub lambda: Vec<u32>,
    pub chi: i64,
    pub connected: bool,
    pub value_num: String,
    pub value_den: String,
}

impl TildeRow {
    pub fn new(m: usize, mu: &TildeType, connected: bool, value: &Rational) -> Self {
        TildeRow {
            m,
            kappa_plus: mu.kappa_plus.parts().to_vec(),
            kappa_minus: mu.kappa_minus.parts().to_vec(),
            kappa_odd: mu.kappa_odd.parts().to_vec(),
            lambda: mu.lambda.parts().to_vec(),
            chi: mu.euler_characteristic(m as u32),
            connected,
            value_num: value.numer().to_string(),
            value_den: value.denom().to_string(),
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn value_text(num: &str, den: &str) -> String {
    if den == "1" {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

pub fn render_table(rows: &[TableRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_rows(
            &["m", "kappa_plus", "kappa_minus", "lambda", "chi", "connected", "value_num", "value_den"],
            rows.iter().map(|r| {
                vec![
                    r.m.to_string(),
                    join(&r.kappa_plus),
                    join(&r.kappa_minus),
                    join(&r.lambda),
                    r.chi.to_string(),
                    r.connected.to_string(),
                    r.value_num.clone(),
                    r.value_den.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let mu = RamificationType::from_parts(&r.kappa_plus, &r.kappa_minus, &r.lambda);
                writeln!(out, "m={:<3} chi={:<4} {:<32} {}", r.m, r.chi, mu.to_string(), value_text(&r.value_num, &r.value_den))
                    .expect("write to string");
            }
            Ok(out)
        }
    }
}

pub fn render_tilde_table(rows: &[TildeRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_rows(
            &["m", "kappa_plus", "kappa_minus", "kappa_odd", "lambda", "chi", "connected", "value_num", "value_den"],
            rows.iter().map(|r| {
                vec![
                    r.m.to_string(),
                    join(&r.kappa_plus),
                    join(&r.kappa_minus),
                    join(&r.kappa_odd),
                    join(&r.lambda),
                    r.chi.to_string(),
                    r.connected.to_string(),
                    r.value_num.clone(),
                    r.value_den.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let mu = TildeType::from_parts(&r.kappa_plus, &r.kappa_minus, &r.kappa_odd, &r.lambda);
                writeln!(out, "m={:<3} chi={:<4} {:<40} {}", r.m, r.chi, mu.to_string(), value_text(&r.value_num, &r.value_den))
                    .expect("write to string");
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct BlockJson<'a> {
    bidegree: [u32; 2],
    operator: &'a str,
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
}

pub fn render_block(block: &BlockMatrix, operator: &str, format: Format) -> Result<String, CliError> {
    let n = block.dim();
    let entries: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| slash(&block.matrix[(i, j)])).collect()).collect();
    let basis: Vec<String> = block.basis.iter().map(ToString::to_string).collect();
    match format {
        Format::Json => json(&BlockJson {
            bidegree: [block.bidegree.n_plus, block.bidegree.n_minus],
            operator,
            basis,
            entries,
        }),
        Format::Csv => {
            let mut header = vec!["row".to_string()];
            header.extend(basis.iter().cloned());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_rows(
                &header,
                basis.iter().zip(entries).map(|(b, row)| std::iter::once(b.clone()).chain(row).collect()),
            )
        }
        Format::Text => {
            let mut out = format!("{operator} on block {}, columns are images of basis vectors\n", block.bidegree);
            for (i, b) in basis.iter().enumerate() {
                writeln!(out, "  [{i}] {b}").expect("write to string");
            }
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| block.matrix[(i, j)].to_string()).collect();
                writeln!(out, "  {}", row.join(" ")).expect("write to string");
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ExactJson {
    lambda_plus: String,
    lambda_minus: String,
    vector: Vec<String>,
}

#[derive(Serialize)]
struct ApproxJson {
    lambda_plus_f64: f64,
    lambda_minus_f64: f64,
    vector_f64: Vec<f64>,
    residual_f64: f64,
}

#[derive(Serialize)]
struct ReferenceJson {
    vector: String,
    eigenvalues: Option<[String; 2]>,
    status: &'static str,
}

#[derive(Serialize)]
struct SpectrumJson {
    bidegree: [u32; 2],
    basis: Vec<String>,
    charpoly_plus: Vec<String>,
    charpoly_minus: Vec<String>,
    exact: Vec<ExactJson>,
    approximate: Vec<ApproxJson>,
    tolerance_f64: f64,
    orthogonal: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    reference_comparison: Vec<ReferenceJson>,
}

fn reference_status(c: &ReferenceComparison) -> &'static str {
    match (&c.eigenvalues, c.matched) {
        (Some(_), Some(_)) => "match",
        (Some(_), None) => "mismatch: eigenvector not proportional to a computed one",
        (None, _) => "mismatch: not a common eigenvector, suspected misprint",
    }
}

pub fn render_spectrum(report: &SpectralReport, references: &[ReferenceComparison], format: Format) -> Result<String, CliError> {
    let orthogonal = orthogonality_check(report);
    let basis: Vec<String> = report.basis.iter().map(ToString::to_string).collect();
    match format {
        Format::Json => json(&SpectrumJson {
            bidegree: [report.bidegree.n_plus, report.bidegree.n_minus],
            basis,
            charpoly_plus: report.charpoly_plus.iter().map(|c| format!("{c}/1")).collect(),
            charpoly_minus: report.charpoly_minus.iter().map(|c| format!("{c}/1")).collect(),
            exact: report
                .exact
                .iter()
                .map(|e| ExactJson {
                    lambda_plus: format!("{}/1", e.lambda_plus),
                    lambda_minus: format!("{}/1", e.lambda_minus),
                    vector: e.coords.iter().map(|c| format!("{c}/1")).collect(),
                })
                .collect(),
            approximate: report
                .approximate
                .iter()
                .map(|a| ApproxJson {
                    lambda_plus_f64: a.lambda_plus,
                    lambda_minus_f64: a.lambda_minus,
                    vector_f64: a.coords.clone(),
                    residual_f64: a.residual,
                })
                .collect(),
            tolerance_f64: report.tolerance,
            orthogonal,
            reference_comparison: references
                .iter()
                .map(|c| ReferenceJson {
                    vector: c.reference.to_string(),
                    eigenvalues: c.eigenvalues.as_ref().map(|(a, b)| [slash(a), slash(b)]),
                    status: reference_status(c),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut header = vec!["kind".to_string(), "lambda_plus".into(), "lambda_minus".into(), "residual".into()];
            header.extend(basis.iter().cloned());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let exact = report.exact.iter().map(|e| {
                let mut row = vec!["exact".to_string(), e.lambda_plus.to_string(), e.lambda_minus.to_string(), "0".into()];
                row.extend(e.coords.iter().map(ToString::to_string));
                row
            });
            let approx = report.approximate.iter().map(|a| {
                let mut row = vec![
                    "approximate".to_string(),
                    format!("{:e}", a.lambda_plus),
                    format!("{:e}", a.lambda_minus),
                    format!("{:e}", a.residual),
                ];
                row.extend(a.coords.iter().map(|x| format!("{x:e}")));
                row
            });
            csv_rows(&header, exact.chain(approx))
        }
        Format::Text => {
            let mut out = format!("block {} (dimension {})\n", report.bidegree, report.dim());
            let poly = |c: &[num_bigint::BigInt]| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            writeln!(out, "charpoly W+ (ascending): [{}]", poly(&report.charpoly_plus)).expect("write");
            writeln!(out, "charpoly W- (ascending): [{}]", poly(&report.charpoly_minus)).expect("write");
            writeln!(out, "basis: {}", basis.join(" | ")).expect("write");
            for e in &report.exact {
                let v: Vec<String> = e.coords.iter().map(ToString::to_string).collect();
                writeln!(out, "exact  ({}, {})  [{}]", e.lambda_plus, e.lambda_minus, v.join(", ")).expect("write");
            }
            for a in &report.approximate {
                let v: Vec<String> = a.coords.iter().map(|x| format!("{x:.6}")).collect();
                writeln!(
                    out,
                    "approx ({:.10}, {:.10})  residual {:.1e}  [{}]",
                    a.lambda_plus,
                    a.lambda_minus,
                    a.residual,
                    v.join(", ")
                )
                .expect("write");
            }
            writeln!(out, "distinct-pair eigenvectors orthogonal: {orthogonal}").expect("write");
            for c in references {
                let ev = match &c.eigenvalues {
                    Some((a, b)) => format!("({a}, {b})"),
                    None => "none".into(),
                };
                writeln!(out, "reference {}  eigenvalues {ev}  {}", c.reference, reference_status(c)).expect("write");
            }
            Ok(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub kappa_plus: Vec<u32>,
    pub kappa_minus: Vec<u32>,
    pub lambda: Vec<u32>,
    pub chi: i64,
    pub value_num: String,
    pub value_den: String,
}

#[derive(Serialize)]
struct OracleJson<'a> {
    bidegree: [u32; 2],
    m: usize,
    states: usize,
    matches_operator: bool,
    counts: &'a [OracleRow],
}

/// Walk counts `#paths / (n⁺! n⁻!)` for one ground set and `m`.
pub struct OracleReport {
    pub bidegree: Bidegree,
    pub m: usize,
    pub states: usize,
    pub matches_operator: bool,
    pub counts: Vec<OracleRow>,
}

impl OracleReport {
    pub fn new(bidegree: Bidegree, m: usize, states: usize, matches_operator: bool, counts: &[(RamificationType, Rational)]) -> Self {
        let counts = counts
            .iter()
            .map(|(mu, v)| OracleRow {
                kappa_plus: mu.kappa_plus.parts().to_vec(),
                kappa_minus: mu.kappa_minus.parts().to_vec(),
                lambda: mu.lambda.parts().to_vec(),
                chi: mu.euler_characteristic(m as u32),
                value_num: v.numer().to_string(),
                value_den: v.denom().to_string(),
            })
            .collect();
        OracleReport { bidegree, m, states, matches_operator, counts }
    }
}

pub fn render_oracle(r: &OracleReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(&OracleJson {
            bidegree: [r.bidegree.n_plus, r.bidegree.n_minus],
            m: r.m,
            states: r.states,
            matches_operator: r.matches_operator,
            counts: &r.counts,
        }),
        Format::Csv => csv_rows(
            &["kappa_plus", "kappa_minus", "lambda", "chi", "value_num", "value_den"],
            r.counts.iter().map(|c| {
                vec![
                    join(&c.kappa_plus),
                    join(&c.kappa_minus),
                    join(&c.lambda),
                    c.chi.to_string(),
                    c.value_num.clone(),
                    c.value_den.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = format!(
                "ground set {} with {} states, m={}, left multiplication matches W+: {}\n",
                r.bidegree, r.states, r.m, r.matches_operator
            );
            for c in &r.counts {
                let mu = RamificationType::from_parts(&c.kappa_plus, &c.kappa_minus, &c.lambda);
                writeln!(out, "chi={:<4} {:<32} {}", c.chi, mu.to_string(), value_text(&c.value_num, &c.value_den))
                    .expect("write to string");
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct DiffJson {
    row: String,
    column: String,
    oracle: String,
    transcribed: String,
}

#[derive(Serialize)]
struct ComparisonJson {
    n: u32,
    entries: usize,
    agreeing: usize,
    diffs: Vec<DiffJson>,
}

pub fn render_comparisons(cs: &[OperatorComparison], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(
            &cs.iter()
                .map(|c| ComparisonJson {
                    n: c.n,
                    entries: c.entries,
                    agreeing: c.agreeing,
                    diffs: c
                        .diffs
                        .iter()
                        .map(|d| DiffJson {
                            row: d.row.to_string(),
                            column: d.column.to_string(),
                            oracle: slash(&d.oracle),
                            transcribed: slash(&d.transcribed),
                        })
                        .collect(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_rows(
            &["n", "row", "column", "oracle", "transcribed"],
            cs.iter().flat_map(|c| {
                c.diffs.iter().map(move |d| {
                    vec![c.n.to_string(), d.row.to_string(), d.column.to_string(), slash(&d.oracle), slash(&d.transcribed)]
                })
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for c in cs {
                writeln!(out, "n={}: {}/{} entries agree", c.n, c.agreeing, c.entries).expect("write to string");
                for d in &c.diffs {
                    writeln!(out, "  row {} column {}: oracle {} transcribed {}", d.row, d.column, d.oracle, d.transcribed)
                        .expect("write to string");
                }
            }
            Ok(out)
        }
    }
}
