//! Verification suites. Every check records its exact expected and actual
//! values; informational checks never fail a suite.

use std::fmt;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use real_hurwitz_core::cutjoin::{block_matrix, OperatorKind};
use real_hurwitz_core::evolution::{evaluate_series, evolve_block, genus0_series, verify_genus0_pde};
use real_hurwitz_core::linalg::Matrix;
use real_hurwitz_core::nonsep::{
    compare_operators, tilde_evolve, tilde_hurwitz_upto, tilde_operator_matrix, transcribed_operator_matrix, TildeGraph,
    TildePoly, TildeType,
};
use real_hurwitz_core::oracle::{hurwitz_by_paths_upto, mult_c2_matrix, mult_c2_right_matrix, GroundSet, StateGraph};
use real_hurwitz_core::spectral::{common_eigenbasis, compare_with_reference, orthogonality_check, DEFAULT_TOLERANCE};
use real_hurwitz_core::types::enumerate_types;
use real_hurwitz_core::{Bidegree, PolyVector, RamificationType, Rational};

use crate::compute;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
    Oracle,
    Spectral,
    Genus0,
    Nonsep,
}

impl Suite {
    pub fn default_max_size(self) -> u32 {
        match self {
            Suite::Oracle => 5,
            Suite::Spectral => 6,
            Suite::Nonsep => 4,
            Suite::Paper | Suite::Genus0 => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl Check {
    pub fn compare(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Check { name: name.into(), expected, actual, status }
    }

    pub fn holds(name: impl Into<String>, expected: impl ToString, ok: bool, actual: impl ToString) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    pub fn info(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Check { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), status: Status::Info }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

fn rt(kp: &[u32], km: &[u32], l: &[u32]) -> RamificationType {
    RamificationType::from_parts(kp, km, l)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn poly(terms: &[(RamificationType, i64)]) -> PolyVector {
    terms.iter().map(|(mu, c)| (mu.clone(), int(*c))).collect()
}

fn listed<T: fmt::Display>(bad: &[T]) -> String {
    if bad.is_empty() {
        "none".into()
    } else {
        bad.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

/// Leading connected coefficients at `u^0 .. u^3`.
pub fn leading_expansion() -> Result<Vec<Check>, CliError> {
    let h = compute::series(4, 3, true)?;
    let p = |k| rt(&[k], &[], &[]);
    let m = |k| rt(&[], &[k], &[]);
    let expected = [
        poly(&[(p(1), 1), (m(1), 1), (rt(&[], &[], &[1]), 1)]),
        poly(&[(p(2), 1), (m(2), 1)]),
        poly(&[(p(3), 1), (m(3), 1), (rt(&[1], &[1], &[]), 1), (rt(&[], &[], &[1]), 1)]),
        poly(&[
            (rt(&[2, 1], &[], &[]), 1),
            (rt(&[2], &[1], &[]), 1),
            (rt(&[1], &[2], &[]), 1),
            (rt(&[], &[2, 1], &[]), 1),
            (p(4), 2),
            (m(4), 2),
            (p(2), 1),
            (m(2), 1),
        ]),
    ];
    Ok(expected
        .iter()
        .enumerate()
        .map(|(k, e)| Check::compare(format!("leading expansion u^{k}/{k}!"), e, h.at(k)))
        .collect())
}

/// Connected `p_n^+` at `u^{n−1}` for `n ≤ 8`.
pub fn euler_numbers() -> Result<Vec<Check>, CliError> {
    let h = compute::series(8, 7, true)?;
    let expected = [1, 1, 1, 2, 5, 16, 61, 272];
    Ok(vec![Check::compare(
        "p_n^+ at u^(n-1), n = 1..8",
        listed(&expected),
        listed(&(1..=8u32).map(|n| h.coefficient(n as usize - 1, &rt(&[n], &[], &[]))).collect::<Vec<_>>()),
    )])
}

/// Genus-0 series at `p = q = (1, 0, 0, ...)`, one check per order.
pub fn genus0_evaluation() -> Result<Vec<Check>, CliError> {
    let h0 = genus0_series(&compute::series(6, 10, true)?);
    let values = evaluate_series(&h0, &[int(1)], &[int(1)]);
    let expected = [
        int(1),
        int(0),
        Rational::new(1.into(), 2.into()),
        int(0),
        int(2),
        int(0),
        int(20),
        int(0),
        int(406),
        int(0),
        int(14652),
    ];
    Ok(expected
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(m, (e, a))| Check::compare(format!("genus-0 evaluation at u^{m}/{m}!"), e, a))
        .collect())
}

pub fn single_pole_counts() -> Result<Vec<Check>, CliError> {
    let h = compute::series(3, 6, true)?;
    Ok([rt(&[3], &[], &[]), rt(&[], &[3], &[])]
        .into_iter()
        .map(|mu| Check::compare(format!("h at m=6, {mu}"), 4, h.coefficient(6, &mu)))
        .collect())
}

pub fn degree_two_family() -> Result<Vec<Check>, CliError> {
    let h = compute::series(2, 9, true)?;
    let mu = rt(&[2], &[], &[]);
    let expected: Vec<u32> = (0..=9).map(|m| m % 2).collect();
    let actual: Vec<Rational> = (0..=9).map(|m| h.coefficient(m, &mu)).collect();
    Ok(vec![Check::compare(format!("h at m = 0..9, {mu}"), listed(&expected), listed(&actual))])
}

/// Oracle multiplication matrices against the operator blocks.
pub fn oracle_equivalence(max_total: u32) -> Result<Vec<Check>, CliError> {
    let bad = Bidegree::up_to_total(max_total)
        .into_par_iter()
        .map(|b| {
            let plus = block_matrix(OperatorKind::WPlus, b)? == mult_c2_matrix(b)?;
            let minus = block_matrix(OperatorKind::WMinus, b)? == mult_c2_right_matrix(b)?;
            Ok((!(plus && minus)).then_some(b))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let bad: Vec<Bidegree> = bad.into_iter().flatten().collect();
    Ok(vec![Check::holds(
        format!("W+/W- equal left/right multiplication, n+ + n- <= {max_total}"),
        "no differing blocks",
        bad.is_empty(),
        format!("differing blocks: {}", listed(&bad)),
    )])
}

/// Walk counts on the state graph against evolution, `m ≤ 6`.
pub fn walks_vs_evolution(max_total: u32) -> Result<Vec<Check>, CliError> {
    let bad = Bidegree::up_to_total(max_total)
        .into_par_iter()
        .map(|b| {
            let walks = hurwitz_by_paths_upto(&StateGraph::new(GroundSet::of_bidegree(b)), 6);
            let evolved = evolve_block(b, 6)?;
            let differs = walks.into_iter().zip(evolved).any(|(w, e)| w.into_iter().collect::<PolyVector>() != e);
            Ok(differs.then_some(b))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let bad: Vec<Bidegree> = bad.into_iter().flatten().collect();
    Ok(vec![Check::holds(
        format!("path counts equal evolution, n+ + n- <= {max_total}, m <= 6"),
        "no differing blocks",
        bad.is_empty(),
        format!("differing blocks: {}", listed(&bad)),
    )])
}

/// `[W⁺, W⁻] = 0` and `MᵀZ = ZM` on every block.
pub fn commutation(max_total: u32) -> Result<Vec<Check>, CliError> {
    let bad = Bidegree::up_to_total(max_total)
        .into_par_iter()
        .map(|b| {
            let p = block_matrix(OperatorKind::WPlus, b)?;
            let m = block_matrix(OperatorKind::WMinus, b)?;
            let commute = (&(&p.matrix * &m.matrix) - &(&m.matrix * &p.matrix)).is_zero();
            let z = Matrix::diagonal(&p.zeta_weights());
            let adjoint = [&p.matrix, &m.matrix].iter().all(|x| &x.transpose() * &z == &z * *x);
            Ok((!(commute && adjoint)).then_some(b))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let bad: Vec<Bidegree> = bad.into_iter().flatten().collect();
    Ok(vec![Check::holds(
        format!("[W+, W-] = 0 and M^T Z = Z M, n+ + n- <= {max_total}"),
        "no failing blocks",
        bad.is_empty(),
        format!("failing blocks: {}", listed(&bad)),
    )])
}

/// Coefficients of `∏_k (1−x^k y^k)^{-3} (1−x^k y^{k−1})^{-1} (1−x^{k−1} y^k)^{-1}`.
pub fn dimension_series(max_total: usize) -> Vec<Vec<u64>> {
    let n = max_total + 1;
    let mut c = vec![vec![0u64; n]; n];
    c[0][0] = 1;
    let mut divide = |a: usize, b: usize| {
        for i in 0..n {
            for j in 0..n {
                if i >= a && j >= b && i + j <= max_total {
                    c[i][j] += c[i - a][j - b];
                }
            }
        }
    };
    for k in 1..=max_total {
        for _ in 0..3 {
            divide(k, k);
        }
        divide(k, k - 1);
        divide(k - 1, k);
    }
    c
}

pub fn dimensions(max_total: u32) -> Vec<Check> {
    let series = dimension_series(max_total as usize);
    (0..=max_total)
        .map(|t| {
            let expected: Vec<u64> = (0..=t).rev().map(|a| series[a as usize][(t - a) as usize]).collect();
            let actual: Vec<usize> = (0..=t).rev().map(|a| enumerate_types(Bidegree::new(a, t - a)).len()).collect();
            Check::compare(format!("dim A at total degree {t}"), listed(&expected), listed(&actual))
        })
        .collect()
}

pub fn sign_symmetry(max_degree: u32, max_m: usize) -> Result<Vec<Check>, CliError> {
    let h = compute::series(max_degree, max_m, false)?;
    let bad: Vec<usize> = (0..=max_m).filter(|&m| h.at(m).swap_signs() != h.at(m)).collect();
    Ok(vec![Check::holds(
        format!("disconnected series symmetric under p+ <-> p-, degree <= {max_degree}, m <= {max_m}"),
        "no asymmetric orders",
        bad.is_empty(),
        format!("asymmetric orders: {}", listed(&bad)),
    )])
}

pub fn genus0_pde(max_m: usize, max_degree: u32) -> Result<Vec<Check>, CliError> {
    let r = verify_genus0_pde(max_m, max_degree)?;
    let shown: Vec<String> = r.nonzero.iter().take(5).map(|(m, mono, c)| format!("u^{m} {mono}: {c}")).collect();
    Ok(vec![Check::holds(
        format!("genus-0 equation residual, degree <= {max_degree}, m <= {max_m}"),
        "0",
        r.is_zero(),
        if r.is_zero() { "0".into() } else { format!("{} nonzero entries: {}", r.nonzero.len(), shown.join("; ")) },
    )])
}

/// The printed eigenbasis of the `(1,1)` block.
pub fn reference_eigenbasis() -> Vec<PolyVector> {
    let (p2p, p2m, p11, q1) = (rt(&[2], &[], &[]), rt(&[], &[2], &[]), rt(&[1], &[1], &[]), rt(&[], &[], &[1]));
    [[1, 1, 1, 1], [1, 1, -1, 1], [1, -1, 1, -1], [1, -1, -1, -1]]
        .iter()
        .map(|c| poly(&[(p2p.clone(), c[0]), (p2m.clone(), c[1]), (p11.clone(), c[2]), (q1.clone(), c[3])]))
        .collect()
}

pub fn block_11_spectrum() -> Result<Vec<Check>, CliError> {
    let r = common_eigenbasis(Bidegree::new(1, 1), DEFAULT_TOLERANCE)?;
    let mut pairs: Vec<(i64, i64)> = r
        .exact_pairs()
        .iter()
        .map(|(a, b)| (a.try_into().unwrap_or(i64::MAX), b.try_into().unwrap_or(i64::MAX)))
        .collect();
    pairs.sort_unstable();
    let show = |p: &[(i64, i64)]| p.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ");
    let refs = compare_with_reference(&r, &reference_eigenbasis());
    let matched = refs.iter().filter(|c| c.is_match()).count();
    let flagged: Vec<String> = refs.iter().filter(|c| !c.is_match()).map(|c| c.reference.to_string()).collect();
    Ok(vec![
        Check::compare(
            "block (1,1) eigenvalue pairs",
            show(&[(-1, -1), (-1, 1), (1, -1), (1, 1)]),
            format!("{}{}", show(&pairs), if r.is_fully_exact() { "" } else { " + approximate" }),
        ),
        Check::compare("block (1,1) distinct-pair eigenvectors Z-orthogonal", true, orthogonality_check(&r)),
        Check::compare(
            "block (1,1) printed eigenbasis: matches / flagged",
            "2 / 2",
            format!("{matched} / {}", flagged.len()),
        ),
        Check::info("block (1,1) flagged printed vectors", "", flagged.join("; ")),
    ])
}

pub fn spectral_coverage(max_total: u32) -> Result<Vec<Check>, CliError> {
    let reports = Bidegree::up_to_total(max_total)
        .into_par_iter()
        .map(|b| common_eigenbasis(b, DEFAULT_TOLERANCE))
        .collect::<Result<Vec<_>, _>>()?;
    let bad: Vec<Bidegree> = reports
        .iter()
        .filter(|r| r.exact.len() + r.approximate.len() != r.dim() || !orthogonality_check(r))
        .map(|r| r.bidegree)
        .collect();
    let approx: usize = reports.iter().map(|r| r.approximate.len()).sum();
    let total: usize = reports.iter().map(|r| r.dim()).sum();
    Ok(vec![
        Check::holds(
            format!("full common eigenbasis, n+ + n- <= {max_total}"),
            "every block",
            bad.is_empty(),
            format!("failing blocks: {}", listed(&bad)),
        ),
        Check::info(
            format!("eigenvectors with irrational eigenvalues, n+ + n- <= {max_total}"),
            format!("{total} vectors in total"),
            format!("{approx} certified numerically at {DEFAULT_TOLERANCE:e}"),
        ),
    ])
}

pub fn tilde_single_pole_count() -> Result<Vec<Check>, CliError> {
    let h = compute::tilde_series(3, 6, true)?;
    let mu = TildeType::from_parts(&[], &[], &[3], &[]);
    Ok(vec![Check::compare(format!("connected tilde count at m=6, {mu}"), 9, h.coefficient(6, &mu))])
}

pub fn tilde_walks_vs_evolution(max_n: u32) -> Vec<Check> {
    let bad: Vec<u32> = (0..=max_n)
        .into_par_iter()
        .filter(|&n| {
            let graph = TildeGraph::new(n as usize);
            let walks = tilde_hurwitz_upto(&graph, 6);
            let evolved = tilde_evolve(&tilde_operator_matrix(&graph), 6);
            walks.into_iter().zip(evolved).any(|(w, e)| w.into_iter().collect::<TildePoly>() != e)
        })
        .collect();
    vec![Check::holds(
        format!("tilde evolution equals path counts, n <= {max_n}, m <= 6"),
        "no differing n",
        bad.is_empty(),
        format!("differing n: {}", listed(&bad)),
    )]
}

pub fn transcribed_comparison(max_n: u32) -> Vec<Check> {
    (1..=max_n)
        .map(|n| {
            let c = compare_operators(&tilde_operator_matrix(&TildeGraph::new(n as usize)), &transcribed_operator_matrix(n));
            Check::info(
                format!("transcribed tilde operator vs oracle, n = {n}"),
                format!("{} entries", c.entries),
                format!("{} agree, {} differ", c.agreeing, c.diffs.len()),
            )
        })
        .collect()
}

pub fn run_suite(suite: Suite, max_size: Option<u32>) -> Result<Vec<Check>, CliError> {
    let size = max_size.unwrap_or(suite.default_max_size());
    let mut checks = Vec::new();
    match suite {
        Suite::Paper => {
            checks.extend(leading_expansion()?);
            checks.extend(euler_numbers()?);
            checks.extend(genus0_evaluation()?);
            checks.extend(single_pole_counts()?);
            checks.extend(degree_two_family()?);
            checks.extend(dimensions(5));
            checks.extend(block_11_spectrum()?);
            checks.extend(tilde_single_pole_count()?);
        }
        Suite::Oracle => {
            checks.extend(oracle_equivalence(size)?);
            checks.extend(walks_vs_evolution(size)?);
            checks.extend(sign_symmetry(6, 6)?);
        }
        Suite::Spectral => {
            checks.extend(commutation(size)?);
            checks.extend(dimensions(size));
            checks.extend(spectral_coverage(size)?);
            checks.extend(block_11_spectrum()?);
        }
        Suite::Genus0 => {
            checks.extend(genus0_pde(8, 6)?);
            checks.extend(euler_numbers()?);
            checks.extend(genus0_evaluation()?);
        }
        Suite::Nonsep => {
            checks.extend(tilde_single_pole_count()?);
            checks.extend(tilde_walks_vs_evolution(size));
            checks.extend(transcribed_comparison(size));
        }
    }
    Ok(checks)
}

pub fn render(checks: &[Check], format: crate::output::Format) -> Result<String, CliError> {
    use crate::output::Format;
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(checks)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "status", "expected", "actual"])?;
            for c in checks {
                w.write_record([c.name.as_str(), &c.status.to_string(), &c.expected, &c.actual])?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => {
            let mut out = String::new();
            for c in checks {
                out.push_str(&format!("{} {}\n    expected: {}\n    actual:   {}\n", c.status, c.name, c.expected, c.actual));
            }
            let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
            out.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            Ok(out)
        }
    }
}
