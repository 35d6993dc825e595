//! Simultaneous eigenvectors of `W⁺` and `W⁻` on a bidegree block.
//!
//! Integer eigenvalues are handled exactly: kernels over the rationals,
//! restriction of `W⁻` to each `W⁺`-eigenspace, Gram–Schmidt in the `ζ`
//! scalar product. Whatever is left (irrational spectrum) is diagonalized in
//! floating point on the symmetrized matrices and certified by residuals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::cutjoin::{block_matrix, OperatorKind};
use crate::error::{Error, Result};
use crate::linalg::{integer_roots, Matrix};
use crate::poly::{coordinates, from_coordinates, PolyVector};
use crate::types::{Bidegree, RamificationType};
use crate::Rational;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Common eigenvector with integer eigenvalues, as a primitive integer
/// vector whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactEigenvector {
    pub lambda_plus: BigInt,
    pub lambda_minus: BigInt,
    pub coords: Vec<BigInt>,
}

impl ExactEigenvector {
    pub fn rational_coords(&self) -> Vec<Rational> {
        self.coords.iter().cloned().map(Rational::from_integer).collect()
    }
}

/// Common eigenvector found numerically, scaled to `‖v‖∞ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxEigenvector {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub coords: Vec<f64>,
    /// `max(‖W⁺v − λ⁺v‖∞, ‖W⁻v − λ⁻v‖∞)`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub bidegree: Bidegree,
    pub basis: Vec<RamificationType>,
    pub wplus: Matrix,
    pub wminus: Matrix,
    pub zeta: Vec<Rational>,
    /// `det(x − W^±)`, ascending.
    pub charpoly_plus: Vec<BigInt>,
    pub charpoly_minus: Vec<BigInt>,
    pub exact: Vec<ExactEigenvector>,
    pub approximate: Vec<ApproxEigenvector>,
    pub tolerance: f64,
}

impl SpectralReport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn exact_pairs(&self) -> Vec<(BigInt, BigInt)> {
        self.exact.iter().map(|e| (e.lambda_plus.clone(), e.lambda_minus.clone())).collect()
    }

    pub fn exact_poly(&self, i: usize) -> PolyVector {
        from_coordinates(&self.exact[i].rational_coords(), &self.basis)
    }

    pub fn is_fully_exact(&self) -> bool {
        self.approximate.is_empty()
    }
}

fn z_product(zeta: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    zeta.iter().zip(a).zip(b).fold(Rational::zero(), |acc, ((z, x), y)| acc + z * x * y)
}

/// Scales to a primitive integer vector with positive leading entry.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -gcd } else { gcd };
    ints.into_iter().map(|x| x / &g).collect()
}

fn spectral_err(b: Bidegree, reason: impl Into<String>) -> Error {
    Error::Spectral { bidegree: b, reason: reason.into() }
}

fn integer_charpoly(b: Bidegree, m: &Matrix, name: &str) -> Result<(Vec<Rational>, Vec<BigInt>)> {
    let cp = m.charpoly();
    if !cp.iter().all(|c| c.is_integer()) {
        return Err(spectral_err(b, format!("characteristic polynomial of {name} is not integral")));
    }
    let ints = cp.iter().map(|c| c.to_integer()).collect();
    Ok((cp, ints))
}

fn eigenvalue_bound(m: &Matrix) -> BigInt {
    m.row_sum_norm().ceil().to_integer()
}

fn shifted(m: &Matrix, lambda: &BigInt) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        out[(i, i)] -= Rational::from_integer(lambda.clone());
    }
    out
}

/// Joint eigen-decomposition of two commuting `ζ`-self-adjoint matrices.
pub fn joint_eigenbasis(
    bidegree: Bidegree,
    basis: Vec<RamificationType>,
    wplus: Matrix,
    wminus: Matrix,
    zeta: Vec<Rational>,
    tolerance: f64,
) -> Result<SpectralReport> {
    let b = bidegree;
    let n = wplus.rows();
    let z = Matrix::diagonal(&zeta);
    if !(&(&wplus * &wminus) - &(&wminus * &wplus)).is_zero() {
        return Err(spectral_err(b, "W+ and W- do not commute"));
    }
    for (name, m) in [("W+", &wplus), ("W-", &wminus)] {
        if &m.transpose() * &z != &z * m {
            return Err(spectral_err(b, format!("{name} is not self-adjoint for the zeta scalar product")));
        }
    }
    let (cp_plus, charpoly_plus) = integer_charpoly(b, &wplus, "W+")?;
    let (_, charpoly_minus) = integer_charpoly(b, &wminus, "W-")?;

    let mut exact = Vec::new();
    for (lp, _) in integer_roots(&cp_plus, &eigenvalue_bound(&wplus)) {
        let kernel = shifted(&wplus, &lp).kernel();
        let k = Matrix::from_columns(n, &kernel);
        // W⁻ K = K R, column by column
        let r_cols: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|v| k.solve(&wminus.mul_vec(v)).ok_or_else(|| spectral_err(b, "eigenspace of W+ is not W- invariant")))
            .collect::<Result<_>>()?;
        let r = Matrix::from_columns(kernel.len(), &r_cols);
        let cp_r = r.charpoly();
        if !cp_r.iter().all(|c| c.is_integer()) {
            return Err(spectral_err(b, "restricted W- has a non-integral characteristic polynomial"));
        }
        for (lm, _) in integer_roots(&cp_r, &eigenvalue_bound(&r)) {
            let mut joint: Vec<Vec<Rational>> = Vec::new();
            for y in shifted(&r, &lm).kernel() {
                let mut v = k.mul_vec(&y);
                for u in &joint {
                    let c = z_product(&zeta, &v, u) / z_product(&zeta, u, u);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= &c * ui;
                    }
                }
                joint.push(v);
            }
            exact.extend(joint.iter().map(|v| ExactEigenvector {
                lambda_plus: lp.clone(),
                lambda_minus: lm.clone(),
                coords: primitive(v),
            }));
        }
    }

    let approximate = if exact.len() < n {
        approximate_complement(b, &wplus, &wminus, &zeta, &exact, n - exact.len(), tolerance)?
    } else {
        Vec::new()
    };

    Ok(SpectralReport {
        bidegree,
        basis,
        wplus,
        wminus,
        zeta,
        charpoly_plus,
        charpoly_minus,
        exact,
        approximate,
        tolerance,
    })
}

fn approximate_complement(
    b: Bidegree,
    wplus: &Matrix,
    wminus: &Matrix,
    zeta: &[Rational],
    exact: &[ExactEigenvector],
    missing: usize,
    tolerance: f64,
) -> Result<Vec<ApproxEigenvector>> {
    let n = wplus.rows();
    let sq: Vec<f64> = zeta.iter().map(|z| Float::sqrt(z.to_f64().unwrap_or(f64::NAN))).collect();
    let sym = |m: &Matrix| {
        let f = m.to_f64();
        DMatrix::from_fn(n, n, |i, j| sq[i] * f[i * n + j] / sq[j])
    };
    let (sp, sm) = (sym(wplus), sym(wminus));
    let (mp, mm) = (DMatrix::from_row_slice(n, n, &wplus.to_f64()), DMatrix::from_row_slice(n, n, &wminus.to_f64()));

    // exact eigenvectors in symmetrized coordinates, orthonormal
    let known: Vec<nalgebra::DVector<f64>> = exact
        .iter()
        .map(|e| {
            let w = nalgebra::DVector::from_fn(n, |i, _| e.coords[i].to_f64().unwrap_or(f64::NAN) * sq[i]);
            let norm = w.norm();
            w / norm
        })
        .collect();

    // an irrational weight keeps distinct eigenvalue pairs apart
    let alpha = 0.618_033_988_749_894_8;
    let eig = SymmetricEigen::new(&sp + &sm * alpha);
    let mut candidates: Vec<(f64, usize)> = (0..n)
        .map(|c| {
            let w = eig.eigenvectors.column(c);
            let overlap = known.iter().map(|k| Float::abs(k.dot(&w))).fold(0.0, f64::max);
            (overlap, c)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out = Vec::new();
    for &(_, c) in candidates.iter().take(missing) {
        let w = eig.eigenvectors.column(c).into_owned();
        let lambda_plus = w.dot(&(&sp * &w));
        let lambda_minus = w.dot(&(&sm * &w));
        let mut v = nalgebra::DVector::from_fn(n, |i, _| w[i] / sq[i]);
        let scale = v.amax();
        v /= scale;
        if let Some(lead) = v.iter().find(|x| Float::abs(**x) > tolerance) {
            if *lead < 0.0 {
                v = -v;
            }
        }
        let rp = (&mp * &v - &v * lambda_plus).amax();
        let rm = (&mm * &v - &v * lambda_minus).amax();
        let residual = rp.max(rm);
        if !(residual < tolerance) {
            return Err(spectral_err(b, format!("floating eigenvector residual {residual:e} exceeds {tolerance:e}")));
        }
        out.push(ApproxEigenvector { lambda_plus, lambda_minus, coords: v.iter().copied().collect(), residual });
    }
    Ok(out)
}

/// Spectral report for the block of bidegree `b`.
pub fn common_eigenbasis(b: Bidegree, tolerance: f64) -> Result<SpectralReport> {
    let plus = block_matrix(OperatorKind::WPlus, b)?;
    let minus = block_matrix(OperatorKind::WMinus, b)?;
    let zeta = plus.zeta_weights();
    joint_eigenbasis(b, plus.basis, plus.matrix, minus.matrix, zeta, tolerance)
}

/// True iff exact eigenvectors with distinct eigenvalue pairs are orthogonal
/// for the `ζ` scalar product.
pub fn orthogonality_check(report: &SpectralReport) -> bool {
    let vs: Vec<Vec<Rational>> = report.exact.iter().map(|e| e.rational_coords()).collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let same = report.exact[i].lambda_plus == report.exact[j].lambda_plus
                && report.exact[i].lambda_minus == report.exact[j].lambda_minus;
            if !same && !z_product(&report.zeta, &vs[i], &vs[j]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// How a given vector relates to a computed report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceComparison {
    pub reference: PolyVector,
    /// `(λ⁺, λ⁻)` if the vector is a common eigenvector.
    pub eigenvalues: Option<(Rational, Rational)>,
    /// Index of a computed exact eigenvector proportional to it.
    pub matched: Option<usize>,
}

impl ReferenceComparison {
    pub fn is_match(&self) -> bool {
        self.eigenvalues.is_some() && self.matched.is_some()
    }
}

fn eigenvalue_of(m: &Matrix, v: &[Rational]) -> Option<Rational> {
    let w = m.mul_vec(v);
    let i = v.iter().position(|x| !x.is_zero())?;
    let lambda = &w[i] / &v[i];
    w.iter().zip(v).all(|(wi, vi)| *wi == &lambda * vi).then_some(lambda)
}

/// Checks each reference vector against the report, without changing it.
pub fn compare_with_reference(report: &SpectralReport, references: &[PolyVector]) -> Vec<ReferenceComparison> {
    references
        .iter()
        .map(|r| {
            let coords = coordinates(r, &report.basis);
            let eigenvalues = coords.as_ref().and_then(|v| {
                Some((eigenvalue_of(&report.wplus, v)?, eigenvalue_of(&report.wminus, v)?))
            });
            let matched = coords.as_ref().and_then(|v| {
                let p = primitive(v);
                report.exact.iter().position(|e| e.coords == p)
            });
            ReferenceComparison { reference: r.clone(), eigenvalues, matched }
        })
        .collect()
}
