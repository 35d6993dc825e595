//! Exponential generating series in `u` with polynomial coefficients, and
//! the exp/log pair relating disconnected and connected counts.
//!
//! Entry `m` of a series holds the coefficient of `u^m/m!`. The power of
//! `ħ` is never stored: it is a function of `(μ, m)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries<M: Monomial> {
    coeffs: Vec<Poly<M>>,
    connected: bool,
    max_degree: u32,
}

impl<M: Monomial> USeries<M> {
    /// Wraps coefficients of `u^m/m!`, `m = 0..coeffs.len()`, dropping
    /// everything above `max_degree`.
    pub fn new(coeffs: Vec<Poly<M>>, connected: bool, max_degree: u32) -> Self {
        let coeffs = coeffs.into_iter().map(|p| p.truncate_degree(max_degree)).collect();
        USeries { coeffs, connected, max_degree }
    }

    pub fn coeffs(&self) -> &[Poly<M>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly<M>> {
        self.coeffs
    }

    /// Coefficient polynomial of `u^m/m!`; zero past the truncation.
    pub fn at(&self, m: usize) -> Poly<M> {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// The number `h_{m;μ}` stored at `u^m/m!`, `p_μ`.
    pub fn coefficient(&self, m: usize, mu: &M) -> Rational {
        self.coeffs.get(m).map(|p| p.coeff(mu)).unwrap_or_else(Rational::zero)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Largest stored power of `u`; `None` for an empty series.
    pub fn max_m(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn truncate(&self, max_m: usize, max_degree: u32) -> Self {
        let max_degree = max_degree.min(self.max_degree);
        let coeffs = self.coeffs.iter().take(max_m + 1).cloned().collect();
        USeries::new(coeffs, self.connected, max_degree)
    }

    pub fn map_monomials<N: Monomial>(&self, f: impl Fn(&M) -> N + Copy) -> USeries<N> {
        let coeffs = self.coeffs.iter().map(|p| p.map_monomials(f)).collect();
        USeries::new(coeffs, self.connected, self.max_degree)
    }

    /// `exp` of a connected series: the disconnected series.
    pub fn exp(&self, max_m: usize, max_degree: u32) -> Result<Self> {
        series_exp(self, max_m, max_degree)
    }

    /// `log` of a disconnected series: the connected series.
    pub fn log(&self, max_m: usize, max_degree: u32) -> Result<Self> {
        series_log(self, max_m, max_degree)
    }
}

/// Product of two EGFs in `u`: `(a·b)_m = Σ_k C(m,k) a_k b_{m−k}`.
pub fn egf_mul<M: Monomial>(a: &[Poly<M>], b: &[Poly<M>], max_m: usize, max_degree: u32) -> Vec<Poly<M>> {
    let len = (a.len() + b.len()).saturating_sub(1).min(max_m + 1);
    let mut out = alloc::vec![Poly::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len || y.is_zero() {
                continue;
            }
            let prod = x.mul_truncated(y, max_degree);
            out[i + j].add_assign_scaled(&prod, &binomial(i + j, i));
        }
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Splits a series into homogeneous degree components: `parts[d][m]`.
fn degree_components<M: Monomial>(s: &USeries<M>, max_m: usize, max_degree: u32) -> Vec<Vec<Poly<M>>> {
    let mut parts = alloc::vec![alloc::vec![Poly::zero(); max_m + 1]; max_degree as usize + 1];
    for (m, p) in s.coeffs.iter().enumerate().take(max_m + 1) {
        for (mono, c) in p.iter() {
            let d = mono.degree();
            if d <= max_degree {
                parts[d as usize][m].add_term(mono.clone(), c.clone());
            }
        }
    }
    parts
}

fn reassemble<M: Monomial>(parts: Vec<Vec<Poly<M>>>, max_m: usize) -> Vec<Poly<M>> {
    let mut out = alloc::vec![Poly::zero(); max_m + 1];
    for comp in parts {
        for (m, p) in comp.into_iter().enumerate() {
            out[m] = core::mem::take(&mut out[m]) + p;
        }
    }
    out
}

/// Exponential of a series whose degree-0 part vanishes, computed degree by
/// degree from `d·E_d = Σ_{k=1..d} k·X_k·E_{d−k}`.
pub fn series_exp<M: Monomial>(x: &USeries<M>, max_m: usize, max_degree: u32) -> Result<USeries<M>> {
    let max_degree = max_degree.min(x.max_degree);
    let xs = degree_components(x, max_m, max_degree);
    if let Some((m, _)) = xs[0].iter().enumerate().find(|(_, p)| !p.is_zero()) {
        return Err(Error::ExpPrecondition(format!("degree-0 term at u^{m}")));
    }
    let mut es: Vec<Vec<Poly<M>>> = Vec::with_capacity(xs.len());
    let mut unit = alloc::vec![Poly::zero(); max_m + 1];
    unit[0] = Poly::one();
    es.push(unit);
    for d in 1..=max_degree as usize {
        let mut acc = alloc::vec![Poly::zero(); max_m + 1];
        for k in 1..=d {
            let prod = egf_mul(&xs[k], &es[d - k], max_m, max_degree);
            let w = Rational::from_integer(BigInt::from(k));
            for (m, p) in prod.iter().enumerate() {
                acc[m].add_assign_scaled(p, &w);
            }
        }
        let inv_d = Rational::new(BigInt::one(), BigInt::from(d));
        es.push(acc.iter().map(|p| p.scale(&inv_d)).collect());
    }
    Ok(USeries::new(reassemble(es, max_m), false, max_degree))
}

/// Logarithm of a series with degree-0 part exactly `1` (at `u^0`), from
/// `L_d = H_d − (1/d) Σ_{k=1..d−1} k·L_k·H_{d−k}`.
pub fn series_log<M: Monomial>(h: &USeries<M>, max_m: usize, max_degree: u32) -> Result<USeries<M>> {
    let max_degree = max_degree.min(h.max_degree);
    let hs = degree_components(h, max_m, max_degree);
    for (m, p) in hs[0].iter().enumerate() {
        let expected = if m == 0 { Poly::one() } else { Poly::zero() };
        if *p != expected {
            return Err(Error::LogPrecondition(format!("degree-0 coefficient at u^{m} is {p}")));
        }
    }
    let mut ls: Vec<Vec<Poly<M>>> = Vec::with_capacity(hs.len());
    ls.push(alloc::vec![Poly::zero(); max_m + 1]);
    for d in 1..=max_degree as usize {
        let mut acc = alloc::vec![Poly::zero(); max_m + 1];
        for k in 1..d {
            let prod = egf_mul(&ls[k], &hs[d - k], max_m, max_degree);
            let w = Rational::from_integer(BigInt::from(k));
            for (m, p) in prod.iter().enumerate() {
                acc[m].add_assign_scaled(p, &w);
            }
        }
        let neg_inv_d = -Rational::new(BigInt::one(), BigInt::from(d));
        let ld = hs[d]
            .iter()
            .zip(&acc)
            .map(|(hd, a)| {
                let mut out = hd.clone();
                out.add_assign_scaled(a, &neg_inv_d);
                out
            })
            .collect();
        ls.push(ld);
    }
    Ok(USeries::new(reassemble(ls, max_m), true, max_degree))
}
