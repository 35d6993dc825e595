//! Blockwise evolution of the disconnected series, the connected series via
//! `log`, Hurwitz tables and the genus-0 specialization.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cutjoin::{block_matrix, genus0_linear, genus0_quadratic, genus0_source, OperatorKind};
use crate::error::Result;
use crate::partition::{factorial, Partition};
use crate::poly::{PolyVector, UnsignedPoly};
use crate::series::{binomial, USeries};
use crate::types::{Bidegree, RamificationType, UnsignedType};
use crate::Rational;

/// `Σ (p₁⁺)^i (p₁⁻)^j q₁^k / (i! j! k!)` over `i+k = n⁺`, `j+k = n⁻`.
pub fn initial_state(b: Bidegree) -> PolyVector {
    let mut out = PolyVector::zero();
    for k in 0..=b.n_plus.min(b.n_minus) {
        let (i, j) = (b.n_plus - k, b.n_minus - k);
        let mu = RamificationType::new(
            Partition::repeated(1, i as usize),
            Partition::repeated(1, j as usize),
            Partition::repeated(1, k as usize),
        );
        let den = factorial(i) * factorial(j) * factorial(k);
        out.add_term(mu, Rational::new(BigInt::one(), BigInt::from(den)));
    }
    out
}

/// `M^m v₀` for `m = 0..=max_m`, with `M` the block of `kind`.
pub fn evolve_block_with(kind: OperatorKind, b: Bidegree, max_m: usize) -> Result<Vec<PolyVector>> {
    let block = block_matrix(kind, b)?;
    let n = block.dim();
    let columns: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|j| (0..n).filter(|&i| !block.matrix[(i, j)].is_zero()).map(|i| (i, block.matrix[(i, j)].clone())).collect())
        .collect();
    let v0 = initial_state(b);
    let mut v: Vec<Rational> = block.basis.iter().map(|mu| v0.coeff(mu)).collect();
    let mut out = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        out.push(crate::poly::from_coordinates(&v, &block.basis));
        if m == max_m {
            break;
        }
        let mut next = alloc::vec![Rational::zero(); n];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &columns[j] {
                next[*i] += c * x;
            }
        }
        v = next;
    }
    Ok(out)
}

pub fn evolve_block(b: Bidegree, max_m: usize) -> Result<Vec<PolyVector>> {
    evolve_block_with(OperatorKind::WPlus, b, max_m)
}

/// Sums per-block evolutions into the disconnected series. Blocks may
/// arrive in any order; the result does not depend on it.
pub fn assemble_disconnected(blocks: Vec<Vec<PolyVector>>, max_degree: u32, max_m: usize) -> USeries<RamificationType> {
    let mut coeffs = alloc::vec![PolyVector::zero(); max_m + 1];
    for block in blocks {
        for (m, p) in block.into_iter().enumerate().take(max_m + 1) {
            coeffs[m] = core::mem::take(&mut coeffs[m]) + p;
        }
    }
    USeries::new(coeffs, false, max_degree)
}

pub fn disconnected_series_with(kind: OperatorKind, max_degree: u32, max_m: usize) -> Result<USeries<RamificationType>> {
    let blocks = Bidegree::up_to_total(max_degree)
        .into_iter()
        .map(|b| evolve_block_with(kind, b, max_m))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_disconnected(blocks, max_degree, max_m))
}

pub fn disconnected_series(max_degree: u32, max_m: usize) -> Result<USeries<RamificationType>> {
    disconnected_series_with(OperatorKind::WPlus, max_degree, max_m)
}

pub fn connected_series(max_degree: u32, max_m: usize) -> Result<USeries<RamificationType>> {
    disconnected_series(max_degree, max_m)?.log(max_m, max_degree)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzRecord {
    pub m: usize,
    pub mu: RamificationType,
    pub chi: i64,
    pub connected: bool,
    pub value: Rational,
}

/// Nonzero coefficients of a series, ordered by `m` then canonical type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HurwitzTable {
    pub records: Vec<HurwitzRecord>,
}

impl HurwitzTable {
    pub fn from_series(s: &USeries<RamificationType>) -> Self {
        let mut records = Vec::new();
        for (m, p) in s.coeffs().iter().enumerate() {
            for (mu, c) in p.iter() {
                records.push(HurwitzRecord {
                    m,
                    mu: mu.clone(),
                    chi: mu.euler_characteristic(m as u32),
                    connected: s.is_connected(),
                    value: c.clone(),
                });
            }
        }
        HurwitzTable { records }
    }

    pub fn get(&self, m: usize, mu: &RamificationType) -> Rational {
        self.records
            .iter()
            .find(|r| r.m == m && &r.mu == mu)
            .map(|r| r.value.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// `½ × ` the `χ = 2` part of the connected series, with signs forgotten.
pub fn genus0_series(connected: &USeries<RamificationType>) -> USeries<UnsignedType> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let coeffs = connected
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, p)| {
            let mut out = UnsignedPoly::zero();
            for (mu, c) in p.iter() {
                if mu.euler_characteristic(m as u32) == 2 {
                    out.add_term(UnsignedType::forget_signs(mu), c * &half);
                }
            }
            out
        })
        .collect();
    USeries::new(coeffs, true, connected.max_degree())
}

/// Evaluates at `p_k = p[k−1]`, `q_k = q[k−1]`, missing values read as 0.
pub fn evaluate(poly: &UnsignedPoly, p: &[Rational], q: &[Rational]) -> Rational {
    let value = |vals: &[Rational], parts: &Partition| {
        parts.parts().iter().fold(Rational::one(), |acc, &k| {
            acc * vals.get(k as usize - 1).cloned().unwrap_or_else(Rational::zero)
        })
    };
    poly.iter().map(|(m, c)| c * value(p, &m.p) * value(q, &m.q)).fold(Rational::zero(), |a, b| a + b)
}

/// Coefficients of `u^m/m!` after evaluating every entry.
pub fn evaluate_series(s: &USeries<UnsignedType>, p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    s.coeffs().iter().map(|c| evaluate(c, p, q)).collect()
}

/// Nonzero entries of `∂H₀/∂u − RHS(H₀)`, as `(m, monomial, value)` at `u^m/m!`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidualReport {
    pub checked_m: usize,
    pub max_degree: u32,
    pub nonzero: Vec<(usize, UnsignedType, Rational)>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Residual of the genus-0 equation for orders `u^0 .. u^{max_m−1}` and
/// monomials of degree at most `max_degree`.
pub fn genus0_residual(h0: &USeries<UnsignedType>, max_m: usize, max_degree: u32) -> ResidualReport {
    let mut nonzero = Vec::new();
    for m in 0..max_m {
        let mut rhs = genus0_linear(&h0.at(m));
        for k in 0..=m {
            let quad = genus0_quadratic(&h0.at(k), &h0.at(m - k), max_degree);
            rhs.add_assign_scaled(&quad, &binomial(m, k));
        }
        if m == 0 {
            rhs = rhs + genus0_source();
        }
        let residual = (h0.at(m + 1) - rhs).truncate_degree(max_degree);
        nonzero.extend(residual.into_terms().map(|(mono, c)| (m, mono, c)));
    }
    ResidualReport { checked_m: max_m, max_degree, nonzero }
}

/// Builds the genus-0 series from scratch and checks its equation.
pub fn verify_genus0_pde(max_m: usize, max_degree: u32) -> Result<ResidualReport> {
    let h0 = genus0_series(&connected_series(max_degree, max_m)?);
    Ok(genus0_residual(&h0, max_m, max_degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Var;

    fn t(kp: &[u32], km: &[u32], l: &[u32]) -> RamificationType {
        RamificationType::from_parts(kp, km, l)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn v(var: Var) -> PolyVector {
        PolyVector::monomial(RamificationType::of_var(var))
    }

    #[test]
    fn block_11() {
        let e = evolve_block(Bidegree::new(1, 1), 2).unwrap();
        assert_eq!(e[1], &v(Var::plus(2)) + &v(Var::minus(2)));
        assert_eq!(e[2], &PolyVector::monomial(t(&[1], &[1], &[])) + &v(Var::Q(1)));
    }

    #[test]
    fn block_10() {
        let e = evolve_block(Bidegree::new(1, 0), 3).unwrap();
        assert_eq!(e[0], v(Var::plus(1)));
        assert!(e[1..].iter().all(|p| p.is_zero()));
    }

    #[test]
    fn low_order_connected_coefficients() {
        let h = connected_series(4, 3).unwrap();
        assert_eq!(h.coefficient(3, &t(&[4], &[], &[])), r(2, 1));
        assert_eq!(h.coefficient(3, &t(&[2, 1], &[], &[])), r(1, 1));
        assert_eq!(h.coefficient(3, &t(&[2], &[], &[])), r(1, 1));
    }

    #[test]
    fn table_is_ordered() {
        let table = HurwitzTable::from_series(&connected_series(2, 2).unwrap());
        let keys: Vec<_> = table.records.iter().map(|r| (r.m, r.mu.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(table.get(0, &t(&[], &[], &[1])), r(1, 1));
    }

    #[test]
    fn residual_of_zero_series() {
        let zero = USeries::new(alloc::vec![UnsignedPoly::zero(); 2], true, 4);
        let rep = genus0_residual(&zero, 1, 4);
        assert_eq!(rep.nonzero, alloc::vec![(0, UnsignedType::from_parts(&[2], &[]), r(-1, 2))]);
    }

    #[test]
    fn genus0_pde_small() {
        assert!(verify_genus0_pde(4, 6).unwrap().is_zero());
        let h0 = genus0_series(&connected_series(6, 4).unwrap());
        assert_eq!(h0.at(0), UnsignedPoly::monomial(UnsignedType::from_parts(&[1], &[])));
        assert!(genus0_residual(&h0.truncate(1, 6), 1, 6).is_zero());
    }
}
