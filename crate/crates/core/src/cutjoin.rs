//! The cut-and-join operators `W⁺`, `W⁻`, `W = ½(W⁺ + W⁻)` and the genus-0
//! right-hand side.
//!
//! `W⁺` is the linear extension of four term families acting on monomials
//! (sums over ordered pairs `(i, j)` of positive integers, `ī` the sign of
//! `i`'s parity):
//!
//! | term | operator | χ-shift |
//! |------|----------|---------|
//! | cut  | `p^ī_i p⁺_j ∂/∂p^ī_{i+j}` | 0 |
//! | join | `p^ī_{i+j} ∂²/∂p^ī_i ∂p⁺_j` | −2 |
//! | real → complex | `i p⁺_{2i} ∂/∂q_i` | −2 |
//! | complex → real | `q_i ∂/∂p⁺_{2i}` | 0 |
//!
//! `W⁻` is `W⁺` conjugated by the swap `p⁺_k ↔ p⁻_k`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{coordinates, from_coordinates, PolyVector, UnsignedPoly};
use crate::types::{enumerate_types, Bidegree, RamificationType, Sign, UnsignedType, Var};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorKind {
    WPlus,
    WMinus,
    WMean,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [OperatorKind::WPlus, OperatorKind::WMinus, OperatorKind::WMean];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::WPlus => "wplus",
            OperatorKind::WMinus => "wminus",
            OperatorKind::WMean => "wmean",
        }
    }
}

impl core::str::FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wplus" | "W+" => Ok(OperatorKind::WPlus),
            "wminus" | "W-" => Ok(OperatorKind::WMinus),
            "wmean" | "W" => Ok(OperatorKind::WMean),
            _ => Err(Error::Parse { what: "operator", detail: alloc::format!("unknown operator `{s}`") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Cut,
    Join,
    RealToComplex,
    ComplexToReal,
}

impl TermKind {
    /// Change of the Euler characteristic `χ(μ', m+1) − χ(μ, m)`.
    pub fn chi_shift(self) -> i64 {
        match self {
            TermKind::Cut | TermKind::ComplexToReal => 0,
            TermKind::Join | TermKind::RealToComplex => -2,
        }
    }
}

/// One generated summand of `W⁺(p_μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub coeff: u64,
    pub image: RamificationType,
}

/// All summands of `W⁺(p_μ)`, before collecting like monomials.
pub fn wplus_terms(mu: &RamificationType) -> Vec<Term> {
    let vars = mu.vars();
    let mut out = Vec::new();
    for &(v, c) in &vars {
        let c = c as u64;
        let rest = mu.without(v).expect("variable occurs");
        match v {
            Var::P(sign, n) => {
                // cut: split p^s_n into p^s_i p⁺_{n−i} where s = sign of i's parity
                for i in 1..n {
                    if Sign::of_index(i) == sign {
                        let image = rest.with(Var::P(sign, i)).with(Var::plus(n - i));
                        out.push(Term { kind: TermKind::Cut, coeff: c, image });
                    }
                }
                if sign == Sign::Plus && n % 2 == 0 {
                    out.push(Term { kind: TermKind::ComplexToReal, coeff: c, image: rest.with(Var::Q(n / 2)) });
                }
            }
            Var::Q(i) => {
                let image = rest.with(Var::plus(2 * i));
                out.push(Term { kind: TermKind::RealToComplex, coeff: c * u64::from(i), image });
            }
        }
    }
    // join: ∂²/∂p^ī_i ∂p⁺_j over ordered pairs (i, j)
    for &(x, cx) in &vars {
        let Var::P(sx, i) = x else { continue };
        if Sign::of_index(i) != sx {
            continue;
        }
        for &(y, cy) in &vars {
            let Var::P(Sign::Plus, j) = y else { continue };
            let (coeff, rest) = if x == y {
                if cx < 2 {
                    continue;
                }
                (cx * (cx - 1), mu.without(x).and_then(|r| r.without(x)))
            } else {
                (cx * cy, mu.without(x).and_then(|r| r.without(y)))
            };
            let image = rest.expect("variables occur").with(Var::P(sx, i + j));
            out.push(Term { kind: TermKind::Join, coeff: coeff as u64, image });
        }
    }
    out
}

fn apply_wplus_monomial(mu: &RamificationType) -> PolyVector {
    wplus_terms(mu)
        .into_iter()
        .map(|t| (t.image, Rational::from_integer(BigInt::from(t.coeff))))
        .collect()
}

/// Image of a single monomial `p_μ`.
pub fn apply_monomial(kind: OperatorKind, mu: &RamificationType) -> PolyVector {
    match kind {
        OperatorKind::WPlus => apply_wplus_monomial(mu),
        OperatorKind::WMinus => apply_wplus_monomial(&mu.swap_signs()).swap_signs(),
        OperatorKind::WMean => {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            (&apply_monomial(OperatorKind::WPlus, mu) + &apply_monomial(OperatorKind::WMinus, mu)).scale(&half)
        }
    }
}

/// Applies the operator to a polynomial.
pub fn apply(kind: OperatorKind, p: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero();
    for (mu, c) in p.iter() {
        out.add_assign_scaled(&apply_monomial(kind, mu), c);
    }
    out
}

/// A linear operator restricted to one bidegree block, in the canonical
/// basis. Column `j` holds the image of `basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    pub bidegree: Bidegree,
    pub basis: Vec<RamificationType>,
    pub matrix: Matrix,
}

impl BlockMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix–vector product on a polynomial; `None` if `p` leaves the block.
    pub fn apply(&self, p: &PolyVector) -> Option<PolyVector> {
        let coords = coordinates(p, &self.basis)?;
        Some(from_coordinates(&self.matrix.mul_vec(&coords), &self.basis))
    }

    /// Entry at (row type, column type).
    pub fn entry(&self, row: &RamificationType, col: &RamificationType) -> Option<&Rational> {
        let i = self.basis.binary_search(row).ok()?;
        let j = self.basis.binary_search(col).ok()?;
        Some(&self.matrix[(i, j)])
    }

    /// The diagonal `ζ` weights of the scalar product in this basis.
    pub fn zeta_weights(&self) -> Vec<Rational> {
        self.basis.iter().map(|mu| Rational::from_integer(BigInt::from(mu.zeta()))).collect()
    }
}

/// Matrix of `kind` on the block of bidegree `b`.
pub fn block_matrix(kind: OperatorKind, b: Bidegree) -> Result<BlockMatrix> {
    let basis = enumerate_types(b);
    let n = basis.len();
    let mut matrix = Matrix::zeros(n, n);
    for (j, mu) in basis.iter().enumerate() {
        for (image, c) in apply_monomial(kind, mu).iter() {
            let i = basis
                .binary_search(image)
                .map_err(|_| Error::BlockLeak { bidegree: b, image: image.clone() })?;
            matrix[(i, j)] = c.clone();
        }
    }
    Ok(BlockMatrix { bidegree: b, basis, matrix })
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

fn p_var(k: u32) -> UnsignedType {
    UnsignedType::new(crate::partition::Partition::repeated(k, 1), Default::default())
}

/// `∂P/∂p_k`.
pub fn partial_p(p: &UnsignedPoly, k: u32) -> UnsignedPoly {
    let mut out = UnsignedPoly::zero();
    for (m, c) in p.iter() {
        let e = m.p.count(k);
        if e > 0 {
            let rest = UnsignedType::new(m.p.without_part(k).expect("part occurs"), m.q.clone());
            out.add_term(rest, c * Rational::from_integer(BigInt::from(e)));
        }
    }
    out
}

/// Linear part `½ Σ p_i p_j ∂P/∂p_{i+j} + ½ Σ q_i ∂P/∂p_{2i}`.
pub fn genus0_linear(p: &UnsignedPoly) -> UnsignedPoly {
    let mut out = UnsignedPoly::zero();
    for (m, c) in p.iter() {
        for (n, e) in m.p.multiplicities() {
            let rest = m.p.without_part(n).expect("part occurs");
            let w = c * Rational::from_integer(BigInt::from(e)) * half();
            for i in 1..n {
                let parts = rest.with_part(i).with_part(n - i);
                out.add_term(UnsignedType::new(parts, m.q.clone()), w.clone());
            }
            if n % 2 == 0 {
                out.add_term(UnsignedType::new(rest.clone(), m.q.with_part(n / 2)), w);
            }
        }
    }
    out
}

/// Bilinear part `½ Σ_{i,j} p_{i+j} ∂A/∂p_i ∂B/∂p_j`, truncated at `max_degree`.
pub fn genus0_quadratic(a: &UnsignedPoly, b: &UnsignedPoly, max_degree: u32) -> UnsignedPoly {
    let indices = |p: &UnsignedPoly| {
        let mut ks: Vec<u32> = p.iter().flat_map(|(m, _)| m.p.parts().to_vec()).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    let da: Vec<(u32, UnsignedPoly)> = indices(a).into_iter().map(|i| (i, partial_p(a, i))).collect();
    let db: Vec<(u32, UnsignedPoly)> = indices(b).into_iter().map(|j| (j, partial_p(b, j))).collect();
    let mut out = UnsignedPoly::zero();
    for (i, pa) in &da {
        for (j, pb) in &db {
            if i + j > max_degree {
                continue;
            }
            let prod = pa.mul_truncated(pb, max_degree - (i + j));
            let shifted = prod.map_monomials(|m| UnsignedType::new(m.p.with_part(i + j), m.q.clone()));
            out.add_assign_scaled(&shifted, &half());
        }
    }
    out
}

/// `½ p₂`, the inhomogeneous term.
pub fn genus0_source() -> UnsignedPoly {
    UnsignedPoly::term(p_var(2), half())
}

/// Right-hand side of the genus-0 equation evaluated on a single polynomial:
/// linear part + quadratic part + `½ p₂`. Not linear in `P`.
pub fn genus0_rhs(p: &UnsignedPoly) -> UnsignedPoly {
    let max_degree = p.max_degree().unwrap_or(0).saturating_mul(2).max(2);
    genus0_linear(p) + genus0_quadratic(p, p, max_degree) + genus0_source()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(kp: &[u32], km: &[u32], l: &[u32]) -> RamificationType {
        RamificationType::from_parts(kp, km, l)
    }

    fn mono(mu: RamificationType) -> PolyVector {
        PolyVector::monomial(mu)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn wplus_examples() {
        let wp = |p: &PolyVector| apply(OperatorKind::WPlus, p);
        assert!(wp(&mono(t(&[1], &[], &[]))).is_zero());
        let p2 = &mono(t(&[2], &[], &[])) + &mono(t(&[], &[2], &[]));
        assert_eq!(wp(&p2), &mono(t(&[], &[], &[1])) + &mono(t(&[1], &[1], &[])));
        assert_eq!(wp(&mono(t(&[], &[], &[1]))), mono(t(&[2], &[], &[])));
        assert_eq!(wp(&mono(t(&[], &[4], &[]))), &mono(t(&[3], &[1], &[])) + &mono(t(&[1], &[3], &[])));
    }

    #[test]
    fn second_derivative_of_square() {
        // p⁺₂² → join (2,2) gives p⁺₄ with ∂²/∂p⁺₂² = 2
        let img = apply(OperatorKind::WPlus, &mono(t(&[2, 2], &[], &[])));
        assert_eq!(img.coeff(&t(&[4], &[], &[])), r(2, 1));
    }

    #[test]
    fn block_11() {
        let m = block_matrix(OperatorKind::WPlus, Bidegree::new(1, 1)).unwrap();
        let img = |mu: RamificationType| m.apply(&mono(mu)).unwrap();
        assert_eq!(img(t(&[2], &[], &[])), mono(t(&[], &[], &[1])));
        assert_eq!(img(t(&[], &[2], &[])), mono(t(&[1], &[1], &[])));
        assert_eq!(img(t(&[1], &[1], &[])), mono(t(&[], &[2], &[])));
        assert_eq!(img(t(&[], &[], &[1])), mono(t(&[2], &[], &[])));

        let minus = block_matrix(OperatorKind::WMinus, Bidegree::new(1, 1)).unwrap();
        let img = |mu: RamificationType| minus.apply(&mono(mu)).unwrap();
        assert_eq!(img(t(&[2], &[], &[])), mono(t(&[1], &[1], &[])));
        assert_eq!(img(t(&[], &[2], &[])), mono(t(&[], &[], &[1])));
        assert_eq!(img(t(&[1], &[1], &[])), mono(t(&[2], &[], &[])));
        assert_eq!(img(t(&[], &[], &[1])), mono(t(&[], &[2], &[])));
    }

    #[test]
    fn block_10_is_zero() {
        let m = block_matrix(OperatorKind::WPlus, Bidegree::new(1, 0)).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.matrix.is_zero());
    }

    #[test]
    fn mean_operator_is_average() {
        let mu = t(&[3, 1], &[2], &[]);
        let w = apply_monomial(OperatorKind::WMean, &mu);
        let sum = &apply_monomial(OperatorKind::WPlus, &mu) + &apply_monomial(OperatorKind::WMinus, &mu);
        assert_eq!(w.scale(&r(2, 1)), sum);
    }

    #[test]
    fn chi_shift_bookkeeping() {
        for b in Bidegree::up_to_total(6) {
            for mu in enumerate_types(b) {
                for term in wplus_terms(&mu) {
                    let shift = term.image.euler_characteristic(4) - mu.euler_characteristic(3);
                    assert_eq!(shift, term.kind.chi_shift(), "{mu} -> {}", term.image);
                }
            }
        }
    }

    fn up(p: &[u32], q: &[u32]) -> UnsignedPoly {
        UnsignedPoly::monomial(UnsignedType::from_parts(p, q))
    }

    #[test]
    fn genus0_rhs_examples() {
        assert_eq!(genus0_rhs(&UnsignedPoly::zero()), up(&[2], &[]).scale(&r(1, 2)));
        // the quadratic term contributes ½ p₄ from ∂p₂/∂p₂ · ∂p₂/∂p₂
        let expected = (up(&[1, 1], &[]) + up(&[], &[1]) + up(&[2], &[]) + up(&[4], &[])).scale(&r(1, 2));
        assert_eq!(genus0_rhs(&up(&[2], &[])), expected);
        assert_eq!(genus0_rhs(&up(&[], &[1])), up(&[2], &[]).scale(&r(1, 2)));
    }
}
