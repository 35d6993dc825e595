//! Sparse polynomials with exact rational coefficients, indexed by monomial
//! keys such as [`RamificationType`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::types::{Bidegree, RamificationType, UnsignedType};
use crate::Rational;

/// Monomial keys: a commutative monoid graded by degree.
pub trait Monomial: Clone + Ord + fmt::Display {
    fn one() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn degree(&self) -> u32;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Monomials carrying the pairing `(p_μ, p_ν) = δ_{μν} ζ(μ)`.
pub trait Stabilized: Monomial {
    fn stabilizer_order(&self) -> BigUint;
}

impl Monomial for RamificationType {
    fn one() -> Self {
        RamificationType::empty()
    }

    fn times(&self, other: &Self) -> Self {
        RamificationType::times(self, other)
    }

    fn degree(&self) -> u32 {
        RamificationType::degree(self)
    }
}

impl Stabilized for RamificationType {
    fn stabilizer_order(&self) -> BigUint {
        self.zeta()
    }
}

impl Monomial for UnsignedType {
    fn one() -> Self {
        UnsignedType::default()
    }

    fn times(&self, other: &Self) -> Self {
        UnsignedType::new(self.p.union(&other.p), self.q.union(&other.q))
    }

    fn degree(&self) -> u32 {
        UnsignedType::degree(self)
    }
}

/// A finitely supported map from monomials to rationals. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    terms: BTreeMap<M, Rational>,
}

/// Elements of the polynomial spaces `A_{n⁺,n⁻}`.
pub type PolyVector = Poly<RamificationType>;

/// Polynomials in the sign-blind variables `p_k`, `q_k`.
pub type UnsignedPoly = Poly<UnsignedType>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(M::one())
    }

    pub fn monomial(m: M) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: M, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (M, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &M) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, m: &M) -> Option<&Rational> {
        self.terms.get(m)
    }

    /// Terms in canonical monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (M, Rational)> {
        self.terms.into_iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Product dropping every monomial of degree above `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            let da = a.degree();
            if da > max_degree {
                continue;
            }
            for (b, y) in &other.terms {
                if da + b.degree() <= max_degree {
                    out.add_term(a.times(b), x * y);
                }
            }
        }
        out
    }

    pub fn truncate_degree(&self, max_degree: u32) -> Self {
        self.filter(|m| m.degree() <= max_degree)
    }

    /// Homogeneous component of the given degree.
    pub fn degree_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&M) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (m.clone(), v.clone())).collect() }
    }

    /// Re-indexes every monomial, merging collisions.
    pub fn map_monomials<N: Monomial>(&self, f: impl Fn(&M) -> N) -> Poly<N> {
        Poly::from_terms(self.terms.iter().map(|(m, v)| (f(m), v.clone())))
    }

    /// Largest monomial degree, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl PolyVector {
    /// The common bidegree of every term, if the vector is non-zero and
    /// bihomogeneous.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(RamificationType::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn swap_signs(&self) -> Self {
        self.map_monomials(RamificationType::swap_signs)
    }
}

/// `(a, b) = Σ_μ a_μ b_μ ζ(μ)`.
pub fn scalar_product<M: Stabilized>(a: &Poly<M>, b: &Poly<M>) -> Rational {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.terms.iter().fold(Rational::zero(), |acc, (m, x)| match large.terms.get(m) {
        Some(y) => acc + x * y * Rational::from_integer(BigInt::from(m.stabilizer_order())),
        None => acc,
    })
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;

    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;

    fn add(mut self, rhs: Poly<M>) -> Poly<M> {
        for (m, v) in rhs.terms {
            self.add_term(m, v);
        }
        self
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;

    fn sub(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;

    fn sub(self, rhs: Poly<M>) -> Poly<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;

    fn neg(self) -> Poly<M> {
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;

    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl<M: Monomial> Mul<&Rational> for &Poly<M> {
    type Output = Poly<M>;

    fn mul(self, rhs: &Rational) -> Poly<M> {
        self.scale(rhs)
    }
}

impl<M: Monomial> FromIterator<(M, Rational)> for Poly<M> {
    fn from_iter<I: IntoIterator<Item = (M, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{{{m}}}")?;
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Collects the coefficient vector of `p` in `basis`; `None` if `p` has
/// support outside the basis.
pub fn coordinates<M: Monomial>(p: &Poly<M>, basis: &[M]) -> Option<Vec<Rational>> {
    let mut out = alloc::vec![Rational::zero(); basis.len()];
    for (m, c) in p.iter() {
        let i = basis.binary_search(m).ok()?;
        out[i] = c.clone();
    }
    Some(out)
}

/// Inverse of [`coordinates`].
pub fn from_coordinates<M: Monomial>(coords: &[Rational], basis: &[M]) -> Poly<M> {
    basis.iter().cloned().zip(coords.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Var;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn v(var: Var) -> PolyVector {
        PolyVector::monomial(RamificationType::of_var(var))
    }

    #[test]
    fn monomial_products() {
        let prod = &v(Var::plus(1)) * &v(Var::minus(1));
        assert_eq!(prod, PolyVector::monomial(RamificationType::from_parts(&[1], &[1], &[])));
        let sq = &v(Var::plus(2)) * &v(Var::plus(2));
        assert_eq!(sq, PolyVector::monomial(RamificationType::from_parts(&[2, 2], &[], &[])));
    }

    #[test]
    fn cancellation_leaves_no_zeros() {
        let p = &v(Var::plus(3)) + &v(Var::Q(1)).scale(&r(2, 3));
        let z = &p + &p.scale(&r(-1, 1));
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn scalar_product_examples() {
        let q1 = v(Var::Q(1));
        assert_eq!(scalar_product(&q1, &q1), r(1, 1));
        assert_eq!(scalar_product(&v(Var::plus(2)), &q1), r(0, 1));
        let sq = &v(Var::plus(1)) * &v(Var::plus(1));
        assert_eq!(scalar_product(&sq, &sq), r(2, 1));
    }

    #[test]
    fn bidegree_tag() {
        let p = &v(Var::plus(2)) + &v(Var::Q(1));
        assert_eq!(p.bidegree(), Some(Bidegree::new(1, 1)));
        let mixed = &p + &v(Var::plus(1));
        assert_eq!(mixed.bidegree(), None);
        assert_eq!(PolyVector::zero().bidegree(), None);
    }

    #[test]
    fn coordinates_roundtrip() {
        let basis = crate::types::enumerate_types(Bidegree::new(1, 1));
        let p = &v(Var::plus(2)).scale(&r(3, 2)) - &v(Var::Q(1));
        let c = coordinates(&p, &basis).unwrap();
        assert_eq!(from_coordinates(&c, &basis), p);
        assert!(coordinates(&v(Var::plus(1)), &basis).is_none());
    }
}
