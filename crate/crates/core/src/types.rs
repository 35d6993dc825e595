//! Ramification types, bidegrees and the numeric functionals indexing
//! every polynomial space in the crate.
//!
//! A type `μ = (κ⁺, κ⁻, λ)` stands for the monomial
//! `p_μ = ∏ p⁺_{k} ∏ p⁻_{k} ∏ q_ℓ`; its degree counts `p^±_k` with weight `k`
//! and `q_k` with weight `2k`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Sign of a real pole, of a chain, or of an element of the ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `+` for even `i`, `−` for odd `i`.
    pub fn of_index(i: u32) -> Sign {
        if i % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One of the variables `p⁺_k`, `p⁻_k`, `q_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P(Sign, u32),
    Q(u32),
}

impl Var {
    pub fn plus(k: u32) -> Var {
        Var::P(Sign::Plus, k)
    }

    pub fn minus(k: u32) -> Var {
        Var::P(Sign::Minus, k)
    }

    pub fn degree(self) -> u32 {
        match self {
            Var::P(_, k) => k,
            Var::Q(k) => 2 * k,
        }
    }
}

/// The pair `(n⁺, n⁻)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub n_plus: u32,
    pub n_minus: u32,
}

impl Bidegree {
    pub const fn new(n_plus: u32, n_minus: u32) -> Self {
        Bidegree { n_plus, n_minus }
    }

    pub fn total(self) -> u32 {
        self.n_plus + self.n_minus
    }

    /// Every bidegree with `n⁺ + n⁻ ≤ max_total`, ordered by total then `n⁺` descending.
    pub fn up_to_total(max_total: u32) -> Vec<Bidegree> {
        (0..=max_total)
            .flat_map(|t| (0..=t).rev().map(move |a| Bidegree::new(a, t - a)))
            .collect()
    }
}

impl core::ops::Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.n_plus + rhs.n_plus, self.n_minus + rhs.n_minus)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_plus, self.n_minus)
    }
}

/// A ramification type `(κ⁺, κ⁻, λ)` over infinity.
///
/// Ordered canonically by degree, then lexicographically by `κ⁺`, `κ⁻`, `λ`
/// as part sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RamificationType {
    pub kappa_plus: Partition,
    pub kappa_minus: Partition,
    pub lambda: Partition,
}

impl RamificationType {
    pub fn new(kappa_plus: Partition, kappa_minus: Partition, lambda: Partition) -> Self {
        RamificationType { kappa_plus, kappa_minus, lambda }
    }

    /// Convenience constructor from unsorted part lists; panics on zero parts.
    pub fn from_parts(kappa_plus: &[u32], kappa_minus: &[u32], lambda: &[u32]) -> Self {
        let p = |v: &[u32]| Partition::new(v.to_vec()).expect("positive parts");
        RamificationType::new(p(kappa_plus), p(kappa_minus), p(lambda))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa_plus.is_empty() && self.kappa_minus.is_empty() && self.lambda.is_empty()
    }

    /// The single-variable type of `v`.
    pub fn of_var(v: Var) -> Self {
        Self::empty().with(v)
    }

    /// `|κ⁺| + |κ⁻| + 2|λ|`.
    pub fn degree(&self) -> u32 {
        self.kappa_plus.weight() + self.kappa_minus.weight() + 2 * self.lambda.weight()
    }

    /// `ℓ(κ⁺) + ℓ(κ⁻) + 2ℓ(λ)`.
    pub fn pole_length(&self) -> u32 {
        (self.kappa_plus.len() + self.kappa_minus.len() + 2 * self.lambda.len()) as u32
    }

    pub fn bidegree(&self) -> Bidegree {
        bidegree(self)
    }

    pub fn euler_characteristic(&self, m: u32) -> i64 {
        euler_characteristic(self, m)
    }

    pub fn zeta(&self) -> BigUint {
        zeta(self)
    }

    pub fn kappa(&self, sign: Sign) -> &Partition {
        match sign {
            Sign::Plus => &self.kappa_plus,
            Sign::Minus => &self.kappa_minus,
        }
    }

    fn kappa_mut(&mut self, sign: Sign) -> &mut Partition {
        match sign {
            Sign::Plus => &mut self.kappa_plus,
            Sign::Minus => &mut self.kappa_minus,
        }
    }

    /// Exponent of `v` in `p_μ`.
    pub fn count(&self, v: Var) -> usize {
        match v {
            Var::P(s, k) => self.kappa(s).count(k),
            Var::Q(k) => self.lambda.count(k),
        }
    }

    pub fn with(&self, v: Var) -> Self {
        let mut out = self.clone();
        match v {
            Var::P(s, k) => *out.kappa_mut(s) = self.kappa(s).with_part(k),
            Var::Q(k) => out.lambda = self.lambda.with_part(k),
        }
        out
    }

    /// Divides `p_μ` by `v`, if `v` occurs.
    pub fn without(&self, v: Var) -> Option<Self> {
        let mut out = self.clone();
        match v {
            Var::P(s, k) => *out.kappa_mut(s) = self.kappa(s).without_part(k)?,
            Var::Q(k) => out.lambda = self.lambda.without_part(k)?,
        }
        Some(out)
    }

    /// Distinct variables with their exponents.
    pub fn vars(&self) -> Vec<(Var, usize)> {
        let mut out = Vec::new();
        for s in [Sign::Plus, Sign::Minus] {
            out.extend(self.kappa(s).multiplicities().map(|(k, c)| (Var::P(s, k), c)));
        }
        out.extend(self.lambda.multiplicities().map(|(k, c)| (Var::Q(k), c)));
        out
    }

    /// Monomial product: part-wise disjoint union.
    pub fn times(&self, other: &Self) -> Self {
        RamificationType::new(
            self.kappa_plus.union(&other.kappa_plus),
            self.kappa_minus.union(&other.kappa_minus),
            self.lambda.union(&other.lambda),
        )
    }

    /// Exchanges `p⁺_k ↔ p⁻_k`.
    pub fn swap_signs(&self) -> Self {
        RamificationType::new(self.kappa_minus.clone(), self.kappa_plus.clone(), self.lambda.clone())
    }

    /// Exchanges the even parts of `κ⁺` and `κ⁻`, keeping odd parts in place.
    /// This is the type of the inverse transition.
    pub fn swap_even_parts(&self) -> Self {
        let (even_p, odd_p) = self.kappa_plus.split_parity();
        let (even_m, odd_m) = self.kappa_minus.split_parity();
        RamificationType::new(odd_p.union(&even_m), odd_m.union(&even_p), self.lambda.clone())
    }
}

impl PartialOrd for RamificationType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RamificationType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.kappa_plus.cmp(&other.kappa_plus))
            .then_with(|| self.kappa_minus.cmp(&other.kappa_minus))
            .then_with(|| self.lambda.cmp(&other.lambda))
    }
}

impl fmt::Display for RamificationType {
    /// Canonical text form `k+:[..] k-:[..] l:[..]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k+:{} k-:{} l:{}", self.kappa_plus, self.kappa_minus, self.lambda)
    }
}

impl FromStr for RamificationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_labelled_lists(s, &["k+", "k-", "l"], "ramification type")?;
        let [kp, km, l]: [Partition; 3] = fields.try_into().expect("three labels");
        Ok(RamificationType::new(kp, km, l))
    }
}

/// Parses `label:[a,b,...]` groups in the given label order.
pub(crate) fn parse_labelled_lists(
    s: &str,
    labels: &[&str],
    what: &'static str,
) -> Result<Vec<Partition>> {
    let err = |detail: &str| Error::Parse { what, detail: detail.to_string() };
    let mut rest = s.trim();
    let mut out = Vec::with_capacity(labels.len());
    for label in labels {
        rest = rest.trim_start();
        rest = rest
            .strip_prefix(label)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| err(&alloc::format!("expected `{label}:` at `{rest}`")))?;
        let body = rest.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
        let close = body.find(']').ok_or_else(|| err("missing `]`"))?;
        let mut parts = Vec::new();
        for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let k: u32 = tok.parse().map_err(|_| err(&alloc::format!("bad part `{tok}`")))?;
            parts.push(k);
        }
        let sorted = parts.windows(2).all(|w| w[0] >= w[1]);
        if !sorted {
            return Err(err("parts must be listed in non-increasing order"));
        }
        out.push(Partition::new(parts)?);
        rest = &body[close + 1..];
    }
    if !rest.trim().is_empty() {
        return Err(err(&alloc::format!("trailing input `{}`", rest.trim())));
    }
    Ok(out)
}

/// `(n⁺, n⁻)` of a type: odd parts of `κ⁺` lean positive, odd parts of
/// `κ⁻` lean negative, even parts and `λ` parts split evenly.
pub fn bidegree(mu: &RamificationType) -> Bidegree {
    let (mut plus, mut minus) = (0, 0);
    for &k in mu.kappa_plus.parts() {
        plus += k.div_ceil(2);
        minus += k / 2;
    }
    for &k in mu.kappa_minus.parts() {
        plus += k / 2;
        minus += k.div_ceil(2);
    }
    let l = mu.lambda.weight();
    Bidegree::new(plus + l, minus + l)
}

/// Euler characteristic of the source curve from Riemann–Hurwitz:
/// `degree + ℓ(κ⁺) + ℓ(κ⁻) + 2ℓ(λ) − m`.
pub fn euler_characteristic(mu: &RamificationType, m: u32) -> i64 {
    i64::from(mu.degree()) + i64::from(mu.pole_length()) - i64::from(m)
}

/// Order of the stabilizer in `S(n⁺) × S(n⁻)` of any transition of type `μ`:
/// `|Aut κ⁺| |Aut κ⁻| |Aut λ| ∏ ℓ_j`.
pub fn zeta(mu: &RamificationType) -> BigUint {
    let cycles: BigUint = mu.lambda.parts().iter().map(|&l| BigUint::from(l)).product();
    mu.kappa_plus.aut_order() * mu.kappa_minus.aut_order() * mu.lambda.aut_order() * cycles
}

/// All types of bidegree `b`, each once, in canonical order.
pub fn enumerate_types(b: Bidegree) -> Vec<RamificationType> {
    let mut out = Vec::new();
    for l in 0..=b.n_plus.min(b.n_minus) {
        let (a, c) = (b.n_plus - l, b.n_minus - l);
        let lambdas = Partition::all_of_weight(l);
        for wp in 0..=a + c {
            for kp in Partition::all_of_weight(wp) {
                for km in Partition::all_of_weight(a + c - wp) {
                    let head = RamificationType::new(kp.clone(), km, Partition::empty());
                    if bidegree(&head) == Bidegree::new(a, c) {
                        for lambda in &lambdas {
                            let mut mu = head.clone();
                            mu.lambda = lambda.clone();
                            out.push(mu);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A monomial in the sign-blind variables `p_k`, `q_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnsignedType {
    pub p: Partition,
    pub q: Partition,
}

impl UnsignedType {
    pub fn new(p: Partition, q: Partition) -> Self {
        UnsignedType { p, q }
    }

    pub fn from_parts(p: &[u32], q: &[u32]) -> Self {
        let mk = |v: &[u32]| Partition::new(v.to_vec()).expect("positive parts");
        UnsignedType::new(mk(p), mk(q))
    }

    pub fn degree(&self) -> u32 {
        self.p.weight() + 2 * self.q.weight()
    }

    /// Forgets the signs of the real poles.
    pub fn forget_signs(mu: &RamificationType) -> Self {
        UnsignedType::new(mu.kappa_plus.union(&mu.kappa_minus), mu.lambda.clone())
    }
}

impl PartialOrd for UnsignedType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnsignedType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.p.cmp(&other.p))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl fmt::Display for UnsignedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p:{} q:{}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn t(kp: &[u32], km: &[u32], l: &[u32]) -> RamificationType {
        RamificationType::from_parts(kp, km, l)
    }

    #[test]
    fn bidegree_examples() {
        assert_eq!(bidegree(&t(&[2, 1], &[2], &[1])), Bidegree::new(4, 3));
        assert_eq!(bidegree(&RamificationType::empty()), Bidegree::new(0, 0));
        assert_eq!(bidegree(&t(&[3], &[], &[])), Bidegree::new(2, 1));
        assert_eq!(bidegree(&t(&[], &[3], &[])), Bidegree::new(1, 2));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&t(&[1], &[], &[]), 0), 2);
        assert_eq!(euler_characteristic(&t(&[], &[], &[1]), 0), 4);
        assert_eq!(euler_characteristic(&t(&[3], &[], &[]), 6), -2);
    }

    #[test]
    fn zeta_formula() {
        assert_eq!(zeta(&RamificationType::empty()), BigUint::from(1u32));
        assert_eq!(zeta(&t(&[], &[], &[3, 3])), BigUint::from(18u32));
        assert_eq!(zeta(&t(&[2, 1], &[2], &[1])), BigUint::from(1u32));
        assert_eq!(zeta(&t(&[1, 1], &[], &[])), BigUint::from(2u32));
    }

    #[test]
    fn enumerate_small_blocks() {
        let b11 = enumerate_types(Bidegree::new(1, 1));
        assert_eq!(b11.len(), 4);
        for mu in [t(&[2], &[], &[]), t(&[], &[2], &[]), t(&[1], &[1], &[]), t(&[], &[], &[1])] {
            assert!(b11.contains(&mu), "{mu}");
        }
        assert_eq!(enumerate_types(Bidegree::new(0, 0)), vec![RamificationType::empty()]);
        assert_eq!(enumerate_types(Bidegree::new(2, 1)).len(), 5);
        assert_eq!(enumerate_types(Bidegree::new(1, 0)), vec![t(&[1], &[], &[])]);
    }

    #[test]
    fn canonical_order_is_degree_then_lex() {
        let types = enumerate_types(Bidegree::new(1, 1));
        assert_eq!(
            types,
            vec![t(&[], &[], &[1]), t(&[], &[2], &[]), t(&[1], &[1], &[]), t(&[2], &[], &[])]
        );
        assert!(t(&[5], &[], &[]) < t(&[], &[], &[1, 1, 1]));
    }

    #[test]
    fn even_part_swap() {
        assert_eq!(t(&[2, 1], &[2], &[1]).swap_even_parts(), t(&[2, 1], &[2], &[1]));
        assert_eq!(t(&[4, 3], &[1], &[]).swap_even_parts(), t(&[3], &[4, 1], &[]));
    }

    #[test]
    fn text_form_roundtrip() {
        let mu = t(&[2, 1], &[2], &[1]);
        let s = format!("{mu}");
        assert_eq!(s, "k+:[2,1] k-:[2] l:[1]");
        assert_eq!(s.parse::<RamificationType>().unwrap(), mu);
        assert_eq!("k+:[] k-:[] l:[]".parse::<RamificationType>().unwrap(), RamificationType::empty());
        assert_eq!("k+:[3 1]  k-:[] l:[2]".parse::<RamificationType>().unwrap(), t(&[3, 1], &[], &[2]));
        assert!("k+:[1,2] k-:[] l:[]".parse::<RamificationType>().is_err());
        assert!("k+:[1] l:[]".parse::<RamificationType>().is_err());
        assert!("k+:[0] k-:[] l:[]".parse::<RamificationType>().is_err());
    }

    #[test]
    fn var_manipulation() {
        let mu = t(&[2, 2], &[1], &[3]);
        assert_eq!(mu.count(Var::plus(2)), 2);
        assert_eq!(mu.without(Var::plus(2)).unwrap(), t(&[2], &[1], &[3]));
        assert_eq!(mu.without(Var::Q(1)), None);
        assert_eq!(mu.with(Var::Q(1)), t(&[2, 2], &[1], &[3, 1]));
        assert_eq!(mu.vars().len(), 3);
    }
}
