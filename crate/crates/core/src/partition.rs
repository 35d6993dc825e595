//! Integer partitions stored as weakly decreasing part lists.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A partition: a weakly decreasing list of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub const fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts given in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `k` repeated `times` times.
    pub fn repeated(k: u32, times: usize) -> Self {
        assert!(k > 0 || times == 0, "partition parts must be positive");
        Partition(alloc::vec![k; times])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Sum of parts, `|λ|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiplicity of the part `k`.
    pub fn count(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        let mut i = 0;
        core::iter::from_fn(move || {
            let &k = self.0.get(i)?;
            let start = i;
            while i < self.0.len() && self.0[i] == k {
                i += 1;
            }
            Some((k, i - start))
        })
    }

    /// `|Aut(λ)|`: the product of factorials of part multiplicities.
    pub fn aut_order(&self) -> BigUint {
        self.multiplicities()
            .map(|(_, c)| factorial(c as u32))
            .fold(BigUint::one(), |acc, f| acc * f)
    }

    pub fn with_part(&self, k: u32) -> Self {
        assert!(k > 0, "partition parts must be positive");
        let mut parts = self.0.clone();
        let at = parts.partition_point(|&p| p >= k);
        parts.insert(at, k);
        Partition(parts)
    }

    /// Removes one copy of `k`, if present.
    pub fn without_part(&self, k: u32) -> Option<Self> {
        let at = self.0.iter().position(|&p| p == k)?;
        let mut parts = self.0.clone();
        parts.remove(at);
        Some(Partition(parts))
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition(parts)
    }

    /// Splits into (even parts, odd parts).
    pub fn split_parity(&self) -> (Partition, Partition) {
        let (even, odd): (Vec<u32>, Vec<u32>) = self.0.iter().partition(|&&k| k % 2 == 0);
        (Partition(even), Partition(odd))
    }

    /// All partitions of `n`, in reverse lexicographic order (`[n]` first).
    pub fn all_of_weight(n: u32) -> Vec<Partition> {
        Self::of_weight_with_parts(n, |_| true)
    }

    /// All partitions of `n` whose parts satisfy `allowed`.
    pub fn of_weight_with_parts(n: u32, allowed: impl Fn(u32) -> bool + Copy) -> Vec<Partition> {
        fn go(
            rest: u32,
            max: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
            allowed: impl Fn(u32) -> bool + Copy,
        ) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=max.min(rest)).rev() {
                if allowed(k) {
                    cur.push(k);
                    go(rest - k, k, cur, out, allowed);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out, allowed);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    /// Bracketed, comma separated: `[3,1,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sorts_and_rejects_zero() {
        let p = Partition::new(vec![1, 3, 2, 3]).unwrap();
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.weight(), 9);
        assert_eq!(p.len(), 4);
        assert_eq!(Partition::new(vec![2, 0]), Err(Error::ZeroPart));
    }

    #[test]
    fn multiplicities_and_aut() {
        let p = Partition::new(vec![2, 2, 2, 1, 1, 5]).unwrap();
        let m: Vec<_> = p.multiplicities().collect();
        assert_eq!(m, vec![(5, 1), (2, 3), (1, 2)]);
        assert_eq!(p.aut_order(), BigUint::from(12u32));
        assert_eq!(Partition::empty().aut_order(), BigUint::one());
    }

    #[test]
    fn insert_remove_union() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.with_part(2).parts(), &[3, 2, 1]);
        assert_eq!(p.with_part(3).parts(), &[3, 3, 1]);
        assert_eq!(p.without_part(3).unwrap().parts(), &[1]);
        assert!(p.without_part(2).is_none());
        let q = Partition::new(vec![2, 2, 1]).unwrap();
        assert_eq!(p.union(&q).parts(), &[3, 2, 2, 1, 1]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| Partition::all_of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(Partition::of_weight_with_parts(6, |k| k % 2 == 1).len(), 4);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", Partition::new(vec![1, 2]).unwrap()), "[2,1]");
        assert_eq!(alloc::format!("{}", Partition::empty()), "[]");
    }
}
