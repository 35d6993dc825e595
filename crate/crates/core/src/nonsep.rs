//! Real functions on curves that need not be separating.
//!
//! States are involutive partial matchings on `n` unsigned elements. Types
//! become quadruples `(κ⁺, κ⁻, κ, λ)`: signed even real poles, unsigned odd
//! real poles and pairs of complex poles. The operator is multiplication by
//! the sum of transpositions; a transcription of the published differential
//! operator is kept alongside for entry-by-entry comparison.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partition::{factorial, Partition};
use crate::poly::{from_coordinates, Monomial, Poly, Stabilized};
use crate::series::USeries;
use crate::types::{parse_labelled_lists, Sign};
use crate::Rational;

/// `(κ⁺, κ⁻, κ, λ)`: even positive, even negative and odd real pole
/// orders, and orders of complex-conjugate pole pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TildeType {
    pub kappa_plus: Partition,
    pub kappa_minus: Partition,
    pub kappa_odd: Partition,
    pub lambda: Partition,
}

/// A single variable `p⁺_{2i}`, `p⁻_{2i}`, `p_{2i−1}` or `q_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TildeVar {
    Even(Sign, u32),
    Odd(u32),
    Q(u32),
}

impl TildeType {
    /// Panics if parities are wrong or a part is zero.
    pub fn from_parts(kappa_plus: &[u32], kappa_minus: &[u32], kappa_odd: &[u32], lambda: &[u32]) -> Self {
        let p = |v: &[u32]| Partition::new(v.to_vec()).expect("positive parts");
        TildeType::new(p(kappa_plus), p(kappa_minus), p(kappa_odd), p(lambda)).expect("valid parities")
    }

    pub fn new(kappa_plus: Partition, kappa_minus: Partition, kappa_odd: Partition, lambda: Partition) -> Result<Self> {
        let bad = |what: &str| Error::Parse { what: "tilde type", detail: what.into() };
        if kappa_plus.parts().iter().chain(kappa_minus.parts()).any(|k| k % 2 == 1) {
            return Err(bad("signed real poles must have even order"));
        }
        if kappa_odd.parts().iter().any(|k| k % 2 == 0) {
            return Err(bad("unsigned real poles must have odd order"));
        }
        Ok(TildeType { kappa_plus, kappa_minus, kappa_odd, lambda })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn of_var(v: TildeVar) -> Self {
        Self::empty().with(v)
    }

    pub fn degree(&self) -> u32 {
        self.kappa_plus.weight() + self.kappa_minus.weight() + self.kappa_odd.weight() + 2 * self.lambda.weight()
    }

    /// `degree + ℓ(κ⁺) + ℓ(κ⁻) + ℓ(κ) + 2ℓ(λ) − m`.
    pub fn euler_characteristic(&self, m: u32) -> i64 {
        let lengths = self.kappa_plus.len() + self.kappa_minus.len() + self.kappa_odd.len() + 2 * self.lambda.len();
        i64::from(self.degree()) + lengths as i64 - i64::from(m)
    }

    /// `|Aut κ⁺||Aut κ⁻||Aut κ||Aut λ| · 2^{ℓ(κ⁺)+ℓ(κ⁻)} · ∏ 2ℓ_j`.
    pub fn zeta(&self) -> BigUint {
        let mut z = self.kappa_plus.aut_order()
            * self.kappa_minus.aut_order()
            * self.kappa_odd.aut_order()
            * self.lambda.aut_order();
        z <<= self.kappa_plus.len() + self.kappa_minus.len();
        for &l in self.lambda.parts() {
            z *= BigUint::from(2 * l);
        }
        z
    }

    fn slot(&self, v: TildeVar) -> (&Partition, u32) {
        match v {
            TildeVar::Even(Sign::Plus, k) => (&self.kappa_plus, k),
            TildeVar::Even(Sign::Minus, k) => (&self.kappa_minus, k),
            TildeVar::Odd(k) => (&self.kappa_odd, k),
            TildeVar::Q(k) => (&self.lambda, k),
        }
    }

    fn slot_mut(&mut self, v: TildeVar) -> (&mut Partition, u32) {
        match v {
            TildeVar::Even(Sign::Plus, k) => (&mut self.kappa_plus, k),
            TildeVar::Even(Sign::Minus, k) => (&mut self.kappa_minus, k),
            TildeVar::Odd(k) => (&mut self.kappa_odd, k),
            TildeVar::Q(k) => (&mut self.lambda, k),
        }
    }

    pub fn count(&self, v: TildeVar) -> usize {
        let (p, k) = self.slot(v);
        p.count(k)
    }

    pub fn with(&self, v: TildeVar) -> Self {
        let mut out = self.clone();
        let (p, k) = out.slot_mut(v);
        *p = p.with_part(k);
        out
    }

    pub fn without(&self, v: TildeVar) -> Option<Self> {
        let mut out = self.clone();
        let (p, k) = out.slot_mut(v);
        *p = p.without_part(k)?;
        Some(out)
    }

    /// Distinct variables with their exponents.
    pub fn vars(&self) -> Vec<(TildeVar, usize)> {
        let mut out = Vec::new();
        out.extend(self.kappa_plus.multiplicities().map(|(k, c)| (TildeVar::Even(Sign::Plus, k), c)));
        out.extend(self.kappa_minus.multiplicities().map(|(k, c)| (TildeVar::Even(Sign::Minus, k), c)));
        out.extend(self.kappa_odd.multiplicities().map(|(k, c)| (TildeVar::Odd(k), c)));
        out.extend(self.lambda.multiplicities().map(|(k, c)| (TildeVar::Q(k), c)));
        out
    }
}

/// Real pole variable of order `k`; `sign` is ignored for odd `k`.
pub fn real_pole(sign: Sign, k: u32) -> TildeVar {
    if k % 2 == 0 {
        TildeVar::Even(sign, k)
    } else {
        TildeVar::Odd(k)
    }
}

impl PartialOrd for TildeType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TildeType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.kappa_plus.parts().cmp(other.kappa_plus.parts()))
            .then_with(|| self.kappa_minus.parts().cmp(other.kappa_minus.parts()))
            .then_with(|| self.kappa_odd.parts().cmp(other.kappa_odd.parts()))
            .then_with(|| self.lambda.parts().cmp(other.lambda.parts()))
    }
}

impl fmt::Display for TildeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k+:{} k-:{} k:{} l:{}", self.kappa_plus, self.kappa_minus, self.kappa_odd, self.lambda)
    }
}

impl FromStr for TildeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_labelled_lists(s, &["k+", "k-", "k", "l"], "tilde type")?;
        let [kp, km, k, l]: [Partition; 4] = fields.try_into().expect("four labels");
        TildeType::new(kp, km, k, l)
    }
}

impl Monomial for TildeType {
    fn one() -> Self {
        TildeType::empty()
    }

    fn times(&self, other: &Self) -> Self {
        TildeType {
            kappa_plus: self.kappa_plus.union(&other.kappa_plus),
            kappa_minus: self.kappa_minus.union(&other.kappa_minus),
            kappa_odd: self.kappa_odd.union(&other.kappa_odd),
            lambda: self.lambda.union(&other.lambda),
        }
    }

    fn degree(&self) -> u32 {
        TildeType::degree(self)
    }
}

impl Stabilized for TildeType {
    fn stabilizer_order(&self) -> BigUint {
        self.zeta()
    }
}

pub type TildePoly = Poly<TildeType>;

/// All tilde types of degree `n`, sorted.
pub fn enumerate_tilde_types(n: u32) -> Vec<TildeType> {
    let mut out = Vec::new();
    for w in 0..=n / 2 {
        for lambda in Partition::all_of_weight(w) {
            let r = n - 2 * w;
            for a in (0..=r).step_by(2) {
                for b in (0..=r - a).step_by(2) {
                    let c = r - a - b;
                    for kp in Partition::of_weight_with_parts(a, |k| k % 2 == 0) {
                        for km in Partition::of_weight_with_parts(b, |k| k % 2 == 0) {
                            for k in Partition::of_weight_with_parts(c, |k| k % 2 == 1) {
                                out.push(TildeType {
                                    kappa_plus: kp.clone(),
                                    kappa_minus: km.clone(),
                                    kappa_odd: k,
                                    lambda: lambda.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// An involutive partial matching: `partner[i]` is the element paired with `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TildeState {
    partner: Vec<Option<usize>>,
}

impl TildeState {
    pub fn empty(n: usize) -> Self {
        TildeState { partner: alloc::vec![None; n] }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut s = TildeState::empty(n);
        for &(a, b) in pairs {
            assert!(a != b && s.partner[a].is_none() && s.partner[b].is_none(), "element matched twice");
            s.partner[a] = Some(b);
            s.partner[b] = Some(a);
        }
        s
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    /// Add one pair of unmatched elements or remove one pair.
    pub fn neighbours(&self) -> Vec<TildeState> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            match self.partner[a] {
                Some(b) if a < b => {
                    let mut s = self.clone();
                    s.partner[a] = None;
                    s.partner[b] = None;
                    out.push(s);
                }
                Some(_) => {}
                None => {
                    for b in a + 1..n {
                        if self.partner[b].is_none() {
                            let mut s = self.clone();
                            s.partner[a] = Some(b);
                            s.partner[b] = Some(a);
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn all_tilde_states(n: usize) -> Vec<TildeState> {
    fn go(i: usize, s: &mut TildeState, out: &mut Vec<TildeState>) {
        if i == s.size() {
            out.push(s.clone());
            return;
        }
        if s.partner[i].is_some() {
            return go(i + 1, s, out);
        }
        go(i + 1, s, out);
        for j in i + 1..s.size() {
            if s.partner[j].is_none() {
                s.partner[i] = Some(j);
                s.partner[j] = Some(i);
                go(i + 1, s, out);
                s.partner[i] = None;
                s.partner[j] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut TildeState::empty(n), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TildeTransition {
    pub initial: TildeState,
    pub terminal: TildeState,
}

impl TildeTransition {
    pub fn new(initial: TildeState, terminal: TildeState) -> Self {
        assert_eq!(initial.size(), terminal.size(), "states of different sizes");
        TildeTransition { initial, terminal }
    }

    pub fn inverse(&self) -> Self {
        TildeTransition { initial: self.terminal.clone(), terminal: self.initial.clone() }
    }

    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let map = |s: &TildeState| {
            let mut out = TildeState::empty(s.size());
            for (i, p) in s.partner.iter().enumerate() {
                out.partner[sigma[i]] = p.map(|j| sigma[j]);
            }
            out
        };
        TildeTransition { initial: map(&self.initial), terminal: map(&self.terminal) }
    }
}

/// Chains and cycles of the two matchings. Odd chains give parts of `κ`,
/// even chains parts of `κ⁺` (ends unmatched initially) or `κ⁻`.
pub fn tilde_classify(t: &TildeTransition) -> TildeType {
    let n = t.initial.size();
    let (init, fin) = (&t.initial.partner, &t.terminal.partner);
    let mut seen = alloc::vec![false; n];
    let mut out = TildeType::empty();
    for v in 0..n {
        if seen[v] || (init[v].is_some() && fin[v].is_some()) {
            continue;
        }
        let first_initial = init[v].is_some();
        let mut use_initial = first_initial;
        let mut cur = v;
        let mut len = 1u32;
        seen[v] = true;
        while let Some(next) = if use_initial { init[cur] } else { fin[cur] } {
            cur = next;
            seen[cur] = true;
            len += 1;
            use_initial = !use_initial;
        }
        let sign = if first_initial || len == 1 { Sign::Minus } else { Sign::Plus };
        out = out.with(real_pole(sign, len));
    }
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let (mut cur, mut ui, mut len) = (v, true, 0u32);
        loop {
            seen[cur] = true;
            len += 1;
            cur = if ui { init[cur] } else { fin[cur] }.expect("cycle vertices are matched twice");
            ui = !ui;
            if cur == v {
                break;
            }
        }
        out = out.with(TildeVar::Q(len / 2));
    }
    out
}

/// A transition of type `mu` on `degree(mu)` elements.
pub fn tilde_representative(mu: &TildeType) -> TildeTransition {
    let n = mu.degree() as usize;
    let mut next = 0usize;
    let (mut init, mut fin) = (Vec::new(), Vec::new());
    let chains = mu
        .kappa_plus
        .parts()
        .iter()
        .map(|&k| (k, false))
        .chain(mu.kappa_minus.parts().iter().map(|&k| (k, true)))
        .chain(mu.kappa_odd.parts().iter().map(|&k| (k, true)));
    for (k, first_initial) in chains {
        let mut initial = first_initial;
        for _ in 1..k {
            let link = (next, next + 1);
            if initial { init.push(link) } else { fin.push(link) }
            initial = !initial;
            next += 1;
        }
        next += 1;
    }
    for &l in mu.lambda.parts() {
        let len = 2 * l as usize;
        for i in 0..len {
            let link = (next + i, next + (i + 1) % len);
            if i % 2 == 0 {
                init.push(link);
            } else if len == 2 {
                fin.push((next, next + 1));
            } else {
                fin.push(link);
            }
        }
        next += len;
    }
    TildeTransition::new(TildeState::from_pairs(n, &init), TildeState::from_pairs(n, &fin))
}

#[derive(Clone, Debug)]
pub struct TildeGraph {
    pub n: usize,
    pub states: Vec<TildeState>,
    pub adjacency: Vec<Vec<usize>>,
    index: BTreeMap<TildeState, usize>,
}

impl TildeGraph {
    pub fn new(n: usize) -> Self {
        let states = all_tilde_states(n);
        let index: BTreeMap<TildeState, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let adjacency = states
            .iter()
            .map(|s| {
                let mut adj: Vec<usize> = s.neighbours().iter().map(|t| index[t]).collect();
                adj.sort_unstable();
                adj
            })
            .collect();
        TildeGraph { n, states, adjacency, index }
    }

    pub fn index_of(&self, s: &TildeState) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

pub type TildeCounts = BTreeMap<TildeType, Rational>;

/// Walk counts grouped by type of `(s₀, s_m)`, divided by `n!`.
pub fn tilde_hurwitz_upto(graph: &TildeGraph, max_m: usize) -> Vec<TildeCounts> {
    let n = graph.len();
    let norm = BigInt::from(factorial(graph.n as u32));
    let types: Vec<Vec<TildeType>> = graph
        .states
        .iter()
        .map(|a| graph.states.iter().map(|b| tilde_classify(&TildeTransition::new(a.clone(), b.clone()))).collect())
        .collect();
    let mut out = Vec::with_capacity(max_m + 1);
    for (s0, row_types) in types.iter().enumerate() {
        let mut walks = alloc::vec![BigUint::zero(); n];
        walks[s0] = BigUint::one();
        for m in 0..=max_m {
            if out.len() <= m {
                out.push(BTreeMap::<TildeType, BigUint>::new());
            }
            for (s, c) in walks.iter().enumerate() {
                if !c.is_zero() {
                    *out[m].entry(row_types[s].clone()).or_default() += c;
                }
            }
            if m < max_m {
                let mut next = alloc::vec![BigUint::zero(); n];
                for (s, c) in walks.iter().enumerate() {
                    if !c.is_zero() {
                        for &t in &graph.adjacency[s] {
                            next[t] += c;
                        }
                    }
                }
                walks = next;
            }
        }
    }
    out.into_iter()
        .map(|counts| counts.into_iter().map(|(mu, c)| (mu, Rational::new(BigInt::from(c), norm.clone()))).collect())
        .collect()
}

pub fn tilde_hurwitz(n: usize, m: usize) -> TildeCounts {
    tilde_hurwitz_upto(&TildeGraph::new(n), m).pop().expect("m+1 entries")
}

/// Disconnected tilde series from walk counts for all `n ≤ max_n`.
pub fn tilde_disconnected_series(max_n: u32, max_m: usize) -> USeries<TildeType> {
    let mut coeffs = alloc::vec![TildePoly::zero(); max_m + 1];
    for n in 0..=max_n {
        for (m, counts) in tilde_hurwitz_upto(&TildeGraph::new(n as usize), max_m).into_iter().enumerate() {
            for (mu, c) in counts {
                coeffs[m].add_term(mu, c);
            }
        }
    }
    USeries::new(coeffs, false, max_n)
}

pub fn tilde_connected_series(max_n: u32, max_m: usize) -> Result<USeries<TildeType>> {
    tilde_disconnected_series(max_n, max_m).log(max_m, max_n)
}

/// `Σ_{a+2b=n} p₁^a q₁^b / (a! b! 2^b)`: the trivial transitions on `n`
/// elements, counted and divided by `n!`.
pub fn tilde_initial_state(n: u32) -> TildePoly {
    let mut out = TildePoly::zero();
    for b in 0..=n / 2 {
        let a = n - 2 * b;
        let mu = TildeType {
            kappa_odd: Partition::repeated(1, a as usize),
            lambda: Partition::repeated(1, b as usize),
            ..TildeType::empty()
        };
        let den = factorial(a) * factorial(b) * (BigUint::one() << b);
        out.add_term(mu, Rational::new(BigInt::one(), BigInt::from(den)));
    }
    out
}

/// Operator on the degree-`n` tilde types, column `j` = image of `basis[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeBlock {
    pub n: u32,
    pub basis: Vec<TildeType>,
    pub matrix: Matrix,
}

impl TildeBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: &TildeType, col: &TildeType) -> Option<&Rational> {
        let i = self.basis.binary_search(row).ok()?;
        let j = self.basis.binary_search(col).ok()?;
        Some(&self.matrix[(i, j)])
    }

    pub fn apply(&self, p: &TildePoly) -> Option<TildePoly> {
        let coords = crate::poly::coordinates(p, &self.basis)?;
        Some(from_coordinates(&self.matrix.mul_vec(&coords), &self.basis))
    }
}

/// Multiplication by the sum of transpositions in the basis `C_μ/|C_μ|`.
pub fn tilde_operator_matrix(graph: &TildeGraph) -> TildeBlock {
    let n = graph.n as u32;
    let basis = enumerate_tilde_types(n);
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for (j, nu) in basis.iter().enumerate() {
        let rep = tilde_representative(nu);
        let idx = graph.index_of(&rep.initial).expect("state in graph");
        for &s in &graph.adjacency[idx] {
            let mu = tilde_classify(&TildeTransition::new(graph.states[s].clone(), rep.terminal.clone()));
            let i = basis.binary_search(&mu).expect("degree is preserved");
            matrix[(i, j)] += Rational::one();
        }
    }
    TildeBlock { n, basis, matrix }
}

/// `M^m v₀` for `m = 0..=max_m`.
pub fn tilde_evolve(block: &TildeBlock, max_m: usize) -> Vec<TildePoly> {
    let mut v = tilde_initial_state(block.n);
    let mut out = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        out.push(v.clone());
        if m < max_m {
            v = block.apply(&v).expect("initial state lies in the block");
        }
    }
    out
}

fn int(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// The transcribed published operator applied to one monomial, at `ħ = 1`.
/// Odd-order variables printed with a sign are read as unsigned.
pub fn transcribed_operator_monomial(mu: &TildeType) -> TildePoly {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let vars = mu.vars();
    let mut out = TildePoly::zero();
    // first-order terms
    for &(v, c) in &vars {
        let rest = mu.without(v).expect("variable occurs");
        let c = c as u64;
        match v {
            TildeVar::Even(Sign::Minus, k) => {
                // p_{2i−1} p_{2j−1} ∂/∂p⁻_{2i+2j−2}
                for i in 1..=k / 2 {
                    let j = k / 2 + 1 - i;
                    out.add_term(rest.with(TildeVar::Odd(2 * i - 1)).with(TildeVar::Odd(2 * j - 1)), int(c));
                }
            }
            TildeVar::Odd(k) => {
                // p_{2i−1} p⁺_{2j} ∂/∂p_{2i+2j−1}
                for i in 1..=k.div_ceil(2) {
                    let j = k.div_ceil(2) - i;
                    if j >= 1 {
                        out.add_term(rest.with(TildeVar::Odd(2 * i - 1)).with(TildeVar::Even(Sign::Plus, 2 * j)), int(c));
                    }
                }
            }
            TildeVar::Even(Sign::Plus, k) => {
                // p⁺_{2i} p⁺_{2j} ∂/∂p⁺_{2i+2j} and q_i ∂/∂p⁺_{2i}
                for i in 1..k / 2 {
                    let j = k / 2 - i;
                    out.add_term(
                        rest.with(TildeVar::Even(Sign::Plus, 2 * i)).with(TildeVar::Even(Sign::Plus, 2 * j)),
                        int(c),
                    );
                }
                out.add_term(rest.with(TildeVar::Q(k / 2)), int(c));
            }
            TildeVar::Q(i) => {
                out.add_term(rest.with(TildeVar::Even(Sign::Plus, 2 * i)), int(c * u64::from(i)));
            }
        }
    }
    // second-order terms over ordered pairs of variables
    for &(x, cx) in &vars {
        for &(y, cy) in &vars {
            let (weight, image) = match (x, y) {
                (TildeVar::Odd(a), TildeVar::Even(Sign::Plus, b)) => (int(2), TildeVar::Odd(a + b)),
                (TildeVar::Odd(a), TildeVar::Odd(b)) => (half.clone(), TildeVar::Even(Sign::Minus, a + b)),
                (TildeVar::Even(Sign::Plus, a), TildeVar::Even(Sign::Plus, b)) => (int(2), TildeVar::Even(Sign::Plus, a + b)),
                _ => continue,
            };
            let (mult, rest) = if x == y {
                if cx < 2 {
                    continue;
                }
                (cx * (cx - 1), mu.without(x).and_then(|r| r.without(x)))
            } else {
                (cx * cy, mu.without(x).and_then(|r| r.without(y)))
            };
            out.add_term(rest.expect("variables occur").with(image), weight * int(mult as u64));
        }
    }
    out
}

/// The transcribed operator on the degree-`n` block.
pub fn transcribed_operator_matrix(n: u32) -> TildeBlock {
    let basis = enumerate_tilde_types(n);
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for (j, mu) in basis.iter().enumerate() {
        for (image, c) in transcribed_operator_monomial(mu).iter() {
            let i = basis.binary_search(image).expect("degree is preserved");
            matrix[(i, j)] = c.clone();
        }
    }
    TildeBlock { n, basis, matrix }
}

/// One matrix entry where the two operators differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: TildeType,
    pub column: TildeType,
    pub oracle: Rational,
    pub transcribed: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorComparison {
    pub n: u32,
    pub entries: usize,
    pub agreeing: usize,
    pub diffs: Vec<EntryDiff>,
}

impl OperatorComparison {
    pub fn agrees(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn compare_operators(oracle: &TildeBlock, transcribed: &TildeBlock) -> OperatorComparison {
    assert_eq!(oracle.basis, transcribed.basis, "blocks over different bases");
    let d = oracle.dim();
    let mut diffs = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (&oracle.matrix[(i, j)], &transcribed.matrix[(i, j)]);
            if a != b {
                diffs.push(EntryDiff {
                    row: oracle.basis[i].clone(),
                    column: oracle.basis[j].clone(),
                    oracle: a.clone(),
                    transcribed: b.clone(),
                });
            }
        }
    }
    OperatorComparison { n: oracle.n, entries: d * d, agreeing: d * d - diffs.len(), diffs }
}

/// `|C_μ|` for all tilde types on `n` elements.
pub fn tilde_class_sizes(n: usize) -> BTreeMap<TildeType, u64> {
    let states = all_tilde_states(n);
    let mut out = BTreeMap::new();
    for a in &states {
        for b in &states {
            *out.entry(tilde_classify(&TildeTransition::new(a.clone(), b.clone()))).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn tt(kp: &[u32], km: &[u32], k: &[u32], l: &[u32]) -> TildeType {
        TildeType::from_parts(kp, km, k, l)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn transposition_types() {
        let empty = TildeState::empty(2);
        let pair = TildeState::from_pairs(2, &[(0, 1)]);
        let t = TildeTransition::new(empty.clone(), pair.clone());
        assert_eq!(tilde_classify(&t), tt(&[2], &[], &[], &[]));
        assert_eq!(tilde_classify(&t.inverse()), tt(&[], &[2], &[], &[]));
        assert_eq!(tilde_classify(&TildeTransition::new(pair.clone(), pair)), tt(&[], &[], &[], &[1]));
        assert_eq!(tilde_classify(&TildeTransition::new(empty.clone(), empty)), tt(&[], &[], &[1, 1], &[]));
    }

    #[test]
    fn representatives_classify_back() {
        for n in 0..=7 {
            for mu in enumerate_tilde_types(n) {
                assert_eq!(tilde_classify(&tilde_representative(&mu)), mu);
            }
        }
    }

    #[test]
    fn class_sizes_match_zeta() {
        for n in 0..=6usize {
            let sizes = tilde_class_sizes(n);
            for mu in enumerate_tilde_types(n as u32) {
                assert_eq!(BigUint::from(sizes[&mu]) * mu.zeta(), factorial(n as u32), "{mu}");
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(tilde_hurwitz(1, 0), [(tt(&[], &[], &[1], &[]), r(1, 1))].into_iter().collect());
        let b1 = tilde_operator_matrix(&TildeGraph::new(1));
        assert!(b1.matrix.is_zero());
    }

    #[test]
    fn evolution_matches_walks() {
        for n in 0..=4u32 {
            let graph = TildeGraph::new(n as usize);
            let walks = tilde_hurwitz_upto(&graph, 5);
            let evolved = tilde_evolve(&tilde_operator_matrix(&graph), 5);
            for (m, (w, e)) in walks.iter().zip(&evolved).enumerate() {
                let w: TildePoly = w.clone().into_iter().collect();
                assert_eq!(&w, e, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn text_form() {
        let mu = tt(&[4, 2], &[2], &[3, 1], &[1]);
        assert_eq!(mu.to_string(), "k+:[4,2] k-:[2] k:[3,1] l:[1]");
        assert_eq!(mu.to_string().parse::<TildeType>().unwrap(), mu);
        assert!("k+:[3] k-:[] k:[] l:[]".parse::<TildeType>().is_err());
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(tt(&[], &[], &[3], &[]).euler_characteristic(6), -2);
    }
}
