//! Brute-force transition model: states are partial matchings between `N⁺`
//! and `N⁻`, transitions are ordered pairs of states, and transpositions add
//! or remove a single pair.
//!
//! Everything the evolution computes can be recomputed here by walking the
//! state graph, which makes this module the reference for the operators.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::cutjoin::BlockMatrix;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::partition::{factorial, Partition};
use crate::types::{enumerate_types, Bidegree, RamificationType, Sign};
use crate::Rational;

/// Sizes of `N⁺` and `N⁻`; elements are `0..n_plus` and `0..n_minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl GroundSet {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        GroundSet { n_plus, n_minus }
    }

    pub fn of_bidegree(b: Bidegree) -> Self {
        GroundSet::new(b.n_plus as usize, b.n_minus as usize)
    }

    pub fn bidegree(self) -> Bidegree {
        Bidegree::new(self.n_plus as u32, self.n_minus as u32)
    }

    /// `Σ_k C(n⁺,k) C(n⁻,k) k!`.
    pub fn state_count(self) -> usize {
        let (a, b) = (self.n_plus as u32, self.n_minus as u32);
        let mut total = BigUint::zero();
        for k in 0..=a.min(b) {
            total += factorial(a) * factorial(b) / (factorial(a - k) * factorial(b - k) * factorial(k));
        }
        total.to_usize().expect("state count fits")
    }
}

/// A partial matching. `plus[i]` is the partner of `+i`, `minus[j]` of `−j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    plus: Vec<Option<usize>>,
    minus: Vec<Option<usize>>,
}

impl State {
    pub fn empty(g: GroundSet) -> Self {
        State { plus: alloc::vec![None; g.n_plus], minus: alloc::vec![None; g.n_minus] }
    }

    /// Builds a state from `(plus, minus)` pairs; panics on a repeated element.
    pub fn from_pairs(g: GroundSet, pairs: &[(usize, usize)]) -> Self {
        let mut s = State::empty(g);
        for &(a, b) in pairs {
            assert!(s.plus[a].is_none() && s.minus[b].is_none(), "element matched twice");
            s.plus[a] = Some(b);
            s.minus[b] = Some(a);
        }
        s
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet::new(self.plus.len(), self.minus.len())
    }

    /// Pairs sorted by their positive element.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.plus.iter().enumerate().filter_map(|(a, b)| b.map(|b| (a, b))).collect()
    }

    pub fn plus_partner(&self, a: usize) -> Option<usize> {
        self.plus[a]
    }

    pub fn minus_partner(&self, b: usize) -> Option<usize> {
        self.minus[b]
    }

    fn toggled(&self, a: usize, b: usize) -> State {
        let mut s = self.clone();
        if s.plus[a] == Some(b) {
            s.plus[a] = None;
            s.minus[b] = None;
        } else {
            s.plus[a] = Some(b);
            s.minus[b] = Some(a);
        }
        s
    }

    /// States reachable by one transposition: one pair removed or added.
    pub fn neighbours(&self) -> Vec<State> {
        let mut out = Vec::new();
        for (a, pa) in self.plus.iter().enumerate() {
            match pa {
                Some(b) => out.push(self.toggled(a, *b)),
                None => {
                    for (b, pb) in self.minus.iter().enumerate() {
                        if pb.is_none() {
                            out.push(self.toggled(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Image under relabellings `σ⁺ ∈ S(n⁺)`, `σ⁻ ∈ S(n⁻)`.
    pub fn relabel(&self, sigma_plus: &[usize], sigma_minus: &[usize]) -> State {
        let pairs: Vec<_> = self.pairs().into_iter().map(|(a, b)| (sigma_plus[a], sigma_minus[b])).collect();
        State::from_pairs(self.ground_set(), &pairs)
    }
}

/// All states on `g`, sorted.
pub fn all_states(g: GroundSet) -> Vec<State> {
    fn go(i: usize, s: &mut State, out: &mut Vec<State>) {
        if i == s.plus.len() {
            out.push(s.clone());
            return;
        }
        go(i + 1, s, out);
        for b in 0..s.minus.len() {
            if s.minus[b].is_none() {
                s.plus[i] = Some(b);
                s.minus[b] = Some(i);
                go(i + 1, s, out);
                s.plus[i] = None;
                s.minus[b] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut State::empty(g), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub initial: State,
    pub terminal: State,
}

impl Transition {
    pub fn new(initial: State, terminal: State) -> Self {
        assert_eq!(initial.ground_set(), terminal.ground_set(), "states over different ground sets");
        Transition { initial, terminal }
    }

    pub fn trivial(s: State) -> Self {
        Transition { initial: s.clone(), terminal: s }
    }

    pub fn ground_set(&self) -> GroundSet {
        self.initial.ground_set()
    }

    pub fn is_trivial(&self) -> bool {
        self.initial == self.terminal
    }

    pub fn relabel(&self, sigma_plus: &[usize], sigma_minus: &[usize]) -> Self {
        Transition {
            initial: self.initial.relabel(sigma_plus, sigma_minus),
            terminal: self.terminal.relabel(sigma_plus, sigma_minus),
        }
    }
}

/// Swaps initial and terminal states.
pub fn invert(t: &Transition) -> Transition {
    Transition { initial: t.terminal.clone(), terminal: t.initial.clone() }
}

/// `a` followed by `b`; defined when `a` ends where `b` starts.
pub fn compose(a: &Transition, b: &Transition) -> Option<Transition> {
    (a.terminal == b.initial).then(|| Transition { initial: a.initial.clone(), terminal: b.terminal.clone() })
}

/// One component of the union of the two matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Alternating cycle on `2ℓ` elements.
    Cycle { half_length: u32 },
    /// Open chain on `len` elements with the signs of its two ends and
    /// whether the first/last link belongs to the initial state.
    Chain { len: u32, start: Sign, end: Sign, starts_initial: Option<bool>, ends_initial: Option<bool> },
}

// vertices: 0..n⁺ positive, n⁺..n⁺+n⁻ negative
fn partners(s: &State, n_plus: usize) -> Vec<Option<usize>> {
    let mut out: Vec<Option<usize>> = s.plus.iter().map(|p| p.map(|b| n_plus + b)).collect();
    out.extend(s.minus.iter().copied());
    out
}

/// Decomposes `t` into alternating chains and cycles.
pub fn components(t: &Transition) -> Vec<Component> {
    let np = t.initial.plus.len();
    let init = partners(&t.initial, np);
    let fin = partners(&t.terminal, np);
    let n = init.len();
    let sign = |v: usize| if v < np { Sign::Plus } else { Sign::Minus };
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();

    for v in 0..n {
        if seen[v] || (init[v].is_some() && fin[v].is_some()) {
            continue;
        }
        // v is an end; walk along alternating links
        let first_initial = if init[v].is_some() { Some(true) } else if fin[v].is_some() { Some(false) } else { None };
        let mut len = 1;
        let mut cur = v;
        let mut use_initial = first_initial;
        let mut last_initial = None;
        seen[v] = true;
        while let Some(ui) = use_initial {
            let next = if ui { init[cur] } else { fin[cur] };
            let Some(next) = next else { break };
            last_initial = Some(ui);
            cur = next;
            seen[cur] = true;
            len += 1;
            use_initial = Some(!ui);
        }
        out.push(Component::Chain {
            len,
            start: sign(v),
            end: sign(cur),
            starts_initial: first_initial,
            ends_initial: last_initial,
        });
    }
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let mut len = 0;
        let mut cur = v;
        let mut ui = true;
        loop {
            seen[cur] = true;
            len += 1;
            cur = if ui { init[cur] } else { fin[cur] }.expect("cycle vertices are matched twice");
            ui = !ui;
            if cur == v {
                break;
            }
        }
        out.push(Component::Cycle { half_length: len / 2 });
    }
    out
}

/// Ramification type of a transition.
///
/// Cycles on `2ℓ` elements give a part `ℓ` of `λ`. An open chain on `k`
/// elements gives a part `k` of `κ^±`: for odd `k` the sign of its ends, for
/// even `k` positive iff both ends are unmatched in the initial state.
pub fn classify(t: &Transition) -> RamificationType {
    let (mut kp, mut km, mut l) = (Vec::new(), Vec::new(), Vec::new());
    for c in components(t) {
        match c {
            Component::Cycle { half_length } => l.push(half_length),
            Component::Chain { len, start, end, starts_initial, .. } => {
                let sign = if len % 2 == 1 {
                    assert_eq!(start, end, "odd chain with ends of different signs");
                    start
                } else if starts_initial == Some(false) {
                    // both ends carry only a terminal link
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                match sign {
                    Sign::Plus => kp.push(len),
                    Sign::Minus => km.push(len),
                }
            }
        }
    }
    let p = |v: Vec<u32>| Partition::new(v).expect("positive parts");
    RamificationType::new(p(kp), p(km), p(l))
}

/// A transition of type `mu`.
pub fn representative(mu: &RamificationType) -> Transition {
    let g = GroundSet::of_bidegree(mu.bidegree());
    let (mut next_plus, mut next_minus) = (0usize, 0usize);
    let (mut init, mut fin) = (Vec::new(), Vec::new());
    let mut take = |s: Sign| match s {
        Sign::Plus => {
            next_plus += 1;
            (Sign::Plus, next_plus - 1)
        }
        Sign::Minus => {
            next_minus += 1;
            (Sign::Minus, next_minus - 1)
        }
    };
    let mut pair = |x: (Sign, usize), y: (Sign, usize), initial: bool| {
        let p = if x.0 == Sign::Plus { (x.1, y.1) } else { (y.1, x.1) };
        if initial {
            init.push(p)
        } else {
            fin.push(p)
        }
    };

    let mut chains: Vec<(u32, Sign)> = Vec::new();
    chains.extend(mu.kappa_plus.parts().iter().map(|&k| (k, Sign::Plus)));
    chains.extend(mu.kappa_minus.parts().iter().map(|&k| (k, Sign::Minus)));
    for (k, sign) in chains {
        // even positive chains start and end with terminal links, even
        // negative ones with initial links; odd chains start on their sign
        let first_initial = k % 2 == 1 || sign == Sign::Minus;
        let mut prev = take(if k % 2 == 1 { sign } else { Sign::Plus });
        let mut initial = first_initial;
        for _ in 1..k {
            let cur = take(prev.0.flip());
            pair(prev, cur, initial);
            prev = cur;
            initial = !initial;
        }
    }
    for &l in mu.lambda.parts() {
        let l = l as usize;
        let plus: Vec<_> = (0..l).map(|_| take(Sign::Plus)).collect();
        let minus: Vec<_> = (0..l).map(|_| take(Sign::Minus)).collect();
        for i in 0..l {
            pair(plus[i], minus[i], true);
            pair(plus[(i + 1) % l], minus[i], false);
        }
    }
    Transition::new(State::from_pairs(g, &init), State::from_pairs(g, &fin))
}

/// The transposition graph on the states of one ground set.
#[derive(Clone, Debug)]
pub struct StateGraph {
    pub ground: GroundSet,
    pub states: Vec<State>,
    pub adjacency: Vec<Vec<usize>>,
    index: BTreeMap<State, usize>,
}

impl StateGraph {
    pub fn new(ground: GroundSet) -> Self {
        let states = all_states(ground);
        let index: BTreeMap<State, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let adjacency = states
            .iter()
            .map(|s| {
                let mut adj: Vec<usize> = s.neighbours().iter().map(|t| index[t]).collect();
                adj.sort_unstable();
                adj
            })
            .collect();
        StateGraph { ground, states, adjacency, index }
    }

    pub fn index_of(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of transpositions (directed edges).
    pub fn transposition_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// `walks[m][s0][s]`: number of length-`m` walks from `s0` to `s`.
    fn walk_counts(&self, max_m: usize) -> Vec<Vec<Vec<BigUint>>> {
        let n = self.len();
        let mut cur: Vec<Vec<BigUint>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 1u32.into() } else { BigUint::zero() }).collect()).collect();
        let mut out = Vec::with_capacity(max_m + 1);
        for _ in 0..max_m {
            let next = cur
                .iter()
                .map(|row| {
                    let mut nr = alloc::vec![BigUint::zero(); n];
                    for (s, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            for &t in &self.adjacency[s] {
                                nr[t] += c;
                            }
                        }
                    }
                    nr
                })
                .collect();
            out.push(core::mem::replace(&mut cur, next));
        }
        out.push(cur);
        out
    }
}

pub type TypeCounts = BTreeMap<RamificationType, Rational>;

/// Walk counts `s₀ → … → s_m`, grouped by the type of `(s₀, s_m)` and
/// divided by `n⁺! n⁻!`, for every `m ≤ max_m`.
pub fn hurwitz_by_paths_upto(graph: &StateGraph, max_m: usize) -> Vec<TypeCounts> {
    let g = graph.ground;
    let norm = BigInt::from(factorial(g.n_plus as u32) * factorial(g.n_minus as u32));
    let n = graph.len();
    let mut types = alloc::vec![alloc::vec![RamificationType::empty(); n]; n];
    for (i, a) in graph.states.iter().enumerate() {
        for (j, b) in graph.states.iter().enumerate() {
            types[i][j] = classify(&Transition::new(a.clone(), b.clone()));
        }
    }
    graph
        .walk_counts(max_m)
        .into_iter()
        .map(|walks| {
            let mut counts: BTreeMap<RamificationType, BigUint> = BTreeMap::new();
            for (i, row) in walks.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        *counts.entry(types[i][j].clone()).or_default() += c;
                    }
                }
            }
            counts.into_iter().map(|(mu, c)| (mu, Rational::new(BigInt::from(c), norm.clone()))).collect()
        })
        .collect()
}

pub fn hurwitz_by_paths(g: GroundSet, m: usize) -> TypeCounts {
    hurwitz_by_paths_upto(&StateGraph::new(g), m).pop().expect("m+1 entries")
}

/// Which side the transposition is composed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Matrix of multiplication by `C₂` in the basis `C_μ/|C_μ|`.
///
/// Entry `(μ, ν)` counts transpositions `τ` with `τ·b` (left) or `b·τ`
/// (right) of type `μ`, for a fixed representative `b` of type `ν`.
pub fn mult_c2_matrix_with(graph: &StateGraph, side: Side) -> Result<BlockMatrix> {
    let b = graph.ground.bidegree();
    let basis = enumerate_types(b);
    let n = basis.len();
    let mut matrix = Matrix::zeros(n, n);
    for (j, nu) in basis.iter().enumerate() {
        let rep = representative(nu);
        let (pivot, fixed) = match side {
            Side::Left => (&rep.initial, &rep.terminal),
            Side::Right => (&rep.terminal, &rep.initial),
        };
        let idx = graph.index_of(pivot).expect("state in graph");
        for &s in &graph.adjacency[idx] {
            let s = graph.states[s].clone();
            let t = match side {
                Side::Left => Transition::new(s, fixed.clone()),
                Side::Right => Transition::new(fixed.clone(), s),
            };
            let mu = classify(&t);
            let i = basis
                .binary_search(&mu)
                .map_err(|_| crate::Error::BlockLeak { bidegree: b, image: mu.clone() })?;
            matrix[(i, j)] += Rational::from_integer(1.into());
        }
    }
    Ok(BlockMatrix { bidegree: b, basis, matrix })
}

pub fn mult_c2_matrix(b: Bidegree) -> Result<BlockMatrix> {
    mult_c2_matrix_with(&StateGraph::new(GroundSet::of_bidegree(b)), Side::Left)
}

pub fn mult_c2_right_matrix(b: Bidegree) -> Result<BlockMatrix> {
    mult_c2_matrix_with(&StateGraph::new(GroundSet::of_bidegree(b)), Side::Right)
}

/// `|C_μ|` for every type on `g`, by classifying all transitions.
pub fn class_sizes(g: GroundSet) -> BTreeMap<RamificationType, u64> {
    let states = all_states(g);
    let mut out = BTreeMap::new();
    for a in &states {
        for b in &states {
            *out.entry(classify(&Transition::new(a.clone(), b.clone()))).or_insert(0) += 1;
        }
    }
    out
}

pub fn class_size(mu: &RamificationType) -> u64 {
    class_sizes(GroundSet::of_bidegree(mu.bidegree())).get(mu).copied().unwrap_or(0)
}

/// Order of the stabilizer of a representative in `S(n⁺) × S(n⁻)`,
/// by trying every relabelling.
pub fn stabilizer_order(mu: &RamificationType) -> u64 {
    let t = representative(mu);
    let g = t.ground_set();
    let mut count = 0;
    for sp in (0..g.n_plus).permutations(g.n_plus) {
        for sm in (0..g.n_minus).permutations(g.n_minus) {
            if t.relabel(&sp, &sm) == t {
                count += 1;
            }
        }
    }
    count
}
