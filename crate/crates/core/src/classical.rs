//! Classical strategies for the exclusion game.
//!
//! A deterministic Bob who must always answer correctly effectively commits,
//! after reading Alice's message, to one answer `z_y` per subset `y`. Each
//! answer rules out the `2^{n−m}` strings `x` with `M_y(x) = z_y`. The fewer
//! strings the whole answer set rules out, the less the message reveals. The
//! minimum is reached by consistent sets `z_y = M_y(a)`, which leave exactly
//! `γ_m` strings open. [`brute_force_min_exclusion`] checks that claim
//! exhaustively on small instances.
//!
//! Strings are indexed as integers with position 1 as the most significant
//! bit, so position `i` of an `n`-bit string is integer bit `n − i`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds;
use crate::pbr::{restrict, BitString, SubsetY};
use crate::qcore::{conditional_entropy, JointDistribution};
use crate::{Error, Result};

/// Largest `n` for which excluded-string sets are enumerated.
pub const MAX_EXCLUSION_N: usize = 20;

/// Largest `n` for which a covering strategy is built.
pub const MAX_COVER_N: usize = 16;

/// Maximum number of answer sets the exhaustive oracle may enumerate.
pub const ORACLE_BUDGET: u64 = 10_000_000;

/// Bob's answers, one per size-`m` subset, in lexicographic subset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSet {
    n: usize,
    m: usize,
    subsets: Vec<SubsetY>,
    answers: Vec<BitString>,
}

impl AnswerSet {
    /// `answers[k]` is the answer for the `k`-th subset of
    /// [`SubsetY::all(n, m)`](SubsetY::all).
    pub fn new(n: usize, m: usize, answers: Vec<BitString>) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m <= n, got n={n}, m={m}"
            )));
        }
        let subsets = SubsetY::all(n, m);
        if answers.len() != subsets.len() {
            return Err(Error::InvalidParameter(format!(
                "{} answers for {} subsets",
                answers.len(),
                subsets.len()
            )));
        }
        if let Some(z) = answers.iter().find(|z| z.len() != m) {
            return Err(Error::InvalidParameter(format!(
                "answer {z} is not {m} bits long"
            )));
        }
        Ok(AnswerSet {
            n,
            m,
            subsets,
            answers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SubsetY, &BitString)> {
        self.subsets.iter().zip(&self.answers)
    }

    pub fn answer(&self, y: &SubsetY) -> Option<&BitString> {
        self.subsets.binary_search(y).ok().map(|k| &self.answers[k])
    }

    /// `Some(a)` for the lexicographically smallest `a` with
    /// `answer(y) = M_y(a)` for every `y`, or `None` if the answers
    /// contradict each other.
    pub fn consistent_source(&self) -> Option<BitString> {
        let mut bits: Vec<Option<u8>> = vec![None; self.n];
        for (y, z) in self.iter() {
            for (&i, &b) in y.indices().iter().zip(z.bits()) {
                match bits[i - 1] {
                    Some(prev) if prev != b => return None,
                    _ => bits[i - 1] = Some(b),
                }
            }
        }
        BitString::new(bits.into_iter().map(|b| b.unwrap_or(0)).collect()).ok()
    }
}

impl Serialize for AnswerSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            y: &'a SubsetY,
            z: &'a BitString,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            n: usize,
            m: usize,
            answers: Vec<Entry<'a>>,
        }
        Doc {
            n: self.n,
            m: self.m,
            answers: self.iter().map(|(y, z)| Entry { y, z }).collect(),
        }
        .serialize(serializer)
    }
}

/// A set of `n`-bit strings stored as a bitmask over `2^n` indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct StringMask {
    words: Vec<u64>,
}

impl StringMask {
    fn empty(n: usize) -> Self {
        StringMask {
            words: vec![0; (1usize << n).div_ceil(64)],
        }
    }

    fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    fn union_with(&mut self, other: &StringMask) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn copy_from(&mut self, other: &StringMask) {
        self.words.copy_from_slice(&other.words);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

fn subset_mask(n: usize, y: &SubsetY) -> usize {
    y.indices().iter().map(|&i| 1usize << (n - i)).sum()
}

/// Places the `m` bits of `z` at the positions of `y`.
fn scatter(n: usize, y: &SubsetY, z: &BitString) -> usize {
    y.indices()
        .iter()
        .zip(z.bits())
        .map(|(&i, &b)| usize::from(b) << (n - i))
        .sum()
}

/// All `x` with `M_y(x) = z`.
fn excluded_by(n: usize, y: &SubsetY, z: &BitString) -> StringMask {
    let mut mask = StringMask::empty(n);
    let free = ((1usize << n) - 1) & !subset_mask(n, y);
    let base = scatter(n, y, z);
    let mut s = free;
    loop {
        mask.insert(base | s);
        if s == 0 {
            break;
        }
        s = (s - 1) & free;
    }
    mask
}

fn check_exclusion_cap(n: usize) -> Result<()> {
    if n > MAX_EXCLUSION_N {
        return Err(Error::ResourceCap {
            what: "string length for exclusion enumeration",
            requested: n,
            cap: MAX_EXCLUSION_N,
        });
    }
    Ok(())
}

/// `|{x : ∃y, M_y(x) = answer(y)}|`.
pub fn excluded_count(a_set: &AnswerSet) -> Result<u64> {
    check_exclusion_cap(a_set.n)?;
    let mut union = StringMask::empty(a_set.n);
    for (y, z) in a_set.iter() {
        union.union_with(&excluded_by(a_set.n, y, z));
    }
    Ok(union.count())
}

/// The answer set `z_y = M_y(a)` for every size-`m` subset `y`.
pub fn consistent_answer_set(a: &BitString, m: usize) -> Result<AnswerSet> {
    let n = a.len();
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got n={n}, m={m}"
        )));
    }
    let subsets = SubsetY::all(n, m);
    let answers = subsets
        .iter()
        .map(|y| restrict(a, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnswerSet {
        n,
        m,
        subsets,
        answers,
    })
}

/// Result of the exhaustive minimal-exclusion search.
#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub m: usize,
    /// Smallest number of strings any answer set excludes.
    pub min_count: u64,
    /// `2^n − γ_m`.
    pub expected: u64,
    /// Number of answer sets covered by the search, `(2^m)^{C(n,m)}`.
    pub answer_sets: u64,
    /// The first minimizer in lexicographic order of answer tuples.
    pub witness: AnswerSet,
}

impl OracleResult {
    pub fn matches_expected(&self) -> bool {
        self.min_count == self.expected
    }
}

/// `log₂` of the number of distinct answer sets, `m·C(n, m)`, or `None` if
/// it does not fit in a `u64`.
pub fn answer_set_count_log2(n: usize, m: usize) -> Option<u64> {
    let mut c: u64 = 1;
    for i in 0..m.min(n - m) {
        c = c.checked_mul((n - i) as u64)? / (i as u64 + 1);
    }
    c.checked_mul(m as u64)
}

/// Exhaustive minimum of [`excluded_count`] over every answer set.
///
/// The search is a depth-first walk over subsets in lexicographic order,
/// choosing each answer in increasing order, with branches cut once their
/// partial union already reaches the best count. Unions only grow, so the
/// cut never discards a strictly better set, and the walk still finds the
/// first minimizer in lexicographic order. The top level is split across
/// rayon workers by the first subset's answer.
pub fn brute_force_min_exclusion(n: usize, m: usize) -> Result<OracleResult> {
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got n={n}, m={m}"
        )));
    }
    let size = match answer_set_count_log2(n, m) {
        Some(bits) if bits < 64 && 1u64 << bits <= ORACLE_BUDGET => 1u64 << bits,
        Some(bits) => {
            return Err(Error::BudgetExceeded {
                size: format!("2^{bits}"),
                budget: ORACLE_BUDGET,
            })
        }
        None => {
            return Err(Error::BudgetExceeded {
                size: format!("2^({m}·C({n},{m}))"),
                budget: ORACLE_BUDGET,
            })
        }
    };
    check_exclusion_cap(n)?;
    let subsets = SubsetY::all(n, m);
    let answers_per_subset = 1u64 << m;
    let masks: Vec<Vec<StringMask>> = subsets
        .iter()
        .map(|y| {
            (0..answers_per_subset)
                .map(|z| excluded_by(n, y, &BitString::from_index(z, m)))
                .collect()
        })
        .collect();

    let best = (0..answers_per_subset as usize)
        .into_par_iter()
        .map(|z0| {
            let mut search = Search::new(n, &masks);
            search.choice[0] = z0;
            search.levels[0].copy_from(&masks[0][z0]);
            search.descend(1);
            (search.best, search.best_choice)
        })
        .reduce_with(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one answer per subset");

    let witness = AnswerSet::new(
        n,
        m,
        best.1
            .iter()
            .map(|&z| BitString::from_index(z as u64, m))
            .collect(),
    )?;
    let gamma = bounds::gamma(n, m)?.to_u64().expect("n <= 20");
    Ok(OracleResult {
        n,
        m,
        min_count: best.0,
        expected: (1u64 << n) - gamma,
        answer_sets: size,
        witness,
    })
}

struct Search<'a> {
    masks: &'a [Vec<StringMask>],
    levels: Vec<StringMask>,
    choice: Vec<usize>,
    best: u64,
    best_choice: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(n: usize, masks: &'a [Vec<StringMask>]) -> Self {
        Search {
            masks,
            levels: vec![StringMask::empty(n); masks.len()],
            choice: vec![0; masks.len()],
            best: u64::MAX,
            best_choice: Vec::new(),
        }
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.masks.len() {
            let count = self.levels[depth - 1].count();
            if count < self.best {
                self.best = count;
                self.best_choice = self.choice.clone();
            }
            return;
        }
        for z in 0..self.masks[depth].len() {
            let (done, rest) = self.levels.split_at_mut(depth);
            rest[0].copy_from(&done[depth - 1]);
            rest[0].union_with(&self.masks[depth][z]);
            if rest[0].count() >= self.best {
                continue;
            }
            self.choice[depth] = z;
            self.descend(depth + 1);
        }
    }
}

/// Whether sending `a` lets Bob answer `M_y(a)` correctly for every `y`:
/// `a` and `x` may agree on at most `m − 1` positions.
pub fn is_valid_message(a: &BitString, x: &BitString, m: usize) -> bool {
    assert_eq!(a.len(), x.len(), "message and input lengths differ");
    a.hamming_distance(x) + m > a.len()
}

/// A deterministic zero-error one-way protocol: Alice sends
/// `messages[assignment[x]]`, Bob answers `M_y(message)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverStrategy {
    n: usize,
    m: usize,
    messages: Vec<BitString>,
    /// Indexed by the integer encoding of `x`.
    assignment: Vec<u32>,
}

impl CoverStrategy {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn messages(&self) -> &[BitString] {
        &self.messages
    }

    pub fn message_index(&self, x: &BitString) -> usize {
        self.assignment[x.to_index() as usize] as usize
    }

    pub fn message_for(&self, x: &BitString) -> &BitString {
        &self.messages[self.message_index(x)]
    }

    /// Checks totality and that every assigned message is valid for its `x`.
    pub fn validate(&self) -> Result<()> {
        if self.assignment.len() != 1 << self.n {
            return Err(Error::InvalidParameter("assignment is not total".into()));
        }
        for (xi, &k) in self.assignment.iter().enumerate() {
            let x = BitString::from_index(xi as u64, self.n);
            let a = self
                .messages
                .get(k as usize)
                .ok_or_else(|| Error::InvalidParameter(format!("x = {x} has no message")))?;
            if !is_valid_message(a, &x, self.m) {
                return Err(Error::InvalidParameter(format!(
                    "message {a} is not valid for x = {x}"
                )));
            }
        }
        Ok(())
    }
}

/// Greedy set cover of `{0,1}^n` by the sets `{x : is_valid_message(a, x)}`,
/// repeatedly taking the `a` that covers the most uncovered strings (ties to
/// the smallest `a`). Each `x` is assigned the first message that covers it.
pub fn build_cover_strategy(n: usize, m: usize) -> Result<CoverStrategy> {
    if n > MAX_COVER_N {
        return Err(Error::ResourceCap {
            what: "string length for cover construction",
            requested: n,
            cap: MAX_COVER_N,
        });
    }
    if m < 1 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m <= n, got n={n}, m={m}"
        )));
    }
    let size = 1usize << n;
    let threshold = n - m + 1;
    // a covers x iff popcount(a ^ x) >= threshold
    let offsets: Vec<usize> = (0..size)
        .filter(|e| e.count_ones() as usize >= threshold)
        .collect();

    let mut uncovered = vec![true; size];
    let mut remaining = size;
    let mut assignment = vec![u32::MAX; size];
    let mut messages = Vec::new();
    // lazy greedy: stale gains only overestimate
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        (0..size).map(|a| (offsets.len(), Reverse(a))).collect();

    while remaining > 0 {
        let (stale, Reverse(a)) = heap.pop().expect("the complement always covers");
        let gain = offsets.iter().filter(|&&e| uncovered[a ^ e]).count();
        if gain < stale {
            heap.push((gain, Reverse(a)));
            continue;
        }
        let k = messages.len() as u32;
        for &e in &offsets {
            let x = a ^ e;
            if uncovered[x] {
                uncovered[x] = false;
                assignment[x] = k;
                remaining -= 1;
            }
        }
        messages.push(BitString::from_index(a as u64, n));
    }

    let strategy = CoverStrategy {
        n,
        m,
        messages,
        assignment,
    };
    debug_assert!(strategy.validate().is_ok());
    Ok(strategy)
}

/// `n − H(X|M)` for `X` uniform on `{0,1}^n` and `M` the assigned message.
pub fn exact_information_cost(strategy: &CoverStrategy) -> Result<f64> {
    strategy.validate()?;
    let w = 1.0 / (1u64 << strategy.n) as f64;
    let joint = JointDistribution::new(
        strategy
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &k)| ((x as u64, u64::from(k)), w)),
    )?;
    Ok(strategy.n as f64 - conditional_entropy(&joint))
}

/// Number of inputs assigned to message `k`.
pub fn message_class_size(strategy: &CoverStrategy, k: usize) -> usize {
    strategy
        .assignment
        .iter()
        .filter(|&&a| a as usize == k)
        .count()
}
