//! Weak compositions, key tableaux, the Bruhat and left swap orders, and the
//! greedy algorithms for the extremal compositions `min_above_supported` /
//! `max_below_supported`.

use std::collections::{BTreeSet, BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A sequence of `n` non-negative integers. The length is the ambient rank
/// `n` shared by every object indexed by the composition; trailing zeros are
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition {
    entries: Vec<usize>,
}

impl WeakComposition {
    pub fn new(entries: Vec<usize>) -> Self {
        WeakComposition { entries }
    }

    pub fn zero(n: usize) -> Self {
        WeakComposition {
            entries: vec![0; n],
        }
    }

    /// The indicator composition of a subset of `[1, n]`.
    pub fn indicator(set: &BTreeSet<usize>, n: usize) -> Self {
        let mut entries = vec![0; n];
        for &i in set {
            assert!(1 <= i && i <= n, "indicator index {i} outside [1, {n}]");
            entries[i - 1] = 1;
        }
        WeakComposition { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parts(&self) -> &[usize] {
        &self.entries
    }

    /// The `i`-th part, 1-based. Zero for `i` beyond the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-based");
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// Total size `|Σ parts|`.
    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn max_part(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Indices of the positive parts, 1-based.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The partition obtained by sorting the parts decreasingly and dropping
    /// trailing zeros.
    pub fn sorted_parts(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.entries.iter().copied().filter(|&e| e > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Decrement every positive part by one, leaving zeros untouched.
    pub fn decrement_positives(&self) -> Self {
        WeakComposition {
            entries: self.entries.iter().map(|&e| e.saturating_sub(1)).collect(),
        }
    }

    /// Pointwise sum; both sides must have the same length.
    pub fn add(&self, other: &WeakComposition) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "length mismatch in composition sum"
        );
        WeakComposition {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Extend with trailing zeros to length `n` (no-op if already longer).
    pub fn padded(&self, n: usize) -> Self {
        let mut entries = self.entries.clone();
        while entries.len() < n {
            entries.push(0);
        }
        WeakComposition { entries }
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parse error for the comma-separated composition form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseCompositionError(pub String);

impl fmt::Display for ParseCompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid composition: {}", self.0)
    }
}

impl std::error::Error for ParseCompositionError {}

impl FromStr for WeakComposition {
    type Err = ParseCompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let v: usize = piece
                .parse()
                .map_err(|_| ParseCompositionError(format!("bad part {piece:?} in {s:?}")))?;
            entries.push(v);
        }
        Ok(WeakComposition { entries })
    }
}

/// The key tableau of a weak composition: column `j` holds `{i : α_i ≥ j}`.
/// Columns are stored as strictly decreasing sequences, top row first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeyTableau {
    columns: Vec<Vec<usize>>,
}

impl KeyTableau {
    pub(crate) fn from_columns(columns: Vec<Vec<usize>>) -> Self {
        for col in &columns {
            debug_assert!(col.windows(2).all(|w| w[0] > w[1]), "column not decreasing");
        }
        KeyTableau { columns }
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn column_sets(&self) -> Vec<BTreeSet<usize>> {
        self.columns
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect()
    }

    /// Row lengths of the underlying Young diagram, longest first.
    pub fn shape(&self) -> Vec<usize> {
        let depth = self.columns.first().map_or(0, |c| c.len());
        (1..=depth)
            .map(|r| self.columns.iter().filter(|c| c.len() >= r).count())
            .collect()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// The weak composition counting occurrences of each value `1..=n`.
    pub fn weight(&self, n: usize) -> WeakComposition {
        let mut entries = vec![0; n];
        for col in &self.columns {
            for &v in col {
                assert!(1 <= v && v <= n, "key tableau entry {v} outside [1, {n}]");
                entries[v - 1] += 1;
            }
        }
        WeakComposition::new(entries)
    }

    /// Entry-wise comparison; false when the shapes differ.
    pub fn leq_entrywise(&self, other: &KeyTableau) -> bool {
        if self.columns.len() != other.columns.len() {
            return false;
        }
        self.columns
            .iter()
            .zip(&other.columns)
            .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y))
    }

    /// Columns must be nested downward for a key tableau: `col j+1 ⊆ col j`.
    pub fn is_nested(&self) -> bool {
        self.columns.windows(2).all(|w| {
            let left: BTreeSet<usize> = w[0].iter().copied().collect();
            w[1].iter().all(|v| left.contains(v))
        })
    }
}

/// Build the key tableau of `alpha`: column `j` is `{i : α_i ≥ j}` sorted
/// decreasingly.
pub fn key_tableau(alpha: &WeakComposition) -> KeyTableau {
    let mut columns = Vec::new();
    for j in 1..=alpha.max_part() {
        let mut col: Vec<usize> = (1..=alpha.len()).filter(|&i| alpha.part(i) >= j).collect();
        col.sort_unstable_by(|a, b| b.cmp(a));
        columns.push(col);
    }
    KeyTableau::from_columns(columns)
}

/// Bruhat order: `gamma ≤ alpha` iff the key tableaux share a shape and
/// `key(gamma) ≤ key(alpha)` entry-wise. Compositions of different lengths
/// are padded with trailing zeros before comparing.
pub fn bruhat_leq(gamma: &WeakComposition, alpha: &WeakComposition) -> bool {
    let n = gamma.len().max(alpha.len());
    key_tableau(&gamma.padded(n)).leq_entrywise(&key_tableau(&alpha.padded(n)))
}

/// Subset order on row sets: `s ≤ s_prime` iff the sizes agree and the j-th
/// largest member of `s` is at most the j-th largest member of `s_prime`.
pub fn subset_leq(s: &BTreeSet<usize>, s_prime: &BTreeSet<usize>) -> bool {
    s.len() == s_prime.len()
        && s.iter()
            .rev()
            .zip(s_prime.iter().rev())
            .all(|(a, b)| a <= b)
}

/// A left swap exchanges two parts `α_i < α_j` with `i < j`; the result is
/// smaller. `gamma ⪯ alpha` iff `gamma` is reachable from `alpha` by left
/// swaps. Computed by breadth-first closure of the swap relation.
pub fn left_swap_leq(gamma: &WeakComposition, alpha: &WeakComposition) -> bool {
    let n = gamma.len().max(alpha.len());
    let gamma = gamma.padded(n);
    let alpha = alpha.padded(n);
    if gamma == alpha {
        return true;
    }
    let mut seen: HashSet<WeakComposition> = HashSet::new();
    let mut queue: VecDeque<WeakComposition> = VecDeque::new();
    seen.insert(alpha.clone());
    queue.push_back(alpha);
    while let Some(cur) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                if cur.entries[i] < cur.entries[j] {
                    let mut next = cur.clone();
                    next.entries.swap(i, j);
                    if next == gamma {
                        return true;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    false
}

/// The unique minimum of `{γ : γ ≥ α, supp(γ) ⊆ s}`, or `None` when that set
/// is empty. Runs the adding/removing sweep with `i` from 1 to `n`.
pub fn min_above_supported(
    alpha: &WeakComposition,
    s: &BTreeSet<usize>,
) -> Option<WeakComposition> {
    let n = alpha.len();
    debug_assert!(s.iter().all(|&i| 1 <= i && i <= n));
    let mut list: BinaryHeap<usize> = BinaryHeap::new();
    let mut sigma = vec![0; n];
    for i in 1..=n {
        if alpha.part(i) > 0 {
            list.push(alpha.part(i));
        }
        if s.contains(&i) {
            if let Some(v) = list.pop() {
                sigma[i - 1] = v;
            }
        }
    }
    if list.is_empty() {
        Some(WeakComposition::new(sigma))
    } else {
        None
    }
}

/// The unique maximum of `{γ : γ ≤ α, supp(γ) ⊆ s}`, or `None` when empty.
/// Same sweep as `min_above_supported` with `i` running from `n` down to 1.
pub fn max_below_supported(
    alpha: &WeakComposition,
    s: &BTreeSet<usize>,
) -> Option<WeakComposition> {
    let n = alpha.len();
    debug_assert!(s.iter().all(|&i| 1 <= i && i <= n));
    let mut list: BinaryHeap<usize> = BinaryHeap::new();
    let mut sigma = vec![0; n];
    for i in (1..=n).rev() {
        if alpha.part(i) > 0 {
            list.push(alpha.part(i));
        }
        if s.contains(&i) {
            if let Some(v) = list.pop() {
                sigma[i - 1] = v;
            }
        }
    }
    if list.is_empty() {
        Some(WeakComposition::new(sigma))
    } else {
        None
    }
}

/// Greedy column matching: with `c2 = {a_1 < … < a_m}`, pick `b_1` as the
/// smallest member of `c1` with `b_1 ≥ a_1`, then `b_i` as the smallest
/// member of `c1` with `b_i ≥ a_i` and `b_i > b_{i-1}`. `None` when some
/// pick fails, which signals invalid input columns.
pub fn dominating_subset(c1: &BTreeSet<usize>, c2: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    let mut picked = BTreeSet::new();
    let mut floor = 0usize; // all later picks must exceed this
    for &a in c2 {
        let b = c1.iter().copied().find(|&b| b >= a && b > floor)?;
        picked.insert(b);
        floor = b;
    }
    Some(picked)
}

/// All weak compositions of length `n` with every part at most `max_part`,
/// in lexicographic order. Sweep helper for verification.
pub fn all_compositions(n: usize, max_part: usize) -> Vec<WeakComposition> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(WeakComposition::new(cur.clone()));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max_part {
                cur[i] += 1;
                for e in cur.iter_mut().skip(i + 1) {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// All subsets of `[1, n]`.
pub fn all_subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (0..(1usize << n))
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}
