//! Reverse set-valued tableaux, their left keys, the codec to diagram pairs,
//! and the membership tests for the tableau families attached to a weak
//! composition — both by the left-key definition and by the column-peeling
//! recursion.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compositions::{
    dominating_subset, key_tableau, max_below_supported, subset_leq, KeyTableau, WeakComposition,
};
use crate::diagrams::{Cell, Diagram, DiagramPair};

/// A reverse set-valued tableau: every box holds a non-empty set, rows
/// weakly decrease (the minimum of a box is at least the maximum of the box
/// to its right) and columns strictly decrease. Boxes are stored descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRsvt", into = "RawRsvt")]
pub struct Rsvt {
    rows: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct RawRsvt {
    shape: Vec<usize>,
    boxes: Vec<Vec<Vec<usize>>>,
}

impl From<Rsvt> for RawRsvt {
    fn from(t: Rsvt) -> Self {
        RawRsvt {
            shape: t.shape(),
            boxes: t.rows,
        }
    }
}

impl TryFrom<RawRsvt> for Rsvt {
    type Error = TableauError;

    fn try_from(raw: RawRsvt) -> Result<Self, Self::Error> {
        let t = Rsvt::new(raw.boxes)?;
        if t.shape() != raw.shape {
            return Err(TableauError(
                "declared shape does not match the boxes".into(),
            ));
        }
        Ok(t)
    }
}

/// A structurally invalid tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauError(pub String);

impl fmt::Display for TableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid tableau: {}", self.0)
    }
}

impl std::error::Error for TableauError {}

impl Rsvt {
    /// Validates and normalizes a row-major list of boxes (each a set of
    /// positive integers, any order).
    pub fn new(rows: Vec<Vec<Vec<usize>>>) -> Result<Self, TableauError> {
        let mut rows = rows;
        for row in &mut rows {
            for b in row.iter_mut() {
                b.sort_unstable_by(|a, b| b.cmp(a));
                if b.is_empty() {
                    return Err(TableauError("empty box".into()));
                }
                if b.contains(&0) {
                    return Err(TableauError("entries must be positive".into()));
                }
                if b.windows(2).any(|w| w[0] == w[1]) {
                    return Err(TableauError("repeated entry inside a box".into()));
                }
            }
        }
        let t = Rsvt { rows };
        t.check()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        Rsvt { rows: Vec::new() }
    }

    fn check(&self) -> Result<(), TableauError> {
        let shape: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if shape.contains(&0) {
            return Err(TableauError("empty row".into()));
        }
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError("row lengths must weakly decrease".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if j + 1 < row.len() {
                    let right = &row[j + 1];
                    if b.last().unwrap() < right.first().unwrap() {
                        return Err(TableauError(format!(
                            "row {} fails weak decrease at box {}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
                if i + 1 < self.rows.len() && j < self.rows[i + 1].len() {
                    let below = &self.rows[i + 1][j];
                    if b.last().unwrap() <= below.first().unwrap() {
                        return Err(TableauError(format!(
                            "column {} fails strict decrease at row {}",
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Row lengths, top row first.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn box_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// One box holds one value everywhere.
    pub fn is_single_valued(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|b| b.len() == 1))
    }

    pub fn max_entry(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .filter_map(|b| b.first().copied())
            .max()
            .unwrap_or(0)
    }

    /// Occurrence counts of each value `1..=n`.
    pub fn weight(&self, n: usize) -> WeakComposition {
        let mut entries = vec![0; n];
        for b in self.rows.iter().flat_map(|r| r.iter()) {
            for &v in b {
                assert!(v <= n, "tableau entry {v} exceeds ambient rank {n}");
                entries[v - 1] += 1;
            }
        }
        WeakComposition::new(entries)
    }

    /// Number of entries beyond one per box.
    pub fn excess(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|b| b.len() - 1)
            .sum()
    }

    /// Keep only the largest value of each box.
    pub fn leading_tableau(&self) -> Rsvt {
        Rsvt {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|b| vec![b[0]]).collect())
                .collect(),
        }
    }

    /// Column `c` (1-based) as a list of boxes, top to bottom.
    fn column(&self, c: usize) -> Vec<&Vec<usize>> {
        self.rows.iter().filter_map(|r| r.get(c - 1)).collect()
    }

    fn column_count(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// The largest value of each box in column `c`.
    pub fn leading_column_set(&self, c: usize) -> BTreeSet<usize> {
        self.column(c).into_iter().map(|b| b[0]).collect()
    }

    /// View a key tableau as a single-valued tableau.
    pub fn from_key(key: &KeyTableau) -> Rsvt {
        let shape = key.shape();
        let rows = shape
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| vec![key.columns()[j][i]]).collect())
            .collect();
        Rsvt { rows }
    }
}

impl fmt::Display for Rsvt {
    /// English convention, one row per line. A box prints as a digit string
    /// when every entry is at most 9 and comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "(empty)");
        }
        let compact = self.max_entry() <= 9;
        let render = |b: &Vec<usize>| -> String {
            if compact {
                b.iter().map(|v| v.to_string()).collect()
            } else {
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        let widths: Vec<usize> = (0..self.column_count())
            .map(|j| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(j))
                    .map(|b| render(b).len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, b)| format!("{:<width$}", render(b), width = widths[j]))
                .collect();
            writeln!(f, "{}", fields.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// The diagram-pair image of a tableau: a leading cell `(c, r)` for each
/// column `c` in which `r` is the largest value of some box, and an extra
/// cell for every remaining value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableauPair", into = "RawTableauPair")]
pub struct TableauPair {
    leading: Diagram,
    extras: Diagram,
}

#[derive(Serialize, Deserialize)]
struct RawTableauPair {
    leading: Vec<Cell>,
    extras: Vec<Cell>,
}

impl From<TableauPair> for RawTableauPair {
    fn from(t: TableauPair) -> Self {
        RawTableauPair {
            leading: t.leading.cells().iter().copied().collect(),
            extras: t.extras.cells().iter().copied().collect(),
        }
    }
}

impl TryFrom<RawTableauPair> for TableauPair {
    type Error = String;

    fn try_from(raw: RawTableauPair) -> Result<Self, Self::Error> {
        let leading = Diagram::from_cells(raw.leading);
        let extras = Diagram::from_cells(raw.extras);
        if !leading.cells().is_disjoint(extras.cells()) {
            return Err("leading and extra cells overlap".into());
        }
        Ok(TableauPair { leading, extras })
    }
}

impl TableauPair {
    pub fn new(leading: Diagram, extras: Diagram) -> Self {
        assert!(
            leading.cells().is_disjoint(extras.cells()),
            "leading and extra cells must be disjoint"
        );
        TableauPair { leading, extras }
    }

    pub fn empty() -> Self {
        TableauPair::default()
    }

    pub fn leading(&self) -> &Diagram {
        &self.leading
    }

    pub fn extras(&self) -> &Diagram {
        &self.extras
    }

    pub fn is_empty(&self) -> bool {
        self.leading.is_empty() && self.extras.is_empty()
    }

    /// The same cells as a diagram pair (leading cells as Kohnert cells).
    pub fn as_diagram_pair(&self) -> DiagramPair {
        DiagramPair::new(self.leading.clone(), self.extras.clone())
    }

    pub fn from_diagram_pair(d: &DiagramPair) -> Self {
        TableauPair {
            leading: d.kohnert().clone(),
            extras: d.ghosts().clone(),
        }
    }

    pub fn weight(&self, n: usize) -> WeakComposition {
        self.as_diagram_pair().weight(n)
    }

    pub fn excess(&self) -> usize {
        self.extras.len()
    }

    pub fn split_first_column(&self) -> (BTreeSet<usize>, BTreeSet<usize>, TableauPair) {
        let (l1, e1, rest) = self.as_diagram_pair().split_first_column();
        (l1, e1, TableauPair::from_diagram_pair(&rest))
    }
}

/// Encode a tableau as its leading/extra diagram pair.
pub fn encode(t: &Rsvt) -> TableauPair {
    let mut leading = Diagram::new();
    let mut extras = Diagram::new();
    for c in 1..=t.column_count() {
        for b in t.column(c) {
            leading.insert(Cell::at(c, b[0]));
            for &v in &b[1..] {
                extras.insert(Cell::at(c, v));
            }
        }
    }
    TableauPair::new(leading, extras)
}

/// Decode a diagram pair back into a tableau. The leading cells of each
/// column become boxes; every extra value joins the lowest box of its column
/// whose largest value exceeds it. Fails when the pair is not the image of
/// any valid tableau.
pub fn decode(p: &TableauPair) -> Result<Rsvt, TableauError> {
    let max_col = p.leading.max_col().max(p.extras.max_col());
    let mut columns: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in 1..=max_col {
        let leads: Vec<usize> = {
            let mut rows = p.leading.rows_in_col(c);
            rows.reverse(); // descending: top box first
            rows
        };
        let mut boxes: Vec<Vec<usize>> = leads.iter().map(|&v| vec![v]).collect();
        for v in p.extras.rows_in_col(c).into_iter().rev() {
            // lowest box whose largest value is larger than v
            let slot = boxes.iter().rposition(|b| b[0] > v).ok_or_else(|| {
                TableauError(format!("extra value {v} in column {c} has no box above it"))
            })?;
            boxes[slot].push(v);
        }
        columns.push(boxes);
    }
    if columns.windows(2).any(|w| w[0].len() < w[1].len()) {
        return Err(TableauError("column sizes must weakly decrease".into()));
    }
    let depth = columns.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<Vec<usize>>> = vec![Vec::new(); depth];
    for col in columns {
        for (i, b) in col.into_iter().enumerate() {
            rows[i].push(b);
        }
    }
    let t = Rsvt::new(rows)?;
    debug_assert_eq!(&encode(&t), p);
    Ok(t)
}

/// The left key: fold the greedy column match over the leading tableau, so
/// that column `k` of the result is `C_1 ◁ (C_2 ◁ … ◁ C_k)`.
pub fn left_key(t: &Rsvt) -> KeyTableau {
    let lead = t.leading_tableau();
    let columns: Vec<BTreeSet<usize>> = (1..=lead.column_count())
        .map(|c| lead.leading_column_set(c))
        .collect();
    let mut out = Vec::new();
    for k in 1..=columns.len() {
        let mut acc = columns[k - 1].clone();
        for j in (0..k - 1).rev() {
            acc = dominating_subset(&columns[j], &acc)
                .expect("greedy column match must succeed on a valid tableau");
        }
        let mut col: Vec<usize> = acc.into_iter().collect();
        col.reverse();
        out.push(col);
    }
    let key = KeyTableau::from_columns(out);
    debug_assert!(key.is_nested(), "left key must be a key tableau");
    key
}

/// Membership by the defining condition: the shape is the sorted partition
/// of `alpha` and the left key is entry-wise at most `key(alpha)`.
pub fn in_rsvt_set(t: &Rsvt, alpha: &WeakComposition) -> bool {
    t.shape() == alpha.sorted_parts() && left_key(t).leq_entrywise(&key_tableau(alpha))
}

/// Single-valued membership.
pub fn in_rssyt_set(t: &Rsvt, alpha: &WeakComposition) -> bool {
    t.is_single_valued() && in_rsvt_set(t, alpha)
}

fn rows_within(d: &Diagram, n: usize) -> bool {
    d.cells().iter().all(|c| c.row <= n)
}

/// Recursive membership test for tableau pairs: peel column 1 as
/// `(L_1, E_1, t)` and check
/// 1. the cells live in `[1, n]` (disjointness is structural),
/// 2. `L_1 ≤ supp(alpha)` in the subset order,
/// 3. every extra row `e` satisfies
///    `|(e, n] ∩ L_1| > |(e, n] ∩ L_1')|` where `L_1'` is the set of leading
///    rows in column 1 of `t`,
/// 4. `t` belongs recursively to the family of `bar(M(alpha, L_1))`.
pub fn in_rsvt_set_recursive(p: &TableauPair, alpha: &WeakComposition) -> bool {
    let n = alpha.len();
    if !rows_within(&p.leading, n) || !rows_within(&p.extras, n) {
        return false;
    }
    if p.is_empty() {
        return alpha.is_zero();
    }
    let (l1, e1, t) = p.split_first_column();
    if !subset_leq(&l1, &alpha.support()) {
        return false;
    }
    let l1_inner: BTreeSet<usize> = t.leading().rows_in_col(1).into_iter().collect();
    for &e in &e1 {
        let outer = l1.iter().filter(|&&r| r > e).count();
        let inner = l1_inner.iter().filter(|&&r| r > e).count();
        if outer <= inner {
            return false;
        }
    }
    let next = max_below_supported(alpha, &l1)
        .expect("subset order guarantees the restriction exists")
        .decrement_positives();
    in_rsvt_set_recursive(&t, &next)
}

/// Recursive membership test for K-Kohnert diagram pairs: peel column 1 as
/// `(K_1, G_1, d)` and check
/// 1. the cells live in `[1, n]`,
/// 2. `K_1 ≤ supp(alpha)`,
/// 3. every ghost row `g` satisfies
///    `|[g, n] ∩ supp(alpha)| > |[g, n] ∩ K_1|`,
/// 4. `d` belongs recursively to the family of `bar(M(alpha, K_1))`.
pub fn in_kkd_set_recursive(d: &DiagramPair, alpha: &WeakComposition) -> bool {
    let n = alpha.len();
    if !rows_within(d.kohnert(), n) || !rows_within(d.ghosts(), n) {
        return false;
    }
    if d.is_empty() {
        return alpha.is_zero();
    }
    let (k1, g1, rest) = d.split_first_column();
    let supp = alpha.support();
    if !subset_leq(&k1, &supp) {
        return false;
    }
    for &g in &g1 {
        let in_supp = supp.iter().filter(|&&r| r >= g).count();
        let in_k1 = k1.iter().filter(|&&r| r >= g).count();
        if in_supp <= in_k1 {
            return false;
        }
    }
    let next = max_below_supported(alpha, &k1)
        .expect("subset order guarantees the restriction exists")
        .decrement_positives();
    in_kkd_set_recursive(&rest, &next)
}

/// Every tableau in the family of `alpha`, optionally truncated by excess.
/// Entries never exceed `n`, so the unbounded enumeration is finite.
pub fn enumerate_rsvt(alpha: &WeakComposition, max_excess: Option<usize>) -> Vec<Rsvt> {
    let shape = alpha.sorted_parts();
    let n = alpha.len();
    let mut out = Vec::new();
    if shape.is_empty() {
        let t = Rsvt::empty();
        if in_rsvt_set(&t, alpha) {
            out.push(t);
        }
        return out;
    }
    let mut rows: Vec<Vec<Vec<usize>>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
    let frame = FillFrame { shape: &shape, n, max_excess };
    frame.fill(0, 0, 0, &mut rows, &mut |rows| {
        let t = Rsvt {
            rows: rows.to_vec(),
        };
        debug_assert!(t.check().is_ok());
        if in_rsvt_set(&t, alpha) {
            out.push(t);
        }
    });
    out.sort();
    out
}

/// Single-valued members of the family of `alpha`.
pub fn enumerate_rssyt(alpha: &WeakComposition) -> Vec<Rsvt> {
    enumerate_rsvt(alpha, Some(0))
}

/// Shared bounds for the box-by-box backtracking enumeration.
struct FillFrame<'a> {
    shape: &'a [usize],
    n: usize,
    max_excess: Option<usize>,
}

impl FillFrame<'_> {
    fn fill(
        &self,
        i: usize,
        j: usize,
        used_excess: usize,
        rows: &mut Vec<Vec<Vec<usize>>>,
        emit: &mut impl FnMut(&[Vec<Vec<usize>>]),
    ) {
        if i == self.shape.len() {
            emit(rows);
            return;
        }
        if j == self.shape[i] {
            self.fill(i + 1, 0, used_excess, rows, emit);
            return;
        }
        let mut ub = self.n;
        if j > 0 {
            // weak decrease along the row: max of this box ≤ min of the left box
            ub = ub.min(*rows[i][j - 1].last().unwrap());
        }
        if i > 0 {
            // strict decrease down the column
            ub = ub.min(rows[i - 1][j].last().unwrap() - 1);
        }
        if ub == 0 {
            return;
        }
        let budget = self.max_excess.map(|m| m - used_excess);
        for max in 1..=ub {
            // every subset of [1, max-1] may join the box under the max
            for mask in 0..(1usize << (max - 1)) {
                let extra = mask.count_ones() as usize;
                if let Some(b) = budget {
                    if extra > b {
                        continue;
                    }
                }
                let mut boxed = vec![max];
                for v in (1..max).rev() {
                    if mask & (1 << (v - 1)) != 0 {
                        boxed.push(v);
                    }
                }
                rows[i].push(boxed);
                self.fill(i, j + 1, used_excess + extra, rows, emit);
                rows[i].pop();
            }
        }
    }
}
