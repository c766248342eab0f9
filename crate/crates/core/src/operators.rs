//! The raise ("sharp") and drop ("flat") operators on Kohnert diagrams:
//! single column-1 steps returning a partner row, and their batched forms
//! driven by a diagram of targets, in both the direct sweep and the
//! column-peeling recursion.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::compositions::{max_below_supported, WeakComposition};
use crate::diagrams::{Cell, Diagram, DiagramPair};
use crate::labeling::{label, KohnertTableau};

/// One elementary move of a batched operator, for step-by-step traces.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    /// `"sharp"` for a raise, `"flat"` for a drop.
    pub op: &'static str,
    /// The target cell `[col, row]`; column-1 steps are the single-row
    /// operators.
    pub g_or_k: (usize, usize),
    /// Source row of the moved cell.
    pub partner: usize,
    pub before: DiagramPair,
    pub after: DiagramPair,
}

/// Output of a single raise or drop step: the moved diagram together with
/// the partner row (the vacated row for a raise, the chosen source row for a
/// drop).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpResult {
    pub diagram: DiagramPair,
    pub partner: usize,
}

fn column_rows(d: &DiagramPair, col: usize) -> BTreeSet<usize> {
    d.kohnert().rows_in_col(col).into_iter().collect()
}

/// Swap one column-1 Kohnert row for another, keeping ghosts untouched.
fn with_col1_swapped(d: &DiagramPair, out: usize, into: usize) -> DiagramPair {
    let mut kohnert = d.kohnert().clone();
    kohnert.remove(Cell::at(1, out));
    kohnert.insert(Cell::at(1, into));
    DiagramPair::new(kohnert, d.ghosts().clone())
}

fn ghost_free_col1(d: &DiagramPair) -> bool {
    d.ghosts().rows_in_col(1).is_empty()
}

/// Whether the raise into row `g` is defined on `d`:
/// `|[g, n] ∩ supp(alpha)| > |(g, n] ∩ K_1|`.
pub fn sharp_defined(d: &DiagramPair, g: usize, alpha: &WeakComposition) -> bool {
    let k1 = column_rows(d, 1);
    let in_supp = alpha.support().iter().filter(|&&i| i >= g).count();
    let above = k1.iter().filter(|&&r| r > g).count();
    in_supp > above
}

/// Whether the drop into row `k` is defined on `d`: either `k` already holds
/// a column-1 cell, or `|K_1 ∩ (k, n]| > |K_2 ∩ (k, n]|`.
pub fn flat_defined(d: &DiagramPair, k: usize) -> bool {
    let k1 = column_rows(d, 1);
    if k1.contains(&k) {
        return true;
    }
    let k2 = column_rows(d, 2);
    let col1_above = k1.iter().filter(|&&r| r > k).count();
    let col2_above = k2.iter().filter(|&&r| r > k).count();
    col1_above > col2_above
}

/// Raise into row `g` by the five-step routine: label the diagram, locate the
/// highest column-1 entry weakly below row `g` whose value is at least `g`,
/// move that cell up to row `g`, and restore the labeling by repeatedly
/// swapping the moved value with the smallest value above it that now lacks a
/// witness in column 2. Returns the moved diagram, the vacated row, and the
/// repaired labeling.
///
/// The Kohnert cells of `d` must form a Kohnert diagram of `alpha`; ghost
/// cells may ride along anywhere outside column 1.
pub fn sharp_with_filling(
    d: &DiagramPair,
    g: usize,
    alpha: &WeakComposition,
) -> Option<(OpResult, KohnertTableau)> {
    assert!(
        ghost_free_col1(d),
        "raise steps require a ghost-free column 1"
    );
    assert!(1 <= g && g <= alpha.len(), "target row out of range");
    if !sharp_defined(d, g, alpha) {
        return None;
    }
    let labeled = label(&d.kohnert_part(), alpha)
        .expect("operand must be a Kohnert diagram of the composition");
    let (k, m) = (1..=g)
        .rev()
        .filter_map(|r| labeled.value_at(Cell::at(1, r)).map(|v| (r, v)))
        .find(|&(_, v)| v >= g)
        .expect("the counting condition guarantees a pivot");
    let moved = with_col1_swapped(d, k, g);

    let mut filling: BTreeMap<Cell, usize> = labeled.filling().clone();
    filling.remove(&Cell::at(1, k));
    filling.insert(Cell::at(1, g), m);
    let mut row_of_m = g;
    loop {
        // a value u < m above the moved cell violates the witness condition
        // when column 2 has no u strictly above the moved cell
        let col2_rows: BTreeMap<usize, usize> = filling
            .iter()
            .filter(|(c, _)| c.col == 2)
            .map(|(c, &v)| (v, c.row))
            .collect();
        let candidate = filling
            .iter()
            .filter(|(c, &v)| c.col == 1 && c.row > row_of_m && v < m)
            .filter(|(_, &v)| col2_rows.get(&v).is_none_or(|&r2| r2 <= row_of_m))
            .map(|(c, &v)| (v, c.row))
            .min();
        match candidate {
            None => break,
            Some((u, r_u)) => {
                filling.insert(Cell::at(1, r_u), m);
                filling.insert(Cell::at(1, row_of_m), u);
                row_of_m = r_u;
            }
        }
    }
    debug_assert!(
        row_of_m <= m,
        "the moved value never climbs above its own row"
    );
    let repaired = KohnertTableau::from_parts(filling, alpha.clone());
    debug_assert!(repaired.is_valid());
    debug_assert_eq!(
        label(&moved.kohnert_part(), alpha).as_ref(),
        Some(&repaired)
    );
    Some((
        OpResult {
            diagram: moved,
            partner: k,
        },
        repaired,
    ))
}

/// Raise into row `g`; production path via `sharp_with_filling`.
pub fn sharp(d: &DiagramPair, g: usize, alpha: &WeakComposition) -> Option<OpResult> {
    sharp_with_filling(d, g, alpha).map(|(res, _)| res)
}

/// Raise into row `g` by the defining search: the largest column-1 row
/// `k ≤ g` whose cell can move to row `g` with the diagram staying a Kohnert
/// diagram. Test oracle for `sharp`.
pub fn sharp_definitional(d: &DiagramPair, g: usize, alpha: &WeakComposition) -> Option<OpResult> {
    assert!(
        ghost_free_col1(d),
        "raise steps require a ghost-free column 1"
    );
    let k1 = column_rows(d, 1);
    for &k in k1.iter().rev() {
        if k > g {
            continue;
        }
        let candidate = with_col1_swapped(d, k, g);
        if label(&candidate.kohnert_part(), alpha).is_some() {
            return Some(OpResult {
                diagram: candidate,
                partner: k,
            });
        }
    }
    None
}

/// Drop into row `k` by the defining search: the smallest column-1 row
/// `g ≥ k` whose cell can move down to row `k` with the diagram staying a
/// Kohnert diagram.
pub fn flat(d: &DiagramPair, k: usize, alpha: &WeakComposition) -> Option<OpResult> {
    assert!(
        ghost_free_col1(d),
        "drop steps require a ghost-free column 1"
    );
    assert!(1 <= k && k <= alpha.len(), "target row out of range");
    if !flat_defined(d, k) {
        return None;
    }
    let k1 = column_rows(d, 1);
    for &g in k1.range(k..) {
        let candidate = with_col1_swapped(d, g, k);
        if label(&candidate.kohnert_part(), alpha).is_some() {
            return Some(OpResult {
                diagram: candidate,
                partner: g,
            });
        }
    }
    unreachable!("the counting condition guarantees a landing row")
}

fn batch_step(
    cur: &DiagramPair,
    target: Cell,
    alpha: &WeakComposition,
    raising: bool,
) -> Option<(DiagramPair, usize)> {
    let mut sources = cur.kohnert().rows_in_col(target.col);
    if raising {
        sources.retain(|&r| r <= target.row);
        sources.reverse();
    } else {
        sources.retain(|&r| r >= target.row);
    }
    for &r in &sources {
        let mut kohnert = cur.kohnert().clone();
        kohnert.remove(Cell::at(target.col, r));
        kohnert.insert(target);
        let candidate = DiagramPair::new(kohnert, Diagram::new());
        if label(&candidate, alpha).is_some() {
            return Some((candidate, r));
        }
    }
    None
}

fn batch_run(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
    raising: bool,
) -> Option<(DiagramPair, Vec<TraceStep>)> {
    assert!(
        d.ghosts().is_empty(),
        "batch operators act on ghost-free diagrams"
    );
    let mut cells: Vec<Cell> = targets.cells().iter().copied().collect();
    if raising {
        // right to left, bottom to top within each column
        cells.sort_by(|a, b| b.col.cmp(&a.col).then(a.row.cmp(&b.row)));
    } else {
        // left to right, top to bottom within each column
        cells.sort_by(|a, b| a.col.cmp(&b.col).then(b.row.cmp(&a.row)));
    }
    let mut cur = d.clone();
    let mut steps = Vec::new();
    for target in cells {
        let (next, partner) = batch_step(&cur, target, alpha, raising)?;
        steps.push(TraceStep {
            op: if raising { "sharp" } else { "flat" },
            g_or_k: (target.col, target.row),
            partner,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
    Some((cur, steps))
}

/// Batched raise over all cells of `targets`, visited right to left and
/// bottom to top within each column. For each target the highest movable
/// cell weakly below it in the same column is raised; `None` when some step
/// has no movable cell. The operand must be ghost-free.
pub fn sharp_batch(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<DiagramPair> {
    batch_run(d, targets, alpha, true).map(|(d, _)| d)
}

/// `sharp_batch` plus the per-step trace.
pub fn sharp_batch_traced(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<(DiagramPair, Vec<TraceStep>)> {
    batch_run(d, targets, alpha, true)
}

/// Batched drop over all cells of `targets`, visited left to right and top
/// to bottom within each column; the lowest movable cell weakly above each
/// target is dropped. The operand must be ghost-free.
pub fn flat_batch(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<DiagramPair> {
    batch_run(d, targets, alpha, false).map(|(d, _)| d)
}

/// `flat_batch` plus the per-step trace.
pub fn flat_batch_traced(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<(DiagramPair, Vec<TraceStep>)> {
    batch_run(d, targets, alpha, false)
}

fn split_targets(targets: &Diagram) -> (BTreeSet<usize>, Diagram) {
    let col1 = targets.rows_in_col(1).into_iter().collect();
    let rest = Diagram::from_cells(
        targets
            .cells()
            .iter()
            .filter(|c| c.col >= 2)
            .map(|c| Cell::at(c.col - 1, c.row)),
    );
    (col1, rest)
}

/// Column-peeling form of `sharp_batch`: recurse on the tail columns over
/// the restricted composition, then raise the column-1 targets in ascending
/// order.
pub fn sharp_batch_recursive(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<DiagramPair> {
    assert!(
        d.ghosts().is_empty(),
        "batch operators act on ghost-free diagrams"
    );
    if d.is_empty() {
        return if targets.is_empty() {
            Some(d.clone())
        } else {
            None
        };
    }
    let (k1, _, rest) = d.split_first_column();
    let (t1, t_rest) = split_targets(targets);
    let gamma = max_below_supported(alpha, &k1)?.decrement_positives();
    let rest2 = sharp_batch_recursive(&rest, &t_rest, &gamma)?;
    let mut cur = DiagramPair::join_first_column(&k1, &BTreeSet::new(), &rest2);
    for &g in &t1 {
        cur = sharp(&cur, g, alpha)?.diagram;
    }
    Some(cur)
}

/// Column-peeling form of `flat_batch`: drop the column-1 targets in
/// descending order, then recurse on the tail columns over the composition
/// restricted by the settled column-1 rows.
pub fn flat_batch_recursive(
    d: &DiagramPair,
    targets: &Diagram,
    alpha: &WeakComposition,
) -> Option<DiagramPair> {
    assert!(
        d.ghosts().is_empty(),
        "batch operators act on ghost-free diagrams"
    );
    if d.is_empty() {
        return if targets.is_empty() {
            Some(d.clone())
        } else {
            None
        };
    }
    let (t1, t_rest) = split_targets(targets);
    let mut cur = d.clone();
    for &e in t1.iter().rev() {
        cur = flat(&cur, e, alpha)?.diagram;
    }
    let (l1, _, tail) = cur.split_first_column();
    let gamma = max_below_supported(alpha, &l1)?.decrement_positives();
    let tail2 = flat_batch_recursive(&tail, &t_rest, &gamma)?;
    Some(DiagramPair::join_first_column(
        &l1,
        &BTreeSet::new(),
        &tail2,
    ))
}
