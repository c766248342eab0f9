//! Diagrams and diagram pairs (Kohnert cells plus ghost cells), the Kohnert
//! and K-Kohnert moves, and breadth-first closure enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compositions::WeakComposition;

/// A box position with 1-based column and row; rows count from the bottom.
/// Serialized as the pair `[col, row]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub fn at(col: usize, row: usize) -> Self {
        assert!(col >= 1 && row >= 1, "cells are 1-based");
        Cell { col, row }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.col, c.row)
    }
}

impl TryFrom<(usize, usize)> for Cell {
    type Error = String;

    fn try_from((col, row): (usize, usize)) -> Result<Self, Self::Error> {
        if col >= 1 && row >= 1 {
            Ok(Cell { col, row })
        } else {
            Err(format!(
                "cell ({col},{row}) out of range: coordinates are 1-based"
            ))
        }
    }
}

/// A finite set of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Diagram {
    cells: BTreeSet<Cell>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram {
            cells: BTreeSet::new(),
        }
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        Diagram {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.cells.insert(cell)
    }

    pub fn remove(&mut self, cell: Cell) -> bool {
        self.cells.remove(&cell)
    }

    pub fn max_row(&self) -> usize {
        self.cells.iter().map(|c| c.row).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.cells.iter().map(|c| c.col).max().unwrap_or(0)
    }

    /// Rows occupied in the given column, ascending.
    pub fn rows_in_col(&self, col: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.col == col)
            .map(|c| c.row)
            .collect()
    }

    /// Shift every cell one column to the left, dropping column 1.
    fn shifted_left(&self) -> Diagram {
        Diagram::from_cells(
            self.cells
                .iter()
                .filter(|c| c.col >= 2)
                .map(|c| Cell::at(c.col - 1, c.row)),
        )
    }

    /// Shift every cell one column to the right.
    fn shifted_right(&self) -> Diagram {
        Diagram::from_cells(self.cells.iter().map(|c| Cell::at(c.col + 1, c.row)))
    }
}

impl FromIterator<Cell> for Diagram {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        Diagram::from_cells(iter)
    }
}

/// A pair of disjoint diagrams: plain Kohnert cells and ghost cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagramPair", into = "RawDiagramPair")]
pub struct DiagramPair {
    kohnert: Diagram,
    ghosts: Diagram,
}

#[derive(Serialize, Deserialize)]
struct RawDiagramPair {
    kohnert: Vec<Cell>,
    ghosts: Vec<Cell>,
}

impl From<DiagramPair> for RawDiagramPair {
    fn from(d: DiagramPair) -> Self {
        RawDiagramPair {
            kohnert: d.kohnert.cells.iter().copied().collect(),
            ghosts: d.ghosts.cells.iter().copied().collect(),
        }
    }
}

impl TryFrom<RawDiagramPair> for DiagramPair {
    type Error = String;

    fn try_from(raw: RawDiagramPair) -> Result<Self, Self::Error> {
        let kohnert = Diagram::from_cells(raw.kohnert);
        let ghosts = Diagram::from_cells(raw.ghosts);
        if let Some(c) = kohnert.cells.intersection(&ghosts.cells).next() {
            return Err(format!(
                "kohnert and ghost cells overlap at ({},{})",
                c.col, c.row
            ));
        }
        Ok(DiagramPair { kohnert, ghosts })
    }
}

impl DiagramPair {
    /// Builds a pair; panics if the two diagrams overlap.
    pub fn new(kohnert: Diagram, ghosts: Diagram) -> Self {
        assert!(
            kohnert.cells.is_disjoint(&ghosts.cells),
            "kohnert and ghost cells must be disjoint"
        );
        DiagramPair { kohnert, ghosts }
    }

    pub fn empty() -> Self {
        DiagramPair {
            kohnert: Diagram::new(),
            ghosts: Diagram::new(),
        }
    }

    pub fn kohnert(&self) -> &Diagram {
        &self.kohnert
    }

    pub fn ghosts(&self) -> &Diagram {
        &self.ghosts
    }

    pub fn is_empty(&self) -> bool {
        self.kohnert.is_empty() && self.ghosts.is_empty()
    }

    /// The pair with the same Kohnert cells and no ghosts.
    pub fn kohnert_part(&self) -> DiagramPair {
        DiagramPair {
            kohnert: self.kohnert.clone(),
            ghosts: Diagram::new(),
        }
    }

    pub fn occupied(&self, cell: Cell) -> bool {
        self.kohnert.contains(cell) || self.ghosts.contains(cell)
    }

    pub fn max_row(&self) -> usize {
        self.kohnert.max_row().max(self.ghosts.max_row())
    }

    pub fn max_col(&self) -> usize {
        self.kohnert.max_col().max(self.ghosts.max_col())
    }

    /// Row counts over Kohnert and ghost cells together, as a composition of
    /// length `n`.
    pub fn weight(&self, n: usize) -> WeakComposition {
        let mut entries = vec![0; n];
        for c in self.kohnert.cells().iter().chain(self.ghosts.cells()) {
            assert!(c.row <= n, "cell row {} exceeds ambient rank {n}", c.row);
            entries[c.row - 1] += 1;
        }
        WeakComposition::new(entries)
    }

    /// Number of ghost cells.
    pub fn excess(&self) -> usize {
        self.ghosts.len()
    }

    /// Detach column 1 as two row sets and shift the remainder left.
    pub fn split_first_column(&self) -> (BTreeSet<usize>, BTreeSet<usize>, DiagramPair) {
        let k1 = self.kohnert.rows_in_col(1).into_iter().collect();
        let g1 = self.ghosts.rows_in_col(1).into_iter().collect();
        let rest = DiagramPair {
            kohnert: self.kohnert.shifted_left(),
            ghosts: self.ghosts.shifted_left(),
        };
        (k1, g1, rest)
    }

    /// Inverse of `split_first_column`.
    pub fn join_first_column(
        k1: &BTreeSet<usize>,
        g1: &BTreeSet<usize>,
        rest: &DiagramPair,
    ) -> DiagramPair {
        let mut kohnert = rest.kohnert.shifted_right();
        let mut ghosts = rest.ghosts.shifted_right();
        for &r in k1 {
            kohnert.insert(Cell::at(1, r));
        }
        for &r in g1 {
            ghosts.insert(Cell::at(1, r));
        }
        DiagramPair::new(kohnert, ghosts)
    }

    /// Move a Kohnert cell within its column; the destination must be free.
    fn with_kohnert_moved(&self, from: Cell, to: Cell, leave_ghost: bool) -> DiagramPair {
        debug_assert!(self.kohnert.contains(from));
        debug_assert!(!self.occupied(to));
        let mut kohnert = self.kohnert.clone();
        let mut ghosts = self.ghosts.clone();
        kohnert.remove(from);
        kohnert.insert(to);
        if leave_ghost {
            ghosts.insert(from);
        }
        DiagramPair { kohnert, ghosts }
    }

    /// Landing row for a drop from `(col, row)`: the highest free row below
    /// the source in its column, or `None` if every lower row is occupied.
    fn drop_target(&self, col: usize, row: usize) -> Option<usize> {
        (1..row).rev().find(|&r| !self.occupied(Cell::at(col, r)))
    }

    /// All single Kohnert moves. The pair must be ghost-free: pick the
    /// rightmost cell of a row and drop it to the first free position below.
    pub fn kohnert_moves(&self) -> BTreeSet<DiagramPair> {
        assert!(
            self.ghosts.is_empty(),
            "Kohnert moves act on ghost-free pairs"
        );
        let mut out = BTreeSet::new();
        for row in 1..=self.max_row() {
            let Some(col) = self
                .kohnert
                .cells()
                .iter()
                .filter(|c| c.row == row)
                .map(|c| c.col)
                .max()
            else {
                continue;
            };
            if let Some(dest) = self.drop_target(col, row) {
                out.insert(self.with_kohnert_moved(Cell::at(col, row), Cell::at(col, dest), false));
            }
        }
        out
    }

    /// All single K-Kohnert moves. The selected cell is the rightmost of its
    /// row counting ghosts; a ghost selection yields nothing. The drop lands
    /// on the first free position below and may not pass a ghost cell. Each
    /// legal drop comes in two flavours: leaving a ghost at the source or not.
    pub fn k_kohnert_moves(&self) -> BTreeSet<DiagramPair> {
        let mut out = BTreeSet::new();
        for row in 1..=self.max_row() {
            let Some(col) = self
                .kohnert
                .cells()
                .iter()
                .chain(self.ghosts.cells())
                .filter(|c| c.row == row)
                .map(|c| c.col)
                .max()
            else {
                continue;
            };
            let source = Cell::at(col, row);
            if self.ghosts.contains(source) {
                continue;
            }
            let Some(dest) = self.drop_target(col, row) else {
                continue;
            };
            let blocked = (dest + 1..row).any(|r| self.ghosts.contains(Cell::at(col, r)));
            if blocked {
                continue;
            }
            out.insert(self.with_kohnert_moved(source, Cell::at(col, dest), false));
            out.insert(self.with_kohnert_moved(source, Cell::at(col, dest), true));
        }
        out
    }
}

/// The key diagram pair of `alpha`: row `i` holds `α_i` left-justified
/// Kohnert cells and no ghosts.
pub fn key_diagram(alpha: &WeakComposition) -> DiagramPair {
    let mut kohnert = Diagram::new();
    for i in 1..=alpha.len() {
        for c in 1..=alpha.part(i) {
            kohnert.insert(Cell::at(c, i));
        }
    }
    DiagramPair::new(kohnert, Diagram::new())
}

/// Default cap on distinct states visited during closure enumeration.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Closure enumeration hit the configured state cap; the instance is too
/// large, not wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateLimitExceeded {
    pub limit: usize,
}

impl fmt::Display for StateLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closure exceeded the state cap of {} diagrams",
            self.limit
        )
    }
}

impl std::error::Error for StateLimitExceeded {}

/// Breadth-first fixed point of `mover` starting from the key diagram of
/// `alpha`, deduplicated and returned in canonical order.
pub fn closure(
    alpha: &WeakComposition,
    mover: impl Fn(&DiagramPair) -> BTreeSet<DiagramPair>,
    cap: usize,
) -> Result<BTreeSet<DiagramPair>, StateLimitExceeded> {
    let n = alpha.len();
    let start = key_diagram(alpha);
    let mut seen: HashSet<DiagramPair> = HashSet::new();
    let mut queue: VecDeque<DiagramPair> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for next in mover(&cur) {
            assert!(next.max_row() <= n, "closure element escaped rows [1, {n}]");
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(StateLimitExceeded { limit: cap });
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(seen.into_iter().collect())
}

/// The set of Kohnert diagrams of `alpha`.
pub fn kd_closure(
    alpha: &WeakComposition,
    cap: usize,
) -> Result<BTreeSet<DiagramPair>, StateLimitExceeded> {
    closure(alpha, DiagramPair::kohnert_moves, cap)
}

/// The set of K-Kohnert diagram pairs of `alpha`.
pub fn kkd_closure(
    alpha: &WeakComposition,
    cap: usize,
) -> Result<BTreeSet<DiagramPair>, StateLimitExceeded> {
    closure(alpha, DiagramPair::k_kohnert_moves, cap)
}

impl fmt::Display for DiagramPair {
    /// Rows printed top to bottom from the highest occupied row down to row
    /// 1; `.` marks a Kohnert cell, `X` a ghost cell.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        let max_col = self.max_col();
        for row in (1..=self.max_row()).rev() {
            let mut line = String::new();
            for col in 1..=max_col {
                let cell = Cell::at(col, row);
                if self.kohnert.contains(cell) {
                    line.push('.');
                } else if self.ghosts.contains(cell) {
                    line.push('X');
                } else {
                    line.push(' ');
                }
                if col < max_col {
                    line.push(' ');
                }
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::all_compositions;

    fn wc(parts: &[usize]) -> WeakComposition {
        WeakComposition::new(parts.to_vec())
    }

    pub(crate) fn pair(kohnert: &[(usize, usize)], ghosts: &[(usize, usize)]) -> DiagramPair {
        DiagramPair::new(
            kohnert.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
            ghosts.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
        )
    }

    #[test]
    fn key_diagram_examples() {
        assert_eq!(
            key_diagram(&wc(&[0, 2, 1])),
            pair(&[(1, 2), (2, 2), (1, 3)], &[])
        );
        assert!(key_diagram(&wc(&[0, 0])).is_empty());
        assert_eq!(key_diagram(&wc(&[1, 0, 1])), pair(&[(1, 1), (1, 3)], &[]));
    }

    #[test]
    fn kohnert_moves_examples() {
        let d = key_diagram(&wc(&[0, 2, 1]));
        let succ = d.kohnert_moves();
        let expected: BTreeSet<DiagramPair> = [
            pair(&[(1, 1), (1, 2), (2, 2)], &[]), // (1,3) dropped to (1,1)
            pair(&[(1, 3), (1, 2), (2, 1)], &[]), // (2,2) dropped to (2,1)
        ]
        .into_iter()
        .collect();
        assert_eq!(succ, expected);

        assert!(DiagramPair::empty().kohnert_moves().is_empty());
        assert!(pair(&[(1, 1)], &[]).kohnert_moves().is_empty());
    }

    #[test]
    fn kd_count_for_021() {
        let kd = kd_closure(&wc(&[0, 2, 1]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(kd.len(), 5);
        let expected: BTreeSet<DiagramPair> = [
            pair(&[(1, 3), (1, 2), (2, 2)], &[]),
            pair(&[(1, 1), (1, 2), (2, 2)], &[]),
            pair(&[(1, 3), (1, 2), (2, 1)], &[]),
            pair(&[(1, 2), (1, 1), (2, 1)], &[]),
            pair(&[(1, 3), (1, 1), (2, 1)], &[]),
        ]
        .into_iter()
        .collect();
        assert_eq!(kd, expected);
    }

    #[test]
    fn kkd_count_for_021() {
        let kkd = kkd_closure(&wc(&[0, 2, 1]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(kkd.len(), 11);
        // ghost moves may not pass other ghosts: with a ghost at (1,2) the
        // cell at (1,3) is stuck
        assert!(kkd.contains(&pair(&[(1, 3), (1, 1), (2, 1)], &[(1, 2)])));
        // a row whose rightmost cell is a ghost yields no move, so this
        // pair is unreachable
        assert!(!kkd.contains(&pair(&[(1, 3), (1, 1), (2, 1)], &[(2, 2)])));
    }

    #[test]
    fn k_moves_edge_cases() {
        // every rightmost cell sits at row 1: nothing can drop
        assert!(pair(&[(1, 1), (2, 1)], &[]).k_kohnert_moves().is_empty());
        // rightmost cell of the row is a ghost: the row yields nothing
        assert!(pair(&[(1, 2)], &[(2, 2)]).k_kohnert_moves().is_empty());
        // a ghost below the landing spot does not block; one between does
        let clear = pair(&[(1, 3)], &[(1, 1)]);
        let succ = clear.k_kohnert_moves();
        assert!(succ.contains(&pair(&[(1, 2)], &[(1, 1)])));
        assert!(succ.contains(&pair(&[(1, 2)], &[(1, 1), (1, 3)])));
        let blocked = pair(&[(1, 3), (1, 1)], &[(1, 2)]);
        assert!(blocked.k_kohnert_moves().is_empty());
    }

    #[test]
    fn trivial_closures() {
        let kd = kd_closure(&wc(&[0, 0, 0]), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(kd.len(), 1);
        assert!(kd.contains(&DiagramPair::empty()));
    }

    #[test]
    fn state_cap_is_enforced() {
        assert_eq!(
            kkd_closure(&wc(&[0, 2, 1]), 4),
            Err(StateLimitExceeded { limit: 4 })
        );
    }

    #[test]
    fn kd_elements_keep_column_counts() {
        for alpha in all_compositions(3, 3) {
            let kd = kd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
            for d in &kd {
                assert!(d.ghosts().is_empty());
                assert_eq!(d.kohnert().len(), alpha.size());
                for c in 1..=alpha.max_part() {
                    let want = (1..=alpha.len()).filter(|&i| alpha.part(i) >= c).count();
                    assert_eq!(d.kohnert().rows_in_col(c).len(), want, "alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn kd_inside_kkd_and_ghost_erasure() {
        for alpha in all_compositions(3, 2) {
            let kd = kd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
            let kkd = kkd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
            assert!(kd.is_subset(&kkd), "alpha={alpha}");
            for d in &kkd {
                assert!(kd.contains(&d.kohnert_part()), "alpha={alpha}");
            }
        }
    }

    #[test]
    fn closure_inclusion_tracks_bruhat() {
        use crate::compositions::bruhat_leq;
        let sweep = all_compositions(3, 3);
        let kds: Vec<_> = sweep
            .iter()
            .map(|a| kd_closure(a, DEFAULT_STATE_CAP).unwrap())
            .collect();
        let kkds: Vec<_> = sweep
            .iter()
            .map(|a| kkd_closure(a, DEFAULT_STATE_CAP).unwrap())
            .collect();
        for (i, g) in sweep.iter().enumerate() {
            for (j, a) in sweep.iter().enumerate() {
                let leq = bruhat_leq(g, a);
                assert_eq!(kds[i].is_subset(&kds[j]), leq, "gamma={g} alpha={a}");
                assert_eq!(kkds[i].is_subset(&kkds[j]), leq, "gamma={g} alpha={a}");
            }
        }
    }

    #[test]
    fn split_and_join_are_inverse() {
        let d = pair(&[(1, 2), (2, 1), (3, 2)], &[(1, 1), (1, 3), (2, 2)]);
        let (k1, g1, rest) = d.split_first_column();
        assert_eq!(k1, [2].into_iter().collect());
        assert_eq!(g1, [1, 3].into_iter().collect());
        assert_eq!(rest, pair(&[(1, 1), (2, 2)], &[(1, 2)]));
        assert_eq!(DiagramPair::join_first_column(&k1, &g1, &rest), d);

        let (k1, g1, rest) = DiagramPair::empty().split_first_column();
        assert!(k1.is_empty() && g1.is_empty() && rest.is_empty());

        let (k1, g1, rest) = key_diagram(&wc(&[0, 2, 1])).split_first_column();
        assert_eq!(k1, [2, 3].into_iter().collect());
        assert!(g1.is_empty());
        assert_eq!(rest, pair(&[(1, 2)], &[]));
    }

    #[test]
    fn ascii_rendering_matches_figures() {
        let d = pair(&[(1, 1), (1, 2), (2, 1)], &[(1, 3), (2, 2)]);
        assert_eq!(d.to_string(), "X\n. X\n. .\n");
        assert_eq!(DiagramPair::empty().to_string(), "(empty)");
    }

    #[test]
    fn json_round_trip_rejects_overlap() {
        let d = pair(&[(1, 1)], &[(2, 1)]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"kohnert":[[1,1]],"ghosts":[[2,1]]}"#);
        assert_eq!(serde_json::from_str::<DiagramPair>(&json).unwrap(), d);
        let bad = r#"{"kohnert":[[1,1]],"ghosts":[[1,1]]}"#;
        assert!(serde_json::from_str::<DiagramPair>(bad).is_err());
    }
}
