//! Kohnert tableaux: the canonical column-wise labeling that certifies
//! membership of a diagram in the Kohnert closure of a composition, and its
//! inverse.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::compositions::WeakComposition;
use crate::diagrams::{Cell, Diagram, DiagramPair};

/// A filled diagram certifying membership in the Kohnert closure of its
/// content composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KohnertTableau {
    filling: BTreeMap<Cell, usize>,
    content: WeakComposition,
}

impl KohnertTableau {
    /// Assembles a tableau without checking the validity conditions; pair
    /// with `is_valid` when the filling is not produced by `label`.
    pub fn from_parts(filling: BTreeMap<Cell, usize>, content: WeakComposition) -> Self {
        KohnertTableau { filling, content }
    }

    pub fn filling(&self) -> &BTreeMap<Cell, usize> {
        &self.filling
    }

    pub fn content(&self) -> &WeakComposition {
        &self.content
    }

    pub fn value_at(&self, cell: Cell) -> Option<usize> {
        self.filling.get(&cell).copied()
    }

    fn max_col(&self) -> usize {
        self.filling.keys().map(|c| c.col).max().unwrap_or(0)
    }

    fn column(&self, col: usize) -> Vec<(usize, usize)> {
        // (row, value) pairs, ascending by row
        self.filling
            .iter()
            .filter(|(c, _)| c.col == col)
            .map(|(c, &v)| (c.row, v))
            .collect()
    }

    /// Checks the four defining conditions:
    /// 1. column `c` holds exactly the numbers `{i : α_i ≥ c}`, once each;
    /// 2. a number `i` in row `r` satisfies `i ≥ r`;
    /// 3. `i` at `(c, r)` and `(c+1, r')` forces `r ≥ r'`;
    /// 4. `i < j` in column `c` with `j` lower forces an `i` in column `c+1`
    ///    strictly above the `j`.
    pub fn is_valid(&self) -> bool {
        let alpha = &self.content;
        let max_col = self.max_col().max(alpha.max_part());
        for c in 1..=max_col {
            let col = self.column(c);
            let want: BTreeSet<usize> = (1..=alpha.len()).filter(|&i| alpha.part(i) >= c).collect();
            let got: BTreeSet<usize> = col.iter().map(|&(_, v)| v).collect();
            if got != want || got.len() != col.len() {
                return false;
            }
            if col.iter().any(|&(r, v)| v < r) {
                return false;
            }
            let next: HashMap<usize, usize> = self
                .column(c + 1)
                .into_iter()
                .map(|(r, v)| (v, r))
                .collect();
            for &(r, v) in &col {
                if let Some(&r2) = next.get(&v) {
                    if r < r2 {
                        return false;
                    }
                }
            }
            for &(rj, j) in &col {
                for &(ri, i) in &col {
                    if i < j && ri > rj {
                        match next.get(&i) {
                            Some(&r2) if r2 > rj => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
        true
    }
}

impl Serialize for KohnertTableau {
    /// `{"content": [..], "cells": [[col, row, value], ..]}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let cells: Vec<[usize; 3]> = self
            .filling
            .iter()
            .map(|(c, &v)| [c.col, c.row, v])
            .collect();
        let mut s = serializer.serialize_struct("KohnertTableau", 2)?;
        s.serialize_field("content", &self.content)?;
        s.serialize_field("cells", &cells)?;
        s.end()
    }
}

impl fmt::Display for KohnertTableau {
    /// Diagram-style rendering with the numbers in the cells, bottom row
    /// printed last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.filling.is_empty() {
            return write!(f, "(empty)");
        }
        let max_row = self.filling.keys().map(|c| c.row).max().unwrap();
        let max_col = self.max_col();
        let width = self
            .filling
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in (1..=max_row).rev() {
            let mut fields = Vec::new();
            for col in 1..=max_col {
                match self.filling.get(&Cell::at(col, row)) {
                    Some(v) => fields.push(format!("{v:>width$}")),
                    None => fields.push(" ".repeat(width)),
                }
            }
            writeln!(f, "{}", fields.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// Kohnert labeling of `d` with respect to `alpha`. Succeeds exactly when
/// the ghost-free diagram `d` lies in the Kohnert closure of `alpha`.
///
/// Boxes are visited right to left and bottom to top within each column.
/// Each box `(c, r)` receives the smallest unused `i` with `α_i ≥ c` that
/// does not already appear strictly above row `r` in column `c + 1`; if no
/// candidate exists or the candidate is smaller than `r`, the diagram is not
/// in the closure.
pub fn label(d: &DiagramPair, alpha: &WeakComposition) -> Option<KohnertTableau> {
    if !d.ghosts().is_empty() {
        return None;
    }
    let max_col = alpha.max_part();
    if d.kohnert().max_col() > max_col {
        return None;
    }
    let mut filling: BTreeMap<Cell, usize> = BTreeMap::new();
    // value -> row for the column to the right of the current one
    let mut next_col: HashMap<usize, usize> = HashMap::new();
    for c in (1..=max_col).rev() {
        let rows = d.kohnert().rows_in_col(c);
        let mut pool: BTreeSet<usize> = (1..=alpha.len()).filter(|&i| alpha.part(i) >= c).collect();
        if rows.len() != pool.len() {
            return None;
        }
        let mut this_col: HashMap<usize, usize> = HashMap::new();
        for r in rows {
            let pick = pool
                .iter()
                .copied()
                .find(|i| next_col.get(i).is_none_or(|&r2| r2 <= r))?;
            if pick < r {
                return None;
            }
            pool.remove(&pick);
            filling.insert(Cell::at(c, r), pick);
            this_col.insert(pick, r);
        }
        next_col = this_col;
    }
    Some(KohnertTableau {
        filling,
        content: alpha.clone(),
    })
}

/// Forget the numbers and view each filled cell as a Kohnert cell.
pub fn unlabel(t: &KohnertTableau) -> DiagramPair {
    DiagramPair::new(
        Diagram::from_cells(t.filling.keys().copied()),
        Diagram::new(),
    )
}

/// Membership in the Kohnert closure, decided by the labeling algorithm.
pub fn in_kd(d: &DiagramPair, alpha: &WeakComposition) -> bool {
    d.ghosts().is_empty() && label(d, alpha).is_some()
}
