//! Transversals, resolutions, and the companion square a resolution induces.
//!
//! The search is ordered backtracking over an exact-cover style state: each
//! of the n transversals owns one cell per row, one per column and one of
//! each entry, and together they partition the n² cells. Transversal k is
//! pinned to cell (0, k), which loses nothing (every resolution can be
//! renumbered that way). Rows are processed in index order with columns
//! tried ascending, so the outcome is a pure function of the square and
//! the node budget.

use thiserror::Error;

use super::{LatinError, LatinSquare, Symbol};

/// n cells of a Latin square, one per row and one per column, carrying all
/// n entries; stored in column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    cells: Vec<(usize, usize)>,
}

impl Transversal {
    /// Cells as (row, column) pairs, ordered by column index.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    /// The row this transversal uses in `col`.
    pub fn row_in_column(&self, col: usize) -> usize {
        self.cells[col].0
    }
}

/// A partition of all n² cells of one square into n disjoint transversals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalResolution {
    order: usize,
    transversals: Vec<Transversal>,
}

impl TransversalResolution {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn transversals(&self) -> &[Transversal] {
        &self.transversals
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    /// The node budget ran out before the search space was exhausted; the
    /// square may or may not have a resolution.
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    /// The search space was exhausted: the square provably has no
    /// resolution of transversals.
    #[error("the square has no resolution of transversals")]
    NonexistentResolution,
}

/// Searches for a resolution of transversals of `square`, spending at most
/// `max_nodes` candidate-cell probes. Deterministic for a given square and
/// budget.
pub fn find_resolution(
    square: &LatinSquare,
    max_nodes: u64,
) -> Result<TransversalResolution, ResolutionError> {
    let n = square.order();
    let total = n * n;
    let mut taken = vec![false; total]; // cell (r, c) already owned
    let mut col_used = vec![false; total]; // [k][c]
    let mut entry_used = vec![false; total]; // [k][e]
    let mut chosen = vec![usize::MAX; total]; // [k][r] -> column
    let mut next_col = vec![0usize; total]; // resume point per slot
    let mut nodes: u64 = 0;

    // slot s = k * n + r: row r of transversal k; row 0 is pinned to column k
    let mut slot = 0usize;
    loop {
        if slot == total {
            let transversals = (0..n)
                .map(|k| {
                    let mut cells: Vec<(usize, usize)> =
                        (0..n).map(|r| (r, chosen[k * n + r])).collect();
                    cells.sort_by_key(|&(_, c)| c);
                    Transversal { cells }
                })
                .collect();
            return Ok(TransversalResolution {
                order: n,
                transversals,
            });
        }
        let k = slot / n;
        let r = slot % n;
        let candidates = if r == 0 {
            let from = next_col[slot];
            if from > k {
                k..k // exhausted: the pin admits a single candidate
            } else {
                k..k + 1
            }
        } else {
            next_col[slot]..n
        };

        let mut advanced = false;
        for c in candidates {
            nodes += 1;
            if nodes > max_nodes {
                return Err(ResolutionError::BudgetExhausted(max_nodes));
            }
            let e = square.entry(r, c) as usize;
            if taken[r * n + c] || col_used[k * n + c] || entry_used[k * n + e] {
                continue;
            }
            taken[r * n + c] = true;
            col_used[k * n + c] = true;
            entry_used[k * n + e] = true;
            chosen[k * n + r] = c;
            next_col[slot] = c + 1;
            slot += 1;
            if slot < total {
                next_col[slot] = 0;
            }
            advanced = true;
            break;
        }
        if !advanced {
            if slot == 0 {
                return Err(ResolutionError::NonexistentResolution);
            }
            next_col[slot] = 0;
            slot -= 1;
            let k = slot / n;
            let r = slot % n;
            let c = chosen[k * n + r];
            let e = square.entry(r, c) as usize;
            taken[r * n + c] = false;
            col_used[k * n + c] = false;
            entry_used[k * n + e] = false;
            chosen[k * n + r] = usize::MAX;
        }
    }
}

/// Companion square built from a resolution, together with the row
/// normalization that was applied to the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionPair {
    /// The constructed square; weak orthogonal to `normalized_source`.
    pub companion: LatinSquare,
    /// The source square with rows permuted so column 0 reads 0, 1, …, n−1.
    pub normalized_source: LatinSquare,
    /// `row_permutation[r]` is the row of `normalized_source` holding row
    /// `r` of the original square.
    pub row_permutation: Vec<usize>,
}

/// Turns a resolution of `square` into a companion square: the transversal
/// whose column-0 cell carries entry k becomes row k of the companion, its
/// entries listed in column order. The companion is Latin and weak
/// orthogonal to the (row-normalized) source.
pub fn transversal_companion(
    square: &LatinSquare,
    resolution: &TransversalResolution,
) -> Result<CompanionPair, LatinError> {
    let n = square.order();
    validate_resolution(square, resolution)?;

    // Row r of the source becomes row square(r, 0) of the normalized square,
    // making column 0 the natural arrangement.
    let row_permutation: Vec<usize> = (0..n).map(|r| square.entry(r, 0) as usize).collect();
    let mut normalized = vec![0 as Symbol; n * n];
    for r in 0..n {
        let nr = row_permutation[r];
        for c in 0..n {
            normalized[nr * n + c] = square.entry(r, c);
        }
    }
    let normalized_source =
        LatinSquare::from_grid(n, normalized).expect("row permutation preserves the Latin property");

    let mut companion = vec![0 as Symbol; n * n];
    for t in resolution.transversals() {
        let (r0, _) = t.cells()[0]; // cells are column-ordered; first is column 0
        let k = square.entry(r0, 0) as usize;
        for &(r, c) in t.cells() {
            companion[k * n + c] = square.entry(r, c);
        }
    }
    let companion = LatinSquare::from_grid(n, companion)
        .expect("a resolution always induces a Latin companion");

    Ok(CompanionPair {
        companion,
        normalized_source,
        row_permutation,
    })
}

fn validate_resolution(
    square: &LatinSquare,
    resolution: &TransversalResolution,
) -> Result<(), LatinError> {
    let n = square.order();
    let fail = |msg: String| Err(LatinError::NotAResolution(msg));
    if resolution.order() != n {
        return fail(format!(
            "resolution has order {} but the square has order {}",
            resolution.order(),
            n
        ));
    }
    if resolution.transversals().len() != n {
        return fail(format!(
            "expected {} transversals, got {}",
            n,
            resolution.transversals().len()
        ));
    }
    let mut cell_seen = vec![false; n * n];
    for (idx, t) in resolution.transversals().iter().enumerate() {
        if t.cells().len() != n {
            return fail(format!("transversal {idx} does not have {n} cells"));
        }
        let mut row_seen = vec![false; n];
        let mut entry_seen = vec![false; n];
        for (pos, &(r, c)) in t.cells().iter().enumerate() {
            if r >= n || c != pos {
                return fail(format!(
                    "transversal {idx} is not column-ordered or out of range"
                ));
            }
            if row_seen[r] {
                return fail(format!("transversal {idx} repeats row {r}"));
            }
            row_seen[r] = true;
            let e = square.entry(r, c) as usize;
            if entry_seen[e] {
                return fail(format!("transversal {idx} repeats entry {e}"));
            }
            entry_seen[e] = true;
            if cell_seen[r * n + c] {
                return fail(format!("cell ({r}, {c}) appears in two transversals"));
            }
            cell_seen[r * n + c] = true;
        }
    }
    debug_assert!(cell_seen.iter().all(|&b| b), "counts force a partition");
    Ok(())
}
