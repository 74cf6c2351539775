//! Latin squares, the two orthogonality predicates, and every square
//! construction the basis builders consume.
//!
//! Symbols are always the canonical set `[0, n)`. Two n×n Latin squares are
//! *orthogonal* (MOLS) when superimposing them yields all n² ordered symbol
//! pairs, and *weak orthogonal* (MWOLS) when any row of one meets any row of
//! the other in exactly one column position carrying equal symbols. The two
//! properties are distinct in general and are checked independently.

mod io;
mod transversal;

pub use io::{
    format_family, format_grid, format_square, parse_family, parse_grid, parse_square,
    parse_square_family, ParseError,
};
pub use transversal::{
    find_resolution, transversal_companion, CompanionPair, ResolutionError, Transversal,
    TransversalResolution,
};

use crate::gf::{Field, GfError};
use thiserror::Error;

/// Symbol type for square entries; the canonical symbol set is `[0, n)`.
pub type Symbol = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatinError {
    #[error("input is not square: {rows} rows but row {row} has {len} entries")]
    ShapeError { rows: usize, row: usize, len: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("a square must have order at least 1")]
    EmptyGrid,
    #[error("grid violates the Latin property")]
    NotLatin,
    #[error("symbol shift {shift} is out of range for order {order}")]
    ShiftOutOfRange { shift: usize, order: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("a family needs at least one member")]
    EmptyFamily,
    #[error("not a resolution of the given square: {0}")]
    NotAResolution(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Read access to an n×n symbol array. Implemented by [`LatinSquare`],
/// [`RowConstantArray`] and [`Grid`], so the weak-orthogonality predicate can
/// compare any mix of them.
pub trait SymbolGrid {
    fn order(&self) -> usize;
    fn entry(&self, row: usize, col: usize) -> Symbol;
}

/// A square symbol array with no Latin guarantee; the parse target of the
/// text format and the input of [`is_latin`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    order: usize,
    entries: Vec<Symbol>,
}

impl Grid {
    /// Builds a square grid from rows; fails on ragged or empty input.
    pub fn from_rows(rows: &[Vec<Symbol>]) -> Result<Grid, LatinError> {
        if rows.is_empty() {
            return Err(LatinError::EmptyGrid);
        }
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(LatinError::ShapeError {
                    rows: order,
                    row: i,
                    len: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Grid { order, entries })
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for c in 0..n {
                let v = self.entry(r, c) as usize;
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let v = self.entry(r, c) as usize;
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }
}

impl SymbolGrid for Grid {
    fn order(&self) -> usize {
        self.order
    }

    fn entry(&self, row: usize, col: usize) -> Symbol {
        self.entries[row * self.order + col]
    }
}

/// True iff the rows form a Latin square: every row and every column is a
/// permutation of `[0, n)`. Non-square input is a shape error.
pub fn is_latin(rows: &[Vec<Symbol>]) -> Result<bool, LatinError> {
    Ok(Grid::from_rows(rows)?.is_latin())
}

/// An order-n Latin square over the symbol set `[0, n)`, stored row-major.
/// The Latin property is validated at construction and preserved by every
/// operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<Symbol>,
}

impl SymbolGrid for LatinSquare {
    fn order(&self) -> usize {
        self.order
    }

    fn entry(&self, row: usize, col: usize) -> Symbol {
        self.grid[row * self.order + col]
    }
}

impl TryFrom<Grid> for LatinSquare {
    type Error = LatinError;

    fn try_from(grid: Grid) -> Result<Self, Self::Error> {
        if !grid.is_latin() {
            return Err(LatinError::NotLatin);
        }
        Ok(LatinSquare {
            order: grid.order,
            grid: grid.entries,
        })
    }
}

impl LatinSquare {
    pub fn from_rows(rows: &[Vec<Symbol>]) -> Result<LatinSquare, LatinError> {
        Grid::from_rows(rows)?.try_into()
    }

    pub fn from_grid(order: usize, grid: Vec<Symbol>) -> Result<LatinSquare, LatinError> {
        if order == 0 {
            return Err(LatinError::EmptyGrid);
        }
        if grid.len() != order * order {
            return Err(LatinError::ShapeError {
                rows: order,
                row: grid.len() / order.max(1),
                len: grid.len() % order,
            });
        }
        let g = Grid {
            order,
            entries: grid,
        };
        g.try_into()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> Symbol {
        self.grid[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[Symbol] {
        &self.grid[row * self.order..(row + 1) * self.order]
    }

    /// The cyclic square `grid(i, j) = (i + j) mod n`.
    pub fn cyclic(n: usize) -> LatinSquare {
        assert!(n >= 1, "order must be at least 1");
        assert!(n <= Symbol::MAX as usize + 1, "order exceeds symbol range");
        let grid = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as Symbol))
            .collect();
        LatinSquare { order: n, grid }
    }

    /// Adds `l` to every symbol mod n. The result is again Latin.
    pub fn shift_symbols(&self, l: usize) -> Result<LatinSquare, LatinError> {
        let n = self.order;
        if l >= n {
            return Err(LatinError::ShiftOutOfRange { shift: l, order: n });
        }
        let grid = self
            .grid
            .iter()
            .map(|&v| ((v as usize + l) % n) as Symbol)
            .collect();
        Ok(LatinSquare { order: n, grid })
    }

    /// The unique column holding `entry` in `row`.
    ///
    /// # Panics
    /// Panics if `row` or `entry` is out of range; uniqueness is guaranteed
    /// by the Latin property.
    pub fn column_of(&self, row: usize, entry: Symbol) -> usize {
        assert!(row < self.order && (entry as usize) < self.order);
        self.row(row)
            .iter()
            .position(|&v| v == entry)
            .expect("every symbol occurs once per row")
    }

    /// Direct product: row `(i, s)` of the result is indexed `d2·i + s`,
    /// column `(j, t)` is `d2·j + t`, and the entry is
    /// `d2·self(i, j) + other(s, t)` where `d2 = other.order()`.
    pub fn direct_product(&self, other: &LatinSquare) -> LatinSquare {
        let d1 = self.order;
        let d2 = other.order;
        let n = d1 * d2;
        assert!(n <= Symbol::MAX as usize + 1, "product order exceeds symbol range");
        let mut grid = vec![0 as Symbol; n * n];
        for i in 0..d1 {
            for s in 0..d2 {
                let r = d2 * i + s;
                for j in 0..d1 {
                    for t in 0..d2 {
                        let c = d2 * j + t;
                        grid[r * n + c] =
                            (d2 * self.entry(i, j) as usize + other.entry(s, t) as usize) as Symbol;
                    }
                }
            }
        }
        LatinSquare { order: n, grid }
    }
}

/// The non-Latin array with `entry(i, j) = i`; weak orthogonal to every
/// Latin square of its order and the seed of the product-basis construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowConstantArray {
    order: usize,
}

impl RowConstantArray {
    pub fn new(order: usize) -> RowConstantArray {
        assert!(order >= 1, "order must be at least 1");
        assert!(order <= Symbol::MAX as usize + 1, "order exceeds symbol range");
        RowConstantArray { order }
    }
}

impl SymbolGrid for RowConstantArray {
    fn order(&self) -> usize {
        self.order
    }

    fn entry(&self, row: usize, _col: usize) -> Symbol {
        row as Symbol
    }
}

/// Same-entry intersection count of row `i` of `a` with row `j` of `b`.
fn row_intersections(a: &impl SymbolGrid, b: &impl SymbolGrid, i: usize, j: usize) -> usize {
    (0..a.order())
        .filter(|&s| a.entry(i, s) == b.entry(j, s))
        .count()
}

fn check_orders(a: &impl SymbolGrid, b: &impl SymbolGrid) -> Result<usize, LatinError> {
    if a.order() != b.order() {
        return Err(LatinError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(a.order())
}

/// Weak orthogonality for arbitrary symbol arrays: every row pair must share
/// exactly one column position with equal entries.
pub fn are_weak_orthogonal(
    a: &impl SymbolGrid,
    b: &impl SymbolGrid,
) -> Result<bool, LatinError> {
    let n = check_orders(a, b)?;
    for i in 0..n {
        for j in 0..n {
            if row_intersections(a, b, i, j) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff the n² superimposed ordered pairs `(a(i,j), b(i,j))` are
/// pairwise distinct.
pub fn are_mols(a: &LatinSquare, b: &LatinSquare) -> Result<bool, LatinError> {
    let n = check_orders(a, b)?;
    let mut seen = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let code = a.entry(i, j) as usize * n + b.entry(i, j) as usize;
            if seen[code] {
                return Ok(false);
            }
            seen[code] = true;
        }
    }
    Ok(true)
}

/// True iff every row of `a` intersects every row of `b` in exactly one
/// column position carrying equal symbols.
pub fn are_mwols(a: &LatinSquare, b: &LatinSquare) -> Result<bool, LatinError> {
    are_weak_orthogonal(a, b)
}

/// Pairwise-orthogonality mode for [`check_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalityMode {
    Mols,
    Mwols,
}

/// A family of same-order Latin squares, optionally extended by one
/// row-constant array for product-basis pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFamily {
    order: usize,
    squares: Vec<LatinSquare>,
    row_constant: Option<RowConstantArray>,
}

impl SquareFamily {
    pub fn new(squares: Vec<LatinSquare>) -> Result<SquareFamily, LatinError> {
        let order = squares.first().ok_or(LatinError::EmptyFamily)?.order();
        for sq in &squares {
            if sq.order() != order {
                return Err(LatinError::OrderMismatch {
                    left: order,
                    right: sq.order(),
                });
            }
        }
        Ok(SquareFamily {
            order,
            squares,
            row_constant: None,
        })
    }

    /// Appends the order-matched row-constant array.
    pub fn with_row_constant(mut self) -> SquareFamily {
        self.row_constant = Some(RowConstantArray::new(self.order));
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn row_constant(&self) -> Option<&RowConstantArray> {
        self.row_constant.as_ref()
    }

    /// Number of members including the row-constant array, if present.
    pub fn len(&self) -> usize {
        self.squares.len() + usize::from(self.row_constant.is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Report of [`check_family`]: the member index pairs that failed the
/// requested predicate. Members are indexed in family order; the
/// row-constant array, when present, is the last index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCheckReport {
    pub mode: OrthogonalityMode,
    pub failures: Vec<(usize, usize)>,
}

impl FamilyCheckReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every unordered member pair with the requested predicate. Pairs
/// involving the row-constant array are always checked with the
/// weak-orthogonality predicate, in either mode.
pub fn check_family(
    family: &SquareFamily,
    mode: OrthogonalityMode,
) -> Result<FamilyCheckReport, LatinError> {
    let squares = family.squares();
    let mut failures = Vec::new();
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            let ok = match mode {
                OrthogonalityMode::Mols => are_mols(&squares[i], &squares[j])?,
                OrthogonalityMode::Mwols => are_mwols(&squares[i], &squares[j])?,
            };
            if !ok {
                failures.push((i, j));
            }
        }
    }
    if let Some(rc) = family.row_constant() {
        let rc_index = squares.len();
        for (i, sq) in squares.iter().enumerate() {
            if !are_weak_orthogonal(sq, rc)? {
                failures.push((i, rc_index));
            }
        }
    }
    Ok(FamilyCheckReport { mode, failures })
}

/// The complete family `L^(s+1) = (i + α^s · j)` of q−1 pairwise orthogonal
/// (and pairwise weak orthogonal) Latin squares of prime-power order q,
/// written in the canonical symbol encoding of [`crate::gf`].
pub fn gf_mwols_family(q: u64) -> Result<SquareFamily, LatinError> {
    let (p, n) = factor_prime_power(q).ok_or(LatinError::NotPrimePower(q))?;
    let field = Field::new(p, n)?;
    let q = q as usize;
    let elements = field.elements();

    // canonical index by raw base-p value of the coefficient vector
    let p64 = p as u64;
    let raw_of = |coeffs: &[u32]| -> usize {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p64 + c as u64) as usize
    };
    let mut encode = vec![0 as Symbol; q];
    for (idx, e) in elements.iter().enumerate() {
        encode[raw_of(e.coeffs())] = idx as Symbol;
    }

    let alpha = field.primitive_element();
    let mut alpha_power = field.one();
    let mut squares = Vec::with_capacity(q - 1);
    for _s in 0..q - 1 {
        let mut grid = vec![0 as Symbol; q * q];
        for (j, ej) in elements.iter().enumerate() {
            let scaled = alpha_power.mul(ej).expect("same field");
            for (i, ei) in elements.iter().enumerate() {
                let sum = ei.add(&scaled).expect("same field");
                grid[i * q + j] = encode[raw_of(sum.coeffs())];
            }
        }
        squares.push(LatinSquare::from_grid(q, grid).expect("field rows are permutations"));
        alpha_power = alpha_power.mul(&alpha).expect("same field");
    }
    SquareFamily::new(squares)
}

/// Splits q into (p, n) with p prime and q = p^n, if possible.
pub(crate) fn factor_prime_power(q: u64) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a divisor");
    let mut rest = q;
    let mut n = 0usize;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

#[cfg(test)]
mod tests;
