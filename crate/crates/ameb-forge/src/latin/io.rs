//! Text format for squares and families.
//!
//! A square is the order on its own line followed by that many rows of
//! space-separated decimal symbols. A family is squares separated by one or
//! more blank lines. Row-constant arrays serialize the same way.

use thiserror::Error;

use super::{Grid, LatinError, LatinSquare, Symbol, SymbolGrid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: expected an integer, got {token:?}")]
    InvalidNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} symbols, got {got}")]
    RowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} rows, got {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("trailing content after the declared rows (line {0})")]
    TrailingContent(usize),
    #[error(transparent)]
    Latin(#[from] LatinError),
}

/// Parses one square-shaped grid (no Latin check).
pub fn parse_grid(text: &str) -> Result<Grid, ParseError> {
    let mut grids = parse_blocks(text, true)?;
    Ok(grids.pop().expect("parse_blocks yields at least one grid"))
}

/// Parses one square and validates the Latin property.
pub fn parse_square(text: &str) -> Result<LatinSquare, ParseError> {
    Ok(LatinSquare::try_from(parse_grid(text)?)?)
}

/// Parses a blank-line separated family of grids (no Latin check).
pub fn parse_family(text: &str) -> Result<Vec<Grid>, ParseError> {
    parse_blocks(text, false)
}

/// Parses a blank-line separated family of Latin squares.
pub fn parse_square_family(text: &str) -> Result<Vec<LatinSquare>, ParseError> {
    parse_family(text)?
        .into_iter()
        .map(|g| LatinSquare::try_from(g).map_err(ParseError::from))
        .collect()
}

fn parse_blocks(text: &str, single: bool) -> Result<Vec<Grid>, ParseError> {
    // (line number, tokens) for non-blank lines
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .collect();
    let mut cursor = 0usize;
    let mut grids = Vec::new();
    loop {
        while cursor < lines.len() && lines[cursor].1.is_empty() {
            cursor += 1;
        }
        if cursor == lines.len() {
            break;
        }
        if single && !grids.is_empty() {
            return Err(ParseError::TrailingContent(lines[cursor].0));
        }
        let (line_no, header) = &lines[cursor];
        if header.len() != 1 {
            return Err(ParseError::RowLength {
                line: *line_no,
                expected: 1,
                got: header.len(),
            });
        }
        let order: usize = parse_token(*line_no, header[0])?;
        if order == 0 {
            return Err(ParseError::ZeroOrder);
        }
        cursor += 1;
        let mut rows: Vec<Vec<Symbol>> = Vec::with_capacity(order);
        for _ in 0..order {
            // a blank line inside a square body means the rows ran short
            if cursor == lines.len() || lines[cursor].1.is_empty() {
                return Err(ParseError::MissingRows {
                    expected: order,
                    got: rows.len(),
                });
            }
            let (line_no, tokens) = &lines[cursor];
            if tokens.len() != order {
                return Err(ParseError::RowLength {
                    line: *line_no,
                    expected: order,
                    got: tokens.len(),
                });
            }
            let row = tokens
                .iter()
                .map(|t| parse_token(*line_no, t))
                .collect::<Result<Vec<Symbol>, _>>()?;
            rows.push(row);
            cursor += 1;
        }
        grids.push(Grid::from_rows(&rows)?);
    }
    if grids.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(grids)
}

fn parse_token<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token.parse().map_err(|_| ParseError::InvalidNumber {
        line,
        token: token.to_string(),
    })
}

/// Serializes any symbol array in the text format.
pub fn format_grid(grid: &impl SymbolGrid) -> String {
    let n = grid.order();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| grid.entry(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_square(square: &LatinSquare) -> String {
    format_grid(square)
}

/// Serializes a family, members separated by a blank line.
pub fn format_family<'a, I, G>(members: I) -> String
where
    I: IntoIterator<Item = &'a G>,
    G: SymbolGrid + 'a,
{
    members
        .into_iter()
        .map(format_grid)
        .collect::<Vec<_>>()
        .join("\n")
}
