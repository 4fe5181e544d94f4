//! Cylindrical α-tilings and their correspondence with antichain orbits.
//!
//! A tiling of width `w` has `s` rows and `w` columns glued into a cylinder.
//! Column `k` records the `k`-th antichain of an orbit: row `i` is yellow
//! when the antichain misses segment `i`, black when it holds an unshared
//! element of the segment, and red when it holds a shared endpoint. Red
//! tiles are vertical dominoes on rows `i, i+1`; black tiles are horizontal
//! bars of length `α_i − 1`.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{FenceError, Result};
use crate::fence::{BitIter, Composition, Fence, Position, SetKind};
use crate::rowmotion::{cycle_decomposition, rho_bits, Family, Orbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TileKind {
    Yellow,
    Black,
    Red,
}

/// A placed tile. `row` is 1-based; for red tiles it is the upper (head)
/// row and the tile also covers `row + 1`. `start` is a 0-based column;
/// black tiles run rightwards from it, wrapping past the last column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tile {
    pub kind: TileKind,
    pub row: usize,
    pub start: usize,
    pub span: usize,
}

/// What covers a single cell of the cylinder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Cell {
    Yellow,
    /// The `rank`-th cell (1-based) of a black tile.
    Black { rank: usize },
    /// Upper half of a red tile.
    RedHead,
    /// Lower half of a red tile.
    RedTail,
}

impl Cell {
    pub fn letter(self) -> char {
        match self {
            Cell::Yellow => 'Y',
            Cell::Black { .. } => 'B',
            Cell::RedHead | Cell::RedTail => 'R',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaTiling {
    pub alpha: Composition,
    pub width: usize,
    pub tiles: Vec<Tile>,
}

/// Black tiles per row and red tiles per head row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TileCounts {
    /// `b_1, …, b_s`.
    pub black: Vec<usize>,
    /// `r_1, …, r_{s−1}`.
    pub red: Vec<usize>,
}

impl TileCounts {
    /// `b_i`, 0 outside `1..=s`.
    pub fn b(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|k| self.black.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// `r_i`, with `r_0 = r_s = 0`.
    pub fn r(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|k| self.red.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Whether `b_i = b_{s+1−i}` for all `i`.
    pub fn black_palindromic(&self) -> bool {
        self.black.iter().eq(self.black.iter().rev())
    }

    /// Whether `r_i = r_{s−i}` for all `i`.
    pub fn red_palindromic(&self) -> bool {
        self.red.iter().eq(self.red.iter().rev())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Malformed tile: bad row, column, or a red tile in the last row.
    Shape,
    /// A cell covered zero times or more than once.
    Cover,
    /// A tile of the wrong length.
    Span,
    /// Black and yellow tiles fail to alternate in a row.
    Alternation,
    /// A red tile where none may go, or a missing one.
    RedPlacement,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Shape => "shape",
            Rule::Cover => "cover",
            Rule::Span => "span",
            Rule::Alternation => "alternation",
            Rule::RedPlacement => "red-placement",
        })
    }
}

/// One failed check, located by 1-based row and 0-based column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub row: usize,
    pub column: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn cites(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, row: usize, column: usize, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            row,
            column,
            detail: detail.into(),
        });
    }
}

impl AlphaTiling {
    pub fn rows(&self) -> usize {
        self.alpha.len()
    }

    /// The cell grid, `grid[row - 1][column]`. Fails unless every cell is
    /// covered exactly once by well-formed tiles.
    pub fn cells(&self) -> Result<Vec<Vec<Cell>>> {
        let (grid, report) = self.fill();
        if report.is_valid() {
            Ok(grid.into_iter().map(|r| r.into_iter().map(|c| c.unwrap()).collect()).collect())
        } else {
            Err(FenceError::InvalidTiling(summary(&report)))
        }
    }

    fn fill(&self) -> (Vec<Vec<Option<Cell>>>, ValidationReport) {
        let s = self.rows();
        let w = self.width;
        let mut report = ValidationReport::default();
        let mut grid: Vec<Vec<Option<Cell>>> = vec![vec![None; w]; s];
        let place = |grid: &mut Vec<Vec<Option<Cell>>>,
                         report: &mut ValidationReport,
                         row: usize,
                         col: usize,
                         cell: Cell| {
            let slot = &mut grid[row - 1][col];
            if slot.is_some() {
                report.push(Rule::Cover, row, col, "cell covered more than once");
            } else {
                *slot = Some(cell);
            }
        };
        for t in &self.tiles {
            if t.row == 0 || t.row > s || t.start >= w {
                report.push(
                    Rule::Shape,
                    t.row,
                    t.start,
                    format!("{:?} tile outside the {s}x{w} cylinder", t.kind),
                );
                continue;
            }
            match t.kind {
                TileKind::Yellow => {
                    if t.span != 1 {
                        report.push(Rule::Span, t.row, t.start, "yellow tiles have span 1");
                    }
                    place(&mut grid, &mut report, t.row, t.start, Cell::Yellow);
                }
                TileKind::Red => {
                    if t.span != 1 {
                        report.push(Rule::Span, t.row, t.start, "red tiles have span 1");
                    }
                    if t.row == s {
                        report.push(Rule::Shape, t.row, t.start, "red tile hangs below the last row");
                        continue;
                    }
                    place(&mut grid, &mut report, t.row, t.start, Cell::RedHead);
                    place(&mut grid, &mut report, t.row + 1, t.start, Cell::RedTail);
                }
                TileKind::Black => {
                    let want = self.alpha.part(t.row) - 1;
                    if t.span != want || t.span == 0 {
                        report.push(
                            Rule::Span,
                            t.row,
                            t.start,
                            format!("black tile has span {}, row needs {want}", t.span),
                        );
                    }
                    if t.span > w {
                        report.push(Rule::Shape, t.row, t.start, "black tile longer than the cylinder");
                        continue;
                    }
                    for k in 0..t.span {
                        place(
                            &mut grid,
                            &mut report,
                            t.row,
                            (t.start + k) % w,
                            Cell::Black { rank: k + 1 },
                        );
                    }
                }
            }
        }
        for (r, row) in grid.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if cell.is_none() {
                    report.push(Rule::Cover, r + 1, c, "cell not covered");
                }
            }
        }
        (grid, report)
    }

    /// The same tiling with column `k` moved to column 0.
    pub fn rotated(&self, k: usize) -> AlphaTiling {
        let w = self.width;
        let mut tiles: Vec<Tile> = self
            .tiles
            .iter()
            .map(|t| Tile {
                start: (t.start + w - k % w) % w,
                ..*t
            })
            .collect();
        tiles.sort();
        AlphaTiling {
            alpha: self.alpha.clone(),
            width: w,
            tiles,
        }
    }

    /// Rotation whose column sequence is lexicographically least.
    pub fn canonical_rotation(&self) -> Result<AlphaTiling> {
        let grid = self.cells()?;
        let w = self.width;
        let column = |c: usize| -> Vec<Cell> { grid.iter().map(|row| row[c]).collect() };
        let columns: Vec<Vec<Cell>> = (0..w).map(column).collect();
        let best = (0..w)
            .min_by(|&a, &b| {
                (0..w)
                    .map(|k| &columns[(a + k) % w])
                    .cmp((0..w).map(|k| &columns[(b + k) % w]))
            })
            .unwrap_or(0);
        Ok(self.rotated(best))
    }

    /// Equality up to horizontal rotation.
    pub fn equivalent(&self, other: &AlphaTiling) -> Result<bool> {
        if self.alpha != other.alpha || self.width != other.width {
            return Ok(false);
        }
        Ok(self.canonical_rotation()? == other.canonical_rotation()?)
    }
}

fn summary(report: &ValidationReport) -> String {
    let first = &report.violations[0];
    format!(
        "{} violation(s); first: {} at row {}, column {}: {}",
        report.violations.len(),
        first.rule,
        first.row,
        first.column,
        first.detail
    )
}

/// The cell that antichain `a` puts in row `i`.
fn cell_of(f: &Fence, a: u64, i: usize) -> Result<Cell> {
    let hits = a & f.segment_mask(i);
    if hits == 0 {
        return Ok(Cell::Yellow);
    }
    if hits.count_ones() != 1 {
        return Err(FenceError::InvalidTiling(format!(
            "{} meets segment {i} twice",
            crate::fence::format_bits(a)
        )));
    }
    let x = hits.trailing_zeros() as usize;
    Ok(match f.position(x) {
        Position::Unshared { rank, .. } => Cell::Black { rank },
        Position::Shared { index } if index == i => Cell::RedHead,
        Position::Shared { .. } => Cell::RedTail,
    })
}

/// `φ`: the tiling of an antichain orbit, cut at its canonical member.
pub fn tiling_of_orbit(f: &Fence, orbit: &Orbit) -> Result<AlphaTiling> {
    if orbit.family() != Family::Antichains {
        return Err(FenceError::KindMismatch {
            expected: SetKind::Antichain,
            found: SetKind::Ideal,
        });
    }
    let s = f.segment_count();
    let w = orbit.size();
    let mut tiles = Vec::new();
    for (c, &a) in orbit.bits().iter().enumerate() {
        for i in 1..=s {
            match cell_of(f, a, i)? {
                Cell::Yellow => tiles.push(Tile {
                    kind: TileKind::Yellow,
                    row: i,
                    start: c,
                    span: 1,
                }),
                Cell::RedHead => tiles.push(Tile {
                    kind: TileKind::Red,
                    row: i,
                    start: c,
                    span: 1,
                }),
                Cell::Black { rank: 1 } => tiles.push(Tile {
                    kind: TileKind::Black,
                    row: i,
                    start: c,
                    span: f.alpha().part(i) - 1,
                }),
                Cell::Black { .. } | Cell::RedTail => {}
            }
        }
    }
    tiles.sort();
    let tiling = AlphaTiling {
        alpha: f.alpha().clone(),
        width: w,
        tiles,
    };
    // The tile assembly assumed each black run starts at rank 1 and climbs;
    // the cell grid must reproduce the orbit exactly.
    let grid = tiling.cells()?;
    for (c, &a) in orbit.bits().iter().enumerate() {
        for i in 1..=s {
            if grid[i - 1][c] != cell_of(f, a, i)? {
                return Err(FenceError::Internal(format!(
                    "tiling disagrees with the orbit at row {i}, column {c}"
                )));
            }
        }
    }
    let report = validate_tiling(f.alpha(), &tiling);
    if !report.is_valid() {
        return Err(FenceError::Internal(format!(
            "tiling of an orbit failed validation: {}",
            summary(&report)
        )));
    }
    Ok(tiling)
}

/// Decodes one column of a cell grid into an antichain mask.
fn decode_column(f: &Fence, grid: &[Vec<Cell>], c: usize) -> Result<u64> {
    let mut a = 0u64;
    for (r, row) in grid.iter().enumerate() {
        let i = r + 1;
        match row[c] {
            Cell::Yellow | Cell::RedTail => {}
            Cell::RedHead => {
                let x = f.shared_element(i).ok_or_else(|| {
                    FenceError::InvalidTiling(format!("red tile in row {i} has no shared element"))
                })?;
                a |= 1 << x;
            }
            Cell::Black { rank } => {
                let x = f.unshared_element(i, rank).ok_or_else(|| {
                    FenceError::InvalidTiling(format!("row {i} has no unshared element {rank}"))
                })?;
                a |= 1 << x;
            }
        }
    }
    Ok(a)
}

/// `φ⁻¹`: the orbit encoded by a valid tiling, with columns in tiling order
/// and then rotated to its canonical member.
pub fn orbit_of_tiling(f: &Fence, t: &AlphaTiling) -> Result<Orbit> {
    if &t.alpha != f.alpha() {
        return Err(FenceError::InvalidTiling(format!(
            "tiling is for ({}), fence is ({})",
            t.alpha,
            f.alpha()
        )));
    }
    let report = validate_tiling(&t.alpha, t);
    if !report.is_valid() {
        return Err(FenceError::InvalidTiling(summary(&report)));
    }
    let grid = t.cells()?;
    let columns = (0..t.width)
        .map(|c| decode_column(f, &grid, c))
        .collect::<Result<Vec<_>>>()?;
    for (c, &a) in columns.iter().enumerate() {
        if !f.is_antichain_bits(a) {
            return Err(FenceError::InvalidTiling(format!(
                "column {c} decodes to {}, not an antichain",
                crate::fence::format_bits(a)
            )));
        }
        let next = columns[(c + 1) % t.width];
        if rho_bits(f, a) != next {
            return Err(FenceError::InvalidTiling(format!(
                "column {} is not the rowmotion image of column {c}",
                (c + 1) % t.width
            )));
        }
    }
    // A repeated column would make the orbit shorter than the width.
    let cycles = cycle_decomposition(&columns, |b| rho_bits(f, b))
        .map_err(|e| FenceError::InvalidTiling(e.to_string()))?;
    if cycles.len() != 1 {
        return Err(FenceError::InvalidTiling("columns repeat".into()));
    }
    Ok(Orbit::from_cycle(Family::Antichains, columns))
}

/// Checks exact cover, tile spans, alternation and red placement, and
/// reports every violation found.
pub fn validate_tiling(alpha: &Composition, t: &AlphaTiling) -> ValidationReport {
    let mut report = ValidationReport::default();
    if &t.alpha != alpha {
        report.push(
            Rule::Shape,
            0,
            0,
            format!("tiling is for ({}), expected ({alpha})", t.alpha),
        );
        return report;
    }
    if t.width == 0 {
        report.push(Rule::Shape, 0, 0, "zero-width cylinder");
        return report;
    }
    let (grid, fill_report) = t.fill();
    report.violations.extend(fill_report.violations);
    if !report.is_valid() {
        return report;
    }
    let grid: Vec<Vec<Cell>> = grid
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.unwrap()).collect())
        .collect();
    let s = alpha.len();
    let w = t.width;

    for (r, row) in grid.iter().enumerate() {
        let i = r + 1;
        // Black and yellow tiles in column order, red ones skipped.
        let seq: Vec<(usize, bool)> = row
            .iter()
            .enumerate()
            .filter_map(|(c, cell)| match cell {
                Cell::Yellow => Some((c, false)),
                Cell::Black { rank: 1 } => Some((c, true)),
                _ => None,
            })
            .collect();
        if !seq.iter().any(|&(_, black)| black) {
            continue;
        }
        for k in 0..seq.len() {
            let (c, black) = seq[k];
            let (_, next_black) = seq[(k + 1) % seq.len()];
            if black == next_black {
                report.push(
                    Rule::Alternation,
                    i,
                    c,
                    if black {
                        "two black tiles with no yellow between"
                    } else {
                        "two yellow tiles with no black between"
                    },
                );
            }
        }
    }

    let yellow_pair = |i: usize, c: usize| grid[i - 1][c] == Cell::Yellow && grid[i][c] == Cell::Yellow;
    #[allow(clippy::needless_range_loop)]
    for i in 1..s {
        for c in 0..w {
            let has_red = grid[i - 1][c] == Cell::RedHead;
            let neighbour = if i % 2 == 0 { (c + w - 1) % w } else { (c + 1) % w };
            let wants_red = yellow_pair(i, neighbour);
            if has_red != wants_red {
                report.push(
                    Rule::RedPlacement,
                    i,
                    c,
                    if has_red {
                        format!("red tile without two yellows in column {neighbour}")
                    } else {
                        format!("column {neighbour} has two yellows but column {c} has no red tile")
                    },
                );
            }
        }
    }
    report
}

pub fn tile_counts(t: &AlphaTiling) -> TileCounts {
    let s = t.alpha.len();
    let mut black = vec![0; s];
    let mut red = vec![0; s.saturating_sub(1)];
    for tile in &t.tiles {
        match tile.kind {
            TileKind::Black if (1..=s).contains(&tile.row) => black[tile.row - 1] += 1,
            TileKind::Red if (1..s).contains(&tile.row) => red[tile.row - 1] += 1,
            _ => {}
        }
    }
    TileCounts { black, red }
}

/// Tile counts straight from an antichain orbit, without building tiles.
pub fn orbit_tile_counts(f: &Fence, orbit: &Orbit) -> TileCounts {
    let s = f.segment_count();
    let black = (1..=s)
        .map(|i| {
            let first = f.unshared_element(i, 1);
            match first {
                Some(x) => orbit.bits().iter().filter(|&&a| a >> x & 1 == 1).count(),
                None => 0,
            }
        })
        .collect();
    let red = f
        .shared_elements()
        .iter()
        .map(|&x| orbit.bits().iter().filter(|&&a| a >> x & 1 == 1).count())
        .collect();
    TileCounts { black, red }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = FenceError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(FenceError::Parse(format!(
                "unknown render format '{other}' (expected ascii or svg)"
            ))),
        }
    }
}

pub fn render_tiling(t: &AlphaTiling, format: RenderFormat) -> Result<String> {
    match format {
        RenderFormat::Ascii => render_ascii(t),
        RenderFormat::Svg => render_svg(t),
    }
}

/// One line per row. Cells are `Y`, `B` or `R`; `|` separates tiles, a
/// space joins the cells of one black tile, and `~` replaces the outer
/// border where a black tile wraps around the cylinder.
pub fn render_ascii(t: &AlphaTiling) -> Result<String> {
    let grid = t.cells()?;
    let w = t.width;
    let mut out = String::new();
    for row in &grid {
        let joined = |a: Cell, b: Cell| matches!((a, b), (Cell::Black { rank: p }, Cell::Black { rank: q }) if q == p + 1);
        let wraps = w > 0 && joined(row[w - 1], row[0]);
        let edge = if wraps { '~' } else { '|' };
        out.push(edge);
        for c in 0..w {
            if c > 0 {
                out.push(if joined(row[c - 1], row[c]) { ' ' } else { '|' });
            }
            out.push(row[c].letter());
        }
        out.push(edge);
        out.push('\n');
    }
    Ok(out)
}

/// Reads the cell letters back out of [`render_ascii`] output.
pub fn parse_ascii(text: &str) -> Vec<Vec<char>> {
    text.lines()
        .map(|line| line.chars().filter(|ch| matches!(ch, 'Y' | 'B' | 'R')).collect())
        .collect()
}

pub const CELL_PX: usize = 20;
pub const YELLOW: &str = "#FFD700";
pub const RED: &str = "#D62728";
pub const BLACK: &str = "#222222";

fn zigzag(x: usize, y: usize) -> String {
    let mut pts = String::new();
    let teeth = 4;
    let step = CELL_PX / teeth;
    for k in 0..=teeth {
        let dx = if k % 2 == 0 { 0 } else { 3 };
        let _ = write!(pts, "{},{} ", x + dx, y + k * step);
    }
    pts.trim_end().to_string()
}

/// SVG of the cut-open cylinder. Black tiles that cross the cut are drawn
/// in two pieces with a jagged line on each side of the seam.
pub fn render_svg(t: &AlphaTiling) -> Result<String> {
    t.cells()?;
    let w = t.width;
    let s = t.rows();
    let width_px = w * CELL_PX;
    let height_px = s * CELL_PX;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" height="{height_px}" viewBox="0 0 {width_px} {height_px}">"#
    );
    let _ = writeln!(out, "  <title>tiling of ({}) width {w}</title>", t.alpha);
    let rect = |out: &mut String, col: usize, row: usize, cols: usize, rows: usize, fill: &str| {
        let _ = writeln!(
            out,
            r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#000000" stroke-width="1"/>"##,
            col * CELL_PX,
            (row - 1) * CELL_PX,
            cols * CELL_PX,
            rows * CELL_PX
        );
    };
    let mut seams = Vec::new();
    for tile in &t.tiles {
        match tile.kind {
            TileKind::Yellow => rect(&mut out, tile.start, tile.row, 1, 1, YELLOW),
            TileKind::Red => rect(&mut out, tile.start, tile.row, 1, 2, RED),
            TileKind::Black => {
                let end = tile.start + tile.span;
                if end <= w {
                    rect(&mut out, tile.start, tile.row, tile.span, 1, BLACK);
                } else {
                    rect(&mut out, tile.start, tile.row, w - tile.start, 1, BLACK);
                    rect(&mut out, 0, tile.row, end - w, 1, BLACK);
                    seams.push(tile.row);
                }
            }
        }
    }
    for row in seams {
        let y = (row - 1) * CELL_PX;
        for x in [width_px - 3, 0] {
            let _ = writeln!(
                out,
                r##"  <polyline class="seam" points="{}" fill="none" stroke="#FFFFFF" stroke-width="1.5"/>"##,
                zigzag(x, y)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Checks that `bits` is an antichain and that each segment meets it at
/// most once; exposed for callers that decode columns themselves.
pub fn column_cells(f: &Fence, a: u64) -> Result<Vec<Cell>> {
    if !f.is_antichain_bits(a) {
        return Err(FenceError::NotInFamily(
            crate::fence::format_bits(a),
            SetKind::Antichain,
        ));
    }
    (1..=f.segment_count()).map(|i| cell_of(f, a, i)).collect()
}

/// Elements of a mask, for error messages and tests.
pub fn elements(bits: u64) -> Vec<usize> {
    BitIter(bits).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowmotion::{antichain_orbits, orbit_of};

    fn f(alpha: &str) -> Fence {
        Fence::parse(alpha).unwrap()
    }

    fn five_orbit() -> (Fence, Orbit) {
        let g = f("4,3,4");
        let o = orbit_of(&g, &g.antichain(&[4, 10]).unwrap()).unwrap();
        (g, o)
    }

    #[test]
    fn five_column_tiling() {
        let (g, o) = five_orbit();
        let t = tiling_of_orbit(&g, &o).unwrap();
        assert_eq!(t.width, 5);
        let counts = tile_counts(&t);
        assert_eq!(counts.black, vec![1, 1, 1]);
        assert_eq!(counts.red, vec![1, 1]);
        assert_eq!(counts.r(3), 0);
        let reds: Vec<(usize, usize)> = t
            .tiles
            .iter()
            .filter(|x| x.kind == TileKind::Red)
            .map(|x| (x.row, x.start))
            .collect();
        // Row 1 head at the {x4,x10} column, row 2 head at {x1,x7}.
        assert_eq!(reds, vec![(1, 4), (2, 1)]);
        assert_eq!(
            render_ascii(&t).unwrap(),
            "|Y|B B B|R|\n|Y|R|B B|R|\n|Y|R|B B B|\n"
        );
    }

    #[test]
    fn seventeen_orbits_counts() {
        let g = f("4,3,4");
        for o in antichain_orbits(&g).unwrap().iter().filter(|o| o.size() == 17) {
            let t = tiling_of_orbit(&g, o).unwrap();
            assert_eq!(tile_counts(&t).black, vec![4, 5, 4]);
            assert_eq!(tile_counts(&t).red, vec![1, 1]);
            assert_eq!(tile_counts(&t), orbit_tile_counts(&g, o));
        }
    }

    #[test]
    fn five_four_has_one_red_tile() {
        let g = f("5,4");
        let orbits = antichain_orbits(&g).unwrap();
        let t = tiling_of_orbit(&g, &orbits[0]).unwrap();
        let c = tile_counts(&t);
        assert_eq!(c.black, vec![4, 5]);
        assert_eq!(c.red, vec![1]);
        assert_eq!(t.width, c.b(1) * 5 + c.r(1) + c.r(0));
    }

    #[test]
    fn decoding_the_five_column_tiling() {
        let (g, o) = five_orbit();
        let t = tiling_of_orbit(&g, &o).unwrap();
        let back = orbit_of_tiling(&g, &t).unwrap();
        assert_eq!(back, o);
        let labels: Vec<Vec<usize>> = back.members().map(|m| m.labels()).collect();
        assert_eq!(labels[1], vec![1, 7]);
    }

    #[test]
    fn removing_red_tiles_breaks_red_placement() {
        let (g, o) = five_orbit();
        let t = tiling_of_orbit(&g, &o).unwrap();
        let mut tiles = Vec::new();
        for tile in &t.tiles {
            if tile.kind == TileKind::Red {
                for row in [tile.row, tile.row + 1] {
                    tiles.push(Tile {
                        kind: TileKind::Yellow,
                        row,
                        start: tile.start,
                        span: 1,
                    });
                }
            } else {
                tiles.push(*tile);
            }
        }
        let broken = AlphaTiling { tiles, ..t };
        let report = validate_tiling(g.alpha(), &broken);
        assert!(!report.is_valid());
        assert!(report.cites(Rule::RedPlacement));
        assert!(orbit_of_tiling(&g, &broken).is_err());
    }

    #[test]
    fn wrong_black_span_is_cited() {
        let alpha: Composition = "3,3".parse().unwrap();
        let t = AlphaTiling {
            alpha: alpha.clone(),
            width: 3,
            tiles: vec![
                Tile { kind: TileKind::Black, row: 1, start: 0, span: 3 },
                Tile { kind: TileKind::Yellow, row: 2, start: 0, span: 1 },
                Tile { kind: TileKind::Yellow, row: 2, start: 1, span: 1 },
                Tile { kind: TileKind::Yellow, row: 2, start: 2, span: 1 },
            ],
        };
        let report = validate_tiling(&alpha, &t);
        assert!(report.cites(Rule::Span));
    }

    #[test]
    fn gaps_and_overlaps_are_cover_violations() {
        let alpha: Composition = "2,2".parse().unwrap();
        let t = AlphaTiling {
            alpha: alpha.clone(),
            width: 2,
            tiles: vec![
                Tile { kind: TileKind::Yellow, row: 1, start: 0, span: 1 },
                Tile { kind: TileKind::Yellow, row: 1, start: 0, span: 1 },
            ],
        };
        let report = validate_tiling(&alpha, &t);
        assert!(report.cites(Rule::Cover));
        assert!(t.cells().is_err());
    }

    #[test]
    fn red_tile_in_last_row_is_malformed() {
        let alpha: Composition = "2,2".parse().unwrap();
        let t = AlphaTiling {
            alpha: alpha.clone(),
            width: 1,
            tiles: vec![
                Tile { kind: TileKind::Yellow, row: 1, start: 0, span: 1 },
                Tile { kind: TileKind::Red, row: 2, start: 0, span: 1 },
            ],
        };
        assert!(validate_tiling(&alpha, &t).cites(Rule::Shape));
    }

    #[test]
    fn width_two_renders() {
        let g = f("2,2");
        for o in antichain_orbits(&g).unwrap() {
            let t = tiling_of_orbit(&g, &o).unwrap();
            let ascii = render_ascii(&t).unwrap();
            assert_eq!(parse_ascii(&ascii).len(), 2);
            assert!(render_svg(&t).unwrap().starts_with("<svg"));
        }
    }

    #[test]
    fn wrapping_black_tile_uses_seam_marks() {
        let (g, o) = five_orbit();
        let t = tiling_of_orbit(&g, &o).unwrap().rotated(2);
        let ascii = render_ascii(&t).unwrap();
        assert!(ascii.lines().any(|l| l.starts_with('~') && l.ends_with('~')));
        assert!(render_svg(&t).unwrap().contains("class=\"seam\""));
        assert!(t.equivalent(&tiling_of_orbit(&g, &o).unwrap()).unwrap());
    }
}
