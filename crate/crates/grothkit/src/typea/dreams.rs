//! Pipe dreams: staircase tilings that compute the stable polynomials.
//!
//! A dream of size n tiles the staircase whose i-th row has n - i cells with
//! crossings, bumps, and marked crossings. Pipes enter at the left edge of
//! rows 1..n, move only north and east, and leave through the top, turning at
//! every bump-like tile and at the boundary. The permutation of a dream sends
//! each entry row to its exit column. A marked crossing routes like a bump
//! but demands that its two pipes cross again northeast of it, which the
//! tracer in [`route`] checks literally, pipe by pipe.

use super::{check_permutation, cross_weight, ending_weight, TypeAError};
use crate::charring::{BetaScalar, Block, CharElement};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tile {
    Bump,
    Cross,
    MarkedCross,
}

/// A validated tiling together with the permutation its pipes trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipeDream {
    n: usize,
    tiles: Vec<Vec<Tile>>,
    permutation: Vec<usize>,
}

/// Everything the tracer learns: exit columns per entry row, the two pipes
/// through every cell (west arrival first), and the cells where each pair of
/// pipes crosses.
struct Routing {
    exits: Vec<usize>,
    meetings: BTreeMap<(usize, usize), [usize; 2]>,
    crossings: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
}

fn route(n: usize, tiles: &[Vec<Tile>]) -> Routing {
    let mut exits = vec![0; n];
    let mut meet: BTreeMap<(usize, usize), [Option<usize>; 2]> = BTreeMap::new();
    for p in 1..=n {
        let (mut i, mut j, mut from_west) = (p, 1, true);
        loop {
            if i == 0 {
                exits[p - 1] = j;
                break;
            }
            let turns = if j == n - i + 1 {
                // Boundary tile: a single west-to-north arc.
                debug_assert!(from_west, "boundary tiles are entered from the west");
                true
            } else {
                let slot = usize::from(!from_west);
                meet.entry((i, j)).or_default()[slot] = Some(p);
                matches!(tiles[i - 1][j - 1], Tile::Bump | Tile::MarkedCross)
            };
            if from_west == turns {
                i -= 1;
                from_west = false;
            } else {
                j += 1;
                from_west = true;
            }
        }
    }
    let mut meetings = BTreeMap::new();
    let mut crossings: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (&cell, pair) in &meet {
        let west = pair[0].expect("every cell carries two pipes");
        let south = pair[1].expect("every cell carries two pipes");
        meetings.insert(cell, [west, south]);
        if tiles[cell.0 - 1][cell.1 - 1] == Tile::Cross {
            crossings
                .entry((west.min(south), west.max(south)))
                .or_default()
                .push(cell);
        }
    }
    Routing { exits, meetings, crossings }
}

fn validate(tiles: &[Vec<Tile>], routing: &Routing) -> Result<(), TypeAError> {
    for (&(a, b), cells) in &routing.crossings {
        if cells.len() > 1 {
            return Err(TypeAError::DoubleCrossing(a, b));
        }
    }
    for (i, row) in tiles.iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            if t != Tile::MarkedCross {
                continue;
            }
            let (row_ix, col_ix) = (i + 1, j + 1);
            let [west, south] = routing.meetings[&(row_ix, col_ix)];
            let crossed_northeast = routing
                .crossings
                .get(&(west.min(south), west.max(south)))
                .is_some_and(|cells| cells.iter().any(|&(ci, cj)| ci < row_ix && cj > col_ix));
            if !crossed_northeast {
                return Err(TypeAError::BadMark { row: row_ix, col: col_ix });
            }
        }
    }
    Ok(())
}

impl PipeDream {
    /// Validate a tiling: staircase shape, every pair of pipes crossing at
    /// most once, and every marked tile's pipes crossing northeast of it.
    pub fn new(n: usize, tiles: Vec<Vec<Tile>>) -> Result<Self, TypeAError> {
        assert!(n >= 1, "size must be positive");
        if tiles.len() != n - 1 {
            return Err(TypeAError::WrongRowCount { n, got: tiles.len(), expected: n - 1 });
        }
        for (i, row) in tiles.iter().enumerate() {
            if row.len() != n - 1 - i {
                return Err(TypeAError::WrongRowLength {
                    n,
                    row: i + 1,
                    got: row.len(),
                    expected: n - 1 - i,
                });
            }
        }
        let routing = route(n, &tiles);
        validate(&tiles, &routing)?;
        Ok(PipeDream { n, tiles, permutation: routing.exits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tiles(&self) -> &[Vec<Tile>] {
        &self.tiles
    }

    /// One-line notation: entry `i - 1` is the exit column of the pipe
    /// entering at row i.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn has_marks(&self) -> bool {
        self.tiles.iter().flatten().any(|&t| t == Tile::MarkedCross)
    }

    pub fn crossing_count(&self) -> usize {
        self.tiles.iter().flatten().filter(|&&t| t == Tile::Cross).count()
    }

    /// The letters of the non-bump tiles in product order, rows top to
    /// bottom and right to left within a row; the tile at (i, j) is the
    /// letter i + j - 1.
    pub fn word(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, row) in self.tiles.iter().enumerate() {
            for j in (0..row.len()).rev() {
                if row[j] != Tile::Bump {
                    out.push(i + j + 1);
                }
            }
        }
        out
    }

    /// The product of tile weights: 1 per bump, `beta^{-1}(1 - Y_j/X_i)` per
    /// crossing at (i, j), and `-(1 - Y_j/X_i)` per marked crossing.
    pub fn weight(&self) -> CharElement {
        let mut out = CharElement::one(self.n - 1, vec![Block::X, Block::Y]);
        for (i, row) in self.tiles.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                let w = match t {
                    Tile::Bump => continue,
                    Tile::Cross => cross_weight(self.n, i + 1, j + 1),
                    Tile::MarkedCross => {
                        cross_weight(self.n, i + 1, j + 1).scale(&BetaScalar::monomial(1, -1))
                    }
                };
                out = &out * &w;
            }
        }
        out
    }

    /// The grid with one line per row: `.` bump, `+` crossing, `*` marked
    /// crossing, `/` the boundary arc.
    pub fn ascii(&self) -> String {
        let mut lines = Vec::new();
        for row in &self.tiles {
            let mut parts: Vec<&str> = row
                .iter()
                .map(|t| match t {
                    Tile::Bump => ".",
                    Tile::Cross => "+",
                    Tile::MarkedCross => "*",
                })
                .collect();
            parts.push("/");
            lines.push(parts.join(" "));
        }
        lines.push("/".to_string());
        lines.join("\n")
    }

    /// The grid as a LaTeX array.
    pub fn latex(&self) -> String {
        let mut rows = Vec::new();
        for row in &self.tiles {
            let mut parts: Vec<&str> = row
                .iter()
                .map(|t| match t {
                    Tile::Bump => "\\cdot",
                    Tile::Cross => "+",
                    Tile::MarkedCross => "\\ast",
                })
                .collect();
            parts.push("\\nearrow");
            rows.push(parts.join(" & "));
        }
        rows.push("\\nearrow".to_string());
        format!(
            "\\begin{{array}}{{{}}}\n{}\n\\end{{array}}",
            "l".repeat(self.n),
            rows.join(" \\\\\n")
        )
    }
}

fn staircase_cells(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..=(n - i) {
            out.push((i, j));
        }
    }
    out
}

fn tiles_from_digits(n: usize, cells: &[(usize, usize)], mut idx: usize) -> Vec<Vec<Tile>> {
    let mut tiles: Vec<Vec<Tile>> = (1..n).map(|i| vec![Tile::Bump; n - i]).collect();
    for &(i, j) in cells {
        tiles[i - 1][j - 1] = match idx % 3 {
            0 => Tile::Bump,
            1 => Tile::Cross,
            _ => Tile::MarkedCross,
        };
        idx /= 3;
    }
    tiles
}

pub(crate) fn all_valid_dreams(n: usize) -> Vec<PipeDream> {
    let cells = staircase_cells(n);
    let total = 3usize.pow(cells.len() as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|idx| PipeDream::new(n, tiles_from_digits(n, &cells, idx)).ok())
        .collect()
}

/// Every valid dream reading the given permutation, with its weight. The sum
/// of the weights is [`super::grothendieck_poly`] of the permutation.
pub fn enumerate_pipe_dreams(n: usize, perm: &[usize]) -> Vec<(PipeDream, CharElement)> {
    assert_eq!(perm.len(), n, "one-line notation for S_{n} has {n} entries");
    check_permutation(perm).unwrap_or_else(|e| panic!("{e}"));
    all_valid_dreams(n)
        .into_iter()
        .filter(|d| d.permutation() == perm)
        .map(|d| {
            let w = d.weight();
            (d, w)
        })
        .collect()
}

/// A reduced base dream with an overlay that may only differ at the base's
/// crossings. The overlay's weight against the base depends on where the two
/// pipes through each base crossing end up in the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationDreamPair {
    base: PipeDream,
    overlay: PipeDream,
}

fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

fn reduced_base(base: &PipeDream) -> bool {
    !base.has_marks() && base.crossing_count() == inversions(&base.permutation)
}

impl LocalizationDreamPair {
    pub fn new(base: PipeDream, overlay: PipeDream) -> Result<Self, TypeAError> {
        if base.n != overlay.n {
            return Err(TypeAError::MismatchedSizes { base: base.n, overlay: overlay.n });
        }
        if !reduced_base(&base) {
            return Err(TypeAError::NotReducedBase);
        }
        for (i, row) in base.tiles.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                if t != Tile::Cross && overlay.tiles[i][j] != t {
                    return Err(TypeAError::BaseDisagreement { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(LocalizationDreamPair { base, overlay })
    }

    pub fn base(&self) -> &PipeDream {
        &self.base
    }

    pub fn overlay(&self) -> &PipeDream {
        &self.overlay
    }

    /// The product over the base's crossings: where the base's two pipes end
    /// at columns i > j of the base, an overlay bump contributes 1, a
    /// crossing `beta^{-1}(1 - X_j/X_i)`, and a marked crossing
    /// `-(1 - X_j/X_i)`.
    pub fn weight(&self) -> CharElement {
        let n = self.base.n;
        let routing = route(n, &self.base.tiles);
        let mut out = CharElement::one(n - 1, vec![Block::X]);
        for (i, row) in self.base.tiles.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                if t != Tile::Cross {
                    continue;
                }
                let [west, south] = routing.meetings[&(i + 1, j + 1)];
                let (a, b) = (routing.exits[west - 1], routing.exits[south - 1]);
                let w = match self.overlay.tiles[i][j] {
                    Tile::Bump => continue,
                    Tile::Cross => ending_weight(n, a.max(b), a.min(b)),
                    Tile::MarkedCross => ending_weight(n, a.max(b), a.min(b))
                        .scale(&BetaScalar::monomial(1, -1)),
                };
                out = &out * &w;
            }
        }
        out
    }
}

/// All pairs over a reduced base whose overlay reads the target permutation.
pub fn localization_dream_pairs(
    base: &PipeDream,
    target: &[usize],
) -> Result<Vec<LocalizationDreamPair>, TypeAError> {
    if !reduced_base(base) {
        return Err(TypeAError::NotReducedBase);
    }
    if target.len() != base.n {
        return Err(TypeAError::NotAPermutation(target.to_vec()));
    }
    check_permutation(target)?;
    let free: Vec<(usize, usize)> = staircase_cells(base.n)
        .into_iter()
        .filter(|&(i, j)| base.tiles[i - 1][j - 1] == Tile::Cross)
        .collect();
    let mut pairs = Vec::new();
    for idx in 0..3usize.pow(free.len() as u32) {
        let mut tiles = base.tiles.clone();
        let mut digits = idx;
        for &(i, j) in &free {
            tiles[i - 1][j - 1] = match digits % 3 {
                0 => Tile::Bump,
                1 => Tile::Cross,
                _ => Tile::MarkedCross,
            };
            digits /= 3;
        }
        let Ok(overlay) = PipeDream::new(base.n, tiles) else { continue };
        if overlay.permutation() == target {
            let pair = LocalizationDreamPair::new(base.clone(), overlay)
                .expect("overlays are built over the base");
            pairs.push(pair);
        }
    }
    Ok(pairs)
}

/// The localization value at the target permutation: the sum of pair weights
/// over the base. Equals the subset sum over the word read from the base.
pub fn localization_pipe_dreams(
    base: &PipeDream,
    target: &[usize],
) -> Result<CharElement, TypeAError> {
    let pairs = localization_dream_pairs(base, target)?;
    let mut out = CharElement::zero(base.n - 1, vec![Block::X]);
    for pair in &pairs {
        out = &out + &pair.weight();
    }
    Ok(out)
}
