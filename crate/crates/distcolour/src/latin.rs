//! Latin squares, the reduction to single-vertex-pair instances, and
//! size-3 partial transversals of order-4 squares.
//!
//! Deleting one row of a 4×4 Latin square leaves three rows, each a
//! permutation column ↦ symbol. Reading those as distortions on three
//! parallel edges between a single vertex pair turns a proper
//! distortion-colouring into three cells with distinct rows, columns and
//! symbols: a transversal of size n−1 = 3.

use crate::distortion::{all_permutations, Distortion};
use crate::engine::solve;
use crate::error::{Axis, Error};
use crate::instance::DistortionInstance;

/// An n×n array over symbols `{0, …, n-1}` where every row and every
/// column is a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    /// Validates the Latin property; errors carry the offending row or
    /// column.
    pub fn new(n: usize, cells: Vec<u8>) -> Result<Self, Error> {
        assert_eq!(cells.len(), n * n, "cell count must be n²");
        let sq = LatinSquare { n, cells };
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let s = sq.get(r, c);
                if s as usize >= n || seen[s as usize] {
                    return Err(Error::NotLatin {
                        axis: Axis::Row,
                        index: r,
                        symbol: s,
                    });
                }
                seen[s as usize] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let s = sq.get(r, c);
                if seen[s as usize] {
                    return Err(Error::NotLatin {
                        axis: Axis::Column,
                        index: c,
                        symbol: s,
                    });
                }
                seen[s as usize] = true;
            }
        }
        Ok(sq)
    }

    /// The cyclic square `cells[r][c] = (r + c) mod n`.
    pub fn cyclic(n: usize) -> Self {
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| ((r + c) % n) as u8))
            .collect();
        LatinSquare { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    /// Parses the text format: n lines of n space-separated integers in
    /// `{0, …, n-1}`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let n = lines.len();
        if n == 0 {
            return Err(Error::BadLatinFile {
                line: 1,
                detail: "empty file".into(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, line) in lines.iter().enumerate() {
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != n {
                return Err(Error::BadLatinFile {
                    line: i + 1,
                    detail: format!("expected {n} entries, found {}", entries.len()),
                });
            }
            for entry in entries {
                let value: usize = entry.parse().map_err(|_| Error::BadLatinFile {
                    line: i + 1,
                    detail: format!("{entry:?} is not an integer"),
                })?;
                if value >= n {
                    return Err(Error::BadLatinFile {
                        line: i + 1,
                        detail: format!("symbol {value} out of range 0..{n}"),
                    });
                }
                cells.push(value as u8);
            }
        }
        Self::new(n, cells)
    }

    pub fn to_text(&self) -> String {
        (0..self.n)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(u8::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A set of cells with pairwise distinct rows, columns and symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    /// (row, column, symbol) triples.
    pub cells: Vec<(usize, usize, u8)>,
}

impl Transversal {
    /// Structural validity against a square, independent of how the
    /// transversal was found.
    pub fn check(&self, sq: &LatinSquare) -> bool {
        for (i, &(r, c, s)) in self.cells.iter().enumerate() {
            if r >= sq.n() || c >= sq.n() || sq.get(r, c) != s {
                return false;
            }
            for &(r2, c2, s2) in &self.cells[i + 1..] {
                if r == r2 || c == c2 || s == s2 {
                    return false;
                }
            }
        }
        true
    }
}

/// The permutations attached to the single vertex pair of the reduction:
/// at most d of them, each acting on `{0, …, d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripartiteInstance {
    pub d: u8,
    pub perms: Vec<Distortion>,
}

/// Reads the rows of an order-4 square, minus one, as permutations
/// column ↦ symbol.
pub fn latin_to_instance(sq: &LatinSquare, deleted_row: usize) -> Result<TripartiteInstance, Error> {
    if sq.n() != 4 {
        return Err(Error::OrderNotSupported { n: sq.n() });
    }
    if deleted_row >= 4 {
        return Err(Error::RowOutOfRange {
            row: deleted_row,
            n: 4,
        });
    }
    let perms = (0..4)
        .filter(|&r| r != deleted_row)
        .map(|r| Distortion::new(sq.row(r).to_vec()))
        .collect::<Result<_, _>>()?;
    Ok(TripartiteInstance { d: 3, perms })
}

/// One parallel edge per permutation between a single vertex pair. A
/// proper distortion-colouring of the result picks distinct A-side
/// colours (columns) with distinct images (symbols) — a matching of all
/// of V1 in the hypergraph reading.
pub fn permutations_to_instance(t: &TripartiteInstance) -> Result<DistortionInstance, Error> {
    if t.perms.len() > t.d as usize {
        return Err(Error::TooManyPermutations {
            got: t.perms.len(),
            max: t.d as usize,
        });
    }
    let mut inst = DistortionInstance::new(t.d, 1, 1);
    for perm in &t.perms {
        inst.add_edge(0, 0, perm.clone());
    }
    Ok(inst)
}

/// Finds a size-3 transversal of an order-4 Latin square by deleting
/// `deleted_row`, solving the reduction, and mapping edge i with A-side
/// colour c to the cell (row_i, c, sq[row_i][c]).
pub fn find_partial_transversal(
    sq: &LatinSquare,
    deleted_row: usize,
) -> Result<Transversal, Error> {
    let t = latin_to_instance(sq, deleted_row)?;
    let inst = permutations_to_instance(&t)?;
    let f = solve(&inst)?;
    let rows: Vec<usize> = (0..4).filter(|&r| r != deleted_row).collect();
    let cells = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let col = f.get(i).expect("solver output is complete") as usize;
            (r, col, sq.get(r, col))
        })
        .collect();
    Ok(Transversal { cells })
}

/// All 576 Latin squares of order 4, by row-by-row backtracking over
/// lexicographically ordered candidate rows. The output is sorted by the
/// row-major cell sequence.
pub fn enumerate_latin_4() -> Vec<LatinSquare> {
    let rows = all_permutations(4);
    let mut out = Vec::new();
    let mut chosen: Vec<&Vec<u8>> = Vec::new();
    let mut col_used = [[false; 4]; 4]; // col_used[c][s]

    fn fits(row: &[u8], col_used: &[[bool; 4]; 4]) -> bool {
        row.iter().enumerate().all(|(c, &s)| !col_used[c][s as usize])
    }

    fn rec<'a>(
        rows: &'a [Vec<u8>],
        chosen: &mut Vec<&'a Vec<u8>>,
        col_used: &mut [[bool; 4]; 4],
        out: &mut Vec<LatinSquare>,
    ) {
        if chosen.len() == 4 {
            let cells: Vec<u8> = chosen.iter().flat_map(|r| r.iter().copied()).collect();
            out.push(LatinSquare { n: 4, cells });
            return;
        }
        for row in rows {
            if !fits(row, col_used) {
                continue;
            }
            for (c, &s) in row.iter().enumerate() {
                col_used[c][s as usize] = true;
            }
            chosen.push(row);
            rec(rows, chosen, col_used, out);
            chosen.pop();
            for (c, &s) in row.iter().enumerate() {
                col_used[c][s as usize] = false;
            }
        }
    }

    rec(&rows, &mut chosen, &mut col_used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exhaustive_solve;

    #[test]
    fn cyclic_square_is_latin() {
        for n in 1..8 {
            let sq = LatinSquare::cyclic(n);
            LatinSquare::new(n, sq.cells.clone()).unwrap();
        }
    }

    #[test]
    fn new_rejects_row_repeat() {
        let err = LatinSquare::new(2, vec![0, 0, 1, 1]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotLatin {
                axis: Axis::Row,
                index: 0,
                symbol: 0
            }
        ));
    }

    #[test]
    fn new_rejects_column_repeat() {
        // rows fine, column 0 repeats 0
        let err = LatinSquare::new(2, vec![0, 1, 0, 1]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotLatin {
                axis: Axis::Column,
                index: 0,
                symbol: 0
            }
        ));
    }

    #[test]
    fn parse_roundtrip() {
        let sq = LatinSquare::cyclic(4);
        let text = sq.to_text();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(LatinSquare::parse(&text).unwrap(), sq);
    }

    #[test]
    fn parse_rejects_ragged_lines() {
        assert!(matches!(
            LatinSquare::parse("0 1\n1"),
            Err(Error::BadLatinFile { line: 2, .. })
        ));
    }

    #[test]
    fn cyclic_deletion_gives_delay_rows() {
        let sq = LatinSquare::cyclic(4);
        let t = latin_to_instance(&sq, 0).unwrap();
        assert_eq!(t.perms.len(), 3);
        for (i, k) in (1..4).enumerate() {
            assert_eq!(t.perms[i], Distortion::delay(k, 3));
        }
    }

    #[test]
    fn deleting_other_rows_works_too() {
        let sq = LatinSquare::cyclic(4);
        for dr in 0..4 {
            let t = latin_to_instance(&sq, dr).unwrap();
            assert_eq!(t.perms.len(), 3);
            let inst = permutations_to_instance(&t).unwrap();
            assert_eq!(inst.num_edges(), 3);
        }
    }

    #[test]
    fn latin_to_instance_rejects_other_orders() {
        let sq = LatinSquare::cyclic(5);
        assert!(matches!(
            latin_to_instance(&sq, 0),
            Err(Error::OrderNotSupported { n: 5 })
        ));
    }

    #[test]
    fn permutations_to_instance_solves() {
        let t = TripartiteInstance {
            d: 3,
            perms: vec![
                Distortion::identity(3),
                Distortion::delay(1, 3),
                Distortion::delay(2, 3),
            ],
        };
        let inst = permutations_to_instance(&t).unwrap();
        let f = solve(&inst).unwrap();
        assert!(crate::instance::verify_colouring(&inst, &f).is_empty());
        // independent existence check
        let r = exhaustive_solve(&inst, 1_000_000);
        assert!(r.witness().is_some());
    }

    #[test]
    fn empty_and_oversized_permutation_lists() {
        let empty = TripartiteInstance { d: 3, perms: vec![] };
        assert_eq!(permutations_to_instance(&empty).unwrap().num_edges(), 0);
        let four = TripartiteInstance {
            d: 3,
            perms: vec![Distortion::identity(3); 4],
        };
        assert!(matches!(
            permutations_to_instance(&four),
            Err(Error::TooManyPermutations { got: 4, max: 3 })
        ));
    }

    #[test]
    fn transversal_of_cyclic_square() {
        let sq = LatinSquare::cyclic(4);
        let t = find_partial_transversal(&sq, 0).unwrap();
        assert_eq!(t.cells.len(), 3);
        assert!(t.check(&sq));
    }

    #[test]
    fn transversal_of_klein_table() {
        // rows: identity, (0 1)(2 3), (0 2)(1 3), (0 3)(1 2)
        let sq = LatinSquare::new(
            4,
            vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0],
        )
        .unwrap();
        let t = find_partial_transversal(&sq, 0).unwrap();
        assert!(t.check(&sq));
    }

    #[test]
    fn transversal_check_rejects_bad_cells() {
        let sq = LatinSquare::cyclic(4);
        let wrong_symbol = Transversal {
            cells: vec![(1, 0, 0)], // cell is actually 1
        };
        assert!(!wrong_symbol.check(&sq));
        let repeated_column = Transversal {
            cells: vec![(1, 0, 1), (2, 0, 2)],
        };
        assert!(!repeated_column.check(&sq));
    }

    #[test]
    fn enumeration_count_and_first_square() {
        let squares = enumerate_latin_4();
        assert_eq!(squares.len(), 576);
        assert_eq!(
            squares[0].cells,
            vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]
        );
        let distinct: std::collections::HashSet<_> = squares.iter().map(|s| &s.cells).collect();
        assert_eq!(distinct.len(), 576);
        for sq in &squares {
            LatinSquare::new(4, sq.cells.clone()).unwrap();
        }
    }

    // Independent count: enumerate the first two rows directly and add the
    // permanent (Ryser) of the remaining availability matrix. Choosing row
    // 2 is a perfect matching of that matrix and row 3 is then forced, so
    // the number of completions of a 2-row rectangle equals its permanent.
    #[test]
    fn enumeration_count_against_permanent() {
        fn permanent(m: &[[u8; 4]; 4]) -> i64 {
            let mut total = 0i64;
            for mask in 0..16u32 {
                let mut prod = 1i64;
                for row in m {
                    let mut sum = 0i64;
                    for (c, &x) in row.iter().enumerate() {
                        if mask & (1 << c) != 0 {
                            sum += x as i64;
                        }
                    }
                    prod *= sum;
                }
                let sign = if (4 - mask.count_ones()) % 2 == 0 { 1 } else { -1 };
                total += sign * prod;
            }
            total
        }

        let rows = all_permutations(4);
        let mut count = 0i64;
        for r0 in &rows {
            for r1 in &rows {
                if r0.iter().zip(r1).any(|(a, b)| a == b) {
                    continue;
                }
                let mut avail = [[1u8; 4]; 4]; // avail[col][symbol]
                for c in 0..4 {
                    avail[c][r0[c] as usize] = 0;
                    avail[c][r1[c] as usize] = 0;
                }
                count += permanent(&avail);
            }
        }
        assert_eq!(count, 576);
    }
}
