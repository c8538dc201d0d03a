//! Structural analysis of CHMs.
//!
//! A 2x2 submatrix `[[a, b], [c, d]]` with unimodular entries is Hadamard
//! (proportional to a unitary) iff its rows are orthogonal,
//! `a c* + b d* = 0`. Multiplying by `c d` gives the equivalent polynomial
//! form `a d + b c = 0`, which is what the census tests. Equivalently the
//! cross ratio `a d / (b c)` equals `-1`.
//!
//! Two Hadamard submatrices that share exactly one row and one column meet at a
//! common cell; dephasing at that cell turns the union of their rows and
//! columns into the pattern `[[1,1,1],[1,-1,*],[1,*,-1]]`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::chm::Chm;
use crate::error::{ChmError, Result};
use crate::matrix::{CMatrix, C64};
use crate::tol::Tolerances;

/// `([i, j], [k, l])` with `i < j`, `k < l`.
pub type Position = ([usize; 2], [usize; 2]);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Borderline {
    pub position: Position,
    /// `|a d + b c|`.
    pub value: f64,
    pub counted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmatrixCensus {
    pub dim: usize,
    pub count: usize,
    pub positions: Vec<Position>,
    /// Values in `[eps_orth, 4 eps_orth]`, counted or not.
    pub borderline: Vec<Borderline>,
}

impl SubmatrixCensus {
    pub fn contains(&self, pos: &Position) -> bool {
        self.positions.binary_search(pos).is_ok()
    }
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = [usize; 2]> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| [i, j]))
}

/// Census of a square matrix that need not be certified.
pub fn census_matrix(m: &CMatrix, tol: &Tolerances) -> SubmatrixCensus {
    let d = m.rows();
    let threshold = tol.census_threshold();
    let (lo, hi) = (tol.eps_orth, 4.0 * tol.eps_orth);
    let mut positions = Vec::new();
    let mut borderline = Vec::new();
    for rows @ [i, j] in pairs(d) {
        for cols @ [k, l] in pairs(m.cols()) {
            let v = (m[(i, k)] * m[(j, l)] + m[(i, l)] * m[(j, k)]).norm();
            let counted = v < threshold;
            if counted {
                positions.push((rows, cols));
            }
            if (lo..=hi).contains(&v) {
                borderline.push(Borderline {
                    position: (rows, cols),
                    value: v,
                    counted,
                });
            }
        }
    }
    // Enumeration order is already lexicographic.
    SubmatrixCensus {
        dim: d,
        count: positions.len(),
        positions,
        borderline,
    }
}

pub fn census(h: &Chm, tol: &Tolerances) -> SubmatrixCensus {
    census_matrix(h.matrix(), tol)
}

pub fn is_h2_reducible(h: &Chm, tol: &Tolerances) -> bool {
    census(h, tol).count >= 1
}

/// The nine positions `{2a, 2a+1} x {2b, 2b+1}` of a 6x6 block structure.
pub fn aligned_block_positions() -> Vec<Position> {
    let mut v = Vec::with_capacity(9);
    for a in 0..3 {
        for b in 0..3 {
            v.push(([2 * a, 2 * a + 1], [2 * b, 2 * b + 1]));
        }
    }
    v
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealBlockReport {
    pub shape: (usize, usize),
    pub blocks: Vec<RealBlock>,
}

/// Whether the block can be made entrywise real by row and column phases.
///
/// Dephasing the block at its first row and column leaves entries
/// `h_ab h_00 / (h_0b h_a0)`, each a cross ratio; the block is real up to
/// phases iff all of them are `+1` or `-1`.
pub fn block_is_real(m: &CMatrix, rows: &[usize], cols: &[usize], eps: f64) -> bool {
    let (r0, c0) = (rows[0], cols[0]);
    let anchor = m[(r0, c0)];
    rows[1..].iter().all(|&r| {
        cols[1..].iter().all(|&c| {
            let e = m[(r, c)] * anchor / (m[(r0, c)] * m[(r, c0)]);
            (e - 1.0).norm().min((e + 1.0).norm()) < eps
        })
    })
}

pub fn real_block_search(h: &Chm, r: usize, c: usize, tol: &Tolerances) -> Result<RealBlockReport> {
    let d = h.dim();
    if !(2..=d).contains(&r) || !(2..=d).contains(&c) {
        return Err(ChmError::InvalidConfig(format!(
            "block shape ({r},{c}) must lie within 2..={d}"
        )));
    }
    let m = h.matrix();
    let col_sets = combinations(d, c);
    let mut blocks = Vec::new();
    for rows in combinations(d, r) {
        for cols in &col_sets {
            if block_is_real(m, &rows, cols, tol.eps_match) {
                blocks.push(RealBlock {
                    rows: rows.clone(),
                    cols: cols.clone(),
                });
            }
        }
    }
    Ok(RealBlockReport {
        shape: (r, c),
        blocks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerPair {
    pub first: Position,
    pub second: Position,
    /// The shared `(row, col)` cell.
    pub corner: (usize, usize),
}

fn shared_one(a: [usize; 2], b: [usize; 2]) -> Option<usize> {
    let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
    (common.len() == 1).then(|| common[0])
}

/// Pairs of Hadamard positions sharing exactly one row and exactly one column.
pub fn shared_corner_pairs(cen: &SubmatrixCensus) -> Vec<CornerPair> {
    let mut out = Vec::new();
    for (n, p) in cen.positions.iter().enumerate() {
        for q in &cen.positions[n + 1..] {
            if let (Some(r), Some(c)) = (shared_one(p.0, q.0), shared_one(p.1, q.1)) {
                out.push(CornerPair {
                    first: *p,
                    second: *q,
                    corner: (r, c),
                });
            }
        }
    }
    out
}

/// Sorted multiset of quantized cross-ratio phases, closed under conjugation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub levels: u64,
    pub phases: Vec<u64>,
}

pub const DEFAULT_FINGERPRINT_LEVELS: u64 = 1_000_000;

pub fn fingerprint(h: &Chm) -> Fingerprint {
    fingerprint_with_levels(h, DEFAULT_FINGERPRINT_LEVELS)
}

pub fn fingerprint_with_levels(h: &Chm, levels: u64) -> Fingerprint {
    let m = h.matrix();
    let d = h.dim();
    let q = TAU / levels as f64;
    let n = levels as i64;
    let mut phases = Vec::new();
    for [i, j] in pairs(d) {
        for [k, l] in pairs(d) {
            let cr: C64 = m[(i, k)] * m[(j, l)] / (m[(i, l)] * m[(j, k)]);
            let bin = (cr.arg() / q).round() as i64;
            phases.push(bin.rem_euclid(n) as u64);
            phases.push((-bin).rem_euclid(n) as u64);
        }
    }
    phases.sort_unstable();
    Fingerprint { levels, phases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chm::validate_chm;
    use crate::families::{build_bjorck, build_fourier, build_h2, H2Params};

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 2).len(), 15);
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn f2_is_single_hadamard_block() {
        let f = build_fourier(2).unwrap();
        let c = census(&f, &Tolerances::default());
        assert_eq!(c.count, 1);
        assert_eq!(c.positions, vec![([0, 1], [0, 1])]);
    }

    #[test]
    fn fourier_census_matches_congruence_oracle() {
        let f = build_fourier(6).unwrap();
        let cen = census(&f, &Tolerances::default());
        // independent oracle: (j - i)(l - k) = 3 mod 6
        let oracle: Vec<Position> = pairs(6)
            .flat_map(|r| pairs(6).map(move |c| (r, c)))
            .filter(|([i, j], [k, l])| ((j - i) * (l - k)) % 6 == 3)
            .collect();
        assert_eq!(oracle.len(), 45);
        assert_eq!(cen.positions, oracle);
        assert!(cen.borderline.is_empty());
    }

    #[test]
    fn generic_h2_has_aligned_blocks_only() {
        let tol = Tolerances::default();
        let h = build_h2(&H2Params::from_arg(0.7, 1.3, 0.4), &tol).unwrap();
        let cen = census(&h, &tol);
        assert_eq!(cen.positions, aligned_block_positions());
        assert!(shared_corner_pairs(&cen).is_empty());
        assert!(is_h2_reducible(&h, &tol));
    }

    #[test]
    fn fourier_real_block() {
        let tol = Tolerances::default();
        let f = build_fourier(6).unwrap();
        let rep = real_block_search(&f, 2, 3, &tol).unwrap();
        assert!(rep.blocks.contains(&RealBlock {
            rows: vec![0, 3],
            cols: vec![0, 2, 4]
        }));
        assert!(real_block_search(&f, 1, 3, &tol).is_err());
    }

    #[test]
    fn block_reality_is_phase_invariant() {
        // rows scaled by arbitrary phases stay real up to equivalence
        let m = CMatrix::from_rows(vec![
            vec![C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.6, 0.8), C64::new(0.6, 0.8), C64::new(-0.6, -0.8)],
        ])
        .unwrap();
        assert!(block_is_real(&m, &[0, 1], &[0, 1, 2], 1e-9));
        let mut n = m.clone();
        n[(1, 2)] = C64::new(0.0, 1.0);
        assert!(!block_is_real(&n, &[0, 1], &[0, 1, 2], 1e-9));
    }

    #[test]
    fn shared_corner_geometry() {
        let cen = SubmatrixCensus {
            dim: 6,
            count: 3,
            positions: vec![([0, 1], [0, 1]), ([0, 2], [1, 3]), ([2, 3], [2, 3])],
            borderline: vec![],
        };
        let pairs = shared_corner_pairs(&cen);
        // the first and last positions are disjoint
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].corner, (0, 1));
        assert_eq!(pairs[1].corner, (2, 3));
    }

    #[test]
    fn fingerprints_distinguish_fourier_and_bjorck() {
        let f = build_fourier(6).unwrap();
        let b = build_bjorck().unwrap();
        assert_eq!(fingerprint(&f), fingerprint(&f));
        assert_ne!(fingerprint(&f), fingerprint(&b));
    }

    #[test]
    fn borderline_values_flagged() {
        let tol = Tolerances::default();
        let f = build_fourier(2).unwrap();
        let mut m = f.into_matrix();
        // a d + b c moves from 0 to about 1.5 eps_orth
        let delta = 1.5 * tol.eps_orth;
        m[(1, 1)] = C64::from_polar(1.0, std::f64::consts::PI + delta);
        let h = validate_chm(m, &Tolerances::new(1e-9, 1e-7, 1e-6).unwrap()).unwrap();
        let cen = census(&h, &tol);
        assert_eq!(cen.count, 1);
        assert_eq!(cen.borderline.len(), 1);
        assert!(cen.borderline[0].counted);
    }
}
