//! Packed adjacency bit matrix.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest vertex count for which a quadratic-space matrix is built by default.
pub const DEFAULT_MATRIX_MAX_N: usize = 65_536;

/// Symmetric n×n adjacency matrix with a zero diagonal, stored row-major in
/// `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl AdjMatrix {
    /// Builds the matrix of `g`, refusing when `g.n() > max_n`.
    pub fn build(g: &Graph, max_n: usize) -> Result<Self> {
        let n = g.n();
        if n > max_n {
            return Err(Error::capacity("adjacency matrix dimension", n as u64, max_n as u64));
        }
        let words_per_row = n.div_ceil(64);
        let mut bits = vec![0u64; n * words_per_row];
        for u in g.vertices() {
            let row = u as usize * words_per_row;
            for &v in g.neighbors(u) {
                bits[row + v as usize / 64] |= 1u64 << (v % 64);
            }
        }
        Ok(AdjMatrix { n, words_per_row, bits })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> bool {
        let word = self.bits[u as usize * self.words_per_row + v as usize / 64];
        word >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, u: Vertex) -> &[u64] {
        let start = u as usize * self.words_per_row;
        &self.bits[start..start + self.words_per_row]
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `trace(M^3)`, accumulated as `sum over set (i, j) of (M^2)[j][i]`, where
    /// each `(M^2)[j][i]` is the popcount of `row(i) & row(j)`.
    pub fn trace_of_cube(&self) -> u128 {
        let mut trace = 0u128;
        for i in 0..self.n as Vertex {
            let row_i = self.row(i);
            for (w, &word) in row_i.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let j = (w * 64 + rest.trailing_zeros() as usize) as Vertex;
                    rest &= rest - 1;
                    let common: u32 = row_i
                        .iter()
                        .zip(self.row(j))
                        .map(|(a, b)| (a & b).count_ones())
                        .sum();
                    trace += common as u128;
                }
            }
        }
        trace
    }
}
