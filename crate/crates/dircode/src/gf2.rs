//! Bit-packed dense linear algebra over GF(2).
//!
//! All operations are exact and leave their inputs untouched; elimination
//! always runs on internal copies, so values can be shared freely across
//! threads.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("index ({row}, {col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of unequal-length vectors");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

/// A row-major bit-packed matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            let base = i * m.words_per_row;
            m.bits[base..base + m.words_per_row].copy_from_slice(&r.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Result<bool, Gf2Error> {
        if row >= self.rows || col >= self.cols {
            return Err(Gf2Error::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((self.bits[row * self.words_per_row + col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        let idx = row * self.words_per_row + col / WORD_BITS;
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn toggle(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        self.bits[row * self.words_per_row + col / WORD_BITS] ^= 1u64 << (col % WORD_BITS);
    }

    pub fn row(&self, r: usize) -> BitVec {
        assert!(r < self.rows, "row {r} out of range");
        let base = r * self.words_per_row;
        BitVec {
            len: self.cols,
            words: self.bits[base..base + self.words_per_row].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c).unwrap() {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c).unwrap() {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let wpr = self.words_per_row;
        let (a, b) = (src * wpr, dst * wpr);
        for w in 0..wpr {
            let v = self.bits[a + w];
            self.bits[b + w] ^= v;
        }
    }

    /// Rank over GF(2). The input is not modified.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let pivot = (rank..work.rows).find(|&r| work.get(r, col).unwrap());
            let Some(p) = pivot else { continue };
            if p != rank {
                work.swap_rows(p, rank);
            }
            for r in 0..work.rows {
                if r != rank && work.get(r, col).unwrap() {
                    work.xor_row_into(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.bits.swap(a * wpr + w, b * wpr + w);
        }
    }

    /// A basis for the right kernel {x : M x = 0}; has cols - rank elements.
    pub fn right_kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let pivot = (rank..work.rows).find(|&r| work.get(r, col).unwrap());
            let Some(p) = pivot else { continue };
            work.swap_rows(p, rank);
            for r in 0..work.rows {
                if r != rank && work.get(r, col).unwrap() {
                    work.xor_row_into(rank, r);
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..work.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = BitVec::zeros(work.cols);
            x.set(free, true);
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                if work.get(r, free).unwrap() {
                    x.set(pc, true);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Dimension of the left kernel {y : yᵀ M = 0}; equals rows - rank.
    pub fn left_kernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// A basis for the left kernel, as row-combination coefficient vectors.
    pub fn left_kernel_basis(&self) -> Vec<BitVec> {
        self.transpose().right_kernel_basis()
    }

    /// True iff v is a GF(2) combination of the rows of this matrix.
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let base_rank = self.rank();
        let mut augmented = self.clone();
        augmented.rows += 1;
        augmented.bits.extend_from_slice(&v.words);
        Ok(augmented.rank() == base_rank)
    }

    /// Matrix product mod 2.
    pub fn mul_mod2(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for mid in 0..self.cols {
                if self.get(r, mid).unwrap() {
                    let src = mid * other.words_per_row;
                    let dst = r * out.words_per_row;
                    for w in 0..other.words_per_row {
                        out.bits[dst + w] ^= other.bits[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product mod 2.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let base = r * self.words_per_row;
            let mut acc = 0u64;
            for w in 0..self.words_per_row {
                acc ^= self.bits[base + w] & v.words[w];
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }
}

/// Row space of a matrix in reduced form, for repeated membership queries.
///
/// Built once, then `contains` costs one reduction pass instead of a full
/// rank computation per query.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    // (pivot column, reduced row) pairs, pivots strictly increasing
    reduced: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let mut reduced: Vec<(usize, BitVec)> = Vec::new();
        for r in 0..m.rows() {
            let mut row = m.row(r);
            for (pc, basis_row) in &reduced {
                if row.get(*pc) {
                    row.xor_assign(basis_row);
                }
            }
            if let Some(pivot) = row.support().first().copied() {
                reduced.push((pivot, row));
                reduced.sort_by_key(|(p, _)| *p);
            }
        }
        // back-substitute so each pivot column appears in exactly one row
        let snapshot = reduced.clone();
        for (pc, row) in reduced.iter_mut() {
            for (other_pc, other_row) in &snapshot {
                if other_pc != pc && row.get(*other_pc) {
                    row.xor_assign(other_row);
                }
            }
        }
        RowSpace {
            cols: m.cols(),
            reduced,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Reduce v by the stored basis; the result is zero iff v is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = v.clone();
        for (pc, row) in &self.reduced {
            if out.get(*pc) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.5) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
    }

    #[test]
    fn rank_matches_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=64);
            let cols = rng.gen_range(1..=64);
            let m = random_matrix(&mut rng, rows, cols);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn transpose_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_matrix(&mut rng, 13, 70);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn kernel_basis_annihilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 10, 20);
            let basis = m.right_kernel_basis();
            assert_eq!(basis.len(), m.cols() - m.rank());
            for x in &basis {
                assert!(m.mul_vec(x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn kernel_trivial_cases() {
        assert!(BitMatrix::identity(2).right_kernel_basis().is_empty());
        let m = BitMatrix::from_rows(&[BitVec::from_bits(&[1, 1])]);
        let basis = m.right_kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], BitVec::from_bits(&[1, 1]));
    }

    #[test]
    fn left_kernel_dim_cases() {
        assert_eq!(BitMatrix::identity(3).left_kernel_dim(), 0);
        let row = BitVec::from_bits(&[1, 0, 1]);
        let m = BitMatrix::from_rows(&[row.clone(), row]);
        assert_eq!(m.left_kernel_dim(), 1);
    }

    #[test]
    fn left_kernel_dim_equals_rows_minus_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 12, 9);
            assert_eq!(m.left_kernel_dim(), m.rows() - m.rank());
        }
    }

    #[test]
    fn row_space_membership() {
        let m = BitMatrix::from_rows(&[BitVec::from_bits(&[1, 1, 0, 0])]);
        assert!(m.in_row_space(&BitVec::zeros(4)).unwrap());
        assert!(!m.in_row_space(&BitVec::from_bits(&[0, 0, 1, 1])).unwrap());
        let id = BitMatrix::identity(4);
        assert!(id.in_row_space(&BitVec::from_bits(&[1, 0, 1, 1])).unwrap());
        assert!(m.in_row_space(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn in_row_space_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 6, 8);
            let v = random_matrix(&mut rng, 1, 8).row(0);
            let mut found = false;
            for mask in 0u32..(1 << m.rows()) {
                let mut acc = BitVec::zeros(8);
                for r in 0..m.rows() {
                    if (mask >> r) & 1 == 1 {
                        acc.xor_assign(&m.row(r));
                    }
                }
                if acc == v {
                    found = true;
                    break;
                }
            }
            assert_eq!(m.in_row_space(&v).unwrap(), found);
        }
    }

    #[test]
    fn mul_mod2_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = random_matrix(&mut rng, 5, 7);
        let id = BitMatrix::identity(5);
        assert_eq!(id.mul_mod2(&m).unwrap(), m);
        let z = BitMatrix::zeros(7, 3);
        assert!(m.mul_mod2(&z).unwrap().is_zero());
        // (1 1) * (1 1)^T = 0: even overlap cancels
        let r = BitMatrix::from_rows(&[BitVec::from_bits(&[1, 1])]);
        let prod = r.mul_mod2(&r.transpose()).unwrap();
        assert!(prod.is_zero());
        assert!(m.mul_mod2(&m).is_err());
    }

    #[test]
    fn row_space_struct_agrees_with_in_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 8, 12);
            let rs = RowSpace::new(&m);
            assert_eq!(rs.rank(), m.rank());
            for _ in 0..10 {
                let v = random_matrix(&mut rng, 1, 12).row(0);
                assert_eq!(rs.contains(&v), m.in_row_space(&v).unwrap());
            }
        }
    }

    #[test]
    fn out_of_range_access_is_an_error() {
        let m = BitMatrix::zeros(2, 3);
        assert!(m.get(2, 0).is_err());
        assert!(m.get(0, 3).is_err());
        assert!(m.get(1, 2).is_ok());
    }
}
