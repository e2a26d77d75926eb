//! Bit-packed elimination for p = 2. Rows are stored as `u64` words and row
//! operations become word-wise XOR.

pub(crate) struct PackedRows {
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl PackedRows {
    pub(crate) fn from_dense(rows: usize, cols: usize, data: &[u32]) -> Self {
        let words = cols.div_ceil(64).max(1);
        let mut bits = vec![0u64; rows * words];
        for r in 0..rows {
            let src = &data[r * cols..(r + 1) * cols];
            let dst = &mut bits[r * words..(r + 1) * words];
            for (c, &v) in src.iter().enumerate() {
                if v & 1 == 1 {
                    dst[c / 64] |= 1u64 << (c % 64);
                }
            }
        }
        PackedRows { cols, words, bits }
    }

    fn rows(&self) -> usize {
        self.bits.len() / self.words
    }

    #[inline]
    fn bit(&self, r: usize, c: usize) -> bool {
        (self.bits[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.bits.swap(a * self.words + w, b * self.words + w);
        }
    }

    fn xor_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in from_word..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    /// Full reduction in place; returns pivot columns in increasing order.
    pub(crate) fn rref(&mut self) -> Vec<usize> {
        let rows = self.rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows {
                break;
            }
            let Some(found) = (r..rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            self.swap_rows(r, found);
            let word = c / 64;
            for i in 0..rows {
                if i != r && self.bit(i, c) {
                    self.xor_into(r, i, word);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub(crate) fn to_dense(&self) -> Vec<u32> {
        let rows = self.rows();
        let mut out = vec![0u32; rows * self.cols];
        for r in 0..rows {
            for c in 0..self.cols {
                if self.bit(r, c) {
                    out[r * self.cols + c] = 1;
                }
            }
        }
        out
    }
}
