//! Dense GF(2) matrices, 64 columns per word.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

pub fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

/// Bytes used by a `rows x cols` matrix.
pub fn matrix_bytes(rows: usize, cols: usize) -> u64 {
    rows as u64 * words_for(cols) as u64 * 8
}

fn leftmost(row: &[u64], from_word: usize) -> Option<usize> {
    row[from_word..]
        .iter()
        .position(|&w| w != 0)
        .map(|i| (from_word + i) * 64 + row[from_word + i].trailing_zeros() as usize)
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    /// Toggles entry `(r, c)`.
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.data.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    /// In-place row echelon form with the leftmost available pivot, taking the
    /// first eligible row. Returns the pivot column of each of the first
    /// `rank` rows.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (cw, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * w + cw] & bit != 0) else {
                continue;
            };
            self.swap_rows(rank, p);
            let (head, tail) = self.data.split_at_mut((rank + 1) * w);
            let prow = &head[rank * w + cw..rank * w + w];
            for row in tail.chunks_exact_mut(w) {
                if row[cw] & bit != 0 {
                    for (x, &y) in row[cw..].iter_mut().zip(prow) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }
}

/// A basis in echelon form that grows one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    words: usize,
    rows: Vec<Vec<u64>>,
    by_pivot: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon {
            words: words_for(cols),
            rows: Vec::new(),
            by_pivot: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by the basis; the result has no pivot column set.
    pub fn reduce(&self, v: &mut [u64]) {
        if v.is_empty() {
            return;
        }
        let mut from = 0;
        while let Some(c) = self.next_pivot_in(v, from, v[from]) {
            from = c / 64;
            let i = self.by_pivot[c].expect("pivot column");
            for (x, &y) in v[from..].iter_mut().zip(&self.rows[i][from..]) {
                *x ^= y;
            }
        }
    }

    /// The leftmost set bit of `v` that is a pivot column, scanning from word
    /// `from` whose remaining bits are `first`.
    fn next_pivot_in(&self, v: &[u64], from: usize, first: u64) -> Option<usize> {
        let mut word = first;
        let mut wi = from;
        loop {
            while word != 0 {
                let c = wi * 64 + word.trailing_zeros() as usize;
                if self.by_pivot[c].is_some() {
                    return Some(c);
                }
                word &= word - 1;
            }
            wi += 1;
            if wi >= self.words {
                return None;
            }
            word = v[wi];
        }
    }

    /// Adds `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.words);
        self.reduce(&mut v);
        match leftmost(&v, 0) {
            Some(c) => {
                self.by_pivot[c] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_rank(rows: &[Vec<bool>]) -> usize {
        let mut a = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..a.len()).find(|&r| a[r][c]) {
                a.swap(rank, p);
                let pr = a[rank].clone();
                for (r, row) in a.iter_mut().enumerate() {
                    if r != rank && row[c] {
                        for (x, &y) in row.iter_mut().zip(&pr) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn echelon_rank_matches_naive_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let (r, c) = (rng.gen_range(1..40), rng.gen_range(1..150));
            let density = rng.gen_range(0.02..0.6);
            let dense: Vec<Vec<bool>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_bool(density)).collect())
                .collect();
            let mut m = BitMatrix::zeros(r, c);
            let mut inc = Echelon::new(c);
            for (i, row) in dense.iter().enumerate() {
                let mut v = vec![0u64; words_for(c)];
                for (j, &b) in row.iter().enumerate() {
                    if b {
                        m.flip(i, j);
                        v[j / 64] |= 1 << (j % 64);
                    }
                }
                inc.insert(v);
            }
            let pivots = m.echelonize();
            let rank = naive_rank(&dense);
            assert_eq!(pivots.len(), rank);
            assert_eq!(inc.rank(), rank);
            for (i, &p) in pivots.iter().enumerate() {
                assert!(m.get(i, p));
                assert!((0..p).all(|j| !m.get(i, j)));
            }
            assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
