//! Dense bit-packed linear algebra over GF(2).
//!
//! Every matrix in this crate — circulants, stacked parity checks, the
//! self-orthogonal adaptations, permutation blocks — is carried by
//! [`BinMatrix`], a row-major matrix packed 64 bits per word. Row overlap,
//! products, and self-orthogonality checks reduce to AND + popcount on
//! whole words, which is all the performance this problem size needs.
//!
//! Elimination (rank, row-space membership, null-space bases) uses a fixed
//! pivot order (lowest column first, first available row) so results are
//! deterministic across runs and platforms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A fixed-length bit vector over GF(2), packed least-significant-bit first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinVector {
    len: usize,
    words: Vec<u64>,
}

impl BinVector {
    pub fn zeros(len: usize) -> Self {
        BinVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
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

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BinVector) {
        assert_eq!(self.len, other.len, "xor of different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Number of positions set in both vectors.
    pub fn overlap(&self, other: &BinVector) -> usize {
        assert_eq!(self.len, other.len, "overlap of different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    pub fn parity_overlap(&self, other: &BinVector) -> bool {
        self.overlap(other) % 2 == 1
    }

    /// Right cyclic shift by `k`: bit `i` moves to position `(i + k) mod len`.
    pub fn shifted_right(&self, k: usize) -> BinVector {
        let mut out = Self::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        let k = k % self.len;
        for i in self.support() {
            out.set((i + k) % self.len, true);
        }
        out
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn first_difference(&self, other: &BinVector) -> Option<usize> {
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let d = a ^ b;
            if d != 0 {
                return Some(wi * WORD_BITS + d.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// Coordinate-wise lexicographic order on the bit tuple `(b_0, ..., b_{len-1})`.
impl Ord for BinVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert_eq!(self.len, other.len, "comparing vectors of different lengths");
        match self.first_difference(other) {
            None => std::cmp::Ordering::Equal,
            // At the first differing coordinate, the vector holding 0 is smaller.
            Some(i) => {
                if self.get(i) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                }
            }
        }
    }
}

impl PartialOrd for BinVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Dense bit-packed matrix over GF(2), row-major.
///
/// Trailing bits past `cols` in the last word of each row are kept zero;
/// every operation relies on that invariant.
#[derive(Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    row_words: usize,
    data: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let row_words = words_for(cols);
        BinMatrix {
            rows,
            cols,
            row_words,
            data: vec![0; rows * row_words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Single all-ones column.
    pub fn ones_column(rows: usize) -> Self {
        let mut m = Self::zeros(rows, 1);
        for i in 0..rows {
            m.set(i, 0, true);
        }
        m
    }

    pub fn from_rows(rows: &[BinVector]) -> Self {
        let cols = rows.first().map_or(0, BinVector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "rows of different lengths");
            m.data[i * m.row_words..(i + 1) * m.row_words].copy_from_slice(r.words());
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Test and fixture helper.
    pub fn from_bit_rows(rows: &[&[u8]]) -> Self {
        let vecs: Vec<BinVector> = rows.iter().map(|r| BinVector::from_bits(r)).collect();
        Self::from_rows(&vecs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.row_words + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.data[r * self.row_words + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_slice(&self, r: usize) -> &[u64] {
        &self.data[r * self.row_words..(r + 1) * self.row_words]
    }

    pub fn row_vec(&self, r: usize) -> BinVector {
        BinVector {
            len: self.cols,
            words: self.row_slice(r).to_vec(),
        }
    }

    pub fn col_vec(&self, c: usize) -> BinVector {
        let mut v = BinVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_slice(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for r in 0..self.rows {
            for c in self.row_vec(r).support() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row_vec(r).support()
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &BinMatrix) -> Result<BinMatrix> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {}x{} and {}x{}",
                self.rows, self.cols, right.rows, right.cols
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                m.set(r, c, true);
            }
            for c in right.row_support(r) {
                m.set(r, self.cols + c, true);
            }
        }
        Ok(m)
    }

    /// Vertical concatenation `[self; bottom]`.
    pub fn vstack(&self, bottom: &BinMatrix) -> Result<BinMatrix> {
        if self.cols != bottom.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {}x{} and {}x{}",
                self.rows, self.cols, bottom.rows, bottom.cols
            )));
        }
        let mut m = Self::zeros(self.rows + bottom.rows, self.cols);
        m.data[..self.data.len()].copy_from_slice(&self.data);
        m.data[self.data.len()..].copy_from_slice(&bottom.data);
        Ok(m)
    }

    /// n x n circulant whose row `j` is the right cyclic shift of `v` by `j`.
    pub fn circulant(v: &BinVector) -> Result<BinMatrix> {
        let n = v.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "circulant of an empty vector".into(),
            ));
        }
        let mut m = Self::zeros(n, n);
        let support = v.support();
        for j in 0..n {
            for &s in &support {
                m.set(j, (s + j) % n, true);
            }
        }
        Ok(m)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BinMatrix) -> Result<BinMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                let (dst, src) = (r * out.row_words, c * rhs.row_words);
                for w in 0..rhs.row_words {
                    out.data[dst + w] ^= rhs.data[src + w];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`, e.g. a syndrome.
    pub fn mul_vector(&self, v: &BinVector) -> Result<BinVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} with vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BinVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_slice(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn rank_gf2(&self) -> usize {
        RowBasis::new(self).rank()
    }

    /// Number of shared nonzero columns between rows `i` and `j`.
    pub fn overlap(&self, i: usize, j: usize) -> usize {
        self.row_slice(i)
            .iter()
            .zip(self.row_slice(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// First `(i, j)` with `i <= j` whose GF(2) inner product is 1, i.e. the
    /// first witness that `self * self^T != 0`. Diagonal hits mean an
    /// odd-weight row.
    pub fn first_self_orthogonality_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i..self.rows {
                if self.overlap(i, j) % 2 == 1 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True iff `self * self^T = 0` over GF(2): every row has even weight and
    /// every row pair overlaps in an even number of positions.
    pub fn is_self_orthogonal(&self) -> bool {
        self.first_self_orthogonality_violation().is_none()
    }

    /// Histogram of overlaps over unordered row pairs.
    pub fn overlap_profile(&self) -> OverlapProfile {
        let mut histogram = BTreeMap::new();
        for i in 0..self.rows {
            for j in i + 1..self.rows {
                *histogram.entry(self.overlap(i, j)).or_insert(0usize) += 1;
            }
        }
        OverlapProfile { histogram }
    }

    /// Per-pair 4-cycle statistics plus the girth of the Tanner graph.
    ///
    /// Two rows sharing `t` columns contribute `C(t, 2)` 4-cycles. The girth
    /// is found by breadth-first search from every vertex of the bipartite
    /// check/variable graph; `None` means the graph is acyclic.
    pub fn four_cycles_and_girth(&self) -> CycleReport {
        let mut pair_histogram: BTreeMap<u64, usize> = BTreeMap::new();
        let mut total: u64 = 0;
        for i in 0..self.rows {
            for j in i + 1..self.rows {
                let t = self.overlap(i, j) as u64;
                let cycles = t * t.saturating_sub(1) / 2;
                *pair_histogram.entry(cycles).or_insert(0) += 1;
                total += cycles;
            }
        }
        CycleReport {
            four_cycle_total: total,
            pair_histogram,
            girth: self.tanner_girth(),
        }
    }

    /// Girth of the Tanner graph (check nodes = rows, variable nodes = columns).
    pub fn tanner_girth(&self) -> Option<usize> {
        let nv = self.rows + self.cols;
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for r in 0..self.rows {
            for c in self.row_support(r) {
                adj[r].push((self.rows + c) as u32);
                adj[self.rows + c].push(r as u32);
            }
        }
        let mut best = usize::MAX;
        let mut dist = vec![u32::MAX; nv];
        let mut parent = vec![u32::MAX; nv];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..nv {
            dist.fill(u32::MAX);
            parent.fill(u32::MAX);
            queue.clear();
            dist[start] = 0;
            queue.push_back(start as u32);
            while let Some(u) = queue.pop_front() {
                let du = dist[u as usize] as usize;
                if 2 * du >= best {
                    break;
                }
                for &w in &adj[u as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = du as u32 + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        // Non-tree edge closes a cycle through the BFS root.
                        best = best.min(du + dist[w as usize] as usize + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Basis of the right null space `{ x : self * x = 0 }`.
    pub fn null_space_basis(&self) -> Vec<BinVector> {
        // Reduced row echelon form, tracking pivot columns.
        let mut rows: Vec<BinVector> = (0..self.rows)
            .map(|r| self.row_vec(r))
            .filter(|v| !v.is_zero())
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut reduced: Vec<BinVector> = Vec::new();
        for col in 0..self.cols {
            let Some(idx) = rows.iter().position(|v| v.get(col)) else {
                continue;
            };
            let pivot_row = rows.swap_remove(idx);
            for v in rows.iter_mut().chain(reduced.iter_mut()) {
                if v.get(col) {
                    v.xor_assign(&pivot_row);
                }
            }
            rows.retain(|v| !v.is_zero());
            reduced.push(pivot_row);
            pivots.push(col);
        }
        let is_pivot: Vec<bool> = {
            let mut mask = vec![false; self.cols];
            for &p in &pivots {
                mask[p] = true;
            }
            mask
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BinVector::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in reduced.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            debug_assert!(self.mul_vector(&v).unwrap().is_zero());
            basis.push(v);
        }
        basis
    }

    /// Minimum Hamming weight over nonzero null-space codewords.
    ///
    /// With at most [`DISTANCE_FULL_ENUM_MAX_COLS`] columns the whole null
    /// space is enumerated and the answer is exact regardless of `weight_cap`.
    /// Wider matrices fall back to [`min_distance_bounded`] with the given
    /// cap.
    ///
    /// [`min_distance_bounded`]: BinMatrix::min_distance_bounded
    pub fn min_distance_exhaustive(&self, weight_cap: usize) -> MinDistance {
        if self.cols <= DISTANCE_FULL_ENUM_MAX_COLS {
            self.min_distance_full_enumeration()
        } else {
            self.min_distance_bounded(weight_cap)
        }
    }

    fn min_distance_full_enumeration(&self) -> MinDistance {
        debug_assert!(self.cols <= DISTANCE_FULL_ENUM_MAX_COLS);
        let basis = self.null_space_basis();
        if basis.is_empty() {
            return MinDistance::NoNonzeroCodeword;
        }
        // Codewords fit one word; walk all combinations in Gray-code order.
        let masks: Vec<u64> = basis.iter().map(|v| v.words()[0]).collect();
        let k = masks.len();
        let mut current = 0u64;
        let mut best = u32::MAX;
        for g in 1u64..(1u64 << k) {
            current ^= masks[g.trailing_zeros() as usize];
            best = best.min(current.count_ones());
        }
        MinDistance::Exact(best as usize)
    }

    /// Searches for a null-space codeword of weight at most `weight_cap` by
    /// enumerating column supports of increasing size. The smallest weight
    /// found is the exact minimum distance; if none exists within the cap the
    /// result is [`MinDistance::ExceedsCap`].
    pub fn min_distance_bounded(&self, weight_cap: usize) -> MinDistance {
        if self.rank_gf2() == self.cols {
            return MinDistance::NoNonzeroCodeword;
        }
        let columns: Vec<BinVector> = (0..self.cols).map(|c| self.col_vec(c)).collect();
        for w in 1..=weight_cap.min(self.cols) {
            if Self::support_search(&columns, w) {
                return MinDistance::Exact(w);
            }
        }
        MinDistance::ExceedsCap { cap: weight_cap }
    }

    /// True iff some `w` columns XOR to zero.
    fn support_search(columns: &[BinVector], w: usize) -> bool {
        let n = columns.len();
        let rows = columns.first().map_or(0, BinVector::len);
        let mut chosen = vec![0usize; w];
        let mut acc: Vec<BinVector> = vec![BinVector::zeros(rows); w + 1];
        fn rec(
            columns: &[BinVector],
            chosen: &mut [usize],
            acc: &mut [BinVector],
            depth: usize,
            first: usize,
            w: usize,
            n: usize,
        ) -> bool {
            if depth == w {
                return acc[w].is_zero();
            }
            for c in first..n - (w - depth - 1) {
                chosen[depth] = c;
                let mut next = acc[depth].clone();
                next.xor_assign(&columns[c]);
                acc[depth + 1] = next;
                if rec(columns, chosen, acc, depth + 1, c + 1, w, n) {
                    return true;
                }
            }
            false
        }
        rec(columns, &mut chosen, &mut acc, 0, 0, w, n)
    }
}

/// Full-null-space enumeration is used at or below this many columns;
/// above it [`BinMatrix::min_distance_exhaustive`] switches to the
/// bounded-weight search.
pub const DISTANCE_FULL_ENUM_MAX_COLS: usize = 30;

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row_vec(r))?;
        }
        Ok(())
    }
}

/// Histogram of pairwise row overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapProfile {
    histogram: BTreeMap<usize, usize>,
}

impl OverlapProfile {
    pub fn histogram(&self) -> &BTreeMap<usize, usize> {
        &self.histogram
    }

    pub fn count(&self, overlap: usize) -> usize {
        self.histogram.get(&overlap).copied().unwrap_or(0)
    }

    pub fn total_pairs(&self) -> usize {
        self.histogram.values().sum()
    }

    /// True iff every pair has exactly the given overlap.
    pub fn is_uniform(&self, overlap: usize) -> bool {
        self.histogram.len() == 1 && self.histogram.contains_key(&overlap)
            || self.histogram.is_empty()
    }
}

/// 4-cycle census and girth of a matrix's Tanner graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub four_cycle_total: u64,
    /// Map from per-pair 4-cycle count to the number of row pairs with it.
    pub pair_histogram: BTreeMap<u64, usize>,
    /// `None` when the Tanner graph is acyclic.
    pub girth: Option<usize>,
}

/// Result of a minimum-distance search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Exact(usize),
    ExceedsCap { cap: usize },
    /// The null space is trivial; the "code" has no nonzero codeword.
    NoNonzeroCodeword,
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Exact(d) => write!(f, "{d}"),
            MinDistance::ExceedsCap { cap } => write!(f, "exceeds cap {cap}"),
            MinDistance::NoNonzeroCodeword => write!(f, "no nonzero codeword"),
        }
    }
}

/// Echelonized row basis of a matrix, for rank and row-space membership.
#[derive(Debug, Clone)]
pub struct RowBasis {
    cols: usize,
    rows: Vec<BinVector>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(m: &BinMatrix) -> Self {
        let mut basis = RowBasis {
            cols: m.cols(),
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for r in 0..m.rows() {
            basis.insert(m.row_vec(r));
        }
        basis
    }

    fn insert(&mut self, mut v: BinVector) {
        self.reduce_in_place(&mut v);
        if let Some(p) = v.support().first().copied() {
            // Keep pivot order sorted so reduction stays deterministic.
            let at = self.pivots.partition_point(|&q| q < p);
            self.pivots.insert(at, p);
            self.rows.insert(at, v);
        }
    }

    fn reduce_in_place(&self, v: &mut BinVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True iff `v` lies in the row space.
    pub fn contains(&self, v: &BinVector) -> bool {
        assert_eq!(v.len(), self.cols, "vector length differs from basis");
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        r.is_zero()
    }
}
