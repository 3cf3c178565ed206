//! Bit-packed linear algebra over GF(2).
//!
//! Row reduction always pivots on the leftmost remaining column and takes the
//! first row holding a one there, so echelon forms (and therefore image bases
//! and solution vectors) are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const WORD: usize = 64;

/// Largest basis the weight enumerator accepts.
pub const MAX_SWEEP_DIM: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("basis vectors are linearly dependent (rank {rank} of {count})")]
    DependentBasis { rank: usize, count: usize },
    #[error("basis size {0} exceeds the enumeration cap of {MAX_SWEEP_DIM}")]
    SweepTooLarge(usize),
}

/// Fixed-length bit vector. Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector { len, words: vec![u64::MAX; len.div_ceil(WORD)] };
        v.clear_tail();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    /// Vector of length `len <= 64` whose bit `i` is bit `i` of `word`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.clear_tail();
        }
        v
    }

    /// Low word, for vectors of length at most 64.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the AND with `other`.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    /// Lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    fn check_len(&self, other: &BitVector) -> Result<(), Gf2Error> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Gf2Error::LengthMismatch { expected: self.len, found: other.len })
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// Rectangular bit matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        for r in &rows {
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch { expected: cols, found: r.len() });
            }
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix { cols: n, rows: (0..n).map(|i| BitVector::unit(n, i)).collect() }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M v` where `v` has one entry per column.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok(BitVector::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>()))
    }

    /// Sum of the rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVector) -> Result<BitVector, Gf2Error> {
        if coeffs.len() != self.rows.len() {
            return Err(Gf2Error::LengthMismatch { expected: self.rows.len(), found: coeffs.len() });
        }
        let mut acc = BitVector::zeros(self.cols);
        for i in coeffs.iter_ones() {
            acc ^= &self.rows[i];
        }
        Ok(acc)
    }
}

/// Reduced row echelon form of a list of vectors, remembering for each
/// pivot row which input vectors sum to it.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    inputs: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
    transforms: Vec<BitVector>,
}

impl Echelon {
    pub fn new(width: usize, vectors: &[BitVector]) -> Result<Self, Gf2Error> {
        let inputs = vectors.len();
        let mut rows = Vec::with_capacity(inputs);
        for v in vectors {
            if v.len() != width {
                return Err(Gf2Error::LengthMismatch { expected: width, found: v.len() });
            }
            rows.push(v.clone());
        }
        let mut transforms: Vec<BitVector> = (0..inputs).map(|i| BitVector::unit(inputs, i)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..width {
            let Some(found) = (rank..inputs).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            transforms.swap(rank, found);
            let (pivot_row, pivot_tf) = (rows[rank].clone(), transforms[rank].clone());
            for r in 0..inputs {
                if r != rank && rows[r].get(col) {
                    rows[r] ^= &pivot_row;
                    transforms[r] ^= &pivot_tf;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == inputs {
                break;
            }
        }
        rows.truncate(rank);
        transforms.truncate(rank);
        Ok(Echelon { width, inputs, rows, pivots, transforms })
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        Self::new(m.col_count(), m.rows()).expect("matrix rows share one length")
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The nonzero reduced rows: a basis of the row space.
    pub fn basis(&self) -> &[BitVector] {
        &self.rows
    }

    /// Coefficients over the input vectors whose sum is `target`, or `None`
    /// when `target` is outside their span. Only inputs that became pivot rows
    /// can receive a nonzero coefficient.
    pub fn solve(&self, target: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if target.len() != self.width {
            return Err(Gf2Error::LengthMismatch { expected: self.width, found: target.len() });
        }
        let mut residual = target.clone();
        let mut coeffs = BitVector::zeros(self.inputs);
        for (i, &p) in self.pivots.iter().enumerate() {
            if residual.get(p) {
                residual ^= &self.rows[i];
                coeffs ^= &self.transforms[i];
            }
        }
        Ok(residual.is_zero().then_some(coeffs))
    }

    pub fn contains(&self, target: &BitVector) -> Result<bool, Gf2Error> {
        Ok(self.solve(target)?.is_some())
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    Echelon::from_matrix(m).rank()
}

/// Basis of the row space of `m`, as reduced echelon rows.
pub fn image_basis(m: &BitMatrix) -> Vec<BitVector> {
    Echelon::from_matrix(m).basis().to_vec()
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &BitMatrix) -> Vec<BitVector> {
    let e = Echelon::from_matrix(m);
    free_column_basis(&e, m.col_count())
}

fn free_column_basis(e: &Echelon, cols: usize) -> Vec<BitVector> {
    let mut is_pivot = vec![false; cols];
    for &p in e.pivots() {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut x = BitVector::unit(cols, j);
            for (row, &p) in e.basis().iter().zip(e.pivots()) {
                if row.get(j) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// Solution set of `M x = rhs`, or `None` when the system is inconsistent.
pub fn solve_linear_system(m: &BitMatrix, rhs: &BitVector) -> Result<Option<AffineSubspace>, Gf2Error> {
    if rhs.len() != m.row_count() {
        return Err(Gf2Error::LengthMismatch { expected: m.row_count(), found: rhs.len() });
    }
    let cols = m.col_count();
    let augmented: Vec<BitVector> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = BitVector::from_indices(cols + 1, r.iter_ones());
            a.set(cols, rhs.get(i));
            a
        })
        .collect();
    let e = Echelon::new(cols + 1, &augmented)?;
    if e.pivots().last() == Some(&cols) {
        return Ok(None);
    }
    let mut particular = BitVector::zeros(cols);
    for (row, &p) in e.basis().iter().zip(e.pivots()) {
        particular.set(p, row.get(cols));
    }
    let kernel = free_column_basis(&e, cols);
    AffineSubspace::new(particular, kernel).map(Some)
}

/// `basepoint + span(basis)` with a linearly independent basis.
#[derive(Debug, Clone)]
pub struct AffineSubspace {
    basepoint: BitVector,
    basis: Vec<BitVector>,
    echelon: Echelon,
}

impl AffineSubspace {
    pub fn new(basepoint: BitVector, basis: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let echelon = Echelon::new(basepoint.len(), &basis)?;
        if echelon.rank() != basis.len() {
            return Err(Gf2Error::DependentBasis { rank: echelon.rank(), count: basis.len() });
        }
        Ok(AffineSubspace { basepoint, basis, echelon })
    }

    pub fn basepoint(&self) -> &BitVector {
        &self.basepoint
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vector_len(&self) -> usize {
        self.basepoint.len()
    }

    /// Coefficients `c` with `v = basepoint + sum c_i basis_i`, if any.
    pub fn membership(&self, v: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        self.basepoint.check_len(v)?;
        self.echelon.solve(&(v ^ &self.basepoint))
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        Ok(self.membership(v)?.is_some())
    }

    /// `basepoint + sum c_i basis_i`.
    pub fn point(&self, coeffs: &BitVector) -> Result<BitVector, Gf2Error> {
        if coeffs.len() != self.basis.len() {
            return Err(Gf2Error::LengthMismatch { expected: self.basis.len(), found: coeffs.len() });
        }
        let mut v = self.basepoint.clone();
        for i in coeffs.iter_ones() {
            v ^= &self.basis[i];
        }
        Ok(v)
    }

    /// Whether the direction space contains `v`.
    pub fn direction_contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        self.echelon.contains(v)
    }
}

/// True iff the two affine subspaces are the same set of vectors.
pub fn affine_equal(a: &AffineSubspace, b: &AffineSubspace) -> Result<bool, Gf2Error> {
    a.basepoint.check_len(&b.basepoint)?;
    if a.dimension() != b.dimension() || !a.contains(&b.basepoint)? {
        return Ok(false);
    }
    for v in &b.basis {
        if !a.direction_contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of coset elements of each Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightHistogram {
    counts: Vec<u64>,
    basis_size: usize,
    vector_length: usize,
}

/// Serialized histogram. Only nonzero weights appear; JSON keys are the
/// weights in decimal, in ascending numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramFile {
    pub basis_size: usize,
    pub vector_length: usize,
    pub total: u64,
    pub histogram: BTreeMap<usize, u64>,
}

impl WeightHistogram {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn vector_length(&self) -> usize {
        self.vector_length
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Weights with a nonzero count, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&w| self.counts[w] > 0).collect()
    }

    pub fn to_map(&self) -> BTreeMap<usize, u64> {
        self.support().into_iter().map(|w| (w, self.counts[w])).collect()
    }

    pub fn to_file(&self) -> HistogramFile {
        HistogramFile {
            basis_size: self.basis_size,
            vector_length: self.vector_length,
            total: self.total(),
            histogram: self.to_map(),
        }
    }
}

/// Number of top-order coefficients fixed per task for a given worker count.
fn split_bits(workers: usize) -> usize {
    let tasks = workers.max(1) * 8;
    (usize::BITS - (tasks - 1).leading_zeros()) as usize
}

/// Hamming-weight histogram of every vector in `sub`.
///
/// The top coefficients are fixed to split the coset into `2^b` independent
/// sub-sweeps; each sub-sweep walks the remaining coefficients in reflected
/// Gray-code order, so consecutive vectors differ by one basis XOR. The result
/// does not depend on `workers`.
pub fn weight_histogram(sub: &AffineSubspace, workers: usize) -> Result<WeightHistogram, Gf2Error> {
    let dim = sub.dimension();
    if dim > MAX_SWEEP_DIM {
        return Err(Gf2Error::SweepTooLarge(dim));
    }
    let len = sub.vector_len();
    let fixed = split_bits(workers).min(dim);
    let free = dim - fixed;
    let tasks = 1usize << fixed;
    let workers = workers.clamp(1, tasks);
    let next = AtomicUsize::new(0);
    let merged = Mutex::new(vec![0u64; len + 1]);

    let task_start = |t: usize| {
        let mut v = sub.basepoint.clone();
        for j in 0..fixed {
            if t >> j & 1 == 1 {
                v ^= &sub.basis[free + j];
            }
        }
        v
    };
    let run = || {
        let mut local = vec![0u64; len + 1];
        loop {
            let t = next.fetch_add(1, Ordering::Relaxed);
            if t >= tasks {
                break;
            }
            let start = task_start(t);
            match (start.as_u64(), len <= WORD) {
                (Some(word), true) => {
                    let low: Vec<u64> = sub.basis[..free].iter().map(|b| b.as_u64().unwrap()).collect();
                    sweep_word(word, &low, &mut local);
                }
                _ => sweep_multiword(&start, &sub.basis[..free], &mut local),
            }
        }
        let mut m = merged.lock().unwrap();
        for (a, b) in m.iter_mut().zip(&local) {
            *a += b;
        }
    };
    if workers == 1 {
        run();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(run);
            }
        });
    }
    Ok(WeightHistogram { counts: merged.into_inner().unwrap(), basis_size: dim, vector_length: len })
}

const BLOCK_BITS: usize = 4;
const BLOCK: usize = 1 << BLOCK_BITS;

fn sweep_word(start: u64, basis: &[u64], hist: &mut [u64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("popcnt") {
            // SAFETY: the popcnt feature was detected at runtime.
            unsafe { sweep_word_popcnt(start, basis, hist) };
            return;
        }
    }
    sweep_word_generic(start, basis, hist);
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn sweep_word_popcnt(start: u64, basis: &[u64], hist: &mut [u64]) {
    sweep_word_generic(start, basis, hist)
}

#[inline(always)]
fn sweep_word_generic(start: u64, basis: &[u64], hist: &mut [u64]) {
    if basis.len() < BLOCK_BITS {
        let mut v = start;
        hist[v.count_ones() as usize] += 1;
        for t in 1u64..1 << basis.len() {
            v ^= basis[t.trailing_zeros() as usize];
            hist[v.count_ones() as usize] += 1;
        }
        return;
    }
    // All 16 combinations of the four lowest vectors, so each block of the
    // sweep is one high-part vector XOR the table.
    let mut offsets = [0u64; BLOCK];
    for i in 1..BLOCK {
        offsets[i] = offsets[i - 1] ^ basis[i.trailing_zeros() as usize];
    }
    let high = &basis[BLOCK_BITS..];
    let blocks = 1u64 << high.len();
    // Four lanes break the store-to-load chain on repeated weights.
    let mut lanes = [[0u64; WORD + 1]; 4];
    let mut v = start;
    for b in 0..blocks {
        for (i, off) in offsets.iter().enumerate() {
            lanes[i & 3][(v ^ off).count_ones() as usize] += 1;
        }
        let nb = b + 1;
        if nb < blocks {
            v ^= high[nb.trailing_zeros() as usize];
        }
    }
    for lane in &lanes {
        for (h, c) in hist.iter_mut().zip(lane) {
            *h += c;
        }
    }
}

fn sweep_multiword(start: &BitVector, basis: &[BitVector], hist: &mut [u64]) {
    let mut v = start.clone();
    hist[v.count_ones()] += 1;
    for t in 1u64..1 << basis.len() {
        v ^= &basis[t.trailing_zeros() as usize];
        hist[v.count_ones()] += 1;
    }
}
