//! Exact linear algebra over `Q`.
//!
//! Vectors are sparse (sorted `(index, value)` pairs). The workhorse is
//! [`Echelon`], an incrementally built row-echelon basis that can also record
//! how each stored row is expressed in terms of the vectors that were fed in.
//! Pivoting is deterministic: the pivot of a row is its lowest index, and
//! vectors are processed in the order given.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Q;

/// Sparse vector over `Q`, entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Q::one())] }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_insert_with(Q::zero) += c;
        }
        Self::from_map(map)
    }

    pub fn from_dense(values: &[Q]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    fn from_map(map: BTreeMap<usize, Q>) -> Self {
        Self { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, c)| (*i, c * s)).collect() }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Q, other: &SparseVec) -> Self {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * s));
                        b.next();
                    } else {
                        let v = x + y * s;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * s));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut acc = Q::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += x * y;
                a.next();
                b.next();
            }
        }
        acc
    }
}

/// Row-echelon basis of a subspace, built one vector at a time.
///
/// Every stored row has leading coefficient 1 and the rows are kept fully
/// reduced against each other's pivots, so membership tests and coordinate
/// extraction are a single pass.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    /// Expression of each row in terms of the inserted input vectors.
    combos: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered to [`Echelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    /// Reduces `v` against the stored rows. Returns the remainder and the
    /// combination of inserted inputs that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let mut from = 0usize;
        loop {
            let hit = rem
                .entries
                .iter()
                .find(|(i, _)| *i >= from && self.pivot_row.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((col, c)) = hit else { break };
            let r = self.pivot_row[&col];
            rem = rem.add_scaled(&-c.clone(), &self.rows[r]);
            combo = combo.add_scaled(&c, &self.combos[r]);
            from = col + 1;
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`. Returns `Ok(())` if the dimension grew, otherwise
    /// `Err(combo)` where `combo` expresses `v` in terms of earlier inputs.
    pub fn insert(&mut self, v: &SparseVec) -> Result<(), SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        if rem.is_zero() {
            return Err(combo);
        }
        let (pcol, pc) = rem.leading().map(|(i, c)| (i, c.clone())).unwrap();
        let inv = Q::one() / pc;
        let row = rem.scale(&inv);
        let row_combo = SparseVec::unit(idx).add_scaled(&-Q::one(), &combo).scale(&inv);
        // keep rows fully reduced: clear the new pivot from existing rows
        for r in 0..self.rows.len() {
            let c = self.rows[r].get(pcol);
            if !c.is_zero() {
                self.rows[r] = self.rows[r].add_scaled(&-c.clone(), &row);
                self.combos[r] = self.combos[r].add_scaled(&-c, &row_combo);
            }
        }
        self.pivot_row.insert(pcol, self.rows.len());
        self.rows.push(row);
        self.combos.push(row_combo);
        Ok(())
    }

    /// Coordinates of `v` in terms of the inserted inputs, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce(v);
        rem.is_zero().then_some(combo)
    }
}

/// Kernel and image of the linear map sending source basis vector `i` to
/// `images[i]`. Kernel vectors are over source indices.
pub fn kernel_and_image(images: &[SparseVec]) -> (Vec<SparseVec>, Echelon) {
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for img in images {
        if let Err(combo) = ech.insert(img) {
            let idx = ech.inserted() - 1;
            kernel.push(SparseVec::unit(idx).add_scaled(&-Q::one(), &combo));
        }
    }
    (kernel, ech)
}

/// Dense matrix over `Q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_pairs((0..self.rows).map(|i| (i, self.get(i, j).clone())))
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rank(&self) -> usize {
        kernel_and_image(&self.columns()).1.dim()
    }

    /// Basis of the null space, as dense column vectors.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        kernel_and_image(&self.columns()).0.iter().map(|v| v.to_dense(self.cols)).collect()
    }

    /// Some solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let (_, ech) = kernel_and_image(&self.columns());
        ech.express(&SparseVec::from_dense(b)).map(|x| x.to_dense(self.cols))
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + self.get(i, j) * &x[j]))
            .collect()
    }
}

/// A map between graded vector spaces, stored as one matrix per degree.
#[derive(Clone, Debug, Default)]
pub struct GradedLinearMap {
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedLinearMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, degree: i32, m: Matrix) {
        self.blocks.insert(degree, m);
    }

    pub fn block(&self, degree: i32) -> Option<&Matrix> {
        self.blocks.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn identity_full_rank() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert!(Matrix::identity(4).kernel().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = Matrix::zeros(2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 3);
    }

    #[test]
    fn rank_one() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[q(1), q(3)]).is_none());
        let x = a.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn echelon_expresses_inputs() {
        let mut e = Echelon::new();
        let a = SparseVec::from_pairs([(0, q(1)), (2, q(3))]);
        let b = SparseVec::from_pairs([(1, q(2)), (2, q(1))]);
        e.insert(&a).unwrap();
        e.insert(&b).unwrap();
        let v = a.scale(&q(2)).add_scaled(&q(-5), &b);
        let combo = e.express(&v).unwrap();
        assert_eq!(combo, SparseVec::from_pairs([(0, q(2)), (1, q(-5))]));
        assert!(e.insert(&v).is_err());
    }
}
