//! Sparse exact linear algebra: vectors, incremental echelon forms, and
//! column-major sparse matrices.
//!
//! Pivots are always taken at the *largest* nonzero index of a vector.
//! Callers that want a particular elimination preference order their
//! coordinates so that preferred pivots come last.

use std::collections::BTreeMap;

use crate::field::{Field, Scalar};

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        Self {
            entries: vec![(index, field.one())],
        }
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        Self {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in pairs {
            match map.get_mut(&i) {
                Some(v) => *v += &c,
                None => {
                    map.insert(i, c);
                }
            }
        }
        Self::from_map(map)
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

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.last().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb * c));
                        b.next();
                    } else {
                        let s = va + &(vb * c);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.add_scaled(&field.one(), other)
    }

    pub fn sub(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.add_scaled(&-field.one(), other)
    }

    /// Re-indexes every entry; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }

    /// Keeps only entries whose index satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        Self {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }
}

/// Incremental row echelon form with pivots at the largest index of each row.
///
/// In `reduced` mode the rows are kept in reduced row echelon form, so the
/// coordinates of a vector in the row span are its entries at pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    reduced: bool,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            rows: Vec::new(),
            pivot_row: Vec::new(),
            reduced: false,
        }
    }

    /// Keeps the rows in reduced row echelon form on every insertion.
    pub fn reduced(field: Field) -> Self {
        Self {
            reduced: true,
            ..Self::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_of_row(&self, row: usize) -> usize {
        self.rows[row].max_index().expect("echelon rows are nonzero")
    }

    pub fn is_pivot(&self, column: usize) -> bool {
        self.row_for(column).is_some()
    }

    fn row_for(&self, column: usize) -> Option<usize> {
        self.pivot_row.get(column).copied().flatten()
    }

    /// Fully reduces `v` against the rows: the result has no entry in a pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, Scalar> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut bound = usize::MAX;
        loop {
            let hit = work
                .range(..bound)
                .rev()
                .find(|(k, _)| self.row_for(**k).is_some())
                .map(|(k, c)| (*k, c.clone()));
            let Some((col, coeff)) = hit else { break };
            let row = &self.rows[self.row_for(col).unwrap()];
            for (i, r) in row.iter() {
                let delta = r * &coeff;
                match work.get_mut(&i) {
                    Some(x) => {
                        *x -= &delta;
                        if x.is_zero() {
                            work.remove(&i);
                        }
                    }
                    None => {
                        work.insert(i, -delta);
                    }
                }
            }
            bound = col;
        }
        SparseVec::from_map(work)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns its new pivot column when `v` was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (pivot, lead) = r.leading()?;
        let r = r.scale(&lead.inv());
        if self.reduced {
            for row in self.rows.iter_mut() {
                if let Some(c) = row.get(pivot).cloned() {
                    *row = row.add_scaled(&-c, &r);
                }
            }
        }
        if self.pivot_row.len() <= pivot {
            self.pivot_row.resize(pivot + 1, None);
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(r);
        Some(pivot)
    }

    /// Coordinates of a vector of the row span with respect to the rows.
    /// Only meaningful in `reduced` mode.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        debug_assert!(self.reduced);
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(j, row)| v.get(row.max_index().unwrap()).map(|c| (j, c.clone()))),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// A column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Self {
            nrows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < nrows)));
        Self { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, c) in v.iter() {
            for (i, a) in self.cols[j].iter() {
                let t = a * c;
                match acc.get_mut(&i) {
                    Some(x) => *x += &t,
                    None => {
                        acc.insert(i, t);
                    }
                }
            }
        }
        SparseVec::from_map(acc)
    }

    /// `self * rhs`.
    pub fn compose(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch in matrix product");
        SparseMatrix {
            nrows: self.nrows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols: rows.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn rank(&self, field: Field) -> usize {
        rank_of(field, &self.cols)
    }

    /// Basis of the kernel, as vectors in column coordinates.
    pub fn kernel(&self, field: Field) -> Vec<SparseVec> {
        kernel_of(field, &self.cols, self.nrows)
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.cols[col].get(row)
    }

    pub fn add_scaled(&self, c: &Scalar, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows);
        assert_eq!(self.ncols(), other.ncols());
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        }
    }
}

pub fn rank_of(field: Field, vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(field);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Kernel of the linear map whose column images are `columns` (each living
/// in a space of dimension `target_dim`).
pub fn kernel_of(field: Field, columns: &[SparseVec], target_dim: usize) -> Vec<SparseVec> {
    let n = columns.len();
    let _ = target_dim;
    let mut ech = Echelon::new(field);
    for (i, col) in columns.iter().enumerate() {
        let mut pairs: Vec<(usize, Scalar)> = col.iter().map(|(w, c)| (n + w, c.clone())).collect();
        pairs.push((i, field.one()));
        ech.insert(&SparseVec::from_pairs(pairs));
    }
    ech.rows()
        .iter()
        .filter(|r| r.max_index().unwrap() < n)
        .cloned()
        .collect()
}
