//! Dense matrices over GF(q) and the primitives the enumeration oracle and the
//! code builder run on: rank, partial trace, exhaustive enumeration and
//! projective canonical representatives.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, FieldTables};

/// Default ceiling on the number of matrices an enumeration may visit.
pub const DEFAULT_ENUMERATION_GUARD: u64 = 1 << 26;

/// Row-major `rows x cols` matrix of field-element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl GfMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Ok(GfMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GfMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    /// Ones on the main diagonal of the leading square block.
    pub fn identity(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Checks that every entry is an element of `field`.
    pub fn check_field(&self, field: &FieldTables) -> Result<()> {
        let q = field.order();
        match self.entries.iter().find(|&&e| e as usize >= q) {
            Some(e) => invalid(format!("entry {e} is not an element of GF({q})")),
            None => Ok(()),
        }
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &GfMatrix, field: &FieldTables) -> Result<GfMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return invalid("shape mismatch in matrix sum");
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        Ok(GfMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: Elem, field: &FieldTables) -> GfMatrix {
        GfMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| field.mul(c, a)).collect(),
        }
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Elem]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "GfMatrix{rows:?}")
    }
}

/// Row-echelon basis built one vector at a time.
///
/// Each stored row is normalized so its pivot entry is 1; inserting a vector
/// reduces it against the stored rows and keeps it if anything is left.
#[derive(Clone, Debug)]
pub struct EchelonBasis<'f> {
    field: &'f FieldTables,
    width: usize,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl<'f> EchelonBasis<'f> {
    pub fn new(width: usize, field: &'f FieldTables) -> Self {
        EchelonBasis { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis in place.
    pub fn reduce(&self, v: &mut [Elem]) {
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(pivot) => {
                let inv = self.field.inv(v[pivot]).unwrap();
                for x in v.iter_mut() {
                    *x = self.field.mul(*x, inv);
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }
}

/// Rank of `m` over the field.
pub fn rank(m: &GfMatrix, field: &FieldTables) -> Result<usize> {
    m.check_field(field)?;
    let mut basis = EchelonBasis::new(m.cols, field);
    for i in 0..m.rows {
        basis.insert(m.row(i));
    }
    Ok(basis.rank())
}

/// Ranks of the leading row blocks: entry `r` is the rank of the first `r`
/// rows, so entry 0 is 0 and the last entry is the rank of `m`.
pub fn prefix_ranks(m: &GfMatrix, field: &FieldTables) -> Vec<usize> {
    let mut basis = EchelonBasis::new(m.cols, field);
    let mut out = Vec::with_capacity(m.rows + 1);
    out.push(0);
    for i in 0..m.rows {
        basis.insert(m.row(i));
        out.push(basis.rank());
    }
    out
}

/// `m_11 + ... + m_rr`.
pub fn partial_trace(m: &GfMatrix, r: usize, field: &FieldTables) -> Result<Elem> {
    if r > m.rows.min(m.cols) {
        return invalid(format!(
            "partial trace index {r} exceeds {}x{} matrix",
            m.rows, m.cols
        ));
    }
    Ok((0..r).fold(0, |acc, i| field.add(acc, m.get(i, i))))
}

/// Scales `m` so its first nonzero entry (row-major) is 1.
///
/// Two nonzero matrices span the same projective point exactly when their
/// canonical representatives coincide.
pub fn canonical_rep(m: &GfMatrix, field: &FieldTables) -> Result<GfMatrix> {
    match m.entries.iter().find(|&&e| e != 0) {
        None => invalid("the zero matrix has no projective representative"),
        Some(&lead) => Ok(m.scale(field.inv(lead).unwrap(), field)),
    }
}

/// Whether `m` is nonzero and already in canonical form.
pub fn is_canonical(m: &GfMatrix) -> bool {
    m.entries.iter().find(|&&e| e != 0) == Some(&1)
}

/// Number of `ell x m` matrices over GF(q), or `None` past `u64`.
pub fn matrix_count(ell: usize, m: usize, q: usize) -> Option<u64> {
    (q as u64).checked_pow((ell * m) as u32)
}

/// Fails with a resource-limit error if `required > limit`.
pub fn check_guard(guard: &'static str, what: String, required: Option<u64>, limit: u64) -> Result<()> {
    match required {
        Some(n) if n <= limit => Ok(()),
        other => Err(Error::ResourceLimit {
            guard,
            what,
            required: other.map_or_else(|| "more than 2^64".to_string(), |n| n.to_string()),
            limit,
        }),
    }
}

/// Every `ell x m` matrix whose leading entries equal a fixed prefix, in
/// row-major lexicographic order of entry indices (last entry fastest).
#[derive(Clone, Debug)]
pub struct MatrixIter {
    rows: usize,
    cols: usize,
    q: Elem,
    fixed: usize,
    current: Vec<Elem>,
    done: bool,
}

impl MatrixIter {
    /// All matrices, provided `q^(ell*m)` is within `guard`.
    pub fn new(ell: usize, m: usize, field: &FieldTables, guard: u64) -> Result<Self> {
        Self::with_prefix(ell, m, field, &[], guard)
    }

    /// Only matrices whose first `prefix.len()` row-major entries equal
    /// `prefix`. The prefixes of one length partition the full enumeration.
    pub fn with_prefix(
        ell: usize,
        m: usize,
        field: &FieldTables,
        prefix: &[Elem],
        guard: u64,
    ) -> Result<Self> {
        let q = field.order();
        check_guard(
            "enumeration",
            format!("{ell}x{m} matrices over GF({q})"),
            matrix_count(ell, m, q),
            guard,
        )?;
        if prefix.len() > ell * m {
            return invalid("prefix longer than the matrix");
        }
        if prefix.iter().any(|&e| e as usize >= q) {
            return invalid("prefix entry outside the field");
        }
        let mut current = vec![0; ell * m];
        current[..prefix.len()].copy_from_slice(prefix);
        Ok(MatrixIter {
            rows: ell,
            cols: m,
            q: q as Elem,
            fixed: prefix.len(),
            current,
            done: false,
        })
    }

    /// Advances the free entries like an odometer; false once exhausted.
    fn step(&mut self) -> bool {
        for k in (self.fixed..self.current.len()).rev() {
            self.current[k] += 1;
            if self.current[k] < self.q {
                return true;
            }
            self.current[k] = 0;
        }
        false
    }

    /// Visits each matrix by reference without allocating.
    pub fn for_each_entries(mut self, mut visit: impl FnMut(&[Elem])) {
        if self.done {
            return;
        }
        loop {
            visit(&self.current);
            if !self.step() {
                break;
            }
        }
        self.done = true;
    }
}

impl Iterator for MatrixIter {
    type Item = GfMatrix;

    fn next(&mut self) -> Option<GfMatrix> {
        if self.done {
            return None;
        }
        let out = GfMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.current.clone(),
        };
        self.done = !self.step();
        Some(out)
    }
}

/// Every matrix of the given shape; see [`MatrixIter`].
pub fn matrices_iter(ell: usize, m: usize, field: &FieldTables, guard: u64) -> Result<MatrixIter> {
    MatrixIter::new(ell, m, field, guard)
}

/// All prefixes of `len` entries, in lexicographic order.
pub fn prefixes(len: usize, field: &FieldTables) -> Vec<Vec<Elem>> {
    let q = field.order() as Elem;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..q).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// A linear form `sum f_ij X_ij`, stored as its coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: GfMatrix,
}

impl LinearForm {
    pub fn new(coeffs: GfMatrix) -> Self {
        LinearForm { coeffs }
    }

    /// The partial trace `X_11 + ... + X_rr` on `ell x m` matrices.
    pub fn partial_trace(r: usize, ell: usize, m: usize) -> Self {
        let mut c = GfMatrix::zeros(ell, m);
        for i in 0..r.min(ell).min(m) {
            c.set(i, i, 1);
        }
        LinearForm { coeffs: c }
    }

    pub fn eval(&self, point: &GfMatrix, field: &FieldTables) -> Result<Elem> {
        if (point.rows, point.cols) != (self.coeffs.rows, self.coeffs.cols) {
            return invalid("linear form and point have different shapes");
        }
        Ok(self.eval_entries(point.entries(), field))
    }

    pub(crate) fn eval_entries(&self, entries: &[Elem], field: &FieldTables) -> Elem {
        self.coeffs
            .entries
            .iter()
            .zip(entries)
            .fold(0, |acc, (&f, &x)| if f == 0 || x == 0 { acc } else { field.add(acc, field.mul(f, x)) })
    }
}

/// Reduced row-echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &GfMatrix, field: &FieldTables) -> (GfMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| a.get(i, col) != 0) else {
            continue;
        };
        for j in 0..a.cols {
            let (x, y) = (a.get(row, j), a.get(p, j));
            a.set(row, j, y);
            a.set(p, j, x);
        }
        let inv = field.inv(a.get(row, col)).unwrap();
        for j in 0..a.cols {
            a.set(row, j, field.mul(inv, a.get(row, j)));
        }
        for i in 0..a.rows {
            let c = a.get(i, col);
            if i != row && c != 0 {
                let nc = field.neg(c);
                for j in 0..a.cols {
                    let v = field.add(a.get(i, j), field.mul(nc, a.get(row, j)));
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// A basis of `{x : m x = 0}`, one vector per row of the result.
pub fn nullspace(m: &GfMatrix, field: &FieldTables) -> GfMatrix {
    let (r, pivots) = rref(m, field);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = GfMatrix::zeros(free.len(), m.cols);
    for (k, &fc) in free.iter().enumerate() {
        basis.set(k, fc, 1);
        for (i, &pc) in pivots.iter().enumerate() {
            basis.set(k, pc, field.neg(r.get(i, fc)));
        }
    }
    basis
}

/// Bit-packed fast path for GF(2).
///
/// Row `i` of an `ell x m` matrix is an `m`-bit word whose most significant
/// bit is column 0, and the matrix with enumeration index `x` has row `i`
/// equal to bits `(ell-1-i)*m ..` of `x`. Counting `x` upwards therefore visits
/// matrices in the same order as [`MatrixIter`].
pub mod packed {
    use super::GfMatrix;
    use crate::field::Elem;

    #[inline]
    pub fn row_of(x: u64, i: usize, ell: usize, m: usize) -> u64 {
        (x >> ((ell - 1 - i) * m)) & ((1u64 << m) - 1)
    }

    #[inline]
    pub fn entry(row: u64, j: usize, m: usize) -> bool {
        (row >> (m - 1 - j)) & 1 == 1
    }

    /// XOR basis keyed by leading bit.
    #[derive(Clone, Copy, Debug)]
    pub struct XorBasis {
        by_lead: [u64; 64],
        rank: usize,
    }

    impl Default for XorBasis {
        fn default() -> Self {
            XorBasis { by_lead: [0; 64], rank: 0 }
        }
    }

    impl XorBasis {
        #[inline]
        pub fn insert(&mut self, mut v: u64) -> bool {
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                let b = self.by_lead[lead];
                if b == 0 {
                    self.by_lead[lead] = v;
                    self.rank += 1;
                    return true;
                }
                v ^= b;
            }
            false
        }

        pub fn rank(&self) -> usize {
            self.rank
        }
    }

    /// Prefix ranks into `out[0..=ell]`, as [`super::prefix_ranks`].
    #[inline]
    pub fn prefix_ranks(x: u64, ell: usize, m: usize, out: &mut [usize]) {
        let mut basis = XorBasis::default();
        out[0] = 0;
        for i in 0..ell {
            basis.insert(row_of(x, i, ell, m));
            out[i + 1] = basis.rank();
        }
    }

    /// Partial traces `tau_1..tau_ell` as bits into `out[1..=ell]`.
    #[inline]
    pub fn partial_traces(x: u64, ell: usize, m: usize, out: &mut [bool]) {
        let mut acc = false;
        out[0] = false;
        for i in 0..ell {
            if i < m {
                acc ^= entry(row_of(x, i, ell, m), i, m);
            }
            out[i + 1] = acc;
        }
    }

    pub fn to_matrix(x: u64, ell: usize, m: usize) -> GfMatrix {
        let mut entries = Vec::with_capacity(ell * m);
        for i in 0..ell {
            let row = row_of(x, i, ell, m);
            entries.extend((0..m).map(|j| entry(row, j, m) as Elem));
        }
        GfMatrix::new(ell, m, entries).unwrap()
    }

    pub fn from_matrix(mat: &GfMatrix) -> u64 {
        mat.entries().iter().fold(0u64, |acc, &e| (acc << 1) | (e & 1) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldTables {
        FieldTables::new(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf(2);
        assert_eq!(rank(&GfMatrix::zeros(3, 4), &f).unwrap(), 0);
        assert_eq!(rank(&GfMatrix::identity(3, 5), &f).unwrap(), 3);
        let m = GfMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank(&m, &f).unwrap(), 1);
        let bad = GfMatrix::from_rows(&[vec![2, 1]]).unwrap();
        assert!(rank(&bad, &f).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let f2 = gf(2);
        let f3 = gf(3);
        let m = GfMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(partial_trace(&m, 0, &f2).unwrap(), 0);
        assert_eq!(partial_trace(&GfMatrix::identity(2, 2), 2, &f2).unwrap(), 0);
        let mut d = GfMatrix::zeros(3, 3);
        d.set(0, 0, 1);
        d.set(1, 1, 2);
        d.set(2, 2, 2);
        assert_eq!(partial_trace(&d, 3, &f3).unwrap(), 2);
        assert!(partial_trace(&d, 4, &f3).is_err());
    }

    #[test]
    fn enumeration_order_and_size() {
        let f2 = gf(2);
        let all: Vec<GfMatrix> = matrices_iter(1, 1, &f2, 16).unwrap().collect();
        assert_eq!(all, vec![GfMatrix::zeros(1, 1), GfMatrix::identity(1, 1)]);

        let all: Vec<GfMatrix> = matrices_iter(2, 2, &f2, 1 << 10).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));

        assert_eq!(matrices_iter(2, 2, &gf(3), 1 << 10).unwrap().count(), 81);
    }

    #[test]
    fn enumeration_guard() {
        let err = matrices_iter(4, 5, &gf(2), 1 << 19).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { guard: "enumeration", .. }));
        assert!(err.to_string().contains("enumeration"));
        assert!(matrices_iter(9, 9, &gf(3), DEFAULT_ENUMERATION_GUARD).is_err());
    }

    #[test]
    fn prefix_partition_covers_everything_once() {
        let f = gf(3);
        let mut joined = Vec::new();
        for p in prefixes(2, &f) {
            joined.extend(MatrixIter::with_prefix(2, 2, &f, &p, 1 << 10).unwrap());
        }
        let all: Vec<GfMatrix> = matrices_iter(2, 2, &f, 1 << 10).unwrap().collect();
        assert_eq!(joined, all);
    }

    #[test]
    fn canonical_rep_examples() {
        let f3 = gf(3);
        let m = GfMatrix::from_rows(&[vec![2, 1]]).unwrap();
        let c = canonical_rep(&m, &f3).unwrap();
        assert_eq!(c, GfMatrix::from_rows(&[vec![1, 2]]).unwrap());
        assert_eq!(canonical_rep(&c, &f3).unwrap(), c);
        assert!(canonical_rep(&GfMatrix::zeros(2, 2), &f3).is_err());

        let f2 = gf(2);
        let m = GfMatrix::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(canonical_rep(&m, &f2).unwrap(), m);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = gf(3);
        let m = GfMatrix::from_rows(&[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]).unwrap();
        let ns = nullspace(&m, &f);
        assert_eq!(ns.rows(), 2);
        for k in 0..ns.rows() {
            for i in 0..m.rows() {
                let dot = (0..m.cols()).fold(0, |acc, j| f.add(acc, f.mul(m.get(i, j), ns.get(k, j))));
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(rank(&ns, &f).unwrap(), 2);
    }

    #[test]
    fn packed_matches_generic() {
        let f = gf(2);
        let (ell, m) = (3, 4);
        let mut ranks = vec![0; ell + 1];
        let mut traces = vec![false; ell + 1];
        for (x, mat) in matrices_iter(ell, m, &f, 1 << 12).unwrap().enumerate() {
            let x = x as u64;
            assert_eq!(packed::to_matrix(x, ell, m), mat);
            assert_eq!(packed::from_matrix(&mat), x);
            packed::prefix_ranks(x, ell, m, &mut ranks);
            assert_eq!(ranks, prefix_ranks(&mat, &f));
            packed::partial_traces(x, ell, m, &mut traces);
            for (r, &tr) in traces.iter().enumerate().take(ell + 1) {
                assert_eq!(tr as Elem, partial_trace(&mat, r, &f).unwrap());
            }
        }
    }
}
