//! Exact dense linear algebra over GF(3).
//!
//! Row reduction, nullspaces, linear solving and subspace closure under sets
//! of operators. Pivoting is deterministic (first nonzero entry), so every
//! basis produced here is reproducible run to run.

use crate::gf3::{F3, ONE, ZERO};
use std::fmt;
use std::ops::{Index, IndexMut};

/// A dense matrix over GF(3), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<F3>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F3>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Entries given as integers, reduced mod 3.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat {
            rows,
            cols,
            data: entries.iter().map(|&v| F3::from_i64(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F3] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<F3> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F3]) -> Vec<F3> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, c: F3) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn neg(&self) -> Mat {
        self.scale(F3::new(2))
    }

    /// Graded commutator a b - sign * b a.
    pub fn comm(&self, other: &Mat, sign: F3) -> Mat {
        self.matmul(other).sub(&other.matmul(self).scale(sign))
    }

    /// Reduced row-echelon form together with the rank.
    ///
    /// Output row space equals input row space, pivots strictly increasing,
    /// pivot columns elsewhere zero.
    pub fn rref_rank(&self) -> (Mat, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place()
    }

    pub fn rref_in_place(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            // first nonzero entry in this column at or below pivot_row
            let mut sel = None;
            for r in pivot_row..self.rows {
                if !self[(r, col)].is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.swap_rows(pivot_row, sel);
            let inv = self[(pivot_row, col)].inv();
            if inv != ONE {
                for j in col..self.cols {
                    self[(pivot_row, j)] *= inv;
                }
            }
            for r in 0..self.rows {
                if r != pivot_row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)];
                    for j in col..self.cols {
                        let v = self[(pivot_row, j)];
                        self[(r, j)] -= f * v;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right nullspace: vectors v with M v = 0. The basis has
    /// cols - rank elements and is produced in the standard rref back-fill
    /// form, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F3>> {
        let (r, rank) = self.rref_rank();
        let mut pivot_col_of_row = Vec::with_capacity(rank);
        let mut is_pivot = vec![false; self.cols];
        for i in 0..rank {
            let col = (0..self.cols)
                .find(|&j| !r[(i, j)].is_zero())
                .expect("pivot row without pivot");
            pivot_col_of_row.push(col);
            is_pivot[col] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![ZERO; self.cols];
            v[free] = ONE;
            for i in 0..rank {
                v[pivot_col_of_row[i]] = -r[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b, returning one solution if consistent.
    pub fn solve(&self, b: &[F3]) -> Option<Vec<F3>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, rank) = aug.rref_rank();
        // inconsistent iff a pivot lands in the augmented column
        for i in 0..rank {
            let col = (0..=self.cols).find(|&j| !r[(i, j)].is_zero()).unwrap();
            if col == self.cols {
                return None;
            }
        }
        let mut x = vec![ZERO; self.cols];
        for i in 0..rank {
            let col = (0..self.cols).find(|&j| !r[(i, j)].is_zero()).unwrap();
            x[col] = r[(i, self.cols)];
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = F3;
    fn index(&self, (i, j): (usize, usize)) -> &F3 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F3 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", self[(i, j)])?;
                if j + 1 < self.cols {
                    write!(f, " ")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn vec_add(a: &[F3], b: &[F3]) -> Vec<F3> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn vec_sub(a: &[F3], b: &[F3]) -> Vec<F3> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn vec_scale(a: &[F3], c: F3) -> Vec<F3> {
    a.iter().map(|&x| x * c).collect()
}

pub fn vec_is_zero(a: &[F3]) -> bool {
    a.iter().all(|e| e.is_zero())
}

pub fn vec_addmul(acc: &mut [F3], c: F3, v: &[F3]) {
    if c.is_zero() {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

/// A subspace maintained as a reduced row-echelon basis. Supports cheap
/// membership tests and incremental adjoin, which keeps closure computations
/// deterministic.
#[derive(Clone)]
pub struct Subspace {
    dim_ambient: usize,
    rows: Vec<Vec<F3>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim_ambient: usize) -> Self {
        Subspace {
            dim_ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vec<F3>] {
        &self.rows
    }

    /// Reduce v against the current basis; the remainder is zero iff v lies
    /// in the subspace.
    pub fn reduce(&self, v: &[F3]) -> Vec<F3> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                vec_addmul(&mut w, -c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[F3]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Adjoin a vector; returns true if the dimension grew.
    pub fn adjoin(&mut self, v: &[F3]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        if inv != ONE {
            for e in w.iter_mut() {
                *e *= inv;
            }
        }
        // clear the new pivot from existing rows to stay fully reduced
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            let c = row[p];
            if !c.is_zero() {
                vec_addmul(row, -c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim_ambient
    }

    /// Dimension of the intersection with another subspace.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut all = Subspace::new(self.dim_ambient);
        for r in &self.rows {
            all.adjoin(r);
        }
        let mut sum = all.clone();
        for r in &other.rows {
            sum.adjoin(r);
        }
        self.dim() + other.dim() - sum.dim()
    }
}

/// A fixed spanning set with precomputed reduction data, for expressing
/// vectors in its coordinates.
pub struct CoordBasis {
    red: Mat,
    pivots: Vec<usize>,
    n: usize,
    m: usize,
}

impl CoordBasis {
    pub fn new(rows: &[Vec<F3>]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        let mut aug = Mat::zeros(m, n + m);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for j in 0..n {
                aug[(i, j)] = r[j];
            }
            aug[(i, n + i)] = ONE;
        }
        let (red, rank) = aug.rref_rank();
        assert_eq!(rank, m, "coordinate basis must be independent");
        let pivots = (0..m)
            .map(|i| (0..n).find(|&j| !red[(i, j)].is_zero()).expect("pivot"))
            .collect();
        CoordBasis { red, pivots, n, m }
    }

    /// Coefficients expressing v over the basis rows; None if outside.
    pub fn coords(&self, v: &[F3]) -> Option<Vec<F3>> {
        let mut w = v.to_vec();
        let mut out = vec![ZERO; self.m];
        for (row, &p) in (0..self.m).zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                for j in 0..self.n {
                    let r = self.red[(row, j)];
                    if !r.is_zero() {
                        w[j] -= c * r;
                    }
                }
                for j in 0..self.m {
                    out[j] += c * self.red[(row, self.n + j)];
                }
            }
        }
        if w.iter().any(|e| !e.is_zero()) {
            None
        } else {
            Some(out)
        }
    }
}

/// Smallest subspace containing the seeds and invariant under every
/// operator: iterate (apply operators, adjoin, re-reduce) until the rank is
/// stable.
pub fn span_closure(seeds: &[Vec<F3>], operators: &[Mat], dim_ambient: usize) -> Subspace {
    let mut space = Subspace::new(dim_ambient);
    let mut work: Vec<Vec<F3>> = Vec::new();
    for s in seeds {
        assert_eq!(s.len(), dim_ambient, "seed dimension mismatch");
        if space.adjoin(s) {
            work.push(s.clone());
        }
    }
    while let Some(v) = work.pop() {
        if space.is_full() {
            break;
        }
        for op in operators {
            let w = op.apply(&v);
            if space.adjoin(&w) {
                work.push(w);
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::TWO;
    use proptest::prelude::*;

    fn f3(v: i64) -> F3 {
        F3::from_i64(v)
    }

    #[test]
    fn rref_identity_rank() {
        let m = Mat::identity(3);
        let (r, rank) = m.rref_rank();
        assert_eq!(rank, 3);
        assert_eq!(r, Mat::identity(3));
    }

    #[test]
    fn rref_dependent_rows() {
        // second row is 2x the first mod 3
        let m = Mat::from_i64(2, 2, &[1, 2, 2, 1]);
        let (_, rank) = m.rref_rank();
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_zero() {
        let m = Mat::zeros(3, 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn nullspace_identity_empty() {
        assert!(Mat::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_zero_full() {
        let ns = Mat::zeros(2, 2).nullspace();
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn nullspace_sum_condition() {
        // Oracle: enumerate all 27 vectors of GF(3)^3 and keep those with
        // coordinate sum 0 mod 3; the nullspace of [[1,1,1]] must span them.
        let m = Mat::from_i64(1, 3, &[1, 1, 1]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        let mut space = Subspace::new(3);
        for v in &ns {
            assert!(vec_is_zero(&m.apply(v)));
            assert_eq!(
                (v[0] + v[1] + v[2]),
                F3::new(0),
                "coordinate sum must vanish"
            );
            space.adjoin(v);
        }
        let mut count = 0;
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let v = vec![f3(a), f3(b), f3(c)];
                    if (v[0] + v[1] + v[2]).is_zero() {
                        count += 1;
                        assert!(space.contains(&v));
                    }
                }
            }
        }
        assert_eq!(count, 9); // 3^2 vectors in the 2-dim nullspace
    }

    #[test]
    fn solve_simple() {
        let m = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
        let x = m.solve(&[f3(2), f3(1)]).unwrap();
        assert_eq!(m.apply(&x), vec![f3(2), f3(1)]);
        // inconsistent system
        let s = Mat::from_i64(2, 1, &[1, 2]);
        assert!(s.solve(&[f3(1), f3(1)]).is_none());
    }

    #[test]
    fn closure_whole_space() {
        let seeds = vec![vec![ONE, ZERO], vec![ZERO, ONE]];
        let ops = vec![Mat::identity(2)];
        let c = span_closure(&seeds, &ops, 2);
        assert!(c.is_full());
    }

    #[test]
    fn closure_zero_seed() {
        let c = span_closure(&[vec![ZERO, ZERO]], &[Mat::identity(2)], 2);
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn closure_nilpotent_shift() {
        // e1 |-> e2 under [[0,0],[1,0]]: hand iteration gives dimension 2
        let op = Mat::from_i64(2, 2, &[0, 0, 1, 0]);
        let c = span_closure(&[vec![ONE, ZERO]], &[op], 2);
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn subspace_intersection() {
        let mut a = Subspace::new(3);
        a.adjoin(&[ONE, ZERO, ZERO]);
        a.adjoin(&[ZERO, ONE, ZERO]);
        let mut b = Subspace::new(3);
        b.adjoin(&[ZERO, ONE, ZERO]);
        b.adjoin(&[ZERO, ZERO, ONE]);
        assert_eq!(a.intersection_dim(&b), 1);
    }

    fn arb_mat(max_dim: usize) -> impl Strategy<Value = Mat> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0..3i64, r * c)
                .prop_map(move |v| Mat::from_i64(r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_mat(6)) {
            let (r1, k1) = m.rref_rank();
            let (r2, k2) = r1.rref_rank();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(k1, k2);
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_mat(6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_mat(6)) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(vec_is_zero(&m.apply(v)));
            }
            // basis vectors are linearly independent
            if !ns.is_empty() {
                let b = Mat::from_rows(ns.clone());
                prop_assert_eq!(b.rank(), ns.len());
            }
        }

        #[test]
        fn closure_monotone_idempotent(
            m in arb_mat(5).prop_filter("square", |m| m.rows() == m.cols()),
            seed in proptest::collection::vec(0..3i64, 5),
        ) {
            let n = m.rows();
            let s: Vec<F3> = seed.iter().take(n).map(|&v| F3::from_i64(v)).collect();
            if s.len() < n { return Ok(()); }
            let c1 = span_closure(&[s.clone()], std::slice::from_ref(&m), n);
            // idempotent: closing the closure basis changes nothing
            let c2 = span_closure(c1.basis(), std::slice::from_ref(&m), n);
            prop_assert_eq!(c1.dim(), c2.dim());
            // monotone: adding a second seed can only grow the closure
            let t: Vec<F3> = (0..n).map(|i| F3::from_i64(i as i64)).collect();
            let c3 = span_closure(&[s, t], std::slice::from_ref(&m), n);
            prop_assert!(c3.dim() >= c1.dim());
        }
    }

    #[test]
    fn two_is_half() {
        assert_eq!(TWO + TWO, ONE);
    }
}
