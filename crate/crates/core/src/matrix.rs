//! Dense integer matrices: Smith normal form, row echelon bases of lattices,
//! left kernels and ranks over prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * q;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Rank over QQ (equivalently over ZZ).
    pub fn rank(&self) -> usize {
        echelon_basis(&self.to_rows(), self.cols).len()
    }

    /// Rank after reducing entries modulo the prime `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                    .collect()
            })
            .collect();
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let inv = |a: u64| -> u64 {
            let e = BigInt::from(a).extended_gcd(&pb);
            e.x.mod_floor(&pb).to_u64().unwrap()
        };
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let iv = inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = mulmod(*x, iv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - mulmod(f, *y)) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: the non-zero diagonal entries
/// `d1 | d2 | ... | dr` and, on request, unimodular `u`, `v` with
/// `u * m * v` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    snf(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    snf(m, true)
}

fn snf(m: &IntMatrix, transforms: bool) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = transforms.then(|| IntMatrix::identity(rows));
    let mut v = transforms.then(|| IntMatrix::identity(cols));
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest non-zero entry of the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &q);
                }
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &q);
                }
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
                match bad {
                    Some((i, _)) => {
                        let one = BigInt::one();
                        a.add_row(t, i, &one);
                        if let Some(u) = u.as_mut() {
                            u.add_row(t, i, &one);
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row t / column t to the pivot.
            let mut bi = t;
            let mut bj = t;
            for i in t..rows {
                if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[(bi, bj)].abs() {
                    bi = i;
                    bj = t;
                }
            }
            for j in t..cols {
                if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[(bi, bj)].abs() {
                    bi = t;
                    bj = j;
                }
            }
            if a[(t, t)].is_zero() || (bi, bj) != (t, t) {
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, bi);
                }
                if let Some(v) = v.as_mut() {
                    v.swap_cols(t, bj);
                }
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    let factors = (0..t).map(|i| a[(i, i)].clone()).collect();
    SmithForm { factors, u, v }
}

/// A row echelon basis of the lattice spanned by `rows`: pivots strictly
/// increase, pivot entries are positive and entries above each pivot are
/// reduced into `[0, pivot)`. The result is the row Hermite normal form,
/// unique for the lattice.
pub fn echelon_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..cols {
        let mut idx: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
        if idx.is_empty() {
            continue;
        }
        // Euclid on column `col` among the rows in idx.
        while idx.len() > 1 {
            let (k, _) = idx
                .iter()
                .enumerate()
                .min_by(|(_, &a), (_, &b)| work[a][col].abs().cmp(&work[b][col].abs()))
                .unwrap();
            let p = idx[k];
            let pivot_row = work[p].clone();
            for &i in &idx {
                if i == p {
                    continue;
                }
                let q = work[i][col].div_floor(&pivot_row[col]);
                for (x, y) in work[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            idx.retain(|&i| !work[i][col].is_zero());
        }
        let p = idx[0];
        let mut row = work.swap_remove(p);
        if row[col].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        for b in basis.iter_mut() {
            let q = b[col].div_floor(&row[col]);
            if !q.is_zero() {
                for (x, y) in b.iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
        basis.push(row);
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    basis
}

/// Coordinates of `v` in an echelon basis, if `v` lies in the lattice.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let col = b.iter().position(|x| !x.is_zero()).expect("basis rows are non-zero");
        if !rest[..col].iter().all(Zero::is_zero) {
            return None;
        }
        let (q, r) = rest[col].div_rem(&b[col]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(b) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

/// A basis of the left kernel `{x : x * m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form_with_transforms(m);
    let rank = s.rank();
    let u = s.u.expect("transforms requested");
    (rank..m.rows()).map(|i| u.row(i).to_vec()).collect()
}
