//! Sparse matrices over [`Poly`] and the tensor-leg utilities every
//! identity check is built from.
//!
//! Basis convention: on `k` legs of dimension `d` the basis state
//! `(a_0, …, a_{k-1})` has index `a_0·d^{k-1} + … + a_{k-1}`, so the leftmost
//! tensor factor is the most significant digit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::scalar::{Indeterminate, Poly, Rational};

/// An exact sparse matrix. Rows are stored sorted by column with no
/// explicit zeros, so derived equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Poly)>>,
}

impl RingMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RingMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_identity(n, Poly::one())
    }

    pub fn scalar_identity(n: usize, value: Poly) -> Self {
        let mut m = RingMatrix::zeros(n, n);
        if !value.is_zero() {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.push((i, value.clone()));
            }
        }
        m
    }

    /// The matrix unit `e_{a,b}` of size `n×n`.
    pub fn unit(n: usize, a: usize, b: usize) -> Self {
        RingMatrix::from_triplets(n, n, [(a, b, Poly::one())])
    }

    /// Builds a matrix by summing the given entries; repeated positions add.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Poly)>,
    {
        let mut acc: Vec<BTreeMap<usize, Poly>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in entries {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            let slot = acc[r].entry(c).or_insert_with(Poly::zero);
            *slot += &v;
        }
        RingMatrix {
            nrows,
            ncols,
            rows: acc.into_iter().map(compact).collect(),
        }
    }

    /// Zero-one matrix with a `1` at each `(row, col)` pair; repeated pairs add.
    pub fn from_ones<I>(nrows: usize, ncols: usize, positions: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        RingMatrix::from_triplets(nrows, ncols, positions.into_iter().map(|(r, c)| (r, c, Poly::one())))
    }

    /// The permutation matrix sending basis vector `j` to `image[j]`.
    pub fn permutation(image: &[usize]) -> Self {
        let n = image.len();
        RingMatrix::from_ones(n, n, image.iter().enumerate().map(|(j, &i)| (i, j)))
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Poly {
        self.rows[r]
            .binary_search_by_key(&c, |(j, _)| *j)
            .map(|k| self.rows[r][k].1.clone())
            .unwrap_or_default()
    }

    pub fn row(&self, r: usize) -> &[(usize, Poly)] {
        &self.rows[r]
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row[0].0 == i && row[0].1.is_one())
    }

    /// True if every entry is the constant `1`.
    pub fn is_zero_one(&self) -> bool {
        self.iter().all(|(_, _, v)| v.is_one())
    }

    /// True if this is a square zero-one matrix with exactly one `1` in each
    /// row and column.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() || !self.is_zero_one() {
            return false;
        }
        let mut seen = vec![false; self.ncols];
        for row in &self.rows {
            if row.len() != 1 || std::mem::replace(&mut seen[row[0].0], true) {
                return false;
            }
        }
        true
    }

    pub fn is_rational(&self) -> bool {
        self.iter().all(|(_, _, v)| v.is_constant())
    }

    /// Highest total degree among the entries (`None` for the zero matrix).
    pub fn max_degree(&self) -> Option<u32> {
        self.iter().filter_map(|(_, _, v)| v.total_degree()).max()
    }

    /// Coefficient matrix of the monomial with the given exponents.
    pub fn coefficient_matrix(&self, exponents: crate::scalar::Exponents) -> RingMatrix {
        RingMatrix::from_triplets(
            self.nrows,
            self.ncols,
            self.iter().map(|(r, c, v)| (r, c, Poly::constant(v.coefficient(exponents)))),
        )
    }

    /// First position (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &RingMatrix) -> Option<(usize, usize)> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Some((self.nrows.min(other.nrows), self.ncols.min(other.ncols)));
        }
        for r in 0..self.nrows {
            if self.rows[r] == other.rows[r] {
                continue;
            }
            let mut a = self.rows[r].iter().peekable();
            let mut b = other.rows[r].iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca != cb {
                            return Some((r, *ca.min(cb)));
                        }
                        if va != vb {
                            return Some((r, *ca));
                        }
                        a.next();
                        b.next();
                    }
                    (Some((c, _)), None) | (None, Some((c, _))) => return Some((r, *c)),
                    (None, None) => break,
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_triplets(self.ncols, self.nrows, self.iter().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn scale(&self, s: &Poly) -> RingMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| compact_vec(row.iter().map(|(c, v)| (*c, v * s)).collect()))
            .collect();
        RingMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn try_add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_same_shape(other, "add")?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_same_shape(other, "sub")?;
        Ok(self.combine(other, true))
    }

    fn check_same_shape(&self, other: &RingMatrix, op: &str) -> Result<()> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    fn combine(&self, other: &RingMatrix, subtract: bool) -> RingMatrix {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Poly> = a.iter().cloned().collect();
                for (c, v) in b {
                    let slot = acc.entry(*c).or_insert_with(Poly::zero);
                    *slot = if subtract { &*slot - v } else { &*slot + v };
                }
                compact(acc)
            })
            .collect();
        RingMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn try_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.try_mul_with(other, Strategy::default())
    }

    /// Matrix product, with rows of the result computed under `strategy`.
    pub fn try_mul_with(&self, other: &RingMatrix, strategy: Strategy) -> Result<RingMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        // Small products are not worth a fork-join.
        let strategy = if self.nnz() < 2048 {
            Strategy::Sequential
        } else {
            strategy
        };
        let rows = exec::map(strategy, &self.rows, |row| {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let slot = acc.entry(*c).or_insert_with(Poly::zero);
                    *slot += &(a * b);
                }
            }
            compact(acc)
        });
        Ok(RingMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// Product of a sequence of matrices, left to right.
    pub fn product<'a, I>(factors: I) -> Result<RingMatrix>
    where
        I: IntoIterator<Item = &'a RingMatrix>,
    {
        let mut it = factors.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::DimensionMismatch("empty product".into()))?;
        it.try_fold(first.clone(), |acc, m| acc.try_mul(m))
    }

    pub fn pow(&self, k: u32) -> Result<RingMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let mut acc = RingMatrix::identity(self.nrows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Applies `f` to every entry, dropping entries that become zero.
    pub fn map_entries<F: Fn(&Poly) -> Poly>(&self, f: F) -> RingMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| compact_vec(row.iter().map(|(c, v)| (*c, f(v))).collect()))
            .collect();
        RingMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Substitutes `value` for the indeterminate `v` in every entry.
    pub fn substitute(&self, v: Indeterminate, value: &Poly) -> RingMatrix {
        self.map_entries(|p| p.substitute(v, value))
    }

    /// Exact inverse over ℚ.
    ///
    /// Monomial matrices (one nonzero per row and column) are inverted
    /// directly; everything else goes through sparse Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RingMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.nrows, self.ncols
            )));
        }
        if !self.is_rational() {
            return Err(Error::NotRational);
        }
        if let Some(inv) = self.monomial_inverse() {
            return Ok(inv);
        }
        self.gauss_jordan_inverse()
    }

    fn monomial_inverse(&self) -> Option<RingMatrix> {
        let mut seen = vec![false; self.ncols];
        let mut entries = Vec::with_capacity(self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != 1 || std::mem::replace(&mut seen[row[0].0], true) {
                return None;
            }
            let c = row[0].1.as_rational()?;
            entries.push((row[0].0, r, Poly::constant(c.recip())));
        }
        Some(RingMatrix::from_triplets(self.nrows, self.ncols, entries))
    }

    fn gauss_jordan_inverse(&self) -> Result<RingMatrix> {
        let n = self.nrows;
        let mut left: Vec<BTreeMap<usize, Rational>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.as_rational().expect("checked rational")))
                    .collect()
            })
            .collect();
        let mut right: Vec<BTreeMap<usize, Rational>> =
            (0..n).map(|i| BTreeMap::from([(i, Rational::one())])).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| left[r].contains_key(&col))
                .ok_or(Error::Singular)?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            let inv = left[col][&col].recip();
            for v in left[col].values_mut() {
                *v *= &inv;
            }
            for v in right[col].values_mut() {
                *v *= &inv;
            }
            let (prow_l, prow_r) = (left[col].clone(), right[col].clone());
            for r in 0..n {
                if r == col {
                    continue;
                }
                let Some(factor) = left[r].get(&col).cloned() else {
                    continue;
                };
                axpy(&mut left[r], &prow_l, &factor);
                axpy(&mut right[r], &prow_r, &factor);
            }
        }
        Ok(RingMatrix::from_triplets(
            n,
            n,
            right
                .into_iter()
                .enumerate()
                .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, Poly::constant(v)))),
        ))
    }

    /// The `size×size` block at block position `(block_row, block_col)`.
    pub fn block(&self, block_row: usize, block_col: usize, size: usize) -> RingMatrix {
        let (r0, c0) = (block_row * size, block_col * size);
        RingMatrix::from_triplets(
            size,
            size,
            self.rows[r0..r0 + size].iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .filter(|(c, _)| *c >= c0 && *c < c0 + size)
                    .map(move |(c, v)| (i, c - c0, v.clone()))
            }),
        )
    }

    /// Coordinate text form: one `row col value` line per nonzero entry.
    pub fn to_coordinate_string(&self) -> String {
        let mut out = format!("# {}x{} nnz={}\n", self.nrows, self.ncols, self.nnz());
        for (r, c, v) in self.iter() {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }
}

fn axpy(target: &mut BTreeMap<usize, Rational>, source: &BTreeMap<usize, Rational>, factor: &Rational) {
    for (c, v) in source {
        let slot = target.entry(*c).or_insert_with(Rational::zero);
        *slot -= v * factor;
        if slot.is_zero() {
            target.remove(c);
        }
    }
}

fn compact(acc: BTreeMap<usize, Poly>) -> Vec<(usize, Poly)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn compact_vec(row: Vec<(usize, Poly)>) -> Vec<(usize, Poly)> {
    row.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coordinate_string())
    }
}

impl Mul for &RingMatrix {
    type Output = RingMatrix;
    fn mul(self, rhs: &RingMatrix) -> RingMatrix {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &RingMatrix {
    type Output = RingMatrix;
    fn add(self, rhs: &RingMatrix) -> RingMatrix {
        self.try_add(rhs).expect("matrix sum dimensions")
    }
}

impl Sub for &RingMatrix {
    type Output = RingMatrix;
    fn sub(self, rhs: &RingMatrix) -> RingMatrix {
        self.try_sub(rhs).expect("matrix difference dimensions")
    }
}

impl Neg for &RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        self.map_entries(|v| -v)
    }
}

/// Kronecker product `a ⊗ b`, left factor most significant.
pub fn kron(a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    let (br, bc) = (b.nrows, b.ncols);
    RingMatrix::from_triplets(
        a.nrows * br,
        a.ncols * bc,
        a.iter().flat_map(|(i, j, x)| b.iter().map(move |(k, l, y)| (i * br + k, j * bc + l, x * y))),
    )
}

/// Kronecker product of several factors, left to right.
pub fn kron_all<'a, I>(factors: I) -> RingMatrix
where
    I: IntoIterator<Item = &'a RingMatrix>,
{
    factors
        .into_iter()
        .fold(RingMatrix::identity(1), |acc, m| kron(&acc, m))
}

/// Basis size of `legs` legs of dimension `dim`, refusing sizes that do not
/// fit in memory-indexable range.
pub fn basis_size(dim: usize, legs: usize) -> Result<usize> {
    (0..legs).try_fold(1usize, |acc, _| acc.checked_mul(dim)).ok_or_else(|| {
        Error::ResourceLimit(format!("{dim}^{legs} basis states overflow"))
    })
}

/// Places `op` on the given legs of a `total`-leg space of dimension `dim`
/// each, acting as the identity on the remaining legs.
///
/// `legs[k]` is the leg carrying the `k`-th tensor factor of `op`, so
/// `embed(f, &[1, 0], 2, d)` is the flipped operator `𝒫 f 𝒫`.
pub fn embed(op: &RingMatrix, legs: &[usize], total: usize, dim: usize) -> Result<RingMatrix> {
    let k = legs.len();
    let op_dim = basis_size(dim, k)?;
    if op.nrows != op_dim || op.ncols != op_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, expected {op_dim}x{op_dim} for {k} legs of dim {dim}",
            op.nrows, op.ncols
        )));
    }
    for (i, &l) in legs.iter().enumerate() {
        if l >= total || legs[..i].contains(&l) {
            return Err(Error::DimensionMismatch(format!("bad leg list {legs:?} for {total} legs")));
        }
    }
    let full = basis_size(dim, total)?;
    let stride = |leg: usize| dim.pow((total - 1 - leg) as u32);
    let spectators: Vec<usize> = (0..total).filter(|l| !legs.contains(l)).collect();
    let spectator_count = basis_size(dim, spectators.len())?;

    // Offset contributed by each spectator configuration.
    let offsets: Vec<usize> = (0..spectator_count)
        .map(|mut s| {
            let mut off = 0;
            for &leg in spectators.iter().rev() {
                off += (s % dim) * stride(leg);
                s /= dim;
            }
            off
        })
        .collect();
    // Offset of each local basis state of `op`.
    let local: Vec<usize> = (0..op_dim)
        .map(|mut s| {
            let mut off = 0;
            for &leg in legs.iter().rev() {
                off += (s % dim) * stride(leg);
                s /= dim;
            }
            off
        })
        .collect();

    let mut entries = Vec::with_capacity(op.nnz() * spectator_count);
    for (r, c, v) in op.iter() {
        for off in &offsets {
            entries.push((local[r] + off, local[c] + off, v.clone()));
        }
    }
    Ok(RingMatrix::from_triplets(full, full, entries))
}

/// Transposes the indices of one leg (`0` or `1`) of a two-leg operator.
pub fn partial_transpose(a: &RingMatrix, leg: usize, dim: usize) -> Result<RingMatrix> {
    if a.nrows != dim * dim || a.ncols != dim * dim {
        return Err(Error::DimensionMismatch(format!(
            "partial transpose expects {0}x{0}, got {1}x{2}",
            dim * dim,
            a.nrows,
            a.ncols
        )));
    }
    if leg > 1 {
        return Err(Error::DimensionMismatch(format!("leg {leg} of a two-leg operator")));
    }
    Ok(RingMatrix::from_triplets(
        a.nrows,
        a.ncols,
        a.iter().map(|(r, c, v)| {
            let (mut r0, mut r1) = (r / dim, r % dim);
            let (mut c0, mut c1) = (c / dim, c % dim);
            if leg == 0 {
                std::mem::swap(&mut r0, &mut c0);
            } else {
                std::mem::swap(&mut r1, &mut c1);
            }
            (r0 * dim + r1, c0 * dim + c1, v.clone())
        }),
    ))
}

/// Evaluates every entry at the given rational point.
pub fn poly_eval(a: &RingMatrix, assignment: &[(Indeterminate, Rational)]) -> Result<RingMatrix> {
    let mut entries = Vec::with_capacity(a.nnz());
    for (r, c, v) in a.iter() {
        entries.push((r, c, Poly::constant(v.eval(assignment)?)));
    }
    Ok(RingMatrix::from_triplets(a.nrows, a.ncols, entries))
}

/// Sum of tensor products of matrix units `e_{r_0,c_0} ⊗ … ⊗ e_{r_{k-1},c_{k-1}}`,
/// one term per item of `terms`. Repeated terms add up.
pub fn unit_tensor_sum<I, T>(dim: usize, legs: usize, terms: I) -> RingMatrix
where
    I: IntoIterator<Item = T>,
    T: AsRef<[(usize, usize)]>,
{
    let size = dim.pow(legs as u32);
    RingMatrix::from_ones(
        size,
        size,
        terms.into_iter().map(|t| {
            let t = t.as_ref();
            debug_assert_eq!(t.len(), legs);
            t.iter()
                .fold((0, 0), |(r, c), &(a, b)| (r * dim + a, c * dim + b))
        }),
    )
}

/// Digits of `index` in base `dim`, most significant first.
pub fn digits(mut index: usize, dim: usize, legs: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for slot in out.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    out
}

/// `𝒫 = Σ e_{x,y} ⊗ e_{y,x}` on two legs of dimension `n`.
pub fn flip(n: usize) -> RingMatrix {
    RingMatrix::from_ones(n * n, n * n, (0..n).flat_map(|x| (0..n).map(move |y| (y * n + x, x * n + y))))
}

/// `scale · a + b`, the linear pencils used for spectral-parameter matrices.
pub fn pencil(scale: &Poly, a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
    a.scale(scale).try_add(b)
}
