use std::fmt;
use std::ops::{Index, IndexMut};

use super::{EpsSeries, ExactDiv, Field, MathError, Ring, VPoly, GR};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn column(entries: Vec<T>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    /// Embed a Gaussian-rational matrix into this ring.
    pub fn lift(m: &ExactMatrix<GR>) -> Self {
        m.map(|x| T::from_scalar(x.clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, c: &GR) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_by(&self, c: &T) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    fn same_shape(&self, o: &Self, op: &'static str) -> Result<(), MathError> {
        if self.shape() != o.shape() {
            return Err(MathError::DimensionMismatch {
                op,
                left: self.shape(),
                right: o.shape(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, MathError> {
        self.same_shape(o, "add")?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, MathError> {
        self.same_shape(o, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.sub_ref(b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, MathError> {
        if self.cols != o.rows {
            return Err(MathError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: o.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let idx = r * o.cols + c;
                        out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal use where shapes are known to agree.
    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("matrix add")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("matrix sub")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("matrix mul")
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, c0 + c, b.get(r, c).clone());
                }
            }
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(
            blocks.iter().all(|b| b.cols == cols),
            "vstack column mismatch"
        );
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }
}

/// `AB − BA`, exactly.
pub fn commutator<T: Ring>(
    a: &ExactMatrix<T>,
    b: &ExactMatrix<T>,
) -> Result<ExactMatrix<T>, MathError> {
    if !a.is_square() {
        return Err(MathError::NotSquare(a.rows, a.cols));
    }
    if a.shape() != b.shape() {
        return Err(MathError::DimensionMismatch {
            op: "commutator",
            left: a.shape(),
            right: b.shape(),
        });
    }
    a.mul(b).checked_sub(&b.mul(a))
}

/// Matrix of ε⁰ coefficients; fails on the entry with the lowest negative exponent.
pub fn eps_limit(m: &ExactMatrix<EpsSeries>) -> Result<ExactMatrix<GR>, MathError> {
    let mut worst: Option<(usize, usize, i32)> = None;
    for r in 0..m.rows {
        for c in 0..m.cols {
            if let Err(k) = m.get(r, c).limit() {
                if worst.is_none_or(|(_, _, w)| k < w) {
                    worst = Some((r, c, k));
                }
            }
        }
    }
    if let Some((row, col, exponent)) = worst {
        return Err(MathError::NegativePower { row, col, exponent });
    }
    Ok(m.map(|x| x.coeff(0)))
}

impl<T: Field> ExactMatrix<T> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != pr {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, pr * m.cols + k);
                }
            }
            let inv = m.get(pr, c).inv().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(pr, k).mul_ref(&inv);
                m.set(pr, k, v);
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let pk = m.get(pr, k);
                    if !pk.is_zero() {
                        let v = m.get(r, k).sub_ref(&f.mul_ref(pk));
                        m.set(r, k, v);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Mx = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Self> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = r.get(i, f).neg_ref();
                }
                Self::column(x)
            })
            .collect()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MathError> {
        if !self.is_square() {
            return Err(MathError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let (r, pivots) = Self::hstack(&[self, &Self::identity(n)]).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MathError::Singular);
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&idx, &right))
    }

    /// A particular solution of `self · X = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let n = self.cols;
        let (r, pivots) = Self::hstack(&[self, b]).rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.get(i, n + c).clone());
            }
        }
        Some(x)
    }

    /// `true` iff every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Self) -> bool {
        self.rank() == Self::vstack(&[self, other]).rank()
    }
}

impl<T: ExactDiv> ExactMatrix<T> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<T, MathError> {
        if !self.is_square() {
            return Err(MathError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return Ok(T::zero());
                };
                for c in 0..n {
                    m.data.swap(p * n + c, k * n + c);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .get(i, j)
                        .mul_ref(m.get(k, k))
                        .sub_ref(&m.get(i, k).mul_ref(m.get(k, j)));
                    let q = num.exact_div(&prev).expect("Bareiss division is exact");
                    m.set(i, j, q);
                }
                m.set(i, k, T::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign { d.neg_ref() } else { d })
    }

    /// Transposed cofactor matrix.
    pub fn adjugate(&self) -> Result<Self, MathError> {
        if !self.is_square() {
            return Err(MathError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rs, &cs).det()?;
                adj.set(
                    i,
                    j,
                    if (i + j) % 2 == 0 {
                        minor
                    } else {
                        minor.neg_ref()
                    },
                );
            }
        }
        Ok(adj)
    }

    /// Inverse via the adjugate; requires the determinant to be a unit of the ring.
    pub fn adjugate_inverse(&self) -> Result<Self, MathError> {
        let d = self.det()?;
        let dinv = T::one().exact_div(&d).ok_or(MathError::Singular)?;
        Ok(self.adjugate()?.scale_by(&dinv))
    }
}

impl ExactMatrix<GR> {
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn to_f64(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(GR::to_f64_pair).collect())
            .collect()
    }
}

impl ExactMatrix<VPoly> {
    /// Exact evaluation at a rational velocity.
    pub fn eval(&self, v: &[GR; 3]) -> ExactMatrix<GR> {
        self.map(|p| p.eval(v))
    }

    /// Coefficient matrix of one velocity monomial.
    pub fn coeff(&self, e: [u8; 3]) -> ExactMatrix<GR> {
        self.map(|p| p.coeff(e))
    }

    /// All monomials appearing in any entry, sorted.
    pub fn monomials(&self) -> Vec<[u8; 3]> {
        let mut set = std::collections::BTreeSet::new();
        for p in &self.data {
            set.extend(p.terms().map(|(e, _)| *e));
        }
        set.into_iter().collect()
    }
}

impl<T> Index<(usize, usize)> for ExactMatrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ExactMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
