use std::fmt;
use std::ops::{Index, IndexMut};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::ratfunc::RationalFunction;
use super::scalar::Scalar;
use super::Context;
use crate::error::{Error, Result};

/// Dense row-major matrix over any [`Scalar`].
#[derive(Clone)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Matrices of rational functions.
pub type MatRF = Mat<RationalFunction>;

impl<S: Scalar> Mat<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zero_like(template: &S, rows: usize, cols: usize) -> Self {
        let z = template.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity_like(template: &S, n: usize) -> Self {
        let (z, o) = (template.zero_like(), template.one_like());
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn template(&self) -> &S {
        &self.data[0]
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Scalar>(&self, f: impl FnMut(&S) -> Result<T>) -> Result<Mat<T>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    fn same_shape(&self, o: &Self, what: &str) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "add")?;
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o, "sub")?;
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.negated())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.times(s))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let z = self.template().zero_like();
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = z.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if a.is_zero_scalar() || b.is_zero_scalar() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        }))
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<S> {
        self.require_square()?;
        Ok((1..self.rows).fold(self.get(0, 0).clone(), |acc, i| acc.plus(self.get(i, i))))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero_scalar)
    }

    /// Exact identity test, entry by entry.
    pub fn equals(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data.iter().zip(&o.data).all(|(a, b)| a.minus(b).is_zero_scalar())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.equals(&Self::identity_like(self.template(), self.rows))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("expected square matrix, found {}x{}", self.rows, self.cols)))
        }
    }

    /// Row echelon form by elimination; returns the reduced copy, the pivot
    /// columns, and the sign of the row permutation.
    fn eliminate(&self) -> (Self, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut flipped = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero_scalar()) else { continue };
            if p != r {
                m.swap_rows(p, r);
                flipped = !flipped;
            }
            let inv = m.get(r, c).recip().expect("nonzero pivot");
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero_scalar() {
                    continue;
                }
                let f = m.get(i, c).times(&inv);
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, flipped)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    pub fn det(&self) -> Result<S> {
        self.require_square()?;
        if self.rows == 2 {
            return Ok(self.get(0, 0).times(self.get(1, 1)).minus(&self.get(0, 1).times(self.get(1, 0))));
        }
        let (m, pivots, flipped) = self.eliminate();
        if pivots.len() < self.rows {
            return Ok(self.template().zero_like());
        }
        let mut d = m.get(0, 0).clone();
        for i in 1..self.rows {
            d = d.times(m.get(i, i));
        }
        Ok(if flipped { d.negated() } else { d })
    }

    /// Exact inverse: adjugate formula for 2×2, Gauss–Jordan otherwise.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        if self.rows == 2 {
            let d = self.det()?;
            let di = d.recip().map_err(|_| Error::SingularMatrix)?;
            let (a, b, c, e) = (self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1));
            return Self::from_rows(vec![
                vec![e.times(&di), b.negated().times(&di)],
                vec![c.negated().times(&di), a.times(&di)],
            ]);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity_like(self.template(), n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero_scalar()).ok_or(Error::SingularMatrix)?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let pinv = a.get(c, c).recip()?;
            for j in 0..n {
                a[(c, j)] = a.get(c, j).times(&pinv);
                inv[(c, j)] = inv.get(c, j).times(&pinv);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero_scalar() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j).minus(&f.times(a.get(c, j)));
                    a[(i, j)] = v;
                    let w = inv.get(i, j).minus(&f.times(inv.get(c, j)));
                    inv[(i, j)] = w;
                }
            }
        }
        Ok(inv)
    }

    /// `(i, j)` positions of nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero_scalar())
            .collect()
    }
}

impl MatRF {
    pub fn zero(ctx: &Context, rows: usize, cols: usize) -> Self {
        Self::zero_like(&RationalFunction::zero(ctx), rows, cols)
    }

    pub fn identity(ctx: &Context, n: usize) -> Self {
        Self::identity_like(&RationalFunction::zero(ctx), n)
    }

    /// Builds from rows of integers.
    pub fn from_ints(ctx: &Context, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| RationalFunction::int(ctx, v)).collect()).collect())
    }

    pub fn context(&self) -> &Context {
        self.get(0, 0).context()
    }

    /// Entrywise partial derivative.
    pub fn derivative(&self, k: usize) -> Self {
        self.map(|a| a.derivative(k))
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Display> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<S: fmt::Display> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Nested arrays of canonical entry strings.
impl<S: fmt::Display> Serialize for Mat<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_rational_function as p;

    #[test]
    fn two_by_two_inverse() {
        let ctx = Context::heisenberg();
        let m = MatRF::from_rows(vec![
            vec![p("y00p", &ctx).unwrap(), p("t", &ctx).unwrap()],
            vec![p("1", &ctx).unwrap(), p("y11p", &ctx).unwrap()],
        ])
        .unwrap();
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn singular_is_rejected() {
        let ctx = Context::heisenberg();
        let m = MatRF::from_ints(&ctx, &[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).unwrap();
        assert_eq!(m.inverse().unwrap_err(), Error::SingularMatrix);
        assert_eq!(m.rank(), 2);
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn general_inverse() {
        let ctx = Context::heisenberg();
        let m = MatRF::from_rows(vec![
            vec![p("0", &ctx).unwrap(), p("1", &ctx).unwrap(), p("t", &ctx).unwrap()],
            vec![p("y00p", &ctx).unwrap(), p("0", &ctx).unwrap(), p("1", &ctx).unwrap()],
            vec![p("1", &ctx).unwrap(), p("y10p", &ctx).unwrap(), p("0", &ctx).unwrap()],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }
}
