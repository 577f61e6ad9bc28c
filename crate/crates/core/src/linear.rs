//! Dense square matrices over [`Scalar`], used for the action of group
//! elements on the span of the variables.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Square matrix; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearAction {
    n: usize,
    data: Vec<Scalar>,
}

impl LinearAction {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Scalar::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one();
        }
        LinearAction { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        LinearAction { n, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Self {
        let n = cols.len();
        let mut m = LinearAction::identity(n);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), n, "matrix must be square");
            for (i, x) in col.into_iter().enumerate() {
                m.data[i * n + j] = x;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearAction::identity(self.n)
    }

    pub fn mul(&self, rhs: &LinearAction) -> LinearAction {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut data = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        LinearAction { n, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "vector size mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> LinearAction {
        let mut acc = LinearAction::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for LinearAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_is_involution() {
        let s = LinearAction::from_rows(vec![
            vec![Scalar::from_int(-1), Scalar::from_int(1)],
            vec![Scalar::zero(), Scalar::one()],
        ]);
        assert!(s.mul(&s).is_identity());
        assert!(!s.is_identity());
    }

    #[test]
    fn columns_are_images() {
        let m = LinearAction::from_columns(vec![
            vec![Scalar::from_int(1), Scalar::from_int(2)],
            vec![Scalar::from_int(3), Scalar::from_int(4)],
        ]);
        assert_eq!(m.apply(&[Scalar::one(), Scalar::zero()]), m.column(0));
        assert_eq!(*m.get(0, 1), Scalar::from_int(3));
    }
}
