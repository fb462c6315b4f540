use num_traits::{One, Zero};

use super::reduce::RowReducer;
use crate::error::{Error, Result};
use crate::Q;

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r);
        }
        RationalMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.cols);
        for i in 0..self.rows {
            r.insert_rational(self.row(i));
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    /// Basis of `{v : M v = 0}`, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        self.reducer().nullspace()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let x = a.get(col, j) / &p;
                a.set(col, j, x);
                let y = inv.get(col, j) / &p;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }
}

pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Q>> {
    m.nullspace()
}

/// Indices of a subset of `inside` whose classes form a basis of
/// `span(inside) / span(span)`, chosen greedily in input order.
pub fn column_space_complement(span: &[Vec<Q>], inside: &[Vec<Q>]) -> Result<Vec<usize>> {
    let cols = match span.first().or(inside.first()) {
        Some(v) => v.len(),
        None => return Ok(Vec::new()),
    };
    if span.iter().chain(inside).any(|v| v.len() != cols) {
        return Err(Error::Dimension("vectors of different lengths".into()));
    }
    let mut reducer = RowReducer::new(cols);
    for v in span {
        reducer.insert_rational(v);
    }
    let span_rank = reducer.rank();
    let mut inside_only = RowReducer::new(cols);
    let mut chosen = Vec::new();
    for (k, v) in inside.iter().enumerate() {
        inside_only.insert_rational(v);
        if reducer.insert_rational(v) {
            chosen.push(k);
        }
    }
    if span_rank + chosen.len() != inside_only.rank() {
        return Err(Error::Dimension(format!(
            "span (rank {span_rank}) is not contained in the ambient space (rank {})",
            inside_only.rank()
        )));
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn nullspace_examples() {
        assert!(RationalMatrix::identity(3).nullspace().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 3).nullspace().len(), 3);
        assert_eq!(m(&[&[1, 1]]).nullspace(), vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let a = m(&[&[2, 4, 6, 1], &[1, 2, 3, 5], &[3, 6, 9, 6]]);
        let ns = a.nullspace();
        assert_eq!(a.rank() + ns.len(), 4);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]);
        let inv = a.inverse().unwrap();
        for i in 0..3 {
            let e: Vec<Q> = (0..3).map(|j| inv.get(j, i).clone()).collect();
            let col = a.mul_vec(&e);
            for (j, x) in col.iter().enumerate() {
                assert_eq!(*x, if i == j { q(1) } else { q(0) });
            }
        }
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn complement_examples() {
        let e1 = vec![q(1), q(0)];
        let e2 = vec![q(0), q(1)];
        let inside = vec![e1.clone(), e2.clone()];
        assert_eq!(column_space_complement(&[], &inside).unwrap(), vec![0, 1]);
        assert!(column_space_complement(&inside, &inside).unwrap().is_empty());
        assert_eq!(column_space_complement(&[e1.clone()], &inside).unwrap(), vec![1]);
        assert!(matches!(
            column_space_complement(&[e2.clone()], &[e1]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn reducer_membership() {
        let mut r = RowReducer::new(3);
        assert!(r.insert_rational(&[q(1), q(2), q(3)]));
        assert!(!r.insert_rational(&[q(2), q(4), q(6)]));
        assert!(r.contains(&[q(-1), q(-2), q(-3)]));
        assert!(!r.contains(&[q(0), q(0), q(1)]));
    }
}
