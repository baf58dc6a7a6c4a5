//! Small exact integer linear algebra: square matrices acting on root
//! vectors, determinants, and ranks. Everything is sized by the diagram rank
//! (single digits in practice), so plain integers with wide intermediates
//! are exact.

use crate::error::{Error, Result};
use std::fmt;

/// A root written in the simple-root basis: coordinate k is the coefficient
/// of the (k+1)-th simple root.
pub type RootVec = Vec<i64>;

/// Row-major square integer matrix. Columns are images of the simple roots,
/// so `apply` is matrix-times-column-vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMat {
    n: usize,
    a: Vec<i64>,
}

impl SquareMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        SquareMat { n, a }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "not square");
        SquareMat { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    /// Column j as a vector (the image of the j-th simple root).
    pub fn col(&self, j: usize) -> RootVec {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Matrix product self·other (self applied after other).
    pub fn mul(&self, other: &SquareMat) -> SquareMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SquareMat { n, a: vec![0; n * n] };
        for i in 0..n {
            for k in 0..n {
                let s = self.get(i, k);
                if s == 0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += s * other.get(k, j);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> RootVec {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareMat::identity(self.n)
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let swap = (k + 1..n).find(|&r| m[r * n + k] != 0);
                match swap {
                    None => return 0,
                    Some(r) => {
                        for j in 0..n {
                            m.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] =
                        (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
                m[i * n + k] = 0;
            }
            prev = m[k * n + k];
        }
        i64::try_from(sign * m[(n - 1) * n + (n - 1)]).expect("determinant overflow")
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

impl fmt::Debug for SquareMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{:?}", &self.a[i * self.n..(i + 1) * self.n])?;
        }
        Ok(())
    }
}

/// Rank of the lattice spanned by the given vectors, by fraction-free
/// elimination with gcd reduction.
pub fn span_rank(vecs: &[RootVec]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let cols = vecs[0].len();
    let mut rows: Vec<Vec<i128>> = vecs
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let p = &head[rank];
        for r in tail.iter_mut() {
            if r[c] != 0 {
                let (pc, rc) = (p[c], r[c]);
                for j in 0..cols {
                    r[j] = r[j] * pc - p[j] * rc;
                }
                let g = r.iter().fold(0i128, |acc, &x| gcd_i128(acc, x.abs()));
                if g > 1 {
                    for x in r.iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

/// Compact display of a root: coefficient k on the (i+1)-th simple root is
/// written `i+1` when k = 1 and `i+1^k` otherwise; items are space
/// separated. The zero vector prints as "0".
pub fn format_root(v: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c == 1 {
            parts.push(format!("{}", i + 1));
        } else {
            parts.push(format!("{}^{}", i + 1, c));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Inverse of [`format_root`]; also the reader for expectation files. Items
/// are `i` or `i^k` with 1-based single-digit indices up to `theta`.
pub fn parse_root(s: &str, theta: usize) -> Result<RootVec> {
    let mut v = vec![0i64; theta];
    let s = s.trim();
    if s == "0" {
        return Ok(v);
    }
    for item in s.split_whitespace() {
        let (idx_s, coeff) = match item.split_once('^') {
            Some((i, k)) => {
                let k: i64 = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in root item `{item}`")))?;
                (i, k)
            }
            None => (item, 1),
        };
        let idx: usize = idx_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in root item `{item}`")))?;
        if idx == 0 || idx > theta {
            return Err(Error::Parse(format!(
                "root index {idx} out of range 1..={theta}"
            )));
        }
        if v[idx - 1] != 0 {
            return Err(Error::Parse(format!("repeated index {idx} in root `{s}`")));
        }
        v[idx - 1] = coeff;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_trace_of_reflection_like_matrices() {
        let s = SquareMat::from_rows(vec![vec![-1, 1], vec![0, 1]]);
        assert_eq!(s.det(), -1);
        assert_eq!(s.trace(), 0);
        assert!(s.mul(&s).is_identity());
        let id = SquareMat::identity(4);
        assert_eq!(id.det(), 1);
    }

    #[test]
    fn apply_uses_columns_as_images() {
        let s = SquareMat::from_rows(vec![vec![-1, 1], vec![0, 1]]);
        assert_eq!(s.apply(&[1, 0]), vec![-1, 0]);
        assert_eq!(s.apply(&[0, 1]), vec![1, 1]);
        assert_eq!(s.col(1), vec![1, 1]);
    }

    #[test]
    fn span_rank_counts_independent_vectors() {
        assert_eq!(span_rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(span_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(span_rank(&[]), 0);
        assert_eq!(span_rank(&[vec![0, 0]]), 0);
        assert_eq!(
            span_rank(&[vec![6, 0, 0], vec![0, 6, 0], vec![6, 6, 12]]),
            3
        );
    }

    #[test]
    fn root_notation_round_trips() {
        let v = vec![1, 2, 2, 1, 1];
        let s = format_root(&v);
        assert_eq!(s, "1 2^2 3^2 4 5");
        assert_eq!(parse_root(&s, 5).unwrap(), v);
        assert_eq!(parse_root("3^4 4^8 5^12 6^4", 6).unwrap(), vec![0, 0, 4, 8, 12, 4]);
        assert_eq!(format_root(&[0, 0, 0]), "0");
        assert!(parse_root("7", 5).is_err());
        assert!(parse_root("1 1", 5).is_err());
    }
}
