//! Dense integer matrices and Smith normal form over `Z`.
//!
//! The decomposition is `U * M * V = D` with `U`, `V` unimodular and `D`
//! diagonal with a divisibility chain `d_1 | d_2 | ...`. Sizes here stay
//! tiny (at most 16 x 16), so a plain textbook elimination is enough.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let x = self[(i, t)];
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += x * other[(t, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss), exact in
    /// `i128` at these sizes.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for t in 0..n - 1 {
            if m[t][t] == 0 {
                let swap = (t + 1..n).find(|&i| m[i][t] != 0);
                match swap {
                    Some(i) => {
                        m.swap(t, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) / prev;
                }
                m[i][t] = 0;
            }
            prev = m[t][t];
        }
        sign * m[n - 1][n - 1]
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&d| d != 0).count()
    }

    /// Invariant factors larger than 1 of the cokernel `Z^cols / rowspace`.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&d| d > 1).collect()
    }

    /// Free rank of the cokernel `Z^cols / rowspace`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.d.cols() - self.rank()
    }
}

/// Smith normal form with recorded unimodular transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows());
    let mut v = IntegerMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    let swap_rows = |d: &mut IntegerMatrix, u: &mut IntegerMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..d.cols() {
            let t = d[(a, j)];
            d[(a, j)] = d[(b, j)];
            d[(b, j)] = t;
        }
        for j in 0..u.cols() {
            let t = u[(a, j)];
            u[(a, j)] = u[(b, j)];
            u[(b, j)] = t;
        }
    };
    let swap_cols = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..d.rows() {
            let t = d[(i, a)];
            d[(i, a)] = d[(i, b)];
            d[(i, b)] = t;
        }
        for i in 0..v.rows() {
            let t = v[(i, a)];
            v[(i, a)] = v[(i, b)];
            v[(i, b)] = t;
        }
    };
    // row[a] -= q * row[b]
    let add_row = |d: &mut IntegerMatrix, u: &mut IntegerMatrix, a: usize, b: usize, q: i64| {
        for j in 0..d.cols() {
            d[(a, j)] -= q * d[(b, j)];
        }
        for j in 0..u.cols() {
            u[(a, j)] -= q * u[(b, j)];
        }
    };
    let add_col = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, a: usize, b: usize, q: i64| {
        for i in 0..d.rows() {
            d[(i, a)] -= q * d[(i, b)];
        }
        for i in 0..v.rows() {
            v[(i, a)] -= q * v[(i, b)];
        }
    };

    let mut t = 0;
    while t < n {
        // pivot: smallest non-zero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows() {
            for j in t..d.cols() {
                if d[(i, j)] != 0
                    && pivot.map_or(true, |(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        // clear row and column t; restart whenever a remainder survives,
        // the pivot magnitude strictly drops each time
        let mut dirty = false;
        for i in t + 1..d.rows() {
            if d[(i, t)] != 0 {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                add_row(&mut d, &mut u, i, t, q);
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
        }
        for j in t + 1..d.cols() {
            if d[(t, j)] != 0 {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                add_col(&mut d, &mut v, j, t, q);
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }

        // divisibility: fold any bad entry into column t and redo
        let mut bad = None;
        'scan: for i in t + 1..d.rows() {
            for j in t + 1..d.cols() {
                if d[(i, j)] % d[(t, t)] != 0 {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            add_row(&mut d, &mut u, t, i, -1);
            continue;
        }

        if d[(t, t)] < 0 {
            add_row(&mut d, &mut u, t, t, 2); // negates the row
        }
        t += 1;
    }
    SmithNormalForm { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U*M*V != D");
        assert_eq!(snf.u.det().abs(), 1, "U not unimodular");
        assert_eq!(snf.v.det().abs(), 1, "V not unimodular");
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {diag:?}");
            } else {
                assert_eq!(w[1], 0);
            }
        }
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert_eq!(snf.d[(i, j)], 0, "off-diagonal junk");
                }
            }
        }
        snf
    }

    #[test]
    fn snf_small_known() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal(), vec![2, 2, 156]);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let snf = check(&m);
        assert_eq!(snf.rank(), 1);
        assert_eq!(snf.cokernel_free_rank(), 3);
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntegerMatrix::zero(3, 2);
        let snf = check(&m);
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.cokernel_free_rank(), 2);
    }

    #[test]
    fn snf_forces_divisibility() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal(), vec![1, 6]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntegerMatrix::identity(4).det(), 1);
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), -1);
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det(), 0);
    }
}
