//! Dense linear algebra over the coefficient field, for symbolic complement
//! maps (entries may be rational functions in the declared parameters).

use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_cols(cols: Vec<Vec<Scalar>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self[(i, k)].mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self[(i, j)].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = (row..self.rows).find(|&r| !self[(r, col)].is_zero());
            let Some(p) = pivot_row else { continue };
            for j in 0..self.cols {
                let t = self[(p, j)].clone();
                self[(p, j)] = self[(row, j)].clone();
                self[(row, j)] = t;
            }
            let inv = self[(row, col)].inv();
            for j in col..self.cols {
                self[(row, j)] = self[(row, j)].mul(&inv);
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let t = self[(row, j)].mul(&factor);
                        self[(r, j)] = self[(r, j)].sub(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { return Scalar::zero() };
            if p != col {
                for j in 0..n {
                    let t = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = t;
                }
                det = det.neg();
            }
            det = det.mul(&m[(col, col)]);
            let inv = m[(col, col)].inv();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for j in col..n {
                    let t = m[(col, j)].mul(&factor);
                    m[(r, j)] = m[(r, j)].sub(&t);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m[(r, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ParamSet;

    #[test]
    fn symbolic_inverse() {
        let ps = ParamSet::new(vec!["a".into(), "b".into(), "c".into()]);
        let a = Scalar::param(&ps, 0);
        let b = Scalar::param(&ps, 1);
        let c = Scalar::param(&ps, 2);
        let m = ScalarMatrix::from_rows(vec![
            vec![a.clone(), b.clone()],
            vec![b.clone(), c.clone()],
        ]);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert_eq!(prod, ScalarMatrix::identity(2));
        assert_eq!(m.det(), a.mul(&c).sub(&b.mul(&b)));
    }

    #[test]
    fn symbolic_kernel_and_solve() {
        let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
        let d1 = Scalar::param(&ps, 0);
        let d2 = Scalar::param(&ps, 1);
        // Row (d1, d2): kernel spanned by (-d2/d1, 1).
        let m = ScalarMatrix::from_rows(vec![vec![d1.clone(), d2.clone()]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let combo = d1.mul(&k[0][0]).add(&d2.mul(&k[0][1]));
        assert!(combo.is_zero());
        let sol = m.solve(&[Scalar::one()]).unwrap();
        assert!(d1.mul(&sol[0]).add(&d2.mul(&sol[1])).sub(&Scalar::one()).is_zero());
    }
}
