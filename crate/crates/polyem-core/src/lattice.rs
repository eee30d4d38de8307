//! Exact rational linear algebra and lattice bookkeeping: Hermite reduction,
//! adapted bases for sublattices, quotient lattices, dual-lattice normals and
//! lattice-normalized volumes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn vec_from_ints(v: &[i64]) -> RatVec {
    v.iter().map(|&x| rat_int(x)).collect()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_neg(a: &[Rat]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Dense exact rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVec>) -> Self {
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

    pub fn from_cols(cols: Vec<RatVec>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn col(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> RatVec {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(Rat::zero(), |s, t| s + t)
            })
            .collect()
    }

    /// Reduced row echelon form; returns pivot columns.
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
            let inv = self[(row, col)].recip();
            for j in col..self.cols {
                let t = &self[(row, j)] * &inv;
                self[(row, j)] = t;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let t = &self[(row, j)] * &factor;
                        self[(r, j)] -= t;
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

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != col {
                for j in 0..n {
                    let t = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = t;
                }
                det = -det;
            }
            det *= m[(col, col)].clone();
            let inv = m[(col, col)].recip();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..n {
                    let t = &m[(col, j)] * &factor;
                    m[(r, j)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
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

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<RatVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Mx = b`, if solvable.
    pub fn solve(&self, b: &[Rat]) -> Option<RatVec> {
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
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense integer matrix used by the Hermite reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rational(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = Rat::from_integer(self[(i, j)].clone());
            }
        }
        m
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Column-style Hermite reduction: returns `(H, U)` with `self * U = H`,
    /// `U` unimodular, and `H` in column echelon form (pivot of each
    /// successive nonzero column strictly lower, pivots positive, entries to
    /// the left of a pivot reduced modulo it; zero columns at the right).
    pub fn col_hermite(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.cols);
        let mut pivot_col = 0;
        for row in 0..self.rows {
            if pivot_col == self.cols {
                break;
            }
            // Euclidean elimination across columns pivot_col.. on this row.
            loop {
                let mut nonzero: Vec<usize> = (pivot_col..h.cols)
                    .filter(|&j| !h[(row, j)].is_zero())
                    .collect();
                if nonzero.is_empty() {
                    break;
                }
                if nonzero.len() == 1 {
                    let j = nonzero[0];
                    h.swap_cols(pivot_col, j);
                    u.swap_cols(pivot_col, j);
                    break;
                }
                // Pick the column with the smallest nonzero |entry|.
                nonzero.sort_by_key(|&j| h[(row, j)].abs());
                let jmin = nonzero[0];
                for &j in &nonzero[1..] {
                    let q = div_round(&h[(row, j)], &h[(row, jmin)]);
                    if !q.is_zero() {
                        h.col_axpy(j, jmin, &-&q);
                        u.col_axpy(j, jmin, &-&q);
                    }
                }
            }
            if h[(row, pivot_col)].is_zero() {
                continue;
            }
            if h[(row, pivot_col)].is_negative() {
                h.scale_col(pivot_col, &BigInt::from(-1));
                u.scale_col(pivot_col, &BigInt::from(-1));
            }
            // Reduce earlier columns against this pivot.
            let pivot = h[(row, pivot_col)].clone();
            for j in 0..pivot_col {
                let q = h[(row, j)].div_floor(&pivot);
                if !q.is_zero() {
                    h.col_axpy(j, pivot_col, &-&q);
                    u.col_axpy(j, pivot_col, &-&q);
                }
            }
            pivot_col += 1;
        }
        (h, u)
    }

    /// `col[target] += q * col[source]`.
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, source)] * q;
            self[(i, target)] += t;
        }
    }

    fn scale_col(&mut self, j: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, j)] * c;
            self[(i, j)] = t;
        }
    }

    /// Basis of the integer kernel `{x in Z^cols : self * x = 0}`; the basis
    /// generates the full (automatically saturated) kernel lattice.
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let (h, u) = self.col_hermite();
        let mut out = Vec::new();
        for j in 0..self.cols {
            if (0..self.rows).all(|i| h[(i, j)].is_zero()) {
                out.push(u.col(j));
            }
        }
        out
    }

    /// One integral solution of `self * x = b`, if any.
    pub fn solve_diophantine(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let (h, u) = self.col_hermite();
        // Forward-substitute through the echelon columns.
        let mut y = vec![BigInt::zero(); self.cols];
        let mut residual: Vec<BigInt> = b.to_vec();
        let mut col = 0;
        for row in 0..self.rows {
            if col < self.cols && !h[(row, col)].is_zero() {
                let (q, r) = residual[row].div_rem(&h[(row, col)]);
                if !r.is_zero() {
                    return None;
                }
                y[col] = q.clone();
                for i in row..self.rows {
                    let t = &h[(i, col)] * &q;
                    residual[i] -= t;
                }
                col += 1;
            } else if !residual[row].is_zero() {
                return None;
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for j in 0..self.cols {
            if y[j].is_zero() {
                continue;
            }
            for i in 0..self.cols {
                let t = &u[(i, j)] * &y[j];
                x[i] += t;
            }
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Rounded division used by the Euclidean column reduction.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let double_r: BigInt = &r * 2;
    if double_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Clear denominators of a rational matrix row set, returning integers.
pub fn scale_rows_to_int(rows: &[RatVec]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Scale a rational vector to a primitive integer vector (gcd 1), keeping
/// direction. Panics on the zero vector.
pub fn primitive_integer_direction(v: &[Rat]) -> Vec<BigInt> {
    assert!(!is_zero_vec(v), "zero direction has no primitive form");
    let ints = &scale_rows_to_int(&[v.to_vec()])[0];
    let mut g = BigInt::zero();
    for x in ints {
        g = g.gcd(x);
    }
    ints.iter().map(|x| x / &g).collect()
}

/// A full-rank lattice inside `V = Q^dim`, given by a basis matrix whose
/// columns generate the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeContext {
    dim: usize,
    basis: RatMatrix,
    inv_basis: RatMatrix,
    label: String,
}

impl LatticeContext {
    /// The standard lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        LatticeContext {
            dim,
            basis: RatMatrix::identity(dim),
            inv_basis: RatMatrix::identity(dim),
            label: format!("Z^{dim}"),
        }
    }

    pub fn new(basis: RatMatrix, label: impl Into<String>) -> Result<Self> {
        let dim = basis.rows;
        if basis.cols != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: basis.cols,
            });
        }
        let inv_basis = basis
            .inverse()
            .ok_or_else(|| Error::DegenerateInput("lattice basis is singular".into()))?;
        Ok(LatticeContext {
            dim,
            basis,
            inv_basis,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coordinates of `x` with respect to the lattice basis.
    pub fn to_lattice_coords(&self, x: &[Rat]) -> RatVec {
        self.inv_basis.mul_vec(x)
    }

    pub fn from_lattice_coords(&self, c: &[Rat]) -> RatVec {
        self.basis.mul_vec(c)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.to_lattice_coords(x).iter().all(|c| c.is_integer())
    }

    /// The primitive lattice vector in the direction of `v`.
    pub fn primitive_direction(&self, v: &[Rat]) -> RatVec {
        let coords = self.to_lattice_coords(v);
        let prim = primitive_integer_direction(&coords);
        self.from_lattice_coords(&prim.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>())
    }

    /// Basis of the dual lattice in dual coordinates (columns).
    pub fn dual(&self) -> LatticeContext {
        let basis = self.inv_basis.transpose();
        let inv_basis = self.basis.transpose();
        LatticeContext {
            dim: self.dim,
            basis,
            inv_basis,
            label: format!("{}^*", self.label),
        }
    }
}

/// An adapted basis for a rational subspace `W0` of `V`: the first
/// `sub_dim` columns of `adapted` generate the saturated sublattice
/// `Λ ∩ W0`, the rest descend to a basis of the quotient lattice.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub parent: LatticeContext,
    pub subspace: Vec<RatVec>,
    pub sub_dim: usize,
    /// Adapted lattice basis, ambient coordinates, columns.
    pub adapted: RatMatrix,
    /// Lifts of the quotient-lattice basis (ambient coordinates).
    pub quotient_basis: Vec<RatVec>,
    /// Matrix of the projection `V -> V/W0` in quotient coordinates.
    pub projection: RatMatrix,
    /// Section `V/W0 -> V` sending quotient coordinates to the lifts.
    pub lift: RatMatrix,
    /// The quotient lattice (standard `Z^(n-k)` in quotient coordinates).
    pub quotient_lattice: LatticeContext,
}

impl QuotientData {
    pub fn project(&self, x: &[Rat]) -> RatVec {
        self.projection.mul_vec(x)
    }

    pub fn lift_vec(&self, y: &[Rat]) -> RatVec {
        self.lift.mul_vec(y)
    }
}

/// Compute an adapted basis of `Λ` for the rational subspace spanned by
/// `w0` (given in ambient coordinates).
pub fn adapted_basis(lattice: &LatticeContext, w0: &[RatVec]) -> QuotientData {
    let n = lattice.dim();
    // Subspace basis in lattice coordinates.
    let coords: Vec<RatVec> = w0.iter().map(|w| lattice.to_lattice_coords(w)).collect();
    let span = if coords.is_empty() {
        RatMatrix::zero(0, n)
    } else {
        RatMatrix::from_rows(coords.clone())
    };
    let k = span.rank();

    // Annihilator rows: rational kernel of span (as row space), integral.
    let ann = span.kernel();
    let ann_int = scale_rows_to_int(&ann);
    let a = IntMat::from_rows(ann_int);

    // Saturated basis of Λ ∩ W0 (lattice coordinates).
    let kernel = if a.rows == 0 {
        // W0 = V: the whole lattice.
        (0..n)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = BigInt::one();
                v
            })
            .collect()
    } else {
        a.integer_kernel()
    };
    assert_eq!(kernel.len(), k, "kernel dimension mismatch");

    // Complete to a basis of Z^n: column-Hermite of K^T gives K^T U = [I|0],
    // so K equals the first k columns of (U^T)^{-1}.
    let adapted_lattice_coords: IntMat = if k == 0 {
        IntMat::identity(n)
    } else {
        let kt = IntMat::from_rows(
            (0..k)
                .map(|j| (0..n).map(|i| kernel[j][i].clone()).collect())
                .collect(),
        );
        let (h, u) = kt.col_hermite();
        for i in 0..k {
            debug_assert!(h[(i, i)].is_one(), "saturated basis must complete unimodularly");
        }
        let u_rat = u.to_rational();
        let m = u_rat
            .transpose()
            .inverse()
            .expect("unimodular transform is invertible");
        let mut im = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                assert!(m[(i, j)].is_integer());
                im[(i, j)] = m[(i, j)].numer().clone();
            }
        }
        im
    };

    // Back to ambient coordinates.
    let m_rat = adapted_lattice_coords.to_rational();
    let adapted = lattice.basis().mul(&m_rat);
    let adapted_inv = adapted.inverse().expect("adapted basis invertible");

    // Projection: last n-k adapted coordinates.
    let mut projection = RatMatrix::zero(n - k, n);
    for i in 0..n - k {
        for j in 0..n {
            projection[(i, j)] = adapted_inv[(k + i, j)].clone();
        }
    }
    let mut lift = RatMatrix::zero(n, n - k);
    for i in 0..n {
        for j in 0..n - k {
            lift[(i, j)] = adapted[(i, k + j)].clone();
        }
    }
    let quotient_basis = (0..n - k).map(|j| lift.col(j)).collect();

    QuotientData {
        parent: lattice.clone(),
        subspace: w0.to_vec(),
        sub_dim: k,
        adapted,
        quotient_basis,
        projection,
        lift,
        quotient_lattice: LatticeContext::standard(n - k),
    }
}

/// Volume of the parallelepiped of `vectors` in the measure where a basis of
/// `Λ ∩ span(vectors)` has volume 1.
pub fn relative_volume(vectors: &[RatVec], lattice: &LatticeContext) -> Result<Rat> {
    let k = vectors.len();
    if k == 0 {
        return Ok(Rat::one());
    }
    let span = RatMatrix::from_rows(vectors.to_vec());
    if span.rank() != k {
        return Err(Error::DependentGenerators);
    }
    let qd = adapted_basis(lattice, vectors);
    // Express each vector in the adapted sublattice basis.
    let inv = qd
        .adapted
        .inverse()
        .expect("adapted basis invertible");
    let mut c = RatMatrix::zero(k, k);
    for (j, v) in vectors.iter().enumerate() {
        let coords = inv.mul_vec(v);
        for (i, coord) in coords.iter().enumerate() {
            if i < k {
                c[(i, j)] = coord.clone();
            } else {
                assert!(coord.is_zero(), "vector outside its own span");
            }
        }
    }
    let det = c.det();
    Ok(det.abs())
}

/// The primitive dual-lattice normal of a codimension-1 subspace, positive
/// on the designated side.
pub fn primitive_normal(
    facet_span: &[RatVec],
    side: &[Rat],
    lattice: &LatticeContext,
) -> Result<RatVec> {
    let n = lattice.dim();
    let span = if facet_span.is_empty() {
        RatMatrix::zero(0, n)
    } else {
        RatMatrix::from_rows(facet_span.to_vec())
    };
    let rank = span.rank();
    if rank != n - 1 {
        return Err(Error::WrongCodimension(n - rank));
    }
    let normals = span.kernel();
    assert_eq!(normals.len(), 1);
    let w = &normals[0];
    // Express in dual-lattice coordinates and normalize to primitive there.
    let dual = lattice.dual();
    let coords = dual.to_lattice_coords(w);
    let prim = primitive_integer_direction(&coords);
    let mut rho = dual.from_lattice_coords(
        &prim
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    );
    let pairing = dot(&rho, side);
    if pairing.is_zero() {
        return Err(Error::DegenerateInput(
            "side vector lies in the facet span".into(),
        ));
    }
    if pairing.is_negative() {
        rho = vec_neg(&rho);
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_kernel_saturated() {
        // Kernel of [2 1] over Z is generated by (1, -2)... check saturation:
        // actually kernel of the 1x2 matrix [2 1]: x with 2x1 + x2 = 0:
        // generated by (1, -2).
        let a = IntMat::from_rows(vec![vec![BigInt::from(2), BigInt::from(1)]]);
        let k = a.integer_kernel();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[1].clone(), -(&v[0] * BigInt::from(2)));
        let g = v[0].gcd(&v[1]);
        assert!(g.is_one());
    }

    #[test]
    fn adapted_basis_z2_diagonal() {
        let lat = LatticeContext::standard(2);
        let qd = adapted_basis(&lat, &[vec_from_ints(&[2, 1])]);
        assert_eq!(qd.sub_dim, 1);
        // First adapted vector must be primitive (2,1).
        let first = qd.adapted.col(0);
        assert_eq!(first, vec_from_ints(&[2, 1]));
        // Whole adapted basis is unimodular.
        assert_eq!(qd.adapted.det().abs(), rat_int(1));
        // projection ∘ lift = identity on the quotient.
        let pl = qd.projection.mul(&qd.lift);
        assert_eq!(pl, RatMatrix::identity(1));
    }

    #[test]
    fn adapted_basis_z3_two_dim() {
        let lat = LatticeContext::standard(3);
        let qd = adapted_basis(
            &lat,
            &[vec_from_ints(&[1, 1, 0]), vec_from_ints(&[0, 1, 1])],
        );
        assert_eq!(qd.sub_dim, 2);
        assert_eq!(qd.quotient_lattice.dim(), 1);
        // Projection kernel is exactly W0.
        for w in &qd.subspace {
            assert!(is_zero_vec(&qd.project(w)));
        }
        assert_eq!(qd.adapted.det().abs(), rat_int(1));
    }

    #[test]
    fn relative_volume_examples() {
        let lat = LatticeContext::standard(2);
        assert_eq!(
            relative_volume(&[vec_from_ints(&[1, 0]), vec_from_ints(&[0, 1])], &lat).unwrap(),
            rat_int(1)
        );
        // Edge of the (0,0),(2,0),(0,1) triangle has relative length 2.
        assert_eq!(
            relative_volume(&[vec_from_ints(&[2, 0])], &lat).unwrap(),
            rat_int(2)
        );
        assert!(relative_volume(
            &[vec_from_ints(&[1, 1]), vec_from_ints(&[2, 2])],
            &lat
        )
        .is_err());
    }

    #[test]
    fn primitive_normal_examples() {
        let lat = LatticeContext::standard(2);
        let rho = primitive_normal(&[vec_from_ints(&[1, 0])], &vec_from_ints(&[0, 1]), &lat)
            .unwrap();
        assert_eq!(rho, vec_from_ints(&[0, 1]));
        // Facet span (2,-1), side toward the interior of
        // Cone((0,-1),(2,-1)): e.g. direction (0,-1).
        let rho2 = primitive_normal(&[vec_from_ints(&[2, -1])], &vec_from_ints(&[0, -1]), &lat)
            .unwrap();
        assert_eq!(rho2, vec_from_ints(&[-1, -2]));
    }

    #[test]
    fn diophantine_solve() {
        // 2x + 4y = 6 has integer solutions; = 7 does not.
        let a = IntMat::from_rows(vec![vec![BigInt::from(2), BigInt::from(4)]]);
        let x = a.solve_diophantine(&[BigInt::from(6)]).unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 4, BigInt::from(6));
        assert!(a.solve_diophantine(&[BigInt::from(7)]).is_none());
    }

    #[test]
    fn general_lattice_membership() {
        // Lattice generated by (2,0) and (1,1).
        let basis = RatMatrix::from_cols(vec![vec_from_ints(&[2, 0]), vec_from_ints(&[1, 1])]);
        let lat = LatticeContext::new(basis, "L").unwrap();
        assert!(lat.contains(&vec_from_ints(&[3, 1])));
        assert!(!lat.contains(&vec_from_ints(&[1, 0])));
        assert_eq!(
            lat.primitive_direction(&vec_from_ints(&[4, 0])),
            vec_from_ints(&[2, 0])
        );
    }
}
