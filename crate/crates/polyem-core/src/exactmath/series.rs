//! Truncated multivariate Taylor series with certified-order bookkeeping.
//!
//! Storage is dense by total degree (the supported pipeline stays at four
//! variables or fewer). Every series tracks the degree up to which its
//! coefficients are certified exact: multiplying two series certifies to the
//! minimum of the operands, and each exact division by a linear form costs
//! one certified degree. Callers that intend to divide must request the
//! extra padding upfront.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use super::scalar::Scalar;

/// Monomial enumeration for a fixed variable count and degree bound,
/// graded-lex ascending. Shared via a global cache. A dense strided lookup
/// keeps index computation allocation-free in the multiplication kernels.
#[derive(Debug)]
pub struct MonoTable {
    pub exps: Vec<Vec<u16>>,
    pub index: HashMap<Vec<u16>, usize>,
    /// First index of each total degree (length `order + 2`).
    pub degree_start: Vec<usize>,
    strides: Vec<usize>,
    flat: Vec<usize>,
}

impl MonoTable {
    /// Flat index of an exponent vector, `None` beyond the degree bound.
    #[inline]
    pub fn idx(&self, exps: &[u16]) -> Option<usize> {
        let mut key = 0usize;
        for (e, s) in exps.iter().zip(&self.strides) {
            key += *e as usize * s;
        }
        match self.flat.get(key) {
            Some(&i) if i != usize::MAX => Some(i),
            _ => None,
        }
    }

    #[inline]
    fn idx_sum(&self, a: &[u16], b: &[u16]) -> Option<usize> {
        let mut key = 0usize;
        for i in 0..a.len() {
            key += (a[i] + b[i]) as usize * self.strides[i];
        }
        match self.flat.get(key) {
            Some(&i) if i != usize::MAX => Some(i),
            _ => None,
        }
    }
}

fn enumerate_degree(nvars: usize, degree: u16) -> Vec<Vec<u16>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    // Ascending lex: smallest first exponent first.
    for first in 0..=degree {
        for mut tail in enumerate_degree(nvars - 1, degree - first) {
            let mut v = Vec::with_capacity(nvars);
            v.push(first);
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

pub fn mono_table(nvars: usize, order: usize) -> Arc<MonoTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonoTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((nvars, order))
        .or_insert_with(|| {
            let mut exps = Vec::new();
            let mut degree_start = vec![0usize];
            for d in 0..=order {
                exps.extend(enumerate_degree(nvars, d as u16));
                degree_start.push(exps.len());
            }
            let index: HashMap<Vec<u16>, usize> = exps
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect();
            let width = order + 1;
            let strides: Vec<usize> = (0..nvars).map(|i| width.pow(i as u32)).collect();
            let mut flat = vec![usize::MAX; width.pow(nvars as u32).max(1)];
            for (i, e) in exps.iter().enumerate() {
                let key: usize = e
                    .iter()
                    .zip(&strides)
                    .map(|(x, s)| *x as usize * s)
                    .sum();
                flat[key] = i;
            }
            Arc::new(MonoTable {
                exps,
                index,
                degree_start,
                strides,
                flat,
            })
        })
        .clone()
}

/// A truncated multivariate power series over [`Scalar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    nvars: usize,
    order: usize,
    valid: usize,
    coeffs: Vec<Scalar>,
}

impl TruncSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        let table = mono_table(nvars, order);
        TruncSeries {
            nvars,
            order,
            valid: order,
            coeffs: vec![Scalar::zero(); table.exps.len()],
        }
    }

    pub fn constant(nvars: usize, order: usize, c: Scalar) -> Self {
        let mut s = Self::zero(nvars, order);
        s.coeffs[0] = c;
        s
    }

    /// The degree-1 series of the linear form with the given coefficients.
    pub fn linear_form(order: usize, coeffs: &[Scalar]) -> Self {
        let nvars = coeffs.len();
        let mut s = Self::zero(nvars, order);
        if order == 0 {
            return s;
        }
        let table = mono_table(nvars, order);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u16; nvars];
            e[i] = 1;
            s.coeffs[table.index[&e]] = c.clone();
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn valid_order(&self) -> usize {
        self.valid
    }

    fn with_valid(mut self, valid: usize) -> Self {
        self.valid = valid.min(self.order);
        self.clamp_to_valid();
        self
    }

    /// Zero out everything above the certified degree so uncertified
    /// coefficients can never leak.
    fn clamp_to_valid(&mut self) {
        let table = mono_table(self.nvars, self.order);
        let cut = table.degree_start[self.valid + 1];
        for c in &mut self.coeffs[cut..] {
            *c = Scalar::zero();
        }
    }

    pub fn coeff(&self, exps: &[u16]) -> Scalar {
        let table = mono_table(self.nvars, self.order);
        match table.index.get(exps) {
            Some(&i) => self.coeffs[i].clone(),
            None => Scalar::zero(),
        }
    }

    pub fn set_coeff(&mut self, exps: &[u16], c: Scalar) {
        let table = mono_table(self.nvars, self.order);
        let i = table.idx(exps).expect("exponent within bound");
        self.coeffs[i] = c;
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero (monomial, coefficient) pairs up to the certified order.
    pub fn terms(&self) -> Vec<(Vec<u16>, Scalar)> {
        let table = mono_table(self.nvars, self.order);
        let cut = table.degree_start[self.valid + 1];
        (0..cut)
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| (table.exps[i].clone(), self.coeffs[i].clone()))
            .collect()
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::MismatchedVariables(format!(
                "{} vs {} series variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let valid = self.valid.min(other.valid);
        // The monomial enumeration for a smaller bound is a prefix of the
        // one for a larger bound, so truncation is a slice.
        let mut out = Self::zero(self.nvars, order);
        let len = out.coeffs.len();
        for i in 0..len {
            let a = &self.coeffs[i];
            let b = &other.coeffs[i];
            out.coeffs[i] = if b.is_zero() {
                a.clone()
            } else if a.is_zero() {
                b.clone()
            } else {
                a.add(b)
            };
        }
        Ok(out.with_valid(valid))
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> TruncSeries {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            if !x.is_zero() {
                *x = x.mul(c);
            }
        }
        out
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let valid = self.valid.min(other.valid);
        let mut out = Self::zero(self.nvars, order);
        let out_table = mono_table(self.nvars, order);
        let ta = mono_table(self.nvars, self.order);
        let tb = mono_table(self.nvars, other.order);
        let a_cut = ta.degree_start[(self.valid.min(order)) + 1];
        let b_cut = tb.degree_start[(other.valid.min(order)) + 1];
        let a_nonzero: Vec<usize> = (0..a_cut).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let b_nonzero: Vec<usize> = (0..b_cut).filter(|&i| !other.coeffs[i].is_zero()).collect();
        for &ia in &a_nonzero {
            let ea = &ta.exps[ia];
            let da = ea.iter().map(|&e| e as usize).sum::<usize>();
            for &ib in &b_nonzero {
                let eb = &tb.exps[ib];
                let db = eb.iter().map(|&e| e as usize).sum::<usize>();
                if da + db > order {
                    continue;
                }
                let idx = out_table.idx_sum(ea, eb).expect("within bound");
                out.coeffs[idx] = out.coeffs[idx].add(&self.coeffs[ia].mul(&other.coeffs[ib]));
            }
        }
        Ok(out.with_valid(valid))
    }

    /// Multiply by the linear form with the given coefficients. Keeps the
    /// certified order (a polynomial factor is exact).
    pub fn mul_linear(&self, coeffs: &[Scalar]) -> TruncSeries {
        assert_eq!(coeffs.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.order);
        let table = mono_table(self.nvars, self.order);
        let mut e2 = vec![0u16; self.nvars];
        for (i, e) in table.exps.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if d + 1 > self.order {
                continue;
            }
            for (v, cv) in coeffs.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                e2.copy_from_slice(e);
                e2[v] += 1;
                let idx = table.idx(&e2).expect("within bound");
                out.coeffs[idx] = out.coeffs[idx].add(&self.coeffs[i].mul(cv));
            }
        }
        out.with_valid(self.valid)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let c0_inv = c0.inv();
        let table = mono_table(self.nvars, self.order);
        let cut = table.degree_start[self.valid + 1];
        let mut inv = Self::zero(self.nvars, self.order);
        inv.coeffs[0] = c0_inv.clone();
        // Order-by-order: q_a = -1/c0 * sum_{0 < b <= a} s_b q_{a-b}.
        for ia in 1..cut {
            let ea = &table.exps[ia];
            let mut acc = Scalar::zero();
            for ib in 1..cut {
                let eb = &table.exps[ib];
                if self.coeffs[ib].is_zero() {
                    continue;
                }
                let diff: Option<Vec<u16>> = ea
                    .iter()
                    .zip(eb)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect();
                if let Some(diff) = diff {
                    let j = table.index[&diff];
                    acc = acc.add(&self.coeffs[ib].mul(&inv.coeffs[j]));
                }
            }
            inv.coeffs[ia] = acc.mul(&c0_inv).neg();
        }
        Ok(inv.with_valid(self.valid))
    }

    /// Exact division by the linear form `<xi, v>`, homogeneous component by
    /// component. Fails with [`Error::GenuinePole`] when any certified
    /// component is not divisible. Certified order drops by exactly one.
    ///
    /// Each homogeneous component is reduced by one triangular pass: within
    /// a fixed degree the monomials are processed by descending pivot
    /// exponent, and every elimination step only touches monomials with a
    /// strictly smaller pivot exponent.
    pub fn divide_by_linear_form(&self, v: &[Scalar]) -> Result<TruncSeries> {
        assert_eq!(v.len(), self.nvars);
        if self.valid == 0 {
            return Err(Error::GenuinePole);
        }
        let pivot = v
            .iter()
            .position(|c| !c.is_zero())
            .expect("zero linear form");
        let pivot_inv = v[pivot].inv();
        if !self.constant_term().is_zero() {
            return Err(Error::GenuinePole);
        }
        let table = mono_table(self.nvars, self.order);
        let out_order = self.order - 1;
        let mut out = Self::zero(self.nvars, out_order);
        let out_table = mono_table(self.nvars, out_order);

        let mut work = self.coeffs.clone();
        let mut e_buf = vec![0u16; self.nvars];
        for d in 1..=self.valid {
            let mut order_idx: Vec<usize> =
                (table.degree_start[d]..table.degree_start[d + 1]).collect();
            order_idx.sort_by(|&a, &b| table.exps[b][pivot].cmp(&table.exps[a][pivot]));
            for i in order_idx {
                if work[i].is_zero() {
                    continue;
                }
                let exps = &table.exps[i];
                if exps[pivot] == 0 {
                    return Err(Error::GenuinePole);
                }
                e_buf.copy_from_slice(exps);
                e_buf[pivot] -= 1;
                let qc = work[i].mul(&pivot_inv);
                let qi = out_table.idx(&e_buf).expect("within bound");
                out.coeffs[qi] = qc.clone();
                for (j, vc) in v.iter().enumerate() {
                    if j == pivot || vc.is_zero() {
                        continue;
                    }
                    e_buf[j] += 1;
                    let ti = table.idx(&e_buf).expect("same degree");
                    work[ti] = work[ti].sub(&qc.mul(vc));
                    e_buf[j] -= 1;
                }
            }
        }
        Ok(out.with_valid(self.valid - 1))
    }

    /// Substitute the linear form `<xi, v>` into a univariate series with
    /// the given coefficients: `sum_k u_k <xi,v>^k`.
    pub fn compose_univariate(
        univariate: &[Scalar],
        v: &[Scalar],
        nvars: usize,
        order: usize,
    ) -> TruncSeries {
        let mut acc = Self::zero(nvars, order);
        let mut power = Self::constant(nvars, order, Scalar::one());
        for (k, u) in univariate.iter().enumerate().take(order + 1) {
            if k > 0 {
                power = power.mul_linear(v);
            }
            if !u.is_zero() {
                for (i, p) in power.coeffs.iter().enumerate() {
                    if !p.is_zero() {
                        acc.coeffs[i] = acc.coeffs[i].add(&p.mul(u));
                    }
                }
            }
        }
        acc
    }

    /// Series of `exp(<xi, v>)`.
    pub fn exp_linear(v: &[Scalar], order: usize) -> TruncSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for k in 0..=order {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            coeffs.push(Scalar::from_rational(BigRational::new(
                BigInt::one(),
                fact.clone(),
            )));
        }
        Self::compose_univariate(&coeffs, v, v.len(), order)
    }

    /// Pretty-print with variable names `xi1..xin`, ascending degrees.
    pub fn render(&self) -> String {
        let table = mono_table(self.nvars, self.order);
        let cut = table.degree_start[self.valid + 1];
        let mut parts = Vec::new();
        for i in 0..cut {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let mut factors = vec![format!("({})", self.coeffs[i].render())];
            for (v, &e) in table.exps[i].iter().enumerate() {
                if e == 1 {
                    factors.push(format!("xi{}", v + 1));
                } else if e > 1 {
                    factors.push(format!("xi{}^{}", v + 1, e));
                }
            }
            parts.push(factors.join("*"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Coefficients of `E(z) = (e^z - 1)/z = sum z^k/(k+1)!` to the given order.
pub fn unit_exp_series(order: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = BigInt::one(); // (k+1)!
    for k in 0..=order {
        fact *= BigInt::from(k + 1);
        out.push(Scalar::from_rational(BigRational::new(
            BigInt::one(),
            fact.clone(),
        )));
    }
    out
}

/// Invert a univariate series given by its coefficient list (unit constant
/// term required).
pub fn invert_univariate(coeffs: &[Scalar]) -> Vec<Scalar> {
    assert!(!coeffs[0].is_zero(), "zero constant term");
    let c0_inv = coeffs[0].inv();
    let mut inv = vec![Scalar::zero(); coeffs.len()];
    inv[0] = c0_inv.clone();
    for k in 1..coeffs.len() {
        let mut acc = Scalar::zero();
        for j in 1..=k {
            if j < coeffs.len() {
                acc = acc.add(&coeffs[j].mul(&inv[k - j]));
            }
        }
        inv[k] = acc.mul(&c0_inv).neg();
    }
    inv
}

/// Univariate coefficients of the Bernoulli generating series
/// `B(z) = 1/(1 - e^z) + 1/z = 1/2 - z/12 + z^3/720 - ...`.
pub fn bernoulli_coeffs(order: usize) -> Vec<Scalar> {
    // B(z) = (E(z) - 1)/z * E(z)^{-1} with E(z) = (e^z - 1)/z.
    let e = unit_exp_series(order + 1);
    let e_inv = invert_univariate(&e);
    // (E(z) - 1)/z has coefficients e[k+1].
    let shifted: Vec<Scalar> = (0..=order).map(|k| e[k + 1].clone()).collect();
    let mut out = vec![Scalar::zero(); order + 1];
    for k in 0..=order {
        let mut acc = Scalar::zero();
        for j in 0..=k {
            acc = acc.add(&shifted[j].mul(&e_inv[k - j]));
        }
        out[k] = acc;
    }
    out
}

/// The Bernoulli generating series as a one-variable truncated series.
pub fn bernoulli_series(order: usize) -> TruncSeries {
    let coeffs = bernoulli_coeffs(order);
    let one_var = vec![Scalar::one()];
    TruncSeries::compose_univariate(&coeffs, &one_var, 1, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn difference_of_squares() {
        // (1 + xi1)(1 - xi1) at order 2 -> 1 - xi1^2
        let one_plus = TruncSeries::constant(1, 2, Scalar::one())
            .add(&TruncSeries::linear_form(2, &[Scalar::one()]))
            .unwrap();
        let one_minus = TruncSeries::constant(1, 2, Scalar::one())
            .add(&TruncSeries::linear_form(2, &[Scalar::from_int(-1)]))
            .unwrap();
        let prod = one_plus.mul(&one_minus).unwrap();
        assert_eq!(prod.coeff(&[0]), Scalar::one());
        assert_eq!(prod.coeff(&[1]), Scalar::zero());
        assert_eq!(prod.coeff(&[2]), Scalar::from_int(-1));
    }

    #[test]
    fn bernoulli_known_coefficients() {
        let b = bernoulli_series(6);
        assert_eq!(b.coeff(&[0]), sc(1, 2));
        assert_eq!(b.coeff(&[1]), sc(-1, 12));
        assert_eq!(b.coeff(&[2]), Scalar::zero());
        assert_eq!(b.coeff(&[3]), sc(1, 720));
        assert_eq!(b.coeff(&[4]), Scalar::zero());
        assert_eq!(b.coeff(&[5]), sc(-1, 30240));
        assert_eq!(b.coeff(&[6]), Scalar::zero());
    }

    #[test]
    fn bernoulli_times_z() {
        // B(xi1) * xi1 at order 4 -> xi1/2 - xi1^2/12 + xi1^4/720
        let b = bernoulli_series(4);
        let prod = b.mul_linear(&[Scalar::one()]);
        assert_eq!(prod.coeff(&[1]), sc(1, 2));
        assert_eq!(prod.coeff(&[2]), sc(-1, 12));
        assert_eq!(prod.coeff(&[3]), Scalar::zero());
        assert_eq!(prod.coeff(&[4]), sc(1, 720));
    }

    #[test]
    fn bernoulli_reflection() {
        // B(z) + B(-z) = 1 to any order.
        let order = 10;
        let coeffs = bernoulli_coeffs(order);
        for (k, c) in coeffs.iter().enumerate() {
            let reflected = if k % 2 == 0 { c.clone() } else { c.neg() };
            let sum = c.add(&reflected);
            if k == 0 {
                assert!(sum.is_one());
            } else {
                assert!(sum.is_zero(), "odd reflection failed at degree {k}");
            }
        }
        // Even coefficients beyond the constant vanish (B - 1/2 is odd).
        for k in (2..=order).step_by(2) {
            assert!(coeffs[k].is_zero());
        }
    }

    #[test]
    fn geometric_inverse() {
        // (1 + xi1)^{-1} = 1 - xi1 + xi1^2 - ...
        let s = TruncSeries::constant(1, 5, Scalar::one())
            .add(&TruncSeries::linear_form(5, &[Scalar::one()]))
            .unwrap();
        let inv = s.invert().unwrap();
        for k in 0..=5u16 {
            let expected = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(&[k]), Scalar::from_int(expected));
        }
        // invert twice returns the original.
        let back = inv.invert().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn divide_by_linear_form_exact() {
        // s = xi1*xi2 + xi1^2 divided by xi1 -> xi2 + xi1
        let x1 = TruncSeries::linear_form(3, &[Scalar::one(), Scalar::zero()]);
        let x2 = TruncSeries::linear_form(3, &[Scalar::zero(), Scalar::one()]);
        let s = x1.mul(&x2).unwrap().add(&x1.mul(&x1).unwrap()).unwrap();
        let q = s
            .divide_by_linear_form(&[Scalar::one(), Scalar::zero()])
            .unwrap();
        assert_eq!(q.coeff(&[1, 0]), Scalar::one());
        assert_eq!(q.coeff(&[0, 1]), Scalar::one());
        assert_eq!(q.valid_order(), s.valid_order() - 1);
    }

    #[test]
    fn divide_detects_genuine_pole() {
        let x2 = TruncSeries::linear_form(3, &[Scalar::zero(), Scalar::one()]);
        let err = x2.divide_by_linear_form(&[Scalar::one(), Scalar::zero()]);
        assert!(matches!(err, Err(Error::GenuinePole)));
    }

    #[test]
    fn bernoulli_of_sum_via_division() {
        // <xi,v> * B(<xi,v>) for v=(1,1), divided by the form, recovers
        // B(xi1+xi2) coefficients.
        let v = [Scalar::one(), Scalar::one()];
        let b_coeffs = bernoulli_coeffs(5);
        let b2 = TruncSeries::compose_univariate(&b_coeffs, &v, 2, 5);
        let prod = b2.mul_linear(&v);
        let back = prod.divide_by_linear_form(&v).unwrap();
        assert_eq!(back.coeff(&[0, 0]), sc(1, 2));
        assert_eq!(back.coeff(&[1, 0]), sc(-1, 12));
        assert_eq!(back.coeff(&[0, 1]), sc(-1, 12));
        assert_eq!(back.coeff(&[2, 1]), sc(3, 720)); // z^3 coeff 1/720 * C(3,2)
    }

    #[test]
    fn mismatched_variables_error() {
        let a = TruncSeries::zero(1, 2);
        let b = TruncSeries::zero(2, 2);
        assert!(a.add(&b).is_err());
    }
}
