//! Multivariate polynomials over the coefficient field, used both for
//! exponential-sum numerators (variables `xi1..xin`) and for polynomial
//! integrands on `V` (variables `x1..xn`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::intpoly::Mono;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono(vec![0; nvars]), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Mono(e), Scalar::one());
        p
    }

    pub fn linear_form(coeffs: &[Scalar]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u16; nvars];
            e[i] = 1;
            p.add_term(Mono(e), c.clone());
        }
        p
    }

    pub fn monomial(nvars: usize, exps: &[u16], c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(Mono(exps.to_vec()), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn coeff(&self, exps: &[u16]) -> Scalar {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Mono(exps), c.mul(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// Apply the multi-index derivative `∂^alpha`.
    pub fn derivative_multi(&self, alpha: &[u16]) -> Poly {
        let mut out = self.clone();
        for (i, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                out = out.derivative(i);
            }
        }
        out
    }

    /// Evaluate at a scalar point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute polynomials for the variables (affine maps, pullbacks).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(self.nvars);
        let mut acc = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Render with the given variable names, ascending graded-lex.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let cs = c.render();
            if cs != "1" || m.degree() == 0 {
                if cs.contains(' ') || cs.contains('/') && !cs.starts_with('(') {
                    factors.push(format!("({cs})"));
                } else {
                    factors.push(cs);
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivatives() {
        // p = x1^2 * x2 + 2 x2
        let p = Poly::monomial(2, &[2, 1], Scalar::one())
            .add(&Poly::monomial(2, &[0, 1], Scalar::from_int(2)));
        let dx1 = p.derivative(0);
        assert_eq!(dx1, Poly::monomial(2, &[1, 1], Scalar::from_int(2)));
        let dboth = p.derivative_multi(&[2, 1]);
        assert_eq!(dboth, Poly::constant(2, Scalar::from_int(2)));
        let at = p.eval(&[Scalar::from_int(3), Scalar::from_int(5)]);
        assert_eq!(at, Scalar::from_int(45 + 10));
    }

    #[test]
    fn substitution() {
        // p(x) = x1^2 at x1 = t1 + t2 gives t1^2 + 2 t1 t2 + t2^2.
        let p = Poly::monomial(1, &[2], Scalar::one());
        let image = Poly::linear_form(&[Scalar::one(), Scalar::one()]);
        let q = p.substitute(&[image]);
        assert_eq!(q.coeff(&[2, 0]), Scalar::one());
        assert_eq!(q.coeff(&[1, 1]), Scalar::from_int(2));
        assert_eq!(q.coeff(&[0, 2]), Scalar::one());
    }
}
