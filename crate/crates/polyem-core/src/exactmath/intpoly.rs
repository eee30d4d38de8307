//! Multivariate polynomials with integer coefficients.
//!
//! These are the numerators and denominators of [`Scalar`](super::Scalar):
//! polynomials in the declared symbolic parameters, canonically ordered by
//! the graded lexicographic monomial order. The module provides the exact
//! arithmetic needed for rational-function normalization, in particular
//! content extraction and a primitive-PRS multivariate gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial. Ordered graded-lexicographically:
/// total degree first, then lexicographic with earlier variables weighing
/// more, so that `d1^2 > d1*d2 > d2^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference; `None` if any exponent would go negative.
    pub fn checked_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A polynomial in `nvars` variables over the integers.
///
/// Invariant: no explicit zero coefficients are stored, and every stored
/// exponent vector has length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0u16; nvars];
        exps[index] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Mono(exps), BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_coeff().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.terms
            .get(&Mono(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Leading (graded-lex greatest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_positive(&self) -> bool {
        self.leading().map(|(_, c)| c.is_positive()).unwrap_or(false)
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_bigint(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca * c);
        }
        out
    }

    /// Exact division, `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.checked_div(dm)?;
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&d.mul_mono(&qm, &qc));
        }
        Some(quot)
    }

    /// Gcd of the integer coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    #[allow(dead_code)]
    fn divide_content(&self, g: &BigInt) -> IntPoly {
        if g.is_one() {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c / g);
        }
        out
    }

    /// Highest exponent of variable `v`.
    fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in variable `v`; coefficients keep
    /// all `nvars` slots with the `v` exponent zeroed.
    fn as_univariate(&self, v: usize) -> BTreeMap<u16, IntPoly> {
        let mut out: BTreeMap<u16, IntPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.0[v];
            let mut stripped = m.clone();
            stripped.0[v] = 0;
            out.entry(d)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(stripped, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_univariate(nvars: usize, v: usize, coeffs: &BTreeMap<u16, IntPoly>) -> IntPoly {
        let mut out = Self::zero(nvars);
        for (d, p) in coeffs {
            for (m, c) in &p.terms {
                let mut full = m.clone();
                full.0[v] = *d;
                out.add_term(full, c.clone());
            }
        }
        out
    }

    /// Gcd of the univariate coefficient list (the "content" over the
    /// remaining variables).
    fn poly_content(coeffs: &BTreeMap<u16, IntPoly>, nvars: usize) -> IntPoly {
        let mut g = Self::zero(nvars);
        for p in coeffs.values() {
            g = Self::gcd(&g, p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multivariate gcd via the primitive pseudo-remainder sequence,
    /// normalized so the leading coefficient is positive.
    pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        assert_eq!(a.nvars, b.nvars);
        let mut g = Self::gcd_inner(a, b);
        if !g.is_zero() && !g.leading_coeff_positive() {
            g = g.neg();
        }
        g
    }

    fn gcd_inner(a: &IntPoly, b: &IntPoly) -> IntPoly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return Self::constant(a.nvars, a.content().gcd(&b.content()));
        }
        // Main variable: the last one appearing in either operand.
        let v = (0..a.nvars)
            .rev()
            .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
            .expect("non-constant polynomial must use a variable");

        let ua = a.as_univariate(v);
        let ub = b.as_univariate(v);
        let cont_a = Self::poly_content(&ua, a.nvars);
        let cont_b = Self::poly_content(&ub, a.nvars);
        let cont_gcd = Self::gcd_inner(&cont_a, &cont_b);

        let mut f = Self::primitive_univariate(&ua, &cont_a, a.nvars, v);
        let mut g = Self::primitive_univariate(&ub, &cont_b, a.nvars, v);
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = Self::pseudo_rem(&f, &g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                // Primitive parts are coprime in the main variable.
                g = Self::one(a.nvars);
                break;
            }
            f = g;
            g = Self::primitive_in(&r, v);
        }
        let gp = Self::primitive_in(&g, v);
        cont_gcd.mul(&gp)
    }

    fn primitive_univariate(
        coeffs: &BTreeMap<u16, IntPoly>,
        content: &IntPoly,
        nvars: usize,
        v: usize,
    ) -> IntPoly {
        let mut reduced = BTreeMap::new();
        for (d, p) in coeffs {
            let q = p
                .exact_div(content)
                .expect("content must divide every coefficient");
            reduced.insert(*d, q);
        }
        Self::from_univariate(nvars, v, &reduced)
    }

    fn primitive_in(p: &IntPoly, v: usize) -> IntPoly {
        let u = p.as_univariate(v);
        let c = Self::poly_content(&u, p.nvars);
        Self::primitive_univariate(&u, &c, p.nvars, v)
    }

    /// Pseudo-remainder of `f` by `g` in variable `v`: repeatedly scales by
    /// the leading coefficient of `g` so every elimination step stays
    /// integral.
    fn pseudo_rem(f: &IntPoly, g: &IntPoly, v: usize) -> IntPoly {
        let dg = g.degree_in(v);
        let ug = g.as_univariate(v);
        let lc_g = ug.get(&dg).cloned().expect("nonzero divisor");
        let mut r = f.clone();
        loop {
            let dr = r.degree_in(v);
            if r.is_zero() || dr < dg {
                return r;
            }
            let ur = r.as_univariate(v);
            let lc_r = ur.get(&dr).cloned().unwrap();
            // r := lc_g * r - lc_r * x_v^(dr-dg) * g
            let mut shift = vec![0u16; f.nvars];
            shift[v] = dr - dg;
            let shifted = g.mul(&lc_r).mul_mono_only(&Mono(shift));
            r = r.mul(&lc_g).sub(&shifted);
        }
    }

    fn mul_mono_only(&self, m: &Mono) -> IntPoly {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca.clone());
        }
        out
    }

    /// Reinterpret over a larger variable set (existing variables keep their
    /// indices; new trailing slots are unused).
    pub fn extend_vars(&self, nvars: usize) -> IntPoly {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.resize(nvars, 0);
            out.terms.insert(Mono(exps), c.clone());
        }
        out
    }

    /// Render with the given variable names, terms in descending graded-lex
    /// order, e.g. `d1^2 + 3*d1*d2 + d2^2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut ita = self.terms.iter().rev();
        let mut itb = other.terms.iter().rev();
        loop {
            match (ita.next(), itb.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let ord = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("t{}", i + 1)).collect();
        write!(f, "{}", self.render(&names))
    }
}
