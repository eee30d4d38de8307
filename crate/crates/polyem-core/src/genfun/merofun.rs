//! Canonical exponential-rational expressions and their exact equality.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar, ScalarMatrix};
use crate::lattice::{LatticeContext, RatVec};

use super::{rational_vec, scalar_vec, ScalarVec};

/// One summand `coeff * e^<xi,point> / (prod <xi,v> * prod (1-e^<xi,w>))`.
///
/// Canonical form: linear-denominator vectors are scaled so their first
/// nonzero coordinate is 1 (the factor moves into the coefficient);
/// exponential-denominator vectors have a positive sign marker on their
/// first nonzero coordinate (flipping uses `1/(1-e^{-z}) = -e^z/(1-e^z)`);
/// both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub point: ScalarVec,
    pub lin_dens: Vec<ScalarVec>,
    pub exp_dens: Vec<ScalarVec>,
    pub coeff: Scalar,
}

impl Term {
    fn key(&self) -> (&ScalarVec, &Vec<ScalarVec>, &Vec<ScalarVec>) {
        (&self.point, &self.lin_dens, &self.exp_dens)
    }
}

/// A finite sum of exponential-rational terms on the dual of an
/// `nvars`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeroFun {
    nvars: usize,
    terms: Vec<Term>,
}

impl MeroFun {
    pub fn zero(nvars: usize) -> Self {
        MeroFun {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_terms(
            nvars,
            vec![Term {
                coeff: c,
                point: vec![Scalar::zero(); nvars],
                lin_dens: Vec::new(),
                exp_dens: Vec::new(),
            }],
        )
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// `e^<xi, a>` for a rational point.
    pub fn exp_point(point: &RatVec) -> Self {
        Self::from_terms(
            point.len(),
            vec![Term {
                coeff: Scalar::one(),
                point: scalar_vec(point),
                lin_dens: Vec::new(),
                exp_dens: Vec::new(),
            }],
        )
    }

    /// Build from raw terms, canonicalizing. Denominator vectors must be
    /// nonzero.
    pub fn from_terms(nvars: usize, terms: Vec<Term>) -> Self {
        let mut canonical = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(ct) = canonicalize_term(nvars, t) {
                canonical.push(ct);
            }
        }
        canonical.sort_by(|a, b| a.key().cmp(&b.key()));
        // Merge equal keys.
        let mut merged: Vec<Term> = Vec::new();
        for t in canonical {
            if let Some(last) = merged.last_mut() {
                if last.key() == t.key() {
                    last.coeff = last.coeff.add(&t.coeff);
                    continue;
                }
            }
            merged.push(t);
        }
        merged.retain(|t| !t.coeff.is_zero());
        MeroFun {
            nvars,
            terms: merged,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero_expr(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MeroFun) -> MeroFun {
        assert_eq!(self.nvars, other.nvars, "mismatched ambient spaces");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(self.nvars, terms)
    }

    pub fn sub(&self, other: &MeroFun) -> MeroFun {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> MeroFun {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.mul(c),
                ..t.clone()
            })
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    pub fn neg(&self) -> MeroFun {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn mul(&self, other: &MeroFun) -> MeroFun {
        assert_eq!(self.nvars, other.nvars, "mismatched ambient spaces");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut lin = a.lin_dens.clone();
                lin.extend(b.lin_dens.iter().cloned());
                let mut exp = a.exp_dens.clone();
                exp.extend(b.exp_dens.iter().cloned());
                terms.push(Term {
                    coeff: a.coeff.mul(&b.coeff),
                    point: add_vec(&a.point, &b.point),
                    lin_dens: lin,
                    exp_dens: exp,
                });
            }
        }
        Self::from_terms(self.nvars, terms)
    }

    /// Multiply by `e^<xi, s>`.
    pub fn shift(&self, s: &[Scalar]) -> MeroFun {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                point: add_vec(&t.point, s),
                ..t.clone()
            })
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    /// Pull back along a linear map of dual spaces: given `pi: V^* -> W^*`
    /// (a `w x n` matrix over the field) and `self` on `W^*`, the result on
    /// `V^*` is `xi -> self(pi(xi))`; every data vector `u` in `W` maps to
    /// `pi^T u` in `V`.
    pub fn pullback(&self, pi: &ScalarMatrix) -> MeroFun {
        assert_eq!(pi.rows, self.nvars, "projection target mismatch");
        let pit = pi.transpose();
        let map = |u: &ScalarVec| pit.mul_vec(u);
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                point: map(&t.point),
                lin_dens: t.lin_dens.iter().map(&map).collect(),
                exp_dens: t.exp_dens.iter().map(&map).collect(),
            })
            .collect();
        Self::from_terms(pi.cols, terms)
    }

    /// Exact equality as meromorphic functions.
    pub fn canonical_equal(&self, other: &MeroFun) -> bool {
        self.sub(other).is_zero_function()
    }

    /// Whether the function is identically zero: clears all denominators and
    /// checks that the exponential-polynomial numerator vanishes. Sound and
    /// complete because distinct exponentials are linearly independent over
    /// the rational-function field in `xi`.
    pub fn is_zero_function(&self) -> bool {
        self.clear_denominators().is_zero()
    }

    /// Numerator of the expression over the common denominator: an
    /// exponential polynomial.
    pub fn clear_denominators(&self) -> ExpPoly {
        let lin_common = multiset_max(self.terms.iter().map(|t| &t.lin_dens));
        let exp_common = multiset_max(self.terms.iter().map(|t| &t.exp_dens));
        let mut acc = ExpPoly::zero(self.nvars);
        for t in &self.terms {
            // Polynomial part: coefficient times the missing linear forms.
            let mut poly = Poly::constant(self.nvars, t.coeff.clone());
            for (v, mult) in &lin_common {
                let have = count_in(&t.lin_dens, v);
                for _ in have..*mult {
                    poly = poly.mul(&Poly::linear_form(v));
                }
            }
            let mut part = ExpPoly::single(self.nvars, t.point.clone(), poly);
            for (w, mult) in &exp_common {
                let have = count_in(&t.exp_dens, w);
                for _ in have..*mult {
                    part = part.mul_one_minus_exp(w);
                }
            }
            acc = acc.add(&part);
        }
        acc
    }

    /// Residue along the hyperplane `<xi, v1> = 0` for a primitive rational
    /// direction `v1`, as a function on the quotient dual space. Requires
    /// pole order <= 1 in every term.
    pub fn residue_along(
        &self,
        v1: &RatVec,
        lattice: &LatticeContext,
    ) -> Result<MeroFun> {
        let qd = crate::lattice::adapted_basis(lattice, &[v1.clone()]);
        let proj_rows: Vec<Vec<Scalar>> = (0..qd.projection.rows)
            .map(|i| scalar_vec(&qd.projection.row(i)))
            .collect();
        let proj = ScalarMatrix::from_rows(proj_rows);
        let v1s = scalar_vec(v1);

        let mut out_terms = Vec::new();
        for t in &self.terms {
            let lin_par: Vec<usize> = (0..t.lin_dens.len())
                .filter(|&i| parallel_ratio(&t.lin_dens[i], &v1s).is_some())
                .collect();
            let exp_par: Vec<usize> = (0..t.exp_dens.len())
                .filter(|&i| parallel_ratio(&t.exp_dens[i], &v1s).is_some())
                .collect();
            match lin_par.len() + exp_par.len() {
                0 => continue,
                1 => {}
                _ => return Err(Error::HigherOrderPole),
            }
            let mut coeff = t.coeff.clone();
            let mut lin = t.lin_dens.clone();
            let mut exp = t.exp_dens.clone();
            if let Some(&i) = lin_par.first() {
                let lambda = parallel_ratio(&lin[i], &v1s).unwrap();
                coeff = coeff.div(&lambda);
                lin.remove(i);
            } else {
                let i = exp_par[0];
                let lambda = parallel_ratio(&exp[i], &v1s).unwrap();
                coeff = coeff.div(&lambda).neg();
                exp.remove(i);
            }
            let map = |u: &ScalarVec| proj.mul_vec(u);
            out_terms.push(Term {
                coeff,
                point: map(&t.point),
                lin_dens: lin.iter().map(&map).collect(),
                exp_dens: exp.iter().map(&map).collect(),
            });
        }
        Ok(MeroFun::from_terms(self.nvars - 1, out_terms))
    }

    /// All rational vectors appearing in the expression, if purely rational.
    pub fn rational_data(&self) -> Option<Vec<RatVec>> {
        let mut out = Vec::new();
        for t in &self.terms {
            out.push(rational_vec(&t.point)?);
            for v in t.lin_dens.iter().chain(&t.exp_dens) {
                out.push(rational_vec(v)?);
            }
        }
        Some(out)
    }

    /// Deterministic textual rendering.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(render_term)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> ScalarVec {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// `v = lambda * w` for a nonzero scalar `lambda`?
fn parallel_ratio(v: &[Scalar], w: &[Scalar]) -> Option<Scalar> {
    let i = w.iter().position(|c| !c.is_zero())?;
    if v[i].is_zero() {
        return None;
    }
    let lambda = v[i].div(&w[i]);
    for j in 0..v.len() {
        if !v[j].sub(&lambda.mul(&w[j])).is_zero() {
            return None;
        }
    }
    Some(lambda)
}

fn count_in(list: &[ScalarVec], v: &ScalarVec) -> usize {
    list.iter().filter(|x| *x == v).count()
}

fn multiset_max<'a>(
    lists: impl Iterator<Item = &'a Vec<ScalarVec>>,
) -> Vec<(ScalarVec, usize)> {
    let mut max: BTreeMap<ScalarVec, usize> = BTreeMap::new();
    for list in lists {
        let mut local: BTreeMap<&ScalarVec, usize> = BTreeMap::new();
        for v in list {
            *local.entry(v).or_insert(0) += 1;
        }
        for (v, c) in local {
            let e = max.entry(v.clone()).or_insert(0);
            if c > *e {
                *e = c;
            }
        }
    }
    max.into_iter().collect()
}

fn canonicalize_term(nvars: usize, mut t: Term) -> Option<Term> {
    assert_eq!(t.point.len(), nvars);
    if t.coeff.is_zero() {
        return None;
    }
    // Linear denominators: scale so the first nonzero coordinate is 1.
    let mut lin = Vec::with_capacity(t.lin_dens.len());
    for v in &t.lin_dens {
        let i = v
            .iter()
            .position(|c| !c.is_zero())
            .expect("zero linear denominator vector");
        let c = v[i].clone();
        t.coeff = t.coeff.div(&c);
        lin.push(v.iter().map(|x| x.div(&c)).collect::<ScalarVec>());
    }
    lin.sort();
    // Exponential denominators: normalize the sign marker.
    let mut exp = Vec::with_capacity(t.exp_dens.len());
    for w in &t.exp_dens {
        let i = w
            .iter()
            .position(|c| !c.is_zero())
            .expect("zero exponential denominator vector");
        if w[i].is_sign_positive() {
            exp.push(w.clone());
        } else {
            let flipped: ScalarVec = w.iter().map(|x| x.neg()).collect();
            t.coeff = t.coeff.neg();
            t.point = add_vec(&t.point, &flipped);
            exp.push(flipped);
        }
    }
    exp.sort();
    Some(Term {
        coeff: t.coeff,
        point: t.point,
        lin_dens: lin,
        exp_dens: exp,
    })
}

fn render_term(t: &Term) -> String {
    let coeff = t.coeff.render();
    let mut num = if coeff == "1" && !t.point.iter().all(|c| c.is_zero()) {
        String::new()
    } else {
        paren_if_compound(&coeff)
    };
    if !t.point.iter().all(|c| c.is_zero()) {
        if !num.is_empty() {
            num.push('*');
        }
        num.push_str(&format!("e^({})", render_linear(&t.point)));
    }
    if num.is_empty() {
        num.push('1');
    }
    let mut dens: Vec<String> = Vec::new();
    for v in &t.lin_dens {
        dens.push(format!("({})", render_linear(v)));
    }
    for w in &t.exp_dens {
        dens.push(format!("(1 - e^({}))", render_linear(w)));
    }
    if dens.is_empty() {
        num
    } else {
        format!("{} / {}", num, dens.join(""))
    }
}

fn paren_if_compound(s: &str) -> String {
    if s.contains(' ') || (s.contains('/') && !s.starts_with('(')) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub(crate) fn render_linear(v: &[Scalar]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = format!("xi{}", i + 1);
        let cs = c.render();
        let piece = if cs == "1" {
            var
        } else if cs == "-1" {
            format!("-{var}")
        } else {
            format!("{}*{}", paren_if_compound(&cs), var)
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// An exponential polynomial `sum_a p_a(xi) e^<xi,a>` with polynomial
/// coefficients, the normal form used for equality testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPoly {
    nvars: usize,
    parts: BTreeMap<ScalarVec, Poly>,
}

impl ExpPoly {
    pub fn zero(nvars: usize) -> Self {
        ExpPoly {
            nvars,
            parts: BTreeMap::new(),
        }
    }

    pub fn single(nvars: usize, point: ScalarVec, poly: Poly) -> Self {
        let mut e = Self::zero(nvars);
        if !poly.is_zero() {
            e.parts.insert(point, poly);
        }
        e
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (pt, poly) in &other.parts {
            match out.parts.entry(pt.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(poly.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(poly);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        out
    }

    /// Multiply by `(1 - e^<xi, w>)`.
    pub fn mul_one_minus_exp(&self, w: &ScalarVec) -> ExpPoly {
        let mut shifted = ExpPoly::zero(self.nvars);
        for (pt, poly) in &self.parts {
            shifted
                .parts
                .insert(add_vec(pt, w), poly.scale(&Scalar::from_int(-1)));
        }
        self.add(&shifted)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&ScalarVec, &Poly)> {
        self.parts.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_from_ints;

    fn sv(v: &[i64]) -> ScalarVec {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn term(coeff: i64, point: &[i64], lin: &[&[i64]], exp: &[&[i64]]) -> Term {
        Term {
            coeff: Scalar::from_int(coeff),
            point: sv(point),
            lin_dens: lin.iter().map(|v| sv(v)).collect(),
            exp_dens: exp.iter().map(|v| sv(v)).collect(),
        }
    }

    #[test]
    fn zero_coeff_terms_dropped() {
        let f = MeroFun::from_terms(2, vec![term(1, &[0, 0], &[], &[])]);
        let g = MeroFun::from_terms(
            2,
            vec![term(1, &[0, 0], &[], &[]), term(0, &[1, 1], &[], &[&[1, 0]])],
        );
        assert_eq!(f, g);
        assert!(f.canonical_equal(&g));
    }

    #[test]
    fn exp_sign_normalization_identity() {
        // 1/(1 - e^{-z}) = -e^z/(1 - e^z) for z = xi1.
        let lhs = MeroFun::from_terms(1, vec![term(1, &[0], &[], &[&[-1]])]);
        let rhs = MeroFun::from_terms(1, vec![term(-1, &[1], &[], &[&[1]])]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lin_scale_normalization() {
        // 1/<xi, 2e1> = (1/2) / <xi, e1>.
        let lhs = MeroFun::from_terms(1, vec![term(1, &[0], &[&[2]], &[])]);
        let rhs = MeroFun::from_terms(1, vec![term(1, &[0], &[&[1]], &[])])
            .scale(&Scalar::from_frac(1, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonicalization_idempotent() {
        let f = MeroFun::from_terms(
            2,
            vec![
                term(3, &[1, -1], &[&[-2, 4]], &[&[-1, 0], &[0, 2]]),
                term(-3, &[0, 0], &[&[1, -2]], &[&[1, 0], &[0, 2]]),
            ],
        );
        let again = MeroFun::from_terms(2, f.terms().to_vec());
        assert_eq!(f, again);
    }

    #[test]
    fn geometric_telescope_is_zero() {
        // 1/(1-e^z) + e^z/(1-e^z) - 1/(1-e^{2z}) - e^z/(1-e^{2z})... rather:
        // 1/(1-e^{2z}) + e^z/(1-e^{2z}) = 1/(1-e^z).
        let a = MeroFun::from_terms(1, vec![term(1, &[0], &[], &[&[2]])]);
        let b = MeroFun::from_terms(1, vec![term(1, &[1], &[], &[&[2]])]);
        let c = MeroFun::from_terms(1, vec![term(1, &[0], &[], &[&[1]])]);
        assert!(a.add(&b).canonical_equal(&c));
        assert!(!a.canonical_equal(&c));
    }

    #[test]
    fn residue_of_orthant_sum() {
        // Res_{e1} S(Cone(e1,e2)) = -S(quotient ray) = -1/(1-e^{eta}).
        let lat = LatticeContext::standard(2);
        let s = MeroFun::from_terms(2, vec![term(1, &[0, 0], &[], &[&[1, 0], &[0, 1]])]);
        let res = s.residue_along(&vec_from_ints(&[1, 0]), &lat).unwrap();
        let expected =
            MeroFun::from_terms(1, vec![term(-1, &[0], &[], &[&[1]])]);
        assert!(res.canonical_equal(&expected));
        // Regular along (1,1): zero residue.
        let res2 = s.residue_along(&vec_from_ints(&[1, 1]), &lat).unwrap();
        assert!(res2.is_zero_function());
    }

    #[test]
    fn render_deterministic() {
        let f = MeroFun::from_terms(
            2,
            vec![term(1, &[1, 0], &[&[1, 0]], &[&[0, 1]])],
        );
        assert_eq!(f.render(), "e^(xi1) / (xi1)(1 - e^(xi2))");
    }
}
