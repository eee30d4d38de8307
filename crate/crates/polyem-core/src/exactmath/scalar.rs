//! The coefficient field: exact rationals, or rational functions in a
//! declared finite set of symbolic parameters.
//!
//! Plain rationals are kept in a fast `BigRational` representation; values
//! that genuinely involve parameters are canonical numerator/denominator
//! pairs of integer polynomials with coprime parts, content gcd 1, and a
//! positive leading denominator coefficient under graded-lex order. A
//! rational function that reduces to a constant demotes back to the
//! `BigRational` form, so structural equality agrees with field equality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;

/// Ordered list of symbolic parameter names (e.g. `["d1", "d2"]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamSet(Arc<Vec<String>>);

impl ParamSet {
    pub fn new(names: Vec<String>) -> Self {
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate parameter name {n}");
        }
        ParamSet(Arc::new(names))
    }

    pub fn empty() -> Self {
        ParamSet(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// An element of the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// An exact rational number.
    Rat(BigRational),
    /// A reduced rational function in the parameters; involves at least one
    /// parameter after reduction.
    Fun {
        params: ParamSet,
        num: IntPoly,
        den: IntPoly,
    },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rat(q)
    }

    pub fn param(params: &ParamSet, index: usize) -> Self {
        Scalar::Fun {
            params: params.clone(),
            num: IntPoly::var(params.len(), index),
            den: IntPoly::one(params.len()),
        }
    }

    /// Build `num/den` and reduce to canonical form.
    pub fn from_poly_quotient(params: &ParamSet, num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), params.len());
        assert_eq!(den.nvars(), params.len());
        Self::reduce(params.clone(), num, den)
    }

    fn reduce(params: ParamSet, num: IntPoly, den: IntPoly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = IntPoly::gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        if !den.leading_coeff_positive() {
            num = num.neg();
            den = den.neg();
        }
        if num.is_constant() && den.is_constant() {
            return Scalar::Rat(BigRational::new(num.constant_coeff(), den.constant_coeff()));
        }
        Scalar::Fun { params, num, den }
    }

    pub fn params(&self) -> ParamSet {
        match self {
            Scalar::Rat(_) => ParamSet::empty(),
            Scalar::Fun { params, .. } => params.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    /// The rational value, when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Fun { .. } => None,
        }
    }

    /// Deterministic sign marker: for rationals the usual sign; for genuine
    /// rational functions the sign of the leading numerator coefficient
    /// (the denominator is normalized positive). Used for canonical sign
    /// choices on vectors, not for order comparisons.
    pub fn is_sign_positive(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_positive(),
            Scalar::Fun { num, .. } => num.leading_coeff_positive(),
        }
    }

    fn promote(&self, params: &ParamSet) -> (IntPoly, IntPoly) {
        let n = params.len();
        match self {
            Scalar::Rat(q) => (
                IntPoly::constant(n, q.numer().clone()),
                IntPoly::constant(n, q.denom().clone()),
            ),
            Scalar::Fun {
                params: p,
                num,
                den,
            } => {
                assert_eq!(
                    p, params,
                    "cannot mix scalars over different parameter sets"
                );
                (num.clone(), den.clone())
            }
        }
    }

    fn join_params(&self, other: &Scalar) -> ParamSet {
        match (self, other) {
            (Scalar::Fun { params, .. }, Scalar::Rat(_)) => params.clone(),
            (_, Scalar::Fun { params, .. }) => other_params_checked(self, params),
            _ => ParamSet::empty(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, other) {
            return Scalar::Rat(a + b);
        }
        let params = self.join_params(other);
        let (an, ad) = self.promote(&params);
        let (bn, bd) = other.promote(&params);
        Scalar::reduce(params, an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Fun { params, num, den } => Scalar::Fun {
                params: params.clone(),
                num: num.neg(),
                den: den.clone(),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, other) {
            return Scalar::Rat(a * b);
        }
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let params = self.join_params(other);
        let (an, ad) = self.promote(&params);
        let (bn, bd) = other.promote(&params);
        Scalar::reduce(params, an.mul(&bn), ad.mul(&bd))
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(q) => {
                assert!(!q.is_zero(), "division by zero scalar");
                Scalar::Rat(q.recip())
            }
            Scalar::Fun { params, num, den } => {
                Scalar::reduce(params.clone(), den.clone(), num.clone())
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute rational values for the parameters.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        match self {
            Scalar::Rat(q) => q.clone(),
            Scalar::Fun { params, num, den } => {
                assert_eq!(values.len(), params.len());
                let n = eval_poly(num, values);
                let d = eval_poly(den, values);
                assert!(!d.is_zero(), "denominator vanished at evaluation point");
                n / d
            }
        }
    }

    /// Canonical textual rendering, `num/den` with graded-lex polynomials.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fun { params, num, den } => {
                let nums = num.render(params.names());
                if den.is_one() {
                    return maybe_paren(&nums, num.terms().count() > 1);
                }
                let dens = den.render(params.names());
                let den_atomic = dens.chars().all(|c| c.is_ascii_digit());
                format!(
                    "{}/{}",
                    maybe_paren(&nums, num.terms().count() > 1),
                    maybe_paren(&dens, !den_atomic)
                )
            }
        }
    }
}

fn maybe_paren(s: &str, multi: bool) -> String {
    if multi || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn other_params_checked(s: &Scalar, params: &ParamSet) -> ParamSet {
    if let Scalar::Fun { params: p, .. } = s {
        assert_eq!(p, params, "cannot mix scalars over different parameter sets");
    }
    params.clone()
}

fn eval_poly(p: &IntPoly, values: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut term = BigRational::from_integer(c.clone());
        for (v, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                term *= &values[v];
            }
        }
        acc += term;
    }
    acc
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic data-structure keys; rationals
/// compare numerically, rational functions structurally, rationals first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Fun { .. }) => Ordering::Less,
            (Scalar::Fun { .. }, Scalar::Rat(_)) => Ordering::Greater,
            (
                Scalar::Fun {
                    params: pa,
                    num: na,
                    den: da,
                },
                Scalar::Fun {
                    params: pb,
                    num: nb,
                    den: db,
                },
            ) => pa.cmp(pb).then_with(|| na.cmp(nb)).then_with(|| da.cmp(db)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
