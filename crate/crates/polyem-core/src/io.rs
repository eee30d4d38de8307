//! JSON descriptions of polytopes, cones and complement maps, plus the
//! small expression grammar used for symbolic matrix entries, command-line
//! polynomials, and round-tripping rendered scalars.
//!
//! All rational entries are strings (`"p/q"` or `"p"`), never floats.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{ParamSet, Poly, Scalar, ScalarMatrix};
use crate::geometry::{Cone, Polytope};
use crate::interp::ComplementMap;
use crate::lattice::{LatticeContext, Rat, RatMatrix, RatVec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeSpec {
    /// Columns generate the lattice; defaults to the standard lattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<String>>>,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<String>>>,
    pub apex: Vec<String>,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CmapSpec {
    #[serde(rename = "inner_product")]
    InnerProduct {
        matrix: Vec<Vec<String>>,
        #[serde(default)]
        parameters: Vec<String>,
    },
    #[serde(rename = "flag")]
    Flag {
        vectors: Vec<Vec<String>>,
        #[serde(default)]
        parameters: Vec<String>,
    },
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer `{t}`")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn parse_rational_vec(v: &[String]) -> Result<RatVec> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn parse_lattice(spec: &Option<Vec<Vec<String>>>, dim: usize) -> Result<LatticeContext> {
    match spec {
        None => Ok(LatticeContext::standard(dim)),
        Some(cols) => {
            let columns: Vec<RatVec> = cols
                .iter()
                .map(|c| parse_rational_vec(c))
                .collect::<Result<_>>()?;
            if columns.len() != dim || columns.iter().any(|c| c.len() != dim) {
                return Err(Error::Parse(format!(
                    "lattice basis must be a {dim}x{dim} matrix"
                )));
            }
            LatticeContext::new(RatMatrix::from_cols(columns), "input")
        }
    }
}

impl PolytopeSpec {
    pub fn to_polytope(&self) -> Result<Polytope> {
        let dim = self
            .vertices
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::Parse("polytope needs at least one vertex".into()))?;
        let lattice = parse_lattice(&self.lattice, dim)?;
        let vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| parse_rational_vec(v))
            .collect::<Result<_>>()?;
        Polytope::new(lattice, vertices)
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeSpec {
            lattice: None,
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

impl ConeSpec {
    pub fn to_cone(&self) -> Result<Cone> {
        let dim = self.apex.len();
        let lattice = parse_lattice(&self.lattice, dim)?;
        let apex = parse_rational_vec(&self.apex)?;
        let generators: Vec<RatVec> = self
            .generators
            .iter()
            .map(|v| parse_rational_vec(v))
            .collect::<Result<_>>()?;
        let lineality: Vec<RatVec> = self
            .lineality
            .iter()
            .map(|v| parse_rational_vec(v))
            .collect::<Result<_>>()?;
        Cone::new(lattice, apex, generators, lineality)
    }
}

impl CmapSpec {
    pub fn to_cmap(&self) -> Result<ComplementMap> {
        match self {
            CmapSpec::InnerProduct { matrix, parameters } => {
                let params = ParamSet::new(parameters.clone());
                let n = matrix.len();
                let mut rows = Vec::with_capacity(n);
                for row in matrix {
                    if row.len() != n {
                        return Err(Error::Parse("inner-product matrix must be square".into()));
                    }
                    let mut out = Vec::with_capacity(n);
                    for entry in row {
                        out.push(parse_scalar_expr(entry, &params)?);
                    }
                    rows.push(out);
                }
                ComplementMap::inner_product(ScalarMatrix::from_rows(rows), params)
            }
            CmapSpec::Flag { vectors, parameters } => {
                let params = ParamSet::new(parameters.clone());
                let mut out = Vec::with_capacity(vectors.len());
                for v in vectors {
                    let mut vec = Vec::with_capacity(v.len());
                    for entry in v {
                        vec.push(parse_scalar_expr(entry, &params)?);
                    }
                    out.push(vec);
                }
                ComplementMap::flag(out, params)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Expression grammar: numbers, identifiers, + - * / ^ and parentheses.

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.next();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Minus) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some(Token::Num(n)) => self.maybe_pow(Expr::Num(n)),
            Some(Token::Ident(name)) => self.maybe_pow(Expr::Ident(name)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => self.maybe_pow(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn maybe_pow(&mut self, base: Expr) -> Result<Expr> {
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Num(n)) => {
                    let e: u32 = n
                        .to_string()
                        .parse()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }
}

fn parse_expr(input: &str) -> Result<Expr> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{input}`")));
    }
    Ok(e)
}

/// Parse an expression over the declared parameter names into a scalar.
/// Undeclared identifiers are parse errors.
pub fn parse_scalar_expr(input: &str, params: &ParamSet) -> Result<Scalar> {
    fn eval(e: &Expr, params: &ParamSet) -> Result<Scalar> {
        Ok(match e {
            Expr::Num(n) => Scalar::from_rational(Rat::from_integer(n.clone())),
            Expr::Ident(name) => match params.index_of(name) {
                Some(i) => Scalar::param(params, i),
                None => {
                    return Err(Error::Parse(format!(
                        "undeclared symbol `{name}` (declared: {:?})",
                        params.names()
                    )))
                }
            },
            Expr::Neg(a) => eval(a, params)?.neg(),
            Expr::Add(a, b) => eval(a, params)?.add(&eval(b, params)?),
            Expr::Sub(a, b) => eval(a, params)?.sub(&eval(b, params)?),
            Expr::Mul(a, b) => eval(a, params)?.mul(&eval(b, params)?),
            Expr::Div(a, b) => {
                let den = eval(b, params)?;
                if den.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                eval(a, params)?.div(&den)
            }
            Expr::Pow(a, e) => eval(a, params)?.pow(*e),
        })
    }
    eval(&parse_expr(input)?, params)
}

/// Parse a polynomial in the variables `x1..xn` with exact rational
/// coefficients. Division is allowed only by nonzero constants.
pub fn parse_poly_expr(input: &str, nvars: usize) -> Result<Poly> {
    fn eval(e: &Expr, nvars: usize) -> Result<Poly> {
        Ok(match e {
            Expr::Num(n) => Poly::constant(
                nvars,
                Scalar::from_rational(Rat::from_integer(n.clone())),
            ),
            Expr::Ident(name) => {
                let idx = name
                    .strip_prefix('x')
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && i <= nvars)
                    .ok_or_else(|| {
                        Error::Parse(format!(
                            "unknown variable `{name}` (expected x1..x{nvars})"
                        ))
                    })?;
                Poly::var(nvars, idx - 1)
            }
            Expr::Neg(a) => eval(a, nvars)?.scale(&Scalar::from_int(-1)),
            Expr::Add(a, b) => eval(a, nvars)?.add(&eval(b, nvars)?),
            Expr::Sub(a, b) => eval(a, nvars)?.sub(&eval(b, nvars)?),
            Expr::Mul(a, b) => eval(a, nvars)?.mul(&eval(b, nvars)?),
            Expr::Div(a, b) => {
                let den = eval(b, nvars)?;
                let c = if den.degree() == 0 {
                    den.coeff(&vec![0u16; nvars])
                } else {
                    return Err(Error::Parse(
                        "polynomial division is limited to constants".into(),
                    ));
                };
                if c.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                eval(a, nvars)?.scale(&c.inv())
            }
            Expr::Pow(a, e) => eval(a, nvars)?.pow(*e),
        })
    }
    eval(&parse_expr(input)?, nvars)
}

/// Render a rational as `p/q` (or `p`).
pub fn render_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rat::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), Rat::from_integer((-2).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn polytope_spec_round_trip() {
        let json = r#"{"vertices": [["0","0"],["2","0"],["0","1"]]}"#;
        let spec: PolytopeSpec = serde_json::from_str(json).unwrap();
        let p = spec.to_polytope().unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn cmap_specs() {
        let json = r#"{"kind":"inner_product","matrix":[["1","0"],["0","1"]]}"#;
        let spec: CmapSpec = serde_json::from_str(json).unwrap();
        assert!(spec.to_cmap().is_ok());

        let json = r#"{"kind":"flag","vectors":[["d1","d2"],["0","1"]],"parameters":["d1","d2"]}"#;
        let spec: CmapSpec = serde_json::from_str(json).unwrap();
        let cmap = spec.to_cmap().unwrap();
        assert_eq!(cmap.params().len(), 2);

        // Undeclared symbol rejected.
        let json = r#"{"kind":"flag","vectors":[["d1","e9"],["0","1"]],"parameters":["d1"]}"#;
        let spec: CmapSpec = serde_json::from_str(json).unwrap();
        assert!(matches!(spec.to_cmap(), Err(Error::Parse(_))));
    }

    #[test]
    fn scalar_expression_round_trip() {
        let ps = ParamSet::new(vec!["d1".into(), "d2".into()]);
        let d1 = Scalar::param(&ps, 0);
        let d2 = Scalar::param(&ps, 1);
        let expected = d1
            .pow(2)
            .add(&d1.mul(&d2).mul(&Scalar::from_int(3)))
            .add(&d2.pow(2))
            .div(&d1.mul(&d2).mul(&Scalar::from_int(12)));
        let parsed = parse_scalar_expr(&expected.render(), &ps).unwrap();
        assert_eq!(parsed, expected);
    }

    #[test]
    fn poly_expression() {
        let h = parse_poly_expr("x1^2 + x2", 2).unwrap();
        assert_eq!(h.coeff(&[2, 0]), Scalar::one());
        assert_eq!(h.coeff(&[0, 1]), Scalar::one());
        let g = parse_poly_expr("(x1 - 1)^2/2", 2).unwrap();
        assert_eq!(g.coeff(&[0, 0]), Scalar::from_frac(1, 2));
        assert_eq!(g.coeff(&[1, 0]), Scalar::from_int(-1));
        assert!(parse_poly_expr("y1", 2).is_err());
    }
}
