//! Direction expressions.
//!
//! ```text
//! input    := tuple [ "in" "field" poly "@" interval ]
//! tuple    := "(" expr { "," expr } ")"
//! expr     := term { ("+" | "-") term }
//! term     := unary { ("*" | "/") unary }
//! unary    := "-" unary | power
//! power    := atom [ "^" integer ]
//! atom     := number | variable | sqrtN | "sqrt" "(" integer ")"
//!           | "root" "(" poly "," interval ")" | "(" expr ")"
//! interval := "[" rational "," rational "]"
//! ```
//!
//! Numbers are exact: `0.25` is 1/4. Without a field clause, `sqrtN`
//! terms live in ℚ(√m) when a single squarefree part m occurs, and in
//! ℚ(√2, √3) = ℚ(t), t⁴ − 10t² + 1 = 0, t ∈ [3, 4], when the parts are
//! drawn from {2, 3, 6}.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coding::{CodingError, Direction, Point};
use crate::numfield::{AlgebraicNumber, NumberField, NumfieldError};
use crate::{Direction3, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("parse error at position {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("direction coordinate {index} is not strictly positive")]
    NonPositiveCoordinate { index: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("expected {expected} coordinates, found {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] NumfieldError),
}

impl From<CodingError> for ExprError {
    fn from(e: CodingError) -> Self {
        match e {
            CodingError::NonPositiveCoordinate { index } => Self::NonPositiveCoordinate { index },
            CodingError::Field(NumfieldError::FieldMismatch) => {
                Self::FieldMismatch("coordinates lie in different fields".into())
            }
            CodingError::Field(f) => Self::Field(f),
            other => Self::FieldMismatch(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "()[],+-*/^@".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError {
                position: i,
                expected: vec!["a number, name or operator".into()],
                found: format!("`{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(Rational),
    Var(String, usize),
    Sqrt(u64, usize),
    Root(Box<FieldSpec>, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
struct FieldSpec {
    poly: Vec<BigInt>,
    variable: String,
    lo: Rational,
    hi: Rational,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn parse_decimal(s: &str, position: usize) -> Result<Rational, ParseError> {
    let bad = || ParseError { position, expected: vec!["a decimal number".into()], found: format!("`{s}`") };
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(Rational::new(n, num_traits::pow(BigInt::from(10), frac.len())))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&[&format!("`{word}`")]),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) if !s.contains('.') => {
                self.bump();
                Ok(s.parse().expect("digits parse"))
            }
            _ => self.fail(&["an integer"]),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat('-');
        let position = self.pos();
        let value = match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                parse_decimal(&s, position)?
            }
            _ => return self.fail(&["a rational number"]),
        };
        let value = if self.eat('/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(ParseError { position, expected: vec!["a nonzero denominator".into()], found: "0".into() });
            }
            value / Rational::from_integer(d)
        } else {
            value
        };
        Ok(if neg { -value } else { value })
    }

    fn interval(&mut self) -> Result<(Rational, Rational), ParseError> {
        self.expect('[')?;
        let lo = self.rational()?;
        self.expect(',')?;
        let hi = self.rational()?;
        self.expect(']')?;
        Ok((lo, hi))
    }

    /// Integer polynomial in one variable, e.g. `t^3 + t - 1` or `x^4 - 10x^2 + 1`.
    fn poly(&mut self) -> Result<(Vec<BigInt>, String), ParseError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut variable: Option<String> = None;
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -BigInt::one()
            } else if first || self.eat('+') {
                BigInt::one()
            } else {
                break;
            };
            first = false;
            let mut coef = None;
            if let Tok::Num(_) = self.peek() {
                coef = Some(self.integer()?);
                self.eat('*');
            }
            let mut degree = 0usize;
            if let Tok::Ident(name) = self.peek().clone() {
                match &variable {
                    Some(v) if *v != name => return self.fail(&[&format!("the variable `{v}`")]),
                    _ => variable = Some(name),
                }
                self.bump();
                degree = 1;
                if self.eat('^') {
                    let position = self.pos();
                    degree = self.integer()?.try_into().map_err(|_| ParseError {
                        position,
                        expected: vec!["a small exponent".into()],
                        found: "a large number".into(),
                    })?;
                }
            } else if coef.is_none() {
                return self.fail(&["a polynomial term"]);
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += sign * coef.unwrap_or_else(BigInt::one);
        }
        Ok((coeffs, variable.unwrap_or_else(|| "x".into())))
    }

    fn field_spec(&mut self) -> Result<FieldSpec, ParseError> {
        let (poly, variable) = self.poly()?;
        Ok(FieldSpec { poly, variable, lo: Rational::zero(), hi: Rational::zero() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym(c @ ('+' | '-')) => *c,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym(c @ ('*' | '/')) => *c,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let position = self.pos();
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| ParseError {
                position,
                expected: vec!["a small exponent".into()],
                found: "a large number".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(Expr::Num(parse_decimal(&s, position)?))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.bump();
                self.expect('(')?;
                let k = self.small_positive()?;
                self.expect(')')?;
                Ok(Expr::Sqrt(k, position))
            }
            Tok::Ident(name) if name.starts_with("sqrt") && name[4..].bytes().all(|b| b.is_ascii_digit()) => {
                self.bump();
                match name[4..].parse::<u64>() {
                    Ok(k) if k > 0 => Ok(Expr::Sqrt(k, position)),
                    _ => Err(ParseError {
                        position,
                        expected: vec!["a positive integer after sqrt".into()],
                        found: name,
                    }),
                }
            }
            Tok::Ident(name) if name == "root" => {
                self.bump();
                self.expect('(')?;
                let mut spec = self.field_spec()?;
                self.expect(',')?;
                (spec.lo, spec.hi) = self.interval()?;
                self.expect(')')?;
                Ok(Expr::Root(Box::new(spec), position))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::Var(name, position))
            }
            _ => self.fail(&["a number", "`(`", "sqrtN", "`root(`", "the field variable"]),
        }
    }

    fn small_positive(&mut self) -> Result<u64, ParseError> {
        let position = self.pos();
        let k = self.integer()?;
        match u64::try_from(k) {
            Ok(k) if k > 0 => Ok(k),
            _ => {
                Err(ParseError { position, expected: vec!["a positive integer".into()], found: "out of range".into() })
            }
        }
    }

    fn tuple(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut items = vec![self.expr()?];
        while self.eat(',') {
            items.push(self.expr()?);
        }
        if !self.eat(')') {
            return self.fail(&["`,`", "`)`"]);
        }
        Ok(items)
    }

    fn input(&mut self) -> Result<(Vec<Expr>, Option<FieldSpec>), ParseError> {
        let items = self.tuple()?;
        let clause = if self.peek() == &Tok::Ident("in".into()) {
            self.bump();
            self.keyword("field")?;
            let mut spec = self.field_spec()?;
            self.expect('@')?;
            (spec.lo, spec.hi) = self.interval()?;
            Some(spec)
        } else {
            None
        };
        if self.peek() != &Tok::End {
            return self.fail(&["`in field`", "end of input"]);
        }
        Ok((items, clause))
    }
}

/// Squarefree decomposition k = s²·m.
fn squarefree(k: u64) -> (u64, u64) {
    let (mut s, mut m) = (1, 1);
    let mut rest = k;
    let mut p = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    (s, m * rest)
}

fn collect(e: &Expr, sqrts: &mut Vec<u64>, roots: &mut Vec<FieldSpec>, vars: &mut Vec<(String, usize)>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(v, p) => vars.push((v.clone(), *p)),
        Expr::Sqrt(k, _) => sqrts.push(squarefree(*k).1),
        Expr::Root(spec, _) => roots.push((**spec).clone()),
        Expr::Neg(a) | Expr::Pow(a, _) => collect(a, sqrts, roots, vars),
        Expr::Bin(_, a, b) => {
            collect(a, sqrts, roots, vars);
            collect(b, sqrts, roots, vars);
        }
    }
}

/// Field in which the expressions are evaluated, with the values of √m.
struct Context {
    field: Arc<NumberField>,
    sqrt: Vec<(u64, AlgebraicNumber)>,
}

fn build_field(spec: &FieldSpec) -> Result<Arc<NumberField>, ExprError> {
    Ok(NumberField::new(spec.poly.clone(), spec.lo.clone(), spec.hi.clone(), spec.variable.clone())?)
}

fn context(items: &[Expr], clause: Option<&FieldSpec>, known: Option<&Arc<NumberField>>) -> Result<Context, ExprError> {
    let (mut sqrts, mut roots, mut vars) = (Vec::new(), Vec::new(), Vec::new());
    for e in items {
        collect(e, &mut sqrts, &mut roots, &mut vars);
    }
    sqrts.retain(|&m| m != 1);
    sqrts.sort_unstable();
    sqrts.dedup();

    let mut field = match clause {
        Some(spec) => Some(build_field(spec)?),
        None => known.cloned(),
    };
    for spec in &roots {
        let f = build_field(spec)?;
        match &field {
            Some(g) if !g.same_as(&f) => {
                return Err(ExprError::FieldMismatch(format!("root of {f} is not the generator of {g}")));
            }
            Some(_) => {}
            None => field = Some(f),
        }
    }
    let variable = field.as_ref().map(|f| f.variable().to_string());
    if let Some(f) = field {
        // sqrtN only resolves when the field itself is a shorthand field
        let sqrt = shorthand_values(&f);
        for m in &sqrts {
            if !sqrt.iter().any(|(k, _)| k == m) {
                return Err(ExprError::FieldMismatch(format!("sqrt{m} is not an element of {f} as declared")));
            }
        }
        for (v, position) in &vars {
            if Some(v) != variable.as_ref() {
                return Err(ParseError {
                    position: *position,
                    expected: vec![format!("`{}`", f.variable())],
                    found: format!("`{v}`"),
                }
                .into());
            }
        }
        return Ok(Context { field: f, sqrt });
    }
    if let Some((v, position)) = vars.first() {
        return Err(ParseError {
            position: *position,
            expected: vec!["a number".into(), "sqrtN".into(), "`root(`".into()],
            found: format!("`{v}` (declare it with `in field`)"),
        }
        .into());
    }
    let field = match sqrts.as_slice() {
        [] => NumberField::rationals(),
        [m] => NumberField::quadratic(*m)?,
        ms if ms.iter().all(|m| [2, 3, 6].contains(m)) => NumberField::sqrt2_sqrt3(),
        ms => {
            return Err(ExprError::FieldMismatch(format!(
                "no canonical field contains the square roots of {ms:?}; declare one with `in field`"
            )))
        }
    };
    let sqrt = shorthand_values(&field);
    Ok(Context { field, sqrt })
}

/// √m for the shorthand fields: ℚ(√m) itself and ℚ(√2, √3).
fn shorthand_values(f: &Arc<NumberField>) -> Vec<(u64, AlgebraicNumber)> {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let poly: Vec<i64> = f.min_poly().iter().map(|c| i64::try_from(c).unwrap_or(0)).collect();
    if poly == [1, 0, -10, 0, 1] && f.same_as(&NumberField::sqrt2_sqrt3()) {
        let el = |c: [Rational; 4]| AlgebraicNumber::from_coords(f, c.to_vec()).expect("degree 4");
        let s2 = el([q(0, 1), q(-9, 2), q(0, 1), q(1, 2)]);
        let s3 = el([q(0, 1), q(11, 2), q(0, 1), q(-1, 2)]);
        let s6 = s2.try_mul(&s3).expect("same field");
        return vec![(2, s2), (3, s3), (6, s6)];
    }
    if let (3, Some(m)) = (poly.len(), f.variable().strip_prefix("sqrt").and_then(|s| s.parse::<u64>().ok())) {
        if poly == [-(m as i64), 0, 1] {
            return vec![(m, AlgebraicNumber::generator(f))];
        }
    }
    Vec::new()
}

fn eval(e: &Expr, ctx: &Context) -> Result<AlgebraicNumber, ExprError> {
    let f = &ctx.field;
    Ok(match e {
        Expr::Num(r) => AlgebraicNumber::from_rational(f, r.clone()),
        Expr::Var(..) | Expr::Root(..) => AlgebraicNumber::generator(f),
        Expr::Sqrt(k, _) => {
            let (s, m) = squarefree(*k);
            let base = if m == 1 {
                AlgebraicNumber::one(f)
            } else {
                ctx.sqrt.iter().find(|(k, _)| *k == m).map(|(_, v)| v.clone()).expect("checked in context")
            };
            base.scale(&Rational::from_integer(s.into()))
        }
        Expr::Neg(a) => eval(a, ctx)?.neg(),
        Expr::Pow(a, k) => {
            let base = eval(a, ctx)?;
            let mut acc = AlgebraicNumber::one(f);
            for _ in 0..*k {
                acc = acc.try_mul(&base)?;
            }
            acc
        }
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, ctx)?, eval(b, ctx)?);
            match op {
                '+' => x.try_add(&y)?,
                '-' => x.try_sub(&y)?,
                '*' => x.try_mul(&y)?,
                _ => x.try_div(&y)?,
            }
        }
    })
}

fn parse_values(text: &str, known: Option<&Arc<NumberField>>) -> Result<Vec<AlgebraicNumber>, ExprError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let (items, clause) = p.input()?;
    let ctx = context(&items, clause.as_ref(), known)?;
    items.iter().map(|e| eval(e, &ctx)).collect()
}

fn exactly<const D: usize>(values: Vec<AlgebraicNumber>) -> Result<[AlgebraicNumber; D], ExprError> {
    let got = values.len();
    values.try_into().map_err(|_| ExprError::Arity { expected: D, got })
}

/// Parses a 3-dimensional direction.
pub fn parse_direction(text: &str) -> Result<Direction3, ExprError> {
    Ok(Direction::new(exactly::<3>(parse_values(text, None)?)?)?)
}

/// Direction with 2 or 3 coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyDirection {
    Two(Direction<AlgebraicNumber, 2>),
    Three(Direction3),
}

pub fn parse_any_direction(text: &str) -> Result<AnyDirection, ExprError> {
    let values = parse_values(text, None)?;
    Ok(match values.len() {
        2 => AnyDirection::Two(Direction::new(exactly::<2>(values)?)?),
        _ => AnyDirection::Three(Direction::new(exactly::<3>(values)?)?),
    })
}

/// Parses a start point whose coordinates lie in `field` (or in ℚ).
pub fn parse_point<const D: usize>(
    text: &str,
    field: &Arc<NumberField>,
) -> Result<Point<AlgebraicNumber, D>, ExprError> {
    let values = parse_values(text, Some(field))?;
    let values: Vec<AlgebraicNumber> = values
        .into_iter()
        .map(|v| match v.as_rational() {
            Some(r) if !v.field().same_as(field) => AlgebraicNumber::from_rational(field, r),
            _ => v,
        })
        .collect();
    for v in &values {
        if !v.field().same_as(field) {
            return Err(ExprError::FieldMismatch("start point is not in the direction's field".into()));
        }
    }
    Ok(Point::new(exactly::<D>(values)?))
}

fn render(x: &AlgebraicNumber) -> String {
    match x.as_rational() {
        Some(r) => r.to_string(),
        None => x.to_string(),
    }
}

/// Canonical text of a tuple of field elements; parses back to the same values.
pub fn format_values(values: &[AlgebraicNumber]) -> String {
    let body = values.iter().map(render).collect::<Vec<_>>().join(", ");
    let Some(first) = values.first() else {
        return "()".into();
    };
    let f = first.field();
    if f.degree() == 1
        || values.iter().all(|v| v.as_rational().is_some())
        || !shorthand_values(f).is_empty() && f.degree() == 2
    {
        return format!("({body})");
    }
    let root = f.root_interval();
    format!("({body}) in field {f} @ [{}, {}]", root.lo, root.hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;

    #[test]
    fn sqrt_shorthand_is_case5() {
        let w = parse_direction("(1, sqrt2, sqrt3)").unwrap();
        assert_eq!(w.get(0).field().degree(), 4);
        assert_eq!(w.get(1).try_mul(w.get(1)).unwrap().as_rational(), Some(Rational::from_integer(2.into())));
        assert_eq!(w.get(2).try_mul(w.get(2)).unwrap().as_rational(), Some(Rational::from_integer(3.into())));
        assert_eq!(classify(&w).unwrap().case_tag, 5);
    }

    #[test]
    fn field_clause_is_case4() {
        let w = parse_direction("(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]").unwrap();
        assert_eq!(classify(&w).unwrap().case_tag, 4);
        let w2 = parse_direction("(1, 1/root(x^3 + x - 1, [3/5, 7/10]), 1/(1 - root(x^3+x-1, [0.6, 0.7])))").unwrap();
        assert_eq!(classify(&w2).unwrap().case_tag, 4);
    }

    #[test]
    fn non_positive_is_rejected() {
        assert_eq!(parse_direction("(1, 0, 1)"), Err(ExprError::NonPositiveCoordinate { index: 2 }));
        assert_eq!(parse_direction("(1, 1 - sqrt2, 1)"), Err(ExprError::NonPositiveCoordinate { index: 2 }));
    }

    #[test]
    fn parse_errors_report_position() {
        match parse_direction("(1, 2 +, 3)") {
            Err(ExprError::Parse(e)) => {
                assert_eq!(e.position, 7);
                assert!(e.expected.iter().any(|s| s == "a number"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_direction("(1, 2, 3"), Err(ExprError::Parse(_))));
        assert!(matches!(parse_direction("(1, x, 3)"), Err(ExprError::Parse(_))));
        assert!(matches!(parse_direction("(1, 2, 3) in field"), Err(ExprError::Parse(_))));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        assert!(matches!(parse_direction("(1, sqrt2, sqrt5)"), Err(ExprError::FieldMismatch(_))));
        assert!(matches!(
            parse_direction("(1, sqrt2, t) in field t^3 + t - 1 @ [0.6, 0.7]"),
            Err(ExprError::FieldMismatch(_))
        ));
        assert!(matches!(
            parse_direction("(1, root(x^2 - 2, [1, 2]), root(x^2 - 3, [1, 2]))"),
            Err(ExprError::FieldMismatch(_))
        ));
    }

    #[test]
    fn shorthand_arithmetic() {
        let w = parse_direction("(sqrt(8), 2*sqrt2, 0.5 + sqrt2^2)").unwrap();
        assert_eq!(w.get(0), w.get(1));
        assert_eq!(w.get(2).as_rational(), Some(Rational::new(5.into(), 2.into())));
        let w = parse_direction("(1, sqrt6, sqrt2*sqrt3)").unwrap();
        assert_eq!(w.get(1), w.get(2));
        let w = parse_direction("(1, 2/3, 5/7)").unwrap();
        assert_eq!(w.get(0).field().degree(), 1);
    }

    #[test]
    fn round_trip() {
        for text in [
            "(1, sqrt2, sqrt3)",
            "(1, sqrt2, 1/2)",
            "(1, sqrt2, 1 + sqrt2)",
            "(1, 2/3, 5/7)",
            "(1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]",
            "(sqrt3 - 1, 3*sqrt6, 2)",
        ] {
            let w = parse_direction(text).unwrap();
            let again = parse_direction(&format_values(w.coords())).unwrap();
            assert_eq!(w, again, "{text} -> {}", format_values(w.coords()));
        }
    }

    #[test]
    fn start_points() {
        let w = parse_direction("(1, sqrt2, sqrt3)").unwrap();
        let p: Point<AlgebraicNumber, 3> = parse_point("(1/7, 0.25, sqrt2 - 1)", w.get(0).field()).unwrap();
        assert_eq!(p.coords()[1].as_rational(), Some(Rational::new(1.into(), 4.into())));
        assert!(parse_point::<3>("(1, 2)", w.get(0).field()).is_err());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree(8), (2, 2));
        assert_eq!(squarefree(12), (2, 3));
        assert_eq!(squarefree(49), (7, 1));
        assert_eq!(squarefree(30), (1, 30));
    }
}
