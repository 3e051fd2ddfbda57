//! The input language for forms and tensors.
//!
//! ```text
//! tensor-expr := tensor-term (('+' | '-') tensor-term)*
//! tensor-term := term ('(x)' term)*
//! expr        := term (('+' | '-') term)*
//! term        := factor (('*' | '/') factor)*
//! factor      := '-' factor | primary ('^' int)?
//! primary     := int | q | var | 'd' var | '(' expr ')'
//! ```
//!
//! `(x)` binds tighter than `+`, so printed sums of tensors read back
//! unchanged. Division is only by nonzero scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::braiding::Tensor;
use crate::error::{Error, Result};
use crate::kernel::{FieldSpec, Poly, Scalar};
use crate::omega::{AlgebraCtx, Form};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let mut width = 1;
        match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '(' if chars[i..].starts_with(&['(', 'x', ')']) => {
                out.push((Tok::Tensor, pos));
                width = 3;
            }
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            '+' => out.push((Tok::Plus, pos)),
            '-' => out.push((Tok::Minus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '/' => out.push((Tok::Slash, pos)),
            '^' => out.push((Tok::Caret, pos)),
            c if c.is_ascii_digit() => {
                let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
                width = s.len();
                out.push((Tok::Num(s.parse().unwrap()), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                width = s.len();
                out.push((Tok::Ident(s), pos));
            }
            c => return Err(syntax(pos, format!("unexpected character `{c}`"))),
        }
        i += width;
        column += width;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Param,
    Var(usize),
    DVar(usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Clone, Debug)]
struct Node {
    expr: Expr,
    pos: Pos,
}

/// Identifiers an expression may use.
#[derive(Clone, Copy, Debug)]
pub struct Scope<'a> {
    pub names: &'a [String],
    pub param: Option<&'a str>,
}

impl<'a> Scope<'a> {
    pub fn of(ctx: &'a AlgebraCtx) -> Self {
        Scope {
            names: ctx.names(),
            param: ctx.field().param_name(),
        }
    }

    fn resolve(&self, name: &str, pos: Pos) -> Result<Expr> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(Expr::Var(i));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(i) = self.names.iter().position(|n| n == rest) {
                return Ok(Expr::DVar(i));
            }
        }
        if self.param == Some(name) {
            return Ok(Expr::Param);
        }
        Err(Error::UnknownIdentifier {
            name: name.to_string(),
            line: pos.line,
            column: pos.column,
        })
    }
}

/// Checks that variable names are identifiers that the parser can tell
/// apart from each other, from their differentials and from the parameter.
pub fn validate_names(names: &[String], param: Option<&str>) -> Result<()> {
    for n in names {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Config(format!("`{n}` is not a valid variable name")));
        }
        if Some(n.as_str()) == param {
            return Err(Error::Config(format!("variable `{n}` shadows the field parameter")));
        }
        if let Some(m) = names.iter().find(|m| format!("d{m}") == *n) {
            return Err(Error::Config(format!("variable `{n}` clashes with the differential of `{m}`")));
        }
    }
    if let Some(p) = param {
        if let Some(m) = names.iter().find(|m| format!("d{m}") == p) {
            return Err(Error::Config(format!("the parameter `{p}` clashes with the differential of `{m}`")));
        }
    }
    Ok(())
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    scope: Scope<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Tensor => "`(x)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    /// Signed tensor terms, each a list of factors.
    fn tensor_expr(&mut self) -> Result<Vec<(bool, Vec<Node>)>> {
        let mut terms = vec![(false, self.tensor_term()?)];
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.tensor_term()?));
        }
        Ok(terms)
    }

    fn tensor_term(&mut self) -> Result<Vec<Node>> {
        let mut factors = vec![self.term()?];
        while *self.peek() == Tok::Tensor {
            self.bump();
            factors.push(self.term()?);
        }
        Ok(factors)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Tok::Plus => Expr::Add as fn(_, _) -> _,
                Tok::Minus => Expr::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node {
                expr: op(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Tok::Star => Expr::Mul as fn(_, _) -> _,
                Tok::Slash => Expr::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Node {
                expr: op(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn factor(&mut self) -> Result<Node> {
        let pos = self.pos();
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(Node {
                expr: Expr::Neg(Box::new(inner)),
                pos,
            });
        }
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (t, epos) = self.bump();
        let e = match t {
            Tok::Num(n) => n
                .to_u32()
                .ok_or_else(|| syntax(epos, format!("exponent {n} is too large")))?,
            t => {
                return Err(syntax(
                    epos,
                    format!("expected a nonnegative integer exponent, found {}", Self::describe(&t)),
                ))
            }
        };
        Ok(Node {
            expr: Expr::Pow(Box::new(base), e),
            pos,
        })
    }

    fn primary(&mut self) -> Result<Node> {
        let (t, pos) = self.bump();
        let expr = match t {
            Tok::Num(n) => Expr::Num(n),
            Tok::Ident(name) => self.scope.resolve(&name, pos)?,
            Tok::LParen => {
                let mut inner = self.expr()?;
                inner.pos = pos;
                let (t, p) = self.bump();
                if t != Tok::RParen {
                    return Err(syntax(p, format!("expected `)`, found {}", Self::describe(&t))));
                }
                return Ok(inner);
            }
            t => return Err(syntax(pos, format!("expected a value, found {}", Self::describe(&t)))),
        };
        Ok(Node { expr, pos })
    }

    fn finish(&mut self) -> Result<()> {
        let (t, pos) = self.bump();
        if t != Tok::End {
            return Err(syntax(pos, format!("unexpected {}", Self::describe(&t))));
        }
        Ok(())
    }
}

fn parse_terms(text: &str, scope: Scope) -> Result<Vec<(bool, Vec<Node>)>> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        scope,
    };
    let terms = p.tensor_expr()?;
    p.finish()?;
    Ok(terms)
}

fn parse_single(text: &str, scope: Scope) -> Result<Node> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        scope,
    };
    let node = p.expr()?;
    p.finish()?;
    Ok(node)
}

fn number(field: &FieldSpec, n: &BigInt) -> Result<Scalar> {
    field.from_rational(&BigRational::from_integer(n.clone()))
}

fn eval_scalar(node: &Node, field: &FieldSpec) -> Result<Scalar> {
    Ok(match &node.expr {
        Expr::Num(n) => number(field, n)?,
        Expr::Param => field.q().expect("resolved only when the field has q"),
        Expr::Var(_) | Expr::DVar(_) => return Err(syntax(node.pos, "expected a scalar")),
        Expr::Neg(a) => -eval_scalar(a, field)?,
        Expr::Add(a, b) => &eval_scalar(a, field)? + &eval_scalar(b, field)?,
        Expr::Sub(a, b) => &eval_scalar(a, field)? - &eval_scalar(b, field)?,
        Expr::Mul(a, b) => &eval_scalar(a, field)? * &eval_scalar(b, field)?,
        Expr::Div(a, b) => divide(&eval_scalar(a, field)?, b, field)?,
        Expr::Pow(a, e) => eval_scalar(a, field)?.pow(*e),
    })
}

fn divide(a: &Scalar, divisor: &Node, field: &FieldSpec) -> Result<Scalar> {
    let b = eval_scalar(divisor, field)
        .map_err(|_| syntax(divisor.pos, "division is only by nonzero scalars"))?;
    if b.is_zero() {
        return Err(syntax(divisor.pos, "division by zero"));
    }
    a.div(&b)
}

fn eval_poly(node: &Node, field: &FieldSpec, nvars: usize) -> Result<Poly> {
    let go = |n: &Node| eval_poly(n, field, nvars);
    Ok(match &node.expr {
        Expr::Num(_) | Expr::Param => Poly::constant(nvars, eval_scalar(node, field)?),
        Expr::Var(i) => Poly::var(field, nvars, *i),
        Expr::DVar(_) => return Err(syntax(node.pos, "differentials are not allowed here")),
        Expr::Neg(a) => go(a)?.neg(),
        Expr::Add(a, b) => go(a)?.add(&go(b)?),
        Expr::Sub(a, b) => go(a)?.sub(&go(b)?),
        Expr::Mul(a, b) => go(a)?.mul(&go(b)?),
        Expr::Div(a, b) => {
            let inv = divide(&field.one(), b, field)?;
            go(a)?.scale(&inv)
        }
        Expr::Pow(a, e) => go(a)?.pow(field, *e),
    })
}

fn eval_form(node: &Node, ctx: &AlgebraCtx) -> Result<Form> {
    let go = |n: &Node| eval_form(n, ctx);
    Ok(match &node.expr {
        Expr::Num(_) | Expr::Param => ctx.scalar_form(eval_scalar(node, ctx.field())?),
        Expr::Var(i) => ctx.var_form(*i)?,
        Expr::DVar(i) => ctx.dvar_form(*i)?,
        Expr::Neg(a) => go(a)?.neg(),
        Expr::Add(a, b) => go(a)?.add(&go(b)?),
        Expr::Sub(a, b) => go(a)?.sub(&go(b)?),
        Expr::Mul(a, b) => ctx.mul(&go(a)?, &go(b)?)?,
        Expr::Div(a, b) => {
            let inv = divide(&ctx.field().one(), b, ctx.field())?;
            go(a)?.scale(&inv)
        }
        Expr::Pow(a, e) => {
            let base = go(a)?;
            let mut acc = ctx.one();
            for _ in 0..*e {
                acc = ctx.mul(&acc, &base)?;
            }
            acc
        }
    })
}

/// A parsed and normalized input.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Form(Form),
    Tensor(Tensor),
}

impl Value {
    pub fn format(&self, ctx: &AlgebraCtx) -> String {
        match self {
            Value::Form(f) => ctx.format_form(f),
            Value::Tensor(t) => ctx.format_tensor(t),
        }
    }
}

/// Parses a form or, if `(x)` occurs, a tensor; all terms of a tensor must
/// have the same arity.
pub fn parse_expression(text: &str, ctx: &AlgebraCtx) -> Result<Value> {
    let terms = parse_terms(text, Scope::of(ctx))?;
    let arity = terms[0].1.len();
    if let Some((_, bad)) = terms.iter().find(|(_, fs)| fs.len() != arity) {
        return Err(syntax(
            bad[0].pos,
            format!("tensor term of arity {} in a sum of arity {arity}", bad.len()),
        ));
    }
    if arity == 1 {
        let mut out = Form::zero();
        for (neg, fs) in &terms {
            let f = eval_form(&fs[0], ctx)?;
            out = if *neg { out.sub(&f) } else { out.add(&f) };
        }
        return Ok(Value::Form(out));
    }
    let mut out = Tensor::zero();
    for (neg, fs) in &terms {
        let forms = fs.iter().map(|n| eval_form(n, ctx)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Form> = forms.iter().collect();
        let t = ctx.tensor(&refs);
        out = if *neg { out.sub(&t) } else { out.add(&t) };
    }
    Ok(Value::Tensor(out))
}

pub fn parse_form(text: &str, ctx: &AlgebraCtx) -> Result<Form> {
    match parse_expression(text, ctx)? {
        Value::Form(f) => Ok(f),
        Value::Tensor(_) => Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "expected a form, found a tensor".into(),
        }),
    }
}

/// Parses a tensor; a plain form counts as a tensor of arity 1.
pub fn parse_tensor(text: &str, ctx: &AlgebraCtx) -> Result<Tensor> {
    match parse_expression(text, ctx)? {
        Value::Tensor(t) => Ok(t),
        Value::Form(f) => Ok(ctx.tensor(&[&f])),
    }
}

/// A scalar expression: numbers, the field parameter if any, arithmetic.
pub fn parse_scalar(text: &str, field: &FieldSpec) -> Result<Scalar> {
    let scope = Scope {
        names: &[],
        param: field.param_name(),
    };
    eval_scalar(&parse_single(text, scope)?, field)
}

/// A polynomial in the named variables, without differentials.
pub fn parse_poly(text: &str, field: &FieldSpec, names: &[String]) -> Result<Poly> {
    let scope = Scope {
        names,
        param: field.param_name(),
    };
    eval_poly(&parse_single(text, scope)?, field, names.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexer_positions_span_lines() {
        let toks = lex("x +\n  dx (x) 2").unwrap();
        let pos: Vec<(usize, usize)> = toks.iter().map(|(_, p)| (p.line, p.column)).collect();
        assert_eq!(pos, vec![(1, 1), (1, 3), (2, 3), (2, 6), (2, 10), (2, 11)]);
        assert_eq!(toks[3].0, Tok::Tensor);
    }

    #[test]
    fn scalar_arithmetic() {
        let f = FieldSpec::rationals();
        assert_eq!(parse_scalar("-3/6 + 1", &f).unwrap().to_string(), "1/2");
        assert_eq!(parse_scalar("2^10", &f).unwrap().to_string(), "1024");
        let e = parse_scalar("1/(2-2)", &f).unwrap_err();
        assert!(matches!(e, Error::Syntax { column: 3, .. }), "{e}");
        let e = parse_scalar("q", &f).unwrap_err();
        assert!(matches!(e, Error::UnknownIdentifier { .. }));
    }

    #[test]
    fn names_are_validated() {
        let n = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(validate_names(&n(&["x", "y"]), Some("q")).is_ok());
        assert!(validate_names(&n(&["x", "dx"]), None).is_err());
        assert!(validate_names(&n(&["q"]), Some("q")).is_err());
        assert!(validate_names(&n(&["2x"]), None).is_err());
    }
}
