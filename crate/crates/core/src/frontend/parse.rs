//! Recursive-descent parser for polynomial and operator expressions.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INTEGER)?
//! atom    := INTEGER ('/' INTEGER)? | VARIABLE | '(' sum ')'
//! ```
//!
//! Variables are `x1..xn` (ξ), `z1..zn`, and in operator expressions `d1..dn`
//! (`D1..Dn` is accepted as a synonym). Juxtaposition is not multiplication and
//! `/` only appears inside a rational literal such as `3/4`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Poly, Rat};
use crate::weyl::WeylOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarName {
    Xi,
    Z,
    D,
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Number(Rat),
    Var { name: VarName, index: usize, line: usize, column: usize },
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Group(Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Number(Rat),
    Var(VarName, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: start_line, column: start_col });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = chars[begin..i].iter().collect::<String>().parse().expect("digits");
            let mut value = Rat::from_integer(numer.clone());
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let dbegin = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let denom: BigInt = chars[dbegin..i].iter().collect::<String>().parse().expect("digits");
                if denom.is_zero() {
                    return Err(err(start_line, start_col, "zero denominator in rational literal"));
                }
                value = Rat::new(numer, denom);
            } else if i < chars.len() && chars[i] == '/' {
                return Err(err(line, col + (i - begin), "'/' is only allowed inside a rational literal"));
            }
            col += i - begin;
            out.push(Spanned { tok: Tok::Number(value), line: start_line, column: start_col });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[begin..i].iter().collect();
            let dbegin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - begin;
            let var = match name.as_str() {
                "x" => VarName::Xi,
                "z" => VarName::Z,
                "d" | "D" => VarName::D,
                _ => return Err(err(start_line, start_col, format!("unknown variable '{name}'"))),
            };
            if dbegin == i {
                return Err(err(start_line, start_col, format!("variable '{name}' needs an index")));
            }
            let index: usize = chars[dbegin..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err(start_line, start_col, "variable index too large"))?;
            out.push(Spanned { tok: Tok::Var(var, index), line: start_line, column: start_col });
            continue;
        }
        if c == '/' {
            return Err(err(start_line, start_col, "'/' is only allowed inside a rational literal"));
        }
        return Err(err(start_line, start_col, format!("unexpected character '{c}'")));
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Number(v) if v.is_integer() => {
                let e = u32::try_from(v.to_integer())
                    .map_err(|_| err(t.line, t.column, "exponent too large"))?;
                Ok(ExprAst::Pow(Box::new(base), e))
            }
            Tok::Minus => Err(err(t.line, t.column, "negative exponent")),
            _ => Err(err(t.line, t.column, "exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Number(v) => Ok(ExprAst::Number(v)),
            Tok::Var(name, index) => Ok(ExprAst::Var { name, index, line: t.line, column: t.column }),
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err(close.line, close.column, "expected ')'"));
                }
                Ok(ExprAst::Group(Box::new(inner)))
            }
            Tok::End => Err(err(t.line, t.column, "unexpected end of input")),
            _ => Err(err(t.line, t.column, "expected a number, variable or '('")),
        }
    }
}

/// Parses text into an expression tree without interpreting variables.
pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let expr = parser.sum()?;
    let t = parser.peek();
    if t.tok != Tok::End {
        return Err(err(t.line, t.column, "unexpected trailing input"));
    }
    Ok(expr)
}

fn check_index(index: usize, n: usize, line: usize, column: usize) -> Result<usize, ParseError> {
    if index == 0 || index > n {
        Err(err(line, column, format!("unknown variable index {index} (n = {n})")))
    } else {
        Ok(index - 1)
    }
}

fn to_poly(e: &ExprAst, n: usize) -> Result<Poly, ParseError> {
    Ok(match e {
        ExprAst::Number(v) => Poly::constant(n, v.clone()),
        ExprAst::Var { name, index, line, column } => {
            let i = check_index(*index, n, *line, *column)?;
            match name {
                VarName::Xi => Poly::xi_var(n, i),
                VarName::Z => Poly::z_var(n, i),
                VarName::D => {
                    return Err(err(*line, *column, "derivative variables are only allowed in operator expressions"))
                }
            }
        }
        ExprAst::Neg(a) => -to_poly(a, n)?,
        ExprAst::Add(a, b) => to_poly(a, n)? + to_poly(b, n)?,
        ExprAst::Sub(a, b) => to_poly(a, n)? - to_poly(b, n)?,
        ExprAst::Mul(a, b) => to_poly(a, n)? * to_poly(b, n)?,
        ExprAst::Pow(a, m) => to_poly(a, n)?.pow(*m),
        ExprAst::Group(a) => to_poly(a, n)?,
    })
}

fn to_weyl(e: &ExprAst, n: usize) -> Result<WeylOp, ParseError> {
    let same_dim = "operands share the dimension";
    Ok(match e {
        ExprAst::Number(v) => WeylOp::identity(n).scale(v),
        ExprAst::Var { name, index, line, column } => {
            let i = check_index(*index, n, *line, *column)?;
            match name {
                VarName::Z => WeylOp::multiplication(crate::poly::ZPoly::var(n, i)),
                VarName::D => WeylOp::d(n, i),
                VarName::Xi => {
                    return Err(err(*line, *column, "operator expressions use z and d variables only"))
                }
            }
        }
        ExprAst::Neg(a) => to_weyl(a, n)?.scale(&-Rat::from_integer(1.into())),
        ExprAst::Add(a, b) => to_weyl(a, n)?.try_add(&to_weyl(b, n)?).expect(same_dim),
        ExprAst::Sub(a, b) => to_weyl(a, n)?
            .try_add(&to_weyl(b, n)?.scale(&-Rat::from_integer(1.into())))
            .expect(same_dim),
        ExprAst::Mul(a, b) => to_weyl(a, n)?.compose(&to_weyl(b, n)?).expect(same_dim),
        ExprAst::Pow(a, m) => to_weyl(a, n)?.pow(*m),
        ExprAst::Group(a) => to_weyl(a, n)?,
    })
}

fn check_n(n: usize) -> Result<(), ParseError> {
    if n == 0 {
        Err(err(1, 1, "dimension must be at least 1"))
    } else {
        Ok(())
    }
}

/// Parses a polynomial in `x1..xn, z1..zn`.
pub fn parse_poly(text: &str, n: usize) -> Result<Poly, ParseError> {
    check_n(n)?;
    to_poly(&parse_expr(text)?, n)
}

/// Parses an operator in `z1..zn, d1..dn`; products are compositions.
pub fn parse_weyl(text: &str, n: usize) -> Result<WeylOp, ParseError> {
    check_n(n)?;
    to_weyl(&parse_expr(text)?, n)
}
