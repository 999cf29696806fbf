//! Integer-valued expressions in `n` and `e`, as written in the table rows:
//! `n(n-1)(n-2)/2`, `(n+1)^(n-2)/(n(n-1))`, `3e`. Juxtaposition multiplies.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(BigInt),
    Var(char),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
}

/// A parsed expression together with its source text.
#[derive(Clone, PartialEq, Eq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.source)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(char),
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            ' ' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            'n' | 'e' => out.push(Token::Var(ch)),
            '+' | '-' | '*' | '/' | '^' => out.push(Token::Op(ch)),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            _ => return Err(Error::Parse(format!("unexpected {ch:?} in expression {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.source))
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek() {
            let op = *op;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Num(_) | Token::Var(_) | Token::Open) => {
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Num(x) => Ok(Node::Num(x)),
            Token::Var(v) => Ok(Node::Var(v)),
            Token::Open => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error("missing ')'")),
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr> {
        let tokens = tokenize(source)?;
        let mut parser = Parser { tokens: &tokens, pos: 0, source };
        let root = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(Expr { source: source.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Exact value with `n` and `e` substituted.
    pub fn eval(&self, n: i64, e: i64) -> Result<BigRational> {
        fn go(node: &Node, n: i64, e: i64) -> Result<BigRational> {
            Ok(match node {
                Node::Num(x) => BigRational::from_integer(x.clone()),
                Node::Var('n') => BigRational::from_integer(n.into()),
                Node::Var(_) => BigRational::from_integer(e.into()),
                Node::Neg(a) => -go(a, n, e)?,
                Node::Add(a, b) => go(a, n, e)? + go(b, n, e)?,
                Node::Sub(a, b) => go(a, n, e)? - go(b, n, e)?,
                Node::Mul(a, b) => go(a, n, e)? * go(b, n, e)?,
                Node::Div(a, b) => {
                    let d = go(b, n, e)?;
                    if d.is_zero() {
                        return Err(Error::NonIntegerResult("division by zero".into()));
                    }
                    go(a, n, e)? / d
                }
                Node::Pow(a, b) => {
                    let base = go(a, n, e)?;
                    let exp = go(b, n, e)?;
                    if !exp.is_integer() {
                        return Err(Error::NonIntegerResult(format!("fractional exponent {exp}")));
                    }
                    let k = exp.to_integer();
                    let mag = k.abs().to_u32().ok_or_else(|| Error::NonIntegerResult("exponent too large".into()))?;
                    let p = (0..mag).fold(BigRational::one(), |acc, _| acc * &base);
                    if k.is_negative() {
                        if p.is_zero() {
                            return Err(Error::NonIntegerResult("division by zero".into()));
                        }
                        p.recip()
                    } else {
                        p
                    }
                }
            })
        }
        go(&self.root, n, e)
    }

    /// Like [`Expr::eval`] but the value must be a nonnegative integer.
    pub fn eval_u64(&self, n: i64, e: i64) -> Result<u64> {
        let v = self.eval(n, e)?;
        if !v.is_integer() {
            return Err(Error::NonIntegerResult(format!("{} = {v} at n={n}, e={e}", self.source)));
        }
        v.to_integer()
            .to_u64()
            .ok_or_else(|| Error::NonIntegerResult(format!("{} = {v} is negative or too large", self.source)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn table_style_expressions() {
        assert_eq!(Expr::parse("n(n-1)(n-2)/2").unwrap().eval(5, 0).unwrap(), q(30, 1));
        assert_eq!(Expr::parse("(n+1)^(n-2)/(n(n-1))").unwrap().eval(3, 0).unwrap(), q(4, 6));
        assert_eq!(Expr::parse("2(n-1)(n-2)").unwrap().eval(4, 0).unwrap(), q(12, 1));
        assert_eq!(Expr::parse("n(n-2)(n-3)e/2").unwrap().eval(5, 3).unwrap(), q(45, 1));
        assert_eq!(Expr::parse("3e").unwrap().eval(0, 7).unwrap(), q(21, 1));
        assert_eq!(Expr::parse("1265625/56").unwrap().eval(0, 0).unwrap(), q(1265625, 56));
        assert_eq!(Expr::parse("-2^2").unwrap().eval(0, 0).unwrap(), q(-4, 1));
        assert_eq!(Expr::parse("2^-1").unwrap().eval(0, 0).unwrap(), q(1, 2));
    }

    #[test]
    fn malformed() {
        assert!(Expr::parse("n(").is_err());
        assert!(Expr::parse("x+1").is_err());
        assert!(Expr::parse("n)").is_err());
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("1/(n-n)").unwrap().eval(2, 0).is_err());
        assert!(Expr::parse("n/2").unwrap().eval_u64(3, 0).is_err());
    }
}
