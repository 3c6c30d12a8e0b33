//! Target expressions: `RATIONAL`, `RATIONAL*pi`, `pi` and `INT/pi`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::engine::Target;
use crate::error::{Error, Result};
use crate::numerics::{real_compare, Comparison, PrecisionReal, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetExpr {
    Exact(Rational),
    /// `c·π`.
    PiMultiple(Rational),
    /// `c/π`.
    InvPiMultiple(Rational),
}

impl TargetExpr {
    pub fn to_target(&self) -> Result<Target> {
        Ok(match self {
            TargetExpr::Exact(v) => Target::Exact(v.clone()),
            TargetExpr::PiMultiple(c) if c.is_zero() => Target::Exact(Rational::zero()),
            TargetExpr::InvPiMultiple(c) if c.is_zero() => Target::Exact(Rational::zero()),
            TargetExpr::PiMultiple(c) => Target::Real(PrecisionReal::pi_times(c.clone())?),
            TargetExpr::InvPiMultiple(c) => Target::Real(PrecisionReal::inv_pi_times(c.clone())?),
        })
    }

    fn in_unit_interval(&self) -> bool {
        let one = Rational::one();
        match self.to_target() {
            Err(_) => false,
            Ok(Target::Exact(v)) => !v.is_negative() && v <= one,
            Ok(Target::Real(v)) => real_compare(&v, &one, 256) == Comparison::Less,
        }
    }
}

impl fmt::Display for TargetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetExpr::Exact(v) => write!(f, "{v}"),
            TargetExpr::PiMultiple(c) if c.is_one() => f.write_str("pi"),
            TargetExpr::PiMultiple(c) => write!(f, "{c}*pi"),
            TargetExpr::InvPiMultiple(c) => write!(f, "{c}/pi"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Slash,
    Star,
    Pi,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '/' => out.push((start, Token::Slash)),
            '*' => out.push((start, Token::Star)),
            '-' | '0'..='9' => {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse().map_err(|_| Error::Syntax {
                    position: start,
                    message: format!("expected digits after `-`, found `{digits}`"),
                })?;
                out.push((start, Token::Int(n)));
                continue;
            }
            'p' if chars.get(i + 1) == Some(&'i') => {
                out.push((start, Token::Pi));
                i += 1;
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Parses a target and checks that its value lies in `[0, 1]`.
pub fn parse_target(text: &str) -> Result<TargetExpr> {
    let expr = parse_expr(text)?;
    if !expr.in_unit_interval() {
        return Err(Error::Range(expr.to_string()));
    }
    Ok(expr)
}

fn parse_expr(text: &str) -> Result<TargetExpr> {
    let tokens = tokenize(text)?;
    let end = text.chars().count();
    let syntax = |position: usize, message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };
    let pos = |k: usize| tokens.get(k).map_or(end, |(p, _)| *p);
    let tok = |k: usize| tokens.get(k).map(|(_, t)| t);

    let (coef, mut k) = match tok(0) {
        Some(Token::Pi) => (Rational::one(), 0),
        Some(Token::Int(n)) => match (tok(1), tok(2)) {
            (Some(Token::Slash), Some(Token::Int(d))) => {
                if d.is_zero() {
                    return Err(syntax(pos(2), "zero denominator"));
                }
                (Rational::new(n.clone(), d.clone()), 3)
            }
            (Some(Token::Slash), Some(Token::Pi)) => {
                let expr = TargetExpr::InvPiMultiple(Rational::from_integer(n.clone()));
                return finish(expr, &tokens, 3);
            }
            (Some(Token::Slash), _) => return Err(syntax(pos(2), "expected an integer or `pi` after `/`")),
            _ => (Rational::from_integer(n.clone()), 1),
        },
        _ => return Err(syntax(pos(0), "expected a number or `pi`")),
    };
    let expr = match tok(k) {
        None => return Ok(TargetExpr::Exact(coef)),
        Some(Token::Pi) if k == 0 => {
            k = 1;
            TargetExpr::PiMultiple(coef)
        }
        Some(Token::Star) => match tok(k + 1) {
            Some(Token::Pi) => {
                k += 2;
                TargetExpr::PiMultiple(coef)
            }
            _ => return Err(syntax(pos(k + 1), "expected `pi` after `*`")),
        },
        Some(_) => return Err(syntax(pos(k), "expected `*pi` or end of input")),
    };
    finish(expr, &tokens, k)
}

fn finish(expr: TargetExpr, tokens: &[(usize, Token)], k: usize) -> Result<TargetExpr> {
    match tokens.get(k) {
        None => Ok(expr),
        Some((p, _)) => Err(Error::Syntax {
            position: *p,
            message: "unexpected trailing input".into(),
        }),
    }
}
