//! Parser for Laurent polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! poly   := term (('+'|'-') term)* ;
//! term   := coef ('*' factor)* | factor ('*' factor)* ;
//! factor := ident ('^' sint)? ;
//! coef   := sint ('/' uint)? ;
//! ident  := letter (letter|digit)* ;
//! sint   := ('-')? uint ;
//! ```
//!
//! Variables come from an ordered declaration list; exponent positions
//! follow that order. A leading sign on a term is accepted even where the
//! grammar technically requires the sign inside the coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExponentVector, LaurentPoly};

/// A syntax or name error, with 1-based source position. Errors in the
/// variable declaration list itself are reported at position 0:0.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    while i < chars.len() {
        let ch = chars[i];
        if ch == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (tline, tcol) = (line, col);
        let kind = match ch {
            '+' | '-' | '*' | '/' | '^' => {
                i += 1;
                col += 1;
                match ch {
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    _ => TokenKind::Caret,
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                TokenKind::Number(chars[start..i].iter().collect())
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                    col += 1;
                }
                TokenKind::Ident(chars[start..i].iter().collect())
            }
            other => {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        tokens.push(Token {
            kind,
            line: tline,
            col: tcol,
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    end_line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut poly = LaurentPoly::zero(self.vars.len());
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        let mut negate = false;
        loop {
            let term = self.parse_term(negate)?;
            poly = poly.add(&term);
            match self.peek() {
                None => break,
                Some(TokenKind::Plus) => {
                    self.next();
                    negate = false;
                }
                Some(TokenKind::Minus) => {
                    self.next();
                    negate = true;
                }
                Some(_) => return Err(self.error("expected `+` or `-` between terms")),
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self, negate: bool) -> Result<LaurentPoly, ParseError> {
        let mut coeff = if negate {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let mut exponents = vec![0i64; self.vars.len()];
        if let Some(TokenKind::Minus) = self.peek() {
            self.next();
            coeff = -coeff;
        }
        self.parse_atom(&mut coeff, &mut exponents)?;
        while let Some(TokenKind::Star) = self.peek() {
            self.next();
            self.parse_atom(&mut coeff, &mut exponents)?;
        }
        Ok(LaurentPoly::monomial(ExponentVector::new(exponents), coeff))
    }

    fn parse_atom(
        &mut self,
        coeff: &mut BigRational,
        exponents: &mut [i64],
    ) -> Result<(), ParseError> {
        match self.peek().cloned() {
            Some(TokenKind::Number(digits)) => {
                self.next();
                let numer: BigInt = digits.parse().expect("digits form an integer");
                let mut value = BigRational::from_integer(numer);
                if let Some(TokenKind::Slash) = self.peek() {
                    self.next();
                    let (dline, dcol) = self.here();
                    match self.next().map(|t| t.kind) {
                        Some(TokenKind::Number(denom_digits)) => {
                            let denom: BigInt =
                                denom_digits.parse().expect("digits form an integer");
                            if denom.is_zero() {
                                return Err(ParseError::new(dline, dcol, "zero denominator"));
                            }
                            value /= BigRational::from_integer(denom);
                        }
                        _ => {
                            return Err(ParseError::new(
                                dline,
                                dcol,
                                "expected an integer after `/`",
                            ))
                        }
                    }
                }
                *coeff *= value;
                Ok(())
            }
            Some(TokenKind::Ident(name)) => {
                let (line, col) = self.here();
                self.next();
                let index = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| {
                        ParseError::new(line, col, format!("unknown variable name `{name}`"))
                    })?;
                let mut power = 1i64;
                if let Some(TokenKind::Caret) = self.peek() {
                    self.next();
                    power = self.parse_signed_int()?;
                }
                exponents[index] = exponents[index].checked_add(power).ok_or_else(|| {
                    ParseError::new(line, col, "exponent overflow")
                })?;
                Ok(())
            }
            _ => Err(self.error("expected a coefficient or a variable")),
        }
    }

    fn parse_signed_int(&mut self) -> Result<i64, ParseError> {
        let mut negative = false;
        if let Some(TokenKind::Minus) = self.peek() {
            self.next();
            negative = true;
        }
        let (line, col) = self.here();
        match self.next().map(|t| t.kind) {
            Some(TokenKind::Number(digits)) => {
                let magnitude: i64 = digits
                    .parse()
                    .map_err(|_| ParseError::new(line, col, "exponent out of range"))?;
                Ok(if negative { -magnitude } else { magnitude })
            }
            _ => Err(ParseError::new(line, col, "expected an integer exponent")),
        }
    }
}

/// Parses an expression over the given ordered variable names.
pub fn parse_laurent(
    text: &str,
    vars: &[impl AsRef<str>],
) -> Result<LaurentPoly, ParseError> {
    let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    for (i, name) in names.iter().enumerate() {
        let mut chars = name.chars();
        let valid = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric());
        if !valid {
            return Err(ParseError::new(
                0,
                0,
                format!("invalid variable name `{name}`"),
            ));
        }
        if names[..i].contains(name) {
            return Err(ParseError::new(
                0,
                0,
                format!("duplicate variable name `{name}`"),
            ));
        }
    }
    let end_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    let end_line = text.lines().count().max(1);
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars: &names,
        end_line,
        end_col,
    };
    let poly = parser.parse_poly()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}
