//! Text formats for polynomials, rational maps, parameters and presets.
//!
//! Expression grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary | <implicit> unary)*
//! unary   := ("+" | "-") unary | power
//! power   := primary ("^" exponent)?
//! exponent:= ("+" | "-")? INT | "(" ("+" | "-")? INT ")"
//! primary := NUMBER | "z" | "i" | "(" expr ("," expr)* ")"
//! ```
//!
//! A parenthesized list with at least one comma is a coefficient list,
//! highest degree first; each entry must be constant. Implicit
//! multiplication needs the two factors to touch: a number or `)` followed
//! by `z`, `i` or `(`, or `z`/`i` followed by `(`. So `2z`, `3i`, `z(z+1)`
//! and `(z+1)(z-1)` parse while `z z`, `zz`, `z2` and `2 z` do not.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::Polynomial;
use crate::rational::RationalMap;

pub const MAX_INPUT_LEN: usize = 4096;
pub const MAX_DEGREE: usize = 64;
pub const MAX_EXPONENT: i64 = 64;
pub const MAX_DEPTH: usize = 64;

/// Upper bound on the integer parameters accepted by presets.
pub const MAX_PRESET_PARAM: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("input is {len} bytes, limit is {max}")]
    TooLong { len: usize, max: usize },
    #[error("empty input")]
    Empty,
    #[error("unexpected character {ch:?} at {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected {found} at {pos}, expected {expected}")]
    UnexpectedToken {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("malformed number at {pos}")]
    InvalidNumber { pos: usize },
    #[error("exponent at {pos} must be an integer with magnitude at most {max}")]
    InvalidExponent { pos: usize, max: i64 },
    #[error("juxtaposition at {pos} is ambiguous; write `*`")]
    AmbiguousJuxtaposition { pos: usize },
    #[error("coefficient list entry at {pos} depends on z")]
    NonConstantCoefficient { pos: usize },
    #[error("degree exceeds {max}")]
    DegreeTooLarge { max: usize },
    #[error("nesting deeper than {max}")]
    TooDeep { max: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("could not reduce map: {0}")]
    Reduction(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Z,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Copy, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
    /// Whether whitespace separates this token from the previous one.
    spaced: bool,
    /// For numbers: the literal had only decimal digits.
    integral: bool,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Z => "`z`".into(),
        Tok::I => "`i`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut spaced = false;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            spaced = true;
            i += 1;
            continue;
        }
        let start = i;
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'z' => Some(Tok::Z),
            b'i' => Some(Tok::I),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token {
                tok,
                pos: start,
                spaced,
                integral: false,
            });
            i += 1;
        } else if b.is_ascii_digit() || b == b'.' {
            let mut integral = true;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                integral = false;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                integral = false;
                i += 1;
                if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                    i += 1;
                }
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(ParseError::InvalidNumber { pos: start });
                }
            }
            let text = &src[start..i];
            let value: f64 = text
                .parse()
                .map_err(|_| ParseError::InvalidNumber { pos: start })?;
            if !value.is_finite() {
                return Err(ParseError::NonFinite);
            }
            out.push(Token {
                tok: Tok::Num(value),
                pos: start,
                spaced,
                integral,
            });
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(ParseError::UnexpectedChar { pos: start, ch });
        }
        spaced = false;
    }
    Ok(out)
}

/// A quotient of polynomials, unreduced while parsing.
#[derive(Clone)]
struct Frac {
    num: Polynomial,
    den: Polynomial,
}

impl Frac {
    fn poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    fn constant(c: Complex64) -> Self {
        Self::poly(Polynomial::constant(c))
    }

    fn as_constant(&self) -> Option<Complex64> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    fn checked(self) -> Result<Self, ParseError> {
        if self.num.degree() > MAX_DEGREE || self.den.degree() > MAX_DEGREE {
            return Err(ParseError::DegreeTooLarge { max: MAX_DEGREE });
        }
        let finite = |p: &Polynomial| {
            p.coeffs()
                .iter()
                .all(|c| c.re.is_finite() && c.im.is_finite())
        };
        if !finite(&self.num) || !finite(&self.den) {
            return Err(ParseError::NonFinite);
        }
        if self.den.is_zero() {
            return Err(ParseError::DivisionByZero);
        }
        Ok(self)
    }

    fn add(self, other: Self, negate: bool) -> Result<Self, ParseError> {
        let rhs = if negate { -&other.num } else { other.num };
        let out = if self.den == other.den {
            Self {
                num: &self.num + &rhs,
                den: self.den,
            }
        } else {
            Self {
                num: &(&self.num * &other.den) + &(&rhs * &self.den),
                den: &self.den * &other.den,
            }
        };
        out.checked()
    }

    fn mul(self, other: Self) -> Result<Self, ParseError> {
        Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .checked()
    }

    fn div(self, other: Self) -> Result<Self, ParseError> {
        if other.num.is_zero() {
            return Err(ParseError::DivisionByZero);
        }
        Self {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
        .checked()
    }

    fn powi(self, k: i64) -> Result<Self, ParseError> {
        let e = k.unsigned_abs() as usize;
        let deg = self.num.degree().max(self.den.degree());
        if deg.saturating_mul(e) > MAX_DEGREE {
            return Err(ParseError::DegreeTooLarge { max: MAX_DEGREE });
        }
        let (num, den) = (self.num.pow(e as u32), self.den.pow(e as u32));
        if k >= 0 {
            Self { num, den }.checked()
        } else if num.is_zero() {
            Err(ParseError::DivisionByZero)
        } else {
            Self { num: den, den: num }.checked()
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.toks.get(self.at).copied()
    }

    fn prev(&self) -> Option<Token> {
        self.at
            .checked_sub(1)
            .and_then(|k| self.toks.get(k).copied())
    }

    fn next(&mut self, expected: &'static str) -> Result<Token, ParseError> {
        let t = self.peek().ok_or(ParseError::UnexpectedEnd { expected })?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<Token, ParseError> {
        let t = self.next(expected)?;
        if t.tok != tok {
            return Err(unexpected(&t, expected));
        }
        Ok(t)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::TooDeep { max: MAX_DEPTH });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        self.enter()?;
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let negate = match t.tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.at += 1;
            let rhs = self.term()?;
            acc = acc.add(rhs, negate)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Star => {
                    self.at += 1;
                    acc = acc.mul(self.unary()?)?;
                }
                Tok::Slash => {
                    self.at += 1;
                    acc = acc.div(self.unary()?)?;
                }
                Tok::Z | Tok::I | Tok::LParen | Tok::Num(_) => {
                    let prev = self.prev().expect("a term consumed at least one token");
                    let allowed = !t.spaced
                        && match prev.tok {
                            Tok::Num(_) | Tok::RParen => !matches!(t.tok, Tok::Num(_)),
                            Tok::Z | Tok::I => matches!(t.tok, Tok::LParen),
                            _ => false,
                        };
                    if !allowed {
                        return Err(ParseError::AmbiguousJuxtaposition { pos: t.pos });
                    }
                    acc = acc.mul(self.power()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Frac, ParseError> {
        match self.peek().map(|t| t.tok) {
            Some(Tok::Minus) => {
                self.at += 1;
                self.enter()?;
                let v = self.unary()?;
                self.depth -= 1;
                Ok(Frac {
                    num: -&v.num,
                    den: v.den,
                })
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.enter()?;
                let v = self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac, ParseError> {
        let base = self.primary()?;
        if matches!(self.peek().map(|t| t.tok), Some(Tok::Caret)) {
            self.at += 1;
            let k = self.exponent()?;
            return base.powi(k);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let first = self.next("an integer exponent")?;
        let paren = first.tok == Tok::LParen;
        let mut t = if paren {
            self.next("an integer exponent")?
        } else {
            first
        };
        let mut sign = 1;
        if let Tok::Minus | Tok::Plus = t.tok {
            if t.tok == Tok::Minus {
                sign = -1;
            }
            t = self.next("an integer exponent")?;
        }
        let value = match t.tok {
            Tok::Num(v) if t.integral && v <= MAX_EXPONENT as f64 => sign * v as i64,
            Tok::Num(_) => {
                return Err(ParseError::InvalidExponent {
                    pos: t.pos,
                    max: MAX_EXPONENT,
                })
            }
            _ => return Err(unexpected(&t, "an integer exponent")),
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(value)
    }

    fn primary(&mut self) -> Result<Frac, ParseError> {
        let t = self.next("a number, `z`, `i` or `(`")?;
        match t.tok {
            Tok::Num(v) => Ok(Frac::constant(Complex64::new(v, 0.0))),
            Tok::Z => Ok(Frac::poly(Polynomial::z())),
            Tok::I => Ok(Frac::constant(Complex64::new(0.0, 1.0))),
            Tok::LParen => {
                let first_pos = self.peek().map_or(t.pos, |t| t.pos);
                let first = self.expr()?;
                if !matches!(self.peek().map(|t| t.tok), Some(Tok::Comma)) {
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(first);
                }
                let mut coeffs = vec![first
                    .as_constant()
                    .ok_or(ParseError::NonConstantCoefficient { pos: first_pos })?];
                while matches!(self.peek().map(|t| t.tok), Some(Tok::Comma)) {
                    self.at += 1;
                    let pos = self.peek().map_or(t.pos, |t| t.pos);
                    let entry = self.expr()?;
                    coeffs.push(
                        entry
                            .as_constant()
                            .ok_or(ParseError::NonConstantCoefficient { pos })?,
                    );
                    if coeffs.len() > MAX_DEGREE + 1 {
                        return Err(ParseError::DegreeTooLarge { max: MAX_DEGREE });
                    }
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Frac::poly(Polynomial::new(coeffs)).checked()
            }
            _ => Err(unexpected(&t, "a number, `z`, `i` or `(`")),
        }
    }
}

fn unexpected(t: &Token, expected: &'static str) -> ParseError {
    ParseError::UnexpectedToken {
        pos: t.pos,
        found: describe(&t.tok),
        expected,
    }
}

fn parse_frac(src: &str) -> Result<Frac, ParseError> {
    if src.len() > MAX_INPUT_LEN {
        return Err(ParseError::TooLong {
            len: src.len(),
            max: MAX_INPUT_LEN,
        });
    }
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        toks,
        at: 0,
        depth: 0,
    };
    let value = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(unexpected(&t, "an operator or end of input"));
    }
    Ok(value)
}

/// Parses an expression that must reduce to a polynomial with constant
/// denominator.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let f = parse_frac(src)?;
    if !f.den.is_constant() {
        return Err(ParseError::NotPolynomial);
    }
    let scale = f.den.coeff(0);
    let p = if scale == Complex64::new(1.0, 0.0) {
        f.num
    } else {
        f.num.scale(scale.inv())
    };
    Frac::poly(p).checked().map(|f| f.num)
}

/// Parses a rational map and cancels common factors.
pub fn parse_rational_map(src: &str) -> Result<RationalMap, ParseError> {
    let f = parse_frac(src)?;
    RationalMap::reduce(f.num, f.den).map_err(|e| ParseError::Reduction(e.to_string()))
}

/// `re+imi` using the shortest round-tripping decimal for each part.
pub fn format_complex(c: Complex64) -> String {
    if c.im.is_sign_negative() {
        format!("{:?}-{:?}i", c.re, -c.im)
    } else {
        format!("{:?}+{:?}i", c.re, c.im)
    }
}

/// Canonical coefficient-list form, e.g. `(1.0+0.0i, 0.0+0.0i, -1.0+0.0i)`.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "(0.0+0.0i)".to_string();
    }
    let parts: Vec<String> = p.coeffs().iter().map(|&c| format_complex(c)).collect();
    format!("({})", parts.join(", "))
}

/// Canonical `NUM / DEN` form; parses back to the same coefficients.
pub fn format_map(r: &RationalMap) -> String {
    format!(
        "{} / {}",
        format_polynomial(r.num()),
        format_polynomial(r.den())
    )
}

/// Parses `re,im` or a bare real number.
pub fn parse_lambda(src: &str) -> Result<Complex64, ParseError> {
    if src.len() > MAX_INPUT_LEN {
        return Err(ParseError::TooLong {
            len: src.len(),
            max: MAX_INPUT_LEN,
        });
    }
    let bad = || ParseError::InvalidParameter(format!("expected `re,im`, got {src:?}"));
    let mut parts = src.split(',');
    let re: f64 = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(s) => s.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    if !re.is_finite() || !im.is_finite() {
        return Err(ParseError::NonFinite);
    }
    if re == 0.0 && im == 0.0 {
        return Err(ParseError::InvalidParameter(
            "lambda must be nonzero".into(),
        ));
    }
    Ok(Complex64::new(re + 0.0, im + 0.0))
}

/// Named maps that are already Newton maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// The five polynomial Newton maps with connected Julia set, `F1`..`F5`.
    F(u8),
    N0 {
        m: usize,
        n: usize,
    },
    N1 {
        n: usize,
    },
    N2 {
        n: usize,
    },
    McMullen {
        m: usize,
        n: usize,
    },
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::F(i) => write!(f, "F{i}"),
            Preset::N0 { m, n } => write!(f, "N0:{m},{n}"),
            Preset::N1 { n } => write!(f, "N1:{n}"),
            Preset::N2 { n } => write!(f, "N2:{n}"),
            Preset::McMullen { m, n } => write!(f, "mcmullen:{m},{n}"),
        }
    }
}

impl Preset {
    /// The Newton map this preset names.
    pub fn newton_map(&self) -> RationalMap {
        use crate::dynamics::{f_map, family_map, Family};
        match *self {
            Preset::F(i) => f_map(i as usize).expect("index validated by parser"),
            Preset::N0 { m, n } => family_map(Family::N0 { m, n }).expect("validated"),
            Preset::N1 { n } => family_map(Family::N1 { n }).expect("validated"),
            Preset::N2 { n } => family_map(Family::N2 { n }).expect("validated"),
            Preset::McMullen { m, n } => crate::mcmullen::newton_mcmullen(m, n),
        }
    }
}

/// Parses `F1`..`F5`, `N0:m,n`, `N1:n`, `N2:n` or `mcmullen:m,n`.
pub fn parse_preset(src: &str) -> Result<Preset, ParseError> {
    let unknown = || ParseError::UnknownPreset(src.chars().take(64).collect());
    let src_trim = src.trim();
    if let Some(rest) = src_trim.strip_prefix('F') {
        return match rest {
            "1" | "2" | "3" | "4" | "5" => Ok(Preset::F(rest.as_bytes()[0] - b'0')),
            _ => Err(unknown()),
        };
    }
    let (name, args) = src_trim.split_once(':').ok_or_else(unknown)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError::InvalidParameter(format!("bad integer list {args:?}")))?;
    if nums.iter().any(|&k| k > MAX_PRESET_PARAM) {
        return Err(ParseError::InvalidParameter(format!(
            "preset parameters are limited to {MAX_PRESET_PARAM}"
        )));
    }
    let param = |msg: &str| ParseError::InvalidParameter(msg.to_string());
    match (name, nums.as_slice()) {
        ("N0", &[m, n]) if m >= 1 && n >= 1 => Ok(Preset::N0 { m, n }),
        ("N0", _) => Err(param("N0 takes m,n >= 1")),
        ("N1", &[n]) if n >= 2 => Ok(Preset::N1 { n }),
        ("N1", _) => Err(param("N1 takes n >= 2")),
        ("N2", &[n]) if n >= 2 => Ok(Preset::N2 { n }),
        ("N2", _) => Err(param("N2 takes n >= 2")),
        ("mcmullen", &[m, n]) if m >= 1 && n >= 1 => Ok(Preset::McMullen { m, n }),
        ("mcmullen", _) => Err(param("mcmullen takes m,n >= 1")),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expressions() {
        assert_eq!(
            parse_polynomial("z^3 - 1").unwrap(),
            Polynomial::from_real(&[1.0, 0.0, 0.0, -1.0])
        );
        assert_eq!(
            parse_polynomial("(1,0,0,-1)").unwrap(),
            Polynomial::from_real(&[1.0, 0.0, 0.0, -1.0])
        );
        assert_eq!(
            parse_polynomial("2z^2+3i").unwrap(),
            Polynomial::new(vec![c(2.0, 0.0), c(0.0, 0.0), c(0.0, 3.0)])
        );
        assert_eq!(
            parse_polynomial("(z+1)(z-1)").unwrap(),
            Polynomial::from_real(&[1.0, 0.0, -1.0])
        );
        assert_eq!(
            parse_polynomial("z(z+1)").unwrap(),
            Polynomial::from_real(&[1.0, 1.0, 0.0])
        );
        assert_eq!(
            parse_polynomial("z^2(z-1)").unwrap(),
            Polynomial::from_real(&[1.0, -1.0, 0.0, 0.0])
        );
        assert_eq!(
            parse_polynomial("-z^2").unwrap(),
            Polynomial::from_real(&[-1.0, 0.0, 0.0])
        );
        assert_eq!(
            parse_polynomial("(z^2-1)/2").unwrap(),
            Polynomial::from_real(&[0.5, 0.0, -0.5])
        );
        assert_eq!(
            parse_polynomial("1.5e1").unwrap(),
            Polynomial::from_real(&[15.0])
        );
        assert_eq!(
            parse_polynomial("(1+2i, -3)").unwrap(),
            Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.0)])
        );
    }

    #[test]
    fn rational_maps() {
        let r = parse_rational_map("(z^5-1)/z^3").unwrap();
        assert_eq!(r.degree(), 5);
        assert_eq!(r.den(), &Polynomial::monomial(c(1.0, 0.0), 3));
        let r = parse_rational_map("(z^2-1)/(z-1)").unwrap();
        assert!(r.maps_equal(&Polynomial::from_real(&[1.0, 1.0]).into(), 1e-9));
        let r = parse_rational_map("z^-2").unwrap();
        assert_eq!(r.num(), &Polynomial::one());
        let r = parse_rational_map("1/z + 1/z").unwrap();
        assert!(r.maps_equal(
            &RationalMap::reduce(Polynomial::from_real(&[2.0]), Polynomial::z()).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_polynomial("z z"),
            Err(ParseError::AmbiguousJuxtaposition { .. })
        ));
        assert!(matches!(
            parse_polynomial("zz"),
            Err(ParseError::AmbiguousJuxtaposition { .. })
        ));
        assert!(matches!(
            parse_polynomial("2 z"),
            Err(ParseError::AmbiguousJuxtaposition { .. })
        ));
        assert!(matches!(
            parse_polynomial("z2"),
            Err(ParseError::AmbiguousJuxtaposition { .. })
        ));
        assert!(matches!(
            parse_polynomial("z (z+1)"),
            Err(ParseError::AmbiguousJuxtaposition { .. })
        ));
        assert!(matches!(
            parse_polynomial("z^1.5"),
            Err(ParseError::InvalidExponent { .. })
        ));
        assert!(matches!(
            parse_polynomial("z^100"),
            Err(ParseError::InvalidExponent { .. })
        ));
        assert!(matches!(
            parse_polynomial("z^40*z^40"),
            Err(ParseError::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            parse_polynomial("(z, 1)"),
            Err(ParseError::NonConstantCoefficient { .. })
        ));
        assert!(matches!(
            parse_polynomial("1/z"),
            Err(ParseError::NotPolynomial)
        ));
        assert!(matches!(
            parse_rational_map("1/0"),
            Err(ParseError::DivisionByZero)
        ));
        assert!(matches!(
            parse_rational_map("1/(z-z)"),
            Err(ParseError::DivisionByZero)
        ));
        assert!(matches!(
            parse_rational_map("0^-1"),
            Err(ParseError::DivisionByZero)
        ));
        assert!(matches!(
            parse_rational_map("1e999"),
            Err(ParseError::NonFinite)
        ));
        assert!(matches!(
            parse_rational_map("x"),
            Err(ParseError::UnexpectedChar { .. })
        ));
        assert!(matches!(parse_rational_map(""), Err(ParseError::Empty)));
        assert!(matches!(
            parse_rational_map("(z+1"),
            Err(ParseError::UnexpectedEnd { .. })
        ));
        assert!(matches!(
            parse_rational_map("z+"),
            Err(ParseError::UnexpectedEnd { .. })
        ));
        assert!(matches!(
            parse_rational_map("1e"),
            Err(ParseError::InvalidNumber { .. })
        ));
        let deep = "(".repeat(100) + "z" + &")".repeat(100);
        assert!(matches!(
            parse_rational_map(&deep),
            Err(ParseError::TooDeep { .. })
        ));
        let minus = "-".repeat(200) + "z";
        assert!(matches!(
            parse_rational_map(&minus),
            Err(ParseError::TooDeep { .. })
        ));
    }

    #[test]
    fn canonical_round_trip_is_bit_exact() {
        let p = Polynomial::new(vec![
            c(0.1, -1e-300),
            c(-2.5e17, 0.3),
            c(0.0, -0.0),
            c(1.0 / 3.0, 5e-324),
        ]);
        assert_eq!(parse_polynomial(&format_polynomial(&p)).unwrap(), p);
        let r = RationalMap::reduce(
            Polynomial::new(vec![c(0.7, 0.1), c(-1.0 / 7.0, 2.0)]),
            Polynomial::from_real(&[1.0, 0.0, 3.0]),
        )
        .unwrap();
        let back = parse_rational_map(&format_map(&r)).unwrap();
        assert_eq!(back.num(), r.num());
        assert_eq!(back.den(), r.den());
        assert_eq!(parse_polynomial("(0.0+0.0i)").unwrap(), Polynomial::zero());
    }

    #[test]
    fn lambda_and_presets() {
        assert_eq!(parse_lambda("1.5,-2").unwrap(), c(1.5, -2.0));
        assert_eq!(parse_lambda(" 2 ").unwrap(), c(2.0, 0.0));
        assert!(parse_lambda("0,0").is_err());
        assert!(parse_lambda("1,2,3").is_err());
        assert!(parse_lambda("nan,1").is_err());
        assert_eq!(parse_preset("F3").unwrap(), Preset::F(3));
        assert!(parse_preset("F6").is_err());
        assert_eq!(parse_preset("N0:2,3").unwrap(), Preset::N0 { m: 2, n: 3 });
        assert_eq!(parse_preset("N1:3").unwrap(), Preset::N1 { n: 3 });
        assert!(parse_preset("N1:1").is_err());
        assert_eq!(
            parse_preset("mcmullen:2,3").unwrap(),
            Preset::McMullen { m: 2, n: 3 }
        );
        assert!(parse_preset("mcmullen:0,3").is_err());
        assert!(parse_preset("z^2").is_err());
        for p in ["F1", "N0:1,2", "N2:4", "mcmullen:4,2"] {
            assert_eq!(parse_preset(p).unwrap().to_string(), p);
        }
    }
}
