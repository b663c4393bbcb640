//! Polynomial and element expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! `x` is the polynomial variable; any other identifier must name a
//! generator of the coefficient tower. Division is only by nonzero
//! constants. `*` is required between factors.

use galois_kit::{BaseField, Error, Field, Poly, PrimeField, Rational, Rationals, Result, TowerField};

/// A base field given as `"Q"` or `"F<p>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSpec {
    Q,
    Fp(PrimeField),
}

impl BaseSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(BaseSpec::Q);
        }
        let p = t
            .strip_prefix('F')
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| Error::domain(format!("base field `{t}` is neither `Q` nor `F<p>`")))?;
        Ok(BaseSpec::Fp(PrimeField::new(p)?))
    }
}

impl std::fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseSpec::Q => write!(f, "Q"),
            BaseSpec::Fp(fp) => write!(f, "F{}", fp.modulus()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((start, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(syntax(start, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::domain(format!("syntax error at column {}: {msg}", pos + 1))
}

struct Parser<'a, B: BaseField> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: &'a TowerField<B>,
    names: Vec<String>,
}

impl<'a, B: BaseField> Parser<'a, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: Vec<B::Elem>) -> Poly<TowerField<B>> {
        Poly::constant(self.field.clone(), c)
    }

    fn expr(&mut self) -> Result<Poly<TowerField<B>>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<TowerField<B>>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                let den_at = self.offset();
                let den = self.unary()?;
                acc = self.divide(acc, den, at, den_at)?;
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))) {
                return Err(syntax(self.offset(), "expected an operator (write `*` between factors)"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(
        &self,
        num: Poly<TowerField<B>>,
        den: Poly<TowerField<B>>,
        at: usize,
        den_at: usize,
    ) -> Result<Poly<TowerField<B>>> {
        let f = self.field;
        if den.degree().is_some_and(|d| d > 0) {
            return Err(syntax(at, "division is only allowed by constants"));
        }
        if den.is_zero() {
            let literal_zero = matches!(&self.toks[self.pos - 1].1, Tok::Int(s) if s.chars().all(|c| c == '0'));
            return Err(if literal_zero && self.toks[self.pos - 1].0 == den_at {
                Error::domain(format!("zero denominator at column {}", den_at + 1))
            } else {
                Error::domain(format!(
                    "coefficient at column {} is not defined in {}: its denominator vanishes there",
                    den_at + 1,
                    f.base().spec()
                ))
            });
        }
        let inv = f.inv(&den.coeff(0))?;
        Ok(num.scale(&inv))
    }

    fn unary(&mut self) -> Result<Poly<TowerField<B>>> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<TowerField<B>>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let e: u32 = s
                    .parse()
                    .ok()
                    .filter(|&e| e <= 100_000)
                    .ok_or_else(|| syntax(at, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Poly<TowerField<B>>> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let n: galois_kit::Integer = s.parse().map_err(|_| syntax(at, "bad integer"))?;
                let c = self.field.base().from_rational(&Rational::from_integer(n))?;
                Ok(self.constant(self.field.from_base(&c)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "x" {
                    return Ok(Poly::x(self.field.clone()));
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(self.constant(self.field.generator(i + 1))),
                    None => Err(syntax(at, &format!("unknown identifier `{name}`"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => Err(syntax(at, &format!("unexpected `{c}`"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial in `x` whose coefficients may use the generators of
/// `field`.
pub fn parse_over<B: BaseField>(text: &str, field: &TowerField<B>) -> Result<Poly<TowerField<B>>> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        field,
        names: field.generator_names(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial over the base field itself.
pub fn parse_polynomial<B: BaseField>(text: &str, base: &B) -> Result<Poly<B>> {
    let k = TowerField::base_field(base.clone());
    galois_kit::extension::poly_to_base(&parse_over(text, &k)?)
}

/// Parses an element of `field` (an expression without `x`).
pub fn parse_element<B: BaseField>(text: &str, field: &TowerField<B>) -> Result<Vec<B::Elem>> {
    let p = parse_over(text, field)?;
    match p.degree() {
        None => Ok(field.zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Error::domain(format!("`{text}` is a polynomial in x, not a field element"))),
    }
}

pub fn parse_rational_poly(text: &str) -> Result<Poly<Rationals>> {
    parse_polynomial(text, &Rationals)
}
