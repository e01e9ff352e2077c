use num_bigint::BigInt;

use super::field::{Field, Rat};
use super::ratfun::Qq;

/// Parses an element of Q(q) such as `q^2-1`, `(q+1)/(q^2+3)`, `-q^-1`,
/// `3/4*q` or `(-q)^3`.
pub fn parse_qq(s: &str) -> Result<Qq, String> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("unexpected trailing input in `{s}`"));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().map_err(|e| format!("{e}"))?));
            }
            'q' => out.push(Tok::Q),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(format!("unexpected character `{c}`")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Qq, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Qq, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(&Tok::Slash) {
                let d = self.unary()?;
                acc = acc.div(&d).ok_or("division by zero")?;
            } else if matches!(self.peek(), Some(Tok::Q) | Some(Tok::LParen)) {
                // implicit multiplication: `2q`, `3(q+1)`
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Qq, String> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Qq, String> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let neg = if self.eat(&Tok::Minus) {
                true
            } else {
                self.eat(&Tok::Plus);
                false
            };
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    i64::try_from(n).map_err(|_| "exponent too large".to_string())?
                }
                _ => return Err("expected integer exponent".into()),
            };
            let e = if neg { -e } else { e };
            if base.is_zero() && e < 0 {
                return Err("negative power of zero".into());
            }
            return Ok(base.powi(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Qq, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Qq::rat(Rat::from_big(n, BigInt::from(1))))
            }
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(Qq::q())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err("expected `)`".into());
                }
                Ok(v)
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let q = Qq::q();
        assert_eq!(parse_qq("q^2-1").unwrap(), q.mul(&q).sub(&Qq::one()));
        assert_eq!(parse_qq("-q^-1").unwrap(), q.inv().unwrap().neg());
        assert_eq!(parse_qq("(-q)^3").unwrap(), Qq::neg_q_pow(3));
        assert_eq!(parse_qq("3/4*q").unwrap(), q.mul(&Qq::rat(Rat::new(3, 4))));
        assert_eq!(parse_qq("2q").unwrap(), q.mul(&Qq::int(2)));
        let f = parse_qq("(q+1)/(q^2+3)").unwrap();
        assert_eq!(f.mul(&parse_qq("q^2+3").unwrap()), parse_qq("q+1").unwrap());
        assert!(parse_qq("q+").is_err());
        assert!(parse_qq("1/0").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["q^2-1", "(q+1)/(q^2+3)", "-q^-1", "1/2*q^3 - 5", "(q^2+1)/(2*q)", "0", "-7/3"] {
            let v = parse_qq(s).unwrap();
            assert_eq!(parse_qq(&v.to_string()).unwrap(), v, "{s} -> {v}");
        }
    }
}
