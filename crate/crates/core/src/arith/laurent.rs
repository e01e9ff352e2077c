use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Rat};
use super::poly::Poly;
use super::ratfun::Qq;

/// Finitely supported Laurent polynomial in q with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut l = LaurentQ::zero();
        l.add_term(e, &c);
        l
    }

    pub fn one() -> Self {
        LaurentQ::monomial(Rat::one(), 0)
    }

    pub fn add_term(&mut self, e: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(Rat::zero);
        *v = v.add(c);
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &c.neg());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = LaurentQ::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        r
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentQ { terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect() }
    }

    /// Drops every term of exponent greater than `max`.
    pub fn truncate(&self, max: i64) -> Self {
        LaurentQ { terms: self.terms.range(..=max).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentQ { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn to_qq(&self) -> Qq {
        let Some(lo) = self.min_exponent() else {
            return Qq::zero();
        };
        let hi = self.max_exponent().unwrap();
        let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        Qq::from_poly(Poly::from_coeffs(v)).mul(&Qq::q_pow(lo))
    }

    /// Inverse of `to_qq` when the denominator is a power of q.
    pub fn from_qq(f: &Qq) -> Option<Self> {
        let den = f.den();
        let d = den.degree()?;
        if den.term_count() != 1 {
            return None;
        }
        let mut l = LaurentQ::zero();
        for (i, c) in f.num().coeffs().iter().enumerate() {
            l.add_term(i as i64 - d as i64, c);
        }
        Some(l)
    }
}

/// `[n]_{q^s} = (q^{sn} - q^{-sn}) / (q^s - q^{-s})`.
pub fn quantum_integer(n: i64, s: i64) -> LaurentQ {
    assert!(s > 0, "symmetrizer must be positive");
    let mut l = LaurentQ::zero();
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    for j in 0..m {
        l.add_term(s * (m - 1 - 2 * j), &Rat::from(sign));
    }
    l
}

pub fn quantum_factorial(n: i64) -> LaurentQ {
    (1..=n).fold(LaurentQ::one(), |acc, k| acc.mul(&quantum_integer(k, 1)))
}

/// Quantum binomial coefficient `[n choose r]` as an element of Q(q).
pub fn quantum_binomial(n: i64, r: i64) -> Qq {
    if r < 0 || r > n {
        return Qq::zero();
    }
    let num = quantum_factorial(n).to_qq();
    let den = quantum_factorial(r).mul(&quantum_factorial(n - r)).to_qq();
    num.div(&den).unwrap()
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let a = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(terms: &[(i64, i64)]) -> LaurentQ {
        let mut l = LaurentQ::zero();
        for &(e, c) in terms {
            l.add_term(e, &Rat::from(c));
        }
        l
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(2, 1), lq(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_integer(3, 1), lq(&[(2, 1), (0, 1), (-2, 1)]));
        for s in 1..5 {
            assert_eq!(quantum_integer(1, s), LaurentQ::one());
        }
        assert_eq!(quantum_integer(0, 1), LaurentQ::zero());
        assert_eq!(quantum_integer(-2, 1), lq(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn quantum_integer_matches_quotient() {
        let q = Qq::q();
        for n in -4..6 {
            for s in 1..3 {
                let num = q.powi(s * n).sub(&q.powi(-s * n));
                let den = q.powi(s).sub(&q.powi(-s));
                assert_eq!(quantum_integer(n, s).to_qq(), num.div(&den).unwrap());
            }
        }
    }

    #[test]
    fn binomial_is_laurent() {
        let b = quantum_binomial(3, 1);
        assert_eq!(LaurentQ::from_qq(&b), Some(quantum_integer(3, 1)));
        assert_eq!(quantum_binomial(4, 2), quantum_binomial(4, 2));
        assert!(LaurentQ::from_qq(&quantum_binomial(4, 2)).is_some());
    }
}
