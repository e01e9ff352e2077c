//! Polynomials in `x_1..x_n` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Field, Rat};
use crate::quiver::Poly2;

/// Exponent vectors of a fixed length `n` mapped to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl XPoly {
    pub fn zero(n: usize) -> Self {
        XPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = XPoly::zero(n);
        p.add_term(vec![0; n], &c);
        p
    }

    pub fn one(n: usize) -> Self {
        XPoly::constant(n, Rat::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let mut p = XPoly::zero(exps.len());
        p.add_term(exps, &c);
        p
    }

    /// `x_k`, 0-based.
    pub fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        XPoly::monomial(e, Rat::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: &Rat) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), &c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rat::from(-1))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return XPoly::zero(self.n);
        }
        XPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "variable count mismatch");
        let mut r = XPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, &c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(XPoly::one(self.n), |acc, _| acc.mul(self))
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        XPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// Applies the variable permutation `x_p -> x_{perm[p]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut r = XPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.n];
            for (p, &x) in e.iter().enumerate() {
                f[perm[p]] = x;
            }
            r.add_term(f, c);
        }
        r
    }

    /// Swaps `x_a` and `x_b`.
    pub fn swap(&self, a: usize, b: usize) -> Self {
        let mut r = XPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(a, b);
            r.add_term(f, c);
        }
        r
    }

    /// `(s_ab f - f) / (x_a - x_b)`, always a polynomial.
    pub fn divided_difference(&self, a: usize, b: usize) -> Self {
        let mut r = XPoly::zero(self.n);
        for (e, c) in &self.terms {
            let (p, s) = (e[a], e[b]);
            if p == s {
                continue;
            }
            // (x_a^s x_b^p - x_a^p x_b^s)/(x_a - x_b); for p > s this is
            // -x_a^s x_b^s (x_a^{p-s} - x_b^{p-s})/(x_a - x_b)
            let (lo, hi, sign) = if p > s { (s, p, c.neg()) } else { (p, s, c.clone()) };
            for i in 0..hi - lo {
                let mut f = e.clone();
                f[a] = lo + i;
                f[b] = lo + (hi - lo - 1 - i);
                r.add_term(f, &sign);
            }
        }
        r
    }

    /// Exact quotient by `x_a - x_b`; `None` when it does not divide.
    pub fn div_linear(&self, a: usize, b: usize) -> Option<Self> {
        // synthetic division in x_a over the remaining variables
        let mut by_pow: BTreeMap<u32, XPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let p = f[a];
            f[a] = 0;
            by_pow.entry(p).or_insert_with(|| XPoly::zero(self.n)).add_term(f, c);
        }
        let top = match by_pow.keys().next_back() {
            None => return Some(XPoly::zero(self.n)),
            Some(&t) => t,
        };
        let mut xb = vec![0; self.n];
        xb[b] = 1;
        let mut quot = XPoly::zero(self.n);
        let mut carry = XPoly::zero(self.n);
        for p in (0..=top).rev() {
            let cur = by_pow.get(&p).cloned().unwrap_or_else(|| XPoly::zero(self.n)).add(&carry.shift(&xb));
            if p == 0 {
                return if cur.is_zero() { Some(quot) } else { None };
            }
            let mut ea = vec![0; self.n];
            ea[a] = p - 1;
            quot = quot.add(&cur.shift(&ea));
            carry = cur;
        }
        unreachable!()
    }

    /// `f(x_a, x_b)` for a bivariate `f`.
    pub fn from_poly2(n: usize, f: &Poly2, a: usize, b: usize) -> Self {
        let mut r = XPoly::zero(n);
        for (&(i, j), c) in f {
            let mut e = vec![0; n];
            e[a] += i;
            e[b] += j;
            r.add_term(e, c);
        }
        r
    }

    /// Re-embeds into `m` variables placing `x_p` at `x_{p + offset}`.
    pub fn embed(&self, m: usize, offset: usize) -> Self {
        let mut r = XPoly::zero(m);
        for (e, c) in &self.terms {
            let mut f = vec![0; m];
            f[offset..offset + self.n].copy_from_slice(e);
            r.add_term(f, c);
        }
        r
    }

    /// Drops terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        XPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }
}

/// All exponent vectors of length `n` and total degree `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for i in (0..=d).rev() {
            cur.push(i);
            go(n, d - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                .collect();
            let (neg, abs) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
