use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Rat};
use super::monomial::QMono;
use super::poly::Poly;
use super::ratfun::{Named, Qq, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Polynomial in nilpotent variables `x_1..x_n` with `x_k^{N_k} = 0`,
/// coefficients in Q(q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncPoly {
    orders: Vec<usize>,
    terms: BTreeMap<Vec<u32>, Qq>,
}

impl TruncPoly {
    pub fn zero(orders: &[usize]) -> Self {
        TruncPoly { orders: orders.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(orders: &[usize], c: Qq) -> Self {
        let mut t = TruncPoly::zero(orders);
        t.add_term(vec![0; orders.len()], &c);
        t
    }

    /// `x_k` (zero-based index).
    pub fn var(orders: &[usize], k: usize) -> Self {
        let mut e = vec![0; orders.len()];
        e[k] = 1;
        let mut t = TruncPoly::zero(orders);
        t.add_term(e, &Qq::one());
        t
    }

    /// `a * (1 + x_k)`, the local coordinate around the anchor `a`.
    pub fn anchored(orders: &[usize], k: usize, a: &Qq) -> Self {
        TruncPoly::constant(orders, Qq::one()).add(&TruncPoly::var(orders, k)).scale(a)
    }

    fn admissible(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.orders).all(|(&x, &n)| (x as usize) < n)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: &Qq) {
        if c.is_zero() || !self.admissible(&e) {
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

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Qq)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Qq {
        self.terms.get(e).cloned().unwrap_or_else(Qq::zero)
    }

    pub fn constant_term(&self) -> Qq {
        self.coeff(&vec![0; self.orders.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Qq::int(-1)))
    }

    pub fn scale(&self, c: &Qq) -> Self {
        if c.is_zero() {
            return TruncPoly::zero(&self.orders);
        }
        TruncPoly {
            orders: self.orders.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = TruncPoly::zero(&self.orders);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if r.admissible(&e) {
                    r.add_term(e, &c1.mul(c2));
                }
            }
        }
        r
    }

    /// Product with the terms of total degree above `d` dropped.
    pub fn mul_total(&self, o: &Self, d: u32) -> Self {
        let mut r = TruncPoly::zero(&self.orders);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &o.terms {
                if d1 + e2.iter().sum::<u32>() > d {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if r.admissible(&e) {
                    r.add_term(e, &c1.mul(c2));
                }
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncPoly::constant(&self.orders, Qq::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Swaps the variables `a` and `b`; both must have the same order.
    pub fn swap(&self, a: usize, b: usize) -> Self {
        debug_assert_eq!(self.orders[a], self.orders[b]);
        let mut r = TruncPoly::zero(&self.orders);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(a, b);
            r.add_term(f, c);
        }
        r
    }

    /// `(s_ab f - f) / (x_a - x_b)`
    pub fn divided_difference(&self, a: usize, b: usize) -> Self {
        let mut r = TruncPoly::zero(&self.orders);
        for (e, c) in &self.terms {
            let (p, s) = (e[a], e[b]);
            if p == s {
                continue;
            }
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

    /// Drops the terms of total degree above `d`.
    pub fn truncate_total(&self, d: u32) -> Self {
        TruncPoly {
            orders: self.orders.clone(),
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() <= d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Re-embeds into variables with `orders`, sending variable `k` to `slots[k]`.
    pub fn embed(&self, orders: &[usize], slots: &[usize]) -> Self {
        let mut r = TruncPoly::zero(orders);
        for (e, c) in &self.terms {
            let mut f = vec![0; orders.len()];
            for (k, &x) in e.iter().enumerate() {
                f[slots[k]] += x;
            }
            r.add_term(f, c);
        }
        r
    }

    /// Inverse by a finite geometric series; `None` if the constant term is zero.
    pub fn inv(&self) -> Option<Self> {
        let c0 = self.constant_term();
        let c0i = c0.inv()?;
        let one = TruncPoly::constant(&self.orders, Qq::one());
        let u = self.scale(&c0i).sub(&one);
        let mut acc = one.clone();
        let mut term = one;
        let neg_u = u.scale(&Qq::int(-1));
        loop {
            term = term.mul(&neg_u);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Some(acc.scale(&c0i))
    }

    /// Substitutes commuting nilpotent matrices for the variables.
    pub fn eval_on(&self, xs: &[&Matrix<Qq>]) -> Matrix<Qq> {
        let d = xs.first().map(|m| m.rows()).unwrap_or(0);
        let mut powers: Vec<Vec<Matrix<Qq>>> = Vec::with_capacity(xs.len());
        for (k, x) in xs.iter().enumerate() {
            let mut p = vec![Matrix::identity(d)];
            for _ in 1..self.orders[k] {
                let next = p.last().unwrap().mul(x);
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = Matrix::zeros(d, d);
        for (e, c) in &self.terms {
            let mut m = Matrix::identity(d);
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    m = m.mul(&powers[k][ek as usize]);
                }
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, &ek) in e.iter().enumerate() {
                match ek {
                    0 => {}
                    1 => write!(f, "*x{}", k + 1)?,
                    _ => write!(f, "*x{}^{ek}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Tower levels that can be expanded around an anchor point.
///
/// The base Q(q) has no spectral variables; each `RatFunc` layer above it adds
/// the next variable `X_k`.
pub trait TruncEval: Field {
    fn nvars() -> usize;
    fn trunc_eval_at(&self, coords: &[TruncPoly], orders: &[usize]) -> Result<TruncPoly>;
}

impl TruncEval for Qq {
    fn nvars() -> usize {
        0
    }
    fn trunc_eval_at(&self, _coords: &[TruncPoly], orders: &[usize]) -> Result<TruncPoly> {
        Ok(TruncPoly::constant(orders, self.clone()))
    }
}

impl<F: TruncEval> TruncEval for RatFunc<F> {
    fn nvars() -> usize {
        F::nvars() + 1
    }
    fn trunc_eval_at(&self, coords: &[TruncPoly], orders: &[usize]) -> Result<TruncPoly> {
        let k = F::nvars();
        // clear inner denominators so that no spurious inner pole is hit
        let all: Vec<&F> = self.num().coeffs().iter().chain(self.den().coeffs()).collect();
        let l = F::den_lcm(&all);
        let horner = |p: &Poly<F>| -> Result<TruncPoly> {
            let mut acc = TruncPoly::zero(orders);
            for c in p.coeffs().iter().rev() {
                let ce = c.mul(&l).trunc_eval_at(coords, orders)?;
                acc = acc.mul(&coords[k]).add(&ce);
            }
            Ok(acc)
        };
        let n = horner(self.num())?;
        let d = horner(self.den())?;
        let di = d.inv().ok_or_else(|| {
            let mut names = vec!["q".to_string()];
            names.extend((1..=Self::nvars()).map(|i| format!("X{i}")));
            let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            Error::Pole {
                var: format!("X{}", k + 1),
                factor: Named(self.den(), &names).to_string(),
            }
        })?;
        Ok(n.mul(&di))
    }
}

impl<F: Field> fmt::Display for Named<'_, Poly<F>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(self.1, f)
    }
}

/// Taylor expansion of `f` at `X_k = a_k (1 + x_k)`, truncated to `x_k^{N_k}`.
pub fn trunc_eval<T: TruncEval>(f: &T, anchors: &[QMono], orders: &[usize]) -> Result<TruncPoly> {
    if anchors.len() != T::nvars() || orders.len() != T::nvars() {
        return Err(Error::Incompatible(format!(
            "expected {} anchors and orders, got {} and {}",
            T::nvars(),
            anchors.len(),
            orders.len()
        )));
    }
    let coords: Vec<TruncPoly> = anchors
        .iter()
        .enumerate()
        .map(|(k, a)| TruncPoly::anchored(orders, k, &a.to_qq()))
        .collect();
    f.trunc_eval_at(&coords, orders)
}

/// Evaluates a function of one variable at a truncated polynomial argument.
pub fn compose(f: &RatFunc<Qq>, t: &TruncPoly) -> Result<TruncPoly> {
    let orders = t.orders().to_vec();
    let horner = |p: &Poly<Qq>| {
        let mut acc = TruncPoly::zero(&orders);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(t).add(&TruncPoly::constant(&orders, c.clone()));
        }
        acc
    };
    let d = horner(f.den());
    let di = d.inv().ok_or_else(|| Error::Pole {
        var: "z".into(),
        factor: format!("{}", Named(f.den(), &["q", "z"])),
    })?;
    Ok(horner(f.num()).mul(&di))
}

/// Convenience for tests: an exact rational as a Q(q) constant.
pub fn qq_rat(n: i64, d: i64) -> Qq {
    Qq::rat(Rat::new(n, d))
}
