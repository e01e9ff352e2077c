use std::fmt;

use super::field::{Field, Rat};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced fraction of univariate polynomials over `F` with a monic
/// denominator. Nesting gives the rational function fields in several
/// variables: `RatFunc<Rat>` is Q(q), `RatFunc<RatFunc<Rat>>` is Q(q)(z).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

/// Q(q)
pub type Qq = RatFunc<Rat>;
/// Q(q)(z)
pub type Qqz = RatFunc<Qq>;
/// Q(q)(z)(w)
pub type Qqzw = RatFunc<Qqz>;

/// Fields that contain Q(q).
pub trait QField: Field + fmt::Display {
    fn from_qq(c: &Qq) -> Self;

    fn q() -> Self {
        Self::from_qq(&Qq::var())
    }

    fn from_rat(c: &Rat) -> Self {
        Self::from_qq(&Qq::constant(c.clone()))
    }
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        if den.is_constant() {
            let c = den.coeff(0).inv().expect("nonzero constant");
            return RatFunc { num: num.scale(&c), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: Poly<F>, den: Poly<F>) -> Self {
        let l = den.lead().expect("nonzero denominator").clone();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let li = l.inv().unwrap();
            RatFunc { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable of this level.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<F> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at `x`, or `None` if the denominator vanishes there.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).mul(&d.inv().unwrap()))
    }

    /// `f(1/var)`.
    pub fn subs_inverse_var(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        let shift = dd - dn;
        if shift > 0 {
            num = num.mul(&Poly::monomial(F::one(), shift as usize));
        } else if shift < 0 {
            den = den.mul(&Poly::monomial(F::one(), (-shift) as usize));
        }
        Self::reduce(num, den)
    }

    /// Signed multiplicity of `var - point` in the denominator: positive for a
    /// pole of that order, negative for a zero.
    pub fn pole_order(&self, point: &F) -> Result<i64> {
        if self.num.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let d = self.den.root_multiplicity(point) as i64;
        let n = self.num.root_multiplicity(point) as i64;
        Ok(d - n)
    }

    /// Multiplies by `(var - point)^k` for any integer `k`.
    pub fn times_linear_power(&self, point: &F, k: i64) -> Self {
        let lin = Poly::linear_root(point);
        if k >= 0 {
            Self::reduce(self.num.mul(&lin.pow(k as u32)), self.den.clone())
        } else {
            Self::reduce(self.num.clone(), self.den.mul(&lin.pow((-k) as u32)))
        }
    }

    pub fn scale_coeffs(&self, c: &F) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFunc { num: n, den: Poly::one() };
            }
            return Self::reduce(n, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let d = self.den.mul(&o.den);
            // coprime denominators: only factors of d can cancel, and none do
            if n.is_zero() {
                return Self::zero();
            }
            return RatFunc { num: n, den: d };
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let n = self.num.mul(&d2).add(&o.num.mul(&d1));
        if n.is_zero() {
            return Self::zero();
        }
        let h = n.gcd(&g);
        let (n, gg) = if h.is_one() {
            (n, g)
        } else {
            (n.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Self::make_monic(n, d1.mul(&d2).mul(&gg))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::make_monic(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::make_monic(self.den.clone(), self.num.clone()))
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
    fn depth() -> usize {
        F::depth() + 1
    }
    fn den_lcm(items: &[&Self]) -> Self {
        let mut l = Poly::one();
        for it in items {
            if !it.den.is_one() {
                l = l.lcm(&it.den);
            }
        }
        Self::from_poly(l)
    }
    fn is_rational_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant() && self.num.coeff(0).is_rational_constant()
    }
    fn has_negative_sign(&self) -> bool {
        self.den.is_one() && self.num.term_count() == 1 && self.num.lead().unwrap().has_negative_sign()
    }
    fn write_with(&self, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.write_with(names, f);
        }
        let paren_num = self.num.term_count() > 1
            || self.num.lead().is_some_and(|c| c.is_compound());
        if paren_num {
            write!(f, "(")?;
            self.num.write_with(names, f)?;
            write!(f, ")")?;
        } else {
            self.num.write_with(names, f)?;
        }
        write!(f, "/")?;
        let paren_den = self.den.term_count() > 1 || !self.den.lead().is_some_and(|c| c.is_one());
        if paren_den {
            write!(f, "(")?;
            self.den.write_with(names, f)?;
            write!(f, ")")
        } else {
            self.den.write_with(names, f)
        }
    }
    fn is_compound(&self) -> bool {
        if !self.den.is_one() || self.num.term_count() > 1 {
            return true;
        }
        match self.num.lead() {
            None => false,
            Some(c) => c.is_compound() || c.has_negative_sign(),
        }
    }
}

pub const DEFAULT_NAMES: [&str; 6] = ["q", "z", "w", "v", "u", "t"];

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(&DEFAULT_NAMES, f)
    }
}

/// Display adapter with explicit variable names, innermost first.
pub struct Named<'a, T>(pub &'a T, pub &'a [&'a str]);

impl<F: Field> fmt::Display for Named<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with(self.1, f)
    }
}

impl QField for Qq {
    fn from_qq(c: &Qq) -> Self {
        c.clone()
    }
}

impl<F: QField> QField for RatFunc<F> {
    fn from_qq(c: &Qq) -> Self {
        RatFunc::constant(F::from_qq(c))
    }
}

impl Qq {
    pub fn q() -> Qq {
        Qq::var()
    }

    pub fn rat(c: Rat) -> Qq {
        Qq::constant(c)
    }

    pub fn int(n: i64) -> Qq {
        Qq::constant(Rat::from(n))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Qq {
        if e >= 0 {
            Qq::from_poly(Poly::monomial(Rat::from(1), e as usize))
        } else {
            RatFunc { num: Poly::one(), den: Poly::monomial(Rat::from(1), (-e) as usize) }
        }
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64) -> Qq {
        let p = Qq::q_pow(e);
        if e.rem_euclid(2) == 1 {
            p.neg()
        } else {
            p
        }
    }
}

impl Qqz {
    /// Evaluates a function of the spectral variable at an element of any
    /// field containing Q(q).
    pub fn eval_into<K: QField>(&self, at: &K) -> Option<K> {
        let horner = |p: &Poly<Qq>| {
            p.eval_with(at, K::zero(), K::from_qq, |a, b| a.add(b), |a, b| a.mul(b))
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(horner(&self.num).mul(&d.inv().unwrap()))
    }
}

macro_rules! impl_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                Field::add(self, o)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                Field::sub(self, o)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                Field::mul(self, o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                Field::neg(self)
            }
        }
    };
}

impl_ops!(Rat);
impl<F: Field> std::ops::Add<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, o: &RatFunc<F>) -> RatFunc<F> {
        Field::add(self, o)
    }
}
impl<F: Field> std::ops::Sub<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, o: &RatFunc<F>) -> RatFunc<F> {
        Field::sub(self, o)
    }
}
impl<F: Field> std::ops::Mul<&RatFunc<F>> for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, o: &RatFunc<F>) -> RatFunc<F> {
        Field::mul(self, o)
    }
}
impl<F: Field> std::ops::Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        Field::neg(self)
    }
}
