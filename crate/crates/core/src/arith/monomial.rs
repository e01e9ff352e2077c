use std::fmt;

use super::field::{Field, Rat};
use super::ratfun::Qq;

/// A spectral anchor `c * (-q)^m` with nonzero rational `c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QMono {
    pub c: Rat,
    pub m: i64,
}

impl QMono {
    pub fn new(c: Rat, m: i64) -> Self {
        assert!(!c.is_zero(), "spectral anchor must be nonzero");
        QMono { c, m }
    }

    /// `(-q)^m`
    pub fn neg_q(m: i64) -> Self {
        QMono { c: Rat::one(), m }
    }

    pub fn one() -> Self {
        QMono::neg_q(0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        QMono { c: self.c.mul(&o.c), m: self.m + o.m }
    }

    pub fn inv(&self) -> Self {
        QMono { c: self.c.inv().unwrap(), m: -self.m }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.m == 0
    }

    pub fn to_qq(&self) -> Qq {
        Qq::neg_q_pow(self.m).mul(&Qq::rat(self.c.clone()))
    }
}

impl fmt::Display for QMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = match self.m {
            0 => None,
            1 => Some("(-q)".to_string()),
            m => Some(format!("(-q)^{m}")),
        };
        match (self.c.is_one(), pow) {
            (true, None) => write!(f, "1"),
            (true, Some(p)) => write!(f, "{p}"),
            (false, None) => write!(f, "{}", self.c),
            (false, Some(p)) => write!(f, "{}*{p}", self.c),
        }
    }
}
