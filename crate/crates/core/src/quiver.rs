//! Pole quiver of a finite set of spectral indices and its KLR parameters.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Field, QMono, Rat};
use crate::error::{Error, Result};
use crate::rmatrix::{denominator, DenominatorPoly};

/// A fundamental module index together with its spectral anchor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpectralIndex {
    pub s: usize,
    pub x: QMono,
}

impl SpectralIndex {
    pub fn new(s: usize, x: QMono) -> Self {
        SpectralIndex { s, x }
    }
}

impl fmt::Display for SpectralIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub n: usize,
    pub vertices: Vec<SpectralIndex>,
    /// `d[i][j]`: number of arrows `i -> j`.
    pub d: Vec<Vec<usize>>,
    /// Pairs skipped because their rational prefactors differ.
    pub notes: Vec<String>,
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Violations of "no loops, no 2-cycles".
    pub fn defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.d[i][i] > 0 {
                out.push(format!("loop at {}", self.vertices[i]));
            }
            for j in i + 1..self.len() {
                if self.d[i][j] > 0 && self.d[j][i] > 0 {
                    out.push(format!("2-cycle between {} and {}", self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    pub fn arrows(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.d[i][j] > 0 {
                    out.push((i, j, self.d[i][j]));
                }
            }
        }
        out
    }
}

/// Builds the quiver with denominators supplied by `denom(k, l)`.
///
/// The arrow count `d_ij` is the order of vanishing of `d_{S(i),S(j)}(z)` at
/// `z = X(j)/X(i)`, matching the R-matrix variable `z = z_2/z_1`.
pub fn build_quiver_with(
    index: &[SpectralIndex],
    n: usize,
    mut denom: impl FnMut(usize, usize) -> Result<DenominatorPoly>,
) -> Result<Quiver> {
    for (a, i) in index.iter().enumerate() {
        if i.s == 0 || i.s >= n {
            return Err(Error::OutOfRange(format!("fundamental index {} for N = {n}", i.s)));
        }
        if index[..a].contains(i) {
            return Err(Error::Incompatible(format!("duplicate spectral index {i}")));
        }
    }
    let m = index.len();
    let mut d = vec![vec![0; m]; m];
    let mut notes = Vec::new();
    let mut memo: BTreeMap<(usize, usize), DenominatorPoly> = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let ratio = index[j].x.div(&index[i].x);
            if !ratio.c.is_one() {
                if i < j {
                    notes.push(format!(
                        "anchors of {} and {} differ by the prefactor {}: no arrows",
                        index[i], index[j], ratio.c
                    ));
                }
                continue;
            }
            let key = (index[i].s, index[j].s);
            if !memo.contains_key(&key) {
                memo.insert(key, denom(key.0, key.1)?);
            }
            d[i][j] = memo[&key].order_at(&ratio);
        }
    }
    Ok(Quiver { n, vertices: index.to_vec(), d, notes })
}

pub fn build_quiver(index: &[SpectralIndex], n: usize) -> Result<Quiver> {
    build_quiver_with(index, n, |k, l| denominator(k, l, n))
}

/// Bivariate polynomial `sum c (u^a v^b)` with rational coefficients.
pub type Poly2 = BTreeMap<(u32, u32), Rat>;

/// Symmetric Cartan datum and parameter polynomials of the KLR algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlrParams {
    pub d: Vec<Vec<usize>>,
    /// Leading coefficient `t_ij` of `Q_ij`; one unless overridden.
    pub t: BTreeMap<(usize, usize), Rat>,
}

impl KlrParams {
    pub fn from_arrows(d: Vec<Vec<usize>>) -> Self {
        KlrParams { d, t: BTreeMap::new() }
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        KlrParams::from_arrows(q.d.clone())
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `a_ij = 2 delta_ij - d_ij - d_ji`
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            -((self.d[i][j] + self.d[j][i]) as i64)
        }
    }

    /// `Q_ij(u, v) = t_ij P_ij(u, v) P_ji(v, u)` with `P_ij(u, v) = (v - u)^{d_ij}`.
    pub fn q_poly(&self, i: usize, j: usize) -> Poly2 {
        if i == j {
            return Poly2::new();
        }
        let t = self.t.get(&(i, j)).cloned().unwrap_or_else(Rat::one);
        // (v - u)^a (u - v)^b = (-1)^b (v - u)^{a+b}
        let a = self.d[i][j] as u32;
        let b = self.d[j][i] as u32;
        let m = a + b;
        let sign = if b % 2 == 1 { -1 } else { 1 };
        let mut out = Poly2::new();
        for r in 0..=m {
            // binomial(m, r) v^r (-u)^{m-r}
            let c = binomial(m, r) * if (m - r) % 2 == 1 { -sign } else { sign };
            let c = t.mul(&Rat::from(c));
            if !c.is_zero() {
                out.insert((m - r, r), c);
            }
        }
        out
    }

    /// `P_ij(u, v) = (v - u)^{d_ij}` as its exponent.
    pub fn p_exponent(&self, i: usize, j: usize) -> usize {
        self.d[i][j]
    }

    /// Sets `t_ij = t_ji = t`; used to build negative controls.
    pub fn with_q_coefficient(mut self, i: usize, j: usize, t: Rat) -> Self {
        self.t.insert((i, j), t.clone());
        self.t.insert((j, i), t);
        self
    }
}

fn binomial(n: u32, r: u32) -> i64 {
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentType {
    A(usize),
    D(usize),
    E(usize),
    Other,
}

impl ComponentType {
    pub fn is_ade(&self) -> bool {
        !matches!(self, ComponentType::Other)
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentType::A(n) => write!(f, "A_{n}"),
            ComponentType::D(n) => write!(f, "D_{n}"),
            ComponentType::E(n) => write!(f, "E_{n}"),
            ComponentType::Other => write!(f, "other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTag {
    /// Vertex lists and types of the connected components.
    pub components: Vec<(Vec<usize>, ComponentType)>,
}

impl TypeTag {
    pub fn is_ade(&self) -> bool {
        self.components.iter().all(|(_, t)| t.is_ade())
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|(_, t)| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn classify(vertices: &[usize], adj: &[Vec<usize>], mult: &dyn Fn(usize, usize) -> usize) -> ComponentType {
    let nv = vertices.len();
    let mut edges = 0;
    for &v in vertices {
        for &w in &adj[v] {
            if v < w {
                if mult(v, w) >= 2 {
                    return ComponentType::Other;
                }
                edges += 1;
            }
        }
    }
    if edges + 1 != nv {
        return ComponentType::Other;
    }
    let branch: Vec<usize> = vertices.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => ComponentType::A(nv),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, x] => ComponentType::D(x + 3),
                [1, 2, 2] => ComponentType::E(6),
                [1, 2, 3] => ComponentType::E(7),
                [1, 2, 4] => ComponentType::E(8),
                _ => ComponentType::Other,
            }
        }
        _ => ComponentType::Other,
    }
}

/// KLR parameters and the Dynkin type of each connected component of the
/// underlying unoriented graph.
pub fn cartan_and_type(q: &Quiver) -> (KlrParams, TypeTag) {
    let params = KlrParams::from_quiver(q);
    (params.clone(), type_of(&params.d))
}

pub fn type_of(d: &[Vec<usize>]) -> TypeTag {
    let m = d.len();
    let mult = |i: usize, j: usize| d[i][j] + d[j][i];
    let adj: Vec<Vec<usize>> = (0..m).map(|i| (0..m).filter(|&j| j != i && mult(i, j) > 0).collect()).collect();
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        let t = classify(&comp, &adj, &mult);
        components.push((comp, t));
    }
    TypeTag { components }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: usize, m: i64) -> SpectralIndex {
        SpectralIndex::new(s, QMono::neg_q(m))
    }

    #[test]
    fn single_vertex() {
        let q = build_quiver(&[idx(1, 0)], 2).unwrap();
        assert_eq!(q.d, vec![vec![0]]);
        assert!(q.defects().is_empty());
    }

    #[test]
    fn adjacent_pair_has_one_arrow() {
        let q = build_quiver(&[idx(1, 0), idx(1, 2)], 2).unwrap();
        let sym = q.d[0][1] + q.d[1][0];
        assert_eq!(sym, 1);
        assert_eq!(q.d[0][0] + q.d[1][1], 0);
        let (p, t) = cartan_and_type(&q);
        assert_eq!([p.cartan(0, 0), p.cartan(0, 1), p.cartan(1, 0), p.cartan(1, 1)], [2, -1, -1, 2]);
        assert_eq!(t.to_string(), "A_2");
    }

    #[test]
    fn distant_pair_has_no_arrow() {
        let q = build_quiver(&[idx(1, 0), idx(1, 4)], 2).unwrap();
        assert!(q.arrows().is_empty());
        assert_eq!(type_of(&q.d).to_string(), "A_1 + A_1");
    }

    #[test]
    fn prefactor_mismatch_is_logged() {
        let a = SpectralIndex::new(1, QMono::one());
        let b = SpectralIndex::new(1, QMono::new(Rat::from(3), 2));
        let q = build_quiver(&[a, b], 2).unwrap();
        assert!(q.arrows().is_empty());
        assert_eq!(q.notes.len(), 1);
    }

    #[test]
    fn duplicate_indices_rejected() {
        assert!(build_quiver(&[idx(1, 0), idx(1, 0)], 2).is_err());
    }

    #[test]
    fn classification() {
        let star = vec![vec![0, 1, 1, 1], vec![0; 4], vec![0; 4], vec![0; 4]];
        assert_eq!(type_of(&star).to_string(), "D_4");
        let double = vec![vec![0, 2], vec![0, 0]];
        assert_eq!(type_of(&double).to_string(), "other");
        let mut e6 = vec![vec![0; 6]; 6];
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)] {
            e6[a][b] = 1;
        }
        assert_eq!(type_of(&e6).to_string(), "E_6");
        let mut cyc = vec![vec![0; 3]; 3];
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            cyc[a][b] = 1;
        }
        assert_eq!(type_of(&cyc).to_string(), "other");
    }

    #[test]
    fn q_polynomials() {
        let p = KlrParams::from_arrows(vec![vec![0, 1], vec![0, 0]]);
        // Q_01(u, v) = (v - u), Q_10(u, v) = (u - v)
        assert_eq!(p.q_poly(0, 1), Poly2::from([((1, 0), Rat::from(-1)), ((0, 1), Rat::from(1))]));
        assert_eq!(p.q_poly(1, 0), Poly2::from([((1, 0), Rat::from(1)), ((0, 1), Rat::from(-1))]));
        assert!(p.q_poly(0, 0).is_empty());
        let none = KlrParams::from_arrows(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(none.q_poly(0, 1), Poly2::from([((0, 0), Rat::from(1))]));
    }
}
