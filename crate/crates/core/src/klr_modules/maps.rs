//! Homomorphisms, submodules, quotients and short exact sequences.

use super::{convolution, one_dim_module, FDModule};
use crate::affine_rep::{intertwiners, RelationReport, WeightVec};
use crate::arith::{Field, Qq};
use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, Echelon, Matrix};
use crate::quiver::KlrParams;

/// A homogeneous module map `source -> q^{-shift}target`, i.e. raising
/// degrees by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Matrix<Qq>,
    pub shift: i64,
}

impl ModuleMap {
    /// Rejects matrices that mix idempotents, break homogeneity or fail to
    /// intertwine a generator.
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix<Qq>, shift: i64) -> Result<Self> {
        if source.params != target.params || source.n != target.n {
            return Err(Error::Incompatible("map between modules over different algebras".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Incompatible(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for (r, c, _) in matrix.entries() {
            if source.colors[c] != target.colors[r] {
                return Err(Error::NotHomomorphism(format!("entry ({r}, {c}) mixes idempotents")));
            }
            if target.degrees[r] != source.degrees[c] + shift {
                return Err(Error::NotHomomorphism(format!("entry ({r}, {c}) is not of degree {shift}")));
            }
        }
        for (k, (a, b)) in source.x.iter().zip(&target.x).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotHomomorphism(format!("does not commute with x{}", k + 1)));
            }
        }
        for (k, (a, b)) in source.tau.iter().zip(&target.tau).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotHomomorphism(format!("does not commute with t{}", k + 1)));
            }
        }
        Ok(ModuleMap { source, target, matrix, shift })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::Incompatible("composing maps with mismatched modules".into()));
        }
        Ok(ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
            shift: self.shift + first.shift,
        })
    }
}

fn grading_keys(m: &FDModule, shift: i64) -> Vec<WeightVec> {
    m.colors
        .iter()
        .zip(&m.degrees)
        .map(|(c, d)| WeightVec(c.iter().map(|&i| i as i64).chain(std::iter::once(d + shift)).collect()))
        .collect()
}

/// Basis of homogeneous module maps `a -> b` raising degrees by `shift`.
pub fn hom_basis(a: &FDModule, b: &FDModule, shift: i64) -> Vec<Matrix<Qq>> {
    let gens: Vec<(&Matrix<Qq>, &Matrix<Qq>)> = a.x.iter().zip(&b.x).chain(a.tau.iter().zip(&b.tau)).collect();
    intertwiners(&grading_keys(a, shift), &grading_keys(b, 0), &gens)
}

fn homogeneous_key(m: &FDModule, v: &[Qq]) -> Option<(Vec<usize>, i64)> {
    let mut key = None;
    for (b, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = (m.colors[b].clone(), m.degrees[b]);
        match &key {
            None => key = Some(k),
            Some(prev) if *prev != k => return None,
            _ => {}
        }
    }
    key
}

/// The submodule spanned by homogeneous vectors, with its inclusion.
pub fn submodule(m: &FDModule, vectors: &[Vec<Qq>]) -> Result<(FDModule, ModuleMap)> {
    let mut ech = Echelon::<Qq>::new(m.dim());
    let mut basis: Vec<Vec<Qq>> = Vec::new();
    let mut keys = Vec::new();
    for v in vectors {
        let key = homogeneous_key(m, v).ok_or_else(|| Error::Rejected("spanning vector is not homogeneous".into()))?;
        if ech.insert(dense_to_sparse(v)) {
            basis.push(v.clone());
            keys.push(key);
        }
    }
    let b = Matrix::from_columns(m.dim(), &basis);
    let s = basis.len();
    // rows on which b is invertible
    let mut rows = Vec::new();
    let mut probe = Echelon::<Qq>::new(s);
    for r in 0..m.dim() {
        if probe.insert(dense_to_sparse(b.row(r))) {
            rows.push(r);
        }
    }
    let all: Vec<usize> = (0..s).collect();
    let binv = b.select(&rows, &all).inverse().expect("rows chosen independent");
    let restrict = |a: &Matrix<Qq>, what: String| -> Result<Matrix<Qq>> {
        let ab = a.mul(&b);
        let c = binv.mul(&ab.select(&rows, &all));
        if b.mul(&c) != ab {
            return Err(Error::Rejected(format!("span is not stable under {what}")));
        }
        Ok(c)
    };
    let x = m.x.iter().enumerate().map(|(k, a)| restrict(a, format!("x{}", k + 1))).collect::<Result<Vec<_>>>()?;
    let tau = m.tau.iter().enumerate().map(|(k, a)| restrict(a, format!("t{}", k + 1))).collect::<Result<Vec<_>>>()?;
    let (colors, degrees) = keys.into_iter().unzip();
    let sub = FDModule::new(m.params.clone(), m.n, colors, degrees, x, tau)?;
    let inc = ModuleMap::new(sub.clone(), m.clone(), b, 0)?;
    Ok((sub, inc))
}

/// `M / span(vectors)` with its projection; the span must be a submodule.
pub fn quotient(m: &FDModule, vectors: &[Vec<Qq>]) -> Result<(FDModule, ModuleMap)> {
    submodule(m, vectors)?;
    let mut ech = Echelon::<Qq>::new(m.dim());
    for v in vectors {
        ech.insert(dense_to_sparse(v));
    }
    let keep = ech.non_pivots();
    let project = |v: Vec<Qq>| -> Vec<Qq> {
        let r = ech.reduce(dense_to_sparse(&v));
        keep.iter().map(|c| r.get(c).cloned().unwrap_or_else(Qq::zero)).collect()
    };
    let unit = |c: usize| -> Vec<Qq> { (0..m.dim()).map(|r| if r == c { Qq::one() } else { Qq::zero() }).collect() };
    let induced = |a: &Matrix<Qq>| -> Matrix<Qq> {
        let cols: Vec<Vec<Qq>> = keep.iter().map(|&c| project(a.column(c))).collect();
        Matrix::from_columns(keep.len(), &cols)
    };
    let x = m.x.iter().map(induced).collect();
    let tau = m.tau.iter().map(induced).collect();
    let colors = keep.iter().map(|&c| m.colors[c].clone()).collect();
    let degrees = keep.iter().map(|&c| m.degrees[c]).collect();
    let quo = FDModule::new(m.params.clone(), m.n, colors, degrees, x, tau)?;
    let proj_cols: Vec<Vec<Qq>> = (0..m.dim()).map(|c| project(unit(c))).collect();
    let proj = ModuleMap::new(m.clone(), quo.clone(), Matrix::from_columns(keep.len(), &proj_cols), 0)?;
    Ok((quo, proj))
}

/// `0 -> sub -> mid -> quot -> 0` with explicit maps.
#[derive(Clone, Debug)]
pub struct SesWitness {
    pub sub: FDModule,
    pub mid: FDModule,
    pub quot: FDModule,
    pub inj: ModuleMap,
    pub surj: ModuleMap,
}

impl SesWitness {
    /// Composite zero, injectivity, surjectivity and dimension additivity.
    pub fn verify(&self) -> RelationReport {
        let mut rep = RelationReport::default();
        rep.record(self.surj.matrix.mul(&self.inj.matrix).is_zero(), || "composite is nonzero".into());
        rep.record(self.inj.rank() == self.sub.dim(), || "first map is not injective".into());
        rep.record(self.surj.rank() == self.quot.dim(), || "second map is not surjective".into());
        rep.record(self.sub.dim() + self.quot.dim() == self.mid.dim(), || "dimensions are not additive".into());
        rep
    }
}

#[derive(Clone, Debug)]
pub enum SesFamily {
    /// `0 -> S -> L(i) o L(j) -> Q -> 0` with `S` the image of `tau_1`, for
    /// vertices joined by an arrow.
    Adjacent { params: KlrParams, i: usize, j: usize },
    /// `0 -> A -> A + B -> B -> 0`
    Split { a: FDModule, b: FDModule },
}

pub fn build_ses(family: &SesFamily) -> Result<SesWitness> {
    match family {
        SesFamily::Adjacent { params, i, j } => {
            let (i, j) = (*i, *j);
            if i == j || params.cartan(i, j) == 0 {
                return Err(Error::Incompatible(format!("vertices {i} and {j} are not joined by an arrow")));
            }
            let li = one_dim_module(params, &[i])?;
            let lj = one_dim_module(params, &[j])?;
            let mid = convolution(&li, &lj)?;
            let t = &mid.tau[0];
            let image: Vec<Vec<Qq>> = (0..mid.dim()).map(|c| t.column(c)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
            let (sub, inj) = submodule(&mid, &image)?;
            let (quot, surj) = quotient(&mid, &image)?;
            Ok(SesWitness { sub, mid, quot, inj, surj })
        }
        SesFamily::Split { a, b } => {
            let mid = a.direct_sum(b)?;
            let (da, db) = (a.dim(), b.dim());
            let inj = Matrix::from_fn(da + db, da, |r, c| if r == c { Qq::one() } else { Qq::zero() });
            let surj = Matrix::from_fn(db, da + db, |r, c| if c == da + r { Qq::one() } else { Qq::zero() });
            Ok(SesWitness {
                inj: ModuleMap::new(a.clone(), mid.clone(), inj, 0)?,
                surj: ModuleMap::new(mid.clone(), b.clone(), surj, 0)?,
                sub: a.clone(),
                quot: b.clone(),
                mid,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> KlrParams {
        KlrParams::from_arrows(vec![vec![0, 1], vec![0, 0]])
    }

    #[test]
    fn adjacent_ses() {
        let w = build_ses(&SesFamily::Adjacent { params: a2(), i: 0, j: 1 }).unwrap();
        assert_eq!((w.sub.dim(), w.mid.dim(), w.quot.dim()), (1, 2, 1));
        assert!(w.verify().is_clean(), "{}", w.verify());
        assert_eq!(w.sub.colors, vec![vec![1, 0]]);
        assert_eq!(w.quot.colors, vec![vec![0, 1]]);
    }

    #[test]
    fn split_ses() {
        let p = a2();
        let a = one_dim_module(&p, &[0, 1]).unwrap();
        let b = one_dim_module(&p, &[1, 0]).unwrap().grade_shift(2);
        let w = build_ses(&SesFamily::Split { a, b }).unwrap();
        assert!(w.verify().is_clean());
    }

    #[test]
    fn non_intertwining_map_rejected() {
        let w = build_ses(&SesFamily::Adjacent { params: a2(), i: 0, j: 1 }).unwrap();
        // projection of L(i) o L(j) onto the tau_1 (x) m coordinate
        let m = &w.mid;
        let b = (0..m.dim()).find(|&b| m.colors[b] == vec![1, 0]).unwrap();
        let p = Matrix::from_fn(1, m.dim(), |_, c| if c == b { Qq::one() } else { Qq::zero() });
        let err = ModuleMap::new(m.clone(), w.sub.clone(), p, 0).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism(ref s) if s.contains("t1")), "{err}");
    }

    #[test]
    fn non_adjacent_rejected() {
        let p = KlrParams::from_arrows(vec![vec![0, 0], vec![0, 0]]);
        assert!(build_ses(&SesFamily::Adjacent { params: p, i: 0, j: 1 }).is_err());
    }

    #[test]
    fn hom_spaces() {
        let p = a2();
        let m = convolution(&one_dim_module(&p, &[0]).unwrap(), &one_dim_module(&p, &[1]).unwrap()).unwrap();
        assert_eq!(hom_basis(&m, &m, 0).len(), 1);
        let shifted = m.grade_shift(1);
        assert_eq!(hom_basis(&m, &shifted, 1).len(), 1);
        assert_eq!(hom_basis(&m, &shifted, 0).len(), 0);
    }
}
