//! A finite sub-DGC `C''` of `C_*(L)` carrying all of its homology.
//!
//! Below the top degree `C''` is all of `C_*(L)`. In the top degree it is
//! the span of chosen homology representatives plus a complement of the
//! cycles. Each degree carries an adapted basis `a_k, b_k = d a_k, c_j`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ChainCoalgebra;
use crate::algebra::cdga::DegreeBasis;
use crate::algebra::linalg::{Echelon, SparseVec};
use crate::algebra::poly::{Monomial, Polynomial};
use crate::algebra::rational::Q;
use crate::error::{internal, invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdaptedKind {
    /// `a_k`, mapped injectively by `d`.
    Free,
    /// `b_k = d a_k`, with `a_k` the given element one degree up.
    Boundary(usize),
    /// `c_j`, a homology representative.
    Cycle(usize),
}

#[derive(Clone, Debug)]
struct AdaptedDegree {
    elements: Vec<Polynomial>,
    kinds: Vec<AdaptedKind>,
    words: DegreeBasis,
    span: Echelon,
}

#[derive(Clone, Debug)]
pub struct FiniteChains {
    chains: ChainCoalgebra,
    top: i32,
    degrees: BTreeMap<i32, AdaptedDegree>,
}

impl FiniteChains {
    /// Builds `C''` in degrees `1..=top`. `preferred` cycles lead the
    /// homology representatives of their degree, in the given order.
    pub fn new(chains: ChainCoalgebra, top: i32, preferred: &[Polynomial]) -> Result<Self> {
        Self::with_free(chains, top, preferred, &[])
    }

    /// As [`FiniteChains::new`], with `free` chains leading the `a_k` of
    /// their degree. They must have independent boundaries.
    pub fn with_free(chains: ChainCoalgebra, top: i32, preferred: &[Polynomial], free: &[Polynomial]) -> Result<Self> {
        if top + 1 > chains.cap() {
            return Err(invalid(format!("chains need degree {} but stop at {}", top + 1, chains.cap())));
        }
        let mut by_degree: BTreeMap<i32, Vec<Polynomial>> = BTreeMap::new();
        for p in preferred {
            let n = p
                .homogeneous_degree(chains.degrees())
                .ok_or_else(|| invalid("preferred chain is zero or inhomogeneous"))?;
            if !chains.d(p).is_zero() {
                return Err(invalid("preferred chain is not a cycle"));
            }
            by_degree.entry(n).or_default().push(p.clone());
        }
        let mut given: BTreeMap<i32, Vec<Polynomial>> = BTreeMap::new();
        for p in free {
            let n = p
                .homogeneous_degree(chains.degrees())
                .ok_or_else(|| invalid("preferred chain is zero or inhomogeneous"))?;
            given.entry(n).or_default().push(p.clone());
        }
        let mut free: BTreeMap<i32, Vec<Polynomial>> = BTreeMap::new();
        for n in 1..=top {
            let words = chains.basis(n);
            let below = chains.basis(n - 1);
            let mut images = Echelon::new();
            let mut chosen = Vec::new();
            let lead = given.remove(&n).unwrap_or_default();
            for p in &lead {
                let img = chains.d(p);
                if img.is_zero() || images.insert(&below.coords(&img)).is_err() {
                    return Err(invalid("preferred free chains have dependent boundaries"));
                }
                chosen.push(p.clone());
            }
            for m in &words.monomials {
                let p = Polynomial::term(Q::one(), m.clone());
                let img = chains.d(&p);
                if !img.is_zero() && images.insert(&below.coords(&img)).is_ok() {
                    chosen.push(p);
                }
            }
            free.insert(n, chosen);
        }
        let mut degrees = BTreeMap::new();
        for n in 1..=top {
            let words = chains.basis(n);
            let mut elements = Vec::new();
            let mut kinds = Vec::new();
            for a in &free[&n] {
                elements.push(a.clone());
                kinds.push(AdaptedKind::Free);
            }
            let mut boundaries = Echelon::new();
            if n < top {
                for (k, a) in free[&(n + 1)].iter().enumerate() {
                    let b = chains.d(a);
                    let _ = boundaries.insert(&words.coords(&b));
                    elements.push(b);
                    kinds.push(AdaptedKind::Boundary(k));
                }
            }
            let mut span = boundaries.clone();
            let mut j = 0;
            let candidates = by_degree.remove(&n).unwrap_or_default().into_iter().chain(chains.homology(n));
            for c in candidates {
                if span.insert(&words.coords(&c)).is_ok() {
                    elements.push(c);
                    kinds.push(AdaptedKind::Cycle(j));
                    j += 1;
                }
            }
            let mut all = Echelon::new();
            for e in &elements {
                all.insert(&words.coords(e))
                    .map_err(|_| internal(format!("adapted basis dependent in degree {n}")))?;
            }
            if n < top && all.dim() != words.len() {
                return Err(internal(format!("adapted basis incomplete in degree {n}")));
            }
            degrees.insert(n, AdaptedDegree { elements, kinds, words, span: all });
        }
        Ok(Self { chains, top, degrees })
    }

    pub fn chains(&self) -> &ChainCoalgebra {
        &self.chains
    }

    pub fn top(&self) -> i32 {
        self.top
    }

    pub fn dim(&self, n: i32) -> usize {
        self.degrees.get(&n).map_or(0, |d| d.elements.len())
    }

    pub fn element(&self, n: i32, i: usize) -> &Polynomial {
        &self.degrees[&n].elements[i]
    }

    pub fn kind(&self, n: i32, i: usize) -> AdaptedKind {
        self.degrees[&n].kinds[i]
    }

    /// Index of `c_j` in degree `n`.
    pub fn cycle_index(&self, n: i32, j: usize) -> Option<usize> {
        self.degrees.get(&n)?.kinds.iter().position(|k| *k == AdaptedKind::Cycle(j))
    }

    pub fn cycles(&self, n: i32) -> Vec<usize> {
        self.degrees.get(&n).map_or(vec![], |d| {
            (0..d.kinds.len()).filter(|&i| matches!(d.kinds[i], AdaptedKind::Cycle(_))).collect()
        })
    }

    /// Adapted coordinates of a chain of degree `n`, if it lies in `C''`.
    pub fn coords(&self, n: i32, p: &Polynomial) -> Option<SparseVec> {
        let d = self.degrees.get(&n)?;
        if p.terms().any(|(m, _)| d.words.position(m).is_none()) {
            return None;
        }
        d.span.express(&d.words.coords(p))
    }

    /// Adapted coordinates of a single monomial.
    pub fn monomial_coords(&self, m: &Monomial) -> Option<(i32, SparseVec)> {
        let n = m.degree(self.chains.degrees());
        Some((n, self.coords(n, &Polynomial::term(Q::one(), m.clone()))?))
    }

    /// `d` of an adapted basis element, in adapted coordinates one degree down.
    pub fn d_adapted(&self, n: i32, i: usize) -> SparseVec {
        if n <= 1 {
            return SparseVec::new();
        }
        match self.kind(n, i) {
            AdaptedKind::Free => self.coords(n - 1, &self.chains.d(self.element(n, i))).expect("C'' is a subcomplex"),
            _ => SparseVec::new(),
        }
    }

    /// `D̄^{(m-1)}` of an adapted basis element, expanded over adapted bases.
    /// Each term is a coefficient and the `m` factors `(degree, index)`.
    pub fn coproduct_adapted(&self, n: i32, i: usize, m: usize) -> Vec<(Q, Vec<(i32, usize)>)> {
        let words = self.chains.reduced_coproduct(self.element(n, i), m);
        let mut acc: BTreeMap<Vec<(i32, usize)>, Q> = BTreeMap::new();
        for (factors, c) in words {
            let mut partial: Vec<(Q, Vec<(i32, usize)>)> = vec![(c, vec![])];
            for f in &factors {
                let (deg, v) = self.monomial_coords(f).expect("C'' is a subcoalgebra");
                let mut next = Vec::new();
                for (pc, pf) in &partial {
                    for (j, x) in v.iter() {
                        let mut nf = pf.clone();
                        nf.push((deg, j));
                        next.push((pc * x, nf));
                    }
                }
                partial = next;
            }
            for (c, f) in partial {
                *acc.entry(f).or_insert_with(Q::zero) += c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(f, c)| (c, f)).collect()
    }

    /// Label of an adapted element.
    pub fn label(&self, n: i32, i: usize) -> String {
        match self.kind(n, i) {
            AdaptedKind::Free => format!("a{n}_{i}"),
            AdaptedKind::Boundary(k) => format!("b{n}_{k}"),
            AdaptedKind::Cycle(j) => format!("c{n}_{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::lie::{FreeDgl, FreeLie};

    fn cp2_chains() -> ChainCoalgebra {
        let base = FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap();
        let i = base.lie().generator(0).unwrap();
        let z = base.lie().bracket(&i, &i).scale(&q(-1));
        ChainCoalgebra::new(&base.adjoin_cell("w", &z).unwrap())
    }

    #[test]
    fn cp2_adapted_basis() {
        let c = cp2_chains();
        let cyc = c.cell_cycle(1).unwrap();
        let f = FiniteChains::new(c, 4, &[cyc.clone()]).unwrap();
        assert_eq!(f.cycles(2).len(), 1);
        assert_eq!(f.cycles(4).len(), 1);
        assert_eq!(f.element(4, f.cycle_index(4, 0).unwrap()), &cyc);
        // s[i,i] = -d(si*si)/1 is a boundary, si*si is free
        assert_eq!(f.dim(3), 1);
        assert!(matches!(f.kind(3, 0), AdaptedKind::Boundary(_)));
        // D̄(c4) = -2 si ⊗ si
        let cop = f.coproduct_adapted(4, f.cycle_index(4, 0).unwrap(), 2);
        assert_eq!(cop.len(), 1);
        assert_eq!(cop[0].0, q(-2));
    }
}
