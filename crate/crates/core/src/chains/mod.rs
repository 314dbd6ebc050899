//! Quillen chains `C_*(L) = (∧ sL, d_v + d_h)` of a free DGL.

mod cochains;
mod finite;

pub use cochains::{dual_cochains, rho_reduction, RhoReport};
pub use finite::{AdaptedKind, FiniteChains};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::cdga::DegreeBasis;
use crate::algebra::linalg::{kernel_and_image, Echelon, SparseVec};
use crate::algebra::poly::{is_odd, monomials_of_degree, GenId, Monomial, Polynomial};
use crate::algebra::rational::{sign, Q};
use crate::lie::{FreeDgl, LieElement};

/// `D̄^{(m-1)}` of a chain: tensors of `m` nonempty monomials.
pub type TensorChain = BTreeMap<Vec<Monomial>, Q>;

#[derive(Clone, Debug)]
pub struct ChainCoalgebra {
    dgl: FreeDgl,
    cap: i32,
    sdeg: Vec<i32>,
    /// Lie degree and basis index of each suspended id.
    origin: Vec<(i32, usize)>,
    offsets: BTreeMap<i32, usize>,
    names: Vec<String>,
}

impl ChainCoalgebra {
    /// Chains up to degree `cap(L) + 1`.
    pub fn new(dgl: &FreeDgl) -> Self {
        let lie = dgl.lie();
        let mut sdeg = Vec::new();
        let mut origin = Vec::new();
        let mut offsets = BTreeMap::new();
        let mut names = Vec::new();
        for n in 1..=lie.cap() {
            offsets.insert(n, sdeg.len());
            for i in 0..lie.dim(n) {
                sdeg.push(n + 1);
                origin.push((n, i));
                names.push(format!("s{}", lie.algebra().label(n, i)));
            }
        }
        Self { dgl: dgl.clone(), cap: lie.cap() + 1, sdeg, origin, offsets, names }
    }

    pub fn dgl(&self) -> &FreeDgl {
        &self.dgl
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn degrees(&self) -> &[i32] {
        &self.sdeg
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ngens(&self) -> usize {
        self.sdeg.len()
    }

    pub fn origin(&self, id: GenId) -> (i32, usize) {
        self.origin[id as usize]
    }

    pub fn suspended_id(&self, lie_degree: i32, i: usize) -> GenId {
        (self.offsets[&lie_degree] + i) as GenId
    }

    /// `sx` as a wordlength-one chain.
    pub fn suspend(&self, x: &LieElement) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in x.coords.iter() {
            p.add_term(Monomial::generator(self.suspended_id(x.degree, i)), c.clone());
        }
        p
    }

    pub fn desuspend(&self, id: GenId) -> LieElement {
        let (n, i) = self.origin(id);
        LieElement::basis(n, i)
    }

    /// Monomial basis of degree `n`, ordered by wordlength and then by factors.
    pub fn basis(&self, n: i32) -> DegreeBasis {
        let ids: Vec<GenId> = (0..self.ngens() as GenId).filter(|&g| self.sdeg[g as usize] <= n).collect();
        let mut ms = monomials_of_degree(&ids, &self.sdeg, n);
        ms.sort_by(|a, b| (a.wordlength(), a.factors()).cmp(&(b.wordlength(), b.factors())));
        DegreeBasis::new(ms)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b, &self.sdeg)
    }

    pub fn d_v(&self, p: &Polynomial) -> Polynomial {
        let vals = |g: GenId| self.suspend(&self.dgl.d(&self.desuspend(g))).neg();
        crate::algebra::poly::apply_derivation_raw(&vals, -1, p, &self.sdeg)
    }

    pub fn d_h(&self, p: &Polynomial) -> Polynomial {
        let lie = self.dgl.lie();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let f = m.factors();
            let k = f.len();
            let deg = |g: GenId| self.sdeg[g as usize];
            for i in 0..k {
                for j in i + 1..k {
                    // moving sx_i, then sx_j, to the front
                    let pre_i: i32 = f[..i].iter().map(|&g| deg(g)).sum();
                    let pre_j: i32 = f[..j].iter().map(|&g| deg(g)).sum::<i32>() - deg(f[i]);
                    let n_ij = deg(f[i]) * pre_i + deg(f[j]) * pre_j;
                    let s = sign((deg(f[i]) + n_ij) as i64);
                    let br = lie.bracket(&self.desuspend(f[i]), &self.desuspend(f[j]));
                    if br.is_zero() {
                        continue;
                    }
                    let rest = Monomial::from_sorted(
                        f.iter().enumerate().filter(|&(l, _)| l != i && l != j).map(|(_, &g)| g),
                    );
                    let term = self.suspend(&br).mul_monomial(&rest, &self.sdeg);
                    out.add_assign_scaled(&term, &(c * s));
                }
            }
        }
        out
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        self.d_v(p).add(&self.d_h(p))
    }

    /// The `(m-1)`-fold reduced coproduct of `p`.
    pub fn reduced_coproduct(&self, p: &Polynomial, m: usize) -> TensorChain {
        let mut out = TensorChain::new();
        for (mono, c) in p.terms() {
            let f = mono.factors();
            let k = f.len();
            if m < 2 || k < m {
                continue;
            }
            let mut assign = vec![0usize; k];
            loop {
                let mut counts = vec![0usize; m];
                for &b in &assign {
                    counts[b] += 1;
                }
                if counts.iter().all(|&n| n > 0) {
                    let mut negative = false;
                    for i in 0..k {
                        for j in i + 1..k {
                            if assign[i] > assign[j]
                                && is_odd(self.sdeg[f[i] as usize])
                                && is_odd(self.sdeg[f[j] as usize])
                            {
                                negative = !negative;
                            }
                        }
                    }
                    let key: Vec<Monomial> = (0..m)
                        .map(|b| Monomial::from_sorted((0..k).filter(|&i| assign[i] == b).map(|i| f[i])))
                        .collect();
                    let e = out.entry(key).or_insert_with(Q::zero);
                    if negative {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                }
                // next assignment in base m
                let mut pos = 0;
                while pos < k {
                    assign[pos] += 1;
                    if assign[pos] < m {
                        break;
                    }
                    assign[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Cycle representatives of `H_n(C_*(L))`, each scaled so its first
    /// nonzero coefficient in basis order is 1.
    pub fn homology(&self, n: i32) -> Vec<Polynomial> {
        let basis = self.basis(n);
        let prev = self.basis(n - 1);
        let images: Vec<SparseVec> = basis
            .monomials
            .iter()
            .map(|m| prev.coords(&self.d(&Polynomial::term(Q::one(), m.clone()))))
            .collect();
        let (kernel, _) = kernel_and_image(&images);
        let mut span = Echelon::new();
        if n < self.cap {
            for m in self.basis(n + 1).monomials {
                let _ = span.insert(&basis.coords(&self.d(&Polynomial::term(Q::one(), m))));
            }
        }
        let mut reps = Vec::new();
        for k in kernel {
            let k = crate::lie::free::normalize_leading(&k);
            if span.insert(&k).is_ok() {
                reps.push(basis.polynomial(&k));
            }
        }
        reps
    }

    /// The cycle `sw + Σ ±sx∧sy` lifting a cell `w` whose boundary is
    /// spelled by the basis words of `dw`.
    pub fn cell_cycle(&self, w: GenId) -> Option<Polynomial> {
        let lie = self.dgl.lie();
        let wx = lie.generator(w).ok()?;
        let mut c = self.suspend(&wx);
        let z = self.dgl.d(&wx);
        if z.degree >= 1 {
            for (i, coef) in z.coords.iter() {
                match &lie.basis_words(z.degree)[i] {
                    crate::lie::BracketWord::Bracket(a, b) => {
                        let (x, y) = (lie.normalize(a).ok()?, lie.normalize(b).ok()?);
                        let s = sign((x.degree + 1) as i64) * coef;
                        c.add_assign_scaled(&self.mul(&self.suspend(&x), &self.suspend(&y)), &s);
                    }
                    crate::lie::BracketWord::Gen(_) => return None,
                }
            }
        }
        let dc = self.d(&c);
        if dc.is_zero() {
            return Some(c);
        }
        // correct by a chain not involving sw
        let sw = self.suspend(&wx);
        let sw = *sw.terms().next()?.0.factors().first()?;
        let n = c.homogeneous_degree(self.degrees())?;
        let words: Vec<Monomial> =
            self.basis(n).monomials.into_iter().filter(|m| !m.factors().contains(&sw)).collect();
        let below = self.basis(n - 1);
        let mut ech = Echelon::new();
        for m in &words {
            let _ = ech.insert(&below.coords(&self.d(&Polynomial::term(Q::one(), m.clone()))));
        }
        let combo = ech.express(&below.coords(&dc.neg()))?;
        for (k, x) in combo.iter() {
            c.add_term(words[k].clone(), x.clone());
        }
        Some(c)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display(&|g| self.names[g as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::lie::FreeLie;

    fn s2() -> FreeDgl {
        FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap()
    }

    fn cp2() -> FreeDgl {
        let base = s2();
        let i = base.lie().generator(0).unwrap();
        let z = base.lie().bracket(&i, &i).scale(&q(-1));
        base.adjoin_cell("w", &z).unwrap()
    }

    #[test]
    fn d_h_on_square() {
        let c = ChainCoalgebra::new(&s2());
        let si = Polynomial::generator(0);
        let sq = c.mul(&si, &si);
        let ii = c.dgl().lie().bracket(&c.desuspend(0), &c.desuspend(0));
        assert_eq!(c.d_h(&sq), c.suspend(&ii));
    }

    #[test]
    fn d_squared_vanishes() {
        let c = ChainCoalgebra::new(&cp2());
        for n in 1..=c.cap() {
            for m in c.basis(n).monomials {
                let p = Polynomial::term(q(1), m);
                assert!(c.d(&c.d(&p)).is_zero());
            }
        }
    }

    #[test]
    fn homology_matches_cells() {
        let c = ChainCoalgebra::new(&cp2());
        let ranks: Vec<usize> = (1..=4).map(|n| c.homology(n).len()).collect();
        assert_eq!(ranks, vec![0, 1, 0, 1]);
        let cyc = c.cell_cycle(1).unwrap();
        assert_eq!(c.display(&cyc), "-si*si + sw");
    }

    #[test]
    fn coproduct_of_primitive_and_square() {
        let c = ChainCoalgebra::new(&s2());
        let si = Polynomial::generator(0);
        assert!(c.reduced_coproduct(&si, 2).is_empty());
        let sq = c.mul(&si, &si);
        let cop = c.reduced_coproduct(&sq, 2);
        assert_eq!(cop.values().cloned().collect::<Vec<_>>(), vec![q(2)]);
        assert!(c.reduced_coproduct(&sq, 3).is_empty());
    }
}
