//! The dual cochain algebra `C^*(L)` and the projection onto `Q ⊕ sW`.

use num_traits::One;

use super::ChainCoalgebra;
use crate::algebra::cdga::FreeCdga;
use crate::algebra::linalg::{Matrix, SparseVec};
use crate::algebra::poly::{GenId, Monomial, Polynomial};
use crate::algebra::rational::{q, sign, Q};
use crate::error::{internal, Result};
use crate::lie::FreeDgl;

/// `C^*(L)` as a free CDGA on generators dual to the suspended Lie basis,
/// valid through degree `cap(L)`. The generators of top degree carry a
/// truncated differential.
pub fn dual_cochains(dgl: &FreeDgl) -> Result<FreeCdga> {
    let chains = ChainCoalgebra::new(dgl);
    let cap = chains.cap();
    let deg = chains.degrees().to_vec();
    let mut dual: Vec<Polynomial> = vec![Polynomial::zero(); chains.ngens()];
    for n in 2..=cap {
        for m in chains.basis(n).monomials {
            if m.wordlength() > 2 {
                continue;
            }
            let f = m.factors().to_vec();
            // the dual of the chain monomial inside ΛsL^∨
            let pairing = match f.as_slice() {
                [_] => q(1),
                [a, b] if a == b => q(2),
                [a, b] => sign((deg[*a as usize] * deg[*b as usize]) as i64),
                _ => unreachable!(),
            };
            let dm = chains.d(&Polynomial::term(Q::one(), m.clone()));
            for (t, c) in dm.terms() {
                let [e] = t.factors() else { continue };
                let e = *e;
                if deg[e as usize] + 1 != n || n > cap {
                    continue;
                }
                let eps = -sign(deg[e as usize] as i64);
                let coef = eps * c / &pairing;
                dual[e as usize].add_term(Monomial::from_sorted(f.iter().copied()), coef);
            }
        }
    }
    let names = chains.names().iter().map(|n| format!("{n}^")).collect();
    for (e, d) in dual.iter_mut().enumerate() {
        if deg[e] >= cap {
            *d = Polynomial::zero();
        }
    }
    FreeCdga::new(names, deg, dual, cap - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    /// Homology ranks of `C_*(L)` in degrees `0..cap`.
    pub chain_ranks: Vec<usize>,
    /// Homology ranks of `(Q ⊕ sW, d₀)` in the same degrees.
    pub target_ranks: Vec<usize>,
}

/// Checks that `ρ₂ρ₁: C_*(L) → (Q ⊕ sW, d₀)` is a chain map and a
/// quasi-isomorphism within the cap.
pub fn rho_reduction(dgl: &FreeDgl) -> Result<RhoReport> {
    let chains = ChainCoalgebra::new(dgl);
    let lie = dgl.lie();
    let gens: Vec<GenId> = (0..lie.ngens() as GenId).filter(|&g| lie.generator_index(g).is_some()).collect();
    let pos = |id: GenId| -> Option<usize> {
        let (n, i) = chains.origin(id);
        gens.iter().position(|&g| lie.degrees()[g as usize] == n && lie.generator_index(g) == Some(i))
    };
    let rho = |p: &Polynomial| -> SparseVec {
        SparseVec::from_pairs(p.terms().filter_map(|(m, c)| match m.factors() {
            [id] => pos(*id).map(|k| (k, c.clone())),
            _ => None,
        }))
    };
    // d₀(sw) = -s(linear part of dw)
    let d0 = |k: usize| -> SparseVec {
        let dw = dgl.d(&lie.generator(gens[k]).unwrap());
        if dw.degree < 1 {
            return SparseVec::new();
        }
        rho(&chains.suspend(&dw).neg())
    };
    let cap = chains.cap();
    for n in 1..=cap {
        for m in chains.basis(n).monomials {
            let p = Polynomial::term(Q::one(), m);
            let lhs = rho(&chains.d(&p));
            let mut rhs = SparseVec::new();
            for (k, c) in rho(&p).iter() {
                rhs = rhs.add_scaled(c, &d0(k));
            }
            if lhs != rhs {
                return Err(internal(format!("rho is not a chain map in degree {n}")));
            }
        }
    }
    let sdeg = |k: usize| lie.degrees()[gens[k] as usize] + 1;
    let rank_into = |n: i32| -> usize {
        let cols: Vec<SparseVec> = (0..gens.len()).filter(|&k| sdeg(k) == n).map(d0).collect();
        if cols.is_empty() {
            0
        } else {
            Matrix::from_columns(gens.len(), &cols).rank()
        }
    };
    let mut chain_ranks = vec![1];
    let mut target_ranks = vec![1];
    for n in 1..cap {
        chain_ranks.push(chains.homology(n).len());
        let dim = (0..gens.len()).filter(|&k| sdeg(k) == n).count();
        target_ranks.push(dim - rank_into(n) - rank_into(n + 1));
    }
    if chain_ranks != target_ranks {
        return Err(internal(format!("rho is not a quasi-isomorphism: {chain_ranks:?} vs {target_ranks:?}")));
    }
    Ok(RhoReport { chain_ranks, target_ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::FreeLie;

    fn cp(n: usize) -> FreeDgl {
        // cells ι, w_1, …, w_{n-1} with dw_k = -½ Σ_{i+j=k-1} [w_i, w_j], w_0 = ι
        let mut names = vec!["i".to_string()];
        let mut degs = vec![1];
        for k in 1..n {
            names.push(format!("w{k}"));
            degs.push(2 * k as i32 + 1);
        }
        let cap = 2 * n as i32;
        let lie = FreeLie::new(names, degs, cap).unwrap();
        let mut d = vec![crate::lie::LieElement::zero(0)];
        for k in 1..n {
            let mut z = crate::lie::LieElement::zero(2 * k as i32);
            for i in 0..k {
                let j = k - 1 - i;
                let br = lie.bracket(&lie.generator(i as u32).unwrap(), &lie.generator(j as u32).unwrap());
                z = z.add_scaled(&crate::algebra::rational::frac(-1, 2), &br);
            }
            d.push(z);
        }
        FreeDgl::new(lie, d).unwrap()
    }

    #[test]
    fn s2_cochains() {
        let l = FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap();
        let a = dual_cochains(&l).unwrap();
        assert_eq!(a.betti(4), vec![1, 0, 1, 0, 0]);
    }

    #[test]
    fn cp2_and_cp3_cochains() {
        let a = dual_cochains(&cp(2)).unwrap();
        assert_eq!(a.betti(4), vec![1, 0, 1, 0, 1]);
        let b = dual_cochains(&cp(3)).unwrap();
        assert_eq!(b.betti(6), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn rho_on_cp3() {
        let r = rho_reduction(&cp(3)).unwrap();
        assert_eq!(r.chain_ranks, vec![1, 0, 1, 0, 1, 0, 1]);
    }
}

