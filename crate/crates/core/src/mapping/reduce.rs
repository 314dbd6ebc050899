//! Minimal model of the based mapping space from the BS model.
//!
//! With the adapted basis `a_k, b_k = d a_k, c_j` of `C''`, the pairs
//! `v⊗a_k, δ̄(v⊗a_k)` are contractible and `w = v⊗c_j` survive. The
//! retraction `r` kills `v⊗a_k`, solves `v⊗b_k` out of `δ̄(v⊗a_k)`, and sends
//! `v⊗c_j` to `w`; the reduced differential is `D(w) = r(δ̄(v⊗c_j))`.

use num_traits::One;

use super::bs::{BsGenerator, BsModel};
use crate::algebra::cdga::FreeCdga;
use crate::algebra::poly::{GenId, Polynomial};
use crate::algebra::rational::{sign, Q};
use crate::chains::AdaptedKind;
use crate::error::{internal, Error, Result};

#[derive(Clone, Debug)]
pub struct MinimalReduction {
    /// `(Q[w_ij], D)`.
    pub model: FreeCdga,
    /// The BS generator `v_i ⊗ c_j` behind each `w`.
    pub origin: Vec<BsGenerator>,
    /// `r` on each BS generator.
    pub retraction: Vec<Polynomial>,
    /// `w ↦ v⊗c + x`, a chain map back into the BS model.
    pub inclusion: Vec<Polynomial>,
}

impl MinimalReduction {
    /// `r` applied to a polynomial of the BS model.
    pub fn retract(&self, p: &Polynomial) -> Polynomial {
        p.substitute(self.model.degrees(), |g| self.retraction[g as usize].clone())
    }

    /// Number of `w` generators in degree `n`.
    pub fn rank(&self, n: i32) -> usize {
        self.model.gens_of_degree(n).len()
    }

    pub fn id_of_origin(&self, g: BsGenerator) -> Option<GenId> {
        self.origin.iter().position(|o| *o == g).map(|i| i as GenId)
    }
}

pub fn minimal_reduce(bs: &BsModel) -> Result<MinimalReduction> {
    let a = bs.cdga();
    let chains = bs.chains();
    let ya = bs.y().cdga();
    // w generators in BS order
    let mut origin = Vec::new();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for (k, g) in bs.generators().iter().enumerate() {
        if matches!(chains.kind(g.n, g.i), AdaptedKind::Cycle(_)) {
            origin.push(*g);
            names.push(a.name(k as GenId).to_string());
            degrees.push(a.degree(k as GenId));
        }
    }
    let w_of = |g: &BsGenerator| origin.iter().position(|o| o == g).map(|i| i as GenId);
    let mut r: Vec<Option<Polynomial>> = vec![None; a.ngens()];
    let mut d_w: Vec<Polynomial> = vec![Polynomial::zero(); origin.len()];
    let apply = |r: &Vec<Option<Polynomial>>, p: &Polynomial| -> Result<Polynomial> {
        let mut missing = None;
        let out = p.substitute(&degrees, |g| match &r[g as usize] {
            Some(x) => x.clone(),
            None => {
                missing = Some(g);
                Polynomial::zero()
            }
        });
        match missing {
            Some(g) => Err(internal(format!("retraction used before it was defined on {}", a.name(g)))),
            None => Ok(out),
        }
    };
    let gens = bs.generators();
    let mut start = 0;
    while start < gens.len() {
        let v = gens[start].v;
        let end = start + gens[start..].iter().take_while(|g| g.v == v).count();
        let eps = sign(ya.degree(v) as i64);
        for k in start..end {
            let g = gens[k];
            match chains.kind(g.n, g.i) {
                AdaptedKind::Free => r[k] = Some(Polynomial::zero()),
                AdaptedKind::Cycle(_) => r[k] = Some(Polynomial::generator(w_of(&g).unwrap())),
                AdaptedKind::Boundary(_) => {}
            }
        }
        for k in start..end {
            let g = gens[k];
            let AdaptedKind::Boundary(idx) = chains.kind(g.n, g.i) else { continue };
            // the idx-th free element one degree up
            let free_pos = (0..chains.dim(g.n + 1))
                .filter(|&i| chains.kind(g.n + 1, i) == AdaptedKind::Free)
                .nth(idx)
                .ok_or_else(|| internal("boundary without a free partner"))?;
            let ga = bs.id(BsGenerator { v, n: g.n + 1, i: free_pos });
            let da = a.dv(ga);
            if da.coefficient(&crate::algebra::poly::Monomial::generator(k as GenId)) != eps {
                return Err(internal("unexpected linear part in the BS differential"));
            }
            let rest = da.sub(&Polynomial::generator(k as GenId).scale(&eps));
            r[k] = Some(apply(&r, &rest)?.scale(&(-Q::one() / &eps)));
        }
        for k in start..end {
            let g = gens[k];
            if let Some(w) = w_of(&g) {
                d_w[w as usize] = apply(&r, a.dv(k as GenId))?;
            }
        }
        start = end;
    }
    let retraction: Vec<Polynomial> = r.into_iter().map(|x| x.unwrap()).collect();
    let cap = degrees.iter().copied().max().unwrap_or(0) + 2;
    let model = FreeCdga::new(names, degrees, d_w, cap)?;
    let inclusion = solve_inclusion(bs, &model, &origin)?;
    let red = MinimalReduction { model, origin, retraction, inclusion };
    // r is a chain map
    for k in 0..a.ngens() as GenId {
        let lhs = red.retract(a.dv(k));
        let rhs = red.model.d(&red.retraction[k as usize]);
        if lhs != rhs {
            return Err(internal(format!("retraction is not a chain map at {}", a.name(k))));
        }
    }
    for w in 0..red.model.ngens() as GenId {
        let lhs = a.d(&red.inclusion[w as usize]);
        let rhs = red.model.dv(w).substitute(a.degrees(), |h| red.inclusion[h as usize].clone());
        if lhs != rhs {
            return Err(internal(format!("inclusion is not a chain map at {}", red.model.name(w))));
        }
    }
    if !red.model.is_minimal() {
        return Err(internal("reduced model is not minimal"));
    }
    Ok(red)
}

/// Largest number of candidate monomials tried for one correction term.
pub(crate) const SOLVE_LIMIT: usize = 20_000;

fn solve_inclusion(bs: &BsModel, model: &FreeCdga, origin: &[BsGenerator]) -> Result<Vec<Polynomial>> {
    let a = bs.cdga();
    let ya = bs.y().cdga();
    let order = super::bs::ordered_y_gens(bs.y());
    let rank = |v: GenId| order.iter().position(|&u| u == v).unwrap();
    let mut inc: Vec<Polynomial> = Vec::with_capacity(origin.len());
    for (w, g) in origin.iter().enumerate() {
        let lead = Polynomial::generator(bs.id(*g));
        let image = model.dv(w as GenId).substitute(a.degrees(), |h| inc[h as usize].clone());
        let target = image.sub(&a.d(&lead));
        let earlier: Vec<GenId> = (0..a.ngens() as GenId)
            .filter(|&k| rank(bs.generator(k).v) < rank(g.v))
            .collect();
        let n = a.degree(bs.id(*g));
        let x = match a.solve_d(&earlier, n, 1, &target, SOLVE_LIMIT) {
            None => return Err(Error::CapExceeded { degree: n, cap: a.cap() }),
            Some(None) => {
                return Err(internal(format!("no correction term for {} over {}", a.name(bs.id(*g)), ya.name(g.v))))
            }
            Some(Some(x)) => x,
        };
        inc.push(lead.add(&x));
    }
    Ok(inc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::chains::{ChainCoalgebra, FiniteChains};
    use crate::invariants::MinimalModel;
    use crate::lie::{FreeDgl, FreeLie};

    #[test]
    fn cp2_into_s6() {
        let mut y = FreeCdga::empty(30);
        let x = y.push("x", 6, Polynomial::zero()).unwrap();
        let x2 = Polynomial::generator(x).pow(2, y.degrees());
        y.push("y", 11, x2).unwrap();
        let y = MinimalModel::new(y).unwrap();
        let base = FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap();
        let i = base.lie().generator(0).unwrap();
        let z = base.lie().bracket(&i, &i).scale(&q(-1));
        let c = ChainCoalgebra::new(&base.adjoin_cell("w", &z).unwrap());
        let cyc = c.cell_cycle(1).unwrap();
        let bs = BsModel::new(&y, FiniteChains::new(c, 4, &[cyc]).unwrap()).unwrap();
        let red = minimal_reduce(&bs).unwrap();
        let mut degs: Vec<i32> = red.model.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![2, 4, 7, 9]);
        let v7 = red.model.gens_of_degree(7)[0];
        let v4 = red.model.gens_of_degree(4)[0];
        let expect = Polynomial::generator(v4).pow(2, red.model.degrees()).scale(&q(-2));
        assert_eq!(red.model.dv(v7), &expect);
        assert_eq!(bs.cdga().betti(12), red.model.betti(12));
    }
}
