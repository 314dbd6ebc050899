//! The based Brown–Szczarba model `(Q[V ⊗ B_*^+], δ̄)` with `B_* = C''(L)`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::cdga::FreeCdga;
use crate::algebra::poly::{GenId, Polynomial};
use crate::algebra::rational::{sign, Q};
use crate::chains::{AdaptedKind, ChainCoalgebra, FiniteChains};
use crate::lie::FreeDgl;
use crate::error::{Error, Result};
use crate::invariants::MinimalModel;

/// A generator `v ⊗ β` with `β` the `i`-th adapted basis element of chain degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsGenerator {
    pub v: GenId,
    pub n: i32,
    pub i: usize,
}

#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BsOptions {
    /// Mutation switch for self-tests: every transposition of a `β` past a
    /// `v` picks up an extra sign.
    pub flip_koszul: bool,
}

#[derive(Clone, Debug)]
pub struct BsModel {
    y: MinimalModel,
    chains: FiniteChains,
    cdga: FreeCdga,
    gens: Vec<BsGenerator>,
    index: BTreeMap<BsGenerator, GenId>,
}

/// Generators of `Y` in (degree, declaration) order.
pub(crate) fn ordered_y_gens(y: &MinimalModel) -> Vec<GenId> {
    let a = y.cdga();
    let mut v: Vec<GenId> = (0..a.ngens() as GenId).collect();
    v.sort_by_key(|&g| (a.degree(g), g));
    v
}

impl BsModel {
    pub fn new(y: &MinimalModel, chains: FiniteChains) -> Result<Self> {
        Self::with_options(y, chains, BsOptions::default())
    }

    #[doc(hidden)]
    pub fn with_options(y: &MinimalModel, chains: FiniteChains, opts: BsOptions) -> Result<Self> {
        let ya = y.cdga();
        let mut gens = Vec::new();
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for v in ordered_y_gens(y) {
            for n in 1..=chains.top() {
                for i in 0..chains.dim(n) {
                    let deg = ya.degree(v) - n;
                    let label = format!("{}.{}", ya.name(v), chains.label(n, i));
                    if deg < 1 {
                        return Err(Error::Hypothesis(format!(
                            "connectivity: {label} would have degree {deg}"
                        )));
                    }
                    gens.push(BsGenerator { v, n, i });
                    names.push(label);
                    degrees.push(deg);
                }
            }
        }
        let index: BTreeMap<BsGenerator, GenId> =
            gens.iter().enumerate().map(|(k, g)| (*g, k as GenId)).collect();
        let mut cache: BTreeMap<(i32, usize, usize), Vec<(Q, Vec<(i32, usize)>)>> = BTreeMap::new();
        let mut diff = Vec::with_capacity(gens.len());
        for g in &gens {
            let vdeg = ya.degree(g.v);
            let mut out = Polynomial::zero();
            for (j, c) in chains.d_adapted(g.n, g.i).iter() {
                let t = index[&BsGenerator { v: g.v, n: g.n - 1, i: j }];
                out.add_assign_scaled(&Polynomial::generator(t), &(sign(vdeg as i64) * c));
            }
            for (mono, coef) in ya.dv(g.v).terms() {
                let f = mono.factors();
                let m = f.len();
                if m < 2 {
                    continue;
                }
                let pieces = cache
                    .entry((g.n, g.i, m))
                    .or_insert_with(|| chains.coproduct_adapted(g.n, g.i, m));
                for (cc, beta) in pieces.iter() {
                    let mut eps = 0i64;
                    for s in 0..m {
                        let others: i32 = f[s + 1..].iter().map(|&t| ya.degree(t)).sum();
                        eps += (beta[s].0 * others) as i64;
                        if opts.flip_koszul {
                            eps += (m - 1 - s) as i64;
                        }
                    }
                    let factors: Vec<GenId> = (0..m)
                        .map(|s| index[&BsGenerator { v: f[s], n: beta[s].0, i: beta[s].1 }])
                        .collect();
                    let c = coef * cc * sign(eps);
                    out.add_assign_scaled(&Polynomial::product_of(Q::one(), &factors, &degrees), &c);
                }
            }
            diff.push(out);
        }
        let cap = degrees.iter().copied().max().unwrap_or(0) + 2;
        let cdga = FreeCdga::new(names, degrees, diff, cap)?;
        Ok(Self { y: y.clone(), chains, cdga, gens, index })
    }

    pub fn y(&self) -> &MinimalModel {
        &self.y
    }

    pub fn chains(&self) -> &FiniteChains {
        &self.chains
    }

    pub fn cdga(&self) -> &FreeCdga {
        &self.cdga
    }

    pub fn generators(&self) -> &[BsGenerator] {
        &self.gens
    }

    pub fn id(&self, g: BsGenerator) -> GenId {
        self.index[&g]
    }

    pub fn generator(&self, id: GenId) -> BsGenerator {
        self.gens[id as usize]
    }

    pub fn delta(&self, p: &Polynomial) -> Polynomial {
        self.cdga.d(p)
    }
}

/// Based model of `F_*(X, Y)` with `C''(L_X)` cut at `dim X`.
pub fn based_model(x: &FreeDgl, y: &MinimalModel) -> Result<BsModel> {
    let top = 1 + x.lie().degrees().iter().copied().max().unwrap_or(0);
    let l = x.with_cap(top)?;
    BsModel::new(y, FiniteChains::new(ChainCoalgebra::new(&l), top, &[])?)
}

/// Checks `δ̄(v⊗β) = 0` whenever `β` is a cycle, `dv ∈ ∧^{≥m}V` and
/// `D̄^{(m-1)}β = 0`. Returns the number of instances checked.
pub fn check_vanishing(bs: &BsModel) -> Result<usize> {
    let ya = bs.y().cdga();
    let mut count = 0;
    for (k, g) in bs.generators().iter().enumerate() {
        let Some(m) = ya.dv(g.v).min_wordlength() else { continue };
        if !matches!(bs.chains().kind(g.n, g.i), AdaptedKind::Cycle(_)) {
            continue;
        }
        if !bs.chains().coproduct_adapted(g.n, g.i, m).is_empty() {
            continue;
        }
        if !bs.cdga().dv(k as GenId).is_zero() {
            return Err(Error::Internal(format!("vanishing fails at {}", bs.cdga().name(k as GenId))));
        }
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::lie::FreeLie;

    fn s6() -> MinimalModel {
        let mut a = FreeCdga::empty(30);
        let x = a.push("x", 6, Polynomial::zero()).unwrap();
        let x2 = Polynomial::generator(x).pow(2, a.degrees());
        a.push("y", 11, x2).unwrap();
        MinimalModel::new(a).unwrap()
    }

    fn cp2_chains(qq: i64) -> FiniteChains {
        let base = FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap();
        let i = base.lie().generator(0).unwrap();
        let z = base.lie().bracket(&i, &i).scale(&q(-qq));
        let c = ChainCoalgebra::new(&base.adjoin_cell("w", &z).unwrap());
        let cyc = c.cell_cycle(1).unwrap();
        FiniteChains::new(c, 4, &[cyc]).unwrap()
    }

    #[test]
    fn example_cp2_s6_differential() {
        let m = BsModel::new(&s6(), cp2_chains(1)).unwrap();
        let a = m.cdga();
        let c4 = m.chains().cycle_index(4, 0).unwrap();
        let c2 = m.chains().cycle_index(2, 0).unwrap();
        let y = m.id(BsGenerator { v: 1, n: 4, i: c4 });
        let x2 = m.id(BsGenerator { v: 0, n: 2, i: c2 });
        let expect = Polynomial::generator(x2).pow(2, a.degrees()).scale(&q(-2));
        assert_eq!(a.dv(y), &expect);
    }

    #[test]
    fn flipped_koszul_rule_changes_the_sign() {
        let opts = BsOptions { flip_koszul: true };
        let m = BsModel::with_options(&s6(), cp2_chains(1), opts).unwrap();
        let c4 = m.chains().cycle_index(4, 0).unwrap();
        let c2 = m.chains().cycle_index(2, 0).unwrap();
        let y = m.id(BsGenerator { v: 1, n: 4, i: c4 });
        let x2 = m.id(BsGenerator { v: 0, n: 2, i: c2 });
        let expect = Polynomial::generator(x2).pow(2, m.cdga().degrees()).scale(&q(2));
        assert_eq!(m.cdga().dv(y), &expect);
    }

    #[test]
    fn connectivity_violation() {
        let mut a = FreeCdga::empty(10);
        a.push("x", 3, Polynomial::zero()).unwrap();
        let y = MinimalModel::new(a).unwrap();
        assert!(matches!(BsModel::new(&y, cp2_chains(1)), Err(Error::Hypothesis(_))));
    }
}
