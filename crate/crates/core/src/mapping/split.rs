//! Rational triviality of `Ω^{k+1}Y → F_*(X ∪_α e^{k+1}, Y) → F_*(X, Y)`.
//!
//! When `bl(α) > WL(Y)` the product `(∧Z, d) ⊗ (∧(V⊗sw_α), 0)` is mapped
//! into the based model of the enlarged space by `ψ|_Z = η̄φ` and
//! `ψ(v⊗sw_α) = γ_v`, where each `γ_v` is a `δ̄`-cycle with leading term
//! `v⊗c_α`. The map is checked to commute with differentials and to be an
//! isomorphism on indecomposables after the reduction of the target.

use std::collections::BTreeMap;

use super::bs::{ordered_y_gens, BsGenerator, BsModel};
use super::reduce::{minimal_reduce, MinimalReduction, SOLVE_LIMIT};
use crate::algebra::cdga::FreeCdga;
use crate::algebra::linalg::{Echelon, SparseVec};
use crate::algebra::poly::{GenId, Monomial, Polynomial};
use crate::chains::{AdaptedKind, ChainCoalgebra, FiniteChains};
use crate::error::{internal, invalid, Error, Result};
use crate::invariants::{d1_depth, whitehead_length, MinimalModel};
use crate::lie::{FreeDgl, LieElement, Length};

#[derive(Clone, Debug)]
pub enum Verdict {
    Splits(Box<SplittingWitness>),
    HypothesisFails(FailureReport),
    UnknownWithinCap { degree: i32, reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Splits(_) => "Splits",
            Verdict::HypothesisFails(_) => "HypothesisFails",
            Verdict::UnknownWithinCap { .. } => "UnknownWithinCap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailedHypothesis {
    /// `Conn(Y) < max{k+1, dim X'}`.
    Connectivity { conn: i32, needed: i32 },
    /// `bl(α) ≤ WL(Y)`.
    BracketLength,
}

#[derive(Clone, Debug)]
pub struct FailureReport {
    pub hypothesis: FailedHypothesis,
    pub bracket_length: Length,
    pub whitehead_length: u32,
    pub d1_depth: u32,
    /// Present when an invariant proves that no splitting exists.
    pub certificate: Option<NonSplitting>,
}

/// An isomorphism invariant of minimal models that differs between the
/// reduced model of `F_*(X', Y)` and the product model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSplitting {
    pub invariant: String,
    pub degree: i32,
    pub attached: usize,
    pub product: usize,
}

#[derive(Clone, Debug)]
pub struct SplittingWitness {
    pub k: i32,
    pub bracket_length: Length,
    pub whitehead_length: u32,
    pub d1_depth: u32,
    /// `(∧Z, d) ⊗ (∧(V⊗sw_α), 0)`; the last `|V|` generators are `V⊗sw_α`.
    pub product: FreeCdga,
    /// Based model of `F_*(X', Y)`.
    pub bs: BsModel,
    /// Its minimal reduction.
    pub reduced: MinimalReduction,
    /// `γ_v` for each generator `v` of `Y`, in (degree, declaration) order.
    pub gammas: Vec<(GenId, Polynomial)>,
    /// `ψ` on the generators of `product`.
    pub psi: Vec<Polynomial>,
    pub betti_product: Vec<usize>,
    pub betti_attached: Vec<usize>,
    pub transcript: Vec<String>,
}

/// Bracket length of `z` as a word presentation; mixed lengths are rejected.
pub fn word_length(x: &FreeDgl, z: &LieElement) -> Result<Option<usize>> {
    let mut len = None;
    for (i, _) in z.coords.iter() {
        let l = x.lie().basis_words(z.degree)[i].generators().len();
        if len.is_some_and(|m| m != l) {
            return Err(invalid(
                "attaching cycle mixes bracket lengths; give it as a sum of words of one length",
            ));
        }
        len = Some(l);
    }
    Ok(len)
}

/// Bracket length of the homology class of the cycle `z`.
pub fn bracket_length(x: &FreeDgl, z: &LieElement) -> Result<Length> {
    if z.is_zero() {
        return Ok(Length::Infinity);
    }
    if !x.is_cycle(z) {
        return Err(invalid("attaching element is not a cycle"));
    }
    let h = x.homology();
    let class = h.class_of(z).ok_or_else(|| internal("cycle without a homology class"))?;
    Ok(h.algebra().bracket_length(&class))
}

pub(crate) fn conn(y: &MinimalModel) -> i32 {
    y.cdga().degrees().iter().copied().min().map_or(i32::MAX, |d| d - 1)
}

pub(crate) fn dim_of(x: &FreeDgl) -> i32 {
    1 + x.lie().degrees().iter().copied().max().unwrap_or(-1)
}

/// Image of a chain of `C(L)` in `C(L')`.
fn embed(from: &ChainCoalgebra, to: &ChainCoalgebra, p: &Polynomial) -> Result<Polynomial> {
    let mut err = None;
    let out = p.substitute(to.degrees(), |g| {
        match from.dgl().lie().transport(&from.desuspend(g), to.dgl().lie()) {
            Ok(x) => to.suspend(&x),
            Err(e) => {
                err = Some(e);
                Polynomial::zero()
            }
        }
    });
    err.map_or(Ok(out), Err)
}

/// Rank of the quadratic part of `d` on generators of degree `n`.
fn quadratic_rank(a: &FreeCdga, n: i32) -> usize {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for g in a.gens_of_degree(n) {
        let v = SparseVec::from_pairs(a.d_part(g, 1).terms().map(|(m, c)| {
            let k = index.len();
            (*index.entry(m.clone()).or_insert(k), c.clone())
        }));
        let _ = ech.insert(&v);
    }
    ech.dim()
}

fn betti_within(a: &FreeCdga, cap: i32) -> Vec<usize> {
    let mut a = a.clone();
    a.set_cap(cap);
    a.betti(cap - 1)
}

/// First invariant telling two minimal models apart within `cap`.
pub fn distinguish(attached: &FreeCdga, product: &FreeCdga, cap: i32) -> Option<NonSplitting> {
    let top = cap - 1;
    for n in 1..=top {
        let (a, b) = (attached.gens_of_degree(n).len(), product.gens_of_degree(n).len());
        if a != b {
            return Some(NonSplitting { invariant: "generators".into(), degree: n, attached: a, product: b });
        }
    }
    for n in 1..=top {
        let (a, b) = (quadratic_rank(attached, n), quadratic_rank(product, n));
        if a != b {
            return Some(NonSplitting { invariant: "quadratic differential rank".into(), degree: n, attached: a, product: b });
        }
    }
    let (ba, bb) = (betti_within(attached, cap), betti_within(product, cap));
    (0..ba.len()).find(|&n| ba[n] != bb[n]).map(|n| NonSplitting {
        invariant: "betti".into(),
        degree: n as i32,
        attached: ba[n],
        product: bb[n],
    })
}

/// `(∧Z, d) ⊗ (∧(V⊗sw_α), 0)`.
fn product_model(reduced: &FreeCdga, y: &MinimalModel, k: i32) -> Result<FreeCdga> {
    let ya = y.cdga();
    let mut sw = FreeCdga::empty(reduced.cap());
    for v in ordered_y_gens(y) {
        sw.push(format!("{}.sw", ya.name(v)), ya.degree(v) - k - 1, Polynomial::zero())?;
    }
    reduced.tensor(&sw)
}

/// Decides the splitting for the cell `e^{k+1}` attached to `x` along the
/// cycle `z` of degree `k-1`.
pub fn splitting_check(x: &FreeDgl, z: &LieElement, y: &MinimalModel, cap: i32) -> Result<Verdict> {
    let k = z.degree + 1;
    if k < 1 {
        return Err(invalid("cells must have dimension at least 2"));
    }
    word_length(x, z)?;
    let wl = whitehead_length(y)?;
    let depth = d1_depth(y);
    let top = dim_of(x);
    let top2 = top.max(k + 1);
    let needed = (k + 1).max(top2);
    let lc = x.with_cap(top2)?;
    let zc = if z.is_zero() { z.clone() } else { x.lie().transport(z, lc.lie())? };
    let bl = bracket_length(&lc, &zc)?;
    if conn(y) < needed {
        return Ok(Verdict::HypothesisFails(FailureReport {
            hypothesis: FailedHypothesis::Connectivity { conn: conn(y), needed },
            bracket_length: bl,
            whitehead_length: wl,
            d1_depth: depth,
            certificate: None,
        }));
    }
    let l2 = lc.adjoin_cell(&format!("e{}", k + 1), &zc)?;
    let c1 = ChainCoalgebra::new(&lc);
    let c2 = ChainCoalgebra::new(&l2);
    let f1 = FiniteChains::new(c1.clone(), top, &[])?;
    let cell = (l2.lie().ngens() - 1) as GenId;
    let c_alpha = c2
        .cell_cycle(cell)
        .ok_or_else(|| Error::Hypothesis("the attaching class has nonzero Hurewicz image".into()))?;
    let mut cycles = Vec::new();
    let mut free = Vec::new();
    if top == top2 {
        for i in 0..f1.dim(top) {
            let e = embed(&c1, &c2, f1.element(top, i))?;
            match f1.kind(top, i) {
                AdaptedKind::Cycle(_) => cycles.push(e),
                AdaptedKind::Free => free.push(e),
                AdaptedKind::Boundary(_) => {}
            }
        }
    }
    cycles.push(c_alpha.clone());
    let f2 = FiniteChains::with_free(c2.clone(), top2, &cycles, &free)?;
    let bs1 = BsModel::new(y, f1)?;
    let red1 = minimal_reduce(&bs1)?;
    let bs2 = BsModel::new(y, f2)?;
    let red2 = minimal_reduce(&bs2)?;
    let product = product_model(&red1.model, y, k)?;
    let max_gen = product.max_degree();
    if cap <= max_gen {
        return Ok(Verdict::UnknownWithinCap {
            degree: max_gen,
            reason: format!("cap {cap} does not reach the generator degree {max_gen}"),
        });
    }
    let hypothesis_holds = match bl {
        Length::Infinity => true,
        Length::Finite(n) => n > wl,
    };
    if !hypothesis_holds {
        return Ok(Verdict::HypothesisFails(FailureReport {
            hypothesis: FailedHypothesis::BracketLength,
            bracket_length: bl,
            whitehead_length: wl,
            d1_depth: depth,
            certificate: distinguish(&red2.model, &product, cap),
        }));
    }
    let mut transcript = vec![format!("bl = {bl} > WL = {wl} (d1-depth {depth})")];
    // η̄ on the generators of the based model of X
    let a1 = bs1.cdga();
    let a2 = bs2.cdga();
    let f1 = bs1.chains();
    let f2 = bs2.chains();
    let mut eta = Vec::with_capacity(a1.ngens());
    for g in bs1.generators() {
        let e = embed(&c1, &c2, f1.element(g.n, g.i))?;
        let coords = f2.coords(g.n, &e).ok_or_else(|| internal("C''(L) does not embed in C''(L')"))?;
        let mut p = Polynomial::zero();
        for (j, c) in coords.iter() {
            p.add_term(Monomial::generator(bs2.id(BsGenerator { v: g.v, n: g.n, i: j })), c.clone());
        }
        eta.push(p);
    }
    let eta_of = |p: &Polynomial| p.substitute(a2.degrees(), |h| eta[h as usize].clone());
    for h in 0..a1.ngens() as GenId {
        if a2.d(&eta[h as usize]) != eta_of(a1.dv(h)) {
            return Err(internal(format!("restriction is not a chain map at {}", a1.name(h))));
        }
    }
    transcript.push(format!("restriction checked on {} generators", a1.ngens()));
    let mut psi: Vec<Polynomial> = red1.inclusion.iter().map(&eta_of).collect();
    // γ-cycles
    let n_alpha = c_alpha.homogeneous_degree(c2.degrees()).unwrap();
    let i_alpha = (0..f2.dim(n_alpha))
        .find(|&i| f2.element(n_alpha, i) == &c_alpha)
        .ok_or_else(|| internal("c_alpha missing from C''(L')"))?;
    let order = ordered_y_gens(y);
    let mut gammas = Vec::new();
    for (r, &v) in order.iter().enumerate() {
        let lead = Polynomial::generator(bs2.id(BsGenerator { v, n: n_alpha, i: i_alpha }));
        let target = a2.d(&lead).neg();
        let earlier: Vec<GenId> =
            (0..a2.ngens() as GenId).filter(|&h| order[..r].contains(&bs2.generator(h).v)).collect();
        let deg = a2.degree(bs2.id(BsGenerator { v, n: n_alpha, i: i_alpha }));
        let tail = match a2.solve_d(&earlier, deg, 2, &target, SOLVE_LIMIT) {
            None => {
                return Ok(Verdict::UnknownWithinCap {
                    degree: deg,
                    reason: format!("tail of gamma for {} too large", y.cdga().name(v)),
                })
            }
            Some(None) => {
                return Err(internal(format!("no closing tail for gamma of {}", y.cdga().name(v))))
            }
            Some(Some(t)) => t,
        };
        let gamma = lead.add(&tail);
        if !a2.d(&gamma).is_zero() {
            return Err(internal("gamma is not a cycle"));
        }
        transcript.push(format!("gamma_{} closed with {} tail terms", y.cdga().name(v), tail.len()));
        gammas.push((v, gamma.clone()));
        psi.push(gamma);
    }
    for g in 0..product.ngens() as GenId {
        let lhs = a2.d(&psi[g as usize]);
        let rhs = product.dv(g).substitute(a2.degrees(), |h| psi[h as usize].clone());
        if lhs != rhs {
            return Err(internal(format!("psi is not a chain map at {}", product.name(g))));
        }
    }
    transcript.push(format!("psi commutes with differentials on {} generators", product.ngens()));
    // linear part of r'ψ
    let r2 = &red2;
    if r2.model.ngens() != product.ngens() {
        return Err(internal("generator counts differ"));
    }
    for n in 1..=max_gen {
        let gens = product.gens_of_degree(n);
        let mut ech = Echelon::new();
        for &g in &gens {
            let lin = r2.retract(&psi[g as usize]).wordlength_part(1);
            let v = SparseVec::from_pairs(lin.terms().map(|(m, c)| (m.factors()[0] as usize, c.clone())));
            let _ = ech.insert(&v);
        }
        if ech.dim() != gens.len() || r2.model.gens_of_degree(n).len() != gens.len() {
            return Err(internal(format!("psi is not an isomorphism on indecomposables in degree {n}")));
        }
    }
    transcript.push("r'psi is an isomorphism of minimal models".into());
    let betti_product = betti_within(&product, cap);
    let betti_attached = betti_within(&r2.model, cap);
    if betti_product != betti_attached {
        return Err(internal("cohomology ranks differ"));
    }
    transcript.push(format!("cohomology ranks agree in degrees 0..={}", cap - 1));
    Ok(Verdict::Splits(Box::new(SplittingWitness {
        k,
        bracket_length: bl,
        whitehead_length: wl,
        d1_depth: depth,
        product,
        bs: bs2,
        reduced: red2,
        gammas,
        psi,
        betti_product,
        betti_attached,
        transcript,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;
    use crate::lie::FreeLie;

    fn s2() -> FreeDgl {
        FreeDgl::trivial(FreeLie::new(vec!["i".into()], vec![1], 4).unwrap()).unwrap()
    }

    fn ii(x: &FreeDgl, c: i64) -> LieElement {
        let i = x.lie().generator(0).unwrap();
        x.lie().bracket(&i, &i).scale(&q(c))
    }

    fn model(gens: &[(&str, i32)], dv: impl Fn(&FreeCdga) -> Vec<Polynomial>) -> MinimalModel {
        let mut a = FreeCdga::empty(40);
        for (n, d) in gens {
            a.push(*n, *d, Polynomial::zero()).unwrap();
        }
        let d = dv(&a);
        let names = a.names().to_vec();
        let degs = a.degrees().to_vec();
        MinimalModel::new(FreeCdga::new(names, degs, d, 40).unwrap()).unwrap()
    }

    #[test]
    fn cp2_into_s6_fails_with_certificate() {
        let y = model(&[("x", 6), ("y", 11)], |a| {
            vec![Polynomial::zero(), Polynomial::generator(0).pow(2, a.degrees())]
        });
        let x = s2();
        let Verdict::HypothesisFails(r) = splitting_check(&x, &ii(&x, -1), &y, 24).unwrap() else {
            panic!("expected a failed hypothesis")
        };
        assert_eq!(r.bracket_length, Length::Finite(1));
        assert_eq!((r.whitehead_length, r.d1_depth), (1, 1));
        assert!(r.certificate.is_some());
    }

    #[test]
    fn cp2_into_cubic_y_splits() {
        let y = model(&[("x1", 5), ("x2", 6), ("x3", 7), ("y", 17)], |a| {
            vec![
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::zero(),
                Polynomial::product_of(q(1), &[0, 1, 2], a.degrees()),
            ]
        });
        let x = s2();
        let v = splitting_check(&x, &ii(&x, -1), &y, 30).unwrap();
        let Verdict::Splits(w) = v else { panic!("expected a splitting, got {v:?}") };
        assert_eq!(w.betti_product.len(), 30);
        assert_eq!(w.gammas.len(), 4);
    }

    #[test]
    fn null_attaching_map_splits() {
        let y = model(&[("x", 6), ("y", 11)], |a| {
            vec![Polynomial::zero(), Polynomial::generator(0).pow(2, a.degrees())]
        });
        let x = s2();
        let v = splitting_check(&x, &LieElement::zero(2), &y, 20).unwrap();
        assert_eq!(v.name(), "Splits");
    }
}
