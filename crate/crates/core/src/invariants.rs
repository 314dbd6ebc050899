//! Invariants of minimal Sullivan models: the d₁-filtration, the homotopy
//! Lie algebra, Whitehead length, d-length and cup length.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::cdga::{CohomologyGroup, FreeCdga};
use crate::algebra::linalg::{kernel_and_image, Echelon, SparseVec};
use crate::algebra::poly::{GenId, Polynomial};
use crate::algebra::rational::{sign, Q};
use crate::error::{internal, invalid, Result};
use crate::lie::{GradedLieAlgebra, Length, LieElement};

/// A minimal Sullivan algebra of a simply connected space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    cdga: FreeCdga,
}

impl MinimalModel {
    pub fn new(cdga: FreeCdga) -> Result<Self> {
        if let Some(g) = (0..cdga.ngens() as GenId).find(|&g| cdga.degree(g) < 2) {
            return Err(invalid(format!("generator {} has degree < 2", cdga.name(g))));
        }
        if !cdga.is_minimal() {
            return Err(invalid("differential has a nonzero linear part"));
        }
        Ok(Self { cdga })
    }

    pub fn cdga(&self) -> &FreeCdga {
        &self.cdga
    }

    pub fn into_cdga(self) -> FreeCdga {
        self.cdga
    }

    /// `dim π_n(Y) ⊗ Q = dim V^n`.
    pub fn homotopy_rank(&self, n: i32) -> usize {
        self.cdga.gens_of_degree(n).len()
    }

    /// The quadratic part `d₁v` of a linear combination of generators.
    pub fn d1(&self, v: &SparseVec) -> Polynomial {
        let mut out = Polynomial::zero();
        for (g, c) in v.iter() {
            out.add_assign_scaled(&self.cdga.d_part(g as GenId, 1), c);
        }
        out
    }
}

/// Subspaces of `V` as spans of generator-coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Filtration {
    /// `levels[i]` is a basis of `V_i`.
    pub levels: Vec<Vec<SparseVec>>,
}

impl D1Filtration {
    pub fn dim(&self, i: usize) -> usize {
        self.levels.get(i).map_or_else(|| self.levels.last().map_or(0, Vec::len), Vec::len)
    }

    /// Greatest `k` with `V_{k-1} ⊊ V_k` (`V_{-1} = 0`).
    pub fn depth(&self) -> u32 {
        let mut k = 0;
        for i in 0..self.levels.len() {
            let prev = if i == 0 { 0 } else { self.levels[i - 1].len() };
            if self.levels[i].len() > prev {
                k = i as u32;
            }
        }
        k
    }
}

fn span_of_products(m: &MinimalModel, basis: &[SparseVec]) -> Vec<Polynomial> {
    let a = m.cdga();
    let lin = |v: &SparseVec| {
        let mut p = Polynomial::zero();
        for (g, c) in v.iter() {
            p.add_assign_scaled(&Polynomial::generator(g as GenId), c);
        }
        p
    };
    let mut prods = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let p = a.mul(&lin(&basis[i]), &lin(&basis[j]));
            if !p.is_zero() {
                prods.push(p);
            }
        }
    }
    prods
}

/// `V_0 = ker d₁`, `V_i = {v : d₁v ∈ ∧²V_{i-1}}`, until it stabilizes.
pub fn d1_filtration(m: &MinimalModel) -> D1Filtration {
    let a = m.cdga();
    let n = a.ngens();
    let mut levels: Vec<Vec<SparseVec>> = Vec::new();
    let mut prev: Vec<SparseVec> = Vec::new();
    loop {
        let prods = span_of_products(m, &prev);
        let mut level = Vec::new();
        let degs: std::collections::BTreeSet<i32> = a.degrees().iter().copied().collect();
        for deg in degs {
            let gens = a.gens_of_degree(deg);
            let target = a.basis(deg + 1);
            let mut span = Echelon::new();
            for p in &prods {
                if p.homogeneous_degree(a.degrees()) == Some(deg + 1) {
                    let _ = span.insert(&target.coords(p));
                }
            }
            let rems: Vec<SparseVec> = gens
                .iter()
                .map(|&g| span.reduce(&target.coords(&a.d_part(g, 1))).0)
                .collect();
            let (kernel, _) = kernel_and_image(&rems);
            for k in kernel {
                level.push(SparseVec::from_pairs(k.iter().map(|(i, c)| (gens[i] as usize, c.clone()))));
            }
        }
        let done = level.len() == prev.len() || levels.len() > n + 1;
        levels.push(level.clone());
        if done {
            levels.pop();
            if levels.is_empty() {
                levels.push(level);
            }
            break;
        }
        prev = level;
    }
    D1Filtration { levels }
}

pub fn d1_depth(m: &MinimalModel) -> u32 {
    d1_filtration(m).depth()
}

/// `⟨v; sx_u⟩ = (-1)^{|v|} δ_{vu}` extended to quadratic monomials.
fn trilinear(m: &MinimalModel, p: &Polynomial, a: GenId, b: GenId) -> Q {
    let cdga = m.cdga();
    let pair = |v: GenId, u: GenId| if v == u { sign(cdga.degree(v) as i64) } else { Q::zero() };
    let mut out = Q::zero();
    for (mono, c) in p.terms() {
        let [vi, vj] = mono.factors() else { continue };
        let (vi, vj) = (*vi, *vj);
        let t = pair(vi, a) * pair(vj, b)
            + sign((cdga.degree(vi) * cdga.degree(vj)) as i64) * pair(vj, a) * pair(vi, b);
        out += c * t;
    }
    out
}

/// The homotopy Lie algebra, with `x_u` of degree `|u| - 1` dual to each generator `u`.
pub fn homotopy_lie(m: &MinimalModel) -> Result<GradedLieAlgebra> {
    let a = m.cdga();
    let cap = (a.max_degree() - 1).max(1);
    let mut g = GradedLieAlgebra::new(cap);
    let mut index: BTreeMap<GenId, usize> = BTreeMap::new();
    for d in 1..=cap {
        let gens = a.gens_of_degree(d + 1);
        for (i, &u) in gens.iter().enumerate() {
            index.insert(u, i);
        }
        g.set_basis(d, gens.iter().map(|&u| format!("x_{}", a.name(u))).collect());
    }
    let n = a.ngens() as GenId;
    for ua in 0..n {
        for ub in 0..n {
            let (da, db) = (a.degree(ua) - 1, a.degree(ub) - 1);
            if da + db > cap {
                continue;
            }
            let mut coords = SparseVec::new();
            for v in a.gens_of_degree(da + db + 1) {
                let t = trilinear(m, &a.d_part(v, 1), ua, ub);
                if !t.is_zero() {
                    let c = sign(db as i64) * t;
                    coords = coords.add_scaled(&c, &SparseVec::unit(index[&v]));
                }
            }
            g.set_bracket(da, index[&ua], db, index[&ub], coords);
        }
    }
    g.check_axioms()?;
    Ok(g)
}

pub fn whitehead_length(m: &MinimalModel) -> Result<u32> {
    Ok(homotopy_lie(m)?.whitehead_length())
}

/// `1 + min{i : d_i ≢ 0}`, or infinity for `d = 0`.
pub fn d_length(a: &FreeCdga) -> Length {
    (0..a.ngens() as GenId)
        .filter_map(|g| a.dv(g).min_wordlength())
        .min()
        .map_or(Length::Infinity, |w| Length::Finite(w as u32))
}

/// Greatest `n` with a nonzero `n`-fold product in `H^+`, searched through degree `top`.
pub fn cup_length(a: &FreeCdga, top: i32) -> u32 {
    let groups: BTreeMap<i32, CohomologyGroup> = (1..=top).map(|n| (n, a.cohomology(n))).collect();
    let mut level: BTreeMap<i32, Vec<Polynomial>> =
        groups.iter().map(|(&n, h)| (n, h.representatives.clone())).filter(|(_, v)| !v.is_empty()).collect();
    let mut len = 0;
    while !level.is_empty() {
        len += 1;
        let mut next: BTreeMap<i32, Vec<Polynomial>> = BTreeMap::new();
        for (&d1, reps) in &groups {
            for (&d2, prods) in &level {
                let n = d1 + d2;
                if n > top {
                    continue;
                }
                let h = &groups[&n];
                let entry = next.entry(n).or_default();
                let mut span = Echelon::new();
                for p in entry.iter() {
                    let c = h.class_of(p).expect("product of cocycles");
                    let _ = span.insert(&SparseVec::from_dense(&c));
                }
                for r in &reps.representatives {
                    for p in prods {
                        let x = a.mul(r, p);
                        let Some(c) = h.class_of(&x) else { continue };
                        if span.insert(&SparseVec::from_dense(&c)).is_ok() {
                            entry.push(x);
                        }
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_empty());
        level = next;
    }
    len
}

/// `H^*(F_*(X, Y))` is free iff `d-length(Y) > c(X)`, for formal `X`.
pub fn free_cohomology_test(cup_length_x: u32, d_length_y: Length) -> bool {
    match d_length_y {
        Length::Infinity => true,
        Length::Finite(l) => l > cup_length_x,
    }
}

/// `V₀` is the annihilator of `s[L, L]` under the pairing.
pub fn check_lemma_v0(m: &MinimalModel) -> Result<()> {
    let a = m.cdga();
    let g = homotopy_lie(m)?;
    let filt = d1_filtration(m);
    let mut v0 = Echelon::new();
    for v in &filt.levels[0] {
        let _ = v0.insert(v);
    }
    for d in 1..=g.cap() {
        let gens = a.gens_of_degree(d + 1);
        let brackets = g.lower_central_series(1, d);
        // v annihilates every s y with y ∈ [L,L]_d
        let rows: Vec<SparseVec> = gens
            .iter()
            .enumerate()
            .map(|(i, _)| SparseVec::from_pairs(brackets.rows().iter().enumerate().map(|(r, y)| (r, y.get(i)))))
            .collect();
        let (kernel, _) = kernel_and_image(&rows);
        let v0_here = filt.levels[0].iter().filter(|v| v.iter().all(|(g, _)| a.degree(g as GenId) == d + 1)).count();
        if kernel.len() != v0_here {
            return Err(internal(format!("annihilator of s[L,L] differs from V0 in degree {}", d + 1)));
        }
        for k in kernel {
            let v = SparseVec::from_pairs(k.iter().map(|(i, c)| (gens[i] as usize, c.clone())));
            if !v0.contains(&v) {
                return Err(internal(format!("annihilator of s[L,L] differs from V0 in degree {}", d + 1)));
            }
        }
    }
    Ok(())
}

/// For `u ∈ V_{n+1}`, `d₁u ∈ V₀·V_n + ∧²V_{n-1}`.
pub fn check_lemma_decomposition(m: &MinimalModel) -> Result<()> {
    let a = m.cdga();
    let filt = d1_filtration(m);
    let lin = |v: &SparseVec| {
        let mut p = Polynomial::zero();
        for (g, c) in v.iter() {
            p.add_assign_scaled(&Polynomial::generator(g as GenId), c);
        }
        p
    };
    for n in 1..filt.levels.len().saturating_sub(1) {
        let mut allowed: Vec<Polynomial> = Vec::new();
        for e in &filt.levels[0] {
            for w in &filt.levels[n] {
                allowed.push(a.mul(&lin(e), &lin(w)));
            }
        }
        let prods = span_of_products(m, &filt.levels[n - 1]);
        allowed.extend(prods);
        for u in &filt.levels[n + 1] {
            let du = m.d1(u);
            let Some(deg) = du.homogeneous_degree(a.degrees()) else { continue };
            let basis = a.basis(deg);
            let mut span = Echelon::new();
            for p in &allowed {
                if p.homogeneous_degree(a.degrees()) == Some(deg) {
                    let _ = span.insert(&basis.coords(p));
                }
            }
            if !span.contains(&basis.coords(&du)) {
                return Err(internal(format!("d1 of an element of V_{} does not decompose", n + 1)));
            }
        }
    }
    Ok(())
}

/// A homogeneous element `Σ c_u x_u` of the homotopy Lie algebra.
pub fn dual_element(m: &MinimalModel, coeffs: &[(GenId, Q)]) -> Option<LieElement> {
    let a = m.cdga();
    let d = a.degree(coeffs.first()?.0);
    let gens = a.gens_of_degree(d);
    let mut out = LieElement::zero(d - 1);
    for (u, c) in coeffs {
        let i = gens.iter().position(|g| g == u)?;
        out = out.add_scaled(c, &LieElement::basis(d - 1, i));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(spec: &[(&str, i32)], d: &dyn Fn(&FreeCdga, usize) -> Polynomial) -> MinimalModel {
        let mut a = FreeCdga::empty(30);
        for (i, (n, k)) in spec.iter().enumerate() {
            let dv = d(&a, i);
            a.push(*n, *k, dv).unwrap();
        }
        MinimalModel::new(a).unwrap()
    }

    fn g(i: u32) -> Polynomial {
        Polynomial::generator(i)
    }

    #[test]
    fn even_sphere() {
        let m = model(&[("x", 4), ("y", 7)], &|a, i| if i == 1 { a.mul(&g(0), &g(0)) } else { Polynomial::zero() });
        let f = d1_filtration(&m);
        assert_eq!((f.dim(0), f.dim(1)), (1, 2));
        assert_eq!(d1_depth(&m), 1);
        assert_eq!(whitehead_length(&m).unwrap(), 1);
        assert_eq!(d_length(m.cdga()), Length::Finite(2));
        assert_eq!(cup_length(m.cdga(), 12), 1);
        check_lemma_v0(&m).unwrap();
    }

    #[test]
    fn depth_two() {
        let m = model(&[("a", 3), ("b", 3), ("c", 5), ("e", 7)], &|a, i| match i {
            2 => a.mul(&g(0), &g(1)),
            3 => a.mul(&g(0), &g(2)),
            _ => Polynomial::zero(),
        });
        assert_eq!(d1_depth(&m), 2);
        assert_eq!(whitehead_length(&m).unwrap(), 2);
        check_lemma_v0(&m).unwrap();
        check_lemma_decomposition(&m).unwrap();
    }

    #[test]
    fn cubic_only() {
        let m = model(&[("x1", 3), ("x2", 5), ("x3", 7), ("y", 14)], &|a, i| {
            if i == 3 { a.mul(&a.mul(&g(0), &g(1)), &g(2)) } else { Polynomial::zero() }
        });
        assert_eq!(d1_depth(&m), 0);
        assert_eq!(d_length(m.cdga()), Length::Finite(3));
        assert!(!free_cohomology_test(3, Length::Finite(3)));
        assert!(free_cohomology_test(2, Length::Finite(3)));
    }

    #[test]
    fn cp2_cup_length() {
        let m = model(&[("x", 2), ("y", 5)], &|a, i| if i == 1 { g(0).pow(3, a.degrees()) } else { Polynomial::zero() });
        assert_eq!(cup_length(m.cdga(), 10), 2);
    }
}
