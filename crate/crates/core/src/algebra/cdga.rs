//! Free commutative differential graded algebras `(ΛV, d)`.

use std::collections::BTreeMap;

use num_traits::One;

use super::linalg::{kernel_and_image, Echelon, SparseVec};
use super::poly::{apply_derivation_raw, monomials_of_degree, GenId, Monomial, Polynomial};
use super::rational::Q;
use crate::error::{invalid, Result};

/// The monomial basis of one degree, with coordinates.
#[derive(Clone, Debug, Default)]
pub struct DegreeBasis {
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; panics if `p` leaves the basis.
    pub fn coords(&self, p: &Polynomial) -> SparseVec {
        SparseVec::from_pairs(p.terms().map(|(m, c)| {
            let i = self.position(m).unwrap_or_else(|| panic!("monomial outside basis: {m:?}"));
            (i, c.clone())
        }))
    }

    pub fn polynomial(&self, v: &SparseVec) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in v.iter() {
            p.add_term(self.monomials[i].clone(), c.clone());
        }
        p
    }
}

/// Cohomology of one degree: representatives of a basis.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub representatives: Vec<Polynomial>,
    cycles_mod_boundaries: Echelon,
    boundaries: Echelon,
    basis: DegreeBasis,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn class_of(&self, z: &Polynomial) -> Option<Vec<Q>> {
        let v = self.basis.coords(z);
        let (rem, _) = self.boundaries.reduce(&v);
        let combo = self.cycles_mod_boundaries.express(&rem)?;
        Some((0..self.dim()).map(|i| combo.get(i)).collect())
    }

    pub fn is_boundary(&self, z: &Polynomial) -> bool {
        self.boundaries.contains(&self.basis.coords(z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCdga {
    names: Vec<String>,
    degrees: Vec<i32>,
    differential: Vec<Polynomial>,
    cap: i32,
}

impl FreeCdga {
    pub fn empty(cap: i32) -> Self {
        Self { names: vec![], degrees: vec![], differential: vec![], cap }
    }

    pub fn new(
        names: Vec<String>,
        degrees: Vec<i32>,
        differential: Vec<Polynomial>,
        cap: i32,
    ) -> Result<Self> {
        if names.len() != degrees.len() || names.len() != differential.len() {
            return Err(invalid("names, degrees and differentials differ in length"));
        }
        let a = Self { names, degrees, differential, cap };
        a.validate()?;
        Ok(a)
    }

    /// Appends a generator; `dv` may only involve earlier generators.
    pub fn push(&mut self, name: impl Into<String>, degree: i32, dv: Polynomial) -> Result<GenId> {
        let id = self.degrees.len() as GenId;
        self.names.push(name.into());
        self.degrees.push(degree);
        self.differential.push(dv);
        if let Err(e) = self.check_generator(id) {
            self.names.pop();
            self.degrees.pop();
            self.differential.pop();
            return Err(e);
        }
        Ok(id)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &self.names {
            if !seen.insert(n) {
                return Err(invalid(format!("duplicate generator {n}")));
            }
        }
        (0..self.ngens() as GenId).try_for_each(|g| self.check_generator(g))
    }

    fn check_generator(&self, g: GenId) -> Result<()> {
        let name = &self.names[g as usize];
        let deg = self.degree(g);
        if deg < 1 {
            return Err(invalid(format!("generator {name} has degree {deg} < 1")));
        }
        let dv = &self.differential[g as usize];
        if dv.support().any(|h| h as usize >= self.ngens()) {
            return Err(invalid(format!("d{name} uses an unknown generator")));
        }
        if let Some(e) = dv.homogeneous_degree(&self.degrees) {
            if e != deg + 1 {
                return Err(invalid(format!("d{name} has degree {e}, expected {}", deg + 1)));
            }
        } else if !dv.is_zero() {
            return Err(invalid(format!("d{name} is not homogeneous")));
        }
        if dv.support().any(|h| h == g) {
            return Err(invalid(format!("d{name} involves {name}")));
        }
        if deg < self.cap && !self.d(dv).is_zero() {
            return Err(invalid(format!("d^2 {name} != 0")));
        }
        Ok(())
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn set_cap(&mut self, cap: i32) {
        self.cap = cap;
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, g: GenId) -> i32 {
        self.degrees[g as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g as usize]
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    pub fn dv(&self, g: GenId) -> &Polynomial {
        &self.differential[g as usize]
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn gen(&self, g: GenId) -> Polynomial {
        Polynomial::generator(g)
    }

    pub fn gens_of_degree(&self, n: i32) -> Vec<GenId> {
        (0..self.ngens() as GenId).filter(|&g| self.degree(g) == n).collect()
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        apply_derivation_raw(&|g| self.differential[g as usize].clone(), 1, p, &self.degrees)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b, &self.degrees)
    }

    /// Applies the degree-`r` derivation determined by `values`.
    pub fn apply_derivation(&self, values: &[Polynomial], r: i32, p: &Polynomial) -> Result<Polynomial> {
        if values.len() != self.ngens() {
            return Err(invalid("derivation needs one value per generator"));
        }
        for (g, v) in values.iter().enumerate() {
            if let Some(e) = v.homogeneous_degree(&self.degrees) {
                if e != self.degrees[g] + r {
                    return Err(invalid(format!("derivation value on {} has wrong degree", self.names[g])));
                }
            } else if !v.is_zero() {
                return Err(invalid("inhomogeneous derivation value"));
            }
        }
        Ok(apply_derivation_raw(&|g| values[g as usize].clone(), r, p, &self.degrees))
    }

    pub fn basis(&self, n: i32) -> DegreeBasis {
        let ids: Vec<GenId> =
            (0..self.ngens() as GenId).filter(|&g| self.degree(g) <= n).collect();
        DegreeBasis::new(monomials_of_degree(&ids, &self.degrees, n))
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).len()
    }

    pub fn cohomology(&self, n: i32) -> CohomologyGroup {
        let basis = self.basis(n);
        let next = self.basis(n + 1);
        let prev = self.basis(n - 1);
        let images: Vec<SparseVec> =
            basis.monomials.iter().map(|m| next.coords(&self.d(&Polynomial::term(Q::one(), m.clone())))).collect();
        let (kernel, _) = kernel_and_image(&images);
        let mut boundaries = Echelon::new();
        for m in &prev.monomials {
            let _ = boundaries.insert(&basis.coords(&self.d(&Polynomial::term(Q::one(), m.clone()))));
        }
        let mut span = boundaries.clone();
        let mut cycles_mod_boundaries = Echelon::new();
        let mut representatives = Vec::new();
        for k in kernel {
            let z = basis.polynomial(&k);
            let v = basis.coords(&z);
            if span.insert(&v).is_ok() {
                let (rem, _) = boundaries.reduce(&v);
                let _ = cycles_mod_boundaries.insert(&rem);
                representatives.push(z);
            }
        }
        CohomologyGroup { degree: n, representatives, cycles_mod_boundaries, boundaries, basis }
    }

    /// Betti numbers in degrees `0..=top`.
    pub fn betti(&self, top: i32) -> Vec<usize> {
        (0..=top).map(|n| self.cohomology(n).dim()).collect()
    }

    /// `true` when every `dv` is decomposable.
    pub fn is_minimal(&self) -> bool {
        self.differential.iter().all(|p| p.min_wordlength().is_none_or(|w| w >= 2))
    }

    /// Wordlength-`i+1` part of `dv`, so that `d = Σ d_i`.
    pub fn d_part(&self, g: GenId, i: usize) -> Polynomial {
        self.differential[g as usize].wordlength_part(i + 1)
    }

    /// Some `x ∈ Q[ids]` of degree `n` and wordlength at least `min_wl`
    /// with `dx = target`, if one exists. Gives up (`None`) past `limit`
    /// candidate monomials.
    pub fn solve_d(
        &self,
        ids: &[GenId],
        n: i32,
        min_wl: usize,
        target: &Polynomial,
        limit: usize,
    ) -> Option<Option<Polynomial>> {
        if target.is_zero() {
            return Some(Some(Polynomial::zero()));
        }
        let mut monos = monomials_of_degree(ids, &self.degrees, n);
        monos.retain(|m| m.wordlength() >= min_wl);
        if monos.len() > limit {
            return None;
        }
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut coords = |p: &Polynomial| {
            SparseVec::from_pairs(p.terms().map(|(m, c)| {
                let k = index.len();
                (*index.entry(m.clone()).or_insert(k), c.clone())
            }))
        };
        let mut ech = Echelon::new();
        for m in &monos {
            let img = coords(&self.d(&Polynomial::term(Q::one(), m.clone())));
            let _ = ech.insert(&img);
        }
        let t = coords(target);
        let Some(combo) = ech.express(&t) else { return Some(None) };
        let mut x = Polynomial::zero();
        for (k, c) in combo.iter() {
            x.add_term(monos[k].clone(), c.clone());
        }
        Some(Some(x))
    }

    /// The sub-CDGA on the first `k` generators.
    pub fn truncate_gens(&self, k: usize) -> FreeCdga {
        Self {
            names: self.names[..k].to_vec(),
            degrees: self.degrees[..k].to_vec(),
            differential: self.differential[..k].to_vec(),
            cap: self.cap,
        }
    }

    /// Tensor product with disjoint generator sets; `other`'s ids are shifted.
    pub fn tensor(&self, other: &FreeCdga) -> Result<FreeCdga> {
        let shift = self.ngens() as GenId;
        let mut out = self.clone();
        out.cap = self.cap.min(other.cap);
        for g in 0..other.ngens() as GenId {
            let dv = other.dv(g).substitute(&out.degrees_with(other), |h| Polynomial::generator(h + shift));
            out.names.push(other.name(g).to_string());
            out.degrees.push(other.degree(g));
            out.differential.push(dv);
        }
        out.validate()?;
        Ok(out)
    }

    fn degrees_with(&self, other: &FreeCdga) -> Vec<i32> {
        self.degrees.iter().chain(other.degrees.iter()).copied().collect()
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display(&|g| self.names[g as usize].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn cp2() -> FreeCdga {
        let mut a = FreeCdga::empty(12);
        let x = a.push("x", 2, Polynomial::zero()).unwrap();
        let x3 = Polynomial::generator(x).pow(3, a.degrees());
        a.push("y", 5, x3).unwrap();
        a
    }

    #[test]
    fn cp2_cohomology() {
        assert_eq!(cp2().betti(8), vec![1, 0, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn rejects_d_squared_nonzero() {
        let mut a = FreeCdga::empty(10);
        let x = a.push("x", 2, Polynomial::zero()).unwrap();
        a.push("y", 3, Polynomial::generator(x).pow(2, a.degrees())).unwrap();
        // dz = y has d^2 z = x^2 != 0
        assert!(a.push("z", 2, Polynomial::generator(1)).is_err());
    }

    #[test]
    fn class_coordinates() {
        let a = cp2();
        let h4 = a.cohomology(4);
        let x2 = Polynomial::generator(0).pow(2, a.degrees()).scale(&q(3));
        assert_eq!(h4.class_of(&x2), Some(vec![q(3)]));
    }
}
