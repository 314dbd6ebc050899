//! Positively graded Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::linalg::{Echelon, SparseVec};
use crate::algebra::rational::{sign, Q};
use crate::error::{internal, Result};

/// A homogeneous element, in coordinates over the degree's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub degree: i32,
    pub coords: SparseVec,
}

impl LieElement {
    pub fn zero(degree: i32) -> Self {
        Self { degree, coords: SparseVec::new() }
    }

    pub fn basis(degree: i32, i: usize) -> Self {
        Self { degree, coords: SparseVec::unit(i) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self { degree: self.degree, coords: self.coords.scale(s) }
    }

    pub fn add_scaled(&self, s: &Q, other: &LieElement) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        Self { degree: self.degree, coords: self.coords.add_scaled(s, &other.coords) }
    }

    pub fn add(&self, other: &LieElement) -> Self {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &LieElement) -> Self {
        self.add_scaled(&-Q::one(), other)
    }
}

/// Greatest `n` with `x ∈ [G,G]^{(n)}`, or infinity for `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u32),
    Infinity,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinity => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    cap: i32,
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
    /// `[e_{a,i}, e_{b,j}]`, nonzero entries only.
    table: BTreeMap<(i32, usize, i32, usize), SparseVec>,
}

impl GradedLieAlgebra {
    pub fn new(cap: i32) -> Self {
        Self { cap, ..Self::default() }
    }

    /// Declares the basis of degree `d`.
    pub fn set_basis(&mut self, d: i32, labels: Vec<String>) {
        assert!(d >= 1 && d <= self.cap, "degree {d} outside 1..={}", self.cap);
        self.dims.insert(d, labels.len());
        self.labels.insert(d, labels);
    }

    /// Records `[e_{a,i}, e_{b,j}] = value` together with the antisymmetric partner.
    pub fn set_bracket(&mut self, a: i32, i: usize, b: i32, j: usize, value: SparseVec) {
        let partner = value.scale(&-sign((a * b) as i64));
        if value.is_zero() {
            self.table.remove(&(a, i, b, j));
            self.table.remove(&(b, j, a, i));
        } else {
            self.table.insert((a, i, b, j), value);
            self.table.insert((b, j, a, i), partner);
        }
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn dim(&self, d: i32) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.iter().filter(|(_, &n)| n > 0).map(|(&d, _)| d)
    }

    pub fn label(&self, d: i32, i: usize) -> &str {
        &self.labels[&d][i]
    }

    pub fn basis_element(&self, d: i32, i: usize) -> LieElement {
        LieElement::basis(d, i)
    }

    pub fn try_bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        let d = x.degree + y.degree;
        if d > self.cap {
            return Err(crate::error::Error::CapExceeded { degree: d, cap: self.cap });
        }
        let mut out = SparseVec::new();
        for (i, a) in x.coords.iter() {
            for (j, b) in y.coords.iter() {
                if let Some(v) = self.table.get(&(x.degree, i, y.degree, j)) {
                    out = out.add_scaled(&(a * b), v);
                }
            }
        }
        Ok(LieElement { degree: d, coords: out })
    }

    /// Bracket; panics beyond the cap.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        self.try_bracket(x, y).expect("bracket beyond cap")
    }

    /// Checks graded antisymmetry and the graded Jacobi identity on all
    /// basis pairs and triples within the cap.
    pub fn check_axioms(&self) -> Result<()> {
        let degs: Vec<i32> = self.degrees().collect();
        for &a in &degs {
            for &b in &degs {
                if a + b > self.cap {
                    continue;
                }
                for i in 0..self.dim(a) {
                    for j in 0..self.dim(b) {
                        let (x, y) = (LieElement::basis(a, i), LieElement::basis(b, j));
                        let xy = self.bracket(&x, &y);
                        let yx = self.bracket(&y, &x).scale(&sign((a * b) as i64));
                        if !xy.add(&yx).is_zero() {
                            return Err(internal(format!("antisymmetry fails on ({a},{i}),({b},{j})")));
                        }
                    }
                }
            }
        }
        for &a in &degs {
            for &b in &degs {
                for &c in &degs {
                    if a + b + c > self.cap {
                        continue;
                    }
                    for i in 0..self.dim(a) {
                        for j in 0..self.dim(b) {
                            for k in 0..self.dim(c) {
                                let x = LieElement::basis(a, i);
                                let y = LieElement::basis(b, j);
                                let z = LieElement::basis(c, k);
                                let j1 = self.bracket(&x, &self.bracket(&y, &z));
                                let j2 = self.bracket(&self.bracket(&x, &y), &z);
                                let j3 = self.bracket(&y, &self.bracket(&x, &z)).scale(&sign((a * b) as i64));
                                if !j1.sub(&j2).sub(&j3).is_zero() {
                                    return Err(internal(format!(
                                        "Jacobi fails on ({a},{i}),({b},{j}),({c},{k})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `[G,G]^{(n)} ∩ G_d` as an echelon basis (coordinates over `G_d`).
    pub fn lower_central_series(&self, n: u32, d: i32) -> Echelon {
        self.lcs_tower(d, n).pop().unwrap()
    }

    /// `[S^0_d, S^1_d, …, S^top_d]`, computed with memoization over degrees.
    fn lcs_tower(&self, d: i32, top: u32) -> Vec<Echelon> {
        let mut memo: BTreeMap<(u32, i32), Echelon> = BTreeMap::new();
        (0..=top).map(|l| self.lcs_memo(l, d, &mut memo)).collect()
    }

    fn lcs_memo(&self, l: u32, d: i32, memo: &mut BTreeMap<(u32, i32), Echelon>) -> Echelon {
        if let Some(e) = memo.get(&(l, d)) {
            return e.clone();
        }
        let mut ech = Echelon::new();
        if l == 0 {
            for i in 0..self.dim(d) {
                let _ = ech.insert(&SparseVec::unit(i));
            }
        } else {
            let degs: Vec<i32> = self.degrees().filter(|&a| a < d).collect();
            for a in degs {
                let inner = self.lcs_memo(l - 1, d - a, memo);
                for i in 0..self.dim(a) {
                    for row in inner.rows() {
                        let x = LieElement::basis(a, i);
                        let y = LieElement { degree: d - a, coords: row.clone() };
                        let _ = ech.insert(&self.bracket(&x, &y).coords);
                    }
                }
            }
        }
        memo.insert((l, d), ech.clone());
        ech
    }

    pub fn bracket_length(&self, x: &LieElement) -> Length {
        if x.is_zero() {
            return Length::Infinity;
        }
        let d = x.degree;
        let tower = self.lcs_tower(d, d.max(0) as u32);
        let n = tower.iter().take_while(|e| e.contains(&x.coords)).count();
        Length::Finite(n as u32 - 1)
    }

    /// Greatest `n` with `[G,G]^{(n)}` nonzero in some degree within the cap.
    pub fn whitehead_length(&self) -> u32 {
        let mut best = 0;
        for d in self.degrees().collect::<Vec<_>>() {
            let tower = self.lcs_tower(d, d as u32);
            let n = tower.iter().take_while(|e| e.dim() > 0).count();
            best = best.max(n as u32 - 1);
        }
        best
    }

    pub fn display(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = x
            .coords
            .iter()
            .map(|(i, c)| {
                format!("{}{}", crate::algebra::rational::coefficient_prefix(c), self.label(x.degree, i))
            })
            .collect();
        terms.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    /// Free Lie algebra on one odd generator of degree 1, up to degree 3.
    fn free_odd() -> GradedLieAlgebra {
        let mut g = GradedLieAlgebra::new(3);
        g.set_basis(1, vec!["i".into()]);
        g.set_basis(2, vec!["[i,i]".into()]);
        g.set_bracket(1, 0, 1, 0, SparseVec::unit(0));
        g
    }

    #[test]
    fn axioms_and_lengths() {
        let g = free_odd();
        g.check_axioms().unwrap();
        let ii = LieElement::basis(2, 0);
        assert_eq!(g.bracket_length(&ii), Length::Finite(1));
        assert_eq!(g.bracket_length(&ii.scale(&q(-5))), Length::Finite(1));
        assert_eq!(g.bracket_length(&LieElement::basis(1, 0)), Length::Finite(0));
        assert_eq!(g.bracket_length(&LieElement::zero(2)), Length::Infinity);
        assert_eq!(g.lower_central_series(2, 2).dim(), 0);
        assert_eq!(g.whitehead_length(), 1);
    }

    #[test]
    fn abelian_has_trivial_series() {
        let mut g = GradedLieAlgebra::new(4);
        g.set_basis(2, vec!["a".into(), "b".into()]);
        assert_eq!(g.lower_central_series(1, 2).dim(), 0);
        assert_eq!(g.whitehead_length(), 0);
    }
}
