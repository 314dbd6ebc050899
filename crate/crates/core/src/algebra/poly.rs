//! Graded-commutative polynomials with Koszul signs.
//!
//! Generators are plain `u32` ids; their degrees come from a degree table
//! (`&[i32]`, indexed by id) that the owning algebra supplies. A monomial is
//! the nondecreasing list of its factors' ids. Odd generators square to zero,
//! so a monomial never repeats an odd id.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::rational::{coefficient_prefix, Q};

pub type GenId = u32;

#[inline]
pub(crate) fn is_odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[GenId; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn generator(g: GenId) -> Self {
        Self(smallvec::smallvec![g])
    }

    /// Wraps an already canonical factor list.
    pub(crate) fn from_sorted(factors: impl IntoIterator<Item = GenId>) -> Self {
        let m = Self(factors.into_iter().collect());
        debug_assert!(m.0.windows(2).all(|w| w[0] <= w[1]));
        m
    }

    pub fn factors(&self) -> &[GenId] {
        &self.0
    }

    pub fn wordlength(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, degrees: &[i32]) -> i32 {
        self.0.iter().map(|&g| degrees[g as usize]).sum()
    }

    /// Product of two canonical monomials with its Koszul sign, or `None`
    /// when an odd generator would repeat.
    pub fn mul(&self, other: &Monomial, degrees: &[i32]) -> Option<(bool, Monomial)> {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let mut negative = false;
        let (a, b) = (&self.0, &other.0);
        // odd factors of `a` not yet emitted
        let mut odd_left = a.iter().filter(|&&g| is_odd(degrees[g as usize])).count();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
                if j < b.len() && a[i] == b[j] && is_odd(degrees[a[i] as usize]) {
                    return None;
                }
                if is_odd(degrees[a[i] as usize]) {
                    odd_left -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over every remaining factor of `a`
                if is_odd(degrees[b[j] as usize]) && odd_left % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        Some((negative, Monomial(out)))
    }
}

/// Sorts an arbitrary product of generators into canonical order.
/// Returns `None` when the product is zero (a repeated odd generator),
/// otherwise the sign (`true` = negative) and the canonical monomial.
pub fn normalize_monomial(factors: &[GenId], degrees: &[i32]) -> Option<(bool, Monomial)> {
    let mut negative = false;
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (a, b) = (factors[i], factors[j]);
            let (da, db) = (degrees[a as usize], degrees[b as usize]);
            if a == b && is_odd(da) {
                return None;
            }
            if a > b && is_odd(da) && is_odd(db) {
                negative = !negative;
            }
        }
    }
    let mut sorted: SmallVec<[GenId; 4]> = factors.iter().copied().collect();
    sorted.sort_unstable();
    Some((negative, Monomial(sorted)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn generator(g: GenId) -> Self {
        Self::term(Q::one(), Monomial::generator(g))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// Builds `c * g1 * g2 * ...` from factors in any order.
    pub fn product_of(c: Q, factors: &[GenId], degrees: &[i32]) -> Self {
        match normalize_monomial(factors, degrees) {
            None => Self::zero(),
            Some((neg, m)) => Self::term(if neg { -c } else { c }, m),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Polynomial, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_assign_scaled(other, &Q::one());
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        p.add_assign_scaled(other, &-Q::one());
        p
    }

    pub fn scale(&self, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Q::one())
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Polynomial, degrees: &[i32]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.mul(m2, degrees) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m2: &Monomial, degrees: &[i32]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            if let Some((neg, m)) = m1.mul(m2, degrees) {
                out.add_term(m, if neg { -c1.clone() } else { c1.clone() });
            }
        }
        out
    }

    pub fn pow(&self, e: u32, degrees: &[i32]) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self, degrees))
    }

    /// The single degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self, degrees: &[i32]) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree(degrees));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, degrees: &[i32]) -> bool {
        self.is_zero() || self.homogeneous_degree(degrees).is_some()
    }

    /// Part of wordlength exactly `k`.
    pub fn wordlength_part(&self, k: usize) -> Polynomial {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.wordlength() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn min_wordlength(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::wordlength).min()
    }

    pub fn max_wordlength(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::wordlength).max()
    }

    /// Every generator id occurring in the polynomial.
    pub fn support(&self) -> impl Iterator<Item = GenId> + '_ {
        self.terms.keys().flat_map(|m| m.factors().iter().copied())
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Q) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_assign_scaled(&f(m, c), &Q::one());
        }
        out
    }

    /// Applies the algebra map sending generator `g` to `image(g)`.
    pub fn substitute(
        &self,
        target_degrees: &[i32],
        mut image: impl FnMut(GenId) -> Polynomial,
    ) -> Polynomial {
        let mut cache: BTreeMap<GenId, Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for &g in m.factors() {
                let img = cache.entry(g).or_insert_with(|| image(g));
                acc = acc.mul(img, target_degrees);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&acc, &Q::one());
        }
        out
    }

    /// Renders with the given generator names, e.g. `2*x*y - 1/2*z`.
    pub fn display(&self, names: &dyn Fn(GenId) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body: Vec<String> = m.factors().iter().map(|&g| names(g)).collect();
            let c_abs = if i > 0 && c < &Q::zero() { -c.clone() } else { c.clone() };
            if i > 0 {
                s.push_str(if c < &Q::zero() { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(s, "{}", super::rational::fmt_rational(&c_abs));
            } else {
                let _ = write!(s, "{}{}", coefficient_prefix(&c_abs), body.join("*"));
            }
        }
        s
    }
}

/// Applies the unique degree-`r` derivation extending `values`
/// (indexed by generator id) to `p`:
/// on `g1…gk` it is `Σ_i (-1)^{r(|g1|+…+|g_{i-1}|)} g1…values(g_i)…gk`.
pub fn apply_derivation_raw(
    values: &dyn Fn(GenId) -> Polynomial,
    r: i32,
    p: &Polynomial,
    degrees: &[i32],
) -> Polynomial {
    let mut out = Polynomial::zero();
    let mut cache: BTreeMap<GenId, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let f = m.factors();
        let mut prefix_deg = 0i32;
        for i in 0..f.len() {
            let v = cache.entry(f[i]).or_insert_with(|| values(f[i]));
            if !v.is_zero() {
                let prefix = Monomial::from_sorted(f[..i].iter().copied());
                let suffix = Monomial::from_sorted(f[i + 1..].iter().copied());
                let mut term = Polynomial::term(c.clone(), prefix).mul(v, degrees);
                term = term.mul_monomial(&suffix, degrees);
                if is_odd(r) && is_odd(prefix_deg) {
                    term = term.neg();
                }
                out.add_assign_scaled(&term, &Q::one());
            }
            prefix_deg += degrees[f[i] as usize];
        }
    }
    out
}

/// All monomials of total degree `n` in the generators `ids`
/// (whose degrees must be positive), in canonical order.
pub fn monomials_of_degree(ids: &[GenId], degrees: &[i32], n: i32) -> Vec<Monomial> {
    let mut sorted: Vec<GenId> = ids.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    debug_assert!(sorted.iter().all(|&g| degrees[g as usize] >= 1));
    let mut out = Vec::new();
    let mut cur: Vec<GenId> = Vec::new();
    fn rec(
        pos: usize,
        left: i32,
        ids: &[GenId],
        degrees: &[i32],
        cur: &mut Vec<GenId>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial::from_sorted(cur.iter().copied()));
            return;
        }
        if pos == ids.len() {
            return;
        }
        let g = ids[pos];
        let d = degrees[g as usize];
        let max_e = if is_odd(d) { 1 } else { left / d };
        for e in (0..=max_e.min(left / d)).rev() {
            for _ in 0..e {
                cur.push(g);
            }
            rec(pos + 1, left - e * d, ids, degrees, cur, out);
            for _ in 0..e {
                cur.pop();
            }
        }
    }
    if n >= 0 {
        rec(0, n, &sorted, degrees, &mut cur, &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    // ids: 0 = a (deg 3), 1 = b (deg 3), 2 = x (deg 2)
    const DEG: [i32; 3] = [3, 3, 2];

    #[test]
    fn odd_square_vanishes() {
        assert_eq!(normalize_monomial(&[0, 0], &DEG), None);
        let a = Polynomial::generator(0);
        assert!(a.mul(&a, &DEG).is_zero());
    }

    #[test]
    fn odd_transposition_sign() {
        let (neg, m) = normalize_monomial(&[1, 0], &DEG).unwrap();
        assert!(neg);
        assert_eq!(m.factors(), &[0, 1]);
    }

    #[test]
    fn even_commutes() {
        let (neg, m) = normalize_monomial(&[2, 0], &DEG).unwrap();
        assert!(!neg);
        assert_eq!(m.factors(), &[0, 2]);
    }

    #[test]
    fn graded_commutativity_of_odd_pair() {
        let a = Polynomial::generator(0);
        let b = Polynomial::generator(1);
        assert_eq!(a.mul(&b, &DEG), b.mul(&a, &DEG).neg());
    }

    #[test]
    fn bilinearity() {
        let a = Polynomial::generator(0);
        let x = Polynomial::generator(2);
        let p = a.scale(&q(2)).add(&x.mul(&x, &DEG));
        let prod = p.mul(&x.scale(&q(3)), &DEG);
        let expect = Polynomial::product_of(q(6), &[0, 2], &DEG)
            .add(&Polynomial::product_of(q(3), &[2, 2, 2], &DEG));
        assert_eq!(prod, expect);
    }

    #[test]
    fn leibniz_sign_on_odd_product() {
        // ids 0 = x, 1 = y odd (deg 3), dx = u, dy = v with u = 2, v = 3 (deg 4, even)
        let deg = [3, 3, 4, 4];
        let vals = |g: GenId| match g {
            0 => Polynomial::generator(2),
            1 => Polynomial::generator(3),
            _ => Polynomial::zero(),
        };
        let xy = Polynomial::product_of(q(1), &[0, 1], &deg);
        let got = apply_derivation_raw(&vals, 1, &xy, &deg);
        let expect = Polynomial::product_of(q(1), &[2, 1], &deg)
            .sub(&Polynomial::product_of(q(1), &[0, 3], &deg));
        assert_eq!(got, expect);
    }

    #[test]
    fn enumerates_monomials() {
        // a, b odd deg 3, x even deg 2: degree 6 -> ab, x^3
        let ms = monomials_of_degree(&[0, 1, 2], &DEG, 6);
        assert_eq!(ms.len(), 2);
        let ms5 = monomials_of_degree(&[0, 1, 2], &DEG, 5);
        assert_eq!(ms5.len(), 2); // a x, b x
    }
}
