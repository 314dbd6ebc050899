//! Free graded Lie algebras, their differentials and homology.
//!
//! `𝕃(W)` is realized inside the tensor algebra `T(W)` through
//! `[a,b] = ab - (-1)^{|a||b|} ba`. In each degree a basis of bracket words
//! is chosen greedily among generators and `[g, b]` (generator `g`, earlier
//! basis word `b`), and all structure constants up to the cap are tabulated.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::graded::{GradedLieAlgebra, LieElement};
use crate::algebra::linalg::{kernel_and_image, Echelon, SparseVec};
use crate::algebra::poly::GenId;
use crate::algebra::rational::{sign, Q};
use crate::error::{internal, invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketWord {
    Gen(GenId),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn bracket(a: BracketWord, b: BracketWord) -> Self {
        BracketWord::Bracket(Box::new(a), Box::new(b))
    }

    pub fn degree(&self, degrees: &[i32]) -> i32 {
        match self {
            BracketWord::Gen(g) => degrees[*g as usize],
            BracketWord::Bracket(a, b) => a.degree(degrees) + b.degree(degrees),
        }
    }

    /// Generators in left-to-right order.
    pub fn generators(&self) -> Vec<GenId> {
        match self {
            BracketWord::Gen(g) => vec![*g],
            BracketWord::Bracket(a, b) => {
                let mut v = a.generators();
                v.extend(b.generators());
                v
            }
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        match self {
            BracketWord::Gen(g) => names[*g as usize].clone(),
            BracketWord::Bracket(a, b) => format!("[{},{}]", a.display(names), b.display(names)),
        }
    }
}

type Tensor = BTreeMap<Vec<GenId>, Q>;

fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Q::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tensor_bracket(a: &Tensor, da: i32, b: &Tensor, db: i32) -> Tensor {
    let mut out = tensor_mul(a, b);
    let s = -sign((da * db) as i64);
    for (w, c) in tensor_mul(b, a) {
        *out.entry(w).or_insert_with(Q::zero) += c * &s;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tensor_coords(index: &mut BTreeMap<Vec<GenId>, usize>, t: &Tensor) -> SparseVec {
    SparseVec::from_pairs(t.iter().map(|(w, c)| {
        let n = index.len();
        (*index.entry(w.clone()).or_insert(n), c.clone())
    }))
}

#[derive(Clone, Debug)]
pub struct FreeLie {
    names: Vec<String>,
    degrees: Vec<i32>,
    cap: i32,
    words: BTreeMap<i32, Vec<BracketWord>>,
    gen_index: Vec<Option<usize>>,
    algebra: GradedLieAlgebra,
}

impl FreeLie {
    pub fn new(names: Vec<String>, degrees: Vec<i32>, cap: i32) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(invalid("names and degrees differ in length"));
        }
        for (n, &d) in names.iter().zip(&degrees) {
            if d < 1 {
                return Err(invalid(format!("Lie generator {n} has degree {d} < 1")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(n) = names.iter().find(|n| !seen.insert(*n)) {
            return Err(invalid(format!("duplicate generator {n}")));
        }
        let mut words: BTreeMap<i32, Vec<BracketWord>> = BTreeMap::new();
        let mut tensors: BTreeMap<i32, Vec<Tensor>> = BTreeMap::new();
        let mut gen_index = vec![None; names.len()];
        let mut algebra = GradedLieAlgebra::new(cap);
        let ngens = names.len() as GenId;
        for n in 1..=cap {
            let mut index = BTreeMap::new();
            let mut deg = DegreeBuilder::default();
            for g in 0..ngens {
                if degrees[g as usize] == n {
                    let t: Tensor = [(vec![g], Q::one())].into_iter().collect();
                    gen_index[g as usize] = deg.offer(BracketWord::Gen(g), t, &mut index);
                }
            }
            for g in 0..ngens {
                let dg = degrees[g as usize];
                if dg >= n {
                    continue;
                }
                let gt: Tensor = [(vec![g], Q::one())].into_iter().collect();
                let (Some(bw), Some(bt)) = (words.get(&(n - dg)), tensors.get(&(n - dg))) else {
                    continue;
                };
                for (w, t) in bw.iter().zip(bt) {
                    let br = tensor_bracket(&gt, dg, t, n - dg);
                    if !br.is_empty() {
                        deg.offer(BracketWord::bracket(BracketWord::Gen(g), w.clone()), br, &mut index);
                    }
                }
            }
            let DegreeBuilder { chosen, words: chosen_words, tensors: chosen_tensors, .. } = deg;
            let labels = chosen_words.iter().map(|w| w.display(&names)).collect();
            algebra.set_basis(n, labels);
            // structure constants landing in degree n
            for a in 1..n {
                let b = n - a;
                if a > b {
                    break;
                }
                let (Some(ta), Some(tb)) = (tensors.get(&a), tensors.get(&b)) else {
                    continue;
                };
                for (i, x) in ta.iter().enumerate() {
                    for (j, y) in tb.iter().enumerate() {
                        if a == b && j < i {
                            continue;
                        }
                        let br = tensor_bracket(x, a, y, b);
                        let v = tensor_coords(&mut index, &br);
                        let c = chosen
                            .express(&v)
                            .ok_or_else(|| internal(format!("bracket escapes the Lie basis in degree {n}")))?;
                        algebra.set_bracket(a, i, b, j, c);
                    }
                }
            }
            words.insert(n, chosen_words);
            tensors.insert(n, chosen_tensors);
        }
        Ok(Self { names, degrees, cap, words, gen_index, algebra })
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn dim(&self, n: i32) -> usize {
        self.algebra.dim(n)
    }

    pub fn basis_words(&self, n: i32) -> &[BracketWord] {
        self.words.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Position of generator `g` in the basis of its degree.
    pub fn generator_index(&self, g: GenId) -> Option<usize> {
        self.gen_index[g as usize]
    }

    pub fn generator(&self, g: GenId) -> Result<LieElement> {
        let d = self.degrees[g as usize];
        match self.gen_index[g as usize] {
            Some(i) => Ok(LieElement::basis(d, i)),
            None => Err(Error::CapExceeded { degree: d, cap: self.cap }),
        }
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        self.algebra.bracket(x, y)
    }

    pub fn try_bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        self.algebra.try_bracket(x, y)
    }

    pub fn normalize(&self, w: &BracketWord) -> Result<LieElement> {
        match w {
            BracketWord::Gen(g) => self.generator(*g),
            BracketWord::Bracket(a, b) => self.try_bracket(&self.normalize(a)?, &self.normalize(b)?),
        }
    }

    /// Normalizes a homogeneous linear combination of bracket words.
    pub fn normalize_expr(&self, terms: &[(Q, BracketWord)]) -> Result<Option<LieElement>> {
        let mut acc: Option<LieElement> = None;
        for (c, w) in terms {
            let e = self.normalize(w)?.scale(c);
            acc = Some(match acc {
                None => e,
                Some(a) if a.degree == e.degree => a.add(&e),
                Some(_) => return Err(invalid("inhomogeneous Lie expression")),
            });
        }
        Ok(acc)
    }

    /// Image of `x` under the inclusion into `target`, whose first
    /// generators must coincide with ours.
    pub fn transport(&self, x: &LieElement, target: &FreeLie) -> Result<LieElement> {
        let mut out = LieElement::zero(x.degree);
        for (i, c) in x.coords.iter() {
            out = out.add_scaled(c, &target.normalize(&self.words[&x.degree][i])?);
        }
        Ok(out)
    }

    pub fn display(&self, x: &LieElement) -> String {
        self.algebra.display(x)
    }
}

#[derive(Default)]
struct DegreeBuilder {
    greedy: Echelon,
    chosen: Echelon,
    words: Vec<BracketWord>,
    tensors: Vec<Tensor>,
}

impl DegreeBuilder {
    fn offer(&mut self, w: BracketWord, t: Tensor, index: &mut BTreeMap<Vec<GenId>, usize>) -> Option<usize> {
        let v = tensor_coords(index, &t);
        self.greedy.insert(&v).ok()?;
        let _ = self.chosen.insert(&v);
        self.words.push(w);
        self.tensors.push(t);
        Some(self.words.len() - 1)
    }
}

/// A free differential graded Lie algebra `(𝕃(W), d)`.
#[derive(Clone, Debug)]
pub struct FreeDgl {
    lie: FreeLie,
    d_gen: Vec<LieElement>,
    /// `d` on each basis element, by degree.
    d_table: BTreeMap<i32, Vec<LieElement>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglReport {
    pub minimal: bool,
    pub non_minimal: Vec<String>,
}

impl FreeDgl {
    pub fn new(lie: FreeLie, d_gen: Vec<LieElement>) -> Result<Self> {
        if d_gen.len() != lie.ngens() {
            return Err(invalid("one differential per generator expected"));
        }
        for (g, dx) in d_gen.iter().enumerate() {
            if dx.degree != lie.degrees[g] - 1 {
                return Err(invalid(format!("d{} must have degree {}", lie.names[g], lie.degrees[g] - 1)));
            }
        }
        let mut dgl = Self { lie, d_gen, d_table: BTreeMap::new() };
        for n in 1..=dgl.lie.cap {
            let mut row = Vec::new();
            for w in dgl.lie.basis_words(n).to_vec() {
                row.push(dgl.d_word(&w)?);
            }
            dgl.d_table.insert(n, row);
        }
        for n in 2..=dgl.lie.cap {
            for i in 0..dgl.lie.dim(n) {
                let dd = dgl.d(&dgl.d(&LieElement::basis(n, i)));
                if !dd.is_zero() {
                    return Err(invalid(format!(
                        "d^2 != 0 on {}",
                        dgl.lie.algebra.label(n, i)
                    )));
                }
            }
        }
        Ok(dgl)
    }

    /// The zero differential.
    pub fn trivial(lie: FreeLie) -> Result<Self> {
        let d = lie.degrees.iter().map(|&k| LieElement::zero(k - 1)).collect();
        Self::new(lie, d)
    }

    fn d_word(&self, w: &BracketWord) -> Result<LieElement> {
        match w {
            BracketWord::Gen(g) => Ok(self.d_gen[*g as usize].clone()),
            BracketWord::Bracket(a, b) => {
                let (x, y) = (self.lie.normalize(a)?, self.lie.normalize(b)?);
                let (dx, dy) = (self.d_word(a)?, self.d_word(b)?);
                let mut out = LieElement::zero(x.degree + y.degree - 1);
                if dx.degree >= 1 {
                    out = out.add(&self.lie.bracket(&dx, &y));
                }
                if dy.degree >= 1 {
                    out = out.add_scaled(&sign(x.degree as i64), &self.lie.bracket(&x, &dy));
                }
                Ok(out)
            }
        }
    }

    pub fn lie(&self) -> &FreeLie {
        &self.lie
    }

    pub fn cap(&self) -> i32 {
        self.lie.cap
    }

    pub fn d_generator(&self, g: GenId) -> &LieElement {
        &self.d_gen[g as usize]
    }

    pub fn d(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero(x.degree - 1);
        if x.degree <= 1 {
            return out;
        }
        for (i, c) in x.coords.iter() {
            out = out.add_scaled(c, &self.d_table[&x.degree][i]);
        }
        out
    }

    /// Validation report; construction already enforces `d² = 0`.
    pub fn check(&self) -> DglReport {
        let non_minimal: Vec<String> = (0..self.lie.ngens())
            .filter(|&g| {
                let dx = &self.d_gen[g];
                dx.degree >= 1
                    && self
                        .lie
                        .gen_index
                        .iter()
                        .enumerate()
                        .filter(|(h, _)| self.lie.degrees[*h] == dx.degree)
                        .any(|(_, idx)| idx.is_some_and(|i| !dx.coords.get(i).is_zero()))
            })
            .map(|g| self.lie.names[g].clone())
            .collect();
        DglReport { minimal: non_minimal.is_empty(), non_minimal }
    }

    pub fn is_cycle(&self, z: &LieElement) -> bool {
        self.d(z).is_zero()
    }

    /// Homology in degrees `1..cap`, with the induced bracket.
    pub fn homology(&self) -> DglHomology {
        let top = self.lie.cap - 1;
        let mut algebra = GradedLieAlgebra::new(top.max(0));
        let mut groups = BTreeMap::new();
        for n in 1..=top {
            let images: Vec<SparseVec> = (0..self.lie.dim(n))
                .map(|i| self.d(&LieElement::basis(n, i)).coords)
                .collect();
            let (kernel, _) = kernel_and_image(&images);
            let mut boundaries = Echelon::new();
            for i in 0..self.lie.dim(n + 1) {
                let _ = boundaries.insert(&self.d(&LieElement::basis(n + 1, i)).coords);
            }
            let mut span = boundaries.clone();
            let mut reps_mod = Echelon::new();
            let mut reps = Vec::new();
            for k in kernel {
                let k = normalize_leading(&k);
                if span.insert(&k).is_ok() {
                    let _ = reps_mod.insert(&boundaries.reduce(&k).0);
                    reps.push(LieElement { degree: n, coords: k });
                }
            }
            algebra.set_basis(n, reps.iter().map(|r| self.lie.display(r)).collect());
            groups.insert(n, HomologyDegree { reps, boundaries, reps_mod });
        }
        let mut h = DglHomology { algebra, groups };
        for a in 1..=top {
            for b in a..=top - a {
                for i in 0..h.dim(a) {
                    for j in 0..h.dim(b) {
                        if a == b && j < i {
                            continue;
                        }
                        let br = self.lie.bracket(&h.groups[&a].reps[i], &h.groups[&b].reps[j]);
                        let c = h.class_of(&br).expect("bracket of cycles is a cycle");
                        h.algebra.set_bracket(a, i, b, j, c.coords);
                    }
                }
            }
        }
        h
    }

    /// The same DGL on the first `k` generators, materialized through `cap`.
    /// The differentials of those generators must stay among them.
    pub fn restrict(&self, k: usize, cap: i32) -> Result<FreeDgl> {
        let lie = FreeLie::new(self.lie.names[..k].to_vec(), self.lie.degrees[..k].to_vec(), cap)?;
        let mut d_gen = Vec::new();
        for dx in &self.d_gen[..k] {
            if dx.degree < 1 {
                d_gen.push(dx.clone());
                continue;
            }
            let mut out = LieElement::zero(dx.degree);
            for (i, c) in dx.coords.iter() {
                let w = &self.lie.words[&dx.degree][i];
                if w.generators().iter().any(|&g| g as usize >= k) {
                    return Err(invalid("differential leaves the sub-DGL"));
                }
                out = out.add_scaled(c, &lie.normalize(w)?);
            }
            d_gen.push(out);
        }
        FreeDgl::new(lie, d_gen)
    }

    pub fn with_cap(&self, cap: i32) -> Result<FreeDgl> {
        self.restrict(self.lie.ngens(), cap)
    }

    /// `L ∐ 𝕃(w)` with `dw = z`, the model of attaching a cell along `z`.
    pub fn adjoin_cell(&self, name: &str, z: &LieElement) -> Result<FreeDgl> {
        if !self.is_cycle(z) {
            return Err(invalid("attaching element is not a cycle"));
        }
        let mut names = self.lie.names.clone();
        let mut degrees = self.lie.degrees.clone();
        names.push(name.to_string());
        degrees.push(z.degree + 1);
        let lie = FreeLie::new(names, degrees, self.lie.cap)?;
        let mut d_gen = Vec::new();
        for dx in self.d_gen.iter().chain(std::iter::once(z)) {
            d_gen.push(if dx.degree >= 1 { self.lie.transport(dx, &lie)? } else { dx.clone() });
        }
        FreeDgl::new(lie, d_gen)
    }
}

/// Scales so that the first nonzero coefficient is 1.
pub(crate) fn normalize_leading(v: &SparseVec) -> SparseVec {
    match v.leading() {
        Some((_, c)) => v.scale(&(Q::one() / c)),
        None => v.clone(),
    }
}

#[derive(Clone, Debug)]
struct HomologyDegree {
    reps: Vec<LieElement>,
    boundaries: Echelon,
    reps_mod: Echelon,
}

/// `H(𝕃(W), d)` as a graded Lie algebra over chosen cycle representatives.
#[derive(Clone, Debug)]
pub struct DglHomology {
    algebra: GradedLieAlgebra,
    groups: BTreeMap<i32, HomologyDegree>,
}

impl DglHomology {
    pub fn algebra(&self) -> &GradedLieAlgebra {
        &self.algebra
    }

    pub fn dim(&self, n: i32) -> usize {
        self.groups.get(&n).map_or(0, |g| g.reps.len())
    }

    pub fn representatives(&self, n: i32) -> &[LieElement] {
        self.groups.get(&n).map(|g| g.reps.as_slice()).unwrap_or(&[])
    }

    /// Class of a cycle, in coordinates over the representatives.
    pub fn class_of(&self, z: &LieElement) -> Option<LieElement> {
        let g = self.groups.get(&z.degree)?;
        let rem = g.boundaries.reduce(&z.coords).0;
        let c = g.reps_mod.express(&rem)?;
        Some(LieElement { degree: z.degree, coords: c })
    }
}

impl fmt::Display for DglReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.minimal {
            write!(f, "valid, minimal")
        } else {
            write!(f, "valid, non-minimal at {}", self.non_minimal.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_even_generator() {
        let l = FreeLie::new(names(&["a"]), vec![2], 6).unwrap();
        assert_eq!(l.dim(2), 1);
        assert_eq!(l.dim(4), 0);
    }

    #[test]
    fn one_odd_generator() {
        let l = FreeLie::new(names(&["a"]), vec![1], 4).unwrap();
        assert_eq!((l.dim(1), l.dim(2), l.dim(3), l.dim(4)), (1, 1, 0, 0));
        l.algebra().check_axioms().unwrap();
    }

    #[test]
    fn two_generators_match_witt_formula() {
        // two degree-2 generators: free Lie dims 2, 1, 2, 3 in degrees 2, 4, 6, 8
        let l = FreeLie::new(names(&["a", "b"]), vec![2, 2], 8).unwrap();
        assert_eq!([2, 4, 6, 8].map(|n| l.dim(n)), [2, 1, 2, 3]);
        l.algebra().check_axioms().unwrap();
    }

    #[test]
    fn cp2_model() {
        let l = FreeLie::new(names(&["i"]), vec![1], 4).unwrap();
        let base = FreeDgl::trivial(l).unwrap();
        let i = base.lie().generator(0).unwrap();
        let ii = base.lie().bracket(&i, &i).scale(&q(-1));
        let cp2 = base.adjoin_cell("w", &ii).unwrap();
        assert!(cp2.check().minimal);
        let h = cp2.homology();
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.dim(2), 0);
    }

    #[test]
    fn non_minimal_flagged() {
        let l = FreeLie::new(names(&["a", "w"]), vec![2, 3], 5).unwrap();
        let a = l.generator(0).unwrap();
        let dgl = FreeDgl::new(l, vec![LieElement::zero(1), a]).unwrap();
        assert_eq!(dgl.check().non_minimal, vec!["w".to_string()]);
        assert_eq!(dgl.homology().dim(2), 0);
    }
}
