//! Cell-by-cell splitting into `×_k (Ω^k Y)^{n_k}`, homotopy ranks, and a
//! test for free cohomology.

use std::collections::BTreeMap;

use super::bs::ordered_y_gens;
use super::reduce::MinimalReduction;
use super::split::{conn, splitting_check, Verdict};
use crate::algebra::cdga::FreeCdga;
use crate::algebra::linalg::Echelon;
use crate::algebra::poly::{GenId, Polynomial};
use crate::error::{invalid, Result};
use crate::invariants::MinimalModel;
use crate::lie::{FreeDgl, LieElement};

#[derive(Clone, Debug)]
pub struct CellStep {
    pub name: String,
    pub dim: i32,
    /// `None` for a null attaching map.
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub steps: Vec<CellStep>,
    /// `n_k`, the number of `k`-cells, on success.
    pub counts: BTreeMap<i32, usize>,
    /// `⊗_cells (∧(V⊗s e), 0)`, on success.
    pub product: Option<FreeCdga>,
}

impl Decomposition {
    pub fn succeeded(&self) -> bool {
        self.product.is_some()
    }

    pub fn failure(&self) -> Option<&CellStep> {
        self.steps.iter().find(|s| !s.splits())
    }
}

impl CellStep {
    pub fn splits(&self) -> bool {
        matches!(self.verdict, None | Some(Verdict::Splits(_)))
    }
}

/// Attaching cycle of generator `i` inside the DGL on the earlier generators.
fn attaching(x: &FreeDgl, i: usize, prefix: &FreeDgl) -> Result<LieElement> {
    let z = x.d_generator(i as GenId);
    let mut out = LieElement::zero(z.degree);
    for (j, c) in z.coords.iter() {
        let w = &x.lie().basis_words(z.degree)[j];
        if w.generators().iter().any(|&g| g as usize >= i) {
            return Err(invalid("declare cells in order of dimension"));
        }
        out = out.add_scaled(c, &prefix.lie().normalize(w)?);
    }
    Ok(out)
}

/// Runs the splitting check on every cell of `x` in declaration order,
/// stopping at the first cell that does not split.
pub fn decompose(x: &FreeDgl, y: &MinimalModel, cap: i32) -> Result<Decomposition> {
    let degs = x.lie().degrees().to_vec();
    if degs.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid("declare cells in order of dimension"));
    }
    let lie_cap = degs.iter().copied().max().unwrap_or(1).max(1);
    let mut steps = Vec::new();
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for i in 0..degs.len() {
        let dim = degs[i] + 1;
        let name = x.lie().names()[i].clone();
        let prefix = x.restrict(i, lie_cap)?;
        let z = attaching(x, i, &prefix)?;
        let verdict = if z.is_zero() && conn(y) >= dim {
            None
        } else {
            Some(splitting_check(&prefix, &z, y, cap)?)
        };
        let step = CellStep { name, dim, verdict };
        let ok = step.splits();
        steps.push(step);
        if !ok {
            return Ok(Decomposition { steps, counts: BTreeMap::new(), product: None });
        }
        *counts.entry(dim).or_insert(0) += 1;
    }
    let ya = y.cdga();
    let mut product = FreeCdga::empty(cap);
    for (i, step) in steps.iter().enumerate() {
        for v in ordered_y_gens(y) {
            let name = format!("{}.{}", ya.name(v), x.lie().names()[i]);
            product.push(name, ya.degree(v) - step.dim, Polynomial::zero())?;
        }
    }
    Ok(Decomposition { steps, counts, product: Some(product) })
}

/// `rank π_n(F_*(X,Y)) ⊗ Q = Σ_k n_k dim V^{n+k}`.
pub fn homotopy_ranks_from_counts(counts: &BTreeMap<i32, usize>, y: &MinimalModel, n: i32) -> usize {
    counts.iter().map(|(&k, &nk)| nk * y.homotopy_rank(n + k)).sum()
}

/// Number of minimal generators of degree `n`.
pub fn homotopy_ranks_from_reduction(r: &MinimalReduction, n: i32) -> usize {
    r.rank(n)
}

/// Evidence that a cohomology algebra is not free: in `degree` it is
/// smaller than the free algebra on its indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFreeWitness {
    pub degree: i32,
    pub betti: usize,
    pub free: usize,
}

/// Compares `H^n(A)` with `(∧Q(H))^n` for `n ≤ top`.
pub fn non_free_witness(a: &FreeCdga, top: i32) -> Option<NonFreeWitness> {
    let mut a = a.clone();
    a.set_cap(a.cap().max(top + 1));
    let groups: Vec<_> = (0..=top).map(|n| a.cohomology(n)).collect();
    let mut indec = vec![0usize; (top + 1) as usize];
    for n in 1..=top {
        let mut dec = Echelon::new();
        for i in 1..n {
            for x in &groups[i as usize].representatives {
                for y in &groups[(n - i) as usize].representatives {
                    let p = a.mul(x, y);
                    if let Some(c) = groups[n as usize].class_of(&p) {
                        let _ = dec.insert(&crate::algebra::linalg::SparseVec::from_dense(&c));
                    }
                }
            }
        }
        indec[n as usize] = groups[n as usize].dim() - dec.dim();
    }
    // Poincaré series of the free algebra on the indecomposables
    let mut free = vec![0usize; (top + 1) as usize];
    free[0] = 1;
    for (d, &q) in indec.iter().enumerate().skip(1) {
        for _ in 0..q {
            let mut next = vec![0usize; free.len()];
            for (n, &f) in free.iter().enumerate() {
                if f == 0 {
                    continue;
                }
                let mut e = 0;
                while n + e * d < next.len() {
                    next[n + e * d] += f;
                    e += 1;
                    if d % 2 == 1 && e > 1 {
                        break;
                    }
                }
            }
            free = next;
        }
    }
    (1..=top as usize).find(|&n| groups[n].dim() != free[n]).map(|n| NonFreeWitness {
        degree: n as i32,
        betti: groups[n].dim(),
        free: free[n],
    })
}
