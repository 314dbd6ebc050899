//! Random minimal Sullivan algebras for property tests.
//!
//! Generators are added in increasing degree. Each new `dv` is a random
//! integer combination of a basis of the decomposable cocycles of degree
//! `|v| + 1`, so `d² = 0` holds by construction.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::cdga::FreeCdga;
use crate::algebra::linalg::{kernel_and_image, SparseVec};
use crate::algebra::poly::{monomials_of_degree, GenId, Monomial, Polynomial};
use crate::algebra::rational::q;
use crate::invariants::MinimalModel;

#[derive(Clone, Copy, Debug)]
pub struct RandomModelSpec {
    pub max_gens: usize,
    pub min_degree: i32,
    pub max_degree: i32,
    pub cap: i32,
}

impl Default for RandomModelSpec {
    fn default() -> Self {
        Self { max_gens: 5, min_degree: 2, max_degree: 11, cap: 24 }
    }
}

fn decomposable_cocycles(a: &FreeCdga, n: i32) -> Vec<Polynomial> {
    let ids: Vec<GenId> = (0..a.ngens() as GenId).collect();
    let monos: Vec<Monomial> =
        monomials_of_degree(&ids, a.degrees(), n).into_iter().filter(|m| m.wordlength() >= 2).collect();
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let images: Vec<SparseVec> = monos
        .iter()
        .map(|m| {
            let dm = a.d(&Polynomial::term(q(1), m.clone()));
            SparseVec::from_pairs(dm.terms().map(|(t, c)| {
                let k = index.len();
                (*index.entry(t.clone()).or_insert(k), c.clone())
            }))
        })
        .collect();
    let (kernel, _) = kernel_and_image(&images);
    kernel
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero();
            for (i, c) in v.iter() {
                p.add_term(monos[i].clone(), c.clone());
            }
            p
        })
        .collect()
}

pub fn random_minimal_model<R: Rng>(rng: &mut R, spec: RandomModelSpec) -> MinimalModel {
    let n = rng.gen_range(1..=spec.max_gens);
    let mut degs: Vec<i32> = (0..n).map(|_| rng.gen_range(spec.min_degree..=spec.max_degree)).collect();
    degs.sort_unstable();
    let mut a = FreeCdga::empty(spec.cap);
    for (k, &d) in degs.iter().enumerate() {
        let basis = decomposable_cocycles(&a, d + 1);
        let mut dv = Polynomial::zero();
        if !basis.is_empty() && rng.gen_bool(0.85) {
            while dv.is_zero() {
                for b in &basis {
                    dv.add_assign_scaled(b, &q(rng.gen_range(-2..=2)));
                }
            }
        }
        a.push(format!("v{k}"), d, dv).expect("cocycle differential");
    }
    MinimalModel::new(a).expect("decomposable differential")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_models_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut nonzero = 0;
        for _ in 0..30 {
            let m = random_minimal_model(&mut rng, RandomModelSpec::default());
            assert!(m.cdga().is_minimal());
            if (0..m.cdga().ngens() as GenId).any(|g| !m.cdga().dv(g).is_zero()) {
                nonzero += 1;
            }
        }
        assert!(nonzero > 5);
    }

    #[test]
    fn homotopy_lie_axioms_on_deep_models() {
        let spec = RandomModelSpec { max_gens: 10, min_degree: 3, max_degree: 9, cap: 24 };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let m = random_minimal_model(&mut rng, spec);
            crate::invariants::homotopy_lie(&m).unwrap();
        }
    }
}
