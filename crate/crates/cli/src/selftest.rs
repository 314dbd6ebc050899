//! Built-in property suites, run by `mapspace selftest`.

use mapspace_core::fixtures::{cp_lie, sources, sphere, targets};
use mapspace_core::invariants::{check_lemma_decomposition, check_lemma_v0, d1_depth, whitehead_length};
use mapspace_core::lie::{FreeLie, LieElement};
use mapspace_core::chains::{rho_reduction, ChainCoalgebra, FiniteChains};
use mapspace_core::mapping::{based_model, check_vanishing, BsGenerator, BsModel, BsOptions};
use mapspace_core::random::{random_minimal_model, RandomModelSpec};
use mapspace_core::{q, GenId, Polynomial, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::{map_model, Input, Options, Selection};
use crate::model::parse;
use crate::report::{Check, Selftest};

/// Example model files shipped with the tool.
pub const MODELS: &[(&str, &str)] = &[
    ("cp2_s6", include_str!("../models/cp2_s6.model")),
    ("example_y", include_str!("../models/example_y.model")),
    ("cp3", include_str!("../models/cp3.model")),
    ("cayley", include_str!("../models/cayley.model")),
    ("wedge", include_str!("../models/wedge.model")),
];

type Outcome = Result<String, String>;
type Suite = (&'static str, Box<dyn Fn() -> Outcome>);

pub fn run(seed: u64, count: usize) -> Selftest {
    let checks: Vec<Suite> = vec![
        ("differential-squares-to-zero", Box::new(|| bs_pairs(|_, bs| square_zero(bs)))),
        ("vanishing-lemma", Box::new(|| bs_pairs(|_, bs| check_vanishing(bs).map(|_| ()).map_err(|e| e.to_string())))),
        ("random-model-lemmas", Box::new(move || random_lemmas(seed, count))),
        ("depth-equals-whitehead-length", Box::new(move || depth_vs_wl(seed, count, RandomModelSpec::default()))),
        ("depth-equals-whitehead-length-deep", Box::new(move || depth_vs_wl(seed, count, DEEP))),
        ("lie-identities", Box::new(move || lie_identities(seed))),
        ("chains-quasi-isomorphism", Box::new(rho_all)),
        ("parse-print-round-trip", Box::new(round_trip)),
        ("json-determinism", Box::new(determinism)),
        ("sign-mutation-detected", Box::new(mutation)),
    ];
    let mut out = Selftest { checks: vec![], passed: 0, failed: 0, skipped: 0 };
    for (name, f) in checks {
        let (status, detail) = match f() {
            Ok(d) => {
                out.passed += 1;
                ("pass", d)
            }
            Err(d) => {
                out.failed += 1;
                ("FAIL", d)
            }
        };
        out.checks.push(Check { name: name.into(), status: status.into(), detail });
    }
    out
}

fn bs_pairs(f: impl Fn(&str, &BsModel) -> Result<(), String>) -> Outcome {
    let mut n = 0;
    for (xn, x) in sources() {
        for (yn, y) in targets() {
            let Ok(bs) = based_model(&x, &y) else { continue };
            f(&format!("{xn}->{yn}"), &bs).map_err(|e| format!("{xn} -> {yn}: {e}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} based models"))
}

fn square_zero(bs: &BsModel) -> Result<(), String> {
    let a = bs.cdga();
    for g in 0..a.ngens() as GenId {
        if !a.d(a.dv(g)).is_zero() {
            return Err(format!("d^2 {} != 0", a.name(g)));
        }
    }
    Ok(())
}

fn random_lemmas(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let m = random_minimal_model(&mut rng, RandomModelSpec::default());
        let a = m.cdga();
        for g in 0..a.ngens() as GenId {
            if !a.d(a.dv(g)).is_zero() {
                return Err(format!("model {i}: d^2 != 0"));
            }
        }
        check_lemma_v0(&m).map_err(|e| format!("model {i}: {e}"))?;
        check_lemma_decomposition(&m).map_err(|e| format!("model {i}: {e}"))?;
    }
    Ok(format!("{count} random models, seed {seed}"))
}

/// Many odd low-degree generators make deep `d₁`-towers common.
pub const DEEP: RandomModelSpec = RandomModelSpec { max_gens: 10, min_degree: 3, max_degree: 9, cap: 24 };

pub fn depth_vs_wl(seed: u64, count: usize, spec: RandomModelSpec) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut deep = 0;
    for i in 0..count {
        let m = random_minimal_model(&mut rng, spec);
        let wl = whitehead_length(&m).map_err(|e| e.to_string())?;
        let depth = d1_depth(&m);
        if wl != depth {
            return Err(format!("model {i}: depth {depth} != WL {wl}"));
        }
        if depth >= 2 {
            deep += 1;
        }
    }
    Ok(format!("{count} random models, {deep} of depth >= 2"))
}

fn random_element(rng: &mut ChaCha8Rng, lie: &FreeLie, n: i32) -> LieElement {
    let mut x = LieElement::zero(n);
    for i in 0..lie.dim(n) {
        x = x.add_scaled(&q(rng.gen_range(-3..=3)), &LieElement::basis(n, i));
    }
    x
}

fn sign(e: i32) -> Q {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

fn lie_identities(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let x = cp_lie(4, &q(1)).with_cap(12).map_err(|e| e.to_string())?;
    let lie = x.lie();
    let cap = lie.cap();
    let mut n = 0;
    for _ in 0..1000 {
        let (da, db, dc) = (rng.gen_range(1..cap), rng.gen_range(1..cap), rng.gen_range(1..cap));
        if da + db + dc >= cap || lie.dim(da) == 0 || lie.dim(db) == 0 || lie.dim(dc) == 0 {
            continue;
        }
        let (a, b, c) = (random_element(&mut rng, lie, da), random_element(&mut rng, lie, db), random_element(&mut rng, lie, dc));
        let br = |u: &LieElement, v: &LieElement| lie.bracket(u, v);
        let anti = br(&a, &b).add_scaled(&sign(da * db), &br(&b, &a));
        if !anti.is_zero() {
            return Err(format!("antisymmetry fails in degrees {da}, {db}"));
        }
        let jac = br(&a, &br(&b, &c))
            .scale(&sign(da * dc))
            .add_scaled(&sign(db * da), &br(&b, &br(&c, &a)))
            .add_scaled(&sign(dc * db), &br(&c, &br(&a, &b)));
        if !jac.is_zero() {
            return Err(format!("Jacobi fails in degrees {da}, {db}, {dc}"));
        }
        let lhs = x.d(&br(&a, &b));
        let rhs = br(&x.d(&a), &b).add_scaled(&sign(da), &br(&a, &x.d(&b)));
        if lhs != rhs {
            return Err(format!("Leibniz fails in degrees {da}, {db}"));
        }
        n += 1;
    }
    Ok(format!("{n} random triples"))
}

fn rho_all() -> Outcome {
    let all = sources();
    for (name, x) in &all {
        rho_reduction(x).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} source models", all.len()))
}

fn round_trip() -> Outcome {
    for (name, src) in MODELS {
        let f = parse(src).map_err(|e| format!("{name}: {e}"))?;
        let printed = f.to_string();
        let g = parse(&printed).map_err(|e| format!("{name} reprinted: {e}"))?;
        if f != g || g.to_string() != printed {
            return Err(format!("{name}: printing is not stable"));
        }
    }
    Ok(format!("{} model files", MODELS.len()))
}

fn determinism() -> Outcome {
    let opts = Options::default();
    let run = || -> Result<String, String> {
        let input = Input::parse(MODELS[0].1, &opts).map_err(|e| e.to_string())?;
        Ok(map_model(&input, &Selection::default(), &opts).map_err(|e| e.to_string())?.report.to_json())
    };
    if run()? != run()? {
        return Err("two runs differ".into());
    }
    Ok("map-model output is byte-identical".into())
}

/// Coefficient of the quadratic term in the CP² to S⁶ based model, under
/// the shipped or the mutated sign rule.
pub fn cp2_s6_coefficient(flip_koszul: bool) -> Result<Q, String> {
    let x = cp_lie(2, &q(1)).with_cap(4).map_err(|e| e.to_string())?;
    let chains = FiniteChains::new(ChainCoalgebra::new(&x), 4, &[]).map_err(|e| e.to_string())?;
    let bs = BsModel::with_options(&sphere(6), chains, BsOptions { flip_koszul }).map_err(|e| e.to_string())?;
    let c2 = bs.chains().cycle_index(2, 0).ok_or("no 2-cycle")?;
    let c4 = bs.chains().cycle_index(4, 0).ok_or("no 4-cycle")?;
    let y = bs.id(BsGenerator { v: 1, n: 4, i: c4 });
    let x2 = bs.id(BsGenerator { v: 0, n: 2, i: c2 });
    let sq = Polynomial::generator(x2).pow(2, bs.cdga().degrees());
    let (m, _) = sq.terms().next().ok_or("empty square")?;
    let c = bs.cdga().dv(y).terms().find(|(t, _)| *t == m).map_or(q(0), |t| t.1.clone());
    Ok(c)
}

fn mutation() -> Outcome {
    let good = cp2_s6_coefficient(false)?;
    let bad = cp2_s6_coefficient(true)?;
    if good != q(-2) {
        return Err(format!("fixture coefficient is {good}, expected -2"));
    }
    if bad == good {
        return Err("flipped sign rule went unnoticed".into());
    }
    Ok(format!("fixture gives -2, mutation gives {bad}"))
}
