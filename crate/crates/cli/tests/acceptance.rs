//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mapspace_cli::commands::{map_model, split_check, Input, Options, Selection};
use mapspace_cli::report::Body;
use mapspace_cli::selftest::{self, MODELS};
use mapspace_core::chains::rho_reduction;
use mapspace_core::fixtures::*;
use mapspace_core::invariants::{cup_length, d1_depth, d_length, free_cohomology_test, whitehead_length};
use mapspace_core::mapping::*;
use mapspace_core::random::RandomModelSpec;
use mapspace_core::{q, GenId, Length};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(name: &str) -> &'static str {
    MODELS.iter().find(|m| m.0 == name).expect("shipped model").1
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let out = f()?;
    let el = t.elapsed();
    ensure(el < limit, || format!("took {el:?}, limit {limit:?}"))?;
    Ok(format!("{out} ({} ms)", el.as_millis()))
}

fn criterion_1() -> Check {
    timed(Duration::from_secs(10), || {
        let opts = Options { cap: Some(24), ..Options::default() };
        let input = Input::parse(model("cp2_s6"), &opts).map_err(|e| e.to_string())?;
        let out = map_model(&input, &Selection::default(), &opts).map_err(|e| e.to_string())?;
        let Body::MapModel(m) = &out.report.body else { return Err("wrong report".into()) };
        let mut degs: Vec<i32> = m.generators.iter().map(|g| g.degree).collect();
        degs.sort();
        ensure(degs == [2, 4, 7, 9], || format!("degrees {degs:?}"))?;
        let v4 = &m.generators.iter().find(|g| g.degree == 4).unwrap().name;
        for g in &m.generators {
            let want = if g.degree == 7 { format!("-2*{v4}*{v4}") } else { "0".into() };
            ensure(g.differential == want, || format!("d {} = {}, want {want}", g.name, g.differential))?;
        }
        let out = split_check(&input, &Selection::default(), &opts).map_err(|e| e.to_string())?;
        let Body::SplitCheck(s) = &out.report.body else { return Err("wrong report".into()) };
        ensure(s.verdict == "HypothesisFails", || format!("verdict {}", s.verdict))?;
        ensure(
            s.bracket_length.as_deref() == Some("1") && s.whitehead_length == Some(1) && s.d1_depth == Some(1),
            || format!("bl {:?}, WL {:?}, depth {:?}", s.bracket_length, s.whitehead_length, s.d1_depth),
        )?;
        let c = s.certificate.as_ref().ok_or("no certificate")?;
        Ok(format!("d v7 = -2*v4^2, HypothesisFails, certificate: {} in degree {}", c.invariant, c.degree))
    })
}

fn criterion_2() -> Check {
    timed(Duration::from_secs(60), || {
        let opts = Options { cap: Some(30), ..Options::default() };
        let input = Input::parse(model("example_y"), &opts).map_err(|e| e.to_string())?;
        let out = split_check(&input, &Selection::default(), &opts).map_err(|e| e.to_string())?;
        let Body::SplitCheck(s) = &out.report.body else { return Err("wrong report".into()) };
        ensure(s.verdict == "Splits", || format!("verdict {}", s.verdict))?;
        let w = s.witness.as_ref().ok_or("no witness")?;
        ensure(w.betti_product.len() == 30 && w.betti_product == w.betti_attached, || "betti numbers differ".into())?;

        let x = sphere_lie(2);
        let z = x.lie().bracket(&x.lie().generator(0).unwrap(), &x.lie().generator(0).unwrap()).scale(&q(-1));
        let Verdict::Splits(w) = splitting_check(&x, &z, &example_y(), 30).map_err(|e| e.to_string())? else {
            return Err("core verdict differs".into());
        };
        let a = w.bs.cdga();
        for g in 0..w.product.ngens() as GenId {
            let lhs = a.d(&w.psi[g as usize]);
            let rhs = w.product.dv(g).substitute(a.degrees(), |h| w.psi[h as usize].clone());
            ensure(lhs == rhs, || format!("psi fails on {}", w.product.name(g)))?;
        }
        for (v, gamma) in &w.gammas {
            ensure(a.d(gamma).is_zero(), || format!("gamma_{v} is not closed"))?;
        }
        Ok(format!("Splits, psi closed on {} generators, ranks equal in degrees 0..=29", w.product.ngens()))
    })
}

fn criterion_3() -> Check {
    let mut n = 0;
    for (name, y) in targets() {
        let (d, wl) = (d1_depth(&y), whitehead_length(&y).map_err(|e| e.to_string())?);
        ensure(d == wl, || format!("{name}: depth {d}, WL {wl}"))?;
        n += 1;
    }
    ensure(d1_depth(&depth_two()) == 2, || "depth-2 fixture".into())?;
    let spec = RandomModelSpec::default();
    ensure(spec.max_gens <= 5 && spec.cap <= 24, || "random spec out of range".into())?;
    let random = selftest::depth_vs_wl(0xC0FFEE, 120, spec)?;
    let deep = selftest::depth_vs_wl(0xC0FFEE, 120, selftest::DEEP)?;
    Ok(format!("{n} fixtures; {random}; larger models: {deep}"))
}

fn criterion_4() -> Check {
    let all = sources();
    for (name, x) in &all {
        let r = rho_reduction(x).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.chain_ranks == r.target_ranks, || format!("{name}: ranks differ"))?;
        ensure(r.chain_ranks.len() as i32 >= x.cap(), || format!("{name}: ranks stop early"))?;
    }
    Ok(format!("{} free DGLs", all.len()))
}

fn criterion_5() -> Check {
    let mut n = 0;
    for k in 1..=3 {
        let x = sphere_lie(k + 1);
        for (name, y) in targets() {
            let conn = y.cdga().degrees().iter().min().unwrap() - 1;
            if conn < k + 1 {
                continue;
            }
            let red = minimal_reduce(&based_model(&x, &y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let m = &red.model;
            ensure((0..m.ngens() as GenId).all(|g| m.dv(g).is_zero()), || format!("{name}, k={k}: nonzero d"))?;
            let mut got = m.degrees().to_vec();
            let mut want: Vec<i32> = y.cdga().degrees().iter().map(|d| d - k - 1).collect();
            got.sort();
            want.sort();
            ensure(got == want, || format!("{name}, k={k}: degrees {got:?}"))?;
            for d in 1..y.cdga().cap() {
                ensure(red.rank(d) == y.homotopy_rank(d + k + 1), || format!("{name}, k={k}: rank in degree {d}"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs (k, Y)"))
}

fn criterion_6() -> Check {
    let y = example_y();
    ensure(d_length(y.cdga()) == Length::Finite(3), || "d-length(Y) != 3".into())?;
    ensure(cup_length(cp(3).cdga(), 6) == 3, || "cup length(CP3) != 3".into())?;
    ensure(!free_cohomology_test(3, d_length(y.cdga())), || "CP3 test should say not free".into())?;
    ensure(cup_length(cp(2).cdga(), 4) == 2, || "cup length(CP2) != 2".into())?;
    ensure(free_cohomology_test(2, d_length(y.cdga())), || "CP2 test should say free".into())?;
    let shifted = triple_product(7, 8, 9);
    let red = minimal_reduce(&based_model(&cp_lie(3, &q(1)), &shifted).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let w = non_free_witness(&red.model, 24).ok_or("no product relation within cap")?;
    ensure(w.betti < w.free, || "witness is not a relation".into())?;
    Ok(format!(
        "d-length 3, cup lengths 3 and 2; F_*(CP3, Y(7,8,9)) has b_{} = {} < {} for the free algebra",
        w.degree, w.betti, w.free
    ))
}

fn criterion_7() -> Check {
    let x = two_cp2_and_cell();
    let y = cayley_plane();
    let red = minimal_reduce(&based_model(&x, &y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let dec = decompose(&x, &y, 24).map_err(|e| e.to_string())?;
    ensure(dec.succeeded(), || "decomposition failed".into())?;
    let counts: Vec<(i32, usize)> = dec.counts.iter().map(|(a, b)| (*a, *b)).collect();
    ensure(counts == [(2, 2), (4, 3)], || format!("cell counts {counts:?}"))?;
    for n in 1..40 {
        let want = match n {
            4 | 19 => 3,
            6 | 21 => 2,
            _ => 0,
        };
        let (a, b) = (red.rank(n), homotopy_ranks_from_counts(&dec.counts, &y, n));
        ensure(a == want && b == want, || format!("degree {n}: {a} and {b}, want {want}"))?;
    }
    Ok("ranks 3 in degrees 4, 19 and 2 in degrees 6, 21".into())
}

fn criterion_8() -> Check {
    let s = selftest::run(20240601, 100);
    let failed: Vec<String> = s.checks.iter().filter(|c| c.status != "pass").map(|c| format!("{}: {}", c.name, c.detail)).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} suites", s.passed))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("CP2 into S6 model and certificate", criterion_1),
        ("CP2 into Y(5,6,7) splits", criterion_2),
        ("d1-depth equals Whitehead length", criterion_3),
        ("Quillen chains reduction", criterion_4),
        ("loop-space consistency", criterion_5),
        ("freeness of the cohomology", criterion_6),
        ("Cayley plane ranks", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("criterion {} [{name}]: PASS - {d}", i + 1),
            Err(e) => {
                ok = false;
                println!("criterion {} [{name}]: FAIL - {e}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
