use mapspace_core::fixtures::*;
use mapspace_core::invariants::{cup_length, d1_depth, d_length, free_cohomology_test, whitehead_length};
use mapspace_core::mapping::*;
use mapspace_core::{q, Length, Polynomial};

#[test]
fn cp2_into_s6_reduction() {
    let bs = based_model(&cp_lie(2, &q(1)), &sphere(6)).unwrap();
    let red = minimal_reduce(&bs).unwrap();
    let mut degs = red.model.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![2, 4, 7, 9]);
    let v4 = red.model.gens_of_degree(4)[0];
    let v7 = red.model.gens_of_degree(7)[0];
    let expect = Polynomial::generator(v4).pow(2, red.model.degrees()).scale(&q(-2));
    assert_eq!(red.model.dv(v7), &expect);
}

#[test]
fn q_scales_the_quadratic_differential() {
    let bs = based_model(&cp_lie(2, &q(3)), &sphere(6)).unwrap();
    let red = minimal_reduce(&bs).unwrap();
    let v4 = red.model.gens_of_degree(4)[0];
    let v7 = red.model.gens_of_degree(7)[0];
    let expect = Polynomial::generator(v4).pow(2, red.model.degrees()).scale(&q(-6));
    assert_eq!(red.model.dv(v7), &expect);
}

#[test]
fn loop_spaces_have_zero_differential() {
    for k in 1..=3 {
        let x = sphere_lie(k + 1);
        for (name, y) in targets() {
            let conn = y.cdga().degrees().iter().min().unwrap() - 1;
            if conn < k + 1 {
                continue;
            }
            let red = minimal_reduce(&based_model(&x, &y).unwrap()).unwrap();
            for g in 0..red.model.ngens() as u32 {
                assert!(red.model.dv(g).is_zero(), "{name} k={k}");
            }
            for n in 1..40 {
                assert_eq!(red.rank(n), y.homotopy_rank(n + k + 1), "{name} k={k} n={n}");
            }
        }
    }
}

#[test]
fn freeness_on_cp3() {
    let y = example_y();
    assert_eq!(d_length(y.cdga()), Length::Finite(3));
    assert_eq!(cup_length(cp(3).cdga(), 6), 3);
    assert_eq!(cup_length(cp(2).cdga(), 4), 2);
    assert!(!free_cohomology_test(3, Length::Finite(3)));
    assert!(free_cohomology_test(2, Length::Finite(3)));
    let y = triple_product(7, 8, 9);
    let red = minimal_reduce(&based_model(&cp_lie(3, &q(1)), &y).unwrap()).unwrap();
    let w = non_free_witness(&red.model, 20).expect("a product relation");
    assert!(w.betti < w.free);
}

#[test]
fn cayley_plane_ranks() {
    let x = two_cp2_and_cell();
    let y = cayley_plane();
    let red = minimal_reduce(&based_model(&x, &y).unwrap()).unwrap();
    let dec = decompose(&x, &y, 24).unwrap();
    assert!(dec.succeeded());
    for n in 1..24 {
        assert_eq!(homotopy_ranks_from_counts(&dec.counts, &y, n), red.rank(n), "n={n}");
    }
    assert_eq!((red.rank(4), red.rank(19), red.rank(6), red.rank(21)), (3, 3, 2, 2));
}

#[test]
fn depth_equals_whitehead_length_on_fixtures() {
    for (name, y) in targets() {
        assert_eq!(d1_depth(&y), whitehead_length(&y).unwrap(), "{name}");
    }
    assert_eq!(d1_depth(&depth_two()), 2);
}

#[test]
fn x_family_decomposes() {
    let x = x_family(2, &[3, 3], 1).unwrap();
    let dec = decompose(&x, &sphere(10), 30).unwrap();
    assert!(dec.succeeded(), "{:?}", dec.failure().map(|s| &s.name));
    let counts: Vec<(i32, usize)> = dec.counts.into_iter().collect();
    assert_eq!(counts, vec![(2, 1), (3, 2), (7, 1)]);
}

#[test]
fn cp3_fails_at_the_top_cell() {
    let dec = decompose(&cp_lie(3, &q(1)), &triple_product(7, 8, 9), 30).unwrap();
    assert!(!dec.succeeded());
    let step = dec.failure().unwrap();
    assert_eq!(step.dim, 6);
    let Some(Verdict::HypothesisFails(r)) = &step.verdict else { panic!() };
    assert_eq!(r.bracket_length, Length::Finite(0));
}
