mod common;

use common::{all_lists, brute_v, check_additive, check_decreasing, random_list, staircase_v};
use hfk_concordance::cfk::{mirror, staircase_complex, tensor};
use hfk_concordance::obstruction::{build_family, family_tensor_complex};
use hfk_concordance::reduced::{fast_vk_sequence, reduce_staircase, tensor_with_mirror_t25};
use hfk_concordance::staircase::{
    find_compatible_riffle, representative_staircase, StaircaseError,
};
use hfk_concordance::StaircaseList;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn reduced_path_matches_staircase_complex() {
    for list in all_lists(8) {
        let g = list.genus();
        let fast = fast_vk_sequence(&reduce_staircase(&list).as_tower(), g);
        assert_eq!(fast, staircase_v(&list, g), "{list}");
        assert_eq!(fast[g as usize], 0, "{list}");
    }
}

#[test]
fn representative_matches_tensor_for_small_pairs() {
    let lists = all_lists(7);
    let (mut compatible, mut incompatible) = (0, 0);
    for a in &lists {
        for b in &lists {
            if a.genus() + b.genus() > 8 {
                continue;
            }
            match representative_staircase(a, b) {
                Ok(rep) => {
                    compatible += 1;
                    let g = a.genus() + b.genus();
                    assert_eq!(rep.genus(), g);
                    let sum = tensor(&staircase_complex(a), &staircase_complex(b));
                    assert_eq!(
                        fast_vk_sequence(&reduce_staircase(&rep).as_tower(), g),
                        brute_v(&sum, g),
                        "{a} # {b} -> {rep}"
                    );
                }
                Err(StaircaseError::Incompatible) => incompatible += 1,
                Err(e) => panic!("{a} # {b}: {e}"),
            }
        }
    }
    assert!(compatible > 0 && incompatible > 0);
}

#[test]
fn two_trefoils_give_t25() {
    let t23 = StaircaseList::new(vec![1]).unwrap();
    let rep = representative_staircase(&t23, &t23).unwrap();
    assert_eq!(rep.steps(), &[1, 1]);
    let sum = tensor(&staircase_complex(&t23), &staircase_complex(&t23));
    assert_eq!(brute_v(&sum, 2), staircase_v(&rep, 2));
}

#[test]
fn randomized_decreasing_and_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let a = random_list(&mut rng, 4);
        let b = random_list(&mut rng, 4);
        let (ga, gb) = (a.genus(), b.genus());
        let va = staircase_v(&a, ga);
        let vb = staircase_v(&b, gb);
        let vs = brute_v(
            &tensor(&staircase_complex(&a), &staircase_complex(&b)),
            ga + gb,
        );
        for v in [&va, &vb, &vs] {
            check_decreasing(v).unwrap_or_else(|e| panic!("{a}, {b}: {e}"));
        }
        check_additive(&vs, &va, &vb).unwrap_or_else(|e| panic!("{a} # {b}: {e}"));
    }
}

#[test]
fn family_mirror_tensor_oracle() {
    let minus_t25 = mirror(&staircase_complex(&StaircaseList::new(vec![1, 1]).unwrap()));
    for n in 1..=2 {
        let inst = build_family(n).unwrap();
        let fast = fast_vk_sequence(
            &tensor_with_mirror_t25(&reduce_staircase(&inst.rep_staircase)),
            3,
        );
        let via_rep = brute_v(
            &tensor(&staircase_complex(&inst.rep_staircase), &minus_t25),
            3,
        );
        let full = brute_v(&family_tensor_complex(&inst), 3);
        assert_eq!(fast, via_rep, "n = {n}");
        assert_eq!(fast, full, "n = {n}");
    }
}

#[test]
fn mirror_is_an_involution_on_staircases() {
    for list in all_lists(5) {
        let c = staircase_complex(&list);
        let twice = mirror(&mirror(&c));
        let strip = |c: &hfk_concordance::cfk::FilteredComplex| c.dump().replace('*', "");
        assert_eq!(strip(&twice), strip(&c), "{list}");
    }
}

fn small_list() -> impl Strategy<Value = StaircaseList> {
    prop::collection::vec(1u32..4, 1..4).prop_map(|s| StaircaseList::new(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representative_is_symmetric(a in small_list(), b in small_list()) {
        match (representative_staircase(&a, &b), representative_staircase(&b, &a)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{a}, {b}: {x:?} vs {y:?}"),
        }
    }

    #[test]
    fn riffle_restricts_to_inputs(a in small_list(), b in small_list()) {
        if let Some(r) = find_compatible_riffle(&a.shape(), &b.shape()) {
            prop_assert!(r.is_admissible());
            prop_assert_eq!(r.restrict(hfk_concordance::staircase::Side::Left), a.shape());
            prop_assert_eq!(r.restrict(hfk_concordance::staircase::Side::Right), b.shape());
        }
    }
}
