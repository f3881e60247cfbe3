use hfk_concordance::dinv::{lens_d, niwu_d, spin_label, translate_s_to_t, v_terms_needed, SpinC};
use hfk_concordance::{rational, Rational};
use num_integer::Integer;

fn coprime_pairs(max: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=max).flat_map(move |p| {
        (1..=max)
            .filter(move |&q| p.gcd(&q) == 1)
            .map(move |q| (p, q))
    })
}

fn table(p: u64, q: u64) -> Vec<Rational> {
    (0..p).map(|i| lens_d(p, q, i).unwrap()).collect()
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

#[test]
fn conjugation_symmetry() {
    for (p, q) in coprime_pairs(25) {
        for i in 0..p {
            let j = SpinC::new(p, q, i).unwrap().conjugate().label();
            assert_eq!(
                lens_d(p, q, i).unwrap(),
                lens_d(p, q, j).unwrap(),
                "L({p},{q}) labels {i}, {j}"
            );
        }
    }
}

#[test]
fn labels_are_periodic_in_p() {
    for (p, q) in coprime_pairs(25) {
        for i in p..p + q {
            assert_eq!(
                lens_d(p, q, i).unwrap(),
                lens_d(p, q, i - p).unwrap(),
                "L({p},{q}) label {i}"
            );
        }
    }
}

#[test]
fn l_p_1_closed_form() {
    // d(L(p,1), i) = ((p - 2i)^2 - p) / 4p
    for p in 1..=40i64 {
        for i in 0..p {
            let expect = rational((p - 2 * i).pow(2) - p, 4 * p);
            assert_eq!(
                lens_d(p as u64, 1, i as u64).unwrap(),
                expect,
                "L({p},1) label {i}"
            );
        }
    }
}

#[test]
fn homeomorphic_lens_spaces_agree() {
    // L(p,q) = L(p,q') for q q' = 1 mod p, and -L(p,q) = L(p,p-q).
    for (p, q) in coprime_pairs(25).filter(|&(p, q)| p > 1 && q < p) {
        let inv = (1..p).find(|&r| (q * r) % p == 1).unwrap();
        assert_eq!(
            sorted(table(p, q)),
            sorted(table(p, inv)),
            "L({p},{q}) vs L({p},{inv})"
        );
        let negated: Vec<Rational> = table(p, p - q).into_iter().map(|x| -x).collect();
        assert_eq!(
            sorted(table(p, q)),
            sorted(negated),
            "L({p},{q}) vs -L({p},{})",
            p - q
        );
    }
}

#[test]
fn niwu_with_vanishing_v_is_lens_d() {
    for (p, q) in coprime_pairs(25) {
        let v = vec![0; v_terms_needed(p, q) as usize];
        for i in 0..p {
            assert_eq!(niwu_d(p, q, i, &v).unwrap(), lens_d(p, q, i).unwrap());
        }
    }
}

#[test]
fn spin_label_is_self_conjugate() {
    for (p, q) in coprime_pairs(25).filter(|(p, _)| p % 2 == 1) {
        let s = spin_label(p, q).unwrap();
        assert_eq!(
            SpinC::new(p, q, s).unwrap().conjugate().label(),
            s,
            "{p}/{q}"
        );
        assert_eq!(translate_s_to_t(p, q, 0).unwrap(), s);
        assert_eq!(translate_s_to_t(p, q, p as i64).unwrap(), s);
    }
}

#[test]
fn nine_fourths_table() {
    let t = table(9, 4);
    assert_eq!(t[0], rational(0, 1));
    assert_eq!(t[6], rational(0, 1));
    // t_0 and t_3 are conjugate; t_6 is the spin structure.
    assert_eq!(SpinC::new(9, 4, 0).unwrap().conjugate().label(), 3);
    assert_eq!(t[3], t[0]);
}
