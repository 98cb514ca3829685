mod common;

use common::{morphisms, opposite};
use proptest::prelude::*;
use tw_hierarchy::ranker::run;
use tw_hierarchy::variety::{
    aligned_factorization, classify, in_lm_malcev, in_rm_malcev, in_variety, in_wm, prefix_images,
    Variety,
};
use tw_hierarchy::{Error, Limits, Monoid, Morphism};

fn monoids() -> impl Strategy<Value = Monoid> {
    morphisms(4).prop_map(|phi| phi.monoid)
}

fn da_morphisms() -> impl Strategy<Value = Morphism> {
    morphisms(3).prop_filter("outside DA or too large", |phi| {
        phi.monoid.size() <= 6 && in_variety(&phi.monoid, Variety::DA, &Limits::default()).unwrap()
    })
}

/// `x a^k y` and `x a^(k+1) y`, equivalent on one-block rankers of depth `k`.
fn pumped(letters: &[char], depth: usize) -> impl Strategy<Value = (String, String)> {
    let letters = letters.to_vec();
    let word = proptest::collection::vec(proptest::sample::select(letters.clone()), 0..5);
    (word.clone(), word, proptest::sample::select(letters)).prop_map(move |(x, y, a)| {
        let x: String = x.into_iter().collect();
        let y: String = y.into_iter().collect();
        let block = a.to_string().repeat(depth);
        (format!("{x}{block}{y}"), format!("{x}{block}{a}{y}"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn levels_are_monotone(m in monoids()) {
        let lim = Limits::default();
        for k in 2..=4 {
            if in_rm_malcev(&m, k).unwrap() {
                prop_assert!(in_rm_malcev(&m, k + 1).unwrap());
            }
            if in_lm_malcev(&m, k).unwrap() {
                prop_assert!(in_lm_malcev(&m, k + 1).unwrap());
            }
        }
        match (in_wm(&m, 2, &lim), in_wm(&m, 3, &lim)) {
            (Ok(true), Ok(w3)) => prop_assert!(w3),
            (_, Err(Error::SearchSpaceExceeded { .. })) | (Ok(false), Ok(_)) => {}
            (a, b) => prop_assert!(false, "{:?} {:?}", a, b),
        }
    }

    #[test]
    fn j_is_r_and_l(m in monoids()) {
        let lim = Limits::default();
        let j = in_variety(&m, Variety::J, &lim).unwrap();
        prop_assert_eq!(j, in_variety(&m, Variety::R, &lim).unwrap() && in_variety(&m, Variety::L, &lim).unwrap());
        prop_assert_eq!(in_variety(&m, Variety::R, &lim).unwrap(), m.is_r_trivial());
        prop_assert_eq!(in_variety(&m, Variety::L, &lim).unwrap(), m.is_l_trivial());
    }

    #[test]
    fn profiles_are_consistent(m in monoids()) {
        let p = classify(&m, &Limits::default()).unwrap();
        prop_assert_eq!(p.size, m.size());
        prop_assert_eq!(p.min_r.is_some(), p.in_da);
        prop_assert_eq!(p.min_l.is_some(), p.in_da);
        if let (Some(r), Some(l), Some(j), Some(i)) = (p.min_r, p.min_l, p.min_join, p.min_intersection) {
            prop_assert_eq!(i, r.max(l));
            prop_assert!(j <= r.min(l));
            prop_assert!(in_rm_malcev(&m, r).unwrap() && (r == 2 || !in_rm_malcev(&m, r - 1).unwrap()));
        }
        let q = classify(&opposite(&m), &Limits::default()).unwrap();
        prop_assert_eq!((q.min_r, q.min_l, q.min_join), (p.min_l, p.min_r, p.min_join));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn aligned_factorizations((phi, (u, v)) in da_morphisms().prop_flat_map(|phi| {
        let depth = (2 * phi.monoid.size() - 2).max(1);
        let words = pumped(&phi.alphabet(), depth);
        (Just(phi), words)
    })) {
        {
            for (u, v) in [(u.clone(), v.clone()), (v.clone(), u.clone()), (u.clone(), u.clone())] {
                let f = aligned_factorization(&phi, &u, &v, &Limits::default()).unwrap();
                let m = &phi.monoid;
                // property 1
                prop_assert!(f.r.len() < m.size() && f.s.len() < m.size());
                // property 2: markers are exactly the visited positions on both words
                let (uc, vc): (Vec<char>, Vec<char>) = (u.chars().collect(), v.chars().collect());
                for (w, positions) in [(&uc, &f.u_positions), (&vc, &f.v_positions)] {
                    let mut visited = run(&f.r, w).unwrap();
                    visited.extend(run(&f.s, w).unwrap());
                    visited.sort_unstable();
                    visited.dedup();
                    prop_assert_eq!(&visited, positions);
                    prop_assert!(positions.iter().zip(&f.letters).all(|(&p, &a)| w[p - 1] == a));
                }
                prop_assert_eq!(f.u_factors.len(), f.letters.len() + 1);
                let rebuilt: String = f.u_factors.iter().zip(f.letters.iter().map(|a| a.to_string()).chain([String::new()])).map(|(x, a)| format!("{x}{a}")).collect();
                prop_assert_eq!(rebuilt, u.clone());
                // property 3: u's factors stay inside an R-class
                for (before, after) in prefix_images(&phi, &f.u_factors, &f.letters).unwrap() {
                    prop_assert!(m.r_related(before, after));
                }
                // property 4: v's factors stay inside an L-class, read from the right
                let mut suffix = m.identity();
                for (i, factor) in f.v_factors.iter().enumerate().rev() {
                    let extended = m.mul(phi.eval(factor).unwrap(), suffix);
                    prop_assert!(m.l_related(suffix, extended), "v factor {} of {}", i, v);
                    suffix = extended;
                    if i > 0 {
                        suffix = m.mul(phi.letter(f.letters[i - 1]).unwrap(), suffix);
                    }
                }
            }
        }
    }
}

#[test]
fn aligned_factorization_on_u() {
    let m = Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]], 0, None).unwrap();
    let phi = Morphism {
        monoid: m,
        images: [
            ('a', tw_hierarchy::ElementId(1)),
            ('b', tw_hierarchy::ElementId(2)),
        ]
        .into_iter()
        .collect(),
    };
    let f = aligned_factorization(&phi, "ab", "ab", &Limits::default()).unwrap();
    assert_eq!(f.u_positions, [1, 2]);
    assert_eq!(f.u_factors, ["", "", ""]);
    assert_eq!(f.letters, ['a', 'b']);
    assert!(matches!(
        aligned_factorization(&phi, "ab", "ba", &Limits::default()),
        Err(Error::PreconditionFailed(_))
    ));
}
