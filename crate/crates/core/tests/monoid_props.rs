mod common;

use std::collections::BTreeMap;

use common::morphisms;
use proptest::prelude::*;
use tw_hierarchy::{Monoid, Morphism};

fn monoids() -> impl Strategy<Value = Monoid> {
    morphisms(4).prop_map(|phi: Morphism| phi.monoid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn transition_monoids_are_associative(m in monoids()) {
        prop_assert!(m.check_associativity().is_ok());
        for x in m.elements() {
            prop_assert_eq!(m.mul(m.identity(), x), x);
            prop_assert_eq!(m.mul(x, m.identity()), x);
        }
    }

    #[test]
    fn omega_power_is_an_idempotent_power(m in monoids()) {
        let n = m.global_exponent();
        for x in m.elements() {
            let e = m.omega_power(x);
            prop_assert!(m.is_idempotent(e));
            prop_assert!((1..=m.size()).any(|k| m.pow(x, k) == e));
            prop_assert_eq!(m.pow(x, n), e);
            let (index, period) = m.index_and_period(x);
            prop_assert_eq!(m.pow(x, index + period), m.pow(x, index));
        }
        prop_assert_eq!(m.is_aperiodic(), m.elements().all(|x| m.mul(m.omega_power(x), x) == m.omega_power(x)));
    }

    #[test]
    fn green_relations_are_equivalences(m in monoids()) {
        for x in m.elements() {
            prop_assert!(m.r_related(x, x) && m.l_related(x, x));
            for y in m.elements() {
                prop_assert_eq!(m.r_related(x, y), m.r_related(y, x));
                prop_assert_eq!(m.r_related(x, y), m.leq_r(x, y) && m.leq_r(y, x));
                prop_assert_eq!(m.l_related(x, y), m.leq_l(x, y) && m.leq_l(y, x));
                prop_assert_eq!(m.r_related(x, y), m.r_class(x) == m.r_class(y));
                prop_assert!(m.leq_r(m.mul(x, y), x));
                prop_assert!(m.leq_l(m.mul(y, x), x));
                for z in m.elements() {
                    if m.leq_r(x, y) && m.leq_r(y, z) {
                        prop_assert!(m.leq_r(x, z));
                    }
                }
            }
        }
        prop_assert_eq!(m.is_r_trivial(), m.elements().all(|x| m.elements().all(|y| !m.r_related(x, y) || x == y)));
    }

    #[test]
    fn sim_k_and_sim_d_are_congruences(m in monoids()) {
        for c in [m.sim_k().unwrap(), m.sim_d().unwrap()] {
            prop_assert!(c.check_compatible(&m).is_ok());
            let (q, proj) = m.quotient(&c).unwrap();
            prop_assert_eq!(q.size(), c.class_count());
            prop_assert!(q.check_associativity().is_ok());
            for x in m.elements() {
                for y in m.elements() {
                    prop_assert_eq!(proj[m.mul(x, y).index()], q.mul(proj[x.index()], proj[y.index()]));
                }
            }
        }
    }

    #[test]
    fn direct_products_multiply_sizes(a in morphisms(3), b in morphisms(2)) {
        let (a, b) = (a.monoid, b.monoid);
        let p = a.direct_product(&b, 5000).unwrap();
        prop_assert_eq!(p.size(), a.size() * b.size());
        prop_assert!(p.check_associativity().is_ok());
        prop_assert_eq!(p.is_aperiodic(), a.is_aperiodic() && b.is_aperiodic());
    }

    #[test]
    fn mon_text_round_trips(phi in morphisms(4)) {
        let generators: BTreeMap<char, _> = phi.images.clone();
        let text = phi.monoid.to_mon(&generators);
        let back = Monoid::parse_mon(&text).unwrap();
        prop_assert_eq!(&back.monoid, &phi.monoid);
        prop_assert_eq!(back.generators, generators);
    }
}
