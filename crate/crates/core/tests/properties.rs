use proptest::prelude::*;

use lsmult::invariants::{InvariantCalculator, Method};
use lsmult::pathmodel::{chain_depth, chain_endpoint, chain_set, delta_sequence};
use lsmult::{RationalWeight, RootSystem, Weight, Q};

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2", "D4"];

fn weight_in(rank: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-max..=max, rank)
}

fn type_and_weight() -> impl Strategy<Value = (RootSystem, Weight)> {
    proptest::sample::select(TYPES)
        .prop_flat_map(|l| {
            let r = RootSystem::from_label(l).unwrap();
            let n = r.rank();
            (Just(r), weight_in(n, 3))
        })
        .prop_map(|(r, v)| (r, Weight(v)))
}

fn small_dominant() -> impl Strategy<Value = (RootSystem, Weight)> {
    proptest::sample::select(&["A1", "A2", "B2", "C2", "G2"][..])
        .prop_flat_map(|l| {
            let r = RootSystem::from_label(l).unwrap();
            let n = r.rank();
            (Just(r), proptest::collection::vec(0i64..=2, n))
        })
        .prop_map(|(r, v)| (r, Weight(v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_stabilizer((r, w) in type_and_weight()) {
        let dom = r.dominant_representative(&w).0;
        prop_assert_eq!(r.orbit(&dom).len() as u128 * r.stabilizer_order(&dom), r.weyl_group_order());
    }

    #[test]
    fn pairings_are_integral((r, w) in type_and_weight()) {
        for a in 0..r.positive_roots().len() {
            prop_assert!(r.pairing(&w.to_rational(), a).is_integer());
            let back = r.reflect(&r.reflect(&w, a), a);
            prop_assert_eq!(&back, &w);
        }
    }

    #[test]
    fn dual_weight_is_involution((r, w) in type_and_weight()) {
        let dom = r.dominant_representative(&w).0;
        let d = r.dual_weight(&dom);
        prop_assert!(d.is_dominant());
        prop_assert_eq!(r.dual_weight(&d), dom);
    }

    #[test]
    fn orbit_poset_is_graded((r, w) in type_and_weight()) {
        let dom = r.dominant_representative(&w).0;
        let p = r.orbit_poset(&dom).unwrap();
        prop_assert_eq!(p.index_of(&dom), Some(0));
        for c in p.covers() {
            prop_assert_eq!(p.length(c.lower), p.length(c.upper) + 1);
            prop_assert!(c.pairing > 0);
        }
        // every non-maximal element is covered by something
        for i in 1..p.len() {
            prop_assert!(p.covers().iter().any(|c| c.lower == i));
        }
    }

    #[test]
    fn a1_chain_count(m in 0i64..=12) {
        let a1 = RootSystem::from_label("A1").unwrap();
        prop_assert_eq!(chain_set(&a1, &Weight(vec![m])).unwrap().len(), m as usize + 1);
    }

    #[test]
    fn delta_formulas_agree((r, mu) in small_dominant(), pick in any::<prop::sample::Index>()) {
        let set = chain_set(&r, &mu).unwrap();
        let c = &set.chains[pick.index(set.len())];
        let deltas = delta_sequence(c);
        let l = c.len();
        let cut = |t: usize| if t == 0 { Q::from_integer(0) } else if t > l { Q::from_integer(1) } else { c.cuts[t - 1] };
        // telescoped form: delta_t = b_t mu_{t-1} - sum_{j<t} b_j (mu_j - mu_{j-1})
        for (t, expected) in deltas.iter().enumerate() {
            let mut acc = RationalWeight::zero(r.rank());
            if t > 0 {
                acc = acc.add_scaled(cut(t), &c.steps[t - 1]);
                for j in 1..t {
                    acc = acc.add_scaled(-cut(j), &(&c.steps[j] - &c.steps[j - 1]));
                }
            }
            prop_assert_eq!(&acc, expected);
        }
        let end = chain_endpoint(c).unwrap();
        let depth = chain_depth(c).unwrap();
        for i in 0..r.rank() {
            prop_assert!(depth.0[i] <= 0 && depth.0[i] <= end.0[i]);
        }
    }

    #[test]
    fn invariant_dim_is_permutation_invariant(
        (r, a) in small_dominant(),
        b in proptest::collection::vec(0i64..=1, 3),
        c in proptest::collection::vec(0i64..=1, 3),
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let n = r.rank();
        let t = vec![a, Weight(b[..n].to_vec()), Weight(c[..n].to_vec()), r.dual_weight(&Weight(b[..n].to_vec()))];
        let shuffled: Vec<Weight> = perm.iter().map(|&i| t[i].clone()).collect();
        let calc = InvariantCalculator::new(&r, Method::PathModel);
        prop_assert_eq!(calc.invariant_dim(&t).unwrap(), calc.invariant_dim(&shuffled).unwrap());
    }

    #[test]
    fn transport_is_injective_and_equivariant(
        name in proptest::sample::select(&["g2", "frobenius:A2:2", "short_to_dual:B2", "sp_to_spin:2", "so_to_sp:2"][..]),
        v in proptest::collection::vec(0i64..=2, 2),
    ) {
        let rn = lsmult::renorm::parse_builtin(name).unwrap();
        let mu = Weight(v);
        let set = chain_set(&rn.source, &mu).unwrap();
        let mut seen = std::collections::HashSet::new();
        for c in &set.chains {
            let img = rn.transport_chain(c).unwrap();
            rn.check_transport_equivariance(c, &img).unwrap();
            prop_assert!(seen.insert(img));
        }
    }
}

