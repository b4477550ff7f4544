use idealgraph_core::rings::{enumerate_ideals, is_independent_family, parse_ring_spec};
use idealgraph_core::{Ideal, RingSpec};
use proptest::prelude::*;
use proptest::sample::Index;

const SPECS: &[&str] = &[
    "Z12",
    "Z8 x GF(3)",
    "vs(2,2) x Z4",
    "vs(3,2)",
    "vs(2,3)",
    "chain(4,3) x GF(4) x GF(2)",
    "GF(2) x GF(3) x GF(5) x GF(7)",
    "Z16 x Z9",
];

fn ring() -> impl Strategy<Value = (RingSpec, Vec<Ideal>)> {
    proptest::sample::select(SPECS).prop_map(|s| {
        let spec = parse_ring_spec(s).unwrap();
        let ideals = enumerate_ideals(&spec, 10_000).unwrap();
        (spec, ideals)
    })
}

fn pick(ideals: &[Ideal], i: &Index) -> Ideal {
    ideals[i.index(ideals.len())].clone()
}

proptest! {
    #[test]
    fn meet_and_join_form_a_lattice((_, ideals) in ring(), i: Index, j: Index, k: Index) {
        let (a, b, c) = (pick(&ideals, &i), pick(&ideals, &j), pick(&ideals, &k));
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        prop_assert_eq!(a.meet(&b).unwrap().meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(a.meet(&a).unwrap(), a.clone());
        prop_assert_eq!(a.join(&a).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn order_agrees_with_meet_and_join((_, ideals) in ring(), i: Index, j: Index) {
        let (a, b) = (pick(&ideals, &i), pick(&ideals, &j));
        let le = b.contains(&a).unwrap();
        prop_assert_eq!(le, a.meet(&b).unwrap() == a);
        prop_assert_eq!(le, a.join(&b).unwrap() == b);
        prop_assert_eq!(a.meets(&b).unwrap(), !a.meet(&b).unwrap().is_zero());
    }

    #[test]
    fn modular_law((_, ideals) in ring(), i: Index, j: Index, k: Index) {
        let (a, b, c) = (pick(&ideals, &i), pick(&ideals, &j), pick(&ideals, &k));
        if c.contains(&a).unwrap() {
            let left = a.join(&b).unwrap().meet(&c).unwrap();
            let right = a.join(&b.meet(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn product_lies_in_meet((spec, ideals) in ring(), i: Index, j: Index) {
        let (a, b) = (pick(&ideals, &i), pick(&ideals, &j));
        let p = a.product(&b).unwrap();
        prop_assert_eq!(p.clone(), b.product(&a).unwrap());
        prop_assert!(a.meet(&b).unwrap().contains(&p).unwrap());
        if spec.is_reduced() {
            prop_assert_eq!(p, a.meet(&b).unwrap());
            prop_assert_eq!(a.product(&a).unwrap(), a);
        }
    }

    #[test]
    fn independence_ignores_order((_, ideals) in ring(), picks in proptest::collection::vec(any::<Index>(), 1..5), seed: u64) {
        let family: Vec<Ideal> = picks
            .iter()
            .map(|i| pick(&ideals, i))
            .filter(Ideal::is_nontrivial)
            .collect();
        prop_assume!(!family.is_empty());
        let mut shuffled = family.clone();
        let n = shuffled.len();
        for t in 0..n {
            shuffled.swap(t, (seed as usize).wrapping_add(t * 7) % n);
        }
        prop_assert_eq!(
            is_independent_family(&family).unwrap(),
            is_independent_family(&shuffled).unwrap()
        );
    }
}

#[test]
fn reduced_rings_have_no_nilpotent_ideals() {
    for s in ["GF(2) x GF(3) x GF(5)", "GF(4) x GF(9)"] {
        let spec = parse_ring_spec(s).unwrap();
        for a in enumerate_ideals(&spec, 1000).unwrap() {
            if !a.is_zero() {
                assert!(!a.product(&a).unwrap().is_zero(), "{s}: {a}");
            }
        }
    }
    let spec = parse_ring_spec("Z8").unwrap();
    let m = enumerate_ideals(&spec, 10).unwrap()[1].clone();
    let cube = m.product(&m).unwrap().product(&m).unwrap();
    assert!(cube.is_zero());
}
