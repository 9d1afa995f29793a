use proptest::prelude::*;
use tsslab::group::{centralizer, conjugacy_classes, derived_series, is_normal_subgroup};
use tsslab::groupspec::build_group;
use tsslab::hom::{
    braid_presentation, enumerate_homs, enumerate_table_homs, fundamental_lemma_check,
};
use tsslab::tss::{
    contains_inverse_pair, is_tss, realized_permutations, tss_levels, SearchOptions,
};
use tsslab::{Elem, FiniteGroup};

const ROSTER: &[&str] = &[
    "cyclic:1",
    "cyclic:7",
    "cyclic:12",
    "dihedral:3",
    "dihedral:4",
    "dihedral:6",
    "dihedral:8",
    "sym:3",
    "sym:4",
    "semidirect:3,6,2",
    "semidirect:5,4,2",
    "semidirect:7,3,2",
    "product:cyclic:2,dihedral:4",
    "product:sym:3,cyclic:3",
];

fn any_group() -> impl Strategy<Value = FiniteGroup> {
    let roster = prop::sample::select(ROSTER).prop_map(|s| build_group(s).unwrap());
    // Random well-defined semidirect products Z_p x| Z_m.
    let semidirect = (
        prop::sample::select(&[3u64, 5, 7, 11][..]),
        1u64..=12,
        1u64..11,
    )
        .prop_filter_map("k^m != 1 mod p", |(p, m, k)| {
            build_group(&format!("semidirect:{p},{m},{}", k % p)).ok()
        });
    prop_oneof![3 => roster, 1 => semidirect]
}

fn group_and_elements(count: usize) -> impl Strategy<Value = (FiniteGroup, Vec<Elem>)> {
    any_group().prop_flat_map(move |g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, count))
    })
}

fn all_sets(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let opts = SearchOptions {
        factorial_gate: false,
        up_to_conjugacy: false,
    };
    tss_levels(g, opts)
        .into_iter()
        .flatten()
        .map(|c| c.elements)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms((g, xs) in group_and_elements(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        let e = g.identity();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(e, a), a);
        prop_assert_eq!(g.mul(a, e), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), e);
        let mut row: Vec<Elem> = g.elements().map(|x| g.mul(a, x)).collect();
        row.sort_unstable();
        prop_assert!(row.into_iter().eq(g.elements()));
    }

    #[test]
    fn classes_match_conjugator_search((g, xs) in group_and_elements(2)) {
        let classes = conjugacy_classes(&g);
        let (x, y) = (xs[0], xs[1]);
        let conjugate = g.elements().any(|h| g.conj(h, x) == y);
        prop_assert_eq!(classes.class_of[x] == classes.class_of[y], conjugate);
        let class_size = classes.classes[classes.class_of[x]].len();
        let cent = centralizer(&g, x).unwrap();
        prop_assert_eq!(class_size * cent.len(), g.order());
        prop_assert!(cent.iter().all(|&a| cent.iter().all(|&b| cent.contains(&g.mul(a, g.inv(b))))));
    }

    #[test]
    fn derived_series_descends_through_normal_subgroups(g in any_group()) {
        let series = derived_series(&g);
        for pair in series.terms.windows(2) {
            prop_assert!(pair[1].len() < pair[0].len());
            prop_assert!(is_normal_subgroup(&g, &pair[0], &pair[1]));
        }
    }

    #[test]
    fn singletons_are_totally_symmetric((g, xs) in group_and_elements(1)) {
        prop_assert!(is_tss(&g, &xs).unwrap().is_some());
    }

    #[test]
    fn stabilizer_sequence_is_exact_for_any_set((g, xs) in group_and_elements(3)) {
        let mut set = xs;
        set.sort_unstable();
        set.dedup();
        let dec = realized_permutations(&g, &set).unwrap();
        prop_assert!(dec.ses_holds());
        let kernel: Vec<Elem> = dec
            .stabilizer
            .iter()
            .copied()
            .filter(|&h| set.iter().all(|&x| g.commutes(h, x)))
            .collect();
        prop_assert_eq!(kernel, dec.kernel);
    }

    #[test]
    fn certified_sets_are_closed_and_homogeneous((g, xs) in group_and_elements(1)) {
        let classes = conjugacy_classes(&g);
        let h = xs[0];
        for set in all_sets(&g) {
            if set.len() < 2 {
                continue;
            }
            prop_assert!(set.iter().all(|&x| classes.class_of[x] == classes.class_of[set[0]]));
            prop_assert!(set.iter().all(|&x| g.element_order(x) == g.element_order(set[0])));
            if contains_inverse_pair(&g, &set) {
                prop_assert_eq!(set.len(), 2);
            }
            let conjugated: Vec<Elem> = set.iter().map(|&x| g.conj(h, x)).collect();
            prop_assert!(is_tss(&g, &conjugated).unwrap().is_some());
            prop_assert!(is_tss(&g, &set[1..]).unwrap().is_some());
        }
    }

    #[test]
    fn images_of_sets_have_full_size_or_collapse(
        source in prop::sample::select(&["dihedral:4", "sym:3", "sym:4", "product:cyclic:2,dihedral:4"][..]),
        target in prop::sample::select(&["cyclic:2", "cyclic:6", "sym:3", "dihedral:4"][..]),
        pick in any::<prop::sample::Index>(),
    ) {
        let (g, h) = (build_group(source).unwrap(), build_group(target).unwrap());
        let maps = enumerate_table_homs(&g, &h, 10_000_000).unwrap();
        let map = pick.get(&maps);
        let opts = SearchOptions { factorial_gate: false, up_to_conjugacy: false };
        for cert in tss_levels(&g, opts).into_iter().flatten() {
            prop_assert!(fundamental_lemma_check(map, &cert).unwrap().holds());
        }
    }

    #[test]
    fn braid_maps_to_abelian_groups_are_constant(strands in 3usize..6, order in 1usize..9) {
        let target = build_group(&format!("cyclic:{order}")).unwrap();
        let homs = enumerate_homs(&braid_presentation(strands).unwrap(), &target, 10_000_000).unwrap();
        prop_assert_eq!(homs.images.len(), order);
        prop_assert!(homs.images.iter().all(|im| im.iter().all(|&x| x == im[0])));
    }
}

#[test]
fn product_projections_are_homomorphisms() {
    let (g, h) = (
        build_group("sym:3").unwrap(),
        build_group("dihedral:4").unwrap(),
    );
    let p = build_group("product:sym:3,dihedral:4").unwrap();
    let m = h.order();
    for a in p.elements() {
        for b in p.elements() {
            let ab = p.mul(a, b);
            assert_eq!(ab / m, g.mul(a / m, b / m));
            assert_eq!(ab % m, h.mul(a % m, b % m));
        }
    }
}

#[test]
fn trivial_semidirect_action_gives_the_direct_product() {
    let semi = build_group("semidirect:5,10,1").unwrap();
    let direct = build_group("product:cyclic:5,cyclic:10").unwrap();
    assert!(semi.is_abelian());
    let orders = |g: &FiniteGroup| {
        let mut o: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        o.sort_unstable();
        o
    };
    assert_eq!(orders(&semi), orders(&direct));
}
