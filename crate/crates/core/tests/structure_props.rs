use loomlab::hypercore::{canonical_form, canonical_labeling, is_cross_intersecting, is_orthogonal, isomorphic, CanonicalForm};
use loomlab::loom::{verify_loom, Loom};
use loomlab::weave::{
    blow_up, blow_up_loom, compose1, compose2, decompose, grid_loom, loom_u, loom_v, matching_transversal_loom,
    r2_loom, vane_33, BlowupSpec, Verify,
};
use loomlab::{EdgeSet, Hypergraph};
use proptest::prelude::*;

fn zoo() -> Vec<Loom> {
    vec![
        loom_u(),
        loom_v(2).unwrap(),
        loom_v(3).unwrap(),
        loom_v(2).unwrap().swap(),
        matching_transversal_loom(2, 2).unwrap(),
        matching_transversal_loom(2, 3).unwrap(),
        grid_loom(2).unwrap(),
        r2_loom(&[2]).unwrap(),
        r2_loom(&[2, 1]).unwrap(),
        vane_33(),
    ]
}

fn key(l: &Loom) -> CanonicalForm {
    let edges: Vec<(u8, EdgeSet)> =
        l.a().edges().iter().map(|&e| (0, e)).chain(l.b().edges().iter().map(|&e| (1, e))).collect();
    canonical_labeling(l.n(), &edges).0
}

fn leaf_keys(l: &Loom) -> Vec<CanonicalForm> {
    let mut keys: Vec<CanonicalForm> = decompose(l).unwrap().leaves().into_iter().map(key).collect();
    keys.sort();
    keys
}

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u128..(1u128 << n), 1..=8)
            .prop_map(move |bits| Hypergraph::from_sets(n, bits.into_iter().map(EdgeSet::from_bits)).unwrap())
    })
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Hypergraph, Vec<usize>)> {
    hypergraph(max_n).prop_flat_map(|h| {
        let n = h.n();
        (Just(h), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels((h, perm) in with_perm(8)) {
        let g = h.relabel(&perm, h.n()).unwrap();
        prop_assert_eq!(canonical_form(&h).0, canonical_form(&g).0);
        let cert = isomorphic(&h, &g).expect("relabeled copy is isomorphic");
        prop_assert_eq!(cert.apply(&h).unwrap(), g);
    }

    #[test]
    fn orthogonality_is_symmetric(a in hypergraph(6), b in hypergraph(6)) {
        prop_assume!(a.n() == b.n());
        let ab = is_orthogonal(&a, &b).unwrap();
        prop_assert_eq!(ab, is_orthogonal(&b, &a).unwrap());
        if ab {
            prop_assert!(is_cross_intersecting(&a, &b));
        }
    }

    #[test]
    fn looms_survive_relabeling_and_swap(i in 0usize..10, seed in any::<u64>()) {
        let l = &zoo()[i];
        let mut perm: Vec<usize> = (0..l.n()).collect();
        let mut x = seed;
        for k in (1..perm.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (x >> 33) as usize % (k + 1));
        }
        let moved = verify_loom(&l.a().relabel(&perm, l.n()).unwrap(), &l.b().relabel(&perm, l.n()).unwrap()).unwrap();
        prop_assert_eq!((moved.r(), moved.s()), (l.r(), l.s()));
        let sw = verify_loom(l.b(), l.a()).unwrap();
        prop_assert_eq!((sw.r(), sw.s()), (l.s(), l.r()));
    }

    #[test]
    fn compositions_decompose_into_their_factors(i in 0usize..10, j in 0usize..10, second in any::<bool>()) {
        let z = zoo();
        let (l1, l2) = (&z[i], &z[j]);
        let c = if second {
            prop_assume!(l1.r() == l2.r());
            compose2(l1, l2).unwrap()
        } else {
            prop_assume!(l1.s() == l2.s());
            compose1(l1, l2).unwrap()
        };
        prop_assert_eq!(c.n(), l1.n() + l2.n());
        let mut want = leaf_keys(l1);
        want.extend(leaf_keys(l2));
        want.sort();
        prop_assert_eq!(leaf_keys(&c), want);
    }

    #[test]
    fn blow_ups_stay_orthogonal(p in 0usize..5, picks in prop::collection::vec(0usize..10, 4)) {
        let outer = [loom_u(), loom_v(2).unwrap(), loom_v(2).unwrap().swap(), matching_transversal_loom(2, 2).unwrap(), r2_loom(&[2]).unwrap()];
        let outer = &outer[p];
        let z = zoo();
        let parts: Vec<Loom> = (0..outer.n()).map(|k| z[picks[k % picks.len()]].clone()).collect();
        let spec = BlowupSpec::new(outer.a().clone(), outer.b().clone(), parts, None).unwrap();
        let out = blow_up(&spec).unwrap();
        prop_assert!(out.report.p_orthogonal);
        prop_assert!(out.report.cd_orthogonal);
        prop_assert!(is_orthogonal(&out.c, &out.d).unwrap());
        if out.report.holds() {
            let l = blow_up_loom(&spec, &Verify::Full).unwrap();
            prop_assert_eq!(Some(l.r()), out.report.c);
            prop_assert_eq!(Some(l.s()), out.report.d);
        }
    }
}
