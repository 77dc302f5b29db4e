mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;

use qdslab_core::groups::{direct_sum, embed_first, embed_second, project_first, project_second};
use qdslab_core::qds::{self, canonical_set, diff_profile, qds_sum};
use qdslab_core::{autgroup, Caps, GroupSpec, IncidenceStructure, QDSet};

/// Symmetric group on three letters, elements as permutations in
/// lexicographic order, `(a·b)(x) = a(b(x))`.
fn s3() -> GroupSpec {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    GroupSpec::from_table(table, 4096).unwrap()
}

fn groups() -> Vec<GroupSpec> {
    let caps = Caps::default();
    vec![
        s3(),
        direct_sum(&s3(), &GroupSpec::cyclic(2).unwrap(), &caps).unwrap(),
        GroupSpec::cyclic_product(&[3, 4, 5]).unwrap(),
        GroupSpec::cyclic_product(&[2, 2, 2]).unwrap(),
    ]
}

fn small_qds() -> impl Strategy<Value = QDSet> {
    (3usize..=15)
        .prop_flat_map(|n| (Just(n), subsequence((0..n).collect::<Vec<_>>(), 2..=4.min(n - 1))))
        .prop_filter_map("not a QDS", |(n, d)| {
            let g = GroupSpec::cyclic(n).unwrap();
            qds::is_qds(&g, &d).then(|| QDSet::new(g, &d).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(gi in 0usize..4, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let g = &groups()[gi];
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
        prop_assert_eq!(g.op(a, g.identity()), a);
        prop_assert_eq!(g.op(a, g.inverse(a)), g.identity());
        prop_assert_eq!(g.op(g.div(a, b), b), a);
        prop_assert_eq!(g.op(b, g.ldiv(b, a)), a);
    }

    #[test]
    fn stabilizers_and_generated_subgroups(gi in 0usize..4, picks in prop::collection::vec(0usize..1000, 1..4)) {
        let g = &groups()[gi];
        let set: Vec<usize> = {
            let mut v: Vec<usize> = picks.iter().map(|&x| x % g.order()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let stab = g.left_stabilizer(&set);
        prop_assert_eq!(g.order() % stab.len(), 0);
        for &x in &stab {
            prop_assert!(stab.contains(&g.inverse(x)));
            for &y in &stab {
                prop_assert!(stab.contains(&g.op(x, y)));
            }
        }
        let h = g.subgroup_generated(&set);
        prop_assert_eq!(g.order() % h.len(), 0);
        prop_assert_eq!(g.subgroup_generated(&h), h);
    }

    #[test]
    fn direct_sum_round_trip(a in 0usize..6, b in 0usize..10) {
        let (g1, g2) = (s3(), GroupSpec::cyclic(10).unwrap());
        let sum = direct_sum(&g1, &g2, &Caps::default()).unwrap();
        let x = sum.op(embed_first(&g2, a), embed_second(&g1, &g2, b));
        prop_assert_eq!(project_first(&g2, x), a);
        prop_assert_eq!(project_second(&g2, x), b);
    }

    #[test]
    fn perfect_sets_are_qds(d in subsequence((0usize..13).collect::<Vec<_>>(), 4)) {
        let g = GroupSpec::cyclic(13).unwrap();
        if qds::is_perfect_difference_set(&g, &d) {
            prop_assert!(qds::is_qds(&g, &d));
        }
    }

    #[test]
    fn sums_stay_qds(a in small_qds(), b in small_qds()) {
        let s = qds_sum(&a, &b, &Caps::default()).unwrap();
        prop_assert!(s.is_qds());
        prop_assert_eq!(s.len(), a.len() + b.len() - 1);
    }

    #[test]
    fn profile_identities(d in small_qds()) {
        let p = diff_profile(d.group(), d.elements()).unwrap();
        prop_assert!(p.neg_d.contains(&0));
        prop_assert_eq!(p.neg_d.len(), d.len());
        let n = d.group().order();
        for &u in &p.diff_dd {
            prop_assert!(p.diff_dd.contains(&((n - u) % n)));
        }
    }

    #[test]
    fn coset_structure_counts_and_formulas(d in small_qds()) {
        let s = IncidenceStructure::build(&d).unwrap();
        let p = s.provenance().unwrap();
        let g = d.group();
        let gd = p.stabilizer().len();
        prop_assert_eq!(s.n_lines(), g.order() / gd);
        prop_assert_eq!(s.line_size(), Some(d.len()));
        prop_assert_eq!(s.point_degree(), Some(d.len() / gd));
        prop_assert!(s.is_pls());
        for a in g.elements() {
            for (l, &b) in p.line_reps().iter().enumerate() {
                // (a) I [b] iff -b + a in D
                prop_assert_eq!(s.incident(a, l), d.contains(g.ldiv(b, a)));
            }
        }
        for a in g.elements() {
            for b in g.elements().filter(|&b| b != a) {
                prop_assert_eq!(p.join_by_formula(a, b), s.join(a, b));
            }
        }
    }

    #[test]
    fn automorphisms_preserve_incidence(d in small_qds()) {
        let s = IncidenceStructure::build(&d).unwrap();
        let g = autgroup::automorphism_group(&s, &Caps::default()).unwrap();
        for f in &g.generators {
            prop_assert!(f.is_automorphism_of(&s));
        }
        prop_assert_eq!(g.order % s.n_points() as u128, 0);
        if s.n_points() <= 12 {
            prop_assert_eq!(g.order, common::naive_automorphism_count(&s) as u128);
        }
    }
}

#[test]
fn canonical_sets_are_iterated_sums() {
    let caps = Caps::default();
    for m in [&[3, 3][..], &[4, 5, 3], &[5, 5, 5], &[7, 3]] {
        let parts: Vec<QDSet> = m
            .iter()
            .map(|&k| QDSet::new(GroupSpec::cyclic(k).unwrap(), &[0, 1]).unwrap())
            .collect();
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = qds_sum(&acc, p, &caps).unwrap();
        }
        let c = canonical_set(m).unwrap();
        assert_eq!(acc.elements(), c.elements(), "{m:?}");
        assert_eq!(acc.group().moduli(), c.group().moduli());
    }
}

#[test]
fn star_iff_order_above_three() {
    for k in 2..=7 {
        for n in 1..=3 {
            let d = canonical_set(&vec![k; n]).unwrap();
            let star = qds::satisfies_star(d.group(), d.elements()).unwrap_or(false);
            assert_eq!(star, k > 3, "k={k} n={n}");
        }
    }
}
