mod common;

use qdslab_core::autgroup::{self, AutPair, LiftOutcome, StabChain};
use qdslab_core::incidence::{selfconjugate_points, standard_correlation, sum_structure};
use qdslab_core::{Caps, GroupSpec, IncidenceStructure};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use common::*;

fn order_of(s: &IncidenceStructure, gens: &[AutPair]) -> u128 {
    let levi: Vec<_> = gens.iter().map(AutPair::to_levi).collect();
    StabChain::new(s.n_points() + s.n_lines(), &levi, &[]).order().unwrap()
}

/// `(x₁, x₂, y) ↦ (x₂, x₁, y)` on `D(C₃²,𝒟₂) ⊕ D(C₁₃, D)`.
fn swap_pappus_coordinates(s: &IncidenceStructure) -> AutPair {
    let p = s.provenance().unwrap();
    let perm = (0..s.n_points())
        .map(|x| {
            let c = p.coords(x);
            p.from_coords(&[c[1], c[0], c[2]]).unwrap()
        })
        .collect();
    AutPair::from_point_perm(s, perm).unwrap()
}

#[test]
fn extra_multiplier_in_first_pg23_sum() {
    let caps = Caps::default();
    let n = coset(&[13], &[0, 1, 3, 9]);
    let c13 = GroupSpec::cyclic(13).unwrap();
    let mu3 = autgroup::multiplication_map(&c13, 3).unwrap();
    let lift = autgroup::lift_group_automorphism(&n, &mu3).unwrap().unwrap();
    assert_eq!(lift.shift, 0);

    let m1 = pappus_plus(&[0, 1, 3, 9]);
    let ids = AutPair::identity(3, 3);
    let extra = autgroup::product_automorphism(&m1, &[ids.clone(), ids.clone(), lift.map])
        .unwrap()
        .unwrap();
    assert!(extra.is_automorphism_of(&m1));
    assert_eq!(extra.point_perm[0], 0);
    assert_eq!(extra.order(), 3);

    let mut gens = autgroup::translations(&m1).unwrap();
    gens.push(swap_pappus_coordinates(&m1));
    assert!(gens.iter().all(|g| g.is_automorphism_of(&m1)));
    assert_eq!(order_of(&m1, &gens), 234);
    let base: StabChain = StabChain::new(
        m1.n_points() + m1.n_lines(),
        &gens.iter().map(AutPair::to_levi).collect::<Vec<_>>(),
        &[],
    );
    assert!(!base.contains(&extra.to_levi()));
    gens.push(extra);
    assert_eq!(order_of(&m1, &gens), 702);
    assert_eq!(autgroup::automorphism_group(&m1, &caps).unwrap().order, 702);

    // for the second set 3·D is a proper translate, so the product map is unavailable
    let n2 = coset(&[13], &[0, 2, 8, 12]);
    let lift2 = autgroup::lift_group_automorphism(&n2, &mu3).unwrap().unwrap();
    assert_eq!(lift2.shift, 11);
    let m2 = pappus_plus(&[0, 2, 8, 12]);
    assert_eq!(
        autgroup::product_automorphism(&m2, &[ids.clone(), ids, lift2.map]).unwrap(),
        None
    );
    assert_eq!(autgroup::automorphism_group(&m2, &caps).unwrap().order, 234);
}

#[test]
fn conjugating_translations() {
    let s = canonical(&[4, 4, 4]);
    let p = s.provenance().unwrap();
    let caps = Caps::default();
    let g = autgroup::automorphism_group(&s, &caps).unwrap();
    let stab = autgroup::stabilizer(&g, p.group().identity()).unwrap();
    assert_eq!(stab.order, 24);
    for f in &stab.generators {
        let finv = f.inverse();
        for v in p.group().elements() {
            let lhs = f.compose(&autgroup::translation(p, v)).compose(&finv);
            assert_eq!(lhs, autgroup::translation(p, f.point_perm[v]));
        }
    }
    let f2 = IncidenceStructure::build_power(&fano_set(), 2, &caps).unwrap();
    let p2 = f2.provenance().unwrap();
    let beta = autgroup::coordinate_permutation_aut(&f2, &[1, 0]).unwrap();
    assert!(beta.is_automorphism_of(&f2));
    let binv = beta.inverse();
    for v in p2.group().elements() {
        let lhs = beta.compose(&autgroup::translation(p2, v)).compose(&binv);
        assert_eq!(lhs, autgroup::translation(p2, beta.point_perm[v]));
    }
}

#[test]
fn isomorphism_laws() {
    let caps = Caps::default();
    let fx: Vec<_> = fixtures().into_iter().filter(|(_, s)| s.n_points() <= 64).collect();
    for (name, s) in &fx {
        let id = autgroup::isomorphism(s, s, &caps).unwrap().unwrap();
        assert!(id.is_isomorphism(s, s), "{name}");
    }
    let a = fano();
    let b = coset(&[7], &[0, 1, 5]);
    let c = coset(&[7], &[0, 2, 3]);
    let ab = autgroup::isomorphism(&a, &b, &caps).unwrap().unwrap();
    let ba = autgroup::isomorphism(&b, &a, &caps).unwrap().unwrap();
    let bc = autgroup::isomorphism(&b, &c, &caps).unwrap().unwrap();
    assert!(ab.is_isomorphism(&a, &b) && ba.is_isomorphism(&b, &a));
    assert!(bc.compose(&ab).is_isomorphism(&a, &c));
    assert!(autgroup::isomorphism(&canonical(&[3, 3]), &fano(), &caps)
        .unwrap()
        .is_none());
    assert!(autgroup::isomorphism(&multi_fano(3), &multi_fano(7), &caps)
        .unwrap()
        .is_none());
}

#[test]
fn order_survives_relabelling() {
    let caps = Caps::default();
    let mut rng = StdRng::seed_from_u64(7);
    for (name, s) in fixtures().into_iter().filter(|(_, s)| s.n_points() <= 64) {
        let mut perm: Vec<usize> = (0..s.n_points()).collect();
        perm.shuffle(&mut rng);
        let mut lines: Vec<Vec<usize>> = s.lines().iter().map(|l| l.iter().map(|&x| perm[x]).collect()).collect();
        lines.shuffle(&mut rng);
        let t = IncidenceStructure::from_lines(s.n_points(), lines).unwrap();
        let want = autgroup::automorphism_group(&s, &caps).unwrap().order;
        assert_eq!(autgroup::automorphism_group(&t, &caps).unwrap().order, want, "{name}");
        assert!(autgroup::isomorphism(&s, &t, &caps)
            .unwrap()
            .unwrap()
            .is_isomorphism(&s, &t));
    }
}

#[test]
fn cyclic_lift_of_fano_doubling() {
    let caps = Caps::default();
    let f = fano();
    let mu2 = autgroup::multiplication_map(f.provenance().unwrap().group(), 2).unwrap();
    let lifted = autgroup::lift_group_automorphism(&f, &mu2).unwrap().unwrap().map;
    for k in 2..=14 {
        let r = autgroup::cyclic_lift(&f, &lifted, k, &caps).unwrap();
        assert_eq!(r.outcome == LiftOutcome::Closes, k % 7 == 0, "k={k}");
        if let Some(a) = r.automorphism {
            let target = multi_fano(k);
            assert!(a.is_automorphism_of(&target));
            assert_eq!(a.point_perm[0], 0);
            assert!(!a.is_identity());
            assert!(autgroup::automorphism_group(&target, &caps).unwrap().contains(&a));
        }
    }
}

#[test]
fn correlations_and_duals() {
    let caps = Caps::default();
    let f = fano();
    let kappa = standard_correlation(&f).unwrap();
    assert!(kappa.is_correlation_of(&f) && kappa.is_involution());
    assert_eq!(selfconjugate_points(&f).unwrap(), vec![0, 4, 5]);
    for (name, s) in fixtures().into_iter().filter(|(_, s)| s.n_points() <= 64) {
        let dd = s.dual().dual();
        assert!(autgroup::isomorphism(&s, &dd, &caps).unwrap().is_some(), "{name}");
        assert!(standard_correlation(&s).unwrap().is_correlation_of(&s), "{name}");
    }
}

#[test]
fn sums_associate() {
    let caps = Caps::default();
    let (a, b, c) = (coset(&[3], &[0, 1]), coset(&[4], &[0, 1]), fano());
    let left = sum_structure(&sum_structure(&a, &b, &caps).unwrap(), &c, &caps).unwrap();
    let right = sum_structure(&a, &sum_structure(&b, &c, &caps).unwrap(), &caps).unwrap();
    assert_eq!(left.lines(), right.lines());
    let swapped = sum_structure(&c, &sum_structure(&a, &b, &caps).unwrap(), &caps).unwrap();
    assert!(autgroup::isomorphism(&left, &swapped, &caps).unwrap().is_some());
}

#[test]
fn budget_is_an_error() {
    let caps = Caps::with_max_steps(5);
    let err = autgroup::automorphism_group(&canonical(&[3, 3, 3]), &caps).unwrap_err();
    assert!(err.is_cap());
}
