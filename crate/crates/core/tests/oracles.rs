//! Worked examples checked against brute-force recomputation of the
//! defining set conditions, independent of the library's own index tables.

use orthosps_core::classical::{classical_properties, ClassicalData};
use orthosps_core::{
    decomposition_morphism, gen_boolean, gen_mo, validate_ortho, Error, OrthoSps, Sps, StateRoster, StateSet,
};

fn set(xs: &[usize]) -> StateSet {
    xs.iter().copied().collect()
}

fn roster4() -> StateRoster {
    StateRoster::new(["p1", "q1", "p2", "q2"]).unwrap()
}

/// Intersection closure, bottom and top, checked pair by pair.
fn oracle_is_sps(n: usize, family: &[StateSet]) -> bool {
    let full = StateSet::full(n);
    family.contains(&StateSet::empty())
        && family.contains(&full)
        && family.iter().all(|&a| family.iter().all(|&b| family.contains(&(a & b))))
}

/// `p ⊥ q` iff some property holds at `p` while its complement holds at `q`.
fn oracle_orthogonal(o: &OrthoSps, p: usize, q: usize) -> bool {
    (0..o.len()).any(|a| o.kappa(a).contains(p) && o.kappa(o.perp(a)).contains(q))
}

#[test]
fn small_family_is_a_state_property_system() {
    let family = [set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[0, 1]), set(&[0, 1, 2, 3])];
    assert!(oracle_is_sps(4, &family));
    let sps = Sps::new(roster4(), family).unwrap();
    assert_eq!(sps.len(), 6);
    assert_eq!(sps.kappa(sps.bottom()), StateSet::empty());
    assert_eq!(sps.kappa(sps.top()), StateSet::full(4));
}

#[test]
fn removing_the_empty_set_is_rejected() {
    let family = [set(&[0]), set(&[1]), set(&[2]), set(&[0, 1]), set(&[0, 1, 2, 3])];
    assert!(!oracle_is_sps(4, &family));
    assert_eq!(Sps::new(roster4(), family), Err(Error::MissingBottom));
}

#[test]
fn meets_are_intersections_and_joins_are_least_covers() {
    let family = [set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[0, 1]), set(&[0, 1, 2, 3])];
    let sps = Sps::new(roster4(), family).unwrap();
    for a in 0..sps.len() {
        for b in 0..sps.len() {
            let meet = sps.kappa(sps.meet2(a, b));
            assert_eq!(meet, sps.kappa(a) & sps.kappa(b));
            let union = sps.kappa(a) | sps.kappa(b);
            let least = family
                .iter()
                .copied()
                .filter(|s| union.is_subset(*s))
                .reduce(|x, y| x & y)
                .unwrap();
            assert_eq!(sps.kappa(sps.join2(a, b)), least);
        }
    }
    // {p1} ∨ {p2} is only covered by Σ
    let p1 = sps.index_of(set(&[0])).unwrap();
    let p2 = sps.index_of(set(&[2])).unwrap();
    assert_eq!(sps.join2(p1, p2), sps.top());
}

#[test]
fn mo2_orthogonality_matches_the_pairing() {
    let mo2 = gen_mo(2).unwrap();
    for p in 0..4 {
        for q in 0..4 {
            assert_eq!(mo2.orthogonal(p, q).unwrap(), oracle_orthogonal(&mo2, p, q), "{p} {q}");
        }
    }
    // p1 ⊥ q1 and p2 ⊥ q2 only
    assert!(mo2.orthogonal(0, 1).unwrap());
    assert!(mo2.orthogonal(2, 3).unwrap());
    assert!(!mo2.orthogonal(0, 2).unwrap());
    assert!(!mo2.orthogonal(0, 3).unwrap());
    assert!(mo2.symmetry_report().is_clean());
}

#[test]
fn mo2_with_crossed_atoms_is_still_orthocomplemented() {
    // canonical order ∅, {p1}, {q1}, {p2}, {q2}, Σ; pair p1↔p2 and q1↔q2
    let sps = Sps::new(
        roster4(),
        [set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[3]), set(&[0, 1, 2, 3])],
    )
    .unwrap();
    let o = validate_ortho(sps, vec![5, 3, 4, 1, 2, 0]).unwrap();
    assert!(o.orthogonal(0, 2).unwrap());
    assert!(!o.orthogonal(0, 1).unwrap());
}

#[test]
fn mo2_has_only_trivial_classical_part() {
    let mo2 = gen_mo(2).unwrap();
    let c = classical_properties(&mo2);
    let oracle: Vec<usize> = (0..mo2.len())
        .filter(|&a| {
            let a_perp = mo2.perp(a);
            (mo2.kappa(a) | mo2.kappa(a_perp)) == StateSet::full(4)
        })
        .collect();
    assert_eq!(c, oracle);
    assert_eq!(c.len(), 2);
    let data = ClassicalData::new(&mo2).unwrap();
    assert_eq!(data.omega().len(), 1);
}

#[test]
fn boolean_lattice_is_entirely_classical() {
    for n in 1..=5 {
        let b = gen_boolean(n).unwrap();
        assert_eq!(b.len(), 1 << n);
        assert_eq!(classical_properties(&b).len(), 1 << n);
        let data = ClassicalData::new(&b).unwrap();
        assert_eq!(data.omega().len(), n);
        let d = decomposition_morphism(&b).unwrap();
        assert_eq!(d.components.len(), n);
        for comp in &d.components {
            assert_eq!((comp.osps.state_count(), comp.osps.len()), (1, 2));
        }
    }
}

#[test]
fn mo_k_sizes() {
    for k in 2..=6 {
        let mo = gen_mo(k).unwrap();
        assert_eq!(mo.state_count(), 2 * k);
        assert_eq!(mo.len(), 2 * k + 2);
        let family: Vec<StateSet> = (0..mo.len()).map(|a| mo.kappa(a)).collect();
        assert!(oracle_is_sps(2 * k, &family));
    }
    assert!(matches!(gen_mo(1), Err(Error::InvalidParameter(_))));
}
