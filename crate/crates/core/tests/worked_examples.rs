//! Worked examples, each checked against a second computation that does not
//! share the code path under test.

use relcoh_core::genfrac::{gf_is_zero, top_cohomology_fraction};
use relcoh_core::local_cohomology::{cech_profile, top_sequence_exactness};
use relcoh_core::relcm::{
    ara_bounds, cd, determinant_map_injective, find_rsop, grade, is_rcm, is_rsop, quotient_chain_check,
    regular_rsop_check,
};
use relcoh_core::simplicial::projective_dimension;
use relcoh_core::{
    is_regular_sequence, radical_equal, Cd, Field, Ideal, ModulePresentation, MonomialIdeal, Polynomial,
    RegularSequence, Ring, SearchConfig,
};

fn xyz() -> (Ring, Polynomial, Polynomial, Polynomial) {
    let r = Ring::rational(&["x", "y", "z"]);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    (r, x, y, z)
}

fn on_ring(r: &Ring, a: Vec<Polynomial>) -> ModulePresentation {
    ModulePresentation::on_ring(Ideal::new(r, a))
}

#[test]
fn principal_ideal_in_two_variables() {
    let r = Ring::rational(&["x", "z"]);
    let (x, z) = (r.var(0), r.var(1));
    let m = on_ring(&r, vec![x.clone()]);
    assert_eq!(cd(&m).unwrap(), Cd::Finite(1));
    assert!(!radical_equal(
        &Ideal::new(&r, vec![z.mul(&x)]),
        &Ideal::new(&r, vec![x.clone()])
    ));
    // z ∈ Rad⟨zx⟩ would need z^k = q·zx; setting x = 0 gives z^k = 0.
    assert!(!Ideal::new(&r, vec![z.mul(&x)]).contains(&z.pow(5)));

    let h1 = cech_profile(
        &MonomialIdeal::from_masks(2, &[0b01]),
        &MonomialIdeal::from_masks(2, &[0b11]),
        Field::Rationals,
    )
    .unwrap();
    assert!(h1.is_nonzero(1));

    assert!(is_rsop(std::slice::from_ref(&x), &m).unwrap().verdict);
    assert!(!is_rsop(&[z.mul(&x)], &m).unwrap().verdict);
    assert!(determinant_map_injective(std::slice::from_ref(&x), &[vec![z.clone()]], &Ideal::zero(&r)).unwrap());
}

#[test]
fn unit_line_sequence_is_rsop_but_not_regular() {
    let (r, x, y, z) = xyz();
    let one = r.one();
    let seq = vec![y.mul(&one.sub(&x)), z.mul(&one.sub(&x)), x.clone()];
    let a = Ideal::new(&r, vec![x.clone(), y.clone(), z.clone()]);
    assert!(radical_equal(&Ideal::new(&r, seq.clone()), &a));
    // Direct oracle: x, y, z are polynomial combinations of the sequence.
    let s = Ideal::new(&r, seq.clone());
    assert!(s.contains(&x) && s.contains(&y) && s.contains(&z));

    let m = on_ring(&r, vec![x.clone(), y.clone(), z.clone()]);
    assert!(is_rsop(&seq, &m).unwrap().verdict);
    assert_eq!(
        is_regular_sequence(&seq, &Ideal::zero(&r)).unwrap(),
        RegularSequence::FailsAt(2)
    );
    // Witness: y ∉ ⟨y(1−x)⟩ but y·z(1−x) = z·y(1−x).
    let first = Ideal::new(&r, vec![seq[0].clone()]);
    assert!(!first.contains(&y));
    assert_eq!(y.mul(&seq[1]), z.mul(&seq[0]));
}

#[test]
fn triangle_edge_ideal() {
    let (r, x, y, z) = xyz();
    let (xy, xz, yz) = (x.mul(&y), x.mul(&z), y.mul(&z));
    let w = z.mul(&x.add(&y));
    // (xz)² = xz·w − z²·xy and (yz)² = yz·w − z²·xy.
    let z2 = z.mul(&z);
    assert_eq!(xz.mul(&xz), xz.mul(&w).sub(&z2.mul(&xy)));
    assert_eq!(yz.mul(&yz), yz.mul(&w).sub(&z2.mul(&xy)));

    let m = on_ring(&r, vec![xy.clone(), xz.clone(), yz.clone()]);
    let pd = projective_dimension(&MonomialIdeal::from_masks(3, &[0b011, 0b101, 0b110]), Field::Rationals).unwrap();
    assert_eq!(cd(&m).unwrap(), Cd::Finite(pd));
    assert_eq!(grade(&m).unwrap(), 2);
    assert!(is_regular_sequence(&[xy.clone(), w.clone()], &Ideal::zero(&r))
        .unwrap()
        .is_regular());

    let cfg = SearchConfig::default();
    let b = ara_bounds(&m, &cfg).unwrap();
    assert_eq!(b.exact(), Some(2));
    let set = b.certificate.unwrap().set;
    assert!(radical_equal(&Ideal::new(&r, set.clone()), m.a()));
    assert_eq!(find_rsop(&m, &cfg).unwrap(), Some(vec![xy.clone(), w.clone()]));

    let rep = is_rcm(&m, &cfg).unwrap();
    assert!(rep.is_rcm);
    assert_eq!(rep.rsop_regular, Some(RegularSequence::Regular));
    let chain = quotient_chain_check(&m, &[xy, w]).unwrap();
    assert!(chain.holds());
    let cds: Vec<Cd> = chain.steps.iter().map(|s| s.cd).collect();
    assert_eq!(cds, vec![Cd::Finite(2), Cd::Finite(1), Cd::Finite(0)]);
}

#[test]
fn rsop_verdict_is_stable_under_powers_and_permutations() {
    let (r, x, y, z) = xyz();
    let m = on_ring(&r, vec![x.mul(&y), x.mul(&z), y.mul(&z)]);
    let w = z.mul(&x.add(&y));
    let xy = x.mul(&y);
    for seq in [
        vec![xy.clone(), w.clone()],
        vec![w.clone(), xy.clone()],
        vec![xy.pow(2), w.pow(3)],
        vec![w.pow(2), xy.clone()],
    ] {
        assert!(is_rsop(&seq, &m).unwrap().verdict);
    }
    let xz = x.mul(&z);
    for seq in [vec![xy.clone(), xz.clone()], vec![xz.pow(2), xy.clone()]] {
        assert!(!is_rsop(&seq, &m).unwrap().verdict);
    }
}

#[test]
fn regular_rsop_needs_the_graded_setting() {
    let (r, x, y, z) = xyz();
    let one = r.one();
    let m = on_ring(&r, vec![x.clone(), y.clone(), z.clone()]);
    let bad = vec![y.mul(&one.sub(&x)), z.mul(&one.sub(&x)), x.clone()];
    let rep = regular_rsop_check(&m, &SearchConfig::default(), &[bad]).unwrap();
    assert!(rep.is_rcm);
    assert!(!rep.every_rsop_regular());
    assert!(rep.consistent());
}

#[test]
fn top_fraction_matches_top_cohomology() {
    let (r, x, y, z) = xyz();
    // ⟨x, y⟩ on R: H² ≠ 0 and 1/(x, y) ≠ 0.
    let gens = vec![x.clone(), y.clone()];
    let f = top_cohomology_fraction(&r, &r.one(), &[1, 1], &gens, &Ideal::zero(&r)).unwrap();
    assert!(gf_is_zero(&f, 20).is_nonzero());
    let p = cech_profile(
        &MonomialIdeal::from_masks(3, &[1, 2]),
        &MonomialIdeal::zero(3),
        Field::Rationals,
    )
    .unwrap();
    assert!(p.is_nonzero(2));
    // Modulo z·x the fraction over (x, z) dies, matching H²_{(x,z)}(R/⟨xz⟩) = 0.
    let c = Ideal::new(&r, vec![x.mul(&z)]);
    let gens = vec![x.clone(), z.clone()];
    let f = top_cohomology_fraction(&r, &r.one(), &[1, 1], &gens, &c).unwrap();
    assert!(gf_is_zero(&f, 20).is_zero());
    let p = cech_profile(
        &MonomialIdeal::from_masks(3, &[1, 4]),
        &MonomialIdeal::from_masks(3, &[5]),
        Field::Rationals,
    )
    .unwrap();
    assert!(!p.is_nonzero(2));
}

#[test]
fn top_sequence_is_exact_for_standard_families() {
    let fam: Vec<(Vec<u32>, Vec<u32>)> = vec![
        (vec![0b001], vec![]),
        (vec![0b001, 0b010], vec![]),
        (vec![0b001, 0b010, 0b100], vec![]),
        (vec![0b011, 0b101, 0b110], vec![]),
        (vec![0b011, 0b100], vec![0b101]),
    ];
    for (gens, b) in fam {
        let gens: Vec<_> = gens.iter().map(|&m| relcoh_core::Monomial::from_mask(3, m)).collect();
        let b = MonomialIdeal::from_masks(3, &b);
        for i in 1..=gens.len() {
            assert!(top_sequence_exactness(&gens, &b, i).unwrap().is_exact());
        }
    }
}

#[test]
fn maximal_ideal_quotient_chain() {
    let (r, x, y, z) = xyz();
    let m = on_ring(&r, vec![x.clone(), y.clone(), z.clone()]);
    let chain = quotient_chain_check(&m, &[x, y, z]).unwrap();
    assert!(chain.holds());
    assert!(chain.steps.iter().all(|s| s.grade + s.index == 3));
}
