mod common;

use std::sync::Arc;

use common::*;
use mci::cat1::enumerate_cat1_morphisms;
use mci::pullback::{
    cat1_pullback_mediator, preimage_xmod, pullback_cat1, pullback_xmod, pullback_xmod_morphism, square_commutes,
    xmod_pullback_mediator,
};
use mci::subobject::Subobject;
use mci::xmod::{enumerate_xmod_morphisms, find_xmod_isomorphism, ideal_xmod, slice_terminal};
use mci::zoo::{crossed_modules_over, cyclic_map, make_cyclic, make_truncated_poly, square_cases, z2z4};
use mci::{xmod_to_cat1, Cat1Morphism, Morphism, Structure};

const MAX: usize = 8;

fn z(n: usize) -> Arc<Structure> {
    make_cyclic(n).unwrap()
}

#[test]
fn pullback_of_terminal_along_doubling() {
    let p = slice_terminal(&z(4)).unwrap();
    let phi = cyclic_map(2, 4, 2).unwrap();
    let pb = pullback_xmod(&p, &phi).unwrap();
    assert_eq!(pb.xmod.c1().len(), 2);
    assert!(pb.xmod.verify().passed());
    assert!(pb.morphism.verify().passed());
    // {(p, s) | p = 2s}
    let mut pairs: Vec<(usize, usize)> = (0..2)
        .map(|i| (pb.morphism.mu1.apply(i), pb.xmod.boundary().apply(i)))
        .collect();
    pairs.sort();
    let brute: Vec<(usize, usize)> = (0..4)
        .flat_map(|p| (0..2).map(move |s| (p, s)))
        .filter(|&(p, s)| p == 2 * s)
        .collect();
    assert_eq!(pairs, brute);
    assert!(brute_isomorphic(pb.xmod.c1(), &z(2)));
}

#[test]
fn boundary_is_the_second_projection() {
    for (x, phi) in square_cases() {
        let pb = pullback_xmod(&x, &phi).unwrap();
        let d = x.boundary();
        for i in 0..pb.xmod.c1().len() {
            let (p, s) = (pb.morphism.mu1.apply(i), pb.xmod.boundary().apply(i));
            assert_eq!(d.apply(p), phi.apply(s));
            assert_eq!(pb.index(p, s), Some(i));
        }
        let count = (0..x.c1().len())
            .flat_map(|p| (0..phi.dom().len()).map(move |s| (p, s)))
            .filter(|&(p, s)| d.apply(p) == phi.apply(s))
            .count();
        assert_eq!(count, pb.xmod.c1().len());
        assert!(pb.xmod.verify().passed(), "{} {}", x.name(), phi.name());
        assert!(pb.morphism.is_valid());
    }
}

#[test]
fn pullback_along_identity_is_isomorphic() {
    for x in [z2z4(), slice_terminal(&z(4)).unwrap()] {
        let pb = pullback_xmod(&x, &Morphism::identity(x.c0())).unwrap();
        assert!(find_xmod_isomorphism(&pb.xmod, &x, MAX).unwrap().is_some());
    }
    let f = make_truncated_poly(2, 2).unwrap();
    let xid = Subobject::generated(&f, [f.index_of("x").unwrap()], "xid").unwrap();
    let ix = ideal_xmod(&xid, "ix").unwrap();
    let pb = pullback_xmod(&ix, &Morphism::identity(&f)).unwrap();
    assert!(find_xmod_isomorphism(&pb.xmod, &ix, MAX).unwrap().is_some());
}

#[test]
fn wrong_codomain_is_rejected() {
    let phi = cyclic_map(2, 2, 1).unwrap();
    assert!(pullback_xmod(&z2z4(), &phi).is_err());
    assert!(pullback_cat1(&xmod_to_cat1(&z2z4()).unwrap(), &phi).is_err());
}

#[test]
fn pulling_back_is_functorial_on_maps() {
    let x = slice_terminal(&z(4)).unwrap();
    let phi = cyclic_map(4, 4, 3).unwrap();
    let chi = cyclic_map(2, 4, 2).unwrap();
    let composite = phi.after(&chi).unwrap();
    let direct = pullback_xmod(&x, &composite).unwrap().xmod;
    let stepwise = pullback_xmod(&pullback_xmod(&x, &phi).unwrap().xmod, &chi)
        .unwrap()
        .xmod;
    assert!(find_xmod_isomorphism(&direct, &stepwise, MAX).unwrap().is_some());
}

#[test]
fn pulling_back_a_slice_morphism() {
    let a = z2z4();
    let t = slice_terminal(&z(4)).unwrap();
    let m = mci::xmod::to_terminal(&a).unwrap();
    let phi = cyclic_map(2, 4, 2).unwrap();
    let pm = pullback_xmod_morphism(&m, &phi).unwrap();
    assert!(pm.is_valid());
    assert_eq!(pm.src.c0().len(), 2);
    assert_eq!(*pm.dst.c1(), *pullback_xmod(&t, &phi).unwrap().xmod.c1());
}

#[test]
fn xmod_mediators_are_unique() {
    let p = slice_terminal(&z(4)).unwrap();
    let phi = cyclic_map(2, 4, 2).unwrap();
    let pb = pullback_xmod(&p, &phi).unwrap();
    let m = xmod_pullback_mediator(&pb.morphism.mu1, &pb.xmod, &pb, MAX).unwrap();
    assert_eq!(m.count, 1);
    assert!(m.morphism.mu1.is_identity());

    let mut cones = 0;
    for tester in crossed_modules_over(&z(2)).unwrap() {
        for f in enumerate_xmod_morphisms(&tester, &p, Some(&phi), MAX).unwrap() {
            let m = xmod_pullback_mediator(&f.mu1, &tester, &pb, MAX).unwrap();
            assert_eq!(m.count, 1, "{}", tester.name());
            assert!(m.morphism.is_valid());
            cones += 1;
        }
    }
    assert!(cones > 0);

    let tester = slice_terminal(&z(2)).unwrap();
    let bad = Morphism::zero_map(tester.c1(), p.c1()).unwrap();
    assert!(xmod_pullback_mediator(&bad, &tester, &pb, MAX).is_err());
}

#[test]
fn preimage_examples() {
    let z4 = z(4);
    let mod2 = cyclic_map(4, 2, 1).unwrap();
    let zero = Subobject::new(&z(2), [0], "zero").unwrap();
    let pre = preimage_xmod(&zero, &mod2).unwrap();
    assert!(pre.verify().passed());
    let image: Vec<usize> = (0..pre.c1().len()).map(|i| pre.boundary().apply(i)).collect();
    assert_eq!(image, [0, 2]);
    assert!(brute_isomorphic(pre.c1(), &z(2)));

    let all = Subobject::new(&z(2), [0, 1], "all").unwrap();
    let pre = preimage_xmod(&all, &mod2).unwrap();
    assert_eq!(pre.c1().len(), 4);
    assert!(pre.boundary().is_bijective());

    let half = Subobject::generated(&z4, [2], "half").unwrap();
    let pre = preimage_xmod(&half, &Morphism::identity(&z4)).unwrap();
    assert!(find_xmod_isomorphism(&pre, &ideal_xmod(&half, "half").unwrap(), MAX)
        .unwrap()
        .is_some());
}

#[test]
fn cat1_pullback_examples() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    let phi = cyclic_map(2, 4, 2).unwrap();
    let pb = pullback_cat1(&c, &phi).unwrap();
    assert_eq!(pb.cat1.big().len(), 4);
    assert!(pb.cat1.verify().passed());
    assert!(pb.morphism.verify().passed());
    let brute = (0..2)
        .flat_map(|a| (0..8).flat_map(move |r| (0..2).map(move |b| [a, r, b])))
        .filter(|t| phi.apply(t[0]) == c.src().apply(t[1]) && phi.apply(t[2]) == c.tgt().apply(t[1]))
        .count();
    assert_eq!(brute, 4);
    assert_eq!(pb.triples().len(), 4);
    assert!(pb.triples().len() <= 2 * 8 * 2);

    let id = pullback_cat1(&c, &Morphism::identity(c.base())).unwrap();
    assert!(id.morphism.phi.is_bijective());

    let q0 = Morphism::zero_map(&z(1), c.base()).unwrap();
    let pt = pullback_cat1(&c, &q0).unwrap();
    let both = (0..8)
        .filter(|&r| c.src().apply(r) == 0 && c.tgt().apply(r) == 0)
        .count();
    assert_eq!(pt.cat1.big().len(), both);
}

#[test]
fn cat1_mediators_are_unique() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    let phi = cyclic_map(2, 4, 2).unwrap();
    let pb = pullback_cat1(&c, &phi).unwrap();
    let own = cat1_pullback_mediator(&pb.cat1, &pb.morphism, &pb, MAX).unwrap();
    assert_eq!(own.count, 1);
    assert!(own.morphism.phi.is_identity());

    let mut cones = 0;
    for tester in crossed_modules_over(&z(2)).unwrap() {
        let t = xmod_to_cat1(&tester).unwrap();
        if t.big().len() > MAX {
            continue;
        }
        for m in enumerate_cat1_morphisms(&t, &c, Some(&phi), MAX).unwrap() {
            let med = cat1_pullback_mediator(&t, &m, &pb, MAX).unwrap();
            assert_eq!(med.count, 1);
            cones += 1;
        }
    }
    assert!(cones > 0);

    let t = xmod_to_cat1(&slice_terminal(&z(2)).unwrap()).unwrap();
    let zero_top = Morphism::zero_map(t.big(), c.big()).unwrap();
    let bad = Cat1Morphism::new(t.clone(), c.clone(), zero_top, phi.clone()).unwrap();
    assert!(cat1_pullback_mediator(&t, &bad, &pb, MAX).is_err());
}

#[test]
fn square_commutes_for_small_cases() {
    let x = slice_terminal(&z(4)).unwrap();
    let sq = square_commutes(&x, &cyclic_map(2, 4, 2).unwrap(), MAX).unwrap();
    assert!(sq.report.passed());
    assert_eq!(sq.via_xmod.big().len(), 4);
    assert_eq!(sq.via_cat1.big().len(), 4);

    let sq = square_commutes(&z2z4(), &Morphism::identity(&z(4)), MAX).unwrap();
    assert!(sq.report.passed());
    assert!(sq.iso.is_some());
}
