mod common;

use common::*;
use mci::cat1::{
    cat1_roundtrip_check, enumerate_cat1_morphisms, find_cat1_isomorphism, roundtrip_check, xmod_morphism_to_cat1,
};
use mci::xmod::{enumerate_xmod_morphisms, slice_initial, slice_terminal};
use mci::zoo::{make_cyclic, make_leibniz2, make_standard_cat1s, make_standard_xmods, z2z4};
use mci::{cat1_to_xmod, xmod_to_cat1, Cat1Morphism, Cat1Object, Morphism};

const MAX: usize = 8;

/// Section laws and kernel laws evaluated straight from the tables.
fn brute_is_cat1(c: &Cat1Object) -> bool {
    let (r, s) = (c.big(), c.base());
    let sections =
        (0..s.len()).all(|q| c.src().apply(c.embed().apply(q)) == q && c.tgt().apply(c.embed().apply(q)) == q);
    let ks: Vec<usize> = (0..r.len()).filter(|&x| c.src().apply(x) == s.zero()).collect();
    let kt: Vec<usize> = (0..r.len()).filter(|&x| c.tgt().apply(x) == s.zero()).collect();
    let ops = r.profile().binary_ops().len();
    let kernels = ks.iter().all(|&x| {
        kt.iter().all(|&y| {
            let comm = r.add(r.add(r.add(x, y), r.neg(x)), r.neg(y));
            comm == r.zero() && (0..ops).all(|op| r.star(op, x, y) == r.zero())
        })
    });
    sections && kernels
}

fn brute_is_cat1_morphism(m: &Cat1Morphism) -> bool {
    let (a, b) = (&m.src, &m.dst);
    (0..a.big().len()).all(|x| {
        b.src().apply(m.phi.apply(x)) == m.phi_s.apply(a.src().apply(x))
            && b.tgt().apply(m.phi.apply(x)) == m.phi_s.apply(a.tgt().apply(x))
    }) && (0..a.base().len()).all(|q| m.phi.apply(a.embed().apply(q)) == b.embed().apply(m.phi_s.apply(q)))
        && preserves(a.big(), b.big(), m.phi.map())
        && preserves(a.base(), b.base(), m.phi_s.map())
}

#[test]
fn identity_cat1_has_trivial_kernels() {
    let z4 = make_cyclic(4).unwrap();
    let c = Cat1Object::identity_on(&z4);
    assert!(c.verify().passed());
    assert!(brute_is_cat1(&c));
    let x = cat1_to_xmod(&c).unwrap();
    assert_eq!(x.c1().len(), 1);
    assert_eq!(x.c0().len(), 4);
    assert!(x.verify().passed());
}

#[test]
fn z2z4_image() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    assert!(c.verify().passed());
    assert!(brute_is_cat1(&c));
    assert_eq!(c.big().len(), 8);
    let r = c.big();
    let ks: Vec<&str> = (0..8)
        .filter(|&x| c.src().apply(x) == 0)
        .map(|x| r.element_name(x))
        .collect();
    let kt: Vec<&str> = (0..8)
        .filter(|&x| c.tgt().apply(x) == 0)
        .map(|x| r.element_name(x))
        .collect();
    assert_eq!(ks, ["(0,0)", "(1,0)"]);
    assert_eq!(kt, ["(0,0)", "(1,2)"]);
    for q in 0..4 {
        assert_eq!(r.element_name(c.embed().apply(q)), format!("(0,{q})"));
    }
}

#[test]
fn initial_image_is_the_base() {
    let z4 = make_cyclic(4).unwrap();
    let c = xmod_to_cat1(&slice_initial(&z4).unwrap()).unwrap();
    assert_eq!(c.big().len(), 4);
    assert!(brute_isomorphic(c.big(), &z4));
    assert!((0..4).all(|x| c.src().apply(x) == c.tgt().apply(x)));
}

#[test]
fn perturbed_target_is_caught() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    let n = c.big().len();
    for x in 0..n {
        for v in 0..c.base().len() {
            if c.tgt().apply(x) == v {
                continue;
            }
            let mut map = c.tgt().map().to_vec();
            map[x] = v;
            let Ok(t) = Morphism::new("t2", c.big().clone(), c.base().clone(), map) else {
                continue;
            };
            let Ok(bad) = Cat1Object::new("bad", c.embed().clone(), c.src().clone(), t.clone()) else {
                continue;
            };
            let r = bad.verify();
            assert_eq!(r.passed(), brute_is_cat1(&bad) && t.is_morphism(), "{r}");
            if !r.passed() {
                assert!(r.first_failure().is_some());
            }
        }
    }
}

#[test]
fn standard_cat1s_agree_with_brute_force() {
    for (c, x) in make_standard_cat1s().iter().zip(make_standard_xmods()) {
        assert!(c.verify().passed());
        assert!(brute_is_cat1(c));
        assert_eq!(c.big().len(), x.c1().len() * x.c0().len());
        let back = cat1_to_xmod(c).unwrap();
        assert!(back.verify().passed(), "{}", c.name());
    }
}

#[test]
fn leibniz_instance() {
    let l3 = make_leibniz2(3).unwrap();
    assert!(l3.verify().passed());
    let c = make_standard_cat1s()
        .into_iter()
        .find(|c| c.name().contains("bleib2f3"))
        .unwrap();
    let x = cat1_to_xmod(&c).unwrap();
    assert!(x.verify().passed());
}

#[test]
fn roundtrips() {
    for x in make_standard_xmods() {
        if x.c1().len().max(x.c0().len()) <= MAX {
            let r = roundtrip_check(&x, MAX).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
    for c in make_standard_cat1s() {
        if c.big().len() <= MAX {
            let r = cat1_roundtrip_check(&c, MAX).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
    let t = slice_terminal(&make_cyclic(4).unwrap()).unwrap();
    assert!(roundtrip_check(&t, MAX).unwrap().passed());
}

#[test]
fn morphism_checks_agree_with_direct_evaluation() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    let all = enumerate_cat1_morphisms(&c, &c, None, MAX).unwrap();
    assert!(!all.is_empty());
    assert!(all.iter().all(brute_is_cat1_morphism));
    let id = Cat1Morphism::identity(&c);
    assert!(id.verify().passed() && id.is_isomorphism());

    let zero = Morphism::zero_map(c.base(), c.base()).unwrap();
    let broken = Cat1Morphism::new(c.clone(), c.clone(), Morphism::identity(c.big()), zero).unwrap();
    assert!(!broken.is_valid());
    assert!(!brute_is_cat1_morphism(&broken));
    assert!(broken.verify().first_failure().is_some());
}

#[test]
fn functor_on_morphisms() {
    let xs: Vec<_> = make_standard_xmods()
        .into_iter()
        .filter(|x| x.c1().len() * x.c0().len() <= MAX)
        .collect();
    for a in &xs {
        let id = xmod_morphism_to_cat1(&mci::XModMorphism::identity(a)).unwrap();
        assert!(id.same_maps(&Cat1Morphism::identity(&xmod_to_cat1(a).unwrap())));
        for b in &xs {
            if a.c0().profile() != b.c0().profile() {
                continue;
            }
            let ab = enumerate_xmod_morphisms(a, b, None, MAX).unwrap();
            for m in &ab {
                let cm = xmod_morphism_to_cat1(m).unwrap();
                assert!(cm.is_valid() && brute_is_cat1_morphism(&cm));
            }
            for c in &xs {
                if b.c0().profile() != c.c0().profile() {
                    continue;
                }
                for n in enumerate_xmod_morphisms(b, c, None, MAX).unwrap().iter().take(3) {
                    for m in ab.iter().take(3) {
                        let lhs = xmod_morphism_to_cat1(&n.after(m).unwrap()).unwrap();
                        let rhs = xmod_morphism_to_cat1(n)
                            .unwrap()
                            .after(&xmod_morphism_to_cat1(m).unwrap())
                            .unwrap();
                        assert!(lhs.same_maps(&rhs));
                    }
                }
            }
        }
    }
}

#[test]
fn isomorphic_images_are_found() {
    let c = xmod_to_cat1(&z2z4()).unwrap();
    let back = xmod_to_cat1(&cat1_to_xmod(&c).unwrap()).unwrap();
    let iso = find_cat1_isomorphism(&back, &c, MAX).unwrap().unwrap();
    assert!(iso.is_isomorphism());
    let other = xmod_to_cat1(&slice_terminal(&make_cyclic(4).unwrap()).unwrap()).unwrap();
    assert!(find_cat1_isomorphism(&c, &other, 16).unwrap().is_none());
}
