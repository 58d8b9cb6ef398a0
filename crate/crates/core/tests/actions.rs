mod common;

use std::sync::Arc;

use common::*;
use mci::action::action_from_section;
use mci::profile::VarietyProfile;
use mci::zoo::{inversion_action, make_cyclic, make_symmetric3, make_truncated_poly, split_extensions};
use mci::{check_derived_action, direct_product, find_isomorphism, semidirect_product, DerivedAction, Structure};

/// Every action obtained by changing one entry of one table of `act`.
fn action_perturbations(act: &DerivedAction) -> Vec<DerivedAction> {
    let na = act.acted().len();
    let mut out = Vec::new();
    let tables = 1 + act.star_tables().len();
    for t in 0..tables {
        let len = act.dot_table().len();
        for i in 0..len {
            for v in 0..na {
                let mut dot = act.dot_table().to_vec();
                let mut stars = act.star_tables().to_vec();
                let cell = if t == 0 { &mut dot[i] } else { &mut stars[t - 1][i] };
                if *cell == v {
                    continue;
                }
                *cell = v;
                out.push(DerivedAction::new("p", act.actor().clone(), act.acted().clone(), dot, stars).unwrap());
            }
        }
    }
    out
}

fn semidirect_ok(act: &DerivedAction) -> bool {
    semidirect_product(act).unwrap().product.verify().passed()
}

fn zoo_actions() -> Vec<DerivedAction> {
    let mut out = vec![inversion_action()];
    for e in split_extensions() {
        out.push(action_from_section(&e.projection, &e.kernel, &e.section).unwrap());
    }
    let z3 = make_cyclic(3).unwrap();
    out.push(DerivedAction::trivial(&make_cyclic(2).unwrap(), &z3).unwrap());
    let f2 = make_truncated_poly(2, 1).unwrap();
    out.push(DerivedAction::trivial(&f2, &f2).unwrap());
    out
}

#[test]
fn s3_split_extension_gives_inversion() {
    let e = &split_extensions()[0];
    let act = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
    let s3 = e.projection.dom();
    for b in 0..2 {
        for (ai, &a) in e.kernel.elements().iter().enumerate() {
            let s = e.section.apply(b);
            let conj = s3.add(s3.add(s, a), s3.neg(s));
            assert_eq!(e.kernel.elements()[act.dot(b, ai)], conj);
        }
    }
    let inv = inversion_action();
    let z3 = act.acted();
    for a in 0..3 {
        assert_eq!(z3.element_name(act.dot(1, a)), z3.element_name(z3.neg(a)));
        assert_eq!(inv.dot(1, a), z3.neg(a));
    }
}

#[test]
fn abelian_extension_has_trivial_dot() {
    let e = &split_extensions()[2];
    let act = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
    for b in 0..act.actor().len() {
        for a in 0..act.acted().len() {
            assert_eq!(act.dot(b, a), a);
        }
    }
}

#[test]
fn truncated_poly_extension_star_is_the_product() {
    let e = &split_extensions()[1];
    let act = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
    let big = e.projection.dom();
    for b in 0..act.actor().len() {
        for (ai, &a) in e.kernel.elements().iter().enumerate() {
            let want = big.star(0, e.section.apply(b), a);
            assert_eq!(e.kernel.elements()[act.star(0, b, ai)], want);
        }
    }
}

#[test]
fn bad_section_is_rejected() {
    let e = &split_extensions()[0];
    let wrong = mci::Morphism::zero_map(e.projection.cod(), e.projection.dom()).unwrap();
    assert!(action_from_section(&e.projection, &e.kernel, &wrong).is_err());
}

#[test]
fn check_examples() {
    let z2 = make_cyclic(2).unwrap();
    let z3 = make_cyclic(3).unwrap();
    assert!(check_derived_action(&DerivedAction::trivial(&z2, &z3).unwrap()).passed());
    let r = check_derived_action(&inversion_action());
    assert!(r.passed(), "{r}");
    for law in ["cond1", "cond5", "cond10", "cond11a", "cond11b", "cond12"] {
        assert!(r.check(law).is_some(), "{law}");
    }
    let broken = DerivedAction::from_fn(
        "bad",
        &z2,
        &z3,
        |b, a| if b == 0 { a } else { (a + 1) % 3 },
        |_, _, _| 0,
    )
    .unwrap();
    let r = check_derived_action(&broken);
    let v = r.failures().find(|v| v.law == "cond3").expect("condition 3 fails");
    let a = v.get("a").unwrap();
    assert_ne!(broken.dot(1, broken.dot(1, a)), a);
}

#[test]
fn semidirect_examples() {
    let sd = semidirect_product(&inversion_action()).unwrap();
    assert!(sd.product.verify().passed());
    assert!(!sd.product.is_abelian());
    assert!(find_isomorphism(&sd.product, &make_symmetric3()).unwrap().is_some());
    assert!(brute_isomorphic(&sd.product, &make_symmetric3()));
    for m in [&sd.injection, &sd.projection, &sd.section] {
        assert!(m.is_morphism(), "{m}");
    }

    let (z2, z3) = (make_cyclic(2).unwrap(), make_cyclic(3).unwrap());
    let triv = semidirect_product(&DerivedAction::trivial(&z2, &z3).unwrap()).unwrap();
    let prod = direct_product(&z3, &z2).unwrap();
    assert!(brute_isomorphic(&triv.product, &prod.apex));
    assert!(brute_isomorphic(&triv.product, &make_cyclic(6).unwrap()));

    let e = &split_extensions()[1];
    let act = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
    let sd = semidirect_product(&act).unwrap();
    assert!(sd.product.verify().passed());
    assert!(brute_isomorphic(&sd.product, e.projection.dom()));
}

#[test]
fn zoo_actions_satisfy_both_sides() {
    for act in zoo_actions() {
        let r = check_derived_action(&act);
        assert!(r.passed(), "{r}");
        assert!(semidirect_ok(&act), "{}", act.name());
    }
}

#[test]
fn split_extensions_roundtrip() {
    for e in split_extensions() {
        let act = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
        let sd = semidirect_product(&act).unwrap();
        let big = e.projection.dom();
        // (a, b) ↦ a + sec(b)
        let map: Vec<usize> = (0..sd.product.len())
            .map(|x| {
                let (a, b) = (x / act.actor().len(), x % act.actor().len());
                big.add(e.kernel.elements()[a], e.section.apply(b))
            })
            .collect();
        assert!(preserves(&sd.product, big, &map), "{}", e.name);
        let mut sorted = map.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), big.len(), "{}", e.name);
        for a in 0..act.acted().len() {
            assert_eq!(map[sd.injection.apply(a)], e.kernel.elements()[a]);
        }
        for b in 0..act.actor().len() {
            assert_eq!(map[sd.section.apply(b)], e.section.apply(b));
            let x = sd.section.apply(b);
            assert_eq!(e.projection.apply(map[x]), sd.projection.apply(x));
        }
    }
}

#[test]
fn iff_holds_for_every_group_perturbation() {
    let mut acts = vec![inversion_action()];
    acts.push(
        action_from_section(
            &split_extensions()[2].projection,
            &split_extensions()[2].kernel,
            &split_extensions()[2].section,
        )
        .unwrap(),
    );
    for base in acts {
        let perturbed = action_perturbations(&base);
        assert!(!perturbed.is_empty());
        for act in perturbed {
            let cond = check_derived_action(&act).passed();
            assert_eq!(cond, semidirect_ok(&act), "{:?}", act.dot_table());
        }
    }
}

#[test]
fn semidirect_object_implies_conditions_for_algebra_perturbations() {
    let e = &split_extensions()[1];
    let base = action_from_section(&e.projection, &e.kernel, &e.section).unwrap();
    let mut both = 0;
    for act in action_perturbations(&base) {
        if semidirect_ok(&act) {
            both += 1;
            let r = check_derived_action(&act);
            assert!(r.passed(), "{r}");
        }
    }
    assert!(both < action_perturbations(&base).len());
}

fn klein_zero_product() -> Arc<Structure> {
    let p = VarietyProfile::builtin("comm-algebra-f2").unwrap();
    let names = ["0", "e1", "e2", "e1+e2"].map(String::from).to_vec();
    let s = Structure::from_fn(
        p,
        "v4",
        names,
        0,
        |x, y| x ^ y,
        |x| x,
        |_, _, _| 0,
        |u, x| if u == 0 { 0 } else { x },
    )
    .unwrap();
    Arc::new(s)
}

/// `F2` acting on a zero-product plane by swapping coordinates through the
/// star action passes every condition, yet the semidirect product is not
/// an algebra: products of the form `(0,1)*(a,0)` are not central.
#[test]
fn conditions_do_not_force_a_semidirect_algebra() {
    let v = klein_zero_product();
    assert!(v.verify().passed());
    let f2 = make_truncated_poly(2, 1).unwrap();
    let swap = |a: usize| ((a & 1) << 1) | (a >> 1);
    let act = DerivedAction::from_fn("swap", &f2, &v, |_, a| a, |_, b, a| if b == 1 { swap(a) } else { 0 }).unwrap();
    let r = check_derived_action(&act);
    assert!(r.passed(), "{r}");
    let prod = semidirect_product(&act).unwrap().product;
    let rep = prod.verify();
    assert!(!rep.passed());
    let v = rep.first_failure().unwrap();
    assert!(witness_is_genuine(&prod, v), "{v}");
}
