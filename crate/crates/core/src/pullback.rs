//! Pullback crossed modules and pullback cat1-objects along a base morphism.

use std::sync::Arc;

use crate::action::DerivedAction;
use crate::cat1::{enumerate_cat1_morphisms, find_cat1_isomorphism, xmod_to_cat1, Cat1Morphism, Cat1Object};
use crate::error::{Error, Result};
use crate::limits::fiber_product;
use crate::morphism::Morphism;
use crate::report::{Report, Violation};
use crate::structure::tuple_structure;
use crate::subobject::Subobject;
use crate::xmod::{enumerate_xmod_morphisms, ideal_xmod, CrossedModule, XModMorphism};

/// `φ*(P)` over `S` with the canonical morphism `(φ′, φ)` into `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackXMod {
    pub xmod: CrossedModule,
    pub morphism: XModMorphism,
}

impl PullbackXMod {
    /// Carrier index of `(p, s)`, if the pair lies in `φ*(P)`.
    pub fn index(&self, p: usize, s: usize) -> Option<usize> {
        let (l, r) = (&self.morphism.mu1, self.xmod.boundary());
        (0..self.xmod.c1().len()).find(|&i| l.apply(i) == p && r.apply(i) == s)
    }
}

/// A mediating morphism and the number of morphisms with the same
/// composites found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mediator<M> {
    pub morphism: M,
    pub count: usize,
}

/// Pullback of `(P, R, ∂)` along `φ: S → R`: the carrier is
/// `{(p, s) | ∂(p) = φ(s)}`, `∂*(p, s) = s`, and `S` acts by
/// `t·(p, s) = (φ(t)·p, t + s − t)` and `t*(p, s) = (φ(t)*p, t*s)`.
pub fn pullback_xmod(p: &CrossedModule, phi: &Morphism) -> Result<PullbackXMod> {
    if **phi.cod() != **p.c0() {
        return Err(Error::structural(format!(
            "{} does not land in {}",
            phi.name(),
            p.c0().name()
        )));
    }
    let cone = fiber_product(p.boundary(), phi)?;
    let (apex, l, r) = (&cone.apex, &cone.left, &cone.right);
    let s = phi.dom();
    let n = apex.len();
    let find = |a: usize, b: usize| -> Result<usize> {
        (0..n)
            .find(|&i| l.apply(i) == a && r.apply(i) == b)
            .ok_or_else(|| Error::NotClosed(format!("action leaves {}", apex.name())))
    };
    let act = p.action();
    let mut dot = Vec::with_capacity(s.len() * n);
    for t in 0..s.len() {
        for x in 0..n {
            dot.push(find(act.dot(phi.apply(t), l.apply(x)), s.conj(t, r.apply(x)))?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..s.star_count() {
        let mut tab = Vec::with_capacity(s.len() * n);
        for t in 0..s.len() {
            for x in 0..n {
                tab.push(find(act.star(op, phi.apply(t), l.apply(x)), s.star(op, t, r.apply(x)))?);
            }
        }
        stars.push(tab);
    }
    let action = DerivedAction::new(format!("pb({})", act.name()), s.clone(), apex.clone(), dot, stars)?;
    let boundary = r.clone().renamed(format!("d*({})", p.name()));
    let xmod = CrossedModule::new(format!("{}*({})", phi.name(), p.name()), boundary, action)?;
    let morphism = XModMorphism::new(
        xmod.clone(),
        p.clone(),
        l.clone().renamed(format!("{}'", phi.name())),
        phi.clone(),
    )?;
    Ok(PullbackXMod { xmod, morphism })
}

/// `φ*` on a morphism `(μ1, id): (P, R, ∂) → (P′, R, ∂′)`: the morphism
/// `((p, s) ↦ (μ1(p), s), id)` between the pullbacks.
pub fn pullback_xmod_morphism(m: &XModMorphism, phi: &Morphism) -> Result<XModMorphism> {
    if !m.mu0.is_identity() {
        return Err(Error::structural("pullback acts on morphisms over the identity"));
    }
    m.check()?;
    let (a, b) = (pullback_xmod(&m.src, phi)?, pullback_xmod(&m.dst, phi)?);
    let n = a.xmod.c1().len();
    let map = (0..n)
        .map(|x| {
            let (p, s) = (a.morphism.mu1.apply(x), a.xmod.boundary().apply(x));
            b.index(m.mu1.apply(p), s)
                .ok_or_else(|| Error::NotClosed("image leaves the pullback".into()))
        })
        .collect::<Result<_>>()?;
    let mu1 = Morphism::new(
        format!("{}*({})", phi.name(), m.mu1.name()),
        a.xmod.c1().clone(),
        b.xmod.c1().clone(),
        map,
    )?;
    XModMorphism::new(a.xmod, b.xmod, mu1, Morphism::identity(phi.dom()))
}

/// For a morphism `(f, φ): (X, S, μ) → (P, R, ∂)`, the mediator
/// `(f*, id)` with `f*(x) = (f(x), μ(x))`, and the number of morphisms
/// `(g, id)` into `φ*(P)` with `φ′∘g = f` and `∂*∘g = μ`.
pub fn xmod_pullback_mediator(
    f: &Morphism,
    mu: &CrossedModule,
    pb: &PullbackXMod,
    max_size: usize,
) -> Result<Mediator<XModMorphism>> {
    let (p, phi) = (&pb.morphism.dst, &pb.morphism.mu0);
    if **mu.c0() != **phi.dom() {
        return Err(Error::structural(format!(
            "{} is not over {}",
            mu.name(),
            phi.dom().name()
        )));
    }
    XModMorphism::new(mu.clone(), p.clone(), f.clone(), phi.clone())?
        .verify()
        .into_result()?;
    let map = (0..mu.c1().len())
        .map(|x| {
            pb.index(f.apply(x), mu.boundary().apply(x))
                .ok_or_else(|| Error::NotClosed("mediator leaves the pullback".into()))
        })
        .collect::<Result<_>>()?;
    let top = Morphism::new(format!("{}*", f.name()), mu.c1().clone(), pb.xmod.c1().clone(), map)?;
    let morphism = XModMorphism::new(mu.clone(), pb.xmod.clone(), top, Morphism::identity(mu.c0()))?;
    morphism.verify().into_result()?;
    let id = Morphism::identity(mu.c0());
    let count = enumerate_xmod_morphisms(mu, &pb.xmod, Some(&id), max_size)?
        .iter()
        .filter(|g| {
            (0..mu.c1().len()).all(|x| {
                pb.morphism.mu1.apply(g.mu1.apply(x)) == f.apply(x)
                    && pb.xmod.boundary().apply(g.mu1.apply(x)) == mu.boundary().apply(x)
            })
        })
        .count();
    Ok(Mediator { morphism, count })
}

/// The pullback along `φ` of the inclusion crossed module of an ideal `N`.
pub fn preimage_xmod(n: &Subobject, phi: &Morphism) -> Result<CrossedModule> {
    let incl = ideal_xmod(n, format!("incl({})", n.induced().name()))?;
    Ok(pullback_xmod(&incl, phi)?.xmod)
}

/// `φ*(R)` over `Q` with the canonical morphism `(π, φ)` into `(R, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackCat1 {
    pub cat1: Cat1Object,
    pub morphism: Cat1Morphism,
    triples: Vec<[usize; 3]>,
}

impl PullbackCat1 {
    /// Carrier index of `(q1, r, q2)`.
    pub fn index(&self, q1: usize, r: usize, q2: usize) -> Option<usize> {
        self.triples.iter().position(|t| *t == [q1, r, q2])
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
}

/// Pullback of `(R, S)` along `φ: Q → S`: the triples `(q1, r, q2)` with
/// `φ(q1) = s(r)` and `φ(q2) = t(r)`, `s* = q1`, `t* = q2`,
/// `e*(q) = (q, e(φ(q)), q)` and `π = r`.
pub fn pullback_cat1(c: &Cat1Object, phi: &Morphism) -> Result<PullbackCat1> {
    if **phi.cod() != **c.base() {
        return Err(Error::structural(format!(
            "{} does not land in {}",
            phi.name(),
            c.base().name()
        )));
    }
    let (q, r) = (phi.dom(), c.big());
    let mut triples = Vec::new();
    for q1 in 0..q.len() {
        for x in 0..r.len() {
            for q2 in 0..q.len() {
                if phi.apply(q1) == c.src().apply(x) && phi.apply(q2) == c.tgt().apply(x) {
                    triples.push([q1, x, q2]);
                }
            }
        }
    }
    let big = Arc::new(tuple_structure(
        format!("{}*({})", phi.name(), r.name()),
        &[q, r, q],
        triples.iter().map(|t| t.to_vec()).collect(),
    )?);
    let src = Morphism::new(
        format!("s*({})", c.name()),
        big.clone(),
        q.clone(),
        triples.iter().map(|t| t[0]).collect(),
    )?;
    let tgt = Morphism::new(
        format!("t*({})", c.name()),
        big.clone(),
        q.clone(),
        triples.iter().map(|t| t[2]).collect(),
    )?;
    let embed_map = (0..q.len())
        .map(|y| {
            let t = [y, c.embed().apply(phi.apply(y)), y];
            triples
                .iter()
                .position(|u| *u == t)
                .ok_or_else(|| Error::NotClosed("e* leaves the pullback".into()))
        })
        .collect::<Result<_>>()?;
    let embed = Morphism::new(format!("e*({})", c.name()), q.clone(), big.clone(), embed_map)?;
    let cat1 = Cat1Object::new(format!("{}*({})", phi.name(), c.name()), embed, src, tgt)?;
    let pi = Morphism::new(
        format!("pi({})", cat1.name()),
        big.clone(),
        r.clone(),
        triples.iter().map(|t| t[1]).collect(),
    )?;
    let morphism = Cat1Morphism::new(cat1.clone(), c.clone(), pi, phi.clone())?;
    Ok(PullbackCat1 {
        cat1,
        morphism,
        triples,
    })
}

/// For a cat1-morphism `(φ̂, φ): (P, Q) → (R, S)` whose base map is the one
/// `pb` was built along, the mediator `(ψ, id)` with
/// `ψ(p) = (s′(p), φ̂(p), t′(p))`, and the number of cat1-morphisms
/// `(g, id)` into `φ*(R)` with `π∘g = φ̂`.
pub fn cat1_pullback_mediator(
    test: &Cat1Object,
    varphi: &Cat1Morphism,
    pb: &PullbackCat1,
    max_size: usize,
) -> Result<Mediator<Cat1Morphism>> {
    if varphi.src != *test || varphi.dst != pb.morphism.dst {
        return Err(Error::structural(
            "cone does not go from the tester to the pulled-back object",
        ));
    }
    if varphi.phi_s.map() != pb.morphism.phi_s.map() || **varphi.phi_s.dom() != **pb.cat1.base() {
        return Err(Error::structural("cone base map differs from the pullback map"));
    }
    varphi.verify().into_result()?;
    let map = (0..test.big().len())
        .map(|x| {
            pb.index(test.src().apply(x), varphi.phi.apply(x), test.tgt().apply(x))
                .ok_or_else(|| Error::NotClosed("mediator leaves the pullback".into()))
        })
        .collect::<Result<_>>()?;
    let psi = Morphism::new("psi", test.big().clone(), pb.cat1.big().clone(), map)?;
    let id = Morphism::identity(test.base());
    let morphism = Cat1Morphism::new(test.clone(), pb.cat1.clone(), psi, id.clone())?;
    morphism.verify().into_result()?;
    let pi = &pb.morphism.phi;
    let count = enumerate_cat1_morphisms(test, &pb.cat1, Some(&id), max_size)?
        .iter()
        .filter(|g| (0..test.big().len()).all(|x| pi.apply(g.phi.apply(x)) == varphi.phi.apply(x)))
        .count();
    Ok(Mediator { morphism, count })
}

/// Result of comparing the two ways around the square.
#[derive(Debug, Clone)]
pub struct SquareCheck {
    pub report: Report,
    /// `xmod_to_cat1(pullback_xmod(x, φ))`.
    pub via_xmod: Cat1Object,
    /// `pullback_cat1(xmod_to_cat1(x), φ)`.
    pub via_cat1: Cat1Object,
    pub iso: Option<Cat1Morphism>,
}

/// Checks that pulling back then passing to cat1-objects agrees, up to
/// isomorphism, with passing to cat1-objects then pulling back.
pub fn square_commutes(x: &CrossedModule, phi: &Morphism, max_size: usize) -> Result<SquareCheck> {
    let via_xmod = xmod_to_cat1(&pullback_xmod(x, phi)?.xmod)?;
    let via_cat1 = pullback_cat1(&xmod_to_cat1(x)?, phi)?.cat1;
    let mut report = Report::new(format!("square:{}:{}", x.name(), phi.name()));
    let iso = find_cat1_isomorphism(&via_xmod, &via_cat1, max_size)?;
    let outcome = match &iso {
        Some(_) => Ok(()),
        None => Err(Violation::new(
            "square",
            format!(
                "no isomorphism between orders {} and {}",
                via_xmod.big().len(),
                via_cat1.big().len()
            ),
        )),
    };
    report.record("square", outcome);
    Ok(SquareCheck {
        report,
        via_xmod,
        via_cat1,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{find_isomorphism, DEFAULT_MAX_SIZE};
    use crate::subobject::closure;
    use crate::xmod::slice_terminal;
    use crate::zoo::{cyclic_map, make_cyclic, z2z4};

    #[test]
    fn pullback_of_terminal_z4_along_doubling() {
        let z4 = make_cyclic(4).unwrap();
        let phi = cyclic_map(2, 4, 2).unwrap();
        let pb = pullback_xmod(&slice_terminal(&z4).unwrap(), &phi).unwrap();
        assert_eq!(pb.xmod.c1().len(), 2);
        assert!(pb.xmod.verify().passed());
        assert!(pb.morphism.verify().passed());
        for x in 0..pb.xmod.c1().len() {
            let (p, s) = (0..4)
                .flat_map(|p| (0..2).map(move |s| (p, s)))
                .find(|&(p, s)| pb.index(p, s) == Some(x))
                .unwrap();
            assert_eq!(pb.xmod.boundary().apply(x), s);
            assert_eq!(pb.morphism.mu1.apply(x), p);
        }
    }

    #[test]
    fn pullback_along_identity_is_isomorphic() {
        let x = z2z4();
        let pb = pullback_xmod(&x, &Morphism::identity(x.c0())).unwrap();
        assert!(find_isomorphism(x.c1(), pb.xmod.c1()).unwrap().is_some());
        assert!(pb.morphism.mu1.is_bijective());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let z2 = make_cyclic(2).unwrap();
        let phi = cyclic_map(4, 2, 1).unwrap();
        let zero = Subobject::new(&z2, closure(&z2, []), "zero").unwrap();
        let n = preimage_xmod(&zero, &phi).unwrap();
        let z4 = make_cyclic(4).unwrap();
        let k = Subobject::new(&z4, closure(&z4, [2]), "k").unwrap();
        assert!(find_isomorphism(n.c1(), k.induced()).unwrap().is_some());
        assert_eq!(n.c1().len(), 2);
    }

    #[test]
    fn xmod_mediator_is_unique() {
        let z4 = make_cyclic(4).unwrap();
        let phi = cyclic_map(2, 4, 2).unwrap();
        let pb = pullback_xmod(&slice_terminal(&z4).unwrap(), &phi).unwrap();
        let tester = slice_terminal(phi.dom()).unwrap();
        let m = xmod_pullback_mediator(&phi, &tester, &pb, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(m.count, 1);
    }

    #[test]
    fn cat1_pullback_size_and_mediator() {
        let c = xmod_to_cat1(&z2z4()).unwrap();
        let phi = cyclic_map(2, 4, 2).unwrap();
        let pb = pullback_cat1(&c, &phi).unwrap();
        assert_eq!(pb.cat1.big().len(), 4);
        assert!(pb.cat1.verify().passed());
        assert!(pb.morphism.verify().passed());
        assert!(pb.cat1.big().len() <= 2 * c.big().len() * 2);
        let m = cat1_pullback_mediator(&pb.cat1, &pb.morphism, &pb, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(m.count, 1);
        assert!(m.morphism.phi.is_identity());
    }

    #[test]
    fn square_for_doubling() {
        let x = slice_terminal(&make_cyclic(4).unwrap()).unwrap();
        let sq = square_commutes(&x, &cyclic_map(2, 4, 2).unwrap(), DEFAULT_MAX_SIZE).unwrap();
        assert!(sq.report.passed(), "{}", sq.report);
        assert_eq!(sq.via_xmod.big().len(), 4);
        assert!(sq.iso.unwrap().is_isomorphism());
    }

    #[test]
    fn mismatched_cone_rejected() {
        let z4 = make_cyclic(4).unwrap();
        let pb = pullback_xmod(&slice_terminal(&z4).unwrap(), &cyclic_map(2, 4, 2).unwrap()).unwrap();
        let wrong = slice_terminal(&z4).unwrap();
        let f = Morphism::identity(&z4);
        assert!(xmod_pullback_mediator(&f, &wrong, &pb, DEFAULT_MAX_SIZE).is_err());
    }
}
