//! Crossed modules and their morphisms.

mod limits;
mod universal;

pub use limits::{
    compose_xmod, induced_xmod, slice_initial, slice_product, slice_pullback, slice_terminal, to_terminal,
    xmod_equalizer, xmod_fiber_product, XModCone, XModEqualizer,
};
pub use universal::{verify_universal_cone, ConeCheck, UniversalProblem};

use std::sync::Arc;

use crate::action::{check_derived_action, DerivedAction};
use crate::error::{Error, Result};
use crate::hom::{enumerate_isomorphisms, enumerate_morphisms_with, guard, search_morphisms, SearchOptions};
use crate::morphism::Morphism;
use crate::report::{CheckKind, Report, Violation};
use crate::structure::{is_token, Structure};
use crate::subobject::Subobject;

/// A boundary `∂: C1 → C0` with an action of `C0` on `C1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    name: String,
    boundary: Morphism,
    action: DerivedAction,
}

impl CrossedModule {
    pub fn new(name: impl Into<String>, boundary: Morphism, action: DerivedAction) -> Result<Self> {
        let name = name.into();
        if !is_token(&name) {
            return Err(Error::structural(format!("invalid crossed module name `{name}`")));
        }
        if **action.acted() != **boundary.dom() || **action.actor() != **boundary.cod() {
            return Err(Error::structural(format!(
                "action {} is not an action of {} on {}",
                action.name(),
                boundary.cod().name(),
                boundary.dom().name()
            )));
        }
        Ok(CrossedModule { name, boundary, action })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn c1(&self) -> &Arc<Structure> {
        self.boundary.dom()
    }

    pub fn c0(&self) -> &Arc<Structure> {
        self.boundary.cod()
    }

    pub fn boundary(&self) -> &Morphism {
        &self.boundary
    }

    pub fn action(&self) -> &DerivedAction {
        &self.action
    }

    /// Component checks as preconditions, then XM1 and XM2.
    pub fn verify(&self) -> Report {
        let mut r = Report::new(&self.name);
        r.absorb("c1.", self.c1().verify(), CheckKind::Precondition);
        r.absorb("c0.", self.c0().verify(), CheckKind::Precondition);
        r.record_pre("boundary", self.boundary.check());
        r.absorb("action.", check_derived_action(&self.action), CheckKind::Precondition);
        let (c1, c0, d, act) = (&**self.c1(), &**self.c0(), &self.boundary, &self.action);
        let fail = |law: String, vars: [(&str, bool, usize); 2], l: usize, r: usize| {
            let mut v = Violation::new(law, format!("lhs={} rhs={}", c0.element_name(l), c0.element_name(r)));
            for (var, in0, x) in vars {
                v = v.bind(var, x, if in0 { c0.element_name(x) } else { c1.element_name(x) });
            }
            v
        };
        let xm1 = |op: Option<usize>| -> Result<(), Violation> {
            for x in 0..c0.len() {
                for y in 0..c1.len() {
                    let (l, rr) = match op {
                        None => (d.apply(act.dot(x, y)), c0.conj(x, d.apply(y))),
                        Some(op) => (d.apply(act.star(op, x, y)), c0.star(op, x, d.apply(y))),
                    };
                    if l != rr {
                        let law = match op {
                            None => "XM1.dot".to_string(),
                            Some(op) => format!("XM1.star[{}]", c0.profile().binary_ops()[op].name),
                        };
                        return Err(fail(law, [("c0", true, x), ("c1", false, y)], l, rr));
                    }
                }
            }
            Ok(())
        };
        r.record("XM1.dot", xm1(None));
        for (op, b) in c0.profile().binary_ops().iter().enumerate() {
            r.record(format!("XM1.star[{}]", b.name), xm1(Some(op)));
        }
        let xm2 = |op: Option<usize>| -> Result<(), Violation> {
            for x in 0..c1.len() {
                for y in 0..c1.len() {
                    let (l, rr) = match op {
                        None => (act.dot(d.apply(x), y), c1.conj(x, y)),
                        Some(op) => (act.star(op, d.apply(x), y), c1.star(op, x, y)),
                    };
                    if l != rr {
                        let law = match op {
                            None => "XM2.dot".to_string(),
                            Some(op) => format!("XM2.star[{}]", c1.profile().binary_ops()[op].name),
                        };
                        let mut v =
                            Violation::new(law, format!("lhs={} rhs={}", c1.element_name(l), c1.element_name(rr)));
                        v = v.bind("c1", x, c1.element_name(x)).bind("c1'", y, c1.element_name(y));
                        return Err(v);
                    }
                }
            }
            Ok(())
        };
        r.record("XM2.dot", xm2(None));
        for (op, b) in c1.profile().binary_ops().iter().enumerate() {
            r.record(format!("XM2.star[{}]", b.name), xm2(Some(op)));
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }
}

/// `(N, R, incl)` for an ideal `N` of `R`, acted on by conjugation and the
/// products of `R`.
pub fn ideal_xmod(n: &Subobject, name: impl Into<String>) -> Result<CrossedModule> {
    n.check_ideal()?;
    let r = n.parent();
    let back = |x: usize| n.position(x).expect("ideal is closed");
    let act = DerivedAction::from_fn(
        format!("conj({},{})", r.name(), n.induced().name()),
        r,
        n.induced(),
        |b, a| back(r.conj(b, n.elements()[a])),
        |op, b, a| back(r.star(op, b, n.elements()[a])),
    )?;
    CrossedModule::new(name, n.embed().clone(), act)
}

/// A pair `(μ1, μ0)` between crossed modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModMorphism {
    pub src: CrossedModule,
    pub dst: CrossedModule,
    pub mu1: Morphism,
    pub mu0: Morphism,
}

impl XModMorphism {
    pub fn new(src: CrossedModule, dst: CrossedModule, mu1: Morphism, mu0: Morphism) -> Result<Self> {
        if **mu1.dom() != **src.c1()
            || **mu1.cod() != **dst.c1()
            || **mu0.dom() != **src.c0()
            || **mu0.cod() != **dst.c0()
        {
            return Err(Error::structural(format!(
                "({}, {}) does not go from {} to {}",
                mu1.name(),
                mu0.name(),
                src.name(),
                dst.name()
            )));
        }
        Ok(XModMorphism { src, dst, mu1, mu0 })
    }

    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism {
            src: x.clone(),
            dst: x.clone(),
            mu1: Morphism::identity(x.c1()),
            mu0: Morphism::identity(x.c0()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &XModMorphism) -> Result<XModMorphism> {
        if first.dst != self.src {
            return Err(Error::structural(format!(
                "cannot compose: {} is not {}",
                first.dst.name(),
                self.src.name()
            )));
        }
        Ok(XModMorphism {
            src: first.src.clone(),
            dst: self.dst.clone(),
            mu1: self.mu1.after(&first.mu1)?,
            mu0: self.mu0.after(&first.mu0)?,
        })
    }

    pub fn same_maps(&self, other: &XModMorphism) -> bool {
        self.mu1.map() == other.mu1.map() && self.mu0.map() == other.mu0.map()
    }

    /// The commuting square and equivariance, without component checks.
    pub fn check(&self) -> Result<(), Violation> {
        self.check_square()?;
        self.check_equivariance()
    }

    fn check_square(&self) -> Result<(), Violation> {
        let (c1, c0d) = (self.src.c1(), self.dst.c0());
        for x in 0..c1.len() {
            let l = self.dst.boundary().apply(self.mu1.apply(x));
            let r = self.mu0.apply(self.src.boundary().apply(x));
            if l != r {
                return Err(Violation::new(
                    "square",
                    format!("lhs={} rhs={}", c0d.element_name(l), c0d.element_name(r)),
                )
                .bind("c1", x, c1.element_name(x)));
            }
        }
        Ok(())
    }

    fn check_equivariance(&self) -> Result<(), Violation> {
        let (s, d) = (&self.src, &self.dst);
        let (c1, c0, c1d) = (s.c1(), s.c0(), d.c1());
        let ops = c0.profile().binary_ops();
        for x in 0..c0.len() {
            for y in 0..c1.len() {
                let (mx, my) = (self.mu0.apply(x), self.mu1.apply(y));
                let mut pairs = vec![(
                    "equivariance.dot".to_string(),
                    self.mu1.apply(s.action().dot(x, y)),
                    d.action().dot(mx, my),
                )];
                for (op, b) in ops.iter().enumerate() {
                    pairs.push((
                        format!("equivariance.star[{}]", b.name),
                        self.mu1.apply(s.action().star(op, x, y)),
                        d.action().star(op, mx, my),
                    ));
                }
                for (law, l, r) in pairs {
                    if l != r {
                        return Err(Violation::new(
                            law,
                            format!("lhs={} rhs={}", c1d.element_name(l), c1d.element_name(r)),
                        )
                        .bind("c0", x, c0.element_name(x))
                        .bind("c1", y, c1.element_name(y)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new(format!("({},{})", self.mu1.name(), self.mu0.name()));
        r.record_pre("mu1", self.mu1.check());
        r.record_pre("mu0", self.mu0.check());
        r.record("square", self.check_square());
        r.record("equivariance", self.check_equivariance());
        r
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }

    /// The levelwise inverse, when both levels are bijective.
    pub fn inverse(&self) -> Option<XModMorphism> {
        Some(XModMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            mu1: self.mu1.inverse()?,
            mu0: self.mu0.inverse()?,
        })
    }

    /// Both levels bijective and the inverse pair is again a morphism.
    pub fn is_isomorphism(&self) -> bool {
        self.is_valid() && self.inverse().is_some_and(|i| i.is_valid())
    }
}

/// Every crossed module morphism `src → dst`. With `mu0` given only that
/// bottom map is tried; otherwise every morphism `C0 → C0'` is.
pub fn enumerate_xmod_morphisms(
    src: &CrossedModule,
    dst: &CrossedModule,
    mu0: Option<&Morphism>,
    max_size: usize,
) -> Result<Vec<XModMorphism>> {
    guard(
        format!("crossed module {}", src.name()),
        src.c1().len().max(src.c0().len()),
        max_size,
    )?;
    let bottoms = match mu0 {
        Some(m) => {
            if **m.dom() != **src.c0() || **m.cod() != **dst.c0() {
                return Err(Error::structural("bottom map does not match the crossed modules"));
            }
            vec![m.clone()]
        }
        None => enumerate_morphisms_with(src.c0(), dst.c0(), SearchOptions::with_max_size(max_size))?,
    };
    let mut out = Vec::new();
    for m0 in bottoms {
        out.extend(tops_over(src, dst, &m0, SearchOptions::with_max_size(max_size))?);
    }
    Ok(out)
}

fn tops_over(
    src: &CrossedModule,
    dst: &CrossedModule,
    m0: &Morphism,
    opts: SearchOptions,
) -> Result<Vec<XModMorphism>> {
    let (d, dd) = (src.boundary(), dst.boundary());
    let allowed = |x: usize, y: usize| dd.apply(y) == m0.apply(d.apply(x));
    let tops = search_morphisms(src.c1(), dst.c1(), opts, &allowed)?;
    Ok(tops
        .into_iter()
        .map(|m1| XModMorphism {
            src: src.clone(),
            dst: dst.clone(),
            mu1: m1,
            mu0: m0.clone(),
        })
        .filter(|m| m.check().is_ok())
        .collect())
}

/// Some isomorphism of crossed modules `a → b`, if one exists.
pub fn find_xmod_isomorphism(a: &CrossedModule, b: &CrossedModule, max_size: usize) -> Result<Option<XModMorphism>> {
    if a.c1().len() != b.c1().len() || a.c0().len() != b.c0().len() {
        return Ok(None);
    }
    guard(
        format!("crossed module {}", a.name()),
        a.c1().len().max(a.c0().len()),
        max_size,
    )?;
    for m0 in enumerate_isomorphisms(a.c0(), b.c0(), max_size)? {
        let opts = SearchOptions::with_max_size(max_size).bijective();
        for m in tops_over(a, b, &m0, opts)? {
            if m.is_isomorphism() {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::VarietyProfile;

    fn zn(n: usize) -> Arc<Structure> {
        Arc::new(
            Structure::from_fn(
                VarietyProfile::group(),
                format!("z{n}"),
                (0..n).map(|i| i.to_string()).collect(),
                0,
                |x, y| (x + y) % n,
                |x| (n - x) % n,
                |_, _, _| 0,
                |_, _| 0,
            )
            .unwrap(),
        )
    }

    fn z2z4() -> CrossedModule {
        let (z2, z4) = (zn(2), zn(4));
        let d = Morphism::from_fn("d", &z2, &z4, |x| 2 * x).unwrap();
        CrossedModule::new("z2z4", d, DerivedAction::trivial(&z4, &z2).unwrap()).unwrap()
    }

    #[test]
    fn central_boundary_with_trivial_action_verifies() {
        let x = z2z4();
        let r = x.verify();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn twisted_dot_breaks_xm1() {
        let (z2, z4) = (zn(2), zn(4));
        let d = Morphism::from_fn("d", &z2, &z4, |x| 2 * x).unwrap();
        let act = DerivedAction::from_fn("tw", &z4, &z2, |c0, c1| (c1 + c0) % 2, |_, _, _| 0).unwrap();
        let r = CrossedModule::new("bad", d, act).unwrap().verify();
        assert!(!r.passed());
        assert!(r.precondition_failed());
        let xm1 = r.check("XM1.dot").unwrap();
        let v = xm1.violation.as_ref().unwrap();
        assert!(v.get("c0").is_some() && v.get("c1").is_some());
    }

    #[test]
    fn identity_morphism_verifies_and_is_iso() {
        let x = z2z4();
        let id = XModMorphism::identity(&x);
        assert!(id.is_isomorphism());
        let found = find_xmod_isomorphism(&x, &x, 12).unwrap().unwrap();
        assert!(found.is_isomorphism());
    }

    #[test]
    fn square_breaking_bottom_map_fails() {
        let x = z2z4();
        let z4 = x.c0().clone();
        let zero = Morphism::zero_map(&z4, &z4).unwrap();
        let m = XModMorphism::new(x.clone(), x.clone(), Morphism::identity(x.c1()), zero).unwrap();
        let r = m.verify();
        let v = r.check("square").unwrap().violation.clone().unwrap();
        assert_eq!(v.get("c1"), Some(1));
    }

    #[test]
    fn endomorphisms_of_z2z4() {
        let x = z2z4();
        let all = enumerate_xmod_morphisms(&x, &x, None, 12).unwrap();
        // bottom maps 1 ↦ k for k in Z4; top forced by 2k = 2·top(1)
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(XModMorphism::is_valid));
    }
}
