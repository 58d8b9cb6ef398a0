//! Cat1-objects and the equivalence with crossed modules.

use std::sync::Arc;

use crate::action::{semidirect_product, DerivedAction};
use crate::error::{Error, Result};
use crate::hom::{enumerate_isomorphisms, enumerate_morphisms_with, guard, search_morphisms, SearchOptions};
use crate::morphism::Morphism;
use crate::report::{CheckKind, Report, Violation};
use crate::structure::{is_token, Structure};
use crate::subobject::kernel;
use crate::xmod::{find_xmod_isomorphism, CrossedModule, XModMorphism};

/// A structure `R` with an embedded base `e: S → R` and two retractions
/// `s, t: R → S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cat1Object {
    name: String,
    embed: Morphism,
    src: Morphism,
    tgt: Morphism,
}

impl Cat1Object {
    pub fn new(name: impl Into<String>, embed: Morphism, src: Morphism, tgt: Morphism) -> Result<Self> {
        let name = name.into();
        if !is_token(&name) {
            return Err(Error::structural(format!("invalid cat1 name `{name}`")));
        }
        let (s, r) = (embed.dom(), embed.cod());
        for m in [&src, &tgt] {
            if **m.dom() != **r || **m.cod() != **s {
                return Err(Error::structural(format!(
                    "{} does not go from {} to {}",
                    m.name(),
                    r.name(),
                    s.name()
                )));
            }
        }
        if !embed.is_injective() {
            return Err(Error::structural(format!(
                "embedding {} is not injective",
                embed.name()
            )));
        }
        Ok(Cat1Object { name, embed, src, tgt })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `R`.
    pub fn big(&self) -> &Arc<Structure> {
        self.embed.cod()
    }

    /// `S`.
    pub fn base(&self) -> &Arc<Structure> {
        self.embed.dom()
    }

    pub fn embed(&self) -> &Morphism {
        &self.embed
    }

    pub fn src(&self) -> &Morphism {
        &self.src
    }

    pub fn tgt(&self) -> &Morphism {
        &self.tgt
    }

    /// Component checks as preconditions, then `s∘e = t∘e = id` and the
    /// kernel laws `x*y = 0`, `x+y-x-y = 0` for `x ∈ ker s`, `y ∈ ker t`.
    pub fn verify(&self) -> Report {
        let mut r = Report::new(&self.name);
        r.absorb("big.", self.big().verify(), CheckKind::Precondition);
        r.absorb("base.", self.base().verify(), CheckKind::Precondition);
        r.record_pre("embed", self.embed.check());
        r.record_pre("source", self.src.check());
        r.record_pre("target", self.tgt.check());
        let (big, base) = (&**self.big(), &**self.base());
        let section = |law: &str, m: &Morphism| -> Result<(), Violation> {
            for q in 0..base.len() {
                let back = m.apply(self.embed.apply(q));
                if back != q {
                    return Err(Violation::new(
                        law,
                        format!("lhs={} rhs={}", base.element_name(back), base.element_name(q)),
                    )
                    .bind("q", q, base.element_name(q)));
                }
            }
            Ok(())
        };
        r.record("section.source", section("section.source", &self.src));
        r.record("section.target", section("section.target", &self.tgt));
        let ks: Vec<usize> = (0..big.len()).filter(|&x| self.src.apply(x) == base.zero()).collect();
        let kt: Vec<usize> = (0..big.len()).filter(|&x| self.tgt.apply(x) == base.zero()).collect();
        let kernel_law = |law: String, f: &dyn Fn(usize, usize) -> usize| -> Result<(), Violation> {
            for &x in &ks {
                for &y in &kt {
                    let v = f(x, y);
                    if v != big.zero() {
                        return Err(Violation::new(
                            law,
                            format!("lhs={} rhs={}", big.element_name(v), big.element_name(big.zero())),
                        )
                        .bind("x", x, big.element_name(x))
                        .bind("y", y, big.element_name(y)));
                    }
                }
            }
            Ok(())
        };
        for (op, b) in big.profile().binary_ops().iter().enumerate() {
            let law = format!("kernel.star[{}]", b.name);
            r.record(law.clone(), kernel_law(law, &|x, y| big.star(op, x, y)));
        }
        r.record(
            "kernel.commutator",
            kernel_law("kernel.commutator".into(), &|x, y| {
                big.sub(big.sub(big.add(x, y), x), y)
            }),
        );
        r
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }

    /// The cat1-object `(S, S, id, id, id)`.
    pub fn identity_on(s: &Arc<Structure>) -> Self {
        let id = Morphism::identity(s);
        Cat1Object {
            name: format!("idcat({})", s.name()),
            embed: id.clone(),
            src: id.clone(),
            tgt: id,
        }
    }
}

/// A pair `(φ: R → R′, φS: S → S′)` between cat1-objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cat1Morphism {
    pub src: Cat1Object,
    pub dst: Cat1Object,
    pub phi: Morphism,
    pub phi_s: Morphism,
}

impl Cat1Morphism {
    pub fn new(src: Cat1Object, dst: Cat1Object, phi: Morphism, phi_s: Morphism) -> Result<Self> {
        if **phi.dom() != **src.big()
            || **phi.cod() != **dst.big()
            || **phi_s.dom() != **src.base()
            || **phi_s.cod() != **dst.base()
        {
            return Err(Error::structural(format!(
                "({}, {}) does not go from {} to {}",
                phi.name(),
                phi_s.name(),
                src.name(),
                dst.name()
            )));
        }
        Ok(Cat1Morphism { src, dst, phi, phi_s })
    }

    pub fn identity(c: &Cat1Object) -> Self {
        Cat1Morphism {
            src: c.clone(),
            dst: c.clone(),
            phi: Morphism::identity(c.big()),
            phi_s: Morphism::identity(c.base()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Cat1Morphism) -> Result<Cat1Morphism> {
        if first.dst != self.src {
            return Err(Error::structural("cat1 morphisms do not compose"));
        }
        Ok(Cat1Morphism {
            src: first.src.clone(),
            dst: self.dst.clone(),
            phi: self.phi.after(&first.phi)?,
            phi_s: self.phi_s.after(&first.phi_s)?,
        })
    }

    pub fn same_maps(&self, other: &Cat1Morphism) -> bool {
        self.phi.map() == other.phi.map() && self.phi_s.map() == other.phi_s.map()
    }

    fn squares(&self) -> [(&'static str, Result<(), Violation>); 3] {
        let (a, b) = (&self.src, &self.dst);
        let big = a.big();
        let base_d = b.base();
        let over_big = |law: &'static str, m: &Morphism, md: &Morphism| -> Result<(), Violation> {
            for x in 0..big.len() {
                let (l, r) = (md.apply(self.phi.apply(x)), self.phi_s.apply(m.apply(x)));
                if l != r {
                    return Err(Violation::new(
                        law,
                        format!("lhs={} rhs={}", base_d.element_name(l), base_d.element_name(r)),
                    )
                    .bind("r", x, big.element_name(x)));
                }
            }
            Ok(())
        };
        let embed = || -> Result<(), Violation> {
            let (base, big_d) = (a.base(), b.big());
            for q in 0..base.len() {
                let (l, r) = (self.phi.apply(a.embed().apply(q)), b.embed().apply(self.phi_s.apply(q)));
                if l != r {
                    return Err(Violation::new(
                        "square.embed",
                        format!("lhs={} rhs={}", big_d.element_name(l), big_d.element_name(r)),
                    )
                    .bind("q", q, base.element_name(q)));
                }
            }
            Ok(())
        };
        [
            ("square.source", over_big("square.source", a.src(), b.src())),
            ("square.target", over_big("square.target", a.tgt(), b.tgt())),
            ("square.embed", embed()),
        ]
    }

    pub fn check(&self) -> Result<(), Violation> {
        for (_, outcome) in self.squares() {
            outcome?;
        }
        Ok(())
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new(format!("({},{})", self.phi.name(), self.phi_s.name()));
        r.record_pre("phi", self.phi.check());
        r.record_pre("phi_s", self.phi_s.check());
        for (law, outcome) in self.squares() {
            r.record(law, outcome);
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }

    pub fn inverse(&self) -> Option<Cat1Morphism> {
        Some(Cat1Morphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            phi: self.phi.inverse()?,
            phi_s: self.phi_s.inverse()?,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_valid() && self.inverse().is_some_and(|i| i.is_valid())
    }
}

/// `(C1 ⋊ C0, C0)` with `s(c1,c0) = c0`, `t(c1,c0) = ∂(c1) + c0` and
/// `e(c0) = (0,c0)`.
pub fn xmod_to_cat1(x: &CrossedModule) -> Result<Cat1Object> {
    let sd = semidirect_product(x.action())?;
    let (c0, d) = (x.c0(), x.boundary());
    let n0 = c0.len();
    let src = sd.projection.clone().renamed(format!("s({})", x.name()));
    let tgt = Morphism::from_fn(format!("t({})", x.name()), &sd.product, c0, |i| {
        c0.add(d.apply(i / n0), i % n0)
    })?;
    let embed = sd.section.clone().renamed(format!("e({})", x.name()));
    Cat1Object::new(format!("cat1({})", x.name()), embed, src, tgt)
}

/// `(ker s, S, t|ker s)` with `q·k = e(q) + k − e(q)` and `q*k = e(q)*k`.
pub fn cat1_to_xmod(c: &Cat1Object) -> Result<CrossedModule> {
    let k = kernel(c.src())?;
    let (big, base, e) = (c.big(), c.base(), c.embed());
    let back = |x: usize| {
        k.position(x)
            .ok_or_else(|| Error::NotClosed(format!("{} leaves ker s", big.element_name(x))))
    };
    let (nb, na) = (base.len(), k.len());
    let mut dot = Vec::with_capacity(nb * na);
    for q in 0..nb {
        for &x in k.elements() {
            dot.push(back(big.conj(e.apply(q), x))?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..big.star_count() {
        let mut t = Vec::with_capacity(nb * na);
        for q in 0..nb {
            for &x in k.elements() {
                t.push(back(big.star(op, e.apply(q), x))?);
            }
        }
        stars.push(t);
    }
    let act = DerivedAction::new(
        format!("conj({})", c.name()),
        base.clone(),
        k.induced().clone(),
        dot,
        stars,
    )?;
    let boundary = Morphism::new(
        format!("d({})", c.name()),
        k.induced().clone(),
        base.clone(),
        k.elements().iter().map(|&x| c.tgt().apply(x)).collect(),
    )?;
    CrossedModule::new(format!("xmod({})", c.name()), boundary, act)
}

/// The cat1-morphism `(μ1 × μ0, μ0)` between the images of the endpoints
/// under [`xmod_to_cat1`].
pub fn xmod_morphism_to_cat1(m: &XModMorphism) -> Result<Cat1Morphism> {
    let (a, b) = (xmod_to_cat1(&m.src)?, xmod_to_cat1(&m.dst)?);
    let (n0, n0d) = (m.src.c0().len(), m.dst.c0().len());
    let phi = Morphism::from_fn(format!("{}x{}", m.mu1.name(), m.mu0.name()), a.big(), b.big(), |i| {
        m.mu1.apply(i / n0) * n0d + m.mu0.apply(i % n0)
    })?;
    Cat1Morphism::new(a, b, phi, m.mu0.clone())
}

/// Every cat1-morphism `a → b`, optionally with a fixed base map.
pub fn enumerate_cat1_morphisms(
    a: &Cat1Object,
    b: &Cat1Object,
    phi_s: Option<&Morphism>,
    max_size: usize,
) -> Result<Vec<Cat1Morphism>> {
    guard(format!("cat1 {}", a.name()), a.big().len(), max_size)?;
    let bases = match phi_s {
        Some(m) => vec![m.clone()],
        None => enumerate_morphisms_with(a.base(), b.base(), SearchOptions::with_max_size(max_size))?,
    };
    let mut out = Vec::new();
    for m in bases {
        out.extend(over_base(a, b, &m, SearchOptions::with_max_size(max_size))?);
    }
    Ok(out)
}

fn over_base(a: &Cat1Object, b: &Cat1Object, phi_s: &Morphism, opts: SearchOptions) -> Result<Vec<Cat1Morphism>> {
    let mut forced = vec![None; a.big().len()];
    for q in 0..a.base().len() {
        forced[a.embed().apply(q)] = Some(b.embed().apply(phi_s.apply(q)));
    }
    let allowed = |x: usize, y: usize| {
        b.src().apply(y) == phi_s.apply(a.src().apply(x))
            && b.tgt().apply(y) == phi_s.apply(a.tgt().apply(x))
            && forced[x].is_none_or(|f| f == y)
    };
    Ok(search_morphisms(a.big(), b.big(), opts, &allowed)?
        .into_iter()
        .map(|phi| Cat1Morphism {
            src: a.clone(),
            dst: b.clone(),
            phi,
            phi_s: phi_s.clone(),
        })
        .filter(|m| m.check().is_ok())
        .collect())
}

/// Some isomorphism of cat1-objects `a → b`, if one exists.
pub fn find_cat1_isomorphism(a: &Cat1Object, b: &Cat1Object, max_size: usize) -> Result<Option<Cat1Morphism>> {
    if a.big().len() != b.big().len() || a.base().len() != b.base().len() {
        return Ok(None);
    }
    guard(format!("cat1 {}", a.name()), a.big().len(), max_size)?;
    for m in enumerate_isomorphisms(a.base(), b.base(), max_size)? {
        let opts = SearchOptions::with_max_size(max_size).bijective();
        for c in over_base(a, b, &m, opts)? {
            if c.is_isomorphism() {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Checks that `cat1_to_xmod(xmod_to_cat1(x))` is isomorphic to `x`.
pub fn roundtrip_check(x: &CrossedModule, max_size: usize) -> Result<Report> {
    let back = cat1_to_xmod(&xmod_to_cat1(x)?)?;
    let mut r = Report::new(format!("roundtrip:{}", x.name()));
    let outcome = match find_xmod_isomorphism(&back, x, max_size)? {
        Some(_) => Ok(()),
        None => Err(Violation::new("roundtrip.xmod", "no isomorphism found")),
    };
    r.record("roundtrip.xmod", outcome);
    Ok(r)
}

/// Checks that `xmod_to_cat1(cat1_to_xmod(c))` is isomorphic to `c`.
pub fn cat1_roundtrip_check(c: &Cat1Object, max_size: usize) -> Result<Report> {
    let back = xmod_to_cat1(&cat1_to_xmod(c)?)?;
    let mut r = Report::new(format!("roundtrip:{}", c.name()));
    let outcome = match find_cat1_isomorphism(&back, c, max_size)? {
        Some(_) => Ok(()),
        None => Err(Violation::new("roundtrip.cat1", "no isomorphism found")),
    };
    r.record("roundtrip.cat1", outcome);
    Ok(r)
}
