//! Limits of crossed modules over a fixed base.

use std::sync::Arc;

use super::{CrossedModule, XModMorphism};
use crate::action::DerivedAction;
use crate::error::{Error, Result};
use crate::limits::{fiber_product, ProductCone};
use crate::morphism::Morphism;
use crate::report::Violation;
use crate::structure::Structure;
use crate::subobject::{equalizer, Subobject};

/// A crossed module with two legs into other crossed modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModCone {
    pub apex: CrossedModule,
    pub left: XModMorphism,
    pub right: XModMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModEqualizer {
    pub apex: CrossedModule,
    pub inclusion: XModMorphism,
}

fn cone_index(cone: &ProductCone, l: usize, r: usize) -> Result<usize> {
    (0..cone.apex.len())
        .find(|&i| cone.left.apply(i) == l && cone.right.apply(i) == r)
        .ok_or_else(|| {
            Error::NotClosed(format!(
                "({},{}) is not in {}",
                cone.left.cod().element_name(l),
                cone.right.cod().element_name(r),
                cone.apex.name()
            ))
        })
}

fn ensure_valid(x: &CrossedModule) -> Result<()> {
    x.verify().into_result().map_err(Error::from)
}

/// `(P ×_S R, S, ∂)` for crossed modules `(P, S, α)` and `(R, S, β)`, with
/// `∂(p, r) = α(p)` and the diagonal action of `S`.
pub fn xmod_fiber_product(a: &CrossedModule, b: &CrossedModule) -> Result<XModCone> {
    if **a.c0() != **b.c0() {
        return Err(Error::structural(format!(
            "{} and {} have different bases",
            a.name(),
            b.name()
        )));
    }
    let cone = fiber_product(a.boundary(), b.boundary())?;
    let s = a.c0();
    let n = cone.apex.len();
    let (l, r) = (&cone.left, &cone.right);
    let boundary = Morphism::from_fn(format!("d({})", cone.apex.name()), &cone.apex, s, |x| {
        a.boundary().apply(l.apply(x))
    })?;
    let mut dot = Vec::with_capacity(s.len() * n);
    for y in 0..s.len() {
        for x in 0..n {
            dot.push(cone_index(
                &cone,
                a.action().dot(y, l.apply(x)),
                b.action().dot(y, r.apply(x)),
            )?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..s.star_count() {
        let mut t = Vec::with_capacity(s.len() * n);
        for y in 0..s.len() {
            for x in 0..n {
                t.push(cone_index(
                    &cone,
                    a.action().star(op, y, l.apply(x)),
                    b.action().star(op, y, r.apply(x)),
                )?);
            }
        }
        stars.push(t);
    }
    let act = DerivedAction::new(
        format!("diag({})", cone.apex.name()),
        s.clone(),
        cone.apex.clone(),
        dot,
        stars,
    )?;
    let apex = CrossedModule::new(format!("{}x_{}", a.name(), b.name()), boundary, act)?;
    let id = Morphism::identity(s);
    Ok(XModCone {
        left: XModMorphism::new(apex.clone(), a.clone(), cone.left.clone(), id.clone())?,
        right: XModMorphism::new(apex.clone(), b.clone(), cone.right.clone(), id)?,
        apex,
    })
}

/// For `(α, id): (P, X, γ) → (S, X, ∂′)`, the crossed module `(P, S, α)`
/// with `s·p = ∂′(s)·p` and `s*p = ∂′(s)*p`.
pub fn induced_xmod(m: &XModMorphism) -> Result<CrossedModule> {
    if !m.mu0.is_identity() {
        return Err(Error::structural(format!("{} is not the identity", m.mu0.name())));
    }
    m.verify().into_result()?;
    let (p, s, dd) = (m.src.c1(), m.dst.c1(), m.dst.boundary());
    let pa = m.src.action();
    let act = DerivedAction::from_fn(
        format!("ind({})", m.mu1.name()),
        s,
        p,
        |y, x| pa.dot(dd.apply(y), x),
        |op, y, x| pa.star(op, dd.apply(y), x),
    )?;
    let x = CrossedModule::new(format!("ind({})", m.src.name()), m.mu1.clone(), act)?;
    ensure_valid(&x)?;
    Ok(x)
}

/// `(A, C, ∂′∘∂)` from `(A, B, ∂)`, `(B, C, ∂′)` and an action of `C` on `A`
/// compatible with the action of `B`. Besides compatibility,
/// `∂(c·a) = c·∂(a)` and `∂(c*a) = c*∂(a)` are required.
pub fn compose_xmod(ab: &CrossedModule, bc: &CrossedModule, act_c: &DerivedAction) -> Result<CrossedModule> {
    if **ab.c0() != **bc.c1() || **act_c.actor() != **bc.c0() || **act_c.acted() != **ab.c1() {
        return Err(Error::structural("crossed modules and action do not chain"));
    }
    let (a, b, c) = (ab.c1(), ab.c0(), bc.c0());
    let (d, d2) = (ab.boundary(), bc.boundary());
    let ops = a.profile().binary_ops();
    for y in 0..b.len() {
        for x in 0..a.len() {
            let mut rows = vec![(
                "compose.compat.dot".to_string(),
                act_c.dot(d2.apply(y), x),
                ab.action().dot(y, x),
            )];
            for (op, o) in ops.iter().enumerate() {
                rows.push((
                    format!("compose.compat.star[{}]", o.name),
                    act_c.star(op, d2.apply(y), x),
                    ab.action().star(op, y, x),
                ));
            }
            for (law, l, r) in rows {
                if l != r {
                    return Err(
                        Violation::new(law, format!("lhs={} rhs={}", a.element_name(l), a.element_name(r)))
                            .bind("b", y, b.element_name(y))
                            .bind("a", x, a.element_name(x))
                            .into(),
                    );
                }
            }
        }
    }
    for z in 0..c.len() {
        for x in 0..a.len() {
            let mut rows = vec![(
                "compose.boundary.dot".to_string(),
                d.apply(act_c.dot(z, x)),
                bc.action().dot(z, d.apply(x)),
            )];
            for (op, o) in ops.iter().enumerate() {
                rows.push((
                    format!("compose.boundary.star[{}]", o.name),
                    d.apply(act_c.star(op, z, x)),
                    bc.action().star(op, z, d.apply(x)),
                ));
            }
            for (law, l, r) in rows {
                if l != r {
                    return Err(
                        Violation::new(law, format!("lhs={} rhs={}", b.element_name(l), b.element_name(r)))
                            .bind("c", z, c.element_name(z))
                            .bind("a", x, a.element_name(x))
                            .into(),
                    );
                }
            }
        }
    }
    let boundary = d2.after(d)?.renamed(format!("{}.{}", d2.name(), d.name()));
    let x = CrossedModule::new(format!("{}.{}", bc.name(), ab.name()), boundary, act_c.clone())?;
    ensure_valid(&x)?;
    Ok(x)
}

/// `(X, X, id)` acted on by conjugation and the products of `X`.
pub fn slice_terminal(x: &Arc<Structure>) -> Result<CrossedModule> {
    CrossedModule::new(
        format!("term({})", x.name()),
        Morphism::identity(x),
        DerivedAction::conjugation(x)?,
    )
}

/// `({0}, X, 0)` with the trivial action.
pub fn slice_initial(x: &Arc<Structure>) -> Result<CrossedModule> {
    let zero = Arc::new(Structure::trivial(x.profile().clone(), format!("zero({})", x.name())));
    CrossedModule::new(
        format!("init({})", x.name()),
        Morphism::zero_map(&zero, x)?,
        DerivedAction::trivial(x, &zero)?,
    )
}

/// The unique morphism `(γ, id)` from a crossed `X`-module to the terminal one.
pub fn to_terminal(a: &CrossedModule) -> Result<XModMorphism> {
    XModMorphism::new(
        a.clone(),
        slice_terminal(a.c0())?,
        a.boundary().clone(),
        Morphism::identity(a.c0()),
    )
}

/// Pullback of `(α, id): (P, X, γ) → (S, X, ∂′)` and
/// `(β, id): (R, X, δ) → (S, X, ∂′)` over `X`. Built as the fiber product of
/// the induced crossed modules over `S`, composed with `∂′` under the
/// diagonal action of `X`.
pub fn slice_pullback(f: &XModMorphism, g: &XModMorphism) -> Result<XModCone> {
    if f.dst != g.dst {
        return Err(Error::structural(format!(
            "{} and {} have different targets",
            f.src.name(),
            g.src.name()
        )));
    }
    if !f.mu0.is_identity() || !g.mu0.is_identity() {
        return Err(Error::structural("slice morphisms must be the identity on the base"));
    }
    let target = &f.dst;
    let fp = xmod_fiber_product(&induced_xmod(f)?, &induced_xmod(g)?)?;
    let apex1 = fp.apex.c1().clone();
    let x = target.c0();
    let (l, r) = (&fp.left.mu1, &fp.right.mu1);
    let (pa, ra) = (f.src.action(), g.src.action());
    let cone = ProductCone {
        apex: apex1.clone(),
        left: l.clone(),
        right: r.clone(),
    };
    let mut dot = Vec::with_capacity(x.len() * apex1.len());
    for y in 0..x.len() {
        for e in 0..apex1.len() {
            dot.push(cone_index(&cone, pa.dot(y, l.apply(e)), ra.dot(y, r.apply(e)))?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..x.star_count() {
        let mut t = Vec::with_capacity(x.len() * apex1.len());
        for y in 0..x.len() {
            for e in 0..apex1.len() {
                t.push(cone_index(
                    &cone,
                    pa.star(op, y, l.apply(e)),
                    ra.star(op, y, r.apply(e)),
                )?);
            }
        }
        stars.push(t);
    }
    let act = DerivedAction::new(format!("diag({})", apex1.name()), x.clone(), apex1.clone(), dot, stars)?;
    let apex = compose_xmod(&fp.apex, target, &act)?.renamed(format!("{}x_{}", f.src.name(), g.src.name()));
    let id = Morphism::identity(x);
    Ok(XModCone {
        left: XModMorphism::new(apex.clone(), f.src.clone(), l.clone(), id.clone())?,
        right: XModMorphism::new(apex.clone(), g.src.clone(), r.clone(), id)?,
        apex,
    })
}

/// Product of two crossed `X`-modules, as their pullback over the terminal
/// crossed `X`-module.
pub fn slice_product(a: &CrossedModule, b: &CrossedModule) -> Result<XModCone> {
    if **a.c0() != **b.c0() {
        return Err(Error::structural(format!(
            "{} and {} have different bases",
            a.name(),
            b.name()
        )));
    }
    let mut cone = slice_pullback(&to_terminal(a)?, &to_terminal(b)?)?;
    let name = format!("{}x{}", a.name(), b.name());
    cone.apex = cone.apex.renamed(name);
    cone.left.src = cone.apex.clone();
    cone.right.src = cone.apex.clone();
    Ok(cone)
}

/// Levelwise equalizer of parallel crossed module morphisms, with the
/// boundary and action restricted.
pub fn xmod_equalizer(f: &XModMorphism, g: &XModMorphism) -> Result<XModEqualizer> {
    if f.src != g.src || f.dst != g.dst {
        return Err(Error::structural("crossed module morphisms are not parallel"));
    }
    let e1 = equalizer(&f.mu1, &g.mu1)?;
    let e0 = equalizer(&f.mu0, &g.mu0)?;
    let src = &f.src;
    let find = |sub: &Subobject, x: usize| {
        sub.position(x)
            .ok_or_else(|| Error::NotClosed(format!("{} leaves the equalizer", sub.parent().element_name(x))))
    };
    let boundary = Morphism::new(
        format!("d(eq({},{}))", f.mu1.name(), g.mu1.name()),
        e1.induced().clone(),
        e0.induced().clone(),
        e1.elements()
            .iter()
            .map(|&x| find(&e0, src.boundary().apply(x)))
            .collect::<Result<_>>()?,
    )?;
    let mut dot = Vec::new();
    for &y in e0.elements() {
        for &x in e1.elements() {
            dot.push(find(&e1, src.action().dot(y, x))?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..src.c0().star_count() {
        let mut t = Vec::new();
        for &y in e0.elements() {
            for &x in e1.elements() {
                t.push(find(&e1, src.action().star(op, y, x))?);
            }
        }
        stars.push(t);
    }
    let act = DerivedAction::new(
        format!("res({})", src.action().name()),
        e0.induced().clone(),
        e1.induced().clone(),
        dot,
        stars,
    )?;
    let apex = CrossedModule::new(format!("eq({})", src.name()), boundary, act)?;
    let inclusion = XModMorphism::new(apex.clone(), src.clone(), e1.embed().clone(), e0.embed().clone())?;
    Ok(XModEqualizer { apex, inclusion })
}
