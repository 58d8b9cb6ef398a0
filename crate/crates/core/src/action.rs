//! Derived actions and semidirect products.
//!
//! An action of `B` on `A` is a dot table `b·a` and, for every binary
//! operation `*` of the profile, a table `b*a`. The right-hand action `a*b`
//! is read from the table of the opposite operation: `a*b = b *° a`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::profile::UnaryClass;
use crate::report::{Report, Violation};
use crate::structure::{is_token, tuple_name, Structure, Tables};
use crate::subobject::{kernel, Subobject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedAction {
    name: String,
    actor: Arc<Structure>,
    acted: Arc<Structure>,
    dot: Vec<usize>,
    stars: Vec<Vec<usize>>,
}

impl DerivedAction {
    /// `dot` and each entry of `stars` are `|B| × |A|` row-major tables
    /// indexed by actor row. `stars` has one table per binary operation,
    /// opposites included.
    pub fn new(
        name: impl Into<String>,
        actor: Arc<Structure>,
        acted: Arc<Structure>,
        dot: Vec<usize>,
        stars: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let name = name.into();
        if !is_token(&name) {
            return Err(Error::structural(format!("invalid action name `{name}`")));
        }
        actor.same_profile(&acted)?;
        let cells = actor.len() * acted.len();
        let ok = |t: &[usize]| t.len() == cells && t.iter().all(|&v| v < acted.len());
        if !ok(&dot) {
            return Err(Error::structural("malformed dot table"));
        }
        if stars.len() != actor.profile().binary_ops().len() {
            return Err(Error::structural(format!(
                "expected {} star action tables, got {}",
                actor.profile().binary_ops().len(),
                stars.len()
            )));
        }
        for (op, t) in stars.iter().enumerate() {
            if !ok(t) {
                return Err(Error::structural(format!(
                    "malformed action table for `{}`",
                    actor.profile().binary_ops()[op].name
                )));
            }
        }
        Ok(DerivedAction {
            name,
            actor,
            acted,
            dot,
            stars,
        })
    }

    pub fn from_fn(
        name: impl Into<String>,
        actor: &Arc<Structure>,
        acted: &Arc<Structure>,
        dot: impl Fn(usize, usize) -> usize,
        star: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let (nb, na) = (actor.len(), acted.len());
        let dot = (0..nb * na).map(|i| dot(i / na, i % na)).collect();
        let stars = (0..actor.profile().binary_ops().len())
            .map(|op| (0..nb * na).map(|i| star(op, i / na, i % na)).collect())
            .collect();
        Self::new(name, actor.clone(), acted.clone(), dot, stars)
    }

    /// `b·a = a` and `b*a = 0`.
    pub fn trivial(actor: &Arc<Structure>, acted: &Arc<Structure>) -> Result<Self> {
        let z = acted.zero();
        Self::from_fn(
            format!("triv({},{})", actor.name(), acted.name()),
            actor,
            acted,
            |_, a| a,
            |_, _, _| z,
        )
    }

    /// Conjugation and the structure's own products: the action of a
    /// structure on itself.
    pub fn conjugation(s: &Arc<Structure>) -> Result<Self> {
        Self::from_fn(
            format!("conj({})", s.name()),
            s,
            s,
            |b, a| s.conj(b, a),
            |op, b, a| s.star(op, b, a),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn actor(&self) -> &Arc<Structure> {
        &self.actor
    }

    pub fn acted(&self) -> &Arc<Structure> {
        &self.acted
    }

    pub fn dot_table(&self) -> &[usize] {
        &self.dot
    }

    pub fn star_tables(&self) -> &[Vec<usize>] {
        &self.stars
    }

    /// `b·a`.
    #[inline]
    pub fn dot(&self, b: usize, a: usize) -> usize {
        self.dot[b * self.acted.len() + a]
    }

    /// `b*a`.
    #[inline]
    pub fn star(&self, op: usize, b: usize, a: usize) -> usize {
        self.stars[op][b * self.acted.len() + a]
    }

    /// `a*b`, read as `b *° a`.
    #[inline]
    pub fn star_right(&self, op: usize, a: usize, b: usize) -> usize {
        self.star(self.actor.profile().opposite(op), b, a)
    }

    /// Copy with `(actor, acted)` replaced by structures with identical
    /// tables, e.g. after renaming.
    pub fn rebased(&self, actor: Arc<Structure>, acted: Arc<Structure>) -> Result<Self> {
        if actor.tables() != self.actor.tables() || acted.tables() != self.acted.tables() {
            return Err(Error::structural("rebased action needs identical tables"));
        }
        Self::new(self.name.clone(), actor, acted, self.dot.clone(), self.stars.clone())
    }
}

/// The action of `B` on `A = ker p` induced by a section `sec` of `p: E → B`:
/// `b·a = sec(b) + a − sec(b)` and `b*a = sec(b) * a`.
pub fn action_from_section(p: &Morphism, i: &Subobject, sec: &Morphism) -> Result<DerivedAction> {
    let (e, b) = (p.dom(), p.cod());
    if **i.parent() != **e || **sec.dom() != **b || **sec.cod() != **e {
        return Err(Error::structural("extension data do not fit together"));
    }
    let ker = kernel(p)?;
    if ker.elements() != i.elements() {
        return Err(Error::structural(format!(
            "{} is not the kernel of {}",
            i.induced().name(),
            p.name()
        )));
    }
    if let Some(x) = (0..b.len()).find(|&x| p.apply(sec.apply(x)) != x) {
        return Err(Error::structural(format!(
            "{} is not a section of {}: {} maps back to {}",
            sec.name(),
            p.name(),
            b.element_name(x),
            b.element_name(p.apply(sec.apply(x)))
        )));
    }
    let acted = i.induced();
    let back = |x: usize| -> Result<usize> {
        i.position(x)
            .ok_or_else(|| Error::NotClosed(format!("action value {} escapes {}", e.element_name(x), acted.name())))
    };
    let (nb, na) = (b.len(), acted.len());
    let mut dot = Vec::with_capacity(nb * na);
    for y in 0..nb {
        for &a in i.elements() {
            dot.push(back(e.conj(sec.apply(y), a))?);
        }
    }
    let mut stars = Vec::new();
    for op in 0..e.star_count() {
        let mut t = Vec::with_capacity(nb * na);
        for y in 0..nb {
            for &a in i.elements() {
                t.push(back(e.star(op, sec.apply(y), a))?);
            }
        }
        stars.push(t);
    }
    DerivedAction::new(format!("act({})", sec.name()), b.clone(), acted.clone(), dot, stars)
}

/// `A ⋊ B` with its three structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semidirect {
    pub product: Arc<Structure>,
    /// `a ↦ (a, 0)`.
    pub injection: Morphism,
    /// `(a, b) ↦ b`.
    pub projection: Morphism,
    /// `b ↦ (0, b)`.
    pub section: Morphism,
}

impl Semidirect {
    /// Carrier index of `(a, b)`.
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.projection.cod().len() + b
    }
}

/// The structure on `A × B` with
/// `(a′,b′) + (a,b) = (a′ + b′·a, b′ + b)` and
/// `(a′,b′) * (a,b) = (a′*a + a′*b + b′*a, b′*b)`.
///
/// The tables are built whatever the action; whether they form a structure
/// is for [`Structure::verify`] to decide.
pub fn semidirect_product(act: &DerivedAction) -> Result<Semidirect> {
    let (a_s, b_s) = (&**act.acted(), &**act.actor());
    let (na, nb) = (a_s.len(), b_s.len());
    let n = na * nb;
    let idx = |a: usize, b: usize| a * nb + b;
    let split = |x: usize| (x / nb, x % nb);
    let mut add = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1) = split(x);
        for y in 0..n {
            let (a, b) = split(y);
            add.push(idx(a_s.add(a1, act.dot(b1, a)), b_s.add(b1, b)));
        }
    }
    let neg = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            let nb_ = b_s.neg(b);
            idx(act.dot(nb_, a_s.neg(a)), nb_)
        })
        .collect();
    let mut stars = Vec::new();
    for op in 0..a_s.star_count() {
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a1, b1) = split(x);
            for y in 0..n {
                let (a, b) = split(y);
                let first = a_s.add(a_s.star(op, a1, a), act.star_right(op, a1, b));
                let c = a_s.add(first, act.star(op, b1, a));
                t.push(idx(c, b_s.star(op, b1, b)));
            }
        }
        stars.push(t);
    }
    let unary = (0..a_s.unary_count())
        .map(|op| {
            (0..n)
                .map(|x| {
                    let (a, b) = split(x);
                    idx(a_s.unary(op, a), b_s.unary(op, b))
                })
                .collect()
        })
        .collect();
    let elements = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            tuple_name(&[a_s.element_name(a), b_s.element_name(b)])
        })
        .collect();
    let product = Arc::new(Structure::from_tables(
        a_s.profile().clone(),
        format!("{}x|{}", a_s.name(), b_s.name()),
        elements,
        idx(a_s.zero(), b_s.zero()),
        Tables { add, neg, stars, unary },
    )?);
    let injection = Morphism::from_fn(format!("inj({})", product.name()), act.acted(), &product, |a| {
        idx(a, b_s.zero())
    })?;
    let projection = Morphism::from_fn(format!("proj({})", product.name()), &product, act.actor(), |x| {
        split(x).1
    })?;
    let section = Morphism::from_fn(format!("sec({})", product.name()), act.actor(), &product, |b| {
        idx(a_s.zero(), b)
    })?;
    Ok(Semidirect {
        product,
        injection,
        projection,
        section,
    })
}

struct Ctx<'a> {
    act: &'a DerivedAction,
    a: &'a Structure,
    b: &'a Structure,
}

impl Ctx<'_> {
    fn fail(&self, law: &str, op: Option<usize>, vars: &[(&str, bool, usize)], l: &str, r: &str) -> Violation {
        let detail = match op {
            Some(op) => format!("op={} lhs={l} rhs={r}", self.a.profile().binary_ops()[op].name),
            None => format!("lhs={l} rhs={r}"),
        };
        let mut v = Violation::new(law, detail);
        for &(var, in_b, x) in vars {
            let s = if in_b { self.b } else { self.a };
            v = v.bind(var, x, s.element_name(x));
        }
        v
    }

    fn an(&self, x: usize) -> &str {
        self.a.element_name(x)
    }
}

/// Checks the twelve conditions characterizing derived actions. The
/// eleventh is reported in two readings: with `a*b` and with `b*a` as the
/// mixed product. The twelfth is evaluated inside the semidirect carrier.
pub fn check_derived_action(act: &DerivedAction) -> Report {
    let cx = Ctx {
        act,
        a: act.acted(),
        b: act.actor(),
    };
    let mut r = Report::new(act.name());
    r.record("cond1", cond1(&cx));
    r.record("cond2", cond2(&cx));
    r.record("cond3", cond3(&cx));
    r.record("cond4", cond4(&cx));
    r.record("cond5", cond5(&cx));
    r.record("cond6", cond6(&cx));
    r.record("cond7", cond7(&cx));
    r.record("cond8", cond8(&cx));
    r.record("cond9", cond9(&cx));
    r.record("cond10", cond10(&cx));
    r.record("cond11a", cond11(&cx, false));
    r.record("cond11b", cond11(&cx, true));
    r.record("cond12", cond12(&cx));
    r
}

fn cond1(cx: &Ctx) -> Result<(), Violation> {
    let z = cx.b.zero();
    for a in 0..cx.a.len() {
        let l = cx.act.dot(z, a);
        if l != a {
            return Err(cx.fail("cond1", None, &[("a", false, a)], cx.an(l), cx.an(a)));
        }
    }
    Ok(())
}

fn cond2(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, act) = (cx.a, cx.act);
    for b in 0..cx.b.len() {
        for a1 in 0..a_s.len() {
            for a2 in 0..a_s.len() {
                let l = act.dot(b, a_s.add(a1, a2));
                let r = a_s.add(act.dot(b, a1), act.dot(b, a2));
                if l != r {
                    let vars = [("b", true, b), ("a1", false, a1), ("a2", false, a2)];
                    return Err(cx.fail("cond2", None, &vars, cx.an(l), cx.an(r)));
                }
            }
        }
    }
    Ok(())
}

fn cond3(cx: &Ctx) -> Result<(), Violation> {
    let (b_s, act) = (cx.b, cx.act);
    for b1 in 0..b_s.len() {
        for b2 in 0..b_s.len() {
            for a in 0..cx.a.len() {
                let l = act.dot(b_s.add(b1, b2), a);
                let r = act.dot(b1, act.dot(b2, a));
                if l != r {
                    let vars = [("b1", true, b1), ("b2", true, b2), ("a", false, a)];
                    return Err(cx.fail("cond3", None, &vars, cx.an(l), cx.an(r)));
                }
            }
        }
    }
    Ok(())
}

fn cond4(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, act) = (cx.a, cx.act);
    for op in 0..a_s.star_count() {
        for b in 0..cx.b.len() {
            for a1 in 0..a_s.len() {
                for a2 in 0..a_s.len() {
                    let l = act.star(op, b, a_s.add(a1, a2));
                    let r = a_s.add(act.star(op, b, a1), act.star(op, b, a2));
                    if l != r {
                        let vars = [("b", true, b), ("a1", false, a1), ("a2", false, a2)];
                        return Err(cx.fail("cond4", Some(op), &vars, cx.an(l), cx.an(r)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond5(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    for op in 0..a_s.star_count() {
        for b1 in 0..b_s.len() {
            for b2 in 0..b_s.len() {
                for a in 0..a_s.len() {
                    let l = act.star(op, b_s.add(b1, b2), a);
                    let r = a_s.add(act.star(op, b1, a), act.star(op, b2, a));
                    if l != r {
                        let vars = [("b1", true, b1), ("b2", true, b2), ("a", false, a)];
                        return Err(cx.fail("cond5", Some(op), &vars, cx.an(l), cx.an(r)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond6(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    for op in 0..a_s.star_count() {
        for b1 in 0..b_s.len() {
            for b2 in 0..b_s.len() {
                let bb = b_s.star(op, b1, b2);
                for a1 in 0..a_s.len() {
                    for a2 in 0..a_s.len() {
                        let aa = a_s.star(op, a1, a2);
                        let l = act.dot(bb, aa);
                        if l != aa {
                            let vars = [("b1", true, b1), ("b2", true, b2), ("a1", false, a1), ("a2", false, a2)];
                            return Err(cx.fail("cond6", Some(op), &vars, cx.an(l), cx.an(aa)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond7(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    for op in 0..a_s.star_count() {
        for b1 in 0..b_s.len() {
            for b2 in 0..b_s.len() {
                let bb = b_s.star(op, b1, b2);
                for a in 0..a_s.len() {
                    for b in 0..b_s.len() {
                        let ab = act.star_right(op, a, b);
                        let l = act.dot(bb, ab);
                        if l != ab {
                            let vars = [("b1", true, b1), ("b2", true, b2), ("a", false, a), ("b", true, b)];
                            return Err(cx.fail("cond7", Some(op), &vars, cx.an(l), cx.an(ab)));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond8(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, act) = (cx.a, cx.act);
    for op in 0..a_s.star_count() {
        for a1 in 0..a_s.len() {
            for b in 0..cx.b.len() {
                for a2 in 0..a_s.len() {
                    let l = a_s.star(op, a1, act.dot(b, a2));
                    let r = a_s.star(op, a1, a2);
                    if l != r {
                        let vars = [("a1", false, a1), ("b", true, b), ("a2", false, a2)];
                        return Err(cx.fail("cond8", Some(op), &vars, cx.an(l), cx.an(r)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond9(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    for op in 0..a_s.star_count() {
        for b in 0..b_s.len() {
            for b1 in 0..b_s.len() {
                for a in 0..a_s.len() {
                    let l = act.star(op, b, act.dot(b1, a));
                    let r = act.star(op, b, a);
                    if l != r {
                        let vars = [("b", true, b), ("b1", true, b1), ("a", false, a)];
                        return Err(cx.fail("cond9", Some(op), &vars, cx.an(l), cx.an(r)));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond10(cx: &Ctx) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    for (w, uo) in a_s.profile().unary_ops().iter().enumerate() {
        for b in 0..b_s.len() {
            for a in 0..a_s.len() {
                let l = a_s.unary(w, act.dot(b, a));
                let r = act.dot(b_s.unary(w, b), a_s.unary(w, a));
                if l != r {
                    let mut v = cx.fail("cond10", None, &[("b", true, b), ("a", false, a)], cx.an(l), cx.an(r));
                    v.detail = format!("unary={} {}", uo.name, v.detail);
                    return Err(v);
                }
            }
        }
    }
    Ok(())
}

/// `flipped = false`: the mixed product is `a*b`; `true`: it is `b*a`.
fn cond11(cx: &Ctx, flipped: bool) -> Result<(), Violation> {
    let (a_s, b_s, act) = (cx.a, cx.b, cx.act);
    let law = if flipped { "cond11b" } else { "cond11a" };
    let mixed = |op: usize, a: usize, b: usize| {
        if flipped {
            act.star(op, b, a)
        } else {
            act.star_right(op, a, b)
        }
    };
    for (w, uo) in a_s.profile().unary_ops().iter().enumerate() {
        for op in 0..a_s.star_count() {
            for a in 0..a_s.len() {
                for b in 0..b_s.len() {
                    let l = a_s.unary(w, mixed(op, a, b));
                    let rs: Vec<usize> = match uo.class {
                        UnaryClass::Linear => {
                            vec![mixed(op, a_s.unary(w, a), b), mixed(op, a, b_s.unary(w, b))]
                        }
                        UnaryClass::Multiplicative => vec![mixed(op, a_s.unary(w, a), b_s.unary(w, b))],
                    };
                    if let Some(&r) = rs.iter().find(|&&r| r != l) {
                        let mut v = cx.fail(law, Some(op), &[("a", false, a), ("b", true, b)], cx.an(l), cx.an(r));
                        v.detail = format!("unary={} {}", uo.name, v.detail);
                        return Err(v);
                    }
                }
            }
        }
    }
    Ok(())
}

fn cond12(cx: &Ctx) -> Result<(), Violation> {
    let sd = match semidirect_product(cx.act) {
        Ok(sd) => sd,
        Err(e) => return Err(Violation::new("cond12", e.to_string())),
    };
    let p = &*sd.product;
    let (na, nb) = (cx.a.len(), cx.b.len());
    // A ∪ B inside the semidirect carrier, A first, shared zero once
    let mut points: Vec<usize> = (0..na).map(|a| sd.pair(a, cx.b.zero())).collect();
    points.extend((0..nb).filter(|&b| b != cx.b.zero()).map(|b| sd.pair(cx.a.zero(), b)));
    let ops = p.star_count();
    for o1 in 0..ops {
        for o2 in 0..ops {
            for &x in &points {
                for &y in &points {
                    let xy = p.star(o1, x, y);
                    for &z in &points {
                        for &t in &points {
                            let zt = p.star(o2, z, t);
                            let (l, r) = (p.add(xy, zt), p.add(zt, xy));
                            if l != r {
                                let names = p.profile().binary_ops();
                                let mut v = Violation::new(
                                    "cond12",
                                    format!(
                                        "ops={},{} lhs={} rhs={}",
                                        names[o1].name,
                                        names[o2].name,
                                        p.element_name(l),
                                        p.element_name(r)
                                    ),
                                );
                                for (var, e) in [("x", x), ("y", y), ("z", z), ("t", t)] {
                                    v = v.bind(var, e, p.element_name(e));
                                }
                                return Err(v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
