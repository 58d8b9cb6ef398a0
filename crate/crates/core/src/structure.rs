//! Finite groups with operations, stored as Cayley tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::{Term, UnaryClass, VarietyProfile};
use crate::report::{Report, Violation};

/// Raw operation tables of a structure with `n` elements.
///
/// `add` and every entry of `stars` are row-major `n × n` tables, so
/// `add[x * n + y]` is `x + y`. `stars` holds one table per binary
/// operation of the profile, opposites included.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tables {
    pub add: Vec<usize>,
    pub neg: Vec<usize>,
    pub stars: Vec<Vec<usize>>,
    pub unary: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    name: String,
    profile: Arc<VarietyProfile>,
    elements: Vec<String>,
    zero: usize,
    tables: Tables,
}

/// True for names usable as element or object identifiers in the text format.
pub fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '#')
}

/// Canonical name of a tuple element, e.g. `(0,x)`.
pub fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

impl Structure {
    /// Builds a structure from primary star tables; the tables of opposite
    /// operations are generated by transposition.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        profile: Arc<VarietyProfile>,
        name: impl Into<String>,
        elements: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        neg: Vec<usize>,
        primary_stars: Vec<Vec<usize>>,
        unary: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = elements.len();
        if primary_stars.len() != profile.primary_binary_count() {
            return Err(Error::structural(format!(
                "profile {} expects {} star tables, got {}",
                profile.name(),
                profile.primary_binary_count(),
                primary_stars.len()
            )));
        }
        for t in &primary_stars {
            if t.len() != n * n {
                return Err(Error::structural("star table has wrong dimensions"));
            }
        }
        let mut stars = primary_stars;
        for op in profile.primary_binary_count()..profile.binary_ops().len() {
            let src = &stars[profile.opposite(op)];
            let mut t = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = src[y * n + x];
                }
            }
            stars.push(t);
        }
        Self::from_tables(profile, name, elements, zero, Tables { add, neg, stars, unary })
    }

    /// Builds a structure from a complete set of tables, opposites included.
    /// Only dimensions and entry ranges are checked here; the algebraic laws
    /// are the business of [`Structure::verify`].
    pub fn from_tables(
        profile: Arc<VarietyProfile>,
        name: impl Into<String>,
        elements: Vec<String>,
        zero: usize,
        tables: Tables,
    ) -> Result<Self> {
        let name = name.into();
        let n = elements.len();
        if n == 0 {
            return Err(Error::structural("carrier must be non-empty"));
        }
        if !is_token(&name) {
            return Err(Error::structural(format!("invalid structure name `{name}`")));
        }
        let mut seen = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if !is_token(e) {
                return Err(Error::structural(format!("invalid element name `{e}`")));
            }
            if seen.insert(e.as_str(), i).is_some() {
                return Err(Error::structural(format!("duplicate element `{e}`")));
            }
        }
        if zero >= n {
            return Err(Error::structural("zero is not a carrier element"));
        }
        let in_range = |t: &[usize]| t.iter().all(|&v| v < n);
        if tables.add.len() != n * n || !in_range(&tables.add) {
            return Err(Error::structural("malformed add table"));
        }
        if tables.neg.len() != n || !in_range(&tables.neg) {
            return Err(Error::structural("malformed neg table"));
        }
        if tables.stars.len() != profile.binary_ops().len() {
            return Err(Error::structural(format!(
                "profile {} has {} binary operations, got {} tables",
                profile.name(),
                profile.binary_ops().len(),
                tables.stars.len()
            )));
        }
        for (op, t) in tables.stars.iter().enumerate() {
            if t.len() != n * n || !in_range(t) {
                return Err(Error::structural(format!(
                    "malformed table for `{}`",
                    profile.binary_ops()[op].name
                )));
            }
        }
        if tables.unary.len() != profile.unary_ops().len() {
            return Err(Error::structural("wrong number of unary tables"));
        }
        for (op, t) in tables.unary.iter().enumerate() {
            if t.len() != n || !in_range(t) {
                return Err(Error::structural(format!(
                    "malformed table for `{}`",
                    profile.unary_ops()[op].name
                )));
            }
        }
        Ok(Structure {
            name,
            profile,
            elements,
            zero,
            tables,
        })
    }

    /// Builds a structure by evaluating operation functions on indices.
    /// `star` is consulted for primary operations only.
    pub fn from_fn(
        profile: Arc<VarietyProfile>,
        name: impl Into<String>,
        elements: Vec<String>,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
        star: impl Fn(usize, usize, usize) -> usize,
        unary: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let addt = (0..n * n).map(|i| add(i / n, i % n)).collect();
        let negt = (0..n).map(neg).collect();
        let stars = (0..profile.primary_binary_count())
            .map(|op| (0..n * n).map(|i| star(op, i / n, i % n)).collect())
            .collect();
        let un = (0..profile.unary_ops().len())
            .map(|op| (0..n).map(|x| unary(op, x)).collect())
            .collect();
        Self::new(profile, name, elements, zero, addt, negt, stars, un)
    }

    /// The one-element structure of a profile.
    pub fn trivial(profile: Arc<VarietyProfile>, name: impl Into<String>) -> Self {
        Self::from_fn(
            profile,
            name,
            vec!["0".into()],
            0,
            |_, _| 0,
            |_| 0,
            |_, _, _| 0,
            |_, _| 0,
        )
        .expect("trivial structure is well-formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Result<Self> {
        Self::from_tables(
            self.profile.clone(),
            name,
            self.elements.clone(),
            self.zero,
            self.tables.clone(),
        )
    }

    pub fn profile(&self) -> &Arc<VarietyProfile> {
        &self.profile
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.tables.add[x * self.len() + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.tables.neg[x]
    }

    /// `x - y`, i.e. `x + (-y)`.
    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `x + y - x`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.sub(self.add(x, y), x)
    }

    #[inline]
    pub fn star(&self, op: usize, x: usize, y: usize) -> usize {
        self.tables.stars[op][x * self.len() + y]
    }

    #[inline]
    pub fn unary(&self, op: usize, x: usize) -> usize {
        self.tables.unary[op][x]
    }

    pub fn star_count(&self) -> usize {
        self.tables.stars.len()
    }

    pub fn unary_count(&self) -> usize {
        self.tables.unary.len()
    }

    pub fn same_profile(&self, other: &Structure) -> Result<()> {
        if self.profile == other.profile {
            Ok(())
        } else {
            Err(Error::ProfileMismatch {
                left: self.profile.name().to_string(),
                right: other.profile.name().to_string(),
            })
        }
    }

    /// Additive order of `x`. Assumes `add` is a group operation.
    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero && k <= self.len() {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.add(x, y) == self.add(y, x)))
    }

    /// Evaluates a term under an assignment of variables to elements.
    pub fn eval(&self, t: &Term, env: &[usize]) -> usize {
        match t {
            Term::Zero => self.zero,
            Term::Var(i) => env[*i],
            Term::Add(a, b) => self.add(self.eval(a, env), self.eval(b, env)),
            Term::Neg(a) => self.neg(self.eval(a, env)),
            Term::Binary(op, a, b) => self.star(*op, self.eval(a, env), self.eval(b, env)),
            Term::Unary(op, a) => self.unary(*op, self.eval(a, env)),
        }
    }

    fn violation(&self, law: String, vars: &[(&str, usize)], lhs: usize, rhs: usize) -> Violation {
        let mut v = Violation::new(law, format!("lhs={} rhs={}", self.elements[lhs], self.elements[rhs]));
        for (name, x) in vars {
            v = v.bind(name, *x, &self.elements[*x]);
        }
        v
    }

    fn law1(&self, law: String, f: impl Fn(usize) -> (usize, usize)) -> Result<(), Violation> {
        for x in 0..self.len() {
            let (l, r) = f(x);
            if l != r {
                return Err(self.violation(law, &[("x", x)], l, r));
            }
        }
        Ok(())
    }

    fn law2(&self, law: String, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<(), Violation> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let (l, r) = f(x, y);
                if l != r {
                    return Err(self.violation(law, &[("x", x), ("y", y)], l, r));
                }
            }
        }
        Ok(())
    }

    fn law3(&self, law: String, f: impl Fn(usize, usize, usize) -> (usize, usize)) -> Result<(), Violation> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (l, r) = f(x, y, z);
                    if l != r {
                        return Err(self.violation(law, &[("x", x), ("y", y), ("z", z)], l, r));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks every law a structure of its profile must satisfy: the group
    /// axioms, opposite coherence, left distributivity and centrality of
    /// star products, the unary laws, and the profile's extra identities.
    pub fn verify(&self) -> Report {
        let mut r = Report::new(&self.name);
        let z = self.zero;
        r.record(
            "group.assoc",
            self.law3("group.assoc".into(), |x, y, w| {
                (self.add(self.add(x, y), w), self.add(x, self.add(y, w)))
            }),
        );
        r.record(
            "group.left_identity",
            self.law1("group.left_identity".into(), |x| (self.add(z, x), x)),
        );
        r.record(
            "group.right_identity",
            self.law1("group.right_identity".into(), |x| (self.add(x, z), x)),
        );
        r.record(
            "group.left_inverse",
            self.law1("group.left_inverse".into(), |x| (self.add(self.neg(x), x), z)),
        );
        r.record(
            "group.right_inverse",
            self.law1("group.right_inverse".into(), |x| (self.add(x, self.neg(x)), z)),
        );
        let ops = self.profile.binary_ops();
        for (op, b) in ops.iter().enumerate() {
            let opp = b.opposite;
            let law = format!("opposite[{}]", b.name);
            r.record(
                law.clone(),
                self.law2(law, |x, y| (self.star(op, x, y), self.star(opp, y, x))),
            );
        }
        for (op, b) in ops.iter().enumerate() {
            let law = format!("distributive[{}]", b.name);
            r.record(
                law.clone(),
                self.law3(law, |x, y, w| {
                    (
                        self.star(op, x, self.add(y, w)),
                        self.add(self.star(op, x, y), self.star(op, x, w)),
                    )
                }),
            );
        }
        for (op, b) in ops.iter().enumerate() {
            let law = format!("central[{}]", b.name);
            r.record(
                law.clone(),
                self.law3(law, |x, y, w| {
                    let p = self.star(op, y, w);
                    (self.add(x, p), self.add(p, x))
                }),
            );
        }
        for (u, uo) in self.profile.unary_ops().iter().enumerate() {
            let law = format!("unary.additive[{}]", uo.name);
            r.record(
                law.clone(),
                self.law2(law, |x, y| {
                    (
                        self.unary(u, self.add(x, y)),
                        self.add(self.unary(u, x), self.unary(u, y)),
                    )
                }),
            );
            for (op, b) in ops.iter().enumerate() {
                let (law, linear) = match uo.class {
                    UnaryClass::Linear => (format!("unary.linear[{},{}]", uo.name, b.name), true),
                    UnaryClass::Multiplicative => (format!("unary.multiplicative[{},{}]", uo.name, b.name), false),
                };
                r.record(
                    law.clone(),
                    self.law2(law, |x, y| {
                        let lhs = self.unary(u, self.star(op, x, y));
                        let rhs = if linear {
                            self.star(op, self.unary(u, x), y)
                        } else {
                            self.star(op, self.unary(u, x), self.unary(u, y))
                        };
                        (lhs, rhs)
                    }),
                );
            }
        }
        for id in self.profile.identities() {
            let law = format!("identity[{}]", id.label);
            r.record(law.clone(), self.check_identity(&law, id));
        }
        r
    }

    fn check_identity(&self, law: &str, id: &crate::profile::Identity) -> Result<(), Violation> {
        let n = self.len();
        let k = id.vars.len();
        let mut env = vec![0usize; k];
        loop {
            let l = self.eval(&id.lhs, &env);
            let r = self.eval(&id.rhs, &env);
            if l != r {
                let vars: Vec<(&str, usize)> = id.vars.iter().map(String::as_str).zip(env.iter().copied()).collect();
                return Err(self.violation(law.to_string(), &vars, l, r));
            }
            // odometer over all n^k assignments, last variable fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                env[i] += 1;
                if env[i] < n {
                    break;
                }
                env[i] = 0;
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passed()
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, order {})", self.name, self.profile.name(), self.len())
    }
}

/// Builds the structure on a set of tuples of elements of `factors` with
/// componentwise operations. Fails if the tuples are not closed under the
/// operations.
pub(crate) fn tuple_structure(
    name: impl Into<String>,
    factors: &[&Structure],
    tuples: Vec<Vec<usize>>,
) -> Result<Structure> {
    let profile = factors[0].profile().clone();
    for f in factors {
        factors[0].same_profile(f)?;
    }
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let lookup = |t: Vec<usize>| -> Result<usize> {
        index.get(t.as_slice()).copied().ok_or_else(|| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&x, f)| f.element_name(x)).collect();
            Error::NotClosed(format!("{} leaves the carrier", tuple_name(&parts)))
        })
    };
    let n = tuples.len();
    let zero = lookup(factors.iter().map(|f| f.zero()).collect())?;
    let componentwise2 = |a: &[usize], b: &[usize], op: &dyn Fn(&Structure, usize, usize) -> usize| {
        a.iter()
            .zip(b)
            .zip(factors)
            .map(|((&x, &y), f)| op(f, x, y))
            .collect::<Vec<_>>()
    };
    let mut add = Vec::with_capacity(n * n);
    for a in &tuples {
        for b in &tuples {
            add.push(lookup(componentwise2(a, b, &|f, x, y| f.add(x, y)))?);
        }
    }
    let mut neg = Vec::with_capacity(n);
    for a in &tuples {
        neg.push(lookup(a.iter().zip(factors).map(|(&x, f)| f.neg(x)).collect())?);
    }
    let mut stars = Vec::new();
    for op in 0..profile.binary_ops().len() {
        let mut t = Vec::with_capacity(n * n);
        for a in &tuples {
            for b in &tuples {
                t.push(lookup(componentwise2(a, b, &|f, x, y| f.star(op, x, y)))?);
            }
        }
        stars.push(t);
    }
    let mut unary = Vec::new();
    for op in 0..profile.unary_ops().len() {
        let mut t = Vec::with_capacity(n);
        for a in &tuples {
            t.push(lookup(a.iter().zip(factors).map(|(&x, f)| f.unary(op, x)).collect())?);
        }
        unary.push(t);
    }
    let elements = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&x, f)| f.element_name(x)).collect();
            tuple_name(&parts)
        })
        .collect();
    Structure::from_tables(profile, name, elements, zero, Tables { add, neg, stars, unary })
}
