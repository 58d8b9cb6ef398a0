//! Signatures of groups with operations.
//!
//! A [`VarietyProfile`] names the binary operations besides `+` (each paired
//! with its opposite, `x *° y = y * x`), the unary operations besides `-`
//! (each tagged linear or multiplicative over the stars), and any extra
//! equational laws that a structure must satisfy.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// How a unary operation interacts with the binary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryClass {
    /// `w(x * y) = w(x) * y` (scalar-like).
    Linear,
    /// `w(x * y) = w(x) * w(y)`.
    Multiplicative,
}

impl UnaryClass {
    pub fn keyword(self) -> &'static str {
        match self {
            UnaryClass::Linear => "linear",
            UnaryClass::Multiplicative => "multiplicative",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "linear" => Some(UnaryClass::Linear),
            "multiplicative" => Some(UnaryClass::Multiplicative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryOp {
    pub name: String,
    /// Index of the opposite operation in the profile's full binary list.
    pub opposite: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryOp {
    pub name: String,
    pub class: UnaryClass,
}

/// A term over the signature. Variables are indices into the owning
/// identity's variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Zero,
    Var(usize),
    Add(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Binary(usize, Box<Term>, Box<Term>),
    Unary(usize, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub label: String,
    pub vars: Vec<String>,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyProfile {
    name: String,
    builtin: bool,
    binary: Vec<BinaryOp>,
    primary: usize,
    unary: Vec<UnaryOp>,
    identities: Vec<Identity>,
}

const RESERVED: &[&str] = &["add", "neg", "zero"];

fn valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarietyProfile {
    /// Builds a profile from primary binary declarations `(op, opposite)`,
    /// unary declarations and identities written as `(label, lhs, rhs)` in
    /// prefix term syntax. A binary op that is its own opposite is commutative.
    pub fn new(
        name: &str,
        binary: &[(&str, &str)],
        unary: &[(&str, UnaryClass)],
        identities: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let mut ops: Vec<BinaryOp> = Vec::new();
        let mut seen: Vec<String> = Vec::new();
        let claim = |s: &str, seen: &mut Vec<String>| -> Result<()> {
            if !valid_symbol(s) || RESERVED.contains(&s) {
                return Err(Error::structural(format!("invalid operation symbol `{s}`")));
            }
            if seen.iter().any(|t| t == s) {
                return Err(Error::structural(format!("operation `{s}` declared twice")));
            }
            seen.push(s.to_string());
            Ok(())
        };
        for (op, _) in binary {
            claim(op, &mut seen)?;
            ops.push(BinaryOp {
                name: op.to_string(),
                opposite: usize::MAX,
            });
        }
        let primary = ops.len();
        for (i, (op, opp)) in binary.iter().enumerate() {
            if op == opp {
                ops[i].opposite = i;
            } else {
                claim(opp, &mut seen)?;
                let j = ops.len();
                ops.push(BinaryOp {
                    name: opp.to_string(),
                    opposite: i,
                });
                ops[i].opposite = j;
            }
        }
        let mut unary_ops = Vec::new();
        for (op, class) in unary {
            claim(op, &mut seen)?;
            unary_ops.push(UnaryOp {
                name: op.to_string(),
                class: *class,
            });
        }
        let mut profile = VarietyProfile {
            name: name.to_string(),
            builtin: false,
            binary: ops,
            primary,
            unary: unary_ops,
            identities: Vec::new(),
        };
        for (label, lhs, rhs) in identities {
            let id = profile.parse_identity(label, lhs, rhs)?;
            profile.identities.push(id);
        }
        Ok(profile)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_builtin(&self) -> bool {
        self.builtin
    }

    /// All binary operations: primaries first, then generated opposites.
    pub fn binary_ops(&self) -> &[BinaryOp] {
        &self.binary
    }

    pub fn primary_binary_count(&self) -> usize {
        self.primary
    }

    pub fn is_primary(&self, op: usize) -> bool {
        op < self.primary
    }

    pub fn opposite(&self, op: usize) -> usize {
        self.binary[op].opposite
    }

    pub fn unary_ops(&self) -> &[UnaryOp] {
        &self.unary
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn binary_index(&self, name: &str) -> Option<usize> {
        self.binary.iter().position(|b| b.name == name)
    }

    pub fn unary_index(&self, name: &str) -> Option<usize> {
        self.unary.iter().position(|u| u.name == name)
    }

    /// Parses one identity. Identifiers that are not operation names are
    /// variables, numbered in order of first occurrence.
    pub fn parse_identity(&self, label: &str, lhs: &str, rhs: &str) -> Result<Identity> {
        let mut vars = Vec::new();
        let l = TermParser::new(self, lhs, &mut vars)
            .parse_all()
            .map_err(|(col, msg)| Error::structural(format!("identity {label} lhs col {col}: {msg}")))?;
        let r = TermParser::new(self, rhs, &mut vars)
            .parse_all()
            .map_err(|(col, msg)| Error::structural(format!("identity {label} rhs col {col}: {msg}")))?;
        Ok(Identity {
            label: label.to_string(),
            vars,
            lhs: l,
            rhs: r,
        })
    }

    pub fn render_term(&self, t: &Term, vars: &[String]) -> String {
        let mut s = String::new();
        self.write_term(&mut s, t, vars);
        s
    }

    fn write_term(&self, out: &mut String, t: &Term, vars: &[String]) {
        match t {
            Term::Zero => out.push('0'),
            Term::Var(i) => out.push_str(&vars[*i]),
            Term::Add(a, b) => self.write_call(out, "add", &[a, b], vars),
            Term::Neg(a) => self.write_call(out, "neg", &[a], vars),
            Term::Binary(op, a, b) => {
                let name = self.binary[*op].name.clone();
                self.write_call(out, &name, &[a, b], vars)
            }
            Term::Unary(op, a) => {
                let name = self.unary[*op].name.clone();
                self.write_call(out, &name, &[a], vars)
            }
        }
    }

    fn write_call(&self, out: &mut String, name: &str, args: &[&Term], vars: &[String]) {
        out.push_str(name);
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_term(out, a, vars);
        }
        out.push(')');
    }

    /// Names of the built-in profiles, in a fixed order.
    pub const BUILTIN_NAMES: &'static [&'static str] = &[
        "group",
        "comm-algebra-f2",
        "comm-algebra-f3",
        "comm-algebra-f5",
        "lie-f3",
        "lie-f5",
        "leibniz-f2",
        "leibniz-f3",
        "dialgebra-f2",
    ];

    pub fn builtin(name: &str) -> Option<Arc<VarietyProfile>> {
        let p = match name {
            "group" => VarietyProfile::new("group", &[], &[], &[]),
            "comm-algebra-f2" => comm_algebra(2),
            "comm-algebra-f3" => comm_algebra(3),
            "comm-algebra-f5" => comm_algebra(5),
            "lie-f3" => lie(3),
            "lie-f5" => lie(5),
            "leibniz-f2" => leibniz(2),
            "leibniz-f3" => leibniz(3),
            "dialgebra-f2" => dialgebra(2),
            _ => return None,
        };
        let mut p = p.expect("built-in profiles are well-formed");
        p.builtin = true;
        Some(Arc::new(p))
    }

    pub fn group() -> Arc<VarietyProfile> {
        Self::builtin("group").unwrap()
    }
}

impl fmt::Display for VarietyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn scalar_names(p: u32) -> Vec<String> {
    (0..p).map(|l| format!("s{l}")).collect()
}

/// `x + x + ... + x` (lambda copies), or `0`.
fn repeated_sum(lambda: u32) -> String {
    match lambda {
        0 => "0".to_string(),
        1 => "x".to_string(),
        n => format!("add({},x)", repeated_sum(n - 1)),
    }
}

fn with_scalars(name: &str, binary: &[(&str, &str)], p: u32, laws: &[(&str, &str, &str)]) -> Result<VarietyProfile> {
    let names = scalar_names(p);
    let unary: Vec<(&str, UnaryClass)> = names.iter().map(|n| (n.as_str(), UnaryClass::Linear)).collect();
    let sums: Vec<(String, String, String)> = (0..p)
        .map(|l| (format!("scalar.s{l}"), format!("s{l}(x)"), repeated_sum(l)))
        .collect();
    let mut ids: Vec<(&str, &str, &str)> = vec![("add.comm", "add(x,y)", "add(y,x)")];
    ids.extend_from_slice(laws);
    ids.extend(sums.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())));
    VarietyProfile::new(name, binary, &unary, &ids)
}

fn comm_algebra(p: u32) -> Result<VarietyProfile> {
    with_scalars(
        &format!("comm-algebra-f{p}"),
        &[("mul", "mul")],
        p,
        &[
            ("mul.assoc", "mul(mul(x,y),z)", "mul(x,mul(y,z))"),
            ("mul.comm", "mul(x,y)", "mul(y,x)"),
        ],
    )
}

fn lie(p: u32) -> Result<VarietyProfile> {
    with_scalars(
        &format!("lie-f{p}"),
        &[("br", "br_op")],
        p,
        &[
            ("br.antisymmetric", "br(x,y)", "neg(br(y,x))"),
            ("br.alternating", "br(x,x)", "0"),
            ("br.jacobi", "add(add(br(x,br(y,z)),br(y,br(z,x))),br(z,br(x,y)))", "0"),
        ],
    )
}

fn leibniz(p: u32) -> Result<VarietyProfile> {
    with_scalars(
        &format!("leibniz-f{p}"),
        &[("br", "br_op")],
        p,
        &[("br.leibniz", "br(x,br(y,z))", "add(br(br(x,y),z),neg(br(br(x,z),y)))")],
    )
}

fn dialgebra(p: u32) -> Result<VarietyProfile> {
    with_scalars(
        &format!("dialgebra-f{p}"),
        &[("lt", "lt_op"), ("rt", "rt_op")],
        p,
        &[
            ("dialg.1", "lt(lt(x,y),z)", "lt(x,lt(y,z))"),
            ("dialg.2", "lt(x,lt(y,z))", "lt(x,rt(y,z))"),
            ("dialg.3", "lt(rt(x,y),z)", "rt(x,lt(y,z))"),
            ("dialg.4", "rt(lt(x,y),z)", "rt(x,rt(y,z))"),
            ("dialg.5", "rt(rt(x,y),z)", "rt(x,rt(y,z))"),
        ],
    )
}

struct TermParser<'a> {
    profile: &'a VarietyProfile,
    src: &'a [u8],
    pos: usize,
    vars: &'a mut Vec<String>,
}

type ParseResult<T> = std::result::Result<T, (usize, String)>;

impl<'a> TermParser<'a> {
    fn new(profile: &'a VarietyProfile, src: &'a str, vars: &'a mut Vec<String>) -> Self {
        TermParser {
            profile,
            src: src.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> ParseResult<T> {
        Err((self.pos + 1, msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn parse_all(mut self) -> ParseResult<Term> {
        let t = self.term(0)?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input after term");
        }
        Ok(t)
    }

    fn expect(&mut self, c: u8) -> ParseResult<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn term(&mut self, depth: usize) -> ParseResult<Term> {
        if depth > 64 {
            return self.err("term nested too deeply");
        }
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                return Ok(Term::Zero);
            }
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {}
            Some(_) => return self.err("expected a term"),
            None => return self.err("unexpected end of term"),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        // the slice is ASCII by construction
        let ident = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap_or_default()
            .to_string();
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b'(') {
            if ident == "add"
                || ident == "neg"
                || self.profile.binary_index(&ident).is_some()
                || self.profile.unary_index(&ident).is_some()
            {
                return Err((start + 1, format!("operation `{ident}` used without arguments")));
            }
            let idx = match self.vars.iter().position(|v| *v == ident) {
                Some(i) => i,
                None => {
                    self.vars.push(ident);
                    self.vars.len() - 1
                }
            };
            return Ok(Term::Var(idx));
        }
        self.pos += 1;
        let arity = if ident == "add" || self.profile.binary_index(&ident).is_some() {
            2
        } else if ident == "neg" || self.profile.unary_index(&ident).is_some() {
            1
        } else {
            return Err((start + 1, format!("unknown operation `{ident}`")));
        };
        let a = self.term(depth + 1)?;
        let t = if arity == 2 {
            self.expect(b',')?;
            let b = self.term(depth + 1)?;
            if ident == "add" {
                Term::Add(Box::new(a), Box::new(b))
            } else {
                let op = self.profile.binary_index(&ident).unwrap();
                Term::Binary(op, Box::new(a), Box::new(b))
            }
        } else if ident == "neg" {
            Term::Neg(Box::new(a))
        } else {
            Term::Unary(self.profile.unary_index(&ident).unwrap(), Box::new(a))
        };
        self.expect(b')')?;
        Ok(t)
    }
}
