use std::collections::HashMap;
use std::sync::Arc;

use super::{Document, Item, Kind, Loader};
use crate::action::DerivedAction;
use crate::cat1::Cat1Object;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::profile::{UnaryClass, VarietyProfile};
use crate::structure::{is_token, Structure};
use crate::xmod::{CrossedModule, XModMorphism};

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

fn err_at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tok_err(t: &Tok<'_>, message: impl Into<String>) -> Error {
    err_at(t.line, t.col, message)
}

fn line_err(l: &Line<'_>, message: impl Into<String>) -> Error {
    err_at(l.no, l.toks.first().map_or(1, |t| t.col), message)
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start: Option<usize> = None;
        let mut col = 0;
        let mut start_col = 0;
        for (b, c) in content.char_indices() {
            col += 1;
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push(Tok {
                        text: &content[s..b],
                        line: i + 1,
                        col: start_col,
                    });
                }
            } else if start.is_none() {
                start = Some(b);
                start_col = col;
            }
        }
        if let Some(s) = start {
            toks.push(Tok {
                text: &content[s..],
                line: i + 1,
                col: start_col,
            });
        }
        if !toks.is_empty() {
            out.push(Line { no: i + 1, toks });
        }
    }
    out
}

/// Parses and resolves every block of `text`.
pub fn parse_document(text: &str, loader: &mut dyn Loader) -> Result<Document> {
    let lines = lex(text);
    let mut doc = Document::default();
    let mut i = 0;
    while i < lines.len() {
        let head = &lines[i];
        let kw = head.toks[0];
        let kind = Kind::from_keyword(kw.text)
            .ok_or_else(|| tok_err(&kw, format!("expected a block keyword, found `{}`", kw.text)))?;
        let j = (i + 1..lines.len())
            .find(|&j| lines[j].toks.len() == 1 && lines[j].toks[0].text == "end")
            .ok_or_else(|| tok_err(&kw, format!("{} block is not closed by `end`", kind.keyword())))?;
        let block = Block {
            head,
            body: &lines[i + 1..j],
            end: lines[j].no,
        };
        let item = Reader {
            doc: &doc,
            loader: &mut *loader,
        }
        .read(kind, &block)?;
        if doc.items().iter().any(|d| d.kind() == kind && d.name() == item.name()) {
            return Err(line_err(
                head,
                format!("{} {} defined twice", kind.keyword(), item.name()),
            ));
        }
        doc.push(item);
        i = j + 1;
    }
    if doc.items().is_empty() {
        return Err(err_at(1, 1, "document has no blocks"));
    }
    Ok(doc)
}

struct Block<'l, 'a> {
    head: &'l Line<'a>,
    body: &'l [Line<'a>],
    end: usize,
}

impl Block<'_, '_> {
    /// Checks the head against a pattern where `None` marks a name slot and
    /// `Some(s)` a literal, returning the name tokens.
    fn head_names(&self, pattern: &[Option<&str>]) -> Result<Vec<Tok<'_>>> {
        let toks = &self.head.toks;
        let shape: Vec<String> = pattern
            .iter()
            .enumerate()
            .map(|(i, p)| match p {
                Some(s) => s.to_string(),
                None if i == 0 => unreachable!(),
                None => "<name>".to_string(),
            })
            .collect();
        let usage = format!("{} {}", toks[0].text, shape[1..].join(" "));
        if toks.len() != pattern.len() {
            return Err(line_err(self.head, format!("expected `{usage}`")));
        }
        let mut names = Vec::new();
        for (t, p) in toks.iter().zip(pattern).skip(1) {
            match p {
                Some(s) if t.text != *s => return Err(tok_err(t, format!("expected `{s}`, found `{}`", t.text))),
                Some(_) => {}
                None => {
                    if !is_token(t.text) {
                        return Err(tok_err(t, "invalid name"));
                    }
                    names.push(*t);
                }
            }
        }
        Ok(names)
    }
}

struct Reader<'d, 'l> {
    doc: &'d Document,
    loader: &'l mut dyn Loader,
}

/// Element lookup for table rows.
struct Carrier<'s> {
    what: String,
    index: HashMap<&'s str, usize>,
}

impl<'s> Carrier<'s> {
    fn of(s: &'s Structure) -> Self {
        Carrier {
            what: s.name().to_string(),
            index: s.elements().iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect(),
        }
    }

    fn from_names(what: &str, names: &'s [String]) -> Self {
        Carrier {
            what: what.to_string(),
            index: names.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect(),
        }
    }

    fn get(&self, t: &Tok<'_>) -> Result<usize> {
        self.index
            .get(t.text)
            .copied()
            .ok_or_else(|| tok_err(t, format!("`{}` is not an element of {}", t.text, self.what)))
    }
}

/// Reads `rows` lines of `width` entries each, starting at `body[k]`.
fn read_rows(
    block: &Block<'_, '_>,
    k: usize,
    label: &Tok<'_>,
    rows: usize,
    width: usize,
    carrier: &Carrier<'_>,
) -> Result<Vec<usize>> {
    let avail = block.body.len() - k;
    if avail < rows {
        return Err(err_at(
            block.end,
            1,
            format!("`{}` needs {rows} rows, found {avail}", label.text),
        ));
    }
    let mut out = Vec::with_capacity(rows * width);
    for line in &block.body[k..k + rows] {
        if line.toks.len() != width {
            return Err(line_err(
                line,
                format!("`{}` row has {} entries, expected {width}", label.text, line.toks.len()),
            ));
        }
        for t in &line.toks {
            out.push(carrier.get(t)?);
        }
    }
    Ok(out)
}

fn single_arg<'a>(line: &Line<'a>) -> Result<Tok<'a>> {
    if line.toks.len() != 2 {
        return Err(line_err(line, format!("expected `{} <name>`", line.toks[0].text)));
    }
    Ok(line.toks[1])
}

fn wrap(head: &Line<'_>) -> impl Fn(Error) -> Error {
    let (line, col) = (head.no, head.toks[0].col);
    move |e| match e {
        e @ Error::Parse { .. } => e,
        e => err_at(line, col, e.to_string()),
    }
}

impl Reader<'_, '_> {
    fn read(&mut self, kind: Kind, b: &Block<'_, '_>) -> Result<Item> {
        match kind {
            Kind::Profile => self.profile_block(b).map(Item::Profile),
            Kind::Structure => self.structure_block(b).map(Item::Structure),
            Kind::Morphism => self.morphism_block(b).map(Item::Morphism),
            Kind::Action => self.action_block(b).map(Item::Action),
            Kind::XMod => self.xmod_block(b).map(Item::XMod),
            Kind::XModMorphism => self.xmorphism_block(b),
            Kind::Cat1 => self.cat1_block(b).map(Item::Cat1),
        }
    }

    fn lookup(&mut self, kind: Kind, t: &Tok<'_>) -> Result<Item> {
        if let Some(item) = self.doc.get(kind, t.text) {
            return Ok(item.clone());
        }
        if kind == Kind::Profile {
            if let Some(p) = VarietyProfile::builtin(t.text) {
                return Ok(Item::Profile(p));
            }
        }
        match self.loader.load(kind, t.text) {
            Ok(Some(item)) => Ok(item),
            Ok(None) => Err(tok_err(t, format!("unknown {} `{}`", kind.keyword(), t.text))),
            Err(e) => Err(tok_err(t, e.to_string())),
        }
    }

    fn profile(&mut self, t: &Tok<'_>) -> Result<Arc<VarietyProfile>> {
        match self.lookup(Kind::Profile, t)? {
            Item::Profile(p) => Ok(p),
            _ => unreachable!(),
        }
    }

    fn structure(&mut self, t: &Tok<'_>) -> Result<Arc<Structure>> {
        match self.lookup(Kind::Structure, t)? {
            Item::Structure(s) => Ok(s),
            _ => unreachable!(),
        }
    }

    fn morphism(&mut self, t: &Tok<'_>) -> Result<Morphism> {
        match self.lookup(Kind::Morphism, t)? {
            Item::Morphism(m) => Ok(m),
            _ => unreachable!(),
        }
    }

    fn action(&mut self, t: &Tok<'_>) -> Result<DerivedAction> {
        match self.lookup(Kind::Action, t)? {
            Item::Action(a) => Ok(a),
            _ => unreachable!(),
        }
    }

    fn xmod(&mut self, t: &Tok<'_>) -> Result<CrossedModule> {
        match self.lookup(Kind::XMod, t)? {
            Item::XMod(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    fn profile_block(&mut self, b: &Block<'_, '_>) -> Result<Arc<VarietyProfile>> {
        let name = b.head_names(&[Some("profile"), None])?[0];
        if VarietyProfile::builtin(name.text).is_some() {
            return Err(tok_err(&name, format!("profile `{}` is built in", name.text)));
        }
        let mut binary: Vec<(&str, &str)> = Vec::new();
        let mut unary: Vec<(&str, UnaryClass)> = Vec::new();
        let mut ids: Vec<(&str, &str, &str)> = Vec::new();
        for line in b.body {
            let t = &line.toks;
            match t[0].text {
                "binary" if t.len() == 3 => binary.push((t[1].text, t[2].text)),
                "binary" => return Err(line_err(line, "expected `binary <op> <opposite>`")),
                "unary" if t.len() == 3 => {
                    let class = UnaryClass::from_keyword(t[2].text)
                        .ok_or_else(|| tok_err(&t[2], "expected `linear` or `multiplicative`"))?;
                    unary.push((t[1].text, class));
                }
                "unary" => return Err(line_err(line, "expected `unary <op> linear|multiplicative`")),
                "identity" if t.len() == 5 && t[3].text == "=" => ids.push((t[1].text, t[2].text, t[4].text)),
                "identity" => return Err(line_err(line, "expected `identity <label> <lhs> = <rhs>`")),
                other => return Err(line_err(line, format!("unexpected `{other}` in profile block"))),
            }
        }
        VarietyProfile::new(name.text, &binary, &unary, &ids)
            .map(Arc::new)
            .map_err(wrap(b.head))
    }

    fn structure_block(&mut self, b: &Block<'_, '_>) -> Result<Arc<Structure>> {
        let name = b.head_names(&[Some("structure"), None])?[0];
        let mut profile: Option<Arc<VarietyProfile>> = None;
        let mut elements: Option<Vec<String>> = None;
        let mut zero: Option<usize> = None;
        let mut add: Option<Vec<usize>> = None;
        let mut neg: Option<Vec<usize>> = None;
        let mut stars: Vec<Option<Vec<usize>>> = Vec::new();
        let mut unary: Vec<Option<Vec<usize>>> = Vec::new();
        let mut k = 0;
        while k < b.body.len() {
            let line = &b.body[k];
            let kw = line.toks[0];
            k += 1;
            let twice = || tok_err(&kw, format!("`{}` given twice", kw.text));
            match kw.text {
                "profile" => {
                    if profile.is_some() {
                        return Err(twice());
                    }
                    let p = self.profile(&single_arg(line)?)?;
                    stars = vec![None; p.primary_binary_count()];
                    unary = vec![None; p.unary_ops().len()];
                    profile = Some(p);
                }
                "elements" => {
                    if elements.is_some() {
                        return Err(twice());
                    }
                    if line.toks.len() < 2 {
                        return Err(line_err(line, "a carrier needs at least one element"));
                    }
                    let mut seen = HashMap::new();
                    for t in &line.toks[1..] {
                        if seen.insert(t.text, ()).is_some() {
                            return Err(tok_err(t, format!("duplicate element `{}`", t.text)));
                        }
                    }
                    elements = Some(line.toks[1..].iter().map(|t| t.text.to_string()).collect());
                }
                "zero" => {
                    if zero.is_some() {
                        return Err(twice());
                    }
                    let els = elements
                        .as_ref()
                        .ok_or_else(|| tok_err(&kw, "`zero` before `elements`"))?;
                    zero = Some(Carrier::from_names(name.text, els).get(&single_arg(line)?)?);
                }
                op => {
                    let (Some(p), Some(els)) = (&profile, &elements) else {
                        return Err(tok_err(&kw, format!("table `{op}` before `profile` and `elements`")));
                    };
                    if line.toks.len() != 1 {
                        return Err(line_err(line, format!("unexpected `{op}` line")));
                    }
                    let n = els.len();
                    let carrier = Carrier::from_names(name.text, els);
                    let (slot, rows) = if op == "add" {
                        (&mut add, n)
                    } else if op == "neg" {
                        (&mut neg, 1)
                    } else if let Some(i) = p.binary_index(op) {
                        if !p.is_primary(i) {
                            return Err(tok_err(
                                &kw,
                                format!("`{op}` is an opposite operation; its table is derived"),
                            ));
                        }
                        (&mut stars[i], n)
                    } else if let Some(i) = p.unary_index(op) {
                        (&mut unary[i], 1)
                    } else {
                        return Err(tok_err(&kw, format!("unknown keyword or operation `{op}`")));
                    };
                    if slot.is_some() {
                        return Err(twice());
                    }
                    *slot = Some(read_rows(b, k, &kw, rows, n, &carrier)?);
                    k += rows;
                }
            }
        }
        let missing = |what: &str| err_at(b.end, 1, format!("structure {} has no `{what}`", name.text));
        let profile = profile.ok_or_else(|| missing("profile"))?;
        let elements = elements.ok_or_else(|| missing("elements"))?;
        let zero = zero.ok_or_else(|| missing("zero"))?;
        let add = add.ok_or_else(|| missing("add"))?;
        let neg = neg.ok_or_else(|| missing("neg"))?;
        let stars = stars
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| missing(&profile.binary_ops()[i].name)))
            .collect::<Result<Vec<_>>>()?;
        let unary = unary
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| missing(&profile.unary_ops()[i].name)))
            .collect::<Result<Vec<_>>>()?;
        Structure::new(profile, name.text, elements, zero, add, neg, stars, unary)
            .map(Arc::new)
            .map_err(wrap(b.head))
    }

    fn morphism_block(&mut self, b: &Block<'_, '_>) -> Result<Morphism> {
        let names = b.head_names(&[Some("morphism"), None, Some(":"), None, Some("->"), None])?;
        let dom = self.structure(&names[1])?;
        let cod = self.structure(&names[2])?;
        if b.body.len() != 1 {
            return Err(err_at(
                b.head.no,
                1,
                format!("morphism {} needs exactly one image row", names[0].text),
            ));
        }
        let map = read_rows(b, 0, &names[0], 1, dom.len(), &Carrier::of(&cod))?;
        Morphism::new(names[0].text, dom, cod, map).map_err(wrap(b.head))
    }

    fn action_block(&mut self, b: &Block<'_, '_>) -> Result<DerivedAction> {
        let names = b.head_names(&[Some("action"), None, Some(":"), None, Some("on"), None])?;
        let actor = self.structure(&names[1])?;
        let acted = self.structure(&names[2])?;
        actor.same_profile(&acted).map_err(wrap(b.head))?;
        let p = actor.profile().clone();
        let (nb, na) = (actor.len(), acted.len());
        let carrier = Carrier::of(&acted);
        let mut dot: Option<Vec<usize>> = None;
        let mut stars: Vec<Option<Vec<usize>>> = vec![None; p.binary_ops().len()];
        let mut k = 0;
        while k < b.body.len() {
            let line = &b.body[k];
            let kw = line.toks[0];
            k += 1;
            if line.toks.len() != 1 {
                return Err(line_err(line, format!("expected a table name, found `{}`", kw.text)));
            }
            let slot = if kw.text == "dot" {
                &mut dot
            } else if let Some(i) = p.binary_index(kw.text) {
                &mut stars[i]
            } else {
                return Err(tok_err(&kw, format!("unknown table `{}`", kw.text)));
            };
            if slot.is_some() {
                return Err(tok_err(&kw, format!("`{}` given twice", kw.text)));
            }
            *slot = Some(read_rows(b, k, &kw, nb, na, &carrier)?);
            k += nb;
        }
        let missing = |what: &str| err_at(b.end, 1, format!("action {} has no `{what}` table", names[0].text));
        let dot = dot.ok_or_else(|| missing("dot"))?;
        let stars = stars
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| missing(&p.binary_ops()[i].name)))
            .collect::<Result<Vec<_>>>()?;
        DerivedAction::new(names[0].text, actor, acted, dot, stars).map_err(wrap(b.head))
    }

    /// Reads `key <name>` lines, each key exactly once.
    fn fields<'a>(b: &Block<'_, 'a>, keys: &[&str]) -> Result<Vec<Tok<'a>>> {
        let mut found: Vec<Option<Tok<'a>>> = vec![None; keys.len()];
        for line in b.body {
            let kw = line.toks[0];
            let i = keys
                .iter()
                .position(|k| *k == kw.text)
                .ok_or_else(|| tok_err(&kw, format!("expected one of {}", keys.join(", "))))?;
            if found[i].is_some() {
                return Err(tok_err(&kw, format!("`{}` given twice", kw.text)));
            }
            found[i] = Some(single_arg(line)?);
        }
        found
            .into_iter()
            .zip(keys)
            .map(|(t, k)| t.ok_or_else(|| err_at(b.end, 1, format!("missing `{k}`"))))
            .collect()
    }

    fn xmod_block(&mut self, b: &Block<'_, '_>) -> Result<CrossedModule> {
        let name = b.head_names(&[Some("xmod"), None])?[0];
        let f = Self::fields(b, &["boundary", "action"])?;
        let boundary = self.morphism(&f[0])?;
        let action = self.action(&f[1])?;
        CrossedModule::new(name.text, boundary, action).map_err(wrap(b.head))
    }

    fn xmorphism_block(&mut self, b: &Block<'_, '_>) -> Result<Item> {
        let names = b.head_names(&[Some("xmorphism"), None, Some(":"), None, Some("->"), None])?;
        let src = self.xmod(&names[1])?;
        let dst = self.xmod(&names[2])?;
        let f = Self::fields(b, &["top", "bottom"])?;
        let mu1 = self.morphism(&f[0])?;
        let mu0 = self.morphism(&f[1])?;
        let m = XModMorphism::new(src, dst, mu1, mu0).map_err(wrap(b.head))?;
        Ok(Item::XModMorphism(names[0].text.to_string(), m))
    }

    fn cat1_block(&mut self, b: &Block<'_, '_>) -> Result<Cat1Object> {
        let name = b.head_names(&[Some("cat1"), None])?[0];
        let f = Self::fields(b, &["embed", "source", "target"])?;
        let embed = self.morphism(&f[0])?;
        let src = self.morphism(&f[1])?;
        let tgt = self.morphism(&f[2])?;
        Cat1Object::new(name.text, embed, src, tgt).map_err(wrap(b.head))
    }
}
