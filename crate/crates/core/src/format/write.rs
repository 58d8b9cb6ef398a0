use std::fmt::Write as _;

use super::Item;
use crate::action::DerivedAction;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::profile::VarietyProfile;
use crate::structure::Structure;

fn rows(out: &mut String, s: &Structure, table: &[usize], width: usize) {
    for row in table.chunks(width) {
        let names: Vec<&str> = row.iter().map(|&x| s.element_name(x)).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
}

fn write_profile(out: &mut String, p: &VarietyProfile) {
    let _ = writeln!(out, "profile {}", p.name());
    let ops = p.binary_ops();
    for op in &ops[..p.primary_binary_count()] {
        let _ = writeln!(out, "binary {} {}", op.name, ops[op.opposite].name);
    }
    for op in p.unary_ops() {
        let _ = writeln!(out, "unary {} {}", op.name, op.class.keyword());
    }
    for id in p.identities() {
        let _ = writeln!(
            out,
            "identity {} {} = {}",
            id.label,
            p.render_term(&id.lhs, &id.vars),
            p.render_term(&id.rhs, &id.vars)
        );
    }
    out.push_str("end\n");
}

fn write_structure(out: &mut String, s: &Structure) {
    let p = s.profile();
    let n = s.len();
    let t = s.tables();
    let _ = writeln!(out, "structure {}", s.name());
    let _ = writeln!(out, "profile {}", p.name());
    let _ = writeln!(out, "elements {}", s.elements().join(" "));
    let _ = writeln!(out, "zero {}", s.element_name(s.zero()));
    out.push_str("add\n");
    rows(out, s, &t.add, n);
    out.push_str("neg\n");
    rows(out, s, &t.neg, n);
    for (i, op) in p.binary_ops()[..p.primary_binary_count()].iter().enumerate() {
        let _ = writeln!(out, "{}", op.name);
        rows(out, s, &t.stars[i], n);
    }
    for (i, op) in p.unary_ops().iter().enumerate() {
        let _ = writeln!(out, "{}", op.name);
        rows(out, s, &t.unary[i], n);
    }
    out.push_str("end\n");
}

fn write_morphism(out: &mut String, m: &Morphism) {
    let _ = writeln!(out, "morphism {} : {} -> {}", m.name(), m.dom().name(), m.cod().name());
    rows(out, m.cod(), m.map(), m.dom().len());
    out.push_str("end\n");
}

fn write_action(out: &mut String, a: &DerivedAction) {
    let acted = a.acted();
    let _ = writeln!(out, "action {} : {} on {}", a.name(), a.actor().name(), acted.name());
    out.push_str("dot\n");
    rows(out, acted, a.dot_table(), acted.len());
    for (op, t) in a.actor().profile().binary_ops().iter().zip(a.star_tables()) {
        let _ = writeln!(out, "{}", op.name);
        rows(out, acted, t, acted.len());
    }
    out.push_str("end\n");
}

/// The text of one block, without the blocks it depends on.
pub fn to_text(item: &Item) -> String {
    let mut out = String::new();
    match item {
        Item::Profile(p) => write_profile(&mut out, p),
        Item::Structure(s) => write_structure(&mut out, s),
        Item::Morphism(m) => write_morphism(&mut out, m),
        Item::Action(a) => write_action(&mut out, a),
        Item::XMod(x) => {
            let _ = writeln!(out, "xmod {}", x.name());
            let _ = writeln!(out, "boundary {}", x.boundary().name());
            let _ = writeln!(out, "action {}", x.action().name());
            out.push_str("end\n");
        }
        Item::XModMorphism(name, m) => {
            let _ = writeln!(out, "xmorphism {name} : {} -> {}", m.src.name(), m.dst.name());
            let _ = writeln!(out, "top {}", m.mu1.name());
            let _ = writeln!(out, "bottom {}", m.mu0.name());
            out.push_str("end\n");
        }
        Item::Cat1(c) => {
            let _ = writeln!(out, "cat1 {}", c.name());
            let _ = writeln!(out, "embed {}", c.embed().name());
            let _ = writeln!(out, "source {}", c.src().name());
            let _ = writeln!(out, "target {}", c.tgt().name());
            out.push_str("end\n");
        }
    }
    out
}

struct Bundle {
    items: Vec<Item>,
}

impl Bundle {
    fn add(&mut self, item: Item) -> Result<()> {
        if let Some(old) = self
            .items
            .iter()
            .find(|i| i.kind() == item.kind() && i.name() == item.name())
        {
            if *old != item {
                return Err(Error::structural(format!(
                    "two different objects named {} {}",
                    item.kind().keyword(),
                    item.name()
                )));
            }
            return Ok(());
        }
        self.items.push(item);
        Ok(())
    }

    fn structure(&mut self, s: &std::sync::Arc<Structure>) -> Result<()> {
        if !s.profile().is_builtin() {
            self.add(Item::Profile(s.profile().clone()))?;
        }
        self.add(Item::Structure(s.clone()))
    }

    fn morphism(&mut self, m: &Morphism) -> Result<()> {
        self.structure(m.dom())?;
        self.structure(m.cod())?;
        self.add(Item::Morphism(m.clone()))
    }

    fn deep(&mut self, item: &Item) -> Result<()> {
        match item {
            Item::Profile(_) => self.add(item.clone()),
            Item::Structure(s) => self.structure(s),
            Item::Morphism(m) => self.morphism(m),
            Item::Action(a) => {
                self.structure(a.actor())?;
                self.structure(a.acted())?;
                self.add(item.clone())
            }
            Item::XMod(x) => {
                self.morphism(x.boundary())?;
                self.deep(&Item::Action(x.action().clone()))?;
                self.add(item.clone())
            }
            Item::XModMorphism(_, m) => {
                self.deep(&Item::XMod(m.src.clone()))?;
                self.deep(&Item::XMod(m.dst.clone()))?;
                self.morphism(&m.mu1)?;
                self.morphism(&m.mu0)?;
                self.add(item.clone())
            }
            Item::Cat1(c) => {
                self.morphism(c.embed())?;
                self.morphism(c.src())?;
                self.morphism(c.tgt())?;
                self.add(item.clone())
            }
        }
    }
}

/// The canonical self-contained text of `item`: every block it refers to,
/// dependencies first, then `item` itself. Fails if two distinct objects
/// of one kind share a name.
pub fn write_bundle(item: &Item) -> Result<String> {
    let mut b = Bundle { items: Vec::new() };
    b.deep(item)?;
    let blocks: Vec<String> = b.items.iter().map(to_text).collect();
    Ok(blocks.join("\n"))
}
