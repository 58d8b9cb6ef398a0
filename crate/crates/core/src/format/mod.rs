//! The line-oriented text format.
//!
//! A document is a sequence of blocks, each opened by a keyword line and
//! closed by a line holding only `end`. `#` starts a comment. Blocks may
//! refer to objects defined by earlier blocks; names not found there are
//! handed to a [`Loader`]. The last block is the document's subject.
//!
//! ```text
//! structure z2
//! profile group
//! elements 0 1
//! zero 0
//! add
//! 0 1
//! 1 0
//! neg
//! 0 1
//! end
//!
//! morphism d : z2 -> z2
//! 0 0
//! end
//! ```
//!
//! Serialization emits the subject together with everything it refers to,
//! so written files are self-contained and parse without a loader.

mod read;
mod write;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub use read::parse_document;
pub use write::{to_text, write_bundle};

use crate::action::DerivedAction;
use crate::cat1::Cat1Object;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::profile::VarietyProfile;
use crate::structure::Structure;
use crate::xmod::{CrossedModule, XModMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Profile,
    Structure,
    Morphism,
    Action,
    XMod,
    XModMorphism,
    Cat1,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Profile,
        Kind::Structure,
        Kind::Morphism,
        Kind::Action,
        Kind::XMod,
        Kind::XModMorphism,
        Kind::Cat1,
    ];

    /// The keyword opening a block of this kind.
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Profile => "profile",
            Kind::Structure => "structure",
            Kind::Morphism => "morphism",
            Kind::Action => "action",
            Kind::XMod => "xmod",
            Kind::XModMorphism => "xmorphism",
            Kind::Cat1 => "cat1",
        }
    }

    /// File extension used when looking an object up by name.
    pub fn extension(self) -> &'static str {
        match self {
            Kind::Profile => "profile",
            Kind::Structure => "mci",
            Kind::Morphism => "mor",
            Kind::Action => "act",
            Kind::XMod => "xm",
            Kind::XModMorphism => "xmm",
            Kind::Cat1 => "cat1",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

/// A file stem for an object name: characters other than ASCII
/// alphanumerics, `-`, `_` and `.` become `_`, e.g. `term(z4)` ↦ `term_z4`.
pub fn file_stem(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    s.trim_end_matches('_').to_string()
}

/// One named object of a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Profile(Arc<VarietyProfile>),
    Structure(Arc<Structure>),
    Morphism(Morphism),
    Action(DerivedAction),
    XMod(CrossedModule),
    XModMorphism(String, XModMorphism),
    Cat1(Cat1Object),
}

impl Item {
    pub fn kind(&self) -> Kind {
        match self {
            Item::Profile(_) => Kind::Profile,
            Item::Structure(_) => Kind::Structure,
            Item::Morphism(_) => Kind::Morphism,
            Item::Action(_) => Kind::Action,
            Item::XMod(_) => Kind::XMod,
            Item::XModMorphism(..) => Kind::XModMorphism,
            Item::Cat1(_) => Kind::Cat1,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Item::Profile(p) => p.name(),
            Item::Structure(s) => s.name(),
            Item::Morphism(m) => m.name(),
            Item::Action(a) => a.name(),
            Item::XMod(x) => x.name(),
            Item::XModMorphism(n, _) => n,
            Item::Cat1(c) => c.name(),
        }
    }
}

/// The resolved blocks of one text, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    items: Vec<Item>,
}

impl Document {
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    /// The last block.
    pub fn subject(&self) -> Option<&Item> {
        self.items.last()
    }

    pub fn get(&self, kind: Kind, name: &str) -> Option<&Item> {
        self.items.iter().rev().find(|i| i.kind() == kind && i.name() == name)
    }

    fn push(&mut self, item: Item) {
        self.items.push(item);
    }
}

/// Supplies objects that a document refers to but does not define.
pub trait Loader {
    fn load(&mut self, kind: Kind, name: &str) -> Result<Option<Item>>;
}

/// Resolves nothing: documents must be self-contained.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoLoader;

impl Loader for NoLoader {
    fn load(&mut self, _: Kind, _: &str) -> Result<Option<Item>> {
        Ok(None)
    }
}

/// Looks up `<dir>/<name>.<ext>`, then `<dir>/<file_stem(name)>.<ext>`, and
/// takes the block of that name from the file.
#[derive(Debug)]
pub struct DirLoader {
    dir: PathBuf,
    loading: Vec<(Kind, String)>,
    cache: HashMap<(Kind, String), Item>,
}

impl DirLoader {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DirLoader {
            dir: dir.into(),
            loading: Vec::new(),
            cache: HashMap::new(),
        }
    }

    /// Loader for files next to `path`.
    pub fn beside(path: &Path) -> Self {
        Self::new(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }
}

impl Loader for DirLoader {
    fn load(&mut self, kind: Kind, name: &str) -> Result<Option<Item>> {
        let key = (kind, name.to_string());
        if let Some(item) = self.cache.get(&key) {
            return Ok(Some(item.clone()));
        }
        let candidates = [name.to_string(), file_stem(name)];
        let Some(file) = candidates
            .iter()
            .map(|stem| format!("{stem}.{}", kind.extension()))
            .find(|f| self.dir.join(f).is_file())
        else {
            return Ok(None);
        };
        let path = self.dir.join(&file);
        if self.loading.contains(&key) {
            return Err(Error::structural(format!("{file} refers to itself")));
        }
        let text = fs::read_to_string(&path).map_err(|e| Error::structural(format!("{file}: {e}")))?;
        self.loading.push(key.clone());
        let doc = parse_document(&text, self);
        self.loading.pop();
        let doc = doc.map_err(|e| Error::structural(format!("{file}: {e}")))?;
        let item = doc
            .get(kind, name)
            .cloned()
            .ok_or_else(|| Error::structural(format!("{file} does not define {} {name}", kind.keyword())))?;
        self.cache.insert(key, item.clone());
        Ok(Some(item))
    }
}

fn subject_of(text: &str, kind: Kind) -> Result<Item> {
    let doc = parse_document(text, &mut NoLoader)?;
    let item = doc.subject().cloned().expect("documents are non-empty");
    if item.kind() != kind {
        return Err(Error::structural(format!(
            "expected a {} as the last block, found {} {}",
            kind.keyword(),
            item.kind().keyword(),
            item.name()
        )));
    }
    Ok(item)
}

pub fn parse_profile_file(text: &str) -> Result<Arc<VarietyProfile>> {
    match subject_of(text, Kind::Profile)? {
        Item::Profile(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_structure_file(text: &str) -> Result<Arc<Structure>> {
    match subject_of(text, Kind::Structure)? {
        Item::Structure(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn parse_morphism_file(text: &str) -> Result<Morphism> {
    match subject_of(text, Kind::Morphism)? {
        Item::Morphism(m) => Ok(m),
        _ => unreachable!(),
    }
}

pub fn parse_action_file(text: &str) -> Result<DerivedAction> {
    match subject_of(text, Kind::Action)? {
        Item::Action(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn parse_xmod_file(text: &str) -> Result<CrossedModule> {
    match subject_of(text, Kind::XMod)? {
        Item::XMod(x) => Ok(x),
        _ => unreachable!(),
    }
}

pub fn parse_cat1_file(text: &str) -> Result<Cat1Object> {
    match subject_of(text, Kind::Cat1)? {
        Item::Cat1(c) => Ok(c),
        _ => unreachable!(),
    }
}
