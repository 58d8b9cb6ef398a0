//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails
//! (the witness is printed), 2 on unreadable input or structural errors.
//! Report lines start with `PASS`, `FAIL`, `ERROR` or `INFO`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::action::{check_derived_action, semidirect_product, DerivedAction};
use crate::cat1::{cat1_to_xmod, xmod_to_cat1, Cat1Object};
use crate::error::{Error, Result};
use crate::format::{file_stem, parse_document, write_bundle, DirLoader, Item, Kind};
use crate::hom::{DEFAULT_MAX_SIZE, DEFAULT_UNIVERSAL_MAX_SIZE};
use crate::limits::{direct_product, fiber_product};
use crate::morphism::Morphism;
use crate::pullback::{pullback_cat1, pullback_xmod, square_commutes};
use crate::report::{CheckKind, Report};
use crate::structure::Structure;
use crate::subobject::equalizer;
use crate::xmod::{
    slice_initial, slice_product, slice_pullback, slice_terminal, verify_universal_cone, xmod_equalizer, CrossedModule,
    UniversalProblem, XModMorphism,
};
use crate::zoo;

#[derive(Debug, Parser)]
#[command(
    name = "mci",
    version,
    about = "Check and construct finite groups with operations, crossed modules and cat1-objects"
)]
pub struct Cli {
    /// Largest carrier searched exhaustively (default 12, or 8 for universal properties).
    #[arg(long, global = true)]
    pub max_size: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Product,
    Pullback,
    Equalizer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UniversalKind {
    Terminal,
    Initial,
    Product,
    Pullback,
    Equalizer,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the last object of a file against the laws of its kind.
    Verify { file: PathBuf },
    /// Check the derived-action conditions of an action.
    CheckAction { file: PathBuf },
    /// Build the semidirect product of an action.
    Semidirect {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Verify a crossed module.
    CheckXmod { file: PathBuf },
    /// Verify a cat1-object.
    CheckCat1 { file: PathBuf },
    /// Convert a crossed module to a cat1-object.
    ToCat1 {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Convert a cat1-object to a crossed module.
    ToXmod {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Product of two structures, pullback or equalizer of two morphisms.
    /// With --slice: of crossed modules over a common base and their morphisms.
    Limit {
        kind: LimitKind,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        slice: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Pull a crossed module back along a morphism into its base.
    PullbackXmod {
        #[arg(long)]
        xmod: PathBuf,
        #[arg(long)]
        along: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Pull a cat1-object back along a morphism into its base.
    PullbackCat1 {
        #[arg(long)]
        cat1: PathBuf,
        #[arg(long)]
        along: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Count mediating morphisms for a slice limit. Terminal and initial take
    /// a base structure, product two crossed modules, pullback and
    /// equalizer two crossed module morphisms.
    CheckUniversal {
        kind: UniversalKind,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        /// Test objects; defaults to the standard testers over the base.
        #[arg(long)]
        tester: Vec<PathBuf>,
    },
    /// Compare pulling back before and after passing to cat1-objects.
    SquareCheck {
        #[arg(long)]
        xmod: PathBuf,
        #[arg(long)]
        along: PathBuf,
    },
    /// Write the standard structures, crossed modules and cat1-objects as files.
    ExportZoo { dir: PathBuf },
}

/// `path` as given when relative, its file name otherwise.
fn shown(path: &Path) -> String {
    if path.is_absolute() {
        path.file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
    } else {
        path.display().to_string()
    }
}

fn load(path: &Path) -> Result<Item> {
    let text = fs::read_to_string(path).map_err(|e| Error::structural(format!("{}: {e}", shown(path))))?;
    let doc = parse_document(&text, &mut DirLoader::beside(path)).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::structural(format!("{}:{line}:{column}: {message}", shown(path)))
        }
        e => Error::structural(format!("{}: {e}", shown(path))),
    })?;
    Ok(doc.subject().cloned().expect("documents are non-empty"))
}

fn wrong_kind(path: &Path, want: Kind, got: &Item) -> Error {
    Error::structural(format!(
        "{}: expected a {}, found {} {}",
        shown(path),
        want.keyword(),
        got.kind().keyword(),
        got.name()
    ))
}

macro_rules! loader {
    ($name:ident, $variant:ident, $kind:expr, $ty:ty) => {
        fn $name(path: &Path) -> Result<$ty> {
            match load(path)? {
                Item::$variant(x) => Ok(x),
                other => Err(wrong_kind(path, $kind, &other)),
            }
        }
    };
}

loader!(load_structure, Structure, Kind::Structure, Arc<Structure>);
loader!(load_morphism, Morphism, Kind::Morphism, Morphism);
loader!(load_action, Action, Kind::Action, DerivedAction);
loader!(load_xmod, XMod, Kind::XMod, CrossedModule);
loader!(load_cat1, Cat1, Kind::Cat1, Cat1Object);

fn load_xmorphism(path: &Path) -> Result<XModMorphism> {
    match load(path)? {
        Item::XModMorphism(_, m) => Ok(m),
        other => Err(wrong_kind(path, Kind::XModMorphism, &other)),
    }
}

struct Session<'w, W: Write> {
    out: &'w mut W,
    max_size: Option<usize>,
    failed: bool,
}

impl<W: Write> Session<'_, W> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn report(&mut self, r: &Report) {
        let _ = write!(self.out, "{}", r.render());
        if !r.passed() {
            self.failed = true;
        }
    }

    fn construction_size(&self) -> usize {
        self.max_size.unwrap_or(DEFAULT_MAX_SIZE)
    }

    fn universal_size(&self) -> usize {
        self.max_size.unwrap_or(DEFAULT_UNIVERSAL_MAX_SIZE)
    }

    fn write(&mut self, item: Item, o: &Option<PathBuf>) -> Result<()> {
        let Some(path) = o else { return Ok(()) };
        let text = write_bundle(&item)?;
        fs::write(path, text).map_err(|e| Error::structural(format!("{}: {e}", shown(path))))?;
        self.line(format!(
            "INFO wrote {} {} to {}",
            item.kind().keyword(),
            item.name(),
            shown(path)
        ));
        Ok(())
    }

    fn structure_report(&mut self, s: &Structure) {
        self.report(&s.verify());
    }

    fn morphism_report(&mut self, m: &Morphism) {
        let mut r = Report::new(m.name());
        r.absorb("dom.", m.dom().verify(), CheckKind::Precondition);
        r.absorb("cod.", m.cod().verify(), CheckKind::Precondition);
        r.record("morphism", m.check());
        self.report(&r);
    }

    fn verify_item(&mut self, item: &Item) {
        match item {
            Item::Profile(p) => self.line(format!("INFO profile {} is well-formed", p.name())),
            Item::Structure(s) => self.structure_report(s),
            Item::Morphism(m) => self.morphism_report(m),
            Item::Action(a) => self.report(&check_derived_action(a)),
            Item::XMod(x) => self.report(&x.verify()),
            Item::XModMorphism(_, m) => self.report(&m.verify()),
            Item::Cat1(c) => self.report(&c.verify()),
        }
    }

    fn run(&mut self, cmd: Command) -> Result<()> {
        match cmd {
            Command::Verify { file } => {
                let item = load(&file)?;
                self.verify_item(&item);
            }
            Command::CheckAction { file } => {
                let a = load_action(&file)?;
                self.report(&check_derived_action(&a));
            }
            Command::Semidirect { file, o } => {
                let a = load_action(&file)?;
                crate::hom::guard(
                    "semidirect product",
                    a.actor().len() * a.acted().len(),
                    self.construction_size(),
                )?;
                let sd = semidirect_product(&a)?;
                self.structure_report(&sd.product);
                self.write(Item::Structure(sd.product.clone()), &o)?;
            }
            Command::CheckXmod { file } => {
                let x = load_xmod(&file)?;
                self.report(&x.verify());
            }
            Command::CheckCat1 { file } => {
                let c = load_cat1(&file)?;
                self.report(&c.verify());
            }
            Command::ToCat1 { file, o } => {
                let x = load_xmod(&file)?;
                x.verify().into_result()?;
                crate::hom::guard("cat1 carrier", x.c1().len() * x.c0().len(), self.construction_size())?;
                let c = xmod_to_cat1(&x)?;
                self.report(&c.verify());
                self.write(Item::Cat1(c), &o)?;
            }
            Command::ToXmod { file, o } => {
                let c = load_cat1(&file)?;
                c.verify().into_result()?;
                let x = cat1_to_xmod(&c)?;
                self.report(&x.verify());
                self.write(Item::XMod(x), &o)?;
            }
            Command::Limit { kind, a, b, slice, o } => self.limit(kind, &a, &b, slice, &o)?,
            Command::PullbackXmod { xmod, along, o } => {
                let x = load_xmod(&xmod)?;
                let phi = load_morphism(&along)?;
                let pb = pullback_xmod(&x, &phi)?;
                self.report(&pb.xmod.verify());
                self.report(&pb.morphism.verify());
                self.write(Item::XMod(pb.xmod), &o)?;
            }
            Command::PullbackCat1 { cat1, along, o } => {
                let c = load_cat1(&cat1)?;
                let phi = load_morphism(&along)?;
                let q = phi.dom().len();
                crate::hom::guard(
                    "pullback carrier bound",
                    q * c.big().len() * q,
                    self.construction_size().pow(3),
                )?;
                let pb = pullback_cat1(&c, &phi)?;
                self.report(&pb.cat1.verify());
                self.report(&pb.morphism.verify());
                self.write(Item::Cat1(pb.cat1), &o)?;
            }
            Command::CheckUniversal { kind, inputs, tester } => self.universal(kind, &inputs, &tester)?,
            Command::SquareCheck { xmod, along } => {
                let x = load_xmod(&xmod)?;
                let phi = load_morphism(&along)?;
                let sq = square_commutes(&x, &phi, self.construction_size())?;
                self.report(&sq.report);
                if let Some(iso) = &sq.iso {
                    let (a, b) = (iso.src.big(), iso.dst.big());
                    self.line(format!("INFO iso {} -> {}", iso.src.name(), iso.dst.name()));
                    for x in 0..a.len() {
                        self.line(format!(
                            "INFO   {} -> {}",
                            a.element_name(x),
                            b.element_name(iso.phi.apply(x))
                        ));
                    }
                }
            }
            Command::ExportZoo { dir } => self.export_zoo(&dir)?,
        }
        Ok(())
    }

    fn limit(&mut self, kind: LimitKind, a: &Path, b: &Path, slice: bool, o: &Option<PathBuf>) -> Result<()> {
        let max = self.construction_size();
        if !slice {
            let apex = match kind {
                LimitKind::Product => {
                    let (p, r) = (load_structure(a)?, load_structure(b)?);
                    crate::hom::guard("product carrier", p.len() * r.len(), max)?;
                    direct_product(&p, &r)?.apex
                }
                LimitKind::Pullback => {
                    let (f, g) = (load_morphism(a)?, load_morphism(b)?);
                    let apex = fiber_product(&f, &g)?.apex;
                    crate::hom::guard("pullback carrier", apex.len(), max)?;
                    apex
                }
                LimitKind::Equalizer => {
                    let (f, g) = (load_morphism(a)?, load_morphism(b)?);
                    equalizer(&f, &g)?.induced().clone()
                }
            };
            self.structure_report(&apex);
            return self.write(Item::Structure(apex), o);
        }
        let apex = match kind {
            LimitKind::Product => {
                let (x, y) = (load_xmod(a)?, load_xmod(b)?);
                crate::hom::guard("product top carrier", x.c1().len() * y.c1().len(), max)?;
                slice_product(&x, &y)?.apex
            }
            LimitKind::Pullback => {
                let (f, g) = (load_xmorphism(a)?, load_xmorphism(b)?);
                let apex = slice_pullback(&f, &g)?.apex;
                crate::hom::guard("pullback top carrier", apex.c1().len(), max)?;
                apex
            }
            LimitKind::Equalizer => {
                let (f, g) = (load_xmorphism(a)?, load_xmorphism(b)?);
                xmod_equalizer(&f, &g)?.apex
            }
        };
        self.report(&apex.verify());
        self.write(Item::XMod(apex), o)
    }

    fn universal(&mut self, kind: UniversalKind, inputs: &[PathBuf], testers: &[PathBuf]) -> Result<()> {
        let arity = match kind {
            UniversalKind::Terminal | UniversalKind::Initial => 1,
            _ => 2,
        };
        if inputs.len() != arity {
            return Err(Error::structural(
                format!("{kind:?} takes {arity} input file(s)").to_lowercase(),
            ));
        }
        let max = self.universal_size();
        let load_testers = |base: &Arc<Structure>| -> Result<Vec<CrossedModule>> {
            if testers.is_empty() {
                let all = zoo::crossed_modules_over(base)?;
                Ok(all
                    .into_iter()
                    .filter(|t| t.c1().len() <= max && t.c0().len() <= max)
                    .collect())
            } else {
                testers.iter().map(|p| load_xmod(p)).collect()
            }
        };
        let check = match kind {
            UniversalKind::Terminal | UniversalKind::Initial => {
                let x = load_structure(&inputs[0])?;
                let ts = load_testers(&x)?;
                if kind == UniversalKind::Terminal {
                    verify_universal_cone(UniversalProblem::Terminal(&slice_terminal(&x)?), &ts, max)?
                } else {
                    verify_universal_cone(UniversalProblem::Initial(&slice_initial(&x)?), &ts, max)?
                }
            }
            UniversalKind::Product => {
                let (x, y) = (load_xmod(&inputs[0])?, load_xmod(&inputs[1])?);
                let cone = slice_product(&x, &y)?;
                let ts = load_testers(x.c0())?;
                verify_universal_cone(UniversalProblem::Product(&cone), &ts, max)?
            }
            UniversalKind::Pullback => {
                let (f, g) = (load_xmorphism(&inputs[0])?, load_xmorphism(&inputs[1])?);
                let cone = slice_pullback(&f, &g)?;
                let ts = load_testers(f.src.c0())?;
                verify_universal_cone(
                    UniversalProblem::Pullback {
                        cone: &cone,
                        f: &f,
                        g: &g,
                    },
                    &ts,
                    max,
                )?
            }
            UniversalKind::Equalizer => {
                let (f, g) = (load_xmorphism(&inputs[0])?, load_xmorphism(&inputs[1])?);
                let eq = xmod_equalizer(&f, &g)?;
                let ts = load_testers(f.src.c0())?;
                verify_universal_cone(UniversalProblem::Equalizer { eq: &eq, f: &f, g: &g }, &ts, max)?
            }
        };
        self.report(&check.report);
        self.line(format!("INFO {} cones checked", check.counts.len()));
        Ok(())
    }

    fn export_zoo(&mut self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::structural(format!("{}: {e}", shown(dir))))?;
        let mut items: Vec<Item> = zoo::structures().into_iter().map(Item::Structure).collect();
        items.push(Item::Morphism(zoo::cyclic_map(2, 4, 2)?.renamed("phi_z2_z4")));
        items.push(Item::Morphism(zoo::cyclic_map(4, 2, 1)?.renamed("mod2")));
        items.push(Item::Action(zoo::inversion_action()));
        items.extend(zoo::make_standard_xmods().into_iter().map(Item::XMod));
        items.extend(zoo::make_standard_cat1s().into_iter().map(Item::Cat1));
        for item in items {
            let file = format!("{}.{}", file_stem(item.name()), item.kind().extension());
            let text = write_bundle(&item)?;
            fs::write(dir.join(&file), text).map_err(|e| Error::structural(format!("{file}: {e}")))?;
            self.line(format!("INFO wrote {file}"));
        }
        Ok(())
    }
}

/// Runs one command line (`args[0]` is the program name) and returns the
/// exit code. Everything is reported to `out`.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            for l in text.lines().filter(|l| !l.trim().is_empty()) {
                let _ = writeln!(out, "{}{l}", if code == 2 { "ERROR " } else { "" });
            }
            return code;
        }
    };
    let mut s = Session {
        out,
        max_size: cli.max_size,
        failed: false,
    };
    match s.run(cli.command) {
        Ok(()) if s.failed => 1,
        Ok(()) => 0,
        Err(Error::Violated(v)) => {
            s.line(format!("FAIL {v}"));
            1
        }
        Err(e) => {
            s.line(format!("ERROR {e}"));
            2
        }
    }
}
