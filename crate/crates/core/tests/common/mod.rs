//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own checkers; tables are read and laws evaluated directly.
#![allow(dead_code)]

use std::sync::Arc;

use mci::profile::Term;
use mci::report::Violation;
use mci::structure::Tables;
use mci::{Morphism, Structure, UnaryClass};

/// Every map `a → b` that preserves zero, addition, every star and every
/// unary operation, found by scanning all `|b|^|a|` maps.
pub fn brute_homs(a: &Structure, b: &Structure) -> Vec<Vec<usize>> {
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if preserves(a, b, &map) {
            out.push(map.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

pub fn preserves(a: &Structure, b: &Structure, f: &[usize]) -> bool {
    let (ta, tb) = (a.tables(), b.tables());
    let n = a.len();
    let m = b.len();
    if f[a.zero()] != b.zero() {
        return false;
    }
    for x in 0..n {
        if f[ta.neg[x]] != tb.neg[f[x]] {
            return false;
        }
        for (u, t) in ta.unary.iter().enumerate() {
            if f[t[x]] != tb.unary[u][f[x]] {
                return false;
            }
        }
        for y in 0..n {
            if f[ta.add[x * n + y]] != tb.add[f[x] * m + f[y]] {
                return false;
            }
            for (op, t) in ta.stars.iter().enumerate() {
                if f[t[x * n + y]] != tb.stars[op][f[x] * m + f[y]] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_group(s: &Structure) -> bool {
    let t = s.tables();
    let n = s.len();
    let add = |x: usize, y: usize| t.add[x * n + y];
    let z = s.zero();
    (0..n).all(|x| {
        add(z, x) == x
            && add(x, z) == x
            && add(t.neg[x], x) == z
            && add(x, t.neg[x]) == z
            && (0..n).all(|y| (0..n).all(|w| add(add(x, y), w) == add(x, add(y, w))))
    })
}

pub fn order(s: &Structure, x: usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != s.zero() {
        y = s.add(y, x);
        k += 1;
    }
    k
}

/// Sorted multiset of element orders.
pub fn order_profile(s: &Structure) -> Vec<usize> {
    let mut v: Vec<usize> = (0..s.len()).map(|x| order(s, x)).collect();
    v.sort();
    v
}

pub fn eval(s: &Structure, t: &Term, env: &[usize]) -> usize {
    let tb = s.tables();
    let n = s.len();
    match t {
        Term::Zero => s.zero(),
        Term::Var(i) => env[*i],
        Term::Add(a, b) => tb.add[eval(s, a, env) * n + eval(s, b, env)],
        Term::Neg(a) => tb.neg[eval(s, a, env)],
        Term::Binary(op, a, b) => tb.stars[*op][eval(s, a, env) * n + eval(s, b, env)],
        Term::Unary(op, a) => tb.unary[*op][eval(s, a, env)],
    }
}

fn op_index(s: &Structure, name: &str) -> usize {
    s.profile().binary_index(name).expect("binary op")
}

fn unary_index(s: &Structure, name: &str) -> usize {
    s.profile().unary_index(name).expect("unary op")
}

/// Splits `law[a,b]` into `("law", ["a", "b"])`.
fn parse_law(law: &str) -> (&str, Vec<&str>) {
    match law.find('[') {
        Some(i) => (&law[..i], law[i + 1..law.len() - 1].split(',').collect()),
        None => (law, Vec::new()),
    }
}

/// Re-evaluates a structure-law violation from its witness and says
/// whether the law really fails there.
pub fn witness_is_genuine(s: &Structure, v: &Violation) -> bool {
    let t: &Tables = s.tables();
    let n = s.len();
    let add = |x: usize, y: usize| t.add[x * n + y];
    let star = |op: usize, x: usize, y: usize| t.stars[op][x * n + y];
    let var = |k: &str| v.get(k).expect("witness binds the variable");
    let z = s.zero();
    let (name, args) = parse_law(&v.law);
    match name {
        "group.assoc" => {
            let (x, y, w) = (var("x"), var("y"), var("z"));
            add(add(x, y), w) != add(x, add(y, w))
        }
        "group.left_identity" => add(z, var("x")) != var("x"),
        "group.right_identity" => add(var("x"), z) != var("x"),
        "group.left_inverse" => add(t.neg[var("x")], var("x")) != z,
        "group.right_inverse" => add(var("x"), t.neg[var("x")]) != z,
        "opposite" => {
            let op = op_index(s, args[0]);
            let opp = s.profile().opposite(op);
            star(op, var("x"), var("y")) != star(opp, var("y"), var("x"))
        }
        "distributive" => {
            let op = op_index(s, args[0]);
            let (x, y, w) = (var("x"), var("y"), var("z"));
            star(op, x, add(y, w)) != add(star(op, x, y), star(op, x, w))
        }
        "central" => {
            let op = op_index(s, args[0]);
            let p = star(op, var("y"), var("z"));
            add(var("x"), p) != add(p, var("x"))
        }
        "unary.additive" => {
            let u = &t.unary[unary_index(s, args[0])];
            let (x, y) = (var("x"), var("y"));
            u[add(x, y)] != add(u[x], u[y])
        }
        "unary.linear" | "unary.multiplicative" => {
            let ui = unary_index(s, args[0]);
            let u = &t.unary[ui];
            let op = op_index(s, args[1]);
            let (x, y) = (var("x"), var("y"));
            let rhs = match s.profile().unary_ops()[ui].class {
                UnaryClass::Linear => star(op, u[x], y),
                UnaryClass::Multiplicative => star(op, u[x], u[y]),
            };
            u[star(op, x, y)] != rhs
        }
        "identity" => {
            let id = s
                .profile()
                .identities()
                .iter()
                .find(|i| i.label == args[0])
                .expect("identity exists");
            let env: Vec<usize> = id.vars.iter().map(|k| var(k)).collect();
            eval(s, &id.lhs, &env) != eval(s, &id.rhs, &env)
        }
        other => panic!("unknown law {other}"),
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Add,
    Neg,
    Star(usize),
    Unary(usize),
}

fn slot(t: &mut Tables, which: Slot) -> &mut Vec<usize> {
    match which {
        Slot::Add => &mut t.add,
        Slot::Neg => &mut t.neg,
        Slot::Star(op) => &mut t.stars[op],
        Slot::Unary(u) => &mut t.unary[u],
    }
}

/// Every structure built from `s` by changing one table entry to another
/// carrier element: add, neg, primary stars (opposites follow by
/// transposition) and unary tables.
pub fn single_entry_perturbations(s: &Structure) -> Vec<Structure> {
    let n = s.len();
    let base = s.tables().clone();
    let p = s.profile();
    let rebuild = |t: Tables| -> Structure {
        let prim: Vec<Vec<usize>> = t.stars[..p.primary_binary_count()].to_vec();
        Structure::new(
            p.clone(),
            s.name(),
            s.elements().to_vec(),
            s.zero(),
            t.add,
            t.neg,
            prim,
            t.unary,
        )
        .unwrap()
    };
    let mut slots = vec![Slot::Add, Slot::Neg];
    slots.extend((0..p.primary_binary_count()).map(Slot::Star));
    slots.extend((0..p.unary_ops().len()).map(Slot::Unary));
    let mut out = Vec::new();
    for which in slots {
        let len = slot(&mut base.clone(), which).len();
        for i in 0..len {
            for v in 0..n {
                let mut t = base.clone();
                let cell = &mut slot(&mut t, which)[i];
                if *cell == v {
                    continue;
                }
                *cell = v;
                out.push(rebuild(t));
            }
        }
    }
    out
}

/// Brute-force structural isomorphism test by scanning all bijections.
pub fn brute_isomorphic(a: &Structure, b: &Structure) -> bool {
    if a.len() != b.len() {
        return false;
    }
    brute_homs(a, b).iter().any(|f| {
        let mut seen = vec![false; b.len()];
        f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })
}

pub fn map_of(m: &Morphism) -> Vec<usize> {
    m.map().to_vec()
}

pub fn arc(s: Structure) -> Arc<Structure> {
    Arc::new(s)
}

/// One line of the golden command script.
pub struct ScriptLine {
    pub expected: i32,
    pub args: Vec<String>,
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

pub fn read_script() -> Vec<ScriptLine> {
    let text = std::fs::read_to_string(golden_dir().join("commands.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let expected = it.next().unwrap().parse().unwrap();
            ScriptLine {
                expected,
                args: it.map(String::from).collect(),
            }
        })
        .collect()
}

/// A scratch copy of the golden directory with an empty `out/`.
pub fn scratch_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
        }
    }
    std::fs::create_dir(dir.path().join("out")).unwrap();
    dir
}

/// Runs the binary in `dir`, returning the exit code and stdout.
pub fn run_bin(dir: &std::path::Path, args: &[String]) -> (i32, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_mci"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

/// Runs every script line in a fresh scratch copy. Returns the transcript,
/// the exit-code mismatches and the scratch directory.
pub fn run_script() -> (String, Vec<String>, tempfile::TempDir) {
    let dir = scratch_copy();
    let mut transcript = String::new();
    let mut mismatches = Vec::new();
    for line in read_script() {
        let (code, out) = run_bin(dir.path(), &line.args);
        transcript.push_str(&format!("$ {}\n{out}[exit {code}]\n", line.args.join(" ")));
        if code != line.expected {
            mismatches.push(format!(
                "{}: expected {}, got {code}\n{out}",
                line.args.join(" "),
                line.expected
            ));
        }
    }
    (transcript, mismatches, dir)
}

/// The check command that re-verifies a construction output, by extension.
pub fn checker_for(path: &std::path::Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("xm") => "check-xmod",
        Some("cat1") => "check-cat1",
        Some("act") => "check-action",
        _ => "verify",
    }
}

/// Re-verifies every file under `out/`; returns the failures.
pub fn reverify_outputs(dir: &std::path::Path) -> (usize, Vec<String>) {
    let mut files: Vec<_> = std::fs::read_dir(dir.join("out"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let mut bad = Vec::new();
    for f in &files {
        let rel = format!("out/{}", f.file_name().unwrap().to_str().unwrap());
        let (code, out) = run_bin(dir, &[checker_for(f).to_string(), rel.clone()]);
        if code != 0 {
            bad.push(format!("{rel}: exit {code}\n{out}"));
        }
    }
    (files.len(), bad)
}
