//! Small standard structures, actions, crossed modules and cat1-objects.
//!
//! Vector-space carriers are indexed by coordinates in base `p`, first
//! basis vector fastest: in `F_p[x]/(x^k)` the element `c0 + c1 x + ...`
//! has index `c0 + c1 p + ...`.

use std::sync::Arc;

use crate::action::DerivedAction;
use crate::cat1::{xmod_to_cat1, Cat1Object};
use crate::error::{Error, Result};
use crate::hom::{enumerate_morphisms_with, SearchOptions, DEFAULT_MAX_SIZE};
use crate::limits::direct_product;
use crate::morphism::Morphism;
use crate::profile::VarietyProfile;
use crate::structure::Structure;
use crate::subobject::{ideals, Subobject};
use crate::xmod::{ideal_xmod, slice_initial, slice_terminal, CrossedModule};

fn out_of_range(msg: String) -> Error {
    Error::OutOfRange(msg)
}

/// `c1 b1 + c2 b2 + ...` with unit coefficients and zero terms omitted.
fn combo_name(coeffs: &[usize], basis: &[&str]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(basis)
        .filter(|(c, _)| **c != 0)
        .map(|(&c, &b)| match (c, b) {
            (c, "1") => c.to_string(),
            (1, b) => b.to_string(),
            (c, b) => format!("{c}{b}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Structure on `F_p^k` with the given primary products on coordinates.
fn vector_structure(
    profile: Arc<VarietyProfile>,
    name: String,
    p: usize,
    basis: &[&str],
    product: impl Fn(usize, &[usize], &[usize]) -> Vec<usize>,
) -> Result<Structure> {
    let k = basis.len();
    let n = p.pow(k as u32);
    let elements = (0..n).map(|x| combo_name(&digits(x, p, k), basis)).collect();
    let lin = |f: &dyn Fn(usize, usize) -> usize, x: usize, y: usize| {
        let (a, b) = (digits(x, p, k), digits(y, p, k));
        undigits(&a.iter().zip(&b).map(|(&u, &v)| f(u, v) % p).collect::<Vec<_>>(), p)
    };
    Structure::from_fn(
        profile,
        name,
        elements,
        0,
        |x, y| lin(&|u, v| u + v, x, y),
        |x| undigits(&digits(x, p, k).iter().map(|&u| (p - u) % p).collect::<Vec<_>>(), p),
        |op, x, y| {
            let c = product(op, &digits(x, p, k), &digits(y, p, k));
            undigits(&c.iter().map(|&u| u % p).collect::<Vec<_>>(), p)
        },
        |l, x| undigits(&digits(x, p, k).iter().map(|&u| (u * l) % p).collect::<Vec<_>>(), p),
    )
}

/// `Z_n` in the group profile, elements `0..n`.
pub fn make_cyclic(n: usize) -> Result<Arc<Structure>> {
    if n == 0 || n > DEFAULT_MAX_SIZE {
        return Err(out_of_range(format!("cyclic order {n} not in 1..={DEFAULT_MAX_SIZE}")));
    }
    Ok(Arc::new(Structure::from_fn(
        VarietyProfile::group(),
        format!("z{n}"),
        (0..n).map(|i| i.to_string()).collect(),
        0,
        |x, y| (x + y) % n,
        |x| (n - x) % n,
        |_, _, _| 0,
        |_, _| 0,
    )?))
}

/// The symmetric group on three letters, written additively, with elements
/// `e, r, r2, s, sr, sr2` (`s^i r^j` at index `3i + j`).
pub fn make_symmetric3() -> Arc<Structure> {
    let names = ["e", "r", "r2", "s", "sr", "sr2"];
    let mul = |x: usize, y: usize| {
        let (i, j, k, l) = (x / 3, x % 3, y / 3, y % 3);
        // r^j s^k = s^k r^{±j}
        let j2 = if k == 0 { j } else { (3 - j) % 3 };
        ((i + k) % 2) * 3 + (j2 + l) % 3
    };
    let inv = |x: usize| (0..6).find(|&y| mul(x, y) == 0).unwrap();
    Arc::new(
        Structure::from_fn(
            VarietyProfile::group(),
            "s3",
            names.iter().map(|s| s.to_string()).collect(),
            0,
            mul,
            inv,
            |_, _, _| 0,
            |_, _| 0,
        )
        .expect("s3 tables are well-formed"),
    )
}

fn field_profile(prefix: &str, p: usize) -> Result<Arc<VarietyProfile>> {
    VarietyProfile::builtin(&format!("{prefix}-f{p}"))
        .ok_or_else(|| out_of_range(format!("no {prefix} profile over F_{p}")))
}

/// `F_p[x]/(x^k)` as a commutative algebra.
pub fn make_truncated_poly(p: usize, k: usize) -> Result<Arc<Structure>> {
    let profile = field_profile("comm-algebra", p)?;
    if k == 0 || p.pow(k as u32) > DEFAULT_MAX_SIZE {
        return Err(out_of_range(format!(
            "F_{p}[x]/(x^{k}) exceeds {DEFAULT_MAX_SIZE} elements"
        )));
    }
    let basis: Vec<String> = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            i => format!("x^{i}"),
        })
        .collect();
    let basis: Vec<&str> = basis.iter().map(String::as_str).collect();
    let name = if k == 1 { format!("f{p}") } else { format!("f{p}x{k}") };
    Ok(Arc::new(vector_structure(profile, name, p, &basis, |_, a, b| {
        let mut c = vec![0; k];
        for i in 0..k {
            for j in 0..k - i {
                c[i + j] += a[i] * b[j];
            }
        }
        c
    })?))
}

/// The two-dimensional non-abelian Lie algebra `[e1, e2] = e1` over `F_p`.
pub fn make_lie2(p: usize) -> Result<Arc<Structure>> {
    if p == 2 {
        return Err(out_of_range("Lie algebras are built over odd primes only".into()));
    }
    let profile = field_profile("lie", p)?;
    Ok(Arc::new(vector_structure(
        profile,
        format!("lie2f{p}"),
        p,
        &["e1", "e2"],
        |op, a, b| {
            let (a, b) = if op == 0 { (a, b) } else { (b, a) };
            vec![a[0] * b[1] + (p - 1) * a[1] * b[0], 0]
        },
    )?))
}

/// The two-dimensional Leibniz algebra with `[a, a] = b` and every other
/// basis bracket zero.
pub fn make_leibniz2(p: usize) -> Result<Arc<Structure>> {
    let profile = field_profile("leibniz", p)?;
    Ok(Arc::new(vector_structure(
        profile,
        format!("leib2f{p}"),
        p,
        &["a", "b"],
        |op, x, y| {
            let (x, y) = if op == 0 { (x, y) } else { (y, x) };
            vec![0, x[0] * y[0]]
        },
    )?))
}

/// `F_2[x]/(x^2)` as a dialgebra with both products equal to the ring
/// product.
pub fn make_dialgebra(p: usize) -> Result<Arc<Structure>> {
    let profile = field_profile("dialgebra", p)?;
    Ok(Arc::new(vector_structure(
        profile,
        format!("dialg{p}"),
        p,
        &["1", "x"],
        |_, a, b| vec![a[0] * b[0], a[0] * b[1] + a[1] * b[0]],
    )?))
}

/// Every standard structure, in a fixed order.
pub fn structures() -> Vec<Arc<Structure>> {
    let mut out = Vec::new();
    for n in [1, 2, 3, 4, 6] {
        out.push(make_cyclic(n).unwrap());
    }
    out.push(make_symmetric3());
    for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        out.push(make_truncated_poly(p, k).unwrap());
    }
    out.push(make_lie2(3).unwrap());
    out.push(make_leibniz2(2).unwrap());
    out.push(make_leibniz2(3).unwrap());
    out.push(make_dialgebra(2).unwrap());
    out
}

/// `Z_m → Z_n`, `x ↦ k x mod n`.
pub fn cyclic_map(m: usize, n: usize, k: usize) -> Result<Morphism> {
    let (a, b) = (make_cyclic(m)?, make_cyclic(n)?);
    Morphism::from_fn(format!("z{m}_z{n}_{k}"), &a, &b, |x| (k * x) % n)
}

/// `Z_2` acting on `Z_3` by inversion.
pub fn inversion_action() -> DerivedAction {
    let (z2, z3) = (make_cyclic(2).unwrap(), make_cyclic(3).unwrap());
    DerivedAction::from_fn(
        "inv",
        &z2,
        &z3,
        |b, a| if b == 0 { a } else { (3 - a) % 3 },
        |_, _, _| 0,
    )
    .expect("inversion tables are well-formed")
}

/// The ideal `(x)` of `F_p[x]/(x^2)` or of the dialgebra.
fn x_ideal(s: &Arc<Structure>, name: &str) -> Subobject {
    let x = s.index_of("x").expect("carrier contains x");
    Subobject::generated(s, [x], name).expect("(x) is closed")
}

fn span(s: &Arc<Structure>, gen: &str, name: &str) -> Subobject {
    let g = s.index_of(gen).expect("generator exists");
    Subobject::generated(s, [g], name).expect("span is closed")
}

/// A split extension `0 → A → E → B → 0` with its section.
#[derive(Debug, Clone)]
pub struct SplitExtension {
    pub name: String,
    pub projection: Morphism,
    pub kernel: Subobject,
    pub section: Morphism,
}

/// `S3 → Z2`, `F2[x]/(x^2) → F2` and `Z2 × Z2 → Z2`.
pub fn split_extensions() -> Vec<SplitExtension> {
    let mut out = Vec::new();
    let s3 = make_symmetric3();
    let z2 = make_cyclic(2).unwrap();
    let p = Morphism::from_fn("sign", &s3, &z2, |x| x / 3).unwrap();
    let sec = Morphism::from_fn("refl", &z2, &s3, |b| 3 * b).unwrap();
    out.push(SplitExtension {
        name: "s3".into(),
        kernel: crate::subobject::kernel(&p).unwrap(),
        projection: p,
        section: sec,
    });
    let (e, f2) = (make_truncated_poly(2, 2).unwrap(), make_truncated_poly(2, 1).unwrap());
    let p = Morphism::from_fn("const", &e, &f2, |x| x % 2).unwrap();
    let sec = Morphism::from_fn("lift", &f2, &e, |c| c).unwrap();
    out.push(SplitExtension {
        name: "f2x2".into(),
        kernel: crate::subobject::kernel(&p).unwrap(),
        projection: p,
        section: sec,
    });
    let v = direct_product(&z2, &z2).unwrap();
    let sec = Morphism::from_fn("diag", &z2, &v.apex, |b| {
        v.apex.index_of(&format!("({b},{b})")).unwrap()
    })
    .unwrap();
    out.push(SplitExtension {
        name: "klein".into(),
        kernel: crate::subobject::kernel(&v.right).unwrap(),
        projection: v.right.clone(),
        section: sec,
    });
    out
}

/// `(Z2, Z4, 1 ↦ 2)` with the trivial action.
pub fn z2z4() -> CrossedModule {
    let d = cyclic_map(2, 4, 2).unwrap().renamed("d_z2z4");
    let (z2, z4) = (d.dom().clone(), d.cod().clone());
    CrossedModule::new("z2z4", d, DerivedAction::trivial(&z4, &z2).unwrap()).unwrap()
}

/// The fixed suite of crossed modules:
///
/// 1. `(Z2, Z4, 1 ↦ 2)`, trivial action
/// 2. `(x) ⊂ F2[x]/(x^2)`
/// 3. `(x) ⊂ F3[x]/(x^2)`
/// 4. `span{e1} ⊂` the Lie algebra over `F3`
/// 5. `span{b} ⊂` the Leibniz algebra over `F2`
/// 6. `span{b} ⊂` the Leibniz algebra over `F3`
/// 7. `(x) ⊂` the dialgebra
/// 8. `A3 ◁ S3`
/// 9. the terminal crossed `Z4`-module
/// 10. the initial crossed `Z4`-module
pub fn make_standard_xmods() -> Vec<CrossedModule> {
    let f2 = make_truncated_poly(2, 2).unwrap();
    let f3 = make_truncated_poly(3, 2).unwrap();
    let lie = make_lie2(3).unwrap();
    let l2 = make_leibniz2(2).unwrap();
    let l3 = make_leibniz2(3).unwrap();
    let di = make_dialgebra(2).unwrap();
    let s3 = make_symmetric3();
    let z4 = make_cyclic(4).unwrap();
    let a3 = span(&s3, "r", "a3");
    let ideal = |sub: Subobject, name: &str| ideal_xmod(&sub, name).unwrap();
    vec![
        z2z4(),
        ideal(x_ideal(&f2, "xf2"), "xf2x2"),
        ideal(x_ideal(&f3, "xf3"), "xf3x2"),
        ideal(span(&lie, "e1", "e1lie"), "e1lie2f3"),
        ideal(span(&l2, "b", "bleib2"), "bleib2f2"),
        ideal(span(&l3, "b", "bleib3"), "bleib2f3"),
        ideal(x_ideal(&di, "xdialg"), "xdialg2"),
        ideal(a3, "a3s3"),
        slice_terminal(&z4).unwrap(),
        slice_initial(&z4).unwrap(),
    ]
}

/// The images of [`make_standard_xmods`] under [`xmod_to_cat1`].
pub fn make_standard_cat1s() -> Vec<Cat1Object> {
    make_standard_xmods()
        .iter()
        .map(|x| xmod_to_cat1(x).expect("standard crossed modules are valid"))
        .collect()
}

fn is_central(s: &Structure, x: usize) -> bool {
    (0..s.len()).all(|y| s.add(x, y) == s.add(y, x))
}

/// Crossed modules over `x` used as test objects for universal properties:
///
/// * the terminal and initial crossed `x`-modules
/// * the inclusion of every proper non-zero ideal
/// * every ideal `N` with `N` abelian and `N * N = 0`, with zero boundary
/// * group profile only: `Z3` with zero boundary, acted on through each
///   non-zero morphism `x → Z2` by inversion
/// * group profile only: `Z2` with trivial action and each boundary whose
///   image is central
pub fn crossed_modules_over(x: &Arc<Structure>) -> Result<Vec<CrossedModule>> {
    let mut out = vec![slice_terminal(x)?, slice_initial(x)?];
    let all = ideals(x);
    for (i, n) in all.iter().enumerate() {
        if n.len() > 1 && n.len() < x.len() {
            out.push(ideal_xmod(n, format!("incl{i}({})", x.name()))?);
        }
    }
    for (i, n) in all.iter().enumerate() {
        let ind = n.induced();
        let zero_products = (0..ind.star_count())
            .all(|op| (0..ind.len()).all(|a| (0..ind.len()).all(|b| ind.star(op, a, b) == ind.zero())));
        if n.len() > 1 && ind.is_abelian() && zero_products {
            let inc = ideal_xmod(n, "tmp")?;
            let d = Morphism::zero_map(ind, x)?.renamed(format!("zero{i}({})", x.name()));
            out.push(CrossedModule::new(
                format!("null{i}({})", x.name()),
                d,
                inc.action().clone(),
            )?);
        }
    }
    if x.profile().binary_ops().is_empty() && x.profile().unary_ops().is_empty() {
        let (z2, z3) = (make_cyclic(2)?.renamed("c2")?, make_cyclic(3)?.renamed("c3")?);
        let (z2, z3) = (Arc::new(z2), Arc::new(z3));
        let opts = SearchOptions::with_max_size(DEFAULT_MAX_SIZE);
        for (i, chi) in enumerate_morphisms_with(x, &z2, opts)?.iter().enumerate() {
            if chi.map().iter().all(|&v| v == 0) {
                continue;
            }
            let act = DerivedAction::from_fn(
                format!("tw{i}({})", x.name()),
                x,
                &z3,
                |g, a| if chi.apply(g) == 0 { a } else { (3 - a) % 3 },
                |_, _, _| 0,
            )?;
            let d = Morphism::zero_map(&z3, x)?.renamed(format!("zc3_{i}({})", x.name()));
            out.push(CrossedModule::new(format!("twist{i}({})", x.name()), d, act)?);
        }
        for (i, f) in enumerate_morphisms_with(&z2, x, opts)?.iter().enumerate() {
            if is_central(x, f.apply(1)) {
                let d = f.clone().renamed(format!("cd{i}({})", x.name()));
                let act = DerivedAction::trivial(x, &z2)?;
                out.push(CrossedModule::new(format!("cent{i}({})", x.name()), d, act)?);
            }
        }
    }
    Ok(out)
}

/// `(crossed module, φ)` pairs for the pullback square: for every standard
/// crossed module over `R`, the identity of `R` and every morphism into `R`
/// from a standard structure of the same profile with at most four elements.
pub fn square_cases() -> Vec<(CrossedModule, Morphism)> {
    let small: Vec<Arc<Structure>> = structures().into_iter().filter(|s| s.len() <= 4).collect();
    let mut out = Vec::new();
    for x in make_standard_xmods() {
        let r = x.c0().clone();
        out.push((x.clone(), Morphism::identity(&r)));
        for s in &small {
            if s.profile() != r.profile() || **s == *r {
                continue;
            }
            let homs = enumerate_morphisms_with(s, &r, SearchOptions::default()).unwrap();
            for (i, h) in homs.into_iter().enumerate() {
                out.push((x.clone(), h.renamed(format!("phi{i}_{}_{}", s.name(), r.name()))));
            }
        }
    }
    out
}
