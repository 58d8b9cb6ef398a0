//! Morphism search by backtracking over generator images.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::structure::Structure;
use crate::subobject::closure;

/// Default carrier bound for constructions and morphism searches.
pub const DEFAULT_MAX_SIZE: usize = 12;
/// Default carrier bound for universal-property enumeration.
pub const DEFAULT_UNIVERSAL_MAX_SIZE: usize = 8;

/// Fails with [`Error::SizeGuard`] when `size` exceeds `limit`.
pub fn guard(what: impl Into<String>, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeGuard {
            what: what.into(),
            size,
            limit,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest domain carrier the search accepts.
    pub max_size: usize,
    pub injective: bool,
    /// Injective with equal carrier sizes.
    pub bijective: bool,
    /// Stop after this many results.
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_size: DEFAULT_MAX_SIZE,
            injective: false,
            bijective: false,
            limit: None,
        }
    }
}

impl SearchOptions {
    pub fn with_max_size(max_size: usize) -> Self {
        SearchOptions {
            max_size,
            ..Default::default()
        }
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self.injective = true;
        self
    }

    pub fn first(mut self) -> Self {
        self.limit = Some(1);
        self
    }
}

/// A minimal-by-construction generating list: each element of the carrier,
/// in order, is taken when it is not generated by the ones already taken.
pub fn generating_set(s: &Structure) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = closure(s, []);
    for x in 0..s.len() {
        if !span.contains(&x) {
            gens.push(x);
            span = closure(s, gens.iter().copied());
        }
    }
    gens
}

struct Search<'a> {
    dom: &'a Structure,
    cod: &'a Structure,
    allowed: &'a dyn Fn(usize, usize) -> bool,
    opts: SearchOptions,
    gens: Vec<usize>,
    dom_order: Vec<usize>,
    cod_order: Vec<usize>,
    img: Vec<Option<usize>>,
    used: Vec<usize>,
    known: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.opts.limit.is_some_and(|l| self.found.len() >= l)
    }

    /// Assigns `x ↦ y`; returns false on conflict.
    fn assign(&mut self, x: usize, y: usize, pending: &mut Vec<usize>) -> bool {
        match self.img[x] {
            Some(v) => v == y,
            None => {
                if !(self.allowed)(x, y) || (self.opts.injective && self.used[y] > 0) {
                    return false;
                }
                self.img[x] = Some(y);
                self.used[y] += 1;
                self.known.push(x);
                pending.push(x);
                true
            }
        }
    }

    /// Extends the partial map by closure from the newly assigned elements.
    fn propagate(&mut self, mut pending: Vec<usize>) -> bool {
        let (d, c) = (self.dom, self.cod);
        while let Some(x) = pending.pop() {
            let fx = self.img[x].unwrap();
            if !self.assign(d.neg(x), c.neg(fx), &mut pending) {
                return false;
            }
            for op in 0..d.unary_count() {
                if !self.assign(d.unary(op, x), c.unary(op, fx), &mut pending) {
                    return false;
                }
            }
            let mut i = 0;
            while i < self.known.len() {
                let y = self.known[i];
                i += 1;
                let fy = self.img[y].unwrap();
                if !self.assign(d.add(x, y), c.add(fx, fy), &mut pending)
                    || !self.assign(d.add(y, x), c.add(fy, fx), &mut pending)
                {
                    return false;
                }
                for op in 0..d.star_count() {
                    if !self.assign(d.star(op, x, y), c.star(op, fx, fy), &mut pending)
                        || !self.assign(d.star(op, y, x), c.star(op, fy, fx), &mut pending)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.known.len() > mark {
            let x = self.known.pop().unwrap();
            let y = self.img[x].take().unwrap();
            self.used[y] -= 1;
        }
    }

    fn order_ok(&self, x: usize, y: usize) -> bool {
        let (ox, oy) = (self.dom_order[x], self.cod_order[y]);
        if self.opts.bijective {
            ox == oy
        } else {
            ox % oy == 0
        }
    }

    fn run(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        if depth == self.gens.len() {
            if self.known.len() == self.dom.len() {
                self.found.push(self.img.iter().map(|v| v.unwrap()).collect());
            }
            return;
        }
        let g = self.gens[depth];
        if let Some(y) = self.img[g] {
            // already forced by earlier generators
            if self.order_ok(g, y) {
                self.run(depth + 1);
            }
            return;
        }
        for y in 0..self.cod.len() {
            if !self.order_ok(g, y) {
                continue;
            }
            let mark = self.known.len();
            let mut pending = Vec::new();
            if self.assign(g, y, &mut pending) && self.propagate(pending) {
                self.run(depth + 1);
            }
            self.undo(mark);
            if self.done() {
                return;
            }
        }
    }
}

/// Every morphism `dom → cod` whose map satisfies `allowed(x, f(x))` for
/// all `x`, sorted by map.
pub fn search_morphisms(
    dom: &Arc<Structure>,
    cod: &Arc<Structure>,
    opts: SearchOptions,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Result<Vec<Morphism>> {
    dom.same_profile(cod)?;
    guard(
        format!("morphism search domain {}", dom.name()),
        dom.len(),
        opts.max_size,
    )?;
    if opts.bijective && dom.len() != cod.len() {
        return Ok(Vec::new());
    }
    if opts.injective && dom.len() > cod.len() {
        return Ok(Vec::new());
    }
    let mut s = Search {
        dom,
        cod,
        allowed,
        opts,
        gens: generating_set(dom),
        dom_order: (0..dom.len()).map(|x| dom.order_of(x)).collect(),
        cod_order: (0..cod.len()).map(|x| cod.order_of(x)).collect(),
        img: vec![None; dom.len()],
        used: vec![0; cod.len()],
        known: Vec::new(),
        found: Vec::new(),
    };
    let mut pending = Vec::new();
    if s.assign(dom.zero(), cod.zero(), &mut pending) && s.propagate(pending) {
        s.run(0);
    }
    let mut maps = s.found;
    maps.sort();
    let mut out = Vec::with_capacity(maps.len());
    for (i, map) in maps.into_iter().enumerate() {
        let m = Morphism::new(format!("h{i}"), dom.clone(), cod.clone(), map)?;
        if m.check().is_ok() {
            out.push(m);
        }
    }
    Ok(out)
}

/// `Hom(a, b)`, sorted by map. Uses the default size guard.
pub fn enumerate_morphisms(a: &Arc<Structure>, b: &Arc<Structure>) -> Result<Vec<Morphism>> {
    enumerate_morphisms_with(a, b, SearchOptions::default())
}

pub fn enumerate_morphisms_with(a: &Arc<Structure>, b: &Arc<Structure>, opts: SearchOptions) -> Result<Vec<Morphism>> {
    search_morphisms(a, b, opts, &|_, _| true)
}

/// Every isomorphism `a → b`, sorted by map.
pub fn enumerate_isomorphisms(a: &Arc<Structure>, b: &Arc<Structure>, max_size: usize) -> Result<Vec<Morphism>> {
    search_morphisms(a, b, SearchOptions::with_max_size(max_size).bijective(), &|_, _| true)
}

/// The first isomorphism `a → b` in map order, if one exists.
pub fn find_isomorphism(a: &Arc<Structure>, b: &Arc<Structure>) -> Result<Option<Morphism>> {
    find_isomorphism_with(a, b, DEFAULT_MAX_SIZE)
}

pub fn find_isomorphism_with(a: &Arc<Structure>, b: &Arc<Structure>, max_size: usize) -> Result<Option<Morphism>> {
    let found = search_morphisms(
        a,
        b,
        SearchOptions::with_max_size(max_size).bijective().first(),
        &|_, _| true,
    )?;
    Ok(found
        .into_iter()
        .next()
        .map(|m| m.renamed(format!("iso({},{})", a.name(), b.name()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::VarietyProfile;

    fn zn(n: usize) -> Arc<Structure> {
        Arc::new(
            Structure::from_fn(
                VarietyProfile::group(),
                format!("z{n}"),
                (0..n).map(|i| i.to_string()).collect(),
                0,
                |x, y| (x + y) % n,
                |x| (n - x) % n,
                |_, _, _| 0,
                |_, _| 0,
            )
            .unwrap(),
        )
    }

    #[test]
    fn hom_counts_for_cyclic_groups() {
        assert_eq!(enumerate_morphisms(&zn(2), &zn(2)).unwrap().len(), 2);
        assert_eq!(enumerate_morphisms(&zn(3), &zn(2)).unwrap().len(), 1);
        assert_eq!(enumerate_morphisms(&zn(4), &zn(6)).unwrap().len(), 2);
        assert_eq!(enumerate_morphisms(&zn(6), &zn(6)).unwrap().len(), 6);
    }

    #[test]
    fn identity_is_found() {
        let z = zn(5);
        let homs = enumerate_morphisms(&z, &z).unwrap();
        assert!(homs.iter().any(Morphism::is_identity));
    }

    #[test]
    fn isomorphisms_of_cyclic_groups() {
        assert_eq!(enumerate_isomorphisms(&zn(5), &zn(5), 12).unwrap().len(), 4);
        assert!(find_isomorphism(&zn(4), &zn(3)).unwrap().is_none());
    }

    #[test]
    fn size_guard_is_enforced() {
        let e = enumerate_morphisms_with(&zn(5), &zn(5), SearchOptions::with_max_size(4));
        assert!(matches!(e, Err(Error::SizeGuard { size: 5, limit: 4, .. })));
    }

    #[test]
    fn generating_set_of_cyclic_group_is_one_element() {
        assert_eq!(generating_set(&zn(6)), vec![1]);
        assert_eq!(generating_set(&zn(1)), Vec::<usize>::new());
    }
}
