//! Subobjects, kernels, ideals and equalizers.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::report::Violation;
use crate::structure::{Structure, Tables};

/// A subset of a structure closed under every operation, together with the
/// induced structure and its inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    parent: Arc<Structure>,
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    induced: Arc<Structure>,
    embed: Morphism,
}

impl Subobject {
    /// Validates closure of `elements` and builds the induced structure.
    /// Element names are inherited from the parent.
    pub fn new(
        parent: &Arc<Structure>,
        elements: impl IntoIterator<Item = usize>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if set.iter().any(|&x| x >= parent.len()) {
            return Err(Error::structural("subobject element outside parent"));
        }
        let elements: Vec<usize> = set.into_iter().collect();
        let mut position = vec![None; parent.len()];
        for (i, &x) in elements.iter().enumerate() {
            position[x] = Some(i);
        }
        let p = &**parent;
        let pos = |x: usize, what: &str| -> Result<usize> {
            position[x]
                .ok_or_else(|| Error::NotClosed(format!("{what} produces {} outside the subset", p.element_name(x))))
        };
        let zero = pos(p.zero(), "zero")?;
        let mut add = Vec::new();
        for &x in &elements {
            for &y in &elements {
                add.push(pos(p.add(x, y), "add")?);
            }
        }
        let neg = elements.iter().map(|&x| pos(p.neg(x), "neg")).collect::<Result<_>>()?;
        let mut stars = Vec::new();
        for (op, b) in p.profile().binary_ops().iter().enumerate() {
            let mut t = Vec::new();
            for &x in &elements {
                for &y in &elements {
                    t.push(pos(p.star(op, x, y), &b.name)?);
                }
            }
            stars.push(t);
        }
        let mut unary = Vec::new();
        for (op, u) in p.profile().unary_ops().iter().enumerate() {
            unary.push(
                elements
                    .iter()
                    .map(|&x| pos(p.unary(op, x), &u.name))
                    .collect::<Result<_>>()?,
            );
        }
        let names = elements.iter().map(|&x| p.element_name(x).to_string()).collect();
        let induced = Arc::new(Structure::from_tables(
            p.profile().clone(),
            name,
            names,
            zero,
            Tables { add, neg, stars, unary },
        )?);
        let embed = Morphism::new(
            format!("incl({})", induced.name()),
            induced.clone(),
            parent.clone(),
            elements.clone(),
        )?;
        Ok(Subobject {
            parent: parent.clone(),
            elements,
            position,
            induced,
            embed,
        })
    }

    /// The smallest subobject containing `seeds`.
    pub fn generated(
        parent: &Arc<Structure>,
        seeds: impl IntoIterator<Item = usize>,
        name: impl Into<String>,
    ) -> Result<Self> {
        Self::new(parent, closure(parent, seeds), name)
    }

    /// The whole structure as a subobject of itself.
    pub fn whole(parent: &Arc<Structure>) -> Self {
        Self::new(parent, 0..parent.len(), parent.name()).expect("carrier is closed")
    }

    pub fn parent(&self) -> &Arc<Structure> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position[x].is_some()
    }

    /// Index in the induced structure of a parent element.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position[x]
    }

    pub fn induced(&self) -> &Arc<Structure> {
        &self.induced
    }

    pub fn embed(&self) -> &Morphism {
        &self.embed
    }

    /// Normal subgroup closed under star products with arbitrary elements of
    /// the parent on either side.
    pub fn check_ideal(&self) -> Result<(), Violation> {
        let p = &*self.parent;
        let witness = |law: &str, b: usize, a: usize, out: usize| {
            Violation::new(law, format!("result {} not in subset", p.element_name(out)))
                .bind("b", b, p.element_name(b))
                .bind("a", a, p.element_name(a))
        };
        for b in 0..p.len() {
            for &a in &self.elements {
                let c = p.conj(b, a);
                if !self.contains(c) {
                    return Err(witness("ideal.normal", b, a, c));
                }
                for (op, o) in p.profile().binary_ops().iter().enumerate() {
                    let l = p.star(op, a, b);
                    if !self.contains(l) {
                        return Err(witness(&format!("ideal.star[{}]", o.name), b, a, l));
                    }
                    let r = p.star(op, b, a);
                    if !self.contains(r) {
                        return Err(witness(&format!("ideal.star[{}]", o.name), b, a, r));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self) -> bool {
        self.check_ideal().is_ok()
    }
}

/// Closure of a set of elements under every operation of the structure.
pub fn closure(s: &Structure, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    let mut queue: Vec<usize> = vec![s.zero()];
    queue.extend(seeds);
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        let current: Vec<usize> = set.iter().copied().collect();
        queue.push(s.neg(x));
        for op in 0..s.unary_count() {
            queue.push(s.unary(op, x));
        }
        for &y in &current {
            queue.push(s.add(x, y));
            queue.push(s.add(y, x));
            for op in 0..s.star_count() {
                queue.push(s.star(op, x, y));
                queue.push(s.star(op, y, x));
            }
        }
    }
    set
}

/// Every subobject of `s`, smallest first, then by element list.
pub fn all_subobjects(s: &Arc<Structure>) -> Vec<BTreeSet<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![closure(s, [])];
    while let Some(sub) = frontier.pop() {
        let key: Vec<usize> = sub.iter().copied().collect();
        if !found.insert(key) {
            continue;
        }
        for x in 0..s.len() {
            if !sub.contains(&x) {
                let bigger = closure(s, sub.iter().copied().chain([x]));
                frontier.push(bigger);
            }
        }
    }
    let mut all: Vec<BTreeSet<usize>> = found.into_iter().map(|v| v.into_iter().collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    all
}

/// Every ideal of `s`, in the order of [`all_subobjects`].
pub fn ideals(s: &Arc<Structure>) -> Vec<Subobject> {
    all_subobjects(s)
        .into_iter()
        .enumerate()
        .filter_map(|(i, set)| {
            let sub = Subobject::new(s, set, format!("{}_ideal{i}", s.name())).ok()?;
            sub.is_ideal().then_some(sub)
        })
        .collect()
}

/// `{x | f(x) = 0}` with the induced structure.
pub fn kernel(f: &Morphism) -> Result<Subobject> {
    let z = f.cod().zero();
    Subobject::new(
        f.dom(),
        (0..f.dom().len()).filter(|&x| f.apply(x) == z),
        format!("ker({})", f.name()),
    )
}

/// `{x | f(x) = g(x)}` for parallel morphisms.
pub fn equalizer(f: &Morphism, g: &Morphism) -> Result<Subobject> {
    if *f.dom() != *g.dom() || *f.cod() != *g.cod() {
        return Err(Error::structural(format!(
            "{} and {} are not parallel",
            f.name(),
            g.name()
        )));
    }
    Subobject::new(
        f.dom(),
        (0..f.dom().len()).filter(|&x| f.apply(x) == g.apply(x)),
        format!("eq({},{})", f.name(), g.name()),
    )
}

/// `{x | f(x) ∈ sub}`.
pub fn preimage(f: &Morphism, sub: &Subobject) -> Result<Subobject> {
    if **sub.parent() != **f.cod() {
        return Err(Error::structural("subobject does not live in the codomain"));
    }
    Subobject::new(
        f.dom(),
        (0..f.dom().len()).filter(|&x| sub.contains(f.apply(x))),
        format!("pre({})", f.name()),
    )
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
    fn subgroups_of_z6() {
        let z6 = zn(6);
        let subs: Vec<Vec<usize>> = all_subobjects(&z6)
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        assert_eq!(subs, vec![vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(ideals(&z6).len(), 4);
    }

    #[test]
    fn unclosed_subsets_are_rejected() {
        let z4 = zn(4);
        assert!(matches!(Subobject::new(&z4, [0, 1], "bad"), Err(Error::NotClosed(_))));
        assert!(Subobject::new(&z4, [0, 9], "bad").is_err());
        let half = Subobject::new(&z4, [2, 0], "half").unwrap();
        assert_eq!(half.elements(), &[0, 2]);
        assert_eq!(half.position(2), Some(1));
        assert_eq!(half.position(1), None);
        assert!(half.embed().is_morphism());
        assert_eq!(half.induced().len(), 2);
    }

    #[test]
    fn closure_generates() {
        let z6 = zn(6);
        assert_eq!(closure(&z6, [4]).into_iter().collect::<Vec<_>>(), [0, 2, 4]);
        assert_eq!(closure(&z6, []).len(), 1);
        assert_eq!(Subobject::generated(&z6, [1], "all").unwrap().len(), 6);
    }

    #[test]
    fn kernel_equalizer_preimage() {
        let (z4, z2) = (zn(4), zn(2));
        let f = Morphism::new("mod2", z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(kernel(&f).unwrap().elements(), &[0, 2]);
        let zero = Morphism::zero_map(&z4, &z2).unwrap();
        assert_eq!(equalizer(&f, &zero).unwrap().elements(), &[0, 2]);
        assert_eq!(equalizer(&f, &f).unwrap().len(), 4);
        let all = Subobject::whole(&z2);
        assert_eq!(preimage(&f, &all).unwrap().len(), 4);
        assert!(preimage(&f, &Subobject::whole(&z4)).is_err());
        let g = Morphism::identity(&z2);
        assert!(equalizer(&f, &g).is_err());
    }
}
