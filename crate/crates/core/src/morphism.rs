use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Violation;
use crate::structure::{is_token, Structure};

/// A carrier map between two structures of the same profile.
///
/// Construction only checks shape; [`Morphism::check`] decides whether the
/// map preserves the operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    name: String,
    dom: Arc<Structure>,
    cod: Arc<Structure>,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(name: impl Into<String>, dom: Arc<Structure>, cod: Arc<Structure>, map: Vec<usize>) -> Result<Self> {
        let name = name.into();
        if !is_token(&name) {
            return Err(Error::structural(format!("invalid morphism name `{name}`")));
        }
        dom.same_profile(&cod)?;
        if map.len() != dom.len() {
            return Err(Error::structural(format!(
                "map has {} entries, domain {} has {} elements",
                map.len(),
                dom.name(),
                dom.len()
            )));
        }
        if map.iter().any(|&y| y >= cod.len()) {
            return Err(Error::structural("map entry outside codomain"));
        }
        Ok(Morphism { name, dom, cod, map })
    }

    pub fn from_fn(
        name: impl Into<String>,
        dom: &Arc<Structure>,
        cod: &Arc<Structure>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let map = (0..dom.len()).map(f).collect();
        Self::new(name, dom.clone(), cod.clone(), map)
    }

    pub fn identity(s: &Arc<Structure>) -> Self {
        Morphism {
            name: format!("id({})", s.name()),
            dom: s.clone(),
            cod: s.clone(),
            map: (0..s.len()).collect(),
        }
    }

    pub fn zero_map(dom: &Arc<Structure>, cod: &Arc<Structure>) -> Result<Self> {
        Self::from_fn(format!("zero({},{})", dom.name(), cod.name()), dom, cod, |_| cod.zero())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dom(&self) -> &Arc<Structure> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Structure> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        if *first.cod != *self.dom {
            return Err(Error::structural(format!(
                "cannot compose {} after {}: codomain {} is not domain {}",
                self.name,
                first.name,
                first.cod.name(),
                self.dom.name()
            )));
        }
        Ok(Morphism {
            name: format!("{}.{}", self.name, first.name),
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// True when both morphisms have equal endpoints and equal maps.
    pub fn same_as(&self, other: &Morphism) -> bool {
        self.map == other.map && *self.dom == *other.dom && *self.cod == *other.cod
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Morphism {
            name: format!("inv({})", self.name),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn fail(&self, law: String, xs: &[(&str, usize)], lhs: usize, rhs: usize) -> Violation {
        let mut v = Violation::new(
            law,
            format!("lhs={} rhs={}", self.cod.element_name(lhs), self.cod.element_name(rhs)),
        );
        for (var, x) in xs {
            v = v.bind(var, *x, self.dom.element_name(*x));
        }
        v
    }

    /// Returns the first preservation law that fails, if any.
    pub fn check(&self) -> Result<(), Violation> {
        let (d, c) = (&*self.dom, &*self.cod);
        let f = |x| self.map[x];
        if f(d.zero()) != c.zero() {
            return Err(self.fail("morphism.zero".into(), &[], f(d.zero()), c.zero()));
        }
        let n = d.len();
        for x in 0..n {
            for y in 0..n {
                let (l, r) = (f(d.add(x, y)), c.add(f(x), f(y)));
                if l != r {
                    return Err(self.fail("morphism.add".into(), &[("x", x), ("y", y)], l, r));
                }
            }
        }
        for (op, b) in d.profile().binary_ops().iter().enumerate() {
            for x in 0..n {
                for y in 0..n {
                    let (l, r) = (f(d.star(op, x, y)), c.star(op, f(x), f(y)));
                    if l != r {
                        return Err(self.fail(format!("morphism.star[{}]", b.name), &[("x", x), ("y", y)], l, r));
                    }
                }
            }
        }
        for (op, u) in d.profile().unary_ops().iter().enumerate() {
            for x in 0..n {
                let (l, r) = (f(d.unary(op, x)), c.unary(op, f(x)));
                if l != r {
                    return Err(self.fail(format!("morphism.unary[{}]", u.name), &[("x", x)], l, r));
                }
            }
        }
        Ok(())
    }

    pub fn is_morphism(&self) -> bool {
        self.check().is_ok()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} [", self.name, self.dom.name(), self.cod.name())?;
        for (x, &y) in self.map.iter().enumerate() {
            if x > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}->{}", self.dom.element_name(x), self.cod.element_name(y))?;
        }
        f.write_str("]")
    }
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
    fn shape_errors() {
        let (z2, z4) = (zn(2), zn(4));
        assert!(Morphism::new("f", z2.clone(), z4.clone(), vec![0]).is_err());
        assert!(Morphism::new("f", z2.clone(), z4.clone(), vec![0, 4]).is_err());
        assert!(Morphism::new("a b", z2.clone(), z4.clone(), vec![0, 2]).is_err());
    }

    #[test]
    fn additive_failure_has_a_witness() {
        let (z2, z4) = (zn(2), zn(4));
        let f = Morphism::new("f", z2, z4, vec![0, 1]).unwrap();
        let v = f.check().unwrap_err();
        assert_eq!(v.law, "morphism.add");
        assert!(!f.is_morphism());
    }

    #[test]
    fn composition_and_inverse() {
        let z4 = zn(4);
        let neg = Morphism::from_fn("neg", &z4, &z4, |x| (4 - x) % 4).unwrap();
        assert!(neg.is_morphism() && neg.is_bijective());
        assert!(neg.after(&neg).unwrap().is_identity());
        assert!(neg.inverse().unwrap().same_as(&neg));
        let double = Morphism::from_fn("dbl", &z4, &z4, |x| 2 * x % 4).unwrap();
        assert_eq!(double.image(), [0, 2]);
        assert!(double.inverse().is_none());
        assert!(neg.after(&Morphism::identity(&zn(2))).is_err());
    }
}
