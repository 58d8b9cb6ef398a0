//! Products and fiber products of structures.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::structure::{tuple_structure, Structure};

/// An apex with two legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCone {
    pub apex: Arc<Structure>,
    pub left: Morphism,
    pub right: Morphism,
}

fn pair_cone(name: String, p: &Arc<Structure>, r: &Arc<Structure>, pairs: Vec<Vec<usize>>) -> Result<ProductCone> {
    let apex = Arc::new(tuple_structure(name, &[p, r], pairs.clone())?);
    let left = Morphism::new(
        format!("pi1({})", apex.name()),
        apex.clone(),
        p.clone(),
        pairs.iter().map(|t| t[0]).collect(),
    )?;
    let right = Morphism::new(
        format!("pi2({})", apex.name()),
        apex.clone(),
        r.clone(),
        pairs.iter().map(|t| t[1]).collect(),
    )?;
    Ok(ProductCone { apex, left, right })
}

/// `P × R` with componentwise operations. Pairs are ordered with the first
/// coordinate slowest.
pub fn direct_product(p: &Arc<Structure>, r: &Arc<Structure>) -> Result<ProductCone> {
    p.same_profile(r)?;
    let pairs = (0..p.len())
        .flat_map(|a| (0..r.len()).map(move |b| vec![a, b]))
        .collect();
    pair_cone(format!("{}x{}", p.name(), r.name()), p, r, pairs)
}

/// `{(p, r) | α(p) = β(r)}` with the operations of `P × R`.
pub fn fiber_product(alpha: &Morphism, beta: &Morphism) -> Result<ProductCone> {
    if **alpha.cod() != **beta.cod() {
        return Err(Error::structural(format!(
            "{} and {} have different codomains",
            alpha.name(),
            beta.name()
        )));
    }
    let (p, r) = (alpha.dom(), beta.dom());
    p.same_profile(r)?;
    let pairs = (0..p.len())
        .flat_map(|a| (0..r.len()).map(move |b| vec![a, b]))
        .filter(|t| alpha.apply(t[0]) == beta.apply(t[1]))
        .collect();
    pair_cone(format!("{}x_{}{}", p.name(), alpha.cod().name(), r.name()), p, r, pairs)
}

/// The pairing `⟨f, g⟩: A → P × R` into the apex of [`direct_product`] or
/// [`fiber_product`], if every pair lands in the apex.
pub fn pairing(cone: &ProductCone, f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if **f.dom() != **g.dom() || **f.cod() != **cone.left.cod() || **g.cod() != **cone.right.cod() {
        return Err(Error::structural("pairing legs do not match the cone"));
    }
    let index = |x: usize| -> Result<usize> {
        (0..cone.apex.len())
            .find(|&i| cone.left.apply(i) == f.apply(x) && cone.right.apply(i) == g.apply(x))
            .ok_or_else(|| Error::NotClosed("pair outside the apex".into()))
    };
    let map = (0..f.dom().len()).map(index).collect::<Result<_>>()?;
    Morphism::new(
        format!("pair({},{})", f.name(), g.name()),
        f.dom().clone(),
        cone.apex.clone(),
        map,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::find_isomorphism;
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
    fn klein_four_has_exponent_two() {
        let c = direct_product(&zn(2), &zn(2)).unwrap();
        assert_eq!(c.apex.len(), 4);
        assert!((0..4).all(|x| c.apex.order_of(x) <= 2));
        assert!(c.left.is_morphism() && c.right.is_morphism());
    }

    #[test]
    fn z2_times_z3_is_z6() {
        let c = direct_product(&zn(2), &zn(3)).unwrap();
        assert!(c.apex.is_valid());
        assert!(find_isomorphism(&c.apex, &zn(6)).unwrap().is_some());
    }

    #[test]
    fn fiber_product_of_mod2_is_z4() {
        let (z2, z4) = (zn(2), zn(4));
        let id = Morphism::identity(&z2);
        let m = Morphism::from_fn("mod2", &z4, &z2, |x| x % 2).unwrap();
        let c = fiber_product(&id, &m).unwrap();
        assert_eq!(c.apex.len(), 4);
        let g = c.apex.index_of("(1,1)").unwrap();
        assert_eq!(c.apex.order_of(g), 4);
        assert!(find_isomorphism(&c.apex, &z4).unwrap().is_some());
    }

    #[test]
    fn fiber_product_over_trivial_is_product() {
        let t = Arc::new(Structure::trivial(VarietyProfile::group(), "t"));
        let (a, b) = (zn(2), zn(3));
        let c = fiber_product(
            &Morphism::zero_map(&a, &t).unwrap(),
            &Morphism::zero_map(&b, &t).unwrap(),
        )
        .unwrap();
        let d = direct_product(&a, &b).unwrap();
        assert_eq!(c.apex.tables(), d.apex.tables());
        assert_eq!(c.apex.elements(), d.apex.elements());
    }

    #[test]
    fn mismatched_codomains_are_rejected() {
        let f = Morphism::identity(&zn(2));
        let g = Morphism::identity(&zn(3));
        assert!(fiber_product(&f, &g).is_err());
    }
}
