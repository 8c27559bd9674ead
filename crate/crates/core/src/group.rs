//! Exact arithmetic in the dihedral group D_n and the closed-form subgroup
//! listing: every subgroup is cyclic `<a^r>` or dihedral `<a^r, a^i b>`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, lcm};

/// `a^rot` when `refl` is false, `a^rot b` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub rot: u32,
    pub refl: bool,
}

impl DihedralElement {
    pub const IDENTITY: Self = Self { rot: 0, refl: false };

    pub fn rotation(rot: u32) -> Self {
        Self { rot, refl: false }
    }

    pub fn reflection(rot: u32) -> Self {
        Self { rot, refl: true }
    }

    /// Position of the element in a `2n`-bit membership set.
    pub(crate) fn slot(self) -> usize {
        2 * self.rot as usize + self.refl as usize
    }

    pub(crate) fn from_slot(slot: usize) -> Self {
        Self {
            rot: (slot / 2) as u32,
            refl: slot % 2 == 1,
        }
    }

    pub fn inverse(self, n: u32) -> Self {
        if self.refl || self.rot == 0 {
            self
        } else {
            Self::rotation(n - self.rot % n)
        }
    }

    /// `e`, `a`, `a^3`, `b`, `ab`, `a^2 b`.
    pub fn notation(self) -> String {
        match (self.rot, self.refl) {
            (0, false) => "e".to_string(),
            (1, false) => "a".to_string(),
            (k, false) => format!("a^{k}"),
            (0, true) => "b".to_string(),
            (1, true) => "ab".to_string(),
            (k, true) => format!("a^{k} b"),
        }
    }
}

/// Product `x·y` in D_n under `b a = a^{-1} b`.
pub fn multiply(x: DihedralElement, y: DihedralElement, n: u32) -> Result<DihedralElement> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let n64 = n as u64;
    let r1 = x.rot as u64 % n64;
    let r2 = y.rot as u64 % n64;
    let rot = if x.refl {
        (r1 + n64 - r2) % n64
    } else {
        (r1 + r2) % n64
    };
    Ok(DihedralElement {
        rot: rot as u32,
        refl: x.refl ^ y.refl,
    })
}

/// Canonical name of a subgroup of D_n.
///
/// The derived ordering (cyclic before dihedral, then by `r`, then by `i`) is
/// the catalog order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupDescriptor {
    /// `<a^r>` with `r | n`; order `n / r`.
    Cyclic { r: u32 },
    /// `<a^r, a^i b>` with `r | n` and `0 <= i < r`; order `2n / r`.
    Dihedral { r: u32, i: u32 },
}

impl SubgroupDescriptor {
    pub fn r(self) -> u32 {
        match self {
            Self::Cyclic { r } | Self::Dihedral { r, .. } => r,
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, Self::Cyclic { .. })
    }

    pub fn order(self, n: u32) -> u32 {
        match self {
            Self::Cyclic { r } => n / r,
            Self::Dihedral { r, .. } => 2 * (n / r),
        }
    }

    /// Notation as used in reports: `<a>`, `<a^2>`, `<b>`, `<a^2 b>`,
    /// `<a^2, ab>`. The trivial subgroup prints as `<e>`.
    pub fn notation(self, n: u32) -> String {
        let rot = |r: u32| if r == 1 { "a".to_string() } else { format!("a^{r}") };
        let refl = |i: u32| DihedralElement::reflection(i).notation();
        match self {
            Self::Cyclic { r } if r == n => "<e>".to_string(),
            Self::Cyclic { r } => format!("<{}>", rot(r)),
            Self::Dihedral { r, i } if r == n => format!("<{}>", refl(i)),
            Self::Dihedral { r, i } => format!("<{}, {}>", rot(r), refl(i)),
        }
    }

    fn validate(self, n: u32) -> Result<()> {
        let ok = match self {
            Self::Cyclic { r } => r >= 1 && n.is_multiple_of(r),
            Self::Dihedral { r, i } => r >= 1 && n.is_multiple_of(r) && i < r,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidOrder(n))
        }
    }
}

/// Closed-form descriptor of the intersection of two subgroups of D_n.
///
/// Rotations meet in `<a^lcm(r, s)>`; reflections `a^k b` with `k ≡ i (mod r)`
/// and `k ≡ j (mod s)` exist iff `i ≡ j (mod gcd(r, s))`.
pub fn intersection_descriptor(
    x: SubgroupDescriptor,
    y: SubgroupDescriptor,
    n: u32,
) -> SubgroupDescriptor {
    let l = lcm(x.r(), y.r());
    match (x, y) {
        (SubgroupDescriptor::Dihedral { r, i }, SubgroupDescriptor::Dihedral { r: s, i: j }) => {
            if i % gcd(r, s) != j % gcd(r, s) {
                return SubgroupDescriptor::Cyclic { r: l };
            }
            // walk k ≡ i (mod r) until k ≡ j (mod s); terminates within l / r steps
            let mut k = i;
            while k % s != j {
                k += r;
            }
            debug_assert!(k < l && l <= n);
            SubgroupDescriptor::Dihedral { r: l, i: k % l }
        }
        _ => SubgroupDescriptor::Cyclic { r: l },
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    n: u32,
    descriptor: SubgroupDescriptor,
    elements: FixedBitSet,
}

impl Subgroup {
    pub fn new(n: u32, descriptor: SubgroupDescriptor) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder(n));
        }
        descriptor.validate(n)?;
        let mut elements = FixedBitSet::with_capacity(2 * n as usize);
        let r = descriptor.r();
        for k in (0..n).step_by(r as usize) {
            elements.insert(DihedralElement::rotation(k).slot());
        }
        if let SubgroupDescriptor::Dihedral { i, .. } = descriptor {
            for k in (i..n).step_by(r as usize) {
                elements.insert(DihedralElement::reflection(k).slot());
            }
        }
        Ok(Self {
            n,
            descriptor,
            elements,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn descriptor(&self) -> SubgroupDescriptor {
        self.descriptor
    }

    pub fn order(&self) -> u32 {
        self.elements.count_ones(..) as u32
    }

    pub fn contains(&self, x: DihedralElement) -> bool {
        x.rot < self.n && self.elements.contains(x.slot())
    }

    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        self.elements.ones().map(DihedralElement::from_slot)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == 2 * self.n
    }

    pub fn notation(&self) -> String {
        self.descriptor.notation(self.n)
    }

    /// True iff the two subgroups share only the identity.
    pub fn is_trivial_intersection(&self, other: &Subgroup) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.elements.intersection_count(&other.elements) == 1)
    }

    fn same_group(&self, other: &Subgroup) -> Result<()> {
        if self.n != other.n {
            return Err(Error::CatalogMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Every subgroup of D_n exactly once, in canonical order: cyclic subgroups by
/// increasing `r`, then dihedral subgroups by `(r, i)`.
#[derive(Clone, Debug)]
pub struct SubgroupCatalog {
    n: u32,
    all: Vec<Subgroup>,
    proper_nontrivial: Vec<usize>,
    by_descriptor: HashMap<SubgroupDescriptor, usize>,
}

pub fn enumerate_subgroups(n: u32) -> Result<SubgroupCatalog> {
    if n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    let divs = divisors(n);
    let mut descriptors: Vec<SubgroupDescriptor> = divs
        .iter()
        .map(|&r| SubgroupDescriptor::Cyclic { r })
        .collect();
    for &r in &divs {
        descriptors.extend((0..r).map(|i| SubgroupDescriptor::Dihedral { r, i }));
    }

    let all = descriptors
        .iter()
        .map(|&d| Subgroup::new(n, d))
        .collect::<Result<Vec<_>>>()?;
    let proper_nontrivial = all
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.is_trivial() && !h.is_whole())
        .map(|(idx, _)| idx)
        .collect();
    let by_descriptor = descriptors
        .into_iter()
        .enumerate()
        .map(|(idx, d)| (d, idx))
        .collect();
    Ok(SubgroupCatalog {
        n,
        all,
        proper_nontrivial,
        by_descriptor,
    })
}

impl SubgroupCatalog {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn all(&self) -> &[Subgroup] {
        &self.all
    }

    pub fn get(&self, idx: usize) -> Option<&Subgroup> {
        self.all.get(idx)
    }

    /// Indices into [`all`](Self::all) of the non-trivial proper subgroups.
    pub fn proper_nontrivial(&self) -> &[usize] {
        &self.proper_nontrivial
    }

    pub fn index_of(&self, descriptor: SubgroupDescriptor) -> Option<usize> {
        self.by_descriptor.get(&descriptor).copied()
    }

    pub fn trivial_index(&self) -> usize {
        self.by_descriptor[&SubgroupDescriptor::Cyclic { r: self.n }]
    }

    pub fn whole_index(&self) -> usize {
        self.by_descriptor[&SubgroupDescriptor::Dihedral { r: 1, i: 0 }]
    }

    /// Re-identifies an element set against the catalog. `None` if the set
    /// is not one of the listed subgroups.
    pub fn identify(&self, elements: &FixedBitSet) -> Option<usize> {
        let n = self.n as usize;
        let min_rot = (1..n).find(|&k| elements.contains(2 * k)).unwrap_or(n) as u32;
        let descriptor = match (0..n).find(|&k| elements.contains(2 * k + 1)) {
            None => SubgroupDescriptor::Cyclic { r: min_rot },
            Some(k) => SubgroupDescriptor::Dihedral {
                r: min_rot,
                i: k as u32,
            },
        };
        let idx = self.index_of(descriptor)?;
        (self.all[idx].elements == *elements).then_some(idx)
    }

    /// The subgroup `h ∩ k`, looked up in this catalog.
    pub fn intersect(&self, h: &Subgroup, k: &Subgroup) -> Result<&Subgroup> {
        for s in [h, k] {
            if s.n != self.n {
                return Err(Error::CatalogMismatch {
                    left: self.n,
                    right: s.n,
                });
            }
        }
        let mut common = h.elements.clone();
        common.intersect_with(&k.elements);
        let idx = self
            .identify(&common)
            .expect("intersection of two subgroups is a listed subgroup");
        Ok(&self.all[idx])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(r: u32, i: u32) -> SubgroupDescriptor {
        SubgroupDescriptor::Dihedral { r, i }
    }

    fn c(r: u32) -> SubgroupDescriptor {
        SubgroupDescriptor::Cyclic { r }
    }

    #[test]
    fn multiply_examples() {
        let m = |x, y| multiply(x, y, 4).unwrap();
        assert_eq!(
            m(DihedralElement::rotation(1), DihedralElement::rotation(1)),
            DihedralElement::rotation(2)
        );
        assert_eq!(
            m(DihedralElement::reflection(0), DihedralElement::rotation(1)),
            DihedralElement::reflection(3)
        );
        assert_eq!(
            m(DihedralElement::IDENTITY, DihedralElement::reflection(2)),
            DihedralElement::reflection(2)
        );
        assert!(matches!(
            multiply(DihedralElement::IDENTITY, DihedralElement::IDENTITY, 0),
            Err(Error::InvalidModulus(0))
        ));
    }

    #[test]
    fn inverses_compose_to_identity() {
        for n in 1..12 {
            for rot in 0..n {
                for refl in [false, true] {
                    let x = DihedralElement { rot, refl };
                    assert_eq!(multiply(x, x.inverse(n), n).unwrap(), DihedralElement::IDENTITY);
                    assert_eq!(multiply(x.inverse(n), x, n).unwrap(), DihedralElement::IDENTITY);
                }
            }
        }
    }

    #[test]
    fn notation_matches_listing_style() {
        assert_eq!(c(1).notation(4), "<a>");
        assert_eq!(c(2).notation(4), "<a^2>");
        assert_eq!(c(4).notation(4), "<e>");
        assert_eq!(d(4, 0).notation(4), "<b>");
        assert_eq!(d(4, 1).notation(4), "<ab>");
        assert_eq!(d(4, 3).notation(4), "<a^3 b>");
        assert_eq!(d(2, 1).notation(4), "<a^2, ab>");
        assert_eq!(d(1, 0).notation(4), "<a, b>");
    }

    #[test]
    fn catalog_for_d4_in_canonical_order() {
        let cat = enumerate_subgroups(4).unwrap();
        let names: Vec<String> = cat.all().iter().map(|h| h.notation()).collect();
        assert_eq!(
            names,
            [
                "<a>", "<a^2>", "<e>", "<a, b>", "<a^2, b>", "<a^2, ab>", "<b>", "<ab>",
                "<a^2 b>", "<a^3 b>"
            ]
        );
        assert_eq!(cat.proper_nontrivial().len(), 8);
        assert!(cat.all()[cat.trivial_index()].is_trivial());
        assert!(cat.all()[cat.whole_index()].is_whole());
    }

    #[test]
    fn intersect_examples_in_d4() {
        let cat = enumerate_subgroups(4).unwrap();
        let get = |x| &cat.all()[cat.index_of(x).unwrap()];
        assert!(cat.intersect(get(c(2)), get(d(4, 0))).unwrap().is_trivial());
        assert_eq!(cat.intersect(get(d(2, 0)), get(d(2, 1))).unwrap().descriptor(), c(2));
        assert_eq!(cat.intersect(get(d(2, 1)), get(d(2, 1))).unwrap().descriptor(), d(2, 1));
        assert!(get(d(4, 0)).is_trivial_intersection(get(d(4, 1))).unwrap());
        assert!(!get(c(1)).is_trivial_intersection(get(c(1))).unwrap());
    }

    #[test]
    fn mismatched_catalogs_are_rejected() {
        let cat4 = enumerate_subgroups(4).unwrap();
        let cat6 = enumerate_subgroups(6).unwrap();
        let h = &cat4.all()[0];
        let k = &cat6.all()[0];
        assert!(matches!(
            h.is_trivial_intersection(k),
            Err(Error::CatalogMismatch { left: 4, right: 6 })
        ));
        assert!(cat4.intersect(h, k).is_err());
    }

    #[test]
    fn order_zero_rejected_and_order_one_allowed() {
        assert!(matches!(enumerate_subgroups(0), Err(Error::InvalidOrder(0))));
        let cat = enumerate_subgroups(1).unwrap();
        assert_eq!(cat.all().len(), 2);
        assert!(cat.proper_nontrivial().is_empty());
    }

    #[test]
    fn cyclic_rotations_in_d6_meet_trivially() {
        // <a^3> = {e, a^3} and <a^2> = {e, a^2, a^4}
        let cat = enumerate_subgroups(6).unwrap();
        let get = |x| &cat.all()[cat.index_of(x).unwrap()];
        assert!(get(c(3)).is_trivial_intersection(get(c(2))).unwrap());
    }

    #[test]
    fn closed_form_intersections_match_element_sets() {
        for n in 1..=60 {
            let cat = enumerate_subgroups(n).unwrap();
            for h in cat.all() {
                for k in cat.all() {
                    let by_sets = cat.intersect(h, k).unwrap().descriptor();
                    let closed = intersection_descriptor(h.descriptor(), k.descriptor(), n);
                    assert_eq!(by_sets, closed, "n = {n}, {h} ∩ {k}");
                }
            }
        }
    }
}
