//! Z/2-graded groups and graded homomorphisms.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{Element, FgaGroup};
use crate::map::{subgroup_of, GroupMap};
use crate::matrix::IntMatrix;

/// A degree modulo 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// `j mod 2`; negative degrees wrap as expected.
    pub fn of(j: i64) -> Parity {
        if j.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn index(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `(K_0 ; K_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedGroup {
    pub even: FgaGroup,
    pub odd: FgaGroup,
}

impl GradedGroup {
    pub fn new(even: FgaGroup, odd: FgaGroup) -> Self {
        GradedGroup { even, odd }
    }

    pub fn trivial() -> Self {
        GradedGroup::default()
    }

    /// Concentrated in even degree.
    pub fn even_only(g: FgaGroup) -> Self {
        GradedGroup::new(g, FgaGroup::trivial())
    }

    pub fn get(&self, p: Parity) -> &FgaGroup {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.even.is_trivial() && self.odd.is_trivial()
    }

    pub fn is_torsion(&self) -> bool {
        self.even.is_torsion() && self.odd.is_torsion()
    }

    pub fn is_free(&self) -> bool {
        self.even.is_free() && self.odd.is_free()
    }

    pub fn total_rank(&self) -> usize {
        self.even.free_rank() + self.odd.free_rank()
    }

    /// `K_j(SA) = K_{j-1}(A)`: swaps the two components.
    pub fn suspend(&self) -> GradedGroup {
        GradedGroup::new(self.odd.clone(), self.even.clone())
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        GradedGroup::new(self.even.direct_sum(&other.even), self.odd.direct_sum(&other.odd))
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ; {}]", self.even, self.odd)
    }
}

pub fn suspend(g: &GradedGroup) -> GradedGroup {
    g.suspend()
}

pub fn direct_sum(g: &GradedGroup, h: &GradedGroup) -> GradedGroup {
    g.direct_sum(h)
}

/// A graded homomorphism of degree 0 or 1. The component for parity `p`
/// maps `source_p` into `target_{p + degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    degree: Parity,
    even: GroupMap,
    odd: GroupMap,
}

impl GradedMap {
    pub fn new(degree: Parity, even: GroupMap, odd: GroupMap) -> Self {
        GradedMap { degree, even, odd }
    }

    pub fn identity(g: &GradedGroup) -> Self {
        GradedMap {
            degree: Parity::Even,
            even: GroupMap::identity(&g.even),
            odd: GroupMap::identity(&g.odd),
        }
    }

    pub fn zero(source: &GradedGroup, target: &GradedGroup, degree: Parity) -> Self {
        GradedMap {
            degree,
            even: GroupMap::zero(&source.even, target.get(degree)),
            odd: GroupMap::zero(&source.odd, target.get(degree.flip())),
        }
    }

    pub fn degree(&self) -> Parity {
        self.degree
    }

    /// Component on the parity-`p` part of the source.
    pub fn component(&self, p: Parity) -> &GroupMap {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn source(&self) -> GradedGroup {
        GradedGroup::new(self.even.domain().clone(), self.odd.domain().clone())
    }

    pub fn target(&self) -> GradedGroup {
        let (t_even, t_odd) = match self.degree {
            Parity::Even => (self.even.codomain(), self.odd.codomain()),
            Parity::Odd => (self.odd.codomain(), self.even.codomain()),
        };
        GradedGroup::new(t_even.clone(), t_odd.clone())
    }

    /// `self ∘ inner`; degrees add modulo 2.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        let even = self.component(inner.degree).compose(&inner.even)?;
        let odd = self.component(Parity::Odd + inner.degree).compose(&inner.odd)?;
        Ok(GradedMap {
            degree: self.degree + inner.degree,
            even,
            odd,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.even.is_injective() && self.odd.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.even.is_surjective() && self.odd.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }
}

/// A subgroup of a graded group given by generators in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubgroup {
    ambient: GradedGroup,
    even: Vec<Element>,
    odd: Vec<Element>,
}

impl GradedSubgroup {
    /// Generators are coordinate vectors over the ambient's canonical
    /// generators; they are reduced on the way in.
    pub fn new(ambient: GradedGroup, even: Vec<Vec<BigInt>>, odd: Vec<Vec<BigInt>>) -> Result<Self> {
        let conv = |g: &FgaGroup, gens: Vec<Vec<BigInt>>| -> Result<Vec<Element>> {
            gens.into_iter().map(|c| g.element_from(&c)).collect()
        };
        let even = conv(&ambient.even, even)?;
        let odd = conv(&ambient.odd, odd)?;
        Ok(GradedSubgroup { ambient, even, odd })
    }

    pub fn ambient(&self) -> &GradedGroup {
        &self.ambient
    }

    pub fn generators(&self, p: Parity) -> &[Element] {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Canonical form of the generated subgroup with its degree-0 inclusion.
    pub fn close(&self) -> (GradedGroup, GradedMap) {
        let part = |p: Parity| -> (FgaGroup, GroupMap) {
            let amb = self.ambient.get(p);
            let cols: Vec<Vec<BigInt>> = self.generators(p).iter().map(|e| e.coords().to_vec()).collect();
            let gens = IntMatrix::from_columns(amb.num_generators(), &cols)
                .expect("generator lengths validated on construction");
            let (g, incl) = subgroup_of(&amb.orders(), &gens);
            let map = GroupMap::new(g.clone(), amb.clone(), incl).expect("subgroup inclusions are well defined");
            (g, map)
        };
        let (g0, i0) = part(Parity::Even);
        let (g1, i1) = part(Parity::Odd);
        (
            GradedGroup::new(g0, g1),
            GradedMap {
                degree: Parity::Even,
                even: i0,
                odd: i1,
            },
        )
    }
}

pub fn graded_subgroup_close(s: &GradedSubgroup) -> (GradedGroup, GradedMap) {
    s.close()
}

/// Errors unless `g` is torsion in both degrees; names the first free
/// generator found.
pub(crate) fn require_torsion(g: &GradedGroup, what: &str) -> Result<()> {
    for p in Parity::BOTH {
        if g.get(p).free_rank() > 0 {
            return Err(Error::hypothesis(format!(
                "{what} must be a torsion group, but degree {p} has free rank {} (free generator {p}:0)",
                g.get(p).free_rank()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn suspension_swaps() {
        let g = GradedGroup::new(FgaGroup::cyclic(2), FgaGroup::trivial());
        assert_eq!(g.suspend(), GradedGroup::new(FgaGroup::trivial(), FgaGroup::cyclic(2)));
        let h = GradedGroup::new(FgaGroup::free(1), FgaGroup::cyclic(3));
        assert_eq!(h.suspend(), GradedGroup::new(FgaGroup::cyclic(3), FgaGroup::free(1)));
        let k = GradedGroup::new(FgaGroup::new(2, vec![bi(4)]).unwrap(), FgaGroup::cyclic(9));
        assert_eq!(k.suspend().suspend(), k);
    }

    #[test]
    fn direct_sums() {
        let a = GradedGroup::even_only(FgaGroup::cyclic(2));
        let b = GradedGroup::even_only(FgaGroup::cyclic(3));
        assert_eq!(a.direct_sum(&b), GradedGroup::even_only(FgaGroup::cyclic(6)));
        assert_eq!(a.direct_sum(&GradedGroup::trivial()), a);
        let z0 = GradedGroup::even_only(FgaGroup::free(1));
        let z1 = z0.suspend();
        assert_eq!(
            z0.direct_sum(&z1),
            GradedGroup::new(FgaGroup::free(1), FgaGroup::free(1))
        );
    }

    #[test]
    fn subgroup_closure() {
        let z = GradedGroup::even_only(FgaGroup::free(1));
        let s = GradedSubgroup::new(z.clone(), vec![vec![bi(2)]], vec![]).unwrap();
        let (g, incl) = s.close();
        assert_eq!(g, z);
        assert_eq!(incl.component(Parity::Even).matrix().get(0, 0).clone().abs(), bi(2));

        let z4 = GradedGroup::even_only(FgaGroup::cyclic(4));
        let (g, incl) = GradedSubgroup::new(z4, vec![vec![bi(2)]], vec![]).unwrap().close();
        assert_eq!(g, GradedGroup::even_only(FgaGroup::cyclic(2)));
        assert!(incl.is_injective());

        let (g, _) = GradedSubgroup::new(z, vec![], vec![]).unwrap().close();
        assert!(g.is_trivial());
    }

    #[test]
    fn invalid_generator_rejected() {
        let z = GradedGroup::even_only(FgaGroup::free(1));
        assert!(GradedSubgroup::new(z, vec![vec![bi(1), bi(2)]], vec![]).is_err());
    }

    #[test]
    fn degrees_add_under_composition() {
        let g = GradedGroup::new(FgaGroup::cyclic(2), FgaGroup::cyclic(2));
        let swap = GradedMap::new(
            Parity::Odd,
            GroupMap::identity(&FgaGroup::cyclic(2)),
            GroupMap::identity(&FgaGroup::cyclic(2)),
        );
        let twice = swap.compose(&swap).unwrap();
        assert_eq!(twice.degree(), Parity::Even);
        assert_eq!(twice, GradedMap::identity(&g));
    }
}
