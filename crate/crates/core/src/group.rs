//! Finitely generated abelian groups in canonical (invariant-factor) form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::snf_full;

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
///
/// Canonical generators are ordered free first, then one per invariant
/// factor. Two values are isomorphic exactly when they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FgaGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgaGroup {
    /// Validates an invariant-factor chain.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d <= BigInt::one() {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {d} at position {i} is not at least 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "invariant factor {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(FgaGroup { free_rank, torsion })
    }

    /// Canonical form of `Z^free_rank ⊕ ⊕ Z/o_i` for arbitrary orders
    /// (an order of 0 contributes a free summand, 1 nothing). Negative
    /// orders are rejected.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Result<Self> {
        if let Some(o) = orders.iter().find(|o| o.is_negative()) {
            return Err(Error::InvalidGroup(format!("negative cyclic order {o}")));
        }
        let mut all = vec![BigInt::zero(); free_rank];
        all.extend(orders.iter().cloned());
        Ok(Presentation::diagonal(&all).canonicalize())
    }

    pub fn trivial() -> Self {
        FgaGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgaGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = 1` the trivial group.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        let d = d.into().abs();
        if d.is_zero() {
            FgaGroup::free(1)
        } else if d.is_one() {
            FgaGroup::trivial()
        } else {
            FgaGroup {
                free_rank: 0,
                torsion: vec![d],
            }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of each canonical generator, `0` for free generators.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut o = vec![BigInt::zero(); self.free_rank];
        o.extend(self.torsion.iter().cloned());
        o
    }

    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Exponent of the torsion subgroup (1 when there is no torsion).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_part(&self) -> FgaGroup {
        FgaGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn free_part(&self) -> FgaGroup {
        FgaGroup::free(self.free_rank)
    }

    pub fn direct_sum(&self, other: &FgaGroup) -> FgaGroup {
        let mut orders = self.orders();
        orders.extend(other.orders());
        Presentation::diagonal(&orders).canonicalize()
    }

    /// `self^n`.
    pub fn power(&self, n: usize) -> FgaGroup {
        let mut orders = Vec::with_capacity(n * self.num_generators());
        for _ in 0..n {
            orders.extend(self.orders());
        }
        Presentation::diagonal(&orders).canonicalize()
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        normalize(&self.orders(), coords)
    }

    /// Checks that `coords` is a normalized coordinate vector.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<Element> {
        if coords.len() != self.num_generators() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates given for a group with {} generators",
                coords.len(),
                self.num_generators()
            )));
        }
        for (i, x) in coords.iter().enumerate().skip(self.free_rank) {
            let d = &self.torsion[i - self.free_rank];
            if x.is_negative() || x >= d {
                return Err(Error::InvalidElement(format!(
                    "coordinate {i} = {x} is not reduced modulo {d}"
                )));
            }
        }
        Ok(Element(coords))
    }

    /// Normalizes arbitrary integer coordinates into an element.
    pub fn element_from(&self, coords: &[BigInt]) -> Result<Element> {
        if coords.len() != self.num_generators() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates given for a group with {} generators",
                coords.len(),
                self.num_generators()
            )));
        }
        Ok(Element(self.normalize(coords)))
    }

    pub fn zero_element(&self) -> Element {
        Element(vec![BigInt::zero(); self.num_generators()])
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut c = vec![BigInt::zero(); self.num_generators()];
        c[i] = BigInt::one();
        Element(self.normalize(&c))
    }

    /// All elements of a finite group in lexicographic coordinate order.
    /// Returns `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<Element>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::<BigInt>::new()];
        for d in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut p = prefix.clone();
                    p.push(k.clone());
                    next.push(p);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out.into_iter().map(Element).collect())
    }

    /// Diagonal relation matrix, one column per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        relation_matrix(&self.orders())
    }
}

impl fmt::Display for FgaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coordinates of a group element over canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub(crate) Vec<BigInt>);

impl Element {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// `n` generators modulo the column span of `relations` (an `n`-row matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

/// Canonical form of a presentation together with the coordinate changes
/// between the original generators and the canonical ones.
#[derive(Clone, Debug)]
pub(crate) struct Canonical {
    pub group: FgaGroup,
    /// `k x n`: original generator coordinates to canonical coordinates.
    pub to_canon: IntMatrix,
    /// `n x k`: canonical generators written in original generators.
    pub from_canon: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::shape(format!(
                "relation matrix has {} rows for {generators} generators",
                relations.rows()
            )));
        }
        Ok(Presentation { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relations: IntMatrix::zeros(generators, 0),
        }
    }

    /// One generator per order, each with its single relation.
    pub(crate) fn diagonal(orders: &[BigInt]) -> Self {
        Presentation {
            generators: orders.len(),
            relations: relation_matrix(orders),
        }
    }

    pub fn canonicalize(&self) -> FgaGroup {
        self.canonicalize_with_maps().group
    }

    pub(crate) fn canonicalize_with_maps(&self) -> Canonical {
        let n = self.generators;
        let s = snf_full(&self.relations);
        let mut free_rows: Vec<usize> = (s.rank..n).collect();
        let mut torsion_rows = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..s.rank {
            let d = s.diag(i);
            if !d.is_one() {
                torsion_rows.push(i);
                torsion.push(d.clone());
            }
        }
        let free_rank = free_rows.len();
        free_rows.extend(torsion_rows);
        let idx = free_rows;
        let mut to_canon = s.u.select_rows(&idx);
        for (r, d) in torsion.iter().enumerate() {
            to_canon.reduce_row(free_rank + r, d);
        }
        let from_canon = s.u_inv.select_cols(&idx);
        Canonical {
            group: FgaGroup { free_rank, torsion },
            to_canon,
            from_canon,
        }
    }
}

/// Canonical form of the cokernel of the relation matrix.
pub fn canonicalize(p: &Presentation) -> FgaGroup {
    p.canonicalize()
}

pub(crate) fn relation_matrix(orders: &[BigInt]) -> IntMatrix {
    let cols: Vec<usize> = (0..orders.len()).filter(|&i| !orders[i].is_zero()).collect();
    let mut m = IntMatrix::zeros(orders.len(), cols.len());
    for (c, &i) in cols.iter().enumerate() {
        m.set(i, c, orders[i].clone());
    }
    m
}

pub(crate) fn normalize(orders: &[BigInt], coords: &[BigInt]) -> Vec<BigInt> {
    coords
        .iter()
        .zip(orders)
        .map(|(x, o)| if o.is_zero() { x.clone() } else { x.mod_floor(o) })
        .collect()
}

/// Reduces each row of `m` modulo the corresponding order.
pub(crate) fn normalize_rows(orders: &[BigInt], m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for (i, o) in orders.iter().enumerate() {
        out.reduce_row(i, o);
    }
    out
}
