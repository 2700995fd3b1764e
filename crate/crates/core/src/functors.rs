//! Hom, Ext, Tor and tensor product of finitely generated groups, with
//! functorially induced maps.
//!
//! Every first argument `G` with `n` canonical generators comes with its
//! free resolution `0 -> Z^t -R-> Z^n -> G -> 0`, where the `t` relation
//! columns are `d_i e_i` for the torsion generators. With `H` the second
//! argument and `Φ = R ⊗ H : H^t -> H^n`, `Ψ = Hom(R, H) : H^n -> H^t`:
//!
//! * `Hom(G, H) = ker Ψ`, `Ext(G, H) = coker Ψ`,
//! * `Tor(G, H) = ker Φ`, `G ⊗ H = coker Φ`.
//!
//! Elements of `H^m` are stored as `k x m` matrices (column `b` is the
//! `b`-th copy of `H`), vectorized column by column.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{normalize, Element, FgaGroup};
use crate::map::{cokernel_of, kernel_of, solve_in, GroupMap};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    Hom,
    Ext,
    Tor,
    Tensor,
}

impl Functor {
    pub fn name(self) -> &'static str {
        match self {
            Functor::Hom => "Hom",
            Functor::Ext => "Ext",
            Functor::Tor => "Tor",
            Functor::Tensor => "Tensor",
        }
    }

    /// Contravariant in the first slot?
    pub fn contravariant_first(self) -> bool {
        matches!(self, Functor::Hom | Functor::Ext)
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which argument an induced map varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Model {
    /// Value is a subgroup of the ambient; `incl` is `ambient x value`.
    Sub { incl: IntMatrix },
    /// Value is a quotient of the ambient.
    Quot { proj: IntMatrix, section: IntMatrix },
}

/// A bifunctor value together with the concrete model used to compute it,
/// so that elements can be turned into cocycles or homomorphisms and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifunctorResult {
    functor: Functor,
    first: FgaGroup,
    second: FgaGroup,
    value: FgaGroup,
    /// Number of copies of the second argument in the ambient.
    copies: usize,
    ambient_orders: Vec<BigInt>,
    model: Model,
}

impl BifunctorResult {
    pub fn functor(&self) -> Functor {
        self.functor
    }

    pub fn value(&self) -> &FgaGroup {
        &self.value
    }

    pub fn into_value(self) -> FgaGroup {
        self.value
    }

    pub fn arguments(&self) -> (&FgaGroup, &FgaGroup) {
        (&self.first, &self.second)
    }

    /// A representative in `H^m` (a `k x m` matrix) of the element with
    /// the given canonical coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Result<IntMatrix> {
        if coords.len() != self.value.num_generators() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates for {}",
                coords.len(),
                self.value
            )));
        }
        let v = match &self.model {
            Model::Sub { incl } => incl.mul_vec(coords),
            Model::Quot { section, .. } => section.mul_vec(coords),
        };
        Ok(self.unvec(&normalize(&self.ambient_orders, &v)))
    }

    /// Canonical coordinates of the element represented by `rep`.
    pub fn coords_of(&self, rep: &IntMatrix) -> Result<Vec<BigInt>> {
        let v = self.vec(rep)?;
        match &self.model {
            Model::Sub { incl } => solve_in(
                &self.value.orders(),
                &self.ambient_orders,
                incl,
                &normalize(&self.ambient_orders, &v),
            )
            .ok_or_else(|| {
                Error::InvalidElement(format!(
                    "representative does not lie in {}({}, {})",
                    self.functor, self.first, self.second
                ))
            }),
            Model::Quot { proj, .. } => Ok(self.value.normalize(&proj.mul_vec(&v))),
        }
    }

    /// For `Hom`, the homomorphism with the given coordinates.
    pub fn hom_to_map(&self, coords: &[BigInt]) -> Result<GroupMap> {
        if self.functor != Functor::Hom {
            return Err(Error::Validation("not a Hom group".into()));
        }
        let m = self.representative(coords)?;
        GroupMap::new(self.first.clone(), self.second.clone(), m)
    }

    /// For `Hom`, the coordinates of a homomorphism `first -> second`.
    pub fn map_to_hom(&self, f: &GroupMap) -> Result<Vec<BigInt>> {
        if self.functor != Functor::Hom || f.domain() != &self.first || f.codomain() != &self.second {
            return Err(Error::Validation("map does not belong to this Hom group".into()));
        }
        self.coords_of(f.matrix())
    }

    fn k(&self) -> usize {
        self.second.num_generators()
    }

    fn vec(&self, rep: &IntMatrix) -> Result<Vec<BigInt>> {
        if rep.rows() != self.k() || rep.cols() != self.copies {
            return Err(Error::shape(format!(
                "representative is {}x{}, expected {}x{}",
                rep.rows(),
                rep.cols(),
                self.k(),
                self.copies
            )));
        }
        Ok(rep.transpose().entries().to_vec())
    }

    fn unvec(&self, v: &[BigInt]) -> IntMatrix {
        IntMatrix::from_vec(self.copies, self.k(), v.to_vec())
            .expect("ambient vector length")
            .transpose()
    }
}

fn repeat_orders(h: &FgaGroup, m: usize) -> Vec<BigInt> {
    let o = h.orders();
    let mut out = Vec::with_capacity(o.len() * m);
    for _ in 0..m {
        out.extend(o.iter().cloned());
    }
    out
}

/// `Φ = R ⊗ H : H^t -> H^n` as a `(k n) x (k t)` matrix.
fn tensor_resolution_map(g: &FgaGroup, h: &FgaGroup) -> IntMatrix {
    let k = h.num_generators();
    let a = g.free_rank();
    let n = g.num_generators();
    let t = g.torsion().len();
    let mut m = IntMatrix::zeros(k * n, k * t);
    for (i, d) in g.torsion().iter().enumerate() {
        for r in 0..k {
            m.set((a + i) * k + r, i * k + r, d.clone());
        }
    }
    m
}

pub(crate) fn compute(functor: Functor, g: &FgaGroup, h: &FgaGroup) -> BifunctorResult {
    let n = g.num_generators();
    let t = g.torsion().len();
    let phi = tensor_resolution_map(g, h);
    let (copies, ambient_orders, model, value) = match functor {
        Functor::Hom => {
            let psi = phi.transpose();
            let (dom, cod) = (repeat_orders(h, n), repeat_orders(h, t));
            let (v, incl) = kernel_of(&dom, &cod, &psi);
            (n, dom, Model::Sub { incl }, v)
        }
        Functor::Ext => {
            let psi = phi.transpose();
            let cod = repeat_orders(h, t);
            let c = cokernel_of(&cod, &psi);
            (
                t,
                cod,
                Model::Quot {
                    proj: c.to_canon,
                    section: c.from_canon,
                },
                c.group,
            )
        }
        Functor::Tor => {
            let (dom, cod) = (repeat_orders(h, t), repeat_orders(h, n));
            let (v, incl) = kernel_of(&dom, &cod, &phi);
            (t, dom, Model::Sub { incl }, v)
        }
        Functor::Tensor => {
            let cod = repeat_orders(h, n);
            let c = cokernel_of(&cod, &phi);
            (
                n,
                cod,
                Model::Quot {
                    proj: c.to_canon,
                    section: c.from_canon,
                },
                c.group,
            )
        }
    };
    BifunctorResult {
        functor,
        first: g.clone(),
        second: h.clone(),
        value,
        copies,
        ambient_orders,
        model,
    }
}

pub fn bifunctor(functor: Functor, g: &FgaGroup, h: &FgaGroup) -> BifunctorResult {
    compute(functor, g, h)
}

pub fn hom(g: &FgaGroup, h: &FgaGroup) -> FgaGroup {
    compute(Functor::Hom, g, h).value
}

pub fn ext(g: &FgaGroup, h: &FgaGroup) -> FgaGroup {
    compute(Functor::Ext, g, h).value
}

pub fn tor(g: &FgaGroup, h: &FgaGroup) -> FgaGroup {
    compute(Functor::Tor, g, h).value
}

pub fn tensor(g: &FgaGroup, h: &FgaGroup) -> FgaGroup {
    compute(Functor::Tensor, g, h).value
}

/// The map `Z^{t1} -> Z^{t2}` on relation modules lifting `f: G1 -> G2`
/// (its `Z^{n1} -> Z^{n2}` part is the matrix of `f` itself).
fn relation_lift(f: &GroupMap) -> Result<IntMatrix> {
    let (g1, g2) = (f.domain(), f.codomain());
    let (a1, a2) = (g1.free_rank(), g2.free_rank());
    let mut lift = IntMatrix::zeros(g2.torsion().len(), g1.torsion().len());
    for (i, d) in g1.torsion().iter().enumerate() {
        for r in 0..g2.num_generators() {
            let v = d * f.matrix().get(r, a1 + i);
            if r < a2 {
                if !v.is_zero() {
                    return Err(Error::internal("torsion generator hits a free coordinate"));
                }
                continue;
            }
            let (q, rem) = v.div_rem(&g2.torsion()[r - a2]);
            if !rem.is_zero() {
                return Err(Error::internal("relation lift is not integral"));
            }
            lift.set(r - a2, i, q);
        }
    }
    Ok(lift)
}

/// A functorially induced map together with the two bifunctor values.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: BifunctorResult,
    pub target: BifunctorResult,
    pub map: GroupMap,
}

/// The map induced by `f` in the given slot with the other argument fixed.
/// Hom and Ext are contravariant in the first slot; everything else is
/// covariant.
pub fn induced_map(functor: Functor, f: &GroupMap, other: &FgaGroup, slot: Slot) -> Result<InducedMap> {
    let (source, target) = match slot {
        Slot::First if functor.contravariant_first() => (
            compute(functor, f.codomain(), other),
            compute(functor, f.domain(), other),
        ),
        Slot::First => (
            compute(functor, f.domain(), other),
            compute(functor, f.codomain(), other),
        ),
        Slot::Second => (
            compute(functor, other, f.domain()),
            compute(functor, other, f.codomain()),
        ),
    };
    let action: Box<dyn Fn(&IntMatrix) -> IntMatrix> = match slot {
        Slot::Second => {
            let g = f.matrix().clone();
            Box::new(move |x| &g * x)
        }
        Slot::First => {
            let f0 = f.matrix().clone();
            match functor {
                Functor::Hom => Box::new(move |x| x * &f0),
                Functor::Tensor => {
                    let f0t = f0.transpose();
                    Box::new(move |x| x * &f0t)
                }
                Functor::Ext => {
                    let f1 = relation_lift(f)?;
                    Box::new(move |x| x * &f1)
                }
                Functor::Tor => {
                    let f1t = relation_lift(f)?.transpose();
                    Box::new(move |x| x * &f1t)
                }
            }
        }
    };
    let cols = (0..source.value.num_generators())
        .map(|c| {
            let mut e = vec![BigInt::zero(); source.value.num_generators()];
            e[c] = BigInt::one();
            let rep = source.representative(&e)?;
            target.coords_of(&action(&rep))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_columns(target.value.num_generators(), &cols)?;
    let map = GroupMap::new(source.value.clone(), target.value.clone(), m)?;
    Ok(InducedMap { source, target, map })
}

/// The only infinite codomains that ever appear: `(Q/Z)^r` and `R^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolicCodomain {
    QmodZ(usize),
    Real(usize),
}

/// `finite ⊕ (Q/Z)^qz_power ⊕ R^real_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicAnswer {
    pub finite: FgaGroup,
    pub qz_power: usize,
    pub real_power: usize,
}

impl SymbolicAnswer {
    pub fn is_finite(&self) -> bool {
        self.qz_power == 0 && self.real_power == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.finite.is_trivial()
    }
}

impl fmt::Display for SymbolicAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.finite.is_trivial() {
            parts.push(self.finite.to_string());
        }
        match self.qz_power {
            0 => {}
            1 => parts.push("Q/Z".into()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if self.real_power > 0 {
            parts.push(format!("R^{}", self.real_power));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Hom(G, C)` for a symbolic codomain.
///
/// Any homomorphism from the torsion part `T` of `G` into `Q/Z` lands in
/// the `exp(T)`-torsion `(1/N)Z/Z ≅ Z/N`, so `Hom(T, Q/Z)` is computed as
/// `Hom(T, Z/N)`. Free generators contribute whole copies of the codomain.
pub fn hom_symbolic(g: &FgaGroup, c: SymbolicCodomain) -> SymbolicAnswer {
    match c {
        SymbolicCodomain::QmodZ(r) => {
            let t = g.torsion_part();
            let n = t.torsion_exponent();
            let one = hom(&t, &FgaGroup::cyclic(n));
            SymbolicAnswer {
                finite: one.power(r),
                qz_power: g.free_rank() * r,
                real_power: 0,
            }
        }
        SymbolicCodomain::Real(s) => SymbolicAnswer {
            finite: FgaGroup::trivial(),
            qz_power: 0,
            real_power: g.free_rank() * s,
        },
    }
}

fn dual_model(g: &FgaGroup, modulus: &BigInt) -> BifunctorResult {
    compute(Functor::Hom, g, &FgaGroup::cyclic(modulus.clone()))
}

/// Pontryagin dual `X(G) = Hom(G, Q/Z)` of a finite group.
pub fn pontryagin_dual(g: &FgaGroup) -> Result<FgaGroup> {
    if !g.is_torsion() {
        return Err(Error::hypothesis(format!(
            "the Pontryagin dual is only computed for finite groups; {g} has free rank {}",
            g.free_rank()
        )));
    }
    Ok(hom_symbolic(g, SymbolicCodomain::QmodZ(1)).finite)
}

/// The dual of `f: G -> H` as a map `X(H) -> X(G)`, both duals modelled as
/// `Hom(-, Z/N)`; `modulus` must be a common multiple of both exponents.
pub fn pontryagin_dual_map(f: &GroupMap, modulus: &BigInt) -> Result<GroupMap> {
    for g in [f.domain(), f.codomain()] {
        if !g.is_torsion() {
            return Err(Error::hypothesis(format!("{g} is not finite")));
        }
        if !modulus.is_multiple_of(&g.torsion_exponent()) {
            return Err(Error::Validation(format!(
                "modulus {modulus} is not a multiple of the exponent of {g}"
            )));
        }
    }
    Ok(induced_map(Functor::Hom, f, &FgaGroup::cyclic(modulus.clone()), Slot::First)?.map)
}

/// Elements of the dual modelled as `Hom(G, Z/N)` with `N = exp(G)`.
pub(crate) fn dual_with_model(g: &FgaGroup) -> BifunctorResult {
    dual_model(g, &g.torsion_exponent())
}

/// Pure extensions of `G` by `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PextReport {
    pub value: FgaGroup,
    /// For torsionfree `G`: whether `Pext(G, H) ≅ Ext(G, H)` was confirmed.
    pub equals_ext: Option<bool>,
    pub note: &'static str,
}

pub const PEXT_NOTE: &str = "finitely generated first argument: every pure extension splits, so Pext = 0 \
     and the closure of zero in KK is trivial (the whole group is its own Hausdorff quotient)";

/// `Pext(G, H)`, identically zero for finitely generated `G`.
pub fn pext(g: &FgaGroup, h: &FgaGroup) -> PextReport {
    let value = FgaGroup::trivial();
    let equals_ext = g.is_free().then(|| ext(g, h) == value);
    PextReport {
        value,
        equals_ext,
        note: PEXT_NOTE,
    }
}

/// Element of `Hom(G, Z/N)` read as a point of `Q/Z`-valued characters:
/// returns the numerators over `N` for each generator.
pub(crate) fn character_values(model: &BifunctorResult, e: &Element) -> Result<Vec<BigInt>> {
    Ok(model.representative(e.coords())?.row(0))
}
