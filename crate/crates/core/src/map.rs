//! Homomorphisms between canonical groups, and the subgroup/quotient
//! machinery that every higher module leans on.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{normalize, normalize_rows, relation_matrix, Canonical, Element, FgaGroup, Presentation};
use crate::matrix::IntMatrix;
use crate::snf::{integer_kernel, solve_system};

/// A homomorphism given by its matrix over canonical generators: column `j`
/// is the image of domain generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMap {
    domain: FgaGroup,
    codomain: FgaGroup,
    matrix: IntMatrix,
}

impl GroupMap {
    /// Checks shape and well-definedness, then reduces torsion rows.
    pub fn new(domain: FgaGroup, codomain: FgaGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(Error::shape(format!(
                "{}x{} matrix for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain,
                codomain
            )));
        }
        let cod_orders = codomain.orders();
        let matrix = normalize_rows(&cod_orders, &matrix);
        for (j, d) in domain.torsion().iter().enumerate() {
            let col = domain.free_rank() + j;
            let scaled: Vec<BigInt> = matrix.column(col).iter().map(|x| x * d).collect();
            if normalize(&cod_orders, &scaled).iter().any(|x| !x.is_zero()) {
                return Err(Error::IllDefinedMap {
                    generator: col,
                    order: d.to_string(),
                });
            }
        }
        Ok(GroupMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(g: &FgaGroup) -> Self {
        GroupMap {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: normalize_rows(&g.orders(), &IntMatrix::identity(g.num_generators())),
        }
    }

    pub fn zero(domain: &FgaGroup, codomain: &FgaGroup) -> Self {
        GroupMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FgaGroup, k: impl Into<BigInt>) -> Self {
        let m = IntMatrix::scalar(g.num_generators(), &k.into());
        GroupMap::new(g.clone(), g.clone(), m).expect("scalar maps are well defined")
    }

    pub fn domain(&self) -> &FgaGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgaGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.apply_coords(x.coords())
    }

    /// Applies the map to arbitrary (unreduced) domain coordinates.
    pub fn apply_coords(&self, x: &[BigInt]) -> Result<Element> {
        if x.len() != self.domain.num_generators() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates for domain {}",
                x.len(),
                self.domain
            )));
        }
        Ok(Element(self.codomain.normalize(&self.matrix.mul_vec(x))))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupMap) -> Result<GroupMap> {
        if inner.codomain != self.domain {
            return Err(Error::shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        GroupMap::new(
            inner.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &inner.matrix,
        )
    }

    pub fn add(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::shape("sum of maps with different endpoints"));
        }
        let data: Vec<BigInt> = self
            .matrix
            .entries()
            .iter()
            .zip(other.matrix.entries())
            .map(|(a, b)| a + b)
            .collect();
        let m = IntMatrix::from_vec(self.matrix.rows(), self.matrix.cols(), data)?;
        GroupMap::new(self.domain.clone(), self.codomain.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `(ker f, inclusion into the domain)`.
    pub fn kernel(&self) -> (FgaGroup, GroupMap) {
        let (g, incl) = kernel_of(&self.domain.orders(), &self.codomain.orders(), &self.matrix);
        let map = GroupMap {
            domain: g.clone(),
            codomain: self.domain.clone(),
            matrix: incl,
        };
        (g, map)
    }

    /// `(im f, inclusion into the codomain)`.
    pub fn image(&self) -> (FgaGroup, GroupMap) {
        let (g, incl) = subgroup_of(&self.codomain.orders(), &self.matrix);
        let map = GroupMap {
            domain: g.clone(),
            codomain: self.codomain.clone(),
            matrix: incl,
        };
        (g, map)
    }

    /// `(coker f, projection from the codomain)`.
    pub fn cokernel(&self) -> (FgaGroup, GroupMap) {
        let c = cokernel_of(&self.codomain.orders(), &self.matrix);
        let map = GroupMap {
            domain: self.codomain.clone(),
            codomain: c.group.clone(),
            matrix: c.to_canon,
        };
        (c.group, map)
    }

    /// Some `x` with `f(x) = y`, or `None`.
    pub fn solve(&self, y: &Element) -> Result<Option<Element>> {
        let y = self.codomain.element(y.coords().to_vec())?;
        Ok(solve_in(&self.domain.orders(), &self.codomain.orders(), &self.matrix, y.coords()).map(Element))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_isomorphism() {
            return Err(Error::Validation("map is not an isomorphism".into()));
        }
        let cols = (0..self.codomain.num_generators())
            .map(|j| {
                self.solve(&self.codomain.generator(j))?
                    .map(Element::into_coords)
                    .ok_or_else(|| Error::internal("surjective map failed to hit a generator"))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_columns(self.domain.num_generators(), &cols)?;
        GroupMap::new(self.codomain.clone(), self.domain.clone(), m)
    }
}

impl fmt::Display for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.domain, self.codomain, self.matrix)
    }
}

/// Subgroup of the group with generator orders `orders` spanned by the
/// columns of `gens`; returns its canonical form and the inclusion matrix.
pub(crate) fn subgroup_of(orders: &[BigInt], gens: &IntMatrix) -> (FgaGroup, IntMatrix) {
    let s = gens.cols();
    let rel = relation_matrix(orders);
    let k = integer_kernel(&gens.hstack(&rel));
    let p = k.row_range(0, s);
    let c = Presentation {
        generators: s,
        relations: p,
    }
    .canonicalize_with_maps();
    let incl = normalize_rows(orders, &(gens * &c.from_canon));
    (c.group, incl)
}

pub(crate) fn kernel_of(dom_orders: &[BigInt], cod_orders: &[BigInt], m: &IntMatrix) -> (FgaGroup, IntMatrix) {
    let n = m.cols();
    let k = integer_kernel(&m.hstack(&relation_matrix(cod_orders)));
    subgroup_of(dom_orders, &k.row_range(0, n))
}

pub(crate) fn cokernel_of(cod_orders: &[BigInt], m: &IntMatrix) -> Canonical {
    Presentation {
        generators: cod_orders.len(),
        relations: relation_matrix(cod_orders).hstack(m),
    }
    .canonicalize_with_maps()
}

pub(crate) fn solve_in(
    dom_orders: &[BigInt],
    cod_orders: &[BigInt],
    m: &IntMatrix,
    y: &[BigInt],
) -> Option<Vec<BigInt>> {
    let n = m.cols();
    let w = solve_system(&m.hstack(&relation_matrix(cod_orders)), y)?;
    Some(normalize(dom_orders, &w[..n]))
}

/// Whether `y` lies in the span of the columns of `gens` inside the group
/// with generator orders `orders`.
pub(crate) fn in_span(orders: &[BigInt], gens: &IntMatrix, y: &[BigInt]) -> bool {
    let free = vec![BigInt::zero(); gens.cols()];
    solve_in(&free, orders, gens, y).is_some()
}

/// Generators (columns) of the intersection of two spans.
pub(crate) fn intersect_spans(orders: &[BigInt], a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = integer_kernel(&a.hstack(b).hstack(&relation_matrix(orders)));
    normalize_rows(orders, &(a * &k.row_range(0, a.cols())))
}

/// Finds a homomorphism `x: domain -> codomain` with
/// `left ∘ x ∘ right = target`, where `left: codomain -> W`,
/// `right: V -> domain` and `target: V -> W`.
///
/// This is one integer linear system: the unknown matrix entries, plus a
/// slack variable for every congruence coming from a torsion generator
/// (well-definedness of `x`, and equality in `W`).
/// Coefficients over the unknowns, modulus, right-hand side.
type Congruence = (Vec<(usize, BigInt)>, BigInt, BigInt);

pub fn find_homomorphism(
    domain: &FgaGroup,
    codomain: &FgaGroup,
    left: &GroupMap,
    right: &GroupMap,
    target: &GroupMap,
) -> Result<Option<GroupMap>> {
    if left.domain() != codomain
        || right.codomain() != domain
        || target.domain() != right.domain()
        || target.codomain() != left.codomain()
    {
        return Err(Error::shape("inconsistent endpoints for find_homomorphism"));
    }
    let ke = codomain.num_generators();
    let kd = domain.num_generators();
    let kv = right.domain().num_generators();
    let e_orders = codomain.orders();
    let d_orders = domain.orders();
    let w_orders = left.codomain().orders();
    let unknown = |a: usize, b: usize| a + ke * b;
    let nx = ke * kd;

    let mut eqs: Vec<Congruence> = Vec::new();
    for (b, eb) in d_orders.iter().enumerate() {
        if eb.is_zero() {
            continue;
        }
        for (a, ha) in e_orders.iter().enumerate() {
            eqs.push((vec![(unknown(a, b), eb.clone())], ha.clone(), BigInt::zero()));
        }
    }
    let l = left.matrix();
    let r = right.matrix();
    for (w, wo) in w_orders.iter().enumerate() {
        for c in 0..kv {
            let mut coeffs = Vec::new();
            for a in 0..ke {
                let lw = l.get(w, a);
                if lw.is_zero() {
                    continue;
                }
                for b in 0..kd {
                    let rb = r.get(b, c);
                    if !rb.is_zero() {
                        coeffs.push((unknown(a, b), lw * rb));
                    }
                }
            }
            eqs.push((coeffs, wo.clone(), target.matrix().get(w, c).clone()));
        }
    }
    let slacks: Vec<usize> = (0..eqs.len()).filter(|&i| !eqs[i].1.is_zero()).collect();
    let ncols = nx + slacks.len();
    let mut sys = IntMatrix::zeros(eqs.len(), ncols);
    let mut rhs = Vec::with_capacity(eqs.len());
    let mut slack_col = nx;
    for (i, (coeffs, modulus, value)) in eqs.iter().enumerate() {
        for (j, c) in coeffs {
            let cur = sys.get(i, *j) + c;
            sys.set(i, *j, cur);
        }
        if !modulus.is_zero() {
            sys.set(i, slack_col, modulus.clone());
            slack_col += 1;
        }
        rhs.push(value.clone());
    }
    let Some(sol) = solve_system(&sys, &rhs) else {
        return Ok(None);
    };
    let mut x = IntMatrix::zeros(ke, kd);
    for a in 0..ke {
        for b in 0..kd {
            x.set(a, b, sol[unknown(a, b)].clone());
        }
    }
    GroupMap::new(domain.clone(), codomain.clone(), x).map(Some)
}

/// A canonical direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgaGroup,
    pub injections: Vec<GroupMap>,
    pub projections: Vec<GroupMap>,
}

/// Canonical form of `⊕ summands` with injections and projections.
pub fn direct_sum_of(summands: &[FgaGroup]) -> DirectSum {
    let mut orders = Vec::new();
    let mut offsets = Vec::new();
    for s in summands {
        offsets.push(orders.len());
        orders.extend(s.orders());
    }
    let c = Presentation::diagonal(&orders).canonicalize_with_maps();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (s, &off) in summands.iter().zip(&offsets) {
        let idx: Vec<usize> = (off..off + s.num_generators()).collect();
        injections.push(GroupMap {
            domain: s.clone(),
            codomain: c.group.clone(),
            matrix: c.to_canon.select_cols(&idx),
        });
        projections.push(GroupMap {
            domain: c.group.clone(),
            codomain: s.clone(),
            matrix: normalize_rows(&s.orders(), &c.from_canon.select_rows(&idx)),
        });
    }
    DirectSum {
        group: c.group,
        injections,
        projections,
    }
}

/// Kernel of `f` with its inclusion.
pub fn kernel(f: &GroupMap) -> (FgaGroup, GroupMap) {
    f.kernel()
}

/// Image of `f` with its inclusion.
pub fn image(f: &GroupMap) -> (FgaGroup, GroupMap) {
    f.image()
}

/// Cokernel of `f` with its projection.
pub fn cokernel(f: &GroupMap) -> (FgaGroup, GroupMap) {
    f.cokernel()
}

/// Preimage search: some `x` with `f(x) = y`.
pub fn solve(f: &GroupMap, y: &Element) -> Result<Option<Element>> {
    f.solve(y)
}
