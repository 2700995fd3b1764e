//! Torsion/free and p-primary decompositions, purity and summand tests,
//! and realization records for a subgroup of a graded group.
//!
//! A realization record houses only K-groups: for `G ⊆ K` it carries
//! `K(A_s) ≅ G`, `K(A_q) ≅ K/G`, the six-term sequence of
//! `0 -> A ⊗ 𝒦 -> A_q -> SA_s -> 0`, and the ladder comparing
//! `K(A_s) -> K(A) -> K(A_q)` with `G -> K -> K/G`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisors, factorize, split_prime};
use crate::error::{Error, Result};
use crate::graded::{require_torsion, GradedGroup, GradedMap, GradedSubgroup, Parity};
use crate::group::FgaGroup;
use crate::map::{cokernel_of, direct_sum_of, find_homomorphism, in_span, intersect_spans, subgroup_of, GroupMap};
use crate::matrix::IntMatrix;
use crate::sequences::{LadderDiagram, LongSequence, ShortExactSeq};

/// Inclusion of the torsion coordinates of a canonical group.
pub fn torsion_inclusion(g: &FgaGroup) -> GroupMap {
    let n = g.num_generators();
    let idx: Vec<usize> = (g.free_rank()..n).collect();
    GroupMap::new(g.torsion_part(), g.clone(), IntMatrix::identity(n).select_cols(&idx))
        .expect("torsion coordinates include")
}

/// Projection onto the free coordinates of a canonical group.
pub fn free_projection(g: &FgaGroup) -> GroupMap {
    let idx: Vec<usize> = (0..g.free_rank()).collect();
    GroupMap::new(
        g.clone(),
        g.free_part(),
        IntMatrix::identity(g.num_generators()).select_rows(&idx),
    )
    .expect("free coordinates project")
}

fn graded_map(f: impl Fn(Parity) -> GroupMap, degree: Parity) -> GradedMap {
    GradedMap::new(degree, f(Parity::Even), f(Parity::Odd))
}

/// `K_t` with its inclusion `θ`.
pub fn torsion_subgroup(k: &GradedGroup) -> (GradedGroup, GradedMap) {
    let theta = graded_map(|p| torsion_inclusion(k.get(p)), Parity::Even);
    (theta.source(), theta)
}

/// `K / K_t` with the projection `π`.
pub fn torsionfree_quotient(k: &GradedGroup) -> (GradedGroup, GradedMap) {
    let pi = graded_map(|p| free_projection(k.get(p)), Parity::Even);
    (pi.target(), pi)
}

/// `K_t = ⊕_p K_p` for a torsion graded group.
#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub input: GradedGroup,
    pub parts: BTreeMap<BigInt, GradedGroup>,
    pub inclusions: BTreeMap<BigInt, GradedMap>,
    /// Canonical form of `⊕_p K_p`.
    pub sum: GradedGroup,
    /// `⊕_p K_p -> K`, verified to be an isomorphism.
    pub iso: GradedMap,
}

/// p-part of a canonical group read off its invariant factors.
pub fn p_part(g: &FgaGroup, p: &BigInt) -> FgaGroup {
    let orders: Vec<BigInt> = g
        .torsion()
        .iter()
        .map(|d| num_traits::pow(p.clone(), split_prime(d, p).0 as usize))
        .collect();
    FgaGroup::from_orders(0, &orders).expect("prime powers form a valid group")
}

/// Primes dividing the torsion exponent.
pub fn primes_of(g: &FgaGroup) -> Vec<BigInt> {
    factorize(&g.torsion_exponent()).into_iter().map(|(p, _)| p).collect()
}

/// The p-primary subgroup `⟨m_i e_i⟩` where `d_i = p^a m_i`.
fn primary_subgroup(g: &FgaGroup, p: &BigInt) -> (FgaGroup, GroupMap) {
    let n = g.num_generators();
    let mut gens = IntMatrix::zeros(n, n);
    for (i, d) in g.orders().iter().enumerate() {
        if !d.is_zero() {
            gens.set(i, i, split_prime(d, p).1);
        }
    }
    let (h, incl) = subgroup_of(&g.orders(), &gens);
    let map = GroupMap::new(h.clone(), g.clone(), incl).expect("subgroup inclusion");
    (h, map)
}

pub fn primary_decomposition(k: &GradedGroup) -> Result<PrimaryDecomposition> {
    require_torsion(k, "the input of the primary decomposition")?;
    let primes: BTreeSet<BigInt> = Parity::BOTH.iter().flat_map(|&p| primes_of(k.get(p))).collect();
    let mut parts = BTreeMap::new();
    let mut inclusions = BTreeMap::new();
    for prime in &primes {
        let (h0, i0) = primary_subgroup(&k.even, prime);
        let (h1, i1) = primary_subgroup(&k.odd, prime);
        let part = GradedGroup::new(h0, h1);
        for p in Parity::BOTH {
            if part.get(p) != &p_part(k.get(p), prime) {
                return Err(Error::internal(format!(
                    "{prime}-primary subgroup disagrees with the {prime}-part of the invariant factors"
                )));
            }
            if part
                .get(p)
                .torsion()
                .iter()
                .any(|d| factorize(d).iter().any(|(q, _)| q != prime))
            {
                return Err(Error::internal(format!("{prime}-part is not {prime}-primary")));
            }
        }
        parts.insert(prime.clone(), part);
        inclusions.insert(prime.clone(), GradedMap::new(Parity::Even, i0, i1));
    }

    let component = |p: Parity| -> Result<(FgaGroup, GroupMap)> {
        let summands: Vec<FgaGroup> = parts.values().map(|g| g.get(p).clone()).collect();
        let ds = direct_sum_of(&summands);
        let mut iso = GroupMap::zero(&ds.group, k.get(p));
        for (incl, proj) in inclusions.values().zip(&ds.projections) {
            iso = iso.add(&incl.component(p).compose(proj)?)?;
        }
        check_inverse(&iso)?;
        Ok((ds.group, iso))
    };
    let (s0, iso0) = component(Parity::Even)?;
    let (s1, iso1) = component(Parity::Odd)?;
    Ok(PrimaryDecomposition {
        input: k.clone(),
        parts,
        inclusions,
        sum: GradedGroup::new(s0, s1),
        iso: GradedMap::new(Parity::Even, iso0, iso1),
    })
}

/// Verifies `f` is an isomorphism by composing with its inverse both ways.
fn check_inverse(f: &GroupMap) -> Result<GroupMap> {
    let inv = f.inverse()?;
    if f.compose(&inv)? != GroupMap::identity(f.codomain()) || inv.compose(f)? != GroupMap::identity(f.domain()) {
        return Err(Error::internal("isomorphism check failed"));
    }
    Ok(inv)
}

/// Evidence that `G` is a direct summand of `K`.
#[derive(Clone, Debug)]
pub struct SummandWitness {
    /// `r: K -> G` with `r ∘ θ = id`.
    pub retraction: GradedMap,
    /// `K(A_s) ⊕ K(A_q)`.
    pub sum: GradedGroup,
    /// `(r, q): K -> K(A_s) ⊕ K(A_q)`, an isomorphism.
    pub splitting: GradedMap,
}

#[derive(Clone, Debug)]
pub struct RealizationRecord {
    pub input: GradedGroup,
    pub subgroup: GradedSubgroup,
    pub k_of_as: GradedGroup,
    pub k_of_aq: GradedGroup,
    /// `K(SA_s)`, the suspension of `K(A_s)`.
    pub k_of_sas: GradedGroup,
    pub theta: GradedMap,
    pub q: GradedMap,
    /// Boundary `K(SA_s) -> K(A)` of degree one; injective.
    pub delta: GradedMap,
    /// `K_0(A) -> K_0(A_q) -> K_0(SA_s) -> K_1(A) -> K_1(A_q) -> K_1(SA_s) -> K_0(A) -> K_0(A_q)`.
    pub six_term: LongSequence,
    /// The top rows `0 -> K_j(A_s) -> K_j(A) -> K_j(A_q) -> 0`.
    pub rows: [ShortExactSeq; 2],
    /// Ladders against `0 -> G_j -> K_j -> K_j/G_j -> 0`, one per degree.
    pub ladders: [LadderDiagram; 2],
    pub summand: Option<SummandWitness>,
}

impl RealizationRecord {
    pub fn is_summand(&self) -> bool {
        self.summand.is_some()
    }
}

fn map_by_columns(
    domain: &FgaGroup,
    codomain: &FgaGroup,
    f: impl Fn(usize) -> Result<Vec<BigInt>>,
) -> Result<GroupMap> {
    let cols = (0..domain.num_generators()).map(f).collect::<Result<Vec<_>>>()?;
    GroupMap::new(
        domain.clone(),
        codomain.clone(),
        IntMatrix::from_columns(codomain.num_generators(), &cols)?,
    )
}

struct Degree {
    row: ShortExactSeq,
    ladder: LadderDiagram,
}

fn realize_degree(k: &FgaGroup, raw: &IntMatrix, theta: &GroupMap) -> Result<Degree> {
    let (kq, q) = theta.cokernel();
    let row = ShortExactSeq::new(theta.clone(), q.clone())?;

    // Bottom row straight from the generators.
    let (g, g_incl) = subgroup_of(&k.orders(), raw);
    let iota = GroupMap::new(g.clone(), k.clone(), g_incl)?;
    let c = cokernel_of(&k.orders(), raw);
    let pi = GroupMap::new(k.clone(), c.group.clone(), c.to_canon)?;

    let solve_col = |f: &GroupMap, y| -> Result<Vec<BigInt>> {
        f.solve(&y)?
            .map(|x| x.into_coords())
            .ok_or_else(|| Error::internal("ladder vertical map has no preimage"))
    };
    let left = map_by_columns(theta.domain(), &g, |i| {
        solve_col(&iota, theta.apply(&theta.domain().generator(i))?)
    })?;
    let right = map_by_columns(&kq, &c.group, |i| {
        let lift = q
            .solve(&kq.generator(i))?
            .ok_or_else(|| Error::internal("quotient map not onto"))?;
        Ok(pi.apply(&lift)?.into_coords())
    })?;
    let ladder = LadderDiagram::new([theta.clone(), q], [iota, pi], [left, GroupMap::identity(k), right])?;
    if !ladder.verticals_are_isomorphisms() {
        return Err(Error::internal("ladder vertical maps are not isomorphisms"));
    }
    Ok(Degree { row, ladder })
}

pub fn realize(k: &GradedGroup, g: &GradedSubgroup) -> Result<RealizationRecord> {
    if g.ambient() != k {
        return Err(Error::Validation(format!(
            "subgroup lives in {}, not in {k}",
            g.ambient()
        )));
    }
    let (k_of_as, theta) = g.close();
    let raw = |p: Parity| -> Result<IntMatrix> {
        let cols: Vec<Vec<BigInt>> = g.generators(p).iter().map(|e| e.coords().to_vec()).collect();
        IntMatrix::from_columns(k.get(p).num_generators(), &cols)
    };
    let d0 = realize_degree(&k.even, &raw(Parity::Even)?, theta.component(Parity::Even))?;
    let d1 = realize_degree(&k.odd, &raw(Parity::Odd)?, theta.component(Parity::Odd))?;

    let q = GradedMap::new(Parity::Even, d0.row.g().clone(), d1.row.g().clone());
    let k_of_aq = q.target();
    let k_of_sas = k_of_as.suspend();
    // K_j(SA_s) = K_{j-1}(A_s), and δ reads back as θ in degree j-1.
    let delta = GradedMap::new(
        Parity::Odd,
        theta.component(Parity::Odd).clone(),
        theta.component(Parity::Even).clone(),
    );
    if !delta.is_injective() {
        return Err(Error::internal("boundary map is not injective"));
    }

    let zero = |p: Parity| GroupMap::zero(k_of_aq.get(p), k_of_sas.get(p));
    let six_term = LongSequence::new(vec![
        q.component(Parity::Even).clone(),
        zero(Parity::Even),
        delta.component(Parity::Even).clone(),
        q.component(Parity::Odd).clone(),
        zero(Parity::Odd),
        delta.component(Parity::Odd).clone(),
        q.component(Parity::Even).clone(),
    ])?;
    if let Some(n) = six_term.check_exact().first_failure() {
        return Err(Error::internal(format!(
            "six-term sequence not exact at node {}",
            n.position
        )));
    }

    let summand = summand_witness(&theta, &q)?;
    Ok(RealizationRecord {
        input: k.clone(),
        subgroup: g.clone(),
        k_of_as,
        k_of_aq,
        k_of_sas,
        theta,
        q,
        delta,
        six_term,
        rows: [d0.row, d1.row],
        ladders: [d0.ladder, d1.ladder],
        summand,
    })
}

fn summand_witness(theta: &GradedMap, q: &GradedMap) -> Result<Option<SummandWitness>> {
    let (Some(r0), Some(r1)) = (
        is_summand(theta.component(Parity::Even))?,
        is_summand(theta.component(Parity::Odd))?,
    ) else {
        return Ok(None);
    };
    let split = |r: &GroupMap, q: &GroupMap| -> Result<(FgaGroup, GroupMap)> {
        let ds = direct_sum_of(&[r.codomain().clone(), q.codomain().clone()]);
        let s = ds.injections[0].compose(r)?.add(&ds.injections[1].compose(q)?)?;
        check_inverse(&s)?;
        Ok((ds.group, s))
    };
    let (s0, m0) = split(&r0, q.component(Parity::Even))?;
    let (s1, m1) = split(&r1, q.component(Parity::Odd))?;
    Ok(Some(SummandWitness {
        retraction: GradedMap::new(Parity::Even, r0, r1),
        sum: GradedGroup::new(s0, s1),
        splitting: GradedMap::new(Parity::Even, m0, m1),
    }))
}

/// Realization for `G = K_t`; the torsion subgroup of a finitely generated
/// group is always a summand, and this is checked.
pub fn realize_torsion(k: &GradedGroup) -> Result<RealizationRecord> {
    let unit_vectors = |g: &FgaGroup| -> Vec<Vec<BigInt>> {
        (g.free_rank()..g.num_generators())
            .map(|i| g.generator(i).into_coords())
            .collect()
    };
    let sub = GradedSubgroup::new(k.clone(), unit_vectors(&k.even), unit_vectors(&k.odd))?;
    let record = realize(k, &sub)?;
    if record.summand.is_none() {
        return Err(Error::internal("torsion subgroup not detected as a summand"));
    }
    Ok(record)
}

fn require_injective(incl: &GroupMap) -> Result<()> {
    if incl.is_injective() {
        Ok(())
    } else {
        Err(Error::NotInjective)
    }
}

/// Whether `nH = H ∩ nG` for every `n ≥ 1`.
///
/// If `h = n g` with `h ∉ nH`, let `m` be the order of `g + H` in `G/H`.
/// Then `mg ∈ H ∩ mG`, and `mg ∈ mH` would force `h ∈ nH`. So a failure
/// always shows up at some `m` dividing the exponent of `torsion(G/H)`,
/// and only those `n` are tested.
pub fn is_pure(incl: &GroupMap) -> Result<bool> {
    require_injective(incl)?;
    let g = incl.codomain();
    let orders = g.orders();
    let (quotient, _) = incl.cokernel();
    let exp = quotient.torsion_exponent();
    for n in divisors(&exp).into_iter().filter(|n| !n.is_one()) {
        let ng = IntMatrix::scalar(g.num_generators(), &n);
        let nh = &ng * incl.matrix();
        let meet = intersect_spans(&orders, &ng, incl.matrix());
        for c in 0..meet.cols() {
            if !in_span(&orders, &nh, &meet.column(c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A retraction `r: G -> H` with `r ∘ incl = id_H`, if one exists.
pub fn is_summand(incl: &GroupMap) -> Result<Option<GroupMap>> {
    require_injective(incl)?;
    let h = incl.domain();
    let id = GroupMap::identity(h);
    find_homomorphism(incl.codomain(), h, &id, incl, &id)
}
