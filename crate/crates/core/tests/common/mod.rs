//! Random inputs and brute-force oracles shared by the integration tests.
//! Nothing here calls the Smith normal form or the bifunctor engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use kshadow::graded::{GradedGroup, Parity};
use kshadow::group::{Element, FgaGroup};
use kshadow::map::GroupMap;
use kshadow::matrix::IntMatrix;
use kshadow::sequences::LadderDiagram;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Prime factorization by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of `Z/o_1 + ... + Z/o_k` by regrouping prime powers.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders {
        for (p, e) in factor(o) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

/// Canonical form of `Z^free + ⊕ Z/o`, computed without the library.
pub fn oracle_group(free: usize, orders: &[u64]) -> FgaGroup {
    let inv: Vec<BigInt> = invariant_factors(orders).into_iter().map(BigInt::from).collect();
    FgaGroup::new(free, inv).expect("oracle produces a valid divisor chain")
}

pub fn orders_u64(g: &FgaGroup) -> Vec<u64> {
    g.torsion().iter().map(|d| u64::try_from(d).expect("small")).collect()
}

pub fn order(g: &FgaGroup) -> Option<u64> {
    g.is_finite().then(|| orders_u64(g).iter().product())
}

/// Cyclic description `(free, orders)` of a group.
pub type Cyc = (usize, Vec<u64>);

pub fn cyc(g: &FgaGroup) -> Cyc {
    (g.free_rank(), orders_u64(g))
}

pub fn random_cyc(rng: &mut impl Rng, max_free: usize, max_terms: usize, max_order: u64) -> Cyc {
    let free = rng.gen_range(0..=max_free);
    let n = rng.gen_range(0..=max_terms);
    (free, (0..n).map(|_| rng.gen_range(2..=max_order)).collect())
}

pub fn random_group(rng: &mut impl Rng, max_free: usize, max_terms: usize, max_order: u64) -> FgaGroup {
    let (f, o) = random_cyc(rng, max_free, max_terms, max_order);
    oracle_group(f, &o)
}

pub fn random_graded(rng: &mut impl Rng, max_free: usize, max_terms: usize, max_order: u64) -> GradedGroup {
    GradedGroup::new(
        random_group(rng, max_free, max_terms, max_order),
        random_group(rng, max_free, max_terms, max_order),
    )
}

pub fn random_torsion_graded(rng: &mut impl Rng, max_terms: usize, max_order: u64) -> GradedGroup {
    random_graded(rng, 0, max_terms, max_order)
}

/// Every element of a finite group, as normalized coordinates.
pub fn enumerate(g: &FgaGroup) -> Vec<Vec<BigInt>> {
    assert!(g.is_finite());
    let mut out = vec![Vec::new()];
    for d in orders_u64(g) {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

pub fn apply(f: &GroupMap, x: &[BigInt]) -> Vec<BigInt> {
    f.apply_coords(x).expect("shapes match").into_coords()
}

pub fn kernel_set(f: &GroupMap) -> HashSet<Vec<BigInt>> {
    enumerate(f.domain())
        .into_iter()
        .filter(|x| apply(f, x).iter().all(|c| c == &BigInt::from(0)))
        .collect()
}

pub fn image_set(f: &GroupMap) -> HashSet<Vec<BigInt>> {
    enumerate(f.domain()).iter().map(|x| apply(f, x)).collect()
}

/// Exactness at every node of `0 -> N_0 -> ... -> N_k -> 0` by enumeration.
pub fn exact_by_enumeration(maps: &[GroupMap]) -> bool {
    let zero_in = |g: &FgaGroup| -> HashSet<Vec<BigInt>> { [g.zero_element().into_coords()].into_iter().collect() };
    let first = maps.first().expect("nonempty");
    if kernel_set(first) != zero_in(first.domain()) {
        return false;
    }
    for w in maps.windows(2) {
        if image_set(&w[0]) != kernel_set(&w[1]) {
            return false;
        }
    }
    let last = maps.last().expect("nonempty");
    image_set(last).len() as u64 == order(last.codomain()).expect("finite")
}

/// Random homomorphism `Z^r -> g` given by random columns.
pub fn random_columns(rng: &mut impl Rng, g: &FgaGroup, r: usize, spread: i64) -> GroupMap {
    let n = g.num_generators();
    let entries: Vec<i64> = (0..n * r).map(|_| rng.gen_range(-spread..=spread)).collect();
    GroupMap::new(FgaGroup::free(r), g.clone(), IntMatrix::from_i64(n, r, &entries)).expect("free domain")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `|Hom(G, H)|` from cyclic decompositions, `None` when infinite.
pub fn hom_order(g: &Cyc, h: &Cyc) -> Option<u64> {
    if g.0 > 0 && h.0 > 0 {
        return None;
    }
    let mut n = 1u64;
    for _ in 0..g.0 {
        n *= h.1.iter().product::<u64>();
    }
    for &a in &g.1 {
        for &b in &h.1 {
            n *= gcd(a, b);
        }
    }
    Some(n)
}

/// `|Ext(G, H)|` from cyclic decompositions, `None` when infinite.
pub fn ext_order(g: &Cyc, h: &Cyc) -> Option<u64> {
    let mut n = 1u64;
    for &a in &g.1 {
        for _ in 0..h.0 {
            n *= a;
        }
        for &b in &h.1 {
            n *= gcd(a, b);
        }
    }
    Some(n)
}

pub fn part(k: &GradedGroup, p: Parity) -> Cyc {
    cyc(k.get(p))
}

pub fn is_prime_power_of(q: u64, p: u64) -> bool {
    let mut q = q;
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

pub fn element(g: &FgaGroup, coords: Vec<BigInt>) -> Element {
    g.element(coords).expect("valid coordinates")
}

pub fn random_finite(r: &mut impl Rng, bound: u64) -> FgaGroup {
    let mut orders = Vec::new();
    let mut n = 1;
    for _ in 0..3 {
        let o = r.gen_range(2..=12);
        if n * o <= bound {
            n *= o;
            orders.push(o);
        }
    }
    oracle_group(0, &orders)
}

/// Random homomorphism between finite canonical groups: the image of a
/// generator of order `d` in a factor of order `d'` is a multiple of
/// `d' / gcd(d, d')`.
pub fn random_hom(r: &mut impl Rng, g: &FgaGroup, h: &FgaGroup) -> GroupMap {
    let (go, ho) = (orders_u64(g), orders_u64(h));
    let mut entries = vec![0i64; ho.len() * go.len()];
    for (i, &d) in go.iter().enumerate() {
        for (k, &e) in ho.iter().enumerate() {
            let step = e / gcd(d, e);
            entries[k * go.len() + i] = (r.gen_range(0..e) * step % e) as i64;
        }
    }
    GroupMap::new(g.clone(), h.clone(), IntMatrix::from_i64(ho.len(), go.len(), &entries)).unwrap()
}

/// Matrix of the map `dom -> cod` sending generator `i` to `images[i]`.
pub fn from_images(dom: &FgaGroup, cod: &FgaGroup, images: Vec<Vec<BigInt>>) -> GroupMap {
    GroupMap::new(
        dom.clone(),
        cod.clone(),
        IntMatrix::from_columns(cod.num_generators(), &images).unwrap(),
    )
    .unwrap()
}

/// A ladder with rows `0 -> A -> B -> B/A -> 0`, `0 -> A' -> B' -> B'/A' -> 0`
/// and a random middle vertical map.
pub fn random_ladder(r: &mut impl Rng) -> LadderDiagram {
    let b = random_finite(r, 64);
    let b2 = random_finite(r, 64);
    let beta = random_hom(r, &b, &b2);
    let gens = r.gen_range(0..=2);
    let (a, f) = random_columns(r, &b, gens, 6).image();
    let (_, g) = f.cokernel();
    let mut cols: Vec<Vec<BigInt>> = (0..a.num_generators())
        .map(|i| apply(&beta, &apply(&f, a.generator(i).coords())))
        .collect();
    for _ in 0..r.gen_range(0..=1) {
        cols.push(enumerate(&b2).choose(r).unwrap().clone());
    }
    let gen = GroupMap::new(
        FgaGroup::free(cols.len()),
        b2.clone(),
        IntMatrix::from_columns(b2.num_generators(), &cols).unwrap(),
    )
    .unwrap();
    let (a2, f2) = gen.image();
    let (_, g2) = f2.cokernel();
    let alpha_cols = (0..a.num_generators())
        .map(|i| {
            let y = beta.apply(&f.apply(&a.generator(i)).unwrap()).unwrap();
            f2.solve(&y).unwrap().unwrap().into_coords()
        })
        .collect();
    let alpha = from_images(&a, &a2, alpha_cols);
    let c = g.codomain().clone();
    let gamma_cols = (0..c.num_generators())
        .map(|i| {
            let lift = g.solve(&c.generator(i)).unwrap().unwrap();
            apply(&g2, &apply(&beta, lift.coords()))
        })
        .collect();
    let gamma = from_images(&c, g2.codomain(), gamma_cols);
    LadderDiagram::new([f, g], [f2, g2], [alpha, beta, gamma]).unwrap()
}
