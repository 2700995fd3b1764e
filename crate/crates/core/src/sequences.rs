//! Exact sequences, splitting, and the snake lemma with an explicit
//! connecting homomorphism.
//!
//! A [`LadderDiagram`] is two rows `A -f-> B -g-> C` and `A' -f'-> B' -g'-> C'`
//! joined by vertical maps `a`, `b`, `c`. [`snake`] requires the classical
//! hypotheses: the top row `A -> B -> C -> 0` is exact, and the bottom row
//! `0 -> A' -> B' -> C'` is exact. It returns
//!
//! ```text
//! ker a -> ker b -> ker c -δ-> coker a -> coker b -> coker c
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{Element, FgaGroup};
use crate::map::{find_homomorphism, GroupMap};
use crate::matrix::IntMatrix;

/// A composable chain `G_0 -> G_1 -> ... -> G_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongSequence {
    nodes: Vec<FgaGroup>,
    maps: Vec<GroupMap>,
}

impl LongSequence {
    pub fn new(maps: Vec<GroupMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Validation("a sequence needs at least one map".into()));
        }
        for (i, w) in maps.windows(2).enumerate() {
            if w[0].codomain() != w[1].domain() {
                return Err(Error::Validation(format!(
                    "maps {i} and {} are not composable: {} vs {}",
                    i + 1,
                    w[0].codomain(),
                    w[1].domain()
                )));
            }
        }
        let mut nodes = vec![maps[0].domain().clone()];
        nodes.extend(maps.iter().map(|m| m.codomain().clone()));
        Ok(LongSequence { nodes, maps })
    }

    /// `0 -> A -> B -> C -> 0` including the zero endpoints.
    pub fn from_short(seq: &ShortExactSeq) -> Self {
        Self::padded(vec![seq.f.clone(), seq.g.clone()])
    }

    /// Prepends `0 -> first` and appends `last -> 0`.
    pub fn padded(maps: Vec<GroupMap>) -> Self {
        let zero = FgaGroup::trivial();
        let mut all = vec![GroupMap::zero(&zero, maps[0].domain())];
        let last = maps.last().expect("nonempty").codomain().clone();
        all.extend(maps);
        all.push(GroupMap::zero(&last, &zero));
        LongSequence::new(all).expect("padding preserves composability")
    }

    pub fn nodes(&self) -> &[FgaGroup] {
        &self.nodes
    }

    pub fn maps(&self) -> &[GroupMap] {
        &self.maps
    }

    pub fn check_exact(&self) -> ExactnessReport {
        let nodes = (1..self.nodes.len() - 1)
            .map(|i| NodeExactness {
                position: i,
                failure: exactness_failure(&self.maps[i - 1], &self.maps[i]),
            })
            .collect();
        ExactnessReport { nodes }
    }
}

/// Why exactness fails at a node, with a concrete element of that node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessFailure {
    /// `witness = f(x)` for a generator `x`, but `g(witness) != 0`.
    ImageNotInKernel { witness: Element },
    /// `g(witness) = 0` but `witness` has no preimage under `f`.
    KernelNotInImage { witness: Element },
}

impl ExactnessFailure {
    pub fn witness(&self) -> &Element {
        match self {
            ExactnessFailure::ImageNotInKernel { witness } | ExactnessFailure::KernelNotInImage { witness } => witness,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            ExactnessFailure::ImageNotInKernel { .. } => "image not contained in kernel",
            ExactnessFailure::KernelNotInImage { .. } => "kernel not contained in image",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeExactness {
    pub position: usize,
    pub failure: Option<ExactnessFailure>,
}

impl NodeExactness {
    pub fn is_exact(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeExactness>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(NodeExactness::is_exact)
    }

    pub fn first_failure(&self) -> Option<&NodeExactness> {
        self.nodes.iter().find(|n| !n.is_exact())
    }
}

fn exactness_failure(f: &GroupMap, g: &GroupMap) -> Option<ExactnessFailure> {
    let dom = f.domain();
    for i in 0..dom.num_generators() {
        let y = f.apply(&dom.generator(i)).expect("generator fits domain");
        if !g.apply(&y).expect("composable").is_zero() {
            return Some(ExactnessFailure::ImageNotInKernel { witness: y });
        }
    }
    let (k, incl) = g.kernel();
    for i in 0..k.num_generators() {
        let y = incl.apply(&k.generator(i)).expect("generator fits kernel");
        if f.solve(&y).expect("normalized element").is_none() {
            return Some(ExactnessFailure::KernelNotInImage { witness: y });
        }
    }
    None
}

pub fn check_exact(seq: &LongSequence) -> ExactnessReport {
    seq.check_exact()
}

/// `0 -> A -f-> B -g-> C -> 0`, verified on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSeq {
    f: GroupMap,
    g: GroupMap,
}

impl ShortExactSeq {
    pub fn new(f: GroupMap, g: GroupMap) -> Result<Self> {
        let long = LongSequence::padded(vec![f.clone(), g.clone()]);
        if let Some(n) = long.check_exact().first_failure() {
            let failure = n.failure.as_ref().expect("failing node");
            return Err(Error::NotExact {
                node: n.position,
                reason: format!("{} (witness {})", failure.describe(), failure.witness()),
            });
        }
        Ok(ShortExactSeq { f, g })
    }

    pub fn left(&self) -> &FgaGroup {
        self.f.domain()
    }

    pub fn middle(&self) -> &FgaGroup {
        self.f.codomain()
    }

    pub fn right(&self) -> &FgaGroup {
        self.g.codomain()
    }

    pub fn f(&self) -> &GroupMap {
        &self.f
    }

    pub fn g(&self) -> &GroupMap {
        &self.g
    }

    /// Whether `middle ≅ left ⊕ right` (necessary for splitting, not
    /// sufficient in general).
    pub fn middle_is_sum(&self) -> bool {
        self.middle() == &self.left().direct_sum(self.right())
    }
}

/// A section `s: C -> B` with `g ∘ s = id`, if one exists.
pub fn is_split(seq: &ShortExactSeq) -> Result<Option<GroupMap>> {
    let c = seq.right();
    find_homomorphism(c, seq.middle(), seq.g(), &GroupMap::identity(c), &GroupMap::identity(c))
}

/// Two rows of composable maps joined by three vertical maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderDiagram {
    pub top: [GroupMap; 2],
    pub bottom: [GroupMap; 2],
    pub vertical: [GroupMap; 3],
}

impl LadderDiagram {
    /// Checks shapes and that both squares commute.
    pub fn new(top: [GroupMap; 2], bottom: [GroupMap; 2], vertical: [GroupMap; 3]) -> Result<Self> {
        let shape = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Validation(format!("ladder shape: {what}")))
            }
        };
        shape(top[0].codomain() == top[1].domain(), "top row not composable")?;
        shape(bottom[0].codomain() == bottom[1].domain(), "bottom row not composable")?;
        shape(
            vertical[0].domain() == top[0].domain() && vertical[0].codomain() == bottom[0].domain(),
            "left vertical endpoints",
        )?;
        shape(
            vertical[1].domain() == top[1].domain() && vertical[1].codomain() == bottom[1].domain(),
            "middle vertical endpoints",
        )?;
        shape(
            vertical[2].domain() == top[1].codomain() && vertical[2].codomain() == bottom[1].codomain(),
            "right vertical endpoints",
        )?;
        let l = LadderDiagram { top, bottom, vertical };
        for square in 0..2 {
            if !l.square_commutes(square)? {
                return Err(Error::NonCommuting { square });
            }
        }
        Ok(l)
    }

    /// Square 0 is `b ∘ f = f' ∘ a`, square 1 is `c ∘ g = g' ∘ b`.
    pub fn square_commutes(&self, square: usize) -> Result<bool> {
        let lhs = self.vertical[square + 1].compose(&self.top[square])?;
        let rhs = self.bottom[square].compose(&self.vertical[square])?;
        Ok(lhs == rhs)
    }

    pub fn verticals_are_isomorphisms(&self) -> bool {
        self.vertical.iter().all(GroupMap::is_isomorphism)
    }
}

/// Output of the snake lemma.
#[derive(Clone, Debug)]
pub struct SnakeSequence {
    pub sequence: LongSequence,
    pub connecting: GroupMap,
    pub kernel_inclusions: [GroupMap; 3],
    pub cokernel_projections: [GroupMap; 3],
}

fn map_from_columns(domain: &FgaGroup, codomain: &FgaGroup, cols: Vec<Vec<BigInt>>) -> Result<GroupMap> {
    let m = IntMatrix::from_columns(codomain.num_generators(), &cols)?;
    GroupMap::new(domain.clone(), codomain.clone(), m)
}

fn preimage(f: &GroupMap, y: &Element, what: &str) -> Result<Element> {
    f.solve(y)?
        .ok_or_else(|| Error::internal(format!("no preimage while computing {what}")))
}

/// Restriction of `f: X -> Y` to kernels: `ker_x -> ker_y`.
fn restrict(f: &GroupMap, incl_x: &GroupMap, incl_y: &GroupMap) -> Result<GroupMap> {
    let kx = incl_x.domain();
    let cols = (0..kx.num_generators())
        .map(|i| {
            let y = f.apply(&incl_x.apply(&kx.generator(i))?)?;
            Ok(preimage(incl_y, &y, "kernel restriction")?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    map_from_columns(kx, incl_y.domain(), cols)
}

/// Map induced by `f: X -> Y` on cokernels `coker_x -> coker_y`.
fn descend(f: &GroupMap, proj_x: &GroupMap, proj_y: &GroupMap) -> Result<GroupMap> {
    let cx = proj_x.codomain();
    let cols = (0..cx.num_generators())
        .map(|i| {
            let lift = preimage(proj_x, &cx.generator(i), "cokernel lift")?;
            Ok(proj_y.apply(&f.apply(&lift)?)?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    map_from_columns(cx, proj_y.codomain(), cols)
}

pub fn snake(l: &LadderDiagram) -> Result<SnakeSequence> {
    let [f, g] = &l.top;
    let [f2, g2] = &l.bottom;
    let [a, b, c] = &l.vertical;

    if !g.is_surjective() {
        return Err(Error::hypothesis("snake lemma: top row map B -> C is not surjective"));
    }
    if let Some(n) = LongSequence::new(vec![f.clone(), g.clone()])?
        .check_exact()
        .first_failure()
    {
        return Err(Error::hypothesis(format!(
            "snake lemma: top row not exact at B ({})",
            n.failure.as_ref().map_or("", ExactnessFailure::describe)
        )));
    }
    if !f2.is_injective() {
        return Err(Error::hypothesis(
            "snake lemma: bottom row map A' -> B' is not injective",
        ));
    }
    if let Some(n) = LongSequence::new(vec![f2.clone(), g2.clone()])?
        .check_exact()
        .first_failure()
    {
        return Err(Error::hypothesis(format!(
            "snake lemma: bottom row not exact at B' ({})",
            n.failure.as_ref().map_or("", ExactnessFailure::describe)
        )));
    }
    for square in 0..2 {
        if !l.square_commutes(square)? {
            return Err(Error::NonCommuting { square });
        }
    }

    let (_, ia) = a.kernel();
    let (_, ib) = b.kernel();
    let (kc, ic) = c.kernel();
    let (_, pa) = a.cokernel();
    let (_, pb) = b.cokernel();
    let (_, pc) = c.cokernel();

    let ker_f = restrict(f, &ia, &ib)?;
    let ker_g = restrict(g, &ib, &ic)?;
    let coker_f = descend(f2, &pa, &pb)?;
    let coker_g = descend(g2, &pb, &pc)?;

    // δ: lift along g, push down by b, pull back along f', project.
    let delta_cols = (0..kc.num_generators())
        .map(|i| {
            let x = ic.apply(&kc.generator(i))?;
            let y = preimage(g, &x, "connecting map (lift along B -> C)")?;
            let by = b.apply(&y)?;
            let w = preimage(f2, &by, "connecting map (pull back along A' -> B')")?;
            Ok(pa.apply(&w)?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    let connecting = map_from_columns(&kc, pa.codomain(), delta_cols)?;

    // Changing the lift by f(x) changes w by a(x), which dies in coker a.
    let top_a = f.domain();
    for i in 0..top_a.num_generators() {
        let shift = b.apply(&f.apply(&top_a.generator(i))?)?;
        let w = preimage(f2, &shift, "lift-independence check")?;
        if !pa.apply(&w)?.is_zero() {
            return Err(Error::internal("connecting map depends on the chosen lift"));
        }
    }

    let sequence = LongSequence::new(vec![ker_f, ker_g, connecting.clone(), coker_f, coker_g])?;
    Ok(SnakeSequence {
        sequence,
        connecting,
        kernel_inclusions: [ia, ib, ic],
        cokernel_projections: [pa, pb, pc],
    })
}
