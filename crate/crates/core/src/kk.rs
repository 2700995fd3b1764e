//! Kasparov groups of graded K-groups via the universal coefficient
//! theorem, Künneth products, coefficient groups, and the splitting and
//! duality statements built on them.
//!
//! Grading: in degree `j` the Hom part is
//! `Hom(KA_0, KB_j) ⊕ Hom(KA_1, KB_{j+1})` and the Ext part is
//! `Ext(KA_0, KB_{j+1}) ⊕ Ext(KA_1, KB_j)`, indices mod 2. Ext enters one
//! degree up because the UCT boundary has degree one. The total is modelled
//! as the direct sum of the two parts.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::decomp::{free_projection, torsion_inclusion, torsion_subgroup, torsionfree_quotient};
use crate::error::{Error, Result};
use crate::functors::{
    bifunctor, character_values, dual_with_model, ext, hom, hom_symbolic, induced_map, pontryagin_dual, tensor, tor,
    Functor, Slot, SymbolicAnswer, SymbolicCodomain, PEXT_NOTE,
};
use crate::graded::{require_torsion, GradedGroup, GradedMap, Parity};
use crate::group::FgaGroup;
use crate::map::{direct_sum_of, DirectSum, GroupMap};
use crate::matrix::IntMatrix;
use crate::sequences::LongSequence;

/// `KK_j` split as Hom part plus Ext part.
#[derive(Clone, Debug)]
pub struct UctResult {
    pub degree: Parity,
    /// `Hom(KA_i, KB_{i+j})` for `i = 0, 1`.
    pub hom_terms: [FgaGroup; 2],
    /// `Ext(KA_i, KB_{i+j+1})` for `i = 0, 1`.
    pub ext_terms: [FgaGroup; 2],
    pub hom_part: FgaGroup,
    pub ext_part: FgaGroup,
    pub total: FgaGroup,
    /// Always 0 for finitely generated input.
    pub closure_of_zero: FgaGroup,
    pub hausdorff_quotient: FgaGroup,
    inputs: (GradedGroup, GradedGroup),
    /// Injections and projections for `total = hom_0 ⊕ hom_1 ⊕ ext_0 ⊕ ext_1`.
    layout: DirectSum,
}

impl UctResult {
    pub fn inputs(&self) -> (&GradedGroup, &GradedGroup) {
        (&self.inputs.0, &self.inputs.1)
    }

    /// Pieces in layout order `[hom_0, hom_1, ext_0, ext_1]`.
    pub fn pieces(&self) -> [&FgaGroup; 4] {
        [
            &self.hom_terms[0],
            &self.hom_terms[1],
            &self.ext_terms[0],
            &self.ext_terms[1],
        ]
    }

    pub fn injection(&self, piece: usize) -> &GroupMap {
        &self.layout.injections[piece]
    }

    pub fn projection(&self, piece: usize) -> &GroupMap {
        &self.layout.projections[piece]
    }

    /// Whether `|total| = |hom_part| · |ext_part|`; `None` when infinite.
    pub fn order_law(&self) -> Option<bool> {
        let t = self.total.order()?;
        Some(Some(t) == self.hom_part.order().zip(self.ext_part.order()).map(|(h, e)| h * e))
    }
}

pub fn kk(ka: &GradedGroup, kb: &GradedGroup, j: Parity) -> UctResult {
    let hom_terms = Parity::BOTH.map(|i| hom(ka.get(i), kb.get(i + j)));
    let ext_terms = Parity::BOTH.map(|i| ext(ka.get(i), kb.get(i + j + Parity::Odd)));
    let hom_part = hom_terms[0].direct_sum(&hom_terms[1]);
    let ext_part = ext_terms[0].direct_sum(&ext_terms[1]);
    let layout = direct_sum_of(&[
        hom_terms[0].clone(),
        hom_terms[1].clone(),
        ext_terms[0].clone(),
        ext_terms[1].clone(),
    ]);
    let total = layout.group.clone();
    UctResult {
        degree: j,
        hom_terms,
        ext_terms,
        hom_part,
        ext_part,
        closure_of_zero: FgaGroup::trivial(),
        hausdorff_quotient: total.clone(),
        total,
        inputs: (ka.clone(), kb.clone()),
        layout,
    }
}

/// `K^j(A) = KK_j(A, C)`.
pub fn k_dual(ka: &GradedGroup, j: Parity) -> UctResult {
    kk(ka, &GradedGroup::even_only(FgaGroup::free(1)), j)
}

/// Assembles `src.total -> dst.total` from maps between matching pieces.
fn block_map(src: &UctResult, dst: &UctResult, pieces: [GroupMap; 4]) -> Result<GroupMap> {
    let mut out = GroupMap::zero(&src.total, &dst.total);
    for (k, piece) in pieces.iter().enumerate() {
        out = out.add(&dst.injection(k).compose(piece)?.compose(src.projection(k))?)?;
    }
    Ok(out)
}

/// `f^*: KK_j(A, B) -> KK_j(A', B)` for a degree-zero `f: KA' -> KA`.
pub fn kk_induced_first(f: &GradedMap, kb: &GradedGroup, j: Parity) -> Result<(UctResult, UctResult, GroupMap)> {
    if f.degree() != Parity::Even {
        return Err(Error::Validation("induced maps need a degree-zero graded map".into()));
    }
    let src = kk(&f.target(), kb, j);
    let dst = kk(&f.source(), kb, j);
    let piece = |functor: Functor, i: Parity, shift: Parity| {
        induced_map(functor, f.component(i), kb.get(i + shift), Slot::First).map(|m| m.map)
    };
    let e = Parity::Even;
    let o = Parity::Odd;
    let pieces = [
        piece(Functor::Hom, e, j)?,
        piece(Functor::Hom, o, j)?,
        piece(Functor::Ext, e, j + o)?,
        piece(Functor::Ext, o, j + o)?,
    ];
    let m = block_map(&src, &dst, pieces)?;
    Ok((src, dst, m))
}

/// `g_*: KK_j(A, B) -> KK_j(A, B')` for a degree-zero `g: KB -> KB'`.
pub fn kk_induced_second(ka: &GradedGroup, g: &GradedMap, j: Parity) -> Result<(UctResult, UctResult, GroupMap)> {
    if g.degree() != Parity::Even {
        return Err(Error::Validation("induced maps need a degree-zero graded map".into()));
    }
    let src = kk(ka, &g.source(), j);
    let dst = kk(ka, &g.target(), j);
    let piece = |functor: Functor, i: Parity, shift: Parity| {
        induced_map(functor, g.component(i + shift), ka.get(i), Slot::Second).map(|m| m.map)
    };
    let e = Parity::Even;
    let o = Parity::Odd;
    let pieces = [
        piece(Functor::Hom, e, j)?,
        piece(Functor::Hom, o, j)?,
        piece(Functor::Ext, e, j + o)?,
        piece(Functor::Ext, o, j + o)?,
    ];
    let m = block_map(&src, &dst, pieces)?;
    Ok((src, dst, m))
}

/// `K_j(A ⊗ B)` or `K_j(A; G)`: tensor part plus Tor part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethResult {
    pub degree: Parity,
    pub tensor_part: FgaGroup,
    pub tor_part: FgaGroup,
    pub total: FgaGroup,
    /// Whether `α: tensor_part -> total` is an isomorphism.
    pub alpha_is_iso: bool,
}

impl KunnethResult {
    fn new(degree: Parity, tensor_part: FgaGroup, tor_part: FgaGroup) -> Self {
        KunnethResult {
            degree,
            total: tensor_part.direct_sum(&tor_part),
            alpha_is_iso: tor_part.is_trivial(),
            tensor_part,
            tor_part,
        }
    }
}

pub fn kunneth_product(ka: &GradedGroup, kb: &GradedGroup, j: Parity) -> KunnethResult {
    let o = Parity::Odd;
    let tensor_part = Parity::BOTH.iter().fold(FgaGroup::trivial(), |acc, &i| {
        acc.direct_sum(&tensor(ka.get(i), kb.get(j + i)))
    });
    let tor_part = Parity::BOTH.iter().fold(FgaGroup::trivial(), |acc, &i| {
        acc.direct_sum(&tor(ka.get(i), kb.get(j + o + i)))
    });
    KunnethResult::new(j, tensor_part, tor_part)
}

/// `K_j(A; G)`.
pub fn coefficients(ka: &GradedGroup, g: &FgaGroup, j: Parity) -> KunnethResult {
    KunnethResult::new(j, tensor(ka.get(j), g), tor(ka.get(j.flip()), g))
}

/// `KK_j(A, B)` rebuilt from the torsion and free parts of both sides.
#[derive(Clone, Debug)]
pub struct FourWaySplit {
    pub degree: Parity,
    pub tt: UctResult,
    pub tf: UctResult,
    pub ft: UctResult,
    pub ff: UctResult,
    pub assembled: FgaGroup,
    pub direct: FgaGroup,
}

impl FourWaySplit {
    pub fn agrees(&self) -> bool {
        self.assembled == self.direct
    }
}

pub fn four_way(ka: &GradedGroup, kb: &GradedGroup, j: Parity) -> FourWaySplit {
    let (at, _) = torsion_subgroup(ka);
    let (af, _) = torsionfree_quotient(ka);
    let (bt, _) = torsion_subgroup(kb);
    let (bf, _) = torsionfree_quotient(kb);
    let tt = kk(&at, &bt, j);
    let tf = kk(&at, &bf, j);
    let ft = kk(&af, &bt, j);
    let ff = kk(&af, &bf, j);
    let assembled = tt
        .total
        .direct_sum(&tf.total)
        .direct_sum(&ft.total)
        .direct_sum(&ff.total);
    FourWaySplit {
        degree: j,
        direct: kk(ka, kb, j).total,
        tt,
        tf,
        ft,
        ff,
        assembled,
    }
}

/// One degree of the splitting sequence `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct SplitDegree {
    pub degree: Parity,
    /// The Hom-level map whose surjectivity is tested.
    pub hom_map: GroupMap,
    pub onto: bool,
    pub left: FgaGroup,
    pub middle: FgaGroup,
    pub right: FgaGroup,
    pub sequence: LongSequence,
    pub exact: bool,
    /// `|middle| = |left| · |right|`, when finite.
    pub order_product: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub degrees: [SplitDegree; 2],
}

impl SplitReport {
    pub fn onto(&self) -> bool {
        self.degrees.iter().all(|d| d.onto)
    }

    pub fn exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
    }
}

fn order_product(left: &FgaGroup, middle: &FgaGroup, right: &FgaGroup) -> Option<bool> {
    let m = middle.order()?;
    Some(Some(m) == left.order().zip(right.order()).map(|(a, b)| a * b))
}

fn hom_part_map(src: &UctResult, dst: &UctResult, total: &GroupMap) -> Result<GroupMap> {
    // Restrict to hom pieces: project dst onto hom_0 ⊕ hom_1.
    let sh = direct_sum_of(&[src.hom_terms[0].clone(), src.hom_terms[1].clone()]);
    let dh = direct_sum_of(&[dst.hom_terms[0].clone(), dst.hom_terms[1].clone()]);
    let mut out = GroupMap::zero(&sh.group, &dh.group);
    for a in 0..2 {
        for b in 0..2 {
            let piece = dst
                .projection(b)
                .compose(total)?
                .compose(src.injection(a))?
                .compose(&sh.projections[a])?;
            out = out.add(&dh.injections[b].compose(&piece)?)?;
        }
    }
    Ok(out)
}

fn split_degree(
    j: Parity,
    incoming: (UctResult, UctResult, GroupMap),
    outgoing: (UctResult, UctResult, GroupMap),
) -> Result<SplitDegree> {
    let (left, middle, f) = incoming;
    let (_, right, g) = outgoing.clone();
    let hom_map = hom_part_map(&outgoing.0, &outgoing.1, &outgoing.2)?;
    let sequence = LongSequence::padded(vec![f, g]);
    Ok(SplitDegree {
        degree: j,
        onto: hom_map.is_surjective(),
        hom_map,
        order_product: order_product(&left.total, &middle.total, &right.total),
        exact: sequence.check_exact().is_exact(),
        left: left.total,
        middle: middle.total,
        right: right.total,
        sequence,
    })
}

/// `0 -> KK(A_f, B) -> KK(A, B) -> KK(A_t, B) -> 0`, with surjectivity of
/// `θ_h^*: Hom(K_*(A), K_*(B)) -> Hom(K_*(A)_t, K_*(B))` decided directly.
pub fn split_2_1(ka: &GradedGroup, kb: &GradedGroup) -> Result<SplitReport> {
    let (_, theta) = torsion_subgroup(ka);
    let (_, pi) = torsionfree_quotient(ka);
    let degree = |j: Parity| -> Result<SplitDegree> {
        split_degree(j, kk_induced_first(&pi, kb, j)?, kk_induced_first(&theta, kb, j)?)
    };
    Ok(SplitReport {
        degrees: [degree(Parity::Even)?, degree(Parity::Odd)?],
    })
}

/// `0 -> KK(A, B_t) -> KK(A, B) -> KK(A, B_f) -> 0`, with surjectivity of
/// `π_*: Hom(K_*(A), K_*(B)) -> Hom(K_*(A), K_*(B)_f)` decided directly.
pub fn split_2_6(ka: &GradedGroup, kb: &GradedGroup) -> Result<SplitReport> {
    let theta = GradedMap::new(Parity::Even, torsion_inclusion(&kb.even), torsion_inclusion(&kb.odd));
    let pi = GradedMap::new(Parity::Even, free_projection(&kb.even), free_projection(&kb.odd));
    let degree = |j: Parity| -> Result<SplitDegree> {
        split_degree(j, kk_induced_second(ka, &theta, j)?, kk_induced_second(ka, &pi, j)?)
    };
    Ok(SplitReport {
        degrees: [degree(Parity::Even)?, degree(Parity::Odd)?],
    })
}

/// Torsion `KA` against free `KB`.
#[derive(Clone, Debug)]
pub struct Thm43Report {
    pub degree: Parity,
    pub kk: UctResult,
    /// `Hom(K_*(A), K_{*-1}(B) ⊗ Q/Z)` in degree `j`.
    pub hom_qz_form: SymbolicAnswer,
    /// `X(KA_{j-1})^{rank KB_0} ⊕ X(KA_j)^{rank KB_1}`.
    pub dual_form: FgaGroup,
    /// `X(KA_{j-1})^n` with `n` the total rank of `KB`.
    pub even_form: FgaGroup,
    /// `KK_j` equals its Ext part and the Hom part vanishes.
    pub ext_only: bool,
    pub hom_qz_agrees: bool,
    pub dual_agrees: bool,
    /// Only meaningful when `KB` is concentrated in even degree.
    pub even_form_agrees: Option<bool>,
}

impl Thm43Report {
    pub fn all_hold(&self) -> bool {
        self.ext_only && self.hom_qz_agrees && self.dual_agrees && self.even_form_agrees != Some(false)
    }
}

pub fn thm_4_3_check(ka: &GradedGroup, kb: &GradedGroup, j: Parity) -> Result<Thm43Report> {
    require_torsion(ka, "K_*(A)")?;
    for p in Parity::BOTH {
        if !kb.get(p).is_free() {
            return Err(Error::hypothesis(format!(
                "K_*(B) must be torsionfree, but degree {p} has torsion {}",
                kb.get(p).torsion_part()
            )));
        }
    }
    let uct = kk(ka, kb, j);
    let o = Parity::Odd;
    let mut hom_qz = SymbolicAnswer {
        finite: FgaGroup::trivial(),
        qz_power: 0,
        real_power: 0,
    };
    for i in Parity::BOTH {
        let s = hom_symbolic(ka.get(i), SymbolicCodomain::QmodZ(kb.get(i + j + o).free_rank()));
        hom_qz.finite = hom_qz.finite.direct_sum(&s.finite);
        hom_qz.qz_power += s.qz_power;
        hom_qz.real_power += s.real_power;
    }
    let x_prev = pontryagin_dual(ka.get(j + o))?;
    let x_same = pontryagin_dual(ka.get(j))?;
    let dual_form = x_prev
        .power(kb.even.free_rank())
        .direct_sum(&x_same.power(kb.odd.free_rank()));
    let even_form = x_prev.power(kb.total_rank());
    Ok(Thm43Report {
        degree: j,
        ext_only: uct.hom_part.is_trivial() && uct.total == uct.ext_part,
        hom_qz_agrees: hom_qz.is_finite() && hom_qz.finite == uct.total,
        dual_agrees: dual_form == uct.total,
        even_form_agrees: kb.odd.is_trivial().then(|| even_form == uct.total),
        hom_qz_form: hom_qz,
        dual_form,
        even_form,
        kk: uct,
    })
}

/// `0 -> Hom(K_j(A), R) -> X(K_j(A)) -χ-> K^{j-1}(A) -> 0`.
#[derive(Clone, Debug)]
pub struct Thm44Report {
    pub degree: Parity,
    pub hom_real: SymbolicAnswer,
    pub dual: FgaGroup,
    pub target: FgaGroup,
    pub chi: GroupMap,
    pub chi_is_iso: bool,
    pub sequence: LongSequence,
    pub exact: bool,
}

/// `χ` sends a character `e_i ↦ k_i / N` to the class of the cocycle
/// `d_i k_i / N` in `Ext(K_j(A), Z)`, then into `K^{j-1}(A)`.
pub fn thm_4_4_sequence(ka: &GradedGroup, j: Parity) -> Result<Thm44Report> {
    require_torsion(
        ka,
        "K_*(A) (for finitely generated groups, having no free direct summand means being torsion)",
    )?;
    let g = ka.get(j);
    let hom_real = hom_symbolic(g, SymbolicCodomain::Real(1));
    let model = dual_with_model(g);
    let n = g.torsion_exponent();
    let target = k_dual(ka, j.flip());
    let ext_model = bifunctor(Functor::Ext, g, &FgaGroup::free(1));
    let piece = 2 + j.index();
    if target.pieces()[piece] != ext_model.value() {
        return Err(Error::internal("Ext(K_j(A), Z) is not where the grading puts it"));
    }
    let dual = model.value().clone();
    let cols = (0..dual.num_generators())
        .map(|c| -> Result<Vec<BigInt>> {
            let k = character_values(&model, &dual.generator(c))?;
            let cocycle: Vec<BigInt> = g
                .torsion()
                .iter()
                .zip(&k)
                .map(|(d, ki)| {
                    let (q, r) = (d * ki).div_rem(&n);
                    debug_assert!(r == BigInt::from(0));
                    q
                })
                .collect();
            let rep = IntMatrix::from_vec(1, cocycle.len(), cocycle)?;
            let e = ext_model.coords_of(&rep)?;
            Ok(target.injection(piece).apply_coords(&e)?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = GroupMap::new(
        dual.clone(),
        target.total.clone(),
        IntMatrix::from_columns(target.total.num_generators(), &cols)?,
    )?;
    let zero = FgaGroup::trivial();
    let sequence = LongSequence::padded(vec![GroupMap::zero(&zero, &dual), chi.clone()]);
    Ok(Thm44Report {
        degree: j,
        hom_real,
        chi_is_iso: chi.is_isomorphism(),
        exact: sequence.check_exact().is_exact(),
        sequence,
        dual,
        target: target.total,
        chi,
    })
}

/// Closure of zero in `KK_j(A, B)` and the Hausdorff quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub degree: Parity,
    pub closure: FgaGroup,
    pub hausdorff_quotient: FgaGroup,
    pub hom_part: FgaGroup,
    /// For torsionfree `KA` the quotient is the Hom part.
    pub quotient_is_hom: bool,
    pub note: &'static str,
}

pub fn closure_of_zero(ka: &GradedGroup, kb: &GradedGroup, j: Parity) -> ClosureReport {
    let uct = kk(ka, kb, j);
    ClosureReport {
        degree: j,
        quotient_is_hom: uct.hausdorff_quotient == uct.hom_part,
        closure: uct.closure_of_zero,
        hausdorff_quotient: uct.hausdorff_quotient,
        hom_part: uct.hom_part,
        note: PEXT_NOTE,
    }
}
