//! Engine commands and the reports they produce.

use num_bigint::BigInt;

use super::report::{Report, Table, Value};
use crate::decomp::{
    is_pure, is_summand, primary_decomposition, realize, realize_torsion, torsion_subgroup, torsionfree_quotient,
    RealizationRecord,
};
use crate::error::Result;
use crate::functors::pontryagin_dual;
use crate::graded::{GradedGroup, GradedSubgroup, Parity};
use crate::group::FgaGroup;
use crate::kk::{
    closure_of_zero, coefficients, four_way, k_dual, kk, kunneth_product, split_2_1, split_2_6, thm_4_3_check,
    thm_4_4_sequence, SplitReport,
};
use crate::map::GroupMap;
use crate::sequences::{snake, LadderDiagram, LongSequence};

/// A fully resolved command, ready to run.
#[derive(Clone, Debug)]
pub enum Command {
    Decompose {
        k: GradedGroup,
    },
    Primary {
        k: GradedGroup,
    },
    Realize {
        subgroup: GradedSubgroup,
    },
    Kk {
        a: GradedGroup,
        b: GradedGroup,
        deg: Option<Parity>,
    },
    KDual {
        a: GradedGroup,
        deg: Option<Parity>,
    },
    Kunneth {
        a: GradedGroup,
        b: GradedGroup,
        deg: Option<Parity>,
    },
    Coeff {
        a: GradedGroup,
        g: FgaGroup,
        deg: Option<Parity>,
    },
    Dual {
        g: FgaGroup,
    },
    FourWay {
        a: GradedGroup,
        b: GradedGroup,
        deg: Option<Parity>,
    },
    Split21 {
        a: GradedGroup,
        b: GradedGroup,
    },
    Split26 {
        a: GradedGroup,
        b: GradedGroup,
    },
    Thm43 {
        a: GradedGroup,
        b: GradedGroup,
        deg: Option<Parity>,
    },
    Thm44 {
        a: GradedGroup,
        deg: Option<Parity>,
    },
    Snake {
        ladder: Box<LadderDiagram>,
    },
    CheckExact {
        sequence: LongSequence,
    },
    IsPure {
        map: GroupMap,
    },
    IsSummand {
        map: GroupMap,
    },
}

fn degrees(deg: Option<Parity>) -> Vec<Parity> {
    deg.map_or(Parity::BOTH.to_vec(), |d| vec![d])
}

/// One report per degree; flattened when there is only one.
fn per_degree(deg: Option<Parity>, f: impl Fn(Parity) -> Result<Report>) -> Result<Report> {
    let mut blocks = degrees(deg).into_iter().map(f).collect::<Result<Vec<_>>>()?;
    if blocks.len() == 1 {
        Ok(blocks.pop().expect("one block"))
    } else {
        Ok(Report::new().with("degrees", "degrees", Value::Blocks(blocks)))
    }
}

fn deg_int(p: Parity) -> Value {
    Value::Int(BigInt::from(p.index()))
}

impl Command {
    pub fn op(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Primary { .. } => "primary",
            Command::Realize { .. } => "realize",
            Command::Kk { .. } => "kk",
            Command::KDual { .. } => "kdual",
            Command::Kunneth { .. } => "kunneth",
            Command::Coeff { .. } => "coeff",
            Command::Dual { .. } => "dual",
            Command::FourWay { .. } => "fourway",
            Command::Split21 { .. } => "split21",
            Command::Split26 { .. } => "split26",
            Command::Thm43 { .. } => "thm43",
            Command::Thm44 { .. } => "thm44",
            Command::Snake { .. } => "snake",
            Command::CheckExact { .. } => "checkexact",
            Command::IsPure { .. } => "ispure",
            Command::IsSummand { .. } => "issummand",
        }
    }

    pub fn run(&self) -> Result<Report> {
        match self {
            Command::Decompose { k } => decompose(k),
            Command::Primary { k } => primary(k),
            Command::Realize { subgroup } => Ok(realization_report(&realize(subgroup.ambient(), subgroup)?)),
            Command::Kk { a, b, deg } => per_degree(*deg, |j| {
                let r = kk(a, b, j);
                let c = closure_of_zero(a, b, j);
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("total", format!("KK_{j}"), Value::Group(r.total.clone()))
                    .with("hom_part", "Hom part", Value::Group(r.hom_part.clone()))
                    .with("ext_part", "Ext part", Value::Group(r.ext_part.clone()))
                    .with("order_law", "Order law", opt_bool(r.order_law()))
                    .with("closure_of_zero", "Closure of zero", Value::Group(c.closure))
                    .with(
                        "hausdorff_quotient",
                        "Hausdorff quotient",
                        Value::Group(c.hausdorff_quotient),
                    ))
            }),
            Command::KDual { a, deg } => per_degree(*deg, |j| {
                let r = k_dual(a, j);
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("total", format!("K^{j}"), Value::Group(r.total))
                    .with("hom_part", "Hom part", Value::Group(r.hom_part))
                    .with("ext_part", "Ext part", Value::Group(r.ext_part)))
            }),
            Command::Kunneth { a, b, deg } => per_degree(*deg, |j| {
                let r = kunneth_product(a, b, j);
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("total", format!("K_{j}(A ⊗ B)"), Value::Group(r.total))
                    .with("tensor_part", "Tensor part", Value::Group(r.tensor_part))
                    .with("tor_part", "Tor part", Value::Group(r.tor_part))
                    .with("alpha_is_iso", "alpha iso", Value::Bool(r.alpha_is_iso)))
            }),
            Command::Coeff { a, g, deg } => per_degree(*deg, |j| {
                let r = coefficients(a, g, j);
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("total", format!("K_{j}(A; G)"), Value::Group(r.total))
                    .with("tensor_part", "Tensor part", Value::Group(r.tensor_part))
                    .with("tor_part", "Tor part", Value::Group(r.tor_part))
                    .with("alpha_is_iso", "alpha iso", Value::Bool(r.alpha_is_iso)))
            }),
            Command::Dual { g } => Ok(Report::new().with("input", "G", Value::Group(g.clone())).with(
                "dual",
                "X(G)",
                Value::Group(pontryagin_dual(g)?),
            )),
            Command::FourWay { a, b, deg } => per_degree(*deg, |j| {
                let f = four_way(a, b, j);
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("tt", format!("KK_{j}(A_t, B_t)"), Value::Group(f.tt.total.clone()))
                    .with("tf", format!("KK_{j}(A_t, B_f)"), Value::Group(f.tf.total.clone()))
                    .with("ft", format!("KK_{j}(A_f, B_t)"), Value::Group(f.ft.total.clone()))
                    .with("ff", format!("KK_{j}(A_f, B_f)"), Value::Group(f.ff.total.clone()))
                    .with("assembled", "Assembled", Value::Group(f.assembled.clone()))
                    .with("direct", format!("KK_{j}(A, B)"), Value::Group(f.direct.clone()))
                    .with("agrees", "Agrees", Value::Bool(f.agrees())))
            }),
            Command::Split21 { a, b } => Ok(split_report(
                &split_2_1(a, b)?,
                "theta_h^* onto",
                ["KK_{j}(A_f, B)", "KK_{j}(A, B)", "KK_{j}(A_t, B)"],
            )),
            Command::Split26 { a, b } => Ok(split_report(
                &split_2_6(a, b)?,
                "pi_* onto",
                ["KK_{j}(A, B_t)", "KK_{j}(A, B)", "KK_{j}(A, B_f)"],
            )),
            Command::Thm43 { a, b, deg } => per_degree(*deg, |j| {
                let r = thm_4_3_check(a, b, j)?;
                let prev = j.flip();
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with("total", format!("KK_{j}"), Value::Group(r.kk.total.clone()))
                    .with("ext_part", "Ext part", Value::Group(r.kk.ext_part.clone()))
                    .with(
                        "hom_qz_form",
                        "Hom(K_*(A), K_{*-1}(B) ⊗ Q/Z)",
                        Value::Text(r.hom_qz_form.to_string()),
                    )
                    .with(
                        "dual_form",
                        format!(
                            "X(K_{prev}(A))^{} + X(K_{j}(A))^{}",
                            b.even.free_rank(),
                            b.odd.free_rank()
                        ),
                        Value::Group(r.dual_form.clone()),
                    )
                    .with(
                        "even_form",
                        format!("X(K_{prev}(A))^{}", b.total_rank()),
                        Value::Group(r.even_form.clone()),
                    )
                    .with("ext_only", "KK equals Ext part", Value::Bool(r.ext_only))
                    .with(
                        "hom_qz_agrees",
                        "Hom into Q/Z form agrees",
                        Value::Bool(r.hom_qz_agrees),
                    )
                    .with("dual_agrees", "Dual form agrees", Value::Bool(r.dual_agrees))
                    .with("even_form_agrees", "Even form agrees", opt_bool(r.even_form_agrees)))
            }),
            Command::Thm44 { a, deg } => per_degree(*deg, |j| {
                let r = thm_4_4_sequence(a, j)?;
                let prev = j.flip();
                Ok(Report::new()
                    .with("degree", "Degree", deg_int(j))
                    .with(
                        "hom_real",
                        format!("Hom(K_{j}(A), R)"),
                        Value::Text(r.hom_real.to_string()),
                    )
                    .with("dual", format!("X(K_{j}(A))"), Value::Group(r.dual.clone()))
                    .with("target", format!("K^{prev}(A)"), Value::Group(r.target.clone()))
                    .with("chi", "chi", Value::Map(r.chi.clone()))
                    .with("chi_is_iso", "chi iso", Value::Bool(r.chi_is_iso))
                    .with("exact", "Exact", Value::Bool(r.exact)))
            }),
            Command::Snake { ladder } => snake_report(ladder),
            Command::CheckExact { sequence } => Ok(exactness_report(sequence)),
            Command::IsPure { map } => Ok(Report::new()
                .with("subgroup", "H", Value::Group(map.domain().clone()))
                .with("ambient", "G", Value::Group(map.codomain().clone()))
                .with("pure", "Pure", Value::Bool(is_pure(map)?))),
            Command::IsSummand { map } => {
                let r = is_summand(map)?;
                Ok(Report::new()
                    .with("subgroup", "H", Value::Group(map.domain().clone()))
                    .with("ambient", "G", Value::Group(map.codomain().clone()))
                    .with("summand", "Summand", Value::Bool(r.is_some()))
                    .with(
                        "retraction",
                        "Retraction",
                        Value::Optional(r.map(|m| Box::new(Value::Map(m)))),
                    ))
            }
        }
    }
}

fn opt_bool(b: Option<bool>) -> Value {
    Value::Optional(b.map(|b| Box::new(Value::Bool(b))))
}

fn decompose(k: &GradedGroup) -> Result<Report> {
    let (t, _) = torsion_subgroup(k);
    let (f, _) = torsionfree_quotient(k);
    let rec = realize_torsion(k)?;
    let w = rec.summand.as_ref().expect("torsion subgroup is a summand");
    Ok(Report::new()
        .with("input", "K", Value::Graded(k.clone()))
        .with("torsion", "Torsion part", Value::Graded(t.clone()))
        .with("free", "Free part", Value::Graded(f.clone()))
        .with("summand", "Summand", Value::Bool(true))
        .with("sum_matches", "Torsion + free = K", Value::Bool(t.direct_sum(&f) == *k))
        .with(
            "retraction",
            "Retraction",
            Value::Record(
                Report::new()
                    .with("even", "even", Value::Map(w.retraction.component(Parity::Even).clone()))
                    .with("odd", "odd", Value::Map(w.retraction.component(Parity::Odd).clone())),
            ),
        ))
}

fn primary(k: &GradedGroup) -> Result<Report> {
    let d = primary_decomposition(k)?;
    let mut table = Table::new(&[("prime", "p"), ("even", "even"), ("odd", "odd")]);
    for (p, part) in &d.parts {
        table.row(vec![
            Value::Int(p.clone()),
            Value::Group(part.even.clone()),
            Value::Group(part.odd.clone()),
        ]);
    }
    Ok(Report::new()
        .with("input", "K", Value::Graded(k.clone()))
        .with("parts", "Primary parts", Value::Table(table))
        .with(
            "iso_verified",
            "Sum of parts isomorphic to K",
            Value::Bool(d.iso.is_isomorphism()),
        ))
}

pub(crate) fn realization_report(r: &RealizationRecord) -> Report {
    let rows_exact = r
        .rows
        .iter()
        .all(|s| LongSequence::from_short(s).check_exact().is_exact());
    let commute = r
        .ladders
        .iter()
        .all(|l| l.square_commutes(0).unwrap_or(false) && l.square_commutes(1).unwrap_or(false));
    let isos = r.ladders.iter().all(LadderDiagram::verticals_are_isomorphisms);
    let mut rep = Report::new()
        .with("input", "K(A)", Value::Graded(r.input.clone()))
        .with("k_of_as", "K(A_s)", Value::Graded(r.k_of_as.clone()))
        .with("k_of_aq", "K(A_q)", Value::Graded(r.k_of_aq.clone()))
        .with("k_of_sas", "K(SA_s)", Value::Graded(r.k_of_sas.clone()))
        .with(
            "theta",
            "theta",
            Value::Record(
                Report::new()
                    .with("even", "even", Value::Map(r.theta.component(Parity::Even).clone()))
                    .with("odd", "odd", Value::Map(r.theta.component(Parity::Odd).clone())),
            ),
        )
        .with(
            "six_term_exact",
            "Six-term sequence exact",
            Value::Bool(r.six_term.check_exact().is_exact()),
        )
        .with("rows_exact", "Rows exact", Value::Bool(rows_exact))
        .with("squares_commute", "Squares commute", Value::Bool(commute))
        .with("verticals_iso", "Vertical maps isomorphisms", Value::Bool(isos))
        .with("summand", "Summand", Value::Bool(r.is_summand()));
    match &r.summand {
        Some(w) => rep.push(
            "retraction",
            "Retraction",
            Value::Record(
                Report::new()
                    .with("even", "even", Value::Map(w.retraction.component(Parity::Even).clone()))
                    .with("odd", "odd", Value::Map(w.retraction.component(Parity::Odd).clone()))
                    .with("sum", "K(A_s) + K(A_q)", Value::Graded(w.sum.clone())),
            ),
        ),
        None => rep.push("retraction", "Retraction", Value::Optional(None)),
    }
    rep
}

fn split_report(r: &SplitReport, onto_label: &str, labels: [&str; 3]) -> Report {
    let blocks = r
        .degrees
        .iter()
        .map(|d| {
            let j = d.degree;
            let l = |s: &str| s.replace("{j}", &j.to_string());
            Report::new()
                .with("degree", "Degree", deg_int(j))
                .with("onto", format!("{onto_label} (degree {j})"), Value::Bool(d.onto))
                .with("left", l(labels[0]), Value::Group(d.left.clone()))
                .with("middle", l(labels[1]), Value::Group(d.middle.clone()))
                .with("right", l(labels[2]), Value::Group(d.right.clone()))
                .with("exact", "Exact", Value::Bool(d.exact))
                .with("order_product", "Order product", opt_bool(d.order_product))
        })
        .collect();
    Report::new()
        .with("onto", onto_label, Value::Bool(r.onto()))
        .with("degrees", "degrees", Value::Blocks(blocks))
}

fn exactness_table(seq: &LongSequence) -> (Table, bool) {
    let report = seq.check_exact();
    let mut t = Table::new(&[
        ("position", "node"),
        ("group", "group"),
        ("exact", "exact"),
        ("failure", "failure"),
        ("witness", "witness"),
    ]);
    for n in &report.nodes {
        let (failure, witness) = match &n.failure {
            None => (Value::Optional(None), Value::Optional(None)),
            Some(f) => (
                Value::Text(f.describe().into()),
                Value::Text(format!("({})", f.witness())),
            ),
        };
        t.row(vec![
            Value::Int(BigInt::from(n.position)),
            Value::Group(seq.nodes()[n.position].clone()),
            Value::Bool(n.is_exact()),
            failure,
            witness,
        ]);
    }
    (t, report.is_exact())
}

fn exactness_report(seq: &LongSequence) -> Report {
    let (table, exact) = exactness_table(seq);
    Report::new()
        .with("exact", "Exact", Value::Bool(exact))
        .with("nodes", "Nodes", Value::Table(table))
}

fn snake_report(l: &LadderDiagram) -> Result<Report> {
    let s = snake(l)?;
    let names = ["ker a", "ker b", "ker c", "coker a", "coker b", "coker c"];
    let mut groups = Table::new(&[("name", "object"), ("group", "group")]);
    for (name, g) in names.iter().zip(s.sequence.nodes()) {
        groups.row(vec![Value::Text(name.to_string()), Value::Group(g.clone())]);
    }
    let map_names = [
        "ker a -> ker b",
        "ker b -> ker c",
        "delta",
        "coker a -> coker b",
        "coker b -> coker c",
    ];
    let mut maps = Report::new();
    for (name, m) in map_names.iter().zip(s.sequence.maps()) {
        maps.push(name.replace(' ', "_").replace("->", "to"), *name, Value::Map(m.clone()));
    }
    let order_product = {
        let orders: Option<Vec<BigInt>> = s.sequence.nodes().iter().map(FgaGroup::order).collect();
        orders.map(|o| &o[0] * &o[2] * &o[4] == &o[1] * &o[3] * &o[5])
    };
    let (table, exact) = exactness_table(&s.sequence);
    Ok(Report::new()
        .with("groups", "Objects", Value::Table(groups))
        .with("maps", "Maps", Value::Record(maps))
        .with("delta_is_iso", "delta iso", Value::Bool(s.connecting.is_isomorphism()))
        .with("exact", "Exact", Value::Bool(exact))
        .with(
            "alternating_order_product",
            "Alternating order product is 1",
            opt_bool(order_product),
        )
        .with("nodes", "Exactness", Value::Table(table)))
}
