//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check compares library output with an oracle computed in this file
//! or in `common`, never with the library's own algorithms. Seeds are fixed.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kshadow::decomp::{is_pure, is_summand, primary_decomposition, realize_torsion};
use kshadow::functors::{ext, hom, tensor, tor};
use kshadow::graded::{GradedGroup, Parity};
use kshadow::group::FgaGroup;
use kshadow::kk::{four_way, kk, split_2_1, split_2_6, thm_4_3_check, thm_4_4_sequence};
use kshadow::map::GroupMap;
use kshadow::matrix::IntMatrix;
use kshadow::parse::{format_graded, format_primary, parse_graded, parse_group};
use kshadow::sequences::{snake, LadderDiagram, LongSequence};
use kshadow::snf::snf;
use kshadow::Error;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// 1. Bifunctors against enumeration over Z/d, Z/e and Z.

/// Cyclic group of order `n`, or `Z` for `None`.
fn cyclic(n: Option<u64>) -> FgaGroup {
    match n {
        Some(n) => FgaGroup::cyclic(n),
        None => FgaGroup::free(1),
    }
}

/// Subgroups of a cyclic group are cyclic, so a finite subgroup of `Z/e`
/// is determined by its size.
fn cyclic_of_size(n: usize) -> FgaGroup {
    if n == 1 {
        FgaGroup::trivial()
    } else {
        FgaGroup::cyclic(n as u64)
    }
}

/// `Hom(G, H)`: a map out of `Z/d` is the image `x` of 1 with `d x = 0`.
fn hom_oracle(g: Option<u64>, h: Option<u64>) -> FgaGroup {
    match (g, h) {
        (None, _) => cyclic(h),
        (Some(d), Some(e)) => cyclic_of_size((0..e).filter(|x| (d * x) % e == 0).count()),
        // d x = 0 in Z has only x = 0; check a window around it.
        (Some(d), None) => cyclic_of_size((-100i64..=100).filter(|x| d as i64 * x == 0).count()),
    }
}

/// `|dH|` for `H = Z/e` by enumeration.
fn multiples(d: u64, e: u64) -> usize {
    (0..e).map(|x| (d * x) % e).collect::<HashSet<_>>().len()
}

/// `Z/d ⊗ H = H/dH` from `0 -> Z -d-> Z -> Z/d -> 0`.
fn tensor_oracle(g: Option<u64>, h: Option<u64>) -> FgaGroup {
    match (g, h) {
        (None, _) => cyclic(h),
        (Some(d), None) => FgaGroup::cyclic(d),
        (Some(d), Some(e)) => cyclic_of_size(e as usize / multiples(d, e)),
    }
}

/// `Tor(Z/d, H) = ker(d: H -> H)` from the same resolution.
fn tor_oracle(g: Option<u64>, h: Option<u64>) -> FgaGroup {
    match (g, h) {
        (None, _) | (_, None) => FgaGroup::trivial(),
        (Some(d), Some(e)) => cyclic_of_size((0..e).filter(|x| (d * x) % e == 0).count()),
    }
}

/// `Ext(Z/d, H) = H/dH`; `Ext(Z, H) = 0`.
fn ext_oracle(g: Option<u64>, h: Option<u64>) -> FgaGroup {
    match g {
        None => FgaGroup::trivial(),
        Some(_) => tensor_oracle(g, h),
    }
}

fn ac_bifunctors() -> Outcome {
    let args: Vec<Option<u64>> = (2..=12).map(Some).chain([None]).collect();
    let mut checked = 0;
    for &a in &args {
        for &b in &args {
            let (g, h) = (cyclic(a), cyclic(b));
            let cases = [
                ("hom", hom(&g, &h), hom_oracle(a, b)),
                ("ext", ext(&g, &h), ext_oracle(a, b)),
                ("tor", tor(&g, &h), tor_oracle(a, b)),
                ("tensor", tensor(&g, &h), tensor_oracle(a, b)),
            ];
            for (name, got, want) in cases {
                ensure!(got == want, "{name}({g}, {h}) = {got}, oracle {want}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} values"))
}

// 2. Smith normal form.

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn ac_snf() -> Outcome {
    let mut r = rng(2);
    for case in 0..1000 {
        let (m, n) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let entries: Vec<i64> = (0..m * n).map(|_| r.gen_range(-50..=50)).collect();
        let a = IntMatrix::from_i64(m, n, &entries);
        let s = snf(&a);
        let uav = matmul(&matmul(&s.u.to_rows(), &a.to_rows(), m, n), &s.v.to_rows(), n, n);
        ensure!(uav == s.d.to_rows(), "case {case}: U A V != D for {a}");
        ensure!(
            bareiss_det(&s.u.to_rows()).abs() == BigInt::from(1),
            "case {case}: |det U| != 1"
        );
        ensure!(
            bareiss_det(&s.v.to_rows()).abs() == BigInt::from(1),
            "case {case}: |det V| != 1"
        );
        let d = s.d.to_rows();
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                ensure!(i == j || x.is_zero(), "case {case}: D not diagonal");
                ensure!(!x.is_negative(), "case {case}: negative diagonal entry");
            }
        }
        let diag: Vec<BigInt> = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            ensure!(ok, "case {case}: divisibility chain broken: {diag:?}");
        }
    }
    Ok("1000 matrices".into())
}

// 3. Torsion realization.

fn ac_realize_torsion() -> Outcome {
    let mut r = rng(3);
    for case in 0..200 {
        let k = random_graded(&mut r, 2, 3, 30);
        let rec = realize_torsion(&k).map_err(|e| format!("case {case}: {k}: {e}"))?;
        for (i, row) in rec.rows.iter().enumerate() {
            let seq = LongSequence::padded(vec![row.f().clone(), row.g().clone()]);
            ensure!(seq.check_exact().is_exact(), "case {case}: row {i} of {k} not exact");
        }
        for (i, l) in rec.ladders.iter().enumerate() {
            for s in 0..2 {
                ensure!(
                    l.square_commutes(s) == Ok(true),
                    "case {case}: ladder {i} square {s} of {k}"
                );
            }
        }
        ensure!(
            rec.six_term.check_exact().is_exact(),
            "case {case}: six-term sequence of {k}"
        );
        for p in Parity::BOTH {
            let (free, orders) = part(&k, p);
            ensure!(
                rec.k_of_as.get(p) == &oracle_group(0, &orders) && rec.k_of_aq.get(p) == &oracle_group(free, &[]),
                "case {case}: {k} split as {} and {}",
                rec.k_of_as,
                rec.k_of_aq
            );
        }
        ensure!(
            rec.k_of_as.direct_sum(&rec.k_of_aq) == k,
            "case {case}: K_t + K_f != {k}"
        );
        ensure!(
            rec.is_summand(),
            "case {case}: torsion of {k} not reported as a summand"
        );
        let w = rec.summand.as_ref().expect("summand witness");
        ensure!(
            w.splitting.is_isomorphism(),
            "case {case}: splitting of {k} not an isomorphism"
        );
    }
    Ok("200 graded groups".into())
}

// 4. Primary decomposition.

fn ac_primary() -> Outcome {
    let mut r = rng(4);
    for case in 0..100 {
        let k = random_torsion_graded(&mut r, 4, 60);
        let d = primary_decomposition(&k).map_err(|e| format!("case {case}: {k}: {e}"))?;
        ensure!(d.iso.is_isomorphism(), "case {case}: {k}: sum map not an isomorphism");
        ensure!(d.sum == k, "case {case}: sum {} != {k}", d.sum);
        let total: u64 = Parity::BOTH.iter().map(|&p| order(k.get(p)).unwrap()).product();
        let oracle_primes: Vec<u64> = factor(total).into_iter().map(|(p, _)| p).collect();
        let primes: Vec<u64> = d.parts.keys().map(|p| u64::try_from(p).unwrap()).collect();
        ensure!(
            primes == oracle_primes,
            "case {case}: primes {primes:?}, oracle {oracle_primes:?}"
        );
        for (p, part) in &d.parts {
            let p = u64::try_from(p).unwrap();
            for q in Parity::BOTH {
                let g = part.get(q);
                ensure!(g.is_torsion(), "case {case}: {p}-part has free rank");
                ensure!(
                    orders_u64(g).iter().all(|&o| is_prime_power_of(o, p)),
                    "case {case}: {p}-part {g} is not {p}-primary"
                );
                let n = order(k.get(q)).unwrap();
                let want = factor(n).into_iter().find(|f| f.0 == p).map_or(1, |(p, e)| p.pow(e));
                ensure!(order(g) == Some(want), "case {case}: |{p}-part| = {g}, oracle {want}");
            }
        }
    }
    Ok("100 torsion graded groups".into())
}

// 5. UCT order law.

fn finite_pair(r: &mut ChaCha8Rng, case: usize) -> (GradedGroup, GradedGroup) {
    if case.is_multiple_of(2) {
        (random_torsion_graded(r, 3, 24), random_graded(r, 2, 2, 24))
    } else {
        (random_graded(r, 2, 2, 24), random_torsion_graded(r, 3, 24))
    }
}

fn ac_order_law() -> Outcome {
    let mut r = rng(5);
    for case in 0..200 {
        let (a, b) = finite_pair(&mut r, case);
        for j in Parity::BOTH {
            let u = kk(&a, &b, j);
            let (mut h, mut e) = (1u64, 1u64);
            for i in 0..2 {
                let ai = part(&a, Parity::of(i));
                h *= hom_order(&ai, &part(&b, Parity::of(i + j.index() as i64))).unwrap();
                e *= ext_order(&ai, &part(&b, Parity::of(i + j.index() as i64 + 1))).unwrap();
            }
            ensure!(
                order(&u.hom_part) == Some(h),
                "case {case}: |hom part| of KK_{j}({a}, {b})"
            );
            ensure!(
                order(&u.ext_part) == Some(e),
                "case {case}: |ext part| of KK_{j}({a}, {b})"
            );
            ensure!(
                order(&u.total) == Some(h * e),
                "case {case}: |KK_{j}({a}, {b})| != {h} * {e}"
            );
            ensure!(u.order_law() == Some(true), "case {case}: order_law() disagrees");
        }
    }
    Ok("200 pairs, both degrees".into())
}

// 6. Free target: KK_j = X(K_{j-1}(A))^n.

fn ac_free_target() -> Outcome {
    let a = parse_graded("[Z/2 ; 0]").unwrap();
    let b = parse_graded("[Z ; 0]").unwrap();
    ensure!(
        kk(&a, &b, Parity::Odd).total == FgaGroup::cyclic(2),
        "hand instance: KK_1 != Z/2"
    );
    ensure!(kk(&a, &b, Parity::Even).total.is_trivial(), "hand instance: KK_0 != 0");

    let mut r = rng(6);
    for case in 0..100 {
        let a = random_torsion_graded(&mut r, 3, 30);
        let n = r.gen_range(0..=3);
        let b = GradedGroup::even_only(FgaGroup::free(n));
        for j in Parity::BOTH {
            let (_, orders) = part(&a, j.flip());
            let want = oracle_group(0, &orders.repeat(n));
            let got = kk(&a, &b, j).total;
            ensure!(got == want, "case {case}: KK_{j}({a}, {b}) = {got}, oracle {want}");
            let rep = thm_4_3_check(&a, &b, j).map_err(|e| format!("case {case}: {e}"))?;
            ensure!(rep.all_hold(), "case {case}: check fails for {a}, {b}, degree {j}");
            ensure!(
                rep.even_form_agrees == Some(true),
                "case {case}: even form for {a}, {b}"
            );
        }
    }
    Ok("hand instance + 100 random".into())
}

// 7. Dual sequence for torsion K_*(A).

fn ac_dual_sequence() -> Outcome {
    let mut r = rng(7);
    for case in 0..100 {
        let a = random_torsion_graded(&mut r, 3, 30);
        for j in Parity::BOTH {
            let rep = thm_4_4_sequence(&a, j).map_err(|e| format!("case {case}: {a}: {e}"))?;
            ensure!(rep.hom_real.is_trivial(), "case {case}: Hom(K_{j}, R) != 0 for {a}");
            ensure!(
                rep.chi_is_iso && rep.chi.is_isomorphism(),
                "case {case}: chi not iso for {a}"
            );
            ensure!(rep.exact, "case {case}: sequence not exact for {a}");
            let want = oracle_group(0, &part(&a, j).1);
            ensure!(
                rep.dual == want && rep.target == want,
                "case {case}: groups for {a}, degree {j}"
            );
        }
    }
    let mut refused = 0;
    for case in 0..50 {
        let mut a = random_graded(&mut r, 2, 2, 30);
        if a.even.is_torsion() && a.odd.is_torsion() {
            a = a.direct_sum(&GradedGroup::new(FgaGroup::trivial(), FgaGroup::free(1)));
        }
        for j in Parity::BOTH {
            match thm_4_4_sequence(&a, j) {
                Err(Error::Hypothesis(_)) => refused += 1,
                other => return Err(format!("case {case}: {a} not refused: {:?}", other.map(|r| r.exact))),
            }
        }
    }
    Ok(format!("100 torsion inputs, {refused} refusals"))
}

// 8. Splitting predicates and the four-way assembly.

fn ac_splittings() -> Outcome {
    let mut r = rng(8);
    for case in 0..200 {
        let a = random_graded(&mut r, 2, 2, 12);
        let b = random_graded(&mut r, 2, 2, 12);
        for (name, rep) in [("first", split_2_1(&a, &b)), ("second", split_2_6(&a, &b))] {
            let rep = rep.map_err(|e| format!("case {case}: {name}: {e}"))?;
            ensure!(rep.onto(), "case {case}: {name} split not onto for {a}, {b}");
            ensure!(rep.exact(), "case {case}: {name} sequence not exact for {a}, {b}");
            for d in &rep.degrees {
                if let (Some(l), Some(m), Some(rt)) = (order(&d.left), order(&d.middle), order(&d.right)) {
                    ensure!(
                        m == l * rt,
                        "case {case}: {name}: |{}| != |{}| |{}|",
                        d.middle,
                        d.left,
                        d.right
                    );
                    ensure!(d.order_product == Some(true), "case {case}: {name}: order_product flag");
                }
            }
        }
        for j in Parity::BOTH {
            let fw = four_way(&a, &b, j);
            ensure!(fw.agrees(), "case {case}: four-way assembly for {a}, {b}, degree {j}");
            ensure!(fw.direct == kk(&a, &b, j).total, "case {case}: four-way direct value");
        }
    }
    Ok("200 pairs".into())
}

// 9. Snake lemma against an element chase.

fn check_snake(l: &LadderDiagram) -> Result<(), String> {
    let s = snake(l).map_err(|e| e.to_string())?;
    ensure!(s.sequence.check_exact().is_exact(), "check_exact fails");
    ensure!(exact_by_enumeration(s.sequence.maps()), "not exact by enumeration");
    let [alpha, beta, gamma] = &l.vertical;
    for (v, incl) in [alpha, beta, gamma].into_iter().zip(&s.kernel_inclusions) {
        ensure!(
            order(incl.domain()) == Some(kernel_set(v).len() as u64),
            "kernel size of {v}"
        );
    }
    for (v, proj) in [alpha, beta, gamma].into_iter().zip(&s.cokernel_projections) {
        let want = order(v.codomain()).unwrap() / image_set(v).len() as u64;
        ensure!(order(proj.codomain()) == Some(want), "cokernel size of {v}");
    }
    // Chase every z in ker γ by enumeration: b with g(b) = z, then a' with
    // f'(a') = β(b), then the class of a' in coker α.
    let [_, g] = &l.top;
    let [f2, _] = &l.bottom;
    let kc = s.connecting.domain();
    let b_elems = enumerate(g.domain());
    let a2_elems = enumerate(f2.domain());
    for z in enumerate(kc) {
        let c = apply(&s.kernel_inclusions[2], &z);
        let b = b_elems.iter().find(|b| apply(g, b) == c).ok_or("no lift along g")?;
        let bb = apply(beta, b);
        let a2 = a2_elems
            .iter()
            .find(|x| apply(f2, x) == bb)
            .ok_or("no preimage along f'")?;
        ensure!(
            apply(&s.cokernel_projections[0], a2) == apply(&s.connecting, &z),
            "connecting map disagrees with the chase at {z:?}"
        );
    }
    Ok(())
}

fn ac_snake() -> Outcome {
    let z = FgaGroup::free(1);
    let z2 = FgaGroup::cyclic(2);
    let two = GroupMap::scalar(&z, 2);
    let mod2 = GroupMap::new(z.clone(), z2.clone(), IntMatrix::from_i64(1, 1, &[1])).unwrap();
    let l = LadderDiagram::new(
        [two.clone(), mod2.clone()],
        [two.clone(), mod2],
        [two.clone(), two, GroupMap::scalar(&z2, 2)],
    )
    .unwrap();
    let s = snake(&l).map_err(|e| format!("x2 ladder: {e}"))?;
    let nodes: Vec<String> = s.sequence.nodes().iter().map(|g| g.to_string()).collect();
    ensure!(
        nodes == ["0", "0", "Z/2", "Z/2", "Z/2", "Z/2"],
        "x2 ladder nodes {nodes:?}"
    );
    ensure!(s.connecting.is_isomorphism(), "x2 ladder: delta is not an isomorphism");
    ensure!(s.sequence.check_exact().is_exact(), "x2 ladder: not exact");

    let mut r = rng(9);
    for case in 0..100 {
        let l = random_ladder(&mut r);
        check_snake(&l).map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok("x2 ladder + 100 random".into())
}

// 10. Purity against the summand test.

fn pure_by_enumeration(incl: &GroupMap) -> bool {
    let b = incl.codomain();
    let b_elems = enumerate(b);
    let h: HashSet<Vec<BigInt>> = image_set(incl);
    let exp = orders_u64(b).last().copied().unwrap_or(1);
    (1..=exp).all(|n| {
        let scale = |x: &Vec<BigInt>| b.normalize(&x.iter().map(|c| c * n).collect::<Vec<_>>());
        let nh: HashSet<_> = h.iter().map(scale).collect();
        let nb: HashSet<_> = b_elems.iter().map(scale).collect();
        nh == h.intersection(&nb).cloned().collect()
    })
}

fn ac_purity() -> Outcome {
    let mut r = rng(10);
    let (mut pure, mut impure, mut oracle) = (0, 0, 0);
    for case in 0..300 {
        let b = random_group(&mut r, 2, 3, 12);
        let gens = r.gen_range(1..=3);
        let (_, incl) = random_columns(&mut r, &b, gens, 4).image();
        let p = is_pure(&incl).map_err(|e| format!("case {case}: {e}"))?;
        let s = is_summand(&incl).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            p == s.is_some(),
            "case {case}: pure = {p}, summand = {} for {incl}",
            s.is_some()
        );
        if let Some(ret) = s {
            ensure!(
                ret.compose(&incl).unwrap() == GroupMap::identity(incl.domain()),
                "case {case}: bad retraction"
            );
        }
        if b.is_finite() {
            ensure!(
                pure_by_enumeration(&incl) == p,
                "case {case}: enumeration disagrees on {incl}"
            );
            oracle += 1;
        }
        if p {
            pure += 1;
        } else {
            impure += 1;
        }
    }
    ensure!(pure > 0 && impure > 0, "degenerate sample: {pure} pure, {impure} not");
    Ok(format!("{pure} pure, {impure} not pure, {oracle} by enumeration"))
}

// 11. Parse/print and JSON determinism.

fn random_text(r: &mut ChaCha8Rng) -> (String, Cyc) {
    let (free, orders) = random_cyc(r, 3, 4, 40);
    let mut terms: Vec<String> = orders.iter().map(|o| format!("Z/{o}")).collect();
    match (free, r.gen_bool(0.5)) {
        (0, _) => {}
        (f, true) => terms.push(format!("Z^{f}")),
        (f, false) => terms.extend(std::iter::repeat_n("Z".to_string(), f)),
    }
    if terms.is_empty() || r.gen_bool(0.2) {
        terms.push("0".into());
    }
    terms.shuffle(r);
    let sep = [" + ", "+", "  +  "];
    let text = terms.join(sep.choose(r).unwrap());
    (text, (free, orders))
}

fn run_job_binary(path: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kshadow"))
        .args(["--format", "json", "--job", path])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(0), "job exited with {:?}", out.status.code());
    Ok(out.stdout)
}

fn ac_cli() -> Outcome {
    let mut r = rng(11);
    for case in 0..500 {
        let (text, (free, orders)) = random_text(&mut r);
        let g = parse_group(&text).map_err(|e| format!("case {case}: '{text}': {e}"))?;
        ensure!(g == oracle_group(free, &orders), "case {case}: '{text}' parsed as {g}");
        let printed = g.to_string();
        ensure!(
            parse_group(&printed).as_ref() == Ok(&g),
            "case {case}: '{printed}' does not parse back"
        );
        ensure!(
            parse_group(&printed).unwrap().to_string() == printed,
            "case {case}: printing not stable"
        );
        ensure!(
            parse_group(&format_primary(&g)).as_ref() == Ok(&g),
            "case {case}: primary form"
        );
        let (odd, _) = random_text(&mut r);
        let k = parse_graded(&format!("[{text};{odd}]")).map_err(|e| format!("case {case}: {e}"))?;
        for primary in [false, true] {
            let shown = format_graded(&k, primary);
            ensure!(parse_graded(&shown).as_ref() == Ok(&k), "case {case}: graded '{shown}'");
        }
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/all_commands.json");
    let first = run_job_binary(path)?;
    let second = run_job_binary(path)?;
    ensure!(first == second, "JSON output differs between runs");
    let doc: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let results = doc["results"].as_array().ok_or("no results array")?;
    let ops: HashSet<&str> = results.iter().filter_map(|x| x["op"].as_str()).collect();
    ensure!(ops.len() == 17, "job covers {} distinct commands", ops.len());
    ensure!(
        results.iter().all(|x| x.get("result").is_some()),
        "a job command failed"
    );
    Ok(format!("500 round trips, {} bytes of identical JSON", first.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "bifunctors match enumeration",
            limit: secs(5),
            run: ac_bifunctors,
        },
        Criterion {
            id: 2,
            name: "smith normal form soundness",
            limit: secs(10),
            run: ac_snf,
        },
        Criterion {
            id: 3,
            name: "torsion realization ladders",
            limit: secs(10),
            run: ac_realize_torsion,
        },
        Criterion {
            id: 4,
            name: "primary decomposition",
            limit: None,
            run: ac_primary,
        },
        Criterion {
            id: 5,
            name: "UCT order law",
            limit: None,
            run: ac_order_law,
        },
        Criterion {
            id: 6,
            name: "free target duality",
            limit: None,
            run: ac_free_target,
        },
        Criterion {
            id: 7,
            name: "dual sequence for torsion",
            limit: None,
            run: ac_dual_sequence,
        },
        Criterion {
            id: 8,
            name: "splitting predicates and four-way",
            limit: None,
            run: ac_splittings,
        },
        Criterion {
            id: 9,
            name: "snake lemma vs element chase",
            limit: secs(30),
            run: ac_snake,
        },
        Criterion {
            id: 10,
            name: "purity iff summand",
            limit: None,
            run: ac_purity,
        },
        Criterion {
            id: 11,
            name: "round trips and JSON determinism",
            limit: None,
            run: ac_cli,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        let limit = c.limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        let timing = format!("{:.2}s{limit}", elapsed.as_secs_f64());
        match result {
            Ok(detail) => println!("PASS  AC{:02}  {:<36} {detail} [{timing}]", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  AC{:02}  {:<36} {why} [{timing}]", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
