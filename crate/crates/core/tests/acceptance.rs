//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! cargo test -p rootlift-core --test acceptance

mod common;

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rootlift::cyclotomic::CycloField;
use rootlift::jacobi::*;
use rootlift::lattice::*;
use rootlift::lifts::tables::*;
use rootlift::lifts::*;
use rootlift::series::*;
use rootlift::weil::invariant_subspace;
use rootlift::{Int, Q};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed_0001;
const HECKE_CASES: usize = 60;
const DIVISION_CASES: usize = 60;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn spec(name: &str) -> RootSystemSpec {
    name.parse().unwrap()
}

fn names() -> [&'static str; 8] {
    RootSystemSpec::canonical_names()
}

/// ψ_R and the (3, 3) reports shared by criteria 3 to 6.
struct Lifted {
    psi: Vec<(String, JacobiFormExpansion)>,
    reports: Vec<MainIdentityReport>,
}

fn c1_classification() -> Outcome {
    let got: BTreeSet<String> = classify_q_order_one().iter().map(|s| s.to_string()).collect();
    let want: BTreeSet<String> = names().iter().map(|s| s.to_string()).collect();
    if got == want {
        pass(format!("{} systems", got.len()))
    } else {
        fail(format!("got {got:?}"))
    }
}

fn c2_holomorphy() -> Outcome {
    for name in names() {
        let th = match theta_r(&spec(name), qq(6)) {
            Ok(t) => t,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        if th.q_order() != qq(1) {
            return fail(format!("{name}: q-order {}", th.q_order()));
        }
        let sing = singular_part(&th);
        if !sing.is_empty() {
            return fail(format!("{name}: {} singular terms", sing.len()));
        }
    }
    pass("q-precision 6, eight systems")
}

fn lift_all() -> rootlift::Result<Lifted> {
    let plan = PrecisionPlan::new(3, 3);
    let mut psi = Vec::new();
    let mut reports = Vec::new();
    for name in names() {
        let s = spec(name);
        let (theta, p) = theta_and_psi(&s, &plan)?;
        let input = borcherds_input_from_psi(p)?;
        reports.push(verify_from_parts(&s, &plan, &theta, &input)?);
        psi.push((name.to_string(), input.psi));
    }
    Ok(Lifted { psi, reports })
}

fn c3_main_identity(l: &Lifted) -> Outcome {
    let mut compared = 0;
    for r in &l.reports {
        compared += r.comparison.compared;
        if !r.comparison.is_equal() {
            return fail(format!("{}: first mismatch {:?}", r.root_system, r.first_mismatch));
        }
    }
    pass(format!("(n ≤ 3, m ≤ 3), {compared} coefficients, zero tolerance"))
}

fn c4_weyl(l: &Lifted) -> Outcome {
    for r in &l.reports {
        if r.weyl_c != "1" || !r.prefactor_is_theta {
            return fail(format!("{}: C = {}, prefactor = θ: {}", r.root_system, r.weyl_c, r.prefactor_is_theta));
        }
    }
    pass("C = 1 and Θ_{f(0,·)} = θ_R for all eight")
}

fn c5_principal(l: &Lifted) -> Outcome {
    for (name, psi) in &l.psi {
        let dec = match theta_decompose(psi) {
            Ok(d) => d,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        match principal_part_check(&spec(name), &dec) {
            Ok(r) if r.verdict.is_pass() => {}
            Ok(r) => return fail(format!("{name}: {} offending cosets", r.offending.len())),
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    pass("exact patterns, F₀ constant = rank")
}

fn c6_reflectivity(l: &Lifted) -> Outcome {
    let mut classes = 0;
    for (name, psi) in &l.psi {
        let dec = theta_decompose(psi).unwrap();
        match reflectivity_report(psi, &dec, qq(2)) {
            Ok(r) if r.bad.is_empty() => classes += r.classes_checked,
            Ok(r) => return fail(format!("{name}: multiplicities {:?}", r.bad)),
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    pass(format!("|2n − (ℓ,ℓ)| ≤ 2, {classes} classes, all in {{0, 1}}"))
}

fn even_form(name: &str) -> (usize, DiscriminantFormData) {
    let datum = build_root_datum(&spec(name)).unwrap();
    let ev = even_sublattice(&gram_underline_r(&datum)).unwrap();
    (datum.rank(), DiscriminantFormData::from_even_lattice(&ev.lattice.int_gram().unwrap()).unwrap())
}

fn c7_invariants() -> Outcome {
    let want = [1, 2, 1, 1, 1, 1, 2, 2];
    for (name, w) in names().into_iter().zip(want) {
        let d = even_form(name).1;
        match invariant_subspace(&d) {
            Ok(inv) if inv.dimension == w => {}
            Ok(inv) => return fail(format!("{name}: dimension {}", inv.dimension)),
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    pass("dimensions 1,2,1,1,1,1,2,2 certified exactly")
}

fn c8_milgram() -> Outcome {
    for name in names() {
        let (rank, d) = even_form(name);
        let f = CycloField::new(d.field_order());
        let Some(root) = f.sqrt(d.size() as u64) else {
            return fail(format!("{name}: √|D| not in Q(ζ_{})", f.order()));
        };
        if d.gauss_sum(&f) != f.mul(&root, &f.e(rank as i64, 8)) {
            return fail(format!("{name}: Gauss sum ≠ √|D| e(rank/8)"));
        }
    }
    pass("exact in Q(ζ_M), sign ≡ rank mod 8")
}

fn c9_table() -> Outcome {
    let prec = qq(7);
    for row in TABLE_ONE {
        let th = theta_r(&spec(row.root_system), qq(9)).unwrap();
        let ones = vec![1i64; th.rank()];
        let forms: Vec<Vec<i64>> = row.int_forms().iter().map(|f| vec![f.iter().sum()]).collect();
        if forms.iter().any(|f| f[0] == 0) {
            continue;
        }
        let s = specialize(&th, &ones).unwrap();
        if !s.series.agrees_with(&direct_product(row.eta_power, &forms, prec)) {
            return fail(format!("{}: s_x*θ_R ≠ classical block", row.root_system));
        }
        let lhs = specialize(&hecke_tminus(&th, 2).unwrap(), &ones).unwrap();
        let rhs = hecke_tminus(&s, 2).unwrap();
        if !lhs.series.agrees_with(&rhs.series) {
            return fail(format!("{}: s_x* and T₋(2) do not commute", row.root_system));
        }
        let g = gritsenko_lift(&th, 3, 2).unwrap();
        let gs = gritsenko_lift(&s, 3, 2).unwrap();
        for m in 1..=2 {
            let layer = specialize(&th.with_series(g.layer(m)), &ones).unwrap();
            if !layer.series.agrees_with(&gs.layer(m)) {
                return fail(format!("{}: layer {m} differs", row.root_system));
            }
        }
    }
    pass("x = (1, …, 1), T₋(2), G layers (q ≤ 3, m ≤ 2)")
}

fn c10_a4_difference() -> Outcome {
    let prec = qq(4);
    let lhs = theta_block(&THETA_A1B3_SPECIALIZED.spec(), prec).unwrap();
    let one = theta_block(&THETA_A4_ONE.spec(), prec).unwrap();
    let two = theta_block(&THETA_A4_TWO.spec(), prec).unwrap();
    let rhs = ps_sub(&one.series, &two.series).unwrap();
    if rhs.q_prec() < prec || lhs.series.q_prec() < prec {
        return fail("precision below q⁴");
    }
    if lhs.series.agrees_with(&rhs) {
        pass(format!("q-precision 4, {} terms", lhs.series.num_terms()))
    } else {
        fail("θ_{A₁⊕B₃} ≠ θ⁽¹⁾ − θ⁽²⁾")
    }
}

fn random_series(rng: &mut StdRng) -> PuiseuxSeries {
    let levels = rng.gen_range(1..9);
    PuiseuxSeries::from_levels(
        2,
        1,
        1,
        qq(levels),
        (0..levels).map(|n| {
            let terms: Vec<(Exp, Int)> = (0..rng.gen_range(0..6))
                .map(|_| {
                    let e: Exp = (0..2).map(|_| rng.gen_range(-4..=4)).collect();
                    (e, Int::from(rng.gen_range(-6i64..=6)))
                })
                .collect();
            (n, LaurentPoly::from_terms(2, terms))
        }),
    )
}

fn c11_properties() -> Outcome {
    // triple product to q^10
    let bound = 10;
    let prod = triple_product(bound);
    let t = jtheta_int(&[1], qq(bound));
    for (&(n, j), &c) in &prod {
        let got = t.coefficient(Q::new(8 * n + 1, 8), &[Q::new(2 * j + 1, 2)]).unwrap();
        if got != c as i64 {
            return fail(format!("triple product at q^{n}"));
        }
    }
    if prod.len() != t.num_terms() {
        return fail("triple product term count");
    }
    // Hecke vs substitution
    let mut rng = StdRng::seed_from_u64(SEED);
    let gram = vec![vec![qq(2), qq(1)], vec![qq(1), qq(2)]];
    for case in 0..HECKE_CASES {
        let s = random_series(&mut rng);
        let k = rng.gen_range(1..=4i64);
        let m = [2u64, 3, 4][case % 3];
        let phi = JacobiFormExpansion {
            index: GramLattice { gram: gram.clone() },
            weight: qq(k),
            eta_character: 0,
            series: s.clone(),
            claimed_holomorphic: false,
            leading_factors: None,
        };
        let h = hecke_tminus(&phi, m).unwrap();
        let oracle = substitution_oracle(&s, k as u32, m);
        if oracle.len() != h.series.num_terms() {
            return fail(format!("Hecke case {case}: term count"));
        }
        for ((n, e), v) in &oracle {
            let l: Vec<Q> = e.iter().map(|x| Q::new(*x as i64, h.series.z_den() as i64)).collect();
            let got = h.series.coefficient(qq(*n), &l).unwrap().to_bigint();
            if !v.is_integer() || got != v.to_integer() {
                return fail(format!("Hecke case {case}, m = {m}"));
            }
        }
    }
    // exact division round trip
    for case in 0..DIVISION_CASES {
        let a = random_series(&mut rng);
        let forms: Vec<Vec<i64>> = (0..rng.gen_range(1..4))
            .map(|_| loop {
                let f = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
                if f.iter().any(|x| *x != 0) {
                    break f;
                }
            })
            .collect();
        let block = theta_block(&ThetaBlockSpec::from_int_forms(0, &forms), qq(9)).unwrap();
        let num = ps_mul(&a, &block.series).unwrap();
        let back = ps_exact_div(&num, &block.series, block.leading_factors.as_ref().unwrap()).unwrap();
        if !back.agrees_with(&a) {
            return fail(format!("division case {case}"));
        }
    }
    // class invariance for every computed form
    let mut forms = 0;
    for name in names() {
        let th = theta_r(&spec(name), qq(6)).unwrap();
        let psi = psi_of(&th).unwrap();
        let ones = vec![1i64; th.rank()];
        let sp = specialize(&th, &ones).unwrap();
        for f in [&th, &psi, &sp] {
            if !theta_decompose(f).map(|d| d.is_consistent()).unwrap_or(false) {
                return fail(format!("{name}: class invariance"));
            }
            forms += 1;
        }
    }
    pass(format!(
        "q^10 triple product, {HECKE_CASES} Hecke cases, {DIVISION_CASES} divisions, {forms} forms (seed {SEED:#x})"
    ))
}

fn main() {
    let mut failed = 0;
    let mut report = |label: &str, limit: Option<Duration>, t: Instant, o: Outcome| {
        let el = t.elapsed();
        let in_time = limit.is_none_or(|l| el <= l);
        let ok = o.ok && in_time;
        let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        let late = if in_time { "" } else { ", over time budget" };
        println!(
            "{} {label}: {}{late} [{:.2}s{budget}]",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            el.as_secs_f64()
        );
        if !ok {
            failed += 1;
        }
    };
    let secs = |s| Some(Duration::from_secs(s));

    let t = Instant::now();
    report("1 classification", secs(1), t, c1_classification());
    let t = Instant::now();
    report("2 holomorphy and q-order", secs(60), t, c2_holomorphy());

    let t = Instant::now();
    let lifted = lift_all();
    let lift_time = t.elapsed();
    match lifted {
        Ok(l) => {
            report("3 main identity", secs(600), t, c3_main_identity(&l));
            let t = Instant::now();
            report("4 prefactor and Weyl data", None, t, c4_weyl(&l));
            let t = Instant::now();
            report("5 principal parts", secs(120), t, c5_principal(&l));
            let t = Instant::now();
            report("6 strong reflectivity", secs(120), t, c6_reflectivity(&l));
        }
        Err(e) => {
            for label in ["3 main identity", "4 prefactor and Weyl data", "5 principal parts", "6 strong reflectivity"] {
                report(label, None, Instant::now(), fail(format!("lift stage: {e}")));
            }
        }
    }
    println!("     (lifts for criteria 3 to 6 took {:.2}s)", lift_time.as_secs_f64());

    let t = Instant::now();
    report("7 invariant dimensions", secs(60), t, c7_invariants());
    let t = Instant::now();
    report("8 Milgram identity", None, t, c8_milgram());
    let t = Instant::now();
    report("9 table specializations", None, t, c9_table());
    let t = Instant::now();
    report("10 A1+B3 as an A4 difference", None, t, c10_a4_difference());
    let t = Instant::now();
    report("11 property suites", None, t, c11_properties());

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria pass");
}
