//! One function per subcommand, each producing report checks.

use crate::engine::Engine;
use crate::report::Check;
use rayon::prelude::*;
use rootlift::cyclotomic::CycloField;
use rootlift::jacobi::*;
use rootlift::lattice::*;
use rootlift::lifts::tables::{table_row, THETA_A1B3_SPECIALIZED, THETA_A4_ONE, THETA_A4_TWO};
use rootlift::lifts::*;
use rootlift::series::serialize::{fmt_q, SeriesRepr};
use rootlift::series::ps_sub;
use rootlift::weil::{invariant_subspace, split_structure_check, table_structure_check};
use rootlift::Q;
use serde::Serialize;
use std::collections::BTreeSet;

pub const INVARIANT_DIMENSIONS: [(&str, usize); 8] = [
    ("A4", 1),
    ("A1+B3", 2),
    ("A1+C3", 1),
    ("B2+G2", 1),
    ("3A2", 1),
    ("3A1+A3", 1),
    ("2A1+A2+B2", 2),
    ("8A1", 2),
];

/// Shared state for one invocation.
pub struct Ctx<'a> {
    pub systems: Vec<RootSystemSpec>,
    pub q_prec: i64,
    pub xi_prec: u32,
    pub engine: Engine<'a>,
}

impl Ctx<'_> {
    pub fn plan(&self) -> PrecisionPlan {
        PrecisionPlan::new(self.q_prec, self.xi_prec)
    }

    /// θ precision for ψ-based checks: the verify plan, with ψ known at least below q³
    /// so that every vector-valued component is complete past q⁰.
    pub fn psi_plan(&self) -> PrecisionPlan {
        self.plan().with_psi_at_least(3)
    }

    /// Run `f` over the selected systems in parallel, keeping their order.
    fn per_system<F>(&self, f: F) -> Vec<Check>
    where
        F: Fn(&RootSystemSpec) -> Vec<Check> + Sync + Send,
    {
        self.systems.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
    }
}

fn qmat(m: &[Vec<Q>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

#[derive(Serialize)]
struct FormData {
    weight: String,
    index: Vec<Vec<String>>,
    eta_character: i64,
    q_order: String,
    singular_terms: usize,
    series: SeriesRepr,
}

fn form_data(phi: &JacobiFormExpansion) -> FormData {
    FormData {
        weight: fmt_q(&phi.weight),
        index: qmat(&phi.index.gram),
        eta_character: phi.eta_character,
        q_order: fmt_q(&phi.q_order()),
        singular_terms: singular_part(phi).len(),
        series: SeriesRepr::from(&phi.series),
    }
}

fn form_summary(phi: &JacobiFormExpansion) -> String {
    format!(
        "weight {}, q-order {}, {} terms below q^{}",
        phi.weight,
        phi.q_order(),
        phi.series.num_terms(),
        phi.series.q_prec()
    )
}

pub fn classify() -> Vec<Check> {
    #[derive(Serialize)]
    struct Row {
        root_system: String,
        rank: usize,
        positive_roots: usize,
        h: Vec<String>,
    }
    let found = classify_q_order_one();
    let mut rows = Vec::new();
    for s in &found {
        match build_root_datum(s) {
            Ok(d) => rows.push(Row {
                root_system: s.to_string(),
                rank: d.rank(),
                positive_roots: d.num_positive(),
                h: d.h.iter().map(fmt_q).collect(),
            }),
            Err(e) => return vec![Check::error("classify", Some(&s.to_string()), e)],
        }
    }
    let got: BTreeSet<String> = found.iter().map(|s| s.to_string()).collect();
    let want: BTreeSet<String> = RootSystemSpec::canonical_names().iter().map(|s| s.to_string()).collect();
    let names: Vec<String> = found.iter().map(|s| s.to_string()).collect();
    vec![Check::new("classify", None, got == want, format!("{} root systems: {}", found.len(), names.join(", "))).with_data(&rows)]
}

pub fn lattice_report(ctx: &Ctx) -> Vec<Check> {
    #[derive(Serialize)]
    struct LatticeData {
        rank: usize,
        gram: Vec<Vec<String>>,
        parity: Parity,
    }
    #[derive(Serialize)]
    struct Data {
        rank: usize,
        positive_roots: usize,
        h: Vec<String>,
        lattice: LatticeData,
        even_sublattice_index: usize,
        even_sublattice: LatticeData,
        discriminant: FiniteQfInvariants,
        conway: ConwayReport,
    }
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let datum = build_root_datum(spec)?;
            let l = gram_underline_r(&datum);
            let ev = even_sublattice(&l)?;
            let d = DiscriminantFormData::from_even_lattice(&ev.lattice.int_gram().expect("even lattice is integral"))?;
            let inv = finite_qf_invariants(&d)?;
            let conway = conway_correspondence_check(spec)?;
            let ok = d.is_nondegenerate() && conway.agrees && inv.signature as usize == datum.rank() % 8;
            let summary = format!(
                "|D(L_ev)| = {}, invariant factors {:?}, level {}, Conway check {}",
                d.size(),
                inv.invariant_factors,
                inv.level,
                if conway.agrees { "agrees" } else { "disagrees" }
            );
            let data = Data {
                rank: datum.rank(),
                positive_roots: datum.num_positive(),
                h: datum.h.iter().map(fmt_q).collect(),
                lattice: LatticeData { rank: l.rank(), gram: qmat(&l.gram), parity: l.parity() },
                even_sublattice_index: ev.index(),
                even_sublattice: LatticeData {
                    rank: ev.lattice.rank(),
                    gram: qmat(&ev.lattice.gram),
                    parity: ev.lattice.parity(),
                },
                discriminant: inv,
                conway,
            };
            Ok(Check::new("lattice-report", Some(&root), ok, summary).with_data(&data))
        };
        vec![run().unwrap_or_else(|e| Check::error("lattice-report", Some(&root), e))]
    })
}

/// A theta block from explicit forms, or from a table row (optionally specialized at `x`).
pub fn block(eta_power: i64, forms: &[Vec<i64>], table: Option<&str>, x: Option<&[i64]>, q_prec: i64) -> Vec<Check> {
    let spec = match table {
        Some(name) => match table_row(name) {
            Some(row) => match x {
                Some(x) if x.len() == row.variables.len() => row.classical(x),
                Some(x) => {
                    return vec![Check::error(
                        "block",
                        Some(name),
                        format!("expected {} parameters, got {}", row.variables.len(), x.len()),
                    )]
                }
                None => row.spec(),
            },
            None => return vec![Check::error("block", Some(name), "no such table row")],
        },
        None => {
            if forms.is_empty() && eta_power == 0 {
                return vec![Check::error("block", None, "give --form or --table")];
            }
            if forms.iter().any(|f| f.len() != forms[0].len()) {
                return vec![Check::error("block", None, "forms of different lengths")];
            }
            ThetaBlockSpec::from_int_forms(eta_power, forms)
        }
    };
    match theta_block(&spec, Q::from_integer(q_prec)) {
        Ok(phi) => vec![Check::new("block", table, true, form_summary(&phi)).with_data(&form_data(&phi))],
        Err(e) => vec![Check::error("block", table, e)],
    }
}

pub fn theta_r_cmd(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        match ctx.engine.theta(spec, ctx.q_prec) {
            Ok(th) => {
                let ok = th.q_order() == Q::from_integer(1) && singular_part(&th).is_empty();
                vec![Check::new("theta-r", Some(&root), ok, form_summary(&th)).with_data(&form_data(&th))]
            }
            Err(e) => vec![Check::error("theta-r", Some(&root), e)],
        }
    })
}

pub fn specialize_cmd(ctx: &Ctx, x: Option<&[i64]>) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let th = ctx.engine.theta(spec, ctx.q_prec)?;
            let ones = vec![1i64; th.rank()];
            let x = x.unwrap_or(&ones);
            let s = specialize(&th, x)?;
            let mut summary = form_summary(&s);
            let mut ok = true;
            if let Some(row) = table_row(&root) {
                let direct = theta_block(&row.classical(x), s.series.q_prec())?;
                ok = direct.series.agrees_with(&s.series);
                summary.push_str(if ok { ", equals the table block" } else { ", differs from the table block" });
            }
            Ok(Check::new("specialize", Some(&root), ok, summary).with_data(&form_data(&s)))
        };
        vec![run().unwrap_or_else(|e| Check::error("specialize", Some(&root), e))]
    })
}

#[derive(Serialize)]
struct ComponentData {
    class: Elem,
    order: i64,
    q: String,
    complete_below: String,
    coefficients: Vec<(String, String)>,
}

fn decomposition_data(dec: &VVDecomposition) -> Vec<ComponentData> {
    dec.form
        .elements()
        .enumerate()
        .filter(|(i, _)| !dec.components[*i].is_empty())
        .map(|(i, g)| ComponentData {
            order: dec.form.order_of(&g),
            q: fmt_q(&dec.form.q(&g)),
            complete_below: fmt_q(&dec.complete_below[i]),
            coefficients: dec.components[i].iter().map(|(e, c)| (fmt_q(e), c.to_string())).collect(),
            class: g,
        })
        .collect()
}

pub fn decompose(ctx: &Ctx, psi: bool) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let phi = if psi {
                ctx.engine.theta_psi(spec, ctx.psi_plan().theta_prec)?.1
            } else {
                ctx.engine.theta(spec, ctx.q_prec)?
            };
            let dec = theta_decompose(&phi)?;
            let nonzero = dec.components.iter().filter(|c| !c.is_empty()).count();
            let summary = format!(
                "{}: {} classes, {} nonzero components, {} violations",
                if psi { "ψ_R" } else { "θ_R" },
                dec.form.size(),
                nonzero,
                dec.violations.len()
            );
            Ok(Check::new("decompose", Some(&root), dec.is_consistent(), summary).with_data(&decomposition_data(&dec)))
        };
        vec![run().unwrap_or_else(|e| Check::error("decompose", Some(&root), e))]
    })
}

pub fn verify(ctx: &Ctx) -> Vec<Check> {
    let plan = ctx.plan();
    ctx.per_system(|spec| {
        let root = spec.to_string();
        match ctx.engine.verify(spec, &plan) {
            Ok(r) => {
                let summary = format!(
                    "{}; {} coefficients, {} mismatches, C = {}, prefactor = θ_R: {}, exp form agrees: {}",
                    r.statement,
                    r.comparison.compared,
                    r.comparison.mismatches.len(),
                    r.weyl_c,
                    r.prefactor_is_theta,
                    r.exp_form_agrees
                );
                let mut c = Check::new("verify", Some(&root), r.verdict.is_pass(), summary);
                c.compared = Some(r.comparison.compared);
                c.first_mismatch = r.first_mismatch.clone();
                #[derive(Serialize)]
                struct Data<'a> {
                    theta_prec: &'a str,
                    psi_prec: &'a str,
                    weyl_c: &'a str,
                    prefactor_is_theta: bool,
                    exp_form_agrees: bool,
                    mismatches: usize,
                    statement: &'a str,
                }
                vec![c.with_data(&Data {
                    theta_prec: &r.theta_prec,
                    psi_prec: &r.psi_prec,
                    weyl_c: &r.weyl_c,
                    prefactor_is_theta: r.prefactor_is_theta,
                    exp_form_agrees: r.exp_form_agrees,
                    mismatches: r.comparison.mismatches.len(),
                    statement: &r.statement,
                })]
            }
            Err(e) => vec![Check::error("verify", Some(&root), e)],
        }
    })
}

fn psi_decomposition(ctx: &Ctx, spec: &RootSystemSpec) -> rootlift::Result<(JacobiFormExpansion, VVDecomposition)> {
    let (_, psi) = ctx.engine.theta_psi(spec, ctx.psi_plan().theta_prec)?;
    let dec = theta_decompose(&psi)?;
    Ok((psi, dec))
}

pub fn principal_parts(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let (_, dec) = psi_decomposition(ctx, spec)?;
            let r = principal_part_check(spec, &dec)?;
            let summary = format!(
                "F_0 constant {} (rank {}), complete: {}, {} singular cosets, {} candidates, matched {}",
                r.f0_constant,
                r.expected_constant,
                r.complete,
                r.singular_cosets,
                r.candidates_tried,
                r.matched.as_deref().unwrap_or("none")
            );
            Ok(Check::new("principal-parts", Some(&root), r.verdict.is_pass(), summary).with_data(&r))
        };
        vec![run().unwrap_or_else(|e| Check::error("principal-parts", Some(&root), e))]
    })
}

pub fn reflectivity(ctx: &Ctx, norm_bound: i64) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let (psi, dec) = psi_decomposition(ctx, spec)?;
            let r = reflectivity_report(&psi, &dec, Q::from_integer(norm_bound))?;
            let summary = format!(
                "{} classes with |2n − (ℓ,ℓ)| ≤ {}, {} of multiplicity 1, {} outside {{0, 1}}, weight {} (singular {})",
                r.classes_checked,
                norm_bound,
                r.nonzero.len(),
                r.bad.len(),
                r.weight,
                r.singular_weight
            );
            Ok(Check::new("reflectivity", Some(&root), r.verdict.is_pass(), summary).with_data(&r))
        };
        vec![run().unwrap_or_else(|e| Check::error("reflectivity", Some(&root), e))]
    })
}

pub fn divisors(ctx: &Ctx, norm_bound: i64) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let (psi, dec) = psi_decomposition(ctx, spec)?;
            let r = reflectivity_report(&psi, &dec, Q::from_integer(norm_bound))?;
            let table: Vec<String> = r.table.iter().map(|(k, v)| format!("{k}×{v}")).collect();
            let summary = format!("(order, norm) × classes: {}", table.join(" "));
            #[derive(Serialize)]
            struct Data<'a> {
                norm_bound: &'a str,
                divisors: &'a [DivisorClass],
                table: &'a std::collections::BTreeMap<String, usize>,
                bad: &'a [DivisorClass],
            }
            let data = Data { norm_bound: &r.norm_bound, divisors: &r.nonzero, table: &r.table, bad: &r.bad };
            Ok(Check::new("divisors", Some(&root), r.bad.is_empty(), summary).with_data(&data))
        };
        vec![run().unwrap_or_else(|e| Check::error("divisors", Some(&root), e))]
    })
}

pub fn invariants(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let d = even_discriminant_form(spec)?;
            let inv = invariant_subspace(&d)?;
            let expected = INVARIANT_DIMENSIONS.iter().find(|(n, _)| *n == root).map(|(_, k)| *k);
            let ok = expected.is_none_or(|k| k == inv.dimension);
            #[derive(Serialize)]
            struct Data {
                dimension: usize,
                expected: Option<usize>,
                form_size: usize,
                isotropic: usize,
                prime: u64,
                /// Basis vectors as sparse (class, coefficient) lists.
                basis: Vec<Vec<(Elem, String)>>,
            }
            let elems: Vec<Elem> = d.elements().collect();
            let basis = inv
                .basis
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| c.to_string() != "0")
                        .map(|(i, c)| (elems[i].clone(), c.to_string()))
                        .collect()
                })
                .collect();
            let summary = format!("dimension {} over Q(ζ), |D| = {}, certified mod {}", inv.dimension, d.size(), inv.prime);
            let data = Data {
                dimension: inv.dimension,
                expected,
                form_size: d.size(),
                isotropic: inv.isotropic.len(),
                prime: inv.prime,
                basis,
            };
            Ok(Check::new("invariants", Some(&root), ok, summary).with_data(&data))
        };
        vec![run().unwrap_or_else(|e| Check::error("invariants", Some(&root), e))]
    })
}

pub fn structure(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let mut out = Vec::new();
        match root.as_str() {
            "8A1" | "A1+B3" | "2A1+A2+B2" => out.push(match split_structure_check(spec) {
                Ok(r) => {
                    let s = format!(
                        "invariants spanned by v_i⊗w: {}, θ_R ∝ (v₁ − v₂)⊗w: {}",
                        r.spans, r.theta_proportional
                    );
                    Check::new("structure", Some(&root), r.verdict.is_pass(), s).with_data(&r)
                }
                Err(e) => Check::error("structure", Some(&root), e),
            }),
            "B2+G2" => out.push(match table_structure_check(spec) {
                Ok(r) => {
                    let s = format!("generator support {} after {} frames", r.generator_support, r.frames_tried);
                    Check::new("structure", Some(&root), r.verdict.is_pass(), s).with_data(&r)
                }
                Err(e) => Check::error("structure", Some(&root), e),
            }),
            _ => {}
        }
        out.push(match conway_correspondence_check(spec) {
            Ok(r) => {
                let s = format!("level {}, class {} ({}), invariants agree: {}", r.level, r.class, r.cycle_shape, r.agrees);
                Check::new("conway", Some(&root), r.agrees && r.even_genus_agrees, s).with_data(&r)
            }
            Err(e) => Check::error("conway", Some(&root), e),
        });
        out
    })
}

pub fn holomorphy(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        match ctx.engine.theta(spec, 6) {
            Ok(th) => {
                let sing = singular_part(&th).len();
                let ok = th.q_order() == Q::from_integer(1) && sing == 0;
                let s = format!("q-order {}, {} singular terms below q^6", fmt_q(&th.q_order()), sing);
                vec![Check::new("holomorphy", Some(&root), ok, s)]
            }
            Err(e) => vec![Check::error("holomorphy", Some(&root), e)],
        }
    })
}

pub fn milgram(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let d = even_discriminant_form(spec)?;
            let f = CycloField::new(d.field_order());
            let rank = spec.rank() as i64;
            let ok = match f.sqrt(d.size() as u64) {
                Some(r) => d.gauss_sum(&f) == f.mul(&r, &f.e(rank, 8)),
                None => false,
            };
            let s = format!("Σ e(q(γ)) = √{} e({}/8) in Q(ζ_{})", d.size(), rank % 8, f.order());
            Ok(Check::new("milgram", Some(&root), ok, s))
        };
        vec![run().unwrap_or_else(|e| Check::error("milgram", Some(&root), e))]
    })
}

/// s_x*θ_R at x = (1, …, 1) against the table block, and against T₋(2) and the G layers.
pub fn table_specializations(ctx: &Ctx) -> Vec<Check> {
    ctx.per_system(|spec| {
        let root = spec.to_string();
        let run = || -> rootlift::Result<Check> {
            let Some(row) = table_row(&root) else {
                return Ok(Check::new("table-specialization", Some(&root), false, "no table row"));
            };
            let th = ctx.engine.theta(spec, 9)?;
            let ones = vec![1i64; th.rank()];
            let s = specialize(&th, &ones)?;
            let block_ok = theta_block(&row.classical(&ones), s.series.q_prec())?.series.agrees_with(&s.series);
            let lhs = specialize(&hecke_tminus(&th, 2)?, &ones)?;
            let t2_ok = lhs.series.agrees_with(&hecke_tminus(&s, 2)?.series);
            let g = gritsenko_lift(&th, 3, 2)?;
            let gs = gritsenko_lift(&s, 3, 2)?;
            let mut g_ok = true;
            for m in 1..=2 {
                g_ok &= specialize(&th.with_series(g.layer(m)), &ones)?.series.agrees_with(&gs.layer(m));
            }
            let s = format!("block: {block_ok}, T₋(2): {t2_ok}, G layers (q ≤ 3, m ≤ 2): {g_ok}");
            Ok(Check::new("table-specialization", Some(&root), block_ok && t2_ok && g_ok, s))
        };
        vec![run().unwrap_or_else(|e| Check::error("table-specialization", Some(&root), e))]
    })
}

pub fn a4_difference() -> Check {
    let run = || -> rootlift::Result<Check> {
        let p = Q::from_integer(4);
        let lhs = theta_block(&THETA_A1B3_SPECIALIZED.spec(), p)?;
        let rhs = ps_sub(&theta_block(&THETA_A4_ONE.spec(), p)?.series, &theta_block(&THETA_A4_TWO.spec(), p)?.series)?;
        let ok = rhs.q_prec() >= p && lhs.series.q_prec() >= p && lhs.series.agrees_with(&rhs);
        Ok(Check::new(
            "a4-difference",
            None,
            ok,
            format!("θ_(A1+B3) = θ⁽¹⁾_A4 − θ⁽²⁾_A4 below q^4, {} terms", lhs.series.num_terms()),
        ))
    };
    run().unwrap_or_else(|e| Check::error("a4-difference", None, e))
}

pub fn suite(ctx: &Ctx) -> Vec<Check> {
    let mut out = classify();
    out.extend(holomorphy(ctx));
    out.extend(verify(ctx));
    out.extend(principal_parts(ctx));
    out.extend(reflectivity(ctx, 2));
    out.extend(invariants(ctx));
    out.extend(milgram(ctx));
    out.extend(table_specializations(ctx));
    out.push(a4_difference());
    out.extend(structure(ctx));
    out
}
