//! `ι : ℐ(G) → ℐ_B(Max ℂG)`, `B = ι(G₀)`, as an isomorphism of pseudogroups for principal `G`.

use std::collections::HashSet;
use std::sync::Arc;

use serde_json::json;

use super::{build_canonical_observer, ObserverMap, SweepConfig};
use crate::error::{Error, Result};
use crate::groupoid::{local_bisections, structure_report, FiniteGroupoid};
use crate::groupoid_algebra::GroupoidFunction;
use crate::measurement::InvolutiveQuantale;
use crate::report::{Check, Report};
use crate::scalar_linalg::GaussianRational;

pub const MEMBERSHIP: &str = "(a) ι(U) ∈ ℐ_B for every U ∈ ℐ(G)";
pub const RETRACTS: &str = "(b) r(ι(U)) = U";
pub const PRODUCTS: &str = "(c) ι(U)ι(V) = ι(UV)";
pub const PROBE: &str = "(d) negative probe excluded by sB ≤ s";
pub const INJECTIVE: &str = "ι injective on ℐ(G)";
pub const SURJECTIVE: &str = "(e) every s ∈ ℐ_B in the population is ι(r(s))";

/// Refuses non-principal groupoids. The negative probe `⟨δ_(0,1) + δ_(1,0)⟩`
/// is built when objects 0 and 1 are joined by unique arrows both ways.
pub fn pseudogroup_correspondence(g: Arc<FiniteGroupoid>, cfg: &SweepConfig) -> Result<Report> {
    let st = structure_report(&g);
    if let Some(x) = st.isotropy.iter().position(|arrows| arrows.len() > 1) {
        return Err(Error::NotPrincipal(x));
    }
    let o = build_canonical_observer(g.clone());
    let alg = o.domain();
    let b = alg.iota(g.units());
    let ig = local_bisections(&g);
    let images: Vec<_> = cfg.exec.map(&ig, |u| alg.iota(*u));

    let mut report = Report::new("pseudogroup", json!({ "bisections": ig.len() }), cfg.seed);

    let failing = cfg.exec.find_first(ig.len(), |k| alg.partial_unit_failure(&b, &images[k]).map(|cond| (k, cond)));
    report.push(Check::from_witness(
        MEMBERSHIP,
        failing.map(|(k, cond)| json!({ "U": o.codomain().describe(&ig[k]), "condition": cond })),
    ));

    let bad = (0..ig.len()).find(|&k| o.retract(&images[k]) != ig[k]);
    report.push(Check::from_witness(RETRACTS, bad.map(|k| json!({ "U": o.codomain().describe(&ig[k]) }))));

    let n = ig.len();
    let bad = cfg.exec.find_first(n * n, |t| {
        let (i, j) = (t / n, t % n);
        (alg.mul(&images[i], &images[j]) != alg.iota(g.product(ig[i], ig[j]))).then_some((i, j))
    });
    report.push(Check::from_witness(
        PRODUCTS,
        bad.map(|(i, j)| json!({ "U": o.codomain().describe(&ig[i]), "V": o.codomain().describe(&ig[j]) })),
    ));

    match probe(&g) {
        Some(s) => {
            let s = alg.span(&[s]).expect("one vector of the right dimension");
            let outcome = alg.partial_unit_failure(&b, &s);
            let witness = (outcome != Some("sb ≤ s")).then(|| json!({ "s": alg.describe(&s), "failure": outcome }));
            report.push(Check::from_witness(PROBE, witness));
        }
        None => report.note("negative probe", "not applicable"),
    }

    let pop = o.domain_population(cfg);
    let members: Vec<_> = pop.elements().iter().filter(|s| alg.partial_unit_failure(&b, s).is_none()).collect();
    let bad = members.iter().find(|s| {
        let u = o.retract(s);
        !g.is_bisection(u) || alg.iota(u) != ***s
    });
    report.push(Check::from_witness(SURJECTIVE, bad.map(|s| json!({ "s": alg.describe(s) }))));

    let distinct: HashSet<_> = images.iter().collect();
    report.push(Check::from_witness(
        INJECTIVE,
        (distinct.len() != ig.len()).then(|| json!({ "bisections": ig.len(), "distinct images": distinct.len() })),
    ));
    report.note("ℐ_B members in population", json!(members.len()));
    if report.passed() {
        report.note("bijection", format!("{} ↔ {} bijection verified", ig.len(), distinct.len()));
    }
    Ok(report)
}

fn probe(g: &Arc<FiniteGroupoid>) -> Option<GroupoidFunction> {
    if g.object_count() < 2 {
        return None;
    }
    let find = |cod: usize, dom: usize| {
        let hits: Vec<usize> = (0..g.arrow_count()).filter(|&a| g.cod(a) == cod && g.dom(a) == dom).collect();
        (hits.len() == 1).then(|| hits[0])
    };
    let (a, b) = (find(0, 1)?, find(1, 0)?);
    Some(GroupoidFunction::from_terms(g.clone(), &[(a, GaussianRational::one()), (b, GaussianRational::one())]))
}
