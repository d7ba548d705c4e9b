//! Worked examples reproduced as reports.

use std::sync::Arc;

use mspace::finite_quantale::{direct_sum, FiniteInvolutiveQuantale, FiniteSupLattice};
use mspace::groupoid::FiniteGroupoid;
use mspace::groupoid_algebra::{convolve, matrix_rep, GroupoidFunction};
use mspace::linear_powerspace::{describe_subspace, qubit_spins, spin_library, Powerspace};
use mspace::scalar_linalg::{subspace_intersect, subspace_sum, Matrix, Subspace};
use mspace::{Check, InvolutiveQuantale, Report};
use serde_json::json;

use crate::CliError;

/// Largest `n` for which `pair(n)` fits the arrow-set representation.
pub const MAX_SCHWINGER: usize = 11;
/// Largest bin count for which `𝟚² × P(bins)` fits the materialization threshold.
pub const MAX_BINS: u32 = 10;

pub const SPIN_JOIN: &str = "z↑ ∨ z↓ = z = D₂";
pub const SPIN_MEET: &str = "z↓ ∧ z↑ = 0";
pub const SPIN_PRODUCT: &str = "z · z↑ = z↑";
pub const SPIN_DISTINCT: &str = "x ≠ z in Max M₂";
pub const SPIN_COLLAPSE: &str = "x = z in Max ℂ²";

pub const SCHWINGER_COMPOSE: &str = "M(a″,a′)M(a′,a) = M(a″,a)";
pub const SCHWINGER_ORTHOGONAL: &str = "M(a‴,a″)M(a′,a) = 0 for a″ ≠ a′";
pub const SCHWINGER_RESOLUTION: &str = "Σₐ M(a) = 1";
pub const SCHWINGER_DIAGONAL: &str = "⋁ₐ⟨M(a)⟩ = diagonal algebra";
pub const SCHWINGER_NOT_UNIT: &str = "⋁ₐ⟨M(a)⟩ ≠ ⟨1⟩";

pub const TWOSLIT_JOIN: &str = "(slit₁,U) ∨ (slit₂,U) = (1,U)";
pub const TWOSLIT_MEET: &str = "(slit₁,U) ∧ (slit₂,U) = (0,U)";

pub fn spin(seed: u64) -> Report {
    let s = spin_library();
    let alg = &s.algebra;
    let g = alg.groupoid().clone();
    let describe = |v: &Subspace| describe_subspace(&g, v);
    let mut r = Report::new("demo spin", json!({ "kind": "exact" }), seed);

    let join = subspace_sum(&s.z_up, &s.z_down).expect("same ambient space");
    let diagonal = alg.iota(g.units());
    r.push(Check::from_witness(
        SPIN_JOIN,
        (join != s.z || s.z != diagonal).then(|| json!({ "join": describe(&join), "z": describe(&s.z) })),
    ));

    let meet = subspace_intersect(&s.z_down, &s.z_up).expect("same ambient space");
    r.push(Check::from_witness(SPIN_MEET, (!meet.is_zero()).then(|| json!({ "meet": describe(&meet) }))));

    let product = alg.mul(&s.z, &s.z_up);
    r.push(Check::from_witness(SPIN_PRODUCT, (product != s.z_up).then(|| json!({ "product": describe(&product) }))));

    r.push(Check::from_witness(SPIN_DISTINCT, (s.x == s.z).then(|| json!({ "x": describe(&s.x) }))));

    let q = qubit_spins();
    let x = subspace_sum(&q.x_up, &q.x_down).expect("dimension 2");
    let z = subspace_sum(&q.z_up, &q.z_down).expect("dimension 2");
    r.push(Check::from_witness(SPIN_COLLAPSE, (x != z).then(|| json!({ "x": x, "z": z }))));
    r.note("contrast", "x and z differ as subspaces of M₂ but both span ℂ²");
    r
}

pub fn schwinger(n: usize, seed: u64) -> Result<Report, CliError> {
    if !(2..=MAX_SCHWINGER).contains(&n) {
        return Err(CliError::Usage(format!("schwinger needs 2 ≤ n ≤ {MAX_SCHWINGER}, got {n}")));
    }
    let g = Arc::new(FiniteGroupoid::pair(n)?);
    let alg = Powerspace::new(g.clone());
    // M(a′, a) is the arrow a → a′, whose id is a′·n + a.
    let m = |to: usize, from: usize| GroupoidFunction::delta(g.clone(), to * n + from);
    let mut r = Report::new("demo schwinger", json!({ "kind": "exhaustive", "n": n }), seed);

    let bad = (0..n * n * n)
        .map(|t| (t / (n * n), t / n % n, t % n))
        .find(|&(a2, a1, a)| convolve(&m(a2, a1), &m(a1, a)).expect("one groupoid") != m(a2, a));
    r.push(Check::from_witness(SCHWINGER_COMPOSE, bad.map(|(a2, a1, a)| json!({ "a″": a2, "a′": a1, "a": a }))));

    let bad = (0..n * n * n * n)
        .map(|t| (t / (n * n * n), t / (n * n) % n, t / n % n, t % n))
        .filter(|&(_, a2, a1, _)| a2 != a1)
        .find(|&(a3, a2, a1, a)| !convolve(&m(a3, a2), &m(a1, a)).expect("one groupoid").is_zero());
    r.push(Check::from_witness(
        SCHWINGER_ORTHOGONAL,
        bad.map(|(a3, a2, a1, a)| json!({ "a‴": a3, "a″": a2, "a′": a1, "a": a })),
    ));

    let total = (0..n).try_fold(GroupoidFunction::zero(g.clone()), |acc, a| acc.add(&m(a, a)))?;
    let rep = matrix_rep(&total)?;
    r.push(Check::from_witness(
        SCHWINGER_RESOLUTION,
        (rep != Matrix::identity(n))
            .then(|| json!({ "sum": alg.describe(&alg.span(std::slice::from_ref(&total)).expect("one vector")) })),
    ));

    let join = (0..n).try_fold(Subspace::zero(alg.dim()), |acc, a| subspace_sum(&acc, &alg.span(&[m(a, a)])?))?;
    let diagonal = alg.iota(g.units());
    r.push(Check::from_witness(SCHWINGER_DIAGONAL, (join != diagonal).then(|| json!({ "join": alg.describe(&join) }))));
    let unit = InvolutiveQuantale::unit(&alg).expect("Max ℂG is unital");
    r.push(Check::from_witness(SCHWINGER_NOT_UNIT, (join == unit).then(|| json!({ "join": alg.describe(&join) }))));
    r.note("composition table", format!("{} products verified", n * n * n));
    Ok(r)
}

pub fn twoslit(bins: u32, seed: u64) -> Result<Report, CliError> {
    if !(1..=MAX_BINS).contains(&bins) {
        return Err(CliError::Usage(format!("twoslit needs 1 ≤ k ≤ {MAX_BINS}, got {bins}")));
    }
    let slits = FiniteInvolutiveQuantale::locale(FiniteSupLattice::powerset(2)?);
    let screen = FiniteInvolutiveQuantale::locale(FiniteSupLattice::powerset(bins)?);
    let m = direct_sum(&slits, &screen)?;
    let sets = screen.size();
    // (i, U) has index i·|P(bins)| + U; in 𝟚² slit₁ = 0b01, slit₂ = 0b10, 1 = 0b11.
    let at = |i: usize, u: usize| i * sets + u;
    let bins_of = |u: usize| (0..bins as usize).filter(|k| u >> k & 1 == 1).collect::<Vec<_>>();
    let mut r = Report::new("demo twoslit", json!({ "kind": "exhaustive", "bins": bins, "elements": m.size() }), seed);

    let bad = (0..sets).find(|&u| m.join(at(1, u), at(2, u)) != at(3, u));
    r.push(Check::from_witness(TWOSLIT_JOIN, bad.map(|u| json!({ "U": bins_of(u) }))));
    let bad = (0..sets).find(|&u| m.meet(at(1, u), at(2, u)) != at(0, u));
    r.push(Check::from_witness(TWOSLIT_MEET, bad.map(|u| json!({ "U": bins_of(u) }))));
    r.note("bin sets", json!(sets));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demos_pass_at_small_sizes() {
        assert!(spin(0).passed());
        assert!(schwinger(2, 0).unwrap().passed());
        assert!(twoslit(1, 0).unwrap().passed());
    }

    #[test]
    fn sizes_are_checked() {
        assert!(matches!(schwinger(1, 0), Err(CliError::Usage(_))));
        assert!(matches!(twoslit(0, 0), Err(CliError::Usage(_))));
    }
}
