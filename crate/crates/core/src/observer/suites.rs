//! Observer law suites.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::population::Population;
use super::sweep::{sweep, sweep_rows, Coverage, Found};
use super::{Cod, Dom, ObserverMap, SweepConfig};
use crate::error::{Error, Result};
use crate::measurement::{FiniteQuantale, InvolutiveQuantale};
use crate::report::{Check, Report, Status};

/// The least failing middle index of a row, with both sides of the inequality.
type RowFailure<W> = Option<(usize, (W, W))>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Embedding homomorphism, retraction, symmetry, preparation and the derived context facts.
    Axioms,
    Etale,
    Istable,
    /// Increasing, full and multiplicative.
    Increasing,
    Persistency,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Axioms, Suite::Etale, Suite::Istable, Suite::Increasing, Suite::Persistency];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Etale => "etale",
            Suite::Istable => "istable",
            Suite::Increasing => "increasing",
            Suite::Persistency => "persistency",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Malformed(format!("unknown suite `{s}`")))
    }
}

/// Runs `suites` on the observer's own populations.
pub fn verify_observer<O: ObserverMap>(o: &O, suites: &[Suite], cfg: &SweepConfig) -> Result<Report> {
    let dom = o.domain_population(cfg);
    let cod = o.codomain_population(cfg);
    verify_observer_on(o, suites, &dom, &cod, cfg)
}

/// Runs `suites` on explicit populations.
pub fn verify_observer_on<O: ObserverMap>(
    o: &O,
    suites: &[Suite],
    dom: &Population<Dom<O>>,
    cod: &Population<Cod<O>>,
    cfg: &SweepConfig,
) -> Result<Report> {
    if dom.is_empty() || cod.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let mut h = Harness::new(o, dom, cod, cfg);
    for &s in suites {
        match s {
            Suite::Axioms => h.axioms(),
            Suite::Etale => h.etale(),
            Suite::Istable => h.istable(),
            Suite::Increasing => h.increasing(),
            Suite::Persistency => h.persistency(),
        }
    }
    let name = if suites == Suite::ALL {
        "all".to_string()
    } else {
        suites.iter().map(|s| s.name()).collect::<Vec<_>>().join("+")
    };
    Ok(h.finish(name))
}

/// Outcome of a persistency search.
#[derive(Clone, Debug, PartialEq)]
pub enum Persistency {
    /// No violating triple in the covered tuples.
    PersistentOverPopulation,
    /// `{m, omega, n, lhs, rhs, index, sampled}`.
    Witness(Value),
}

/// Searches `r(m ι(ω) n) ≠ r(m) ω r(n)`; the witness is least in `(m, ω, n)` order.
pub fn find_persistency_witness<O: ObserverMap>(
    o: &O,
    dom: &Population<Dom<O>>,
    cod: &Population<Cod<O>>,
    cfg: &SweepConfig,
) -> Persistency {
    let h = Harness::new(o, dom, cod, cfg);
    match h.persistency_search().0 {
        None => Persistency::PersistentOverPopulation,
        Some(w) => Persistency::Witness(w),
    }
}

pub(super) const PERSISTENCY: &str = "persistency r(mι(ω)n) = r(m)ωr(n)";

struct Harness<'a, O: ObserverMap> {
    o: &'a O,
    dom: &'a Population<Dom<O>>,
    cod: &'a Population<Cod<O>>,
    iotas: Vec<Dom<O>>,
    cfg: &'a SweepConfig,
    checks: Vec<Check>,
    coverage: Map<String, Value>,
    notes: Vec<(String, Value)>,
}

impl<'a, O: ObserverMap> Harness<'a, O> {
    fn new(o: &'a O, dom: &'a Population<Dom<O>>, cod: &'a Population<Cod<O>>, cfg: &'a SweepConfig) -> Self {
        let iotas = cfg.exec.map(cod.elements(), |w| o.iota(w));
        Self { o, dom, cod, iotas, cfg, checks: Vec::new(), coverage: Map::new(), notes: Vec::new() }
    }

    fn finish(self, suite: String) -> Report {
        let population = json!({
            "domain": self.dom.summary(),
            "codomain": self.cod.summary(),
            "samples": self.cfg.samples,
            "threshold": self.cfg.threshold,
            "tuple_budget": self.cfg.tuple_budget,
            "coverage": self.coverage,
        });
        let mut report = Report::new(suite, population, self.cfg.seed);
        for c in self.checks {
            report.push(c);
        }
        for (k, v) in self.notes {
            report.note(k, v);
        }
        report
    }

    fn m(&self, i: usize) -> &Dom<O> {
        &self.dom.elements()[i]
    }

    fn w(&self, k: usize) -> &Cod<O> {
        &self.cod.elements()[k]
    }

    fn dm(&self, m: &Dom<O>) -> Value {
        self.o.domain().describe(m)
    }

    fn dw(&self, w: &Cod<O>) -> Value {
        self.o.codomain().describe(w)
    }

    fn record<W>(
        &mut self,
        law: &str,
        found: Option<Found<W>>,
        coverage: Coverage,
        render: impl Fn(&Self, &Found<W>) -> Value,
    ) {
        self.coverage.insert(law.to_string(), coverage.to_json());
        let witness = found.map(|f| {
            let mut w = render(self, &f);
            if let Value::Object(map) = &mut w {
                map.insert("index".into(), json!(f.index));
                if f.sampled {
                    map.insert("sampled".into(), json!(true));
                    map.insert("seed".into(), json!(self.cfg.seed));
                }
            }
            w
        });
        self.checks.push(Check::from_witness(law, witness));
    }

    fn fail_outright(&mut self, law: &str, reason: &str) {
        self.checks.push(Check::fail(law, json!({ "reason": reason })));
    }

    fn nd(&self) -> usize {
        self.dom.len()
    }

    fn nc(&self) -> usize {
        self.cod.len()
    }

    fn sd(&self) -> usize {
        self.dom.structured()
    }

    fn sc(&self) -> usize {
        self.cod.structured()
    }

    // ---- axioms ----

    fn axioms(&mut self) {
        let (o, cfg) = (self.o, self.cfg);
        let (d, c) = (o.domain(), o.codomain());

        let law = "ι preserves joins and 0";
        let (found, cov) = if o.iota(&c.bottom()) != d.bottom() {
            (
                Some(Found { index: vec![], sampled: false, witness: (None, None) }),
                Coverage { exhaustive: true, tuples: 1 },
            )
        } else {
            sweep(cfg, law, &[self.nc(), self.nc()], &[self.sc(), self.sc()], |t| {
                let (a, b) = (&self.iotas[t[0]], &self.iotas[t[1]]);
                let lhs = o.iota(&c.join(self.w(t[0]), self.w(t[1])));
                (lhs != d.join(a, b)).then_some((Some(t[0]), Some(t[1])))
            })
        };
        self.record(law, found, cov, |h, f| match f.witness {
            (Some(a), Some(b)) => json!({ "omega": h.dw(h.w(a)), "omega'": h.dw(h.w(b)) }),
            _ => json!({ "omega": h.dw(&c.bottom()), "reason": "ι(0) ≠ 0" }),
        });

        let law = "ι preserves products";
        let (found, cov) = sweep(cfg, law, &[self.nc(), self.nc()], &[self.sc(), self.sc()], |t| {
            let lhs = o.iota(&c.mul(self.w(t[0]), self.w(t[1])));
            (lhs != d.mul(&self.iotas[t[0]], &self.iotas[t[1]])).then_some(())
        });
        self.record(law, found, cov, |h, f| json!({ "omega": h.dw(h.w(f.index[0])), "omega'": h.dw(h.w(f.index[1])) }));

        let law = "ι preserves involution";
        let (found, cov) = sweep(cfg, law, &[self.nc()], &[self.sc()], |t| {
            (o.iota(&c.star(self.w(t[0]))) != d.star(&self.iotas[t[0]])).then_some(())
        });
        self.record(law, found, cov, |h, f| json!({ "omega": h.dw(h.w(f.index[0])) }));

        let law = "r preserves joins and 0";
        let (found, cov) = if o.retract(&d.bottom()) != c.bottom() {
            (Some(Found { index: vec![], sampled: false, witness: () }), Coverage { exhaustive: true, tuples: 1 })
        } else {
            sweep(cfg, law, &[self.nd(), self.nd()], &[self.sd(), self.sd()], |t| {
                let (m, n) = (self.m(t[0]), self.m(t[1]));
                (o.retract(&d.join(m, n)) != c.join(&o.retract(m), &o.retract(n))).then_some(())
            })
        };
        self.record(law, found, cov, |h, f| match f.index.as_slice() {
            [i, j] => json!({ "m": h.dm(h.m(*i)), "n": h.dm(h.m(*j)) }),
            _ => json!({ "m": h.dm(&d.bottom()), "reason": "r(0) ≠ 0" }),
        });

        let law = "symmetry r(m*) = r(m)*";
        let (found, cov) = sweep(cfg, law, &[self.nd()], &[self.sd()], |t| {
            let m = self.m(t[0]);
            (o.retract(&d.star(m)) != c.star(&o.retract(m))).then_some(())
        });
        self.record(law, found, cov, |h, f| json!({ "m": h.dm(h.m(f.index[0])) }));

        let law = "preparation r(mι(ω)) = r(m)ω";
        let (found, cov) = sweep(cfg, law, &[self.nd()], &[self.sd()], |t| {
            let m = self.m(t[0]);
            let rm = o.retract(m);
            let row = o.retract_right_row(m, self.cod.elements(), &self.iotas);
            (0..self.nc())
                .find(|&k| row[k] != c.mul(&rm, self.w(k)))
                .map(|k| (k, row[k].clone(), c.mul(&rm, self.w(k))))
        });
        self.record(law, found, cov, |h, f| {
            let (k, lhs, rhs) = &f.witness;
            json!({ "m": h.dm(h.m(f.index[0])), "omega": h.dw(h.w(*k)), "lhs": h.dw(lhs), "rhs": h.dw(rhs) })
        });

        let law = "retraction r∘ι = id";
        let (found, cov) = sweep(cfg, law, &[self.nc()], &[self.sc()], |t| {
            (o.retract(&self.iotas[t[0]]) != *self.w(t[0])).then_some(())
        });
        self.record(law, found, cov, |h, f| json!({ "omega": h.dw(h.w(f.index[0])) }));

        let law = "result condition r(ι(ω)m) = ωr(m)";
        let (found, cov) = sweep(cfg, law, &[self.nd()], &[self.sd()], |t| {
            let m = self.m(t[0]);
            let rm = o.retract(m);
            let row = o.retract_left_row(m, self.cod.elements(), &self.iotas);
            (0..self.nc())
                .find(|&k| row[k] != c.mul(self.w(k), &rm))
                .map(|k| (k, row[k].clone(), c.mul(self.w(k), &rm)))
        });
        self.record(law, found, cov, |h, f| {
            let (k, lhs, rhs) = &f.witness;
            json!({ "m": h.dm(h.m(f.index[0])), "omega": h.dw(h.w(*k)), "lhs": h.dw(lhs), "rhs": h.dw(rhs) })
        });

        // x lies in ι(Ω) iff ι(r(x)) = x, since r∘ι = id.
        let law = "ι(Ω) closed under product and involution";
        let in_image = |x: &Dom<O>| o.iota(&o.retract(x)) == *x;
        let (found, cov) = sweep(cfg, law, &[self.nc(), self.nc()], &[self.sc(), self.sc()], |t| {
            if t[1] == 0 && !in_image(&d.star(&self.iotas[t[0]])) {
                return Some("involution");
            }
            (!in_image(&d.mul(&self.iotas[t[0]], &self.iotas[t[1]]))).then_some("product")
        });
        self.record(
            law,
            found,
            cov,
            |h, f| json!({ "omega": h.dw(h.w(f.index[0])), "omega'": h.dw(h.w(f.index[1])), "operation": f.witness }),
        );
    }

    // ---- étale ----

    /// The codomain unit, or a failed check naming the missing structure.
    fn unit_or_fail(&mut self, law: &str) -> Option<Cod<O>> {
        let e = self.o.codomain().unit();
        if e.is_none() {
            self.fail_outright(law, "codomain has no unit");
        }
        e
    }

    fn in_pseudogroup(&self, e: &Cod<O>, x: &Cod<O>) -> bool {
        self.o.codomain().partial_unit_failure(e, x).is_none()
    }

    /// `r(m) ω r(n) ≤ r(m ι(ω) n)` on the index pairs `ms × ns`; returns the failing `k`.
    fn etale_row(&self, i: usize, j: usize) -> RowFailure<Cod<O>> {
        let c = self.o.codomain();
        let (m, n) = (self.m(i), self.m(j));
        let (rm, rn) = (self.o.retract(m), self.o.retract(n));
        let row = self.o.retract_sandwich_row(m, n, self.cod.elements(), &self.iotas);
        let outer = self.o.codomain_sandwich_row(&rm, &rn, self.cod.elements());
        (0..self.nc()).find(|&k| !c.leq(&outer[k], &row[k])).map(|k| (k, (outer[k].clone(), row[k].clone())))
    }

    fn etale(&mut self) {
        let law = "étale r(m)ωr(n) ≤ r(mι(ω)n)";
        let Some(e) = self.unit_or_fail(law) else { return };
        let o = self.o;
        let sel: Vec<usize> = (0..self.nd()).filter(|&i| self.in_pseudogroup(&e, &o.retract(self.m(i)))).collect();
        let sel_structured = sel.iter().filter(|&&i| i < self.sd()).count();
        let (found, cov) =
            sweep_rows(self.cfg, law, [sel.len(), sel.len()], [sel_structured, sel_structured], |a, b| {
                self.etale_row(sel[a], sel[b])
            });
        let found = found.map(|f| Found { index: vec![sel[f.index[0]], f.index[1], sel[f.index[2]]], ..f });
        self.record(law, found, cov, |h, f| h.triple_witness(f));

        let c = o.codomain();
        let strict_law = "étale strictness search";
        let (strict, _) =
            sweep_rows(self.cfg, strict_law, [sel.len(), sel.len()], [sel_structured, sel_structured], |a, b| {
                let (m, n) = (self.m(sel[a]), self.m(sel[b]));
                let (rm, rn) = (o.retract(m), o.retract(n));
                let row = o.retract_sandwich_row(m, n, self.cod.elements(), &self.iotas);
                let outer = o.codomain_sandwich_row(&rm, &rn, self.cod.elements());
                (0..self.nc())
                    .find(|&k| outer[k] != row[k] && c.leq(&outer[k], &row[k]))
                    .map(|k| (k, (outer[k].clone(), row[k].clone())))
            });
        let note = match strict {
            None => json!("none found"),
            Some(f) => {
                let f = Found { index: vec![sel[f.index[0]], f.index[1], sel[f.index[2]]], ..f };
                self.triple_witness(&f)
            }
        };
        self.notes.push(("étale strict instance".into(), note));
        self.notes.push(("étale pairs with r(m), r(n) ∈ ℐ(Ω)".into(), json!(sel.len())));
    }

    fn triple_witness(&self, f: &Found<(Cod<O>, Cod<O>)>) -> Value {
        let (lhs, rhs) = &f.witness;
        json!({
            "m": self.dm(self.m(f.index[0])),
            "omega": self.dw(self.w(f.index[1])),
            "n": self.dm(self.m(f.index[2])),
            "lhs": self.dw(lhs),
            "rhs": self.dw(rhs),
        })
    }

    // ---- ℐ-stability ----

    fn istable(&mut self) {
        const C1: &str = "ℐ-stable (1) r(s) ∈ ℐ(Ω)";
        const C2: &str = "ℐ-stable (2) r(s)r(t) ≤ r(st)";
        const C3: &str = "ℐ-stable (3) r(s)ωr(t) ≤ r(sι(ω)t)";
        const AGREE: &str = "ℐ-stability conditions agree";
        let Some(e) = self.unit_or_fail(AGREE) else { return };
        let (o, cfg) = (self.o, self.cfg);
        let (d, c) = (o.domain(), o.codomain());
        let b = o.iota(&e);
        if !d.is_projection(&b) {
            self.fail_outright(AGREE, "b = ι(e) is not a projection");
            return;
        }
        // ℐ_b(M) on the population, with ι(ℐ(Ω)) added and closed under involution.
        let mut candidates: Vec<Dom<O>> = c.partial_units().iter().map(|u| o.iota(u)).collect();
        candidates.extend(self.dom.elements().iter().cloned());
        let members: Vec<Dom<O>> = cfg
            .exec
            .map(&candidates, |s| d.partial_unit_failure(&b, s).is_none())
            .into_iter()
            .zip(candidates)
            .filter_map(|(ok, s)| ok.then_some(s))
            .collect();
        let with_stars: Vec<Dom<O>> = members.iter().flat_map(|s| [s.clone(), d.star(s)]).collect();
        let s_pop = Population::listed(with_stars, Value::Null);
        let s = s_pop.elements();
        let ns = s.len();
        self.notes.push(("ℐ_b(M) members tested".into(), json!(ns)));

        let (f1, cov) =
            sweep(cfg, C1, &[ns], &[ns], |t| (!self.in_pseudogroup(&e, &o.retract(&s[t[0]]))).then_some(()));
        self.record(C1, f1, cov, |h, f| {
            let x = &s[f.index[0]];
            json!({ "s": h.dm(x), "r(s)": h.dw(&o.retract(x)) })
        });

        let (f2, cov) = sweep(cfg, C2, &[ns, ns], &[ns, ns], |t| {
            let (x, y) = (&s[t[0]], &s[t[1]]);
            let lhs = c.mul(&o.retract(x), &o.retract(y));
            let rhs = o.retract_product(x, y);
            (!c.leq(&lhs, &rhs)).then_some((lhs, rhs))
        });
        self.record(C2, f2, cov, |h, f| {
            let (lhs, rhs) = &f.witness;
            json!({ "s": h.dm(&s[f.index[0]]), "t": h.dm(&s[f.index[1]]), "lhs": h.dw(lhs), "rhs": h.dw(rhs) })
        });

        let c3_row = |a: usize, bb: usize| {
            let (x, y) = (&s[a], &s[bb]);
            let (rx, ry) = (o.retract(x), o.retract(y));
            let row = o.retract_sandwich_row(x, y, self.cod.elements(), &self.iotas);
            let outer = o.codomain_sandwich_row(&rx, &ry, self.cod.elements());
            (0..self.nc()).find(|&k| !c.leq(&outer[k], &row[k])).map(|k| (k, (outer[k].clone(), row[k].clone())))
        };
        let (f3, cov) = sweep_rows(cfg, C3, [ns, ns], [ns, ns], c3_row);
        // The equivalence is stated for étale observers, and its proof only
        // uses the étale inequality on pairs of ℐ_b(M) with r(s), r(t) ∈ ℐ(Ω).
        let sel: Vec<usize> = (0..ns).filter(|&k| self.in_pseudogroup(&e, &o.retract(&s[k]))).collect();
        let (not_etale, _) =
            sweep_rows(cfg, "étale on ℐ_b(M)", [sel.len(), sel.len()], [sel.len(), sel.len()], |a, bb| {
                c3_row(sel[a], sel[bb])
            });

        self.record(C3, f3, cov, |h, f| {
            let (lhs, rhs) = &f.witness;
            json!({
                "s": h.dm(&s[f.index[0]]),
                "omega": h.dw(h.w(f.index[1])),
                "t": h.dm(&s[f.index[2]]),
                "lhs": h.dw(lhs),
                "rhs": h.dw(rhs),
            })
        });

        let n = self.checks.len();
        let statuses: Vec<Status> = self.checks[n - 3..].iter().map(|c| c.status).collect();
        let agree = statuses.iter().all(|&st| st == statuses[0]);
        let check = match not_etale {
            Some(f) if !agree => {
                let (lhs, rhs) = &f.witness;
                let (x, y) = (&s[sel[f.index[0]]], &s[sel[f.index[2]]]);
                let etale = json!({
                    "s": self.dm(x),
                    "omega": self.dw(self.w(f.index[1])),
                    "t": self.dm(y),
                    "lhs": self.dw(lhs),
                    "rhs": self.dw(rhs),
                });
                Check {
                    law: AGREE.into(),
                    status: Status::Inconclusive,
                    witness: Some(json!({ "statuses": statuses, "not étale on ℐ_b(M)": etale })),
                }
            }
            _ => Check::from_witness(AGREE, (!agree).then(|| json!({ "statuses": statuses }))),
        };
        self.checks.push(check);
    }

    // ---- increasing, full, multiplicative ----

    fn increasing(&mut self) {
        let (o, cfg) = (self.o, self.cfg);
        let (d, c) = (o.domain(), o.codomain());

        let law = "increasing V ≤ ι(r(V))";
        let (found, cov) = sweep(cfg, law, &[self.nd()], &[self.sd()], |t| {
            let m = self.m(t[0]);
            (!d.leq(m, &o.iota(&o.retract(m)))).then_some(())
        });
        self.record(law, found, cov, |h, f| json!({ "V": h.dm(h.m(f.index[0])) }));

        let law = "full ι(1) = 1";
        let witness = (o.iota(&c.top()) != d.top()).then(|| json!({ "ι(1)": self.dm(&o.iota(&c.top())) }));
        self.coverage.insert(law.into(), Coverage { exhaustive: true, tuples: 1 }.to_json());
        self.checks.push(Check::from_witness(law, witness));

        let law = "multiplicative r(mn) ≤ r(m)r(n)";
        let (found, cov) = sweep(cfg, law, &[self.nd(), self.nd()], &[self.sd(), self.sd()], |t| {
            let (m, n) = (self.m(t[0]), self.m(t[1]));
            let lhs = o.retract_product(m, n);
            let rhs = c.mul(&o.retract(m), &o.retract(n));
            (!c.leq(&lhs, &rhs)).then_some((lhs, rhs))
        });
        self.record(law, found, cov, |h, f| {
            let (lhs, rhs) = &f.witness;
            json!({ "m": h.dm(h.m(f.index[0])), "n": h.dm(h.m(f.index[1])), "lhs": h.dw(lhs), "rhs": h.dw(rhs) })
        });
    }

    // ---- persistency ----

    fn persistency_search(&self) -> (Option<Value>, Coverage) {
        let o = self.o;
        let (found, cov) = sweep_rows(self.cfg, PERSISTENCY, [self.nd(), self.nd()], [self.sd(), self.sd()], |i, j| {
            let (m, n) = (self.m(i), self.m(j));
            let (rm, rn) = (o.retract(m), o.retract(n));
            let row = o.retract_sandwich_row(m, n, self.cod.elements(), &self.iotas);
            let outer = o.codomain_sandwich_row(&rm, &rn, self.cod.elements());
            (0..self.nc()).find(|&k| outer[k] != row[k]).map(|k| (k, (row[k].clone(), outer[k].clone())))
        });
        let witness = found.map(|f| {
            let mut w = self.triple_witness(&f);
            w["index"] = json!(f.index);
            if f.sampled {
                w["sampled"] = json!(true);
                w["seed"] = json!(self.cfg.seed);
            }
            w
        });
        (witness, cov)
    }

    fn persistency(&mut self) {
        let (witness, cov) = self.persistency_search();
        self.coverage.insert(PERSISTENCY.into(), cov.to_json());
        let check = match witness {
            Some(w) => Check::fail(PERSISTENCY, w),
            None if self.o.expects_persistency() => Check::pass(PERSISTENCY),
            None => Check { law: PERSISTENCY.into(), status: Status::Inconclusive, witness: None },
        };
        self.checks.push(check);
    }
}
