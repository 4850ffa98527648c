use std::fmt::Write as _;

use isorec::arith::{self, PrimeField};
use isorec::companion::{trace_sequence, Domain};
use isorec::fp_algebra::{self, FactorizationJson, FpFactorization};
use isorec::isobaric::{gfp, glp, schur_via_jacobi_trudi, wip, PartitionShape, WeightVector};
use isorec::recurrence::{self, PeriodKind};
use isorec::semilocal::{self, SemilocalStructure};
use isorec::suite::{self, GridSpec, SchurSpec, SuiteReport};
use isorec::{Error, Result};
use serde_json::json;

use crate::{Cli, Command, Outcome, PolyKind, Suite, VerifyArgs};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Poly(a) => poly(a),
        Command::Seq(a) => seq(a),
        Command::Period(a) => period(a),
        Command::Scan(a) => scan(a),
        Command::Ring(a) => ring(a, cli.budget),
        Command::Verify(a) => verify(a, cli.seed, cli.budget),
        Command::Factor(a) => factor(a, cli.seed),
        Command::Disc(a) => disc(a),
    }
}

fn ok(text: String, payload: serde_json::Value) -> Result<Outcome> {
    Ok(Outcome {
        text,
        payload,
        ok: true,
    })
}

fn poly(a: &crate::PolyArgs) -> Result<Outcome> {
    let p = match a.kind {
        PolyKind::Gfp => gfp(a.k, a.n),
        PolyKind::Glp => glp(a.k, a.n),
        PolyKind::Wip => {
            let omega = a
                .omega
                .clone()
                .ok_or_else(|| Error::InvalidArgument("wip needs --omega".into()))?;
            wip(&WeightVector(omega), a.k, a.n)?
        }
        PolyKind::Schur => {
            let shape = a
                .shape
                .clone()
                .ok_or_else(|| Error::InvalidArgument("schur needs --shape".into()))?;
            schur_via_jacobi_trudi(&PartitionShape::new(shape)?, a.k)
        }
    };
    let mut payload = p.to_json();
    payload["text"] = json!(p.to_string());
    ok(format!("{p}\n"), payload)
}

fn seq(a: &crate::SeqArgs) -> Result<Outcome> {
    if a.from > a.to {
        return Err(Error::InvalidArgument(format!("empty range {}..{}", a.from, a.to)));
    }
    let terms: Vec<String> = if a.traces {
        let domain = match a.p {
            Some(p) => Domain::PrimeField(PrimeField::new(p)?.modulus()),
            None => Domain::Integers,
        };
        trace_sequence(&a.core, a.from, a.to, domain)?
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        recurrence::generate(&a.core, a.from, a.to, a.p)?
            .iter()
            .map(|x| x.to_string())
            .collect()
    };
    let payload = json!({
        "core": a.core.t(),
        "from": a.from,
        "to": a.to,
        "p": a.p,
        "kind": if a.traces { "traces" } else { "terms" },
        "terms": terms,
    });
    ok(format!("{}\n", terms.join(", ")), payload)
}

fn period(a: &crate::PeriodArgs) -> Result<Outcome> {
    if a.integers {
        let v = recurrence::is_periodic_over_z(&a.core);
        let text = match v.kind {
            PeriodKind::Pure { period } => format!("periodic over Z, period {period}"),
            PeriodKind::EventuallyPeriodic { preperiod, period } => {
                format!("eventually periodic over Z, preperiod {preperiod}, period {period}")
            }
            PeriodKind::NotPeriodic => "not periodic over Z".to_string(),
        };
        let payload = json!({ "core": a.core.t(), "domain": "Z", "verdict": v });
        return ok(format!("{text} ({})\n", v.witness), payload);
    }
    let p = a.p.expect("clap requires -p without --integers");
    let v = recurrence::period_mod_p_bruteforce(&a.core, p)?;
    let matrix_order = if v.is_pure() {
        Some(recurrence::period_mod_p_matrix_order(&a.core, p)?)
    } else {
        None
    };
    let agree = matrix_order.is_none_or(|m| Some(m) == v.period());
    let text = match v.kind {
        PeriodKind::Pure { period } => format!("c_{p} = {period} (pure)\n"),
        PeriodKind::EventuallyPeriodic { preperiod, period } => format!(
            "c_{p} = {period} after preperiod {preperiod} (p divides t_k)\n"
        ),
        PeriodKind::NotPeriodic => unreachable!("every recursion mod p is eventually periodic"),
    };
    let mut text = text;
    if !agree {
        let _ = writeln!(text, "matrix order {} disagrees", matrix_order.unwrap_or(0));
    }
    let payload = json!({
        "core": a.core.t(),
        "p": p,
        "verdict": v,
        "matrix_order": matrix_order,
        "algorithms_agree": agree,
    });
    Ok(Outcome {
        text,
        payload,
        ok: agree,
    })
}

fn scan(a: &crate::ScanArgs) -> Result<Outcome> {
    let primes = arith::primes_in(a.primes.0, a.primes.1);
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no primes in {}..{}",
            a.primes.0, a.primes.1
        )));
    }
    let rows = recurrence::period_scan(&a.core, &primes)?;
    let mut text = format!("{:>6} {:>10} {:>6} {:>9} {:>6}\n", "p", "c_p", "p|c_p", "ramified", "agree");
    let mut all_ok = true;
    for r in &rows {
        let agree = r.algorithms_agree && r.divisibility_matches_ramification();
        all_ok &= agree;
        let flag = |b: bool| if b { "yes" } else { "no" };
        let c = if r.degenerate {
            format!("{}*", r.c_p)
        } else {
            r.c_p.to_string()
        };
        let _ = writeln!(
            text,
            "{:>6} {:>10} {:>6} {:>9} {:>6}",
            r.p,
            c,
            flag(r.p_divides_c),
            flag(r.ramified),
            flag(agree)
        );
    }
    if rows.iter().any(|r| r.degenerate) {
        text.push_str("* p divides t_k: eventual period, excluded from the check\n");
    }
    let payload = json!({ "core": a.core.t(), "rows": rows });
    Ok(Outcome {
        text,
        payload,
        ok: all_ok,
    })
}

fn factor_text(f: &FpFactorization) -> String {
    f.factors()
        .iter()
        .map(|x| {
            if x.multiplicity == 1 {
                format!("({})", x.poly)
            } else {
                format!("({})^{}", x.poly, x.multiplicity)
            }
        })
        .collect::<Vec<_>>()
        .join("")
}

fn ring_text(s: &SemilocalStructure) -> String {
    let mut t = String::new();
    let c = s.factorization.product();
    let _ = writeln!(t, "R_{} = F_{}[x]/({})", s.p, s.p, c);
    let _ = writeln!(t, "|R| = {}", s.ring_order);
    let _ = writeln!(t, "C = {} mod {}", factor_text(&s.factorization), s.p);
    for f in &s.factors {
        let period = f
            .factor_period
            .map_or("none".to_string(), |c| c.to_string());
        let _ = writeln!(t, "  {}: r = {}, e = {}, period {}", f.poly, f.r, f.e, period);
    }
    let _ = writeln!(t, "s = {}, {}", s.s(), s.classification);
    let _ = writeln!(t, "|J| = {}, m = {}", s.radical_order, s.m_exponent);
    let _ = writeln!(t, "|G_p| = {}", s.unit_group_order);
    match (s.period, s.index()) {
        (Some(c), Some(index)) => {
            let _ = writeln!(t, "c_p = |H_p| = {c}, [G_p : H_p] = {index}");
        }
        _ => {
            let _ = writeln!(t, "c_p undefined: p divides t_k");
        }
    }
    let _ = writeln!(t, "idempotents:");
    for (e, r) in s.idempotents.iter().zip(&s.idempotent_ranks) {
        let _ = writeln!(t, "  {e} rank {r}");
    }
    if !s.degenerate() {
        let _ = writeln!(
            t,
            "p | c_p iff ramified: {}",
            if s.thm_6_7_consistent() { "consistent" } else { "VIOLATED" }
        );
        if let Some(holds) = s.thm_6_8_2_holds() {
            let _ = writeln!(
                t,
                "c_p = lcm(factor periods) * |J|: {} (L = {})",
                if holds { "holds" } else { "fails" },
                s.factor_period_lcm.unwrap_or(0)
            );
        }
    }
    t
}

fn ring(a: &crate::RingArgs, budget: u64) -> Result<Outcome> {
    let s = semilocal::decompose(&a.core, a.p)?;
    let mut text = ring_text(&s);
    let mut payload = s.to_json();
    let mut all_ok = s.thm_6_7_consistent();
    if a.orbits {
        match semilocal::orbit_partition(&a.core, a.p, budget) {
            Ok(part) => {
                let _ = writeln!(text, "orbits ({}):", part.orbits.len());
                for o in &part.orbits {
                    let class = serde_json::to_value(o.class).expect("serializable");
                    let _ = writeln!(
                        text,
                        "  {} length {} {} rank {}",
                        o.representative,
                        o.length,
                        class.as_str().unwrap_or_default(),
                        o.rank
                    );
                }
                let violations = part.violations.total();
                let _ = writeln!(text, "orbit law violations: {violations}");
                all_ok &= violations == 0;
                payload["orbits"] = serde_json::to_value(&part).expect("serializable");
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::NotInvertible { .. })) => {
                let _ = writeln!(text, "orbits omitted: {e}");
                payload["orbits"] = serde_json::Value::Null;
                payload["orbits_error"] = json!(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Outcome {
        text,
        payload,
        ok: all_ok,
    })
}

fn factor(a: &crate::FactorArgs, seed: u64) -> Result<Outcome> {
    let field = PrimeField::new(a.p)?;
    let c = fp_algebra::core_to_poly(&a.core).reduce(&field);
    let f = fp_algebra::factor_mod_p_seeded(&c, seed);
    let text = format!("{} = {} mod {}\n", c, factor_text(&f), a.p);
    let mut payload = serde_json::to_value(FactorizationJson::from(&f)).expect("serializable");
    payload["core"] = json!(a.core.t());
    payload["squarefree"] = json!(f.is_squarefree());
    ok(text, payload)
}

fn disc(a: &crate::DiscArgs) -> Result<Outcome> {
    let c = fp_algebra::core_to_poly(&a.core);
    let d = fp_algebra::discriminant(&a.core);
    let res = fp_algebra::resultant(&c, &c.derivative());
    let primes = fp_algebra::ramified_primes(&a.core);
    let mut text = format!("C = {c}\ndisc = {d}\n");
    match &primes {
        Some(ps) if ps.is_empty() => text.push_str("no prime ramifies\n"),
        Some(ps) => {
            let list: Vec<String> = ps.iter().map(u64::to_string).collect();
            let _ = writeln!(text, "ramified primes: {}", list.join(", "));
        }
        None if d == 0.into() => text.push_str("C is not squarefree over Q: every prime ramifies\n"),
        None => {}
    }
    let payload = json!({
        "core": a.core.t(),
        "polynomial": c.to_string(),
        "discriminant": d.to_string(),
        "resultant": res.to_string(),
        "ramified_primes": primes,
    });
    ok(text, payload)
}

fn grid_for(suite: Suite, a: &VerifyArgs, budget: u64) -> GridSpec {
    let mut g = match suite {
        Suite::Thm67 => GridSpec {
            k_min: 1,
            k_max: 3,
            t_range: 2,
            t_range_high: 1,
            p_max: 13,
            size_cap: budget,
        },
        Suite::Thm68 => GridSpec {
            k_min: 1,
            k_max: 4,
            t_range: 2,
            t_range_high: 1,
            p_max: 13,
            size_cap: budget,
        },
        _ => GridSpec::desk(),
    };
    if let Some(k) = a.k_max {
        g.k_max = k;
    }
    if let Some(r) = a.t_range {
        g.t_range = r;
    }
    if let Some(r) = a.t_range_high {
        g.t_range_high = r;
    }
    if let Some(p) = a.p_max {
        g.p_max = p;
    }
    if let Some(c) = a.size_cap {
        g.size_cap = c;
    }
    g
}

fn run_suite(suite: Suite, a: &VerifyArgs, seed: u64, budget: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Thm67 => suite::run_thm67(&grid_for(suite, a, budget)),
        Suite::Thm68 => suite::run_thm68(&grid_for(suite, a, budget), budget),
        Suite::Orbits => suite::run_orbits(&grid_for(suite, a, budget), budget),
        Suite::Traces => suite::run_traces(&grid_for(suite, a, budget), budget),
        Suite::Schur => {
            let mut spec = SchurSpec {
                seed,
                ..SchurSpec::default()
            };
            if let Some(k) = a.k_max {
                spec.k_max = k;
            }
            if let Some(n) = a.samples {
                spec.samples = n;
            }
            suite::run_schur(&spec)
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn verify(a: &VerifyArgs, seed: u64, budget: u64) -> Result<Outcome> {
    let suites = match a.suite {
        Suite::All => vec![Suite::Thm67, Suite::Thm68, Suite::Orbits, Suite::Schur, Suite::Traces],
        s => vec![s],
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for s in suites {
        let r = run_suite(s, a, seed, budget)?;
        if r.passed() {
            let _ = writeln!(text, "{}: PASS ({} checked)", r.suite, r.checked);
        } else {
            let _ = writeln!(
                text,
                "{}: FAIL ({} failures, {} checked)",
                r.suite,
                r.failures.len(),
                r.checked
            );
            for f in r.failures.iter().take(10) {
                let _ = writeln!(text, "  {f}");
            }
            if r.failures.len() > 10 {
                let _ = writeln!(text, "  ... {} more", r.failures.len() - 10);
            }
        }
        if let Some(obj) = r.reports.as_object() {
            for (key, value) in obj {
                let _ = writeln!(text, "  report {key}: {}", compact(value));
            }
        }
        reports.push(r);
    }
    let all = reports.iter().all(SuiteReport::passed);
    let payload = json!({ "passed": all, "suites": reports });
    Ok(Outcome {
        text,
        payload,
        ok: all,
    })
}

/// One-line rendering of a report value; long lists are summarized.
fn compact(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| match v {
                    serde_json::Value::Array(items) if items.len() > 3 => {
                        let head: Vec<String> = items.iter().take(3).map(|x| x.to_string()).collect();
                        format!("{k}: [{}, ... {} total]", head.join(", "), items.len())
                    }
                    other => format!("{k}: {other}"),
                })
                .collect();
            parts.join(", ")
        }
        other => other.to_string(),
    }
}
