//! Verification sweeps over grids of cores and primes.
//!
//! Each runner returns a [`SuiteReport`]: asserted properties land in
//! `failures`, properties that are only reported land in `reports`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{self, Integers};
use crate::companion::{
    hook_entry_polynomial, negative_schur_identities_check, power_determinant, CorePolynomial,
};
use crate::error::Result;
use crate::fp_algebra;
use crate::isobaric::{gfp, glp, IsobaricPolynomial};
use crate::recurrence;
use crate::semilocal::{self, decompose, orbit_partition, QuotientRing};

/// Cores `[t_1..t_k]` with `k_min <= k <= k_max`, `t_k != 0`, entries in
/// `[-t_range, t_range]` for `k <= 2` and `[-t_range_high, t_range_high]`
/// above; primes `p <= p_max` with `p^k <= size_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub k_min: usize,
    pub k_max: usize,
    pub t_range: i64,
    pub t_range_high: i64,
    pub p_max: u64,
    pub size_cap: u64,
}

impl GridSpec {
    /// Every ring of at most `3^5` elements over the small cores.
    pub fn desk() -> Self {
        Self {
            k_min: 1,
            k_max: 5,
            t_range: 2,
            t_range_high: 1,
            p_max: 243,
            size_cap: 243,
        }
    }

    pub fn cores(&self) -> Vec<CorePolynomial> {
        let mut out = Vec::new();
        for k in self.k_min.max(1)..=self.k_max {
            let r = if k <= 2 { self.t_range } else { self.t_range_high };
            let width = (2 * r + 1) as u64;
            let count = width.pow(k as u32);
            for idx in 0..count {
                let mut t = vec![0i64; k];
                let mut x = idx;
                for slot in t.iter_mut().rev() {
                    *slot = (x % width) as i64 - r;
                    x /= width;
                }
                if t[k - 1] != 0 {
                    out.push(CorePolynomial::new(t).expect("k >= 1"));
                }
            }
        }
        out
    }

    /// `(core, p)` cells with `p` not dividing `t_k`, plus the number of
    /// cells skipped because it does.
    pub fn cells(&self) -> (Vec<(CorePolynomial, u64)>, usize) {
        let primes = arith::primes_in(2, self.p_max);
        let mut cells = Vec::new();
        let mut skipped = 0;
        for core in self.cores() {
            for &p in &primes {
                let size = (p as u128).saturating_pow(core.k() as u32);
                if size > self.size_cap as u128 {
                    continue;
                }
                if core.last().rem_euclid(p as i64) == 0 {
                    skipped += 1;
                } else {
                    cells.push((core.clone(), p));
                }
            }
        }
        (cells, skipped)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub skipped: usize,
    /// Violations of asserted properties.
    pub failures: Vec<Value>,
    /// Properties that are computed and reported without being asserted.
    pub reports: Value,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn cell(core: &CorePolynomial, p: u64) -> Value {
    json!({ "core": core.t(), "p": p })
}

/// `p | c_p` exactly when `C mod p` is not squarefree; both period
/// algorithms agree.
pub fn run_thm67(grid: &GridSpec) -> Result<SuiteReport> {
    let (cells, skipped) = grid.cells();
    let mut failures = Vec::new();
    let mut ramified = 0;
    for (core, p) in &cells {
        let row = &recurrence::period_scan(core, &[*p])?[0];
        let squarefree = fp_algebra::factor_core(core, *p)?.is_squarefree();
        if row.ramified {
            ramified += 1;
        }
        if !row.algorithms_agree || row.p_divides_c == squarefree || row.ramified == squarefree {
            failures.push(json!({
                "core": core.t(),
                "p": p,
                "c_p": row.c_p,
                "p_divides_c": row.p_divides_c,
                "ramified": row.ramified,
                "squarefree": squarefree,
                "algorithms_agree": row.algorithms_agree,
                "structure": decompose(core, *p)?.to_json(),
            }));
        }
    }
    Ok(SuiteReport {
        suite: "thm67".into(),
        checked: cells.len(),
        skipped,
        failures,
        reports: json!({ "ramified_pairs": ramified }),
    })
}

/// Period laws (`L | c_p`, equality when unramified, `c_p / L` a positive
/// power of `p` when ramified), the unit-count law and rank additivity; the
/// product formula `c_p = L |J|` is reported.
pub fn run_thm68(grid: &GridSpec, budget: u64) -> Result<SuiteReport> {
    let (cells, skipped) = grid.cells();
    let mut failures = Vec::new();
    let mut product_holds = 0usize;
    let mut product_fails = Vec::new();
    let mut unit_checked = 0usize;
    let mut rank_checked = 0usize;
    for (core, p) in &cells {
        let law = semilocal::verify_period_law(core, *p)?;
        if !law.asserted_hold() {
            failures.push(json!({ "law": "period", "report": law }));
        }
        if law.thm_6_8_2_holds {
            product_holds += 1;
        } else {
            product_fails.push(json!({
                "core": core.t(),
                "p": p,
                "L": law.l,
                "c_p": law.c_p,
                "|J|": law.radical_order,
            }));
        }
        let ring = QuotientRing::new(core, *p)?;
        if ring.size() <= budget as u128 {
            let units = semilocal::verify_unit_group_law(core, *p, budget)?;
            unit_checked += 1;
            if !units.holds {
                failures.push(json!({ "law": "unit_count", "cell": cell(core, *p), "report": units }));
            }
        }
        if let Some(ranks) = semilocal::verify_rank_additivity(core, *p)? {
            rank_checked += 1;
            if !ranks.holds(core.k()) {
                failures.push(json!({ "law": "rank_additivity", "cell": cell(core, *p), "report": ranks }));
            }
        }
    }
    Ok(SuiteReport {
        suite: "thm68".into(),
        checked: cells.len(),
        skipped,
        failures,
        reports: json!({
            "unit_count_checked": unit_checked,
            "rank_additivity_checked": rank_checked,
            "thm_6_8_2": {
                "holds": product_holds,
                "fails": product_fails.len(),
                "failing_cases": product_fails,
            },
        }),
    })
}

/// Orbit laws on every enumerable ring of the grid, plus the idempotent
/// orbit law; the associate scan between ideal orbits is reported.
pub fn run_orbits(grid: &GridSpec, budget: u64) -> Result<SuiteReport> {
    let (cells, skipped) = grid.cells();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut over_budget = 0;
    let (mut pairs, mut related) = (0usize, 0usize);
    for (core, p) in &cells {
        let part = match orbit_partition(core, *p, budget) {
            Ok(part) => part,
            Err(crate::Error::BudgetExceeded { .. }) => {
                over_budget += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        if part.violations.total() > 0 {
            failures.push(json!({ "cell": cell(core, *p), "violations": part.violations }));
        }
        for (e, len, ok) in semilocal::verify_idempotent_orbits(core, *p)? {
            if !ok {
                failures.push(json!({
                    "cell": cell(core, *p),
                    "idempotent": e,
                    "orbit_length": len,
                    "c_p": part.c_p,
                }));
            }
        }
        if let Some(scan) = &part.associates {
            pairs += scan.pairs;
            related += scan.related_by_unit;
        }
    }
    Ok(SuiteReport {
        suite: "orbits".into(),
        checked,
        skipped,
        failures,
        reports: json!({
            "over_budget": over_budget,
            "ideal_orbit_pairs_sharing_a_maximal_ideal": pairs,
            "of_which_related_by_a_unit": related,
        }),
    })
}

/// Trace identities: both trace routes agree, orbit component sums equal
/// orbit trace sums, trace sums over each maximal ideal vanish, and the
/// trace sequence period divides `c_p` (equality is reported).
pub fn run_traces(grid: &GridSpec, budget: u64) -> Result<SuiteReport> {
    let (cells, skipped) = grid.cells();
    let mut failures = Vec::new();
    let mut checked = 0;
    let (mut equal, mut proper) = (0usize, 0usize);
    for (core, p) in &cells {
        let ring = QuotientRing::new(core, *p)?;
        if ring.size() > budget as u128 {
            continue;
        }
        checked += 1;
        let disagreements = ring
            .elements()
            .filter(|m| ring.trace_by_lucas(m) != ring.trace_by_matrix(m))
            .count();
        if disagreements > 0 {
            failures.push(json!({ "law": "trace_routes", "cell": cell(core, *p), "count": disagreements }));
        }
        let sums = semilocal::trace_orbit_sums(core, *p, budget)?;
        if !sums.component_sums_hold() {
            failures.push(json!({ "law": "orbit_component_sum", "cell": cell(core, *p), "sums": sums }));
        }
        if !sums.ideal_sums_vanish() {
            let structure = decompose(core, *p)?;
            let ideals: Vec<Value> = structure
                .factors
                .iter()
                .zip(sums.ideal_trace_sums.iter().zip(&sums.ideal_dimensions))
                .filter(|(_, (s, _))| **s != 0)
                .map(|(f, (s, d))| json!({ "factor": f.poly.to_string(), "dimension": d, "trace_sum": s }))
                .collect();
            failures.push(json!({ "law": "ideal_trace_sum", "cell": cell(core, *p), "ideals": ideals }));
        }
        let tp = recurrence::trace_period_mod_p(core, *p)?;
        if !tp.divides() {
            failures.push(json!({ "law": "trace_period_divides", "report": tp }));
        } else if tp.equal() {
            equal += 1;
        } else {
            proper += 1;
        }
    }
    Ok(SuiteReport {
        suite: "traces".into(),
        checked,
        skipped,
        failures,
        reports: json!({
            "trace_period_equals_c_p": equal,
            "trace_period_proper_divisor": proper,
        }),
    })
}

/// Parameters of the random companion-identity sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurSpec {
    pub k_max: usize,
    pub samples: usize,
    pub t_bound: i64,
    pub n_max: i64,
    pub derivative_n_max: u64,
    pub seed: u64,
}

impl Default for SchurSpec {
    fn default() -> Self {
        Self {
            k_max: 4,
            samples: 200,
            t_bound: 3,
            n_max: 10,
            derivative_n_max: 8,
            seed: 0,
        }
    }
}

/// Companion identities on random `(core, n)`: `tr A^n` is the Lucas
/// value, each entry of `A^n` is a signed Schur hook, `det A^n` is
/// `(-1)^{n(k+1)} t_k^n`; the different's orbit has the Lucas values in
/// its last column; and `d G_n / d t_j = n F_{n-j}` symbolically.
pub fn run_schur(spec: &SchurSpec) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut failures = Vec::new();
    let mut hooks: HashMap<(usize, i64, usize, usize), IsobaricPolynomial> = HashMap::new();
    let mut lucas: HashMap<(usize, u64), IsobaricPolynomial> = HashMap::new();
    let mut negative_rows = 0usize;
    let mut negative_printed = [0usize; 3];
    let mut negative_alternative = 0usize;
    for _ in 0..spec.samples {
        let k = rng.gen_range(1..=spec.k_max);
        let t: Vec<i64> = (0..k).map(|_| rng.gen_range(-spec.t_bound..=spec.t_bound)).collect();
        let n = rng.gen_range(1..=spec.n_max);
        let core = CorePolynomial::new(t.clone())?;
        let a = core.companion_in(&Integers).pow(&Integers, n as u64);
        let g = lucas
            .entry((k, n as u64))
            .or_insert_with(|| glp(k, n as u64))
            .evaluate(&t);
        if a.trace(&Integers) != g {
            failures.push(json!({ "law": "trace_is_lucas", "core": t, "n": n }));
        }
        for i in 0..k {
            for j in 0..k {
                let hook = hooks
                    .entry((k, n, i, j))
                    .or_insert_with(|| hook_entry_polynomial(k, n, i, j));
                if *a.get(i, j) != hook.evaluate(&t) {
                    failures.push(json!({ "law": "entry_is_hook", "core": t, "n": n, "entry": [i, j] }));
                }
            }
        }
        let det = crate::matrix::det_bareiss(a.rows());
        if det != power_determinant(&core, n as u32) {
            failures.push(json!({ "law": "power_determinant", "core": t, "n": n }));
        }
        // the different's orbit, last column against the Lucas values
        let mut d = fp_algebra::different_element(&core);
        for m in 0..=spec.n_max as u64 {
            let g = lucas.entry((k, m)).or_insert_with(|| glp(k, m)).evaluate(&t);
            if d[k - 1] != g {
                failures.push(json!({ "law": "different_orbit", "core": t, "n": m }));
            }
            d = core.shift_in(&Integers, &d);
        }
        if k == 3 && t[2] != 0 {
            let rep = negative_schur_identities_check(&core, 3..=8)?;
            negative_rows += rep.rows.len();
            for (acc, c) in negative_printed.iter_mut().zip(rep.printed_hold_counts) {
                *acc += c;
            }
            negative_alternative += rep.middle_alternative_hold_count;
        }
    }
    let mut derivative_checks = 0;
    for k in 1..=spec.k_max {
        for n in 1..=spec.derivative_n_max {
            let g = glp(k, n);
            for j in 1..=k.min(n as usize) {
                derivative_checks += 1;
                let lhs = g.formal_partial(j)?;
                let rhs = gfp(k, n - j as u64).scale(&BigInt::from(n));
                if lhs != rhs {
                    failures.push(json!({ "law": "lucas_derivative", "k": k, "n": n, "j": j }));
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "schur".into(),
        checked: spec.samples + derivative_checks,
        skipped: 0,
        failures,
        reports: json!({
            "negative_index_rows": negative_rows,
            "negative_index_printed_identity_holds": negative_printed,
            "negative_index_middle_alternative_holds": negative_alternative,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_enumeration() {
        let g = GridSpec {
            k_min: 2,
            k_max: 2,
            t_range: 2,
            t_range_high: 1,
            p_max: 7,
            size_cap: u64::MAX,
        };
        let cores = g.cores();
        assert_eq!(cores.len(), 20);
        assert_eq!(cores[0].t(), [-2, -2]);
        let (cells, skipped) = g.cells();
        assert_eq!(cells.len() + skipped, 80);
        // t_2 = +-2 is skipped at p = 2
        assert_eq!(skipped, 10);
    }

    #[test]
    fn small_suites_pass() {
        let g = GridSpec {
            k_min: 2,
            k_max: 3,
            t_range: 1,
            t_range_high: 1,
            p_max: 5,
            size_cap: 125,
        };
        assert!(run_thm67(&g).unwrap().passed());
        assert!(run_thm68(&g, 1000).unwrap().passed());
        let schur = run_schur(&SchurSpec { samples: 20, ..SchurSpec::default() }).unwrap();
        assert!(schur.passed(), "{:?}", schur.failures);
    }
}
