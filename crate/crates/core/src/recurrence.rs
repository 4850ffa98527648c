//! Integer and modular k-order recursions: generation in both directions,
//! periodicity over Z, and periods mod p.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, PrimeField, Ring};
use crate::companion::{trace_sequence, CorePolynomial, Domain, Scalar};
use crate::error::{Error, Result};
use crate::fp_algebra::{self, PolyZ};
use crate::matrix::Matrix;

/// `k` consecutive terms `(f_{n-k+1}, ..., f_n)` of a recursion, over Z or
/// reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceWindow {
    core: CorePolynomial,
    modulus: Option<u64>,
    n: i64,
    state: Vec<BigInt>,
}

impl RecurrenceWindow {
    /// The window `F_{-k+1..0} = (0, ..., 0, 1)`.
    pub fn gfp_seed(core: &CorePolynomial, modulus: Option<u64>) -> Result<Self> {
        if let Some(p) = modulus {
            PrimeField::new(p)?;
        }
        let k = core.k();
        let mut state = vec![BigInt::zero(); k];
        state[k - 1] = BigInt::one();
        Ok(Self {
            core: core.clone(),
            modulus,
            n: 0,
            state,
        })
    }

    /// Index of the newest term.
    pub fn index(&self) -> i64 {
        self.n
    }

    pub fn state(&self) -> &[BigInt] {
        &self.state
    }

    pub fn current(&self) -> &BigInt {
        self.state.last().expect("k >= 1")
    }

    fn reduce(&self, x: BigInt) -> BigInt {
        match self.modulus {
            Some(p) => x.mod_floor(&BigInt::from(p)),
            None => x,
        }
    }

    /// Moves to `n + 1`.
    pub fn advance(&mut self) {
        let k = self.core.k();
        let mut next = BigInt::zero();
        for j in 1..=k {
            next += BigInt::from(self.core.tj(j)) * &self.state[k - j];
        }
        let next = self.reduce(next);
        self.state.remove(0);
        self.state.push(next);
        self.n += 1;
    }

    /// Moves to `n - 1`, solving the recursion for `f_{n-k}`.
    pub fn retreat(&mut self) -> Result<()> {
        let k = self.core.k();
        let tk = BigInt::from(self.core.last());
        let mut rest = self.state[k - 1].clone();
        for j in 1..k {
            rest -= BigInt::from(self.core.tj(j)) * &self.state[k - 1 - j];
        }
        let prev = match self.modulus {
            Some(p) => {
                let f = PrimeField::new(p)?;
                let inv = f.inv(&f.from_int(&tk)).ok_or_else(|| Error::NotInvertible {
                    domain: format!("F_{p}"),
                    reason: format!("p divides t_k = {tk}"),
                })?;
                BigInt::from(f.mul(&f.from_int(&rest), &inv))
            }
            None => {
                if !tk.abs().is_one() {
                    return Err(Error::NotInvertible {
                        domain: "Z".into(),
                        reason: format!("t_k = {tk} is not a unit"),
                    });
                }
                rest * tk
            }
        };
        self.state.pop();
        self.state.insert(0, prev);
        self.n -= 1;
        Ok(())
    }
}

/// Terms `f_lo..=f_hi` of the sequence seeded with `(0, ..., 0, 1)` at
/// indices `-k+1..=0`, reduced into `0..p` when a modulus is given.
pub fn generate(
    core: &CorePolynomial,
    lo: i64,
    hi: i64,
    modulus: Option<u64>,
) -> Result<Vec<BigInt>> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
    }
    let mut w = RecurrenceWindow::gfp_seed(core, modulus)?;
    let k = core.k() as i64;
    // the seed window already covers -k+1..=0
    while w.index() - k + 1 > lo {
        w.retreat()?;
    }
    while w.index() < lo {
        w.advance();
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let offset = (w.index() - lo) as usize;
    out.push(w.state()[w.state().len() - 1 - offset].clone());
    let mut cursor = lo;
    while cursor < hi {
        cursor += 1;
        if cursor > w.index() {
            w.advance();
        }
        let offset = (w.index() - cursor) as usize;
        out.push(w.state()[w.state().len() - 1 - offset].clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeriodKind {
    Pure { period: u64 },
    EventuallyPeriodic { preperiod: u64, period: u64 },
    NotPeriodic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodVerdict {
    #[serde(flatten)]
    pub kind: PeriodKind,
    pub witness: String,
}

impl PeriodVerdict {
    pub fn period(&self) -> Option<u64> {
        match self.kind {
            PeriodKind::Pure { period } | PeriodKind::EventuallyPeriodic { period, .. } => {
                Some(period)
            }
            PeriodKind::NotPeriodic => None,
        }
    }

    pub fn preperiod(&self) -> Option<u64> {
        match self.kind {
            PeriodKind::Pure { .. } => Some(0),
            PeriodKind::EventuallyPeriodic { preperiod, .. } => Some(preperiod),
            PeriodKind::NotPeriodic => None,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.kind, PeriodKind::Pure { .. })
    }
}

impl fmt::Display for PeriodVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PeriodKind::Pure { period } => write!(f, "period {period} (pure)"),
            PeriodKind::EventuallyPeriodic { preperiod, period } => {
                write!(f, "period {period} after preperiod {preperiod}")
            }
            PeriodKind::NotPeriodic => write!(f, "not periodic"),
        }
    }
}

/// `Phi_m` over Z.
pub fn cyclotomic(m: u64) -> PolyZ {
    assert!(m >= 1);
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut f = PolyZ::new(coeffs);
    for d in 1..m {
        if m.is_multiple_of(d) {
            f = f.div_rem_monic(&cyclotomic(d)).0;
        }
    }
    f
}

/// All `m` with `phi(m) <= k`, ascending. `phi(m) >= sqrt(m/2)` bounds the search.
pub fn cyclotomic_orders_up_to_degree(k: usize) -> Vec<u64> {
    let bound = 2 * (k as u64) * (k as u64) + 2;
    (1..=bound)
        .filter(|&m| arith::totient(m) <= k as u64)
        .collect()
}

/// Periodicity of the integer sequence from the `(0, ..., 0, 1)` seed, decided
/// by exact trial division of `C` by cyclotomic polynomials.
pub fn is_periodic_over_z(core: &CorePolynomial) -> PeriodVerdict {
    let k = core.k();
    let zeros = core.t().iter().rev().take_while(|&&t| t == 0).count();
    if zeros == k {
        // C = X^k: the window is all zero after k steps
        return PeriodVerdict {
            kind: PeriodKind::EventuallyPeriodic {
                preperiod: k as u64,
                period: 1,
            },
            witness: "C = X^k is nilpotent".into(),
        };
    }
    // strip the factor X^zeros
    let c = fp_algebra::core_to_poly(core);
    let mut rest = PolyZ::new(c.coeffs()[zeros..].to_vec());
    let mut orders = Vec::new();
    for m in cyclotomic_orders_up_to_degree(k - zeros) {
        let phi = cyclotomic(m);
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            orders.push(m);
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest.degree() != Some(0) {
        return PeriodVerdict {
            kind: PeriodKind::NotPeriodic,
            witness: format!("C has the non-cyclotomic factor {rest}"),
        };
    }
    let distinct: BTreeSet<u64> = orders.iter().copied().collect();
    if distinct.len() != orders.len() {
        let repeated = orders
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
            .expect("a repeat exists");
        return PeriodVerdict {
            kind: PeriodKind::NotPeriodic,
            witness: format!("Phi_{repeated} divides C more than once, so the terms grow"),
        };
    }
    let period = orders
        .iter()
        .try_fold(1u64, |acc, &m| arith::lcm(acc, m))
        .expect("orders are small");
    let factors: Vec<String> = orders.iter().map(|m| format!("Phi_{m}")).collect();
    let witness = format!("C = {}", factors.join(" * "));
    if zeros == 0 {
        return PeriodVerdict {
            kind: PeriodKind::Pure { period },
            witness,
        };
    }
    // the X^zeros part only delays the onset of periodicity
    let terms = generate(core, -(k as i64) + 1, (2 * k) as i64 + period as i64, None)
        .expect("forward generation");
    let window = |s: usize| &terms[s..s + k];
    let preperiod = (0..=2 * k)
        .find(|&s| window(s) == window(s + period as usize))
        .expect("periodic after the nilpotent part dies out");
    PeriodVerdict {
        kind: if preperiod == 0 {
            PeriodKind::Pure { period }
        } else {
            PeriodKind::EventuallyPeriodic {
                preperiod: preperiod as u64,
                period,
            }
        },
        witness: format!("{witness} * X^{zeros}"),
    }
}

fn step(core_mod: &[u64], field: &PrimeField, state: &mut [u64]) {
    let k = state.len();
    let mut next = 0u64;
    for (j, t) in core_mod.iter().enumerate() {
        next = field.add(&next, &field.mul(t, &state[k - 1 - j]));
    }
    state.rotate_left(1);
    state[k - 1] = next;
}

/// Period mod `p` by running the state map from the seed `(0, ..., 0, 1)`.
///
/// When `p | t_k` the state map is not injective and Brent's cycle finder
/// reports the preperiod as well.
pub fn period_mod_p_bruteforce(core: &CorePolynomial, p: u64) -> Result<PeriodVerdict> {
    let field = PrimeField::new(p)?;
    let k = core.k();
    let t: Vec<u64> = core.t().iter().map(|&x| field.reduce_i64(x)).collect();
    let mut seed = vec![0u64; k];
    seed[k - 1] = 1;
    let limit = (p as u128).pow(k as u32);
    if t[k - 1] != 0 {
        let mut state = seed.clone();
        let mut c: u64 = 0;
        loop {
            step(&t, &field, &mut state);
            c += 1;
            if state == seed {
                break;
            }
            if c as u128 >= limit {
                unreachable!("an invertible state map returns within p^k steps");
            }
        }
        return Ok(PeriodVerdict {
            kind: PeriodKind::Pure { period: c },
            witness: format!("state returns to (0,...,0,1) at n = {c}"),
        });
    }
    // Brent: find cycle length lam, then the first repeated state mu
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = seed.clone();
    let mut hare = seed.clone();
    step(&t, &field, &mut hare);
    while tortoise != hare {
        if power == lam {
            tortoise.clone_from(&hare);
            power *= 2;
            lam = 0;
        }
        step(&t, &field, &mut hare);
        lam += 1;
    }
    let mut tortoise = seed.clone();
    let mut hare = seed;
    for _ in 0..lam {
        step(&t, &field, &mut hare);
    }
    let mut mu = 0u64;
    while tortoise != hare {
        step(&t, &field, &mut tortoise);
        step(&t, &field, &mut hare);
        mu += 1;
    }
    let kind = if mu == 0 {
        PeriodKind::Pure { period: lam }
    } else {
        PeriodKind::EventuallyPeriodic {
            preperiod: mu,
            period: lam,
        }
    };
    Ok(PeriodVerdict {
        kind,
        witness: format!("p divides t_k; state cycle of length {lam} entered at n = {mu}"),
    })
}

/// Multiplicative order of the companion matrix mod `p`, from the
/// factorization of `C mod p`: the order divides
/// `lcm(p^{r_i} - 1) * p^{ceil(log_p max e_i)}` and is found by stripping
/// prime factors from that bound.
pub fn period_mod_p_matrix_order(core: &CorePolynomial, p: u64) -> Result<u64> {
    let field = PrimeField::new(p)?;
    if field.reduce_i64(core.last()) == 0 {
        return Err(Error::NotInvertible {
            domain: format!("F_{p}"),
            reason: format!("p divides t_k = {}", core.last()),
        });
    }
    let fac = fp_algebra::factor_core(core, p)?;
    let mut bound = 1u64;
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    let mut max_e = 1;
    for f in fac.factors() {
        let q = arith::checked_pow(p, f.degree() as u32)? - 1;
        bound = arith::lcm(bound, q)?;
        primes.extend(arith::factorize(q).into_iter().map(|(r, _)| r));
        max_e = max_e.max(f.multiplicity);
    }
    let mut pp = 1u64;
    while pp < max_e as u64 {
        pp = pp.checked_mul(p).ok_or(Error::Overflow("period bound"))?;
    }
    if pp > 1 {
        primes.insert(p);
    }
    bound = bound
        .checked_mul(pp)
        .ok_or(Error::Overflow("period bound"))?;
    let a: Matrix<u64> = core.companion_in(&field);
    debug_assert!(a.pow(&field, bound).is_identity(&field));
    let mut order = bound;
    for q in primes {
        while order.is_multiple_of(q) && a.pow(&field, order / q).is_identity(&field) {
            order /= q;
        }
    }
    Ok(order)
}

/// One row of a period scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    /// Period of the eventual cycle (the full period when not degenerate).
    pub c_p: u64,
    pub p_divides_c: bool,
    pub ramified: bool,
    /// `p | t_k`; such rows are excluded from theorem checks.
    pub degenerate: bool,
    /// Brute force and matrix order agree (vacuous when degenerate).
    pub algorithms_agree: bool,
}

impl ScanRow {
    /// `p | c_p` exactly when `p` ramifies; vacuous on degenerate rows.
    pub fn divisibility_matches_ramification(&self) -> bool {
        self.degenerate || self.p_divides_c == self.ramified
    }
}

/// Periods for each prime, cross-checked between both algorithms.
pub fn period_scan(core: &CorePolynomial, primes: &[u64]) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        let verdict = period_mod_p_bruteforce(core, p)?;
        let c = verdict.period().expect("always periodic mod p");
        let degenerate = core.last().rem_euclid(p as i64) == 0;
        let algorithms_agree = if degenerate {
            true
        } else {
            period_mod_p_matrix_order(core, p)? == c
        };
        rows.push(ScanRow {
            p,
            c_p: c,
            p_divides_c: c % p == 0,
            ramified: fp_algebra::ramifies(core, p)?,
            degenerate,
            algorithms_agree,
        });
    }
    Ok(rows)
}

/// Trace sequence `tr(A^n) mod p` versus `c_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePeriod {
    pub p: u64,
    pub c_p: u64,
    pub trace_period: u64,
}

impl TracePeriod {
    pub fn divides(&self) -> bool {
        self.c_p.is_multiple_of(self.trace_period)
    }

    pub fn equal(&self) -> bool {
        self.c_p == self.trace_period
    }
}

/// Minimal period of `tr(A^n) mod p`, among the divisors of `c_p`.
pub fn trace_period_mod_p(core: &CorePolynomial, p: u64) -> Result<TracePeriod> {
    let verdict = period_mod_p_bruteforce(core, p)?;
    if !verdict.is_pure() {
        return Err(Error::NotInvertible {
            domain: format!("F_{p}"),
            reason: format!("p divides t_k = {}", core.last()),
        });
    }
    let c = verdict.period().expect("pure");
    let field = PrimeField::new(p)?;
    let k = core.k();
    let mut traces: Vec<u64> = trace_sequence(core, 0, k as i64 - 1, Domain::PrimeField(p))?
        .into_iter()
        .map(|s| match s {
            Scalar::Residue { value, .. } => value,
            _ => unreachable!("prime field traces"),
        })
        .collect();
    let t: Vec<u64> = core.t().iter().map(|&x| field.reduce_i64(x)).collect();
    let needed = c as usize + k;
    while traces.len() < needed {
        let n = traces.len();
        let mut next = 0;
        for (j, tj) in t.iter().enumerate() {
            next = field.add(&next, &field.mul(tj, &traces[n - 1 - j]));
        }
        traces.push(next);
    }
    // a shift agreeing on k consecutive terms agrees everywhere
    let mut divisors: Vec<u64> = (1..=c).filter(|d| c % d == 0).collect();
    divisors.sort_unstable();
    let trace_period = divisors
        .into_iter()
        .find(|&d| (0..k).all(|n| traces[n] == traces[n + d as usize]))
        .expect("c_p itself is a period");
    Ok(TracePeriod {
        p,
        c_p: c,
        trace_period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use crate::isobaric::gfp;

    fn core(t: &[i64]) -> CorePolynomial {
        CorePolynomial::new(t.to_vec()).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    /// Pisano period by walking pairs, independent of the window machinery.
    fn pisano(p: u64) -> u64 {
        let (mut a, mut b, mut n) = (0u64, 1u64, 0u64);
        loop {
            (a, b) = (b, (a + b) % p);
            n += 1;
            if (a, b) == (0, 1) {
                return n;
            }
        }
    }

    #[test]
    fn generate_examples() {
        assert_eq!(ints(&generate(&core(&[1, 1]), 0, 6, None).unwrap()), [1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(ints(&generate(&core(&[2, -1]), 0, 5, None).unwrap()), [1, 2, 3, 4, 5, 6]);
        assert_eq!(ints(&generate(&core(&[1, 1]), 0, 5, Some(2)).unwrap()), [1, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn backward_fibonacci() {
        // F_{-n} = (-1)^{n+1} F_n in the shifted indexing f_n = Fib(n+1)
        let back = ints(&generate(&core(&[1, 1]), -8, 0, None).unwrap());
        assert_eq!(back, [13, -8, 5, -3, 2, -1, 1, 0, 1]);
        let back5 = ints(&generate(&core(&[1, 1]), -4, 0, Some(5)).unwrap());
        assert_eq!(back5, [2, 4, 1, 0, 1]);
        assert!(generate(&core(&[1, 2]), -3, 0, None).is_err());
        assert!(generate(&core(&[1, 2]), -3, 0, Some(2)).is_err());
        assert!(generate(&core(&[1, 2]), -3, 0, Some(3)).is_ok());
    }

    #[test]
    fn generate_matches_gfp() {
        for t in [[1i64, 1, 1], [2, -1, 3], [0, 2, 1]] {
            let c = core(&t);
            let terms = generate(&c, 0, 9, None).unwrap();
            for (n, term) in terms.iter().enumerate() {
                assert_eq!(*term, gfp(3, n as u64).evaluate(&t));
            }
        }
    }

    #[test]
    fn retreat_undoes_advance() {
        let c = core(&[3, -2, 1]);
        let mut w = RecurrenceWindow::gfp_seed(&c, None).unwrap();
        let start = w.clone();
        for _ in 0..10 {
            w.advance();
        }
        for _ in 0..10 {
            w.retreat().unwrap();
        }
        assert_eq!(w, start);
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1).to_string(), "X - 1");
        assert_eq!(cyclotomic(4).to_string(), "X^2 + 1");
        assert_eq!(cyclotomic(6).to_string(), "X^2 - X + 1");
        assert_eq!(cyclotomic(12).to_string(), "X^4 - X^2 + 1");
        for m in 1..40 {
            assert_eq!(cyclotomic(m).degree(), Some(arith::totient(m) as usize));
        }
        let orders = cyclotomic_orders_up_to_degree(2);
        assert_eq!(orders, [1, 2, 3, 4, 6]);
    }

    #[test]
    fn periodicity_over_z() {
        let v = is_periodic_over_z(&core(&[0, -1]));
        assert_eq!(v.kind, PeriodKind::Pure { period: 4 });
        assert_eq!(ints(&generate(&core(&[0, -1]), 0, 4, None).unwrap()), [1, 0, -1, 0, 1]);
        assert_eq!(is_periodic_over_z(&core(&[1, 1])).kind, PeriodKind::NotPeriodic);
        assert_eq!(
            is_periodic_over_z(&core(&[-1, -1, -1, -1])).kind,
            PeriodKind::Pure { period: 5 }
        );
        // (X - 1)^2 grows linearly
        assert_eq!(is_periodic_over_z(&core(&[2, -1])).kind, PeriodKind::NotPeriodic);
        // (X - 1)(X + 1)(X^2 + X + 1)
        // X^2 (X^2 - 1)
        let c = core(&[0, 1, 0, 0]);
        assert_eq!(
            is_periodic_over_z(&c).kind,
            PeriodKind::EventuallyPeriodic { preperiod: 2, period: 2 }
        );
        let c = core(&[-1, 0, 1, 1]);
        assert_eq!(is_periodic_over_z(&c).kind, PeriodKind::Pure { period: 6 });
    }

    #[test]
    fn periodicity_over_z_matches_direct_search() {
        // every core with |t_j| <= 1, k <= 3: compare against the terms themselves
        let mut cores = Vec::new();
        for k in 1..=3u32 {
            for idx in 0..3i64.pow(k) {
                let mut t = Vec::new();
                let mut x = idx;
                for _ in 0..k {
                    t.push(x % 3 - 1);
                    x /= 3;
                }
                cores.push(t);
            }
        }
        for t in cores {
            let c = core(&t);
            let verdict = is_periodic_over_z(&c);
            let terms = generate(&c, 0, 200, None).unwrap();
            let k = t.len();
            let bounded = terms.iter().all(|x| x.abs() <= BigInt::from(10));
            match verdict.kind {
                PeriodKind::Pure { period } => {
                    let period = period as usize;
                    assert!((0..150).all(|n| terms[n] == terms[n + period]), "{t:?}");
                    for d in 1..period {
                        assert!((0..150).any(|n| terms[n] != terms[n + d]), "{t:?} d={d}");
                    }
                }
                PeriodKind::EventuallyPeriodic { preperiod, period } => {
                    let (s, d) = (preperiod as usize, period as usize);
                    assert!((s..150).all(|n| terms[n] == terms[n + d]), "{t:?}");
                }
                PeriodKind::NotPeriodic => assert!(!bounded, "{t:?} {k}"),
            }
        }
    }

    #[test]
    fn pisano_periods() {
        let c = core(&[1, 1]);
        for (p, want) in [(2, 3), (3, 8), (5, 20), (7, 16), (11, 10)] {
            assert_eq!(pisano(p), want);
            let v = period_mod_p_bruteforce(&c, p).unwrap();
            assert_eq!(v.kind, PeriodKind::Pure { period: want });
            assert_eq!(period_mod_p_matrix_order(&c, p).unwrap(), want);
        }
        for p in arith::primes_in(2, 300) {
            assert_eq!(period_mod_p_bruteforce(&c, p).unwrap().period(), Some(pisano(p)));
            assert_eq!(period_mod_p_matrix_order(&c, p).unwrap(), pisano(p));
        }
    }

    #[test]
    fn worked_examples() {
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(period_mod_p_bruteforce(&core(&[2, -1]), p).unwrap().period(), Some(p));
            assert_eq!(period_mod_p_matrix_order(&core(&[2, -1]), p).unwrap(), p);
        }
        assert_eq!(period_mod_p_bruteforce(&core(&[0, 2, 1]), 3).unwrap().period(), Some(8));
        assert_eq!(period_mod_p_matrix_order(&core(&[0, 2, 1]), 3).unwrap(), 8);
    }

    #[test]
    fn return_window_and_bound() {
        for t in [[1i64, 1, 1], [0, 2, 1], [3, -1, 2], [1, 0, 1]] {
            let c = core(&t);
            for p in [2u64, 3, 5, 7] {
                if c.last().rem_euclid(p as i64) == 0 {
                    continue;
                }
                let cp = period_mod_p_bruteforce(&c, p).unwrap().period().unwrap();
                assert!(cp < p.pow(3));
                let w = generate(&c, cp as i64 - 2, cp as i64, Some(p)).unwrap();
                assert_eq!(ints(&w), [0, 0, 1], "{t:?} mod {p}");
                assert_eq!(period_mod_p_matrix_order(&c, p).unwrap(), cp);
            }
        }
    }

    #[test]
    fn degenerate_modulus() {
        // [1, 2] mod 2 is f_n = f_{n-1}: constant 1 after the seed
        let v = period_mod_p_bruteforce(&core(&[1, 2]), 2).unwrap();
        assert_eq!(v.kind, PeriodKind::EventuallyPeriodic { preperiod: 1, period: 1 });
        assert!(period_mod_p_matrix_order(&core(&[1, 2]), 2).is_err());
        // [0, 0] mod anything: X^2 nilpotent
        let v = period_mod_p_bruteforce(&core(&[0, 3]), 3).unwrap();
        assert_eq!(v.kind, PeriodKind::EventuallyPeriodic { preperiod: 2, period: 1 });
    }

    #[test]
    fn scan_rows() {
        let rows = period_scan(&core(&[1, 1]), &[2, 3, 5, 7, 11]).unwrap();
        let periods: Vec<u64> = rows.iter().map(|r| r.c_p).collect();
        assert_eq!(periods, [3, 8, 20, 16, 10]);
        for r in &rows {
            assert_eq!(r.p_divides_c, r.p == 5);
            assert_eq!(r.ramified, r.p == 5);
            assert!(r.algorithms_agree);
            assert!(r.divisibility_matches_ramification());
        }
        let rows = period_scan(&core(&[1, 2]), &[2, 3]).unwrap();
        assert!(rows[0].degenerate && !rows[1].degenerate);
        let json = serde_json::to_value(&rows[1]).unwrap();
        for key in ["p", "c_p", "p_divides_c", "ramified", "degenerate"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn trace_periods_divide() {
        for t in [[1i64, 1], [0, -1], [3, 1], [2, -1]] {
            for p in [3u64, 5, 7, 11] {
                let tp = trace_period_mod_p(&core(&t), p).unwrap();
                assert!(tp.divides());
            }
        }
        // Lucas numbers mod 5: 2,1,3,4,2,1,... period 4 against c_5 = 20
        let tp = trace_period_mod_p(&core(&[1, 1]), 5).unwrap();
        assert_eq!((tp.c_p, tp.trace_period), (20, 4));
    }

    #[test]
    fn verdict_json() {
        let v = period_mod_p_bruteforce(&core(&[1, 1]), 5).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["kind"], "pure");
        assert_eq!(j["period"], 20);
        assert_eq!(v.to_string(), "period 20 (pure)");
    }
}
