//! The finite ring `R_p = F_p[x]/(C)`: standard matrices, trace, norm and
//! rank of elements, the decomposition into local factors, orbits of
//! multiplication by `lambda`, and the structural checks built on them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::arith::{self, PrimeField, Ring};
use crate::companion::CorePolynomial;
use crate::error::{Error, Result};
use crate::fp_algebra::{self, FpFactorization, PolyFp};
use crate::isobaric::glp;
use crate::matrix::Matrix;
use crate::recurrence;

/// Default cap on the number of ring elements any enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Rings up to this size get per-member checks during orbit enumeration.
const DETAILED_LIMIT: u64 = 20_000;

/// Rings up to this size get the associate scan between ideal orbits.
const ASSOCIATE_LIMIT: u64 = 729;

/// Coordinates `(m_0, ..., m_{k-1})` in the basis `1, lambda, ..., lambda^{k-1}`,
/// reduced into `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct RingElement(pub Vec<u64>);

impl RingElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `F_p[x]/(C)` with its multiplication, trace form and element enumeration.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    core: CorePolynomial,
    field: PrimeField,
    modulus: PolyFp,
    /// `G_{k,j}(t) mod p` for `j < k`, with `G_{k,0} = k`.
    lucas: Vec<u64>,
}

impl QuotientRing {
    pub fn new(core: &CorePolynomial, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let k = core.k();
        let lucas = (0..k as u64)
            .map(|j| field.from_int(&glp(k, j).evaluate(core.t())))
            .collect();
        Ok(Self {
            core: core.clone(),
            field,
            modulus: fp_algebra::core_to_poly(core).reduce(&field),
            lucas,
        })
    }

    pub fn core(&self) -> &CorePolynomial {
        &self.core
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn k(&self) -> usize {
        self.core.k()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `C mod p`.
    pub fn modulus(&self) -> &PolyFp {
        &self.modulus
    }

    /// `p^k`.
    pub fn size(&self) -> u128 {
        (self.p() as u128).saturating_pow(self.k() as u32)
    }

    pub fn check_budget(&self, budget: u64) -> Result<u64> {
        let size = self.size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded { size, budget });
        }
        Ok(size as u64)
    }

    /// Reduces signed coordinates; missing trailing coordinates are zero.
    pub fn element(&self, coords: &[i64]) -> Result<RingElement> {
        if coords.len() > self.k() {
            return Err(Error::InvalidArgument(format!(
                "element has {} coordinates, ring has rank {}",
                coords.len(),
                self.k()
            )));
        }
        let mut v: Vec<u64> = coords.iter().map(|&c| self.field.reduce_i64(c)).collect();
        v.resize(self.k(), 0);
        Ok(RingElement(v))
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.k()])
    }

    pub fn one(&self) -> RingElement {
        let mut v = vec![0; self.k()];
        v[0] = 1;
        RingElement(v)
    }

    /// The class of `x`; equals `(0, 1, 0, ...)` for `k >= 2`.
    pub fn lambda(&self) -> RingElement {
        self.from_poly(&PolyFp::x(self.field))
    }

    pub fn from_poly(&self, f: &PolyFp) -> RingElement {
        let r = f.rem(&self.modulus);
        let mut v = r.coeffs().to_vec();
        v.resize(self.k(), 0);
        RingElement(v)
    }

    pub fn to_poly(&self, m: &RingElement) -> PolyFp {
        PolyFp::new(self.field, m.0.clone())
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(a.0.iter().zip(&b.0).map(|(x, y)| self.field.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn pow(&self, a: &RingElement, e: u64) -> RingElement {
        self.from_poly(&self.to_poly(a).pow_mod_u64(e, &self.modulus))
    }

    /// `m A`, i.e. `lambda * m`.
    pub fn shift(&self, m: &RingElement) -> RingElement {
        RingElement(self.core.shift_in(&self.field, &m.0))
    }

    /// Rows `m, mA, ..., mA^{k-1}`.
    pub fn standard_matrix(&self, m: &RingElement) -> Matrix<u64> {
        let mut rows = Vec::with_capacity(self.k());
        let mut cur = m.clone();
        for _ in 0..self.k() {
            let next = self.shift(&cur);
            rows.push(cur.0);
            cur = next;
        }
        Matrix::from_rows(rows)
    }

    /// Trace of the standard matrix.
    pub fn trace_by_matrix(&self, m: &RingElement) -> u64 {
        self.standard_matrix(m).trace(&self.field)
    }

    /// `sum m_j G_{k,j}(t) mod p`.
    pub fn trace_by_lucas(&self, m: &RingElement) -> u64 {
        m.0.iter()
            .zip(&self.lucas)
            .fold(0, |acc, (a, g)| self.field.add(&acc, &self.field.mul(a, g)))
    }

    pub fn trace(&self, m: &RingElement) -> u64 {
        self.trace_by_lucas(m)
    }

    pub fn norm(&self, m: &RingElement) -> u64 {
        self.standard_matrix(m).det_field(&self.field)
    }

    pub fn rank(&self, m: &RingElement) -> usize {
        self.standard_matrix(m).rank_field(&self.field)
    }

    pub fn is_unit(&self, m: &RingElement) -> bool {
        self.to_poly(m).gcd(&self.modulus).is_one()
    }

    /// Elements in lexicographic coordinate order.
    pub fn elements(&self) -> ElementIter {
        ElementIter {
            p: self.p(),
            next: Some(vec![0; self.k()]),
        }
    }

    /// Position of `m` in [`QuotientRing::elements`].
    pub fn index_of(&self, m: &RingElement) -> usize {
        let p = self.p() as usize;
        m.0.iter().fold(0, |acc, &c| acc * p + c as usize)
    }
}

pub struct ElementIter {
    p: u64,
    next: Option<Vec<u64>>,
}

impl Iterator for ElementIter {
    type Item = RingElement;

    fn next(&mut self) -> Option<RingElement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.p {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(RingElement(cur))
    }
}

pub fn standard_matrix(core: &CorePolynomial, p: u64, m: &[i64]) -> Result<Matrix<u64>> {
    let ring = QuotientRing::new(core, p)?;
    Ok(ring.standard_matrix(&ring.element(m)?))
}

/// Trace of `m`, computed both from the standard matrix and from the Lucas
/// values; the two must agree.
pub fn trace(core: &CorePolynomial, p: u64, m: &[i64]) -> Result<u64> {
    let ring = QuotientRing::new(core, p)?;
    let m = ring.element(m)?;
    let t = ring.trace_by_lucas(&m);
    assert_eq!(t, ring.trace_by_matrix(&m), "trace routes disagree");
    Ok(t)
}

pub fn norm(core: &CorePolynomial, p: u64, m: &[i64]) -> Result<u64> {
    let ring = QuotientRing::new(core, p)?;
    Ok(ring.norm(&ring.element(m)?))
}

pub fn rank(core: &CorePolynomial, p: u64, m: &[i64]) -> Result<usize> {
    let ring = QuotientRing::new(core, p)?;
    Ok(ring.rank(&ring.element(m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `C mod p` irreducible: `R_p` is a field.
    Inert,
    /// Squarefree with several factors.
    Split,
    /// Not squarefree.
    Ramified,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Inert => "inert",
            Self::Split => "split",
            Self::Ramified => "ramified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSummary {
    pub poly: PolyFp,
    /// Degree of the irreducible factor.
    pub r: usize,
    /// Multiplicity.
    pub e: u32,
    /// Order of `x` modulo the irreducible factor; `None` for the factor `x`.
    pub factor_period: Option<u64>,
}

impl FactorSummary {
    /// `|(F_p[x]/(f^e))^*| = p^{r(e-1)} (p^r - 1)`.
    pub fn local_unit_order(&self, p: u64) -> BigUint {
        let p = BigUint::from(p);
        p.pow(self.r as u32 * (self.e - 1)) * (p.pow(self.r as u32) - 1u32)
    }
}

#[derive(Clone, Debug)]
pub struct SemilocalStructure {
    pub core: CorePolynomial,
    pub p: u64,
    pub factorization: FpFactorization,
    pub factors: Vec<FactorSummary>,
    pub ring_order: BigUint,
    pub radical_order: BigUint,
    pub unit_group_order: BigUint,
    /// `c_p`; `None` when `p | t_k`.
    pub period: Option<u64>,
    /// lcm of the factor periods; `None` when `p | t_k`.
    pub factor_period_lcm: Option<u64>,
    /// Least `m` with `J^m = 0`.
    pub m_exponent: u32,
    pub classification: Classification,
    pub idempotents: Vec<RingElement>,
    pub idempotent_ranks: Vec<usize>,
}

impl SemilocalStructure {
    pub fn s(&self) -> usize {
        self.factors.len()
    }

    pub fn degenerate(&self) -> bool {
        self.period.is_none()
    }

    pub fn ramified(&self) -> bool {
        self.classification == Classification::Ramified
    }

    /// `[G_p : H_p]`.
    pub fn index(&self) -> Option<BigUint> {
        let c = BigUint::from(self.period?);
        Some(&self.unit_group_order / c)
    }

    /// `p | c_p` exactly when `p` ramifies; vacuous when `p | t_k`.
    pub fn thm_6_7_consistent(&self) -> bool {
        match self.period {
            Some(c) => (c % self.p == 0) == self.ramified(),
            None => true,
        }
    }

    /// `c_p = lcm(factor periods) * |J|`; reported, not asserted.
    pub fn thm_6_8_2_holds(&self) -> Option<bool> {
        let (c, l) = (self.period?, self.factor_period_lcm?);
        Some(BigUint::from(c) == BigUint::from(l) * &self.radical_order)
    }

    pub fn local_unit_orders(&self) -> Vec<BigUint> {
        self.factors.iter().map(|f| f.local_unit_order(self.p)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<serde_json::Value> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "coeffs": f.poly.coeffs(),
                    "r": f.r,
                    "e": f.e,
                    "factor_period": f.factor_period,
                })
            })
            .collect();
        json!({
            "core": self.core.t(),
            "p": self.p,
            "factors": factors,
            "s": self.s(),
            "|R|": self.ring_order.to_string(),
            "|J|": self.radical_order.to_string(),
            "|G_p|": self.unit_group_order.to_string(),
            "c_p": self.period,
            "index": self.index().map(|i| i.to_string()),
            "factor_period_lcm": self.factor_period_lcm,
            "m_exponent": self.m_exponent,
            "classification": self.classification,
            "idempotents": self.idempotents,
            "idempotent_ranks": self.idempotent_ranks,
            "local_unit_orders": self
                .local_unit_orders()
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>(),
            "degenerate": self.degenerate(),
            "thm_6_7_consistent": self.thm_6_7_consistent(),
            "thm_6_8_2_holds": self.thm_6_8_2_holds(),
        })
    }
}

/// Period of the recursion with characteristic polynomial `f` (irreducible,
/// `f != x`), i.e. the order of `x` modulo `f`.
fn factor_period(f: &PolyFp) -> Result<Option<u64>> {
    if f.coeffs().first().copied().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let core = fp_algebra::core_of_monic(f);
    recurrence::period_mod_p_matrix_order(&core, f.p()).map(Some)
}

/// Decomposition of `F_p[x]/(C)` driven by the factorization of `C mod p`.
pub fn decompose(core: &CorePolynomial, p: u64) -> Result<SemilocalStructure> {
    let ring = QuotientRing::new(core, p)?;
    let factorization = fp_algebra::factor_mod_p(ring.modulus());
    let mut factors = Vec::with_capacity(factorization.len());
    for f in factorization.factors() {
        factors.push(FactorSummary {
            poly: f.poly.clone(),
            r: f.degree(),
            e: f.multiplicity,
            factor_period: factor_period(&f.poly)?,
        });
    }
    let k = core.k();
    let sum_r: usize = factors.iter().map(|f| f.r).sum();
    let big_p = BigUint::from(p);
    let radical_order = big_p.pow((k - sum_r) as u32);
    let unit_group_order = factors
        .iter()
        .fold(BigUint::one(), |acc, f| acc * f.local_unit_order(p));
    let degenerate = ring.field().reduce_i64(core.last()) == 0;
    let (period, factor_period_lcm) = if degenerate {
        (None, None)
    } else {
        let c = recurrence::period_mod_p_matrix_order(core, p)?;
        let l = factors.iter().try_fold(1u64, |acc, f| {
            arith::lcm(acc, f.factor_period.expect("x is not a factor"))
        })?;
        (Some(c), Some(l))
    };
    let m_exponent = factors.iter().map(|f| f.e).max().unwrap_or(1);
    let classification = if m_exponent > 1 {
        Classification::Ramified
    } else if factors.len() == 1 {
        Classification::Inert
    } else {
        Classification::Split
    };
    let idempotents = idempotents_of(&ring, &factorization);
    let idempotent_ranks = idempotents.iter().map(|e| ring.rank(e)).collect();
    Ok(SemilocalStructure {
        core: core.clone(),
        p,
        factorization,
        factors,
        ring_order: big_p.pow(k as u32),
        radical_order,
        unit_group_order,
        period,
        factor_period_lcm,
        m_exponent,
        classification,
        idempotents,
        idempotent_ranks,
    })
}

/// One idempotent per primary factor `f_i^{e_i}`, in factor order: `e_i` is
/// 1 modulo `f_i^{e_i}` and 0 modulo every other primary factor.
fn idempotents_of(ring: &QuotientRing, fac: &FpFactorization) -> Vec<RingElement> {
    if fac.len() == 1 {
        return vec![ring.one()];
    }
    let c = ring.modulus().monic();
    fac.factors()
        .iter()
        .map(|f| {
            let mut q = PolyFp::constant(ring.field(), 1);
            for _ in 0..f.multiplicity {
                q = q.mul(&f.poly);
            }
            let cofactor = c.exact_div(&q);
            let (g, s, _) = cofactor.ext_gcd(&q);
            debug_assert!(g.is_one());
            ring.from_poly(&s.mul(&cofactor))
        })
        .collect()
}

/// The complete set of primitive idempotents, via Bezout cofactors.
pub fn primitive_idempotents(core: &CorePolynomial, p: u64) -> Result<Vec<RingElement>> {
    let ring = QuotientRing::new(core, p)?;
    let fac = fp_algebra::factor_mod_p(ring.modulus());
    Ok(idempotents_of(&ring, &fac))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitClass {
    Zero,
    Unit,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Lexicographically least member.
    pub representative: RingElement,
    pub length: u64,
    pub class: OrbitClass,
    pub rank: usize,
    /// Indices of the maximal ideals (factor order) containing the orbit.
    pub maximal_ideals: Vec<usize>,
}

/// Trace sums over orbits and over maximal ideals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceSums {
    /// Orbits where the component sum differs from the trace sum mod p.
    pub component_sum_violations: usize,
    /// Per maximal ideal (factor order): sum of traces over its elements, mod p.
    pub ideal_trace_sums: Vec<u64>,
    /// `F_p`-dimension of each maximal ideal.
    pub ideal_dimensions: Vec<usize>,
}

impl TraceSums {
    pub fn component_sums_hold(&self) -> bool {
        self.component_sum_violations == 0
    }

    pub fn ideal_sums_vanish(&self) -> bool {
        self.ideal_trace_sums.iter().all(|&s| s == 0)
    }
}

/// Pairs of distinct nonzero non-unit orbits lying in a common maximal ideal,
/// and how many of them are related by multiplication with a unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AssociateScan {
    pub pairs: usize,
    pub related_by_unit: usize,
}

/// Counts of violated orbit laws; all zero on a consistent ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrbitViolations {
    pub zero_not_singleton: usize,
    pub length_not_dividing_period: usize,
    pub unit_orbit_wrong_length: usize,
    pub unit_orbit_count_mismatch: usize,
    pub class_not_constant: usize,
    pub rank_not_constant: usize,
    pub columns_not_recursive: usize,
    pub size_mismatch: usize,
}

impl OrbitViolations {
    pub fn total(&self) -> usize {
        self.zero_not_singleton
            + self.length_not_dividing_period
            + self.unit_orbit_wrong_length
            + self.unit_orbit_count_mismatch
            + self.class_not_constant
            + self.rank_not_constant
            + self.columns_not_recursive
            + self.size_mismatch
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitPartition {
    pub core: Vec<i64>,
    pub p: u64,
    pub c_p: u64,
    pub size: u64,
    /// Orbits ordered by their least member.
    pub orbits: Vec<Orbit>,
    /// Per-member checks (class, rank, column recursion) were run.
    pub detailed: bool,
    pub violations: OrbitViolations,
    pub trace_sums: TraceSums,
    pub associates: Option<AssociateScan>,
}

impl OrbitPartition {
    pub fn unit_orbits(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| o.class == OrbitClass::Unit)
    }

    pub fn total_size(&self) -> u64 {
        self.orbits.iter().map(|o| o.length).sum()
    }
}

fn in_ideal(ring: &QuotientRing, f: &PolyFp, m: &RingElement) -> bool {
    ring.to_poly(m).rem(f).is_zero()
}

/// Partitions `F_p[x]/(C)` into orbits under `m -> mA` and checks the orbit
/// laws along the way.
pub fn orbit_partition(core: &CorePolynomial, p: u64, budget: u64) -> Result<OrbitPartition> {
    let ring = QuotientRing::new(core, p)?;
    if ring.field().reduce_i64(core.last()) == 0 {
        return Err(Error::NotInvertible {
            domain: format!("F_{p}"),
            reason: format!("p divides t_k = {}", core.last()),
        });
    }
    let size = ring.check_budget(budget)?;
    let structure = decompose(core, p)?;
    let c_p = structure.period.expect("nondegenerate");
    let detailed = size <= DETAILED_LIMIT;
    let ideals: Vec<PolyFp> = structure.factors.iter().map(|f| f.poly.clone()).collect();
    let k = ring.k();
    let field = ring.field();
    let t: Vec<u64> = core.t().iter().map(|&x| field.reduce_i64(x)).collect();

    let mut visited = vec![false; size as usize];
    let mut orbits = Vec::new();
    let mut violations = OrbitViolations::default();
    let mut sums = TraceSums {
        ideal_trace_sums: vec![0; ideals.len()],
        ideal_dimensions: structure
            .factors
            .iter()
            .map(|f| k - f.r)
            .collect(),
        ..TraceSums::default()
    };

    for start in ring.elements() {
        if visited[ring.index_of(&start)] {
            continue;
        }
        let class = if start.is_zero() {
            OrbitClass::Zero
        } else if ring.is_unit(&start) {
            OrbitClass::Unit
        } else {
            OrbitClass::Ideal
        };
        let containing: Vec<usize> = ideals
            .iter()
            .enumerate()
            .filter(|(_, f)| in_ideal(&ring, f, &start))
            .map(|(i, _)| i)
            .collect();
        let rank = ring.rank(&start);
        let mut members = Vec::new();
        let mut cur = start.clone();
        let (mut component_sum, mut trace_sum) = (0u64, 0u64);
        loop {
            visited[ring.index_of(&cur)] = true;
            let tr = ring.trace(&cur);
            trace_sum = field.add(&trace_sum, &tr);
            for c in &cur.0 {
                component_sum = field.add(&component_sum, c);
            }
            for &i in &containing {
                sums.ideal_trace_sums[i] = field.add(&sums.ideal_trace_sums[i], &tr);
            }
            if detailed {
                let member_ideals: Vec<usize> = ideals
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| in_ideal(&ring, f, &cur))
                    .map(|(i, _)| i)
                    .collect();
                if member_ideals != containing || ring.is_unit(&cur) != (class == OrbitClass::Unit)
                {
                    violations.class_not_constant += 1;
                }
                if ring.rank(&cur) != rank {
                    violations.rank_not_constant += 1;
                }
                members.push(cur.clone());
            }
            cur = ring.shift(&cur);
            if cur == start {
                break;
            }
        }
        let length = if detailed {
            members.len() as u64
        } else {
            orbit_length(&ring, &start)
        };
        if component_sum != trace_sum {
            sums.component_sum_violations += 1;
        }
        if detailed {
            // each coordinate column of the cyclic orbit satisfies the recursion
            let len = members.len();
            for n in 0..len {
                for j in 0..k {
                    let lhs = members[(n + k) % len].0[j];
                    let rhs = (1..=k).fold(0, |acc, i| {
                        field.add(&acc, &field.mul(&t[i - 1], &members[(n + k - i) % len].0[j]))
                    });
                    if lhs != rhs {
                        violations.columns_not_recursive += 1;
                    }
                }
            }
        }
        if class == OrbitClass::Zero && length != 1 {
            violations.zero_not_singleton += 1;
        }
        if c_p % length != 0 {
            violations.length_not_dividing_period += 1;
        }
        if class == OrbitClass::Unit && length != c_p {
            violations.unit_orbit_wrong_length += 1;
        }
        orbits.push(Orbit {
            representative: start,
            length,
            class,
            rank,
            maximal_ideals: containing,
        });
    }
    let unit_orbits = orbits.iter().filter(|o| o.class == OrbitClass::Unit).count() as u64;
    if let Some(index) = structure.index().and_then(|i| i.to_u64()) {
        if unit_orbits != index {
            violations.unit_orbit_count_mismatch += 1;
        }
    }
    let total: u64 = orbits.iter().map(|o| o.length).sum();
    if total != size {
        violations.size_mismatch += 1;
    }
    let associates = (size <= ASSOCIATE_LIMIT).then(|| associate_scan(&ring, &orbits));
    Ok(OrbitPartition {
        core: core.t().to_vec(),
        p,
        c_p,
        size,
        orbits,
        detailed,
        violations,
        trace_sums: sums,
        associates,
    })
}

fn orbit_length(ring: &QuotientRing, start: &RingElement) -> u64 {
    let mut cur = ring.shift(start);
    let mut n = 1;
    while cur != *start {
        cur = ring.shift(&cur);
        n += 1;
    }
    n
}

fn associate_scan(ring: &QuotientRing, orbits: &[Orbit]) -> AssociateScan {
    let units: Vec<RingElement> = ring.elements().filter(|m| ring.is_unit(m)).collect();
    // orbit id of every element
    let mut owner = vec![usize::MAX; ring.size() as usize];
    for (id, o) in orbits.iter().enumerate() {
        let mut cur = o.representative.clone();
        loop {
            owner[ring.index_of(&cur)] = id;
            cur = ring.shift(&cur);
            if cur == o.representative {
                break;
            }
        }
    }
    let ideal_orbits: Vec<usize> = (0..orbits.len())
        .filter(|&i| orbits[i].class == OrbitClass::Ideal)
        .collect();
    let mut scan = AssociateScan::default();
    for &a in &ideal_orbits {
        let reach: BTreeSet<usize> = units
            .iter()
            .map(|u| owner[ring.index_of(&ring.mul(u, &orbits[a].representative))])
            .collect();
        for &b in &ideal_orbits {
            if a >= b {
                continue;
            }
            let common = orbits[a]
                .maximal_ideals
                .iter()
                .any(|i| orbits[b].maximal_ideals.contains(i));
            if common {
                scan.pairs += 1;
                if reach.contains(&b) {
                    scan.related_by_unit += 1;
                }
            }
        }
    }
    scan
}

/// Sum-of-traces identities: per orbit (component sum equals trace sum) and
/// per maximal ideal (trace sum vanishes).
pub fn trace_orbit_sums(core: &CorePolynomial, p: u64, budget: u64) -> Result<TraceSums> {
    Ok(orbit_partition(core, p, budget)?.trace_sums)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitLawReport {
    pub enumerated: u64,
    pub closed_form: String,
    pub holds: bool,
}

/// Units counted by norm against `|J| * prod (p^{r_i} - 1)`.
pub fn verify_unit_group_law(core: &CorePolynomial, p: u64, budget: u64) -> Result<UnitLawReport> {
    let ring = QuotientRing::new(core, p)?;
    ring.check_budget(budget)?;
    let structure = decompose(core, p)?;
    let enumerated = ring.elements().filter(|m| ring.norm(m) != 0).count() as u64;
    let closed = structure.factors.iter().fold(structure.radical_order.clone(), |acc, f| {
        acc * (BigUint::from(p).pow(f.r as u32) - 1u32)
    });
    debug_assert_eq!(closed, structure.unit_group_order);
    Ok(UnitLawReport {
        enumerated,
        holds: BigUint::from(enumerated) == closed,
        closed_form: closed.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodLawReport {
    pub core: Vec<i64>,
    pub p: u64,
    pub factor_periods: Vec<u64>,
    /// lcm of the factor periods.
    pub l: u64,
    pub c_p: u64,
    pub radical_order: String,
    pub ramified: bool,
    pub l_divides_c: bool,
    /// `c_p = L` (vacuous when ramified).
    pub unramified_equal: bool,
    /// `c_p / L` is a positive power of `p` (vacuous when unramified).
    pub ramified_power_of_p: bool,
    /// `c_p = L * |J|`; reported only.
    pub thm_6_8_2_holds: bool,
}

impl PeriodLawReport {
    /// The asserted laws, excluding the reported-only product formula.
    pub fn asserted_hold(&self) -> bool {
        self.l_divides_c && self.unramified_equal && self.ramified_power_of_p
    }
}

pub fn verify_period_law(core: &CorePolynomial, p: u64) -> Result<PeriodLawReport> {
    let s = decompose(core, p)?;
    let (Some(c), Some(l)) = (s.period, s.factor_period_lcm) else {
        return Err(Error::NotInvertible {
            domain: format!("F_{p}"),
            reason: format!("p divides t_k = {}", core.last()),
        });
    };
    let ramified = s.ramified();
    let l_divides_c = c % l == 0;
    let quotient = if l_divides_c { c / l } else { 0 };
    Ok(PeriodLawReport {
        core: core.t().to_vec(),
        p,
        factor_periods: s.factors.iter().filter_map(|f| f.factor_period).collect(),
        l,
        c_p: c,
        radical_order: s.radical_order.to_string(),
        ramified,
        l_divides_c,
        unramified_equal: ramified || c == l,
        ramified_power_of_p: !ramified || (quotient > 1 && arith::is_power_of(quotient, p)),
        thm_6_8_2_holds: s.thm_6_8_2_holds().expect("nondegenerate"),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RamificationReport {
    pub checked: usize,
    pub skipped_degenerate: usize,
    /// Structure dumps of every failing pair.
    pub failures: Vec<serde_json::Value>,
}

impl RamificationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `p | c_p` exactly when `C mod p` is not squarefree, for every pair.
pub fn verify_ramification_theorem(
    cores: &[CorePolynomial],
    primes: &[u64],
) -> Result<RamificationReport> {
    let mut report = RamificationReport::default();
    for core in cores {
        for &p in primes {
            if core.last().rem_euclid(p as i64) == 0 {
                report.skipped_degenerate += 1;
                continue;
            }
            let s = decompose(core, p)?;
            let c = s.period.expect("nondegenerate");
            let by_disc = fp_algebra::ramifies(core, p)?;
            report.checked += 1;
            if (c % p == 0) != by_disc || by_disc != s.ramified() {
                report.failures.push(s.to_json());
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub ranks: Vec<usize>,
    pub subsets_checked: usize,
    pub violations: usize,
    pub total_rank: usize,
}

impl RankReport {
    pub fn holds(&self, k: usize) -> bool {
        self.violations == 0 && self.total_rank == k
    }
}

/// `r(sum_{i in S} e_i) = sum_{i in S} r(e_i)` over every subset `S`; `None`
/// unless `C mod p` is squarefree.
pub fn verify_rank_additivity(core: &CorePolynomial, p: u64) -> Result<Option<RankReport>> {
    let s = decompose(core, p)?;
    if s.ramified() {
        return Ok(None);
    }
    let ring = QuotientRing::new(core, p)?;
    let n = s.idempotents.len();
    if n > 20 {
        return Err(Error::InvalidArgument(format!("{n} idempotents is too many subsets")));
    }
    let ranks = s.idempotent_ranks.clone();
    let mut violations = 0;
    for mask in 1u32..(1 << n) {
        let mut sum = ring.zero();
        let mut expected = 0;
        for (i, e) in s.idempotents.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = ring.add(&sum, e);
                expected += ranks[i];
            }
        }
        if ring.rank(&sum) != expected {
            violations += 1;
        }
    }
    Ok(Some(RankReport {
        total_rank: ranks.iter().sum(),
        ranks,
        subsets_checked: (1usize << n) - 1,
        violations,
    }))
}

/// For each idempotent `e`: `(eA)^n = eA^n` along its orbit, and the orbit
/// length divides `c_p`. Returns the orbit lengths.
pub fn verify_idempotent_orbits(core: &CorePolynomial, p: u64) -> Result<Vec<(RingElement, u64, bool)>> {
    let s = decompose(core, p)?;
    let c = s.period.ok_or_else(|| Error::NotInvertible {
        domain: format!("F_{p}"),
        reason: format!("p divides t_k = {}", core.last()),
    })?;
    let ring = QuotientRing::new(core, p)?;
    let a = core.companion_in(&ring.field());
    let mut out = Vec::new();
    for e in &s.idempotents {
        let ea = ring.standard_matrix(e).mul(&ring.field(), &a);
        let em = ring.standard_matrix(e);
        let mut power = em.clone();
        let mut cur = e.clone();
        let mut ok = true;
        let mut len = 0u64;
        loop {
            power = power.mul(&ring.field(), &ea);
            cur = ring.shift(&cur);
            len += 1;
            if power != ring.standard_matrix(&cur) {
                ok = false;
            }
            if cur == *e {
                break;
            }
        }
        out.push((e.clone(), len, ok && c % len == 0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core(t: &[i64]) -> CorePolynomial {
        CorePolynomial::new(t.to_vec()).unwrap()
    }

    #[test]
    fn standard_matrices() {
        let ring = QuotientRing::new(&core(&[0, 2, 1]), 3).unwrap();
        let f = ring.field();
        assert!(ring.standard_matrix(&ring.one()).is_identity(&f));
        assert_eq!(ring.standard_matrix(&ring.lambda()), core(&[0, 2, 1]).companion_in(&f));
        let e1 = ring.element(&[-1, 1, -1]).unwrap();
        let m = ring.standard_matrix(&e1);
        assert_eq!(m.mul(&f, &m), m);
        assert_eq!(ring.mul(&e1, &e1), e1);
    }

    #[test]
    fn representation_is_a_homomorphism() {
        for (t, p) in [(vec![0, 2, 1], 3u64), (vec![1, 1], 5), (vec![3, -1, 2, 1], 7)] {
            let ring = QuotientRing::new(&core(&t), p).unwrap();
            let f = ring.field();
            let elems: Vec<RingElement> = ring.elements().step_by(7).take(30).collect();
            for a in &elems {
                for b in elems.iter().step_by(3) {
                    let (ma, mb) = (ring.standard_matrix(a), ring.standard_matrix(b));
                    assert_eq!(ring.standard_matrix(&ring.mul(a, b)), ma.mul(&f, &mb));
                    assert_eq!(ring.standard_matrix(&ring.add(a, b)), ma.add(&f, &mb));
                }
            }
        }
    }

    #[test]
    fn traces() {
        assert_eq!(trace(&core(&[1, 1]), 7, &[1]).unwrap(), 2);
        assert_eq!(trace(&core(&[1, 1]), 7, &[0, 1]).unwrap(), 1);
        assert_eq!(trace(&core(&[0, 2, 1]), 3, &[0, 0, 1]).unwrap(), 1);
        let ring = QuotientRing::new(&core(&[2, -3, 1]), 5).unwrap();
        for m in ring.elements() {
            assert_eq!(ring.trace_by_lucas(&m), ring.trace_by_matrix(&m));
        }
    }

    #[test]
    fn norms_and_ranks() {
        let c = core(&[0, 2, 1]);
        assert_eq!((norm(&c, 3, &[0]).unwrap(), rank(&c, 3, &[0]).unwrap()), (0, 0));
        assert_eq!((norm(&c, 3, &[1]).unwrap(), rank(&c, 3, &[1]).unwrap()), (1, 3));
        let ring = QuotientRing::new(&c, 3).unwrap();
        for m in ring.elements() {
            assert_eq!(ring.norm(&m) != 0, ring.is_unit(&m));
            if ring.is_unit(&m) {
                assert_eq!(ring.rank(&m), 3);
            }
        }
    }

    #[test]
    fn worked_example_structure() {
        let s = decompose(&core(&[0, 2, 1]), 3).unwrap();
        assert_eq!(s.s(), 2);
        let re: Vec<(usize, u32)> = s.factors.iter().map(|f| (f.r, f.e)).collect();
        assert_eq!(re, [(1, 1), (2, 1)]);
        assert_eq!(s.ring_order, BigUint::from(27u32));
        assert_eq!(s.unit_group_order, BigUint::from(16u32));
        assert_eq!(s.period, Some(8));
        assert_eq!(s.index(), Some(BigUint::from(2u32)));
        assert_eq!(s.radical_order, BigUint::one());
        assert_eq!(s.classification, Classification::Split);
        let ids: BTreeSet<Vec<u64>> = s.idempotents.iter().map(|e| e.0.clone()).collect();
        assert_eq!(ids, BTreeSet::from([vec![2, 1, 2], vec![2, 2, 1]]));
        let periods: Vec<Option<u64>> = s.factors.iter().map(|f| f.factor_period).collect();
        assert_eq!(periods, [Some(2), Some(8)]);
        let j = s.to_json();
        assert_eq!(j["|G_p|"], "16");
        assert_eq!(j["c_p"], 8);
        assert_eq!(j["classification"], "split");
        assert_eq!(j["thm_6_7_consistent"], true);
    }

    #[test]
    fn fibonacci_structures() {
        let s5 = decompose(&core(&[1, 1]), 5).unwrap();
        assert_eq!(s5.classification, Classification::Ramified);
        assert_eq!(s5.radical_order, BigUint::from(5u32));
        assert_eq!(s5.unit_group_order, BigUint::from(20u32));
        assert_eq!(s5.period, Some(20));
        assert_eq!(s5.m_exponent, 2);
        assert_eq!(s5.idempotents, [RingElement(vec![1, 0])]);

        let s2 = decompose(&core(&[1, 1]), 2).unwrap();
        assert_eq!(s2.classification, Classification::Inert);
        assert_eq!(s2.period, Some(3));
        assert_eq!(s2.unit_group_order, BigUint::from(3u32));

        let s11 = decompose(&core(&[1, 1]), 11).unwrap();
        assert_eq!(s11.classification, Classification::Split);
        let ring = QuotientRing::new(&core(&[1, 1]), 11).unwrap();
        let (e1, e2) = (&s11.idempotents[0], &s11.idempotents[1]);
        assert_eq!(ring.add(e1, e2), ring.one());
        assert!(ring.mul(e1, e2).is_zero());
    }

    #[test]
    fn idempotent_system() {
        for (t, p) in [(vec![0, 2, 1], 3u64), (vec![1, 1], 11), (vec![0, 0, 0, 1], 5), (vec![1, 0, 0, 1], 7), (vec![2, -1], 3)] {
            let ring = QuotientRing::new(&core(&t), p).unwrap();
            let ids = primitive_idempotents(&core(&t), p).unwrap();
            let fac = fp_algebra::factor_mod_p(ring.modulus());
            assert_eq!(ids.len(), fac.len());
            let sum = ids.iter().fold(ring.zero(), |acc, e| ring.add(&acc, e));
            assert_eq!(sum, ring.one());
            for (i, a) in ids.iter().enumerate() {
                assert_eq!(ring.mul(a, a), *a);
                for b in &ids[i + 1..] {
                    assert!(ring.mul(a, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn orbits_small() {
        let part = orbit_partition(&core(&[1, 1]), 2, DEFAULT_BUDGET).unwrap();
        let lens: Vec<u64> = part.orbits.iter().map(|o| o.length).collect();
        assert_eq!(lens, [1, 3]);
        assert_eq!(part.violations.total(), 0);

        let part = orbit_partition(&core(&[0, 2, 1]), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(part.total_size(), 27);
        assert_eq!(part.unit_orbits().count(), 2);
        assert!(part.unit_orbits().all(|o| o.length == 8));
        assert_eq!(part.violations, OrbitViolations::default());
        assert!(part.trace_sums.component_sums_hold());
        assert!(part.trace_sums.ideal_sums_vanish());
        assert_eq!(part.trace_sums.ideal_dimensions, [2, 1]);
    }

    #[test]
    fn ideal_trace_sum_fails_in_characteristic_two() {
        // I = (X^2 + X + 1) is one-dimensional over F_2 with nonzero trace
        let part = orbit_partition(&core(&[0, 0, 1]), 2, DEFAULT_BUDGET).unwrap();
        assert!(part.trace_sums.component_sums_hold());
        assert!(!part.trace_sums.ideal_sums_vanish());
    }

    #[test]
    fn orbit_budget() {
        let err = orbit_partition(&core(&[1, 1, 1]), 101, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { size: 1_030_301, budget: 1000 }));
        assert!(orbit_partition(&core(&[1, 2]), 2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn unit_law() {
        for (t, p, want) in [(vec![0, 2, 1], 3u64, 16u64), (vec![1, 1], 5, 20), (vec![2, -1], 3, 6)] {
            let r = verify_unit_group_law(&core(&t), p, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.enumerated, want);
            assert!(r.holds);
        }
    }

    #[test]
    fn period_laws() {
        let r = verify_period_law(&core(&[0, 2, 1]), 3).unwrap();
        assert_eq!((r.l, r.c_p), (8, 8));
        assert!(r.asserted_hold());
        let r = verify_period_law(&core(&[2, -1]), 5).unwrap();
        assert_eq!((r.l, r.c_p, r.radical_order.as_str()), (1, 5, "5"));
        assert!(r.asserted_hold() && r.thm_6_8_2_holds);
        let r = verify_period_law(&core(&[0, 1, 0, 1]), 2).unwrap();
        assert_eq!((r.l, r.c_p, r.radical_order.as_str()), (3, 6, "4"));
        assert!(r.asserted_hold());
        assert!(!r.thm_6_8_2_holds);
    }

    #[test]
    fn ramification_sweep_k2() {
        let mut cores = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                if b != 0 {
                    cores.push(core(&[a, b]));
                }
            }
        }
        let r = verify_ramification_theorem(&cores, &[2, 3, 5, 7]).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert!(r.checked > 0 && r.skipped_degenerate > 0);
    }

    #[test]
    fn rank_additivity() {
        let r = verify_rank_additivity(&core(&[0, 2, 1]), 3).unwrap().unwrap();
        assert_eq!(r.ranks, [1, 2]);
        assert!(r.holds(3));
        assert!(verify_rank_additivity(&core(&[1, 1]), 5).unwrap().is_none());
    }

    #[test]
    fn idempotent_orbits() {
        for (e, len, ok) in verify_idempotent_orbits(&core(&[0, 2, 1]), 3).unwrap() {
            assert!(ok, "{e}");
            assert!(8 % len == 0);
        }
    }

    #[test]
    fn degenerate_structure() {
        let s = decompose(&core(&[1, 2]), 2).unwrap();
        assert!(s.degenerate());
        assert_eq!(s.factors[0].factor_period, None);
        assert_eq!(s.to_json()["c_p"], serde_json::Value::Null);
    }
}
