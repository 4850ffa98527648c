//! Univariate polynomials over Z and F_p: factorization over F_p,
//! resultants, discriminants, and the ramification test for a core.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{PrimeField, Ring};
use crate::companion::CorePolynomial;
use crate::error::Result;
use crate::matrix::det_bareiss;

/// Seed used when the caller does not supply a generator.
pub const DEFAULT_SEED: u64 = 0x5eed_1e55;

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let mag = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{i}"),
        };
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{mag}*{mono}")?,
        }
    }
    Ok(())
}

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial, exact over Z.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("nonzero divisor");
        assert!(divisor.leading().is_some_and(|c| c.is_one()), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= &c * dc;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn reduce(&self, field: &PrimeField) -> PolyFp {
        PolyFp::new(
            *field,
            self.coeffs.iter().map(|c| field.from_int(c)).collect(),
        )
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Dense polynomial over F_p with canonical coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFp {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `X`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = &self.field;
        Self::new(*f, self.coeffs.iter().map(|a| f.mul(a, &c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            *f,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    f.add(&a, &b)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            *f,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    f.sub(&a, &b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(*f, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let d = divisor.degree().expect("division by zero polynomial");
        let inv = f.inv(&divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(*f), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let c = f.mul(&rem[i], &inv);
            quot[i - d] = c;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let s = f.mul(&c, dc);
                rem[i - d + j] = f.sub(&rem[i - d + j], &s);
            }
        }
        (Self::new(*f, quot), Self::new(*f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            *f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &(i as u64 % f.modulus())))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let fld = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(fld, 1), Self::zero(fld));
        let (mut t0, mut t1) = (Self::zero(fld), Self::constant(fld, 1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fld.inv(&r0.leading()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod modulus` for an arbitrary-size exponent.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::constant(self.field, 1).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, modulus: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), modulus)
    }

    /// Integer lift with coefficients in `0..p`.
    pub fn lift(&self) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Order used for canonical output: degree, then coefficients from the top.
    fn canonical_key(&self) -> (usize, Vec<u64>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().rev().copied().collect(),
        )
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<BigInt> = self.coeffs.iter().map(|&x| BigInt::from(x)).collect();
        write_poly(f, &c)
    }
}

/// One irreducible factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactor {
    pub poly: PolyFp,
    pub multiplicity: u32,
}

impl FpFactor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// Complete factorization of a monic polynomial over F_p into distinct monic
/// irreducibles, sorted by degree and then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    p: u64,
    factors: Vec<FpFactor>,
}

impl FpFactorization {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn factors(&self) -> &[FpFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.multiplicity == 1)
    }

    /// `prod f_i^{e_i}`.
    pub fn product(&self) -> PolyFp {
        let field = PrimeField::new(self.p).expect("prime");
        let mut acc = PolyFp::constant(field, 1);
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = acc.mul(&f.poly);
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FactorizationJson::from(self)).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    /// Ascending coefficients in `0..p`.
    pub coeffs: Vec<u64>,
    pub e: u32,
}

/// Wire form `{"p": ..., "factors": [{"coeffs": [...], "e": ...}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub p: u64,
    pub factors: Vec<FactorJson>,
}

impl From<&FpFactorization> for FactorizationJson {
    fn from(f: &FpFactorization) -> Self {
        Self {
            p: f.p,
            factors: f
                .factors
                .iter()
                .map(|x| FactorJson {
                    coeffs: x.poly.coeffs().to_vec(),
                    e: x.multiplicity,
                })
                .collect(),
        }
    }
}

/// `C(X) = X^k - t_1 X^{k-1} - ... - t_k`.
pub fn core_to_poly(core: &CorePolynomial) -> PolyZ {
    let k = core.k();
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    for (j, &tj) in core.t().iter().enumerate() {
        coeffs[k - 1 - j] = BigInt::from(-tj);
    }
    PolyZ::new(coeffs)
}

pub fn derivative(f: &PolyZ) -> PolyZ {
    f.derivative()
}

/// Sylvester resultant, by fraction-free elimination of the Sylvester matrix.
/// Zero if either argument is zero.
pub fn resultant(f: &PolyZ, g: &PolyZ) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    let f_desc: Vec<&BigInt> = f.coeffs().iter().rev().collect();
    let g_desc: Vec<&BigInt> = g.coeffs().iter().rev().collect();
    for i in 0..n {
        for (j, c) in f_desc.iter().enumerate() {
            rows[i][i + j] = (*c).clone();
        }
    }
    for i in 0..m {
        for (j, c) in g_desc.iter().enumerate() {
            rows[n + i][i + j] = (*c).clone();
        }
    }
    det_bareiss(&rows)
}

/// Discriminant of the core polynomial, `(-1)^{k(k-1)/2} Res(C, C')`.
pub fn discriminant(core: &CorePolynomial) -> BigInt {
    let c = core_to_poly(core);
    let k = core.k();
    let r = resultant(&c, &c.derivative());
    if (k * (k - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Primes dividing a nonzero discriminant, ascending; `None` when the
/// discriminant is zero or does not fit in 64 bits.
pub fn ramified_primes(core: &CorePolynomial) -> Option<Vec<u64>> {
    discriminant(core)
        .abs()
        .to_u64()
        .filter(|&n| n != 0)
        .map(|n| crate::arith::factorize(n).into_iter().map(|(q, _)| q).collect())
}

/// `C'(lambda)` in the basis `1, lambda, ..., lambda^{k-1}`:
/// `(-t_{k-1}, -2 t_{k-2}, ..., -(k-1) t_1, k)`.
pub fn different_element(core: &CorePolynomial) -> Vec<BigInt> {
    let d = core_to_poly(core).derivative();
    let mut v = d.coeffs().to_vec();
    v.resize(core.k(), BigInt::zero());
    v
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree `(g, m)` with `prod g^m = f`.
pub fn squarefree_decomposition(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let field = f.field();
    let p = field.modulus();
    let one = PolyFp::constant(field, 1);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c != one && c.degree().unwrap_or(0) > 0 {
        // c is a p-th power: take the p-th root coefficientwise
        let root_coeffs: Vec<u64> = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .copied()
            .collect();
        debug_assert!(c
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, &x)| (i as u64).is_multiple_of(p) || x == 0));
        let root = PolyFp::new(field, root_coeffs);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial: `(product of all
/// irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let field = f.field();
    let p = field.modulus();
    let x = PolyFp::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod_u64(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().expect("nonzero");
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a squarefree monic product of
/// irreducibles of degree `d`.
pub fn equal_degree<G: Rng>(f: &PolyFp, d: usize, rng: &mut G) -> Vec<PolyFp> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let p = field.modulus();
    loop {
        let a = PolyFp::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        let candidate = if !g.is_one() {
            g
        } else if p == 2 {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&PolyFp::constant(field, 1)).gcd(f)
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let other = f.exact_div(&candidate);
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn all_monic(field: PrimeField, degree: usize) -> impl Iterator<Item = PolyFp> {
    let p = field.modulus();
    let count = p.pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(idx % p);
            idx /= p;
        }
        coeffs.push(1);
        PolyFp::new(field, coeffs)
    })
}

/// Trial division by every monic polynomial in increasing degree; only for
/// tiny `p` and degree.
fn factor_exhaustive(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let field = f.field();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 1 {
        if 2 * d > rest.degree().unwrap_or(0) {
            out.push((rest.clone(), 1));
            break;
        }
        for g in all_monic(field, d) {
            let mut m = 0;
            loop {
                let (q, r) = rest.div_rem(&g);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((g, m));
            }
        }
        d += 1;
    }
    merge_factors(out)
}

fn merge_factors(mut items: Vec<(PolyFp, u32)>) -> Vec<(PolyFp, u32)> {
    items.sort_by_key(|a| a.0.canonical_key());
    let mut out: Vec<(PolyFp, u32)> = Vec::new();
    for (g, m) in items {
        match out.last_mut() {
            Some((h, n)) if *h == g => *n += m,
            _ => out.push((g, m)),
        }
    }
    out
}

/// Factors a nonzero polynomial over F_p into monic irreducibles, with a
/// caller-supplied generator for the randomized splitting step.
pub fn factor_mod_p_with<G: Rng>(f: &PolyFp, rng: &mut G) -> FpFactorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let p = f.p();
    let monic = f.monic();
    let deg = monic.degree().unwrap_or(0);
    let items = if p <= 7 && deg <= 3 {
        factor_exhaustive(&monic)
    } else {
        let mut items = Vec::new();
        for (g, m) in squarefree_decomposition(&monic) {
            for (h, d) in distinct_degree(&g) {
                for irr in equal_degree(&h, d, rng) {
                    items.push((irr, m));
                }
            }
        }
        merge_factors(items)
    };
    FpFactorization {
        p,
        factors: items
            .into_iter()
            .map(|(poly, multiplicity)| FpFactor { poly, multiplicity })
            .collect(),
    }
}

/// Factorization with a generator seeded from `seed`.
pub fn factor_mod_p_seeded(f: &PolyFp, seed: u64) -> FpFactorization {
    factor_mod_p_with(f, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Factorization with the default seed.
pub fn factor_mod_p(f: &PolyFp) -> FpFactorization {
    factor_mod_p_with(f, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Factorization of `C mod p`.
pub fn factor_core(core: &CorePolynomial, p: u64) -> Result<FpFactorization> {
    let field = PrimeField::new(p)?;
    Ok(factor_mod_p(&core_to_poly(core).reduce(&field)))
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &PolyFp) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic();
    let field = f.field();
    let p = BigUint::from(field.modulus());
    let x = PolyFp::x(field);
    for (q, _) in crate::arith::factorize(n as u64) {
        let e = p.pow((n as u64 / q) as u32);
        let h = x.pow_mod(&e, &f).sub(&x);
        if !h.gcd(&f).is_one() {
            return false;
        }
    }
    x.pow_mod(&p.pow(n as u32), &f).sub(&x).rem(&f).is_zero()
}

/// `p | disc(C)`, cross-checked against squarefreeness of `C mod p`.
pub fn ramifies(core: &CorePolynomial, p: u64) -> Result<bool> {
    let field = PrimeField::new(p)?;
    let by_discriminant = discriminant(core).mod_floor(&BigInt::from(p)).is_zero();
    let c = core_to_poly(core).reduce(&field);
    let by_squarefree = !c.gcd(&c.derivative()).is_one();
    assert_eq!(
        by_discriminant, by_squarefree,
        "discriminant and squarefree tests disagree for {core} at p = {p}"
    );
    Ok(by_discriminant)
}

/// Order of `X` in `F_p[X]/(f)` for `f` with `f(0) != 0`, i.e. the period of
/// the recursion whose characteristic polynomial is `f`.
pub fn order_of_x(f: &PolyFp) -> Option<u64> {
    let f = f.monic();
    if f.coeffs().first().copied().unwrap_or(0) == 0 {
        return None;
    }
    let core = core_of_monic(&f);
    crate::recurrence::period_mod_p_matrix_order(&core, f.p()).ok()
}

/// The core `[t_1..t_r]` whose polynomial reduces to the monic `f`.
pub fn core_of_monic(f: &PolyFp) -> CorePolynomial {
    let r = f.degree().expect("nonzero");
    let field = f.field();
    let t: Vec<i64> = (1..=r)
        .map(|j| field.neg(&f.coeffs()[r - j]) as i64)
        .collect();
    CorePolynomial::new(t).expect("degree at least one")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core(t: &[i64]) -> CorePolynomial {
        CorePolynomial::new(t.to_vec()).unwrap()
    }

    fn fp(p: u64, c: &[i64]) -> PolyFp {
        PolyFp::from_i64(PrimeField::new(p).unwrap(), c)
    }

    /// Resultant by the Euclidean algorithm over Q, independent of Sylvester.
    fn resultant_euclid(f: &PolyZ, g: &PolyZ) -> num_rational::BigRational {
        use num_rational::BigRational as Q;
        let to_q = |p: &PolyZ| -> Vec<Q> {
            p.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect()
        };
        fn trim(v: &mut Vec<num_rational::BigRational>) {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
        }
        let (mut a, mut b) = (to_q(f), to_q(g));
        let mut acc = Q::one();
        loop {
            trim(&mut a);
            trim(&mut b);
            if a.is_empty() || b.is_empty() {
                return Q::zero();
            }
            let (m, n) = (a.len() - 1, b.len() - 1);
            if n == 0 {
                return acc * b[0].pow(m as i32);
            }
            // remainder of a by b
            let mut r = a.clone();
            let lb = b[n].clone();
            for i in (n..=m).rev() {
                let c = r[i].clone() / &lb;
                for j in 0..=n {
                    r[i - n + j] = &r[i - n + j] - &c * &b[j];
                }
            }
            trim(&mut r);
            if r.is_empty() {
                return Q::zero();
            }
            let deg_r = r.len() - 1;
            // Res(a,b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= lb.pow((m - deg_r) as i32);
            a = b;
            b = r;
        }
    }

    #[test]
    fn core_polynomials() {
        assert_eq!(core_to_poly(&core(&[1, 1])).to_string(), "X^2 - X - 1");
        assert_eq!(core_to_poly(&core(&[0, -1])).to_string(), "X^2 + 1");
        assert_eq!(core_to_poly(&core(&[0, 2, 1])).to_string(), "X^3 - 2*X - 1");
        assert_eq!(core_to_poly(&core(&[0, 2, 1])).derivative().to_string(), "3*X^2 - 2");
        assert_eq!(core_to_poly(&core(&[1, 1])).derivative().to_string(), "2*X - 1");
        assert!(PolyZ::from_i64(&[7]).derivative().is_zero());
    }

    #[test]
    fn resultant_examples() {
        let f = core_to_poly(&core(&[1, 1]));
        assert_eq!(resultant(&f, &f.derivative()), BigInt::from(-5));
        assert_eq!(resultant(&f, &PolyZ::one()), BigInt::one());
        let g = PolyZ::from_i64(&[3, -1, 4, 2]);
        for a in -4..=4 {
            let lin = PolyZ::from_i64(&[-a, 1]);
            assert_eq!(resultant(&lin, &g), g.eval(&BigInt::from(a)));
        }
    }

    #[test]
    fn resultant_matches_euclid_oracle() {
        let polys = [
            PolyZ::from_i64(&[1, -2, 0, 1]),
            PolyZ::from_i64(&[-3, 0, 2]),
            PolyZ::from_i64(&[5, 1, -1, 0, 3]),
            PolyZ::from_i64(&[2, 2]),
        ];
        for f in &polys {
            for g in &polys {
                let r = resultant(f, g);
                assert_eq!(
                    num_rational::BigRational::from_integer(r),
                    resultant_euclid(f, g),
                    "{f} / {g}"
                );
            }
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&core(&[1, 1])), BigInt::from(5));
        assert_eq!(discriminant(&core(&[2, -1])), BigInt::zero());
        assert_eq!(discriminant(&core(&[0, 2, 1])), BigInt::from(5));
        assert_eq!(discriminant(&core(&[-1, -1, -1, -1])), BigInt::from(125));
        // b^2 - 4c for X^2 + bX + c, i.e. t_1^2 + 4 t_2
        for t1 in -3..=3i64 {
            for t2 in -3..=3i64 {
                assert_eq!(discriminant(&core(&[t1, t2])), BigInt::from(t1 * t1 + 4 * t2));
            }
        }
        // -4a^3 - 27b^2 for X^3 + aX + b, i.e. core [0, -a, -b]
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                assert_eq!(
                    discriminant(&core(&[0, -a, -b])),
                    BigInt::from(-4 * a * a * a - 27 * b * b)
                );
            }
        }
    }

    #[test]
    fn different_examples() {
        let v = |t: &[i64]| -> Vec<i64> {
            different_element(&core(t)).iter().map(|x| x.to_i64().unwrap()).collect()
        };
        assert_eq!(v(&[1, 1]), [-1, 2]);
        assert_eq!(v(&[0, 2, 1]), [-2, 0, 3]);
        assert_eq!(v(&[5]), [1]);
    }

    #[test]
    fn factor_examples() {
        let f = factor_core(&core(&[0, 2, 1]), 3).unwrap();
        let got: Vec<(String, u32)> = f
            .factors()
            .iter()
            .map(|x| (x.poly.to_string(), x.multiplicity))
            .collect();
        assert_eq!(got, [("X + 1".to_string(), 1), ("X^2 + 2*X + 2".to_string(), 1)]);

        let f5 = factor_core(&core(&[1, 1]), 5).unwrap();
        assert_eq!(f5.len(), 1);
        assert_eq!(f5.factors()[0].poly.to_string(), "X + 2");
        assert_eq!(f5.factors()[0].multiplicity, 2);

        let f2 = factor_core(&core(&[1, 1]), 2).unwrap();
        assert_eq!(f2.len(), 1);
        assert_eq!(f2.factors()[0].degree(), 2);

        let f11 = factor_core(&core(&[1, 1]), 11).unwrap();
        let roots: Vec<String> = f11.factors().iter().map(|x| x.poly.to_string()).collect();
        assert_eq!(roots, ["X + 3", "X + 7"]);
    }

    #[test]
    fn factor_char_p_powers() {
        // (X^2 + X + 1)^2 over F_2, and X^(p+1) style inputs
        let f = fp(2, &[1, 0, 1, 0, 1]);
        let fac = factor_mod_p(&f);
        assert_eq!(fac.factors().len(), 1);
        assert_eq!(fac.factors()[0].poly, fp(2, &[1, 1, 1]));
        assert_eq!(fac.factors()[0].multiplicity, 2);

        let g = fp(3, &[0, 0, 0, 0, 1, 1]); // X^4 (X + 1)
        let fac = factor_mod_p(&g);
        assert_eq!(fac.product(), g);
        assert_eq!(fac.factors()[0].multiplicity, 4);

        let h = fp(13, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).mul(&fp(13, &[2, 1]));
        let fac = factor_mod_p(&h.mul(&h));
        assert_eq!(fac.product(), h.mul(&h).monic());
    }

    #[test]
    fn cantor_zassenhaus_large_prime() {
        let p = 1_000_003;
        let field = PrimeField::new(p).unwrap();
        let a = PolyFp::new(field, vec![5, 0, 1]);
        let b = PolyFp::new(field, vec![999_999, 1]);
        let c = PolyFp::new(field, vec![3, 7, 0, 1]);
        let f = a.mul(&b).mul(&c).mul(&b);
        let fac = factor_mod_p(&f);
        assert_eq!(fac.product(), f.monic());
        for x in fac.factors() {
            assert!(is_irreducible(&x.poly), "{}", x.poly);
        }
        // seeded runs agree
        let again = factor_mod_p_with(&f, &mut ChaCha8Rng::seed_from_u64(99));
        assert_eq!(again, fac);
    }

    #[test]
    fn ramification() {
        assert!(ramifies(&core(&[1, 1]), 5).unwrap());
        assert!(!ramifies(&core(&[1, 1]), 7).unwrap());
        for p in [2, 3, 5, 7, 11] {
            assert!(ramifies(&core(&[2, -1]), p).unwrap());
        }
        let phi5 = core(&[-1, -1, -1, -1]);
        assert!(ramifies(&phi5, 5).unwrap());
        for p in [2, 3, 7] {
            assert!(!ramifies(&phi5, p).unwrap());
        }
        assert!(ramifies(&core(&[1, 1]), 4).is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&fp(2, &[1, 1, 1])));
        assert!(!is_irreducible(&fp(2, &[1, 0, 1])));
        assert!(is_irreducible(&fp(3, &[2, 2, 1])));
        assert!(is_irreducible(&fp(2, &[1, 1, 0, 0, 1])));
        assert!(!is_irreducible(&fp(2, &[1, 0, 1, 0, 1])));
    }
}
