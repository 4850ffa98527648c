//! Isobaric polynomials: symmetric polynomials written in the (signed)
//! elementary-symmetric basis `t_j = (-1)^{j+1} e_j`, graded by isobaric
//! degree `n = sum j * alpha_j`.
//!
//! The three families built here are the generalized Fibonacci polynomials
//! (`gfp`, reflects of the complete symmetric polynomials), the generalized
//! Lucas polynomials (`glp`, reflects of the power sums) and the general
//! weighted family (`wip`). Schur polynomials are obtained from `gfp` by the
//! Jacobi-Trudi determinant.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Integers, Rationals, Ring};
use crate::error::{Error, Result};

/// Exponent vector `(alpha_1, ..., alpha_k)` of a monomial `t_1^alpha_1 ... t_k^alpha_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Isobaric weight `sum j * alpha_j`.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum()
    }

    /// `|alpha| = sum alpha_j`, the ordinary degree of the monomial.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// Multinomial coefficient `|alpha|! / (alpha_1! ... alpha_k!)`.
    pub fn multinomial(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut total = 0u64;
        for &a in &self.0 {
            for i in 1..=a as u64 {
                total += 1;
                acc = acc * BigInt::from(total) / BigInt::from(i);
            }
        }
        acc
    }

    /// Graded reverse lexicographic order, largest first. This is the
    /// order used for printing.
    fn display_cmp(&self, other: &Self) -> Ordering {
        other.length().cmp(&self.length()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

/// Weight vector `(omega_1, ..., omega_k)` selecting a member of the weighted family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    /// `(1, 1, ..., 1)`: selects the Fibonacci family.
    pub fn fibonacci(k: usize) -> Self {
        Self(vec![1; k])
    }

    /// `(1, 2, ..., k)`: selects the Lucas family.
    pub fn lucas(k: usize) -> Self {
        Self((1..=k as i64).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PartitionShape(Vec<u32>);

impl PartitionShape {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("partition shape is empty".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self(parts))
    }

    /// Hook `(arm, 1^leg)`.
    pub fn hook(arm: u32, leg: u32) -> Result<Self> {
        let mut parts = vec![arm];
        parts.extend(std::iter::repeat_n(1, leg as usize));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }
}

impl TryFrom<Vec<u32>> for PartitionShape {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PartitionShape> for Vec<u32> {
    fn from(s: PartitionShape) -> Self {
        s.0
    }
}

/// An integer polynomial in `t_1..t_k`, homogeneous of isobaric degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsobaricPolynomial {
    k: usize,
    n: u64,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl IsobaricPolynomial {
    pub fn zero(k: usize, n: u64) -> Self {
        Self {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(k, 0);
        p.add_term(ExponentVector::zero(k), c.into());
        p
    }

    /// The single variable `t_j` (1-based).
    pub fn variable(k: usize, j: usize) -> Self {
        assert!((1..=k).contains(&j), "variable index out of range");
        let mut alpha = vec![0; k];
        alpha[j - 1] = 1;
        let mut p = Self::zero(k, j as u64);
        p.add_term(ExponentVector(alpha), BigInt::one());
        p
    }

    /// Builds a polynomial from explicit terms; every exponent vector must
    /// have weight `n` and length `k`.
    pub fn from_terms(
        k: usize,
        n: u64,
        terms: impl IntoIterator<Item = (ExponentVector, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(k, n);
        for (alpha, c) in terms {
            if alpha.k() != k || alpha.weight() != n {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {:?} does not have length {k} and weight {n}",
                    alpha.0
                )));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, alpha: ExponentVector, c: BigInt) {
        debug_assert_eq!(alpha.weight(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &[u32]) -> BigInt {
        self.terms
            .get(&ExponentVector(alpha.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in canonical printing order.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.k, other.k, "grading levels differ");
        assert_eq!(self.n, other.n, "isobaric degrees differ");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            k: self.k,
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.k, self.n);
        }
        Self {
            k: self.k,
            n: self.n,
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "grading levels differ");
        let mut out = Self::zero(self.k, self.n + other.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let alpha = ExponentVector(a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect());
                out.add_term(alpha, x * y);
            }
        }
        out
    }

    /// Evaluates at `t` in any ring.
    pub fn evaluate_in<R: Ring>(&self, ring: &R, t: &[R::Elem]) -> R::Elem {
        assert_eq!(t.len(), self.k, "evaluation point must have k coordinates");
        let mut acc = ring.zero();
        for (alpha, c) in &self.terms {
            let mut term = ring.from_int(c);
            for (x, &e) in t.iter().zip(&alpha.0) {
                for _ in 0..e {
                    term = ring.mul(&term, x);
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    /// Exact integer evaluation.
    pub fn evaluate(&self, t: &[i64]) -> BigInt {
        let t: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
        self.evaluate_in(&Integers, &t)
    }

    /// Exact rational evaluation.
    pub fn evaluate_rational(&self, t: &[BigRational]) -> BigRational {
        self.evaluate_in(&Rationals, t)
    }

    /// Formal partial derivative with respect to `t_j` (1-based).
    pub fn formal_partial(&self, j: usize) -> Result<Self> {
        if !(1..=self.k).contains(&j) {
            return Err(Error::InvalidArgument(format!(
                "derivative index {j} outside 1..={}",
                self.k
            )));
        }
        let mut out = Self::zero(self.k, self.n.saturating_sub(j as u64));
        for (alpha, c) in &self.terms {
            let e = alpha.0[j - 1];
            if e == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta.0[j - 1] -= 1;
            out.add_term(beta, c * BigInt::from(e));
        }
        Ok(out)
    }

    /// Sets `t_j = 0` for `j > level`, landing at grading level `level`.
    pub fn project(&self, level: usize) -> Self {
        let mut out = Self::zero(level, self.n);
        for (alpha, c) in &self.terms {
            if alpha.0.iter().skip(level).any(|&e| e != 0) {
                continue;
            }
            let mut beta = alpha.0.clone();
            beta.resize(level, 0);
            out.add_term(ExponentVector(beta), c.clone());
        }
        out
    }

    /// JSON form with coefficients as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolynomialJson::from(self)).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    coeff: String,
}

/// Wire form of an [`IsobaricPolynomial`].
#[derive(Serialize, Deserialize)]
pub struct PolynomialJson {
    k: usize,
    n: u64,
    terms: Vec<TermJson>,
}

impl From<&IsobaricPolynomial> for PolynomialJson {
    fn from(p: &IsobaricPolynomial) -> Self {
        Self {
            k: p.k,
            n: p.n,
            terms: p
                .sorted_terms()
                .into_iter()
                .map(|(a, c)| TermJson {
                    alpha: a.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for IsobaricPolynomial {
    type Error = Error;
    fn try_from(j: PolynomialJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((ExponentVector(t.alpha), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.k, j.n, terms)
    }
}

impl Serialize for IsobaricPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IsobaricPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Self::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for IsobaricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (alpha, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = alpha
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("t{}", j + 1)
                    } else {
                        format!("t{}^{}", j + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All `alpha` with `sum j * alpha_j = n`, in descending lexicographic order.
pub fn enumerate_exponent_vectors(n: u64, k: usize) -> Vec<ExponentVector> {
    assert!(k >= 1, "grading level must be positive");
    fn go(j: usize, k: usize, remaining: u64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        let w = j as u64 + 1;
        if j + 1 == k {
            if remaining.is_multiple_of(w) {
                cur.push((remaining / w) as u32);
                out.push(ExponentVector(cur.clone()));
                cur.pop();
            }
            return;
        }
        for a in (0..=remaining / w).rev() {
            cur.push(a as u32);
            go(j + 1, k, remaining - a * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Generalized Fibonacci polynomial `F_{k,n}`: coefficient of `t^alpha` is
/// the multinomial `|alpha|! / prod alpha_j!`.
pub fn gfp(k: usize, n: u64) -> IsobaricPolynomial {
    let mut p = IsobaricPolynomial::zero(k, n);
    for alpha in enumerate_exponent_vectors(n, k) {
        let c = alpha.multinomial();
        p.add_term(alpha, c);
    }
    p
}

/// Generalized Lucas polynomial `G_{k,n}`: coefficient `(n/|alpha|)` times
/// the multinomial. `G_{k,0}` is the constant `k` (trace of the identity).
pub fn glp(k: usize, n: u64) -> IsobaricPolynomial {
    if n == 0 {
        return IsobaricPolynomial::constant(k, k as u64);
    }
    let mut p = IsobaricPolynomial::zero(k, n);
    for alpha in enumerate_exponent_vectors(n, k) {
        let scaled = alpha.multinomial() * BigInt::from(n);
        let (c, r) = scaled.div_rem(&BigInt::from(alpha.length()));
        assert!(r.is_zero(), "non-integral Lucas coefficient at {:?}", alpha.0);
        p.add_term(alpha, c);
    }
    p
}

/// Weighted isobaric polynomial `P_{omega,k,n}`: coefficient is the
/// multinomial times `sum alpha_j omega_j / |alpha|`. Only the first `k`
/// weights are used; `P_{omega,k,0} = 1`.
pub fn wip(omega: &WeightVector, k: usize, n: u64) -> Result<IsobaricPolynomial> {
    if omega.0.len() < k {
        return Err(Error::InvalidArgument(format!(
            "weight vector has {} entries, need at least {k}",
            omega.0.len()
        )));
    }
    if n == 0 {
        return Ok(IsobaricPolynomial::constant(k, 1));
    }
    let mut p = IsobaricPolynomial::zero(k, n);
    for alpha in enumerate_exponent_vectors(n, k) {
        let weight: BigInt = alpha
            .0
            .iter()
            .zip(&omega.0)
            .map(|(&a, &w)| BigInt::from(a) * BigInt::from(w))
            .sum();
        let (c, r) = (alpha.multinomial() * weight).div_rem(&BigInt::from(alpha.length()));
        assert!(r.is_zero(), "non-integral weighted coefficient at {:?}", alpha.0);
        p.add_term(alpha, c);
    }
    Ok(p)
}

/// Jacobi-Trudi determinant `det(h_{s_i - i + j})` with `h_m = F_{k,m}`,
/// `h_0 = 1` and `h_m = 0` for `m < 0`.
///
/// `seq` may be any integer sequence, not only a partition; for the
/// generalized hooks `(n, 1^b)` with `n >= 1 - k` this gives the (signed)
/// entries of powers of the companion matrix.
pub fn jacobi_trudi(seq: &[i64], k: usize) -> IsobaricPolynomial {
    let len = seq.len();
    let total: i64 = seq.iter().sum();
    let degree = total.max(0) as u64;
    if len == 0 {
        return IsobaricPolynomial::constant(k, 1);
    }
    assert!(len <= 20, "Jacobi-Trudi matrix too large");
    let mut cache: HashMap<i64, IsobaricPolynomial> = HashMap::new();
    let mut h = |m: i64| -> Option<IsobaricPolynomial> {
        if m < 0 {
            return None;
        }
        Some(cache.entry(m).or_insert_with(|| gfp(k, m as u64)).clone())
    };
    let entries: Vec<Vec<Option<IsobaricPolynomial>>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| h(seq[i] - i as i64 + j as i64))
                .collect()
        })
        .collect();

    // Laplace expansion along rows, memoized on the set of used columns.
    let mut memo: HashMap<u32, IsobaricPolynomial> = HashMap::new();
    fn expand(
        row: usize,
        used: u32,
        entries: &[Vec<Option<IsobaricPolynomial>>],
        k: usize,
        memo: &mut HashMap<u32, IsobaricPolynomial>,
    ) -> Option<IsobaricPolynomial> {
        let len = entries.len();
        if row == len {
            return Some(IsobaricPolynomial::constant(k, 1));
        }
        if let Some(v) = memo.get(&used) {
            return if v.is_zero() { None } else { Some(v.clone()) };
        }
        let mut acc: Option<IsobaricPolynomial> = None;
        let mut free_before = 0;
        for col in 0..len {
            if used & (1 << col) != 0 {
                continue;
            }
            let sign_negative = free_before % 2 == 1;
            free_before += 1;
            let Some(entry) = &entries[row][col] else {
                continue;
            };
            if entry.is_zero() {
                continue;
            }
            let Some(minor) = expand(row + 1, used | (1 << col), entries, k, memo) else {
                continue;
            };
            let mut term = entry.mul(&minor);
            if sign_negative {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        let result = acc.filter(|p| !p.is_zero());
        memo.insert(
            used,
            result
                .clone()
                .unwrap_or_else(|| IsobaricPolynomial::zero(k, 0)),
        );
        result
    }
    match expand(0, 0, &entries, k, &mut memo) {
        Some(p) => {
            debug_assert_eq!(p.degree(), degree);
            p
        }
        None => IsobaricPolynomial::zero(k, degree),
    }
}

/// Isobaric reflect of the Schur polynomial `S_shape` at grading level `k`.
pub fn schur_via_jacobi_trudi(shape: &PartitionShape, k: usize) -> IsobaricPolynomial {
    let seq: Vec<i64> = shape.parts().iter().map(|&p| p as i64).collect();
    jacobi_trudi(&seq, k)
}

/// Signed hook value `(-1)^leg S_{(arm, 1^leg)}`, for `arm` possibly
/// non-positive (generalized Jacobi-Trudi).
pub fn signed_hook(arm: i64, leg: usize, k: usize) -> IsobaricPolynomial {
    let mut seq = vec![arm];
    seq.extend(std::iter::repeat_n(1, leg));
    let s = jacobi_trudi(&seq, k);
    if leg % 2 == 1 {
        s.neg()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    /// Number of partitions of n, by the standard dynamic program.
    fn partition_count(n: usize) -> usize {
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                ways[m] += ways[m - part];
            }
        }
        ways[n]
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_exponent_vectors(0, 3), vec![ev(&[0, 0, 0])]);
        assert_eq!(
            enumerate_exponent_vectors(3, 2),
            vec![ev(&[3, 0]), ev(&[1, 1])]
        );
        assert_eq!(enumerate_exponent_vectors(4, 4).len(), 5);
        for n in 0..15 {
            assert_eq!(enumerate_exponent_vectors(n, n.max(1) as usize).len(), partition_count(n as usize));
        }
    }

    #[test]
    fn gfp_low_degrees_print() {
        assert_eq!(gfp(4, 0).to_string(), "1");
        assert_eq!(gfp(4, 1).to_string(), "t1");
        assert_eq!(gfp(4, 2).to_string(), "t1^2 + t2");
        assert_eq!(gfp(4, 3).to_string(), "t1^3 + 2*t1*t2 + t3");
        assert_eq!(
            gfp(4, 4).to_string(),
            "t1^4 + 3*t1^2*t2 + t2^2 + 2*t1*t3 + t4"
        );
    }

    #[test]
    fn glp_examples() {
        assert_eq!(glp(2, 2).to_string(), "t1^2 + 2*t2");
        assert_eq!(glp(5, 1).to_string(), "t1");
        let lucas: Vec<BigInt> = (1..=6).map(|n| glp(2, n).evaluate(&[1, 1])).collect();
        assert_eq!(lucas, [1, 3, 4, 7, 11, 18].map(BigInt::from));
        assert_eq!(glp(3, 0), IsobaricPolynomial::constant(3, 3));
    }

    #[test]
    fn glp_3_4_at_ones() {
        // trace of A^4 for the tribonacci core: diagonal 1 + 3 + 7
        assert_eq!(glp(3, 4).evaluate(&[1, 1, 1]), BigInt::from(11));
    }

    #[test]
    fn wip_special_weights() {
        assert_eq!(wip(&WeightVector::fibonacci(5), 3, 3).unwrap(), gfp(3, 3));
        assert_eq!(wip(&WeightVector::lucas(2), 2, 2).unwrap(), glp(2, 2));
        assert_eq!(
            wip(&WeightVector(vec![7, -3]), 2, 0).unwrap(),
            IsobaricPolynomial::constant(2, 1)
        );
        assert!(wip(&WeightVector(vec![1]), 2, 2).is_err());
    }

    #[test]
    fn fibonacci_values() {
        let f: Vec<BigInt> = (0..6).map(|n| gfp(2, n).evaluate(&[1, 1])).collect();
        assert_eq!(f, [1, 1, 2, 3, 5, 8].map(BigInt::from));
        assert_eq!(gfp(3, 5).evaluate(&[0, 0, 0]), BigInt::zero());
    }

    #[test]
    fn partial_examples() {
        let p = gfp(2, 2);
        assert_eq!(p.formal_partial(2).unwrap(), IsobaricPolynomial::constant(2, 1));
        let d = gfp(3, 3).formal_partial(1).unwrap();
        assert_eq!(d.to_string(), "3*t1^2 + 2*t2");
        assert!(p.formal_partial(3).is_err());
    }

    #[test]
    fn jacobi_trudi_small_shapes() {
        let s11 = schur_via_jacobi_trudi(&PartitionShape::new(vec![1, 1]).unwrap(), 2);
        assert_eq!(s11.to_string(), "-t2");
        let s3 = schur_via_jacobi_trudi(&PartitionShape::new(vec![3]).unwrap(), 3);
        assert_eq!(s3, gfp(3, 3));
        let s21 = schur_via_jacobi_trudi(&PartitionShape::new(vec![2, 1]).unwrap(), 3);
        assert_eq!(s21.to_string(), "-t1*t2 - t3");
        assert_eq!(s21.evaluate(&[1, 1, 1]), BigInt::from(-2));
    }

    #[test]
    fn jacobi_trudi_elementary_columns() {
        // S_(1^j) = e_j = (-1)^{j+1} t_j
        for j in 1..=4usize {
            let s = jacobi_trudi(&vec![1; j], 4);
            let tj = IsobaricPolynomial::variable(4, j);
            let expected = if j % 2 == 1 { tj } else { tj.neg() };
            assert_eq!(s, expected, "j = {j}");
        }
    }

    #[test]
    fn shape_validation() {
        assert!(PartitionShape::new(vec![]).is_err());
        assert!(PartitionShape::new(vec![1, 2]).is_err());
        assert!(PartitionShape::new(vec![2, 0]).is_err());
        assert_eq!(PartitionShape::hook(3, 2).unwrap().parts(), &[3, 1, 1]);
    }

    #[test]
    fn json_round_trip() {
        let p = glp(3, 5);
        let s = serde_json::to_string(&p).unwrap();
        let back: IsobaricPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let v = gfp(2, 2).to_json();
        assert_eq!(v["terms"][0]["coeff"], "1");
        assert_eq!(v["terms"][0]["alpha"], serde_json::json!([2, 0]));
    }

    #[test]
    fn large_coefficients_do_not_overflow() {
        let p = gfp(4, 60);
        assert!(p.coefficient(&[60, 0, 0, 0]).is_one());
        let big = p.evaluate(&[3, 3, 3, 3]);
        assert!(big.bits() > 64);
    }
}
