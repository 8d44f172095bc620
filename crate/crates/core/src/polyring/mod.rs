//! Sparse Laurent polynomials in `x_1, ..., x_r` and `t`, where `t` stands
//! for `sqrt(q)`.
//!
//! Coefficients are `i128`. Every arithmetic step is checked and an overflow
//! panics rather than wrapping, so a result is either exact or absent.

mod format;
mod tpoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rootsys::{NodeSet, RootSystem, MAX_RANK};

pub use format::{parse_pretty, JsonTerm, PrettyStyle};
pub use tpoly::TPoly;

/// Exponent vector of a monomial `t^t x^x`. Unused trailing slots are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub x: [i16; MAX_RANK],
    pub t: i32,
}

impl TermKey {
    pub fn new(xexp: &[i64], texp: i32) -> Self {
        let mut x = [0i16; MAX_RANK];
        for (slot, &e) in x.iter_mut().zip(xexp) {
            *slot = i16::try_from(e).expect("exponent fits in i16");
        }
        TermKey { x, t: texp }
    }

    pub fn one() -> Self {
        TermKey::default()
    }

    pub fn xexp(&self, rank: usize) -> Vec<i64> {
        self.x[..rank].iter().map(|&e| e as i64).collect()
    }

    pub fn degree(&self) -> i64 {
        self.x.iter().map(|&e| e as i64).sum()
    }

    #[inline]
    pub fn shift(&self, by: &TermKey) -> TermKey {
        let mut x = self.x;
        for (a, b) in x.iter_mut().zip(by.x) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        TermKey {
            x,
            t: self.t.checked_add(by.t).expect("exponent overflow"),
        }
    }

    pub fn inverse(&self) -> TermKey {
        let mut x = self.x;
        for a in x.iter_mut() {
            *a = -*a;
        }
        TermKey { x, t: -self.t }
    }

    pub fn scaled(&self, j: i64) -> TermKey {
        let mut x = self.x;
        for a in x.iter_mut() {
            *a = i16::try_from(*a as i64 * j).expect("exponent overflow");
        }
        TermKey {
            x,
            t: i32::try_from(self.t as i64 * j).expect("exponent overflow"),
        }
    }
}

#[inline]
pub(crate) fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("coefficient overflow")
}

#[inline]
pub(crate) fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// The factor `1 - sign * t^t * x^x`, with `x >= 0` and `x != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    key: TermKey,
    negated: bool,
}

impl Binomial {
    /// `1 - t^texp x^xvec`.
    pub fn new(texp: i32, xvec: &[i64]) -> Result<Self> {
        Binomial::signed(1, texp, xvec)
    }

    /// `1 - sign * t^texp x^xvec` with `sign = +-1`.
    pub fn signed(sign: i8, texp: i32, xvec: &[i64]) -> Result<Self> {
        if xvec.iter().any(|&e| e < 0) || xvec.iter().all(|&e| e == 0) {
            return Err(Error::InvalidArgument(format!(
                "binomial exponent {xvec:?} must be nonnegative and nonzero"
            )));
        }
        Ok(Binomial::from_key(sign, TermKey::new(xvec, texp)))
    }

    pub(crate) fn from_key(sign: i8, key: TermKey) -> Self {
        debug_assert!(key.x.iter().all(|&e| e >= 0) && key.x.iter().any(|&e| e > 0));
        Binomial {
            key,
            negated: sign < 0,
        }
    }

    pub fn key(&self) -> TermKey {
        self.key
    }

    pub fn texp(&self) -> i32 {
        self.key.t
    }

    pub fn xvec(&self, rank: usize) -> Vec<i64> {
        self.key.xexp(rank)
    }

    /// `+1` for `1 - m`, `-1` for `1 + m`.
    pub fn sign(&self) -> i8 {
        if self.negated {
            -1
        } else {
            1
        }
    }

    /// The same factor with the sign of the monomial flipped.
    pub fn conjugate(&self) -> Binomial {
        Binomial {
            key: self.key,
            negated: !self.negated,
        }
    }

    pub fn to_poly(&self, rank: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            rank,
            [(TermKey::one(), 1), (self.key, -(self.sign() as i128))],
        )
    }
}

/// A monomial substitution `x_j -> sign_j t^{e_j} x^{v_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSub {
    images: Vec<(i8, TermKey)>,
}

impl MonomialSub {
    pub fn identity(rank: usize) -> Self {
        MonomialSub {
            images: (0..rank)
                .map(|j| {
                    let mut k = TermKey::one();
                    k.x[j] = 1;
                    (1, k)
                })
                .collect(),
        }
    }

    pub fn new(images: Vec<(i8, TermKey)>) -> Self {
        MonomialSub { images }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, j: usize) -> (i8, TermKey) {
        self.images[j]
    }

    /// `x_i -> 1/(q x_i)`, `x_j -> sqrt(q) x_i x_j` for `j ~ i`, other variables fixed.
    pub fn sigma(rs: &RootSystem, i: usize) -> Self {
        let mut sub = MonomialSub::identity(rs.rank());
        sub.images[i].1.x[i] = -1;
        sub.images[i].1.t = -2;
        for j in rs.neighbors(i).iter() {
            sub.images[j].1.x[i] = 1;
            sub.images[j].1.t = 1;
        }
        sub
    }

    /// `x_j -> -x_j` for `j ~ i`.
    pub fn epsilon(rs: &RootSystem, i: usize) -> Self {
        let mut sub = MonomialSub::identity(rs.rank());
        for j in rs.neighbors(i).iter() {
            sub.images[j].0 = -1;
        }
        sub
    }

    /// Image of the monomial `t^k x^v` as `(sign, key)`.
    pub fn apply_key(&self, key: &TermKey) -> (i8, TermKey) {
        let mut out = TermKey {
            x: [0; MAX_RANK],
            t: key.t,
        };
        let mut negative = false;
        for (j, &(sign, img)) in self.images.iter().enumerate() {
            let e = key.x[j] as i32;
            if e == 0 {
                continue;
            }
            if sign < 0 && e % 2 != 0 {
                negative = !negative;
            }
            out.t += img.t * e;
            for (o, &v) in out.x.iter_mut().zip(&img.x) {
                *o = i16::try_from(*o as i32 + v as i32 * e).expect("exponent overflow");
            }
        }
        (if negative { -1 } else { 1 }, out)
    }
}

/// Sparse Laurent polynomial with terms sorted by [`TermKey`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: Vec<(TermKey, i128)>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.rank, self.pretty(PrettyStyle::Colex))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty(PrettyStyle::Colex))
    }
}

fn combine_sorted(mut terms: Vec<(TermKey, i128)>) -> Vec<(TermKey, i128)> {
    terms.sort_unstable_by_key(|a| a.0);
    let mut out: Vec<(TermKey, i128)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = cadd(last.1, c),
            _ => {
                if out.last().is_some_and(|l| l.1 == 0) {
                    out.pop();
                }
                out.push((k, c));
            }
        }
    }
    if out.last().is_some_and(|l| l.1 == 0) {
        out.pop();
    }
    out
}

fn merge_with(
    a: &[(TermKey, i128)],
    b: impl Iterator<Item = (TermKey, i128)>,
) -> Vec<(TermKey, i128)> {
    let mut out = Vec::with_capacity(a.len() + b.size_hint().0);
    let mut ia = a.iter().copied().peekable();
    let mut ib = b.peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                Ordering::Less => {
                    out.push(*x);
                    ia.next();
                }
                Ordering::Greater => {
                    out.push(*y);
                    ib.next();
                }
                Ordering::Equal => {
                    let c = cadd(x.1, y.1);
                    if c != 0 {
                        out.push((x.0, c));
                    }
                    ia.next();
                    ib.next();
                }
            },
            (Some(x), None) => {
                out.push(*x);
                ia.next();
            }
            (None, Some(y)) => {
                out.push(*y);
                ib.next();
            }
            (None, None) => return out,
        }
    }
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: Vec::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly::monomial(rank, TermKey::one(), 1)
    }

    pub fn monomial(rank: usize, key: TermKey, c: i128) -> Self {
        let terms = if c == 0 { vec![] } else { vec![(key, c)] };
        LaurentPoly { rank, terms }
    }

    /// `x_i` (0-based).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut k = TermKey::one();
        k.x[i] = 1;
        LaurentPoly::monomial(rank, k, 1)
    }

    /// Builds a polynomial from possibly repeated, unsorted terms.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (TermKey, i128)>) -> Self {
        LaurentPoly {
            rank,
            terms: combine_sorted(terms.into_iter().collect()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(TermKey, i128)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(TermKey::one(), 1)]
    }

    pub fn coeff(&self, key: &TermKey) -> i128 {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(key))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(TermKey, i128)> {
        match self.terms.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        Ok(LaurentPoly {
            rank: self.rank,
            terms: merge_with(&self.terms, other.terms.iter().copied()),
        })
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        Ok(LaurentPoly {
            rank: self.rank,
            terms: merge_with(&self.terms, other.terms.iter().map(|&(k, c)| (k, -c))),
        })
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_zero() {
            return Ok(LaurentPoly::zero(self.rank));
        }
        if small.len() <= 4 {
            // Shifting preserves the term order, so small factors are merged in.
            let mut acc = LaurentPoly::zero(self.rank);
            for &(k, c) in &small.terms {
                acc = LaurentPoly {
                    rank: self.rank,
                    terms: merge_with(
                        &acc.terms,
                        large.terms.iter().map(|&(k2, c2)| (k2.shift(&k), cmul(c, c2))),
                    ),
                };
            }
            return Ok(acc);
        }
        let mut prods = Vec::with_capacity(small.len() * large.len());
        for &(k1, c1) in &small.terms {
            for &(k2, c2) in &large.terms {
                prods.push((k1.shift(&k2), cmul(c1, c2)));
            }
        }
        Ok(LaurentPoly {
            rank: self.rank,
            terms: combine_sorted(prods),
        })
    }

    pub fn scale(&self, c: i128) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|&(k, a)| (k, cmul(a, c))).collect(),
        }
    }

    /// Multiplies by the unit `c * t^{key.t} x^{key.x}`.
    pub fn scale_monomial(&self, key: &TermKey, c: i128) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|&(k, a)| (k.shift(key), cmul(a, c)))
                .collect(),
        }
    }

    /// Multiplies by `1 - sign * t^k x^v`.
    pub fn mul_binomial(&self, b: &Binomial) -> LaurentPoly {
        let s = -(b.sign() as i128);
        LaurentPoly {
            rank: self.rank,
            terms: merge_with(
                &self.terms,
                self.terms.iter().map(|&(k, c)| (k.shift(&b.key), cmul(c, s))),
            ),
        }
    }

    /// Exact quotient by `1 - sign * t^k x^v`.
    ///
    /// Terms are grouped into lines along the direction `(v, k)`. Along each
    /// line the quotient follows the recurrence `q_j = a_j + sign * q_{j-1}`,
    /// and divisibility means the recurrence closes with zero past the last
    /// term. Any line that fails to close yields `NotDivisible`.
    pub fn divide_exact_binomial(&self, b: &Binomial) -> Result<LaurentPoly> {
        let dir = b.key;
        let s = (0..MAX_RANK)
            .find(|&i| dir.x[i] > 0)
            .expect("binomial direction is nonzero");
        let step = dir.x[s] as i64;
        let mut lines: Vec<(TermKey, i64, i128)> = self
            .terms
            .iter()
            .map(|&(k, c)| {
                let j = (k.x[s] as i64).div_euclid(step);
                (k.shift(&dir.scaled(-j)), j, c)
            })
            .collect();
        lines.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

        let sign = b.sign() as i128;
        let mut out = Vec::with_capacity(self.len());
        let mut idx = 0;
        while idx < lines.len() {
            let base = lines[idx].0;
            let mut end = idx;
            while end < lines.len() && lines[end].0 == base {
                end += 1;
            }
            let mut q: i128 = 0;
            let mut j = lines[idx].1;
            let mut p = idx;
            loop {
                let a = if p < end && lines[p].1 == j {
                    p += 1;
                    lines[p - 1].2
                } else {
                    0
                };
                q = cadd(a, cmul(sign, q));
                if p == end {
                    break;
                }
                if q != 0 {
                    out.push((base.shift(&dir.scaled(j)), q));
                    j += 1;
                } else {
                    // Jump across the gap; the recurrence stays at zero.
                    j = lines[p].1;
                }
            }
            if q != 0 {
                return Err(Error::NotDivisible(format!(
                    "remainder along the line through {:?} when dividing by {}",
                    base.xexp(self.rank),
                    b.to_poly(self.rank)
                )));
            }
            idx = end;
        }
        Ok(LaurentPoly::from_terms(self.rank, out))
    }

    /// Exact quotient by the monomial `c t^k x^v`.
    pub fn divide_exact_monomial(&self, key: &TermKey, c: i128) -> Result<LaurentPoly> {
        let inv = key.inverse();
        let mut terms = Vec::with_capacity(self.len());
        for &(k, a) in &self.terms {
            if a % c != 0 {
                return Err(Error::NotDivisible(format!("coefficient {a} by {c}")));
            }
            terms.push((k.shift(&inv), a / c));
        }
        Ok(LaurentPoly {
            rank: self.rank,
            terms,
        })
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_scalar(&self, d: i128) -> Result<LaurentPoly> {
        self.divide_exact_monomial(&TermKey::one(), d)
    }

    pub fn substitute(&self, sub: &MonomialSub) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let (sign, key) = sub.apply_key(k);
                (key, if sign < 0 { -*c } else { *c })
            })
            .collect();
        LaurentPoly {
            rank: self.rank,
            terms: combine_sorted(terms),
        }
    }

    /// The image under `t -> -t`.
    pub fn negate_t(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|&(k, c)| (k, if k.t % 2 != 0 { -c } else { c }))
                .collect(),
        }
    }

    /// Sets the variables in `vars` to zero.
    pub fn partial_eval_zero(&self, vars: NodeSet) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        for &(k, c) in &self.terms {
            let mut killed = false;
            for v in vars.iter() {
                match k.x[v].cmp(&0) {
                    Ordering::Less => return Err(Error::PolarAtZero { var: v + 1 }),
                    Ordering::Greater => killed = true,
                    Ordering::Equal => {}
                }
            }
            if !killed {
                terms.push((k, c));
            }
        }
        Ok(LaurentPoly {
            rank: self.rank,
            terms,
        })
    }

    /// Formal partial derivative in `x_i`.
    pub fn derivative(&self, i: usize) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.x[i] != 0)
            .map(|&(k, c)| {
                let mut k2 = k;
                k2.x[i] -= 1;
                (k2, cmul(c, k.x[i] as i128))
            })
            .collect();
        LaurentPoly {
            rank: self.rank,
            terms: combine_sorted(terms),
        }
    }

    /// All `t`-exponents even and nonnegative, i.e. a polynomial in `q`.
    pub fn is_q_integral(&self) -> bool {
        self.terms.iter().all(|(k, _)| k.t >= 0 && k.t % 2 == 0)
    }

    /// All `x`-exponents nonnegative.
    pub fn is_polynomial_in_x(&self) -> bool {
        self.terms.iter().all(|(k, _)| k.x.iter().all(|&e| e >= 0))
    }

    /// Distinct `x`-exponent vectors, sorted.
    pub fn support(&self) -> Vec<Vec<i64>> {
        let mut s: Vec<Vec<i64>> = self.terms.iter().map(|(k, _)| k.xexp(self.rank)).collect();
        s.dedup();
        s
    }

    /// The coefficient of `x^xexp` as a polynomial in `t`.
    pub fn coeff_of_x(&self, xexp: &[i64]) -> TPoly {
        let lo = TermKey::new(xexp, i32::MIN);
        let start = self.terms.partition_point(|(k, _)| *k < lo);
        let mut out = TPoly::zero();
        for &(k, c) in &self.terms[start..] {
            if k.x != lo.x {
                break;
            }
            out.add_term(k.t, c);
        }
        out
    }

    /// Groups terms by `x`-exponent, in term order.
    pub fn by_x(&self) -> Vec<(Vec<i64>, TPoly)> {
        let mut out: Vec<(Vec<i64>, TPoly)> = Vec::new();
        for &(k, c) in &self.terms {
            let x = k.xexp(self.rank);
            match out.last_mut() {
                Some((lx, tp)) if *lx == x => tp.add_term(k.t, c),
                _ => {
                    let mut tp = TPoly::zero();
                    tp.add_term(k.t, c);
                    out.push((x, tp));
                }
            }
        }
        out
    }

    /// Builds a polynomial from `x`-exponents and `t`-coefficients.
    pub fn from_x_coeffs<'a>(
        rank: usize,
        items: impl IntoIterator<Item = (&'a [i64], &'a TPoly)>,
    ) -> LaurentPoly {
        let mut terms = Vec::new();
        for (x, tp) in items {
            for (t, c) in tp.terms() {
                terms.push((TermKey::new(x, t), c));
            }
        }
        LaurentPoly::from_terms(rank, terms)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> u128 {
        self.terms.iter().map(|(_, c)| c.unsigned_abs()).max().unwrap_or(0)
    }

    /// Product of binomials, expanded.
    pub fn product_of(rank: usize, factors: &[Binomial]) -> LaurentPoly {
        factors
            .iter()
            .fold(LaurentPoly::one(rank), |acc, b| acc.mul_binomial(b))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("rank mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

/// Shorthand used in tests and fixtures: `poly(rank, &[(xexp, texp, c), ...])`.
pub fn poly(rank: usize, terms: &[(&[i64], i32, i128)]) -> LaurentPoly {
    LaurentPoly::from_terms(
        rank,
        terms.iter().map(|&(x, t, c)| (TermKey::new(x, t), c)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn x() -> LaurentPoly {
        LaurentPoly::var(2, 0)
    }

    fn y() -> LaurentPoly {
        LaurentPoly::var(2, 1)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one(2)
    }

    #[test]
    fn ring_examples() {
        let a = &one() + &x();
        let b = &one() - &x();
        assert_eq!(&a * &b, poly(2, &[(&[0, 0], 0, 1), (&[2, 0], 0, -1)]));
        let c = &(&one() + &x()) + &y();
        assert_eq!(&c * &one(), c);
        let f = poly(2, &[(&[0, 0], 0, 1), (&[2, 0], 2, -1)]);
        let g = poly(2, &[(&[0, 0], 0, 1), (&[0, 2], 2, -1)]);
        let expected = poly(
            2,
            &[
                (&[0, 0], 0, 1),
                (&[2, 0], 2, -1),
                (&[0, 2], 2, -1),
                (&[2, 2], 4, 1),
            ],
        );
        assert_eq!(&f * &g, expected);
        assert!((&x() - &x()).is_zero());
    }

    #[test]
    fn rank_mismatch() {
        let a = LaurentPoly::one(2);
        let b = LaurentPoly::one(3);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn sigma_and_epsilon_substitutions() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let s1 = MonomialSub::sigma(&rs, 0);
        assert_eq!(x().substitute(&s1), poly(2, &[(&[-1, 0], -2, 1)]));
        assert_eq!(y().substitute(&s1), poly(2, &[(&[1, 1], 1, 1)]));
        let e1 = MonomialSub::epsilon(&rs, 0);
        assert_eq!((&x() + &y()).substitute(&e1), &x() - &y());
    }

    #[test]
    fn sigma_squared_is_identity() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        let f = poly(
            3,
            &[(&[1, 2, 0], 0, 3), (&[0, 1, 5], 1, -2), (&[-1, 0, 2], -3, 7)],
        );
        for i in 0..3 {
            let s = MonomialSub::sigma(&rs, i);
            assert_eq!(f.substitute(&s).substitute(&s), f);
        }
    }

    #[test]
    fn binomial_division_examples() {
        let b = Binomial::new(0, &[2]).unwrap();
        let a = poly(1, &[(&[0], 0, 1), (&[2], 0, -1)]);
        assert!(a.divide_exact_binomial(&b).unwrap().is_one());

        let qx2 = Binomial::new(2, &[1]).unwrap().to_poly(1);
        let bq = Binomial::new(2, &[2]).unwrap();
        let one_plus_x = poly(1, &[(&[0], 0, 1), (&[1], 0, 1)]);
        let prod = one_plus_x.mul_binomial(&bq);
        assert_eq!(prod.divide_exact_binomial(&bq).unwrap(), one_plus_x);

        // (1 - qx - qx^2 + q^2 x^3) / (1 - qx^2) = 1 - qx
        let a = poly(
            1,
            &[(&[0], 0, 1), (&[1], 2, -1), (&[2], 2, -1), (&[3], 4, 1)],
        );
        assert_eq!(a.divide_exact_binomial(&bq).unwrap(), qx2);
    }

    #[test]
    fn nondivisible_is_reported() {
        let a = poly(1, &[(&[0], 0, 1), (&[1], 0, 1)]);
        let b = Binomial::new(0, &[1]).unwrap();
        assert!(matches!(
            a.divide_exact_binomial(&b),
            Err(Error::NotDivisible(_))
        ));
        // 1 + x is divisible by the signed factor (1 + x).
        let b = Binomial::signed(-1, 0, &[1]).unwrap();
        assert!(a.divide_exact_binomial(&b).unwrap().is_one());
    }

    #[test]
    fn division_with_laurent_terms_and_gaps() {
        let b = Binomial::new(3, &[0, 2]).unwrap();
        let c = poly(2, &[(&[-1, -3], 1, 5), (&[0, 7], -2, -4), (&[2, 0], 0, 9)]);
        let a = c.mul_binomial(&b).mul_binomial(&b);
        assert_eq!(
            a.divide_exact_binomial(&b)
                .unwrap()
                .divide_exact_binomial(&b)
                .unwrap(),
            c
        );
    }

    #[test]
    fn support_and_partial_eval() {
        let f = poly(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, 1), (&[2, 1], 0, -1)]);
        assert_eq!(f.support(), vec![vec![0, 0], vec![1, 0], vec![2, 1]]);
        let g = poly(2, &[(&[0, 0], 0, 1), (&[1, 0], 0, 1), (&[0, 1], 0, 1), (&[2, 1], 0, -1)]);
        assert_eq!(
            g.partial_eval_zero(NodeSet::singleton(1)).unwrap(),
            &one() + &x()
        );
        let polar = poly(2, &[(&[0, -1], 0, 1)]);
        assert_eq!(
            polar.partial_eval_zero(NodeSet::singleton(1)),
            Err(Error::PolarAtZero { var: 2 })
        );
    }

    #[test]
    fn q_integrality() {
        assert!(poly(1, &[(&[0], 0, 1), (&[1], 2, 1)]).is_q_integral());
        assert!(!poly(1, &[(&[0], 0, 1), (&[1], 1, 1)]).is_q_integral());
    }

    #[test]
    fn coefficient_lookup() {
        let f = poly(2, &[(&[2, 1], 2, 1), (&[2, 1], 0, -1), (&[0, 0], 0, 1)]);
        let c = f.coeff_of_x(&[2, 1]);
        assert_eq!(c.to_string(), "q - 1");
        assert!(f.coeff_of_x(&[1, 1]).is_zero());
    }
}
