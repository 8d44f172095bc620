//! Rational functions with factored binomial denominators, and the
//! `l`-twisted action of the Weyl group on them.
//!
//! The action of a simple reflection is
//!
//! ```text
//! (f|s_i)(x) = -(1 - q x_i) / (q x_i (1 - x_i)) (x_i sqrt q)^{l_i} f+(s_i x)
//!              + 1/(x_i sqrt q) (x_i sqrt q)^{l_i} f-(s_i x)
//! ```
//!
//! where `f+-` are the parts of `f` that are even/odd under `x_j -> -x_j`
//! for the neighbours `j` of `i`, twisted by the parity of `l_i`.
//! Words act left to right: `f|(uv) = (f|u)|v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Binomial, JsonTerm, LaurentPoly, MonomialSub, TermKey};
use crate::rootsys::RootSystem;

/// `num / prod(den)`, with `den` kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: LaurentPoly,
    den: Vec<Binomial>,
}

fn multiset_union(a: &[Binomial], b: &[Binomial]) -> Vec<Binomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a \ b` as multisets.
fn multiset_minus(a: &[Binomial], b: &[Binomial]) -> Vec<Binomial> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

impl RationalFn {
    pub fn new(num: LaurentPoly, mut den: Vec<Binomial>) -> Self {
        den.sort();
        RationalFn { num, den }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFn { num, den: vec![] }
    }

    pub fn one(rank: usize) -> Self {
        RationalFn::from_poly(LaurentPoly::one(rank))
    }

    pub fn zero(rank: usize) -> Self {
        RationalFn::from_poly(LaurentPoly::zero(rank))
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[Binomial] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Expanded product of the denominator factors.
    pub fn den_poly(&self) -> LaurentPoly {
        LaurentPoly::product_of(self.rank(), &self.den)
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for b in std::mem::take(&mut self.den) {
            match self.num.divide_exact_binomial(&b) {
                Ok(q) => self.num = q,
                Err(_) => kept.push(b),
            }
        }
        self.den = kept;
        self
    }

    /// Numerator rewritten over the denominator `common`, which must contain `self.den`.
    fn num_over(&self, common: &[Binomial]) -> LaurentPoly {
        LaurentPoly::product_of(self.rank(), &multiset_minus(common, &self.den))
            .checked_mul(&self.num)
            .expect("equal ranks")
    }

    fn check_rank(&self, other: &RationalFn) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.scale(-1),
            den: self.den.clone(),
        }
    }

    pub fn scale_monomial(&self, key: &TermKey, c: i128) -> RationalFn {
        RationalFn {
            num: self.num.scale_monomial(key, c),
            den: self.den.clone(),
        }
    }

    /// Image under a monomial substitution. Denominator factors whose image
    /// has a nonpositive exponent are flipped, moving a monomial into the
    /// numerator.
    pub fn substitute(&self, sub: &MonomialSub) -> Result<RationalFn> {
        let mut num = self.num.substitute(sub);
        let mut den = Vec::with_capacity(self.den.len());
        for b in &self.den {
            let (s, img) = sub.apply_key(&b.key());
            let c = b.sign() * s;
            let nonneg = img.x.iter().all(|&e| e >= 0);
            let nonpos = img.x.iter().all(|&e| e <= 0);
            if img.x.iter().all(|&e| e == 0) || !(nonneg || nonpos) {
                return Err(Error::MixedSignDenominator(format!(
                    "1 - ({c}) t^{} x^{:?}",
                    img.t,
                    img.xexp(self.rank())
                )));
            }
            if nonneg {
                den.push(Binomial::from_key(c, img));
            } else {
                // 1/(1 - c m) = -c m^{-1} / (1 - c m^{-1})
                let inv = img.inverse();
                num = num.scale_monomial(&inv, -(c as i128));
                den.push(Binomial::from_key(c, inv));
            }
        }
        Ok(RationalFn::new(num, den))
    }

    /// Image under `t -> -t`.
    pub fn negate_t(&self) -> RationalFn {
        let den = self
            .den
            .iter()
            .map(|b| if b.texp() % 2 != 0 { b.conjugate() } else { *b })
            .collect();
        RationalFn::new(self.num.negate_t(), den)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Factor {
            x: Vec<i64>,
            t: i32,
            sign: i8,
        }
        #[derive(Serialize)]
        struct Repr {
            num: Vec<JsonTerm>,
            den: Vec<Factor>,
        }
        let repr = Repr {
            num: self.num.to_json_terms(),
            den: self
                .den
                .iter()
                .map(|b| Factor {
                    x: b.xvec(self.rank()),
                    t: b.texp(),
                    sign: b.sign(),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("serializable")
    }
}

/// Sum over a common denominator (the multiset union of the two denominators).
pub fn rf_add(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    a.check_rank(b)?;
    let common = multiset_union(&a.den, &b.den);
    let num = a.num_over(&common).checked_add(&b.num_over(&common))?;
    Ok(RationalFn { num, den: common }.normalize())
}

pub fn rf_sub(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    rf_add(a, &b.neg())
}

pub fn rf_mul(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    a.check_rank(b)?;
    let num = a.num.checked_mul(&b.num)?;
    let mut den = a.den.clone();
    den.extend_from_slice(&b.den);
    Ok(RationalFn::new(num, den).normalize())
}

/// Multiplication by a prefactor; the same as [`rf_mul`].
pub fn rf_mul_prefactor(a: &RationalFn, p: &RationalFn) -> Result<RationalFn> {
    rf_mul(a, p)
}

/// Equality by cross-multiplication after removing shared denominator factors.
pub fn rf_equal(a: &RationalFn, b: &RationalFn) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let lhs = a.num.checked_mul(&LaurentPoly::product_of(
        a.rank(),
        &multiset_minus(&b.den, &a.den),
    ));
    let rhs = b.num.checked_mul(&LaurentPoly::product_of(
        b.rank(),
        &multiset_minus(&a.den, &b.den),
    ));
    lhs == rhs
}

/// Regular at the origin as a function of `x` (with `t` a parameter).
///
/// Every denominator factor is `1 - c x^v` with `v >= 0`, `v != 0`, hence a
/// unit in the power-series ring; so regularity is exactly the absence of
/// negative exponents in the numerator.
pub fn rf_regular_at_origin(a: &RationalFn) -> bool {
    a.num.is_polynomial_in_x()
}

/// Invariant under `t -> -t`, i.e. a rational function of `q = t^2`.
pub fn is_q_rational(a: &RationalFn) -> bool {
    rf_equal(a, &a.negate_t())
}

/// The `l`-twisted action of `W` on rational functions.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    rs: RootSystem,
    ell: Vec<u32>,
    sigma: Vec<MonomialSub>,
    epsilon: Vec<MonomialSub>,
}

impl TwistedAction {
    pub fn new(rs: &RootSystem, ell: &[u32]) -> Result<Self> {
        if ell.len() != rs.rank() {
            return Err(Error::TwistLength {
                got: ell.len(),
                expected: rs.rank(),
            });
        }
        Ok(TwistedAction {
            rs: rs.clone(),
            ell: ell.to_vec(),
            sigma: (0..rs.rank()).map(|i| MonomialSub::sigma(rs, i)).collect(),
            epsilon: (0..rs.rank()).map(|i| MonomialSub::epsilon(rs, i)).collect(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn ell(&self) -> &[u32] {
        &self.ell
    }

    pub fn sigma_sub(&self, i: usize) -> &MonomialSub {
        &self.sigma[i]
    }

    pub fn epsilon_sub(&self, i: usize) -> &MonomialSub {
        &self.epsilon[i]
    }

    /// `(f+, f-)` for node `i`: `f+- = (f(x) +- (-1)^{l_i} f(eps_i x)) / 2`.
    pub fn even_odd_parts(&self, f: &RationalFn, i: usize) -> Result<(RationalFn, RationalFn)> {
        let fe = f.substitute(&self.epsilon[i])?;
        let common = multiset_union(&f.den, &fe.den);
        let a = f.num_over(&common);
        let mut b = fe.num_over(&common);
        if self.ell[i] % 2 == 1 {
            b = b.scale(-1);
        }
        let halve = |p: LaurentPoly| p.div_scalar(2).map_err(|_| Error::OddIntegerCoefficient);
        let plus = halve(&a + &b)?;
        let minus = halve(&a - &b)?;
        Ok((
            RationalFn::new(plus, common.clone()).normalize(),
            RationalFn::new(minus, common).normalize(),
        ))
    }

    /// `f |_l sigma_i`.
    pub fn act_simple(&self, f: &RationalFn, i: usize) -> Result<RationalFn> {
        let r = self.rs.rank();
        let l = self.ell[i] as i32;
        let (plus, minus) = self.even_odd_parts(f, i)?;
        let gp = plus.substitute(&self.sigma[i])?;
        let gm = minus.substitute(&self.sigma[i])?;

        let mut xi = vec![0i64; r];
        xi[i] = 1;
        let mut mono = TermKey::new(&xi, 0);
        mono.x[i] = (l - 1) as i16;
        // -(1 - t^2 x_i) t^{l-2} x_i^{l-1} / (1 - x_i)
        let mut pre_plus_key = mono;
        pre_plus_key.t = l - 2;
        let mut step = TermKey::one();
        step.x[i] = 1;
        step.t = 2;
        let pre_plus = RationalFn::new(
            LaurentPoly::from_terms(r, [(pre_plus_key, -1), (pre_plus_key.shift(&step), 1)]),
            vec![Binomial::from_key(1, TermKey::new(&xi, 0))],
        );
        // t^{l-1} x_i^{l-1}
        let mut pre_minus_key = mono;
        pre_minus_key.t = l - 1;

        let first = rf_mul(&pre_plus, &gp)?;
        let second = gm.scale_monomial(&pre_minus_key, 1);
        rf_add(&first, &second)
    }

    /// Acts by the word `w = s_{w[0]} s_{w[1]} ...`, left to right.
    pub fn act_word(&self, f: &RationalFn, word: &[u8]) -> Result<RationalFn> {
        let mut cur = f.clone();
        for &i in word {
            cur = self.act_simple(&cur, i as usize)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly;
    use crate::rootsys::Family;

    fn a(rank: usize) -> RootSystem {
        RootSystem::new(Family::A, rank).unwrap()
    }

    fn b(t: i32, x: &[i64]) -> Binomial {
        Binomial::new(t, x).unwrap()
    }

    #[test]
    fn field_examples() {
        let one_minus_x = b(0, &[1]);
        let f = RationalFn::new(LaurentPoly::one(1), vec![one_minus_x]);
        let g = RationalFn::new(poly(1, &[(&[1], 0, -1)]), vec![one_minus_x]);
        let s = rf_add(&f, &g).unwrap();
        assert!(s.num().is_one() && s.den().is_empty());
        assert_eq!(rf_add(&f, &RationalFn::zero(1)).unwrap(), f);

        let p = RationalFn::from_poly(poly(1, &[(&[0], 0, 1), (&[2], 0, -1)]));
        let prod = rf_mul(&f, &p).unwrap();
        assert_eq!(prod.num(), &poly(1, &[(&[0], 0, 1), (&[1], 0, 1)]));
        assert!(prod.den().is_empty());
    }

    #[test]
    fn equality_and_regularity() {
        let f = RationalFn::new(LaurentPoly::one(1), vec![b(0, &[1])]);
        let g = RationalFn::new(poly(1, &[(&[0], 0, 1), (&[1], 0, 1)]), vec![b(0, &[2])]);
        assert!(rf_equal(&f, &g));
        assert!(rf_regular_at_origin(&f));
        let inv_x = RationalFn::from_poly(poly(1, &[(&[-1], 0, 1)]));
        assert!(!rf_regular_at_origin(&inv_x));
    }

    #[test]
    fn parts_of_simple_functions() {
        let rs = a(2);
        let even = TwistedAction::new(&rs, &[0, 0]).unwrap();
        let odd = TwistedAction::new(&rs, &[1, 0]).unwrap();
        let one = RationalFn::one(2);
        let (p, m) = even.even_odd_parts(&one, 0).unwrap();
        assert!(p.num().is_one() && m.is_zero());
        let (p, m) = odd.even_odd_parts(&one, 0).unwrap();
        assert!(p.is_zero() && m.num().is_one());
        let y = RationalFn::from_poly(LaurentPoly::var(2, 1));
        let (p, m) = even.even_odd_parts(&y, 0).unwrap();
        assert!(p.is_zero());
        assert_eq!(m, y);
    }

    #[test]
    fn rank_one_action() {
        let rs = a(1);
        let act = TwistedAction::new(&rs, &[0]).unwrap();
        let f = act.act_simple(&RationalFn::one(1), 0).unwrap();
        // -(1 - q x) / (q x (1 - x))
        let expected = RationalFn::new(
            poly(1, &[(&[-1], -2, -1), (&[0], 0, 1)]),
            vec![b(0, &[1])],
        );
        assert!(rf_equal(&f, &expected), "{f:?}");
        for l in 0..4 {
            let act = TwistedAction::new(&rs, &[l]).unwrap();
            let twice = act.act_word(&RationalFn::one(1), &[0, 0]).unwrap();
            assert!(rf_equal(&twice, &RationalFn::one(1)), "l = {l}");
        }
    }

    #[test]
    fn regular_after_shift() {
        // x^2 q (1|s_1) is regular at the origin (rank one, l = 0).
        let rs = a(1);
        let act = TwistedAction::new(&rs, &[0]).unwrap();
        let f = act.act_simple(&RationalFn::one(1), 0).unwrap();
        let shifted = f.scale_monomial(&TermKey::new(&[2], 2), 1);
        assert!(rf_regular_at_origin(&shifted));
        assert!(!rf_regular_at_origin(&f));
    }

    #[test]
    fn longest_element_words_agree() {
        let rs = a(2);
        for ell in [[0, 0], [1, 0], [2, 1], [1, 1]] {
            let act = TwistedAction::new(&rs, &ell).unwrap();
            let one = RationalFn::one(2);
            let u = act.act_word(&one, &[0, 1, 0]).unwrap();
            let v = act.act_word(&one, &[1, 0, 1]).unwrap();
            assert!(rf_equal(&u, &v), "ell = {ell:?}");
            assert!(is_q_rational(&u));
        }
    }

    #[test]
    fn substitution_flips_denominators() {
        let rs = a(2);
        let s1 = MonomialSub::sigma(&rs, 0);
        // 1/(1 - x) -> 1/(1 - 1/(q x)) = -q x / (1 - q x)
        let f = RationalFn::new(LaurentPoly::one(2), vec![b(0, &[1, 0])]);
        let g = f.substitute(&s1).unwrap();
        let expected = RationalFn::new(poly(2, &[(&[1, 0], 2, -1)]), vec![b(2, &[1, 0])]);
        assert!(rf_equal(&g, &expected));
        let mixed = MonomialSub::new(vec![
            (1, TermKey::new(&[1, 0], 0)),
            (1, TermKey::new(&[-1, 1], 0)),
        ]);
        let h = RationalFn::new(LaurentPoly::one(2), vec![b(0, &[0, 1])]);
        assert!(matches!(
            h.substitute(&mixed),
            Err(Error::MixedSignDenominator(_))
        ));
    }
}
