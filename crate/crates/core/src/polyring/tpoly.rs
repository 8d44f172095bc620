use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{cadd, cmul};

/// Laurent polynomial in the single variable `t = sqrt(q)`.
///
/// Used for individual coefficients `a_lambda` of a numerator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    terms: BTreeMap<i32, i128>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn constant(c: i128) -> Self {
        TPoly::monomial(0, c)
    }

    /// `c t^e`.
    pub fn monomial(e: i32, c: i128) -> Self {
        let mut p = TPoly::zero();
        p.add_term(e, c);
        p
    }

    /// `c q^e`.
    pub fn q_power(e: i32, c: i128) -> Self {
        TPoly::monomial(2 * e, c)
    }

    /// From coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs(coeffs: &[i128]) -> Self {
        let mut p = TPoly::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * e as i32, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = cadd(*entry, c);
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i128 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn as_monomial(&self) -> Option<(i32, i128)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> TPoly {
        self.scale(-1)
    }

    pub fn scale(&self, c: i128) -> TPoly {
        let mut out = TPoly::zero();
        for (e, a) in self.terms() {
            out.add_term(e, cmul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, cmul(c1, c2));
            }
        }
        out
    }

    /// Multiplies by `c t^e`.
    pub fn shift(&self, e: i32, c: i128) -> TPoly {
        let mut out = TPoly::zero();
        for (e1, a) in self.terms() {
            out.add_term(e1 + e, cmul(a, c));
        }
        out
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self` in `Z[t, 1/t]`.
    pub fn div_exact(&self, divisor: &TPoly) -> Option<TPoly> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = TPoly::zero();
        let lo = match self.min_exp() {
            Some(lo) => lo,
            None => return Some(TPoly::zero()),
        };
        // Remove the top term until the remainder lies below the divisor's span.
        while let Some(top) = rem.max_exp() {
            if top - (dhi - dlo) < lo {
                return None;
            }
            let c = rem.coeff(top);
            if c % lead != 0 {
                return None;
            }
            let qe = top - dhi;
            let qc = c / lead;
            quot.add_term(qe, qc);
            rem = rem.sub(&divisor.shift(qe, qc));
        }
        Some(quot)
    }

    /// All exponents even, i.e. a Laurent polynomial in `q`.
    pub fn is_q_laurent(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Value at `q = p` (requires even exponents).
    pub fn eval_q(&self, p: &BigInt) -> Option<BigInt> {
        if !self.is_q_laurent() || self.terms.keys().any(|&e| e < 0) {
            return None;
        }
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            acc += BigInt::from(c) * Pow::pow(p, (e / 2) as u32);
        }
        Some(acc)
    }

    /// Value at `t = 1`, the sum of coefficients.
    pub fn eval_one(&self) -> i128 {
        self.terms().fold(0, |acc, (_, c)| cadd(acc, c))
    }

    /// Coefficient list `(exponent, value)` in the `q` variable; `None` if some exponent is odd.
    pub fn q_terms(&self) -> Option<Vec<(i32, i128)>> {
        self.is_q_laurent()
            .then(|| self.terms().map(|(e, c)| (e / 2, c)).collect())
    }
}

fn q_power_text(e: i32) -> String {
    if e % 2 == 0 {
        match e / 2 {
            1 => "q".into(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({e}/2)")
    }
}

impl fmt::Display for TPoly {
    /// Descending powers of `q`, e.g. `q^2 - 2q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev().map(|(&e, &c)| (e, c)) {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(&q_power_text(e))?;
            } else {
                write!(f, "{mag}{}", q_power_text(e))?;
            }
        }
        Ok(())
    }
}

impl From<i128> for TPoly {
    fn from(c: i128) -> Self {
        TPoly::constant(c)
    }
}

impl TPoly {
    pub fn one() -> Self {
        TPoly::constant(1)
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial() == Some((0, 1))
    }

    /// Leading coefficient sign (highest power), `0` for zero.
    pub fn leading_sign(&self) -> i32 {
        match self.max_exp() {
            Some(e) if self.coeff(e) < 0 => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_in_q() {
        assert_eq!(TPoly::from_q_coeffs(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(TPoly::from_q_coeffs(&[0, -1, 2, -2, 1]).to_string(), "q^4 - 2q^3 + 2q^2 - q");
        assert_eq!(TPoly::q_power(3, -1).to_string(), "-q^3");
        assert_eq!(TPoly::zero().to_string(), "0");
        assert_eq!(TPoly::monomial(1, 1).to_string(), "q^(1/2)");
    }

    #[test]
    fn exact_division() {
        let a = TPoly::from_q_coeffs(&[1, 0, -1]); // 1 - q^2
        let b = TPoly::from_q_coeffs(&[1, 1]); // 1 + q
        assert_eq!(a.div_exact(&b), Some(TPoly::from_q_coeffs(&[1, -1])));
        assert_eq!(b.div_exact(&a), None);
        let c = TPoly::from_q_coeffs(&[1, 2]);
        assert_eq!(TPoly::from_q_coeffs(&[1, 3]).div_exact(&c), None);
        let shifted = a.shift(-4, 3);
        assert_eq!(shifted.div_exact(&b), Some(TPoly::from_q_coeffs(&[1, -1]).shift(-4, 3)));
    }

    #[test]
    fn evaluation() {
        let p = TPoly::from_q_coeffs(&[-1, 1]);
        assert_eq!(p.eval_q(&BigInt::from(3)), Some(BigInt::from(2)));
        assert_eq!(TPoly::monomial(1, 1).eval_q(&BigInt::from(3)), None);
    }
}
