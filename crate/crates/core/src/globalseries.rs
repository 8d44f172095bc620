//! Global coefficients `H(m; t)` over the rationals, assembled from the
//! local numerators by twisted multiplicativity, and the Dirichlet series
//! data built on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerator::{numerator_n, NumeratorJson, NumeratorResult, TwistContext};
use crate::rootsys::{enumerate_weyl, RootSystem, WeylGroup};

/// The Jacobi symbol `(d / m)` for odd `m > 0`; zero when `gcd(d, m) > 1`.
pub fn jacobi_symbol(d: i64, m: i64) -> Result<i8> {
    if m <= 0 || m % 2 == 0 {
        return Err(Error::InvalidModulus(m));
    }
    let mut a = d.rem_euclid(m);
    let mut n = m;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// The twisting integers `t = (t_1, ..., t_r)`, positive and odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistIntegers {
    t: Vec<u64>,
}

impl TwistIntegers {
    pub fn new(rs: &RootSystem, t: &[u64]) -> Result<Self> {
        if t.len() != rs.rank() {
            return Err(Error::TwistLength {
                got: t.len(),
                expected: rs.rank(),
            });
        }
        if let Some(&bad) = t.iter().find(|&&x| x == 0 || x % 2 == 0) {
            return Err(Error::InvalidArgument(format!(
                "twisting integers must be positive and odd, got {bad}"
            )));
        }
        Ok(TwistIntegers { t: t.to_vec() })
    }

    pub fn values(&self) -> &[u64] {
        &self.t
    }

    /// `l_i(p)` with `p^{l_i} || t_i`.
    pub fn ell_at(&self, p: u64) -> Vec<u32> {
        self.t.iter().map(|&x| valuation(x, p)).collect()
    }

    /// `t_i^#`: the product of the primes dividing `t_i` to an odd power,
    /// so that `t_i / t_i^#` is a square.
    pub fn squarefree_part(&self, i: usize) -> u64 {
        factorize(self.t[i])
            .into_iter()
            .filter(|(_, e)| e % 2 == 1)
            .map(|(p, _)| p)
            .product()
    }

    /// `hat m_i`: the part of `m_i` prime to `t_i^#`.
    pub fn hat(&self, i: usize, m: u64) -> u64 {
        let s = self.squarefree_part(i);
        factorize(m)
            .into_iter()
            .filter(|(p, _)| !s.is_multiple_of(*p))
            .map(|(p, e)| p.pow(e))
            .product()
    }

    /// `prod_i (t_i^# / hat m_i)`.
    pub fn residue_factor(&self, m: &[u64]) -> i8 {
        (0..self.t.len())
            .map(|i| {
                jacobi_symbol(self.squarefree_part(i) as i64, self.hat(i, m[i]) as i64)
                    .expect("hat m_i is odd and positive")
            })
            .product()
    }
}

/// The odd Dirichlet characters unramified outside 2, by conductor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mod8Character {
    /// Conductor 1.
    #[serde(rename = "triv")]
    Trivial,
    /// Conductor 4: `(-1)^{(n-1)/2}`.
    #[serde(rename = "mod4")]
    Mod4,
    /// Conductor 8, `(2 / n)`: `+1` iff `n = +-1 mod 8`.
    #[serde(rename = "mod8p")]
    Mod8Plus,
    /// Conductor 8, `(-2 / n)`: `+1` iff `n = 1, 3 mod 8`.
    #[serde(rename = "mod8m")]
    Mod8Minus,
}

impl Mod8Character {
    pub const ALL: [Mod8Character; 4] = [
        Mod8Character::Trivial,
        Mod8Character::Mod4,
        Mod8Character::Mod8Plus,
        Mod8Character::Mod8Minus,
    ];

    /// Value at an odd integer.
    pub fn value(self, n: u64) -> i8 {
        debug_assert!(n % 2 == 1);
        let r = n % 8;
        let plus = match self {
            Mod8Character::Trivial => true,
            Mod8Character::Mod4 => r % 4 == 1,
            Mod8Character::Mod8Plus => r == 1 || r == 7,
            Mod8Character::Mod8Minus => r == 1 || r == 3,
        };
        if plus {
            1
        } else {
            -1
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Mod8Character::Trivial => "triv",
            Mod8Character::Mod4 => "mod4",
            Mod8Character::Mod8Plus => "mod8p",
            Mod8Character::Mod8Minus => "mod8m",
        }
    }
}

impl fmt::Display for Mod8Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Mod8Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mod8Character::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown character {s:?} (triv, mod4, mod8p, mod8m)")))
    }
}

pub fn characters_mod8() -> [Mod8Character; 4] {
    Mod8Character::ALL
}

/// `Psi(m) = prod psi_i(m_i)`.
pub fn psi_value(psi: &[Mod8Character], m: &[u64]) -> i8 {
    psi.iter().zip(m).map(|(c, &x)| c.value(x)).product()
}

type Entries = HashMap<(String, Vec<u32>), Arc<NumeratorResult>>;

/// Memoized numerators keyed by root system and twist, optionally backed
/// by a directory of JSON files.
#[derive(Debug, Default)]
pub struct NumeratorCache {
    dir: Option<PathBuf>,
    groups: Mutex<HashMap<String, Arc<WeylGroup>>>,
    entries: Mutex<Entries>,
}

impl NumeratorCache {
    pub fn new() -> Self {
        NumeratorCache::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        NumeratorCache {
            dir: Some(dir.into()),
            ..NumeratorCache::default()
        }
    }

    fn group(&self, rs: &RootSystem) -> Result<Arc<WeylGroup>> {
        let mut groups = self.groups.lock().expect("cache lock");
        if let Some(g) = groups.get(&rs.name()) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(enumerate_weyl(rs)?);
        groups.insert(rs.name(), Arc::clone(&g));
        Ok(g)
    }

    fn file(&self, rs: &RootSystem, ell: &[u32]) -> Option<PathBuf> {
        let ell: Vec<String> = ell.iter().map(|l| l.to_string()).collect();
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}_{}.json", rs.name(), ell.join("-"))))
    }

    fn load(&self, ctx: &TwistContext, path: &PathBuf) -> Option<NumeratorResult> {
        let text = std::fs::read_to_string(path).ok()?;
        let json: NumeratorJson = serde_json::from_str(&text).ok()?;
        let res = NumeratorResult::from_json(ctx, &json).ok()?;
        res.assert_structure().ok()?;
        Some(res)
    }

    fn store(&self, res: &NumeratorResult, path: &PathBuf) -> Result<()> {
        let io = |e: std::io::Error| Error::InvalidArgument(format!("cache {}: {e}", path.display()));
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(io)?;
        }
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&res.to_json()).expect("numerator serializes");
        std::fs::write(&tmp, text).map_err(io)?;
        std::fs::rename(&tmp, path).map_err(io)
    }

    /// The numerator for `(rs, ell)`, computing it at most once.
    pub fn get(&self, rs: &RootSystem, ell: &[u32]) -> Result<Arc<NumeratorResult>> {
        let key = (rs.name(), ell.to_vec());
        if let Some(hit) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let ctx = TwistContext::with_group(self.group(rs)?, ell)?;
        let path = self.file(rs, ell);
        let res = match path.as_ref().and_then(|p| self.load(&ctx, p)) {
            Some(res) => res,
            None => {
                let res = numerator_n(&ctx)?;
                if let Some(p) = &path {
                    self.store(&res, p)?;
                }
                res
            }
        };
        let res = Arc::new(res);
        self.entries
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&res));
        Ok(res)
    }
}

/// `a_lambda(p; l)` at `q = p` for `lambda = sum k_i alpha_i`.
pub fn h_prime_power(numerator: &NumeratorResult, p: u64, k: &[u32]) -> BigInt {
    let lambda: Vec<i64> = k.iter().map(|&e| e as i64).collect();
    numerator
        .a(&lambda)
        .eval_q(&BigInt::from(p))
        .expect("numerator coefficients are polynomials in q")
}

/// `prod_{i < j adjacent} (a_i / b_j)(b_i / a_j)` for coprime tuples `a`, `b`.
pub fn cocycle(rs: &RootSystem, a: &[u64], b: &[u64]) -> i8 {
    let mut s = 1i8;
    let r = rs.rank();
    for i in 0..r {
        for j in i + 1..r {
            if rs.adjacent(i, j) {
                s *= jacobi_symbol(a[i] as i64, b[j] as i64).expect("odd modulus");
                s *= jacobi_symbol(b[i] as i64, a[j] as i64).expect("odd modulus");
            }
        }
    }
    s
}

/// Coefficients of the global series for a fixed root system and twist.
#[derive(Debug)]
pub struct GlobalSeries {
    rs: RootSystem,
    t: TwistIntegers,
    cache: Arc<NumeratorCache>,
}

impl GlobalSeries {
    pub fn new(rs: &RootSystem, t: &[u64]) -> Result<Self> {
        GlobalSeries::with_cache(rs, t, Arc::new(NumeratorCache::new()))
    }

    pub fn with_cache(rs: &RootSystem, t: &[u64], cache: Arc<NumeratorCache>) -> Result<Self> {
        Ok(GlobalSeries {
            rs: rs.clone(),
            t: TwistIntegers::new(rs, t)?,
            cache,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn twist(&self) -> &TwistIntegers {
        &self.t
    }

    /// `H(p^{k_1}, ..., p^{k_r}; t)`.
    pub fn h_prime_power(&self, p: u64, k: &[u32]) -> Result<BigInt> {
        if k.len() != self.rs.rank() {
            return Err(Error::RankMismatch {
                left: k.len(),
                right: self.rs.rank(),
            });
        }
        if p < 3 || factorize(p).len() != 1 || factorize(p)[0].1 != 1 {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        if k.iter().all(|&e| e == 0) {
            return Ok(BigInt::one());
        }
        let n = self.cache.get(&self.rs, &self.t.ell_at(p))?;
        Ok(h_prime_power(&n, p, k))
    }

    fn check_tuple(&self, m: &[u64]) -> Result<()> {
        if m.len() != self.rs.rank() {
            return Err(Error::RankMismatch {
                left: m.len(),
                right: self.rs.rank(),
            });
        }
        if let Some(&bad) = m.iter().find(|&&x| x == 0 || x % 2 == 0) {
            return Err(Error::InvalidArgument(format!("m must be odd and positive, got {bad}")));
        }
        Ok(())
    }

    /// The prime-power blocks of `m`, primes ascending.
    pub fn blocks(m: &[u64]) -> Vec<(u64, Vec<u32>)> {
        let mut primes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (i, &x) in m.iter().enumerate() {
            for (p, e) in factorize(x) {
                primes.entry(p).or_insert_with(|| vec![0; m.len()])[i] = e;
            }
        }
        primes.into_iter().collect()
    }

    /// `H(m; t)`, combining the prime-power blocks in ascending order.
    pub fn h_general(&self, m: &[u64]) -> Result<BigInt> {
        self.check_tuple(m)?;
        let blocks = GlobalSeries::blocks(m);
        let order: Vec<usize> = (0..blocks.len()).collect();
        self.combine(&blocks, &order)
    }

    /// `H(m; t)` with the blocks merged in the given order (a permutation
    /// of the prime factors); the result does not depend on it.
    pub fn h_general_in_order(&self, m: &[u64], order: &[u64]) -> Result<BigInt> {
        self.check_tuple(m)?;
        let blocks = GlobalSeries::blocks(m);
        let idx: Option<Vec<usize>> = order
            .iter()
            .map(|p| blocks.iter().position(|(q, _)| q == p))
            .collect();
        match idx {
            Some(idx) if idx.len() == blocks.len() => self.combine(&blocks, &idx),
            _ => Err(Error::InvalidArgument(format!(
                "{order:?} is not an ordering of the primes of {m:?}"
            ))),
        }
    }

    fn combine(&self, blocks: &[(u64, Vec<u32>)], order: &[usize]) -> Result<BigInt> {
        let r = self.rs.rank();
        let mut acc = vec![1u64; r];
        let mut value = BigInt::one();
        for &b in order {
            let (p, k) = &blocks[b];
            let h = self.h_prime_power(*p, k)?;
            if h.is_zero() {
                return Ok(BigInt::zero());
            }
            let block: Vec<u64> = k.iter().map(|&e| p.pow(e)).collect();
            value *= h * BigInt::from(cocycle(&self.rs, &acc, &block));
            for (a, x) in acc.iter_mut().zip(&block) {
                *a *= x;
            }
        }
        Ok(value)
    }

    /// All coefficients for odd `m` with every `m_i <= bound`.
    pub fn z_coefficients(&self, psi: &[Mod8Character], bound: u64) -> Result<GlobalCoeffTable> {
        let r = self.rs.rank();
        if psi.len() != r {
            return Err(Error::TwistLength {
                got: psi.len(),
                expected: r,
            });
        }
        if bound == 0 {
            return Err(Error::InvalidArgument("bound must be at least 1".into()));
        }
        let odd: Vec<u64> = (1..=bound).step_by(2).collect();
        // Fill the cache up front so the parallel pass only reads it.
        for p in odd.iter().copied().filter(|&p| p > 1 && factorize(p).len() == 1 && factorize(p)[0].1 == 1) {
            self.cache.get(&self.rs, &self.t.ell_at(p))?;
        }
        let total = odd.len().pow(r as u32);
        let tuples: Vec<Vec<u64>> = (0..total)
            .map(|mut n| {
                // first coordinate slowest
                let mut m = vec![0u64; r];
                for slot in m.iter_mut().rev() {
                    *slot = odd[n % odd.len()];
                    n /= odd.len();
                }
                m
            })
            .collect();
        let entries: Result<Vec<GlobalCoeff>> = tuples
            .into_par_iter()
            .map(|m| {
                let h = self.h_general(&m)?;
                let psi_m = psi_value(psi, &m);
                let residue = self.t.residue_factor(&m);
                let z = &h * BigInt::from(psi_m * residue);
                Ok(GlobalCoeff { m, h, psi: psi_m, residue, z })
            })
            .collect();
        Ok(GlobalCoeffTable {
            root_system: self.rs.name(),
            t: self.t.values().to_vec(),
            psi: psi.to_vec(),
            bound,
            entries: entries?,
        })
    }
}

fn big_as_number<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// One row of the coefficient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalCoeff {
    pub m: Vec<u64>,
    #[serde(rename = "H", serialize_with = "big_as_number")]
    pub h: BigInt,
    pub psi: i8,
    /// `prod (t_i^# / hat m_i)`.
    pub residue: i8,
    /// `Psi(m) H(m; t) prod (t_i^# / hat m_i)`.
    #[serde(rename = "Z", serialize_with = "big_as_number")]
    pub z: BigInt,
}

impl GlobalCoeff {
    pub fn is_zero(&self) -> bool {
        self.z.is_zero()
    }
}

pub const TABLE_SCHEMA: &str = "qwmds/global/v1";

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GlobalCoeffTable {
    pub root_system: String,
    pub t: Vec<u64>,
    pub psi: Vec<Mod8Character>,
    pub bound: u64,
    pub entries: Vec<GlobalCoeff>,
}

impl GlobalCoeffTable {
    pub fn get(&self, m: &[u64]) -> Option<&GlobalCoeff> {
        self.entries.iter().find(|e| e.m == m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("table serializes");
        v["schema"] = TABLE_SCHEMA.into();
        v
    }

    pub fn to_csv(&self) -> String {
        let r = self.entries.first().map_or(0, |e| e.m.len());
        let mut out: Vec<String> = vec![(1..=r)
            .map(|i| format!("m{i}"))
            .chain(["H", "psi", "residue", "Z"].map(String::from))
            .collect::<Vec<_>>()
            .join(",")];
        for e in &self.entries {
            let mut row: Vec<String> = e.m.iter().map(|x| x.to_string()).collect();
            row.extend([e.h.to_string(), e.psi.to_string(), e.residue.to_string(), e.z.to_string()]);
            out.push(row.join(","));
        }
        out.join("\n") + "\n"
    }

    /// Checks `H(a b) = H(a) H(b) prod (a_i / b_j)(b_i / a_j)` for every entry
    /// and every split of its primes into two sets. Returns the number of
    /// splits checked, or the first failing `(a, b)`.
    pub fn check_multiplicativity(&self, rs: &RootSystem) -> std::result::Result<usize, (Vec<u64>, Vec<u64>)> {
        let lookup: HashMap<&[u64], &BigInt> =
            self.entries.iter().map(|e| (e.m.as_slice(), &e.h)).collect();
        let mut checked = 0;
        for e in &self.entries {
            let blocks = GlobalSeries::blocks(&e.m);
            let nb = blocks.len();
            for mask in 1..(1u32 << nb).saturating_sub(1) {
                let mut a = vec![1u64; e.m.len()];
                for (bit, (p, k)) in blocks.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        for (x, &kk) in a.iter_mut().zip(k) {
                            *x *= p.pow(kk);
                        }
                    }
                }
                let b: Vec<u64> = e.m.iter().zip(&a).map(|(m, x)| m / x).collect();
                let expected = lookup[a.as_slice()] * lookup[b.as_slice()] * BigInt::from(cocycle(rs, &a, &b));
                checked += 1;
                if expected != e.h {
                    return Err((a, b));
                }
            }
        }
        Ok(checked)
    }
}

/// `zeta(<c, s> + k)` for one positive root: `c = 2 alpha`, `k = 1 - d(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaForm {
    pub root: Vec<i64>,
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

/// The normalizing factor `prod_{alpha > 0} zeta(2 <alpha, s> - d(alpha) + 1)`
/// as a list of affine forms.
pub fn zeta_factor_descriptor(rs: &RootSystem) -> Vec<ZetaForm> {
    rs.positive_roots()
        .iter()
        .zip(rs.heights())
        .map(|(a, &d)| ZetaForm {
            root: a.clone(),
            coeffs: a.iter().map(|c| 2 * c).collect(),
            constant: 1 - d,
        })
        .collect()
}

/// An affine map `s -> A s + b` on `Q^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<Vec<Rational64>>,
    pub offset: Vec<Rational64>,
}

impl AffineMap {
    /// The transformation of `s` attached to node `j0`:
    /// `s_j + s_{j0} - 1/2` for `j` adjacent, `1 - s_{j0}` at `j0`, else `s_j`.
    pub fn functional_equation(rs: &RootSystem, j0: usize) -> Self {
        let r = rs.rank();
        let zero = Rational64::zero();
        let one = Rational64::one();
        let mut matrix = vec![vec![zero; r]; r];
        let mut offset = vec![zero; r];
        for j in 0..r {
            if j == j0 {
                matrix[j][j0] = -one;
                offset[j] = one;
            } else {
                matrix[j][j] = one;
                if rs.adjacent(j, j0) {
                    matrix[j][j0] = one;
                    offset[j] = Rational64::new(-1, 2);
                }
            }
        }
        AffineMap { matrix, offset }
    }

    pub fn apply(&self, s: &[Rational64]) -> Vec<Rational64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(s).map(|(a, x)| a * x).sum::<Rational64>() + b)
            .collect()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let r = self.offset.len();
        let matrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let offset = self
            .apply(&other.offset)
            .into_iter()
            .collect();
        AffineMap { matrix, offset }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.offset.len();
        (0..r).all(|i| {
            self.offset[i].is_zero()
                && (0..r).all(|j| self.matrix[i][j] == if i == j { Rational64::one() } else { Rational64::zero() })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn a2() -> RootSystem {
        RootSystem::new(Family::A, 2).unwrap()
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi_symbol(1, 7).unwrap(), 1);
        assert_eq!(jacobi_symbol(3, 5).unwrap(), -1);
        assert_eq!(jacobi_symbol(2, 7).unwrap(), 1);
        assert_eq!(jacobi_symbol(-1, 7).unwrap(), -1);
        assert_eq!(jacobi_symbol(6, 9).unwrap(), 0);
        assert_eq!(jacobi_symbol(5, 1).unwrap(), 1);
        assert!(matches!(jacobi_symbol(3, 4), Err(Error::InvalidModulus(4))));
        assert!(matches!(jacobi_symbol(3, -5), Err(Error::InvalidModulus(-5))));
        // Euler's criterion for primes.
        for p in [3i64, 5, 7, 11, 13, 101] {
            for d in -20i64..20 {
                let e = (0..(p - 1) / 2).fold(1i64, |acc, _| acc * d.rem_euclid(p) % p);
                let expected = if d.rem_euclid(p) == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(jacobi_symbol(d, p).unwrap() as i64, expected, "({d}/{p})");
            }
        }
    }

    #[test]
    fn twist_integers() {
        let t = TwistIntegers::new(&a2(), &[45, 1]).unwrap();
        assert_eq!(t.ell_at(3), vec![2, 0]);
        assert_eq!(t.ell_at(5), vec![1, 0]);
        assert_eq!(t.squarefree_part(0), 5);
        assert_eq!(t.hat(0, 75), 3);
        assert!(TwistIntegers::new(&a2(), &[2, 1]).is_err());
        assert!(TwistIntegers::new(&a2(), &[1]).is_err());
    }

    #[test]
    fn characters() {
        let units = [1u64, 3, 5, 7];
        assert_eq!(units.map(|n| Mod8Character::Trivial.value(n)), [1, 1, 1, 1]);
        assert_eq!(units.map(|n| Mod8Character::Mod4.value(n)), [1, -1, 1, -1]);
        assert_eq!(units.map(|n| Mod8Character::Mod8Plus.value(n)), [1, -1, -1, 1]);
        assert_eq!(units.map(|n| Mod8Character::Mod8Minus.value(n)), [1, 1, -1, -1]);
        for c in characters_mod8() {
            for a in units {
                assert_eq!(c.value(a) * c.value(a), 1);
                for b in units {
                    assert_eq!(c.value(a * b), c.value(a) * c.value(b));
                }
            }
            assert_eq!(c.label().parse::<Mod8Character>().unwrap(), c);
        }
        assert!("mod3".parse::<Mod8Character>().is_err());
    }

    #[test]
    fn prime_powers() {
        let g = GlobalSeries::new(&a2(), &[1, 1]).unwrap();
        assert_eq!(g.h_prime_power(3, &[1, 0]).unwrap(), BigInt::from(1));
        assert_eq!(g.h_prime_power(3, &[1, 1]).unwrap(), BigInt::from(0));
        assert_eq!(g.h_prime_power(3, &[2, 2]).unwrap(), BigInt::from(-1));
        let g = GlobalSeries::new(&a2(), &[3, 1]).unwrap();
        assert_eq!(g.h_prime_power(3, &[2, 1]).unwrap(), BigInt::from(2));
        assert!(g.h_prime_power(9, &[1, 0]).is_err());
    }

    #[test]
    fn general_coefficients() {
        let g = GlobalSeries::new(&a2(), &[1, 1]).unwrap();
        assert_eq!(g.h_general(&[1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(g.h_general(&[3, 5]).unwrap(), BigInt::from(-1));
        assert_eq!(g.h_general(&[15, 1]).unwrap(), BigInt::from(1));
        assert_eq!(
            g.h_general_in_order(&[15, 7], &[7, 5, 3]).unwrap(),
            g.h_general(&[15, 7]).unwrap()
        );
        assert!(g.h_general_in_order(&[15, 1], &[3]).is_err());
        assert!(g.h_general(&[2, 1]).is_err());
    }

    #[test]
    fn table() {
        let g = GlobalSeries::new(&a2(), &[1, 1]).unwrap();
        let triv = [Mod8Character::Trivial; 2];
        let table = g.z_coefficients(&triv, 15).unwrap();
        assert_eq!(table.entries.len(), 64);
        assert_eq!(table.get(&[1, 1]).unwrap().z, BigInt::from(1));
        assert_eq!(table.get(&[3, 5]).unwrap().z, BigInt::from(-1));
        assert!(table.check_multiplicativity(&a2()).unwrap() > 0);
        let twisted = g
            .z_coefficients(&[Mod8Character::Mod4, Mod8Character::Trivial], 15)
            .unwrap();
        for (a, b) in table.entries.iter().zip(&twisted.entries) {
            assert_eq!(b.z, &a.z * BigInt::from(Mod8Character::Mod4.value(a.m[0])));
        }
        let csv = table.to_csv();
        assert!(csv.starts_with("m1,m2,H,psi,residue,Z\n1,1,1,1,1,1\n"));
        assert_eq!(table.to_json()["entries"][0]["H"], 1);
    }

    #[test]
    fn zeta_forms() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(
            zeta_factor_descriptor(&a1),
            vec![ZetaForm { root: vec![1], coeffs: vec![2], constant: 0 }]
        );
        let forms = zeta_factor_descriptor(&a2());
        assert_eq!(forms.len(), 3);
        assert!(forms.contains(&ZetaForm { root: vec![1, 1], coeffs: vec![2, 2], constant: -1 }));
    }

    #[test]
    fn functional_equation_maps() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        for j in 0..4 {
            let m = AffineMap::functional_equation(&rs, j);
            assert!(m.compose(&m).is_identity());
            assert!(!m.is_identity());
        }
        let m = AffineMap::functional_equation(&a2(), 0);
        let s = [Rational64::new(3, 1), Rational64::new(5, 1)];
        assert_eq!(m.apply(&s), vec![Rational64::new(-2, 1), Rational64::new(15, 2)]);
    }

    #[test]
    fn disk_cache() {
        let dir = std::env::temp_dir().join(format!("qwmds-cache-test-{}", std::process::id()));
        let rs = a2();
        let first = NumeratorCache::with_dir(&dir).get(&rs, &[2, 1]).unwrap();
        assert!(dir.join("A2_2-1.json").exists());
        let second = NumeratorCache::with_dir(&dir).get(&rs, &[2, 1]).unwrap();
        assert_eq!(first.n(), second.n());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
