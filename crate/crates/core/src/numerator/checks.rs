//! Verification passes over a computed (or supplied) numerator.

use rustc_hash::FxHashSet;
use serde::Serialize;

use super::{dd_factors, stable_coefficient, NumeratorResult, Polytope};
use crate::polyring::{Binomial, TPoly, TermKey};
use crate::ratfun::{rf_equal, RationalFn};
use crate::rootsys::NodeSet;

/// Outcome of one verification pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual instances examined.
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            checked: 0,
            failures: 0,
            first_failure: None,
            notes: vec![],
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

fn fmt_point(p: &[i64]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

/// Every nonzero coefficient lies in the polytope.
pub fn support_check(res: &NumeratorResult) -> CheckReport {
    let poly = Polytope::new(res.ctx());
    support_check_with(res, &poly)
}

pub fn support_check_with(res: &NumeratorResult, poly: &Polytope) -> CheckReport {
    let mut rep = CheckReport::new("support");
    for lambda in res.support() {
        rep.record(poly.contains(&lambda), || {
            let (row, bound) = poly.first_violation(&lambda).expect("violation exists");
            format!(
                "lambda={} violates {:?}.x >= {bound}",
                fmt_point(&lambda),
                row
            )
        });
    }
    rep
}

/// One instance of the coefficient functional equations, written as
/// `sum coeff * a(point) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeRelation {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub k: usize,
    pub odd: bool,
    pub terms: Vec<(Vec<i64>, TPoly)>,
}

impl FeRelation {
    pub fn residual(&self, a: impl Fn(&[i64]) -> TPoly) -> TPoly {
        self.terms
            .iter()
            .fold(TPoly::zero(), |acc, (p, c)| acc.add(&c.mul(&a(p))))
    }
}

fn add_root(v: &[i64], k: usize, m: i64) -> Vec<i64> {
    let mut out = v.to_vec();
    out[k] += m;
    out
}

/// `tau_k(v) = sigma_k v + (l_k + 1) alpha_k`, an involution.
fn tau(res_ctx: &super::TwistContext, k: usize, v: &[i64]) -> Vec<i64> {
    let mut out = res_ctx.rs().reflect(k, v);
    out[k] += res_ctx.ell()[k] as i64 + 1;
    out
}

/// The relation at `(lambda, k)` when `mu = sigma_k lambda + (l_k+1) alpha_k >= lambda`:
///
/// * even `phi_k(mu)`: `t^2 a(lambda-a_k) + a(lambda) - t^{d} a(mu) - t^{d-2} a(mu+a_k) = 0`
/// * odd `phi_k(mu)`: `t^4 a(lambda-2a_k) - a(lambda) - t^{1+d} a(mu) + t^{d-3} a(mu+2a_k) = 0`
///
/// where `d` is the height of `beta = lambda - mu + alpha_k`.
pub fn fe_relation(ctx: &super::TwistContext, lambda: &[i64], k: usize) -> Option<FeRelation> {
    let mu = tau(ctx, k, lambda);
    let d = (lambda[k] - mu[k] + 1) as i32;
    if d > 1 {
        return None;
    }
    let odd = ctx.phi(k, &mu) % 2 != 0;
    let terms = if odd {
        vec![
            (add_root(lambda, k, -2), TPoly::monomial(4, 1)),
            (lambda.to_vec(), TPoly::constant(-1)),
            (mu.clone(), TPoly::monomial(1 + d, -1)),
            (add_root(&mu, k, 2), TPoly::monomial(d - 3, 1)),
        ]
    } else {
        vec![
            (add_root(lambda, k, -1), TPoly::monomial(2, 1)),
            (lambda.to_vec(), TPoly::constant(1)),
            (mu.clone(), TPoly::monomial(d, -1)),
            (add_root(&mu, k, 1), TPoly::monomial(d - 2, -1)),
        ]
    };
    Some(FeRelation {
        lambda: lambda.to_vec(),
        mu,
        k,
        odd,
        terms,
    })
}

/// Checks both parity branches of the coefficient relations at every
/// `(lambda, k)` for which some term of the relation is in the support.
/// All other instances read `0 = 0`.
pub fn coeff_fe_check(res: &NumeratorResult) -> CheckReport {
    let ctx = res.ctx();
    let r = ctx.rank();
    let mut rep = CheckReport::new("fe");
    let lookup = |p: &[i64]| res.a(p);
    let (mut even, mut odd) = (0usize, 0usize);
    for k in 0..r {
        let mut candidates: FxHashSet<Vec<i64>> = FxHashSet::default();
        for s in res.support() {
            for m in 0..=2 {
                candidates.insert(add_root(&s, k, m));
                candidates.insert(tau(ctx, k, &add_root(&s, k, -m)));
            }
        }
        let mut candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
        candidates.sort();
        for lambda in candidates {
            let Some(rel) = fe_relation(ctx, &lambda, k) else {
                continue;
            };
            if rel.odd {
                odd += 1;
            } else {
                even += 1;
            }
            let resid = rel.residual(lookup);
            rep.record(resid.is_zero(), || {
                format!(
                    "lambda={} k={} ({} branch, mu={}): residual {}",
                    fmt_point(&rel.lambda),
                    k + 1,
                    if rel.odd { "odd" } else { "even" },
                    fmt_point(&rel.mu),
                    resid
                )
            });
        }
    }
    rep.notes.push(format!("{even} even-branch and {odd} odd-branch instances"));
    rep
}

/// The reflection identity for each node `k`:
///
/// `(t^4 x_k^2 - 1) N = t^{2+l} x_k^{l+1} (1 + x_k)(t^2 x_k - 1) N+(s_k x)
///                      + t^{3+l} x_k^{l+1} (1 - x_k^2) N-(s_k x)`.
pub fn action_identity_check(res: &NumeratorResult) -> CheckReport {
    let ctx = res.ctx();
    let act = ctx.action();
    let r = ctx.rank();
    let n = res.n();
    let mut rep = CheckReport::new("action");
    for k in 0..r {
        let l = ctx.ell()[k] as i32;
        let mut xk = vec![0i64; r];
        xk[k] = 1;
        let mut xk2 = xk.clone();
        xk2[k] = 2;

        let ne = n.substitute(act.epsilon_sub(k));
        let (sum, diff) = (n + &ne, n - &ne);
        let (even, oddp) = if l % 2 == 0 { (sum, diff) } else { (diff, sum) };
        let (plus, minus) = match (even.div_scalar(2), oddp.div_scalar(2)) {
            (Ok(p), Ok(m)) => (p, m),
            _ => {
                rep.record(false, || format!("k={}: N does not split into integral parts", k + 1));
                continue;
            }
        };
        let gp = plus.substitute(act.sigma_sub(k));
        let gm = minus.substitute(act.sigma_sub(k));

        // (t^4 x_k^2 - 1) N = -(1 - t^4 x_k^2) N
        let lhs = n
            .mul_binomial(&Binomial::new(4, &xk2).expect("nonzero"))
            .scale(-1);
        let mut mono = TermKey::new(&xk, 0);
        mono.x[k] = (l + 1) as i16;
        mono.t = 2 + l;
        // (1 + x_k)(t^2 x_k - 1) = -(1 + x_k)(1 - t^2 x_k)
        let first = gp
            .mul_binomial(&Binomial::signed(-1, 0, &xk).expect("nonzero"))
            .mul_binomial(&Binomial::new(2, &xk).expect("nonzero"))
            .scale_monomial(&mono, -1);
        mono.t = 3 + l;
        let second = gm
            .mul_binomial(&Binomial::new(0, &xk2).expect("nonzero"))
            .scale_monomial(&mono, 1);
        let rhs = &first + &second;
        let diff = &lhs - &rhs;
        rep.record(diff.is_zero(), || {
            format!("k={}: identity fails in {} terms", k + 1, diff.len())
        });
    }
    rep
}

/// How to read the exponent `m_i` in the limiting condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitingReading {
    /// `m_i = 0` for even `l_i`, `1` for odd `l_i`.
    AsStated,
    /// `m_i = 1` for even `l_i`, `0` for odd `l_i`.
    ParitySwapped,
}

impl LimitingReading {
    fn m(self, l: u32) -> u32 {
        match self {
            LimitingReading::AsStated => l % 2,
            LimitingReading::ParitySwapped => 1 - l % 2,
        }
    }
}

/// With every neighbour of `i` set to zero, `f (1 - x_i)^{m_i}` should be
/// a polynomial in `x_i` of degree at most `l_i`; for `l_i = 0` that is
/// independence of `x_i`.
///
/// After the substitution the only factor of `D` involving `x_i` is
/// `1 - x_i^2`, so the test is an exact division followed by a degree bound.
pub fn limiting_condition_check(res: &NumeratorResult, reading: LimitingReading) -> CheckReport {
    let ctx = res.ctx();
    let rs = ctx.rs();
    let r = ctx.rank();
    let mut rep = CheckReport::new(match reading {
        LimitingReading::AsStated => "limiting (as stated)",
        LimitingReading::ParitySwapped => "limiting",
    });
    for i in 0..r {
        let l = ctx.ell()[i];
        let m = reading.m(l);
        let nbrs: NodeSet = rs.neighbors(i);
        let Ok(p) = res.n().partial_eval_zero(nbrs) else {
            rep.record(false, || format!("i={}: polar terms", i + 1));
            continue;
        };
        let mut xi = vec![0i64; r];
        xi[i] = 1;
        let one_minus_xi = Binomial::new(0, &xi).expect("nonzero");
        let p = (0..m).fold(p, |acc, _| acc.mul_binomial(&one_minus_xi));
        xi[i] = 2;
        let quotient = p.divide_exact_binomial(&Binomial::new(0, &xi).expect("nonzero"));
        let degree = quotient
            .as_ref()
            .ok()
            .map(|q| q.terms().iter().map(|(k, _)| k.x[i] as i64).max().unwrap_or(0));
        rep.record(degree.is_some_and(|d| d <= l as i64), || match degree {
            None => format!("i={} (l_i={l}, m_i={m}): pole at x_{} = 1 remains", i + 1, i + 1),
            Some(d) => format!("i={} (l_i={l}, m_i={m}): degree {d} in x_{}", i + 1, i + 1),
        });
    }
    rep
}

/// `f = N / D` is fixed by every simple reflection.
pub fn invariance_check(res: &NumeratorResult) -> CheckReport {
    let ctx = res.ctx();
    let act = ctx.action();
    let f = RationalFn::new(res.n().clone(), dd_factors(ctx.rs()));
    let mut rep = CheckReport::new("invariance");
    for i in 0..ctx.rank() {
        match act.act_simple(&f, i) {
            Ok(g) => rep.record(rf_equal(&f, &g), || format!("f|s_{} != f", i + 1)),
            Err(e) => rep.record(false, || format!("s_{}: {e}", i + 1)),
        }
    }
    rep
}

/// `a(theta - w^{-1} theta)` equals the Gauss-sum product for every `w`.
pub fn stable_check(res: &NumeratorResult) -> CheckReport {
    let ctx = res.ctx();
    let group = ctx.group();
    let mut rep = CheckReport::new("stable");
    for w in 0..group.len() {
        let vertex = ctx.theta_minus_w_theta(group.inverse(w));
        let expected = stable_coefficient(ctx, w);
        let got = res.a(&vertex);
        rep.record(got == expected, || {
            format!(
                "w={} vertex={}: a={} expected {}",
                group.element(w).label(),
                fmt_point(&vertex),
                got,
                expected
            )
        });
    }
    rep
}

/// `a(0) = 1`, nonnegative exponents, polynomial in `q`.
pub fn structural_check(res: &NumeratorResult) -> CheckReport {
    let mut rep = CheckReport::new("structure");
    let outcome = res.assert_structure();
    rep.record(outcome.is_ok(), || outcome.unwrap_err().to_string());
    rep
}

/// All checks, in a fixed order.
pub fn verify_all(res: &NumeratorResult) -> Vec<CheckReport> {
    let mut limiting = limiting_condition_check(res, LimitingReading::ParitySwapped);
    let literal = limiting_condition_check(res, LimitingReading::AsStated);
    limiting.notes.push(format!(
        "m_i = 1 for even l_i; with m_i = 1 for odd l_i instead the check {}",
        if literal.passed { "holds" } else { "fails" }
    ));
    vec![
        structural_check(res),
        support_check(res),
        coeff_fe_check(res),
        action_identity_check(res),
        stable_check(res),
        invariance_check(res),
        limiting,
    ]
}
