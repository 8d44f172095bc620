//! The numerator `N(x; l)` of the averaged rational function, and the
//! structural checks it is expected to satisfy.
//!
//! `f(x; l) = Delta(x)^{-1} sum_w j(w, x) (1|w)(x)` and `N = f D`. Rather than
//! summing rational functions, the construction follows the polynomiality
//! argument directly: `P_w = j(w) (1|w) D_w` is a polynomial, with
//! `D_w = prod_{alpha in Phi(w)} (1 - q^{d(alpha)-1} x^{2 alpha})`, and
//!
//! ```text
//! P_{w s_i} = j(s_i) (1 - x_i^2) (P_w | s_i)      when l(w s_i) > l(w).
//! ```
//!
//! Then `h D = sum_w P_w prod_{alpha not in Phi(w)} D_alpha`, which is
//! divided exactly by the factors of `Delta`.

mod checks;
mod polytope;
mod solve;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Binomial, JsonTerm, LaurentPoly, TPoly, TermKey};
use crate::ratfun::{rf_add, rf_mul, RationalFn, TwistedAction};
use crate::rootsys::{
    enumerate_weyl, theta_of_twist, Family, RootSystem, WeylGroup, Weight, MAX_RANK,
};

pub use checks::{
    action_identity_check, coeff_fe_check, fe_relation, invariance_check,
    limiting_condition_check, stable_check, structural_check, support_check, support_check_with,
    verify_all, CheckReport, FeRelation, LimitingReading,
};
pub use polytope::Polytope;
pub use solve::{solve_from_relations, solve_untwisted};

/// A root system with a twisting parameter `l` and `theta = rho + sum l_k varpi_k`.
#[derive(Clone, Debug)]
pub struct TwistContext {
    group: Arc<WeylGroup>,
    ell: Vec<u32>,
    theta: Weight,
}

impl TwistContext {
    /// Enumerates the Weyl group with the default cap.
    pub fn new(rs: &RootSystem, ell: &[u32]) -> Result<Self> {
        TwistContext::with_group(Arc::new(enumerate_weyl(rs)?), ell)
    }

    pub fn with_group(group: Arc<WeylGroup>, ell: &[u32]) -> Result<Self> {
        let theta = theta_of_twist(group.root_system(), ell)?;
        debug_assert!(theta.is_regular_dominant(group.root_system()));
        Ok(TwistContext {
            group,
            ell: ell.to_vec(),
            theta,
        })
    }

    pub fn rs(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<WeylGroup> {
        Arc::clone(&self.group)
    }

    pub fn rank(&self) -> usize {
        self.rs().rank()
    }

    pub fn ell(&self) -> &[u32] {
        &self.ell
    }

    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    /// `d_theta(lambda) = <theta, lambda> = sum (l_i + 1) lambda_i`.
    pub fn d_theta(&self, lambda: &[i64]) -> i64 {
        self.ell
            .iter()
            .zip(lambda)
            .map(|(&l, &c)| (l as i64 + 1) * c)
            .sum()
    }

    /// `phi_k(mu) = l_k + sum_{j ~ k} mu_j`.
    pub fn phi(&self, k: usize, mu: &[i64]) -> i64 {
        self.ell[k] as i64 + self.rs().neighbors(k).iter().map(|j| mu[j]).sum::<i64>()
    }

    pub fn action(&self) -> TwistedAction {
        TwistedAction::new(self.rs(), &self.ell).expect("twist length checked at construction")
    }

    /// `theta - w theta` in root coordinates.
    pub fn theta_minus_w_theta(&self, w: usize) -> Vec<i64> {
        self.theta
            .sub(&self.group.reflect(w, &self.theta))
            .to_integer()
            .expect("theta - w theta lies in the root lattice")
    }

    /// Short label such as `A2 l=(1,0)`.
    pub fn label(&self) -> String {
        let ell: Vec<String> = self.ell.iter().map(|l| l.to_string()).collect();
        format!("{} l=({})", self.rs().name(), ell.join(","))
    }
}

fn root_binomial(root: &[i64], texp: i32) -> Binomial {
    let x: Vec<i64> = root.iter().map(|&c| 2 * c).collect();
    Binomial::new(texp, &x).expect("positive roots are nonzero and nonnegative")
}

/// Factors `1 - q^{d(alpha)} x^{2 alpha}` of `Delta`, one per positive root.
pub fn delta_factors(rs: &RootSystem) -> Vec<Binomial> {
    rs.positive_roots()
        .iter()
        .zip(rs.heights())
        .map(|(a, &h)| root_binomial(a, 2 * h as i32))
        .collect()
}

/// Factors `1 - q^{d(alpha) - 1} x^{2 alpha}` of `D`, one per positive root.
pub fn dd_factors(rs: &RootSystem) -> Vec<Binomial> {
    rs.positive_roots()
        .iter()
        .zip(rs.heights())
        .map(|(a, &h)| root_binomial(a, 2 * h as i32 - 2))
        .collect()
}

pub fn delta_poly(rs: &RootSystem) -> LaurentPoly {
    LaurentPoly::product_of(rs.rank(), &delta_factors(rs))
}

pub fn dd_poly(rs: &RootSystem) -> LaurentPoly {
    LaurentPoly::product_of(rs.rank(), &dd_factors(rs))
}

/// `j(w, x) = sgn(w) q^{d(rho - w^{-1} rho)} x^{2 (rho - w^{-1} rho)}`,
/// using `rho - w^{-1} rho = sum_{alpha in Phi(w)} alpha`.
pub fn j_factor(group: &WeylGroup, w: usize) -> LaurentPoly {
    let rs = group.root_system();
    let elt = group.element(w);
    let mut sum = vec![0i64; rs.rank()];
    for idx in elt.inversions().iter() {
        for (s, c) in sum.iter_mut().zip(&rs.positive_roots()[idx]) {
            *s += c;
        }
    }
    let height: i64 = sum.iter().sum();
    let x: Vec<i64> = sum.iter().map(|c| 2 * c).collect();
    LaurentPoly::monomial(rs.rank(), TermKey::new(&x, 2 * height as i32), elt.sign() as i128)
}

/// The step `P -> j(s_i) (1 - x_i^2) (P | s_i)` on polynomials.
///
/// With `l = l_i` and `P+-` the twisted parts of `P` at node `i`,
/// `(1 - x_i^2)(P|s_i) = (1 + x_i) [ -(1 - t^2 x_i) t^{l-2} x_i^{l-1} P+(s_i x)
/// + (1 - x_i) t^{l-1} x_i^{l-1} P-(s_i x) ]` and `j(s_i) = -t^2 x_i^2`.
pub(crate) fn lift_step(act: &TwistedAction, p: &LaurentPoly, i: usize) -> LaurentPoly {
    let rank = p.rank();
    let l = act.ell()[i] as i32;
    let pe = p.substitute(act.epsilon_sub(i));
    let (sum, diff) = (p + &pe, p - &pe);
    let (even, odd) = if l % 2 == 0 { (sum, diff) } else { (diff, sum) };
    let plus = even.div_scalar(2).expect("parts of an integral polynomial are integral");
    let minus = odd.div_scalar(2).expect("parts of an integral polynomial are integral");
    let gp = plus.substitute(act.sigma_sub(i));
    let gm = minus.substitute(act.sigma_sub(i));

    let mut xi = [0i64; MAX_RANK];
    xi[i] = 1;
    let one_minus_t2x = Binomial::from_key(1, TermKey::new(&xi[..rank], 2));
    let one_minus_x = Binomial::from_key(1, TermKey::new(&xi[..rank], 0));
    let one_plus_x = one_minus_x.conjugate();

    // j(s_i) t^{l-2} x_i^{l-1} = -t^l x_i^{l+1}
    let mut k_plus = TermKey::one();
    k_plus.x[i] = (l + 1) as i16;
    k_plus.t = l;
    let mut k_minus = k_plus;
    k_minus.t = l + 1;
    let first = gp.mul_binomial(&one_minus_t2x).scale_monomial(&k_plus, 1);
    let second = gm.mul_binomial(&one_minus_x).scale_monomial(&k_minus, -1);
    (&first + &second).mul_binomial(&one_plus_x)
}

/// `P_w prod_{alpha not in Phi(w)} D_alpha`.
fn contribution(p: &LaurentPoly, inversions: impl Fn(usize) -> bool, d: &[Binomial]) -> LaurentPoly {
    let mut out = p.clone();
    for (idx, b) in d.iter().enumerate() {
        if !inversions(idx) {
            out = out.mul_binomial(b);
        }
    }
    out
}

fn tree_sum(mut parts: Vec<LaurentPoly>, rank: usize) -> LaurentPoly {
    while parts.len() > 1 {
        parts = parts
            .par_chunks(2)
            .map(|c| if c.len() == 2 { &c[0] + &c[1] } else { c[0].clone() })
            .collect();
    }
    parts.pop().unwrap_or_else(|| LaurentPoly::zero(rank))
}

fn gate_experimental(rs: &RootSystem) -> Result<()> {
    if rs.family() == Family::E && rs.rank() >= 7 && !cfg!(feature = "experimental-e78") {
        return Err(Error::Experimental(format!("the numerator of {}", rs.name())));
    }
    Ok(())
}

/// Divides `h D` by `Delta` and checks the structural properties of `N`.
fn finish(ctx: &TwistContext, hd: LaurentPoly) -> Result<NumeratorResult> {
    let mut n = hd;
    for b in delta_factors(ctx.rs()) {
        n = n.divide_exact_binomial(&b)?;
    }
    let res = NumeratorResult {
        ctx: ctx.clone(),
        n,
    };
    res.assert_structure()?;
    Ok(res)
}

/// Computes `N(x; l)` by averaging over the enumerated Weyl group.
pub fn numerator_n(ctx: &TwistContext) -> Result<NumeratorResult> {
    gate_experimental(ctx.rs())?;
    let group = ctx.group();
    let rank = ctx.rank();
    let act = ctx.action();
    let d = dd_factors(ctx.rs());

    let levels = group.levels();
    let mut prev: Vec<LaurentPoly> = vec![LaurentPoly::one(rank)];
    let mut prev_start = 0usize;
    let mut partial = vec![contribution(&prev[0], |_| false, &d)];
    for range in levels.into_iter().skip(1) {
        let start = range.start;
        let cur: Vec<LaurentPoly> = range
            .clone()
            .into_par_iter()
            .map(|w| {
                let (parent, i) = group.parent(w).expect("non-identity element");
                lift_step(&act, &prev[parent - prev_start], i)
            })
            .collect();
        let level_sum = tree_sum(
            cur.par_iter()
                .zip(range.clone().into_par_iter())
                .map(|(p, w)| {
                    let inv = group.element(w).inversions();
                    contribution(p, |idx| inv.contains(idx), &d)
                })
                .collect(),
            rank,
        );
        partial.push(level_sum);
        prev = cur;
        prev_start = start;
    }
    finish(ctx, tree_sum(partial, rank))
}

/// The same construction as [`numerator_n`], walking `W` depth-first
/// without storing the group: each element is reached from its parent
/// `w s_i` where `i` is its largest right descent. Memory is bounded by the
/// word length; this is the only route available for `E7` and `E8`.
pub fn numerator_streaming(rs: &RootSystem, ell: &[u32]) -> Result<LaurentPoly> {
    gate_experimental(rs)?;
    let act = TwistedAction::new(rs, ell)?;
    let r = rs.rank();
    let d = dd_factors(rs);
    let roots = rs.positive_roots();

    let mut identity = vec![0i64; r * r];
    for i in 0..r {
        identity[i * r + i] = 1;
    }

    // Column j of M_w is w alpha_j; alpha_j is a right descent iff it is negative.
    fn is_negative_col(m: &[i64], r: usize, j: usize) -> bool {
        (0..r).any(|a| m[a * r + j] < 0)
    }
    fn right_mul(m: &[i64], cartan: &[Vec<i64>], r: usize, i: usize) -> Vec<i64> {
        let mut next = m.to_vec();
        for a in 0..r {
            let mi = m[a * r + i];
            if mi != 0 {
                for b in 0..r {
                    next[a * r + b] -= mi * cartan[i][b];
                }
            }
        }
        next
    }
    fn visit(
        m: Vec<i64>,
        p: LaurentPoly,
        ctx: (&TwistedAction, &[Binomial], &[Vec<i64>], &RootSystem),
    ) -> LaurentPoly {
        let (act, d, roots, rs) = ctx;
        let r = rs.rank();
        let inverted = |idx: usize| {
            let root = &roots[idx];
            (0..r)
                .map(|a| (0..r).map(|b| m[a * r + b] * root[b]).sum::<i64>())
                .sum::<i64>()
                < 0
        };
        let mut acc = contribution(&p, inverted, d);
        for i in 0..r {
            if is_negative_col(&m, r, i) {
                continue;
            }
            let child = right_mul(&m, rs.cartan(), r, i);
            // i must be the largest right descent of the child.
            if (i + 1..r).any(|j| is_negative_col(&child, r, j)) {
                continue;
            }
            let cp = lift_step(act, &p, i);
            acc = &acc + &visit(child, cp, ctx);
        }
        acc
    }

    let hd = visit(identity, LaurentPoly::one(r), (&act, &d, roots, rs));
    let mut n = hd;
    for b in delta_factors(rs) {
        n = n.divide_exact_binomial(&b)?;
    }
    Ok(n)
}

/// Reference construction through the rational-function action: sums
/// `j(w) (1|w)` as rational functions and clears denominators at the end.
/// Much slower than [`numerator_n`]; used as an independent check.
pub fn numerator_via_action(ctx: &TwistContext) -> Result<LaurentPoly> {
    let group = ctx.group();
    let act = ctx.action();
    let rank = ctx.rank();
    let mut h = RationalFn::zero(rank);
    for (w, elt) in group.elements().iter().enumerate() {
        let one_w = act.act_word(&RationalFn::one(rank), elt.word())?;
        let term = rf_mul(&RationalFn::from_poly(j_factor(group, w)), &one_w)?;
        h = rf_add(&h, &term)?;
    }
    // N = h D / Delta
    let f = RationalFn::new(
        h.num().checked_mul(&dd_poly(ctx.rs()))?,
        [h.den(), &delta_factors(ctx.rs())[..]].concat(),
    )
    .normalize();
    if !f.den().is_empty() {
        return Err(Error::Structural(format!(
            "{} denominator factors survive in h D / Delta",
            f.den().len()
        )));
    }
    Ok(f.num().clone())
}

/// `prod_{alpha in Phi(w^{-1})} g(d_theta(alpha))` with `g(d) = t^{d-1}` for
/// odd `d` and `-t^{d-2}` for even `d`: the Gauss-sum value of the
/// coefficient at the vertex `theta - w^{-1} theta`.
pub fn stable_coefficient(ctx: &TwistContext, w: usize) -> TPoly {
    let group = ctx.group();
    let winv = group.inverse(w);
    let roots = ctx.rs().positive_roots();
    let mut sign = 1i128;
    let mut texp = 0i32;
    for idx in group.element(winv).inversions().iter() {
        let d = ctx.d_theta(&roots[idx]) as i32;
        if d % 2 == 1 {
            texp += d - 1;
        } else {
            texp += d - 2;
            sign = -sign;
        }
    }
    TPoly::monomial(texp, sign)
}

/// A computed numerator with its context.
#[derive(Clone, Debug)]
pub struct NumeratorResult {
    ctx: TwistContext,
    n: LaurentPoly,
}

/// Versioned JSON form of a numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NumeratorJson {
    pub schema: String,
    pub root_system: String,
    pub ell: Vec<u32>,
    /// Number of distinct `x`-monomials.
    pub monomials: usize,
    #[serde(rename = "N")]
    pub n: Vec<JsonTerm>,
}

pub const NUMERATOR_SCHEMA: &str = "qwmds/numerator/v1";

impl NumeratorResult {
    /// Wraps an externally supplied polynomial (e.g. a fixture) for checking.
    pub fn from_poly(ctx: &TwistContext, n: LaurentPoly) -> Result<Self> {
        if n.rank() != ctx.rank() {
            return Err(Error::RankMismatch {
                left: n.rank(),
                right: ctx.rank(),
            });
        }
        Ok(NumeratorResult {
            ctx: ctx.clone(),
            n,
        })
    }

    pub fn ctx(&self) -> &TwistContext {
        &self.ctx
    }

    pub fn n(&self) -> &LaurentPoly {
        &self.n
    }

    /// `a_lambda` as a polynomial in `t`.
    pub fn a(&self, lambda: &[i64]) -> TPoly {
        self.n.coeff_of_x(lambda)
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.n.support()
    }

    pub fn coefficients(&self) -> Vec<(Vec<i64>, TPoly)> {
        self.n.by_x()
    }

    /// `a(0) = 1`, nonnegative `x`-exponents, and a polynomial in `q`.
    pub fn assert_structure(&self) -> Result<()> {
        if !self.n.is_polynomial_in_x() {
            return Err(Error::Structural("negative x-exponent in N".into()));
        }
        if !self.n.is_q_integral() {
            return Err(Error::Structural("N is not a polynomial in q".into()));
        }
        if !self.a(&vec![0; self.ctx.rank()]).is_one() {
            return Err(Error::Structural("constant term of N is not 1".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> NumeratorJson {
        NumeratorJson {
            schema: NUMERATOR_SCHEMA.into(),
            root_system: self.ctx.rs().name(),
            ell: self.ctx.ell().to_vec(),
            monomials: self.n.support().len(),
            n: self.n.to_json_terms(),
        }
    }

    /// Reads a numerator back, rejecting a mismatched context.
    pub fn from_json(ctx: &TwistContext, json: &NumeratorJson) -> Result<Self> {
        if json.root_system != ctx.rs().name() || json.ell != ctx.ell() {
            return Err(Error::Parse(format!(
                "numerator for {} l={:?} does not match {}",
                json.root_system,
                json.ell,
                ctx.label()
            )));
        }
        let n = LaurentPoly::from_json_terms(ctx.rank(), &json.n)?;
        NumeratorResult::from_poly(ctx, n)
    }
}
