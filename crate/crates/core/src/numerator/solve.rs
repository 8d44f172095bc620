//! Reconstruction of `N` from the coefficient relations alone.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{fe_relation, NumeratorResult, TwistContext};
use crate::error::{Error, Result};
use crate::polyring::{LaurentPoly, TPoly};
use crate::rootsys::{dominant_representative, dominant_weights_below, RootSystem, Weight};

/// Solves for `N(x; 0)` without averaging over `W`.
pub fn solve_untwisted(rs: &RootSystem) -> Result<NumeratorResult> {
    let ctx = TwistContext::new(rs, &vec![0; rs.rank()])?;
    solve_from_relations(&ctx)
}

/// Solves the coefficient relations for `N(x; l)`, seeded by `a(0) = 1`.
///
/// Points of `Pi` are `theta - v` with `v` in the orbit of a dominant
/// `xi <= theta`. Orbits are handled by decreasing height of `xi`. Within
/// an orbit the first value comes from the relation at `lambda = theta - xi`
/// and a node `k` fixing `xi` (where `mu = lambda`); the rest of the orbit is
/// reached by moving `v -> s_k v` whenever `<v, alpha_k> > 0`, each step
/// solving the relation at the current point for the new one. Every other
/// term involved belongs to a higher orbit or lies outside `Pi`.
///
/// Fails with [`Error::NotUniquelyDetermined`] at the first regular `xi`
/// other than `theta`.
pub fn solve_from_relations(ctx: &TwistContext) -> Result<NumeratorResult> {
    let rs = ctx.rs();
    let r = rs.rank();
    let theta = ctx.theta().clone();
    let poset = dominant_weights_below(rs, &theta);

    let in_pi = |lambda: &[i64]| -> bool {
        let v = theta.sub(&Weight::from_integer(lambda));
        dominant_representative(rs, &v)
            .sub(&theta)
            .coords()
            .iter()
            .all(|c| *c <= 0.into())
    };
    // <theta - lambda, alpha_k^vee>
    let pairing = |lambda: &[i64], k: usize| ctx.ell()[k] as i64 + 1 - rs.coroot_pairing(lambda, k);

    let mut known: FxHashMap<Vec<i64>, TPoly> = FxHashMap::default();

    for xi in poset.weights() {
        let start = theta
            .sub(xi)
            .to_integer()
            .expect("dominant weights below theta differ from it by roots");
        let value = if start.iter().all(|&c| c == 0) {
            TPoly::one()
        } else {
            let Some(k) = (0..r).find(|&k| pairing(&start, k) == 0) else {
                return Err(Error::NotUniquelyDetermined {
                    point: start,
                    reason: "regular dominant weight below theta".into(),
                });
            };
            let rel = fe_relation(ctx, &start, k).expect("mu = lambda here");
            solve_for(&rel, &start, &known, &in_pi)?
        };
        known.insert(start.clone(), value);

        let mut queue = VecDeque::from([start]);
        while let Some(lambda) = queue.pop_front() {
            for k in 0..r {
                let c = pairing(&lambda, k);
                if c <= 0 {
                    continue;
                }
                let mut mu = lambda.clone();
                mu[k] += c;
                if known.contains_key(&mu) {
                    continue;
                }
                let rel = fe_relation(ctx, &lambda, k).expect("mu > lambda");
                debug_assert_eq!(rel.mu, mu);
                let v = solve_for(&rel, &mu, &known, &in_pi)?;
                known.insert(mu.clone(), v);
                queue.push_back(mu);
            }
        }
    }

    let items: Vec<(Vec<i64>, TPoly)> = known.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let n = LaurentPoly::from_x_coeffs(r, items.iter().map(|(p, v)| (p.as_slice(), v)));
    let res = NumeratorResult::from_poly(ctx, n)?;
    res.assert_structure()?;
    Ok(res)
}

/// Solves `sum c_p a(p) = 0` for `a(target)`; every other term must be known
/// or outside `Pi`.
fn solve_for(
    rel: &super::FeRelation,
    target: &[i64],
    known: &FxHashMap<Vec<i64>, TPoly>,
    in_pi: &impl Fn(&[i64]) -> bool,
) -> Result<TPoly> {
    let mut lead = TPoly::zero();
    let mut rest = TPoly::zero();
    for (p, c) in &rel.terms {
        if p.as_slice() == target {
            lead = lead.add(c);
        } else if let Some(v) = known.get(p) {
            rest = rest.add(&c.mul(v));
        } else if in_pi(p) {
            return Err(Error::NotUniquelyDetermined {
                point: target.to_vec(),
                reason: format!("relation at k={} needs the unknown a{:?}", rel.k + 1, p),
            });
        }
    }
    if lead.is_zero() {
        return Err(Error::NotUniquelyDetermined {
            point: target.to_vec(),
            reason: "the relation does not involve this coefficient".into(),
        });
    }
    rest.neg().div_exact(&lead).ok_or_else(|| {
        Error::Structural(format!("a{target:?} is not a Laurent polynomial in t"))
    })
}
