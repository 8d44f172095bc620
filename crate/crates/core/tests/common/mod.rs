#![allow(dead_code)]

use qwmds_core::polyring::{Binomial, LaurentPoly, TermKey};
use qwmds_core::ratfun::RationalFn;
use qwmds_core::rootsys::RootSystem;
use rand::Rng;

/// The six printed `A_2` numerators, keyed by `l`.
pub const A2_GOLDENS: [([u32; 2], &str); 6] = [
    ([0, 0], "1 + x + y - x^2 y - x y^2 - x^2 y^2"),
    ([1, 0], "1-x^2+y+(q-1) x^2 y+q x^3 y-q x^2 y^3-q x^3 y^3"),
    ([1, 1], "1-x^2-y^2+(1-q) x^2 y^2+q x^4 y^2+q x^2 y^4-q x^4 y^4"),
    (
        [2, 0],
        "1+(q-1) x^2+q x^3+y+(q-1) x^2 y-q x^4 y+(q^2-q) x^2 y^2+(q^2-q) x^3 y^2\
         +(q^2-q) x^2 y^3+(q-q^2) x^4 y^3-q^2 x^3 y^4-q^2 x^4 y^4",
    ),
    (
        [2, 1],
        "1+(q-1) x^2+q x^3-y^2+(1-2 q+q^2) x^2 y^2+(q^2-q) x^3 y^2+(q-q^2) x^4 y^2\
         -q^2 x^5 y^2+(q-q^2) x^2 y^4+(q^3-q^2) x^3 y^4+(q^2-q) x^4 y^4\
         + (q^2-q^3) x^5 y^4+q^3 x^3 y^5-q^3 x^5 y^5",
    ),
    (
        [2, 2],
        "1+(q-1) x^2+q x^3+(q-1) y^2+(1-3 q+2 q^2) x^2 y^2+(q^2-q) x^3 y^2\
         +(q-2 q^2+q^3) x^4 y^2+(q^3-q^2) x^5 y^2+q y^3+(q^2-q) x^2 y^3\
         +(q^3-q^2) x^4 y^3-q^3 x^6 y^3+(q-2 q^2+q^3) x^2 y^4+(q^3-q^2) x^3 y^4\
         +(q^4-2 q^3+2 q^2-q) x^4 y^4+ (q^2-2 q^3+q^4) x^5 y^4+(q^3-q^2) x^2 y^5\
         +(q^2-2 q^3+q^4) x^4 y^5+(q^3-q^4) x^6 y^5-q^3 x^3 y^6+(q^3-q^4) x^5 y^6\
         -q^4 x^6 y^6",
    ),
];

/// All `l` with `r` entries summing to at most `max`.
pub fn twists_up_to(r: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            go(r, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, max, &mut Vec::new(), &mut out);
    out.sort_by_key(|l| (l.iter().sum::<u32>(), l.clone()));
    out
}

/// A random element of the function field whose denominator is built from
/// factors `1 - +-t^k x^{m alpha}` over positive roots, so that every
/// reflection keeps it well formed.
pub fn random_rational(rs: &RootSystem, rng: &mut impl Rng) -> RationalFn {
    let r = rs.rank();
    let nterms = rng.gen_range(1..=4);
    let num = LaurentPoly::from_terms(
        r,
        (0..nterms).map(|_| {
            let x: Vec<i64> = (0..r).map(|_| rng.gen_range(-1..=2)).collect();
            (TermKey::new(&x, rng.gen_range(-2..=2)), rng.gen_range(-3i128..=3))
        }),
    );
    let roots = rs.positive_roots();
    let den = (0..rng.gen_range(0..=2))
        .map(|_| {
            let a = &roots[rng.gen_range(0..roots.len())];
            let m = rng.gen_range(1..=2);
            let x: Vec<i64> = a.iter().map(|c| m * c).collect();
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            Binomial::signed(sign, rng.gen_range(0..=3), &x).unwrap()
        })
        .collect();
    RationalFn::new(num, den)
}
