//! Shared fixtures for the benchmarks.

use qwmds_core::numerator::TwistContext;
use qwmds_core::polyring::{Binomial, LaurentPoly, TermKey};
use qwmds_core::ratfun::RationalFn;
use qwmds_core::rootsys::{Family, RootSystem};

pub fn context(family: Family, rank: usize, ell: &[u32]) -> TwistContext {
    TwistContext::new(&RootSystem::new(family, rank).unwrap(), ell).unwrap()
}

/// A dense-ish Laurent polynomial in `rank` variables with small exponents.
pub fn dense_poly(rank: usize, width: i64) -> LaurentPoly {
    let mut terms = Vec::new();
    let mut x = vec![0i64; rank];
    let mut c: i128 = 1;
    loop {
        terms.push((TermKey::new(&x, (c % 5) as i32), c % 7 - 3));
        c += 1;
        let mut i = 0;
        while i < rank {
            x[i] += 1;
            if x[i] <= width {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
    }
    LaurentPoly::from_terms(rank, terms)
}

/// `1 - t x_1 x_2`, a typical denominator factor.
pub fn factor(rank: usize) -> Binomial {
    let mut x = vec![0i64; rank];
    x[0] = 1;
    if rank > 1 {
        x[1] = 1;
    }
    Binomial::signed(-1, 1, &x).unwrap()
}

/// `p / ((1 - t x_1 x_2)(1 + x_1^2))`.
pub fn rational(rank: usize) -> RationalFn {
    let mut x = vec![0i64; rank];
    x[0] = 2;
    let den = vec![factor(rank), Binomial::signed(1, 0, &x).unwrap()];
    RationalFn::new(dense_poly(rank, 2), den)
}
