//! Exact computation of the numerators `N(x; l)` of twisted quadratic Weyl
//! group multiple Dirichlet series for simply-laced root systems.

pub mod error;
pub mod globalseries;
pub mod numerator;
pub mod polyring;
pub mod ratfun;
pub mod rootsys;

pub use error::{Error, Result};
pub use numerator::{numerator_n, CheckReport, NumeratorResult, TwistContext};
pub use polyring::{parse_pretty, Binomial, LaurentPoly, TPoly, TermKey};
pub use ratfun::{RationalFn, TwistedAction};
pub use rootsys::{enumerate_weyl, Family, RootSystem, WeylGroup, Weight};
