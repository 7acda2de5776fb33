//! Tools for the exponential Diophantine equation `a^x + b^y = c^z`:
//! exact modular arithmetic, continued fractions of `sqrt(D)`, a bounded
//! solver, a sieve of necessary conditions on prime pairs, and property
//! suites that check the supporting lemmas over finite ranges.
//!
//! Most items are generic over [`Natural`]; the aliases below fix the
//! scalar to `u64` or to arbitrary precision.

pub mod arith;
pub mod contfrac;
pub mod natural;
pub mod sieve;
pub mod solver;
pub mod verify;

use num_bigint::BigUint;

pub use natural::{parse_decimal, Natural};

pub type BigNat = BigUint;

pub type PrimeModulus64 = arith::PrimeModulus<u64>;
pub type BigPrimeModulus = arith::PrimeModulus<BigUint>;

pub type SurdExpansion64 = contfrac::SurdExpansion<u64>;
pub type BigSurdExpansion = contfrac::SurdExpansion<BigUint>;
pub type BigConvergent = contfrac::Convergent<BigUint>;
pub type BigPellSolution = contfrac::PellSolution<BigUint>;

pub type BigEquationInstance = solver::EquationInstance<BigUint>;
pub type BigSolutionSet = solver::SolutionSet<BigUint>;

pub type CandidatePair64 = sieve::CandidatePair<u64>;
pub type BigCandidatePair = sieve::CandidatePair<BigUint>;
pub type BigSieveReport = sieve::SieveReport<BigUint>;
pub type BigAbcTriple = sieve::AbcTriple<BigUint>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
