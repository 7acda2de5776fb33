//! Necessary conditions on an odd prime pair `(p, q)` for
//! `2^x + p^y = q^z` to have two solutions, evaluated one by one so a
//! report shows exactly which conditions fail.

mod quality;

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{eth_power_residue, is_prime, v2, ArithError, PrimeModulus};
use crate::natural::{nat, Natural};

pub use quality::{
    abc_quality, eq13_quality_bound, ln_fixed, ln_natural, quality_at_precision, AbcTriple, ABC_FACTOR_CAP_BITS,
};

/// Lower bound on `p` below which two solutions are already excluded.
pub const P_FLOOR: u64 = 1_000_000_000;
/// Lower bound on `q` below which two solutions are already excluded.
pub const Q_FLOOR: u64 = 1_000_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid solution shape: {0}")]
    InvalidShape(&'static str),
    #[error("invalid abc input: {0}")]
    AbcInput(String),
    #[error("quality evaluations at two precisions disagree: {0} vs {1}")]
    PrecisionMismatch(String, String),
}

/// Two distinct odd primes, `p` the base of the `y` exponent and `q` the base of `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidatePair<T: Natural> {
    p: T,
    q: T,
}

impl<T: Natural> CandidatePair<T> {
    pub fn new(p: T, q: T) -> Result<Self, SieveError> {
        for v in [&p, &q] {
            if v.is_even() || !is_prime(v) {
                return Err(SieveError::InvalidPair(format!("{v} is not an odd prime")));
            }
        }
        if p == q {
            return Err(SieveError::InvalidPair("p and q must differ".into()));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn v2_p_minus_1(&self) -> u64 {
        v2(&(self.p.clone() - T::one())).expect("p >= 3")
    }

    pub fn v2_q_minus_1(&self) -> u64 {
        v2(&(self.q.clone() - T::one())).expect("q >= 3")
    }
}

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Error(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn from_result(r: Result<bool, SieveError>) -> Self {
        match r {
            Ok(true) => Verdict::Pass,
            Ok(false) => Verdict::Fail,
            Err(SieveError::NotApplicable(_)) => Verdict::NotApplicable,
            Err(e) => Verdict::Error(e.to_string()),
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("true"),
            Verdict::Fail => f.write_str("false"),
            Verdict::NotApplicable => f.write_str("n/a"),
            Verdict::Error(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(Verdict::Pass),
            "false" => Ok(Verdict::Fail),
            "n/a" => Ok(Verdict::NotApplicable),
            other => other
                .strip_prefix("error: ")
                .map(|m| Verdict::Error(m.to_string()))
                .ok_or_else(|| format!("unrecognised verdict {other:?}")),
        }
    }
}

// JSON form: a boolean, or the string "n/a" / "error: ...".
impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Pass => serializer.serialize_bool(true),
            Verdict::Fail => serializer.serialize_bool(false),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Bool(b) => Ok(b.into()),
            Raw::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}

/// The three residue classes mod 24 left open before the mod-48 refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mod24Class {
    #[serde(rename = "13,5")]
    P13Q5,
    #[serde(rename = "13,17")]
    P13Q17,
    #[serde(rename = "1,17")]
    P1Q17,
}

pub fn legacy_mod24_class<T: Natural>(pair: &CandidatePair<T>) -> Option<Mod24Class> {
    let m = |v: &T| (v.clone() % nat::<T>(24)).to_u64().expect("below 24");
    match (m(&pair.p), m(&pair.q)) {
        (13, 5) => Some(Mod24Class::P13Q5),
        (13, 17) => Some(Mod24Class::P13Q17),
        (1, 17) => Some(Mod24Class::P1Q17),
        _ => None,
    }
}

/// `p = 1 (mod 48)` and `q = 17 (mod 48)`.
pub fn cong48_check<T: Natural>(pair: &CandidatePair<T>) -> bool {
    let m48: T = nat(48);
    pair.p.clone() % m48.clone() == nat(1) && pair.q.clone() % m48 == nat(17)
}

/// `v2(p - 1)` even and at most `v2(q - 1)`.
pub fn valuation_check<T: Natural>(pair: &CandidatePair<T>) -> bool {
    let vp = pair.v2_p_minus_1();
    vp % 2 == 0 && vp <= pair.v2_q_minus_1()
}

/// At least one of the orders `u_p(q)`, `u_q(p)` is odd.
pub fn order_parity_check<T: Natural>(pair: &CandidatePair<T>) -> Result<bool, SieveError> {
    let mp = PrimeModulus::new(pair.p.clone())?;
    let mq = PrimeModulus::new(pair.q.clone())?;
    let up = mp.multiplicative_order(&pair.q)?;
    if up.is_odd() {
        return Ok(true);
    }
    Ok(mq.multiplicative_order(&pair.p)?.is_odd())
}

/// 2 is an eighth power modulo `q`, unless `v2(p - 1) = v2(q - 1) = 4`.
/// Only meaningful when `8 | q - 1`; other `q` give `NotApplicable`.
pub fn octic_check<T: Natural>(pair: &CandidatePair<T>) -> Result<bool, SieveError> {
    let vq = pair.v2_q_minus_1();
    if vq < 3 {
        return Err(SieveError::NotApplicable(format!("8 does not divide q - 1 = {}", pair.q.clone() - T::one())));
    }
    if pair.v2_p_minus_1() == 4 && vq == 4 {
        return Ok(true);
    }
    Ok(eth_power_residue(&nat::<T>(2), &pair.q, 8)?)
}

/// Exponents of a hypothetical pair of solutions
/// `2^x1 + p^y1 = q` and `2^x2 + p^y2 = q^z2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionShape {
    pub x1: u64,
    pub y1: u64,
    pub x2: u64,
    pub y2: u64,
    pub z2: u64,
}

impl SolutionShape {
    /// Requires `x1, y1, x2` even, `y2` odd, `z2` odd and above 1.
    pub fn new(x1: u64, y1: u64, x2: u64, y2: u64, z2: u64) -> Result<Self, SieveError> {
        if x1 == 0 || y1 == 0 || x2 == 0 || y2 == 0 {
            return Err(SieveError::InvalidShape("exponents must be positive"));
        }
        if x1 % 2 != 0 || y1 % 2 != 0 {
            return Err(SieveError::InvalidShape("x1 and y1 must be even"));
        }
        if x2 % 2 != 0 || y2 % 2 == 0 {
            return Err(SieveError::InvalidShape("x2 must be even and y2 odd"));
        }
        if z2 % 2 == 0 || z2 < 3 {
            return Err(SieveError::InvalidShape("z2 must be odd and greater than 1"));
        }
        Ok(Self { x1, y1, x2, y2, z2 })
    }

    pub fn z1(&self) -> u64 {
        1
    }
}

/// Lower bounds on `x1`, `x2` given `v2(p - 1)`, `v2(q - 1)`:
/// `x1 >= 28` or `x2 >= 88`; if `v2p = v2q <= 27` then `x2 >= 88`; if
/// `v2p < v2q` and `v2p <= 87` then `x1 >= 28`.
pub fn theorem14_bounds(shape: &SolutionShape, v2p: u64, v2q: u64) -> bool {
    let either = shape.x1 >= 28 || shape.x2 >= 88;
    let equal_case = !(v2p == v2q && v2p <= 27) || shape.x2 >= 88;
    let less_case = !(v2p < v2q && v2p <= 87) || shape.x1 >= 28;
    either && equal_case && less_case
}

/// The two admissible valuation patterns: `x1 = v2(p-1) = v2(q-1)`, or
/// `x2 = v2(p-1) < v2(q-1)`.
pub fn shape_consistency<T: Natural>(shape: &SolutionShape, pair: &CandidatePair<T>) -> bool {
    shape_consistency_valuations(shape, pair.v2_p_minus_1(), pair.v2_q_minus_1())
}

pub fn shape_consistency_valuations(shape: &SolutionShape, v2p: u64, v2q: u64) -> bool {
    let equal = shape.x1 == v2p && v2p == v2q;
    let less = shape.x2 == v2p && v2p < v2q;
    equal != less
}

/// Per-condition verdicts for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveReport<T: Natural> {
    pub pair: CandidatePair<T>,
    pub cong48: Verdict,
    pub val_order: Verdict,
    pub order_parity: Verdict,
    pub octic: Verdict,
    /// `p > 10^9`; informational.
    pub size_p: bool,
    /// `q > 10^18`; informational.
    pub size_q: bool,
    /// Informational.
    pub legacy_mod24: Option<Mod24Class>,
    /// All four necessary conditions pass.
    pub survives: bool,
}

/// Evaluates every condition independently; an error in one condition is
/// recorded in that verdict and counts as not surviving.
pub fn full_report<T: Natural>(pair: &CandidatePair<T>) -> SieveReport<T> {
    let cong48 = Verdict::from(cong48_check(pair));
    let val_order = Verdict::from(valuation_check(pair));
    let order_parity = Verdict::from_result(order_parity_check(pair));
    let octic = Verdict::from_result(octic_check(pair));
    let survives = [&cong48, &val_order, &order_parity, &octic].iter().all(|v| v.is_pass());
    SieveReport {
        pair: pair.clone(),
        size_p: pair.p > nat(P_FLOOR),
        size_q: pair.q > nat(Q_FLOOR),
        legacy_mod24: legacy_mod24_class(pair),
        cong48,
        val_order,
        order_parity,
        octic,
        survives,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn pair(p: u64, q: u64) -> CandidatePair<u64> {
        CandidatePair::new(p, q).unwrap()
    }

    fn brute_order(n: u64, p: u64) -> u64 {
        let mut x = n % p;
        let mut t = 1;
        while x != 1 {
            x = x * n % p;
            t += 1;
        }
        t
    }

    #[test]
    fn pair_validation() {
        assert!(CandidatePair::new(15u64, 17).is_err());
        assert!(CandidatePair::new(2u64, 17).is_err());
        assert!(CandidatePair::new(17u64, 17).is_err());
    }

    #[test]
    fn cong48_examples() {
        assert!(cong48_check(&pair(193, 113)));
        assert!(!cong48_check(&pair(13, 17)));
        assert!(cong48_check(&pair(97, 113)));
    }

    #[test]
    fn valuation_examples() {
        assert!(valuation_check(&pair(241, 113)));
        assert!(!valuation_check(&pair(97, 113)));
        assert!(!valuation_check(&pair(193, 113)));
    }

    #[test]
    fn order_parity_examples() {
        assert!(order_parity_check(&pair(7, 3)).unwrap());
        assert!(order_parity_check(&pair(5, 11)).unwrap());
        let expect = brute_order(113, 241) % 2 == 1 || brute_order(241, 113) % 2 == 1;
        assert_eq!(order_parity_check(&pair(241, 113)).unwrap(), expect);
        for (p, q) in [(13u64, 17u64), (17, 13), (193, 257), (97, 113), (3, 5)] {
            let expect = brute_order(q, p) % 2 == 1 || brute_order(p, q) % 2 == 1;
            assert_eq!(order_parity_check(&pair(p, q)).unwrap(), expect, "({p},{q})");
        }
    }

    #[test]
    fn octic_examples() {
        // v2(16) = v2(112) = 4: exempt
        assert!(octic_check(&pair(17, 113)).unwrap());
        // v2(193 - 1) = 6; 257 = 1 + 256 makes 2 an octic residue
        assert!(octic_check(&pair(193, 257)).unwrap());
        assert!(!octic_check(&pair(193, 97)).unwrap());
        assert!(matches!(octic_check(&pair(193, 13)), Err(SieveError::NotApplicable(_))));
    }

    #[test]
    fn theorem14_examples() {
        let s = SolutionShape::new(28, 2, 2, 1, 3).unwrap();
        assert!(theorem14_bounds(&s, 4, 6));
        let s = SolutionShape::new(4, 2, 88, 1, 3).unwrap();
        assert!(theorem14_bounds(&s, 4, 4));
        let s = SolutionShape::new(4, 2, 4, 1, 3).unwrap();
        assert!(!theorem14_bounds(&s, 4, 4));
        assert!(!theorem14_bounds(&s, 4, 6));
        // x1 >= 28 alone is not enough when v2p = v2q <= 27
        let s = SolutionShape::new(28, 2, 4, 1, 3).unwrap();
        assert!(!theorem14_bounds(&s, 4, 4));
        assert!(theorem14_bounds(&s, 28, 28));
    }

    #[test]
    fn shape_validation() {
        assert!(SolutionShape::new(3, 2, 2, 1, 3).is_err());
        assert!(SolutionShape::new(2, 2, 2, 2, 3).is_err());
        assert!(SolutionShape::new(2, 2, 2, 1, 1).is_err());
        assert!(SolutionShape::new(2, 2, 2, 1, 4).is_err());
    }

    #[test]
    fn shape_consistency_examples() {
        let s = SolutionShape::new(4, 2, 2, 1, 3).unwrap();
        assert!(shape_consistency(&s, &pair(17, 113)));
        let s = SolutionShape::new(6, 2, 4, 1, 3).unwrap();
        assert!(shape_consistency(&s, &pair(17, 193)));
        let s = SolutionShape::new(2, 2, 2, 1, 3).unwrap();
        assert!(!shape_consistency(&s, &pair(17, 113)));
    }

    #[test]
    fn report_examples() {
        let r = full_report(&pair(13, 17));
        assert_eq!(r.cong48, Verdict::Fail);
        assert!(!r.survives);
        assert_eq!(r.legacy_mod24, Some(Mod24Class::P13Q17));

        let r = full_report(&pair(241, 113));
        assert_eq!(r.cong48, Verdict::Pass);
        assert_eq!(r.val_order, Verdict::Pass);
        assert_eq!(r.octic, Verdict::Pass);
        assert_eq!(r.survives, r.order_parity.is_pass());
        assert!(!r.size_p && !r.size_q);

        let r = full_report(&pair(3, 5));
        assert!(!r.survives);
        assert_eq!(r.octic, Verdict::NotApplicable);
    }

    #[test]
    fn report_on_big_pair() {
        // p > 10^9 and q > 10^18, both prime
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(1_000_000_000_000_000_003u64);
        let r = full_report(&CandidatePair::new(p, q).unwrap());
        assert!(r.size_p && r.size_q);
        assert!(!matches!(r.order_parity, Verdict::Error(_)));
    }

    #[test]
    fn verdict_text_round_trip() {
        for v in [Verdict::Pass, Verdict::Fail, Verdict::NotApplicable, Verdict::Error("boom".into())] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
    }
}
