//! One output record per result. Field order is fixed by declaration order;
//! integers that may exceed 64 bits are decimal strings.

use std::collections::BTreeMap;

use expdio::contfrac::{Convergent, SurdExpansion};
use expdio::natural::Natural;
use expdio::sieve::{AbcTriple, Mod24Class, SieveReport, Verdict};
use expdio::solver::{Mode, SolutionSet, SolutionTriple};
use expdio::verify::{GoldenRecord, Violation};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = "expdio";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub payload: Payload,
}

impl ResultRecord {
    pub fn new(command: &str, input: &BTreeMap<String, String>, payload: Payload) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: input.clone(),
            payload,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Solutions(SolvePayload),
    Sieve(SievePayload),
    Expansion(CfPayload),
    Golden(GoldenRecord),
    Violation(Violation),
    Abc(AbcPayload),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvePayload {
    pub a: String,
    pub b: String,
    pub c: String,
    pub mode: Mode,
    pub max_z: u32,
    pub max_bits: u64,
    pub count: usize,
    pub solutions: Vec<SolutionTriple>,
    pub exhaustive: bool,
}

impl<T: Natural> From<&SolutionSet<T>> for SolvePayload {
    fn from(set: &SolutionSet<T>) -> Self {
        Self {
            a: set.instance.a().to_string(),
            b: set.instance.b().to_string(),
            c: set.instance.c().to_string(),
            mode: set.instance.mode(),
            max_z: set.bounds.max_z,
            max_bits: set.bounds.max_bits,
            count: set.solutions.len(),
            solutions: set.solutions.clone(),
            exhaustive: set.exhaustive_within_bounds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SievePayload {
    pub p: String,
    pub q: String,
    pub cong48: Verdict,
    pub val_order: Verdict,
    pub order_parity: Verdict,
    pub octic: Verdict,
    pub size_p: bool,
    pub size_q: bool,
    pub legacy_mod24: Option<Mod24Class>,
    pub survives: bool,
}

impl<T: Natural> From<&SieveReport<T>> for SievePayload {
    fn from(r: &SieveReport<T>) -> Self {
        Self {
            p: r.pair.p().to_string(),
            q: r.pair.q().to_string(),
            cong48: r.cong48.clone(),
            val_order: r.val_order.clone(),
            order_parity: r.order_parity.clone(),
            octic: r.octic.clone(),
            size_p: r.size_p,
            size_q: r.size_q,
            legacy_mod24: r.legacy_mod24,
            survives: r.survives,
        }
    }
}

/// Column order of the CSV sieve output.
pub const CSV_HEADER: [&str; 9] = ["p", "q", "cong48", "val_order", "order_parity", "octic", "size_p", "size_q", "survives"];

impl SievePayload {
    pub fn csv_row(&self) -> [String; 9] {
        [
            self.p.clone(),
            self.q.clone(),
            self.cong48.to_string(),
            self.val_order.to_string(),
            self.order_parity.to_string(),
            self.octic.to_string(),
            self.size_p.to_string(),
            self.size_q.to_string(),
            self.survives.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentRecord {
    pub m: usize,
    pub p: String,
    pub q: String,
    pub k: String,
}

impl<T: Natural> From<&Convergent<T>> for ConvergentRecord {
    fn from(c: &Convergent<T>) -> Self {
        Self { m: c.m, p: c.p.to_string(), q: c.q.to_string(), k: c.k.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub p: String,
    pub n: u32,
    pub expected_period: Vec<String>,
    pub expected_convergents: Vec<ConvergentRecord>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfPayload {
    pub d: String,
    pub a0: String,
    pub period: Vec<String>,
    pub s: usize,
    pub convergents: Vec<ConvergentRecord>,
    pub closed_form: Option<ClosedFormCheck>,
}

impl CfPayload {
    pub fn new<T: Natural>(exp: &SurdExpansion<T>, conv: &[Convergent<T>]) -> Self {
        Self {
            d: exp.d().to_string(),
            a0: exp.a0().to_string(),
            period: exp.period().iter().map(ToString::to_string).collect(),
            s: exp.s(),
            convergents: conv.iter().map(ConvergentRecord::from).collect(),
            closed_form: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbcPayload {
    pub a: String,
    pub b: String,
    pub c: String,
    pub rad: String,
    pub quality: f64,
}

impl<T: Natural> From<&AbcTriple<T>> for AbcPayload {
    fn from(t: &AbcTriple<T>) -> Self {
        Self {
            a: t.a.to_string(),
            b: t.b.to_string(),
            c: t.c.to_string(),
            rad: t.rad.to_string(),
            quality: t.quality,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use expdio::sieve::{full_report, CandidatePair};

    fn round_trip(r: &ResultRecord) {
        let line = serde_json::to_string(r).unwrap();
        let back: ResultRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(&back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), line);
    }

    #[test]
    fn sieve_record_round_trips() {
        let mut input = BTreeMap::new();
        input.insert("p".to_string(), "3".to_string());
        for (p, q) in [(3u64, 5u64), (241, 113), (13, 17)] {
            let report = full_report(&CandidatePair::new(p, q).unwrap());
            round_trip(&ResultRecord::new("sieve", &input, Payload::Sieve((&report).into())));
        }
    }

    #[test]
    fn sieve_record_uses_plain_json_values() {
        let report = full_report(&CandidatePair::new(3u64, 5).unwrap());
        let v = serde_json::to_value(SievePayload::from(&report)).unwrap();
        assert_eq!(v["p"], "3");
        assert_eq!(v["octic"], "n/a");
        assert_eq!(v["cong48"], false);
        assert_eq!(v["legacy_mod24"], serde_json::Value::Null);
    }

    #[test]
    fn abc_record_round_trips() {
        let t = expdio::sieve::abc_quality(&2u64, &6_436_341, &6_436_343).unwrap();
        round_trip(&ResultRecord::new("abcq", &BTreeMap::new(), Payload::Abc((&t).into())));
    }
}
