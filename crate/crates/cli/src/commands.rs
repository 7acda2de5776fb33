use std::collections::BTreeMap;

use expdio::arith::primes_in_range;
use expdio::contfrac::{convergents, lemma35_expected, sqrt_cf};
use expdio::natural::parse_decimal;
use expdio::sieve::{abc_quality, full_report, CandidatePair};
use expdio::solver::{find_solutions, EquationInstance, SearchBounds};
use expdio::verify::{run_suite, SuiteLimits, SuiteOutcome};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::config::{AbcArgs, CfArgs, Command, RunConfig, SieveArgs, SolveArgs, VerifyArgs};
use crate::output::{emit, render, usage, CliError, PairKey, SieveStore};
use crate::record::{AbcPayload, CfPayload, ClosedFormCheck, ConvergentRecord, Payload, ResultRecord, SolvePayload};

/// Pairs evaluated between two appends to the output file.
pub const SIEVE_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Violation,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Violation => 1,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Status, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers as usize)
        .build()
        .map_err(|e| usage(e.to_string()))?;
    if cfg.resume && !matches!(cfg.command, Command::Sieve(_)) {
        return Err(usage("--resume applies to sieve only"));
    }
    let echo = cfg.command.echo();
    let name = cfg.command.name();
    pool.install(|| match &cfg.command {
        Command::Solve(a) => run_solve(cfg, name, &echo, a),
        Command::Sieve(a) => run_sieve(cfg, name, &echo, a),
        Command::Cf(a) => run_cf(cfg, name, &echo, a),
        Command::Verify(a) => run_verify(cfg, name, &echo, a),
        Command::Abcq(a) => run_abcq(cfg, name, &echo, a),
    })
}

fn big(name: &str, text: &str) -> Result<BigUint, CliError> {
    parse_decimal(text).ok_or_else(|| usage(format!("--{name}: {text:?} is not a decimal integer")))
}

fn finish(cfg: &RunConfig, records: &[ResultRecord]) -> Result<(), CliError> {
    let lines = records.iter().map(|r| render(r, cfg.format)).collect::<Result<Vec<_>, _>>()?;
    emit(cfg.out.as_deref(), cfg.format, &lines)
}

fn run_solve(cfg: &RunConfig, name: &str, echo: &BTreeMap<String, String>, a: &SolveArgs) -> Result<Status, CliError> {
    let inst = EquationInstance::new(big("a", &a.a)?, big("b", &a.b)?, big("c", &a.c)?, a.mode.into())
        .map_err(|e| usage(e.to_string()))?;
    let bounds = SearchBounds::new(a.max_z, a.max_bits).map_err(|e| usage(e.to_string()))?;
    let set = find_solutions(&inst, bounds).map_err(|e| usage(e.to_string()))?;
    finish(cfg, &[ResultRecord::new(name, echo, Payload::Solutions(SolvePayload::from(&set)))])?;
    Ok(Status::Success)
}

fn parse_range(flag: &str, text: &str) -> Result<(u64, u64), CliError> {
    let bad = || usage(format!("--{flag}: expected LO:HI with LO <= HI, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn run_sieve(cfg: &RunConfig, name: &str, echo: &BTreeMap<String, String>, a: &SieveArgs) -> Result<Status, CliError> {
    let pairs: Vec<(u64, u64)> = match (&a.p_range, &a.q_range) {
        (Some(pr), Some(qr)) => {
            let (plo, phi) = parse_range("p-range", pr)?;
            let (qlo, qhi) = parse_range("q-range", qr)?;
            let ps = primes_in_range(plo.max(3), phi);
            let qs = primes_in_range(qlo.max(3), qhi);
            ps.iter().flat_map(|&p| qs.iter().filter(move |&&q| q != p).map(move |&q| (p, q))).collect()
        }
        _ => Vec::new(),
    };

    let single = a.p.as_ref().map(|_| single_pair(a)).transpose()?;
    let mut store = SieveStore::open(cfg.out.as_deref(), cfg.format, cfg.resume)?;
    if let Some(pair) = single {
        let key: PairKey = (pair.p().clone(), pair.q().clone());
        if !store.contains(&key) {
            let rec = ResultRecord::new(name, echo, Payload::Sieve((&full_report(&pair)).into()));
            store.push_chunk(vec![(key, render(&rec, cfg.format)?)])?;
        }
        store.finish()?;
        return Ok(Status::Success);
    }

    let todo: Vec<(u64, u64)> = pairs
        .into_iter()
        .filter(|&(p, q)| !store.contains(&(BigUint::from(p), BigUint::from(q))))
        .collect();
    for chunk in todo.chunks(SIEVE_CHUNK) {
        let lines = chunk
            .par_iter()
            .map(|&(p, q)| {
                let pair = CandidatePair::new(p, q).expect("odd primes, p != q");
                let rec = ResultRecord::new(name, echo, Payload::Sieve((&full_report(&pair)).into()));
                Ok(((BigUint::from(p), BigUint::from(q)), render(&rec, cfg.format)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        store.push_chunk(lines)?;
    }
    store.finish()?;
    Ok(Status::Success)
}

fn single_pair(a: &SieveArgs) -> Result<CandidatePair<BigUint>, CliError> {
    let p = big("p", a.p.as_deref().unwrap_or_default())?;
    let q = big("q", a.q.as_deref().unwrap_or_default())?;
    CandidatePair::new(p, q).map_err(|e| usage(e.to_string()))
}

fn run_cf(cfg: &RunConfig, name: &str, echo: &BTreeMap<String, String>, a: &CfArgs) -> Result<Status, CliError> {
    let cf_err = |e: expdio::contfrac::ContFracError| usage(e.to_string());
    let payload = if a.lemma35 {
        let p = big("p", a.p.as_deref().unwrap_or_default())?;
        let n = a.n.unwrap_or(1);
        let (expected, expected_conv) = lemma35_expected(&p, n).map_err(cf_err)?;
        let d = expected.d().clone();
        let direct = sqrt_cf(&d).map_err(cf_err)?;
        let count = a.terms.unwrap_or(5).max(5);
        let conv = convergents(&d, count).map_err(cf_err)?;
        let matches = direct == expected && conv[..5] == expected_conv[..];
        let mut payload = CfPayload::new(&direct, &conv);
        payload.closed_form = Some(ClosedFormCheck {
            p: p.to_string(),
            n,
            expected_period: expected.period().iter().map(ToString::to_string).collect(),
            expected_convergents: expected_conv.iter().map(ConvergentRecord::from).collect(),
            matches,
        });
        payload
    } else {
        let d = big("d", a.d.as_deref().unwrap_or_default())?;
        let exp = sqrt_cf(&d).map_err(cf_err)?;
        let conv = exp.convergents(a.terms.unwrap_or(exp.s())).map_err(cf_err)?;
        CfPayload::new(&exp, &conv)
    };
    finish(cfg, &[ResultRecord::new(name, echo, Payload::Expansion(payload))])?;
    Ok(Status::Success)
}

fn run_verify(cfg: &RunConfig, name: &str, echo: &BTreeMap<String, String>, a: &VerifyArgs) -> Result<Status, CliError> {
    let limits = SuiteLimits {
        max: a.max,
        p_max: a.p_max,
        n_max: a.n_max,
        k_max: a.k_max,
        box_size: a.box_size,
        d_max: a.d_max,
        y_bound: a.y_bound,
    };
    let given = [limits.max, limits.p_max, limits.n_max, limits.k_max, limits.box_size, limits.d_max, limits.y_bound];
    if given.contains(&Some(0)) {
        return Err(usage("suite bounds must be positive"));
    }
    let outcome = run_suite(a.suite, &limits);
    let mut records: Vec<ResultRecord> =
        outcome.golden.iter().map(|g| ResultRecord::new(name, echo, Payload::Golden(g.clone()))).collect();
    records.extend(outcome.violations.iter().map(|v| ResultRecord::new(name, echo, Payload::Violation(v.clone()))));
    finish(cfg, &records)?;
    eprintln!("{}: {} checked, {} violation(s)", outcome.suite, outcome.checked, outcome.violations.len());
    Ok(status_of(&outcome))
}

/// Exit status for a finished suite: any violation is a failure.
pub fn status_of(outcome: &SuiteOutcome) -> Status {
    if outcome.passed() {
        Status::Success
    } else {
        Status::Violation
    }
}

fn run_abcq(cfg: &RunConfig, name: &str, echo: &BTreeMap<String, String>, a: &AbcArgs) -> Result<Status, CliError> {
    let t = abc_quality(&big("a", &a.a)?, &big("b", &a.b)?, &big("c", &a.c)?).map_err(|e| usage(e.to_string()))?;
    finish(cfg, &[ResultRecord::new(name, echo, Payload::Abc(AbcPayload::from(&t)))])?;
    Ok(Status::Success)
}
