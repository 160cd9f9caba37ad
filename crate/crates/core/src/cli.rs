//! The `rplus` command line. Every command prints JSON on stdout; errors go
//! to stderr. Exit codes: 0 member / valid, 1 non-member / invalid, 2 error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::primes_up_to;
use crate::certificate::verify_certificate_at;
use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};
use crate::json;
use crate::membership::{
    classify, decide_membership_with, generator_presentation, inverse_prime_in, verify_witness, Classification,
    DecideOptions,
};
use crate::negone::certify_negative_one;
use crate::oracle::{brute_force_certificate, SearchOutcome};
use crate::padic::places;
use crate::poly::RatPoly;

#[derive(Parser, Debug)]
#[command(name = "rplus", version, about = "Membership in R₊(α), the nonnegative integer combinations of binom(α, k)")]
pub struct Cli {
    /// Print compact single-line JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Minimal polynomial of α, e.g. "x^2-2" or "-2,0,1".
    #[arg(long)]
    pub field: String,
    /// Skip the irreducibility check.
    #[arg(long)]
    pub trusted: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether β ∈ R₊(α).
    Member {
        #[command(flatten)]
        field: FieldArgs,
        /// β as a rational, θ-coordinates "c0,c1,...", or a polynomial in a = α.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Generator to use instead of α, in the same formats as --beta.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Attach a certificate found by bounded search.
        #[arg(long)]
        certify: bool,
        /// Use places only, skipping the closed-form rules.
        #[arg(long)]
        force_general: bool,
    },
    /// Whether a symmetric monoidal functor Rep(S_t) → Rep(S_t') exists, i.e. t ∈ R₊(t').
    FunctorExists {
        /// Minimal polynomial of t'.
        #[arg(long = "t-prime")]
        t_prime: String,
        /// t as an element of Q(t'), in the formats of `member --beta`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        trusted: bool,
    },
    /// Classify α and list 1/p membership for small primes.
    Describe {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
    },
    /// The generators α_p for p up to the bound.
    Generators {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
    },
    /// A certificate for −1.
    NegOne {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Certified places over each prime up to the bound.
    Places {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
        /// Only this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Cross-check a verdict against bounded search, or verify a certificate.
    OracleVerify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Certificate JSON {"target": [...], "terms": [[k, a], ...]} to verify.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_index: u64,
        #[arg(long, default_value_t = 16)]
        coeff_bound: u64,
    },
}

/// Exit code and stdout of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load_field(f: &FieldArgs) -> Result<NumberField> {
    load_poly(&f.field, f.trusted)
}

fn load_poly(s: &str, trusted: bool) -> Result<NumberField> {
    let m = RatPoly::parse(s)?;
    if trusted {
        NumberField::new_trusted(&m)
    } else {
        NumberField::new(&m)
    }
}

fn quadratic_rule(d: &num_bigint::BigInt) -> String {
    format!("1/p is in iff p does not split in Q(√{d}): odd p with ({d}/p) ≠ 1, or p = 2 with {d} ≢ 1 mod 8")
}

fn execute(cli: &Cli) -> Result<(i32, Value)> {
    match &cli.command {
        Command::Member { field, beta, alpha, certify, force_general } => {
            let k = load_field(field)?;
            let b = k.parse_elem(beta)?;
            let a = match alpha {
                Some(s) => k.parse_elem(s)?,
                None => k.alpha(),
            };
            let v = decide_membership_with(&k, &a, &b, DecideOptions { certify: *certify, force_general: *force_general })?;
            Ok((if v.member { 0 } else { 1 }, json::verdict(&v)))
        }
        Command::FunctorExists { t_prime, t, trusted } => {
            let k = load_poly(t_prime, *trusted)?;
            let b = k.parse_elem(t)?;
            let v = decide_membership_with(&k, &k.alpha(), &b, DecideOptions::default())?;
            let out = json!({
                "t_prime": json::field(&k),
                "t": json::elem(&b),
                "functor_exists": v.member,
                "verdict": json::verdict(&v),
            });
            Ok((if v.member { 0 } else { 1 }, out))
        }
        Command::Describe { field, prime_bound } => {
            let k = load_field(field)?;
            let class = classify(&k)?;
            let rule = match &class {
                Classification::Integer { nonnegative: true } => "R₊(α) = Z≥0; no 1/p is in".to_string(),
                Classification::Integer { nonnegative: false } => "R₊(α) = Z; no 1/p is in".to_string(),
                Classification::Rational { denominator } => format!("R₊(α) = Z[1/{denominator}]"),
                Classification::Quadratic { d } => quadratic_rule(d),
                Classification::Cyclotomic { m } => format!("1/p is in iff p ≢ 1 mod {m}"),
                Classification::General => "1/p is in iff no place over p has v(α) ≥ 0".to_string(),
            };
            let mut primes = Vec::new();
            let nonneg_int = matches!(class, Classification::Integer { nonnegative: true });
            for p in primes_up_to(*prime_bound) {
                let inside = !nonneg_int && inverse_prime_in(&k, &k.alpha(), p)?;
                primes.push(json!({ "p": p, "inverse_in": inside }));
            }
            let out = json!({
                "field": json::field(&k),
                "classification": json::classification(&class),
                "rule": rule,
                "primes": primes,
            });
            Ok((0, out))
        }
        Command::Generators { field, prime_bound } => {
            let k = load_field(field)?;
            let gens = generator_presentation(&k, &k.alpha(), *prime_bound)?;
            let out = json!({
                "field": json::field(&k),
                "generators": gens.iter().map(json::generator).collect::<Vec<_>>(),
            });
            Ok((0, out))
        }
        Command::NegOne { field } => {
            let k = load_field(field)?;
            let c = certify_negative_one(&k)?;
            Ok((0, json::certificate(&c)))
        }
        Command::Places { field, prime_bound, prime } => {
            let k = load_field(field)?;
            let ps = match prime {
                Some(p) => vec![*p],
                None => primes_up_to(*prime_bound),
            };
            let mut out = Vec::new();
            for p in ps {
                let pl = places(&k, p)?;
                out.push(json!({ "p": p, "places": pl.iter().map(json::place).collect::<Vec<_>>() }));
            }
            Ok((0, json!({ "field": json::field(&k), "primes": out })))
        }
        Command::OracleVerify { field, beta, certificate, max_index, coeff_bound } => {
            let k = load_field(field)?;
            if let Some(text) = certificate {
                let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate JSON: {e}")))?;
                let c = json::parse_certificate(&k, &v)?;
                let ok = verify_certificate_at(&k, &k.alpha(), &c);
                return Ok((if ok { 0 } else { 1 }, json!({ "certificate_valid": ok })));
            }
            let beta = beta.as_ref().ok_or_else(|| Error::Parse("oracle-verify needs --beta or --certificate".into()))?;
            let b = k.parse_elem(beta)?;
            oracle_verify(&k, &b, *max_index, *coeff_bound)
        }
    }
}

fn oracle_verify(k: &NumberField, b: &FieldElem, max_index: u64, coeff_bound: u64) -> Result<(i32, Value)> {
    let a = k.alpha();
    let v = decide_membership_with(k, &a, b, DecideOptions::default())?;
    let found = brute_force_certificate(k, &a, b, max_index, coeff_bound);
    let witness_ok = match &v.witness {
        Some(w) => Some(verify_witness(k, &a, b, w)?),
        None => None,
    };
    // a found certificate contradicts a negative verdict; a witness must re-verify
    let consistent = !(found.is_found() && !v.member) && witness_ok != Some(false);
    let bf = match &found {
        SearchOutcome::Found(c) => json!({ "found": true, "certificate": json::certificate(c) }),
        SearchOutcome::Inconclusive => json!({ "found": false, "certificate": null }),
    };
    let out = json!({
        "verdict": json::verdict(&v),
        "brute_force": bf,
        "max_index": max_index,
        "coeff_bound": coeff_bound,
        "witness_reverified": witness_ok,
        "consistent": consistent,
    });
    Ok((if consistent { 0 } else { 1 }, out))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, v)) => {
            let stdout = if cli.json { json::to_line(&v) } else { json::to_pretty(&v) };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
