//! Report formatting. JSON output never contains timings, so identical
//! arguments give byte-identical reports.

use std::fmt::Write;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{json, Value};

use partineq::antitelescope::{HypothesisCheck, KrCertificate};
use partineq::inequalities::{CheckResult, SearchReport};
use partineq::Expansion;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("values serialize") + "\n",
        Format::Table => text(),
    };
    write_stdout(&out);
}

/// Writes to stdout, treating a closed pipe (`| head`) as a normal end.
pub fn write_stdout(s: &str) {
    use std::io::Write as _;
    let mut lock = std::io::stdout().lock();
    if let Err(e) = lock.write_all(s.as_bytes()).and_then(|_| lock.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

pub fn expansion_json(e: &Expansion) -> Value {
    match e {
        Expansion::Q(p) => json!({ "kind": "q", "trunc": p.trunc(), "coeffs": p }),
        Expansion::ZQ(p) => {
            let terms: Vec<Value> = p
                .terms()
                .filter(|(_, _, c)| !num_traits::Zero::is_zero(*c))
                .map(|(m, n, c)| json!([m, n, c.to_string()]))
                .collect();
            json!({ "kind": "zq", "trunc": p.trunc(), "terms": terms })
        }
    }
}

pub fn expansion_text(e: &Expansion) -> String {
    match e {
        Expansion::Q(p) => format!("{p}\n"),
        Expansion::ZQ(p) => {
            let mut out = String::new();
            for (m, n, c) in p.terms().filter(|(_, _, c)| !num_traits::Zero::is_zero(*c)) {
                writeln!(out, "z^{m} q^{n}\t{c}").unwrap();
            }
            if out.is_empty() {
                out.push_str("0\n");
            }
            out
        }
    }
}

pub fn negative_json(first: &Option<(Option<u64>, u64, BigInt)>) -> Value {
    match first {
        Some((m, n, v)) => json!({ "m": m, "n": n, "value": v.to_string() }),
        None => Value::Null,
    }
}

pub fn negative_text(first: &Option<(Option<u64>, u64, BigInt)>) -> String {
    match first {
        Some((Some(m), n, v)) => format!("z^{m} q^{n}: {v}"),
        Some((None, n, v)) => format!("q^{n}: {v}"),
        None => "none".into(),
    }
}

pub fn check_text(r: &CheckResult, expected_known: bool) -> String {
    let mut out = String::new();
    let verdict = match r.verdict {
        partineq::inequalities::Verdict::Pass => "PASS",
        partineq::inequalities::Verdict::Fail => "FAIL",
        partineq::inequalities::Verdict::Inconclusive => "INCONCLUSIVE",
    };
    writeln!(out, "{} {} (N = {}): {verdict}", r.family, r.params, r.trunc).unwrap();
    if let Some(v) = &r.first_violation {
        writeln!(out, "  first violation: {v}").unwrap();
    }
    if expected_known {
        writeln!(out, "  expected-known: the statement's hypotheses exclude this instance").unwrap();
    }
    if let Some(w) = &r.witness {
        writeln!(out, "  witness: {w}").unwrap();
    }
    let residues: Vec<String> = r.residues_checked.iter().map(u64::to_string).collect();
    writeln!(out, "  residues checked: {}", residues.join(", ")).unwrap();
    for a in &r.audits {
        let cases: Vec<String> = a.case_histogram.iter().map(|(t, n)| format!("{t}:{n}")).collect();
        writeln!(
            out,
            "  audit {:<14} {:>8} mapped  {}  cases {}",
            a.label,
            a.domain_size,
            if a.passed() { "ok" } else { "BROKEN" },
            cases.join(" ")
        )
        .unwrap();
        if let Some(f) = &a.first_finding {
            writeln!(out, "    {f}").unwrap();
        }
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    out
}

pub fn certificates_text(certs: &[KrCertificate]) -> String {
    let mut out = format!("{:>3}  {:>6}  {:<16}  {}\n", "j", "lowest", "cancelled", "nonnegative");
    for c in certs {
        let cancelled: Vec<String> = c.cancelled.iter().map(u64::to_string).collect();
        let lowest = c.lowest_degree.map_or("-".into(), |d| d.to_string());
        writeln!(out, "{:>3}  {:>6}  {:<16}  {}", c.j, lowest, cancelled.join(","), c.nonnegative).unwrap();
    }
    out
}

pub fn hypothesis_text(checks: &[HypothesisCheck], recurrence: bool) -> String {
    let mut out = format!("recurrence holds: {recurrence}\n{:>3}  {:>6}  {}\n", "i", "window", "holds");
    for c in checks {
        writeln!(out, "{:>3}  {:>6}  {}", c.i, c.certified_trunc, c.holds).unwrap();
    }
    out
}

pub fn search_text(r: &SearchReport) -> String {
    let mut out = format!(
        "bounds M <= {}, L <= {}, nM <= {}: {} tuples, {} negative coefficients\n",
        r.max_modulus,
        r.max_length,
        r.max_weight,
        r.tuples_checked,
        r.violations.len()
    );
    for (a, b, m) in &r.offending {
        let hits: Vec<_> = r.violations.iter().filter(|v| (v.a, v.b, v.modulus) == (*a, *b, *m)).collect();
        let first = hits[0];
        writeln!(
            out,
            "  (a, b, M) = ({a}, {b}, {m}): {} negatives, first L = {} z^{} q^{} = {}",
            hits.len(),
            first.length,
            first.m,
            first.n,
            first.value
        )
        .unwrap();
    }
    out
}
