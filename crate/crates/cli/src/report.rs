//! Campaign orchestration and report rendering. The JSON document keeps all
//! timing in a trailing "envelope" object so that two runs with the same
//! configuration are byte-identical outside it.

use crate::checks::{run_check, CheckKind, CheckOutcome, QContext, Status};
use serde::Serialize;
use std::thread;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub q_list: Vec<u64>,
    pub checks: Vec<CheckKind>,
    pub strict: bool,
    pub node_budget: u64,
    /// Whether the user listed the blokhuis check explicitly, which opts
    /// large q into exhaustive enumeration.
    pub blokhuis_explicit: bool,
}

#[derive(Debug)]
pub struct CheckRecord {
    pub check: CheckKind,
    pub outcome: CheckOutcome,
    pub elapsed_ms: u128,
}

#[derive(Debug)]
pub struct QReport {
    pub q: u64,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u128,
}

#[derive(Debug)]
pub struct RunReport {
    pub per_q: Vec<QReport>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn failed_checks(&self) -> usize {
        self.per_q
            .iter()
            .flat_map(|q| &q.checks)
            .filter(|c| c.outcome.status == Status::Fail)
            .count()
    }
}

fn run_q(q: u64, cfg: &VerifyConfig) -> QReport {
    let started = Instant::now();
    let ctx = QContext::new(q).expect("q validated before the campaign");
    let checks = cfg
        .checks
        .iter()
        .map(|&kind| {
            let t = Instant::now();
            let outcome = run_check(
                &ctx,
                kind,
                cfg.node_budget,
                cfg.strict,
                cfg.blokhuis_explicit,
            );
            CheckRecord {
                check: kind,
                outcome,
                elapsed_ms: t.elapsed().as_millis(),
            }
        })
        .collect();
    QReport {
        q,
        checks,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

/// Runs the selected checks for every q, independent q values concurrently,
/// and assembles the results in ascending q order.
pub fn run_campaign(cfg: &VerifyConfig) -> RunReport {
    let started = Instant::now();
    let per_q: Vec<QReport> = thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .q_list
            .iter()
            .map(|&q| scope.spawn(move || run_q(q, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    let pass = per_q
        .iter()
        .flat_map(|q| &q.checks)
        .all(|c| c.outcome.status != Status::Fail);
    RunReport {
        per_q,
        pass,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JsonCheck<'a> {
    check: &'a str,
    status: Status,
    details: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<&'a serde_json::Value>,
}

#[derive(Serialize)]
struct JsonQResult<'a> {
    q: u64,
    checks: Vec<JsonCheck<'a>>,
}

#[derive(Serialize)]
struct JsonConfig<'a> {
    q: &'a [u64],
    checks: Vec<&'a str>,
    strict: bool,
    node_budget: u64,
}

#[derive(Serialize)]
struct JsonEnvelopeQ {
    q: u64,
    ms: u128,
    per_check_ms: Vec<u128>,
}

#[derive(Serialize)]
struct JsonEnvelope {
    elapsed_ms: u128,
    per_q: Vec<JsonEnvelopeQ>,
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    schema: u32,
    command: &'a str,
    config: JsonConfig<'a>,
    results: Vec<JsonQResult<'a>>,
    pass: bool,
    envelope: JsonEnvelope,
}

/// The verification certificate as JSON; deterministic except the envelope.
pub fn report_json(cfg: &VerifyConfig, report: &RunReport) -> String {
    let doc = JsonDoc {
        schema: 1,
        command: "verify",
        config: JsonConfig {
            q: &cfg.q_list,
            checks: cfg.checks.iter().map(|c| c.name()).collect(),
            strict: cfg.strict,
            node_budget: cfg.node_budget,
        },
        results: report
            .per_q
            .iter()
            .map(|qr| JsonQResult {
                q: qr.q,
                checks: qr
                    .checks
                    .iter()
                    .map(|c| JsonCheck {
                        check: c.check.name(),
                        status: c.outcome.status,
                        details: &c.outcome.details,
                        data: c.outcome.data.as_ref(),
                    })
                    .collect(),
            })
            .collect(),
        pass: report.pass,
        envelope: JsonEnvelope {
            elapsed_ms: report.elapsed_ms,
            per_q: report
                .per_q
                .iter()
                .map(|qr| JsonEnvelopeQ {
                    q: qr.q,
                    ms: qr.elapsed_ms,
                    per_check_ms: qr.checks.iter().map(|c| c.elapsed_ms).collect(),
                })
                .collect(),
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn report_text(report: &RunReport) -> String {
    let mut out = String::new();
    for qr in &report.per_q {
        for c in &qr.checks {
            let status = match c.outcome.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!(
                "q={:<3} {:<9} {:<5} {}\n",
                qr.q,
                c.check.name(),
                status,
                c.outcome.details
            ));
        }
    }
    out.push_str(&format!(
        "campaign: {} ({} checks, {} failed, {} ms)\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.per_q.iter().map(|q| q.checks.len()).sum::<usize>(),
        report.failed_checks(),
        report.elapsed_ms
    ));
    out
}
