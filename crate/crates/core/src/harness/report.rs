use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Failing checks keep at most this many witnesses per instance.
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses never held, so nothing was asserted.
    Vacuous,
}

/// The outcome for one parameter tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub label: String,
    pub verdict: Verdict,
    pub checks: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Accumulates checks for one instance.
#[derive(Debug)]
pub struct Checker {
    label: String,
    checks: usize,
    failed: usize,
    witnesses: Vec<Value>,
    notes: Vec<String>,
    vacuous: bool,
}

impl Checker {
    pub fn new(label: impl Into<String>) -> Self {
        Checker {
            label: label.into(),
            checks: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            vacuous: false,
        }
    }

    /// Records one assertion; `witness` is only built on failure.
    pub fn check(&mut self, ok: bool, what: &str, witness: impl FnOnce() -> Value) -> bool {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(json!({ "check": what, "data": witness() }));
            }
        }
        ok
    }

    /// `check` for an equality, with both sides in the witness.
    pub fn check_eq<T: PartialEq + Serialize>(&mut self, what: &str, got: T, want: T) -> bool {
        let ok = got == want;
        self.check(ok, what, || json!({ "got": got, "expected": want }))
    }

    /// Records an observation that is not a pass/fail check.
    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Attaches data to the report without failing.
    pub fn observe(&mut self, data: Value) {
        self.witnesses.push(data);
    }

    pub fn mark_vacuous(&mut self, why: impl Into<String>) {
        self.vacuous = true;
        self.notes.push(why.into());
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn failed(&self) -> bool {
        self.failed > 0
    }

    pub fn finish(self) -> Instance {
        let verdict = if self.failed > 0 {
            Verdict::Fail
        } else if self.vacuous && self.checks == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        };
        Instance {
            label: self.label,
            verdict,
            checks: self.checks,
            witnesses: self.witnesses,
            notes: self.notes,
        }
    }
}

/// Result of checking one claim over a parameter range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub claim: String,
    pub params: Value,
    pub verdict: Verdict,
    pub instances: Vec<Instance>,
    /// Witnesses of every failing instance, flattened.
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.instances.iter().filter(|i| i.verdict == verdict).count()
    }

    /// One line such as `two-segment: pass (90 instances, 0 failed, 0 vacuous)`.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} instances, {} failed, {} vacuous)",
            self.claim,
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Vacuous => "vacuous",
            },
            self.instances.len(),
            self.count(Verdict::Fail),
            self.count(Verdict::Vacuous)
        )
    }
}

pub fn aggregate(instances: &[Instance]) -> Verdict {
    if instances.iter().any(|i| i.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if instances.iter().any(|i| i.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Vacuous
    }
}

/// Builds a report from already computed instances.
pub fn assemble(claim: &str, params: Value, instances: Vec<Instance>, started: Instant) -> VerificationReport {
    let witnesses = instances
        .iter()
        .filter(|i| i.verdict == Verdict::Fail)
        .flat_map(|i| {
            i.witnesses
                .iter()
                .map(move |w| json!({ "instance": i.label, "witness": w }))
        })
        .collect();
    let notes = instances
        .iter()
        .flat_map(|i| i.notes.iter().map(move |n| format!("{}: {n}", i.label)))
        .collect();
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        claim: claim.to_string(),
        params,
        verdict: aggregate(&instances),
        instances,
        witnesses,
        notes,
        runtime_ms: started.elapsed().as_millis() as u64,
    }
}

/// Runs `check` on every item in parallel and merges the instances in
/// item order. Each call may produce several instances.
pub fn run<P, F>(claim: &str, params: Value, items: &[P], check: F) -> Result<VerificationReport>
where
    P: Sync,
    F: Fn(&P) -> Result<Vec<Instance>> + Sync,
{
    let started = Instant::now();
    let per_item: Vec<Result<Vec<Instance>>> = items.par_iter().map(&check).collect();
    let mut instances = Vec::new();
    for r in per_item {
        instances.extend(r?);
    }
    Ok(assemble(claim, params, instances, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_aggregate() {
        let mut ok = Checker::new("ok");
        ok.check_eq("one", 1, 1);
        let mut bad = Checker::new("bad");
        bad.check_eq("two", 2, 3);
        let mut empty = Checker::new("empty");
        empty.mark_vacuous("hypothesis fails");
        let instances = vec![ok.finish(), empty.finish()];
        assert_eq!(aggregate(&instances), Verdict::Pass);
        let bad = bad.finish();
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(bad.witnesses[0]["data"]["expected"], 3);
        let report = assemble("demo", json!({}), vec![instances[0].clone(), bad], Instant::now());
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(aggregate(&instances[1..]), Verdict::Vacuous);
    }
}
