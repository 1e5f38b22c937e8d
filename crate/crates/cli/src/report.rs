//! Reports: a list of claims, each checked and carrying its witness or
//! certificate, plus the seed and optional per-step timings.

use std::time::Instant;

use serde_json::{json, Value};

use crate::json::canonical;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    /// Short answer such as `SPLIT` or `UNSOLVABLE`.
    pub verdict: String,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
    timing: Option<Vec<(String, u128)>>,
}

impl Report {
    pub fn new(command: impl Into<String>, timing: bool) -> Self {
        Self {
            command: command.into(),
            seed: None,
            claims: Vec::new(),
            timing: timing.then(Vec::new),
        }
    }

    pub fn claim(&mut self, id: impl Into<String>, holds: bool, verdict: impl Into<String>, detail: Value) {
        self.claims.push(Claim {
            id: id.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            verdict: verdict.into(),
            detail,
        });
    }

    /// Runs `f`, recording its duration under `step` when timing is on.
    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timing {
            t.push((step.to_string(), start.elapsed().as_micros()));
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_value(&self) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "status": c.status.as_str(),
                    "verdict": c.verdict,
                    "detail": c.detail,
                })
            })
            .collect();
        let mut v = json!({
            "command": self.command,
            "seed": self.seed,
            "claims": claims,
            "summary": {
                "total": self.claims.len(),
                "passed": self.claims.iter().filter(|c| c.status == Status::Pass).count(),
            },
        });
        if let Some(t) = &self.timing {
            v["timing"] = t
                .iter()
                .map(|(step, us)| json!({"step": step, "micros": *us as u64}))
                .collect();
        }
        v
    }

    pub fn to_json(&self) -> String {
        canonical(&self.to_value())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for c in &self.claims {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{status}  {}  {}\n", c.id, c.verdict));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        if let Some(t) = &self.timing {
            for (step, us) in t {
                out.push_str(&format!("time  {step}  {us} µs\n"));
            }
        }
        let passed = self.claims.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{passed}/{} claims hold\n", self.claims.len()));
        out
    }
}
