//! Structured outcome of a verification campaign: one record per checked
//! instance plus an aggregate pass flag, with deterministic jsonl/csv
//! rendering (big integers as decimal strings, never floats).

use std::fmt::Write as _;

use num_bigint::BigInt;

/// One checked instance. For equality campaigns `equal` means `lhs == rhs`;
/// strict-inequality campaigns set `equal` to their pass predicate and say
/// so in `note`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: Vec<(String, String)>,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub equal: bool,
    pub note: String,
}

impl Instance {
    pub fn new(params: &[(&str, String)], lhs: BigInt, rhs: BigInt) -> Self {
        let equal = lhs == rhs;
        Instance {
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            lhs,
            rhs,
            equal,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = note.to_string();
        self
    }

    pub fn with_predicate(mut self, passed: bool) -> Self {
        self.equal = passed;
        self
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: String,
    pub instances: Vec<Instance>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>) -> Self {
        VerificationReport {
            family: family.into(),
            instances: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, instance: Instance) {
        self.passed &= instance.equal;
        self.instances.push(instance);
    }

    pub fn mismatches(&self) -> usize {
        self.instances.iter().filter(|i| !i.equal).count()
    }

    /// One jsonl line per instance, keys in fixed order.
    pub fn jsonl(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let mut params = String::new();
            for (i, (k, v)) in inst.params.iter().enumerate() {
                if i > 0 {
                    params.push(',');
                }
                let _ = write!(params, "\"{}\":\"{}\"", json_escape(k), json_escape(v));
            }
            let _ = writeln!(
                out,
                "{{\"family\":\"{}\",\"params\":{{{}}},\"lhs\":\"{}\",\"rhs\":\"{}\",\"equal\":{},\"note\":\"{}\"}}",
                json_escape(&self.family),
                params,
                inst.lhs,
                inst.rhs,
                inst.equal,
                json_escape(&inst.note),
            );
        }
        out
    }

    /// Header row plus one csv row per instance; params are joined with ';'
    /// so the row stays comma-splittable.
    pub fn csv(&self) -> String {
        let mut out = String::from("family,params,lhs,rhs,equal,note\n");
        for inst in &self.instances {
            let params: Vec<String> = inst
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.family,
                params.join(";"),
                inst.lhs,
                inst.rhs,
                inst.equal,
                inst.note.replace(',', ";"),
            );
        }
        out
    }

    /// One human-readable line: family, instance count, verdict.
    pub fn summary(&self) -> String {
        if self.passed {
            format!("{}: {} instances: PASS", self.family, self.instances.len())
        } else {
            format!(
                "{}: {} instances, {} MISMATCH: FAIL",
                self.family,
                self.instances.len(),
                self.mismatches()
            )
        }
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}
