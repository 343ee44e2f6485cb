//! Machine-readable pass/fail reports with stable ordering.

use std::fmt;

use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    /// Stable exit-code contract: 0 pass, 1 rule failure, 2 input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One rule violation: which rule, where, and what went wrong.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Finding {
    pub rule: String,
    pub location: String,
    pub message: String,
}

impl Finding {
    pub fn new(
        rule: impl Into<String>,
        location: impl Into<String>,
        message: impl Into<String>,
    ) -> Finding {
        Finding {
            rule: rule.into(),
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rule": self.rule,
            "location": self.location,
            "message": self.message,
        })
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.rule, self.location, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Vec<Finding>,
    pub certificate: Option<Value>,
}

impl Report {
    pub fn pass(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            status: Status::Pass,
            findings: Vec::new(),
            certificate: None,
        }
    }

    /// Pass when `findings` is empty, fail otherwise. Findings are sorted
    /// so reports are byte-reproducible.
    pub fn from_findings(command: impl Into<String>, mut findings: Vec<Finding>) -> Report {
        findings.sort();
        let status = if findings.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            command: command.into(),
            status,
            findings,
            certificate: None,
        }
    }

    pub fn input_error(command: impl Into<String>, mut findings: Vec<Finding>) -> Report {
        findings.sort();
        Report {
            command: command.into(),
            status: Status::Error,
            findings,
            certificate: None,
        }
    }

    pub fn with_certificate(mut self, certificate: Value) -> Report {
        self.certificate = Some(certificate);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("format".into(), json!("tfan-report"));
        obj.insert("version".into(), json!(1));
        obj.insert("command".into(), json!(self.command));
        obj.insert("status".into(), json!(self.status.as_str()));
        obj.insert(
            "findings".into(),
            Value::Array(self.findings.iter().map(Finding::to_json).collect()),
        );
        if let Some(cert) = &self.certificate {
            obj.insert("certificate".into(), cert.clone());
        }
        Value::Object(obj)
    }

    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}
