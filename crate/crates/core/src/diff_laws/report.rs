use std::fmt;

use serde::Serialize;

/// The first failing instance of a law: rendered inputs and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(inputs: Vec<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Counterexample {
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Outcome of one law on one carrier.
///
/// `pass` is true iff there is no counterexample. A skipped report failed
/// its precondition; it carries the precondition's counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub carrier: String,
    pub trials: u64,
    pub pass: bool,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "is_false")]
    pub skipped: bool,
}

impl LawReport {
    pub fn new(law: &str, carrier: &str, trials: u64, seed: u64) -> Self {
        LawReport {
            law: law.to_string(),
            carrier: carrier.to_string(),
            trials,
            pass: true,
            seed: Some(seed),
            counterexample: None,
            skipped: false,
        }
    }

    /// A report for a check that uses no randomness.
    pub fn deterministic(law: &str, carrier: &str) -> Self {
        LawReport {
            seed: None,
            ..LawReport::new(law, carrier, 1, 0)
        }
    }

    pub fn fail(mut self, cx: Counterexample) -> Self {
        self.pass = false;
        self.counterexample = Some(cx);
        self
    }

    pub fn skip(self, cx: Counterexample) -> Self {
        LawReport {
            skipped: true,
            ..self.fail(cx)
        }
    }

    /// Folds an optional counterexample into the report.
    pub fn with(self, cx: Option<Counterexample>) -> Self {
        match cx {
            Some(cx) => self.fail(cx),
            None => self,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.pass, self.skipped) {
            (true, _) => "PASS",
            (false, true) => "SKIP",
            (false, false) => "FAIL",
        };
        write!(f, "{status} {} [{}] trials={}", self.law, self.carrier, self.trials)?;
        if let Some(cx) = &self.counterexample {
            write!(
                f,
                " inputs={:?} lhs={} rhs={}",
                cx.inputs, cx.lhs, cx.rhs
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let ok = LawReport::new("leibniz", "hurwitz", 5, 42);
        assert_eq!(
            ok.to_json(),
            r#"{"law":"leibniz","carrier":"hurwitz","trials":5,"pass":true,"seed":42}"#
        );
        let bad = ok.clone().fail(Counterexample::new(vec!["1".into()], 1, 0));
        assert!(!bad.pass);
        assert!(bad.to_json().contains(r#""counterexample":{"inputs":["1"],"lhs":"1","rhs":"0"}"#));
        let skipped = ok.skip(Counterexample::new(vec![], "a", "b"));
        assert!(skipped.to_json().ends_with(r#""skipped":true}"#));
        assert!(LawReport::deterministic("x", "y").to_json().contains(r#""seed":null"#));
    }
}
