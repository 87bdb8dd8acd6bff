use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive-at-depth",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Bijection { pairs: Vec<[String; 2]> },
    Word { letters: Vec<String>, note: String },
    Cardinalities { left: usize, right: usize },
    Element { name: String, note: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Bijection { pairs } => {
                write!(f, "bijection")?;
                for [a, b] in pairs {
                    write!(f, "\n  {a} -> {b}")?;
                }
                Ok(())
            }
            Witness::Word { letters, note } => write!(f, "word ({}): {note}", letters.join(", ")),
            Witness::Cardinalities { left, right } => write!(f, "cardinalities {left} vs {right}"),
            Witness::Element { name, note } => write!(f, "element {name}: {note}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub subjects: Vec<String>,
    pub verdict: Verdict,
    pub depth: usize,
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, subjects: &[&str], depth: usize) -> Self {
        CheckReport {
            check: check.into(),
            subjects: subjects.iter().map(|s| s.to_string()).collect(),
            verdict: Verdict::Pass,
            depth,
            facts: Vec::new(),
            witness: None,
        }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.facts.push(Fact { key: key.into(), value: value.to_string() });
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.key == key).map(|f| f.value.as_str())
    }

    /// Downgrades to fail; the first witness is kept.
    pub fn fail(&mut self, w: Witness) {
        self.verdict = Verdict::Fail;
        if self.witness.is_none() || self.witness.as_ref().is_some_and(|x| matches!(x, Witness::Bijection { .. })) {
            self.witness = Some(w);
        }
    }

    pub fn inconclusive(&mut self, w: Witness) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
            self.witness = Some(w);
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: {}", self.check)?;
        writeln!(f, "subjects: {}", self.subjects.join(", "))?;
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "depth: {}", self.depth)?;
        for x in &self.facts {
            writeln!(f, "{}: {}", x.key, x.value)?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        Ok(())
    }
}
