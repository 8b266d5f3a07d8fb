//! Command results and their text and structured renderings.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One line of payload: a kind followed by ordered `key=value` fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }
}

/// Invariant: `reason` is set whenever `status` is not `Ok`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub reason: Option<String>,
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

impl Outcome {
    pub fn ok(records: Vec<Record>) -> Self {
        Outcome {
            status: Status::Ok,
            reason: None,
            records,
        }
    }

    pub fn fail(reason: impl Into<String>, records: Vec<Record>) -> Self {
        Outcome {
            status: Status::Fail,
            reason: Some(reason.into()),
            records,
        }
    }

    pub fn error(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Error,
            reason: Some(reason.into()),
            records: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Structured => self.structured(),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("status: {}\n", self.status.name());
        if let Some(r) = &self.reason {
            writeln!(s, "reason: {r}").unwrap();
        }
        for r in &self.records {
            s.push_str(&r.kind);
            for (k, v) in &r.fields {
                if v.is_empty() || v.contains(char::is_whitespace) {
                    write!(s, " {k}={v:?}").unwrap();
                } else {
                    write!(s, " {k}={v}").unwrap();
                }
            }
            s.push('\n');
        }
        s
    }

    fn structured(&self) -> String {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("kind".into(), Value::String(r.kind.clone()));
                for (k, v) in &r.fields {
                    m.insert(k.clone(), Value::String(v.clone()));
                }
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("status".into(), Value::String(self.status.name().into()));
        if let Some(r) = &self.reason {
            top.insert("reason".into(), Value::String(r.clone()));
        }
        top.insert("records".into(), Value::Array(records));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let o = Outcome::fail("one check failed", vec![Record::new("check").with("name", "symmetry").with("word", "1|0")]);
        assert_eq!(
            o.render(Format::Text),
            "status: fail\nreason: one check failed\ncheck name=symmetry word=1|0\n"
        );
        let v: Value = serde_json::from_str(&o.render(Format::Structured)).unwrap();
        assert_eq!(v["status"], "fail");
        assert_eq!(v["records"][0]["name"], "symmetry");
        assert_eq!(Outcome::ok(vec![Record::new("x").with("w", "1 0|1")]).render(Format::Text), "status: ok\nx w=\"1 0|1\"\n");
        assert_eq!(Status::Error.exit_code(), 2);
    }
}
