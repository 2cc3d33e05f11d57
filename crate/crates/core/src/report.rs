//! Named pass/fail checks collected by the verifiers.

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckList {
    items: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        CheckList::default()
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.items.push(Check { name: name.into(), ok, detail: None });
        ok
    }

    /// Records a check with a witness shown when it fails.
    pub fn push_with(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> bool {
        let detail = (!ok).then(detail);
        self.items.push(Check { name: name.into(), ok, detail });
        ok
    }

    pub fn extend(&mut self, prefix: &str, other: CheckList) {
        for mut c in other.items {
            c.name = format!("{prefix}{}", c.name);
            self.items.push(c);
        }
    }

    pub fn items(&self) -> &[Check] {
        &self.items
    }

    pub fn all_ok(&self) -> bool {
        self.items.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.items.iter().filter(|c| !c.ok)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.items
                .iter()
                .map(|c| {
                    let mut v = json!({"name": c.name, "ok": c.ok});
                    if let Some(d) = &c.detail {
                        v["detail"] = Value::String(d.clone());
                    }
                    v
                })
                .collect(),
        )
    }
}

/// Outcome of one verification: the checks and the computed data.
#[derive(Clone, Debug)]
pub struct Verification {
    pub title: String,
    pub checks: CheckList,
    pub data: Value,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.all_ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "status": if self.passed() { "verified" } else { "failed" },
            "checks": self.checks.to_json(),
            "data": self.data,
        })
    }
}
