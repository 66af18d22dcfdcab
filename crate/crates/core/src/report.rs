//! Verification reports: computed values next to their expected values.

use crate::fixtures;
use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Kv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub computed: String,
    /// `None` for values reported without an expectation.
    pub expected: Option<(Comparison, String)>,
    pub note: Option<String>,
}

impl Entry {
    pub fn pass(&self) -> bool {
        match &self.expected {
            None => true,
            Some((Comparison::Equal, e)) => *e == self.computed,
            Some((Comparison::AtMost, e)) => match (e.parse::<i64>(), self.computed.parse::<i64>()) {
                (Ok(e), Ok(c)) => c <= e,
                _ => false,
            },
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    /// Compare against the fixtures table entry `<title>.<name>`.
    pub fn check(&mut self, name: &str, computed: impl ToString) -> bool {
        let key = format!("{}.{}", self.title, name);
        let (cmp, expected) = fixtures::expected(&key).unwrap_or_else(|| panic!("no fixture for {key}"));
        self.push(name, computed.to_string(), Some((cmp, expected.to_string())), None)
    }

    /// Compare against an explicit expectation.
    pub fn check_against(&mut self, name: &str, expected: impl ToString, computed: impl ToString) -> bool {
        self.push(name, computed.to_string(), Some((Comparison::Equal, expected.to_string())), None)
    }

    pub fn value(&mut self, name: &str, computed: impl ToString) {
        self.push(name, computed.to_string(), None, None);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        if let Some(last) = self.entries.last_mut() {
            last.note = Some(text.into());
        }
    }

    fn push(
        &mut self,
        name: &str,
        computed: String,
        expected: Option<(Comparison, String)>,
        note: Option<String>,
    ) -> bool {
        let e = Entry { name: name.into(), computed, expected, note };
        let pass = e.pass();
        self.entries.push(e);
        pass
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(Entry::pass)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.pass()).collect()
    }

    /// Rendering without timings, so repeated runs give identical bytes.
    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Human => {
                let _ = writeln!(s, "== {} ==", self.title);
                for e in &self.entries {
                    let _ = match &e.expected {
                        None => writeln!(s, "  {:<32} {}", e.name, e.computed),
                        Some((cmp, x)) => {
                            let rel = if *cmp == Comparison::AtMost { "<=" } else { "" };
                            let mark = if e.pass() { "ok" } else { "MISMATCH" };
                            writeln!(s, "  {:<32} {}  (expected {rel}{x})  {mark}", e.name, e.computed)
                        }
                    };
                    if let Some(n) = &e.note {
                        let _ = writeln!(s, "  {:<32} note: {n}", "");
                    }
                }
                let failures = self.failures();
                if !failures.is_empty() {
                    let _ = writeln!(s, "--- expected\n+++ computed");
                    for e in failures {
                        let x = e.expected.as_ref().map_or("", |x| x.1.as_str());
                        let _ =
                            writeln!(s, "-{}.{}={x}\n+{}.{}={}", self.title, e.name, self.title, e.name, e.computed);
                    }
                }
                let _ = writeln!(s, "  result: {}", if self.passed() { "PASS" } else { "FAIL" });
            }
            Format::Kv => {
                for e in &self.entries {
                    let _ = write!(s, "{}.{}={}", self.title, e.name, e.computed);
                    if let Some((cmp, x)) = &e.expected {
                        let rel = if *cmp == Comparison::AtMost { "<=" } else { "" };
                        let _ = write!(s, " expected={rel}{x} status={}", if e.pass() { "ok" } else { "mismatch" });
                    }
                    let _ = writeln!(s);
                }
                let _ = writeln!(s, "{}.result={}", self.title, if self.passed() { "pass" } else { "fail" });
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        let mut r = Report::new("t");
        assert!(r.check_against("a", 3, 3));
        assert!(!r.check_against("b", 3, 4));
        r.value("c", "x");
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
        let at_most = Entry {
            name: "d".into(),
            computed: "2".into(),
            expected: Some((Comparison::AtMost, "2".into())),
            note: None,
        };
        assert!(at_most.pass());
    }

    #[test]
    fn kv_lines() {
        let mut r = Report::new("t");
        r.check_against("a", 1, 1);
        assert_eq!(r.render(Format::Kv), "t.a=1 expected=1 status=ok\nt.result=pass\n");
    }

    #[test]
    fn mismatches_render_as_a_diff() {
        let mut r = Report::new("t");
        r.check_against("a", 1, 2);
        assert!(r.render(Format::Human).contains("-t.a=1\n+t.a=2\n"));
    }
}
