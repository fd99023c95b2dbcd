//! Check records shared by the verification suite and the command line.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// precondition not met, nothing was compared
    Skip,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }
}

/// One compared value.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub entry: String,
    pub check: String,
    pub characteristic: u64,
    pub cutoffs: String,
    pub expected: String,
    pub citation: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Record {
    pub fn new(entry: &str, check: &str) -> Self {
        Self {
            entry: entry.into(),
            check: check.into(),
            characteristic: 0,
            cutoffs: String::new(),
            expected: String::new(),
            citation: String::new(),
            computed: String::new(),
            verdict: Verdict::Fail,
            residual: None,
            note: None,
            wall_time: Duration::ZERO,
        }
    }

    pub fn characteristic(mut self, c: u64) -> Self {
        self.characteristic = c;
        self
    }

    pub fn cutoffs(mut self, c: impl Into<String>) -> Self {
        self.cutoffs = c.into();
        self
    }

    pub fn expected(mut self, value: impl Into<String>, citation: impl Into<String>) -> Self {
        self.expected = value.into();
        self.citation = citation.into();
        self
    }

    pub fn computed(mut self, c: impl Into<String>) -> Self {
        self.computed = c.into();
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn pass_if(self, ok: bool) -> Self {
        self.verdict(Verdict::from_bool(ok))
    }

    pub fn residual(mut self, r: Option<String>) -> Self {
        self.residual = r;
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn timed(mut self, t: Duration) -> Self {
        self.wall_time = t;
        self
    }

    fn sort_key(&self) -> (&str, &str, u64, &str, &str) {
        (&self.entry, &self.check, self.characteristic, &self.cutoffs, &self.expected)
    }
}

/// Records in canonical order: entry, check, characteristic, cutoffs.
pub fn sort_canonical(records: &mut [Record]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn field_name(characteristic: u64) -> String {
    match characteristic {
        0 => "QQ".into(),
        p => format!("F_{p}"),
    }
}

/// One line per record, with the residual and note indented below it.
pub fn render_text(records: &[Record], timings: bool) -> String {
    let mut out = String::new();
    for r in records {
        let _ = write!(
            out,
            "{} {} {} [{}{}{}]",
            r.verdict.label(),
            r.entry,
            r.check,
            field_name(r.characteristic),
            if r.cutoffs.is_empty() { "" } else { " " },
            r.cutoffs
        );
        if timings {
            let _ = write!(out, " {:.3}s", r.wall_time.as_secs_f64());
        }
        out.push('\n');
        let _ = writeln!(out, "    computed: {}", r.computed);
        if !r.expected.is_empty() {
            let _ = writeln!(out, "    expected: {}", r.expected);
        }
        if !r.citation.is_empty() {
            let _ = writeln!(out, "    source:   {}", r.citation);
        }
        if let Some(res) = &r.residual {
            let _ = writeln!(out, "    residual: {res}");
        }
        if let Some(n) = &r.note {
            let _ = writeln!(out, "    note:     {n}");
        }
    }
    out
}

/// Counts of pass, fail and skip verdicts.
pub fn tally(records: &[Record]) -> (usize, usize, usize) {
    let count = |v| records.iter().filter(|r| r.verdict == v).count();
    (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Skip))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_empty() {
        assert_eq!(render_text(&[], true), "");
        assert_eq!(tally(&[]), (0, 0, 0));
    }

    #[test]
    fn failing_record_shows_residual() {
        let r = Record::new("I78", "bogvad")
            .computed("2 - 4xy")
            .pass_if(false)
            .residual(Some("x^2y^2 + xy^2".into()));
        let text = render_text(&[r], false);
        assert!(text.starts_with("FAIL I78 bogvad [QQ]"));
        assert!(text.contains("residual: x^2y^2 + xy^2"));
    }

    #[test]
    fn canonical_order() {
        let mut rs = vec![Record::new("b", "x"), Record::new("a", "y"), Record::new("a", "x")];
        sort_canonical(&mut rs);
        let keys: Vec<_> = rs.iter().map(|r| format!("{}{}", r.entry, r.check)).collect();
        assert_eq!(keys, vec!["ax", "ay", "bx"]);
    }
}
