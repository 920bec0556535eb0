//! Verification reports as a key-value text tree.
//!
//! ```text
//! report <title>
//! seed <n>
//! section <name>
//!   case <name> <pass|fail|skip>
//!     <key> <value>
//!     millis <n>            (only when timings are requested)
//!   total pass <a> fail <b> skip <c>
//! ```
//!
//! Sections and cases keep their construction order, which the harness makes
//! independent of scheduling, so two runs with the same seed print the same tree.

use std::fmt::Write;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub outcome: Outcome,
    pub details: Vec<(String, String)>,
    pub elapsed: Duration,
}

impl Case {
    pub fn new(name: impl Into<String>, outcome: Outcome) -> Self {
        Self {
            name: name.into(),
            outcome,
            details: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub cases: Vec<Case>,
}

impl Section {
    pub fn new(name: impl Into<String>, cases: Vec<Case>) -> Self {
        Self {
            name: name.into(),
            cases,
        }
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.cases.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub seed: Option<u64>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(title: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            title: title.into(),
            seed,
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn failed(&self) -> usize {
        self.sections.iter().map(Section::failed).sum()
    }

    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        writeln!(out, "report {}", self.title).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed {seed}").unwrap();
        }
        for s in &self.sections {
            writeln!(out, "section {}", s.name).unwrap();
            for c in &s.cases {
                writeln!(out, "  case {} {}", c.name, c.outcome.word()).unwrap();
                for (k, v) in &c.details {
                    let mut lines = v.lines();
                    writeln!(out, "    {k} {}", lines.next().unwrap_or("")).unwrap();
                    for l in lines {
                        writeln!(out, "    | {l}").unwrap();
                    }
                }
                if timings {
                    writeln!(out, "    millis {}", c.elapsed.as_millis()).unwrap();
                }
            }
            writeln!(
                out,
                "  total pass {} fail {} skip {}",
                s.passed(),
                s.failed(),
                s.count(Outcome::Skip)
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_tree() {
        let mut r = Report::new("t", Some(3));
        r.push(Section::new(
            "s",
            vec![Case::new("a", Outcome::Pass).detail("counts", "1 2"), Case::new("b", Outcome::Fail)],
        ));
        let text = r.render(false);
        assert!(text.contains("  case a pass\n    counts 1 2\n"));
        assert!(text.ends_with("  total pass 1 fail 1 skip 0\n"));
        assert_eq!(r.failed(), 1);
    }
}
