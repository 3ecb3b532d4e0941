//! Gate runner for the acceptance checks: one line per criterion, a time
//! limit per criterion, and a process exit status summarizing the lot.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// Outcome detail: `Ok` carries the evidence, `Err` the first mismatch.
pub type Check = Result<String, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {} [{:.2?}]", self.name, self.detail, self.elapsed)
    }
}

#[derive(Default)]
pub struct Gate {
    verdicts: Vec<Verdict>,
}

impl Gate {
    pub fn new() -> Gate {
        Gate::default()
    }

    /// Runs `check` and records it; exceeding `limit` fails an otherwise
    /// passing check.
    pub fn run(&mut self, name: &'static str, limit: Duration, check: impl FnOnce() -> Check) -> &Verdict {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:.2?}")),
            Err(d) => (false, d),
        };
        self.verdicts.push(Verdict { name, passed, detail, elapsed });
        let v = self.verdicts.last().expect("just pushed");
        println!("{}", v.line());
        v
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn summary(&self) -> String {
        let passed = self.verdicts.iter().filter(|v| v.passed).count();
        let mut s = format!("{passed}/{} criteria passed", self.verdicts.len());
        for v in self.verdicts.iter().filter(|v| !v.passed) {
            let _ = write!(s, "\n  failed: {}", v.name);
        }
        s
    }
}

/// Fails with `msg` unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_limits() {
        let mut gate = Gate::new();
        assert!(gate.run("ok", Duration::from_secs(60), || Ok("fine".into())).passed);
        assert!(!gate.run("bad", Duration::from_secs(60), || Err("broken".into())).passed);
        let slow = gate.run("slow", Duration::ZERO, || {
            std::thread::sleep(Duration::from_millis(2));
            Ok("late".into())
        });
        assert!(!slow.passed);
        assert!(slow.line().starts_with("FAIL slow: late; took"));
        assert!(!gate.all_passed());
        assert!(gate.summary().starts_with("1/3 criteria passed"));
        assert!(gate.summary().contains("failed: bad"));
    }

    #[test]
    fn ensure_reports_message() {
        assert_eq!(ensure(true, || "x".into()), Ok(()));
        assert_eq!(ensure(false, || "x".into()), Err("x".into()));
    }
}
