use alloc::string::String;

/// Outcome of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict::Fail { witness: witness.into() }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict::Skipped { reason: reason.into() }
    }

    /// `Pass` if `ok`, otherwise a failure with the lazily built witness.
    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok { Verdict::Pass } else { Verdict::Fail { witness: witness() } }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    /// The first failure, otherwise the first skip, otherwise `Pass`.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut skipped = None;
        for v in verdicts {
            match v {
                Verdict::Fail { .. } => return v,
                Verdict::Skipped { .. } if skipped.is_none() => skipped = Some(v),
                _ => {}
            }
        }
        skipped.unwrap_or(Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Skipped { .. } => "skipped",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail { witness } => write!(f, "fail: {witness}"),
            Verdict::Skipped { reason } => write!(f, "skipped: {reason}"),
        }
    }
}

/// A named verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Check { name: name.into(), verdict }
    }
}
