use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::quotient::NormalFormTable;
use crate::series::TruncatedSeries;
use crate::Result;

/// Outcome of one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Lowest failing weight, the number of terms of the residual at that
    /// weight, and the residual itself when it is a series.
    Fail { degree: u32, residual_terms: usize, residual: Option<TruncatedSeries> },
    /// Not checked, with the reason.
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationResult {
    pub name: String,
    pub maxdeg: u32,
    pub verdict: Verdict,
}

impl EquationResult {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fail { .. })
    }

    /// `(degree, residual_terms)` as printed.
    pub fn summary(&self) -> Option<(u32, usize)> {
        match &self.verdict {
            Verdict::Pass => Some((self.maxdeg, 0)),
            Verdict::Fail { degree, residual_terms, .. } => Some((*degree, *residual_terms)),
            Verdict::Skip(_) => None,
        }
    }
}

impl fmt::Display for EquationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Pass => write!(f, "{} PASS deg={} residual_terms=0", self.name, self.maxdeg),
            Verdict::Fail { degree, residual_terms, .. } => {
                write!(f, "{} FAIL deg={degree} residual_terms={residual_terms}", self.name)
            }
            Verdict::Skip(reason) => write!(f, "{} SKIP {reason}", self.name),
        }
    }
}

/// Ordered list of equation results.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<EquationResult>,
}

impl Report {
    /// No equation failed (skipped ones do not count).
    pub fn passed(&self) -> bool {
        !self.entries.iter().any(|e| e.failed())
    }

    pub fn get(&self, name: &str) -> Option<&EquationResult> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub(crate) fn push(&mut self, name: &str, maxdeg: u32, verdict: Verdict) {
        self.entries.push(EquationResult { name: name.into(), maxdeg, verdict });
    }

    pub(crate) fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.name = alloc::format!("{prefix}{}", e.name);
            self.entries.push(e);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Verdict for `difference = 0` in a free algebra.
pub(crate) fn vanishes(difference: &TruncatedSeries) -> Verdict {
    match difference.lowest_weight() {
        None => Verdict::Pass,
        Some(d) => {
            let residual = difference.homogeneous_part(d);
            Verdict::Fail { degree: d, residual_terms: residual.len(), residual: Some(residual) }
        }
    }
}

/// Verdict for `lhs = rhs` modulo the ideal of `table`.
pub(crate) fn equal_mod(table: &NormalFormTable, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Result<Verdict> {
    Ok(match table.first_failure(lhs, rhs)? {
        None => Verdict::Pass,
        Some((d, residual)) => Verdict::Fail { degree: d, residual_terms: residual.len(), residual: Some(residual) },
    })
}

/// Verdict for group-likeness.
pub(crate) fn grouplike(s: &TruncatedSeries) -> Result<Verdict> {
    use crate::series::TensorSquare;
    let defect = s.coproduct().sub(&TensorSquare::tensor(s, s)?)?;
    Ok(match defect.lowest_weight() {
        None => Verdict::Pass,
        Some(d) => {
            let count = defect.terms().filter(|((a, b), _)| a.weight() + b.weight() == d).count();
            Verdict::Fail { degree: d, residual_terms: count, residual: None }
        }
    })
}
