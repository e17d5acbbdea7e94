//! Candidates, equation checkers, the degree-by-degree solver and the
//! GT-type group laws and actions.
//!
//! Every check reports one line per equation; a failing line carries the
//! lowest failing weight and the reduced residual of that weight.

mod cyclotomic;
mod drinfeld;
mod elliptic;
mod gt;
pub mod lyndon;
mod report;

pub use cyclotomic::{check_cyclotomic, CyclotomicCandidate, OctagonReading};
pub use drinfeld::{check_drinfeld, solve_drinfeld, DrinfeldCandidate, FreeParameter, Solution};
pub use elliptic::{check_elliptic, EllipticCandidate};
pub use gt::{
    gt_act, gt_compose, gtell_act, gtell_compose, gtgamma_act, gtgamma_compose, verify_gt, GtElement,
    GtEllElement, GtGammaElement,
};
pub use report::{EquationResult, Report, Verdict};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::families::Family;
use crate::series::{Context, TruncatedSeries};
use crate::{Error, Result};

/// `free(x, y)`: the letters of `Φ` and `f`.
pub fn pair_family() -> Family {
    Family::free(&["x", "y"])
}

/// `free(x, y0, …, y{N-1})`: `x` stands for `t01`, `y_a` for `t12^a`.
pub fn cyclotomic_family(order: usize) -> Family {
    let mut names = alloc::vec![String::from("x")];
    names.extend((0..order).map(|a| format!("y{a}")));
    Family::Free(names)
}

/// `free(a, b)`: the letters of `A±`, standing for `α` and `β`.
pub fn elliptic_pair_family() -> Family {
    Family::free(&["a", "b"])
}

/// `free(A, B)`: the letters of `g±`.
pub fn gtell_family() -> Family {
    Family::free(&["A", "B"])
}

pub(crate) fn expect_family(s: &TruncatedSeries, family: &Family, role: &str) -> Result<()> {
    if s.alphabet().family() != family {
        return Err(Error::IncompatibleContext(format!(
            "{role} must live in {family}, found {}",
            s.alphabet().family()
        )));
    }
    Ok(())
}

pub(crate) fn same_maxdeg(items: &[&TruncatedSeries]) -> Result<u32> {
    let d = items[0].maxdeg();
    if let Some(bad) = items.iter().find(|s| s.maxdeg() != d) {
        return Err(Error::IncompatibleContext(format!("maxdeg {} vs {d}", bad.maxdeg())));
    }
    Ok(d)
}

/// `f(A₁, …, A_k) := exp((log f)(log A₁, …, log A_k))`, which equals
/// substituting the logarithms into `f` directly.
pub fn eval_grouplike(f: &TruncatedSeries, target: &Context, args: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    let logs = args.iter().map(|a| a.log()).collect::<Result<Vec<_>>>()?;
    f.substitute(target, &logs)
}
