//! Line-oriented textual format:
//!
//! ```text
//! alphabet t(3)
//! maxdeg 2
//! 1 1
//! -1/2 t[1,2].t[2,3]
//! ```
//!
//! One term per line after the header, in monomial order when written.
//! Blank lines and `#` comments are ignored when reading. A generator
//! written `t[j,i]` or `t[j,i;a]` with `j > i` is read as `t[i,j]`,
//! respectively `t[i,j;N-a]`.

use alloc::format;
use alloc::string::{String, ToString};

use crate::families::Family;
use crate::series::{accumulate, Context, Monomial, TruncatedSeries};
use crate::{Error, Rational, Result};

/// Canonical text of `s`, newline terminated.
pub fn write_series(s: &TruncatedSeries) -> String {
    let mut out = format!("alphabet {}\nmaxdeg {}\n", s.alphabet().family(), s.maxdeg());
    for line in s.term_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational `{text}`"));
    if let Some((_, d)) = text.split_once('/') {
        if d.trim().trim_start_matches('0').is_empty() {
            return Err(bad());
        }
    }
    text.parse::<Rational>().map_err(|_| bad())
}

/// Rewrites an out-of-order pair index into the stored orientation.
fn canonical_name(name: &str, family: &Family) -> String {
    let Some(body) = name.strip_prefix("t[").and_then(|b| b.strip_suffix(']')) else {
        return name.to_string();
    };
    let (pair, residue) = match body.split_once(';') {
        Some((p, a)) => (p, Some(a)),
        None => (body, None),
    };
    let Some((i, j)) = pair.split_once(',') else {
        return name.to_string();
    };
    let (Ok(i), Ok(j)) = (i.trim().parse::<usize>(), j.trim().parse::<usize>()) else {
        return name.to_string();
    };
    if i <= j {
        return name.to_string();
    }
    match (residue, family.order()) {
        (None, _) => format!("t[{j},{i}]"),
        (Some(a), Some(order)) => match a.trim().parse::<usize>() {
            Ok(a) if a < order => format!("t[{j},{i};{}]", (order - a) % order),
            _ => name.to_string(),
        },
        (Some(_), None) => name.to_string(),
    }
}

fn parse_monomial(ctx: &Context, text: &str) -> Result<Monomial> {
    let family = ctx.alphabet().family();
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let normalized: alloc::vec::Vec<String> = text.split('.').map(|p| canonical_name(p.trim(), family)).collect();
    ctx.parse_monomial(&normalized.join("."))
}

/// Reads one series. Repeated monomials are summed; terms above `maxdeg`
/// are an error.
pub fn parse_series(text: &str) -> Result<TruncatedSeries> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = |line: Option<&str>, key: &str| -> Result<String> {
        let line = line.ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
        line.strip_prefix(key)
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .map(|rest| rest.trim().to_string())
            .ok_or_else(|| Error::Parse(format!("expected `{key} …`, got `{line}`")))
    };
    let family: Family = header(lines.next(), "alphabet")?.parse()?;
    let maxdeg_text = header(lines.next(), "maxdeg")?;
    let maxdeg: u32 = maxdeg_text
        .parse()
        .map_err(|_| Error::Parse(format!("bad maxdeg `{maxdeg_text}`")))?;
    let ctx = family.context(maxdeg)?;
    let mut terms = alloc::collections::BTreeMap::new();
    for line in lines {
        let (c, m) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("expected `<rational> <monomial>`, got `{line}`")))?;
        let m = parse_monomial(&ctx, m)?;
        if m.weight() > maxdeg {
            return Err(Error::Parse(format!("term `{line}` exceeds maxdeg {maxdeg}")));
        }
        accumulate(&mut terms, m, parse_rational(c)?);
    }
    Ok(TruncatedSeries::from_terms(&ctx, terms))
}
