//! Candidate and group-element files.
//!
//! Both share one layout: a header line, `key value` lines, then named
//! blocks `name:` each holding one series in the textual series format.
//!
//! ```text
//! candidate cyclotomic(2)
//! lambda 1/2
//! phi:
//! alphabet free(x,y)
//! maxdeg 3
//! 1 1
//! psi:
//! ...
//! ```
//!
//! Headers: `candidate drinfeld`, `candidate cyclotomic(N)`,
//! `candidate elliptic` with key `lambda`; `gt`, `gtgamma(N)`, `gtell` with
//! key `mu`. Blocks: `phi`, `psi`, `aplus`, `aminus` for candidates, `f`,
//! `g`, `gplus`, `gminus` for group elements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use assoc_core::associator::{
    CyclotomicCandidate, DrinfeldCandidate, EllipticCandidate, GtElement, GtEllElement, GtGammaElement,
};
use assoc_core::series::{parse_rational, parse_series, write_series, TruncatedSeries};
use assoc_core::{Error, Rational, Result};

struct Document {
    header: String,
    keys: BTreeMap<String, String>,
    blocks: BTreeMap<String, String>,
}

fn is_block_name(line: &str) -> Option<&str> {
    let name = line.strip_suffix(':')?;
    (!name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')).then_some(name)
}

fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?.to_string();
    let mut keys = BTreeMap::new();
    let mut blocks: BTreeMap<String, String> = BTreeMap::new();
    let mut current: Option<String> = None;
    for line in lines {
        if let Some(name) = is_block_name(line) {
            if blocks.contains_key(name) {
                return Err(Error::Parse(format!("block `{name}` appears twice")));
            }
            blocks.insert(name.to_string(), String::new());
            current = Some(name.to_string());
        } else if let Some(name) = &current {
            let body = blocks.get_mut(name).expect("block exists");
            body.push_str(line);
            body.push('\n');
        } else {
            let (k, v) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("expected `key value`, got `{line}`")))?;
            if keys.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("key `{k}` appears twice")));
            }
        }
    }
    Ok(Document { header, keys, blocks })
}

impl Document {
    fn take_key(&mut self, key: &str) -> Result<Rational> {
        let v = self.keys.remove(key).ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
        parse_rational(&v)
    }

    fn take_block(&mut self, name: &str) -> Result<TruncatedSeries> {
        let body = self.blocks.remove(name).ok_or_else(|| Error::Parse(format!("missing `{name}:` block")))?;
        parse_series(&body).map_err(|e| Error::Parse(format!("in `{name}:` block: {e}")))
    }

    /// Rejects anything left over.
    fn finish(self) -> Result<()> {
        if let Some(k) = self.keys.keys().next() {
            return Err(Error::Parse(format!("unexpected key `{k}`")));
        }
        if let Some(b) = self.blocks.keys().next() {
            return Err(Error::Parse(format!("unexpected block `{b}:`")));
        }
        Ok(())
    }
}

/// `cyclotomic(3)` ↦ 3.
fn parse_order(head: &str, word: &str) -> Option<Result<usize>> {
    let body = head.strip_prefix(word)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        body.trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad group order in `{head}`"))),
    )
}

fn write_blocks(out: &mut String, blocks: &[(&str, &TruncatedSeries)]) {
    for (name, s) in blocks {
        let _ = writeln!(out, "{name}:");
        out.push_str(&write_series(s));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Drinfeld(DrinfeldCandidate),
    Cyclotomic(CyclotomicCandidate),
    Elliptic(EllipticCandidate),
}

impl Candidate {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = parse_document(text)?;
        let kind = doc
            .header
            .strip_prefix("candidate ")
            .map(|k| k.trim().to_string())
            .ok_or_else(|| Error::Parse(format!("expected `candidate <kind>`, got `{}`", doc.header)))?;
        let lambda = doc.take_key("lambda")?;
        let phi = doc.take_block("phi")?;
        let out = if kind == "drinfeld" {
            Candidate::Drinfeld(DrinfeldCandidate::new(lambda, phi)?)
        } else if kind == "elliptic" {
            let aplus = doc.take_block("aplus")?;
            let aminus = doc.take_block("aminus")?;
            Candidate::Elliptic(EllipticCandidate::new(lambda, phi, aplus, aminus)?)
        } else if let Some(order) = parse_order(&kind, "cyclotomic") {
            let psi = doc.take_block("psi")?;
            Candidate::Cyclotomic(CyclotomicCandidate::new(lambda, phi, psi, order?)?)
        } else {
            return Err(Error::Parse(format!("unknown candidate kind `{kind}`")));
        };
        doc.finish()?;
        Ok(out)
    }

    pub fn maxdeg(&self) -> u32 {
        match self {
            Candidate::Drinfeld(c) => c.maxdeg(),
            Candidate::Cyclotomic(c) => c.maxdeg(),
            Candidate::Elliptic(c) => c.maxdeg(),
        }
    }

    /// The same candidate with every series cut at `maxdeg`.
    pub fn truncate(&self, maxdeg: u32) -> Result<Self> {
        Ok(match self {
            Candidate::Drinfeld(c) => {
                Candidate::Drinfeld(DrinfeldCandidate::new(c.lambda.clone(), c.phi.truncate(maxdeg)?)?)
            }
            Candidate::Cyclotomic(c) => Candidate::Cyclotomic(CyclotomicCandidate::new(
                c.lambda.clone(),
                c.phi.truncate(maxdeg)?,
                c.psi.truncate(maxdeg)?,
                c.order,
            )?),
            Candidate::Elliptic(c) => Candidate::Elliptic(EllipticCandidate::new(
                c.lambda.clone(),
                c.phi.truncate(maxdeg)?,
                c.aplus.truncate(maxdeg)?,
                c.aminus.truncate(maxdeg)?,
            )?),
        })
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        match self {
            Candidate::Drinfeld(c) => {
                let _ = write!(out, "candidate drinfeld\nlambda {}\n", c.lambda);
                write_blocks(&mut out, &[("phi", &c.phi)]);
            }
            Candidate::Cyclotomic(c) => {
                let _ = write!(out, "candidate cyclotomic({})\nlambda {}\n", c.order, c.lambda);
                write_blocks(&mut out, &[("phi", &c.phi), ("psi", &c.psi)]);
            }
            Candidate::Elliptic(c) => {
                let _ = write!(out, "candidate elliptic\nlambda {}\n", c.lambda);
                write_blocks(&mut out, &[("phi", &c.phi), ("aplus", &c.aplus), ("aminus", &c.aminus)]);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFile {
    Gt(GtElement),
    GtGamma(GtGammaElement),
    GtEll(GtEllElement),
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = parse_document(text)?;
        let header = doc.header.trim().to_string();
        let mu = doc.take_key("mu")?;
        let base = GtElement::new(mu, doc.take_block("f")?)?;
        let out = if header == "gt" {
            GroupFile::Gt(base)
        } else if header == "gtell" {
            let gplus = doc.take_block("gplus")?;
            let gminus = doc.take_block("gminus")?;
            GroupFile::GtEll(GtEllElement::new(base, gplus, gminus)?)
        } else if let Some(order) = parse_order(&header, "gtgamma") {
            let g = doc.take_block("g")?;
            GroupFile::GtGamma(GtGammaElement::new(base, g, order?)?)
        } else {
            return Err(Error::Parse(format!("unknown group element header `{header}`")));
        };
        doc.finish()?;
        Ok(out)
    }

    /// `gt`, `gtgamma` or `gtell`.
    pub fn kind(&self) -> &'static str {
        match self {
            GroupFile::Gt(_) => "gt",
            GroupFile::GtGamma(_) => "gtgamma",
            GroupFile::GtEll(_) => "gtell",
        }
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        let base = match self {
            GroupFile::Gt(g) => g,
            GroupFile::GtGamma(g) => &g.base,
            GroupFile::GtEll(g) => &g.base,
        };
        match self {
            GroupFile::Gt(_) => out.push_str("gt\n"),
            GroupFile::GtGamma(g) => {
                let _ = writeln!(out, "gtgamma({})", g.order);
            }
            GroupFile::GtEll(_) => out.push_str("gtell\n"),
        }
        let _ = writeln!(out, "mu {}", base.mu);
        write_blocks(&mut out, &[("f", &base.f)]);
        match self {
            GroupFile::Gt(_) => {}
            GroupFile::GtGamma(g) => write_blocks(&mut out, &[("g", &g.g)]),
            GroupFile::GtEll(g) => write_blocks(&mut out, &[("gplus", &g.gplus), ("gminus", &g.gminus)]),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_round_trip() {
        for c in [
            Candidate::Drinfeld(DrinfeldCandidate::trivial(3).unwrap()),
            Candidate::Cyclotomic(CyclotomicCandidate::trivial(2, 2).unwrap()),
            Candidate::Elliptic(EllipticCandidate::trivial(2).unwrap()),
        ] {
            let text = c.write();
            let back = Candidate::parse(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.write(), text);
        }
    }

    #[test]
    fn group_elements_round_trip() {
        for g in [
            GroupFile::Gt(GtElement::identity(3).unwrap()),
            GroupFile::GtGamma(GtGammaElement::identity(2, 2).unwrap()),
            GroupFile::GtEll(GtEllElement::identity(2).unwrap()),
        ] {
            let text = g.write();
            assert_eq!(GroupFile::parse(&text).unwrap(), g);
        }
    }

    #[test]
    fn malformed_files() {
        let phi = "phi:\nalphabet free(x,y)\nmaxdeg 1\n1 1\n";
        for bad in [
            String::new(),
            format!("candidate drinfeld\n{phi}"),
            format!("candidate octagon\nlambda 1\n{phi}"),
            format!("candidate drinfeld\nlambda 1\nmu 2\n{phi}"),
            format!("candidate drinfeld\nlambda 1\n{phi}psi:\nalphabet free(x)\nmaxdeg 1\n"),
            format!("candidate cyclotomic(0)\nlambda 1\n{phi}"),
            "candidate drinfeld\nlambda 1\nphi:\nalphabet free(x,y)\nmaxdeg 1\n1 x.y\n".to_string(),
        ] {
            assert!(Candidate::parse(&bad).is_err(), "{bad:?}");
        }
    }
}
