//! Truncated series in the free associative algebra on a weighted alphabet.
//!
//! Invariants kept by every constructor:
//! - no stored coefficient is zero,
//! - every stored monomial has weight at most `maxdeg`,
//! - binary operations require equal contexts (alphabet and `maxdeg`).
//!
//! Monomials are ordered by weight first and then lexicographically on the
//! alphabet's letter order.

pub mod alphabet;
mod hopf;
mod subst;
mod text;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

pub use alphabet::{Alphabet, Generator};
pub use hopf::TensorSquare;
pub use text::{parse_rational, parse_series, write_series};

use crate::{Error, Rational, Result};

/// Letter indices of a monomial.
pub type Letters = SmallVec<[u16; 8]>;

/// A word in the alphabet, with its cached weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    weight: u32,
    letters: Letters,
}

impl Monomial {
    /// The empty word.
    pub fn one() -> Self {
        Monomial { weight: 0, letters: Letters::new() }
    }

    pub fn new(alphabet: &Alphabet, letters: &[u16]) -> Self {
        let weight = letters.iter().map(|&l| alphabet.weight(l)).sum();
        Monomial { weight, letters: Letters::from_slice(letters) }
    }

    pub(crate) fn from_parts(weight: u32, letters: Letters) -> Self {
        Monomial { weight, letters }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Monomial { weight: self.weight + other.weight, letters }
    }
}

/// Alphabet plus truncation degree.
#[derive(Clone, Debug)]
pub struct Context {
    alphabet: Arc<Alphabet>,
    maxdeg: u32,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.maxdeg == other.maxdeg
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}
impl Eq for Context {}

impl Context {
    pub fn new(alphabet: Arc<Alphabet>, maxdeg: u32) -> Self {
        Context { alphabet, maxdeg }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn with_maxdeg(&self, maxdeg: u32) -> Context {
        Context { alphabet: self.alphabet.clone(), maxdeg }
    }

    /// Dot-separated generator names, `1` for the empty word.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        for (i, &l) in m.letters().iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            out.push_str(self.alphabet.name(l));
        }
        out
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text == "1" {
            return Ok(Monomial::one());
        }
        let mut letters = Letters::new();
        for part in text.split('.') {
            let idx = self
                .alphabet
                .index_of(part)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{part}`")))?;
            letters.push(idx);
        }
        Ok(Monomial::new(&self.alphabet, &letters))
    }

    fn describe(&self) -> String {
        format!("{} at maxdeg {}", self.alphabet.family(), self.maxdeg)
    }
}

/// A finitely supported rational combination of monomials of weight at most
/// `maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, m: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl TruncatedSeries {
    pub fn zero(ctx: &Context) -> Self {
        TruncatedSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Context, c: Rational) -> Self {
        Self::from_terms(ctx, [(Monomial::one(), c)])
    }

    /// The letter with the given index.
    pub fn generator(ctx: &Context, index: u16) -> Self {
        let m = Monomial::new(&ctx.alphabet, &[index]);
        Self::from_terms(ctx, [(m, Rational::one())])
    }

    pub fn generator_named(ctx: &Context, name: &str) -> Result<Self> {
        let idx = ctx
            .alphabet
            .index_of(name)
            .ok_or_else(|| Error::Domain(format!("unknown generator `{name}`")))?;
        Ok(Self::generator(ctx, idx))
    }

    /// Sums duplicate monomials, drops zeros and everything above `maxdeg`.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Context, terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.weight() <= ctx.maxdeg {
                accumulate(&mut map, m, c);
            }
        }
        TruncatedSeries { ctx: ctx.clone(), terms: map }
    }

    pub(crate) fn from_map(ctx: &Context, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.iter().all(|(m, c)| !c.is_zero() && m.weight() <= ctx.maxdeg));
        TruncatedSeries { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.ctx.alphabet
    }

    pub fn maxdeg(&self) -> u32 {
        self.ctx.maxdeg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Smallest weight carrying a nonzero coefficient.
    pub fn lowest_weight(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.weight())
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleContext(format!(
                "{} vs {}",
                self.ctx.describe(),
                other.ctx.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(TruncatedSeries { ctx: self.ctx.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(TruncatedSeries { ctx: self.ctx.clone(), terms })
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        TruncatedSeries { ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        TruncatedSeries { ctx: self.ctx.clone(), terms }
    }

    /// Concatenation product, discarding weights above `maxdeg`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let maxdeg = self.ctx.maxdeg;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            if ma.weight > maxdeg {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.weight + mb.weight > maxdeg {
                    break;
                }
                accumulate(&mut terms, ma.concat(mb), ca * cb);
            }
        }
        TruncatedSeries { ctx: self.ctx.clone(), terms }
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul_unchecked(self))
    }

    /// Product of a nonempty list, left to right.
    pub fn product(factors: &[&Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Domain("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Re-truncates to a smaller degree, producing a series in the context
    /// with that degree.
    pub fn truncate(&self, maxdeg: u32) -> Result<Self> {
        if maxdeg > self.ctx.maxdeg {
            return Err(Error::Domain(format!(
                "cannot raise truncation from {} to {}",
                self.ctx.maxdeg, maxdeg
            )));
        }
        let ctx = self.ctx.with_maxdeg(maxdeg);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight <= maxdeg)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(TruncatedSeries { ctx, terms })
    }

    /// Same terms, read in a context with a larger (or equal) degree.
    pub fn extend_to(&self, maxdeg: u32) -> Result<Self> {
        if maxdeg < self.ctx.maxdeg {
            return self.truncate(maxdeg);
        }
        Ok(TruncatedSeries { ctx: self.ctx.with_maxdeg(maxdeg), terms: self.terms.clone() })
    }

    /// The weight-`d` component.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { ctx: self.ctx.clone(), terms }
    }

    /// Number of terms of weight `d`.
    pub fn count_weight(&self, d: u32) -> usize {
        self.terms.keys().filter(|m| m.weight == d).count()
    }

    /// Term lines `<rational> <monomial>`, one per line, in monomial order.
    pub fn term_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(m, c)| format!("{} {}", c, self.ctx.format_monomial(m)))
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {}", c, self.ctx.format_monomial(m))?;
        }
        Ok(())
    }
}
