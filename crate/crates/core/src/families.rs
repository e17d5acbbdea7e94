//! Generator alphabets, relations and group actions of the Drinfeld-Kohno
//! families.
//!
//! Generator names:
//! - `t[i,j]` (i<j) in `t(n)`, `tell(n)`, `tellbar(n)`,
//! - `k[i]` and `t[i,j;a]` (i<j, 0≤a<N) in `tGamma(n,N)`,
//! - `a[i]`, `b[i]` for the elliptic letters.
//!
//! Symmetric generators are identified at the naming level: `t[j,i] = t[i,j]`
//! and `t[j,i;a] = t[i,j;N-a]`. In `tellbar(n)` the letters `a[n]`, `b[n]`
//! are eliminated as minus the sum of the others.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::series::{Alphabet, Context, Generator, Monomial, TruncatedSeries};
use crate::{Error, Rational, Result};

/// Names a generator alphabet together with its relations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Free(Vec<String>),
    /// `t(n)`
    Dk(usize),
    /// `tGamma(n, N)`
    CyclotomicDk { n: usize, order: usize },
    /// `tell(n)`
    Elliptic(usize),
    /// `tellbar(n)`
    ReducedElliptic(usize),
}

impl Family {
    pub fn free(names: &[&str]) -> Family {
        Family::Free(names.iter().map(|s| s.to_string()).collect())
    }

    /// Arity `n`; `None` for free alphabets.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Family::Free(_) => None,
            Family::Dk(n) | Family::Elliptic(n) | Family::ReducedElliptic(n) => Some(*n),
            Family::CyclotomicDk { n, .. } => Some(*n),
        }
    }

    /// Group order `N` of the cyclotomic family.
    pub fn order(&self) -> Option<usize> {
        match self {
            Family::CyclotomicDk { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn alphabet(&self) -> Result<Arc<Alphabet>> {
        let gen = |name: String, weight: u32, bidegree: Option<(u32, u32)>| Generator { name, weight, bidegree };
        let mut gens = Vec::new();
        match self {
            Family::Free(names) => {
                for name in names {
                    if !is_identifier(name) {
                        return Err(Error::Domain(format!("`{name}` is not a valid letter name")));
                    }
                    gens.push(gen(name.clone(), 1, None));
                }
            }
            Family::Dk(n) => {
                for (i, j) in pairs(*n) {
                    gens.push(gen(format!("t[{i},{j}]"), 1, None));
                }
            }
            Family::CyclotomicDk { n, order } => {
                if *order == 0 {
                    return Err(Error::Domain("group order must be at least 1".into()));
                }
                for i in 1..=*n {
                    gens.push(gen(format!("k[{i}]"), 1, None));
                }
                for (i, j) in pairs(*n) {
                    for a in 0..*order {
                        gens.push(gen(format!("t[{i},{j};{a}]"), 1, None));
                    }
                }
            }
            Family::Elliptic(n) | Family::ReducedElliptic(n) => {
                let kept = if matches!(self, Family::Elliptic(_)) { *n } else { n.saturating_sub(1) };
                for i in 1..=kept {
                    gens.push(gen(format!("a[{i}]"), 1, Some((1, 0))));
                }
                for i in 1..=kept {
                    gens.push(gen(format!("b[{i}]"), 1, Some((0, 1))));
                }
                for (i, j) in pairs(*n) {
                    gens.push(gen(format!("t[{i},{j}]"), 2, Some((1, 1))));
                }
            }
        }
        Alphabet::new(self.clone(), gens)
    }

    pub fn context(&self, maxdeg: u32) -> Result<Context> {
        Ok(Context::new(self.alphabet()?, maxdeg))
    }

    /// Largest weight among the relations.
    pub fn relation_weight(&self) -> u32 {
        match self {
            Family::Elliptic(_) | Family::ReducedElliptic(_) => 4,
            _ => 2,
        }
    }

    /// The complete, deduplicated list of homogeneous relations.
    pub fn relations(&self) -> Result<Vec<TruncatedSeries>> {
        let alg = FamilyAlgebra::new(self.clone(), self.relation_weight())?;
        let mut out = Vec::new();
        match self {
            Family::Free(_) => {}
            Family::Dk(n) => {
                for (i, j) in pairs(*n) {
                    for k in 1..=*n {
                        if k != i && k != j {
                            let r = alg.t(i, j)?.bracket(&alg.t(i, k)?.add(&alg.t(j, k)?)?)?;
                            out.push(r);
                        }
                    }
                }
                for (i, j) in pairs(*n) {
                    for (k, l) in pairs(*n) {
                        if (i, j) < (k, l) && k != i && k != j && l != i && l != j {
                            out.push(alg.t(i, j)?.bracket(&alg.t(k, l)?)?);
                        }
                    }
                }
            }
            Family::CyclotomicDk { n, order } => {
                let n = *n;
                let order = *order as i64;
                let gammas: Vec<i64> = (0..order).collect();
                let distinct = |v: &[usize]| v.iter().enumerate().all(|(a, x)| v[..a].iter().all(|y| y != x));
                for i in 1..=n {
                    for j in 1..=n {
                        for k in 1..=n {
                            if !distinct(&[i, j, k]) {
                                continue;
                            }
                            for &al in &gammas {
                                // (b) first half
                                out.push(alg.k(i)?.bracket(&alg.tg(j, k, al)?)?);
                                for &be in &gammas {
                                    // (c)
                                    let rhs = alg.tg(i, k, al + be)?.add(&alg.tg(j, k, be)?)?;
                                    out.push(alg.tg(i, j, al)?.bracket(&rhs)?);
                                }
                            }
                            for l in 1..=n {
                                if !distinct(&[i, j, k, l]) {
                                    continue;
                                }
                                for &al in &gammas {
                                    for &be in &gammas {
                                        out.push(alg.tg(i, j, al)?.bracket(&alg.tg(k, l, be)?)?);
                                    }
                                }
                            }
                        }
                        if i == j {
                            continue;
                        }
                        let mut sum_ij = TruncatedSeries::zero(alg.context());
                        for &al in &gammas {
                            sum_ij = sum_ij.add(&alg.tg(i, j, al)?)?;
                        }
                        // (d)
                        out.push(alg.k(i)?.bracket(&alg.k(j)?.add(&sum_ij)?)?);
                        // (e)
                        let left = alg.k(i)?.add(&alg.k(j)?)?.add(&sum_ij)?;
                        for &al in &gammas {
                            out.push(left.bracket(&alg.tg(i, j, al)?)?);
                        }
                    }
                }
            }
            Family::Elliptic(n) | Family::ReducedElliptic(n) => {
                let n = *n;
                for i in 1..=n {
                    for j in 1..=n {
                        if i == j {
                            continue;
                        }
                        for k in 1..=n {
                            if k == i || k == j {
                                continue;
                            }
                            // (c)
                            out.push(alg.t(i, j)?.bracket(&alg.t(i, k)?.add(&alg.t(j, k)?)?)?);
                            // (g)
                            out.push(alg.alpha(i)?.bracket(&alg.t(j, k)?)?);
                            out.push(alg.beta(i)?.bracket(&alg.t(j, k)?)?);
                            for l in 1..=n {
                                if l != i && l != j && l != k {
                                    // (b)
                                    out.push(alg.t(i, j)?.bracket(&alg.t(k, l)?)?);
                                }
                            }
                        }
                        // (d)
                        out.push(alg.alpha(i)?.bracket(&alg.beta(j)?)?.sub(&alg.t(i, j)?)?);
                        // (e)
                        out.push(alg.alpha(i)?.bracket(&alg.alpha(j)?)?);
                        out.push(alg.beta(i)?.bracket(&alg.beta(j)?)?);
                        // (h)
                        out.push(alg.alpha(i)?.add(&alg.alpha(j)?)?.bracket(&alg.t(i, j)?)?);
                        out.push(alg.beta(i)?.add(&alg.beta(j)?)?.bracket(&alg.t(i, j)?)?);
                    }
                    // (f)
                    let mut r = alg.alpha(i)?.bracket(&alg.beta(i)?)?;
                    for j in 1..=n {
                        if j != i {
                            r = r.add(&alg.t(i, j)?)?;
                        }
                    }
                    out.push(r);
                }
            }
        }
        Ok(dedup_relations(out))
    }
}

/// Drops zero relations and relations proportional to an earlier one.
fn dedup_relations(rels: Vec<TruncatedSeries>) -> Vec<TruncatedSeries> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let Some((_, lead)) = r.terms().last() else { continue };
        let normalized = r.scale(&lead.recip());
        let key: Vec<(Monomial, Rational)> =
            normalized.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if seen.insert(key) {
            out.push(r);
        }
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Pairs `i < j` in `1..=n`, lexicographically.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Free(names) => write!(f, "free({})", names.join(",")),
            Family::Dk(n) => write!(f, "t({n})"),
            Family::CyclotomicDk { n, order } => write!(f, "tGamma({n},{order})"),
            Family::Elliptic(n) => write!(f, "tell({n})"),
            Family::ReducedElliptic(n) => write!(f, "tellbar({n})"),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got `{s}`")))
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("unknown family `{s}`")));
        }
        let head = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        match head {
            "free" => {
                let names: Vec<String> = if body.trim().is_empty() {
                    Vec::new()
                } else {
                    body.split(',').map(|x| x.trim().to_string()).collect()
                };
                for name in &names {
                    if !is_identifier(name) {
                        return Err(Error::Parse(format!("`{name}` is not a valid letter name")));
                    }
                }
                Ok(Family::Free(names))
            }
            "t" => Ok(Family::Dk(parse_usize(body)?)),
            "tell" => Ok(Family::Elliptic(parse_usize(body)?)),
            "tellbar" => Ok(Family::ReducedElliptic(parse_usize(body)?)),
            "tGamma" => {
                let (a, b) = body
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("tGamma needs two parameters: `{s}`")))?;
                let order = parse_usize(b)?;
                if order == 0 {
                    return Err(Error::Parse("tGamma needs N ≥ 1".into()));
                }
                Ok(Family::CyclotomicDk { n: parse_usize(a)?, order })
            }
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// Element constructors for one family at one truncation degree.
#[derive(Clone, Debug)]
pub struct FamilyAlgebra {
    family: Family,
    ctx: Context,
}

impl FamilyAlgebra {
    pub fn new(family: Family, maxdeg: u32) -> Result<Self> {
        let ctx = family.context(maxdeg)?;
        Ok(FamilyAlgebra { family, ctx })
    }

    pub fn from_context(ctx: &Context) -> Self {
        FamilyAlgebra { family: ctx.alphabet().family().clone(), ctx: ctx.clone() }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    fn arity(&self) -> usize {
        self.family.arity().unwrap_or(0)
    }

    fn named(&self, name: &str) -> Result<TruncatedSeries> {
        TruncatedSeries::generator_named(&self.ctx, name)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.arity() {
            return Err(Error::Arity(format!("index {i} outside 1..={} in {}", self.arity(), self.family)));
        }
        Ok(())
    }

    /// `t_{ij}` for `i ≠ j` in `t(n)`, `tell(n)`, `tellbar(n)`; in `tGamma`
    /// `t(0, i)` is `t_{0i}`.
    pub fn t(&self, i: usize, j: usize) -> Result<TruncatedSeries> {
        if let Family::CyclotomicDk { .. } = self.family {
            return match (i, j) {
                (0, k) | (k, 0) => self.k(k),
                _ => Err(Error::Domain("use tg(i, j, a) in a cyclotomic family".into())),
            };
        }
        if !matches!(self.family, Family::Dk(_) | Family::Elliptic(_) | Family::ReducedElliptic(_)) {
            return Err(Error::Domain(format!("{} has no t generators", self.family)));
        }
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Domain(format!("t[{i},{i}] is not a generator")));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.named(&format!("t[{a},{b}]"))
    }

    /// `t_{0i}` in `tGamma`.
    pub fn k(&self, i: usize) -> Result<TruncatedSeries> {
        if self.family.order().is_none() {
            return Err(Error::Domain(format!("{} has no k generators", self.family)));
        }
        self.check_index(i)?;
        self.named(&format!("k[{i}]"))
    }

    /// `t_{ij}^a` with `t_{ji}^a = t_{ij}^{-a}`; `a` is read modulo `N`.
    pub fn tg(&self, i: usize, j: usize, a: i64) -> Result<TruncatedSeries> {
        let order = self
            .family
            .order()
            .ok_or_else(|| Error::Domain(format!("{} has no t[i,j;a] generators", self.family)))?
            as i64;
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Domain(format!("t[{i},{i};a] is not a generator")));
        }
        let (a, b, r) = if i < j { (i, j, a) } else { (j, i, -a) };
        self.named(&format!("t[{a},{b};{}]", r.rem_euclid(order)))
    }

    /// `Σ_a t_{ij}^a`.
    pub fn tg_sum(&self, i: usize, j: usize) -> Result<TruncatedSeries> {
        let order = self.family.order().unwrap_or(0) as i64;
        let mut s = TruncatedSeries::zero(&self.ctx);
        for a in 0..order {
            s = s.add(&self.tg(i, j, a)?)?;
        }
        Ok(s)
    }

    fn elliptic_letter(&self, prefix: &str, i: usize) -> Result<TruncatedSeries> {
        self.check_index(i)?;
        match self.family {
            Family::Elliptic(_) => self.named(&format!("{prefix}[{i}]")),
            Family::ReducedElliptic(n) => {
                if i < n {
                    self.named(&format!("{prefix}[{i}]"))
                } else {
                    let mut s = TruncatedSeries::zero(&self.ctx);
                    for k in 1..n {
                        s = s.sub(&self.named(&format!("{prefix}[{k}]"))?)?;
                    }
                    Ok(s)
                }
            }
            _ => Err(Error::Domain(format!("{} has no elliptic letters", self.family))),
        }
    }

    /// `α_i`; in `tellbar(n)`, `α_n = -Σ_{i<n} α_i`.
    pub fn alpha(&self, i: usize) -> Result<TruncatedSeries> {
        self.elliptic_letter("a", i)
    }

    /// `β_i`; in `tellbar(n)`, `β_n = -Σ_{i<n} β_i`.
    pub fn beta(&self, i: usize) -> Result<TruncatedSeries> {
        self.elliptic_letter("b", i)
    }

    /// `Σ_{i<j} t_{ij}` in `t(n)`.
    pub fn central(&self) -> Result<TruncatedSeries> {
        let mut s = TruncatedSeries::zero(&self.ctx);
        for (i, j) in pairs(self.arity()) {
            s = s.add(&self.t(i, j)?)?;
        }
        Ok(s)
    }

    /// All letters as series, in alphabet order.
    pub fn generators(&self) -> Vec<TruncatedSeries> {
        (0..self.ctx.alphabet().len())
            .map(|i| TruncatedSeries::generator(&self.ctx, i as u16))
            .collect()
    }
}

/// A permutation of `1..=n` in one-line image notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!("not a permutation: {images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Arity("permutations of different sizes".into()));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.apply(i)).collect()))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// All permutations of `1..=n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

fn parse_call<'a>(s: &'a str, head: &str) -> Result<&'a str> {
    let s = s.trim();
    s.strip_prefix(head)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `{head}(...)`, got `{s}`")))
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = parse_call(s, "perm")?;
        let images = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?
        };
        Permutation::new(images).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// An element of `Γⁿ` with `Γ = Z/N`, stored as residues in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaTuple {
    order: usize,
    values: Vec<usize>,
}

impl GammaTuple {
    pub fn new(values: &[i64], order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("group order must be at least 1".into()));
        }
        let values = values.iter().map(|v| v.rem_euclid(order as i64) as usize).collect();
        Ok(GammaTuple { order, values })
    }

    pub fn zero(n: usize, order: usize) -> Self {
        GammaTuple { order, values: vec![0; n] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Component `i` (1-based).
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order || self.len() != other.len() {
            return Err(Error::Arity("Γ-tuples of different shapes".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) % self.order)
            .collect();
        Ok(GammaTuple { order: self.order, values })
    }

    /// Parses `gamma(1,0)`, reducing modulo `order`.
    pub fn parse(s: &str, order: usize) -> Result<Self> {
        let body = parse_call(s, "gamma")?;
        let values = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad residue `{v}`"))))
                .collect::<Result<Vec<_>>>()?
        };
        GammaTuple::new(&values, order)
    }
}

impl fmt::Display for GammaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Left action `σ•x`: relabels every letter by `σ` and extends
/// multiplicatively.
pub fn symmetric_action(sigma: &Permutation, x: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ctx = x.context();
    let alg = FamilyAlgebra::from_context(ctx);
    let family = alg.family().clone();
    let n = family
        .arity()
        .ok_or_else(|| Error::Arity("free alphabets carry no symmetric action".into()))?;
    if sigma.len() != n {
        return Err(Error::Arity(format!("permutation of {} acting on {family}", sigma.len())));
    }
    let s = |i: usize| sigma.apply(i);
    let mut images = Vec::with_capacity(ctx.alphabet().len());
    match family {
        Family::Dk(_) => {
            for (i, j) in pairs(n) {
                images.push(alg.t(s(i), s(j))?);
            }
        }
        Family::CyclotomicDk { order, .. } => {
            for i in 1..=n {
                images.push(alg.k(s(i))?);
            }
            for (i, j) in pairs(n) {
                for a in 0..order {
                    images.push(alg.tg(s(i), s(j), a as i64)?);
                }
            }
        }
        Family::Elliptic(_) | Family::ReducedElliptic(_) => {
            let kept = if matches!(family, Family::Elliptic(_)) { n } else { n - 1 };
            for i in 1..=kept {
                images.push(alg.alpha(s(i))?);
            }
            for i in 1..=kept {
                images.push(alg.beta(s(i))?);
            }
            for (i, j) in pairs(n) {
                images.push(alg.t(s(i), s(j))?);
            }
        }
        Family::Free(_) => unreachable!(),
    }
    x.substitute(ctx, &images)
}

/// Left action of `Γⁿ` on `tGamma(n, N)`: `t_{jk}^a ↦ t_{jk}^{a+γ_j-γ_k}`,
/// `t_{0j}` fixed.
pub fn gamma_action(gamma: &GammaTuple, x: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ctx = x.context();
    let alg = FamilyAlgebra::from_context(ctx);
    let Family::CyclotomicDk { n, order } = alg.family().clone() else {
        return Err(Error::Arity(format!("Γ acts on tGamma families, not {}", alg.family())));
    };
    if gamma.len() != n || gamma.order() != order {
        return Err(Error::Arity(format!(
            "{gamma} (mod {}) acting on tGamma({n},{order})",
            gamma.order()
        )));
    }
    let mut images = Vec::with_capacity(ctx.alphabet().len());
    for i in 1..=n {
        images.push(alg.k(i)?);
    }
    for (i, j) in pairs(n) {
        for a in 0..order {
            let shift = gamma.get(i) as i64 - gamma.get(j) as i64;
            images.push(alg.tg(i, j, a as i64 + shift)?);
        }
    }
    x.substitute(ctx, &images)
}
