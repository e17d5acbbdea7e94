//! Malcev models: group-like series, optionally paired with a scalar
//! (product with the completed integers) or a residue mod `N` (split
//! extension by a cyclic group).
//!
//! Truncation degree counts the weight of the free letters only.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::families::Family;
use crate::series::{Context, TruncatedSeries};
use crate::{Error, Rational, Result};

/// The named word contexts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Free group on `k` letters.
    Free(usize),
    /// `F(2)` times the line, with central generator `c`.
    FreeTimesLine,
    /// `F(2)` through the split model `F(N+1) ⋊ Z/N` of its relative
    /// completion along `x ↦ 1, y ↦ 0`.
    RelativeF2(usize),
    /// Pure braids on three strands, as `F(2)` times the line.
    Pb3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Free,
    Product,
    Semidirect(usize),
}

impl ModelKind {
    fn shape(&self) -> Shape {
        match self {
            ModelKind::Free(_) => Shape::Free,
            ModelKind::FreeTimesLine | ModelKind::Pb3 => Shape::Product,
            ModelKind::RelativeF2(n) => Shape::Semidirect(*n),
        }
    }

    /// Word generators in alphabet order.
    pub fn word_generators(&self) -> Vec<String> {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        match self {
            ModelKind::Free(2) | ModelKind::RelativeF2(_) => own(&["x", "y"]),
            ModelKind::Free(3) => own(&["x", "y", "z"]),
            ModelKind::Free(k) => (1..=*k).map(|i| format!("x{i}")).collect(),
            ModelKind::FreeTimesLine => own(&["x", "y", "c"]),
            ModelKind::Pb3 => own(&["x12", "x13", "x23"]),
        }
    }

    /// Letters of the series component.
    pub fn series_family(&self) -> Family {
        match self {
            ModelKind::Free(2) | ModelKind::FreeTimesLine | ModelKind::Pb3 => Family::free(&["X", "Y"]),
            ModelKind::Free(3) => Family::free(&["X", "Y", "Z"]),
            ModelKind::Free(k) => Family::Free((1..=*k).map(|i| format!("X{i}")).collect()),
            ModelKind::RelativeF2(n) => {
                let mut names = alloc::vec![String::from("X")];
                names.extend((0..*n).map(|a| format!("Y{a}")));
                Family::Free(names)
            }
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Free(k) => write!(f, "F({k})"),
            ModelKind::FreeTimesLine => write!(f, "F(2)xZ"),
            ModelKind::RelativeF2(n) => write!(f, "relF2({n})"),
            ModelKind::Pb3 => write!(f, "PB3"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown group context `{s}`"));
        let arg = |head: &str| -> Result<usize> {
            let inner = s.strip_prefix(head).and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            inner.trim().parse::<usize>().map_err(|_| bad())
        };
        if s == "PB3" {
            Ok(ModelKind::Pb3)
        } else if s == "F(2)xZ" {
            Ok(ModelKind::FreeTimesLine)
        } else if s.starts_with("relF2(") {
            let n = arg("relF2(")?;
            if n == 0 {
                return Err(Error::Domain("relF2 needs N ≥ 1".into()));
            }
            Ok(ModelKind::RelativeF2(n))
        } else if s.starts_with("F(") {
            let k = arg("F(")?;
            if k == 0 {
                return Err(Error::Domain("F(k) needs k ≥ 1".into()));
            }
            Ok(ModelKind::Free(k))
        } else {
            Err(bad())
        }
    }
}

/// A model at a fixed truncation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    kind: ModelKind,
    series: Context,
}

impl GroupContext {
    pub fn new(kind: ModelKind, maxdeg: u32) -> Result<Self> {
        let series = kind.series_family().context(maxdeg)?;
        Ok(GroupContext { kind, series })
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn series_context(&self) -> &Context {
        &self.series
    }

    pub fn maxdeg(&self) -> u32 {
        self.series.maxdeg()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            ctx: self.clone(),
            series: TruncatedSeries::one(&self.series),
            scalar: Rational::zero(),
            residue: 0,
        }
    }

    /// `(exp(log_part), scalar, residue)`; `log_part` must be primitive.
    pub fn element(&self, log_part: &TruncatedSeries, scalar: Rational, residue: usize) -> Result<GroupElement> {
        let series = log_part.exp()?;
        self.from_parts(series, scalar, residue)
    }

    /// Checks the invariants of the chosen shape.
    pub fn from_parts(&self, series: TruncatedSeries, scalar: Rational, residue: usize) -> Result<GroupElement> {
        if series.context() != &self.series {
            return Err(Error::IncompatibleContext(format!("series outside the letters of {}", self.kind)));
        }
        if !series.is_grouplike() {
            return Err(Error::Domain("series component is not group-like".into()));
        }
        match self.kind.shape() {
            Shape::Free if !scalar.is_zero() || residue != 0 => {
                return Err(Error::Domain(format!("{} carries no scalar or residue", self.kind)));
            }
            Shape::Product if residue != 0 => {
                return Err(Error::Domain(format!("{} carries no residue", self.kind)));
            }
            Shape::Semidirect(n) if residue >= n || !scalar.is_zero() => {
                return Err(Error::Domain(format!("residue must lie in [0, {n}) and no scalar")));
            }
            _ => {}
        }
        Ok(GroupElement { ctx: self.clone(), series, scalar, residue })
    }

    /// Image of a word generator.
    pub fn generator(&self, name: &str) -> Result<GroupElement> {
        let gens = self.kind.word_generators();
        let idx = gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Domain(format!("unknown generator `{name}` in {}", self.kind)))?;
        let letter = |i: u16| TruncatedSeries::generator(&self.series, i);
        let zero = Rational::zero();
        match &self.kind {
            ModelKind::Free(_) => self.element(&letter(idx as u16), zero, 0),
            ModelKind::FreeTimesLine => match idx {
                2 => Ok(GroupElement { scalar: Rational::one(), ..self.identity() }),
                i => self.element(&letter(i as u16), zero, 0),
            },
            ModelKind::Pb3 => match name {
                "x12" => self.element(&letter(0), zero, 0),
                "x23" => self.element(&letter(1), zero, 0),
                _ => {
                    let series = letter(0).neg().exp()?.mul(&letter(1).neg().exp()?)?;
                    self.from_parts(series, Rational::one(), 0)
                }
            },
            ModelKind::RelativeF2(n) => match idx {
                0 => {
                    let root = letter(0).scale(&Rational::new(BigInt::one(), BigInt::from(*n)));
                    self.element(&root, zero, 1 % n)
                }
                _ => self.element(&letter(1), zero, 0),
            },
        }
    }

    /// The automorphism `a ⋆ -` of the series component: `X` fixed,
    /// `Y_b ↦ Y_{b+a mod N}`.
    fn shift(&self, a: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let Shape::Semidirect(n) = self.kind.shape() else {
            return Ok(u.clone());
        };
        if a % n == 0 {
            return Ok(u.clone());
        }
        let mut images = alloc::vec![TruncatedSeries::generator(&self.series, 0)];
        for b in 0..n {
            images.push(TruncatedSeries::generator(&self.series, (1 + (b + a) % n) as u16));
        }
        u.substitute(&self.series, &images)
    }
}

/// An element of a Malcev model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    ctx: GroupContext,
    series: TruncatedSeries,
    scalar: Rational,
    residue: usize,
}

impl GroupElement {
    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Coordinate on the line factor of product models.
    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    /// Residue mod `N` of split models.
    pub fn residue(&self) -> usize {
        self.residue
    }

    pub fn log(&self) -> Result<TruncatedSeries> {
        self.series.log()
    }

    pub fn is_identity(&self) -> bool {
        self.residue == 0 && self.scalar.is_zero() && self.series == TruncatedSeries::one(self.series.context())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.ctx.kind)?;
        match self.ctx.kind.shape() {
            Shape::Product => writeln!(f, "scalar {}", self.scalar)?,
            Shape::Semidirect(_) => writeln!(f, "residue {}", self.residue)?,
            Shape::Free => {}
        }
        writeln!(f, "log:")?;
        let log = self.series.log().map_err(|_| fmt::Error)?;
        write!(f, "{}", crate::series::write_series(&log))
    }
}

pub fn group_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.ctx != h.ctx {
        return Err(Error::IncompatibleContext(format!("{} vs {}", g.ctx.kind, h.ctx.kind)));
    }
    let moved = g.ctx.shift(g.residue, &h.series)?;
    let residue = match g.ctx.kind.shape() {
        Shape::Semidirect(n) => (g.residue + h.residue) % n,
        _ => 0,
    };
    Ok(GroupElement {
        ctx: g.ctx.clone(),
        series: g.series.mul(&moved)?,
        scalar: &g.scalar + &h.scalar,
        residue,
    })
}

pub fn group_inv(g: &GroupElement) -> Result<GroupElement> {
    let inv = g.series.inverse()?;
    let (series, residue) = match g.ctx.kind.shape() {
        Shape::Semidirect(n) => {
            let back = (n - g.residue) % n;
            (g.ctx.shift(back, &inv)?, back)
        }
        _ => (inv, 0),
    };
    Ok(GroupElement { ctx: g.ctx.clone(), series, scalar: -&g.scalar, residue })
}

/// `g^s`; non-integral powers need a trivial residue.
pub fn power(g: &GroupElement, s: &Rational) -> Result<GroupElement> {
    if g.residue == 0 {
        return Ok(GroupElement {
            ctx: g.ctx.clone(),
            series: g.series.pow(s)?,
            scalar: &g.scalar * s,
            residue: 0,
        });
    }
    if !s.is_integer() {
        return Err(Error::Domain(format!("power {s} of an element with residue {}", g.residue)));
    }
    let mut e = s.to_integer();
    let mut base = if e.is_negative() { group_inv(g)? } else { g.clone() };
    e = e.abs();
    let mut acc = g.ctx.identity();
    let two = BigInt::from(2);
    while !e.is_zero() {
        if (&e % &two).is_one() {
            acc = group_mul(&acc, &base)?;
        }
        e /= &two;
        if !e.is_zero() {
            base = group_mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// A word: generator names with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(String, Rational)>);

impl Word {
    pub fn letters(&self) -> &[(String, Rational)] {
        &self.0
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, name: &str) -> Rational {
        self.0.iter().filter(|(g, _)| g == name).map(|(_, e)| e.clone()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    fn require_integral(&self) -> Result<()> {
        match self.0.iter().find(|(_, e)| !e.is_integer()) {
            Some((g, e)) => Err(Error::Domain(format!("exponent {e} of {g} must be an integer"))),
            None => Ok(()),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated `gen^exp` tokens; a bare `gen` means exponent 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for token in s.split_whitespace() {
            let (g, e) = match token.split_once('^') {
                Some((g, e)) => {
                    let e: Rational = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (g, e)
                }
                None => (token, Rational::one()),
            };
            if g.is_empty() {
                return Err(Error::Parse(format!("missing generator in `{token}`")));
            }
            out.push((g.to_string(), e));
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}^{e}")?;
        }
        Ok(())
    }
}

/// Left-to-right product of generator powers.
pub fn word_eval(word: &Word, ctx: &GroupContext) -> Result<GroupElement> {
    let mut acc = ctx.identity();
    for (g, e) in word.letters() {
        acc = group_mul(&acc, &power(&ctx.generator(g)?, e)?)?;
    }
    Ok(acc)
}

/// A pure braid word in `x12, x13, x23` in the model `F(2) × line`.
pub fn pb3_embed(word: &Word, maxdeg: u32) -> Result<GroupElement> {
    word.require_integral()?;
    word_eval(word, &GroupContext::new(ModelKind::Pb3, maxdeg)?)
}

/// A word in `x, y` in the split model of the relative completion with
/// respect to `F(2) → Z/N`.
pub fn relcomp_f2(word: &Word, order: usize, maxdeg: u32) -> Result<GroupElement> {
    word.require_integral()?;
    word_eval(word, &GroupContext::new(ModelKind::RelativeF2(order), maxdeg)?)
}

/// `p_N`: exponent sum of `x` mod `N`.
pub fn residue_of(word: &Word, order: usize) -> Result<usize> {
    word.require_integral()?;
    let n = BigInt::from(order);
    let r = ((word.exponent_sum("x").to_integer() % &n) + &n) % &n;
    r.to_usize().ok_or_else(|| Error::Domain("residue overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ctx(s: &str, d: u32) -> GroupContext {
        GroupContext::new(s.parse().unwrap(), d).unwrap()
    }

    #[test]
    fn basic_products() {
        let f2 = ctx("F(2)", 4);
        let x = f2.generator("x").unwrap();
        let y = f2.generator("y").unwrap();
        assert!(group_mul(&x, &group_inv(&x).unwrap()).unwrap().is_identity());
        let xy = group_mul(&x, &y).unwrap();
        let sx = TruncatedSeries::generator(f2.series_context(), 0);
        let sy = TruncatedSeries::generator(f2.series_context(), 1);
        assert_eq!(xy.log().unwrap(), sx.bch(&sy).unwrap());

        let rel = ctx("relF2(2)", 3);
        let shift = GroupElement { residue: 1, ..rel.identity() };
        assert!(group_mul(&shift, &shift).unwrap().is_identity());
    }

    #[test]
    fn powers() {
        let f2 = ctx("F(2)", 4);
        let x = f2.generator("x").unwrap();
        assert_eq!(power(&x, &q(1, 1)).unwrap(), x);
        assert!(power(&x, &q(0, 1)).unwrap().is_identity());
        let half = power(&x, &q(1, 2)).unwrap();
        let sx = TruncatedSeries::generator(f2.series_context(), 0);
        assert_eq!(half.series(), &sx.scale(&q(1, 2)).exp().unwrap());

        let rel = ctx("relF2(3)", 3);
        let xr = rel.generator("x").unwrap();
        assert!(matches!(power(&xr, &q(1, 2)), Err(Error::Domain(_))));
        let cube = power(&xr, &q(3, 1)).unwrap();
        let big_x = TruncatedSeries::generator(rel.series_context(), 0);
        assert_eq!(cube.series(), &big_x.exp().unwrap());
        assert_eq!(cube.residue(), 0);
        assert_eq!(power(&xr, &q(-2, 1)).unwrap().residue(), 1);
    }

    #[test]
    fn words() {
        let f2 = ctx("F(2)", 2);
        assert!(word_eval(&Word::default(), &f2).unwrap().is_identity());
        let w: Word = "x^1 y^1 x^-1 y^-1".parse().unwrap();
        let sx = TruncatedSeries::generator(f2.series_context(), 0);
        let sy = TruncatedSeries::generator(f2.series_context(), 1);
        assert_eq!(word_eval(&w, &f2).unwrap().log().unwrap(), sx.bracket(&sy).unwrap());
        let w: Word = "x^1 y^-1 x^1/2".parse().unwrap();
        assert_eq!(w.to_string(), "x^1 y^-1 x^1/2");
        assert!("^2".parse::<Word>().is_err());
        assert!(word_eval(&"q^1".parse().unwrap(), &f2).is_err());
    }

    #[test]
    fn pure_braids() {
        let twist = pb3_embed(&"x12 x13 x23".parse().unwrap(), 4).unwrap();
        assert_eq!(twist.scalar(), &q(1, 1));
        assert_eq!(twist.series(), &TruncatedSeries::one(twist.series().context()));
        let a = pb3_embed(&"x13 x23 x12".parse().unwrap(), 4).unwrap();
        let b = pb3_embed(&"x23 x12 x13".parse().unwrap(), 4).unwrap();
        assert_eq!(a, b);
        assert!(pb3_embed(&"x12^1/2".parse().unwrap(), 4).is_err());
    }

    #[test]
    fn relative_completion() {
        let n = 3;
        let xn = relcomp_f2(&"x^3".parse().unwrap(), n, 3).unwrap();
        let gctx = xn.context().clone();
        let big_x = TruncatedSeries::generator(gctx.series_context(), 0);
        assert_eq!(xn.series(), &big_x.exp().unwrap());
        assert_eq!(xn.residue(), 0);
        assert_eq!(relcomp_f2(&"x".parse().unwrap(), n, 3).unwrap().residue(), 1);
        let y = relcomp_f2(&"y".parse().unwrap(), n, 3).unwrap();
        assert_eq!(y.series(), &TruncatedSeries::generator(gctx.series_context(), 1).exp().unwrap());
        // x y x⁻¹ is the conjugate of Y1 by the N-th root of X
        let c = relcomp_f2(&"x y x^-1".parse().unwrap(), n, 3).unwrap();
        let root = big_x.scale(&q(1, 3)).exp().unwrap();
        let y1 = TruncatedSeries::generator(gctx.series_context(), 2).exp().unwrap();
        let expected = TruncatedSeries::product(&[&root, &y1, &root.inverse().unwrap()]).unwrap();
        assert_eq!(c.series(), &expected);
        assert_eq!(c.residue(), 0);
    }

    #[test]
    fn context_names() {
        for s in ["F(2)", "F(3)", "F(5)", "F(2)xZ", "relF2(4)", "PB3"] {
            assert_eq!(s.parse::<ModelKind>().unwrap().to_string(), s);
        }
        assert!("F(0)".parse::<ModelKind>().is_err());
        assert!("G(2)".parse::<ModelKind>().is_err());
    }
}
