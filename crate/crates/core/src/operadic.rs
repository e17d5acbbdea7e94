//! Partial maps, insertion-coproduct morphisms and the compositions built
//! from them.
//!
//! A composition `a ∘_p b` is `a^F · b^G` normal-formed in the target, where
//! `F` collapses the inserted block onto slot `p` and `G` reads the block
//! back as the guest's labels. The two images commute in the target, which
//! the tests check generator by generator.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::families::{pairs, Family, FamilyAlgebra, Permutation};
use crate::quotient::TableProvider;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Which base points the source and target carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pointing {
    /// `{*,1..m} → {*,1..n}`, acting `t(n) → t(m)`.
    Single,
    /// `{*,0,1..m} → {*,0,1..n}`, acting `tGamma(n) → tGamma(m)`.
    Double,
    /// `{*,0,1..m} → {*,1..n}` with `0 ↦ *`, acting `t(n) → tGamma(m)`.
    Mixed,
}

/// A partially defined map `{1..m} → {1..n}` (plus `0` for doubly pointed
/// targets); unassigned elements go to the base point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialMap {
    pointing: Pointing,
    target: usize,
    assignment: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(pointing: Pointing, target: usize, assignment: Vec<Option<usize>>) -> Result<Self> {
        for v in assignment.iter().flatten() {
            let ok = *v <= target && (*v > 0 || pointing == Pointing::Double);
            if !ok {
                return Err(Error::Domain(format!("value {v} outside the target of size {target}")));
            }
        }
        Ok(PartialMap { pointing, target, assignment })
    }

    /// From level sets: `levels[i-1] = f⁻¹(i)`; for doubly pointed maps
    /// `levels[0] = f⁻¹(0) \ {0}` and `levels[i] = f⁻¹(i)`.
    pub fn from_levels(pointing: Pointing, source: usize, levels: &[Vec<usize>]) -> Result<Self> {
        let offset = usize::from(pointing != Pointing::Double);
        let target = levels.len().checked_sub(1 - offset).ok_or_else(|| {
            Error::Domain("a doubly pointed map needs the level of 0".into())
        })?;
        let mut assignment = vec![None; source];
        for (idx, level) in levels.iter().enumerate() {
            for &k in level {
                if k == 0 || k > source {
                    return Err(Error::Domain(format!("element {k} outside 1..={source}")));
                }
                if assignment[k - 1].is_some() {
                    return Err(Error::Domain(format!("element {k} appears in two level sets")));
                }
                assignment[k - 1] = Some(idx + offset);
            }
        }
        Self::new(pointing, target, assignment)
    }

    pub fn identity(pointing: Pointing, n: usize) -> Self {
        PartialMap { pointing, target: n, assignment: (1..=n).map(Some).collect() }
    }

    pub fn pointing(&self) -> Pointing {
        self.pointing
    }

    pub fn source(&self) -> usize {
        self.assignment.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `f(k)` for `k` in `1..=m`; `None` is the base point.
    pub fn apply(&self, k: usize) -> Option<usize> {
        self.assignment[k - 1]
    }

    /// `f⁻¹(i)` in increasing order.
    pub fn level(&self, i: usize) -> Vec<usize> {
        (1..=self.source()).filter(|&k| self.apply(k) == Some(i)).collect()
    }

    /// `self ∘ g` (first `g`, then `self`).
    pub fn after(&self, g: &PartialMap) -> Result<PartialMap> {
        use Pointing::*;
        let pointing = match (self.pointing, g.pointing) {
            (Single, Single) => Single,
            (Double, Double) => Double,
            (Mixed, Double) => Mixed,
            (Single, Mixed) => Mixed,
            (a, b) => {
                return Err(Error::Domain(format!("cannot compose {a:?} after {b:?}")));
            }
        };
        if g.target != self.source() {
            return Err(Error::Arity(format!(
                "composing a map from {} after a map into {}",
                self.source(),
                g.target
            )));
        }
        let assignment = g
            .assignment
            .iter()
            .map(|v| match v {
                None => None,
                Some(0) if self.pointing == Double => Some(0),
                Some(0) => None,
                Some(j) => self.apply(*j),
            })
            .collect();
        Ok(PartialMap { pointing, target: self.target, assignment })
    }

    /// Every map of the given shape, in a fixed order.
    pub fn all(pointing: Pointing, source: usize, target: usize) -> Vec<PartialMap> {
        let choices: Vec<Option<usize>> = core::iter::once(None)
            .chain((if pointing == Pointing::Double { 0 } else { 1 }..=target).map(Some))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; source];
        loop {
            out.push(PartialMap {
                pointing,
                target,
                assignment: idx.iter().map(|&i| choices[i]).collect(),
            });
            let mut pos = 0;
            loop {
                if pos == source {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < choices.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.pointing {
            Pointing::Single => "pmap",
            Pointing::Double => "bpmap",
            Pointing::Mixed => "mpmap",
        };
        write!(f, "{head}({}<-{}: ", self.target, self.source())?;
        let first = if self.pointing == Pointing::Double { 0 } else { 1 };
        for i in first..=self.target {
            if i > first {
                write!(f, "|")?;
            }
            let level: Vec<String> = self.level(i).iter().map(|k| format!("{k}")).collect();
            write!(f, "{}", level.join(","))?;
        }
        write!(f, ")")
    }
}

impl FromStr for PartialMap {
    type Err = Error;

    /// `pmap(n<-m: L1|…|Ln)`, `bpmap(n<-m: L0|L1|…|Ln)`,
    /// `mpmap(n<-m: L1|…|Ln)`; a level is a comma list, empty or `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed partial map `{s}`"));
        let open = s.find('(').ok_or_else(bad)?;
        let pointing = match &s[..open] {
            "pmap" => Pointing::Single,
            "bpmap" => Pointing::Double,
            "mpmap" => Pointing::Mixed,
            _ => return Err(bad()),
        };
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let (sizes, levels) = body.split_once(':').ok_or_else(bad)?;
        let (n, m) = sizes.split_once("<-").ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let mut parsed = Vec::new();
        let empty_target = n == 0 && pointing != Pointing::Double && levels.trim().is_empty();
        for level in levels.split('|').filter(|_| !empty_target) {
            let level = level.trim();
            if level.is_empty() || level == "∅" {
                parsed.push(Vec::new());
                continue;
            }
            let items = level
                .split(',')
                .map(|k| k.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            parsed.push(items);
        }
        let expected = if pointing == Pointing::Double { n + 1 } else { n };
        if parsed.len() != expected {
            return Err(Error::Parse(format!("`{s}` lists {} level sets, expected {expected}", parsed.len())));
        }
        PartialMap::from_levels(pointing, m, &parsed).map_err(|e| Error::Parse(format!("{e}")))
    }
}

fn sum_over(ctx: &crate::series::Context, items: impl Iterator<Item = Result<TruncatedSeries>>) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(ctx);
    for item in items {
        s = s.add(&item?)?;
    }
    Ok(s)
}

/// `Σ_{k∈f⁻¹(i), l∈f⁻¹(j)} make(k, l)`.
fn level_pairs(
    f: &PartialMap,
    i: usize,
    j: usize,
    ctx: &crate::series::Context,
    make: impl Fn(usize, usize) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let li = f.level(i);
    let lj = f.level(j);
    sum_over(ctx, li.iter().flat_map(|&k| lj.iter().map(move |&l| (k, l))).map(|(k, l)| make(k, l)))
}

fn expect_family(x: &TruncatedSeries, expected: &Family) -> Result<()> {
    let got = x.alphabet().family();
    if got != expected {
        return Err(Error::Arity(format!("expected an element of {expected}, got {got}")));
    }
    Ok(())
}

/// `x^f` for a singly pointed `f`, from `t(n)` to `t(m)`.
pub fn insertion_coproduct(f: &PartialMap, x: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.pointing != Pointing::Single {
        return Err(Error::Domain("insertion_coproduct takes singly pointed maps".into()));
    }
    expect_family(x, &Family::Dk(f.target))?;
    let target = FamilyAlgebra::new(Family::Dk(f.source()), x.maxdeg())?;
    let ctx = target.context().clone();
    let images = pairs(f.target)
        .map(|(i, j)| level_pairs(f, i, j, &ctx, |k, l| target.t(k, l)))
        .collect::<Result<Vec<_>>>()?;
    x.substitute(&ctx, &images)
}

/// `x^f` for a doubly pointed `f` (`tGamma(n,N) → tGamma(m,N)`) or a mixed
/// `f` (`t(n) → tGamma(m,N)`).
pub fn insertion_coproduct_cyclotomic(f: &PartialMap, x: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let n = f.target;
    let m = f.source();
    let target = FamilyAlgebra::new(Family::CyclotomicDk { n: m, order }, x.maxdeg())?;
    let ctx = target.context().clone();
    match f.pointing {
        Pointing::Double => {
            expect_family(x, &Family::CyclotomicDk { n, order })?;
            let mut images = Vec::new();
            let zero_level = f.level(0);
            for i in 1..=n {
                let level = f.level(i);
                let mut s = sum_over(&ctx, level.iter().map(|&j| target.k(j)))?;
                for (a, &j) in level.iter().enumerate() {
                    for &k in &level[a + 1..] {
                        s = s.add(&target.tg_sum(j, k)?)?;
                    }
                }
                for &j in &zero_level {
                    for &k in &level {
                        s = s.add(&target.tg_sum(j, k)?)?;
                    }
                }
                images.push(s);
            }
            for (i, j) in pairs(n) {
                for a in 0..order {
                    images.push(level_pairs(f, i, j, &ctx, |k, l| target.tg(k, l, a as i64))?);
                }
            }
            x.substitute(&ctx, &images)
        }
        Pointing::Mixed => {
            expect_family(x, &Family::Dk(n))?;
            let images = pairs(n)
                .map(|(i, j)| level_pairs(f, i, j, &ctx, |k, l| target.tg(k, l, 0)))
                .collect::<Result<Vec<_>>>()?;
            x.substitute(&ctx, &images)
        }
        Pointing::Single => Err(Error::Domain("use insertion_coproduct for singly pointed maps".into())),
    }
}

/// `x^f` for a singly pointed `f` on the elliptic families:
/// `α_i ↦ Σ_{k∈f⁻¹(i)} α_k`, same for `β`, `t_{ij} ↦ Σ t_{kl}`.
pub fn insertion_coproduct_elliptic(f: &PartialMap, x: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.pointing != Pointing::Single {
        return Err(Error::Domain("elliptic insertion takes singly pointed maps".into()));
    }
    let family = x.alphabet().family().clone();
    let (n, reduced) = match family {
        Family::Elliptic(n) => (n, false),
        Family::ReducedElliptic(n) => (n, true),
        _ => return Err(Error::Arity(format!("expected an elliptic family, got {family}"))),
    };
    if n != f.target {
        return Err(Error::Arity(format!("map into {} acting on arity {n}", f.target)));
    }
    let m = f.source();
    let target_family = if reduced { Family::ReducedElliptic(m) } else { Family::Elliptic(m) };
    let target = FamilyAlgebra::new(target_family, x.maxdeg())?;
    let ctx = target.context().clone();
    let kept = if reduced { n.saturating_sub(1) } else { n };
    let mut images = Vec::new();
    for i in 1..=kept {
        images.push(sum_over(&ctx, f.level(i).into_iter().map(|k| target.alpha(k)))?);
    }
    for i in 1..=kept {
        images.push(sum_over(&ctx, f.level(i).into_iter().map(|k| target.beta(k)))?);
    }
    for (i, j) in pairs(n) {
        images.push(level_pairs(f, i, j, &ctx, |k, l| target.t(k, l))?);
    }
    x.substitute(&ctx, &images)
}

/// `t(n) → tell(m)` or `tellbar(m)` along a singly pointed map, landing on
/// the `t` letters.
fn insertion_into_elliptic(f: &PartialMap, x: &TruncatedSeries, target_family: Family) -> Result<TruncatedSeries> {
    expect_family(x, &Family::Dk(f.target))?;
    let target = FamilyAlgebra::new(target_family, x.maxdeg())?;
    let ctx = target.context().clone();
    let images = pairs(f.target)
        .map(|(i, j)| level_pairs(f, i, j, &ctx, |k, l| target.t(k, l)))
        .collect::<Result<Vec<_>>>()?;
    x.substitute(&ctx, &images)
}

/// Collapse `{1..n+m-1} → {1..n}` of the block `p..p+m-1` onto `p`.
pub fn collapse_map(pointing: Pointing, n: usize, m: usize, p: usize) -> PartialMap {
    let assignment = (1..n + m)
        .map(|k| {
            Some(if k < p {
                k
            } else if k < p + m {
                p
            } else {
                k + 1 - m
            })
        })
        .collect();
    PartialMap { pointing, target: n, assignment }
}

/// Reads the block `p..p+m-1` of `{1..n+m-1}` as `1..m`.
pub fn block_map(pointing: Pointing, n: usize, m: usize, p: usize) -> PartialMap {
    let assignment = (1..n + m)
        .map(|k| if k >= p && k < p + m { Some(k + 1 - p) } else { None })
        .collect();
    PartialMap { pointing, target: m, assignment }
}

fn check_slot(p: usize, n: usize) -> Result<()> {
    if p == 0 || p > n {
        return Err(Error::SlotOutOfRange { slot: p, arity: n });
    }
    Ok(())
}

fn finish(tables: &dyn TableProvider, host: TruncatedSeries, guest: TruncatedSeries) -> Result<TruncatedSeries> {
    let prod = host.mul(&guest)?;
    let table = tables.table(prod.alphabet().family(), prod.maxdeg())?;
    table.reduce(&prod)
}

fn arity_of(x: &TruncatedSeries) -> Result<usize> {
    x.alphabet()
        .family()
        .arity()
        .ok_or_else(|| Error::Arity("free alphabets have no arity".into()))
}

/// `host ∘_p guest` in the operad `t`.
pub fn operad_compose(
    tables: &dyn TableProvider,
    p: usize,
    host: &TruncatedSeries,
    guest: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let n = arity_of(host)?;
    let m = arity_of(guest)?;
    expect_family(host, &Family::Dk(n))?;
    expect_family(guest, &Family::Dk(m))?;
    check_slot(p, n)?;
    check_maxdeg(host, guest)?;
    let h = insertion_coproduct(&collapse_map(Pointing::Single, n, m, p), host)?;
    let g = insertion_coproduct(&block_map(Pointing::Single, n, m, p), guest)?;
    finish(tables, h, g)
}

fn check_maxdeg(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.maxdeg() != b.maxdeg() {
        return Err(Error::IncompatibleContext(format!(
            "maxdeg {} vs {}",
            a.maxdeg(),
            b.maxdeg()
        )));
    }
    Ok(())
}

/// `host ∘_p guest` of the right `t`-module `tGamma`.
pub fn moperad_compose_module(
    tables: &dyn TableProvider,
    p: usize,
    host: &TruncatedSeries,
    guest: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let Family::CyclotomicDk { n, order } = host.alphabet().family().clone() else {
        return Err(Error::Arity("module host must be a tGamma element".into()));
    };
    let m = arity_of(guest)?;
    expect_family(guest, &Family::Dk(m))?;
    check_slot(p, n)?;
    check_maxdeg(host, guest)?;
    let h = insertion_coproduct_cyclotomic(&collapse_map(Pointing::Double, n, m, p), host, order)?;
    let g = insertion_coproduct_cyclotomic(&block_map(Pointing::Mixed, n, m, p), guest, order)?;
    finish(tables, h, g)
}

/// `host ∘_0 guest`: the guest keeps labels `1..m`, the host moves to
/// `m+1..m+n`.
pub fn moperad_compose_monoid(
    tables: &dyn TableProvider,
    host: &TruncatedSeries,
    guest: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let Family::CyclotomicDk { n, order } = host.alphabet().family().clone() else {
        return Err(Error::Arity("monoid host must be a tGamma element".into()));
    };
    let Family::CyclotomicDk { n: m, order: order2 } = guest.alphabet().family().clone() else {
        return Err(Error::Arity("monoid guest must be a tGamma element".into()));
    };
    if order != order2 {
        return Err(Error::Arity(format!("group orders {order} and {order2} differ")));
    }
    check_maxdeg(host, guest)?;
    let host_map = PartialMap {
        pointing: Pointing::Double,
        target: n,
        assignment: (1..=n + m).map(|k| Some(if k <= m { 0 } else { k - m })).collect(),
    };
    let guest_map = PartialMap {
        pointing: Pointing::Double,
        target: m,
        assignment: (1..=n + m).map(|k| if k <= m { Some(k) } else { None }).collect(),
    };
    let h = insertion_coproduct_cyclotomic(&host_map, host, order)?;
    let g = insertion_coproduct_cyclotomic(&guest_map, guest, order)?;
    finish(tables, h, g)
}

/// `host ∘_p guest` of the right `t`-module `tell` (or `tellbar`).
pub fn elliptic_module_compose(
    tables: &dyn TableProvider,
    p: usize,
    host: &TruncatedSeries,
    guest: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let family = host.alphabet().family().clone();
    let (n, reduced) = match family {
        Family::Elliptic(n) => (n, false),
        Family::ReducedElliptic(n) => (n, true),
        _ => return Err(Error::Arity(format!("elliptic host expected, got {family}"))),
    };
    let m = arity_of(guest)?;
    expect_family(guest, &Family::Dk(m))?;
    check_slot(p, n)?;
    check_maxdeg(host, guest)?;
    let target = if reduced { Family::ReducedElliptic(n + m - 1) } else { Family::Elliptic(n + m - 1) };
    let h = insertion_coproduct_elliptic(&collapse_map(Pointing::Single, n, m, p), host)?;
    let g = insertion_into_elliptic(&block_map(Pointing::Single, n, m, p), guest, target)?;
    finish(tables, h, g)
}

/// The permutation `σ ∘_p τ` of `{1..n+m-1}`: the block at `p` is permuted
/// by `τ` and moved as a whole to `σ(p)`, the other labels follow `σ`.
pub fn block_permutation(sigma: &Permutation, p: usize, tau: &Permutation) -> Result<Permutation> {
    let n = sigma.len();
    let m = tau.len();
    check_slot(p, n)?;
    let sp = sigma.apply(p);
    let images = (1..n + m)
        .map(|k| {
            if k >= p && k < p + m {
                sp + tau.apply(k + 1 - p) - 1
            } else {
                let h = if k < p { k } else { k + 1 - m };
                let sh = sigma.apply(h);
                if sh < sp {
                    sh
                } else {
                    sh + m - 1
                }
            }
        })
        .collect();
    Permutation::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::TableCache;

    #[test]
    fn level_set_example() {
        // f⁻¹(1) = {1,3}, f⁻¹(2) = {2}, f⁻¹(3) = {5}, m = 6
        let f: PartialMap = "pmap(3<-6: 1,3|2|5)".parse().unwrap();
        let src = FamilyAlgebra::new(Family::Dk(3), 2).unwrap();
        let dst = FamilyAlgebra::new(Family::Dk(6), 2).unwrap();
        let img = insertion_coproduct(&f, &src.t(1, 2).unwrap()).unwrap();
        assert_eq!(img, dst.t(1, 2).unwrap().add(&dst.t(2, 3).unwrap()).unwrap());
        assert_eq!(f.to_string(), "pmap(3<-6: 1,3|2|5)");
    }

    #[test]
    fn unit_map_example() {
        let f: PartialMap = "pmap(3<-2: 1|∅|2)".parse().unwrap();
        let src = FamilyAlgebra::new(Family::Dk(3), 2).unwrap();
        let dst = FamilyAlgebra::new(Family::Dk(2), 2).unwrap();
        assert_eq!(insertion_coproduct(&f, &src.t(1, 3).unwrap()).unwrap(), dst.t(1, 2).unwrap());
        assert!(insertion_coproduct(&f, &src.t(1, 2).unwrap()).unwrap().is_zero());
        assert!(insertion_coproduct(&f, &src.t(2, 3).unwrap()).unwrap().is_zero());
        assert_eq!(insertion_coproduct(&f, &src.central().unwrap()).unwrap(), dst.t(1, 2).unwrap());
    }

    #[test]
    fn cyclotomic_insertion_examples() {
        let order = 2;
        let f: PartialMap = "bpmap(1<-2: |1,2)".parse().unwrap();
        let src = FamilyAlgebra::new(Family::CyclotomicDk { n: 1, order }, 2).unwrap();
        let dst = FamilyAlgebra::new(Family::CyclotomicDk { n: 2, order }, 2).unwrap();
        let img = insertion_coproduct_cyclotomic(&f, &src.k(1).unwrap(), order).unwrap();
        let expected = dst.k(1).unwrap().add(&dst.k(2).unwrap()).unwrap().add(&dst.tg_sum(1, 2).unwrap()).unwrap();
        assert_eq!(img, expected);

        let id = PartialMap::identity(Pointing::Double, 2);
        let x = dst.k(1).unwrap().mul(&dst.tg(1, 2, 1).unwrap()).unwrap();
        assert_eq!(insertion_coproduct_cyclotomic(&id, &x, order).unwrap(), x);

        let g: PartialMap = "mpmap(2<-3: 3|1)".parse().unwrap();
        let t2 = FamilyAlgebra::new(Family::Dk(2), 2).unwrap();
        let dst3 = FamilyAlgebra::new(Family::CyclotomicDk { n: 3, order }, 2).unwrap();
        let img = insertion_coproduct_cyclotomic(&g, &t2.t(1, 2).unwrap(), order).unwrap();
        assert_eq!(img, dst3.tg(3, 1, 0).unwrap());
    }

    #[test]
    fn operad_composition_examples() {
        let tables = TableCache::default();
        let t2 = FamilyAlgebra::new(Family::Dk(2), 2).unwrap();
        let t3 = FamilyAlgebra::new(Family::Dk(3), 2).unwrap();
        let one = TruncatedSeries::one(t2.context());
        let x = t2.t(1, 2).unwrap();
        let t = |i, j| t3.t(i, j).unwrap();
        let c1h = operad_compose(&tables, 1, &x, &one).unwrap();
        assert_eq!(c1h, t(1, 3).add(&t(2, 3)).unwrap());
        assert_eq!(operad_compose(&tables, 1, &one, &x).unwrap(), t(1, 2));
        assert_eq!(operad_compose(&tables, 2, &x, &one).unwrap(), t(1, 2).add(&t(1, 3)).unwrap());
        assert_eq!(operad_compose(&tables, 2, &one, &x).unwrap(), t(2, 3));
        assert!(matches!(operad_compose(&tables, 3, &x, &x), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn moperad_examples() {
        let tables = TableCache::default();
        let order = 2;
        let g1 = FamilyAlgebra::new(Family::CyclotomicDk { n: 1, order }, 2).unwrap();
        let g2 = FamilyAlgebra::new(Family::CyclotomicDk { n: 2, order }, 2).unwrap();
        let t2 = FamilyAlgebra::new(Family::Dk(2), 2).unwrap();
        let one_t = TruncatedSeries::one(t2.context());
        let one_g = TruncatedSeries::one(g1.context());
        let img = moperad_compose_module(&tables, 1, &g1.k(1).unwrap(), &one_t).unwrap();
        let expected = g2.k(1).unwrap().add(&g2.k(2).unwrap()).unwrap().add(&g2.tg_sum(1, 2).unwrap()).unwrap();
        assert_eq!(img, expected);
        let img = moperad_compose_module(&tables, 1, &one_g, &t2.t(1, 2).unwrap()).unwrap();
        assert_eq!(img, g2.tg(1, 2, 0).unwrap());

        let host = moperad_compose_monoid(&tables, &g1.k(1).unwrap(), &one_g).unwrap();
        let expected = g2.k(2).unwrap().add(&g2.tg_sum(1, 2).unwrap()).unwrap();
        assert_eq!(host, expected);
        let guest = moperad_compose_monoid(&tables, &one_g, &g1.k(1).unwrap()).unwrap();
        assert_eq!(guest, g2.k(1).unwrap());

        let g0 = FamilyAlgebra::new(Family::CyclotomicDk { n: 0, order }, 2).unwrap();
        let x = g1.k(1).unwrap().mul(&g1.k(1).unwrap()).unwrap();
        let same = moperad_compose_monoid(&tables, &x, &TruncatedSeries::one(g0.context())).unwrap();
        assert_eq!(same, x);
    }

    #[test]
    fn elliptic_examples() {
        let tables = TableCache::default();
        let e1 = FamilyAlgebra::new(Family::Elliptic(1), 2).unwrap();
        let e2 = FamilyAlgebra::new(Family::Elliptic(2), 2).unwrap();
        let t2 = FamilyAlgebra::new(Family::Dk(2), 2).unwrap();
        let one_t = TruncatedSeries::one(t2.context());
        let img = elliptic_module_compose(&tables, 1, &e1.alpha(1).unwrap(), &one_t).unwrap();
        assert_eq!(img, e2.alpha(1).unwrap().add(&e2.alpha(2).unwrap()).unwrap());
        let one_e = TruncatedSeries::one(e1.context());
        let img = elliptic_module_compose(&tables, 1, &one_e, &t2.t(1, 2).unwrap()).unwrap();
        let table = tables.table(&Family::Elliptic(2), 2).unwrap();
        assert!(table.equals_mod_ideal(&img, &e2.t(1, 2).unwrap()).unwrap());
    }

    #[test]
    fn partial_map_grammar() {
        for s in ["pmap(2<-3: 1|3)", "bpmap(1<-2: 2|1)", "mpmap(2<-2: |1,2)", "pmap(0<-2: )"] {
            let f: PartialMap = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("pmap(2<-3: 1|1)".parse::<PartialMap>().is_err());
        assert!("pmap(2<-3: 1)".parse::<PartialMap>().is_err());
        assert!("qmap(2<-3: 1|2)".parse::<PartialMap>().is_err());
    }

    #[test]
    fn block_permutation_identity() {
        let s = Permutation::identity(3);
        let t = Permutation::identity(2);
        assert_eq!(block_permutation(&s, 2, &t).unwrap(), Permutation::identity(4));
    }
}
