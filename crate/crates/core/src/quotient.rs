//! Normal forms modulo a homogeneous two-sided ideal.
//!
//! The weight-`d` part of the ideal is spanned by `g·I_{d-w(g)}`,
//! `I_{d-w(g)}·g` and the relations of weight `d`. Each degree keeps a
//! reduced row-echelon basis whose pivots are the largest monomials of their
//! rows; a pivot is rewritten as minus the rest of its row.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::families::Family;
use crate::series::{accumulate, Alphabet, Context, Monomial, TruncatedSeries};
use crate::{Error, Rational, Result};

/// Default upper bound on the number of monomials of weight ≤ maxdeg.
pub const DEFAULT_MONOMIAL_CAP: u128 = 10_000_000;

/// Alphabet plus homogeneous relations.
#[derive(Clone, Debug)]
pub struct HomogeneousPresentation {
    alphabet: Arc<Alphabet>,
    relations: Vec<(u32, Vec<(Monomial, Rational)>)>,
}

impl HomogeneousPresentation {
    pub fn new(alphabet: Arc<Alphabet>, relations: &[TruncatedSeries]) -> Result<Self> {
        let mut rels = Vec::new();
        for r in relations {
            if **r.alphabet() != *alphabet {
                return Err(Error::IncompatibleContext("relation in a different alphabet".into()));
            }
            let Some(w) = r.lowest_weight() else { continue };
            if r.terms().any(|(m, _)| m.weight() != w) {
                return Err(Error::Domain(format!("relation `{r}` is not homogeneous")));
            }
            rels.push((w, r.terms().map(|(m, c)| (m.clone(), c.clone())).collect()));
        }
        Ok(HomogeneousPresentation { alphabet, relations: rels })
    }

    pub fn from_family(family: &Family) -> Result<Self> {
        Self::new(family.alphabet()?, &family.relations()?)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }
}

type Row = Vec<(Monomial, Rational)>;

/// Per-degree reduced echelon bases of the ideal.
#[derive(Clone, Debug)]
pub struct NormalFormTable {
    alphabet: Arc<Alphabet>,
    maxdeg: u32,
    counts: Vec<u128>,
    /// pivot ↦ replacement; the replacement never contains a pivot.
    rows: Vec<BTreeMap<Monomial, Row>>,
}

/// Reduces `work` against semi-echelon `rows` (pivot ↦ tail with the pivot
/// coefficient normalized to one). Returns the survivors in descending
/// order.
fn reduce_against(mut work: BTreeMap<Monomial, Rational>, rows: &BTreeMap<Monomial, Row>) -> Row {
    let mut out = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        if let Some(tail) = rows.get(&m) {
            for (m2, c2) in tail {
                accumulate(&mut work, m2.clone(), -(&c * c2));
            }
        } else {
            out.push((m, c));
        }
    }
    out
}

fn normalize(row: Row) -> Option<(Monomial, Row)> {
    let mut it = row.into_iter();
    let (pivot, lead) = it.next()?;
    let inv = lead.recip();
    Some((pivot, it.map(|(m, c)| (m, c * &inv)).collect()))
}

impl NormalFormTable {
    /// Builds all degrees up to `maxdeg`.
    pub fn build(presentation: &HomogeneousPresentation, maxdeg: u32, cap: u128) -> Result<Self> {
        let alphabet = presentation.alphabet.clone();
        let counts = alphabet.monomial_counts(maxdeg);
        let total = counts.iter().fold(0u128, |a, b| a.saturating_add(*b));
        if total > cap {
            return Err(Error::MonomialCap { count: total, cap });
        }
        let mut rows: Vec<BTreeMap<Monomial, Row>> = alloc::vec![BTreeMap::new()];
        for d in 1..=maxdeg {
            // tails stored with pivot coefficient one: pivot + Σ c m
            let mut semi: BTreeMap<Monomial, Row> = BTreeMap::new();
            let gens: Vec<(u16, u32)> =
                (0..alphabet.len() as u16).map(|g| (g, alphabet.weight(g))).collect();
            // left multiples are already echelon: their pivots g·p are distinct
            for &(g, w) in &gens {
                if w > d {
                    continue;
                }
                let gm = Monomial::new(&alphabet, &[g]);
                for (p, repl) in &rows[(d - w) as usize] {
                    let tail = repl.iter().map(|(m, c)| (gm.concat(m), -c.clone())).collect();
                    semi.insert(gm.concat(p), tail);
                }
            }
            let mut candidates: Vec<BTreeMap<Monomial, Rational>> = Vec::new();
            for &(g, w) in &gens {
                if w > d {
                    continue;
                }
                let gm = Monomial::new(&alphabet, &[g]);
                for (p, repl) in &rows[(d - w) as usize] {
                    let mut row = BTreeMap::new();
                    row.insert(p.concat(&gm), Rational::one());
                    for (m, c) in repl {
                        accumulate(&mut row, m.concat(&gm), -c.clone());
                    }
                    candidates.push(row);
                }
            }
            for (w, rel) in &presentation.relations {
                if *w == d {
                    candidates.push(rel.iter().cloned().collect());
                }
            }
            for cand in candidates {
                if let Some((pivot, tail)) = normalize(reduce_against(cand, &semi)) {
                    semi.insert(pivot, tail);
                }
            }
            // back-substitution in ascending pivot order gives reduced form
            let mut reduced: BTreeMap<Monomial, Row> = BTreeMap::new();
            for (pivot, tail) in semi {
                let work: BTreeMap<Monomial, Rational> = tail.into_iter().collect();
                let mut rest = Vec::new();
                for (m, c) in work {
                    if let Some(repl) = reduced.get(&m) {
                        for (m2, c2) in repl {
                            rest.push((m2.clone(), &c * c2));
                        }
                    } else {
                        rest.push((m, c));
                    }
                }
                let mut merged = BTreeMap::new();
                for (m, c) in rest {
                    accumulate(&mut merged, m, c);
                }
                let repl: Row = merged.into_iter().map(|(m, c)| (m, -c)).collect();
                reduced.insert(pivot, repl);
            }
            rows.push(reduced);
        }
        Ok(NormalFormTable { alphabet, maxdeg, counts, rows })
    }

    /// Rebuilds a table from stored rows, checking the echelon shape.
    pub fn from_rows(family: &Family, maxdeg: u32, rows: Vec<Vec<(Monomial, Row)>>) -> Result<Self> {
        let alphabet = family.alphabet()?;
        if rows.len() != maxdeg as usize + 1 {
            return Err(Error::Parse(format!("expected {} degrees of rows", maxdeg + 1)));
        }
        let counts = alphabet.monomial_counts(maxdeg);
        let mut table_rows = Vec::new();
        for (d, degree_rows) in rows.into_iter().enumerate() {
            let map: BTreeMap<Monomial, Row> = degree_rows.into_iter().collect();
            for (p, repl) in &map {
                let bad = p.weight() as usize != d
                    || repl.iter().any(|(m, c)| m >= p || m.weight() != p.weight() || c.is_zero() || map.contains_key(m));
                if bad {
                    return Err(Error::Parse(format!("row with pivot weight {} is not reduced", p.weight())));
                }
            }
            table_rows.push(map);
        }
        Ok(NormalFormTable { alphabet, maxdeg, counts, rows: table_rows })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn family(&self) -> &Family {
        self.alphabet.family()
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn context(&self) -> Context {
        Context::new(self.alphabet.clone(), self.maxdeg)
    }

    /// Pivot rows of degree `d` as (pivot, replacement) pairs.
    pub fn rows(&self, d: u32) -> impl Iterator<Item = (&Monomial, &Row)> {
        self.rows[d as usize].iter()
    }

    pub fn rank(&self, d: u32) -> usize {
        self.rows[d as usize].len()
    }

    /// Dimension of the weight-`d` part of the quotient.
    pub fn hilbert_dim(&self, d: u32) -> Result<u128> {
        if d > self.maxdeg {
            return Err(Error::Domain(format!("degree {d} above table degree {}", self.maxdeg)));
        }
        Ok(self.counts[d as usize] - self.rows[d as usize].len() as u128)
    }

    fn check(&self, s: &TruncatedSeries) -> Result<()> {
        if **s.alphabet() != *self.alphabet || s.maxdeg() > self.maxdeg {
            return Err(Error::IncompatibleContext(format!(
                "series in {} at maxdeg {} against a table for {} at maxdeg {}",
                s.alphabet().family(),
                s.maxdeg(),
                self.family(),
                self.maxdeg
            )));
        }
        Ok(())
    }

    /// The representative of `s` modulo the ideal with no pivot monomial.
    /// Series of lower truncation degree are accepted.
    pub fn reduce(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(s)?;
        let mut out = BTreeMap::new();
        for (m, c) in s.terms() {
            match self.rows[m.weight() as usize].get(m) {
                Some(repl) => {
                    for (m2, c2) in repl {
                        accumulate(&mut out, m2.clone(), c * c2);
                    }
                }
                None => accumulate(&mut out, m.clone(), c.clone()),
            }
        }
        Ok(TruncatedSeries::from_map(s.context(), out))
    }

    pub fn equals_mod_ideal(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<bool> {
        Ok(self.first_failure(a, b)?.is_none())
    }

    /// Lowest weight where `a - b` is not in the ideal, with the reduced
    /// residual of that weight.
    pub fn first_failure(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Option<(u32, TruncatedSeries)>> {
        let r = self.reduce(&a.sub(b)?)?;
        Ok(r.lowest_weight().map(|d| (d, r.homogeneous_part(d))))
    }
}

/// Supplies tables by family and degree.
pub trait TableProvider {
    /// A table for `family` of degree at least `maxdeg`.
    fn table(&self, family: &Family, maxdeg: u32) -> Result<Arc<NormalFormTable>>;
}

/// In-memory provider; keeps the highest-degree table built per family.
#[derive(Debug)]
pub struct TableCache {
    cap: u128,
    tables: RefCell<BTreeMap<Family, Arc<NormalFormTable>>>,
}

impl Default for TableCache {
    fn default() -> Self {
        Self::with_cap(DEFAULT_MONOMIAL_CAP)
    }
}

impl TableCache {
    pub fn with_cap(cap: u128) -> Self {
        TableCache { cap, tables: RefCell::new(BTreeMap::new()) }
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Registers an externally obtained table.
    pub fn insert(&self, table: Arc<NormalFormTable>) {
        let mut tables = self.tables.borrow_mut();
        let keep = tables.get(table.family()).is_some_and(|t| t.maxdeg() >= table.maxdeg());
        if !keep {
            tables.insert(table.family().clone(), table);
        }
    }

    pub fn cached(&self, family: &Family, maxdeg: u32) -> Option<Arc<NormalFormTable>> {
        self.tables.borrow().get(family).filter(|t| t.maxdeg() >= maxdeg).cloned()
    }
}

impl TableProvider for TableCache {
    fn table(&self, family: &Family, maxdeg: u32) -> Result<Arc<NormalFormTable>> {
        if let Some(t) = self.cached(family, maxdeg) {
            return Ok(t);
        }
        let pres = HomogeneousPresentation::from_family(family)?;
        let table = Arc::new(NormalFormTable::build(&pres, maxdeg, self.cap)?);
        self.insert(table.clone());
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyAlgebra;

    fn table(family: Family, d: u32) -> NormalFormTable {
        NormalFormTable::build(&HomogeneousPresentation::from_family(&family).unwrap(), d, DEFAULT_MONOMIAL_CAP)
            .unwrap()
    }

    #[test]
    fn free_alphabet_has_no_ideal() {
        let t = table(Family::free(&["x", "y"]), 3);
        let dims: Vec<u128> = (0..=3).map(|d| t.hilbert_dim(d).unwrap()).collect();
        assert_eq!(dims, [1, 2, 4, 8]);
        let ctx = t.context();
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        let s = x.mul(&y).unwrap();
        assert_eq!(t.reduce(&s).unwrap(), s);
        let (d, _) = t.first_failure(&s, &y.mul(&x).unwrap()).unwrap().unwrap();
        assert_eq!(d, 2);
    }

    #[test]
    fn t3_degree_two_rank() {
        let t = table(Family::Dk(3), 3);
        assert_eq!(t.rank(2), 2);
        assert_eq!(t.hilbert_dim(2).unwrap(), 7);
        assert!(t.hilbert_dim(4).is_err());
        assert_eq!(table(Family::Dk(2), 4).rank(4), 0);
    }

    #[test]
    fn t3_relations_and_center_reduce_to_zero() {
        let t = table(Family::Dk(3), 3);
        let alg = FamilyAlgebra::new(Family::Dk(3), 3).unwrap();
        let t12 = alg.t(1, 2).unwrap();
        let t13 = alg.t(1, 3).unwrap();
        let t23 = alg.t(2, 3).unwrap();
        let r = t12.bracket(&t13.add(&t23).unwrap()).unwrap();
        assert!(t.reduce(&r).unwrap().is_zero());
        let c = alg.central().unwrap();
        assert!(t.reduce(&c.bracket(&t12).unwrap()).unwrap().is_zero());
        let a = t12.mul(&t13).unwrap().add(&t12.mul(&t23).unwrap()).unwrap();
        let b = t13.mul(&t12).unwrap().add(&t23.mul(&t12).unwrap()).unwrap();
        assert!(t.equals_mod_ideal(&a, &b).unwrap());
        assert!(t.equals_mod_ideal(&a, &a).unwrap());
    }

    #[test]
    fn reduction_is_idempotent() {
        let t = table(Family::Dk(4), 3);
        let ctx = t.context();
        let gens: Vec<_> = (0..6).map(|i| TruncatedSeries::generator(&ctx, i)).collect();
        let s = gens[0].mul(&gens[5]).unwrap().mul(&gens[2]).unwrap().add(&gens[3].mul(&gens[1]).unwrap()).unwrap();
        let r = t.reduce(&s).unwrap();
        assert_eq!(t.reduce(&r).unwrap(), r);
    }

    #[test]
    fn small_hilbert_series() {
        let dims = |f: Family, d: u32| {
            let t = table(f, d);
            (0..=d).map(|k| t.hilbert_dim(k).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(dims(Family::Dk(3), 4), [1, 3, 7, 15, 31]);
        assert_eq!(dims(Family::Dk(4), 4), [1, 6, 25, 90, 301]);
        assert_eq!(dims(Family::CyclotomicDk { n: 2, order: 2 }, 3), [1, 4, 13, 40]);
        assert_eq!(dims(Family::CyclotomicDk { n: 2, order: 1 }, 3), [1, 3, 7, 15]);
        assert_eq!(dims(Family::ReducedElliptic(2), 4), [1, 2, 4, 8, 16]);
    }

    #[test]
    fn cap_is_enforced() {
        let pres = HomogeneousPresentation::from_family(&Family::Dk(4)).unwrap();
        let err = NormalFormTable::build(&pres, 6, 1000).unwrap_err();
        assert!(matches!(err, Error::MonomialCap { .. }));
    }

    #[test]
    fn non_homogeneous_relations_are_rejected() {
        let ctx = Family::free(&["x"]).context(3).unwrap();
        let x = TruncatedSeries::generator(&ctx, 0);
        let r = x.add(&x.mul(&x).unwrap()).unwrap();
        assert!(HomogeneousPresentation::new(ctx.alphabet().clone(), &[r]).is_err());
    }

    #[test]
    fn cache_reuses_higher_degree_tables() {
        let cache = TableCache::default();
        let a = cache.table(&Family::Dk(3), 3).unwrap();
        let b = cache.table(&Family::Dk(3), 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
