use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::lyndon::{bracketing, lyndon_words};
use super::report::{equal_mod, grouplike, vanishes, Report};
use super::{expect_family, pair_family};
use crate::families::{Family, FamilyAlgebra};
use crate::operadic::{insertion_coproduct, PartialMap, Pointing};
use crate::quotient::TableProvider;
use crate::series::{Monomial, TruncatedSeries};
use crate::{Error, Rational, Result};

/// A pair `(λ, Φ)` with `Φ` in `free(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldCandidate {
    pub lambda: Rational,
    pub phi: TruncatedSeries,
}

impl DrinfeldCandidate {
    pub fn new(lambda: Rational, phi: TruncatedSeries) -> Result<Self> {
        expect_family(&phi, &pair_family(), "phi")?;
        Ok(DrinfeldCandidate { lambda, phi })
    }

    /// `(0, 1)` at the given degree.
    pub fn trivial(maxdeg: u32) -> Result<Self> {
        let ctx = pair_family().context(maxdeg)?;
        Ok(DrinfeldCandidate { lambda: Rational::zero(), phi: TruncatedSeries::one(&ctx) })
    }

    pub fn maxdeg(&self) -> u32 {
        self.phi.maxdeg()
    }

    /// `(s·λ, Φ(s·x, s·y))`.
    pub fn rescale(&self, s: &Rational) -> Result<Self> {
        let ctx = self.phi.context().clone();
        let images = [0u16, 1].map(|i| TruncatedSeries::generator(&ctx, i).scale(s));
        Ok(DrinfeldCandidate { lambda: &self.lambda * s, phi: self.phi.substitute(&ctx, &images)? })
    }
}

/// `Φ(y, x)`.
pub(crate) fn swapped(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ctx = phi.context().clone();
    let images = [1u16, 0].map(|i| TruncatedSeries::generator(&ctx, i));
    phi.substitute(&ctx, &images)
}

fn exp_scaled(s: &TruncatedSeries, c: &Rational) -> Result<TruncatedSeries> {
    s.scale(c).exp()
}

/// `Φ(x,y)Φ(y,x) - 1`.
fn duality_defect(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    phi.mul(&swapped(phi)?)?.sub(&TruncatedSeries::one(phi.context()))
}

/// Both sides of the pentagon in `U(t(4))`.
fn pentagon_sides(phi: &TruncatedSeries) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let alg = FamilyAlgebra::new(Family::Dk(4), phi.maxdeg())?;
    let ctx = alg.context().clone();
    let t = |i, j| alg.t(i, j);
    let at = |a: TruncatedSeries, b: TruncatedSeries| phi.substitute(&ctx, &[a, b]);
    let lhs = TruncatedSeries::product(&[
        &at(t(2, 3)?, t(3, 4)?)?,
        &at(t(1, 2)?.add(&t(1, 3)?)?, t(2, 4)?.add(&t(3, 4)?)?)?,
        &at(t(1, 2)?, t(2, 3)?)?,
    ])?;
    let rhs = at(t(1, 2)?, t(2, 3)?.add(&t(2, 4)?)?)?.mul(&at(t(1, 3)?.add(&t(2, 3)?)?, t(3, 4)?)?)?;
    Ok((lhs, rhs))
}

/// `e^{λx/2}Φ(y,x)e^{λy/2}Φ(z,y)e^{λz/2}Φ(x,z) - 1` with `z = -x-y`.
fn hexagon_defect(lambda: &Rational, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ctx = phi.context().clone();
    let x = TruncatedSeries::generator(&ctx, 0);
    let y = TruncatedSeries::generator(&ctx, 1);
    let z = x.add(&y)?.neg();
    let half = lambda * Rational::new(1.into(), 2.into());
    let at = |a: &TruncatedSeries, b: &TruncatedSeries| phi.substitute(&ctx, &[a.clone(), b.clone()]);
    TruncatedSeries::product(&[
        &exp_scaled(&x, &half)?,
        &at(&y, &x)?,
        &exp_scaled(&y, &half)?,
        &at(&z, &y)?,
        &exp_scaled(&z, &half)?,
        &at(&x, &z)?,
    ])?
    .sub(&TruncatedSeries::one(&ctx))
}

/// `Φ^{1,∅,2} - 1` computed through `t(3) → t(2)`.
fn unit_defect(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let t3 = FamilyAlgebra::new(Family::Dk(3), phi.maxdeg())?;
    let embedded = phi.substitute(t3.context(), &[t3.t(1, 2)?, t3.t(2, 3)?])?;
    let map = PartialMap::from_levels(Pointing::Single, 2, &[alloc::vec![1], alloc::vec![], alloc::vec![2]])?;
    let image = insertion_coproduct(&map, &embedded)?;
    image.sub(&TruncatedSeries::one(image.context()))
}

/// Grouplike, duality, pentagon, hexagon and unit.
pub fn check_drinfeld(c: &DrinfeldCandidate, tables: &dyn TableProvider) -> Result<Report> {
    expect_family(&c.phi, &pair_family(), "phi")?;
    let d = c.maxdeg();
    let mut report = Report::default();
    report.push("grouplike", d, grouplike(&c.phi)?);
    report.push("duality", d, vanishes(&duality_defect(&c.phi)?));
    let (lhs, rhs) = pentagon_sides(&c.phi)?;
    let table = tables.table(&Family::Dk(4), d)?;
    report.push("pentagon", d, equal_mod(&table, &lhs, &rhs)?);
    report.push("hexagon", d, vanishes(&hexagon_defect(&c.lambda, &c.phi)?));
    report.push("unit", d, vanishes(&unit_defect(&c.phi)?));
    Ok(report)
}

/// A basis direction left undetermined by the equations and set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeParameter {
    pub degree: u32,
    /// Lyndon word over `x = 0`, `y = 1`.
    pub word: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub candidate: DrinfeldCandidate,
    /// `log Φ`.
    pub log_phi: TruncatedSeries,
    pub free_parameters: Vec<FreeParameter>,
}

/// All equations at the truncation degree of `phi`, as series that must
/// vanish (the pentagon one already reduced in `U(t(4))`).
fn defects(lambda: &Rational, phi: &TruncatedSeries, tables: &dyn TableProvider) -> Result<Vec<TruncatedSeries>> {
    let (lhs, rhs) = pentagon_sides(phi)?;
    let table = tables.table(&Family::Dk(4), phi.maxdeg())?;
    let pentagon = table.reduce(&lhs.sub(&rhs)?)?;
    Ok(alloc::vec![duality_defect(phi)?, pentagon, hexagon_defect(lambda, phi)?])
}

/// Coefficients of the weight-`d` parts, keyed by (equation, monomial).
fn weight_part(defects: &[TruncatedSeries], d: u32) -> BTreeMap<(usize, Monomial), Rational> {
    let mut out = BTreeMap::new();
    for (k, s) in defects.iter().enumerate() {
        for (m, c) in s.homogeneous_part(d).terms() {
            out.insert((k, m.clone()), c.clone());
        }
    }
    out
}

/// Solves for `Φ = exp(φ)` degree by degree. At weight `d` the equations
/// are affine in `φ_d`; the constant part and the linear map are read off
/// from evaluations at `φ_{<d}` and `φ_{<d} + b` for each Lyndon basis
/// element `b`.
pub fn solve_drinfeld(lambda: &Rational, maxdeg: u32, tables: &dyn TableProvider) -> Result<Solution> {
    if maxdeg == 0 {
        return Err(Error::Domain("the solver needs maxdeg ≥ 1".into()));
    }
    let family = pair_family();
    let mut log_phi = TruncatedSeries::zero(&family.context(maxdeg)?);
    let mut free_parameters = Vec::new();
    for d in 1..=maxdeg {
        let ctx = family.context(d)?;
        let lower = log_phi.truncate(d)?;
        let words = lyndon_words(2, d as usize);
        let basis = words.iter().map(|w| bracketing(&ctx, w)).collect::<Result<Vec<_>>>()?;
        let base = weight_part(&defects(lambda, &lower.exp()?, tables)?, d);
        let mut columns = Vec::with_capacity(basis.len());
        for b in &basis {
            let shifted = weight_part(&defects(lambda, &lower.add(b)?.exp()?, tables)?, d);
            let mut col = shifted;
            for (k, c) in &base {
                crate::series::accumulate(&mut col, k.clone(), -c.clone());
            }
            columns.push(col);
        }
        let mut keys: Vec<(usize, Monomial)> = base.keys().cloned().collect();
        for col in &columns {
            keys.extend(col.keys().cloned());
        }
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<Rational>> = keys
            .iter()
            .map(|k| columns.iter().map(|col| col.get(k).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect();
        let rhs: Vec<Rational> = keys.iter().map(|k| -base.get(k).cloned().unwrap_or_else(Rational::zero)).collect();
        let (solution, free) = solve_linear(rows, rhs, basis.len()).ok_or(Error::Inconsistent(d))?;
        for i in free {
            free_parameters.push(FreeParameter { degree: d, word: words[i].clone() });
        }
        for (b, c) in basis.iter().zip(&solution) {
            if !c.is_zero() {
                log_phi = log_phi.add(&b.extend_to(maxdeg)?.scale(c))?;
            }
        }
    }
    let phi = log_phi.exp()?;
    Ok(Solution { candidate: DrinfeldCandidate { lambda: lambda.clone(), phi }, log_phi, free_parameters })
}

/// Solves `rows · c = rhs` by Gauss-Jordan elimination; free variables are
/// set to zero and returned. `None` when inconsistent.
pub(crate) fn solve_linear(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, unknowns: usize) -> Option<(Vec<Rational>, Vec<usize>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..unknowns {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
                let delta = &factor * &rhs[r];
                rhs[i] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut solution = alloc::vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        solution[col] = rhs[i].clone();
    }
    let free = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    Some((solution, free))
}
