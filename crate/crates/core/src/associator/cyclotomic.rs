use alloc::vec::Vec;

use num_traits::Zero;

use super::drinfeld::{check_drinfeld, DrinfeldCandidate};
use super::report::{equal_mod, grouplike, Report};
use super::{cyclotomic_family, expect_family, pair_family, same_maxdeg};
use crate::families::{gamma_action, Family, FamilyAlgebra, GammaTuple};
use crate::quotient::TableProvider;
use crate::series::TruncatedSeries;
use crate::{Error, Rational, Result};

/// How the letter slots of the reflected `Ψ` factors in the second
/// equation are filled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OctagonReading {
    /// Slot `a` receives `t12^{-a}`.
    #[default]
    Literal,
    /// Slot `a` receives `t12^{a+1}`.
    Shifted,
}

/// `(λ, Φ, Ψ)` with `Ψ` in `free(x, y0, …, y{N-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCandidate {
    pub lambda: Rational,
    pub phi: TruncatedSeries,
    pub psi: TruncatedSeries,
    pub order: usize,
}

impl CyclotomicCandidate {
    pub fn new(lambda: Rational, phi: TruncatedSeries, psi: TruncatedSeries, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("group order must be at least 1".into()));
        }
        expect_family(&phi, &pair_family(), "phi")?;
        expect_family(&psi, &cyclotomic_family(order), "psi")?;
        same_maxdeg(&[&phi, &psi])?;
        Ok(CyclotomicCandidate { lambda, phi, psi, order })
    }

    pub fn trivial(order: usize, maxdeg: u32) -> Result<Self> {
        let psi = TruncatedSeries::one(&cyclotomic_family(order).context(maxdeg)?);
        let phi = TruncatedSeries::one(&pair_family().context(maxdeg)?);
        Self::new(Rational::zero(), phi, psi, order)
    }

    pub fn maxdeg(&self) -> u32 {
        self.psi.maxdeg()
    }

    pub fn drinfeld(&self) -> DrinfeldCandidate {
        DrinfeldCandidate { lambda: self.lambda.clone(), phi: self.phi.clone() }
    }
}

fn sum_all(ctx: &crate::series::Context, items: impl IntoIterator<Item = Result<TruncatedSeries>>) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(ctx);
    for item in items {
        s = s.add(&item?)?;
    }
    Ok(s)
}

/// Drinfeld part, group-likeness of `Ψ`, and the two cyclotomic equations.
pub fn check_cyclotomic(c: &CyclotomicCandidate, reading: OctagonReading, tables: &dyn TableProvider) -> Result<Report> {
    expect_family(&c.psi, &cyclotomic_family(c.order), "psi")?;
    let d = same_maxdeg(&[&c.phi, &c.psi])?;
    let n = c.order;
    let mut report = Report::default();
    report.extend_prefixed("drinfeld.", check_drinfeld(&c.drinfeld(), tables)?);
    report.push("psi_grouplike", d, grouplike(&c.psi)?);

    // first equation, in tGamma(3, N)
    let alg = FamilyAlgebra::new(Family::CyclotomicDk { n: 3, order: n }, d)?;
    let ctx = alg.context().clone();
    let psi_at = |x: TruncatedSeries, ys: Vec<TruncatedSeries>| {
        let mut images = alloc::vec![x];
        images.extend(ys);
        c.psi.substitute(&ctx, &images)
    };
    let slots = |f: &dyn Fn(i64) -> Result<TruncatedSeries>| (0..n as i64).map(f).collect::<Result<Vec<_>>>();
    let t12 = slots(&|a| alg.tg(1, 2, a))?;
    let t12_t13 = slots(&|a| alg.tg(1, 2, a)?.add(&alg.tg(1, 3, a)?))?;
    let sum12 = sum_all(&ctx, (0..n as i64).map(|a| alg.tg(1, 2, a)))?;
    let sum13 = sum_all(&ctx, (0..n as i64).map(|a| alg.tg(1, 3, a)))?;
    let k1 = alg.k(1)?;
    let lhs = psi_at(k1.add(&sum12)?.add(&sum13)?, t12.clone())?.mul(&psi_at(k1.clone(), t12_t13.clone())?)?;
    let phi_part = c.phi.substitute(&ctx, &[alg.tg(1, 2, 0)?, alg.tg(2, 3, 0)?])?;
    let rhs = TruncatedSeries::product(&[
        &psi_at(k1.clone(), t12)?,
        &psi_at(k1.add(&alg.k(2)?)?.add(&sum12)?, t12_t13)?,
        &phi_part,
    ])?;
    let table = tables.table(alg.family(), d)?;
    report.push("cyclotomic_a", d, equal_mod(&table, &lhs, &rhs)?);

    // second equation, in tGamma(2, N)
    let alg = FamilyAlgebra::new(Family::CyclotomicDk { n: 2, order: n }, d)?;
    let ctx = alg.context().clone();
    let psi_at = |slot: &dyn Fn(i64) -> i64| -> Result<TruncatedSeries> {
        let mut images = alloc::vec![alg.k(1)?];
        for a in 0..n as i64 {
            images.push(alg.tg(1, 2, slot(a))?);
        }
        c.psi.substitute(&ctx, &images)
    };
    let plain = psi_at(&|a| a)?;
    let reflected = match reading {
        OctagonReading::Literal => psi_at(&|a| -a)?,
        OctagonReading::Shifted => psi_at(&|a| a + 1)?,
    };
    let over_n = &c.lambda / Rational::from_integer(n.into());
    let half = &c.lambda / Rational::from_integer(2.into());
    let e_first = alg.k(1)?.scale(&over_n).exp()?;
    let e_mid = alg.tg(1, 2, 0)?.scale(&half).exp()?;
    let e_last = alg.k(2)?.scale(&over_n).exp()?;
    let inner = TruncatedSeries::product(&[&reflected, &e_mid, &plain.inverse()?])?;
    let twisted = gamma_action(&GammaTuple::new(&[0, 1], n)?, &inner)?;
    let lhs = TruncatedSeries::product(&[&e_first, &plain, &e_mid, &reflected.inverse()?, &e_last, &twisted])?;
    let table = tables.table(alg.family(), d)?;
    report.push("cyclotomic_b", d, equal_mod(&table, &lhs, &TruncatedSeries::one(&ctx))?);
    Ok(report)
}
