use num_traits::Zero;

use super::drinfeld::{check_drinfeld, DrinfeldCandidate};
use super::report::{equal_mod, grouplike, Report};
use super::{elliptic_pair_family, expect_family, pair_family, same_maxdeg};
use crate::families::{Family, FamilyAlgebra};
use crate::quotient::TableProvider;
use crate::series::TruncatedSeries;
use crate::{Rational, Result};

/// `(λ, Φ, A₊, A₋)` with `A±` in `free(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCandidate {
    pub lambda: Rational,
    pub phi: TruncatedSeries,
    pub aplus: TruncatedSeries,
    pub aminus: TruncatedSeries,
}

impl EllipticCandidate {
    pub fn new(lambda: Rational, phi: TruncatedSeries, aplus: TruncatedSeries, aminus: TruncatedSeries) -> Result<Self> {
        expect_family(&phi, &pair_family(), "phi")?;
        expect_family(&aplus, &elliptic_pair_family(), "aplus")?;
        expect_family(&aminus, &elliptic_pair_family(), "aminus")?;
        same_maxdeg(&[&phi, &aplus, &aminus])?;
        Ok(EllipticCandidate { lambda, phi, aplus, aminus })
    }

    pub fn trivial(maxdeg: u32) -> Result<Self> {
        let one = TruncatedSeries::one(&elliptic_pair_family().context(maxdeg)?);
        let phi = TruncatedSeries::one(&pair_family().context(maxdeg)?);
        Self::new(Rational::zero(), phi, one.clone(), one)
    }

    pub fn maxdeg(&self) -> u32 {
        self.phi.maxdeg()
    }

    pub fn drinfeld(&self) -> DrinfeldCandidate {
        DrinfeldCandidate { lambda: self.lambda.clone(), phi: self.phi.clone() }
    }
}

/// Drinfeld part, group-likeness of `A±`, both signs of the first equation
/// and the commutator equation, in `U(tellbar(3))`.
pub fn check_elliptic(c: &EllipticCandidate, tables: &dyn TableProvider) -> Result<Report> {
    let d = same_maxdeg(&[&c.phi, &c.aplus, &c.aminus])?;
    let mut report = Report::default();
    report.extend_prefixed("drinfeld.", check_drinfeld(&c.drinfeld(), tables)?);
    report.push("aplus_grouplike", d, grouplike(&c.aplus)?);
    report.push("aminus_grouplike", d, grouplike(&c.aminus)?);

    let alg = FamilyAlgebra::new(Family::ReducedElliptic(3), d)?;
    let ctx = alg.context().clone();
    let table = tables.table(alg.family(), d)?;
    let t = |i, j| alg.t(i, j);
    let phi_at = |a: TruncatedSeries, b: TruncatedSeries| c.phi.substitute(&ctx, &[a, b]);
    let at = |s: &TruncatedSeries, i: usize, j: usize, k: usize| -> Result<TruncatedSeries> {
        s.substitute(&ctx, &[alg.alpha(i)?, alg.beta(j)?.add(&alg.beta(k)?)?])
    };
    let minus_half = -&c.lambda / Rational::from_integer(2.into());
    let damp = |a: TruncatedSeries, b: TruncatedSeries| a.add(&b).map(|s| s.scale(&minus_half))?.exp();
    let one = TruncatedSeries::one(&ctx);

    for (name, a) in [("elliptic_a_plus", &c.aplus), ("elliptic_a_minus", &c.aminus)] {
        let lhs = TruncatedSeries::product(&[
            &phi_at(t(1, 2)?, t(2, 3)?)?,
            &at(a, 1, 2, 3)?,
            &damp(t(1, 2)?, t(1, 3)?)?,
            &phi_at(t(2, 3)?, t(1, 3)?)?,
            &at(a, 2, 3, 1)?,
            &damp(t(2, 3)?, t(1, 2)?)?,
            &phi_at(t(1, 3)?, t(1, 2)?)?,
            &at(a, 3, 1, 2)?,
            &damp(t(1, 3)?, t(2, 3)?)?,
        ])?;
        report.push(name, d, equal_mod(&table, &lhs, &one)?);
    }

    let p123 = phi_at(t(1, 2)?, t(2, 3)?)?;
    let p132 = phi_at(t(1, 2)?, t(1, 3)?)?;
    let u = TruncatedSeries::product(&[&p123, &at(&c.aplus, 1, 2, 3)?, &p123.inverse()?])?;
    let half_twist = t(1, 2)?.scale(&minus_half).exp()?;
    let v = TruncatedSeries::product(&[&half_twist, &p132, &at(&c.aminus, 2, 1, 3)?, &p132.inverse()?, &half_twist])?;
    let commutator = TruncatedSeries::product(&[&u, &v, &u.inverse()?, &v.inverse()?])?;
    let lhs = t(1, 2)?.scale(&c.lambda).exp()?;
    report.push("elliptic_b", d, equal_mod(&table, &lhs, &commutator)?);
    Ok(report)
}
