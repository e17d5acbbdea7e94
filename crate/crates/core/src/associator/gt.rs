use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicCandidate;
use super::drinfeld::{swapped, DrinfeldCandidate};
use super::elliptic::EllipticCandidate;
use super::report::{vanishes, Report, Verdict};
use super::{cyclotomic_family, eval_grouplike, expect_family, gtell_family, pair_family, same_maxdeg};
use crate::malcev::{GroupContext, ModelKind};
use crate::series::{Context, TruncatedSeries};
use crate::{Error, Rational, Result};

fn check_mu(mu: &Rational) -> Result<()> {
    if mu.is_zero() {
        return Err(Error::Domain("mu must be nonzero".into()));
    }
    Ok(())
}

fn check_grouplike(s: &TruncatedSeries, role: &str) -> Result<()> {
    if !s.is_grouplike() {
        return Err(Error::Domain(alloc::format!("{role} is not group-like")));
    }
    Ok(())
}

/// `(μ, f)` with `f` in `free(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtElement {
    pub mu: Rational,
    pub f: TruncatedSeries,
}

impl GtElement {
    pub fn new(mu: Rational, f: TruncatedSeries) -> Result<Self> {
        check_mu(&mu)?;
        expect_family(&f, &pair_family(), "f")?;
        check_grouplike(&f, "f")?;
        Ok(GtElement { mu, f })
    }

    pub fn identity(maxdeg: u32) -> Result<Self> {
        Ok(GtElement { mu: Rational::one(), f: TruncatedSeries::one(&pair_family().context(maxdeg)?) })
    }

    pub fn maxdeg(&self) -> u32 {
        self.f.maxdeg()
    }

    /// Logs of the images of `x` and `y` under the endomorphism
    /// `x ↦ x^μ`, `y ↦ f y^μ f⁻¹` of the completed free group.
    fn images(&self) -> Result<[TruncatedSeries; 2]> {
        let ctx = self.f.context();
        let x = TruncatedSeries::generator(ctx, 0);
        let y = TruncatedSeries::generator(ctx, 1);
        let conj = TruncatedSeries::product(&[&self.f, &y.scale(&self.mu).exp()?, &self.f.inverse()?])?;
        Ok([x.scale(&self.mu), conj.log()?])
    }
}

/// `(μ₁μ₂, f₁(x^{μ₂}, f₂ y^{μ₂} f₂⁻¹)·f₂)`.
pub fn gt_compose(g1: &GtElement, g2: &GtElement) -> Result<GtElement> {
    same_maxdeg(&[&g1.f, &g2.f])?;
    let f = g1.f.substitute(g2.f.context(), &g2.images()?)?.mul(&g2.f)?;
    Ok(GtElement { mu: &g1.mu * &g2.mu, f })
}

/// Logs of `e^{λx}` and `Φ e^{λy} Φ⁻¹`.
fn drinfeld_images(lambda: &Rational, phi: &TruncatedSeries) -> Result<[TruncatedSeries; 2]> {
    let ctx = phi.context();
    let x = TruncatedSeries::generator(ctx, 0);
    let y = TruncatedSeries::generator(ctx, 1);
    let conj = TruncatedSeries::product(&[phi, &y.scale(lambda).exp()?, &phi.inverse()?])?;
    Ok([x.scale(lambda), conj.log()?])
}

/// `(μλ, f(e^{λx}, Φ e^{λy} Φ⁻¹)·Φ)`.
pub fn gt_act(g: &GtElement, c: &DrinfeldCandidate) -> Result<DrinfeldCandidate> {
    same_maxdeg(&[&g.f, &c.phi])?;
    expect_family(&c.phi, &pair_family(), "phi")?;
    let phi = g.f.substitute(c.phi.context(), &drinfeld_images(&c.lambda, &c.phi)?)?.mul(&c.phi)?;
    Ok(DrinfeldCandidate { lambda: &g.mu * &c.lambda, phi })
}

/// First two defining relations; the third one lives in the completed
/// pure braid group on four strands and is skipped.
pub fn verify_gt(g: &GtElement) -> Result<Report> {
    let d = g.maxdeg();
    let mut report = Report::default();
    let one = TruncatedSeries::one(g.f.context());
    report.push("relation1", d, vanishes(&g.f.mul(&swapped(&g.f)?)?.sub(&one)?));

    let model = GroupContext::new(ModelKind::Free(2), d)?;
    let x = model.generator("x")?.log()?;
    let y = model.generator("y")?.log()?;
    let z = y.neg().bch(&x.neg())?;
    let ctx = model.series_context();
    let nu = (&g.mu - Rational::one()) / Rational::from_integer(2.into());
    let f_at = |a: &TruncatedSeries, b: &TruncatedSeries| g.f.substitute(ctx, &[a.clone(), b.clone()]);
    let product = TruncatedSeries::product(&[
        &x.scale(&nu).exp()?,
        &f_at(&x, &y)?,
        &y.scale(&nu).exp()?,
        &f_at(&y, &z)?,
        &z.scale(&nu).exp()?,
        &f_at(&z, &x)?,
    ])?;
    report.push("relation2", d, vanishes(&product.sub(&TruncatedSeries::one(ctx))?));
    report.push(
        "relation3",
        d,
        Verdict::Skip("not checked: needs the completed pure braid group on four strands".into()),
    );
    Ok(report)
}

/// `(μ, f, g)` with `g` in `free(x, y0, …, y{N-1})`; `x` is the slot of
/// `x^N` and `y_a` the slot of `x^a y x^{-a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtGammaElement {
    pub base: GtElement,
    pub g: TruncatedSeries,
    pub order: usize,
}

impl GtGammaElement {
    pub fn new(base: GtElement, g: TruncatedSeries, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("group order must be at least 1".into()));
        }
        expect_family(&g, &cyclotomic_family(order), "g")?;
        check_grouplike(&g, "g")?;
        same_maxdeg(&[&base.f, &g])?;
        Ok(GtGammaElement { base, g, order })
    }

    pub fn identity(order: usize, maxdeg: u32) -> Result<Self> {
        let g = TruncatedSeries::one(&cyclotomic_family(order).context(maxdeg)?);
        Self::new(GtElement::identity(maxdeg)?, g, order)
    }

    /// The automorphism `y_b ↦ y_{b+1}`, `y_{N-1} ↦ x y_0 x⁻¹` (as logs):
    /// conjugation by `x` on the kernel of `F(2) → Z/N`.
    fn conjugate_by_x(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let ctx = s.context();
        let n = self.order;
        let x = TruncatedSeries::generator(ctx, 0);
        let mut images = alloc::vec![x.clone()];
        for b in 1..n {
            images.push(TruncatedSeries::generator(ctx, (b + 1) as u16));
        }
        let y0 = TruncatedSeries::generator(ctx, 1);
        images.push(TruncatedSeries::product(&[&x.exp()?, &y0.exp()?, &x.neg().exp()?])?.log()?);
        s.substitute(ctx, &images)
    }

    /// Logs of the images of the slots under the endomorphism induced by
    /// `x ↦ x^μ`, `y ↦ g y^μ g⁻¹`.
    fn images(&self) -> Result<Vec<TruncatedSeries>> {
        let ctx = self.g.context();
        let n = Rational::from_integer(self.order.into());
        let x = TruncatedSeries::generator(ctx, 0);
        let y0 = TruncatedSeries::generator(ctx, 1);
        let mu = &self.base.mu;
        let step = x.scale(&((mu - Rational::one()) / &n));
        let mut moved = TruncatedSeries::product(&[&self.g, &y0.scale(mu).exp()?, &self.g.inverse()?])?;
        let mut out = alloc::vec![x.scale(mu)];
        for a in 0..self.order {
            if a > 0 {
                moved = self.conjugate_by_x(&moved)?;
            }
            let shift = step.scale(&Rational::from_integer(a.into()));
            let conj = TruncatedSeries::product(&[&shift.exp()?, &moved, &shift.neg().exp()?])?;
            out.push(conj.log()?);
        }
        Ok(out)
    }
}

pub fn gtgamma_compose(h1: &GtGammaElement, h2: &GtGammaElement) -> Result<GtGammaElement> {
    if h1.order != h2.order {
        return Err(Error::Arity(alloc::format!("orders {} and {}", h1.order, h2.order)));
    }
    same_maxdeg(&[&h1.g, &h2.g])?;
    let base = gt_compose(&h1.base, &h2.base)?;
    let g = h1.g.substitute(h2.g.context(), &h2.images()?)?.mul(&h2.g)?;
    Ok(GtGammaElement { base, g, order: h1.order })
}

/// Logs of the slot arguments `e^{λx}` and
/// `e^{aλx/N} Ψ_a e^{λ y_a} Ψ_a⁻¹ e^{-aλx/N}`, with `Ψ_a` the letters of `Ψ`
/// shifted by `a`.
fn cyclotomic_images(lambda: &Rational, psi: &TruncatedSeries, order: usize) -> Result<Vec<TruncatedSeries>> {
    let ctx: &Context = psi.context();
    let x = TruncatedSeries::generator(ctx, 0);
    let step = x.scale(&(lambda / Rational::from_integer(order.into())));
    let mut out = alloc::vec![x.scale(lambda)];
    for a in 0..order {
        let mut shift = alloc::vec![x.clone()];
        for b in 0..order {
            shift.push(TruncatedSeries::generator(ctx, (1 + (a + b) % order) as u16));
        }
        let psi_a = psi.substitute(ctx, &shift)?;
        let ya = TruncatedSeries::generator(ctx, (1 + a) as u16);
        let shift_exp = step.scale(&Rational::from_integer(a.into()));
        let conj = TruncatedSeries::product(&[
            &shift_exp.exp()?,
            &psi_a,
            &ya.scale(lambda).exp()?,
            &psi_a.inverse()?,
            &shift_exp.neg().exp()?,
        ])?;
        out.push(conj.log()?);
    }
    Ok(out)
}

/// `(μλ, f•Φ, g(…)·Ψ)`.
pub fn gtgamma_act(h: &GtGammaElement, c: &CyclotomicCandidate) -> Result<CyclotomicCandidate> {
    if h.order != c.order {
        return Err(Error::Arity(alloc::format!("orders {} and {}", h.order, c.order)));
    }
    same_maxdeg(&[&h.g, &c.psi])?;
    let acted = gt_act(&h.base, &c.drinfeld())?;
    let psi = h.g.substitute(c.psi.context(), &cyclotomic_images(&c.lambda, &c.psi, c.order)?)?.mul(&c.psi)?;
    Ok(CyclotomicCandidate { lambda: acted.lambda, phi: acted.phi, psi, order: c.order })
}

/// `(μ, f, g₊, g₋)` with `g±` in `free(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtEllElement {
    pub base: GtElement,
    pub gplus: TruncatedSeries,
    pub gminus: TruncatedSeries,
}

impl GtEllElement {
    pub fn new(base: GtElement, gplus: TruncatedSeries, gminus: TruncatedSeries) -> Result<Self> {
        for (s, role) in [(&gplus, "gplus"), (&gminus, "gminus")] {
            expect_family(s, &gtell_family(), role)?;
            check_grouplike(s, role)?;
        }
        same_maxdeg(&[&base.f, &gplus, &gminus])?;
        Ok(GtEllElement { base, gplus, gminus })
    }

    /// `(1, 1, e^A, e^B)`.
    pub fn identity(maxdeg: u32) -> Result<Self> {
        let ctx = gtell_family().context(maxdeg)?;
        let a = TruncatedSeries::generator(&ctx, 0).exp()?;
        let b = TruncatedSeries::generator(&ctx, 1).exp()?;
        Self::new(GtElement::identity(maxdeg)?, a, b)
    }
}

/// `g± = (g₁)±((g₂)₊, (g₂)₋)`.
pub fn gtell_compose(h1: &GtEllElement, h2: &GtEllElement) -> Result<GtEllElement> {
    same_maxdeg(&[&h1.gplus, &h2.gplus])?;
    let base = gt_compose(&h1.base, &h2.base)?;
    let ctx = h2.gplus.context();
    let args = [h2.gplus.clone(), h2.gminus.clone()];
    Ok(GtEllElement {
        base,
        gplus: eval_grouplike(&h1.gplus, ctx, &args)?,
        gminus: eval_grouplike(&h1.gminus, ctx, &args)?,
    })
}

/// `(μλ, f•Φ, g±(A₊, A₋))`.
pub fn gtell_act(h: &GtEllElement, c: &EllipticCandidate) -> Result<EllipticCandidate> {
    same_maxdeg(&[&h.gplus, &c.aplus])?;
    let acted = gt_act(&h.base, &c.drinfeld())?;
    let ctx = c.aplus.context();
    let args = [c.aplus.clone(), c.aminus.clone()];
    Ok(EllipticCandidate {
        lambda: acted.lambda,
        phi: acted.phi,
        aplus: eval_grouplike(&h.gplus, ctx, &args)?,
        aminus: eval_grouplike(&h.gminus, ctx, &args)?,
    })
}
