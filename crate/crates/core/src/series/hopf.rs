//! Coproduct, group-like and primitive tests, exp, log and BCH.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{accumulate, Context, Letters, Monomial, TruncatedSeries};
use crate::{Error, Rational, Result};

/// Truncated tensor square: pairs of monomials with joint weight at most
/// `maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare {
    ctx: Context,
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

fn add_pair(map: &mut BTreeMap<(Monomial, Monomial), Rational>, key: (Monomial, Monomial), c: Rational) {
    accumulate(map, key, c);
}

impl TensorSquare {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Rational)> {
        self.terms.iter()
    }

    /// `a ⊗ b`, truncated by joint weight.
    pub fn tensor(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Self> {
        a.check_same(b)?;
        let maxdeg = a.maxdeg();
        let mut terms = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if ma.weight() + mb.weight() > maxdeg {
                    break;
                }
                add_pair(&mut terms, (ma.clone(), mb.clone()), ca * cb);
            }
        }
        Ok(TensorSquare { ctx: a.context().clone(), terms })
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleContext("tensor squares differ".into()));
        }
        let maxdeg = self.ctx.maxdeg();
        let mut terms = BTreeMap::new();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                if a1.weight() + a2.weight() + b1.weight() + b2.weight() > maxdeg {
                    continue;
                }
                add_pair(&mut terms, (a1.concat(b1), a2.concat(b2)), ca * cb);
            }
        }
        Ok(TensorSquare { ctx: self.ctx.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::IncompatibleContext("tensor squares differ".into()));
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_pair(&mut terms, k.clone(), -c.clone());
        }
        Ok(TensorSquare { ctx: self.ctx.clone(), terms })
    }

    /// Smallest joint weight with a nonzero coefficient.
    pub fn lowest_weight(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a.weight() + b.weight()).min()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl TruncatedSeries {
    /// The coproduct with every letter primitive.
    pub fn coproduct(&self) -> TensorSquare {
        let mut terms = BTreeMap::new();
        let alphabet = self.alphabet().clone();
        for (m, c) in self.terms() {
            let n = m.len();
            for mask in 0u32..(1u32 << n) {
                let mut left = Letters::new();
                let mut right = Letters::new();
                let (mut wl, mut wr) = (0, 0);
                for (i, &l) in m.letters().iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(l);
                        wl += alphabet.weight(l);
                    } else {
                        right.push(l);
                        wr += alphabet.weight(l);
                    }
                }
                add_pair(
                    &mut terms,
                    (Monomial::from_parts(wl, left), Monomial::from_parts(wr, right)),
                    c.clone(),
                );
            }
        }
        TensorSquare { ctx: self.context().clone(), terms }
    }

    /// Lowest joint weight where `Δg = g⊗g` or `ε(g) = 1` fails.
    pub fn grouplike_defect(&self) -> Option<u32> {
        if !self.constant_term().is_one() {
            return Some(0);
        }
        let diff = self
            .coproduct()
            .sub(&TensorSquare::tensor(self, self).expect("same context"))
            .expect("same context");
        diff.lowest_weight()
    }

    pub fn is_grouplike(&self) -> bool {
        self.grouplike_defect().is_none()
    }

    /// Lowest joint weight where `Δa = 1⊗a + a⊗1` fails.
    pub fn primitive_defect(&self) -> Option<u32> {
        if !self.constant_term().is_zero() {
            return Some(0);
        }
        let one = TruncatedSeries::one(self.context());
        let expected = TensorSquare::tensor(&one, self).expect("same context");
        let expected2 = TensorSquare::tensor(self, &one).expect("same context");
        let mut terms = expected.terms;
        for (k, c) in expected2.terms {
            add_pair(&mut terms, k, c);
        }
        let expected = TensorSquare { ctx: self.context().clone(), terms };
        self.coproduct().sub(&expected).expect("same context").lowest_weight()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_defect().is_none()
    }

    /// `Σ aⁿ/n!`; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("exp needs constant term 0".into()));
        }
        let mut result = TruncatedSeries::one(self.context());
        let mut power = result.clone();
        for n in 1..=self.maxdeg() {
            power = power.mul_unchecked(self);
            if power.is_zero() {
                break;
            }
            let inv = Rational::new(BigInt::one(), factorial(n));
            result = result.add(&power.scale(&inv))?;
        }
        Ok(result)
    }

    /// `Σ (-1)^{n+1} (g-1)ⁿ/n`; needs constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let u = self.sub(&TruncatedSeries::one(self.context()))?;
        let mut result = TruncatedSeries::zero(self.context());
        let mut power = TruncatedSeries::one(self.context());
        for n in 1..=self.maxdeg() {
            power = power.mul_unchecked(&u);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let coef = Rational::new(BigInt::from(sign), BigInt::from(n));
            result = result.add(&power.scale(&coef))?;
        }
        Ok(result)
    }

    /// `log(exp(a)·exp(b))`.
    pub fn bch(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.exp()?.mul(&other.exp()?)?.log()
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::Domain("inverse needs a nonzero constant term".into()));
        }
        let cinv = c.recip();
        // g = c(1 - u)  =>  g⁻¹ = c⁻¹ Σ uⁿ
        let one = TruncatedSeries::one(self.context());
        let u = one.sub(&self.scale(&cinv))?;
        let mut result = one.clone();
        let mut power = one;
        for _ in 1..=self.maxdeg() {
            power = power.mul_unchecked(&u);
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result.scale(&cinv))
    }

    /// `exp(s · log g)` for a series with constant term 1.
    pub fn pow(&self, s: &Rational) -> Result<Self> {
        self.log()?.scale(s).exp()
    }

    /// Coefficient map restricted to monomials of length one.
    pub fn linear_part(&self) -> Self {
        let terms = self
            .terms()
            .filter(|(m, _)| m.len() == 1)
            .map(|(m, c)| (m.clone(), c.clone()));
        TruncatedSeries::from_terms(self.context(), terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn setup(maxdeg: u32) -> (Context, TruncatedSeries, TruncatedSeries) {
        let ctx = Family::free(&["x", "y"]).context(maxdeg).unwrap();
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        (ctx, x, y)
    }

    #[test]
    fn coproduct_examples() {
        let (ctx, x, y) = setup(3);
        let one = TruncatedSeries::one(&ctx);
        assert_eq!(one.coproduct(), TensorSquare::tensor(&one, &one).unwrap());
        let expected = TensorSquare::tensor(&one, &x)
            .unwrap()
            .terms
            .into_iter()
            .chain(TensorSquare::tensor(&x, &one).unwrap().terms)
            .collect::<BTreeMap<_, _>>();
        assert_eq!(x.coproduct().terms, expected);
        let xy = x.mul(&y).unwrap();
        let d = xy.coproduct();
        let m = |s: &str| ctx.parse_monomial(s).unwrap();
        let mut brute = BTreeMap::new();
        for (a, b) in [("1", "x.y"), ("x", "y"), ("y", "x"), ("x.y", "1")] {
            brute.insert((m(a), m(b)), q(1, 1));
        }
        assert_eq!(d.terms, brute);
    }

    #[test]
    fn grouplike_and_primitive_examples() {
        let (ctx, x, y) = setup(3);
        assert!(TruncatedSeries::one(&ctx).is_grouplike());
        let p = x.add(&x.bracket(&y).unwrap()).unwrap();
        assert!(p.is_primitive());
        let one_plus_x = TruncatedSeries::one(&ctx).add(&x).unwrap();
        assert!(!one_plus_x.is_grouplike());
        assert_eq!(one_plus_x.grouplike_defect(), Some(2));
        assert!(!x.mul(&y).unwrap().is_primitive());
    }

    #[test]
    fn exp_log_examples() {
        let (ctx, x, y) = setup(2);
        assert_eq!(TruncatedSeries::zero(&ctx).exp().unwrap(), TruncatedSeries::one(&ctx));
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        let expected = TruncatedSeries::one(&ctx)
            .add(&x)
            .unwrap()
            .add(&x.mul(&x).unwrap().scale(&q(1, 2)))
            .unwrap();
        assert_eq!(x.exp().unwrap(), expected);
        assert!(matches!(TruncatedSeries::one(&ctx).exp(), Err(Error::Domain(_))));
        assert!(matches!(x.log(), Err(Error::Domain(_))));
        let b = x.bch(&y).unwrap();
        let expected = x.add(&y).unwrap().add(&x.bracket(&y).unwrap().scale(&q(1, 2))).unwrap();
        assert_eq!(b, expected);
        assert!(x.bch(&x.neg()).unwrap().is_zero());
        assert_eq!(x.bch(&TruncatedSeries::zero(&ctx)).unwrap(), x);
    }

    #[test]
    fn inverse_and_powers() {
        let (ctx, x, y) = setup(4);
        let g = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap();
        let ginv = g.inverse().unwrap();
        assert_eq!(g.mul(&ginv).unwrap(), TruncatedSeries::one(&ctx));
        assert_eq!(x.exp().unwrap().pow(&q(1, 2)).unwrap(), x.scale(&q(1, 2)).exp().unwrap());
        assert_eq!(g.pow(&q(0, 1)).unwrap(), TruncatedSeries::one(&ctx));
        assert_eq!(g.pow(&q(1, 1)).unwrap(), g);
    }
}
