use assoc_core::families::Family;
use assoc_core::quotient::{NormalFormTable, TableCache, TableProvider};
use assoc_core::series::{Context, Monomial, TensorSquare, TruncatedSeries};
use assoc_core::Rational;
use proptest::prelude::*;
use std::sync::Arc;

const DEG: u32 = 4;

fn xy_ctx() -> Context {
    Family::free(&["x", "y"]).context(DEG).unwrap()
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn word(letters: u16, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0..letters, 0..=max_len)
}

/// Random series in `ctx` with letters of weight 1.
fn series_in(ctx: Context, min_len: usize) -> impl Strategy<Value = TruncatedSeries> {
    let letters = ctx.alphabet().len() as u16;
    let maxdeg = ctx.maxdeg() as usize;
    prop::collection::vec((word(letters, maxdeg), coeff()), 0..6).prop_map(move |terms| {
        TruncatedSeries::from_terms(
            &ctx,
            terms
                .into_iter()
                .filter(|(w, _)| w.len() >= min_len)
                .map(|(w, c)| (Monomial::new(ctx.alphabet(), &w), c)),
        )
    })
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    series_in(xy_ctx(), 0)
}

/// Lie polynomials: linear combinations of nested brackets of letters.
fn lie() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((word(2, 3), coeff()), 1..5).prop_map(|terms| {
        let ctx = xy_ctx();
        let mut out = TruncatedSeries::zero(&ctx);
        for (w, c) in terms {
            if w.is_empty() {
                continue;
            }
            let mut b = TruncatedSeries::generator(&ctx, w[0]);
            for &l in &w[1..] {
                b = TruncatedSeries::generator(&ctx, l).bracket(&b).unwrap();
            }
            out = out.add(&b.scale(&c)).unwrap();
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
        let one = TruncatedSeries::one(a.context());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn coproduct_is_multiplicative(a in series(), b in series()) {
        let lhs = a.mul(&b).unwrap().coproduct();
        let rhs = a.coproduct().mul(&b.coproduct()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_empty());
    }

    #[test]
    fn exp_log_bch(u in lie(), v in lie()) {
        prop_assert!(u.is_primitive());
        let e = u.exp().unwrap();
        prop_assert!(e.is_grouplike());
        prop_assert_eq!(e.log().unwrap(), u.clone());
        let bch = u.bch(&v).unwrap();
        prop_assert!(bch.is_primitive());
        prop_assert_eq!(bch.exp().unwrap(), e.mul(&v.exp().unwrap()).unwrap());
        prop_assert_eq!(e.mul(&e.inverse().unwrap()).unwrap(), TruncatedSeries::one(u.context()));
        let tensor = TensorSquare::tensor(&e, &e).unwrap();
        prop_assert!(e.coproduct().sub(&tensor).unwrap().is_empty());
    }

    #[test]
    fn truncation_is_a_morphism(a in series(), b in series(), d in 0u32..DEG) {
        let lhs = a.mul(&b).unwrap().truncate(d).unwrap();
        let rhs = a.truncate(d).unwrap().mul(&b.truncate(d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_morphism(a in series(), b in series(), p in series_in(xy_ctx(), 1), q in series_in(xy_ctx(), 1)) {
        let ctx = xy_ctx();
        let images = [p, q];
        let lhs = a.mul(&b).unwrap().substitute(&ctx, &images).unwrap();
        let rhs = a.substitute(&ctx, &images).unwrap().mul(&b.substitute(&ctx, &images).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn t3_table() -> Arc<NormalFormTable> {
    TableCache::default().table(&Family::Dk(3), 4).unwrap()
}

fn t3_series() -> impl Strategy<Value = TruncatedSeries> {
    series_in(Family::Dk(3).context(4).unwrap(), 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduce_is_linear_and_idempotent(a in t3_series(), b in t3_series(), s in coeff()) {
        let table = t3_table();
        let combo = a.add(&b.scale(&s)).unwrap();
        let lhs = table.reduce(&combo).unwrap();
        let rhs = table.reduce(&a).unwrap().add(&table.reduce(&b).unwrap().scale(&s)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(table.reduce(&lhs).unwrap(), lhs);
    }

    #[test]
    fn ideal_membership(left in t3_series(), right in t3_series(), k in 0usize..3) {
        let table = t3_table();
        let rel = Family::Dk(3).relations().unwrap()[k].extend_to(4).unwrap();
        let element = left.mul(&rel).unwrap().mul(&right).unwrap();
        prop_assert!(table.reduce(&element).unwrap().is_zero());
    }
}
