#![allow(dead_code)]

use assoc_core::families::{Family, FamilyAlgebra};
use assoc_core::series::{Context, TruncatedSeries};
use assoc_core::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `1` plus a handful of random words in the generators with small integer
/// coefficients.
pub fn random_element(ctx: &Context, rng: &mut impl Rng, words: usize) -> TruncatedSeries {
    let letters = ctx.alphabet().len();
    let mut s = TruncatedSeries::one(ctx);
    if letters == 0 {
        return s;
    }
    for _ in 0..words {
        let len = rng.gen_range(1..=3);
        let mut w = TruncatedSeries::constant(ctx, q(rng.gen_range(-3..=3)));
        for _ in 0..len {
            let g = TruncatedSeries::generator(ctx, rng.gen_range(0..letters) as u16);
            w = w.mul(&g).unwrap();
        }
        s = s.add(&w).unwrap();
    }
    s
}

pub fn random_in(family: Family, maxdeg: u32, rng: &mut impl Rng) -> TruncatedSeries {
    let alg = FamilyAlgebra::new(family, maxdeg).unwrap();
    random_element(alg.context(), rng, 6)
}
