//! Algebra-morphism extension of a generator assignment.

use alloc::format;
use alloc::vec::Vec;

use super::{Context, TruncatedSeries};
use crate::{Error, Rational, Result};

impl TruncatedSeries {
    /// Replaces letter `i` by `images[i]` and extends multiplicatively.
    ///
    /// Images may have terms of any weight, including constants; the result
    /// is truncated in `target`. Words are evaluated along a prefix trie so
    /// shared prefixes are multiplied once.
    pub fn substitute(&self, target: &Context, images: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        let alphabet = self.alphabet();
        if images.len() < alphabet.len() {
            return Err(Error::Domain(format!(
                "missing image for generator {}",
                alphabet.name(images.len() as u16)
            )));
        }
        if images.len() > alphabet.len() {
            return Err(Error::Domain(format!(
                "{} images for {} generators",
                images.len(),
                alphabet.len()
            )));
        }
        for img in images {
            if img.context() != target {
                return Err(Error::IncompatibleContext(
                    "substitution images must share the target context".into(),
                ));
            }
        }
        let mut words: Vec<(&[u16], &Rational)> =
            self.terms().map(|(m, c)| (m.letters(), c)).collect();
        words.sort_by(|a, b| a.0.cmp(b.0));
        Ok(eval_trie(&words, 0, target, images))
    }
}

/// `words` share their first `depth` letters.
fn eval_trie(
    words: &[(&[u16], &Rational)],
    depth: usize,
    target: &Context,
    images: &[TruncatedSeries],
) -> TruncatedSeries {
    let mut result = TruncatedSeries::zero(target);
    let mut start = 0;
    if let Some((w, c)) = words.first() {
        if w.len() == depth {
            result = TruncatedSeries::constant(target, (*c).clone());
            start = 1;
        }
    }
    while start < words.len() {
        let letter = words[start].0[depth];
        let mut end = start + 1;
        while end < words.len() && words[end].0[depth] == letter {
            end += 1;
        }
        let image = &images[letter as usize];
        if !image.is_zero() {
            let tail = eval_trie(&words[start..end], depth + 1, target, images);
            if !tail.is_zero() {
                let prod = image.mul_unchecked(&tail);
                result = result.add(&prod).expect("same target");
            }
        }
        start = end;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    #[test]
    fn substitution_examples() {
        let ctx = Family::free(&["x", "y"]).context(3).unwrap();
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        assert_eq!(x.substitute(&ctx, &[x.clone(), y.clone()]).unwrap(), x);

        let t3 = Family::Dk(3).context(3).unwrap();
        let t12 = TruncatedSeries::generator_named(&t3, "t[1,2]").unwrap();
        let t23 = TruncatedSeries::generator_named(&t3, "t[2,3]").unwrap();
        let br = x.bracket(&y).unwrap().substitute(&t3, &[t12.clone(), t23.clone()]).unwrap();
        assert_eq!(br, t12.bracket(&t23).unwrap());

        let zero = TruncatedSeries::zero(&ctx);
        let e = x.exp().unwrap().substitute(&ctx, &[zero.clone(), y.clone()]).unwrap();
        assert_eq!(e, TruncatedSeries::one(&ctx));
        assert!(x.substitute(&ctx, &[x.clone()]).is_err());
    }

    #[test]
    fn constant_images_are_allowed() {
        let ctx = Family::free(&["x", "y"]).context(3).unwrap();
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        let g = x.exp().unwrap();
        let s = x.mul(&y).unwrap().substitute(&ctx, &[g.clone(), y.clone()]).unwrap();
        assert_eq!(s, g.mul(&y).unwrap());
    }
}
