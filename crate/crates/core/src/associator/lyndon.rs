//! Lyndon words and their standard bracketings, a basis of the free Lie
//! algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::series::{Context, TruncatedSeries};
use crate::Result;

/// Lyndon words over `0..letters` of length exactly `len`, in increasing
/// lexicographic order (Duval's generation).
pub fn lyndon_words(letters: u16, len: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if letters == 0 || len == 0 {
        return out;
    }
    let mut w: Vec<u16> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        // extend periodically to length len, then strip trailing maximal letters
        let m = w.len();
        while w.len() < len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(letters - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => return out,
            Some(c) => *c += 1,
        }
    }
}

pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing: `w = uv` with `v` the longest proper Lyndon suffix.
pub fn bracketing(ctx: &Context, w: &[u16]) -> Result<TruncatedSeries> {
    if w.len() == 1 {
        return Ok(TruncatedSeries::generator(ctx, w[0]));
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap_or(w.len() - 1);
    bracketing(ctx, &w[..split])?.bracket(&bracketing(ctx, &w[split..])?)
}
