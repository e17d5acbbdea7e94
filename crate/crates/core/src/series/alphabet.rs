use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::families::Family;

/// One letter of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
    /// Bigraded alphabets keep the pair; its sum is `weight`.
    pub bidegree: Option<(u32, u32)>,
}

/// An ordered list of generators. The index order is the letter order used
/// by the monomial order.
#[derive(Debug)]
pub struct Alphabet {
    family: Family,
    generators: Vec<Generator>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}
impl Eq for Alphabet {}

impl Alphabet {
    /// Builds an alphabet; the family is its identity for equality and
    /// serialization.
    pub fn new(family: Family, generators: Vec<Generator>) -> crate::Result<Arc<Self>> {
        for (i, g) in generators.iter().enumerate() {
            if g.weight == 0 {
                return Err(crate::Error::Domain(alloc::format!(
                    "generator {} has weight 0",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(crate::Error::Domain(alloc::format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }
        if generators.len() > u16::MAX as usize {
            return Err(crate::Error::Domain("alphabet too large".into()));
        }
        Ok(Arc::new(Alphabet { family, generators }))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn weight(&self, index: u16) -> u32 {
        self.generators[index as usize].weight
    }

    pub fn name(&self, index: u16) -> &str {
        &self.generators[index as usize].name
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
    }

    /// Number of monomials of each weight `0..=maxdeg`.
    pub fn monomial_counts(&self, maxdeg: u32) -> Vec<u128> {
        let mut counts = alloc::vec![0u128; maxdeg as usize + 1];
        counts[0] = 1;
        for d in 1..=maxdeg as usize {
            let mut total = 0u128;
            for g in &self.generators {
                let w = g.weight as usize;
                if w <= d {
                    total = total.saturating_add(counts[d - w]);
                }
            }
            counts[d] = total;
        }
        counts
    }
}
