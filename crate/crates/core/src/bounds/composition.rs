use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BoundsError;

/// Largest `n` for which compositions are enumerated (2^29 of them).
pub const MAX_ENUMERATION_N: usize = 30;

/// Ordered block sizes `(n_1, ..., n_s)` of an interval partition of `{1..n}`.
///
/// Ordering is lexicographic on the block sequence, which is the tie-break
/// used throughout the search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    blocks: Vec<usize>,
}

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self, BoundsError> {
        if blocks.is_empty() {
            return Err(BoundsError::InvalidComposition("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(BoundsError::InvalidComposition(format!(
                "zero-sized block in {blocks:?}"
            )));
        }
        Ok(Self { blocks })
    }

    /// `(1, 1, ..., 1)`.
    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: vec![1; n.max(1)],
        }
    }

    /// Decodes a set of cut points: bit `i` set means a block boundary after
    /// position `i + 1`.
    pub fn from_cut_mask(n: usize, mask: u64) -> Self {
        let mut blocks = Vec::new();
        let mut len = 1;
        for i in 0..n.saturating_sub(1) {
            if mask >> i & 1 == 1 {
                blocks.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        blocks.push(len);
        Self { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Number of blocks `s`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self {
            blocks: self.blocks.iter().rev().copied().collect(),
        }
    }

    /// Block index of each of the `n` positions (0-based).
    pub fn block_of_positions(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(h, &size)| std::iter::repeat(h).take(size))
            .collect()
    }

    /// Prepends a size-one block: a composition of `n + 1`.
    pub fn with_leading_singleton(&self) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        blocks.push(1);
        blocks.extend_from_slice(&self.blocks);
        Self { blocks }
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = BoundsError;
    fn try_from(blocks: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(blocks)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.blocks
    }
}

impl FromStr for Composition {
    type Err = BoundsError;

    /// Parses `"1,5,6,5,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| BoundsError::InvalidComposition(format!("bad block size {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(blocks)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn check_enumeration_n(n: usize) -> Result<(), BoundsError> {
    if (1..=MAX_ENUMERATION_N).contains(&n) {
        Ok(())
    } else {
        Err(BoundsError::OutOfRange {
            n,
            max: MAX_ENUMERATION_N,
        })
    }
}

/// All `2^(n-1)` compositions of `n`, in lexicographic order of block sequences.
pub fn enumerate_compositions(n: usize) -> Result<Compositions, BoundsError> {
    check_enumeration_n(n)?;
    Ok(Compositions {
        next: Some(vec![1; n]),
    })
}

/// Streaming iterator returned by [`enumerate_compositions`].
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // successor: drop the last block, grow the one before it by one and
        // spill the remainder as singletons
        if current.len() >= 2 {
            let mut succ = current.clone();
            let last = succ.pop().expect("len >= 2");
            *succ.last_mut().expect("len >= 1") += 1;
            succ.extend(std::iter::repeat(1).take(last - 1));
            self.next = Some(succ);
        }
        Some(Composition { blocks: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(it: Compositions) -> Vec<Vec<usize>> {
        it.map(|c| c.blocks().to_vec()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(blocks(enumerate_compositions(1).unwrap()), vec![vec![1]]);
        assert_eq!(
            blocks(enumerate_compositions(3).unwrap()),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
        assert_eq!(
            blocks(enumerate_compositions(4).unwrap()),
            vec![
                vec![1, 1, 1, 1],
                vec![1, 1, 2],
                vec![1, 2, 1],
                vec![1, 3],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4]
            ]
        );
    }

    #[test]
    fn count_is_power_of_two_and_sorted() {
        assert_eq!(enumerate_compositions(18).unwrap().count(), 131_072);
        for n in 1..=12 {
            let all: Vec<_> = enumerate_compositions(n).unwrap().collect();
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|c| c.n() == n));
        }
    }

    #[test]
    fn cut_masks_cover_the_same_set() {
        for n in 1..=10 {
            let mut from_masks: Vec<_> = (0..1u64 << (n - 1))
                .map(|m| Composition::from_cut_mask(n, m))
                .collect();
            from_masks.sort();
            let lex: Vec<_> = enumerate_compositions(n).unwrap().collect();
            assert_eq!(from_masks, lex);
        }
    }

    #[test]
    fn guard_range() {
        assert!(enumerate_compositions(0).is_err());
        assert!(enumerate_compositions(31).is_err());
        assert!(enumerate_compositions(30).is_ok());
    }

    #[test]
    fn parse_and_validate() {
        let c: Composition = "1,5,6,5,1".parse().unwrap();
        assert_eq!(c.n(), 18);
        assert_eq!(c.len(), 5);
        assert_eq!(c.to_string(), "(1,5,6,5,1)");
        assert!("1,0,2".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
        assert!("a,b".parse::<Composition>().is_err());
        assert!(Composition::new(vec![]).is_err());
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let c = Composition::new(vec![2, 4, 5]).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, "[2,4,5]");
        assert_eq!(serde_json::from_str::<Composition>(&json).unwrap(), c);
        assert!(serde_json::from_str::<Composition>("[1,0]").is_err());
    }
}
