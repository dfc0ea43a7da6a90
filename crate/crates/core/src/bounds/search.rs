//! Exhaustive scan of all compositions of `n`.
//!
//! The scan walks cut masks in parallel chunks. Every reduction is a max with
//! the lexicographically least block sequence winning ties, so the report does
//! not depend on chunking or thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{classify, nt_bound_of_blocks, verdicts, BoundCertificate, Verdict};
use super::composition::{check_enumeration_n, Composition, MAX_ENUMERATION_N};
use super::BoundsError;

/// Number of leading entries kept in [`SearchReport::top`].
pub const DEFAULT_TOP: usize = 10;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub none: u64,
    pub reducible: u64,
    pub not_complete_intersection: u64,
}

impl VerdictCounts {
    fn bump(&mut self, v: Verdict) {
        match v {
            Verdict::None => self.none += 1,
            Verdict::Reducible => self.reducible += 1,
            Verdict::NotCompleteIntersection => self.not_complete_intersection += 1,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.none += o.none;
        self.reducible += o.reducible;
        self.not_complete_intersection += o.not_complete_intersection;
    }

    pub fn total(&self) -> u64 {
        self.none + self.reducible + self.not_complete_intersection
    }
}

/// Per-verdict tallies and best certificates for one of the two varieties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub counts: VerdictCounts,
    /// Highest verdict class found, best bound within it.
    pub strongest: Option<BoundCertificate>,
    pub best_reducible: Option<BoundCertificate>,
    pub best_not_complete_intersection: Option<BoundCertificate>,
}

impl VerdictSummary {
    pub fn strongest_verdict(&self) -> Verdict {
        if self.best_not_complete_intersection.is_some() {
            Verdict::NotCompleteIntersection
        } else if self.best_reducible.is_some() {
            Verdict::Reducible
        } else {
            Verdict::None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedComposition {
    pub composition: Composition,
    pub nt_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub compositions: u64,
    /// Composition with the largest bound overall.
    pub max_bound: BoundCertificate,
    pub ct: VerdictSummary,
    pub nt: VerdictSummary,
    /// Largest bounds, descending, ties in lexicographic order.
    pub top: Vec<RankedComposition>,
}

/// Running best: larger bound wins, then lexicographically smaller blocks.
#[derive(Clone, Debug, Default)]
struct Best(Option<(u64, Vec<usize>)>);

fn beats(bound: u64, blocks: &[usize], other_bound: u64, other: &[usize]) -> bool {
    bound > other_bound || (bound == other_bound && blocks < other)
}

impl Best {
    fn offer(&mut self, bound: u64, blocks: &[usize]) {
        let better = match &self.0 {
            None => true,
            Some((b, bl)) => beats(bound, blocks, *b, bl),
        };
        if better {
            self.0 = Some((bound, blocks.to_vec()));
        }
    }

    fn merge(&mut self, other: Best) {
        if let Some((b, bl)) = other.0 {
            self.offer(b, &bl);
        }
    }

    fn certificate(&self) -> Option<BoundCertificate> {
        self.0
            .as_ref()
            .map(|(_, bl)| classify(&Composition::new(bl.clone()).expect("valid blocks")))
    }
}

#[derive(Clone, Debug, Default)]
struct Side {
    counts: VerdictCounts,
    reducible: Best,
    non_ci: Best,
}

impl Side {
    fn record(&mut self, v: Verdict, bound: u64, blocks: &[usize]) {
        self.counts.bump(v);
        match v {
            Verdict::None => {}
            Verdict::Reducible => self.reducible.offer(bound, blocks),
            Verdict::NotCompleteIntersection => self.non_ci.offer(bound, blocks),
        }
    }

    fn merge(&mut self, o: Side) {
        self.counts.merge(&o.counts);
        self.reducible.merge(o.reducible);
        self.non_ci.merge(o.non_ci);
    }

    fn summary(&self) -> VerdictSummary {
        let best_reducible = self.reducible.certificate();
        let best_not_complete_intersection = self.non_ci.certificate();
        VerdictSummary {
            counts: self.counts,
            strongest: best_not_complete_intersection
                .clone()
                .or_else(|| best_reducible.clone()),
            best_reducible,
            best_not_complete_intersection,
        }
    }
}

#[derive(Clone, Debug)]
struct Partial {
    top_k: usize,
    max: Best,
    ct: Side,
    nt: Side,
    top: Vec<(u64, Vec<usize>)>,
}

impl Partial {
    fn new(top_k: usize) -> Self {
        Self {
            top_k,
            max: Best::default(),
            ct: Side::default(),
            nt: Side::default(),
            top: Vec::with_capacity(top_k + 1),
        }
    }

    fn visit(&mut self, n: usize, blocks: &[usize]) {
        let bound = nt_bound_of_blocks(blocks);
        let (vct, vnt) = verdicts(n, blocks.len(), bound);
        self.max.offer(bound, blocks);
        self.ct.record(vct, bound, blocks);
        self.nt.record(vnt, bound, blocks);
        self.offer_top(bound, blocks);
    }

    fn offer_top(&mut self, bound: u64, blocks: &[usize]) {
        if self.top_k == 0 {
            return;
        }
        if self.top.len() == self.top_k {
            let (wb, wbl) = self.top.last().expect("non-empty");
            if !beats(bound, blocks, *wb, wbl) {
                return;
            }
        }
        let pos = self
            .top
            .partition_point(|(b, bl)| beats(*b, bl, bound, blocks));
        self.top.insert(pos, (bound, blocks.to_vec()));
        self.top.truncate(self.top_k);
    }

    fn merge(mut self, o: Partial) -> Partial {
        self.max.merge(o.max);
        self.ct.merge(o.ct);
        self.nt.merge(o.nt);
        for (b, bl) in o.top {
            self.offer_top(b, &bl);
        }
        self
    }
}

/// Writes the blocks of cut mask `mask` into `buf`, returning the block count.
fn blocks_of_mask(n: usize, mask: u64, buf: &mut [usize; MAX_ENUMERATION_N]) -> usize {
    let mut s = 0;
    let mut len = 1;
    for i in 0..n - 1 {
        if mask >> i & 1 == 1 {
            buf[s] = len;
            s += 1;
            len = 1;
        } else {
            len += 1;
        }
    }
    buf[s] = len;
    s + 1
}

pub fn search(n: usize) -> Result<SearchReport, BoundsError> {
    search_with_top(n, DEFAULT_TOP)
}

/// Scans all `2^(n-1)` compositions of `n`.
pub fn search_with_top(n: usize, top_k: usize) -> Result<SearchReport, BoundsError> {
    check_enumeration_n(n)?;
    let total: u64 = 1 << (n - 1);
    let chunks = total.div_ceil(CHUNK);
    let partial = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Partial::new(top_k);
            let mut buf = [0usize; MAX_ENUMERATION_N];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let s = blocks_of_mask(n, mask, &mut buf);
                acc.visit(n, &buf[..s]);
            }
            acc
        })
        .reduce(|| Partial::new(top_k), Partial::merge);

    let max_bound = partial.max.certificate().expect("at least one composition");
    Ok(SearchReport {
        n,
        compositions: total,
        max_bound,
        ct: partial.ct.summary(),
        nt: partial.nt.summary(),
        top: partial
            .top
            .into_iter()
            .map(|(nt_bound, bl)| RankedComposition {
                composition: Composition::new(bl).expect("valid blocks"),
                nt_bound,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{enumerate_compositions, nt_bound};

    #[test]
    fn matches_sequential_scan() {
        for n in 1..=12 {
            let report = search(n).unwrap();
            let all: Vec<_> = enumerate_compositions(n).unwrap().map(|j| classify(&j)).collect();
            assert_eq!(report.compositions, all.len() as u64);
            let best = all
                .iter()
                .max_by(|a, b| a.nt_bound.cmp(&b.nt_bound).then(b.composition.cmp(&a.composition)))
                .unwrap();
            assert_eq!(&report.max_bound, best);
            let count = |v: Verdict| all.iter().filter(|c| c.verdict_ct == v).count() as u64;
            assert_eq!(report.ct.counts.none, count(Verdict::None));
            assert_eq!(report.ct.counts.reducible, count(Verdict::Reducible));
            assert_eq!(report.ct.counts.total(), all.len() as u64);
            assert_eq!(report.nt.counts.total(), all.len() as u64);

            let mut sorted: Vec<_> = all.iter().map(|c| (c.nt_bound, c.composition.clone())).collect();
            sorted.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let want: Vec<_> = sorted.into_iter().take(DEFAULT_TOP).collect();
            let got: Vec<_> = report.top.iter().map(|r| (r.nt_bound, r.composition.clone())).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn small_sizes_have_no_ct_verdicts() {
        for n in 1..=8 {
            let r = search(n).unwrap();
            assert_eq!(r.ct.counts.none, r.compositions, "n = {n}");
            assert!(r.ct.strongest.is_none());
        }
    }

    #[test]
    fn witnesses_at_seventeen_and_eighteen() {
        let r18 = search(18).unwrap();
        assert!(r18.ct.best_not_complete_intersection.is_some());
        assert_eq!(r18.ct.strongest_verdict(), Verdict::NotCompleteIntersection);
        let r17 = search(17).unwrap();
        assert!(r17.ct.strongest.is_some());
    }

    #[test]
    fn four_has_the_strictly_upper_reducibility() {
        // x23 = y23 = 0 gives a 9-dimensional piece next to the regular closure
        let r = search(4).unwrap();
        let best = r.nt.best_reducible.unwrap();
        assert_eq!(best.nt_bound, 9);
        assert_eq!(best.composition.blocks(), &[1, 2, 1]);
    }

    #[test]
    fn max_bound_grows_by_at_least_n() {
        let maxima: Vec<u64> = (1..=20).map(|n| search_with_top(n, 0).unwrap().max_bound.nt_bound).collect();
        for n in 2..=20 {
            let prev = maxima[n - 2];
            assert!(maxima[n - 1] >= prev + n as u64, "n = {n}");
        }
        // witnessed by prepending a singleton block
        for n in 2..=12 {
            for j in enumerate_compositions(n - 1).unwrap() {
                assert_eq!(nt_bound(&j.with_leading_singleton()), nt_bound(&j) + (n - 1) as u64 + j.blocks()[0] as u64);
            }
        }
    }

    #[test]
    fn guard() {
        assert!(search(0).is_err());
        assert!(search(31).is_err());
    }
}
