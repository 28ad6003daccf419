//! First-Fit online chain partitioning, the First-Fit partition property
//! check, and the offline optimum for comparison.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::generate::PresentationOrder;
use crate::poset::Poset;

/// Ordered list of disjoint chains covering a poset; chain indices are
/// 1-based in all reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedChainPartition {
    chains: Vec<Vec<usize>>,
}

impl OrderedChainPartition {
    pub fn new(chains: Vec<Vec<usize>>) -> Self {
        OrderedChainPartition { chains }
    }

    /// Number of chains, m.
    pub fn m(&self) -> usize {
        self.chains.len()
    }

    /// Elements of chain i (0-based index), in arrival order.
    pub fn chain(&self, i: usize) -> &[usize] {
        &self.chains[i]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }
}

/// Run First-Fit on `p` with elements arriving in `order`.
///
/// Each arriving element goes to the least chain whose members are all
/// comparable to it. Membership is tested against every current member of a
/// class, tracked as one bit row per class holding the elements comparable
/// to all of that class.
pub fn first_fit(p: &Poset, order: &PresentationOrder) -> OrderedChainPartition {
    assert_eq!(order.len(), p.n(), "order must cover the poset");
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut accepts: Vec<BitSet> = Vec::new();
    for &x in order.as_slice() {
        let comp = p.comparables(x);
        match accepts.iter().position(|a| a.contains(x)) {
            Some(j) => {
                chains[j].push(x);
                accepts[j].intersect_with(&comp);
            }
            None => {
                chains.push(vec![x]);
                accepts.push(comp);
            }
        }
    }
    OrderedChainPartition { chains }
}

/// True iff `cp` is a First-Fit chain partition of `p`: non-empty disjoint
/// chains covering `p`, and every element of a later chain has an
/// incomparable witness in each earlier chain.
pub fn verify_ff_partition(p: &Poset, cp: &OrderedChainPartition) -> bool {
    let mut seen = BitSet::new(p.n());
    let mut count = 0usize;
    for chain in &cp.chains {
        if chain.is_empty() {
            return false;
        }
        for &x in chain {
            if x >= p.n() || seen.contains(x) {
                return false;
            }
            seen.insert(x);
            count += 1;
        }
        for (i, &x) in chain.iter().enumerate() {
            for &y in &chain[i + 1..] {
                if !p.comparable(x, y) {
                    return false;
                }
            }
        }
    }
    if count != p.n() {
        return false;
    }
    // accepts[i] = elements comparable to all of chain i; any x in a later
    // chain that is still accepted by chain i lacks its witness.
    let mut accepts: Vec<BitSet> = Vec::with_capacity(cp.chains.len());
    for chain in &cp.chains {
        let mut a = BitSet::full(p.n());
        for &x in chain {
            a.intersect_with(&p.comparables(x));
        }
        accepts.push(a);
    }
    for i in 0..cp.chains.len() {
        for chain in &cp.chains[i + 1..] {
            if chain.iter().any(|&x| accepts[i].contains(x)) {
                return false;
            }
        }
    }
    true
}

/// Optimal offline partition: exactly `width(p)` chains from the Dilworth
/// matching, ordered by smallest element.
pub fn min_chain_partition(p: &Poset) -> OrderedChainPartition {
    let (mut chains, _) = p.dilworth();
    chains.sort_by_key(|c| c.iter().copied().min().unwrap_or(usize::MAX));
    OrderedChainPartition { chains }
}

/// First-Fit performance against the linear bound for (r+s)-free posets.
#[derive(Clone, Debug)]
pub struct FfReport {
    pub m: usize,
    pub w: usize,
    pub bound: usize,
    pub ratio: f64,
}

/// Run First-Fit and compare against the 8(r-1)(s-1)w bound. The caller is
/// responsible for `p` being (r+s)-free; a bound violation on such input
/// would falsify the theorem and is reported as an error.
pub fn ff_ratio(p: &Poset, order: &PresentationOrder, r: usize, s: usize) -> Result<FfReport> {
    assert!(r >= 2 && s >= 2, "parameters must be at least 2");
    let m = first_fit(p, order).m();
    let w = p.width();
    let bound = 8 * (r - 1) * (s - 1) * w;
    if m > bound {
        return Err(Error::BoundViolation { m, w, bound });
    }
    let ratio = if w > 0 { m as f64 / w as f64 } else { 0.0 };
    Ok(FfReport { m, w, bound, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(ids: &[usize]) -> PresentationOrder {
        PresentationOrder::new(ids.to_vec()).unwrap()
    }

    #[test]
    fn chain_needs_one_class() {
        let p = Poset::chain(5);
        for ord in [
            order(&[0, 1, 2, 3, 4]),
            order(&[4, 3, 2, 1, 0]),
            order(&[2, 0, 4, 1, 3]),
        ] {
            assert_eq!(first_fit(&p, &ord).m(), 1);
        }
    }

    #[test]
    fn antichain_needs_n_classes() {
        let p = Poset::antichain(4);
        let cp = first_fit(&p, &order(&[3, 1, 0, 2]));
        assert_eq!(cp.m(), 4);
        assert!(cp.chains().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn empty_poset_gets_empty_partition() {
        let p = Poset::antichain(0);
        let cp = first_fit(&p, &order(&[]));
        assert_eq!(cp.m(), 0);
        assert!(verify_ff_partition(&p, &cp));
    }

    #[test]
    fn two_plus_two_hand_simulation() {
        // 0<1, 2<3 presented as 0,3,1,2: 0 opens C1; 3 is incomparable to 0
        // and opens C2; 1 > 0 joins C1; 2 is incomparable to 0, below 3,
        // joins C2.
        let p = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let cp = first_fit(&p, &order(&[0, 3, 1, 2]));
        assert_eq!(cp.m(), 2);
        assert_eq!(cp.chain(0), &[0, 1]);
        assert_eq!(cp.chain(1), &[3, 2]);
        assert!(verify_ff_partition(&p, &cp));
    }

    #[test]
    fn ff_outputs_verify() {
        let p = Poset::from_cover_relations(6, &[(0, 2), (1, 2), (2, 5), (3, 4)]).unwrap();
        for ord in [
            order(&[0, 1, 2, 3, 4, 5]),
            order(&[5, 4, 3, 2, 1, 0]),
            order(&[3, 0, 4, 1, 5, 2]),
        ] {
            assert!(verify_ff_partition(&p, &first_fit(&p, &ord)));
        }
    }

    #[test]
    fn misordered_split_chain_fails_verification() {
        // A single chain split across two classes: 1 is comparable to
        // everything in the first class, so the witness clause fails.
        let p = Poset::chain(2);
        let cp = OrderedChainPartition::new(vec![vec![0], vec![1]]);
        assert!(!verify_ff_partition(&p, &cp));
    }

    #[test]
    fn non_partitions_fail_verification() {
        let p = Poset::antichain(2);
        let empty_class = OrderedChainPartition::new(vec![vec![0], vec![], vec![1]]);
        assert!(!verify_ff_partition(&p, &empty_class));
        let missing = OrderedChainPartition::new(vec![vec![0]]);
        assert!(!verify_ff_partition(&p, &missing));
        let dup = OrderedChainPartition::new(vec![vec![0], vec![0, 1]]);
        assert!(!verify_ff_partition(&p, &dup));
        let not_chain = OrderedChainPartition::new(vec![vec![0, 1]]);
        assert!(!verify_ff_partition(&p, &not_chain));
    }

    #[test]
    fn min_partition_sizes() {
        assert_eq!(min_chain_partition(&Poset::antichain(5)).m(), 5);
        assert_eq!(min_chain_partition(&Poset::chain(4)).m(), 1);
        let p = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let cp = min_chain_partition(&p);
        assert_eq!(cp.m(), 2);
        assert_eq!(cp.m(), p.width_bruteforce().unwrap());
    }

    #[test]
    fn ratio_report() {
        let p = Poset::chain(3);
        let rep = ff_ratio(&p, &order(&[0, 1, 2]), 2, 2).unwrap();
        assert_eq!((rep.m, rep.w, rep.bound), (1, 1, 8));
        assert!((rep.ratio - 1.0).abs() < 1e-12);

        let a = Poset::antichain(4);
        let rep = ff_ratio(&a, &order(&[0, 1, 2, 3]), 3, 2).unwrap();
        assert_eq!((rep.m, rep.w, rep.bound), (4, 4, 64));
        assert!((rep.ratio - 1.0).abs() < 1e-12);
    }
}
