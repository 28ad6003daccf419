//! Interval assignment for (r+s)-free posets and the group family built
//! from it.
//!
//! Each element x gets the consecutive integers I(x) = {h(x),...,b(x)-1},
//! where b(x) is the least height of an element reachable from x by a chain
//! of size r (q+1 if there is none). Group X_k collects the elements whose
//! interval contains k; these are the members of the initial society.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Debug)]
pub struct IntervalAssignment {
    r: usize,
    q: usize,
    h: Vec<usize>,
    b: Vec<usize>,
}

impl IntervalAssignment {
    /// Assemble from precomputed parts, checking only shape (used by tests
    /// that need a deliberately wrong assignment).
    pub fn from_raw(r: usize, q: usize, h: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        assert_eq!(h.len(), b.len());
        for x in 0..h.len() {
            if !(1 <= h[x] && h[x] < b[x] && b[x] <= q + 1) {
                return Err(Error::EmptyInterval {
                    element: x,
                    h: h[x],
                    b: b[x],
                });
            }
        }
        Ok(IntervalAssignment { r, q, h, b })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Height of the underlying poset.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self, x: usize) -> usize {
        self.h[x]
    }

    pub fn b(&self, x: usize) -> usize {
        self.b[x]
    }

    /// Inclusive bounds (h(x), b(x)-1) of I(x).
    pub fn interval(&self, x: usize) -> (usize, usize) {
        (self.h[x], self.b[x] - 1)
    }

    pub fn contains(&self, x: usize, k: usize) -> bool {
        self.h[x] <= k && k < self.b[x]
    }
}

/// b(x) for every element: the minimum height over elements topping a chain
/// of size at least r starting at x, or q+1 when no chain that long exists.
///
/// One longest-path pass per source over its up-set.
pub fn compute_b(p: &Poset, r: usize) -> Vec<usize> {
    assert!(r >= 2, "r must be at least 2");
    let n = p.n();
    let q = p.height();
    // Elements in ascending height form a topological order of every up-set.
    let mut by_height: Vec<usize> = (0..n).collect();
    by_height.sort_by_key(|&x| p.element_height(x).unwrap());

    let mut b = vec![q + 1; n];
    let mut chain_len = vec![0usize; n];
    for x in 0..n {
        let ups = p.up_set(x);
        let mut best = q + 1;
        for &z in &by_height {
            if !ups.contains(z) {
                continue;
            }
            // longest chain from x to z, counting both endpoints
            let mut len = 2;
            for y in p.down_set(z).iter() {
                if ups.contains(y) && chain_len[y] + 1 > len {
                    len = chain_len[y] + 1;
                }
            }
            chain_len[z] = len;
            if len >= r {
                best = best.min(p.element_height(z).unwrap());
            }
        }
        b[x] = best;
    }
    b
}

/// The full assignment I(x) = {h(x),...,b(x)-1}.
///
/// For r >= 2 every interval is non-empty: any element of Z(x) sits at least
/// r-1 levels above x, so b(x) >= h(x)+1.
pub fn assign_intervals(p: &Poset, r: usize) -> Result<IntervalAssignment> {
    let q = p.height();
    let h: Vec<usize> = (0..p.n()).map(|x| p.element_height(x).unwrap()).collect();
    let b = compute_b(p, r);
    IntervalAssignment::from_raw(r, q, h, b)
}

/// Groups X_1,...,X_q with X_k = {x : k in I(x)}; index k is 1-based.
#[derive(Clone, Debug)]
pub struct GroupFamily {
    n_elements: usize,
    groups: Vec<BitSet>,
}

impl GroupFamily {
    pub fn q(&self) -> usize {
        self.groups.len()
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    /// Members of X_{id+1}.
    pub fn group(&self, id: usize) -> &BitSet {
        &self.groups[id]
    }

    pub fn groups(&self) -> &[BitSet] {
        &self.groups
    }
}

pub fn build_groups(ia: &IntervalAssignment) -> GroupFamily {
    let q = ia.q();
    let mut groups = vec![BitSet::new(ia.n()); q];
    for x in 0..ia.n() {
        let (lo, hi) = ia.interval(x);
        for k in lo..=hi.min(q) {
            groups[k - 1].insert(x);
        }
    }
    for (k, g) in groups.iter().enumerate() {
        assert!(
            !g.is_empty(),
            "group X_{} is empty although some element has height {}",
            k + 1,
            k + 1
        );
    }
    GroupFamily {
        n_elements: ia.n(),
        groups,
    }
}

/// Property (1): every X_k induces a subposet of height at most r-1.
pub fn verify_property_1(p: &Poset, ia: &IntervalAssignment, r: usize) -> bool {
    let q = ia.q();
    for k in 1..=q {
        let members: Vec<usize> = (0..ia.n()).filter(|&x| ia.contains(x, k)).collect();
        if members.is_empty() {
            continue;
        }
        let (sub, _) = p.induced_subposet(&members).expect("members are in range");
        if sub.height() > r - 1 {
            return false;
        }
    }
    true
}

/// Property (2): for every incomparable pair, the intervals intersect or at
/// most s-2 integers lie strictly between them.
pub fn verify_property_2(p: &Poset, ia: &IntervalAssignment, s: usize) -> bool {
    let n = ia.n();
    for x in 0..n {
        let (lox, hix) = ia.interval(x);
        for y in x + 1..n {
            if !p.incomparable(x, y) {
                continue;
            }
            let (loy, hiy) = ia.interval(y);
            let gap = if hix < loy {
                loy - hix - 1
            } else if hiy < lox {
                lox - hiy - 1
            } else {
                0
            };
            if gap > s - 2 {
                return false;
            }
        }
    }
    true
}
