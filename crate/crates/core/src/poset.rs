//! Finite posets over dense ids `0..n` with a transitively closed strict
//! order kept as bit rows.
//!
//! `up[x]` holds `{y : x < y}` and `down[x]` holds `{y : y < x}`, so
//! comparability and incomparability are single bit probes and the searches
//! below work on whole rows at a time.

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    heights: Vec<usize>,
}

/// Two fully incomparable chains witnessing an induced r+s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsWitness {
    /// Chain of size r, ascending.
    pub chain_a: Vec<usize>,
    /// Chain of size s, ascending.
    pub chain_b: Vec<usize>,
}

impl Poset {
    /// Build from strict-order pairs `u < v` and take the transitive closure.
    ///
    /// The pairs do not have to be covers; any subset of a strict order with
    /// the same closure yields the same poset. Duplicates are ignored.
    pub fn from_cover_relations(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        for &(u, v) in covers {
            if u >= n {
                return Err(Error::Index { id: u, n });
            }
            if v >= n {
                return Err(Error::Index { id: v, n });
            }
            if u == v {
                return Err(Error::Cycle);
            }
        }

        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut seen = vec![BitSet::new(n); n];
        for &(u, v) in covers {
            if !seen[u].contains(v) {
                seen[u].insert(v);
                succ[u].push(v);
                indeg[v] += 1;
            }
        }

        // Kahn topological sort; a shortfall means a cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Cycle);
        }

        // Closure: sinks first, each row ors in its successors' rows.
        let mut up = vec![BitSet::new(n); n];
        for &v in order.iter().rev() {
            let mut row = std::mem::take(&mut up[v]);
            for &w in &succ[v] {
                row.insert(w);
                row.union_with(&up[w]);
            }
            up[v] = row;
        }

        Self::from_closed_up_rows(n, up)
    }

    fn from_closed_up_rows(n: usize, up: Vec<BitSet>) -> Result<Poset> {
        let mut down = vec![BitSet::new(n); n];
        for x in 0..n {
            if up[x].contains(x) {
                return Err(Error::Cycle);
            }
            for y in up[x].iter() {
                down[y].insert(x);
            }
        }

        // Heights by longest-path DP; down-sets of lower elements are already
        // final when processed in ascending height of the closure.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| down[x].count());
        let mut heights = vec![0usize; n];
        for &x in &order {
            let best = down[x].iter().map(|y| heights[y]).max().unwrap_or(0);
            heights[x] = best + 1;
        }

        let p = Poset {
            n,
            up,
            down,
            heights,
        };
        p.assert_invariants();
        Ok(p)
    }

    /// Antichain on n elements.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_cover_relations(n, &[]).unwrap()
    }

    /// Chain 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> Poset {
        let covers: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Poset::from_cover_relations(n, &covers).unwrap()
    }

    fn assert_invariants(&self) {
        for x in 0..self.n {
            assert!(!self.up[x].contains(x), "irreflexivity violated at {x}");
            assert!(
                !self.up[x].intersects(&self.down[x]),
                "antisymmetry violated at {x}"
            );
            for y in self.up[x].iter() {
                assert!(
                    self.up[y].is_subset(&self.up[x]),
                    "transitivity violated at ({x},{y})"
                );
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.comparable(x, y)
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// Elements comparable to x, including x itself.
    pub fn comparables(&self, x: usize) -> BitSet {
        let mut c = self.up[x].clone();
        c.union_with(&self.down[x]);
        c.insert(x);
        c
    }

    /// Elements incomparable to x (excludes x).
    pub fn incomparables(&self, x: usize) -> BitSet {
        let mut c = self.comparables(x);
        c.invert();
        c
    }

    /// h(x): size of a largest chain with maximum element x.
    pub fn element_height(&self, x: usize) -> Result<usize> {
        if x >= self.n {
            return Err(Error::Index { id: x, n: self.n });
        }
        Ok(self.heights[x])
    }

    /// Size of a largest chain; 0 for the empty poset.
    pub fn height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Size of a largest antichain, via a minimum chain cover of the closed
    /// relation (Dilworth). Asserts that the extracted antichain and the
    /// cover have equal size.
    pub fn width(&self) -> usize {
        self.dilworth().0.len()
    }

    /// A maximum antichain, sorted ascending.
    pub fn max_antichain(&self) -> Vec<usize> {
        self.dilworth().1
    }

    /// Minimum chain cover paired with a maximum antichain of equal size.
    ///
    /// Chains come from the successor edges of a maximum bipartite matching
    /// on `{(u,v) : u < v}`; the antichain is the elements missed by the
    /// matching's minimum vertex cover.
    pub fn dilworth(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let matching = self.max_matching();

        let mut chains = Vec::new();
        for start in 0..self.n {
            if matching.pred[start].is_some() {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(next) = matching.succ[cur] {
                chain.push(next);
                cur = next;
            }
            chains.push(chain);
        }
        for c in &chains {
            for win in c.windows(2) {
                debug_assert!(self.lt(win[0], win[1]));
            }
        }
        assert_eq!(
            chains.iter().map(Vec::len).sum::<usize>(),
            self.n,
            "chain cover must partition the poset"
        );

        // Koenig: alternate from unmatched left vertices; the antichain is
        // x with x reachable on the left and not reachable on the right.
        let mut zl = BitSet::new(self.n);
        let mut zr = BitSet::new(self.n);
        let mut stack: Vec<usize> = (0..self.n).filter(|&u| matching.succ[u].is_none()).collect();
        for &u in &stack {
            zl.insert(u);
        }
        while let Some(u) = stack.pop() {
            for v in self.up[u].iter() {
                if !zr.contains(v) {
                    zr.insert(v);
                    if let Some(u2) = matching.pred[v] {
                        if !zl.contains(u2) {
                            zl.insert(u2);
                            stack.push(u2);
                        }
                    }
                }
            }
        }
        let antichain: Vec<usize> = (0..self.n)
            .filter(|&x| zl.contains(x) && !zr.contains(x))
            .collect();

        for (i, &x) in antichain.iter().enumerate() {
            for &y in &antichain[i + 1..] {
                debug_assert!(self.incomparable(x, y));
            }
        }
        assert_eq!(
            antichain.len(),
            chains.len(),
            "Dilworth consistency: antichain size must equal cover size"
        );
        (chains, antichain)
    }

    fn max_matching(&self) -> Matching {
        // Hopcroft-Karp on left copies (chain predecessors) and right copies
        // (chain successors); edge u -> v iff u < v.
        let n = self.n;
        let mut succ: Vec<Option<usize>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        loop {
            let mut dist = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            for u in 0..n {
                if succ[u].is_none() {
                    dist[u] = 0;
                    queue.push_back(u);
                }
            }
            let mut found_free = false;
            while let Some(u) = queue.pop_front() {
                for v in self.up[u].iter() {
                    match pred[v] {
                        None => found_free = true,
                        Some(u2) => {
                            if dist[u2] == usize::MAX {
                                dist[u2] = dist[u] + 1;
                                queue.push_back(u2);
                            }
                        }
                    }
                }
            }
            if !found_free {
                break;
            }
            let mut augmented = false;
            for u in 0..n {
                if succ[u].is_none() && dist[u] == 0 {
                    augmented |= self.try_augment(u, &mut dist, &mut succ, &mut pred);
                }
            }
            if !augmented {
                break;
            }
        }
        Matching { succ, pred }
    }

    fn try_augment(
        &self,
        u: usize,
        dist: &mut [usize],
        succ: &mut [Option<usize>],
        pred: &mut [Option<usize>],
    ) -> bool {
        let d = std::mem::replace(&mut dist[u], usize::MAX);
        for v in self.up[u].iter() {
            let ok = match pred[v] {
                None => true,
                Some(u2) => dist[u2] == d + 1 && self.try_augment(u2, dist, succ, pred),
            };
            if ok {
                succ[u] = Some(v);
                pred[v] = Some(u);
                return true;
            }
        }
        false
    }

    /// Exact width by branch-and-bound over antichains; oracle for `width`.
    pub fn width_bruteforce(&self) -> Result<usize> {
        if self.n > 24 {
            return Err(Error::Size(format!(
                "width_bruteforce is limited to 24 elements, got {}",
                self.n
            )));
        }
        fn mis(p: &Poset, candidates: BitSet, current: usize, best: &mut usize) {
            let k = candidates.count();
            if current + k <= *best {
                return;
            }
            match candidates.first() {
                None => *best = (*best).max(current),
                Some(v) => {
                    // include v
                    let mut rest = candidates.clone();
                    rest.remove(v);
                    let mut allowed = rest.clone();
                    allowed.difference_with(&p.up[v]);
                    allowed.difference_with(&p.down[v]);
                    mis(p, allowed, current + 1, best);
                    // exclude v
                    mis(p, rest, current, best);
                }
            }
        }
        let mut best = 0;
        mis(self, BitSet::full(self.n), 0, &mut best);
        Ok(best)
    }

    /// Search for two fully incomparable chains of sizes r and s.
    ///
    /// Exact backtracking: grow an ascending chain A of size r while
    /// intersecting the common incomparable set U, pruning on |U| < s and on
    /// elements that cannot top out a long enough chain; at depth r, take a
    /// longest chain inside U.
    pub fn contains_r_plus_s(&self, r: usize, s: usize) -> Option<RsWitness> {
        assert!(r >= 1 && s >= 1, "chain sizes must be positive");
        if self.n == 0 {
            return None;
        }
        // up_heights[x]: size of a largest chain with minimum element x.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.up[x].count());
        let mut up_heights = vec![0usize; self.n];
        for &x in &order {
            let best = self.up[x].iter().map(|y| up_heights[y]).max().unwrap_or(0);
            up_heights[x] = best + 1;
        }

        let mut chain = Vec::with_capacity(r);
        for start in 0..self.n {
            if up_heights[start] < r {
                continue;
            }
            let u = self.incomparables(start);
            if u.count() < s {
                continue;
            }
            chain.push(start);
            if let Some(w) = self.extend_rs(r, s, &up_heights, &mut chain, u) {
                return Some(w);
            }
            chain.pop();
        }
        None
    }

    fn extend_rs(
        &self,
        r: usize,
        s: usize,
        up_heights: &[usize],
        chain: &mut Vec<usize>,
        u: BitSet,
    ) -> Option<RsWitness> {
        if chain.len() == r {
            let other = self.longest_chain_within(&u)?;
            if other.len() >= s {
                return Some(RsWitness {
                    chain_a: chain.clone(),
                    chain_b: other[..s].to_vec(),
                });
            }
            return None;
        }
        let top = *chain.last().unwrap();
        let need = r - chain.len();
        for next in self.up[top].iter() {
            if up_heights[next] < need {
                continue;
            }
            let mut u2 = u.clone();
            u2.intersect_with(&self.incomparables(next));
            if u2.count() < s {
                continue;
            }
            chain.push(next);
            if let Some(w) = self.extend_rs(r, s, up_heights, chain, u2) {
                return Some(w);
            }
            chain.pop();
        }
        None
    }

    /// A longest chain of the subposet induced by `within`, ascending.
    fn longest_chain_within(&self, within: &BitSet) -> Option<Vec<usize>> {
        let mut members = within.to_vec();
        if members.is_empty() {
            return None;
        }
        members.sort_by_key(|&x| self.heights[x]);
        let mut len = std::collections::HashMap::new();
        let mut parent = std::collections::HashMap::new();
        let mut best = (1usize, members[0]);
        for &x in &members {
            let mut lx = 1;
            for y in self.down[x].iter() {
                if within.contains(y) {
                    if let Some(&ly) = len.get(&y) {
                        if ly + 1 > lx {
                            lx = ly + 1;
                            parent.insert(x, y);
                        }
                    }
                }
            }
            len.insert(x, lx);
            if lx > best.0 {
                best = (lx, x);
            }
        }
        let mut chain = vec![best.1];
        while let Some(&p) = parent.get(chain.last().unwrap()) {
            chain.push(p);
        }
        chain.reverse();
        Some(chain)
    }

    /// Disjoint union; elements of `other` are shifted by `self.n` and are
    /// incomparable to everything in `self`.
    pub fn disjoint_sum(&self, other: &Poset) -> Poset {
        let n = self.n + other.n;
        let mut up = vec![BitSet::new(n); n];
        for x in 0..self.n {
            for y in self.up[x].iter() {
                up[x].insert(y);
            }
        }
        for x in 0..other.n {
            for y in other.up[x].iter() {
                up[self.n + x].insert(self.n + y);
            }
        }
        Poset::from_closed_up_rows(n, up).expect("disjoint sum of valid posets is valid")
    }

    /// Subposet induced by `elems`, re-indexed densely; `mapping[new] = old`.
    pub fn induced_subposet(&self, elems: &[usize]) -> Result<(Poset, Vec<usize>)> {
        let mut mapping: Vec<usize> = elems.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        if let Some(&bad) = mapping.iter().find(|&&x| x >= self.n) {
            return Err(Error::Index { id: bad, n: self.n });
        }
        let m = mapping.len();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &old) in mapping.iter().enumerate() {
            new_id[old] = i;
        }
        let mut up = vec![BitSet::new(m); m];
        for (i, &old) in mapping.iter().enumerate() {
            for y in self.up[old].iter() {
                if new_id[y] != usize::MAX {
                    up[i].insert(new_id[y]);
                }
            }
        }
        let p = Poset::from_closed_up_rows(m, up)
            .expect("restriction of a closed relation stays closed");
        Ok((p, mapping))
    }

    /// Cover pairs of the Hasse diagram, sorted.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for u in 0..self.n {
            for v in self.up[u].iter() {
                if !self.up[u].intersects(&self.down[v]) {
                    covers.push((u, v));
                }
            }
        }
        covers.sort_unstable();
        covers
    }
}

struct Matching {
    succ: Vec<Option<usize>>,
    pred: Vec<Option<usize>>,
}
