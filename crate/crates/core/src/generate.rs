//! Random poset families, presentation orders, and seed plumbing.
//!
//! Everything here is a pure function of its parameters and a 64-bit seed;
//! repeat calls produce bit-identical output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::first_fit::first_fit;
use crate::poset::Poset;

pub type RngSeed = u64;

pub fn rng_from_seed(seed: RngSeed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with stream ids so parallel trials draw independent,
/// reproducible substreams (splitmix64 finalizer).
pub fn derive_seed(base: RngSeed, a: u64, b: u64) -> RngSeed {
    let mut z = base ^ a.wrapping_mul(0x9e3779b97f4a7c15) ^ b.wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Arrival permutation fed to the online algorithm; position = arrival time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationOrder {
    perm: Vec<usize>,
}

impl PresentationOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n {
                return Err(Error::Index { id: x, n });
            }
            if seen[x] {
                return Err(Error::Precondition(format!(
                    "presentation order repeats element {x}"
                )));
            }
            seen[x] = true;
        }
        Ok(PresentationOrder { perm })
    }

    pub fn identity(n: usize) -> Self {
        PresentationOrder {
            perm: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }
}

/// Random DAG: shuffle a topological order, relate each forward pair with
/// probability `edge_prob`, close transitively.
pub fn random_poset(n: usize, edge_prob: f64, seed: RngSeed) -> Poset {
    assert!((0.0..=1.0).contains(&edge_prob), "edge_prob out of range");
    let mut rng = rng_from_seed(seed);
    let mut topo: Vec<usize> = (0..n).collect();
    topo.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                pairs.push((topo[i], topo[j]));
            }
        }
    }
    Poset::from_cover_relations(n, &pairs).expect("forward pairs cannot cycle")
}

/// Random interval order: n intervals with endpoints drawn from {0,...,4n},
/// related by strict right-to-left separation ([a,b] < [c,d] iff b < c).
pub fn random_interval_order(n: usize, seed: RngSeed) -> Poset {
    let mut rng = rng_from_seed(seed);
    let hi = 4 * n as u64;
    let intervals: Vec<(u64, u64)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=hi);
            let b = rng.gen_range(0..=hi);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut pairs = Vec::new();
    for (x, &(_, bx)) in intervals.iter().enumerate() {
        for (y, &(ay, _)) in intervals.iter().enumerate() {
            if bx < ay {
                pairs.push((x, y));
            }
        }
    }
    Poset::from_cover_relations(n, &pairs).expect("interval relation is acyclic")
}

/// Random poset of height at most `hmax`: elements get levels 1..=hmax and
/// only lower levels relate to strictly higher ones, each pair with
/// probability 1/2.
pub fn random_bounded_height_poset(n: usize, hmax: usize, seed: RngSeed) -> Poset {
    assert!(hmax >= 1, "hmax must be at least 1");
    let mut rng = rng_from_seed(seed);
    let levels: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=hmax)).collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if levels[x] < levels[y] && rng.gen_bool(0.5) {
                pairs.push((x, y));
            }
        }
    }
    Poset::from_cover_relations(n, &pairs).expect("level-increasing pairs cannot cycle")
}

/// Sample an (r+s)-free poset by repair: draw a random poset, then while a
/// witness exists delete one of its elements (chosen by the seeded rng) and
/// restrict. Ids are re-packed densely after each deletion.
pub fn random_rs_free(
    n: usize,
    r: usize,
    s: usize,
    edge_prob: f64,
    seed: RngSeed,
    max_tries: usize,
) -> Result<Poset> {
    assert!(r >= 2 && s >= 2, "parameters must be at least 2");
    let mut rng = rng_from_seed(derive_seed(seed, 0x7265706169, 0));
    let mut p = random_poset(n, edge_prob, seed);
    let mut tries = 0usize;
    while let Some(w) = p.contains_r_plus_s(r, s) {
        if tries >= max_tries {
            return Err(Error::GiveUp { tries });
        }
        tries += 1;
        let mut members = w.chain_a;
        members.extend(w.chain_b);
        let victim = members[rng.gen_range(0..members.len())];
        let keep: Vec<usize> = (0..p.n()).filter(|&x| x != victim).collect();
        p = p.induced_subposet(&keep)?.0;
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderStrategy {
    Random,
    LinearExtension,
    ReverseLinext,
    GreedyAdversarial,
}

impl OrderStrategy {
    pub fn name(self) -> &'static str {
        match self {
            OrderStrategy::Random => "random",
            OrderStrategy::LinearExtension => "linext",
            OrderStrategy::ReverseLinext => "reverse-linext",
            OrderStrategy::GreedyAdversarial => "greedy",
        }
    }
}

impl std::str::FromStr for OrderStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(OrderStrategy::Random),
            "linext" | "linear-extension" => Ok(OrderStrategy::LinearExtension),
            "reverse-linext" => Ok(OrderStrategy::ReverseLinext),
            "greedy" | "greedy-adversarial" => Ok(OrderStrategy::GreedyAdversarial),
            other => Err(Error::Precondition(format!(
                "unknown order strategy '{other}'"
            ))),
        }
    }
}

/// Produce an arrival order for `p` under the given strategy.
///
/// The greedy strategy hill-climbs from a random order over 2-swaps with a
/// budget of 50n moves, keeping any swap that increases the First-Fit chain
/// count; it never ends below its starting count.
pub fn order_strategies(p: &Poset, strategy: OrderStrategy, seed: RngSeed) -> PresentationOrder {
    let n = p.n();
    let mut rng = rng_from_seed(seed);
    match strategy {
        OrderStrategy::Random => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            PresentationOrder { perm }
        }
        OrderStrategy::LinearExtension => PresentationOrder {
            perm: linear_extension(p),
        },
        OrderStrategy::ReverseLinext => {
            let mut perm = linear_extension(p);
            perm.reverse();
            PresentationOrder { perm }
        }
        OrderStrategy::GreedyAdversarial => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            if n < 2 {
                return PresentationOrder { perm };
            }
            let mut best = first_fit(p, &PresentationOrder { perm: perm.clone() }).m();
            for _ in 0..50 * n {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i == j {
                    continue;
                }
                perm.swap(i, j);
                let m = first_fit(p, &PresentationOrder { perm: perm.clone() }).m();
                if m > best {
                    best = m;
                } else {
                    perm.swap(i, j);
                }
            }
            PresentationOrder { perm }
        }
    }
}

/// Smallest-id-first topological order of the closed relation.
fn linear_extension(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.n()).collect();
    // down-set size strictly increases along the order, so sorting by it
    // (with id tiebreak) is a linear extension.
    order.sort_by_key(|&x| (p.down_set(x).count(), x));
    order
}
