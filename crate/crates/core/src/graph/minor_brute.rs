//! Exhaustive minor search by growing disjoint connected branch sets.
//!
//! The branch sets are placed one pattern vertex at a time. Each set is a
//! connected vertex set of the host, enumerated without repetition, and must
//! touch the sets of every already placed pattern neighbor.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Dense, EdgeId, Multigraph, VertexId};
use crate::error::{Error, Result};

/// Branch sets (one per pattern vertex) and one host edge per pattern edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub branch_sets: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub branch_edges: BTreeMap<EdgeId, EdgeId>,
}

/// Decides whether `h` is a minor of `g`; on success returns a witness.
///
/// `h` must be simple. Loops and parallel edges of `g` are ignored.
pub fn is_minor_brute(h: &Multigraph, g: &Multigraph, cap: usize) -> Result<Option<Witness>> {
    if g.vertex_count() > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "minor oracle host graph",
            size: g.vertex_count(),
            cap: cap.min(64),
        });
    }
    match search(h, g, None, None)? {
        Outcome::Found(w) => Ok(Some(w)),
        Outcome::Absent => Ok(None),
        Outcome::Exhausted => unreachable!("unbudgeted search always terminates"),
    }
}

#[derive(Debug)]
pub(crate) enum Outcome {
    Found(Witness),
    Absent,
    Exhausted,
}

/// Budgeted, optionally randomized variant used by heuristic grid search.
pub(crate) fn search(
    h: &Multigraph,
    g: &Multigraph,
    budget: Option<u64>,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<Outcome> {
    search_bounded(h, g, budget, rng, None)
}

/// As [`search`], with every branch set limited to `max_set` vertices.
pub(crate) fn search_bounded(
    h: &Multigraph,
    g: &Multigraph,
    budget: Option<u64>,
    rng: Option<&mut ChaCha8Rng>,
    max_set: Option<u32>,
) -> Result<Outcome> {
    if !h.is_simple() {
        return Err(Error::NotSimple("minor pattern".into()));
    }
    if g.vertex_count() > 64 {
        return Err(Error::CapExceeded {
            what: "bitmask minor search",
            size: g.vertex_count(),
            cap: 64,
        });
    }
    let host = g.simplify();
    if h.vertex_count() == 0 {
        return Ok(Outcome::Found(Witness::default()));
    }
    let cyclomatic = |x: &Multigraph| x.edge_count() + x.components().len() - x.vertex_count();
    if h.vertex_count() > host.vertex_count() || h.edge_count() > host.edge_count() || cyclomatic(h) > cyclomatic(&host)
    {
        return Ok(Outcome::Absent);
    }

    let gd = Dense::new(&host);
    let hd = Dense::new(h);
    let order = placement_order(&hd);
    let position: Vec<usize> = {
        let mut p = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut e: Vec<usize> = hd.adj[v].iter().map(|&w| position[w]).filter(|&p| p < i).collect();
            e.sort_unstable();
            e
        })
        .collect();
    let last_neighbor: Vec<usize> = order
        .iter()
        .map(|&v| hd.adj[v].iter().map(|&w| position[w]).max().unwrap_or(0))
        .collect();
    let degree: Vec<u32> = order.iter().map(|&v| hd.adj[v].len() as u32).collect();

    let mut searcher = Searcher {
        adj: gd.masks(),
        all: if gd.len() == 64 {
            u64::MAX
        } else {
            (1u64 << gd.len()) - 1
        },
        earlier,
        last_neighbor,
        degree,
        sets: vec![0; order.len()],
        nbrs: vec![0; order.len()],
        used: 0,
        budget,
        nodes: 0,
        exhausted: false,
        rng,
        max_set: max_set.unwrap_or(u32::MAX),
    };
    if !searcher.place(0) {
        return Ok(if searcher.exhausted {
            Outcome::Exhausted
        } else {
            Outcome::Absent
        });
    }

    let mut witness = Witness::default();
    let mut owner = BTreeMap::new();
    for (i, &hv) in order.iter().enumerate() {
        let set: BTreeSet<VertexId> = (0..gd.len())
            .filter(|&b| searcher.sets[i] >> b & 1 == 1)
            .map(|b| gd.ids[b])
            .collect();
        for &v in &set {
            owner.insert(v, hd.ids[hv]);
        }
        witness.branch_sets.insert(hd.ids[hv], set);
    }
    for (he, a, b) in h.edges() {
        let ge = host
            .edges()
            .find(|&(_, u, v)| {
                let (ou, ov) = (owner.get(&u), owner.get(&v));
                (ou == Some(&a) && ov == Some(&b)) || (ou == Some(&b) && ov == Some(&a))
            })
            .map(|(e, _, _)| e)
            .expect("placed sets are adjacent for every pattern edge");
        witness.branch_edges.insert(he, ge);
    }
    Ok(Outcome::Found(witness))
}

/// Greedy order: next vertex has the most already-placed neighbors, ties by
/// degree then index.
fn placement_order(h: &Dense) -> Vec<usize> {
    let n = h.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = h.adj[v].iter().filter(|&&w| placed[w]).count();
                (back, h.adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Searcher<'r> {
    adj: Vec<u64>,
    all: u64,
    earlier: Vec<Vec<usize>>,
    last_neighbor: Vec<usize>,
    degree: Vec<u32>,
    sets: Vec<u64>,
    nbrs: Vec<u64>,
    used: u64,
    budget: Option<u64>,
    nodes: u64,
    exhausted: bool,
    rng: Option<&'r mut ChaCha8Rng>,
    max_set: u32,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

impl Searcher<'_> {
    fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, b| m | self.adj[b]) & !set
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.sets.len() {
            return true;
        }
        let free = self.all & !self.used;
        let remaining = (self.sets.len() - i - 1) as u32;
        if free.count_ones() <= remaining {
            return false;
        }
        let max_size = (free.count_ones() - remaining).min(self.max_set);
        let seeds = match self.earlier[i].first() {
            Some(&j) => self.nbrs[j] & free,
            None => free,
        };
        let mut seed_list: Vec<usize> = bits(seeds).collect();
        if let Some(rng) = self.rng.as_deref_mut() {
            seed_list.shuffle(rng);
        }
        let mut tried = 0u64;
        for r in seed_list {
            let allowed = free & !tried;
            let start = 1u64 << r;
            let cand = self.adj[r] & allowed & !start;
            if self.grow(i, start, cand, 0, allowed, max_size) {
                return true;
            }
            if self.exhausted {
                return false;
            }
            tried |= start;
        }
        false
    }

    /// Visits every connected set containing `set`, extended only through
    /// `cand` and never through `banned`.
    fn grow(&mut self, i: usize, set: u64, cand: u64, banned: u64, allowed: u64, max_size: u32) -> bool {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return false;
        }
        if self.try_set(i, set) {
            return true;
        }
        if self.exhausted || set.count_ones() >= max_size {
            return false;
        }
        let mut cand = cand;
        let mut banned = banned;
        while cand != 0 {
            let v = match self.rng.as_deref_mut() {
                Some(rng) => {
                    let options: Vec<usize> = bits(cand).collect();
                    options[rng.gen_range(0..options.len())]
                }
                None => cand.trailing_zeros() as usize,
            };
            let vb = 1u64 << v;
            cand &= !vb;
            let next_cand = (cand | (self.adj[v] & allowed)) & !banned & !set & !vb;
            if self.grow(i, set | vb, next_cand, banned, allowed, max_size) {
                return true;
            }
            if self.exhausted {
                return false;
            }
            banned |= vb;
        }
        false
    }

    fn try_set(&mut self, i: usize, set: u64) -> bool {
        if self.earlier[i].iter().any(|&j| self.nbrs[j] & set == 0) {
            return false;
        }
        let nbr = self.neighborhood(set);
        if nbr.count_ones() < self.degree[i] {
            return false;
        }
        self.sets[i] = set;
        self.nbrs[i] = nbr;
        self.used |= set;
        let free = self.all & !self.used;
        let feasible = (0..=i).all(|j| self.last_neighbor[j] <= i || self.nbrs[j] & free != 0);
        let found = feasible && self.place(i + 1);
        if !found {
            self.used &= !set;
            self.sets[i] = 0;
            self.nbrs[i] = 0;
        }
        found
    }
}
