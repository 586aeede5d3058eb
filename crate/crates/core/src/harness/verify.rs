//! Property suites for the lemma-level constructions, run as one command.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::minors::minor_by_operations;
use super::{trial_seed, ExperimentConfig};
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, is_minor_brute, Multigraph, VertexId};
use crate::gridminor::{lemma3_distance_minor, make_partial_triangulation, subdivided_grid, GridGraph};
use crate::minor::{
    compose_models, grid_transfer, model_from_witness, random_c_contraction, threaded_path, transfer_side,
    validate_distance_minor, validate_minor_model, witness_from_model, Image, TransferOptions,
};
use crate::treewidth::{lift_decomposition, treewidth_exact, validate_decomposition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub lemma: u8,
    pub cases: usize,
    pub violations: usize,
    /// The first few counterexamples.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn collect(lemma: u8, outcomes: Vec<Option<String>>, notes: Vec<String>) -> Self {
        let cases = outcomes.len();
        let failures: Vec<String> = outcomes.into_iter().flatten().collect();
        VerifyReport {
            lemma,
            cases,
            violations: failures.len(),
            failures: failures.into_iter().take(20).collect(),
            notes,
        }
    }
}

pub fn verify(lemma: u8, config: &ExperimentConfig) -> Result<VerifyReport> {
    match lemma {
        1 => Ok(verify_minor_equivalence(config)),
        3 => Ok(verify_distance_minors(config)),
        4 => Ok(verify_contraction_widths(config)),
        5 => Ok(verify_threading(config)),
        6 => Ok(verify_composition(config)),
        7 => Ok(verify_transfer(config)),
        _ => Err(Error::invalid(format!(
            "no suite for lemma {lemma}; choose 1, 3, 4, 5, 6 or 7"
        ))),
    }
}

pub(crate) fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Multigraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Multigraph::from_edges(n, &edges).expect("valid edges")
}

/// Simple graphs on `n` vertices, one per isomorphism class.
pub(crate) fn graph_classes(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut buckets: BTreeMap<(usize, Vec<usize>), Vec<Multigraph>> = BTreeMap::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let g = Multigraph::from_edges(n, &edges).expect("valid edges");
        let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        let bucket = buckets.entry((edges.len(), degrees)).or_default();
        if !bucket.iter().any(|h| are_isomorphic(h, &g)) {
            bucket.push(g.clone());
            out.push(g);
        }
    }
    out
}

/// Checks one pair both ways: the branch-set oracle against the search over
/// deletions and contractions, with every model validated and every oracle
/// witness round-tripped through the model form.
fn minor_pair(h: &Multigraph, g: &Multigraph, cap: usize) -> Option<String> {
    let describe = || format!("H = {:?}, G = {:?}", edge_list(h), edge_list(g));
    let oracle = match is_minor_brute(h, g, cap) {
        Ok(w) => w,
        Err(e) => return Some(format!("{}: oracle failed: {e}", describe())),
    };
    let model = match minor_by_operations(h, g) {
        Ok(m) => m,
        Err(e) => return Some(format!("{}: model search failed: {e}", describe())),
    };
    if let Some(m) = &model {
        if let Err(v) = validate_minor_model(m) {
            return Some(format!("{}: model search produced an invalid model: {v}", describe()));
        }
    }
    if oracle.is_some() != model.is_some() {
        return Some(format!(
            "{}: oracle says {}, model search says {}",
            describe(),
            oracle.is_some(),
            model.is_some()
        ));
    }
    if let Some(w) = oracle {
        let round = model_from_witness(h, g, &w).and_then(|m| {
            validate_minor_model(&m).map_err(Error::InvalidModel)?;
            witness_from_model(&m)
        });
        match round {
            Ok(back) if back == w => {}
            Ok(_) => return Some(format!("{}: witness changed on the round trip", describe())),
            Err(e) => return Some(format!("{}: witness round trip failed: {e}", describe())),
        }
    }
    None
}

fn edge_list(g: &Multigraph) -> (usize, Vec<(VertexId, VertexId)>) {
    (g.vertex_count(), g.edges().map(|(_, u, v)| (u, v)).collect())
}

fn verify_minor_equivalence(config: &ExperimentConfig) -> VerifyReport {
    let hosts: Vec<Multigraph> = (1..=6).flat_map(graph_classes).collect();
    let patterns: Vec<Multigraph> = (1..=4).flat_map(graph_classes).collect();
    let cap = config.limits.minor_brute.max(8);
    let mut outcomes: Vec<Option<String>> = hosts
        .par_iter()
        .flat_map_iter(|g| patterns.iter().map(move |h| minor_pair(h, g, cap)))
        .collect();
    let exhaustive = outcomes.len();
    let random: Vec<Option<String>> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, i));
            let n = rng.gen_range(1..=8);
            let g = random_graph(n, rng.gen_range(0.2..0.8), &mut rng);
            let hn = rng.gen_range(1..=n.min(5));
            let h = random_graph(hn, rng.gen_range(0.2..0.9), &mut rng);
            minor_pair(&h, &g, cap)
        })
        .collect();
    outcomes.extend(random);
    let notes = vec![format!(
        "{exhaustive} exhaustive pairs over {} hosts and {} patterns, {} random pairs",
        hosts.len(),
        patterns.len(),
        config.trials
    )];
    VerifyReport::collect(1, outcomes, notes)
}

fn verify_distance_minors(config: &ExperimentConfig) -> VerifyReport {
    let cases: Vec<(usize, usize)> = (2..=5).flat_map(|k| (0..config.trials).map(move |i| (k, i))).collect();
    let outcomes = cases
        .par_iter()
        .map(|&(k, i)| {
            let seed = trial_seed(config.seed, i);
            let run = make_partial_triangulation(4 * k, seed).and_then(|p| lemma3_distance_minor(&p));
            match run.and_then(|m| validate_distance_minor(&m)) {
                Ok(Ok(())) => None,
                Ok(Err(v)) => Some(format!("k = {k}, seed {seed}: {v}")),
                Err(e) => Some(format!("k = {k}, seed {seed}: {e}")),
            }
        })
        .collect();
    VerifyReport::collect(3, outcomes, vec!["k in 2..=5 on 4k x 4k triangulated grids".into()])
}

fn verify_contraction_widths(config: &ExperimentConfig) -> VerifyReport {
    let cap = config.limits.tw_exact.max(12);
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(config.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=12);
            let g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
            let c = rng.gen_range(1..=3);
            let mut run = || -> Result<Option<String>> {
                let psi = random_c_contraction(&g, c, &mut rng)?;
                let (tw_g, _) = treewidth_exact(&g, cap)?;
                let (tw_h, d_h) = treewidth_exact(psi.model().target(), cap)?;
                let bound = (c + 1) * (tw_h + 1) - 1;
                if tw_g > bound {
                    return Ok(Some(format!("seed {seed}: tw(G) = {tw_g} > {bound}")));
                }
                let lifted = lift_decomposition(&d_h, &psi)?;
                if let Err(v) = validate_decomposition(&g, &lifted) {
                    return Ok(Some(format!(
                        "seed {seed}: lifted decomposition invalid: {}",
                        v.message
                    )));
                }
                if lifted.width() > bound {
                    return Ok(Some(format!("seed {seed}: lifted width {} > {bound}", lifted.width())));
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(format!("seed {seed}: {e}")))
        })
        .collect();
    VerifyReport::collect(4, outcomes, vec!["n <= 12, c in 1..=3".into()])
}

/// Parts are random trees with extra chords, consecutive parts are linked,
/// and a few edges join arbitrary vertices.
fn threading_instance(rng: &mut ChaCha8Rng) -> (Multigraph, Vec<BTreeSet<VertexId>>) {
    let r = rng.gen_range(1..=6);
    let mut g = Multigraph::new();
    let mut parts = Vec::new();
    for _ in 0..r {
        let size = rng.gen_range(1..=4);
        let first = g.next_vertex_id();
        let part: Vec<VertexId> = (first..first + size).collect();
        for (i, &v) in part.iter().enumerate() {
            g.add_vertex(v);
            if i > 0 {
                let parent = part[rng.gen_range(0..i)];
                g.push_edge(parent, v).expect("vertices exist");
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            let (a, b) = (part[rng.gen_range(0..size)], part[rng.gen_range(0..size)]);
            if a != b {
                g.push_edge(a, b).expect("vertices exist");
            }
        }
        parts.push(part);
    }
    for i in 1..r {
        for _ in 0..rng.gen_range(1..=2) {
            let a = parts[i - 1][rng.gen_range(0..parts[i - 1].len())];
            let b = parts[i][rng.gen_range(0..parts[i].len())];
            g.push_edge(a, b).expect("vertices exist");
        }
    }
    let n = g.vertex_count();
    for _ in 0..rng.gen_range(0..=2) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            g.push_edge(a, b).expect("vertices exist");
        }
    }
    (g, parts.into_iter().map(|p| p.into_iter().collect()).collect())
}

fn verify_threading(config: &ExperimentConfig) -> VerifyReport {
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(config.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, parts) = threading_instance(&mut rng);
            let r = parts.len();
            let pick = |set: &BTreeSet<VertexId>, rng: &mut ChaCha8Rng| {
                *set.iter().nth(rng.gen_range(0..set.len())).expect("nonempty")
            };
            let s = pick(&parts[0], &mut rng);
            let t = pick(&parts[r - 1], &mut rng);
            let alpha = rng.gen_range(1..=r);
            let beta = rng.gen_range(alpha..=r);
            let p = match threaded_path(&g, &parts, s, t, alpha, beta) {
                Ok(p) => p,
                Err(e) => return Some(format!("seed {seed}: {e}")),
            };
            let owner: BTreeMap<VertexId, usize> = parts
                .iter()
                .enumerate()
                .flat_map(|(i, part)| part.iter().map(move |&v| (v, i + 1)))
                .collect();
            let fail = |what: &str| Some(format!("seed {seed}, alpha {alpha}, beta {beta}: {what}"));
            if p.vertices.first() != Some(&s) || p.vertices.last() != Some(&t) || p.vertices.len() != p.edges.len() + 1
            {
                return fail("path does not run from s to t");
            }
            for (i, &e) in p.edges.iter().enumerate() {
                let (a, b) = g.endpoints(e).expect("edge");
                if (a, b) != (p.vertices[i], p.vertices[i + 1]) && (b, a) != (p.vertices[i], p.vertices[i + 1]) {
                    return fail("edge does not join consecutive path vertices");
                }
            }
            if p.vertices.iter().collect::<BTreeSet<_>>().len() != p.vertices.len() {
                return fail("path repeats a vertex");
            }
            let visits: Vec<usize> = p.vertices.iter().map(|v| owner[v]).collect();
            if visits.windows(2).any(|w| w[1] != w[0] && w[1] != w[0] + 1) {
                return fail("parts are not crossed in order");
            }
            let bound = (beta - alpha) + usize::from(alpha > 1) + usize::from(beta < r);
            if p.bound != bound || p.part.len() < bound {
                return fail("marked stretch is too short");
            }
            for q in p.part.clone() {
                let (a, b) = (owner[&p.vertices[q]], owner[&p.vertices[q + 1]]);
                if a == b && !(alpha..=beta).contains(&a) {
                    return fail("marked stretch uses an edge inside a part outside the range");
                }
            }
            None
        })
        .collect();
    VerifyReport::collect(5, outcomes, vec!["up to 6 parts of up to 4 vertices".into()])
}

fn verify_composition(config: &ExperimentConfig) -> VerifyReport {
    let cap = config.limits.minor_brute.max(9);
    let results: Vec<(Option<String>, bool)> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(config.seed, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(3..=9);
            let a = random_graph(n, rng.gen_range(0.25..0.6), &mut rng);
            let h = random_graph(rng.gen_range(2..=4), rng.gen_range(0.3..0.9), &mut rng);
            let c = rng.gen_range(1..=2);
            let mut run = || -> Result<(Option<String>, bool)> {
                let Some(w) = is_minor_brute(&h, &a, cap)? else {
                    return Ok((None, false));
                };
                let psi2 = model_from_witness(&h, &a, &w)?;
                let psi1 = random_c_contraction(&a, c, &mut rng)?;
                match compose_models(psi1.base(), &psi2) {
                    Ok(phi) => {
                        if let Err(v) = validate_minor_model(&phi) {
                            return Ok((Some(format!("seed {seed}: composed model invalid: {v}")), true));
                        }
                        let b = psi1.model().target();
                        if b.vertex_count() <= cap && is_minor_brute(&h, b, cap)?.is_none() {
                            return Ok((Some(format!("seed {seed}: oracle rejects the composed minor")), true));
                        }
                        // Edge images must come from the second model through the contraction.
                        for (f, _, _) in h.edges() {
                            let mut hits = phi.preimage(Image::Edge(f)).into_iter();
                            let (Some(be), None) = (hits.next(), hits.next()) else {
                                return Ok((Some(format!("seed {seed}: edge {f} lost its unique preimage")), true));
                            };
                            let from = psi1.model().preimage(Image::Edge(be));
                            if !from.iter().any(|x| psi2.image(*x) == Some(Image::Edge(f))) {
                                return Ok((Some(format!("seed {seed}: edge {f} is not carried through")), true));
                            }
                        }
                        Ok((None, true))
                    }
                    Err(Error::Composition(_)) => Ok((None, false)),
                    Err(e) => Ok((Some(format!("seed {seed}: {e}")), false)),
                }
            };
            run().unwrap_or_else(|e| (Some(format!("seed {seed}: {e}")), false))
        })
        .collect();
    let composed = results.iter().filter(|r| r.1).count();
    let notes = vec![format!(
        "{composed} of {} instances composed; the rest had no minor or failed the composition hypotheses",
        results.len()
    )];
    VerifyReport::collect(6, results.into_iter().map(|r| r.0).collect(), notes)
}

/// The `(k, c)` pairs and spacing options of the transfer suite.
pub(crate) fn transfer_cases() -> Vec<(usize, usize, bool)> {
    let mut cases = Vec::new();
    for (c, ks) in [(1, vec![3, 5, 9]), (2, vec![5, 9, 13]), (5, vec![11, 21])] {
        for k in ks {
            cases.push((k, c, false));
            if c % 2 == 1 {
                cases.push((k, c, true));
            }
        }
    }
    cases
}

fn verify_transfer(config: &ExperimentConfig) -> VerifyReport {
    let trials = config.trials.clamp(1, 5);
    let cases: Vec<(usize, usize, bool, usize)> = transfer_cases()
        .into_iter()
        .flat_map(|(k, c, s)| (0..trials).map(move |i| (k, c, s, i)))
        .collect();
    let cap = config.limits.minor_brute;
    let results: Vec<(Option<String>, bool)> = cases
        .par_iter()
        .map(|&(k, c, sharpen_odd, i)| {
            let seed = trial_seed(config.seed, i);
            let label = format!("k = {k}, c = {c}, sharpened {sharpen_odd}, seed {seed}");
            let options = TransferOptions {
                sharpen_odd,
                ..TransferOptions::default()
            };
            let run = || -> Result<(Option<String>, bool)> {
                let (g, phi) = subdivided_grid(k, c, seed)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let sigma = random_c_contraction(&g, c, &mut rng)?;
                let t = grid_transfer(&sigma, phi.model(), options)?;
                if let Err(v) = validate_minor_model(&t.model) {
                    return Ok((Some(format!("{label}: {v}")), false));
                }
                let expected = transfer_side(k, c, &options);
                if t.k_prime != expected || t.model.target() != GridGraph::new(expected)?.graph() {
                    return Ok((
                        Some(format!("{label}: side {} instead of {expected}", t.k_prime)),
                        false,
                    ));
                }
                if (k, c, sharpen_odd) == (21, 5, true) && t.k_prime != 3 {
                    return Ok((Some(format!("{label}: side {} instead of 3", t.k_prime)), false));
                }
                let h = t.model.source().base();
                if h.vertex_count() <= cap {
                    if is_minor_brute(t.model.target(), h, cap)?.is_none() {
                        return Ok((
                            Some(format!("{label}: oracle finds no grid of side {}", t.k_prime)),
                            true,
                        ));
                    }
                    return Ok((None, true));
                }
                Ok((None, false))
            };
            run().unwrap_or_else(|e| (Some(format!("{label}: {e}")), false))
        })
        .collect();
    let confirmed = results.iter().filter(|r| r.1).count();
    let notes = vec![format!(
        "{confirmed} of {} transferred grids also confirmed by the oracle",
        results.len()
    )];
    VerifyReport::collect(7, results.into_iter().map(|r| r.0).collect(), notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graph_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn small_suites_pass() {
        let config = ExperimentConfig {
            trials: 20,
            seed: 3,
            ..ExperimentConfig::default()
        };
        for lemma in [3, 4, 5, 6] {
            let r = verify(lemma, &config).unwrap();
            assert!(r.passed(), "lemma {lemma}: {:?}", r.failures);
            assert_eq!(r.cases, if lemma == 3 { 80 } else { 20 });
        }
        assert!(verify(2, &config).is_err());
    }
}
