//! Oracles and fixture generators shared by the integration tests.
//!
//! The oracles recompute quantities from their definitions over plain data
//! (triple lists, candidate vectors) without touching the library's indexes.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revkg::kg::{Graph, Iri, Triple};
use revkg::recommender::{Candidate, Origin, Ranking, RecConfig};

pub fn iri(s: &str) -> Iri {
    Iri::new(&format!("ex:{s}")).unwrap()
}

pub fn fixture_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type RawTriple = (String, String, String);

pub fn graph_of(triples: &[RawTriple]) -> Graph {
    triples
        .iter()
        .map(|(s, p, o)| Triple::new(iri(s), iri(p), iri(o)))
        .collect()
}

/// Up to `max` random triples over small node and property vocabularies, so
/// shared neighbours are common. Duplicates are removed.
pub fn random_triples(r: &mut impl Rng, max: usize, nodes: usize, props: usize) -> Vec<RawTriple> {
    let n = r.random_range(0..=max);
    let set: BTreeSet<RawTriple> = (0..n)
        .map(|_| {
            (
                format!("n{}", r.random_range(0..nodes)),
                format!("p{}", r.random_range(0..props)),
                format!("n{}", r.random_range(0..nodes)),
            )
        })
        .collect();
    set.into_iter().collect()
}

/// LDSD recounted straight from a triple list: direct links both ways plus
/// shared `(property, subject)` and `(property, object)` pairs.
pub fn ldsd_oracle(triples: &[RawTriple], a: &str, b: &str) -> f64 {
    let mut links = 0usize;
    for (s, _, o) in triples {
        if (s == a && o == b) || (s == b && o == a) {
            links += 1;
        }
    }
    let mut incoming = BTreeSet::new();
    let mut outgoing = BTreeSet::new();
    for (s1, p1, o1) in triples {
        for (s2, p2, o2) in triples {
            if p1 != p2 {
                continue;
            }
            if o1 == a && o2 == b && s1 == s2 {
                incoming.insert((p1, s1));
            }
            if s1 == a && s2 == b && o1 == o2 {
                outgoing.insert((p1, o1));
            }
        }
    }
    1.0 / (1.0 + (links + incoming.len() + outgoing.len()) as f64)
}

/// Scores from the ranking equations evaluated term by term. `to_initial`
/// supplies the distance to the seed for R3.
pub fn score_oracle(
    cands: &[Candidate],
    cfg: &RecConfig,
    to_initial: impl Fn(&Candidate) -> f64,
) -> Vec<(Iri, f64)> {
    let mut max = 0u32;
    for c in cands {
        if c.occurrence > max {
            max = c.occurrence;
        }
    }
    cands
        .iter()
        .map(|c| {
            let discovered = c.origin == Origin::Discovered;
            let alpha = if discovered { cfg.alpha } else { 1.0 };
            let r1 = if max == 0 {
                0.0
            } else {
                alpha * c.occurrence as f64 / max as f64
            };
            let (beta, gamma) = if discovered { (0.5, 0.5) } else { (1.0, 0.0) };
            let r2 = if discovered {
                beta * r1 + gamma * (1.0 - c.ldsd_to_source.unwrap())
            } else {
                r1
            };
            let score = match cfg.ranking {
                Ranking::R1 => r1,
                Ranking::R2 => r2,
                Ranking::R3 => cfg.eta.unwrap() * r2 + cfg.kappa.unwrap() * (1.0 - to_initial(c)),
            };
            (c.entity.clone(), score)
        })
        .collect()
}

/// Order by repeated selection of the best remaining entry: highest score,
/// then smallest IRI.
pub fn selection_order(mut scored: Vec<(Iri, f64)>) -> Vec<(Iri, f64)> {
    let mut out = Vec::with_capacity(scored.len());
    while !scored.is_empty() {
        let mut best = 0;
        for i in 1..scored.len() {
            let (e, s) = &scored[i];
            let (be, bs) = &scored[best];
            if s > bs || (s == bs && e < be) {
                best = i;
            }
        }
        out.push(scored.swap_remove(best));
    }
    out
}

/// A random candidate set for the ranking oracle. Discovered candidates get a
/// source distance; about half also carry a precomputed distance to the seed,
/// the rest leave it to the graph.
pub fn random_candidates(r: &mut impl Rng, max: usize) -> Vec<Candidate> {
    let n = r.random_range(0..=max);
    let mut names: Vec<usize> = (0..40).collect();
    names.shuffle(r);
    let mut out: Vec<Candidate> = names[..n]
        .iter()
        .map(|k| {
            let entity = iri(&format!("n{k}"));
            // Small occurrence ranges make score ties frequent.
            let occ = r.random_range(1..=6);
            if r.random_bool(0.5) {
                Candidate::annotated(entity, occ)
            } else {
                let l = [0.5, 1.0 / 3.0, 0.25, 1.0][r.random_range(0..4)];
                let mut c = Candidate::discovered(entity, occ, iri("src"), Some(l));
                if r.random_bool(0.5) {
                    c.ldsd_to_initial = Some([0.5, 0.2, 1.0][r.random_range(0..3)]);
                }
                c
            }
        })
        .collect();
    out.sort_by(|a, b| a.entity.cmp(&b.entity));
    out
}

pub fn random_config(r: &mut impl Rng, ranking: Ranking) -> RecConfig {
    let alpha = [0.5, 1.0, 0.25, 0.3][r.random_range(0..4)];
    let mut c = RecConfig::new("rand", ranking, true);
    c.alpha = alpha;
    if ranking == Ranking::R3 {
        let (eta, kappa) =
            [(0.5, 0.5), (0.75, 0.25), (0.25, 0.75), (0.6, 0.3)][r.random_range(0..4)];
        c = c.with_r3_weights(eta, kappa);
    }
    c
}
