//! Property tests for the invariants of each module.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use common::*;
use revkg::annotation::{build_index, Gazetteer, Mention, OccurrenceIndex, Review};
use revkg::eval::{
    ild_diversity, ndcg_at_n, precision_at_n, recall_at_n, split_folds, welch_t_test, FoldData,
    RandomGuess, Rating, RatingDataset, Scale, TopNModel, UserTrain,
};
use revkg::kg::{
    compute_ldsd, discover, map_entities, Direction, Graph, Iri, PropertySpec, Triple,
};
use revkg::recommender::{
    generate_candidates, rank, Candidate, DiscoveryStore, Ranking, RecConfig, Recommender,
    UserProfile,
};

fn triples_strategy(
    max: usize,
    nodes: usize,
    props: usize,
) -> impl Strategy<Value = Vec<RawTriple>> {
    prop::collection::btree_set((0..nodes, 0..props, 0..nodes), 0..=max).prop_map(|set| {
        set.into_iter()
            .map(|(s, p, o)| (format!("n{s}"), format!("p{p}"), format!("n{o}")))
            .collect()
    })
}

/// `(entity, item, count)` entries over items `i*` and entities drawn from
/// items and plain entities `e*`.
fn index_strategy() -> impl Strategy<Value = Vec<(String, String, u32)>> {
    prop::collection::btree_map((0..14usize, 0..6usize), 1..6u32, 0..40).prop_map(|m| {
        m.into_iter()
            .map(|((e, i), c)| {
                let entity = if e < 6 {
                    format!("i{e}")
                } else {
                    format!("e{e}")
                };
                (entity, format!("i{i}"), c)
            })
            .filter(|(e, i, _)| e != i)
            .collect()
    })
}

fn build(entries: &[(String, String, u32)]) -> OccurrenceIndex {
    OccurrenceIndex::from_counts(entries.iter().map(|(e, i, c)| (iri(e), iri(i), *c))).unwrap()
}

fn discoveries_strategy() -> impl Strategy<Value = Vec<(String, String, Option<f64>)>> {
    prop::collection::btree_map(
        (0..14usize, 0..14usize),
        prop::option::of(prop::sample::select(vec![0.25, 0.5, 1.0 / 3.0, 1.0])),
        0..25,
    )
    .prop_map(|m| {
        let name = |k: usize| {
            if k < 6 {
                format!("i{k}")
            } else {
                format!("e{k}")
            }
        };
        m.into_iter()
            .filter(|((d, s), _)| d != s)
            .map(|((d, s), l)| (name(d), name(s), l))
            .collect()
    })
}

fn store_of(recs: &[(String, String, Option<f64>)]) -> DiscoveryStore {
    DiscoveryStore::new(
        recs.iter()
            .map(|(d, s, l)| revkg::kg::DiscoveryRecord::new(iri(d), iri(s), *l).unwrap()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn neighbors_match_triples(ts in triples_strategy(25, 6, 2)) {
        let g = graph_of(&ts);
        prop_assert_eq!(g.len(), ts.len());
        for s in 0..6 {
            for p in 0..2 {
                let (node, prop) = (format!("n{s}"), format!("p{p}"));
                let fwd: BTreeSet<String> = g
                    .neighbors(&iri(&node), &iri(&prop), Direction::Direct)
                    .map(|o| o.as_str()[3..].to_string())
                    .collect();
                let fwd_exp: BTreeSet<String> = ts.iter()
                    .filter(|(a, b, _)| *a == node && *b == prop)
                    .map(|(_, _, o)| o.clone())
                    .collect();
                prop_assert_eq!(fwd, fwd_exp);
                let inv: BTreeSet<String> = g
                    .neighbors(&iri(&node), &iri(&prop), Direction::Inverse)
                    .map(|o| o.as_str()[3..].to_string())
                    .collect();
                let inv_exp: BTreeSet<String> = ts.iter()
                    .filter(|(_, b, o)| *o == node && *b == prop)
                    .map(|(s, _, _)| s.clone())
                    .collect();
                prop_assert_eq!(inv, inv_exp);
            }
        }
    }

    #[test]
    fn ldsd_symmetric_bounded_and_monotone(
        ts in triples_strategy(20, 6, 3),
        a in 0..6usize,
        b in 0..6usize,
        p in 0..3usize,
    ) {
        prop_assume!(a != b);
        let (na, nb) = (iri(&format!("n{a}")), iri(&format!("n{b}")));
        let g = graph_of(&ts);
        let d = compute_ldsd(&g, &na, &nb).unwrap().get();
        prop_assert!(d > 0.0 && d <= 1.0);
        prop_assert_eq!(d, compute_ldsd(&g, &nb, &na).unwrap().get());
        // One more direct link never increases the distance.
        let mut g2 = g.clone();
        g2.insert(Triple::new(na.clone(), iri(&format!("p{p}")), nb.clone()));
        prop_assert!(compute_ldsd(&g2, &na, &nb).unwrap().get() <= d);
    }

    #[test]
    fn discovery_equals_naive_scan(
        ts in triples_strategy(30, 8, 3),
        annotated in prop::collection::btree_set(0..8usize, 0..5),
        specs in prop::collection::vec((0..3usize, any::<bool>()), 0..3),
    ) {
        let g = graph_of(&ts);
        let ann: Vec<Iri> = annotated.iter().map(|k| iri(&format!("n{k}"))).collect();
        let specs: Vec<PropertySpec> = specs
            .iter()
            .map(|(p, direct)| {
                let p = iri(&format!("p{p}"));
                if *direct { PropertySpec::direct(p) } else { PropertySpec::inverse(p) }
            })
            .collect();
        let got: BTreeSet<(Iri, Iri)> = discover(&g, ann.iter(), &specs)
            .into_iter()
            .map(|r| (r.discovered, r.source))
            .collect();
        let mut expected = BTreeSet::new();
        for (s, p, o) in &ts {
            for a in &annotated {
                let a = format!("n{a}");
                for spec in &specs {
                    if spec.property != iri(p) {
                        continue;
                    }
                    let hit = match spec.direction {
                        Direction::Direct if *s == a => Some(o),
                        Direction::Inverse if *o == a => Some(s),
                        _ => None,
                    };
                    if let Some(found) = hit {
                        if *found != a {
                            expected.insert((iri(found), iri(&a)));
                        }
                    }
                }
            }
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn mapping_keeps_only_unambiguous_and_is_idempotent(
        raw in prop::collection::vec((0..6usize, 0..6usize), 0..20),
    ) {
        let pairs: Vec<(Iri, Iri)> = raw
            .iter()
            .map(|(s, t)| (iri(&format!("s{s}")), iri(&format!("t{t}"))))
            .collect();
        let table = map_entities(pairs.clone());
        for (s, t) in table.iter() {
            let targets: BTreeSet<&Iri> = pairs.iter().filter(|(a, _)| a == s).map(|(_, b)| b).collect();
            prop_assert_eq!(targets.len(), 1);
            prop_assert!(targets.contains(t));
        }
        let sources: BTreeSet<&Iri> = pairs.iter().map(|(s, _)| s).collect();
        for s in sources {
            let n = pairs.iter().filter(|(a, _)| a == s).map(|(_, b)| b).collect::<BTreeSet<_>>().len();
            prop_assert_eq!(table.get(s).is_some(), n == 1);
        }
        let again = map_entities(table.iter().map(|(s, t)| (s.clone(), t.clone())));
        prop_assert_eq!(again, table);
    }

    #[test]
    fn index_counts_reviews_and_ignores_order(
        mentions in prop::collection::vec((0..8usize, 0..5usize), 0..40),
        seed in any::<u64>(),
    ) {
        // Ten reviews spread over three items.
        let reviews: Vec<Review> = (0..10)
            .map(|r| Review {
                review_id: format!("r{r}"),
                item: iri(&format!("i{}", r % 3)),
                text: String::new(),
                entities: None,
            })
            .collect();
        let ms: Vec<Mention> = mentions
            .iter()
            .map(|(r, e)| Mention { entity: iri(&format!("e{e}")), review_id: format!("r{r}") })
            .collect();
        let idx = build_index(&reviews, &ms).unwrap();
        let mut shuffled = ms.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut rng(seed));
        prop_assert_eq!(&build_index(&reviews, &shuffled).unwrap(), &idx);
        for item in 0..3 {
            let item = iri(&format!("i{item}"));
            let mut max = 0;
            for e in 0..5 {
                let e = iri(&format!("e{e}"));
                let distinct: BTreeSet<&str> = ms
                    .iter()
                    .filter(|m| m.entity == e && reviews.iter().any(|r| r.review_id == m.review_id && r.item == item))
                    .map(|m| m.review_id.as_str())
                    .collect();
                prop_assert_eq!(idx.count(&e, &item), distinct.len() as u32);
                max = max.max(distinct.len() as u32);
            }
            prop_assert_eq!(idx.max_for_item(&item), max);
        }
    }

    #[test]
    fn gazetteer_spans_are_ordered_and_disjoint(
        words in prop::collection::vec(prop::sample::select(vec!["new", "york", "city", "NEW", "the", "matrix", "x", "-", ","]), 0..30),
    ) {
        let g = Gazetteer::new([
            ("New York", iri("ny")),
            ("New York City", iri("nyc")),
            ("York", iri("york")),
            ("The Matrix", iri("matrix")),
            ("city", iri("city")),
        ])
        .unwrap();
        let text = words.join(" ");
        let spans = g.scan(&text);
        for w in spans.windows(2) {
            prop_assert!(w[0].span.end <= w[1].span.start);
        }
        for m in &spans {
            let s = &text[m.span.clone()];
            prop_assert!(!s.starts_with(' ') && !s.ends_with(' '));
        }
    }

    #[test]
    fn rankers_match_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cands = random_candidates(&mut r, 20);
        let seed_iri = iri("seed");
        let graph = Graph::new();
        let cache = revkg::kg::LdsdCache::new();
        for ranking in [Ranking::R1, Ranking::R2, Ranking::R3] {
            let cfg = random_config(&mut r, ranking);
            let got = rank(&cands, &seed_iri, &cfg, &graph, &cache).unwrap();
            // An empty graph puts every pair at distance 1.
            let exp = selection_order(score_oracle(&cands, &cfg, |c| c.ldsd_to_initial.unwrap_or(1.0)));
            prop_assert_eq!(got.entries.len(), exp.len());
            for ((e1, s1), (e2, s2)) in got.entries.iter().zip(&exp) {
                prop_assert_eq!(e1, e2);
                prop_assert!((s1 - s2).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn candidate_sets_shrink_with_threshold(
        entries in index_strategy(),
        recs in discoveries_strategy(),
        t1 in 0.0..=1.0f64,
        t2 in 0.0..=1.0f64,
        item in 0..6usize,
        discovered in any::<bool>(),
    ) {
        let idx = build(&entries);
        let store = store_of(&recs);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let item = iri(&format!("i{item}"));
        let set = |t: f64| -> BTreeSet<Iri> {
            let cfg = RecConfig::new("t", Ranking::R1, discovered).with_threshold(t);
            generate_candidates(&item, &idx, &store, &cfg).into_iter().map(|c| c.entity).collect()
        };
        let (a, b) = (set(lo), set(hi));
        prop_assert!(b.is_subset(&a));
        prop_assert!(!a.contains(&item));
    }

    #[test]
    fn r3_order_invariant_under_weight_scaling(
        seed in any::<u64>(),
        exp in -3i32..=3,
    ) {
        let mut r = rng(seed);
        let cands: Vec<Candidate> = random_candidates(&mut r, 20);
        let cfg = random_config(&mut r, Ranking::R3);
        // Power-of-two factors scale every score exactly.
        let c = 2f64.powi(exp);
        let scaled = cfg.clone().with_r3_weights(cfg.eta.unwrap() * c, cfg.kappa.unwrap() * c);
        let graph = Graph::new();
        let cache = revkg::kg::LdsdCache::new();
        let a = rank(&cands, &iri("seed"), &cfg, &graph, &cache).unwrap();
        let b = rank(&cands, &iri("seed"), &scaled, &graph, &cache).unwrap();
        let ia: Vec<&Iri> = a.items().collect();
        let ib: Vec<&Iri> = b.items().collect();
        prop_assert_eq!(ia, ib);
    }

    #[test]
    fn user_lists_exclude_rated(
        entries in index_strategy(),
        recs in discoveries_strategy(),
        liked in prop::collection::btree_set(0..6usize, 0..4),
        extra in prop::collection::btree_set(0..14usize, 0..5),
        row in 0..8usize,
    ) {
        let idx = build(&entries);
        let store = store_of(&recs);
        let graph = Graph::new();
        let rec = Recommender::new(&idx, &store, &graph);
        let liked: BTreeSet<Iri> = liked.iter().map(|k| iri(&format!("i{k}"))).collect();
        let mut rated = liked.clone();
        rated.extend(extra.iter().map(|k| iri(&if *k < 6 { format!("i{k}") } else { format!("e{k}") })));
        let profile = UserProfile::new("u", liked, rated.clone()).unwrap();
        let mut cfg = RecConfig::standard_grid().remove(row);
        if cfg.needs_source_ldsd() && !store.has_ldsd() {
            cfg.use_discovered = false;
        }
        match rec.recommend_for_user(&profile, 10, &cfg) {
            Ok(list) => {
                prop_assert!(list.len() <= 10);
                for e in list.items() {
                    prop_assert!(!rated.contains(e));
                }
            }
            // Some discovered candidates lack a source distance.
            Err(revkg::recommender::RecError::MissingLdsd(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn metric_identities(
        list in prop::sample::subsequence((0..12usize).collect::<Vec<_>>(), 0..=12).prop_shuffle(),
        rel in prop::collection::btree_set(0..12usize, 0..8),
        n in 1..15usize,
    ) {
        let l: Vec<Iri> = list.iter().map(|k| iri(&format!("x{k}"))).collect();
        let relevant: BTreeSet<Iri> = rel.iter().map(|k| iri(&format!("x{k}"))).collect();
        let p = precision_at_n(&l, &relevant, n);
        let r = recall_at_n(&l, &relevant, n);
        let nd = ndcg_at_n(&l, &relevant, n);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((0.0..=1.0).contains(&r));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&nd));
        if !relevant.is_empty() {
            prop_assert!((p * n as f64 - r * relevant.len() as f64).abs() < 1e-9);
        }
        // The relevant items first, in any order, gives a perfect nDCG.
        let mut ideal: Vec<Iri> = relevant.iter().cloned().collect();
        ideal.extend(l.iter().filter(|i| !relevant.contains(*i)).cloned());
        if !relevant.is_empty() {
            prop_assert!((ndcg_at_n(&ideal, &relevant, n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ild_ignores_list_order(
        list in prop::sample::subsequence((0..10usize).collect::<Vec<_>>(), 0..=10),
        feats in prop::collection::vec(prop::collection::btree_set(0..6usize, 0..4), 10),
        seed in any::<u64>(),
    ) {
        let features: BTreeMap<Iri, BTreeSet<Iri>> = feats
            .iter()
            .enumerate()
            .map(|(i, f)| (iri(&format!("x{i}")), f.iter().map(|k| iri(&format!("f{k}"))).collect()))
            .collect();
        let l: Vec<Iri> = list.iter().map(|k| iri(&format!("x{k}"))).collect();
        let mut shuffled = l.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut rng(seed));
        let (a, b) = (ild_diversity(&l, &features), ild_diversity(&shuffled, &features));
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&a));
    }

    #[test]
    fn folds_partition_each_user(
        per_user in prop::collection::vec(prop::collection::btree_set(0..30usize, 1..20), 1..8),
        k in 2..7usize,
        seed in any::<u64>(),
    ) {
        let records: Vec<Rating> = per_user
            .iter()
            .enumerate()
            .flat_map(|(u, items)| items.iter().map(move |i| Rating {
                user: format!("u{u}"),
                item: iri(&format!("i{i}")),
                rating: 4.0,
            }))
            .collect();
        let ds = RatingDataset::new(records, Scale::STARS_5).unwrap();
        let plan = split_folds(&ds, k, seed).unwrap();
        prop_assert_eq!(plan.len(), ds.len());
        for (u, items) in per_user.iter().enumerate() {
            let mut sizes = vec![0usize; k];
            for i in items {
                let f = plan.fold_of(&format!("u{u}"), &iri(&format!("i{i}"))).unwrap();
                sizes[f] += 1;
            }
            let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
            prop_assert!(hi - lo <= 1);
        }
        let again = split_folds(&ds, k, seed).unwrap();
        for r in ds.records() {
            prop_assert_eq!(plan.fold_of(&r.user, &r.item), again.fold_of(&r.user, &r.item));
        }
    }

    #[test]
    fn random_guess_is_reproducible(
        seed in any::<u64>(),
        rated in prop::collection::btree_set(0..15usize, 0..8),
    ) {
        let user = UserTrain {
            user_id: "u".into(),
            rated: rated.iter().map(|k| iri(&format!("x{k}"))).collect(),
            liked: BTreeSet::new(),
        };
        let fold = FoldData {
            fold: 2,
            users: [("u".to_string(), user.clone())].into_iter().collect(),
            universe: (0..15).map(|k| iri(&format!("x{k}"))).collect(),
            popularity: BTreeMap::new(),
        };
        let m1 = RandomGuess::new(seed);
        let m2 = RandomGuess::new(seed);
        let a = m1.fit(&fold).unwrap().top_n(&user, 10).unwrap();
        let b = m2.fit(&fold).unwrap().top_n(&user, 10).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), (15 - rated.len()).min(10));
        prop_assert!(a.iter().all(|i| !user.rated.contains(i)));
    }

    #[test]
    fn welch_antisymmetric(
        a in prop::collection::vec(-10.0..10.0f64, 2..20),
        b in prop::collection::vec(-10.0..10.0f64, 2..20),
    ) {
        let ab = welch_t_test(&a, &b).unwrap();
        let ba = welch_t_test(&b, &a).unwrap();
        prop_assert!((ab.t + ba.t).abs() < 1e-12);
        prop_assert!((ab.df - ba.df).abs() < 1e-9);
        prop_assert!((ab.p_value - ba.p_value).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab.p_value));
    }
}
