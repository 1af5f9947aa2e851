use proptest::prelude::*;

use citenorm::fractional::{fractional_score, total};
use citenorm::indicators::{mean_of_ratios, ratio_of_means};
use citenorm::stats::{
    homogeneous_subsets, kruskal_wallis, mid_ranks, one_way_anova, pearson, posthoc, spearman,
    welch_anova, Distribution, PosthocMethod,
};
use citenorm::{
    read_corpus, unit_fractional_scores, write_corpus, CitationEdge, Corpus, Publication, Unit,
};

/// A corpus of `cited` papers and citing papers whose references all resolve.
fn corpus_strategy() -> impl Strategy<Value = Corpus> {
    (
        2usize..12,
        prop::collection::vec((1u32..5, any::<u64>()), 1..25),
    )
        .prop_map(|(n_cited, citing)| {
            let mut pubs: Vec<Publication> = (0..n_cited)
                .map(|i| {
                    Publication::new(format!("p{i}"), 2000 + i as i32 % 3, "J", 1)
                        .with_fields(["F"])
                })
                .collect();
            let mut edges = Vec::new();
            for (j, (refs, seed)) in citing.iter().enumerate() {
                let refs = (*refs as usize).min(n_cited);
                let start = (*seed as usize) % n_cited;
                for r in 0..refs {
                    let target = (start + r) % n_cited;
                    edges.push(CitationEdge::new(
                        format!("c{j}"),
                        format!("p{target}"),
                        2005,
                    ));
                }
                pubs.push(Publication::new(format!("c{j}"), 2005, "K", refs as u32));
            }
            let pubs = pubs
                .into_iter()
                .map(|p| {
                    let n = edges.iter().filter(|e| e.cited == p.id).count() as u64;
                    p.with_citations(n)
                })
                .collect();
            let unit = Unit::new("U", "cited", (0..n_cited).map(|i| format!("p{i}")));
            Corpus::validated(pubs, edges, vec![unit]).expect("generated corpus is valid")
        })
}

fn positive_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..100.0, len)
}

fn groups_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-50.0f64..50.0, 2..10), 2..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corpus_round_trips(corpus in corpus_strategy()) {
        let mut buf = Vec::new();
        write_corpus(&corpus, &mut buf).unwrap();
        let back = read_corpus(buf.as_slice(), "mem").unwrap();
        prop_assert_eq!(back, corpus);
    }

    #[test]
    fn fractional_scores_are_bounded_by_counts(corpus in corpus_strategy()) {
        let unit = &corpus.units()[0];
        for s in unit_fractional_scores(&corpus, unit).unwrap() {
            let c = corpus.citation_count(&s.publication).unwrap() as f64;
            prop_assert!(s.c_f >= 0.0 && s.c_f <= c + 1e-12);
            prop_assert_eq!(s.c_f == 0.0, c == 0.0);
        }
    }

    #[test]
    fn cited_scores_sum_to_citing_count(corpus in corpus_strategy()) {
        let scores = unit_fractional_scores(&corpus, &corpus.units()[0]).unwrap();
        let citing = corpus.publications().iter().filter(|p| p.id.starts_with('c')).count();
        prop_assert!((total(&scores) - citing as f64).abs() < 1e-9);
    }

    #[test]
    fn adding_a_reference_lowers_every_weight(corpus in corpus_strategy()) {
        // a citing paper that declares one more reference than it has edges
        let pubs: Vec<Publication> = corpus
            .publications()
            .iter()
            .cloned()
            .map(|mut p| {
                if p.id.starts_with('c') {
                    p.n_refs += 1;
                }
                p
            })
            .collect();
        let heavier = Corpus::new(pubs, corpus.edges().to_vec(), corpus.units().to_vec());
        for p in &corpus.units()[0].pubs {
            let before = fractional_score(&corpus, p).unwrap().c_f;
            let after = fractional_score(&heavier, p).unwrap().c_f;
            prop_assert!(after <= before);
            prop_assert_eq!(after < before, before > 0.0);
        }
    }

    #[test]
    fn equal_expectations_make_orders_agree(c in positive_vec(1..30), e in 0.1f64..50.0) {
        let expected = vec![e; c.len()];
        let a = mean_of_ratios(&c, &expected).unwrap().mean;
        let b = ratio_of_means(&c, &expected).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
    }

    #[test]
    fn normalizations_are_permutation_invariant(
        pairs in prop::collection::vec((0.0f64..100.0, 0.1f64..50.0), 1..30),
        shift in 0usize..30,
    ) {
        let (c, e): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        let mut rotated = pairs.clone();
        rotated.rotate_left(shift % pairs.len());
        let (rc, re): (Vec<f64>, Vec<f64>) = rotated.into_iter().unzip();
        let tol = 1e-9;
        prop_assert!((mean_of_ratios(&c, &e).unwrap().mean - mean_of_ratios(&rc, &re).unwrap().mean).abs() < tol);
        prop_assert!((ratio_of_means(&c, &e).unwrap() - ratio_of_means(&rc, &re).unwrap()).abs() < tol);
    }

    #[test]
    fn scaling_expectations_scales_indicators(
        pairs in prop::collection::vec((0.0f64..100.0, 0.1f64..50.0), 1..30),
        lambda in 0.1f64..10.0,
    ) {
        let (c, e): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        let scaled: Vec<f64> = e.iter().map(|x| x * lambda).collect();
        let m = mean_of_ratios(&c, &e).unwrap().mean;
        let ms = mean_of_ratios(&c, &scaled).unwrap().mean;
        let r = ratio_of_means(&c, &e).unwrap();
        let rs = ratio_of_means(&c, &scaled).unwrap();
        prop_assert!((ms * lambda - m).abs() <= 1e-9 * m.max(1.0));
        prop_assert!((rs * lambda - r).abs() <= 1e-9 * r.max(1.0));
        // scaling both sides leaves both unchanged
        let both: Vec<f64> = c.iter().map(|x| x * lambda).collect();
        prop_assert!((mean_of_ratios(&both, &scaled).unwrap().mean - m).abs() <= 1e-9 * m.max(1.0));
        prop_assert!((ratio_of_means(&both, &scaled).unwrap() - r).abs() <= 1e-9 * r.max(1.0));
    }

    #[test]
    fn more_citations_never_lower_indicators(
        pairs in prop::collection::vec((0.0f64..100.0, 0.1f64..50.0), 1..30),
        idx in any::<prop::sample::Index>(),
        extra in 0.0f64..20.0,
    ) {
        let (c, e): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        let mut more = c.clone();
        more[idx.index(c.len())] += extra;
        prop_assert!(mean_of_ratios(&more, &e).unwrap().mean >= mean_of_ratios(&c, &e).unwrap().mean - 1e-12);
        prop_assert!(ratio_of_means(&more, &e).unwrap() >= ratio_of_means(&c, &e).unwrap() - 1e-12);
    }

    #[test]
    fn pearson_is_affine_invariant(
        xy in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..30),
        a in 0.1f64..10.0,
        b in -50.0f64..50.0,
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
        let Ok(r) = pearson(&x, &y) else { return Ok(()) };
        let tx: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let r2 = pearson(&tx, &y).unwrap();
        prop_assert!((r.statistic - r2.statistic).abs() < 1e-8);
        prop_assert!(r.statistic.abs() <= 1.0);
        let neg: Vec<f64> = x.iter().map(|v| -a * v + b).collect();
        prop_assert!((pearson(&neg, &y).unwrap().statistic + r.statistic).abs() < 1e-8);
    }

    #[test]
    fn spearman_is_pearson_of_mid_ranks(
        xy in prop::collection::vec((0u8..8, 0u8..8), 3..25),
    ) {
        let x: Vec<f64> = xy.iter().map(|p| p.0 as f64).collect();
        let y: Vec<f64> = xy.iter().map(|p| p.1 as f64).collect();
        match (spearman(&x, &y), pearson(&mid_ranks(&x), &mid_ranks(&y))) {
            (Ok(s), Ok(p)) => {
                prop_assert!((s.statistic - p.statistic).abs() < 1e-12);
                let monotone: Vec<f64> = x.iter().map(|v| v.powi(3) + 2.0).collect();
                prop_assert!((spearman(&monotone, &y).unwrap().statistic - s.statistic).abs() < 1e-12);
            }
            (Err(_), Err(_)) => {}
            (s, p) => prop_assert!(false, "spearman {:?} vs pearson {:?}", s, p),
        }
    }

    #[test]
    fn mid_ranks_sum_to_triangular(xs in prop::collection::vec(0u8..5, 1..40)) {
        let x: Vec<f64> = xs.iter().map(|&v| v as f64).collect();
        let n = x.len() as f64;
        let s: f64 = mid_ranks(&x).iter().sum();
        prop_assert!((s - n * (n + 1.0) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn cdfs_are_monotone_and_bounded(
        df1 in 1.0f64..60.0,
        df2 in 1.0f64..60.0,
        x in 0.0f64..20.0,
        dx in 0.0f64..5.0,
    ) {
        for dist in [
            Distribution::StudentT { df: df1 },
            Distribution::FisherF { df1, df2 },
            Distribution::ChiSquared { df: df1 },
        ] {
            let a = dist.cdf(x).unwrap();
            let b = dist.cdf(x + dx).unwrap();
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!(b >= a - 1e-14, "{:?} at {} {}", dist, x, x + dx);
            prop_assert!((a + dist.sf(x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn studentized_range_is_monotone(k in 2u32..8, df in 2.0f64..80.0, q in 0.0f64..8.0, dq in 0.0f64..1.0) {
        let d = Distribution::StudentizedRange { k, df };
        let a = d.cdf(q).unwrap();
        let b = d.cdf(q + dq).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b >= a - 1e-10);
    }

    #[test]
    fn two_group_f_is_t_squared(g in prop::collection::vec(prop::collection::vec(-50.0f64..50.0, 2..12), 2..=2)) {
        let a = &g[0];
        let b = &g[1];
        let ma = a.iter().sum::<f64>() / a.len() as f64;
        let mb = b.iter().sum::<f64>() / b.len() as f64;
        let ss: f64 = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() + b.iter().map(|x| (x - mb).powi(2)).sum::<f64>();
        let df = (a.len() + b.len() - 2) as f64;
        prop_assume!(ss > 1e-9);
        let se = (ss / df * (1.0 / a.len() as f64 + 1.0 / b.len() as f64)).sqrt();
        let t = (ma - mb) / se;
        let f = one_way_anova(&g).unwrap();
        prop_assert!((f.statistic - t * t).abs() <= 1e-8 * (t * t).max(1.0));
        let p_t = 2.0 * Distribution::StudentT { df }.sf(t.abs()).unwrap();
        prop_assert!((f.p_value.unwrap() - p_t).abs() < 1e-9);
    }

    #[test]
    fn test_p_values_are_probabilities(g in groups_strategy()) {
        for r in [one_way_anova(&g), kruskal_wallis(&g)] {
            let r = r.unwrap();
            if let Some(p) = r.p_value {
                prop_assert!((0.0..=1.0).contains(&p));
            }
        }
        if let Ok(w) = welch_anova(&g) {
            let p = w.p_value.unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn bonferroni_is_capped_multiple_of_raw(g in groups_strategy()) {
        let r = posthoc(&g, PosthocMethod::Bonferroni, 0.05).unwrap();
        let k = g.len();
        let m = (k * (k - 1) / 2) as f64;
        let n: Vec<f64> = g.iter().map(|v| v.len() as f64).collect();
        let means: Vec<f64> = g.iter().map(|v| v.iter().sum::<f64>() / v.len() as f64).collect();
        let ssw: f64 = g
            .iter()
            .zip(&means)
            .map(|(v, m)| v.iter().map(|x| (x - m).powi(2)).sum::<f64>())
            .sum();
        let df = n.iter().sum::<f64>() - k as f64;
        let msw = ssw / df;
        prop_assume!(msw > 1e-9);
        for i in 0..k {
            for j in (i + 1)..k {
                let t = (means[i] - means[j]).abs() / (msw * (1.0 / n[i] + 1.0 / n[j])).sqrt();
                let raw = 2.0 * Distribution::StudentT { df }.sf(t).unwrap();
                prop_assert!((r.p(i, j) - (m * raw).min(1.0)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn subsets_cover_groups_and_are_internally_non_significant(g in groups_strategy()) {
        for method in [PosthocMethod::Bonferroni, PosthocMethod::Tukey, PosthocMethod::Scheffe] {
            let r = posthoc(&g, method, 0.05).unwrap();
            let mut covered = vec![false; g.len()];
            for s in &r.homogeneous_subsets {
                for (a, &i) in s.iter().enumerate() {
                    covered[i] = true;
                    for &j in &s[a + 1..] {
                        prop_assert!(!r.significant(i, j));
                    }
                }
                // listed in ascending order of mean
                prop_assert!(s.windows(2).all(|w| r.means[w[0]] <= r.means[w[1]]));
            }
            prop_assert!(covered.iter().all(|&c| c));
            for i in 0..g.len() {
                for j in 0..g.len() {
                    prop_assert_eq!(r.p(i, j), r.p(j, i));
                }
            }
        }
    }

    #[test]
    fn all_non_significant_gives_single_subset(means in prop::collection::vec(-10.0f64..10.0, 2..8)) {
        let k = means.len();
        let pairwise = vec![vec![1.0; k]; k];
        let subsets = homogeneous_subsets(&means, &pairwise, 0.05);
        prop_assert_eq!(subsets.len(), 1);
        prop_assert_eq!(subsets[0].len(), k);
    }
}
