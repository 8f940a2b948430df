use std::collections::BTreeMap;

use airbench_core::baselines::{knn_fit, ChannelMeans, Oracle, Predictor, Weighting};
use airbench_core::metrics::{evaluate_split, FieldCriteria, MetricsReport};
use airbench_core::model::{validate_sample, Dataset, Prediction, Split};
use airbench_core::scoring::{score_metrics, ScoringConfig};
use airbench_core::synthflow::{generate_sample, generate_split, GenerationConfig};
use proptest::prelude::*;

fn config(n: usize, nodes: usize, seed: u64) -> GenerationConfig {
    GenerationConfig { n_train: n, n_test: n, n_ood: n, nodes_per_sample: nodes, seed, ..Default::default() }
}

fn predict(p: &dyn Predictor, d: &Dataset) -> Vec<Prediction> {
    d.samples
        .iter()
        .map(|s| Prediction { sample_id: s.id.clone(), fields: p.predict(s), inference_time_s: 0.0 })
        .collect()
}

fn global(p: &dyn Predictor, test: &Dataset, ood: &Dataset) -> f64 {
    let mut splits = BTreeMap::new();
    for d in [test, ood] {
        let preds = predict(p, d);
        for (pr, s) in preds.iter().zip(&d.samples) {
            pr.check_shape(s).unwrap();
        }
        splits.insert(d.split, evaluate_split(d, &preds, &FieldCriteria::default(), 1e-3).unwrap());
    }
    score_metrics(&MetricsReport { splits, training_rejection: None }, &ScoringConfig::default()).unwrap().global
}

#[test]
fn baselines_are_ordered_on_generated_benchmarks() {
    for seed in [1, 2] {
        let c = config(4, 600, seed);
        let train = generate_split(&c, Split::Train, "").unwrap();
        let test = generate_split(&c, Split::Test, "").unwrap();
        let ood = generate_split(&c, Split::OodTest, "").unwrap();
        let oracle = global(&Oracle, &test, &ood);
        let knn = global(&knn_fit(&train, 5, Weighting::Inverse).unwrap(), &test, &ood);
        let constant = global(&ChannelMeans::fit(&train).unwrap(), &test, &ood);
        assert!(oracle >= knn && knn >= constant, "seed {seed}: {oracle} {knn} {constant}");
        assert_eq!(oracle, 1.0);
    }
}

#[test]
fn knn_predictions_are_bit_reproducible() {
    let c = config(2, 200, 8);
    let train = generate_split(&c, Split::Train, "").unwrap();
    let test = generate_split(&c, Split::Test, "").unwrap();
    let a = predict(&knn_fit(&train, 3, Weighting::Inverse).unwrap(), &test);
    let b = predict(&knn_fit(&train, 3, Weighting::Inverse).unwrap(), &test);
    let bits = |p: &[Prediction]| -> Vec<u64> {
        p.iter().flat_map(|x| x.fields.p_s.iter().chain(&x.fields.u_x).map(|v| v.to_bits())).collect()
    };
    assert_eq!(bits(&a), bits(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_generated_sample_is_valid(seed in any::<u64>(), index in 0usize..50, ood in any::<bool>(), nodes in 64usize..400) {
        let split = if ood { Split::OodTest } else { Split::Train };
        let s = generate_sample(&config(50, nodes, seed), split, index).unwrap();
        prop_assert_eq!(validate_sample(&s), vec![]);
        prop_assert_eq!(s.node_count(), nodes);
    }
}
