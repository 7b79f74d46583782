#![no_main]

use libfuzzer_sys::fuzz_target;
use pointwise::data::{parse_dataset, Dataset};
use pointwise::models::linear_or::or_null_test;
use pointwise::models::mvn_ball::ball_pointwise_test;
use pointwise::models::normal_mean::interval_null_test;
use pointwise::models::nuisance::psi_pointwise_test;
use pointwise::models::ModelId;

// First byte picks the model; the rest is the CSV. Any parsed dataset must
// test without panicking and yield a probability in [0, 1].
fuzz_target!(|data: &[u8]| {
    let Some((&tag, csv)) = data.split_first() else {
        return;
    };
    let model = ModelId::ALL[tag as usize % ModelId::ALL.len()];
    let Ok(dataset) = parse_dataset(model, csv) else {
        return;
    };
    let decision = match &dataset {
        Dataset::Interval(s) => interval_null_test(s, 0.0, 1.0, 0.05),
        Dataset::OrNull(d) => or_null_test(d, 0.05, 5),
        Dataset::Nuisance(d) => psi_pointwise_test(d, 1.0, 0.05, 20, 10.0),
        Dataset::Ball(d) => ball_pointwise_test(d, 0.05),
    };
    if let Ok(d) = decision {
        let p = d.max_p.get();
        assert!((0.0..=1.0).contains(&p), "max_p {p}");
        assert_eq!(d.reject, p <= d.alpha_prime_used.get());
    }
});
