//! Parser robustness: replays the fuzz corpus and throws arbitrary bytes at
//! every parser entry point.

use std::fs;
use std::path::PathBuf;

use pointwise::config::parse_config;
use pointwise::data::{parse_ball, parse_dataset, parse_interval, parse_nuisance, parse_or_null};
use pointwise::models::ModelId;
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

#[test]
fn dataset_seeds() {
    let ok = |target: &str, parse: &dyn Fn(&[u8]) -> bool| {
        corpus(target).iter().filter(|s| parse(s)).count()
    };
    assert_eq!(ok("parse_interval", &|s| parse_interval(s).is_ok()), 2);
    assert_eq!(ok("parse_or_null", &|s| parse_or_null(s).is_ok()), 2);
    assert_eq!(ok("parse_nuisance", &|s| parse_nuisance(s).is_ok()), 2);
    assert_eq!(ok("parse_ball", &|s| parse_ball(s).is_ok()), 1);
}

#[test]
fn config_seeds_parse_and_validate() {
    for seed in corpus("parse_config") {
        let config = parse_config(std::str::from_utf8(&seed).unwrap()).unwrap();
        config.validate().unwrap();
    }
}

#[test]
fn pipeline_seeds_pick_each_model() {
    for seed in corpus("parse_and_test") {
        let (&tag, csv) = seed.split_first().unwrap();
        let model = ModelId::ALL[tag as usize % ModelId::ALL.len()];
        parse_dataset(model, csv).unwrap();
    }
}

fn csv_like() -> impl Strategy<Value = String> {
    let cell = prop_oneof![
        any::<f64>().prop_map(|v| v.to_string()),
        "-?[0-9]{0,3}(\\.[0-9]{0,3})?(e-?[0-9])?",
        "[a-z#\" ]{0,3}",
    ];
    let header = prop::sample::subsequence(
        vec!["x", "x1", "x2", "y", "y1", "y2", "y3", "y4", "y5", "z"],
        0..7,
    );
    (
        header,
        prop::collection::vec(prop::collection::vec(cell, 0..7), 0..6),
    )
        .prop_map(|(h, rows)| {
            let mut out = h.join(",");
            for r in rows {
                out.push('\n');
                out.push_str(&r.join(","));
            }
            out
        })
}

proptest! {
    #[test]
    fn parsers_never_panic_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..256)) {
        let _ = parse_interval(&bytes[..]);
        let _ = parse_or_null(&bytes[..]);
        let _ = parse_nuisance(&bytes[..]);
        let _ = parse_ball(&bytes[..]);
        if let Ok(text) = std::str::from_utf8(&bytes) {
            let _ = parse_config(text);
        }
    }

    #[test]
    fn parsers_never_panic_on_csv_like_text(text in csv_like()) {
        for model in ModelId::ALL {
            if let Ok(d) = parse_dataset(model, text.as_bytes()) {
                prop_assert_eq!(d.model(), model);
            }
        }
    }

    #[test]
    fn accepted_configs_validate(
        lines in prop::collection::vec(
            (prop::sample::select(vec!["model", "mode", "truth", "n", "m", "alpha", "methods", "a", "b", "width", "psi0"]),
             "[a-z0-9_.,\\- ]{0,12}"),
            0..10,
        )
    ) {
        let text: String = lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        if let Ok(config) = parse_config(&text) {
            prop_assert!(config.validate().is_ok());
        }
    }
}
