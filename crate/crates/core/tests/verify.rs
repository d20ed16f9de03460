use newton_core::dynamics::{basin_grid, f_map, Window};
use newton_core::render::{ppm_bytes, sidecar, PALETTE, UNDECIDED};
use newton_core::verify::{
    newton_corpus, run_suite, Suite, CORPUS_MAX_DEGREE, CORPUS_SIZE, DEFAULT_SEED,
};

#[test]
fn suites_are_deterministic_per_seed() {
    let a = run_suite(Suite::Properties, DEFAULT_SEED).to_json();
    let b = run_suite(Suite::Properties, DEFAULT_SEED).to_json();
    assert_eq!(a, b);
    let c = run_suite(Suite::Properties, DEFAULT_SEED + 1).to_json();
    assert_ne!(a, c);
}

#[test]
fn every_suite_passes_at_default_seed() {
    for suite in [
        Suite::Tables,
        Suite::Properties,
        Suite::Mcmullen,
        Suite::Disconnection,
    ] {
        let rep = run_suite(suite, DEFAULT_SEED);
        let failed: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert!(rep.passed, "{suite}: {failed:?}");
    }
}

#[test]
fn property_suites_pass_across_seeds() {
    for seed in 0..8 {
        let rep = run_suite(Suite::Properties, seed);
        assert!(rep.passed, "seed {seed}: {}", rep.to_json());
    }
}

#[test]
fn corpus_shape() {
    let corpus = newton_corpus(3);
    assert_eq!(corpus.len(), CORPUS_SIZE);
    assert!(corpus
        .iter()
        .all(|e| (2..=CORPUS_MAX_DEGREE).contains(&e.newton_degree())));
}

#[test]
fn render_colors_follow_labels() {
    let n = f_map(1).unwrap();
    let g = basin_grid(&n, Window::square(2.0), 20, 16, 200).unwrap();
    let bytes = ppm_bytes(&g);
    let body = &bytes[b"P6\n20 16\n255\n".len()..];
    for (k, label) in g.labels.iter().enumerate() {
        let want = label.map_or(UNDECIDED, |l| PALETTE[l as usize % PALETTE.len()]);
        assert_eq!(&body[3 * k..3 * k + 3], &want);
    }
    let side = sidecar(&g);
    let total: u64 = side["label_counts"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(total as usize + g.undecided_count(), 20 * 16);
}
