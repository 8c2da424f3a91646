use std::fs;

use diffusim::scenario::{self, compare_arms, parse_config, presets, Observability};
use diffusim::{Error, FlowGates, ScenarioConfig, Strategy};

fn small(strategy: Strategy) -> ScenarioConfig {
    ScenarioConfig {
        n_nodes: 6,
        vec_len: 8,
        link_prob: 0.5,
        horizon: 400,
        reps: 3,
        mu: 0.05,
        gates: FlowGates {
            switch_time: 200,
            ..ScenarioConfig::default().gates
        },
        strategy,
        ..ScenarioConfig::default()
    }
}

#[test]
fn isolated_nodes_with_full_view_converge() {
    let cfg = ScenarioConfig {
        n_nodes: 6,
        vec_len: 8,
        mu: 0.05,
        horizon: 3000,
        reps: 4,
        gates: FlowGates {
            switch_time: 1500,
            ..ScenarioConfig::default().gates
        },
        strategy: Strategy::NoCooperation,
        observability: Observability::Full,
        ..ScenarioConfig::default()
    };
    let trace = scenario::run_simulation(&cfg).unwrap();
    let tail = trace.tail_consensus_db(0.1);
    assert!(tail < -30.0, "tail consensus {tail} dB");
    assert!(trace.tail_local_db(0.1) < -30.0);
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for strategy in Strategy::ALL {
        let cfg = small(strategy);
        let a = scenario::run_scenario(&cfg, &dir.path().join("a"), "s").unwrap();
        let b = scenario::run_scenario(&cfg, &dir.path().join("b"), "s").unwrap();
        assert_eq!(
            fs::read(&a.csv_path).unwrap(),
            fs::read(&b.csv_path).unwrap()
        );
        assert_eq!(
            fs::read(&a.plot_path).unwrap(),
            fs::read(&b.plot_path).unwrap()
        );
    }
}

#[test]
fn csv_has_one_row_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let out = scenario::run_scenario(&small(Strategy::ImatAdaptive), dir.path(), "run").unwrap();
    let text = fs::read_to_string(&out.csv_path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,consensus_db,node0_local_db,"));
    assert!(header.ends_with(",node5_local_db"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 400);
    assert!(rows[0].starts_with("1,"));
    assert!(rows[399].starts_with("400,"));
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
    assert!(fs::read_to_string(&out.plot_path)
        .unwrap()
        .contains("'run.csv'"));
}

#[test]
fn seed_changes_results() {
    let a = scenario::run_simulation(&small(Strategy::ImatAdaptive)).unwrap();
    let b = scenario::run_simulation(&ScenarioConfig {
        seed: 2,
        ..small(Strategy::ImatAdaptive)
    })
    .unwrap();
    assert_ne!(a.consensus_msd_db, b.consensus_msd_db);
}

#[test]
fn comparison_with_one_arm_matches_the_single_run() {
    let cfg = small(Strategy::OracleOptimalWeights);
    let cmp = compare_arms(&[("oracle".into(), cfg.clone())]).unwrap();
    let single = scenario::run_simulation(&cfg).unwrap();
    assert_eq!(cmp.labels, ["oracle"]);
    assert_eq!(cmp.traces[0], single);
    assert!(cmp.to_csv().starts_with("t,oracle\n1,"));
}

#[test]
fn duplicate_arm_labels_are_disambiguated() {
    let cfg = small(Strategy::ConventionalAveraging);
    let cmp = compare_arms(&[
        ("arm a".into(), cfg.clone()),
        ("arm a".into(), cfg.clone()),
        ("arm_a".into(), cfg),
    ])
    .unwrap();
    assert_eq!(cmp.labels, ["arm_a", "arm_a_2", "arm_a_3"]);
    assert_eq!(cmp.traces[0], cmp.traces[1]);
    let dir = tempfile::tempdir().unwrap();
    let (csv, gp) = cmp.write(dir.path(), "cmp").unwrap();
    assert!(fs::read_to_string(csv)
        .unwrap()
        .starts_with("t,arm_a,arm_a_2,arm_a_3\n"));
    assert!(fs::read_to_string(gp).unwrap().contains("using 1:4"));
}

#[test]
fn presets_parse_and_round_trip() {
    for p in presets::PRESETS {
        let cfg = presets::load(p.name).unwrap();
        let again = parse_config(&cfg.to_config_text()).unwrap();
        assert_eq!(cfg, again, "{}", p.name);
    }
    assert!(presets::find("nope").is_err());
}

#[test]
fn config_errors_name_the_key() {
    let cases = [
        ("obs_prob = 1.5\n", "obs_prob"),
        ("mu = -1\n", "mu"),
        ("colour = blue\n", "colour"),
        ("strategy = magic\n", "strategy"),
        ("horizon = 10\nswitch_time = 20\n", "switch_time"),
    ];
    for (text, key) in cases {
        match parse_config(text) {
            Err(Error::Config { key: k, .. }) => assert_eq!(k, key, "{text}"),
            other => panic!("{text}: expected config error, got {other:?}"),
        }
    }
}
