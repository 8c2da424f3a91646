use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const TINY: &str = "\
n_nodes = 4
vec_len = 8
link_prob = 0.6
mu = 0.05
horizon = 120
switch_time = 60
reps = 2
";

fn diffusim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffusim"))
        .args(args)
        .current_dir(cwd)
        .env_remove("DIFFUSIM_SEED")
        .output()
        .unwrap()
}

#[test]
fn run_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.cfg"), TINY).unwrap();
    let out = diffusim(&["run", "tiny.cfg", "--out", "results"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("results/tiny.csv")).unwrap();
    assert!(csv.starts_with(
        "t,consensus_db,node0_local_db,node1_local_db,node2_local_db,node3_local_db\n"
    ));
    assert_eq!(csv.lines().count(), 121);
    assert!(dir.path().join("results/tiny.gp").exists());
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("tiny.cfg"), TINY).unwrap();
    fs::write(p.join("seeded.cfg"), format!("{TINY}seed = 5\n")).unwrap();
    let read = |sub: &str, name: &str| fs::read(p.join(sub).join(format!("{name}.csv"))).unwrap();

    diffusim(&["run", "tiny.cfg", "--seed", "5", "--out", "flag"], p);
    diffusim(&["run", "seeded.cfg", "--out", "key"], p);
    let env = Command::new(env!("CARGO_BIN_EXE_diffusim"))
        .args(["run", "tiny.cfg", "--out", "env"])
        .current_dir(p)
        .env("DIFFUSIM_SEED", "5")
        .output()
        .unwrap();
    assert!(env.status.success());
    diffusim(&["run", "tiny.cfg", "--out", "default"], p);
    // The config key wins over the environment, the flag over the key.
    let env_loses = Command::new(env!("CARGO_BIN_EXE_diffusim"))
        .args(["run", "seeded.cfg", "--out", "env_loses"])
        .current_dir(p)
        .env("DIFFUSIM_SEED", "9")
        .output()
        .unwrap();
    assert!(env_loses.status.success());
    diffusim(
        &["run", "seeded.cfg", "--seed", "1", "--out", "flag_wins"],
        p,
    );

    assert_eq!(read("flag", "tiny"), read("key", "seeded"));
    assert_eq!(read("flag", "tiny"), read("env", "tiny"));
    assert_eq!(read("flag", "tiny"), read("env_loses", "seeded"));
    assert_ne!(read("flag", "tiny"), read("default", "tiny"));
    assert_eq!(read("default", "tiny"), read("flag_wins", "seeded"));
}

#[test]
fn reps_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.cfg"), TINY).unwrap();
    let out = diffusim(&["run", "tiny.cfg", "--reps", "1"], dir.path());
    assert!(String::from_utf8_lossy(&out.stdout).contains("reps=1"));
}

#[test]
fn configuration_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.cfg"), "obs_prob = 2\n").unwrap();
    let out = diffusim(&["run", "bad.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("obs_prob"));

    let missing = diffusim(&["run", "missing.cfg"], dir.path());
    assert_ne!(missing.status.code(), Some(0));

    let unknown = diffusim(&["presets", "emit", "nope"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn impossible_topology_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("cut.cfg"),
        TINY.replace("link_prob = 0.6", "link_prob = 0"),
    )
    .unwrap();
    let out = diffusim(&["run", "cut.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_writes_one_column_per_config() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("imat.cfg"), TINY).unwrap();
    fs::write(
        p.join("conv.cfg"),
        format!("{TINY}strategy = conventional_averaging\n"),
    )
    .unwrap();
    let out = diffusim(&["compare", "imat.cfg", "conv.cfg"], p);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(p.join("out/comparison.csv")).unwrap();
    assert!(csv.starts_with("t,imat,conv\n"));
    assert_eq!(csv.lines().count(), 121);
}

#[test]
fn presets_list_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let list = diffusim(&["presets", "list"], dir.path());
    let text = String::from_utf8_lossy(&list.stdout);
    for name in [
        "time_partial",
        "time_full",
        "dct_low_noise",
        "dct_high_noise",
    ] {
        assert!(text.contains(name), "{text}");
    }
    let emitted = diffusim(&["presets", "emit", "dct_low_noise"], dir.path());
    assert!(emitted.status.success());
    let cfg = diffusim::scenario::parse_config(&String::from_utf8_lossy(&emitted.stdout)).unwrap();
    assert_eq!(
        cfg,
        diffusim::scenario::presets::load("dct_low_noise").unwrap()
    );
}
