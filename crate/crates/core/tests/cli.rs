use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use poset_classify::dataio::{load_model, parse_dataset_document};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poset-classify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn train_toy_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let model_path = dir.path().join("model.toml");
    let toy = data("toy_c3.toml");
    let o = run(&["train", "--data", toy.to_str().unwrap(), "--out", model_path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let (spec, _) = parse_dataset_document(&std::fs::read_to_string(&toy).unwrap()).unwrap();
    let model = load_model(&std::fs::read_to_string(&model_path).unwrap(), &spec).unwrap();
    let k1 = &model.classes[0];
    assert_eq!(k1.name, "K1");
    let mut rules: Vec<_> = k1
        .rules
        .iter()
        .map(|w| (w.classifier.features.clone(), w.classifier.sigma.clone(), w.weight))
        .collect();
    rules.sort();
    assert_eq!(rules, vec![(vec![0], vec![1], 1), (vec![1], vec![1], 1)]);

    let o = run(&["predict", "--data", toy.to_str().unwrap(), "--model", model_path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "row,actual,predicted,score:K1,score:K2");
    assert_eq!(lines[1], "1,K1,K1,1.000000,0.000000");
    // K2 has no representatives, so (2,2) gets no votes at all.
    assert_eq!(lines[2], "2,K2,,0.000000,0.000000");
}

#[test]
fn dualize_single_row() {
    let o = run(&["dualize", "--instance", data("dualize_c3.toml").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "H=(1) sigma=(0) x=(0,2)\nH=(2) sigma=(0) x=(2,0)\n");
    let par = run(&["dualize", "--parallel", "--instance", data("dualize_c3.toml").to_str().unwrap()]);
    assert_eq!(stdout(&par), stdout(&o));
}

#[test]
fn oracle_check_modes() {
    let o = run(&["oracle-check", "--random", "100", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "ok: 100 instances\n");
    let o = run(&["oracle-check", "--instance", data("dualize_c3.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn evaluate_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.toml");
    let o = run(&[
        "evaluate",
        "--data",
        data("car.csv").to_str().unwrap(),
        "--orders",
        data("car_antichain.toml").to_str().unwrap(),
        "--seed",
        "3",
        "--max-rank",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: toml::Table = std::fs::read_to_string(&out).unwrap().parse().unwrap();
    assert_eq!(report["seed"].as_integer(), Some(3));
    assert_eq!(report["folds"].as_integer(), Some(3));
    assert_eq!(report["objects"].as_integer(), Some(1728));
    let acc = report["accuracy"].as_float().unwrap();
    assert!((0.0..=1.0).contains(&acc));
    assert_eq!(report["fold"].as_array().unwrap().len(), 3);
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "buying,maint,doors,persons,lug_boot,safety,class\nfree,low,2,2,small,low,unacc\n").unwrap();
    let o = run(&[
        "train",
        "--data",
        bad.to_str().unwrap(),
        "--orders",
        data("car_antichain.toml").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("free"), "{err}");

    let o = run(&["dualize", "--instance", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["train", "--method", "boosting"]).status.code(), Some(2));
}
