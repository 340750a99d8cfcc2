use std::path::Path;
use std::process::{Command, Output};

use galeforge::{fleet, io, PolarizedArrangement};

fn galeforge(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_galeforge"));
    match cache {
        Some(dir) => c.env("GALEFORGE_CACHE", dir),
        None => c.env_remove("GALEFORGE_CACHE"),
    };
    c.args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, a: &PolarizedArrangement) -> String {
    let path = dir.join(name);
    std::fs::write(&path, io::to_pretty(&io::arrangement_to_value(a))).unwrap();
    path.to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "flag.json", &fleet::flag(&[2, 2]).unwrap());
    for args in [
        vec!["upsilon", &file, "--both", "--max-degree", "6"],
        vec!["chambers", &file],
        vec!["bases", &file],
    ] {
        let one = galeforge(None, &[&["--threads", "1"], &args[..]].concat());
        let four = galeforge(None, &[&["--threads", "4"], &args[..]].concat());
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let file = write(dir.path(), "tp2.json", &fleet::cotangent_p2());
    let series = dir.path().join("series.json");
    let series_s = series.to_str().unwrap();
    let args = ["upsilon", &file, "--max-degree", "9", "--json", series_s];
    let cold = galeforge(None, &args);
    let first = galeforge(Some(&cache), &args);
    let first_file = std::fs::read(&series).unwrap();
    std::fs::remove_file(&series).unwrap();
    let second = galeforge(Some(&cache), &[&["--threads", "2"], &args[..]].concat());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1, "--threads must not change the key");
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&series).unwrap(), first_file);

    // editing the input invalidates the entry
    write(dir.path(), "tp2.json", &fleet::cotangent_p1());
    let edited = galeforge(Some(&cache), &args);
    assert_ne!(edited.stdout, first.stdout);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let tp2 = write(d, "tp2.json", &fleet::cotangent_p2());
    assert_eq!(code(&galeforge(None, &["validate", &tp2])), 0);
    assert_eq!(code(&galeforge(None, &["verify", &tp2, "--max-degree", "6"])), 0);
    assert_eq!(code(&galeforge(None, &["verify", &tp2, "--max-degree", "6", "--fault-inject", "1"])), 2);
    assert_eq!(code(&galeforge(None, &["upsilon", &tp2, "--max-degree", "3", "--twist", "1,0,0"])), 4);
    let twisted = galeforge(None, &["upsilon", &tp2, "--oracle", "--max-degree", "3", "--twist", "1,0,0"]);
    assert_eq!(code(&twisted), 0);

    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"edges":["a","b"],"matrix":[[1],[2]],"eta":[1],"zeta_lift":[0,1]}"#).unwrap();
    assert_eq!(code(&galeforge(None, &["validate", bad.to_str().unwrap()])), 1);
    let degenerate = d.join("degenerate.json");
    std::fs::write(&degenerate, r#"{"edges":["a","b"],"matrix":[[1],[1]],"eta":[0],"zeta_lift":[1,0]}"#).unwrap();
    assert_eq!(code(&galeforge(None, &["chambers", degenerate.to_str().unwrap()])), 3);
    assert_eq!(code(&galeforge(None, &["validate", degenerate.to_str().unwrap()])), 3);
    assert_eq!(code(&galeforge(None, &["chambers", d.join("missing.json").to_str().unwrap()])), 1);
    let garbage = d.join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(code(&galeforge(None, &["bases", garbage.to_str().unwrap()])), 1);
}

#[test]
fn oracle_and_chamber_output() {
    let o = galeforge(None, &["oracle", "--weights", "[[1],[1],[1]]", "--eta", "[1]"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1 + t^2 + t^4\n");
    let dir = tempfile::tempdir().unwrap();
    let a1 = write(dir.path(), "a1.json", &fleet::cotangent_p1());
    let o = galeforge(None, &["chambers", &a1, "--both"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "++\n-+\n");
}

#[test]
fn dual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = fleet::three_cycle().unwrap();
    let file = write(dir.path(), "a.json", &a);
    let dual = dir.path().join("dual.json");
    let back = dir.path().join("back.json");
    assert_eq!(code(&galeforge(None, &["dual", &file, "-o", dual.to_str().unwrap()])), 0);
    assert_eq!(code(&galeforge(None, &["dual", dual.to_str().unwrap(), "-o", back.to_str().unwrap()])), 0);
    let round = io::arrangement_from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert!(round.equivalent_to(&a));
}
