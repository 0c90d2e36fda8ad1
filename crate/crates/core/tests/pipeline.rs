use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use sha2::{Digest, Sha256};
use topicmap::config::PipelineConfig;
use topicmap::corpus::write_isi;
use topicmap::pipeline::{self, Manifest, Stage};
use topicmap::synth::{demo_records, DEMO_SEED};

fn demo_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/demo")
}

fn demo_config() -> PipelineConfig {
    PipelineConfig::load(&demo_dir().join("demo.toml")).unwrap()
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_topicmap"));
    c.env("RUST_LOG", "error");
    c
}

/// Every file under `dir`, keyed by relative path.
fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

#[test]
fn bundled_demo_corpus_matches_generator() {
    let text = fs::read_to_string(demo_dir().join("demo.isi")).unwrap();
    assert_eq!(text, write_isi(&demo_records(DEMO_SEED)));
}

#[test]
fn run_writes_all_artifacts_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let summary = pipeline::run_pipeline(&demo_config(), &out).unwrap();
    assert_eq!(summary.periods.len(), 2);
    assert_eq!(summary.unassigned, 4);
    let files = snapshot(&out);
    for period in ["1988-1997", "1998-2008"] {
        for name in [
            "records.jsonl",
            "terms.tsv",
            "edges.tsv",
            "clusters.tsv",
            "map.net",
            "map.clu",
            "map.vec",
            "map.graphml",
            "report.json",
        ] {
            assert!(files.contains_key(&format!("{period}/{name}")), "{period}/{name}");
        }
    }
    assert!(files.contains_key("compare_1988-1997_1998-2008.json"));
    let manifest: Manifest = serde_json::from_slice(&files["manifest.json"]).unwrap();
    assert_eq!(manifest.config_sha256, demo_config().semantic_hash());
    assert_eq!(manifest.artifacts.len(), files.len() - 1);
    for (rel, digest) in &manifest.artifacts {
        assert_eq!(&hex::encode(Sha256::digest(&files[rel])), digest, "{rel}");
    }
    // Staging directory is gone.
    let leftovers: Vec<_> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers, ["out"]);
}

#[test]
fn stages_compose_to_the_same_bytes() {
    let cfg = demo_config();
    let tmp = tempfile::tempdir().unwrap();
    let (full, staged) = (tmp.path().join("full"), tmp.path().join("staged"));
    pipeline::run_pipeline(&cfg, &full).unwrap();
    pipeline::stage_ingest(&cfg, &staged).unwrap();
    pipeline::stage_extract(&cfg, &staged).unwrap();
    pipeline::stage_graph(&cfg, &staged).unwrap();
    pipeline::stage_cluster(&cfg, &staged).unwrap();
    pipeline::stage_export(&cfg, &staged).unwrap();
    let reports: Vec<PathBuf> = cfg
        .periods
        .iter()
        .map(|p| staged.join(&p.label).join("report.json"))
        .collect();
    pipeline::stage_compare(&reports, &staged).unwrap();
    let mut a = snapshot(&full);
    a.remove("manifest.json");
    assert_eq!(a, snapshot(&staged));
}

#[test]
fn failed_run_leaves_nothing_behind() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("bad.isi"),
        "PT J\nTI A title\nthis is not a field line\nER\n",
    )
    .unwrap();
    let cfg = PipelineConfig::parse(
        "[input]\npaths = [\"bad.isi\"]\n[[period]]\nlabel = \"p\"\nstart_year = 1990\nend_year = 1999\n",
        tmp.path(),
    )
    .unwrap();
    let err = pipeline::run_pipeline(&cfg, &tmp.path().join("out")).unwrap_err();
    assert_eq!(err.stage, Stage::Ingest);
    assert_eq!(err.exit_code(), 10);
    let names: Vec<_> = fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, ["bad.isi"]);
}

#[test]
fn empty_period_fails_in_export() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_text = format!(
        "[input]\npaths = [\"{}\"]\n[[period]]\nlabel = \"early\"\nstart_year = 1900\nend_year = 1950\n",
        demo_dir().join("demo.isi").display()
    );
    let cfg = PipelineConfig::parse(&cfg_text, tmp.path()).unwrap();
    let err = pipeline::run_pipeline(&cfg, &tmp.path().join("out")).unwrap_err();
    assert_eq!(err.stage, Stage::Export);
    assert!(!tmp.path().join("out").exists());
}

#[test]
fn cli_run_is_thread_count_independent() {
    let tmp = tempfile::tempdir().unwrap();
    let config = demo_dir().join("demo.toml");
    for threads in ["1", "4"] {
        let st = bin()
            .args(["run", "--threads", threads, "--config"])
            .arg(&config)
            .arg("--out")
            .arg(tmp.path().join(threads))
            .output()
            .unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    }
    assert_eq!(snapshot(&tmp.path().join("1")), snapshot(&tmp.path().join("4")));
}

#[test]
fn cli_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["run"]), 2, "missing --config");
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["run", "--threads", "0", "--config", "x.toml"]), 2);

    let missing = tmp.path().join("missing.toml");
    assert_eq!(code(&["run", "--config", missing.to_str().unwrap()]), 3);

    let bad_cfg = tmp.path().join("bad.toml");
    fs::write(&bad_cfg, "[input]\npaths = []\n").unwrap();
    assert_eq!(code(&["run", "--config", bad_cfg.to_str().unwrap()]), 3);

    fs::write(tmp.path().join("bad.isi"), "PT J\nnot a field\nER\n").unwrap();
    let isi_cfg = tmp.path().join("isi.toml");
    fs::write(
        &isi_cfg,
        "[input]\npaths = [\"bad.isi\"]\n[[period]]\nlabel = \"p\"\nstart_year = 1990\nend_year = 1999\n",
    )
    .unwrap();
    assert_eq!(code(&["run", "--config", isi_cfg.to_str().unwrap()]), 10);

    let one = tmp.path().join("one.json");
    fs::write(&one, "{}").unwrap();
    assert_eq!(code(&["compare", one.to_str().unwrap()]), 2);
    assert_eq!(code(&["compare", one.to_str().unwrap(), one.to_str().unwrap()]), 15);
}

#[test]
fn stale_dump_version_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let config = demo_dir().join("demo.toml");
    let run = |sub: &str| {
        bin()
            .args([sub, "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap()
    };
    assert!(run("ingest").status.success());
    let records = out.join("1988-1997/records.jsonl");
    let text = fs::read_to_string(&records).unwrap().replacen("v1", "v0", 1);
    fs::write(&records, text).unwrap();
    let st = run("extract");
    assert_eq!(st.status.code(), Some(11));
    let err = String::from_utf8_lossy(&st.stderr);
    assert!(err.contains("v1") && err.contains("v0"), "{err}");
}

#[test]
fn cli_synth_writes_jsonl() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("perf.jsonl");
    let st = bin()
        .args(["synth", "--records", "25", "--format", "jsonl", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(st.success());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 25);
}
