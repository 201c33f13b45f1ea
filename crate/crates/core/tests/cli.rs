//! End-to-end runs of the `ctm` binary on the toy corpus in `data/toy`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn toy(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/toy").join(name)
}

fn ctm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctm"))
        .args(args)
        .output()
        .expect("spawn ctm")
}

fn ok(args: &[&str]) -> Output {
    let out = ctm(args);
    assert!(
        out.status.success(),
        "ctm {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Run {
    dir: TempDir,
}

impl Run {
    fn ingested() -> Run {
        let dir = tempfile::tempdir().unwrap();
        ok(&[
            "ingest",
            "--publications",
            p(&toy("publications.jsonl")),
            "--judgments",
            p(&toy("judgments.jsonl")),
            "--out-dir",
            p(dir.path()),
        ]);
        Run { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn matched(&self, out: &str, extra: &[&str]) -> String {
        let scores = self.path(out);
        let mut args: Vec<String> = vec![
            "match".into(),
            "--profiles".into(),
            p(&self.path("profiles.jsonl")).into(),
            "--submissions".into(),
            p(&toy("submissions.jsonl")).into(),
            "--embeddings".into(),
            p(&toy("embeddings.txt")).into(),
            "--stopwords".into(),
            p(&toy("stopwords.txt")).into(),
            "--out".into(),
            p(&scores).into(),
        ];
        args.extend(extra.iter().map(|a| a.to_string()));
        ok(&args.iter().map(String::as_str).collect::<Vec<_>>());
        fs::read_to_string(scores).unwrap()
    }
}

#[test]
fn ingest_writes_profiles_and_filter_report() {
    let run = Run::ingested();
    let report = fs::read_to_string(run.path("filter_report.tsv")).unwrap();
    assert!(report.starts_with("reviewer_id\tstatus\treason\n"));
    assert!(report.contains("old\texcluded\tinactive-veteran"));
    assert!(report.contains("sam\texcluded\tinactive-sparse"));
    let profiles = fs::read_to_string(run.path("profiles.jsonl")).unwrap();
    assert_eq!(profiles.lines().count(), 5);
    assert!(!profiles.contains("\"old\""));
    assert!(run.path("qrels.tsv").exists());
}

#[test]
fn missing_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = ctm(&[
        "ingest",
        "--publications",
        "/nonexistent/pubs.jsonl",
        "--out-dir",
        p(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/pubs.jsonl"));
}

#[test]
fn match_scores_every_pair_in_order() {
    let run = Run::ingested();
    let tsv = run.matched("scores.tsv", &["--k", "3"]);
    let mut lines = tsv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "submission_id\treviewer_id\tmethod\tK\tscore\trel_reviewer\trel_submission\tk_eff\tdegenerate"
    );
    let keys: Vec<(String, String)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), f[1].to_string())
        })
        .collect();
    assert_eq!(keys.len(), 15);
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn parallel_match_is_byte_identical() {
    let run = Run::ingested();
    let one = run.matched("one.tsv", &["--jobs", "1"]);
    let many = run.matched("many.tsv", &["--jobs", "8"]);
    assert_eq!(one, many);
}

#[test]
fn every_method_writes_scores() {
    let run = Run::ingested();
    for method in ["hidden-topic", "centroid", "relaxed-wmd"] {
        let tsv = run.matched(&format!("{method}.tsv"), &["--method", method, "--k", "2"]);
        assert_eq!(tsv.lines().count(), 16, "{method}");
        assert!(tsv.lines().skip(1).all(|l| l.split('\t').nth(2) == Some(method)));
    }
}

#[test]
fn empty_abstract_scores_as_degenerate() {
    let run = Run::ingested();
    let subs = run.path("subs.jsonl");
    fs::write(
        &subs,
        "{\"submission_id\":\"blank\",\"abstract\":\"\"}\n{\"submission_id\":\"s1\",\"abstract\":\"bayesian posterior\"}\n",
    )
    .unwrap();
    let scores = run.path("scores.tsv");
    ok(&[
        "match",
        "--profiles",
        p(&run.path("profiles.jsonl")),
        "--submissions",
        p(&subs),
        "--embeddings",
        p(&toy("embeddings.txt")),
        "--out",
        p(&scores),
    ]);
    let tsv = fs::read_to_string(scores).unwrap();
    let blank: Vec<&str> = tsv.lines().filter(|l| l.starts_with("blank\t")).collect();
    assert_eq!(blank.len(), 5);
    for line in blank {
        let f: Vec<&str> = line.split('\t').collect();
        assert_eq!(f[4], "0");
        assert_eq!(f[8], "true");
    }
}

#[test]
fn rank_keeps_top_n_per_submission() {
    let run = Run::ingested();
    run.matched("scores.tsv", &[]);
    let scores = run.path("scores.tsv");
    let rank = |n: &str| -> Output {
        ctm(&[
            "rank",
            "--scores",
            p(&scores),
            "--out",
            p(&run.path("rank.tsv")),
            "--top-n",
            n,
        ])
    };
    assert!(rank("3").status.success());
    let text = fs::read_to_string(run.path("rank.tsv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "submission_id\trank\treviewer_id\tscore");
    for s in ["s1", "s2", "s3"] {
        let ranks: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with(&format!("{s}\t")))
            .map(|l| l.split('\t').nth(1).unwrap())
            .collect();
        assert_eq!(ranks, ["1", "2", "3"]);
    }

    assert!(rank("50").status.success());
    let text = fs::read_to_string(run.path("rank.tsv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 15);

    assert_eq!(rank("0").status.code(), Some(2));
}

#[test]
fn evaluate_reports_hand_computed_precision() {
    let run = Run::ingested();
    let scores = run.matched("scores.tsv", &["--k", "3"]);
    let score = |s: &str, r: &str| -> f64 {
        let line = scores.lines().find(|l| l.starts_with(&format!("{s}\t{r}\t"))).unwrap();
        line.split('\t').nth(4).unwrap().parse().unwrap()
    };
    // the ordering the expected values below were enumerated from
    assert!(score("s1", "ana") > score("s1", "dara") && score("s1", "dara") > score("s1", "eli"));
    assert!(score("s1", "eli") > score("s1", "ben"));
    assert!(score("s2", "ben") > score("s2", "eli") && score("s2", "eli") > score("s2", "ana"));
    assert!(score("s3", "chen") > score("s3", "dara") && score("s3", "dara") > score("s3", "ben"));

    let out = ok(&[
        "evaluate",
        "--qrels",
        p(&run.path("qrels.tsv")),
        "--scores",
        p(&run.path("scores.tsv")),
        "--at",
        "3,5",
        "--out-dir",
        p(run.dir.path()),
    ]);
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("66.7") && table.contains("61.1"), "{table}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(run.path("eval_report.json")).unwrap()).unwrap();
    // top 3 judged: s1 ana dara eli, s2 ben eli ana, s3 chen dara ben -> 2/3 each
    assert_eq!(json["gt1"]["p3"], 66.7);
    // every judged reviewer fits in the top 5: s1 2/4, s2 2/3, s3 2/3
    assert_eq!(json["gt1"]["p5"], 61.1);
    assert_eq!(json["gt1"]["submissions"], 3);
    assert_eq!(json["gt3"]["submissions"], 0);
    assert!(json["gt3"]["p5"].is_null());
    assert!(run.path("eval_report.txt").exists());
}

#[test]
fn evaluate_live_equals_evaluate_from_file() {
    let run = Run::ingested();
    run.matched("scores.tsv", &["--k", "3"]);
    let from_file = ok(&[
        "evaluate",
        "--qrels",
        p(&run.path("qrels.tsv")),
        "--scores",
        p(&run.path("scores.tsv")),
    ]);
    let live = ok(&[
        "evaluate",
        "--qrels",
        p(&run.path("qrels.tsv")),
        "--profiles",
        p(&run.path("profiles.jsonl")),
        "--submissions",
        p(&toy("submissions.jsonl")),
        "--embeddings",
        p(&toy("embeddings.txt")),
        "--stopwords",
        p(&toy("stopwords.txt")),
        "--k",
        "3",
    ]);
    assert_eq!(from_file.stdout, live.stdout);
}

#[test]
fn empty_qrels_is_rejected() {
    let run = Run::ingested();
    run.matched("scores.tsv", &[]);
    let empty = run.path("empty.tsv");
    fs::write(&empty, "").unwrap();
    let out = ctm(&["evaluate", "--qrels", p(&empty), "--scores", p(&run.path("scores.tsv"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explain_topics_surfaces_shared_vocabulary() {
    let run = Run::ingested();
    let args = |sub: &str| -> Vec<String> {
        [
            "explain-topics",
            "--profiles",
            p(&run.path("profiles.jsonl")),
            "--submissions",
            p(&toy("submissions.jsonl")),
            "--embeddings",
            p(&toy("embeddings.txt")),
            "--stopwords",
            p(&toy("stopwords.txt")),
            "--submission-id",
            sub,
            "--reviewer-id",
            "ana",
            "--k",
            "2",
            "--top-words",
            "5",
        ]
        .map(String::from)
        .to_vec()
    };
    let a = args("s1");
    let out = ok(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().find(|l| l.starts_with("topic  1")).unwrap();
    assert!(first.contains("bayesian"), "{text}");

    let a = args("nope");
    let out = ctm(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_word_documents_explain_as_that_word() {
    let dir = tempfile::tempdir().unwrap();
    let profiles = dir.path().join("profiles.jsonl");
    let subs = dir.path().join("subs.jsonl");
    fs::write(
        &profiles,
        "{\"reviewer_id\":\"r\",\"tokens\":[\"graph\"],\"source_pub_ids\":[\"p\"]}\n",
    )
    .unwrap();
    fs::write(&subs, "{\"submission_id\":\"s\",\"abstract\":\"graph\"}\n").unwrap();
    let out = ok(&[
        "explain-topics",
        "--profiles",
        p(&profiles),
        "--submissions",
        p(&subs),
        "--embeddings",
        p(&toy("embeddings.txt")),
        "--submission-id",
        "s",
        "--reviewer-id",
        "r",
        "--k",
        "1",
        "--top-words",
        "1",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("topic  1  cos 1.0000  graph (1.000)"), "{text}");
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let run = Run::ingested();
    let cfg = run.path("ctm.conf");
    fs::write(&cfg, "# toy settings\nmethod = centroid\ntop_n = 1\n").unwrap();
    let from_cfg = run.matched("cfg.tsv", &["--config", p(&cfg)]);
    assert!(from_cfg.lines().nth(1).unwrap().contains("\tcentroid\t"));
    let overridden = run.matched("flag.tsv", &["--config", p(&cfg), "--method", "relaxed-wmd"]);
    assert!(overridden.lines().nth(1).unwrap().contains("\trelaxed-wmd\t"));
}

#[test]
fn reruns_are_idempotent() {
    let run = Run::ingested();
    let first_profiles = fs::read(run.path("profiles.jsonl")).unwrap();
    let first_report = fs::read(run.path("filter_report.tsv")).unwrap();
    let a = run.matched("scores.tsv", &[]);
    ok(&[
        "ingest",
        "--publications",
        p(&toy("publications.jsonl")),
        "--judgments",
        p(&toy("judgments.jsonl")),
        "--out-dir",
        p(run.dir.path()),
    ]);
    assert_eq!(fs::read(run.path("profiles.jsonl")).unwrap(), first_profiles);
    assert_eq!(fs::read(run.path("filter_report.tsv")).unwrap(), first_report);
    assert_eq!(run.matched("scores.tsv", &[]), a);
}

#[test]
fn training_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let train = |name: &str, seed: &str| -> Vec<u8> {
        let out = dir.path().join(name);
        ok(&[
            "train-embeddings",
            "--publications",
            p(&toy("publications.jsonl")),
            "--dim",
            "8",
            "--min-count",
            "1",
            "--epochs",
            "3",
            "--seed",
            seed,
            "--out",
            p(&out),
        ]);
        fs::read(out).unwrap()
    };
    let a = train("a.txt", "3");
    assert_eq!(a, train("b.txt", "3"));
    assert_ne!(a, train("c.txt", "4"));
    let header = String::from_utf8_lossy(&a).lines().next().unwrap().to_string();
    assert!(header.ends_with(" 8"), "{header}");
}
