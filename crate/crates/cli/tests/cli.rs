use std::path::PathBuf;
use std::process::{Command, Output};

fn tenzan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenzan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn corpus_reports_match_golden_files() {
    for (name, code) in [
        ("katayamahiko-ohara", 1),
        ("katayamahiko-corrected", 0),
        ("katayamahiko-modern", 0),
        ("katayamahiko-traditional", 0),
        ("rule-examples", 0),
    ] {
        let out = tenzan(&["check", &format!("corpus:{name}")]);
        assert_eq!(stdout(&out), golden(&format!("{name}.txt")), "{name}");
        assert_eq!(out.status.code(), Some(code), "{name}");
    }
}

#[test]
fn ohara_failure_names_the_last_step() {
    let text = stdout(&tenzan(&["check", "corpus:katayamahiko-ohara"]));
    assert!(text.contains("step 8: rearrange 7: error:semantic-fail"));
    assert!(text.contains("witness: a = 1, b = 2 - sqrt(2)"));
    assert!(text.contains("stated lhs = -2 + sqrt(2) = -0.585786438"));
    assert_eq!(text.matches(": ok\n").count(), 7);
}

#[test]
fn identities_match_golden_file() {
    let out = tenzan(&["identities"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, golden("identities.txt"));
    assert!(text.ends_with("summary: 12 entries, 7 match, 3 match up to sign, 2 disagree\n"));
}

#[test]
fn structured_identities_have_one_record_per_entry() {
    let text = stdout(&tenzan(&["--format", "structured", "identities"]));
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.iter().filter(|r| r["record"] == "identity").count(), 12);
    let summary = records.last().unwrap();
    assert_eq!(summary["record"], "summary");
    assert_eq!(summary["disagrees"], 2);
}

#[test]
fn structured_check_ends_with_a_summary() {
    let out = tenzan(&["--format", "structured", "check", "corpus:katayamahiko-ohara"]);
    let records: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 9);
    let last = &records[8];
    assert_eq!(last["record"], "summary");
    assert_eq!(last["ok"], 7);
    assert_eq!(last["errors"], 1);
    assert_eq!(last["pass"], false);
    let failing = &records[7];
    assert_eq!(failing["verdict"], "error:semantic-fail");
    assert_eq!(failing["witness"]["bindings"]["b"], "2 - sqrt(2)");
    assert_eq!(failing["difference"], "-2*b");
}

#[test]
fn ascii_flag_keeps_output_ascii() {
    for args in [
        &["--ascii", "check", "corpus:katayamahiko-ohara"][..],
        &["--ascii", "identities"],
        &["--ascii", "units", "0.5857"],
        &["--ascii", "render", "--style", "all", "2*a - sqrt(2)*a"],
        &["--ascii", "--format", "structured", "check", "corpus:rule-examples"],
    ] {
        let out = tenzan(args);
        assert!(stdout(&out).is_ascii(), "{args:?}");
    }
    assert_eq!(stdout(&tenzan(&["--ascii", "units", "0.5857"])), "5 bu 8 rin 5 mo\n");
}

#[test]
fn eval_prints_exact_and_decimal_values() {
    let out = tenzan(&["eval", "(2 - sqrt(2))*a", "a=1"]);
    assert_eq!(stdout(&out), "2 - sqrt(2) = 0.585786438\n");
    let out = tenzan(&["--precision", "4", "eval", "b*(sqrt(2) + 1)", "b=sqrt(2)"]);
    assert_eq!(stdout(&out), "2 + sqrt(2) = 3.414\n");
    assert_eq!(stdout(&tenzan(&["eval", "a", "a=0"])), "0\n");
}

#[test]
fn eval_technique_shows_both_readings() {
    let text = stdout(&tenzan(&["eval", "--technique", "a=1"]));
    assert_eq!(
        text,
        "as written: (sqrt(2) - 2)*a = -2 + sqrt(2) = -0.585786438\n\
         with the answer's sign: (2 - sqrt(2))*a = 2 - sqrt(2) = 0.585786438\n"
    );
}

#[test]
fn units_convert_both_ways() {
    assert_eq!(stdout(&tenzan(&["units", "五分八厘五毛"])), "0.585 sun\n");
    assert_eq!(stdout(&tenzan(&["units", "2 - sqrt(2)"])), "五分八厘五毛\n");
    assert_eq!(stdout(&tenzan(&["units", "1"])), "一寸\n");
}

#[test]
fn render_defaults_to_modern() {
    let out = tenzan(&["render", "b*(sqrt(2)+1) - sqrt(2)*a"]);
    assert_eq!(stdout(&out), "b*(sqrt(2) + 1) - sqrt(2)*a\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(tenzan(&["eval", "b", "a=1"]).status.code(), Some(1));
    assert_eq!(tenzan(&["eval", "a +", "a=1"]).status.code(), Some(2));
    let out = tenzan(&["check", "does-not-exist.tzn"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: does-not-exist.tzn"));
    assert_eq!(tenzan(&["check", "corpus:no-such-script"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = tempdir();
    let path = dir.join("bad.tzn");
    std::fs::write(&path, "problem \"x\"\n1: given a == \n").unwrap();
    let out = tenzan(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.tzn:2:14:"), "{}", stderr(&out));
}

#[test]
fn exported_corpus_checks_like_the_bundled_one() {
    let dir = tempdir();
    let out = tenzan(&["export-corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = dir.join("katayamahiko-corrected.tzn");
    let exported = tenzan(&["check", file.to_str().unwrap()]);
    assert_eq!(stdout(&exported), golden("katayamahiko-corrected.txt"));
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 5);
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "tenzan-cli-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
