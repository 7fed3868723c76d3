mod common;

use std::process::Command;

use argcirc::tasks::SUPPORTED_TASKS;
use common::{fixture_path, golden_path, oracle_golden, read_golden};

fn argcirc(args: &[String]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_argcirc")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn strs(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).collect()
}

/// Set `ARGCIRC_BLESS=1` to rewrite the golden file from the oracle.
#[test]
fn golden_file_agrees_with_oracle() {
    let expected = oracle_golden();
    if std::env::var_os("ARGCIRC_BLESS").is_some() {
        let mut text = String::from("# fixture.format TASK [-a ARG] => accepted outputs, alternatives separated by ` | `\n");
        for c in &expected {
            text.push_str(&c.line());
            text.push('\n');
        }
        std::fs::write(golden_path(), text).unwrap();
    }
    assert_eq!(read_golden(), expected);
}

#[test]
fn binary_matches_golden_file() {
    let cases = read_golden();
    assert!(!cases.is_empty());
    for case in cases {
        let (code, out, err) = argcirc(&case.args());
        assert_eq!(code, 0, "{}: {err}", case.line());
        assert!(err.is_empty(), "{}: stderr {err}", case.line());
        let line = out.strip_suffix('\n').unwrap_or_else(|| panic!("{}: no newline", case.line()));
        assert!(!line.contains('\n'), "{}: multi-line output", case.line());
        assert!(case.accepted.iter().any(|a| a == line), "{}: got {line}", case.line());
    }
}

#[test]
fn documented_examples() {
    let chain = fixture_path("chain", "tgf").display().to_string();
    let self_apx = fixture_path("self", "apx").display().to_string();
    assert_eq!(argcirc(&strs(&["-p", "SE-GR", "-f", &chain, "-fo", "tgf"])).1, "[a,c]\n");
    assert_eq!(argcirc(&strs(&["-p", "DS-ST", "-f", &self_apx, "-fo", "apx", "-a", "a"])).1, "YES\n");
    assert_eq!(argcirc(&strs(&["--formats"])).1, "[tgf,apx]\n");
    assert_eq!(argcirc(&[]).1, format!("argcirc {}\n", env!("CARGO_PKG_VERSION")));
}

#[test]
fn problems_round_trip_through_p() {
    let (code, out, _) = argcirc(&strs(&["--problems"]));
    assert_eq!(code, 0);
    let listed: Vec<&str> = out.trim_end().strip_prefix('[').unwrap().strip_suffix(']').unwrap().split(',').collect();
    let expected: Vec<String> = SUPPORTED_TASKS.iter().map(ToString::to_string).collect();
    assert_eq!(listed, expected);
    let mut_tgf = fixture_path("mut", "tgf").display().to_string();
    for task in listed {
        let mut args = strs(&["-p", task, "-f", &mut_tgf, "-fo", "tgf"]);
        if task.starts_with("DC") || task.starts_with("DS") {
            args.extend(strs(&["-a", "a"]));
        }
        let (code, _, err) = argcirc(&args);
        assert_eq!(code, 0, "{task}: {err}");
    }
}

#[test]
fn unlisted_tasks_are_rejected() {
    let mut_tgf = fixture_path("mut", "tgf").display().to_string();
    for task in ["DC-ID", "CE-GR", "CE-ID", "EE-PR", "SE-ADM", "se-pr"] {
        let (code, out, err) = argcirc(&strs(&["-p", task, "-f", &mut_tgf, "-fo", "tgf", "-a", "a"]));
        assert_eq!(code, 1, "{task}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn failures_exit_one_with_stderr() {
    let mut_tgf = fixture_path("mut", "tgf").display().to_string();
    let dir = std::env::temp_dir().join(format!("argcirc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.tgf");
    std::fs::write(&bad, "a\n#\na b\n").unwrap();
    let bad = bad.display().to_string();
    let cases = [
        strs(&["-p", "DC-PR", "-f", &mut_tgf, "-fo", "tgf"]),
        strs(&["-p", "DC-PR", "-f", &mut_tgf, "-fo", "tgf", "-a", "zz"]),
        strs(&["-p", "SE-PR", "-f", &bad, "-fo", "tgf"]),
        strs(&["-p", "SE-PR", "-f", &mut_tgf, "-fo", "apx"]),
        strs(&["-p", "SE-PR", "-f", &mut_tgf]),
    ];
    for args in cases {
        let (code, out, err) = argcirc(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.starts_with("error:"), "{args:?}: {err}");
    }
    let (_, _, err) = argcirc(&strs(&["-p", "SE-PR", "-f", &bad, "-fo", "tgf"]));
    assert!(err.contains("line 3"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn seed_flag_is_accepted_and_deterministic() {
    let cyc = fixture_path("mut", "apx").display().to_string();
    let args = strs(&["-p", "SE-ST", "-f", &cyc, "-fo", "apx", "--seed", "17"]);
    let first = argcirc(&args);
    assert_eq!(first.0, 0);
    for _ in 0..3 {
        assert_eq!(argcirc(&args), first);
    }
}
