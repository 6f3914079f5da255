use std::path::PathBuf;
use std::process::{Command, Output};

fn machine(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "machines", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn lltm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lltm")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn simulate_writer_right() {
    let o = lltm(&["simulate", "--machine", &machine("writer-right.json"), "--left", "0", "--steps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 <\"0\",\"\",0>\n1 <\"10\",\"\",0>\n");
}

#[test]
fn eval_step_matches_the_simulator() {
    for name in ["writer-right.json", "shuttle.json", "stay-flip.json"] {
        for steps in ["1", "2", "3"] {
            let o = lltm(&["eval-step", "--machine", &machine(name), "--left", "01", "--right", "1", "--steps", steps]);
            let text = stdout(&o);
            assert_eq!(o.status.code(), Some(0), "{name} {steps}: {text}");
            assert!(text.ends_with("agree:   yes\n"), "{text}");
        }
    }
}

#[test]
fn eval_step_prints_output_kets() {
    let o = lltm(&["eval-step", "--left", "0"]);
    assert!(stdout(&o).contains("output:  1 * [1 * |>_\"10\"] (x) [1 * |>_\"\"] (x) [1 * |>_0]"));
}

#[test]
fn state_polynomial_sums_over_symbol_and_state() {
    let o = lltm(&["poly", "--component", "state", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"0\": x[1][]*x[3][0] + x[1][0]*x[3][0] + x[1][1]*x[3][0]"));
}

#[test]
fn relstep_polynomials_cover_every_position() {
    let o = lltm(&["poly", "--component", "relstep", "--h", "1", "--machine", &machine("shuttle.json")]);
    let text = stdout(&o);
    for title in ["symbol -2", "symbol -1", "symbol 0", "symbol 1", "symbol 2", "state"] {
        assert!(text.contains(&format!("{title} (degrees")), "{text}");
    }
}

#[test]
fn independence_of_two_bints_at_dim_2() {
    let o = lltm(&["independence", "--bints", "01,10", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("Independent (rank 2)"));
    let cert: serde_json::Value = serde_json::from_str(lines.next().expect("certificate")).expect("json");
    assert_eq!(cert["dim"], 2);
    assert_eq!(cert["seed"], 0);
}

#[test]
fn encode_checks_the_sequent() {
    let o = lltm(&["encode", "--kind", "slist", "--params", "s=2,word=01"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("sequent:  |- (-o (! (-o A A)) (-o (! (-o A A)) (-o A A)))\n"));
    let o = lltm(&["encode", "--kind", "boolstep", "--params", "a=1,b=1,c=1,d=1,p=0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_2() {
    let bad = std::env::temp_dir().join("lltm-partial-machine.json");
    std::fs::write(&bad, r#"{"states":1,"alphabet":2,"moves":"LR","delta":[[0,0,1,0,"R"]]}"#).unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["simulate".into(), "--machine".into(), bad.to_string_lossy().into_owned()],
        vec!["simulate".into(), "--machine".into(), "/nonexistent/machine.json".into()],
        vec!["simulate".into(), "--left".into(), "2".into()],
        vec!["simulate".into(), "--state".into(), "3".into()],
        vec!["encode".into(), "--kind".into(), "step".into(), "--params".into(), "q=1".into()],
        vec!["encode".into(), "--kind".into(), "step".into(), "--params".into(), "p=x".into()],
        vec!["independence".into(), "--bints".into(), "01,2".into()],
        vec!["verify".into(), "--suite".into(), "nine".into()],
        vec!["no-such-command".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(lltm(&a).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_runs_a_named_suite() {
    let o = lltm(&["verify", "--suite", "ket-laws"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("criterion 8 ket-laws: PASS"), "{text}");
    assert!(text.ends_with("1 of 1 criteria passed\n"));
}

#[test]
fn boolstep_and_relstep_differ_off_the_classical_inputs() {
    let o = lltm(&["search-noncommute", "--machine", &machine("shuttle.json"), "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("trial 0: differ (without rotation: agree)"), "{text}");
    assert!(text.ends_with("2 of 2 trials differ\n"));
}

#[test]
fn output_is_identical_across_runs() {
    for args in [
        vec!["independence", "--bints", "0,1,01,10,001", "--dim", "2", "--seed", "7"],
        vec!["search-noncommute", "--trials", "2", "--seed", "3"],
        vec!["poly", "--component", "left", "--seed", "5"],
    ] {
        assert_eq!(stdout(&lltm(&args)), stdout(&lltm(&args)), "{args:?}");
    }
}
