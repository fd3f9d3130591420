use std::io::Write;
use std::process::{Command, Output, Stdio};

fn turanpack(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_turanpack"))
        .args(args)
        .env_remove("TURANPACK_GUARD_N")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn resolve_reads_graph6_from_stdin() {
    let j = turanpack(&["construct", "J", "--p", "3", "--s", "3", "--format", "graph6"], None);
    assert!(j.status.success());
    let out = turanpack(&["resolve", "--p", "3"], Some(&stdout(&j)));
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"outcome\":\"certificate\""));
}

#[test]
fn edge_lists_are_accepted() {
    let out = turanpack(&["pack", "--k", "2", "--p", "2", "--mode", "clique"], Some("0 1\n2 3\n"));
    assert!(stdout(&out).contains("\"outcome\":\"witness\""));
}

#[test]
fn exit_codes() {
    let k9 = "n 14\n".to_string()
        + &(0..9).flat_map(|u| (u + 1..9).map(move |v| format!("{u} {v}\n"))).collect::<String>();
    let out = turanpack(&["resolve", "--p", "3"], Some(&k9));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Δ=8"));
    assert_eq!(turanpack(&["oracle", "K3", "--n", "9"], None).status.code(), Some(3));
    let cycle = (0..70).map(|v| format!("{v} {}\n", (v + 1) % 70)).collect::<String>();
    assert_eq!(turanpack(&["pack", "--k", "2", "--p", "3"], Some(&cycle)).status.code(), Some(3));
    assert_eq!(turanpack(&["formula", "4Kp", "--n", "16"], None).status.code(), Some(2));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["probe", "rigidity", "--k", "3", "--p", "3", "--trials", "200", "--seed", "17"];
    let a = turanpack(&args, None);
    let b = turanpack(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let table = ["table", "4Kp", "--n", "12..30", "--p", "3..5", "--format", "csv"];
    assert_eq!(turanpack(&table, None).stdout, turanpack(&table, None).stdout);
}

#[test]
fn guard_comes_from_flag_config_or_environment() {
    let cycle = (0..20).map(|v| format!("{v} {}\n", (v + 1) % 20)).collect::<String>();
    let args = ["pack", "--k", "2", "--p", "3"];
    assert!(turanpack(&args, Some(&cycle)).status.success());
    let tight = [&args[..], &["--guard-n", "10"]].concat();
    assert_eq!(turanpack(&tight, Some(&cycle)).status.code(), Some(3));

    let config = std::env::temp_dir().join(format!("turanpack-cli-{}.conf", std::process::id()));
    std::fs::write(&config, "guard_n = 10\n").unwrap();
    let with_config = [&args[..], &["--config", config.to_str().unwrap()]].concat();
    assert_eq!(turanpack(&with_config, Some(&cycle)).status.code(), Some(3));
    std::fs::remove_file(&config).unwrap();

    let with_env = |extra: &[&str]| {
        let mut child = Command::new(env!("CARGO_BIN_EXE_turanpack"))
            .args(args)
            .args(extra)
            .env("TURANPACK_GUARD_N", "10")
            .stdin(Stdio::piped())
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(cycle.as_bytes()).unwrap();
        child.wait().unwrap().code()
    };
    assert_eq!(with_env(&[]), Some(3));
    assert_eq!(with_env(&["--guard-n", "64"]), Some(0));
}

#[test]
fn construct_writes_graph6_and_descriptor() {
    let dir = std::env::temp_dir().join(format!("turanpack-construct-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hub.g6");
    let out = turanpack(
        &["construct", "hub-join", "--k", "4", "--n", "19", "--p", "3", "--output", path.to_str().unwrap()],
        None,
    );
    assert!(stdout(&out).contains("\"edges\":115"));
    assert!(std::fs::read_to_string(&path).unwrap().trim().len() > 1);
    assert!(std::fs::read_to_string(path.with_extension("json")).unwrap().contains("expected_edges"));
    std::fs::remove_dir_all(dir).unwrap();
}
