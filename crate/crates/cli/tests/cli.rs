use serde_json::Value;

use bihar_cli::run_cli;

fn run(args: &str) -> (i32, String, String) {
    let mut argv = vec!["bihar".to_string()];
    argv.extend(shell_split(args));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Whitespace split with single-quoted groups.
fn shell_split(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '\'' => quoted = !quoted,
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Checks the stable report schema and returns the parsed document.
fn json(out: &str) -> Value {
    let v: Value = serde_json::from_str(out).expect("valid JSON");
    let obj = v.as_object().expect("object");
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["command", "seed", "status", "steps", "timing_ms"]);
    assert!(v["command"].is_string());
    assert!(["verified", "failed", "error"].contains(&v["status"].as_str().unwrap()));
    assert!(v["timing_ms"].is_u64() && v["seed"].is_u64());
    for s in v["steps"].as_array().unwrap() {
        let mut keys: Vec<&str> = s.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["claim", "name", "paper_ref", "status", "witness"]);
        assert!(s.as_object().unwrap().values().all(Value::is_string));
    }
    v
}

#[test]
fn verify_thm31_json() {
    let (code, out, _) = run("verify thm31 --format json");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["command"], "verify thm31 --format json");
    let sextic = v["steps"].as_array().unwrap().iter().find(|s| s["name"] == "sextic").unwrap();
    assert_eq!(sextic["witness"], "3*k^6 - 9*k^4 + 21*k^2 + 1");
}

#[test]
fn every_target_verifies() {
    for t in ["thm31", "prelim", "beta", "x1f2", "firstpol", "eliminate", "branches"] {
        let (code, out, _) = run(&format!("verify {t} --format json"));
        assert_eq!(code, 0, "{t}");
        assert_eq!(json(&out)["status"], "verified");
    }
}

#[test]
fn verify_all_is_ordered_and_reproducible() {
    let (code, first, _) = run("verify all --format json --seed 5");
    assert_eq!(code, 0);
    let (_, second, _) = run("verify all --format json --seed 5");
    assert_eq!(first, second);
    let v = json(&first);
    assert_eq!(v["seed"], 5);
    let mut groups: Vec<String> = Vec::new();
    for s in v["steps"].as_array().unwrap() {
        let g = s["name"].as_str().unwrap().split('/').next().unwrap().to_string();
        if groups.last() != Some(&g) {
            groups.push(g);
        }
    }
    assert_eq!(
        groups,
        ["thm31", "prelim", "beta", "x1f2", "firstpol", "eliminate", "branches", "geometry"]
    );
}

#[test]
fn check_sphere() {
    let (code, out, _) = run("check sphere --m 3 --a2 1/2 --c 1");
    assert_eq!(code, 0);
    assert!(out.contains("proper biharmonic, defect 0"));
    assert!(out.contains("hypersphere S^3(1/sqrt 2)"));
    let (code, out, _) = run("check sphere --m 3 --a2 1/3 --format json");
    assert_eq!(code, 1);
    assert_eq!(json(&out)["status"], "failed");
}

#[test]
fn check_torus() {
    let (code, out, _) = run("check torus --m1 1 --m2 2 --r1sq 1/2 --format json");
    assert_eq!(code, 0);
    let v = json(&out);
    let steps = v["steps"].as_array().unwrap();
    assert!(steps[0]["witness"].as_str().unwrap().contains("|A|^2 = 3, |H|^2 = 1/9, |H| = 1/3"));
    assert!(steps[2]["witness"].as_str().unwrap().starts_with("s = 4,"));
    let (code, out, _) = run("check torus --m1 1 --m2 1 --r1sq 1/2");
    assert_eq!(code, 1);
    assert!(out.contains("minimal, defect 0"));
}

#[test]
fn check_from_config_file() {
    let path = std::env::temp_dir().join(format!("bihar-instance-{}.txt", std::process::id()));
    std::fs::write(&path, "# the (1, 2) torus\nvariant = torus\nm1 = 1\nm2 = 2\nr1_sq = 1/2\n").unwrap();
    let (code, out, _) = run(&format!("check torus --config {}", path.display()));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("Clifford torus S^1(1/sqrt 2) x S^2(1/sqrt 2)"));
    let (code, _, err) = run("check torus --config /nonexistent/instance.txt");
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/instance.txt"));
}

#[test]
fn obstruction() {
    let (code, out, _) = run("check obstruction --c 0 --format json");
    assert_eq!(code, 0);
    assert!(out.contains("|A|^2 = 0"));
    let (code, out, _) = run("check obstruction --c -1");
    assert_eq!(code, 0);
    assert!(out.contains("|A|^2 = -3"));
    let (code, out, err) = run("check obstruction --c 1 --format json");
    assert_eq!(code, 2);
    assert_eq!(json(&out)["status"], "error");
    assert!(err.contains("Sphere{m=3, a_sq=1/2, c=1}"));
}

#[test]
fn poly_commands() {
    let (code, out, _) = run("poly sturm --var k --poly '3*k^6-9*k^4+21*k^2+1' --lo -inf --hi inf --format json");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["steps"][0]["witness"], "0");
    let (_, out, _) = run("poly sturm --var x --poly '(x-1)*(x-2)*(x+3)' --lo 1 --hi 2 --format json");
    assert_eq!(json(&out)["steps"][0]["witness"], "1");
    let (code, out, _) = run("poly resultant --var x --poly 'x^2 - y' --poly 'x - 2' --format json");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["steps"][0]["witness"], "-y + 4");
    let (code, out, _) = run("poly parse --poly '-(x + 1)^2' --format json");
    assert_eq!(code, 0);
    assert_eq!(json(&out)["steps"][0]["witness"], "-x^2 - 2*x - 1");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "frobnicate",
        "verify",
        "verify bogus",
        "check sphere --m 3 --a2 one_half",
        "check sphere --m 3 --a2 1/0",
        "check sphere --m 3 --a2 3/2",
        "poly parse --poly '(x + 1'",
        "poly sturm --var x --poly 'x^2 - 2' --lo 1 --hi 0",
        "poly sturm --var x --poly 'x^2 - 2' --lo abc",
        "poly resultant --var x --poly 'x^2'",
        "check torus --m1 1 --m2 2 --r1sq 1/2 --c 0",
        "check obstruction --c -2",
        "verify thm31 --format yaml",
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args}");
        assert!(!err.is_empty(), "{args}: no diagnostic");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run("--help");
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn timing_is_opt_in() {
    let (_, out, _) = run("verify x1f2 --format json");
    assert_eq!(json(&out)["timing_ms"], 0);
    let (_, out, _) = run("verify x1f2 --format json --timing");
    assert!(json(&out)["timing_ms"].is_u64());
}

#[test]
fn progress_only_in_text_mode() {
    let (_, _, err) = run("verify eliminate -v");
    assert!(err.contains("running eliminate"));
    let (_, _, err) = run("verify eliminate -v --format json");
    assert!(err.is_empty());
}
