//! End-to-end contract for the command-line interface: wire formats round
//! trip, the oracle suite is deterministic, malformed inputs exit 2 with a
//! message naming the offender, and domain violations exit 1.

use inertia::cli;
use inertia::groups::SpacetimeAction;
use inertia::sample;
use inertia::spacetime::Event;
use serde_json::{Value, json};
use std::fs;
use std::path::PathBuf;

fn test_dir(name: &str) -> PathBuf {
    let mut dir = std::env::temp_dir();
    dir.push(format!("inertia-cli-contract-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows<const N: usize>(m: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
    (0..N).map(|r| (0..N).map(|c| m(r, c)).collect()).collect()
}

#[test]
fn round_trip_one_hundred_elements() {
    let dir = test_dir("round-trip");
    let mut rng = sample::rng(2026);

    // Identity files for each family, used to force a full emit cycle.
    let id_a = dir.join("id-a.json");
    fs::write(&id_a, r#"{"A":[[1,0,0],[0,1,0],[0,0,1]],"C":[0,0,0],"e":0}"#).unwrap();
    let id_p = dir.join("id-p.json");
    fs::write(&id_p, r#"{"L":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"C":[0,0,0,0]}"#)
        .unwrap();

    for index in 0..34 {
        let g = sample::aristotle(&mut rng);
        let a = g.rotation().matrix();
        let file = dir.join(format!("a-{index}.json"));
        fs::write(
            &file,
            json!({
                "A": rows::<3>(|r, c| a[(r, c)]),
                "C": [g.translation().x, g.translation().y, g.translation().z],
                "e": g.time_translation(),
            })
            .to_string(),
        )
        .unwrap();
        check_round_trip("aristotle", &file, &id_a, &dir, index, |q| g.act_event(q), &mut rng);
    }
    for index in 0..33 {
        let g = sample::galilei(&mut rng);
        let a = g.rotation().matrix();
        let file = dir.join(format!("g-{index}.json"));
        fs::write(
            &file,
            json!({
                "A": rows::<3>(|r, c| a[(r, c)]),
                "B": [g.boost_velocity().x, g.boost_velocity().y, g.boost_velocity().z],
                "C": [g.translation().x, g.translation().y, g.translation().z],
                "e": g.time_translation(),
            })
            .to_string(),
        )
        .unwrap();
        check_round_trip("galilei", &file, &id_a, &dir, index, |q| g.act_event(q), &mut rng);
    }
    for index in 0..33 {
        let p = sample::poincare(&mut rng);
        let l = p.lorentz().matrix();
        let file = dir.join(format!("p-{index}.json"));
        fs::write(
            &file,
            json!({
                "L": rows::<4>(|r, c| l[(r, c)]),
                "C": [
                    p.translation().x,
                    p.translation().y,
                    p.translation().z,
                    p.translation().w,
                ],
            })
            .to_string(),
        )
        .unwrap();
        check_round_trip("poincare", &file, &id_p, &dir, index, |q| p.act_event(q), &mut rng);
    }

    fs::remove_dir_all(&dir).ok();
}

fn check_round_trip(
    family: &str,
    file: &std::path::Path,
    identity: &std::path::Path,
    dir: &std::path::Path,
    index: usize,
    expected: impl Fn(Event) -> Event,
    rng: &mut rand_chacha::ChaCha8Rng,
) {
    let (code, emitted, err) = run(&[
        "inertia",
        "compose",
        family,
        file.to_str().unwrap(),
        identity.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "compose {family} #{index}: {err}");
    let reparsed = dir.join(format!("{family}-{index}-echo.json"));
    fs::write(&reparsed, emitted.trim()).unwrap();

    let q = sample::event(rng, 5.0);
    let (code, acted, err) = run(&[
        "inertia",
        "act",
        family,
        reparsed.to_str().unwrap(),
        "--event",
        &format!("{},{},{},{}", q.x, q.y, q.z, q.t),
    ]);
    assert_eq!(code, 0, "act {family} #{index}: {err}");
    let image: Event = serde_json::from_str(acted.trim()).unwrap();
    let want = expected(q);
    let scale = 1.0 + want.spatial().norm() + want.t.abs();
    assert!(
        (image - want).euclidean_norm() <= 1e-12 * scale,
        "{family} #{index}: action after round trip drifted"
    );
}

#[test]
fn verify_is_deterministic_and_passes() {
    let (code, first, _) = run(&["inertia", "verify", "--seed", "42"]);
    assert_eq!(code, 0, "verify fails:\n{first}");
    let (code, second, _) = run(&["inertia", "verify", "--seed", "42"]);
    assert_eq!(code, 0);
    assert_eq!(first, second, "same seed, same bytes");

    // Eleven oracles, one JSON line each, every verdict a pass.
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 11);
    for line in lines {
        let report: Value = serde_json::from_str(line).unwrap();
        assert_eq!(report["verdict"], "pass", "{line}");
        assert!(report["name"].is_string());
    }

    let (code, text, _) = run(&["inertia", "--format", "text", "verify", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|line| line.starts_with("pass")));
}

#[test]
fn malformed_inputs_exit_two_and_name_the_field() {
    let dir = test_dir("malformed");
    let event = ["--event", "0,0,0,0"];

    // Missing required field.
    let path = dir.join("missing-a.json");
    fs::write(&path, r#"{"C":[0,0,0],"e":0}"#).unwrap();
    let (code, _, err) = run(&["inertia", "act", "aristotle", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains('A'), "names the missing field: {err}");

    // Unknown field.
    let path = dir.join("unknown-field.json");
    fs::write(
        &path,
        r#"{"L":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"C":[0,0,0,0],"Z":1}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["inertia", "act", "poincare", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 2);
    assert!(err.contains('Z'), "names the unknown field: {err}");

    // Out-of-range sign value.
    let path = dir.join("bad-sign.json");
    fs::write(&path, r#"{"A":[[1,0,0],[0,1,0],[0,0,1]],"C":[0,0,0],"e":0,"sign":2}"#).unwrap();
    let (code, _, err) = run(&["inertia", "act", "aristotle", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 2);
    assert!(err.contains("sign"), "names the sign field: {err}");

    // Truncated JSON.
    let path = dir.join("truncated.json");
    fs::write(&path, r#"{"A":[[1,0,0],[0,1,"#).unwrap();
    let (code, _, err) = run(&["inertia", "act", "aristotle", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 2, "{err}");

    // Wrong arity and junk in comma lists.
    let path = dir.join("identity.json");
    fs::write(&path, r#"{"A":[[1,0,0],[0,1,0],[0,0,1]],"C":[0,0,0],"e":0}"#).unwrap();
    let (code, _, err) = run(&["inertia", "act", "aristotle", path.to_str().unwrap(), "--event", "1,2,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("event"), "names the flag: {err}");
    let (code, _, err) =
        run(&["inertia", "classify", "galilean", "--direction", "1,2,x,4"]);
    assert_eq!(code, 2);
    assert!(err.contains("direction"), "names the flag: {err}");

    // CSV with a missing column, then one with time running backwards.
    let path = dir.join("short-row.csv");
    fs::write(&path, "t,x,y,z\n0,0,0\n").unwrap();
    let (code, _, err) = run(&["inertia", "proper-time", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    let path = dir.join("backwards.csv");
    fs::write(&path, "t,x,y,z\n0,0,0,0\n2,0,0,0\n1,0,0,0\n").unwrap();
    let (code, _, err) = run(&["inertia", "proper-time", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("increasing"), "{err}");

    // Config problems: unknown key, unreadable file, non-positive tolerance.
    let path = dir.join("bad-config.json");
    fs::write(&path, r#"{"tolernace": 1e-9}"#).unwrap();
    let (code, _, err) = run(&["inertia", "--config", path.to_str().unwrap(), "verify"]);
    assert_eq!(code, 2);
    assert!(err.contains("tolernace"), "{err}");
    let (code, _, _) = run(&["inertia", "--config", "/no/such/file.json", "verify"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["inertia", "--tolerance=-1", "verify"]);
    assert_eq!(code, 2);
    assert!(err.contains("tolerance"), "{err}");

    // Decompose input that is neither {"L": rows} nor a bare matrix.
    let path = dir.join("short-matrix.json");
    fs::write(&path, "[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
    let (code, _, err) = run(&["inertia", "decompose", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains('L'), "{err}");

    // Clap-level misuse.
    let (code, _, _) = run(&["inertia", "no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["inertia", "--format", "yaml", "verify"]);
    assert_eq!(code, 2);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn domain_violations_exit_one() {
    let dir = test_dir("invalid");
    let event = ["--event", "0,0,0,0"];

    // Well-formed JSON carrying a matrix that fails validation.
    let path = dir.join("shear.json");
    fs::write(&path, r#"{"A":[[1,0.5,0],[0,1,0],[0,0,1]],"C":[0,0,0],"e":0}"#).unwrap();
    let (code, _, err) = run(&["inertia", "act", "aristotle", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 1);
    assert!(err.contains("orthogonal"), "{err}");

    let path = dir.join("not-lorentz.json");
    fs::write(
        &path,
        r#"{"L":[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"C":[0,0,0,0]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["inertia", "act", "poincare", path.to_str().unwrap(), event[0], event[1]]);
    assert_eq!(code, 1);
    assert!(err.contains("Lorentz"), "{err}");
    let (code, _, err) = run(&["inertia", "decompose", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("Lorentz"), "{err}");

    // Formula inputs outside their domain.
    let (code, _, _) = run(&["inertia", "dilate", "--t", "1", "--v", "2"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["inertia", "michelson", "--d", "1", "--beta", "1"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["inertia", "add-velocities", "--v", "0.5", "--w", "1.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("--w"), "{err}");

    // A worldline with a spacelike segment has no proper time.
    let path = dir.join("spacelike.csv");
    fs::write(&path, "t,x,y,z\n0,0,0,0\n1,5,0,0\n").unwrap();
    let (code, _, err) = run(&["inertia", "proper-time", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("spacelike"), "{err}");

    // Superluminal boost for a worldline transform.
    fs::write(&path, "t,x,y,z\n0,0,0,0\n1,0.5,0,0\n").unwrap();
    let (code, _, _) = run(&[
        "inertia",
        "worldline",
        "boost",
        "--beta",
        "1.5,0,0",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);

    fs::remove_dir_all(&dir).ok();
}

#[test]
fn worldline_boost_emits_monotone_csv() {
    let dir = test_dir("worldline");
    let path = dir.join("line.csv");
    fs::write(&path, "t,x,y,z\n0,0,0,0\n1,0.25,0,0\n2,0.5,0.1,0\n").unwrap();
    let (code, out, err) = run(&[
        "inertia",
        "worldline",
        "boost",
        "--beta",
        "0.6,0,0",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,x,y,z"));
    let times: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(times.len(), 3);
    assert!(times.windows(2).all(|w| w[0] < w[1]), "boosted times stay ordered");
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn decompose_reports_the_three_invariants() {
    let dir = test_dir("decompose");
    let path = dir.join("boost.json");
    // A standard boost with speed 0.6 along x: gamma 1.25.
    let g = 1.25;
    let gb = 0.75;
    fs::write(
        &path,
        json!([[g, 0, 0, gb], [0, 1, 0, 0], [0, 0, 1, 0], [gb, 0, 0, g]]).to_string(),
    )
    .unwrap();
    let (code, out, err) = run(&["inertia", "decompose", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let value: Value = serde_json::from_str(out.trim()).unwrap();
    assert!((value["beta"][0].as_f64().unwrap() - 0.6).abs() <= 1e-12);
    assert!((value["a"].as_f64().unwrap() - 1.25).abs() <= 1e-12);
    assert!((value["B"][0][0].as_f64().unwrap() - 0.8).abs() <= 1e-12);
    fs::remove_dir_all(&dir).ok();
}
