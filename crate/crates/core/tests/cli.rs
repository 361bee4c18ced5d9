use std::path::PathBuf;
use std::process::{Command, Output};

use cwpoly::io::PolygonDocument;
use cwpoly::Rational;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn cw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cw")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn ball_on_triangle_gives_the_hexagon() {
    let out = cw(&["ball", &data("triangle.json"), "--a", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let u: Vec<[String; 2]> = serde_json::from_value(v["u"].clone()).unwrap();
    let expected = [("0", "-1"), ("1", "-1"), ("1", "0"), ("0", "1"), ("-1", "1"), ("-1", "0")];
    let got: Vec<(&str, &str)> = u.iter().map(|[x, y]| (x.as_str(), y.as_str())).collect();
    assert_eq!(got, expected);
}

#[test]
fn central_of_symmetric_hexagon_is_a_point() {
    let out = cw(&["central", &data("sym-hexagon.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degenerate"], Value::Bool(true));
    assert_eq!(v["cusps"], Value::String("degenerate".into()));
}

#[test]
fn verify_reports_every_check_and_the_seed() {
    let out = cw(&["verify", &data("triangle.json"), "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["seed"], 42);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    assert_eq!(ids, cwpoly::verify::CHECK_IDS);
    let barbier = v["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == "cw.barbier").unwrap();
    assert_eq!((barbier["expected"].as_str(), barbier["actual"].as_str()), (Some("3"), Some("3")));
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"vertices": [[0, 0], [1, "x"], [0, 1]]}"#).unwrap();
    let concave = scratch("concave.json");
    std::fs::write(&concave, r#"{"vertices": [[0, 0], [2, 0], [1, 1], [2, 2], [0, 2]]}"#).unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["verify", &data("octagon.json")], 0),
        (&["iterate", &data("triangle.json"), "--backend", "float"], 0),
        (&["verify", "/definitely/not/here.json"], 2),
        (&["verify", bad.to_str().unwrap()], 2),
        (&["central", concave.to_str().unwrap()], 2),
        (&["ball", &data("triangle.json"), "--a", "-1"], 2),
        (&["dual", &data("triangle.json")], 2),
        (&["verify", &data("non-cw-hexagon.json")], 3),
    ];
    for (args, code) in cases {
        let out = cw(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn distinct_messages_for_distinct_input_errors() {
    let concave = scratch("concave2.json");
    std::fs::write(&concave, r#"{"vertices": [[0, 0], [2, 0], [1, 1], [2, 2], [0, 2]]}"#).unwrap();
    let missing = cw(&["central", "/definitely/not/here.json"]);
    let convex = cw(&["central", concave.to_str().unwrap()]);
    let m1 = String::from_utf8_lossy(&missing.stderr).to_string();
    let m2 = String::from_utf8_lossy(&convex.stderr).to_string();
    assert!(m1.contains("cannot read"), "{m1}");
    assert!(m2.contains("not convex"), "{m2}");
}

#[test]
fn svg_is_deterministic_and_layered() {
    let (a, b) = (scratch("a.svg"), scratch("b.svg"));
    for path in [&a, &b] {
        let out = cw(&["verify", &data("triangle.json"), "--svg", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let text = String::from_utf8(sa).unwrap();
    for id in ["polygon-p", "ball-u", "dual-v", "central-m", "evolute-e", "involute-n"] {
        assert_eq!(text.matches(&format!("id=\"{id}\"")).count(), 1, "{id}");
    }
}

#[test]
fn octagon_figure_layers() {
    let path = scratch("oct.svg");
    let out = cw(&["central", &data("octagon.json"), "--c", "1", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let ids: Vec<&str> = text.match_indices("id=\"").map(|(i, _)| text[i + 4..].split('"').next().unwrap()).collect();
    assert_eq!(ids, ["polygon-p", "equidistant-c", "central-m"]);
    // Two traced octagons and a thick quadrangle.
    let counts: Vec<usize> = text
        .lines()
        .filter(|l| l.contains("<polygon points"))
        .map(|l| l.split("points=\"").nth(1).unwrap().split_whitespace().count())
        .collect();
    assert_eq!(counts, [8, 8, 4]);
}

#[test]
fn iterate_writes_trace_csv() {
    let csv = scratch("trace.csv");
    let out = cw(&["iterate", &data("triangle.json"), "--steps", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,SA_M,SA_N,diameter");
    assert!(lines[1].starts_with("0,1/4,1,"));
    assert!(lines[2].starts_with("1,1/64,1/16,"));
    assert_eq!(lines.len(), 6);
}

#[test]
fn json_round_trip() {
    let input = data("octagon.json");
    let out = cw(&["ball", &input]);
    let echoed: PolygonDocument = serde_json::from_value(json(&out)["polygon"].clone()).unwrap();
    let original = PolygonDocument::read(std::path::Path::new(&input)).unwrap();
    assert_eq!(echoed.points::<Rational>().unwrap(), original.points::<Rational>().unwrap());
    assert_eq!(echoed.name, original.name);
}

#[test]
fn out_flag_writes_the_same_json() {
    let path = scratch("out.json");
    let direct = cw(&["evolute", &data("octagon.json")]);
    let filed = cw(&["evolute", &data("octagon.json"), "--out", path.to_str().unwrap()]);
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}
