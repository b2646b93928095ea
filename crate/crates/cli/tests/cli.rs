use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kundt(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kundt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const MINKOWSKI: &str = "\
[chart]
coords: u, v, x
[metric]
g(u,v) = 1
g(x,x) = 1
[field V]
components: 1, 0, 0
";

const TWISTING: &str = "\
[chart]
coords: t, x, y, z
[metric]
g(t,t) = -1
g(x,x) = 1
g(y,y) = 1
g(z,z) = 1
[field V]
components: 1, cos(z), sin(z), 0
";

const V_DEPENDENT_H: &str = "\
[chart]
coords: u, v, x
[metric]
g(u,v) = 1
g(x,x) = 1 + v^2
[roles]
u=u, v=v, transverse=x
";

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_temp(&dir, "mink.metric", MINKOWSKI);
    assert_eq!(kundt(&["check", &m], None).status.code(), Some(0));

    let t = write_temp(&dir, "twist.metric", TWISTING);
    let out = kundt(&["check", &t], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).lines().any(|l| l.starts_with("twist_free") && l.ends_with("false")));

    let bad = write_temp(&dir, "bad.metric", "[chart]\ncoords: u, v\n[metric]\ng(u,v) = \n");
    let out = kundt(&["check", &bad], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("line 4"));

    assert_eq!(kundt(&["check", &m, "--field", "W"], None).status.code(), Some(2));
    assert_eq!(kundt(&["check", "/nonexistent/file"], None).status.code(), Some(2));
    let spacelike = MINKOWSKI.replace("components: 1, 0, 0", "components: 0, 0, 1");
    assert_eq!(kundt(&["check", "-"], Some(&spacelike)).status.code(), Some(2));
}

#[test]
fn classify_outputs() {
    let out = kundt(&["catalog", "show", "cahen_wallach"], None);
    let cw = kundt(&["classify", "-"], Some(&text(&out.stdout)));
    assert_eq!(cw.status.code(), Some(0));
    assert_eq!(text(&cw.stdout).lines().next(), Some("CahenWallach, S=[[1,0],[0,1]]"));

    let out = kundt(&["catalog", "show", "siklos"], None);
    let sk = kundt(&["classify", "-"], Some(&text(&out.stdout)));
    assert!(text(&sk.stdout).starts_with("Siklos, H=x1"));

    let vh = kundt(&["classify", "-"], Some(V_DEPENDENT_H));
    assert_eq!(vh.status.code(), Some(2));
    assert!(text(&vh.stderr).contains("∂_v h ≠ 0"));

    assert_eq!(kundt(&["classify", "-"], Some(MINKOWSKI)).status.code(), Some(2));
}

#[test]
fn catalog_commands() {
    let run = kundt(&["catalog", "run"], None);
    assert_eq!(run.status.code(), Some(0), "{}", text(&run.stdout));
    assert!(text(&run.stdout).contains("14/14 entries pass"));

    let list = text(&kundt(&["catalog", "list"], None).stdout);
    assert!(list.lines().next().unwrap().starts_with("minkowski"));

    let show = kundt(&["catalog", "show", "minkowski"], None);
    assert_eq!(kundt(&["check", "-"], Some(&text(&show.stdout))).status.code(), Some(0));

    let p = kundt(&["catalog", "show", "minkowski", "--param", "dim=3"], None);
    assert!(text(&p.stdout).contains("coords: u, v, x1\n"));

    assert_eq!(kundt(&["catalog", "show", "nosuch"], None).status.code(), Some(2));
    assert_eq!(kundt(&["catalog", "show", "minkowski", "--param", "dim=40"], None).status.code(), Some(2));
}

#[test]
fn algebra_files_are_checked() {
    let out = kundt(&["catalog", "show", "oscillator"], None);
    let r = kundt(&["check", "-"], Some(&text(&out.stdout)));
    assert_eq!(r.status.code(), Some(0));
    assert!(text(&r.stdout).contains("algebraic_kundt"));
}

#[test]
fn json_reports_are_stable() {
    let args = ["check", "-", "--json", "--seed", "5", "--box=-1,1"];
    let a = kundt(&args, Some(TWISTING));
    let b = kundt(&args, Some(TWISTING));
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&a), strip(&b));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["box"], serde_json::json!([-1.0, 1.0]));
    assert_eq!(v["congruence"]["twist_free"], false);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}
