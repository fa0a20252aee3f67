use std::io::Write;
use std::process::{Command, Output, Stdio};

fn latkit(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut si = child.stdin.take().unwrap();
        si.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("latkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn build_then_info() {
    let m3 = latkit(&["build", "mn", "3"], None);
    assert!(m3.status.success());
    let info = latkit(&["info"], Some(&text(&m3)));
    assert_eq!(info.status.code(), Some(0));
    let out = text(&info);
    assert!(out.contains("simple yes"));
    assert!(out.contains("modular yes"));
    assert!(out.contains("length 2"));
}

#[test]
fn non_lattice_is_a_usage_error() {
    let o = latkit(&["info"], Some("size 3\ncovers 0-2 1-2\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a lattice"));
    let o = latkit(&["info", "/no/such/file"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = latkit(&["frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subspace_build_has_dims_and_dot() {
    let o = latkit(&["build", "sub", "2", "2"], None);
    assert!(text(&o).contains("dims 0 1 1 1 2"));
    let o = latkit(&["--format", "dot", "build", "sub", "3", "2"], None);
    let d = text(&o);
    assert!(d.starts_with("digraph"));
    assert!(d.contains("rankdir=BT"));
}

#[test]
fn con_and_dim() {
    let fc = text(&latkit(&["build", "fig-cel"], None));
    let con = text(&latkit(&["con"], Some(&fc)));
    assert!(con.starts_with("congruences 4\n"));
    let dim = text(&latkit(&["dim"], Some(&fc)));
    assert!(dim.contains("gdim (Z^2, (2,2))"));
    let dim = text(&latkit(&["dim", "-", "0", "1"], Some(&fc)));
    assert!(dim.contains("delta 0 1 :"));
}

#[test]
fn embed_and_variety() {
    let m4 = tmp("m4.txt", &text(&latkit(&["build", "mn", "4"], None)));
    let m5 = tmp("m5.txt", &text(&latkit(&["build", "mn", "5"], None)));
    let sub = tmp("sub33.txt", &text(&latkit(&["build", "sub", "3", "3"], None)));
    let (m4, m5, sub) = (m4.to_str().unwrap(), m5.to_str().unwrap(), sub.to_str().unwrap());
    assert!(text(&latkit(&["embed", m4, sub], None)).starts_with("embedding found"));
    assert!(text(&latkit(&["embed", m5, sub], None)).starts_with("embedding none"));
    let v = text(&latkit(&["variety", m4, "--gen", sub], None));
    assert!(v.starts_with("member yes"));
    assert!(v.contains("factor 0 sublattice"));
    let v = text(&latkit(&["variety", m5, "--gen", sub], None));
    assert!(v.starts_with("member no"));
    let o = latkit(&["--cap", "10", "variety", m4, "--gen", sub], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn diagram_commands() {
    let a = text(&latkit(&["diagram", "an", "3"], None));
    let p = tmp("a3.txt", &a);
    let p = p.to_str().unwrap();
    let c = latkit(&["diagram", "check", p], None);
    assert!(c.status.success());
    assert!(text(&c).contains("lifts-con-a yes"));
    let e = text(&latkit(&["diagram", "extract", p], None));
    assert!(e.contains("embedding 0 1 2 3 4"));
}

#[test]
fn support_commands() {
    let k = text(&latkit(&["support", "kernel", "3", "2", "1,_,0"], None));
    assert!(k.starts_with("kernel 4\n"));
    let nc = text(&latkit(&["support", "normcover", "3", "2"], None));
    assert!(nc.contains("elements 27"));
    assert!(nc.contains("extreme-by-definition yes"));
    let t = tmp("pairs.txt", "0 1 : 2\n0 2 : 1\n1 2 : 0\n");
    let f = text(&latkit(&["support", "freeset", "3", "3", "--table", t.to_str().unwrap()], None));
    assert_eq!(f, "free none\n");
    let f = text(&latkit(&["support", "freeset", "5", "3"], None));
    assert_eq!(f, "free 0 1 2\n");
}

#[test]
fn verify_table() {
    let o = latkit(&["verify", "--check", "sub-plane-is-mn", "--lemma", "chain-cpe"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("PASS chain-cpe"));
    assert!(lines[1].starts_with("PASS sub-plane-is-mn"));
    let o = latkit(&["verify", "--check", "nope"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = latkit(&["verify", "--list"], None);
    assert_eq!(text(&o).lines().count(), 11);
}
