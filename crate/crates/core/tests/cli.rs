use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use digraph_pfd::io::{parse_edge_list, parse_edge_lists, parse_factorization, FactorizationJson};
use digraph_pfd::{is_isomorphic, Digraph, ProductKind};

fn dpfd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpfd")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
    p2: PathBuf,
    c3: PathBuf,
}

fn fixture() -> Fixture {
    let dir = TempDir::new().unwrap();
    let p2 = write(dir.path(), "p2.txt", "2 1\n0 1\n");
    let c3 = write(dir.path(), "c3.txt", "3 3\n0 1\n1 2\n2 0\n");
    Fixture { dir, p2, c3 }
}

#[test]
fn product_then_factor_round_trips() {
    let fx = fixture();
    let product = fx.dir.path().join("g.txt");
    let out = dpfd(&["product", "--kind", "strong", s(&fx.p2), s(&fx.c3), "-o", s(&product)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&product).unwrap();
    assert!(text.contains("# coord 5 1 2"));
    let g = parse_edge_list(&text).unwrap();
    assert_eq!(g.vertex_count(), 6);

    let out = dpfd(&["factor", s(&product)]);
    assert!(out.status.success());
    let f = parse_factorization(&stdout(&out)).unwrap();
    assert_eq!(f.factors.len(), 2);
    assert!(f.reconstructs(&g, ProductKind::Strong));

    let out = dpfd(&["factor", s(&product), "--json"]);
    let json: FactorizationJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json.to_factorization().unwrap(), f);

    let dir = fx.dir.path().join("factors");
    assert!(dpfd(&["factor", s(&product), "--out-dir", s(&dir)]).status.success());
    let rebuilt = fx.dir.path().join("rebuilt.txt");
    let out = dpfd(&[
        "product",
        "--kind",
        "strong",
        s(&dir.join("factor_0.txt")),
        s(&dir.join("factor_1.txt")),
        "-o",
        s(&rebuilt),
    ]);
    assert!(out.status.success());
    assert!(dpfd(&["iso", s(&product), s(&rebuilt)]).status.success());
}

#[test]
fn iso_exit_codes() {
    let fx = fixture();
    let relabeled = write(fx.dir.path(), "c3r.txt", "3 3\n2 1\n1 0\n0 2\n");
    let out = dpfd(&["iso", s(&fx.c3), s(&relabeled)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "isomorphic\n");
    let path3 = write(fx.dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    assert_eq!(dpfd(&["iso", s(&fx.c3), s(&path3)]).status.code(), Some(1));
}

#[test]
fn skeleton_of_non_thin_input_points_to_quotient() {
    let fx = fixture();
    let k2 = write(fx.dir.path(), "k2.txt", "2 2\n0 1\n1 0\n");
    let out = dpfd(&["skeleton", s(&k2)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quotient"));

    let out = dpfd(&["quotient", s(&k2)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 0\n# mult 0 2\n# class 0 0 1\n");
}

#[test]
fn skeleton_witnesses_and_dot() {
    let fx = fixture();
    let square = write(fx.dir.path(), "sq.txt", "4 5\n0 1\n0 2\n0 3\n1 3\n2 3\n");
    let out = dpfd(&["skeleton", s(&square), "--witnesses"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("4 4\n0 1\n0 2\n1 3\n2 3\n"));
    assert!(text.contains("# witness 0 3 D1 z=1"));
    let exhaustive = dpfd(&["skeleton", s(&square), "--witnesses", "--exhaustive-z"]);
    assert_eq!(stdout(&exhaustive), text);

    let out = dpfd(&["skeleton", s(&square), "--dot"]);
    assert!(stdout(&out).contains("0 -> 3 [style=dashed];"));
    let out = dpfd(&["dot", s(&fx.p2)]);
    assert_eq!(stdout(&out), "digraph G {\n  0;\n  1;\n  0 -> 1;\n}\n");
}

#[test]
fn generators_are_deterministic() {
    let a = dpfd(&["gen", "--model", "thin", "--n", "4..9", "--seed", "11", "--count", "3"]);
    let b = dpfd(&["gen", "--model", "thin", "--n", "4..9", "--seed", "11", "--count", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(parse_edge_lists(&stdout(&a)).unwrap().len(), 3);

    let out = dpfd(&["gen", "--model", "product", "--n", "2..4", "--seed", "3", "--factors", "2"]);
    let g = parse_edge_list(&stdout(&out)).unwrap();
    assert!(g.is_connected());
    let prime = dpfd(&["gen", "--model", "prime", "--n", "5", "--seed", "1"]);
    assert_eq!(parse_edge_list(&stdout(&prime)).unwrap().vertex_count(), 5);
}

#[test]
fn oracle_factor_mirrors_factor() {
    let fx = fixture();
    let product = fx.dir.path().join("g.txt");
    dpfd(&["product", "--kind", "strong", s(&fx.p2), s(&fx.p2), "-o", s(&product)]);
    let fast = parse_factorization(&stdout(&dpfd(&["factor", s(&product)]))).unwrap();
    let slow = parse_factorization(&stdout(&dpfd(&["oracle-factor", s(&product)]))).unwrap();
    assert_eq!(fast.canonical_factors().unwrap(), slow.canonical_factors().unwrap());
    let out = dpfd(&["oracle-factor", s(&product), "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cartesian_kind() {
    let fx = fixture();
    let product = fx.dir.path().join("g.txt");
    dpfd(&["product", "--kind", "cartesian", s(&fx.p2), s(&fx.c3), "-o", s(&product)]);
    let out = dpfd(&["factor", s(&product), "--kind", "cartesian"]);
    let f = parse_factorization(&stdout(&out)).unwrap();
    let g = parse_edge_list(&fs::read_to_string(&product).unwrap()).unwrap();
    assert!(f.reconstructs(&g, ProductKind::Cartesian));
    assert!(is_isomorphic(&f.factors[0], &Digraph::directed_path(2)).unwrap() || f.factors[0].vertex_count() == 3);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(dpfd(&["factor"]).status.code(), Some(2));
    assert_eq!(dpfd(&["product", "--kind", "direct", "x"]).status.code(), Some(2));
    assert_eq!(dpfd(&["gen", "--model", "thin", "--n", "9..2", "--seed", "1"]).status.code(), Some(2));
    let fx = fixture();
    let bad = write(fx.dir.path(), "bad.txt", "2 1\n0 0\n");
    let out = dpfd(&["factor", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(dpfd(&["factor", "/nonexistent/file"]).status.code(), Some(1));
}
