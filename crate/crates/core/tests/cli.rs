//! End-to-end runs of the `hlanti` binary.

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::q;
use hlanti::corpus::{derived_extension_xmod, k3, trivial_split_xmod};
use hlanti::io::{emit, load, Bundle};
use hlanti::xmod::identity_xmod;

fn hlanti(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hlanti"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn k3_example_validates() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k3.json");
    let (code, _, _) = hlanti(&["example", "k3", "--param", "mu=2", "-o", s(&f)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&f).unwrap();
    // ε·ε = ε, ε·a = a, ε·b = ¼b, [a,b] = ½ε, β = diag(2, ½).
    for needle in [r#""1""#, r#""1/4""#, r#""1/2""#] {
        assert!(text.contains(needle), "{needle}");
    }
    assert_eq!(hlanti(&["validate", s(&f)]).0, 0);
}

#[test]
fn mutated_k3_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let text = emit(&Bundle::Algebra(k3(&q("2")).unwrap()));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // ε·a = a becomes ε·a = 3a.
    let mut doc2 = doc.clone();
    assert_eq!(doc2["even_odd"][0], serde_json::json!([0, 0, 0, "1"]));
    doc2["even_odd"][0][3] = serde_json::json!("3");
    let f = write(dir.path(), "bad.json", &doc2.to_string());
    let (code, out, _) = hlanti(&["validate", s(&f)]);
    assert_eq!(code, 1);
    assert!(out.lines().filter(|l| l.contains("witness=")).count() >= 1);

    // Rescaling the bracket keeps the algebra valid (every identity is
    // linear in the bracket).
    let mut doc3 = doc.clone();
    doc3["odd_odd"][0][3] = serde_json::json!("1");
    let f = write(dir.path(), "scaled.json", &doc3.to_string());
    assert_eq!(hlanti(&["validate", s(&f)]).0, 0);
}

#[test]
fn malformed_input_exits_2_and_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        r#"{"kind":"algebra","name":"x","dim_even":1,"dim_odd":0,"alpha":[["1","0"],["0","1"]],"beta":[]}"#,
    );
    let (code, _, err) = hlanti(&["validate", s(&f)]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha"), "{err}");
    let f = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(hlanti(&["validate", s(&f)]).0, 2);
    assert_eq!(hlanti(&["cocycle"]).0, 2);
}

#[test]
fn m4_semidirect_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let act = dir.path().join("act.json");
    let sd = dir.path().join("sd.json");
    assert_eq!(
        hlanti(&["example", "m4", "--param", "mu=2", "-o", s(&act)]).0,
        0
    );
    assert_eq!(hlanti(&["check-action", s(&act)]).0, 0);
    assert_eq!(hlanti(&["semidirect", s(&act), "-o", s(&sd)]).0, 0);
    assert_eq!(hlanti(&["validate", s(&sd)]).0, 0);
    let Bundle::Algebra(a) = load(&std::fs::read_to_string(&sd).unwrap()).unwrap() else {
        panic!("semidirect writes an algebra");
    };
    assert_eq!((a.dim_even, a.dim_odd), (2, 5));

    let cat1 = dir.path().join("cat1.json");
    assert_eq!(
        hlanti(&[
            "example",
            "m4",
            "--param",
            "mu=2",
            "--part",
            "cat1",
            "-o",
            s(&cat1)
        ])
        .0,
        0
    );
    assert_eq!(hlanti(&["check-cat1", s(&cat1)]).0, 0);
    let (code, out, _) = hlanti(&["example", "m4", "--param", "mu=2", "--part", "all"]);
    assert_eq!(code, 0);
    let docs: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    let kinds: Vec<&str> = docs.iter().map(|d| d["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["algebra", "algebra", "action", "xmod", "cat1"]);
}

#[test]
fn xmod_cat1_round_trip_with_iso_check() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(
        dir.path(),
        "x.json",
        &emit(&Bundle::Xmod(identity_xmod(&k3(&q("2")).unwrap()))),
    );
    let c = dir.path().join("c.json");
    let y = dir.path().join("y.json");
    assert_eq!(hlanti(&["check-xmod", s(&x)]).0, 0);
    assert_eq!(hlanti(&["xmod2cat1", s(&x), "-o", s(&c)]).0, 0);
    assert_eq!(hlanti(&["check-cat1", s(&c)]).0, 0);
    let (code, out, _) = hlanti(&["cat12xmod", s(&c), "-o", s(&y), "--iso-check"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(hlanti(&["check-xmod", s(&y)]).0, 0);
}

#[test]
fn cocycle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let triv = write(
        dir.path(),
        "t.json",
        &emit(&Bundle::Xmod(trivial_split_xmod().unwrap())),
    );
    assert_eq!(
        hlanti(&["cocycle-diff", s(&triv), "--seed-a", "3", "--seed-b", "8"]).0,
        0
    );

    let x = write(
        dir.path(),
        "d.json",
        &emit(&Bundle::Xmod(derived_extension_xmod().unwrap())),
    );
    let h = dir.path().join("h.json");
    let ext = dir.path().join("e.json");
    let (code, out, _) = hlanti(&[
        "cocycle",
        s(&x),
        "--seed",
        "2",
        "-o",
        s(&h),
        "--extension-out",
        s(&ext),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("h3:nonzero"), "{out}");
    let Bundle::Cochain3 { seed, cochain } = load(&std::fs::read_to_string(&h).unwrap()).unwrap()
    else {
        panic!("cocycle writes a degree-3 cochain");
    };
    assert_eq!(seed, Some(2));
    assert!(!cochain.is_zero());
    assert_eq!(hlanti(&["cocycle-diff", s(&ext), "--seed-b", "5"]).0, 0);
    assert_eq!(
        hlanti(&["cocycle-diff", s(&x), "--seed-a", "1", "--seed-b", "2"]).0,
        0
    );
}

#[test]
fn json_report_format() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "k.json",
        &emit(&Bundle::Algebra(k3(&q("3")).unwrap())),
    );
    let (code, out, _) = hlanti(&["validate", s(&f), "--report-format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "report");
    assert_eq!(v["valid"], true);
    let (code, out, _) = hlanti(&["validate", "/nonexistent", "--report-format", "json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "error");
}

#[test]
fn k1_window_table() {
    let (code, out, _) = hlanti(&[
        "example",
        "k1-window",
        "--param",
        "q=4",
        "--param",
        "n_lo=-1",
        "--param",
        "n_hi=1",
        "--param",
        "i_lo=-1/2",
        "--param",
        "i_hi=1/2",
    ]);
    assert_eq!(code, 0);
    let Bundle::K1Table(t) = load(&out).unwrap() else {
        panic!()
    };
    assert!(t.even_odd_half_assoc(0).unwrap().is_empty());
    // [a_½, a_−½] = ½({−½} − {½}) ε₀ = ½(−1/6 − 1/3) ε₀ = −¼ ε₀.
    assert!(t
        .entries
        .iter()
        .any(|e| e.left == q("1/2") && e.right == q("-1/2") && e.coef == q("-1/4")));
    let (code, _, err) = hlanti(&[
        "example",
        "k1-window",
        "--param",
        "q=2",
        "--param",
        "n_lo=-1",
        "--param",
        "n_hi=1",
        "--param",
        "i_lo=-1/2",
        "--param",
        "i_hi=1/2",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("square"), "{err}");
}

#[test]
fn check_rep_and_morphism() {
    use hlanti::hla::HlaMorphism;
    use hlanti::representation::HomModule;
    let dir = tempfile::tempdir().unwrap();
    let k = k3(&q("2")).unwrap();
    let m = write(
        dir.path(),
        "m.json",
        &emit(&Bundle::Module {
            algebra: k.clone(),
            module: HomModule::adjoint(&k),
        }),
    );
    let (code, out, _) = hlanti(&["check-rep", s(&m)]);
    assert_eq!(code, 0);
    assert!(out.contains("direct-sum algebra valid = true"));
    let mut bad = HomModule::adjoint(&k);
    bad.rho1_on_odd = bad.rho1_on_odd.scale(&q("-1"));
    let m = write(
        dir.path(),
        "bad.json",
        &emit(&Bundle::Module {
            algebra: k.clone(),
            module: bad,
        }),
    );
    let (code, out, _) = hlanti(&["check-rep", s(&m)]);
    assert_eq!(code, 1);
    assert!(out.contains("direct-sum algebra valid = false"));

    let mut f = HlaMorphism::identity(&k);
    let id = write(dir.path(), "id.json", &emit(&Bundle::Morphism(f.clone())));
    assert_eq!(hlanti(&["check-morphism", s(&id)]).0, 0);
    f.phi1 = f.phi1.scale(&q("2"));
    let two = write(dir.path(), "two.json", &emit(&Bundle::Morphism(f)));
    assert_eq!(hlanti(&["check-morphism", s(&two)]).0, 1);
}
