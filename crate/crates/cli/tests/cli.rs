use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn valuation_case_passes() {
    let o = spectra(&["case", "valuation"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS psi.map got={0->0,P->0,Q->Q}"));
    assert!(out.contains("SKIP model.maximal_localizing Q k (unasserted)"));
    assert!(out.lines().last().unwrap().contains("fail=0"));
}

#[test]
fn spectrum_lists_three_points_and_five_opens() {
    let o = spectra(&["lattice", "spectrum", &data("valuation.lat")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("point ")).count(), 3);
    assert_eq!(out.lines().filter(|l| l.starts_with("open ")).count(), 5);
}

#[test]
fn non_sober_space_exits_one() {
    let o = spectra(&["space", "sober", &data("notsmalltop.space")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("sober=false"));
}

#[test]
fn antisymmetry_error_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lat");
    std::fs::write(&path, "lattice\nelement a\nelement b\nle a b\nle b a\n").unwrap();
    let o = spectra(&["lattice", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with(&format!("{}:5: ", path.display())), "{err}");
    assert!(err.contains("antisymmetry"));
}

#[test]
fn unknown_label_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.space");
    std::fs::write(&path, "space\npoint x\nopen\nopen x y\n").unwrap();
    let o = spectra(&["space", "sober", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains(":4: unknown label `y`"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn invalid_model_is_a_verdict_for_check_and_an_error_elsewhere() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    std::fs::write(
        &path,
        "model\npoint a\npoint b\nopen\nopen a\nopen a b\nobject R supp a b compact=true\nobject k supp b compact=true\nunit R\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = spectra(&["model", "check", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violation compact object `k`"));
    let o = spectra(&["model", "psi", p]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = spectra(&["space", "dual", "/nonexistent/x.space"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quiet_prints_nothing() {
    let o = spectra(&["--quiet", "space", "sober", &data("notsmalltop.space")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn dot_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for p in [&a, &b] {
        let o = spectra(&[
            "model",
            "psi",
            &data("valuation.model"),
            "--dot",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.matches("-> \"codomain:0\"").count(), 2);
    assert_eq!(text.matches(" -> ").count(), 3);
}

#[test]
fn frame_hasse_diagram_has_five_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.dot");
    let o = spectra(&[
        "lattice",
        "check",
        &data("valuation.lat"),
        "--dot",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.matches(" -> ").count(), 5);
    assert_eq!(
        text.lines()
            .filter(|l| l.trim_end().ends_with("\";") && !l.contains("->"))
            .count(),
        5
    );
}

#[test]
fn noetherian_case_from_poset_file() {
    let o = spectra(&["case", "noetherian", &data("chain2.poset")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS model.sSupp k_z got={m,z} want={m,z}"));
}

#[test]
fn command_matrix_exit_codes() {
    let lat = data("valuation.lat");
    let space = data("valuation.space");
    let nst = data("notsmalltop.space");
    let map = data("inflation.map");
    let model = data("valuation.model");
    let dvr = data("dvr.model");
    let sub = data("subbasis.txt");
    let poset = data("chain2.poset");
    let matrix: Vec<(Vec<&str>, i32)> = vec![
        (vec!["space", "closure", &space, "Q"], 0),
        (vec!["space", "dual", &space], 0),
        (vec!["space", "skula", &space], 0),
        (vec!["space", "sober", &space], 0),
        (vec!["space", "sober", &nst], 1),
        (vec!["space", "td", &space], 0),
        (vec!["space", "gen", &sub], 0),
        (vec!["space", "gen", &sub, "--closed"], 0),
        (vec!["lattice", "check", &lat], 0),
        (vec!["lattice", "primes", &lat], 0),
        (vec!["lattice", "spectrum", &lat], 0),
        (vec!["lattice", "spatial", &lat], 0),
        (vec!["lattice", "heyting", &lat, "loc_m", "loc_Qm"], 0),
        (vec!["lattice", "compact", &lat], 0),
        (vec!["map", "check", &map], 0),
        (vec!["map", "adjoint", &map], 0),
        (vec!["map", "spec", &map], 0),
        (vec!["map", "telescope", &map], 1),
        (vec!["model", "check", &model], 0),
        (vec!["model", "check", &dvr], 0),
        (vec!["model", "support", &model, "k"], 0),
        (vec!["model", "ssmall", &model, "m"], 0),
        (vec!["model", "sbig", &model, "k"], 0),
        (vec!["model", "gamma", &model, "0"], 0),
        (vec!["model", "primes", &model], 0),
        (vec!["model", "psi", &model], 0),
        (vec!["model", "topology", &model], 0),
        (vec!["model", "topology", &model, "--all"], 0),
        (vec!["model", "triangle", &model], 0),
        (vec!["model", "triangle", &dvr], 0),
        (vec!["case", "noetherian", &poset], 0),
        (vec!["case", "valuation"], 0),
    ];
    for (args, code) in matrix {
        let o = spectra(&args);
        assert_eq!(
            o.status.code(),
            Some(code),
            "{args:?}: {}{}",
            stdout(&o),
            stderr(&o)
        );
    }
}

#[test]
fn verb_outputs() {
    let o = spectra(&[
        "lattice",
        "heyting",
        &data("valuation.lat"),
        "loc_m",
        "loc_Qm",
    ]);
    assert_eq!(stdout(&o), "loc_m -> loc_Qm = Dm_A\n");
    let o = spectra(&["map", "adjoint", &data("inflation.map")]);
    assert_eq!(
        stdout(&o),
        "0 -> 0\nD_A -> 1\nDm_A -> s\nloc_Qm -> 0\nloc_m -> 0\nadjunction=verified\n"
    );
    let o = spectra(&["model", "sbig", &data("valuation.model"), "k"]);
    assert_eq!(stdout(&o), "SUPP k = {P}\n");
    let o = spectra(&["model", "support", &data("valuation.model"), "k"]);
    assert_eq!(stdout(&o), "sSupp k = {0,P}\n");
    let o = spectra(&["space", "closure", &data("valuation.space"), "Q"]);
    assert_eq!(stdout(&o), "closure {Q}\n");
}
