use std::process::{Command, Output};

fn virfuse(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_virfuse"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fuse_examples() {
    let o = virfuse("fuse --p 3 L:1,2 L:1,2 --format json");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"p":3,"summands":[{"kind":"L","r":1,"s":1,"mult":1},{"kind":"L","r":1,"s":3,"mult":1}]}"#
    );
    let o = virfuse("fuse --p 2 L:1,1 P:5,1 --format json");
    assert_eq!(
        stdout(&o).trim(),
        r#"{"p":2,"summands":[{"kind":"P","r":5,"s":1,"mult":1}]}"#
    );
}

#[test]
fn verify_small_sweep() {
    let o = virfuse("verify --p 2 --rmax 6 --jobs 2");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("0 failures / "), "{last}");
}

#[test]
fn json_is_deterministic() {
    for cmd in [
        "verify --p 3 --rmax 3 --format json",
        "zhu --p 4 L:1,2 L:2,3 --format json",
        "gram --p 3 L:2,1 3 --format json",
        "bpz --p 5 --format json",
    ] {
        let a = virfuse(cmd);
        let b = virfuse(cmd);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        serde_json::from_str::<serde_json::Value>(stdout(&a).lines().next().unwrap()).unwrap();
    }
}

#[test]
fn domain_errors_exit_one() {
    for cmd in [
        "fuse --p 3 L:0,1 L:1,1",
        "fuse --p 1 L:1,1 L:1,1",
        "dim --p 3 L:1",
        "ss --p 3 L:1,3 L:1,1",
        "restrict --p 3 W:3,1",
        "fuse --p 3 L:1,2 W:1,2",
        "transmogrify --p 3",
    ] {
        let o = virfuse(cmd);
        assert_eq!(o.status.code(), Some(1), "{cmd}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{cmd}: {err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_names_theorems() {
    let expect = [
        ("fuse", "fusion rules theorem"),
        ("dim", "Categorical dimension theorem"),
        ("loewy", "projective covers"),
        ("zhu", "Zhu algebra bimodule theorem"),
        ("singular", "Feigin-Fuchs embedding theorem"),
        ("gram", "Kac determinant formula"),
        ("chain", "Feigin-Fuchs embedding theorem"),
        ("induce", "Induction theorem"),
        ("restrict", "Decomposition theorem"),
        ("ss", "Semisimplification theorem"),
        ("verify", "Fusion ring consistency"),
        ("bpz", "Rigidity theorem"),
    ];
    for (verb, name) in expect {
        let o = virfuse(&format!("{verb} --help"));
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(name), "{verb}: {}", stdout(&o));
    }
}

#[test]
fn text_outputs() {
    assert_eq!(stdout(&virfuse("induce --p 3 L:3,2")).trim(), "3*W:1,2");
    assert_eq!(
        stdout(&virfuse("restrict --p 2 W:1,1 --cutoff 2")).trim(),
        "L:1,1 + 3*L:3,1 + 5*L:5,1"
    );
    assert_eq!(
        stdout(&virfuse("singular --p 2 L:1,2")).trim(),
        "1 * L(-1)L(-1)|h> - 1/2 * L(-2)|h>"
    );
    let bpz = stdout(&virfuse("bpz --p 3"));
    assert!(bpz.contains("-2.000000000000"), "{bpz}");
    assert!(bpz.contains("difference"));
    assert_eq!(
        stdout(&virfuse("chain --p 3 L:1,2 --depth 2"))
            .lines()
            .count(),
        2
    );
}
