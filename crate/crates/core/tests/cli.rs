use std::path::PathBuf;
use std::process::{Command, Output};

fn actl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("actl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const D1: &str = "k=4\nN 1-2 : b\nS 1-2 : b\nP 3-3' :\nP 4-4' :\n";
const D121: &str = "k=4\nN 1-2 : b\nS 1-2 : b\nP 3-3' : [B]\nP 4-4' :\nseq : (3:B)\n";

#[test]
fn eval_prints_coefficient_and_diagram() {
    let o = actl(&["eval", "-n", "2", "1,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("coefficient: 1\n{D121}"));
}

#[test]
fn mul_of_d1_with_itself_is_delta_d1() {
    let p = file("d1.txt", D1);
    let o = actl(&["mul", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("coefficient: δ\n{D1}"));
}

#[test]
fn theta_of_wall_braid_doubles() {
    let o = actl(&["theta", "-n", "2", "1,2,1,2"]);
    assert!(stdout(&o).starts_with("coefficient: 2\n"));
    assert_eq!(actl(&["theta", "-n", "2", "5"]).status.code(), Some(2));
}

#[test]
fn admissible_exit_codes() {
    let good = file("good.txt", D121);
    let o = actl(&["admissible", good.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "admissible\n".to_string()));
    let bad = file(
        "c5.txt",
        "k=4\nN 1-2 : b\nS 3-4 : o\nP 3-1' : [b|B|B]\nP 4-2' : [O|o]\nseq : (3:b)(4:O)(3:B)(4:o)(3:B)\n",
    );
    let o = actl(&["admissible", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not admissible: C5"), "{}", stdout(&o));
    let crossing = file("cross.txt", "k=4\nN 1-3 :\nN 2-4 :\nS 1-2 :\nS 3-4 :\n");
    assert_eq!(actl(&["admissible", crossing.to_str().unwrap()]).status.code(), Some(2));
    let syntax = file("syntax.txt", "k=4\nQ 1-2 :\n");
    let o = actl(&["admissible", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn factorize_round_trips_through_eval() {
    let p = file("pump.txt", "k=4\nN 1-2 : b\nN 3-4 : o\nS 1-2 : b\nS 3-4 : o\nloop : BO\nloop : BO\n");
    let o = actl(&["factorize", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let word = stdout(&o).trim().to_string();
    let e = actl(&["eval", "-n", "2", &word]);
    assert!(stdout(&e).starts_with("coefficient: 1\n"));
    assert!(stdout(&e).ends_with("loop : BO\nloop : BO\n"));
}

#[test]
fn fc_lists_catalan_many_type_a_elements() {
    let o = actl(&["fc", "-g", "A", "-n", "3"]);
    assert!(stdout(&o).starts_with("# count=14\n"));
    assert_eq!(actl(&["fc", "-g", "Ct", "-n", "2"]).status.code(), Some(2));
    let o = actl(&["fc", "-g", "Ct", "-n", "2", "--max-len", "0"]);
    assert_eq!(stdout(&o), "# count=1\ne\n");
}

#[test]
fn verify_reports_and_rejects_unknown_suites() {
    let o = actl(&["verify", "relations"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "suite=relations status=pass checked=16\n");
    let o = actl(&["verify", "closure", "-n", "3", "-L", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(actl(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn renders_are_stable_and_readable_back() {
    let p = file("render.txt", D121);
    for mode in ["--ascii", "--svg"] {
        let a = actl(&["render", p.to_str().unwrap(), mode]);
        let b = actl(&["render", p.to_str().unwrap(), mode]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        let back = file(&format!("back{mode}.txt"), &stdout(&a));
        assert_eq!(actl(&["admissible", back.to_str().unwrap()]).status.code(), Some(0));
    }
}
