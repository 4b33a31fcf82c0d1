use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn fixture(name: &str) -> PathBuf {
    Path::new(FIXTURES).join(name)
}

fn eah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eah")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn be_u64(bytes: &[u8]) -> u64 {
    u64::from_be_bytes(bytes.try_into().unwrap())
}

#[test]
fn encode_fixture_records_component_lengths() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("w.eahc");
    let o = eah(&["encode", "--order", "1", "--alphabet", "abcde", s(&fixture("w200.txt")), s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("|A|=3 |B|=5 |C|=25 |D|=48 |E|=235 LEAH1=316"));

    let bytes = fs::read(&out).unwrap();
    assert_eq!(&bytes[..7], b"EAHC\x01\x01\x05");
    assert_eq!(&bytes[7..12], b"abcde");
    assert_eq!(be_u64(&bytes[12..20]), 200);
    let lens: Vec<u64> = (0..5).map(|k| be_u64(&bytes[20 + 8 * k..28 + 8 * k])).collect();
    assert_eq!(lens, [3, 5, 25, 48, 235]);
    assert_eq!(bytes.len(), 55 + 5 + 316usize.div_ceil(8));
}

#[test]
fn encode_decode_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (name, order) in [("w200.txt", "1"), ("w200.txt", "3"), ("abdbacdba.txt", "2")] {
        let packed = dir.path().join("x.eahc");
        let restored = dir.path().join("x.out");
        assert!(eah(&["encode", "-n", order, s(&fixture(name)), s(&packed)]).status.success());
        let o = eah(&["decode", s(&packed), s(&restored)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(fs::read(&restored).unwrap(), fs::read(fixture(name)).unwrap());
    }
}

#[test]
fn encode_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        assert!(eah(&["encode", "-n", "2", s(&fixture("w200.txt")), s(out)]).status.success());
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn empty_file_gives_empty_body() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("empty");
    fs::write(&input, b"").unwrap();
    let packed = dir.path().join("e.eahc");
    assert!(eah(&["encode", "-n", "1", s(&input), s(&packed)]).status.success());
    let bytes = fs::read(&packed).unwrap();
    assert_eq!(be_u64(&bytes[8..16]), 0);
    assert_eq!(bytes.len(), 55 + 1);
    let restored = dir.path().join("e.out");
    assert!(eah(&["decode", s(&packed), s(&restored)]).status.success());
    assert_eq!(fs::read(restored).unwrap(), b"");
}

#[test]
fn symbol_outside_alphabet_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    let o = eah(&["encode", "-n", "1", "--alphabet", "abc", s(&fixture("w200.txt")), s(&dir.path().join("x"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not in the alphabet"));
}

#[test]
fn bad_alphabet_and_arguments_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x");
    let o = eah(&["encode", "-n", "1", "--alphabet", "aab", s(&fixture("w200.txt")), s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let o = eah(&["encode", "-n", "0", s(&fixture("w200.txt")), s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(eah(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(eah(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_is_an_error() {
    let o = eah(&["encode", "-n", "1", s(&fixture("w200.txt")), "/nonexistent-dir/out.eahc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn damaged_containers_are_rejected() {
    let dir = TempDir::new().unwrap();
    let packed = dir.path().join("w.eahc");
    assert!(eah(&["encode", "-n", "1", s(&fixture("w200.txt")), s(&packed)]).status.success());
    let good = fs::read(&packed).unwrap();
    let out = dir.path().join("out");

    let truncated = dir.path().join("t.eahc");
    fs::write(&truncated, &good[..good.len() - 3]).unwrap();
    let o = eah(&["decode", s(&truncated), s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("truncated"));

    let mut v2 = good.clone();
    v2[4] = 2;
    let versioned = dir.path().join("v.eahc");
    fs::write(&versioned, v2).unwrap();
    let o = eah(&["decode", s(&versioned), s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported container version 2"));

    // Claim one more symbol than E carries.
    let mut long = good.clone();
    long[12..20].copy_from_slice(&201u64.to_be_bytes());
    let lying = dir.path().join("h.eahc");
    fs::write(&lying, long).unwrap();
    assert_eq!(eah(&["decode", s(&lying), s(&out)]).status.code(), Some(2));
}

#[test]
fn dot_matches_golden_files() {
    let dir = TempDir::new().unwrap();
    for (input, golden) in [("abdbacdba.txt", "abdbacdba_order1.dot"), ("w200.txt", "w200_order1.dot")] {
        let out = dir.path().join("g.dot");
        let o = eah(&["dot", "--order", "1", s(&fixture(input)), s(&out)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(fixture(golden)).unwrap());
    }
}

#[test]
fn dot_golden_shapes() {
    let small = fs::read_to_string(fixture("abdbacdba_order1.dot")).unwrap();
    let nodes: Vec<&str> = small.lines().filter(|l| l.contains("[label=") && !l.contains("->")).collect();
    assert_eq!(nodes.len(), 5);
    assert!(nodes[0].contains("label=\"a\"") && nodes[0].contains("doublecircle") && nodes[0].contains("start"));

    let big = fs::read_to_string(fixture("w200_order1.dot")).unwrap();
    let nodes: Vec<&str> = big.lines().filter(|l| l.contains("[label=") && !l.contains("->")).collect();
    assert_eq!(nodes.len(), 6);
    let doubled: Vec<&&str> = nodes.iter().filter(|l| l.contains("doublecircle")).collect();
    assert_eq!(doubled.len(), 1);
    assert!(doubled[0].contains("label=\"d\""));
}

#[test]
fn dot_on_short_input() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("short");
    fs::write(&input, b"ab").unwrap();
    let o = eah(&["dot", "-n", "2", s(&input), s(&dir.path().join("x.dot"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("string too short for order 2"));
}

#[test]
fn bench_reference_row_and_csv() {
    let dir = TempDir::new().unwrap();
    let single = dir.path().join("aaaa");
    fs::write(&single, b"aaaa").unwrap();
    let csv = dir.path().join("r.csv");
    let o = eah(&["bench", "--orders", "1", "--csv", s(&csv), s(&fixture("w200.txt")), s(&single)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = stdout(&o);
    assert!(table.contains("LH=462, LEAH1=310, LLZ=388"));
    assert!(table.contains("ceil(log2 t) index bits"));

    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][1..12], ["200", "5", "1", "3", "5", "25", "48", "235", "316", "462", "423"]);
    let llz: f64 = rows[0][11].parse().unwrap();
    println!("bench LLZ on the 200-symbol fixture: {llz} (reference 388)");
    assert_eq!(rows[1][10], "4");

    let again = eah(&["bench", "--orders", "1", s(&fixture("w200.txt")), s(&single)]);
    assert_eq!(stdout(&again), table);
}

#[test]
fn bench_with_no_inputs() {
    let o = eah(&["bench"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("error"));
}

#[test]
fn bench_continues_after_failures() {
    let o = eah(&["bench", "--orders", "1,2", "/nonexistent", s(&fixture("abdbacdba.txt"))]);
    assert_eq!(o.status.code(), Some(2));
    let table = stdout(&o);
    assert_eq!(table.lines().filter(|l| l.contains("abdbacdba.txt")).count(), 2);
    assert!(table.contains("error: /nonexistent (n=1)"));
}
