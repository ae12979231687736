#![allow(dead_code)]

use std::process::Command;
use std::sync::Arc;

use loopcat::catcore::{CategoryBuilder, FinCategory};
use loopcat::cli::Report;

pub fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary; returns (exit code, stdout).
pub fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_loopcat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

/// Runs the binary with `--format json` and parses the report.
pub fn cli_json(args: &[&str]) -> Report {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    let (code, out) = cli(&args);
    assert_eq!(code, 0, "{args:?} exited with {code}");
    serde_json::from_str(&out).expect("report parses")
}

/// Every composition function `hom(1,2) × hom(0,1) → hom(0,2)`, as a list of
/// indices into `hom(0,2)`.
fn composition_tables(h01: usize, h02: usize, h12: usize) -> Vec<Vec<usize>> {
    let cells = h01 * h12;
    if cells > 0 && h02 == 0 {
        return vec![];
    }
    (0..h02.pow(cells as u32))
        .map(|mut code| {
            (0..cells)
                .map(|_| {
                    let v = code % h02;
                    code /= h02;
                    v
                })
                .collect()
        })
        .collect()
}

/// Loop-free categories with at most 3 objects and at most 5 non-identity
/// arrows. Objects are listed in a topological order, so arrows only run
/// `i → j` with `i < j`; every such category arises this way (with
/// isomorphic repeats).
pub fn loop_free_family() -> Vec<Arc<FinCategory>> {
    let mut out = Vec::new();
    // one object
    let mut b = CategoryBuilder::new();
    b.add_object("0");
    out.push(Arc::new(b.build()));
    // two objects, h parallel arrows
    for h in 0..=5 {
        let mut b = CategoryBuilder::new();
        let (x, y) = (b.add_object("0"), b.add_object("1"));
        for k in 0..h {
            b.add_arrow(format!("a{k}"), x, y);
        }
        out.push(Arc::new(b.build()));
    }
    for h01 in 0..=5 {
        for h12 in 0..=5 - h01 {
            for h02 in 0..=5 - h01 - h12 {
                for table in composition_tables(h01, h02, h12) {
                    let mut b = CategoryBuilder::new();
                    let o: Vec<_> = (0..3).map(|i| b.add_object(i.to_string())).collect();
                    let a01: Vec<_> = (0..h01).map(|k| b.add_arrow(format!("f{k}"), o[0], o[1])).collect();
                    let a02: Vec<_> = (0..h02).map(|k| b.add_arrow(format!("h{k}"), o[0], o[2])).collect();
                    let a12: Vec<_> = (0..h12).map(|k| b.add_arrow(format!("g{k}"), o[1], o[2])).collect();
                    for (i, &g) in a12.iter().enumerate() {
                        for (j, &f) in a01.iter().enumerate() {
                            b.set_composite(g, f, a02[table[i * h01 + j]]);
                        }
                    }
                    out.push(Arc::new(b.build()));
                }
            }
        }
    }
    out
}
