//! Acceptance gate. Runs every criterion in sequence, prints one PASS/FAIL
//! line per criterion and exits non-zero if any fails.
//!
//! Set `COSTAS_EXTENDED=1` to also check the counts for orders 14 to 16.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use common::{brute_force_costas, one_based, table_row, F5, F6, U4};
use costas::bench::bench_compare;
use costas::io;
use costas::reconstruct::reconstruct_ucm_with;
use costas::search::SearchConfig;
use costas::ucm::CheckKind;
use costas::{
    build_ucfm, build_ucm, enumerate_all_via_symmetry, enumerate_costas, verify_theorems,
    Permutation, UniversalCostasFrequencyMatrix,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn flat<const N: usize>(rows: &[[u64; N]; N]) -> Vec<u64> {
    rows.concat()
}

fn enumeration_counts() -> Outcome {
    let extended = std::env::var_os("COSTAS_EXTENDED").is_some();
    let top = if extended { 16 } else { 13 };
    for n in 3..=top {
        let count = enumerate_costas(n, None)
            .map_err(|e| e.to_string())?
            .count();
        let (expected, _, _) = table_row(n);
        ensure!(count == expected, "C({n}) = {count}, expected {expected}");
    }
    Ok(format!("C(n) matches the table for n = 3..={top}"))
}

fn golden_matrices() -> Outcome {
    let u4 = build_ucm(4).map_err(|e| e.to_string())?;
    let expected: Vec<Vec<usize>> = U4.iter().map(|r| r.to_vec()).collect();
    ensure!(
        one_based(u4.rows()) == expected,
        "U4 differs from the golden matrix"
    );
    ensure!(
        u4.block_ends() == vec![3, 6, 9, 12],
        "U4 block layout {:?}",
        u4.block_ends()
    );

    let f5 = build_ucfm(&build_ucm(5).map_err(|e| e.to_string())?);
    ensure!(
        f5.counts() == flat(&F5).as_slice(),
        "F5 differs: {:?}",
        f5.counts()
    );
    let f6 = build_ucfm(&build_ucm(6).map_err(|e| e.to_string())?);
    ensure!(
        f6.counts() == flat(&F6).as_slice(),
        "F6 differs: {:?}",
        f6.counts()
    );
    Ok("U4, F5 and F6 identical to the golden matrices".into())
}

fn theorem_suite() -> Outcome {
    for n in 3..=13 {
        let u = build_ucm(n).map_err(|e| e.to_string())?;
        let f = build_ucfm(&u);
        let report = verify_theorems(&u, &f).map_err(|e| e.to_string())?;
        ensure!(
            report.checks.len() == CheckKind::ALL.len(),
            "n={n}: incomplete report"
        );
        for check in &report.checks {
            ensure!(
                check.passed,
                "n={n}: {} failed: {}",
                check.kind.name(),
                check.observed
            );
        }
        let (c, d, s) = table_row(n);
        ensure!(report.count == c as u64, "n={n}: C = {}", report.count);
        ensure!(report.row_sum == d, "n={n}: D = {}", report.row_sum);
        ensure!(
            report.column_sum == Some(s),
            "n={n}: S = {:?}",
            report.column_sum
        );
        ensure!(2 * s == c as u64 * (n as u64 + 1), "n={n}: table ratio");
    }
    Ok("all six checks pass for n = 3..=13 with S(n), D(n), C(n) as tabulated".into())
}

fn reconstruction() -> Outcome {
    let cfg = SearchConfig::default();
    for n in 3..=12 {
        let u = build_ucm(n).map_err(|e| e.to_string())?;
        let f = build_ucfm(&u);
        let (r, _) = reconstruct_ucm_with(&f, &cfg).map_err(|e| format!("n={n}: {e}"))?;
        let lhs: BTreeSet<&Permutation> = r.rows().iter().collect();
        let rhs: BTreeSet<&Permutation> = u.rows().iter().collect();
        ensure!(lhs == rhs, "n={n}: row sets differ");
        ensure!(r.rows() == u.rows(), "n={n}: canonical order differs");
        ensure!(build_ucfm(&r) == f, "n={n}: F(F^-1(F)) != F");
    }
    Ok("reconstruction reproduces U(n) and F(n) exactly for n = 3..=12".into())
}

fn brute_force_oracle() -> Outcome {
    for n in 1..=7 {
        let got = one_based(&enumerate_costas(n, None).map_err(|e| e.to_string())?.arrays);
        let want = brute_force_costas(n);
        ensure!(
            got == want,
            "n={n}: {} arrays vs {} by brute force",
            got.len(),
            want.len()
        );
    }
    Ok("bitmask search equals the n! distinct-vector filter for n <= 7".into())
}

fn benchmark_direction() -> Outcome {
    let cfg = SearchConfig::default();
    // deterministic part: node counts
    for n in 5..=12 {
        let f = build_ucfm(&build_ucm(n).map_err(|e| e.to_string())?);
        let (_, stats) = reconstruct_ucm_with(&f, &cfg).map_err(|e| e.to_string())?;
        let full = enumerate_all_via_symmetry(n).map_err(|e| e.to_string())?;
        ensure!(
            stats.nodes <= full.nodes,
            "n={n}: reconstruction visited {} nodes, enumeration {}",
            stats.nodes,
            full.nodes
        );
    }
    let report = bench_compare(5, 12, None, &cfg).map_err(|e| e.to_string())?;
    ensure!(
        report.invalid_orders.is_empty(),
        "invalid orders {:?}",
        report.invalid_orders
    );
    ensure!(
        report.rows.len() == 8,
        "expected 8 rows, got {}",
        report.rows.len()
    );
    let mut summary = Vec::new();
    for row in &report.rows {
        ensure!(
            row.improvement_pct == row.recomputed_improvement(),
            "n={}: stored improvement inconsistent",
            row.order
        );
        ensure!(row.runs == 10, "n={}: {} runs", row.order, row.runs);
        if (5..=9).contains(&row.order) {
            ensure!(
                row.improvement_pct > 0.0,
                "n={}: improvement {:.1}% is not positive",
                row.order,
                row.improvement_pct
            );
        }
        summary.push(format!("{}:{:.0}%", row.order, row.improvement_pct));
    }
    Ok(format!(
        "node counts hold; improvement {}",
        summary.join(" ")
    ))
}

fn heatmaps() -> Outcome {
    let f5 = UniversalCostasFrequencyMatrix::from_counts_inferred(5, flat(&F5));
    let pgm = io::render_heatmap(&f5);
    let golden = fs::read(fixture("f5.pgm")).map_err(|e| e.to_string())?;
    ensure!(pgm == golden, "F5 heatmap bytes differ from golden file");
    let (_, _, px) = common::parse_pgm(&pgm);
    let values: BTreeSet<u8> = px.into_iter().collect();
    ensure!(
        values == BTreeSet::from([153, 204, 255]),
        "F5 pixel values {values:?}"
    );

    for n in 1..=13 {
        let f = build_ucfm(&build_ucm(n).map_err(|e| e.to_string())?);
        let (w, h, px) = common::parse_pgm(&io::render_heatmap(&f));
        ensure!((w, h) == (n, n), "n={n}: dimensions {w}x{h}");
        let at = |i: usize, k: usize| px[i * n + k];
        for i in 0..n {
            for k in 0..n {
                let p = at(i, k);
                ensure!(
                    p == at(n - 1 - i, k) && p == at(i, n - 1 - k) && p == at(k, i),
                    "n={n}: heatmap not symmetric at ({i}, {k})"
                );
            }
        }
    }
    Ok("F5 PGM bit-exact; heatmaps flip/transpose invariant for n <= 13".into())
}

fn round_trips() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;

    {
        let name = "u4.txt";
        let original = fs::read(fixture(name)).map_err(|e| e.to_string())?;
        let arrays = io::read_arrays(&fixture(name), false).map_err(|e| e.to_string())?;
        let out = dir.path().join(name);
        io::write_arrays(&arrays, &out).map_err(|e| e.to_string())?;
        ensure!(fs::read(&out).unwrap() == original, "{name}: bytes changed");
        ensure!(
            io::read_arrays(&out, true).map_err(|e| e.to_string())? == arrays,
            "{name}: arrays changed"
        );
    }
    let commented = io::read_arrays(&fixture("orbit4.txt"), true).map_err(|e| e.to_string())?;
    let out = dir.path().join("orbit4.txt");
    io::write_arrays(&commented, &out).map_err(|e| e.to_string())?;
    ensure!(
        io::read_arrays(&out, true).map_err(|e| e.to_string())? == commented,
        "orbit4.txt: arrays changed"
    );

    for name in ["f1.csv", "f5.csv", "f6.csv"] {
        let original = fs::read(fixture(name)).map_err(|e| e.to_string())?;
        let f = io::read_ucfm(&fixture(name)).map_err(|e| e.to_string())?;
        ensure!(f.is_complete(), "{name}: not flagged complete");
        let out = dir.path().join(name);
        io::write_ucfm(&f, &out).map_err(|e| e.to_string())?;
        ensure!(fs::read(&out).unwrap() == original, "{name}: bytes changed");
        ensure!(
            io::read_ucfm(&out).map_err(|e| e.to_string())? == f,
            "{name}: matrix changed"
        );
    }

    let u5 = build_ucm(5).map_err(|e| e.to_string())?;
    let out = dir.path().join("u5.txt");
    io::write_arrays(u5.rows(), &out).map_err(|e| e.to_string())?;
    let back = io::read_arrays(&out, true).map_err(|e| e.to_string())?;
    ensure!(back == u5.rows(), "U5 rows changed");

    let f6 = build_ucfm(&build_ucm(6).map_err(|e| e.to_string())?);
    let out = dir.path().join("f6.csv");
    io::write_ucfm(&f6, &out).map_err(|e| e.to_string())?;
    let back = io::read_ucfm(&out).map_err(|e| e.to_string())?;
    ensure!(back.counts() == flat(&F6).as_slice(), "F6 changed");
    Ok("arrays files and UCFM CSVs round-trip byte for byte".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 enumeration counts", enumeration_counts),
        ("2 golden matrices", golden_matrices),
        ("3 theorem suite", theorem_suite),
        ("4 reconstruction", reconstruction),
        ("5 brute-force oracle", brute_force_oracle),
        ("6 benchmark direction", benchmark_direction),
        ("7 heatmap bit-exactness", heatmaps),
        ("8 format round-trips", round_trips),
    ];
    let mut failures = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.1}s)"),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{name}] {detail} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
