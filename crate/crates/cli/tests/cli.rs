//! End-to-end tests of the `resamp` binary: worked-example output, config
//! diagnostics, CSV reproducibility, and the paired compare-boot layout.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn resamp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resamp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Extracts `key = value` from a structured record.
fn field(text: &str, key: &str) -> f64 {
    let prefix = format!("{key} = ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no field {key} in:\n{text}"))
        .parse()
        .unwrap()
}

/// Drops the tool-version line; reproducibility compares everything else.
fn without_version(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("# resamp "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn estimate_worked_example() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("data.txt"), "1\n2\n3\n").unwrap();
    fs::write(
        dir.path().join("est.conf"),
        "[estimate]\nfunctional = square\ninput = data.txt\n",
    )
    .unwrap();
    let out = resamp(&["estimate", "--config", "est.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "n"), 3.0);
    assert!((field(&text, "T_n") - 4.0).abs() < 1e-15);
    assert!((field(&text, "v_jack") - 193.0 / 12.0).abs() < 1e-12);
    assert!((field(&text, "v_ijack") - 32.0 / 3.0).abs() < 1e-12);
    assert!(!text.contains("v_boot"), "no bootstrap requested");
}

#[test]
fn estimate_can_draw_from_a_model() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("est.conf"),
        "[estimate]\nfunctional = box(0.25)\nmodel = uniform(0,1)\nn = 50\nmaster_seed = 3\nbootstrap_B = 100\n",
    )
    .unwrap();
    let out = resamp(&["estimate", "--config", "est.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "n"), 50.0);
    assert!(field(&text, "v_boot") > 0.0);
}

#[test]
fn estimate_rejects_single_observation() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("data.txt"), "42\n").unwrap();
    fs::write(
        dir.path().join("est.conf"),
        "[estimate]\nfunctional = square\ninput = data.txt\n",
    )
    .unwrap();
    let out = resamp(&["estimate", "--config", "est.conf"], dir.path());
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("need at least 2 observations"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn misspelled_key_is_diagnosed() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("est.conf"), "[estimate]\nfunctionl = square\n").unwrap();
    let out = resamp(&["estimate", "--config", "est.conf"], dir.path());
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("unknown key 'functionl'"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn rate_without_n_grid_is_diagnosed() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = identity\nmodel = normal(0,1)\nmaster_seed = 1\n",
    )
    .unwrap();
    let out = resamp(&["rate", "--config", "rate.conf"], dir.path());
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("missing required key 'n_grid'"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn rate_needs_an_output_path() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = identity\nmodel = normal(0,1)\nn_grid = 16,32\nreplicates = 20\nmaster_seed = 1\n",
    )
    .unwrap();
    let out = resamp(&["rate", "--config", "rate.conf"], dir.path());
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--out"), "stderr: {}", stderr(&out));
}

#[test]
fn rate_identity_slope_near_minus_one() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = identity\nmodel = normal(0,1)\nn_grid = 16,32,64,128\nreplicates = 30\nmaster_seed = 5\noutput = rate.csv\n",
    )
    .unwrap();
    let out = resamp(&["rate", "--config", "rate.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let slope = field(&stdout(&out), "slope");
    assert!((slope + 1.0).abs() < 0.05, "slope {slope}");
    let csv = fs::read_to_string(dir.path().join("rate.csv")).unwrap();
    assert!(csv.starts_with("# resamp "));
    assert!(csv.contains("# master_seed = 5"));
    assert!(csv.contains("n,summary_abs_diff,replicates_used"));
    assert!(csv.contains("# fit slope = "));
    let csv_slope: f64 = csv
        .lines()
        .find_map(|l| l.strip_prefix("# fit slope = "))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(csv_slope, slope, "stdout record and CSV must agree");
    // Four data rows, all replicates retained.
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#') && !l.starts_with("n,")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",30")));
}

#[test]
fn reruns_are_byte_identical_except_version() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = paper_sgn\nmodel = normal(0,1)\nn_grid = 16,32,64\nreplicates = 25\nmaster_seed = 11\n",
    )
    .unwrap();
    let a = resamp(&["rate", "--config", "rate.conf", "--out", "a.csv"], dir.path());
    let b = resamp(&["rate", "--config", "rate.conf", "--out", "b.csv"], dir.path());
    assert!(a.status.success() && b.status.success());
    let a_text = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let b_text = fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(without_version(&a_text), without_version(&b_text));
}

#[test]
fn seed_override_reseeds_and_is_echoed() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = identity\nmodel = normal(0,1)\nn_grid = 16,32\nreplicates = 20\nmaster_seed = 5\n",
    )
    .unwrap();
    let base = resamp(&["rate", "--config", "rate.conf", "--out", "base.csv"], dir.path());
    let reseeded = resamp(
        &["rate", "--config", "rate.conf", "--seed", "99", "--out", "reseeded.csv"],
        dir.path(),
    );
    assert!(base.status.success() && reseeded.status.success());
    let base_text = fs::read_to_string(dir.path().join("base.csv")).unwrap();
    let reseeded_text = fs::read_to_string(dir.path().join("reseeded.csv")).unwrap();
    assert!(reseeded_text.contains("# master_seed = 99"));
    assert_ne!(without_version(&base_text), without_version(&reseeded_text));
}

#[test]
fn compare_boot_writes_both_halves_and_pairs_with_standalone_rate() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("cb.conf"),
        "[compare-boot]\nfunctional = paper_sgn\nmodel = normal(0,1)\nn_grid = 16,32,64\nreplicates = 20\nbootstrap_B = 50\nmaster_seed = 21\noutput = contrast.csv\n",
    )
    .unwrap();
    let out = resamp(&["compare-boot", "--config", "cb.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let ijack = fs::read_to_string(dir.path().join("contrast_jack_vs_ijack.csv")).unwrap();
    let boot = fs::read_to_string(dir.path().join("contrast_jack_vs_boot.csv")).unwrap();
    assert!(ijack.contains("# fit contrast = jack_vs_ijack"));
    assert!(boot.contains("# fit contrast = jack_vs_boot"));
    let text = stdout(&out);
    assert!(text.contains("contrast = jack_vs_ijack"));
    assert!(text.contains("contrast = jack_vs_boot"));

    // Pairing invariant: the jack_vs_ijack half must carry exactly the rows
    // and fit of a standalone rate study at the same master seed.
    fs::write(
        dir.path().join("rate.conf"),
        "[rate]\nfunctional = paper_sgn\nmodel = normal(0,1)\nn_grid = 16,32,64\nreplicates = 20\nmaster_seed = 21\noutput = alone.csv\n",
    )
    .unwrap();
    let alone = resamp(&["rate", "--config", "rate.conf"], dir.path());
    assert!(alone.status.success());
    let alone_text = fs::read_to_string(dir.path().join("alone.csv")).unwrap();
    let data_and_fit = |text: &str| {
        text.lines()
            .filter(|l| !l.starts_with('#') || l.starts_with("# fit") || l.starts_with("# excluded"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(data_and_fit(&ijack), data_and_fit(&alone_text));
}

#[test]
fn normality_csv_rows_and_degenerate_flag() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("norm.conf"),
        "[normality]\nfunctional = square\nmodel = normal(1,1)\nn = 200\nreplicates = 100\nmaster_seed = 9\noutput = norm.csv\n",
    )
    .unwrap();
    let out = resamp(&["normality", "--config", "norm.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("norm.csv")).unwrap();
    assert!(csv.contains("estimator,mean,var,skew,exkurt,ks_distance,degenerate"));
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("jackknife,") && rows[0].ends_with(",false"));
    assert!(rows[1].starts_with("infinitesimal_jackknife,") && rows[1].ends_with(",false"));

    fs::write(
        dir.path().join("degen.conf"),
        "[normality]\nfunctional = identity\nmodel = two_point(3,3,0.5)\nn = 50\nreplicates = 100\nmaster_seed = 9\noutput = degen.csv\n",
    )
    .unwrap();
    let out = resamp(&["normality", "--config", "degen.conf"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("degen.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert!(rows.iter().all(|r| r.ends_with(",true")), "rows: {rows:?}");
    assert!(rows.iter().all(|r| r.contains("NaN")));
}

#[test]
fn wrong_section_is_diagnosed() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("c.conf"), "[rate]\nfunctional = square\n").unwrap();
    let out = resamp(&["estimate", "--config", "c.conf"], dir.path());
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("does not match the 'estimate' command"),
        "stderr: {}",
        stderr(&out)
    );
}
