use std::process::{Command, Output};
use tempfile::TempDir;
use tenfold::azclass::AZLabel;
use tenfold::strongf2i::StrongData;
use tenfold::weakf2i::{TableFormat, TableRowDto, render_table};

fn tenfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tenfold"))
        .args(args)
        .output()
        .expect("failed to run tenfold")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is not UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is not UTF-8")
}

#[test]
fn help_and_version_exit_zero() {
    let help = tenfold(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    let text = stdout(&help);
    for subcommand in ["table", "strong", "coeffs", "appendix", "pairing"] {
        assert!(text.contains(subcommand), "help misses {subcommand}");
    }

    let version = tenfold(&["--version"]);
    assert_eq!(version.status.code(), Some(0));
    assert!(stdout(&version).starts_with("tenfold"));
}

#[test]
fn aii_markdown_table_matches_the_library_render() {
    let output = tenfold(&["table", "--class", "AII", "--format", "markdown"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);

    let data = StrongData::load_default().unwrap();
    let expected = render_table(&data, &[AZLabel::AII], &[1, 2, 3], TableFormat::Markdown).unwrap();
    assert_eq!(text, expected);

    assert!(text.starts_with("## AII (real, s = -2, structure Pin^{c̃+})"));
    let data_rows = text
        .lines()
        .filter(|l| l.starts_with("| ") && !l.starts_with("| d "))
        .count();
    assert_eq!(data_rows, 3);
    assert!(text.contains("| 1 | 0 | Z | Z | 0 |"));
    assert!(text.contains("| 3 | 0 | Z ⊕ Z2^4 | Z ⊕ Z2^6 | Z2^2 |"));
}

#[test]
fn csv_format_holds_the_frozen_ci_row() {
    let output = tenfold(&["table", "--class", "CI", "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("class,d,kernel,free,interacting,cokernel,strong_block,band_block\n"));
    assert!(text.contains("CI,3,4Z,Z,Z2^4 + Z4,Z2^4,Z -> Z2 + Z4,0 -> 0"));
}

#[test]
fn json_output_round_trips_through_the_schema() {
    let output = tenfold(&["table", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let rows: Vec<TableRowDto> = serde_json::from_str(&text).expect("schema parse");
    assert_eq!(rows.len(), 30);
    let reemitted = format!("{}\n", serde_json::to_string_pretty(&rows).unwrap());
    assert_eq!(text, reemitted);
}

#[test]
fn output_flag_writes_the_file_instead_of_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("table.md");
    let output = tenfold(&["table", "--class", "D", "--output", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let direct = stdout(&tenfold(&["table", "--class", "D"]));
    assert_eq!(written, direct);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["table"][..],
        &["table", "--format", "json"][..],
        &["strong"][..],
        &["coeffs"][..],
        &["appendix"][..],
    ] {
        let first = tenfold(args);
        let second = tenfold(args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn unknown_class_exits_2_and_lists_the_ten_labels() {
    let output = tenfold(&["table", "--class", "XYZ"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout(&output).is_empty());
    assert!(stderr(&output).contains("A, AIII, CII, AII, DIII, D, BDI, AI, CI, C"));
}

#[test]
fn out_of_range_dims_exit_2() {
    let output = tenfold(&["table", "--dims", "0..5"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("between 1 and 3"));

    let output = tenfold(&["table", "--dims", "two"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("bad --dims"));
}

#[test]
fn unknown_flags_and_formats_exit_2() {
    let output = tenfold(&["table", "--frobnicate"]);
    assert_eq!(output.status.code(), Some(2));

    let output = tenfold(&["table", "--format", "xml"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("expected markdown, json, or csv"));
}

#[test]
fn strong_prints_the_comparison_records() {
    let output = tenfold(&["strong", "--class", "DIII"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("## DIII (real, s = -1, structure Pin^+)"));
    assert!(text.contains("| 3 | Z | Z16 | [[1]] | 16Z inside Z | 0 |"));
    assert!(text.contains("- m = 3:"));
}

#[test]
fn coeffs_tabulate_the_point_groups() {
    let output = tenfold(&["coeffs", "--flavor", "ko", "--degrees", "-4..0"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("| degree | KO |"));
    for row in ["| -4 | Z |", "| -2 | Z2 |", "| -1 | Z2 |", "| 0 | Z |"] {
        assert!(text.contains(row), "missing {row:?} in {text}");
    }

    let both = stdout(&tenfold(&["coeffs", "--degrees", "2"]));
    assert!(both.starts_with("| degree | KO | K |"));
    assert!(both.contains("| 2 | 0 | Z |"));
}

#[test]
fn appendix_report_ends_with_the_scorecard() {
    let output = tenfold(&["appendix"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.ends_with("3/3 generators independent; 2/2 exactness joints pass\n"));
}

#[test]
fn doctored_catalog_fails_the_appendix_audit() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("manifolds.toml");
    let needle = "phi = [0, 0, 1]";
    assert!(tenfold::charclass::DEFAULT_DATA.contains(needle));
    std::fs::write(
        &path,
        tenfold::charclass::DEFAULT_DATA.replace(needle, "phi = [0, 0, 0]"),
    )
    .unwrap();

    let output = tenfold(&["appendix", "--data", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("phi matrix invertible over F2: NO"));
    assert!(text.contains("audit failed:"));
}

#[test]
fn audited_strong_data_flows_into_the_table() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("strong.toml");
    let needle = "interacting = \"Z16\"\nmap = [[1]]\nkernel = \"16Z\"";
    assert!(tenfold::strongf2i::DEFAULT_DATA.contains(needle));
    std::fs::write(
        &path,
        tenfold::strongf2i::DEFAULT_DATA.replace(
            needle,
            "interacting = \"Z32\"\nmap = [[1]]\nkernel = \"32Z\"",
        ),
    )
    .unwrap();

    let output = tenfold(&[
        "table",
        "--class",
        "DIII",
        "--format",
        "csv",
        "--data",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("DIII,3,32Z,"));
    assert!(text.contains("Z32"));

    let broken = tenfold(&["table", "--data", "/nonexistent/strong.toml"]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(stderr(&broken).contains("cannot read"));
}

#[test]
fn pairing_reports_the_bound_charge() {
    let output = tenfold(&[
        "pairing",
        "--class",
        "AII",
        "--dim",
        "3",
        "--defects",
        "1,0,0",
        "--burgers",
        "1,0,0",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("pairing group: Z2"));
    assert!(text.contains("pairing element: (1) in Z2"));
    assert!(text.contains("status: nonzero"));

    let cancelled = stdout(&tenfold(&[
        "pairing",
        "--class",
        "AII",
        "--dim",
        "3",
        "--defects",
        "1,1,0",
        "--burgers",
        "1,1,0",
    ]));
    assert!(cancelled.contains("status: trivial"));
}

#[test]
fn malformed_pairing_vectors_exit_2() {
    let output = tenfold(&[
        "pairing",
        "--class",
        "AII",
        "--dim",
        "3",
        "--defects",
        "1:x,0,0",
        "--burgers",
        "1,0,0",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("bad --defects"));

    let output = tenfold(&[
        "pairing",
        "--class",
        "AII",
        "--dim",
        "3",
        "--defects",
        "1,0,0",
        "--burgers",
        "1,0",
    ]);
    assert_eq!(output.status.code(), Some(2));
}
