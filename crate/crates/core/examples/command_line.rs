// Driving the command line from code. The `fincat` binary is this same call.

pub fn run_example() -> fincat::Result<()> {
    let dir = std::env::temp_dir().join(format!("fincat-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("p4.json");
    let file = file.to_str().expect("utf-8 path");

    assert_eq!(fincat::cli::run(["fincat", "gen", "--example", "p4", "--out", file]), 0);
    assert_eq!(fincat::cli::run(["fincat", "proper", file, "--mode", "both"]), 0);
    assert_eq!(fincat::cli::run(["fincat", "quotient", "catalog:e3", "--format", "json"]), 0);
    // Exit code 3: the search ran out of budget.
    assert_eq!(fincat::cli::run(["fincat", "autoequiv", file, "--budget", "3"]), 3);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> fincat::Result<()> {
    run_example()
}
