//! Running a randomized property suite and writing its report as JSON and CSV.

use resmex::property::{run_suite, suites, SuiteConfig};

fn main() -> resmex::Result<()> {
    for info in suites() {
        println!("{:<15} {}", info.name, info.statement);
    }

    let mut config = SuiteConfig::defaults("triangle", 2024)?;
    config.trials = 100;
    let report = run_suite(&config)?;
    println!("\n{}: {}, max violation {}", report.suite, report.summary(), report.aggregate.max_violation);

    let dir = std::env::temp_dir();
    report.write_json(dir.join("triangle.json"))?;
    report.write_csv_file(dir.join("triangle.csv"))?;
    println!("reports written to {}", dir.display());

    let again = run_suite(&config)?;
    println!("rerun is identical: {}", again.to_json()? == report.to_json()?);
    Ok(())
}
