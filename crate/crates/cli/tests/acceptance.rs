use mustafin_cli::acceptance::{run_suite, SuiteOptions};

fn main() {
    let report = run_suite(&SuiteOptions::default());
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let total = report.criteria.len();
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed}/{total} criteria pass");
    if !report.passed {
        std::process::exit(1);
    }
}
