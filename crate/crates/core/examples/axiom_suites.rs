//! Seeded axiom suites for every law, as run by `twovalued axioms-check`.

use twovalued::error::Result;
use twovalued::sampling::SuiteConfig;
use twovalued::scalar::Tolerance;
use twovalued::suites::{run_law_suite, LawId, LawParams};

fn main() -> Result<()> {
    for law in LawId::ALL {
        let exact = !matches!(law, LawId::Kummer | LawId::Cp1);
        let tol = if exact { Tolerance::exact() } else { Tolerance::uniform(1e-6) };
        for report in run_law_suite(law, &LawParams::new(), exact, &SuiteConfig::new(30, 1, tol))? {
            println!(
                "{:<24} {:>5} checks  resampled {:>3}  max distance {:.1e}  {}",
                report.name,
                report.samples,
                report.resampled,
                report.max_distance,
                if report.passed() { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(())
}
