//! The machine-readable report of the command-line driver.

use diffmod::cli::json::SpectrumJson;
use diffmod::cli::run::{run, Command, JobSpec};
use diffmod::rat::rat;

fn main() -> diffmod::Result<()> {
    let mut job = JobSpec::operator(Command::Spectrum, "(D - 1/S)*(D - 2)");
    job.verify = true;
    job.radius = Some(rat(1, 2));
    let report = run(&job)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");

    let back: SpectrumJson = serde_json::from_str(
        &serde_json::to_string(report.spectrum.as_ref().unwrap()).unwrap(),
    )
    .unwrap();
    println!("parsed back: {}", back.to_spectrum()?);
    Ok(())
}
