//! Result persistence: CSV for sweeps, JSON for the full record.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::harness::sim::SimResult;

pub const CSV_HEADER: &str = "p,trials,exact,degenerate,failures,nonconverged,rate,ci_lo,ci_hi";

/// One line per swept point; an empty sweep writes only the header.
pub fn write_results_csv<W: Write>(result: &SimResult, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for point in &result.points {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            point.p,
            point.trials,
            point.exact,
            point.degenerate,
            point.failures,
            point.nonconverged,
            point.rate,
            point.ci_lo,
            point.ci_hi
        )?;
    }
    Ok(())
}

pub fn results_csv_string(result: &SimResult) -> String {
    let mut buf = Vec::new();
    write_results_csv(result, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

pub fn write_results_csv_path<P: AsRef<Path>>(result: &SimResult, path: P) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_results_csv(result, std::io::BufWriter::new(file))?;
    Ok(())
}

pub fn write_results_json<W: Write>(result: &SimResult, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, result)?;
    writeln!(w)?;
    Ok(())
}

pub fn write_results_json_path<P: AsRef<Path>>(result: &SimResult, path: P) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_results_json(result, std::io::BufWriter::new(file))?;
    Ok(())
}

pub fn read_results_json_path<P: AsRef<Path>>(path: P) -> Result<SimResult> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
