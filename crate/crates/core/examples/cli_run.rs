// Drives the command layer from a JSON document, as the binary does, and
// prints the CSV it produces.

use semiclassical::cli::{run_command, Command, Status};
use semiclassical::config::parse_config;
use semiclassical::Result;

const CONFIG: &str = r#"{
  "weight": { "alpha": [0.5, 0.5], "trajectory": [[-1.0], [1.0, 0.5]] },
  "n": 3,
  "evolve": { "t0": 0.0, "t1": 0.5, "samples": 6 }
}"#;

/// Runs `coeffs` and `verify` and returns their CSV text.
pub fn run_example() -> Result<Vec<(Status, String)>> {
    let (cfg, _warnings) = parse_config(CONFIG, true)?;
    let mut outputs = Vec::new();
    for cmd in [Command::Coeffs, Command::Verify] {
        let mut buf = Vec::new();
        let status = run_command(cmd, &cfg, &mut buf);
        let text = String::from_utf8(buf).expect("CSV is UTF-8");
        println!("$ semiclassical {} (exit {})\n{text}", cmd.name(), status.code());
        outputs.push((status, text));
    }
    Ok(outputs)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
