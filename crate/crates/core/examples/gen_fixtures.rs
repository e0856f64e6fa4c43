//! Regenerates the frozen base-case flows and golden reports under `fixtures/v1`.

use std::fs;
use std::path::Path;

use ladderflow::enumerate::{subladder_bounds, theorem_report, Engines};
use ladderflow::ladder::{generate_base_cases, generate_cl4_exception, LadderKind};

fn main() -> ladderflow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/v1");
    fs::create_dir_all(dir.join("reports")).expect("fixture directory");
    let cases = generate_base_cases()?;
    fs::write(
        dir.join("base_cases.json"),
        serde_json::to_string_pretty(&cases)? + "\n",
    )
    .expect("write base cases");
    let cert = generate_cl4_exception()?;
    fs::write(
        dir.join("cl4_exception.json"),
        serde_json::to_string_pretty(&cert)? + "\n",
    )
    .expect("write certificate");
    println!("wrote {} base cases", cases.len());

    for kind in [LadderKind::Circular, LadderKind::Moebius] {
        for n in kind.min_rungs()..=6 {
            let rep = theorem_report(&[(kind, n)], Engines::ALL)?;
            let name = format!("{}_{n}.csv", kind.short_name().to_lowercase());
            fs::write(dir.join("reports").join(&name), rep.to_csv()?).expect("write report");
            println!("{name}: {:?}", rep.summaries[0]);
            for f in &rep.findings {
                println!("  {f}");
            }
        }
    }
    println!("{:?}", subladder_bounds());
    Ok(())
}
